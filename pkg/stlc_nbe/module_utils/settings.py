# -*- coding: utf-8 -*-
# Copyright: Raphaël de Gail
# GNU General Public License v3.0+ (see COPYING or https://www.gnu.org/licenses/gpl-3.0.txt)
"""Settings validation built on Ansible argument specs.

Every command shares the common argument spec below and merges its own spec
into it. Options left unset fall back to environment variables, then to the
spec defaults.
"""

from __future__ import annotations

import logging

from ansible.module_utils.basic import env_fallback
from ansible.module_utils.common.arg_spec import ArgumentSpecValidator

from stlc_nbe.module_utils.errors import ConfigError

log = logging.getLogger(__name__)

DEFAULT_FUEL = 1000000
DEFAULT_MAX_DENOTE_SIZE = 65536
LOG_LEVELS = ['debug', 'info', 'warning', 'error']

COMMON_ARGUMENT_SPEC = dict(
    fuel=dict(
        type='int',
        default=DEFAULT_FUEL,
        fallback=(env_fallback, ['STLC_FUEL'])),
    max_denote_size=dict(
        type='int',
        default=DEFAULT_MAX_DENOTE_SIZE,
        fallback=(env_fallback, ['STLC_MAX_DENOTE_SIZE'])),
    json=dict(type='bool', default=False),
    debruijn=dict(type='bool', default=False),
    log_level=dict(
        type='str',
        default='warning',
        choices=LOG_LEVELS,
        fallback=(env_fallback, ['STLC_LOG_LEVEL'])),
)


class StlcSettings(object):
    """Validated settings for one command.

    Attributes:
        params: dict, the validated parameters, defaults and fallbacks applied.
    """
    def __init__(self, params=None, argument_spec=None, positive=()):
        """Initializes the instance based on attributes.

        Args:
            params: dict, raw option values. None values count as unset.
            argument_spec: dict, the command specific argument spec.
            positive: iterable, names of int options that must be >= 1 in
                addition to fuel and max_denote_size.
        """
        spec = self._merge_dictionaries(COMMON_ARGUMENT_SPEC, argument_spec or {})
        raw = {key: value for key, value in (params or {}).items() if value is not None}

        result = ArgumentSpecValidator(spec).validate(raw)
        if result.error_messages:
            self.fail('; '.join(result.error_messages))

        self.params = result.validated_parameters
        self._validate_positive(('fuel', 'max_denote_size') + tuple(positive))
        log.debug('settings: %s', self.params)

    def __getitem__(self, key):
        return self.params[key]

    def get(self, key, default=None):
        return self.params.get(key, default)

    def fail(self, msg):
        """Raises a configuration error.

        Args:
            msg: str, the diagnostic.
        """
        raise ConfigError(f'invalid settings: {msg}')

    def _validate_positive(self, names):
        for name in names:
            value = self.params.get(name)
            if value is not None and value < 1:
                self.fail(f'{name} must be a positive integer, got {value}')

    def _merge_dictionaries(self, a, b):
        """Merge two argument specs into one, the second one winning.

        Args:
            a: dict, the first argument spec.
            b: dict, the second argument spec.

        Returns:
            dict, the merged argument spec.
        """
        new = a.copy()
        new.update(b)
        return new
