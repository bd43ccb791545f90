# -*- coding: utf-8 -*-
# Copyright: Raphaël de Gail
# GNU General Public License v3.0+ (see COPYING or https://www.gnu.org/licenses/gpl-3.0.txt)
import os
import unittest
from unittest import mock

from stlc_nbe.module_utils.errors import EXIT_PARSE_ERROR, ConfigError
from stlc_nbe.module_utils.settings import DEFAULT_FUEL, DEFAULT_MAX_DENOTE_SIZE, StlcSettings


class StlcSettingsTestCase(unittest.TestCase):
    """A class to test the argument spec driven settings.
    """
    @mock.patch.dict(os.environ, {}, clear=True)
    def test_defaults(self):
        """Test the defaults of the common argument spec.
        """
        settings = StlcSettings()
        self.assertEqual(settings['fuel'], DEFAULT_FUEL)
        self.assertEqual(settings['max_denote_size'], DEFAULT_MAX_DENOTE_SIZE)
        self.assertEqual(settings['log_level'], 'warning')
        self.assertFalse(settings['json'])
        self.assertFalse(settings['debruijn'])

    @mock.patch.dict(os.environ, {'STLC_FUEL': '42', 'STLC_LOG_LEVEL': 'debug'}, clear=True)
    def test_environment_fallback(self):
        """Test that unset options fall back to the environment.
        """
        settings = StlcSettings()
        self.assertEqual(settings['fuel'], 42)
        self.assertEqual(settings['log_level'], 'debug')

    @mock.patch.dict(os.environ, {'STLC_FUEL': '42'}, clear=True)
    def test_explicit_value_wins(self):
        """Test that an explicit option beats the environment, and None counts as unset.
        """
        self.assertEqual(StlcSettings({'fuel': 7})['fuel'], 7)
        self.assertEqual(StlcSettings({'fuel': None})['fuel'], 42)

    def test_command_spec_is_merged(self):
        """Test that a command spec adds its own options.
        """
        settings = StlcSettings({'count': 3}, dict(count=dict(type='int', default=10), seed=dict(type='int', default=0)))
        self.assertEqual(settings['count'], 3)
        self.assertEqual(settings.get('seed'), 0)

    def test_invalid_choice(self):
        """Test that a validation error becomes a ConfigError.
        """
        with self.assertRaises(ConfigError) as raised:
            StlcSettings({'log_level': 'verbose'})
        self.assertEqual(raised.exception.exit_code, EXIT_PARSE_ERROR)

    def test_unknown_option(self):
        """Test that options outside the spec are rejected.
        """
        with self.assertRaises(ConfigError):
            StlcSettings({'colour': 'blue'})

    def test_positive(self):
        """Test the positive integer constraints.
        """
        with self.assertRaises(ConfigError):
            StlcSettings({'fuel': 0})
        with self.assertRaises(ConfigError):
            StlcSettings({'jobs': 0}, dict(jobs=dict(type='int', default=1)), positive=('jobs',))
