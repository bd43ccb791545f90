# -*- coding: utf-8 -*-
# Copyright: Raphaël de Gail
# GNU General Public License v3.0+ (see COPYING or https://www.gnu.org/licenses/gpl-3.0.txt)
"""Exceptions shared by every stage of the pipeline.

Each exception class carries the process exit code the command line reports
for it, so the CLI needs a single handler instead of one per stage.
"""

from __future__ import annotations

import enum

EXIT_OK = 0
EXIT_TYPE_ERROR = 1
EXIT_PARSE_ERROR = 2
EXIT_LIMIT = 3
EXIT_INTERNAL = 4


class StlcError(Exception):
    """Base class for every error raised by the package.

    Attributes:
        message: str, the human readable diagnostic.
    """
    exit_code = EXIT_INTERNAL

    def __init__(self, message):
        """Initializes the instance based on attributes.

        Args:
            message: str, the human readable diagnostic.
        """
        super().__init__(message)
        self.message = message


# Type errors (exit 1)


class TypeErrorKind(enum.Enum):
    UNBOUND_INDEX = 'UnboundIndex'
    NOT_A_FUNCTION = 'NotAFunction'
    MISMATCH = 'Mismatch'
    MISSING_ANNOTATION = 'MissingAnnotation'


class TypeCheckError(StlcError):
    """A typing rule could not be applied.

    Attributes:
        kind: TypeErrorKind, which rule failed.
        location: tuple, path from the root to the offending subterm.
        expected: Ty, the expected type for Mismatch errors.
        got: Ty, the type found for Mismatch errors, None when unknown.
    """
    exit_code = EXIT_TYPE_ERROR

    def __init__(self, kind, location, message, expected=None, got=None):
        path = '.'.join(location) or '<root>'
        super().__init__(f'{kind.value} at {path}: {message}')
        self.kind = kind
        self.location = tuple(location)
        self.expected = expected
        self.got = got


class UnboundVariable(StlcError):
    """A named variable has no binder and no context entry."""
    exit_code = EXIT_TYPE_ERROR

    def __init__(self, name):
        super().__init__(f'UnboundVariable: {name!r} is not bound')
        self.name = name


# Input errors (exit 2)


class ParseError(StlcError):
    """Concrete syntax could not be parsed.

    Attributes:
        span: tuple, (start, end) byte offsets into the input.
    """
    exit_code = EXIT_PARSE_ERROR

    def __init__(self, span, message):
        super().__init__(f'ParseError at bytes {span[0]}-{span[1]}: {message}')
        self.span = span


class SchemaError(StlcError):
    """A JSON document does not follow the term encoding."""
    exit_code = EXIT_PARSE_ERROR


class ConfigError(StlcError):
    """Settings failed validation."""
    exit_code = EXIT_PARSE_ERROR


# Resource limits (exit 3)


class FuelExhausted(StlcError):
    exit_code = EXIT_LIMIT


class StepLimit(StlcError):
    exit_code = EXIT_LIMIT


class TypeTooLarge(StlcError):
    """A type has more semantic elements than the enumeration limit.

    Attributes:
        cardinality: int, a lower bound on the number of elements.
    """
    exit_code = EXIT_LIMIT

    def __init__(self, ty, cardinality, limit):
        super().__init__(f'TypeTooLarge: {ty} has at least {cardinality} elements (limit {limit})')
        self.cardinality = cardinality


# Internal invariant violations (exit 4)


class ScopeError(StlcError):
    pass


class NegativeIndex(StlcError):
    pass


class NotApplicable(StlcError):
    pass


class NotABoolean(StlcError):
    pass


class NeutralInWhnf(StlcError):
    pass


class NeutralInDenotation(StlcError):
    pass


class InvariantViolation(StlcError):
    pass
