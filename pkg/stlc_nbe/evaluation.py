# -*- coding: utf-8 -*-
# Copyright: Raphaël de Gail
# GNU General Public License v3.0+ (see COPYING or https://www.gnu.org/licenses/gpl-3.0.txt)
"""Environment based big-step evaluation.

Terms evaluate into a domain of closures, boolean constants and neutral
values. No substitution is ever performed: a closure keeps the environment
its lambda was evaluated in, and application extends that environment.
Evaluation is call-by-value.
"""

from __future__ import annotations

import contextlib
import logging
from dataclasses import dataclass

from stlc_nbe.module_utils.errors import FuelExhausted, NotABoolean, NotApplicable, ScopeError
from stlc_nbe.module_utils.settings import DEFAULT_FUEL
from stlc_nbe.syntax import App, BoolLit, If, Lam, Var

log = logging.getLogger(__name__)

################################################################################
# Domain
################################################################################


@dataclass(frozen=True, slots=True)
class Env:
    """Persistent environment; position 0 is the most recently pushed value.

    Attributes:
        head: Value, the value at position 0, None for the empty environment.
        tail: Env, the environment before the last push.
        size: int, the number of values.
    """
    head: Value | None = None
    tail: Env | None = None
    size: int = 0

    @classmethod
    def of(cls, *values):
        """Build an environment listing values from position 0 onwards."""
        env = EMPTY_ENV
        for value in reversed(values):
            env = env.push(value)
        return env

    def push(self, value):
        return Env(value, self, self.size + 1)

    def lookup(self, index):
        """Return the value at a position.

        Raises:
            ScopeError: index is not below the environment size.
        """
        if not 0 <= index < self.size:
            raise ScopeError(f'index {index} is out of an environment of {self.size} values')
        env = self
        for _ in range(index):
            env = env.tail
        return env.head

    def __len__(self):
        return self.size

    def __iter__(self):
        env = self
        while env.size:
            yield env.head
            env = env.tail

    def __repr__(self):
        return f'Env.of({", ".join(repr(value) for value in self)})'


EMPTY_ENV = Env()


@dataclass(frozen=True, slots=True)
class Closure:
    """A lambda body with the environment it was evaluated in.

    The annotation of the lambda is kept so read-back can restore it;
    evaluation never looks at it.
    """
    body: object
    env: Env
    ann: object = None


@dataclass(frozen=True, slots=True)
class VBool:
    value: bool


@dataclass(frozen=True, slots=True)
class Neutral:
    ne: NeutralValue


@dataclass(frozen=True, slots=True)
class Lvl:
    k: int


@dataclass(frozen=True, slots=True)
class NApp:
    fun: NeutralValue
    arg: Value


@dataclass(frozen=True, slots=True)
class NIf:
    cond: NeutralValue
    then: Value
    else_: Value


Value = Closure | VBool | Neutral
NeutralValue = Lvl | NApp | NIf

VTRUE = VBool(True)
VFALSE = VBool(False)


class Fuel(object):
    """A budget of evaluation steps, decremented at every eval entry.

    Attributes:
        remaining: int, the steps left.
        initial: int, the budget the instance started with.
    """
    def __init__(self, remaining=DEFAULT_FUEL):
        self.remaining = remaining
        self.initial = remaining

    @property
    def used(self):
        return self.initial - self.remaining

    def tick(self):
        if self.remaining <= 0:
            raise FuelExhausted(f'FuelExhausted: evaluation did not finish within {self.initial} steps')
        self.remaining -= 1


@contextlib.contextmanager
def recursion_guard(what):
    """Report Python stack exhaustion as a resource limit."""
    try:
        yield
    except RecursionError:
        raise FuelExhausted(f'FuelExhausted: {what} nested too deeply to finish') from None

################################################################################
# Evaluation
################################################################################


def evaluate(env, t, fuel=None):
    """Evaluate a core term in an environment.

    Args:
        env: Env, the values of the free variables of t.
        t: CoreTerm, a term closed at scope len(env).
        fuel: Fuel, the step budget. Defaults to a fresh default budget.

    Returns:
        Value, the result.

    Raises:
        FuelExhausted: the budget ran out.
        ScopeError: t refers past the end of env.
        NotApplicable: a boolean constant was applied (ill-typed input).
        NotABoolean: a closure was used as a condition (ill-typed input).
    """
    with recursion_guard('evaluation'):
        return _eval(env, t, Fuel() if fuel is None else fuel)


def apply_value(f, a, fuel=None):
    """Apply a function value to an argument value.

    Args:
        f: Value, a Closure or a Neutral.
        a: Value, the argument.
        fuel: Fuel, the step budget for evaluating the closure body.

    Returns:
        Value, the result of the application.

    Raises:
        NotApplicable: f is a boolean constant.
    """
    with recursion_guard('application'):
        return _apply(f, a, Fuel() if fuel is None else fuel)


def _eval(env, t, fuel):
    fuel.tick()
    match t:
        case Var(index):
            return env.lookup(index)
        case Lam(ann, body):
            return Closure(body, env, ann)
        case App(fun, arg):
            return _apply(_eval(env, fun, fuel), _eval(env, arg, fuel), fuel)
        case BoolLit(value):
            return VTRUE if value else VFALSE
        case If(cond, then, else_):
            match _eval(env, cond, fuel):
                case VBool(True):
                    return _eval(env, then, fuel)
                case VBool(False):
                    return _eval(env, else_, fuel)
                case Neutral(ne):
                    # Stuck on a variable: both branches are needed by read-back.
                    return Neutral(NIf(ne, _eval(env, then, fuel), _eval(env, else_, fuel)))
                case other:
                    raise NotABoolean(f'NotABoolean: condition evaluated to {other!r}')
    raise TypeError(f'not a core term: {t!r}')


def _apply(f, a, fuel):
    match f:
        case Closure(body, saved, _):
            return _eval(saved.push(a), body, fuel)
        case Neutral(ne):
            return Neutral(NApp(ne, a))
    raise NotApplicable(f'NotApplicable: cannot apply {f!r}')

################################################################################
# Walks
################################################################################


def iter_neutrals(d):
    """Yield every neutral value reachable from a value, outermost first.

    Closure environments are walked too, so the walk covers every neutral
    read-back may meet.
    """
    match d:
        case Neutral(ne):
            yield from _iter_ne(ne)
        case Closure(_, env, _):
            for value in env:
                yield from iter_neutrals(value)


def _iter_ne(ne):
    yield ne
    match ne:
        case NApp(fun, arg):
            yield from _iter_ne(fun)
            yield from iter_neutrals(arg)
        case NIf(cond, then, else_):
            yield from _iter_ne(cond)
            yield from iter_neutrals(then)
            yield from iter_neutrals(else_)


def levels_of(d):
    """Return the set of levels occurring in a value."""
    return {ne.k for ne in iter_neutrals(d) if isinstance(ne, Lvl)}
