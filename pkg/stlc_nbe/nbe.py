# -*- coding: utf-8 -*-
# Copyright: Raphaël de Gail
# GNU General Public License v3.0+ (see COPYING or https://www.gnu.org/licenses/gpl-3.0.txt)
"""Full normalization by evaluation.

Free variables are evaluated as de Bruijn levels, which never need renaming;
read-back turns levels into indices relative to the scope it works at. Under
a closure, read-back evaluates the body with a fresh level n and reads the
result at scope n + 1.
"""

from __future__ import annotations

import enum
import logging

from stlc_nbe.evaluation import (
    Closure,
    EMPTY_ENV,
    Fuel,
    Lvl,
    NApp,
    Neutral,
    NIf,
    VBool,
    evaluate,
    recursion_guard,
)
from stlc_nbe.module_utils.errors import ScopeError
from stlc_nbe.syntax import App, BoolLit, If, Lam, Var, erase
from stlc_nbe.typecheck import infer

log = logging.getLogger(__name__)


def lvl_to_idx(k, n):
    """Convert a de Bruijn level to an index at scope n.

    Raises:
        ScopeError: k is not below n. Out-of-scope levels are rejected rather
            than truncated to 0.
    """
    if not 0 <= k < n:
        raise ScopeError(f'level {k} is out of scope {n}')
    return n - (k + 1)


def idx_to_lvl(i, n):
    """Convert a de Bruijn index to a level at scope n.

    Raises:
        ScopeError: i is not below n.
    """
    if not 0 <= i < n:
        raise ScopeError(f'index {i} is out of scope {n}')
    return n - (i + 1)


def initial_env(n):
    """Environment mapping index i to the neutral level n - 1 - i."""
    env = EMPTY_ENV
    for k in range(n):
        env = env.push(Neutral(Lvl(k)))
    return env


def readback(n, d, fuel=None, annotate=False):
    """Read a value back into a normal core term.

    Args:
        n: int, the scope, i.e. the number of levels in play.
        d: Value, a value whose levels are all below n.
        fuel: Fuel, the step budget shared with evaluation under binders.
        annotate: bool, whether lambdas keep the annotation recorded by their
            closure. Defaults to False.

    Returns:
        CoreTerm, the normal form.

    Raises:
        FuelExhausted: the budget ran out.
        ScopeError: d holds a level that is not below n.
    """
    with recursion_guard('read-back'):
        return _readback(n, d, Fuel() if fuel is None else fuel, annotate)


def readback_ne(n, e, fuel=None, annotate=False):
    """Read a neutral value back into a neutral core term."""
    with recursion_guard('read-back'):
        return _readback_ne(n, e, Fuel() if fuel is None else fuel, annotate)


def _readback(n, d, fuel, annotate):
    match d:
        case Closure(body, env, ann):
            result = evaluate(env.push(Neutral(Lvl(n))), body, fuel)
            return Lam(ann if annotate else None, _readback(n + 1, result, fuel, annotate))
        case VBool(value):
            return BoolLit(value)
        case Neutral(ne):
            return _readback_ne(n, ne, fuel, annotate)
    raise TypeError(f'not a value: {d!r}')


def _readback_ne(n, e, fuel, annotate):
    match e:
        case Lvl(k):
            return Var(lvl_to_idx(k, n))
        case NApp(fun, arg):
            return App(_readback_ne(n, fun, fuel, annotate), _readback(n, arg, fuel, annotate))
        case NIf(cond, then, else_):
            return If(
                _readback_ne(n, cond, fuel, annotate),
                _readback(n, then, fuel, annotate),
                _readback(n, else_, fuel, annotate))
    raise TypeError(f'not a neutral value: {e!r}')


def normalize(ctx, t, fuel=None, annotate=False, verify=False):
    """Compute the beta-iota normal form of a term.

    Args:
        ctx: Ctx, the typing context; its length is the scope.
        t: CoreTerm, a well-typed term in ctx.
        fuel: Fuel, the step budget. Defaults to a fresh default budget.
        annotate: bool, whether to keep lambda annotations that the input
            carried. The default output is unannotated.
        verify: bool, whether to infer the type of t first.

    Returns:
        CoreTerm, the normal form, closed at scope len(ctx).

    Raises:
        TypeCheckError: verify is set and t is ill-typed.
        FuelExhausted: the budget ran out.
    """
    if verify:
        infer(ctx, t)
    fuel = Fuel() if fuel is None else fuel
    n = len(ctx)
    value = evaluate(initial_env(n), t, fuel)
    result = readback(n, value, fuel, annotate)
    log.debug('normalized at scope %d using %d steps', n, fuel.used)
    return result if annotate else erase(result)


class Classification(enum.Enum):
    NEUTRAL = 'NeutralTerm'
    NORMAL = 'NormalTerm'
    NEITHER = 'Neither'

    @property
    def is_normal(self):
        """Neutral terms are normal terms too."""
        return self is not Classification.NEITHER


def is_neutral(t):
    match t:
        case Var():
            return True
        case App(fun, arg):
            return is_neutral(fun) and is_normal(arg)
        case If(cond, then, else_):
            return is_neutral(cond) and is_normal(then) and is_normal(else_)
    return False


def is_normal(t):
    match t:
        case Lam(_, body):
            return is_normal(body)
        case BoolLit():
            return True
    return is_neutral(t)


def classify(t):
    """Classify a term as neutral, normal (but not neutral) or neither.

    Neutral terms are normal too; the most specific class is returned.
    """
    if is_neutral(t):
        return Classification.NEUTRAL
    if is_normal(t):
        return Classification.NORMAL
    return Classification.NEITHER
