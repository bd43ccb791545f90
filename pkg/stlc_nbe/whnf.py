# -*- coding: utf-8 -*-
# Copyright: Raphaël de Gail
# GNU General Public License v3.0+ (see COPYING or https://www.gnu.org/licenses/gpl-3.0.txt)
"""Weak-head normalization of closed terms.

A closed term is evaluated in the empty environment; the resulting closure is
turned back into a lambda by performing the substitution its environment
delays. Redexes under the binder are left alone.
"""

from __future__ import annotations

from stlc_nbe.evaluation import EMPTY_ENV, Closure, Neutral, VBool, evaluate, recursion_guard
from stlc_nbe.module_utils.errors import InvariantViolation, NeutralInWhnf, ScopeError
from stlc_nbe.syntax import EMPTY_CTX, App, BoolLit, If, Lam, Var, is_closed_at
from stlc_nbe.typecheck import infer


def whnf_of(t, fuel=None, verify=False):
    """Weak-head normalize a closed term.

    Args:
        t: CoreTerm, a closed well-typed term.
        fuel: Fuel, the evaluation budget.
        verify: bool, whether to infer the type of t in the empty context first.

    Returns:
        CoreTerm, true, false or a lambda.

    Raises:
        ScopeError: t is not closed.
        TypeCheckError: verify is set and t is ill-typed.
        FuelExhausted: the budget ran out.
    """
    if not is_closed_at(t, 0):
        raise ScopeError('weak-head normalization needs a closed term')
    if verify:
        infer(EMPTY_CTX, t)
    result = quote_whnf(evaluate(EMPTY_ENV, t, fuel))
    if not is_closed_at(result, 0):
        raise InvariantViolation(f'quoted weak-head normal form is open: {result!r}')
    return result


def quote_whnf(d):
    """Quote a value produced by evaluating a closed term.

    Raises:
        NeutralInWhnf: d holds a neutral value.
    """
    with recursion_guard('quoting'):
        return _quote(d)


def close(env, depth, t):
    """Substitute quoted environment values for the free indices of t.

    Indices below depth are bound inside t and kept. Index i >= depth is
    replaced by the quote of env position i - depth; quotes are closed, so
    they need no shifting under the depth binders.

    Args:
        env: Env, the saved environment of a closure.
        depth: int, the number of binders between t and the environment.
        t: CoreTerm, a term closed at scope len(env) + depth.

    Returns:
        CoreTerm, the closed term.

    Raises:
        ScopeError: an index reaches past the environment.
    """
    with recursion_guard('quoting'):
        return _close(env, depth, t)


def _quote(d):
    match d:
        case Closure(body, env, ann):
            return Lam(ann, _close(env, 1, body))
        case VBool(value):
            return BoolLit(value)
        case Neutral(ne):
            raise NeutralInWhnf(f'NeutralInWhnf: {ne!r} cannot occur when evaluating a closed term')
    raise TypeError(f'not a value: {d!r}')


def _close(env, depth, t):
    match t:
        case Var(index):
            if index < depth:
                return t
            return _quote(env.lookup(index - depth))
        case Lam(ann, body):
            return Lam(ann, _close(env, depth + 1, body))
        case App(fun, arg):
            return App(_close(env, depth, fun), _close(env, depth, arg))
        case If(cond, then, else_):
            return If(_close(env, depth, cond), _close(env, depth, then), _close(env, depth, else_))
    return t
