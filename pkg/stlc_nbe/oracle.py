# -*- coding: utf-8 -*-
# Copyright: Raphaël de Gail
# GNU General Public License v3.0+ (see COPYING or https://www.gnu.org/licenses/gpl-3.0.txt)
"""Substitution based reduction, the baseline the evaluators are tested against.

This module is deliberately naive. Reduction is untyped, so ill-typed terms
such as (\\x. x x) (\\x. x x) are accepted and run into the step limit.
"""

from __future__ import annotations

import logging

from stlc_nbe.evaluation import recursion_guard
from stlc_nbe.module_utils.errors import NegativeIndex, StepLimit
from stlc_nbe.syntax import App, BoolLit, If, Lam, Var, erase

log = logging.getLogger(__name__)

DEFAULT_MAX_STEPS = 100000


def shift(amount, cutoff, t):
    """Add amount to every index of t that is free above cutoff.

    Raises:
        NegativeIndex: a shifted index would drop below 0.
    """
    match t:
        case Var(index):
            if index < cutoff:
                return t
            if index + amount < 0:
                raise NegativeIndex(f'NegativeIndex: shifting #{index} by {amount}')
            return Var(index + amount)
        case Lam(ann, body):
            return Lam(ann, shift(amount, cutoff + 1, body))
        case App(fun, arg):
            return App(shift(amount, cutoff, fun), shift(amount, cutoff, arg))
        case If(cond, then, else_):
            return If(shift(amount, cutoff, cond), shift(amount, cutoff, then), shift(amount, cutoff, else_))
    return t


def subst(target, s, t):
    """Capture-avoiding substitution of s for index target in t."""
    match t:
        case Var(index):
            return s if index == target else t
        case Lam(ann, body):
            return Lam(ann, subst(target + 1, shift(1, 0, s), body))
        case App(fun, arg):
            return App(subst(target, s, fun), subst(target, s, arg))
        case If(cond, then, else_):
            return If(subst(target, s, cond), subst(target, s, then), subst(target, s, else_))
    return t


def beta(body, arg):
    """Contract (\\. body) arg."""
    return shift(-1, 0, subst(0, shift(1, 0, arg), body))


def step(t):
    """Contract the leftmost-outermost beta or iota redex.

    Args:
        t: CoreTerm, any term, typed or not.

    Returns:
        CoreTerm, the reduct, or None when t is normal.
    """
    match t:
        case App(Lam(_, body), arg):
            return beta(body, arg)
        case If(BoolLit(value), then, else_):
            return then if value else else_
        case App(fun, arg):
            reduct = step(fun)
            if reduct is not None:
                return App(reduct, arg)
            reduct = step(arg)
            return None if reduct is None else App(fun, reduct)
        case If(cond, then, else_):
            reduct = step(cond)
            if reduct is not None:
                return If(reduct, then, else_)
            reduct = step(then)
            if reduct is not None:
                return If(cond, reduct, else_)
            reduct = step(else_)
            return None if reduct is None else If(cond, then, reduct)
        case Lam(ann, body):
            reduct = step(body)
            return None if reduct is None else Lam(ann, reduct)
    return None


def nf(ctx, t, max_steps=DEFAULT_MAX_STEPS, annotate=False):
    """Normalize by iterating normal-order steps.

    Args:
        ctx: Ctx, the context t lives in; reduction itself never looks at it.
        t: CoreTerm, the term to normalize.
        max_steps: int, the number of steps allowed.
        annotate: bool, whether to keep lambda annotations in the output.

    Returns:
        CoreTerm, the normal form.

    Raises:
        StepLimit: no normal form within max_steps steps.
    """
    result = _iterate(step, t, max_steps)
    log.debug('oracle normal form in context of %d entries', len(ctx))
    return result if annotate else erase(result)


def _is_value(t):
    return isinstance(t, (Lam, BoolLit))


def step_cbv(t):
    """One call-by-value weak step on a closed term.

    The function is reduced to a value, then the argument, then the redex is
    contracted; a condition is reduced to a constant before a branch is
    taken. Lambdas are never entered.

    Returns:
        CoreTerm, the reduct, or None when t is a value or stuck.
    """
    match t:
        case App(fun, arg):
            if not _is_value(fun):
                reduct = step_cbv(fun)
                return None if reduct is None else App(reduct, arg)
            if not _is_value(arg):
                reduct = step_cbv(arg)
                return None if reduct is None else App(fun, reduct)
            if isinstance(fun, Lam):
                return beta(fun.body, arg)
        case If(cond, then, else_):
            if not _is_value(cond):
                reduct = step_cbv(cond)
                return None if reduct is None else If(reduct, then, else_)
            if isinstance(cond, BoolLit):
                return then if cond.value else else_
    return None


def whnf_oracle(t, max_steps=DEFAULT_MAX_STEPS):
    """Weak-head normalize a closed term by call-by-value substitution.

    Raises:
        StepLimit: no weak-head normal form within max_steps steps.
    """
    return _iterate(step_cbv, t, max_steps)


def _iterate(stepper, t, max_steps):
    steps = 0
    with recursion_guard('reduction'):
        while True:
            reduct = stepper(t)
            if reduct is None:
                log.debug('reduction finished after %d steps', steps)
                return t
            steps += 1
            if steps > max_steps:
                raise StepLimit(f'StepLimit: no normal form within {max_steps} steps')
            t = reduct
