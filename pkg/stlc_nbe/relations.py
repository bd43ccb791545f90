# -*- coding: utf-8 -*-
# Copyright: Raphaël de Gail
# GNU General Public License v3.0+ (see COPYING or https://www.gnu.org/licenses/gpl-3.0.txt)
"""The logical predicate behind the totality of evaluation, made executable.

At Bool a closed value is related when it is a boolean constant. At S -> T a
value is related when it is a closure taking every related argument to a
related result. Quantifying over every argument is replaced by quantifying
over one representative per element of the finite meaning of S: the closed
term `reify` builds for that element, evaluated.
"""

from __future__ import annotations

import functools
import itertools
import logging

from stlc_nbe.denote import enumerate_type
from stlc_nbe.evaluation import EMPTY_ENV, Closure, Env, Fuel, VBool, apply_value, evaluate
from stlc_nbe.module_utils.errors import FuelExhausted, NotABoolean, NotApplicable
from stlc_nbe.module_utils.settings import DEFAULT_FUEL
from stlc_nbe.syntax import FALSE, TRUE, App, Arrow, BoolLit, If, Lam, Var

log = logging.getLogger(__name__)

DEFAULT_RELATION_LIMIT = 256


def equal_at(ty, a, b, limit=DEFAULT_RELATION_LIMIT):
    """Build a Bool term deciding whether terms a and b of type ty are equal.

    Functions are compared on the reified element of every argument.
    """
    if not isinstance(ty, Arrow):
        return If(a, b, If(b, FALSE, TRUE))
    result = TRUE
    for element in reversed(enumerate_type(ty.dom, limit)):
        probe = reify(element, ty.dom, limit)
        result = If(equal_at(ty.cod, App(a, probe), App(b, probe), limit), result, FALSE)
    return result


def reify(sv, ty, limit=DEFAULT_RELATION_LIMIT):
    """Build a closed, fully annotated term whose denotation is sv.

    Args:
        sv: SemVal, an element of the meaning of ty.
        ty: Ty, the type of the element.
        limit: int, the enumeration limit for argument types.

    Returns:
        CoreTerm, the term.
    """
    if not isinstance(ty, Arrow):
        return BoolLit(sv.value)
    results = [reify(entry, ty.cod, limit) for entry in sv.entries]
    if not isinstance(ty.dom, Arrow):
        return Lam(ty.dom, If(Var(0), results[1], results[0]))
    elements = enumerate_type(ty.dom, limit)
    # The reified results are closed, so they stay valid under the binder.
    body = results[-1]
    for element, result in zip(reversed(elements[:-1]), reversed(results[:-1])):
        body = If(equal_at(ty.dom, Var(0), reify(element, ty.dom, limit), limit), result, body)
    return Lam(ty.dom, body)


@functools.lru_cache(maxsize=None)
def representatives(ty, limit=DEFAULT_RELATION_LIMIT):
    """One closed value per element of the meaning of ty, in canonical order."""
    return tuple(evaluate(EMPTY_ENV, reify(sv, ty, limit)) for sv in enumerate_type(ty, limit))


def in_value_relation(ty, d, fuel=None, limit=DEFAULT_RELATION_LIMIT):
    """Whether a closed value is related at a type.

    Args:
        ty: Ty, the type.
        d: Value, the closed value.
        fuel: Fuel, the budget for applying closures.
        limit: int, the enumeration limit for argument types.

    Returns:
        bool, True if d is related at ty.
    """
    if not isinstance(ty, Arrow):
        return isinstance(d, VBool)
    if not isinstance(d, Closure):
        return False
    fuel = Fuel() if fuel is None else fuel
    for argument in representatives(ty.dom, limit):
        try:
            result = apply_value(d, argument, fuel)
        except (FuelExhausted, NotApplicable, NotABoolean):
            return False
        if not in_value_relation(ty.cod, result, fuel, limit):
            return False
    return True


def semantically_typed(ctx, t, ty, budget=DEFAULT_FUEL, limit=DEFAULT_RELATION_LIMIT):
    """Check the fundamental lemma for one term on representative environments.

    Every environment assigning a representative to each context entry must
    evaluate t to a value related at ty.

    Args:
        ctx: Ctx, the typing context.
        t: CoreTerm, a well-typed term in ctx.
        ty: Ty, its type.
        budget: int, the fuel granted to each environment.
        limit: int, the enumeration limit.

    Returns:
        bool, True if every environment passes.
    """
    domains = [representatives(binding.ty, limit) for binding in ctx]
    for assignment in itertools.product(*domains):
        fuel = Fuel(budget)
        try:
            value = evaluate(Env.of(*reversed(assignment)), t, fuel)
        except (FuelExhausted, NotApplicable, NotABoolean) as inst:
            log.debug('evaluation failed in a representative environment: %s', inst.message)
            return False
        if not in_value_relation(ty, value, fuel, limit):
            return False
    return True
