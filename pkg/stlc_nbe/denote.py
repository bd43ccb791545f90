# -*- coding: utf-8 -*-
# Copyright: Raphaël de Gail
# GNU General Public License v3.0+ (see COPYING or https://www.gnu.org/licenses/gpl-3.0.txt)
"""Finite set-theoretic semantics of types and terms.

Bool denotes {false, true} and S -> T denotes every function from the
elements of S to those of T, stored as a table over the canonical
enumeration of S. Tables are canonical, so two functions are equal exactly
when their tables are, and denotational equivalence of two terms is decided
by evaluating both under every assignment of the context.

Element counts grow as a tower (2, 4, 16, 65536, ...); enumeration refuses
types above a limit.
"""

from __future__ import annotations

import functools
import itertools
import logging
from dataclasses import dataclass

from stlc_nbe.evaluation import Closure, Neutral, VBool
from stlc_nbe.module_utils.errors import (
    InvariantViolation,
    NeutralInDenotation,
    NotABoolean,
    NotApplicable,
    ScopeError,
    TypeCheckError,
    TypeErrorKind,
    TypeTooLarge,
)
from stlc_nbe.module_utils.settings import DEFAULT_MAX_DENOTE_SIZE
from stlc_nbe.syntax import BOOL, App, Arrow, BoolLit, Ctx, If, Lam, Var
from stlc_nbe.typecheck import elaborate, infer

log = logging.getLogger(__name__)


@dataclass(frozen=True, slots=True)
class SBool:
    value: bool


@dataclass(frozen=True, slots=True)
class STable:
    """A function, listing its result for each argument in canonical order."""
    entries: tuple


SemVal = SBool | STable

SFALSE = SBool(False)
STRUE = SBool(True)

################################################################################
# Enumeration
################################################################################


def cardinality(ty, limit=DEFAULT_MAX_DENOTE_SIZE):
    """Count the elements of a type.

    Args:
        ty: Ty, the type.
        limit: int, counts above the limit are not computed exactly.

    Returns:
        int, the exact count when it is at most limit, otherwise a number
        greater than limit.
    """
    if not isinstance(ty, Arrow):
        return 2
    dom = cardinality(ty.dom, limit)
    cod = cardinality(ty.cod, limit)
    if dom > limit:
        return limit + 1
    count = 1
    for _ in range(dom):
        count *= cod
        if count > limit:
            return count
    return count


def enumerate_type(ty, limit=DEFAULT_MAX_DENOTE_SIZE):
    """List the elements of a type in canonical order.

    Bool is [false, true]. Tables of S -> T are listed lexicographically over
    the entry positions, the last position varying fastest.

    Args:
        ty: Ty, the type.
        limit: int, the largest acceptable element count.

    Returns:
        tuple, the SemVal elements.

    Raises:
        TypeTooLarge: ty has more than limit elements.
    """
    count = cardinality(ty, limit)
    if count > limit:
        raise TypeTooLarge(ty, count, limit)
    return _enumerate(ty)


@functools.lru_cache(maxsize=None)
def _enumerate(ty):
    if not isinstance(ty, Arrow):
        return (SFALSE, STRUE)
    width = len(_enumerate(ty.dom))
    return tuple(STable(entries) for entries in itertools.product(_enumerate(ty.cod), repeat=width))


def _size_of(sv):
    """Element count of the type an element belongs to, read off its shape."""
    if isinstance(sv, STable):
        return _size_of(sv.entries[0]) ** len(sv.entries)
    return 2


def position(sv):
    """Index of an element in the canonical enumeration of its type."""
    if isinstance(sv, STable):
        radix = _size_of(sv.entries[0])
        index = 0
        for entry in sv.entries:
            index = index * radix + position(entry)
        return index
    return int(sv.value)


def enumerable(ctx, t, ty, limit):
    """Whether the context, the goal and every annotation of t fit the limit."""
    types = list(ctx.types()) + [ty] + list(_annotations(t))
    return all(cardinality(each, limit) <= limit for each in types)


def _annotations(t):
    match t:
        case Lam(ann, body):
            if ann is not None:
                yield ann
            yield from _annotations(body)
        case App(fun, arg):
            yield from _annotations(fun)
            yield from _annotations(arg)
        case If(cond, then, else_):
            yield from _annotations(cond)
            yield from _annotations(then)
            yield from _annotations(else_)

################################################################################
# Meaning of terms and values
################################################################################


def sem_eval(rho, t, limit=DEFAULT_MAX_DENOTE_SIZE):
    """Denotation of a fully annotated term.

    Args:
        rho: sequence, the SemVal of each free variable, position 0 for index 0.
        t: CoreTerm, a fully annotated term.
        limit: int, the enumeration limit for lambda domains.

    Returns:
        SemVal, the meaning of t under rho.

    Raises:
        TypeCheckError: a lambda lacks its annotation.
        TypeTooLarge: a lambda domain exceeds the limit.
    """
    return _sem(tuple(rho), t, limit, ())


def _sem(rho, t, limit, path):
    match t:
        case Var(index):
            if index >= len(rho):
                raise ScopeError(f'index {index} is out of a semantic environment of {len(rho)}')
            return rho[index]
        case Lam(ann, body):
            if ann is None:
                raise TypeCheckError(
                    TypeErrorKind.MISSING_ANNOTATION, path,
                    'denotations need every lambda annotated')
            return STable(tuple(
                _sem((z,) + rho, body, limit, path + ('body',))
                for z in enumerate_type(ann, limit)))
        case App(fun, arg):
            table = _sem(rho, fun, limit, path + ('fun',))
            if not isinstance(table, STable):
                raise NotApplicable(f'NotApplicable: {table!r} is not a function')
            return table.entries[position(_sem(rho, arg, limit, path + ('arg',)))]
        case BoolLit(value):
            return SBool(value)
        case If(cond, then, else_):
            scrutinee = _sem(rho, cond, limit, path + ('cond',))
            if not isinstance(scrutinee, SBool):
                raise NotABoolean(f'NotABoolean: {scrutinee!r} used as a condition')
            if scrutinee.value:
                return _sem(rho, then, limit, path + ('then',))
            return _sem(rho, else_, limit, path + ('else',))
    raise TypeError(f'not a core term: {t!r}')


def value_type(d):
    """Type of a closed domain value whose closures are annotated.

    Raises:
        NeutralInDenotation: d holds a neutral value.
        TypeCheckError: a closure body is ill-typed or lacks its annotation.
    """
    match d:
        case VBool():
            return BOOL
        case Closure(body, env, ann):
            if ann is None:
                raise TypeCheckError(
                    TypeErrorKind.MISSING_ANNOTATION, (),
                    'closure of an unannotated lambda has no known type')
            saved = Ctx.of(*(('_', value_type(value)) for value in reversed(list(env))))
            return Arrow(ann, infer(saved.extend('_', ann), body))
        case Neutral(ne):
            raise NeutralInDenotation(f'NeutralInDenotation: {ne!r} has no closed meaning')
    raise TypeError(f'not a value: {d!r}')


def sem_of_domain(d, ty, limit=DEFAULT_MAX_DENOTE_SIZE):
    """Meaning of a closed domain value at a type.

    A closure means the function taking z to the meaning of its body in the
    meaning of its saved environment extended with z.

    Raises:
        NeutralInDenotation: d holds a neutral value.
        TypeTooLarge: ty exceeds the limit.
    """
    match d:
        case VBool(value):
            return SBool(value)
        case Closure(body, env, _):
            if not isinstance(ty, Arrow):
                raise InvariantViolation(f'closure given the non-function type {ty}')
            rho = tuple(sem_of_domain(value, value_type(value), limit) for value in env)
            return STable(tuple(
                _sem((z,) + rho, body, limit, ('body',))
                for z in enumerate_type(ty.dom, limit)))
        case Neutral(ne):
            raise NeutralInDenotation(f'NeutralInDenotation: {ne!r} has no closed meaning')
    raise TypeError(f'not a value: {d!r}')


def denot_equal(ctx, ty, t, v, limit=DEFAULT_MAX_DENOTE_SIZE):
    """Decide whether two terms mean the same under every assignment.

    Both terms are elaborated against ty first, so unannotated lambdas in
    checking position are accepted.

    Args:
        ctx: Ctx, the typing context.
        ty: Ty, the type both terms check against.
        t: CoreTerm, the first term.
        v: CoreTerm, the second term.
        limit: int, the enumeration limit.

    Returns:
        bool, True if the denotations agree on every assignment.

    Raises:
        TypeCheckError: a term does not check against ty.
        TypeTooLarge: a type involved exceeds the limit.
    """
    t = elaborate(ctx, t, ty)
    v = elaborate(ctx, v, ty)
    domains = [enumerate_type(binding.ty, limit) for binding in ctx]
    checked = 0
    for assignment in itertools.product(*domains):
        rho = tuple(reversed(assignment))
        checked += 1
        if _sem(rho, t, limit, ()) != _sem(rho, v, limit, ()):
            log.debug('denotations differ after %d assignments', checked)
            return False
    return True
