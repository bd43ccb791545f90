# -*- coding: utf-8 -*-
# Copyright: Raphaël de Gail
# GNU General Public License v3.0+ (see COPYING or https://www.gnu.org/licenses/gpl-3.0.txt)
"""Bidirectional typing for core terms.

Inference needs every lambda in inference position to be annotated; checking
pushes the goal type into lambdas and conditional branches so unannotated
lambdas are accepted there. Elaboration runs the same rules and rebuilds the
term with every lambda annotation filled in.
"""

from __future__ import annotations

from stlc_nbe.module_utils.errors import TypeCheckError, TypeErrorKind
from stlc_nbe.syntax import BOOL, App, Arrow, BoolLit, If, Lam, Var


def infer(ctx, t):
    """Infer the type of a core term.

    Args:
        ctx: Ctx, the typing context.
        t: CoreTerm, a term closed at scope len(ctx).

    Returns:
        Ty, the unique type of t.

    Raises:
        TypeCheckError: t is ill-typed or lacks an annotation in inference
            position.
    """
    return _synth(ctx, t, ())[1]


def check(ctx, t, ty):
    """Check a core term against a type.

    Args:
        ctx: Ctx, the typing context.
        t: CoreTerm, the term to check.
        ty: Ty, the goal type.

    Raises:
        TypeCheckError: no derivation of ctx |- t : ty exists.
    """
    _check(ctx, t, ty, ())


def elaborate(ctx, t, ty):
    """Return t with every lambda annotation filled from its checking derivation.

    Args:
        ctx: Ctx, the typing context.
        t: CoreTerm, the term to elaborate.
        ty: Ty, the goal type.

    Returns:
        CoreTerm, the annotated term; erasing annotations gives back erase(t).

    Raises:
        TypeCheckError: as check.
    """
    return _check(ctx, t, ty, ())


def _synth(ctx, t, path):
    """Inference mode: returns (elaborated term, type)."""
    match t:
        case Var(index):
            ty = ctx.type_at(index)
            if ty is None:
                raise TypeCheckError(
                    TypeErrorKind.UNBOUND_INDEX, path,
                    f'index {index} is out of scope (context has {len(ctx)} entries)')
            return t, ty
        case Lam(ann, body):
            if ann is None:
                raise TypeCheckError(
                    TypeErrorKind.MISSING_ANNOTATION, path,
                    'cannot infer the type of an unannotated lambda')
            body, cod = _synth(ctx.extend('_', ann), body, path + ('body',))
            return Lam(ann, body), Arrow(ann, cod)
        case App(fun, arg):
            fun, fun_ty = _synth(ctx, fun, path + ('fun',))
            if not isinstance(fun_ty, Arrow):
                raise TypeCheckError(
                    TypeErrorKind.NOT_A_FUNCTION, path + ('fun',),
                    f'a term of type {fun_ty} cannot be applied')
            return App(fun, _check(ctx, arg, fun_ty.dom, path + ('arg',))), fun_ty.cod
        case BoolLit():
            return t, BOOL
        case If(cond, then, else_):
            cond = _check(ctx, cond, BOOL, path + ('cond',))
            try:
                then, ty = _synth(ctx, then, path + ('then',))
            except TypeCheckError as inst:
                if inst.kind is not TypeErrorKind.MISSING_ANNOTATION:
                    raise
                # The else branch may still fix the type.
                else_, ty = _synth(ctx, else_, path + ('else',))
                return If(cond, _check(ctx, then, ty, path + ('then',)), else_), ty
            return If(cond, then, _check(ctx, else_, ty, path + ('else',))), ty
    raise TypeError(f'not a core term: {t!r}')


def _check(ctx, t, ty, path):
    """Checking mode: returns the elaborated term."""
    match t:
        case Lam(ann, body):
            if not isinstance(ty, Arrow):
                raise TypeCheckError(
                    TypeErrorKind.MISMATCH, path,
                    f'expected {ty}, got a function', expected=ty)
            if ann is not None and ann != ty.dom:
                raise TypeCheckError(
                    TypeErrorKind.MISMATCH, path,
                    f'binder annotated {ann} but the expected domain is {ty.dom}',
                    expected=ty.dom, got=ann)
            body = _check(ctx.extend('_', ty.dom), body, ty.cod, path + ('body',))
            return Lam(ty.dom, body)
        case If(cond, then, else_):
            return If(
                _check(ctx, cond, BOOL, path + ('cond',)),
                _check(ctx, then, ty, path + ('then',)),
                _check(ctx, else_, ty, path + ('else',)))
        case App(fun, arg):
            try:
                return _switch(ctx, t, ty, path)
            except TypeCheckError as inst:
                if inst.kind is not TypeErrorKind.MISSING_ANNOTATION:
                    raise
                # Infer the argument first and check the function against arg -> goal.
                arg, arg_ty = _synth(ctx, arg, path + ('arg',))
                return App(_check(ctx, fun, Arrow(arg_ty, ty), path + ('fun',)), arg)
    return _switch(ctx, t, ty, path)


def _switch(ctx, t, ty, path):
    """Infer, then compare against the goal."""
    t, got = _synth(ctx, t, path)
    if got != ty:
        raise TypeCheckError(TypeErrorKind.MISMATCH, path, f'expected {ty}, got {got}', expected=ty, got=got)
    return t
