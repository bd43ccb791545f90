# -*- coding: utf-8 -*-
# Copyright: Raphaël de Gail
# GNU General Public License v3.0+ (see COPYING or https://www.gnu.org/licenses/gpl-3.0.txt)
"""Types, surface terms, core terms and typing contexts.

Surface terms use names; core terms use de Bruijn indices where index 0
refers to the nearest enclosing lambda. Contexts grow to the right and their
rightmost entry binds index 0, so a context of length n is the scope in which
a core term is closed when every free index is below n.

All values here are immutable and can be shared freely between threads.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from stlc_nbe.module_utils.common import navigate_hash, single_key
from stlc_nbe.module_utils.errors import SchemaError, ScopeError, UnboundVariable

################################################################################
# Types
################################################################################


@dataclass(frozen=True, slots=True)
class TBool:
    def __str__(self):
        return 'Bool'


@dataclass(frozen=True, slots=True)
class Arrow:
    dom: Ty
    cod: Ty

    def __str__(self):
        dom = f'({self.dom})' if isinstance(self.dom, Arrow) else str(self.dom)
        return f'{dom} -> {self.cod}'


Ty = TBool | Arrow

BOOL = TBool()


def arrows(*types):
    """Build a right-nested arrow type.

    Args:
        *types: Ty, at least one type; the last one is the result type.

    Returns:
        Ty, types[0] -> types[1] -> ... -> types[-1].
    """
    result = types[-1]
    for ty in reversed(types[:-1]):
        result = Arrow(ty, result)
    return result


def type_order(ty):
    """Return the order of a type: 0 for Bool, max(order(dom) + 1, order(cod)) for arrows."""
    if isinstance(ty, Arrow):
        return max(type_order(ty.dom) + 1, type_order(ty.cod))
    return 0

################################################################################
# Surface terms
################################################################################


@dataclass(frozen=True, slots=True)
class SurfaceVar:
    name: str


@dataclass(frozen=True, slots=True)
class SurfaceLam:
    name: str
    ann: Ty | None
    body: SurfaceTerm


@dataclass(frozen=True, slots=True)
class SurfaceApp:
    fun: SurfaceTerm
    arg: SurfaceTerm


@dataclass(frozen=True, slots=True)
class SurfaceBool:
    value: bool


@dataclass(frozen=True, slots=True)
class SurfaceIf:
    cond: SurfaceTerm
    then: SurfaceTerm
    else_: SurfaceTerm


SurfaceTerm = SurfaceVar | SurfaceLam | SurfaceApp | SurfaceBool | SurfaceIf

################################################################################
# Core terms
################################################################################


@dataclass(frozen=True, slots=True)
class Var:
    index: int


@dataclass(frozen=True, slots=True)
class Lam:
    ann: Ty | None
    body: CoreTerm


@dataclass(frozen=True, slots=True)
class App:
    fun: CoreTerm
    arg: CoreTerm


@dataclass(frozen=True, slots=True)
class BoolLit:
    value: bool


@dataclass(frozen=True, slots=True)
class If:
    cond: CoreTerm
    then: CoreTerm
    else_: CoreTerm


CoreTerm = Var | Lam | App | BoolLit | If

TRUE = BoolLit(True)
FALSE = BoolLit(False)

################################################################################
# Contexts
################################################################################


@dataclass(frozen=True, slots=True)
class Binding:
    name: str
    ty: Ty


@dataclass(frozen=True, slots=True)
class Ctx:
    """An ordered typing context; the rightmost entry is de Bruijn index 0.

    Attributes:
        entries: tuple, the Binding entries from left to right.
    """
    entries: tuple = ()

    @classmethod
    def of(cls, *pairs):
        """Build a context from (name, type) pairs, left to right."""
        return cls(tuple(Binding(name, ty) for name, ty in pairs))

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def extend(self, name, ty):
        return Ctx(self.entries + (Binding(name, ty),))

    def binding_at(self, index):
        """Return the Binding for a de Bruijn index, None when out of scope."""
        if 0 <= index < len(self.entries):
            return self.entries[len(self.entries) - 1 - index]
        return None

    def type_at(self, index):
        binding = self.binding_at(index)
        return binding.ty if binding is not None else None

    def index_of(self, name):
        """Return the index of the rightmost entry named name, None if absent."""
        for index, binding in enumerate(reversed(self.entries)):
            if binding.name == name:
                return index
        return None

    def names(self):
        return [binding.name for binding in self.entries]

    def types(self):
        return [binding.ty for binding in self.entries]


EMPTY_CTX = Ctx()

################################################################################
# Name resolution
################################################################################


def resolve(t, ctx):
    """Replace names by de Bruijn indices.

    Args:
        t: SurfaceTerm, the named term.
        ctx: Ctx, the context giving meaning to free names.

    Returns:
        CoreTerm, the nameless term with annotations preserved.

    Raises:
        UnboundVariable: a free name of t is absent from ctx.
    """
    return _resolve(t, ctx, ())


def _resolve(t, ctx, bound):
    match t:
        case SurfaceVar(name):
            for distance, bound_name in enumerate(reversed(bound)):
                if bound_name == name:
                    return Var(distance)
            index = ctx.index_of(name)
            if index is None:
                raise UnboundVariable(name)
            return Var(len(bound) + index)
        case SurfaceLam(name, ann, body):
            return Lam(ann, _resolve(body, ctx, bound + (name,)))
        case SurfaceApp(fun, arg):
            return App(_resolve(fun, ctx, bound), _resolve(arg, ctx, bound))
        case SurfaceBool(value):
            return BoolLit(value)
        case SurfaceIf(cond, then, else_):
            return If(_resolve(cond, ctx, bound), _resolve(then, ctx, bound), _resolve(else_, ctx, bound))
    raise TypeError(f'not a surface term: {t!r}')


class _BinderNames(object):
    """Lazily generated binder names x0, x1, ... skipping taken names."""
    def __init__(self, taken):
        self._taken = set(taken)
        self._counter = itertools.count()
        self._names = []

    def __getitem__(self, depth):
        while len(self._names) <= depth:
            candidate = f'x{next(self._counter)}'
            if candidate not in self._taken:
                self._names.append(candidate)
        return self._names[depth]


def unresolve(t, ctx):
    """Replace de Bruijn indices by names.

    The binder at depth d is named with the d-th name of x0, x1, ... that is
    not already used by ctx, so resolving the result in ctx gives back t.

    Args:
        t: CoreTerm, a term closed at scope len(ctx).
        ctx: Ctx, the context naming the free indices.

    Returns:
        SurfaceTerm, the named term.

    Raises:
        ScopeError: an index exceeds the available binders, or names a
            context entry shadowed by a later entry of the same name.
    """
    return _unresolve(t, ctx, (), _BinderNames(ctx.names()))


def _unresolve(t, ctx, bound, fresh):
    match t:
        case Var(index):
            if index < len(bound):
                return SurfaceVar(bound[len(bound) - 1 - index])
            binding = ctx.binding_at(index - len(bound))
            if binding is None:
                raise ScopeError(f'index {index} escapes {len(bound)} binders and a context of {len(ctx)}')
            if ctx.index_of(binding.name) != index - len(bound):
                raise ScopeError(f'context entry {binding.name!r} at index {index - len(bound)} is shadowed')
            return SurfaceVar(binding.name)
        case Lam(ann, body):
            name = fresh[len(bound)]
            return SurfaceLam(name, ann, _unresolve(body, ctx, bound + (name,), fresh))
        case App(fun, arg):
            return SurfaceApp(_unresolve(fun, ctx, bound, fresh), _unresolve(arg, ctx, bound, fresh))
        case BoolLit(value):
            return SurfaceBool(value)
        case If(cond, then, else_):
            return SurfaceIf(
                _unresolve(cond, ctx, bound, fresh),
                _unresolve(then, ctx, bound, fresh),
                _unresolve(else_, ctx, bound, fresh))
    raise TypeError(f'not a core term: {t!r}')

################################################################################
# Structural helpers
################################################################################


def erase(t):
    """Return t with every lambda annotation removed."""
    match t:
        case Lam(_, body):
            return Lam(None, erase(body))
        case App(fun, arg):
            return App(erase(fun), erase(arg))
        case If(cond, then, else_):
            return If(erase(cond), erase(then), erase(else_))
    return t


def is_annotated(t):
    """Whether every lambda of t carries an annotation."""
    match t:
        case Lam(ann, body):
            return ann is not None and is_annotated(body)
        case App(fun, arg):
            return is_annotated(fun) and is_annotated(arg)
        case If(cond, then, else_):
            return is_annotated(cond) and is_annotated(then) and is_annotated(else_)
    return True


def is_closed_at(t, n, depth=0):
    """Scope audit: every index under j lambdas is below j + n.

    Args:
        t: CoreTerm, the term to audit.
        n: int, the number of free variables in scope.
        depth: int, the number of enclosing lambdas already walked.

    Returns:
        bool, True if t is closed at scope n.
    """
    match t:
        case Var(index):
            return 0 <= index < depth + n
        case Lam(_, body):
            return is_closed_at(body, n, depth + 1)
        case App(fun, arg):
            return is_closed_at(fun, n, depth) and is_closed_at(arg, n, depth)
        case If(cond, then, else_):
            return all(is_closed_at(part, n, depth) for part in (cond, then, else_))
    return True


def term_size(t):
    """Number of nodes of a core term."""
    match t:
        case Lam(_, body):
            return 1 + term_size(body)
        case App(fun, arg):
            return 1 + term_size(fun) + term_size(arg)
        case If(cond, then, else_):
            return 1 + term_size(cond) + term_size(then) + term_size(else_)
    return 1


def children(t):
    """Return the (segment, subterm) pairs of a core term, left to right."""
    match t:
        case Lam(_, body):
            return (('body', body),)
        case App(fun, arg):
            return (('fun', fun), ('arg', arg))
        case If(cond, then, else_):
            return (('cond', cond), ('then', then), ('else', else_))
    return ()


def subterm_at(t, path):
    """Follow a path of segments (body, fun, arg, cond, then, else) into t.

    Args:
        t: CoreTerm, the root term.
        path: iterable, the segments to follow.

    Returns:
        CoreTerm, the addressed subterm, or None if the path does not exist.
    """
    node = t
    for segment in path:
        node = dict(children(node)).get(segment)
        if node is None:
            return None
    return node


def first_difference(left, right, path=()):
    """Return the path of the first node where two core terms differ.

    The comparison includes lambda annotations. Children are visited left to
    right so the reported path is the leftmost-outermost difference.

    Args:
        left: CoreTerm, the first term.
        right: CoreTerm, the second term.
        path: tuple, the path to prefix results with.

    Returns:
        tuple, the path of the difference, None if both terms are equal.
    """
    if type(left) is not type(right):
        return path
    match left:
        case Var(index):
            return None if index == right.index else path
        case BoolLit(value):
            return None if value == right.value else path
        case Lam(ann, _):
            if ann != right.ann:
                return path
    for (segment, mine), (_, theirs) in zip(children(left), children(right)):
        diff = first_difference(mine, theirs, path + (segment,))
        if diff is not None:
            return diff
    return None

################################################################################
# JSON encoding
################################################################################

_ABSENT = object()


def encode_type(ty):
    """Encode a type as "Bool" or {"arrow": [TY, TY]}."""
    if isinstance(ty, Arrow):
        return {'arrow': [encode_type(ty.dom), encode_type(ty.cod)]}
    return 'Bool'


def decode_type(source):
    """Decode the JSON form of a type.

    Raises:
        SchemaError: source does not follow the type encoding.
    """
    if source == 'Bool':
        return BOOL
    parts = navigate_hash(source, ['arrow'])
    if single_key(source) == 'arrow' and isinstance(parts, list) and len(parts) == 2:
        return Arrow(decode_type(parts[0]), decode_type(parts[1]))
    raise SchemaError(f'SchemaError: not a type: {source!r}')


def encode_term(t):
    """Encode a core term following the documented JSON schema."""
    match t:
        case Var(index):
            return {'var': index}
        case Lam(ann, body):
            return {'lam': {'ann': None if ann is None else encode_type(ann), 'body': encode_term(body)}}
        case App(fun, arg):
            return {'app': {'fun': encode_term(fun), 'arg': encode_term(arg)}}
        case BoolLit(value):
            return {'bool': value}
        case If(cond, then, else_):
            return {'if': {'cond': encode_term(cond), 'then': encode_term(then), 'else': encode_term(else_)}}
    raise TypeError(f'not a core term: {t!r}')


def _field(source, tag, key):
    value = navigate_hash(source, [tag, key], _ABSENT)
    if value is _ABSENT:
        raise SchemaError(f'SchemaError: "{tag}" object lacks "{key}"')
    return value


def decode_term(source):
    """Decode the JSON form of a core term.

    Args:
        source: obj, the decoded JSON document.

    Returns:
        CoreTerm, the term.

    Raises:
        SchemaError: source does not follow the term encoding.
    """
    tag = single_key(source)
    if tag == 'var':
        index = source['var']
        if isinstance(index, bool) or not isinstance(index, int) or index < 0:
            raise SchemaError(f'SchemaError: "var" needs a natural number, got {index!r}')
        return Var(index)
    if tag == 'lam':
        ann = _field(source, 'lam', 'ann')
        return Lam(None if ann is None else decode_type(ann), decode_term(_field(source, 'lam', 'body')))
    if tag == 'app':
        return App(decode_term(_field(source, 'app', 'fun')), decode_term(_field(source, 'app', 'arg')))
    if tag == 'bool' and isinstance(source['bool'], bool):
        return BoolLit(source['bool'])
    if tag == 'if':
        return If(
            decode_term(_field(source, 'if', 'cond')),
            decode_term(_field(source, 'if', 'then')),
            decode_term(_field(source, 'if', 'else')))
    raise SchemaError(f'SchemaError: not a term: {source!r}')
