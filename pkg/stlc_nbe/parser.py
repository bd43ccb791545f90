# -*- coding: utf-8 -*-
# Copyright: Raphaël de Gail
# GNU General Public License v3.0+ (see COPYING or https://www.gnu.org/licenses/gpl-3.0.txt)
"""Concrete syntax for terms, types and contexts, and the matching printers.

Grammar summary:

    term  ::= \\x[:type]. term | if term then term else term | app
    app   ::= app atom | atom
    atom  ::= name | true | false | ( term )
    type  ::= atype -> type | atype
    atype ::= Bool | ( type )
    ctx   ::= [ name : type { , name : type } ]

`λ` is accepted wherever `\\` is. A lambda body and the else branch of a
conditional extend as far right as possible.
"""

from __future__ import annotations

from lark import Lark, Transformer
from lark.exceptions import UnexpectedCharacters, UnexpectedInput, UnexpectedToken

from stlc_nbe.module_utils.errors import ParseError
from stlc_nbe.syntax import (
    App,
    BOOL,
    Arrow,
    BoolLit,
    Ctx,
    If,
    Lam,
    SurfaceApp,
    SurfaceBool,
    SurfaceIf,
    SurfaceLam,
    SurfaceVar,
    Var,
)

KEYWORDS = frozenset(['if', 'then', 'else', 'true', 'false', 'Bool'])

GRAMMAR = r'''
?term: lam
     | ite
     | application

lam: _LAMBDA NAME [":" type] "." term
ite: "if" term "then" term "else" term

?application: application atom -> app
            | atom

?atom: NAME -> var
     | "true" -> true
     | "false" -> false
     | "(" term ")"

?type: atype "->" type -> arrow
     | atype

?atype: "Bool" -> bool_type
      | "(" type ")"

ctx: (binding ("," binding)*)?
binding: NAME ":" type

_LAMBDA: /\\|λ/
NAME: /[A-Za-z_][A-Za-z0-9_']*/

%import common.WS
%ignore WS
'''


class _SurfaceBuilder(Transformer):
    """Builds surface terms, types and contexts while the parser reduces."""

    def var(self, children):
        (name,) = children
        return SurfaceVar(str(name))

    def true(self, _):
        return SurfaceBool(True)

    def false(self, _):
        return SurfaceBool(False)

    def app(self, children):
        fun, arg = children
        return SurfaceApp(fun, arg)

    def lam(self, children):
        name, ann, body = children
        return SurfaceLam(str(name), ann, body)

    def ite(self, children):
        cond, then, else_ = children
        return SurfaceIf(cond, then, else_)

    def arrow(self, children):
        dom, cod = children
        return Arrow(dom, cod)

    def bool_type(self, _):
        return BOOL

    def binding(self, children):
        name, ty = children
        return (str(name), ty)

    def ctx(self, children):
        return Ctx.of(*children)


_PARSER = Lark(
    GRAMMAR,
    parser='lalr',
    lexer='basic',
    start=['term', 'type', 'ctx'],
    transformer=_SurfaceBuilder(),
)


def _byte_offset(src, char_offset):
    return len(src[:char_offset].encode('utf-8', 'surrogatepass'))


def _error_span(src, exc):
    """Return the (start, end) byte span of a lark error, clamped to the input."""
    token = getattr(exc, 'token', None)
    if getattr(token, 'type', None) == '$END':
        end = _byte_offset(src, len(src))
        return (end, end)
    start = getattr(token, 'start_pos', None)
    if start is None:
        start = getattr(exc, 'pos_in_stream', None)
    if start is None or start < 0 or start > len(src):
        start = len(src)
    end = getattr(token, 'end_pos', None)
    if end is None or end < start or end > len(src):
        end = min(start + 1, len(src))
    return (_byte_offset(src, start), _byte_offset(src, end))


def _describe(src, exc):
    if isinstance(exc, UnexpectedCharacters):
        return f'unexpected character {src[exc.pos_in_stream]!r}'
    if isinstance(exc, UnexpectedToken):
        found = 'end of input' if exc.token.type == '$END' else repr(str(exc.token))
        expected = ', '.join(sorted(exc.expected or ()))
        return f'unexpected {found}' + (f', expected one of: {expected}' if expected else '')
    return 'unexpected end of input'


def _parse(src, start):
    try:
        return _PARSER.parse(src, start=start)
    except UnexpectedInput as exc:
        raise ParseError(_error_span(src, exc), _describe(src, exc)) from None


def parse_term(src):
    """Parse a named term.

    Args:
        src: str, the source text.

    Returns:
        SurfaceTerm, the parsed term.

    Raises:
        ParseError: the text is not a term.
    """
    return _parse(src, 'term')


def parse_type(src):
    """Parse a type; `->` associates to the right."""
    return _parse(src, 'type')


def parse_ctx(src):
    """Parse a comma separated context; the rightmost entry binds index 0."""
    return _parse(src, 'ctx')

################################################################################
# Printing
################################################################################

_TOP, _APP, _ATOM = 0, 1, 2


def print_type(ty):
    """Print a type with the fewest parentheses."""
    return str(ty)


def print_ctx(ctx):
    return ', '.join(f'{binding.name}:{binding.ty}' for binding in ctx)


def print_term(t):
    """Print a named term with the fewest parentheses that reparse to it.

    Args:
        t: SurfaceTerm, the term to print.

    Returns:
        str, the concrete syntax.
    """
    return _print(t, _TOP, _surface_parts)


def format_core(t):
    """Print a core term in raw de Bruijn syntax, for example `\\:Bool. #0`."""
    return _print(t, _TOP, _core_parts)


def _surface_parts(t):
    """Split a surface term into (kind, payload) for the shared printer."""
    match t:
        case SurfaceVar(name):
            return 'atom', name
        case SurfaceBool(value):
            return 'atom', 'true' if value else 'false'
        case SurfaceLam(name, ann, body):
            return 'lam', (name if ann is None else f'{name}:{ann}', body)
        case SurfaceApp(fun, arg):
            return 'app', (fun, arg)
        case SurfaceIf(cond, then, else_):
            return 'if', (cond, then, else_)
    raise TypeError(f'not a surface term: {t!r}')


def _core_parts(t):
    match t:
        case Var(index):
            return 'atom', f'#{index}'
        case BoolLit(value):
            return 'atom', 'true' if value else 'false'
        case Lam(ann, body):
            return 'lam', ('' if ann is None else f':{ann}', body)
        case App(fun, arg):
            return 'app', (fun, arg)
        case If(cond, then, else_):
            return 'if', (cond, then, else_)
    raise TypeError(f'not a core term: {t!r}')


def _print(t, prec, parts):
    kind, payload = parts(t)
    if kind == 'atom':
        return payload
    if kind == 'app':
        fun, arg = payload
        text, level = f'{_print(fun, _APP, parts)} {_print(arg, _ATOM, parts)}', _APP
    elif kind == 'lam':
        head, body = payload
        text, level = f'\\{head}. {_print(body, _TOP, parts)}', _TOP
    else:
        cond, then, else_ = payload
        text = (f'if {_print(cond, _TOP, parts)} then {_print(then, _TOP, parts)} '
                f'else {_print(else_, _TOP, parts)}')
        level = _TOP
    return f'({text})' if level < prec else text
