# -*- coding: utf-8 -*-
# Copyright: Raphaël de Gail
# GNU General Public License v3.0+ (see COPYING or https://www.gnu.org/licenses/gpl-3.0.txt)
import unittest

from hypothesis import given, settings
from hypothesis import strategies as st

from stlc_nbe.module_utils.errors import ParseError
from stlc_nbe.parser import (
    KEYWORDS,
    format_core,
    parse_ctx,
    parse_term,
    parse_type,
    print_ctx,
    print_term,
    print_type,
)
from stlc_nbe.syntax import (
    BOOL,
    EMPTY_CTX,
    FALSE,
    TRUE,
    App,
    Arrow,
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

names = st.from_regex(r"[A-Za-z_][A-Za-z0-9_']{0,3}", fullmatch=True).filter(lambda name: name not in KEYWORDS)
types = st.recursive(st.just(BOOL), lambda inner: st.builds(Arrow, inner, inner), max_leaves=4)
surface_terms = st.recursive(
    st.one_of(st.builds(SurfaceVar, names), st.builds(SurfaceBool, st.booleans())),
    lambda inner: st.one_of(
        st.builds(SurfaceLam, names, st.none() | types, inner),
        st.builds(SurfaceApp, inner, inner),
        st.builds(SurfaceIf, inner, inner, inner)),
    max_leaves=12)


class ParseTermTestCase(unittest.TestCase):
    """A class to test term parsing.
    """
    def test_lambda(self):
        """Test an annotated lambda.
        """
        self.assertEqual(parse_term('\\x:Bool. x'), SurfaceLam('x', BOOL, SurfaceVar('x')))

    def test_greek_lambda(self):
        """Test that λ is accepted as well as the backslash.
        """
        self.assertEqual(parse_term('λx. x'), SurfaceLam('x', None, SurfaceVar('x')))

    def test_application_is_left_associative(self):
        """Test juxtaposition.
        """
        f, x, y = SurfaceVar('f'), SurfaceVar('x'), SurfaceVar('y')
        self.assertEqual(parse_term('f x y'), SurfaceApp(SurfaceApp(f, x), y))

    def test_conditional(self):
        """Test a conditional on constants.
        """
        self.assertEqual(
            parse_term('if true then false else true'),
            SurfaceIf(SurfaceBool(True), SurfaceBool(False), SurfaceBool(True)))

    def test_body_extends_right(self):
        """Test that a lambda body binds weaker than application.
        """
        expected = SurfaceLam('x', BOOL, SurfaceApp(SurfaceVar('f'), SurfaceVar('x')))
        self.assertEqual(parse_term('\\x:Bool. f x'), expected)

    def test_primed_names(self):
        """Test identifiers with digits, underscores and primes.
        """
        self.assertEqual(parse_term("x_1'"), SurfaceVar("x_1'"))

    def test_keyword_prefix_is_a_name(self):
        """Test that a name starting with a keyword is still a name.
        """
        self.assertEqual(parse_term('iffy truth'), SurfaceApp(SurfaceVar('iffy'), SurfaceVar('truth')))


class ParseErrorTestCase(unittest.TestCase):
    """A class to test parse errors and their spans.
    """
    def test_unexpected_character(self):
        """Test the span of a stray character.
        """
        with self.assertRaises(ParseError) as raised:
            parse_term('x @ y')
        self.assertEqual(raised.exception.span, (2, 3))

    def test_end_of_input(self):
        """Test that a truncated term points at the end of the input.
        """
        for src in ('if true then', '\\x:Bool.', 'λx:Bool.'):
            with self.subTest(src=src):
                with self.assertRaises(ParseError) as raised:
                    parse_term(src)
                end = len(src.encode('utf-8'))
                self.assertEqual(raised.exception.span, (end, end))

    def test_undecodable_character(self):
        """Test a character left over from an undecodable byte.
        """
        with self.assertRaises(ParseError) as raised:
            parse_term('\\x:Bool. \udcff')
        self.assertEqual(raised.exception.span[0], 9)

    def test_spans_stay_inside_input(self):
        """Test that every error span lies inside the input.
        """
        for src in ('\\x:Bool.', 'if x then y', '(x', 'x)', '', 'λx:Bool. ', 'if', '\\x:Bool -> . x'):
            with self.subTest(src=src):
                with self.assertRaises(ParseError) as raised:
                    parse_term(src)
                start, end = raised.exception.span
                self.assertLessEqual(0, start)
                self.assertLessEqual(start, end)
                self.assertLessEqual(end, len(src.encode('utf-8')))

    def test_keyword_as_variable(self):
        """Test that keywords are not identifiers.
        """
        with self.assertRaises(ParseError):
            parse_term('\\if:Bool. if')


class ParseTypeTestCase(unittest.TestCase):
    """A class to test type and context parsing.
    """
    def test_types(self):
        """Test right associativity and parentheses.
        """
        self.assertEqual(parse_type('Bool'), BOOL)
        self.assertEqual(parse_type('Bool -> Bool -> Bool'), Arrow(BOOL, Arrow(BOOL, BOOL)))
        self.assertEqual(parse_type('(Bool -> Bool) -> Bool'), Arrow(Arrow(BOOL, BOOL), BOOL))

    def test_contexts(self):
        """Test contexts, the empty one included.
        """
        self.assertEqual(parse_ctx(''), EMPTY_CTX)
        self.assertEqual(parse_ctx('x:Bool'), Ctx.of(('x', BOOL)))
        ctx = parse_ctx('f:Bool->Bool, x:Bool')
        self.assertEqual(ctx.names(), ['f', 'x'])
        self.assertEqual(ctx.index_of('x'), 0)


class PrintTestCase(unittest.TestCase):
    """A class to test the printers.
    """
    def test_print_term(self):
        """Test minimal parentheses.
        """
        self.assertEqual(print_term(SurfaceLam('x', BOOL, SurfaceVar('x'))), '\\x:Bool. x')
        f, x, y = SurfaceVar('f'), SurfaceVar('x'), SurfaceVar('y')
        self.assertEqual(print_term(SurfaceApp(SurfaceApp(f, x), y)), 'f x y')
        self.assertEqual(print_term(SurfaceApp(f, SurfaceApp(x, y))), 'f (x y)')
        self.assertEqual(print_term(SurfaceApp(SurfaceLam('x', None, x), y)), '(\\x. x) y')

    def test_print_type(self):
        """Test that only left nested arrows get parentheses.
        """
        self.assertEqual(print_type(Arrow(Arrow(BOOL, BOOL), BOOL)), '(Bool -> Bool) -> Bool')

    def test_print_ctx(self):
        """Test that printed contexts parse back.
        """
        ctx = Ctx.of(('f', Arrow(BOOL, BOOL)), ('x', BOOL))
        self.assertEqual(parse_ctx(print_ctx(ctx)), ctx)

    def test_format_core(self):
        """Test the raw de Bruijn syntax.
        """
        self.assertEqual(format_core(Lam(None, Var(0))), '\\. #0')
        self.assertEqual(format_core(Lam(BOOL, Var(0))), '\\:Bool. #0')
        self.assertEqual(format_core(App(Var(1), Var(0))), '#1 #0')
        self.assertEqual(format_core(If(Var(0), TRUE, FALSE)), 'if #0 then true else false')

    @settings(max_examples=5000, deadline=None, derandomize=True)
    @given(surface_terms)
    def test_roundtrip(self, term):
        """Test that printing then parsing gives back the same tree.
        """
        self.assertEqual(parse_term(print_term(term)), term)

    @settings(max_examples=100, deadline=None, derandomize=True)
    @given(types)
    def test_type_roundtrip(self, ty):
        """Test that printed types parse back.
        """
        self.assertEqual(parse_type(print_type(ty)), ty)
