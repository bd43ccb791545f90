# -*- coding: utf-8 -*-
# Copyright: Raphaël de Gail
# GNU General Public License v3.0+ (see COPYING or https://www.gnu.org/licenses/gpl-3.0.txt)
import unittest

from stlc_nbe.evaluation import EMPTY_ENV, VTRUE, Closure, Env, Lvl, Neutral
from stlc_nbe.module_utils.errors import NeutralInWhnf, ScopeError, TypeCheckError
from stlc_nbe.nbe import normalize
from stlc_nbe.syntax import BOOL, EMPTY_CTX, FALSE, TRUE, App, Arrow, If, Lam, Var
from stlc_nbe.whnf import close, quote_whnf, whnf_of

BOOL_TO_BOOL = Arrow(BOOL, BOOL)


class WhnfTestCase(unittest.TestCase):
    """A class to test weak-head normalization of closed terms.
    """
    def test_lambda_unchanged(self):
        """Test that a redex under a binder is left alone.
        """
        term = Lam(BOOL, App(Lam(BOOL, Var(0)), Var(0)))
        self.assertEqual(whnf_of(term), term)
        self.assertNotEqual(whnf_of(term), normalize(EMPTY_CTX, term, annotate=True))

    def test_delayed_substitution(self):
        """Test that the saved argument is substituted into the body.
        """
        fun = Lam(BOOL_TO_BOOL, Lam(BOOL, App(Var(1), Var(0))))
        term = App(fun, Lam(BOOL, Var(0)))
        self.assertEqual(whnf_of(term), Lam(BOOL, App(Lam(BOOL, Var(0)), Var(0))))

    def test_conditional(self):
        """Test a conditional on a constant.
        """
        self.assertEqual(whnf_of(If(TRUE, FALSE, TRUE)), FALSE)

    def test_open_term(self):
        """Test that open terms are rejected.
        """
        with self.assertRaises(ScopeError):
            whnf_of(Var(0))

    def test_verify(self):
        """Test the optional type check.
        """
        with self.assertRaises(TypeCheckError):
            whnf_of(App(TRUE, FALSE), verify=True)


class QuoteTestCase(unittest.TestCase):
    """A class to test quoting and closing.
    """
    def test_quote(self):
        """Test quoting constants and closures.
        """
        self.assertEqual(quote_whnf(VTRUE), TRUE)
        self.assertEqual(quote_whnf(Closure(Var(0), EMPTY_ENV)), Lam(None, Var(0)))
        saved = Env.of(Closure(Var(0), EMPTY_ENV))
        self.assertEqual(quote_whnf(Closure(Var(1), saved)), Lam(None, Lam(None, Var(0))))

    def test_neutral(self):
        """Test that neutrals have no weak-head quote.
        """
        with self.assertRaises(NeutralInWhnf):
            quote_whnf(Neutral(Lvl(0)))

    def test_close(self):
        """Test the delayed substitution on its own.
        """
        self.assertEqual(close(EMPTY_ENV, 1, Var(0)), Var(0))
        self.assertEqual(close(Env.of(VTRUE), 0, Var(0)), TRUE)
        saved = Env.of(Closure(Var(0), EMPTY_ENV))
        self.assertEqual(close(saved, 1, App(Var(1), Var(0))), App(Lam(None, Var(0)), Var(0)))

    def test_close_out_of_scope(self):
        """Test an index reaching past the environment.
        """
        with self.assertRaises(ScopeError):
            close(EMPTY_ENV, 1, Var(1))
