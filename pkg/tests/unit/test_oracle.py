# -*- coding: utf-8 -*-
# Copyright: Raphaël de Gail
# GNU General Public License v3.0+ (see COPYING or https://www.gnu.org/licenses/gpl-3.0.txt)
import unittest

from hypothesis import given, settings
from hypothesis import strategies as st

from stlc_nbe.module_utils.errors import EXIT_LIMIT, NegativeIndex, StepLimit
from stlc_nbe.oracle import beta, nf, shift, step, step_cbv, subst, whnf_oracle
from stlc_nbe.syntax import BOOL, EMPTY_CTX, FALSE, TRUE, App, BoolLit, If, Lam, Var

core_terms = st.recursive(
    st.one_of(st.builds(Var, st.integers(0, 4)), st.builds(BoolLit, st.booleans())),
    lambda inner: st.one_of(
        st.builds(Lam, st.sampled_from([None, BOOL]), inner),
        st.builds(App, inner, inner),
        st.builds(If, inner, inner, inner)),
    max_leaves=10)

SELF_APPLY = Lam(None, App(Var(0), Var(0)))
OMEGA = App(SELF_APPLY, SELF_APPLY)


class ShiftTestCase(unittest.TestCase):
    """A class to test shifting.
    """
    def test_free_index(self):
        """Test shifting a free index.
        """
        self.assertEqual(shift(1, 0, Var(0)), Var(1))

    def test_bound_index(self):
        """Test that bound indices are untouched.
        """
        self.assertEqual(shift(1, 0, Lam(None, Var(0))), Lam(None, Var(0)))

    def test_cutoff_rises_under_binder(self):
        """Test that both indices stay below the raised cutoff.
        """
        term = Lam(None, App(Var(0), Var(1)))
        self.assertEqual(shift(2, 1, term), term)
        self.assertEqual(shift(2, 0, term), Lam(None, App(Var(0), Var(3))))

    def test_negative(self):
        """Test that indices cannot drop below zero.
        """
        with self.assertRaises(NegativeIndex):
            shift(-1, 0, Var(0))

    @settings(max_examples=200, deadline=None, derandomize=True)
    @given(core_terms, st.integers(0, 3))
    def test_shift_back(self, term, cutoff):
        """Test that shifting down undoes shifting up.
        """
        self.assertEqual(shift(-1, cutoff, shift(1, cutoff, term)), term)


class SubstTestCase(unittest.TestCase):
    """A class to test substitution.
    """
    def test_examples(self):
        """Test substitution at the root and under a binder.
        """
        self.assertEqual(subst(0, TRUE, Var(0)), TRUE)
        self.assertEqual(subst(0, Var(0), Lam(None, Var(1))), Lam(None, Var(1)))
        self.assertEqual(subst(0, TRUE, Lam(None, App(Var(0), Var(1)))), Lam(None, App(Var(0), TRUE)))

    def test_capture_avoided(self):
        """Test that a free variable of the substituted term is shifted under binders.
        """
        self.assertEqual(subst(0, Var(3), Lam(None, Var(1))), Lam(None, Var(4)))

    @settings(max_examples=200, deadline=None, derandomize=True)
    @given(core_terms, core_terms)
    def test_vacuous_beta(self, term, arg):
        """Test that contracting a redex whose body ignores its binder gives the body back.
        """
        self.assertEqual(beta(shift(1, 0, term), arg), term)


class StepTestCase(unittest.TestCase):
    """A class to test single reduction steps.
    """
    def test_beta(self):
        """Test a root beta redex.
        """
        self.assertEqual(step(App(Lam(None, Var(0)), TRUE)), TRUE)

    def test_normal(self):
        """Test that a normal term has no step.
        """
        self.assertIsNone(step(Lam(None, Var(0))))

    def test_iota(self):
        """Test a conditional on false.
        """
        self.assertEqual(step(If(FALSE, TRUE, Var(0))), Var(0))

    def test_leftmost_outermost(self):
        """Test that the function is reduced before the argument.
        """
        redex = App(Lam(None, Var(0)), TRUE)
        self.assertEqual(step(App(App(Var(0), redex), redex)), App(App(Var(0), TRUE), redex))


class NormalFormTestCase(unittest.TestCase):
    """A class to test the normal form and weak-head normal form drivers.
    """
    def test_redex_under_binder(self):
        """Test reducing a redex under a lambda.
        """
        self.assertEqual(nf(EMPTY_CTX, Lam(BOOL, App(Lam(BOOL, Var(0)), Var(0)))), Lam(None, Var(0)))
        term = Lam(None, Lam(None, App(Lam(None, Var(0)), Var(1))))
        self.assertEqual(nf(EMPTY_CTX, term), Lam(None, Lam(None, Var(1))))

    def test_annotations_kept_on_request(self):
        """Test the annotate flag.
        """
        term = Lam(BOOL, App(Lam(BOOL, Var(0)), Var(0)))
        self.assertEqual(nf(EMPTY_CTX, term, annotate=True), Lam(BOOL, Var(0)))

    def test_step_limit(self):
        """Test that the self application never reaches a normal form.
        """
        with self.assertRaises(StepLimit) as raised:
            nf(EMPTY_CTX, OMEGA, 1000)
        self.assertEqual(raised.exception.exit_code, EXIT_LIMIT)

    def test_whnf_root_lambda(self):
        """Test that a lambda root is already weak-head normal.
        """
        term = Lam(None, App(Lam(None, Var(0)), Var(0)))
        self.assertEqual(whnf_oracle(term), term)

    def test_call_by_value(self):
        """Test that the argument is reduced before the redex is contracted.
        """
        arg = App(Lam(BOOL, Lam(BOOL, Var(1))), TRUE)
        term = App(Lam(None, Var(0)), arg)
        self.assertEqual(step_cbv(term), App(Lam(None, Var(0)), Lam(BOOL, TRUE)))
        self.assertEqual(whnf_oracle(term), Lam(BOOL, TRUE))

    def test_whnf_step_limit(self):
        """Test that the self application has no weak-head normal form.
        """
        with self.assertRaises(StepLimit):
            whnf_oracle(OMEGA, 500)
