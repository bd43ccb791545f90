# -*- coding: utf-8 -*-
# Copyright: Raphaël de Gail
# GNU General Public License v3.0+ (see COPYING or https://www.gnu.org/licenses/gpl-3.0.txt)
import collections
import unittest

from stlc_nbe.gen import GOAL_TYPES, PREDICATE, CorpusItem, corpus, corpus_item, gen_term, max_order, min_size
from stlc_nbe.module_utils.errors import ConfigError
from stlc_nbe.syntax import (
    BOOL,
    EMPTY_CTX,
    FALSE,
    TRUE,
    App,
    Arrow,
    BoolLit,
    Ctx,
    If,
    Lam,
    Var,
    children,
    is_annotated,
    term_size,
    type_order,
)
from stlc_nbe.typecheck import check

BOOL_TO_BOOL = Arrow(BOOL, BOOL)


def constructors(t):
    """Names of the constructors occurring in a term."""
    found = {'true' if t.value else 'false'} if isinstance(t, BoolLit) else {type(t).__name__}
    for _, child in children(t):
        found |= constructors(child)
    return found


def annotations(t):
    """Binder annotations of a term."""
    found = {t.ann} if isinstance(t, Lam) else set()
    for _, child in children(t):
        found |= annotations(child)
    return found


class GenTermTestCase(unittest.TestCase):
    """A class to test the term generator.
    """
    def test_leaves(self):
        """Test the only fitting terms of size one.
        """
        for seed in range(20):
            self.assertIn(gen_term(seed, EMPTY_CTX, BOOL, 1), (TRUE, FALSE))
            self.assertIn(gen_term(seed, Ctx.of(('x', BOOL)), BOOL, 1), (Var(0), TRUE, FALSE))

    def test_eta_stub(self):
        """Test that an uninhabited leaf type gets a lambda around a leaf.
        """
        term = gen_term(3, EMPTY_CTX, BOOL_TO_BOOL, 1)
        self.assertIsInstance(term, Lam)
        self.assertEqual(term.ann, BOOL)
        self.assertEqual(term_size(term), min_size(EMPTY_CTX, BOOL_TO_BOOL))

    def test_min_size(self):
        """Test the size of the smallest inhabitants.
        """
        self.assertEqual(min_size(EMPTY_CTX, BOOL), 1)
        self.assertEqual(min_size(EMPTY_CTX, PREDICATE), 2)
        self.assertEqual(min_size(Ctx.of(('f', BOOL_TO_BOOL)), BOOL_TO_BOOL), 1)

    def test_deterministic(self):
        """Test that a seed reproduces the same term.
        """
        ctx = Ctx.of(('f', BOOL_TO_BOOL), ('x', BOOL))
        self.assertEqual(gen_term(42, ctx, BOOL, 30), gen_term(42, ctx, BOOL, 30))

    def test_well_typed_and_within_budget(self):
        """Test every goal type at several budgets.
        """
        ctx = Ctx.of(('f', BOOL_TO_BOOL), ('x', BOOL))
        for seed in range(40):
            for ty in GOAL_TYPES:
                for budget in (1, 2, 5, 17, 40):
                    term = gen_term(seed, ctx, ty, budget, wide=True)
                    check(ctx, term, ty)
                    self.assertLessEqual(term_size(term), max(budget, min_size(ctx, ty)))

    def test_budget(self):
        """Test the budget precondition.
        """
        with self.assertRaises(ConfigError):
            gen_term(0, EMPTY_CTX, BOOL, 0)


class CorpusTestCase(unittest.TestCase):
    """A class to test corpus generation.
    """
    def test_reproducible(self):
        """Test that the same seed gives the same corpus, item by item.
        """
        first = list(corpus(20240601, 50, 40))
        self.assertEqual(first, list(corpus(20240601, 50, 40)))
        self.assertEqual(first[17], corpus_item(20240601, 17, 40))
        self.assertTrue(all(isinstance(item, CorpusItem) for item in first))
        self.assertNotEqual(first, list(corpus(1, 50, 40)))

    def test_shape(self):
        """Test context lengths and goal types.
        """
        for item in corpus(5, 300, 40):
            self.assertLessEqual(len(item.ctx), 3)
            self.assertIn(item.ty, GOAL_TYPES)
            self.assertLessEqual(item.budget, 40)
            check(item.ctx, item.term, item.ty)

    def test_coverage(self):
        """Test that each constructor appears in at least 1% of the terms.
        """
        counts = collections.Counter()
        items = list(corpus(20240601, 5000, 40))
        for item in items:
            counts.update(constructors(item.term))
        for name in ('Var', 'Lam', 'App', 'true', 'false', 'If'):
            self.assertGreaterEqual(counts[name] / len(items), 0.01, name)

    def test_narrow_orders(self):
        """Test that a narrow corpus keeps context types at order 1.
        """
        for item in corpus(11, 300, 40):
            self.assertTrue(all(type_order(ty) <= max_order(False) for ty in item.ctx.types()))

    def test_wide_orders(self):
        """Test that the wide flag lets order 2 types into contexts and binders.
        """
        items = list(corpus(11, 300, 40, wide=True))
        for item in items:
            check(item.ctx, item.term, item.ty)
            self.assertTrue(is_annotated(item.term))
        self.assertTrue(any(PREDICATE in item.ctx.types() for item in items))
        self.assertTrue(any(PREDICATE in annotations(item.term) for item in items))
