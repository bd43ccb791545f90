# -*- coding: utf-8 -*-
# Copyright: Raphaël de Gail
# GNU General Public License v3.0+ (see COPYING or https://www.gnu.org/licenses/gpl-3.0.txt)
"""Goal-directed generation of well-typed terms.

Every node draws its random choices from a generator seeded by the pair
(seed, path), path being the segments leading to the node. Subterms are thus
independent of the order in which they are built, and a corpus item depends
only on the corpus seed and its index.
"""

from __future__ import annotations

import hashlib
import logging
import random
from dataclasses import dataclass

from stlc_nbe.module_utils.errors import ConfigError
from stlc_nbe.syntax import BOOL, FALSE, TRUE, App, Arrow, Ctx, If, Lam, Var, arrows, type_order

log = logging.getLogger(__name__)

BOOL_TO_BOOL = arrows(BOOL, BOOL)
PREDICATE = arrows(BOOL_TO_BOOL, BOOL)

ARGUMENT_TYPES = ((BOOL, 4), (BOOL_TO_BOOL, 2), (PREDICATE, 1))
GOAL_TYPES = (BOOL, BOOL_TO_BOOL, arrows(BOOL, BOOL, BOOL), PREDICATE)
CONTEXT_TYPES = (BOOL, BOOL, BOOL_TO_BOOL, PREDICATE)

_WEIGHTS = dict(lam=3, app=3, ite=2, var=2, lit=1)


def max_order(wide):
    """Highest order of an argument or context type."""
    return 2 if wide else 1


def _rng(seed, path):
    digest = hashlib.blake2b(repr((seed, path)).encode(), digest_size=8).digest()
    return random.Random(int.from_bytes(digest, 'big'))


def _matching(ctx, ty):
    return [Var(index) for index in range(len(ctx)) if ctx.type_at(index) == ty]


def min_size(ctx, ty):
    """Node count of the smallest term of type ty in ctx."""
    if not isinstance(ty, Arrow) or _matching(ctx, ty):
        return 1
    return 1 + min_size(ctx.extend('_', ty.dom), ty.cod)


def _split(rng, extra, parts):
    """Cut extra into parts non-negative amounts."""
    cuts = sorted(rng.randint(0, extra) for _ in range(parts - 1))
    bounds = [0] + cuts + [extra]
    return [high - low for low, high in zip(bounds, bounds[1:])]


class _Generator(object):
    def __init__(self, seed, wide):
        self.seed = seed
        self.pool = tuple((ty, weight) for ty, weight in ARGUMENT_TYPES if type_order(ty) <= max_order(wide))

    def term(self, ctx, ty, budget, path):
        rng = _rng(self.seed, path)
        if budget <= min_size(ctx, ty):
            return self.leaf(ctx, ty, rng, path)

        arg_ty = rng.choices(
            [each for each, _ in self.pool] + [ty],
            weights=[weight for _, weight in self.pool] + [1])[0]
        fun_ty = Arrow(arg_ty, ty)
        cond_floor = 1 + 2 * min_size(ctx, ty)

        options = {}
        if isinstance(ty, Arrow) and 1 + min_size(ctx.extend('_', ty.dom), ty.cod) <= budget:
            options['lam'] = _WEIGHTS['lam']
        if 1 + min_size(ctx, fun_ty) + min_size(ctx, arg_ty) <= budget:
            options['app'] = _WEIGHTS['app']
        if 1 + cond_floor <= budget:
            options['ite'] = _WEIGHTS['ite']
        if _matching(ctx, ty):
            options['var'] = _WEIGHTS['var']
        if not isinstance(ty, Arrow):
            options['lit'] = _WEIGHTS['lit']
        if not options:
            return self.leaf(ctx, ty, rng, path)

        kind = rng.choices(list(options), weights=list(options.values()))[0]
        if kind == 'lam':
            return Lam(ty.dom, self.term(ctx.extend('_', ty.dom), ty.cod, budget - 1, path + ('body',)))
        if kind == 'app':
            fun_floor, arg_floor = min_size(ctx, fun_ty), min_size(ctx, arg_ty)
            fun_extra, arg_extra = _split(rng, budget - 1 - fun_floor - arg_floor, 2)
            return App(
                self.term(ctx, fun_ty, fun_floor + fun_extra, path + ('fun',)),
                self.term(ctx, arg_ty, arg_floor + arg_extra, path + ('arg',)))
        if kind == 'ite':
            floor = min_size(ctx, ty)
            cond_extra, then_extra, else_extra = _split(rng, budget - 1 - cond_floor, 3)
            return If(
                self.term(ctx, BOOL, 1 + cond_extra, path + ('cond',)),
                self.term(ctx, ty, floor + then_extra, path + ('then',)),
                self.term(ctx, ty, floor + else_extra, path + ('else',)))
        if kind == 'var':
            return rng.choice(_matching(ctx, ty))
        return rng.choice([TRUE, FALSE])

    def leaf(self, ctx, ty, rng, path):
        """Smallest fitting term: a variable, a constant, or a lambda around one."""
        candidates = _matching(ctx, ty)
        if not isinstance(ty, Arrow):
            candidates += [TRUE, FALSE]
        if candidates:
            return rng.choice(candidates)
        body_path = path + ('body',)
        return Lam(ty.dom, self.leaf(ctx.extend('_', ty.dom), ty.cod, _rng(self.seed, body_path), body_path))


def gen_term(seed, ctx, ty, budget, wide=False):
    """Generate a fully annotated term of type ty in ctx.

    Args:
        seed: int, the 64-bit seed.
        ctx: Ctx, the typing context.
        ty: Ty, the goal type.
        budget: int, the largest node count wanted.
        wide: bool, whether (Bool -> Bool) -> Bool may be chosen as an
            argument type.

    Returns:
        CoreTerm, a term checking against ty whose size is at most
        max(budget, min_size(ctx, ty)).

    Raises:
        ConfigError: budget is below 1.
    """
    if budget < 1:
        raise ConfigError(f'generation budget must be at least 1, got {budget}')
    return _Generator(seed, wide).term(ctx, ty, budget, ())


@dataclass(frozen=True, slots=True)
class CorpusItem:
    """One generated test case.

    Attributes:
        index: int, the position in the corpus.
        seed: int, the seed gen_term was called with.
        ctx: Ctx, the typing context.
        ty: Ty, the goal type.
        budget: int, the budget gen_term was called with.
        term: CoreTerm, the generated term.
    """
    index: int
    seed: int
    ctx: Ctx
    ty: object
    budget: int
    term: object


def corpus_item(seed, index, size, max_ctx=3, wide=False):
    """Build the corpus item at an index; items are independent of each other."""
    rng = _rng(seed, ('corpus', index))
    ctx_types = [ty for ty in CONTEXT_TYPES if type_order(ty) <= max_order(wide)]
    ctx = Ctx.of(*((f'v{position}', rng.choice(ctx_types)) for position in range(rng.randint(0, max_ctx))))
    ty = rng.choice(GOAL_TYPES)
    budget = rng.randint(1, size)
    item_seed = rng.getrandbits(64)
    return CorpusItem(index, item_seed, ctx, ty, budget, gen_term(item_seed, ctx, ty, budget, wide))


def corpus(seed, count, size, max_ctx=3, wide=False):
    """Yield count corpus items for a corpus seed.

    Args:
        seed: int, the corpus seed.
        count: int, the number of items.
        size: int, the largest budget handed to gen_term.
        max_ctx: int, the largest context length.
        wide: bool, passed on to gen_term and to the context types.

    Yields:
        CorpusItem, in index order.
    """
    log.debug('generating %d terms from seed %d with budget up to %d', count, seed, size)
    for index in range(count):
        yield corpus_item(seed, index, size, max_ctx, wide)
