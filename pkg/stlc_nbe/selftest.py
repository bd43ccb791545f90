# -*- coding: utf-8 -*-
# Copyright: Raphaël de Gail
# GNU General Public License v3.0+ (see COPYING or https://www.gnu.org/licenses/gpl-3.0.txt)
"""Property suites run over a generated corpus.

Each suite compares one pipeline against another, or against a property it
must satisfy, on every corpus item it applies to. Failures keep the seed and
index of the item so it can be generated again.
"""

from __future__ import annotations

import collections
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from stlc_nbe import denote, oracle
from stlc_nbe.evaluation import EMPTY_ENV, Fuel, Lvl, NApp, Neutral, VTRUE, evaluate, iter_neutrals
from stlc_nbe.gen import corpus, corpus_item, min_size
from stlc_nbe.module_utils.errors import StepLimit, StlcError, TypeCheckError
from stlc_nbe.module_utils.settings import DEFAULT_FUEL
from stlc_nbe.nbe import Classification, classify, initial_env, normalize, readback, readback_ne
from stlc_nbe.parser import format_core, parse_ctx, parse_term, print_ctx, print_term
from stlc_nbe.relations import semantically_typed
from stlc_nbe.syntax import (
    BOOL,
    EMPTY_CTX,
    App,
    BoolLit,
    If,
    Lam,
    Var,
    arrows,
    erase,
    first_difference,
    is_annotated,
    is_closed_at,
    resolve,
    term_size,
    unresolve,
)
from stlc_nbe.typecheck import check
from stlc_nbe.whnf import whnf_of

log = logging.getLogger(__name__)

DEFAULT_SAMPLES = 600
DEFAULT_SIZE = 40
DEFAULT_SEED = 20240601
DEFAULT_DENOTE_LIMIT = 256
CANDIDATE_SAMPLES = 1000
OMEGA_STEPS = 1000

SUITES = (
    'witness',
    'oracle',
    'normality',
    'preservation',
    'denotation',
    'evaluation',
    'totality',
    'whnf',
    'candidates',
    'roundtrip',
    'generator',
    'relation',
)

WIDE_SUITES = ('generator', 'oracle', 'normality', 'preservation', 'whnf')

CONSTRUCTORS = (Var, Lam, App, 'true', 'false', If)


@dataclass(frozen=True)
class Failure:
    """The first failing check of a suite.

    Attributes:
        suite: str, the suite name.
        index: int, the corpus index, None for fixed checks.
        seed: int, the seed of the corpus item.
        term: str, the offending term in de Bruijn syntax.
        detail: str, what went wrong.
        path: tuple, the first structural difference, when there is one.
        wide: bool, whether the item comes from the wide corpus.
    """
    suite: str
    index: int | None
    seed: int | None
    term: str
    detail: str
    path: tuple | None = None
    wide: bool = False

    def __str__(self):
        kind = 'wide ' if self.wide else ''
        where = '' if self.index is None else f' ({kind}index {self.index}, seed {self.seed})'
        at = '' if self.path is None else f' at {".".join(self.path) or "<root>"}'
        return f'{self.suite}{where}: {self.detail}{at}: {self.term}'


@dataclass
class SuiteResult:
    name: str
    checked: int = 0
    failed: int = 0
    first_failure: Failure | None = None

    @property
    def ok(self):
        return self.failed == 0


@dataclass
class SelftestReport:
    """Outcome of every suite.

    Attributes:
        seed: int, the corpus seed.
        samples: int, the corpus size.
        size: int, the generation budget.
        wide_samples: int, the size of the wide corpus.
        suites: dict, SuiteResult by suite name, in SUITES order.
    """
    seed: int
    samples: int
    size: int
    wide_samples: int = 0
    suites: dict = field(default_factory=lambda: {name: SuiteResult(name) for name in SUITES})

    @property
    def ok(self):
        return all(result.ok for result in self.suites.values())

    def record(self, suite, failure=None):
        result = self.suites[suite]
        result.checked += 1
        if failure is not None:
            result.failed += 1
            if result.first_failure is None:
                result.first_failure = failure

    def summary(self):
        """Return one line per suite and, for failing suites, the first failure."""
        lines = []
        for result in self.suites.values():
            status = 'PASS' if result.ok else 'FAIL'
            lines.append(f'{status} {result.name}: {result.checked} checked, {result.failed} failed')
            if result.first_failure is not None:
                lines.append(f'     {result.first_failure}')
        lines.append('selftest ' + ('passed' if self.ok else 'failed') + f' (seed {self.seed})')
        return lines

    def as_dict(self):
        return dict(
            seed=self.seed,
            samples=self.samples,
            size=self.size,
            wide_samples=self.wide_samples,
            ok=self.ok,
            suites={
                name: dict(
                    checked=result.checked,
                    failed=result.failed,
                    first_failure=None if result.first_failure is None else str(result.first_failure))
                for name, result in self.suites.items()})

################################################################################
# Per-item checks
################################################################################


class _ItemChecks(object):
    """Runs every corpus suite on one item and collects (suite, failure) pairs."""

    def __init__(self, item, fuel, denote_limit, corpus_seed, corpus_size, wide=False):
        self.item = item
        self.wide = wide
        self.corpus_seed = corpus_seed
        self.corpus_size = corpus_size
        self.fuel = fuel
        self.denote_limit = denote_limit
        self.outcomes = []
        self.neutrals = []

    def fail(self, suite, detail, path=None):
        item = self.item
        return Failure(suite, item.index, item.seed, format_core(item.term), detail, path, self.wide)

    def compare(self, suite, got, want, what):
        path = first_difference(got, want)
        if path is None:
            return None
        return self.fail(suite, f'{what}: got {format_core(got)}, want {format_core(want)}', path)

    def run(self):
        for suite, method in (
                ('generator', self.generator),
                ('totality', self.totality),
                ('oracle', self.oracle),
                ('normality', self.normality),
                ('preservation', self.preservation),
                ('candidates', self.candidates),
                ('roundtrip', self.roundtrip),
                ('whnf', self.whnf),
                ('evaluation', self.evaluation),
                ('denotation', self.denotation),
                ('relation', self.relation)):
            if self.wide and suite not in WIDE_SUITES:
                continue
            try:
                applies, failure = method()
            except StlcError as inst:
                applies, failure = True, self.fail(suite, f'{type(inst).__name__}: {inst.message}')
            if applies:
                self.outcomes.append((suite, failure))
        return self

    def normal_form(self, annotate=False):
        item = self.item
        return normalize(item.ctx, item.term, Fuel(self.fuel), annotate=annotate)

    @property
    def closed(self):
        return len(self.item.ctx) == 0

    def enumerable(self, *terms):
        item = self.item
        if math.prod(denote.cardinality(ty, self.denote_limit) for ty in item.ctx.types()) > self.denote_limit:
            return False
        return all(denote.enumerable(item.ctx, t, item.ty, self.denote_limit) for t in terms)

    def generator(self):
        item = self.item
        check(item.ctx, item.term, item.ty)
        if not is_annotated(item.term):
            return True, self.fail('generator', 'a lambda lacks its annotation')
        bound = max(item.budget, min_size(item.ctx, item.ty))
        if term_size(item.term) > bound:
            return True, self.fail('generator', f'size {term_size(item.term)} exceeds {bound}')
        again = corpus_item(self.corpus_seed, item.index, self.corpus_size, wide=self.wide)
        if again != item:
            return True, self.fail('generator', 'regenerating the item gave a different term')
        return True, None

    def totality(self):
        item = self.item
        first = evaluate(initial_env(len(item.ctx)), item.term, Fuel(self.fuel))
        second = evaluate(initial_env(len(item.ctx)), item.term, Fuel(self.fuel))
        if first != second:
            return True, self.fail('totality', 'two evaluations disagree')
        readback(len(item.ctx), first, Fuel(self.fuel))
        for ne in iter_neutrals(first):
            self.neutrals.append((len(item.ctx), ne))
        return True, None

    def oracle(self):
        item = self.item
        failure = self.compare('oracle', self.normal_form(), oracle.nf(item.ctx, item.term), 'normal forms differ')
        if failure is None:
            failure = self.compare(
                'oracle', self.normal_form(annotate=True), oracle.nf(item.ctx, item.term, annotate=True),
                'annotated normal forms differ')
        return True, failure

    def normality(self):
        item = self.item
        result = self.normal_form()
        if not classify(result).is_normal:
            return True, self.fail('normality', f'{format_core(result)} is not normal')
        if not is_closed_at(result, len(item.ctx)):
            return True, self.fail('normality', f'{format_core(result)} is not closed at scope {len(item.ctx)}')
        again = normalize(item.ctx, result, Fuel(self.fuel))
        return True, self.compare('normality', again, result, 'normalizing twice changed the result')

    def preservation(self):
        item = self.item
        annotated = self.normal_form(annotate=True)
        if not is_annotated(annotated):
            return True, self.fail('preservation', f'{format_core(annotated)} lost an annotation')
        try:
            check(item.ctx, annotated, item.ty)
        except TypeCheckError as inst:
            return True, self.fail('preservation', f'{format_core(annotated)} no longer checks: {inst.message}')
        return True, self.compare('preservation', erase(annotated), self.normal_form(), 'erasure differs')

    def candidates(self):
        n = len(self.item.ctx)
        for k in range(n):
            if readback_ne(n, Lvl(k)) != Var(n - 1 - k):
                return True, self.fail('candidates', f'level {k} does not read back at scope {n}')
        return n > 0, None

    def roundtrip(self):
        item = self.item
        surface = unresolve(item.term, item.ctx)
        text = print_term(surface)
        parsed = parse_term(text)
        if parsed != surface:
            return True, self.fail('roundtrip', f'{text!r} parses to a different term')
        if parse_ctx(print_ctx(item.ctx)) != item.ctx:
            return True, self.fail('roundtrip', f'context {print_ctx(item.ctx)!r} does not reparse')
        return True, self.compare('roundtrip', resolve(parsed, item.ctx), item.term, 'resolution differs')

    def whnf(self):
        if not self.closed:
            return False, None
        item = self.item
        result = whnf_of(item.term, Fuel(self.fuel))
        if not isinstance(result, (Lam, BoolLit)):
            return True, self.fail('whnf', f'{format_core(result)} is not a lambda or a constant')
        return True, self.compare('whnf', result, oracle.whnf_oracle(item.term), 'weak-head forms differ')

    def evaluation(self):
        item = self.item
        if not self.closed or not self.enumerable(item.term):
            return False, None
        got = denote.sem_of_domain(evaluate(EMPTY_ENV, item.term, Fuel(self.fuel)), item.ty, self.denote_limit)
        want = denote.sem_eval((), item.term, self.denote_limit)
        if got != want:
            return True, self.fail('evaluation', 'the meaning of the value differs from the meaning of the term')
        return True, None

    def denotation(self):
        item = self.item
        annotated = self.normal_form(annotate=True)
        if not self.enumerable(item.term, annotated):
            return False, None
        limit = self.denote_limit
        if not denote.denot_equal(item.ctx, item.ty, item.term, annotated, limit):
            return True, self.fail('denotation', f'normal form {format_core(annotated)} means something else')
        if self.closed:
            result = whnf_of(item.term, Fuel(self.fuel))
            if not denote.denot_equal(EMPTY_CTX, item.ty, item.term, result, limit):
                return True, self.fail('denotation', f'weak-head form {format_core(result)} means something else')
        return True, None

    def relation(self):
        item = self.item
        if not self.enumerable(item.term):
            return False, None
        if not semantically_typed(item.ctx, item.term, item.ty, self.fuel, self.denote_limit):
            return True, self.fail('relation', 'a representative environment gives an unrelated value')
        return True, None

################################################################################
# Fixed checks
################################################################################

IDENTITY = Lam(BOOL, Var(0))
IDENTITY_REDEX = Lam(BOOL, App(Lam(BOOL, Var(0)), Var(0)))
FIRST = Lam(BOOL, Lam(BOOL, Var(1)))
SECOND = Lam(BOOL, Lam(BOOL, Var(0)))
OMEGA = App(Lam(None, App(Var(0), Var(0))), Lam(None, App(Var(0), Var(0))))


def _fixed_failure(suite, t, detail):
    return Failure(suite, None, None, format_core(t), detail)


def _witness_checks(report, fuel):
    bool_to_bool = arrows(BOOL, BOOL)
    for t in (IDENTITY, IDENTITY_REDEX):
        result = normalize(EMPTY_CTX, t, Fuel(fuel))
        report.record('witness', None if result == Lam(None, Var(0)) else _fixed_failure(
            'witness', t, f'normalizes to {format_core(result)}'))
        result = whnf_of(t, Fuel(fuel))
        report.record('witness', None if result == t else _fixed_failure(
            'witness', t, f'weak-head form {format_core(result)} is not the term itself'))
    report.record('witness', None if denote.denot_equal(EMPTY_CTX, bool_to_bool, IDENTITY, IDENTITY_REDEX) else (
        _fixed_failure('witness', IDENTITY_REDEX, 'not denotationally equal to the identity')))

    first = normalize(EMPTY_CTX, FIRST, Fuel(fuel))
    second = normalize(EMPTY_CTX, SECOND, Fuel(fuel))
    scoped = first == Lam(None, Lam(None, Var(1))) and second == Lam(None, Lam(None, Var(0)))
    report.record('witness', None if scoped else _fixed_failure(
        'witness', FIRST, f'binders collide: {format_core(first)} and {format_core(second)}'))


def _omega_checks(report):
    try:
        check(EMPTY_CTX, OMEGA, BOOL)
        failure = _fixed_failure('totality', OMEGA, 'the self application typechecks')
    except TypeCheckError:
        failure = None
    report.record('totality', failure)
    try:
        oracle.nf(EMPTY_CTX, OMEGA, OMEGA_STEPS)
        failure = _fixed_failure('totality', OMEGA, 'the self application has a normal form')
    except StepLimit:
        failure = None
    report.record('totality', failure)


def _candidate_checks(report, neutrals, fuel):
    """Closure properties of neutral read-back on harvested neutral values."""
    for n, ne in neutrals[:CANDIDATE_SAMPLES]:
        term = readback_ne(n, ne, Fuel(fuel))
        failure = None
        if classify(term) is not Classification.NEUTRAL:
            failure = f'{format_core(term)} is not neutral'
        elif readback(n, Neutral(ne), Fuel(fuel)) != term:
            failure = 'reading back the neutral as a value differs'
        else:
            for arg in (VTRUE, Neutral(Lvl(0))):
                applied = readback_ne(n, NApp(ne, arg), Fuel(fuel))
                if applied != App(term, readback(n, arg, Fuel(fuel))):
                    failure = 'reading back an application of the neutral differs'
        report.record('candidates', None if failure is None else _fixed_failure('candidates', term, failure))


def _coverage_checks(report, items):
    """Every constructor occurs in at least 1% of the corpus terms."""
    if len(items) < 100:
        return
    counts = collections.Counter()
    for item in items:
        counts.update(set(_constructors(item.term)))
    for constructor in CONSTRUCTORS:
        name = constructor if isinstance(constructor, str) else constructor.__name__
        share = counts[name] / len(items)
        report.record('generator', None if share >= 0.01 else Failure(
            'generator', None, None, '-', f'{name} occurs in only {share:.2%} of the terms'))


def _constructors(t):
    match t:
        case BoolLit(value):
            yield 'true' if value else 'false'
            return
        case Lam(_, body):
            children = (body,)
        case App(fun, arg):
            children = (fun, arg)
        case If(cond, then, else_):
            children = (cond, then, else_)
        case _:
            children = ()
    yield type(t).__name__
    for child in children:
        yield from _constructors(child)

################################################################################
# Entry point
################################################################################


def run_selftest(samples=DEFAULT_SAMPLES, size=DEFAULT_SIZE, seed=DEFAULT_SEED, fuel=DEFAULT_FUEL, jobs=1,
                 denote_limit=DEFAULT_DENOTE_LIMIT, wide_samples=None):
    """Run every suite.

    Args:
        samples: int, the number of corpus items.
        size: int, the largest generation budget.
        seed: int, the corpus seed.
        fuel: int, the evaluation budget granted to every pipeline run.
        jobs: int, the number of worker threads for corpus items.
        denote_limit: int, the enumeration limit of the denotational suites;
            items with larger types are skipped by those suites.
        wide_samples: int, the number of items of the wide corpus, whose
            argument types reach order 2; only WIDE_SUITES run on it. None
            means as many as samples.

    Returns:
        SelftestReport, the per-suite results.
    """
    wide_samples = samples if wide_samples is None else wide_samples
    report = SelftestReport(seed, samples, size, wide_samples)
    _witness_checks(report, fuel)
    _omega_checks(report)

    items = list(corpus(seed, samples, size))
    tasks = [(item, False) for item in items]
    tasks += [(item, True) for item in corpus(seed, wide_samples, size, wide=True)]

    def run_item(task):
        item, wide = task
        return _ItemChecks(item, fuel, denote_limit, seed, size, wide).run()

    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(run_item, tasks))
    else:
        results = [run_item(task) for task in tasks]

    neutrals = []
    for checks in results:
        for suite, failure in checks.outcomes:
            report.record(suite, failure)
        neutrals.extend(checks.neutrals)
    _candidate_checks(report, neutrals, fuel)
    _coverage_checks(report, items)

    for result in report.suites.values():
        log.info('%s: %d checked, %d failed', result.name, result.checked, result.failed)
    return report
