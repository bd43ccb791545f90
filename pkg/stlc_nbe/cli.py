# -*- coding: utf-8 -*-
# Copyright: Raphaël de Gail
# GNU General Public License v3.0+ (see COPYING or https://www.gnu.org/licenses/gpl-3.0.txt)
"""Command line front door.

Results go to stdout and diagnostics to stderr. Every error of the package
maps to its exit code: 1 for type errors, 2 for unreadable input or settings,
3 for resource limits and 4 for internal invariant violations.
"""

from __future__ import annotations

import functools
import json
import logging
import sys

import click
from ansible.module_utils.common.text.converters import to_text

from stlc_nbe import __version__, oracle
from stlc_nbe.denote import denot_equal
from stlc_nbe.evaluation import Fuel
from stlc_nbe.gen import gen_term
from stlc_nbe.module_utils.errors import EXIT_INTERNAL, ConfigError, ParseError, StlcError
from stlc_nbe.module_utils.settings import LOG_LEVELS, StlcSettings
from stlc_nbe.nbe import normalize
from stlc_nbe.parser import format_core, parse_ctx, parse_term, parse_type, print_term, print_type
from stlc_nbe.selftest import (
    DEFAULT_DENOTE_LIMIT,
    DEFAULT_SAMPLES,
    DEFAULT_SEED,
    DEFAULT_SIZE,
    run_selftest,
)
from stlc_nbe.syntax import EMPTY_CTX, encode_term, encode_type, resolve, unresolve
from stlc_nbe.typecheck import elaborate, infer
from stlc_nbe.whnf import whnf_of

log = logging.getLogger(__name__)

################################################################################
# Helpers
################################################################################


def common_options(command):
    """Options accepted by every subcommand."""
    options = [
        click.option('--ctx', 'ctx_text', default='', help='Typing context, e.g. "x:Bool, f:Bool->Bool".'),
        click.option('-f', '--file', 'source', type=click.File('rb'), help='Read the first term from FILE.'),
        click.option('--json', 'json_output', is_flag=True, help='Emit the JSON encoding.'),
        click.option('--debruijn', is_flag=True, help='Print raw de Bruijn core syntax.'),
        click.option('--fuel', type=int, help='Evaluation step budget [env STLC_FUEL].'),
        click.option('--max-denote-size', type=int, help='Enumeration limit [env STLC_MAX_DENOTE_SIZE].'),
        click.option('--log-level', type=click.Choice(LOG_LEVELS), help='Log level [env STLC_LOG_LEVEL].'),
    ]
    for option in reversed(options):
        command = option(command)
    return command


def reported(command):
    """Turn package errors into a stderr diagnostic and the matching exit code."""
    @functools.wraps(command)
    def wrapper(*args, **kwargs):
        try:
            return command(*args, **kwargs)
        except StlcError as inst:
            log.debug('command failed', exc_info=True)
            click.echo(f'error: {inst.message}', err=True)
            sys.exit(inst.exit_code)
        except Exception as inst:
            log.debug('command crashed', exc_info=True)
            click.echo(f'error: internal: {type(inst).__name__}: {inst}', err=True)
            sys.exit(EXIT_INTERNAL)
    return wrapper


def load_settings(kwargs, argument_spec=None, positive=()):
    """Validate the command options and configure logging.

    Args:
        kwargs: dict, the raw click parameters.
        argument_spec: dict, the command specific argument spec.
        positive: iterable, int options that must be at least 1.

    Returns:
        StlcSettings, the validated settings.
    """
    params = dict(kwargs)
    params['json'] = params.pop('json_output', None)
    for key in ('ctx_text', 'source', 'terms', 'type_text'):
        params.pop(key, None)
    settings = StlcSettings(params, argument_spec, positive)
    logging.basicConfig(
        level=settings['log_level'].upper(),
        stream=sys.stderr,
        format='%(levelname)s %(name)s: %(message)s',
        force=True)
    return settings


def read_terms(source, terms, count):
    """Collect the source texts of count terms, the file one first.

    Raises:
        ConfigError: the number of terms given is not count.
        ParseError: the file is not valid UTF-8.
    """
    texts = list(terms)
    if source is not None:
        raw = source.read()
        try:
            texts.insert(0, to_text(raw, errors='strict'))
        except UnicodeDecodeError as inst:
            raise ParseError((inst.start, inst.end), f'{source.name} is not valid UTF-8') from None
    if len(texts) != count:
        raise ConfigError(f'expected {count} term(s), got {len(texts)}')
    return texts


def format_term(settings, t, ctx):
    if settings['json']:
        return json.dumps(encode_term(t))
    if settings['debruijn']:
        return format_core(t)
    return print_term(unresolve(t, ctx))


def format_type(settings, ty):
    if settings['json']:
        return json.dumps(encode_type(ty))
    return print_type(ty)


def typed(ctx, t, type_text):
    """Typecheck a term, against a type when one is given.

    Returns:
        tuple, the (elaborated) term and its type.
    """
    if type_text:
        ty = parse_type(type_text)
        return elaborate(ctx, t, ty), ty
    return t, infer(ctx, t)

################################################################################
# Commands
################################################################################


@click.group()
@click.version_option(__version__, prog_name='stlc-nbe')
def main():
    """Normalization by evaluation for the simply typed lambda calculus."""


@main.command('check')
@common_options
@click.option('--type', 'type_text', help='Check against this type instead of inferring.')
@click.argument('terms', nargs=-1)
@reported
def check_command(**kwargs):
    """Print the type of a term."""
    settings = load_settings(kwargs)
    ctx = parse_ctx(kwargs['ctx_text'])
    (text,) = read_terms(kwargs['source'], kwargs['terms'], 1)
    _, ty = typed(ctx, resolve(parse_term(text), ctx), kwargs['type_text'])
    click.echo(format_type(settings, ty))


@main.command('nbe')
@common_options
@click.option('--type', 'type_text', help='Check against this type instead of inferring.')
@click.option('--annotate', is_flag=True, help='Keep binder annotations in the normal form.')
@click.argument('terms', nargs=-1)
@reported
def nbe_command(**kwargs):
    """Print the beta-iota normal form of a term."""
    settings = load_settings(kwargs, dict(annotate=dict(type='bool', default=False)))
    ctx = parse_ctx(kwargs['ctx_text'])
    (text,) = read_terms(kwargs['source'], kwargs['terms'], 1)
    t, _ = typed(ctx, resolve(parse_term(text), ctx), kwargs['type_text'])
    result = normalize(ctx, t, Fuel(settings['fuel']), annotate=settings['annotate'])
    click.echo(format_term(settings, result, ctx))


@main.command('whnf')
@common_options
@click.option('--type', 'type_text', help='Check against this type instead of inferring.')
@click.argument('terms', nargs=-1)
@reported
def whnf_command(**kwargs):
    """Print the weak-head normal form of a closed term."""
    settings = load_settings(kwargs)
    if kwargs['ctx_text']:
        raise ConfigError('whnf works on closed terms and takes no context')
    (text,) = read_terms(kwargs['source'], kwargs['terms'], 1)
    t, _ = typed(EMPTY_CTX, resolve(parse_term(text), EMPTY_CTX), kwargs['type_text'])
    click.echo(format_term(settings, whnf_of(t, Fuel(settings['fuel'])), EMPTY_CTX))


@main.command('oracle-nf')
@common_options
@click.option('--max-steps', type=int, help='Reduction step limit.')
@click.option('--annotate', is_flag=True, help='Keep binder annotations in the normal form.')
@click.argument('terms', nargs=-1)
@reported
def oracle_nf_command(**kwargs):
    """Print the normal form found by substitution; the term is not typechecked."""
    settings = load_settings(
        kwargs,
        dict(
            max_steps=dict(type='int', default=oracle.DEFAULT_MAX_STEPS),
            annotate=dict(type='bool', default=False)),
        positive=('max_steps',))
    ctx = parse_ctx(kwargs['ctx_text'])
    (text,) = read_terms(kwargs['source'], kwargs['terms'], 1)
    t = resolve(parse_term(text), ctx)
    result = oracle.nf(ctx, t, settings['max_steps'], annotate=settings['annotate'])
    click.echo(format_term(settings, result, ctx))


@main.command('denote-eq')
@common_options
@click.option('--type', 'type_text', required=True, help='The type both terms check against.')
@click.argument('terms', nargs=-1)
@reported
def denote_eq_command(**kwargs):
    """Decide whether two terms denote the same function."""
    settings = load_settings(kwargs)
    ctx = parse_ctx(kwargs['ctx_text'])
    first, second = read_terms(kwargs['source'], kwargs['terms'], 2)
    ty = parse_type(kwargs['type_text'])
    equal = denot_equal(
        ctx, ty,
        resolve(parse_term(first), ctx),
        resolve(parse_term(second), ctx),
        settings['max_denote_size'])
    if settings['json']:
        click.echo(json.dumps({'equal': equal}))
    else:
        click.echo('equal' if equal else 'distinct')


@main.command('gen')
@common_options
@click.option('--type', 'type_text', required=True, help='The goal type.')
@click.option('--size', type=int, help='Node budget per term.')
@click.option('--count', type=int, help='Number of terms.')
@click.option('--seed', type=int, help='Seed of the first term.')
@click.option('--wide', is_flag=True, help='Allow (Bool -> Bool) -> Bool arguments.')
@reported
def gen_command(**kwargs):
    """Print generated well-typed terms, one per line."""
    settings = load_settings(
        kwargs,
        dict(
            size=dict(type='int', default=20),
            count=dict(type='int', default=10),
            seed=dict(type='int', default=0),
            wide=dict(type='bool', default=False)),
        positive=('size', 'count'))
    ctx = parse_ctx(kwargs['ctx_text'])
    ty = parse_type(kwargs['type_text'])
    for offset in range(settings['count']):
        t = gen_term(settings['seed'] + offset, ctx, ty, settings['size'], settings['wide'])
        click.echo(format_term(settings, t, ctx))


@main.command('selftest')
@common_options
@click.option('--samples', type=int, help='Number of corpus terms.')
@click.option('--size', type=int, help='Largest node budget.')
@click.option('--seed', type=int, help='Corpus seed.')
@click.option('--jobs', type=int, help='Worker threads.')
@click.option('--denote-limit', type=int, help='Enumeration limit of the denotational suites.')
@click.option('--wide-samples', type=int, help='Number of wide corpus terms, default as many as --samples.')
@reported
def selftest_command(**kwargs):
    """Run every property suite and print a pass/fail summary."""
    settings = load_settings(
        kwargs,
        dict(
            samples=dict(type='int', default=DEFAULT_SAMPLES),
            size=dict(type='int', default=DEFAULT_SIZE),
            seed=dict(type='int', default=DEFAULT_SEED),
            jobs=dict(type='int', default=1),
            denote_limit=dict(type='int', default=DEFAULT_DENOTE_LIMIT),
            wide_samples=dict(type='int')),
        positive=('samples', 'size', 'jobs', 'denote_limit'))
    report = run_selftest(
        samples=settings['samples'],
        size=settings['size'],
        seed=settings['seed'],
        fuel=settings['fuel'],
        jobs=settings['jobs'],
        denote_limit=min(settings['denote_limit'], settings['max_denote_size']),
        wide_samples=settings['wide_samples'])
    if settings['json']:
        click.echo(json.dumps(report.as_dict()))
    else:
        for line in report.summary():
            click.echo(line)
    if not report.ok:
        sys.exit(EXIT_INTERNAL)


if __name__ == '__main__':
    main()
