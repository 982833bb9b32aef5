# -*- coding: utf-8 -*-
"""

Command-line interface for gatecheck.

Usage:
    gatecheck verify --protocol I --phase pi --error intensity --eps 0.05
    gatecheck table 2 -o table2.csv
    gatecheck traj --protocol I --initial 11 --samples 100 -o traj.csv
    gatecheck optimize-ccz --seed 0
    gatecheck export --protocol III -o iii.json
    gatecheck roundtrip iii.json

"""
import difflib
import functools
import json
import logging
import os

import click
import pandas as pd

from . import __version__, catalog
from .core import ValidationError
from .dynamics import (ERROR_ALIASES, ErrorModel, bloch_trajectory,
                       enclosed_phase)
from .metrics import evaluate, gate_infidelity
from .optimize import (MAX_RESTARTS, PUBLISHED_S3, polish_s3, s3_objective,
                       search_s3)
from .protocols import parse_sequence, serialize_sequence
from .records import parse_angle
from .tables import format_frame, table_frame

__all__ = [
    'cli',
]

log = logging.getLogger(__name__)

EXACT_TOL = 1e-9
THREADS_ENV = 'GATECHECK_THREADS'


def thread_count():
    """Worker threads for the table command, capped by GATECHECK_THREADS."""
    raw = os.environ.get(THREADS_ENV)
    if raw is None:
        return os.cpu_count() or 1
    try:
        count = int(raw)
    except ValueError:
        count = 0
    if count < 1:
        raise click.UsageError('{0} must be a positive integer, got {1!r}'
                               .format(THREADS_ENV, raw))
    return count


def _fmt(value, digits=6):
    return '{0:.{1}g}'.format(value, digits)


def _angle(ctx, param, value):
    try:
        return parse_angle(value)
    except ValueError as e:
        raise click.BadParameter(str(e))


def _protocol(ctx, param, value):
    if value is None:
        return None
    try:
        return catalog.lookup(value).name
    except KeyError:
        raise click.BadParameter('unknown protocol {0!r}; choose from {1}'
                                 .format(value, ', '.join(catalog.names())))


def _guarded(func):
    """Report package and IO errors as exit code 1."""
    @functools.wraps(func)
    def wrapper(*args, **kwargs):
        try:
            return func(*args, **kwargs)
        except (click.ClickException, click.exceptions.Exit, click.Abort):
            raise
        except (ValidationError, ValueError, RuntimeError, OSError) as e:
            raise click.ClickException(str(e))
    return wrapper


def _load(protocol, seq_path, variant, phase):
    if seq_path:
        with open(seq_path) as f:
            return parse_sequence(f.read())
    return catalog.build(protocol or 'I', variant, phase)


def _sequence_options(func):
    func = click.option('--seq', 'seq_path', type=click.Path(dir_okay=False),
                        help='Sequence file, not a catalog protocol')(func)
    func = click.option('--phase', default='pi', callback=_angle,
                        help='Controlled phase, e.g. pi or pi/2')(func)
    func = click.option('--variant', type=click.IntRange(1, 2), default=1,
                        help='Area variant of the S block')(func)
    func = click.option('--protocol', default='I', callback=_protocol,
                        help='Catalog protocol name')(func)
    return func


@click.group()
@click.version_option(version=__version__, prog_name='gatecheck')
@click.option('-v', '--verbose', count=True, help='-v for info, -vv debug')
def cli(verbose):
    """
    Rydberg-blockade controlled-phase gates: propagation and robustness.

    Examples:

        gatecheck verify --protocol III --error antisym --eps 0.1

        gatecheck table 1
    """
    logging.basicConfig(level=logging.WARNING - 10 * min(verbose, 2),
                        format='%(levelname)s %(name)s: %(message)s')


@cli.command()
@_sequence_options
@click.option('--error', 'error_kind', default='intensity',
              type=click.Choice(sorted(ERROR_ALIASES)),
              help='Error model')
@click.option('--eps', type=float, default=0.0, help='Error parameter')
@click.pass_context
@_guarded
def verify(ctx, protocol, variant, phase, seq_path, error_kind, eps):
    """
    Print F, P and C of a protocol under one error.

    Exits with status 1 if the ideal sequence misses its target gate.
    """
    seq = _load(protocol, seq_path, variant, phase)
    report = evaluate(seq, ErrorModel.from_name(error_kind, eps))
    infidelity = gate_infidelity(seq)
    click.echo('protocol={0} variant={1} phase={2} error={3} eps={4}'.format(
        seq.name, seq.variant, _fmt(seq.target.phase), report.kind,
        _fmt(eps)))
    click.echo('F={0} P={1} C={2}'.format(_fmt(report.F), _fmt(report.P),
                                          _fmt(report.C)))
    click.echo('duration={0}'.format(_fmt(seq.nominal_duration)))
    click.echo('infidelity={0}'.format(_fmt(infidelity)))
    if not infidelity < EXACT_TOL:
        ctx.exit(1)


@cli.command()
@click.argument('which', type=click.IntRange(1, 3))
@click.option('-o', '--out', type=click.Path(dir_okay=False),
              help='CSV file; stdout when omitted')
@_guarded
def table(which, out):
    """
    Recompute one expansion table (1 intensity, 2 symmetric detuning,
    3 antisymmetric detuning) as CSV.
    """
    frame = format_frame(table_frame(which, threads=thread_count()))
    text = frame.to_csv(index=False, lineterminator='\n')
    if out:
        with open(out, 'w') as f:
            f.write(text)
    else:
        click.echo(text, nl=False)


@cli.command()
@_sequence_options
@click.option('--initial', default='01', help='Computational start state')
@click.option('--samples', type=click.IntRange(min=1), default=50,
              help='Samples per pulse')
@click.option('-o', '--out', required=True, type=click.Path(dir_okay=False),
              help='CSV file to write')
@_guarded
def traj(protocol, variant, phase, seq_path, initial, samples, out):
    """
    Write the Bloch-sphere trajectory of one computational state.
    """
    seq = _load(protocol, seq_path, variant, phase)
    points = bloch_trajectory(seq, initial, samples)
    frame = pd.DataFrame(points, columns=['time', 'x', 'y', 'z',
                                          'subsystem'])
    with open(out, 'w') as f:
        frame.to_csv(f, index=False, float_format='%.6g',
                     lineterminator='\n')
    click.echo('rows={0} final_z={1} enclosed_phase={2}'.format(
        len(frame), _fmt(points[-1].z), _fmt(enclosed_phase(seq, initial))))


@cli.command('optimize-ccz')
@click.option('--seed', type=int, default=0, help='Search seed')
@click.option('--restarts', type=click.IntRange(min=1),
              default=MAX_RESTARTS, help='Restart budget')
@click.option('--polish-paper', 'polish', is_flag=True,
              help='Refine the published parameters instead of searching')
@_guarded
def optimize_ccz(seed, restarts, polish):
    """
    Find the S3 block of the three-atom CCZ gate and print it as JSON.
    """
    trace = []
    if polish:
        params = polish_s3(PUBLISHED_S3)
    else:
        params = search_s3(seed, restarts, trace=trace)
    objective = s3_objective(params)
    doc = {
        'mode': 'polish' if polish else 'search',
        'seed': None if polish else seed,
        'params': params._asdict(),
        'duration': params.duration,
        'objective': objective.value,
        'deficits': list(objective.deficits),
        'trace': trace,
    }
    click.echo(json.dumps(doc, indent=2, sort_keys=True))


@cli.command()
@_sequence_options
@click.option('-o', '--out', type=click.Path(dir_okay=False),
              help='Sequence file; stdout when omitted')
@_guarded
def export(protocol, variant, phase, seq_path, out):
    """
    Write a catalog protocol as a sequence file.
    """
    text = serialize_sequence(_load(protocol, seq_path, variant, phase))
    if out:
        with open(out, 'w') as f:
            f.write(text)
    else:
        click.echo(text, nl=False)


@cli.command()
@click.argument('seq_file', type=click.Path(exists=True, dir_okay=False))
@click.pass_context
@_guarded
def roundtrip(ctx, seq_file):
    """
    Parse and re-serialize a sequence file; exit 1 unless nothing changes.
    """
    with open(seq_file) as f:
        seq = parse_sequence(f.read())
    text = serialize_sequence(seq)
    again = parse_sequence(text)
    retext = serialize_sequence(again)
    if again == seq and retext == text:
        click.echo('{0}: identical ({1} pulses)'.format(seq_file,
                                                        len(seq.pulses)))
        return
    diff = difflib.unified_diff(text.splitlines(), retext.splitlines(),
                                'parsed', 'reparsed', lineterm='')
    click.echo('\n'.join(diff))
    ctx.exit(1)
