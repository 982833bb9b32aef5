# -*- coding: utf-8 -*-
"""

Tables: published leading-order expansions and their recomputation

Each reference row gives, for one protocol and variant, the leading order
and coefficient of 1 - metric(eps) for F, P and C. A coefficient of None
means only the order is known (the term is at least that small).

"""
import logging
from concurrent.futures import ThreadPoolExecutor

import numpy as np
import pandas as pd

from . import catalog
from .metrics import METRICS, series_fits

log = logging.getLogger(__name__)

TABLE_MODELS = {1: 'intensity', 2: 'sym_detuning', 3: 'antisym_detuning'}

REFERENCE_TABLES = {
    1: [
        ('jaksch', 1, ((2, 4.935), (2, 4.935), (4, 4.870))),
        ('levine', 1, ((2, 2.963), (2, 2.547), (2, 0.416))),
        ('I', 1, ((2, 1.878), (2, 1.878), (4, 0.329))),
        ('II', 1, ((4, 0.329), (6, 1.944), (4, 0.329))),
    ],
    2: [
        ('jaksch', 1, ((2, 2.480), (2, 1.0), (2, 1.480))),
        ('levine', 1, ((2, 3.000), (2, 0.077), (2, 2.923))),
        ('I', 1, ((2, 4.314), (4, 3.124), (2, 4.314))),
        ('II', 1, ((2, 17.256), (4, 6.249), (2, 17.256))),
        ('Ia', 1, ((2, 2.018), (2, 2.018), (4, 0.786))),
        ('Ia', 2, ((2, 4.091), (2, 4.091), (4, 2.011))),
        ('IIa', 1, ((4, 7.035), (4, 6.249), (4, 0.786))),
        ('IIa', 2, ((4, 8.260), (4, 6.249), (4, 2.011))),
        ('IIb', 1, ((4, 0.786), (6, None), (4, 0.786))),
        ('IIb', 2, ((4, 2.011), (6, None), (4, 2.011))),
        ('III', 1, ((4, 1.570), (6, None), (4, 1.570))),
        ('III', 2, ((4, 4.021), (6, None), (4, 4.021))),
    ],
    3: [
        ('jaksch', 1, ((2, 6.428), (2, 1.0), (2, 5.428))),
        ('levine', 1, ((2, 11.772), (2, 3.417), (2, 8.355))),
        ('I', 1, ((2, 17.637), (2, 6.132), (2, 11.505))),
        ('I', 2, ((2, 19.313), (2, 7.808), (2, 11.505))),
        ('II', 1, ((2, 58.284), (2, 12.264), (2, 46.020))),
        ('II', 2, ((2, 61.636), (2, 15.616), (2, 46.020))),
        ('Ia', 1, ((2, 2.0), (2, 2.0), (4, 0.8))),
        ('Ia', 2, ((2, 3.591), (2, 3.591), (4, 2.580))),
        ('IIa', 1, ((2, 12.264), (2, 12.264), (4, 171.462))),
        ('IIa', 2, ((2, 15.616), (2, 15.616), (4, 272.779))),
        ('IIb', 1, ((4, 0.8), (6, None), (4, 0.8))),
        ('IIb', 2, ((4, 2.580), (6, None), (4, 2.580))),
        ('III', 1, ((4, 676.0), (4, 513.0), (4, 163.0))),
        ('III', 2, ((4, 1090.0), (4, 837.0), (4, 253.0))),
    ],
}

COLUMNS = ['table', 'protocol', 'variant', 'model', 'metric', 'order',
           'coefficient', 'reference_order', 'reference_value', 'abs_diff',
           'duration']


def closed_forms():
    """Closed-form expansion coefficients in C_n = cos(n pi / sqrt 2).

    Returns
    -------
    dict
        ``A``, ``B``, ``D`` and the coefficients they give: Protocol I
        intensity c2 of F (``I_F2``) and c4 of C (``I_C4``), Protocol II
        intensity c6 of P (``II_P6``), and the Jaksch intensity values
        (``jaksch_F2``, ``jaksch_C4``).
    """
    c = [np.cos(n * np.pi / np.sqrt(2)) for n in range(7)]
    a = c[1] ** 2 + c[1] + 1
    b = 13 + 4 * c[1] + 8 * c[2] - 4 * c[3] + 3 * c[4]
    d = 30 + 30 * c[1] + 27 * c[2] + 2 * c[3] + 6 * c[4] + c[6]
    return {'A': a, 'B': b, 'D': d,
            'I_F2': a * np.pi ** 2 / 4,
            'I_C4': np.pi ** 4 * b / 640,
            'II_P6': np.pi ** 6 * d / 1024,
            'jaksch_F2': np.pi ** 2 / 2,
            'jaksch_C4': np.pi ** 4 / 20}


def _row_records(which, reference):
    protocol, variant, expected = reference
    kind = TABLE_MODELS[which]
    seq = catalog.build(protocol, variant)
    fits = series_fits(seq, kind, max_order=6)
    records = []
    for metric, (reference_order, reference_value) in zip(METRICS, expected):
        fit = fits[metric]
        order, coefficient = fit.leading()
        if reference_value is None:
            diff = None
        else:
            diff = abs(fit.coefficient(reference_order) - reference_value)
        records.append([which, protocol, variant, kind, metric, order,
                        coefficient, reference_order, reference_value, diff,
                        seq.nominal_duration])
    log.debug('table %d: %s v%d done', which, protocol, variant)
    return records


def table_frame(which, threads=None):
    """Recompute one table.

    Parameters
    ----------
    which : int
        1 (intensity), 2 (symmetric detuning) or 3 (antisymmetric
        detuning).
    threads : int, default None
        Worker threads; None lets the pool choose.

    Returns
    -------
    pandas.DataFrame
        One row per (protocol, variant, metric) in reference order.
    """
    if which not in REFERENCE_TABLES:
        raise ValueError('which must be one of {0}'
                         .format(sorted(REFERENCE_TABLES)))
    # Calibrated gates are cached; build them once before fanning out.
    catalog.build('levine')
    with ThreadPoolExecutor(max_workers=threads) as pool:
        chunks = list(pool.map(lambda ref: _row_records(which, ref),
                               REFERENCE_TABLES[which]))
    rows = [record for chunk in chunks for record in chunk]
    frame = pd.DataFrame(rows, columns=COLUMNS)
    frame['order'] = frame['order'].astype('Int64')
    return frame


def _format(value, digits):
    if value is None or pd.isna(value):
        return ''
    return '{0:.{1}g}'.format(value, digits)


def format_frame(frame):
    """Fixed-precision text columns: 4 significant digits for
    coefficients, 6 for durations."""
    out = frame.copy()
    for column in ('coefficient', 'reference_value', 'abs_diff'):
        out[column] = [_format(v, 4) for v in frame[column]]
    out['duration'] = [_format(v, 6) for v in frame['duration']]
    return out
