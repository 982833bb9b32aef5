# -*- coding: utf-8 -*-
"""

Catalog: every named construction, looked up by name

"""
import functools
import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .core import KeyedList
from .optimize import PUBLISHED_S3, polish_s3
from .protocols import (ccz_robust_sequence, ccz_sequence, protocol_I,
                        protocol_Ia, protocol_II, protocol_IIa, protocol_IIb,
                        protocol_III)
from .refgates import jaksch_sequence, levine_sequence


@dataclass(frozen=True)
class CatalogEntry(object):
    name: str
    builder: Callable
    n_atoms: int
    description: str


@functools.lru_cache(maxsize=None)
def polished_s3():
    """Published S3 parameters refined to machine precision."""
    return polish_s3(PUBLISHED_S3)


def _cz_only(build):
    def builder(variant, phase):
        if not math.isclose(phase, np.pi):
            raise ValueError('reference gates implement CZ only')
        return build()
    return builder


CATALOG = KeyedList('name', [
    CatalogEntry('I', protocol_I, 2,
                 'S, then S shifted by pi - phi'),
    CatalogEntry('Ia', protocol_Ia, 2,
                 'Protocol I, Doppler inverted for the last three pulses'),
    CatalogEntry('II', protocol_II, 2,
                 'two C_{phi/2}, leakage-robust to intensity errors'),
    CatalogEntry('IIa', protocol_IIa, 2,
                 'Protocol II, Doppler inverted for the second gate'),
    CatalogEntry('IIb', protocol_IIb, 2,
                 'two I.a-style C_{phi/2}'),
    CatalogEntry('III', protocol_III, 2,
                 'two Protocol-II C_{phi/2}, second Doppler inverted'),
    CatalogEntry('jaksch', _cz_only(jaksch_sequence), 2,
                 'locally addressed pi, 2 pi, pi'),
    CatalogEntry('levine', _cz_only(levine_sequence), 2,
                 'two detuned global pulses, calibrated'),
    CatalogEntry('ccz', lambda v, p: ccz_sequence(polished_s3(), p), 3,
                 'S3 applied twice'),
    CatalogEntry('ccz-robust',
                 lambda v, p: ccz_robust_sequence(polished_s3(), p), 3,
                 'two CC_{phi/2}, leakage-robust to intensity errors'),
])


def names():
    return CATALOG.get_keys()


def lookup(name):
    """Catalog entry by name; dots are ignored and case does not matter
    (``'I.a'`` finds ``'Ia'``)."""
    key = name.replace('.', '').lower()
    for entry in CATALOG:
        if entry.name.lower() == key:
            return entry
    raise KeyError(' "{0}" is an invalid key'.format(name))


def build(name, variant=1, phase=np.pi):
    """Sequence of a catalog protocol."""
    return lookup(name).builder(variant, phase)
