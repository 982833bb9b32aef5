# -*- coding: utf-8 -*-
"""

Hilbert: the blockaded state space of two or three atoms

Each atom has two qubit levels and one Rydberg level. With a perfect
blockade no configuration holds more than one Rydberg excitation, so the
space has 2**n + n * 2**(n - 1) states.

"""
import enum
import functools
import itertools
from dataclasses import dataclass, field
from types import MappingProxyType

import numpy as np

from .core import UnsupportedError

SUPPORTED_ATOMS = (2, 3)


class AtomLevel(enum.IntEnum):
    """Single-atom level. The integer order fixes the canonical basis
    order."""
    q0 = 0
    q1 = 1
    r = 2

    @property
    def label(self):
        return '01r'[self]

    @classmethod
    def from_label(cls, char):
        try:
            return cls('01r'.index(char))
        except ValueError:
            raise ValueError('unknown level label {0!r}'.format(char))


@dataclass(frozen=True)
class BlockadedBasis(object):
    """Enumerated blockaded configurations of ``n_atoms`` atoms.

    ``configs`` is sorted lexicographically in :class:`AtomLevel` order and
    ``index`` maps each configuration back to its position.
    """
    n_atoms: int
    configs: tuple
    index: MappingProxyType = field(repr=False, compare=False)

    @property
    def dim(self):
        return len(self.configs)

    def label(self, position):
        """Configuration at ``position`` as a string such as ``'0r'``."""
        return ''.join(level.label for level in self.configs[position])

    def position(self, label):
        """Basis position of a configuration given as a label string."""
        if len(label) != self.n_atoms:
            raise ValueError('label {0!r} must have {1} characters'
                             .format(label, self.n_atoms))
        config = tuple(AtomLevel.from_label(c) for c in label)
        if config not in self.index:
            raise ValueError('{0!r} is outside the blockaded basis'
                             .format(label))
        return self.index[config]

    def ket(self, label):
        """Unit vector on a single configuration."""
        vec = np.zeros(self.dim, dtype=complex)
        vec[self.position(label)] = 1.0
        return vec


@functools.lru_cache(maxsize=None)
def build_basis(n_atoms):
    """Enumerate the blockaded basis.

    Parameters
    ----------
    n_atoms : int
        Number of atoms, 2 or 3.

    Returns
    -------
    BlockadedBasis
    """
    if n_atoms not in SUPPORTED_ATOMS:
        raise UnsupportedError('n_atoms must be one of {0}, got {1}'
                               .format(SUPPORTED_ATOMS, n_atoms))
    configs = tuple(c for c in itertools.product(AtomLevel, repeat=n_atoms)
                    if c.count(AtomLevel.r) <= 1)
    index = MappingProxyType({c: i for i, c in enumerate(configs)})
    return BlockadedBasis(n_atoms=n_atoms, configs=configs, index=index)


def computational_labels(basis):
    """Qubit-subspace labels in basis order, e.g. ['00', '01', '10', '11']."""
    return [basis.label(i) for i in qubit_indices(basis)]


def qubit_indices(basis):
    """Basis positions of the configurations without a Rydberg atom."""
    return np.array([i for i, c in enumerate(basis.configs)
                     if AtomLevel.r not in c])


def partner_labels(basis, label):
    """Configurations the drive couples a computational state to: one
    entry per atom in the qubit-one level, with that atom moved to r."""
    if set(label) - set('01'):
        raise ValueError('{0!r} is not a computational state'.format(label))
    return [label[:i] + 'r' + label[i + 1:]
            for i, c in enumerate(label) if c == '1']


def rydberg_partner(basis, label):
    """Normalized coupled Rydberg state of the computational state ``label``.

    For ``'01'`` this is ``|0r>``, for ``'11'`` it is ``|W>``.
    """
    partners = partner_labels(basis, label)
    if not partners:
        raise ValueError('{0!r} does not couple to a Rydberg state'
                         .format(label))
    vec = sum(basis.ket(p) for p in partners)
    return vec / np.sqrt(len(partners))


def named_state(basis, name):
    """State vector by name.

    Parameters
    ----------
    basis : BlockadedBasis
    name : string
        Any configuration label (``'01'``, ``'0r'``), ``'W'`` and ``'A'``
        for two atoms, ``'W2'`` and ``'W3'`` for three atoms.

    Returns
    -------
    numpy.ndarray
        Unit-norm complex amplitudes.
    """
    n = basis.n_atoms
    if name == 'W' and n == 2:
        return rydberg_partner(basis, '11')
    if name == 'A' and n == 2:
        return (basis.ket('r1') - basis.ket('1r')) / np.sqrt(2)
    if name == 'W2' and n == 3:
        return rydberg_partner(basis, '011')
    if name == 'W3' and n == 3:
        return rydberg_partner(basis, '111')
    if len(name) == n and not set(name) - set('01r'):
        return basis.ket(name)
    raise ValueError('unknown state {0!r} for {1} atoms'.format(name, n))


def qubit_projector(basis):
    """Projector onto the computational subspace."""
    diag = np.zeros(basis.dim)
    diag[qubit_indices(basis)] = 1.0
    return np.diag(diag)


def rydberg_projector(basis):
    """Projector onto the Rydberg states reachable from the qubit subspace.

    For two atoms this is the span of ``|0r>``, ``|r0>`` and ``|W>``; the
    singlet ``|A>`` is excluded.
    """
    proj = np.zeros((basis.dim, basis.dim), dtype=complex)
    for label in computational_labels(basis):
        if '1' in label:
            vec = rydberg_partner(basis, label)
            proj += np.outer(vec, vec.conj())
    return proj
