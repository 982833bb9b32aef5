# -*- coding: utf-8 -*-
"""

Protocols: the global-pulse controlled-phase constructions as Sequences

Every construction is built from the three-pulse S block, which takes each
computational state with a coupled Rydberg partner to that partner.
Repeating S with every laser phase shifted by a jump closes the
trajectories and imprints a controlled phase of pi minus the jump.

"""
import logging
import math
from dataclasses import dataclass, field, replace

import numpy as np
from scipy import optimize

from .core import ConvergenceError, ParseError
from .dynamics import DriveSpec, ErrorModel, PulseSpec, propagate
from .hilbert import (SUPPORTED_ATOMS, build_basis, computational_labels,
                      qubit_indices, qubit_projector, rydberg_projector)
from .records import SequenceRecord, pulse_lines

log = logging.getLogger(__name__)

TWO_PI = 2 * np.pi
TARGET_ATOMS = {'CPHASE': 2, 'CCPHASE': 3}
JUMP_TOL = 1e-7


@dataclass(frozen=True)
class TargetGate(object):
    """Controlled-phase target.

    CPHASE multiplies ``|z1 z2>`` by exp(i phase (z1 z2 - z1 - z2)); CCPHASE
    multiplies every three-qubit state except ``|000>`` by exp(-i phase).
    With ``local_equivalent`` the target is meant up to single-qubit Z
    phases.
    """
    kind: str = 'CPHASE'
    phase: float = np.pi
    local_equivalent: bool = False

    def __post_init__(self):
        if self.kind not in TARGET_ATOMS:
            raise ValueError('kind must be one of {0}, got {1!r}'
                             .format(tuple(TARGET_ATOMS), self.kind))

    @property
    def n_atoms(self):
        return TARGET_ATOMS[self.kind]

    def exponent(self, label):
        """Integer multiplying i*phase for a computational label."""
        bits = [int(c) for c in label]
        if self.kind == 'CPHASE':
            return bits[0] * bits[1] - bits[0] - bits[1]
        return -1 if any(bits) else 0

    def matrix(self, basis):
        """Target as a diagonal matrix on the blockaded basis; Rydberg
        configurations are left at 1."""
        if basis.n_atoms != self.n_atoms:
            raise ValueError('{0} acts on {1} atoms, basis has {2}'
                             .format(self.kind, self.n_atoms, basis.n_atoms))
        diag = np.ones(basis.dim, dtype=complex)
        for i, label in zip(qubit_indices(basis),
                            computational_labels(basis)):
            diag[i] = np.exp(1j * self.phase * self.exponent(label))
        return np.diag(diag)


@dataclass(frozen=True)
class Sequence(object):
    """Named list of pulses in application order."""
    name: str
    pulses: tuple
    n_atoms: int = 2
    variant: int = 1
    target: TargetGate = field(default_factory=TargetGate)

    def __post_init__(self):
        object.__setattr__(self, 'pulses', tuple(self.pulses))
        if self.n_atoms not in SUPPORTED_ATOMS:
            raise ValueError('n_atoms must be one of {0}, got {1}'
                             .format(SUPPORTED_ATOMS, self.n_atoms))
        if self.variant not in (1, 2):
            raise ValueError('variant must be 1 or 2, got {0!r}'
                             .format(self.variant))
        if not self.pulses:
            raise ValueError('a sequence needs at least one pulse')

    @property
    def nominal_duration(self):
        """Total time in units of 1/Omega."""
        return sum(p.duration for p in self.pulses)


def wrap(angle):
    """Angle reduced to [0, 2 pi)."""
    return float(np.mod(angle, TWO_PI))


def variant_areas(variant):
    """(alpha1, alpha2) of the S block for a variant."""
    if variant == 1:
        return np.pi / (2 * np.sqrt(2)), np.pi
    if variant == 2:
        return np.pi / 2, np.pi / np.sqrt(2)
    raise ValueError('variant must be 1 or 2, got {0!r}'.format(variant))


def _check_phase(phi):
    if not 0 < phi < TWO_PI:
        raise ValueError('phi must lie in (0, 2 pi), got {0}'.format(phi))


def s_block(variant=1, offset=0.0):
    """The three S pulses with phases 0, pi/2, 0 shifted by ``offset``."""
    a1, a2 = variant_areas(variant)
    return tuple(PulseSpec(area, DriveSpec(phase=wrap(offset + phase)))
                 for area, phase in ((a1, 0.0), (a2, np.pi / 2), (a1, 0.0)))


def shifted(pulses, jump, doppler_sign=1):
    """Pulses with every laser phase shifted by ``jump``; ``doppler_sign``
    multiplies each pulse's Doppler sign."""
    return tuple(replace(p, drive=replace(p.drive,
                                          phase=wrap(p.drive.phase + jump)),
                         doppler_sign=p.doppler_sign * doppler_sign,
                         post_inversion=False)
                 for p in pulses)


def mark_inversions(pulses):
    """Flag an inversion event before every pulse whose Doppler sign
    differs from the one before it (the sequence starts at +1)."""
    marked = []
    sign = 1
    for p in pulses:
        flip = p.doppler_sign != sign
        marked.append(replace(p, post_inversion=p.post_inversion or flip))
        sign = p.doppler_sign
    return tuple(marked)


def protocol_I(variant=1, phi=np.pi):
    """C_phi from S, then S with every phase shifted by pi - phi."""
    _check_phase(phi)
    pulses = s_block(variant) + s_block(variant, offset=np.pi - phi)
    return Sequence('I', pulses, 2, variant, TargetGate('CPHASE', phi))


def protocol_Ia(variant=1, phi=np.pi):
    """Protocol I with the Doppler detuning inverted for the last three
    pulses."""
    base = protocol_I(variant, phi).pulses
    pulses = mark_inversions(base[:3] + shifted(base[3:], 0.0, -1))
    return Sequence('Ia', pulses, 2, variant, TargetGate('CPHASE', phi))


def protocol_II(variant=1, phi=np.pi):
    """Two C_{phi/2} gates separated by a phase jump of pi - phi."""
    _check_phase(phi)
    half = protocol_I(variant, phi / 2).pulses
    pulses = half + shifted(half, np.pi - phi)
    return Sequence('II', pulses, 2, variant, TargetGate('CPHASE', phi))


def protocol_IIa(variant=1, phi=np.pi):
    """Protocol II with the Doppler detuning inverted for the second gate.

    The jump between the gates is pi for CZ; for other phases it is the
    jump that cancels leakage to first order in the symmetric detuning.
    """
    _check_phase(phi)
    half = protocol_I(variant, phi / 2).pulses
    if math.isclose(phi, np.pi):
        jump = np.pi
    else:
        jump = solve_leakage_jump(half, shifted(half, 0.0, -1),
                                  'sym_detuning', (np.pi - phi, np.pi))
    pulses = mark_inversions(half + shifted(half, jump, -1))
    return Sequence('IIa', pulses, 2, variant, TargetGate('CPHASE', phi))


def protocol_IIb(variant=1, phi=np.pi):
    """Two I.a-style C_{phi/2} gates, jump pi - phi between them."""
    _check_phase(phi)
    half = protocol_Ia(variant, phi / 2).pulses
    pulses = mark_inversions(half + shifted(half, np.pi - phi))
    return Sequence('IIb', pulses, 2, variant, TargetGate('CPHASE', phi))


def protocol_III(variant=1, phi=np.pi):
    """Two Protocol-II C_{phi/2} blocks, the second Doppler-inverted and
    shifted by -phi/2, which removes the first-order singlet coupling."""
    _check_phase(phi)
    block = protocol_II(variant, phi / 2).pulses
    pulses = mark_inversions(block + shifted(block, -phi / 2, -1))
    return Sequence('III', pulses, 2, variant, TargetGate('CPHASE', phi))


def s3_pulses(params, offset=0.0):
    """The palindromic five-pulse block U0(a1) Ux2(a2) Ux3(a3) Ux2(a2)
    U0(a1), in application order."""
    a1, a2, a3, xi2, xi3 = (float(p) for p in params)
    return tuple(PulseSpec(area, DriveSpec(phase=wrap(offset + phase)))
                 for area, phase in ((a1, 0.0), (a2, xi2), (a3, xi3),
                                     (a2, xi2), (a1, 0.0)))


def ccz_sequence(params, phi=np.pi):
    """Three-atom CC_phi: S3, then S3 shifted by pi - phi (no jump for
    CCZ)."""
    _check_phase(phi)
    pulses = s3_pulses(params) + s3_pulses(params, np.pi - phi)
    return Sequence('ccz', pulses, 3, 1, TargetGate('CCPHASE', phi))


def ccz_robust_sequence(params, phi=np.pi):
    """Two CC_{phi/2} gates; the jump between them cancels first-order
    intensity leakage (zero for CCZ)."""
    _check_phase(phi)
    half = ccz_sequence(params, phi / 2).pulses
    if math.isclose(phi, np.pi):
        jump = 0.0
    else:
        jump = solve_leakage_jump(half, half, 'intensity',
                                  (np.pi - phi, np.pi), n_atoms=3)
    pulses = half + shifted(half, jump)
    return Sequence('ccz-robust', pulses, 3, 1, TargetGate('CCPHASE', phi))


def solve_leakage_jump(first, second, kind, seeds, n_atoms=2):
    """Phase jump between two pulse groups that zeroes ||Q dU P||.

    Parameters
    ----------
    first, second : tuple of PulseSpec
        The second group is shifted by the trial jump.
    kind : string
        Error kind the derivative is taken for.
    seeds : iterable of float
        A bounded scalar search runs within pi of each seed; the lowest
        result wins.
    n_atoms : int, default 2

    Returns
    -------
    float
        Jump in [0, 2 pi).
    """
    basis = build_basis(n_atoms)
    leak = rydberg_projector(basis)
    qubits = qubit_projector(basis)
    model = ErrorModel(kind, 0.0)
    target = TargetGate('CPHASE' if n_atoms == 2 else 'CCPHASE')

    def leakage(jump):
        seq = Sequence('trial', mark_inversions(first + shifted(second, jump)),
                       n_atoms, 1, target)
        du = propagate(seq, model, with_derivative=True).du
        return np.linalg.norm(leak @ du @ qubits) ** 2

    best = None
    for seed in seeds:
        res = optimize.minimize_scalar(
            leakage, bounds=(seed - np.pi, seed + np.pi), method='bounded',
            options={'xatol': 1e-12})
        log.debug('leakage jump from seed %.6f: %.12f (residual %.3e)',
                  seed, res.x, res.fun)
        if best is None or res.fun < best.fun:
            best = res
    if np.sqrt(best.fun) > JUMP_TOL:
        raise ConvergenceError('no leakage-free phase jump found',
                               best=wrap(best.x),
                               residuals=[np.sqrt(best.fun)])
    return wrap(best.x)


def strip_local_phases(u, basis, target):
    """Remove single-qubit Z phases from ``u`` so that every
    single-excitation state (``01``, ``10`` ...) carries the target's
    phase. Returns D u for the compensating diagonal D."""
    n = basis.n_atoms
    goal = np.diag(target.matrix(basis))
    corrections = []
    for atom in range(n):
        i = basis.position(''.join('1' if k == atom else '0'
                                   for k in range(n)))
        corrections.append(np.angle(goal[i]) - np.angle(u[i, i]))
    diag = np.array([np.exp(1j * sum(c for c, level in zip(corrections, cfg)
                                      if level == 1))
                     for cfg in basis.configs])
    return diag[:, None] * u


def parse_sequence(text):
    """Read a sequence document.

    Raises
    ------
    ParseError
        With the line of the offending field or pulse.
    """
    record = SequenceRecord.loads(text)
    fields = record.to_fields(pulse_lines(text))
    kind, phase, local = fields.pop('target')
    try:
        return Sequence(target=TargetGate(kind, phase, local), **fields)
    except ValueError as e:
        raise ParseError(str(e))


def serialize_sequence(seq):
    """Sequence document text for ``seq``."""
    return SequenceRecord.from_sequence(seq).to_json() + '\n'
