# -*- coding: utf-8 -*-
"""

Dynamics: Hamiltonians, pulse exponentials and sequence propagation

Pulses are square and resonant, so each one is a single exponential of a
time-independent Hermitian matrix. Error models deform the Hamiltonian
linearly in their parameter (up to the laser-phase factor), which makes
the parameter-derivative of a pulse the off-diagonal block of one
augmented exponential.

"""
from dataclasses import dataclass, field, replace
from typing import NamedTuple

import numpy as np
from scipy import linalg

from .core import UnsupportedError
from .hilbert import (AtomLevel, build_basis, partner_labels,
                      rydberg_partner)

ERROR_KINDS = ('intensity', 'sym_detuning', 'antisym_detuning',
               'positional_phase')

ERROR_ALIASES = {
    'intensity': 'intensity',
    'sym': 'sym_detuning',
    'sym_detuning': 'sym_detuning',
    'antisym': 'antisym_detuning',
    'antisym_detuning': 'antisym_detuning',
    'phase': 'positional_phase',
    'positional': 'positional_phase',
    'positional_phase': 'positional_phase',
}

HERMITIAN_TOL = 1e-12
TWO_LEVEL_TOL = 1e-9


@dataclass(frozen=True)
class DriveSpec(object):
    """Laser drive of one pulse.

    ``rabi`` is in units of the nominal Rabi frequency, ``phase`` is the
    laser phase in radians, ``mask`` selects the driven atoms (None drives
    every atom) and ``detuning`` is a nominal symmetric detuning that is
    part of the ideal Hamiltonian.
    """
    rabi: float = 1.0
    phase: float = 0.0
    mask: tuple = None
    detuning: float = 0.0

    def __post_init__(self):
        if self.rabi < 0:
            raise ValueError('rabi must be >= 0, got {0}'.format(self.rabi))
        if self.mask is not None:
            object.__setattr__(self, 'mask', tuple(bool(m) for m in self.mask))

    def driven(self, n_atoms):
        """Per-atom drive flags for an ``n_atoms`` register."""
        if self.mask is None:
            return (True,) * n_atoms
        if len(self.mask) != n_atoms:
            raise ValueError('mask has {0} entries for {1} atoms'
                             .format(len(self.mask), n_atoms))
        return self.mask


@dataclass(frozen=True)
class PulseSpec(object):
    """One square pulse of area ``area`` (radians of rotation at the
    nominal Rabi frequency).

    ``doppler_sign`` is -1 when the Doppler detuning is inverted for this
    pulse; ``post_inversion`` marks an inversion event right before it.
    """
    area: float
    drive: DriveSpec = field(default_factory=DriveSpec)
    doppler_sign: int = 1
    post_inversion: bool = False

    def __post_init__(self):
        if not self.area > 0:
            raise ValueError('area must be > 0, got {0}'.format(self.area))
        if self.doppler_sign not in (1, -1):
            raise ValueError('doppler_sign must be +1 or -1, got {0}'
                             .format(self.doppler_sign))

    @property
    def duration(self):
        if self.drive.rabi == 0:
            raise ValueError('pulse with zero rabi has no finite duration')
        return self.area / self.drive.rabi


@dataclass(frozen=True)
class ErrorModel(object):
    """A one-parameter deformation of the Hamiltonian."""
    kind: str
    epsilon: float = 0.0

    def __post_init__(self):
        if self.kind not in ERROR_KINDS:
            raise ValueError('kind must be one of {0}, got {1!r}'
                             .format(ERROR_KINDS, self.kind))

    @classmethod
    def from_name(cls, name, epsilon=0.0):
        """Build a model from a kind or its short alias (``sym``,
        ``antisym``, ``phase``)."""
        try:
            return cls(ERROR_ALIASES[name], float(epsilon))
        except KeyError:
            raise ValueError('unknown error kind {0!r}'.format(name))


@dataclass(frozen=True, eq=False)
class UnitaryReport(object):
    u: np.ndarray
    du: np.ndarray
    total_time: float


class TrajectoryPoint(NamedTuple):
    time: float
    x: float
    y: float
    z: float
    subsystem: str


def _as_models(model):
    if model is None:
        return ()
    if isinstance(model, ErrorModel):
        return (model,)
    return tuple(model)


def apply_error(pulse, model, n_atoms=2, after_inversion=None):
    """Deform a pulse by one or more error models.

    Parameters
    ----------
    pulse : PulseSpec
    model : ErrorModel, iterable of ErrorModel or None
        Several models add their shifts.
    n_atoms : int, default 2
    after_inversion : bool, default None
        Whether an inversion event happened at or before this pulse. Falls
        back to ``pulse.post_inversion`` when None; :func:`propagate`
        passes the lineage of the whole sequence.

    Returns
    -------
    (DriveSpec, tuple)
        The deformed drive and the per-atom detunings (nominal plus error).
    """
    drive = pulse.drive
    driven = np.asarray(drive.driven(n_atoms), dtype=float)
    if after_inversion is None:
        after_inversion = pulse.post_inversion

    scale = 1.0
    phase = drive.phase
    detunings = np.full(n_atoms, float(drive.detuning))
    # the detuning error follows the drive mask
    shift = pulse.doppler_sign * drive.rabi * driven
    for m in _as_models(model):
        if m.kind == 'intensity':
            scale += m.epsilon
        elif m.kind == 'sym_detuning':
            detunings += m.epsilon * shift
        elif m.kind == 'antisym_detuning':
            if n_atoms != 2:
                raise UnsupportedError(
                    'antisym_detuning is defined for 2 atoms only')
            detunings += m.epsilon * shift * np.array([1.0, -1.0])
        elif after_inversion:
            phase += m.epsilon
    return (replace(drive, rabi=drive.rabi * scale, phase=phase),
            tuple(detunings))


def build_hamiltonian(basis, drive, detunings):
    """Blockaded Hamiltonian of one pulse.

    Parameters
    ----------
    basis : BlockadedBasis
    drive : DriveSpec
        ``drive.detuning`` is ignored here; pass the full per-atom
        detunings (see :func:`apply_error`).
    detunings : sequence of float
        Detuning of each atom; a Rydberg atom contributes ``-detuning``.

    Returns
    -------
    numpy.ndarray
        Hermitian ``dim x dim`` matrix.
    """
    n = basis.n_atoms
    detunings = np.asarray(detunings, dtype=float)
    if detunings.shape != (n,):
        raise ValueError('detunings must have length {0}, got shape {1}'
                         .format(n, detunings.shape))
    mask = drive.driven(n)
    coupling = 0.5 * drive.rabi * np.exp(1j * drive.phase)

    ham = np.zeros((basis.dim, basis.dim), dtype=complex)
    for j, config in enumerate(basis.configs):
        for i, level in enumerate(config):
            if level == AtomLevel.r:
                ham[j, j] -= detunings[i]
            elif level == AtomLevel.q1 and mask[i]:
                excited = config[:i] + (AtomLevel.r,) + config[i + 1:]
                k = basis.index.get(excited)
                if k is not None:
                    ham[j, k] += coupling
                    ham[k, j] += np.conj(coupling)
    return ham


def two_level_hamiltonian(coupling, drive):
    """Effective Hamiltonian of a (ground, excited) pair whose coupling is
    ``coupling`` times the single-atom one, e.g. sqrt(2) for ``|11>``."""
    g = 0.5 * coupling * drive.rabi * np.exp(1j * drive.phase)
    return np.array([[0.0, g], [np.conj(g), -drive.detuning]],
                    dtype=complex)


def hamiltonian_derivative(basis, pulse, model, after_inversion=None):
    """dH/d(epsilon) of a pulse under a single error model, evaluated at
    ``model.epsilon``."""
    n = basis.n_atoms
    if after_inversion is None:
        after_inversion = pulse.post_inversion
    drive, _ = apply_error(pulse, model, n, after_inversion)
    nominal = pulse.drive.rabi
    zero = np.zeros(n)
    if model.kind == 'intensity':
        return build_hamiltonian(basis, replace(drive, rabi=nominal), zero)
    if model.kind == 'positional_phase':
        if not after_inversion:
            return np.zeros((basis.dim, basis.dim), dtype=complex)
        return build_hamiltonian(
            basis, replace(drive, phase=drive.phase + np.pi / 2), zero)
    pattern = np.ones(n)
    if model.kind == 'antisym_detuning':
        pattern = np.array([1.0, -1.0])
    pattern = pattern * np.asarray(pulse.drive.driven(n), dtype=float)
    return build_hamiltonian(basis, replace(drive, rabi=0.0),
                             pulse.doppler_sign * nominal * pattern)


def pulse_unitary(ham, duration):
    """exp(-i H t) of a Hermitian matrix via its eigendecomposition."""
    ham = np.asarray(ham)
    if duration < 0:
        raise ValueError('duration must be >= 0, got {0}'.format(duration))
    if not np.allclose(ham, ham.conj().T, rtol=0, atol=HERMITIAN_TOL):
        raise ValueError('H must be Hermitian')
    w, v = linalg.eigh(ham)
    return (v * np.exp(-1j * w * duration)) @ v.conj().T


def pulse_derivative(ham, dham, duration):
    """d/d(epsilon) exp(-i H(epsilon) t), from the upper-right block of
    exp(-i t [[H, dH], [0, H]])."""
    dim = ham.shape[0]
    block = np.zeros((2 * dim, 2 * dim), dtype=complex)
    block[:dim, :dim] = ham
    block[dim:, dim:] = ham
    block[:dim, dim:] = dham
    return linalg.expm(-1j * duration * block)[:dim, dim:]


def propagate(seq, model=None, with_derivative=False):
    """Total unitary of a sequence.

    Parameters
    ----------
    seq : Sequence
        Pulses in application order.
    model : ErrorModel, iterable of ErrorModel or None
        None propagates the ideal sequence.
    with_derivative : boolean, default False
        Also return dU/d(epsilon) at ``model.epsilon``. Needs exactly one
        model.

    Returns
    -------
    UnitaryReport
    """
    basis = build_basis(seq.n_atoms)
    models = _as_models(model)
    if with_derivative and len(models) != 1:
        raise ValueError('with_derivative needs exactly one error model')

    u = np.eye(basis.dim, dtype=complex)
    du = np.zeros_like(u) if with_derivative else None
    inverted = False
    for pulse in seq.pulses:
        inverted = inverted or pulse.post_inversion
        drive, detunings = apply_error(pulse, models, basis.n_atoms, inverted)
        ham = build_hamiltonian(basis, drive, detunings)
        uk = pulse_unitary(ham, pulse.duration)
        if with_derivative:
            dham = hamiltonian_derivative(basis, pulse, models[0], inverted)
            du = pulse_derivative(ham, dham, pulse.duration) @ u + uk @ du
        u = uk @ u
    total_time = sum(p.duration for p in seq.pulses)
    return UnitaryReport(u=u, du=du, total_time=total_time)


def _sample_fractions(samples_per_pulse):
    if samples_per_pulse < 1:
        raise ValueError('samples_per_pulse must be >= 1, got {0}'
                         .format(samples_per_pulse))
    if samples_per_pulse == 1:
        return np.array([1.0])
    return np.linspace(0.0, 1.0, samples_per_pulse)


def bloch_trajectory(seq, initial, samples_per_pulse=50):
    """Bloch-sphere path of the two-level system holding ``initial``.

    The south pole is the computational state ``initial`` and the north
    pole its coupled Rydberg state. Each pulse is sampled at
    ``samples_per_pulse`` evenly spaced times including both ends; with a
    single sample only the end of each pulse is kept.

    Returns
    -------
    list of TrajectoryPoint
    """
    basis = build_basis(seq.n_atoms)
    down = basis.ket(initial)
    up = rydberg_partner(basis, initial)
    subsystem = '{0}|{1}'.format(initial,
                                 '+'.join(partner_labels(basis, initial)))
    fractions = _sample_fractions(samples_per_pulse)

    points = []
    psi = down
    elapsed = 0.0
    for pulse in seq.pulses:
        drive, detunings = apply_error(pulse, None, basis.n_atoms)
        w, v = linalg.eigh(build_hamiltonian(basis, drive, detunings))
        coeffs = v.conj().T @ psi
        for frac in fractions:
            t = frac * pulse.duration
            state = v @ (np.exp(-1j * w * t) * coeffs)
            a = np.vdot(down, state)
            b = np.vdot(up, state)
            weight = abs(a) ** 2 + abs(b) ** 2
            if abs(weight - 1.0) > TWO_LEVEL_TOL:
                raise ValueError('state leaves the {0} two-level system'
                                 .format(subsystem))
            cross = np.conj(b) * a
            points.append(TrajectoryPoint(
                time=elapsed + t, x=2 * cross.real, y=2 * cross.imag,
                z=abs(b) ** 2 - abs(a) ** 2, subsystem=subsystem))
        psi = v @ (np.exp(-1j * w * pulse.duration) * coeffs)
        elapsed += pulse.duration
    return points


def enclosed_phase(seq, initial):
    """Phase -arg<z|U|z> (mod 2 pi) picked up by a computational state over
    an ideal sequence; for a closed trajectory it is half the enclosed
    solid angle."""
    basis = build_basis(seq.n_atoms)
    i = basis.position(initial)
    amp = propagate(seq).u[i, i]
    return float(np.mod(-np.angle(amp), 2 * np.pi))
