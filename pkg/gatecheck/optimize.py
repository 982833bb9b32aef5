# -*- coding: utf-8 -*-
"""

Optimize: search for the five-pulse S3 block of the three-atom CCZ gate

S3 must carry each of the three effective two-level systems of the
blockaded three-atom space (couplings 1, sqrt 2 and sqrt 3 times the
single-atom one) from its ground state to its excited state. Applying it
twice then gives every computational state except ``|000>`` a sign flip.

"""
import logging
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
from scipy import optimize

from .core import ConvergenceError, RobustnessError
from .dynamics import propagate, pulse_unitary, two_level_hamiltonian
from .hilbert import build_basis, qubit_projector
from .metrics import fidelity_triple, series_fit, susceptibilities
from .protocols import (ccz_robust_sequence, ccz_sequence, s3_pulses,
                        wrap)

log = logging.getLogger(__name__)

BLOCK_COUPLINGS = (1.0, np.sqrt(2), np.sqrt(3))
REFERENCE_DURATION = 22.84
BRANCH_WINDOW = 0.05
AREA_MAX = 2 * np.pi * 1.2
MAX_RESTARTS = 50
MAX_ITER = 4000
SOLUTION_TOL = 1e-10
POLISH_TOL = 1e-12
POLISH_NFEV = 200
ROBUST_TOL = 1e-5


class S3Params(NamedTuple):
    alpha1: float
    alpha2: float
    alpha3: float
    xi2: float
    xi3: float

    @property
    def duration(self):
        """Duration of S3 applied twice."""
        return 2 * (2 * self.alpha1 + 2 * self.alpha2 + self.alpha3)

    def normalized(self):
        return S3Params(float(self.alpha1), float(self.alpha2),
                        float(self.alpha3), wrap(self.xi2), wrap(self.xi3))


PUBLISHED_S3 = S3Params(1.088, 1.955, 5.373, 1.552, 1.593)


@dataclass(frozen=True)
class ObjectiveReport(object):
    value: float
    deficits: tuple


@dataclass(frozen=True, eq=False)
class CczReport(object):
    """Ideal-gate quality and intensity robustness of a CC_phi built from
    S3, and of its doubled leakage-robust variant."""
    fidelity: object
    infidelity: float
    series: object
    basic: object
    doubled: object
    duration: float
    doubled_duration: float


def _block_unitaries(params):
    pulses = s3_pulses(params)
    for coupling in BLOCK_COUPLINGS:
        u = np.eye(2, dtype=complex)
        for pulse in pulses:
            ham = two_level_hamiltonian(coupling, pulse.drive)
            u = pulse_unitary(ham, pulse.duration) @ u
        yield u


def s3_objective(params):
    """Sum over the three blocks of the population S3 fails to move from
    ground to excited state."""
    deficits = tuple(float(1.0 - abs(u[1, 0]) ** 2)
                     for u in _block_unitaries(params))
    return ObjectiveReport(value=sum(deficits), deficits=deficits)


def _penalized(x):
    excess = np.sum(np.clip(-x[:3], 0, None)) + \
        np.sum(np.clip(x[:3] - AREA_MAX, 0, None))
    if np.any(x[:3] <= 0):
        return 3.0 + excess
    return s3_objective(x).value + excess


def _stay_amplitudes(x):
    if np.any(x[:3] <= 0):
        return np.full(6, 1.0)
    stay = np.array([u[0, 0] for u in _block_unitaries(x)])
    return np.concatenate([stay.real, stay.imag])


def polish_s3(params=PUBLISHED_S3, max_nfev=POLISH_NFEV, tol=POLISH_TOL):
    """Refine a near-solution with Levenberg-Marquardt on the ground-state
    amplitudes left by S3.

    Raises
    ------
    ConvergenceError
        When the objective stays above ``tol``.
    """
    res = optimize.least_squares(_stay_amplitudes,
                                 np.asarray(params, dtype=float),
                                 method='lm', max_nfev=max_nfev,
                                 xtol=1e-15, ftol=1e-15, gtol=1e-15)
    polished = S3Params(*res.x).normalized()
    value = s3_objective(polished).value
    log.debug('polish: objective %.3e after %d evaluations', value, res.nfev)
    if value > tol:
        raise ConvergenceError('polish stopped at objective {0:.3e}'
                               .format(value), best=polished,
                               residuals=res.fun)
    return polished


def _draw_start(rng):
    """Random start on the reference-duration surface."""
    while True:
        a1, a2 = rng.uniform(0.2, 2.8, size=2)
        a3 = REFERENCE_DURATION / 2 - 2 * a1 - 2 * a2
        if 0.2 < a3 <= AREA_MAX:
            break
    xi2, xi3 = rng.uniform(0.0, 2 * np.pi, size=2)
    return np.array([a1, a2, a3, xi2, xi3])


def on_branch(params):
    """Duration within the window around the reference duration."""
    return (abs(params.duration - REFERENCE_DURATION) <=
            BRANCH_WINDOW * REFERENCE_DURATION)


def search_s3(seed=0, restarts=MAX_RESTARTS, max_iter=MAX_ITER, trace=None):
    """Restarted Nelder-Mead search for S3.

    Parameters
    ----------
    seed : int, default 0
        Seeds the start points; equal seeds give equal results.
    restarts : int, default 50
    max_iter : int, default 4000
        Simplex iterations per restart.
    trace : list, default None
        If given, one dict per restart is appended (start, objective,
        duration, evaluations, accepted).

    Returns
    -------
    S3Params
        The first solution below 1e-10 on the reference branch.

    Raises
    ------
    ConvergenceError
        When the restarts run out; ``best`` holds the lowest point found.
    """
    rng = np.random.default_rng(seed)
    best = None
    for k in range(restarts):
        start = _draw_start(rng)
        res = optimize.minimize(_penalized, start, method='Nelder-Mead',
                                options={'maxiter': max_iter,
                                         'maxfev': 2 * max_iter,
                                         'xatol': 1e-10, 'fatol': 1e-14,
                                         'adaptive': True})
        params = S3Params(*res.x).normalized()
        value = float(res.fun)
        if value < 1e-3 and min(params[:3]) > 0:
            try:
                params = polish_s3(params, tol=SOLUTION_TOL)
                value = s3_objective(params).value
            except ConvergenceError:
                log.debug('restart %d: polish failed', k)
        accepted = value < SOLUTION_TOL and on_branch(params)
        if trace is not None:
            trace.append({'restart': k, 'start': [float(s) for s in start],
                          'objective': value,
                          'duration': params.duration,
                          'evaluations': int(res.nfev),
                          'accepted': accepted})
        if accepted:
            log.info('restart %d: solution at T = %.4f', k, params.duration)
            return params
        if value < SOLUTION_TOL:
            log.info('restart %d: solution on another branch (T = %.4f)',
                     k, params.duration)
        if best is None or value < best[0]:
            best = (value, params)
    raise ConvergenceError('no S3 solution on the {0}/Omega branch after {1}'
                           ' restarts'.format(REFERENCE_DURATION, restarts),
                           best=best[1], residuals=[best[0]])


def verify_ccz(params, phi=np.pi, tol=ROBUST_TOL):
    """Check the CC_phi built from S3.

    Evaluates the ideal gate (d = 8), the intensity series of C, and the
    intensity susceptibilities of the gate and of its doubled variant.

    Raises
    ------
    RobustnessError
        When chi_C of the gate or chi_P of the doubled variant exceeds
        ``tol``.
    """
    seq = ccz_sequence(params, phi)
    robust = ccz_robust_sequence(params, phi)
    basis = build_basis(3)
    fidelity = fidelity_triple(propagate(seq).u, seq.target.matrix(basis),
                               qubit_projector(basis))
    basic = susceptibilities(seq, 'intensity')
    doubled = susceptibilities(robust, 'intensity')
    report = CczReport(fidelity=fidelity, infidelity=1.0 - fidelity.F,
                       series=series_fit(seq, 'intensity', 'C', 4),
                       basic=basic, doubled=doubled,
                       duration=seq.nominal_duration,
                       doubled_duration=robust.nominal_duration)
    if abs(basic.chi_c) > tol:
        raise RobustnessError('CC gate is not conditionally robust'
                              ' (chi_C = {0:.3e})'.format(basic.chi_c))
    if abs(doubled.chi_p) > tol:
        raise RobustnessError('doubled CC gate leaks to first order'
                              ' (chi_P = {0:.3e})'.format(doubled.chi_p))
    return report
