# -*- coding: utf-8 -*-
"""

Refgates: reference CZ gates to compare the global protocols against

The locally addressed pi / 2 pi / pi gate, and a two-pulse global gate
with a fixed detuning whose parameters are recovered by calibration.

"""
import functools
import logging
from dataclasses import dataclass

import numpy as np
from scipy import optimize

from .core import ConvergenceError
from .dynamics import DriveSpec, PulseSpec, propagate
from .hilbert import build_basis, named_state
from .protocols import Sequence, TargetGate, wrap

log = logging.getLogger(__name__)

# (detuning, area, phase jump) on the 8.59/Omega branch.
LEVINE_SEED = (0.377, 4.293, 3.902)
LEVINE_TIME = 8.59
LEVINE_TIME_TOL = 0.01
CALIBRATION_TOL = 1e-10


@dataclass(frozen=True)
class LevineParams(object):
    """Detuning (units of Omega), area of each pulse and the laser phase
    of the second pulse."""
    detuning: float
    area: float
    jump: float

    @property
    def total_time(self):
        return 2 * self.area

    def astuple(self):
        return (self.detuning, self.area, self.jump)


def jaksch_sequence():
    """pi on atom 1, 2 pi on atom 2, pi on atom 1."""
    pulses = (PulseSpec(np.pi, DriveSpec(mask=(True, False))),
              PulseSpec(2 * np.pi, DriveSpec(mask=(False, True))),
              PulseSpec(np.pi, DriveSpec(mask=(True, False))))
    return Sequence('jaksch', pulses, 2, 1,
                    TargetGate('CPHASE', np.pi, local_equivalent=True))


def levine_sequence(params=None):
    """Two detuned global pulses of equal area, the second with laser
    phase ``params.jump``. Calibrates when ``params`` is None."""
    if params is None:
        params = levine_calibrate()
    pulses = (PulseSpec(params.area, DriveSpec(detuning=params.detuning)),
              PulseSpec(params.area, DriveSpec(phase=wrap(params.jump),
                                               detuning=params.detuning)))
    return Sequence('levine', pulses, 2, 1,
                    TargetGate('CPHASE', np.pi, local_equivalent=True))


def _residuals(x):
    params = LevineParams(*x)
    if params.area <= 0:
        return np.full(5, 1e3)
    basis = build_basis(2)
    u = propagate(levine_sequence(params)).u
    leak01 = u[basis.position('0r'), basis.position('01')]
    leak11 = np.vdot(named_state(basis, 'W'), u[:, basis.position('11')])
    phi01 = np.angle(u[basis.position('01'), basis.position('01')])
    phi11 = np.angle(u[basis.position('11'), basis.position('11')])
    closure = np.angle(np.exp(1j * (2 * phi01 - phi11 - np.pi)))
    return np.array([leak01.real, leak01.imag, leak11.real, leak11.imag,
                     closure])


@functools.lru_cache(maxsize=8)
def levine_calibrate(seed=LEVINE_SEED, tol=CALIBRATION_TOL):
    """Solve for the two-pulse gate parameters.

    Both trajectories (``|01>`` and ``|11>``) must close and the qubit
    phases must satisfy 2 phi01 - phi11 = pi (mod 2 pi). The solve is a
    damped Gauss-Newton iteration from ``seed``.

    Returns
    -------
    LevineParams

    Raises
    ------
    ConvergenceError
        When the residuals stay above ``tol`` or the solution is off the
        8.59/Omega branch.
    """
    res = optimize.least_squares(_residuals, np.asarray(seed, dtype=float),
                                 method='lm', xtol=1e-15, ftol=1e-15,
                                 gtol=1e-15)
    norm = float(np.linalg.norm(res.fun))
    params = LevineParams(float(res.x[0]), float(res.x[1]),
                          wrap(res.x[2]))
    log.debug('levine calibration: %s, residual %.3e after %d evaluations',
              params, norm, res.nfev)
    if norm > tol:
        raise ConvergenceError('levine calibration did not converge',
                               best=params, residuals=res.fun)
    if abs(params.total_time - LEVINE_TIME) > LEVINE_TIME_TOL:
        raise ConvergenceError('levine calibration left the {0}/Omega branch'
                               ' (T = {1:.4f})'.format(LEVINE_TIME,
                                                       params.total_time),
                               best=params, residuals=res.fun)
    return params
