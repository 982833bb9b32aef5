# -*- coding: utf-8 -*-
"""

Metrics: fidelity, return probability and conditional fidelity of a
sequence under an error model, their susceptibilities and series
coefficients

"""
import logging
from dataclasses import dataclass, field

import numpy as np

from .core import FitError
from .dynamics import ErrorModel, propagate
from .hilbert import (build_basis, computational_labels, named_state,
                      qubit_indices, qubit_projector, rydberg_projector)
from .protocols import strip_local_phases

log = logging.getLogger(__name__)

METRICS = ('F', 'P', 'C')
DEFAULT_GRID = (0.02, 0.03, 0.045, 0.0675, 0.1, 0.15)
# Duration of Protocol I; longer sequences get a proportionally finer grid.
REFERENCE_TIME = (2 + np.sqrt(2)) * np.pi
PARITY_TOL = 1e-10
COND_LIMIT = 1e10
LEADING_TOL = 1e-4
RICHARDSON_STEPS = (1e-2, 5e-3, 2.5e-3)
CROSS_STEPS = (2e-3, 1e-3)
TINY = 1e-300


@dataclass(frozen=True)
class FidelityReport(object):
    F: float
    P: float
    C: float
    epsilon: float = 0.0
    kind: str = None

    def value(self, metric):
        if metric not in METRICS:
            raise ValueError('metric must be one of {0}'.format(METRICS))
        return getattr(self, metric)


@dataclass(frozen=True)
class SusceptibilityTriple(object):
    """Second derivatives of F, P and C at zero error."""
    chi: float
    chi_p: float
    chi_c: float

    @property
    def gap(self):
        """chi - chi_p - chi_c, zero up to numerical error."""
        return self.chi - self.chi_p - self.chi_c


@dataclass(frozen=True, eq=False)
class SeriesFit(object):
    """Coefficients c_k of metric(eps) = 1 - sum_k c_k eps**k.

    ``orders`` is the fitted basis, which runs past the reported orders;
    ``parity`` is max |metric(eps) - metric(-eps)| over the grid.
    """
    metric: str
    kind: str
    coefficients: dict
    residual: float
    eps_grid: tuple
    parity: float
    orders: tuple = field(repr=False)
    condition: float = field(repr=False, default=0.0)

    def coefficient(self, order):
        return self.coefficients.get(order, 0.0)

    def leading(self, tol=LEADING_TOL):
        """(order, coefficient) of the first term above ``tol``, or
        (None, 0.0) when every reported term vanishes."""
        for order in sorted(self.coefficients):
            if abs(self.coefficients[order]) > tol:
                return order, self.coefficients[order]
        return None, 0.0


def fidelity_triple(u_err, u_ideal, projector, d=None, epsilon=0.0,
                    kind=None):
    """F, P and C of ``u_err`` against ``u_ideal`` on the subspace of
    ``projector``.

    Parameters
    ----------
    u_err, u_ideal : numpy.ndarray
        Unitaries on the same basis.
    projector : numpy.ndarray
        Diagonal 0/1 projector onto the qubit subspace.
    d : int, default None
        Subspace dimension; the trace of the projector when None.

    Returns
    -------
    FidelityReport
    """
    q = np.flatnonzero(np.real(np.diag(projector)) > 0.5)
    if d is None:
        d = len(q)
    block = u_err[np.ix_(q, q)]
    ref = u_ideal[np.ix_(q, q)]
    ret = float(np.sum(np.abs(block) ** 2))
    overlap = float(abs(np.vdot(ref, block)) ** 2)
    fid = (ret + overlap) / (d * (d + 1))
    if ret < TINY:
        log.warning('return probability underflows, C set to 1/(d+1)')
        cond = 1.0 / (d + 1)
    else:
        cond = (1.0 + overlap / ret) / (d + 1)
    return FidelityReport(F=fid, P=ret / d, C=cond, epsilon=epsilon,
                          kind=kind)


def _reference(seq):
    return propagate(seq).u


def evaluate(seq, model=None, reference=None):
    """Metrics of ``seq`` under ``model`` relative to the ideal sequence.

    ``model`` may be a single ErrorModel, several (their shifts add) or
    None.
    """
    basis = build_basis(seq.n_atoms)
    if reference is None:
        reference = _reference(seq)
    u = propagate(seq, model).u
    if isinstance(model, ErrorModel):
        eps, kind = model.epsilon, model.kind
    else:
        eps, kind = 0.0, None
    return fidelity_triple(u, reference, qubit_projector(basis),
                           epsilon=eps, kind=kind)


def metric_derivative(seq, kind, epsilon, reference=None):
    """Metrics and their exact first derivatives at ``epsilon``.

    Returns
    -------
    (FidelityReport, numpy.ndarray)
        The derivative array is (dF, dP, dC).
    """
    basis = build_basis(seq.n_atoms)
    if reference is None:
        reference = _reference(seq)
    report = propagate(seq, ErrorModel(kind, epsilon), with_derivative=True)
    q = qubit_indices(basis)
    d = len(q)
    block = report.u[np.ix_(q, q)]
    dblock = report.du[np.ix_(q, q)]
    ref = reference[np.ix_(q, q)]

    ret = float(np.sum(np.abs(block) ** 2))
    dret = 2 * float(np.real(np.vdot(block, dblock)))
    ov = np.vdot(ref, block)
    dov = 2 * float(np.real(np.conj(ov) * np.vdot(ref, dblock)))

    metrics = fidelity_triple(report.u, reference, qubit_projector(basis),
                              epsilon=epsilon, kind=kind)
    dfid = (dret + dov) / (d * (d + 1))
    dret_avg = dret / d
    dcond = (dfid * metrics.P - metrics.F * dret_avg) / metrics.P ** 2
    return metrics, np.array([dfid, dret_avg, dcond])


def richardson(estimates, ratio=2.0, power=2):
    """Extrapolate estimates with step ratio ``ratio`` whose error is a
    series in h**power, h**(2 power), ..."""
    table = [np.asarray(e, dtype=float) for e in estimates]
    level = 1
    while len(table) > 1:
        factor = ratio ** (power * level)
        table = [(factor * fine - coarse) / (factor - 1)
                 for coarse, fine in zip(table, table[1:])]
        level += 1
    return table[0]


def _step_ratio(steps):
    ratios = [a / b for a, b in zip(steps, steps[1:])]
    if not np.allclose(ratios, ratios[0]):
        raise ValueError('steps must form a geometric sequence')
    return ratios[0]


def susceptibilities(seq, kind, method='derivative',
                     steps=RICHARDSON_STEPS):
    """chi, chi_P and chi_C of a sequence under one error kind.

    Parameters
    ----------
    seq : Sequence
    kind : string
        Error kind.
    method : string, default 'derivative'
        'derivative' differences the exact first derivatives;
        'difference' takes second differences of the metrics. Both are
        Richardson-extrapolated over ``steps``.
    steps : tuple of float
        Geometric sequence of step sizes.

    Returns
    -------
    SusceptibilityTriple
    """
    reference = _reference(seq)
    if method == 'derivative':
        def estimate(h):
            _, up = metric_derivative(seq, kind, h, reference)
            _, down = metric_derivative(seq, kind, -h, reference)
            return (up - down) / (2 * h)
    elif method == 'difference':
        def metrics(eps):
            r = evaluate(seq, ErrorModel(kind, eps), reference)
            return np.array([r.F, r.P, r.C])
        center = metrics(0.0)

        def estimate(h):
            return (metrics(h) - 2 * center + metrics(-h)) / h ** 2
    else:
        raise ValueError("method must be 'derivative' or 'difference'")
    chi = richardson([estimate(h) for h in steps], _step_ratio(steps))
    return SusceptibilityTriple(chi=float(chi[0]), chi_p=float(chi[1]),
                                chi_c=float(chi[2]))


def default_grid(seq):
    """Base grid, shrunk for sequences longer than Protocol I."""
    scale = min(1.0, REFERENCE_TIME / seq.nominal_duration)
    return tuple(e * scale for e in DEFAULT_GRID)


def _solve(eps, target, orders):
    """Least squares of target = sum_k c_k eps**(k - orders[0]) on a
    column-scaled basis."""
    scale = np.max(eps)
    powers = np.array(orders) - orders[0]
    design = np.column_stack([(eps / scale) ** p for p in powers])
    condition = float(np.linalg.cond(design))
    if condition > COND_LIMIT:
        raise FitError('series fit condition number {0:.3g} exceeds {1:.3g};'
                       ' change the grid'.format(condition, COND_LIMIT))
    sol = np.linalg.lstsq(design, target, rcond=None)[0]
    residual = float(np.max(np.abs(design @ sol - target) *
                            eps ** orders[0]))
    return sol / scale ** powers, residual, condition


def _fit(values, eps, max_order, metric, kind):
    half = len(eps) // 2
    pos = eps[half:]
    mirrored = values[:half][::-1]
    parity = float(np.max(np.abs(mirrored - values[half:])))

    # odd orders drop out of the even part exactly
    even = 1.0 - 0.5 * (values[half:] + mirrored)
    orders = tuple(range(2, max_order + 5, 2))
    coeffs, residual, condition = _solve(pos, even / pos ** 2, orders)
    found = dict(zip(orders, coeffs))

    if parity >= PARITY_TOL:
        log.debug('%s under %s has odd orders (parity %.2e)', metric, kind,
                  parity)
        odd = 0.5 * (mirrored - values[half:])
        odd_orders = tuple(range(3, max_order + 4, 2))
        odd_coeffs, odd_residual, odd_condition = _solve(
            pos, odd / pos ** 3, odd_orders)
        found.update(zip(odd_orders, odd_coeffs))
        orders = tuple(sorted(orders + odd_orders))
        residual = max(residual, odd_residual)
        condition = max(condition, odd_condition)

    return SeriesFit(
        metric=metric, kind=kind,
        coefficients={k: float(c) for k, c in sorted(found.items())
                      if k <= max_order},
        residual=residual, eps_grid=tuple(pos), parity=parity,
        orders=orders, condition=condition)


def series_fits(seq, kind, max_order=4, eps_grid=None):
    """Series fits of F, P and C from one set of samples.

    Parameters
    ----------
    seq : Sequence
    kind : string
        Error kind.
    max_order : int, default 4
        Highest reported order, 2, 4 or 6.
    eps_grid : sequence of float, default None
        Positive grid points; mirrored to negative values. Defaults to
        :func:`default_grid`.

    Returns
    -------
    dict
        metric -> SeriesFit
    """
    if max_order not in (2, 4, 6):
        raise ValueError('max_order must be 2, 4 or 6, got {0}'
                         .format(max_order))
    grid = np.sort(np.asarray(eps_grid if eps_grid is not None
                              else default_grid(seq), dtype=float))
    if np.any(grid <= 0):
        raise ValueError('eps_grid must hold positive values')
    eps = np.concatenate([-grid[::-1], grid])
    reference = _reference(seq)
    reports = [evaluate(seq, ErrorModel(kind, e), reference) for e in eps]
    return {m: _fit(np.array([r.value(m) for r in reports]), eps, max_order,
                    m, kind)
            for m in METRICS}


def series_fit(seq, kind, metric='F', max_order=4, eps_grid=None):
    """Series fit of one metric; see :func:`series_fits`."""
    if metric not in METRICS:
        raise ValueError('metric must be one of {0}'.format(METRICS))
    return series_fits(seq, kind, max_order, eps_grid)[metric]


def cross_susceptibility(seq, kind_i, kind_j, steps=CROSS_STEPS):
    """Mixed second derivative of F in two error parameters at zero."""
    reference = _reference(seq)

    def fid(a, b):
        models = (ErrorModel(kind_i, a), ErrorModel(kind_j, b))
        return evaluate(seq, models, reference).F

    def estimate(h):
        return (fid(h, h) - fid(h, -h) - fid(-h, h) + fid(-h, -h)) / \
            (4 * h * h)

    return float(richardson([estimate(h) for h in steps], _step_ratio(steps)))


def robustness_hessian(seq, kinds):
    """Matrix of second derivatives of F over several error kinds."""
    kinds = list(kinds)
    hess = np.zeros((len(kinds), len(kinds)))
    for i, ki in enumerate(kinds):
        for j in range(i, len(kinds)):
            hess[i, j] = hess[j, i] = cross_susceptibility(seq, ki, kinds[j])
    return hess


def multivariate_gap(seq, kind_i, kind_j):
    """d_ii F * d_jj F - (d_ij F)**2, which is non-negative at a
    fidelity maximum."""
    hess = robustness_hessian(seq, (kind_i, kind_j))
    return float(hess[0, 0] * hess[1, 1] - hess[0, 1] ** 2)


def _derivative(seq, kind):
    return propagate(seq, ErrorModel(kind, 0.0), with_derivative=True).du


def leakage_amplitude(seq, kind):
    """||Q dU P|| at zero error: first-order leakage into the coupled
    Rydberg states."""
    basis = build_basis(seq.n_atoms)
    du = _derivative(seq, kind)
    return float(np.linalg.norm(rydberg_projector(basis) @ du @
                                qubit_projector(basis)))


def singlet_amplitude(seq, kind):
    """|<A| dU |11>| at zero error (two atoms)."""
    basis = build_basis(seq.n_atoms)
    du = _derivative(seq, kind)
    return float(abs(np.vdot(named_state(basis, 'A'),
                             du @ named_state(basis, '11'))))


def diagonal_derivative(seq, kind):
    """<z| dU |z> at zero error for every computational z, as a dict."""
    basis = build_basis(seq.n_atoms)
    du = _derivative(seq, kind)
    return {label: complex(du[i, i]) for i, label in
            zip(qubit_indices(basis), computational_labels(basis))}


def gate_infidelity(seq):
    """1 - F of the ideal sequence against its target gate; targets that
    are meant up to single-qubit phases are compared after stripping
    them."""
    basis = build_basis(seq.n_atoms)
    u = propagate(seq).u
    if seq.target.local_equivalent:
        u = strip_local_phases(u, basis, seq.target)
    report = fidelity_triple(u, seq.target.matrix(basis),
                             qubit_projector(basis))
    return 1.0 - report.F
