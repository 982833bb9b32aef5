# -*- coding: utf-8 -*-
'''
Test gatecheck.metrics
----------------------

'''
import numpy as np
import pytest

from gatecheck import catalog, metrics
from gatecheck.core import FitError
from gatecheck.dynamics import ErrorModel, propagate
from gatecheck.hilbert import build_basis, qubit_projector
from gatecheck.metrics import (cross_susceptibility, default_grid, evaluate,
                               fidelity_triple, metric_derivative,
                               multivariate_gap, richardson,
                               robustness_hessian, series_fit,
                               series_fits, susceptibilities)
from gatecheck.protocols import protocol_I, protocol_II, protocol_III
from gatecheck.tables import closed_forms


class TestFidelityTriple(object):
    """Test the F, P, C formulas"""

    def test_identical(self):
        """Test a perfect gate"""
        u = propagate(protocol_I()).u
        report = fidelity_triple(u, u, qubit_projector(build_basis(2)))
        assert (report.F, report.P, report.C) == \
            pytest.approx((1.0, 1.0, 1.0))

    def test_global_phase(self):
        """Test F, P and C ignore a global phase"""
        seq = protocol_I()
        ideal = propagate(seq).u
        u = propagate(seq, ErrorModel('intensity', 0.08)).u
        proj = qubit_projector(build_basis(2))
        rng = np.random.default_rng(3)
        base = fidelity_triple(u, ideal, proj)
        for theta in rng.uniform(0, 2 * np.pi, size=3):
            other = fidelity_triple(np.exp(1j * theta) * u, ideal, proj)
            assert (other.F, other.P, other.C) == \
                pytest.approx((base.F, base.P, base.C), abs=1e-14)

    def test_ordering(self):
        """Test 0 <= F <= P <= 1 and C = F / P"""
        seq = protocol_III()
        for kind in ('intensity', 'sym_detuning', 'antisym_detuning'):
            r = evaluate(seq, ErrorModel(kind, 0.12))
            assert 0 <= r.F <= r.P <= 1
            assert r.C == pytest.approx(r.F / r.P)

    def test_intensity_value(self):
        """Test Protocol I at five percent intensity error"""
        r = evaluate(protocol_I(), ErrorModel('intensity', 0.05))
        assert r.F == pytest.approx(1 - 1.878 * 0.05 ** 2, abs=5e-4)
        assert r.kind == 'intensity'
        assert r.epsilon == 0.05

    def test_positional_phase_IIa(self):
        """Test II.a ignores a phase shift at the inversion"""
        r = evaluate(catalog.build('IIa'),
                     ErrorModel('positional_phase', 0.3))
        assert r.F == pytest.approx(1.0, abs=1e-10)

    def test_positional_phase_Ia(self):
        """Test I.a is sensitive to the same shift"""
        r = evaluate(catalog.build('Ia'),
                     ErrorModel('positional_phase', 0.3))
        assert r.F < 1 - 1e-3

    def test_value(self):
        """Test metric lookup by name"""
        r = evaluate(protocol_I())
        assert r.value('C') == r.C
        with pytest.raises(ValueError):
            r.value('G')


class TestSusceptibilities(object):
    """Test second derivatives at zero error"""

    def test_protocol_I_intensity(self):
        """Test conditional robustness of Protocol I"""
        chi = susceptibilities(protocol_I(), 'intensity')
        assert abs(chi.chi_c) < 1e-6
        assert chi.chi == pytest.approx(-3.756, abs=0.01)

    def test_jaksch_intensity(self):
        """Test the addressed gate's susceptibility"""
        chi = susceptibilities(catalog.build('jaksch'), 'intensity')
        assert chi.chi == pytest.approx(-np.pi ** 2, abs=1e-4)

    def test_two_paths_agree(self):
        """Test exact-derivative and difference paths"""
        seq = protocol_I()
        a = susceptibilities(seq, 'sym_detuning')
        b = susceptibilities(seq, 'sym_detuning', method='difference')
        assert (a.chi, a.chi_p, a.chi_c) == \
            pytest.approx((b.chi, b.chi_p, b.chi_c), abs=1e-6)

    @pytest.mark.parametrize('name, kind', [
        ('I', 'intensity'), ('II', 'sym_detuning'),
        ('III', 'antisym_detuning'), ('levine', 'intensity'),
        ('jaksch', 'sym_detuning'), ('Ia', 'positional_phase')])
    def test_sum_rule(self, name, kind):
        """Test chi = chi_P + chi_C"""
        chi = susceptibilities(catalog.build(name), kind)
        assert abs(chi.gap) < 1e-6

    @pytest.mark.parametrize('name, kind, fields', [
        ('I', 'intensity', ('chi_c',)),
        ('II', 'intensity', ('chi', 'chi_p', 'chi_c')),
        ('I', 'sym_detuning', ('chi_p',)),
        ('IIa', 'sym_detuning', ('chi', 'chi_p', 'chi_c')),
        ('III', 'sym_detuning', ('chi', 'chi_p', 'chi_c')),
        ('III', 'antisym_detuning', ('chi', 'chi_p', 'chi_c')),
        ('Ia', 'sym_detuning', ('chi_c',)),
        ('Ia', 'antisym_detuning', ('chi_c',))])
    def test_robust_pairs(self, name, kind, fields):
        """Test the vanishing susceptibilities of the robust protocols"""
        chi = susceptibilities(catalog.build(name), kind)
        for field in fields:
            assert abs(getattr(chi, field)) < 1e-6

    @pytest.mark.parametrize('name', ['I', 'Ia', 'II', 'IIa', 'IIb', 'III'])
    def test_symmetric_implies_antisymmetric(self, name):
        """Test conditional robustness carries over to opposite detunings"""
        seq = catalog.build(name)
        if abs(susceptibilities(seq, 'sym_detuning').chi_c) < 1e-6:
            assert abs(susceptibilities(seq, 'antisym_detuning').chi_c) < \
                1e-6

    def test_bad_method(self):
        """Test unknown methods and steps"""
        with pytest.raises(ValueError):
            susceptibilities(protocol_I(), 'intensity', method='spline')
        with pytest.raises(ValueError):
            susceptibilities(protocol_I(), 'intensity',
                             steps=(1e-2, 4e-3, 1e-3))

    def test_derivative_matches_difference(self):
        """Test the analytic first derivative of the metrics"""
        seq = protocol_I()
        h = 1e-6
        _, grad = metric_derivative(seq, 'intensity', 0.05)
        up = evaluate(seq, ErrorModel('intensity', 0.05 + h))
        down = evaluate(seq, ErrorModel('intensity', 0.05 - h))
        numeric = np.array([up.F - down.F, up.P - down.P,
                            up.C - down.C]) / (2 * h)
        assert grad == pytest.approx(numeric, abs=1e-7)

    def test_richardson(self):
        """Test extrapolation removes even error terms"""
        def f(h):
            return 2.0 + 3 * h ** 2 + 5 * h ** 4
        assert richardson([f(0.1), f(0.05), f(0.025)]) == \
            pytest.approx(2.0, abs=1e-12)


class TestSeriesFit(object):
    """Test expansion coefficients"""

    def test_protocol_II_return(self):
        """Test the sixth-order return probability of Protocol II"""
        fit = series_fit(protocol_II(), 'intensity', 'P', max_order=6)
        assert fit.coefficient(6) == pytest.approx(1.944, rel=1e-2)
        assert fit.coefficient(6) == pytest.approx(closed_forms()['II_P6'],
                                                   rel=5e-3)
        assert abs(fit.coefficient(2)) < 1e-4
        assert abs(fit.coefficient(4)) < 1e-4
        assert fit.leading()[0] == 6

    def test_odd_terms_kept_apart(self):
        """Test odd orders do not bias the even coefficients"""
        grid = np.asarray(metrics.DEFAULT_GRID)
        eps = np.concatenate([-grid[::-1], grid])
        values = 1 - (0.5 * eps ** 3 + 1.944 * eps ** 6 + 4.0 * eps ** 5)
        fit = metrics._fit(values, eps, 6, 'P', 'intensity')
        assert fit.parity > metrics.PARITY_TOL
        assert fit.coefficient(6) == pytest.approx(1.944, rel=1e-3)
        assert fit.coefficient(3) == pytest.approx(0.5, rel=1e-3)
        assert abs(fit.coefficient(2)) < 1e-6
        assert abs(fit.coefficient(4)) < 1e-4
        assert 3 in fit.orders

        even = 1 - 1.944 * eps ** 6
        plain = metrics._fit(even, eps, 6, 'P', 'intensity')
        assert all(k % 2 == 0 for k in plain.orders)
        assert plain.coefficient(6) == pytest.approx(fit.coefficient(6),
                                                     rel=1e-6)

    def test_protocol_I_antisym(self):
        """Test Protocol I under opposite detunings"""
        fit = series_fit(protocol_I(1), 'antisym_detuning', 'F')
        assert fit.coefficient(2) == pytest.approx(17.637, rel=1e-2)

    def test_protocol_III_antisym(self):
        """Test the conditional fidelity of Protocol III"""
        fit = series_fit(protocol_III(1), 'antisym_detuning', 'C')
        assert fit.coefficient(4) == pytest.approx(163, rel=2e-2)
        assert fit.leading()[0] == 4

    def test_closed_forms(self):
        """Test the closed forms against the fits"""
        forms = closed_forms()
        fits = series_fits(protocol_I(), 'intensity')
        assert fits['F'].coefficient(2) == pytest.approx(forms['I_F2'],
                                                         abs=1e-3)
        assert fits['C'].coefficient(4) == pytest.approx(forms['I_C4'],
                                                         rel=5e-3)

    @pytest.mark.parametrize('name', ['I', 'jaksch'])
    @pytest.mark.parametrize('kind', ['sym_detuning', 'antisym_detuning'])
    def test_detuning_parity(self, name, kind):
        """Test detuning errors give even metrics on palindromic
        sequences"""
        fits = series_fits(catalog.build(name), kind)
        for fit in fits.values():
            assert fit.parity < 1e-10
            assert all(k % 2 == 0 for k in fit.orders)

    def test_grid(self):
        """Test long sequences get a finer grid"""
        assert default_grid(protocol_I()) == \
            pytest.approx((0.02, 0.03, 0.045, 0.0675, 0.1, 0.15))
        assert max(default_grid(protocol_III())) == pytest.approx(0.0375)
        grid = (0.03, 0.05, 0.08, 0.1)
        fit = series_fit(protocol_I(), 'sym_detuning', eps_grid=grid)
        assert fit.eps_grid == pytest.approx(grid)
        assert fit.coefficient(2) == pytest.approx(4.314, rel=1e-2)

    def test_bad_arguments(self):
        """Test argument checks"""
        with pytest.raises(ValueError):
            series_fit(protocol_I(), 'intensity', max_order=5)
        with pytest.raises(ValueError):
            series_fit(protocol_I(), 'intensity', metric='G')
        with pytest.raises(ValueError):
            series_fit(protocol_I(), 'intensity', eps_grid=(-0.1, 0.1))

    def test_conditioning_guard(self):
        """Test a clustered grid is rejected"""
        grid = (0.1, 0.1 + 1e-9, 0.1 + 2e-9, 0.1 + 3e-9)
        with pytest.raises(FitError):
            series_fit(protocol_I(), 'sym_detuning', eps_grid=grid)


class TestCrossSusceptibility(object):
    """Test mixed second derivatives"""

    def test_same_kind(self):
        """Test the diagonal reduces to chi"""
        seq = protocol_I()
        cross = cross_susceptibility(seq, 'intensity', 'intensity')
        chi = susceptibilities(seq, 'intensity').chi
        assert cross == pytest.approx(chi, rel=1e-5)

    @pytest.mark.parametrize('name', ['I', 'IIa', 'III'])
    @pytest.mark.parametrize('pair', [('intensity', 'sym_detuning'),
                                      ('sym_detuning', 'antisym_detuning'),
                                      ('intensity', 'antisym_detuning')])
    def test_multivariate_inequality(self, name, pair):
        """Test the mixed term is bounded by the diagonal ones"""
        seq = catalog.build(name)
        d_ii = cross_susceptibility(seq, pair[0], pair[0])
        d_jj = cross_susceptibility(seq, pair[1], pair[1])
        gap = multivariate_gap(seq, *pair)
        assert gap >= -1e-6 * max(abs(d_ii), abs(d_jj), 1.0)

    def test_hessian(self):
        """Test the Hessian is symmetric with chi on the diagonal"""
        seq = protocol_I()
        kinds = ('intensity', 'sym_detuning')
        hess = robustness_hessian(seq, kinds)
        assert hess.shape == (2, 2)
        assert hess[0, 1] == hess[1, 0]
        assert hess[0, 0] == pytest.approx(
            susceptibilities(seq, 'intensity').chi, rel=1e-5)
        assert multivariate_gap(seq, *kinds) == pytest.approx(
            hess[0, 0] * hess[1, 1] - hess[0, 1] ** 2)

    def test_symmetric_antisymmetric_decouple(self):
        """Test atom exchange removes the sym/antisym cross term"""
        cross = cross_susceptibility(protocol_I(), 'sym_detuning',
                                     'antisym_detuning')
        assert abs(cross) < 1e-5
