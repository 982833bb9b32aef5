# -*- coding: utf-8 -*-
'''
Test gatecheck.dynamics
-----------------------

'''
from dataclasses import replace

import numpy as np
import pytest

from gatecheck.core import UnsupportedError
from gatecheck.dynamics import (DriveSpec, ErrorModel, PulseSpec,
                                apply_error, bloch_trajectory,
                                build_hamiltonian, enclosed_phase,
                                hamiltonian_derivative,
                                propagate, pulse_unitary)
from gatecheck.hilbert import AtomLevel, build_basis, named_state
from gatecheck.protocols import (Sequence, protocol_I, protocol_Ia,
                                 protocol_III)
from gatecheck.refgates import jaksch_sequence


def _block_ids(basis):
    """Atoms sitting in |1> or |r>; the drive never changes this set."""
    return [tuple(level >= AtomLevel.q1 for level in cfg)
            for cfg in basis.configs]


class TestHamiltonian(object):
    """Test the blockaded Hamiltonian"""

    def test_hermitian_couplings(self):
        """Test couplings of the drive"""
        basis = build_basis(2)
        ham = build_hamiltonian(basis, DriveSpec(phase=0.3), (0.0, 0.0))
        assert np.allclose(ham, ham.conj().T)
        half = 0.5 * np.exp(0.3j)
        assert ham[basis.position('01'), basis.position('0r')] == \
            pytest.approx(half)
        w = named_state(basis, '11') @ ham @ named_state(basis, 'W')
        assert w == pytest.approx(np.sqrt(2) * half)
        assert np.allclose(ham[basis.position('00')], 0)

    def test_detunings(self):
        """Test opposite detunings couple W and the singlet"""
        basis = build_basis(2)
        ham = build_hamiltonian(basis, DriveSpec(rabi=0.0), (0.2, -0.2))
        coupling = np.vdot(named_state(basis, 'W'),
                           ham @ named_state(basis, 'A'))
        assert abs(coupling) == pytest.approx(0.2)
        assert ham[basis.position('r0'), basis.position('r0')] == \
            pytest.approx(-0.2)

    def test_mask(self):
        """Test undriven atoms do not couple"""
        basis = build_basis(2)
        ham = build_hamiltonian(basis, DriveSpec(mask=(True, False)),
                                (0.0, 0.0))
        assert ham[basis.position('01'), basis.position('0r')] == 0
        assert ham[basis.position('10'), basis.position('r0')] == 0.5

    def test_bad_detunings(self):
        """Test detuning length is checked"""
        with pytest.raises(ValueError, match='detunings'):
            build_hamiltonian(build_basis(3), DriveSpec(), (0.0, 0.0))


class TestPulse(object):
    """Test single pulses"""

    def test_zero_duration(self):
        """Test a zero duration gives the identity"""
        basis = build_basis(2)
        ham = build_hamiltonian(basis, DriveSpec(), (0.0, 0.0))
        assert np.allclose(pulse_unitary(ham, 0.0), np.eye(basis.dim))

    def test_pi_pulse(self):
        """Test a pi pulse on a single coupled atom"""
        basis = build_basis(2)
        ham = build_hamiltonian(basis, DriveSpec(), (0.0, 0.0))
        u = pulse_unitary(ham, np.pi)
        assert u[basis.position('0r'), basis.position('01')] == \
            pytest.approx(-1j)
        # |11> rotates sqrt(2) times faster
        i = basis.position('11')
        assert u[i, i] == pytest.approx(np.cos(np.pi / np.sqrt(2)))

    def test_not_hermitian(self):
        """Test non-Hermitian input is rejected"""
        with pytest.raises(ValueError, match='Hermitian'):
            pulse_unitary(np.array([[0, 1], [0, 0]], dtype=complex), 1.0)

    def test_bad_pulses(self):
        """Test pulse validation"""
        with pytest.raises(ValueError):
            PulseSpec(0.0)
        with pytest.raises(ValueError):
            PulseSpec(1.0, doppler_sign=0)
        with pytest.raises(ValueError):
            DriveSpec(rabi=-1.0)
        assert PulseSpec(np.pi, DriveSpec(rabi=2.0)).duration == \
            pytest.approx(np.pi / 2)


class TestErrorModels(object):
    """Test how error models deform a pulse"""

    def test_intensity(self):
        """Test intensity scales the Rabi frequency"""
        drive, det = apply_error(PulseSpec(1.0), ErrorModel('intensity', 0.1))
        assert drive.rabi == pytest.approx(1.1)
        assert det == (0.0, 0.0)

    def test_doppler_sign(self):
        """Test the Doppler sign flips detuning errors"""
        pulse = PulseSpec(1.0, doppler_sign=-1)
        _, det = apply_error(pulse, ErrorModel('sym_detuning', 0.05))
        assert det == pytest.approx((-0.05, -0.05))
        _, det = apply_error(pulse, ErrorModel('antisym_detuning', 0.05))
        assert det == pytest.approx((-0.05, 0.05))

    def test_positional_phase(self):
        """Test the phase error only after an inversion"""
        pulse = PulseSpec(1.0, DriveSpec(phase=0.5))
        model = ErrorModel('positional_phase', 0.1)
        assert apply_error(pulse, model)[0].phase == pytest.approx(0.5)
        assert apply_error(pulse, model, after_inversion=True)[0].phase == \
            pytest.approx(0.6)

    def test_combined(self):
        """Test several models add"""
        models = (ErrorModel('sym_detuning', 0.1),
                  ErrorModel('antisym_detuning', 0.02))
        _, det = apply_error(PulseSpec(1.0), models)
        assert det == pytest.approx((0.12, 0.08))

    def test_masked_detuning(self):
        """Test detuning errors skip atoms a pulse does not drive"""
        pulse = PulseSpec(1.0, DriveSpec(mask=(False, True)))
        _, det = apply_error(pulse, ErrorModel('sym_detuning', 0.1))
        assert det == pytest.approx((0.0, 0.1))
        _, det = apply_error(pulse, ErrorModel('antisym_detuning', 0.1))
        assert det == pytest.approx((0.0, -0.1))
        basis = build_basis(2)
        dham = hamiltonian_derivative(basis, pulse,
                                      ErrorModel('sym_detuning', 0.0))
        assert dham[basis.position('r0'), basis.position('r0')] == 0
        assert dham[basis.position('0r'), basis.position('0r')] == \
            pytest.approx(-1.0)

    def test_antisym_three_atoms(self):
        """Test the antisymmetric model is two-atom only"""
        with pytest.raises(UnsupportedError):
            apply_error(PulseSpec(1.0), ErrorModel('antisym_detuning', 0.1),
                        n_atoms=3)

    def test_names(self):
        """Test short names of error kinds"""
        assert ErrorModel.from_name('sym', 0.1).kind == 'sym_detuning'
        assert ErrorModel.from_name('phase').kind == 'positional_phase'
        with pytest.raises(ValueError):
            ErrorModel.from_name('laser')
        with pytest.raises(ValueError):
            ErrorModel('laser')


class TestPropagate(object):
    """Test sequence propagation"""

    def test_protocol_one_is_cz(self):
        """Test the ideal Protocol I unitary on the qubit states"""
        basis = build_basis(2)
        u = propagate(protocol_I()).u
        for label, sign in (('00', 1), ('01', -1), ('10', -1), ('11', -1)):
            i = basis.position(label)
            assert u[i, i] == pytest.approx(sign, abs=1e-12)
        assert propagate(protocol_I()).total_time == \
            pytest.approx((2 + np.sqrt(2)) * np.pi)

    def test_s_block(self):
        """Test S carries qubit states to their Rydberg partners"""
        basis = build_basis(2)
        seq = protocol_I()
        s = propagate(Sequence('S', seq.pulses[:3])).u
        assert abs(s[basis.position('0r'), basis.position('01')]) == \
            pytest.approx(1.0)
        assert abs(np.vdot(named_state(basis, 'W'),
                           s @ named_state(basis, '11'))) == \
            pytest.approx(1.0)

    @pytest.mark.parametrize('kind', ['intensity', 'sym_detuning',
                                      'antisym_detuning',
                                      'positional_phase'])
    @pytest.mark.parametrize('eps', [-0.3, 0.3])
    def test_unitary(self, kind, eps):
        """Test unitarity under errors"""
        u = propagate(protocol_Ia(), ErrorModel(kind, eps)).u
        assert np.allclose(u.conj().T @ u, np.eye(8), atol=1e-12)
        assert abs(u[0, 0]) == pytest.approx(1.0)

    @pytest.mark.parametrize('kind', ['intensity', 'sym_detuning',
                                      'antisym_detuning'])
    def test_block_structure(self, kind):
        """Test errors never mix atoms between |0> and the rest"""
        basis = build_basis(2)
        u = propagate(protocol_I(), ErrorModel(kind, 0.2)).u
        ids = _block_ids(basis)
        for j in range(basis.dim):
            for k in range(basis.dim):
                if ids[j] != ids[k]:
                    assert abs(u[j, k]) < 1e-14

    def test_split_pulses(self):
        """Test splitting a pulse in two leaves the unitary unchanged"""
        seq = protocol_I()
        halves = []
        for p in seq.pulses:
            halves.extend([replace(p, area=p.area / 2)] * 2)
        split = Sequence('split', halves)
        model = ErrorModel('sym_detuning', 0.07)
        assert np.allclose(propagate(seq, model).u,
                           propagate(split, model).u, atol=1e-12)

    @pytest.mark.parametrize('kind', ['intensity', 'sym_detuning',
                                      'antisym_detuning',
                                      'positional_phase'])
    def test_derivative(self, kind):
        """Test dU against central differences"""
        seq = protocol_Ia(variant=2)
        eps, h = 0.04, 1e-5
        report = propagate(seq, ErrorModel(kind, eps), with_derivative=True)
        up = propagate(seq, ErrorModel(kind, eps + h)).u
        down = propagate(seq, ErrorModel(kind, eps - h)).u
        numeric = (up - down) / (2 * h)
        scale = max(np.linalg.norm(report.du), 1.0)
        assert np.linalg.norm(report.du - numeric) < 1e-6 * scale

    def test_derivative_needs_one_model(self):
        """Test with_derivative rejects several models"""
        with pytest.raises(ValueError):
            propagate(protocol_I(), None, with_derivative=True)

    def test_intensity_diagonal(self):
        """Test Protocol I picks up no first-order intensity phase"""
        basis = build_basis(2)
        du = propagate(protocol_I(), ErrorModel('intensity', 0.0),
                       with_derivative=True).du
        for label in ('00', '11'):
            i = basis.position(label)
            assert abs(du[i, i]) < 1e-8

    def test_jaksch_exact(self):
        """Test the addressed gate is exactly CZ"""
        u = propagate(jaksch_sequence()).u
        basis = build_basis(2)
        for label, sign in (('00', 1), ('01', -1), ('10', -1), ('11', -1)):
            i = basis.position(label)
            assert u[i, i] == pytest.approx(sign, abs=1e-12)


class TestTrajectory(object):
    """Test Bloch trajectories and enclosed phases"""

    def test_closed_loop(self):
        """Test a Protocol I trajectory starts and ends at the south pole"""
        points = bloch_trajectory(protocol_I(), '11', 100)
        assert len(points) == 600
        assert (points[0].x, points[0].y, points[0].z) == \
            pytest.approx((0, 0, -1), abs=1e-12)
        assert points[-1].z == pytest.approx(-1, abs=1e-9)
        # S ends on the north pole
        assert points[299].z == pytest.approx(1, abs=1e-9)
        assert points[0].subsystem == '11|1r+r1'
        for p in points:
            assert p.x ** 2 + p.y ** 2 + p.z ** 2 == pytest.approx(1.0)

    def test_times(self):
        """Test sample times are cumulative"""
        seq = protocol_I()
        points = bloch_trajectory(seq, '01', 1)
        assert len(points) == 6
        assert points[-1].time == pytest.approx(seq.nominal_duration)

    def test_bad_initial(self):
        """Test states without a Rydberg partner or outside two levels"""
        with pytest.raises(ValueError):
            bloch_trajectory(protocol_I(), '00')
        with pytest.raises(ValueError, match='two-level'):
            bloch_trajectory(jaksch_sequence(), '11')
        with pytest.raises(ValueError):
            bloch_trajectory(protocol_I(), '01', 0)

    @pytest.mark.parametrize('phi', [np.pi / 2, 3 * np.pi / 4, np.pi])
    def test_enclosed_phase(self, phi):
        """Test the enclosed phase equals the controlled phase"""
        seq = protocol_I(1, phi)
        assert enclosed_phase(seq, '01') == pytest.approx(phi, abs=1e-9)
        assert enclosed_phase(seq, '11') == pytest.approx(phi, abs=1e-9)

    def test_long_sequence(self):
        """Test the four-gate protocol also closes"""
        points = bloch_trajectory(protocol_III(), '01', 2)
        assert points[-1].z == pytest.approx(-1, abs=1e-9)
