import math

import numpy as np
import pytest

from mpemba_qsim import linalg, metrics, tls
from mpemba_qsim.errors import DimensionError, NoCrossingError, StateError, TruncationError
from mpemba_qsim.states import (
    BathThermal,
    BlochVector,
    ZERO_TEMPERATURE,
    bloch_density_matrix,
)

from conftest import random_bloch

EXCITED = BlochVector(0.0, 0.0, 1.0)
TILTED = BlochVector(0.5, 0.5, 0.5)


class TestPairEvolve:
    def test_initial_identity(self):
        rho = tls.tls_pair_evolve(EXCITED, ZERO_TEMPERATURE, 1.0)
        assert np.max(np.abs(rho - np.diag([1.0, 0.0]))) == 0.0

    def test_full_relaxation(self):
        rho = tls.tls_pair_evolve(EXCITED, ZERO_TEMPERATURE, 0.0)
        assert np.max(np.abs(rho - tls.ground_state())) == 0.0

    def test_tilted_state_by_hand(self):
        # zero-temperature components at cos^2 = 1/2, evaluated by hand:
        # rho11 = (3/4)(1/2), rho12 = (1-i)/4 * sqrt(1/2), rho22 = 1/4 + (3/4)(1/2)
        rho = tls.tls_pair_evolve(TILTED, ZERO_TEMPERATURE, 0.5)
        c = math.sqrt(0.5)
        assert rho[0, 0] == pytest.approx(0.375, abs=1e-15)
        assert rho[0, 1] == pytest.approx(0.25 * (1 - 1j) * c, abs=1e-15)
        assert rho[1, 1] == pytest.approx(0.625, abs=1e-15)

    def test_finite_temperature_fixed_point(self):
        # when the exchange completes, the system carries the bath populations
        bath = BathThermal(1.0)
        for r in (EXCITED, TILTED):
            rho = tls.tls_pair_evolve(r, bath, 0.0)
            assert rho[0, 0].real == pytest.approx(bath.p_excited, abs=1e-15)

    def test_unit_trace_and_validity(self, rng):
        for _ in range(20):
            r = random_bloch(rng)
            rho = tls.tls_pair_evolve(r, BathThermal(0.7), float(rng.uniform()), 1.3)
            linalg.validate_density_matrix(rho)

    def test_invalid_mu_cos2(self):
        with pytest.raises(ValueError):
            tls.tls_pair_evolve(EXCITED, ZERO_TEMPERATURE, 1.5)


class TestPairTraceDistance:
    def test_excited_start(self):
        assert tls.tls_pair_trace_distance(EXCITED, 1.0) == 1.0

    def test_relaxed(self):
        assert tls.tls_pair_trace_distance(TILTED, 0.0) == 0.0

    def test_tilted_by_hand(self):
        # (1/2) sqrt(9/4 + 1/2)
        assert tls.tls_pair_trace_distance(TILTED, 1.0) == pytest.approx(
            0.5 * math.sqrt(2.75), abs=1e-15
        )

    def test_matches_eigenvalue_route(self, rng):
        for _ in range(25):
            r = random_bloch(rng)
            mu_cos2 = float(rng.uniform())
            rho = tls.tls_pair_evolve(r, ZERO_TEMPERATURE, mu_cos2, omega_t=0.9)
            expected = metrics.trace_distance(rho, tls.ground_state())
            assert tls.tls_pair_trace_distance(r, mu_cos2) == pytest.approx(expected, abs=1e-12)


class TestJcmPropagatorClosed:
    def test_zero_phase_identity(self):
        assert np.max(np.abs(tls.jcm_propagator_closed(0.0, 6) - np.eye(12))) == 0.0

    def test_single_excitation_swap(self):
        # |e,0> -> -i|g,1> at phi = pi/2
        dim = 5
        u = tls.jcm_propagator_closed(math.pi / 2, dim)
        col = u[:, 0]
        expected = np.zeros(2 * dim, dtype=complex)
        expected[dim + 1] = -1j
        assert np.max(np.abs(col - expected)) <= 1e-12

    def test_unitary_away_from_edge(self):
        dim = 12
        u = tls.jcm_propagator_closed(0.9, dim)
        keep = [i for i in range(2 * dim) if i != dim - 1]
        sub = u[np.ix_(keep, keep)]
        assert np.max(np.abs(sub @ sub.conj().T - np.eye(len(keep)))) <= 1e-10

    def test_matches_generator_exponential(self, rng):
        # oracle: dense exponential of phi*(b sigma+ + b+ sigma-); agreement
        # away from the truncation-edge state |e, dim-1>
        dim = 10
        b = linalg.ladder_lowering(dim)
        coupling = linalg.tensor(linalg.SIGMA_PLUS, b) + linalg.tensor(
            linalg.SIGMA_MINUS, b.conj().T
        )
        for phi in rng.uniform(0.0, math.pi, size=4):
            dense = linalg.propagator(phi * coupling)
            closed = tls.jcm_propagator_closed(phi, dim)
            keep = [i for i in range(2 * dim) if i != dim - 1]
            assert np.max(np.abs((dense - closed)[np.ix_(keep, keep)])) <= 1e-9

    def test_dim_too_small(self):
        with pytest.raises(DimensionError):
            tls.jcm_propagator_closed(1.0, 1)


class TestJcmThermalComponents:
    def test_zero_temperature_matches_closed_matrix(self, rng):
        # the series must collapse to the single n=0 term
        for _ in range(15):
            r = random_bloch(rng)
            phi = float(rng.uniform(0.0, math.pi))
            wt = float(rng.uniform(0.0, 6.0))
            got = tls.jcm_thermal_components(r, ZERO_TEMPERATURE, phi, wt)
            c = math.cos(phi)
            expected = np.array(
                [
                    [0.5 * (1 + r.rz) * c * c, 0.5 * (r.rx - 1j * r.ry) * np.exp(-1j * wt) * c],
                    [0.5 * (r.rx + 1j * r.ry) * np.exp(1j * wt) * c, 0.0],
                ],
                dtype=complex,
            )
            expected[1, 1] = 1.0 - expected[0, 0]
            assert np.max(np.abs(got - expected)) <= 1e-14

    def test_no_interaction(self):
        rho = tls.jcm_thermal_components(TILTED, BathThermal(1.0), 0.0, omega_t=0.8)
        assert rho[0, 0].real == pytest.approx(0.75, abs=1e-13)
        assert rho[0, 1] == pytest.approx(0.25 * (1 - 1j) * np.exp(-0.8j), abs=1e-13)

    def test_unit_trace_by_construction(self, rng):
        for beta in (0.3, 1.0, 5.0):
            rho = tls.jcm_thermal_components(random_bloch(rng), BathThermal(beta), 0.7)
            assert np.trace(rho).real == pytest.approx(1.0, abs=0)
            linalg.validate_density_matrix(rho)

    def test_insufficient_n_max(self):
        with pytest.raises(TruncationError):
            tls.jcm_thermal_components(EXCITED, BathThermal(1.0), 0.5, n_max=5)

    def test_infinite_temperature_rejected(self):
        with pytest.raises(StateError):
            tls.jcm_thermal_components(EXCITED, BathThermal(0.0), 0.5)


class TestJcmBloch:
    def test_no_interaction_identity(self):
        a = tls.jcm_bloch(TILTED, 0.0, 0.0)
        assert (a.rx, a.ry, a.rz) == (0.5, 0.5, 0.5)

    def test_full_relaxation_point(self, rng):
        for _ in range(10):
            a = tls.jcm_bloch(random_bloch(rng), math.pi / 2, float(rng.uniform(0, 9)))
            assert abs(a.rx) <= 1e-15 and abs(a.ry) <= 1e-15
            assert a.rz == pytest.approx(-1.0, abs=1e-15)

    def test_hand_value(self):
        a = tls.jcm_bloch(TILTED, math.pi / 4, math.pi / 2)
        assert a.rx == pytest.approx(-0.5 * math.sqrt(0.5), abs=1e-15)
        assert a.ry == pytest.approx(0.5 * math.sqrt(0.5), abs=1e-15)
        assert a.rz == pytest.approx(-0.25, abs=1e-15)

    def test_consistent_with_state_matrix(self, rng):
        for _ in range(20):
            r = random_bloch(rng)
            phi = float(rng.uniform(0.0, math.pi / 2))
            wt = float(rng.uniform(0.0, 7.0))
            lhs = bloch_density_matrix(tls.jcm_bloch(r, phi, wt))
            rhs = tls.jcm_thermal_components(r, ZERO_TEMPERATURE, phi, wt)
            assert np.max(np.abs(lhs - rhs)) <= 1e-12

    def test_norm_never_grows(self, rng):
        for _ in range(30):
            r = random_bloch(rng)
            a = tls.jcm_bloch(r, float(rng.uniform(0, math.pi)), float(rng.uniform(0, 9)))
            assert a.norm_sq() <= 1.0 + 1e-12


class TestJcmTraceDistance:
    def test_excited_is_cos2(self):
        for c in (0.0, 0.3, 1.0):
            assert tls.jcm_trace_distance(EXCITED, c) == pytest.approx(c, abs=1e-15)

    def test_tilted_at_full_coupling(self):
        assert tls.jcm_trace_distance(TILTED, 1.0) == pytest.approx(
            0.25 * math.sqrt(11.0), abs=1e-15
        )

    def test_relaxed(self, rng):
        assert tls.jcm_trace_distance(random_bloch(rng), 0.0) == 0.0

    def test_matches_eigenvalue_route(self, rng):
        for _ in range(25):
            r = random_bloch(rng)
            phi_cos2 = float(rng.uniform())
            rho = tls.jcm_thermal_components(r, ZERO_TEMPERATURE, math.acos(math.sqrt(phi_cos2)))
            assert tls.jcm_trace_distance(r, phi_cos2) == pytest.approx(
                metrics.trace_distance(rho, tls.ground_state()), abs=1e-12
            )

    def test_hs_is_sqrt2_times_trace(self, rng):
        for _ in range(25):
            r = random_bloch(rng)
            phi = float(rng.uniform(0.0, math.pi / 2))
            rho = tls.jcm_thermal_components(r, ZERO_TEMPERATURE, phi)
            hs = metrics.hs_distance(rho, tls.ground_state())
            td = metrics.trace_distance(rho, tls.ground_state())
            assert hs == pytest.approx(math.sqrt(2.0) * td, abs=1e-12)


class TestEnergy:
    def test_extremes(self):
        assert tls.tls_energy(np.diag([1.0, 0.0]).astype(complex)) == 0.5
        assert tls.tls_energy(np.diag([0.0, 1.0]).astype(complex)) == -0.5

    def test_tilted_initial(self):
        assert tls.tls_energy(np.diag([0.75, 0.25]).astype(complex)) == 0.25


class TestCrossingFormulas:
    def test_max_coherence(self):
        got = tls.crossing_cos_phi(BlochVector(1.0, 0.0, 0.0))
        assert got == pytest.approx(1.0 / math.sqrt(3.0), abs=1e-15)

    def test_no_coherence_no_crossing(self):
        assert tls.crossing_cos_phi(BlochVector(0.0, 0.0, 0.5)) is None

    def test_tilted_value_and_numeric_root(self):
        got = tls.crossing_cos_phi(TILTED)
        assert got == pytest.approx(math.sqrt(2.0 / 7.0), abs=1e-12)
        # oracle: bisect the difference of the two distance curves in cos^2
        lo, hi = 1e-9, 1.0
        for _ in range(80):
            mid = 0.5 * (lo + hi)
            diff = tls.jcm_trace_distance(TILTED, mid) - tls.jcm_trace_distance(EXCITED, mid)
            if diff > 0:
                lo = mid
            else:
                hi = mid
        assert got**2 == pytest.approx(0.5 * (lo + hi), abs=1e-10)

    def test_cavity_crossing_time_values(self):
        assert tls.crossing_tau_cavity(1.0) == pytest.approx(0.5694142151441509, abs=1e-12)
        assert tls.crossing_tau_cavity(0.789) == pytest.approx(0.6302, abs=5e-4)
        assert tls.crossing_tau_cavity(1e-9) == pytest.approx(1.0, abs=1e-3)

    def test_cavity_crossing_monotone(self):
        grid = np.linspace(1e-3, 1.0, 50)
        taus = [tls.crossing_tau_cavity(float(r)) for r in grid]
        assert np.all(np.diff(taus) < 0)

    def test_cavity_crossing_domain(self):
        with pytest.raises(StateError):
            tls.crossing_tau_cavity(0.0)
        with pytest.raises(StateError):
            tls.crossing_tau_cavity(1.2)


def test_no_crossing_error_reachable():
    # out-of-contract r_perp values between 1 and sqrt(3) push the outer
    # arccos argument above 1
    with pytest.raises((NoCrossingError, StateError)):
        tls.crossing_tau_cavity(1.5)
