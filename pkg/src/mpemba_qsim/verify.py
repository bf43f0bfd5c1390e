"""Closed-form-vs-oracle verification suites behind the ``verify`` CLI command.

Every suite returns a plain dict so the CLI can emit a deterministic JSON
report; nothing here depends on wall-clock time or unseeded randomness.
"""

from __future__ import annotations

import math
import warnings

import numpy as np

from . import linalg, metrics, oracle, oscillator, tls
from .crossings import detect_crossings, sample_series
from .errors import TruncationError
from .schedules import CavityMode, Ramp, time_grid
from .states import BathThermal, BlochVector, ZERO_TEMPERATURE

DEFAULT_TOLERANCES = {
    "oscillator_thermal": 1e-6,
    "oscillator_coherent": 1e-8,
    "oscillator_number": 1e-8,
    "oscillator_distances": 1e-9,
    "tls_pair": 1e-8,
    "jcm_zero_temperature": 1e-8,
    "jcm_thermal_series": 1e-8,
    "hs_identities": 1e-12,
    "hs_thermal_asymptote": 1e-8,
    "propagator_unitarity": 1e-10,
    "jcm_relaxation": 1e-12,
    "crossing_analytics": 5e-3,
}

_TAUS_11 = np.linspace(0.0, 6.0, 11)  # ExpDecay{gamma=1} comparison grid


def _random_bloch(rng: np.random.Generator) -> BlochVector:
    direction = rng.normal(size=3)
    direction /= np.linalg.norm(direction)
    radius = rng.uniform() ** (1.0 / 3.0)
    return BlochVector(*(radius * direction))


def _run_cases(name, tol, case_fn, cases):
    """Evaluate |deviation| over cases, tracking the worst one and any warnings."""
    max_dev = 0.0
    worst = None
    notes: list[str] = []
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        try:
            for case in cases:
                dev = float(case_fn(*case))
                if dev > max_dev or worst is None:
                    max_dev = dev
                    worst = case
        except TruncationError as exc:
            notes.append(f"truncation: {exc}")
            max_dev = math.inf
            worst = case
    for w in caught:
        msg = str(w.message)
        if msg not in notes:
            notes.append(msg)
    return {
        "name": name,
        "tolerance": tol,
        "max_deviation": max_dev,
        "worst_case": repr(worst),
        "cases": len(cases),
        "warnings": sorted(notes),
        "passed": max_dev <= tol,
    }


def suite_oscillator_thermal(dim, seed, tol):
    def dev(nbar, tau):
        cos2 = math.exp(-tau)
        closed = oscillator.evolve_closed_form(oscillator.Thermal(nbar), cos2, 0.0, dim)
        brute = oracle.oscillator_oracle(oscillator.Thermal(nbar), 0.0, 0.0, math.acos(math.sqrt(cos2)), dim)
        return np.max(np.abs(closed - brute))

    cases = [(nbar, tau) for nbar in (0.5, 1.0, 3.0) for tau in _TAUS_11]
    return _run_cases("oscillator_thermal", tol, dev, cases)


def suite_oscillator_coherent(dim, seed, tol):
    def dev(alpha, tau):
        cos2 = math.exp(-tau)
        closed = oscillator.evolve_closed_form(oscillator.Coherent(alpha), cos2, 0.0, dim)
        brute = oracle.oscillator_oracle(oscillator.Coherent(alpha), 0.0, 0.0, math.acos(math.sqrt(cos2)), dim)
        return np.max(np.abs(closed - brute))

    cases = [(alpha, tau) for alpha in (0.5, 1.0, 2.0) for tau in _TAUS_11]
    return _run_cases("oscillator_coherent", tol, dev, cases)


def suite_oscillator_number(dim, seed, tol):
    def dev(n, tau):
        cos2 = math.exp(-tau)
        closed = oscillator.evolve_closed_form(oscillator.Fock(n), cos2, 0.0, dim)
        brute = oracle.oscillator_oracle(oscillator.Fock(n), 0.0, 0.0, math.acos(math.sqrt(cos2)), dim)
        return np.max(np.abs(closed - brute))

    cases = [(n, tau) for n in (1, 2, 5) for tau in _TAUS_11]
    return _run_cases("oscillator_number", tol, dev, cases)


def suite_oscillator_distances(dim, seed, tol):
    """Closed-form distances vs the eigenvalue route on the evolved matrices.

    The closed forms are exact for the untruncated state, so the thermal
    comparison pads the matrix truncation until its tail is below the
    tolerance (80 levels for nbar = 3).
    """

    def dev(state, tau):
        use_dim = max(dim, 80) if isinstance(state, oscillator.Thermal) else dim
        cos2 = math.exp(-tau)
        rho = oscillator.evolve_closed_form(state, cos2, 0.0, use_dim)
        ground = oscillator.ground_state(use_dim)
        return abs(
            oscillator.trace_distance_closed(state, cos2)
            - metrics.trace_distance(rho, ground)
        )

    states = [oscillator.Thermal(3.0), oscillator.Coherent(1.0), oscillator.Fock(2)]
    cases = [(s, tau) for s in states for tau in _TAUS_11]
    return _run_cases("oscillator_distances", tol, dev, cases)


def suite_tls_pair(dim, seed, tol):
    rng = np.random.default_rng(seed)
    blochs = [_random_bloch(rng) for _ in range(10)]
    mus = np.linspace(0.0, 0.5 * math.pi, 10)

    def dev(r, mu, beta):
        bath = BathThermal(beta)
        closed = tls.tls_pair_evolve(r, bath, math.cos(mu) ** 2, omega_t=0.7)
        brute = oracle.tls_pair_oracle(r, bath, mu, omega_t=0.7)
        return np.max(np.abs(closed - brute))

    cases = [(r, mu, beta) for beta in (math.inf, 1.0) for r in blochs for mu in mus]
    return _run_cases("tls_pair", tol, dev, cases)


def suite_jcm_zero_temperature(dim, seed, tol):
    rng = np.random.default_rng(seed + 1)
    blochs = [_random_bloch(rng) for _ in range(10)]
    phis = np.linspace(0.0, 0.5 * math.pi, 10)

    def dev(r, phi):
        closed = tls.jcm_thermal_components(r, ZERO_TEMPERATURE, phi, omega_t=0.4)
        brute = oracle.jcm_oracle(r, ZERO_TEMPERATURE, phi, omega_t=0.4, dim=dim)
        return np.max(np.abs(closed - brute))

    cases = [(r, phi) for r in blochs for phi in phis]
    return _run_cases("jcm_zero_temperature", tol, dev, cases)


def suite_jcm_thermal_series(dim, seed, tol):
    rng = np.random.default_rng(seed + 2)
    blochs = [_random_bloch(rng) for _ in range(10)]
    phis = np.linspace(0.0, 0.5 * math.pi, 10)
    bath = BathThermal(1.0)

    def dev(r, phi):
        closed = tls.jcm_thermal_components(r, bath, phi, omega_t=0.4)
        brute = oracle.jcm_oracle(r, bath, phi, omega_t=0.4, dim=dim)
        return np.max(np.abs(closed - brute))

    cases = [(r, phi) for r in blochs for phi in phis]
    return _run_cases("jcm_thermal_series", tol, dev, cases)


def suite_hs_identities(dim, seed, tol):
    """sqrt(2) proportionality for coherent and zero-T qubit states, thermal ratio."""
    rng = np.random.default_rng(seed + 3)
    ground = oscillator.ground_state(dim)

    def dev(kind, x):
        if kind == "coherent":
            state = oscillator.Coherent(1.0)
            cos2 = math.exp(-x)
            rho = oscillator.evolve_closed_form(state, cos2, 0.0, dim)
            return abs(
                metrics.hs_distance(rho, ground)
                - math.sqrt(2.0) * metrics.trace_distance(rho, ground)
            )
        if kind == "jcm":
            r = _random_bloch(rng)
            phi = x
            rho = tls.jcm_thermal_components(r, ZERO_TEMPERATURE, phi)
            return abs(
                metrics.hs_distance(rho, tls.ground_state())
                - math.sqrt(2.0) * metrics.trace_distance(rho, tls.ground_state())
            )
        # thermal ratio identity against the level-population series summed
        # to float convergence (independent of any matrix truncation)
        nbar = 3.0
        cos2 = math.exp(-x)
        mean = nbar * cos2
        total = (1.0 / (mean + 1.0) - 1.0) ** 2
        p = 1.0 / (mean + 1.0)
        ratio = mean / (mean + 1.0)
        for _ in range(2000):
            p *= ratio
            if p < 1e-17:
                break
            total += p * p
        return abs(math.sqrt(total) - oscillator.hs_distance_closed(oscillator.Thermal(nbar), cos2))

    cases = [("coherent", t) for t in _TAUS_11]
    cases += [("jcm", p) for p in np.linspace(0.0, 0.5 * math.pi, 11)]
    cases += [("thermal", t) for t in _TAUS_11]
    return _run_cases("hs_identities", tol, dev, cases)


def suite_hs_thermal_asymptote(dim, seed, tol):
    """The thermal HS/trace ratio approaches sqrt(2) deep in the relaxed regime."""

    def dev(nbar, tau):
        cos2 = math.exp(-tau)
        ratio = oscillator.hs_distance_closed(
            oscillator.Thermal(nbar), cos2
        ) / oscillator.trace_distance_closed(oscillator.Thermal(nbar), cos2)
        return abs(ratio - math.sqrt(2.0))

    return _run_cases("hs_thermal_asymptote", tol, dev, [(3.0, 20.0)])


def suite_propagator_unitarity(dim, seed, tol):
    rng = np.random.default_rng(seed + 4)

    def dev(kind, n):
        if kind == "random":
            m = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
            u = linalg.propagator((m + m.conj().T) / 2.0)
            return np.max(np.abs(u @ u.conj().T - np.eye(n)))
        if kind == "jcm_closed":
            u = tls.jcm_propagator_closed(0.9, n)
            keep = [i for i in range(2 * n) if i != n - 1]  # drop the edge row/col
            sub = u[np.ix_(keep, keep)]
            return np.max(np.abs(sub @ sub.conj().T - np.eye(len(keep))))
        u = oracle.oscillator_propagator(0.3, 0.8, n, n)
        return np.max(np.abs(u @ u.conj().T - np.eye(n * n)))

    cases = [("random", n) for n in (2, 6, 16, 32)]
    cases += [("jcm_closed", 12), ("oscillator", 8)]
    return _run_cases("propagator_unitarity", tol, dev, cases)


def suite_jcm_relaxation(dim, seed, tol):
    """At phase pi/2 the zero-temperature state is diag(0, 1) for every input."""
    rng = np.random.default_rng(seed + 5)

    def dev(idx):
        r = _random_bloch(rng)
        rho = tls.jcm_thermal_components(r, ZERO_TEMPERATURE, 0.5 * math.pi, omega_t=1.3)
        return np.max(np.abs(rho - tls.ground_state()))

    return _run_cases("jcm_relaxation", tol, dev, [(i,) for i in range(100)])


def suite_crossing_analytics(dim, seed, tol):
    """Detected trajectory crossings vs the analytic phase root cos^2 = 2/7."""
    r_i = BlochVector(0.0, 0.0, 1.0)
    r_ii = BlochVector(0.5, 0.5, 0.5)
    phi_star = math.acos(math.sqrt(2.0 / 7.0))

    def dev(kind):
        if kind == "ramp":
            sched, expected = Ramp(1.0), math.sqrt(phi_star / (0.5 * math.pi))
        elif kind == "cavity":
            sched, expected = CavityMode(1.0), math.acos(1.0 - 4.0 * phi_star / math.pi) / math.pi
        else:
            return abs(tls.crossing_tau_cavity(1.0) - 0.5694142151441509)
        grid = time_grid(sched, 1001)
        series = [
            sample_series(lambda t, r=r: tls.jcm_trace_distance(r, float(sched.cos2(t))), grid, str(r))
            for r in (r_i, r_ii)
        ]
        report = detect_crossings(series[0], series[1])
        times = report.pairs[0].crossing_times
        if len(times) != 1:
            return math.inf
        return abs(times[0] - expected)

    return _run_cases("crossing_analytics", tol, dev, [("ramp",), ("cavity",), ("formula",)])


_SUITES = [
    suite_oscillator_thermal,
    suite_oscillator_coherent,
    suite_oscillator_number,
    suite_oscillator_distances,
    suite_tls_pair,
    suite_jcm_zero_temperature,
    suite_jcm_thermal_series,
    suite_hs_identities,
    suite_hs_thermal_asymptote,
    suite_propagator_unitarity,
    suite_jcm_relaxation,
    suite_crossing_analytics,
]


def run_all(dim: int = 40, seed: int = 2024, tol_overrides: dict | None = None) -> dict:
    """Run every suite and assemble the JSON-ready report."""
    tols = dict(DEFAULT_TOLERANCES)
    if tol_overrides:
        unknown = set(tol_overrides) - set(tols)
        if unknown:
            raise KeyError(f"unknown suites in tolerance overrides: {sorted(unknown)}")
        tols.update(tol_overrides)
    suites = []
    for fn in _SUITES:
        name = fn.__name__.removeprefix("suite_")
        suites.append(fn(dim, seed, tols[name]))
    return {
        "tool": "mpemba-qsim",
        "dim": dim,
        "seed": seed,
        "suites": suites,
        "all_passed": all(s["passed"] for s in suites),
    }
