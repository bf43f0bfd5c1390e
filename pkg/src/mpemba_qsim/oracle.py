"""Brute-force evolutions of the full composite systems in truncated bases.

These are the independent cross-checks for every closed form in
:mod:`oscillator` and :mod:`tls`: build the composite initial state, apply the
numerically exponentiated propagator, partial-trace the partner away.  For
all three models the free and coupling generators commute (the couplings
conserve total excitation), so a single exponential is exact and no
time-ordering is needed.  A non-commuting extension would have to replace
this with a time-ordered integrator.

For the two-oscillator model the propagator is applied sector by sector of
the conserved total excitation: each sector Hamiltonian is a small dense
tridiagonal matrix that gets eigendecomposed numerically.  This is the same
truncated operator the dense route exponentiates (the sectors are exactly its
invariant blocks) and is checked against :func:`oscillator_propagator` in the
test suite; it just removes the dense-matrix cost so the system space can be
padded past the requested output dimension until the initial tail is
negligible.
"""

from __future__ import annotations

import math
import warnings
from functools import lru_cache

import numpy as np

from . import linalg
from .errors import DimensionError, StateError, TruncationError, TruncationWarning
from .oscillator import (
    TAIL_FAIL_TOL,
    TOP_LEVEL_WARN_TOL,
    Coherent,
    Fock,
    InitialState,
    Thermal,
)
from .states import BathThermal, BlochVector, bloch_density_matrix

# Initial-state tails are padded away until below this, so truncation error
# stays far below the closed-form/oracle comparison tolerances.
PAD_TAIL_TOL = 1e-9
PAD_CAP = 64
BATH_TAIL_TOL = 1e-12  # thermal-bath renormalization shift must stay below this
_WEIGHT_CUT = 1e-20    # product weights below this cannot move any tested digit


@lru_cache(maxsize=8)
def _sector_eigensystems(levels: int):
    """Eigendecompositions of the excitation-exchange coupling, one per sector.

    Sector ``total`` of a levels x levels two-mode space has basis
    |m, total - m> and tridiagonal coupling sqrt((m+1)(total-m)).
    """
    sectors = []
    for total in range(2 * levels - 1):
        lo = max(0, total - (levels - 1))
        hi = min(total, levels - 1)
        size = hi - lo + 1
        if size == 1:
            sectors.append((lo, np.zeros(1), np.ones((1, 1))))
            continue
        m = np.arange(lo, hi, dtype=float)
        h = np.zeros((size, size))
        off = np.sqrt((m + 1.0) * (total - m))
        h[np.arange(size - 1), np.arange(1, size)] = off
        h += h.T
        w, v = np.linalg.eigh(h)
        sectors.append((lo, w, v))
    return sectors


def _evolved_sector_column(sectors, total: int, kappa: float, init_level: int):
    """Amplitudes over system levels lo..hi after evolving |init_level, total-init_level>."""
    lo, w, v = sectors[total]
    amp = v @ (np.exp(-1j * kappa * w) * v[init_level - lo, :])
    return lo, amp


def _levels_for_geometric(mean: float, floor: int, tol: float, cap: int) -> int:
    """Smallest level count >= floor whose geometric tail is <= tol (capped)."""
    if mean <= 0.0:
        return floor
    ratio = mean / (mean + 1.0)
    needed = math.ceil(math.log(tol) / math.log(ratio))
    return max(floor, min(needed, cap))


def _levels_for_poisson(mean_sq: float, floor: int, tol: float, cap: int) -> int:
    """Smallest level count >= floor whose Poisson tail is <= tol (capped)."""
    if mean_sq <= 0.0:
        return floor
    term = math.exp(-mean_sq)
    total = term
    n = 0
    while 1.0 - total > tol and n < cap:
        n += 1
        term *= mean_sq / n
        total += term
    return max(floor, min(n + 1, cap))


def _geometric_weights(mean: float, levels: int) -> np.ndarray:
    ratio = mean / (mean + 1.0)
    w = (1.0 / (mean + 1.0)) * ratio ** np.arange(levels)
    return w / w.sum()


def _finalize_reduced(rho: np.ndarray, dim: int, what: str) -> np.ndarray:
    """Crop to the requested output dim, check the clipped tail, renormalize."""
    out = np.array(rho[:dim, :dim], dtype=complex)
    trace = float(np.trace(out).real)
    deficit = 1.0 - trace
    if deficit > TAIL_FAIL_TOL:
        raise TruncationError(
            f"{what}: evolved state leaves {deficit:.3e} of its mass above "
            f"level {dim - 1}"
        )
    top_two = float(np.trace(out[dim - 2 :, dim - 2 :]).real)
    if top_two > TOP_LEVEL_WARN_TOL:
        warnings.warn(
            f"{what}: population {top_two:.3e} in the top two retained levels",
            TruncationWarning,
            stacklevel=3,
        )
    out /= trace
    return (out + out.conj().T) / 2.0


def oscillator_oracle(
    init_a: InitialState,
    nbar_b: float,
    omega0_t: float,
    kappa: float,
    dim: int,
) -> np.ndarray:
    """Evolve (system oscillator) x (bath oscillator) exactly and reduce.

    The composite propagator is exp(-i [w0 t (n_a + n_b) + kappa (a b+ + a+ b)]);
    the system space is padded internally past ``dim`` until the initial tail
    is below PAD_TAIL_TOL, and the reduced state is cropped back to dim x dim.
    """
    if dim < 2:
        raise DimensionError(f"Fock truncation needs dim >= 2, got {dim}")
    if nbar_b < 0:
        raise StateError(f"bath mean occupation must be >= 0, got {nbar_b}")

    cap = dim + PAD_CAP
    if isinstance(init_a, Thermal):
        sys_levels = _levels_for_geometric(init_a.nbar, dim, PAD_TAIL_TOL, cap)
        sys_diag = _geometric_weights(init_a.nbar, sys_levels) if init_a.nbar > 0 else None
        if sys_diag is None:
            sys_diag = np.zeros(sys_levels)
            sys_diag[0] = 1.0
        sys_vec = None
    elif isinstance(init_a, Fock):
        if init_a.n >= dim:
            raise DimensionError(f"Fock level {init_a.n} needs dim > {init_a.n}")
        sys_levels = dim
        sys_diag = np.zeros(sys_levels)
        sys_diag[init_a.n] = 1.0
        sys_vec = None
    elif isinstance(init_a, Coherent):
        sys_levels = _levels_for_poisson(abs(init_a.alpha) ** 2, dim, PAD_TAIL_TOL, cap)
        amp = complex(init_a.alpha)
        sys_vec = np.zeros(sys_levels, dtype=complex)
        sys_vec[0] = math.exp(-0.5 * abs(amp) ** 2)
        for n in range(1, sys_levels):
            sys_vec[n] = sys_vec[n - 1] * amp / math.sqrt(n)
        sys_vec /= math.sqrt(float(np.sum(np.abs(sys_vec) ** 2)))
        sys_diag = None
    else:
        raise TypeError(f"unknown initial state {init_a!r}")

    if nbar_b == 0.0:
        bath_w = np.array([1.0])
    else:
        bath_levels = _levels_for_geometric(nbar_b, 2, BATH_TAIL_TOL, cap)
        tail = (nbar_b / (nbar_b + 1.0)) ** bath_levels
        if tail > BATH_TAIL_TOL:
            raise TruncationError(
                f"bath thermal tail {tail:.3e} above {BATH_TAIL_TOL:g} even at "
                f"{bath_levels} levels; reduce nbar_b or raise dim"
            )
        bath_w = _geometric_weights(nbar_b, bath_levels)

    levels = sys_levels + len(bath_w) - 1  # every populated sector complete
    sectors = _sector_eigensystems(levels)

    if sys_diag is not None:
        # Diagonal mixture: each |n, k> stays inside one excitation sector, so
        # the reduced state is diagonal; free phases cancel in |amp|^2.
        pops = np.zeros(levels)
        for k, qk in enumerate(bath_w):
            for n, pn in enumerate(sys_diag):
                weight = pn * qk
                if weight < _WEIGHT_CUT:
                    continue
                lo, amp = _evolved_sector_column(sectors, n + k, kappa, n)
                pops[lo : lo + amp.size] += weight * np.abs(amp) ** 2
        reduced = np.diag(pops).astype(complex)
    else:
        # Coherent system state: sectors interfere, so assemble the full
        # composite amplitude matrix per bath level and contract the bath index.
        reduced = np.zeros((levels, levels), dtype=complex)
        support = np.flatnonzero(np.abs(sys_vec) > 1e-18)
        for k, qk in enumerate(bath_w):
            psi = np.zeros((levels, levels), dtype=complex)
            for n in support:
                total = n + k
                lo, amp = _evolved_sector_column(sectors, total, kappa, n)
                ms = np.arange(lo, lo + amp.size)
                psi[ms, total - ms] += (
                    np.exp(-1j * omega0_t * total) * sys_vec[n] * amp
                )
            reduced += qk * (psi @ psi.conj().T)

    return _finalize_reduced(reduced, dim, f"oscillator oracle(dim={dim})")


def oscillator_propagator(
    omega0_t: float, kappa: float, dim_a: int, dim_b: int
) -> np.ndarray:
    """Dense composite propagator, exponentiated in one shot.

    Reference route for small dimensions; the sector engine above is its
    exact block-diagonalization.
    """
    a = linalg.ladder_lowering(dim_a)
    b = linalg.ladder_lowering(dim_b)
    eye_a = np.eye(dim_a, dtype=complex)
    eye_b = np.eye(dim_b, dtype=complex)
    gen = omega0_t * (
        linalg.tensor(linalg.number_operator(dim_a), eye_b)
        + linalg.tensor(eye_a, linalg.number_operator(dim_b))
    ) + kappa * (
        linalg.tensor(a, b.conj().T) + linalg.tensor(a.conj().T, b)
    )
    return linalg.propagator(gen)


def tls_pair_oracle(
    r: BlochVector, bath: BathThermal, mu: float, omega_t: float = 0.0
) -> np.ndarray:
    """Evolve qubit x thermal qubit with the exchange coupling and reduce."""
    rho0 = linalg.tensor(
        bloch_density_matrix(r),
        np.diag([bath.p_excited, bath.p_ground]).astype(complex),
    )
    sz = linalg.PAULI_Z
    eye = np.eye(2, dtype=complex)
    gen = 0.5 * omega_t * (linalg.tensor(sz, eye) + linalg.tensor(eye, sz)) + mu * (
        linalg.tensor(linalg.SIGMA_MINUS, linalg.SIGMA_PLUS)
        + linalg.tensor(linalg.SIGMA_PLUS, linalg.SIGMA_MINUS)
    )
    u = linalg.propagator(gen)
    return linalg.partial_trace_b(u @ rho0 @ u.conj().T, 2, 2)


def jcm_oracle(
    r: BlochVector,
    bath: BathThermal,
    phi: float,
    omega_t: float = 0.0,
    dim: int = 40,
) -> np.ndarray:
    """Evolve qubit x boson mode in the truncated Fock basis and reduce.

    Interaction propagator exp(-i phi (b sigma+ + b+ sigma-)) from the dense
    eigendecomposition, then the free rotation, then the partial trace.
    """
    if dim < 2:
        raise DimensionError(f"Fock truncation needs dim >= 2, got {dim}")
    if bath.is_zero_temperature:
        bath_pops = np.zeros(dim)
        bath_pops[0] = 1.0
    else:
        nbar = bath.nbar
        if not math.isfinite(nbar):
            raise StateError("thermal boson bath needs beta*hbar*omega > 0")
        tail = (nbar / (nbar + 1.0)) ** dim
        if tail > BATH_TAIL_TOL:
            raise TruncationError(
                f"bath thermal tail {tail:.3e} above {BATH_TAIL_TOL:g} at dim={dim}"
            )
        bath_pops = _geometric_weights(nbar, dim)

    rho0 = linalg.tensor(bloch_density_matrix(r), np.diag(bath_pops).astype(complex))
    b = linalg.ladder_lowering(dim)
    coupling = linalg.tensor(linalg.SIGMA_PLUS, b) + linalg.tensor(
        linalg.SIGMA_MINUS, b.conj().T
    )
    u_int = linalg.propagator(phi * coupling)
    free_qubit = np.exp(-0.5j * omega_t * np.array([1.0, -1.0]))
    free_mode = np.exp(-1j * omega_t * np.arange(dim))
    u0 = np.diag(np.kron(free_qubit, free_mode))
    u = u0 @ u_int
    return linalg.partial_trace_b(u @ rho0 @ u.conj().T, 2, dim)
