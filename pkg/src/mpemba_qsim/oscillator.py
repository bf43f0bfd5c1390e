"""Closed-form relaxation of an oscillator into a zero-temperature partner mode.

At zero bath temperature the reduced state of the system oscillator keeps the
shape of its initial family for all the families used here: a thermal state
stays thermal with mean nbar * cos2, a coherent state stays coherent with
amplitude alpha * exp(-i w0 t) * sqrt(cos2), and a Fock state |N> turns into a
binomial mixture with success probability cos2, where cos2 is the schedule's
cos^2 of the accumulated coupling phase.  Distances to the relaxed ground
state |0><0| have matching closed forms.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Union

import numpy as np

from .errors import DimensionError, StateError, TruncationError, TruncationWarning
from .linalg import projector

DEFAULT_FOCK_DIM = 40
# Adequacy thresholds for truncated states: population in the top two levels
# above TOP_LEVEL_WARN_TOL is flagged; clipped tail mass above
# TAIL_FAIL_TOL means the truncation misrepresents the state and is an error.
TOP_LEVEL_WARN_TOL = 1e-10
TAIL_FAIL_TOL = 1e-3


@dataclass(frozen=True)
class Thermal:
    """Thermal initial state with mean occupation nbar."""

    nbar: float

    def __post_init__(self) -> None:
        if math.isnan(self.nbar) or self.nbar < 0:
            raise StateError(f"mean occupation must be >= 0, got {self.nbar}")


@dataclass(frozen=True)
class Coherent:
    """Coherent initial state |alpha>."""

    alpha: complex


@dataclass(frozen=True)
class Fock:
    """Number (Fock) initial state |n>."""

    n: int

    def __post_init__(self) -> None:
        if self.n < 0 or int(self.n) != self.n:
            raise StateError(f"Fock level must be a nonnegative integer, got {self.n}")
        object.__setattr__(self, "n", int(self.n))


InitialState = Union[Thermal, Coherent, Fock]


def _check_cos2(cos2: float) -> float:
    cos2 = float(cos2)
    if not 0.0 <= cos2 <= 1.0:
        raise ValueError(f"cos2 must lie in [0, 1], got {cos2}")
    return cos2


def _truncation_checks(deficit: float, top_two: float, what: str) -> None:
    if deficit > TAIL_FAIL_TOL:
        raise TruncationError(
            f"{what}: clipped tail mass {deficit:.3e} exceeds {TAIL_FAIL_TOL:g}; "
            "increase the truncation dimension"
        )
    if top_two > TOP_LEVEL_WARN_TOL:
        warnings.warn(
            f"{what}: population {top_two:.3e} in the top two levels exceeds "
            f"{TOP_LEVEL_WARN_TOL:g}",
            TruncationWarning,
            stacklevel=3,
        )


def thermal_populations(mean: float, dim: int) -> np.ndarray:
    """Geometric level populations with the given mean, renormalized over dim levels."""
    if dim < 2:
        raise DimensionError(f"need dim >= 2, got {dim}")
    if mean < 0:
        raise StateError(f"mean occupation must be >= 0, got {mean}")
    if mean == 0.0:
        pops = np.zeros(dim)
        pops[0] = 1.0
        return pops
    ratio = mean / (mean + 1.0)
    pops = (1.0 / (mean + 1.0)) * ratio ** np.arange(dim)
    deficit = ratio**dim
    pops /= 1.0 - deficit
    _truncation_checks(deficit, float(pops[-2:].sum()), f"thermal(mean={mean:g}, dim={dim})")
    return pops


def binomial_populations(n_fock: int, cos2: float, dim: int) -> np.ndarray:
    """Binomial(n_fock, cos2) level populations; exact (no clipped tail) for n_fock < dim.

    Coefficients go through log-gamma so n_fock up to ~170 is overflow-safe.
    """
    if n_fock >= dim:
        raise DimensionError(f"Fock level {n_fock} needs dim > {n_fock}, got {dim}")
    pops = np.zeros(dim)
    if cos2 == 0.0:
        pops[0] = 1.0
        return pops
    if cos2 == 1.0:
        pops[n_fock] = 1.0
        return pops
    k = np.arange(n_fock + 1)
    log_binom = (
        math.lgamma(n_fock + 1)
        - np.array([math.lgamma(x + 1) for x in k])
        - np.array([math.lgamma(n_fock - x + 1) for x in k])
    )
    pops[: n_fock + 1] = np.exp(
        log_binom + k * math.log(cos2) + (n_fock - k) * math.log1p(-cos2)
    )
    pops /= pops.sum()  # kills ~1e-16 rounding drift; the exact sum is 1
    return pops


def coherent_vector(amplitude: complex, dim: int) -> np.ndarray:
    """Normalized truncated coherent-state vector with the given amplitude."""
    if dim < 2:
        raise DimensionError(f"need dim >= 2, got {dim}")
    amplitude = complex(amplitude)
    v = np.zeros(dim, dtype=complex)
    v[0] = math.exp(-0.5 * abs(amplitude) ** 2)
    for n in range(1, dim):
        v[n] = v[n - 1] * amplitude / math.sqrt(n)
    norm_sq = float(np.sum(np.abs(v) ** 2))
    deficit = max(0.0, 1.0 - norm_sq)
    top_two = float(np.sum(np.abs(v[-2:]) ** 2)) / norm_sq
    _truncation_checks(deficit, top_two, f"coherent(|amp|={abs(amplitude):g}, dim={dim})")
    return v / math.sqrt(norm_sq)


def ground_state(dim: int) -> np.ndarray:
    """The relaxed state |0><0|."""
    rho = np.zeros((dim, dim), dtype=complex)
    rho[0, 0] = 1.0
    return rho


def evolve_closed_form(
    state: InitialState,
    cos2: float,
    omega0_t: float = 0.0,
    dim: int = DEFAULT_FOCK_DIM,
) -> np.ndarray:
    """Reduced system state once the coupling phase has cos^2 equal to ``cos2``.

    ``omega0_t`` is the accumulated free phase; it only rotates the coherent
    amplitude and drops out of every distance to the ground state.
    """
    cos2 = _check_cos2(cos2)
    if isinstance(state, Thermal):
        return np.diag(thermal_populations(state.nbar * cos2, dim)).astype(complex)
    if isinstance(state, Fock):
        return np.diag(binomial_populations(state.n, cos2, dim)).astype(complex)
    if isinstance(state, Coherent):
        amp = state.alpha * np.exp(-1j * omega0_t) * math.sqrt(cos2)
        return projector(coherent_vector(amp, dim))
    raise TypeError(f"unknown initial state {state!r}")


def trace_distance_closed(state: InitialState, cos2: float) -> float:
    """Closed-form trace distance between the evolved state and |0><0|."""
    cos2 = _check_cos2(cos2)
    if isinstance(state, Thermal):
        mean = state.nbar * cos2
        return mean / (mean + 1.0)
    if isinstance(state, Coherent):
        return math.sqrt(-math.expm1(-abs(state.alpha) ** 2 * cos2))
    if isinstance(state, Fock):
        return 1.0 - (1.0 - cos2) ** state.n
    raise TypeError(f"unknown initial state {state!r}")


def hs_distance_closed(state: InitialState, cos2: float) -> float:
    """Closed-form Hilbert-Schmidt distance between the evolved state and |0><0|.

    Coherent states give exactly sqrt(2) times the trace distance; thermal
    states carry the ratio sqrt((2 m + 2)/(2 m + 1)) with m = nbar * cos2,
    which tends to sqrt(2) as the state relaxes; Fock states give the
    binomial sum of squares.
    """
    cos2 = _check_cos2(cos2)
    if isinstance(state, Thermal):
        m = state.nbar * cos2
        return math.sqrt((2.0 * m + 2.0) / (2.0 * m + 1.0)) * trace_distance_closed(state, cos2)
    if isinstance(state, Coherent):
        return math.sqrt(2.0 * -math.expm1(-abs(state.alpha) ** 2 * cos2))
    if isinstance(state, Fock):
        if state.n == 0:
            return 0.0
        pops = binomial_populations(state.n, cos2, state.n + 1)
        return math.sqrt(float(np.sum(pops[1:] ** 2)) + (1.0 - pops[0]) ** 2)
    raise TypeError(f"unknown initial state {state!r}")
