"""Closed-form qubit relaxation: the qubit-qubit exchange model and the
resonant qubit-boson (Jaynes-Cummings) model with a time-dependent coupling.

Basis convention: index 0 = excited, index 1 = ground, so the zero-temperature
relaxation point is diag(0, 1).  All dynamics enter through the accumulated
coupling phase (``mu`` for the qubit pair, ``phi`` for the boson model) or its
cos^2.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import DimensionError, NoCrossingError, StateError, TruncationError
from .states import BathThermal, BlochVector

# Series truncation for a thermal boson bath: keep terms until the Boltzmann
# weight drops below BOLTZMANN_CUT, never more than SERIES_CAP of them.
BOLTZMANN_CUT = 1e-14
SERIES_CAP = 4000


def ground_state() -> np.ndarray:
    """Relaxed qubit state diag(0, 1)."""
    return np.diag([0.0, 1.0]).astype(complex)


def tls_pair_evolve(
    r: BlochVector, bath: BathThermal, mu_cos2: float, omega_t: float = 0.0
) -> np.ndarray:
    """Reduced state of a qubit exchanging excitation with a thermal partner qubit.

    ``mu_cos2`` is cos^2 of the accumulated exchange phase; ``omega_t`` the
    accumulated free phase on the coherence.
    """
    if not 0.0 <= mu_cos2 <= 1.0:
        raise ValueError(f"mu_cos2 must lie in [0, 1], got {mu_cos2}")
    pe, pg = bath.p_excited, bath.p_ground
    c2, s2 = mu_cos2, 1.0 - mu_cos2
    up = 0.5 * (1.0 + r.rz)
    dn = 0.5 * (1.0 - r.rz)
    rho11 = up * pe + up * pg * c2 + dn * pe * s2
    rho22 = dn * pg + dn * pe * c2 + up * pg * s2
    rho12 = 0.5 * (r.rx - 1j * r.ry) * np.exp(-1j * omega_t) * math.sqrt(c2)
    return np.array([[rho11, rho12], [np.conj(rho12), rho22]], dtype=complex)


def tls_pair_trace_distance(r: BlochVector, mu_cos2: float) -> float:
    """Trace distance from the evolved pair state to diag(0, 1) at zero bath temperature."""
    if not 0.0 <= mu_cos2 <= 1.0:
        raise ValueError(f"mu_cos2 must lie in [0, 1], got {mu_cos2}")
    return 0.5 * math.sqrt(
        (1.0 + r.rz) ** 2 * mu_cos2**2 + (r.rx**2 + r.ry**2) * mu_cos2
    )


def jcm_propagator_closed(phi: float, dim: int) -> np.ndarray:
    """Excitation-exchange propagator of the resonant qubit-boson model.

    2x2 operator-block matrix over a dim-level Fock space: block-diagonal
    cosines of phi*sqrt(n+1) / phi*sqrt(n), off-diagonal -i sin couplings.
    Unitary except on the single truncation-edge row/column |e, dim-1>.
    """
    if dim < 2:
        raise DimensionError(f"Fock truncation needs dim >= 2, got {dim}")
    n = np.arange(dim, dtype=float)
    tl = np.diag(np.cos(phi * np.sqrt(n + 1.0)))
    br = np.diag(np.cos(phi * np.sqrt(n)))
    sin_n = np.sin(phi * np.sqrt(np.arange(1.0, dim)))
    tr = np.diag(-1j * sin_n, k=1)
    bl = np.diag(-1j * sin_n, k=-1)
    return np.block([[tl, tr], [bl, br]]).astype(complex)


def _bath_weights(bath: BathThermal, n_max: int | None = None) -> np.ndarray:
    """Boltzmann weights e^(-b n) (1 - e^(-b)), normalized by the exact partition sum.

    The truncated tail is below BOLTZMANN_CUT of the total weight by
    construction; an explicit n_max that cannot guarantee that raises.
    """
    if bath.is_zero_temperature:
        return np.array([1.0])
    b = bath.beta_hbar_omega
    if b <= 0.0:
        raise StateError("thermal boson bath needs beta*hbar*omega > 0")
    needed = math.ceil(-math.log(BOLTZMANN_CUT) / b)
    if n_max is None:
        n_max = min(needed, SERIES_CAP)
    if math.exp(-b * n_max) >= BOLTZMANN_CUT:
        raise TruncationError(
            f"series cut at n_max={n_max} leaves Boltzmann weight "
            f"{math.exp(-b * n_max):.3e} >= {BOLTZMANN_CUT:g}"
        )
    n = np.arange(n_max + 1, dtype=float)
    return np.exp(-b * n) * (1.0 - math.exp(-b))


def jcm_thermal_components(
    r: BlochVector,
    bath: BathThermal,
    phi: float,
    omega_t: float = 0.0,
    n_max: int | None = None,
) -> np.ndarray:
    """Reduced qubit state after exchanging with a thermal boson mode.

    Thermal series over bath levels n with weights e^(-b n)/z_b; at zero
    temperature it collapses to the single n = 0 term.
    """
    w = _bath_weights(bath, n_max)
    n = np.arange(len(w), dtype=float)
    cos_up = np.cos(phi * np.sqrt(n + 1.0))
    cos_dn = np.cos(phi * np.sqrt(n))
    sin_dn = np.sin(phi * np.sqrt(n))
    up = 0.5 * (1.0 + r.rz)
    dn = 0.5 * (1.0 - r.rz)
    rho11 = up * float(np.sum(cos_up**2 * w)) + dn * float(np.sum(sin_dn**2 * w))
    rho12 = 0.5 * (r.rx - 1j * r.ry) * np.exp(-1j * omega_t) * float(np.sum(cos_up * cos_dn * w))
    return np.array([[rho11, rho12], [np.conj(rho12), 1.0 - rho11]], dtype=complex)


def jcm_bloch(r: BlochVector, phi: float, omega_t: float = 0.0) -> BlochVector:
    """Bloch vector of the zero-temperature evolved state: the coherence is
    shrunk by cos(phi) and rotated by omega_t, the population relaxes as
    rz cos^2(phi) - sin^2(phi)."""
    c = math.cos(phi)
    cw, sw = math.cos(omega_t), math.sin(omega_t)
    return BlochVector(
        (r.rx * cw - r.ry * sw) * c,
        (r.rx * sw + r.ry * cw) * c,
        r.rz * c * c - math.sin(phi) ** 2,
    )


def jcm_trace_distance(r: BlochVector, phi_cos2: float) -> float:
    """Trace distance from the zero-temperature evolved state to diag(0, 1)."""
    if not 0.0 <= phi_cos2 <= 1.0:
        raise ValueError(f"phi_cos2 must lie in [0, 1], got {phi_cos2}")
    return math.sqrt(
        (0.5 * (1.0 + r.rz)) ** 2 * phi_cos2**2
        + 0.25 * (r.rx**2 + r.ry**2) * phi_cos2
    )


def tls_energy(rho: np.ndarray) -> float:
    """Qubit energy in units of hbar*omega: (rho_ee - rho_gg)/2, in [-1/2, 1/2]."""
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (2, 2):
        raise DimensionError(f"expected a 2x2 state, got {rho.shape}")
    return float(0.5 * (rho[0, 0] - rho[1, 1]).real)


def crossing_cos_phi(r: BlochVector) -> float | None:
    """cos(phi) at which the distance curve of ``r`` meets that of (0, 0, 1).

    Requires in-plane coherence; returns None when r_perp = 0 or when the
    formula gives a value outside (0, 1] (no intersection at real phase).
    """
    r_perp = r.r_perp
    if r_perp == 0.0:
        return None
    value = r_perp / math.sqrt(4.0 - (1.0 + r.rz) ** 2)
    return value if value <= 1.0 else None


def crossing_tau_cavity(r_perp: float) -> float:
    """Scaled intersection time t/t0 under the cavity-mode profile for rz = 0.

    Inverts the cavity phase law at cos(phi) = r_perp/sqrt(3); decreases
    strictly from 1 (r_perp -> 0) to about 0.569 (r_perp = 1).
    """
    if not 0.0 < r_perp <= 1.0:
        raise StateError(f"r_perp must lie in (0, 1], got {r_perp}")
    arg = 1.0 - (4.0 / math.pi) * math.acos(r_perp / math.sqrt(3.0))
    if not -1.0 <= arg <= 1.0:
        raise NoCrossingError(
            f"no crossing within the coupling window (arccos argument {arg:.6f})"
        )
    return math.acos(arg) / math.pi
