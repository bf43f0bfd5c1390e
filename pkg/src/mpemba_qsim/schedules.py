"""Coupling-integral profiles driving every closed-form evolution.

Each schedule exposes the accumulated phase (the time integral of the
coupling) and cos^2 of that phase, which is the only quantity the closed
forms consume.  The two decay profiles are specified directly through their
cos^2 laws, so their phase is reported on the principal branch
arccos(sqrt(cos2)) in [0, pi/2]; the ramp and cavity-mode profiles are
specified through the phase itself.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path
from typing import Union

import numpy as np

from .errors import GridError, TimeDomainError

DEFAULT_GRID_STEPS = 1001


@dataclass(frozen=True)
class ScheduleSample:
    """One evaluation point: time, cos^2 of the phase, and the phase itself."""

    t: float
    cos2: float
    phase: float


def _check_times(t):
    arr = np.asarray(t, dtype=float)
    if np.any(arr < 0.0):
        raise TimeDomainError("schedules are defined for t >= 0 only")
    return arr


@dataclass(frozen=True)
class ExpDecay:
    """cos^2[phase(t)] = exp(-gamma t)."""

    gamma: float

    def __post_init__(self) -> None:
        if not self.gamma > 0:
            raise ValueError(f"gamma must be > 0, got {self.gamma}")

    def cos2(self, t):
        return np.exp(-self.gamma * _check_times(t))

    def phase(self, t):
        return np.arccos(np.sqrt(self.cos2(t)))


@dataclass(frozen=True)
class SinExpDecay:
    """cos^2[phase(t)] = sin^2((pi/2) exp(-gamma t)); starts at 1, decays to 0."""

    gamma: float

    def __post_init__(self) -> None:
        if not self.gamma > 0:
            raise ValueError(f"gamma must be > 0, got {self.gamma}")

    def cos2(self, t):
        return np.sin(0.5 * np.pi * np.exp(-self.gamma * _check_times(t))) ** 2

    def phase(self, t):
        return np.arccos(np.sqrt(self.cos2(t)))


@dataclass(frozen=True)
class Ramp:
    """Linearly growing coupling switched off at t0: phase = (pi/2)(t/t0)^2, then pi/2."""

    t0: float

    def __post_init__(self) -> None:
        if not self.t0 > 0:
            raise ValueError(f"t0 must be > 0, got {self.t0}")

    def phase(self, t):
        t = _check_times(t)
        return np.where(t <= self.t0, 0.5 * np.pi * (t / self.t0) ** 2, 0.5 * np.pi)

    def cos2(self, t):
        return np.cos(self.phase(t)) ** 2


@dataclass(frozen=True)
class CavityMode:
    """Sine-shaped cavity transit of duration t0: phase = (pi/4)(1 - cos(pi t/t0)).

    The coupling turns on and off smoothly, so the phase derivative vanishes
    at t = 0 and t = t0.
    """

    t0: float

    def __post_init__(self) -> None:
        if not self.t0 > 0:
            raise ValueError(f"t0 must be > 0, got {self.t0}")

    def phase(self, t):
        t = _check_times(t)
        return np.where(
            t <= self.t0,
            0.25 * np.pi * (1.0 - np.cos(np.pi * t / self.t0)),
            0.5 * np.pi,
        )

    def cos2(self, t):
        return np.cos(self.phase(t)) ** 2


class Tabulated:
    """User-supplied cos^2 profile, linearly interpolated and clamped beyond the grid."""

    def __init__(self, times, cos2_values):
        t = np.asarray(times, dtype=float)
        c = np.asarray(cos2_values, dtype=float)
        if t.ndim != 1 or t.shape != c.shape or t.size < 2:
            raise GridError("tabulated schedule needs two equal-length lists, >= 2 points")
        if np.any(np.diff(t) <= 0):
            raise GridError("tabulated times must be strictly ascending")
        if np.any((c < 0.0) | (c > 1.0)):
            raise GridError("tabulated cos2 values must lie in [0, 1]")
        self.times = t.copy()
        self.cos2_values = c.copy()

    def cos2(self, t):
        t = _check_times(t)
        return np.interp(t, self.times, self.cos2_values)

    def phase(self, t):
        return np.arccos(np.sqrt(self.cos2(t)))


Schedule = Union[ExpDecay, SinExpDecay, Ramp, CavityMode, Tabulated]


def sample(schedule: Schedule, t: float) -> ScheduleSample:
    """Evaluate one schedule point; raises TimeDomainError for t < 0."""
    t = float(t)
    return ScheduleSample(t, float(schedule.cos2(t)), float(schedule.phase(t)))


def default_tmax(schedule: Schedule) -> float:
    """Window covering the interesting dynamics: 6/gamma for decays, 2 t0 otherwise."""
    if isinstance(schedule, (ExpDecay, SinExpDecay)):
        return 6.0 / schedule.gamma
    if isinstance(schedule, (Ramp, CavityMode)):
        return 2.0 * schedule.t0
    return float(schedule.times[-1])


def time_grid(schedule: Schedule, steps: int = DEFAULT_GRID_STEPS, tmax: float | None = None) -> np.ndarray:
    """Uniform grid on [0, tmax] with ``steps`` points."""
    if steps < 2:
        raise GridError(f"grid needs at least 2 points, got {steps}")
    if tmax is None:
        tmax = default_tmax(schedule)
    if not tmax > 0:
        raise GridError(f"tmax must be > 0, got {tmax}")
    return np.linspace(0.0, float(tmax), int(steps))


def tabulated_from_csv(path: str | Path) -> Tabulated:
    """Load a two-column (t, cos2) CSV; a single header row is skipped if present."""
    times: list[float] = []
    values: list[float] = []
    with open(path, newline="") as fh:
        for i, row in enumerate(csv.reader(fh)):
            if not row:
                continue
            try:
                t, c = float(row[0]), float(row[1])
            except (ValueError, IndexError):
                if i == 0:
                    continue  # header
                raise GridError(f"{path}: cannot parse row {i + 1}: {row!r}")
            times.append(t)
            values.append(c)
    return Tabulated(times, values)
