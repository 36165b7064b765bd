"""Lattice conventions, coin matrices, disorder schedules, and the one-step unitary.

Conventions used throughout the package:

* Walker amplitudes are complex arrays of shape ``(2, L)``: row 0 holds the
  spin-up component, row 1 spin-down; columns are ring sites ``0 .. L-1``.
* One step applies the 2x2 coin rotation site by site, then shifts the
  spin-down component by +1 and the spin-up component by -1, with periodic
  wraparound.
* Internal storage indexes sites ``0 .. L-1``; reporting maps to centered
  labels ``-L/2 .. L/2-1`` with the walker origin at label 0.

All functions here are pure: inputs are never mutated.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

import numpy as np

UP = 0
DOWN = 1

DISORDER_KINDS = ("clean", "spatial", "temporal")
DISTRIBUTIONS = ("uniform", "binary")


def coin_matrix(theta: float) -> np.ndarray:
    """Return the 2x2 coin rotation [[cos t, sin t], [-sin t, cos t]].

    Real orthogonal with determinant 1, hence unitary.
    """
    if not math.isfinite(theta):
        raise ValueError(f"coin angle must be finite, got {theta!r}")
    c, s = math.cos(theta), math.sin(theta)
    return np.array([[c, s], [-s, c]], dtype=complex)


@dataclass(frozen=True)
class DisorderSpec:
    """Coin-angle disorder: none, frozen per site, or redrawn per step.

    ``strength`` is the full width W of the angle window; sampled angles lie
    in ``[theta0 - W/2, theta0 + W/2]``. ``distribution`` selects i.i.d.
    uniform draws over that interval or over its two endpoints.
    """

    kind: str = "clean"
    theta0: float = math.pi / 4
    strength: float = 0.0
    distribution: str = "uniform"

    def __post_init__(self) -> None:
        if self.kind not in DISORDER_KINDS:
            raise ValueError(f"disorder kind must be one of {DISORDER_KINDS}, got {self.kind!r}")
        if not math.isfinite(self.theta0):
            raise ValueError(f"theta0 must be finite, got {self.theta0!r}")
        if not (0.0 <= self.strength <= math.pi):
            raise ValueError(f"disorder strength must lie in [0, pi], got {self.strength!r}")
        if self.distribution not in DISTRIBUTIONS:
            raise ValueError(f"distribution must be one of {DISTRIBUTIONS}, got {self.distribution!r}")


@dataclass(frozen=True)
class WalkConfig:
    """Fully determines one evolution run: ring size, steps, disorder, seed."""

    sites: int
    steps: int
    disorder: DisorderSpec = field(default_factory=DisorderSpec)
    seed: int = 0

    def __post_init__(self) -> None:
        if not isinstance(self.sites, int) or self.sites <= 0 or self.sites % 2:
            raise ValueError(f"sites must be a positive even integer, got {self.sites!r}")
        if not isinstance(self.steps, int) or self.steps <= 0:
            raise ValueError(f"steps must be a positive integer, got {self.steps!r}")
        if not isinstance(self.seed, int) or not (0 <= self.seed < 2**64):
            raise ValueError(f"seed must be an unsigned 64-bit integer, got {self.seed!r}")
        if self.steps > self.sites // 2:
            # Beyond L/2 the causal cone wraps and ring results depart from
            # the infinite line; still well defined, so warn rather than fail.
            warnings.warn(
                f"steps={self.steps} exceeds sites/2={self.sites // 2}; "
                "the causal cone will wrap around the ring",
                stacklevel=2,
            )


@dataclass(frozen=True)
class CoinSchedule:
    """Resolved coin angles for a run.

    ``angles`` is a scalar for a clean run, an ``(L,)`` array frozen in time
    for spatial disorder, or a ``(T,)`` array (one angle per step) for
    temporal disorder.
    """

    kind: str
    angles: np.ndarray

    def angles_for_step(self, t: int):
        """Coin angle(s) active at step ``t`` (steps are numbered 1..T)."""
        if self.kind == "temporal":
            return self.angles[t - 1]
        return self.angles


def sample_schedule(spec: DisorderSpec, sites: int, steps: int, seed: int) -> CoinSchedule:
    """Draw the coin-angle schedule for one run; deterministic in ``seed``."""
    if spec.kind == "clean":
        return CoinSchedule("clean", np.float64(spec.theta0))
    n = sites if spec.kind == "spatial" else steps
    rng = np.random.default_rng(seed)
    lo = spec.theta0 - spec.strength / 2.0
    hi = spec.theta0 + spec.strength / 2.0
    if spec.distribution == "uniform":
        angles = rng.uniform(lo, hi, n)
    else:
        angles = lo + spec.strength * rng.integers(0, 2, n)
    return CoinSchedule(spec.kind, angles)


def _check_state_and_row(state: np.ndarray, thetas) -> np.ndarray:
    if state.ndim != 2 or state.shape[0] != 2:
        raise ValueError(f"state must have shape (2, L), got {state.shape}")
    thetas = np.asarray(thetas, dtype=float)
    if thetas.ndim not in (0, 1) or (thetas.ndim == 1 and thetas.shape[0] != state.shape[1]):
        raise ValueError(
            f"coin angles must be scalar or shape ({state.shape[1]},), got {thetas.shape}"
        )
    return thetas


def step(state: np.ndarray, thetas) -> np.ndarray:
    """Apply one walk step U = shift . coin to a ``(2, L)`` state.

    ``thetas`` is a single angle or one angle per site. Zero amplitudes move
    as exact zeros, so strict-cone support statements hold in floating point.
    """
    thetas = _check_state_and_row(state, thetas)
    c, s = np.cos(thetas), np.sin(thetas)
    up = c * state[UP] + s * state[DOWN]
    down = -s * state[UP] + c * state[DOWN]
    out = np.empty_like(state)
    out[UP] = np.roll(up, -1)
    out[DOWN] = np.roll(down, 1)
    return out


def step_inverse(state: np.ndarray, thetas) -> np.ndarray:
    """Apply the inverse step U^-1: undo the shift, then the coin transpose."""
    thetas = _check_state_and_row(state, thetas)
    up = np.roll(state[UP], 1)
    down = np.roll(state[DOWN], -1)
    c, s = np.cos(thetas), np.sin(thetas)
    out = np.empty_like(state)
    out[UP] = c * up - s * down
    out[DOWN] = s * up + c * down
    return out


def centered_labels(sites: int) -> np.ndarray:
    """Site labels ``-L/2 .. L/2-1`` matching :func:`to_centered` columns."""
    return np.arange(sites) - sites // 2


def to_centered(values: np.ndarray) -> np.ndarray:
    """Reorder the last (site) axis from internal ``0..L-1`` to centered labels."""
    return np.roll(values, values.shape[-1] // 2, axis=-1)
