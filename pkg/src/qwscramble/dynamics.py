"""Walker-state evolution, position statistics, and closed-form band quantities."""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import partial

import numpy as np

from . import ensemble
from .walk import DOWN, UP, WalkConfig, centered_labels, sample_schedule, step, to_centered

INITIAL_KINDS = ("symmetric", "up", "down")


def initial_state(sites: int, kind: str = "symmetric", site: int = 0) -> np.ndarray:
    """Localized walker at one site.

    ``symmetric`` is (|up> + i|down>)/sqrt(2), which spreads evenly in both
    directions; ``up`` and ``down`` are the bare spin states.
    """
    if kind not in INITIAL_KINDS:
        raise ValueError(f"initial kind must be one of {INITIAL_KINDS}, got {kind!r}")
    psi = np.zeros((2, sites), dtype=complex)
    x = site % sites
    if kind == "symmetric":
        psi[UP, x] = 1.0 / math.sqrt(2.0)
        psi[DOWN, x] = 1.0j / math.sqrt(2.0)
    elif kind == "up":
        psi[UP, x] = 1.0
    else:
        psi[DOWN, x] = 1.0
    return psi


@dataclass(frozen=True)
class Trajectory:
    """Per-step position distributions and their participation ratios.

    ``probs`` has shape (T+1, L) (row 0 is the initial distribution) and each
    row sums to 1 up to rounding; ``ipr`` holds sum_x p_x^2 per row.
    """

    probs: np.ndarray
    ipr: np.ndarray


def ipr(distribution: np.ndarray) -> float:
    """Inverse participation ratio sum_x p_x^2; 1 when localized, 1/L uniform."""
    p = np.asarray(distribution, dtype=float)
    return float(np.sum(p * p))


def position_variance(distribution: np.ndarray) -> float:
    """Variance of the (internal-order) position distribution in centered labels."""
    p = to_centered(np.asarray(distribution, dtype=float))
    x = centered_labels(p.shape[-1]).astype(float)
    mean = float(np.sum(p * x))
    return float(np.sum(p * x * x) - mean * mean)


def _distribution(psi: np.ndarray) -> np.ndarray:
    return np.abs(psi[UP]) ** 2 + np.abs(psi[DOWN]) ** 2


def evolve(config: WalkConfig, initial: np.ndarray | None = None) -> Trajectory:
    """Run the walk and record the position distribution at every step.

    The coin schedule is drawn once from ``config.seed``: spatial disorder
    freezes one angle per site for the whole run, temporal disorder uses a
    fresh angle each step, a clean walk keeps the single mean angle.
    """
    if initial is None:
        initial = initial_state(config.sites)
    if initial.shape != (2, config.sites):
        raise ValueError(f"initial state must have shape (2, {config.sites}), got {initial.shape}")
    schedule = sample_schedule(config.disorder, config.sites, config.steps, config.seed)
    probs = np.empty((config.steps + 1, config.sites))
    iprs = np.empty(config.steps + 1)
    psi = initial
    probs[0] = _distribution(psi)
    iprs[0] = ipr(probs[0])
    for t in range(1, config.steps + 1):
        psi = step(psi, schedule.angles_for_step(t))
        probs[t] = _distribution(psi)
        iprs[t] = ipr(probs[t])
    return Trajectory(probs=probs, ipr=iprs)


def _trajectory_task(config: WalkConfig, initial_kind: str, seed: int):
    from dataclasses import replace

    traj = evolve(replace(config, seed=seed), initial_state(config.sites, initial_kind))
    return traj.probs, traj.ipr


def trajectory_ensemble(
    config: WalkConfig,
    realizations: int,
    initial_kind: str = "symmetric",
    workers: int | None = None,
) -> ensemble.EnsembleResult:
    """Mean and standard error of (probs, ipr) over seeded disorder draws."""
    spec = ensemble.EnsembleSpec(realizations=realizations, base_seed=config.seed)
    return ensemble.run_ensemble(partial(_trajectory_task, config, initial_kind), spec, workers)


# --- closed-form quantities of the translation-invariant walk ---------------

def _radicand(k: float, theta: float) -> float:
    return k * k * math.cos(theta) + 2.0 * (1.0 - math.cos(theta))


def dispersion(k: float, theta: float) -> float:
    """Positive branch of the long-wavelength dispersion.

    omega(k) = sqrt(k^2 cos(theta) + 2(1 - cos(theta))). Raises ValueError if
    the radicand is negative (possible once cos(theta) < 0).
    """
    r = _radicand(k, theta)
    if r < 0.0:
        raise ValueError(
            f"dispersion undefined: negative radicand {r!r} at k={k!r}, theta={theta!r}"
        )
    return math.sqrt(r)


def group_velocity(k: float, theta: float) -> float:
    """d omega / dk on the positive branch.

    The point (k, theta) = (0, 0) is a removable 0/0 singularity; along the
    theta = 0 line the velocity is sign(k) * 1, so +1 is returned there.
    """
    r = _radicand(k, theta)
    if r < 0.0:
        raise ValueError(
            f"group velocity undefined: negative radicand {r!r} at k={k!r}, theta={theta!r}"
        )
    if r == 0.0:
        if k == 0.0 and theta == 0.0:
            return 1.0
        raise ValueError(f"group velocity singular at k={k!r}, theta={theta!r}")
    return k * math.cos(theta) / math.sqrt(r)


def butterfly_velocity(theta: float, k_points: int = 257) -> float:
    """Wavefront speed estimate: max |group velocity| over a k grid in [-pi, pi]."""
    if k_points < 64:
        raise ValueError(f"k_points must be at least 64, got {k_points}")
    ks = np.linspace(-math.pi, math.pi, k_points)
    return max(abs(group_velocity(float(k), theta)) for k in ks)


def localization_length(theta: float) -> float:
    """Disorder localization scale 1/|ln cos(theta)| for theta in [0, pi/2].

    Returns ``math.inf`` at theta = 0 (no confinement) and 0.0 at theta =
    pi/2. The magnitude of the logarithm is used so the length is positive.
    """
    if not (0.0 <= theta <= math.pi / 2):
        raise ValueError(f"localization length defined for theta in [0, pi/2], got {theta!r}")
    if theta == 0.0:
        return math.inf
    if theta == math.pi / 2:
        return 0.0
    return 1.0 / abs(math.log(math.cos(theta)))
