"""Deterministic seeded ensembles with order-independent parallel execution.

Realization ``r`` of a run with base seed ``b`` always uses the derived seed
``derived_seed(b, r)`` (a counter-keyed SeedSequence), so realizations can be
computed in any order, on any number of workers, and still reduce to
bit-identical results: outputs are stacked in realization order and reduced
with a fixed summation order. BLAS pools are pinned to one thread inside each
realization so worker count cannot leak into the arithmetic.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

import numpy as np
from joblib import Parallel, delayed
from threadpoolctl import threadpool_limits

WORKERS_ENV_VAR = "QWSCRAMBLE_WORKERS"


@dataclass(frozen=True)
class EnsembleSpec:
    """How many realizations to run and the seed they all derive from."""

    realizations: int
    base_seed: int
    reduction: str = "mean_stderr"

    def __post_init__(self) -> None:
        if self.realizations < 1:
            raise ValueError(f"realizations must be >= 1, got {self.realizations}")
        if self.reduction != "mean_stderr":
            raise ValueError(f"unknown reduction {self.reduction!r}")


@dataclass(frozen=True)
class EnsembleResult:
    """Cell-wise mean and standard error, mirroring the task output structure."""

    mean: tuple[np.ndarray, ...]
    stderr: tuple[np.ndarray, ...]
    realizations: int

    def single(self) -> tuple[np.ndarray, np.ndarray]:
        """(mean, stderr) for tasks that return one array."""
        if len(self.mean) != 1:
            raise ValueError("task returned multiple arrays; index .mean/.stderr directly")
        return self.mean[0], self.stderr[0]


def derived_seed(base_seed: int, index: int) -> int:
    """Counter-derived 64-bit seed for realization ``index``."""
    ss = np.random.SeedSequence(base_seed, spawn_key=(index,))
    return int(ss.generate_state(1, np.uint64)[0])


def resolve_workers(workers: int | None = None) -> int:
    """Worker budget: explicit argument, else QWSCRAMBLE_WORKERS, else 1."""
    if workers is None:
        workers = int(os.environ.get(WORKERS_ENV_VAR, "1"))
    if workers < 1:
        raise ValueError(f"workers must be >= 1, got {workers}")
    return workers


def _run_one(task, index: int, seed: int):
    try:
        with threadpool_limits(limits=1):
            out = task(seed)
    except Exception as exc:  # noqa: BLE001 - re-raise with realization context
        raise type(exc)(f"realization {index} (seed {seed}) failed: {exc}") from exc
    return out if isinstance(out, tuple) else (out,)


def run_ensemble(task, spec: EnsembleSpec, workers: int | None = None) -> EnsembleResult:
    """Run ``task(seed)`` for every derived seed and reduce cell-wise.

    ``task`` must be a pure function of its seed returning an ndarray or a
    tuple of ndarrays. Any realization failure aborts the whole ensemble with
    the realization index and seed attached to the error.
    """
    seeds = [derived_seed(spec.base_seed, r) for r in range(spec.realizations)]
    if len(set(seeds)) != len(seeds):
        raise RuntimeError("derived seeds collided; change the base seed")
    n_jobs = min(resolve_workers(workers), spec.realizations)
    outputs = Parallel(n_jobs=n_jobs)(
        delayed(_run_one)(task, r, s) for r, s in enumerate(seeds)
    )
    n_parts = len(outputs[0])
    means, stderrs = [], []
    for part in range(n_parts):
        stacked = np.stack([np.asarray(out[part], dtype=float) for out in outputs])
        # Bit-identical realizations (e.g. zero disorder width) reduce to the
        # single output with an exact zero error, not summation dust.
        if spec.realizations == 1 or bool((stacked == stacked[0]).all()):
            means.append(stacked[0].copy())
            stderrs.append(np.zeros_like(stacked[0]))
        else:
            means.append(stacked.mean(axis=0))
            stderrs.append(stacked.std(axis=0, ddof=1) / np.sqrt(spec.realizations))
    return EnsembleResult(mean=tuple(means), stderr=tuple(stderrs), realizations=spec.realizations)
