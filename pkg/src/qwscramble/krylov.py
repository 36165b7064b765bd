"""Krylov decomposition of discrete-time operator snapshots.

The Heisenberg snapshots O_0, O_1, ... of a local operator are summarized by
their Gram matrix of normalized Frobenius overlaps. Sequentially
orthogonalizing the snapshots yields an ordered operator basis; tracking how
much of each snapshot lives on each basis vector gives an amplitude table
whose mean index is the complexity growth curve K(t). All of the
orthogonalization runs in (T+1)-dimensional snapshot-coefficient space with
the Gram matrix as metric; no 2L x 2L matrix is ever formed.

Structure worth knowing (holds for every schedule, even L, T <= L/2): one
step moves all support by exactly one site, so snapshots an odd number of
steps apart occupy disjoint sublattices and their overlap is an exact zero,
not merely a small number. With a time-independent step the even
off-diagonals of the Gram matrix are constant along each diagonal.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from functools import partial

import numpy as np

from . import ensemble
from .errors import NumericalDegeneracyError
from .operators import conjugate_step, initial_local_operator
from .walk import WalkConfig, sample_schedule

#: Residual norm-squared below which the snapshot space is treated as exhausted.
DEFAULT_RANK_TOLERANCE = 1e-12

_PSD_TOLERANCE = 1e-10


def gram_matrix(config: WalkConfig, mu: str = "x", site: int = 0) -> np.ndarray:
    """(T+1) x (T+1) overlaps of the backward-conjugated snapshots.

    Normalized so the diagonal is 1 (the raw self-overlap of a one-site
    operator is 2/D). Symmetric, positive semidefinite, and exactly zero on
    odd off-diagonals.
    """
    sites, steps = config.sites, config.steps
    schedule = sample_schedule(config.disorder, sites, steps, config.seed)
    op = initial_local_operator(mu, site, sites)
    plus_rows = [op.plus_state.ravel()]
    minus_rows = [op.minus_state.ravel()]
    for t in range(1, steps + 1):
        op = conjugate_step(op, schedule.angles_for_step(t), "backward")
        plus_rows.append(op.plus_state.ravel())
        minus_rows.append(op.minus_state.ravel())
    a = np.array(plus_rows)
    b = np.array(minus_rows)
    aa = a.conj() @ a.T
    ab = a.conj() @ b.T
    ba = b.conj() @ a.T
    bb = b.conj() @ b.T
    raw = np.abs(aa) ** 2 - np.abs(ab) ** 2 - np.abs(ba) ** 2 + np.abs(bb) ** 2
    return raw / raw[0, 0]


@dataclass(frozen=True)
class KrylovDecomposition:
    """Output of :func:`krylov_decompose`.

    ``coefficients[n]`` expresses basis vector n in snapshot coordinates
    (lower triangular); ``norms[n]`` is the residual norm before
    normalization. ``amplitudes[n, t]`` is the weight of snapshot t on basis
    vector n (zero for n > t by construction), and ``complexity[t]`` its mean
    basis index. ``exhausted_at`` is the snapshot index at which the basis
    stopped growing, or None; amplitude completeness is only guaranteed for
    t below that horizon.
    """

    coefficients: np.ndarray
    norms: np.ndarray
    rank: int
    amplitudes: np.ndarray
    complexity: np.ndarray
    exhausted_at: int | None


def krylov_decompose(gram: np.ndarray, epsilon: float = DEFAULT_RANK_TOLERANCE) -> KrylovDecomposition:
    """Rank-revealing sequential orthogonalization of the snapshot Gram matrix.

    Modified Gram-Schmidt in snapshot order: each snapshot is projected
    against the basis built so far (the projections double as the amplitude
    table), and the residual either extends the basis or, once its norm
    squared drops below ``epsilon``, terminates it. A residual norm squared
    below -1e-10 means the input was not positive semidefinite and raises
    NumericalDegeneracyError naming the offending snapshot.
    """
    gram = np.asarray(gram, dtype=float)
    if gram.ndim != 2 or gram.shape[0] != gram.shape[1]:
        raise ValueError(f"gram matrix must be square, got shape {gram.shape}")
    n = gram.shape[0]
    basis: list[np.ndarray] = []  # coefficient rows c_n
    metric_rows: list[np.ndarray] = []  # cached G @ c_n
    norms: list[float] = []
    amplitudes = np.zeros((n, n))
    exhausted_at: int | None = None
    for t in range(n):
        v = np.zeros(n)
        v[t] = 1.0
        w = gram[:, t].copy()  # w tracks G @ v as v is updated
        for i, (c_i, gc_i) in enumerate(zip(basis, metric_rows)):
            p = float(gc_i @ v)
            v -= p * c_i
            w -= p * gc_i
            amplitudes[i, t] = p
        if exhausted_at is not None:
            continue
        norm_sq = float(v @ w)
        if norm_sq < -_PSD_TOLERANCE:
            raise NumericalDegeneracyError(
                f"gram matrix not positive semidefinite at snapshot {t}: "
                f"residual norm squared {norm_sq!r}"
            )
        if norm_sq < epsilon:
            exhausted_at = t
            continue
        norm = float(np.sqrt(norm_sq))
        amplitudes[len(basis), t] = norm
        basis.append(v / norm)
        metric_rows.append(w / norm)
        norms.append(norm)
    rank = len(basis)
    amplitudes = amplitudes[:rank]
    complexity = np.arange(rank, dtype=float) @ (amplitudes * amplitudes)
    return KrylovDecomposition(
        coefficients=np.array(basis) if basis else np.zeros((0, n)),
        norms=np.array(norms),
        rank=rank,
        amplitudes=amplitudes,
        complexity=complexity,
        exhausted_at=exhausted_at,
    )


def k_complexity(
    config: WalkConfig,
    mu: str = "x",
    site: int = 0,
    epsilon: float = DEFAULT_RANK_TOLERANCE,
) -> np.ndarray:
    """Complexity series K(t) for one schedule draw."""
    return krylov_decompose(gram_matrix(config, mu, site), epsilon).complexity


def _k_task(config: WalkConfig, mu: str, site: int, epsilon: float, seed: int) -> np.ndarray:
    return k_complexity(replace(config, seed=seed), mu, site, epsilon)


def k_complexity_ensemble(
    config: WalkConfig,
    mu: str = "x",
    site: int = 0,
    realizations: int = 1,
    workers: int | None = None,
    epsilon: float = DEFAULT_RANK_TOLERANCE,
) -> tuple[np.ndarray, np.ndarray]:
    """Mean and standard error of K(t) over seeded disorder draws.

    A failed realization aborts the whole ensemble with its index and seed
    in the error message.
    """
    spec = ensemble.EnsembleSpec(realizations=realizations, base_seed=config.seed)
    result = ensemble.run_ensemble(partial(_k_task, config, mu, site, epsilon), spec, workers)
    return result.single()
