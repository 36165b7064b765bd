"""Dense-matrix oracles: literal, slow implementations used to validate fast paths.

Everything here works on full 2L x 2L matrices in the flattened (spin, site)
basis (index = spin * L + site) and refuses to run above L = 32 unless told
otherwise. None of it is used by production code paths.
"""

from __future__ import annotations

import numpy as np

from .operators import SIGMA
from .walk import WalkConfig, sample_schedule

MAX_DENSE_SITES = 32


def _check_size(sites: int, allow_large: bool) -> None:
    if sites > MAX_DENSE_SITES and not allow_large:
        raise ValueError(
            f"dense oracle limited to {MAX_DENSE_SITES} sites (got {sites}); "
            "pass allow_large=True to override"
        )


def step_unitary_dense(thetas, sites: int) -> np.ndarray:
    """The full one-step unitary: per-site coin blocks followed by the shift."""
    thetas = np.broadcast_to(np.asarray(thetas, dtype=float), (sites,))
    dim = 2 * sites
    coin = np.zeros((dim, dim), dtype=complex)
    for x in range(sites):
        c, s = np.cos(thetas[x]), np.sin(thetas[x])
        coin[x, x] = c
        coin[x, sites + x] = s
        coin[sites + x, x] = -s
        coin[sites + x, sites + x] = c
    shift = np.zeros((dim, dim), dtype=complex)
    for x in range(sites):
        shift[(x - 1) % sites, x] = 1.0  # spin-up moves -1
        shift[sites + (x + 1) % sites, sites + x] = 1.0  # spin-down moves +1
    return shift @ coin


def local_operator_dense(mu: str, site: int, sites: int) -> np.ndarray:
    """sigma^mu tensored with the projector onto one site."""
    proj = np.zeros((sites, sites))
    proj[site, site] = 1.0
    return np.kron(SIGMA[mu], proj)


def evolve_dense(config: WalkConfig, initial: np.ndarray, allow_large: bool = False) -> np.ndarray:
    """Position distributions from brute-force matrix-vector evolution."""
    _check_size(config.sites, allow_large)
    schedule = sample_schedule(config.disorder, config.sites, config.steps, config.seed)
    psi = initial.reshape(-1).astype(complex)
    probs = np.empty((config.steps + 1, config.sites))
    probs[0] = np.abs(psi[: config.sites]) ** 2 + np.abs(psi[config.sites :]) ** 2
    for t in range(1, config.steps + 1):
        u = step_unitary_dense(schedule.angles_for_step(t), config.sites)
        psi = u @ psi
        probs[t] = np.abs(psi[: config.sites]) ** 2 + np.abs(psi[config.sites :]) ** 2
    return probs


def otoc_grid_dense(
    config: WalkConfig,
    pairs: list[str],
    norm_value: float,
    allow_large: bool = False,
) -> dict[str, np.ndarray]:
    """Commutator correlator grids from the literal definition.

    The probe on site l is Heisenberg-evolved with the accumulated step
    unitary and the squared commutator with the origin operator is traced
    directly, one (t, l) cell at a time. Columns are internal site order.
    """
    _check_size(config.sites, allow_large)
    sites, steps = config.sites, config.steps
    schedule = sample_schedule(config.disorder, sites, steps, config.seed)
    origin_ops = {nu: local_operator_dense(nu, 0, sites) for nu in {p[1] for p in pairs}}
    probe_ops = {mu: [local_operator_dense(mu, x, sites) for x in range(sites)] for mu in {p[0] for p in pairs}}
    grids = {pair: np.empty((steps + 1, sites)) for pair in pairs}
    u_total = np.eye(2 * sites, dtype=complex)
    for t in range(steps + 1):
        if t > 0:
            u_total = step_unitary_dense(schedule.angles_for_step(t), sites) @ u_total
        for pair in pairs:
            mu, nu = pair
            v = origin_ops[nu]
            for x in range(sites):
                w_t = u_total.conj().T @ probe_ops[mu][x] @ u_total
                comm = w_t @ v - v @ w_t
                grids[pair][t, x] = 0.5 * norm_value * np.trace(comm.conj().T @ comm).real
    return grids


def gram_dense(config: WalkConfig, mu: str, site: int, allow_large: bool = False) -> np.ndarray:
    """Snapshot Gram matrix from dense Frobenius traces, unit-normalized."""
    _check_size(config.sites, allow_large)
    sites, steps = config.sites, config.steps
    schedule = sample_schedule(config.disorder, sites, steps, config.seed)
    snap = local_operator_dense(mu, site, sites)
    snapshots = [snap]
    for t in range(1, steps + 1):
        u = step_unitary_dense(schedule.angles_for_step(t), sites)
        snap = u.conj().T @ snap @ u
        snapshots.append(snap)
    d = 2 * sites
    raw = np.empty((steps + 1, steps + 1))
    for i, a in enumerate(snapshots):
        for j, b in enumerate(snapshots):
            raw[i, j] = np.trace(a.conj().T @ b).real / d
    return raw / raw[0, 0]
