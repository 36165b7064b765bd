import math

import numpy as np
import pytest

from qwscramble import (
    DisorderSpec,
    WalkConfig,
    centered_labels,
    coin_matrix,
    sample_schedule,
    step,
    step_inverse,
    to_centered,
)
from qwscramble.walk import DOWN, UP


class TestCoinMatrix:
    def test_zero_angle_is_identity(self):
        assert np.array_equal(coin_matrix(0.0), np.eye(2))

    def test_quarter_turn(self):
        expected = np.array([[0.0, 1.0], [-1.0, 0.0]])
        assert np.allclose(coin_matrix(math.pi / 2), expected, atol=1e-15)

    def test_pi_over_4_entries(self):
        c = coin_matrix(math.pi / 4)
        r = math.sqrt(0.5)
        assert np.allclose(c, [[r, r], [-r, r]], atol=1e-15)

    @pytest.mark.parametrize("theta", np.linspace(0, 2 * math.pi, 17, endpoint=False))
    def test_unitary_with_unit_determinant(self, theta):
        c = coin_matrix(theta)
        assert np.abs(c.conj().T @ c - np.eye(2)).max() < 1e-14
        assert abs(np.linalg.det(c) - 1.0) < 1e-14

    @pytest.mark.parametrize("bad", [math.nan, math.inf, -math.inf])
    def test_rejects_non_finite(self, bad):
        with pytest.raises(ValueError):
            coin_matrix(bad)


class TestDisorderSpec:
    def test_rejects_strength_outside_range(self):
        with pytest.raises(ValueError):
            DisorderSpec(kind="spatial", strength=-0.1)
        with pytest.raises(ValueError):
            DisorderSpec(kind="spatial", strength=math.pi + 0.1)

    def test_rejects_unknown_kind_and_distribution(self):
        with pytest.raises(ValueError):
            DisorderSpec(kind="melodic")
        with pytest.raises(ValueError):
            DisorderSpec(distribution="gaussian")


class TestSampleSchedule:
    @pytest.mark.parametrize("kind", ["spatial", "temporal"])
    @pytest.mark.parametrize("distribution", ["uniform", "binary"])
    def test_zero_width_is_constant(self, kind, distribution):
        spec = DisorderSpec(kind=kind, theta0=0.7, strength=0.0, distribution=distribution)
        sched = sample_schedule(spec, sites=16, steps=9, seed=5)
        assert np.all(sched.angles == 0.7)

    def test_clean_ignores_seed(self):
        spec = DisorderSpec(kind="clean", theta0=1.1)
        for seed in (0, 1, 2**63):
            sched = sample_schedule(spec, sites=8, steps=4, seed=seed)
            assert sched.angles == np.float64(1.1)
            assert sched.angles_for_step(3) == np.float64(1.1)

    def test_spatial_uniform_bounds_and_determinism(self):
        spec = DisorderSpec(kind="spatial", theta0=math.pi / 4, strength=math.pi / 2)
        first = sample_schedule(spec, sites=200, steps=10, seed=99)
        again = sample_schedule(spec, sites=200, steps=10, seed=99)
        assert first.angles.shape == (200,)
        assert np.all(first.angles >= 0.0) and np.all(first.angles <= math.pi / 2)
        assert np.array_equal(first.angles, again.angles)

    def test_temporal_length_matches_steps(self):
        spec = DisorderSpec(kind="temporal", theta0=0.5, strength=0.2)
        sched = sample_schedule(spec, sites=10, steps=33, seed=1)
        assert sched.angles.shape == (33,)
        assert sched.angles_for_step(1) == sched.angles[0]
        assert sched.angles_for_step(33) == sched.angles[32]

    def test_binary_draws_from_two_point_set(self):
        spec = DisorderSpec(kind="spatial", theta0=1.0, strength=0.5, distribution="binary")
        sched = sample_schedule(spec, sites=400, steps=1, seed=3)
        values = set(np.unique(sched.angles))
        assert values == {0.75, 1.25}


class TestWalkConfig:
    def test_rejects_odd_sites(self):
        with pytest.raises(ValueError):
            WalkConfig(sites=11, steps=2)

    def test_rejects_bad_steps_and_seed(self):
        with pytest.raises(ValueError):
            WalkConfig(sites=10, steps=0)
        with pytest.raises(ValueError):
            WalkConfig(sites=10, steps=2, seed=-1)
        with pytest.raises(ValueError):
            WalkConfig(sites=10, steps=2, seed=2**64)

    def test_warns_when_cone_can_wrap(self):
        with pytest.warns(UserWarning, match="wrap"):
            WalkConfig(sites=10, steps=6)


def _random_state(rng, sites):
    psi = rng.normal(size=(2, sites)) + 1j * rng.normal(size=(2, sites))
    return psi / np.linalg.norm(psi)


class TestStep:
    def test_identity_coin_shifts_up_left(self):
        sites = 8
        psi = np.zeros((2, sites), dtype=complex)
        psi[UP, 0] = 1.0
        out = step(psi, 0.0)
        assert out[UP, sites - 1] == 1.0
        assert np.count_nonzero(out) == 1

    def test_identity_coin_shifts_down_right(self):
        psi = np.zeros((2, 8), dtype=complex)
        psi[DOWN, 0] = 1.0
        out = step(psi, 0.0)
        assert out[DOWN, 1] == 1.0
        assert np.count_nonzero(out) == 1

    def test_norm_preserved_for_random_states_and_schedules(self):
        rng = np.random.default_rng(11)
        for _ in range(20):
            psi = _random_state(rng, 30)
            thetas = rng.uniform(0, 2 * math.pi, 30)
            out = step(psi, thetas)
            assert abs(np.linalg.norm(out) - np.linalg.norm(psi)) < 1e-12

    def test_step_then_inverse_is_identity(self):
        rng = np.random.default_rng(7)
        psi = _random_state(rng, 24)
        thetas = rng.uniform(0, math.pi, 24)
        back = step_inverse(step(psi, thetas), thetas)
        assert np.abs(back - psi).max() < 1e-12

    def test_dimension_mismatch_raises(self):
        psi = np.zeros((2, 8), dtype=complex)
        with pytest.raises(ValueError):
            step(psi, np.zeros(7))
        with pytest.raises(ValueError):
            step(np.zeros((3, 8), dtype=complex), 0.3)

    def test_strict_causality_and_sublattice_parity(self):
        sites, origin = 40, 9
        rng = np.random.default_rng(2)
        psi = np.zeros((2, sites), dtype=complex)
        psi[:, origin] = _random_state(rng, 1)[:, 0]
        for t in range(1, 13):
            psi = step(psi, rng.uniform(0, math.pi, sites))
            occupied = np.nonzero(np.abs(psi).sum(axis=0))[0]
            dist = np.minimum((occupied - origin) % sites, (origin - occupied) % sites)
            assert dist.max() <= t
            assert np.all((occupied - origin - t) % 2 == 0)


class TestCenteredLabels:
    def test_labels_range(self):
        labels = centered_labels(8)
        assert labels.tolist() == [-4, -3, -2, -1, 0, 1, 2, 3]

    def test_roundtrip_places_origin_in_middle(self):
        values = np.arange(8.0)  # value i sits at internal site i
        rolled = to_centered(values)
        labels = centered_labels(8)
        assert rolled[labels.tolist().index(0)] == 0.0
        assert rolled[labels.tolist().index(-1)] == 7.0
