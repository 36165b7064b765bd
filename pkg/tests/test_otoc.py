import math

import numpy as np
import pytest

from qwscramble import (
    DisorderSpec,
    NumericalDegeneracyError,
    WalkConfig,
    butterfly_velocity,
    front_extent,
    front_velocity,
    otoc_grid,
    otoc_grid_ensemble,
)
from qwscramble.dense import otoc_grid_dense
from qwscramble.otoc import norm_value

ALL_PAIRS = [mu + nu for mu in "xyz" for nu in "xyz"]


def _clean(theta, sites, steps, seed=0):
    return WalkConfig(sites=sites, steps=steps, disorder=DisorderSpec(kind="clean", theta0=theta), seed=seed)


class TestInitialRows:
    def test_crossed_pair_at_origin(self):
        # At t=0 the only nonzero cell of a crossed pair is the shared site,
        # where the squared commutator of two Pauli matrices traces to 8.
        sites = 50
        grid = otoc_grid(_clean(0.9, sites, 4), ["xz", "yx", "zy"])
        for pair in grid.pairs:
            row = grid.values[pair][0]
            assert row[0] == pytest.approx(4 / (2 * sites), rel=1e-12)
            assert np.all(row[1:] == 0.0)

    def test_same_pair_commutes_at_t0(self):
        grid = otoc_grid(_clean(0.9, 20, 3), ["xx", "yy", "zz"])
        for pair in grid.pairs:
            assert np.abs(grid.values[pair][0]).max() < 1e-15

    def test_t0_symmetric_under_pair_swap(self):
        grid = otoc_grid(_clean(1.2, 16, 2), ["xz", "zx", "xy", "yx"])
        assert np.allclose(grid.values["xz"][0], grid.values["zx"][0], atol=1e-15)
        assert np.allclose(grid.values["xy"][0], grid.values["yx"][0], atol=1e-15)

    def test_identity_coin_front_cells(self):
        sites, steps = 24, 8
        n = norm_value("1/D", sites)
        grid = otoc_grid(_clean(0.0, sites, steps), ["xz"])
        for t in range(1, steps + 1):
            row = grid.values["xz"][t]
            assert row[t] == pytest.approx(n, rel=1e-12)
            assert row[(-t) % sites] == pytest.approx(n, rel=1e-12)
            mask = np.ones(sites, bool)
            mask[[t, (-t) % sites]] = False
            assert np.all(row[mask] == 0.0)


class TestDenseOracleAgreement:
    @pytest.mark.parametrize("kind", ["clean", "spatial", "temporal"])
    def test_all_pairs_small_lattice(self, kind):
        disorder = DisorderSpec(
            kind=kind, theta0=math.pi / 5, strength=math.pi / 2 if kind != "clean" else 0.0
        )
        config = WalkConfig(sites=8, steps=4, disorder=disorder, seed=13)
        n = norm_value("1/D", config.sites)
        fast = otoc_grid(config, ALL_PAIRS)
        slow = otoc_grid_dense(config, ALL_PAIRS, n)
        worst = max(np.abs(fast.values[p] - slow[p]).max() for p in ALL_PAIRS)
        assert worst < 1e-10


class TestGridStructure:
    @pytest.mark.parametrize("theta", [0.0, math.pi / 6, math.pi / 4])
    def test_exact_zeros_outside_cone(self, theta):
        sites, steps = 40, 20
        grid = otoc_grid(_clean(theta, sites, steps), ["xx", "xz"])
        x = np.arange(sites)
        dist = np.minimum(x, sites - x)
        for pair in grid.pairs:
            for t in range(steps + 1):
                assert np.all(grid.values[pair][t][dist > t] == 0.0)

    def test_normalization_rescales_every_cell(self):
        config = _clean(math.pi / 4, 30, 12)
        base = otoc_grid(config, ["xx"], norm="1/D")
        half = otoc_grid(config, ["xx"], norm="1/2")
        bare = otoc_grid(config, ["xx"], norm="1")
        ratio = 0.5 / (1 / 60)
        assert np.allclose(half.values["xx"], ratio * base.values["xx"], rtol=1e-12, atol=1e-18)
        assert np.allclose(bare.values["xx"], 2 * half.values["xx"], rtol=1e-12, atol=1e-18)

    def test_unknown_norm_or_pair_rejected(self):
        config = _clean(0.3, 10, 2)
        with pytest.raises(ValueError):
            otoc_grid(config, ["xx"], norm="1/4")
        with pytest.raises(ValueError):
            otoc_grid(config, ["xq"])

    def test_shell_structure_behind_the_front(self):
        # The cell at the origin rises as the front passes, then empties out.
        sites, steps = 100, 50
        grid = otoc_grid(_clean(math.pi / 4, sites, steps), ["xx"])
        origin_series = grid.values["xx"][:, 0]
        assert origin_series[steps] < 0.05 * origin_series.max()


class TestFrontVelocity:
    def test_identity_coin_front_speed(self):
        grid = otoc_grid(_clean(0.0, 100, 50), ["xz"])
        fit = front_velocity(grid.values["xz"])
        assert fit is not None
        assert abs(fit.slope - 1.0) <= 0.02
        assert fit.residual_rms < 0.1

    def test_planted_half_speed_front(self):
        steps, sites = 60, 200
        values = np.zeros((steps + 1, sites))
        for t in range(steps + 1):
            extent = math.ceil(0.5 * t)
            values[t, extent % sites] = 1.0
            values[t, -extent % sites] = 1.0
        fit = front_velocity(values)
        assert fit is not None
        assert abs(fit.slope - 0.5) <= 0.02

    def test_all_zero_grid_has_no_front(self):
        assert front_velocity(np.zeros((20, 30))) is None

    def test_threshold_above_late_rows_has_no_front(self):
        values = np.zeros((21, 40))
        values[0, 0] = 1.0  # single early spike, nothing in the fit window
        assert front_velocity(values) is None

    def test_front_invariant_under_rescaling(self):
        config = _clean(math.pi / 4, 60, 30)
        v1 = front_velocity(otoc_grid(config, ["xx"], norm="1/D").values["xx"])
        v2 = front_velocity(otoc_grid(config, ["xx"], norm="1").values["xx"])
        assert v1.slope == pytest.approx(v2.slope, abs=1e-12)

    def test_measured_clean_front_tracks_lattice_speed(self):
        # Regression: at theta = pi/4 the 10%-threshold front runs at ~0.68,
        # just behind the lattice group-velocity bound cos(theta) ~ 0.707.
        # The long-wavelength formula (butterfly_velocity) overshoots at the
        # band edge and sits ~0.13 above the measured slope.
        grid = otoc_grid(_clean(math.pi / 4, 100, 50), ["xx"])
        fit = front_velocity(grid.values["xx"])
        assert 0.65 <= fit.slope <= math.cos(math.pi / 4)
        assert butterfly_velocity(math.pi / 4) - fit.slope > 0.1

    def test_rejects_bad_threshold(self):
        with pytest.raises(ValueError):
            front_velocity(np.ones((4, 6)), threshold_fraction=0.0)


class TestFrontExtent:
    def test_identity_coin_extent_equals_time(self):
        grid = otoc_grid(_clean(0.0, 60, 25), ["xz"])
        for t in (5, 10, 25):
            assert front_extent(grid.values["xz"], t) == t

    def test_no_cell_above_threshold(self):
        values = np.zeros((5, 10))
        values[0, 0] = 1.0
        assert front_extent(values, 4) is None


class TestEnsembleGrid:
    def test_zero_width_matches_single_run(self):
        config = WalkConfig(
            sites=30,
            steps=12,
            disorder=DisorderSpec(kind="temporal", theta0=0.7, strength=0.0),
            seed=5,
        )
        single = otoc_grid(config, ["xx"])
        avg = otoc_grid_ensemble(config, ["xx"], realizations=4)
        assert np.array_equal(avg.values["xx"], single.values["xx"])
        assert np.all(avg.stderr["xx"] == 0.0)
        assert avg.realizations == 4

    def test_disorder_average_shrinks_front(self):
        theta0 = math.pi / 4
        clean = otoc_grid(_clean(theta0, 60, 30), ["xx"])
        spatial = otoc_grid_ensemble(
            WalkConfig(
                sites=60,
                steps=30,
                disorder=DisorderSpec(kind="spatial", theta0=theta0, strength=math.pi / 2),
                seed=77,
            ),
            ["xx"],
            realizations=20,
        )
        assert front_extent(spatial.values["xx"], 30) < front_extent(clean.values["xx"], 30)
