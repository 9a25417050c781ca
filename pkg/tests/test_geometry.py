import numpy as np
import pytest

from specgeo.divergences import d1
from specgeo.geometry import (
    GeodesicPath,
    expansion_check_d1,
    expansion_check_d2,
    geodesic_distance,
    metric_g1,
    metric_g2,
    perturbation,
    psd_geodesic,
)
from specgeo.psd import FrequencyGrid, MatrixPsd, ar_psd, example_ar_polynomials, scalar_example_pair
from specgeo.sampling import random_ma_psd


def field(grid, values):
    return perturbation(MatrixPsd.constant(grid, np.eye(1)), values)


class TestMetrics:
    def test_g1_diagonal(self, small_grid):
        f = MatrixPsd.constant(small_grid, np.diag([1.0, 4.0]))
        delta = perturbation(f, np.broadcast_to(np.diag([1.0, 2.0]), (small_grid.n_points, 2, 2)))
        assert metric_g1(f, delta) == pytest.approx(1.25, abs=1e-13)

    def test_g1_scale_invariant(self, small_grid, rng):
        f = random_ma_psd(rng, small_grid, 2, order=2)
        delta = perturbation(f, random_ma_psd(rng, small_grid, 2, order=1).values)
        a = metric_g1(f, delta)
        b = metric_g1(f.scaled(7.0), perturbation(f, 7.0 * delta.values))
        assert b == pytest.approx(a, rel=1e-12)

    def test_g2_scalar_is_variance(self, small_grid, rng):
        f = random_ma_psd(rng, small_grid, 1, order=2)
        d = np.cos(small_grid.theta) + 0.3 * np.sin(3 * small_grid.theta)
        delta = perturbation(f, d)
        r = d / f.values[:, 0, 0].real
        assert metric_g2(f, delta) == pytest.approx(np.mean(r**2) - np.mean(r) ** 2, rel=1e-9)
        assert metric_g1(f, delta) == pytest.approx(np.mean(r**2), rel=1e-12)

    def test_g2_degenerate_along_scaling(self, small_grid, rng):
        # Delta = f + constant multiples of f_+ f_+^H: X is constant, spread zero
        f = random_ma_psd(rng, small_grid, 2, order=2)
        delta = perturbation(f, 0.5 * f.values)
        assert metric_g2(f, delta) < 1e-12
        assert metric_g1(f, delta) == pytest.approx(0.5, rel=1e-12)

    def test_g2_bounded_by_g1(self, small_grid, rng):
        for _ in range(5):
            f = random_ma_psd(rng, small_grid, 2, order=2)
            delta = perturbation(f, random_ma_psd(rng, small_grid, 2, order=2).values)
            assert 0 <= metric_g2(f, delta) <= metric_g1(f, delta) + 1e-12


class TestGeodesic:
    def test_endpoints(self, grid):
        f0, f1 = scalar_example_pair(grid)
        np.testing.assert_allclose(psd_geodesic(f0, f1, 0).values, f0.values, rtol=1e-12)
        np.testing.assert_allclose(psd_geodesic(f0, f1, 1).values, f1.values, rtol=1e-10)

    def test_scalar_closed_form(self, grid):
        f0, f1 = scalar_example_pair(grid)
        a, b = f0.values[:, 0, 0].real, f1.values[:, 0, 0].real
        for tau in (1 / 3, 2 / 3, 4 / 3, -0.5):
            np.testing.assert_allclose(
                psd_geodesic(f0, f1, tau).values[:, 0, 0].real, a ** (1 - tau) * b**tau, rtol=1e-10
            )

    def test_distance_scalar(self, grid):
        f0, f1 = scalar_example_pair(grid)
        lr = np.log(f1.values[:, 0, 0].real / f0.values[:, 0, 0].real)
        assert geodesic_distance(f0, f1) == pytest.approx(np.sqrt(np.mean(lr**2)), rel=1e-12)

    def test_constant_speed(self, small_grid, rng):
        f0 = random_ma_psd(rng, small_grid, 2, order=2)
        f1 = random_ma_psd(rng, small_grid, 2, order=2)
        path = GeodesicPath(f0, f1)
        L = path.length
        for tau in (0.25, 0.5, 0.8):
            assert geodesic_distance(f0, path(tau)) == pytest.approx(tau * L, rel=1e-9)
            assert geodesic_distance(path(tau), f1) == pytest.approx((1 - tau) * L, rel=1e-9)

    def test_distance_is_sqrt_log_spectral(self, small_grid, rng):
        from specgeo.divergences import d_log_spectral

        f0 = random_ma_psd(rng, small_grid, 2, order=2)
        f1 = random_ma_psd(rng, small_grid, 2, order=2)
        assert geodesic_distance(f0, f1) ** 2 == pytest.approx(d_log_spectral(f0, f1).value, rel=1e-12)

    def test_stays_admissible_when_extrapolated(self, grid):
        f0, f1 = scalar_example_pair(grid)
        out = psd_geodesic(f0, f1, 4 / 3)
        assert np.all(out.values[:, 0, 0].real > 0)

    def test_symmetric_geodesic_distance(self, small_grid, rng):
        f0 = random_ma_psd(rng, small_grid, 3, order=2)
        f1 = random_ma_psd(rng, small_grid, 3, order=2)
        assert geodesic_distance(f0, f1) == pytest.approx(geodesic_distance(f1, f0), rel=1e-10)


class TestExpansion:
    def test_scalar_d1_ratio_closed_form(self, small_grid):
        # D1(1, 1+eps) = eps^2/(1+eps), so |D1 - eps^2| / eps^3 = 1/(1+eps)
        f = MatrixPsd.constant(small_grid, [[1.0]])
        delta = perturbation(f, np.ones(small_grid.n_points))
        t = expansion_check_d1(f, delta)
        np.testing.assert_allclose(t.ratio, 1 / (1 + t.eps), rtol=1e-7)
        assert t.passed

    def test_zero_perturbation(self, small_grid, rng):
        f = random_ma_psd(rng, small_grid, 2, order=2)
        delta = perturbation(f, np.zeros_like(f.values))
        assert expansion_check_d1(f, delta).passed
        assert expansion_check_d2(f, delta).passed

    def test_random_pairs(self, small_grid, rng):
        for _ in range(3):
            f = random_ma_psd(rng, small_grid, 2, order=2)
            delta = perturbation(f, random_ma_psd(rng, small_grid, 2, order=2).values)
            assert expansion_check_d1(f, delta).passed
            assert expansion_check_d2(f, delta).passed

    def test_d1_quadratic_dominates(self, small_grid, rng):
        f = random_ma_psd(rng, small_grid, 2, order=2)
        delta = perturbation(f, random_ma_psd(rng, small_grid, 2, order=2).values)
        g = metric_g1(f, delta)
        eps = 1e-5
        v = d1(f, MatrixPsd(small_grid, f.values + eps * delta.values)).value
        assert v / (g * eps**2) == pytest.approx(1.0, abs=1e-3)


def test_grid_refinement_converges():
    # geodesic distance between AR spectra: the gap between successive grids shrinks
    a0, a1 = example_ar_polynomials()
    ds = [geodesic_distance(ar_psd(a0, FrequencyGrid(n)), ar_psd(a1, FrequencyGrid(n))) for n in (256, 512, 1024, 2048)]
    gaps = np.abs(np.diff(ds))
    assert gaps[-1] < gaps[0]
    assert gaps[-1] / ds[-1] < 1e-6
