import numpy as np
import pytest

from catenoids.lorentz import alpha
from catenoids.surfaces import components_I
from catenoids.trochoid import (
    PLANAR_CONSTANT,
    TrochoidParams,
    curvature_sign_changes,
    fit_hypotrochoid,
    fit_planar_constant,
    gamma,
    hausdorff,
    hypotrochoid,
    hypotrochoid_period,
    is_convex,
    signed_curvature,
    speed,
    trochoid_params,
    turning_number,
)

THETA = np.linspace(0, 2 * np.pi, 10_000, endpoint=False)


def test_gamma_values():
    np.testing.assert_allclose(gamma(2, 0.0), [5 / 4, 0], atol=1e-15)
    s = np.sqrt(2) / 2
    np.testing.assert_allclose(gamma(2, np.pi / 4), [s, -s], atol=1e-15)


@pytest.mark.parametrize("m", range(2, 7))
def test_half_turn_symmetry(m):
    np.testing.assert_allclose(gamma(m, THETA + np.pi), (-1) ** (m + 1) * gamma(m, THETA), atol=1e-12)


@pytest.mark.parametrize("m", range(2, 6))
def test_is_the_small_r_limit(m):
    theta = THETA[::50]
    near = components_I(m, 1e-7, theta)[:, 1:3]
    np.testing.assert_allclose(near, gamma(m, theta), atol=1e-6)


@pytest.mark.parametrize("m", range(2, 7))
def test_values_at_singular_angles(m):
    for k in range(2 * m):
        a = alpha(k, m)
        np.testing.assert_allclose(gamma(m, a), (-1) ** k * np.array([np.sin(a), -np.cos(a)]), atol=1e-12)


@pytest.mark.parametrize("m", range(2, 7))
def test_regular(m):
    assert speed(m, THETA).min() > 0


class TestParams:
    @pytest.mark.parametrize(
        "m, expected", [(2, (1 / 2, 3 / 8, 9 / 8)), (3, (1, 2 / 3, 4 / 3)), (4, (3 / 2, 15 / 16, 25 / 16))]
    )
    def test_values(self, m, expected):
        p = trochoid_params(m)
        assert (p.r_c, p.r_m, p.d) == pytest.approx(expected)

    def test_rm_nonzero(self):
        with pytest.raises(ValueError):
            TrochoidParams(1.0, 0.0, 1.0)


class TestRoulette:
    def test_d_zero_is_a_circle(self):
        p = trochoid_params(3)
        pts = hypotrochoid(p, np.linspace(0, 10, 50), d=0.0)
        np.testing.assert_allclose(np.hypot(pts[:, 0], pts[:, 1]), abs(p.r_c - p.r_m), atol=1e-14)

    def test_start_point(self):
        p = trochoid_params(2)
        np.testing.assert_allclose(hypotrochoid(p, 0.0), [p.r_c - p.r_m + p.d, 0], atol=1e-15)

    @pytest.mark.parametrize("m", [2, 3, 4, 5])
    def test_reparametrizes_gamma(self, m):
        """With the fixed circle of radius r_c the roulette at s = (m+1) theta is gamma itself."""
        p = trochoid_params(m)
        np.testing.assert_allclose(hypotrochoid(p, (m + 1) * THETA), gamma(m, THETA), atol=1e-12)

    def test_period(self):
        # (R - rho)/rho = 3/5 for m = 4
        assert hypotrochoid_period(trochoid_params(4)) == pytest.approx(10 * np.pi)

    def test_bad_fixed_name(self):
        with pytest.raises(ValueError):
            hypotrochoid(trochoid_params(2), 0.0, fixed="r_x")


class TestHausdorff:
    def test_circle_against_shifted_circle(self):
        circle = lambda t: np.stack([np.cos(t), np.sin(t)], -1)
        shifted = lambda t: np.stack([np.cos(t) + 0.1, np.sin(t)], -1)
        assert hausdorff(circle, 2 * np.pi, shifted, 2 * np.pi, 2000) == pytest.approx(0.1, abs=1e-6)

    def test_fit_picks_r_c(self):
        fit = fit_hypotrochoid(3, n=4000)
        assert fit.fixed == "r_c"
        assert fit.distance < 1e-6
        assert fit.candidates["r_m"] > 0.1


class TestCurvature:
    @pytest.mark.parametrize("m", [2, 3])
    def test_convex_cases(self, m):
        assert curvature_sign_changes(m) == 0
        assert is_convex(m)

    @pytest.mark.parametrize("m", [4, 5, 6])
    def test_not_convex_from_m_4(self, m):
        assert not is_convex(m)
        assert abs(turning_number(m)) > 1.5

    @pytest.mark.parametrize("m", range(2, 7))
    def test_curvature_touches_zero_without_crossing(self, m):
        k = signed_curvature(m, THETA)
        assert k.max() <= 1e-9
        kk = signed_curvature(m, np.array([alpha(j, m) for j in range(2 * m)]))
        np.testing.assert_allclose(kk, 0, atol=1e-9)

    def test_turning_numbers(self):
        assert [round(turning_number(m)) for m in range(2, 7)] == [-1, -1, -3, -2, -5]


@pytest.mark.parametrize("m", range(2, 6))
def test_planar_constant(m):
    c, residual = fit_planar_constant(m)
    assert c == pytest.approx(PLANAR_CONSTANT, abs=1e-12)
    assert residual < 1e-12
