import numpy as np
import pytest

from catenoids.errors import DomainError
from catenoids.lorentz import Signature, alpha, minkowski_inner
from catenoids.projection import N_MINUS, N_PLUS, P_MINUS, P_PLUS
from catenoids.singular import (
    TYPE_I_SCENARIOS,
    TYPE_II_SCENARIOS,
    RegionLabel,
    Scenario,
    classify_region,
    classify_regions,
    cone_point,
    endpoint_P,
    extension_residual,
    lies_on_lines,
    light_lines,
    limit_of_sequence,
    limit_set,
    limit_table,
    line_approach_sequence,
    null_check,
    scenario_sequence,
    sector_index,
    singular_curve,
    singular_image,
    singular_residual,
)
from catenoids.surfaces import SurfaceSpec, components_I, components_II
from catenoids.trochoid import gamma

S2 = np.sqrt(2) / 2
I2, I3, II2, II3 = SurfaceSpec("I", 2), SurfaceSpec("I", 3), SurfaceSpec("II", 2), SurfaceSpec("II", 3)


class TestResidual:
    def test_examples(self):
        assert singular_residual(I2, np.sqrt(2), np.pi / 2) == pytest.approx(0, abs=1e-15)
        assert singular_residual(I2, 1, 0) == 3

    @pytest.mark.parametrize("m", [2, 3, 5])
    def test_type_II_rays(self, m):
        for k in range(2 * m):
            assert abs(singular_residual(SurfaceSpec("II", m), 2.5, alpha(k, m))) < 1e-14

    def test_rejects_origin(self):
        with pytest.raises(DomainError):
            singular_residual(I2, 0.0, 1.0)


class TestRegions:
    def test_examples(self):
        assert classify_region(2, 2, 0) is RegionLabel.A_PLUS
        assert classify_region(2, 0.1, np.pi / 2) is RegionLabel.B_PLUS
        assert classify_region(2, -0.1, 0) is RegionLabel.A_MINUS

    def test_singular_label(self):
        assert classify_region(2, np.sqrt(2), np.pi / 2) is RegionLabel.SINGULAR

    def test_odd_negative_sheet(self):
        # for odd m the sign flips: eps^m (r^m + 2 cos) with eps = -1
        assert classify_region(3, -0.1, np.pi / 3) is RegionLabel.A_MINUS
        assert classify_region(3, -0.1, 0.0) is RegionLabel.B_MINUS

    def test_vectorized_matches_scalar(self, rng):
        r = rng.uniform(-3, 3, 400)
        t = rng.uniform(0, 2 * np.pi, 400)
        for m in (2, 3):
            labels = classify_regions(m, r, t)
            assert list(labels) == [classify_region(m, a, b) for a, b in zip(r, t)]

    def test_origin_error(self):
        with pytest.raises(DomainError):
            classify_region(2, 0.0, 1.0)


class TestSingularCurves:
    @pytest.mark.parametrize("m", [2, 3, 4])
    def test_points_are_zeros(self, m):
        for c in range(2 * m):
            r, t = singular_curve(m, c, 100)
            np.testing.assert_allclose(singular_residual(SurfaceSpec("I", m), r, t), 0, atol=1e-12)
            assert np.all(np.sign(r) == (1 if c < m else -1))

    def test_image_closes_at_endpoints(self):
        # r ~ sqrt(dtheta) near the ends, so the gap closes like a square root
        gaps = []
        for samples in (100, 10_000):
            img = singular_image(2, 0, samples)
            np.testing.assert_allclose(minkowski_inner(img, img), 1, atol=1e-10)
            gaps.append(max(np.linalg.norm(img[1] - img[0]), np.linalg.norm(img[-1] - img[-2])))
        assert gaps[1] < gaps[0] / 5
        assert gaps[1] < 0.02

    def test_endpoint_is_gamma(self):
        np.testing.assert_allclose(endpoint_P(2, 0), [0, S2, -S2, 0], atol=1e-15)


class TestConePoints:
    def test_examples(self):
        np.testing.assert_allclose(cone_point(2, 0), [0, -S2, S2, 0], atol=1e-15)
        np.testing.assert_allclose(cone_point(2, 1), [0, S2, S2, 0], atol=1e-15)

    @pytest.mark.parametrize("m", range(2, 7))
    def test_ray_collapses(self, m):
        r = np.geomspace(0.1, 10, 25)
        for k in range(2 * m):
            pts = components_II(m, r, alpha(k, m))
            assert np.ptp(pts, axis=0).max() <= 1e-12
            np.testing.assert_allclose(pts, np.tile(cone_point(m, k), (25, 1)), atol=1e-12)

    def test_equals_minus_gamma(self):
        for m in (2, 3, 4):
            for k in range(2 * m):
                np.testing.assert_allclose(cone_point(m, k)[1:3], -gamma(m, alpha(k, m)), atol=1e-12)


class TestLightLines:
    @pytest.mark.parametrize("spec", [I2, I3, II2, II3])
    def test_null_and_inside(self, spec):
        for k in range(2 * spec.m):
            lines = light_lines(spec, k)
            assert len(lines) == (1 if spec.family.value == "I" else 2)
            for line in lines:
                dd, bb = null_check(line)
                assert dd == 0
                assert bb == pytest.approx(1, abs=1e-14)
                pts = line.points(np.linspace(-5, 5, 21))
                np.testing.assert_allclose(minkowski_inner(pts, pts, Signature.DE_SITTER), 1, atol=1e-12)

    def test_lies_on_lines(self):
        assert lies_on_lines(II2, [3.0, -S2, S2, -3.0])
        assert not lies_on_lines(II2, [0.0, 1.0, 0.0, 0.0])

    def test_approach_sequence_converges_to_line_point(self):
        m, k, t = 2, 0, 0.7
        seq = line_approach_sequence(m, k, t, [1e3, 1e4, 1e5])
        images = components_I(m, seq[:, 0], seq[:, 1])
        target = endpoint_P(m, k) + t * np.array([1, 0, 0, -1])
        errors = np.linalg.norm(images - target, axis=-1)
        assert errors[-1] < 1e-4
        assert errors[0] > errors[1] > errors[2]


class TestLimitTable:
    def test_examples(self):
        assert limit_table(I2, Scenario.A_PLUS) is P_MINUS
        assert limit_table(I3, Scenario.A_MINUS) is P_MINUS
        assert limit_table(I3, Scenario.R_MINUS_INF) is N_MINUS

    def test_even_row(self):
        got = [limit_table(I2, s) for s in TYPE_I_SCENARIOS]
        assert got == [N_MINUS, P_PLUS, P_MINUS, N_PLUS, N_PLUS, P_MINUS]

    def test_odd_row(self):
        got = [limit_table(I3, s) for s in TYPE_I_SCENARIOS]
        assert got == [N_MINUS, N_MINUS, P_MINUS, P_MINUS, N_PLUS, N_PLUS]

    @pytest.mark.parametrize("m", range(2, 7))
    def test_type_II_limit_set(self, m):
        assert limit_set(SurfaceSpec("II", m)) == {P_PLUS, P_MINUS, N_PLUS, N_MINUS}

    def test_unsupported_combination(self):
        with pytest.raises(DomainError):
            limit_table(II2, Scenario.A_PLUS)

    @pytest.mark.parametrize("spec, scenarios", [(I2, TYPE_I_SCENARIOS), (I3, TYPE_I_SCENARIOS),
                                                 (II2, TYPE_II_SCENARIOS), (II3, TYPE_II_SCENARIOS)])
    def test_random_sequences_land_on_table(self, rng, spec, scenarios):
        for scenario in scenarios:
            for _ in range(5):
                seq = scenario_sequence(spec, scenario, rng, [1e4, 1e5, 1e6])
                out = limit_of_sequence(spec, seq)
                assert out.status == "ideal", (scenario, out)
                assert out.ideal is limit_table(spec, scenario)

    def test_sequence_examples(self):
        js = np.array([1e4, 1e5, 1e6])
        assert limit_of_sequence(I2, np.stack([js, 0 * js], -1)).ideal is N_MINUS
        inside_b = np.stack([1 / js, np.full(3, np.pi / 2 - 0.05)], -1)
        assert limit_of_sequence(I2, inside_b).ideal is N_PLUS

    def test_bounded_sequence(self):
        seq = line_approach_sequence(2, 0, 0.5, [1e2, 1e3, 1e4])
        out = limit_of_sequence(I2, seq)
        assert out.status == "bounded"
        np.testing.assert_allclose(out.last_point, endpoint_P(2, 0) + 0.5 * np.array([1, 0, 0, -1]), atol=1e-3)

    @pytest.mark.parametrize("m", [2, 3, 4])
    def test_sign_of_x0_per_sector(self, rng, m):
        theta = rng.uniform(0, 2 * np.pi, 500)
        theta = theta[np.abs(np.cos(m * theta)) > 1e-3]
        x0 = components_II(m, 2.0, theta)[:, 0]
        k = sector_index(m, theta)
        np.testing.assert_array_equal(np.sign(x0), (-1.0) ** (k + 1))


class TestExtensionResidual:
    def test_cone_point(self):
        assert extension_residual(II2, cone_point(2, 0)) <= 1e-9

    def test_surface_points(self, rng):
        for _ in range(20):
            r, t = np.exp(rng.uniform(-2, 2)), rng.uniform(0, 2 * np.pi)
            assert extension_residual(II2, components_II(2, r, t), theta_samples=10_000) <= 1e-6

    def test_line_points(self):
        for k in range(4):
            for line in light_lines(II2, k):
                for t in (-3.0, 0.0, 0.5, 4.0):
                    assert extension_residual(II2, line.points(t)) <= 1e-9

    def test_off_set_point(self):
        assert extension_residual(II2, [0, 0, 0, 1]) > 0.1

    def test_family_I_rejected(self):
        with pytest.raises(DomainError):
            extension_residual(I2, [0, 1, 0, 0])


@pytest.mark.parametrize("m", [2, 3, 4, 5])
def test_type_I_singular_set_has_2m_components(m):
    # each component is a graph over one theta-interval; count the intervals
    # on theta-circles where the residual changes sign along r
    theta = np.linspace(0, 2 * np.pi, 4000, endpoint=False)
    components = 0
    for sheet in (1, -1):
        r = sheet * np.geomspace(1e-3, 3, 400)
        R, T = np.meshgrid(r, theta, indexing="ij")
        crosses = np.any(np.diff(np.sign(singular_residual(SurfaceSpec("I", m), R, T)), axis=0) != 0, axis=0)
        runs = np.sum(crosses & ~np.roll(crosses, 1))
        components += int(runs)
    assert components == 2 * m
