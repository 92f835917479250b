"""Acceptance suite: one test group per numbered criterion.

Each group stores its verdict in ``conftest.ACCEPTANCE``; the terminal
summary then prints one ``[PASS]``/``[FAIL]`` line per criterion.  Run it on
its own with ``python tests/test_acceptance.py``.
"""

import filecmp
import sys
from pathlib import Path

import numpy as np
import pytest
from conftest import ACCEPTANCE

from catenoids.diffgeo import fundamental_forms, richardson_ok
from catenoids.figures import make_figures
from catenoids.lorentz import (
    Signature,
    alpha,
    involution_iota,
    minkowski_inner,
    rotation_involution,
)
from catenoids.projection import (
    N_MINUS,
    N_PLUS,
    P_MINUS,
    P_PLUS,
    hollowball_project,
    in_hollowball,
    in_solid_torus,
    solid_torus_project,
)
from catenoids.singular import (
    TYPE_I_SCENARIOS,
    TYPE_II_SCENARIOS,
    limit_of_sequence,
    limit_set,
    limit_table,
    scenario_sequence,
)
from catenoids.surfaces import (
    SurfaceSpec,
    ads_surface,
    blowup_angle,
    blowup_chart,
    components_I,
    components_II,
    frame,
    surface_from_frame,
    surface_function,
)
from catenoids.trochoid import (
    curvature_sign_changes,
    fit_hypotrochoid,
    fit_planar_constant,
    gamma,
    signed_curvature,
)
from catenoids.verify import check_degeneracy, sample_regular, signature_of

MS = range(2, 7)
DS, ADS = Signature.DE_SITTER, Signature.ANTI_DE_SITTER


def record(number, title, part, passed, detail):
    """Merge one sub-result into the verdict for ``number``."""
    _, ok, text = ACCEPTANCE.get(number, (title, True, ""))
    piece = f"{part} {detail}" if part else detail
    ACCEPTANCE[number] = (title, ok and passed, f"{text}; {piece}" if text else piece)


def domain(rng, n, both_sheets):
    r = np.exp(rng.uniform(-np.log(2), np.log(2), n))
    if both_sheets:
        r = r * rng.choice([-1.0, 1.0], n)
    return r, rng.uniform(0, 2 * np.pi, n)


# --- 1 ---------------------------------------------------------------------


def test_1_membership(rng):
    worst = {}
    for m in MS:
        r, t = domain(rng, 1000, True)
        p = components_I(m, r, t)
        worst[f"I{m}"] = np.max(np.abs(minkowski_inner(p, p, DS) - 1))
        r, t = domain(rng, 1000, False)
        p = components_II(m, r, t)
        worst[f"II{m}"] = np.max(np.abs(minkowski_inner(p, p, DS) - 1))
        s, t = rng.uniform(0, 2 * np.pi, (2, 1000))
        p = ads_surface(m, s, t)
        worst[f"AdS{m}"] = np.max(np.abs(minkowski_inner(p, p, ADS) + 1))
    value = max(worst.values())
    record(1, "membership", "", value <= 1e-10, f"max residual {value:.2e} (tol 1e-10)")
    assert value <= 1e-10, worst


# --- 2 ---------------------------------------------------------------------


def test_2_frame_consistency(rng):
    agree, det = 0.0, 0.0
    for family, closed in (("I", components_I), ("II", components_II)):
        for m in MS:
            r, t = domain(rng, 1000, False)
            z = r * np.exp(1j * t)
            spec = SurfaceSpec(family, m)
            agree = max(agree, np.max(np.abs(closed(m, r, t) - surface_from_frame(spec, z))))
            det = max(det, np.max(np.abs(np.linalg.det(frame(spec, z)) - 1)))
    passed = agree <= 1e-10 and det <= 1e-10
    record(2, "frame consistency", "", passed, f"components {agree:.2e}, det {det:.2e} (tol 1e-10)")
    assert passed


# --- 3 ---------------------------------------------------------------------


def cmc_errors(spec, rng, n=200):
    """|H| - 1 at n step-halving-validated regular points, plus every rejected draw."""
    surf, sig = surface_function(spec), signature_of(spec)
    errors, accepted, rejected = [], 0, 0
    while accepted < n and rejected <= 0.05 * n:
        u, v = sample_regular(spec, rng, n - accepted)
        H = fundamental_forms(surf, sig, u, v).H
        ok = np.array([richardson_ok(surf, sig, float(a), float(b)) for a, b in zip(u, v)])
        errors.append(np.abs(np.abs(H) - 1))
        accepted += int(ok.sum())
        rejected += int((~ok).sum())
    return float(np.max(np.concatenate(errors))), accepted, rejected


@pytest.mark.parametrize("family, tol", [("I", 1e-4), ("II", 1e-4), ("AdS", 1e-3)])
def test_3_cmc(rng, family, tol):
    worst, rejected = 0.0, 0
    for m in range(2, 6):
        err, accepted, rej = cmc_errors(SurfaceSpec(family, m), rng)
        assert accepted >= 200, (m, rej)
        worst, rejected = max(worst, err), rejected + rej
    record(3, "constant mean curvature one", family, worst <= tol,
           f"max ||H|-1| {worst:.1e} (tol {tol:g}, {rejected} redrawn)")
    assert worst <= tol


# --- 4 ---------------------------------------------------------------------


@pytest.mark.parametrize("family", ["I", "II", "AdS"])
def test_4_singular_locus(family):
    ratios = []
    for m in MS:
        check = check_degeneracy(SurfaceSpec(family, m))
        ratios.append(check.value)
    worst = max(ratios)
    record(4, "singular locus = metric degeneracy", family, worst < 1,
           f"max near/far det ratio {worst:.1e}")
    assert worst < 1


# --- 5 ---------------------------------------------------------------------


def test_5_cone_points():
    r = np.array([0.1, 0.2, 0.5, 1.0, 2.0, 5.0, 10.0])
    spread, error = 0.0, 0.0
    for m in MS:
        for k in range(2 * m):
            a = alpha(k, m)
            pts = components_II(m, r, a)
            spread = max(spread, np.ptp(pts, axis=0).max())
            expect = (-1) ** k * np.array([0, -np.sin(a), np.cos(a), 0])
            error = max(error, np.abs(pts - expect).max())
    passed = spread <= 1e-12 and error <= 1e-12
    record(5, "cone points", "", passed, f"spread {spread:.1e}, offset {error:.1e} (tol 1e-12)")
    assert passed


# --- 6 ---------------------------------------------------------------------

LIMIT_CASES = [("I", 2), ("I", 3)] + [("II", m) for m in MS]


@pytest.mark.parametrize("family, m", LIMIT_CASES)
def test_6_limit_table(rng, family, m):
    spec = SurfaceSpec(family, m)
    scenarios = TYPE_I_SCENARIOS if family == "I" else TYPE_II_SCENARIOS
    js = [1e4, 1e5, 1e6]
    worst, misses = 0.0, []
    for scenario in scenarios:
        target = np.array(limit_table(spec, scenario).coords)
        for _ in range(20):
            seq = scenario_sequence(spec, scenario, rng, js)
            tail = hollowball_project(components_I(m, *seq[-1]) if family == "I" else components_II(m, *seq[-1]))
            dist = float(np.linalg.norm(tail - target))
            worst = max(worst, dist)
            if dist > 1e-3 or limit_of_sequence(spec, seq).ideal != limit_table(spec, scenario):
                misses.append(scenario.value)
    passed = not misses
    if family == "II":
        exact = limit_set(spec) == {P_PLUS, P_MINUS, N_PLUS, N_MINUS}
        passed = passed and exact
    record(6, "limit table", f"{family}{m}", passed, f"{worst:.1e}")
    assert passed, sorted(set(misses))


# --- 7 ---------------------------------------------------------------------


@pytest.mark.parametrize("m", [2, 3, 4, 5])
def test_7_blowup_chart(m):
    s = np.linspace(-2, 2, 41)
    tau = (m * m - 1) / (4 * m) * s
    chart_err, agree_err, min_sv = 0.0, 0.0, np.inf
    h = 1e-5
    for k in range(2 * m):
        g = gamma(m, alpha(k, m))
        expect = np.stack([tau, np.full_like(s, g[0]), np.full_like(s, g[1]), -tau], axis=-1)
        chart_err = max(chart_err, np.abs(blowup_chart(m, k, 0.0, s) - expect).max())
        for r in (1e-3, 1e-2):
            theta = blowup_angle(m, k, r, s)
            agree_err = max(agree_err, np.abs(blowup_chart(m, k, r, s) - components_I(m, r, theta)).max())
        for sv in (-1.0, -0.5, 0.5, 1.0):
            d_r = (blowup_chart(m, k, h, sv) - blowup_chart(m, k, -h, sv)) / (2 * h)
            d_s = (blowup_chart(m, k, 0.0, sv + h) - blowup_chart(m, k, 0.0, sv - h)) / (2 * h)
            min_sv = min(min_sv, np.linalg.svd(np.stack([d_r, d_s], 1), compute_uv=False)[-1])
    passed = chart_err <= 1e-12 and agree_err <= 1e-9 and min_sv > 1e-3
    record(7, "blow-up chart", f"m={m}", passed,
           f"line {chart_err:.0e}, chart/components {agree_err:.0e}, min singular value {min_sv:.2f}")
    assert passed


# --- 8 ---------------------------------------------------------------------

GRID = np.linspace(0, 2 * np.pi, 10_000, endpoint=False)
TROCHOID = "limit curve and hypo-trochoid"


@pytest.mark.parametrize("m", MS)
def test_8a_half_turn_symmetry(m):
    err = np.abs(gamma(m, GRID + np.pi) - (-1) ** (m + 1) * gamma(m, GRID)).max()
    record(8, TROCHOID, f"(a) m={m}", err <= 1e-12, f"{err:.0e}")
    assert err <= 1e-12


@pytest.mark.parametrize("m", [2, 3])
def test_8b_single_signed_curvature(m):
    k = signed_curvature(m, GRID)
    single = bool(np.all(k <= 1e-9) or np.all(k >= -1e-9))
    record(8, TROCHOID, f"(b) m={m}", single, "single-signed" if single else "changes sign")
    assert single


@pytest.mark.xfail(strict=True, reason="the curvature of the m = 4 curve touches zero but never changes sign")
def test_8b_sign_change_at_m_4():
    changes = curvature_sign_changes(4)
    k = signed_curvature(4, GRID)
    detail = f"(b) m=4 sign changes {changes}, curvature range [{k.min():.2f}, {k.max():.1e}]"
    record(8, TROCHOID, "", changes > 0, detail)
    assert changes > 0


@pytest.mark.parametrize("m", [2, 3, 4])
def test_8c_hypotrochoid_fit(m):
    fit = fit_hypotrochoid(m)
    record(8, TROCHOID, f"(c) m={m}", fit.distance <= 1e-6, f"Hausdorff {fit.distance:.0e}")
    assert fit.distance <= 1e-6


def test_8d_planar_constant():
    values = [fit_planar_constant(m)[0] for m in range(2, 6)]
    spread = max(values) - min(values)
    record(8, TROCHOID, "(d)", spread <= 1e-10, f"c = {values[0]:.12g}, spread {spread:.0e}")
    assert spread <= 1e-10


# --- 9 ---------------------------------------------------------------------


def test_9_hyperbola_slices(rng):
    worst, sign_ok = 0.0, True
    for m in MS:
        r, t = np.exp(rng.uniform(-3, 3, 10_000)), rng.uniform(0, 2 * np.pi, 10_000)
        p = components_II(m, r, t)
        c = np.cos(m * t)
        worst = max(worst, np.abs(p[:, 0] ** 2 - p[:, 3] ** 2 - ((m * m - 1) / (2 * m)) ** 2 * c**2).max())
        sign_ok &= bool(np.all(np.sign(c) * p[:, 0] <= 0))
    passed = worst <= 1e-10 and sign_ok
    record(9, "hyperbola slices", "", passed, f"identity {worst:.1e}, sign condition {'holds' if sign_ok else 'fails'}")
    assert passed


# --- 10 --------------------------------------------------------------------


def test_10_projection_bounds(rng):
    outside = 0
    for m in MS:
        r = np.exp(rng.uniform(-1.5, 1.5, 10_000))
        t = rng.uniform(0, 2 * np.pi, 10_000)
        for p in (components_I(m, r * rng.choice([-1, 1], 10_000), t), components_II(m, r, t)):
            outside += int((~in_hollowball(hollowball_project(p))).sum())
        s = rng.uniform(0, 2 * np.pi, 10_000)
        outside += int((~in_solid_torus(solid_torus_project(ads_surface(m, s, t)))).sum())
    record(10, "projection bounds", "", outside == 0, f"{outside} samples outside")
    assert outside == 0


# --- 11 --------------------------------------------------------------------


def test_11_symmetries(rng):
    errors = {}
    for m in MS:
        r, t = domain(rng, 1000, False)
        if m % 2:
            errors[f"odd I{m}"] = np.abs(components_I(m, -r, t + np.pi) - components_I(m, r, t)).max()
        else:
            errors[f"iota I{m}"] = np.abs(components_I(m, -r, t) - involution_iota(components_I(m, r, t))).max()
        for k in range(2 * m):
            mirrored = rotation_involution(k, m, components_II(m, r, 2 * alpha(k, m) - t))
            errors[f"rot II{m} k{k}"] = np.abs(components_II(m, r, t) - involution_iota(mirrored)).max()
    worst = max(errors.values())
    record(11, "symmetries", "", worst <= 1e-10, f"max error {worst:.1e} (tol 1e-10)")
    assert worst <= 1e-10, max(errors, key=errors.get)


# --- 12 --------------------------------------------------------------------


def test_12_determinism(tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    make_figures(a)
    make_figures(b)
    names = sorted(p.name for p in a.iterdir())
    assert names == sorted(p.name for p in b.iterdir())
    _, mismatch, errors = filecmp.cmpfiles(a, b, names, shallow=False)
    passed = not mismatch and not errors
    record(12, "determinism", "", passed, f"{len(names)} artifacts, {len(mismatch)} differ")
    assert passed, mismatch


if __name__ == "__main__":
    sys.exit(pytest.main([str(Path(__file__)), "-q"]))
