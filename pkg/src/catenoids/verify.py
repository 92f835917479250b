"""Property suite behind ``catenoids verify``.

Each check returns a :class:`Check`; :func:`run_suite` collects the checks
relevant to one surface into a JSON-serialisable report.
"""

from __future__ import annotations

import dataclasses
import logging
import math
import time

import numpy as np

from .diffgeo import DEFAULT_STEP, fundamental_forms, metric_determinant, richardson_ok
from .lorentz import (
    Signature,
    alpha,
    involution_iota,
    minkowski_inner,
    rotation_involution,
)
from .projection import (
    hollowball_project,
    in_hollowball,
    in_solid_torus,
    solid_torus_project,
)
from .singular import (
    TYPE_I_SCENARIOS,
    TYPE_II_SCENARIOS,
    cone_point,
    extension_residual,
    limit_of_sequence,
    limit_table,
    scenario_sequence,
    singular_residual,
)
from .surfaces import (
    Family,
    SurfaceSpec,
    blowup_angle,
    blowup_chart,
    components_I,
    components_II,
    end_coefficient,
    evaluate,
    frame,
    surface_from_frame,
    surface_function,
)
from .trochoid import gamma

log = logging.getLogger(__name__)


@dataclasses.dataclass
class Check:
    name: str
    passed: bool
    value: float
    tolerance: float
    detail: dict = dataclasses.field(default_factory=dict)

    def to_dict(self) -> dict:
        out = dataclasses.asdict(self)
        out["value"] = _jsonable(self.value)
        out["detail"] = {k: _jsonable(v) for k, v in self.detail.items()}
        return out


def _jsonable(x):
    if isinstance(x, (bool, np.bool_)):
        return bool(x)
    if isinstance(x, (int, np.integer)):
        return int(x)
    if isinstance(x, (float, np.floating)):
        x = float(x)
        return x if math.isfinite(x) else str(x)
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    return x


def signature_of(spec: SurfaceSpec) -> Signature:
    return Signature.ANTI_DE_SITTER if spec.family is Family.ADS else Signature.DE_SITTER


# --- sampling ---------------------------------------------------------------


def sample_domain(spec: SurfaceSpec, rng: np.random.Generator, n: int, log_r: float = math.log(2.0)):
    """Random ``(u, theta)``; ``|r| = exp(U(-log_r, log_r))``, both sheets for type I."""
    theta = rng.uniform(0, 2 * np.pi, n)
    if spec.family is Family.ADS:
        return rng.uniform(0, 2 * np.pi, n), theta
    r = np.exp(rng.uniform(-log_r, log_r, n))
    if spec.family is Family.I:
        r = r * rng.choice([-1.0, 1.0], n)
    return r, theta


def sample_regular(spec: SurfaceSpec, rng: np.random.Generator, n: int, min_residual: float = 0.1, log_r: float = 1.0):
    """Random points with ``|singular residual| >= min_residual``."""
    us, ts = [], []
    while sum(len(u) for u in us) < n:
        u, t = sample_domain(spec, rng, 4 * n, log_r)
        keep = np.abs(singular_residual(spec, u, t)) >= min_residual
        us.append(u[keep])
        ts.append(t[keep])
    return np.concatenate(us)[:n], np.concatenate(ts)[:n]


# --- checks -----------------------------------------------------------------


def check_membership(spec: SurfaceSpec, rng, n: int = 1000, tol: float = 1e-10) -> Check:
    u, t = sample_domain(spec, rng, n)
    sig = signature_of(spec)
    p = evaluate(spec, u, t)
    err = float(np.max(np.abs(minkowski_inner(p, p, sig) - sig.curvature)))
    return Check("membership", err <= tol, err, tol, {"samples": n, "target": sig.curvature})


def check_frame(spec: SurfaceSpec, rng, n: int = 1000, tol: float = 1e-10) -> Check:
    r, t = sample_domain(spec, rng, n)
    if spec.family is Family.I:
        r = np.abs(r)  # the frame is holomorphic on C \ {0}; r < 0 is the extension
        closed = components_I(spec.m, r, t)
    else:
        closed = components_II(spec.m, r, t)
    z = r * np.exp(1j * t)
    via_frame = surface_from_frame(spec, z)
    agree = float(np.max(np.abs(closed - via_frame)))
    det = float(np.max(np.abs(np.linalg.det(frame(spec, z)) - 1)))
    value = max(agree, det)
    return Check("frame_consistency", value <= tol, value, tol, {"component_error": agree, "det_error": det})


def check_cmc(spec: SurfaceSpec, rng, n: int = 200, tol: float | None = None, h: float = DEFAULT_STEP) -> Check:
    """``|H| = 1`` at ``n`` regular points whose estimate passes the step-halving check.

    Points failing the check are replaced by fresh draws and counted.  They
    occur close to the singular set, where rounding in the smaller steps is
    amplified by ``1 / det I``.  The tolerance is asserted on every drawn
    point, rejected or not; more than 5% rejections fails the check.
    """
    if tol is None:
        tol = 1e-3 if spec.family is Family.ADS else 1e-4
    sig = signature_of(spec)
    surf = surface_function(spec)
    errors, accepted, rejected = [], 0, 0
    while accepted < n:
        u, t = sample_regular(spec, rng, n - accepted)
        H = fundamental_forms(surf, sig, u, t, h).H
        errors.append(np.abs(np.abs(H) - 1))
        ok = np.array([richardson_ok(surf, sig, float(a), float(b), h) for a, b in zip(u, t)])
        accepted += int(ok.sum())
        rejected += int((~ok).sum())
        if rejected > 0.05 * n:
            break
    err = float(np.max(np.concatenate(errors)))
    passed = err <= tol and accepted >= n
    return Check("cmc", passed, err, tol, {"validated": accepted, "rejected": rejected, "step": h})


def degeneracy_grid(spec: SurfaceSpec, n: int = 200):
    """``(residual, |det I|)`` on an ``n x n`` grid straddling the singular set."""
    theta = 2 * np.pi * np.arange(n) / n
    if spec.family is Family.I:
        half = np.geomspace(0.25, 1.6, n // 2)
        u = np.concatenate([-half[::-1], half])
    elif spec.family is Family.II:
        u = np.geomspace(0.25, 4.0, n)
    else:
        u = 2 * np.pi * np.arange(n) / n
    U, T = np.meshgrid(u, theta, indexing="ij")
    res = singular_residual(spec, U, T)
    det = np.abs(metric_determinant(surface_function(spec), signature_of(spec), U, T))
    return res, det


def check_degeneracy(spec: SurfaceSpec, n: int = 200, delta: float = 0.1) -> Check:
    """Matched thresholds: the metric is smaller everywhere near the residual's zero set.

    Passes when ``max |det I|`` over ``|residual| <= delta/10`` is below
    ``min |det I|`` over ``|residual| >= delta`` and both sets are populated.
    """
    res, det = degeneracy_grid(spec, n)
    near = np.abs(res) <= delta / 10
    far = np.abs(res) >= delta
    if not near.any() or not far.any():
        return Check("degeneracy_locus", False, float("nan"), delta, {"near": int(near.sum()), "far": int(far.sum())})
    near_max, far_min = float(det[near].max()), float(det[far].min())
    return Check(
        "degeneracy_locus",
        near_max < far_min,
        near_max / far_min,
        1.0,
        {"near_points": int(near.sum()), "far_points": int(far.sum()), "near_max_det": near_max, "far_min_det": far_min},
    )


def check_symmetries(spec: SurfaceSpec, rng, n: int = 1000, tol: float = 1e-10) -> list[Check]:
    m = spec.m
    r, t = sample_domain(spec, rng, n)
    out = []
    if spec.family is Family.I:
        f = components_I(m, r, t)
        if m % 2:
            err = float(np.max(np.abs(components_I(m, -r, t + np.pi) - f)))
            out.append(Check("odd_m_symmetry", err <= tol, err, tol))
        else:
            err = float(np.max(np.abs(components_I(m, -r, t) - involution_iota(f))))
            out.append(Check("iota_relation", err <= tol, err, tol))
    elif spec.family is Family.II:
        f = components_II(m, r, t)
        k = rng.integers(0, 2 * m, n)
        a = alpha(k, m)
        mirrored = components_II(m, r, 2 * a - t)
        pointwise = 0.0
        for kk in range(2 * m):
            sel = k == kk
            img = involution_iota(rotation_involution(kk, m, mirrored[sel]))
            pointwise = max(pointwise, float(np.max(np.abs(img - f[sel]), initial=0.0)))
        out.append(Check("rotation_involution", pointwise <= tol, pointwise, tol))
        subset = min(n, 200)
        set_err = max(
            extension_residual(spec, rotation_involution(int(k[i]), m, f[i])) for i in range(subset)
        )
        out.append(Check("rotation_involution_set", set_err <= 1e-9, set_err, 1e-9, {"samples": subset}))
    else:
        err = float(np.max(np.abs(evaluate(spec, r + 2 * np.pi, t) - evaluate(spec, r, t))))
        out.append(Check("s_periodicity", err <= tol, err, tol))
    return out


def check_projection(spec: SurfaceSpec, rng, n: int = 10_000) -> Check:
    # beyond |log r| ~ 2 the gap to the boundary spheres drops below float resolution
    u, t = sample_domain(spec, rng, n, log_r=1.5)
    p = evaluate(spec, u, t)
    if spec.family is Family.ADS:
        inside = in_solid_torus(solid_torus_project(p))
    else:
        inside = in_hollowball(hollowball_project(p))
    bad = int((~inside).sum())
    return Check("projection_bounds", bad == 0, bad, 0, {"samples": n})


def check_cone_points(spec: SurfaceSpec, tol: float = 1e-12) -> Check:
    m = spec.m
    r = np.geomspace(0.1, 10, 21)
    worst = 0.0
    for k in range(2 * m):
        pts = components_II(m, r, alpha(k, m))
        worst = max(worst, float(np.max(np.abs(pts - cone_point(m, k)))))
    return Check("cone_points", worst <= tol, worst, tol)


def check_hyperbolas(spec: SurfaceSpec, rng, n: int = 10_000, tol: float = 1e-10) -> Check:
    m = spec.m
    r, t = sample_domain(spec, rng, n)
    p = components_II(m, r, t)
    c = np.cos(m * t)
    ident = float(np.max(np.abs(p[:, 0] ** 2 - p[:, 3] ** 2 - ((m * m - 1) / (2 * m)) ** 2 * c**2)))
    sign_ok = bool(np.all(np.sign(c) * p[:, 0] <= tol))
    return Check("hyperbola_slices", ident <= tol and sign_ok, ident, tol, {"sign_condition": sign_ok})


def check_limits(spec: SurfaceSpec, rng, sequences: int = 20, tol: float = 1e-3) -> Check:
    scenarios = TYPE_I_SCENARIOS if spec.family is Family.I else TYPE_II_SCENARIOS
    js = np.array([1e4, 1e5, 1e6])
    worst = 0.0
    failures = []
    for sc in scenarios:
        target = limit_table(spec, sc)
        for _ in range(sequences):
            res = limit_of_sequence(spec, scenario_sequence(spec, sc, rng, js), tol)
            if res.status != "ideal" or res.ideal != target:
                failures.append(sc.value)
            worst = max(worst, res.distance if res.status != "bounded" else float("inf"))
    return Check("limit_table", not failures, worst, tol, {"failures": sorted(set(failures))})


def check_blowup(spec: SurfaceSpec, tol: float = 1e-12) -> Check:
    m = spec.m
    s = np.linspace(-2, 2, 41)
    worst_chart, worst_agree = 0.0, 0.0
    for k in range(2 * m):
        at0 = blowup_chart(m, k, 0.0, s)
        tau = end_coefficient(m) * s
        g = gamma(m, alpha(k, m))
        expect = np.stack([tau, np.full_like(s, g[0]), np.full_like(s, g[1]), -tau], axis=-1)
        worst_chart = max(worst_chart, float(np.max(np.abs(at0 - expect))))
        for r in (1e-3, 1e-2):
            sv = s[np.abs(r * s) < 1]
            theta = blowup_angle(m, k, r, sv)
            worst_agree = max(worst_agree, float(np.max(np.abs(blowup_chart(m, k, r, sv) - components_I(m, r, theta)))))
    passed = worst_chart <= tol and worst_agree <= 1e-9
    return Check("blowup_chart", passed, worst_chart, tol, {"chart_vs_components": worst_agree})


def run_suite(spec: SurfaceSpec, seed: int = 0, quick: bool = False) -> dict:
    """Run every check that applies to ``spec``; returns the JSON report."""
    rng = np.random.default_rng(seed)
    n = 200 if quick else 1000
    started = time.perf_counter()
    checks = [check_membership(spec, rng, n)]
    if spec.family is not Family.ADS:
        checks.append(check_frame(spec, rng, n))
    checks.append(check_cmc(spec, rng, 50 if quick else 200))
    checks.append(check_degeneracy(spec, 100 if quick else 200))
    checks.extend(check_symmetries(spec, rng, n))
    checks.append(check_projection(spec, rng, 10 * n))
    if spec.family is Family.II:
        checks.append(check_cone_points(spec))
        checks.append(check_hyperbolas(spec, rng, 10 * n))
    if spec.family is not Family.ADS:
        checks.append(check_limits(spec, rng, 5 if quick else 20))
    if spec.family is Family.I:
        checks.append(check_blowup(spec))
    for c in checks:
        log.info("%-26s %s value=%.3g tol=%.3g", c.name, "PASS" if c.passed else "FAIL", float(c.value), c.tolerance)
    log.debug("suite for %s took %.2fs", spec, time.perf_counter() - started)
    return {
        "surface": str(spec),
        "family": spec.family.value,
        "m": spec.m,
        "seed": seed,
        "passed": all(c.passed for c in checks),
        "checks": [c.to_dict() for c in checks],
    }
