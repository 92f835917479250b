"""The limit curve ``gamma_m`` of the type I catenoid and its roulette form.

``gamma_m`` is the two-frequency curve

    gamma_m(theta) = A exp(i (m+1) theta) + B exp(-i (m-1) theta),
    A = (m-1)^2 / (4m),  B = (m+1)^2 / (4m),

which is the hypo-trochoid traced at distance ``d = B`` from the centre of a
circle of radius ``r_m = (m^2-1)/(4m)`` rolling inside a fixed circle of
radius ``r_c = (m-1)/2``; the roulette parameter is ``s = (m+1) theta``.
"""

from __future__ import annotations

import dataclasses
import math
from collections.abc import Callable
from fractions import Fraction

import numpy as np
from scipy.spatial import cKDTree

from .surfaces import _check_m, planar_part_II

Curve = Callable[[np.ndarray], np.ndarray]

GOLDEN = (math.sqrt(5) - 1) / 2


@dataclasses.dataclass(frozen=True)
class TrochoidParams:
    r_c: float
    r_m: float
    d: float

    def __post_init__(self):
        if self.r_m == 0:
            raise ValueError("r_m must be non-zero")


def trochoid_params(m: int) -> TrochoidParams:
    m = _check_m(m)
    return TrochoidParams((m - 1) / 2, (m * m - 1) / (4 * m), (m + 1) ** 2 / (4 * m))


def _coefficients(m: int):
    return (m - 1) ** 2 / (4 * m), (m + 1) ** 2 / (4 * m)


def gamma(m: int, theta) -> np.ndarray:
    """Limit curve ``lim_{r -> 0} (x1, x2)`` of the type I catenoid."""
    m = _check_m(m)
    theta = np.asarray(theta, dtype=float)
    a, b = _coefficients(m)
    x = a * np.cos((m + 1) * theta) + b * np.cos((m - 1) * theta)
    y = a * np.sin((m + 1) * theta) - b * np.sin((m - 1) * theta)
    return np.stack([x, y], axis=-1)


def gamma_derivatives(m: int, theta):
    """First and second derivatives of :func:`gamma`, each of shape ``(..., 2)``."""
    m = _check_m(m)
    theta = np.asarray(theta, dtype=float)
    a, b = _coefficients(m)
    p, q = m + 1, m - 1
    d1 = np.stack(
        [-a * p * np.sin(p * theta) - b * q * np.sin(q * theta),
         a * p * np.cos(p * theta) - b * q * np.cos(q * theta)],
        axis=-1,
    )
    d2 = np.stack(
        [-a * p * p * np.cos(p * theta) - b * q * q * np.cos(q * theta),
         -a * p * p * np.sin(p * theta) + b * q * q * np.sin(q * theta)],
        axis=-1,
    )
    return d1, d2


def speed(m: int, theta):
    d1, _ = gamma_derivatives(m, theta)
    return np.hypot(d1[..., 0], d1[..., 1])


def signed_curvature(m: int, theta):
    """Planar signed curvature of ``gamma_m`` from analytic derivatives."""
    d1, d2 = gamma_derivatives(m, theta)
    v = np.hypot(d1[..., 0], d1[..., 1])
    if np.any(v <= 1e-12):
        raise ValueError("gamma_m has vanishing speed")
    return (d1[..., 0] * d2[..., 1] - d1[..., 1] * d2[..., 0]) / v**3


def curvature_sign_changes(m: int, n: int = 10_000, tol: float = 1e-9) -> int:
    """Sign changes of the curvature around a closed ``n``-point grid.

    Values within ``tol`` of zero carry no sign; the curvature of ``gamma_m``
    touches zero at the singular angles without crossing.
    """
    theta = np.linspace(0.0, 2 * np.pi, n, endpoint=False)
    k = signed_curvature(m, theta)
    sign = np.sign(k[np.abs(k) > tol])
    return int(np.count_nonzero(sign != np.roll(sign, 1)))


def turning_number(m: int, n: int = 10_000) -> float:
    """Total tangent rotation over one traversal of the image, in turns.

    The image is traversed once on ``[0, pi)`` when ``m`` is odd (the curve is
    then pi-periodic) and on ``[0, 2 pi)`` when ``m`` is even.
    """
    span = np.pi if m % 2 else 2 * np.pi
    theta = np.linspace(0.0, span, n + 1)
    d1, _ = gamma_derivatives(m, theta)
    angle = np.unwrap(np.arctan2(d1[..., 1], d1[..., 0]))
    return float((angle[-1] - angle[0]) / (2 * np.pi))


def is_convex(m: int, n: int = 10_000, tol: float = 1e-9) -> bool:
    """Closed curve bounds a convex region: no curvature sign change, one turn."""
    theta = np.linspace(0.0, 2 * np.pi, n, endpoint=False)
    k = signed_curvature(m, theta)
    one_sided = np.all(k <= tol) or np.all(k >= -tol)
    return bool(one_sided and abs(abs(turning_number(m, n)) - 1) < 1e-6)


def hypotrochoid(params: TrochoidParams, s, d: float | None = None, fixed: str = "r_c") -> np.ndarray:
    """Roulette of a point at distance ``d`` from the centre of a rolling circle.

    ``fixed`` names which radius in ``params`` belongs to the fixed circle;
    the other one rolls inside it.  Standard convention:

        x = (R - rho) cos s + d cos((R - rho)/rho * s)
        y = (R - rho) sin s - d sin((R - rho)/rho * s)
    """
    big, small = _radii(params, fixed)
    d = params.d if d is None else d
    s = np.asarray(s, dtype=float)
    w = (big - small) / small
    x = (big - small) * np.cos(s) + d * np.cos(w * s)
    y = (big - small) * np.sin(s) - d * np.sin(w * s)
    return np.stack([x, y], axis=-1)


def _radii(params: TrochoidParams, fixed: str):
    if fixed == "r_c":
        return params.r_c, params.r_m
    if fixed == "r_m":
        return params.r_m, params.r_c
    raise ValueError(f"fixed must be 'r_c' or 'r_m', got {fixed!r}")


def hypotrochoid_period(params: TrochoidParams, fixed: str = "r_c") -> float:
    """Smallest ``s``-period after which the roulette closes."""
    big, small = _radii(params, fixed)
    ratio = Fraction((big - small) / small).limit_denominator(10_000)
    return 2 * np.pi * ratio.denominator


# --- point-set comparison -------------------------------------------------


def _refine_distance(curve: Curve, points: np.ndarray, u0: np.ndarray, half: float, iters: int = 60):
    """Vectorized golden-section minimisation of ``|curve(u) - p|`` near ``u0``."""
    lo, hi = u0 - half, u0 + half
    x1 = hi - GOLDEN * (hi - lo)
    x2 = lo + GOLDEN * (hi - lo)
    f1 = np.linalg.norm(curve(x1) - points, axis=-1)
    f2 = np.linalg.norm(curve(x2) - points, axis=-1)
    for _ in range(iters):
        left = f1 < f2
        hi = np.where(left, x2, hi)
        lo = np.where(left, lo, x1)
        x2n = np.where(left, x1, lo + GOLDEN * (hi - lo))
        x1n = np.where(left, hi - GOLDEN * (hi - lo), x2)
        x1, x2 = x1n, x2n
        f1 = np.linalg.norm(curve(x1) - points, axis=-1)
        f2 = np.linalg.norm(curve(x2) - points, axis=-1)
    return np.minimum(f1, f2)


def distance_to_curve(points, curve: Curve, period: float, n: int = 10_000, candidates: int = 4) -> np.ndarray:
    """Distance from each point to the closed curve ``curve`` on ``[0, period)``.

    The ``candidates`` nearest of ``n`` curve samples are each refined by a
    golden-section search over one sample spacing; near self-crossings the
    closest sample can sit on the wrong branch, hence several candidates.
    """
    points = np.asarray(points, dtype=float)
    u = np.linspace(0.0, period, n, endpoint=False)
    samples = curve(u)
    coarse, idx = cKDTree(samples).query(points, k=candidates)
    best = coarse[:, 0]
    for j in range(candidates):
        best = np.minimum(best, _refine_distance(curve, points, u[idx[:, j]], period / n))
    return best


def hausdorff(curve_a: Curve, period_a: float, curve_b: Curve, period_b: float, n: int = 10_000) -> float:
    """Symmetric Hausdorff distance between the images of two closed curves."""
    pa = curve_a(np.linspace(0.0, period_a, n, endpoint=False))
    pb = curve_b(np.linspace(0.0, period_b, n, endpoint=False))
    d_ab = distance_to_curve(pa, curve_b, period_b, n)
    d_ba = distance_to_curve(pb, curve_a, period_a, n)
    return float(max(d_ab.max(), d_ba.max()))


@dataclasses.dataclass(frozen=True)
class RouletteFit:
    fixed: str
    distance: float
    candidates: dict


def fit_hypotrochoid(m: int, n: int = 10_000) -> RouletteFit:
    """Decide which stored radius is the fixed circle by comparing images.

    Both assignments are tried; the one whose roulette image is closest to
    ``gamma_m`` in Hausdorff distance wins.
    """
    params = trochoid_params(m)
    g = lambda t: gamma(m, t)
    scores = {}
    for fixed in ("r_c", "r_m"):
        curve = lambda s, fixed=fixed: hypotrochoid(params, s, fixed=fixed)
        scores[fixed] = hausdorff(g, 2 * np.pi, curve, hypotrochoid_period(params, fixed), n)
    fixed = min(scores, key=scores.get)
    return RouletteFit(fixed, scores[fixed], scores)


def fit_planar_constant(m: int, n: int = 4096) -> tuple[float, float]:
    """Least-squares ``c`` in ``(x1, x2)_II(theta) = c * gamma_m(theta)``.

    Returns ``(c, max_residual)``.
    """
    theta = np.linspace(0.0, 2 * np.pi, n, endpoint=False)
    g = gamma(m, theta)
    xy = planar_part_II(m, theta)
    c = float(np.sum(g * xy) / np.sum(g * g))
    return c, float(np.max(np.abs(xy - c * g)))


# ``(x1, x2) = PLANAR_CONSTANT * gamma_m`` for the type II catenoid, confirmed by
# :func:`fit_planar_constant` for every m tested.
PLANAR_CONSTANT = -1.0
