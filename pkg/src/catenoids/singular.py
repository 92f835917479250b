"""Singular sets, regions, cone points, light-like lines and limit points.

Type I: the singular set in ``Omega = {r != 0} x S^1`` is the zero set of
``r^m + 2 cos(m theta)``; it has ``m`` components on each sheet, each one
ending at the points ``P_k = (0, gamma_m(alpha_k), 0)``.  The extension adds
the light-like lines ``L_k`` through ``P_k``.

Type II: the singular set is the union of the rays ``theta = alpha_k``, each
of which collapses to a cone point; the extension is the warped product of
the planar curve ``-gamma_m`` with hyperbolas ``t^2 - z^2 = K^2 cos^2(m theta)``.
"""

from __future__ import annotations

import dataclasses
import enum
from collections.abc import Iterable, Sequence

import numpy as np

from .errors import DomainError
from .lorentz import Signature, alpha, as_point, check_k, minkowski_inner
from .projection import (
    N_MINUS,
    N_PLUS,
    P_MINUS,
    P_PLUS,
    IdealPoint,
    hollowball_project,
    ideal_points,
)
from .surfaces import Family, SurfaceSpec, _check_m, evaluate
from .trochoid import GOLDEN, PLANAR_CONSTANT, gamma

SINGULAR_TOL = 1e-12


class RegionLabel(enum.Enum):
    A_PLUS = "A+"
    A_MINUS = "A-"
    B_PLUS = "B+"
    B_MINUS = "B-"
    SINGULAR = "Sigma"


def singular_residual(spec: SurfaceSpec, r, theta):
    """``r^m + 2 cos(m theta)`` (type I) or ``cos(m theta)`` (type II, AdS).

    Vanishes exactly on the singular set.
    """
    m = spec.m
    r = np.asarray(r, dtype=float)
    theta = np.asarray(theta, dtype=float)
    if spec.family is Family.I:
        if np.any(r == 0):
            raise DomainError("r = 0 is not in the type I domain")
        return r**m + 2 * np.cos(m * theta)
    if spec.family is Family.II and np.any(r <= 0):
        raise DomainError("type II needs r > 0")
    return np.broadcast_to(np.cos(m * theta), np.broadcast(r, theta).shape) * 1.0


def classify_region(m: int, r: float, theta: float) -> RegionLabel:
    """Which of ``A+, A-, B+, B-`` (or the singular set) contains ``(r, theta)``.

    ``A+-`` is the component of ``Omega+-`` reaching ``r = +-inf``; the sign
    test is ``eps^m (r^m + 2 cos m theta) > 0`` with ``eps = sgn r``.
    """
    m = _check_m(m)
    if r == 0:
        raise DomainError("r = 0 is not in the type I domain")
    res = r**m + 2 * np.cos(m * theta)
    if abs(res) <= SINGULAR_TOL:
        return RegionLabel.SINGULAR
    eps = 1 if r > 0 else -1
    inside_a = eps**m * res > 0
    if r > 0:
        return RegionLabel.A_PLUS if inside_a else RegionLabel.B_PLUS
    return RegionLabel.A_MINUS if inside_a else RegionLabel.B_MINUS


def classify_regions(m: int, r, theta) -> np.ndarray:
    """Vectorized :func:`classify_region`; returns an object array of labels."""
    m = _check_m(m)
    r, theta = np.broadcast_arrays(np.asarray(r, dtype=float), np.asarray(theta, dtype=float))
    if np.any(r == 0):
        raise DomainError("r = 0 is not in the type I domain")
    res = r**m + 2 * np.cos(m * theta)
    inside_a = np.where(r > 0, 1.0, (-1.0) ** m) * res > 0
    out = np.empty(r.shape, dtype=object)
    out[...] = RegionLabel.B_MINUS
    out[(r < 0) & inside_a] = RegionLabel.A_MINUS
    out[(r > 0) & inside_a] = RegionLabel.A_PLUS
    out[(r > 0) & ~inside_a] = RegionLabel.B_PLUS
    out[np.abs(res) <= SINGULAR_TOL] = RegionLabel.SINGULAR
    return out


def singular_intervals(m: int, sheet: int) -> list[tuple[float, float]]:
    """Open theta-intervals over which one singular component of a sheet lives.

    On the sheet ``sheet = +1`` (r > 0) each component is the graph
    ``r = (-2 cos m theta)^(1/m)`` over an interval where ``cos m theta < 0``.
    On ``sheet = -1`` the sign of ``cos`` required is ``(-1)^(m+1)``.
    """
    m = _check_m(m)
    negative_cos = sheet > 0 or m % 2 == 0
    offset = np.pi if negative_cos else 0.0
    # cos(m theta) has the required sign on (offset - pi/2, offset + pi/2) / m + 2 pi j / m
    return [((offset - np.pi / 2 + 2 * np.pi * j) / m, (offset + np.pi / 2 + 2 * np.pi * j) / m) for j in range(m)]


def singular_curve(m: int, component: int, samples: int = 200) -> tuple[np.ndarray, np.ndarray]:
    """Domain points ``(r, theta)`` of singular component ``component``.

    Components ``0 .. m-1`` lie on the sheet ``r > 0``, ``m .. 2m-1`` on
    ``r < 0``.  The open interval is sampled at interior points only since
    ``r -> 0`` at both ends.
    """
    if not 0 <= component <= 2 * m - 1:
        raise DomainError(f"component must be in [0, {2 * m - 1}]")
    sheet = 1 if component < m else -1
    lo, hi = singular_intervals(m, sheet)[component % m]
    theta = lo + (hi - lo) * (np.arange(samples) + 0.5) / samples
    mag = np.abs(2 * np.cos(m * theta)) ** (1.0 / m)
    return sheet * mag, theta


def singular_image(m: int, component: int, samples: int = 200) -> np.ndarray:
    """Image of a type I singular component, closed off by its endpoints ``P_k``."""
    r, theta = singular_curve(m, component, samples)
    pts = evaluate(SurfaceSpec(Family.I, m), r, theta)
    sheet = 1 if component < m else -1
    lo, hi = singular_intervals(m, sheet)[component % m]
    ends = [endpoint_P(m, _nearest_k(m, lo)), endpoint_P(m, _nearest_k(m, hi))]
    return np.vstack([ends[0], pts, ends[1]])


def _nearest_k(m: int, theta: float) -> int:
    return int(round((theta * 2 * m / np.pi - 1) / 2)) % (2 * m)


def endpoint_P(m: int, k: int) -> np.ndarray:
    """``P_k = (0, gamma_m(alpha_k), 0)``."""
    check_k(k, m)
    g = gamma(m, alpha(k, m))
    return np.array([0.0, g[0], g[1], 0.0])


def cone_point(m: int, k: int) -> np.ndarray:
    """Image of the ray ``theta = alpha_k`` under the type II catenoid."""
    check_k(k, m)
    a = alpha(k, m)
    return (-1) ** k * np.array([0.0, -np.sin(a), np.cos(a), 0.0])


@dataclasses.dataclass(frozen=True)
class LightLine:
    """The line ``base + t * direction`` with a null direction."""

    base: np.ndarray
    direction: np.ndarray

    def points(self, t) -> np.ndarray:
        t = np.asarray(t, dtype=float)
        return self.base + t[..., None] * self.direction


def light_lines(spec: SurfaceSpec, k: int) -> list[LightLine]:
    """Light-like lines attached by the analytic extension at index ``k``.

    Type I: ``L_k = {(t, gamma_m(alpha_k), -t)}``.
    Type II: ``L^+-_k = {(t, -sin alpha_k, cos alpha_k, +-t)}``.
    """
    m = spec.m
    check_k(k, m)
    if spec.family is Family.I:
        return [LightLine(endpoint_P(m, k), np.array([1.0, 0.0, 0.0, -1.0]))]
    if spec.family is Family.II:
        a = alpha(k, m)
        base = np.array([0.0, -np.sin(a), np.cos(a), 0.0])
        return [LightLine(base, np.array([1.0, 0.0, 0.0, 1.0])), LightLine(base, np.array([1.0, 0.0, 0.0, -1.0]))]
    raise DomainError("light lines are defined for families I and II only")


# --- limit points ---------------------------------------------------------


class Scenario(enum.Enum):
    """How a sequence in the domain escapes to the ideal boundary."""

    R_PLUS_INF = "r->+inf"
    R_MINUS_INF = "r->-inf"
    A_PLUS = "A+"
    A_MINUS = "A-"
    B_PLUS = "B+"
    B_MINUS = "B-"
    # type II: end reached and sign of cos(m theta) on the sector
    INF_COS_POS = "r->inf,cos>0"
    INF_COS_NEG = "r->inf,cos<0"
    ZERO_COS_POS = "r->0,cos>0"
    ZERO_COS_NEG = "r->0,cos<0"


TYPE_I_SCENARIOS = (
    Scenario.R_PLUS_INF, Scenario.R_MINUS_INF,
    Scenario.A_PLUS, Scenario.A_MINUS, Scenario.B_PLUS, Scenario.B_MINUS,
)
TYPE_II_SCENARIOS = (
    Scenario.INF_COS_POS, Scenario.INF_COS_NEG, Scenario.ZERO_COS_POS, Scenario.ZERO_COS_NEG,
)

_TYPE_I_EVEN = {
    Scenario.R_PLUS_INF: N_MINUS, Scenario.R_MINUS_INF: P_PLUS,
    Scenario.A_PLUS: P_MINUS, Scenario.A_MINUS: N_PLUS, Scenario.B_PLUS: N_PLUS, Scenario.B_MINUS: P_MINUS,
}
_TYPE_I_ODD = {
    Scenario.R_PLUS_INF: N_MINUS, Scenario.R_MINUS_INF: N_MINUS,
    Scenario.A_PLUS: P_MINUS, Scenario.A_MINUS: P_MINUS, Scenario.B_PLUS: N_PLUS, Scenario.B_MINUS: N_PLUS,
}
# x3/x0 -> +1 as r -> inf and -1 as r -> 0; sgn(x0) = -sgn(cos m theta)
_TYPE_II = {
    Scenario.INF_COS_POS: N_MINUS, Scenario.INF_COS_NEG: P_PLUS,
    Scenario.ZERO_COS_POS: N_PLUS, Scenario.ZERO_COS_NEG: P_MINUS,
}


def limit_table(spec: SurfaceSpec, scenario: Scenario) -> IdealPoint:
    """Ideal point reached by sequences of the given kind."""
    scenario = Scenario(scenario)
    if spec.family is Family.I and scenario in TYPE_I_SCENARIOS:
        return (_TYPE_I_EVEN if spec.m % 2 == 0 else _TYPE_I_ODD)[scenario]
    if spec.family is Family.II and scenario in TYPE_II_SCENARIOS:
        return _TYPE_II[scenario]
    raise DomainError(f"scenario {scenario.value} is not defined for family {spec.family.value}")


def limit_set(spec: SurfaceSpec) -> set[IdealPoint]:
    scenarios = TYPE_I_SCENARIOS if spec.family is Family.I else TYPE_II_SCENARIOS
    return {limit_table(spec, s) for s in scenarios}


@dataclasses.dataclass
class SequenceLimit:
    """Outcome of :func:`limit_of_sequence`.

    ``status`` is ``"ideal"`` (``ideal`` is set), ``"bounded"`` (``x0`` does not
    diverge; ``last_point`` approximates the limit in S^3_1) or
    ``"unresolved"`` (divergent, but not close to any of the four points).
    """

    status: str
    ideal: IdealPoint | None
    last_point: np.ndarray
    last_projection: np.ndarray
    distance: float


def limit_of_sequence(
    spec: SurfaceSpec,
    sequence: Iterable[Sequence[float]],
    tol: float = 1e-3,
    divergence: float = 1e3,
) -> SequenceLimit:
    """Numerically identify where the hollowball images of ``sequence`` go.

    ``sequence`` yields domain points ``(r, theta)``.  The tail counts as
    divergent when ``|x0|`` increases along the last three terms and ends
    above ``divergence``.
    """
    if spec.family is Family.ADS:
        raise DomainError("limit points are defined for the de Sitter families")
    pts = np.asarray(list(sequence), dtype=float)
    if pts.ndim != 2 or pts.shape[1] != 2 or len(pts) < 3:
        raise ValueError("need at least three (r, theta) pairs")
    images = evaluate(spec, pts[:, 0], pts[:, 1])
    x0 = np.abs(images[:, 0])
    y = hollowball_project(images)
    last, last_y = images[-1], y[-1]
    tail = x0[-3:]
    if not (np.all(np.diff(tail) > 0) and tail[-1] > divergence):
        return SequenceLimit("bounded", None, last, last_y, float("nan"))
    dists = {p: float(np.linalg.norm(last_y - np.array(p.coords))) for p in ideal_points()}
    nearest = min(dists, key=dists.get)
    if dists[nearest] <= tol:
        return SequenceLimit("ideal", nearest, last, last_y, dists[nearest])
    return SequenceLimit("unresolved", None, last, last_y, dists[nearest])


def _scenario_shape(spec: SurfaceSpec, scenario: Scenario) -> tuple[int, int, int]:
    """``(sign of r, +1 for r -> inf / -1 for r -> 0, required sign of cos m theta)``.

    A sign of 0 means any angle off the singular set will do.
    """
    m = spec.m
    if spec.family is Family.I:
        if scenario is Scenario.R_PLUS_INF:
            return 1, 1, 0
        if scenario is Scenario.R_MINUS_INF:
            return -1, 1, 0
        # near r = 0 the residual is ~ 2 cos(m theta); A needs eps^m cos > 0
        sheet = 1 if scenario in (Scenario.A_PLUS, Scenario.B_PLUS) else -1
        in_a = scenario in (Scenario.A_PLUS, Scenario.A_MINUS)
        cos_sign = (1 if in_a else -1) * (sheet**m)
        return sheet, -1, cos_sign
    end = 1 if scenario in (Scenario.INF_COS_POS, Scenario.INF_COS_NEG) else -1
    cos_sign = 1 if scenario in (Scenario.INF_COS_POS, Scenario.ZERO_COS_POS) else -1
    return 1, end, cos_sign


def scenario_sequence(spec: SurfaceSpec, scenario, rng: np.random.Generator, js) -> np.ndarray:
    """Random divergent domain sequence of the given kind, one row per index ``j``.

    ``r_j = c j`` (ends at infinity) or ``c / j`` (ends at ``r = 0``) with a
    random scale ``c``; ``theta_j`` wobbles around a random base angle inside
    the admissible sectors, staying away from the singular rays.
    """
    scenario = Scenario(scenario)
    limit_table(spec, scenario)  # rejects unsupported combinations
    m = spec.m
    sheet, end, cos_sign = _scenario_shape(spec, scenario)
    js = np.asarray(js, dtype=float)
    c = rng.uniform(0.5, 2.0)
    r = sheet * (c * js if end > 0 else c / js)
    # m theta in a sector where cos has the required sign, margin pi/8
    if cos_sign == 0:
        phase = rng.uniform(0, 2 * np.pi)
    else:
        centre = 0.0 if cos_sign > 0 else np.pi
        phase = centre + rng.uniform(-3 * np.pi / 8, 3 * np.pi / 8)
    base = (phase + 2 * np.pi * rng.integers(m)) / m
    wobble = rng.uniform(-1, 1) * (np.pi / (16 * m)) / np.sqrt(js)
    return np.stack([r, base + wobble], axis=-1)


def line_approach_sequence(m: int, k: int, t: float, js) -> np.ndarray:
    """Domain points ``(1/j, arccos_k(4 m t / (j (m^2-1))) / m)`` converging to ``L_k``.

    Their images tend to ``Q_{k,t} = (t, gamma_m(alpha_k), -t)``.
    """
    from .surfaces import branch_arccos

    js = np.asarray(js, dtype=float)
    u = 4 * m * t / (js * (m * m - 1))
    if np.any(np.abs(u) >= 1):
        raise DomainError("sequence starts off the inverse-cosine branch; use larger j")
    return np.stack([1 / js, branch_arccos(u, k, m) / m], axis=-1)


# --- extension set of type II ----------------------------------------------


def _extension_objective(m: int, p: np.ndarray, theta):
    g = PLANAR_CONSTANT * gamma(m, theta)
    K = (m * m - 1) / (2 * m)
    planar = np.hypot(p[1] - g[..., 0], p[2] - g[..., 1])
    hyper = np.abs(p[0] ** 2 - p[3] ** 2 - K**2 * np.cos(m * theta) ** 2)
    return np.maximum(planar, hyper)


def extension_residual(spec: SurfaceSpec, p, theta_samples: int = 3600, candidates: int = 8) -> float:
    """Distance-like residual of ``p`` from the type II extension set.

    Minimum over theta of ``max(|(x, y) - c gamma_m(theta)|,
    |t^2 - z^2 - K^2 cos^2 m theta|)``.  Uniform sampling first; then the
    ``candidates`` best samples are each refined by golden-section search over
    the two neighbouring cells.  Several candidates are needed because the
    curve crosses itself, so the best sample may sit on the wrong branch.
    """
    if spec.family is not Family.II:
        raise DomainError("closed-form membership is available for family II only")
    if theta_samples < 360:
        raise ValueError("theta_samples must be >= 360")
    m = spec.m
    p = as_point(p)
    theta = np.linspace(0.0, 2 * np.pi, theta_samples, endpoint=False)
    values = _extension_objective(m, p, theta)
    best = np.argsort(values, kind="stable")[:candidates]
    step = 2 * np.pi / theta_samples
    lo, hi = theta[best] - step, theta[best] + step
    x1, x2 = hi - GOLDEN * (hi - lo), lo + GOLDEN * (hi - lo)
    f1, f2 = _extension_objective(m, p, x1), _extension_objective(m, p, x2)
    for _ in range(100):
        left = f1 < f2
        hi = np.where(left, x2, hi)
        lo = np.where(left, lo, x1)
        x1, x2 = np.where(left, hi - GOLDEN * (hi - lo), x2), np.where(left, x1, lo + GOLDEN * (hi - lo))
        f1, f2 = _extension_objective(m, p, x1), _extension_objective(m, p, x2)
    return float(min(values.min(), f1.min(), f2.min()))


def sector_index(m: int, theta) -> np.ndarray:
    """Index ``k`` of the sector ``((2k-1) pi/(2m), (2k+1) pi/(2m))`` holding theta."""
    theta = np.mod(np.asarray(theta, dtype=float), 2 * np.pi)
    return np.floor((theta * 2 * m / np.pi + 1) / 2).astype(int) % (2 * m)


def lies_on_lines(spec: SurfaceSpec, p, tol: float = 1e-10) -> bool:
    """True when ``p`` lies on one of the light-like lines of ``spec``."""
    p = as_point(p)
    for k in range(2 * spec.m):
        for line in light_lines(spec, k):
            d = line.direction
            t = p[0] - line.base[0]
            if np.max(np.abs(line.base + t * d - p)) <= tol:
                return True
    return False


def null_check(line: LightLine) -> tuple[float, float]:
    """``(<d, d>, <base, base>)``: 0 and 1 for a light-like line in S^3_1."""
    return (
        float(minkowski_inner(line.direction, line.direction, Signature.DE_SITTER)),
        float(minkowski_inner(line.base, line.base, Signature.DE_SITTER)),
    )
