"""Domain sampling, triangulation and curve polylines.

Surfaces are sampled on a tensor grid in ``(log|r|, theta)`` (or ``(s, theta)``
for the anti-de Sitter family, where both directions wrap).  Every quad cell
is split into two triangles.  Cells across which the singular residual changes
sign get one extra centre vertex and are fanned into four triangles, so the
singular image is resolved a little better than the rest of the surface.
Triangles whose projected area falls below a threshold (for instance those
touching a cone point) are dropped and counted.
"""

from __future__ import annotations

import dataclasses
import logging
import math
import os
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from .errors import ConfigError
from .lorentz import check_k, involution_iota
from .projection import hollowball_project, solid_torus_project
from .singular import classify_regions, light_lines, singular_image, singular_residual
from .surfaces import Family, SurfaceSpec, components_II, evaluate
from .trochoid import gamma

log = logging.getLogger(__name__)

PROJECTIONS = ("hollowball", "solid_torus", "none")
DEGENERATE_AREA = 1e-14


@dataclasses.dataclass(frozen=True)
class RunConfig:
    """Everything that determines a mesh; two equal configs give equal meshes.

    ``r_min``/``r_max`` bound ``|r|`` (log-spaced) for families I and II and
    are ignored for AdS.  ``theta_range`` of ``None`` means the full wrapped
    circle; otherwise the closed interval is sampled without wrapping.
    ``second_sheet`` meshes ``r < 0`` for family I and appends the
    ``iota``-image for family II with even ``m``.
    """

    family: str = "II"
    m: int = 2
    r_min: float = math.exp(-4)
    r_max: float = math.exp(4)
    n_r: int = 64
    n_theta: int = 128
    projection: str | None = None
    theta_range: tuple[float, float] | None = None
    second_sheet: bool = False
    include_lines: bool = False
    line_extent: float = 2.0
    line_samples: int = 65
    refine: bool = True
    degenerate_area: float = DEGENERATE_AREA
    membership_tol: float = 1e-8
    singular_tol: float = 1e-12
    jobs: int = 1

    def __post_init__(self):
        spec = self.spec  # validates family and m
        if self.n_r < 2 or self.n_theta < 2:
            raise ConfigError("n_r and n_theta must be >= 2")
        if not 0 < self.r_min < self.r_max:
            raise ConfigError("need 0 < r_min < r_max")
        proj = self.resolved_projection
        if proj not in PROJECTIONS:
            raise ConfigError(f"unknown projection {proj!r}; expected one of {', '.join(PROJECTIONS)}")
        if spec.family is Family.ADS and proj == "hollowball":
            raise ConfigError("the hollowball model is for S^3_1; use solid_torus for AdS")
        if spec.family is not Family.ADS and proj == "solid_torus":
            raise ConfigError("the solid torus model is for H^3_1(-1); use hollowball")
        if self.theta_range is not None:
            lo, hi = self.theta_range
            if not lo < hi:
                raise ConfigError("theta_range must be increasing")
        if self.jobs < 1:
            raise ConfigError("jobs must be >= 1")

    @property
    def spec(self) -> SurfaceSpec:
        try:
            return SurfaceSpec(self.family, self.m)
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc

    @property
    def resolved_projection(self) -> str:
        if self.projection is not None:
            return self.projection
        return "solid_torus" if Family.parse(self.family) is Family.ADS else "hollowball"

    def to_dict(self) -> dict:
        out = dataclasses.asdict(self)
        del out["jobs"]  # does not affect the output; keeps sidecars machine-independent
        out["projection"] = self.resolved_projection
        out["theta_range"] = None if self.theta_range is None else list(self.theta_range)
        return out


@dataclasses.dataclass
class Polyline:
    kind: str
    points: np.ndarray
    columns: tuple[str, ...]
    params: dict


@dataclasses.dataclass
class MeshBundle:
    """Triangulated surface with per-vertex provenance.

    ``vertices`` are projected 3-vectors, or raw 4-vectors when the
    projection is ``"none"``.  ``points4`` always holds the 4D images.
    """

    vertices: np.ndarray
    triangles: np.ndarray
    u: np.ndarray
    theta: np.ndarray
    region: np.ndarray
    residual: np.ndarray
    points4: np.ndarray
    config: RunConfig
    refined_cells: int = 0
    dropped_triangles: int = 0
    polylines: list = dataclasses.field(default_factory=list)

    @property
    def projected(self) -> bool:
        return self.vertices.shape[1] == 3

    def validate(self) -> None:
        n = len(self.vertices)
        for name in ("u", "theta", "region", "residual", "points4"):
            if len(getattr(self, name)) != n:
                raise ValueError(f"vertex meta {name!r} has the wrong length")
        if self.triangles.size and (self.triangles.min() < 0 or self.triangles.max() >= n):
            raise ValueError("triangle index out of range")


def project(points4: np.ndarray, projection: str, tol: float = 1e-8) -> np.ndarray:
    if projection == "hollowball":
        return hollowball_project(points4, tol)
    if projection == "solid_torus":
        return solid_torus_project(points4, tol)
    if projection == "none":
        return np.asarray(points4, dtype=float)
    raise ConfigError(f"unknown projection {projection!r}")


def default_jobs() -> int:
    return os.cpu_count() or 1


def _parallel_eval(spec: SurfaceSpec, u: np.ndarray, v: np.ndarray, jobs: int) -> np.ndarray:
    """Evaluate on flat arrays, split into contiguous chunks over a thread pool."""
    if jobs <= 1 or len(u) < 2048:
        return evaluate(spec, u, v)
    bounds = np.linspace(0, len(u), jobs + 1).astype(int)
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        parts = pool.map(lambda ab: evaluate(spec, u[ab[0]:ab[1]], v[ab[0]:ab[1]]), zip(bounds[:-1], bounds[1:]))
        return np.concatenate(list(parts))


def _labels(spec: SurfaceSpec, u, theta, residual, tol) -> np.ndarray:
    if spec.family is Family.I:
        return np.array([lab.value for lab in classify_regions(spec.m, u, theta)], dtype=object)
    out = np.where(residual > 0, "cos+", "cos-").astype(object)
    out[np.abs(residual) <= tol] = "Sigma"
    return out


def _grid_axes(config: RunConfig, spec: SurfaceSpec, sheet: int):
    wrap_theta = config.theta_range is None
    if wrap_theta:
        theta = 2 * np.pi * np.arange(config.n_theta) / config.n_theta
    else:
        theta = np.linspace(config.theta_range[0], config.theta_range[1], config.n_theta)
    if spec.family is Family.ADS:
        u = 2 * np.pi * np.arange(config.n_r) / config.n_r
        wrap_u = True
    else:
        u = sheet * np.exp(np.linspace(math.log(config.r_min), math.log(config.r_max), config.n_r))
        wrap_u = False
    return u, theta, wrap_u, wrap_theta


def _cell_corners(n_u: int, n_t: int, wrap_u: bool, wrap_t: bool) -> np.ndarray:
    """Corner indices ``(a, b, c, d)`` of every cell, counter-clockwise in (u, theta)."""
    iu = np.arange(n_u if wrap_u else n_u - 1)
    it = np.arange(n_t if wrap_t else n_t - 1)
    i, j = np.meshgrid(iu, it, indexing="ij")
    i, j = i.ravel(), j.ravel()
    i1, j1 = (i + 1) % n_u, (j + 1) % n_t
    return np.stack([i * n_t + j, i1 * n_t + j, i1 * n_t + j1, i * n_t + j1], axis=-1)


def _mesh_sheet(config: RunConfig, spec: SurfaceSpec, sheet: int):
    u_axis, t_axis, wrap_u, wrap_t = _grid_axes(config, spec, sheet)
    U, T = np.meshgrid(u_axis, t_axis, indexing="ij")
    u, theta = U.ravel(), T.ravel()
    residual = singular_residual(spec, u, theta)
    cells = _cell_corners(len(u_axis), len(t_axis), wrap_u, wrap_t)

    crossing = np.zeros(len(cells), dtype=bool)
    if config.refine:
        r = residual[cells]
        crossing = (r.min(axis=1) < 0) & (r.max(axis=1) > 0) | np.any(np.abs(r) <= config.singular_tol, axis=1)

    # centres of refined cells, in the same (log|r| or s, theta) chart
    ref = cells[crossing]
    step_t = t_axis[1] - t_axis[0]
    ct = theta[ref[:, 0]] + step_t / 2
    if spec.family is Family.ADS:
        cu = u[ref[:, 0]] + (u_axis[1] - u_axis[0]) / 2
    else:
        cu = np.sqrt(u[ref[:, 0]] * u[ref[:, 1]]) * sheet
    centre = len(u) + np.arange(len(ref))
    u = np.concatenate([u, cu])
    theta = np.concatenate([theta, ct])
    residual = np.concatenate([residual, singular_residual(spec, cu, ct)])

    plain = cells[~crossing]
    tris = [plain[:, [0, 1, 2]], plain[:, [0, 2, 3]]]
    for a, b in ((0, 1), (1, 2), (2, 3), (3, 0)):
        tris.append(np.stack([ref[:, a], ref[:, b], centre], axis=-1))
    # restore a cell-major order so output does not depend on the split above
    order_key = np.concatenate(
        [np.flatnonzero(~crossing)] * 2 + [np.flatnonzero(crossing)] * 4
    )
    triangles = np.concatenate(tris)[np.argsort(order_key, kind="stable")]
    return u, theta, residual, triangles, int(crossing.sum())


def _triangle_areas(vertices: np.ndarray, triangles: np.ndarray) -> np.ndarray:
    a, b, c = (vertices[triangles[:, i]] for i in range(3))
    e1, e2 = b - a, c - a
    # Gram determinant works in any dimension
    g11, g22, g12 = np.sum(e1 * e1, -1), np.sum(e2 * e2, -1), np.sum(e1 * e2, -1)
    return 0.5 * np.sqrt(np.maximum(g11 * g22 - g12 * g12, 0.0))


def sample_and_mesh(config: RunConfig) -> MeshBundle:
    """Sample the surface of ``config`` and triangulate it."""
    spec = config.spec
    projection = config.resolved_projection
    sheets = [1]
    if config.second_sheet and spec.family is Family.I:
        sheets.append(-1)
    iota_copy = config.second_sheet and spec.family is Family.II
    if iota_copy and spec.m % 2:
        log.warning("the iota copy is only meaningful for even m; ignoring second_sheet for %s", spec)
        iota_copy = False

    parts = []
    offset = 0
    refined = 0
    for sheet in sheets:
        u, theta, residual, triangles, n_ref = _mesh_sheet(config, spec, sheet)
        points4 = _parallel_eval(spec, u, theta, config.jobs)
        parts.append((u, theta, residual, triangles + offset, points4))
        offset += len(u)
        refined += n_ref
    if iota_copy:
        u, theta, residual, triangles, points4 = parts[0]
        parts.append((u, theta, residual, triangles + offset, involution_iota(points4)))
        refined *= 2

    u = np.concatenate([p[0] for p in parts])
    theta = np.concatenate([p[1] for p in parts])
    residual = np.concatenate([p[2] for p in parts])
    triangles = np.concatenate([p[3] for p in parts]).astype(np.int64)
    points4 = np.concatenate([p[4] for p in parts])
    vertices = project(points4, projection, config.membership_tol)

    keep = _triangle_areas(vertices, triangles) >= config.degenerate_area
    dropped = int((~keep).sum())
    if dropped:
        log.info("dropped %d degenerate triangles", dropped)
    bundle = MeshBundle(
        vertices=vertices,
        triangles=triangles[keep],
        u=u,
        theta=theta,
        region=_labels(spec, u, theta, residual, config.singular_tol),
        residual=residual,
        points4=points4,
        config=config,
        refined_cells=refined,
        dropped_triangles=dropped,
    )
    if config.include_lines and spec.family is not Family.ADS:
        t = np.linspace(-config.line_extent, config.line_extent, config.line_samples)
        for k in range(2 * spec.m):
            for sign_index in range(len(light_lines(spec, k))):
                bundle.polylines.append(
                    curve_polyline("light_line", config.line_samples, projection,
                                   family=spec.family.value, m=spec.m, k=k, t_range=(t[0], t[-1]), branch=sign_index)
                )
    bundle.validate()
    log.debug("mesh %s: %d vertices, %d triangles, %d refined cells", spec, len(vertices), len(bundle.triangles), refined)
    return bundle


def expected_counts(config: RunConfig) -> tuple[int, int]:
    """Vertex and triangle counts of the unrefined grid per sheet."""
    spec = config.spec
    wrap_u = spec.family is Family.ADS
    wrap_t = config.theta_range is None
    cells = (config.n_r if wrap_u else config.n_r - 1) * (config.n_theta if wrap_t else config.n_theta - 1)
    return config.n_r * config.n_theta, 2 * cells


# --- polylines --------------------------------------------------------------


def _projected(points4: np.ndarray, projection: str):
    if projection == "none":
        return points4, ("x0", "x1", "x2", "x3")
    return project(points4, projection), ("px", "py", "pz")


def curve_polyline(kind: str, samples: int, projection: str = "hollowball", **params) -> Polyline:
    """Ordered sample points of one of the curves drawn in the figures.

    ``kind`` and its parameters:

    * ``trochoid``: ``m``; planar, ``theta = 2 pi i / samples``.
    * ``light_line``: ``family``, ``m``, ``k``, ``t_range`` and for family II
      ``branch`` (0 or 1, the two lines through a cone point).
    * ``singular_image``: ``m``, ``component`` (type I only).
    * ``hyperbola_slice``: ``m``, ``theta`` and ``log_r_range``; the type II
      curve ``r -> f(r, theta)``.
    """
    if samples < 2:
        raise ConfigError("samples must be >= 2")
    try:
        if kind == "trochoid":
            m = int(params["m"])
            theta = 2 * np.pi * np.arange(samples) / samples
            return Polyline(kind, gamma(m, theta), ("x", "y"), {"m": m})
        if kind == "light_line":
            spec = SurfaceSpec(params["family"], int(params["m"]))
            k = int(params["k"])
            check_k(k, spec.m)
            t0, t1 = params.get("t_range", (-1.0, 1.0))
            lines = light_lines(spec, k)
            branch = int(params.get("branch", 0))
            if not 0 <= branch < len(lines):
                raise ConfigError(f"branch must be below {len(lines)}")
            points4 = lines[branch].points(np.linspace(t0, t1, samples))
            pts, cols = _projected(points4, projection)
            return Polyline(kind, pts, cols, {"family": spec.family.value, "m": spec.m, "k": k,
                                              "t_range": [float(t0), float(t1)], "branch": branch})
        if kind == "singular_image":
            m, component = int(params["m"]), int(params["component"])
            if Family.parse(params.get("family", "I")) is not Family.I:
                raise ConfigError("type II singular rays collapse to cone points; there is no curve")
            points4 = singular_image(m, component, samples - 2)
            pts, cols = _projected(points4, projection)
            return Polyline(kind, pts, cols, {"family": "I", "m": m, "component": component})
        if kind == "hyperbola_slice":
            m, th = int(params["m"]), float(params["theta"])
            lo, hi = params.get("log_r_range", (-3.0, 3.0))
            points4 = components_II(m, np.exp(np.linspace(lo, hi, samples)), th)
            pts, cols = _projected(points4, projection)
            return Polyline(kind, pts, cols, {"m": m, "theta": th, "log_r_range": [float(lo), float(hi)]})
    except KeyError as exc:
        raise ConfigError(f"{kind} needs parameter {exc.args[0]!r}") from exc
    except ValueError as exc:
        if isinstance(exc, ConfigError):
            raise
        raise ConfigError(str(exc)) from exc
    raise ConfigError(f"unknown curve kind {kind!r}")
