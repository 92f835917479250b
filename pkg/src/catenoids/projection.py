"""Visualization charts: the hollowball model of S^3_1 and the solid torus of H^3_1(-1).

The hollowball map sends ``(t, x, y, z)`` in de Sitter space to
``(x, y, z) / delta`` with ``delta = t + sqrt(2 t^2 + 1)``; its image is the
open shell ``sqrt(2) - 1 < |xi| < sqrt(2) + 1``.  The inner sphere is the
future ideal boundary, the outer sphere the past one.
"""

from __future__ import annotations

import dataclasses
import enum

import numpy as np

from .errors import DomainError
from .lorentz import Signature, as_point, minkowski_inner

SQRT2 = np.sqrt(2.0)
INNER_RADIUS = SQRT2 - 1
OUTER_RADIUS = SQRT2 + 1


class IdealTag(enum.Enum):
    P_PLUS = "p+"
    P_MINUS = "p-"
    N_PLUS = "n+"
    N_MINUS = "n-"


@dataclasses.dataclass(frozen=True)
class IdealPoint:
    """One of the four limit points on the poles of the ideal boundary spheres."""

    tag: IdealTag
    coords: tuple

    @property
    def boundary(self) -> str:
        """``"+"`` for the inner sphere (future boundary), ``"-"`` for the outer."""
        return "+" if self.tag in (IdealTag.P_PLUS, IdealTag.P_MINUS) else "-"

    def __str__(self):
        return self.tag.value


P_PLUS = IdealPoint(IdealTag.P_PLUS, (0.0, 0.0, INNER_RADIUS))
P_MINUS = IdealPoint(IdealTag.P_MINUS, (0.0, 0.0, -INNER_RADIUS))
N_PLUS = IdealPoint(IdealTag.N_PLUS, (0.0, 0.0, OUTER_RADIUS))
N_MINUS = IdealPoint(IdealTag.N_MINUS, (0.0, 0.0, -OUTER_RADIUS))


def ideal_points() -> tuple[IdealPoint, IdealPoint, IdealPoint, IdealPoint]:
    """``(p+, p-, n+, n-)``."""
    return P_PLUS, P_MINUS, N_PLUS, N_MINUS


def ideal_point(tag) -> IdealPoint:
    tag = IdealTag(tag) if not isinstance(tag, IdealTag) else tag
    return {p.tag: p for p in ideal_points()}[tag]


def hollowball_project(p, tol: float = 1e-8) -> np.ndarray:
    """Hollowball image of de Sitter point(s) ``p``; shape ``p.shape[:-1] + (3,)``."""
    p = as_point(p)
    residual = np.abs(minkowski_inner(p, p) - 1.0)
    # relative check: far out on the ends |p|^2 is huge
    scale = np.maximum(1.0, np.sum(p * p, axis=-1))
    if np.any(residual > tol * scale):
        raise DomainError("point is not on S^3_1")
    t = p[..., 0]
    delta = t + np.sqrt(2 * t * t + 1)
    return p[..., 1:] / delta[..., None]


def project_y(p) -> np.ndarray:
    """Hollowball image written through ``x_l / x0``; stable as ``|x0| -> inf``.

    ``y_l = (x_l / x0) / (1 + sgn(x0) sqrt(2 + 1 / x0^2))``.  Requires ``x0 != 0``.
    """
    p = as_point(p)
    x0 = p[..., 0]
    if np.any(x0 == 0):
        raise DomainError("x0 = 0; use hollowball_project")
    denom = 1 + np.sign(x0) * np.sqrt(2 + 1 / (x0 * x0))
    return (p[..., 1:] / x0[..., None]) / denom[..., None]


def in_hollowball(xi) -> np.ndarray:
    norm = np.linalg.norm(np.asarray(xi, dtype=float), axis=-1)
    return (norm > INNER_RADIUS) & (norm < OUTER_RADIUS)


def solid_torus_project(p, tol: float = 1e-8) -> np.ndarray:
    """Solid-torus image of anti-de Sitter point(s) ``p``.

    ``(t, x, y, z) -> ((1 + t/rho) x, (1 + t/rho) y, z) / rho`` with
    ``rho = sqrt(x^2 + y^2)``.
    """
    p = as_point(p)
    residual = np.abs(minkowski_inner(p, p, Signature.ANTI_DE_SITTER) + 1.0)
    scale = np.maximum(1.0, np.sum(p * p, axis=-1))
    if np.any(residual > tol * scale):
        raise DomainError("point is not on H^3_1(-1)")
    t, x, y, z = np.moveaxis(p, -1, 0)
    rho = np.hypot(x, y)
    if np.any(rho <= 1e-12):
        raise DomainError("rho = sqrt(x^2 + y^2) vanishes")
    factor = 1 + t / rho
    return np.stack([factor * x, factor * y, z], axis=-1) / rho[..., None]


def in_solid_torus(w) -> np.ndarray:
    """Membership in the open solid torus ``(sqrt(u^2 + v^2) - 1)^2 + w^2 < 1``."""
    w = np.asarray(w, dtype=float)
    return (np.hypot(w[..., 0], w[..., 1]) - 1) ** 2 + w[..., 2] ** 2 < 1
