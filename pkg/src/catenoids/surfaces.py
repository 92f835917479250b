"""The exceptional catenoids of types I and II and their anti-de Sitter cousin.

Two independent evaluation routes are provided for each de Sitter family:

* :func:`surface_from_frame` builds ``F e3 F*`` from the holomorphic frame;
* :func:`components_I` / :func:`components_II` evaluate the closed-form
  coordinate expressions in polar coordinates ``z = r exp(i theta)``.

The component formulas for type I stay meaningful for ``r < 0``; that is how
the second sheet of the analytic extension is reached.  Across ``r = 0`` the
type I extension is parametrized by the blow-up chart with
``s = cos(m theta) / r``.
"""

from __future__ import annotations

import dataclasses
import enum

import numpy as np

from .errors import BranchError, DomainError
from .lorentz import E3, check_k, conjugate_action, from_herm


class Family(enum.Enum):
    I = "I"
    II = "II"
    ADS = "AdS"

    @classmethod
    def parse(cls, value) -> Family:
        if isinstance(value, cls):
            return value
        key = str(value).strip().upper()
        for member in cls:
            if member.value.upper() == key:
                return member
        raise ValueError(f"unknown family {value!r}; expected one of I, II, AdS")


@dataclasses.dataclass(frozen=True)
class SurfaceSpec:
    """One surface: a family and an integer ``m >= 2``."""

    family: Family
    m: int

    def __post_init__(self):
        object.__setattr__(self, "family", Family.parse(self.family))
        if int(self.m) != self.m or self.m < 2:
            raise DomainError(f"m must be an integer >= 2, got {self.m}")
        object.__setattr__(self, "m", int(self.m))

    def __str__(self):
        return f"{self.family.value}_{self.m}"


def _check_m(m) -> int:
    if int(m) != m or m < 2:
        raise DomainError(f"m must be an integer >= 2, got {m}")
    return int(m)


def end_coefficient(m: int) -> float:
    """``(m^2 - 1) / (4m)``, the common coefficient of the end terms."""
    return (m * m - 1) / (4 * m)


def frame(spec: SurfaceSpec, z) -> np.ndarray:
    """Holomorphic SL(2, C) frame ``F^J_m(z)``, shape ``z.shape + (2, 2)``.

    ``z ** (-(m+1)/2)`` is the principal branch; the opposite branch only
    changes the overall sign of ``F``, which cancels in ``F e3 F*``.
    """
    m = spec.m
    z = np.asarray(z, dtype=complex)
    if np.any(z == 0):
        raise DomainError("frame is undefined at z = 0")
    zm = z**m
    out = np.empty(z.shape + (2, 2), dtype=complex)
    if spec.family is Family.I:
        scale = z ** (-(m + 1) / 2) / (2 * np.sqrt(m))
        out[..., 0, 0] = (m + 1) * z
        out[..., 0, 1] = z * ((m - 1) * zm - m - 1)
        out[..., 1, 0] = m - 1
        out[..., 1, 1] = (m + 1) * zm - m + 1
    elif spec.family is Family.II:
        scale = z ** (-(m + 1) / 2) / (2 * np.sqrt(2 * m))
        out[..., 0, 0] = z * ((1 - m) * zm + m + 1)
        out[..., 0, 1] = z * ((m - 1) * zm + m + 1)
        out[..., 1, 0] = -(m + 1) * zm + m - 1
        out[..., 1, 1] = (m + 1) * zm + m - 1
    else:
        raise DomainError("the anti-de Sitter family has no holomorphic frame")
    return out * scale[..., None, None]


def surface_from_frame(spec: SurfaceSpec, z) -> np.ndarray:
    """``from_herm(F e3 F*)`` at ``z``."""
    return from_herm(conjugate_action(frame(spec, z), E3))


def components_I(m: int, r, theta) -> np.ndarray:
    """Closed-form coordinates of the type I catenoid, valid for any ``r != 0``."""
    m = _check_m(m)
    r, theta = np.broadcast_arrays(np.asarray(r, dtype=float), np.asarray(theta, dtype=float))
    if np.any(r == 0):
        raise DomainError("r = 0 is not in the domain; use blowup_chart")
    k = end_coefficient(m)
    rm = r**m
    c = 2 * np.cos(m * theta)
    plus = k * r * (c - (m - 1) / (m + 1) * rm)
    minus = k / r * (c - (m + 1) / (m - 1) * rm)
    w = (
        (m - 1) ** 2 / (4 * m) * np.exp(1j * (m + 1) * theta)
        + (m + 1) ** 2 / (4 * m) * np.exp(-1j * (m - 1) * theta)
        - k * rm * np.exp(1j * theta)
    )
    return np.stack([(plus + minus) / 2, w.real, w.imag, (plus - minus) / 2], axis=-1)


def planar_part_II(m: int, theta) -> np.ndarray:
    """``(x1, x2)`` of the type II catenoid; independent of ``r``."""
    theta = np.asarray(theta, dtype=float)
    cm, sm = np.cos(m * theta), np.sin(m * theta)
    ct, st = np.cos(theta), np.sin(theta)
    x1 = -((m * m + 1) * cm * ct + 2 * m * sm * st) / (2 * m)
    x2 = -((m * m + 1) * cm * st - 2 * m * sm * ct) / (2 * m)
    return np.stack([x1, x2], axis=-1)


def components_II(m: int, r, theta) -> np.ndarray:
    """Closed-form coordinates of the type II catenoid for ``r > 0``."""
    m = _check_m(m)
    r, theta = np.broadcast_arrays(np.asarray(r, dtype=float), np.asarray(theta, dtype=float))
    if np.any(r <= 0):
        raise DomainError("type II components need r > 0")
    a = (1 - m * m) / (4 * m) * np.cos(m * theta)
    xy = planar_part_II(m, theta)
    return np.stack([a * (r + 1 / r), xy[..., 0], xy[..., 1], a * (r - 1 / r)], axis=-1)


def branch_arccos(u, k: int, m: int):
    """Inverse cosine onto ``(m alpha_k - pi/2, m alpha_k + pi/2) = (k pi, (k+1) pi)``."""
    u = np.asarray(u, dtype=float)
    if k % 2 == 0:
        return k * np.pi + np.arccos(u)
    return k * np.pi + np.arccos(-u)


def blowup_angle(m: int, k: int, r, s):
    """The angle ``theta = arccos_k(r s) / m`` on branch ``k``."""
    check_k(k, m)
    r, s = np.broadcast_arrays(np.asarray(r, dtype=float), np.asarray(s, dtype=float))
    u = r * s
    if np.any(np.abs(u) >= 1):
        raise BranchError("|r s| must be < 1 for the blow-up chart")
    return branch_arccos(u, k, m) / m


def blowup_chart(m: int, k: int, r, s) -> np.ndarray:
    """Type I extension in the coordinates ``(r, s = cos(m theta) / r)``.

    Near ``r = 0`` this covers a neighbourhood of the light-like line through
    the k-th endpoint of the limit curve; at ``r = 0`` the value is
    ``(tau, gamma_m(alpha_k), -tau)`` with ``tau = (m^2-1) s / (4m)``.
    """
    m = _check_m(m)
    theta = blowup_angle(m, k, r, s)
    r, s = np.broadcast_arrays(np.asarray(r, dtype=float), np.asarray(s, dtype=float))
    kk = end_coefficient(m)
    rm = r**m
    # x0 - x3 with the 1/r factor cancelled so that r = 0 is admissible
    plus = kk * r * (2 * r * s - (m - 1) / (m + 1) * rm)
    minus = kk * (2 * s - (m + 1) / (m - 1) * r ** (m - 1))
    w = (
        (m - 1) ** 2 / (4 * m) * np.exp(1j * (m + 1) * theta)
        + (m + 1) ** 2 / (4 * m) * np.exp(-1j * (m - 1) * theta)
        - kk * rm * np.exp(1j * theta)
    )
    return np.stack([(plus + minus) / 2, w.real, w.imag, (plus - minus) / 2], axis=-1)


def secondary_gauss(spec: SurfaceSpec, z):
    """Secondary Gauss map: ``z^m + 1`` (type I) or ``(z^m - 1)/(z^m + 1)`` (type II)."""
    z = np.asarray(z, dtype=complex)
    zm = z**spec.m
    if spec.family is Family.I:
        return zm + 1
    if spec.family is Family.II:
        if np.any(np.abs(zm + 1) <= 1e-14):
            raise DomainError("pole")
        return (zm - 1) / (zm + 1)
    raise DomainError("no secondary Gauss map for the anti-de Sitter family")


def ads_surface(m: int, s, theta) -> np.ndarray:
    """Time-like CMC surface in H^3_1(-1) obtained by ``s -> i s`` with ``r = e^s``."""
    m = _check_m(m)
    s, theta = np.broadcast_arrays(np.asarray(s, dtype=float), np.asarray(theta, dtype=float))
    a = (1 - m * m) / (2 * m) * np.cos(m * theta)
    xy = planar_part_II(m, theta)
    return np.stack([a * np.cos(s), xy[..., 0], xy[..., 1], a * np.sin(s)], axis=-1)


def evaluate(spec: SurfaceSpec, u, v) -> np.ndarray:
    """Evaluate the surface of ``spec`` at domain coordinates ``(u, v)``.

    ``(u, v)`` is ``(r, theta)`` for types I and II and ``(s, theta)`` for AdS.
    """
    if spec.family is Family.I:
        return components_I(spec.m, u, v)
    if spec.family is Family.II:
        return components_II(spec.m, u, v)
    return ads_surface(spec.m, u, v)


def surface_function(spec: SurfaceSpec):
    """``(u, v) -> Point4`` callable suitable for :mod:`catenoids.diffgeo`."""
    return lambda u, v: evaluate(spec, u, v)

