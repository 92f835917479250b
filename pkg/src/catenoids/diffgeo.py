"""Finite-difference fundamental forms of surfaces in the unit space forms.

Works for any vectorized ``surface(u, v) -> (..., 4)``.  The normal ``nu`` is
orthogonal (in the ambient form) to ``f``, ``f_u`` and ``f_v``; it is
timelike for a spacelike surface in S^3_1 and spacelike for a timelike
surface in H^3_1(-1).  Because ``nu`` is orthogonal to ``f``, the coefficients
``<f_uu, nu>`` already equal the second fundamental form of the space-form
(Gauss formula) and need no position correction.
"""

from __future__ import annotations

import dataclasses
from collections.abc import Callable

import numpy as np

from .errors import SingularPointError
from .lorentz import Signature

Surface = Callable[[np.ndarray, np.ndarray], np.ndarray]

DEFAULT_STEP = 1e-3
METRIC_FLOOR = 1e-10


@dataclasses.dataclass
class FundamentalForms:
    E: np.ndarray
    F: np.ndarray
    G: np.ndarray
    L: np.ndarray
    M: np.ndarray
    N: np.ndarray
    H: np.ndarray
    detI: np.ndarray
    normal: np.ndarray
    normal_norm: np.ndarray  # <nu, nu>: -1 or +1
    residuals: np.ndarray  # |<nu, f>|, |<nu, f_u>|, |<nu, f_v>| (last axis)


# central-difference weights on offsets -2h .. 2h
_D1 = {2: np.array([0.0, -0.5, 0.0, 0.5, 0.0]), 4: np.array([1.0, -8.0, 0.0, 8.0, -1.0]) / 12}
_D2 = {2: np.array([0.0, 1.0, -2.0, 1.0, 0.0]), 4: np.array([-1.0, 16.0, -30.0, 16.0, -1.0]) / 12}
_OFFSETS = np.arange(-2, 3)


def _derivatives(surface: Surface, u, v, h, order: int, second: bool = True):
    """Central differences of the requested order, from a 5x5 stencil."""
    if order not in _D1:
        raise ValueError("order must be 2 or 4")
    d1, d2 = _D1[order], _D2[order]
    cache = {}

    def at(i, j):
        if (i, j) not in cache:
            cache[(i, j)] = surface(u + i * h, v + j * h)
        return cache[(i, j)]

    def line(weights, axis):
        total = 0.0
        for w, o in zip(weights, _OFFSETS):
            if w:
                total = total + w * (at(o, 0) if axis == 0 else at(0, o))
        return total

    fu = line(d1, 0) / h
    fv = line(d1, 1) / h
    if not second:
        return fu, fv
    fuu = line(d2, 0) / (h * h)
    fvv = line(d2, 1) / (h * h)
    fuv = 0.0
    for wi, i in zip(d1, _OFFSETS):
        for wj, j in zip(d1, _OFFSETS):
            if wi and wj:
                fuv = fuv + wi * wj * at(i, j)
    fuv = fuv / (h * h)
    return at(0, 0), fu, fv, fuu, fuv, fvv


def _ip(sig: Signature, a, b):
    return np.sum(a * b * sig.diagonal, axis=-1)


def metric_determinant(surface: Surface, sig: Signature, u, v, h: float = DEFAULT_STEP, order: int = 4):
    """``EG - F^2`` of the induced metric from central first differences."""
    u, v = np.broadcast_arrays(np.asarray(u, dtype=float), np.asarray(v, dtype=float))
    fu, fv = _derivatives(surface, u, v, h, order, second=False)
    E, F, G = _ip(sig, fu, fu), _ip(sig, fu, fv), _ip(sig, fv, fv)
    return E * G - F * F


def fundamental_forms(
    surface: Surface,
    sig: Signature,
    u,
    v,
    h: float = DEFAULT_STEP,
    floor: float = METRIC_FLOOR,
    order: int = 4,
) -> FundamentalForms:
    """First and second fundamental forms and mean curvature at ``(u, v)``.

    Derivatives come from central differences of the given ``order`` (2: the
    classic three-point rules, 4: five-point rules) with step ``h``.

    ``H = (G L - 2 F M + E N) / (2 (EG - F^2))`` with the normal oriented so
    that ``H >= 0``.  Raises :class:`SingularPointError` where ``|EG - F^2|``
    falls below ``floor`` or the normal cannot be normalized.
    """
    if not 1e-7 <= h <= 1e-3:
        raise ValueError("step h must lie in [1e-7, 1e-3]")
    u, v = np.broadcast_arrays(np.asarray(u, dtype=float), np.asarray(v, dtype=float))
    f, fu, fv, fuu, fuv, fvv = _derivatives(surface, u, v, h, order)

    E, F, G = _ip(sig, fu, fu), _ip(sig, fu, fv), _ip(sig, fv, fv)
    detI = E * G - F * F
    if np.any(np.abs(detI) < floor):
        raise SingularPointError("singular point")

    # rows of the linear system <nu, w> = 0 for w in {f, f_u, f_v}
    system = np.stack([f, fu, fv], axis=-2) * sig.diagonal
    _, svals, vt = np.linalg.svd(system)
    if np.any(svals[..., -1] <= 1e-14 * svals[..., 0]):
        raise SingularPointError("normal system is rank deficient")
    nu = vt[..., -1, :]
    nn = _ip(sig, nu, nu)
    if np.any(np.abs(nn) < 1e-12):
        raise SingularPointError("normal is light-like")
    nu = nu / np.sqrt(np.abs(nn))[..., None]

    L, M, N = _ip(sig, fuu, nu), _ip(sig, fuv, nu), _ip(sig, fvv, nu)
    H = (G * L - 2 * F * M + E * N) / (2 * detI)
    flip = np.where(H < 0, -1.0, 1.0)
    nu = nu * flip[..., None]
    L, M, N, H = L * flip, M * flip, N * flip, H * flip
    residuals = np.abs(np.stack([_ip(sig, nu, f), _ip(sig, nu, fu), _ip(sig, nu, fv)], axis=-1))
    return FundamentalForms(E, F, G, L, M, N, H, detI, nu, np.sign(nn), residuals)


def richardson_sequence(surface: Surface, sig: Signature, u: float, v: float, h: float = DEFAULT_STEP, order: int = 4):
    """Mean curvature estimates at steps ``h, h/2, h/4``."""
    return [float(fundamental_forms(surface, sig, u, v, step, order=order).H) for step in (h, h / 2, h / 4)]


def richardson_ok(
    surface: Surface,
    sig: Signature,
    u: float,
    v: float,
    h: float = DEFAULT_STEP,
    slack: float = 1e-9,
    noise_floor: float = 1e-6,
    order: int = 4,
) -> bool:
    """Finite-difference convergence check on the mean curvature.

    Passes when ``|H(h) - H(h/2)| <= 10 |H(h/2) - H(h/4)| + slack`` or when
    the three estimates already agree to ``noise_floor``; in that regime the
    differences are rounding noise and carry no convergence information.
    """
    hs = richardson_sequence(surface, sig, u, v, h, order)
    if abs(hs[0] - hs[1]) <= 10 * abs(hs[1] - hs[2]) + slack:
        return True
    return max(hs) - min(hs) <= noise_floor
