"""Ambient-space arithmetic for R^4_1 and its two unit space forms.

Points are plain ``numpy`` arrays whose last axis holds ``(t, x, y, z)``;
every function broadcasts over leading axes.  Complex 2x2 matrices use the
Hermitian model

    (t, x, y, z)  <->  [[t + z, x + i y], [x - i y, t - z]]

in which de Sitter space is ``{X ; det X = -1} = {a e3 a* ; a in SL(2, C)}``.
"""

from __future__ import annotations

import enum

import numpy as np

from .errors import DomainError, NotHermitianError

DEFAULT_TOL = 1e-10

E3 = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)


class Signature(enum.Enum):
    """Quadratic form on R^4.

    ``DE_SITTER`` is (-+++) and contains S^3_1 as ``<X, X> = 1``.
    ``ANTI_DE_SITTER`` is (+--+) and contains H^3_1(-1) as ``<X, X> = -1``.
    """

    DE_SITTER = "-+++"
    ANTI_DE_SITTER = "+--+"

    @property
    def diagonal(self) -> np.ndarray:
        return np.array([1.0 if c == "+" else -1.0 for c in self.value])

    @property
    def curvature(self) -> float:
        """Value of ``<X, X>`` on the unit space form of this signature."""
        return 1.0 if self is Signature.DE_SITTER else -1.0


def as_point(p) -> np.ndarray:
    """Return ``p`` as a float array with a trailing axis of length 4."""
    arr = np.asarray(p, dtype=float)
    if arr.shape[-1:] != (4,):
        raise ValueError(f"expected trailing axis of length 4, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError("point has non-finite coordinates")
    return arr


def minkowski_inner(p, q, sig: Signature = Signature.DE_SITTER):
    """Bilinear form of signature ``sig`` evaluated on the last axis."""
    p = np.asarray(p, dtype=float)
    q = np.asarray(q, dtype=float)
    return np.sum(p * q * sig.diagonal, axis=-1)


def to_herm(p) -> np.ndarray:
    """Map ``(t, x, y, z)`` to its Hermitian matrix."""
    p = as_point(p)
    t, x, y, z = np.moveaxis(p, -1, 0)
    out = np.empty(p.shape[:-1] + (2, 2), dtype=complex)
    out[..., 0, 0] = t + z
    out[..., 0, 1] = x + 1j * y
    out[..., 1, 0] = x - 1j * y
    out[..., 1, 1] = t - z
    return out


def from_herm(X, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Inverse of :func:`to_herm`.

    The input is symmetrized as ``(X + X*) / 2`` after checking that its
    largest deviation from Hermitian is at most ``tol``.
    """
    X = np.asarray(X, dtype=complex)
    Xh = np.conj(np.swapaxes(X, -1, -2))
    if np.max(np.abs(X - Xh), initial=0.0) > tol:
        raise NotHermitianError("not Hermitian")
    X = 0.5 * (X + Xh)
    a = X[..., 0, 0].real
    d = X[..., 1, 1].real
    b = X[..., 0, 1]
    return np.stack([(a + d) / 2, b.real, b.imag, (a - d) / 2], axis=-1)


def dagger(a) -> np.ndarray:
    """Conjugate transpose over the last two axes."""
    return np.conj(np.swapaxes(np.asarray(a, dtype=complex), -1, -2))


def conjugate_action(a, X) -> np.ndarray:
    """Return ``a X a*``."""
    a = np.asarray(a, dtype=complex)
    return a @ np.asarray(X, dtype=complex) @ dagger(a)


def in_space_form(p, sig: Signature = Signature.DE_SITTER, tol: float = DEFAULT_TOL):
    """True where ``|<p, p> - kappa| <= tol`` (kappa = +1 for dS, -1 for AdS)."""
    if tol <= 0:
        raise ValueError("tol must be positive")
    return np.abs(minkowski_inner(p, p, sig) - sig.curvature) <= tol


def involution_iota(p) -> np.ndarray:
    """The isometric involution ``(t, x, y, z) -> (-t, x, y, -z)``."""
    p = as_point(p)
    return p * np.array([-1.0, 1.0, 1.0, -1.0])


def alpha(k: int, m: int) -> float:
    """Angle ``(2k + 1) pi / (2m)`` of the k-th singular ray."""
    return (2 * k + 1) * np.pi / (2 * m)


def check_k(k: int, m: int) -> None:
    if m < 2:
        raise DomainError(f"m must be >= 2, got {m}")
    if not 0 <= k <= 2 * m - 1:
        raise DomainError(f"k must lie in [0, {2 * m - 1}], got {k}")


def rotation_involution(k: int, m: int, p) -> np.ndarray:
    """Reflection of the xy-plane across the line through the k-th cone point.

    With ``a = alpha(k, m)`` this is

        (t, x, y, z) -> (t, -cos(2a) x - sin(2a) y, -sin(2a) x + cos(2a) y, z),

    which fixes both light-like lines ``(t, -sin a, cos a, +-t)`` pointwise and
    maps the type II extension onto itself for every ``m``.
    """
    check_k(k, m)
    p = as_point(p)
    c, s = np.cos(2 * alpha(k, m)), np.sin(2 * alpha(k, m))
    t, x, y, z = np.moveaxis(p, -1, 0)
    return np.stack([t, -c * x - s * y, -s * x + c * y, z], axis=-1)


def random_sl2c(rng: np.random.Generator, size: int = 1, scale: float = 1.0) -> np.ndarray:
    """Random matrices of unit determinant, shape ``(size, 2, 2)``."""
    a = scale * (rng.standard_normal((size, 2, 2)) + 1j * rng.standard_normal((size, 2, 2)))
    det = np.linalg.det(a)
    return a / np.sqrt(det)[:, None, None]
