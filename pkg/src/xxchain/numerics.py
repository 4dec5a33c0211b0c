"""Dense linear algebra on fixed small sizes plus scalar bracketing solvers.

Eigendecomposition and singular value decomposition are delegated to LAPACK
through numpy. The root finder and the section search are hand rolled so
their iteration schedules stay deterministic and their diagnostics (bracket
endpoints, step counts, final widths) can be reported exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, NamedTuple, Tuple

import numpy as np

__all__ = [
    "BracketError",
    "CriticalResult",
    "SingularValues3",
    "bisect_root",
    "hermitian_eigen",
    "maximize_unimodal",
    "svd3",
]

# Inverse golden ratio, the contraction factor of the section search.
_INVPHI = (math.sqrt(5.0) - 1.0) / 2.0


class BracketError(ValueError):
    """A sign change could not be established on the given interval.

    Carries the function values at the failing endpoints in ``f_lo`` and
    ``f_hi`` so callers can report what the solver actually saw.
    """

    def __init__(self, message: str, f_lo: float, f_hi: float):
        super().__init__(message)
        self.f_lo = f_lo
        self.f_hi = f_hi


@dataclass(frozen=True)
class CriticalResult:
    """Outcome of a critical-temperature computation.

    ``value`` is a thermal energy (k_B times temperature). When ``exists``
    is False the value is NaN and ``note`` says why no crossing exists.
    ``iterations`` and ``residual`` are solver diagnostics, the bisection
    step count and the final bracket width; both are zero when the value
    comes from a closed form, in which case ``residual`` instead reports
    the defect of the defining condition at the returned value.
    """

    value: float
    exists: bool
    iterations: int = 0
    residual: float = 0.0
    note: str = ""


class SingularValues3(NamedTuple):
    """Descending singular values of a real 3x3 matrix and its determinant sign."""

    values: np.ndarray
    det_sign: int


def hermitian_eigen(matrix, atol: float = 1e-12) -> Tuple[np.ndarray, np.ndarray]:
    """Eigendecomposition of a 4x4 Hermitian matrix.

    Parameters
    ----------
    matrix : array_like, shape (4, 4)
        Hermitian within ``atol`` (largest absolute deviation from the
        conjugate transpose).
    atol : float
        Hermiticity tolerance.

    Returns
    -------
    values : ndarray, shape (4,)
        Eigenvalues in ascending order.
    vectors : ndarray, shape (4, 4)
        Orthonormal eigenvectors, column ``i`` belonging to ``values[i]``.

    Raises
    ------
    ValueError
        On a wrong shape, non-finite entries, or a Hermiticity defect
        larger than ``atol`` (the message reports the largest asymmetry).
    """
    m = np.asarray(matrix, dtype=complex)
    if m.shape != (4, 4):
        raise ValueError(f"expected a 4x4 matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ValueError("matrix contains non-finite entries")
    asymmetry = float(np.max(np.abs(m - m.conj().T)))
    if asymmetry > atol:
        raise ValueError(
            f"matrix is not Hermitian: max asymmetry {asymmetry:.3e} exceeds {atol:.1e}"
        )
    values, vectors = np.linalg.eigh(0.5 * (m + m.conj().T))
    return values, vectors


def svd3(matrix, zero_tol: float = 1e-12) -> SingularValues3:
    """Singular values of a real 3x3 matrix, descending, plus the sign of its determinant.

    A determinant smaller than ``zero_tol`` in magnitude is reported as
    sign 0 (numerically singular).
    """
    m = np.asarray(matrix, dtype=float)
    if m.shape != (3, 3):
        raise ValueError(f"expected a 3x3 matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ValueError("matrix contains non-finite entries")
    values = np.linalg.svd(m, compute_uv=False)
    det = float(np.linalg.det(m))
    if abs(det) < zero_tol:
        det_sign = 0
    else:
        det_sign = 1 if det > 0.0 else -1
    return SingularValues3(values=values, det_sign=det_sign)


def bisect_root(
    fn: Callable[[float], float],
    lo: float,
    hi: float,
    tol: float = 1e-10,
    max_iter: int = 200,
    full_output: bool = False,
):
    """Bisection root of ``fn`` on ``[lo, hi]``.

    ``fn(lo)`` and ``fn(hi)`` must differ in sign. The search halves the
    bracket until its width is at most ``tol`` and returns the final
    midpoint; an exact zero hit is returned immediately. With
    ``full_output=True`` the return value is ``(root, iterations, width)``.

    Raises
    ------
    ValueError
        If ``lo >= hi``.
    BracketError
        If the endpoint values do not straddle zero; the exception carries
        both values.
    """
    if not lo < hi:
        raise ValueError(f"invalid interval [{lo}, {hi}]")
    f_lo = fn(lo)
    f_hi = fn(hi)
    if f_lo == 0.0:
        return (lo, 0, 0.0) if full_output else lo
    if f_hi == 0.0:
        return (hi, 0, 0.0) if full_output else hi
    if (f_lo > 0.0) == (f_hi > 0.0):
        raise BracketError(
            f"no sign change on [{lo:g}, {hi:g}]: fn(lo) = {f_lo:.6e}, fn(hi) = {f_hi:.6e}",
            f_lo,
            f_hi,
        )
    iterations = 0
    while hi - lo > tol and iterations < max_iter:
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break  # bracket is at floating point resolution
        f_mid = fn(mid)
        iterations += 1
        if f_mid == 0.0:
            lo = hi = mid
            break
        if (f_mid > 0.0) == (f_hi > 0.0):
            hi, f_hi = mid, f_mid
        else:
            lo, f_lo = mid, f_mid
    root = 0.5 * (lo + hi)
    if full_output:
        return root, iterations, hi - lo
    return root


def maximize_unimodal(
    fn: Callable[[float], float],
    lo: float,
    hi: float,
    tol: float = 1e-6,
    max_iter: int = 500,
) -> Tuple[float, float]:
    """Golden-section maximization of a unimodal function on ``[lo, hi]``.

    Returns ``(argmax, value)`` once the interval has contracted to width
    ``tol``. The probe schedule depends only on the interval and ``tol``,
    so repeated calls are bit-for-bit identical.
    """
    if not lo < hi:
        raise ValueError(f"invalid interval [{lo}, {hi}]")
    a, b = float(lo), float(hi)
    c = b - _INVPHI * (b - a)
    d = a + _INVPHI * (b - a)
    f_c, f_d = fn(c), fn(d)
    iterations = 0
    while b - a > tol and iterations < max_iter:
        if f_c < f_d:
            a = c
            c, f_c = d, f_d
            d = a + _INVPHI * (b - a)
            f_d = fn(d)
        else:
            b = d
            d, f_d = c, f_c
            c = b - _INVPHI * (b - a)
            f_c = fn(c)
        iterations += 1
    x = 0.5 * (a + b)
    return x, fn(x)
