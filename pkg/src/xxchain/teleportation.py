"""Teleportation figures of merit for the thermal two-spin resource state.

The quality of standard teleportation through a shared two-qubit state is
set by its best overlap with a maximally entangled state (the singlet
fraction F); the optimal average fidelity is f = (2F + 1) / 3, and the
protocol beats any classical relay exactly while f > 2/3.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .model import ChainParams, PAULI, Temperature, thermal_coefficients
from .numerics import BracketError, CriticalResult, bisect_root, maximize_unimodal, svd3

__all__ = [
    "CorrelationTensor",
    "EnvelopePoint",
    "TeleportMetrics",
    "correlation_tensor",
    "envelope_extremum",
    "fidelity_critical_temp",
    "optimal_fidelity",
    "singlet_fraction_closed_form",
    "singlet_fraction_general",
    "singlet_fraction_oracle",
    "teleport_metrics",
]

_PAULI_PAIRS = tuple(tuple(np.kron(si, sj) for sj in PAULI) for si in PAULI)

_ORACLE_SEED = 987654321
_TWO_PI = 2.0 * math.pi
# Angle triples (theta, phi, lam) of the four Bell states, always tried
# before the random restarts.
_BELL_STARTS = (
    (0.0, 0.0, 0.0),
    (0.0, 0.0, math.pi),
    (math.pi, 0.0, math.pi),
    (math.pi, 0.0, 0.0),
)


@dataclass(frozen=True)
class CorrelationTensor:
    """Pauli correlation data of a two-qubit state.

    ``matrix[i, j] = Tr[rho sigma_i x sigma_j]`` in the package spin
    convention, plus its descending singular values and determinant sign.
    """

    matrix: np.ndarray
    singular_values: np.ndarray
    det_sign: int


@dataclass(frozen=True)
class TeleportMetrics:
    """Singlet fraction and the optimal average fidelity (2F + 1) / 3."""

    singlet_fraction: float
    fidelity: float


class EnvelopePoint(NamedTuple):
    """Field maximizing the fidelity critical temperature, and that maximum."""

    argmax_b: float
    max_kbt: float


def correlation_tensor(rho) -> CorrelationTensor:
    """Correlation matrix of a state with its singular value decomposition."""
    r = np.asarray(rho, dtype=complex)
    if r.shape != (4, 4):
        raise ValueError(f"expected a 4x4 density matrix, got shape {r.shape}")
    matrix = np.empty((3, 3))
    for i in range(3):
        for j in range(3):
            matrix[i, j] = np.trace(r @ _PAULI_PAIRS[i][j]).real
    decomposition = svd3(matrix)
    return CorrelationTensor(
        matrix=matrix,
        singular_values=decomposition.values,
        det_sign=decomposition.det_sign,
    )


def singlet_fraction_general(tensor: CorrelationTensor) -> float:
    """Best maximally entangled overlap from the correlation data alone.

    F = (1 + s1 + s2 - sign(det) s3) / 4 with descending singular values.
    The branch is decided by the determinant's sign at full precision,
    not by the thresholded classification in ``det_sign``: near T = 0
    with a dominant field the two transverse correlators shrink so the
    determinant drops below any fixed threshold while s3 is still large
    enough for the branch choice to matter. A tensor whose determinant
    vanishes exactly lies on the closure of the negative-determinant
    region, so it takes the + branch (s3 = 0 there, both agree).
    """
    s1, s2, s3 = (float(s) for s in tensor.singular_values)
    det = float(np.linalg.det(np.asarray(tensor.matrix, dtype=float)))
    sign = 1.0 if det > 0.0 else -1.0
    return 0.25 * (1.0 + s1 + s2 - sign * s3)


def singlet_fraction_closed_form(params: ChainParams, temp: Temperature) -> float:
    """Closed-form F of the thermal state.

    F = max(cosh((b + b1/2) beta), cosh(eta beta) + (|j|/eta) sinh(eta beta)) / Z,
    the two branches being the product-sector and doublet-sector overlaps.
    Through the Gibbs weights this is max(u + v, w1 + w2 + 2|y|) / (2 z),
    which also holds under the overflow guard.
    """
    x = thermal_coefficients(params, temp)
    return max(x.u + x.v, x.w1 + x.w2 + 2.0 * abs(x.y)) / (2.0 * x.z)


def optimal_fidelity(singlet_fraction: float) -> float:
    """Optimal average fidelity (2F + 1) / 3 of standard teleportation."""
    if not 0.25 - 1e-9 <= singlet_fraction <= 1.0 + 1e-9:
        raise ValueError(
            f"singlet fraction {singlet_fraction} outside the physical range [1/4, 1]"
        )
    return (2.0 * singlet_fraction + 1.0) / 3.0


def teleport_metrics(params: ChainParams, temp: Temperature) -> TeleportMetrics:
    """Singlet fraction and fidelity of the thermal state, closed-form route."""
    fraction = singlet_fraction_closed_form(params, temp)
    return TeleportMetrics(
        singlet_fraction=fraction, fidelity=optimal_fidelity(fraction)
    )


def _overlap_fn(rho: np.ndarray):
    # Maximally entangled states are (1 x U)|Phi+> with U a one-sided
    # unitary; in the three-angle form of U the candidate state is
    # (U00, U10, U01, U11) / sqrt(2) in the package basis order.
    rows = tuple(tuple(complex(rho[i, k]) for k in range(4)) for i in range(4))

    def overlap(angles) -> float:
        theta, phi, lam = angles
        c = math.cos(0.5 * theta)
        s = math.sin(0.5 * theta)
        psi = (
            complex(c, 0.0),
            cmath.exp(1j * phi) * s,
            -cmath.exp(1j * lam) * s,
            cmath.exp(1j * (phi + lam)) * c,
        )
        acc = 0.0
        for i in range(4):
            row = rows[i]
            amp = row[0] * psi[0] + row[1] * psi[1] + row[2] * psi[2] + row[3] * psi[3]
            acc += (psi[i].conjugate() * amp).real
        return 0.5 * acc

    return overlap


def _line_max(fn, angles, k, current):
    # One-coordinate maximization: coarse scan over a full period, then
    # golden-section refinement around the best probe down to 1e-9 steps.
    base = angles[k]
    step = _TWO_PI / 12.0
    best_offset, best_value = 0.0, current
    probe = list(angles)
    for i in range(1, 12):
        offset = i * step
        probe[k] = base + offset
        value = fn(probe)
        if value > best_value:
            best_offset, best_value = offset, value

    def along(t):
        probe[k] = base + t
        return fn(probe)

    refined_offset, refined_value = maximize_unimodal(
        along, best_offset - step, best_offset + step, tol=1e-9
    )
    if refined_value >= best_value:
        best_offset, best_value = refined_offset, refined_value
    return base + best_offset, best_value


def singlet_fraction_oracle(rho, restarts: int = 8) -> float:
    """Best maximally entangled overlap by direct search, the slow cross-check.

    Runs coordinate ascent over the three angles parametrizing one-sided
    unitaries: per coordinate a periodic coarse scan plus golden-section
    refinement, sweeping until a full sweep improves by less than 1e-12.
    Starts from the four Bell angle triples and ``restarts`` seeded random
    triples, so the search is deterministic for fixed inputs.

    Parameters
    ----------
    rho : array_like, shape (4, 4)
        Density matrix.
    restarts : int
        Number of random starts, at least 8; the accuracy expectation
        (match the correlation-tensor value to 1e-6) is tied to that floor.
    """
    if restarts < 8:
        raise ValueError("restarts must be at least 8 for the accuracy contract")
    r = np.asarray(rho, dtype=complex)
    if r.shape != (4, 4):
        raise ValueError(f"expected a 4x4 density matrix, got shape {r.shape}")
    if not np.all(np.isfinite(r)):
        raise ValueError("density matrix contains non-finite entries")
    overlap = _overlap_fn(r)
    rng = np.random.default_rng(_ORACLE_SEED)
    starts = list(_BELL_STARTS) + [
        tuple(rng.uniform(0.0, _TWO_PI, size=3)) for _ in range(restarts)
    ]
    best = -math.inf
    for start in starts:
        angles = list(start)
        value = overlap(angles)
        for _ in range(60):
            before = value
            for k in range(3):
                angles[k], value = _line_max(overlap, angles, k, value)
            if value - before < 1e-12:
                break
        if value > best:
            best = value
    return best


def fidelity_critical_temp(params: ChainParams) -> CriticalResult:
    """Temperature where the optimal fidelity drops to the classical 2/3.

    Solves sinh(eta beta) = (eta / |j|) cosh((b + b1/2) beta) for beta by
    bracketed bisection (tolerance 1e-10 in beta) and returns kbt = 1/beta.
    A crossing exists exactly when ``|b + b1/2| < eta``; on the boundary or
    beyond, ``exists`` is False (note "boundary" at equality). The bracket
    starts at [1e-6, 1/eta] and doubles its upper end until the sign
    changes; failing to do so below 1e4/eta raises BracketError, which is a
    solver failure, not a statement that no crossing exists.

    The sign function is evaluated with the dominant exponential divided
    out, so large beta never overflows.
    """
    if params.j == 0.0:
        return CriticalResult(
            value=math.nan,
            exists=False,
            note="no coupling, the fidelity never beats the classical bound",
        )
    eta = params.eta
    drive = abs(params.b + 0.5 * params.b1)
    if drive >= eta:
        boundary = abs(drive - eta) <= 1e-12 * max(1.0, eta)
        return CriticalResult(
            value=math.nan,
            exists=False,
            note="boundary" if boundary else "field dominates the doublet gap, no crossing",
        )
    ratio = eta / abs(params.j)

    def excess(beta: float) -> float:
        # sinh(eta b) - ratio cosh(drive b), scaled by exp(-eta b) > 0.
        return 0.5 * (1.0 - math.exp(-2.0 * eta * beta)) - 0.5 * ratio * (
            math.exp((drive - eta) * beta) + math.exp(-(drive + eta) * beta)
        )

    lo = 1e-6
    hi = 1.0 / eta
    limit = 1e4 / eta
    while excess(hi) <= 0.0:
        hi *= 2.0
        if hi > limit:
            raise BracketError(
                f"no sign change up to beta = {limit:.3e} "
                f"(j = {params.j:g}, b = {params.b:g}, b1 = {params.b1:g})",
                excess(lo),
                excess(limit),
            )
    root, iterations, width = bisect_root(excess, lo, hi, tol=1e-10, full_output=True)
    return CriticalResult(
        value=1.0 / root, exists=True, iterations=iterations, residual=width
    )


def envelope_extremum(j: float, b1: float, tol: float = 1e-6) -> EnvelopePoint:
    """Field maximizing the fidelity critical temperature at fixed ``j``, ``b1``.

    Golden-section search over b in [-b1/2 - 3 eta, -b1/2 + 3 eta]. Fields
    with no crossing contribute 0, so the objective is a single bump and
    the search is deterministic.
    """
    if j == 0.0:
        raise ValueError("j = 0: the fidelity has no crossing at any field")
    eta = ChainParams(j=j, b=0.0, b1=b1).eta
    center = -0.5 * b1

    def crossing_temp(b: float) -> float:
        result = fidelity_critical_temp(ChainParams(j=j, b=b, b1=b1))
        return result.value if result.exists else 0.0

    argmax_b, max_kbt = maximize_unimodal(
        crossing_temp, center - 3.0 * eta, center + 3.0 * eta, tol=tol
    )
    return EnvelopePoint(argmax_b=argmax_b, max_kbt=max_kbt)
