"""Existence of continuous periodic solutions of the additive equation.

A nonzero continuous periodic solution of g(w) + sum g(w + b_k) = 0 exists
exactly when some frequency alpha solves

    1 + sum cos(alpha b_k) = 0   and   sum sin(alpha b_k) = 0,

and then a*cos(alpha w) + b*sin(alpha w) works for every (a, b): the 2x2
matrix tying the Fourier coefficients of g to those of the equation's left
side has nonnegative determinant and vanishes entrywise as soon as its
determinant does.  The scanner minimizes that determinant (a sum of two
squares, so zeros are double roots and sign-based bracketing is useless);
the equispaced and two-shift families have closed forms checked exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .coefficients import ShiftVector
from .errors import InvalidInput, InvalidRange, NonPositiveScale, NotCoprime, ZeroDenominator

__all__ = [
    "PeriodicityCertificate",
    "FourierMatrix",
    "system_residual",
    "scan_minima",
    "find_periodic_alphas",
    "equispaced_alphas",
    "fourier_matrix",
    "two_term_periodic_exists",
    "TwoTermVerdict",
    "scale_shifts",
]

#: squared-system acceptance threshold, about 1e-8 per linear equation
CERTIFICATE_TOL = 1e-16

#: golden-section brackets are narrowed to this absolute width
_REFINE_WIDTH = 1e-14

_INV_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


def _shift_array(b) -> np.ndarray:
    """Accept a ShiftVector or any sequence of positive shifts.

    Repeated shifts are allowed here (unlike ShiftVector) so that degenerate
    cases such as g(w) + 2 g(w+a) = 0, i.e. shifts (a, a), can be scanned.
    """
    entries = np.asarray(
        b.entries if isinstance(b, ShiftVector) else [float(v) for v in b], dtype=float
    )
    if entries.size == 0:
        raise InvalidInput("at least one shift required")
    if np.any(entries <= 0.0):
        raise InvalidInput("shifts must be positive")
    return entries


@dataclass(frozen=True)
class PeriodicityCertificate:
    """A frequency solving the trigonometric system, with a witness solution."""

    alpha: float
    period: float
    system_residual: float
    witness: tuple[float, float] = (1.0, 0.0)

    def witness_function(self):
        a, c = self.witness
        alpha = self.alpha
        return lambda w: a * np.cos(alpha * np.asarray(w)) + c * np.sin(alpha * np.asarray(w))


@dataclass(frozen=True)
class FourierMatrix:
    """2x2 matrix acting on the (cos, sin) coefficients of harmonic k."""

    entries: tuple[tuple[float, float], tuple[float, float]]

    @property
    def det(self) -> float:
        (a, b), (c, d) = self.entries
        return a * d - b * c


def system_residual(alpha, b) -> float | np.ndarray:
    """(1 + sum cos(alpha b_k))**2 + (sum sin(alpha b_k))**2.

    Nonnegative; zero exactly at frequencies admitting periodic solutions.
    Vectorized over ``alpha``.
    """
    shifts = _shift_array(b)
    a = np.asarray(alpha, dtype=float)
    phases = np.multiply.outer(a, shifts)
    cos_part = 1.0 + np.cos(phases).sum(axis=-1)
    sin_part = np.sin(phases).sum(axis=-1)
    out = cos_part**2 + sin_part**2
    return float(out) if np.isscalar(alpha) or a.ndim == 0 else out


def _golden_minimize(f, lo: float, hi: float, width: float) -> float:
    """Golden-section minimum of a unimodal-enough f on [lo, hi]."""
    x1 = hi - _INV_GOLDEN * (hi - lo)
    x2 = lo + _INV_GOLDEN * (hi - lo)
    f1, f2 = f(x1), f(x2)
    while hi - lo > width:
        if f1 <= f2:
            hi, x2, f2 = x2, x1, f1
            x1 = hi - _INV_GOLDEN * (hi - lo)
            f1 = f(x1)
        else:
            lo, x1, f1 = x1, x2, f2
            x2 = lo + _INV_GOLDEN * (hi - lo)
            f2 = f(x2)
    return 0.5 * (lo + hi)


def default_grid_step(b, alpha_max: float) -> float:
    """Step resolving the fastest oscillation cos(alpha * bN)."""
    largest = float(_shift_array(b).max())
    return min(math.pi / (8.0 * largest), alpha_max / 1e4)


def scan_minima(
    b, alpha_max: float, grid_step: float | None = None
) -> list[tuple[float, float]]:
    """All refined local minima of the system residual on (0, alpha_max].

    Returns (alpha, residual) pairs sorted by alpha, regardless of how small
    the residual is; ``find_periodic_alphas`` applies the acceptance cut.
    """
    if not (alpha_max > 0.0):
        raise InvalidRange("alpha_max must be positive")
    if grid_step is None:
        grid_step = default_grid_step(b, alpha_max)
    if not (grid_step > 0.0):
        raise InvalidRange("grid_step must be positive")
    shifts = _shift_array(b)
    count = int(math.floor(alpha_max / grid_step))
    grid = grid_step * np.arange(1, count + 1)
    if grid.size == 0 or grid[-1] < alpha_max:
        grid = np.append(grid, alpha_max)
    if grid.size < 3:
        grid = np.linspace(min(grid_step, alpha_max / 3.0), alpha_max, 4)
    res = system_residual(grid, shifts)

    interior = np.flatnonzero(
        (res[1:-1] <= res[:-2]) & (res[1:-1] <= res[2:])
    ) + 1
    out: list[tuple[float, float]] = []
    f = lambda a: system_residual(a, shifts)
    for i in interior:
        alpha = _golden_minimize(f, float(grid[i - 1]), float(grid[i + 1]), _REFINE_WIDTH)
        if out and abs(alpha - out[-1][0]) < 1e-8:
            if f(alpha) < out[-1][1]:
                out[-1] = (alpha, float(f(alpha)))
            continue
        out.append((alpha, float(f(alpha))))
    return out


def find_periodic_alphas(
    b,
    alpha_max: float,
    grid_step: float | None = None,
    tol: float = CERTIFICATE_TOL,
) -> list[PeriodicityCertificate]:
    """Certificates for every frequency in (0, alpha_max] solving the system.

    The witness is cos(alpha w); any (a, b) pair works because a vanishing
    determinant forces the whole Fourier matrix to vanish.
    """
    if not (tol > 0.0):
        raise InvalidRange("tol must be positive")
    certs = []
    for alpha, residual in scan_minima(b, alpha_max, grid_step):
        if residual <= tol:
            certs.append(
                PeriodicityCertificate(
                    alpha=alpha,
                    period=2.0 * math.pi / alpha,
                    system_residual=residual,
                )
            )
    return certs


def equispaced_alphas(n: int, d: float, m_max: int) -> list[float]:
    """Closed-form frequencies 2*m*pi/((n+1)*d) for shifts (d, 2d, ..., nd).

    Indices m that are multiples of n+1 make every phase a full turn and are
    excluded.
    """
    if n < 1:
        raise InvalidInput("n must be >= 1")
    if not (d > 0.0):
        raise NonPositiveScale("spacing d must be positive")
    if m_max < 1:
        raise InvalidInput("m_max must be >= 1")
    return [
        2.0 * m * math.pi / ((n + 1) * d)
        for m in range(1, m_max + 1)
        if m % (n + 1) != 0
    ]


def fourier_matrix(k: int, theta: float, b) -> FourierMatrix:
    """Matrix sending harmonic-k coefficients of g to those of the equation."""
    if k < 1:
        raise InvalidInput("harmonic index k must be >= 1")
    shifts = _shift_array(b)
    phases = k * theta * shifts
    c = 1.0 + float(np.cos(phases).sum())
    s = float(np.sin(phases).sum())
    return FourierMatrix(entries=((c, s), (-s, c)))


def scale_shifts(b, d: float):
    """Multiply every shift by d > 0; periodic solvability is invariant."""
    if not (d > 0.0):
        raise NonPositiveScale("scale must be positive")
    if isinstance(b, ShiftVector):
        return ShiftVector(tuple(v * d for v in b.entries))
    return tuple(float(v) * d for v in b)


@dataclass(frozen=True)
class TwoTermVerdict:
    """Decision for g(x) + g(x+a) + g(x+b) = 0 with a/b = p/q in lowest terms."""

    exists: bool
    witness: tuple[int, int] | None
    reason: str

    def __bool__(self) -> bool:
        return self.exists


def two_term_periodic_exists(p: int, q: int) -> TwoTermVerdict:
    """Decide periodic solvability of the two-shift equation from p/q.

    Solvable exactly when {p mod 3, q mod 3} == {1, 2}; then p/q equals
    (2+3k)/(1+3m) or its reciprocal for integer k, m recovered directly from
    the residues.  Pure integer arithmetic throughout.
    """
    if q == 0:
        raise ZeroDenominator("q must be nonzero")
    if p < 1 or q < 1:
        raise InvalidInput("p and q must be positive integers")
    if math.gcd(p, q) != 1:
        raise NotCoprime(f"{p}/{q} is not in lowest terms")

    residues = (p % 3, q % 3)
    if residues == (2, 1):
        return TwoTermVerdict(True, ((p - 2) // 3, (q - 1) // 3), "p = 2+3k, q = 1+3m")
    if residues == (1, 2):
        return TwoTermVerdict(True, ((q - 2) // 3, (p - 1) // 3), "p = 1+3m, q = 2+3k")
    return TwoTermVerdict(
        False, None, f"residues mod 3 are {residues}, need one 1 and one 2"
    )
