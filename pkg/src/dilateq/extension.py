"""Global extension of boundary data for g(w) + g(w+b1) + ... + g(w+bN) = 0.

Continuous data g on [0, bN] extends to a unique continuous solution on all
of R once it satisfies the compatibility condition g(0) + g(b1) + ... + g(bN)
= 0.  Rightward, each new strip of width bN - b_{N-1} is determined by the
rearranged equation

    g(y) = -[ g(y - bN) + g(y - (bN - b1)) + ... + g(y - (bN - b_{N-1})) ],

whose arguments all lie in previously covered territory; leftward, strips of
width b1 come from g(x) = -[ g(x + b1) + ... + g(x + bN) ].

Everything here stays piecewise linear: a new strip is a sum of shifted
restrictions of the already-built function, so it is represented exactly by
its values on the union of the shifted breakpoints.  That makes the equation
hold identically (up to float rounding) instead of only at sample points,
and construction cost is linear in the number of strips.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .coefficients import CoefficientVector, ShiftVector
from .errors import (
    CoverageBudgetExceeded,
    DegenerateStep,
    DomainMismatch,
    InternalInconsistency,
    InterpolationViolated,
    InvalidInput,
    InvalidRange,
    NonPositiveSample,
    OutOfCoverage,
)

__all__ = [
    "PiecewiseLinear",
    "ExtendedSolution",
    "check_interpolation",
    "tent_boundary",
    "periodic_reference",
    "extend",
    "evaluate",
    "residual_additive",
    "residual_multiplicative",
    "popoviciu_determinant",
]

#: hard cap on breakpoints accumulated during extension
MAX_BREAKPOINTS = 1_000_000

#: default tolerance on the boundary compatibility residual
INTERPOLATION_TOL = 1e-9

#: breakpoints closer than _MERGE_EPS * max(1, |w|) are treated as one
_MERGE_EPS = 1e-12

#: merged breakpoints must agree in value to this, else the build is unsound
_MERGE_VALUE_TOL = 1e-9


class PiecewiseLinear:
    """Continuous piecewise-linear function on [breakpoints[0], breakpoints[-1]].

    Evaluation between breakpoints interpolates linearly; evaluation outside
    the domain (beyond a relative slack of 1e-12) raises ``OutOfCoverage``.
    """

    __slots__ = ("breakpoints", "values")

    def __init__(self, breakpoints: Sequence[float], values: Sequence[float]):
        x = np.asarray(breakpoints, dtype=float)
        y = np.asarray(values, dtype=float)
        if x.ndim != 1 or y.ndim != 1 or x.size != y.size:
            raise InvalidInput("breakpoints and values must be 1-d and equal length")
        if x.size < 2:
            raise InvalidInput("need at least two breakpoints")
        if not np.all(np.diff(x) > 0):
            raise InvalidInput("breakpoints must be strictly increasing")
        if not (np.all(np.isfinite(x)) and np.all(np.isfinite(y))):
            raise InvalidInput("breakpoints and values must be finite")
        self.breakpoints = x
        self.values = y

    @property
    def domain(self) -> tuple[float, float]:
        return float(self.breakpoints[0]), float(self.breakpoints[-1])

    def __call__(self, w):
        arr = np.asarray(w, dtype=float)
        lo, hi = self.breakpoints[0], self.breakpoints[-1]
        slack = _MERGE_EPS * max(1.0, abs(lo), abs(hi))
        if np.any(arr < lo - slack) or np.any(arr > hi + slack):
            bad = arr[(arr < lo - slack) | (arr > hi + slack)]
            raise OutOfCoverage(
                f"point {float(np.ravel(bad)[0]):.17g} outside [{lo:.17g}, {hi:.17g}]"
            )
        out = np.interp(np.clip(arr, lo, hi), self.breakpoints, self.values)
        return float(out) if np.isscalar(w) or arr.ndim == 0 else out


def _shift_entries(b) -> tuple[float, ...]:
    if isinstance(b, ShiftVector):
        return b.entries
    return ShiftVector(tuple(float(v) for v in b)).entries


def check_interpolation(g: PiecewiseLinear, b: ShiftVector | Sequence[float]) -> float:
    """Residual g(0) + g(b1) + ... + g(bN) of the compatibility condition."""
    shifts = _shift_entries(b)
    lo, hi = g.domain
    slack = _MERGE_EPS * max(1.0, abs(shifts[-1]))
    if abs(lo) > slack or abs(hi - shifts[-1]) > slack:
        raise DomainMismatch(
            f"boundary domain [{lo:.17g}, {hi:.17g}] is not [0, {shifts[-1]:.17g}]"
        )
    return float(g(0.0) + sum(g(s) for s in shifts))


def tent_boundary(b: ShiftVector | Sequence[float]) -> PiecewiseLinear:
    """Plateau-and-drop boundary data: 1 on [0, b_{N-1}], linear to -N at bN.

    Satisfies the compatibility condition exactly and is not differentiable,
    which is what makes its extension a witness against finite-dimensionality
    of the solution space.  For N = 1 the plateau degenerates and the data is
    the single segment from (0, 1) to (b1, -1).
    """
    shifts = _shift_entries(b)
    n = len(shifts)
    if n == 1:
        return PiecewiseLinear([0.0, shifts[0]], [1.0, -1.0])
    return PiecewiseLinear(
        [0.0, shifts[-2], shifts[-1]], [1.0, 1.0, -float(n)]
    )


def periodic_reference(n: int) -> PiecewiseLinear:
    """One period of the closed-form solution for shifts b_k = k.

    On [0, n+1]: 1 up to n-1, then down to -n at n along -(n+1)x + n^2, then
    back up to 1 at n+1 along (n+1)x - n(n+2).  Tiled with period n+1 this is
    the global extension of ``tent_boundary((1, ..., n))``.
    """
    if n < 2:
        raise InvalidInput("periodic reference requires n >= 2")
    return PiecewiseLinear(
        [0.0, float(n - 1), float(n), float(n + 1)],
        [1.0, 1.0, -float(n), 1.0],
    )


@dataclass(frozen=True)
class ExtendedSolution:
    """Constructed global solution: boundary data plus covered interval.

    ``pieces`` restricted to [0, bN] reproduces ``boundary``; on any w with
    all of w, w+b1, ..., w+bN inside ``covered`` the additive equation holds
    to rounding.  Immutable after construction; evaluation is thread-safe.
    """

    shifts: ShiftVector
    boundary: PiecewiseLinear
    covered: tuple[float, float]
    pieces: PiecewiseLinear

    def __call__(self, w):
        return self.pieces(w)


def evaluate(sol: ExtendedSolution, w) -> float:
    """Evaluate the constructed solution; raises OutOfCoverage outside it."""
    return sol.pieces(w)


def _dedupe(nodes: np.ndarray) -> np.ndarray:
    nodes = np.sort(nodes)
    eps = _MERGE_EPS * np.maximum(1.0, np.abs(nodes[1:]))
    keep = np.concatenate(([True], np.diff(nodes) > eps))
    return nodes[keep]


def _strip_nodes(xs: np.ndarray, shifts: Sequence[float], lo: float, hi: float) -> np.ndarray:
    """Breakpoints of sum_j f(w - s_j) on [lo, hi]: shifted kinks plus the ends."""
    parts = [np.array([lo, hi])]
    for s in shifts:
        t = xs + s
        parts.append(t[(t > lo) & (t < hi)])
    nodes = _dedupe(np.concatenate(parts))
    # keep the exact endpoints even if a shifted kink landed within merge range
    nodes[0], nodes[-1] = lo, hi
    return nodes


def _seam_check(existing: float, incoming: float, where: float) -> None:
    if abs(existing - incoming) > _MERGE_VALUE_TOL:
        raise InternalInconsistency(
            f"strip value {incoming:.17g} disagrees with {existing:.17g} at w = {where:.17g}"
        )


def extend(
    boundary: PiecewiseLinear,
    b: ShiftVector | Sequence[float],
    target: tuple[float, float],
    tol: float = INTERPOLATION_TOL,
) -> ExtendedSolution:
    """Extend boundary data on [0, bN] to cover ``target``, strip by strip.

    ``target`` must contain [0, bN].  The result covers at least ``target``
    (coverage grows in whole strips).  Boundary data must satisfy the
    compatibility condition to within ``tol``.
    """
    shifts = _shift_entries(b)
    n = len(shifts)
    b_n = shifts[-1]
    residual = check_interpolation(boundary, shifts)  # also validates the domain
    if abs(residual) > tol:
        raise InterpolationViolated(
            f"boundary residual {residual:.6g} exceeds tolerance {tol:.6g}"
        )
    w_lo, w_hi = float(target[0]), float(target[1])
    if not (w_lo <= 0.0 and w_hi >= b_n):
        raise InvalidRange(f"target must contain [0, {b_n:.17g}]")

    step_right = b_n - (shifts[-2] if n >= 2 else 0.0)
    step_left = shifts[0]
    if step_right <= 0.0 or step_left <= 0.0:
        raise DegenerateStep("leading shifts coincide; strips have zero width")

    # arguments read by a new right strip: y - s for s in back_shifts
    back_shifts = [-b_n] + [s - b_n for s in shifts[:-1]]
    fwd_shifts = list(shifts)

    xs = boundary.breakpoints.copy()
    ys = boundary.values.copy()

    def lookup(points: np.ndarray) -> np.ndarray:
        return np.interp(points, xs, ys)

    eps = _MERGE_EPS * max(1.0, abs(w_lo), abs(w_hi))
    hi = float(xs[-1])
    while hi < w_hi - eps:
        lo_s, hi_s = hi, hi + step_right
        nodes = _strip_nodes(xs, [-s for s in back_shifts], lo_s, hi_s)
        vals = -sum(lookup(nodes + s) for s in back_shifts)
        _seam_check(float(ys[-1]), float(vals[0]), lo_s)
        xs = np.concatenate([xs, nodes[1:]])
        ys = np.concatenate([ys, vals[1:]])
        if xs.size > MAX_BREAKPOINTS:
            raise CoverageBudgetExceeded(f"{xs.size} breakpoints exceed the budget")
        hi = hi_s

    lo = float(xs[0])
    while lo > w_lo + eps:
        lo_s, hi_s = lo - step_left, lo
        nodes = _strip_nodes(xs, [-s for s in fwd_shifts], lo_s, hi_s)
        vals = -sum(lookup(nodes + s) for s in fwd_shifts)
        _seam_check(float(ys[0]), float(vals[-1]), hi_s)
        xs = np.concatenate([nodes[:-1], xs])
        ys = np.concatenate([vals[:-1], ys])
        if xs.size > MAX_BREAKPOINTS:
            raise CoverageBudgetExceeded(f"{xs.size} breakpoints exceed the budget")
        lo = lo_s

    pieces = PiecewiseLinear(xs, ys)
    return ExtendedSolution(
        shifts=ShiftVector(shifts),
        boundary=boundary,
        covered=(float(xs[0]), float(xs[-1])),
        pieces=pieces,
    )


def _eval_many(f: Callable, xs: np.ndarray) -> np.ndarray:
    """Evaluate a scalar-or-vector callable on an array."""
    try:
        out = np.asarray(f(xs), dtype=float)
        if out.shape == xs.shape:
            return out
    except (TypeError, ValueError):
        pass
    return np.array([float(f(float(x))) for x in xs])


def residual_additive(g: Callable, b: ShiftVector | Sequence[float], grid) -> float:
    """max over the grid of |g(w) + g(w+b1) + ... + g(w+bN)|."""
    shifts = _shift_entries(b)
    w = np.asarray(grid, dtype=float)
    total = _eval_many(g, w)
    for s in shifts:
        total = total + _eval_many(g, w + s)
    return float(np.max(np.abs(total))) if w.size else 0.0


def residual_multiplicative(
    f: Callable, a: CoefficientVector | Sequence[float], grid
) -> float:
    """max over positive grid points of |f(x) + f(a1 x) + ... + f(aN x)|."""
    factors = a.entries if isinstance(a, CoefficientVector) else tuple(map(float, a))
    x = np.asarray(grid, dtype=float)
    if np.any(x <= 0.0):
        raise NonPositiveSample("multiplicative residual needs x > 0")
    total = _eval_many(f, x)
    for c in factors:
        total = total + _eval_many(f, c * x)
    return float(np.max(np.abs(total))) if x.size else 0.0


def popoviciu_determinant(f: Callable, x: float, h: float, n: int) -> float:
    """Determinant of the (n+1) x (n+1) Hankel matrix [f(x + (i+j) h)].

    Vanishing for all (x, h) characterizes exponential polynomials; a single
    decisively nonzero value certifies that f is not one.
    """
    if h == 0.0:
        raise InvalidInput("step h must be nonzero")
    if n < 1:
        raise InvalidInput("order n must be >= 1")
    samples = _eval_many(f, x + h * np.arange(2 * n + 1, dtype=float))
    idx = np.add.outer(np.arange(n + 1), np.arange(n + 1))
    return float(np.linalg.det(samples[idx]))
