"""Zeros of the exponential sums 1 + 2^z + ... + N^z and induced solutions.

The integer-coefficient dilation equation f(x) + f(2x) + ... + f(Nx) = 0 has
one-sided power solutions Re(|x|^alpha) on x < 0 for every complex zero alpha
of the sum.  Zeros are located by a grid scan of the modulus followed by
Newton refinement, and audited with an argument-principle winding count over
the rectangle boundary.
"""

from __future__ import annotations

import functools
import math
import warnings
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .errors import BoundaryZero, IncompleteSearch, InvalidInput, InvalidRange

__all__ = [
    "ComplexZero",
    "SearchRectangle",
    "power_sum",
    "zeta_partial_sum",
    "power_sum_deriv",
    "default_rectangle",
    "newton_refine",
    "winding_count",
    "find_zeros",
    "scan_modulus",
    "solution_from_zero",
    "PowerSolution",
    "residual_integer_equation",
]

#: a refined zero must push the modulus below this to be accepted
ZERO_RESIDUAL_TOL = 1e-10

#: zeros closer together than this are merged
_DEDUPE_DIST = 1e-8

#: zeros this close to the rectangle edge make the winding integral unreliable
_EDGE_MARGIN = 1e-6

_NEWTON_MAX_ITER = 60


@functools.lru_cache(maxsize=None)
def _log_table(n: int) -> np.ndarray:
    return np.log(np.arange(1, n + 1, dtype=float))


def _check_n(n: int) -> None:
    if n < 2:
        raise InvalidInput("the exponential sum needs n >= 2")


def power_sum(n: int, z) -> complex | np.ndarray:
    """1 + 2^z + ... + n^z, each term computed as exp(z ln k)."""
    _check_n(n)
    zz = np.asarray(z, dtype=complex)
    # overflow for wildly divergent Newton iterates is fine: inf is discarded
    with np.errstate(over="ignore", invalid="ignore"):
        out = np.exp(np.multiply.outer(zz, _log_table(n))).sum(axis=-1)
    return complex(out) if zz.ndim == 0 else out


def zeta_partial_sum(n: int, z) -> complex | np.ndarray:
    """1 + 2^-z + ... + n^-z, the length-n partial sum of the zeta series."""
    return power_sum(n, -np.asarray(z, dtype=complex))


def power_sum_deriv(n: int, z) -> complex | np.ndarray:
    """d/dz of the power sum: sum(ln(k) * k^z, k=2..n)."""
    _check_n(n)
    zz = np.asarray(z, dtype=complex)
    logs = _log_table(n)
    with np.errstate(over="ignore", invalid="ignore"):
        out = (logs * np.exp(np.multiply.outer(zz, logs))).sum(axis=-1)
    return complex(out) if zz.ndim == 0 else out


@dataclass(frozen=True)
class SearchRectangle:
    """Axis-aligned scan region with grid resolution for seeding Newton."""

    re_min: float
    re_max: float
    im_min: float
    im_max: float
    grid_re: int = 61
    grid_im: int = 241

    def __post_init__(self) -> None:
        if not (self.re_min < self.re_max and self.im_min < self.im_max):
            raise InvalidRange("rectangle must have positive width and height")
        if self.grid_re < 2 or self.grid_im < 2:
            raise InvalidRange("grid resolution must be at least 2")

    @property
    def corners(self) -> tuple[complex, complex, complex, complex]:
        return (
            complex(self.re_min, self.im_min),
            complex(self.re_max, self.im_min),
            complex(self.re_max, self.im_max),
            complex(self.re_min, self.im_max),
        )

    def contains(self, z: complex) -> bool:
        return (
            self.re_min <= z.real <= self.re_max
            and self.im_min <= z.imag <= self.im_max
        )

    def edge_distance(self, z: complex) -> float:
        return min(
            z.real - self.re_min,
            self.re_max - z.real,
            z.imag - self.im_min,
            self.im_max - z.imag,
        )


def default_rectangle() -> SearchRectangle:
    """Upper-half-plane region holding the low zeros for moderate n."""
    return SearchRectangle(-3.0, 2.0, 0.0, 30.0)


@dataclass(frozen=True)
class ComplexZero:
    """A verified zero of the order-n power sum."""

    z: complex
    modulus_residual: float
    n: int

    def __post_init__(self) -> None:
        if self.modulus_residual > ZERO_RESIDUAL_TOL:
            raise InvalidInput(
                f"residual {self.modulus_residual:.3g} exceeds {ZERO_RESIDUAL_TOL:.0e}"
            )
        if abs(self.z.imag) <= _EDGE_MARGIN:
            raise InvalidInput("the power sum is positive on the real axis")


def newton_refine(n: int, z0: complex) -> tuple[complex, list[float]] | None:
    """Newton iteration on the power sum from z0.

    Returns the limit and the per-step modulus history, or None when the
    iteration stalls, diverges or runs out of steps.
    """
    z = complex(z0)
    history: list[float] = []
    for _ in range(_NEWTON_MAX_ITER):
        g = power_sum(n, z)
        gp = power_sum_deriv(n, z)
        if gp == 0 or not (math.isfinite(gp.real) and math.isfinite(gp.imag)):
            return None
        dz = g / gp
        z_next = z - dz
        if not (math.isfinite(z_next.real) and math.isfinite(z_next.imag)):
            return None
        res_next = abs(power_sum(n, z_next))
        if history and history[-1] <= 1e-12 and res_next >= history[-1]:
            # at rounding level another step cannot improve; keep the best iterate
            return z, history
        z = z_next
        history.append(res_next)
        if abs(dz) <= 1e-13 * (1.0 + abs(z)):
            return z, history
    return None


def scan_modulus(n: int, rect: SearchRectangle) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Modulus of the power sum on the rectangle grid (re axis, im axis, |G|)."""
    _check_n(n)
    re = np.linspace(rect.re_min, rect.re_max, rect.grid_re)
    im = np.linspace(rect.im_min, rect.im_max, rect.grid_im)
    zs = re[None, :] + 1j * im[:, None]
    return re, im, np.abs(power_sum(n, zs))


def _local_minima(a: np.ndarray) -> list[tuple[int, int]]:
    padded = np.pad(a, 1, constant_values=np.inf)
    core = padded[1:-1, 1:-1]
    mask = (
        (core <= padded[:-2, 1:-1])
        & (core <= padded[2:, 1:-1])
        & (core <= padded[1:-1, :-2])
        & (core <= padded[1:-1, 2:])
    )
    return [(int(i), int(j)) for i, j in zip(*np.nonzero(mask))]


def _adaptive_segment(
    f: Callable[[complex], complex],
    a: complex,
    b: complex,
    fa: complex,
    fb: complex,
    tol: float,
    depth: int,
) -> complex:
    mid = 0.5 * (a + b)
    fm = f(mid)
    coarse = 0.5 * (fa + fb) * (b - a)
    fine = 0.5 * (fa + fm) * (mid - a) + 0.5 * (fm + fb) * (b - mid)
    if abs(fine - coarse) <= tol:
        return fine
    if depth <= 0:
        raise BoundaryZero(
            f"winding integrand will not settle near {mid:.6g}; zero close to the edge?"
        )
    return _adaptive_segment(f, a, mid, fa, fm, 0.5 * tol, depth - 1) + _adaptive_segment(
        f, mid, b, fm, fb, 0.5 * tol, depth - 1
    )


def winding_count(n: int, rect: SearchRectangle) -> int:
    """Number of zeros inside the rectangle by the argument principle.

    Trapezoid rule on (d/dz log) of the power sum along the boundary, with
    per-segment adaptive subdivision; raises BoundaryZero when the integral
    is ill-conditioned or lands too far from an integer.
    """
    _check_n(n)

    def logderiv(z: complex) -> complex:
        g = power_sum(n, z)
        if abs(g) < 1e-9:
            raise BoundaryZero(f"modulus {abs(g):.3g} on the boundary at {z:.6g}")
        return power_sum_deriv(n, z) / g

    corners = rect.corners
    total = 0.0j
    for a, b in zip(corners, corners[1:] + corners[:1]):
        pieces = max(8, int(math.ceil(abs(b - a) * max(1.0, math.log(n)))))
        zs = [a + (b - a) * k / pieces for k in range(pieces + 1)]
        fs = [logderiv(z) for z in zs]
        for (z0, z1), (f0, f1) in zip(zip(zs, zs[1:]), zip(fs, fs[1:])):
            total += _adaptive_segment(logderiv, z0, z1, f0, f1, 1e-3, 48)
    turns = total.imag / (2.0 * math.pi)
    nearest = round(turns)
    if abs(turns - nearest) > 0.2:
        raise BoundaryZero(f"winding integral {turns:.6g} is not close to an integer")
    return int(nearest)


def find_zeros(n: int, rect: SearchRectangle | None = None) -> list[ComplexZero]:
    """Locate the zeros of the power sum inside a rectangle.

    Grid minima of the modulus seed Newton refinement; converged zeros are
    deduplicated, filtered to the rectangle and checked against the winding
    count (an ``IncompleteSearch`` warning flags any mismatch).  Zeros within
    1e-6 of the boundary raise BoundaryZero instead of silently corrupting
    the audit.
    """
    if rect is None:
        rect = default_rectangle()
    re, im, mod = scan_modulus(n, rect)

    found: list[complex] = []
    for i, j in _local_minima(mod):
        refined = newton_refine(n, complex(re[j], im[i]))
        if refined is None:
            continue
        z, _ = refined
        if abs(power_sum(n, z)) > ZERO_RESIDUAL_TOL or not rect.contains(z):
            continue
        if all(abs(z - seen) > _DEDUPE_DIST for seen in found):
            found.append(z)

    for z in found:
        if rect.edge_distance(z) < _EDGE_MARGIN:
            raise BoundaryZero(f"zero {z:.9g} within {_EDGE_MARGIN:.0e} of the edge")

    found.sort(key=lambda z: (z.imag, z.real))
    zeros = [ComplexZero(z=z, modulus_residual=abs(power_sum(n, z)), n=n) for z in found]

    turns = winding_count(n, rect)
    if turns != len(zeros):
        warnings.warn(
            IncompleteSearch(
                f"winding count {turns} != {len(zeros)} zeros found; "
                "refine the grid or shrink the rectangle"
            )
        )
    return zeros


@dataclass(frozen=True)
class PowerSolution:
    """One-sided solution Re(|x|^alpha) on x < 0, zero on x >= 0.

    Solves f(x) + f(2x) + ... + f(nx) = 0 pointwise for x != 0; continuous
    at 0 only when Re(alpha) > 0 (the modulus blows up or oscillates without
    settling otherwise), recorded in ``continuous_at_zero``.
    """

    alpha: complex
    n: int
    continuous_at_zero: bool = field(init=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "continuous_at_zero", self.alpha.real > 0.0)

    def __call__(self, x):
        arr = np.asarray(x, dtype=float)
        scalar = np.isscalar(x) or arr.ndim == 0
        arr = np.atleast_1d(arr)
        out = np.zeros_like(arr)
        neg = arr < 0.0
        if np.any(neg):
            r = np.log(-arr[neg])
            out[neg] = np.exp(self.alpha.real * r) * np.cos(self.alpha.imag * r)
        return float(out[0]) if scalar else out


def solution_from_zero(zero: ComplexZero) -> PowerSolution:
    """Build the power-type solution attached to a verified zero."""
    return PowerSolution(alpha=zero.z, n=zero.n)


def residual_integer_equation(f: Callable, n: int, grid) -> float:
    """max over the grid of |f(x) + f(2x) + ... + f(nx)|."""
    if n < 1:
        raise InvalidInput("n must be >= 1")
    x = np.asarray(grid, dtype=float)
    total = np.zeros_like(x)
    for k in range(1, n + 1):
        vals = f(k * x)
        total = total + np.asarray(vals, dtype=float)
    return float(np.max(np.abs(total))) if x.size else 0.0
