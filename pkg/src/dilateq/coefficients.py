"""Coefficient data for the dilation equation f(x) + f(a1 x) + ... + f(aN x) = 0.

Holds the multiplicative factors, their normalization to 1 < a1 < ... < aN,
the bridge to additive shifts b_k = ln(a_k), and the regularity index: the
least exponent m making sum((a_k / aN)**m, k=0..N-1) a contraction.  Any
solution that is C^m near 0 must vanish there, so m bounds the attainable
smoothness of nonzero solutions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import (
    DuplicateEntry,
    EmptyInput,
    InvalidInput,
    Nonconvergence,
    UnitEntry,
)

__all__ = [
    "CoefficientVector",
    "ShiftVector",
    "RegularityIndex",
    "normalize",
    "to_additive",
    "regularity_index",
]


@dataclass(frozen=True)
class CoefficientVector:
    """Normalized dilation factors 1 < a1 < ... < aN (a0 = 1 is implicit)."""

    entries: tuple[float, ...]

    def __post_init__(self) -> None:
        if len(self.entries) == 0:
            raise EmptyInput("coefficient vector must have at least one entry")
        if self.entries[0] <= 1.0:
            raise InvalidInput(
                f"normalized coefficients must start above 1, got {self.entries[0]}"
            )
        for lo, hi in zip(self.entries, self.entries[1:]):
            if not hi > lo:
                raise InvalidInput("coefficients must be strictly increasing")

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)


@dataclass(frozen=True)
class ShiftVector:
    """Additive shifts 0 < b1 < ... < bN (b0 = 0 is implicit)."""

    entries: tuple[float, ...]

    def __post_init__(self) -> None:
        if len(self.entries) == 0:
            raise EmptyInput("shift vector must have at least one entry")
        if self.entries[0] <= 0.0:
            raise InvalidInput("shifts must be positive")
        for lo, hi in zip(self.entries, self.entries[1:]):
            if not hi > lo:
                raise InvalidInput("shifts must be strictly increasing")

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    @property
    def largest(self) -> float:
        return self.entries[-1]


@dataclass(frozen=True)
class RegularityIndex:
    """Least m with sum((a_k/aN)**m, k=0..N-1) < 1, plus dissection bounds.

    ``contraction`` stores that sum at the minimizing m; ``lower_bound`` and
    ``upper_bound`` are aN/(2*max_gap) - 1 and aN/min_gap over the consecutive
    gaps of (1, a1, ..., aN), reported unclamped.
    """

    m: int
    contraction: float
    lower_bound: float
    upper_bound: float


def _as_floats(raw: Iterable[float]) -> list[float]:
    try:
        values = [float(v) for v in raw]
    except (TypeError, ValueError) as exc:
        raise InvalidInput(f"coefficients must be real numbers: {exc}") from exc
    return values


def normalize(raw: Sequence[float]) -> CoefficientVector:
    """Bring raw dilation factors to the canonical form 1 < a1 < ... < aN.

    If the smallest factor a1 is below 1, the substitution y = a1*x turns the
    equation into an equivalent one with factors {a_k/a1 : k >= 2} and 1/a1,
    all above 1.  Duplicates are detected by exact comparison.
    """
    values = _as_floats(raw)
    if not values:
        raise EmptyInput("no coefficients given")
    if any(v <= 0.0 for v in values):
        raise InvalidInput("coefficients must be positive")
    if any(v == 1.0 for v in values):
        raise UnitEntry("coefficient equal to 1 is not allowed")
    if len(set(values)) != len(values):
        raise DuplicateEntry("coefficients must be pairwise distinct")

    values.sort()
    smallest = values[0]
    if smallest < 1.0:
        values = sorted([v / smallest for v in values[1:]] + [1.0 / smallest])
    return CoefficientVector(tuple(values))


def to_additive(a: CoefficientVector) -> ShiftVector:
    """Shifts b_k = ln(a_k) of the additive form g(w) + sum g(w + b_k) = 0."""
    return ShiftVector(tuple(math.log(v) for v in a.entries))


def _gaps(a: CoefficientVector) -> list[float]:
    pts = (1.0,) + a.entries
    return [hi - lo for lo, hi in zip(pts, pts[1:])]


def regularity_index(a: CoefficientVector) -> RegularityIndex:
    """Compute m(a) by direct search from m = 1 upward.

    The search cannot run past aN/min_gap (the ratio-sum is provably below 1
    there), so exceeding that bound signals a numerical inconsistency.
    """
    entries = a.entries
    a_n = entries[-1]
    ratios = [1.0 / a_n] + [v / a_n for v in entries[:-1]]
    gaps = _gaps(a)
    upper = a_n / min(gaps)
    lower = 0.5 * a_n / max(gaps) - 1.0

    limit = int(math.ceil(upper)) + 1
    m = 1
    while True:
        total = sum(r**m for r in ratios)
        if total < 1.0:
            return RegularityIndex(
                m=m, contraction=total, lower_bound=lower, upper_bound=upper
            )
        m += 1
        if m > limit:
            raise Nonconvergence(
                f"ratio sum still >= 1 at m = {m}, beyond the bound {upper:.6g}"
            )
