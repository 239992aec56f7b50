"""Exact star discrepancy of finite point sets, and anchored-box counting.

The sup over anchored boxes [0, y) is attained on the grid whose i-th
candidate values are the point coordinates in dimension i plus 1: the
positive part just above a corner (closed counts), the negative part at the
corner itself (open counts).  Both sides are evaluated at every corner.

All arithmetic is exact.  Coordinates are scaled to integers over a common
per-dimension denominator, so the corner maximum is an integer comparison;
the result divides back out as a Fraction.  For two dimensions a sweep
kernel (compiled when available, numpy otherwise) does the corner pass in
O(N^2); other shapes go through a rank-histogram grid evaluation.
"""

from __future__ import annotations

import math
import os
from bisect import bisect_left, bisect_right
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Union

import numpy as np

from . import _kernels
from .sequence import PointSet

DEFAULT_GUARDRAIL = 10**8
_INT64_LIMIT = 2**62

PointsLike = Union[PointSet, Sequence[Sequence[Fraction]]]


class GuardrailExceeded(RuntimeError):
    """Corner enumeration would exceed the configured work limit."""


def guardrail_limit(explicit: Optional[int] = None) -> int:
    """Resolve the enumeration limit: argument, RB_QMC_GUARDRAIL, default."""
    if explicit is not None:
        return explicit
    env = os.environ.get("RB_QMC_GUARDRAIL")
    if env:
        return int(env)
    return DEFAULT_GUARDRAIL


@dataclass(frozen=True)
class BoxSpec:
    """An axis-aligned half-open box prod [l_i, r_i) inside the unit cube."""

    lowers: tuple[Fraction, ...]
    uppers: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        lowers = tuple(Fraction(x) for x in self.lowers)
        uppers = tuple(Fraction(x) for x in self.uppers)
        object.__setattr__(self, "lowers", lowers)
        object.__setattr__(self, "uppers", uppers)
        if len(lowers) != len(uppers):
            raise ValueError("lower and upper corners disagree in dimension")
        for lo, hi in zip(lowers, uppers):
            if not (0 <= lo < hi <= 1):
                raise ValueError(f"need 0 <= {lo} < {hi} <= 1 per side")

    @classmethod
    def anchored(cls, corner: Sequence[Fraction]) -> "BoxSpec":
        corner = tuple(Fraction(c) for c in corner)
        return cls(lowers=(Fraction(0),) * len(corner), uppers=corner)

    @property
    def volume(self) -> Fraction:
        vol = Fraction(1)
        for lo, hi in zip(self.lowers, self.uppers):
            vol *= hi - lo
        return vol

    def contains(self, pt: Sequence[Fraction]) -> bool:
        return all(lo <= x < hi for lo, hi, x in zip(self.lowers, self.uppers, pt))


@dataclass(frozen=True)
class LocalDiscrepancySum:
    """sum over a window of (box indicator - box volume), exactly."""

    M: int
    value: Fraction
    j: Optional[tuple[int, ...]] = None


def _as_points(ps: PointsLike) -> list[tuple[Fraction, ...]]:
    raw = ps.points if isinstance(ps, PointSet) else ps
    pts = [tuple(Fraction(c) for c in p) for p in raw]
    if not pts:
        raise ValueError("discrepancy of an empty point set is undefined")
    dims = {len(p) for p in pts}
    if len(dims) != 1:
        raise ValueError("points of mixed dimension")
    for p in pts:
        for c in p:
            if not 0 <= c <= 1:
                raise ValueError(f"coordinate {c} outside [0, 1]")
    return pts


def star_discrepancy_1d(points: Sequence[Fraction]) -> Fraction:
    """Sorted-order formula: max_i max(i/N - x_(i), x_(i) - (i-1)/N)."""
    xs = sorted(Fraction(x) for x in points)
    if not xs:
        raise ValueError("discrepancy of an empty point set is undefined")
    n = len(xs)
    best = Fraction(0)
    for i, x in enumerate(xs, start=1):
        best = max(best, Fraction(i, n) - x, x - Fraction(i - 1, n))
    return best


def _scaled_columns(pts: list[tuple[Fraction, ...]]) -> tuple[list[list[int]], list[int]]:
    """Per dimension: integer coordinates over the lcm denominator."""
    dim = len(pts[0])
    cols: list[list[int]] = []
    denoms: list[int] = []
    for i in range(dim):
        d = 1
        for p in pts:
            d = d * p[i].denominator // math.gcd(d, p[i].denominator)
        cols.append([int(p[i] * d) for p in pts])
        denoms.append(d)
    return cols, denoms


def _corner_max_1d(col: list[int], d: int) -> int:
    n = len(col)
    xs = sorted(col)
    cands = sorted(set(col) | {d})
    best = 0
    for c in cands:
        closed = bisect_right(xs, c)
        opened = bisect_left(xs, c)
        best = max(best, closed * d - n * c, n * c - opened * d)
    return best


def _shift_one(arr: np.ndarray) -> np.ndarray:
    """Zero-padded shift by one along every axis (closed counts -> open)."""
    out = np.zeros_like(arr)
    src = tuple(slice(0, -1) for _ in range(arr.ndim))
    dst = tuple(slice(1, None) for _ in range(arr.ndim))
    out[dst] = arr[src]
    return out


def _corner_max_grid(cols: list[list[int]], denoms: list[int], exact_dtype: bool) -> int:
    """Rank-histogram evaluation of the corner grid, any dimension >= 2.

    Builds the closed-count tensor as an s-fold cumulative histogram over
    coordinate ranks, slab by slab along the first axis so memory stays at
    O(grid / n_1).  ``exact_dtype`` switches to Python-int (object) arrays
    when the scaled values do not fit int64.
    """
    n = len(cols[0])
    dtype = object if exact_dtype else np.int64
    prod_d = math.prod(denoms)
    cands = [np.array(sorted(set(col) | {d}), dtype=dtype)
             for col, d in zip(cols, denoms)]
    ranks = []
    for col, cand in zip(cols, cands):
        cand_int = np.array([int(c) for c in cand], dtype=np.int64) if exact_dtype else cand
        ranks.append(np.searchsorted(cand_int, np.array(col, dtype=np.int64)))
    rest_shape = tuple(len(c) for c in cands[1:])
    # bucket point ranks by first-axis cell; one dense slab lives at a time
    by_first: dict[int, list[tuple[int, ...]]] = {}
    for idx in range(n):
        k0 = int(ranks[0][idx])
        rest = tuple(int(ranks[a][idx]) for a in range(1, len(cands)))
        by_first.setdefault(k0, []).append(rest)
    # outer product of the trailing candidate values
    rest_vol = np.array(1, dtype=dtype)
    for cand in cands[1:]:
        rest_vol = np.multiply.outer(rest_vol, cand)
    rest_vol = rest_vol.reshape(rest_shape)
    running = np.zeros(rest_shape, dtype=dtype)
    prev = np.zeros(rest_shape, dtype=dtype)
    best = 0
    for k0, cand0 in enumerate(cands[0]):
        slab = np.zeros(rest_shape, dtype=dtype)
        for rest in by_first.get(k0, ()):
            slab[rest] += 1
        for axis in range(slab.ndim):
            slab = np.cumsum(slab, axis=axis, dtype=dtype)
        running = running + slab
        vol = int(cand0) * (n * rest_vol)
        closed_term = running * prod_d - vol
        open_term = vol - _shift_one(prev) * prod_d
        best = max(best, int(closed_term.max()), int(open_term.max()))
        prev = running
    return best


def star_discrepancy(ps: PointsLike, guardrail: Optional[int] = None) -> Fraction:
    """Exact star discrepancy over the candidate-corner grid.

    Cost grows like N^s corners; ``guardrail`` (argument, or the
    RB_QMC_GUARDRAIL environment variable) bounds N^s * s before any work
    happens.  For oversized inputs use the 1-d formula where applicable, or
    a float sampling bound outside this library.
    """
    pts = _as_points(ps)
    n = len(pts)
    s = len(pts[0])
    limit = guardrail_limit(guardrail)
    if n**s * s > limit:
        raise GuardrailExceeded(
            f"corner enumeration needs ~{n**s * s} cell tests, over the "
            f"limit {limit}; use star_discrepancy_1d or a sampling bound"
        )
    cols, denoms = _scaled_columns(pts)
    scale = n * math.prod(denoms)
    if s == 1:
        return Fraction(_corner_max_1d(cols[0], denoms[0]), scale)
    fits64 = scale < _INT64_LIMIT
    if s == 2 and fits64:
        best = _kernels.corner_max_2d(
            np.array(cols[0], dtype=np.int64),
            np.array(cols[1], dtype=np.int64),
            denoms[0],
            denoms[1],
        )
    else:
        best = _corner_max_grid(cols, denoms, exact_dtype=not fits64)
    return Fraction(best, scale)


def prefix_discrepancies(
    ps: PointsLike, guardrail: Optional[int] = None
) -> list[Fraction]:
    """Exact star discrepancy of every prefix length 1..N.

    Equivalent to calling :func:`star_discrepancy` on each prefix, but the
    coordinates are scaled to integers once over the full set, so growth
    scans run at kernel speed instead of repeating the rational-arithmetic
    setup per prefix.  The guardrail is checked once for the longest
    prefix, matching the cost of the dominant call.
    """
    pts = _as_points(ps)
    n = len(pts)
    s = len(pts[0])
    limit = guardrail_limit(guardrail)
    if n**s * s > limit:
        raise GuardrailExceeded(
            f"corner enumeration needs ~{n**s * s} cell tests, over the "
            f"limit {limit}; use star_discrepancy_1d or a sampling bound"
        )
    cols, denoms = _scaled_columns(pts)
    prod_d = math.prod(denoms)
    fits64 = n * prod_d < _INT64_LIMIT
    out: list[Fraction] = []
    if s == 1:
        for m in range(1, n + 1):
            out.append(Fraction(_corner_max_1d(cols[0][:m], denoms[0]), m * prod_d))
    elif s == 2 and fits64:
        ax = np.array(cols[0], dtype=np.int64)
        ay = np.array(cols[1], dtype=np.int64)
        for m in range(1, n + 1):
            best = _kernels.corner_max_2d(ax[:m], ay[:m], denoms[0], denoms[1])
            out.append(Fraction(best, m * prod_d))
    else:
        for m in range(1, n + 1):
            best = _corner_max_grid(
                [col[:m] for col in cols], denoms, exact_dtype=not fits64
            )
            out.append(Fraction(best, m * prod_d))
    return out


def box_count(
    ps: PointsLike,
    box: BoxSpec,
    window: tuple[int, int],
    j: Optional[tuple[int, ...]] = None,
) -> tuple[int, LocalDiscrepancySum]:
    """Count points inside ``box`` over a window of sequence indices.

    ``window`` = [a, b) in absolute index space (a point set starting at
    n0 covers indices n0 .. n0+N-1).  Returns the raw count and the signed
    sum of (indicator - volume), which is count - M * volume exactly.
    """
    pts = _as_points(ps)
    start = ps.start_index if isinstance(ps, PointSet) else 0
    a, b = window
    if not (start <= a <= b <= start + len(pts)):
        raise ValueError(
            f"window [{a}, {b}) outside held indices [{start}, {start + len(pts)})"
        )
    count = sum(1 for k in range(a - start, b - start) if box.contains(pts[k]))
    m = b - a
    value = count - m * box.volume
    return count, LocalDiscrepancySum(M=m, value=value, j=j)


def perturbation_bound(deltas: Sequence[Fraction]) -> Fraction:
    """Bound on the discrepancy change when coordinate i moves by <= delta_i.

    Anchored-box counts change only for points crossing a face, and volumes
    change by at most sum_i delta_i, so |D*(P) - D*(P')| <= sum_i delta_i.
    Used to compare truncation levels: raising t moves each coordinate by
    less than u_i^-t.
    """
    return sum((Fraction(d) for d in deltas), Fraction(0))
