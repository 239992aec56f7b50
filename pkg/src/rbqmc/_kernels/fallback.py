"""Pure-numpy corner sweep for 2-d exact star discrepancy.

Same contract as the compiled extension: coordinates arrive pre-scaled to
int64 over denominators (dx, dy), the caller having checked that every
intermediate product n * dx * dy stays below 2**62.  Returns the integer

    max over grid corners (cx, cy) of
        max(closed * dx * dy - n * cx * cy,  n * cx * cy - open * dx * dy)

where closed/open count points with coordinates <=/< the corner, and the
corner grid is (x-values + dx) x (y-values + dy).

Sweep: columns left to right; an insertion-sorted array of active y values
answers open counts (strictly left of the column) and closed counts (left
or equal) by binary search against the full y-candidate list.
"""

from __future__ import annotations

import numpy as np


def _merge_into(active: np.ndarray, batch: np.ndarray) -> np.ndarray:
    if batch.size == 0:
        return active
    pos = np.searchsorted(active, batch, side="right")
    return np.insert(active, pos, batch)


def corner_max_2d(ax: np.ndarray, ay: np.ndarray, dx: int, dy: int) -> int:
    ax = np.ascontiguousarray(ax, dtype=np.int64)
    ay = np.ascontiguousarray(ay, dtype=np.int64)
    n = ax.shape[0]
    prod = int(dx) * int(dy)
    xs = np.unique(np.append(ax, np.int64(dx)))
    ys = np.unique(np.append(ay, np.int64(dy)))
    order = np.argsort(ax, kind="stable")
    sax = ax[order]
    say = ay[order]
    active = np.empty(0, dtype=np.int64)
    p = 0
    best = 0  # the (1, 1) corner always evaluates to exactly 0
    for xc in xs:
        xc = int(xc)
        lo = p
        while p < n and sax[p] < xc:
            p += 1
        active = _merge_into(active, np.sort(say[lo:p]))
        opens = np.searchsorted(active, ys, side="left")
        vals = (n * xc) * ys - opens * prod
        best = max(best, int(vals.max()))
        lo = p
        while p < n and sax[p] == xc:
            p += 1
        active = _merge_into(active, np.sort(say[lo:p]))
        closed = np.searchsorted(active, ys, side="right")
        vals = closed * prod - (n * xc) * ys
        best = max(best, int(vals.max()))
    return int(best)
