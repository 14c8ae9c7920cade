"""Occupancy grids and launch annuli shared by the walker-based samplers."""

from __future__ import annotations

import math

import numpy as np

from .errors import SamplingError
from .lattice import Site, neighbors

# grid cell tags for the walker kernels
EMPTY, MEMBER, FRONTIER = 0, 1, 2

RELAUNCH_CAP = 10**7


def launch_annulus_sites(dim: int, r: float) -> np.ndarray:
    """Lattice sites with Euclidean norm in [r, r+1), lexicographically sorted.

    Nonempty for every r >= 0 (the shell is one unit thick, so it contains
    (ceil(r), 0, ..., 0)).  Enumeration cost grows like r^(d-1).
    """
    if r < 0:
        raise ValueError("annulus radius must be nonnegative")
    span = int(math.floor(r + 1.0))
    axis = np.arange(-span, span + 1, dtype=np.int64)
    if dim == 2:
        cells = axis.reshape(-1, 1)
    else:
        grids = np.meshgrid(*([axis] * (dim - 1)), indexing="ij")
        cells = np.stack([g.ravel() for g in grids], axis=1)
    ssq = (cells.astype(np.float64) ** 2).sum(axis=1)
    lo_sq = r * r - ssq
    hi_sq = (r + 1.0) ** 2 - ssq
    keep = hi_sq > 0
    cells, lo_sq, hi_sq = cells[keep], lo_sq[keep], hi_sq[keep]

    # last-coordinate range per cell: smallest k >= 0 with k*k >= lo_sq and
    # largest k with k*k < hi_sq, with one-step fixups for sqrt rounding
    kmin = np.ceil(np.sqrt(np.maximum(lo_sq, 0.0))).astype(np.int64)
    kmin = np.where((kmin >= 1) & (((kmin - 1).astype(np.float64)) ** 2 >= lo_sq),
                    kmin - 1, kmin)
    kmin = np.where(kmin.astype(np.float64) ** 2 < lo_sq, kmin + 1, kmin)
    kmax = np.ceil(np.sqrt(hi_sq)).astype(np.int64) - 1
    kmax = np.where(((kmax + 1).astype(np.float64)) ** 2 < hi_sq, kmax + 1, kmax)
    kmax = np.where(kmax.astype(np.float64) ** 2 >= hi_sq, kmax - 1, kmax)

    pos_start = np.maximum(kmin, 1)
    npos = np.maximum(kmax - pos_start + 1, 0)
    has_zero = (kmin <= 0) & (kmax >= 0)

    blocks = []
    total = int(npos.sum())
    if total:
        cell_idx = np.repeat(np.arange(cells.shape[0]), npos)
        starts = np.cumsum(npos) - npos
        kvals = (np.arange(total, dtype=np.int64) - starts[cell_idx]
                 + pos_start[cell_idx])
        plus = np.concatenate([cells[cell_idx], kvals[:, None]], axis=1)
        minus = plus.copy()
        minus[:, -1] = -minus[:, -1]
        blocks += [plus, minus]
    if has_zero.any():
        zc = cells[has_zero]
        blocks.append(np.concatenate(
            [zc, np.zeros((zc.shape[0], 1), dtype=np.int64)], axis=1))
    if not blocks:
        raise SamplingError(f"empty launch annulus at radius {r}", attempts=0)
    out = np.concatenate(blocks)
    order = np.lexsort(tuple(out[:, i] for i in range(dim - 1, -1, -1)))
    return np.ascontiguousarray(out[order])


class WalkGrid:
    """Flat occupancy grid over a centered box, for the walker kernels.

    Cells hold 1 on member sites and 2 on empty sites adjacent to a member;
    walkers absorb on value 2 (growth steps) or 1 (hitting measures).
    Positions outside the box read as empty, so the box only needs to cover
    the absorbing set.
    """

    def __init__(self, dim: int, half_extent: int):
        self.dim = dim
        self.half = max(int(half_extent), 4)
        side = 2 * self.half + 1
        self.shape = np.full(dim, side, dtype=np.int64)
        self.strides = np.empty(dim, dtype=np.int64)
        acc = 1
        for i in range(dim - 1, -1, -1):
            self.strides[i] = acc
            acc *= side
        self.cells = np.zeros(acc, dtype=np.uint8)
        self.off = np.full(dim, self.half, dtype=np.int64)

    def flat_index(self, site: Site) -> int:
        idx = 0
        for i, c in enumerate(site):
            idx += (c + self.half) * int(self.strides[i])
        return idx

    def fits(self, site: Site) -> bool:
        return max(abs(c) for c in site) < self.half - 1

    def mark_member(self, site: Site) -> None:
        self.cells[self.flat_index(site)] = MEMBER
        for nb in neighbors(site):
            i = self.flat_index(nb)
            if self.cells[i] == EMPTY:
                self.cells[i] = FRONTIER

    @classmethod
    def covering(cls, dim: int, sites, pad: int = 8) -> "WalkGrid":
        extent = max(max(abs(c) for c in s) for s in sites)
        grid = cls(dim, extent + pad)
        for s in sites:
            grid.mark_member(s)
        return grid
