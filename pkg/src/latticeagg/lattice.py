"""Sites and growing clusters on the d-dimensional hypercubic lattice.

A cluster is a finite connected set of sites grown one site at a time from
the origin.  The outer boundary (sites adjacent to the cluster but not in
it) is kept in an indexed store so single steps are O(1) and uniform
boundary sampling needs no set iteration.
"""

from __future__ import annotations

import math
from collections import deque
from typing import Iterable, Iterator

import numpy as np

Site = tuple[int, ...]


def site_norm(site: Site) -> float:
    """Euclidean norm of a lattice site."""
    return math.hypot(*site)


def neighbors(site: Site) -> list[Site]:
    """The 2d nearest neighbors of a site, in a fixed axis-major order."""
    out = []
    for axis in range(len(site)):
        for step in (1, -1):
            nb = list(site)
            nb[axis] += step
            out.append(tuple(nb))
    return out


def outer_boundary(sites: Iterable[Site]) -> set[Site]:
    """Sites adjacent to the set but not in it.

    Raises ValueError on an empty input: the boundary of nothing is not
    meaningful for the growth dynamics.
    """
    members = set(sites)
    if not members:
        raise ValueError("outer boundary of an empty site set")
    bdry = set()
    for site in members:
        for nb in neighbors(site):
            if nb not in members:
                bdry.add(nb)
    return bdry


def is_connected(sites: Iterable[Site]) -> bool:
    """Nearest-neighbor connectivity check (breadth-first flood)."""
    todo = set(sites)
    if not todo:
        return True
    start = next(iter(todo))
    todo.discard(start)
    queue = deque([start])
    while queue:
        site = queue.popleft()
        for nb in neighbors(site):
            if nb in todo:
                todo.discard(nb)
                queue.append(nb)
    return not todo


class Cluster:
    """Connected aggregate grown from the origin by single-site attachments.

    Membership, attachment order, the outer boundary and the radius are all
    maintained incrementally.  Boundary sites live in a dense integer array
    plus a site-to-row map, so removal is a swap with the last row and
    uniform sampling is a single index draw.
    """

    def __init__(self, dim: int):
        if dim < 2:
            raise ValueError(f"dimension must be >= 2, got {dim}")
        self.dim = dim
        origin: Site = (0,) * dim
        self._members: dict[Site, int] = {origin: 1}
        self._order: list[Site] = [origin]
        self._max_norm_sq = 0
        # indexed boundary store
        self._brow: dict[Site, int] = {}
        self._bsites: list[Site] = []
        self._barr = np.zeros((64, dim), dtype=np.int64)
        for nb in neighbors(origin):
            self._boundary_add(nb)

    # -- boundary store ----------------------------------------------------

    def _boundary_add(self, site: Site) -> None:
        row = len(self._bsites)
        if row == self._barr.shape[0]:
            grown = np.zeros((2 * row, self.dim), dtype=np.int64)
            grown[:row] = self._barr
            self._barr = grown
        self._brow[site] = row
        self._bsites.append(site)
        self._barr[row] = site

    def _boundary_remove(self, site: Site) -> None:
        row = self._brow.pop(site)
        last = len(self._bsites) - 1
        if row != last:
            moved = self._bsites[last]
            self._bsites[row] = moved
            self._barr[row] = self._barr[last]
            self._brow[moved] = row
        self._bsites.pop()

    # -- growth ------------------------------------------------------------

    def attach(self, site: Site) -> None:
        """Attach a boundary site to the cluster.

        Raises ValueError if the site is not currently on the outer
        boundary; attachments elsewhere would disconnect the growth law
        from the dynamics it models.
        """
        if site not in self._brow:
            raise ValueError(f"site {site} is not on the outer boundary")
        self._boundary_remove(site)
        self._members[site] = len(self._order) + 1
        self._order.append(site)
        nsq = sum(c * c for c in site)
        if nsq > self._max_norm_sq:
            self._max_norm_sq = nsq
        for nb in neighbors(site):
            if nb not in self._members and nb not in self._brow:
                self._boundary_add(nb)

    # -- queries -----------------------------------------------------------

    def __len__(self) -> int:
        return len(self._members)

    def __contains__(self, site: Site) -> bool:
        return site in self._members

    def __iter__(self) -> Iterator[Site]:
        return iter(self._order)

    @property
    def size(self) -> int:
        return len(self._members)

    @property
    def boundary_size(self) -> int:
        return len(self._bsites)

    @property
    def radius(self) -> float:
        """Max Euclidean norm over members (0 for the singleton)."""
        return math.sqrt(self._max_norm_sq)

    @property
    def attach_order(self) -> list[Site]:
        return list(self._order)

    def attach_index(self, site: Site) -> int:
        """1-based attachment index of a member site."""
        return self._members[site]

    def boundary_site(self, row: int) -> Site:
        return self._bsites[row]

    def boundary_set(self) -> set[Site]:
        return set(self._bsites)

    def member_set(self) -> set[Site]:
        return set(self._members)

    def boundary_points(self) -> np.ndarray:
        """Boundary sites as an (m, d) int64 array (copy)."""
        return self._barr[: len(self._bsites)].copy()

    def member_points(self) -> np.ndarray:
        """Members as an (n, d) int64 array in attachment order."""
        return np.array(self._order, dtype=np.int64)

    def boundary_radius(self) -> float:
        """Max Euclidean norm over the outer boundary."""
        pts = self._barr[: len(self._bsites)]
        return float(np.sqrt((pts.astype(np.float64) ** 2).sum(axis=1).max()))

    def diameter(self) -> float:
        """Max pairwise Euclidean distance between members."""
        pts = self.member_points().astype(np.float64)
        return points_diameter(pts)

    def copy(self) -> "Cluster":
        other = Cluster.__new__(Cluster)
        other.dim = self.dim
        other._members = dict(self._members)
        other._order = list(self._order)
        other._max_norm_sq = self._max_norm_sq
        other._brow = dict(self._brow)
        other._bsites = list(self._bsites)
        other._barr = self._barr.copy()
        return other

    @classmethod
    def from_attach_order(cls, dim: int, order: Iterable[Site]) -> "Cluster":
        """Replay an attachment sequence; the leading origin is optional."""
        cluster = cls(dim)
        origin = (0,) * dim
        for site in order:
            site = tuple(int(c) for c in site)
            if site == origin and cluster.size == 1:
                continue
            cluster.attach(site)
        return cluster


def points_diameter(pts: np.ndarray) -> float:
    """Diameter of a finite point set.

    Reduces to convex-hull vertices first; falls back to brute force when
    the hull is degenerate or the set is tiny.
    """
    n = pts.shape[0]
    if n <= 1:
        return 0.0
    if n > 16:
        pts = _hull_vertices(pts)
        n = pts.shape[0]
    best = 0.0
    for i in range(n - 1):
        d2 = ((pts[i + 1:] - pts[i]) ** 2).sum(axis=1).max()
        if d2 > best:
            best = d2
    return float(math.sqrt(best))


def _hull_vertices(pts: np.ndarray) -> np.ndarray:
    if pts.shape[1] == 2:
        from .geometry import convex_hull_2d

        return convex_hull_2d(pts)
    try:
        from scipy.spatial import ConvexHull, QhullError

        return pts[ConvexHull(pts).vertices]
    except (QhullError, ValueError):
        return pts
