"""Integral geometry of lines against lattice boxes.

Isotropic line sampling through enclosing balls, line-box traversal with a
deterministic tie-break, Crofton constants, and 2D convex hulls.  The unit
box of a site z is the closed cube z + [-1/2, 1/2]^d.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import SamplingError

# Absolute tolerance of the line-box slab test.  Grazing contacts (face or
# corner touches) count as hits; the event has line-measure zero, so
# statistical estimates are unaffected either way.
BOX_TOL = 1e-9


def unit_ball_volume(k: int) -> float:
    """Volume of the k-dimensional unit ball."""
    if k < 0:
        raise ValueError(f"dimension must be >= 0, got {k}")
    return math.pi ** (k / 2.0) / math.gamma(k / 2.0 + 1.0)


def crofton_constant(d: int) -> float:
    """Normalization linking line measure to the (d-1)-st intrinsic volume.

    The measure of lines meeting a convex body K is this constant times
    V_{d-1}(K); in the plane V_1 is the half perimeter.
    """
    if d < 2:
        raise ValueError(f"dimension must be >= 2, got {d}")
    return 2.0 * unit_ball_volume(d - 1) / (d * unit_ball_volume(d))


def sample_direction(d: int, rng: np.random.Generator) -> np.ndarray:
    """Uniform unit vector on the (d-1)-sphere."""
    if d < 2:
        raise ValueError(f"dimension must be >= 2, got {d}")
    while True:
        v = rng.standard_normal(d)
        norm = math.sqrt(float(v @ v))
        if norm > 1e-12:
            return v / norm


@dataclass
class DirectedLine:
    """Oriented line: points base + t * direction, t real.

    The direction is normalized on construction; a zero direction is
    rejected.
    """

    base: np.ndarray
    direction: np.ndarray

    def __post_init__(self):
        self.base = np.asarray(self.base, dtype=np.float64)
        self.direction = np.asarray(self.direction, dtype=np.float64)
        if self.base.shape != self.direction.shape or self.base.ndim != 1:
            raise ValueError("base and direction must be equal-length vectors")
        norm = math.sqrt(float(self.direction @ self.direction))
        if norm < 1e-12:
            raise ValueError("direction must be nonzero")
        if abs(norm - 1.0) > 1e-12:
            self.direction = self.direction / norm

    @property
    def dim(self) -> int:
        return self.base.shape[0]

    def point_at(self, t: float) -> np.ndarray:
        return self.base + t * self.direction

    def reversed(self) -> "DirectedLine":
        return DirectedLine(self.base.copy(), -self.direction)


@dataclass
class Traversal:
    """Sites whose boxes a line meets, in entry order along the direction."""

    visited: list[tuple[int, ...]] = field(default_factory=list)
    entry_params: np.ndarray = field(
        default_factory=lambda: np.empty(0, dtype=np.float64))

    def __len__(self) -> int:
        return len(self.visited)


def _as_site_array(sites) -> tuple[np.ndarray, list[tuple[int, ...]]]:
    """Normalize a site collection to (array, list of tuples)."""
    if isinstance(sites, np.ndarray):
        arr = np.asarray(sites, dtype=np.int64)
        if arr.ndim != 2:
            raise ValueError("site array must be 2-dimensional")
        tuples = [tuple(int(c) for c in row) for row in arr]
        return arr, tuples
    tuples = [tuple(int(c) for c in s) for s in sites]
    if tuples and len({len(t) for t in tuples}) != 1:
        raise ValueError("sites must share one dimension")
    arr = np.array(tuples, dtype=np.int64).reshape(len(tuples), -1)
    return arr, tuples


def box_entry_params(line: DirectedLine, sites_arr: np.ndarray,
                     tol: float = BOX_TOL) -> tuple[np.ndarray, np.ndarray]:
    """Vectorized slab test of the line against every site's unit box.

    Returns (hit mask, entry parameter).  Entry parameters of missed boxes
    are undefined.  Closed boxes: contacts within tol count as hits.
    """
    pts = sites_arr.astype(np.float64)
    b = line.base
    v = line.direction
    lo = pts - 0.5 - b
    hi = pts + 0.5 - b
    t_enter = np.full(pts.shape[0], -np.inf)
    t_exit = np.full(pts.shape[0], np.inf)
    ok = np.ones(pts.shape[0], dtype=bool)
    for i in range(pts.shape[1]):
        vi = v[i]
        if abs(vi) > 1e-300:
            t1 = lo[:, i] / vi
            t2 = hi[:, i] / vi
            tmin = np.minimum(t1, t2)
            tmax = np.maximum(t1, t2)
            np.maximum(t_enter, tmin, out=t_enter)
            np.minimum(t_exit, tmax, out=t_exit)
        else:
            # line parallel to this axis: the slab must contain the base
            ok &= (lo[:, i] <= tol) & (hi[:, i] >= -tol)
    hit = ok & (t_exit - t_enter >= -tol)
    return hit, t_enter


def traverse(line: DirectedLine, query_set) -> Traversal:
    """Boxes of the query set met by the line, in entry order.

    Ordered by signed entry parameter along the line's direction; exact
    parameter ties break lexicographically on site coordinates.
    """
    arr, tuples = _as_site_array(query_set)
    if not tuples:
        return Traversal()
    hit, t_enter = box_entry_params(line, arr)
    idx = np.flatnonzero(hit)
    if idx.size == 0:
        return Traversal()
    cols = arr[idx]
    keys = tuple(cols[:, i] for i in range(arr.shape[1] - 1, -1, -1))
    order = np.lexsort(keys + (t_enter[idx],))
    chosen = idx[order]
    visited = [tuples[i] for i in chosen]
    return Traversal(visited, t_enter[chosen].copy())


def enclosing_ball(sites_arr: np.ndarray) -> tuple[np.ndarray, float]:
    """Ball certainly containing every unit box of the sites.

    Center is the bounding-box midpoint; radius is the max site distance
    plus the box half-diagonal plus a small slack.
    """
    pts = np.asarray(sites_arr, dtype=np.float64)
    if pts.ndim != 2 or pts.shape[0] == 0:
        raise ValueError("need a nonempty (n, d) site array")
    center = 0.5 * (pts.min(axis=0) + pts.max(axis=0))
    d = pts.shape[1]
    dist = np.sqrt(((pts - center) ** 2).sum(axis=1).max())
    return center, float(dist + 0.5 * math.sqrt(d) + 1e-9)


def sample_line_hitting_ball(center, radius: float,
                             rng: np.random.Generator) -> DirectedLine:
    """Isotropic random line through the ball B(center, radius).

    Direction uniform on the sphere; base point uniform on the orthogonal
    (d-1)-disk of that radius.  This realizes the motion-invariant line
    measure restricted to lines meeting the ball, with a fair independent
    orientation.
    """
    center = np.asarray(center, dtype=np.float64)
    if radius <= 0:
        raise ValueError(f"radius must be positive, got {radius}")
    d = center.shape[0]
    v = sample_direction(d, rng)
    while True:
        g = rng.standard_normal(d)
        g -= (g @ v) * v
        norm = math.sqrt(float(g @ g))
        if norm > 1e-12:
            break
    r = radius * rng.random() ** (1.0 / (d - 1))
    return DirectedLine(center + (r / norm) * g, v)


def sample_isotropic_line(target_sites, rng: np.random.Generator,
                          max_rejections: int = 10**6) -> DirectedLine:
    """Isotropic random line conditioned to meet the target's box union.

    Rejection sampling from the enclosing ball; the acceptance ratio is
    bounded below by the ratio of the target's box-union size to the ball,
    so failures signal degenerate geometry or a bug.
    """
    arr, tuples = _as_site_array(target_sites)
    if not tuples:
        raise ValueError("target site set is empty")
    center, radius = enclosing_ball(arr)
    for attempt in range(1, max_rejections + 1):
        line = sample_line_hitting_ball(center, radius, rng)
        hit, _ = box_entry_params(line, arr)
        if hit.any():
            return line
    raise SamplingError(
        f"no line met the target boxes in {max_rejections} draws",
        attempts=max_rejections)


def convex_hull_2d(points) -> np.ndarray:
    """Convex hull of planar points by the monotone chain.

    Returns hull vertices in counterclockwise order without repeating the
    first point.  Collinear inputs give the two extreme points; a single
    point gives itself.
    """
    pts = np.unique(np.asarray(points, dtype=np.float64).reshape(-1, 2),
                    axis=0)
    n = pts.shape[0]
    if n <= 2:
        return pts

    def cross(o, a, b):
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

    lower: list[np.ndarray] = []
    for p in pts:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper: list[np.ndarray] = []
    for p in pts[::-1]:
        while len(upper) >= 2 and cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    hull = lower[:-1] + upper[:-1]
    if len(hull) < 2:  # all points coincide after dedup
        return pts[:1]
    return np.array(hull)


def half_perimeter(hull: np.ndarray) -> float:
    """Half the boundary length of a hull polygon.

    For a degenerate two-point hull the boundary runs down and back, so
    this is the segment length; a single point gives 0.  In the plane this
    is the quantity the line measure of a convex body is proportional to.
    """
    hull = np.asarray(hull, dtype=np.float64).reshape(-1, 2)
    if hull.shape[0] <= 1:
        return 0.0
    diffs = hull - np.roll(hull, -1, axis=0)
    return float(np.sqrt((diffs ** 2).sum(axis=1)).sum() / 2.0)


def box_union_half_perimeter(sites) -> float:
    """Half perimeter of the convex hull of a site set's unit boxes."""
    arr, tuples = _as_site_array(sites)
    if not tuples:
        raise ValueError("empty site set")
    corners = np.concatenate([
        arr + np.array(offs, dtype=np.float64) * 0.5
        for offs in ((1, 1), (1, -1), (-1, 1), (-1, -1))
    ])
    return half_perimeter(convex_hull_2d(corners))
