"""Step-distribution estimators over finite site sets.

The uniform boundary measure is exact; the line-contact measure comes from
Monte Carlo over isotropic lines (any dimension) or a deterministic
direction/offset quadrature (plane only); the walker-hitting measure comes
from Monte Carlo walkers.  All estimators return a MeasureEstimate keyed by
site.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _kernels, streams
from .errors import SamplingError
from .geometry import BOX_TOL, DirectedLine, enclosing_ball, traverse
from .lattice import Site
from .walkgrid import MEMBER, RELAUNCH_CAP, WalkGrid, launch_annulus_sites


@dataclass
class MeasureEstimate:
    """A probability distribution over sites, with per-site uncertainty.

    hit_prob (line estimators only) is the per-site probability that a
    conditioned line meets the site's box at all; it upper-bounds prob.
    samples is 0 for exact results; for the quadrature it counts accepted
    grid nodes.
    """

    prob: dict[Site, float]
    stderr: dict[Site, float]
    samples: int
    method: str  # "exact" | "mc" | "quadrature"
    hit_prob: dict[Site, float] | None = None

    @property
    def support(self) -> set[Site]:
        return set(self.prob)

    def total_mass(self) -> float:
        return float(sum(self.prob.values()))


def _sorted_sites(sites) -> list[Site]:
    tuples = sorted(tuple(int(c) for c in s) for s in sites)
    if not tuples:
        raise ValueError("empty site set")
    if len({len(t) for t in tuples}) != 1:
        raise ValueError("sites must share one dimension")
    return tuples


def eden_measure(boundary) -> MeasureEstimate:
    """Exact uniform distribution on a site set."""
    sites = _sorted_sites(boundary)
    p = 1.0 / len(sites)
    return MeasureEstimate(
        prob={s: p for s in sites},
        stderr={s: 0.0 for s in sites},
        samples=0, method="exact")


def line_outcome_weights(line: DirectedLine, sites) -> dict[Site, float]:
    """Contact weights of one line: 1 on a sole hit, else half at each end.

    Requires the line to meet at least one box of the set.
    """
    trav = traverse(line, sites)
    if len(trav) == 0:
        raise ValueError("line misses every box of the set")
    if len(trav) == 1:
        return {trav.visited[0]: 1.0}
    return {trav.visited[0]: 0.5, trav.visited[-1]: 0.5}


def ballistic_measure_mc(sites, n_samples: int, rng: np.random.Generator,
                         max_rejections: int = 10**6) -> MeasureEstimate:
    """Monte Carlo line-contact distribution over the site set.

    Averages the per-line contact weights over isotropic lines conditioned
    to meet the set's box union; hit_prob additionally records how often
    each box was met.  Standard errors are binomial-style.
    """
    if n_samples < 1:
        raise ValueError("n_samples must be >= 1")
    tuples = _sorted_sites(sites)
    pts = np.array(tuples, dtype=np.float64)
    center, radius = enclosing_ball(pts)
    w, hits, status = _kernels.ballistic_accumulate(
        streams.kernel_seed(rng), pts, center, radius, BOX_TOL,
        n_samples, max_rejections)
    if status != 0:
        raise SamplingError(
            f"no line met the target boxes in {max_rejections} draws",
            attempts=max_rejections)
    p = w / n_samples
    se = np.sqrt(np.clip(p * (1.0 - p), 0.0, None) / n_samples)
    hp = hits / n_samples
    return MeasureEstimate(
        prob=dict(zip(tuples, p.tolist())),
        stderr=dict(zip(tuples, se.tolist())),
        samples=n_samples, method="mc",
        hit_prob=dict(zip(tuples, hp.tolist())))


def ballistic_measure_quadrature_2d(sites, n_theta: int = 2048,
                                    n_offset: int = 2048) -> MeasureEstimate:
    """Deterministic plane quadrature of the line-contact distribution.

    Midpoint nodes over direction angle in [0, pi) and signed offset across
    the enclosing ball's diameter; every node line meeting the box union
    contributes its contact weights, and the normalizer is the mass of
    covered nodes from the same grid (so disconnected unions are handled
    correctly).  A box is hit by a node line iff the offset falls within
    the box's projection interval, and entry order along a line equals the
    order of center projections onto the direction, so first/last per node
    follow from painting projection ranges in sorted order.
    """
    tuples = _sorted_sites(sites)
    dim = len(tuples[0])
    if dim != 2:
        raise ValueError(f"quadrature is plane-only, got dimension {dim}")
    if n_theta < 16 or n_offset < 16:
        raise ValueError("need n_theta >= 16 and n_offset >= 16")
    pts = np.array(tuples, dtype=np.float64)
    m = pts.shape[0]
    center, radius = enclosing_ball(pts)
    rel = pts - center
    delta = 2.0 * radius / n_offset
    lex_rank = np.arange(m)

    w = np.zeros(m)
    hit_nodes = np.zeros(m, dtype=np.int64)
    covered = 0
    first_buf = np.empty(n_offset, dtype=np.int64)
    last_buf = np.empty(n_offset, dtype=np.int64)
    for j in range(n_theta):
        theta = (j + 0.5) * math.pi / n_theta
        c, s = math.cos(theta), math.sin(theta)
        t_proj = rel[:, 0] * c + rel[:, 1] * s
        p_proj = -rel[:, 0] * s + rel[:, 1] * c
        half_w = 0.5 * (abs(c) + abs(s)) + BOX_TOL
        k_lo = np.ceil((p_proj - half_w + radius) / delta - 0.5)
        k_hi = np.floor((p_proj + half_w + radius) / delta - 0.5)
        k_lo = np.maximum(k_lo, 0).astype(np.int64)
        k_hi = np.minimum(k_hi, n_offset - 1).astype(np.int64)
        hit_nodes += np.maximum(k_hi - k_lo + 1, 0)
        order = np.lexsort((lex_rank, t_proj))
        covered += _kernels.paint_first_last(order, k_lo, k_hi,
                                             first_buf, last_buf, w)
    if covered == 0:
        raise SamplingError("no grid node line met the target boxes",
                            attempts=n_theta * n_offset)
    p = w / covered
    hp = hit_nodes / covered
    return MeasureEstimate(
        prob=dict(zip(tuples, p.tolist())),
        stderr={t: 0.0 for t in tuples},
        samples=covered, method="quadrature",
        hit_prob=dict(zip(tuples, hp.tolist())))


def harmonic_measure_mc(sites, n_samples: int, rng: np.random.Generator,
                        launch_margin: float = 5.0,
                        kill_factor: float = 50.0,
                        accelerate: bool = False) -> MeasureEstimate:
    """Walker-hitting distribution on a site set.

    Walkers start uniformly on the launch shell (max site norm plus the
    margin), step symmetrically, absorb on the set, and are discarded past
    kill_factor times the launch radius; frequencies are conditioned on
    absorption.  Finite launch/kill radii bias the infinite-start limit;
    widen them to check sensitivity.
    """
    if n_samples < 1:
        raise ValueError("n_samples must be >= 1")
    if launch_margin < 2 or kill_factor < 2:
        raise ValueError("need launch_margin >= 2 and kill_factor >= 2")
    tuples = _sorted_sites(sites)
    dim = len(tuples[0])
    grid = WalkGrid.covering(dim, tuples)
    r_launch = max(math.hypot(*t) for t in tuples) + launch_margin
    annulus = launch_annulus_sites(dim, r_launch)
    kill = kill_factor * r_launch
    counts = np.zeros(grid.cells.shape[0], dtype=np.int64)
    status = _kernels.walker_accumulate(
        streams.kernel_seed(rng), grid.cells, grid.shape, grid.strides,
        grid.off, annulus, kill * kill, MEMBER, accelerate, r_launch,
        RELAUNCH_CAP, n_samples, counts)
    if status != 0:
        raise SamplingError(
            f"walker relaunch cap {RELAUNCH_CAP} exceeded",
            attempts=RELAUNCH_CAP)
    hit = np.array([counts[grid.flat_index(t)] for t in tuples],
                   dtype=np.float64)
    p = hit / n_samples
    se = np.sqrt(np.clip(p * (1.0 - p), 0.0, None) / n_samples)
    return MeasureEstimate(
        prob=dict(zip(tuples, p.tolist())),
        stderr=dict(zip(tuples, se.tolist())),
        samples=n_samples, method="mc")


def max_mass(estimate: MeasureEstimate) -> tuple[Site, float, float]:
    """The heaviest site with its mass and stderr; ties go lexicographically."""
    if not estimate.prob:
        raise ValueError("empty estimate")
    best = max(estimate.prob.values())
    site = min(s for s, p in estimate.prob.items() if p == best)
    return site, best, estimate.stderr.get(site, 0.0)
