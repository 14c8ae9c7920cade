"""Shared test fixtures: independent oracles and site-set builders."""

from __future__ import annotations

import math

import numpy as np

from latticeagg import lattice


def row_sites(n, dim=2, axis=0):
    """n collinear sites along one axis, starting at the origin."""
    sites = []
    for k in range(n):
        s = [0] * dim
        s[axis] = k
        sites.append(tuple(s))
    return sites


def segment_sites(r, dim=2):
    """The segment {0..r} e_1: r+1 sites, radius r, box union (r+1) x 1."""
    return row_sites(r + 1, dim=dim)


def random_site_set(rng, dim, n_max=12, span=3):
    """Small random set of distinct sites inside [-span, span]^dim."""
    n = int(rng.integers(1, n_max + 1))
    pts = rng.integers(-span, span + 1, size=(4 * n, dim))
    uniq = np.unique(pts, axis=0)
    take = min(n, len(uniq))
    idx = rng.choice(len(uniq), size=take, replace=False)
    return [tuple(int(c) for c in uniq[i]) for i in sorted(idx)]


def random_connected_sites(rng, dim, n):
    """Grow a connected set from the origin by uniform boundary attachment."""
    cluster = lattice.Cluster(dim)
    while cluster.size < n:
        bnd = sorted(cluster.boundary_set())
        cluster.attach(bnd[int(rng.integers(len(bnd)))])
    return sorted(cluster.member_set())


def dense_traversal_oracle(line, sites, step=1e-4):
    """Brute-force traversal: sample the chord through the bounding ball.

    Tests every site's box against densely sampled points of the line,
    independent of the slab-test implementation. Returns the visited sites
    ordered by first sampled hit.
    """
    arr = np.asarray(sites, dtype=float)
    lo, hi = arr.min(axis=0), arr.max(axis=0)
    center = (lo + hi) / 2.0
    radius = (np.linalg.norm(arr - center, axis=1).max()
              + 0.5 * math.sqrt(arr.shape[1]) + 0.1)

    base = np.asarray(line.base, dtype=float)
    v = np.asarray(line.direction, dtype=float)
    rel = base - center
    b_half = float(rel @ v)
    c_term = float(rel @ rel) - radius * radius
    disc = b_half * b_half - c_term
    if disc < 0:
        return []
    root = math.sqrt(disc)
    t0, t1 = -b_half - root, -b_half + root

    ts = np.arange(t0, t1 + step, step)
    pts = base[None, :] + ts[:, None] * v[None, :]
    first = []
    for z in sites:
        inside = np.all(np.abs(pts - np.asarray(z, dtype=float)) <= 0.5,
                        axis=1)
        if inside.any():
            first.append((ts[int(np.argmax(inside))], tuple(z)))
    first.sort()
    return [z for _, z in first]


def chi2_pvalue(counts, probs):
    from scipy import stats

    counts = np.asarray(counts, dtype=float)
    expected = np.asarray(probs, dtype=float) * counts.sum()
    return float(stats.chisquare(counts, expected).pvalue)
