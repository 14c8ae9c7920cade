"""Compiled hot loops: line scans against box sets and lattice walkers.

These kernels use numba's internal RNG (seeded per call from the caller's
stream) because it is several times faster inside njit code than a passed-in
Generator.  All call sites draw the kernel seed from a purpose-tagged
stream, so results stay reproducible.

Conventions shared with the numpy reference paths in geometry.py:
boxes are closed unit cubes around integer sites; the slab test counts
contacts within an absolute tolerance as hits; entry-parameter ties break
lexicographically on site coordinates.
"""

import numpy as np
from numba import njit


@njit(cache=True)
def _lex_less(pts, a, b):
    for i in range(pts.shape[1]):
        if pts[a, i] < pts[b, i]:
            return True
        if pts[a, i] > pts[b, i]:
            return False
    return False


@njit(cache=True)
def _scan_line(pts, base, v, tol, hits, count_hits):
    """First and last box met by the line, or (-1, -1).

    When count_hits is true, increments hits[j] for every met box (used by
    the measure estimator; misses touch nothing, so rejected lines add no
    counts).
    """
    m, d = pts.shape
    first = -1
    last = -1
    t_first = 0.0
    t_last = 0.0
    for j in range(m):
        t_en = -np.inf
        t_ex = np.inf
        ok = True
        for i in range(d):
            lo = pts[j, i] - 0.5 - base[i]
            hi = pts[j, i] + 0.5 - base[i]
            vi = v[i]
            if vi > 1e-300 or vi < -1e-300:
                t1 = lo / vi
                t2 = hi / vi
                if t1 > t2:
                    t1, t2 = t2, t1
                if t1 > t_en:
                    t_en = t1
                if t2 < t_ex:
                    t_ex = t2
                if t_ex - t_en < -tol:
                    ok = False
                    break
            else:
                if lo > tol or hi < -tol:
                    ok = False
                    break
        if not ok or t_ex - t_en < -tol:
            continue
        if count_hits:
            hits[j] += 1
        if first < 0:
            first = j
            last = j
            t_first = t_en
            t_last = t_en
        else:
            if t_en < t_first or (t_en == t_first and _lex_less(pts, j, first)):
                first = j
                t_first = t_en
            if t_en > t_last or (t_en == t_last and _lex_less(pts, last, j)):
                last = j
                t_last = t_en
    return first, last


@njit(cache=True)
def _draw_ball_line(radius, center, v, base):
    """Isotropic line through the ball, written into v and base."""
    d = center.shape[0]
    while True:
        s = 0.0
        for i in range(d):
            v[i] = np.random.standard_normal()
            s += v[i] * v[i]
        if s > 1e-24:
            break
    s = np.sqrt(s)
    for i in range(d):
        v[i] /= s
    while True:
        dot = 0.0
        for i in range(d):
            base[i] = np.random.standard_normal()
        for i in range(d):
            dot += base[i] * v[i]
        nrm = 0.0
        for i in range(d):
            base[i] -= dot * v[i]
            nrm += base[i] * base[i]
        if nrm > 1e-24:
            break
    scale = radius * np.random.random() ** (1.0 / (d - 1)) / np.sqrt(nrm)
    for i in range(d):
        base[i] = center[i] + base[i] * scale


@njit(cache=True)
def ballistic_pick(seed, pts, center, radius, tol, max_rejections):
    """One accepted isotropic line; returns (first, last) box indices.

    (-1, -1) when the rejection budget runs out.
    """
    np.random.seed(seed)
    d = pts.shape[1]
    v = np.empty(d)
    base = np.empty(d)
    dummy = np.empty(0, np.int64)
    for _ in range(max_rejections):
        _draw_ball_line(radius, center, v, base)
        first, last = _scan_line(pts, base, v, tol, dummy, False)
        if first >= 0:
            return first, last
    return -1, -1


@njit(cache=True)
def ballistic_accumulate(seed, pts, center, radius, tol, n_samples,
                         max_rejections):
    """Accumulate first/last weights and per-box hit counts over n lines.

    Returns (weights, hit counts, status); status 1 means some draw
    exhausted the rejection budget.
    """
    np.random.seed(seed)
    m, d = pts.shape
    w = np.zeros(m)
    hits = np.zeros(m, np.int64)
    v = np.empty(d)
    base = np.empty(d)
    for _ in range(n_samples):
        first = -1
        last = -1
        for _ in range(max_rejections):
            _draw_ball_line(radius, center, v, base)
            first, last = _scan_line(pts, base, v, tol, hits, True)
            if first >= 0:
                break
        if first < 0:
            return w, hits, 1
        w[first] += 0.5
        w[last] += 0.5
    return w, hits, 0


@njit(cache=True)
def _walk_once(grid, shape, strides, off, annulus, kill_sq, absorb_value,
               accelerate, launch_r, relaunch_cap, pos, u):
    """One walker from the launch annulus to absorption.

    Moves by symmetric nearest-neighbor steps; positions past the kill
    radius discard the walker and relaunch it.  Far-field jumps (if
    enabled) displace by round(m * u) with m = floor(rho - launch_r - 1),
    which cannot re-enter the launch ball.  Returns 0 on absorption, 1 when
    the relaunch cap is exhausted.
    """
    d = shape.shape[0]
    acc_gate = (launch_r + 2.0) * (launch_r + 2.0)
    relaunches = 0
    while relaunches < relaunch_cap:
        relaunches += 1
        row = np.random.randint(annulus.shape[0])
        for i in range(d):
            pos[i] = annulus[row, i]
        while True:
            if accelerate:
                rho_sq = 0.0
                for i in range(d):
                    rho_sq += pos[i] * pos[i]
                if rho_sq > acc_gate:
                    jump = np.floor(np.sqrt(rho_sq) - launch_r - 1.0)
                    s = 0.0
                    while s <= 1e-24:
                        s = 0.0
                        for i in range(d):
                            u[i] = np.random.standard_normal()
                            s += u[i] * u[i]
                    s = np.sqrt(s)
                    for i in range(d):
                        pos[i] += np.int64(np.round(jump * u[i] / s))
                else:
                    r = np.random.randint(2 * d)
                    pos[r >> 1] += 1 - 2 * (r & 1)
            else:
                r = np.random.randint(2 * d)
                pos[r >> 1] += 1 - 2 * (r & 1)
            rho_sq = 0.0
            for i in range(d):
                rho_sq += pos[i] * pos[i]
            if rho_sq > kill_sq:
                break
            inside = True
            idx = 0
            for i in range(d):
                c = pos[i] + off[i]
                if c < 0 or c >= shape[i]:
                    inside = False
                    break
                idx += c * strides[i]
            if inside and grid[idx] == absorb_value:
                return 0
    return 1


@njit(cache=True)
def walker_site(seed, grid, shape, strides, off, annulus, kill_sq,
                absorb_value, accelerate, launch_r, relaunch_cap):
    """One absorbed walker position; status 1 if the relaunch cap is hit."""
    np.random.seed(seed)
    d = shape.shape[0]
    pos = np.empty(d, np.int64)
    u = np.empty(d)
    status = _walk_once(grid, shape, strides, off, annulus, kill_sq,
                        absorb_value, accelerate, launch_r, relaunch_cap,
                        pos, u)
    return status, pos


@njit(cache=True)
def walker_accumulate(seed, grid, shape, strides, off, annulus, kill_sq,
                      absorb_value, accelerate, launch_r, relaunch_cap,
                      n_samples, counts):
    """Absorption counts (on the flat grid) over n walkers."""
    np.random.seed(seed)
    d = shape.shape[0]
    pos = np.empty(d, np.int64)
    u = np.empty(d)
    for _ in range(n_samples):
        status = _walk_once(grid, shape, strides, off, annulus, kill_sq,
                            absorb_value, accelerate, launch_r, relaunch_cap,
                            pos, u)
        if status != 0:
            return 1
        idx = 0
        for i in range(d):
            idx += (pos[i] + off[i]) * strides[i]
        counts[idx] += 1
    return 0


@njit(cache=True)
def paint_first_last(order, k_lo, k_hi, first, last, w):
    """Per-direction quadrature pass over offset nodes.

    order lists site indices by (projection along the direction, lex);
    k_lo/k_hi are each site's clipped node ranges.  Painting ranges in
    reverse order leaves the true first site on every node (and forward for
    the last), which matches per-line traversal because entry order along a
    non-grazing line equals the order of center projections.  Adds the
    half/half (or single) weights into w and returns the number of covered
    nodes.
    """
    n = first.shape[0]
    for k in range(n):
        first[k] = -1
    m = order.shape[0]
    for ii in range(m - 1, -1, -1):
        j = order[ii]
        for k in range(k_lo[j], k_hi[j] + 1):
            first[k] = j
    for ii in range(m):
        j = order[ii]
        for k in range(k_lo[j], k_hi[j] + 1):
            last[k] = j
    covered = 0
    for k in range(n):
        f = first[k]
        if f >= 0:
            covered += 1
            w[f] += 0.5
            w[last[k]] += 0.5
    return covered
