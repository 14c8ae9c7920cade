"""Growth statistics and bound audits.

Radius-vs-step records, waiting times, growth-exponent fits, the
Kesten-style constant check, max-mass scans of the step distribution over
checkpoints, and the per-cluster inequality audit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .lattice import Cluster


@dataclass
class GrowthRecord:
    """The time series step -> cluster radius for one run."""

    steps: np.ndarray
    radii: np.ndarray
    model: str = ""
    seed: int | None = None

    def __post_init__(self):
        self.steps = np.asarray(self.steps, dtype=np.int64)
        self.radii = np.asarray(self.radii, dtype=np.float64)
        if self.steps.shape != self.radii.shape or self.steps.ndim != 1:
            raise ValueError("steps and radii must be equal-length vectors")
        if self.steps.size == 0:
            raise ValueError("empty growth record")
        if np.any(np.diff(self.steps) <= 0):
            raise ValueError("steps must be strictly increasing")
        if np.any(np.diff(self.radii) < 0):
            raise ValueError("radii must be nondecreasing")

    def __len__(self) -> int:
        return int(self.steps.size)

    @property
    def final_radius(self) -> float:
        return float(self.radii[-1])


@dataclass
class ExponentFit:
    """Tail log-log fit of radius vs. step count.

    alpha_hat is the slope, delta_hat its reciprocal; window is the (n_min,
    n_max) span actually regressed over.  These are finite-size estimates,
    hence the r_squared and window metadata rather than any convergence
    claim.
    """

    alpha_hat: float
    delta_hat: float
    window: tuple[int, int]
    r_squared: float


def waiting_times(record: GrowthRecord) -> list[tuple[int, int]]:
    """(r, T(r)) for each integer radius r reached by the record.

    T(r) is the first step whose radius is at least r; together with the
    radius series it satisfies T(R(n)) <= n and R(T(r)) >= r.
    """
    r_max = int(math.floor(record.final_radius))
    rs = np.arange(0, r_max + 1)
    idx = np.searchsorted(record.radii, rs, side="left")
    return [(int(r), int(record.steps[i])) for r, i in zip(rs, idx)]


def growth_exponent(record: GrowthRecord,
                    tail_fraction: float = 0.5) -> ExponentFit:
    """Least-squares slope of log radius vs. log step over the record tail.

    Only entries with radius >= 2 enter (log-domain validity); the tail is
    subsampled at log-spaced steps so late times do not dominate the fit.
    Needs at least 20 valid entries.
    """
    if not 0 < tail_fraction <= 1:
        raise ValueError("tail_fraction must be in (0, 1]")
    valid = record.radii >= 2.0
    ns = record.steps[valid].astype(np.float64)
    rs = record.radii[valid]
    if ns.size < 20:
        raise ValueError(
            f"need >= 20 entries with radius >= 2, have {ns.size}")
    start = int(math.floor(ns.size * (1.0 - tail_fraction)))
    ns, rs = ns[start:], rs[start:]
    targets = np.geomspace(ns[0], ns[-1], num=min(256, ns.size))
    pick = np.unique(np.searchsorted(ns, targets, side="left")
                     .clip(max=ns.size - 1))
    x = np.log(ns[pick])
    y = np.log(rs[pick])
    slope, intercept = np.polyfit(x, y, 1)
    resid = y - (slope * x + intercept)
    ss_tot = float(((y - y.mean()) ** 2).sum())
    r_sq = 1.0 if ss_tot == 0 else 1.0 - float((resid ** 2).sum()) / ss_tot
    alpha = float(slope)
    delta = math.inf if alpha == 0 else 1.0 / alpha
    return ExponentFit(alpha_hat=alpha, delta_hat=delta,
                       window=(int(ns[pick][0]), int(ns[pick][-1])),
                       r_squared=r_sq)


@dataclass
class KestenCheck:
    """Fitted constant for the radius bound rad(F_n) <= c * n^(1/(1+q))."""

    q: float
    c_fit: float
    n_at_max: int
    ok: bool


def kesten_bound_check(record: GrowthRecord, q: float,
                       n_max: int | None = None) -> KestenCheck:
    """Max of rad / n^(1/(1+q)) over steps n >= 10 (optionally <= n_max).

    A stable c_fit across growing n_max is evidence for the polynomial
    radius bound with exponent 1/(1+q).
    """
    if q <= 0:
        raise ValueError("q must be positive")
    mask = record.steps >= 10
    if n_max is not None:
        mask &= record.steps <= n_max
    if not mask.any():
        raise ValueError("no entries with step >= 10 in range")
    ns = record.steps[mask].astype(np.float64)
    rs = record.radii[mask]
    ratios = rs / ns ** (1.0 / (1.0 + q))
    i = int(np.argmax(ratios))
    c = float(ratios[i])
    return KestenCheck(q=q, c_fit=c, n_at_max=int(ns[i]),
                       ok=bool(np.isfinite(c)))


@dataclass
class BeurlingScan:
    """Max step-distribution mass per checkpoint and its decay exponent."""

    points: list[tuple[float, float, float]]  # (rad, max mass, stderr)
    q_hat: float


def beurling_scan(checkpoints, model: str, n_samples: int,
                  rng: np.random.Generator, *,
                  dla_launch_margin: float = 5.0,
                  dla_kill_factor: float = 50.0,
                  dla_accelerate: bool = False) -> BeurlingScan:
    """Decay of the maximal single-site step probability along a run.

    For each checkpoint (any iterable of clusters, consumed once) the
    model's step distribution on the outer boundary is computed (Eden
    exactly, ballistic/DLA by Monte Carlo with n_samples draws) and its
    maximum recorded; q_hat is the negative slope of log max-mass against
    log radius.  Needs >= 5 checkpoints with radius >= 2.
    """
    from . import measures

    if model not in ("eden", "dla", "ballistic"):
        raise ValueError(f"unknown model kind {model!r}")
    points = []
    for cluster in checkpoints:
        if cluster.radius < 2.0:
            continue
        boundary = cluster.boundary_set()
        if model == "eden":
            est = measures.eden_measure(boundary)
        elif model == "ballistic":
            est = measures.ballistic_measure_mc(boundary, n_samples, rng)
        else:
            est = measures.harmonic_measure_mc(
                boundary, n_samples, rng, launch_margin=dla_launch_margin,
                kill_factor=dla_kill_factor, accelerate=dla_accelerate)
        _, mass, err = measures.max_mass(est)
        points.append((float(cluster.radius), float(mass), float(err)))
    if len(points) < 5:
        raise ValueError(
            f"need >= 5 checkpoints with radius >= 2, have {len(points)}")
    x = np.log([p[0] for p in points])
    y = np.log([p[1] for p in points])
    slope = np.polyfit(x, y, 1)[0]
    return BeurlingScan(points=points, q_hat=float(-slope))


@dataclass
class BoundCheck:
    name: str
    passed: bool
    applied: bool
    details: dict = field(default_factory=dict)


@dataclass
class BoundAudit:
    checks: list[BoundCheck]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def as_dict(self) -> dict:
        return {
            "passed": self.passed,
            "checks": [
                {"name": c.name, "passed": c.passed, "applied": c.applied,
                 "details": c.details}
                for c in self.checks
            ],
        }


_SLACK = 1e-9  # float slack for exact integer-geometry inequalities


def bound_audit(cluster: Cluster) -> BoundAudit:
    """Audit the deterministic size/radius/boundary inequalities.

    (a) rad <= #F <= (2 rad + 1)^d;
    (b) diam/2 <= rad <= diam;
    (c) #boundary >= (2(d-1)/sqrt(d)) * rad(boundary), applied once the
        boundary radius reaches 2.
    """
    d = cluster.dim
    rad = cluster.radius
    size = cluster.size
    diam = cluster.diameter()
    b_size = cluster.boundary_size
    b_rad = cluster.boundary_radius()

    upper = (2.0 * rad + 1.0) ** d
    check_a = BoundCheck(
        name="size-vs-radius",
        passed=(rad <= size + _SLACK) and (size <= upper + _SLACK),
        applied=True,
        details={"rad": rad, "size": size, "upper": upper})
    check_b = BoundCheck(
        name="radius-vs-diameter",
        passed=(0.5 * diam <= rad + _SLACK) and (rad <= diam + _SLACK),
        applied=True,
        details={"rad": rad, "diam": diam})
    lower_c = 2.0 * (d - 1) / math.sqrt(d) * b_rad
    applies = b_rad >= 2.0
    check_c = BoundCheck(
        name="boundary-size",
        passed=(not applies) or (b_size >= lower_c - _SLACK),
        applied=applies,
        details={"boundary_size": b_size, "boundary_rad": b_rad,
                 "lower": lower_c})
    return BoundAudit(checks=[check_a, check_b, check_c])


def reference_dimensions(model: str, dim: int) -> dict:
    """Conjectured/known fractal dimensions, for annotation only."""
    refs: dict = {}
    if model == "dla":
        refs["conjectured_delta"] = (dim * dim + 1) / (dim + 1)
    elif model == "ballistic":
        refs["conjectured_delta"] = float(dim)
    elif model == "eden" and dim == 2:
        refs["reference_delta"] = 2.0
    return refs
