"""The three growth models and the simulation driver.

Each model is a rule for drawing the next site from the cluster's outer
boundary: uniformly (Eden), by random-walk hitting from far away (DLA,
realized with a finite launch sphere and kill radius), or by first/last
contact of an isotropic random line (ballistic).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, asdict

import numpy as np

from . import _kernels, streams
from .errors import LatticeAggError, SamplingError, SimulationError
from .geometry import BOX_TOL
from .lattice import Cluster, Site
from .analysis import GrowthRecord
from .walkgrid import FRONTIER, RELAUNCH_CAP, WalkGrid, launch_annulus_sites

MODEL_KINDS = ("eden", "dla", "ballistic")


@dataclass
class ModelConfig:
    """Which model to run plus the walker/line sampling knobs.

    dla_launch_margin: walkers start at norm radius + margin.
    dla_kill_factor: walkers beyond kill_factor * launch radius restart.
    dla_accelerate: far-field long jumps (approximation; keep off when
    estimating measures).
    ballistic_max_rejections: line-sampling budget per step.
    """

    kind: str
    dla_launch_margin: float = 5.0
    dla_kill_factor: float = 50.0
    dla_accelerate: bool = False
    ballistic_max_rejections: int = 10**6

    def __post_init__(self):
        if self.kind not in MODEL_KINDS:
            raise ValueError(f"unknown model kind {self.kind!r}")
        if self.dla_launch_margin < 2:
            raise ValueError("dla_launch_margin must be >= 2")
        if self.dla_kill_factor < 2:
            raise ValueError("dla_kill_factor must be >= 2")
        if self.ballistic_max_rejections < 1:
            raise ValueError("ballistic_max_rejections must be >= 1")

    def as_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: dict) -> "ModelConfig":
        return cls(**data)


class _DlaState:
    """Per-run walker state: occupancy grid plus cached launch annulus."""

    def __init__(self, cluster: Cluster):
        self.grid = WalkGrid.covering(cluster.dim, cluster.attach_order)
        self._annulus_r = -1.0
        self._annulus: np.ndarray | None = None

    def note_attach(self, cluster: Cluster, site: Site) -> None:
        if not self.grid.fits(site):
            self.grid = WalkGrid.covering(
                cluster.dim, cluster.attach_order, pad=self.grid.half)
        else:
            self.grid.mark_member(site)

    def annulus(self, dim: int, r_launch: float) -> np.ndarray:
        if r_launch != self._annulus_r:
            self._annulus = launch_annulus_sites(dim, r_launch)
            self._annulus_r = r_launch
        return self._annulus


def eden_step(cluster: Cluster, rng: np.random.Generator) -> Site:
    """Uniform draw from the outer boundary."""
    row = int(rng.integers(cluster.boundary_size))
    return cluster.boundary_site(row)


def dla_step(cluster: Cluster, rng: np.random.Generator,
             config: ModelConfig, state: _DlaState | None = None) -> Site:
    """First boundary site hit by a random walker from the launch sphere.

    The walker starts uniformly on the lattice sites with norm in
    [r_launch, r_launch + 1), r_launch = radius + launch margin, steps
    symmetrically, and is discarded and relaunched past the kill radius
    (realizing conditioning on ever hitting, which matters for d >= 3).
    """
    if state is None:
        state = _DlaState(cluster)
    r_launch = cluster.radius + config.dla_launch_margin
    annulus = state.annulus(cluster.dim, r_launch)
    kill = config.dla_kill_factor * r_launch
    grid = state.grid
    status, pos = _kernels.walker_site(
        streams.kernel_seed(rng), grid.cells, grid.shape, grid.strides,
        grid.off, annulus, kill * kill, FRONTIER, config.dla_accelerate,
        r_launch, RELAUNCH_CAP)
    if status != 0:
        raise SamplingError(
            f"walker relaunch cap {RELAUNCH_CAP} exceeded",
            attempts=RELAUNCH_CAP)
    return tuple(int(c) for c in pos)


def ballistic_step(cluster: Cluster, rng: np.random.Generator,
                   config: ModelConfig) -> Site:
    """First or last boundary box hit by an isotropic random line.

    The line is conditioned to meet the boundary's box union; if it meets
    only one box that site is returned, otherwise the entry-first and
    entry-last sites are equally likely (a fair orientation flip).
    """
    pts = cluster.boundary_points().astype(np.float64)
    # Sample through the origin-centered ball instead of the boundary's
    # minimal one: rejection conditioning gives the same law for any
    # enclosing ball, and the cluster radius is cached while the minimal
    # ball costs a full boundary scan per step. Boundary sites have norm
    # at most rad+1, boxes add half a diagonal.
    dim = cluster.dim
    center = np.zeros(dim)
    radius = cluster.radius + 1.0 + 0.5 * math.sqrt(dim) + 1e-9
    first, last = _kernels.ballistic_pick(
        streams.kernel_seed(rng), pts, center, radius, BOX_TOL,
        config.ballistic_max_rejections)
    if first < 0:
        raise SamplingError(
            f"no line met the boundary in {config.ballistic_max_rejections} "
            "draws", attempts=config.ballistic_max_rejections)
    if first != last and rng.random() < 0.5:
        return cluster.boundary_site(int(last))
    return cluster.boundary_site(int(first))


def run_simulation(config: ModelConfig, dim: int, n_particles: int,
                   seed: int, checkpoint_every: int | None = None,
                   on_checkpoint=None) -> tuple[Cluster, GrowthRecord]:
    """Grow a cluster to n particles and record its radius after each step.

    Deterministic given (config, dim, n_particles, seed).  When
    checkpoint_every is set, on_checkpoint(step, cluster) is called at every
    multiple of it; the callback sees the live cluster and must copy
    whatever it keeps.
    """
    if n_particles < 1:
        raise ValueError("n_particles must be >= 1")
    if checkpoint_every is not None and checkpoint_every < 1:
        raise ValueError("checkpoint_every must be >= 1")
    rng = streams.stream(seed, "simulate")
    cluster = Cluster(dim)
    radii = np.zeros(n_particles, dtype=np.float64)
    state = _DlaState(cluster) if config.kind == "dla" else None
    for step in range(2, n_particles + 1):
        try:
            if config.kind == "eden":
                site = eden_step(cluster, rng)
            elif config.kind == "dla":
                site = dla_step(cluster, rng, config, state)
            else:
                site = ballistic_step(cluster, rng, config)
        except LatticeAggError as exc:
            raise SimulationError(str(exc), step=step) from exc
        cluster.attach(site)
        if state is not None:
            state.note_attach(cluster, site)
        radii[step - 1] = cluster.radius
        if (checkpoint_every and on_checkpoint is not None
                and step % checkpoint_every == 0):
            on_checkpoint(step, cluster)
    record = GrowthRecord(
        steps=np.arange(1, n_particles + 1, dtype=np.int64),
        radii=radii, model=config.kind, seed=seed)
    return cluster, record
