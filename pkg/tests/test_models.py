"""Step distributions of the three growth models and the simulation driver."""

import math
from collections import Counter

import numpy as np
import pytest

from latticeagg import lattice, measures, models, walkgrid
from latticeagg.errors import SimulationError
from latticeagg.lattice import Cluster
from latticeagg.models import ModelConfig

from helpers import chi2_pvalue


def test_model_config_validation():
    cfg = ModelConfig(kind="eden")
    assert cfg.dla_launch_margin == 5.0
    assert cfg.dla_kill_factor == 50.0
    assert cfg.ballistic_max_rejections == 10**6
    with pytest.raises(ValueError):
        ModelConfig(kind="magnetic")
    with pytest.raises(ValueError):
        ModelConfig(kind="dla", dla_launch_margin=1.0)
    with pytest.raises(ValueError):
        ModelConfig(kind="dla", dla_kill_factor=1.5)
    with pytest.raises(ValueError):
        ModelConfig(kind="ballistic", ballistic_max_rejections=0)


def test_model_config_dict_roundtrip():
    cfg = ModelConfig(kind="dla", dla_kill_factor=8.0, dla_accelerate=True)
    assert ModelConfig.from_dict(cfg.as_dict()) == cfg


def _step_counts(step, cluster, rng, n, **kwargs):
    counts = Counter()
    boundary = cluster.boundary_set()
    for _ in range(n):
        site = step(cluster, rng, **kwargs)
        assert site in boundary
        counts[site] += 1
    return counts


def test_eden_step_uniform_singleton():
    for dim, n in ((2, 20_000), (3, 20_000)):
        cluster = Cluster(dim)
        rng = np.random.default_rng(61 + dim)
        counts = _step_counts(models.eden_step, cluster, rng, n)
        sites = sorted(cluster.boundary_set())
        p = chi2_pvalue([counts[s] for s in sites],
                        [1 / len(sites)] * len(sites))
        assert p > 0.001


def test_eden_step_uniform_on_frozen_boundary():
    rng = np.random.default_rng(67)
    cluster = Cluster(2)
    for _ in range(30):
        bnd = sorted(cluster.boundary_set())
        cluster.attach(bnd[int(rng.integers(len(bnd)))])
    n = 40_000
    counts = _step_counts(models.eden_step, cluster, rng, n)
    k = cluster.boundary_size
    se = math.sqrt((1 / k) * (1 - 1 / k) / n)
    for s in cluster.boundary_set():
        assert abs(counts[s] / n - 1 / k) <= 3 * se


def test_dla_step_uniform_singleton():
    cfg = ModelConfig(kind="dla")
    cluster = Cluster(2)
    rng = np.random.default_rng(71)
    state = models._DlaState(cluster)
    n = 20_000
    counts = _step_counts(models.dla_step, cluster, rng, n,
                          config=cfg, state=state)
    sites = sorted(cluster.boundary_set())
    p = chi2_pvalue([counts[s] for s in sites], [0.25] * 4)
    assert p > 0.001


def test_dla_step_two_site_reflection_symmetry():
    cfg = ModelConfig(kind="dla")
    cluster = Cluster(2)
    cluster.attach((1, 0))
    rng = np.random.default_rng(73)
    state = models._DlaState(cluster)
    n = 20_000
    counts = _step_counts(models.dla_step, cluster, rng, n,
                          config=cfg, state=state)
    for site in cluster.boundary_set():
        mirror = (1 - site[0], -site[1])
        pa, pb = counts[site] / n, counts[mirror] / n
        se = math.sqrt(pa * (1 - pa) / n + pb * (1 - pb) / n)
        assert abs(pa - pb) <= 3 * se + 1e-12


def test_ballistic_step_uniform_singleton():
    cfg = ModelConfig(kind="ballistic")
    cluster = Cluster(2)
    rng = np.random.default_rng(79)
    n = 20_000
    counts = _step_counts(models.ballistic_step, cluster, rng, n, config=cfg)
    sites = sorted(cluster.boundary_set())
    p = chi2_pvalue([counts[s] for s in sites], [0.25] * 4)
    assert p > 0.001


def test_ballistic_step_matches_measure_mc():
    # step frequencies against the direct estimator on the same boundary
    rng = np.random.default_rng(83)
    cluster = Cluster(2)
    for _ in range(24):
        bnd = sorted(cluster.boundary_set())
        cluster.attach(bnd[int(rng.integers(len(bnd)))])
    cfg = ModelConfig(kind="ballistic")
    n = 30_000
    counts = _step_counts(models.ballistic_step, cluster, rng, n, config=cfg)
    est = measures.ballistic_measure_mc(cluster.boundary_set(), n,
                                        np.random.default_rng(89))
    for site in cluster.boundary_set():
        p_step = counts[site] / n
        se_step = math.sqrt(max(p_step * (1 - p_step), 1e-12) / n)
        gap = 3 * (se_step + est.stderr[site]) + 1e-9
        assert abs(p_step - est.prob[site]) <= gap


def test_launch_annulus_matches_bruteforce():
    for dim, r in ((2, 3.0), (2, 5.5), (3, 3.0), (3, 4.2)):
        got = walkgrid.launch_annulus_sites(dim, r)
        span = int(math.ceil(r + 2))
        axes = [np.arange(-span, span + 1)] * dim
        grid = np.stack(np.meshgrid(*axes, indexing="ij"),
                        axis=-1).reshape(-1, dim)
        norms = np.linalg.norm(grid, axis=1)
        want = grid[(norms >= r) & (norms < r + 1.0)]
        want = want[np.lexsort(want.T[::-1])]
        assert np.array_equal(got, want)


def test_walkgrid_marks_members_and_frontier():
    grid = walkgrid.WalkGrid(2, 8)
    grid.mark_member((0, 0))
    assert grid.cells[grid.flat_index((0, 0))] == walkgrid.MEMBER
    for nb in lattice.neighbors((0, 0)):
        assert grid.cells[grid.flat_index(nb)] == walkgrid.FRONTIER
    grid.mark_member((1, 0))
    assert grid.cells[grid.flat_index((1, 0))] == walkgrid.MEMBER
    assert grid.cells[grid.flat_index((2, 0))] == walkgrid.FRONTIER


@pytest.mark.parametrize("kind", models.MODEL_KINDS)
def test_run_simulation_basics(kind):
    cfg = ModelConfig(kind=kind)
    cluster, record = models.run_simulation(cfg, 2, 100, seed=5)
    assert cluster.size == 100
    assert (0, 0) in cluster.member_set()
    assert lattice.is_connected(cluster.member_set())
    assert record.radii[0] == 0.0
    assert np.all(np.diff(record.radii) >= 0)
    assert record.steps[0] == 1 and record.steps[-1] == 100
    assert record.model == kind


def test_run_simulation_deterministic():
    cfg = ModelConfig(kind="ballistic")
    a, _ = models.run_simulation(cfg, 2, 150, seed=9)
    b, _ = models.run_simulation(cfg, 2, 150, seed=9)
    assert a.attach_order == b.attach_order
    c, _ = models.run_simulation(cfg, 2, 150, seed=10)
    assert c.attach_order != a.attach_order


def test_run_simulation_checkpoint_callback():
    seen = []
    cfg = ModelConfig(kind="eden")
    models.run_simulation(cfg, 2, 100, seed=1, checkpoint_every=25,
                          on_checkpoint=lambda step, c: seen.append(
                              (step, c.size)))
    assert seen == [(25, 25), (50, 50), (75, 75), (100, 100)]


def test_run_simulation_validates_arguments():
    cfg = ModelConfig(kind="eden")
    with pytest.raises(ValueError):
        models.run_simulation(cfg, 2, 0, seed=1)
    with pytest.raises(ValueError):
        models.run_simulation(cfg, 2, 10, seed=1, checkpoint_every=0)
    with pytest.raises(ValueError):
        models.run_simulation(cfg, 1, 10, seed=1)


def test_run_simulation_attaches_step_index_to_failures():
    cfg = ModelConfig(kind="ballistic", ballistic_max_rejections=1)
    raised = None
    for seed in range(50):
        try:
            models.run_simulation(cfg, 2, 500, seed=seed)
        except SimulationError as exc:
            raised = exc
            break
    assert raised is not None
    assert raised.step >= 2
    assert f"step {raised.step}" in str(raised)


def test_dla_acceleration_still_grows_valid_clusters():
    cfg = ModelConfig(kind="dla", dla_accelerate=True)
    cluster, record = models.run_simulation(cfg, 2, 300, seed=3)
    assert cluster.size == 300
    assert lattice.is_connected(cluster.member_set())
    assert record.radii[-1] == cluster.radius
