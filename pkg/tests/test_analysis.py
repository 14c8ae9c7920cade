"""Growth records, exponent fits, radius bounds, and mass-decay scans."""

import math

import numpy as np
import pytest

from latticeagg import analysis, models
from latticeagg.analysis import GrowthRecord
from latticeagg.lattice import Cluster
from latticeagg.models import ModelConfig


def _record(radii, model="eden", seed=0):
    steps = np.arange(1, len(radii) + 1)
    return GrowthRecord(steps=steps, radii=np.asarray(radii, dtype=float),
                        model=model, seed=seed)


def test_growth_record_validation():
    rec = _record([0.0, 1.0, 1.0, 2.0])
    assert rec.final_radius == 2.0
    with pytest.raises(ValueError):
        _record([])
    with pytest.raises(ValueError):
        _record([0.0, 2.0, 1.0])
    with pytest.raises(ValueError):
        GrowthRecord(steps=np.array([1, 1, 2]),
                     radii=np.array([0.0, 0.0, 1.0]), model="eden", seed=0)
    with pytest.raises(ValueError):
        GrowthRecord(steps=np.array([1, 2]), radii=np.array([0.0]),
                     model="eden", seed=0)


def test_waiting_times_linear():
    rec = _record([n - 1 for n in range(1, 51)])
    times = dict(analysis.waiting_times(rec))
    assert times == {r: r + 1 for r in range(0, 50)}


def test_waiting_times_square_root():
    rec = _record([math.sqrt(n) for n in range(1, 101)])
    times = dict(analysis.waiting_times(rec))
    assert times[0] == 1
    for r in range(1, 11):
        assert times[r] == math.ceil(r * r)


def test_waiting_times_galois_pair():
    cfg = ModelConfig(kind="eden")
    _, rec = models.run_simulation(cfg, 2, 600, seed=2)
    times = analysis.waiting_times(rec)
    radii = {int(n): rad for n, rad in zip(rec.steps, rec.radii)}
    for r, t in times:
        assert radii[t] >= r
    for n in (1, 50, 200, 600):
        r_n = int(math.floor(radii[n]))
        t_of = dict(times)[r_n]
        assert t_of <= n


def test_growth_exponent_power_laws():
    n = np.arange(1, 2001)
    fit = analysis.growth_exponent(_record(np.sqrt(n)))
    assert abs(fit.alpha_hat - 0.5) <= 1e-6
    assert abs(fit.delta_hat - 2.0) <= 1e-5
    assert fit.r_squared >= 1 - 1e-9
    assert fit.alpha_hat * fit.delta_hat == 1.0

    fit = analysis.growth_exponent(_record(n.astype(float)))
    assert abs(fit.alpha_hat - 1.0) <= 1e-6

    fit = analysis.growth_exponent(_record(n ** 0.71))
    assert abs(fit.alpha_hat - 0.71) <= 1e-6
    assert fit.window[0] >= 1 and fit.window[1] <= 2000


def test_growth_exponent_needs_enough_entries():
    with pytest.raises(ValueError):
        analysis.growth_exponent(_record([0.0, 1.0, 2.0, 3.0]))


def test_kesten_bound_check_synthetic():
    n = np.arange(1, 501)
    check = analysis.kesten_bound_check(_record(2 * np.sqrt(n)), q=1.0)
    assert abs(check.c_fit - 2.0) <= 1e-12
    assert check.n_at_max == 10
    assert check.ok
    with pytest.raises(ValueError):
        analysis.kesten_bound_check(_record(np.sqrt(n)), q=0.0)


def test_kesten_bound_check_prefix_window():
    n = np.arange(1, 2001)
    rec = _record(1.5 * n ** 0.5)
    full = analysis.kesten_bound_check(rec, q=1.0)
    early = analysis.kesten_bound_check(rec, q=1.0, n_max=100)
    assert abs(full.c_fit - early.c_fit) <= 1e-12


def test_beurling_scan_eden_exact():
    # deterministic scan: exact masses, so q_hat is reproducible bit-for-bit
    cfg = ModelConfig(kind="eden")
    snaps = []
    models.run_simulation(cfg, 2, 10_000, seed=5, checkpoint_every=1000,
                          on_checkpoint=lambda s, c: snaps.append(c.copy()))
    rng = np.random.default_rng(0)
    scan = analysis.beurling_scan(snaps, "eden", 10, rng)
    for (rad, mass, err), cluster in zip(scan.points, snaps):
        assert mass == 1.0 / cluster.boundary_size
        assert err == 0.0
        assert rad == cluster.radius
    assert abs(scan.q_hat - 1.0) <= 0.15


def test_beurling_scan_needs_checkpoints():
    cfg = ModelConfig(kind="eden")
    snaps = []
    models.run_simulation(cfg, 2, 200, seed=4, checkpoint_every=100,
                          on_checkpoint=lambda s, c: snaps.append(c.copy()))
    with pytest.raises(ValueError):
        analysis.beurling_scan(snaps, "eden", 10, np.random.default_rng(0))


def test_bound_audit_singleton():
    audit = analysis.bound_audit(Cluster(2))
    assert audit.passed
    by_name = {c.name: c for c in audit.checks}
    assert by_name["size-vs-radius"].passed
    assert by_name["radius-vs-diameter"].passed
    assert not by_name["boundary-size"].applied


def test_bound_audit_segment():
    c = Cluster(2)
    for k in range(1, 5):
        c.attach((k, 0))
    audit = analysis.bound_audit(c)
    assert audit.passed
    by_name = {c.name: c for c in audit.checks}
    bs = by_name["boundary-size"]
    assert bs.applied
    assert bs.details["boundary_size"] == 12
    assert bs.details["lower"] == pytest.approx(math.sqrt(2) * 5.0)


@pytest.mark.parametrize("dim", [2, 3])
def test_bound_audit_random_clusters(dim):
    rng = np.random.default_rng(163 + dim)
    c = Cluster(dim)
    for _ in range(150):
        bnd = sorted(c.boundary_set())
        c.attach(bnd[int(rng.integers(len(bnd)))])
    audit = analysis.bound_audit(c)
    assert audit.passed
    assert set(audit.as_dict()) == {"passed", "checks"}


def test_reference_dimensions():
    ref = analysis.reference_dimensions("dla", 2)
    assert ref["conjectured_delta"] == pytest.approx(5 / 3)
    assert analysis.reference_dimensions("ballistic", 3)[
        "conjectured_delta"] == 3.0
    assert analysis.reference_dimensions("eden", 2)[
        "reference_delta"] == 2.0
