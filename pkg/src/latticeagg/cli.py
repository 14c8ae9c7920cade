"""Command-line driver: simulate, measure, analyze, render."""

from __future__ import annotations

import argparse
import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from . import analysis, io, measures, models, streams
from .errors import LatticeAggError

_DEFAULT_Q = {"eden": 1.0, "ballistic": 1.0, "dla": 0.5}


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="latticeagg",
        description="Lattice aggregation: growth simulation, step-measure "
                    "estimation, growth analysis, raster rendering.")
    sub = parser.add_subparsers(dest="command", required=True)

    sim = sub.add_parser(
        "simulate", help="grow a cluster and write cluster/growth/meta files")
    sim.add_argument("--model", required=True, choices=models.MODEL_KINDS)
    sim.add_argument("--dim", type=int, required=True)
    sim.add_argument("--particles", type=int, required=True)
    sim.add_argument("--seed", required=True,
                     help="integer seed, or A:B for an inclusive seed sweep")
    sim.add_argument("--out", required=True, help="output directory")
    sim.add_argument("--checkpoint-every", type=int, default=None)
    sim.add_argument("--launch-margin", type=float, default=5.0,
                     help="DLA launch shell distance beyond the radius")
    sim.add_argument("--kill-factor", type=float, default=50.0,
                     help="DLA kill radius as a multiple of the launch radius")
    sim.add_argument("--accelerate", action="store_true",
                     help="DLA far-field long jumps (approximation)")
    sim.add_argument("--max-rejections", type=int, default=10**6,
                     help="ballistic line-sampling budget per step")
    sim.add_argument("--jobs", type=int, default=1,
                     help="worker processes for seed sweeps")

    mea = sub.add_parser(
        "measure", help="estimate a step measure on a stored cluster; "
                        "writes measure.csv next to the cluster file")
    mea.add_argument("--cluster", required=True, help="cluster CSV path")
    mea.add_argument("--target", choices=("cluster", "boundary"),
                     default="cluster")
    mea.add_argument("--method", required=True,
                     choices=("mc", "quadrature", "exact-eden"))
    mea.add_argument("--samples", type=int, default=100_000)
    mea.add_argument("--seed", type=int, default=0)

    ana = sub.add_parser(
        "analyze", help="growth statistics for a simulate output directory")
    ana.add_argument("--run", required=True, help="run directory")
    ana.add_argument("--q", type=float, default=None,
                     help="Kesten exponent (default per model)")
    ana.add_argument("--beurling", type=int, default=None,
                     help="max-mass scan over checkpoints with this many "
                          "measure samples each")

    ren = sub.add_parser("render", help="write a PGM raster of a cluster")
    ren.add_argument("--cluster", required=True)
    ren.add_argument("--out", required=True, help="output .pgm path")
    ren.add_argument("--age-shading", action="store_true")
    return parser


# -- simulate ----------------------------------------------------------------

def _parse_seed_spec(spec: str) -> list[int]:
    if ":" in spec:
        a, _, b = spec.partition(":")
        lo, hi = int(a), int(b)
        if hi < lo:
            raise ValueError(f"empty seed range {spec!r}")
        return list(range(lo, hi + 1))
    return [int(spec)]


def _simulate_one(kind: str, dim: int, particles: int, seed: int,
                  out_dir: str, checkpoint_every: int | None,
                  launch_margin: float, kill_factor: float,
                  accelerate: bool, max_rejections: int) -> dict:
    config = models.ModelConfig(
        kind=kind, dla_launch_margin=launch_margin,
        dla_kill_factor=kill_factor, dla_accelerate=accelerate,
        ballistic_max_rejections=max_rejections)
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    ckpt_dir = out / "checkpoints"
    if checkpoint_every:
        ckpt_dir.mkdir(exist_ok=True)

    def write_checkpoint(step: int, cluster) -> None:
        io.save_cluster_csv(ckpt_dir / f"cluster_{step:08d}.csv", cluster)

    started = time.perf_counter()
    cluster, record = models.run_simulation(
        config, dim, particles, seed, checkpoint_every=checkpoint_every,
        on_checkpoint=write_checkpoint if checkpoint_every else None)
    elapsed = time.perf_counter() - started
    io.save_cluster_csv(out / "cluster.csv", cluster)
    io.save_growth_csv(out / "growth.csv", record)
    meta = io.RunMetadata(
        model=kind, dim=dim, particles=particles, seed=seed,
        config=config.as_dict(), checkpoint_every=checkpoint_every,
        wall_time_s=round(elapsed, 6))
    io.write_meta_json(out / "meta.json", meta)
    return {"seed": seed, "dir": str(out), "particles": particles,
            "size": cluster.size, "radius": cluster.radius}


def _simulate_worker(kwargs: dict) -> dict:
    return _simulate_one(**kwargs)


def _cmd_simulate(args) -> int:
    seeds = _parse_seed_spec(args.seed)
    base = Path(args.out)
    common = dict(
        kind=args.model, dim=args.dim, particles=args.particles,
        checkpoint_every=args.checkpoint_every,
        launch_margin=args.launch_margin, kill_factor=args.kill_factor,
        accelerate=args.accelerate, max_rejections=args.max_rejections)
    if len(seeds) == 1:
        summary = _simulate_one(seed=seeds[0], out_dir=str(base), **common)
        print(f"wrote {summary['dir']}: {summary['size']} sites, "
              f"radius {summary['radius']:.3f}")
        return 0
    jobs = [dict(common, seed=s, out_dir=str(base / f"seed_{s}"))
            for s in seeds]
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            summaries = list(pool.map(_simulate_worker, jobs))
    else:
        summaries = [_simulate_worker(j) for j in jobs]
    base.mkdir(parents=True, exist_ok=True)
    sweep = {"model": args.model, "dim": args.dim,
             "particles": args.particles, "runs": summaries}
    (base / "sweep.json").write_text(
        json.dumps(sweep, indent=2, sort_keys=True) + "\n", encoding="ascii")
    for s in summaries:
        print(f"seed {s['seed']}: {s['size']} sites, "
              f"radius {s['radius']:.3f} -> {s['dir']}")
    return 0


# -- measure -----------------------------------------------------------------

def _cmd_measure(args) -> int:
    cluster_path = Path(args.cluster)
    cluster = io.load_cluster_csv(cluster_path)
    sites = (cluster.member_set() if args.target == "cluster"
             else cluster.boundary_set())
    if args.method == "mc":
        rng = streams.stream(args.seed, "measure")
        estimate = measures.ballistic_measure_mc(sites, args.samples, rng)
    elif args.method == "quadrature":
        estimate = measures.ballistic_measure_quadrature_2d(sites)
    else:
        estimate = measures.eden_measure(sites)
    out_path = cluster_path.parent / "measure.csv"
    io.save_measure_csv(out_path, estimate)
    print(f"wrote {out_path}: {len(estimate.prob)} sites, "
          f"method {estimate.method}")
    return 0


# -- analyze -----------------------------------------------------------------

def _load_checkpoints(run: Path) -> list[tuple[int, object]]:
    ckpt_dir = run / "checkpoints"
    out = []
    if ckpt_dir.is_dir():
        for path in sorted(ckpt_dir.glob("cluster_*.csv")):
            step = int(path.stem.split("_")[1])
            out.append((step, io.load_cluster_csv(path)))
    return out


def _cmd_analyze(args) -> int:
    run = Path(args.run)
    meta = io.read_meta_json(run / "meta.json")
    record = io.load_growth_csv(run / "growth.csv", model=meta.model,
                                seed=meta.seed)
    final_cluster = io.load_cluster_csv(run / "cluster.csv")
    checkpoints = _load_checkpoints(run)

    fit = analysis.growth_exponent(record)
    q = args.q if args.q is not None else _DEFAULT_Q[meta.model]
    kesten = analysis.kesten_bound_check(record, q)

    audits = []
    for step, cluster in checkpoints + [(meta.particles, final_cluster)]:
        audit = analysis.bound_audit(cluster)
        audits.append({"step": step, **audit.as_dict()})

    beurling = None
    if args.beurling is not None:
        clusters = [c for _, c in checkpoints]
        rng = streams.stream(meta.seed, "analyze:beurling")
        scan = analysis.beurling_scan(
            clusters, meta.model, args.beurling, rng,
            dla_launch_margin=meta.config.get("dla_launch_margin", 5.0),
            dla_kill_factor=meta.config.get("dla_kill_factor", 50.0))
        beurling = {"q_hat": scan.q_hat,
                    "points": [{"rad": r, "max_mass": m, "stderr": s}
                               for r, m, s in scan.points]}
        rows = ["rad,max_mass,stderr"]
        rows += [f"{r!r},{m!r},{s!r}" for r, m, s in scan.points]
        (run / "beurling.csv").write_text("\n".join(rows) + "\n",
                                          encoding="ascii")

    times = analysis.waiting_times(record)
    rows = ["r,T"] + [f"{r},{t}" for r, t in times]
    (run / "waiting_times.csv").write_text("\n".join(rows) + "\n",
                                           encoding="ascii")

    lo_alpha = 1.0 / meta.dim
    report = {
        "model": meta.model,
        "dim": meta.dim,
        "particles": meta.particles,
        "seed": meta.seed,
        "exponent_fit": {
            "alpha_hat": fit.alpha_hat,
            "delta_hat": fit.delta_hat,
            "window": list(fit.window),
            "r_squared": fit.r_squared,
        },
        "expected_alpha_range": [lo_alpha, 1.0],
        "alpha_in_expected_range": bool(
            lo_alpha - 0.05 <= fit.alpha_hat <= 1.05),
        "reference_dimensions": analysis.reference_dimensions(
            meta.model, meta.dim),
        "kesten": {"q": kesten.q, "c_fit": kesten.c_fit,
                   "n_at_max": kesten.n_at_max, "ok": kesten.ok},
        "bound_audits": audits,
        "beurling": beurling,
    }
    (run / "analysis.json").write_text(
        json.dumps(report, indent=2, sort_keys=True) + "\n", encoding="ascii")
    print(f"wrote {run / 'analysis.json'}: alpha_hat {fit.alpha_hat:.4f}, "
          f"delta_hat {fit.delta_hat:.4f}")
    return 0


# -- render ------------------------------------------------------------------

def _cmd_render(args) -> int:
    cluster = io.load_cluster_csv(args.cluster)
    io.render_pgm(args.out, cluster, age_shading=args.age_shading)
    print(f"wrote {args.out}")
    return 0


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    handlers = {"simulate": _cmd_simulate, "measure": _cmd_measure,
                "analyze": _cmd_analyze, "render": _cmd_render}
    try:
        return handlers[args.command](args)
    except (LatticeAggError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
