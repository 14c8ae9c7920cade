"""Persistence: cluster/growth CSVs, run metadata JSON, measure CSV, PGM.

CSV for site data (diff-able, language-neutral), JSON for metadata, binary
PGM (P5) for rasters.  All writers are deterministic so identical runs
produce identical bytes; the only exception is the wall-time field in run
metadata.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, asdict
from pathlib import Path

import numpy as np

from .analysis import GrowthRecord
from .errors import ClusterFileError
from .lattice import Cluster
from .measures import MeasureEstimate

try:
    from importlib.metadata import version as _pkg_version

    PACKAGE_VERSION = _pkg_version("latticeagg")
except Exception:  # not installed (e.g. run from a checkout)
    PACKAGE_VERSION = "0.1.0"


def _fmt(x: float) -> str:
    """Shortest round-trip decimal form."""
    return repr(float(x))


# -- clusters ---------------------------------------------------------------

def save_cluster_csv(path, cluster: Cluster) -> None:
    """Attach-ordered sites with 1-based indices."""
    header = "index," + ",".join(f"x{i + 1}" for i in range(cluster.dim))
    rows = [header]
    for i, site in enumerate(cluster.attach_order, start=1):
        rows.append(str(i) + "," + ",".join(str(c) for c in site))
    Path(path).write_text("\n".join(rows) + "\n", encoding="ascii")


def load_cluster_csv(path) -> Cluster:
    """Rebuild a cluster by replaying its attach order.

    Raises ClusterFileError with the offending line number on malformed
    input, bad indices, or attachments that violate boundary growth.
    """
    lines = Path(path).read_text(encoding="ascii").splitlines()
    if not lines:
        raise ClusterFileError("empty cluster file", line=1)
    cols = lines[0].strip().split(",")
    if (len(cols) < 3 or cols[0] != "index"
            or cols[1:] != [f"x{i + 1}" for i in range(len(cols) - 1)]):
        raise ClusterFileError(f"bad header {lines[0]!r}", line=1)
    dim = len(cols) - 1
    cluster: Cluster | None = None
    for ln, row in enumerate(lines[1:], start=2):
        if not row.strip():
            continue
        parts = row.split(",")
        if len(parts) != dim + 1:
            raise ClusterFileError(
                f"expected {dim + 1} fields, got {len(parts)}", line=ln)
        try:
            vals = [int(p) for p in parts]
        except ValueError:
            raise ClusterFileError(f"non-integer field in {row!r}", line=ln)
        index, site = vals[0], tuple(vals[1:])
        if cluster is None:
            if site != (0,) * dim:
                raise ClusterFileError(
                    f"first site must be the origin, got {site}", line=ln)
            cluster = Cluster(dim)
        else:
            try:
                cluster.attach(site)
            except ValueError as exc:
                raise ClusterFileError(str(exc), line=ln)
        if index != cluster.size:
            raise ClusterFileError(
                f"index {index} out of order (expected {cluster.size})",
                line=ln)
    if cluster is None:
        raise ClusterFileError("cluster file has no site rows", line=1)
    return cluster


# -- growth records ---------------------------------------------------------

def save_growth_csv(path, record: GrowthRecord) -> None:
    rows = ["n,rad"]
    for n, rad in zip(record.steps, record.radii):
        rows.append(f"{int(n)},{_fmt(rad)}")
    Path(path).write_text("\n".join(rows) + "\n", encoding="ascii")


def load_growth_csv(path, model: str = "",
                    seed: int | None = None) -> GrowthRecord:
    lines = Path(path).read_text(encoding="ascii").splitlines()
    if not lines or lines[0].strip() != "n,rad":
        raise ClusterFileError("bad growth header", line=1)
    steps = []
    radii = []
    for ln, row in enumerate(lines[1:], start=2):
        if not row.strip():
            continue
        parts = row.split(",")
        if len(parts) != 2:
            raise ClusterFileError("expected 2 fields", line=ln)
        try:
            steps.append(int(parts[0]))
            radii.append(float(parts[1]))
        except ValueError:
            raise ClusterFileError(f"bad row {row!r}", line=ln)
    if not steps:
        raise ClusterFileError("growth file has no rows", line=1)
    return GrowthRecord(steps=np.array(steps), radii=np.array(radii),
                        model=model, seed=seed)


# -- run metadata -----------------------------------------------------------

@dataclass
class RunMetadata:
    """Everything needed to regenerate a run's data files byte-for-byte.

    wall_time_s is diagnostic only and excluded from reproducibility
    comparisons.
    """

    model: str
    dim: int
    particles: int
    seed: int
    config: dict
    checkpoint_every: int | None = None
    version: str = PACKAGE_VERSION
    wall_time_s: float | None = None

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: dict) -> "RunMetadata":
        return cls(**data)


def write_meta_json(path, meta: RunMetadata) -> None:
    text = json.dumps(meta.to_dict(), indent=2, sort_keys=True)
    Path(path).write_text(text + "\n", encoding="ascii")


def read_meta_json(path) -> RunMetadata:
    data = json.loads(Path(path).read_text(encoding="ascii"))
    return RunMetadata.from_dict(data)


# -- measures ---------------------------------------------------------------

def save_measure_csv(path, estimate: MeasureEstimate) -> None:
    """Per-site probabilities in lexicographic site order.

    The hitprob column is blank for estimators that do not produce it.
    """
    sites = sorted(estimate.prob)
    if not sites:
        raise ValueError("empty estimate")
    dim = len(sites[0])
    header = ",".join(f"x{i + 1}" for i in range(dim)) + ",prob,stderr,hitprob"
    rows = [header]
    for site in sites:
        hp = ""
        if estimate.hit_prob is not None:
            hp = _fmt(estimate.hit_prob[site])
        rows.append(",".join(str(c) for c in site)
                    + f",{_fmt(estimate.prob[site])}"
                    + f",{_fmt(estimate.stderr[site])},{hp}")
    Path(path).write_text("\n".join(rows) + "\n", encoding="ascii")


# -- raster -----------------------------------------------------------------

def render_pgm(path, cluster: Cluster, age_shading: bool = False) -> None:
    """Binary PGM over the bounding box plus a 1-site margin.

    Occupied pixels are 0 (or, with age shading, the attach index mapped
    linearly onto 0..200, oldest first); empty pixels are 255.  Plane
    clusters only.
    """
    if cluster.dim != 2:
        raise ValueError("PGM rendering is plane-only")
    pts = cluster.member_points()
    lo = pts.min(axis=0) - 1
    hi = pts.max(axis=0) + 1
    width = int(hi[0] - lo[0] + 1)
    height = int(hi[1] - lo[1] + 1)
    img = np.full((height, width), 255, dtype=np.uint8)
    n = cluster.size
    for i, (x, y) in enumerate(cluster.attach_order):
        value = 0
        if age_shading and n > 1:
            value = int(round(200.0 * i / (n - 1)))
        img[int(hi[1] - y), int(x - lo[0])] = value
    header = f"P5\n{width} {height}\n255\n".encode("ascii")
    Path(path).write_bytes(header + img.tobytes())
