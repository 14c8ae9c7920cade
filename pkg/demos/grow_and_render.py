"""Grow one cluster per model and render it to a PGM image.

Outputs land in demos/out/. The DLA run uses the far-field acceleration
so the whole script stays under a minute.
"""

import pathlib
import time

from latticeagg import io, models

PARTICLES = {"eden": 20_000, "ballistic": 20_000, "dla": 8000}
SEED = 42
OUT = pathlib.Path(__file__).parent / "out"


def main():
    OUT.mkdir(exist_ok=True)
    for kind, n in PARTICLES.items():
        cfg = models.ModelConfig(kind=kind, dla_accelerate=True)
        t0 = time.perf_counter()
        cluster, record = models.run_simulation(cfg, 2, n, seed=SEED)
        dt = time.perf_counter() - t0
        print(f"{kind:10s} n={n:6d}  rad {cluster.radius:7.2f}  "
              f"diam {cluster.diameter():7.2f}  "
              f"boundary {cluster.boundary_size:6d}  {dt:5.1f} s")

        io.save_cluster_csv(OUT / f"{kind}.csv", cluster)
        io.render_pgm(OUT / f"{kind}.pgm", cluster, age_shading=True)
    print(f"wrote csv + pgm files to {OUT}")


if __name__ == "__main__":
    main()
