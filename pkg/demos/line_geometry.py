"""Isotropic lines against boxes: constants, hit rates, and traversals."""

import numpy as np

from latticeagg import geometry

N_LINES = 200_000
SEED = 7


def main():
    rng = np.random.default_rng(SEED)

    print("Crofton constants alpha_d = 2 kappa_{d-1} / (d kappa_d):")
    for d in range(2, 7):
        a = geometry.crofton_constant(d)
        identity = a * d * geometry.unit_ball_volume(d)
        print(f"  d={d}: alpha = {a:.6f}   "
              f"alpha*d*kappa_d = {identity:.12f} "
              f"(= 2 kappa_(d-1) = {2 * geometry.unit_ball_volume(d - 1):.12f})")

    # hit probability of the unit square for lines through the unit ball
    origin_box = np.zeros((1, 2))
    hits = 0
    for _ in range(N_LINES):
        line = geometry.sample_line_hitting_ball(np.zeros(2), 1.0, rng)
        hit, _ = geometry.box_entry_params(line, origin_box)
        hits += int(hit[0])
    p = hits / N_LINES
    se = (p * (1 - p) / N_LINES) ** 0.5
    print(f"\nP(line meets unit square | meets unit ball) = {p:.5f} +- {se:.5f}"
          f"   (2/pi = {2 / np.pi:.5f})")

    # a single traversal, spelled out
    sites = {(0, 0), (1, 0), (2, 0), (2, 1)}
    line = geometry.DirectedLine(np.array([-1.0, -0.4]), np.array([1.0, 0.35]))
    visited = geometry.traverse(line, sites).visited
    print(f"\nline through {sites} visits, in order: {visited}")
    first, last = visited[0], visited[-1]
    print(f"first box {first}, last box {last}; a ballistic particle "
          f"sticks at one of the two ends of this chord")


if __name__ == "__main__":
    main()
