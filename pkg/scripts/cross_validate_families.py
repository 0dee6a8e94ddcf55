"""Closed forms against the definitional route for every family, algebra and helix pitch.

Prints the max relative deviation per quantity; '*' marks quantities whose
comparison is report-only.
"""

import argparse

import numpy as np

from ruledlie import algebra, frenet, surfaces, verify
from ruledlie.invariants import QUANTITIES

FAMILIES = ["tangent-developable", "normal", "binormal", "darboux-developable", "rectifying"]


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, default=11, help="grid points per axis")
    ap.add_argument("--tol", type=float, default=1e-5)
    ap.add_argument("--helix", type=float, nargs=2, default=[0.8, 0.6], metavar=("A", "B"))
    args = ap.parse_args()

    curve = frenet.helix(*args.helix)
    s_grid = np.linspace(-np.pi, np.pi, args.n)
    v_grid = np.linspace(0.1, 2.0, args.n)
    print(f"{'algebra':14s}{'family':22s}" + "".join(f"{q:>12s}" for q in QUANTITIES))
    for name in algebra.available():
        alg = algebra.builtin(name)
        for fam in FAMILIES:
            reps = verify.compare_pipelines(surfaces.make_surface(alg, curve, fam), s_grid, v_grid, args.tol)
            cells = []
            for q in QUANTITIES:
                r = reps[q]
                mark = "*" if not r.asserting else ("" if r.passed else "!")
                cells.append(f"{r.max_rel:11.2e}{mark or ' '}")
            print(f"{name:14s}{fam:22s}" + "".join(cells))
    print("\n! exceeds tol, * report-only")


if __name__ == "__main__":
    main()
