"""Run the randomized property suite over several seeds and print the worst case per check."""

import argparse

from ruledlie import verify


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seeds", type=int, nargs="+", default=[42, 7, 1, 2, 3])
    ap.add_argument("--cases", type=int, default=100)
    args = ap.parse_args()

    worst = {}
    for seed in args.seeds:
        for c in verify.property_suite(seed, args.cases).checks:
            prev = worst.get(c.name)
            if prev is None or c.value > prev[0]:
                worst[c.name] = (c.value, c.tol, seed, c.worst)
    for name, (val, tol, seed, where) in worst.items():
        flag = "ok  " if val <= tol else "FAIL"
        print(f"{flag} {name:45s} {val:10.3e} (tol {tol:g}, seed {seed})")
        if val > tol:
            print(f"     at {where}")


if __name__ == "__main__":
    main()
