"""Worked cylinder in so(3): definitional invariants beside the printed A := 1 values."""

import argparse

from ruledlie.example import example_cylinder

QS = ("K", "H", "kappa_g", "kappa_n", "tau_g")


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--t", type=float, default=0.7)
    ap.add_argument("--v", type=float, nargs="+", default=[0.0, 1.0, 2.0])
    args = ap.parse_args()

    rep = example_cylinder(args.t, tuple(args.v), compat=True)
    fr = rep["frenet"]
    print(f"kappa={fr['kappa']:.12g}  tau={fr['tau']:.12g}  tau_G={fr['tau_G']:.12g}  lambda={rep['lambda']:.12g}")
    print("\ndefinitional")
    print(f"{'v':>6s}{'A':>12s}" + "".join(f"{q:>12s}" for q in QS))
    for row in rep["definitional"]:
        print(f"{row['v']:6.2f}{row['A']:12.6f}" + "".join(f"{row[q]:12.6f}" for q in QS))
    print("\nclosed forms with A := 1  (printed value in brackets when different)")
    for row in rep["paper_compat"]:
        cells = []
        for q in QS:
            c = f"{row['reproduced'][q]:.6f}"
            if not row["matches"][q]:
                c += f" [{row['printed'][q]:.6f}]"
            cells.append(f"{q}={c}")
        print(f"v={row['v']:<5g} " + "  ".join(cells))
    print()
    for note in rep["notes"]:
        print("note:", note)


if __name__ == "__main__":
    main()
