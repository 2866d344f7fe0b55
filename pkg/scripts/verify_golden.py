#!/usr/bin/env python3
"""End-to-end convergence experiment on the bundled instance.

Computes the predicted constant once, then the empirical lattice sum at each
requested dilation, and prints the comparison as CSV plus a short summary.

    python3 scripts/verify_golden.py
    python3 scripts/verify_golden.py --X-list 100,200,400,800 --P 10000 --V 6
"""

import argparse
import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from r2forms.counter import convergence_table, eta_reference
from r2forms.euler import predicted_constant
from r2forms.forms import load_instance

GOLDEN = Path(__file__).resolve().parents[1] / "instances" / "golden.json"


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--instance", default=str(GOLDEN))
    parser.add_argument("--X-list", default="125,250,500,1000")
    parser.add_argument("--P", type=int, default=10**4)
    parser.add_argument("--V", type=int, default=6)
    parser.add_argument("--threads", type=int, default=1)
    args = parser.parse_args()

    inst = load_instance(args.instance)
    xs = [float(tok) for tok in args.X_list.split(",") if tok]

    t0 = time.time()
    report = predicted_constant(inst, P=args.P, V=args.V)
    print(
        f"# predicted constant {report.predicted_constant:.10g} "
        f"(volume {report.volume:.6g}, product {report.product:.10g}, "
        f"P={args.P}, V={args.V}, {time.time() - t0:.1f}s)",
        file=sys.stderr,
    )
    print(f"# eta reference {eta_reference():.10g}", file=sys.stderr)

    rows = convergence_table(inst, xs, P=args.P, V=args.V, threads=args.threads)
    print("X,S,predicted,ratio,eta_ref")
    for row in rows:
        print(
            f"{row.X:.12g},{row.S},{row.predicted_main_term:.12g},"
            f"{row.ratio:.12g},{row.eta_reference:.12g}"
        )
    for row in rows:
        print(
            f"# X={row.X:6g}  ratio={row.ratio:.6f}  |1-ratio|={abs(1 - row.ratio):.6f}  "
            f"(1-ratio)*(log X)^eta={row.error_scaled:+.6f}",
            file=sys.stderr,
        )


if __name__ == "__main__":
    main()
