"""Strict vs non-strict dichotomy of the diagonal model, over a ladder.

With a single seminorm level the transported family xi_k = e_k / k keeps
both two-sided constants pinned at 1 along the whole ladder.  Adding a
second level makes the top constant grow like N^2, which is exactly the
trend the verdict machinery is built to catch.
"""
import argparse

import numpy as np

from rieszlab import (WeightedTriplet, make_riesz_basis, strictness_report)


def rule(levels):
    def build(n):
        w = np.arange(1, n + 1, dtype=float)
        tri = WeightedTriplet(n, w, levels)
        return make_riesz_basis(np.diag(w).astype(complex), tri)
    return build


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--ladder", default="8,16,32,64,128")
    args = ap.parse_args()
    ladder = tuple(int(p) for p in args.ladder.split(","))

    for levels in (1, 2):
        report = strictness_report(rule(levels), ladder)
        print(f"levels = {levels}: verdict {report.verdict}")
        print(f"  lower constants {report.lower}")
        for q, vals in sorted(report.upper.items()):
            print(f"  upper level {q}: {vals} (slope "
                  f"{report.upper_slopes.get(q, float('nan')):.3f})")
        print()


if __name__ == "__main__":
    main()
