"""Classify the zero-dimensional family with columns 1,2,3,m in P^3 on random instances."""

from __future__ import annotations

import sys

from detstrata.degree_data import DegreeSpec
from detstrata.report import build_report


def main(ms=(1, 2, 3, 4)) -> None:
    print(f"{'m':>2} {'dim W':>6} {'codim':>6} {'dim Hilb':>9}  rule")
    for m in ms:
        a = tuple(sorted((1, 2, 3, m)))
        rep = build_report(DegreeSpec(2, 3, 3, (0, 0), a), seeds=(0, 1, 2))
        v = rep.verdicts
        print(f"{m:>2} {v['dim_W']:>6} {str(v['codim']):>6} {str(v['dim_Hilb_at_X']):>9}  {v['rule']}")


if __name__ == "__main__":
    main(tuple(int(x) for x in sys.argv[1:]) or (1, 2, 3, 4))
