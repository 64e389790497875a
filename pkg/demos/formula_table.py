"""Print the conjectured stratum dimension for a few one-parameter families."""

from __future__ import annotations

from detstrata.degree_data import DegreeSpec
from detstrata.strata_formulas import conjectured_dim

FAMILIES = {
    "curves in P^4, columns 1,1,1,m": (4, (1, 1, 1)),
    "curves in P^4, columns 1,2,3,m": (4, (1, 2, 3)),
    "points in P^3, columns 1,2,3,m": (3, (1, 2, 3)),
    "points in P^4, columns 1,1,1,2,m": (4, (1, 1, 1, 2)),
}


def main() -> None:
    for name, (n, fixed) in FAMILIES.items():
        row = []
        for m in range(1, 9):
            a = tuple(sorted(fixed + (m,)))
            spec = DegreeSpec(2, len(a) - 1, n, (0, 0), a)
            row.append(conjectured_dim(spec).conjectured_dim)
        print(f"{name:36s} m=1..8: {row}")


if __name__ == "__main__":
    main()
