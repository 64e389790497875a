"""Compare the conjectured dimension with the tangent space for linear 2 x (c+1) matrices, n = c."""

from __future__ import annotations

from detstrata.classify import all_ones_family, counterexample_scan


def main() -> None:
    for hit in counterexample_scan(all_ones_family(range(3, 6))):
        c = hit.spec.c
        print(f"c={c}: conjectured {hit.conjectured}, tangent {hit.tangent_dim}, "
              f"bound c(c+1) = {c * (c + 1)}, flagged={hit.flagged}")


if __name__ == "__main__":
    main()
