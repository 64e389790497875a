"""
Closed-form dimension counts for determinantal strata.

All binomials follow the convention ``bin(x, n) = 0`` for ``x < n``, so
``bin(x + n, n)`` is the number of monomials of degree ``x`` in n+1
variables. Python integers keep every intermediate exact.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, combinations_with_replacement
from math import comb
from typing import Any

from .degree_data import DegreeSpec, h_invariant, nonempty


def binom(x: int, n: int) -> int:
    """C(x, n), zero whenever x < n."""
    return comb(x, n) if x >= n else 0


def _lambda_terms(spec: DegreeSpec) -> dict[str, int]:
    n, a, b = spec.n, spec.a, spec.b
    return {
        "a_minus_b": sum(binom(ai - bj + n, n) for ai in a for bj in b),
        "b_minus_a": sum(binom(bj - ai + n, n) for ai in a for bj in b),
        "a_minus_a": sum(binom(ai - aj + n, n) for ai in a for aj in a),
        "b_minus_b": sum(binom(bi - bj + n, n) for bi in b for bj in b),
    }


def lambda_c(spec: DegreeSpec) -> int:
    """λ_c: the expected dimension count from the four double binomial sums."""
    s = _lambda_terms(spec)
    return s["a_minus_b"] + s["b_minus_a"] - s["a_minus_a"] - s["b_minus_b"] + 1


def _k_general_terms(spec: DegreeSpec, i: int) -> list[tuple[int, int]]:
    """(sign, binomial argument) pairs of K_i from the general signed sum.

    With k = i - 3, the sum runs over r + s = k, strictly increasing
    a-indices in 0..t+k and weakly increasing b-indices in 1..t.
    """
    k = i - 3
    h = h_invariant(spec, i)
    out = []
    for r in range(k + 1):
        s = k - r
        sign = -1 if (k - r) % 2 else 1
        for ai in combinations(spec.a[:spec.t + k + 1], r):
            for bj in combinations_with_replacement(spec.b, s):
                out.append((sign, h + sum(ai) + sum(bj)))
    return out


def k_general(spec: DegreeSpec, i: int) -> int:
    """K_i evaluated with the general formula for any 3 <= i <= c."""
    if not 3 <= i <= spec.c:
        raise ValueError(f"K index {i} outside 3..{spec.c}")
    return sum(sign * binom(x, spec.n) for sign, x in _k_general_terms(spec, i))


def k_term(spec: DegreeSpec, i: int) -> int:
    """Correction term K_i (3 <= i <= c).

    K_3 and K_4 use their short closed forms; they coincide with
    :func:`k_general`, which covers i >= 5.
    """
    if not 3 <= i <= spec.c:
        raise ValueError(f"K index {i} outside 3..{spec.c}")
    n = spec.n
    if i == 3:
        return binom(h_invariant(spec, 3), n)
    if i == 4:
        h1 = h_invariant(spec, 4)
        return (sum(binom(h1 + aj, n) for aj in spec.a[:spec.t + 2])
                - sum(binom(h1 + bi, n) for bi in spec.b))
    return k_general(spec, i)


@dataclass
class FormulaReport:
    """λ_c, the K_i and their sum, with per-term audit data."""

    spec: DegreeSpec
    nonempty: bool
    lambda_c: int
    K: dict[int, int]
    conjectured_dim: int
    lambda_terms: dict[str, int] = field(default_factory=dict)
    K_terms: dict[int, list[list[int]]] = field(default_factory=dict)

    def to_dict(self) -> dict[str, Any]:
        return {
            "nonempty": self.nonempty,
            "lambda_c": self.lambda_c,
            "K": {str(i): v for i, v in self.K.items()},
            "conjectured_dim": self.conjectured_dim,
            "lambda_terms": dict(self.lambda_terms),
            "K_terms": {str(i): [list(x) for x in v] for i, v in self.K_terms.items()},
        }


def conjectured_dim(spec: DegreeSpec) -> FormulaReport:
    """λ_c + K_3 + ... + K_c with a breakdown of every contribution.

    An empty stratum reports dimension -1.
    """
    lam = lambda_c(spec)
    ks = {i: k_term(spec, i) for i in range(3, spec.c + 1)}
    audit = {}
    for i in ks:
        audit[i] = [[sign, x, binom(x, spec.n)] for sign, x in _k_general_terms(spec, i)
                    if binom(x, spec.n)]
    ok = nonempty(spec)
    return FormulaReport(
        spec=spec,
        nonempty=ok,
        lambda_c=lam,
        K=ks,
        conjectured_dim=lam + sum(ks.values()) if ok else -1,
        lambda_terms=_lambda_terms(spec),
        K_terms=audit,
    )


def uniform_dim(t: int, c: int, n: int, d: int) -> int:
    """Conjectured dimension when every entry has the same degree d >= 1."""
    if d < 1:
        raise ValueError("entry degree must be at least 1")
    cols = t + c - 1
    return t * cols * comb(d + n, n) - t * t - cols * cols + 1


def mb_dim0(spec: DegreeSpec) -> int:
    """Degree-0 dimension of M_B twisted by the last column degree a_{t+c-2}."""
    if spec.c < 3:
        raise ValueError("needs c >= 3")
    n, top = spec.n, spec.a_last
    return (sum(binom(top - bi + n, n) for bi in spec.b)
            - sum(binom(top - aj + n, n) for aj in spec.a)
            + k_term(spec, spec.c) + 1)


def maineq_rhs(spec: DegreeSpec) -> int:
    """Upper bound for the degree-0 Hom from I_Y into I_{X/Y}."""
    if spec.c < 3:
        raise ValueError("needs c >= 3")
    n, top = spec.n, spec.a_last
    return sum(binom(aj - top + n, n) for aj in spec.a[:-1])


def maineq_holds(spec: DegreeSpec, hom_value: int) -> bool:
    if hom_value < 0:
        raise ValueError("hom dimension must be nonnegative")
    return hom_value <= maineq_rhs(spec)


def inductive_dim(spec: DegreeSpec, dim_w_prime: int, mb0: int, hom_value: int) -> int:
    """dim W(b;a') + dim M_B(a_{t+c-2})_0 - 1 - hom(I_Y, I_{X/Y})_0."""
    if spec.c < 3:
        raise ValueError("needs c >= 3: there is no deleted column")
    return dim_w_prime + mb0 - 1 - hom_value


def inductive_dim_consistent(dim_w_prime: int, mb0: int, hom_value: int) -> bool:
    """False when the Hom term exceeds everything it is subtracted from."""
    return 0 <= hom_value <= dim_w_prime + mb0 - 1


def lambda_step(spec: DegreeSpec) -> int:
    """Right side of the identity for λ_c - λ_{c-1} after deleting the last column."""
    if spec.c < 3:
        raise ValueError("needs c >= 3")
    n, top = spec.n, spec.a_last
    return (sum(binom(top - bi + n, n) for bi in spec.b)
            - sum(binom(top - aj + n, n) for aj in spec.a)
            - sum(binom(aj - top + n, n) for aj in spec.a[:-1]))
