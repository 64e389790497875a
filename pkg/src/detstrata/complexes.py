"""
Graded free resolutions of determinantal rings and of M = coker(φ*).

Both complexes are kept as twist multisets: step k is the list of e with
a summand R(e). Hilbert functions follow by alternating sums of monomial
counts, which is exact because both complexes are acyclic for a standard
determinantal matrix.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, combinations_with_replacement
from math import comb, factorial
from typing import Any

from .degree_data import DegreeSpec, nonempty
from .gradedring import num_monomials


@dataclass(frozen=True)
class GradedFreeComplex:
    """Twists of each step of a graded free complex, step 0 first."""

    label: str
    spec: DegreeSpec
    steps: tuple[tuple[int, ...], ...]

    def ranks(self) -> list[int]:
        return [len(s) for s in self.steps]

    def max_twist_magnitude(self) -> int:
        return max((abs(e) for s in self.steps for e in s), default=0)

    def hilbert_function(self, v: int) -> int:
        """Alternating sum of dim R(e)_v over all steps."""
        n = self.spec.n
        return sum((-1) ** k * sum(num_monomials(n, v + e) for e in step)
                   for k, step in enumerate(self.steps))

    def minimality_clashes(self) -> list[tuple[int, int]]:
        """(step, twist) pairs where a twist of step k reappears in step k+1.

        A minimal resolution has a differential with no unit entries, so a
        shared twist between neighbours only can happen with a zero entry.
        """
        out = []
        for k in range(len(self.steps) - 1):
            shared = set(self.steps[k]) & set(self.steps[k + 1])
            out.extend((k, e) for e in sorted(shared))
        return out

    def to_dict(self) -> dict[str, Any]:
        return {"label": self.label, "steps": [sorted(s) for s in self.steps]}


def _wedge_sym_twists(a, b, wedge: int, sym: int) -> tuple[int, ...]:
    """Twists of ∧^wedge G* ⊗ S_sym(F) ⊗ ∧^t F."""
    sb = sum(b)
    return tuple(sorted(
        -sum(cols) + sum(rows) + sb
        for cols in combinations(a, wedge)
        for rows in combinations_with_replacement(b, sym)
    ))


def en_twists(a, b) -> list[tuple[int, ...]]:
    """EN twists for raw degree lists of any shape with len(a) >= len(b) >= 1.

    Used where the row count may drop below two, e.g. for submatrices.
    """
    t, cols = len(b), len(a)
    if t < 1 or cols < t:
        raise ValueError("need at least one row and no fewer columns than rows")
    steps = [(0,)]
    for k in range(1, cols - t + 2):
        steps.append(_wedge_sym_twists(a, b, t + k - 1, k - 1))
    return steps


def en_complex(spec: DegreeSpec) -> GradedFreeComplex:
    """Eagon-Northcott resolution of A = R/I_t(𝒜).

    Step k (1 <= k <= c) is ∧^{t+k-1} G* ⊗ S_{k-1} F ⊗ ∧^t F.
    """
    return GradedFreeComplex("EN", spec, tuple(en_twists(spec.a, spec.b)))


def br_complex(spec: DegreeSpec) -> GradedFreeComplex:
    """Buchsbaum-Rim resolution of M = coker(φ*: G* -> F*).

    Step 0 is F*, step 1 is G*, step k >= 2 is ∧^{t+k-1} G* ⊗ S_{k-2} F ⊗ ∧^t F.
    """
    steps = [tuple(sorted(-b for b in spec.b)), tuple(sorted(-a for a in spec.a))]
    for k in range(2, spec.c + 1):
        steps.append(_wedge_sym_twists(spec.a, spec.b, spec.t + k - 1, k - 2))
    return GradedFreeComplex("BR", spec, tuple(steps))


def en_rank(spec: DegreeSpec, k: int) -> int:
    """Rank of EN step k: C(t+c-1, t+k-1) C(t+k-2, k-1)."""
    if k == 0:
        return 1
    return comb(spec.t + spec.c - 1, spec.t + k - 1) * comb(spec.t + k - 2, k - 1)


def br_rank(spec: DegreeSpec, k: int) -> int:
    if k == 0:
        return spec.t
    if k == 1:
        return spec.t + spec.c - 1
    return comb(spec.t + spec.c - 1, spec.t + k - 1) * comb(spec.t + k - 3, k - 2)


def twist_hilbert_function(steps, n: int, v: int) -> int:
    """Alternating monomial-count sum for bare twist lists."""
    return sum((-1) ** k * sum(num_monomials(n, v + e) for e in step)
               for k, step in enumerate(steps))


def hilbert_function(spec: DegreeSpec, v: int) -> int:
    """dim A_v from the Eagon-Northcott twists (zero in negative degrees)."""
    if v < 0:
        return 0
    return en_complex(spec).hilbert_function(v)


def generator_degrees(spec: DegreeSpec) -> list[int]:
    """Degrees of the t x t minors, one per t-subset of columns."""
    sb = sum(spec.b)
    return sorted(sum(cols) - sb for cols in combinations(spec.a, spec.t))


def br_k_readout(spec: DegreeSpec, shift: int | None = None) -> int:
    """Σ_{k>=2} (-1)^k dim of the BR step k twisted by ``shift`` in degree 0.

    With ``shift = a_{t+c-2}`` this is the degree-0 Hom from coker φ to
    R(a_{t+c-2}); it recovers K_c whenever a_0 > b_t.
    """
    cx = br_complex(spec)
    top = spec.a_last if shift is None else shift
    n = spec.n
    return sum((-1) ** k * sum(num_monomials(n, top + e) for e in step)
               for k, step in enumerate(cx.steps) if k >= 2)


def _newton_to_power(values: list[int], start: int) -> list[Fraction]:
    """Power-basis coefficients of the interpolant through (start+i, values[i])."""
    m = len(values)
    # forward differences, then expand Σ Δ^k f(start) C(v - start, k)
    diffs = [Fraction(x) for x in values]
    lead = []
    for k in range(m):
        lead.append(diffs[0])
        diffs = [diffs[i + 1] - diffs[i] for i in range(len(diffs) - 1)]
    coeffs = [Fraction(0)] * m
    # basis polynomial C(v - start, k) built incrementally
    basis = [Fraction(1)]
    for k in range(m):
        for i, b in enumerate(basis):
            coeffs[i] += lead[k] * b
        # multiply basis by (v - start - k) / (k + 1)
        nxt = [Fraction(0)] * (len(basis) + 1)
        for i, b in enumerate(basis):
            nxt[i + 1] += b / (k + 1)
            nxt[i] -= b * (start + k) / (k + 1)
        basis = nxt
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


def _eval_poly(coeffs: list[Fraction], v: int) -> Fraction:
    return sum((c * v ** i for i, c in enumerate(coeffs)), Fraction(0))


@dataclass
class HilbertData:
    """Hilbert function samples, exact Hilbert polynomial and derived invariants.

    ``hp`` holds power-basis coefficients (constant term first). ``genus``
    is only set for curves.
    """

    hf: list[int]
    hp: list[Fraction]
    degree: int
    genus: int | None
    stabilizes_at: int
    dimension: int
    extra: dict[str, Any] = field(default_factory=dict)

    def hp_at(self, v: int) -> Fraction:
        return _eval_poly(self.hp, v)

    def to_dict(self) -> dict[str, Any]:
        return {
            "hf": list(self.hf),
            "hp": [str(c) for c in self.hp],
            "degree": self.degree,
            "genus": self.genus,
            "stabilizes_at": self.stabilizes_at,
            "dimension": self.dimension,
        }


def hilbert_polynomial(spec: DegreeSpec, upto: int | None = None) -> HilbertData:
    """Hilbert polynomial by interpolation past the largest EN twist.

    ``upto`` sets how many Hilbert function values are stored (default:
    through the stabilization degree plus two).
    """
    if spec.n < spec.c:
        raise ValueError("no scheme: n < c")
    if not nonempty(spec):
        raise ValueError("empty stratum")
    cx = en_complex(spec)
    dim = spec.n - spec.c
    start = cx.max_twist_magnitude() + 1
    samples = [cx.hilbert_function(start + i) for i in range(spec.n + 1)]
    hp = _newton_to_power(samples, start)
    if len(hp) - 1 > dim:
        raise ArithmeticError("Hilbert polynomial degree exceeds the scheme dimension")
    stab = start
    while stab > 0 and cx.hilbert_function(stab - 1) == _eval_poly(hp, stab - 1):
        stab -= 1
    lead = hp[dim] if len(hp) > dim else Fraction(0)
    degree = lead * factorial(dim)
    if degree.denominator != 1:
        raise ArithmeticError("non-integral degree")
    genus = None
    if dim == 1:
        genus = 1 - hp[0]
        if genus.denominator != 1:
            raise ArithmeticError("non-integral genus")
        genus = int(genus)
    top = stab + 2 if upto is None else upto
    hf = [cx.hilbert_function(v) for v in range(top + 1)]
    return HilbertData(hf=hf, hp=hp, degree=int(degree), genus=genus,
                       stabilizes_at=stab, dimension=dim)


def h_vector(spec: DegreeSpec, length: int) -> list[int]:
    """First ``length`` values of the Hilbert function of A."""
    cx = en_complex(spec)
    return [cx.hilbert_function(v) for v in range(length)]


def gradalg_iso_check(spec: DegreeSpec) -> bool:
    """For points: HF equals the degree in every degree where a minor lives.

    This forces the local cohomology H^1_m(A) to vanish in those degrees, a
    sufficient condition for the postulation Hilbert scheme to agree with
    the Hilbert scheme at X.
    """
    if spec.n != spec.c:
        raise ValueError("defined for zero-dimensional schemes (n = c) only")
    deg = hilbert_polynomial(spec).degree
    return all(hilbert_function(spec, d) == deg for d in set(generator_degrees(spec)))
