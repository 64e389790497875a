"""
Degree matrices of determinantal strata and the arithmetic attached to them.

A stratum is fixed by a homogeneous map F = ⊕ R(b_i) -> G = ⊕ R(a_j)
between free modules of ranks t and t+c-1. Entry (i, j) of the matrix has
degree a_j - b_i. Indices follow the usual convention: ``a`` is 0-based
(a_0 .. a_{t+c-2}) while ``b`` is 1-based (b_1 .. b_t); in code both are
plain Python lists, so ``b[i-1]`` is b_i.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any, Mapping

import numpy as np


class SpecError(ValueError):
    """Raised when raw degree data violates the structural rules.

    ``reasons`` lists every individual violation found.
    """

    def __init__(self, reasons: list[str]):
        super().__init__("; ".join(reasons))
        self.reasons = list(reasons)


@dataclass(frozen=True)
class DegreeSpec:
    """Degree data (t, c, n, b, a) of a t x (t+c-1) homogeneous matrix in P^n."""

    t: int
    c: int
    n: int
    b: tuple[int, ...]
    a: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "a", tuple(int(x) for x in self.a))
        object.__setattr__(self, "b", tuple(int(x) for x in self.b))
        problems = _structural_problems(self.t, self.c, self.n, self.b, self.a)
        if problems:
            raise SpecError(problems)

    @property
    def columns(self) -> int:
        return self.t + self.c - 1

    @property
    def a_last(self) -> int:
        return self.a[-1]

    @property
    def has_scheme(self) -> bool:
        """Instances need n >= c; formulas are evaluated regardless."""
        return self.n >= self.c

    def entry_degrees(self) -> np.ndarray:
        """``deg[i, j] = a_j - b_i`` (rows 0-based here)."""
        return np.array(self.a)[None, :] - np.array(self.b)[:, None]

    def mask(self) -> np.ndarray:
        """True where the entry may be nonzero; a_j <= b_i forces a zero entry."""
        return self.entry_degrees() > 0

    def delete_last_column(self) -> DegreeSpec:
        """Spec of the matrix with its last column removed (c drops by one)."""
        if self.c <= 2:
            raise ValueError("c = 2 has no column to delete within the strata range")
        return DegreeSpec(self.t, self.c - 1, self.n, self.b, self.a[:-1])

    def with_c(self, i: int) -> DegreeSpec:
        """Spec of X_i in the column-deletion flag (first t+i-1 columns)."""
        if not 2 <= i <= self.c:
            raise ValueError(f"flag index {i} outside 2..{self.c}")
        return DegreeSpec(self.t, i, self.n, self.b, self.a[:self.t + i - 1])

    def to_dict(self) -> dict[str, Any]:
        return {"t": self.t, "c": self.c, "n": self.n, "a": list(self.a), "b": list(self.b)}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_dict(cls, raw: Mapping[str, Any]) -> DegreeSpec:
        return validate(raw)

    def __str__(self) -> str:
        return f"t={self.t} c={self.c} n={self.n} b={list(self.b)} a={list(self.a)}"


def _structural_problems(t, c, n, b, a) -> list[str]:
    out = []
    if t < 2:
        out.append(f"t must be at least 2, got {t}")
    if c < 2:
        out.append(f"c must be at least 2, got {c}")
    if n < 0:
        out.append(f"n must be nonnegative, got {n}")
    if len(b) != t:
        out.append(f"b has length {len(b)}, expected t = {t}")
    if len(a) != t + c - 1:
        out.append(f"a has length {len(a)}, expected t+c-1 = {t + c - 1}")
    if list(b) != sorted(b):
        out.append(f"b must be sorted ascending, got {list(b)}")
    if list(a) != sorted(a):
        out.append(f"a must be sorted ascending, got {list(a)}")
    return out


def validate(raw: Mapping[str, Any] | DegreeSpec) -> DegreeSpec:
    """Normalize raw degree data, rejecting it with every violation listed.

    ``n < c`` is accepted (formulas still make sense); check
    :attr:`DegreeSpec.has_scheme` before building instances.
    """
    if isinstance(raw, DegreeSpec):
        return raw
    reasons = []
    vals = {}
    for key in ("t", "c", "n"):
        if key not in raw:
            reasons.append(f"missing field {key!r}")
            continue
        v = raw[key]
        if isinstance(v, bool) or not isinstance(v, (int, np.integer)):
            reasons.append(f"field {key!r} must be an integer")
            continue
        vals[key] = int(v)
    for key in ("a", "b"):
        if key not in raw:
            reasons.append(f"missing field {key!r}")
            continue
        seq = raw[key]
        if isinstance(seq, (str, bytes)) or not hasattr(seq, "__iter__"):
            reasons.append(f"field {key!r} must be a list of integers")
            continue
        seq = list(seq)
        if any(isinstance(x, bool) or not isinstance(x, (int, np.integer)) for x in seq):
            reasons.append(f"field {key!r} must contain only integers")
            continue
        vals[key] = tuple(int(x) for x in seq)
    if reasons:
        raise SpecError(reasons)
    problems = _structural_problems(vals["t"], vals["c"], vals["n"], vals["b"], vals["a"])
    if problems:
        raise SpecError(problems)
    return DegreeSpec(vals["t"], vals["c"], vals["n"], vals["b"], vals["a"])


def ell(spec: DegreeSpec, i: int) -> int:
    """ℓ_i = a_0 + ... + a_{t+i-2} - (b_1 + ... + b_t) for 2 <= i <= c."""
    if not 2 <= i <= spec.c:
        raise ValueError(f"ell index {i} outside 2..{spec.c}")
    return sum(spec.a[:spec.t + i - 1]) - sum(spec.b)


def h_invariant(spec: DegreeSpec, i: int) -> int:
    """h_{i-3} = 2 a_{t+i-2} - ℓ_i + n for 3 <= i <= c."""
    if not 3 <= i <= spec.c:
        raise ValueError(f"h index {i} outside 3..{spec.c}")
    return 2 * spec.a[spec.t + i - 2] - ell(spec, i) + spec.n


def nonempty(spec: DegreeSpec) -> bool:
    """The stratum is nonempty iff a_{i-1} > b_i for i = 1..t."""
    return all(spec.a[i - 1] > spec.b[i - 1] for i in range(1, spec.t + 1))


def _alpha_condition(spec: DegreeSpec, alpha: int) -> bool:
    k = min(alpha, spec.t)
    return all(spec.a[i - k] >= spec.b[i - 1] for i in range(k, spec.t + 1))


SATURATED = "saturated"


@dataclass(frozen=True)
class AlphaLevel:
    """Largest α with a_{i-min(α,t)} >= b_i, and the singular-locus codim bounds.

    ``alpha_max`` is ``"saturated"`` when the condition holds at α = t (it
    then holds for every larger α), an integer in 1..t-1 otherwise, or
    ``None`` if it already fails at α = 1. ``bounds[j]`` is the lower
    bound for the codimension of Sing(X_j) in X_j, j = 2..c.
    """

    alpha_max: int | str | None
    bounds: dict[int, int | None]


def alpha_level(spec: DegreeSpec) -> AlphaLevel:
    best = None
    for alpha in range(1, spec.t + 1):
        if not _alpha_condition(spec, alpha):
            break
        best = alpha
    if best == spec.t:
        return AlphaLevel(SATURATED, {j: j + 2 for j in range(2, spec.c + 1)})
    if best is None:
        return AlphaLevel(None, {j: None for j in range(2, spec.c + 1)})
    return AlphaLevel(best, {j: min(2 * best - 1, j + 2) for j in range(2, spec.c + 1)})


def alpha_holds(spec: DegreeSpec, alpha: int) -> bool:
    """Whether the genericity condition holds at level α (α >= 1)."""
    if alpha < 1:
        raise ValueError("alpha must be at least 1")
    return _alpha_condition(spec, alpha)


def dim0new_check(spec: DegreeSpec) -> bool:
    """Sufficient degree condition for the Hom vanishing inequality on general X.

    Requires a_0 > b_t and a_{t+c-2} > a_{t-2} when c <= 5, or
    a_{t+3} > a_{t-2} when c > 5.
    """
    if spec.c < 3:
        raise ValueError("condition defined for c >= 3 only")
    if spec.a[0] <= spec.b[-1]:
        return False
    top = spec.a[spec.t + spec.c - 2] if spec.c <= 5 else spec.a[spec.t + 3]
    return top > spec.a[spec.t - 2]


@dataclass(frozen=True)
class HypothesisFlags:
    nonempty: bool
    alpha_max: int | str | None
    alpha_bounds: dict[int, int | None]
    dim0new_ok: bool | None
    column_delete_chain: list[int] = field(default_factory=list)

    def to_dict(self) -> dict[str, Any]:
        return {
            "nonempty": self.nonempty,
            "alpha_max": self.alpha_max,
            "alpha_bounds": {str(k): v for k, v in self.alpha_bounds.items()},
            "dim0new_ok": self.dim0new_ok,
            "column_delete_chain": list(self.column_delete_chain),
        }


def hypothesis_flags(spec: DegreeSpec) -> HypothesisFlags:
    """All degree-only predicates in one record.

    ``column_delete_chain`` lists the degrees of the columns removed, in
    order, to pass from X_c down to X_2.
    """
    lvl = alpha_level(spec)
    chain = [spec.a[spec.t + i - 2] for i in range(spec.c, 2, -1)]
    return HypothesisFlags(
        nonempty=nonempty(spec),
        alpha_max=lvl.alpha_max,
        alpha_bounds=lvl.bounds,
        dim0new_ok=dim0new_check(spec) if spec.c >= 3 else None,
        column_delete_chain=chain,
    )
