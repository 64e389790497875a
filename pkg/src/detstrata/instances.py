"""
Random determinantal instances over F_p and their column-deletion flags.

An instance fixes a t x (t+c-1) matrix of dense random forms with
``deg f_ij = a_j - b_i`` (entries with a_j <= b_i are zero). Deleting the
last column repeatedly gives the flag X = X_c ⊂ X_{c-1} ⊂ ... ⊂ X_2; the
ideal of X_i is generated by the maximal minors of the first t+i-1
columns.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import combinations
from pathlib import Path
from typing import Any

import numpy as np

from . import exactfield as ef
from .complexes import en_twists, twist_hilbert_function
from .degree_data import DegreeSpec, nonempty
from .exactfield import DEFAULT_PRIME
from .gradedring import Ideal, Poly, PolyRing, QuotientRing


class NoSchemeError(ValueError):
    """The degree data has n < c, so there is no scheme to instantiate."""


def _det(entries: list[list[Poly]], rows: tuple[int, ...], cols: tuple[int, ...],
         memo: dict) -> Poly:
    """Laplace expansion along the first listed row, memoized on (rows, cols)."""
    key = (rows, cols)
    if key in memo:
        return memo[key]
    r0 = rows[0]
    if len(rows) == 1:
        out = entries[r0][cols[0]]
    else:
        out = None
        for k, c in enumerate(cols):
            f = entries[r0][c]
            if f.is_zero():
                continue
            sub = _det(entries, rows[1:], cols[:k] + cols[k + 1:], memo)
            term = f * sub
            if k % 2:
                term = -term
            out = term if out is None else out + term
        if out is None:
            # all entries in the row vanish; keep the homogeneous degree
            deg = sum(entries[r][c].degree for r, c in zip(rows, cols))
            out = entries[r0][cols[0]].ring.zero(deg)
    memo[key] = out
    return out


@dataclass
class PolyMatrix:
    """Homogeneous matrix with ``deg f_ij = a_j - b_i``; masked entries are zero."""

    spec: DegreeSpec
    ring: PolyRing
    entries: list[list[Poly]]
    seed: int | None = None

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.entries), len(self.entries[0]) if self.entries else 0

    def maximal_minors(self, ncols: int | None = None,
                       must_use: int | None = None) -> list[tuple[tuple[int, ...], Poly]]:
        """t x t minors over column subsets of the first ``ncols`` columns.

        Subsets come in lexicographic order. With ``must_use`` set, only
        subsets containing that column index are returned.
        """
        t = len(self.entries)
        ncols = self.shape[1] if ncols is None else ncols
        memo: dict = {}
        rows = tuple(range(t))
        out = []
        for cols in combinations(range(ncols), t):
            if must_use is not None and must_use not in cols:
                continue
            out.append((cols, _det(self.entries, rows, cols, memo)))
        return out

    def row_minors(self, rows: tuple[int, ...]) -> list[Poly]:
        """Maximal minors of the submatrix on the given rows."""
        memo: dict = {}
        return [_det(self.entries, rows, cols, memo)
                for cols in combinations(range(self.shape[1]), len(rows))]

    def to_dict(self) -> dict[str, Any]:
        return {
            "rows": len(self.entries),
            "cols": self.shape[1],
            "entries": [[{"degree": f.degree,
                          "coefficients": {str(i): int(f.coeffs[i]) for i in np.flatnonzero(f.coeffs)}}
                         for f in row] for row in self.entries],
        }


def random_matrix(spec: DegreeSpec, prime: int = DEFAULT_PRIME, seed: int = 0,
                  ring: PolyRing | None = None) -> PolyMatrix:
    """Dense random entries, drawn row by row from ``numpy.random.default_rng(seed)``.

    Masked entries (a_j <= b_i) are zero and consume no random draws.
    """
    ring = PolyRing(spec.n, prime) if ring is None else ring
    rng = np.random.default_rng(seed)
    deg = spec.entry_degrees()
    entries = []
    for i in range(spec.t):
        row = []
        for j in range(spec.columns):
            d = int(deg[i, j])
            row.append(ring.random(d, rng) if d > 0 else ring.zero(d))
        entries.append(row)
    return PolyMatrix(spec, ring, entries, seed)


@dataclass
class HFCertificate:
    """Per flag index i, rows of (degree, predicted HF, instance HF)."""

    cutoff: int
    table: dict[int, list[tuple[int, int, int]]] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(p == o for rows in self.table.values() for _, p, o in rows)

    def failures(self) -> list[tuple[int, int, int, int]]:
        return [(i, v, p, o) for i, rows in self.table.items() for v, p, o in rows if p != o]

    def to_dict(self) -> dict[str, Any]:
        return {
            "cutoff": self.cutoff,
            "passed": self.passed,
            "table": {str(i): [list(r) for r in rows] for i, rows in self.table.items()},
        }


class FlagInstance:
    """A random matrix together with the ideals and rings of its whole flag."""

    def __init__(self, spec: DegreeSpec, prime: int = DEFAULT_PRIME, seed: int = 0,
                 matrix: PolyMatrix | None = None):
        if not spec.has_scheme:
            raise NoSchemeError(f"n = {spec.n} < c = {spec.c}: no scheme to instantiate")
        self.spec = spec
        self.prime = ef.check_prime(prime)
        self.seed = seed
        self.ring = PolyRing(spec.n, self.prime)
        self.matrix = random_matrix(spec, self.prime, seed, self.ring) if matrix is None else matrix
        self.nonempty = nonempty(spec)
        self._minors = self.matrix.maximal_minors()
        self._ideals: dict[int, Ideal] = {}
        self._rings: dict[int, QuotientRing] = {}
        self._good: bool | None = None

    def __repr__(self) -> str:
        return f"FlagInstance({self.spec}, p={self.prime}, seed={self.seed})"

    def ncols(self, i: int) -> int:
        return self.spec.t + i - 1

    def _check_index(self, i: int) -> None:
        if not 2 <= i <= self.spec.c:
            raise ValueError(f"flag index {i} outside 2..{self.spec.c}")

    def flag_spec(self, i: int) -> DegreeSpec:
        self._check_index(i)
        return self.spec.with_c(i)

    def minors(self, i: int) -> list[Poly]:
        """Generators of I_{X_i}: minors of the first t+i-1 columns, lexicographic subsets."""
        self._check_index(i)
        k = self.ncols(i)
        return [m for cols, m in self._minors if max(cols) < k]

    def minor_columns(self, i: int) -> list[tuple[int, ...]]:
        self._check_index(i)
        k = self.ncols(i)
        return [cols for cols, _ in self._minors if max(cols) < k]

    def relative_minors(self, i: int) -> list[Poly]:
        """Minors of X_i that use its last column; they generate I_{X_i}/I_{X_{i-1}}."""
        self._check_index(i)
        k = self.ncols(i)
        return [m for cols, m in self._minors if max(cols) == k - 1]

    def ideal(self, i: int) -> Ideal:
        self._check_index(i)
        if i not in self._ideals:
            self._ideals[i] = Ideal(self.ring, self.minors(i))
        return self._ideals[i]

    def quotient(self, i: int) -> QuotientRing:
        if i not in self._rings:
            self._rings[i] = QuotientRing(self.ideal(i))
        return self._rings[i]

    def predicted_hf(self, i: int, v: int) -> int:
        if v < 0:
            return 0
        sp = self.flag_spec(i)
        return twist_hilbert_function(en_twists(sp.a, sp.b), sp.n, v)

    def default_cutoff(self) -> int:
        """Largest EN twist magnitude over the flag, plus n + 2."""
        top = max(abs(e) for i in range(2, self.spec.c + 1)
                  for step in en_twists(self.flag_spec(i).a, self.spec.b) for e in step)
        return top + self.spec.n + 2

    def is_good(self, cutoff: int | None = None) -> bool:
        """Best-effort goodness: the submatrix without the last row has maximal
        minors whose Hilbert function matches the generic prediction, i.e. they
        cut out the expected codimension c+1.
        """
        if self._good is not None and cutoff is None:
            return self._good
        if not self.nonempty or any(all(row[j].is_zero() for row in self.matrix.entries)
                                    for j in range(self.spec.columns)):
            self._good = False
            return False
        t = self.spec.t
        rows = tuple(range(t - 1))
        gens = self.matrix.row_minors(rows)
        ideal = Ideal(self.ring, gens)
        a, b = self.spec.a, self.spec.b[:t - 1]
        if any(ai <= bi for ai, bi in zip(a, b)):
            self._good = False
            return False
        steps = en_twists(a, b)
        cutoff = self.default_cutoff() if cutoff is None else cutoff
        ok = all(ideal.hilbert_function(v) == twist_hilbert_function(steps, self.spec.n, v)
                 for v in range(cutoff + 1))
        self._good = ok
        return ok

    def to_dict(self) -> dict[str, Any]:
        return {
            "spec": self.spec.to_dict(),
            "prime": self.prime,
            "seed": self.seed,
            "monomial_order": "graded lexicographic, x0 > x1 > ... > xn; coefficient keys index that order",
            "matrix": self.matrix.to_dict(),
        }

    def dump(self, path: str | Path) -> None:
        """Write entries as coefficient lists keyed by monomial index."""
        Path(path).write_text(json.dumps(self.to_dict(), indent=1, sort_keys=True))


def random_instance(spec: DegreeSpec, prime: int = DEFAULT_PRIME, seed: int = 0) -> FlagInstance:
    """Instance with the full flag; rejects n < c."""
    return FlagInstance(spec, prime, seed)


def load_instance(path: str | Path) -> FlagInstance:
    """Rebuild an instance written by :meth:`FlagInstance.dump`."""
    raw = json.loads(Path(path).read_text())
    spec = DegreeSpec(raw["spec"]["t"], raw["spec"]["c"], raw["spec"]["n"],
                      tuple(raw["spec"]["b"]), tuple(raw["spec"]["a"]))
    ring = PolyRing(spec.n, raw["prime"])
    entries = []
    for row in raw["matrix"]["entries"]:
        out = []
        for e in row:
            v = np.zeros(ring.dim(e["degree"]), dtype=np.int64)
            for k, c in e["coefficients"].items():
                v[int(k)] = c
            out.append(Poly(ring, e["degree"], v))
        entries.append(out)
    return FlagInstance(spec, raw["prime"], raw["seed"], PolyMatrix(spec, ring, entries, raw["seed"]))


def hf_certify(instance: FlagInstance, cutoff: int | None = None) -> HFCertificate:
    """Compare instance Hilbert functions with the EN prediction along the flag."""
    cutoff = instance.default_cutoff() if cutoff is None else cutoff
    cert = HFCertificate(cutoff)
    for i in range(2, instance.spec.c + 1):
        ideal = instance.ideal(i)
        cert.table[i] = [(v, instance.predicted_hf(i, v), ideal.hilbert_function(v))
                         for v in range(cutoff + 1)]
    return cert


@dataclass
class FlagPair:
    """The pair X = X_i ⊂ Y = X_{i-1} with both rings and the relative ideal."""

    instance: FlagInstance
    i: int

    @property
    def spec_x(self) -> DegreeSpec:
        return self.instance.flag_spec(self.i)

    @property
    def spec_y(self) -> DegreeSpec:
        return self.instance.flag_spec(self.i - 1)

    @property
    def ideal_x(self) -> Ideal:
        return self.instance.ideal(self.i)

    @property
    def ideal_y(self) -> Ideal:
        return self.instance.ideal(self.i - 1)

    @property
    def ring_a(self) -> QuotientRing:
        return self.instance.quotient(self.i)

    @property
    def ring_b(self) -> QuotientRing:
        return self.instance.quotient(self.i - 1)

    def relative_generators(self) -> list[Poly]:
        return self.instance.relative_minors(self.i)


def delete_column(instance: FlagInstance, i: int) -> FlagPair:
    """The pair (X_i ⊂ X_{i-1}) obtained by deleting the last column of 𝒜_i."""
    if not 3 <= i <= instance.spec.c:
        raise ValueError(f"column deletion needs 3 <= i <= {instance.spec.c}, got {i}")
    return FlagPair(instance, i)


@dataclass(frozen=True)
class RelativePiece:
    """Echelon basis of (I_X)_d / (I_Y)_d in the standard coordinates of B_d."""

    degree: int
    basis: np.ndarray
    pivots: tuple[int, ...]
    ambient_dim: int

    @property
    def dim(self) -> int:
        return len(self.pivots)


def relative_ideal_piece(instance: FlagInstance, i: int, d: int) -> RelativePiece:
    pair = delete_column(instance, i)
    return _relative_piece(pair, d)


def _relative_piece(pair: FlagPair, d: int) -> RelativePiece:
    b_ring = pair.ring_b
    amb = b_ring.dim(d)
    if d < 0 or amb == 0:
        return RelativePiece(d, np.zeros((0, max(amb, 0)), dtype=np.int64), (), max(amb, 0))
    ix = pair.ideal_x.piece(d)
    if ix.dim == 0:
        return RelativePiece(d, np.zeros((0, amb), dtype=np.int64), (), amb)
    # leading monomials of I_Y are leading monomials of I_X, so the echelon
    # rows of I_X whose pivot is standard for I_Y already form an echelon
    # basis of the image in B_d (their tails lie on I_X's standard monomials)
    std_y = b_ring.piece(d).complement
    pos_y = np.full(pair.ideal_x.ring.dim(d), -1, dtype=np.int64)
    pos_y[std_y] = np.arange(std_y.size)
    xpiv = np.array(ix.pivots, dtype=np.int64)
    keep = np.flatnonzero(pos_y[xpiv] >= 0)
    rows = np.zeros((keep.size, amb), dtype=np.int64)
    rows[np.arange(keep.size), pos_y[xpiv[keep]]] = 1
    rows[:, pos_y[ix.complement]] = ix.reducer[keep]
    return RelativePiece(d, rows, tuple(int(c) for c in pos_y[xpiv[keep]]), amb)
