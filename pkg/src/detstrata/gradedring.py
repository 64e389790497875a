"""
Graded pieces of R = F_p[x_0..x_n] and of its homogeneous quotients.

Everything is finite-dimensional linear algebra in a fixed degree: a
homogeneous polynomial of degree d is its coefficient vector on the
monomial basis of R_d, an ideal piece is a reduced echelon basis inside
R_d, and the quotient piece uses the non-pivot monomials as coordinates.

Monomials of a degree are listed in graded lexicographic order with
x_0 > x_1 > ... > x_n, so index 0 is always x_0^d.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from math import comb
from typing import Iterable, Sequence

import numpy as np

from . import exactfield as ef
from .exactfield import DEFAULT_PRIME

_KEY_BASE = 1 << 8


def num_monomials(n: int, d: int) -> int:
    """C(d+n, n), zero for negative degrees."""
    return comb(d + n, n) if d >= 0 else 0


@lru_cache(maxsize=None)
def _exponents(nvars: int, d: int) -> np.ndarray:
    if nvars == 1:
        return np.array([[d]], dtype=np.int64)
    blocks = []
    for first in range(d, -1, -1):
        rest = _exponents(nvars - 1, d - first)
        blocks.append(np.column_stack([np.full(rest.shape[0], first), rest]))
    return np.concatenate(blocks, axis=0).astype(np.int64)


def monomial_basis(n: int, d: int) -> list[tuple[int, ...]]:
    """Exponent tuples of all degree-``d`` monomials in ``n+1`` variables, grlex order."""
    if n < 0:
        raise ValueError("need at least one variable")
    if d < 0:
        return []
    return [tuple(int(e) for e in row) for row in _exponents(n + 1, d)]


def _keys(exps: np.ndarray) -> np.ndarray:
    k = np.zeros(exps.shape[0], dtype=np.int64)
    for col in range(exps.shape[1]):
        k = k * _KEY_BASE + exps[:, col]
    return k


class PolyRing:
    """The graded ring F_p[x_0..x_n] with cached monomial index tables."""

    def __init__(self, n: int, p: int = DEFAULT_PRIME):
        if n < 0:
            raise ValueError("need at least one variable")
        self.n = int(n)
        self.p = ef.check_prime(p)
        self._tables: dict[tuple[int, int], np.ndarray] = {}

    def __repr__(self) -> str:
        return f"PolyRing(n={self.n}, p={self.p})"

    def __eq__(self, other) -> bool:
        return isinstance(other, PolyRing) and (self.n, self.p) == (other.n, other.p)

    def __hash__(self) -> int:
        return hash((self.n, self.p))

    @property
    def nvars(self) -> int:
        return self.n + 1

    def dim(self, d: int) -> int:
        return num_monomials(self.n, d)

    def exponents(self, d: int) -> np.ndarray:
        if d < 0:
            return np.zeros((0, self.nvars), dtype=np.int64)
        if d >= _KEY_BASE:
            raise ValueError(f"degree {d} exceeds the supported range")
        return _exponents(self.nvars, d)

    def index(self, exps) -> np.ndarray:
        """Positions of exponent rows within the basis of their (common) degree."""
        exps = np.atleast_2d(np.asarray(exps, dtype=np.int64))
        d = int(exps[0].sum())
        keys = _keys(exps)
        # basis keys are strictly decreasing; search in the reversed array
        base = _keys(self.exponents(d))[::-1]
        pos = np.searchsorted(base, keys)
        if np.any(pos >= base.size) or np.any(base[np.minimum(pos, base.size - 1)] != keys):
            raise KeyError("exponent row of the wrong degree")
        return base.size - 1 - pos

    def mult_table(self, e: int, d: int) -> np.ndarray:
        """``T[i, j]`` = index in degree e+d of (monomial i of degree e)·(monomial j of degree d)."""
        key = (e, d)
        if key not in self._tables:
            ea, eb = self.exponents(e), self.exponents(d)
            if ea.shape[0] == 0 or eb.shape[0] == 0:
                t = np.zeros((ea.shape[0], eb.shape[0]), dtype=np.int64)
            else:
                prod = ea[:, None, :] + eb[None, :, :]
                t = self.index(prod.reshape(-1, self.nvars)).reshape(ea.shape[0], eb.shape[0])
            self._tables[key] = t
        return self._tables[key]

    def zero(self, d: int) -> Poly:
        return Poly(self, d, np.zeros(self.dim(d), dtype=np.int64))

    def one(self) -> Poly:
        return self.constant(1)

    def constant(self, c: int) -> Poly:
        return Poly(self, 0, np.array([c % self.p], dtype=np.int64))

    def var(self, i: int) -> Poly:
        v = np.zeros(self.dim(1), dtype=np.int64)
        v[i] = 1
        return Poly(self, 1, v)

    def monomial(self, exps: Sequence[int], coeff: int = 1) -> Poly:
        d = int(sum(exps))
        v = np.zeros(self.dim(d), dtype=np.int64)
        v[int(self.index(exps)[0])] = coeff % self.p
        return Poly(self, d, v)

    def from_terms(self, terms: dict[tuple[int, ...], int]) -> Poly:
        """Homogeneous polynomial from an exponent->coefficient mapping."""
        if not terms:
            raise ValueError("empty term dict has no degree; use zero(d)")
        degs = {sum(e) for e in terms}
        if len(degs) != 1:
            raise ValueError("polynomial is not homogeneous")
        d = degs.pop()
        v = np.zeros(self.dim(d), dtype=np.int64)
        for e, c in terms.items():
            v[int(self.index(e)[0])] += c
        return Poly(self, d, v % self.p)

    def random(self, d: int, rng: np.random.Generator) -> Poly:
        """Dense random form with every coefficient uniform in 1..p-1."""
        return Poly(self, d, rng.integers(1, self.p, size=self.dim(d), dtype=np.int64))

    def multiply_rows(self, rows: np.ndarray, d: int, f: Poly) -> np.ndarray:
        """Multiply each row (a degree-``d`` form) by ``f``; result in degree d + deg f."""
        rows = np.asarray(rows, dtype=np.int64)
        out_dim = self.dim(d + f.degree)
        if rows.shape[0] == 0:
            return np.zeros((0, out_dim), dtype=np.int64)
        table = self.mult_table(d, f.degree)
        supp = np.flatnonzero(f.coeffs)
        out = np.zeros((rows.shape[0], out_dim), dtype=np.int64)
        # one scatter per monomial of f keeps every partial sum below p**2
        for j in supp:
            out[:, table[:, j]] += rows * int(f.coeffs[j])
            out %= self.p
        return out


@dataclass(frozen=True, eq=False)
class Poly:
    """A homogeneous polynomial stored as coefficients on the grlex basis."""

    ring: PolyRing
    degree: int
    coeffs: np.ndarray

    def __post_init__(self):
        c = np.mod(np.asarray(self.coeffs, dtype=np.int64), self.ring.p)
        if c.shape != (self.ring.dim(self.degree),):
            raise ValueError(f"coefficient vector of length {c.size} does not match degree {self.degree}")
        object.__setattr__(self, "coeffs", c)

    def is_zero(self) -> bool:
        return not np.any(self.coeffs)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Poly):
            return NotImplemented
        if self.is_zero() and other.is_zero():
            return True
        return self.degree == other.degree and np.array_equal(self.coeffs, other.coeffs)

    def __hash__(self):
        return hash((self.degree, self.coeffs.tobytes()))

    def _same_degree(self, other: Poly) -> None:
        if self.degree != other.degree:
            raise ValueError(f"cannot add forms of degree {self.degree} and {other.degree}")

    def __add__(self, other: Poly) -> Poly:
        self._same_degree(other)
        return Poly(self.ring, self.degree, self.coeffs + other.coeffs)

    def __sub__(self, other: Poly) -> Poly:
        self._same_degree(other)
        return Poly(self.ring, self.degree, self.coeffs - other.coeffs)

    def __neg__(self) -> Poly:
        return Poly(self.ring, self.degree, -self.coeffs)

    def scale(self, c: int) -> Poly:
        return Poly(self.ring, self.degree, self.coeffs * (int(c) % self.ring.p))

    def __mul__(self, other) -> Poly:
        if isinstance(other, (int, np.integer)):
            return self.scale(int(other))
        if self.ring != other.ring:
            raise ValueError("polynomials from different rings")
        d = self.degree + other.degree
        table = self.ring.mult_table(self.degree, other.degree)
        w = np.outer(self.coeffs, other.coeffs) % self.ring.p
        # at most min(#terms) products land on one monomial; each is < p**2
        out = np.bincount(table.ravel(), weights=w.ravel().astype(np.float64),
                          minlength=self.ring.dim(d))
        return Poly(self.ring, d, np.mod(out, self.ring.p).astype(np.int64))

    __rmul__ = __mul__

    def terms(self) -> dict[tuple[int, ...], int]:
        exps = self.ring.exponents(self.degree)
        return {tuple(int(e) for e in exps[i]): int(self.coeffs[i])
                for i in np.flatnonzero(self.coeffs)}

    def __repr__(self) -> str:
        t = self.terms()
        if not t:
            return "0"
        parts = []
        for e, c in t.items():
            mono = "*".join(f"x{i}" + (f"^{k}" if k > 1 else "") for i, k in enumerate(e) if k)
            parts.append(f"{c}*{mono}" if mono else str(c))
        return " + ".join(parts)


@dataclass(frozen=True)
class GradedPiece:
    """A subspace of R_d stored through its reduced echelon form.

    ``pivots`` are the leading monomials and ``complement`` the remaining
    (standard) ones; the latter are the coordinates of R_d / span. The echelon
    row of pivot ``pivots[k]`` is that unit vector plus ``reducer[k]`` placed
    on the complement, so only a |pivots| x |complement| block is kept.
    """

    n: int
    degree: int
    pivots: tuple[int, ...]
    reducer: np.ndarray
    p: int = DEFAULT_PRIME
    complement: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        total = num_monomials(self.n, self.degree)
        mask = np.ones(total, dtype=bool)
        mask[list(self.pivots)] = False
        object.__setattr__(self, "complement", np.flatnonzero(mask))
        if self.reducer.shape != (len(self.pivots), self.complement.size):
            raise ValueError("reducer shape does not match pivots and complement")

    @classmethod
    def from_rref(cls, n: int, degree: int, rows: np.ndarray, pivots, p: int = DEFAULT_PRIME):
        """Build from a full reduced echelon basis."""
        pivots = tuple(int(c) for c in pivots)
        total = num_monomials(n, degree)
        mask = np.ones(total, dtype=bool)
        mask[list(pivots)] = False
        rows = np.asarray(rows, dtype=np.int64).reshape(len(pivots), total)
        return cls(n, degree, pivots, rows[:, np.flatnonzero(mask)] % p, p)

    @property
    def dim(self) -> int:
        return len(self.pivots)

    @property
    def codim(self) -> int:
        return int(self.complement.size)

    @property
    def basis(self) -> np.ndarray:
        """The full reduced echelon basis (materialized on demand)."""
        out = np.zeros((self.dim, num_monomials(self.n, self.degree)), dtype=np.int64)
        out[np.arange(self.dim), list(self.pivots)] = 1
        out[:, self.complement] = self.reducer
        return out

    def reduce(self, vectors: np.ndarray) -> np.ndarray:
        """Quotient coordinates (on ``complement``) of rows living in R_d."""
        v = np.atleast_2d(np.asarray(vectors, dtype=np.int64)) % self.p
        if not self.pivots:
            return v[:, self.complement]
        return (v[:, self.complement]
                - ef.matmul(v[:, list(self.pivots)], self.reducer, self.p)) % self.p

    def contains(self, vectors: np.ndarray) -> np.ndarray:
        return ~np.any(self.reduce(vectors), axis=1)


def _empty_piece(n: int, d: int, p: int) -> GradedPiece:
    return GradedPiece(n, d, (), np.zeros((0, num_monomials(n, d)), dtype=np.int64), p)


class Ideal:
    """A homogeneous ideal given by generators, with cached graded pieces."""

    def __init__(self, ring: PolyRing, generators: Iterable[Poly]):
        self.ring = ring
        self.generators = [g for g in generators if not g.is_zero()]
        for g in self.generators:
            if g.ring != ring:
                raise ValueError("generator from a different ring")
        self._pieces: dict[int, GradedPiece] = {}

    def __repr__(self) -> str:
        return f"Ideal({len(self.generators)} generators of degrees {self.generator_degrees})"

    @property
    def generator_degrees(self) -> list[int]:
        return [g.degree for g in self.generators]

    def _generator_rows(self, d: int) -> np.ndarray:
        gens = [g.coeffs for g in self.generators if g.degree == d]
        if not gens:
            return np.zeros((0, self.ring.dim(d)), dtype=np.int64)
        return np.stack(gens)

    def piece(self, d: int) -> GradedPiece:
        """Reduced echelon data of I_d."""
        if d in self._pieces:
            return self._pieces[d]
        ring = self.ring
        if d < 0:
            return GradedPiece(ring.n, d, (), np.zeros((0, 0), dtype=np.int64), ring.p)
        if not self.generators or d < min(self.generator_degrees):
            piece = _empty_piece(ring.n, d, ring.p)
        else:
            piece = self._extend(self.piece(d - 1), d)
        self._pieces[d] = piece
        return piece

    def _extend(self, prev: GradedPiece, d: int) -> GradedPiece:
        """Pick the cheaper of the two exact extension methods from size estimates."""
        ring = self.ring
        n_est = min(ring.nvars * prev.dim, ring.dim(d))
        t_est = ring.dim(d) - n_est + prev.codim
        border = prev.codim * t_est * (3 * n_est + ring.nvars * prev.dim)
        free = ring.dim(d) - ring.dim(d - 1)
        width = free + prev.codim
        rows = sum(num_monomials(ring.n - 1, d - g.degree) for g in self.generators
                   if g.degree <= d)
        lift = rows * width * min(rows, width)
        if border <= lift:
            return self._extend_border(prev, d)
        return self._extend_lift(prev, d)

    def _fresh_blocks(self, d: int):
        """Multiples m·g with m free of x_0; with x_0·I_{d-1} they span I_d."""
        ring = self.ring
        for g in self.generators:
            e = d - g.degree
            if e < 0:
                continue
            exps = ring.exponents(e)
            keep = exps[:, 0] == 0 if e > 0 else np.ones(1, dtype=bool)
            idx = np.flatnonzero(keep)
            table = ring.mult_table(e, g.degree)[idx]
            rows = np.zeros((idx.size, ring.dim(d)), dtype=np.int64)
            r = np.repeat(np.arange(idx.size), table.shape[1])
            rows[r, table.ravel()] = np.tile(g.coeffs, idx.size)
            yield rows

    def _extend_lift(self, prev: GradedPiece, d: int) -> GradedPiece:
        # x_0 preserves the monomial order, so x_0 times the echelon rows of
        # I_{d-1} are echelon rows of I_d with pivots x_0·P. Reducing the
        # fresh rows against them leaves vectors supported on the columns
        # W = (x_0-free monomials) ∪ x_0·S, which is all that needs eliminating.
        ring, p = self.ring, self.ring.p
        total = ring.dim(d)
        shift = ring.mult_table(1, d - 1)[0]
        lpiv = shift[list(prev.pivots)]
        lstd = shift[prev.complement]
        wmask = np.ones(total, dtype=bool)
        wmask[lpiv] = False
        wcols = np.flatnonzero(wmask)
        wpos = np.full(total, -1, dtype=np.int64)
        wpos[wcols] = np.arange(wcols.size)
        # lifted rows restricted to W: the reducer sits on x_0·S
        lifted_w = np.zeros((prev.dim, wcols.size), dtype=np.int64)
        lifted_w[:, wpos[lstd]] = prev.reducer
        # eliminate block by block against the echelon rows found so far
        fred = np.zeros((0, wcols.size), dtype=np.int64)
        fpos: list[int] = []
        for block in self._fresh_blocks(d):
            if len(fpos) == wcols.size:
                break
            part = block[:, wcols]
            if prev.dim:
                part = (part - ef.matmul(block[:, lpiv], lifted_w, p)) % p
            if fpos:
                part = ef.reduce_against(part, fred, fpos, p)
            if not np.any(part):
                continue
            red, piv = ef.rref(part, p)
            if fpos:
                fred = (fred - ef.matmul(fred[:, list(piv)], red, p)) % p
            fred = np.concatenate([fred, red], axis=0)
            fpos = fpos + list(piv)
        if fpos:
            order = np.argsort(fpos, kind="stable")
            fred, fpos = fred[order], [fpos[k] for k in order]
        # pivots of I_d: x_0·P together with the new pivots inside W
        smask = wmask.copy()
        npiv = wcols[fpos]
        smask[npiv] = False
        std_w = wpos[np.flatnonzero(smask)]
        if fpos:
            lifted_w = (lifted_w - ef.matmul(lifted_w[:, fpos], fred, p)) % p
        rows = np.concatenate([lifted_w[:, std_w], fred[:, std_w]], axis=0)
        piv = np.concatenate([lpiv, npiv]).astype(np.int64)
        order = np.argsort(piv, kind="stable")
        return GradedPiece(ring.n, d, tuple(int(c) for c in piv[order]), rows[order] % p, p)

    def _extend_border(self, prev: GradedPiece, d: int) -> GradedPiece:
        # I_d is spanned by x_k times the echelon rows of I_{d-1} and the
        # generators of degree d. Multiplying by a monomial keeps leading
        # terms, so N = x·P_{d-1} are pivots of I_d. For each m in N one
        # product with leading term m is reduced onto T = R_d minus N, walking
        # from the smallest monomial up so that every lower term already has
        # its reduction. All remaining products then reduce to vectors on T,
        # and only those need elimination.
        ring, p = self.ring, self.ring.p
        total = ring.dim(d)
        piv = np.array(prev.pivots, dtype=np.int64)
        std = prev.complement
        red = prev.reducer
        table = ring.mult_table(1, d - 1)
        lead = table[:, piv] if piv.size else np.zeros((ring.nvars, 0), dtype=np.int64)
        nmask = np.zeros(total, dtype=bool)
        nmask[lead.ravel()] = True
        ncols = np.flatnonzero(nmask)
        tcols = np.flatnonzero(~nmask)
        npos = np.full(total, -1, dtype=np.int64)
        npos[ncols] = np.arange(ncols.size)
        tpos = np.full(total, -1, dtype=np.int64)
        tpos[tcols] = np.arange(tcols.size)
        # one (variable, row) per monomial of N; later variables overwrite
        # earlier ones, so x_0 is the multiplier wherever it can be
        choice_k = np.zeros(ncols.size, dtype=np.int64)
        choice_r = np.zeros(ncols.size, dtype=np.int64)
        for k in range(ring.nvars - 1, -1, -1):
            choice_k[npos[lead[k]]] = k
            choice_r[npos[lead[k]]] = np.arange(piv.size)
        tail = np.zeros((ncols.size, tcols.size), dtype=np.int64)
        images = table[:, std]
        in_t = tpos[images]
        in_n = npos[images]
        # smaller monomials have larger indices: walk N from the end
        for j in range(ncols.size - 1, -1, -1):
            k, r = choice_k[j], choice_r[j]
            coef = red[r]
            nz = np.flatnonzero(coef)
            if nz.size == 0:
                continue
            tt = in_t[k, nz]
            on_t = tt >= 0
            row = np.zeros(tcols.size, dtype=np.int64)
            np.add.at(row, tt[on_t], coef[nz[on_t]])
            lower = in_n[k, nz[~on_t]]
            if lower.size:
                row -= coef[nz[~on_t]] @ tail[lower] % p
            tail[j] = row % p

        def sigma(cols: np.ndarray) -> np.ndarray:
            """Rows of e_u on T, with u in N replaced by minus its tail."""
            out = np.zeros((cols.size, tcols.size), dtype=np.int64)
            t_rows = np.flatnonzero(tpos[cols] >= 0)
            out[t_rows, tpos[cols[t_rows]]] = 1
            n_rows = np.flatnonzero(npos[cols] >= 0)
            out[n_rows] = (-tail[npos[cols[n_rows]]]) % p
            return out

        parts = []
        for k in range(ring.nvars):
            if not piv.size:
                break
            part = sigma(lead[k])
            if std.size:
                part = (part + ef.matmul(red, sigma(images[k]), p)) % p
            parts.append(part)
        gens = self._generator_rows(d)
        if gens.shape[0]:
            gpart = gens[:, tcols] % p
            if ncols.size:
                gpart = (gpart - ef.matmul(gens[:, ncols], tail, p)) % p
            parts.append(gpart)
        resid = np.concatenate(parts, axis=0) if parts else np.zeros((0, tcols.size), dtype=np.int64)
        ech, qpos = ef.rref(resid, p)
        qpos = list(qpos)
        if qpos:
            tail = (tail - ef.matmul(tail[:, qpos], ech, p)) % p
        keep = np.ones(tcols.size, dtype=bool)
        keep[qpos] = False
        rows = np.concatenate([tail[:, keep], ech[:, keep]], axis=0)
        allpiv = np.concatenate([ncols, tcols[qpos]]).astype(np.int64)
        order = np.argsort(allpiv, kind="stable")
        return GradedPiece(ring.n, d, tuple(int(c) for c in allpiv[order]), rows[order] % p, p)

    def hilbert_function(self, d: int) -> int:
        """dim (R/I)_d."""
        if d < 0:
            return 0
        return self.ring.dim(d) - self.piece(d).dim


class QuotientRing:
    """R/I with coordinates on the standard (non-pivot) monomials of each degree."""

    def __init__(self, ideal: Ideal):
        self.ideal = ideal
        self.ring = ideal.ring
        self.p = ideal.ring.p

    def __repr__(self) -> str:
        return f"QuotientRing({self.ideal!r})"

    def piece(self, d: int) -> GradedPiece:
        return self.ideal.piece(d)

    def dim(self, d: int) -> int:
        return self.ideal.hilbert_function(d) if d >= 0 else 0

    def reduce(self, rows: np.ndarray, d: int) -> np.ndarray:
        """Normal-form coordinates in the quotient of rows given in R_d."""
        if d < 0:
            return np.zeros((np.atleast_2d(rows).shape[0], 0), dtype=np.int64)
        return self.piece(d).reduce(rows)

    def lift(self, coords: np.ndarray, d: int) -> np.ndarray:
        """Standard-monomial representatives in R_d of quotient coordinates."""
        coords = np.atleast_2d(np.asarray(coords, dtype=np.int64))
        out = np.zeros((coords.shape[0], self.ring.dim(d)), dtype=np.int64)
        out[:, self.piece(d).complement] = coords
        return out

    def mult_map(self, f: Poly, d: int) -> np.ndarray:
        """Matrix of multiplication by ``f`` from degree d to d + deg f (row convention)."""
        if d < 0 or self.dim(d) == 0:
            return np.zeros((max(self.dim(d), 0), self.dim(d + f.degree)), dtype=np.int64)
        basis = self.lift(np.eye(self.dim(d), dtype=np.int64), d)
        return self.reduce(self.ring.multiply_rows(basis, d, f), d + f.degree)

    def multiply(self, f: Poly, g: Poly, d: int | None = None) -> np.ndarray:
        """Quotient coordinates of f·g."""
        total = f.degree + g.degree
        if d is not None and d != total:
            raise ValueError(f"deg f + deg g = {total}, expected {d}")
        return self.reduce((f * g).coeffs[None, :], total)[0]


def ideal_piece(generators: Sequence[Poly], d: int, ring: PolyRing | None = None) -> GradedPiece:
    """Echelon basis of the degree-``d`` piece of the ideal spanned by ``generators``."""
    if ring is None:
        if not generators:
            raise ValueError("ring required when there are no generators")
        ring = generators[0].ring
    return Ideal(ring, generators).piece(d)


def quotient_hf(generators: Sequence[Poly], d: int, ring: PolyRing | None = None) -> int:
    """dim (R/I)_d for the ideal generated by ``generators``."""
    if ring is None:
        if not generators:
            raise ValueError("ring required when there are no generators")
        ring = generators[0].ring
    return Ideal(ring, generators).hilbert_function(d)


def multiply_into_quotient(f: Poly, g: Poly, modulus: GradedPiece) -> np.ndarray:
    """Coordinates of f·g on the complement of an ideal piece of matching degree."""
    if f.degree + g.degree != modulus.degree:
        raise ValueError(f"deg f + deg g = {f.degree + g.degree}, piece has degree {modulus.degree}")
    return modulus.reduce((f * g).coeffs[None, :])[0]
