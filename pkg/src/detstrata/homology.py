"""
Degree-zero Hom and Ext groups of graded modules by degreewise linear algebra.

A module M over a graded ring S (R, B = R/I_Y or A = R/I_X) is given by a
truncated free presentation F_2 -> F_1 -> F_0 -> M. Every map is a matrix
of homogeneous polynomials with one row per source generator, so degree v
of a map is a block matrix of multiplication maps (row convention, as in
:mod:`detstrata.gradedring`). Applying Hom(-, N)_0 turns F_k into the
cochain space C^k = ⊕ N_g over the generator degrees g of F_k; ranks of
the induced cochain maps give hom and ext dimensions.

Kernels over quotient rings are found degree by degree: the kernel in
degree v minus the span of x_k times the kernel in degree v-1 gives the new
generators. Generators that still appear at the cutoff degree mean the
cutoff is too small, which is reported rather than truncated.
"""

from __future__ import annotations

from dataclasses import dataclass, field, fields
from itertools import combinations
from typing import Any, Iterable

import numpy as np

from . import exactfield as ef
from .complexes import br_complex, en_twists
from .gradedring import Ideal, Poly, QuotientRing
from .instances import FlagInstance, FlagPair, _relative_piece, delete_column
from .strata_formulas import mb_dim0


class CutoffError(RuntimeError):
    """New generators were still appearing at the cutoff degree."""

    def __init__(self, what: str, degree: int, cutoff: int):
        super().__init__(f"{what}: generators still appear in degree {degree} "
                         f"(cutoff {cutoff}); raise the cutoff")
        self.what = what
        self.open_degree = degree
        self.cutoff = cutoff


class IdentityError(ArithmeticError):
    """A dimension identity that must hold for generic data failed."""


# graded modules usable as Hom targets


class RingModule:
    """A quotient ring S = R/J viewed as a module over itself (or over R)."""

    def __init__(self, ring: QuotientRing, tag: str = "S"):
        self.ring = ring
        self.tag = tag
        self.p = ring.p
        self._mult: dict[tuple[int, int], tuple[Poly, np.ndarray]] = {}
        self._vars = [ring.ring.var(k) for k in range(ring.ring.n + 1)]

    def __repr__(self) -> str:
        return f"RingModule({self.tag})"

    def var(self, k: int) -> Poly:
        return self._vars[k]

    def dim(self, d: int) -> int:
        return self.ring.dim(d) if d >= 0 else 0

    def mult(self, f: Poly | None, d: int, degree: int | None = None) -> np.ndarray:
        """Matrix of multiplication by ``f`` from degree d (rows) to d + deg f."""
        e = f.degree if f is not None else degree
        if f is None or f.is_zero() or self.dim(d) == 0 or self.dim(d + e) == 0:
            return np.zeros((self.dim(d), self.dim(d + e)), dtype=np.int64)
        key = (id(f), d)
        hit = self._mult.get(key)
        if hit is None:
            # keep f alive so its id stays unique while cached
            hit = (f, self.ring.mult_map(f, d))
            self._mult[key] = hit
        return hit[1]


def ring_module(ring: QuotientRing, tag: str = "S") -> RingModule:
    """The shared :class:`RingModule` of a quotient ring (multiplication cache included)."""
    mod = getattr(ring, "_ring_module", None)
    if mod is None:
        mod = RingModule(ring, tag)
        ring._ring_module = mod
    return mod


class RelativeIdealModule:
    """I_{X/Y} = (I_X)/(I_Y) as a submodule of B, in echelon coordinates."""

    def __init__(self, pair: FlagPair):
        self.pair = pair
        self.ambient = ring_module(pair.ring_b, "B")
        self.tag = "I_X/Y"
        self.p = pair.instance.prime
        self._pieces: dict[int, Any] = {}
        self._mult: dict[tuple[int, int], tuple[Poly, np.ndarray]] = {}

    def __repr__(self) -> str:
        return f"RelativeIdealModule(i={self.pair.i})"

    def piece(self, d: int):
        if d not in self._pieces:
            self._pieces[d] = _relative_piece(self.pair, d)
        return self._pieces[d]

    def dim(self, d: int) -> int:
        return self.piece(d).dim if d >= 0 else 0

    def include(self, d: int) -> np.ndarray:
        """Rows: the basis of (I_{X/Y})_d inside B_d."""
        return self.piece(d).basis

    def mult(self, f: Poly | None, d: int, degree: int | None = None) -> np.ndarray:
        e = f.degree if f is not None else degree
        if f is None or f.is_zero() or self.dim(d) == 0 or self.dim(d + e) == 0:
            return np.zeros((self.dim(d), self.dim(d + e)), dtype=np.int64)
        key = (id(f), d)
        hit = self._mult.get(key)
        if hit is None:
            prod = ef.matmul(self.include(d), self.ambient.mult(f, d), self.p)
            # the product lies in the submodule, whose basis is echelon in B
            hit = (f, prod[:, list(self.piece(d + e).pivots)])
            self._mult[key] = hit
        return hit[1]


# free modules and homogeneous maps


@dataclass
class FreeMap:
    """Homogeneous map ⊕ S(-src_i) -> ⊕ S(-tgt_j); ``entries[i][j]`` has degree src_i - tgt_j.

    ``None`` marks a zero entry.
    """

    ring: QuotientRing
    src: list[int]
    tgt: list[int]
    entries: list[list[Poly | None]]

    def __post_init__(self):
        if len(self.entries) != len(self.src):
            raise ValueError("one entry row per source generator required")
        for i, row in enumerate(self.entries):
            if len(row) != len(self.tgt):
                raise ValueError("entry row length must match the target rank")
            for j, f in enumerate(row):
                if f is not None and f.degree != self.src[i] - self.tgt[j]:
                    raise ValueError(f"entry ({i}, {j}) has degree {f.degree}, "
                                     f"expected {self.src[i] - self.tgt[j]}")

    @property
    def module(self) -> RingModule:
        return ring_module(self.ring)

    def degree_matrix(self, v: int) -> np.ndarray:
        """Degree-v piece: rows ⊕_i S_{v-src_i}, columns ⊕_j S_{v-tgt_j}."""
        return _block_matrix(self.module, self.entries, [v - s for s in self.src],
                             [v - t for t in self.tgt])


def _block_matrix(module, entries, row_degrees, col_degrees) -> np.ndarray:
    """Block matrix with block (i, j) = multiplication by entries[i][j] on module pieces."""
    rdims = [module.dim(d) for d in row_degrees]
    cdims = [module.dim(d) for d in col_degrees]
    out = np.zeros((sum(rdims), sum(cdims)), dtype=np.int64)
    roff = np.concatenate([[0], np.cumsum(rdims)]).astype(int)
    coff = np.concatenate([[0], np.cumsum(cdims)]).astype(int)
    for i, row in enumerate(entries):
        if rdims[i] == 0:
            continue
        for j, f in enumerate(row):
            if f is None or cdims[j] == 0 or f.is_zero():
                continue
            out[roff[i]:roff[i + 1], coff[j]:coff[j + 1]] = module.mult(f, row_degrees[i])
    return out


def _var_shift(module: RingModule, degrees: list[int], k: int) -> np.ndarray:
    """Block-diagonal multiplication by x_k on ⊕ S_{degrees}."""
    x = module.var(k)
    entries = [[x if i == j else None for j in range(len(degrees))] for i in range(len(degrees))]
    return _block_matrix(module, entries, degrees, [d + 1 for d in degrees])


def _rows_to_polys(module: RingModule, rows: np.ndarray, degrees: list[int]) -> list[list[Poly | None]]:
    """Split coordinate rows over ⊕ S_{degrees} into lifted polynomials."""
    ring = module.ring
    out = []
    for row in rows:
        polys, off = [], 0
        for d in degrees:
            k = module.dim(d)
            part = row[off:off + k]
            off += k
            if k == 0 or not part.any():
                polys.append(None)
            else:
                polys.append(Poly(ring.ring, d, ring.lift(part, d)[0]))
        out.append(polys)
    return out


def kernel_generators(fmap: FreeMap, cutoff: int, what: str = "kernel") -> FreeMap:
    """Generators of ker(fmap) as a map into the source, found degree by degree up to ``cutoff``.

    Raises :class:`CutoffError` when new generators appear at the cutoff itself
    or one degree above it, so a cutoff below the first kernel degree is caught too.
    """
    module = fmap.module
    p = module.p
    n = module.ring.ring.n
    gdeg: list[int] = []
    gentries: list[list[Poly | None]] = []
    prev = None
    start = min(fmap.src) if fmap.src else 0
    for v in range(start, max(cutoff, start) + 2):
        kern = ef.left_kernel(fmap.degree_matrix(v), p)
        if kern.shape[0] == 0:
            prev = kern
            continue
        if prev is not None and prev.shape[0]:
            degs = [v - 1 - s for s in fmap.src]
            old = np.concatenate([ef.matmul(prev, _var_shift(module, degs, k), p)
                                  for k in range(n + 1)], axis=0)
            ored, opiv = ef.rref(old, p)
        else:
            ored, opiv = np.zeros((0, kern.shape[1]), dtype=np.int64), ()
        if kern.shape[0] > len(opiv):
            rest = ef.reduce_against(kern, ored, opiv, p)
            new, _ = ef.rref(rest, p)
            if v >= cutoff:
                raise CutoffError(what, v, cutoff)
            gdeg.extend([v] * new.shape[0])
            gentries.extend(_rows_to_polys(module, new, [v - s for s in fmap.src]))
        prev = kern
    return FreeMap(fmap.ring, gdeg, list(fmap.src), gentries)


# presentations


@dataclass
class GradedPresentation:
    """Truncated free resolution F_k -> ... -> F_0 of a graded module.

    ``maps[k]`` goes from F_{k+1} to F_k; ``degrees[k]`` are the generator
    degrees of F_k. ``cutoffs`` lists the degree bound of every step that
    was found by a kernel search.
    """

    label: str
    ring_tag: str
    ring: QuotientRing
    maps: list[FreeMap]
    cutoffs: list[int] = field(default_factory=list)

    @property
    def degrees(self) -> list[list[int]]:
        if not self.maps:
            return []
        return [list(self.maps[0].tgt)] + [list(m.src) for m in self.maps]

    @property
    def length(self) -> int:
        return len(self.maps)

    def composition_is_zero(self, v: int) -> bool:
        """Check that consecutive maps compose to zero in degree v."""
        p = self.ring.p
        for k in range(1, len(self.maps)):
            prod = ef.matmul(self.maps[k].degree_matrix(v), self.maps[k - 1].degree_matrix(v), p)
            if prod.any():
                return False
        return True

    def to_dict(self) -> dict[str, Any]:
        return {
            "label": self.label,
            "ring": self.ring_tag,
            "degrees": [sorted(d) for d in self.degrees],
            "cutoffs": list(self.cutoffs),
        }


def _augmentation(ring: QuotientRing, gens: list[Poly]) -> FreeMap:
    """⊕ S(-deg g) -> S sending the basis to the generators."""
    return FreeMap(ring, [g.degree for g in gens], [0], [[g] for g in gens])


def _determinantal_relations(instance: FlagInstance, i: int, ring: QuotientRing) -> FreeMap:
    """First syzygies of the minors of the first t+i-1 columns.

    For every t+1 column subset J and row r, expanding the determinant with
    row r repeated gives Σ_k ± f_{r,J_k} · minor(J \\ J_k) = 0.
    """
    spec, t = instance.spec, instance.spec.t
    cols = instance.minor_columns(i)
    index = {c: k for k, c in enumerate(cols)}
    gdeg = [g.degree for g in instance.minors(i)]
    ent = instance.matrix.entries
    src, rows = [], []
    for subset in combinations(range(instance.ncols(i)), t + 1):
        for r in range(t):
            row: list[Poly | None] = [None] * len(cols)
            for k, jk in enumerate(subset):
                f = ent[r][jk]
                if f.is_zero():
                    continue
                row[index[subset[:k] + subset[k + 1:]]] = f if k % 2 == 0 else -f
            src.append(sum(spec.a[j] for j in subset) - sum(spec.b) - spec.b[r])
            rows.append(row)
    return FreeMap(ring, src, gdeg, rows)


def _check_relations(fmap: FreeMap, gens: list[Poly]) -> None:
    for k, row in enumerate(fmap.entries):
        total = None
        for f, g in zip(row, gens):
            if f is None or g.is_zero():
                continue
            term = f * g
            total = term if total is None else total + term
        if total is not None and not total.is_zero():
            raise IdentityError(f"relation {k} is not a syzygy of the minors")


def ring_regularity(instance: FlagInstance, i: int | None) -> int:
    """Castelnuovo-Mumford regularity of R/I_{X_i} read off its EN resolution (0 for R)."""
    if i is None:
        return 0
    sp = instance.flag_spec(i)
    return max(abs(e) for e in en_twists(sp.a, sp.b)[-1]) - i


def _step_cutoff(fmap: FreeMap, cutoff: int | None, base: int, reg: int) -> int:
    # automatic cutoffs leave room for the kernel of a map out of F_k, whose
    # generators may sit up to reg(S) + 1 above the degrees of F_k
    if cutoff is not None:
        return cutoff
    return max(base, max(fmap.src, default=0) + reg + 2)


def _extend(pres_maps: list[FreeMap], depth: int, cutoffs: list[int], label: str,
            cutoff: int | None, base: int, reg: int) -> list[FreeMap]:
    while len(pres_maps) < depth:
        top = _step_cutoff(pres_maps[-1], cutoff, base, reg)
        cutoffs.append(top)
        pres_maps.append(kernel_generators(pres_maps[-1], top,
                                           f"{label} step {len(pres_maps) + 1}"))
    return pres_maps


def conormal_presentation(instance: FlagInstance, i: int, cutoff: int | None = None,
                          depth: int = 2, ring_tag: str | None = None) -> GradedPresentation:
    """I/I² over R/I for I = I_{X_i}; relations come from the determinantal syzygies.

    With ``cutoff=None`` each kernel step picks its own bound (see :func:`_step_cutoff`).
    """
    q = instance.quotient(i)
    gens = instance.minors(i)
    rel = _determinantal_relations(instance, i, q)
    _check_relations(rel, gens)
    label = f"conormal X_{i}"
    cutoffs: list[int] = []
    maps = _extend([rel], depth, cutoffs, label, cutoff, instance.default_cutoff(),
                   ring_regularity(instance, i))
    return GradedPresentation(label, ring_tag or f"B_{i}", q, maps, cutoffs)


def relative_presentation(instance: FlagInstance, i: int, cutoff: int | None = None,
                          depth: int = 2) -> GradedPresentation:
    """I_{X_i/X_{i-1}} over B = R/I_{X_{i-1}}, generated by the minors using the last column."""
    q = instance.quotient(i - 1)
    gens = instance.relative_minors(i)
    label = f"I_X{i}/X{i - 1}"
    cutoffs: list[int] = []
    maps = _extend([_augmentation(q, gens)], depth + 1, cutoffs, label, cutoff,
                   instance.default_cutoff(), ring_regularity(instance, i - 1))
    return GradedPresentation(label, f"B_{i - 1}", q, maps[1:], cutoffs)


def _polynomial_ring(instance: FlagInstance) -> QuotientRing:
    q = getattr(instance, "_free_ring", None)
    if q is None:
        q = QuotientRing(Ideal(instance.ring, []))
        instance._free_ring = q
    return q


def _resolution_bound(instance: FlagInstance, i: int, kind: str) -> int:
    """One more than the largest twist of the EN (``kind="en"``) or BR resolution of X_i.

    Both complexes are minimal free resolutions over R, so every syzygy of
    the computed presentation sits strictly below this degree.
    """
    sp = instance.flag_spec(i)
    if kind == "en":
        return max(abs(e) for step in en_twists(sp.a, sp.b) for e in step) + 1
    return br_complex(sp).max_twist_magnitude() + 1


def ideal_presentation_over_r(instance: FlagInstance, i: int, cutoff: int | None = None,
                              depth: int = 1) -> GradedPresentation:
    """I_{X_i} over R with syzygies found degreewise.

    The EN twists only bound the degree range searched; the syzygies themselves
    are computed from the minors.
    """
    r = _polynomial_ring(instance)
    label = f"I_X{i} over R"
    cutoffs: list[int] = []
    maps = _extend([_augmentation(r, instance.minors(i))], depth + 1, cutoffs, label, cutoff,
                   _resolution_bound(instance, i, "en"), 0)
    return GradedPresentation(label, "R", r, maps[1:], cutoffs)


def cokernel_presentation(instance: FlagInstance, i: int, cutoff: int | None = None,
                          depth: int = 1) -> GradedPresentation:
    """M = coker(G* -> F*) for the first t+i-1 columns, over R.

    F* has generators in degrees b_r, and column j gives a relation of degree a_j.
    """
    r = _polynomial_ring(instance)
    spec = instance.spec
    ent = instance.matrix.entries
    k = instance.ncols(i)
    rows = [[None if ent[rr][j].is_zero() else ent[rr][j] for rr in range(spec.t)] for j in range(k)]
    first = FreeMap(r, list(spec.a[:k]), list(spec.b), rows)
    label = f"M over R (first {k} columns)"
    cutoffs: list[int] = []
    maps = _extend([first], depth, cutoffs, label, cutoff, _resolution_bound(instance, i, "br"), 0)
    return GradedPresentation(label, "R", r, maps, cutoffs)


def _base_cutoff(module: str, instance: FlagInstance, i: int) -> int:
    """Lower bound for automatic kernel cutoffs of a named module."""
    if module == "ideal_Y_R":
        return _resolution_bound(instance, i - 1, "en")
    if module == "coker_B":
        return _resolution_bound(instance, i - 1, "br")
    return instance.default_cutoff()


def _ring_index(module: str, i: int) -> int | None:
    """Flag index of the ring a named module lives over (None for R)."""
    return {"conormal_Y": i - 1, "relative": i - 1, "conormal_X": i}.get(module)


def present(module: str, instance: FlagInstance, i: int | None = None,
            cutoff: int | None = None, depth: int = 2) -> GradedPresentation:
    """Named presentations for the pair X = X_i ⊂ Y = X_{i-1}.

    ``module`` is one of ``conormal_Y`` (I_Y/I_Y² over B), ``relative``
    (I_{X/Y} over B), ``conormal_X`` (I_X/I_X² over A), ``ideal_Y_R``
    (I_Y over R), ``coker_B`` (M_ℬ over R).
    """
    i = instance.spec.c if i is None else i
    if module == "conormal_Y":
        return conormal_presentation(instance, i - 1, cutoff, depth, "B")
    if module == "relative":
        return relative_presentation(instance, i, cutoff, depth)
    if module == "conormal_X":
        return conormal_presentation(instance, i, cutoff, depth, "A")
    if module == "ideal_Y_R":
        return ideal_presentation_over_r(instance, i - 1, cutoff, depth)
    if module == "coker_B":
        return cokernel_presentation(instance, i - 1, cutoff, depth)
    raise ValueError(f"unknown module {module!r}")


# Hom and Ext


class HomComplex:
    """Hom(F_•, N)_0 for a presentation F_• and a target module N.

    ``pres`` is either a fixed presentation or a callable ``depth -> presentation``;
    the callable form lets hom groups avoid computing second syzygies.
    """

    def __init__(self, pres, target):
        self._source = pres
        self.target = target
        self.p = target.p
        self._d: dict[int, np.ndarray] = {}
        self._rank: dict[int, int] = {}

    def presentation(self, depth: int) -> GradedPresentation:
        if callable(self._source):
            return self._source(depth)
        if self._source.length < depth:
            raise ValueError(f"presentation has only {self._source.length} steps")
        return self._source

    @property
    def pres(self) -> GradedPresentation:
        return self.presentation(1)

    def degrees(self, k: int) -> list[int]:
        return self.presentation(max(k, 1)).degrees[k]

    def cochain_dim(self, k: int) -> int:
        return sum(self.target.dim(g) for g in self.degrees(k))

    def differential(self, k: int) -> np.ndarray:
        """D_k: C^k -> C^{k+1}, block (j, r) = multiplication by the entry of relation r at generator j."""
        if k not in self._d:
            fm = self.presentation(k + 1).maps[k]
            transposed = [[fm.entries[r][j] for r in range(len(fm.src))] for j in range(len(fm.tgt))]
            self._d[k] = _block_matrix(self.target, transposed, list(fm.tgt), list(fm.src))
        return self._d[k]

    def rank(self, k: int) -> int:
        if k < 0:
            return 0
        if k not in self._rank:
            self._rank[k] = ef.rank(self.differential(k), self.p)
        return self._rank[k]

    def hom(self) -> int:
        return self.cochain_dim(0) - self.rank(0)

    def ext(self, i: int) -> int:
        if i == 0:
            return self.hom()
        return self.cochain_dim(i) - self.rank(i) - self.rank(i - 1)

    def cocycles(self, i: int) -> np.ndarray:
        return ef.left_kernel(self.differential(i), self.p)


def hom0(pres: GradedPresentation, target) -> int:
    """dim Hom(M, N)_0."""
    return HomComplex(pres, target).hom()


def ext1_0(pres: GradedPresentation, target) -> int:
    """dim Ext¹(M, N)_0; needs a presentation with two steps."""
    return HomComplex(pres, target).ext(1)


def induced_kernel(sub: HomComplex, amb: HomComplex, i: int) -> int:
    """Kernel dimension of Ext^i(M, N) -> Ext^i(M, N') for an inclusion N ⊂ N'.

    ``sub.target`` must provide ``include(d)``; both complexes share the
    same presentation.
    """
    p = sub.p
    z = sub.cocycles(i)
    if z.shape[0] == 0:
        return 0
    degs = sub.degrees(i)
    incl = _block_diag([sub.target.include(g) if sub.target.dim(g) else
                        np.zeros((0, amb.target.dim(g)), dtype=np.int64) for g in degs])
    image = ef.matmul(z, incl, p)
    if i == 0:
        return z.shape[0] - ef.rank(image, p)
    bound = amb.differential(i - 1)
    return ef.intersection_dim(image, bound, p) - sub.rank(i - 1)


def _block_diag(blocks: list[np.ndarray]) -> np.ndarray:
    rows = sum(b.shape[0] for b in blocks)
    cols = sum(b.shape[1] for b in blocks)
    out = np.zeros((rows, cols), dtype=np.int64)
    r = c = 0
    for b in blocks:
        out[r:r + b.shape[0], c:c + b.shape[1]] = b
        r += b.shape[0]
        c += b.shape[1]
    return out


def mb_dim0_instance(instance: FlagInstance, i: int | None = None) -> int:
    """dim M_ℬ(a)_0 on the instance, with ℬ the first t+i-2 columns and a = a_{t+i-2}."""
    i = instance.spec.c if i is None else i
    spec = instance.spec
    top = spec.a[instance.ncols(i) - 1]
    r = _polynomial_ring(instance)
    ent = instance.matrix.entries
    k = instance.ncols(i - 1)
    rows = [[None if ent[rr][j].is_zero() else ent[rr][j] for rr in range(spec.t)] for j in range(k)]
    fm = FreeMap(r, list(spec.a[:k]), list(spec.b), rows)
    mat = fm.degree_matrix(top)
    free = sum(r.dim(top - b) for b in spec.b)
    return free - ef.rank(mat, instance.prime)


def syzygy_degrees_match(pres: GradedPresentation, twists: Iterable[int]) -> bool:
    """Whether step-1 generator degrees equal the negated twists."""
    return sorted(pres.degrees[1]) == sorted(-e for e in twists)


def en_step2_degrees(instance: FlagInstance, i: int) -> list[int]:
    sp = instance.flag_spec(i)
    return sorted(-e for e in en_twists(sp.a, sp.b)[2])


def br_step2_degrees(instance: FlagInstance, i: int) -> list[int]:
    cx = br_complex(instance.flag_spec(i))
    return sorted(-e for e in cx.steps[2]) if len(cx.steps) > 2 else []


# report


EXT_FIELDS = (
    "hom_IY_IXY", "hom_IX_A", "hom_IXY_A", "h0_normal_Y",
    "ext1_IY_IXY", "ext1_IY_B", "ker_tau",
    "ext1_IXY_IXY", "ext1_IXY_B", "ker_rho1", "ext1_IXY_A",
    "ext1_conormal_A", "dim_im_delta",
)

# cheap groups computed alongside the named ones for the identity checks
AUX_FIELDS = ("hom_IY_A", "hom_IXY_B", "hom_IXY_IXY", "mb_dim0")


@dataclass
class ExtReport:
    """Degree-zero Hom/Ext dimensions for one pair X = X_i ⊂ Y = X_{i-1}.

    Fields left as ``None`` were not requested. ``checks`` records every
    identity that was tested and whether it held.
    """

    i: int
    seed: int
    prime: int
    cutoff: int
    hom_IY_IXY: int | None = None
    hom_IX_A: int | None = None
    hom_IXY_A: int | None = None
    h0_normal_Y: int | None = None
    ext1_IY_IXY: int | None = None
    ext1_IY_B: int | None = None
    ker_tau: int | None = None
    ext1_IXY_IXY: int | None = None
    ext1_IXY_B: int | None = None
    ker_rho1: int | None = None
    ext1_IXY_A: int | None = None
    ext1_conormal_A: int | None = None
    dim_im_delta: int | None = None
    hom_IY_A: int | None = None
    hom_IXY_B: int | None = None
    hom_IXY_IXY: int | None = None
    mb_dim0: int | None = None
    ker_rho2: int | None = None
    checks: dict[str, bool] = field(default_factory=dict)
    presentations: dict[str, dict[str, Any]] = field(default_factory=dict)

    def values(self) -> dict[str, int]:
        return {f.name: getattr(self, f.name) for f in fields(self)
                if f.name not in ("i", "seed", "prime", "cutoff", "checks", "presentations")
                and getattr(self, f.name) is not None}

    def to_dict(self) -> dict[str, Any]:
        out = {f.name: getattr(self, f.name) for f in fields(self)}
        out["checks"] = dict(self.checks)
        out["presentations"] = {k: dict(v) for k, v in self.presentations.items()}
        return out

    @classmethod
    def from_dict(cls, raw: dict[str, Any]) -> ExtReport:
        names = {f.name for f in fields(cls)}
        return cls(**{k: v for k, v in raw.items() if k in names})


# which groups each named field needs
_NEEDS = {
    "dim_im_delta": ("hom_IXY_A", "h0_normal_Y", "hom_IY_IXY", "ker_tau", "hom_IX_A"),
}


class PairHomology:
    """Lazy computation of every group attached to X = X_i ⊂ Y = X_{i-1}."""

    def __init__(self, instance: FlagInstance, i: int | None = None, cutoff: int | None = None):
        self.instance = instance
        self.i = instance.spec.c if i is None else i
        self.pair = delete_column(instance, self.i)
        # None lets every kernel step choose its own bound
        self.requested_cutoff = cutoff
        self.cutoff = instance.default_cutoff() if cutoff is None else cutoff
        self.B = ring_module(instance.quotient(self.i - 1), "B")
        self.A = ring_module(instance.quotient(self.i), "A")
        self.I = RelativeIdealModule(self.pair)
        self._pres: dict[str, GradedPresentation] = {}
        self._cx: dict[tuple[str, str], HomComplex] = {}
        self._cache: dict[str, int] = {}

    def presentation(self, module: str, depth: int = 2) -> GradedPresentation:
        """Presentation to at least ``depth`` steps, extended in place when deeper ones are asked for."""
        pres = self._pres.get(module)
        if pres is None:
            pres = present(module, self.instance, self.i, self.requested_cutoff, depth)
            self._pres[module] = pres
        elif pres.length < depth:
            reg = ring_regularity(self.instance, _ring_index(module, self.i))
            _extend(pres.maps, depth, pres.cutoffs, pres.label, self.requested_cutoff,
                    _base_cutoff(module, self.instance, self.i), reg)
        return pres

    def complex(self, module: str, target: str) -> HomComplex:
        key = (module, target)
        if key not in self._cx:
            tgt = {"B": self.B, "A": self.A, "I": self.I}[target]
            self._cx[key] = HomComplex(lambda depth, m=module: self.presentation(m, depth), tgt)
        return self._cx[key]

    def _memo(self, name: str, fn) -> int:
        if name not in self._cache:
            self._cache[name] = int(fn())
        return self._cache[name]

    # the named groups
    def hom_IY_IXY(self):
        return self._memo("hom_IY_IXY", lambda: self.complex("conormal_Y", "I").hom())

    def hom_IY_A(self):
        return self._memo("hom_IY_A", lambda: self.complex("conormal_Y", "A").hom())

    def h0_normal_Y(self):
        return self._memo("h0_normal_Y", lambda: self.complex("conormal_Y", "B").hom())

    def hom_IX_A(self):
        return self._memo("hom_IX_A", lambda: self.complex("conormal_X", "A").hom())

    def hom_IXY_A(self):
        return self._memo("hom_IXY_A", lambda: self.complex("relative", "A").hom())

    def hom_IXY_B(self):
        return self._memo("hom_IXY_B", lambda: self.complex("relative", "B").hom())

    def hom_IXY_IXY(self):
        return self._memo("hom_IXY_IXY", lambda: self.complex("relative", "I").hom())

    def ext1_IY_IXY(self):
        return self._memo("ext1_IY_IXY", lambda: self.complex("conormal_Y", "I").ext(1))

    def ext1_IY_B(self):
        return self._memo("ext1_IY_B", lambda: self.complex("conormal_Y", "B").ext(1))

    def ker_tau(self):
        return self._memo("ker_tau", lambda: induced_kernel(
            self.complex("conormal_Y", "I"), self.complex("conormal_Y", "B"), 1))

    def ext1_IXY_IXY(self):
        return self._memo("ext1_IXY_IXY", lambda: self.complex("relative", "I").ext(1))

    def ext1_IXY_B(self):
        return self._memo("ext1_IXY_B", lambda: self.complex("relative", "B").ext(1))

    def ker_rho1(self):
        return self._memo("ker_rho1", lambda: induced_kernel(
            self.complex("relative", "I"), self.complex("relative", "B"), 1))

    def ker_rho2(self):
        return self._memo("ker_rho2", lambda: induced_kernel(
            self.complex("relative", "I"), self.complex("relative", "B"), 2))

    def ext1_IXY_A(self):
        return self._memo("ext1_IXY_A", lambda: self.complex("relative", "A").ext(1))

    def ext1_conormal_A(self):
        return self._memo("ext1_conormal_A", lambda: self.complex("conormal_X", "A").ext(1))

    def mb_dim0(self):
        return self._memo("mb_dim0", lambda: mb_dim0_instance(self.instance, self.i))

    def dim_im_delta(self):
        """Solved from hom(I_X,A) = hom(I_{X/Y},A) + h⁰(N_Y) - hom(I_Y,I_{X/Y}) + ker τ - im δ."""
        val = (self.hom_IXY_A() + self.h0_normal_Y() - self.hom_IY_IXY()
               + self.ker_tau() - self.hom_IX_A())
        if val < 0:
            raise IdentityError(f"solved dim im δ = {val} is negative")
        return self._memo("dim_im_delta", lambda: val)

    def report(self, targets: Iterable[str] | None = None, rho2: bool = False,
               check: bool = True) -> ExtReport:
        """Compute the requested fields (default: all named groups) and run identity checks."""
        names = list(EXT_FIELDS) + list(AUX_FIELDS) if targets is None else list(targets)
        unknown = [t for t in names if not hasattr(self, t) or t.startswith("_")]
        if unknown:
            raise ValueError(f"unknown Ext targets: {unknown}")
        if rho2 and "ker_rho2" not in names:
            names.append("ker_rho2")
        for name in names:
            getattr(self, name)()
        if check:
            self._checks()
        rep = ExtReport(self.i, self.instance.seed, self.instance.prime, self.cutoff)
        for k, v in self._cache.items():
            setattr(rep, k, v)
        rep.checks = dict(self._check_results)
        rep.presentations = {m: pres.to_dict() for m, pres in self._pres.items()}
        return rep

    def _checks(self) -> None:
        c = self._cache
        res: dict[str, bool] = {}
        spec = self.instance.flag_spec(self.i)
        if "ker_tau" in c and "ext1_IY_IXY" in c:
            res["ker_tau_bounded"] = 0 <= c["ker_tau"] <= c["ext1_IY_IXY"]
        if "ker_rho1" in c and "ext1_IXY_IXY" in c:
            res["ker_rho1_bounded"] = 0 <= c["ker_rho1"] <= c["ext1_IXY_IXY"]
        if "dim_im_delta" in c and "ext1_IXY_A" in c:
            res["delta_bounded"] = 0 <= c["dim_im_delta"] <= c["ext1_IXY_A"]
        if "ext1_IY_B" in c and "ker_tau" in c and c["ext1_IY_B"] == 0 and "ext1_IY_IXY" in c:
            res["tau_into_zero"] = c["ker_tau"] == c["ext1_IY_IXY"]
        if "hom_IXY_A" in c and "ker_rho1" in c:
            # degree-0 part of 0 -> B -> M_ℬ(a) -> Hom(I_{X/Y}, A) -> Ext¹ -> ...
            res["mb_bookkeeping"] = c["hom_IXY_A"] == mb_dim0(spec) - 1 + c["ker_rho1"]
        if "mb_dim0" in c:
            res["mb_dim0_formula"] = c["mb_dim0"] == mb_dim0(spec)
        if "hom_IXY_B" in c and "mb_dim0" in c:
            res["hom_into_B_is_mb"] = c["hom_IXY_B"] == c["mb_dim0"]
        if all(k in c for k in ("hom_IXY_A", "hom_IXY_B", "hom_IXY_IXY", "ker_rho1")):
            res["rho_hom_sequence"] = (c["hom_IXY_A"]
                                       == c["hom_IXY_B"] - c["hom_IXY_IXY"] + c["ker_rho1"])
        if "hom_IY_A" in c and all(k in c for k in ("h0_normal_Y", "hom_IY_IXY", "ker_tau")):
            res["vertical_sequence"] = (c["hom_IY_A"]
                                        == c["h0_normal_Y"] - c["hom_IY_IXY"] + c["ker_tau"])
        if "ker_rho2" in c and all(k in c for k in ("ext1_IXY_A", "ext1_IXY_B", "ext1_IXY_IXY", "ker_rho1")):
            res["rho_sequence"] = (c["ext1_IXY_A"] == c["ext1_IXY_B"] - c["ext1_IXY_IXY"]
                                   + c["ker_rho1"] + c["ker_rho2"])
        self._check_results = res


def induced_kernels(instance: FlagInstance, i: int | None = None, cutoff: int | None = None,
                    rho2: bool = False) -> dict[str, int]:
    """ker τ_{X/Y}, ker ρ¹ (and optionally ker ρ²) plus the solved dim im δ."""
    ph = PairHomology(instance, i, cutoff)
    out = {"ker_tau": ph.ker_tau(), "ker_rho1": ph.ker_rho1(), "dim_im_delta": ph.dim_im_delta()}
    if rho2:
        out["ker_rho2"] = ph.ker_rho2()
    return out


def ext1_IXY_A(instance: FlagInstance, i: int | None = None, cutoff: int | None = None) -> int:
    """dim Ext¹_B(I_{X/Y}, A)_0."""
    return PairHomology(instance, i, cutoff).ext1_IXY_A()


def ext1_conormal_A(instance: FlagInstance, cutoff: int | None = None) -> int:
    """dim Ext¹_A(I_X/I_X², A)_0 for X = X_c."""
    return PairHomology(instance, None, cutoff).ext1_conormal_A()
