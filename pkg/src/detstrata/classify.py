"""
Rule engine turning degree data and Ext dimensions into verdicts.

Three regimes are covered: schemes of dimension at least two (no instance
needed), curves (n - c = 1) and zero-dimensional schemes (n = c). Each
rule is a clause with a stable id; every clause whose hypotheses are met
fires, and the most informative one decides the verdict.

Rule ids, in order of precedence within a regime:

- ``highdim.component``: c = 2 and n >= 2, or 3 <= c <= 4 with n - c >= 2.
- ``curve.tau-injective``, ``curve.conormal-vanishes``, ``curve.tau-bound``.
- ``points.rho-tau-injective``, ``points.rho-kernel``,
  ``points.conormal-vanishes``, ``points.rho-tau-bound`` (c = 3, or
  4 <= c <= 6 with an injective τ one step down the flag).
- ``points-flag.ext-vanishing``, ``points-flag.kernel-bound`` (4 <= c <= 6
  with a non-injective τ one step down the flag).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Callable, Iterable, Sequence

from .degree_data import DegreeSpec, alpha_holds, dim0new_check, nonempty
from .homology import ExtReport
from .strata_formulas import conjectured_dim, maineq_holds, maineq_rhs

YES, NO, UNKNOWN = "yes", "no", "unknown"

# informativeness ranks: a component verdict beats an exact codimension,
# which beats a bound
_COMPONENT, _EXACT, _BOUND = 0, 1, 2


@dataclass
class Clause:
    """One fired rule: its id, rank, and the values it asserts."""

    rule: str
    rank: int
    order: int
    unobstructed: str = UNKNOWN
    codim: int | None = None
    codim_upper: int | None = None
    note: str = ""

    def to_dict(self) -> dict[str, Any]:
        return {"rule": self.rule, "unobstructed": self.unobstructed, "codim": self.codim,
                "codim_upper": self.codim_upper, "note": self.note}


@dataclass
class Verdict:
    """Final classification; ``rule`` names the clause that decided it."""

    unobstructed: str
    component: str
    codim: int | None
    dim_W: int
    dim_hilb: int | None
    rule: str | None
    codim_upper: int | None = None
    fired: list[Clause] = field(default_factory=list)
    failed_hypotheses: list[str] = field(default_factory=list)
    caveats: list[str] = field(default_factory=list)
    consistent: bool = True

    @property
    def known(self) -> bool:
        return self.rule is not None

    def to_dict(self) -> dict[str, Any]:
        return {
            "unobstructed": self.unobstructed,
            "component": self.component,
            "codim": self.codim,
            "codim_upper": self.codim_upper,
            "dim_W": self.dim_W,
            "dim_Hilb_at_X": self.dim_hilb,
            "rule": self.rule,
            "fired": [c.to_dict() for c in self.fired],
            "failed_hypotheses": list(self.failed_hypotheses),
            "caveats": list(self.caveats),
            "consistent": self.consistent,
        }


def _unknown(spec: DegreeSpec, failed: list[str], caveats: list[str] | None = None) -> Verdict:
    dim_w = conjectured_dim(spec).conjectured_dim
    return Verdict(UNKNOWN, UNKNOWN, None, dim_w, None, None,
                   failed_hypotheses=failed, caveats=list(caveats or []))


def _decide(spec: DegreeSpec, fired: list[Clause], caveats: list[str]) -> Verdict:
    """Pick the most informative clause (lowest rank, then lowest order)."""
    dim_w = conjectured_dim(spec).conjectured_dim
    if not fired:
        return _unknown(spec, ["no clause hypotheses satisfied"], caveats)
    best = min(fired, key=lambda c: (c.rank, c.order))
    exact = {c.codim for c in fired if c.codim is not None}
    uppers = [c.codim_upper for c in fired if c.codim_upper is not None]
    consistent = len(exact) <= 1 and all(u >= e for u in uppers for e in exact)
    codim = best.codim
    upper = min(uppers) if uppers else None
    if codim is None:
        component = UNKNOWN
    else:
        component = YES if codim == 0 else NO
    # unobstructedness asserted by any fired clause carries over
    unob = YES if any(c.unobstructed == YES for c in fired) else best.unobstructed
    dim_hilb = dim_w + codim if codim is not None else None
    return Verdict(unob, component, codim, dim_w, dim_hilb, best.rule, upper,
                   fired=sorted(fired, key=lambda c: (c.rank, c.order)), caveats=caveats,
                   consistent=consistent)


def _common_failures(spec: DegreeSpec) -> list[str]:
    out = []
    if not nonempty(spec):
        out.append("stratum is empty (a_{i-1} > b_i fails)")
    if not alpha_holds(spec, 3):
        out.append("a_{i-min(3,t)} >= b_i fails")
    return out


def classify_high_dim(spec: DegreeSpec) -> Verdict:
    """Component verdict for dim X >= 2 (c = 2 with n >= 2, or 3 <= c <= 4 with n - c >= 2)."""
    failed = []
    gate = (spec.c == 2 and spec.n >= 2) or (3 <= spec.c <= 4 and spec.n - spec.c >= 2)
    if not gate:
        failed.append("outside the (c, n) range; use the instance pipeline")
    if not nonempty(spec):
        failed.append("stratum is empty (a_{i-1} > b_i fails)")
    if spec.c >= 3 and not alpha_holds(spec, 3):
        failed.append("a_{i-min(3,t)} >= b_i fails")
    if failed:
        return _unknown(spec, failed)
    clause = Clause("highdim.component", _COMPONENT, 0, unobstructed=YES, codim=0)
    return _decide(spec, [clause], [])


def classify_dim1(spec: DegreeSpec, ext: ExtReport) -> Verdict:
    """Curves: n - c = 1 and 3 <= c <= 5, from the pair X = X_c ⊂ Y = X_{c-1}."""
    if spec.n - spec.c != 1 or not 3 <= spec.c <= 5:
        raise ValueError("curve rules need n - c = 1 and 3 <= c <= 5")
    failed = _common_failures(spec)
    caveats = ["characteristic caveat: stated over a field of characteristic 0 for c = 5"] \
        if spec.c == 5 else []
    if failed:
        return _unknown(spec, failed, caveats)
    fired = []
    if ext.ker_tau == 0:
        fired.append(Clause("curve.tau-injective", _COMPONENT, 0, YES, 0))
    if ext.ext1_conormal_A == 0:
        fired.append(Clause("curve.conormal-vanishes", _EXACT, 1, YES,
                            ext.ker_tau - ext.ext1_IXY_A))
    fired.append(Clause("curve.tau-bound", _BOUND, 2, UNKNOWN, None, ext.ker_tau,
                        note="equality iff unobstructed" if ext.ext1_IXY_A == 0 else ""))
    return _decide(spec, fired, caveats)


def maineq_status(spec: DegreeSpec, ext: ExtReport | None) -> tuple[bool, str]:
    """Whether the Hom bound is certified, and how."""
    if ext is not None and ext.hom_IY_IXY is not None:
        ok = maineq_holds(spec, ext.hom_IY_IXY)
        return ok, f"instance hom = {ext.hom_IY_IXY}, bound {maineq_rhs(spec)}"
    if spec.c >= 3 and dim0new_check(spec):
        return True, "degree condition"
    return False, "not certified"


def classify_dim0(spec: DegreeSpec, ext: ExtReport, ext_below: ExtReport | None = None) -> Verdict:
    """Zero-dimensional schemes (n = c); ``ext_below`` is the pair X_{c-1} ⊂ X_{c-2} (c >= 4)."""
    if spec.n != spec.c:
        raise ValueError("zero-dimensional rules need n = c")
    failed = _common_failures(spec)
    caveats = []
    if spec.c in (5, 6):
        caveats.append("characteristic caveat: results at c = 5, 6 are stated in characteristic 0"
                       " (computed over F_p)")
    ok, how = maineq_status(spec, ext)
    if not ok:
        failed.append(f"Hom bound on hom(I_Y, I_X/Y) not certified ({how})")
    if not 3 <= spec.c <= 6:
        failed.append("c outside 3..6")
    if spec.c >= 4 and (ext_below is None or ext_below.ker_tau is None):
        failed.append("τ one step down the flag unavailable")
    if failed:
        return _unknown(spec, failed, caveats)
    if spec.c == 3 or ext_below.ker_tau == 0:
        fired = _points_rules(ext)
    else:
        fired = _points_flag_rules(ext, ext_below)
    return _decide(spec, fired, caveats)


def _points_rules(ext: ExtReport) -> list[Clause]:
    fired = []
    if ext.ker_rho1 == 0 and ext.ker_tau == 0:
        fired.append(Clause("points.rho-tau-injective", _COMPONENT, 0, YES, 0))
    if ext.ext1_IXY_A == 0 and ext.ker_tau == 0:
        fired.append(Clause("points.rho-kernel", _EXACT, 1, YES, ext.ker_rho1))
    if ext.ext1_conormal_A == 0:
        fired.append(Clause("points.conormal-vanishes", _EXACT, 2, YES,
                            ext.ker_rho1 + ext.ker_tau - ext.ext1_IXY_A))
    fired.append(Clause("points.rho-tau-bound", _BOUND, 3, UNKNOWN, None,
                        ext.ker_rho1 + ext.ker_tau,
                        note="equality iff unobstructed" if ext.ext1_IXY_A == 0 else ""))
    return fired


def _points_flag_rules(ext: ExtReport, below: ExtReport) -> list[Clause]:
    fired = []
    if ext.ext1_IXY_A == 0 and ext.ext1_IY_IXY == 0 and ext.ext1_IY_B == 0:
        fired.append(Clause("points-flag.ext-vanishing", _EXACT, 0, YES,
                            ext.ker_rho1 + below.ker_tau - below.ext1_IXY_A))
    bound = ext.ker_rho1 + ext.ker_tau + below.ker_tau
    if ext.ext1_IXY_A == 0 and below.ext1_IXY_A == 0 and ext.ext1_conormal_A == 0:
        fired.append(Clause("points-flag.kernel-bound", _EXACT, 1, YES, bound, bound,
                            note="equality: A unobstructed"))
    else:
        fired.append(Clause("points-flag.kernel-bound", _BOUND, 1, UNKNOWN, None, bound))
    return fired


def classify(spec: DegreeSpec, ext: ExtReport | None = None,
             ext_below: ExtReport | None = None) -> Verdict:
    """Dispatch on dim X = n - c."""
    d = spec.n - spec.c
    if d < 0:
        return _unknown(spec, ["n < c: no scheme"])
    if d >= 2 or spec.c == 2:
        return classify_high_dim(spec)
    if ext is None:
        return _unknown(spec, ["instance-level Ext data required"])
    if d == 1:
        if not 3 <= spec.c <= 5:
            return _unknown(spec, ["curve rules need 3 <= c <= 5"])
        return classify_dim1(spec, ext)
    return classify_dim0(spec, ext, ext_below)


def needs_instance(spec: DegreeSpec) -> bool:
    return spec.n - spec.c in (0, 1) and spec.c >= 3


def consistency_with_tangent(verdict: Verdict, hom_IX_A: int | None) -> bool | None:
    """At a smooth point the Hilbert scheme dimension is the tangent dimension."""
    if verdict.unobstructed != YES or verdict.dim_hilb is None or hom_IX_A is None:
        return None
    return verdict.dim_hilb == hom_IX_A


# seeds and scans


def seed_majority(compute: Callable[[int], Any], seeds: Sequence[int] = (0, 1, 2)) -> tuple[Any, list[int]]:
    """Run ``compute`` over seeds until two results agree.

    Returns the agreed value (or the last value if none agree) and the seeds used.
    """
    seen: list[tuple[int, Any]] = []
    for s in seeds:
        val = compute(s)
        for _, other in seen:
            if other == val:
                return val, [x for x, _ in seen] + [s]
        seen.append((s, val))
    return seen[-1][1], [x for x, _ in seen]


@dataclass
class Finding:
    spec: DegreeSpec
    conjectured: int
    tangent_dim: int
    flagged: bool
    seed: int

    def to_dict(self) -> dict[str, Any]:
        return {"spec": self.spec.to_dict(), "conjectured_dim": self.conjectured,
                "tangent_dim": self.tangent_dim, "flagged": self.flagged, "seed": self.seed}


def counterexample_scan(specs: Iterable[DegreeSpec], prime: int | None = None,
                        seed: int = 0, cutoff: int | None = None) -> list[Finding]:
    """Flag zero-dimensional specs whose conjectured dimension exceeds hom(I_X, A)_0.

    hom(I_X, A)_0 is the tangent space of the postulation Hilbert scheme, so
    it bounds the dimension of any family through X.
    """
    from .exactfield import DEFAULT_PRIME
    from .homology import PairHomology
    from .instances import random_instance

    out = []
    for spec in specs:
        if spec.n != spec.c:
            raise ValueError(f"scan needs zero-dimensional specs, got {spec}")
        conj = conjectured_dim(spec).conjectured_dim
        inst = random_instance(spec, prime or DEFAULT_PRIME, seed)
        tangent = PairHomology(inst, cutoff=cutoff).hom_IX_A()
        out.append(Finding(spec, conj, tangent, conj > tangent, seed))
    return out


def all_ones_family(cs: Iterable[int], t: int = 2) -> list[DegreeSpec]:
    """t x (t+c-1) linear matrices with n = c."""
    return [DegreeSpec(t, c, c, (0,) * t, (1,) * (t + c - 1)) for c in cs]
