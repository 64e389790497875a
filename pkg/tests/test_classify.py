from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from detstrata.classify import (NO, UNKNOWN, YES, all_ones_family, classify, classify_dim0,
                                classify_dim1, classify_high_dim, consistency_with_tangent,
                                maineq_status, needs_instance, seed_majority)
from detstrata.homology import ExtReport
from detstrata.strata_formulas import conjectured_dim

from _support import all_linear, ex_curve_linear, ex_points_123, ex_points_p4, spec2


def ext(i=3, **kw) -> ExtReport:
    """Synthetic report; unset groups default to 0."""
    base = dict(hom_IY_IXY=0, ker_tau=0, ker_rho1=0, ext1_IXY_A=0, ext1_conormal_A=0,
                ext1_IY_IXY=0, ext1_IY_B=0)
    base.update(kw)
    return ExtReport(i, 0, 32003, 10, **base)


# schemes of dimension at least two


def test_high_dim_gates():
    v = classify(all_linear(2, 4))
    assert (v.rule, v.component, v.unobstructed, v.codim) == ("highdim.component", YES, YES, 0)
    assert v.dim_hilb == v.dim_W == conjectured_dim(all_linear(2, 4)).conjectured_dim
    assert classify(all_linear(3, 5)).rule == "highdim.component"
    assert classify(all_linear(4, 6)).rule == "highdim.component"
    off = classify_high_dim(all_linear(5, 7))
    assert off.rule is None and off.component == UNKNOWN
    assert any("range" in f for f in off.failed_hypotheses)


def test_empty_stratum_is_never_classified():
    v = classify(spec2(5, (0, 0, 1, 1), b=(0, 1)))
    assert v.rule is None
    assert any("empty" in f for f in v.failed_hypotheses)


def test_instance_data_is_requested_when_missing():
    spec = ex_points_123(3)
    assert needs_instance(spec) and not needs_instance(all_linear(3, 5))
    v = classify(spec)
    assert v.rule is None and "instance-level Ext data required" in v.failed_hypotheses


# curves


def test_curve_rules_in_precedence_order():
    spec = ex_curve_linear(3)
    v = classify_dim1(spec, ext(ker_tau=0))
    assert v.rule == "curve.tau-injective" and v.component == YES
    assert [c.rule for c in v.fired] == ["curve.tau-injective", "curve.conormal-vanishes", "curve.tau-bound"]
    v = classify_dim1(spec, ext(ker_tau=3, ext1_IXY_A=2))
    assert (v.rule, v.codim, v.component, v.unobstructed) == ("curve.conormal-vanishes", 1, NO, YES)
    assert v.dim_hilb == v.dim_W + 1
    v = classify_dim1(spec, ext(ker_tau=3, ext1_IXY_A=1, ext1_conormal_A=4))
    assert (v.rule, v.codim, v.codim_upper, v.unobstructed) == ("curve.tau-bound", None, 3, UNKNOWN)
    assert v.fired[-1].note == ""
    v = classify_dim1(spec, ext(ker_tau=3, ext1_conormal_A=4))
    assert v.fired[-1].note == "equality iff unobstructed"


def test_curve_caveat_at_codimension_five():
    spec = all_linear(5, 6)
    v = classify_dim1(spec, ext(i=5))
    assert v.caveats and "characteristic" in v.caveats[0]
    assert not classify_dim1(ex_curve_linear(3), ext()).caveats
    with pytest.raises(ValueError):
        classify_dim1(ex_points_123(3), ext())


# zero-dimensional schemes


def test_points_rules():
    spec = ex_points_123(3)
    v = classify_dim0(spec, ext(ker_rho1=0, ker_tau=0))
    assert v.rule == "points.rho-tau-injective"
    v = classify_dim0(spec, ext(ker_rho1=2))
    assert (v.rule, v.codim) == ("points.rho-kernel", 2)
    v = classify_dim0(spec, ext(ker_rho1=2, ker_tau=3, ext1_IXY_A=1))
    assert (v.rule, v.codim) == ("points.conormal-vanishes", 4)
    v = classify_dim0(spec, ext(ker_rho1=2, ker_tau=3, ext1_IXY_A=1, ext1_conormal_A=1))
    assert (v.rule, v.codim, v.codim_upper) == ("points.rho-tau-bound", None, 5)


def test_overlapping_exact_clauses_agree():
    v = classify_dim0(ex_points_123(3), ext(ker_rho1=2))
    assert v.consistent
    assert [c.codim for c in v.fired if c.codim is not None] == [2, 2]


def test_hom_bound_failure_blocks_point_rules():
    spec = ex_points_123(3)
    v = classify_dim0(spec, ext(hom_IY_IXY=10 ** 6))
    assert v.rule is None and any("Hom bound" in f for f in v.failed_hypotheses)
    ok, how = maineq_status(spec, None)
    assert isinstance(ok, bool) and how in ("degree condition", "not certified")


def test_flag_rules_one_step_down():
    spec = ex_points_p4(3)
    top = ext(i=4, ker_rho1=1, ker_tau=2)
    with_injective = classify_dim0(spec, top, ext(i=3, ker_tau=0))
    assert (with_injective.rule, with_injective.codim) == ("points.conormal-vanishes", 3)
    below = ext(i=3, ker_tau=3, ext1_IXY_A=0)
    v = classify_dim0(spec, top, below)
    assert (v.rule, v.codim) == ("points-flag.ext-vanishing", 4)
    assert v.fired[1].rule == "points-flag.kernel-bound" and v.fired[1].codim == 6
    assert not v.consistent
    v = classify_dim0(spec, ext(i=4, ker_rho1=1, ker_tau=2, ext1_IY_B=1), below)
    assert (v.rule, v.codim) == ("points-flag.kernel-bound", 6)
    v = classify_dim0(spec, ext(i=4, ker_rho1=1, ker_tau=2, ext1_IY_B=1, ext1_conormal_A=1), below)
    assert (v.rule, v.codim, v.codim_upper) == ("points-flag.kernel-bound", None, 6)
    missing = classify_dim0(spec, top, None)
    assert missing.rule is None


def test_caveats_for_five_and_six_points():
    for c in (5, 6):
        v = classify_dim0(all_linear(c), ext(i=c), ext(i=c - 1))
        assert any("characteristic" in x for x in v.caveats)
    assert not classify_dim0(ex_points_123(3), ext()).caveats


@given(st.integers(0, 4), st.integers(0, 4), st.integers(0, 2), st.integers(0, 2))
@settings(max_examples=200, deadline=None)
def test_verdict_invariants(rho, tau, e1, econ):
    spec = ex_points_123(4)
    v = classify_dim0(spec, ext(ker_rho1=rho, ker_tau=tau, ext1_IXY_A=min(e1, tau),
                                ext1_conormal_A=econ))
    assert v.known
    ranks = [(c.rank, c.order) for c in v.fired]
    assert ranks == sorted(ranks) and v.rule == v.fired[0].rule
    if v.codim is not None:
        assert v.dim_hilb == v.dim_W + v.codim
        assert v.component == (YES if v.codim == 0 else NO)
        assert v.codim <= rho + tau
    else:
        assert v.codim_upper == rho + tau


def test_tangent_consistency():
    spec = ex_points_123(3)
    v = classify_dim0(spec, ext(ker_rho1=2))
    assert consistency_with_tangent(v, v.dim_hilb) is True
    assert consistency_with_tangent(v, v.dim_hilb + 1) is False
    assert consistency_with_tangent(v, None) is None


def test_seed_majority():
    vals = {0: 5, 1: 7, 2: 7}
    assert seed_majority(vals.get) == (7, [0, 1, 2])
    assert seed_majority({0: 1, 1: 1, 2: 9}.get) == (1, [0, 1])
    assert seed_majority({0: 1, 1: 2, 2: 3}.get) == (3, [0, 1, 2])


def test_all_ones_family():
    fam = all_ones_family(range(3, 6))
    assert [(s.c, s.n, s.a) for s in fam] == [(3, 3, (1,) * 4), (4, 4, (1,) * 5), (5, 5, (1,) * 6)]
