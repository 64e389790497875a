from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from detstrata.degree_data import DegreeSpec
from detstrata.strata_formulas import (binom, conjectured_dim, inductive_dim,
                                       inductive_dim_consistent, k_general, k_term, lambda_c,
                                       lambda_step, maineq_holds, maineq_rhs, mb_dim0, uniform_dim)

from _support import small_specs, spec2


def test_lambda_examples():
    assert lambda_c(spec2(4, (1, 1, 1))) == 18
    assert lambda_c(spec2(4, (1, 1, 1, 3))) == 42
    assert lambda_c(spec2(4, (1, 1, 1, 1))) == 21


def test_binomial_convention():
    assert binom(2, 3) == 0 and binom(-1, 2) == 0 and binom(5, 2) == 10


def test_k_terms_and_totals():
    spec = spec2(4, (1, 1, 1, 2, 2))
    assert k_term(spec, 3) == 0 and k_term(spec, 4) == 0
    assert conjectured_dim(spec).conjectured_dim == 44
    assert k_term(spec2(4, (1, 1, 1, 3)), 3) == 1
    assert conjectured_dim(spec2(3, (1, 2, 3, 4))).conjectured_dim == 79
    assert conjectured_dim(spec2(3, (1, 2, 3, 3))).conjectured_dim == 67
    for m in range(4, 9):
        assert conjectured_dim(spec2(3, (1, 1, 3, m))).conjectured_dim == 7 * m + 25
    # the two equal top columns add an a-a term
    assert conjectured_dim(spec2(3, (1, 1, 3, 3))).conjectured_dim == 45


def test_empty_stratum_reports_minus_one():
    rep = conjectured_dim(spec2(3, (0, 1, 1, 2)))
    assert not rep.nonempty and rep.conjectured_dim == -1


def test_report_breakdown_adds_up():
    rep = conjectured_dim(spec2(4, (1, 1, 1, 3)))
    s = rep.lambda_terms
    assert s["a_minus_b"] + s["b_minus_a"] - s["a_minus_a"] - s["b_minus_b"] + 1 == rep.lambda_c
    assert rep.K[3] == sum(sign * binom(x, 4) for sign, x, _ in rep.K_terms[3])
    assert rep.to_dict()["K"] == {"3": 1}


def test_uniform_examples():
    assert uniform_dim(2, 3, 3, 1) == 13
    assert uniform_dim(2, 3, 4, 1) == 21 == conjectured_dim(spec2(4, (1, 1, 1, 1))).conjectured_dim
    with pytest.raises(ValueError):
        uniform_dim(2, 3, 3, 0)


def test_mb_dim0_and_maineq():
    assert mb_dim0(spec2(4, (1, 1, 1, 3))) == 26
    spec = spec2(4, (1, 1, 1, 3))
    assert maineq_rhs(spec) == 0
    assert maineq_holds(spec, 0) and not maineq_holds(spec, 1)
    # equality case at rhs
    spec = spec2(3, (1, 2, 3, 3))
    assert maineq_holds(spec, maineq_rhs(spec))
    with pytest.raises(ValueError):
        maineq_holds(spec, -1)


def test_inductive_dimension_guards():
    spec = spec2(4, (1, 1, 1, 3))
    assert inductive_dim(spec, 18, 26, 0) == 43 == conjectured_dim(spec).conjectured_dim
    assert not inductive_dim_consistent(1, 1, 5)
    with pytest.raises(ValueError):
        inductive_dim(spec2(4, (1, 1, 1)), 1, 1, 0)


# property suites over small random specs


@given(small_specs(min_c=3, nonempty_only=True))
@settings(max_examples=300, deadline=None)
def test_lambda_difference_identity(spec):
    assert lambda_c(spec) - lambda_c(spec.delete_last_column()) == lambda_step(spec)


@given(small_specs(min_c=3))
@settings(max_examples=300, deadline=None)
def test_k_special_forms_agree_with_general_sum(spec):
    for i in range(3, min(spec.c, 4) + 1):
        assert k_term(spec, i) == k_general(spec, i)


@given(st.integers(2, 3), st.integers(2, 4), st.integers(0, 6), st.integers(1, 4))
@settings(max_examples=200, deadline=None)
def test_uniform_formula_agrees_with_general_formula(t, c, n, d):
    spec = DegreeSpec(t, c, n, (0,) * t, (d,) * (t + c - 1))
    assert uniform_dim(t, c, n, d) == conjectured_dim(spec).conjectured_dim


@given(small_specs(min_c=2))
@settings(max_examples=200, deadline=None)
def test_twist_invariants_grow_by_the_added_column(spec):
    from detstrata.degree_data import ell
    for i in range(2, spec.c):
        assert ell(spec, i + 1) - ell(spec, i) == spec.a[spec.t + i - 1]
