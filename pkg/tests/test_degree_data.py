from __future__ import annotations

import pytest
from hypothesis import given, settings

from detstrata.degree_data import (SATURATED, DegreeSpec, SpecError, alpha_holds, alpha_level,
                                   dim0new_check, ell, h_invariant, hypothesis_flags, nonempty,
                                   validate)

from _support import small_specs, spec2


def test_validate_accepts_a_well_formed_spec():
    spec = validate({"t": 2, "c": 3, "n": 4, "b": [0, 0], "a": [1, 1, 1, 2]})
    assert spec == DegreeSpec(2, 3, 4, (0, 0), (1, 1, 1, 2))
    assert spec.columns == 4 and spec.a_last == 2


def test_validate_lists_every_problem():
    with pytest.raises(SpecError) as err:
        validate({"t": 2, "c": 3, "n": 4, "b": [1, 0], "a": [1, 1]})
    reasons = err.value.reasons
    assert any("a has length" in r for r in reasons)
    assert any("b must be sorted" in r for r in reasons)


@pytest.mark.parametrize("raw", [
    {"t": 2, "c": 3, "n": 4, "b": [0, 0]},
    {"t": "2", "c": 3, "n": 4, "b": [0, 0], "a": [1, 1, 1, 1]},
    {"t": 2, "c": 3, "n": 4, "b": [0, 0], "a": "1111"},
    {"t": 1, "c": 3, "n": 4, "b": [0], "a": [1, 1, 1]},
    {"t": 2, "c": 3, "n": 4, "b": [0, 0], "a": [1, 1, 1, True]},
])
def test_validate_rejects_malformed_input(raw):
    with pytest.raises(SpecError):
        validate(raw)


def test_n_below_c_is_allowed_but_has_no_scheme():
    spec = spec2(2, (1, 1, 1, 1))
    assert not spec.has_scheme


def test_ell_and_h():
    spec = spec2(4, (1, 1, 1, 3))
    # first t+i-1 = 3 columns
    assert ell(spec, 2) == 3
    assert ell(spec, 3) == 6
    assert ell(spec2(4, (1, 1, 1, 2, 3)), 4) == 8
    # h_0 = 2 a_3 - ell_3 + n
    assert h_invariant(spec, 3) == 2 * 3 - 6 + 4
    # constructed zero: 2 a_last = ell_3 - n
    assert h_invariant(spec2(2, (1, 1, 2, 2)), 3) == 0
    with pytest.raises(ValueError):
        ell(spec, 4)


def test_nonempty():
    assert nonempty(spec2(3, (1, 1, 1, 2)))
    assert not nonempty(DegreeSpec(2, 3, 3, (0, 1), (1, 1, 1, 2)))
    assert not nonempty(spec2(3, (0, 1, 1, 2)))


def test_alpha_levels():
    lvl = alpha_level(spec2(4, (1, 1, 1, 5)))
    assert lvl.alpha_max == SATURATED and lvl.bounds[3] == 5
    # a_0 = b_1 holds weakly at level 1
    assert alpha_level(spec2(4, (0, 1, 1, 1))).alpha_max is not None
    # a_0 < b_2 fails the level-2 condition
    spec = DegreeSpec(2, 3, 4, (0, 2), (1, 3, 3, 3))
    assert not alpha_holds(spec, 2) and alpha_holds(spec, 1)
    assert alpha_level(spec).alpha_max == 1
    with pytest.raises(ValueError):
        alpha_holds(spec, 0)


@given(small_specs())
@settings(max_examples=100, deadline=None)
def test_alpha_max_is_the_largest_passing_level(spec):
    lvl = alpha_level(spec)
    passing = [a for a in range(1, spec.t + 1) if alpha_holds(spec, a)]
    if lvl.alpha_max == SATURATED:
        assert passing[-1] == spec.t and all(alpha_holds(spec, a) for a in range(spec.t, spec.t + 3))
    elif lvl.alpha_max is None:
        assert not alpha_holds(spec, 1)
    else:
        assert lvl.alpha_max == max(a for a in passing if all(alpha_holds(spec, b) for b in range(1, a + 1)))


def test_dim0new():
    assert dim0new_check(spec2(4, (1, 1, 1, 3)))
    assert not dim0new_check(spec2(4, (1, 1, 1, 1)))
    with pytest.raises(ValueError):
        dim0new_check(spec2(4, (1, 1, 1)))


def test_flags_and_flag_chain():
    spec = spec2(4, (1, 1, 1, 2, 3))
    flags = hypothesis_flags(spec)
    assert flags.nonempty and flags.dim0new_ok
    assert flags.column_delete_chain == [3, 2]
    assert spec.with_c(3) == spec2(4, (1, 1, 1, 2))
    assert spec.delete_last_column() == spec.with_c(3)
    with pytest.raises(ValueError):
        spec.with_c(1)
    assert flags.to_dict()["alpha_bounds"]["2"] == 4


@given(small_specs())
@settings(max_examples=100, deadline=None)
def test_json_round_trip(spec):
    assert validate(__import__("json").loads(spec.to_json())) == spec


@given(small_specs())
@settings(max_examples=100, deadline=None)
def test_nonempty_is_monotone(spec):
    if nonempty(spec):
        raised = DegreeSpec(spec.t, spec.c, spec.n, spec.b, tuple(x + 1 for x in spec.a))
        assert nonempty(raised)
    else:
        lowered = DegreeSpec(spec.t, spec.c, spec.n, spec.b, tuple(max(x - 1, 0) for x in spec.a))
        assert not nonempty(lowered)
