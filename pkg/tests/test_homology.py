from __future__ import annotations

import pytest
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from detstrata.complexes import br_complex, en_twists
from detstrata.degree_data import DegreeSpec
from detstrata.homology import (EXT_FIELDS, CutoffError, ExtReport, HomComplex, PairHomology,
                                ext1_conormal_A, ext1_IXY_A, induced_kernels, kernel_generators,
                                mb_dim0_instance, present, syzygy_degrees_match, ring_module)
from detstrata.instances import random_instance
from detstrata.strata_formulas import mb_dim0

from _support import POINT_POOL, P, pair_report, resolution_data, spec2


def test_twisted_cubic_ideal_over_the_polynomial_ring():
    inst = random_instance(spec2(3, (1, 1, 1, 2)), P, 0)
    pres = present("ideal_Y_R", inst, 3, depth=2)
    assert pres.degrees[0] == [2, 2, 2]
    assert sorted(pres.degrees[1]) == [3, 3]
    assert pres.degrees[2] == []
    assert syzygy_degrees_match(pres, en_twists((1, 1, 1), (0, 0))[2])
    assert all(pres.composition_is_zero(v) for v in range(2, 7))


@pytest.mark.parametrize("m", [2, 3])
def test_relative_generators_are_the_last_column_minors(m):
    inst = random_instance(spec2(4, (1, 1, 1, m)), P, 0)
    pres = present("relative", inst, 3, depth=1)
    assert sorted(pres.degrees[0]) == [m + 1] * 3


def test_curve_pair_groups():
    rep = pair_report(spec2(4, (1, 1, 1, 3)))
    assert rep.hom_IY_IXY == 0
    assert rep.h0_normal_Y == 18
    assert rep.mb_dim0 == mb_dim0(spec2(4, (1, 1, 1, 3))) == 26
    assert rep.hom_IXY_A == 25 + rep.ker_rho1
    assert all(rep.checks.values())


def test_licci_vanishing_for_codimension_two_y():
    for spec in (spec2(3, (1, 1, 2, 3)), spec2(4, (1, 1, 1, 2)), spec2(3, (1, 2, 2, 3))):
        rep = pair_report(spec)
        assert rep.ext1_IY_B == 0
        # τ maps into zero
        assert rep.ker_tau == rep.ext1_IY_IXY


@pytest.mark.parametrize("m", [3, 4])
def test_relative_self_ext(m):
    assert pair_report(spec2(3, (1, 2, 3, m))).ext1_IXY_IXY == 2


def test_kernels_agree_across_seeds():
    spec = spec2(3, (1, 2, 3, 3))
    a = induced_kernels(random_instance(spec, P, 1))
    b = pair_report(spec, 0)
    assert (a["ker_tau"], a["ker_rho1"], a["dim_im_delta"]) == (b.ker_tau, b.ker_rho1, b.dim_im_delta)


def test_convenience_wrappers():
    inst = random_instance(spec2(3, (1, 2, 2, 3)), P, 0)
    assert ext1_IXY_A(inst) == 0
    assert ext1_conormal_A(inst) == 0


def test_explicit_small_cutoff_is_reported():
    inst = random_instance(spec2(3, (1, 1, 2, 3)), P, 0)
    for cutoff in (2, 4):
        with pytest.raises(CutoffError) as err:
            PairHomology(inst, cutoff=cutoff).report(["ext1_IXY_A"])
        assert err.value.cutoff == cutoff
        assert err.value.open_degree >= cutoff


def test_hilbert_burch_matrix_has_no_syzygies():
    inst = random_instance(spec2(3, (1, 1, 1)), P, 0)
    pres = present("ideal_Y_R", inst, 3, depth=1)
    assert pres.maps[0].src == [3, 3] and pres.maps[0].tgt == [2, 2, 2]
    assert kernel_generators(pres.maps[0], 8).src == []


def test_hom_into_the_ring_itself():
    inst = random_instance(spec2(3, (1, 1, 1, 2)), P, 0)
    pres = present("conormal_Y", inst, 3, depth=2)
    cx = HomComplex(pres, ring_module(inst.quotient(2), "B"))
    assert cx.hom() == pair_report(spec2(3, (1, 1, 1, 2))).h0_normal_Y


def test_report_round_trip_and_targets():
    inst = random_instance(spec2(3, (1, 1, 2, 3)), P, 0)
    rep = PairHomology(inst).report(["ker_rho1", "ext1_IXY_A"])
    again = ExtReport.from_dict(rep.to_dict())
    assert again == rep
    assert set(rep.values()) >= {"ker_rho1", "ext1_IXY_A"}
    assert rep.hom_IX_A is None
    with pytest.raises(ValueError):
        PairHomology(inst).report(["nonsense"])
    full = pair_report(spec2(3, (1, 1, 2, 3)))
    assert set(EXT_FIELDS) <= set(full.values())


# property suites over the shared pool of small zero-dimensional specs


def point_specs():
    """Random members of the shared pool of small zero-dimensional specs."""
    return st.sampled_from(POINT_POOL)


@given(point_specs())
@settings(max_examples=100, deadline=None, suppress_health_check=[HealthCheck.too_slow])
def test_pair_identities_on_random_points(spec):
    rep = pair_report(spec, 0)
    # degree-zero bookkeeping of 0 -> B -> M_B(a) -> Hom(I_{X/Y}, A) -> Ext^1
    assert rep.checks["mb_bookkeeping"]
    assert rep.hom_IXY_A == mb_dim0(spec) - 1 + rep.ker_rho1
    # the solved image of δ is a genuine dimension
    assert 0 <= rep.dim_im_delta <= rep.ext1_IXY_A
    assert all(rep.checks.values()), rep.checks


@given(point_specs())
@settings(max_examples=100, deadline=None, suppress_health_check=[HealthCheck.too_slow])
def test_syzygy_degrees_follow_the_resolutions(spec):
    ideal, coker, mb = resolution_data(spec)
    y = spec.with_c(spec.c - 1)
    assert sorted(ideal[0]) == sorted(-e for e in en_twists(y.a, y.b)[1])
    assert sorted(ideal[1]) == sorted(-e for e in en_twists(y.a, y.b)[2])
    assert sorted(coker[2]) == sorted(-e for e in br_complex(y).steps[2])
    assert mb == mb_dim0(spec)
