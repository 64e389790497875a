from __future__ import annotations

from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings

from detstrata.complexes import (br_complex, br_k_readout, br_rank, en_complex, en_rank,
                                 generator_degrees, gradalg_iso_check, h_vector, hilbert_function,
                                 hilbert_polynomial)
from detstrata.degree_data import DegreeSpec
from detstrata.gradedring import PolyRing
from detstrata.strata_formulas import k_term

from _support import (linear_plus_quadric, oracle_en_ranks, oracle_hilbert_poly_value,
                      oracle_ideal_hf, small_specs, spec2)


def test_hilbert_burch_shapes():
    spec = spec2(3, (1, 1, 1))
    assert en_complex(spec).steps == ((0,), (-2, -2, -2), (-3, -3))
    assert br_complex(spec).steps == ((0, 0), (-1, -1, -1), (-3,))
    assert en_complex(spec).minimality_clashes() == []


def test_generator_degrees():
    assert generator_degrees(spec2(3, (1, 1, 1, 2))) == [2, 2, 2, 3, 3, 3]
    assert generator_degrees(spec2(3, (1, 1, 1))) == [2, 2, 2]
    assert generator_degrees(DegreeSpec(3, 3, 3, (0, 0, 0), (1,) * 5)) == [3] * 10


@given(small_specs())
@settings(max_examples=150, deadline=None)
def test_ranks_match_the_closed_forms(spec):
    en = en_complex(spec).ranks()
    assert en == oracle_en_ranks(spec.t, spec.c)
    assert en == [en_rank(spec, k) for k in range(spec.c + 1)]
    assert br_complex(spec).ranks() == [br_rank(spec, k) for k in range(spec.c + 1)]


@given(small_specs(nonempty_only=True))
@settings(max_examples=150, deadline=None)
def test_euler_characteristic_of_the_complexes(spec):
    # A = R/I has rank zero, so the alternating rank sum of its resolution vanishes
    assert sum((-1) ** k * r for k, r in enumerate(en_complex(spec).ranks())) == 0


def test_points_h_vectors():
    for c in (3, 4, 5):
        spec = linear_plus_quadric(c, c)
        assert h_vector(spec, 6) == [1, c + 1, 2 * c + 1, 2 * c + 1, 2 * c + 1, 2 * c + 1]
    assert hilbert_function(spec2(3, (1, 1, 1, 1)), -1) == 0


def test_twisted_cubic_hilbert_data():
    hd = hilbert_polynomial(spec2(3, (1, 1, 1)))
    assert hd.hp == [Fraction(1), Fraction(3)]
    assert (hd.degree, hd.genus, hd.dimension) == (3, 0, 1)


@pytest.mark.parametrize("m", range(1, 7))
def test_curve_degree_and_genus(m):
    hd = hilbert_polynomial(spec2(4, (1, 1, 1, m)))
    assert (hd.degree, hd.genus) == (3 * m + 1, 3 * m * (m - 1) // 2)
    hd = hilbert_polynomial(spec2(4, (1, 2, 3, m)))
    assert (hd.degree, hd.genus) == (11 * m + 6, (11 * m * m + 29 * m + 8) // 2)


@given(small_specs(nonempty_only=True))
@settings(max_examples=150, deadline=None)
def test_hilbert_polynomial_interpolates_the_function(spec):
    if spec.n < spec.c:
        with pytest.raises(ValueError):
            hilbert_polynomial(spec)
        return
    hd = hilbert_polynomial(spec)
    start = hd.stabilizes_at + 3
    tail = [hilbert_function(spec, start + i) for i in range(spec.n + 1)]
    for v in (hd.stabilizes_at, hd.stabilizes_at + 7):
        assert hd.hp_at(v) == oracle_hilbert_poly_value(tail, start, v) == hilbert_function(spec, v)
    assert len(hd.hp) - 1 == spec.n - spec.c
    assert hd.degree > 0


def test_gradalg_iso_check():
    assert gradalg_iso_check(spec2(3, (1, 1, 1, 2)))
    assert gradalg_iso_check(spec2(3, (1, 1, 1, 1)))
    # HF(2) = 7 < 13 = degree
    assert not gradalg_iso_check(spec2(3, (1, 1, 1, 4)))
    with pytest.raises(ValueError):
        gradalg_iso_check(spec2(4, (1, 1, 1, 2)))


@given(small_specs(min_c=3, nonempty_only=True))
@settings(max_examples=150, deadline=None)
def test_br_readout_recovers_the_last_correction_term(spec):
    if spec.a[0] > spec.b[-1]:
        assert br_k_readout(spec) == k_term(spec, spec.c)


def test_hilbert_function_matches_random_minors():
    # the EN count against all multiples of the minors of a random 2x3 linear matrix
    rng = np.random.default_rng(2)
    ring = PolyRing(3)
    ent = [[ring.random(1, rng) for _ in range(3)] for _ in range(2)]
    minors = [ent[0][i] * ent[1][j] - ent[0][j] * ent[1][i] for i, j in ((0, 1), (0, 2), (1, 2))]
    gens = [m.terms() for m in minors]
    spec = spec2(3, (1, 1, 1))
    for d in range(5):
        assert oracle_ideal_hf(gens, 4, d) == hilbert_function(spec, d)
