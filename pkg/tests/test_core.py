"""Normalization, invariants, Hilbert coefficients, and basic predicates."""
from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import hilbert_coefficient_oracle
from wci import (
    Family,
    InvalidFamilyError,
    Pair,
    ambient_well_formed,
    anticanonical_degree,
    family_json_record,
    fano_index,
    h0_anticanonical,
    hilbert_coefficient,
    invariants,
    is_linear_cone,
    is_sporadic,
    normalize,
    render_ambient,
    render_degrees,
)

weight_lists = st.lists(st.integers(1, 12), min_size=1, max_size=8)
degree_lists = st.lists(st.integers(1, 12), min_size=0, max_size=3)


def fam(degrees, weights) -> Family:
    return Family(tuple(degrees), tuple(weights))


# ------------------------------------------------------------- normalize


def test_normalize_sorts_both_lists():
    assert normalize(Pair((6, 4), (3, 1, 2, 1, 1, 1))) == Pair(
        (4, 6), (1, 1, 1, 1, 2, 3)
    )


def test_normalize_identity_on_sorted():
    p = Pair((3,), (1, 1, 1, 1))
    assert normalize(p) == p


def test_normalize_large_example():
    p = normalize(Pair((10, 4), (5, 2, 2, 1, 1, 1, 1, 1, 1)))
    assert p == Pair((4, 10), (1, 1, 1, 1, 1, 1, 2, 2, 5))


@given(degree_lists, weight_lists)
def test_normalize_idempotent_and_multiset_preserving(ds, ws):
    p = normalize(Pair(tuple(ds), tuple(ws)))
    assert normalize(p) == p
    assert sorted(p.degrees) == sorted(ds)
    assert sorted(p.weights) == sorted(ws)


def test_family_normalizes_on_construction():
    f = Family((6, 4), (3, 1, 2, 1, 1, 1))
    assert f.degrees == (4, 6)
    assert f.weights == (1, 1, 1, 1, 2, 3)


def test_family_rejects_dimension_zero():
    with pytest.raises(InvalidFamilyError):
        Family((2,), (1, 1))


def test_family_dimension_one_conventions():
    # the codimension-0 line and the conic are the only dim-1 families
    assert Family((), (1, 1)).dimension == 1
    assert Family((2,), (1, 1, 1)).dimension == 1
    with pytest.raises(InvalidFamilyError):
        Family((3,), (1, 1, 1))


# ------------------------------------------------------------ fano_index


def test_fano_index_examples():
    assert fano_index(fam((4, 6), (1, 1, 1, 1, 2, 2, 3))) == 1
    assert fano_index(fam((3,), (1, 1, 1, 1, 1))) == 2
    assert fano_index(fam((6,), (1, 1, 2, 3))) == 1


@given(degree_lists, weight_lists)
def test_fano_index_is_sum_difference(ds, ws):
    p = Pair(tuple(ds), tuple(ws))
    assert fano_index(p) == sum(ws) - sum(ds)


# ------------------------------------------------------------ invariants


def test_invariants_weighted_hypersurface():
    rep = invariants(fam((10,), (1, 1, 1, 1, 1, 1, 5)))
    assert rep.dimension == 5
    assert rep.index == 1
    assert rep.variance == 4
    assert rep.anticanonical_degree == 2
    # the definitional recomputation: no weight 2 and ones-1 == dimension
    assert rep.sporadic is False


def test_invariants_plain_intersection():
    rep = invariants(fam((3, 3), (1,) * 7))
    assert rep.dimension == 4
    assert rep.index == 1
    assert rep.variance == 2
    assert rep.anticanonical_degree == 9
    assert rep.s2 == 2
    assert rep.sporadic is False


def test_invariants_degree_one_row():
    rep = invariants(fam((6, 6), (1, 1, 1, 2, 2, 3, 3)))
    assert rep.anticanonical_degree == 1
    assert rep.variance == 2
    assert rep.sporadic is True


def test_variance_identity_fields():
    rep = invariants(fam((4, 6), (1, 1, 1, 1, 2, 2, 3)))
    assert rep.coindex == rep.dimension + 1 - rep.index
    assert rep.variance == rep.coindex - rep.codimension
    assert rep.linear_system_dim == rep.ones - 1


def test_anticanonical_degree_is_exact_rational():
    # index 1, products 6 / 8: not an integer, must stay exact
    d = anticanonical_degree(Pair((6,), (1, 2, 4)))
    assert d == Fraction(3, 4)


def test_invariants_reports_h0_at_positive_index():
    # P^4 cubic has index 2: h0(-K) is the coefficient at t^2
    rep = invariants(fam((3,), (1, 1, 1, 1, 1)))
    assert rep.index == 2
    assert rep.h0_anticanonical == hilbert_coefficient(
        fam((3,), (1, 1, 1, 1, 1)), 2
    )


# -------------------------------------------------- hilbert_coefficient


def test_hilbert_coefficient_examples():
    assert hilbert_coefficient(fam((6,), (1, 1, 1, 1, 3)), 1) == 4
    assert hilbert_coefficient(fam((6,), (1, 1, 1, 1, 3)), 0) == 1
    assert hilbert_coefficient(fam((10,), (1, 1, 1, 1, 2, 5)), 1) == 4


@given(degree_lists, weight_lists, st.integers(0, 12))
@settings(max_examples=150)
def test_hilbert_coefficient_matches_inclusion_exclusion(ds, ws, m):
    p = Pair(tuple(ds), tuple(ws))
    assert hilbert_coefficient(p, m) == hilbert_coefficient_oracle(ds, ws, m)


def test_h0_equals_ones_at_index_one(small_families):
    for f in small_families:
        if f.index == 1:
            assert h0_anticanonical(f) == f.ones


# ------------------------------------------------------------ predicates


def test_is_sporadic_examples():
    assert is_sporadic(fam((6,), (1, 1, 1, 1, 1, 2))) is True
    assert is_sporadic(fam((6,), (1, 1, 1, 1, 3))) is False
    # recomputed per the definition; the printed table disagrees and the
    # difference is carried in the golden-table allowlist
    assert is_sporadic(fam((10,), (1, 1, 1, 1, 1, 1, 5))) is False


def test_is_linear_cone_examples():
    assert is_linear_cone(Pair((4, 6), (1, 1, 1, 1, 2, 2, 3))) is False
    assert is_linear_cone(Pair((2, 3), (1, 1, 1, 1, 1, 2))) is True
    assert is_linear_cone(Pair((6,), (1, 1, 2, 3))) is False


def test_ambient_well_formed_examples():
    assert ambient_well_formed((1, 1, 2, 3)) is True
    assert ambient_well_formed((2, 2, 2)) is False
    assert ambient_well_formed((1, 2, 2, 3, 3)) is True


@given(st.lists(st.integers(1, 15), min_size=2, max_size=6))
def test_ambient_well_formed_matches_definition(ws):
    ws = tuple(ws)
    from math import gcd

    expected = all(
        gcd(*(ws[j] for j in range(len(ws)) if j != i)) == 1
        for i in range(len(ws))
    )
    assert ambient_well_formed(ws) == expected


# ------------------------------------------------------------- rendering


def test_render_ambient_plain_and_weighted():
    assert render_ambient((1, 1, 1, 1)) == "P^3"
    assert render_ambient((1, 1, 1, 1, 2, 2, 3)) == "P(1^4,2^2,3)"
    assert render_ambient((1, 1, 2, 3)) == "P(1^2,2,3)"


def test_render_degrees_never_compresses():
    assert render_degrees(()) == ""
    assert render_degrees((4, 6)) == "4,6"
    assert render_degrees((6, 6)) == "6,6"


def test_family_json_record_shape():
    rec = family_json_record(fam((6,), (1, 1, 2, 3)))
    assert list(rec) == ["weights", "degrees", "ambient", "invariants"]
    assert rec["weights"] == [1, 1, 2, 3]
    assert rec["degrees"] == [6]
    assert rec["ambient"] == "P(1^2,2,3)"
    inv = rec["invariants"]
    assert inv["index"] == 1
    assert inv["variance"] == 1
    assert inv["sporadic"] is True
    assert inv["anticanonical_degree"] == 1
