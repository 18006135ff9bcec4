"""Expansion and stripping of families, generator detection, parametric rows."""
from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from wci import (
    Family,
    StripError,
    classify_generator,
    expand,
    fano_index,
    invariants,
    is_combinatorially_smooth,
    sigma_c,
    strip,
)


def fam(degrees, weights) -> Family:
    return Family(tuple(degrees), tuple(weights))


P3_CUBIC = Family((3,), (1, 1, 1, 1))
P4_CUBIC = Family((3,), (1, 1, 1, 1, 1))


# ---------------------------------------------------------------- expand


def test_expand_adds_ones():
    assert expand(P3_CUBIC, 1, 0) == P4_CUBIC


def test_expand_adds_quadric():
    assert expand(P4_CUBIC, 0, 1) == fam((2, 3), (1,) * 7)


def test_expand_identity():
    f = fam((4, 6), (1, 1, 1, 1, 2, 2, 3))
    assert expand(f, 0, 0) == f


@given(st.integers(0, 3), st.integers(0, 3))
def test_expand_index_and_variance_laws(l, m):
    base = fam((6,), (1, 1, 1, 1, 3))
    ex = expand(base, l, m)
    assert fano_index(ex) == fano_index(base) + l
    assert invariants(ex).variance == invariants(base).variance
    assert ex.degrees.count(2) == m
    assert ex.ones == base.ones + l + 2 * m


# ----------------------------------------------------------------- strip


def test_strip_quadric_intersection():
    res = strip(fam((2, 4), (1,) * 7))
    assert res.generator == fam((4,), (1, 1, 1, 1, 1))
    assert (res.l, res.m) == (0, 1)


def test_strip_index_two_hypersurface():
    res = strip(P4_CUBIC)
    assert res.generator == P3_CUBIC
    assert (res.l, res.m) == (1, 0)
    assert res.is_generator is False


def test_strip_fixes_generators():
    res = strip(fam((6,), (1, 1, 1, 1, 3)))
    assert res.generator == fam((6,), (1, 1, 1, 1, 3))
    assert (res.l, res.m) == (0, 0)
    assert res.is_generator is True


def test_strip_rejects_missing_units():
    # index 3 asks for two spare unit weights; only one present
    with pytest.raises(StripError):
        strip(fam((6,), (1, 2, 2, 4)))


def test_strip_expand_roundtrip(small_families):
    line = Family((), (1, 1))
    for f in small_families:
        for l in range(3):
            for m in range(3):
                res = strip(expand(f, l, m))
                # strip is always a section of expand
                assert expand(res.generator, res.l, res.m) == expand(f, l, m)
                if f == line and m >= 1:
                    # towers of quadrics canonicalize to the conic picture
                    assert res.generator == Family((2,), (1, 1, 1))
                    assert (res.l, res.m) == (l + 1, m - 1)
                else:
                    assert (res.generator, res.l, res.m) == (f, l, m)


def test_strip_bottoms_out_at_the_conventions():
    res = strip(Family((), (1, 1, 1, 1)))
    assert res.generator == Family((), (1, 1))
    assert (res.l, res.m) == (2, 0)
    res = strip(Family((2,), (1, 1, 1, 1)))
    assert res.generator == Family((2,), (1, 1, 1))
    assert (res.l, res.m) == (1, 0)


# ---------------------------------------------------- classify_generator


def test_classify_generator_examples():
    assert classify_generator(fam((6, 6), (1,) * 7 + (3, 3))) == "series"
    assert (
        classify_generator(fam((6, 6), (1, 1, 1, 2, 2, 3, 3))) == "semiseries"
    )
    assert classify_generator(fam((2, 3), (1,) * 7)) == "not-a-generator"


def test_classified_kinds_on_enumerated_records(small_corpus):
    conventions = (Family((), (1, 1)), Family((2,), (1, 1, 1)))
    for rec in small_corpus:
        assert classify_generator(rec.family) == rec.kind
        if rec.family in conventions:
            continue
        assert rec.family.index == 1
        inv = invariants(rec.family)
        if rec.kind == "series":
            assert not inv.sporadic
            assert inv.s2 == inv.codimension
        else:
            assert inv.sporadic


# ------------------------------------------------------------- sigma_c


def test_sigma_two_row_shape():
    rows = sigma_c(2)
    assert len(rows) == 11
    parametric = [r for r in rows if r.fixed_m is None]
    sporadic = [r for r in rows if r.fixed_m is not None]
    assert len(parametric) == 5
    assert len(sporadic) == 6
    assert [r.index for r in parametric] == [3, 2, 1, 1, 1]
    assert all(not r.sporadic for r in parametric)
    assert all(r.sporadic for r in sporadic)


def test_sigma_two_rendered_strings():
    rows = sigma_c(2)
    assert rows[0].ambient_string() == "P^(4+2m)"
    assert rows[0].degrees_string() == "2^(m+1)"
    assert rows[0].degree_string() == "54*6^m"
    assert rows[1].ambient_string() == "P^(4+2m)"
    assert rows[1].degrees_string() == "2^m,3"
    assert rows[2].ambient_string() == "P(1^(4+2m),3)"
    assert rows[2].degrees_string() == "2^m,6"


def test_sigma_two_degree_closed_forms():
    rows = sigma_c(2)
    # the top row walks 9 * 6^(m+1)
    assert [rows[0].degree_at(m) for m in range(5)] == [
        9 * 6 ** (m + 1) for m in range(5)
    ]
    assert rows[0].degree_closed_form() == (54, 6)
    assert rows[1].degree_closed_form() == (24, 4)


def test_sigma_zero_is_the_quadric_tower():
    rows = sigma_c(0)
    assert len(rows) == 1
    (row,) = rows
    assert row.ambient_string() == "P^(2+2m)"
    assert row.degrees_string() == "2^(m+1)"
    assert not row.sporadic


def test_sigma_instantiations_are_smooth():
    for row in sigma_c(2):
        ms = range(2) if row.fixed_m is None else [row.fixed_m]
        for m in ms:
            f = row.instantiate(m)
            assert is_combinatorially_smooth(f).ok, (row, m)


@settings(deadline=None)
@given(st.integers(0, 4))
def test_sigma_parametric_instantiation_matches_expand(m):
    for row in sigma_c(2):
        if row.fixed_m is None:
            assert row.instantiate(m) == expand(row.generator, row.l, m)
