"""Regularity, representability, the two subset conditions, and the CS check."""
from __future__ import annotations

from itertools import combinations_with_replacement

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import (
    brute_q_verdict,
    count_form_regular,
    naive_representable,
    subset_form_regular,
)
from wci import (
    Pair,
    check_subset,
    is_combinatorially_smooth,
    is_regular,
    iter_subset_profiles,
    representable,
)
from wci.smoothness import InternalSearchError, SubsetProfile

weight_lists = st.lists(st.integers(1, 12), min_size=1, max_size=7)
degree_lists = st.lists(st.integers(1, 12), min_size=0, max_size=3)


# ------------------------------------------------------------- regularity


def test_is_regular_examples():
    assert is_regular(Pair((30, 30), (6, 10, 15))) is True
    assert is_regular(Pair((4,), (1, 1, 2, 2))) is False
    assert is_regular(Pair((6, 6), (1, 1, 1, 2, 2, 3, 3))) is True


@given(degree_lists, weight_lists)
@settings(max_examples=300)
def test_regularity_count_form_equals_subset_form(ds, ws):
    got = is_regular(Pair(tuple(ds), tuple(ws)))
    assert got == subset_form_regular(ds, ws)
    assert got == count_form_regular(ds, ws)


# --------------------------------------------------------- representable


def test_representable_examples():
    assert representable(6, (2, 3)) is True
    assert representable(5, (2, 4)) is False
    assert representable(7, (3, 5)) is False
    assert representable(8, (3, 5)) is True
    assert representable(0, (7,)) is True


@given(st.integers(0, 40), st.lists(st.integers(1, 12), min_size=1, max_size=4))
@settings(max_examples=300)
def test_representable_matches_naive_recursion(target, basis):
    assert representable(target, tuple(basis)) == naive_representable(
        target, basis
    )


# ----------------------------------------------------------- check_subset


def test_check_subset_q1_via_single_weight():
    p = Pair((6,), (1, 1, 2, 3))
    verdict = check_subset(p, SubsetProfile.from_indices(p.weights, (3,)))
    assert verdict.q1 is True


def test_check_subset_q2_with_two_unit_slots():
    p = Pair((5, 5), (1, 1, 2))
    verdict = check_subset(p, SubsetProfile.from_indices(p.weights, (2,)))
    assert verdict.q1 is False
    assert verdict.q2 is True
    wit = verdict.q2_witness
    assert wit.l == 0
    # both degrees take one unit-weight slot each, distinct ordinals
    slots = {slot for _col, col_slots in wit.columns for slot in col_slots}
    assert len(slots) == 2


def test_check_subset_empty_selection_is_vacuous_q1():
    p = Pair((5, 5), (1, 1, 2))
    verdict = check_subset(p, SubsetProfile.from_indices(p.weights, ()))
    assert verdict.q1 is True
    assert verdict.rho == 0


def test_check_subset_depends_only_on_weight_values():
    p = Pair((6, 6), (1, 2, 2, 3))
    a = SubsetProfile.from_indices(p.weights, (1,))
    b = SubsetProfile.from_indices(p.weights, (2,))
    assert a == b
    assert check_subset(p, a) == check_subset(p, b)


def test_check_subset_raises_on_exhausted_budget():
    p = Pair((7, 8), (1, 1, 2, 3, 5))
    profile = SubsetProfile.from_indices(p.weights, (4,))
    assert check_subset(p, profile).q2 is True
    with pytest.raises(InternalSearchError):
        check_subset(p, profile, node_cap=0)


def _scan_box():
    """Small deterministic box of (pair, selection) scenarios."""
    for ws in combinations_with_replacement(range(1, 7), 4):
        for ds in combinations_with_replacement(range(2, 9), 2):
            p = Pair(tuple(ds), tuple(ws))
            for g in range(1, 4):
                for sel in combinations(range(4), g):
                    yield p, sel


from itertools import combinations  # noqa: E402


def _assert_agrees_with_brute(p, sel):
    profile = SubsetProfile.from_indices(p.weights, sel)
    verdict = check_subset(p, profile)
    q1, q2 = brute_q_verdict(p.degrees, p.weights, sel)
    assert verdict.q1 == q1, (p, sel)
    # the library skips the second search once the first type holds, so
    # the q2 flag is only meaningful on q1 failures
    if not q1:
        assert verdict.q2 == q2, (p, sel)


def test_check_subset_matches_brute_force_on_small_box():
    checked = 0
    for p, sel in _scan_box():
        _assert_agrees_with_brute(p, sel)
        checked += 1
    assert checked > 10_000


@given(
    st.lists(st.integers(2, 10), min_size=1, max_size=3),
    st.lists(st.integers(1, 9), min_size=2, max_size=6),
    st.data(),
)
@settings(max_examples=200)
def test_check_subset_matches_brute_force_random(ds, ws, data):
    p = Pair(tuple(sorted(ds)), tuple(sorted(ws)))
    g = data.draw(st.integers(1, min(4, len(ws))))
    sel = tuple(data.draw(st.permutations(range(len(ws))))[:g])
    _assert_agrees_with_brute(p, sel)


# ------------------------------------------------------- CS classification


def test_cs_examples():
    assert is_combinatorially_smooth(Pair((6,), (1, 1, 2, 3))).ok is True
    bad = is_combinatorially_smooth(
        Pair((2, 3, 5, 30), (1, 1, 1, 1, 1, 6, 10, 15))
    )
    assert bad.ok is False
    assert is_combinatorially_smooth(
        Pair((4, 6), (1, 1, 1, 1, 2, 2, 3))
    ).ok is True


def test_cs_failure_carries_a_witness():
    report = is_combinatorially_smooth(
        Pair((2, 3, 5, 30), (1, 1, 1, 1, 1, 6, 10, 15))
    )
    assert report.ok is False
    assert report.reason


def test_cs_rejects_linear_cone():
    report = is_combinatorially_smooth(Pair((2, 3), (1, 1, 1, 1, 1, 2)))
    assert report.ok is False


def test_cs_rejects_irregular():
    report = is_combinatorially_smooth(Pair((4,), (1, 1, 2, 2)))
    assert report.ok is False


def test_divisibility_subsets_are_q1_on_cs_pairs(small_families):
    # for a CS pair, selecting all weights divisible by any h > 1 lands in Q1
    for f in small_families:
        ws = f.weights
        for h in sorted({a for a in ws if a > 1}):
            sel = tuple(i for i, a in enumerate(ws) if a % h == 0)
            if not sel:
                continue
            verdict = check_subset(f, SubsetProfile.from_indices(ws, sel))
            assert verdict.q1, (f, h)


def test_dropping_quadric_degrees_keeps_subset_conditions(small_families):
    # removing every degree-2 entry preserves Q1-or-Q2 for all profiles
    from wci import expand

    for f in small_families[:20]:
        ex = expand(f, 0, 2)
        reduced = Pair(
            tuple(d for d in ex.degrees if d != 2), ex.weights
        )
        for profile in iter_subset_profiles(reduced.weights):
            verdict = check_subset(reduced, profile)
            assert verdict.q1 or verdict.q2, (f, profile)


def test_profile_iteration_counts():
    ws = (1, 1, 2, 3)
    assert len(list(iter_subset_profiles(ws))) == 3
    assert len(list(iter_subset_profiles(ws, include_unit_values=True))) == 11
