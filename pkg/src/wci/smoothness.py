"""Regularity, the two subset conditions on weight subsets, and the combinatorial
smoothness class.

A pair is combinatorially smooth when it is regular, is not an intersection with
a linear cone, and every subset of weight indices is of the first or second type
(a representability condition, or a covering condition on complement indices).
Subsets are never iterated index-by-index: only the multiset profile of selected
weight values matters, and ambient spaces here have few distinct values.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from math import gcd
from typing import Iterable, Iterator

from .core import Family, Pair, is_linear_cone


class InternalSearchError(RuntimeError):
    """Search effort cap exceeded. A guard against pathological inputs, not an
    expected outcome; callers map it to the internal-assertion exit code."""


@lru_cache(maxsize=None)
def _divisors(v: int) -> tuple[int, ...]:
    return tuple(h for h in range(2, v + 1) if v % h == 0)


def regularity_violations(obj: Family | Pair) -> tuple[tuple[int, int, int], ...]:
    """All (h, weight count, degree count) with h > 1 dividing more weights than degrees."""
    degrees, weights = obj.degrees, obj.weights
    out = []
    hs = sorted({h for a in weights if a > 1 for h in _divisors(a)})
    for h in hs:
        wc = sum(1 for a in weights if a % h == 0)
        dc = sum(1 for d in degrees if d % h == 0)
        if wc > dc:
            out.append((h, wc, dc))
    return tuple(out)


def is_regular(obj: Family | Pair) -> bool:
    """Count form: every h > 1 divides at least as many degrees as weights."""
    return not regularity_violations(obj)


@lru_cache(maxsize=None)
def _rep_table(values: tuple[int, ...], limit: int) -> bytes:
    table = bytearray(limit + 1)
    table[0] = 1
    for v in values:
        for n in range(v, limit + 1):
            if table[n - v]:
                table[n] = 1
    return bytes(table)


def representable(target: int, basis: Iterable[int]) -> bool:
    """Is target a non-negative integer combination of the basis values?

    Unbounded coin problem; only distinct values matter.
    """
    if target < 0:
        return False
    if target == 0:
        return True
    values = tuple(sorted({int(v) for v in basis if int(v) > 0}))
    if not values:
        return False
    if values[0] == 1:
        return True
    g = values[0]
    for v in values[1:]:
        g = gcd(g, v)
    if target % g:
        return False
    return bool(_rep_table(values, target)[target])


@dataclass(frozen=True)
class SubsetProfile:
    """Orbit of a weight-index subset under weight-preserving permutations.

    counts: (value, how many indices of that value are selected), selected > 0.
    complement_counts: remaining indices per value, unit weights included.
    """

    counts: tuple[tuple[int, int], ...]
    complement_counts: tuple[tuple[int, int], ...]

    @property
    def size(self) -> int:
        return sum(c for _, c in self.counts)

    @property
    def values(self) -> tuple[int, ...]:
        return tuple(v for v, _ in self.counts)

    def selected_indices(self, weights: tuple[int, ...]) -> tuple[int, ...]:
        """A canonical concrete subset realizing this profile: first indices per value."""
        out = []
        want = dict(self.counts)
        for i, a in enumerate(weights):
            if want.get(a, 0) > 0:
                out.append(i)
                want[a] -= 1
        return tuple(out)

    def complement_indices_by_value(self, weights: tuple[int, ...]) -> dict[int, list[int]]:
        selected = set(self.selected_indices(weights))
        by_value: dict[int, list[int]] = {}
        for i, a in enumerate(weights):
            if i not in selected:
                by_value.setdefault(a, []).append(i)
        return by_value

    @classmethod
    def from_counts(cls, weights: tuple[int, ...], selected: dict[int, int]) -> "SubsetProfile":
        mult: dict[int, int] = {}
        for a in weights:
            mult[a] = mult.get(a, 0) + 1
        counts = []
        comp = []
        for v in sorted(mult):
            c = selected.get(v, 0)
            if c < 0 or c > mult[v]:
                raise ValueError(f"profile count {c} out of range for value {v}")
            if c:
                counts.append((v, c))
            if mult[v] - c:
                comp.append((v, mult[v] - c))
        return cls(tuple(counts), tuple(comp))

    @classmethod
    def from_indices(cls, weights: tuple[int, ...], indices: Iterable[int]) -> "SubsetProfile":
        selected: dict[int, int] = {}
        for i in indices:
            selected[weights[i]] = selected.get(weights[i], 0) + 1
        return cls.from_counts(weights, selected)


def iter_subset_profiles(
    weights: tuple[int, ...], include_unit_values: bool = False
) -> Iterator[SubsetProfile]:
    """All non-empty subset profiles over the weight values.

    Unit-weight indices are skipped by default: a subset containing a unit makes
    every degree representable, so it is always of the first type.
    """
    mult: dict[int, int] = {}
    for a in weights:
        if a > 1 or include_unit_values:
            mult[a] = mult.get(a, 0) + 1
    values = sorted(mult)
    if not values:
        return
    stack: list[dict[int, int]] = [{}]
    for v in values:
        stack = [{**s, v: c} if c else s for s in stack for c in range(mult[v] + 1)]
    for selected in stack:
        if selected:
            yield SubsetProfile.from_counts(weights, selected)


@dataclass(frozen=True)
class Q2Witness:
    """Certificate for the second subset type.

    l degrees are representable over the subset; every remaining degree j gets
    t = g - l slots, each slot a complement index whose weight u leaves d_j - u
    representable. Slots are stored abstractly as (value, ordinal) pairs;
    materialize() turns them into concrete weight indices.
    """

    l: int
    chosen: tuple[int, ...]
    columns: tuple[tuple[int, tuple[tuple[int, int], ...]], ...]

    def materialize(self, weights: tuple[int, ...], profile: SubsetProfile) -> dict[int, tuple[int, ...]]:
        pool = profile.complement_indices_by_value(weights)
        return {
            j: tuple(pool[u][pos] for u, pos in slots)
            for j, slots in self.columns
        }


@dataclass(frozen=True)
class QVerdict:
    q1: bool
    q2: bool
    rho: int
    profile: SubsetProfile
    q1_witness: tuple[int, ...] | None = None
    q2_witness: Q2Witness | None = None

    @property
    def ok(self) -> bool:
        return self.q1 or self.q2

    def to_json_dict(self) -> dict:
        out = {
            "q1": self.q1,
            "q2": self.q2,
            "rho": self.rho,
            "subset": [[v, c] for v, c in self.profile.counts],
        }
        if self.q1_witness is not None:
            out["representable_degree_indices"] = list(self.q1_witness)
        if self.q2_witness is not None:
            out["l"] = self.q2_witness.l
            out["chosen_degree_indices"] = list(self.q2_witness.chosen)
            out["columns"] = {
                str(j): [[u, pos] for u, pos in slots]
                for j, slots in self.q2_witness.columns
            }
        return out


def check_subset(obj: Family | Pair, profile: SubsetProfile, node_cap: int = 500_000) -> QVerdict:
    """Decide whether the subset is of the first or second type.

    First type: at least rho = min(k, g) degrees are representable over the
    selected values. Second type: some l < rho representable degrees can be set
    aside, and the remaining degrees each take g - l distinct complement indices
    (weight u valid for degree d when d - u is representable) such that every
    nonempty set J of remaining degrees touches at least g - l + |J| - 1
    distinct indices.

    The second search only runs when the first type fails, so q2 means
    "needed and found": a verdict with q1 set may well describe a subset
    that also admits the second type, but nothing downstream cares.
    """
    degrees = obj.degrees
    k = len(degrees)
    g = profile.size
    rho = min(k, g)
    if rho == 0:
        return QVerdict(True, False, rho, profile, q1_witness=())
    i_values = profile.values
    if 1 in i_values:
        return QVerdict(True, False, rho, profile, q1_witness=tuple(range(k)))
    rep = tuple(j for j, d in enumerate(degrees) if representable(d, i_values))
    if len(rep) >= rho:
        return QVerdict(True, False, rho, profile, q1_witness=rep)
    avail = {u: c for u, c in profile.complement_counts if c > 0}
    witness = _q2_search(degrees, i_values, avail, g, rho, rep, node_cap)
    if witness is not None:
        return QVerdict(False, True, rho, profile, q2_witness=witness)
    return QVerdict(False, False, rho, profile)


def _q2_search(
    degrees: tuple[int, ...],
    i_values: tuple[int, ...],
    avail: dict[int, int],
    g: int,
    rho: int,
    rep: tuple[int, ...],
    node_cap: int,
) -> Q2Witness | None:
    k = len(degrees)
    for l in range(min(rho - 1, len(rep)), -1, -1):
        t = g - l
        for chosen in combinations(rep, l):
            taken = set(chosen)
            rest = [j for j in range(k) if j not in taken]
            cols = []
            feasible = True
            for j in rest:
                vals = tuple(
                    u for u in sorted(avail)
                    if degrees[j] >= u and representable(degrees[j] - u, i_values)
                )
                if not vals or sum(avail[u] for u in vals) < t:
                    feasible = False
                    break
                cols.append(vals)
            if not feasible:
                continue
            assignment = _assign_columns(cols, avail, t, node_cap)
            if assignment is not None:
                return Q2Witness(l=l, chosen=chosen, columns=tuple(zip(rest, assignment)))
    return None


def _assign_columns(
    cols: list[tuple[int, ...]],
    avail: dict[int, int],
    t: int,
    node_cap: int,
) -> list[tuple[tuple[int, int], ...]] | None:
    """Pick t distinct (value, ordinal) slots per column so that any nonempty set J
    of columns covers >= t + |J| - 1 distinct slots. None when impossible."""
    m = len(cols)

    # fast path: one value shared by all columns with room for a sliding window
    shared = set(cols[0])
    for vals in cols[1:]:
        shared &= set(vals)
    for u in sorted(shared):
        if avail[u] >= t + m - 1:
            return [tuple((u, pos) for pos in range(c, c + t)) for c in range(m)]

    # exact search over overlap patterns; slots of a value with identical column
    # membership are interchangeable, so group them
    order = sorted(range(m), key=lambda c: sum(avail[u] for u in cols[c]))
    groups: list[list] = []  # [value, count, set of column positions]
    used: dict[int, int] = {u: 0 for u in avail}
    budget = [node_cap]

    def union_ok(pos: int) -> bool:
        placed = order[: pos + 1]
        new = order[pos]
        for r in range(len(placed)):
            for sub in combinations(placed[:-1], r):
                members = set(sub) | {new}
                size = sum(count for _, count, touched in groups if touched & members)
                if size < t + len(members) - 1:
                    return False
        return True

    def dfs(pos: int) -> bool:
        if budget[0] <= 0:
            raise InternalSearchError("subset-condition search exceeded its node budget")
        budget[0] -= 1
        if pos == m:
            return True
        cidx = order[pos]
        vals = cols[cidx]
        # fresh bins first: spreading out maximizes unions, so witnesses surface early
        bins: list[tuple[str, int, int, int]] = []  # (kind, value, group index, cap)
        for u in vals:
            fresh = avail[u] - used[u]
            if fresh > 0:
                bins.append(("fresh", u, -1, fresh))
        for gi, (val, count, _touched) in enumerate(groups):
            if val in vals and count > 0:
                bins.append(("reuse", val, gi, count))

        def place(bi: int, remaining: int, picks: list[tuple[str, int, int, int]]) -> bool:
            if remaining == 0:
                snapshot = [list(grp) for grp in groups]
                snap_used = dict(used)
                for kind, u, gi, n in picks:
                    if kind == "fresh":
                        groups.append([u, n, {cidx}])
                        used[u] += n
                    else:
                        val, count, touched = groups[gi]
                        groups[gi][1] = count - n
                        groups.append([val, n, touched | {cidx}])
                if union_ok(pos) and dfs(pos + 1):
                    return True
                groups.clear()
                groups.extend([g[0], g[1], set(g[2])] for g in snapshot)
                used.clear()
                used.update(snap_used)
                return False
            if bi == len(bins):
                return False
            kind, u, gi, cap = bins[bi]
            top = min(cap, remaining)
            for n in range(top, -1, -1):
                if n:
                    picks.append((kind, u, gi, n))
                if place(bi + 1, remaining - n, picks):
                    return True
                if n:
                    picks.pop()
            return False

        return place(0, t, [])

    if not dfs(0):
        return None

    # turn the surviving group structure into concrete (value, ordinal) slots
    ordinal: dict[int, int] = {u: 0 for u in avail}
    slot_lists: dict[int, list[tuple[int, int]]] = {c: [] for c in range(m)}
    for val, count, touched in groups:
        for _ in range(count):
            slot = (val, ordinal[val])
            ordinal[val] += 1
            for c in touched:
                slot_lists[c].append(slot)
    out = [tuple(sorted(slot_lists[c])) for c in range(m)]
    assert all(len(s) == t for s in out)
    return out


@dataclass(frozen=True)
class CsReport:
    """Verdict of the combinatorial smoothness check, with a failure witness."""

    ok: bool
    reason: str | None = None  # not-regular | linear-cone | subset
    violations: tuple[tuple[int, int, int], ...] = ()
    profile: SubsetProfile | None = None
    verdict: QVerdict | None = None

    def __bool__(self) -> bool:
        return self.ok

    def to_json_dict(self) -> dict:
        out: dict = {"combinatorially_smooth": self.ok}
        if self.reason:
            out["reason"] = self.reason
        if self.violations:
            out["regularity_violations"] = [
                {"divisor": h, "weights": wc, "degrees": dc} for h, wc, dc in self.violations
            ]
        if self.verdict is not None:
            out["failing_subset"] = self.verdict.to_json_dict()
        return out


def is_combinatorially_smooth(obj: Family | Pair, node_cap: int = 500_000) -> CsReport:
    """Regular, not a linear cone, and every subset profile passes check_subset.

    Single-value profiles are skipped: once regularity holds, the degrees
    divisible by the value already witness the first type for them.
    """
    violations = regularity_violations(obj)
    if violations:
        return CsReport(False, "not-regular", violations=violations)
    if is_linear_cone(obj):
        return CsReport(False, "linear-cone")
    for profile in iter_subset_profiles(obj.weights):
        if len(profile.counts) == 1:
            continue
        verdict = check_subset(obj, profile, node_cap)
        if not verdict.ok:
            return CsReport(False, "subset", profile=profile, verdict=verdict)
    return CsReport(True)
