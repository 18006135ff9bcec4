"""Weighted simplicial complexes and nef partitions.

The entries > 1 of an integer vector span a simplicial complex in which a
vertex subset is a face exactly when its values share a common divisor > 1.
Maps between the weight-side and degree-side complexes that respect
divisibility of the values (morphisms), refined by the (pre-)minimality
conditions on their fibers, produce nef partition maps: assignments of heavy
weights to degrees that leave every degree a non-negative remainder.  Such a
map converts into an exact partition of all coordinate indices by spending
unit weights on the remainders.  This module provides the complexes, the
classification of sets and morphisms, complete backtracking searches for
pre-minimal morphisms, minimal morphisms, nef maps, and exact partitions,
plus the headline bound check (count of degrees above 2 versus variance).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import gcd, lcm
from typing import Iterable

from .core import Family, Pair
from .degree_one import prime_factors
from .smoothness import InternalSearchError, is_regular


@dataclass(frozen=True)
class WsComplex:
    """The gcd-induced simplicial structure on the entries > 1 of a vector.

    Simplices are never materialized: a subset query is a gcd computation.
    The distinct values carry the partial order "g properly divides f", whose
    chain lengths (heights) drive the morphism searches.
    """

    entries: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "entries", tuple(int(v) for v in self.entries))
        if any(v < 1 for v in self.entries):
            raise ValueError("entries must be positive")

    @property
    def vertices(self) -> tuple[int, ...]:
        return tuple(i for i, v in enumerate(self.entries) if v > 1)

    def weight(self, vertex: int) -> int:
        value = self.entries[vertex]
        if value <= 1:
            raise ValueError(f"index {vertex} is not a vertex (entry {value})")
        return value

    @property
    def value_set(self) -> tuple[int, ...]:
        """Distinct vertex weights, ascending."""
        return tuple(sorted({v for v in self.entries if v > 1}))

    def gcd_of(self, subset: Iterable[int]) -> int:
        g = 0
        for v in subset:
            g = gcd(g, self.weight(v))
        return g

    def is_simplex(self, subset: Iterable[int]) -> bool:
        """Non-empty vertex subsets span a simplex iff their gcd exceeds 1."""
        vs = tuple(subset)
        return bool(vs) and self.gcd_of(vs) > 1

    @staticmethod
    def precedes(f: int, g: int) -> bool:
        """The value order: f below g exactly when g properly divides f."""
        return f != g and f % g == 0

    def heights(self) -> dict[int, int]:
        """Longest chain of proper divisors inside the value set, per value.

        Height 0 means no other value divides this one; multiples of a value
        always sit strictly higher.
        """
        out: dict[int, int] = {}
        for b in self.value_set:
            divs = [c for c in out if b % c == 0 and c != b]
            out[b] = 1 + max((out[c] for c in divs), default=-1)
        return out


def complex_from_pair(obj: Family | Pair) -> tuple[WsComplex, WsComplex]:
    """(degree-side complex, weight-side complex) for a pair."""
    return WsComplex(tuple(obj.degrees)), WsComplex(tuple(obj.weights))


@dataclass(frozen=True)
class VertexMap:
    """Assignment of weight positions to degree positions (both 0-based).

    The domain is the set of positions carrying weight > 1; the target is a
    position in the degree list.  Used both for complex morphisms (where the
    weight must divide the target degree) and for nef partition maps (where
    only the slack condition matters).
    """

    assignment: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "assignment", tuple(sorted(self.assignment)))
        if len({i for i, _ in self.assignment}) != len(self.assignment):
            raise ValueError("assignment maps some position twice")

    @classmethod
    def from_dict(cls, mapping: dict[int, int]) -> "VertexMap":
        return cls(tuple(sorted(mapping.items())))

    def to_dict(self) -> dict[int, int]:
        return dict(self.assignment)

    def fibers(self, codimension: int) -> tuple[tuple[int, ...], ...]:
        """Vertex positions over each degree position."""
        out: list[list[int]] = [[] for _ in range(codimension)]
        for i, j in self.assignment:
            out[j].append(i)
        return tuple(tuple(f) for f in out)

    def to_json_dict(self) -> dict:
        return {"assignment": [[i, j] for i, j in self.assignment]}


def _vertex_positions(weights: tuple[int, ...]) -> list[int]:
    return [i for i, a in enumerate(weights) if a > 1]


def _check_domain(obj: Family | Pair, vmap: VertexMap) -> dict[int, int]:
    mapping = vmap.to_dict()
    if set(mapping) != set(_vertex_positions(obj.weights)):
        raise ValueError("map domain must be exactly the positions of weights > 1")
    k = len(obj.degrees)
    if any(j < 0 or j >= k for j in mapping.values()):
        raise ValueError("map target out of range")
    return mapping


# ---------------------------------------------------------------------------
# set and morphism classification


def minimal_h(values: Iterable[int]) -> int:
    """lcm of the pairwise gcds of a value set (1 for singletons)."""
    vs = tuple(values)
    h = 1
    for x, y in combinations(vs, 2):
        h = lcm(h, gcd(x, y))
    return h


def check_minimal_set(values: Iterable[int]) -> str:
    """not-pre-minimal | pre-minimal | minimal, for a set of integers > 1.

    Pre-minimal: no value divides another.  Minimal: additionally no value
    divides the lcm of the pairwise gcds.  Singletons are minimal.
    """
    vs = tuple(sorted(set(values)))
    if not vs:
        raise ValueError("need a non-empty value set")
    if any(v < 2 for v in vs):
        raise ValueError("values must be > 1")
    if any(y % x == 0 for x, y in combinations(vs, 2)):
        return "not-pre-minimal"
    h = minimal_h(vs)
    if any(h % v == 0 for v in vs):
        return "pre-minimal"
    return "minimal"


def classify_morphism(obj: Family | Pair, vmap: VertexMap) -> str:
    """not-ws | ws | pre-minimal | minimal for a total map on weight vertices.

    A morphism requires each vertex weight to divide its target degree; the
    finer grades require every non-empty fiber to carry pairwise distinct
    weights forming a (pre-)minimal set.
    """
    mapping = _check_domain(obj, vmap)
    degrees, weights = obj.degrees, obj.weights
    if any(degrees[j] % weights[i] != 0 for i, j in mapping.items()):
        return "not-ws"
    fibers: dict[int, list[int]] = {}
    for i, j in mapping.items():
        fibers.setdefault(j, []).append(weights[i])
    grade = "minimal"
    for vals in fibers.values():
        if len(set(vals)) != len(vals):
            return "ws"
        verdict = check_minimal_set(vals)
        if verdict == "not-pre-minimal":
            return "ws"
        if verdict == "pre-minimal":
            grade = "pre-minimal"
    return grade


# ---------------------------------------------------------------------------
# nef partition maps


def nef_slacks(obj: Family | Pair, vmap: VertexMap) -> tuple[int, ...]:
    """d_j minus the weight sum of the fiber over j, for every degree position."""
    mapping = _check_domain(obj, vmap)
    slacks = list(obj.degrees)
    for i, j in mapping.items():
        slacks[j] -= obj.weights[i]
    return tuple(slacks)


def is_nef_partition_map(obj: Family | Pair, vmap: VertexMap, strong: bool = False) -> bool:
    """Every slack non-negative; strong requires every slack >= 1."""
    need = 1 if strong else 0
    return all(s >= need for s in nef_slacks(obj, vmap))


def find_nef_map(obj: Family | Pair, strong: bool = False) -> VertexMap | None:
    """Complete search for a (strong) nef partition map, or None.

    No divisibility is imposed: this is pure capacity packing of the heavy
    weights into the degrees.  Deterministic first-found order.
    """
    degrees, weights = obj.degrees, obj.weights
    bigs = sorted(_vertex_positions(weights), key=lambda i: (-weights[i], i))
    need = 1 if strong else 0
    if not bigs:
        return VertexMap(()) if all(d >= need for d in degrees) else None
    k = len(degrees)
    if k == 0:
        return None
    caps = [d - need for d in degrees]
    remaining = sum(weights[i] for i in bigs)
    assignment: dict[int, int] = {}

    def place(idx: int, remaining: int) -> bool:
        if idx == len(bigs):
            return True
        if remaining > sum(c for c in caps if c > 0):
            return False
        i = bigs[idx]
        w = weights[i]
        seen: set[tuple[int, int]] = set()
        for j in range(k):
            state = (degrees[j], caps[j])
            if caps[j] < w or state in seen:
                continue
            seen.add(state)
            caps[j] -= w
            assignment[i] = j
            if place(idx + 1, remaining - w):
                return True
            caps[j] += w
            del assignment[i]
        return False

    if place(0, remaining):
        return VertexMap.from_dict(assignment)
    return None


# ---------------------------------------------------------------------------
# morphism searches


def find_preminimal_morphism(obj: Family | Pair) -> VertexMap | None:
    """A morphism whose fibers are distinct-valued and divisibility-free.

    Processes the distinct weight values by increasing height, placing each
    value class injectively into the degree positions divisible by the value
    and not already holding a divisor or multiple of it, preferring targets
    with the largest remaining slack, with full backtracking.  Existence is
    guaranteed on regular pairs, so exhaustion there raises; on non-regular
    input None is a legitimate outcome.
    """
    degrees, weights = obj.degrees, obj.weights
    verts = _vertex_positions(weights)
    if not verts:
        return VertexMap(())
    comp = WsComplex(tuple(weights))
    heights = comp.heights()
    values = sorted(comp.value_set, key=lambda b: (heights[b], b))
    classes = {b: [v for v in verts if weights[v] == b] for b in values}
    k = len(degrees)
    fiber_values: list[set[int]] = [set() for _ in range(k)]
    fiber_sums = [0] * k
    assignment: dict[int, int] = {}

    def place(idx: int) -> bool:
        if idx == len(values):
            return True
        b = values[idx]
        vs = classes[b]
        allowed = [
            j
            for j in range(k)
            if degrees[j] % b == 0
            and all(b % c and c % b for c in fiber_values[j])
        ]
        if len(allowed) < len(vs):
            return False
        allowed.sort(key=lambda j: (fiber_sums[j] - degrees[j], j))
        for combo in combinations(allowed, len(vs)):
            targets = sorted(combo)
            for v, j in zip(vs, targets):
                assignment[v] = j
                fiber_values[j].add(b)
                fiber_sums[j] += b
            if place(idx + 1):
                return True
            for v, j in zip(vs, targets):
                del assignment[v]
                fiber_values[j].remove(b)
                fiber_sums[j] -= b
        return False

    if place(0):
        return VertexMap.from_dict(assignment)
    if is_regular(obj):
        raise InternalSearchError(
            f"no pre-minimal morphism found on a regular pair: d={degrees} a={weights}"
        )
    return None


def find_minimal_morphism(obj: Family | Pair, use_fiber_cap: bool = True) -> VertexMap | None:
    """Complete search for a morphism with minimal fibers, or None.

    None is a legitimate outcome: existence for combinatorially smooth pairs
    is exactly the open conjecture this searcher probes.  The fiber-size cap
    (number of distinct primes of the target degree) is exact for minimal
    sets of divisors: each member exceeds the pairwise-gcd lcm at some prime,
    and no prime can serve two members; use_fiber_cap=False disables it and
    falls back to brute force.
    """
    degrees, weights = obj.degrees, obj.weights
    verts = _vertex_positions(weights)
    if not verts:
        return VertexMap(())
    comp = WsComplex(tuple(weights))
    heights = comp.heights()
    verts.sort(key=lambda v: (heights[weights[v]], weights[v], v))
    k = len(degrees)
    caps = [len(prime_factors(d)) for d in degrees]
    fibers: list[list[int]] = [[] for _ in range(k)]
    assignment: dict[int, int] = {}

    def fits(j: int, b: int) -> bool:
        vals = fibers[j]
        if use_fiber_cap and len(vals) + 1 > caps[j]:
            return False
        if any(x % b == 0 or b % x == 0 for x in vals):
            return False
        new = vals + [b]
        h = minimal_h(new)
        return all(h % x for x in new)

    def place(idx: int) -> bool:
        if idx == len(verts):
            return True
        v = verts[idx]
        b = weights[v]
        seen: set[tuple[int, tuple[int, ...]]] = set()
        for j in range(k):
            if degrees[j] % b:
                continue
            state = (degrees[j], tuple(fibers[j]))
            if state in seen:
                continue
            seen.add(state)
            if not fits(j, b):
                continue
            fibers[j].append(b)
            assignment[v] = j
            if place(idx + 1):
                return True
            fibers[j].pop()
            del assignment[v]
        return False

    if place(0):
        return VertexMap.from_dict(assignment)
    return None


# ---------------------------------------------------------------------------
# exact nef partitions


@dataclass(frozen=True)
class NefPartition:
    """Blocks S_0..S_k of coordinate positions with exact degree sums.

    Block 0 is the free block; block j >= 1 sums its weights to the j-th
    degree exactly.  Nice means the free block contains a unit weight.
    """

    degrees: tuple[int, ...]
    weights: tuple[int, ...]
    blocks: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "blocks", tuple(tuple(sorted(b)) for b in self.blocks))
        if len(self.blocks) != len(self.degrees) + 1:
            raise ValueError("need one block per degree plus the free block")
        flat = sorted(i for b in self.blocks for i in b)
        if flat != list(range(len(self.weights))):
            raise ValueError("blocks must partition the weight positions")
        for j, d in enumerate(self.degrees, start=1):
            s = sum(self.weights[i] for i in self.blocks[j])
            if s != d:
                raise ValueError(f"block {j} sums to {s}, expected degree {d}")

    @property
    def nice(self) -> bool:
        return any(self.weights[i] == 1 for i in self.blocks[0])

    @property
    def strict(self) -> bool:
        """The free block carries unit weights only."""
        return all(self.weights[i] == 1 for i in self.blocks[0])

    def to_json_dict(self) -> dict:
        return {
            "blocks": [list(b) for b in self.blocks],
            "block_weights": [[self.weights[i] for i in b] for b in self.blocks],
            "nice": self.nice,
            "strict": self.strict,
        }


def partition_from_map(obj: Family | Pair, vmap: VertexMap) -> NefPartition | None:
    """Spend unit weights on the slacks of a nef map to get an exact partition.

    Needs every slack non-negative and at least as many units as total slack;
    the leftover units form the free block, so for index >= 1 the result is
    automatically nice.  Returns None when the map is not nef or units run out.
    """
    mapping = _check_domain(obj, vmap)
    degrees, weights = obj.degrees, obj.weights
    slacks = list(nef_slacks(obj, vmap))
    if any(s < 0 for s in slacks):
        return None
    units = [i for i, a in enumerate(weights) if a == 1]
    if sum(slacks) > len(units):
        return None
    blocks: list[list[int]] = [[] for _ in range(len(degrees) + 1)]
    for i, j in mapping.items():
        blocks[j + 1].append(i)
    pos = 0
    for j, s in enumerate(slacks):
        blocks[j + 1].extend(units[pos : pos + s])
        pos += s
    blocks[0] = units[pos:]
    return NefPartition(tuple(degrees), tuple(weights), tuple(tuple(b) for b in blocks))


def _solve_partition(obj: Family | Pair, nice: bool, strict: bool) -> NefPartition | None:
    """Exact backtracking over heavy-weight placements; units fill the rest."""
    degrees, weights = obj.degrees, obj.weights
    k = len(degrees)
    bigs = sorted(_vertex_positions(weights), key=lambda i: (-weights[i], i))
    units = [i for i, a in enumerate(weights) if a == 1]
    caps = list(degrees)
    choice: dict[int, int] = {}

    def close() -> bool:
        need = sum(caps)
        spare = len(units) - need
        return spare >= (1 if nice else 0)

    def place(idx: int, remaining: int) -> bool:
        if idx == len(bigs):
            return close()
        if sum(caps) > remaining + len(units):
            return False
        i = bigs[idx]
        w = weights[i]
        seen: set[tuple[int, int]] = set()
        for j in range(k):
            state = (degrees[j], caps[j])
            if caps[j] < w or state in seen:
                continue
            seen.add(state)
            caps[j] -= w
            choice[i] = j
            if place(idx + 1, remaining - w):
                return True
            caps[j] += w
            del choice[i]
        if strict:
            return False
        # otherwise the free block is open to a heavy weight
        choice[i] = -1
        if place(idx + 1, remaining - w):
            return True
        del choice[i]
        return False

    if not place(0, sum(weights[i] for i in bigs)):
        return None
    blocks: list[list[int]] = [[] for _ in range(k + 1)]
    for i, j in choice.items():
        blocks[j + 1].append(i)
    pos = 0
    for j in range(k):
        blocks[j + 1].extend(units[pos : pos + caps[j]])
        pos += caps[j]
    blocks[0].extend(units[pos:])
    return NefPartition(tuple(degrees), tuple(weights), tuple(tuple(b) for b in blocks))


def find_nef_partition(
    obj: Family | Pair,
    nice: bool = False,
    strict: bool = False,
    method: str = "auto",
) -> NefPartition | None:
    """An exact partition of the coordinate positions, or None.

    nice=True accepts only partitions whose free block contains a unit;
    strict=True forces every heavy weight into a degree block, which is the
    partition class equivalent to nef-map existence (on pairs of index >= 1
    every such partition is automatically nice).  method "map" converts a
    found nef map into a partition (constructive route, complete exactly for
    the strict class when the index is non-negative), "solver" runs the
    exact backtracking search, and "auto" tries the map route first and
    falls back to the solver.
    """
    if method not in ("auto", "map", "solver"):
        raise ValueError(f"unknown method {method!r}")
    if method in ("auto", "map"):
        vmap = find_nef_map(obj)
        if vmap is not None:
            part = partition_from_map(obj, vmap)
            if part is not None and (not nice or part.nice):
                return part
        if method == "map":
            return None
    return _solve_partition(obj, nice, strict)


def conjecture_main_check(family: Family) -> bool:
    """The headline bound: the count of degrees above 2 is at most the variance."""
    return family.s2 <= family.variance
