"""Arithmetic of anticanonical degree one.

A combinatorially smooth family has anticanonical degree (prod d / prod a) *
index^dim, so degree one forces index 1 together with equal entry products.
Equal products, in turn, are governed by prime-by-prime valuation counts.
This module provides that calculus: valuation profiles, the two reduction
moves (divide p-divisible entries by p; cancel equal degree/weight values),
membership in the representability class used to prove the sporadicity and
composite-degree corollaries, and constructors for the three infinite example
towers that realize degree one at every variance.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from itertools import combinations
from math import gcd, prod
from typing import Iterable

from .core import Family, Pair, fano_index
from .smoothness import is_regular, representable


def prime_factors(n: int) -> tuple[int, ...]:
    """Distinct prime divisors, ascending. Trial division; entries stay small."""
    out = []
    m = int(n)
    p = 2
    while p * p <= m:
        if m % p == 0:
            out.append(p)
            while m % p == 0:
                m //= p
        p += 1 if p == 2 else 2
    if m > 1:
        out.append(m)
    return tuple(out)


def valuation(n: int, p: int) -> int:
    """Largest e with p^e dividing n (n >= 1)."""
    if n < 1 or p < 2:
        raise ValueError("valuation needs n >= 1 and p >= 2")
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def is_prime_power(n: int) -> bool:
    """True iff n = p^e with e >= 1 for a single prime p."""
    return n > 1 and len(prime_factors(n)) == 1


@dataclass(frozen=True)
class PadicProfile:
    """Positions of the entries with a fixed exact valuation at one prime.

    weight_indices collects the i with valuation(a_i, prime) = level, and
    degree_indices the j with valuation(d_j, prime) = level.  Over all levels
    >= 1 the weight_indices partition the p-divisible weight positions.
    """

    prime: int
    level: int
    weight_indices: tuple[int, ...]
    degree_indices: tuple[int, ...]

    @property
    def balanced(self) -> bool:
        return len(self.weight_indices) == len(self.degree_indices)


def padic_profiles(obj: Family | Pair) -> tuple[PadicProfile, ...]:
    """All non-empty exact-valuation profiles, ordered by (prime, level)."""
    degrees, weights = obj.degrees, obj.weights
    primes = sorted({p for v in (*degrees, *weights) if v > 1 for p in prime_factors(v)})
    out = []
    for p in primes:
        top = max(valuation(v, p) for v in (*degrees, *weights))
        for m in range(1, top + 1):
            i_set = tuple(i for i, a in enumerate(weights) if valuation(a, p) == m)
            j_set = tuple(j for j, d in enumerate(degrees) if valuation(d, p) == m)
            if i_set or j_set:
                out.append(PadicProfile(p, m, i_set, j_set))
    return tuple(out)


def padic_bijection_holds(obj: Family | Pair) -> bool:
    """True iff every exact-valuation profile has as many weights as degrees.

    On regular pairs this is equivalent to prod(weights) = prod(degrees):
    the product of p^level over balanced profiles telescopes both products.
    """
    return all(profile.balanced for profile in padic_profiles(obj))


def is_degree_one(family: Family) -> bool:
    """Index 1 with equal entry products.

    Equivalent to anticanonical degree 1 for combinatorially smooth families;
    callers are expected to have run that check.
    """
    return fano_index(family) == 1 and prod(family.weights) == prod(family.degrees)


def p_reduce(obj: Family | Pair, p: int) -> Pair:
    """Divide every p-divisible entry by p, keeping positions."""
    if p < 2 or prime_factors(p) != (p,):
        raise ValueError(f"p must be prime, got {p}")
    return Pair(
        tuple(d // p if d % p == 0 else d for d in obj.degrees),
        tuple(a // p if a % p == 0 else a for a in obj.weights),
    )


@dataclass(frozen=True)
class ReducedPair:
    """Result of cancelling equal degree/weight values; either side may be empty."""

    degrees: tuple[int, ...]
    weights: tuple[int, ...]

    @property
    def effectively_empty(self) -> bool:
        """No degrees left and no weight above 1.

        Unit weights never cancel against the (>= 2) degrees of an actual
        family, so emptiness is judged on the entries that carry content.
        """
        return not self.degrees and all(a == 1 for a in self.weights)


def tilde_reduce(obj: Family | Pair | ReducedPair) -> ReducedPair:
    """Cancel equal values between the degree and weight multisets.

    Order-independent (pure multiset cancellation) and idempotent: after one
    pass no degree value equals any weight value.
    """
    cd = Counter(obj.degrees)
    cw = Counter(obj.weights)
    for v in set(cd) & set(cw):
        c = min(cd[v], cw[v])
        cd[v] -= c
        cw[v] -= c
    return ReducedPair(
        tuple(sorted(cd.elements())),
        tuple(sorted(cw.elements())),
    )


def in_class_P(obj: Family | Pair) -> bool:
    """Regular, equal products, and every p-power-divisible degree is a
    non-negative combination of the p-power-divisible weights.

    The representability clause runs over every prime power p^m dividing some
    degree: each degree divisible by p^m must be a sum of weights divisible
    by p^m (with repetition).
    """
    if not is_regular(obj):
        return False
    if prod(obj.weights) != prod(obj.degrees):
        return False
    for p in sorted({q for d in obj.degrees if d > 1 for q in prime_factors(d)}):
        top = max(valuation(d, p) for d in obj.degrees)
        for m in range(1, top + 1):
            q = p**m
            targets = [d for d in obj.degrees if d % q == 0]
            if not targets:
                continue
            coins = tuple(a for a in obj.weights if a % q == 0)
            if any(not representable(d, coins) for d in targets):
                return False
    return True


def counting_inequality(obj: Family | Pair) -> tuple[int, int, bool]:
    """(#weights > 1, #degrees > 1, strictly greater?) for a class-member pair.

    Asserts the inequality itself and its equality condition (equality exactly
    when cancellation empties the pair); a violation would falsify the
    counting lemma, so it raises rather than returning a verdict.
    """
    if not in_class_P(obj):
        raise ValueError("pair is outside the regular equal-product representability class")
    lhs = sum(1 for a in obj.weights if a > 1)
    rhs = sum(1 for d in obj.degrees if d > 1)
    empty = tilde_reduce(obj).effectively_empty
    if lhs < rhs:
        raise AssertionError(f"counting inequality violated: {lhs} < {rhs} on {obj}")
    if (lhs == rhs) != empty:
        raise AssertionError(
            f"equality condition violated: lhs={lhs} rhs={rhs} reduced-empty={empty} on {obj}"
        )
    return lhs, rhs, lhs > rhs


def find_prime_power_degree(obj: Family | Pair) -> int | None:
    """First degree that is a prime power, or None."""
    return next((d for d in obj.degrees if is_prime_power(d)), None)


def no_prime_power_degrees(obj: Family | Pair) -> bool:
    """Assertion utility: no degree is a prime power.

    Guaranteed for class members with no degree equal to a weight; use
    find_prime_power_degree for the offending value when this returns False.
    """
    return find_prime_power_degree(obj) is None


# ---------------------------------------------------------------------------
# example towers: infinite supplies of degree-one generators


def _check_coprime(values: tuple[int, ...], minimum: int = 2) -> None:
    if any(v < minimum for v in values):
        raise ValueError(f"values must be >= {minimum}, got {values}")
    for x, y in combinations(values, 2):
        if gcd(x, y) != 1:
            raise ValueError(f"values must be pairwise coprime, got gcd({x},{y}) > 1")


def coprime_hypersurface(values: Iterable[int]) -> Family:
    """Degree-one hypersurface with pairwise coprime heavy weights.

    For pairwise coprime c_1 < ... < c_l (each >= 2) the family has weights
    (1^(1+alpha), c_1..c_l) with alpha = prod(c) - sum(c) and the single
    degree prod(c); index 1 and equal products hold by construction.
    """
    cs = tuple(sorted(int(c) for c in values))
    if len(cs) < 2:
        raise ValueError("need at least two coprime values")
    _check_coprime(cs)
    alpha = prod(cs) - sum(cs)
    return Family((prod(cs),), (1,) * (1 + alpha) + cs)


def six_tower(r: int) -> Family:
    """The variance-r member of the (1^(1+r), 2^r, 3^r; 6^r) tower.

    Each rung repeats the sextic-curve generator's weights; index stays 1 and
    the products stay equal, so every member has anticanonical degree one.
    """
    if r < 1:
        raise ValueError("r must be >= 1")
    return Family((6,) * r, (1,) * (1 + r) + (2,) * r + (3,) * r)


def coprime_product_intersection(a: int, b: int, c: int) -> Family:
    """Two equations of degree a*b*c over the pairwise-product weights.

    Weights (1^(1+alpha), a*b, b*c, a*c) with alpha = 2abc - ab - bc - ac and
    degrees (abc, abc); a degree-one family whose weight complex is a single
    triangle that no morphism can keep injective on its edges.
    """
    _check_coprime((a, b, c))
    alpha = 2 * a * b * c - a * b - b * c - a * c
    return Family(
        (a * b * c, a * b * c),
        (1,) * (1 + alpha) + tuple(sorted((a * b, b * c, a * c))),
    )


def coprime_product_negative_pair(a: int, b: int, c: int) -> Pair:
    """Regular pair (a, b, c, abc; ab, bc, ac) that fails the smoothness battery.

    A negative control: regularity alone does not imply combinatorial
    smoothness, and this pair is not even shaped like a family (codimension
    exceeds the number of weights).
    """
    _check_coprime((a, b, c))
    return Pair(
        tuple(sorted((a, b, c, a * b * c))),
        tuple(sorted((a * b, b * c, a * c))),
    )
