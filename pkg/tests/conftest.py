"""Shared fixtures: small enumeration slices and seeded pair streams."""
from __future__ import annotations

import random

import pytest

from wci import enumerate_all


@pytest.fixture(scope="session")
def small_corpus():
    """Every generator record of variance at most 3."""
    records = []
    for r in range(4):
        records.extend(enumerate_all(r))
    return records


@pytest.fixture(scope="session")
def small_families(small_corpus):
    return [rec.family for rec in small_corpus]


def seeded_pairs(seed, count, max_size=8, max_value=12, max_degrees=3,
                 min_degrees=0, min_degree_value=1):
    """Deterministic stream of (degrees, weights) tuples, both sorted."""
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        n = rng.randint(1, max_size)
        weights = tuple(sorted(rng.randint(1, max_value) for _ in range(n)))
        k = rng.randint(min_degrees, max_degrees)
        degrees = tuple(
            sorted(rng.randint(min_degree_value, max_value) for _ in range(k))
        )
        out.append((degrees, weights))
    return out
