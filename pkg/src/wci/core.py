"""Exact-integer data model for weight/degree pairs and their closed-form invariants.

Everything here is pure arithmetic on immutable tuples: no floats, no geometry.
A Pair is the raw combinatorial object (degrees d_1..d_k, weights a_0..a_N);
a Family is a normalized Pair interpreted as a family of weighted complete
intersections of multidegree d in the weighted projective space P(a).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import prod
from typing import Iterable


class InvalidFamilyError(ValueError):
    """Raised when a pair cannot be interpreted as a family (dimension < 1 etc.)."""


def _as_sorted_tuple(values: Iterable[int], what: str, minimum: int = 1) -> tuple[int, ...]:
    out = tuple(sorted(int(v) for v in values))
    for v in out:
        if v < minimum:
            raise ValueError(f"{what} must be >= {minimum}, got {v}")
    return out


@dataclass(frozen=True)
class Pair:
    """A multidegree vector plus a multiweight vector, in the order given.

    degrees may be empty (codimension 0); weights may not.
    """

    degrees: tuple[int, ...]
    weights: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "degrees", tuple(int(d) for d in self.degrees))
        object.__setattr__(self, "weights", tuple(int(a) for a in self.weights))
        if not self.weights:
            raise ValueError("weights must be non-empty")
        if any(a < 1 for a in self.weights) or any(d < 1 for d in self.degrees):
            raise ValueError("all entries must be positive integers")

    @property
    def codimension(self) -> int:
        return len(self.degrees)

    @property
    def big_n(self) -> int:
        # number of weights is N + 1
        return len(self.weights) - 1

    @property
    def is_normalized(self) -> bool:
        return (
            all(a <= b for a, b in zip(self.degrees, self.degrees[1:]))
            and all(a <= b for a, b in zip(self.weights, self.weights[1:]))
        )


def normalize(pair: Pair) -> Pair:
    """Sort both entry lists non-decreasingly. Multiset content is unchanged."""
    return Pair(tuple(sorted(pair.degrees)), tuple(sorted(pair.weights)))


# the two legal dimension-1 shapes: the projective line itself and a conic in P^2
_P1 = ((), (1, 1))
_CONIC = ((2,), (1, 1, 1))


@dataclass(frozen=True)
class Family:
    """A normalized pair interpreted as a family of weighted complete intersections.

    dimension = N - k must be >= 1; dimension 1 is admitted only for the two
    conventional representations of the projective line (codimension 0, and the
    conic in P^2).
    """

    degrees: tuple[int, ...]
    weights: tuple[int, ...]
    provenance: str = field(default="user", compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "degrees", _as_sorted_tuple(self.degrees, "degree"))
        object.__setattr__(self, "weights", _as_sorted_tuple(self.weights, "weight"))
        if self.provenance not in ("user", "enumerated", "expanded"):
            raise ValueError(f"unknown provenance {self.provenance!r}")
        dim = len(self.weights) - 1 - len(self.degrees)
        if dim < 1:
            raise InvalidFamilyError(f"dimension {dim} < 1")
        if dim == 1 and (self.degrees, self.weights) not in (_P1, _CONIC):
            raise InvalidFamilyError(
                f"dimension 1 is reserved for the projective-line conventions, "
                f"got d={self.degrees} a={self.weights}"
            )

    @classmethod
    def from_pair(cls, pair: Pair, provenance: str = "user") -> "Family":
        p = normalize(pair)
        return cls(p.degrees, p.weights, provenance)

    @property
    def pair(self) -> Pair:
        return Pair(self.degrees, self.weights)

    @property
    def codimension(self) -> int:
        return len(self.degrees)

    @property
    def big_n(self) -> int:
        return len(self.weights) - 1

    @property
    def dimension(self) -> int:
        return self.big_n - self.codimension

    @property
    def index(self) -> int:
        return fano_index(self)

    @property
    def coindex(self) -> int:
        return self.dimension + 1 - self.index

    @property
    def variance(self) -> int:
        return self.coindex - self.codimension

    @property
    def s2(self) -> int:
        return sum(1 for d in self.degrees if d > 2)

    @property
    def ones(self) -> int:
        return sum(1 for a in self.weights if a == 1)

    @property
    def linear_system_dim(self) -> int:
        # dimension of the linear system cut by weight-1 coordinates
        return self.ones - 1

    def __str__(self) -> str:
        return f"{render_ambient(self.weights)} d=({','.join(map(str, self.degrees))})"


def fano_index(obj: Family | Pair) -> int:
    """Sum of weights minus sum of degrees. May be <= 0; Fano means > 0."""
    return sum(obj.weights) - sum(obj.degrees)


def hilbert_coefficient(obj: Family | Pair, m: int) -> int:
    """Coefficient of t^m in prod_j (1 - t^{d_j}) / prod_i (1 - t^{a_i}).

    Dense truncated series arithmetic over exact integers; m stays small here.
    """
    if m < 0:
        raise ValueError("m must be >= 0")
    coeff = [0] * (m + 1)
    coeff[0] = 1
    for d in obj.degrees:
        for n in range(m, d - 1, -1):
            coeff[n] -= coeff[n - d]
    for a in obj.weights:
        for n in range(a, m + 1):
            coeff[n] += coeff[n - a]
    return coeff[m]


def anticanonical_degree(obj: Family | Pair) -> Fraction:
    """(prod d_j / prod a_i) * index^dimension, as an exact rational.

    Integral whenever the pair is combinatorially smooth; kept rational because
    enumeration filters evaluate it on arbitrary candidates.
    """
    dim = len(obj.weights) - 1 - len(obj.degrees)
    i = fano_index(obj)
    return Fraction(prod(obj.degrees), prod(obj.weights)) * Fraction(i) ** dim


def h0_anticanonical(obj: Family | Pair) -> int:
    """Sections of -K: the Hilbert coefficient at the index (0 when index < 0)."""
    i = fano_index(obj)
    return hilbert_coefficient(obj, max(i, 0))


def is_sporadic(obj: Family | Pair) -> bool:
    """True iff some weight equals 2, or the weight-1 linear system is smaller
    than the dimension (ones - 1 < N - k)."""
    ones = sum(1 for a in obj.weights if a == 1)
    dim = len(obj.weights) - 1 - len(obj.degrees)
    return any(a == 2 for a in obj.weights) or ones - 1 < dim


def is_linear_cone(obj: Family | Pair) -> bool:
    """True iff some degree equals some weight (a coordinate cone direction)."""
    ws = set(obj.weights)
    return any(d in ws for d in obj.degrees)


def ambient_well_formed(weights: Iterable[int]) -> bool:
    """True iff every N of the N+1 weights are globally coprime.

    Equivalent formulation used here: no integer h > 1 divides all weights but
    at most one of them... i.e. for each position, the gcd of the rest is 1.
    """
    from math import gcd

    ws = tuple(weights)
    if len(ws) < 2:
        return False
    # prefix/suffix gcds avoid the quadratic scan
    n = len(ws)
    pre = [0] * (n + 1)
    suf = [0] * (n + 1)
    for i in range(n):
        pre[i + 1] = gcd(pre[i], ws[i])
    for i in range(n - 1, -1, -1):
        suf[i] = gcd(suf[i + 1], ws[i])
    return all(gcd(pre[i], suf[i + 1]) == 1 for i in range(n))


@dataclass(frozen=True)
class InvariantReport:
    """Every closed-form number attached to a family, plus the boolean flags.

    combinatorially_smooth is filled by callers that ran the smoothness check;
    the pure-arithmetic constructor leaves it None.
    """

    index: int
    dimension: int
    codimension: int
    coindex: int
    variance: int
    s2: int
    ones: int
    linear_system_dim: int
    anticanonical_degree: Fraction
    h0_anticanonical: int
    sporadic: bool
    linear_cone: bool
    combinatorially_smooth: bool | None = None

    def to_json_dict(self) -> dict:
        deg = self.anticanonical_degree
        return {
            "index": self.index,
            "dimension": self.dimension,
            "codimension": self.codimension,
            "coindex": self.coindex,
            "variance": self.variance,
            "s2": self.s2,
            "ones": self.ones,
            "linear_system_dim": self.linear_system_dim,
            "anticanonical_degree": int(deg) if deg.denominator == 1 else f"{deg.numerator}/{deg.denominator}",
            "h0_anticanonical": self.h0_anticanonical,
            "sporadic": self.sporadic,
            "linear_cone": self.linear_cone,
            "combinatorially_smooth": self.combinatorially_smooth,
        }


def invariants(family: Family, combinatorially_smooth: bool | None = None) -> InvariantReport:
    """Compute the full report. Rejects non-families upstream via Family validation."""
    return InvariantReport(
        index=family.index,
        dimension=family.dimension,
        codimension=family.codimension,
        coindex=family.coindex,
        variance=family.variance,
        s2=family.s2,
        ones=family.ones,
        linear_system_dim=family.linear_system_dim,
        anticanonical_degree=anticanonical_degree(family),
        h0_anticanonical=h0_anticanonical(family),
        sporadic=is_sporadic(family),
        linear_cone=is_linear_cone(family),
        combinatorially_smooth=combinatorially_smooth,
    )


def render_ambient(weights: Iterable[int]) -> str:
    """P^N for all-unit weights, else P(1^a,2^b,...) with exponent 1 suppressed."""
    ws = tuple(sorted(weights))
    if all(a == 1 for a in ws):
        return f"P^{len(ws) - 1}"
    parts = []
    seen: list[tuple[int, int]] = []
    for a in ws:
        if seen and seen[-1][0] == a:
            seen[-1] = (a, seen[-1][1] + 1)
        else:
            seen.append((a, 1))
    for value, count in seen:
        parts.append(f"{value}^{count}" if count > 1 else f"{value}")
    return f"P({','.join(parts)})"


def render_degrees(degrees: Iterable[int]) -> str:
    return ",".join(str(d) for d in sorted(degrees))


def family_json_record(family: Family, report: InvariantReport | None = None) -> dict:
    """The JSON shape consumed by the CLI. Deterministic key order."""
    rep = report if report is not None else invariants(family)
    return {
        "weights": list(family.weights),
        "degrees": list(family.degrees),
        "ambient": render_ambient(family.weights),
        "invariants": rep.to_json_dict(),
    }
