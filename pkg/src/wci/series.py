"""The expansion calculus: hyperplane/quadric towers over a base family.

expand(F, l, m) appends l + 2m unit weights and m quadric degrees; it preserves
variance and raises the index by l. Every index >= 1 family sits in a unique
tower over a generator (index 1, no quadric degrees); strip() recovers it.
sigma_c assembles the fixed-coindex-offset classification from the enumerated
generator sets.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import prod

from .core import Family, anticanonical_degree, is_sporadic

# terminal objects of the dimension-one conventions; the quadric tower is
# rendered over the conic, pure projective spaces bottom out at the line
_LINE = Family((), (1, 1))
_CONIC = Family((2,), (1, 1, 1))


class StripError(ValueError):
    """The family is not an expansion of any valid base (not enough unit weights,
    or the stripped pair is no longer a family)."""


def expand(family: Family, l: int, m: int) -> Family:
    if l < 0 or m < 0:
        raise ValueError("expansion parameters must be >= 0")
    if l == 0 and m == 0:
        return family
    return Family(
        family.degrees + (2,) * m,
        family.weights + (1,) * (l + 2 * m),
        provenance="expanded",
    )


@dataclass(frozen=True)
class StripResult:
    generator: Family
    l: int
    m: int

    @property
    def is_generator(self) -> bool:
        """True when the input was already its own base."""
        return self.l == 0 and self.m == 0


def strip(family: Family) -> StripResult:
    """Peel all quadric degrees and the matching unit weights off the family.

    m = number of degree-2 entries, l = index - 1; removes m twos and 2m + l
    ones. Result has index 1 and no quadric degrees, except at the bottom of
    the dimension-one conventions: pure projective spaces stop at the line
    (index 2), towers of quadrics keep one quadric and stop at the conic.
    """
    if family.index < 1:
        raise StripError(f"index {family.index} < 1, not in any expansion tower")
    m = sum(1 for d in family.degrees if d == 2)
    l = family.index - 1
    drop = 2 * m + l
    if family.ones < drop:
        raise StripError(
            f"needs {drop} unit weights to strip, found {family.ones}"
        )
    degrees = tuple(d for d in family.degrees if d != 2)
    if not degrees and family.ones == len(family.weights):
        if m >= 1:
            return StripResult(_CONIC, family.index - 1, m - 1)
        return StripResult(_LINE, family.index - 2, 0)
    weights = (1,) * (family.ones - drop) + tuple(a for a in family.weights if a > 1)
    try:
        generator = Family(degrees, weights, provenance=family.provenance)
    except ValueError as exc:
        raise StripError(f"stripped pair is not a family: {exc}") from exc
    return StripResult(generator, l, m)


def classify_generator(family: Family) -> str:
    """series | semiseries | not-a-generator, by the sporadicity split.

    Assumes the family already passed the combinatorial smoothness check.
    Series generator: non-sporadic, index 1, every degree > 2.
    Semiseries generator: sporadic, index 1, no quadric degrees.
    The line and the conic are the two representations of the variance-0
    series and count as series generators despite failing the index and
    quadric-free criteria.
    """
    if family in (_LINE, _CONIC):
        return "series"
    if family.index != 1:
        return "not-a-generator"
    if is_sporadic(family):
        if any(d == 2 for d in family.degrees):
            return "not-a-generator"
        return "semiseries"
    if family.s2 != family.codimension:
        return "not-a-generator"
    return "series"


@dataclass(frozen=True)
class ParametricFamily:
    """A generator with a fixed hyperplane offset l and a quadric parameter m.

    fixed_m None means m stays symbolic (a whole series of families); an integer
    pins the single member, as for semiseries rows where only m = 0 exists.
    """

    generator: Family
    l: int
    fixed_m: int | None = None

    def instantiate(self, m: int) -> Family:
        if self.fixed_m is not None and m != self.fixed_m:
            raise ValueError(f"this row is pinned at m={self.fixed_m}")
        return expand(self.generator, self.l, m)

    @property
    def index(self) -> int:
        return self.generator.index + self.l

    @property
    def variance(self) -> int:
        return self.generator.variance

    @property
    def sporadic(self) -> bool:
        return is_sporadic(self.generator)

    @property
    def base_dimension(self) -> int:
        return self.generator.dimension + self.l

    def degree_at(self, m: int) -> int:
        deg = anticanonical_degree(self.instantiate(m))
        if deg.denominator != 1:
            raise ValueError(f"non-integral degree {deg} on an instantiation")
        return int(deg)

    def degree_closed_form(self) -> tuple[int, int]:
        """degree(m) = C * B^m with C the value at m = 0 and B = 2 * index."""
        return self.degree_at(0), 2 * self.index

    # table rendering -----------------------------------------------------

    def ambient_string(self) -> str:
        base = self.instantiate(self.fixed_m or 0)
        if self.fixed_m is not None:
            from .core import render_ambient

            return render_ambient(base.weights)
        ones = base.ones
        tail = [a for a in base.weights if a > 1]
        if not tail:
            return f"P^({ones - 1}+2m)"
        runs = []
        for a in tail:
            if runs and runs[-1][0] == a:
                runs[-1][1] += 1
            else:
                runs.append([a, 1])
        rest = ",".join(f"{v}^{c}" if c > 1 else f"{v}" for v, c in runs)
        return f"P(1^({ones}+2m),{rest})"

    def degrees_string(self) -> str:
        base = self.instantiate(self.fixed_m or 0)
        if self.fixed_m is not None:
            return ",".join(str(d) for d in base.degrees)
        twos = sum(1 for d in base.degrees if d == 2)
        rest = [str(d) for d in base.degrees if d != 2]
        head = f"2^(m+{twos})" if twos else "2^m"
        return ",".join([head] + rest)

    def dimension_string(self) -> str:
        if self.fixed_m is not None:
            return str(self.instantiate(self.fixed_m).dimension)
        return f"{self.base_dimension}+m"

    def degree_string(self) -> str:
        if self.fixed_m is not None:
            return str(self.degree_at(self.fixed_m))
        c, b = self.degree_closed_form()
        return f"{c}*{b}^m"


def sigma_c(c: int, instantiate_to: int = 3) -> list[ParametricFamily]:
    """All families whose dimension exceeds their codimension by exactly c,
    organized as quadric towers over the generators of variance r <= c.

    Series generators contribute a symbolic-m row with offset l = c - r;
    semiseries generators only admit m = 0. The variance-0 series is rendered
    through its conic representation (the codimension-0 representation has
    index 2 and does not fit the index-1 tower formula).

    Every row's instantiations at m = 0..instantiate_to are validated to be
    combinatorially smooth.
    """
    from .enumeration import enumerate_all
    from .smoothness import is_combinatorially_smooth

    if c < 0:
        raise ValueError("c must be >= 0")
    rows: list[ParametricFamily] = []
    for r in range(c + 1):
        for record in enumerate_all(r):
            if record.kind == "series":
                fam = record.family
                if r == 0 and not fam.degrees:
                    continue  # codimension-0 representation of the unique variance-0 series
                rows.append(ParametricFamily(fam, l=c - r, fixed_m=None))
            else:
                rows.append(ParametricFamily(record.family, l=c - r, fixed_m=0))
    for row in rows:
        top = instantiate_to if row.fixed_m is None else row.fixed_m
        for m in range(row.fixed_m or 0, top + 1):
            report = is_combinatorially_smooth(row.instantiate(m))
            if not report.ok:
                raise AssertionError(f"sigma row {row} fails smoothness at m={m}: {report.reason}")
    rows.sort(key=_sigma_sort_key)
    return rows


def _sigma_sort_key(row: ParametricFamily):
    base = row.instantiate(row.fixed_m or 0)
    return (
        row.fixed_m is not None,  # parametric block first, as printed
        row.variance,
        base.dimension,
        anticanonical_degree(base),
        base.ones,
        base.codimension,
        -prod(base.degrees) if base.degrees else 0,
        base.weights,
        base.degrees,
    )
