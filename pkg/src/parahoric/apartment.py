"""Affine functionals on the apartment, walls, facets and parahoric valuations."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from . import _linalg
from .errors import DomainError
from .numeric import ExactScalar, exact_min, fraction_str, linear_combination, scalar
from .rootdata import RootSystem, root_label

TAGS = ("G-root", "pullback", "stability", "coincidence", "region")
_TAG_RANK = {t: i for i, t in enumerate(TAGS)}


@dataclass(frozen=True)
class AffineFunctional:
    """``x -> linear . x + constant`` with rational coefficients."""

    linear: tuple[Fraction, ...]
    constant: Fraction = Fraction(0)
    tag: str = "G-root"

    def __post_init__(self):
        object.__setattr__(self, "linear", tuple(Fraction(a) for a in self.linear))
        object.__setattr__(self, "constant", Fraction(self.constant))
        if self.tag not in _TAG_RANK:
            raise DomainError(f"unknown functional tag {self.tag!r}")
        if self.tag != "stability" and not any(self.linear):
            raise DomainError("affine functional needs a nonzero linear part")

    def __call__(self, point: Sequence) -> ExactScalar:
        return linear_combination(self.linear, [scalar(v) for v in point], self.constant)

    evaluate = __call__

    @property
    def is_constant(self) -> bool:
        return not any(self.linear)

    def sort_key(self) -> tuple:
        return (_TAG_RANK[self.tag], sum(self.linear), self.linear, self.constant)

    def canonical(self) -> tuple[tuple[int, ...], Fraction]:
        """Representative up to positive scaling: primitive integer linear part."""
        if self.is_constant:
            c = self.constant
            return self.linear, Fraction((c > 0) - (c < 0))
        lcm = 1
        for a in self.linear:
            lcm = lcm * a.denominator // math.gcd(lcm, a.denominator)
        ints = [int(a * lcm) for a in self.linear]
        g = 0
        for v in ints:
            g = math.gcd(g, v)
        scale = Fraction(lcm, g)
        return tuple(v // g for v in ints), self.constant * scale

    def zero_locus_1d(self) -> Fraction:
        """Wall location of a functional on a line."""
        if len(self.linear) != 1:
            raise DomainError("wall location is only defined in rank 1")
        return -self.constant / self.linear[0]

    def to_json(self) -> dict:
        return {"lin": [fraction_str(a) for a in self.linear],
                "const": fraction_str(self.constant), "tag": self.tag}


def sort_functionals(fs: Iterable[AffineFunctional]) -> list[AffineFunctional]:
    return sorted(fs, key=AffineFunctional.sort_key)


def dedupe(fs: Iterable[AffineFunctional]) -> list[AffineFunctional]:
    """Drop functionals equal to an earlier one up to positive scaling.

    Input is sorted first, so the tag order decides which copy survives.
    """
    seen = set()
    out = []
    for f in sort_functionals(fs):
        key = f.canonical()
        if key not in seen:
            seen.add(key)
            out.append(f)
    return out


@dataclass(frozen=True)
class Region:
    """Closed box, one rational interval per coordinate."""

    box: tuple[tuple[Fraction, Fraction], ...]

    def __post_init__(self):
        box = tuple((Fraction(a), Fraction(b)) for a, b in self.box)
        if not box:
            raise DomainError("region needs at least one coordinate")
        for a, b in box:
            if a > b:
                raise DomainError(f"empty interval [{a}, {b}] in region")
        object.__setattr__(self, "box", box)

    @classmethod
    def around(cls, center: Sequence, radius) -> "Region":
        r = Fraction(radius)
        return cls(tuple((Fraction(c) - r, Fraction(c) + r) for c in center))

    @classmethod
    def point(cls, p: Sequence) -> "Region":
        return cls(tuple((Fraction(c), Fraction(c)) for c in p))

    @property
    def dim(self) -> int:
        return len(self.box)

    def contains(self, x: Sequence) -> bool:
        return all(scalar(a) <= v <= scalar(b) for (a, b), v in zip(self.box, map(scalar, x)))

    def range_of(self, linear: Sequence) -> tuple[Fraction, Fraction]:
        """Exact range of a linear form over the box."""
        lo = hi = Fraction(0)
        for c, (a, b) in zip(linear, self.box):
            c = Fraction(c)
            lo += min(c * a, c * b)
            hi += max(c * a, c * b)
        return lo, hi

    def subregion_of(self, other: "Region") -> bool:
        return all(a0 <= a and b <= b0 for (a, b), (a0, b0) in zip(self.box, other.box))

    def face_functionals(self) -> list[AffineFunctional]:
        """Functionals ``x_i - a_i`` and ``b_i - x_i`` cutting out the box."""
        out = []
        n = self.dim
        for i, (a, b) in enumerate(self.box):
            e = [Fraction(int(i == j)) for j in range(n)]
            out.append(AffineFunctional(tuple(e), -a, "region"))
            out.append(AffineFunctional(tuple(-v for v in e), b, "region"))
        return out

    def to_json(self) -> list:
        return [[fraction_str(a), fraction_str(b)] for a, b in self.box]


def linear_walls(linear: Sequence, region: Region, tag: str) -> list[AffineFunctional]:
    """All ``linear + n`` (n integer) whose zero set meets the region."""
    lo, hi = region.range_of(linear)
    return [AffineFunctional(tuple(linear), Fraction(n), tag)
            for n in range(math.ceil(-hi), math.floor(-lo) + 1)]


def walls_in_region(rs: RootSystem, region: Region,
                    extra: Iterable[AffineFunctional] = ()) -> list[AffineFunctional]:
    """Affine roots ``r + n`` meeting the closed region, plus supplied extras."""
    if region.dim != rs.rank:
        raise DomainError(f"region has {region.dim} coordinates, expected {rs.rank}")
    out = []
    for r in rs.roots:
        out.extend(linear_walls(r, region, "G-root"))
    out.extend(extra)
    return dedupe(out)


@dataclass(frozen=True)
class FacetSignature:
    signs: tuple[int, ...]

    @property
    def zero_set(self) -> tuple[int, ...]:
        return tuple(i for i, s in enumerate(self.signs) if s == 0)

    def to_json(self) -> dict:
        return {"signs": list(self.signs), "zero_set": list(self.zero_set)}


def signature(point: Sequence, functionals: Sequence[AffineFunctional]) -> FacetSignature:
    x = [scalar(v) for v in point]
    return FacetSignature(tuple(f(x).sign() for f in functionals))


def facet_signature(point: Sequence, functionals: Sequence[AffineFunctional]
                    ) -> tuple[FacetSignature, int]:
    """Sign vector of ``point`` and the dimension of its facet."""
    sig = signature(point, functionals)
    lin = [functionals[i].linear for i in sig.zero_set]
    return sig, len(point) - (_linalg.rank(lin) if lin else 0)


@dataclass(frozen=True)
class ParahoricValuation:
    by_root: tuple[tuple[tuple[int, ...], int], ...]

    def __getitem__(self, root) -> int:
        return dict(self.by_root)[tuple(root)]

    def as_dict(self) -> dict:
        return dict(self.by_root)

    def labeled(self, rs: RootSystem) -> dict[str, int]:
        return {root_label(rs, r): m for r, m in self.by_root}

    def dominates(self, other: "ParahoricValuation") -> bool:
        mine = self.as_dict()
        return all(mine[r] >= m for r, m in other.by_root)

    def to_json(self) -> list:
        return [{"root": list(r), "m": m} for r, m in self.by_root]


def parahoric_valuation(rs: RootSystem, theta: Sequence[Sequence]) -> ParahoricValuation:
    """``m_r = -floor(min_v r(v))`` over the vertex set ``theta``."""
    verts = [[scalar(c) for c in v] for v in theta]
    if not verts:
        raise DomainError("parahoric valuation needs a nonempty vertex set")
    for v in verts:
        if len(v) != rs.rank:
            raise DomainError(f"vertex has {len(v)} coordinates, expected {rs.rank}")
    out = []
    for r in rs.roots:
        low = exact_min(linear_combination(r, v) for v in verts)
        out.append((r, -math.floor(low)))
    return ParahoricValuation(tuple(out))


def same_parahoric(rs: RootSystem, theta1: Sequence, theta2: Sequence) -> bool:
    return parahoric_valuation(rs, [theta1]) == parahoric_valuation(rs, [theta2])
