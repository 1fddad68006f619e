"""The finite system of stability functionals attached to adjoint weights.

Marked points carry one apartment point each; the system lives on the product
of their apartments, coordinates concatenated point by point.  On a region
where every floor ``floor((theta, r))`` is constant, the adjoint weight of the
root ``r`` is the affine function ``w_r = (theta, r) - k_r`` and a candidate
``(c, s, n)`` gives the functional ``(c + sum n_k w_k) / s``.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Sequence

from .apartment import AffineFunctional, Region, dedupe, linear_walls, walls_in_region
from .errors import DomainError
from .numeric import ExactScalar, inverse_norm, linear_combination, scalar
from .parabolic import (ParabolicBundleData, ParabolicPoint, count_multiplicity_vectors,
                        degree_window, multiplicity_vectors)
from .rootdata import RootSystem
from .transport import rational_in_facet

INFINITY = math.inf


@dataclass(frozen=True)
class WeightGroup:
    """Adjoint weights sharing one affine function ``linear . theta + constant``."""

    linear: tuple[int, ...]
    constant: int
    mult: int
    root: tuple[int, ...] | None = None


def region_floors(rs: RootSystem, region: Region) -> dict[tuple[int, ...], int]:
    """``k_r = floor((theta, r))`` on the region; rejects regions crossing a G-wall."""
    floors = {}
    for r in rs.roots:
        lo, hi = region.range_of(r)
        k = math.floor(lo)
        if k + 1 < hi:
            raise DomainError(f"region straddles a wall of root {list(r)}")
        floors[r] = k
    return floors


def weight_groups(rs: RootSystem, region: Region) -> tuple[WeightGroup, ...]:
    floors = region_floors(rs, region)
    groups = [WeightGroup(tuple(r), -floors[r], 1, tuple(r)) for r in rs.roots]
    groups.append(WeightGroup((0,) * rs.rank, 0, rs.rank, None))
    return tuple(groups)


@dataclass(frozen=True)
class StabilityFunctional:
    c: int
    rank_w: int
    selection: tuple[tuple[int, ...], ...]

    def to_json(self) -> dict:
        return {"c": self.c, "rank_w": self.rank_w, "n": [list(s) for s in self.selection]}


@dataclass
class StabilityWallSystem:
    root_system: RootSystem
    regions: tuple[Region, ...]
    groups: tuple[tuple[WeightGroup, ...], ...]
    coincidence_walls: tuple[AffineFunctional, ...]
    g_walls: tuple[AffineFunctional, ...]
    ranks: tuple[int, ...]
    C1: int | None = None
    C2: int | None = None
    _forms: list | None = field(default=None, repr=False)

    @property
    def npoints(self) -> int:
        return len(self.regions)

    @property
    def dim(self) -> int:
        return self.root_system.rank * self.npoints

    @property
    def adjoint_dim(self) -> int:
        return sum(g.mult for g in self.groups[0])

    def window(self, s: int) -> range:
        return degree_window(s, self.npoints, self.C1, self.C2)

    def functionals(self) -> Iterator[StabilityFunctional]:
        """All records ``(c, s, n)``: ranks ascending, then ``c``, then selections."""
        for s in self.ranks:
            per_point = [list(multiplicity_vectors([g.mult for g in gs], s)) for gs in self.groups]
            for c in self.window(s):
                for sel in itertools.product(*per_point):
                    yield StabilityFunctional(c, s, sel)

    def count(self) -> int:
        """Closed form: per rank, product of selection counts times window width."""
        total = 0
        for s in self.ranks:
            prod = 1
            for gs in self.groups:
                prod *= count_multiplicity_vectors([g.mult for g in gs], s)
            total += prod * len(self.window(s))
        return total

    def numerator(self, sf: StabilityFunctional) -> tuple[tuple[int, ...], int]:
        """Integer linear part and constant of ``s * J``."""
        lin = []
        const = sf.c
        for gs, n in zip(self.groups, sf.selection):
            block = [0] * self.root_system.rank
            for g, k in zip(gs, n):
                if k:
                    const += k * g.constant
                    for i, a in enumerate(g.linear):
                        block[i] += k * a
            lin.extend(block)
        return tuple(lin), const

    def as_affine(self, sf: StabilityFunctional) -> AffineFunctional:
        lin, const = self.numerator(sf)
        s = sf.rank_w
        return AffineFunctional(tuple(Fraction(a, s) for a in lin), Fraction(const, s), "stability")

    def evaluate(self, sf: StabilityFunctional, theta: Sequence) -> ExactScalar:
        lin, const = self.numerator(sf)
        return linear_combination(lin, [scalar(v) for v in theta], const) / sf.rank_w

    def forms(self) -> list[AffineFunctional]:
        """Distinct stability functionals up to positive scaling."""
        if self._forms is None:
            seen = {}
            for sf in self.functionals():
                lin, const = self.numerator(sf)
                key = _primitive(lin, Fraction(const))
                if key not in seen:
                    seen[key] = AffineFunctional(tuple(Fraction(a) for a in key[0]), key[1], "stability")
            self._forms = sorted(seen.values(), key=AffineFunctional.sort_key)
        return self._forms

    def walls(self) -> list[AffineFunctional]:
        """Nonconstant stability forms, coincidence walls and regional G-walls."""
        return [f for f in self.forms() if not f.is_constant] + list(self.coincidence_walls) + list(self.g_walls)

    def region_faces(self) -> list[AffineFunctional]:
        out = []
        for j, reg in enumerate(self.regions):
            for f in reg.face_functionals():
                out.append(_embed(f, j, self.npoints))
        return out

    def contains(self, theta: Sequence) -> bool:
        r = self.root_system.rank
        return all(reg.contains(theta[j * r:(j + 1) * r]) for j, reg in enumerate(self.regions))

    def to_json(self, limit: int | None = None) -> dict:
        recs = []
        for i, sf in enumerate(self.functionals()):
            if limit is not None and i >= limit:
                break
            d = sf.to_json()
            d["affine"] = self.as_affine(sf).to_json()
            recs.append(d)
        return {"count": self.count(), "functionals": recs,
                "truncated": limit is not None and self.count() > limit,
                "coincidence_walls": [f.to_json() for f in self.coincidence_walls],
                "g_walls": [f.to_json() for f in self.g_walls],
                "regions": [reg.to_json() for reg in self.regions]}


def _primitive(lin: Sequence[int], const: Fraction) -> tuple[tuple[int, ...], Fraction]:
    g = 0
    for a in lin:
        g = math.gcd(g, a)
    if g == 0:
        return tuple(lin), Fraction((const > 0) - (const < 0))
    return tuple(a // g for a in lin), const / g


def _embed(f: AffineFunctional, j: int, npoints: int) -> AffineFunctional:
    r = len(f.linear)
    lin = [Fraction(0)] * (r * npoints)
    lin[j * r:(j + 1) * r] = f.linear
    return AffineFunctional(tuple(lin), f.constant, f.tag)


def build_stability_functionals(rs: RootSystem, regions, C1: int | None = None,
                                C2: int | None = None, ranks: Sequence[int] | None = None
                                ) -> StabilityWallSystem:
    """Stability system of the adjoint weights over one region per marked point."""
    if isinstance(regions, Region):
        regions = (regions,)
    regions = tuple(regions)
    if not regions:
        raise DomainError("at least one marked point region is required")
    for reg in regions:
        if reg.dim != rs.rank:
            raise DomainError(f"region has {reg.dim} coordinates, expected {rs.rank}")
    if C1 is not None and C2 is not None and C1 > C2:
        raise DomainError(f"C1 = {C1} exceeds C2 = {C2}")
    groups = tuple(weight_groups(rs, reg) for reg in regions)
    dim_g = len(rs.roots) + rs.rank
    ranks = tuple(sorted(set(ranks))) if ranks is not None else tuple(range(1, dim_g))
    for s in ranks:
        if not 1 <= s < dim_g:
            raise DomainError(f"candidate rank {s} not in [1, {dim_g - 1}]")
    npts = len(regions)
    g_walls = []
    coinc = []
    for j, reg in enumerate(regions):
        for f in walls_in_region(rs, reg):
            g_walls.append(_embed(f, j, npts))
        for r in rs.roots:
            for s_ in rs.roots:
                if r != s_:
                    diff = tuple(a - b for a, b in zip(r, s_))
                    for f in linear_walls(diff, reg, "coincidence"):
                        coinc.append(_embed(f, j, npts))
    g_walls = dedupe(g_walls)
    g_keys = {f.canonical() for f in g_walls}
    coinc = [f for f in dedupe(coinc) if f.canonical() not in g_keys]
    return StabilityWallSystem(rs, regions, groups, tuple(coinc), tuple(g_walls), ranks, C1, C2)


# -- reduction to bracketing constants ---------------------------------------

def bracketing_functionals(theta: Sequence, functionals: Sequence[AffineFunctional]
                           ) -> list[AffineFunctional]:
    """Per linear direction, keep the walls through ``theta`` and the nearest on each side.

    Sign preservation against the reduced list is equivalent to sign
    preservation against the full list.
    """
    x = [scalar(v) for v in theta]
    by_dir: dict[tuple, set] = {}
    consts = []
    for f in functionals:
        if f.is_constant:
            consts.append(f)
            continue
        lin, c = f.canonical()
        by_dir.setdefault(lin, set()).add(c)
    out = list(consts)
    for lin in sorted(by_dir):
        cs = sorted(by_dir[lin])
        v = linear_combination(lin, x)
        # f = v + c; find position of -v among the constants
        target = -v
        lo, hi = 0, len(cs)
        while lo < hi:
            mid = (lo + hi) // 2
            if target > cs[mid]:
                lo = mid + 1
            else:
                hi = mid
        keep = set()
        if lo < len(cs):
            keep.add(cs[lo])
            if target == cs[lo] and lo + 1 < len(cs):
                keep.add(cs[lo + 1])
        if lo > 0:
            keep.add(cs[lo - 1])
        lin_f = tuple(Fraction(a) for a in lin)
        out.extend(AffineFunctional(lin_f, c, "stability") for c in sorted(keep))
    return out


def system_functionals(system: StabilityWallSystem, with_faces: bool = True) -> list[AffineFunctional]:
    fs = list(system.forms()) + list(system.coincidence_walls) + list(system.g_walls)
    if with_faces:
        fs += system.region_faces()
    return fs


def equivalent_rational_weight(theta: Sequence, system: StabilityWallSystem,
                               denominator_cap: int | None = None) -> tuple[Fraction, ...]:
    """Rational point with the same sign against every functional of the system."""
    x = [scalar(v) for v in theta]
    if len(x) != system.dim:
        raise DomainError(f"theta has {len(x)} coordinates, expected {system.dim}")
    if not system.contains(x):
        raise DomainError("theta is outside the system's region")
    if all(v.is_rational for v in x):
        return tuple(v.rational for v in x)
    reduced = bracketing_functionals(x, system_functionals(system))
    return rational_in_facet(x, reduced, denominator_cap)


def stability_radius(theta: Sequence, system) -> ExactScalar | float:
    """Distance from ``theta`` to the nearest wall not passing through it.

    ``system`` is a :class:`StabilityWallSystem` or a list of functionals.
    Returns ``math.inf`` when no functional has a wall at positive distance.
    """
    x = [scalar(v) for v in theta]
    fs = system_functionals(system, with_faces=False) if isinstance(system, StabilityWallSystem) else list(system)
    fs = bracketing_functionals(x, fs)
    best = None
    for f in fs:
        if f.is_constant:
            continue
        v = f(x)
        if v.is_zero():
            continue
        d = abs(v) * inverse_norm(f.linear)
        if best is None or d < best:
            best = d
    return INFINITY if best is None else best


# -- adjoint bundles ----------------------------------------------------------

def adjoint_weights(rs: RootSystem, theta: Sequence) -> ParabolicPoint:
    """Merged multiset ``{frac((theta, r))} + rank * {0}`` as a flag."""
    x = [scalar(v) for v in theta]
    pairs = [(ExactScalar(0), rs.rank)]
    for r in rs.roots:
        pairs.append((linear_combination(r, x).frac(), 1))
    return ParabolicPoint.from_multiset(pairs)


def adjoint_bundle(rs: RootSystem, thetas: Sequence[Sequence], degree: int | None = None
                   ) -> ParabolicBundleData:
    """Adjoint-type bundle; default degree makes the parabolic degree zero."""
    pts = tuple(adjoint_weights(rs, t) for t in thetas)
    dim_g = len(rs.roots) + rs.rank
    if degree is None:
        total = sum((p.weight_sum() for p in pts), ExactScalar(0))
        if not total.is_rational or total.rational.denominator != 1:
            raise DomainError("adjoint weight sum is not an integer")
        degree = -int(total.rational)
    return ParabolicBundleData(dim_g, degree, pts)
