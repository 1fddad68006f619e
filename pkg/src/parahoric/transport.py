"""Apartment maps of representations, rational weights in facets, covers."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import _linalg
from .apartment import (AffineFunctional, FacetSignature, Region, dedupe, linear_walls,
                        signature, walls_in_region)
from .errors import ContractViolation, DomainError
from .numeric import ExactScalar, exact_max, exact_min, linear_combination, scalar
from .rootdata import RepWeights, RootSystem, rep_weights

DEFAULT_DENOMINATOR_CAP = 10 ** 4


@dataclass(frozen=True)
class ApartmentMap:
    source: RootSystem
    target_weights: RepWeights

    @property
    def matrix(self) -> tuple[tuple[Fraction, ...], ...]:
        return self.target_weights.weights

    @property
    def dim(self) -> int:
        return len(self.matrix)


def apartment_map(rs: RootSystem, descriptor) -> ApartmentMap:
    return ApartmentMap(rs, rep_weights(rs, descriptor))


def transport_weight(amap: ApartmentMap, theta: Sequence) -> tuple[ExactScalar, ...]:
    """Image ``(lambda_1(theta), ..., lambda_n(theta))`` in the GL apartment."""
    x = [scalar(v) for v in theta]
    if len(x) != amap.source.rank:
        raise DomainError(f"theta has {len(x)} coordinates, expected {amap.source.rank}")
    return tuple(linear_combination(w, x) for w in amap.matrix)


def target_walls(image: Sequence[ExactScalar], region_hint: int = 1) -> list[AffineFunctional]:
    """Affine roots ``e_i - e_j + n`` of GL_n that vanish near ``image``.

    Used for the image-side check: only walls with ``|n|`` within the integer
    hull of the image differences are relevant.
    """
    n = len(image)
    out = []
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            d = image[i] - image[j]
            lin = tuple(Fraction(int(k == i) - int(k == j)) for k in range(n))
            f = math.floor(d)
            for m in range(-f - region_hint, -f + region_hint + 1):
                out.append(AffineFunctional(lin, Fraction(m), "G-root"))
    return dedupe(out)


@dataclass(frozen=True)
class RhoFunctionalSet:
    functionals: tuple[AffineFunctional, ...]

    def wall_locations(self) -> list[Fraction]:
        return sorted({f.zero_locus_1d() for f in self.functionals})


def rho_functionals(amap: ApartmentMap, region: Region) -> RhoFunctionalSet:
    """G-walls plus pullbacks ``(lambda_i - lambda_j) + n`` meeting the region."""
    extra = []
    ws = amap.matrix
    for i, a in enumerate(ws):
        for j, b in enumerate(ws):
            diff = tuple(x - y for x, y in zip(a, b))
            if i != j and any(diff):
                extra.extend(linear_walls(diff, region, "pullback"))
    return RhoFunctionalSet(tuple(walls_in_region(amap.source, region, extra)))


def image_valuation(amap: ApartmentMap, theta: Sequence) -> dict[tuple[int, int], int]:
    """GL_n valuation ``m_ij = -floor(lambda_i(theta) - lambda_j(theta))`` of the image."""
    img = transport_weight(amap, theta)
    n = len(img)
    return {(i, j): -math.floor(img[i] - img[j]) for i in range(n) for j in range(n) if i != j}


# -- smallest-denominator rationals -------------------------------------------

def _largest_k(pred, start: int = 1) -> int:
    """Largest ``k >= 0`` with ``pred(k)`` true, for monotone ``pred`` (true at 0)."""
    hi = start
    while pred(hi):
        hi *= 2
    lo = hi // 2 if hi > start else 0
    # pred(lo) holds, pred(hi) fails
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if pred(mid):
            lo = mid
        else:
            hi = mid
    return lo


def simplest_rational(lo: ExactScalar | None, hi: ExactScalar | None) -> Fraction:
    """Smallest-denominator rational in the open interval ``(lo, hi)``.

    ``None`` stands for an infinite endpoint.  Walks the Stern-Brocot tree,
    taking each run of same-direction steps in one exponential search.
    """
    lo = None if lo is None else scalar(lo)
    hi = None if hi is None else scalar(hi)
    if lo is not None and hi is not None and not lo < hi:
        raise DomainError(f"empty interval ({lo}, {hi})")
    if (lo is None or lo.sign() < 0) and (hi is None or hi.sign() > 0):
        return Fraction(0)
    if hi is not None and hi.sign() <= 0:
        return -simplest_rational(-hi, None if lo is None else -lo)
    # 0 <= lo < hi
    p0, q0, p1, q1 = 0, 1, 1, 0

    def le_lo(p, q):
        return not lo < Fraction(p, q)

    def ge_hi(p, q):
        return hi is not None and (q == 0 or not Fraction(p, q) < hi)

    while True:
        p, q = p0 + p1, q0 + q1
        if le_lo(p, q):
            k = _largest_k(lambda k: le_lo(p0 + k * p1, q0 + k * q1))
            p0, q0 = p0 + k * p1, q0 + k * q1
        elif ge_hi(p, q):
            k = _largest_k(lambda k: ge_hi(p1 + k * p0, q1 + k * q0))
            p1, q1 = p1 + k * p0, q1 + k * q0
        else:
            return Fraction(p, q)


def _common_denominator(v: Sequence[Fraction]) -> int:
    d = 1
    for x in v:
        d = d * x.denominator // math.gcd(d, x.denominator)
    return d


@dataclass(frozen=True)
class FacetRational:
    eta: tuple[Fraction, ...]
    signature: FacetSignature
    cap: int

    @property
    def denominator(self) -> int:
        return _common_denominator(self.eta)


def rational_in_facet_detailed(theta: Sequence, functionals: Sequence[AffineFunctional],
                               denominator_cap: int | None = None,
                               expand_cap: bool = True) -> FacetRational:
    x = [scalar(v) for v in theta]
    d = len(x)
    target = signature(x, functionals)
    cap = denominator_cap or DEFAULT_DENOMINATOR_CAP
    if all(c.is_rational for c in x):
        eta = tuple(c.rational for c in x)
        return FacetRational(eta, target, cap)

    zero = [functionals[i] for i in target.zero_set]
    rows = [list(f.linear) + [-f.constant] for f in zero]
    red, pivots = _linalg.rref(rows) if rows else ([], [])
    if d in pivots:
        raise ContractViolation("vanishing functionals are inconsistent")
    free = [j for j in range(d) if j not in pivots]
    if not free:
        raise ContractViolation("zero-dimensional facet at an irrational point; "
                                "rational functionals force a rational point")

    # x = base + sum_f t_f * direction_f on the equality subspace
    base = [Fraction(0)] * d
    dirs = {f: [Fraction(0)] * d for f in free}
    for row, p in zip(red, pivots):
        base[p] = row[d]
        for f in free:
            dirs[f][p] = -row[f]
    for f in free:
        dirs[f][f] = Fraction(1)

    def point(t: dict) -> list[ExactScalar]:
        out = []
        for k in range(d):
            acc = ExactScalar(base[k])
            for f in free:
                if dirs[f][k]:
                    acc = acc + t[f] * dirs[f][k]
            out.append(acc)
        return out

    t = {f: x[f] for f in free}
    live = [(f, s) for f, s in zip(functionals, target.signs) if s != 0]
    for j in free:
        if t[j].is_rational:
            continue
        t[j] = ExactScalar(0)
        p0 = point(t)
        lows, highs = [], []
        for f, s in live:
            slope = sum((a * b for a, b in zip(f.linear, dirs[j])), Fraction(0))
            if not slope:
                continue
            rest = f(p0)
            bound = -rest / slope
            # s * (slope * t + rest) > 0
            (lows if s * slope > 0 else highs).append(bound)
        lo = exact_max(lows) if lows else None
        hi = exact_min(highs) if highs else None
        q = simplest_rational(lo, hi)
        while q.denominator > cap:
            if not expand_cap:
                raise DomainError(f"no rational with denominator <= {cap} in the facet",
                                  code="cap-exhausted")
            cap *= 2
        t[j] = ExactScalar(q)
    eta_s = point(t)
    eta = tuple(v.as_fraction() for v in eta_s)
    sig = signature(eta, functionals)
    if sig != target:
        raise ContractViolation("rational point left the facet")
    return FacetRational(eta, sig, cap)


def rational_in_facet(theta: Sequence, functionals: Sequence[AffineFunctional],
                      denominator_cap: int | None = None, expand_cap: bool = True
                      ) -> tuple[Fraction, ...]:
    """A rational point with the same sign vector as ``theta`` against ``functionals``.

    Rational ``theta`` is returned unchanged.  Otherwise the free coordinates
    of the equality subspace are fixed one at a time to the smallest-denominator
    rational keeping every strict sign.
    """
    return rational_in_facet_detailed(theta, functionals, denominator_cap, expand_cap).eta


# -- ramification and covers --------------------------------------------------

def ramification_index(rs: RootSystem, theta: Sequence) -> int:
    """Smallest ``d >= 1`` with ``d * theta`` in the coroot lattice."""
    v = [scalar(c) for c in theta]
    if len(v) != rs.rank:
        raise DomainError(f"theta has {len(v)} coordinates, expected {rs.rank}")
    if not all(c.is_rational for c in v):
        raise DomainError("ramification index needs a rational point")
    y = _linalg.solve([list(row) for row in rs.cartan], [c.rational for c in v])
    return _common_denominator(y)


def in_coroot_lattice(rs: RootSystem, v: Sequence[Fraction]) -> bool:
    y = _linalg.solve([list(row) for row in rs.cartan], list(v))
    return all(c.denominator == 1 for c in y)


def cover_exists(genus: int, indices: Sequence[int]) -> bool:
    """Existence of a Galois cover ramified with the given indices."""
    if genus < 0:
        raise DomainError("genus must be nonnegative")
    if not indices:
        raise DomainError("at least one ramification point is required")
    if any(d < 1 for d in indices):
        raise DomainError("ramification indices must be positive")
    if genus > 0 or len(indices) >= 3:
        return True
    return len(indices) == 2 and indices[0] == indices[1]
