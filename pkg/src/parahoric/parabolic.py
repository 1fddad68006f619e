"""Parabolic bundle weight arithmetic and the stability inequality system.

Stability is tested against abstract subbundle candidates
``(rank_w, degree_w, n)``, where ``n`` gives at each marked point how many
copies of each weight the candidate inherits.  A candidate is destabilizing
when ``chi = degree_w + sum n_k * alpha_k`` is positive.  The induced-weight
form of the inequality is meant for bundles of parabolic degree zero, which is
the case for every bundle coming from a unitary representation.
"""
from __future__ import annotations

import functools
import itertools
import math
from dataclasses import dataclass
from typing import Iterator, Sequence

from .errors import DomainError
from .numeric import ExactScalar, linear_combination, scalar


@dataclass(frozen=True)
class ParabolicPoint:
    weights: tuple[ExactScalar, ...]
    mults: tuple[int, ...]

    def __post_init__(self):
        ws = tuple(scalar(w) for w in self.weights)
        ms = tuple(int(m) for m in self.mults)
        object.__setattr__(self, "weights", ws)
        object.__setattr__(self, "mults", ms)
        if len(ws) != len(ms) or not ws:
            raise DomainError("each point needs matching nonempty weights and multiplicities")
        if any(m < 1 for m in ms):
            raise DomainError("multiplicities must be positive")
        for w in ws:
            if w.sign() < 0 or not w < 1:
                raise DomainError(f"parabolic weight {w} outside [0, 1)")
        for a, b in zip(ws, ws[1:]):
            if not a < b:
                raise DomainError("parabolic weights must be strictly increasing")

    @classmethod
    def from_multiset(cls, pairs) -> "ParabolicPoint":
        """Merge ``(weight, mult)`` pairs with equal weights and sort."""
        acc: dict[ExactScalar, int] = {}
        for w, m in pairs:
            w = scalar(w)
            acc[w] = acc.get(w, 0) + m
        ws = _sorted_exact(acc)
        return cls(tuple(ws), tuple(acc[w] for w in ws))

    @property
    def size(self) -> int:
        return sum(self.mults)

    def weight_sum(self) -> ExactScalar:
        return linear_combination(self.mults, self.weights)

    def to_json(self) -> dict:
        return {"weights": [w.to_json() for w in self.weights], "mults": list(self.mults)}


def _sorted_exact(values) -> list[ExactScalar]:
    return sorted(values, key=functools.cmp_to_key(lambda a, b: (a - b).sign()))


@dataclass(frozen=True)
class ParabolicBundleData:
    rank: int
    degree: int
    points: tuple[ParabolicPoint, ...] = ()

    def __post_init__(self):
        if self.rank < 1:
            raise DomainError("rank must be positive")
        object.__setattr__(self, "points", tuple(self.points))
        for p in self.points:
            if p.size != self.rank:
                raise DomainError(f"multiplicities sum to {p.size}, rank is {self.rank}")

    @classmethod
    def from_json(cls, obj: dict) -> "ParabolicBundleData":
        pts = tuple(ParabolicPoint(tuple(scalar(w) for w in p["weights"]), tuple(p["mults"]))
                    for p in obj.get("points", []))
        return cls(int(obj["rank"]), int(obj["degree"]), pts)

    def to_json(self) -> dict:
        return {"rank": self.rank, "degree": self.degree,
                "points": [p.to_json() for p in self.points]}


def trivial_bundle(rank: int, degree: int = 0, npoints: int = 0) -> ParabolicBundleData:
    pt = ParabolicPoint((ExactScalar(0),), (rank,))
    return ParabolicBundleData(rank, degree, (pt,) * npoints)


def pardeg(V: ParabolicBundleData) -> ExactScalar:
    total = ExactScalar(V.degree)
    for p in V.points:
        total = total + p.weight_sum()
    return total


def slope(V: ParabolicBundleData) -> ExactScalar:
    return pardeg(V) / V.rank


def par_dual(V: ParabolicBundleData) -> ParabolicBundleData:
    pts = []
    shift = 0
    for p in V.points:
        pairs = []
        for w, m in zip(p.weights, p.mults):
            if w.is_zero():
                pairs.append((w, m))
            else:
                pairs.append((1 - w, m))
                shift += m
        pts.append(ParabolicPoint.from_multiset(pairs))
    return ParabolicBundleData(V.rank, -V.degree - shift, tuple(pts))


def _check_points(V: ParabolicBundleData, W: ParabolicBundleData) -> None:
    if len(V.points) != len(W.points):
        raise DomainError(f"point sets differ: {len(V.points)} vs {len(W.points)} marked points")


def par_tensor(V: ParabolicBundleData, W: ParabolicBundleData) -> ParabolicBundleData:
    _check_points(V, W)
    pts = []
    wraps = 0
    for p, q in zip(V.points, W.points):
        pairs = []
        for a, m in zip(p.weights, p.mults):
            for b, n in zip(q.weights, q.mults):
                s = a + b
                if s >= 1:
                    s = s - 1
                    wraps += m * n
                pairs.append((s, m * n))
        pts.append(ParabolicPoint.from_multiset(pairs))
    degree = V.degree * W.rank + W.degree * V.rank + wraps
    return ParabolicBundleData(V.rank * W.rank, degree, tuple(pts))


def par_hom(V: ParabolicBundleData, W: ParabolicBundleData) -> ParabolicBundleData:
    """``Hom(V, W) = V^* (x) W``."""
    return par_tensor(par_dual(V), W)


@dataclass(frozen=True)
class SubbundleCandidate:
    rank_w: int
    degree_w: int
    selections: tuple[tuple[int, ...], ...]

    def to_json(self) -> dict:
        return {"rank": self.rank_w, "degree": self.degree_w,
                "n": [list(s) for s in self.selections]}

    @classmethod
    def from_json(cls, obj: dict) -> "SubbundleCandidate":
        return cls(int(obj["rank"]), int(obj["degree"]), tuple(tuple(s) for s in obj["n"]))


def check_candidate(V: ParabolicBundleData, W: SubbundleCandidate) -> None:
    if not 1 <= W.rank_w < V.rank:
        raise DomainError(f"candidate rank {W.rank_w} not in [1, {V.rank - 1}]")
    if len(W.selections) != len(V.points):
        raise DomainError("candidate must give one multiplicity vector per marked point")
    for n, p in zip(W.selections, V.points):
        if len(n) != len(p.mults):
            raise DomainError("multiplicity vector length differs from the number of weights")
        if any(not 0 <= a <= m for a, m in zip(n, p.mults)):
            raise DomainError("induced multiplicity exceeds the flag multiplicity")
        if sum(n) != W.rank_w:
            raise DomainError("induced multiplicities must sum to the candidate rank")


def chi_candidate(V: ParabolicBundleData, W: SubbundleCandidate) -> ExactScalar:
    check_candidate(V, W)
    total = ExactScalar(W.degree_w)
    for n, p in zip(W.selections, V.points):
        total = total + linear_combination(n, p.weights)
    return total


def multiplicity_vectors(mults: Sequence[int], s: int) -> Iterator[tuple[int, ...]]:
    """All ``n`` with ``0 <= n_k <= m_k`` and ``sum n = s``, lex ascending."""
    if not mults:
        if s == 0:
            yield ()
        return
    rest_cap = sum(mults[1:])
    for first in range(max(0, s - rest_cap), min(mults[0], s) + 1):
        for tail in multiplicity_vectors(mults[1:], s - first):
            yield (first,) + tail


def count_multiplicity_vectors(mults: Sequence[int], s: int) -> int:
    """Coefficient of ``x^s`` in ``prod (1 + x + ... + x^m)``."""
    poly = [1]
    for m in mults:
        new = [0] * (len(poly) + m)
        for i, c in enumerate(poly):
            for j in range(m + 1):
                new[i + j] += c
        poly = new
    return poly[s] if 0 <= s < len(poly) else 0


def degree_window(s: int, npoints: int, C1: int | None = None, C2: int | None = None
                  ) -> range:
    lo = -s * npoints if C1 is None else C1
    hi = 0 if C2 is None else C2
    return range(lo, hi + 1)


def enumerate_candidates(V: ParabolicBundleData, C1: int | None = None, C2: int | None = None,
                         ranks: Sequence[int] | None = None) -> Iterator[SubbundleCandidate]:
    if C1 is not None and C2 is not None and C1 > C2:
        raise DomainError(f"C1 = {C1} exceeds C2 = {C2}")
    for s in (sorted(ranks) if ranks is not None else range(1, V.rank)):
        if not 1 <= s < V.rank:
            raise DomainError(f"candidate rank {s} not in [1, {V.rank - 1}]")
        per_point = [list(multiplicity_vectors(p.mults, s)) for p in V.points]
        for c in degree_window(s, len(V.points), C1, C2):
            for sel in itertools.product(*per_point):
                yield SubbundleCandidate(s, c, tuple(sel))


STABLE = "stable"
SEMISTABLE = "semistable-not-stable"
UNSTABLE = "unstable"


@dataclass(frozen=True)
class Verdict:
    verdict: str
    witness: SubbundleCandidate | None
    witness_chi: ExactScalar | None
    system: tuple[tuple[SubbundleCandidate, ExactScalar], ...]

    def to_json(self, include_system: bool = True) -> dict:
        out = {"verdict": self.verdict,
               "witness": None if self.witness is None else self.witness.to_json(),
               "witness_chi": None if self.witness_chi is None else self.witness_chi.to_json(),
               "inequalities": len(self.system)}
        if include_system:
            out["system"] = [{"candidate": w.to_json(), "chi": chi.to_json()}
                             for w, chi in self.system]
        return out


def stability_verdict(V: ParabolicBundleData, candidates: Sequence[SubbundleCandidate] | None = None,
                      C1: int | None = None, C2: int | None = None,
                      ranks: Sequence[int] | None = None) -> Verdict:
    """Verdict over supplied candidates, or over the enumerated finite family."""
    cands = list(candidates) if candidates is not None else list(enumerate_candidates(V, C1, C2, ranks))
    system = tuple((W, chi_candidate(V, W)) for W in cands)
    signs = [chi.sign() for _, chi in system]
    if any(s > 0 for s in signs):
        i = signs.index(1)
        return Verdict(UNSTABLE, system[i][0], system[i][1], system)
    if any(s == 0 for s in signs):
        i = signs.index(0)
        return Verdict(SEMISTABLE, system[i][0], system[i][1], system)
    return Verdict(STABLE, None, None, system)


def polystability_verdict(summands: Sequence[ParabolicBundleData], C1: int | None = None,
                          C2: int | None = None) -> dict:
    """Check a supplied decomposition: every summand stable, all slopes equal."""
    if not summands:
        raise DomainError("polystability needs at least one summand")
    verdicts = [stability_verdict(V, C1=C1, C2=C2) for V in summands]
    slopes = [slope(V) for V in summands]
    equal = all(s == slopes[0] for s in slopes)
    return {"polystable": equal and all(v.verdict == STABLE for v in verdicts),
            "slopes_equal": equal,
            "slopes": [s.to_json() for s in slopes],
            "summand_verdicts": [v.verdict for v in verdicts]}


def direct_sum(V: ParabolicBundleData, W: ParabolicBundleData) -> ParabolicBundleData:
    _check_points(V, W)
    pts = tuple(ParabolicPoint.from_multiset(list(zip(p.weights, p.mults)) + list(zip(q.weights, q.mults)))
                for p, q in zip(V.points, W.points))
    return ParabolicBundleData(V.rank + W.rank, V.degree + W.degree, pts)


def gl_sl_normalize(values: Sequence, mode: str = "GL") -> tuple[tuple[ExactScalar, ...], bool]:
    vs = [scalar(v) for v in values]
    for v in vs:
        if v.sign() < 0 or not v < 1:
            raise DomainError(f"weight {v} outside [0, 1)")
    mode = mode.upper()
    if mode not in ("GL", "SL"):
        raise DomainError(f"mode must be GL or SL, got {mode!r}")
    ordered = tuple(_sorted_exact(vs))
    if mode == "GL":
        return ordered, True
    total = sum(vs, ExactScalar(0))
    return ordered, total.is_rational and total.rational.denominator == 1


def frac_exact(v) -> ExactScalar:
    v = scalar(v)
    return v - math.floor(v)


__all__ = [
    "ParabolicPoint", "ParabolicBundleData", "SubbundleCandidate", "Verdict",
    "pardeg", "slope", "par_dual", "par_tensor", "par_hom", "chi_candidate",
    "multiplicity_vectors", "count_multiplicity_vectors", "enumerate_candidates",
    "stability_verdict", "polystability_verdict", "gl_sl_normalize", "direct_sum",
    "trivial_bundle", "degree_window", "frac_exact",
]
