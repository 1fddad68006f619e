"""Root systems of simple types and the fundamental alcove.

Conventions: roots and characters are vectors in simple-root coordinates,
apartment points are vectors in fundamental-coweight coordinates, so the
pairing ``r(x)`` is the plain dot product.  ``cartan[i][j]`` is
``<alpha_i, alpha_j^vee>``; its j-th column is the coroot ``alpha_j^vee`` in
fundamental-coweight coordinates.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from . import _linalg
from .errors import DomainError
from .numeric import ExactScalar, linear_combination, scalar

Root = tuple[int, ...]
Weight = tuple[Fraction, ...]

TYPES = ("A", "B", "C", "D", "G2", "F4")


def _e(n: int, i: int, c=1) -> list[Fraction]:
    v = [Fraction(0)] * n
    v[i] = Fraction(c)
    return v


def _simple_roots_euclidean(type_label: str, rank: int) -> list[list[Fraction]]:
    if type_label == "A":
        n = rank + 1
        return [[a - b for a, b in zip(_e(n, i), _e(n, i + 1))] for i in range(rank)]
    if type_label in ("B", "C", "D"):
        n = rank
        roots = [[a - b for a, b in zip(_e(n, i), _e(n, i + 1))] for i in range(rank - 1)]
        if type_label == "B":
            roots.append(_e(n, n - 1))
        elif type_label == "C":
            roots.append(_e(n, n - 1, 2))
        else:
            roots.append([a + b for a, b in zip(_e(n, n - 2), _e(n, n - 1))])
        return roots
    if type_label == "G2":
        return [[Fraction(1), Fraction(-1), Fraction(0)], [Fraction(-2), Fraction(1), Fraction(1)]]
    if type_label == "F4":
        h = Fraction(1, 2)
        return [[0, 1, -1, 0], [0, 0, 1, -1], [0, 0, 0, 1], [h, -h, -h, -h]]
    raise DomainError(f"unknown type {type_label!r}")


def _valid(type_label: str, rank: int) -> bool:
    return ((type_label == "A" and rank >= 1) or (type_label in ("B", "C") and rank >= 2)
            or (type_label == "D" and rank >= 4) or (type_label == "G2" and rank == 2)
            or (type_label == "F4" and rank == 4))


def parse_type(label: str) -> tuple[str, int]:
    """``"A2" -> ("A", 2)``, ``"G2" -> ("G2", 2)``."""
    m = re.fullmatch(r"\s*([ABCDGF])\s*(\d+)\s*", str(label))
    if not m:
        raise DomainError(f"cannot parse root system label {label!r}", code="malformed")
    letter, rank = m.group(1), int(m.group(2))
    if letter in ("G", "F"):
        return letter + str(rank), rank
    return letter, rank


@dataclass(frozen=True)
class RootSystem:
    type_label: str
    rank: int
    roots: tuple[Root, ...]
    cartan: tuple[tuple[int, ...], ...]
    highest_root: Root
    gram: tuple[tuple[Fraction, ...], ...] = field(repr=False)

    @property
    def label(self) -> str:
        return self.type_label if self.type_label in ("G2", "F4") else f"{self.type_label}{self.rank}"

    @property
    def simple_roots(self) -> tuple[Root, ...]:
        return tuple(tuple(int(i == j) for j in range(self.rank)) for i in range(self.rank))

    @property
    def positive_roots(self) -> tuple[Root, ...]:
        return tuple(r for r in self.roots if sum(r) > 0)

    def inner(self, a: Sequence, b: Sequence) -> Fraction:
        """Invariant inner product of two vectors in simple-root coordinates."""
        return sum((Fraction(a[i]) * self.gram[i][j] * b[j]
                    for i in range(self.rank) for j in range(self.rank) if a[i] and b[j]), Fraction(0))

    def coroot(self, r: Sequence) -> tuple[Fraction, ...]:
        """``r^vee`` in fundamental-coweight coordinates: ``<alpha_k, r^vee>``."""
        rr = self.inner(r, r)
        return tuple(2 * self.inner(self.simple_roots[k], r) / rr for k in range(self.rank))

    def reflect_root(self, beta: Sequence[int], j: int) -> Root:
        pairing = sum(beta[i] * self.cartan[i][j] for i in range(self.rank))
        out = list(beta)
        out[j] -= pairing
        return tuple(out)

    def pair(self, r: Sequence, x: Sequence) -> ExactScalar:
        return linear_combination(r, [scalar(v) for v in x])

    def is_root(self, v: Sequence) -> bool:
        return tuple(v) in self._root_set

    @property
    def _root_set(self) -> frozenset:
        return frozenset(self.roots)

    def to_json(self) -> dict:
        return {"type": self.type_label, "rank": self.rank}


def _graded_key(v: Sequence) -> tuple:
    return (sum(v), tuple(v))


def build_root_system(type_label: str, rank: int | None = None) -> RootSystem:
    """Root system of a simple type by reflection closure of the simple roots.

    ``type_label`` is one of A, B, C, D, G2, F4; a combined label like ``"A2"``
    is accepted when ``rank`` is omitted.
    """
    if rank is None:
        type_label, rank = parse_type(type_label)
    type_label = str(type_label).upper()
    if type_label in ("G", "F"):
        type_label = f"{type_label}{rank}"
    if type_label not in TYPES or not _valid(type_label, rank):
        raise DomainError(f"invalid simple type {type_label}{'' if type_label in ('G2', 'F4') else rank}")
    eu = _simple_roots_euclidean(type_label, rank)
    gram = tuple(tuple(sum((Fraction(a) * b for a, b in zip(eu[i], eu[j])), Fraction(0))
                       for j in range(rank)) for i in range(rank))
    cartan = []
    for i in range(rank):
        row = []
        for j in range(rank):
            v = 2 * gram[i][j] / gram[j][j]
            if v.denominator != 1:
                raise AssertionError("non-integral Cartan entry")
            row.append(int(v))
        cartan.append(tuple(row))
    proto = RootSystem(type_label, rank, (), tuple(cartan), (), gram)
    simple = proto.simple_roots
    seen = set(simple)
    frontier = list(simple)
    while frontier:
        nxt = []
        for beta in frontier:
            for j in range(rank):
                gamma = proto.reflect_root(beta, j)
                if gamma not in seen:
                    seen.add(gamma)
                    nxt.append(gamma)
        frontier = nxt
    roots = tuple(sorted(seen, key=_graded_key))
    highest = max(roots, key=_graded_key)
    return RootSystem(type_label, rank, roots, tuple(cartan), highest, gram)


def root_label(rs: RootSystem, r: Sequence[int]) -> str:
    """Human-readable root label, e.g. ``+α``, ``−α``, ``+(α1+α2)``."""
    positive = sum(r) > 0
    sign = "+" if positive else "−"
    a = [abs(c) for c in r]
    if rs.rank == 1:
        return sign + ("α" if a[0] == 1 else f"{a[0]}α")
    terms = [("" if c == 1 else str(c)) + f"α{i + 1}" for i, c in enumerate(a) if c]
    if len(terms) == 1:
        return sign + terms[0]
    return sign + "(" + "+".join(terms) + ")"


@dataclass(frozen=True)
class RepWeights:
    description: str
    weights: tuple[Weight, ...]

    def __post_init__(self):
        if not self.weights:
            raise DomainError("weight multiset must be nonempty")

    def to_json(self) -> dict:
        return {"description": self.description,
                "weights": [[f"{w.numerator}/{w.denominator}" for w in v] for v in self.weights]}


def _to_root_coords(rs: RootSystem, ambient: Sequence[Fraction], eu: list[list[Fraction]]) -> Weight:
    b = [sum((Fraction(x) * y for x, y in zip(alpha, ambient)), Fraction(0)) for alpha in eu]
    return tuple(_linalg.solve([list(row) for row in rs.gram], b))


def _standard_ambient(rs: RootSystem) -> list[list[Fraction]]:
    t, n = rs.type_label, rs.rank
    if t == "A":
        dim = n + 1
        return [[Fraction(int(i == j)) - Fraction(1, dim) for j in range(dim)] for i in range(dim)]
    vecs = []
    for i in range(n):
        vecs.append(_e(n, i))
        vecs.append(_e(n, i, -1))
    if t == "B":
        vecs.append([Fraction(0)] * n)
    return vecs


def rep_weights(rs: RootSystem, descriptor) -> RepWeights:
    """Weights of ``adjoint``, ``standard`` (types A-D), ``trivial``, or a user list."""
    if isinstance(descriptor, str):
        key = descriptor.lower()
        if key == "adjoint":
            zeros = [tuple(Fraction(0) for _ in range(rs.rank))] * rs.rank
            ws = [tuple(Fraction(c) for c in r) for r in rs.roots] + zeros
            return RepWeights("adjoint", tuple(sorted(ws, key=_graded_key, reverse=True)))
        if key == "trivial":
            return RepWeights("trivial", (tuple(Fraction(0) for _ in range(rs.rank)),))
        if key == "standard":
            if rs.type_label not in ("A", "B", "C", "D"):
                raise DomainError(f"standard representation not available for type {rs.type_label}")
            eu = _simple_roots_euclidean(rs.type_label, rs.rank)
            ws = [_to_root_coords(rs, v, eu) for v in _standard_ambient(rs)]
            return RepWeights("standard", tuple(sorted(ws, key=_graded_key, reverse=True)))
        raise DomainError(f"unknown representation descriptor {descriptor!r}")
    ws = []
    for w in descriptor:
        w = tuple(Fraction(c) for c in w)
        if len(w) != rs.rank:
            raise DomainError(f"weight {w} has wrong length for rank {rs.rank}")
        ws.append(w)
    return RepWeights("user", tuple(ws))


@dataclass(frozen=True)
class AlcovePoint:
    coords: tuple[ExactScalar, ...]

    def to_json(self) -> list:
        return [c.to_json() for c in self.coords]


def in_closed_alcove(rs: RootSystem, x: Sequence[ExactScalar]) -> bool:
    return all(c.sign() >= 0 for c in x) and rs.pair(rs.highest_root, x) <= 1


def alcove_reduce(rs: RootSystem, point: Iterable, max_steps: int = 100000
                  ) -> tuple[AlcovePoint, list[int]]:
    """Move ``point`` into the closed fundamental alcove by affine reflections.

    Returns the alcove point and the reflection word (``j`` for the simple
    reflection ``s_j`` with 1-based ``j``, 0 for the affine reflection in the
    wall ``highest_root = 1``).
    """
    x = [scalar(v) for v in point]
    if len(x) != rs.rank:
        raise DomainError(f"point has {len(x)} coordinates, expected {rs.rank}")
    coroots = [rs.coroot(a) for a in rs.simple_roots]
    high_co = rs.coroot(rs.highest_root)
    word: list[int] = []
    for _ in range(max_steps):
        for j in range(rs.rank):
            if x[j].sign() < 0:
                v = x[j]
                x = [xi - v * c for xi, c in zip(x, coroots[j])]
                word.append(j + 1)
                break
        else:
            h = rs.pair(rs.highest_root, x)
            if h > 1:
                v = h - 1
                x = [xi - v * c for xi, c in zip(x, high_co)]
                word.append(0)
            else:
                return AlcovePoint(tuple(x)), word
    raise RuntimeError("alcove reduction did not terminate")


def unitary_phases_to_alcove(rs: RootSystem, phases: Sequence) -> AlcovePoint:
    """Alcove point of ``diag(exp(2 pi i q_1), ...)`` in ``SU(rank + 1)``."""
    if rs.type_label != "A":
        raise DomainError("unitary phase description is only available for type A")
    q = [scalar(v) for v in phases]
    if len(q) != rs.rank + 1:
        raise DomainError(f"type A{rs.rank} needs {rs.rank + 1} phases, got {len(q)}")
    total = sum(q[1:], q[0])
    if not total.is_rational or total.rational.denominator != 1:
        raise DomainError(f"phase sum {total} is not an integer (not special unitary)")
    # Shift one phase by an integer so that the Lie algebra element has trace 0.
    q[-1] = q[-1] - total
    x = [q[i] - q[i + 1] for i in range(rs.rank)]
    return alcove_reduce(rs, x)[0]
