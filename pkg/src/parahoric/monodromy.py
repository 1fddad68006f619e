"""Monodromy, residues and parabolic data of unitary surface-group representations.

The local loop holonomy around a puncture is ``exp(-2 pi i Res)``.  With
residue eigenvalues in ``[0, 1)`` an eigenphase ``q`` of the monodromy
(eigenvalue ``exp(2 pi i q)``) corresponds to the residue ``frac(-q)``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .errors import DomainError
from .numeric import ExactScalar, scalar
from .parabolic import (ParabolicBundleData, ParabolicPoint, SubbundleCandidate, _sorted_exact,
                        chi_candidate, pardeg, stability_verdict)

SNAP_DENOMINATOR = 10 ** 6
SNAP_TOLERANCE = 1e-8
DEFAULT_TOL = 1e-10


def _frac(v) -> ExactScalar:
    v = scalar(v)
    return v - math.floor(v)


def _merge(pairs) -> tuple[tuple[ExactScalar, int], ...]:
    acc: dict[ExactScalar, int] = {}
    for v, m in pairs:
        if m < 1:
            raise DomainError("multiplicities must be positive")
        acc[v] = acc.get(v, 0) + m
    return tuple((v, acc[v]) for v in _sorted_exact(acc))


@dataclass(frozen=True)
class MonodromyClass:
    """Conjugacy class of a unitary matrix: exact phases or a numeric matrix."""

    phases: tuple[tuple[ExactScalar, int], ...] = ()
    matrix: np.ndarray | None = field(default=None, compare=False)
    tol: float = DEFAULT_TOL

    @property
    def mode(self) -> str:
        return "numeric" if self.matrix is not None else "exact"

    @classmethod
    def exact(cls, pairs) -> "MonodromyClass":
        pairs = [(_frac(v), int(m)) for v, m in pairs]
        return cls(_merge(pairs))

    @classmethod
    def numeric(cls, matrix, tol: float = DEFAULT_TOL) -> "MonodromyClass":
        return cls((), np.asarray(matrix, dtype=complex), tol)

    @property
    def rank(self) -> int:
        if self.matrix is not None:
            return self.matrix.shape[0]
        return sum(m for _, m in self.phases)

    def to_json(self) -> dict:
        return {"phases": [{"value": v.to_json(), "mult": m} for v, m in self.phases]}


@dataclass(frozen=True)
class ResidueSpec:
    eigenvalues: tuple[tuple[ExactScalar, int], ...]
    exact: bool = True

    def __post_init__(self):
        seen = set()
        for v, m in self.eigenvalues:
            if v.sign() < 0 or not v < 1:
                raise DomainError(f"residue eigenvalue {v} outside [0, 1)")
            if m < 1:
                raise DomainError("multiplicities must be positive")
            if v in seen:
                raise DomainError("residue eigenvalues must be distinct")
            seen.add(v)

    @classmethod
    def from_pairs(cls, pairs, exact: bool = True) -> "ResidueSpec":
        return cls(_merge([(scalar(v), int(m)) for v, m in pairs]), exact)

    @property
    def rank(self) -> int:
        return sum(m for _, m in self.eigenvalues)

    def trace(self) -> ExactScalar:
        return sum((v * m for v, m in self.eigenvalues), ExactScalar(0))

    def as_point(self) -> ParabolicPoint:
        return ParabolicPoint(tuple(v for v, _ in self.eigenvalues), tuple(m for _, m in self.eigenvalues))

    def to_json(self) -> dict:
        return {"eigenvalues": [{"value": v.to_json(), "mult": m} for v, m in self.eigenvalues],
                "exact": self.exact}


def is_unitary(matrix: np.ndarray, tol: float) -> bool:
    n = matrix.shape[0]
    return matrix.shape == (n, n) and np.linalg.norm(matrix.conj().T @ matrix - np.eye(n)) <= tol


def numeric_phases(matrix: np.ndarray, tol: float = DEFAULT_TOL) -> tuple[list[tuple[ExactScalar, int]], bool]:
    """Eigenphases grouped within tolerance and snapped to small-denominator rationals."""
    if not is_unitary(matrix, max(tol, 1e-12) * matrix.shape[0]):
        raise DomainError("monodromy matrix is not unitary within tolerance")
    raw = sorted((np.angle(z) / (2 * math.pi)) % 1.0 for z in np.linalg.eigvals(matrix))
    group_tol = max(SNAP_TOLERANCE, 10 * tol)
    groups: list[list[float]] = []
    for q in raw:
        if groups and abs(q - groups[-1][-1]) <= group_tol:
            groups[-1].append(q)
        else:
            groups.append([q])
    # phases near 1 belong to the class of 0
    if len(groups) > 1 and 1.0 - groups[-1][-1] + groups[0][0] <= group_tol:
        groups[0] = [q - 1.0 for q in groups.pop()] + groups[0]
    exact = True
    out = []
    for g in groups:
        mean = sum(g) / len(g)
        snapped = Fraction(mean).limit_denominator(SNAP_DENOMINATOR)
        if abs(float(snapped) - mean) > SNAP_TOLERANCE:
            exact = False
            snapped = Fraction(mean)
        out.append((_frac(snapped), len(g)))
    return out, exact


def monodromy_to_residue(t: MonodromyClass) -> ResidueSpec:
    if t.mode == "numeric":
        phases, exact = numeric_phases(t.matrix, t.tol)
    else:
        phases, exact = list(t.phases), True
    return ResidueSpec(_merge([(_frac(-q), m) for q, m in phases]), exact)


def residue_to_monodromy(r: ResidueSpec) -> MonodromyClass:
    return MonodromyClass(_merge([(_frac(-v), m) for v, m in r.eigenvalues]))


def validate_connection_residues(V: ParabolicBundleData, residues: Sequence) -> tuple[bool, dict]:
    """Check that each residue acts on the i-th graded piece by the i-th weight.

    ``residues[j]`` is a list of ``(eigenvalue, eigenspace dimension)`` aligned
    with the flag at point ``j``.  Shape problems give ``False`` with a reason.
    """
    report = {"points": []}
    if len(residues) != len(V.points):
        report["reason"] = f"{len(residues)} residues for {len(V.points)} marked points"
        return False, report
    ok = True
    for j, (p, res) in enumerate(zip(V.points, residues)):
        res = [(scalar(v), int(d)) for v, d in res]
        entry = {"point": j, "ok": True}
        if len(res) != len(p.weights):
            entry.update(ok=False, reason="number of eigenvalues differs from flag length")
        elif [d for _, d in res] != list(p.mults):
            entry.update(ok=False, reason="eigenspace dimensions differ from flag multiplicities")
        else:
            bad = [i for i, ((v, _), w) in enumerate(zip(res, p.weights)) if v != w]
            if bad:
                entry.update(ok=False, reason="graded action differs from the weight", pieces=bad)
        ok = ok and entry["ok"]
        report["points"].append(entry)
    return ok, report


def deligne_degree(residues: Sequence[ResidueSpec], rank: int | None = None,
                   shifts: Sequence[Sequence[int]] | None = None) -> int:
    """Degree of the canonical extension: ``-sum trace(Res_j)``.

    ``shifts[j][i]`` moves the i-th eigenvalue at puncture j to another branch
    ``value + k``, lowering the degree by ``k`` times its multiplicity.
    """
    total = ExactScalar(0)
    for j, r in enumerate(residues):
        if rank is not None and r.rank != rank:
            raise DomainError(f"residue at puncture {j} has rank {r.rank}, expected {rank}")
        total = total + r.trace()
        if shifts is not None:
            ks = shifts[j]
            if len(ks) != len(r.eigenvalues):
                raise DomainError("one branch shift per eigenvalue is required")
            total = total + sum(k * m for k, (_, m) in zip(ks, r.eigenvalues))
    if not total.is_rational or total.rational.denominator != 1:
        raise DomainError(f"residue trace sum {total} is not an integer")
    return -int(total.rational)


# -- surface group representations --------------------------------------------

def commutator(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return a @ b @ np.linalg.inv(a) @ np.linalg.inv(b)


@dataclass
class SurfaceGroupRep:
    """Generators ``a_1, b_1, ..., a_g, b_g, c_1, ..., c_p``.

    In exact mode every generator is diagonal and given by its eigenphases.
    """

    genus: int
    punctures: int
    generators: list
    mode: str = "numeric"
    tol: float = DEFAULT_TOL
    rank_hint: int | None = None

    def __post_init__(self):
        if self.genus < 0 or self.punctures < 0:
            raise DomainError("genus and puncture count must be nonnegative")
        if len(self.generators) != 2 * self.genus + self.punctures:
            raise DomainError(f"expected {2 * self.genus + self.punctures} generators, got {len(self.generators)}")
        if self.mode == "numeric":
            self.generators = [np.asarray(g, dtype=complex) for g in self.generators]
        elif self.mode == "exact":
            self.generators = [tuple(_frac(q) for q in g) for g in self.generators]
        else:
            raise DomainError(f"unknown representation mode {self.mode!r}")
        if not self.generators and self.rank_hint is None:
            raise DomainError("a representation without generators needs a rank")

    @property
    def rank(self) -> int:
        if self.generators:
            g = self.generators[0]
            return g.shape[0] if self.mode == "numeric" else len(g)
        return self.rank_hint

    @property
    def puncture_generators(self) -> list:
        return self.generators[2 * self.genus:]

    def matrices(self) -> list[np.ndarray]:
        if self.mode == "numeric":
            return list(self.generators)
        return [np.diag([np.exp(2j * math.pi * float(q)) for q in g]) for g in self.generators]

    def relation_residual(self) -> float:
        n = self.rank
        if self.mode == "exact":
            # diagonal generators commute; only the puncture phases matter
            for i in range(n):
                s = sum((g[i] for g in self.puncture_generators), ExactScalar(0))
                if not s.is_rational or s.rational.denominator != 1:
                    return 1.0
            return 0.0
        prod = np.eye(n, dtype=complex)
        gens = self.generators
        for i in range(self.genus):
            prod = prod @ commutator(gens[2 * i], gens[2 * i + 1])
        for c in self.puncture_generators:
            prod = prod @ c
        return float(np.linalg.norm(prod - np.eye(n)))

    def check(self) -> None:
        for g in self.matrices():
            if g.shape != (self.rank, self.rank):
                raise DomainError("generators must be square matrices of equal size")
            if not is_unitary(g, max(self.tol, 1e-12) * self.rank):
                raise DomainError("generator is not unitary within tolerance")
        res = self.relation_residual()
        if res > self.tol:
            raise DomainError(f"surface group relation fails (residual {res:.3e})")


def adjoint_invariants_dim(rep: SurfaceGroupRep) -> int:
    """Dimension of the trace-zero matrices fixed by conjugation by every generator."""
    rep.check()
    n = rep.rank
    if rep.mode == "exact":
        count = n - 1
        for i in range(n):
            for j in range(n):
                if i != j and all((g[i] - g[j]).is_rational and (g[i] - g[j]).rational.denominator == 1
                                  for g in rep.generators):
                    count += 1
        return count
    blocks = []
    for g in rep.generators:
        # column-major vec(g X g^-1) = (g^-T kron g) vec(X)
        blocks.append(np.kron(np.linalg.inv(g).T, g) - np.eye(n * n))
    blocks.append(np.eye(n).reshape(1, n * n, order="F"))
    stack = np.vstack(blocks)
    sv = np.linalg.svd(stack, compute_uv=False)
    scale = max(1.0, sv[0]) if sv.size else 1.0
    rank = int(np.sum(sv > 1e3 * max(rep.tol, 1e-12) * scale))
    return n * n - rank


def puncture_classes(rep: SurfaceGroupRep) -> list[MonodromyClass]:
    if rep.mode == "exact":
        return [MonodromyClass.exact([(q, 1) for q in g]) for g in rep.puncture_generators]
    return [MonodromyClass.numeric(c, rep.tol) for c in rep.puncture_generators]


@dataclass(frozen=True)
class AssembledBundle:
    bundle: ParabolicBundleData
    residues: tuple[ResidueSpec, ...]
    invariants_dim: int
    exact: bool

    @property
    def pardeg(self) -> ExactScalar:
        return pardeg(self.bundle)

    @property
    def stable_certified(self) -> bool:
        return self.invariants_dim == 0

    def to_json(self) -> dict:
        return {"bundle": self.bundle.to_json(),
                "residues": [r.to_json() for r in self.residues],
                "certificates": {"pardeg": self.pardeg.to_json(), "degree": self.bundle.degree,
                                 "invariants_dim": self.invariants_dim},
                "stable_certified": self.stable_certified, "exact": self.exact}


def assemble_rep_bundle(rep: SurfaceGroupRep) -> AssembledBundle:
    """Parabolic bundle of a unitary representation with its certificates."""
    rep.check()
    residues = tuple(monodromy_to_residue(t) for t in puncture_classes(rep))
    exact = all(r.exact for r in residues)
    if exact:
        degree = deligne_degree(residues, rep.rank)
    else:
        approx = sum(float(r.trace()) for r in residues)
        if abs(approx - round(approx)) > 1e-6:
            raise DomainError(f"residue trace sum {approx} is not close to an integer")
        degree = -int(round(approx))
    bundle = ParabolicBundleData(rep.rank, degree, tuple(r.as_point() for r in residues))
    return AssembledBundle(bundle, residues, adjoint_invariants_dim(rep), exact)


def diagonal_summand_candidates(rep: SurfaceGroupRep, assembled: AssembledBundle
                                ) -> list[tuple[SubbundleCandidate, ExactScalar]]:
    """Coordinate line summands of an exact diagonal representation, with chi."""
    if rep.mode != "exact":
        raise DomainError("summand candidates need an exact diagonal representation")
    V = assembled.bundle
    out = []
    if V.rank < 2:
        return out
    for i in range(V.rank):
        sel = []
        degree = ExactScalar(0)
        for c, p in zip(rep.puncture_generators, V.points):
            r = _frac(-c[i])
            degree = degree - r
            sel.append(tuple(int(w == r) for w in p.weights))
        cand = SubbundleCandidate(1, int(degree.as_fraction()), tuple(sel))
        out.append((cand, chi_candidate(V, cand)))
    return out


def assembled_verdict(assembled: AssembledBundle, C1: int | None = None, C2: int | None = None):
    return stability_verdict(assembled.bundle, C1=C1, C2=C2)


def rotation_su2(axis: Sequence[float], angle: float) -> np.ndarray:
    """``exp(i angle/2 (n . sigma))`` style element ``cos + i sin (n . sigma)``."""
    n = np.asarray(axis, dtype=float)
    n = n / np.linalg.norm(n)
    sx = np.array([[0, 1], [1, 0]], dtype=complex)
    sy = np.array([[0, -1j], [1j, 0]], dtype=complex)
    sz = np.array([[1, 0], [0, -1]], dtype=complex)
    ns = n[0] * sx + n[1] * sy + n[2] * sz
    return math.cos(angle) * np.eye(2) + 1j * math.sin(angle) * ns
