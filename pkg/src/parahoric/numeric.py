"""Exact real scalars: rationals extended by declared independent irrationals.

A scalar is ``q + sum(c_i * s_i)`` with rational ``q, c_i`` and symbols ``s_i``
drawn from an :class:`IrrationalBasis`.  The symbols together with 1 are
assumed Q-linearly independent, so a scalar is zero exactly when all of its
coefficients vanish.  Enclosures are only used to separate nonzero values
from zero (sign) or from integers (floor).

The shipped basis knows ``sqrt2``, ``sqrt3`` and ``sqrt5``; square roots of
other squarefree integers are registered on demand (``sqrt6``, ``sqrt10``,
...), which keeps products of square-root scalars inside the class.
"""
from __future__ import annotations

import ast
import math
import threading
from decimal import Decimal
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterable, Mapping, Union

from .errors import DomainError, EnclosureFault

Interval = tuple[Fraction, Fraction]
Oracle = Callable[[Fraction], Interval]
ScalarLike = Union["ExactScalar", Fraction, int, str]

# Sign/floor refinement starts at INITIAL bits and stops after MAX bits.
MAX_PRECISION_BITS = 1 << 16
_INITIAL_PRECISION_BITS = 16


def set_initial_precision(bits: int) -> None:
    """Starting enclosure budget ``2**-bits`` for sign and floor decisions."""
    global _INITIAL_PRECISION_BITS
    bits = int(bits)
    if not 1 <= bits <= MAX_PRECISION_BITS:
        raise DomainError(f"precision must be between 1 and {MAX_PRECISION_BITS} bits")
    _INITIAL_PRECISION_BITS = bits


def fraction_str(q: Fraction) -> str:
    """Render a rational as a decimal-free ``p/q`` string (``q > 0``)."""
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"


def squarefree_part(n: int) -> tuple[int, int]:
    """Return ``(g, m)`` with ``n == g * g * m`` and ``m`` squarefree."""
    if n <= 0:
        raise ValueError("squarefree_part needs a positive integer")
    g, m, p = 1, 1, 2
    while p * p <= n:
        while n % (p * p) == 0:
            n //= p * p
            g *= p
        if n % p == 0:
            n //= p
            m *= p
        p += 1
    return g, m * n


@lru_cache(maxsize=4096)
def _sqrt_dyadic(k: int, level: int) -> Interval:
    a = math.isqrt(k << (2 * level))
    den = 1 << level
    return Fraction(a, den), Fraction(a + 1, den)


def sqrt_oracle(k: int) -> Oracle:
    """Certified dyadic enclosures of ``sqrt(k)`` for non-square ``k``.

    The interval at budget ``eps`` is ``[a, a+1] / 2**j`` with
    ``a = isqrt(k * 4**j)`` and ``2**-j < eps``; successive levels are nested.
    """
    if math.isqrt(k) ** 2 == k:
        raise ValueError(f"{k} is a perfect square")

    def oracle(eps: Fraction) -> Interval:
        eps = Fraction(eps)
        if eps <= 0:
            raise ValueError("enclosure budget must be positive")
        level = max(0, (eps.denominator // eps.numerator).bit_length())
        while Fraction(1, 1 << level) >= eps:
            level += 1
        return _sqrt_dyadic(k, level)

    return oracle


class IrrationalBasis:
    """Ordered registry of irrational symbols and their enclosure oracles."""

    def __init__(self) -> None:
        self._oracles: dict[str, Oracle] = {}
        self._radicands: dict[str, int] = {}
        self._lock = threading.Lock()

    @property
    def symbols(self) -> tuple[str, ...]:
        return tuple(self._oracles)

    def __contains__(self, name: object) -> bool:
        return name in self._oracles

    def register(self, name: str, oracle: Oracle, radicand: int | None = None) -> str:
        """Register a symbol.  The caller asserts Q-linear independence."""
        if not name.isidentifier():
            raise ValueError(f"symbol name {name!r} is not an identifier")
        with self._lock:
            if name in self._oracles:
                if radicand is not None and self._radicands.get(name) == radicand:
                    return name
                raise ValueError(f"symbol {name!r} already registered")
            self._oracles[name] = oracle
            if radicand is not None:
                self._radicands[name] = radicand
        return name

    def register_sqrt(self, k: int) -> str:
        g, m = squarefree_part(k)
        if m == 1 or g != 1:
            raise ValueError("register_sqrt needs a squarefree integer > 1")
        name = f"sqrt{m}"
        if name in self._oracles and self._radicands.get(name) == m:
            return name
        return self.register(name, sqrt_oracle(m), radicand=m)

    def radicand(self, name: str) -> int | None:
        return self._radicands.get(name)

    def enclose(self, name: str, eps: Fraction) -> Interval:
        try:
            oracle = self._oracles[name]
        except KeyError:
            raise DomainError(f"unknown irrational symbol {name!r}") from None
        lo, hi = oracle(Fraction(eps))
        if not hi - lo < eps:
            raise EnclosureFault(f"oracle for {name} returned width {hi - lo} >= {eps}")
        return lo, hi


DEFAULT_BASIS = IrrationalBasis()
for _k in (2, 3, 5):
    DEFAULT_BASIS.register_sqrt(_k)


class ExactScalar:
    """Immutable value ``rational + sum(coeff[s] * s)`` over a basis."""

    __slots__ = ("rational", "_coeffs", "basis")

    def __init__(self, rational=0, coeffs: Mapping[str, object] | None = None,
                 basis: IrrationalBasis | None = None):
        basis = basis or DEFAULT_BASIS
        items = []
        for name, c in (coeffs or {}).items():
            c = Fraction(c)
            if c:
                if name not in basis:
                    raise DomainError(f"unknown irrational symbol {name!r}")
                items.append((name, c))
        items.sort()
        object.__setattr__(self, "rational", Fraction(rational))
        object.__setattr__(self, "_coeffs", tuple(items))
        object.__setattr__(self, "basis", basis)

    def __setattr__(self, name, value):
        raise AttributeError("ExactScalar is immutable")

    @classmethod
    def symbol(cls, name: str, basis: IrrationalBasis | None = None) -> "ExactScalar":
        return cls(0, {name: 1}, basis)

    # -- structure -----------------------------------------------------------

    @property
    def coeffs(self) -> dict[str, Fraction]:
        return dict(self._coeffs)

    @property
    def is_rational(self) -> bool:
        return not self._coeffs

    def as_fraction(self) -> Fraction:
        if self._coeffs:
            raise DomainError(f"{self} is not rational")
        return self.rational

    def is_zero(self) -> bool:
        return not self._coeffs and self.rational == 0

    # -- arithmetic ----------------------------------------------------------

    def _combine(self, other: "ExactScalar", sign: int) -> "ExactScalar":
        if other.basis is not self.basis:
            raise DomainError("scalars over different bases cannot be mixed")
        acc = dict(self._coeffs)
        for name, c in other._coeffs:
            acc[name] = acc.get(name, 0) + sign * c
        return ExactScalar(self.rational + sign * other.rational, acc, self.basis)

    def __add__(self, other):
        other = _coerce(other, self.basis)
        if other is None:
            return NotImplemented
        if not other._coeffs:
            return ExactScalar(self.rational + other.rational, self._coeffs_map(), self.basis)
        return self._combine(other, 1)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other, self.basis)
        if other is None:
            return NotImplemented
        return self._combine(other, -1)

    def __rsub__(self, other):
        other = _coerce(other, self.basis)
        if other is None:
            return NotImplemented
        return other._combine(self, -1)

    def __neg__(self):
        return ExactScalar(-self.rational, {n: -c for n, c in self._coeffs}, self.basis)

    def __pos__(self):
        return self

    def __abs__(self):
        return -self if self.sign() < 0 else self

    def _coeffs_map(self) -> dict[str, Fraction]:
        return dict(self._coeffs)

    def _scale(self, q: Fraction) -> "ExactScalar":
        return ExactScalar(self.rational * q, {n: c * q for n, c in self._coeffs}, self.basis)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self._scale(Fraction(other))
        other = _coerce(other, self.basis)
        if other is None:
            return NotImplemented
        if not other._coeffs:
            return self._scale(other.rational)
        if not self._coeffs:
            return other._scale(self.rational)
        return self._radical_product(other)

    __rmul__ = __mul__

    def _radical_product(self, other: "ExactScalar") -> "ExactScalar":
        basis = self.basis
        for name, _ in self._coeffs + other._coeffs:
            if basis.radicand(name) is None:
                raise DomainError(f"product involving non-radical symbol {name!r} is not representable")
        rational = self.rational * other.rational
        acc: dict[str, Fraction] = {}
        for name, c in self._coeffs:
            acc[name] = acc.get(name, 0) + c * other.rational
        for name, c in other._coeffs:
            acc[name] = acc.get(name, 0) + c * self.rational
        for n1, c1 in self._coeffs:
            for n2, c2 in other._coeffs:
                g, m = squarefree_part(basis.radicand(n1) * basis.radicand(n2))
                if m == 1:
                    rational += c1 * c2 * g
                else:
                    name = basis.register_sqrt(m)
                    acc[name] = acc.get(name, 0) + c1 * c2 * g
        return ExactScalar(rational, acc, basis)

    def __truediv__(self, other):
        if isinstance(other, ExactScalar):
            if other._coeffs:
                raise DomainError("division by an irrational scalar is not supported")
            other = other.rational
        if not isinstance(other, (int, Fraction)):
            return NotImplemented
        if other == 0:
            raise ZeroDivisionError("division by zero")
        return self._scale(1 / Fraction(other))

    def __rtruediv__(self, other):
        if not isinstance(other, (int, Fraction)):
            return NotImplemented
        if self._coeffs:
            raise DomainError("division by an irrational scalar is not supported")
        return ExactScalar(Fraction(other) / self.rational, None, self.basis)

    # -- decisions -----------------------------------------------------------

    def enclosure(self, eps: Fraction) -> Interval:
        """Rational interval of width < ``eps`` containing the value."""
        eps = Fraction(eps)
        if eps <= 0:
            raise DomainError("enclosure budget must be positive")
        if not self._coeffs:
            return self.rational, self.rational
        share = eps / len(self._coeffs)
        lo = hi = self.rational
        for name, c in self._coeffs:
            a, b = self.basis.enclose(name, share / abs(c))
            if c > 0:
                lo += c * a
                hi += c * b
            else:
                lo += c * b
                hi += c * a
        return lo, hi

    def _refine(self):
        bits = _INITIAL_PRECISION_BITS
        while bits <= MAX_PRECISION_BITS:
            yield self.enclosure(Fraction(1, 1 << bits))
            bits *= 2
        raise EnclosureFault(f"enclosures failed to resolve {self!r}")

    def sign(self) -> int:
        if not self._coeffs:
            r = self.rational
            return (r > 0) - (r < 0)
        for lo, hi in self._refine():
            if lo > 0:
                return 1
            if hi < 0:
                return -1
        raise AssertionError("unreachable")

    def __floor__(self) -> int:
        if not self._coeffs:
            return math.floor(self.rational)
        for lo, hi in self._refine():
            n = math.floor(lo)
            if hi < n + 1:
                return n
        raise AssertionError("unreachable")

    def __ceil__(self) -> int:
        return -math.floor(-self)

    def frac(self) -> "ExactScalar":
        return self - math.floor(self)

    def __float__(self) -> float:
        lo, hi = self.enclosure(Fraction(1, 1 << 60))
        return float((lo + hi) / 2)

    # -- comparison ----------------------------------------------------------

    def _cmp(self, other) -> int | None:
        other = _coerce(other, self.basis)
        if other is None:
            return None
        return (self - other).sign()

    def __eq__(self, other):
        other = _coerce(other, self.basis)
        if other is None:
            return NotImplemented
        return self.rational == other.rational and self._coeffs == other._coeffs

    def __hash__(self):
        if not self._coeffs:
            return hash(self.rational)
        return hash((self.rational, self._coeffs))

    def __lt__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is None else c < 0

    def __le__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is None else c <= 0

    def __gt__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is None else c > 0

    def __ge__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is None else c >= 0

    # -- rendering -----------------------------------------------------------

    def __repr__(self):
        return f"ExactScalar({self})"

    def __str__(self):
        parts = []
        if self.rational or not self._coeffs:
            parts.append(str(self.rational))
        for name, c in self._coeffs:
            if c == 1:
                term = name
            elif c == -1:
                term = f"-{name}"
            elif c.denominator == 1:
                term = f"{c.numerator}*{name}"
            else:
                term = f"{c.numerator}*{name}/{c.denominator}"
            parts.append(term)
        return " + ".join(parts).replace("+ -", "- ")

    def to_json(self) -> dict:
        return {"rat": fraction_str(self.rational),
                "irr": {name: fraction_str(c) for name, c in self._coeffs}}


def _coerce(value, basis: IrrationalBasis) -> ExactScalar | None:
    if isinstance(value, ExactScalar):
        return value
    if isinstance(value, (int, Fraction)):
        return ExactScalar(value, None, basis)
    return None


def scalar(value: ScalarLike | Mapping, basis: IrrationalBasis | None = None) -> ExactScalar:
    """Coerce ints, Fractions, expression strings and JSON dicts to a scalar."""
    basis = basis or DEFAULT_BASIS
    if isinstance(value, ExactScalar):
        return value
    if isinstance(value, bool):
        raise DomainError("booleans are not scalars", code="malformed")
    if isinstance(value, (int, Fraction)):
        return ExactScalar(value, None, basis)
    if isinstance(value, Decimal):
        if not value.is_finite():
            raise DomainError(f"non-finite number {value}", code="malformed")
        return ExactScalar(Fraction(value), None, basis)
    if isinstance(value, str):
        return parse_scalar(value, basis)
    if isinstance(value, Mapping):
        return from_json(value, basis)
    raise DomainError(f"cannot interpret {value!r} as an exact scalar", code="malformed")


def vector(values: Iterable, basis: IrrationalBasis | None = None) -> tuple[ExactScalar, ...]:
    return tuple(scalar(v, basis) for v in values)


def from_json(obj: Mapping, basis: IrrationalBasis | None = None) -> ExactScalar:
    basis = basis or DEFAULT_BASIS
    if set(obj) - {"rat", "irr"}:
        raise DomainError(f"unexpected scalar fields {sorted(set(obj) - {'rat', 'irr'})}", code="malformed")
    try:
        rat = _parse_rational(obj.get("rat", "0"))
        irr = {}
        for name, c in (obj.get("irr") or {}).items():
            if name not in basis:
                sym = _name_scalar(name, basis)
                if sym.coeffs != {name: 1}:
                    raise DomainError(f"symbol {name!r} is not squarefree", code="malformed")
            irr[name] = _parse_rational(c)
    except (ValueError, ZeroDivisionError, TypeError) as exc:
        raise DomainError(f"malformed scalar {obj!r}: {exc}", code="malformed") from None
    return ExactScalar(rat, irr, basis)


def _parse_rational(text) -> Fraction:
    if isinstance(text, bool):
        raise ValueError("boolean")
    if isinstance(text, int):
        return Fraction(text)
    if not isinstance(text, str):
        raise ValueError(f"expected a 'p/q' string, got {text!r}")
    return Fraction(text.strip())


def _sqrt_scalar(k: int, basis: IrrationalBasis) -> ExactScalar:
    if k < 0:
        raise DomainError("sqrt() takes a nonnegative integer", code="malformed")
    g, m = squarefree_part(k) if k else (0, 1)
    if m == 1:
        return ExactScalar(g, None, basis)
    return ExactScalar(0, {basis.register_sqrt(m): g}, basis)


def _name_scalar(name: str, basis: IrrationalBasis) -> ExactScalar:
    if name in basis:
        return ExactScalar.symbol(name, basis)
    if name.startswith("sqrt") and name[4:].isdigit():
        return _sqrt_scalar(int(name[4:]), basis)
    raise DomainError(f"unknown irrational symbol {name!r}", code="malformed")


def parse_scalar(text: str, basis: IrrationalBasis | None = None) -> ExactScalar:
    """Parse expressions like ``"1/2 - 3*sqrt5/4"`` or ``"sqrt(2)/2"``.

    Only ``+ - * /``, integer and decimal literals, basis symbols and
    ``sqrt(n)`` for integer ``n`` are accepted.  Decimals are read exactly.
    """
    basis = basis or DEFAULT_BASIS
    try:
        tree = ast.parse(text.strip(), mode="eval")
    except SyntaxError:
        raise DomainError(f"malformed scalar expression {text!r}", code="malformed") from None

    def ev(node) -> ExactScalar:
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant) and not isinstance(node.value, bool):
            if isinstance(node.value, int):
                return ExactScalar(node.value, None, basis)
            if isinstance(node.value, float):
                return ExactScalar(Fraction(ast.get_source_segment(text.strip(), node)), None, basis)
        if isinstance(node, ast.Name):
            return _name_scalar(node.id, basis)
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            v = ev(node.operand)
            return -v if isinstance(node.op, ast.USub) else v
        if isinstance(node, ast.BinOp) and isinstance(node.op, (ast.Add, ast.Sub, ast.Mult, ast.Div)):
            a, b = ev(node.left), ev(node.right)
            if isinstance(node.op, ast.Add):
                return a + b
            if isinstance(node.op, ast.Sub):
                return a - b
            if isinstance(node.op, ast.Mult):
                return a * b
            return a / b
        if (isinstance(node, ast.Call) and isinstance(node.func, ast.Name) and node.func.id == "sqrt"
                and len(node.args) == 1 and not node.keywords):
            arg = ev(node.args[0])
            if not arg.is_rational or arg.rational.denominator != 1:
                raise DomainError("sqrt() takes a nonnegative integer", code="malformed")
            return _sqrt_scalar(int(arg.rational), basis)
        raise DomainError(f"unsupported syntax in scalar expression {text!r}", code="malformed")

    try:
        return ev(tree)
    except ZeroDivisionError:
        raise DomainError(f"division by zero in {text!r}", code="malformed") from None


def linear_combination(coeffs: Iterable, values: Iterable[ExactScalar],
                       constant=0) -> ExactScalar:
    """``constant + sum(c * v)`` for rational ``c`` without intermediate objects."""
    rational = Fraction(constant)
    acc: dict[str, Fraction] = {}
    basis = None
    for c, v in zip(coeffs, values):
        if not c:
            continue
        if isinstance(v, ExactScalar):
            basis = basis or v.basis
            rational += c * v.rational
            for name, k in v._coeffs:
                acc[name] = acc.get(name, 0) + c * k
        else:
            rational += c * v
    return ExactScalar(rational, acc, basis)


def sign_of(s: ScalarLike) -> int:
    return scalar(s).sign()


def floor_of(s: ScalarLike) -> int:
    return math.floor(scalar(s))


def approximate(s: ScalarLike, eps) -> Interval:
    return scalar(s).enclosure(Fraction(eps))


def exact_min(values: Iterable[ExactScalar]) -> ExactScalar:
    it = iter(values)
    best = next(it)
    for v in it:
        if v < best:
            best = v
    return best


def exact_max(values: Iterable[ExactScalar]) -> ExactScalar:
    it = iter(values)
    best = next(it)
    for v in it:
        if v > best:
            best = v
    return best


def inverse_norm(linear: Iterable) -> ExactScalar:
    """``1 / ||linear||`` (Euclidean) as an exact scalar over square roots."""
    n2 = sum((Fraction(a) ** 2 for a in linear), Fraction(0))
    if n2 == 0:
        raise ZeroDivisionError("zero vector has no inverse norm")
    p, q = n2.numerator, n2.denominator
    g, m = squarefree_part(p * q)
    # ||a|| = g * sqrt(m) / q
    if m == 1:
        return ExactScalar(Fraction(q, g))
    return ExactScalar(0, {DEFAULT_BASIS.register_sqrt(m): Fraction(q, g * m)})
