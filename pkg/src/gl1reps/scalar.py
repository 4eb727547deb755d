"""Exact arithmetic in the field generated by the rationals and square roots.

A :class:`RadicalScalar` is a finite formal sum ``sum(q_d * sqrt(d))`` with
rational ``q_d`` and squarefree positive integers ``d``.  Because the square
roots of distinct squarefree integers are linearly independent over the
rationals, the canonical form (squarefree keys, no zero coefficients) makes
equality of scalars a plain dictionary comparison.
"""
from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from numbers import Rational
from typing import Iterable, Mapping

from .errors import FactorizationBoundExceeded, NegativeRadicand

DEFAULT_FACTOR_BOUND = 10**6

_factor_bound = DEFAULT_FACTOR_BOUND


def set_factor_bound(bound: int) -> None:
    """Set the largest trial divisor used by squarefree decomposition."""
    global _factor_bound
    if bound < 2:
        raise ValueError("factorization bound must be at least 2")
    _factor_bound = int(bound)
    _square_split.cache_clear()


def get_factor_bound() -> int:
    return _factor_bound


@lru_cache(maxsize=65536)
def _square_split(n: int) -> tuple[int, int]:
    """Return ``(s, d)`` with ``n == s*s*d`` and ``d`` squarefree."""
    if n == 0:
        return 0, 1
    s, d = 1, 1
    rest = n
    p = 2
    while p * p <= rest:
        if p > _factor_bound:
            raise FactorizationBoundExceeded(
                f"cannot split {n}: cofactor {rest} needs divisors above {_factor_bound}"
            )
        if rest % p == 0:
            e = 0
            while rest % p == 0:
                rest //= p
                e += 1
            s *= p ** (e // 2)
            if e % 2:
                d *= p
        p += 1 if p == 2 else 2
    d *= rest
    return s, d


def _as_fraction(q) -> Fraction:
    if isinstance(q, Fraction):
        return q
    if isinstance(q, (int, Rational)):
        return Fraction(q)
    if isinstance(q, str):
        return Fraction(q)
    raise TypeError(f"expected a rational, got {type(q).__name__}")


class RadicalScalar:
    """Immutable element of Q(sqrt(2), sqrt(3), sqrt(5), ...)."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[int, object] | None = None):
        clean: dict[int, Fraction] = {}
        if terms:
            for d, q in terms.items():
                q = _as_fraction(q)
                if q == 0:
                    continue
                d = int(d)
                if d < 1:
                    raise ValueError(f"radicand key must be positive, got {d}")
                s, core = _square_split(d)
                if s != 1:
                    q = q * s
                if core in clean:
                    q = clean[core] + q
                    if q == 0:
                        del clean[core]
                        continue
                clean[core] = q
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict[int, Fraction]) -> "RadicalScalar":
        # terms already canonical; skip normalization
        obj = cls.__new__(cls)
        obj._terms = terms
        obj._hash = None
        return obj

    @classmethod
    def rational(cls, q) -> "RadicalScalar":
        q = _as_fraction(q)
        return cls._raw({1: q} if q else {})

    @property
    def terms(self) -> dict[int, Fraction]:
        return dict(self._terms)

    def items(self):
        return sorted(self._terms.items())

    def is_rational(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and 1 in self._terms)

    def rational_part(self) -> Fraction:
        return self._terms.get(1, Fraction(0))

    def as_rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self.rational_part()

    # arithmetic -----------------------------------------------------------

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __neg__(self) -> "RadicalScalar":
        return RadicalScalar._raw({d: -q for d, q in self._terms.items()})

    def __add__(self, other) -> "RadicalScalar":
        if not isinstance(other, RadicalScalar):
            try:
                other = RadicalScalar.rational(other)
            except TypeError:
                return NotImplemented
        if not other._terms:
            return self
        if not self._terms:
            return other
        out = dict(self._terms)
        for d, q in other._terms.items():
            v = out.get(d)
            if v is None:
                out[d] = q
            else:
                v = v + q
                if v:
                    out[d] = v
                else:
                    del out[d]
        return RadicalScalar._raw(out)

    __radd__ = __add__

    def __sub__(self, other) -> "RadicalScalar":
        if not isinstance(other, RadicalScalar):
            try:
                other = RadicalScalar.rational(other)
            except TypeError:
                return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "RadicalScalar":
        return (-self) + other

    def __mul__(self, other) -> "RadicalScalar":
        if not isinstance(other, RadicalScalar):
            try:
                q = _as_fraction(other)
            except TypeError:
                return NotImplemented
            if q == 0:
                return ZERO
            return RadicalScalar._raw({d: v * q for d, v in self._terms.items()})
        if not self._terms or not other._terms:
            return ZERO
        out: dict[int, Fraction] = {}
        for d1, q1 in self._terms.items():
            for d2, q2 in other._terms.items():
                if d1 == 1:
                    d, q = d2, q1 * q2
                elif d2 == 1:
                    d, q = d1, q1 * q2
                else:
                    # both squarefree: sqrt(d1*d2) = g*sqrt(d1*d2/g^2)
                    g = math.gcd(d1, d2)
                    d, q = (d1 // g) * (d2 // g), q1 * q2 * g
                v = out.get(d)
                if v is None:
                    out[d] = q
                else:
                    v = v + q
                    if v:
                        out[d] = v
                    else:
                        del out[d]
        return RadicalScalar._raw(out)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "RadicalScalar":
        if isinstance(other, RadicalScalar):
            if other.is_rational():
                other = other.rational_part()
            else:
                return self * other.inverse()
        q = _as_fraction(other)
        if q == 0:
            raise ZeroDivisionError("division of a RadicalScalar by zero")
        return RadicalScalar._raw({d: v / q for d, v in self._terms.items()})

    def inverse(self) -> "RadicalScalar":
        """Multiplicative inverse, by repeatedly clearing one radical with its conjugate."""
        if not self._terms:
            raise ZeroDivisionError("zero has no inverse")
        num = ONE
        den = self
        while not den.is_rational():
            p = max(_primes_of(den))
            conj = den._flip(p)
            num = num * conj
            den = den * conj
        return num / den.rational_part()

    def _flip(self, p: int) -> "RadicalScalar":
        return RadicalScalar._raw(
            {d: (-q if d % p == 0 else q) for d, q in self._terms.items()}
        )

    # comparison and hashing ----------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, RadicalScalar):
            return self._terms == other._terms
        try:
            q = _as_fraction(other)
        except TypeError:
            return NotImplemented
        return self._terms == ({1: q} if q else {})

    def __hash__(self) -> int:
        if self._hash is None:
            if self.is_rational():
                self._hash = hash(self.rational_part())
            else:
                self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    # rendering -------------------------------------------------------------

    def __float__(self) -> float:
        return float(sum(float(q) * math.sqrt(d) for d, q in self._terms.items()))

    def render(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for d, q in self.items():
            parts.append(str(q) if d == 1 else f"{q}*sqrt({d})")
        return "+".join(parts)

    __str__ = render

    def __repr__(self) -> str:
        return f"RadicalScalar({self.render()!r})"

    def to_json(self) -> list[list[int]]:
        return [[q.numerator, q.denominator, d] for d, q in self.items()]

    @classmethod
    def from_json(cls, triples: Iterable[Iterable[int]]) -> "RadicalScalar":
        acc = ZERO
        for num, den, d in triples:
            acc = acc + rad_normalize(Fraction(num, den), d)
        return acc

    @classmethod
    def parse(cls, text: str) -> "RadicalScalar":
        """Inverse of :meth:`render`."""
        text = text.strip()
        if text == "0":
            return ZERO
        acc = ZERO
        for part in text.split("+"):
            if "*sqrt(" in part:
                q, rest = part.split("*sqrt(")
                acc = acc + rad_normalize(Fraction(q), int(rest.rstrip(")")))
            else:
                acc = acc + Fraction(part)
        return acc


def _primes_of(x: RadicalScalar) -> set[int]:
    primes: set[int] = set()
    for d in x._terms:
        n, p = d, 2
        while p * p <= n:
            while n % p == 0:
                primes.add(p)
                n //= p
            p += 1
        if n > 1:
            primes.add(n)
    return primes


ZERO = RadicalScalar._raw({})
ONE = RadicalScalar._raw({1: Fraction(1)})


def rad_normalize(q, n: int) -> RadicalScalar:
    """``q * sqrt(n)`` in canonical form."""
    q = _as_fraction(q)
    n = int(n)
    if n < 0:
        raise NegativeRadicand(f"sqrt of negative integer {n}")
    if n == 0 or q == 0:
        return ZERO
    s, d = _square_split(n)
    return RadicalScalar._raw({d: q * s})


def rad_add(a: RadicalScalar, b: RadicalScalar) -> RadicalScalar:
    return a + b


def rad_mul(a: RadicalScalar, b: RadicalScalar) -> RadicalScalar:
    return a * b


def rad_sqrt_of_rational(q) -> RadicalScalar:
    """Positive square root of a nonnegative rational ``p/r`` as ``sqrt(p*r)/r``."""
    q = _as_fraction(q)
    if q < 0:
        raise NegativeRadicand(f"sqrt of negative rational {q}")
    return rad_normalize(Fraction(1, q.denominator), q.numerator * q.denominator)
