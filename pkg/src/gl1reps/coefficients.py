"""Matrix-element coefficients assembled from lists of rational factors.

A coefficient is a product of *brackets*.  A rational bracket contributes
``prod(num) / prod(den)``; a root bracket contributes ``sign * prod(num) /
prod(den)`` under a square root.  All root brackets of one coefficient share
a single principal square root of their product, so two factors like
``sqrt(-a) * sqrt(b)`` with ``a, b < 0`` still give a real value.  Keeping the factors separate until
the end lets vanishing factors cancel pairwise between numerator and
denominator before any division happens.

Every factor is registered under a ``(formula, slot)`` name.  Tests use
:func:`mutated_factor` to perturb one slot and check that the relation
checker notices.
"""
from __future__ import annotations

import contextvars
from contextlib import contextmanager
from fractions import Fraction
from typing import Iterator

from .errors import InvalidCoefficient, NegativeRadicand
from .scalar import ONE, ZERO, RadicalScalar, rad_sqrt_of_rational

_mutation: contextvars.ContextVar[tuple[str, str, Fraction] | None] = contextvars.ContextVar(
    "factor_mutation", default=None
)


_caches: list = []
_slots: dict[str, set[str]] = {}


def seen_slots(formula: str) -> list[str]:
    """Slots of ``formula`` that have been evaluated at least once in this process."""
    return sorted(_slots.get(formula, ()))


def register_cache(fn):
    """Decorator hook: ``fn.cache_clear()`` runs whenever a mutation starts or ends."""
    _caches.append(fn)
    return fn


def _clear_caches() -> None:
    for fn in _caches:
        fn.cache_clear()


@contextmanager
def mutated_factor(formula: str, slot: str, delta=1) -> Iterator[None]:
    """Add ``delta`` to every factor registered as ``(formula, slot)`` inside the block."""
    token = _mutation.set((formula, slot, Fraction(delta)))
    _clear_caches()
    try:
        yield
    finally:
        _mutation.reset(token)
        _clear_caches()


class _Bracket:
    __slots__ = ("root", "sign", "num", "den")

    def __init__(self, root: bool, sign: int):
        self.root = root
        self.sign = sign
        self.num: list[Fraction] = []
        self.den: list[Fraction] = []


class Coefficient:
    """Builder for one matrix element of one formula."""

    __slots__ = ("formula", "_brackets", "_current", "_mut")

    def __init__(self, formula: str, prefactor=1):
        self.formula = formula
        self._brackets: list[_Bracket] = []
        m = _mutation.get()
        self._mut = m[1:] if m is not None and m[0] == formula else None
        self._current = self._open(False, 1)
        self._current.num.append(self._val("pre", prefactor))

    def _open(self, root: bool, sign: int) -> _Bracket:
        b = _Bracket(root, sign)
        self._brackets.append(b)
        return b

    def rational(self) -> "Coefficient":
        self._current = self._open(False, 1)
        return self

    def root(self, sign: int = 1) -> "Coefficient":
        """Open a square-root bracket; ``sign=-1`` for the ``(-(...))^(1/2)`` form."""
        self._current = self._open(True, sign)
        return self

    def _val(self, slot: str, x) -> Fraction:
        x = Fraction(x)
        _slots.setdefault(self.formula, set()).add(slot)
        if self._mut is not None and self._mut[0] == slot:
            x += self._mut[1]
        return x

    def num(self, slot: str, x) -> "Coefficient":
        self._current.num.append(self._val(slot, x))
        return self

    def den(self, slot: str, x) -> "Coefficient":
        self._current.den.append(self._val(slot, x))
        return self

    def value(self) -> RadicalScalar:
        zeros_num = sum(1 for b in self._brackets for x in b.num if x == 0)
        zeros_den = sum(1 for b in self._brackets for x in b.den if x == 0)
        if zeros_num > zeros_den:
            return ZERO
        if zeros_den > zeros_num:
            raise InvalidCoefficient(
                f"formula {self.formula}: {zeros_den} vanishing denominator factor(s) "
                f"against {zeros_num} in the numerator"
            )
        out = ONE
        rational = Fraction(1)
        joint = Fraction(1)
        roots = 0
        for b in self._brackets:
            q = Fraction(b.sign)
            for x in b.num:
                if x:
                    q *= x
            for x in b.den:
                if x:
                    q /= x
            if b.root:
                roots += 1
                joint *= q
            else:
                rational *= q
        if roots:
            try:
                out = rad_sqrt_of_rational(joint)
            except NegativeRadicand:
                raise InvalidCoefficient(
                    f"formula {self.formula}: negative radicand {joint}"
                ) from None
        return out * rational
