"""Generator actions on GZ tables of gl0(1|N) and gl0(1|inf) modules.

Only the Chevalley generators ``e(i,i)``, ``e(i,i+1)`` and ``e(i+1,i)`` have
closed-form matrix elements; every other ``e(i,j)`` is obtained from the
fixed bracketing ``e(i,j) = [[e(i,k), e(k,j)]]`` with ``k = j - 1`` above the
diagonal and ``k = j + 1`` below it.

Terms whose target table lies outside the module are dropped before the
coefficient is evaluated, so undefined coefficients of such terms never
matter.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .coefficients import Coefficient, register_cache
from .errors import IndexOutOfRange
from .scalar import RadicalScalar
from .tables import (
    DEFAULT_GUARD,
    AnyGzTable,
    GzSignature,
    GzTable,
    InfiniteGzTable,
    gz_enumerate,
    gz_l_row,
    is_zplus,
)
from .vector import Accumulator, GeneratorId, SparseMatrix, SparseVector, e, super_sign

_ONE = RadicalScalar.rational(1)


def _pair_ok(lo: Sequence[Fraction], hi: Sequence[Fraction]) -> bool:
    """Basis conditions between consecutive rows (``len(hi) == len(lo) + 1``)."""
    if hi[0] - lo[0] not in (0, 1):
        return False
    for i in range(1, len(lo)):
        if not is_zplus(hi[i] - lo[i]) or not is_zplus(lo[i] - hi[i + 1]):
            return False
    return True


def _shift_ok(t: AnyGzTable, j: int) -> bool:
    """Whether ``t`` (just modified in row ``j``) still satisfies the conditions around row ``j``."""
    row = t.row
    if j > 1 and not _pair_ok(row(j - 1), row(j)):
        return False
    return _pair_ok(row(j), row(j + 1))


def _top(t: AnyGzTable) -> int | None:
    return t.height if isinstance(t, GzTable) else None


def _check_level(i: int, t: AnyGzTable) -> None:
    top = _top(t)
    if i < 1 or (top is not None and i >= top):
        raise IndexOutOfRange(f"level {i} outside [1; {'inf' if top is None else top - 1}]")


def gz_act_cartan(i: int, t: AnyGzTable) -> RadicalScalar:
    """Eigenvalue of ``e(i,i)``: row-sum of row ``i`` minus row-sum of row ``i - 1``."""
    top = _top(t)
    if i < 1 or (top is not None and i > top):
        raise IndexOutOfRange(f"Cartan index {i} out of range")
    below = sum(t.row(i - 1)) if i > 1 else 0
    return RadicalScalar.rational(sum(t.row(i)) - below)


@register_cache
@lru_cache(maxsize=200_000)
def gz_act_raise(i: int, t: AnyGzTable) -> SparseVector:
    """``e(i, i+1)`` applied to a single table."""
    _check_level(i, t)
    out = Accumulator()
    row = t.row
    cur = row(i)
    up = gz_l_row(row(i + 1))
    theta_i = row(i + 1)[0] - cur[0]
    if i == 1:
        tgt = t.shifted(1, 1, 1)
        if theta_i and _shift_ok(tgt, 1):
            out.add(tgt, Coefficient("gz.e(1,2)", theta_i).value())
        return out.vector()

    theta_prev = cur[0] - row(i - 1)[0]
    pre = theta_i * (1 - theta_prev)
    if pre:
        tgt = t.shifted(1, i, 1)
        if _shift_ok(tgt, i):
            out.add(tgt, Coefficient("gz.e(i,i+1)", pre).value())

    lc = gz_l_row(cur)
    dn = gz_l_row(row(i - 1))
    for j in range(2, i + 1):
        tgt = t.shifted(j, i, 1)
        if not _shift_ok(tgt, i):
            continue
        lj = lc[j - 1]
        c = Coefficient("gz.e(i,i+1)").root(-1)
        for k in range(2, i):
            c.num("sqrt.num.lower", dn[k - 1] - lj + 1)
        for k in range(2, i + 2):
            c.num("sqrt.num.upper", up[k - 1] - lj)
        for k in range(2, i + 1):
            if k != j:
                c.den("sqrt.den.a", lc[k - 1] - lj)
                c.den("sqrt.den.b", lc[k - 1] - lj + 1)
        c.rational()
        c.num("rat.num.a", lc[0] - lj)
        c.num("rat.num.b", lc[0] - lj + 1)
        c.den("rat.den.upper", up[0] - lj)
        c.den("rat.den.lower", dn[0] - lj + 1)
        out.add(tgt, c.value())
    return out.vector()


@register_cache
@lru_cache(maxsize=200_000)
def gz_act_lower(i: int, t: AnyGzTable) -> SparseVector:
    """``e(i+1, i)`` applied to a single table."""
    _check_level(i, t)
    out = Accumulator()
    row = t.row
    cur = row(i)
    up = gz_l_row(row(i + 1))
    lc = gz_l_row(cur)
    theta_i = row(i + 1)[0] - cur[0]
    if i == 1:
        tgt = t.shifted(1, 1, -1)
        if theta_i != 1 and _shift_ok(tgt, 1):
            c = Coefficient("gz.e(2,1)", 1 - theta_i).num("diff", up[0] - up[1])
            out.add(tgt, c.value())
        return out.vector()

    dn = gz_l_row(row(i - 1))
    theta_prev = cur[0] - row(i - 1)[0]
    pre = theta_prev * (1 - theta_i)
    if pre:
        tgt = t.shifted(1, i, -1)
        if _shift_ok(tgt, i):
            l1 = up[0]
            c = Coefficient("gz.e(i+1,i)", pre)
            for k in range(2, i):
                c.num("theta.num.lower", l1 - dn[k - 1] - 1)
            for k in range(2, i + 2):
                c.num("theta.num.upper", l1 - up[k - 1])
            for k in range(2, i + 1):
                c.den("theta.den.a", l1 - lc[k - 1] - 1)
                c.den("theta.den.b", l1 - lc[k - 1])
            out.add(tgt, c.value())

    for j in range(2, i + 1):
        tgt = t.shifted(j, i, -1)
        if not _shift_ok(tgt, i):
            continue
        lj = lc[j - 1]
        c = Coefficient("gz.e(i+1,i)").root(-1)
        for k in range(2, i):
            c.num("sqrt.num.lower", dn[k - 1] - lj)
        for k in range(2, i + 2):
            c.num("sqrt.num.upper", up[k - 1] - lj - 1)
        for k in range(2, i + 1):
            if k != j:
                c.den("sqrt.den.a", lc[k - 1] - lj - 1)
                c.den("sqrt.den.b", lc[k - 1] - lj)
        out.add(tgt, c.value())
    return out.vector()


def split_point(i: int, j: int) -> int:
    """Intermediate index of the canonical bracketing ``e(i,j) = [[e(i,k), e(k,j)]]``."""
    return j - 1 if i < j else j + 1


def _as_vector(v) -> SparseVector:
    return v if isinstance(v, SparseVector) else SparseVector.basis(v)


def gz_act(gen: GeneratorId, v) -> SparseVector:
    """Action of any ``e(i,j)`` on a table or a SparseVector."""
    if gen.convention != "gl0":
        raise ValueError(f"{gen} is not a gl0 generator")
    v = _as_vector(v)
    i, j = gen.i, gen.j
    out = Accumulator()
    if i == j:
        for t, c in v.items():
            out.add(t, gz_act_cartan(i, t) * c)
        return out.vector()
    if j == i + 1 or i == j + 1:
        act = gz_act_raise if j == i + 1 else gz_act_lower
        lvl = min(i, j)
        for t, c in v.items():
            out.add_vector(act(lvl, t), c)
        return out.vector()
    k = split_point(i, j)
    a, b = e(i, k), e(k, j)
    sign = super_sign(a, b)
    first = gz_act(a, gz_act(b, v))
    second = gz_act(b, gz_act(a, v))
    return first - second if sign > 0 else first + second


# ---------------------------------------------------------------------------
# finite modules as matrices
# ---------------------------------------------------------------------------


class GzModule:
    """A finite essentially typical gl0(1|N) module with its ordered GZ basis.

    Generator matrices are cached; non-Chevalley ones are built from the
    Chevalley matrices with the same canonical bracketing as :func:`gz_act`.
    """

    def __init__(self, sig: GzSignature, guard: int = DEFAULT_GUARD):
        if not isinstance(sig, GzSignature):
            sig = GzSignature(sig)
        self.signature = sig
        self.basis: list[GzTable] = gz_enumerate(sig, guard)
        self.index = {t: n for n, t in enumerate(self.basis)}
        self._cache: dict[GeneratorId, SparseMatrix] = {}

    @property
    def rank(self) -> int:
        return self.signature.rank

    @property
    def dim(self) -> int:
        return len(self.basis)

    def generators(self) -> list[GeneratorId]:
        n = self.rank + 1
        return [e(i, j) for i in range(1, n + 1) for j in range(1, n + 1)]

    def matrix(self, gen: GeneratorId) -> SparseMatrix:
        m = self._cache.get(gen)
        if m is not None:
            return m
        i, j = gen.i, gen.j
        if max(i, j) > self.rank + 1:
            raise IndexOutOfRange(f"{gen} outside gl0(1|{self.rank})")
        if i == j or abs(i - j) == 1:
            m = SparseMatrix.from_action(self.basis, self.index, lambda t: gz_act(gen, t))
        else:
            k = split_point(i, j)
            a, b = e(i, k), e(k, j)
            ma, mb = self.matrix(a), self.matrix(b)
            ab, ba = ma @ mb, mb @ ma
            m = ab - ba if super_sign(a, b) > 0 else ab + ba
        self._cache[gen] = m
        return m


def gz_matrix(gen: GeneratorId, sig: GzSignature, guard: int = DEFAULT_GUARD) -> SparseMatrix:
    return GzModule(sig, guard).matrix(gen)
