"""Generator actions in the C-basis of gl(n|1|n) and gl(inf|1|inf) modules.

Two independent routes are implemented:

* :func:`c_act_finite` uses the matrix elements of the generators that the
  index map ``g`` sends to gl0 Chevalley generators (``E(0,-1)``,
  ``E(-1,0)``, ``E(i-1,-i)``, ``E(-i,i)``, ``E(i,-i)``, ``E(-i,i-1)``);
  :func:`c_act` extends them to every ``E(a,b)`` by bracketing along ``g``.
* :func:`c_act_chevalley_infinite` uses the closed forms for the
  gl(inf|1|inf) Chevalley generators ``E(k,k+1)``, ``E(k+1,k)``, which move
  two adjacent rows at once.

Both routes work on finite and infinite C-tables alike; only the rows next to
the touched ones are read.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .coefficients import Coefficient, register_cache
from .errors import IndexOutOfRange, LengthMismatch
from .isomap import g, g_inv
from .scalar import RadicalScalar
from .tables import (
    AnyCTable,
    CSignature,
    CTable,
    GzSignature,
    GzTable,
    InfiniteCTable,
    c_pair_ok,
    frac,
    gz_l_row,
)
from .vector import Accumulator, E, GeneratorId, SparseVector, super_sign

# ---------------------------------------------------------------------------
# signatures
# ---------------------------------------------------------------------------


def gz_row_to_c(row: Sequence[Fraction]) -> tuple[Fraction, ...]:
    """GZ labels ``[m_1..m_r]`` of a gl0(1|r-1) module as its gl(k|1|k-1+theta) labels, ``r = 2k + theta``."""
    r = len(row)
    k = r // 2
    out = []
    for i in range(-k, r - k):
        if i < 0:
            out.append(row[i + k + 1] + 1)  # m_{i+k+2}
        elif i == 0:
            out.append(row[0] - k)
        else:
            out.append(row[i + k])  # m_{i+k+1}
    return tuple(out)


def c_row_to_gz(row: Sequence[Fraction]) -> tuple[Fraction, ...]:
    r = len(row)
    k = r // 2
    M = {i: row[i + k] for i in range(-k, r - k)}
    out = [M[0] + k]
    for s in range(2, r + 1):
        out.append(M[s - k - 2] - 1 if s <= k + 1 else M[s - k - 1])
    return tuple(out)


def signature_gz_to_c(sig: GzSignature | Sequence, length: int | None = None) -> CSignature:
    labels = sig.labels if isinstance(sig, GzSignature) else tuple(frac(x) for x in sig)
    if length is not None and len(labels) != length:
        raise LengthMismatch(f"expected {length} labels, got {len(labels)}")
    return CSignature(gz_row_to_c(labels))


def signature_c_to_gz(sig: CSignature | Sequence, length: int | None = None) -> GzSignature:
    labels = sig.labels if isinstance(sig, CSignature) else tuple(frac(x) for x in sig)
    if length is not None and len(labels) != length:
        raise LengthMismatch(f"expected {length} labels, got {len(labels)}")
    return GzSignature(c_row_to_gz(labels))


# ---------------------------------------------------------------------------
# highest weight vectors of the gl(k|1|k-1+theta) flag
# ---------------------------------------------------------------------------


def c_hwv_flag_conditions(t: GzTable) -> bool:
    """Whether ``t`` is the gl(k|1|k-1+theta) highest weight table of its top module.

    Uses the theta pattern (odd steps 1, even steps 0) and the coincidences of
    l-values between rows ``2i``, ``2i+1`` and ``2i-1``, ``2i``.
    """
    r = t.height
    k, th = r // 2, r % 2

    def theta(p: int) -> Fraction:
        return t.entry(1, p + 1) - t.entry(1, p)

    if any(theta(2 * i - 1) != 1 for i in range(1, k + 1)):
        return False
    if any(theta(2 * i) != 0 for i in range(1, k + th)):
        return False
    ls = {p: gz_l_row(t.row(p)) for p in range(1, r + 1)}
    for i in range(1, k + th):
        for s in range(2, 2 * i + 1):
            if ls[2 * i + 1][s - 1] != ls[2 * i][s - 1]:
                return False
    for i in range(2, k + 1):
        for s in range(2, 2 * i):
            if ls[2 * i][s] - ls[2 * i - 1][s - 1] - 1 != 0:
                return False
    return True


# ---------------------------------------------------------------------------
# helpers
# ---------------------------------------------------------------------------


def _nz(a: int, b: int, *skip: int) -> list[int]:
    """``i`` in ``[a; b]`` with ``i != 0`` and ``i`` not in ``skip``."""
    return [i for i in range(a, b + 1) if i != 0 and i not in skip]


def _ok(t: AnyCTable, *rows: int) -> bool:
    """Basis conditions on every row pair touching one of ``rows``."""
    top = t.height if isinstance(t, CTable) else None
    pairs = set()
    for r in rows:
        if r > 1:
            pairs.add(r - 1)
        pairs.add(r)
    for p in sorted(pairs):
        if top is not None and p + 1 > top:
            continue
        if not c_pair_ok(t, p):
            return False
    return True


def _require_rows(t: AnyCTable, top_needed: int, gen) -> None:
    if isinstance(t, CTable) and t.height < top_needed:
        raise IndexOutOfRange(f"{gen} needs row {top_needed}, table has {t.height}")


def c_act_cartan(i: int, t: AnyCTable) -> RadicalScalar:
    """Eigenvalue of ``E(i,i)``: row-sum of row ``g(i)`` minus row-sum of row ``g(i) - 1``."""
    r = g(i)
    if isinstance(t, CTable) and r > t.height:
        raise IndexOutOfRange(f"E({i},{i}) outside a table with {t.height} rows")
    below = sum(t.row(r - 1)) if r > 1 else 0
    return RadicalScalar.rational(sum(t.row(r)) - below)


# ---------------------------------------------------------------------------
# finite formulas: generators mapped by g onto gl0 Chevalley generators
# ---------------------------------------------------------------------------


def _base_level(gen: GeneratorId) -> tuple[int, int] | None:
    """``(p, +1)`` if ``g`` sends ``gen`` to ``e(p, p+1)``, ``(p, -1)`` for ``e(p+1, p)``."""
    p, q = g(gen.i), g(gen.j)
    if q == p + 1:
        return p, 1
    if p == q + 1:
        return q, -1
    return None


@register_cache
@lru_cache(maxsize=200_000)
def c_act_finite(gen: GeneratorId, t: AnyCTable) -> SparseVector:
    """Action of ``E(0,-1)``, ``E(-1,0)``, ``E(i-1,-i)``, ``E(-i,i)``, ``E(i,-i)``, ``E(-i,i-1)``."""
    base = _base_level(gen)
    if base is None:
        raise ValueError(f"{gen} has no closed-form finite matrix element")
    p, direction = base
    _require_rows(t, p + 1, gen)
    L, psi = t.L, t.psi
    out = Accumulator()

    if p == 1:
        if direction > 0:
            # E(0,-1)
            pre = 1 + psi(1)
            tgt = t.shifted(0, 1, 1)
            if pre and _ok(tgt, 1):
                out.add(tgt, Coefficient("c.E(0,-1)", pre).value())
        else:
            # E(-1,0)
            pre = -psi(1)
            tgt = t.shifted(0, 1, -1)
            if pre and _ok(tgt, 1):
                out.add(tgt, Coefficient("c.E(-1,0)", pre).num("diff", L(0, 2) - L(-1, 2)).value())
        return out.vector()

    if p % 2 == 1:
        i = (p + 1) // 2
        r = 2 * i - 1
        if direction > 0:
            # E(i-1,-i), raises row 2i-1
            pre = (1 + psi(r)) * (1 - psi(r - 1))
            tgt = t.shifted(0, r, 1)
            if pre and _ok(tgt, r):
                out.add(tgt, Coefficient("c.E(i-1,-i)", pre).value())
            for j in _nz(-i + 1, i - 1):
                tgt = t.shifted(j, r, 1)
                if not _ok(tgt, r):
                    continue
                lj = L(j, r)
                c = Coefficient("c.E(i-1,-i)").root(-1)
                for k in _nz(-i + 1, i - 2):
                    c.num("sqrt.num.lower", L(k, r - 1) - lj + 1)
                for k in _nz(-i, i - 1):
                    c.num("sqrt.num.upper", L(k, r + 1) - lj + 1)
                for k in _nz(-i + 1, i - 1, j):
                    c.den("sqrt.den.a", L(k, r) - lj)
                    c.den("sqrt.den.b", L(k, r) - lj + 1)
                c.rational()
                c.num("rat.num.a", L(0, r) - lj).num("rat.num.b", L(0, r) - lj + 1)
                c.den("rat.den.upper", L(0, r + 1) - lj + 1).den("rat.den.lower", L(0, r - 1) - lj + 1)
                out.add(tgt, c.value())
        else:
            # E(-i,i-1), lowers row 2i-1
            pre = -psi(r - 1) * psi(r)
            tgt = t.shifted(0, r, -1)
            if pre and _ok(tgt, r):
                l0 = L(0, r + 1)
                c = Coefficient("c.E(-i,i-1)", pre)
                for k in _nz(-i + 1, i - 2):
                    c.num("theta.num.lower", l0 - L(k, r - 1))
                for k in _nz(-i, i - 1):
                    c.num("theta.num.upper", l0 - L(k, r + 1))
                for k in _nz(-i + 1, i - 1):
                    c.den("theta.den.a", l0 - L(k, r)).den("theta.den.b", l0 - L(k, r) + 1)
                out.add(tgt, c.value())
            for j in _nz(-i + 1, i - 1):
                tgt = t.shifted(j, r, -1)
                if not _ok(tgt, r):
                    continue
                lj = L(j, r)
                c = Coefficient("c.E(-i,i-1)").root(-1)
                for k in _nz(-i + 1, i - 2):
                    c.num("sqrt.num.lower", L(k, r - 1) - lj)
                for k in _nz(-i, i - 1):
                    c.num("sqrt.num.upper", L(k, r + 1) - lj)
                for k in _nz(-i + 1, i - 1, j):
                    c.den("sqrt.den.a", L(k, r) - lj - 1).den("sqrt.den.b", L(k, r) - lj)
                out.add(tgt, c.value())
        return out.vector()

    i = p // 2
    r = 2 * i
    if direction > 0:
        # E(-i,i), raises row 2i
        pre = -psi(r) * psi(r - 1)
        tgt = t.shifted(0, r, 1)
        if pre and _ok(tgt, r):
            out.add(tgt, Coefficient("c.E(-i,i)", pre).value())
        for j in _nz(-i, i - 1):
            tgt = t.shifted(j, r, 1)
            if not _ok(tgt, r):
                continue
            lj = L(j, r)
            c = Coefficient("c.E(-i,i)").root(-1)
            for k in _nz(-i + 1, i - 1):
                c.num("sqrt.num.lower", L(k, r - 1) - lj)
            for k in _nz(-i, i):
                c.num("sqrt.num.upper", L(k, r + 1) - lj)
            for k in _nz(-i, i - 1, j):
                c.den("sqrt.den.a", L(k, r) - lj).den("sqrt.den.b", L(k, r) - lj + 1)
            c.rational()
            c.num("rat.num.a", L(0, r) - lj).num("rat.num.b", L(0, r) - lj + 1)
            c.den("rat.den.upper", L(0, r + 1) - lj).den("rat.den.lower", L(0, r - 1) - lj)
            out.add(tgt, c.value())
    else:
        # E(i,-i), lowers row 2i
        pre = (1 + psi(r - 1)) * (1 - psi(r))
        tgt = t.shifted(0, r, -1)
        if pre and _ok(tgt, r):
            l0 = L(0, r + 1)
            c = Coefficient("c.E(i,-i)", pre)
            for k in _nz(-i + 1, i - 1):
                c.num("theta.num.lower", l0 - L(k, r - 1))
            for k in _nz(-i, i):
                c.num("theta.num.upper", l0 - L(k, r + 1))
            for k in _nz(-i, i - 1):
                c.den("theta.den.a", l0 - L(k, r) - 1).den("theta.den.b", l0 - L(k, r))
            out.add(tgt, c.value())
        for j in _nz(-i, i - 1):
            tgt = t.shifted(j, r, -1)
            if not _ok(tgt, r):
                continue
            lj = L(j, r)
            c = Coefficient("c.E(i,-i)").root(-1)
            for k in _nz(-i + 1, i - 1):
                c.num("sqrt.num.lower", L(k, r - 1) - lj - 1)
            for k in _nz(-i, i):
                c.num("sqrt.num.upper", L(k, r + 1) - lj - 1)
            for k in _nz(-i, i - 1, j):
                c.den("sqrt.den.a", L(k, r) - lj - 1).den("sqrt.den.b", L(k, r) - lj)
            out.add(tgt, c.value())
    return out.vector()


def _as_vector(v) -> SparseVector:
    return v if isinstance(v, SparseVector) else SparseVector.basis(v)


def g_split(a: int, b: int) -> int:
    """Intermediate C index for ``E(a,b) = [[E(a,c), E(c,b)]]``, mirroring the gl0 bracketing under ``g``."""
    p, q = g(a), g(b)
    return g_inv(q - 1) if p < q else g_inv(q + 1)


def c_act(gen: GeneratorId, v) -> SparseVector:
    """Any ``E(a,b)`` through the finite formulas and bracketing along ``g``."""
    if gen.convention != "glz":
        raise ValueError(f"{gen} is not a gl(inf|1|inf) generator")
    v = _as_vector(v)
    out = Accumulator()
    if gen.i == gen.j:
        for t, c in v.items():
            out.add(t, c_act_cartan(gen.i, t) * c)
        return out.vector()
    if _base_level(gen) is not None:
        for t, c in v.items():
            out.add_vector(c_act_finite(gen, t), c)
        return out.vector()
    mid = g_split(gen.i, gen.j)
    a, b = E(gen.i, mid), E(mid, gen.j)
    first = c_act(a, c_act(b, v))
    second = c_act(b, c_act(a, v))
    return first - second if super_sign(a, b) > 0 else first + second


# ---------------------------------------------------------------------------
# closed forms for the gl(inf|1|inf) Chevalley generators
# ---------------------------------------------------------------------------


def _P(j: int, l: int) -> int:
    return 1 if j >= l else -1


def _Q(j: int, l: int) -> int:
    return 1 if j > l else -1


def _minus_one_pow(x: Fraction) -> int:
    return -1 if int(x) % 2 else 1


def _E01(t: AnyCTable, out: Accumulator) -> None:
    L, psi = t.L, t.psi
    pre = -psi(2) * (1 + 2 * psi(1))
    tgt = t.shifted(0, 1, 1).shifted(0, 2, 1)
    if pre and _ok(tgt, 1, 2):
        out.add(tgt, Coefficient("inf.E(0,1)", pre).value())
    pre = 1 + psi(1)
    tgt = t.shifted(0, 1, 1).shifted(-1, 2, 1)
    if pre and _ok(tgt, 1, 2):
        lm = L(-1, 2)
        c = Coefficient("inf.E(0,1)", pre).root(-1)
        c.num("sqrt.a", L(-1, 3) - lm).num("sqrt.b", L(1, 3) - lm)
        c.rational()
        c.num("rat.num.a", L(0, 2) - lm).num("rat.num.b", L(0, 2) - lm + 1)
        c.den("rat.den.a", L(0, 3) - lm).den("rat.den.b", L(0, 1) - lm).den("rat.den.c", L(0, 1) - lm + 1)
        out.add(tgt, c.value())


def _E10(t: AnyCTable, out: Accumulator) -> None:
    L, psi = t.L, t.psi
    p1 = psi(1)
    pre = -_minus_one_pow(p1) * (1 - psi(2))
    tgt = t.shifted(0, 1, -1).shifted(0, 2, -1)
    if pre and _ok(tgt, 1, 2):
        lm2 = L(-1, 2)
        c = Coefficient("inf.E(1,0)", pre)
        c.num("num.a", L(0, 2) - lm2 - p1 - 1).num("num.b", L(0, 3) - L(-1, 3)).num("num.c", L(0, 3) - L(1, 3))
        c.den("den.a", L(0, 3) - lm2 - 1).den("den.b", L(0, 3) - lm2)
        out.add(tgt, c.value())
    pre = -p1
    tgt = t.shifted(0, 1, -1).shifted(-1, 2, -1)
    if pre and _ok(tgt, 1, 2):
        lm2 = L(-1, 2)
        c = Coefficient("inf.E(1,0)", pre).root(-1)
        c.num("sqrt.a", L(-1, 3) - lm2 - 1).num("sqrt.b", L(1, 3) - lm2 - 1)
        out.add(tgt, c.value())


def _E_raise_pos(k: int, t: AnyCTable, out: Accumulator) -> None:
    """``E(k,k+1)``, ``k >= 1``: raises rows ``2k+1`` and ``2k+2``."""
    L, psi = t.L, t.psi
    a, b = 2 * k + 1, 2 * k + 2
    pa, pb, pl = psi(a), psi(b), psi(2 * k)

    pre = -pb * (1 - pl) * (1 + 2 * pa)
    tgt = t.shifted(0, a, 1).shifted(0, b, 1)
    if pre and _ok(tgt, a, b):
        out.add(tgt, Coefficient("inf.E(k,k+1)", pre).value())

    pre = pb * pa
    if pre:
        for j in _nz(-k, k):
            tgt = t.shifted(j, a, 1).shifted(0, b, 1)
            if not _ok(tgt, a, b):
                continue
            lj = L(j, a)
            c = Coefficient("inf.E(k,k+1)", pre).root(-1)
            for i in _nz(-k, k - 1):
                c.num("T2.sqrt.num.lower", L(i, 2 * k) - lj + 1)
            for i in _nz(-k - 1, k):
                c.num("T2.sqrt.num.upper", L(i, b) - lj + 1)
            for i in _nz(-k, k, j):
                c.den("T2.sqrt.den.a", L(i, a) - lj).den("T2.sqrt.den.b", L(i, a) - lj + 1)
            c.rational()
            c.num("T2.rat.num.a", L(0, a) - lj).num("T2.rat.num.b", L(0, a) - lj + 1)
            c.den("T2.rat.den.a", L(0, b) - lj + 2).den("T2.rat.den.b", L(0, b) - lj + 1)
            c.den("T2.rat.den.c", L(0, 2 * k) - lj + 1)
            out.add(tgt, c.value())

    pre = (1 + pa) * (1 - pl)
    if pre:
        for j in _nz(-k - 1, k):
            tgt = t.shifted(0, a, 1).shifted(j, b, 1)
            if not _ok(tgt, a, b):
                continue
            lj = L(j, b)
            c = Coefficient("inf.E(k,k+1)", pre).root(-1)
            for i in _nz(-k, k):
                c.num("T3.sqrt.num.lower", L(i, a) - lj)
            for i in _nz(-k - 1, k + 1):
                c.num("T3.sqrt.num.upper", L(i, b + 1) - lj)
            for i in _nz(-k - 1, k, j):
                c.den("T3.sqrt.den.a", L(i, b) - lj).den("T3.sqrt.den.b", L(i, b) - lj + 1)
            c.rational()
            c.num("T3.rat.num.a", L(0, b) - lj).num("T3.rat.num.b", L(0, b) - lj + 1)
            c.den("T3.rat.den.a", L(0, b + 1) - lj).den("T3.rat.den.b", L(0, a) - lj)
            c.den("T3.rat.den.c", L(0, a) - lj + 1)
            out.add(tgt, c.value())

    for l in _nz(-k - 1, k):
        ll = L(l, b)
        for j in _nz(-k, k):
            tgt = t.shifted(j, a, 1).shifted(l, b, 1)
            if not _ok(tgt, a, b):
                continue
            lj = L(j, a)
            c = Coefficient("inf.E(k,k+1)", _Q(j, l)).root(-1)
            for i in _nz(-k, k, j):
                c.num("T4.sqrt1.num.lower", L(i, a) - ll)
            for i in _nz(-k - 1, k + 1):
                c.num("T4.sqrt1.num.upper", L(i, b + 1) - ll)
            for i in _nz(-k - 1, k, l):
                c.den("T4.sqrt1.den.a", L(i, b) - ll).den("T4.sqrt1.den.b", L(i, b) - ll + 1)
            c.root(1)
            for i in _nz(-k, k - 1):
                c.num("T4.sqrt2.num.lower", L(i, 2 * k) - lj + 1)
            for i in _nz(-k - 1, k, l):
                c.num("T4.sqrt2.num.upper", L(i, b) - lj + 1)
            for i in _nz(-k, k, j):
                c.den("T4.sqrt2.den.a", L(i, a) - lj).den("T4.sqrt2.den.b", L(i, a) - lj + 1)
            c.rational()
            c.num("T4.rat.num.a", L(0, b) - ll).num("T4.rat.num.b", L(0, b) - ll + 1)
            c.num("T4.rat.num.c", L(0, a) - lj).num("T4.rat.num.d", L(0, a) - lj + 1)
            c.den("T4.rat.den.a", L(0, b + 1) - ll).den("T4.rat.den.b", L(0, a) - ll)
            c.den("T4.rat.den.c", L(0, b) - lj + 1).den("T4.rat.den.d", L(0, 2 * k) - lj + 1)
            out.add(tgt, c.value())


def _E_lower_neg(k: int, t: AnyCTable, out: Accumulator) -> None:
    """``E(-k+1,-k)``, ``k >= 2``: raises rows ``2k-2`` and ``2k-1``."""
    L, psi = t.L, t.psi
    a, b = 2 * k - 2, 2 * k - 1
    pa, pb, pl = psi(a), psi(b), psi(2 * k - 3)

    pre = -(1 + pb) * pl * (1 - 2 * pa)
    tgt = t.shifted(0, a, 1).shifted(0, b, 1)
    if pre and _ok(tgt, a, b):
        out.add(tgt, Coefficient("inf.E(-k+1,-k)", pre).value())

    pre = -(1 + pb) * (1 - pa)
    if pre:
        for j in _nz(-k + 1, k - 2):
            tgt = t.shifted(j, a, 1).shifted(0, b, 1)
            if not _ok(tgt, a, b):
                continue
            lj = L(j, a)
            c = Coefficient("inf.E(-k+1,-k)", pre).root(-1)
            for i in _nz(-k + 2, k - 2):
                c.num("T2.sqrt.num.lower", L(i, a - 1) - lj)
            for i in _nz(-k + 1, k - 1):
                c.num("T2.sqrt.num.upper", L(i, b) - lj)
            for i in _nz(-k + 1, k - 2, j):
                c.den("T2.sqrt.den.a", L(i, a) - lj).den("T2.sqrt.den.b", L(i, a) - lj + 1)
            c.rational()
            c.num("T2.rat.num.a", L(0, a) - lj).num("T2.rat.num.b", L(0, a) - lj + 1)
            c.den("T2.rat.den.a", L(0, b) - lj).den("T2.rat.den.b", L(0, b) - lj + 1)
            c.den("T2.rat.den.c", L(0, a - 1) - lj)
            out.add(tgt, c.value())

    pre = -pa * pl
    if pre:
        for j in _nz(-k + 1, k - 1):
            tgt = t.shifted(0, a, 1).shifted(j, b, 1)
            if not _ok(tgt, a, b):
                continue
            lj = L(j, b)
            c = Coefficient("inf.E(-k+1,-k)", pre).root(-1)
            for i in _nz(-k + 1, k - 2):
                c.num("T3.sqrt.num.lower", L(i, a) - lj + 1)
            for i in _nz(-k, k - 1):
                c.num("T3.sqrt.num.upper", L(i, b + 1) - lj + 1)
            for i in _nz(-k + 1, k - 1, j):
                c.den("T3.sqrt.den.a", L(i, b) - lj).den("T3.sqrt.den.b", L(i, b) - lj + 1)
            c.rational()
            c.num("T3.rat.num.a", L(0, b) - lj).num("T3.rat.num.b", L(0, b) - lj + 1)
            c.den("T3.rat.den.a", L(0, b + 1) - lj + 1).den("T3.rat.den.b", L(0, a) - lj + 1)
            c.den("T3.rat.den.c", L(0, a) - lj + 2)
            out.add(tgt, c.value())

    for l in _nz(-k + 1, k - 1):
        ll = L(l, b)
        for j in _nz(-k + 1, k - 2):
            tgt = t.shifted(j, a, 1).shifted(l, b, 1)
            if not _ok(tgt, a, b):
                continue
            lj = L(j, a)
            c = Coefficient("inf.E(-k+1,-k)", _P(j, l)).root(-1)
            for i in _nz(-k + 1, k - 2, j):
                c.num("T4.sqrt1.num.lower", L(i, a) - ll + 1)
            for i in _nz(-k, k - 1):
                c.num("T4.sqrt1.num.upper", L(i, b + 1) - ll + 1)
            for i in _nz(-k + 1, k - 1, l):
                c.den("T4.sqrt1.den.a", L(i, b) - ll).den("T4.sqrt1.den.b", L(i, b) - ll + 1)
            c.root(1)
            for i in _nz(-k + 2, k - 2):
                c.num("T4.sqrt2.num.lower", L(i, a - 1) - lj)
            for i in _nz(-k + 1, k - 1, l):
                c.num("T4.sqrt2.num.upper", L(i, b) - lj)
            for i in _nz(-k + 1, k - 2, j):
                c.den("T4.sqrt2.den.a", L(i, a) - lj).den("T4.sqrt2.den.b", L(i, a) - lj + 1)
            c.rational()
            c.num("T4.rat.num.a", L(0, b) - ll).num("T4.rat.num.b", L(0, b) - ll + 1)
            c.num("T4.rat.num.c", L(0, a) - lj).num("T4.rat.num.d", L(0, a) - lj + 1)
            c.den("T4.rat.den.a", L(0, b + 1) - ll + 1).den("T4.rat.den.b", L(0, a) - ll + 1)
            c.den("T4.rat.den.c", L(0, b) - lj).den("T4.rat.den.d", L(0, a - 1) - lj)
            out.add(tgt, c.value())


def _E_lower_pos(k: int, t: AnyCTable, out: Accumulator) -> None:
    """``E(k+1,k)``, ``k >= 1``: lowers rows ``2k+1`` and ``2k+2``."""
    L, psi = t.L, t.psi
    a, b = 2 * k + 1, 2 * k + 2
    pa, pb, pl = psi(a), psi(b), psi(2 * k)

    pre = -_minus_one_pow(pa) * pl * (1 - pb)
    tgt = t.shifted(0, a, -1).shifted(0, b, -1)
    if pre and _ok(tgt, a, b):
        l0 = L(0, b)
        l3 = L(0, b + 1)
        c = Coefficient("inf.E(k+1,k)", pre)
        for i in _nz(-k, k - 1):
            c.num("T1.num.lower", l0 - L(i, 2 * k) - pa - 1)
        for i in _nz(-k - 1, k):
            c.num("T1.num.upper", l0 - L(i, b) - pa - 1)
        for i in _nz(-k, k):
            c.den("T1.den.a", l0 - L(i, a) - pa - 1).den("T1.den.b", l0 - L(i, a) - pa)
        for i in _nz(-k, k):
            c.num("T1.num2.lower", l3 - L(i, a))
        for i in _nz(-k - 1, k + 1):
            c.num("T1.num2.upper", l3 - L(i, b + 1))
        for i in _nz(-k - 1, k):
            c.den("T1.den2.a", l3 - L(i, b) - 1).den("T1.den2.b", l3 - L(i, b))
        out.add(tgt, c.value())

    pre = -(1 + pa) * (1 - pb)
    if pre:
        for j in _nz(-k, k):
            tgt = t.shifted(j, a, -1).shifted(0, b, -1)
            if not _ok(tgt, a, b):
                continue
            lj = L(j, a)
            l3 = L(0, b + 1)
            c = Coefficient("inf.E(k+1,k)", pre).root(-1)
            for i in _nz(-k, k - 1):
                c.num("T2.sqrt.num.lower", L(i, 2 * k) - lj)
            for i in _nz(-k - 1, k):
                c.num("T2.sqrt.num.upper", L(i, b) - lj)
            for i in _nz(-k, k, j):
                c.den("T2.sqrt.den.a", L(i, a) - lj - 1).den("T2.sqrt.den.b", L(i, a) - lj)
            c.rational()
            for i in _nz(-k, k, j):
                c.num("T2.rat.num.lower", l3 - L(i, a))
            for i in _nz(-k - 1, k + 1):
                c.num("T2.rat.num.upper", l3 - L(i, b + 1))
            for i in _nz(-k - 1, k):
                c.den("T2.rat.den.a", l3 - L(i, b) - 1).den("T2.rat.den.b", l3 - L(i, b))
            out.add(tgt, c.value())

    pre = -pl * pa
    if pre:
        for j in _nz(-k - 1, k):
            tgt = t.shifted(0, a, -1).shifted(j, b, -1)
            if not _ok(tgt, a, b):
                continue
            lj = L(j, b)
            l0 = L(0, b)
            c = Coefficient("inf.E(k+1,k)", pre).root(-1)
            for i in _nz(-k, k):
                c.num("T3.sqrt.num.lower", L(i, a) - lj - 1)
            for i in _nz(-k - 1, k + 1):
                c.num("T3.sqrt.num.upper", L(i, b + 1) - lj - 1)
            for i in _nz(-k - 1, k, j):
                c.den("T3.sqrt.den.a", L(i, b) - lj - 1).den("T3.sqrt.den.b", L(i, b) - lj)
            c.rational()
            for i in _nz(-k - 1, k, j):
                c.num("T3.rat.num.upper", l0 - L(i, b))
            for i in _nz(-k, k - 1):
                c.num("T3.rat.num.lower", l0 - L(i, 2 * k))
            for i in _nz(-k, k):
                c.den("T3.rat.den.a", l0 - L(i, a)).den("T3.rat.den.b", l0 - L(i, a) + 1)
            out.add(tgt, c.value())

    for l in _nz(-k - 1, k):
        ll = L(l, b)
        for j in _nz(-k, k):
            tgt = t.shifted(j, a, -1).shifted(l, b, -1)
            if not _ok(tgt, a, b):
                continue
            lj = L(j, a)
            c = Coefficient("inf.E(k+1,k)", _Q(j, l)).root(-1)
            for i in _nz(-k, k, j):
                c.num("T4.sqrt1.num.lower", L(i, a) - ll - 1)
            for i in _nz(-k - 1, k + 1):
                c.num("T4.sqrt1.num.upper", L(i, b + 1) - ll - 1)
            for i in _nz(-k - 1, k, l):
                c.den("T4.sqrt1.den.a", L(i, b) - ll - 1).den("T4.sqrt1.den.b", L(i, b) - ll)
            c.root(1)
            for i in _nz(-k, k - 1):
                c.num("T4.sqrt2.num.lower", L(i, 2 * k) - lj)
            for i in _nz(-k - 1, k, l):
                c.num("T4.sqrt2.num.upper", L(i, b) - lj)
            for i in _nz(-k, k, j):
                c.den("T4.sqrt2.den.a", L(i, a) - lj - 1).den("T4.sqrt2.den.b", L(i, a) - lj)
            out.add(tgt, c.value())


def _E_raise_neg(k: int, t: AnyCTable, out: Accumulator) -> None:
    """``E(-k,-k+1)``, ``k >= 2``: lowers rows ``2k-2`` and ``2k-1``."""
    L, psi = t.L, t.psi
    a, b = 2 * k - 2, 2 * k - 1
    pa, pb, pl = psi(a), psi(b), psi(2 * k - 3)

    pre = -_minus_one_pow(pa) * (1 + pl) * pb
    tgt = t.shifted(0, a, -1).shifted(0, b, -1)
    if pre and _ok(tgt, a, b):
        l0 = L(0, b)
        l4 = L(0, b + 1)
        c = Coefficient("inf.E(-k,-k+1)", pre)
        for i in _nz(-k + 2, k - 2):
            c.num("T1.num.lower", l0 - L(i, a - 1) - pa)
        for i in _nz(-k + 1, k - 1):
            c.num("T1.num.upper", l0 - L(i, b) - pa)
        for i in _nz(-k + 1, k - 2):
            c.den("T1.den.a", l0 - L(i, a) - 1).den("T1.den.b", l0 - L(i, a) - 2 * pa)
        for i in _nz(-k + 1, k - 2):
            c.num("T1.num2.lower", l4 - L(i, a))
        for i in _nz(-k, k - 1):
            c.num("T1.num2.upper", l4 - L(i, b + 1))
        for i in _nz(-k + 1, k - 1):
            c.den("T1.den2.a", l4 - L(i, b)).den("T1.den2.b", l4 - L(i, b) + 1)
        out.add(tgt, c.value())

    pre = pa * pb
    if pre:
        for j in _nz(-k + 1, k - 2):
            tgt = t.shifted(j, a, -1).shifted(0, b, -1)
            if not _ok(tgt, a, b):
                continue
            lj = L(j, a)
            l4 = L(0, b + 1)
            c = Coefficient("inf.E(-k,-k+1)", pre).root(-1)
            for i in _nz(-k + 2, k - 2):
                c.num("T2.sqrt.num.lower", L(i, a - 1) - lj - 1)
            for i in _nz(-k + 1, k - 1):
                c.num("T2.sqrt.num.upper", L(i, b) - lj - 1)
            for i in _nz(-k + 1, k - 2, j):
                c.den("T2.sqrt.den.a", L(i, a) - lj - 1).den("T2.sqrt.den.b", L(i, a) - lj)
            c.rational()
            for i in _nz(-k + 1, k - 2, j):
                c.num("T2.rat.num.lower", l4 - L(i, a))
            for i in _nz(-k, k - 1):
                c.num("T2.rat.num.upper", l4 - L(i, b + 1))
            for i in _nz(-k + 1, k - 1):
                c.den("T2.rat.den.a", l4 - L(i, b)).den("T2.rat.den.b", l4 - L(i, b) + 1)
            out.add(tgt, c.value())

    pre = (1 + pl) * (1 - pa)
    if pre:
        for j in _nz(-k + 1, k - 1):
            tgt = t.shifted(0, a, -1).shifted(j, b, -1)
            if not _ok(tgt, a, b):
                continue
            lj = L(j, b)
            l0 = L(0, b)
            c = Coefficient("inf.E(-k,-k+1)", pre).root(-1)
            for i in _nz(-k + 1, k - 2):
                c.num("T3.sqrt.num.lower", L(i, a) - lj)
            for i in _nz(-k, k - 1):
                c.num("T3.sqrt.num.upper", L(i, b + 1) - lj)
            for i in _nz(-k + 1, k - 1, j):
                c.den("T3.sqrt.den.a", L(i, b) - lj - 1).den("T3.sqrt.den.b", L(i, b) - lj)
            c.rational()
            for i in _nz(-k + 1, k - 1, j):
                c.num("T3.rat.num.upper", l0 - L(i, b))
            for i in _nz(-k + 2, k - 2):
                c.num("T3.rat.num.lower", l0 - L(i, a - 1))
            for i in _nz(-k + 1, k - 2):
                c.den("T3.rat.den.a", l0 - L(i, a) - 1).den("T3.rat.den.b", l0 - L(i, a))
            out.add(tgt, c.value())

    for l in _nz(-k + 1, k - 1):
        ll = L(l, b)
        for j in _nz(-k + 1, k - 2):
            tgt = t.shifted(j, a, -1).shifted(l, b, -1)
            if not _ok(tgt, a, b):
                continue
            lj = L(j, a)
            c = Coefficient("inf.E(-k,-k+1)", _P(j, l)).root(-1)
            for i in _nz(-k + 1, k - 2, j):
                c.num("T4.sqrt1.num.lower", L(i, a) - ll)
            for i in _nz(-k, k - 1):
                c.num("T4.sqrt1.num.upper", L(i, b + 1) - ll)
            for i in _nz(-k + 1, k - 1, l):
                c.den("T4.sqrt1.den.a", L(i, b) - ll - 1).den("T4.sqrt1.den.b", L(i, b) - ll)
            c.root(1)
            for i in _nz(-k + 2, k - 2):
                c.num("T4.sqrt2.num.lower", L(i, a - 1) - lj - 1)
            for i in _nz(-k + 1, k - 1, l):
                c.num("T4.sqrt2.num.upper", L(i, b) - lj - 1)
            for i in _nz(-k + 1, k - 2, j):
                c.den("T4.sqrt2.den.a", L(i, a) - lj - 1).den("T4.sqrt2.den.b", L(i, a) - lj)
            out.add(tgt, c.value())


def is_chevalley(gen: GeneratorId) -> bool:
    return gen.convention == "glz" and abs(gen.i - gen.j) <= 1


def chevalley_rows(gen: GeneratorId) -> tuple[int, ...]:
    """C rows whose entries the Chevalley generator ``gen`` changes."""
    a, b = gen.i, gen.j
    if a == b:
        return ()
    k = min(a, b)
    if k == -1:
        return (1,)
    if k == 0:
        return (1, 2)
    if k >= 1:
        return (2 * k + 1, 2 * k + 2)
    m = -k
    return (2 * m - 2, 2 * m - 1)


@register_cache
@lru_cache(maxsize=200_000)
def _chevalley_on_table(gen: GeneratorId, t: AnyCTable) -> SparseVector:
    a, b = gen.i, gen.j
    rows = chevalley_rows(gen)
    _require_rows(t, max(rows) + 1, gen)
    if (a, b) in ((0, -1), (-1, 0)):
        return c_act_finite(gen, t)
    out = Accumulator()
    if (a, b) == (0, 1):
        _E01(t, out)
    elif (a, b) == (1, 0):
        _E10(t, out)
    elif b == a + 1:
        if a >= 1:
            _E_raise_pos(a, t, out)
        else:
            _E_raise_neg(-a, t, out)
    else:
        if b >= 1:
            _E_lower_pos(b, t, out)
        else:
            _E_lower_neg(-b, t, out)
    return out.vector()


def c_act_chevalley_infinite(gen: GeneratorId, v) -> SparseVector:
    """Chevalley generators of gl(inf|1|inf) from their own closed forms."""
    if not is_chevalley(gen):
        raise ValueError(f"{gen} is not a Chevalley generator")
    v = _as_vector(v)
    out = Accumulator()
    for t, c in v.items():
        if gen.i == gen.j:
            out.add(t, c_act_cartan(gen.i, t) * c)
        else:
            out.add_vector(_chevalley_on_table(gen, t), c)
    return out.vector()


def c_act_infinite(gen: GeneratorId, v) -> SparseVector:
    """Any ``E(a,b)`` from the Chevalley closed forms, bracketing along neighbouring indices."""
    if is_chevalley(gen):
        return c_act_chevalley_infinite(gen, v)
    a, b = gen.i, gen.j
    mid = b - 1 if a < b else b + 1
    x, y = E(a, mid), E(mid, b)
    first = c_act_infinite(x, c_act_infinite(y, v))
    second = c_act_infinite(y, c_act_infinite(x, v))
    return first - second if super_sign(x, y) > 0 else first + second


def chevalley_generators(bound: int) -> list[GeneratorId]:
    """Cartan and simple root generators with all indices in ``[-bound; bound]``."""
    gens = [E(i, i) for i in range(-bound, bound + 1)]
    gens += [E(i, i + 1) for i in range(-bound, bound)]
    gens += [E(i + 1, i) for i in range(-bound, bound)]
    return gens


def lowering_generators(bound: int) -> list[GeneratorId]:
    return [E(i + 1, i) for i in range(-bound, bound)]


def c_generators_finite(n: int) -> list[GeneratorId]:
    return [E(a, b) for a in range(-n, n + 1) for b in range(-n, n + 1)]


# ---------------------------------------------------------------------------
# finite modules as matrices
# ---------------------------------------------------------------------------


class CModule:
    """A finite gl(n|1|n) (or gl(k|1|k-1)) module on its C-basis.

    The basis is the relabeled GZ basis sorted by the C-table key, so the
    change of basis to :class:`~gl1reps.gz_rep.GzModule` is the permutation
    ``gz_to_c``.  Matrices of ``g``-adjacent generators come from
    :func:`c_act_finite`; the rest follow the ``g``-bracketing.
    """

    def __init__(self, sig: CSignature | Sequence, guard: int | None = None):
        from .gz_rep import GzModule
        from .isomap import table_gz_to_c

        if not isinstance(sig, CSignature):
            sig = CSignature(sig)
        self.signature = sig
        gz = GzModule(signature_c_to_gz(sig), **({} if guard is None else {"guard": guard}))
        self.gz_module = gz
        converted = [table_gz_to_c(t) for t in gz.basis]
        self.basis: list[CTable] = sorted(converted, key=lambda t: t.key())
        self.index = {t: n for n, t in enumerate(self.basis)}
        self.gz_to_c = [self.index[t] for t in converted]
        self._cache: dict[GeneratorId, "SparseMatrix"] = {}

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def window(self) -> range:
        return self.signature.window

    def generators(self) -> list[GeneratorId]:
        w = self.window
        return [E(a, b) for a in w for b in w]

    def matrix(self, gen: GeneratorId) -> "SparseMatrix":
        from .vector import SparseMatrix

        m = self._cache.get(gen)
        if m is not None:
            return m
        if gen.i not in self.window or gen.j not in self.window:
            raise IndexOutOfRange(f"{gen} outside the window {list(self.window)}")
        if gen.i == gen.j or _base_level(gen) is not None:
            m = SparseMatrix.from_action(self.basis, self.index, lambda t: c_act(gen, t))
        else:
            mid = g_split(gen.i, gen.j)
            a, b = E(gen.i, mid), E(mid, gen.j)
            ma, mb = self.matrix(a), self.matrix(b)
            ab, ba = ma @ mb, mb @ ma
            m = ab - ba if super_sign(a, b) > 0 else ab + ba
        self._cache[gen] = m
        return m
