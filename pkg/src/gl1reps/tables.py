"""Signatures and basis tables for gl(1|N) and gl(1|inf) modules.

Two labelings of the same basis are supported:

* GZ tables: triangular patterns ``m[i, j]`` with row ``j`` holding
  ``m[1, j] .. m[j, j]``; the top row is the signature.
* C-tables: row ``r`` holds ``M[i, r]`` for the two-sided index window
  ``i in [-(r // 2), r - 1 - r // 2]``; equivalently the indices ``z`` with
  ``2|z| + (z >= 0) <= r``.

Finite tables store every row.  Infinite tables store the signature plus the
rows below the first stable row; rows above are read off the signature.
The stored rows are trimmed on construction, so the stability index is always
recomputed from the data.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Sequence, Union

from .errors import (
    GuardExceeded,
    IndexOutOfRange,
    InvalidTable,
    MalformedSignature,
    NotEssentiallyTypical,
)

DEFAULT_GUARD = 10**5


def frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return Fraction(x.strip())
    return Fraction(x)


def _fracs(values: Iterable) -> tuple[Fraction, ...]:
    return tuple(frac(v) for v in values)


def is_zplus(x: Fraction) -> bool:
    return x.denominator == 1 and x >= 0


def is_natural(x: Fraction) -> bool:
    return x.denominator == 1 and x >= 1


def in_integer_interval(x: Fraction, lo: Fraction, hi: Fraction) -> bool:
    """Membership in ``[lo; hi] = {lo, lo+1, ..., hi}`` (empty unless hi - lo is in Z+)."""
    if not is_zplus(hi - lo):
        return False
    d = x - lo
    return d.denominator == 1 and 0 <= d <= hi - lo


@dataclass(frozen=True)
class Violation:
    condition: str
    cell: tuple
    detail: str

    def __str__(self) -> str:
        return f"{self.condition} at {self.cell}: {self.detail}"

    def to_json(self) -> dict:
        return {"condition": self.condition, "cell": list(self.cell), "detail": self.detail}


# ---------------------------------------------------------------------------
# GZ signatures and tables
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GzSignature:
    """Highest weight ``[m_1, ..., m_{N+1}]`` of a gl0(1|N) module."""

    labels: tuple[Fraction, ...]

    def __init__(self, labels: Iterable):
        object.__setattr__(self, "labels", _fracs(labels))
        if not self.labels:
            raise MalformedSignature("a signature needs at least one label")
        for i in range(1, len(self.labels) - 1):
            if not is_zplus(self.labels[i] - self.labels[i + 1]):
                raise MalformedSignature(
                    f"m_{i + 1} - m_{i + 2} = {self.labels[i] - self.labels[i + 1]} is not in Z+"
                )

    @property
    def rank(self) -> int:
        """``N`` for gl0(1|N)."""
        return len(self.labels) - 1

    def label(self, i: int) -> Fraction:
        return self.labels[i - 1]

    def prefix(self, j: int) -> tuple[Fraction, ...]:
        return self.labels[:j]

    def l_values(self) -> tuple[Fraction, ...]:
        return gz_l_row(self.labels)

    def __str__(self) -> str:
        return "[" + ", ".join(str(x) for x in self.labels) + "]"


@dataclass(frozen=True)
class InfiniteGzSignature:
    """Eventually constant signature ``[m_1, m_2, ...]``: ``head`` then ``tail`` forever."""

    head: tuple[Fraction, ...]
    tail: Fraction

    def __init__(self, head: Iterable, tail=None):
        head = list(_fracs(head))
        if not head:
            raise MalformedSignature("infinite signature needs m_1")
        tail = head[-1] if tail is None else frac(tail)
        while len(head) > 1 and head[-1] == tail:
            head.pop()
        object.__setattr__(self, "head", tuple(head))
        object.__setattr__(self, "tail", tail)
        seq = list(self.head) + [tail, tail]
        for i in range(1, len(seq) - 1):
            if not is_zplus(seq[i] - seq[i + 1]):
                raise MalformedSignature(f"m_{i + 1} - m_{i + 2} = {seq[i] - seq[i + 1]} is not in Z+")

    def label(self, i: int) -> Fraction:
        if i < 1:
            raise IndexOutOfRange(f"GZ label index {i} < 1")
        return self.head[i - 1] if i <= len(self.head) else self.tail

    def prefix(self, j: int) -> tuple[Fraction, ...]:
        if j <= len(self.head):
            return self.head[:j]
        return self.head + (self.tail,) * (j - len(self.head))

    def truncate(self, n_plus_1: int) -> GzSignature:
        return GzSignature(self.prefix(n_plus_1))

    def __str__(self) -> str:
        return "[" + ", ".join(str(x) for x in self.head) + f", {self.tail}, ...]"


def gz_l_row(row: Sequence[Fraction]) -> tuple[Fraction, ...]:
    """``l_1 = m_1 + 1`` and ``l_i = -m_i + i - 1`` for one row of a GZ table."""
    return tuple(m + 1 if i == 1 else -m + i - 1 for i, m in enumerate(row, start=1))


def gz_is_essentially_typical(sig: GzSignature | InfiniteGzSignature) -> bool:
    if isinstance(sig, InfiniteGzSignature):
        l1 = sig.label(1) + 1
        l2 = -sig.label(2) + 1
        # l_i increases by at least one per step, so {l_2, l_2+1, ...} is reached
        return not is_zplus(l1 - l2)
    ls = sig.l_values()
    if len(ls) < 2:
        return True
    return not in_integer_interval(ls[0], ls[1], ls[-1])


@dataclass(frozen=True)
class GzTable:
    """Finite GZ table; ``rows[j - 1]`` is row ``j`` and the last row is the signature."""

    rows: tuple[tuple[Fraction, ...], ...]

    def __hash__(self) -> int:
        h = self.__dict__.get("_hash")
        if h is None:
            h = hash(self._identity())
            object.__setattr__(self, "_hash", h)
        return h

    def __eq__(self, other) -> bool:
        if other.__class__ is not self.__class__:
            return NotImplemented
        return self._identity() == other._identity()

    def _identity(self) -> tuple:
        return self.rows

    def __init__(self, rows: Iterable[Iterable]):
        rows = tuple(_fracs(r) for r in rows)
        for j, r in enumerate(rows, start=1):
            if len(r) != j:
                raise ValueError(f"row {j} of a GZ table must have {j} entries, got {len(r)}")
        if not rows:
            raise ValueError("empty GZ table")
        object.__setattr__(self, "rows", rows)

    @property
    def signature(self) -> GzSignature:
        return GzSignature(self.rows[-1])

    @property
    def height(self) -> int:
        return len(self.rows)

    def row(self, j: int) -> tuple[Fraction, ...]:
        if not 1 <= j <= len(self.rows):
            raise IndexOutOfRange(f"row {j} outside [1; {len(self.rows)}]")
        return self.rows[j - 1]

    def entry(self, i: int, j: int) -> Fraction:
        return self.row(j)[i - 1]

    def shifted(self, i: int, j: int, delta: int) -> "GzTable":
        rows = list(self.rows)
        r = list(rows[j - 1])
        r[i - 1] += delta
        rows[j - 1] = tuple(r)
        out = object.__new__(GzTable)
        object.__setattr__(out, "rows", tuple(rows))
        return out

    def key(self) -> tuple:
        """Sort key realizing the deterministic basis order (descending lexicographic)."""
        return tuple(-x for r in reversed(self.rows) for x in r)

    def to_json(self) -> dict:
        return {
            "signature": [str(x) for x in self.rows[-1]],
            "rows": [[str(x) for x in r] for r in self.rows],
        }

    @classmethod
    def from_json(cls, data: dict) -> "GzTable":
        t = cls(data["rows"])
        if "signature" in data and tuple(_fracs(data["signature"])) != t.rows[-1]:
            raise ValueError("'signature' does not match the last row")
        return t

    def __str__(self) -> str:
        return render_gz(self)


@dataclass(frozen=True)
class InfiniteGzTable:
    """GZ table of a gl0(1|inf) module; rows above ``stability_index`` follow the signature."""

    signature: InfiniteGzSignature
    rows: tuple[tuple[Fraction, ...], ...]

    def __hash__(self) -> int:
        h = self.__dict__.get("_hash")
        if h is None:
            h = hash(self._identity())
            object.__setattr__(self, "_hash", h)
        return h

    def __eq__(self, other) -> bool:
        if other.__class__ is not self.__class__:
            return NotImplemented
        return self._identity() == other._identity()

    def _identity(self) -> tuple:
        return (self.signature, self.rows)

    def __init__(self, signature: InfiniteGzSignature, rows: Iterable[Iterable] = ()):
        rows = [tuple(_fracs(r)) for r in rows]
        for j, r in enumerate(rows, start=1):
            if len(r) != j:
                raise ValueError(f"row {j} of a GZ table must have {j} entries, got {len(r)}")
        while rows and rows[-1] == signature.prefix(len(rows)):
            rows.pop()
        object.__setattr__(self, "signature", signature)
        object.__setattr__(self, "rows", tuple(rows))

    @property
    def stability_index(self) -> int:
        return len(self.rows)

    def row(self, j: int) -> tuple[Fraction, ...]:
        if j < 1:
            raise IndexOutOfRange(f"row {j} < 1")
        if j <= len(self.rows):
            return self.rows[j - 1]
        return self.signature.prefix(j)

    def entry(self, i: int, j: int) -> Fraction:
        return self.row(j)[i - 1]

    def shifted(self, i: int, j: int, delta: int) -> "InfiniteGzTable":
        depth = max(j, len(self.rows))
        rows = [self.row(r) for r in range(1, depth + 1)]
        r = list(rows[j - 1])
        r[i - 1] += delta
        rows[j - 1] = tuple(r)
        return InfiniteGzTable(self.signature, rows)

    def truncate(self, n_plus_1: int) -> GzTable:
        """The finite table formed by rows ``1 .. n_plus_1``."""
        return GzTable(self.row(j) for j in range(1, n_plus_1 + 1))

    def key(self) -> tuple:
        return (len(self.rows),) + tuple(-x for r in reversed(self.rows) for x in r)

    def to_json(self) -> dict:
        return {
            "signature_head": [str(x) for x in self.signature.head],
            "signature_tail": str(self.signature.tail),
            "deviations": {str(j): [str(x) for x in r] for j, r in enumerate(self.rows, 1)},
        }

    def __str__(self) -> str:
        return render_gz(self)


AnyGzTable = Union[GzTable, InfiniteGzTable]


def gz_validate(table: AnyGzTable) -> list[Violation]:
    """All violated basis conditions (theta in {0,1}, in-betweenness, signature)."""
    out: list[Violation] = []
    if isinstance(table, GzTable):
        top = table.height
        try:
            GzSignature(table.rows[-1])
        except MalformedSignature as exc:
            out.append(Violation("signature", (top,), str(exc)))
    else:
        # rows above stability + 1 are prefixes of a validated signature
        top = table.stability_index + 1
    row = table.row
    for j in range(2, top + 1):
        theta = row(j)[0] - row(j - 1)[0]
        if theta not in (0, 1):
            out.append(Violation("theta", (1, j - 1), f"theta_{j - 1} = {theta} not in {{0, 1}}"))
    for j in range(2, top):
        lower, upper = row(j), row(j + 1)
        for i in range(2, j + 1):
            a = upper[i - 1] - lower[i - 1]
            if not is_zplus(a):
                out.append(Violation("betweenness", (i, j), f"m_{i},{j + 1} - m_{i},{j} = {a} not in Z+"))
            b = lower[i - 1] - upper[i]
            if not is_zplus(b):
                out.append(Violation("betweenness", (i, j), f"m_{i},{j} - m_{i + 1},{j + 1} = {b} not in Z+"))
    return out


def gz_highest_table(sig: GzSignature | InfiniteGzSignature) -> AnyGzTable:
    if isinstance(sig, InfiniteGzSignature):
        return InfiniteGzTable(sig, ())
    return GzTable(sig.prefix(j) for j in range(1, len(sig.labels) + 1))


def _interlacing_rows(upper: tuple[Fraction, ...]) -> Iterator[tuple[Fraction, ...]]:
    """Rows one shorter than ``upper`` satisfying the GZ conditions, descending order."""
    j = len(upper) - 1
    first = (upper[0], upper[0] - 1)
    ranges = []
    for i in range(1, j):
        hi, lo = upper[i], upper[i + 1]
        ranges.append([hi - t for t in range(int(hi - lo) + 1)])
    for m1 in first:
        for rest in itertools.product(*ranges):
            yield (m1,) + rest


def gz_enumerate(sig: GzSignature, guard: int = DEFAULT_GUARD) -> list[GzTable]:
    """All GZ basis tables of the module, highest table first."""
    if isinstance(sig, InfiniteGzSignature):
        raise ValueError("infinite modules cannot be enumerated")
    if not gz_is_essentially_typical(sig):
        raise NotEssentiallyTypical(f"{sig} is not essentially typical")
    out: list[GzTable] = []

    def grow(stack: list[tuple[Fraction, ...]]) -> None:
        if len(stack[-1]) == 1:
            if len(out) >= guard:
                raise GuardExceeded(f"more than {guard} tables for {sig}")
            out.append(GzTable(reversed(stack)))
            return
        for r in _interlacing_rows(stack[-1]):
            stack.append(r)
            grow(stack)
            stack.pop()

    grow([sig.labels])
    return out


# ---------------------------------------------------------------------------
# C signatures and tables
# ---------------------------------------------------------------------------


def c_window(r: int) -> range:
    """Index window of a C row of length ``r``: ``[-k; k - 1 + theta]`` with ``r = 2k + theta``."""
    k = r // 2
    return range(-k, r - k)


def level(r: int) -> tuple[int, int]:
    """``(k, theta)`` with ``r = 2k + theta``."""
    return r // 2, r % 2


def c_l_value(i: int, value: Fraction) -> Fraction:
    if i == 0:
        return value
    if i < 0:
        return -value + i + 1
    return -value + i - 1


def _c_signature_violations(get, lo: int, hi: int) -> list[str]:
    bad = []
    for i in list(range(lo, -1)) + list(range(1, hi)):
        d = get(i) - get(i + 1)
        if not is_zplus(d):
            bad.append(f"M_{i} - M_{i + 1} = {d} not in Z+")
    if lo <= -1 and hi >= 1:
        d = get(-1) - get(1)
        if not is_natural(d):
            bad.append(f"M_-1 - M_1 = {d} not in N")
    return bad


@dataclass(frozen=True)
class CSignature:
    """Finite C signature ``[M_{-k}, ..., M_{k-1+theta}]`` of length ``2k + theta``."""

    labels: tuple[Fraction, ...]

    def __init__(self, labels: Iterable):
        object.__setattr__(self, "labels", _fracs(labels))
        if not self.labels:
            raise MalformedSignature("a signature needs at least one label")
        w = c_window(len(self.labels))
        bad = _c_signature_violations(self.label, w.start, w.stop - 1)
        if bad:
            raise MalformedSignature("; ".join(bad))

    @property
    def length(self) -> int:
        return len(self.labels)

    @property
    def window(self) -> range:
        return c_window(len(self.labels))

    def label(self, i: int) -> Fraction:
        w = self.window
        if i not in w:
            raise IndexOutOfRange(f"C index {i} outside [{w.start}; {w.stop - 1}]")
        return self.labels[i - w.start]

    def restrict(self, r: int) -> tuple[Fraction, ...]:
        return tuple(self.label(i) for i in c_window(r))

    def __str__(self) -> str:
        return "[" + ", ".join(str(x) for x in self.labels) + "]"


@dataclass(frozen=True)
class InfiniteCSignature:
    """Two-sided eventually constant signature.

    ``nonneg = (M_0, M_1, M_2, ...)`` and ``neg = (M_-1, M_-2, ...)``; the last
    entry of each side repeats forever.
    """

    neg: tuple[Fraction, ...]
    nonneg: tuple[Fraction, ...]

    def __init__(self, neg: Iterable, nonneg: Iterable):
        neg = list(_fracs(neg))
        nonneg = list(_fracs(nonneg))
        if not neg or len(nonneg) < 2:
            raise MalformedSignature("need M_-1 and M_0, M_1 at least")
        while len(neg) > 1 and neg[-1] == neg[-2]:
            neg.pop()
        while len(nonneg) > 2 and nonneg[-1] == nonneg[-2]:
            nonneg.pop()
        object.__setattr__(self, "neg", tuple(neg))
        object.__setattr__(self, "nonneg", tuple(nonneg))
        lo, hi = -len(self.neg) - 1, len(self.nonneg)
        bad = _c_signature_violations(self.label, lo, hi)
        if bad:
            raise MalformedSignature("; ".join(bad))

    @classmethod
    def from_window(cls, values: dict[int, object]) -> "InfiniteCSignature":
        lo, hi = min(values), max(values)
        return cls([values[i] for i in range(-1, lo - 1, -1)], [values[i] for i in range(0, hi + 1)])

    def label(self, i: int) -> Fraction:
        if i >= 0:
            return self.nonneg[min(i, len(self.nonneg) - 1)]
        return self.neg[min(-i - 1, len(self.neg) - 1)]

    def restrict(self, r: int) -> tuple[Fraction, ...]:
        cache = self.__dict__.setdefault("_rows", {})
        row = cache.get(r)
        if row is None:
            row = cache[r] = tuple(self.label(i) for i in c_window(r))
        return row

    def truncate(self, r: int) -> CSignature:
        return CSignature(self.restrict(r))

    def __str__(self) -> str:
        left = ", ".join(str(x) for x in reversed(self.neg))
        right = ", ".join(str(x) for x in self.nonneg)
        return f"[..., {left}; {right}, ...]"


def c_is_essentially_typical(sig: CSignature | InfiniteCSignature) -> bool:
    if isinstance(sig, InfiniteCSignature):
        return (sig.label(0) + sig.label(1)).denominator != 1
    w = sig.window
    others = [i for i in w if i != 0]
    if not others:
        return True
    lo, hi = others[0], others[-1]
    L = lambda i: c_l_value(i, sig.label(i))  # noqa: E731
    return not in_integer_interval(L(0), L(lo), L(hi))


@dataclass(frozen=True)
class CTable:
    """Finite C-table; ``rows[r - 1]`` is row ``r`` over ``c_window(r)``; the last row is the signature."""

    rows: tuple[tuple[Fraction, ...], ...]

    def __hash__(self) -> int:
        h = self.__dict__.get("_hash")
        if h is None:
            h = hash(self._identity())
            object.__setattr__(self, "_hash", h)
        return h

    def __eq__(self, other) -> bool:
        if other.__class__ is not self.__class__:
            return NotImplemented
        return self._identity() == other._identity()

    def _identity(self) -> tuple:
        return self.rows

    def __init__(self, rows: Iterable[Iterable]):
        rows = tuple(_fracs(r) for r in rows)
        for r, vals in enumerate(rows, start=1):
            if len(vals) != r:
                raise ValueError(f"row {r} of a C-table must have {r} entries, got {len(vals)}")
        if not rows:
            raise ValueError("empty C-table")
        object.__setattr__(self, "rows", rows)

    @property
    def signature(self) -> CSignature:
        return CSignature(self.rows[-1])

    @property
    def height(self) -> int:
        return len(self.rows)

    def row(self, r: int) -> tuple[Fraction, ...]:
        if not 1 <= r <= len(self.rows):
            raise IndexOutOfRange(f"row {r} outside [1; {len(self.rows)}]")
        return self.rows[r - 1]

    def entry(self, i: int, r: int) -> Fraction:
        k = r // 2
        if not -k <= i < r - k:
            raise IndexOutOfRange(f"index {i} outside row {r}")
        return self.row(r)[i + k]

    def L(self, i: int, r: int) -> Fraction:
        return c_l_value(i, self.entry(i, r))

    def psi(self, r: int) -> Fraction:
        """``M_{0, r+1} - M_{0, r}``."""
        return self.entry(0, r + 1) - self.entry(0, r)

    def shifted(self, i: int, r: int, delta: int) -> "CTable":
        rows = list(self.rows)
        vals = list(rows[r - 1])
        vals[i + r // 2] += delta
        rows[r - 1] = tuple(vals)
        out = object.__new__(CTable)
        object.__setattr__(out, "rows", tuple(rows))
        return out

    def key(self) -> tuple:
        return tuple(-x for r in reversed(self.rows) for x in r)

    def to_json(self) -> dict:
        return {
            "signature": [str(x) for x in self.rows[-1]],
            "rows": [[str(x) for x in r] for r in self.rows],
        }

    @classmethod
    def from_json(cls, data: dict) -> "CTable":
        t = cls(data["rows"])
        if "signature" in data and tuple(_fracs(data["signature"])) != t.rows[-1]:
            raise ValueError("'signature' does not match the last row")
        return t

    def __str__(self) -> str:
        return render_c(self)


@dataclass(frozen=True)
class InfiniteCTable:
    signature: InfiniteCSignature
    rows: tuple[tuple[Fraction, ...], ...]

    def __hash__(self) -> int:
        h = self.__dict__.get("_hash")
        if h is None:
            h = hash(self._identity())
            object.__setattr__(self, "_hash", h)
        return h

    def __eq__(self, other) -> bool:
        if other.__class__ is not self.__class__:
            return NotImplemented
        return self._identity() == other._identity()

    def _identity(self) -> tuple:
        return (self.signature, self.rows)

    def __init__(self, signature: InfiniteCSignature, rows: Iterable[Iterable] = ()):
        rows = [tuple(_fracs(r)) for r in rows]
        for r, vals in enumerate(rows, start=1):
            if len(vals) != r:
                raise ValueError(f"row {r} of a C-table must have {r} entries, got {len(vals)}")
        while rows and rows[-1] == signature.restrict(len(rows)):
            rows.pop()
        object.__setattr__(self, "signature", signature)
        object.__setattr__(self, "rows", tuple(rows))

    @property
    def depth(self) -> int:
        """Highest row that differs from the signature (0 for the highest table)."""
        return len(self.rows)

    @property
    def stability_index(self) -> int:
        """Smallest ``N`` with every row ``2k + theta - 1``, ``k > N``, equal to the signature."""
        return (len(self.rows) + 1) // 2

    def row(self, r: int) -> tuple[Fraction, ...]:
        if r < 1:
            raise IndexOutOfRange(f"row {r} < 1")
        if r <= len(self.rows):
            return self.rows[r - 1]
        return self.signature.restrict(r)

    def entry(self, i: int, r: int) -> Fraction:
        k = r // 2
        if not -k <= i < r - k:
            raise IndexOutOfRange(f"index {i} outside row {r}")
        return self.row(r)[i + k]

    def L(self, i: int, r: int) -> Fraction:
        return c_l_value(i, self.entry(i, r))

    def psi(self, r: int) -> Fraction:
        return self.entry(0, r + 1) - self.entry(0, r)

    def shifted(self, i: int, r: int, delta: int) -> "InfiniteCTable":
        depth = max(r, len(self.rows))
        rows = [self.row(s) for s in range(1, depth + 1)]
        vals = list(rows[r - 1])
        vals[i + r // 2] += delta
        rows[r - 1] = tuple(vals)
        sig = self.signature
        while rows and rows[-1] == sig.restrict(len(rows)):
            rows.pop()
        out = object.__new__(InfiniteCTable)
        object.__setattr__(out, "signature", sig)
        object.__setattr__(out, "rows", tuple(rows))
        return out

    def truncate(self, r: int) -> CTable:
        return CTable(self.row(s) for s in range(1, r + 1))

    def key(self) -> tuple:
        return (len(self.rows),) + tuple(-x for r in reversed(self.rows) for x in r)

    def to_json(self) -> dict:
        return {
            "signature_neg": [str(x) for x in self.signature.neg],
            "signature_nonneg": [str(x) for x in self.signature.nonneg],
            "deviations": {str(r): [str(x) for x in v] for r, v in enumerate(self.rows, 1)},
        }

    def __str__(self) -> str:
        return render_c(self)


AnyCTable = Union[CTable, InfiniteCTable]


def _c_pair_checks(t: AnyCTable, r: int) -> Iterator[tuple]:
    """Conditions linking row ``r`` and row ``r + 1``.

    Yields ``(ok, condition, cell, template, args, value, target)``; the message
    is only formatted for failures.
    """
    M = t.entry
    if r % 2 == 0:
        k = r // 2
        for i in list(range(-k, 0)) + list(range(1, k)):
            d = M(i, r + 1) - M(i, r)
            yield is_zplus(d), "betweenness", (i, r), "M_{},{} - M_{},{}", (i, r + 1, i, r), d, "Z+"
        for i in list(range(-k + 1, 0)) + list(range(2, k + 1)):
            d = M(i - 1, r) - M(i, r + 1)
            yield is_zplus(d), "betweenness", (i - 1, r), "M_{},{} - M_{},{}", (i - 1, r, i, r + 1), d, "Z+"
        d = M(-1, r) - M(1, r + 1)
        yield is_natural(d), "betweenness", (-1, r), "M_-1,{} - M_1,{}", (r, r + 1), d, "N"
        psi = M(0, r + 1) - M(0, r)
        yield psi in (0, 1), "psi", (0, r), "psi_{}", (r,), psi, "{0, 1}"
    else:
        k = (r + 1) // 2
        if k >= 2:
            for i in list(range(-k + 1, 0)) + list(range(1, k)):
                d = M(i, r) - M(i, r + 1)
                yield is_zplus(d), "betweenness", (i, r), "M_{},{} - M_{},{}", (i, r, i, r + 1), d, "Z+"
            for i in list(range(-k + 1, 0)) + list(range(2, k)):
                d = M(i - 1, r + 1) - M(i, r)
                yield is_zplus(d), "betweenness", (i, r), "M_{},{} - M_{},{}", (i - 1, r + 1, i, r), d, "Z+"
            d = M(-1, r + 1) - M(1, r)
            yield is_natural(d), "betweenness", (1, r), "M_-1,{} - M_1,{}", (r + 1, r), d, "N"
        psi = M(0, r + 1) - M(0, r)
        yield psi in (0, -1), "psi", (0, r), "psi_{}", (r,), psi, "{0, -1}"


def _c_pair_violations(t: AnyCTable, r: int) -> list[Violation]:
    return [
        Violation(cond, cell, f"{tpl.format(*args)} = {val} not in {target}")
        for ok, cond, cell, tpl, args, val, target in _c_pair_checks(t, r)
        if not ok
    ]


def c_validate(table: AnyCTable) -> list[Violation]:
    out: list[Violation] = []
    if isinstance(table, CTable):
        top = table.height
        try:
            CSignature(table.rows[-1])
        except MalformedSignature as exc:
            out.append(Violation("signature", (top,), str(exc)))
    else:
        top = table.depth + 1
    for r in range(1, top):
        out.extend(_c_pair_violations(table, r))
    return out


def c_pair_ok(table: AnyCTable, r: int) -> bool:
    return all(check[0] for check in _c_pair_checks(table, r))


def c_highest_table(sig: CSignature | InfiniteCSignature) -> AnyCTable:
    if isinstance(sig, InfiniteCSignature):
        return InfiniteCTable(sig, ())
    return CTable(sig.restrict(r) for r in range(1, sig.length + 1))


def stability_index(table: InfiniteGzTable | InfiniteCTable) -> int:
    return table.stability_index


def require_valid(table) -> None:
    bad = gz_validate(table) if isinstance(table, (GzTable, InfiniteGzTable)) else c_validate(table)
    if bad:
        raise InvalidTable(bad)


# ---------------------------------------------------------------------------
# text rendering
# ---------------------------------------------------------------------------


def _render_rows(rows: list[list[str]], offsets: list[int]) -> str:
    width = max(len(x) for r in rows for x in r) + 1
    lines = []
    for vals, off in zip(rows, offsets):
        lines.append(" " * (off * (width // 2 + 1)) + " ".join(x.rjust(width) for x in vals))
    return "\n".join(line.rstrip() for line in lines)


def render_gz(t: AnyGzTable) -> str:
    if isinstance(t, GzTable):
        top = t.height
        rows = [[str(x) for x in t.row(j)] for j in range(top, 0, -1)]
        return _render_rows(rows, [0] * top)
    top = t.stability_index + 1
    rows = [[str(x) for x in t.row(j)] + ["..."] for j in range(top, 0, -1)]
    return "[" + ", ".join(str(x) for x in t.signature.prefix(top)) + ", ...]\n" + _render_rows(rows, [0] * top)


def render_c(t: AnyCTable) -> str:
    top = t.height if isinstance(t, CTable) else t.depth + 1
    maxk = top // 2
    rows, offs = [], []
    for r in range(top, 0, -1):
        rows.append([str(x) for x in t.row(r)])
        offs.append(maxk - r // 2)
    return _render_rows(rows, offs)
