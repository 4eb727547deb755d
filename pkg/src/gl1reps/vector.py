"""Generator labels, module elements and sparse matrices over RadicalScalar."""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Hashable, Iterable, Iterator, Mapping, Sequence

from .scalar import ZERO, RadicalScalar


@dataclass(frozen=True, order=True)
class GeneratorId:
    """``e(i, j)`` of gl0(1|N) (``convention="gl0"``) or ``E(i, j)`` of gl(inf|1|inf) (``"glz"``)."""

    convention: str
    i: int
    j: int

    def __post_init__(self):
        if self.convention not in ("gl0", "glz"):
            raise ValueError(f"unknown convention {self.convention!r}")
        if self.convention == "gl0" and (self.i < 1 or self.j < 1):
            raise ValueError("gl0 generator indices start at 1")

    @property
    def distinguished(self) -> int:
        return 1 if self.convention == "gl0" else 0

    @property
    def parity(self) -> int:
        d = self.distinguished
        return int((self.i == d) != (self.j == d))

    @property
    def is_cartan(self) -> bool:
        return self.i == self.j

    def __str__(self) -> str:
        letter = "e" if self.convention == "gl0" else "E"
        return f"{letter}({self.i},{self.j})"

    @classmethod
    def parse(cls, text: str) -> "GeneratorId":
        """Accepts ``e,1,2`` / ``e(1,2)`` / ``E,0,-1`` / ``E(0,-1)``."""
        m = re.fullmatch(r"\s*([eE])\s*[,(]\s*(-?\d+)\s*,\s*(-?\d+)\s*\)?\s*", text)
        if not m:
            raise ValueError(f"cannot parse generator {text!r}")
        conv = "gl0" if m.group(1) == "e" else "glz"
        return cls(conv, int(m.group(2)), int(m.group(3)))


def e(i: int, j: int) -> GeneratorId:
    return GeneratorId("gl0", i, j)


def E(i: int, j: int) -> GeneratorId:
    return GeneratorId("glz", i, j)


def super_sign(a: GeneratorId, b: GeneratorId) -> int:
    """``(-1)^(deg a * deg b)``."""
    return -1 if a.parity and b.parity else 1


class SparseVector:
    """Finite linear combination of basis tables with RadicalScalar coefficients."""

    __slots__ = ("_c",)

    def __init__(self, entries: Mapping[Hashable, RadicalScalar] | None = None):
        self._c = {k: v for k, v in (entries or {}).items() if v}

    @classmethod
    def basis(cls, table: Hashable) -> "SparseVector":
        return cls({table: RadicalScalar.rational(1)})

    @classmethod
    def _raw(cls, d: dict) -> "SparseVector":
        v = cls.__new__(cls)
        v._c = d
        return v

    def items(self):
        return self._c.items()

    def keys(self):
        return self._c.keys()

    def coefficient(self, table) -> RadicalScalar:
        return self._c.get(table, ZERO)

    def __len__(self) -> int:
        return len(self._c)

    def __iter__(self) -> Iterator:
        return iter(self._c)

    def __bool__(self) -> bool:
        return bool(self._c)

    def __add__(self, other: "SparseVector") -> "SparseVector":
        out = dict(self._c)
        for k, v in other._c.items():
            s = out.get(k)
            s = v if s is None else s + v
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return SparseVector._raw(out)

    def __neg__(self) -> "SparseVector":
        return SparseVector._raw({k: -v for k, v in self._c.items()})

    def __sub__(self, other: "SparseVector") -> "SparseVector":
        return self + (-other)

    def scale(self, c) -> "SparseVector":
        if not c:
            return SparseVector()
        return SparseVector._raw({k: v * c for k, v in self._c.items()})

    def __mul__(self, c) -> "SparseVector":
        return self.scale(c)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if isinstance(other, SparseVector):
            return self._c == other._c
        if other == 0:
            return not self._c
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self._c.items()))

    def render(self) -> str:
        if not self._c:
            return "0"
        return " + ".join(f"({v})*{_short(k)}" for k, v in sorted(self._c.items(), key=lambda kv: kv[0].key()))

    def __repr__(self) -> str:
        return f"SparseVector({self.render()})"


def _short(table) -> str:
    rows = getattr(table, "rows", ())
    return "|" + "/".join(",".join(str(x) for x in r) for r in rows) + ">"


class Accumulator:
    """Mutable builder for SparseVector results."""

    __slots__ = ("d",)

    def __init__(self):
        self.d: dict = {}

    def add(self, key, c: RadicalScalar) -> None:
        if not c:
            return
        s = self.d.get(key)
        if s is None:
            self.d[key] = c
        else:
            s = s + c
            if s:
                self.d[key] = s
            else:
                del self.d[key]

    def add_vector(self, v: SparseVector, c=None) -> None:
        for k, x in v.items():
            self.add(k, x if c is None else x * c)

    def vector(self) -> SparseVector:
        return SparseVector._raw(self.d)


# ---------------------------------------------------------------------------
# sparse matrices
# ---------------------------------------------------------------------------


class SparseMatrix:
    """Column-sparse square matrix: ``cols[c] = {row: value}``."""

    __slots__ = ("dim", "cols")

    def __init__(self, dim: int, cols: dict[int, dict[int, RadicalScalar]] | None = None):
        self.dim = dim
        self.cols = {c: col for c, col in (cols or {}).items() if col}

    @classmethod
    def from_action(cls, basis: Sequence, index: Mapping, action) -> "SparseMatrix":
        cols = {}
        for c, t in enumerate(basis):
            col = {}
            for k, v in action(t).items():
                col[index[k]] = v
            if col:
                cols[c] = col
        return cls(len(basis), cols)

    def get(self, r: int, c: int) -> RadicalScalar:
        return self.cols.get(c, {}).get(r, ZERO)

    def entries(self) -> list[tuple[int, int, RadicalScalar]]:
        return sorted((r, c, v) for c, col in self.cols.items() for r, v in col.items())

    def nnz(self) -> int:
        return sum(len(col) for col in self.cols.values())

    def __matmul__(self, other: "SparseMatrix") -> "SparseMatrix":
        out: dict[int, dict[int, RadicalScalar]] = {}
        mine = self.cols
        for c, col in other.cols.items():
            acc: dict[int, RadicalScalar] = {}
            for k, b in col.items():
                a_col = mine.get(k)
                if not a_col:
                    continue
                for r, a in a_col.items():
                    p = a * b
                    s = acc.get(r)
                    if s is None:
                        acc[r] = p
                    else:
                        s = s + p
                        if s:
                            acc[r] = s
                        else:
                            del acc[r]
            if acc:
                out[c] = acc
        return SparseMatrix(self.dim, out)

    def _combine(self, other: "SparseMatrix", sign: int) -> "SparseMatrix":
        out = {c: dict(col) for c, col in self.cols.items()}
        for c, col in other.cols.items():
            tgt = out.setdefault(c, {})
            for r, v in col.items():
                s = tgt.get(r)
                s = (v if sign > 0 else -v) if s is None else (s + v if sign > 0 else s - v)
                if s:
                    tgt[r] = s
                else:
                    tgt.pop(r, None)
        return SparseMatrix(self.dim, out)

    def __add__(self, other: "SparseMatrix") -> "SparseMatrix":
        return self._combine(other, 1)

    def __sub__(self, other: "SparseMatrix") -> "SparseMatrix":
        return self._combine(other, -1)

    def scale(self, c) -> "SparseMatrix":
        if not c:
            return SparseMatrix(self.dim)
        return SparseMatrix(self.dim, {k: {r: v * c for r, v in col.items()} for k, col in self.cols.items()})

    def permuted(self, perm: Sequence[int]) -> "SparseMatrix":
        """Relabel basis index ``a`` as ``perm[a]`` on both sides."""
        return SparseMatrix(
            self.dim, {perm[c]: {perm[r]: v for r, v in col.items()} for c, col in self.cols.items()}
        )

    def __eq__(self, other) -> bool:
        if not isinstance(other, SparseMatrix):
            return NotImplemented
        return self.dim == other.dim and self.cols == other.cols

    def dense(self) -> list[list[RadicalScalar]]:
        return [[self.get(r, c) for c in range(self.dim)] for r in range(self.dim)]

    def to_json(self, order: Iterable | None = None) -> dict:
        return {
            "dim": self.dim,
            "order": list(order) if order is not None else list(range(self.dim)),
            "entries": [[r, c, v.to_json()] for r, c, v in self.entries()],
        }

    @classmethod
    def from_json(cls, data: dict) -> "SparseMatrix":
        cols: dict[int, dict[int, RadicalScalar]] = {}
        for r, c, v in data["entries"]:
            cols.setdefault(c, {})[r] = RadicalScalar.from_json(v)
        return cls(data["dim"], cols)

    def __repr__(self) -> str:
        return f"SparseMatrix(dim={self.dim}, nnz={self.nnz()})"


def identity(dim: int) -> SparseMatrix:
    one = RadicalScalar.rational(1)
    return SparseMatrix(dim, {c: {c: one} for c in range(dim)})


def supercommutator(a: SparseMatrix, b: SparseMatrix, sign: int) -> SparseMatrix:
    """``a b - sign * b a``."""
    ab = a @ b
    ba = b @ a
    return ab - ba if sign > 0 else ab + ba
