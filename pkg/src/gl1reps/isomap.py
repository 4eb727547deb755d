"""The index bijection ``g``, the isomorphism ``phi`` and GZ <-> C table relabeling."""
from __future__ import annotations

from .errors import IndexOutOfRange
from .vector import GeneratorId, e, E


def theta(z: int) -> int:
    return 1 if z >= 0 else 0


def g(z: int) -> int:
    """``2|z| + theta(z)``: 0, -1, 1, -2, 2, ... go to 1, 2, 3, 4, 5, ..."""
    return 2 * abs(z) + theta(z)


def g_inv(n: int) -> int:
    if n < 1:
        raise IndexOutOfRange(f"g^-1({n}) undefined; g takes values in 1, 2, 3, ...")
    return n // 2 if n % 2 else -(n // 2)


def phi(gen: GeneratorId) -> GeneratorId:
    if gen.convention != "glz":
        raise ValueError(f"{gen} is not a gl(inf|1|inf) generator")
    return e(g(gen.i), g(gen.j))


def phi_inv(gen: GeneratorId) -> GeneratorId:
    if gen.convention != "gl0":
        raise ValueError(f"{gen} is not a gl0 generator")
    return E(g_inv(gen.i), g_inv(gen.j))


def table_gz_to_c(t):
    """Relabel every row of a valid finite GZ table; the result is the same basis vector."""
    from .c_rep import gz_row_to_c
    from .tables import CTable, GzTable, require_valid

    if not isinstance(t, GzTable):
        raise TypeError("only finite GZ tables have a C-table counterpart")
    require_valid(t)
    return CTable(gz_row_to_c(row) for row in t.rows)


def table_c_to_gz(t):
    from .c_rep import c_row_to_gz
    from .tables import CTable, GzTable, require_valid

    if not isinstance(t, CTable):
        raise TypeError("only finite C-tables have a GZ counterpart")
    require_valid(t)
    return GzTable(c_row_to_gz(row) for row in t.rows)
