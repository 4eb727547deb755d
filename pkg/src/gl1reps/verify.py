"""Exact consistency checks: supercommutator relations, highest weights,
GZ <-> C equivariance and a reachability probe for irreducibility.

Every check returns :class:`CheckReport` objects.  A failing report carries
the first counterexample found (generator pair, table, both sides).
"""
from __future__ import annotations

import json
import random
from collections import deque
from dataclasses import asdict, dataclass
from typing import Callable, Iterable, Sequence

from .c_rep import (
    CModule,
    c_act,
    c_act_cartan,
    c_act_chevalley_infinite,
    chevalley_generators,
    chevalley_rows,
    is_chevalley,
)
from .gz_rep import GzModule, gz_act, gz_act_cartan
from .isomap import phi
from .tables import (
    CSignature,
    GzSignature,
    InfiniteCSignature,
    InfiniteCTable,
    InfiniteGzSignature,
    InfiniteGzTable,
    c_highest_table,
    c_is_essentially_typical,
    gz_enumerate,
    gz_highest_table,
    gz_is_essentially_typical,
)
from .errors import Gl1RepsError, NotEssentiallyTypical
from .vector import E, GeneratorId, SparseMatrix, SparseVector, e, super_sign

DEFAULT_SEED = 7
DEFAULT_DEPTH = 6
DEFAULT_SAMPLE = 100


@dataclass
class CheckReport:
    check: str
    instance: str
    passed: bool
    checked: int = 0
    counterexample: dict | None = None
    detail: str = ""

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True)

    def summary(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        line = f"{status} {self.check} {self.instance} ({self.checked} checks)"
        if self.detail:
            line += f" {self.detail}"
        return line


def _bracket(x: SparseVector, y: SparseVector, sign: int) -> SparseVector:
    return x - y if sign > 0 else x + y


def _table_json(t) -> dict:
    return t.to_json()


def _counterexample(a: GeneratorId, b: GeneratorId, t, lhs, rhs) -> dict:
    return {
        "pair": [str(a), str(b)],
        "table": _table_json(t),
        "lhs": lhs.render(),
        "rhs": rhs.render(),
    }


# ---------------------------------------------------------------------------
# relations on finite modules (matrix level)
# ---------------------------------------------------------------------------


def _error_report(name: str, instance: str, checked: int, gens, tables, act, exc: Exception) -> CheckReport:
    """Turn an exception raised mid-check into a report naming the generator and table that raise it."""
    for t in tables:
        for gen in gens:
            try:
                act(gen, t)
            except Gl1RepsError as inner:
                ce = {"generator": str(gen), "table": _table_json(t), "error": f"{type(inner).__name__}: {inner}"}
                return CheckReport(name, instance, False, checked, ce)
    return CheckReport(name, instance, False, checked, {"error": f"{type(exc).__name__}: {exc}"})


def _matrix_relations(
    name: str,
    instance: str,
    gens: Sequence[GeneratorId],
    matrix: Callable[[GeneratorId], SparseMatrix],
    make: Callable[[int, int], GeneratorId],
    basis: Sequence,
    act: Callable,
) -> CheckReport:
    try:
        return _matrix_relations_unsafe(name, instance, gens, matrix, make, basis)
    except Gl1RepsError as exc:
        return _error_report(name, instance, 0, gens, basis, act, exc)


def _matrix_relations_unsafe(
    name: str,
    instance: str,
    gens: Sequence[GeneratorId],
    matrix: Callable[[GeneratorId], SparseMatrix],
    make: Callable[[int, int], GeneratorId],
    basis: Sequence,
) -> CheckReport:
    checked = 0
    dim = len(basis)
    for a in gens:
        for b in gens:
            s = super_sign(a, b)
            A, B = matrix(a), matrix(b)
            lhs = (A @ B) - (B @ A) if s > 0 else (A @ B) + (B @ A)
            rhs = SparseMatrix(dim)
            if a.j == b.i:
                rhs = rhs + matrix(make(a.i, b.j))
            if b.j == a.i:
                m = matrix(make(b.i, a.j))
                rhs = rhs - m if s > 0 else rhs + m
            checked += dim
            if lhs != rhs:
                for c in range(dim):
                    if lhs.cols.get(c, {}) != rhs.cols.get(c, {}):
                        col = lambda M: SparseVector({basis[r]: v for r, v in M.cols.get(c, {}).items()})  # noqa: E731
                        ce = _counterexample(a, b, basis[c], col(lhs), col(rhs))
                        return CheckReport(name, instance, False, checked, ce)
    return CheckReport(name, instance, True, checked)


def check_relations_gz_finite(sig: GzSignature | Sequence, bound: int | None = None) -> CheckReport:
    """All pairs ``e(i,j)``, ``e(k,l)`` with indices up to ``bound`` (default: all) on the full basis."""
    mod = GzModule(sig if isinstance(sig, GzSignature) else GzSignature(sig))
    top = mod.rank + 1 if bound is None else min(bound, mod.rank + 1)
    gens = [e(i, j) for i in range(1, top + 1) for j in range(1, top + 1)]
    return _matrix_relations(
        "relations.gz", f"{mod.signature} dim={mod.dim}", gens, mod.matrix, e, mod.basis, gz_act
    )


def check_relations_c_finite(sig: CSignature | Sequence, bound: int | None = None) -> CheckReport:
    mod = CModule(sig)
    w = [i for i in mod.window if bound is None or abs(i) <= bound]
    gens = [E(a, b) for a in w for b in w]
    return _matrix_relations(
        "relations.c", f"{mod.signature} dim={mod.dim}", gens, mod.matrix, E, mod.basis, c_act
    )


# ---------------------------------------------------------------------------
# sampling of infinite tables
# ---------------------------------------------------------------------------


def sample_tables(
    highest,
    lowering: Sequence[GeneratorId],
    act: Callable,
    count: int = DEFAULT_SAMPLE,
    depth: int = DEFAULT_DEPTH,
    seed: int = DEFAULT_SEED,
    max_stability: int | None = None,
) -> list:
    """Distinct tables reached by seeded random walks of lowering generators.

    Each walk starts at ``highest``, takes up to ``depth`` steps and at each
    step follows one term (chosen at random in key order) of the image.
    """
    rng = random.Random(seed)
    out, seen = [], set()
    attempts = 0
    while len(out) < count and attempts < 50 * count:
        attempts += 1
        t = highest
        for _ in range(rng.randint(0, depth)):
            v = act(rng.choice(lowering), t)
            if not v:
                continue
            t = rng.choice(sorted(v.keys(), key=lambda x: x.key()))
        if max_stability is not None and t.stability_index > max_stability:
            continue
        if t not in seen:
            seen.add(t)
            out.append(t)
    return out


def _vector_relations(
    name: str,
    instance: str,
    gens: Sequence[GeneratorId],
    tables: Iterable,
    act: Callable,
    rhs_act: Callable,
    make: Callable[[int, int], GeneratorId],
) -> CheckReport:
    checked = 0
    for t in tables:
        try:
            images = {x: act(x, t) for x in gens}
        except Gl1RepsError as exc:
            return _error_report(name, instance, checked, gens, [t], act, exc)
        for a in gens:
            for b in gens:
                s = super_sign(a, b)
                try:
                    lhs = _bracket(act(a, images[b]), act(b, images[a]), s)
                    rhs = SparseVector()
                    if a.j == b.i:
                        rhs = rhs + rhs_act(make(a.i, b.j), t)
                    if b.j == a.i:
                        rhs = _bracket(rhs, rhs_act(make(b.i, a.j), t), s)
                except Gl1RepsError as exc:
                    ce = {"pair": [str(a), str(b)], "table": _table_json(t), "error": f"{type(exc).__name__}: {exc}"}
                    return CheckReport(name, instance, False, checked + 1, ce)
                checked += 1
                if lhs != rhs:
                    return CheckReport(name, instance, False, checked, _counterexample(a, b, t, lhs, rhs))
    return CheckReport(name, instance, True, checked)


def gz_lowering(bound: int) -> list[GeneratorId]:
    return [e(k + 1, k) for k in range(1, bound)]


def sample_gz_infinite(
    sig: InfiniteGzSignature, bound: int, count: int = DEFAULT_SAMPLE, depth: int = DEFAULT_DEPTH, seed: int = DEFAULT_SEED
) -> list[InfiniteGzTable]:
    return sample_tables(gz_highest_table(sig), gz_lowering(bound), gz_act, count, depth, seed)


def sample_c_infinite(
    sig: InfiniteCSignature, bound: int, count: int = DEFAULT_SAMPLE, depth: int = DEFAULT_DEPTH, seed: int = DEFAULT_SEED
) -> list[InfiniteCTable]:
    lowering = [E(k + 1, k) for k in range(-bound, bound)]
    return sample_tables(
        c_highest_table(sig), lowering, c_act_chevalley_infinite, count, depth, seed, max_stability=bound
    )


def check_relations_gz_infinite(
    sig: InfiniteGzSignature, bound: int, count: int = DEFAULT_SAMPLE, depth: int = DEFAULT_DEPTH, seed: int = DEFAULT_SEED
) -> CheckReport:
    if not gz_is_essentially_typical(sig):
        raise NotEssentiallyTypical(str(sig))
    tables = sample_gz_infinite(sig, bound, count, depth, seed)
    gens = [e(i, j) for i in range(1, bound + 1) for j in range(1, bound + 1)]
    return _vector_relations(
        "relations.gz_infinite", f"{sig} bound={bound} tables={len(tables)}", gens, tables, gz_act, gz_act, e
    )


def _c_rhs(gen: GeneratorId, t) -> SparseVector:
    """Right-hand sides: closed forms where they exist, the g-bracketing otherwise."""
    return c_act_chevalley_infinite(gen, t) if is_chevalley(gen) else c_act(gen, t)


def check_relations_c_infinite(
    sig: InfiniteCSignature,
    bound: int,
    count: int = DEFAULT_SAMPLE,
    depth: int = DEFAULT_DEPTH,
    seed: int = DEFAULT_SEED,
    tables: Sequence[InfiniteCTable] | None = None,
) -> CheckReport:
    """Chevalley pairs with indices in ``[-bound; bound]`` on sampled finitely deviating tables."""
    if not c_is_essentially_typical(sig):
        raise NotEssentiallyTypical(str(sig))
    if tables is None:
        tables = sample_c_infinite(sig, bound, count, depth, seed)
    gens = chevalley_generators(bound)
    return _vector_relations(
        "relations.c_infinite",
        f"{sig} bound={bound} tables={len(tables)}",
        gens,
        tables,
        c_act_chevalley_infinite,
        _c_rhs,
        E,
    )


def check_relations(rep: str, sig, bound: int | None = None, **kw) -> list[CheckReport]:
    """Dispatch on ``rep`` in ``gz``, ``gz_infinite``, ``c``, ``c_infinite``."""
    if rep == "gz":
        return [check_relations_gz_finite(sig, bound)]
    if rep == "c":
        return [check_relations_c_finite(sig, bound)]
    if rep == "gz_infinite":
        return [check_relations_gz_infinite(sig, bound or 4, **kw)]
    if rep == "c_infinite":
        return [check_relations_c_infinite(sig, bound or 4, **kw)]
    raise ValueError(f"unknown representation {rep!r}")


# ---------------------------------------------------------------------------
# highest weights
# ---------------------------------------------------------------------------


def _hw_report(name: str, instance: str, raising, cartan, act, eig, h) -> CheckReport:
    checked = 0
    for gen in raising:
        v = act(gen, h)
        checked += 1
        if v:
            return CheckReport(name, instance, False, checked, {"generator": str(gen), "image": v.render()})
    weights = []
    for i, expected in cartan:
        got = eig(i, h)
        checked += 1
        weights.append(str(got))
        if got != expected:
            return CheckReport(
                name, instance, False, checked, {"cartan": i, "expected": str(expected), "got": str(got)}
            )
    return CheckReport(name, instance, True, checked, detail="weight=(" + ", ".join(weights) + ")")


def check_highest_weight(rep: str, sig, bound: int = 4) -> list[CheckReport]:
    """Raising generators kill the highest table and its weight is the signature."""
    if rep == "gz":
        sig = sig if isinstance(sig, GzSignature) else GzSignature(sig)
        n = sig.rank + 1
        return [
            _hw_report(
                "hwv.gz", str(sig),
                [e(k, k + 1) for k in range(1, n)],
                [(i, sig.label(i)) for i in range(1, n + 1)],
                gz_act, gz_act_cartan, gz_highest_table(sig),
            )
        ]
    if rep == "gz_infinite":
        return [
            _hw_report(
                "hwv.gz_infinite", f"{sig} bound={bound}",
                [e(k, k + 1) for k in range(1, bound + 1)],
                [(i, sig.label(i)) for i in range(1, bound + 2)],
                gz_act, gz_act_cartan, gz_highest_table(sig),
            )
        ]
    if rep == "c":
        sig = sig if isinstance(sig, CSignature) else CSignature(sig)
        w = list(sig.window)
        return [
            _hw_report(
                "hwv.c", str(sig),
                [E(a, a + 1) for a in w[:-1]],
                [(i, sig.label(i)) for i in w],
                c_act, c_act_cartan, c_highest_table(sig),
            )
        ]
    if rep == "c_infinite":
        return [
            _hw_report(
                "hwv.c_infinite", f"{sig} bound={bound}",
                [E(a, a + 1) for a in range(-bound, bound)],
                [(i, sig.label(i)) for i in range(-bound, bound + 1)],
                c_act_chevalley_infinite, c_act_cartan, c_highest_table(sig),
            )
        ]
    raise ValueError(f"unknown representation {rep!r}")


# ---------------------------------------------------------------------------
# equivariance and reachability
# ---------------------------------------------------------------------------


def check_equivariance(sig: CSignature | Sequence, generators: Sequence[GeneratorId] | None = None) -> CheckReport:
    """C matrices against the permuted GZ matrices of their ``phi`` images."""
    mod = CModule(sig)
    gens = list(generators) if generators is not None else mod.generators()
    checked = 0
    for gen in gens:
        c_mat = mod.matrix(gen)
        gz_mat = mod.gz_module.matrix(phi(gen)).permuted(mod.gz_to_c)
        checked += 1
        if c_mat != gz_mat:
            for r, c, v in gz_mat.entries() + c_mat.entries():
                if c_mat.get(r, c) != gz_mat.get(r, c):
                    ce = {
                        "generator": str(gen),
                        "image": str(phi(gen)),
                        "row": mod.basis[r].to_json(),
                        "column": mod.basis[c].to_json(),
                        "c_entry": str(c_mat.get(r, c)),
                        "gz_entry": str(gz_mat.get(r, c)),
                    }
                    return CheckReport("equivariance", f"{mod.signature} dim={mod.dim}", False, checked, ce)
    return CheckReport("equivariance", f"{mod.signature} dim={mod.dim}", True, checked)


def check_irreducibility_probe(sig: GzSignature | Sequence) -> CheckReport:
    """Breadth-first closure of the highest table under the Chevalley generators covers the basis."""
    sig = sig if isinstance(sig, GzSignature) else GzSignature(sig)
    basis = set(gz_enumerate(sig))
    n = sig.rank + 1
    gens = [e(k, k + 1) for k in range(1, n)] + [e(k + 1, k) for k in range(1, n)]
    start = gz_highest_table(sig)
    seen = {start}
    queue = deque([start])
    while queue:
        t = queue.popleft()
        for gen in gens:
            for u in gz_act(gen, t).keys():
                if u not in seen:
                    seen.add(u)
                    queue.append(u)
    ok = seen == basis
    detail = f"reached {len(seen)} of {len(basis)}"
    ce = None if ok else {"missing": [t.to_json() for t in sorted(basis - seen, key=lambda x: x.key())[:3]]}
    return CheckReport("irreducibility", str(sig), ok, len(seen), ce, detail)


def check_locality(sig: InfiniteCSignature, tables: Sequence[InfiniteCTable], bound: int) -> CheckReport:
    """Each Chevalley image only deviates on the table's rows plus the rows the generator touches."""
    checked = 0
    for t in tables:
        for gen in chevalley_generators(bound):
            rows = chevalley_rows(gen)
            limit = max(t.stability_index, (max(rows) + 1) // 2 if rows else 0)
            for u in c_act_chevalley_infinite(gen, t).keys():
                checked += 1
                if u.stability_index > limit:
                    ce = {"generator": str(gen), "table": t.to_json(), "image": u.to_json(), "limit": limit}
                    return CheckReport("locality", str(sig), False, checked, ce)
    return CheckReport("locality", str(sig), True, checked)


__all__ = [
    "CheckReport",
    "check_equivariance",
    "check_highest_weight",
    "check_irreducibility_probe",
    "check_locality",
    "check_relations",
    "check_relations_c_finite",
    "check_relations_c_infinite",
    "check_relations_gz_finite",
    "check_relations_gz_infinite",
    "sample_c_infinite",
    "sample_gz_infinite",
]
