"""Acceptance criteria 1 to 8; each test prints one ``PASS``/``FAIL`` line.

Run directly (``python3 tests/test_acceptance.py``) or through pytest, where
the lines are also repeated in the terminal summary.
"""
from __future__ import annotations

import sys
import time
from fractions import Fraction
from functools import lru_cache
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent))

from gl1reps.c_rep import signature_gz_to_c  # noqa: E402
from gl1reps.coefficients import mutated_factor, seen_slots  # noqa: E402
from gl1reps.gz_rep import GzModule  # noqa: E402
from gl1reps.reflections import chain_signature  # noqa: E402
from gl1reps.tables import (  # noqa: E402
    GzSignature,
    InfiniteCSignature,
    InfiniteGzSignature,
    c_is_essentially_typical,
    gz_enumerate,
    gz_is_essentially_typical,
)
from gl1reps.verify import (  # noqa: E402
    check_equivariance,
    check_highest_weight,
    check_locality,
    check_relations_c_infinite,
    check_relations_gz_finite,
    sample_c_infinite,
)
from oracles import brute_force_gz, classical_pattern_count, weyl_dimension  # noqa: E402

F = Fraction
H = F(1, 2)
GZ_RAISE = "gz.e(i,i+1)"
INF_RAISE = "inf.E(k,k+1)"

RESULTS: list[str] = []

FINITE = {
    1: [[H, 3], [F(-7, 3), 0], [F(5, 2), -1], [F(1, 5), 4], [3, 0]],
    2: [[H, 2, 0], [F(-5, 2), 1, 0], [F(1, 3), 3, 1], [4, 1, 0], [F(-3, 2), 2, 2]],
    3: [[H, 2, 1, 0], [F(1, 3), 3, 0, 0], [F(-5, 2), 1, 1, -1], [7, 2, 1, 0], [F(3, 4), 2, 0, 0]],
    4: [[H, 1, 0, 0, 0], [F(1, 3), 1, 1, 0, 0], [-H, 2, 1, 0, 0], [9, 1, 0, 0, -1], [F(2, 3), 2, 0, 0, 0]],
}
MAX_DIM = 500
TIME_LIMIT = 300.0

INFINITE_C = [
    InfiniteCSignature([1, 3, 6], [H, -1, -3, -4]),
    InfiniteCSignature([2, 2, 4], [F(1, 3), 0, -2]),
    InfiniteCSignature([0, 1, 2, 3], [F(-5, 2), -1, -2, -3, -4]),
]
INFINITE_GZ = [InfiniteGzSignature([H], 0), InfiniteGzSignature([F(1, 3), 2, 1], 0), InfiniteGzSignature([F(-7, 2), 3, 3, 1], -2)]
BOUND = 4
SAMPLE = 100

# C signatures of gl(n|1|n), written through their GZ labels
EQUIVARIANCE = {
    1: [signature_gz_to_c(s) for s in ([H, 2, 0], [F(1, 3), 3, 1], [F(-5, 2), 1, 0])],
    2: [signature_gz_to_c(s) for s in ([F(1, 3), 1, 1, 0, 0], [-H, 2, 1, 0, 0], [F(5, 2), 1, 0, 0, -1])],
}


def report(n: int, ok: bool, detail: str) -> bool:
    line = f"{'PASS' if ok else 'FAIL'} criterion {n}: {detail}"
    RESULTS.append(line)
    print(line)
    return ok


def all_finite() -> list[list]:
    return [s for sigs in FINITE.values() for s in sigs]


@lru_cache(maxsize=None)
def infinite_samples(index: int) -> tuple:
    return tuple(sample_c_infinite(INFINITE_C[index], BOUND, count=SAMPLE))


@lru_cache(maxsize=None)
def criterion_1_reports() -> tuple[list, float]:
    start = time.perf_counter()
    reports = [check_relations_gz_finite(s) for s in all_finite()]
    return reports, time.perf_counter() - start


@lru_cache(maxsize=None)
def criterion_4_reports() -> list:
    return [
        check_relations_c_infinite(sig, BOUND, tables=infinite_samples(i)) for i, sig in enumerate(INFINITE_C)
    ]


# ---------------------------------------------------------------------------
# criteria
# ---------------------------------------------------------------------------


def test_criterion_1_finite_gz_relations():
    for n, sigs in FINITE.items():
        assert len(sigs) >= 5
        assert any(F(s[0]).denominator == 2 for s in sigs)
        for s in sigs:
            assert gz_is_essentially_typical(GzSignature(s))
            assert len(gz_enumerate(GzSignature(s))) <= MAX_DIM
    reports, elapsed = criterion_1_reports()
    bad = [r for r in reports if not r.passed]
    checks = sum(r.checked for r in reports)
    dims = max(GzModule(GzSignature(s)).dim for s in all_finite())
    ok = report(
        1,
        not bad and elapsed < TIME_LIMIT,
        f"{len(reports)} modules, max dim {dims}, {checks} pair/table checks, {elapsed:.1f}s"
        + (f"; first failure {bad[0].instance}: {bad[0].counterexample}" if bad else ""),
    )
    assert ok


def test_criterion_2_highest_weight():
    reports = []
    for s in all_finite():
        reports += check_highest_weight("gz", s)
        reports += check_highest_weight("c", signature_gz_to_c(s))
    for sig in INFINITE_GZ:
        reports += check_highest_weight("gz_infinite", sig, bound=8)
    for sig in INFINITE_C:
        reports += check_highest_weight("c_infinite", sig, bound=8)
    bad = [r for r in reports if not r.passed]
    ok = report(2, not bad, f"{len(reports)} highest tables" + (f"; {bad[0].summary()} {bad[0].counterexample}" if bad else ""))
    assert ok


def test_criterion_3_equivariance():
    reports = []
    for n, sigs in EQUIVARIANCE.items():
        assert len(sigs) >= 3
        for s in sigs:
            assert s.length == 2 * n + 1
            reports.append(check_equivariance(s))
    bad = [r for r in reports if not r.passed]
    gens = sum(r.checked for r in reports)
    ok = report(3, not bad, f"{len(reports)} modules, {gens} generator matrices" + (f"; {bad[0].counterexample}" if bad else ""))
    assert ok


def test_criterion_4_infinite_c_relations():
    for i, sig in enumerate(INFINITE_C):
        assert c_is_essentially_typical(sig)
        tables = infinite_samples(i)
        assert len(tables) >= SAMPLE
        assert all(t.stability_index <= BOUND for t in tables)
    reports = criterion_4_reports()
    bad = [r for r in reports if not r.passed]
    ok = report(
        4,
        not bad,
        f"{len(reports)} signatures x {SAMPLE} tables, {sum(r.checked for r in reports)} pair/table checks"
        + (f"; {bad[0].instance}: {bad[0].counterexample}" if bad else ""),
    )
    assert ok


def test_criterion_5_odd_reflections():
    cases = 0
    failures = []
    for r in range(1, 8):
        for shift in (F(1, 2), F(-7, 3), F(4)):
            labels = [shift] + [F(r - s) for s in range(1, r)]
            got, _ = chain_signature(labels)
            want = signature_gz_to_c(labels).labels
            cases += 1
            if got != want:
                failures.append((labels, got, want))
    ok = report(5, not failures, f"{cases} signatures over rows 1..7 (k <= 3)" + (f"; {failures[0]}" if failures else ""))
    assert ok


def test_criterion_6_enumeration_oracle():
    mismatches = []
    compared = 0
    for n in (1, 2, 3):
        for s in FINITE[n]:
            compared += 1
            if {t.rows for t in gz_enumerate(GzSignature(s))} != brute_force_gz(s):
                mismatches.append(("oracle", s))
    for s in all_finite():
        dim = len(gz_enumerate(GzSignature(s)))
        even = classical_pattern_count(s[1:])
        if dim != 2 ** (len(s) - 1) * even or even != weyl_dimension(s[1:]):
            mismatches.append(("count", s))
    ok = report(6, not mismatches, f"{compared} oracle comparisons, {len(all_finite())} count identities" + (f"; {mismatches}" if mismatches else ""))
    assert ok


def test_criterion_7_locality():
    reports = [check_locality(sig, infinite_samples(i), BOUND) for i, sig in enumerate(INFINITE_C)]
    bad = [r for r in reports if not r.passed]
    ok = report(7, not bad, f"{sum(r.checked for r in reports)} images over the sampled walks" + (f"; {bad[0].counterexample}" if bad else ""))
    assert ok


def _caught(formula: str, slot: str) -> tuple[bool, str]:
    with mutated_factor(formula, slot):
        if formula == GZ_RAISE:
            for s in all_finite():
                r = check_relations_gz_finite(s)
                if not r.passed:
                    return r.counterexample is not None, r.instance
        else:
            for i, sig in enumerate(INFINITE_C):
                r = check_relations_c_infinite(sig, BOUND, tables=infinite_samples(i))
                if not r.passed:
                    return r.counterexample is not None, r.instance
    return False, ""


def test_criterion_8_fault_detection():
    # populate the slot registry with every factor the two formulas evaluate
    criterion_1_reports()
    criterion_4_reports()
    slots = [(GZ_RAISE, s) for s in seen_slots(GZ_RAISE)] + [(INF_RAISE, s) for s in seen_slots(INF_RAISE)]
    assert len(seen_slots(GZ_RAISE)) >= 9 and len(seen_slots(INF_RAISE)) >= 30
    missed = [f"{f}:{s}" for f, s in slots if not _caught(f, s)[0]]
    ok = report(8, not missed, f"{len(slots) - len(missed)} of {len(slots)} mutated factors caught" + (f"; missed {missed}" if missed else ""))
    assert ok


if __name__ == "__main__":
    tests = [v for k, v in sorted(globals().items()) if k.startswith("test_criterion_")]
    failed = 0
    for fn in tests:
        try:
            fn()
        except AssertionError:
            failed += 1
    sys.exit(1 if failed else 0)
