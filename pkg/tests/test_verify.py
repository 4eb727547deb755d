from __future__ import annotations

import json
from fractions import Fraction

import pytest

from gl1reps.coefficients import mutated_factor, seen_slots
from gl1reps.errors import NotEssentiallyTypical
from gl1reps.tables import InfiniteCSignature, InfiniteGzSignature
from gl1reps.vector import E
from gl1reps.verify import (
    CheckReport,
    check_equivariance,
    check_highest_weight,
    check_irreducibility_probe,
    check_locality,
    check_relations,
    check_relations_c_infinite,
    sample_c_infinite,
)

H = Fraction(1, 2)
GZ_RAISE = "gz.e(i,i+1)"
INF_RAISE = "inf.E(k,k+1)"
SIG = InfiniteCSignature([1, 3, 6], [H, -1, -3, -4])


def test_report_json_and_summary():
    r = CheckReport("relations.gz", "[1/2, 3] dim=2", True, 16)
    assert r.summary() == "PASS relations.gz [1/2, 3] dim=2 (16 checks)"
    assert json.loads(r.to_json())["passed"] is True


def test_relations_small():
    [r] = check_relations("gz", [H, 3], 2)
    assert r.passed and r.checked == 32
    [r] = check_relations("gz", [H, 2, 0], 3)
    assert r.passed and r.checked == 81 * 12


def test_unknown_rep():
    with pytest.raises(ValueError):
        check_relations("nope", [H, 3])


def test_highest_weight_reports():
    [r] = check_highest_weight("gz", [H, 3])
    assert r.passed and r.detail == "weight=(1/2, 3)"
    [r] = check_highest_weight("c", [4, -H])
    assert r.passed and r.detail == "weight=(4, -1/2)"
    assert check_highest_weight("gz_infinite", InfiniteGzSignature([H], 0))[0].passed
    assert check_highest_weight("c_infinite", SIG)[0].passed


def test_equivariance_examples():
    assert check_equivariance([4, -H], [E(0, -1), E(-1, 0)]).passed
    assert check_equivariance([3, -H, 0]).passed


def test_irreducibility():
    assert check_irreducibility_probe([H, 3]).detail == "reached 2 of 2"
    assert check_irreducibility_probe([H, 2, 0]).detail == "reached 12 of 12"
    assert check_irreducibility_probe([Fraction(2, 3)]).passed


def test_atypical_infinite_refused():
    with pytest.raises(NotEssentiallyTypical):
        check_relations_c_infinite(InfiniteCSignature([2], [1, 0]), 2)


def test_sampling_is_deterministic():
    a = sample_c_infinite(SIG, 3, count=20, seed=11)
    b = sample_c_infinite(SIG, 3, count=20, seed=11)
    assert a == b and len(a) == 20
    assert sample_c_infinite(SIG, 3, count=20, seed=12) != a


def test_fault_in_gz_formula_is_caught():
    check_relations("gz", [Fraction(1, 3), 2, 1, 0])
    assert "sqrt.den.a" in seen_slots(GZ_RAISE)
    with mutated_factor(GZ_RAISE, "sqrt.den.a"):
        [r] = check_relations("gz", [Fraction(1, 3), 2, 1, 0])
    assert not r.passed
    assert set(r.counterexample) >= {"table"}
    assert check_relations("gz", [Fraction(1, 3), 2, 1, 0])[0].passed


def test_fault_in_infinite_formula_is_caught():
    tables = sample_c_infinite(SIG, 3, count=30)
    assert check_relations_c_infinite(SIG, 3, tables=tables).passed
    with mutated_factor(INF_RAISE, "T4.rat.num.c"):
        r = check_relations_c_infinite(SIG, 3, tables=tables)
    assert not r.passed
    assert r.counterexample["table"]["signature_nonneg"] == ["1/2", "-1", "-3", "-4"]


def test_locality():
    tables = sample_c_infinite(SIG, 3, count=30)
    r = check_locality(SIG, tables, 3)
    assert r.passed and r.checked > 0
