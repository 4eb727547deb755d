from __future__ import annotations

import json
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gl1reps.errors import GuardExceeded, MalformedSignature, NotEssentiallyTypical
from gl1reps.tables import (
    CSignature,
    CTable,
    GzSignature,
    GzTable,
    InfiniteCSignature,
    InfiniteCTable,
    InfiniteGzSignature,
    InfiniteGzTable,
    c_highest_table,
    c_is_essentially_typical,
    c_validate,
    c_window,
    gz_enumerate,
    gz_highest_table,
    gz_is_essentially_typical,
    gz_validate,
    stability_index,
)
from oracles import brute_force_gz, classical_pattern_count, weyl_dimension

F = Fraction
H = F(1, 2)


class TestTypicality:
    def test_gz_finite(self):
        assert gz_is_essentially_typical(GzSignature([H, 3]))
        assert not gz_is_essentially_typical(GzSignature([0, 1, 0]))

    def test_gz_infinite(self):
        assert gz_is_essentially_typical(InfiniteGzSignature([H], 0))
        assert not gz_is_essentially_typical(InfiniteGzSignature([3], 0))

    def test_c_finite(self):
        assert c_is_essentially_typical(CSignature([4, -H, -2]))

    def test_c_infinite(self):
        assert c_is_essentially_typical(InfiniteCSignature([4], [-H, -2]))
        assert not c_is_essentially_typical(InfiniteCSignature([2], [1, 0]))

    def test_malformed(self):
        with pytest.raises(MalformedSignature):
            GzSignature([0, 1, 2])
        with pytest.raises(MalformedSignature):
            CSignature([2, 3, -H, 1, 0])
        with pytest.raises(MalformedSignature):
            InfiniteCSignature([H], [0, 0])


class TestGzValidation:
    def test_examples(self):
        assert gz_validate(GzTable([[-H], [H, 3]])) == []
        bad = gz_validate(GzTable([[F(3, 2)], [H, 3]]))
        assert [v.condition for v in bad] == ["theta"]
        assert bad[0].cell == (1, 1)
        assert "-1" in bad[0].detail

    def test_highest_is_valid(self):
        assert gz_validate(gz_highest_table(GzSignature([H, 2, 0]))) == []

    def test_betweenness_names_cell(self):
        bad = gz_validate(GzTable([[H], [H, 3], [H, 2, 0]]))
        assert bad and all(v.condition == "betweenness" for v in bad)
        assert bad[0].cell == (2, 2)

    def test_infinite(self):
        sig = InfiniteGzSignature([H, 2, 1], 0)
        t = InfiniteGzTable(sig, [[-H], [H, 1], [H, 2, 1]])
        assert t.stability_index == 2
        assert gz_validate(t) == []
        assert gz_validate(InfiniteGzTable(sig, [[-H], [H, 3]]))


class TestEnumeration:
    def test_two_tables(self):
        tables = gz_enumerate(GzSignature([H, 3]))
        assert [t.rows[0] for t in tables] == [(H,), (-H,)]

    def test_twelve_tables(self):
        assert len(gz_enumerate(GzSignature([H, 2, 0]))) == 12

    def test_atypical_refused(self):
        with pytest.raises(NotEssentiallyTypical):
            gz_enumerate(GzSignature([0, 1, 0]))

    def test_guard(self):
        with pytest.raises(GuardExceeded):
            gz_enumerate(GzSignature([H, 3, 0, 0]), guard=10)

    def test_highest_first_and_sorted(self):
        tables = gz_enumerate(GzSignature([F(1, 3), 2, 1, 0]))
        assert tables[0] == gz_highest_table(GzSignature([F(1, 3), 2, 1, 0]))
        assert tables == sorted(tables, key=lambda t: t.key())
        assert all(gz_validate(t) == [] for t in tables)

    @pytest.mark.parametrize(
        "labels",
        [[H, 3], [F(-7, 3), 0], [H, 2, 0], [F(5, 4), 1, 1], [H, 2, 1, 0], [F(1, 3), 3, 0, 0], [F(-3, 2), 1, 1, -1]],
    )
    def test_matches_brute_force(self, labels):
        got = {t.rows for t in gz_enumerate(GzSignature(labels))}
        assert got == brute_force_gz(labels)


@st.composite
def typical_gz(draw, max_n=3):
    n = draw(st.integers(1, max_n))
    gaps = [draw(st.integers(0, 2)) for _ in range(n - 1)]
    last = draw(st.integers(-2, 2))
    even = [last]
    for g in reversed(gaps):
        even.insert(0, even[0] + g)
    m1 = draw(st.fractions(min_value=-4, max_value=4, max_denominator=6).filter(lambda q: q.denominator != 1))
    return [m1] + even


@settings(max_examples=40, deadline=None)
@given(typical_gz())
def test_count_identity(labels):
    n = len(labels) - 1
    dim = len(gz_enumerate(GzSignature(labels)))
    assert dim == 2**n * classical_pattern_count(labels[1:]) == 2**n * weyl_dimension(labels[1:])


@settings(max_examples=25, deadline=None)
@given(typical_gz())
def test_enumeration_oracle_property(labels):
    got = [t.rows for t in gz_enumerate(GzSignature(labels))]
    assert len(got) == len(set(got))
    assert set(got) == brute_force_gz(labels)
    assert max(got, key=lambda rows: tuple(x for r in reversed(rows) for x in r)) == got[0]


class TestCTables:
    def test_window(self):
        assert list(c_window(1)) == [0]
        assert list(c_window(2)) == [-1, 0]
        assert list(c_window(5)) == [-2, -1, 0, 1, 2]

    def test_validation_examples(self):
        assert c_validate(CTable([[-H], [4, -H]])) == []
        bad = c_validate(CTable([[F(3, 2)], [4, -H]]))
        assert [v.condition for v in bad] == ["psi"]
        assert "-2" in bad[0].detail

    def test_highest(self):
        t = c_highest_table(CSignature([4, -H, -2]))
        assert t.rows == ((-H,), (4, -H), (4, -H, -2))
        assert c_validate(t) == []

    def test_infinite_highest(self):
        sig = InfiniteCSignature([4], [-H, -2])
        t = c_highest_table(sig)
        assert stability_index(t) == 0
        assert t.row(3) == (4, -H, -2)
        assert t.row(4) == (4, 4, -H, -2)
        assert c_validate(t) == []

    def test_stability_recomputed(self):
        sig = InfiniteCSignature([4], [-H, -2])
        t = InfiniteCTable(sig, [[-H], [4, -H], [4, -H, -2]])
        assert t.rows == () and t.stability_index == 0
        t = InfiniteCTable(sig, [[-H], [4, -H], [4, -H, -1]])
        assert t.depth == 3 and t.stability_index == 2
        assert c_validate(t) == []

    def test_gz_infinite_stability(self):
        sig = InfiniteGzSignature([H, 2, 1], 0)
        t = gz_highest_table(sig).shifted(2, 3, -1)
        assert stability_index(t) == 3


class TestJson:
    def test_gz_round_trip(self):
        for t in gz_enumerate(GzSignature([H, 2, 0])):
            assert GzTable.from_json(json.loads(json.dumps(t.to_json()))) == t

    def test_c_round_trip(self):
        t = CTable([[-H], [4, -H]])
        assert CTable.from_json(t.to_json()) == t

    def test_signature_mismatch(self):
        with pytest.raises(ValueError):
            GzTable.from_json({"signature": ["1", "3"], "rows": [["1/2"], ["1/2", "3"]]})

    def test_infinite_layout(self):
        sig = InfiniteCSignature([4], [-H, -2])
        data = InfiniteCTable(sig, [[-H], [4, -H], [4, -H, -1]]).to_json()
        assert data == {
            "signature_neg": ["4"],
            "signature_nonneg": ["-1/2", "-2"],
            "deviations": {"1": ["-1/2"], "2": ["4", "-1/2"], "3": ["4", "-1/2", "-1"]},
        }
