from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gl1reps.c_rep import (
    CModule,
    _P,
    _Q,
    c_act,
    c_act_cartan,
    c_act_chevalley_infinite,
    c_act_finite,
    c_hwv_flag_conditions,
    c_row_to_gz,
    chevalley_generators,
    chevalley_rows,
    gz_row_to_c,
    signature_c_to_gz,
    signature_gz_to_c,
)
from gl1reps.errors import IndexOutOfRange, LengthMismatch, NotSimpleRoot
from gl1reps.isomap import table_gz_to_c
from gl1reps.reflections import c_chain, c_ordering, chain_signature, odd_reflection, reflect
from gl1reps.scalar import RadicalScalar
from gl1reps.tables import (
    CSignature,
    CTable,
    GzSignature,
    InfiniteCSignature,
    c_highest_table,
    c_validate,
    c_window,
)
from gl1reps.vector import E, SparseVector
from gl1reps.verify import check_relations_c_finite, sample_c_infinite

F = Fraction
H = F(1, 2)
R = RadicalScalar.rational


class TestSignatures:
    def test_level_one(self):
        assert signature_gz_to_c([H, 3]).labels == (4, -H)

    def test_level_one_odd(self):
        assert signature_gz_to_c([H, 2, 0]).labels == (3, -H, 0)

    def test_single_label(self):
        assert signature_gz_to_c([F(5, 3)]).labels == (F(5, 3),)

    def test_round_trip(self):
        for labels in ([H, 3], [H, 2, 0], [F(1, 3), 2, 1, 0], [F(-5, 2), 3, 1, 1, 0]):
            assert signature_c_to_gz(signature_gz_to_c(labels)).labels == tuple(F(x) for x in labels)

    def test_length_mismatch(self):
        with pytest.raises(LengthMismatch):
            signature_gz_to_c([H, 3], length=3)
        with pytest.raises(LengthMismatch):
            signature_c_to_gz([4, -H], length=1)

    @settings(max_examples=60, deadline=None)
    @given(st.lists(st.fractions(min_value=-9, max_value=9, max_denominator=5), min_size=1, max_size=7))
    def test_row_maps_inverse_and_sum_preserving(self, row):
        c = gz_row_to_c(row)
        assert c_row_to_gz(c) == tuple(row)
        assert sum(c) == sum(row)


class TestFiniteAction:
    HIGH = CTable([[-H], [4, -H]])
    LOW = CTable([[H], [4, -H]])

    def test_cartan(self):
        assert c_act_cartan(0, self.HIGH) == R(-H)
        assert c_act_cartan(-1, self.HIGH) == R(4)

    def test_lowering(self):
        assert c_act_finite(E(-1, 0), self.LOW) == SparseVector({self.HIGH: R(F(7, 2))})
        assert not c_act_finite(E(-1, 0), self.HIGH)

    def test_raising(self):
        assert c_act_finite(E(0, -1), self.HIGH) == SparseVector({self.LOW: R(1)})

    def test_window(self):
        with pytest.raises(IndexOutOfRange):
            c_act_cartan(1, self.HIGH)

    @pytest.mark.parametrize("sig", [[4, -H], [3, -H, 0], [3, 2, F(-7, 3), 1, 0], [3, 2, -H, 1, 0]])
    def test_relations(self, sig):
        rep = check_relations_c_finite(sig)
        assert rep.passed, rep.counterexample


@pytest.mark.parametrize("labels", [[H, 3], [H, 2, 0], [F(1, 3), 2, 1, 0], [H, 2, 1, 0, -1]])
def test_hwv_flag_singles_out_c_highest(labels):
    mod = CModule(signature_gz_to_c(labels))
    flagged = [t for t in mod.gz_module.basis if c_hwv_flag_conditions(t)]
    assert len(flagged) == 1
    assert table_gz_to_c(flagged[0]) == c_highest_table(mod.signature)


@pytest.mark.parametrize("labels", [[H, 3], [H, 2, 0], [F(1, 3), 2, 1, 0]])
def test_c_highest_annihilated(labels):
    mod = CModule(signature_gz_to_c(labels))
    h = c_highest_table(mod.signature)
    w = list(mod.window)
    for a, b in zip(w, w[1:]):
        assert not c_act(E(a, b), h)
    for i in w:
        assert c_act_cartan(i, h) == R(mod.signature.label(i))


class TestPsi:
    def test_windows(self):
        for r in range(1, 8):
            w = c_window(r)
            assert len(w) == r and w.start == -(r // 2)

    def test_psi_sign_pattern(self):
        mod = CModule(signature_gz_to_c([F(1, 3), 2, 1, 0, 0]))
        for t in mod.basis:
            for r in range(1, t.height):
                assert t.psi(r) in ((0, 1) if r % 2 == 0 else (0, -1))


INFINITE = [
    InfiniteCSignature([1, 3, 6], [H, -1, -3, -4]),
    InfiniteCSignature([2, 2, 4], [F(1, 3), 0, -2]),
    InfiniteCSignature([0, 1, 2, 3], [F(-5, 2), -1, -2, -3, -4]),
]


class TestInfinite:
    def test_p_q(self):
        assert _P(1, 1) == 1 and _Q(1, 1) == -1
        assert _P(2, 1) == _Q(2, 1) == 1
        assert _P(-1, 1) == _Q(-1, 1) == -1

    def test_rows_touched(self):
        assert chevalley_rows(E(0, 1)) == (1, 2)
        assert chevalley_rows(E(2, 3)) == (5, 6)
        assert chevalley_rows(E(-3, -2)) == (4, 5)
        assert chevalley_rows(E(-1, 0)) == (1,)

    @pytest.mark.parametrize("sig", INFINITE[:2], ids=str)
    def test_closed_forms_match_bracketing(self, sig):
        for t in sample_c_infinite(sig, 3, count=25):
            for gen in chevalley_generators(3):
                assert c_act_chevalley_infinite(gen, t) == c_act(gen, t), (gen, t.to_json())

    @pytest.mark.parametrize("sig", INFINITE, ids=str)
    def test_samples_are_valid(self, sig):
        for t in sample_c_infinite(sig, 4, count=40):
            assert c_validate(t) == []
            assert t.stability_index <= 4


class TestReflections:
    def test_zero_weight_moves_by_minus_alpha(self):
        assert odd_reflection((0, 0), (1, 2)) == (-1, 1)

    def test_even_swaps(self):
        assert reflect((H, 3, 1), (2, 3), (1, 2, 3)) == ((H, 1, 3), (1, 3, 2))

    def test_not_simple(self):
        with pytest.raises(NotSimpleRoot):
            odd_reflection((H, 3, 1), (1, 3))

    def test_chain_shape(self):
        assert c_chain(2) == [(1, 2)]
        assert c_chain(4) == [(1, 2), (3, 4), (1, 4), (2, 4)]
        assert c_ordering(5) == (4, 2, 1, 3, 5)

    @pytest.mark.parametrize("labels", [[H, 3], [H, 2, 0], [F(1, 3), 2, 1, 0], [F(-3, 2), 4, 2, 1, 1, 0, -2]])
    def test_chain_matches_signature_map(self, labels):
        got, order = chain_signature(labels)
        assert got == signature_gz_to_c(labels).labels
        assert order == c_ordering(len(labels))


def test_cmodule_basis_is_relabelled_gz_basis():
    mod = CModule(CSignature([3, -H, 0]))
    assert mod.dim == 12
    assert c_highest_table(mod.signature) in mod.index
    assert sorted(mod.gz_to_c) == list(range(12))
    assert mod.gz_module.signature == GzSignature([H, 2, 0])
