from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gl1reps.c_rep import CModule, gz_row_to_c, signature_gz_to_c
from gl1reps.errors import IndexOutOfRange, InvalidTable
from gl1reps.isomap import g, g_inv, phi, phi_inv, table_c_to_gz, table_gz_to_c
from gl1reps.tables import (
    CTable,
    GzSignature,
    GzTable,
    c_highest_table,
    c_validate,
    gz_enumerate,
    gz_highest_table,
    gz_validate,
)
from gl1reps.vector import E, e, super_sign

H = Fraction(1, 2)


def test_g_values():
    assert [g(z) for z in (0, -1, 1, -2, 2, -3)] == [1, 2, 3, 4, 5, 6]


def test_g_inverse():
    for z in range(-10, 11):
        assert g_inv(g(z)) == z
    for n in range(1, 30):
        assert g(g_inv(n)) == n
    with pytest.raises(IndexOutOfRange):
        g_inv(0)


def test_phi_keeps_parity():
    for a in range(-4, 5):
        for b in range(-4, 5):
            gen = E(a, b)
            assert phi(gen).parity == gen.parity
            assert phi_inv(phi(gen)) == gen


def test_phi_respects_bracket_structure():
    # [[E(a,b), E(c,d)]] = delta(b,c) E(a,d) -+ delta(d,a) E(c,b) maps term by term
    idx = range(-5, 6)
    for a in idx:
        for b in idx:
            for c in idx:
                for d in idx:
                    x, y = E(a, b), E(c, d)
                    px, py = phi(x), phi(y)
                    assert super_sign(x, y) == super_sign(px, py)
                    assert (b == c) == (px.j == py.i)
                    assert (d == a) == (py.j == px.i)
                    if b == c:
                        assert phi(E(a, d)) == e(px.i, py.j)


def test_phi_rejects_wrong_convention():
    with pytest.raises(ValueError):
        phi(e(1, 2))
    with pytest.raises(ValueError):
        phi_inv(E(0, 1))


def test_table_conversion_round_trip():
    tables = gz_enumerate(GzSignature([H, 2, 0]))
    assert len(tables) == 12
    for t in tables:
        c = table_gz_to_c(t)
        assert c.rows == tuple(gz_row_to_c(r) for r in t.rows)
        assert table_c_to_gz(c) == t


def test_highest_tables_differ():
    sig = GzSignature([H, 2, 0])
    c_sig = signature_gz_to_c(sig)
    image = table_gz_to_c(gz_highest_table(sig))
    assert image.rows[-1] == c_sig.labels
    assert image != c_highest_table(c_sig)
    assert image in CModule(c_sig).index


def test_invalid_tables_rejected():
    with pytest.raises(InvalidTable) as exc:
        table_gz_to_c(GzTable([[Fraction(3, 2)], [H, 3]]))
    assert exc.value.violations[0].cell == (1, 1)
    with pytest.raises(InvalidTable):
        table_c_to_gz(CTable([[Fraction(3, 2)], [4, -H]]))
    with pytest.raises(TypeError):
        table_c_to_gz(GzTable([[H], [H, 3]]))


@settings(max_examples=200, deadline=None)
@given(st.data())
def test_validity_agrees_across_labelings(data):
    labels = data.draw(st.sampled_from([[H, 2, 0], [Fraction(1, 3), 2, 1, 0], [Fraction(-5, 2), 2, 1, 1, 0]]))
    t = data.draw(st.sampled_from(gz_enumerate(GzSignature(labels))))
    j = data.draw(st.integers(1, t.height - 1))
    i = data.draw(st.integers(1, j))
    u = t.shifted(i, j, data.draw(st.sampled_from([-1, 1])))
    image = CTable(gz_row_to_c(r) for r in u.rows)
    assert (gz_validate(u) == []) == (c_validate(image) == [])
