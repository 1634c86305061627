"""Tests for twogen.involutions.

The closed-form counts are validated two ways: literal enumeration of
involutions in the smallest matrix groups (where the whole group fits in
memory), and frozen catalogue values plus structural invariants for the
rest of the grid.
"""

from __future__ import annotations

from itertools import permutations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from twogen.grouporders import GroupFamily, GroupSpec, form_group_order
from twogen.involutions import (
    aut_i2_upper,
    i2_lower_bound,
    involution_class_size_lower,
    psp4_counts,
    root_datum,
    sym_involutions_plus1,
)


def _spec(family: GroupFamily, n: int, q: int) -> GroupSpec:
    return GroupSpec.make(family, n, q)


# ---------------------------------------------------------------------------
# brute-force enumeration oracles (tiny groups only)
# ---------------------------------------------------------------------------


def _gf_mul(a, b, modulus, p):
    """Multiply GF(p^k) elements in polynomial representation (tuples)."""
    deg = len(modulus) - 1
    out = [0] * (2 * deg - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] = (out[i + j] + x * y) % p
    for i in range(len(out) - 1, deg - 1, -1):
        c = out[i]
        if c:
            for j, m in enumerate(modulus):
                out[i - deg + j] = (out[i - deg + j] - c * m) % p
    return tuple(out[:deg])


def _mat_mul(m1, m2, p):
    n = len(m1)
    return tuple(
        tuple(sum(m1[i][k] * m2[k][j] for k in range(n)) % p for j in range(n))
        for i in range(n)
    )


def _all_gl(n, p):
    """All invertible n x n matrices over GF(p), p prime (tiny n only)."""
    from itertools import product

    def det(m):
        if len(m) == 1:
            return m[0][0] % p
        total = 0
        for j in range(len(m)):
            minor = [row[:j] + row[j + 1 :] for row in m[1:]]
            total += (-1) ** j * m[0][j] * det(minor)
        return total % p

    for flat in product(range(p), repeat=n * n):
        m = tuple(tuple(flat[i * n : (i + 1) * n]) for i in range(n))
        if det([list(r) for r in m]) != 0:
            yield m


def _identity(n):
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def _count_involutions(elements, p, n):
    ident = _identity(n)
    return sum(1 for m in elements if m != ident and _mat_mul(m, m, p) == ident)


def _sp4_f2_elements():
    """All of Sp_4(2) as matrices over GF(2), via the form x1y3+x2y4+x3y1+x4y2."""

    def b(x, y):
        swapped = ((y & 0b0011) << 2) | ((y & 0b1100) >> 2)
        return (x & swapped).bit_count() & 1

    cols_list = []
    from itertools import product

    base = {}
    for i in range(4):
        for j in range(i + 1, 4):
            base[(i, j)] = b(1 << i, 1 << j)
    for cols in product(range(16), repeat=4):
        ok = True
        for i in range(4):
            for j in range(i + 1, 4):
                if b(cols[i], cols[j]) != base[(i, j)]:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            m = tuple(
                tuple((cols[j] >> i) & 1 for j in range(4)) for i in range(4)
            )
            cols_list.append(m)
    return cols_list


def _element_order(m, p, cap=8):
    ident = _identity(len(m))
    acc = m
    for k in range(1, cap + 1):
        if acc == ident:
            return k
        acc = _mat_mul(acc, m, p)
    return 0


# ---------------------------------------------------------------------------
# involution floors (closed forms)
# ---------------------------------------------------------------------------


def test_floor_frozen_values():
    assert i2_lower_bound(_spec(GroupFamily.LINEAR, 8, 2)) == 2**29
    assert i2_lower_bound(_spec(GroupFamily.SYMPLECTIC, 4, 4)) == 2048
    assert i2_lower_bound(_spec(GroupFamily.ORTHOGONAL_MINUS, 14, 2)) == 2**45
    # Odd dimensions floor-divide an odd power of q.
    assert i2_lower_bound(_spec(GroupFamily.LINEAR, 3, 2)) == 2**4 // 8
    assert i2_lower_bound(_spec(GroupFamily.ORTHOGONAL_ODD, 7, 3)) == 3**12 // 2


def test_floor_matches_unitary_and_linear():
    # Same closed form for both epsilon variants.
    assert i2_lower_bound(_spec(GroupFamily.UNITARY, 8, 2)) == 2**29
    assert i2_lower_bound(_spec(GroupFamily.UNITARY, 9, 2)) == 2**40 // 8


# ---------------------------------------------------------------------------
# class-size records: exact small cases by enumeration
# ---------------------------------------------------------------------------


def test_class_size_gl2_even_q_is_exact():
    # In GL_2(q), q even, the record counts every involution: q^2 - 1.
    for q in (2, 4):
        rec = involution_class_size_lower(_spec(GroupFamily.LINEAR, 2, q))
        assert rec.label == "j1"
        assert rec.class_size_lower == q**2 - 1
    elements = list(_all_gl(2, 2))
    assert len(elements) == 6
    assert _count_involutions(elements, 2, 2) == 3
    rec = involution_class_size_lower(_spec(GroupFamily.LINEAR, 2, 2))
    assert rec.class_size_lower == 3


def test_class_size_psl2_odd_q_matches_known_counts():
    # PSL_2(5) = A_5 has 15 involutions, PSL_2(7) has 21, PSL_2(9) = A_6 has 45;
    # in each case the selected class is the full involution set.
    for q, count in ((5, 15), (7, 21), (9, 45)):
        rec = involution_class_size_lower(_spec(GroupFamily.LINEAR, 2, q))
        assert rec.class_size_lower == count
        assert rec.label == ("s" if q % 4 == 1 else "t")


def test_class_size_gl4_f2_rank2_class():
    rec = involution_class_size_lower(_spec(GroupFamily.LINEAR, 4, 2))
    assert rec.label == "j2"
    assert rec.centralizer_upper == 2**4 * form_group_order("GL", 2, 2)
    assert rec.class_size_lower == 210
    # Enumerate: involutions m of GL_4(2) with rank(m - 1) = 2.
    def rank_f2(m):
        basis = []
        for row in m:
            cur = int("".join(str(x) for x in row), 2)
            for b in basis:
                cur = min(cur, cur ^ b)
            if cur:
                basis.append(cur)
        return len(basis)

    ident = _identity(4)
    hits = 0
    for m in _all_gl(4, 2):
        if m != ident and _mat_mul(m, m, 2) == ident:
            diff = tuple(
                tuple((m[i][j] - ident[i][j]) % 2 for j in range(4)) for i in range(4)
            )
            if rank_f2(diff) == 2:
                hits += 1
    assert hits == 210


def test_class_size_record_examples():
    rec = involution_class_size_lower(_spec(GroupFamily.LINEAR, 8, 2))
    assert rec.label == "j4"
    assert rec.centralizer_upper == 2**16 * form_group_order("GL", 4, 2)
    assert (
        rec.class_size_lower
        == form_group_order("GL", 8, 2) // (2**16 * form_group_order("GL", 4, 2))
    )

    rec = involution_class_size_lower(_spec(GroupFamily.SYMPLECTIC, 8, 5))
    assert rec.label == "s"
    assert rec.centralizer_upper == 2 * form_group_order("GL", 4, 5)
    assert (
        rec.class_size_lower
        == form_group_order("Sp", 8, 5) // (2 * form_group_order("GL", 4, 5))
    )

    rec = involution_class_size_lower(_spec(GroupFamily.ORTHOGONAL_PLUS, 12, 2))
    assert rec.label == "c6"
    assert rec.centralizer_upper == 2**20 * form_group_order("Sp", 4, 2)


def test_class_size_symplectic_f2_within_enumerated_total():
    # Sp_4(2) has exactly 75 involutions (it is the symmetric group S_6);
    # the selected class must fit inside that total.
    elements = _sp4_f2_elements()
    assert len(elements) == 720
    total = _count_involutions(elements, 2, 4)
    assert total == 75
    assert total == sym_involutions_plus1(6) - 1
    rec = involution_class_size_lower(_spec(GroupFamily.SYMPLECTIC, 4, 2))
    assert rec.label == "c2"
    assert rec.class_size_lower == 45
    assert rec.class_size_lower <= total


def test_class_size_gu2_f2():
    # GU_2(2) has order 18; its involutions are counted exactly.
    def frob(x):  # x -> x^2 on GF(4) as tuples over GF(2)
        return _gf_mul(x, x, (1, 1, 1), 2)

    from itertools import product

    zero, one = (0, 0), (1, 0)
    scalars = [(a, b) for a in range(2) for b in range(2)]

    def conj_transpose(m):
        return tuple(tuple(frob(m[j][i]) for j in range(2)) for i in range(2))

    def mul(m1, m2):
        out = []
        for i in range(2):
            row = []
            for j in range(2):
                acc = zero
                for k in range(2):
                    prod = _gf_mul(m1[i][k], m2[k][j], (1, 1, 1), 2)
                    acc = tuple((a + b) % 2 for a, b in zip(acc, prod))
                row.append(acc)
            out.append(tuple(row))
        return tuple(out)

    ident = ((one, zero), (zero, one))
    elements = []
    for flat in product(scalars, repeat=4):
        m = ((flat[0], flat[1]), (flat[2], flat[3]))
        if mul(conj_transpose(m), m) == ident:
            elements.append(m)
    assert len(elements) == form_group_order("GU", 2, 2) == 18
    invs = sum(1 for m in elements if m != ident and mul(m, m) == ident)
    # The rank-1 class formula at n = 2, q = 2: centralizer q * |GU_1(q)|,
    # class size 18 // 6 = 3, which must fit inside the enumerated total.
    assert 18 // (2 * form_group_order("GU", 1, 2)) == 3 <= invs
    # The same centralizer shape through the public record, one size up:
    # GU_4(2) rank-2 involutions have centralizer order 2^4 * |GU_2(2)|.
    rec = involution_class_size_lower(_spec(GroupFamily.UNITARY, 4, 2))
    assert rec.label == "j2"
    assert rec.centralizer_upper == 2**4 * 18
    assert rec.class_size_lower == form_group_order("GU", 4, 2) // 288 == 270


_GRID_Q = (2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 25)


def _class_grid():
    specs = []
    for q in _GRID_Q:
        for n in (8, 9, 10, 11, 12, 13, 14, 15, 16):
            for fam in GroupFamily:
                try:
                    specs.append(_spec(fam, n, q))
                except ValueError:
                    continue
    return specs


def test_class_size_dominates_floor_on_grid():
    # One slice genuinely sits below the closed-form floor: symplectic
    # groups over q = 3 mod 4.  There the largest involution class has
    # leading constant prod(1 - q^-2i) / (2 prod(1 + q^-1)(1 - q^-2)...)
    # which is < 1/2 for every such q (about 0.37 at q = 3), so the floor
    # overshoots the class — and the full involution count — by design
    # slack that cannot be recovered.  PSp_4(3) makes it concrete: the
    # group has 315 involutions while the floor demands 364.  The class
    # still lands within a factor of two of the floor, which is pinned
    # here so any drift is caught.
    for spec in _class_grid():
        rec = involution_class_size_lower(spec)
        floor = i2_lower_bound(spec)
        if spec.family is GroupFamily.SYMPLECTIC and spec.q % 4 == 3:
            assert floor // 2 <= rec.class_size_lower < floor, spec
        else:
            assert rec.class_size_lower >= floor, spec


def test_class_size_requires_supported_dimension():
    with pytest.raises(ValueError):
        involution_class_size_lower(_spec(GroupFamily.SYMPLECTIC, 2, 4))


# ---------------------------------------------------------------------------
# automorphism-group involution ceiling
# ---------------------------------------------------------------------------


def test_root_datum_invariants():
    a7 = root_datum("A", 7)
    assert (a7.dimension, a7.positive_roots, a7.n2) == (63, 28, 35)
    b3 = root_datum("B", 3)
    assert (b3.dimension, b3.positive_roots, b3.n2) == (21, 9, 12)
    c6 = root_datum("C", 6)
    assert (c6.dimension, c6.positive_roots, c6.n2) == (78, 36, 42)
    d6 = root_datum("D", 6)
    assert (d6.dimension, d6.positive_roots, d6.n2) == (66, 30, 36)
    g2 = root_datum("G2", 2)
    assert (g2.dimension, g2.positive_roots, g2.n2) == (14, 6, 8)
    with pytest.raises(ValueError):
        root_datum("E", 8)
    with pytest.raises(ValueError):
        root_datum("D", 1)


def test_aut_ceiling_frozen_values():
    # Rank-one groups over q^2: ceiling 2q^2(q^2 + 1).
    for q in (2, 3, 4, 5):
        assert aut_i2_upper(root_datum("A", 1), q * q) == 2 * q**2 * (q**2 + 1)
    assert aut_i2_upper(root_datum("A", 1), 4) == 2 * (16 + 4)
    assert aut_i2_upper(root_datum("B", 3), 3) == 2 * (3**12 + 3**11)
    assert aut_i2_upper(root_datum("G2", 2), 3) == 17496
    assert aut_i2_upper(root_datum("A", 1), 17) == 612
    assert aut_i2_upper(root_datum("A", 1), 25) == 1300
    assert aut_i2_upper(root_datum("A", 2), 3) == 648
    assert aut_i2_upper(root_datum("D", 4), 2) == 196608


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(_GRID_Q), st.sampled_from((8, 10, 12, 14, 16)))
def test_aut_ceiling_closed_forms(q, n):
    half = n // 2
    # D-series ceiling over q has the closed form 2(q+1)q^((n^2-4)/4).
    assert aut_i2_upper(root_datum("D", half), q) == 2 * (q + 1) * q ** (
        (n * n - 4) // 4
    )
    # C-series ceiling over q has the closed form 2(q+1)q^((n^2+2n-4)/4).
    assert aut_i2_upper(root_datum("C", half), q) == 2 * (q + 1) * q ** (
        (n * n + 2 * n - 4) // 4
    )


@settings(max_examples=40, deadline=None)
@given(st.sampled_from((2, 3, 4, 5)), st.sampled_from((3, 5, 7, 9, 11)))
def test_aut_ceiling_linear_over_subfield(s, n):
    # A-series over s matches 2(s+1) * (s^2)^((n^2+n-4)/4) written over q = s^2.
    assert aut_i2_upper(root_datum("A", n - 1), s) == 2 * (s + 1) * s ** (
        (n * n + n - 4) // 2
    )


# ---------------------------------------------------------------------------
# symmetric-group involution counts
# ---------------------------------------------------------------------------


def test_sym_involutions_small_by_enumeration():
    for n in range(1, 8):
        count = sum(
            1
            for perm in permutations(range(n))
            if all(perm[perm[i]] == i for i in range(n))
        )
        assert sym_involutions_plus1(n) == count


def test_sym_involutions_frozen():
    assert sym_involutions_plus1(1) == 1
    assert sym_involutions_plus1(4) == 10
    assert sym_involutions_plus1(12) == 140152


def test_sym_involutions_recurrence_to_40():
    values = {1: 1, 2: 2}
    for n in range(3, 41):
        values[n] = values[n - 1] + (n - 1) * values[n - 2]
    for n in range(2, 41):
        assert sym_involutions_plus1(n) == values[n]
    with pytest.raises(ValueError):
        sym_involutions_plus1(0)


# ---------------------------------------------------------------------------
# four-dimensional symplectic data
# ---------------------------------------------------------------------------


def test_psp4_rejects_out_of_scope_fields():
    for q in (2, 3, 6, 9, 12, 27):
        with pytest.raises(ValueError):
            psp4_counts(q)


def test_psp4_frozen_counts():
    data = psp4_counts(4)
    assert data.i2_count == 17 * 255 == 4335
    assert data.i5_lower == 64 * 3 * 17 * 16 == 52224
    labels = [row.label for row in data.rows]
    assert labels == [
        "[q^3]:GL2(q)",
        "Sp2(q) wr S2",
        "Sp2(q^2).2",
        "Sp4(2)",
        "SO4+(q)",
        "SO4-(q)",
    ]


def test_psp4_row_structure_varies_with_field():
    q8 = psp4_counts(8)
    labels8 = [row.label for row in q8.rows]
    assert "Sz(8)" in labels8 and "Sp4(2)" in labels8
    q16 = psp4_counts(16)
    labels16 = [row.label for row in q16.rows]
    assert "Sz(16)" not in labels16
    assert labels16.count("Sp4(4)") == 1 and "Sp4(2)" not in labels16
    q64 = psp4_counts(64)
    labels64 = [row.label for row in q64.rows]
    assert "Sp4(8)" in labels64 and "Sp4(4)" in labels64


def test_psp4_wreath_row_formula():
    for q in (4, 8, 16):
        data = psp4_counts(q)
        row = next(r for r in data.rows if r.label == "Sp2(q) wr S2")
        assert row.i2_upper == q**4 + q**3 - q - 1


def test_psp4_counts_against_sp4_f2_enumeration():
    # The subfield row for Sp_4(2) carries exact involution data and a valid
    # order-5 cap; both are checked against literal enumeration of the group.
    elements = _sp4_f2_elements()
    invs = _count_involutions(elements, 2, 4)
    order5 = sum(1 for m in elements if _element_order(m, 2) == 5)
    row = next(r for r in psp4_counts(8).rows if r.label == "Sp4(2)")
    assert row.i2_upper == invs == 75
    assert row.i5_upper >= order5 > 0
    assert order5 == 144


def test_psp4_group_level_counts_at_q2_formula():
    # The involution closed form is exact even at q = 2, but the order-5
    # floor overshoots the enumerated count there (240 > 144) — which is
    # precisely why psp4_counts rejects the q = 2 field.
    elements = _sp4_f2_elements()
    invs = _count_involutions(elements, 2, 4)
    order5 = sum(1 for m in elements if _element_order(m, 2) == 5)
    q = 2
    assert (q**2 + 1) * (q**4 - 1) == invs
    assert q**3 * (q - 1) * (q**2 + 1) * (q**2 - q + 4) > order5 == 144


def test_psp4_indices_are_exact_divisors():
    for q in (4, 8, 16, 32):
        data = psp4_counts(q)
        for row in data.rows:
            assert data.group_order % row.index == 0, row.label
        sub = next(r for r in data.rows if r.label.startswith("Sp4("))
        s = int(sub.label[4:-1])
        assert sub.index * form_group_order("Sp", 4, s) == data.group_order
