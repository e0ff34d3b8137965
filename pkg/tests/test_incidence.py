from fractions import Fraction

import pytest

from qdesign.errors import TooLarge
from qdesign.gf import make_field
from qdesign.grassmann import contains
from qdesign.incidence import (
    average_row,
    build_incidence,
    check_constant_vector_property,
    check_symmetry_transitivity,
    export_bits_text,
)
from qdesign.qcount import q_binomial

F2 = make_field(2)
F3 = make_field(3)


def test_identity_case():
    M = build_incidence(2, 1, 1, F2)
    assert M.num_rows == M.num_cols == 3
    assert [M.bits[i] for i in range(3)] == [1, 2, 4]
    assert M.row_weight == M.col_weight == 1
    assert average_row(M) == Fraction(1, 3)


def test_fano_case():
    M = build_incidence(3, 2, 1, F2)
    assert M.num_rows == M.num_cols == 7
    assert M.row_weight == 3 and M.col_weight == 3
    assert all(r.bit_count() == 3 for r in M.bits)


def test_35_by_15_case():
    M = build_incidence(4, 2, 1, F2)
    assert (M.num_rows, M.num_cols) == (35, 15)
    assert (M.row_weight, M.col_weight) == (3, 7)
    assert average_row(M) == Fraction(1, 5)
    assert check_constant_vector_property(M)
    assert M.total_ones() == 35 * 3 == 15 * 7


def test_entries_match_containment():
    M = build_incidence(4, 2, 1, F2)
    for b, B in enumerate(M.row_index):
        for a, A in enumerate(M.col_index):
            assert M.entry(b, a) == int(contains(B, A))


def test_weights_q3():
    M = build_incidence(4, 2, 1, F3)
    assert M.row_weight == q_binomial(2, 1, 3) == 4
    assert M.col_weight == q_binomial(3, 1, 3) == 13
    assert all(r.bit_count() == 4 for r in M.bits)


def test_t_equals_k():
    M = build_incidence(3, 2, 2, F2)
    assert M.num_rows == M.num_cols == 7
    assert M.row_weight == 1
    # identity matrix in canonical order
    assert all(M.bits[i] == 1 << i for i in range(7))


def test_average_row_cross_identity_grid():
    for q, f in ((2, F2), (3, F3)):
        for n in range(1, 9):
            for k in range(n + 1):
                for t in range(k + 1):
                    lhs = Fraction(q_binomial(n - t, k - t, q), q_binomial(n, k, q))
                    rhs = Fraction(q_binomial(k, t, q), q_binomial(n, t, q))
                    assert lhs == rhs


def test_symmetry_transitivity_spot():
    for n, k, t in ((3, 2, 1), (4, 2, 1), (5, 3, 2)):
        M = build_incidence(n, k, t, F2)
        assert check_symmetry_transitivity(M, trials=20, seed=1234)


def test_symmetry_check_catches_corruption():
    import dataclasses

    M = build_incidence(3, 2, 1, F2)
    bits = list(M.bits)
    bits[0] ^= 1 << 5  # flip one entry
    bad = dataclasses.replace(M, bits=tuple(bits))
    assert not check_symmetry_transitivity(bad, trials=20, seed=1234)


def test_size_cap():
    with pytest.raises(TooLarge):
        build_incidence(4, 2, 1, F2, max_bits=100)


def test_export_bits():
    M = build_incidence(2, 1, 1, F2)
    assert export_bits_text(M) == "100\n010\n001\n"
