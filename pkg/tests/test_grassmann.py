import random

import pytest

from qdesign.errors import AmbientMismatch, DimensionMismatch, SingularMap, TooLarge
from qdesign.gf import (
    MatrixGFq,
    identity_matrix,
    make_field,
    rank_of_rows,
    random_invertible,
)
from qdesign.grassmann import (
    apply_map,
    complete_basis,
    contains,
    enumerate_subspaces,
    extensions,
    gl_map_between,
    intersect_dim,
    iter_subspaces,
    subspace_dim_from_count,
    subspace_from_rows,
)
from qdesign.qcount import q_binomial

F2 = make_field(2)
F3 = make_field(3)


def test_enumeration_counts():
    assert len(enumerate_subspaces(2, 2, F2)) == 1
    assert len(enumerate_subspaces(3, 1, F2)) == 7
    assert len(enumerate_subspaces(4, 2, F2)) == 35
    assert len(enumerate_subspaces(4, 2, F3)) == 130


def test_enumeration_canonical_and_distinct():
    for q, f in ((2, F2), (3, F3)):
        for n in range(5):
            for k in range(n + 1):
                subs = enumerate_subspaces(n, k, f)
                keys = [s.sort_key for s in subs]
                assert keys == sorted(keys)
                assert len(set(subs)) == len(subs)
                for s in subs:
                    assert s.k == k and s.n == n
                    # basis is in RREF: canonicalizing is a no-op
                    assert subspace_from_rows(f, n, s.rows()) == s


def test_enumeration_cap():
    with pytest.raises(TooLarge):
        enumerate_subspaces(4, 2, F2, max_count=10)


def test_zero_subspace():
    z = enumerate_subspaces(3, 0, F2)
    assert len(z) == 1 and z[0].k == 0
    assert z[0].vector_mask == 1  # only the zero vector


def test_contains_reflexive_and_full():
    subs = enumerate_subspaces(3, 2, F2)
    full = enumerate_subspaces(3, 3, F2)[0]
    for U in subs:
        assert contains(U, U)
        assert contains(full, U)


def test_distinct_lines_incomparable():
    lines = enumerate_subspaces(2, 1, F2)
    for a in lines:
        for b in lines:
            assert contains(a, b) == (a == b)


def test_contains_ambient_mismatch():
    with pytest.raises(AmbientMismatch):
        contains(enumerate_subspaces(3, 1, F2)[0], enumerate_subspaces(4, 1, F2)[0])
    with pytest.raises(AmbientMismatch):
        contains(enumerate_subspaces(3, 1, F2)[0], enumerate_subspaces(3, 1, F3)[0])


def test_intersect_dim_self_and_hyperplanes():
    subs = enumerate_subspaces(3, 2, F2)
    for U in subs:
        assert intersect_dim(U, U) == 2
    for U in subs:
        for V in subs:
            if U != V:
                assert intersect_dim(U, V) == 1  # 2 + 2 - 3


def test_intersect_dim_vector_set_oracle():
    rng = random.Random(42)
    for q, f, n in ((2, F2, 5), (3, F3, 4)):
        pool = enumerate_subspaces(n, 2, f) + enumerate_subspaces(n, 3, f)
        for _ in range(50):
            U = pool[rng.randrange(len(pool))]
            V = pool[rng.randrange(len(pool))]
            inter = U.vector_mask & V.vector_mask
            assert subspace_dim_from_count(q, inter.bit_count()) == intersect_dim(U, V)


def test_dimension_formula():
    rng = random.Random(7)
    pool = enumerate_subspaces(5, 2, F2)
    for _ in range(50):
        U = pool[rng.randrange(len(pool))]
        V = pool[rng.randrange(len(pool))]
        assert intersect_dim(U, V) + rank_of_rows(F2, U.rows() + V.rows(), 5) == U.k + V.k


def test_extensions_line_in_f2_3():
    lines = enumerate_subspaces(3, 1, F2)
    planes = enumerate_subspaces(3, 2, F2)
    for V in lines:
        ext = extensions(V, 2)
        assert len(ext) == 3  # [2 1]_2
        filtered = [U for U in planes if contains(U, V)]
        assert ext == sorted(filtered, key=lambda s: s.sort_key)


def test_extensions_line_in_f2_4():
    V = enumerate_subspaces(4, 1, F2)[0]
    assert len(extensions(V, 2)) == 7  # [3 1]_2


def test_extensions_full_space():
    V = enumerate_subspaces(3, 3, F2)[0]
    assert extensions(V, 3) == [V]


def test_extensions_counts_grid():
    for q, f in ((2, F2), (3, F3)):
        for n in range(1, 5):
            for tt in range(n + 1):
                for V in iter_subspaces(n, tt, f):
                    for k in range(tt, n + 1):
                        ext = extensions(V, k)
                        assert len(ext) == q_binomial(n - tt, k - tt, q)
                        assert all(contains(U, V) for U in ext)
                        assert len(set(ext)) == len(ext)


def test_extension_count_equals_basis_extension_ratio():
    # counting ordered basis extensions and dividing by the per-subspace
    # overcount reproduces the quotient binomial
    for q in (2, 3):
        for n in range(1, 7):
            for t in range(n + 1):
                for k in range(t, n + 1):
                    num = den = 1
                    for i in range(t, k):
                        num *= q**n - q**i
                        den *= q**k - q**i
                    assert num % den == 0
                    assert num // den == q_binomial(n - t, k - t, q)


def test_extensions_requires_dim_order():
    V = enumerate_subspaces(4, 2, F2)[0]
    with pytest.raises(DimensionMismatch):
        extensions(V, 1)


def test_apply_map_identity():
    I = identity_matrix(F2, 4)
    for V in enumerate_subspaces(4, 2, F2)[:10]:
        assert apply_map(I, V) == V


def test_apply_map_preserves_containment():
    rng = random.Random(3)
    planes = enumerate_subspaces(4, 2, F2)
    lines = enumerate_subspaces(4, 1, F2)
    L = random_invertible(F2, 4, seed=11)
    for _ in range(100):
        U = planes[rng.randrange(len(planes))]
        V = lines[rng.randrange(len(lines))]
        assert contains(U, V) == contains(apply_map(L, U), apply_map(L, V))


def test_apply_map_is_permutation():
    subs = enumerate_subspaces(4, 2, F3)
    L = random_invertible(F3, 4, seed=2)
    images = {apply_map(L, s) for s in subs}
    assert images == set(subs)


def test_apply_map_rejects_singular():
    M = MatrixGFq.from_rows(F2, [(1, 1), (1, 1)])
    with pytest.raises(SingularMap):
        apply_map(M, enumerate_subspaces(2, 1, F2)[0])


def test_gl_map_between_all_pairs_small():
    for n in range(1, 5):
        for k in range(n + 1):
            subs = enumerate_subspaces(n, k, F2)
            for U1 in subs:
                for U2 in subs:
                    L = gl_map_between(U1, U2)
                    assert apply_map(L, U1) == U2


def test_complete_basis_full_rank():
    for V in enumerate_subspaces(4, 2, F3)[:20]:
        B = complete_basis(V)
        assert B.rows == B.cols == 4
        assert rank_of_rows(F3, B.row_list(), 4) == 4
        assert B.row_list()[:2] == V.rows()


def test_subspace_hash_consistency():
    a = enumerate_subspaces(4, 2, F2)
    b = enumerate_subspaces(4, 2, F2)
    assert a == b
    assert {x: i for i, x in enumerate(a)} == {x: i for i, x in enumerate(b)}
