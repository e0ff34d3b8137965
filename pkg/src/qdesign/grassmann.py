"""Canonical k-subspaces of F_q^n: enumeration, predicates, extensions.

A subspace is identified with its reduced-row-echelon basis (no zero
rows), which is unique, so two SubspaceBasis values are equal exactly
when they represent the same subspace.

Canonical enumeration order: by pivot-column set (lexicographically
increasing), then by the free entries read in row-major order as a
base-q number whose least significant digit sits at the last free
position.  Enumeration generates matrices directly in echelon shape
(choose pivot columns, fill free entries), so no dedup pass is needed.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations, product
from typing import Iterator

from .errors import AmbientMismatch, DimensionMismatch, SingularMap, TooLarge
from .gf import FieldSpec, MatrixGFq, mat_inverse, mat_mul, rank, rank_of_rows, rref
from .qcount import q_binomial


@dataclass(frozen=True, eq=False)
class SubspaceBasis:
    """A k-subspace of F_q^n as its canonical RREF basis matrix."""

    field: FieldSpec
    basis: MatrixGFq

    @property
    def n(self) -> int:
        return self.basis.cols

    @property
    def k(self) -> int:
        return self.basis.rows

    @cached_property
    def pivot_columns(self) -> tuple[int, ...]:
        piv = []
        for i in range(self.k):
            row = self.basis.row(i)
            piv.append(next(j for j, x in enumerate(row) if x))
        return tuple(piv)

    @cached_property
    def sort_key(self) -> tuple[tuple[int, ...], tuple[int, ...]]:
        """(pivot columns, row-major free entries): the enumeration order."""
        piv = self.pivot_columns
        pivset = set(piv)
        free = tuple(
            self.basis.at(i, j)
            for i in range(self.k)
            for j in range(self.n)
            if j > piv[i] and j not in pivset
        )
        return (piv, free)

    @cached_property
    def vector_mask(self) -> int:
        """Bitmask of all q^k vectors of the subspace.

        Vector (v0..v(n-1)) is encoded as the base-q integer with v0 most
        significant; bit v of the mask is set iff vector v lies in the
        subspace.  Used by brute-force oracles: containment and
        intersection dimension become AND + popcount.
        """
        field = self.field
        q, add, mul = field.q, field.add, field.mul
        vecs: list[tuple[int, ...]] = [(0,) * self.n]
        for i in range(self.k):
            row = self.basis.row(i)
            new = list(vecs)
            for c in range(1, q):
                scaled = tuple(mul(c, x) for x in row)
                for v in vecs:
                    new.append(tuple(add(a, b) for a, b in zip(v, scaled)))
            vecs = new
        mask = 0
        for v in vecs:
            idx = 0
            for x in v:
                idx = idx * q + x
            mask |= 1 << idx
        return mask

    def rows(self) -> list[tuple[int, ...]]:
        return self.basis.row_list()

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SubspaceBasis):
            return NotImplemented
        return (
            self.field.q == other.field.q
            and self.basis.cols == other.basis.cols
            and self.basis.entries == other.basis.entries
        )

    def __hash__(self) -> int:
        h = self.__dict__.get("_hash")
        if h is None:
            h = hash((self.field.q, self.basis.cols, self.basis.entries))
            self.__dict__["_hash"] = h
        return h

    def __repr__(self) -> str:
        rows = ",".join("".join(str(x) for x in r) for r in self.rows())
        return f"Subspace(q={self.field.q}, n={self.n}, [{rows}])"


def _subspace(field: FieldSpec, n: int, rows: list[tuple[int, ...]]) -> SubspaceBasis:
    """Wrap rows already known to be a canonical RREF basis."""
    flat = tuple(x for r in rows for x in r)
    return SubspaceBasis(field=field, basis=MatrixGFq(field=field, rows=len(rows), cols=n, entries=flat))


def subspace_from_rows(field: FieldSpec, n: int, rows) -> SubspaceBasis:
    """Subspace spanned by arbitrary row vectors (canonicalized by RREF)."""
    rows = [tuple(r) for r in rows]
    if any(len(r) != n for r in rows):
        raise DimensionMismatch("row length does not match ambient dimension")
    if not rows:
        return _subspace(field, n, [])
    M = MatrixGFq.from_rows(field, rows)
    R, rk = rref(M)
    return _subspace(field, n, R.row_list()[:rk])


def iter_subspaces(n: int, k: int, field: FieldSpec) -> Iterator[SubspaceBasis]:
    """All k-subspaces of F_q^n in canonical order, lazily."""
    if k < 0 or k > n:
        raise DimensionMismatch(f"need 0 <= k <= n, got k={k}, n={n}")
    if k == 0:
        yield _subspace(field, n, [])
        return
    q = field.q
    for pivots in combinations(range(n), k):
        pivset = set(pivots)
        template = [0] * (k * n)
        for i, p in enumerate(pivots):
            template[i * n + p] = 1
        free_idx = [
            i * n + j
            for i in range(k)
            for j in range(n)
            if j > pivots[i] and j not in pivset
        ]
        if not free_idx:
            yield SubspaceBasis(
                field=field,
                basis=MatrixGFq(field=field, rows=k, cols=n, entries=tuple(template)),
            )
            continue
        for digits in product(range(q), repeat=len(free_idx)):
            entries = template[:]
            for pos, d in zip(free_idx, digits):
                entries[pos] = d
            yield SubspaceBasis(
                field=field,
                basis=MatrixGFq(field=field, rows=k, cols=n, entries=tuple(entries)),
            )


def enumerate_subspaces(
    n: int, k: int, field: FieldSpec, max_count: int = 10**7
) -> list[SubspaceBasis]:
    """All k-subspaces as a list; raises TooLarge past max_count."""
    count = q_binomial(n, k, field.q)
    if count > max_count:
        raise TooLarge(f"[{n} {k}]_{field.q} = {count} exceeds cap {max_count}")
    return list(iter_subspaces(n, k, field))


def _check_same_space(U: SubspaceBasis, V: SubspaceBasis) -> None:
    if U.field.q != V.field.q or U.n != V.n:
        raise AmbientMismatch(
            f"operands live in different spaces: q={U.field.q},n={U.n} vs q={V.field.q},n={V.n}"
        )


def contains(U: SubspaceBasis, V: SubspaceBasis) -> bool:
    """True iff V is a subspace of U."""
    _check_same_space(U, V)
    if V.k > U.k:
        return False
    return rank_of_rows(U.field, U.rows() + V.rows(), U.n) == U.k


def intersect_dim(U: SubspaceBasis, V: SubspaceBasis) -> int:
    """dim(U intersect V) = dim U + dim V - dim(U + V)."""
    _check_same_space(U, V)
    return U.k + V.k - rank_of_rows(U.field, U.rows() + V.rows(), U.n)


def subspace_dim_from_count(q: int, count: int) -> int:
    """Dimension of a subspace given its exact number of vectors q^d."""
    d = 0
    c = 1
    while c < count:
        c *= q
        d += 1
    if c != count:
        raise ValueError(f"{count} is not a power of {q}")
    return d


def extensions(V: SubspaceBasis, k: int, max_count: int = 10**7) -> list[SubspaceBasis]:
    """All k-subspaces U with V <= U <= F_q^n, in canonical order.

    Subspaces containing V correspond to (k - dim V)-subspaces of the
    quotient F_q^n / V; the quotient is coordinatized by the non-pivot
    columns of V's basis, and each quotient basis vector is lifted by
    placing its entries at those columns.
    """
    field, n, t = V.field, V.n, V.k
    if not t <= k <= n:
        raise DimensionMismatch(f"need dim V = {t} <= k <= n = {n}")
    count = q_binomial(n - t, k - t, field.q)
    if count > max_count:
        raise TooLarge(f"extension count {count} exceeds cap {max_count}")
    pivset = set(V.pivot_columns)
    nonpiv = [j for j in range(n) if j not in pivset]
    vrows = V.rows()
    out = []
    for W in iter_subspaces(n - t, k - t, field):
        lifted = []
        for row in W.rows():
            full = [0] * n
            for pos, x in zip(nonpiv, row):
                full[pos] = x
            lifted.append(tuple(full))
        out.append(subspace_from_rows(field, n, vrows + lifted))
    out.sort(key=lambda S: S.sort_key)
    return out


def apply_map(L: MatrixGFq, V: SubspaceBasis) -> SubspaceBasis:
    """Image of V under the invertible map x -> x L (right action on rows)."""
    if L.field.q != V.field.q:
        raise AmbientMismatch("map and subspace over different fields")
    if L.rows != L.cols or L.rows != V.n:
        raise DimensionMismatch("map must be n x n for ambient dimension n")
    if rank(L) != L.rows:
        raise SingularMap("map is not invertible")
    image = mat_mul(V.basis, L)
    out = subspace_from_rows(V.field, V.n, image.row_list())
    assert out.k == V.k
    return out


def complete_basis(V: SubspaceBasis) -> MatrixGFq:
    """Extend V's basis to a basis of F_q^n (greedy over standard vectors)."""
    field, n = V.field, V.n
    rows = V.rows()
    rk = len(rows)
    for j in range(n):
        if rk == n:
            break
        e = tuple(1 if i == j else 0 for i in range(n))
        if rank_of_rows(field, rows + [e], n) > rk:
            rows.append(e)
            rk += 1
    return MatrixGFq.from_rows(field, rows)


def gl_map_between(U1: SubspaceBasis, U2: SubspaceBasis) -> MatrixGFq:
    """An invertible L with apply_map(L, U1) == U2 (basis extension)."""
    _check_same_space(U1, U2)
    if U1.k != U2.k:
        raise DimensionMismatch("subspaces must have equal dimension")
    B1 = complete_basis(U1)
    B2 = complete_basis(U2)
    return mat_mul(mat_inverse(B1), B2)
