"""Arithmetic in F_q (q <= 16) and exact linear algebra over F_q.

Elements of F_q are the integers 0..q-1.  For prime q they are residues
mod q.  For a prime power q = p^e an element x encodes the polynomial
whose base-p digits are its coefficients (x = c0 + c1*p + ... with ci the
coefficient of X^i), and multiplication reduces modulo a fixed monic
irreducible polynomial.

Irreducible polynomials used (coefficients by increasing degree, over F_p):
    q = 4  : X^2 + X + 1        -> (1, 1, 1)
    q = 8  : X^3 + X + 1        -> (1, 1, 0, 1)
    q = 9  : X^2 + 2X + 2       -> (2, 2, 1)
    q = 16 : X^4 + X + 1        -> (1, 1, 0, 0, 1)

These are the lexicographically minimal choices per (p, e), so every
table, canonical form, and report produced by the library is reproducible
bit for bit.  Full addition/multiplication/inverse tables are precomputed
at construction; all later arithmetic is branch-free table lookup.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache

from .errors import SingularMap, UnsupportedOrder

# Monic irreducible polynomial per supported prime power, coefficients by
# increasing degree over the prime subfield.
_REDUCTION_POLYS: dict[int, tuple[int, ...]] = {
    4: (1, 1, 1),
    8: (1, 1, 0, 1),
    9: (2, 2, 1),
    16: (1, 1, 0, 0, 1),
}

_PRIME_ORDERS = (2, 3, 5, 7, 11, 13)

SUPPORTED_ORDERS = tuple(sorted(_PRIME_ORDERS + tuple(_REDUCTION_POLYS)))


@dataclass(frozen=True, eq=False)
class FieldSpec:
    """The finite field F_q with precomputed arithmetic tables."""

    q: int
    characteristic: int
    degree: int
    reduction_polynomial: tuple[int, ...] | None
    add_table: tuple[tuple[int, ...], ...]
    mul_table: tuple[tuple[int, ...], ...]
    inv_table: tuple[int, ...]
    neg_table: tuple[int, ...]

    def add(self, a: int, b: int) -> int:
        return self.add_table[a][b]

    def sub(self, a: int, b: int) -> int:
        return self.add_table[a][self.neg_table[b]]

    def mul(self, a: int, b: int) -> int:
        return self.mul_table[a][b]

    def neg(self, a: int) -> int:
        return self.neg_table[a]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("0 has no inverse")
        return self.inv_table[a]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FieldSpec):
            return NotImplemented
        return self.q == other.q

    def __hash__(self) -> int:
        return hash(("FieldSpec", self.q))

    def __repr__(self) -> str:
        return f"FieldSpec(q={self.q})"


def _digits(x: int, p: int, e: int) -> list[int]:
    out = []
    for _ in range(e):
        out.append(x % p)
        x //= p
    return out


def _undigits(ds: list[int], p: int) -> int:
    x = 0
    for c in reversed(ds):
        x = x * p + c
    return x


def _poly_mul_mod(a: int, b: int, p: int, e: int, red: tuple[int, ...]) -> int:
    da, db = _digits(a, p, e), _digits(b, p, e)
    prod = [0] * (2 * e - 1)
    for i, ca in enumerate(da):
        if ca:
            for j, cb in enumerate(db):
                prod[i + j] = (prod[i + j] + ca * cb) % p
    # reduce modulo the monic degree-e polynomial
    for i in range(len(prod) - 1, e - 1, -1):
        c = prod[i]
        if c:
            prod[i] = 0
            for j in range(e):
                prod[i - e + j] = (prod[i - e + j] - c * red[j]) % p
    return _undigits(prod[:e], p)


@lru_cache(maxsize=None)
def make_field(q: int) -> FieldSpec:
    """Build the FieldSpec for F_q.

    Raises UnsupportedOrder unless q is one of SUPPORTED_ORDERS.
    """
    if q in _PRIME_ORDERS:
        p, e, red = q, 1, None
    elif q in _REDUCTION_POLYS:
        red = _REDUCTION_POLYS[q]
        p = 2 if q in (4, 8, 16) else 3
        e = len(red) - 1
    else:
        raise UnsupportedOrder(f"q={q} not supported; choose one of {SUPPORTED_ORDERS}")

    if e == 1:
        add = tuple(tuple((a + b) % q for b in range(q)) for a in range(q))
        mul = tuple(tuple((a * b) % q for b in range(q)) for a in range(q))
    else:
        add_rows = []
        for a in range(q):
            da = _digits(a, p, e)
            row = []
            for b in range(q):
                db = _digits(b, p, e)
                row.append(_undigits([(x + y) % p for x, y in zip(da, db)], p))
            add_rows.append(tuple(row))
        add = tuple(add_rows)
        mul = tuple(
            tuple(_poly_mul_mod(a, b, p, e, red) for b in range(q)) for a in range(q)
        )

    neg = tuple(add[a].index(0) for a in range(q))
    inv = [0] * q
    for a in range(1, q):
        inv[a] = mul[a].index(1)

    return FieldSpec(
        q=q,
        characteristic=p,
        degree=e,
        reduction_polynomial=red,
        add_table=add,
        mul_table=mul,
        inv_table=tuple(inv),
        neg_table=neg,
    )


@dataclass(frozen=True)
class MatrixGFq:
    """A dense rows x cols matrix over F_q, entries stored row-major."""

    field: FieldSpec
    rows: int
    cols: int
    entries: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.entries) != self.rows * self.cols:
            raise ValueError("entry count does not match shape")
        q = self.field.q
        if any(not (0 <= x < q) for x in self.entries):
            raise ValueError("entry out of field range")

    @classmethod
    def from_rows(cls, field: FieldSpec, rows: list | tuple) -> "MatrixGFq":
        rows = [tuple(r) for r in rows]
        ncols = len(rows[0]) if rows else 0
        if any(len(r) != ncols for r in rows):
            raise ValueError("ragged rows")
        flat = tuple(x for r in rows for x in r)
        return cls(field=field, rows=len(rows), cols=ncols, entries=flat)

    def at(self, i: int, j: int) -> int:
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple[int, ...]:
        return self.entries[i * self.cols : (i + 1) * self.cols]

    def row_list(self) -> list[tuple[int, ...]]:
        return [self.row(i) for i in range(self.rows)]


def identity_matrix(field: FieldSpec, n: int) -> MatrixGFq:
    return MatrixGFq.from_rows(
        field, [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    )


def _rref_rows(field: FieldSpec, rows: list[list[int]], ncols: int) -> tuple[list[list[int]], int]:
    """In-place reduced row echelon form; returns (rows, rank).

    Pivot rule: columns scanned left to right, first nonzero entry
    top-down among the unprocessed rows.
    """
    mul, sub, inv = field.mul, field.sub, field.inv
    nrows = len(rows)
    r = 0
    for c in range(ncols):
        pr = -1
        for i in range(r, nrows):
            if rows[i][c]:
                pr = i
                break
        if pr < 0:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        piv = rows[r][c]
        if piv != 1:
            s = inv(piv)
            rows[r] = [mul(s, x) for x in rows[r]]
        prow = rows[r]
        for i in range(nrows):
            if i != r and rows[i][c]:
                f = rows[i][c]
                ri = rows[i]
                rows[i] = [sub(x, mul(f, y)) for x, y in zip(ri, prow)]
        r += 1
        if r == nrows:
            break
    return rows, r


def rref(M: MatrixGFq) -> tuple[MatrixGFq, int]:
    """Reduced row echelon form of M and its rank."""
    rows, rank = _rref_rows(M.field, [list(r) for r in M.row_list()], M.cols)
    return MatrixGFq.from_rows(M.field, rows), rank


def rank(M: MatrixGFq) -> int:
    return rref(M)[1]


def rank_of_rows(field: FieldSpec, rows, ncols: int) -> int:
    """Rank of a list of row tuples, without building a MatrixGFq."""
    return _rref_rows(field, [list(r) for r in rows], ncols)[1]


def mat_mul(A: MatrixGFq, B: MatrixGFq) -> MatrixGFq:
    if A.field != B.field or A.cols != B.rows:
        raise ValueError("incompatible shapes or fields")
    field = A.field
    mul, add = field.mul, field.add
    brows = B.row_list()
    out = []
    for i in range(A.rows):
        arow = A.row(i)
        acc = [0] * B.cols
        for k, a in enumerate(arow):
            if a:
                br = brows[k]
                acc = [add(x, mul(a, b)) for x, b in zip(acc, br)]
        out.append(acc)
    return MatrixGFq(field=field, rows=A.rows, cols=B.cols, entries=tuple(x for r in out for x in r))


def mat_inverse(M: MatrixGFq) -> MatrixGFq:
    """Inverse of a square matrix; raises SingularMap if not invertible."""
    if M.rows != M.cols:
        raise SingularMap("only square matrices can be inverted")
    n = M.rows
    aug = [list(M.row(i)) + [1 if j == i else 0 for j in range(n)] for i in range(n)]
    aug, rk = _rref_rows(M.field, aug, 2 * n)
    if rk < n or any(aug[i][:n] != [1 if j == i else 0 for j in range(n)] for i in range(n)):
        raise SingularMap("matrix is singular")
    return MatrixGFq.from_rows(M.field, [r[n:] for r in aug])


def random_invertible(field: FieldSpec, n: int, seed: int) -> MatrixGFq:
    """A uniformly sampled element of GL(n, q), deterministic per seed.

    Rejection sampling: the invertible fraction is at least 28% even for
    q = 2, so expected retries are small.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    rng = random.Random(seed)
    q = field.q
    while True:
        entries = tuple(rng.randrange(q) for _ in range(n * n))
        M = MatrixGFq(field=field, rows=n, cols=n, entries=entries)
        if rank(M) == n:
            return M
