"""The local-decoding coefficient system and its brute-force oracles.

For parameters (q, t, k) the library builds the (t+1) x (t+1)
upper-triangular integer matrix D whose entry at (l, j) is

    d(l, j) = [t-l choose t-j]_q * [k-t+l choose j]_q * q^((k-t-j+l)(t-j))

and solves D f = (0, ..., 0, m)^T with m = det D, so that the
coefficient vector f is integral (by Cramer's rule, f_j is the
determinant of D with column j replaced by (0, ..., 0, 1)^T).

Assigning coefficient f(dim(U intersect V)) to every k-subspace U of a
fixed (t+k)-dimensional envelope W containing V yields an integer row
combination that sums to m at column V and 0 at every other t-subspace;
decode_certificate materializes that combination and verify_certificate
checks the identity against every column by exhaustive summation.

All determinants run through fraction-free (Bareiss) elimination and,
for D itself, are cross-checked against the diagonal product; the
coefficient vector is additionally recomputed by rational
back-substitution.  lemma2_count's closed-form intersection counts are
paired with an enumeration oracle over exhaustive vector sets.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import DegenerateSystem, DimensionMismatch, TooLarge
from .gf import make_field, mat_mul
from .grassmann import (
    SubspaceBasis,
    extensions,
    intersect_dim,
    iter_subspaces,
    subspace_dim_from_count,
    subspace_from_rows,
)
from .qcount import q_binomial


@dataclass(frozen=True)
class DecodeSystem:
    q: int
    t: int
    k: int
    D: tuple[tuple[int, ...], ...]
    m: int
    f: tuple[int, ...]
    Dj_dets: tuple[int, ...]


@dataclass(frozen=True)
class CoefficientCertificate:
    decoded_column: SubspaceBasis
    envelope: SubspaceBasis
    coefficients: dict[SubspaceBasis, int]
    m: int
    l1_norm: int


def _entry(q: int, t: int, k: int, l: int, j: int) -> int:
    b1 = q_binomial(t - l, t - j, q)
    if b1 == 0:
        return 0
    b2 = q_binomial(k - t + l, j, q)
    if b2 == 0:
        return 0
    return b1 * b2 * q ** ((k - t - j + l) * (t - j))


def build_D(q: int, t: int, k: int) -> tuple[tuple[int, ...], ...]:
    """The (t+1) x (t+1) coefficient matrix; upper triangular with a
    positive diagonal whenever 1 <= t <= k."""
    if not 1 <= t <= k:
        raise DimensionMismatch(f"need 1 <= t <= k, got t={t}, k={k}")
    D = tuple(tuple(_entry(q, t, k, l, j) for j in range(t + 1)) for l in range(t + 1))
    for l in range(t + 1):
        for j in range(l):
            assert D[l][j] == 0, "matrix must be upper triangular"
        if D[l][l] <= 0:
            raise DegenerateSystem(f"diagonal entry d({l},{l}) = {D[l][l]}")
    return D


def det_bareiss(rows: list[list[int]]) -> int:
    """Exact determinant of an integer matrix by fraction-free elimination."""
    M = [row[:] for row in rows]
    n = len(M)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for i in range(n - 1):
        if M[i][i] == 0:
            pivot = next((r for r in range(i + 1, n) if M[r][i] != 0), None)
            if pivot is None:
                return 0
            M[i], M[pivot] = M[pivot], M[i]
            sign = -sign
        for r in range(i + 1, n):
            for c in range(i + 1, n):
                val = M[r][c] * M[i][i] - M[r][i] * M[i][c]
                quot, rem = divmod(val, prev)
                assert rem == 0, "Bareiss division must be exact"
                M[r][c] = quot
            M[r][i] = 0
        prev = M[i][i]
    return sign * M[n - 1][n - 1]


def _replace_column(D: tuple[tuple[int, ...], ...], j: int, col: list[int]) -> list[list[int]]:
    return [
        [col[l] if c == j else D[l][c] for c in range(len(D))] for l in range(len(D))
    ]


def solve_coefficients(q: int, t: int, k: int) -> DecodeSystem:
    """Solve D f = (0, ..., 0, m)^T exactly, with m = det D.

    The determinant is computed twice (diagonal product and Bareiss
    elimination) and f twice (column-replacement determinants and
    rational back-substitution); all routes must agree.
    """
    D = build_D(q, t, k)
    size = t + 1
    m_diag = 1
    for j in range(size):
        m_diag *= D[j][j]
    m = det_bareiss([list(r) for r in D])
    if m != m_diag:
        raise DegenerateSystem(f"determinant routes disagree: {m} != {m_diag}")

    unit = [0] * size
    unit[-1] = 1
    f = tuple(det_bareiss(_replace_column(D, j, unit)) for j in range(size))

    target = [0] * (size - 1) + [m]
    for l in range(size):
        if sum(D[l][j] * f[j] for j in range(size)) != target[l]:
            raise DegenerateSystem(f"D f != (0,...,0,m) at row {l}")

    # independent route: rational back-substitution on the triangular system
    x: list[Fraction] = [Fraction(0)] * size
    x[size - 1] = Fraction(m, D[size - 1][size - 1])
    for l in range(size - 2, -1, -1):
        acc = sum((D[l][j] * x[j] for j in range(l + 1, size)), Fraction(0))
        x[l] = -acc / D[l][l]
    if tuple(x) != tuple(Fraction(v) for v in f):
        raise DegenerateSystem("back-substitution disagrees with determinant route")

    if f[t] * q_binomial(k, k - t, q) != m:
        raise DegenerateSystem("top coefficient identity f(t) [k k-t]_q = m failed")

    return DecodeSystem(q=q, t=t, k=k, D=D, m=m, f=f, Dj_dets=f)


def check_cond2(q: int, t: int, k: int) -> bool:
    """The t homogeneous rows of the system vanish at f, re-evaluated
    directly from the entry formula rather than from the stored D."""
    f = solve_coefficients(q, t, k).f
    for l in range(t):
        total = 0
        for j in range(l, t + 1):
            total += f[j] * _entry(q, t, k, l, j)
        if total != 0:
            return False
    return True


def decode_certificate(
    V: SubspaceBasis, k: int, max_subspaces: int = 10**6
) -> CoefficientCertificate:
    """Signed integer coefficients on the k-subspaces of a canonical
    envelope W >= V with dim W = dim V + k.

    W extends V's basis by the k lowest-index standard vectors outside
    V's pivot columns; the coefficient of U is f(dim(U intersect V)).
    """
    field, n, t = V.field, V.n, V.k
    q = field.q
    if t < 1:
        raise DimensionMismatch("decoded column must have dimension >= 1")
    if n < t + k:
        raise DimensionMismatch(f"need ambient n >= t + k = {t + k}, got {n}")
    count = q_binomial(k + t, k, q)
    if count > max_subspaces:
        raise TooLarge(f"[{k + t} {k}]_{q} = {count} exceeds cap {max_subspaces}")

    system = solve_coefficients(q, t, k)
    pivset = set(V.pivot_columns)
    extra = [j for j in range(n) if j not in pivset][:k]
    lifted = [tuple(1 if i == j else 0 for i in range(n)) for j in extra]
    W = subspace_from_rows(field, n, V.rows() + lifted)
    assert W.k == t + k

    coefficients: dict[SubspaceBasis, int] = {}
    l1 = 0
    for Ubar in iter_subspaces(t + k, k, field):
        image = mat_mul(Ubar.basis, W.basis)
        U = subspace_from_rows(field, n, image.row_list())
        c = system.f[intersect_dim(U, V)]
        coefficients[U] = c
        l1 += abs(c)
    assert l1 <= count * max(abs(v) for v in system.f)
    return CoefficientCertificate(
        decoded_column=V,
        envelope=W,
        coefficients=coefficients,
        m=system.m,
        l1_norm=l1,
    )


def verify_certificate(cert: CoefficientCertificate) -> bool:
    """Exhaustively check sum_U coeff(U) 1[a <= U] = m [a == V] over
    every t-subspace a of the ambient space."""
    V = cert.decoded_column
    field, n, t = V.field, V.n, V.k
    terms = [(U.vector_mask, c) for U, c in cert.coefficients.items()]
    for a in iter_subspaces(n, t, field):
        amask = a.vector_mask
        total = sum(c for umask, c in terms if umask & amask == amask)
        if total != (cert.m if a == V else 0):
            return False
    return True


def lemma2_count(V1: SubspaceBasis, V2: SubspaceBasis, k: int, j: int) -> int:
    """Closed-form count of k-subspaces U with V1 <= U and
    dim(U intersect V2) = j, where dim(V1 intersect V2) = l < t."""
    if V1.field.q != V2.field.q or V1.n != V2.n or V1.k != V2.k:
        raise DimensionMismatch("V1, V2 must be t-subspaces of the same space")
    t = V1.k
    n = V1.n
    q = V1.field.q
    l = intersect_dim(V1, V2)
    if l >= t:
        raise DimensionMismatch("V1 and V2 must be distinct (l < t)")
    if not l <= j <= t:
        raise DimensionMismatch(f"need l = {l} <= j <= t = {t}, got j={j}")
    if not t <= k <= n:
        raise DimensionMismatch(f"need t <= k <= n, got k={k}")
    b1 = q_binomial(t - l, j - l, q)
    b2 = q_binomial(n - 2 * t + l, k - t - j + l, q)
    if b1 == 0 or b2 == 0:
        return 0
    return q ** ((k - t - j + l) * (t - j)) * b1 * b2


def lemma2_count_bruteforce(V1: SubspaceBasis, V2: SubspaceBasis, k: int, j: int) -> int:
    """Enumeration oracle for lemma2_count: walk every k-subspace
    containing V1 and measure its intersection with V2 by exhaustive
    vector-set intersection."""
    q = V1.field.q
    v2mask = V2.vector_mask
    total = 0
    for U in extensions(V1, k):
        d = subspace_dim_from_count(q, (U.vector_mask & v2mask).bit_count())
        if d == j:
            total += 1
    return total


def _ordered_basis_products_check(q: int, n: int, t: int, k: int, l: int, j: int) -> str | None:
    """Re-derive one (l, j) cell of the closed form from first principles.

    Counting the subspaces U directly: first extend a basis of V1 inside
    V1 + V2 by j - l independent vectors (N1 ordered choices, N2 ordered
    bases per subspace), then extend outside V1 + V2 by the remaining
    k - t - j + l vectors (N3 choices, N4 per subspace).  Both ratios
    must divide exactly and reproduce the two factors of the closed
    form.  Returns a message on the first violated identity.
    """
    jl = j - l
    ext = k - t - j + l
    N1 = N2 = 1
    for i in range(jl):
        N1 *= q ** (2 * t - l) - q ** (t + i)
        N2 *= q ** (t + jl) - q ** (t + i)
    ratio12, rem = divmod(N1, N2)
    if rem != 0:
        return f"inner product ratio not integral at (l={l},j={j})"
    if ratio12 != q_binomial(t - l, jl, q):
        return f"inner product ratio != [t-l j-l]_q at (l={l},j={j})"
    N3 = N4 = 1
    for i in range(ext):
        N3 *= q**n - q ** ((2 * t - l) + i)
        N4 *= q**k - q ** ((t + jl) + i)
    ratio34, rem = divmod(N3, N4)
    if rem != 0:
        return f"outer product ratio not integral at (l={l},j={j})"
    if ratio34 != q ** (ext * (t - j)) * q_binomial(n - 2 * t + l, ext, q):
        return f"outer product ratio != q^e [n-2t+l k-t-j+l]_q at (l={l},j={j})"
    return None


@dataclass(frozen=True)
class Lemma2Cell:
    l: int
    j: int
    formula: int
    pairs: int


@dataclass(frozen=True)
class Lemma2GridReport:
    q: int
    n: int
    t: int
    k: int
    pair_count: int
    extension_count: int
    cells: tuple[Lemma2Cell, ...]
    ok: bool
    mismatch: str


def lemma2_grid_report(q: int, n: int, t: int, k: int) -> Lemma2GridReport:
    """Check the closed-form intersection counts against enumeration for
    EVERY ordered pair of distinct t-subspaces of F_q^n at once.

    For each pair (V1, V2) with dim(V1 int V2) = l, the number of
    k-subspaces U >= V1 with dim(U int V2) = j must match the formula
    for every j, and the formula values summed over j must equal the
    total extension count [n-t k-t]_q.  Each nonzero cell is also
    re-derived from the ordered-basis counting products (see
    _ordered_basis_products_check).  Enumeration uses exhaustive
    vector-set intersection, so it shares no code path with the formula.
    """
    if not 1 <= t <= k <= n:
        raise DimensionMismatch(f"need 1 <= t <= k <= n, got t={t}, k={k}, n={n}")
    field = make_field(q)
    tsubs = list(iter_subspaces(n, t, field))
    if len(tsubs) < 2:
        raise DimensionMismatch("need at least two distinct t-subspaces")
    masks = [s.vector_mask for s in tsubs]
    dim_of = {q**d: d for d in range(t + 1)}
    ext_total = q_binomial(n - t, k - t, q)

    # dim(V1 + V2) = 2t - l must fit in the ambient space, so
    # intersection dimensions below 2t - n cannot occur
    l_min = max(0, 2 * t - n)
    expected: dict[int, list[int]] = {}
    for l in range(l_min, t):
        row = [0] * (t + 1)
        for j in range(l, t + 1):
            b1 = q_binomial(t - l, j - l, q)
            b2 = q_binomial(n - 2 * t + l, k - t - j + l, q)
            if b1 and b2:
                row[j] = q ** ((k - t - j + l) * (t - j)) * b1 * b2
        if sum(row) != ext_total:
            return Lemma2GridReport(
                q=q, n=n, t=t, k=k, pair_count=0, extension_count=ext_total,
                cells=(), ok=False,
                mismatch=f"formula row for l={l} sums to {sum(row)} != {ext_total}",
            )
        for j in range(l, t + 1):
            if row[j] == 0:
                continue
            problem = _ordered_basis_products_check(q, n, t, k, l, j)
            if problem is not None:
                return Lemma2GridReport(
                    q=q, n=n, t=t, k=k, pair_count=0, extension_count=ext_total,
                    cells=(), ok=False, mismatch=problem,
                )
        expected[l] = row

    pair_count = 0
    l_pairs = [0] * t
    for i, V1 in enumerate(tsubs):
        ext_masks = [U.vector_mask for U in extensions(V1, k)]
        if len(ext_masks) != ext_total:
            return Lemma2GridReport(
                q=q, n=n, t=t, k=k, pair_count=pair_count,
                extension_count=ext_total, cells=(), ok=False,
                mismatch=f"extension count {len(ext_masks)} != {ext_total} at V1 index {i}",
            )
        m1 = masks[i]
        for mi, m2 in enumerate(masks):
            if mi == i:
                continue
            l = dim_of[(m1 & m2).bit_count()]
            tally = [0] * (t + 1)
            for um in ext_masks:
                tally[dim_of[(um & m2).bit_count()]] += 1
            if tally != expected[l]:
                return Lemma2GridReport(
                    q=q, n=n, t=t, k=k, pair_count=pair_count,
                    extension_count=ext_total, cells=(), ok=False,
                    mismatch=(
                        f"pair (V1 index {i}, V2 index {mi}, l={l}): "
                        f"counted {tally}, formula {expected[l]}"
                    ),
                )
            l_pairs[l] += 1
            pair_count += 1

    missing = [l for l in range(l_min, t) if l_pairs[l] == 0]
    if missing:
        return Lemma2GridReport(
            q=q, n=n, t=t, k=k, pair_count=pair_count,
            extension_count=ext_total, cells=(), ok=False,
            mismatch=f"no pair realizes intersection dimension {missing[0]}",
        )
    cells = tuple(
        Lemma2Cell(l=l, j=j, formula=expected[l][j], pairs=l_pairs[l])
        for l in range(l_min, t)
        for j in range(l, t + 1)
    )
    return Lemma2GridReport(
        q=q, n=n, t=t, k=k, pair_count=pair_count, extension_count=ext_total,
        cells=cells, ok=True, mismatch="",
    )


@dataclass(frozen=True)
class BoundCheck:
    label: str
    lhs: int
    rhs: int
    ok: bool


@dataclass(frozen=True)
class DetBoundsReport:
    q: int
    t: int
    k: int
    checks: tuple[BoundCheck, ...]

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)


def check_det_bounds(q: int, t: int, k: int) -> DetBoundsReport:
    """Determinant magnitude bounds, the row-maxima product bound, and
    the nonzero generalized-diagonal count of each column-replaced
    matrix (by exhaustive permutation enumeration, so t <= 6)."""
    from itertools import permutations

    if t > 6:
        raise TooLarge("generalized-diagonal enumeration requires t <= 6")
    system = solve_coefficients(q, t, k)
    D = system.D
    size = t + 1
    det_cap = q ** (k * (t + 1) ** 2)
    checks = [BoundCheck("det_D", abs(system.m), det_cap, abs(system.m) <= det_cap)]
    for j in range(size):
        lhs = abs(system.Dj_dets[j])
        checks.append(BoundCheck(f"det_D{j}", lhs, det_cap, lhs <= det_cap))

    prod = 1
    for l in range(size):
        prod *= max(D[l])
    cap6 = 2 ** (k * (t + 1) + 1) * q ** ((k - t) * t * (t + 1))
    checks.append(BoundCheck("row_maxima_product", prod, cap6, prod <= cap6))

    unit = [0] * size
    unit[-1] = 1
    diag_cap = 2**t
    for j in range(size):
        Dj = _replace_column(D, j, unit)
        cnt = 0
        for perm in permutations(range(size)):
            if all(Dj[i][perm[i]] != 0 for i in range(size)):
                cnt += 1
        checks.append(BoundCheck(f"diagonals_D{j}", cnt, diag_cap, cnt <= diag_cap))

    return DetBoundsReport(q=q, t=t, k=k, checks=tuple(checks))


@dataclass(frozen=True)
class C3Report:
    q: int
    t: int
    k: int
    m: int
    l1_norm: int | None
    exact_c3: int | None
    cap: int
    ok: bool | None
    capped: bool


def c3_bound(q: int, t: int, k: int, max_subspaces: int = 10**6) -> C3Report:
    """Exact local-decodability parameter max(m, ||coefficients||_1)
    versus its q^(2k(t+1)^2) cap.

    The l1 norm is computed inside a minimal ambient space of dimension
    t + k (the envelope is the whole space there); if the subspace count
    exceeds max_subspaces only the cap is reported.
    """
    system = solve_coefficients(q, t, k)
    bound = q ** (2 * k * (t + 1) ** 2)
    count = q_binomial(k + t, k, q)
    if count > max_subspaces:
        return C3Report(
            q=q, t=t, k=k, m=system.m, l1_norm=None, exact_c3=None,
            cap=bound, ok=None, capped=True,
        )
    field = make_field(q)
    n0 = t + k
    V = subspace_from_rows(
        field, n0, [tuple(1 if i == j else 0 for i in range(n0)) for j in range(t)]
    )
    vmask = V.vector_mask
    l1 = 0
    for U in iter_subspaces(n0, k, field):
        j = subspace_dim_from_count(q, (U.vector_mask & vmask).bit_count())
        l1 += abs(system.f[j])
    exact = max(system.m, l1)
    return C3Report(
        q=q, t=t, k=k, m=system.m, l1_norm=l1, exact_c3=exact,
        cap=bound, ok=exact <= bound, capped=False,
    )
