"""Exact-integer evaluation of the existence-condition parameter bounds
and the feasibility inequality for the t-vs-k incidence structure.

All quantities are bounds expressed as powers of q and evaluated as big
integers; fractional exponents a/b are evaluated as exact ceilings
(integer b-th root of x^a, rounded up), which upper-rounds the
right-hand side and therefore never falsely reports feasibility.  The
log factor is read as (log(|A| c2))^8 and implemented as bit_length^8,
an upper bound on the base-2 logarithm.  The inequality involves an
unspecified absolute constant, so feasibility is always reported
relative to the supplied constant.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DimensionMismatch
from .localdecode import solve_coefficients
from .qcount import q_binomial


def nth_root_floor(x: int, r: int) -> int:
    """Largest integer y with y^r <= x (Newton iteration on big ints)."""
    if x < 0 or r < 1:
        raise ValueError("need x >= 0, r >= 1")
    if x == 0:
        return 0
    if r == 1:
        return x
    g = 1 << -(-x.bit_length() // r)  # >= true root
    while True:
        ng = ((r - 1) * g + x // g ** (r - 1)) // r
        if ng >= g:
            break
        g = ng
    while g**r > x:
        g -= 1
    while (g + 1) ** r <= x:
        g += 1
    return g


def pow_frac_ceil(x: int, num: int, den: int) -> int:
    """Smallest integer >= x^(num/den), exactly."""
    p = x**num
    root = nth_root_floor(p, den)
    return root if root**den == p else root + 1


@dataclass(frozen=True)
class KLPReport:
    q: int
    n: int
    k: int
    t: int
    constant: int
    c1_bound: int
    c2: int
    c3_bound: int
    A_upper: int
    B_lower: int
    A_exact: int | None
    B_exact: int | None
    rhs_final: int
    feasible: bool
    block_budget: int
    k_gt_12t: bool
    k_gt_12t_plus_1: bool
    log_reading: str


def klp_report(q: int, n: int, k: int, t: int, constant: int = 1) -> KLPReport:
    """Evaluate every parameter bound and the feasibility inequality
    rhs(constant) < |B|_lower as exact integers.

    The boundedness parameter is always 1 (0/1 entries).  Exact |A| and
    |B| are included for n <= 64.  Both dimension thresholds that appear
    around the headline statement (k > 12t and k > 12(t+1)) are
    surfaced; neither is asserted, feasibility is purely the evaluated
    inequality.
    """
    if not 1 <= t <= k <= n:
        raise DimensionMismatch(f"need 1 <= t <= k <= n, got t={t}, k={k}, n={n}")
    if constant < 1:
        raise ValueError("constant must be >= 1")
    c1_bound = q ** (k * (t + 1) ** 2 + t * (n - t) + n)
    c2 = 1
    c3_bound = q ** (2 * k * (t + 1) ** 2)
    A_upper = q ** (t * (n - t) + n)
    B_lower = q ** (k * (n - k))
    if n <= 64:
        A_exact: int | None = q_binomial(n, t, q)
        B_exact: int | None = q_binomial(n, k, q)
    else:
        A_exact = None
        B_exact = None
    log_factor = (A_upper * c2).bit_length() ** 8
    rhs_final = (
        constant
        * pow_frac_ceil(A_upper, 52, 5)
        * c1_bound
        * pow_frac_ceil(c2 * c3_bound, 12, 5)
        * log_factor
    )
    return KLPReport(
        q=q,
        n=n,
        k=k,
        t=t,
        constant=constant,
        c1_bound=c1_bound,
        c2=c2,
        c3_bound=c3_bound,
        A_upper=A_upper,
        B_lower=B_lower,
        A_exact=A_exact,
        B_exact=B_exact,
        rhs_final=rhs_final,
        feasible=rhs_final < B_lower,
        block_budget=q ** (12 * (t + 1) * n),
        k_gt_12t=k > 12 * t,
        k_gt_12t_plus_1=k > 12 * (t + 1),
        log_reading="bit_length(|A| c2) ** 8",
    )


def divisibility_witness(q: int, n: int, k: int, t: int) -> int:
    """The witness bound m [n t]_q on the divisibility parameter.

    m [n t]_q times the constant average row [k t]_q / [n t]_q collapses
    to m [k t]_q, an integer vector, which is what makes the witness
    valid; that integrality is re-checked here with exact rationals.
    """
    if not 1 <= t <= k <= n <= 64:
        raise DimensionMismatch("need 1 <= t <= k <= n <= 64")
    from fractions import Fraction

    m = solve_coefficients(q, t, k).m
    witness = m * q_binomial(n, t, q)
    avg = Fraction(q_binomial(k, t, q), q_binomial(n, t, q))
    scaled = witness * avg
    if scaled.denominator != 1 or scaled != m * q_binomial(k, t, q):
        raise AssertionError("witness times average row must be integral")
    return witness
