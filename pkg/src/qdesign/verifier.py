"""Verify candidate block collections as simple t-(n, k, lambda) designs
over F_q.

A collection of k-subspaces is a t-design iff every t-subspace of the
ambient space is contained in the same number lambda of blocks.
Verification counts coverage per t-subspace directly from the blocks
(each block contributes its own [k t]_q t-subspaces), so the full
incidence matrix is never materialized and the only size cap is the
number of t-subspaces.

Design file format (text):
    line 1: "q n k"
    then blocks separated by blank lines, each block k lines of n
    digits (field element indices; 0-9a-f covers q <= 16).
The JSON form carries the same fields plus a schema_version.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass

from .errors import DimensionMismatch, TooLarge
from .gf import FieldSpec, make_field, mat_mul
from .grassmann import SubspaceBasis, iter_subspaces, subspace_from_rows
from .qcount import q_binomial

_DIGITS = "0123456789abcdef"


@dataclass(frozen=True)
class DesignCandidate:
    field: FieldSpec
    n: int
    k: int
    blocks: tuple[SubspaceBasis, ...]

    def __post_init__(self) -> None:
        for b in self.blocks:
            if b.field.q != self.field.q or b.n != self.n:
                raise DimensionMismatch("block lives in the wrong ambient space")
            if b.k != self.k:
                raise DimensionMismatch(f"block of dimension {b.k}, expected {self.k}")


@dataclass(frozen=True)
class VerificationReport:
    is_design: bool
    t: int
    lambda_: int | None
    is_simple: bool
    is_trivial: bool
    failing_t_subspace: SubspaceBasis | None
    counts_histogram: dict[int, int]


def verify_design(
    candidate: DesignCandidate, t: int, max_columns: int = 10**7
) -> VerificationReport:
    """Count, for every t-subspace, the blocks containing it.

    If the candidate is a design the common count lambda satisfies
    lambda [n t]_q = N [k t]_q (every block covers [k t]_q columns).
    On failure the witness is the first t-subspace in canonical order
    whose count differs from the most common count (ties broken toward
    the smaller count).
    """
    field, n, k = candidate.field, candidate.n, candidate.k
    q = field.q
    if not 0 <= t <= k:
        raise DimensionMismatch(f"need 0 <= t <= k, got t={t}, k={k}")
    num_cols = q_binomial(n, t, q)
    if num_cols > max_columns:
        raise TooLarge(f"[{n} {t}]_{q} = {num_cols} exceeds cap {max_columns}")

    counts: dict[SubspaceBasis, int] = {a: 0 for a in iter_subspaces(n, t, field)}
    patterns = [W.basis for W in iter_subspaces(k, t, field)]
    for block in candidate.blocks:
        for pat in patterns:
            image = mat_mul(pat, block.basis)
            counts[subspace_from_rows(field, n, image.row_list())] += 1

    histogram = dict(sorted(Counter(counts.values()).items()))
    N = len(candidate.blocks)
    is_simple = len(set(candidate.blocks)) == N
    is_design = len(histogram) == 1
    lambda_: int | None = None
    failing: SubspaceBasis | None = None
    if is_design:
        lambda_ = next(iter(histogram))
        if lambda_ * q_binomial(n, t, q) != N * q_binomial(k, t, q):
            raise AssertionError("design counting identity violated")
    else:
        mode = min(histogram, key=lambda c: (-histogram[c], c))
        failing = next(a for a, c in counts.items() if c != mode)
    is_trivial = is_simple and N == q_binomial(n, k, q)
    return VerificationReport(
        is_design=is_design,
        t=t,
        lambda_=lambda_,
        is_simple=is_simple,
        is_trivial=is_trivial,
        failing_t_subspace=failing,
        counts_histogram=histogram,
    )


def lambda_identity_check(n: int, k: int, t: int, q: int, N: int) -> int | None:
    """lambda = N [k t]_q / [n t]_q if that division is exact, else None.

    None means no design with N blocks can exist at these parameters.
    """
    if not 0 <= t <= k <= n:
        raise DimensionMismatch("need 0 <= t <= k <= n")
    lam, rem = divmod(N * q_binomial(k, t, q), q_binomial(n, t, q))
    return lam if rem == 0 else None


# ---------------------------------------------------------------------------
# design file I/O


def format_design_text(candidate: DesignCandidate) -> str:
    out = [f"{candidate.field.q} {candidate.n} {candidate.k}"]
    for block in candidate.blocks:
        out.append("")
        for row in block.rows():
            out.append("".join(_DIGITS[x] for x in row))
    return "\n".join(out) + "\n"


def design_to_json_obj(candidate: DesignCandidate) -> dict:
    return {
        "schema_version": 1,
        "q": candidate.field.q,
        "n": candidate.n,
        "k": candidate.k,
        "blocks": [
            ["".join(_DIGITS[x] for x in row) for row in block.rows()]
            for block in candidate.blocks
        ],
    }


def _block_from_digit_rows(field: FieldSpec, n: int, k: int, rows: list[str]) -> SubspaceBasis:
    if len(rows) != k:
        raise ValueError(f"block has {len(rows)} rows, expected {k}")
    parsed = []
    for line in rows:
        if len(line) != n:
            raise ValueError(f"row '{line}' has {len(line)} digits, expected {n}")
        parsed.append(tuple(int(c, 16) for c in line))
    block = subspace_from_rows(field, n, parsed)
    if block.k != k:
        raise ValueError("block rows are not linearly independent")
    return block


def parse_design_text(text: str) -> DesignCandidate:
    lines = [ln.strip() for ln in text.splitlines()]
    if not lines:
        raise ValueError("empty design file")
    header = lines[0].split()
    if len(header) != 3:
        raise ValueError("header must be 'q n k'")
    q, n, k = (int(x) for x in header)
    field = make_field(q)
    blocks = []
    current: list[str] = []
    for ln in lines[1:]:
        if ln:
            current.append(ln)
        elif current:
            blocks.append(_block_from_digit_rows(field, n, k, current))
            current = []
    if current:
        blocks.append(_block_from_digit_rows(field, n, k, current))
    return DesignCandidate(field=field, n=n, k=k, blocks=tuple(blocks))


def design_from_json_obj(obj: dict) -> DesignCandidate:
    q, n, k = int(obj["q"]), int(obj["n"]), int(obj["k"])
    field = make_field(q)
    blocks = tuple(
        _block_from_digit_rows(field, n, k, list(rows)) for rows in obj["blocks"]
    )
    return DesignCandidate(field=field, n=n, k=k, blocks=blocks)


def load_design(path: str) -> DesignCandidate:
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    if text.lstrip().startswith("{"):
        return design_from_json_obj(json.loads(text))
    return parse_design_text(text)


def save_design(candidate: DesignCandidate, path: str, fmt: str = "text") -> None:
    if fmt == "text":
        payload = format_design_text(candidate)
    elif fmt == "json":
        payload = json.dumps(design_to_json_obj(candidate), indent=2, sort_keys=True) + "\n"
    else:
        raise ValueError(f"unknown design format {fmt!r}")
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(payload)
