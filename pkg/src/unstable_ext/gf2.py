"""Dense GF(2) linear algebra on bit-packed rows.

A matrix is a list of Python ints plus a column count; bit k of row i is the
entry (i, k).  Everything reduces to the backend ``rref_bits`` kernel so the
compiled and pure implementations agree bit for bit.
"""

from __future__ import annotations

from typing import NamedTuple

from unstable_ext._backend import rref_bits


class Mat(NamedTuple):
    rows: list[int]
    ncols: int


def zeros(nrows: int, ncols: int) -> Mat:
    return Mat([0] * nrows, ncols)


def identity(n: int) -> Mat:
    return Mat([1 << i for i in range(n)], n)


def rref(m: Mat) -> tuple[Mat, list[int]]:
    work, pivots = rref_bits(m.rows, m.ncols)
    return Mat(work, m.ncols), pivots


def rank(m: Mat) -> int:
    return len(rref_bits(m.rows, m.ncols)[1])


def mat_mul(a: Mat, b: Mat) -> Mat:
    """Rows of ``a`` hit ``b``: out[i] = sum of b.rows[k] over set bits k."""
    if a.ncols != len(b.rows):
        raise ValueError(f"shape mismatch: {a.ncols} cols vs {len(b.rows)} rows")
    out = []
    for row in a.rows:
        acc = 0
        rem = row
        while rem:
            low = rem & -rem
            acc ^= b.rows[low.bit_length() - 1]
            rem ^= low
        out.append(acc)
    return Mat(out, b.ncols)


def transpose(m: Mat) -> Mat:
    out = [0] * m.ncols
    for i, row in enumerate(m.rows):
        rem = row
        while rem:
            low = rem & -rem
            out[low.bit_length() - 1] |= 1 << i
            rem ^= low
    return Mat(out, len(m.rows))


def nullspace(m: Mat) -> list[int]:
    """Basis of ker(m): solutions x of m @ x = 0, bit-packed over columns.

    Canonical form: one vector per free column, with that free column set
    and pivot columns back-filled from the reduced rows.
    """
    work, pivots = rref_bits(m.rows, m.ncols)
    pivot_set = set(pivots)
    basis = []
    for free in range(m.ncols):
        if free in pivot_set:
            continue
        vec = 1 << free
        for r, pc in enumerate(pivots):
            if work[r] & (1 << free):
                vec |= 1 << pc
        basis.append(vec)
    return basis


def left_kernel(m: Mat) -> list[int]:
    """Basis of row relations: vectors y with y @ m = 0, packed over rows.

    Augment each row with an identity tail, reduce pivoting only on the
    original columns; rows whose original part vanished carry the relation
    in the tail.
    """
    n = len(m.rows)
    aug = [m.rows[i] | (1 << (m.ncols + i)) for i in range(n)]
    work, pivots = rref_bits(aug, m.ncols + n, n_pivot_cols=m.ncols)
    mask = (1 << m.ncols) - 1
    out = []
    for i in range(len(pivots), n):
        if work[i] & mask:
            raise AssertionError("row survived past its pivot count")
        out.append(work[i] >> m.ncols)
    return out


def solve_lex_min(m: Mat, rhs: list[int]) -> int | None:
    """Solve m @ x = rhs over GF(2), x minimal in lexicographic order.

    ``rhs`` has one bit per row.  The returned solution (bit-packed over the
    ncols variables) is the one that zeroes variables greedily from variable
    0 upward.  Achieved by reversing the variable columns, running plain
    RREF (which then pivots on the highest-index variables first), setting
    free variables to zero, and mapping back.  Returns None if inconsistent.
    """
    n = m.ncols
    rev = []
    for i, row in enumerate(m.rows):
        acc = 0
        rem = row
        while rem:
            low = rem & -rem
            acc |= 1 << (n - 1 - (low.bit_length() - 1))
            rem ^= low
        if rhs[i]:
            acc |= 1 << n
        rev.append(acc)
    work, pivots = rref_bits(rev, n + 1, n_pivot_cols=n)
    rhs_bit = 1 << n
    for i in range(len(pivots), len(work)):
        if work[i] & rhs_bit:
            return None
    x = 0
    for r, pc in enumerate(pivots):
        if work[r] & rhs_bit:
            x |= 1 << (n - 1 - pc)
    return x


def row_space_project(m: Mat, vec: int) -> int:
    """Reduce ``vec`` modulo the row space of ``m`` (canonical remainder)."""
    work, pivots = rref_bits(m.rows, m.ncols)
    out = vec
    for r, pc in enumerate(pivots):
        if out & (1 << pc):
            out ^= work[r]
    return out


def in_row_space(m: Mat, vec: int) -> bool:
    return row_space_project(m, vec) == 0
