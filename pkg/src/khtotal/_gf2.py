"""GF(2) linear algebra on int bitsets.

Rows are Python ints; bit i is column i.  Small systems only, so plain
Gaussian elimination is fine.
"""

from __future__ import annotations


def rref(rows: list[int], ncols: int) -> tuple[list[int], dict[int, int]]:
    """Reduced row echelon form.  Returns (rows, pivots) with pivots col->row."""
    work = [r for r in rows if r]
    pivots: dict[int, int] = {}
    row_idx = 0
    for col in range(ncols):
        pivot = None
        for r in range(row_idx, len(work)):
            if (work[r] >> col) & 1:
                pivot = r
                break
        if pivot is None:
            continue
        work[row_idx], work[pivot] = work[pivot], work[row_idx]
        for r in range(len(work)):
            if r != row_idx and ((work[r] >> col) & 1):
                work[r] ^= work[row_idx]
        pivots[col] = row_idx
        row_idx += 1
        if row_idx == len(work):
            break
    return work[:row_idx], pivots


def rank(rows: list[int], ncols: int) -> int:
    reduced, _ = rref(rows, ncols)
    return len(reduced)


def kernel_basis(rows: list[int], nvars: int) -> list[int]:
    """Basis of the nullspace of A x = 0 where A's rows are bitmask ints."""
    reduced, pivots = rref(rows, nvars)
    basis = []
    pivot_cols = set(pivots)
    for free in range(nvars):
        if free in pivot_cols:
            continue
        vec = 1 << free
        for col, r in pivots.items():
            if (reduced[r] >> free) & 1:
                vec |= 1 << col
        basis.append(vec)
    return basis


def in_row_span(rows: list[int], ncols: int, vec: int) -> bool:
    return rank(rows + [vec], ncols) == rank(rows, ncols)


def span_rank(vectors: list[int], ncols: int) -> int:
    return rank(list(vectors), ncols)


def same_span(a: list[int], b: list[int], ncols: int) -> bool:
    ra = rank(list(a), ncols)
    rb = rank(list(b), ncols)
    return ra == rb == rank(list(a) + list(b), ncols)
