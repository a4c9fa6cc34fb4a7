"""Small exact linear algebra helpers over the rationals (and generic rings).

Matrices are lists of row lists. Everything is deterministic: no pivoting
heuristics are needed because the arithmetic is exact.
"""

from __future__ import annotations

from fractions import Fraction
from typing import List, Optional, Sequence


def det(matrix: Sequence[Sequence]) -> object:
    """Determinant of a square matrix over any commutative ring.

    Uses Laplace expansion with dynamic programming over column subsets, so
    entries only need +, - and *. Intended for small matrices (size <= ~6).
    """
    n = len(matrix)
    if n == 0:
        return Fraction(1)
    for row in matrix:
        if len(row) != n:
            raise ValueError("determinant of a non-square matrix")
    # minors[mask] = det of rows 0..k-1 restricted to the columns in mask
    minors = {0: Fraction(1)}
    for k in range(n):
        row = matrix[k]
        new = {}
        for mask, value in minors.items():
            # expanding along row k: cofactor sign is (-1)^(k + column position)
            sign = (-1) ** k
            for j in range(n):
                bit = 1 << j
                if mask & bit:
                    sign = -sign
                    continue
                term = sign * value * row[j]
                key = mask | bit
                if key in new:
                    new[key] = new[key] + term
                else:
                    new[key] = term
        minors = new
    return minors[(1 << n) - 1]


def rank(rows: Sequence[Sequence[Fraction]]) -> int:
    """Rank of a rational matrix by exact Gaussian elimination."""
    work = [[Fraction(c) for c in row] for row in rows]
    if not work:
        return 0
    ncols = len(work[0])
    r = 0
    for col in range(ncols):
        pivot = next((i for i in range(r, len(work)) if work[i][col] != 0), None)
        if pivot is None:
            continue
        work[r], work[pivot] = work[pivot], work[r]
        inv = 1 / work[r][col]
        work[r] = [c * inv for c in work[r]]
        for i in range(len(work)):
            if i != r and work[i][col] != 0:
                factor = work[i][col]
                work[i] = [a - factor * b for a, b in zip(work[i], work[r])]
        r += 1
        if r == len(work):
            break
    return r


def in_span(vectors: Sequence[Sequence[Fraction]], candidate: Sequence[Fraction]) -> bool:
    """Whether candidate lies in the linear span of the given vectors."""
    if all(c == 0 for c in candidate):
        return True
    base = list(vectors)
    return rank(base) == rank(base + [list(candidate)])


def solve(matrix: Sequence[Sequence[Fraction]], rhs: Sequence[Fraction]) -> Optional[List[Fraction]]:
    """Solve a square rational system exactly; None if the matrix is singular."""
    n = len(matrix)
    aug = [[Fraction(c) for c in row] + [Fraction(rhs[i])] for i, row in enumerate(matrix)]
    for col in range(n):
        pivot = next((i for i in range(col, n) if aug[i][col] != 0), None)
        if pivot is None:
            return None
        aug[col], aug[pivot] = aug[pivot], aug[col]
        inv = 1 / aug[col][col]
        aug[col] = [c * inv for c in aug[col]]
        for i in range(n):
            if i != col and aug[i][col] != 0:
                factor = aug[i][col]
                aug[i] = [a - factor * b for a, b in zip(aug[i], aug[col])]
    return [aug[i][n] for i in range(n)]
