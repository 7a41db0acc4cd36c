"""Exact linear algebra over the rationals.

Everything here works on plain lists of ``fractions.Fraction``.  The
reductions are textbook Gauss-Jordan with exact pivots; no tolerances, no
floating point.  Matrices at the sizes this package needs (a few hundred
rows) are well within reach of dense elimination, except for the very
sparse homogeneous-field matrices, which get a dict-based sparse rank.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence


def _as_row(row: Sequence, ncols: int) -> list[Fraction]:
    out = [Fraction(0)] * ncols
    for j, v in enumerate(row):
        if j >= ncols:
            break
        out[j] = v if isinstance(v, Fraction) else Fraction(v)
    return out


def rref(rows: Iterable[Sequence], ncols: int) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form; returns (nonzero rows, pivot columns)."""
    mat = [_as_row(r, ncols) for r in rows]
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pivot = None
        for i in range(r, len(mat)):
            if mat[i][c] != 0:
                pivot = i
                break
        if pivot is None:
            continue
        mat[r], mat[pivot] = mat[pivot], mat[r]
        inv = 1 / mat[r][c]
        mat[r] = [v * inv for v in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][c] != 0:
                factor = mat[i][c]
                mat[i] = [a - factor * b for a, b in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
        if r == len(mat):
            break
    return mat[:r], pivots


class RowSpace:
    """A row-reduced rational subspace with membership and quotient queries."""

    def __init__(self, rows: Iterable[Sequence], ncols: int):
        self.ncols = ncols
        self.rows, self.pivots = rref(rows, ncols)

    @property
    def rank(self) -> int:
        return len(self.rows)

    def reduce(self, vec: Sequence) -> list[Fraction]:
        """Residual of ``vec`` after elimination against the span."""
        v = _as_row(vec, self.ncols)
        for row, c in zip(self.rows, self.pivots):
            if v[c] != 0:
                factor = v[c]
                v = [a - factor * b for a, b in zip(v, row)]
        return v

    def contains(self, vec: Sequence) -> bool:
        return not any(self.reduce(vec))

    def quotient_rank(self, vecs: Iterable[Sequence]) -> int:
        """Dimension of the span of ``vecs`` inside the quotient by this space."""
        extra: list[list[Fraction]] = []
        count = 0
        for vec in vecs:
            v = self.reduce(vec)
            for row in extra:
                c = next((j for j, x in enumerate(row) if x != 0), None)
                if c is not None and v[c] != 0:
                    factor = v[c] / row[c]
                    v = [a - factor * b for a, b in zip(v, row)]
            if any(v):
                extra.append(v)
                count += 1
        return count


def solve(matrix: Sequence[Sequence], rhs: Sequence) -> list[Fraction] | None:
    """Solve a square exact linear system; None if singular/inconsistent."""
    n = len(matrix)
    aug = [_as_row(row, n) + [Fraction(rhs[i])] for i, row in enumerate(matrix)]
    for c in range(n):
        pivot = next((i for i in range(c, n) if aug[i][c] != 0), None)
        if pivot is None:
            return None
        aug[c], aug[pivot] = aug[pivot], aug[c]
        inv = 1 / aug[c][c]
        aug[c] = [v * inv for v in aug[c]]
        for i in range(n):
            if i != c and aug[i][c] != 0:
                factor = aug[i][c]
                aug[i] = [a - factor * b for a, b in zip(aug[i], aug[c])]
    return [aug[i][n] for i in range(n)]


def sparse_rank(rows: Iterable[dict[int, Fraction]]) -> int:
    """Rank of a sparse rational matrix given as dicts column -> value."""
    echelon: dict[int, dict[int, Fraction]] = {}
    rank = 0
    for row in rows:
        work = {c: v for c, v in row.items() if v != 0}
        while work:
            lead = min(work)
            if lead not in echelon:
                inv = 1 / work[lead]
                echelon[lead] = {c: v * inv for c, v in work.items()}
                rank += 1
                break
            factor = work[lead]
            for c, v in echelon[lead].items():
                newv = work.get(c, Fraction(0)) - factor * v
                if newv:
                    work[c] = newv
                else:
                    work.pop(c, None)
    return rank
