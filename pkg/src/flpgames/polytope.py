"""Brute-force vertex enumeration for ``{x >= 0 : A x <= b}``.

Every vertex is the unique solution of some choice of ``p`` tight constraints
among the ``m + p`` (resource rows plus nonnegativity).  This never touches the
simplex code, which makes it usable as an independent check on it.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from typing import Optional, Sequence

from .numeric import dot


def solve_unique(matrix: Sequence[Sequence], rhs: Sequence) -> Optional[list]:
    """Exact Gauss-Jordan solve of ``matrix @ x = rhs``.

    Works for tall systems too.  Returns None unless the system is consistent
    with full column rank (i.e. has exactly one solution).
    """
    rows = [[Fraction(a) for a in r] + [Fraction(b)] for r, b in zip(matrix, rhs)]
    ncols = len(matrix[0]) if matrix else 0
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if pivot is None:
            return None
        rows[r], rows[pivot] = rows[pivot], rows[r]
        pr = rows[r]
        inv = 1 / pr[c]
        pr = [v * inv for v in pr]
        rows[r] = pr
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], pr)]
        r += 1
    if any(row[-1] for row in rows[r:]):
        return None
    return [rows[i][-1] for i in range(ncols)]


def vertices(A: Sequence[Sequence], b: Sequence) -> list[tuple]:
    """All vertices of ``{x >= 0 : A x <= b}``, deduplicated, in a stable order."""
    p = len(A[0]) if A else 0
    eye = [[Fraction(int(i == j)) for j in range(p)] for i in range(p)]
    rows = [list(map(Fraction, r)) for r in A] + eye
    rhs = [Fraction(v) for v in b] + [Fraction(0)] * p
    m = len(A)
    found = {}
    for picked in combinations(range(m + p), p):
        x = solve_unique([rows[k] for k in picked], [rhs[k] for k in picked])
        if x is None:
            continue
        if any(v < 0 for v in x):
            continue
        if all(dot(A[i], x) <= b[i] for i in range(m)):
            found.setdefault(tuple(x), None)
    return list(found)


def ratio_max_over_vertices(A, b, c, c0, d, d0):
    """Largest ``(c.x + c0) / (d.x + d0)`` over the vertices, with its vertex."""
    best = None
    for x in vertices(A, b):
        den = dot(d, x) + d0
        if den <= 0:
            raise ValueError("denominator not positive at a vertex")
        val = (dot(c, x) + c0) / den
        if best is None or val > best[0]:
            best = (val, x)
    return best
