"""Exact linear algebra over Q for small sparse matrices.

Matrices are given as ``{(row, col): value}`` dicts together with their
shape.  Rank uses fraction-free elimination on integer rows (each row is
scaled to a primitive integer vector); solving uses Gauss-Jordan over
``Fraction``.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

Sparse = Mapping[Tuple[int, int], Fraction]


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


def _primitive(row: Dict[int, int]) -> Dict[int, int]:
    g = 0
    for v in row.values():
        g = gcd(g, v)
        if g == 1:
            return row
    if g > 1:
        return {c: v // g for c, v in row.items()}
    return row


def _integer_rows(entries: Sparse, nrows: int) -> List[Dict[int, int]]:
    rows: List[Dict[int, Fraction]] = [dict() for _ in range(nrows)]
    for (r, c), v in entries.items():
        if v:
            rows[r][c] = Fraction(v)
    out = []
    for row in rows:
        if not row:
            continue
        den = 1
        for v in row.values():
            den = _lcm(den, v.denominator)
        out.append(_primitive({c: int(v * den) for c, v in row.items()}))
    return out


def rank(entries: Sparse, shape: Tuple[int, int]) -> int:
    """Rank of a sparse rational matrix."""
    nrows, ncols = shape
    if nrows == 0 or ncols == 0:
        return 0
    rows = _integer_rows(entries, nrows)
    r = 0
    while rows:
        # pivot: sparsest row, then its smallest column with the smallest |value|
        rows.sort(key=len)
        pivot = rows.pop(0)
        col = min(pivot, key=lambda c: (abs(pivot[c]), c))
        p = pivot[col]
        r += 1
        nxt = []
        for row in rows:
            c = row.get(col)
            if c is None:
                nxt.append(row)
                continue
            new = {k: p * v for k, v in row.items()}
            for k, v in pivot.items():
                w = new.get(k, 0) - c * v
                if w:
                    new[k] = w
                else:
                    new.pop(k, None)
            if new:
                nxt.append(_primitive(new))
        rows = nxt
    return r


def dense_to_sparse(rows: Sequence[Sequence]) -> Tuple[Dict[Tuple[int, int], Fraction], Tuple[int, int]]:
    out = {}
    for i, row in enumerate(rows):
        for j, v in enumerate(row):
            if v:
                out[(i, j)] = Fraction(v)
    ncols = len(rows[0]) if rows else 0
    return out, (len(rows), ncols)


def solve(entries: Sparse, shape: Tuple[int, int], rhs: Sequence) -> Optional[List[Fraction]]:
    """One solution x of A x = rhs, or ``None`` if the system is inconsistent.

    Deterministic: reduced row echelon form with pivots taken in column
    order; free unknowns are set to zero.
    """
    nrows, ncols = shape
    m: List[List[Fraction]] = [[Fraction(0)] * ncols + [Fraction(rhs[i])] for i in range(nrows)]
    for (r, c), v in entries.items():
        m[r][c] = Fraction(v)
    pivots = []
    prow = 0
    for col in range(ncols):
        piv = next((i for i in range(prow, nrows) if m[i][col] != 0), None)
        if piv is None:
            continue
        m[prow], m[piv] = m[piv], m[prow]
        inv = 1 / m[prow][col]
        m[prow] = [v * inv for v in m[prow]]
        for i in range(nrows):
            if i != prow and m[i][col] != 0:
                f = m[i][col]
                m[i] = [a - f * b for a, b in zip(m[i], m[prow])]
        pivots.append(col)
        prow += 1
        if prow == nrows:
            break
    for i in range(prow, nrows):
        if m[i][ncols] != 0:
            return None
    x = [Fraction(0)] * ncols
    for i, col in enumerate(pivots):
        x[col] = m[i][ncols]
    return x


def nullspace(entries: Sparse, shape: Tuple[int, int]) -> List[List[Fraction]]:
    """Basis of the right kernel, one vector per free column (RREF order)."""
    nrows, ncols = shape
    m: List[List[Fraction]] = [[Fraction(0)] * ncols for _ in range(nrows)]
    for (r, c), v in entries.items():
        m[r][c] = Fraction(v)
    pivots = []
    prow = 0
    for col in range(ncols):
        if prow == nrows:
            break
        piv = next((i for i in range(prow, nrows) if m[i][col] != 0), None)
        if piv is None:
            continue
        m[prow], m[piv] = m[piv], m[prow]
        inv = 1 / m[prow][col]
        m[prow] = [v * inv for v in m[prow]]
        for i in range(nrows):
            if i != prow and m[i][col] != 0:
                f = m[i][col]
                m[i] = [a - f * b for a, b in zip(m[i], m[prow])]
        pivots.append(col)
        prow += 1
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * ncols
        v[fc] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = -m[i][fc]
        basis.append(v)
    return basis
