"""Exact lattice linear algebra: Hermite/Smith normal forms and solvers.

Everything runs on arbitrary-precision Python integers; a generic variant
of the echelon reduction accepts any Euclidean divmod so the same code
serves univariate polynomial lattices.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Optional, Sequence


Matrix = list[list[int]]


def hnf_rows(rows: Sequence[Sequence[int]], ncols: int) -> Matrix:
    """Row-style Hermite normal form (row echelon, positive pivots).

    Pivot columns increase down the rows; entries below a pivot are zero
    and entries above it are reduced into [0, pivot).  Zero rows are
    dropped.
    """
    work = [list(r) for r in rows]
    h, _ = _echelon_with_transform(work, ncols)
    return h


def hnf_with_transform(rows: Sequence[Sequence[int]], ncols: int) -> tuple[Matrix, Matrix]:
    """(H, U) with H the row HNF of the input and U unimodular, H = U * rows.

    H keeps its zero rows here so U stays square.
    """
    work = [list(r) for r in rows]
    return _echelon_with_transform(work, ncols, keep_zero_rows=True)


def _echelon_with_transform(
    work: Matrix, ncols: int, keep_zero_rows: bool = False
) -> tuple[Matrix, Matrix]:
    m = len(work)
    transform = [[1 if i == j else 0 for j in range(m)] for i in range(m)]
    pivot_row = 0
    for col in range(ncols):
        # euclidean elimination in this column below pivot_row
        while True:
            candidates = [i for i in range(pivot_row, m) if work[i][col] != 0]
            if len(candidates) <= 1:
                break
            candidates.sort(key=lambda i: abs(work[i][col]))
            base = candidates[0]
            for other in candidates[1:]:
                q = work[other][col] // work[base][col]
                _row_axpy(work, transform, other, base, -q)
        nonzero = [i for i in range(pivot_row, m) if work[i][col] != 0]
        if not nonzero:
            continue
        i = nonzero[0]
        if i != pivot_row:
            work[i], work[pivot_row] = work[pivot_row], work[i]
            transform[i], transform[pivot_row] = transform[pivot_row], transform[i]
        if work[pivot_row][col] < 0:
            _row_scale(work, transform, pivot_row, -1)
        # reduce the entries above the pivot into [0, pivot)
        for above in range(pivot_row):
            q = work[above][col] // work[pivot_row][col]
            if q:
                _row_axpy(work, transform, above, pivot_row, -q)
        pivot_row += 1
    if not keep_zero_rows:
        kept = [r for r in work if any(r)]
        return kept, transform
    return work, transform


def _row_axpy(work: Matrix, transform: Matrix, target: int, source: int, factor: int) -> None:
    work[target] = [a + factor * b for a, b in zip(work[target], work[source])]
    transform[target] = [a + factor * b for a, b in zip(transform[target], transform[source])]


def _row_scale(work: Matrix, transform: Matrix, row: int, factor: int) -> None:
    work[row] = [factor * a for a in work[row]]
    transform[row] = [factor * a for a in transform[row]]


def kernel_basis(a: Sequence[Sequence[int]], nvars: int) -> Matrix:
    """Basis of {x in Z^nvars : a x = 0} for a matrix given by rows."""
    nrows = len(a)
    solved = solve_with_kernel(a, [0] * nrows)
    assert solved is not None
    return solved[1]


def solve_with_kernel(
    a: Sequence[Sequence[int]], b: Sequence[int]
) -> Optional[tuple[list[int], Matrix]]:
    """All integer solutions of a x = b: (particular, kernel basis), or None."""
    nrows = len(a)
    nvars = len(a[0]) if nrows else 0
    if nrows == 0:
        return [0] * nvars, [[1 if i == j else 0 for j in range(nvars)] for i in range(nvars)]
    # rows (i-th column of a | e_i): a combination with tail c has left block a*c
    stacked = [
        [a[r][i] for r in range(nrows)] + [1 if k == i else 0 for k in range(nvars)]
        for i in range(nvars)
    ]
    h, _ = _echelon_with_transform([list(r) for r in stacked], nrows + nvars, keep_zero_rows=True)
    kernel = [row[nrows:] for row in h if all(x == 0 for x in row[:nrows]) and any(row[nrows:])]
    # forward-substitute b through the echelon left blocks
    residual = list(b)
    x = [0] * nvars
    for row in h:
        left = row[:nrows]
        pivots = [c for c in range(nrows) if left[c] != 0]
        if not pivots:
            continue
        c = pivots[0]
        if residual[c] % left[c] != 0:
            continue  # try later rows; echelon order makes retries useless, checked below
        q = residual[c] // left[c]
        if q:
            residual = [r - q * l for r, l in zip(residual, left)]
            x = [xi + q * t for xi, t in zip(x, row[nrows:])]
    if any(residual):
        return None
    return x, kernel


def reduce_lex_least(x: list[int], lattice_rows: Sequence[Sequence[int]]) -> list[int]:
    """The lexicographically least nonnegative representative of x + lattice.

    Requires the lattice to have full rank (so the representative exists);
    rows are HNF-reduced internally.
    """
    n = len(x)
    h = hnf_rows(lattice_rows, n)
    if len(h) != n:
        raise ValueError("lattice is not full rank; no canonical representative")
    out = list(x)
    for i in range(n):
        pivot = h[i][i]
        q = out[i] // pivot  # floor division keeps the result in [0, pivot)
        if q:
            out = [a - q * b for a, b in zip(out, h[i])]
    return out


def smith_invariants(a: Sequence[Sequence[int]]) -> list[int]:
    """Nonzero diagonal of the Smith normal form (d1 | d2 | ...)."""
    work = [list(r) for r in a]
    m = len(work)
    n = len(work[0]) if m else 0
    invariants: list[int] = []
    top = 0
    while top < min(m, n):
        if all(work[i][j] == 0 for i in range(top, m) for j in range(top, n)):
            break
        # smallest nonzero entry to the pivot position
        best = None
        for i in range(top, m):
            for j in range(top, n):
                if work[i][j] != 0 and (best is None or abs(work[i][j]) < abs(work[best[0]][best[1]])):
                    best = (i, j)
        bi, bj = best
        work[top], work[bi] = work[bi], work[top]
        for row in work:
            row[top], row[bj] = row[bj], row[top]
        pivot = work[top][top]
        dirty = False
        for i in range(top + 1, m):
            if work[i][top] % pivot != 0:
                dirty = True
            q = work[i][top] // pivot
            if q:
                work[i] = [a2 - q * b2 for a2, b2 in zip(work[i], work[top])]
        for j in range(top + 1, n):
            if work[top][j] % pivot != 0:
                dirty = True
            q = work[top][j] // pivot
            if q:
                for row in work:
                    row[j] -= q * row[top]
        if dirty or any(work[i][top] for i in range(top + 1, m)) or any(work[top][j] for j in range(top + 1, n)):
            continue
        # enforce the divisibility chain by folding offending entries in
        offender = None
        for i in range(top + 1, m):
            for j in range(top + 1, n):
                if work[i][j] % pivot != 0:
                    offender = i
                    break
            if offender:
                break
        if offender is not None:
            work[top] = [a2 + b2 for a2, b2 in zip(work[top], work[offender])]
            continue
        invariants.append(abs(pivot))
        top += 1
    return invariants


def rational_solve(a: Sequence[Sequence[Fraction]], b: Sequence[Fraction]) -> Optional[list[Fraction]]:
    """One exact solution of a x = b over the rationals, or None."""
    m = len(a)
    n = len(a[0]) if m else 0
    work = [list(row) + [bb] for row, bb in zip(a, b)]
    pivots: list[tuple[int, int]] = []
    row = 0
    for col in range(n):
        sel = next((i for i in range(row, m) if work[i][col] != 0), None)
        if sel is None:
            continue
        work[row], work[sel] = work[sel], work[row]
        pivot = work[row][col]
        work[row] = [v / pivot for v in work[row]]
        for i in range(m):
            if i != row and work[i][col] != 0:
                f = work[i][col]
                work[i] = [v - f * w for v, w in zip(work[i], work[row])]
        pivots.append((row, col))
        row += 1
        if row == m:
            break
    for i in range(row, m):
        if work[i][n] != 0:
            return None
    x = [Fraction(0)] * n
    for r, c in pivots:
        x[c] = work[r][n]
    return x
