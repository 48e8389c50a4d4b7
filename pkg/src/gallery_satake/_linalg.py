"""Small exact linear algebra helpers over Fraction / int.

Everything in this package works with tiny dense matrices (rank at most 4),
so plain tuples of Fractions are fast enough and keep all arithmetic exact.
Matrices are tuples of row tuples; vectors are tuples.
"""

from fractions import Fraction


def vec(entries):
    return tuple(Fraction(x) for x in entries)


def vec_add(u, v):
    return tuple(a + b for a, b in zip(u, v))


def vec_sub(u, v):
    return tuple(a - b for a, b in zip(u, v))


def vec_scale(c, u):
    c = Fraction(c)
    return tuple(c * a for a in u)


def dot(u, v):
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


def mat(rows):
    return tuple(tuple(Fraction(x) for x in row) for row in rows)


def identity(n):
    return tuple(tuple(Fraction(1 if i == j else 0) for j in range(n)) for i in range(n))


def mat_vec(m, v):
    return tuple(dot(row, v) for row in m)


def mat_mul(a, b):
    bt = tuple(zip(*b))
    return tuple(tuple(dot(row, col) for col in bt) for row in a)


def transpose(m):
    return tuple(zip(*m))


def is_integral(v):
    return all(Fraction(x).denominator == 1 for x in v)


def solve(m, rhs):
    """Solve m x = rhs exactly; m square nonsingular. Returns a tuple."""
    n = len(m)
    aug = [list(row) + [Fraction(rhs[i])] for i, row in enumerate(mat(m))]
    for col in range(n):
        piv = next(r for r in range(col, n) if aug[r][col] != 0)
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = 1 / aug[col][col]
        aug[col] = [x * inv for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                factor = aug[r][col]
                aug[r] = [x - factor * y for x, y in zip(aug[r], aug[col])]
    return tuple(row[n] for row in aug)


def solve_general(m, rhs):
    """One exact solution of m x = rhs for a rectangular m, or None."""
    rows = len(m)
    cols = len(m[0]) if rows else 0
    aug = [list(map(Fraction, r)) + [Fraction(rhs[i])] for i, r in enumerate(m)]
    pivots = []
    row = 0
    for col in range(cols):
        piv = next((r for r in range(row, rows) if aug[r][col] != 0), None)
        if piv is None:
            continue
        aug[row], aug[piv] = aug[piv], aug[row]
        inv = 1 / aug[row][col]
        aug[row] = [x * inv for x in aug[row]]
        for r in range(rows):
            if r != row and aug[r][col] != 0:
                factor = aug[r][col]
                aug[r] = [x - factor * y for x, y in zip(aug[r], aug[row])]
        pivots.append(col)
        row += 1
        if row == rows:
            break
    for r in range(row, rows):
        if aug[r][cols] != 0:
            return None
    x = [Fraction(0)] * cols
    for r, col in enumerate(pivots):
        x[col] = aug[r][cols]
    return tuple(x)


def rank(m):
    if not m:
        return 0
    rows = [list(map(Fraction, r)) for r in m]
    cols = len(rows[0])
    rk = 0
    for col in range(cols):
        piv = next((r for r in range(rk, len(rows)) if rows[r][col] != 0), None)
        if piv is None:
            continue
        rows[rk], rows[piv] = rows[piv], rows[rk]
        inv = 1 / rows[rk][col]
        rows[rk] = [x * inv for x in rows[rk]]
        for r in range(len(rows)):
            if r != rk and rows[r][col] != 0:
                factor = rows[r][col]
                rows[r] = [x - factor * y for x, y in zip(rows[r], rows[rk])]
        rk += 1
    return rk


def diagonalize_integer(m):
    """Diagonalize an integer matrix by unimodular row/column operations.

    Returns (u, d, v) with u m v = d and d diagonal (no divisibility chain;
    the cokernel of m is still read off as the direct sum of Z/d[i][i]).
    """
    a = [list(map(int, row)) for row in m]
    nrows = len(a)
    ncols = len(a[0]) if nrows else 0
    u = [[int(i == j) for j in range(nrows)] for i in range(nrows)]
    v = [[int(i == j) for j in range(ncols)] for i in range(ncols)]

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(src, dst, c):
        a[dst] = [x + c * y for x, y in zip(a[dst], a[src])]
        u[dst] = [x + c * y for x, y in zip(u[dst], u[src])]

    def add_col(src, dst, c):
        for row in a:
            row[dst] += c * row[src]
        for row in v:
            row[dst] += c * row[src]

    t = 0
    while t < min(nrows, ncols):
        best = None
        for i in range(t, nrows):
            for j in range(t, ncols):
                if a[i][j] != 0 and (best is None or abs(a[i][j]) < abs(a[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        swap_rows(t, best[0])
        swap_cols(t, best[1])
        while True:
            for i in range(t + 1, nrows):
                if a[i][t] != 0:
                    add_row(t, i, -(a[i][t] // a[t][t]))
            for j in range(t + 1, ncols):
                if a[t][j] != 0:
                    add_col(t, j, -(a[t][j] // a[t][t]))
            stray = next((i for i in range(t + 1, nrows) if a[i][t] != 0), None)
            if stray is not None:
                swap_rows(t, stray)
                continue
            stray = next((j for j in range(t + 1, ncols) if a[t][j] != 0), None)
            if stray is not None:
                swap_cols(t, stray)
                continue
            break
        if a[t][t] < 0:
            add_row(t, t, -2)
        t += 1
    return (tuple(map(tuple, u)), tuple(map(tuple, a)), tuple(map(tuple, v)))
