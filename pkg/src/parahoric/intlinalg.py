"""Small exact linear algebra over Z and Q used throughout the package.

Matrices are tuples of row tuples; vectors are tuples.  Sizes stay tiny
(rank <= 3 lattices, Weyl groups of order <= 48), so clarity beats speed.
"""

from __future__ import annotations

from fractions import Fraction


def mat_vec(m, x):
    return tuple(sum(r[j] * x[j] for j in range(len(x))) for r in m)


def covec_mat(a, m):
    """Row covector times matrix: (a o m)."""
    n = len(a)
    return tuple(sum(a[i] * m[i][j] for i in range(n)) for j in range(len(m[0])))


def mat_mul(a, b):
    n, k, m = len(a), len(b), len(b[0])
    return tuple(
        tuple(sum(a[i][t] * b[t][j] for t in range(k)) for j in range(m))
        for i in range(n)
    )


def identity_matrix(n):
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def transpose(m):
    return tuple(zip(*m))


def vec_add(x, y):
    return tuple(a + b for a, b in zip(x, y))


def vec_sub(x, y):
    return tuple(a - b for a, b in zip(x, y))


def vec_scale(x, c):
    return tuple(c * a for a in x)


def dot(a, x):
    return sum(p * q for p, q in zip(a, x))


def smith_normal_form(m):
    """Return (U, D, V) with U*m*V = D diagonal, all integer, U, V unimodular."""
    rows = [list(r) for r in m]
    nr = len(rows)
    nc = len(rows[0]) if nr else 0
    u = [list(r) for r in identity_matrix(nr)]
    v = [list(r) for r in identity_matrix(nc)]

    def swap_rows(i, j):
        rows[i], rows[j] = rows[j], rows[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for r in rows:
            r[i], r[j] = r[j], r[i]
        for r in v:
            r[i], r[j] = r[j], r[i]

    def add_row(i, j, c):
        rows[i] = [a + c * b for a, b in zip(rows[i], rows[j])]
        u[i] = [a + c * b for a, b in zip(u[i], u[j])]

    def add_col(i, j, c):
        for r in rows:
            r[i] += c * r[j]
        for r in v:
            r[i] += c * r[j]

    def neg_row(i):
        rows[i] = [-a for a in rows[i]]
        u[i] = [-a for a in u[i]]

    t = 0
    while t < min(nr, nc):
        # find a pivot with minimal absolute value in the remaining block
        pivot = None
        best = None
        for i in range(t, nr):
            for j in range(t, nc):
                a = rows[i][j]
                if a and (best is None or abs(a) < best):
                    best, pivot = abs(a), (i, j)
        if pivot is None:
            break
        i, j = pivot
        swap_rows(t, i)
        swap_cols(t, j)
        progress = True
        while progress:
            progress = False
            p = rows[t][t]
            for i in range(t + 1, nr):
                if rows[i][t]:
                    add_row(i, t, -(rows[i][t] // p))
                    if rows[i][t]:
                        swap_rows(t, i)
                        progress = True
                        p = rows[t][t]
            for j in range(t + 1, nc):
                if rows[t][j]:
                    add_col(j, t, -(rows[t][j] // p))
                    if rows[t][j]:
                        swap_cols(t, j)
                        progress = True
                        p = rows[t][t]
        if rows[t][t] < 0:
            neg_row(t)
        # enforce divisibility d_t | d_{t+1} later entries
        t += 1
    # divisibility pass
    for t in range(min(nr, nc) - 1):
        a, b = rows[t][t], rows[t + 1][t + 1]
        if a and b and b % a:
            add_col(t, t + 1, 1)
            # re-reduce the 2x2 block
            while rows[t + 1][t]:
                p = rows[t][t]
                add_row(t + 1, t, -(rows[t + 1][t] // p))
                if rows[t + 1][t]:
                    swap_rows(t, t + 1)
            while rows[t][t + 1]:
                p = rows[t][t]
                add_col(t + 1, t, -(rows[t][t + 1] // p))
                if rows[t][t + 1]:
                    swap_cols(t, t + 1)
            if rows[t][t] < 0:
                neg_row(t)
            if rows[t + 1][t + 1] < 0:
                neg_row(t + 1)
    return (
        tuple(tuple(r) for r in u),
        tuple(tuple(r) for r in rows),
        tuple(tuple(r) for r in v),
    )


def int_kernel_basis(m):
    """Z-basis of {x : m*x = 0} for an integer matrix, as a list of vectors."""
    u, d, v = smith_normal_form(m)
    nc = len(m[0])
    rank = sum(1 for i in range(min(len(m), nc)) if d[i][i])
    cols = []
    for j in range(rank, nc):
        cols.append(tuple(v[i][j] for i in range(nc)))
    return cols


def int_solve(m, x):
    """Solve m*y = x over Z; return y or None.  m: rows x cols."""
    u, d, v = smith_normal_form(m)
    ux = mat_vec(u, x)
    nc = len(m[0])
    y0 = [0] * nc
    for i in range(min(len(m), nc)):
        di = d[i][i]
        if di:
            if ux[i] % di:
                return None
            y0[i] = ux[i] // di
        elif ux[i]:
            return None
    for i in range(min(len(m), nc), len(m)):
        if ux[i]:
            return None
    return mat_vec(v, tuple(y0))


def frac_rank(rows):
    """Rank of a matrix of Fractions/ints (rows is a list of sequences)."""
    m = [[Fraction(x) for x in r] for r in rows]
    rank = 0
    ncols = len(m[0]) if m else 0
    for col in range(ncols):
        piv = None
        for i in range(rank, len(m)):
            if m[i][col]:
                piv = i
                break
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        pv = m[rank][col]
        m[rank] = [x / pv for x in m[rank]]
        for i in range(len(m)):
            if i != rank and m[i][col]:
                f = m[i][col]
                m[i] = [x - f * y for x, y in zip(m[i], m[rank])]
        rank += 1
        if rank == len(m):
            break
    return rank


def frac_solve(m, x):
    """Solve m*y = x exactly over Q; return tuple of Fractions or None."""
    nr, nc = len(m), len(m[0])
    aug = [[Fraction(m[i][j]) for j in range(nc)] + [Fraction(x[i])] for i in range(nr)]
    pivots = []
    row = 0
    for col in range(nc):
        piv = None
        for i in range(row, nr):
            if aug[i][col]:
                piv = i
                break
        if piv is None:
            continue
        aug[row], aug[piv] = aug[piv], aug[row]
        pv = aug[row][col]
        aug[row] = [t / pv for t in aug[row]]
        for i in range(nr):
            if i != row and aug[i][col]:
                f = aug[i][col]
                aug[i] = [t - f * s for t, s in zip(aug[i], aug[row])]
        pivots.append(col)
        row += 1
    for i in range(row, nr):
        if aug[i][nc]:
            return None
    y = [Fraction(0)] * nc
    for r, col in enumerate(pivots):
        y[col] = aug[r][nc]
    return tuple(y)


def frac_inv(m):
    """Exact inverse of a square matrix over Q."""
    n = len(m)
    cols = []
    for j in range(n):
        e = tuple(1 if i == j else 0 for i in range(n))
        y = frac_solve(m, e)
        if y is None:
            raise ValueError("singular matrix")
        cols.append(y)
    return tuple(tuple(cols[j][i] for j in range(n)) for i in range(n))
