"""Exact linear algebra helpers: rational row reduction, integer Smith and
Hermite forms, and kernels over prime fields."""

from fractions import Fraction

import numpy as np


def identity(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


def mat_mul(a, b):
    return [[sum(x * y for x, y in zip(row, col)) for col in zip(*b)] for row in a]


def mat_vec(a, v):
    return tuple(sum(x * y for x, y in zip(row, v)) for row in a)


def rref(rows):
    """Reduced row echelon form over Q. Returns (matrix, pivot columns)."""
    a = [[Fraction(x) for x in row] for row in rows]
    if not a:
        return a, []
    m, n = len(a), len(a[0])
    pivots = []
    r = 0
    for c in range(n):
        p = next((i for i in range(r, m) if a[i][c] != 0), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(m):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == m:
            break
    return a, pivots


def solve_rational(a, b):
    """Solve a x = b exactly; returns one solution (free variables zero) or None."""
    aug = [list(row) + [rhs] for row, rhs in zip(a, b)]
    red, pivots = rref(aug)
    n = len(a[0])
    if n in pivots:
        return None
    x = [Fraction(0)] * n
    for row, c in zip(red, pivots):
        x[c] = row[n]
    return tuple(x)


def nullspace_rational(a, ncols=None):
    """Basis of {x : a x = 0} over Q."""
    if not a:
        return [tuple(Fraction(int(i == j)) for j in range(ncols)) for i in range(ncols)]
    red, pivots = rref(a)
    n = len(a[0])
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        x = [Fraction(0)] * n
        x[f] = Fraction(1)
        for row, c in zip(red, pivots):
            x[c] = -row[f]
        basis.append(tuple(x))
    return basis


def smith_normal_form(matrix):
    """Integer Smith normal form.

    Returns ``(diag, U, V)`` with ``U * matrix * V`` diagonal, ``U`` and ``V``
    unimodular, and ``diag`` the nonnegative diagonal entries (length
    ``min(rows, cols)``), each dividing the next.
    """
    a = [list(map(int, row)) for row in matrix]
    m = len(a)
    n = len(a[0]) if m else 0
    u = identity(m)
    v = identity(n)

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, f):
        a[dst] = [x + f * y for x, y in zip(a[dst], a[src])]
        u[dst] = [x + f * y for x, y in zip(u[dst], u[src])]

    def add_col(dst, src, f):
        for row in a:
            row[dst] += f * row[src]
        for row in v:
            row[dst] += f * row[src]

    for t in range(min(m, n)):
        while True:
            entries = [(abs(a[i][j]), i, j) for i in range(t, m) for j in range(t, n) if a[i][j]]
            if not entries:
                break
            _, i, j = min(entries)
            swap_rows(t, i)
            swap_cols(t, j)
            p = a[t][t]
            dirty = False
            for i in range(t + 1, m):
                if a[i][t]:
                    add_row(i, t, -(a[i][t] // p))
                    dirty = dirty or a[i][t] != 0
            for j in range(t + 1, n):
                if a[t][j]:
                    add_col(j, t, -(a[t][j] // p))
                    dirty = dirty or a[t][j] != 0
            if dirty:
                continue
            bad = next((i for i in range(t + 1, m) for j in range(t + 1, n) if a[i][j] % p), None)
            if bad is None:
                break
            add_row(t, bad, 1)
        if t < m and t < n and a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
    diag = [a[i][i] for i in range(min(m, n))]
    return diag, u, v


def hermite_rows(rows):
    """Row-style Hermite normal form of an integer matrix (zero rows dropped)."""
    a = [list(map(int, r)) for r in rows]
    if not a:
        return []
    n = len(a[0])
    out = []
    for c in range(n):
        live = [r for r in a if r[c] != 0]
        rest = [r for r in a if r[c] == 0]
        while len(live) > 1:
            live.sort(key=lambda r: abs(r[c]))
            piv = live[0]
            nxt = []
            for r in live[1:]:
                f = r[c] // piv[c]
                r = [x - f * y for x, y in zip(r, piv)]
                (nxt if r[c] else rest).append(r)
            live = [piv] + nxt
        if live:
            piv = live[0]
            if piv[c] < 0:
                piv = [-x for x in piv]
            for k, prev in enumerate(out):
                f = prev[c] // piv[c]
                out[k] = [x - f * y for x, y in zip(prev, piv)]
            out.append(piv)
        a = rest
    return out


def nullspace_mod_p(columns, p):
    """Kernel of a linear map over F_p.

    ``columns[j]`` is the image of the j-th basis vector (a sequence of
    residues). Returns a list of kernel basis vectors as numpy int64 arrays.
    """
    nvars = len(columns)
    if nvars == 0:
        return []
    mat = np.array(columns, dtype=np.int64).T % p
    m = mat.shape[0]
    pivots = []
    r = 0
    for c in range(nvars):
        if r == m:
            break
        nz = np.nonzero(mat[r:, c])[0]
        if nz.size == 0:
            continue
        k = r + int(nz[0])
        if k != r:
            mat[[r, k]] = mat[[k, r]]
        inv = pow(int(mat[r, c]), p - 2, p)
        mat[r] = (mat[r] * inv) % p
        col = mat[:, c].copy()
        col[r] = 0
        rows = np.nonzero(col)[0]
        if rows.size:
            mat[rows] = (mat[rows] - np.outer(col[rows], mat[r])) % p
        pivots.append(c)
        r += 1
    free = [c for c in range(nvars) if c not in set(pivots)]
    basis = []
    for f in free:
        x = np.zeros(nvars, dtype=np.int64)
        x[f] = 1
        for i, c in enumerate(pivots):
            x[c] = (-mat[i, f]) % p
        basis.append(x)
    return basis


def solve_mod_p(columns, rhs, p):
    """One solution ``x`` of ``sum_j x_j columns[j] = rhs`` over F_p, or None."""
    nvars = len(columns)
    m = len(rhs)
    aug = np.zeros((m, nvars + 1), dtype=np.int64)
    if nvars:
        aug[:, :nvars] = np.array(columns, dtype=np.int64).T % p
    aug[:, nvars] = np.array(rhs, dtype=np.int64) % p
    pivots = []
    r = 0
    for c in range(nvars):
        if r == m:
            break
        nz = np.nonzero(aug[r:, c])[0]
        if nz.size == 0:
            continue
        k = r + int(nz[0])
        if k != r:
            aug[[r, k]] = aug[[k, r]]
        aug[r] = (aug[r] * pow(int(aug[r, c]), p - 2, p)) % p
        col = aug[:, c].copy()
        col[r] = 0
        rows = np.nonzero(col)[0]
        if rows.size:
            aug[rows] = (aug[rows] - np.outer(col[rows], aug[r])) % p
        pivots.append(c)
        r += 1
    if np.any(aug[r:, nvars]):
        return None
    x = np.zeros(nvars, dtype=np.int64)
    for i, c in enumerate(pivots):
        x[c] = aug[i, nvars]
    return x


def echelon_mod_p(rows, p, col_order):
    """Row echelon form over F_p with pivots searched in ``col_order``.

    Returns ``(reduced_rows, pivot_columns)``; rows without a pivot are dropped.
    """
    if not len(rows):
        return [], []
    a = np.array(rows, dtype=np.int64) % p
    out, pivots = [], []
    for c in col_order:
        nz = np.nonzero(a[:, c])[0]
        if nz.size == 0:
            continue
        k = int(nz[0])
        piv = (a[k] * pow(int(a[k, c]), p - 2, p)) % p
        a = np.delete(a, k, axis=0)
        if a.shape[0]:
            a = (a - np.outer(a[:, c], piv)) % p
        out.append(piv)
        pivots.append(c)
        if not a.shape[0]:
            break
    return out, pivots
