"""Subgroup membership, root elements, the block factorization of ``K_chi``,
and Cartan / Newton invariants of loop matrices."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from ..errors import InsufficientPrecision, NotInKChi
from .ring import LoopMatrix, residue_det


def k_chi_bound(chi, i, j):
    """Required t-valuation of entry (i, j) (0-based) for membership in ``K_chi``."""
    return max(0, chi[j] - chi[i])


@dataclass(frozen=True)
class Membership:
    K: bool
    K1: bool
    I: bool
    K_chi: bool | None = None

    @property
    def flags(self):
        names = [n for n in ("K", "K1", "I") if getattr(self, n)]
        if self.K_chi:
            names.append("K_chi")
        return names


def membership(g, chi=None):
    R = g.ring
    F = R.F
    n = g.n
    res = g.residue()
    in_K = residue_det(F, res) != 0
    in_K1 = all(res[i][j] == int(i == j) for i in range(n) for j in range(n))
    in_I = in_K and all(res[i][j] == 0 for i in range(n) for j in range(i))
    in_chi = None
    if chi is not None:
        if len(chi) != n:
            raise ValueError(f"chi has {len(chi)} entries, matrix size is {n}")
        in_chi = in_K and all(
            R.val(g[i, j]) >= k_chi_bound(chi, i, j) for i in range(n) for j in range(n)
        )
    return Membership(in_K, in_K1, in_I, in_chi)


def root_element(ring, n, alpha, x):
    """``U_alpha(x)`` for ``alpha = e_i - e_j`` given as the 1-based pair ``(i, j)``."""
    i, j = alpha
    if i == j or not (1 <= i <= n and 1 <= j <= n):
        raise ValueError(f"({i}, {j}) is not a root of GL_{n}")
    rows = [[ring.one if a == b else ring.zero for b in range(n)] for a in range(n)]
    rows[i - 1][j - 1] = tuple(x)
    return LoopMatrix(ring, rows)


def sigma_conjugate(h, g):
    """``h g sigma(h)^-1``."""
    return h * g * h.sigma().inverse()


# -- K_chi = K cap chi(t)^-1 K chi(t) --------------------------------------------


def chi_blocks(chi):
    """Index ranges of the runs of equal entries of a dominant ``chi``."""
    chi = list(chi)
    if any(a < b for a, b in zip(chi, chi[1:])):
        raise ValueError(f"chi = {tuple(chi)} is not dominant")
    blocks, start = [], 0
    for k in range(1, len(chi) + 1):
        if k == len(chi) or chi[k] != chi[start]:
            blocks.append(list(range(start, k)))
            start = k
    return blocks


def _sub(g_rows, rows, cols):
    return [[g_rows[i][j] for j in cols] for i in rows]


def iwahori_factorize(c, chi):
    """Write ``c = u_minus * u_plus * m0`` by block Gaussian elimination.

    ``u_minus`` is block lower unipotent with entries meeting the ``K_chi``
    valuation bounds, ``u_plus`` block upper unipotent over O, ``m0`` block
    diagonal in ``GL(O)``. The blocks are the runs of equal entries of ``chi``.
    """
    R = c.ring
    n = c.n
    blocks = chi_blocks(chi)
    for i in range(n):
        for j in range(n):
            if R.val(c[i, j]) < k_chi_bound(chi, i, j):
                raise NotInKChi(f"not in K_chi: entry ({i + 1},{j + 1}) has valuation {R.val(c[i, j])}")
    a = [list(r) for r in c.rows]
    low = [[R.one if i == j else R.zero for j in range(n)] for i in range(n)]
    for k, bk in enumerate(blocks):
        try:
            pinv = LoopMatrix(R, _sub(a, bk, bk)).inverse()
        except ZeroDivisionError:
            raise NotInKChi(f"not in K_chi: diagonal block {k + 1} is not invertible mod t") from None
        for bl in blocks[k + 1:]:
            f = LoopMatrix(R, _sub(a, bl, bk)) * pinv
            for x, i in enumerate(bl):
                for y, j in enumerate(bk):
                    low[i][j] = f.rows[x][y]
                for col in range(n):
                    acc = a[i][col]
                    for y, j in enumerate(bk):
                        acc = R.sub(acc, R.mul(f.rows[x][y], a[j][col]))
                    a[i][col] = acc
    u_minus = LoopMatrix(R, low)
    upper = LoopMatrix(R, a)
    m_rows = [[R.zero] * n for _ in range(n)]
    for bk in blocks:
        for i in bk:
            for j in bk:
                m_rows[i][j] = a[i][j]
    m0 = LoopMatrix(R, m_rows)
    u_plus = upper * m0.inverse()
    return u_minus, u_plus, m0


def check_factorization(c, chi, u_minus, u_plus, m0):
    """Reassembly and the shape of each factor; returns a list of problems."""
    R = c.ring
    n = c.n
    blocks = chi_blocks(chi)
    where = {i: k for k, b in enumerate(blocks) for i in b}
    problems = []
    if u_minus * u_plus * m0 != c:
        problems.append("u_minus * u_plus * m0 != c")
    for i in range(n):
        for j in range(n):
            bi, bj = where[i], where[j]
            e_m, e_p, e_0 = u_minus[i, j], u_plus[i, j], m0[i, j]
            if bi == bj:
                if (e_m != (R.one if i == j else R.zero)) or (e_p != (R.one if i == j else R.zero)):
                    problems.append(f"unipotent factor not identity on block at ({i + 1},{j + 1})")
            else:
                if any(e_0):
                    problems.append(f"m0 not block diagonal at ({i + 1},{j + 1})")
                if bi < bj and any(e_m):
                    problems.append(f"u_minus not lower at ({i + 1},{j + 1})")
                if bi > bj and any(e_p):
                    problems.append(f"u_plus not upper at ({i + 1},{j + 1})")
                if bi > bj and R.val(e_m) < max(1, k_chi_bound(chi, i, j)):
                    problems.append(f"u_minus entry ({i + 1},{j + 1}) below the K_chi bound")
    if not membership(u_minus).K1:
        problems.append("u_minus not in K1")
    if not membership(m0).K:
        problems.append("m0 not in K")
    return problems


# -- Cartan and Newton invariants ------------------------------------------------


def cartan_invariant(g):
    """``lambda`` (dominant, decreasing) with ``g in K t^lambda K``.

    Pivoting on an entry of least valuation clears its column by row
    operations in K; the pivot valuations are the elementary divisors.
    Raises InsufficientPrecision if some divisor is not below ``N``.
    """
    R = g.ring
    n = g.n
    a = [list(r) for r in g.rows]
    rows, cols = list(range(n)), list(range(n))
    out = []
    while rows:
        v, r, c = min((R.val(a[i][j]), i, j) for i in rows for j in cols)
        if v >= R.N:
            raise InsufficientPrecision(
                f"elementary divisor not determined modulo t^{R.N}; raise N"
            )
        uinv = R.inv(R.shift_down(a[r][c], v))
        for i in rows:
            if i == r or R.val(a[i][c]) >= R.N:
                continue
            f = R.mul(R.shift_down(a[i][c], v), uinv)
            a[i] = [R.sub(x, R.mul(f, y)) for x, y in zip(a[i], a[r])]
        rows.remove(r)
        cols.remove(c)
        out.append(v)
    return tuple(sorted(out, reverse=True))


def elementary_divisors_by_minors(g):
    """Same invariant from minimal valuations of k x k minors (slow oracle)."""
    R = g.ring
    n = g.n
    d = [0]
    for k in range(1, n + 1):
        best = min(R.val(g.minor(rs, cs)) for rs in combinations(range(n), k) for cs in combinations(range(n), k))
        d.append(best)
    if d[-1] >= R.N:
        raise InsufficientPrecision(f"determinant valuation not below N = {R.N}")
    return tuple(sorted((d[k] - d[k - 1] for k in range(1, n + 1)), reverse=True))


def twisted_power(g, steps):
    """``g sigma(g) ... sigma^(steps-1)(g)``."""
    out = g
    for k in range(1, steps):
        out = out * g.sigma(k)
    return out


def newton_invariant(g, steps):
    """``cartan_invariant(g sigma(g) ... sigma^(steps-1)(g)) / steps``."""
    if steps < 1:
        raise ValueError("steps must be positive")
    lam = cartan_invariant(twisted_power(g, steps))
    return tuple(_norm(Fraction(x, steps)) for x in lam)


def _norm(x):
    return int(x) if x.denominator == 1 else x
