"""The truncated power series ring F_{q^m}[t]/(t^N) and matrices over it.

Ring elements are tuples of ``N`` field elements (coefficients of
``1, t, ..., t^(N-1)``). Frobenius ``sigma`` raises every coefficient to the
``q``-th power and fixes ``t``.
"""

from __future__ import annotations

from itertools import permutations

from .fields import embedding, field, prime_power


class TruncRing:
    def __init__(self, q, m, N):
        if N < 1:
            raise ValueError(f"truncation order N must be >= 1, got {N}")
        self.q, self.m, self.N = q, m, N
        self.p, self.qe = prime_power(q)
        self.F = field(self.p, self.qe * m)
        self.zero = (0,) * N
        self.one = (1,) + (0,) * (N - 1)

    def __repr__(self):
        return f"F_{self.q}^{self.m}[t]/t^{self.N}"

    def __eq__(self, other):
        return isinstance(other, TruncRing) and (self.q, self.m, self.N) == (other.q, other.m, other.N)

    def __hash__(self):
        return hash((self.q, self.m, self.N))

    def with_N(self, N):
        return TruncRing(self.q, self.m, N)

    def with_m(self, m):
        return TruncRing(self.q, m, self.N)

    # constructors
    def const(self, c):
        return (c,) + (0,) * (self.N - 1)

    def t_pow(self, k, c=1):
        if k < 0:
            raise ValueError("negative power of t")
        if k >= self.N:
            return self.zero
        v = [0] * self.N
        v[k] = c
        return tuple(v)

    def from_coeffs(self, coeffs):
        v = list(coeffs)[: self.N]
        return tuple(v + [0] * (self.N - len(v)))

    def random(self, rng, min_val=0):
        F = self.F
        return tuple(0 if i < min_val else F.random(rng) for i in range(self.N))

    def random_unit(self, rng):
        F = self.F
        return (F.random_unit(rng),) + tuple(F.random(rng) for _ in range(self.N - 1))

    # arithmetic
    def add(self, a, b):
        if self.p == 2:
            return tuple(x ^ y for x, y in zip(a, b))
        add = self.F.add
        return tuple(add(x, y) for x, y in zip(a, b))

    def sub(self, a, b):
        if self.p == 2:
            return tuple(x ^ y for x, y in zip(a, b))
        sub = self.F.sub
        return tuple(sub(x, y) for x, y in zip(a, b))

    def neg(self, a):
        neg = self.F.neg
        return tuple(neg(x) for x in a)

    def mul(self, a, b):
        N = self.N
        F = self.F
        exp, log = F.exp, F.log
        out = [0] * N
        p2 = self.p == 2
        for i, x in enumerate(a):
            if not x:
                continue
            lx = log[x]
            for j in range(N - i):
                y = b[j]
                if y:
                    z = exp[lx + log[y]]
                    out[i + j] = out[i + j] ^ z if p2 else F.add(out[i + j], z)
        return tuple(out)

    def scale(self, c, a):
        mul = self.F.mul
        return tuple(mul(c, x) for x in a)

    def sigma(self, a, k=1):
        frob = self.F.frob
        return tuple(frob(x, self.qe * k) for x in a)

    def val(self, a):
        for i, x in enumerate(a):
            if x:
                return i
        return self.N

    def is_unit(self, a):
        return a[0] != 0

    def inv(self, a):
        """Inverse of a unit power series."""
        if not a[0]:
            raise ZeroDivisionError("not a unit")
        F = self.F
        c0 = F.inv(a[0])
        out = [c0] + [0] * (self.N - 1)
        for k in range(1, self.N):
            s = 0
            for j in range(1, k + 1):
                s = F.add(s, F.mul(a[j], out[k - j]))
            out[k] = F.neg(F.mul(c0, s))
        return tuple(out)

    def shift_down(self, a, k):
        """``a / t^k`` (requires ``val(a) >= k``); top ``k`` coefficients become 0."""
        if any(a[:k]):
            raise ValueError(f"element not divisible by t^{k}")
        return tuple(a[k:]) + (0,) * k

    def shift_up(self, a, k):
        return ((0,) * k + tuple(a))[: self.N]

    def embed_into(self, a, other):
        """Map ``a`` into ``other`` (same q, m dividing other.m, any N)."""
        if other.q != self.q or other.m % self.m:
            raise ValueError(f"cannot embed {self} into {other}")
        table = embedding(self.p, self.F.e, other.F.e)
        v = [table[x] for x in a[: other.N]]
        return tuple(v + [0] * (other.N - len(v)))


class LoopMatrix:
    """An ``n x n`` matrix over a TruncRing (immutable)."""

    __slots__ = ("ring", "n", "rows")

    def __init__(self, ring, rows):
        self.ring = ring
        self.rows = tuple(tuple(tuple(e) for e in r) for r in rows)
        self.n = len(self.rows)

    # constructors
    @classmethod
    def identity(cls, ring, n):
        return cls(ring, [[ring.one if i == j else ring.zero for j in range(n)] for i in range(n)])

    @classmethod
    def diag(cls, ring, entries):
        n = len(entries)
        return cls(ring, [[entries[i] if i == j else ring.zero for j in range(n)] for i in range(n)])

    @classmethod
    def t_power(cls, ring, mu):
        """``mu(t) = diag(t^mu_1, ..., t^mu_n)`` for ``mu >= 0``."""
        if any(x < 0 for x in mu):
            raise ValueError(f"mu = {tuple(mu)} must be entrywise >= 0")
        return cls.diag(ring, [ring.t_pow(x) for x in mu])

    @classmethod
    def monomial(cls, ring, lam, perm):
        """``t^lam * P`` where ``P e_j = e_perm[j]``."""
        n = len(lam)
        rows = [[ring.zero] * n for _ in range(n)]
        for j in range(n):
            i = perm[j]
            rows[i][j] = ring.t_pow(lam[i])
        return cls(ring, rows)

    @classmethod
    def from_int_rows(cls, ring, rows):
        """Entries given as coefficient lists (or a single int for a constant)."""
        def conv(e):
            return ring.const(e) if isinstance(e, int) else ring.from_coeffs(e)
        return cls(ring, [[conv(e) for e in r] for r in rows])

    def __repr__(self):
        return f"LoopMatrix({self.ring}, {[[list(e) for e in r] for r in self.rows]})"

    def __eq__(self, other):
        return isinstance(other, LoopMatrix) and self.ring == other.ring and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def to_json(self):
        return [[list(e) for e in r] for r in self.rows]

    # arithmetic
    def __add__(self, other):
        R = self.ring
        return LoopMatrix(R, [[R.add(a, b) for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __sub__(self, other):
        R = self.ring
        return LoopMatrix(R, [[R.sub(a, b) for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __mul__(self, other):
        R = self.ring
        cols = list(zip(*other.rows))
        out = []
        for r in self.rows:
            row = []
            for c in cols:
                acc = R.zero
                for a, b in zip(r, c):
                    if any(a) and any(b):
                        acc = R.add(acc, R.mul(a, b))
                row.append(acc)
            out.append(row)
        return LoopMatrix(R, out)

    def scale_rows(self, units):
        R = self.ring
        return LoopMatrix(R, [[R.mul(u, e) for e in r] for u, r in zip(units, self.rows)])

    def sigma(self, k=1):
        R = self.ring
        return LoopMatrix(R, [[R.sigma(e, k) for e in r] for r in self.rows])

    def transpose(self):
        return LoopMatrix(self.ring, list(zip(*self.rows)))

    def residue(self):
        """The matrix mod t, over the residue field."""
        return [[e[0] for e in r] for r in self.rows]

    def embed_into(self, ring):
        R = self.ring
        return LoopMatrix(ring, [[R.embed_into(e, ring) for e in r] for r in self.rows])

    def truncate(self, N):
        R = self.ring.with_N(N)
        return LoopMatrix(R, [[R.from_coeffs(e) for e in r] for r in self.rows])

    def is_identity(self):
        return self == LoopMatrix.identity(self.ring, self.n)

    def min_val(self):
        R = self.ring
        return min(R.val(e) for r in self.rows for e in r)

    # determinants and inverses
    def det(self):
        return _det(self.ring, self.rows)

    def minor(self, rows, cols):
        return _det(self.ring, [[self.rows[i][j] for j in cols] for i in rows])

    def adjugate(self):
        R = self.ring
        n = self.n
        idx = range(n)
        out = [[None] * n for _ in idx]
        for i in idx:
            for j in idx:
                m = self.minor([k for k in idx if k != j], [k for k in idx if k != i]) if n > 1 else R.one
                out[i][j] = m if (i + j) % 2 == 0 else R.neg(m)
        return LoopMatrix(R, out)

    def inverse(self):
        """Inverse of an element of ``GL_n(O/t^N)`` (Gauss-Jordan with unit pivots)."""
        R = self.ring
        n = self.n
        a = [list(r) + [R.one if i == j else R.zero for j in range(n)] for i, r in enumerate(self.rows)]
        for c in range(n):
            p = next((i for i in range(c, n) if R.is_unit(a[i][c])), None)
            if p is None:
                raise ZeroDivisionError("matrix is not invertible mod t")
            a[c], a[p] = a[p], a[c]
            u = R.inv(a[c][c])
            a[c] = [R.mul(u, x) for x in a[c]]
            for i in range(n):
                f = a[i][c]
                if i != c and any(f):
                    a[i] = [R.sub(x, R.mul(f, y)) for x, y in zip(a[i], a[c])]
        return LoopMatrix(R, [r[n:] for r in a])


def _det(R, rows):
    n = len(rows)
    if n == 0:
        return R.one
    if n == 1:
        return rows[0][0]
    if n == 2:
        return R.sub(R.mul(rows[0][0], rows[1][1]), R.mul(rows[0][1], rows[1][0]))
    total = R.zero
    for perm in permutations(range(n)):
        term = R.one
        for i, j in enumerate(perm):
            term = R.mul(term, rows[i][j])
            if not any(term):
                break
        else:
            if _parity(perm):
                term = R.neg(term)
            total = R.add(total, term)
    return total


def _parity(perm):
    seen, odd = set(), 0
    for i in range(len(perm)):
        if i in seen:
            continue
        j, k = i, 0
        while j not in seen:
            seen.add(j)
            j = perm[j]
            k += 1
        odd ^= (k - 1) & 1
    return odd


def residue_det(F, rows):
    """Determinant over the residue field (Gaussian elimination)."""
    a = [list(r) for r in rows]
    n = len(a)
    det = 1
    for c in range(n):
        p = next((i for i in range(c, n) if a[i][c]), None)
        if p is None:
            return 0
        if p != c:
            a[c], a[p] = a[p], a[c]
            det = F.neg(det)
        det = F.mul(det, a[c][c])
        inv = F.inv(a[c][c])
        for i in range(c + 1, n):
            if a[i][c]:
                f = F.mul(a[i][c], inv)
                a[i] = [F.sub(x, F.mul(f, y)) for x, y in zip(a[i], a[c])]
    return det


__all__ = ["TruncRing", "LoopMatrix", "residue_det"]
