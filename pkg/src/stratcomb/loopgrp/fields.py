"""Finite fields F_{p^e} for p = 2, 3 and e <= 12.

Elements are integers ``0 .. p^e - 1`` whose base-p digits are the
coefficients of a polynomial in the class of ``x`` modulo the Conway
polynomial of degree ``e``. Multiplication uses log/exp tables; ``x`` is a
generator because Conway polynomials are primitive. Conway polynomials are
also compatible across degrees, which gives the subfield embeddings below.
"""

from __future__ import annotations

from functools import cache

# degree -> {exponent: coefficient} of the monic Conway polynomial
CONWAY = {
    2: {
        1: {1: 1, 0: 1},
        2: {2: 1, 1: 1, 0: 1},
        3: {3: 1, 1: 1, 0: 1},
        4: {4: 1, 1: 1, 0: 1},
        5: {5: 1, 2: 1, 0: 1},
        6: {6: 1, 4: 1, 3: 1, 1: 1, 0: 1},
        7: {7: 1, 1: 1, 0: 1},
        8: {8: 1, 4: 1, 3: 1, 2: 1, 0: 1},
        9: {9: 1, 4: 1, 0: 1},
        10: {10: 1, 6: 1, 5: 1, 3: 1, 2: 1, 1: 1, 0: 1},
        11: {11: 1, 2: 1, 0: 1},
        12: {12: 1, 7: 1, 6: 1, 5: 1, 3: 1, 1: 1, 0: 1},
    },
    3: {
        1: {1: 1, 0: 1},
        2: {2: 1, 1: 2, 0: 2},
        3: {3: 1, 1: 2, 0: 1},
        4: {4: 1, 3: 2, 0: 2},
        5: {5: 1, 1: 2, 0: 1},
        6: {6: 1, 4: 2, 2: 1, 1: 2, 0: 2},
        7: {7: 1, 2: 2, 0: 1},
        8: {8: 1, 5: 2, 4: 1, 2: 2, 1: 2, 0: 2},
        9: {9: 1, 3: 2, 2: 2, 1: 1, 0: 1},
        10: {10: 1, 6: 2, 5: 2, 4: 2, 1: 1, 0: 2},
        11: {11: 1, 2: 2, 0: 1},
        12: {12: 1, 6: 1, 5: 1, 4: 1, 2: 1, 0: 2},
    },
}


def prime_power(q):
    """``(p, e)`` with ``q = p^e``, or ValueError."""
    if q < 2:
        raise ValueError(f"q = {q} is not a prime power")
    p = next(d for d in range(2, q + 1) if q % d == 0)
    e, r = 0, q
    while r % p == 0:
        r //= p
        e += 1
    if r != 1:
        raise ValueError(f"q = {q} is not a prime power")
    return p, e


class GF:
    """The field with ``p^e`` elements."""

    def __init__(self, p, e):
        if p not in CONWAY or e not in CONWAY[p]:
            raise ValueError(f"no Conway polynomial stored for F_{p}^{e}")
        self.p, self.e = p, e
        self.order = p**e
        poly = CONWAY[p][e]
        # x^e = -sum_{k<e} c_k x^k
        self._reduce = [(-poly.get(k, 0)) % p for k in range(e)]
        self._build_tables()

    def __repr__(self):
        return f"GF({self.p}^{self.e})"

    def __eq__(self, other):
        return isinstance(other, GF) and (self.p, self.e) == (other.p, other.e)

    def __hash__(self):
        return hash((self.p, self.e))

    # digit vectors <-> integers
    def digits(self, a):
        p = self.p
        out = []
        for _ in range(self.e):
            out.append(a % p)
            a //= p
        return out

    def from_digits(self, ds):
        a = 0
        for d in reversed(ds):
            a = a * self.p + d % self.p
        return a

    def _times_x(self, a):
        ds = self.digits(a)
        top = ds[-1]
        ds = [0] + ds[:-1]
        if top:
            ds = [(d + top * r) % self.p for d, r in zip(ds, self._reduce)]
        return self.from_digits(ds)

    def _build_tables(self):
        n = self.order - 1
        exp = [0] * (2 * n)
        log = [0] * self.order
        a = 1
        for i in range(n):
            exp[i] = a
            log[a] = i
            a = self._times_x(a)
        if a != 1 or len(set(exp[:n])) != n:
            raise ValueError(f"x is not primitive modulo the stored polynomial for {self}")
        exp[n:] = exp[:n]
        self.exp, self.log = exp, log
        self.gen = exp[1 % n]  # the class of x

    # arithmetic
    def add(self, a, b):
        if self.p == 2:
            return a ^ b
        return self.from_digits([x + y for x, y in zip(self.digits(a), self.digits(b))])

    def neg(self, a):
        if self.p == 2:
            return a
        return self.from_digits([-x for x in self.digits(a)])

    def sub(self, a, b):
        if self.p == 2:
            return a ^ b
        return self.from_digits([x - y for x, y in zip(self.digits(a), self.digits(b))])

    def mul(self, a, b):
        if not a or not b:
            return 0
        return self.exp[self.log[a] + self.log[b]]

    def inv(self, a):
        if not a:
            raise ZeroDivisionError("inverse of 0")
        return self.exp[(-self.log[a]) % (self.order - 1)]

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, k):
        if not a:
            if k < 0:
                raise ZeroDivisionError("0 to a negative power")
            return 0 if k else 1
        return self.exp[(self.log[a] * k) % (self.order - 1)]

    def frob(self, a, k=1):
        """``a^(p^k)``."""
        return self.pow(a, self.p**k)

    def scalar(self, c):
        """The image of the integer ``c`` (prime field)."""
        return c % self.p

    def elements(self):
        return range(self.order)

    def random(self, rng):
        return rng.randrange(self.order)

    def random_unit(self, rng):
        return rng.randrange(1, self.order)


@cache
def field(p, e):
    return GF(p, e)


@cache
def embedding(p, a, b):
    """Table of the embedding F_{p^a} -> F_{p^b} (``a`` divides ``b``).

    The generator of F_{p^a} goes to ``g_b^((p^b - 1)/(p^a - 1))``; Conway
    compatibility makes this a root of the degree-``a`` polynomial, which is
    checked here.
    """
    if b % a:
        raise ValueError(f"F_{p}^{a} does not embed in F_{p}^{b}")
    small, big = field(p, a), field(p, b)
    k = (big.order - 1) // (small.order - 1)
    root = big.pow(big.gen, k)
    # evaluate the Conway polynomial of degree a at root
    val = 0
    for exp_, coeff in CONWAY[p][a].items():
        val = big.add(val, big.mul(big.scalar(coeff), big.pow(root, exp_)))
    if val:
        raise ValueError(f"Conway polynomials of degrees {a} and {b} are not compatible")
    table = [0] * small.order
    for i in range(small.order - 1):
        table[small.exp[i]] = big.pow(root, i)
    return table
