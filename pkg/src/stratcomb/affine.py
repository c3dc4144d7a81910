"""Extended affine Weyl group elements ``t^lambda w`` and their
sigma-conjugacy invariants: Newton points and Kottwitz points."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cache

from .errors import InternalConsistencyError
from .linalg import hermite_rows, smith_normal_form
from .rootdata import (
    dominant_representative,
    is_dominant,
    lattice_coords,
    sigma_apply,
)
from .weyl import WeylElement, weyl_group

ORDER_CAP = 10**4


@dataclass(frozen=True)
class AffineElement:
    """The element ``t^translation * finite_part`` of ``X_* x| W``."""

    translation: tuple
    finite_part: WeylElement

    def __repr__(self):
        return f"t^{self.translation}*{self.finite_part!r}"


def affine_mul(datum, a, b):
    W = weyl_group(datum)
    lam = tuple(x + y for x, y in zip(a.translation, a.finite_part(b.translation)))
    return AffineElement(lam, W.mul(a.finite_part, b.finite_part))


def affine_sigma(datum, a):
    return AffineElement(sigma_apply(datum, a.translation), weyl_group(datum).sigma(a.finite_part))


def twisted_conjugate(datum, u, a):
    """``u * a * sigma(u)^-1`` for ``u`` in ``W``."""
    W = weyl_group(datum)
    w = W.mul(u, a.finite_part, W.inverse(W.sigma(u)))
    return AffineElement(u(a.translation), w)


@dataclass(frozen=True)
class KottwitzPoint:
    """An element of ``pi_1(G)_<sigma>`` in canonical coordinates.

    ``invariants`` lists the cyclic factors (0 for a copy of Z); ``value``
    has one entry per factor.
    """

    value: tuple
    invariants: tuple

    def __repr__(self):
        return f"KottwitzPoint({list(self.value)})"

    def to_json(self):
        """A bare integer for cyclic or trivial groups, else a list."""
        if len(self.value) <= 1:
            return self.value[0] if self.value else 0
        return list(self.value)


class Pi1Group:
    """Cokernel of ``[coroots | sigma - 1]`` on the cocharacter lattice."""

    def __init__(self, datum, coroots=None):
        self.datum = datum
        coroots = datum.coroots if coroots is None else coroots
        basis = datum.lattice_basis
        r = len(basis)
        cols = [lattice_coords(datum, c) for c in coroots]
        for b in basis:
            img = lattice_coords(datum, sigma_apply(datum, b))
            base = lattice_coords(datum, b)
            cols.append(tuple(x - y for x, y in zip(img, base)))
        cols = [tuple(int(x) for x in c) for c in cols if any(c)]
        if cols:
            rel = [[c[i] for c in cols] for i in range(r)]
            diag, u, _ = smith_normal_form(rel)
        else:
            diag, u = [], [[int(i == j) for j in range(r)] for i in range(r)]
        nonzero = [d for d in diag if d]
        k = len(nonzero)
        self._torsion = [(u[i], d) for i, d in enumerate(nonzero) if d > 1]
        self._free = hermite_rows(u[k:])
        self.invariants = tuple(d for _, d in self._torsion) + (0,) * len(self._free)

    @property
    def is_trivial(self):
        return not self.invariants

    @property
    def free_rank(self):
        return len(self._free)

    def canonical(self, v):
        x = [int(c) for c in lattice_coords(self.datum, v)]
        value = [sum(a * b for a, b in zip(row, x)) % d for row, d in self._torsion]
        value += [sum(a * b for a, b in zip(row, x)) for row in self._free]
        return KottwitzPoint(tuple(value), self.invariants)

    def describe(self):
        parts = [f"Z/{d}" for d in self.invariants if d] + ["Z"] * self.free_rank
        return " x ".join(parts) if parts else "0"


@cache
def pi1_coinvariants(datum):
    return Pi1Group(datum)


def kottwitz_point(datum, a):
    return pi1_coinvariants(datum).canonical(a.translation)


def twisted_order(datum, w):
    """Smallest ``n`` with ``(w sigma)^n = 1`` and ``ord(sigma) | n``."""
    d = datum.ambient_dim
    sig = datum.sigma_cochar
    a = [[sum(w.matrix[i][k] * sig[k][j] for k in range(d)) for j in range(d)] for i in range(d)]
    ident = [[int(i == j) for j in range(d)] for i in range(d)]
    cur = a
    n = 1
    while not (cur == ident and n % datum.sigma_order == 0):
        cur = [[sum(cur[i][k] * a[k][j] for k in range(d)) for j in range(d)] for i in range(d)]
        n += 1
        if n > ORDER_CAP:
            raise InternalConsistencyError(f"twisted order of {w} exceeds {ORDER_CAP}")
    return n, a


def twisted_average(datum, a):
    """``(1/n) sum_i (w sigma)^i (lambda)``, not yet made dominant."""
    n, mat = twisted_order(datum, a.finite_part)
    total = [Fraction(0)] * datum.ambient_dim
    v = [Fraction(x) for x in a.translation]
    for _ in range(n):
        total = [s + x for s, x in zip(total, v)]
        v = [sum(r * x for r, x in zip(row, v)) for row in mat]
    return tuple(_norm(s / n) for s in total)


def newton_point(datum, a):
    nu, _ = dominant_representative(datum, twisted_average(datum, a))
    if not is_dominant(datum, nu) or sigma_apply(datum, nu) != nu:
        raise InternalConsistencyError(f"Newton point {nu} of {a} is not dominant and sigma-invariant")
    return nu


def mu_bar(datum, mu):
    if not is_dominant(datum, mu):
        raise ValueError(f"mu = {tuple(mu)} is not dominant")
    r = datum.sigma_order
    total = [Fraction(0)] * datum.ambient_dim
    v = tuple(mu)
    for _ in range(r):
        total = [s + x for s, x in zip(total, v)]
        v = sigma_apply(datum, v)
    return tuple(_norm(s / r) for s in total)


def mu_natural(datum, mu):
    return pi1_coinvariants(datum).canonical(mu)


def translation(datum, lam):
    return AffineElement(datum.cochar(lam), weyl_group(datum).identity)


def _norm(x):
    return int(x) if x.denominator == 1 else x
