import random
from fractions import Fraction as Fr

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import make
from stratcomb.affine import AffineElement, newton_point
from stratcomb.errors import InsufficientPrecision, NotInKChi
from stratcomb.loopgrp.experiments import random_I, random_K, random_K1
from stratcomb.loopgrp.lang import LangNotFound, solve_torus_lang
from stratcomb.loopgrp.ops import (
    cartan_invariant,
    check_factorization,
    elementary_divisors_by_minors,
    iwahori_factorize,
    membership,
    newton_invariant,
    root_element,
    sigma_conjugate,
)
from stratcomb.loopgrp.ring import LoopMatrix, TruncRing
from stratcomb.weyl import weyl_group

RINGS = [(2, 1, 3), (2, 2, 3), (3, 1, 3), (4, 1, 2), (2, 3, 4)]


@pytest.mark.parametrize("q,m,N", RINGS)
def test_ring_laws(q, m, N):
    R = TruncRing(q, m, N)
    rng = random.Random(q * 31 + m * 7 + N)
    for _ in range(100):
        a, b, c = R.random(rng), R.random(rng), R.random(rng)
        assert R.mul(R.mul(a, b), c) == R.mul(a, R.mul(b, c))
        assert R.mul(a, R.add(b, c)) == R.add(R.mul(a, b), R.mul(a, c))
        assert R.sigma(R.mul(a, b)) == R.mul(R.sigma(a), R.sigma(b))
        assert R.sigma(a, m) == a
        u = R.random_unit(rng)
        assert R.mul(u, R.inv(u)) == R.one
    with pytest.raises(ZeroDivisionError):
        R.inv(R.t_pow(1))


@pytest.mark.parametrize("q,m,N", RINGS)
def test_matrix_inverse_and_det(q, m, N):
    R = TruncRing(q, m, N)
    rng = random.Random(N)
    for n in (2, 3):
        for _ in range(10):
            a, b = random_K(R, n, rng), random_K(R, n, rng)
            assert (a * a.inverse()).is_identity()
            assert (a * b).det() == R.mul(a.det(), b.det())
            adj = a.adjugate()
            assert adj * a == LoopMatrix.diag(R, [a.det()] * n)


def test_embedding_of_matrices_commutes_with_products():
    R1, R2 = TruncRing(2, 2, 3), TruncRing(2, 4, 3)
    rng = random.Random(0)
    a, b = random_K(R1, 3, rng), random_K(R1, 3, rng)
    assert (a * b).embed_into(R2) == a.embed_into(R2) * b.embed_into(R2)
    assert a.sigma().embed_into(R2) == a.embed_into(R2).sigma()


def test_membership_examples():
    R = TruncRing(2, 1, 2)
    ident = LoopMatrix.identity(R, 2)
    f = membership(ident, (1, 0))
    assert f.K and f.K1 and f.I and f.K_chi
    g = LoopMatrix.from_int_rows(R, [[1, 1], [0, 1]])
    f = membership(g)
    assert f.K and f.I and not f.K1
    h = LoopMatrix.from_int_rows(R, [[1, 0], [1, 1]])
    assert membership(h, (1, 0)).K and not membership(h, (1, 0)).K_chi
    k = LoopMatrix.from_int_rows(R, [[1, 0], [[0, 1], 1]])
    f = membership(k, (1, 0))
    assert f.K_chi and f.K1


@pytest.mark.parametrize("n", [2, 3])
def test_samplers_land_in_their_groups(n):
    R = TruncRing(2, 1, 3)
    rng = random.Random(n)
    for _ in range(20):
        assert membership(random_K1(R, n, rng)).K1
        assert membership(random_I(R, n, rng)).I
        assert membership(random_K(R, n, rng)).K


def test_root_element_law():
    R = TruncRing(2, 1, 4)
    mu_t = LoopMatrix.t_power(R, (1, 0))
    u = root_element(R, 2, (1, 2), R.one)
    assert mu_t * u == root_element(R, 2, (1, 2), R.t_pow(1)) * mu_t
    assert root_element(R, 2, (1, 2), R.zero).is_identity()
    with pytest.raises(ValueError):
        root_element(R, 2, (1, 1), R.one)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6), st.sampled_from([(3, (2, 1, 0)), (3, (0, 2, 1)), (2, (1, 0)), (2, (0, 2))]))
def test_root_element_law_all_roots(seed, case):
    n, lam = case
    R = TruncRing(2, 2, 5)
    rng = random.Random(seed)
    mu_t = LoopMatrix.t_power(R, lam)
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            if i == j:
                continue
            x = R.random(rng)
            k = lam[i - 1] - lam[j - 1]
            U = lambda y: root_element(R, n, (i, j), y)
            if k >= 0:
                assert mu_t * U(x) == U(R.shift_up(x, k)) * mu_t
            else:
                assert U(x) * mu_t == mu_t * U(R.shift_up(x, -k))
            y = R.random(rng)
            assert U(x) * U(y) == U(R.add(x, y))


def test_iwahori_example():
    R = TruncRing(2, 1, 3)
    c = LoopMatrix.from_int_rows(R, [[1, 1], [[0, 1], [1, 1]]])
    um, up, m0 = iwahori_factorize(c, (1, 0))
    assert um == LoopMatrix.from_int_rows(R, [[1, 0], [[0, 1], 1]])
    assert up == LoopMatrix.from_int_rows(R, [[1, 1], [0, 1]])
    assert m0.is_identity()
    ident = LoopMatrix.identity(R, 2)
    assert all(x.is_identity() for x in iwahori_factorize(ident, (1, 0)))


def test_iwahori_rejects_non_members():
    R = TruncRing(2, 1, 3)
    with pytest.raises(NotInKChi):
        iwahori_factorize(LoopMatrix.from_int_rows(R, [[1, 0], [1, 1]]), (1, 0))
    with pytest.raises(NotInKChi):
        iwahori_factorize(LoopMatrix.from_int_rows(R, [[0, 1], [[0, 1], 1]]), (1, 0))


@pytest.mark.parametrize("chi", [(1, 0), (1, 1), (2, 1, 0), (1, 1, 0), (1, 0, 0)])
def test_iwahori_random_roundtrip(chi):
    from stratcomb.loopgrp.experiments import random_K_chi

    R = TruncRing(3, 1, 3)
    rng = random.Random(repr(chi))
    for _ in range(50):
        c = random_K_chi(R, chi, rng)
        assert membership(c, chi).K_chi
        assert check_factorization(c, chi, *iwahori_factorize(c, chi)) == []


def test_cartan_examples():
    R = TruncRing(2, 1, 3)
    assert cartan_invariant(LoopMatrix.t_power(R, (1, 0))) == (1, 0)
    assert cartan_invariant(LoopMatrix.from_int_rows(R, [[0, 1], [[0, 1], 0]])) == (1, 0)
    with pytest.raises(InsufficientPrecision):
        cartan_invariant(LoopMatrix.t_power(R, (3, 0)))


@pytest.mark.parametrize("mu", [(1, 0), (2, 0), (2, 1, 0), (1, 1, 0), (3, 1, 0)])
def test_cartan_is_bi_K_invariant_and_matches_minors(mu):
    R = TruncRing(2, 2, 5)
    rng = random.Random(repr(mu))
    n = len(mu)
    for _ in range(20):
        g = random_K(R, n, rng) * LoopMatrix.t_power(R, mu) * random_K(R, n, rng)
        assert cartan_invariant(g) == tuple(sorted(mu, reverse=True))
        assert elementary_divisors_by_minors(g) == cartan_invariant(g)


def test_newton_invariant_examples():
    R = TruncRing(2, 1, 4)
    assert newton_invariant(LoopMatrix.t_power(R, (1, 0)), 1) == (1, 0)
    g = LoopMatrix.from_int_rows(R, [[0, 1], [[0, 1], 0]])
    assert newton_invariant(g, 2) == (Fr(1, 2), Fr(1, 2))


@pytest.mark.parametrize("mu", [(1, 0), (1, 0, 0), (1, 1, 0)])
def test_newton_invariant_sigma_conjugation(mu):
    R = TruncRing(2, 2, 6)
    rng = random.Random(repr(mu))
    n = len(mu)
    base = LoopMatrix.t_power(R, mu)
    for _ in range(10):
        h = random_K(R, n, rng)
        g = sigma_conjugate(h, base)
        assert cartan_invariant(g) == tuple(sorted(mu, reverse=True))
        assert newton_invariant(g, 3) == newton_invariant(base, 3)
        g2 = random_K(R, n, rng) * base * random_K(R, n, rng)
        h2 = random_K(R, n, rng)
        assert newton_invariant(sigma_conjugate(h2, g2), 2) == newton_invariant(g2, 2)


def monomial_of(R, d, lam, w):
    n = len(lam)
    perm = [next(i for i in range(n) if w.matrix[i][j]) for j in range(n)]
    return LoopMatrix.monomial(R, lam, perm)


@pytest.mark.parametrize("n", [2, 3])
def test_monomial_newton_cross_oracle(n):
    d = make("GL", n)
    W = weyl_group(d)
    for mu in [(1,) + (0,) * (n - 1), (1, 1) + (0,) * (n - 2)]:
        for lam in sorted({w(mu) for w in W}):
            for w in W:
                steps = 6
                R = TruncRing(2, 1, steps * max(lam) + 1)
                g = monomial_of(R, d, lam, w)
                got = tuple(Fr(x) for x in newton_invariant(g, steps))
                assert got == tuple(Fr(x) for x in newton_point(d, AffineElement(lam, w)))


def test_torus_lang_examples():
    R = TruncRing(2, 2, 2)
    w = R.F.gen
    sol = solve_torus_lang(LoopMatrix.identity(R, 2))
    assert sol.h.inverse() * sol.h.sigma() == LoopMatrix.identity(R, 2)
    c = LoopMatrix.diag(R, [R.const(w), R.one])
    sol = solve_torus_lang(c)
    assert sol.degree == 2 and sol.h == c


def test_torus_lang_random_units():
    R = TruncRing(2, 1, 3)
    rng = random.Random(11)
    for _ in range(30):
        c = LoopMatrix.diag(R, [R.random_unit(rng) for _ in range(3)])
        sol = solve_torus_lang(c, 12)
        assert sol.degree <= 12
        cc = c.embed_into(sol.h.ring)
        assert sol.h.inverse() * sol.h.sigma() == cc


def test_torus_lang_not_found_is_explicit():
    R = TruncRing(2, 1, 4)
    rng = random.Random(3)
    failures = 0
    for _ in range(30):
        c = LoopMatrix.diag(R, [R.random_unit(rng)])
        try:
            solve_torus_lang(c, 1)
        except LangNotFound:
            failures += 1
    assert failures > 0
    with pytest.raises(ValueError):
        solve_torus_lang(LoopMatrix.from_int_rows(R, [[1, 1], [0, 1]]))
