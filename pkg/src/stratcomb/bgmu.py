"""The finite poset B(G, mu), its extreme elements, and Levi subgroups
``M = Cent(v)`` together with the Hodge-Newton hypotheses."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

from .affine import (
    AffineElement,
    KottwitzPoint,
    Pi1Group,
    kottwitz_point,
    mu_bar,
    mu_natural,
    newton_point,
    pi1_coinvariants,
    twisted_average,
)
from .errors import CrossCheckError, InternalConsistencyError
from .poset import Poset
from .polygons import newton_polygons, polygon_leq
from .rootdata import (
    fmt_vec,
    is_central,
    is_dominant,
    lattice_coords,
    pairing,
    sigma_apply,
    simple_coroot_coefficients,
)
from .weyl import weyl_group


@dataclass(frozen=True)
class NewtonClass:
    nu: tuple
    kappa: KottwitzPoint

    def to_json(self):
        return {"nu": fmt_vec(self.nu), "kappa": self.kappa.to_json()}

    def __repr__(self):
        return f"[nu={fmt_vec(self.nu)}, kappa={self.kappa.to_json()}]"


def is_basic(datum, nu):
    return is_central(datum, nu)


def newton_leq(datum, nu1, nu2):
    """``nu1 <= nu2``: the difference is a nonnegative rational combination
    of positive coroots. Raises ValueError when the central parts differ."""
    delta = [Fraction(b) - Fraction(a) for a, b in zip(nu1, nu2)]
    coeffs = simple_coroot_coefficients(datum, delta)
    if coeffs is None:
        raise ValueError(f"incomparable: distinct κ-components ({fmt_vec(nu1)} vs {fmt_vec(nu2)})")
    return all(c >= 0 for c in coeffs)


def check_compatible(datum, cls):
    """The free part of kappa must equal the image of nu in pi_1 (x) Q."""
    group = pi1_coinvariants(datum)
    x = lattice_coords(datum, cls.nu, check=False)
    ntors = len(group.invariants) - group.free_rank
    for row, val in zip(group._free, cls.kappa.value[ntors:]):
        if sum(a * b for a, b in zip(row, x)) != val:
            raise InternalConsistencyError(f"kappa {cls.kappa} incompatible with nu {fmt_vec(cls.nu)}")


@dataclass
class BGmuPoset:
    mu: tuple
    elements: list
    poset: Poset
    max_index: int
    basic_index: int
    diagnostics: dict = field(default_factory=dict)

    @property
    def relations(self):
        return self.poset.relations()

    def leq(self, i, j):
        return self.poset.leq(i, j)

    def to_json(self):
        return {
            "mu": fmt_vec(self.mu),
            "elements": [e.to_json() for e in self.elements],
            "relations": [list(r) for r in self.relations],
            "covers": [list(r) for r in self.poset.covers()],
            "max": self.max_index,
            "basic": self.basic_index,
        }

    def to_dot(self):
        return self.poset.to_dot("bgmu", lambda i: f"nu={_fmt_text(self.elements[i].nu)}")


def _fmt_text(v):
    return "(" + ",".join(str(x) for x in fmt_vec(v)) + ")"


def polygon_oracle_applies(datum):
    return datum.spec.family in ("GL", "SL") and not datum.is_twisted


def polygon_oracle(datum, mu):
    """B(G, mu) for split GL_n / SL_n from the Newton polygon definition."""
    kappa = mu_natural(datum, mu)
    return [NewtonClass(nu, kappa) for nu in newton_polygons(mu)]


def dominant_below(datum, mu):
    """All dominant cocharacters ``mu'`` with ``mu - mu'`` a nonnegative
    integral combination of positive coroots, sorted.

    Dominant cocharacters below ``mu`` are connected to ``mu`` by steps
    ``lam -> lam - beta`` through dominant ones, ``beta`` a positive coroot.
    """
    mu = tuple(mu)
    seen = {mu}
    todo = [mu]
    while todo:
        lam = todo.pop()
        for beta in datum.positive_coroots:
            nxt = tuple(a - b for a, b in zip(lam, beta))
            if nxt not in seen and is_dominant(datum, nxt):
                seen.add(nxt)
                todo.append(nxt)
    return sorted(seen, reverse=True)


def enumerate_bgmu(datum, mu, source="below", full_orbit=False, cross_check=True):
    """Enumerate B(G, mu) through monomial representatives ``t^lambda w``.

    ``source="orbit"`` uses only ``lambda`` in the Weyl orbit of ``mu``, the
    monomials lying in ``K t^mu K``. That family can miss classes when ``mu``
    is not minuscule (GL_3, mu = (2,0,0) misses nu = (1,1/2,1/2)), so the
    default ``source="below"`` lets ``lambda`` run over the orbits of all
    dominant ``mu' <= mu``. Each such monomial has ``kappa = mu^natural`` and
    Newton point below ``mu-bar``; both are asserted below.

    Within one orbit it suffices to take the dominant ``lambda``: twisted
    conjugation by ``u`` in ``W`` sends ``t^lambda w`` to
    ``t^(u lambda) u w sigma(u)^-1``. ``full_orbit=True`` runs over the whole
    orbit anyway.
    """
    mu = datum.cochar(mu)
    if not is_dominant(datum, mu):
        raise ValueError(f"mu = {mu} is not dominant")
    if source not in ("below", "orbit"):
        raise ValueError(f"unknown source {source!r}")
    W = weyl_group(datum)
    tops = dominant_below(datum, mu) if source == "below" else [mu]
    lams = []
    for top in tops:
        lams.extend(sorted({w(top) for w in W}) if full_orbit else [top])
    kappa_mu = mu_natural(datum, mu)
    mubar = mu_bar(datum, mu)

    classes = set()
    for lam in lams:
        for w in W:
            a = AffineElement(lam, w)
            cls = NewtonClass(newton_point(datum, a), kottwitz_point(datum, a))
            classes.add(cls)
    elements = sorted(classes, key=lambda c: (c.nu, c.kappa.value))

    for c in elements:
        check_compatible(datum, c)
        if c.kappa != kappa_mu:
            raise InternalConsistencyError(f"{c} has kappa != mu^natural = {kappa_mu}")
        if not newton_leq(datum, c.nu, mubar):
            raise InternalConsistencyError(f"{c} is not below mu-bar {fmt_vec(mubar)}")

    poset = Poset.from_relation(elements, lambda i, j: newton_leq(datum, elements[i].nu, elements[j].nu))
    poset.check_partial_order()

    maxima, minima = poset.maximal(), poset.minimal()
    if len(maxima) != 1 or elements[maxima[0]].nu != mubar:
        raise InternalConsistencyError(f"maximal elements {[elements[i] for i in maxima]}, expected nu = {mubar}")
    basics = [i for i, c in enumerate(elements) if is_basic(datum, c.nu)]
    if len(basics) != 1:
        raise InternalConsistencyError(f"{len(basics)} basic elements found")
    if minima != basics:
        raise InternalConsistencyError(f"minimal elements {minima} differ from the basic element {basics}")

    result = BGmuPoset(mu, elements, poset, maxima[0], basics[0])
    result.diagnostics["source"] = source
    result.diagnostics["dominant_below"] = [fmt_vec(t) for t in tops]
    if cross_check and polygon_oracle_applies(datum):
        _cross_check(datum, mu, result)
        result.diagnostics["polygon_oracle"] = "agree"
    return result


def _cross_check(datum, mu, result):
    oracle = polygon_oracle(datum, mu)
    got, want = set(result.elements), set(oracle)
    if got != want:
        raise CrossCheckError(
            f"B(G, mu) mismatch for mu = {mu}: only in enumeration {sorted(got - want, key=repr)}, "
            f"only in polygon oracle {sorted(want - got, key=repr)}"
        )
    els = result.elements
    for i, a in enumerate(els):
        for j, b in enumerate(els):
            if polygon_leq(a.nu, b.nu) != result.leq(i, j):
                raise CrossCheckError(f"order mismatch between {a} and {b}")


def b_max(datum, mu):
    res = enumerate_bgmu(datum, mu)
    return res.elements[res.max_index]


def basic_element(datum, mu):
    res = enumerate_bgmu(datum, mu)
    return res.elements[res.basic_index]


# -- Levi subgroups -------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class LeviDatum:
    """The Levi subgroup centralizing a sigma-invariant vector."""

    datum: object
    center: tuple
    root_subset: tuple
    positive_subset: tuple

    @cached_property
    def weyl(self):
        """Elements of ``W_M``: the stabilizer of ``center`` in ``W``."""
        return [w for w in weyl_group(self.datum) if w(self.center) == tuple(self.center)]

    @property
    def roots(self):
        return [self.datum.roots[i] for i in self.root_subset]

    @property
    def is_torus(self):
        return not self.root_subset

    @property
    def is_whole_group(self):
        return len(self.root_subset) == len(self.datum.roots)

    @cached_property
    def pi1(self):
        return Pi1Group(self.datum, [self.datum.coroots[i] for i in self.root_subset])

    def contains(self, w):
        return w in set(self.weyl)

    def dominant_in_M(self, v):
        """An ``M``-dominant element of the ``W_M``-orbit of ``v``."""
        pos = [self.datum.roots[i] for i in self.positive_subset]
        for w in self.weyl:
            img = w(v)
            if all(pairing(self.datum, a, img) >= 0 for a in pos):
                return img
        raise InternalConsistencyError(f"no M-dominant conjugate of {v}")


def levi_centralizer(datum, v):
    v = tuple(v)
    if sigma_apply(datum, v) != tuple(Fraction(x) for x in v):
        raise ValueError(f"{fmt_vec(v)} is not sigma-invariant, so its centralizer is not sigma-stable")
    subset = tuple(i for i, a in enumerate(datum.roots) if pairing(datum, a, v) == 0)
    pos = tuple(i for i in datum.positive_indices if i in set(subset))
    levi = LeviDatum(datum, v, subset, pos)
    _check_levi(levi)
    return levi


def _check_levi(levi):
    datum = levi.datum
    members = {datum.roots[i] for i in levi.root_subset}
    all_roots = set(datum.roots)
    for a in members:
        if tuple(-x for x in a) not in members:
            raise InternalConsistencyError(f"Phi_M not closed under negation at {a}")
        img = _sigma_char(datum, a)
        if img not in members:
            raise InternalConsistencyError(f"Phi_M not sigma-stable at {a}")
        for b in members:
            s = tuple(x + y for x, y in zip(a, b))
            if s in all_roots and s not in members:
                raise InternalConsistencyError(f"Phi_M not closed: {a} + {b}")


def _sigma_char(datum, a):
    # sigma acts on characters by the inverse transpose of its cocharacter action
    inv = datum.sigma_inverse
    d = datum.ambient_dim
    return tuple(sum(inv[k][j] * a[k] for k in range(d)) for j in range(d))


def mu_central_in_levi(datum, mu):
    """Check ``<alpha, mu> = 0`` for all ``alpha`` in ``Phi_M^+``, ``M = Cent(mu-bar)``.

    Returns ``(True, witness)``; ``witness`` maps each positive root of ``M``
    to the list ``<alpha, sigma^i(mu)>``, all nonnegative with sum zero.
    """
    mu = datum.cochar(mu)
    if not is_dominant(datum, mu):
        raise ValueError(f"mu = {mu} is not dominant")
    levi = levi_centralizer(datum, mu_bar(datum, mu))
    witness = {}
    for i in levi.positive_subset:
        a = datum.roots[i]
        terms, v = [], mu
        for _ in range(datum.sigma_order):
            terms.append(pairing(datum, a, v))
            v = sigma_apply(datum, v)
        if any(t < 0 for t in terms) or sum(terms) != 0 or terms[0] != 0:
            raise InternalConsistencyError(f"mu not central in M: root {a}, pairings {terms}")
        witness[a] = terms
    return True, witness


def _average(vectors):
    vectors = list(vectors)
    n = len(vectors)
    return tuple(_norm(sum(Fraction(v[i]) for v in vectors) / n) for i in range(len(vectors[0])))


def _norm(x):
    return int(x) if x.denominator == 1 else x


def sigma_average(datum, v):
    orbit, cur = [], tuple(v)
    for _ in range(datum.sigma_order):
        orbit.append(cur)
        cur = sigma_apply(datum, cur)
    return _average(orbit)


def in_VM(levi, v):
    v = tuple(Fraction(x) for x in v)
    if sigma_apply(levi.datum, v) != v:
        return False
    return all(w(v) == v for w in levi.weyl)


def project_to_VM(levi, v):
    avg = sigma_average(levi.datum, v)
    out = _average([w(avg) for w in levi.weyl])
    if not in_VM(levi, out):
        raise InternalConsistencyError(f"projection {fmt_vec(out)} is not in V_M")
    return out


def in_VM_plus(levi, v):
    if not in_VM(levi, v):
        raise ValueError(f"{fmt_vec(v)} is not in V_M")
    datum = levi.datum
    inside = set(levi.positive_subset)
    return all(pairing(datum, datum.roots[i], v) > 0 for i in datum.positive_indices if i not in inside)


def hn_applicable(datum, lam, levi, b0):
    """Evaluate the three Hodge-Newton hypotheses for ``(lam, b0)`` and ``M``.

    Returns ``(ok, report)`` where ``report`` has one entry per condition.
    """
    lam = datum.cochar(lam)
    if not is_dominant(datum, lam):
        raise ValueError(f"lambda = {lam} is not dominant")
    datum.cochar(b0.translation)
    if not levi.contains(b0.finite_part):
        raise ValueError(f"finite part {b0.finite_part} of b0 is not in W_M")

    k_b0 = levi.pi1.canonical(b0.translation)
    k_lam = levi.pi1.canonical(lam)
    cond_a = k_b0 == k_lam

    image = project_to_VM(levi, b0.translation)
    cond_b = in_VM_plus(levi, image)

    nu_m = levi.dominant_in_M(twisted_average(datum, b0))
    cond_c = is_dominant(datum, nu_m)

    report = {
        "a_kappa_match": {"ok": cond_a, "kappa_M_b0": k_b0.to_json(), "lambda_in_pi1_M": k_lam.to_json()},
        "b_positive": {"ok": cond_b, "image_in_V_M": fmt_vec(image)},
        "c_dominant": {"ok": cond_c, "M_newton_point": fmt_vec(nu_m)},
    }
    return cond_a and cond_b and cond_c, report
