"""Ekedahl-Oort labels ``^J W`` for a cocharacter ``mu``, the representatives
``w~ = w w0 sigma(w_0,J) t^mu``, and the induced map ``^J W -> B(G, mu)``."""

from __future__ import annotations

from dataclasses import dataclass

from .affine import AffineElement, kottwitz_point, mu_natural, newton_point
from .bgmu import NewtonClass, enumerate_bgmu, newton_leq
from .errors import InternalConsistencyError
from .rootdata import fmt_vec, is_dominant, sigma_inverse_apply
from .weyl import WeylElement, weyl_group


@dataclass(frozen=True)
class EOLabel:
    w: WeylElement
    J: frozenset

    @property
    def length(self):
        return self.w.length

    def to_json(self):
        return {"w": list(self.w.word), "name": repr(self.w), "length": self.length}


def _dominant_mu(datum, mu):
    mu = datum.cochar(mu)
    if not is_dominant(datum, mu):
        raise ValueError(f"mu = {mu} is not dominant")
    return mu


def type_J(datum, mu):
    """Simple reflections (1-based labels) fixing ``sigma^-1(mu)``."""
    mu = _dominant_mu(datum, mu)
    chi = sigma_inverse_apply(datum, mu)
    W = weyl_group(datum)
    return frozenset(i for i, s in enumerate(W.simple_reflections, start=1) if s(chi) == chi)


class EOLabels:
    """``^J W`` with its closure order."""

    def __init__(self, datum, mu):
        self.datum = datum
        self.mu = _dominant_mu(datum, mu)
        self.J = type_J(datum, mu)
        W = weyl_group(datum)
        self.poset = W.eo_poset(self.J)
        self.labels = [EOLabel(w, self.J) for w in self.poset.labels]
        self._pos = {lab.w: i for i, lab in enumerate(self.labels)}
        self.w_max = W.mul(W.longest_element(self.J), W.w0)
        self.w_min = W.identity

    def __len__(self):
        return len(self.labels)

    def __iter__(self):
        return iter(self.labels)

    def closure_set(self, w):
        """All ``w'`` with ``w' <= w``."""
        j = self._pos[w]
        return [self.labels[i].w for i in self.poset.down(j)]

    def to_json(self):
        return {
            "J": sorted(self.J),
            "labels": [lab.to_json() for lab in self.labels],
            "relations": [list(r) for r in self.poset.relations()],
            "covers": [list(r) for r in self.poset.covers()],
            "w_max": self._pos[self.w_max],
            "w_min": self._pos[self.w_min],
        }

    def to_dot(self):
        return self.poset.to_dot("eo", lambda i: repr(self.labels[i].w))


def eo_labels(datum, mu):
    return EOLabels(datum, mu)


def _check_label(datum, mu, w):
    J = type_J(datum, mu)
    if not weyl_group(datum).is_min_coset_rep(w, J):
        raise ValueError(f"{w} is not in ^J W for J = {sorted(J)}")
    return J


def eo_representative(datum, mu, w):
    """``t^(u mu) u`` with ``u = w w0 sigma(w_0,J)``."""
    mu = _dominant_mu(datum, mu)
    J = _check_label(datum, mu, w)
    W = weyl_group(datum)
    u = W.mul(w, W.w0, W.sigma(W.longest_element(J)))
    return AffineElement(u(mu), u)


def eo_to_newton(datum, mu, w, bgmu=None):
    a = eo_representative(datum, mu, w)
    cls = NewtonClass(newton_point(datum, a), kottwitz_point(datum, a))
    if cls.kappa != mu_natural(datum, mu):
        raise InternalConsistencyError(f"kappa of w~ for {w} differs from mu^natural")
    bgmu = bgmu or enumerate_bgmu(datum, mu)
    if cls not in set(bgmu.elements):
        raise InternalConsistencyError(f"class {cls} of w~ for {w} is not in B(G, mu)")
    return cls


def eo_newton_table(datum, mu):
    """One row per label: ``w``, its length, and the class of ``w~``."""
    labels = eo_labels(datum, mu)
    bgmu = enumerate_bgmu(datum, mu)
    bmax = bgmu.elements[bgmu.max_index]
    rows = []
    for lab in labels:
        cls = eo_to_newton(datum, mu, lab.w, bgmu)
        rows.append({
            "w": list(lab.w.word),
            "name": repr(lab.w),
            "length": lab.length,
            "nu": fmt_vec(cls.nu),
            "kappa": cls.kappa.to_json(),
            "is_bmax": cls == bmax,
            "is_wmax": lab.w == labels.w_max,
        })
    return rows


def zip_orbit_representatives(datum, mu):
    """The two representative families ``w_0,J w w0`` and ``w w0 sigma(w_0,J)``.

    They are related by ``w_0,J (w_0,J w w0) sigma(w_0,J) = w w0 sigma(w_0,J)``,
    a twisted ``W_J``-conjugation; this is checked for every ``w``.
    """
    mu = _dominant_mu(datum, mu)
    J = type_J(datum, mu)
    W = weyl_group(datum)
    w0J = W.longest_element(J)
    s_w0J = W.sigma(w0J)
    first, second = [], []
    for w in W.min_coset_reps(J):
        a = W.mul(w0J, w, W.w0)
        b = W.mul(w, W.w0, s_w0J)
        if W.mul(w0J, a, s_w0J) != b:
            raise InternalConsistencyError(f"representatives for {w} are not W_J-twisted conjugate")
        first.append(a)
        second.append(b)
    for lst in (first, second):
        if len(set(lst)) != len(lst):
            raise InternalConsistencyError("zip representatives are not distinct")
    return first, second


def monotonicity_probe(datum, mu):
    """Pairs ``w' <= w`` whose classes of ``w~`` are incomparable, or
    ordered the other way round, in B(G, mu).

    Diagnostic only: nothing forces the classes of ``w~`` to respect the
    closure order for intermediate strata.
    """
    labels = eo_labels(datum, mu)
    bgmu = enumerate_bgmu(datum, mu)
    classes = [eo_to_newton(datum, mu, lab.w, bgmu) for lab in labels]
    out = {"incomparable": [], "reversed": []}
    for i, j in labels.poset.relations():
        a, b = classes[i].nu, classes[j].nu
        pair = (labels.labels[i].w, labels.labels[j].w)
        up, down = newton_leq(datum, a, b), newton_leq(datum, b, a)
        if not up and not down:
            out["incomparable"].append(pair)
        elif down and not up:
            out["reversed"].append(pair)
    return out
