"""Seeded experiments on truncated loop groups of GL_n.

* A: ``g`` in ``K1 mu(t) K1``, look for ``h`` in K with ``h g sigma(h)^-1 = mu(t)``.
* B: ``g`` in ``I mu(t) I``, look for such an ``h`` in I.
* C: ``g = h0 mu(t) sigma(h0)^-1``; check its Cartan and Newton invariants.
* HN: ``g = h^-1 mu(t) sigma(h)`` in ``K mu(t) K`` for regular ``mu``;
  rebuild ``g = c^-1 m'^-1 mu(t) sigma(m') sigma(c)`` with ``c, m'`` in K.

Reports count found / UNRESOLVED / hard failures. A search that fails over
finite fields is UNRESOLVED unless the run is exhaustive.
"""

from __future__ import annotations

import itertools
import random
from fractions import Fraction

from ..errors import InsufficientPrecision, InternalConsistencyError
from .lang import LangNotFound, solve_torus_lang
from .ops import cartan_invariant, membership, newton_invariant
from .ring import LoopMatrix, TruncRing, residue_det
from .search import find_conjugator, verify_conjugator


def _check_mu(mu):
    mu = tuple(int(x) for x in mu)
    if any(x < 0 for x in mu):
        raise ValueError(f"mu = {mu} must be entrywise >= 0 (shift by a central cocharacter first)")
    return mu


# -- sampling ----------------------------------------------------------------------


def random_K1(R, n, rng):
    rows = [[R.random(rng, min_val=1) for _ in range(n)] for _ in range(n)]
    for i in range(n):
        rows[i][i] = R.add(rows[i][i], R.one)
    return LoopMatrix(R, rows)


def random_K(R, n, rng):
    while True:
        g = LoopMatrix(R, [[R.random(rng) for _ in range(n)] for _ in range(n)])
        if residue_det(R.F, g.residue()):
            return g


def random_I(R, n, rng):
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            if i == j:
                row.append(R.random_unit(rng))
            elif i > j:
                row.append(R.random(rng, min_val=1))
            else:
                row.append(R.random(rng))
        rows.append(row)
    return LoopMatrix(R, rows)


def random_K_chi(R, chi, rng):
    """A random element of ``K_chi = K cap chi(t)^-1 K chi(t)``."""
    n = len(chi)
    while True:
        rows = [[R.random(rng, min_val=max(0, chi[j] - chi[i])) for j in range(n)] for i in range(n)]
        g = LoopMatrix(R, rows)
        if residue_det(R.F, g.residue()):
            return g


def enumerate_K1(R, n):
    """Every element of ``K1`` modulo ``t^N``."""
    F = R.F
    slots = n * n * (R.N - 1)
    for vals in itertools.product(range(F.order), repeat=slots):
        it = iter(vals)
        rows = []
        for i in range(n):
            row = []
            for j in range(n):
                coeffs = [int(i == j)] + [next(it) for _ in range(R.N - 1)]
                row.append(tuple(coeffs))
            rows.append(row)
        yield LoopMatrix(R, rows)


def enumerate_K1_mu_K1(R, mu):
    mu_t = LoopMatrix.t_power(R, mu)
    ks = list(enumerate_K1(R, len(mu)))
    seen = set()
    out = []
    for a in ks:
        left = a * mu_t
        for b in ks:
            g = left * b
            if g not in seen:
                seen.add(g)
                out.append(g)
    return out


# -- reports -----------------------------------------------------------------------


def _report(experiment, params, seed):
    return {
        "experiment": experiment,
        "params": params,
        "seed": seed,
        "samples": 0,
        "found": 0,
        "unresolved": 0,
        "hard_failures": 0,
        "witnesses": [],
    }


def _search_samples(report, samples, mu, m_schedule, restrict, exhaustive, rng, tries):
    for idx, g in enumerate(samples):
        res = find_conjugator(g, mu, m_schedule, restrict=restrict, exhaustive=exhaustive,
                              rng=rng, tries=tries)
        report["samples"] += 1
        wit = {"index": idx, "g": g.to_json(), "search": res.log}
        if res.found:
            if not verify_conjugator(g, mu, res.h, restrict):
                raise InternalConsistencyError(f"conjugator for sample {idx} does not verify")
            report["found"] += 1
            wit.update(status="found", degree=res.degree, h=res.h.to_json())
        elif exhaustive and res.exhausted:
            report["hard_failures"] += 1
            wit.update(status="HARD_FAILURE")
        else:
            report["unresolved"] += 1
            wit.update(status="UNRESOLVED")
        report["witnesses"].append(wit)


def verify_mu_conjugacy(q=2, m_schedule=(1, 2), N=2, mu=(1, 0), samples=200, seed=0,
                    experiments=("A", "B", "C"), exhaustive=False, tries=256):
    """Run the experiments A, B, C; returns one report per experiment.

    With ``exhaustive=True`` experiment A runs over all of ``K1 mu(t) K1``
    (over F_q) instead of random samples, and an unsuccessful complete
    search counts as a hard failure.
    """
    mu = _check_mu(mu)
    n = len(mu)
    R = TruncRing(q, 1, N)
    params = {"q": q, "m_schedule": list(m_schedule), "N": N, "mu": list(mu),
              "samples": samples, "exhaustive": exhaustive}
    mu_t = LoopMatrix.t_power(R, mu)
    reports = []
    for exp in experiments:
        rng = random.Random(f"{seed}:{exp}")
        rep = _report(exp, params, seed)
        if exp == "A":
            if exhaustive:
                pool = enumerate_K1_mu_K1(R, mu)
            else:
                pool = [random_K1(R, n, rng) * mu_t * random_K1(R, n, rng) for _ in range(samples)]
            _search_samples(rep, pool, mu, m_schedule, "K", exhaustive, rng, tries)
        elif exp == "B":
            pool = [random_I(R, n, rng) * mu_t * random_I(R, n, rng) for _ in range(samples)]
            _search_samples(rep, pool, mu, m_schedule, "I", exhaustive, rng, tries)
        elif exp == "C":
            _experiment_c(rep, R, mu, samples, rng)
        else:
            raise ValueError(f"unknown experiment {exp!r}")
        rep["unresolved_rate"] = rep["unresolved"] / rep["samples"] if rep["samples"] else 0.0
        reports.append(rep)
    return reports


def _experiment_c(rep, R, mu, samples, rng):
    n = len(mu)
    mu_t = LoopMatrix.t_power(R, mu)
    lam = tuple(sorted(mu, reverse=True))
    top = max(mu)
    steps = max(1, (R.N - 1) // top) if top else 1
    for idx in range(samples):
        h0 = random_K(R, n, rng)
        g = h0 * mu_t * h0.sigma().inverse()
        rep["samples"] += 1
        wit = {"index": idx, "g": g.to_json(), "h0": h0.to_json()}
        try:
            cart = cartan_invariant(g)
            newt = newton_invariant(g, steps)
        except InsufficientPrecision as exc:
            rep["unresolved"] += 1
            wit.update(status="UNRESOLVED", reason=str(exc))
            rep["witnesses"].append(wit)
            continue
        ok = cart == lam and tuple(Fraction(x) for x in newt) == tuple(Fraction(x) for x in lam)
        wit.update(cartan=list(cart), newton=[str(x) for x in newt], steps=steps)
        if ok:
            rep["found"] += 1
            wit["status"] = "found"
        else:
            rep["hard_failures"] += 1
            wit["status"] = "HARD_FAILURE"
        rep["witnesses"].append(wit)


# -- Hodge-Newton reduction for regular mu ---------------------------------------------


def g_from_lattice(H, mu, N):
    """``g = H^-1 mu(t) sigma(H)`` modulo ``t^N`` for ``H`` with nonzero determinant.

    ``H`` must carry enough precision: ``H.ring.N >= N + val(det H)``. Returns
    None when ``g`` is not integral.
    """
    R = H.ring
    det = H.det()
    v = R.val(det)
    if v + N > R.N:
        raise InsufficientPrecision(f"need precision {v + N}, have {R.N}")
    prod = H.adjugate() * LoopMatrix.t_power(R, mu) * H.sigma()
    if any(R.val(e) < v for r in prod.rows for e in r):
        return None
    uinv = R.inv(R.shift_down(det, v))
    rows = [[R.mul(R.shift_down(e, v), uinv) for e in r] for r in prod.rows]
    return LoopMatrix(R, rows).truncate(N)


def hn_reduction_chain(H, mu, N, m_cap=12):
    """Rebuild the K-sigma-conjugacy of ``g = H^-1 mu(t) sigma(H)`` to ``mu(t)``.

    Steps: the diagonal ``m`` with ``mK = HK`` (row valuations and pivot
    units), ``c = m^-1 H`` in K, a torus solution ``m'`` of
    ``m'^-1 sigma(m') = m^-1 sigma(m)``, and the identity
    ``g = c^-1 m'^-1 mu(t) sigma(m') sigma(c)``.

    Returns ``(status, witness)`` with status ``found``, ``rejected`` (``g``
    is not in ``K mu(t) K``), ``UNRESOLVED`` or ``HARD_FAILURE``.
    """
    mu = _check_mu(mu)
    R = H.ring
    n = H.n
    g = g_from_lattice(H, mu, N)
    if g is None:
        return "rejected", {"reason": "g not integral"}
    try:
        if cartan_invariant(g) != tuple(sorted(mu, reverse=True)):
            return "rejected", {"reason": "g not in K mu K"}
    except InsufficientPrecision:
        return "rejected", {"reason": "Cartan invariant undetermined"}

    nus, units = [], []
    for i in range(n):
        vals = [R.val(e) for e in H.rows[i]]
        v = min(vals)
        j = vals.index(v)
        nus.append(v)
        units.append(R.shift_down(H.rows[i][j], v))
    c_rows = []
    for i in range(n):
        uinv = R.inv(units[i])
        c_rows.append([R.mul(uinv, R.shift_down(e, nus[i])) for e in H.rows[i]])
    c = LoopMatrix(R, c_rows).truncate(N)
    wit = {"g": g.to_json(), "nu": nus}
    if not membership(c).K:
        wit["reason"] = "H K contains no diagonal element although g is in K mu K"
        return "HARD_FAILURE", wit

    RN = c.ring
    units_n = [RN.from_coeffs(u) for u in units]
    lang_rhs = LoopMatrix.diag(RN, [RN.mul(RN.inv(u), RN.sigma(u)) for u in units_n])
    try:
        sol = solve_torus_lang(lang_rhs, m_cap)
    except LangNotFound as exc:
        wit["reason"] = str(exc)
        return "UNRESOLVED", wit
    R2 = sol.h.ring
    m_prime = sol.h
    c2 = c.embed_into(R2)
    g2 = g.embed_into(R2)
    mu_t = LoopMatrix.t_power(R2, mu)
    chain = c2.inverse() * m_prime.inverse() * mu_t * m_prime.sigma() * c2.sigma()
    wit.update(c=c.to_json(), m_prime=m_prime.to_json(), degree=sol.degree)
    if chain != g2:
        wit["reason"] = "chain does not reproduce g"
        return "HARD_FAILURE", wit
    return "found", wit


def verify_hn_reduction(q=2, m=1, N=3, mu=(1, 0), samples=100, seed=0, m_cap=12,
                        max_shift=2, sampling="mixed", max_draws=None):
    """Sample lattices ``H`` with ``H^-1 mu(t) sigma(H)`` in ``K mu(t) K`` and
    rebuild the proof chain for each."""
    mu = _check_mu(mu)
    n = len(mu)
    if len(set(mu)) != n:
        raise ValueError(f"mu = {mu} is not regular; the Levi subgroup is not the torus")
    rng = random.Random(f"{seed}:HN")
    P = N + 2 * n * max_shift + 2
    R = TruncRing(q, m, P)
    rep = _report("HN", {"q": q, "m": m, "N": N, "mu": list(mu), "samples": samples,
                         "sampling": sampling, "m_cap": m_cap}, seed)
    rep["rejected"] = 0
    max_draws = max_draws or 50 * samples
    draws = 0
    while rep["samples"] < samples:
        draws += 1
        if draws > max_draws:
            raise RuntimeError(f"only {rep['samples']} usable samples in {max_draws} draws")
        shift = [rng.randint(0, max_shift) for _ in range(n)]
        t_shift = LoopMatrix.t_power(R, shift)
        structured = sampling == "structured" or (sampling == "mixed" and draws % 2)
        if structured:
            d = LoopMatrix.diag(R, [R.random_unit(rng) for _ in range(n)])
            H = d * t_shift * random_K(R, n, rng)
        else:
            H = random_K(R, n, rng) * t_shift * random_K(R, n, rng)
        status, wit = hn_reduction_chain(H, mu, N, m_cap)
        if status == "rejected":
            rep["rejected"] += 1
            continue
        rep["samples"] += 1
        wit.update(index=rep["samples"] - 1, status=status, structured=bool(structured),
                   shift=shift)
        if status == "found":
            rep["found"] += 1
        elif status == "UNRESOLVED":
            rep["unresolved"] += 1
        else:
            rep["hard_failures"] += 1
        rep["witnesses"].append(wit)
    rep["unresolved_rate"] = rep["unresolved"] / rep["samples"] if rep["samples"] else 0.0
    return rep


def summary_line(rep):
    return (f"experiment {rep['experiment']}: samples={rep['samples']} found={rep['found']} "
            f"unresolved={rep['unresolved']} hard_failures={rep['hard_failures']} seed={rep['seed']}")
