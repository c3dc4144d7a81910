"""Search for ``h`` with ``h g sigma(h)^-1 = mu(t)`` modulo ``t^N``.

The condition ``h g = mu(t) sigma(h)`` is F_p-linear in the coefficients of
``h`` (``sigma`` is additive), so every solution lies in the kernel of one
matrix over F_p. Whether a solution is invertible depends only on ``h mod t``,
so the search runs over the image of the kernel in the residues: completely
when that space is small, by random combinations otherwise.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field

import numpy as np

from ..errors import InternalConsistencyError
from ..linalg import echelon_mod_p, nullspace_mod_p
from .fields import CONWAY
from .ring import LoopMatrix, residue_det

EXHAUSTIVE_LIMIT = 2**16


@dataclass
class SearchResult:
    found: bool
    h: LoopMatrix | None = None
    degree: int | None = None
    exhausted: bool = False
    log: list = field(default_factory=list)


def _variables(n, N, D, restrict):
    out = []
    for i in range(n):
        for j in range(n):
            for k in range(N):
                if restrict == "I" and k == 0 and i > j:
                    continue
                for b in range(D):
                    out.append((i, j, k, b))
    return out


def _linear_map_columns(g, mu, variables):
    """Images of the basis vectors under ``h -> h g - mu(t) sigma(h)``, flattened to digits."""
    R = g.ring
    F = R.F
    n, N, D = g.n, R.N, F.e
    size = n * n * N * D
    cols = []
    for i, j, k, b in variables:
        beta = F.p**b
        vec = [0] * (n * n * N)
        for col in range(n):
            ser = g[j, col]
            for l in range(N - k):
                if ser[l]:
                    idx = (i * n + col) * N + k + l
                    vec[idx] = F.add(vec[idx], F.mul(beta, ser[l]))
        if k + mu[i] < N:
            idx = (i * n + j) * N + k + mu[i]
            vec[idx] = F.sub(vec[idx], F.pow(beta, R.q))
        out = np.zeros(size, dtype=np.int64)
        for pos, val in enumerate(vec):
            if val:
                out[pos * D:(pos + 1) * D] = F.digits(val)
        cols.append(out)
    return cols


def _assemble(R, n, variables, vector):
    F = R.F
    digits = {}
    for (i, j, k, b), x in zip(variables, vector):
        if x:
            digits.setdefault((i, j, k), [0] * F.e)[b] = int(x)
    rows = [[[0] * R.N for _ in range(n)] for _ in range(n)]
    for (i, j, k), ds in digits.items():
        rows[i][j][k] = F.from_digits(ds)
    return LoopMatrix(R, rows)


def _residue_of(F, n, variables, vector):
    res = [[0] * n for _ in range(n)]
    acc = {}
    for (i, j, k, b), x in zip(variables, vector):
        if k == 0 and x:
            acc.setdefault((i, j), [0] * F.e)[b] = int(x)
    for (i, j), ds in acc.items():
        res[i][j] = F.from_digits(ds)
    return res


def find_conjugator(g, mu, m_schedule=(1,), restrict="K", exhaustive=False, rng=None,
                    tries=256, exhaustive_limit=EXHAUSTIVE_LIMIT):
    """Look for ``h`` in K (or I) over extensions of degree in ``m_schedule``
    with ``h g sigma(h)^-1 = mu(t)`` mod ``t^N``.

    In exhaustive mode every residue class of solutions is tried at every
    degree, so ``found=False`` with ``exhausted=True`` is a definite answer
    for the truncated problem at those degrees.
    """
    if restrict not in ("K", "I"):
        raise ValueError(f"restrict must be 'K' or 'I', not {restrict!r}")
    R0 = g.ring
    n = g.n
    mu = tuple(mu)
    target = LoopMatrix.t_power(R0, mu)
    if g == target:
        return SearchResult(True, LoopMatrix.identity(R0, n), R0.m, False, [{"degree": R0.m, "trivial": True}])

    log = []
    all_exhausted = True
    max_e = max(CONWAY[R0.p])
    for d in m_schedule:
        if d % R0.m or d * R0.qe > max_e:
            log.append({"degree": d, "skipped": "no embedding or field table"})
            all_exhausted = False
            continue
        R = R0.with_m(d)
        F = R.F
        gg = g.embed_into(R)
        mu_t = LoopMatrix.t_power(R, mu)
        variables = _variables(n, R.N, F.e, restrict)
        cols = _linear_map_columns(gg, mu, variables)
        kernel = nullspace_mod_p(cols, F.p)
        h0_cols = [c for c, v in enumerate(variables) if v[2] == 0]
        others = [c for c, v in enumerate(variables) if v[2] != 0]
        basis, pivots = echelon_mod_p(kernel, F.p, h0_cols + others)
        h0set = set(h0_cols)
        relevant = [v for v, c in zip(basis, pivots) if c in h0set]
        r = len(relevant)
        entry = {"degree": d, "kernel_dim": len(kernel), "residue_dim": r}
        complete = exhaustive or F.p**r <= exhaustive_limit
        if exhaustive and F.p**r > exhaustive_limit:
            raise ValueError(f"exhaustive search space p^{r} exceeds the limit {exhaustive_limit}")

        def check(vec):
            res = _residue_of(F, n, variables, vec)
            if residue_det(F, res) == 0:
                return None
            h = _assemble(R, n, variables, vec)
            if h * gg != mu_t * h.sigma():
                raise InternalConsistencyError("kernel element does not solve h g = mu sigma(h)")
            return h

        found = None
        tried = 0
        if complete:
            rel = np.array(relevant, dtype=np.int64) if r else None
            for coeffs in itertools.product(range(F.p), repeat=r):
                if not any(coeffs):
                    continue
                tried += 1
                vec = (np.array(coeffs, dtype=np.int64) @ rel) % F.p
                found = check(vec)
                if found is not None:
                    break
        else:
            rng = rng or random.Random(0)
            rel = np.array(relevant, dtype=np.int64)
            for _ in range(tries):
                coeffs = np.array([rng.randrange(F.p) for _ in range(r)], dtype=np.int64)
                tried += 1
                found = check((coeffs @ rel) % F.p)
                if found is not None:
                    break
        entry["candidates_tried"] = tried
        entry["exhausted"] = complete and found is None
        log.append(entry)
        if found is not None:
            return SearchResult(True, found, d, False, log)
        if not complete:
            all_exhausted = False
    return SearchResult(False, None, None, all_exhausted, log)


def verify_conjugator(g, mu, h, restrict="K"):
    """Direct check of ``h g sigma(h)^-1 = mu(t)`` and membership of ``h``."""
    R = h.ring
    gg = g.embed_into(R)
    mu_t = LoopMatrix.t_power(R, mu)
    res = h.residue()
    F = R.F
    if residue_det(F, res) == 0:
        return False
    if restrict == "I" and any(res[i][j] for i in range(h.n) for j in range(i)):
        return False
    return h * gg * h.sigma().inverse() == mu_t
