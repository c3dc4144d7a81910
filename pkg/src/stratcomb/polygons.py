"""Newton polygons for split type A, used as an independent oracle for B(G, mu).

A polygon is stored as its slope vector ``nu`` (slopes non-increasing, so
the polygon is concave when drawn from (0, 0) to (n, |mu|)). Breakpoints
must be integral. ``nu <= mu`` means every partial sum of ``nu`` is at most
the corresponding partial sum of ``mu``, with equal totals.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import accumulate


def partial_sums(v):
    return list(accumulate(Fraction(x) for x in v))


def polygon_leq(nu1, nu2):
    """``nu1`` lies on or below ``nu2`` with the same endpoints."""
    a, b = partial_sums(nu1), partial_sums(nu2)
    return a[-1] == b[-1] and all(x <= y for x, y in zip(a, b))


def newton_polygons(mu):
    """All slope vectors ``nu <= mu`` with integral breakpoints.

    ``mu`` must be non-increasing. Returns a sorted list of tuples.
    """
    mu = tuple(int(x) for x in mu)
    if any(a < b for a, b in zip(mu, mu[1:])):
        raise ValueError(f"{mu} is not non-increasing")
    n = len(mu)
    bound = partial_sums(mu)
    total = bound[-1]
    lo, hi = min(mu), max(mu)
    out = []

    def extend(pos, height, prev_slope, slopes):
        if pos == n:
            if height == total:
                out.append(tuple(_norm(s) for s in slopes))
            return
        for length in range(1, n - pos + 1):
            for h in range(lo * length, hi * length + 1):
                s = Fraction(h, length)
                if prev_slope is not None and s >= prev_slope:
                    continue
                ok = all(height + s * (k + 1) <= bound[pos + k] for k in range(length))
                if ok:
                    extend(pos + length, height + h, s, slopes + [s] * length)

    extend(0, 0, None, [])
    return sorted(out)


def _norm(x):
    return int(x) if x.denominator == 1 else x
