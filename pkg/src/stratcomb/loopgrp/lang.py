"""Lang's map ``x -> x^-1 sigma(x)`` on the diagonal torus of GL_n(O/t^N).

For a unit ``c`` the equation ``sigma(x) = x c`` is solved level by level:
mod t it reads ``x0^(q-1) = c0`` (a discrete logarithm), and at level
``k >= 1``, writing ``x_k = x0 z``, it becomes the Artin-Schreier equation
``z^q - z = r_k / x0^q``, which is F_p-linear in ``z``. When a level has no
solution over the current field the whole computation is repeated over a
larger extension.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ..errors import InternalConsistencyError
from ..linalg import solve_mod_p
from .fields import CONWAY
from .ring import LoopMatrix


class LangNotFound(ArithmeticError):
    """No solution within the allowed extension degrees."""


@dataclass
class TorusLangSolution:
    h: LoopMatrix
    degree: int
    log: list = field(default_factory=list)


def extension_degrees(ring, m_cap):
    """Multiples of ``ring.m`` up to ``m_cap`` with a stored field."""
    max_e = max(CONWAY[ring.p])
    return [d for d in range(ring.m, m_cap + 1, ring.m) if d * ring.qe <= max_e]


def _solve_coordinate(R, c):
    """``x`` with ``sigma(x) = x c`` over R, or None."""
    F = R.F
    q = R.q
    c0 = c[0]
    a = F.log[c0]
    if a % (q - 1):
        return None
    x = [F.exp[a // (q - 1)]] + [0] * (R.N - 1)
    x0q = F.pow(x[0], q)
    inv_x0q = F.inv(x0q)
    cols = None
    for k in range(1, R.N):
        r = 0
        for i in range(k):
            r = F.add(r, F.mul(x[i], c[k - i]))
        rhs = F.mul(r, inv_x0q)
        if cols is None:
            cols = [F.digits(F.sub(F.pow(F.p**b, q), F.p**b)) for b in range(F.e)]
        z = solve_mod_p(cols, F.digits(rhs), F.p)
        if z is None:
            return None
        x[k] = F.mul(x[0], F.from_digits([int(v) for v in z]))
    return tuple(x)


def solve_torus_lang(c, m_cap=12):
    """Diagonal ``h`` with ``h^-1 sigma(h) = c`` for a diagonal unit matrix ``c``.

    Returns a TorusLangSolution (``h`` lives over the extension of degree
    ``degree``); raises LangNotFound if no degree up to ``m_cap`` works.
    """
    R = c.ring
    n = c.n
    for i in range(n):
        for j in range(n):
            if i != j and any(c[i, j]):
                raise ValueError("c is not diagonal")
        if not R.is_unit(c[i, i]):
            raise ValueError(f"diagonal entry {i + 1} of c is not a unit")
    log = []
    for d in extension_degrees(R, m_cap):
        R2 = R.with_m(d)
        cc = c.embed_into(R2)
        xs = []
        for i in range(n):
            x = _solve_coordinate(R2, cc[i, i])
            if x is None:
                log.append({"degree": d, "failed_coordinate": i + 1})
                break
            xs.append(x)
        else:
            h = LoopMatrix.diag(R2, xs)
            if h.inverse() * h.sigma() != cc:
                raise InternalConsistencyError("torus Lang solution does not verify")
            log.append({"degree": d, "solved": True})
            return TorusLangSolution(h, d, log)
    raise LangNotFound(f"torus Lang equation: not found up to m_cap = {m_cap}")
