"""Weyl groups as integer matrices on cocharacters.

Elements carry their lexicographically smallest reduced word; simple
reflections are labelled ``1..l`` in the order of ``datum.simple_indices``.
The Bruhat order uses the subword property, and the order on ``^J W``
quantifies over all of ``W_J``.
"""

from __future__ import annotations

from fractions import Fraction
from functools import cache, cached_property
from math import factorial

from .errors import InternalConsistencyError
from .poset import Poset, _bits

SIZE_LIMIT = 10**7


class WeylElement:
    __slots__ = ("matrix", "word", "index")

    def __init__(self, matrix, word, index=None):
        self.matrix = matrix
        self.word = word
        self.index = index

    @property
    def length(self):
        return len(self.word)

    def __eq__(self, other):
        return isinstance(other, WeylElement) and self.matrix == other.matrix

    def __hash__(self):
        return hash(self.matrix)

    def __call__(self, v):
        out = []
        for row in self.matrix:
            x = sum(a * Fraction(b) for a, b in zip(row, v) if a)
            out.append(int(x) if x.denominator == 1 else x)
        return tuple(out)

    def __repr__(self):
        if not self.word:
            return "1"
        return "s" + "s".join(map(str, self.word))


def _mat_mul(a, b):
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in zip(*b)) for row in a)


def expected_order(datum):
    spec = datum.spec
    if spec.family in ("GL", "SL"):
        return factorial(spec.rank)
    n = spec.rank // 2
    return 2**n * factorial(n)


class WeylGroup:
    def __init__(self, datum, limit=SIZE_LIMIT):
        size = expected_order(datum)
        if size > limit:
            raise ValueError(f"|W| = {size} exceeds the size guard {limit}")
        self.datum = datum
        d = datum.ambient_dim
        self.rank = datum.semisimple_rank
        self.gens = []
        for a, c in zip(datum.simple_roots, datum.simple_coroots):
            self.gens.append(tuple(
                tuple(int(i == j) - c[i] * a[j] for j in range(d)) for i in range(d)
            ))
        ident = tuple(tuple(int(i == j) for j in range(d)) for i in range(d))

        self.elements = [WeylElement(ident, (), 0)]
        self.index = {ident: 0}
        level = [0]
        while level:
            nxt = []
            for k in level:
                w = self.elements[k]
                for s, g in enumerate(self.gens, start=1):
                    m = _mat_mul(w.matrix, g)
                    if m not in self.index:
                        e = WeylElement(m, w.word + (s,), len(self.elements))
                        self.index[m] = e.index
                        self.elements.append(e)
                        nxt.append(e.index)
            level = nxt
        if len(self.elements) != size:
            raise InternalConsistencyError(f"generated {len(self.elements)} elements, expected {size}")
        self.rmul = [[self.index[_mat_mul(w.matrix, g)] for g in self.gens] for w in self.elements]
        self.lmul = [[self.index[_mat_mul(g, w.matrix)] for g in self.gens] for w in self.elements]

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    @property
    def identity(self):
        return self.elements[0]

    @property
    def simple_reflections(self):
        return [self.elements[self.rmul[0][s]] for s in range(self.rank)]

    def element(self, matrix):
        return self.elements[self.index[matrix]]

    def from_word(self, word):
        k = 0
        for s in word:
            k = self.rmul[k][s - 1]
        return self.elements[k]

    def _mul_idx(self, a, b):
        for s in self.elements[b].word:
            a = self.rmul[a][s - 1]
        return a

    def mul(self, *ws):
        k = 0
        for w in ws:
            k = self._mul_idx(k, w.index)
        return self.elements[k]

    @cached_property
    def _inverse(self):
        inv = [0] * len(self.elements)
        for w in self.elements:
            k = 0
            for s in reversed(w.word):
                k = self.rmul[k][s - 1]
            inv[w.index] = k
        return inv

    def inverse(self, w):
        return self.elements[self._inverse[w.index]]

    @cached_property
    def _sigma(self):
        sig = self.datum.sigma_cochar
        sig_inv = self.datum.sigma_inverse
        return [self.index[_mat_mul(_mat_mul(sig, w.matrix), sig_inv)] for w in self.elements]

    def sigma(self, w):
        """The Frobenius image ``sigma o w o sigma^-1``."""
        return self.elements[self._sigma[w.index]]

    def sigma_power(self, w, k):
        i = w.index
        for _ in range(k % self.datum.sigma_order):
            i = self._sigma[i]
        return self.elements[i]

    def inversion_count(self, w):
        """Number of positive coroots sent to negative ones."""
        datum = self.datum
        pos = set(datum.positive_indices)
        n = 0
        for i in datum.positive_indices:
            img = w(datum.coroots[i])
            if datum.coroot_index[img] not in pos:
                n += 1
        return n

    # -- parabolic subgroups ------------------------------------------------

    def _check_J(self, J):
        J = frozenset(J)
        if not J <= set(range(1, self.rank + 1)):
            raise ValueError(f"J = {sorted(J)} is not a subset of 1..{self.rank}")
        return J

    @cache
    def _parabolic(self, J):
        seen = {0}
        order = [0]
        for k in order:
            for s in sorted(J):
                m = self.rmul[k][s - 1]
                if m not in seen:
                    seen.add(m)
                    order.append(m)
        return tuple(sorted(order))

    def parabolic(self, J):
        """All elements of ``W_J`` in canonical order."""
        return [self.elements[i] for i in self._parabolic(self._check_J(J))]

    def longest_element(self, J=None):
        J = self._check_J(range(1, self.rank + 1) if J is None else J)
        return self.elements[max(self._parabolic(J), key=lambda i: (len(self.elements[i].word), i))]

    @property
    def w0(self):
        return self.longest_element()

    def is_min_coset_rep(self, w, J):
        """``w`` is minimal in ``W_J w``: ``w^-1`` keeps each simple coroot of J positive."""
        datum = self.datum
        winv = self.inverse(w)
        pos = set(datum.positive_indices)
        for j in self._check_J(J):
            img = winv(datum.coroots[datum.simple_indices[j - 1]])
            if datum.coroot_index[img] not in pos:
                return False
        return True

    def min_coset_reps(self, J):
        J = self._check_J(J)
        return [w for w in self.elements if self.is_min_coset_rep(w, J)]

    # -- Bruhat order ---------------------------------------------------------

    @cache
    def _lower_ideal(self, k):
        ideal = 1
        for s in self.elements[k].word:
            add = 0
            for x in _bits(ideal):
                add |= 1 << self.rmul[x][s - 1]
            ideal |= add
        return ideal

    def bruhat_leq(self, u, w):
        """Subword criterion on the reduced word of ``w``."""
        return bool(self._lower_ideal(w.index) >> u.index & 1)

    @cached_property
    def _upper_ideals(self):
        up = [0] * len(self.elements)
        for w in self.elements:
            for u in _bits(self._lower_ideal(w.index)):
                up[u] |= 1 << w.index
        return up

    # -- the order on ^J W -----------------------------------------------------

    def x_J(self, J):
        return self.mul(self.w0, self.longest_element(J))

    def _twists(self, J):
        """For each ``y`` in ``W_J``: the pair (y, sigma(x_J y x_J^-1))."""
        x = self.x_J(J).index
        xinv = self._inverse[x]
        out = []
        for y in self._parabolic(J):
            c = self._mul_idx(self._mul_idx(x, y), xinv)
            out.append((y, self._sigma[c]))
        return out

    def eo_leq(self, w1, w, J):
        """``w1 <= w`` on ``^J W``: some ``y`` in ``W_J`` has
        ``y w1 sigma(x_J y x_J^-1) <= w`` in the Bruhat order."""
        J = self._check_J(J)
        for v, name in ((w1, "w'"), (w, "w")):
            if not self.is_min_coset_rep(v, J):
                raise ValueError(f"{name} = {v} is not in ^J W for J = {sorted(J)}")
        low = self._lower_ideal(w.index)
        for y, tw in self._twists(J):
            z = self._mul_idx(self._mul_idx(y, w1.index), tw)
            if low >> z & 1:
                return True
        return False

    def eo_poset(self, J):
        J = self._check_J(J)
        reps = self.min_coset_reps(J)
        pos = {w.index: i for i, w in enumerate(reps)}
        twists = self._twists(J)
        upper = self._upper_ideals
        up = []
        for w1 in reps:
            mask = 0
            for y, tw in twists:
                z = self._mul_idx(self._mul_idx(y, w1.index), tw)
                mask |= upper[z]
            up.append(sum(1 << pos[k] for k in _bits(mask) if k in pos))
        poset = Poset(reps, up)
        poset.check_partial_order()
        wmax = self.mul(self.longest_element(J), self.w0)
        maxima, minima = poset.maximal(), poset.minimal()
        if [reps[i] for i in maxima] != [wmax]:
            raise InternalConsistencyError(f"maximal elements {[reps[i] for i in maxima]}, expected {wmax}")
        if [reps[i] for i in minima] != [self.identity]:
            raise InternalConsistencyError(f"minimal elements {[reps[i] for i in minima]}, expected 1")
        return poset


@cache
def weyl_group(datum):
    return WeylGroup(datum)


def generate_weyl(datum):
    """All Weyl group elements, ordered by length and then reduced word."""
    return list(weyl_group(datum).elements)
