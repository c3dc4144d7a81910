"""Root data of split classical groups, with an optional Frobenius twist.

Coordinates are concrete:

* ``GL_n``: cocharacters ``Z^n``, roots ``e_i - e_j``.
* ``SL_n``: cocharacters are the sum-zero vectors of ``Z^n`` (ambient
  coordinates are kept, so ``(1, -1)`` is a cocharacter of ``SL_2``).
* ``Sp_2n`` (``rank`` is the matrix size ``2n``): type ``C_n`` on ``Z^n``,
  roots ``+-e_i +- e_j`` and ``+-2e_i``, coroots ``+-e_i +- e_j`` and ``+-e_i``.
* ``GSp_2n``: ``Z^(n+1)`` with coordinates ``(a_1, ..., a_n, c)`` for the
  torus element ``diag(t^a_1, ..., t^a_n, t^(c-a_n), ..., t^(c-a_1))``;
  the last character coordinate is the similitude character.

The Frobenius is given by a permutation of simple roots. Its action on
cocharacters is fixed once at construction; for type A the nontrivial
diagram automorphism acts as ``v -> -w0(v)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

from .errors import SpecError
from .linalg import mat_vec, nullspace_rational, solve_rational

FAMILIES = ("GL", "SL", "Sp", "GSp")


@dataclass(frozen=True)
class GroupSpec:
    family: str
    rank: int
    # image list of simple-root labels (1-based), None for the identity;
    # "opposite" requests v -> -w0(v) for type A even when it fixes S (GL_2)
    sigma: tuple[int, ...] | str | None = None

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise SpecError(f"unknown family {self.family!r}; expected one of {FAMILIES}")
        if not isinstance(self.rank, int) or self.rank < 1:
            raise SpecError(f"rank must be a positive integer, got {self.rank!r}")
        if self.family in ("Sp", "GSp") and self.rank % 2:
            raise SpecError(f"{self.family} rank is the matrix size and must be even, got {self.rank}")
        if self.family == "SL" and self.rank < 2:
            raise SpecError("SL needs rank >= 2")
        if isinstance(self.sigma, str) and self.sigma != "opposite":
            raise SpecError(f"unknown sigma keyword {self.sigma!r}")
        if isinstance(self.sigma, list):
            object.__setattr__(self, "sigma", tuple(self.sigma))

    @property
    def name(self):
        return f"{self.family}_{self.rank}"


def _vec(n, entries):
    v = [0] * n
    for i, c in entries:
        v[i] += c
    return tuple(v)


def _type_a(n, d):
    roots, coroots, positive = [], [], []
    for i in range(n):
        for j in range(n):
            if i != j:
                r = _vec(d, [(i, 1), (j, -1)])
                roots.append(r)
                coroots.append(r)
                positive.append(i < j)
    simple = [_vec(d, [(i, 1), (i + 1, -1)]) for i in range(n - 1)]
    return roots, coroots, positive, simple


def _type_c(n, similitude):
    d = n + 1 if similitude else n
    z = [(n, -1)] if similitude else []
    roots, coroots, positive = [], [], []
    for i in range(n):
        for j in range(i + 1, n):
            for si, sj in ((1, -1), (-1, 1), (1, 1), (-1, -1)):
                shift = [] if si != sj else [(n, -si)] if similitude else []
                roots.append(_vec(d, [(i, si), (j, sj)] + shift))
                coroots.append(_vec(d, [(i, si), (j, sj)]))
                positive.append(si == 1)
        for s in (1, -1):
            roots.append(_vec(d, [(i, 2 * s)] + [(k, s * c) for k, c in z]))
            coroots.append(_vec(d, [(i, s)]))
            positive.append(s == 1)
    simple = [_vec(d, [(i, 1), (i + 1, -1)]) for i in range(n - 1)]
    simple.append(_vec(d, [(n - 1, 2)] + z))
    return roots, coroots, positive, simple


@dataclass(frozen=True, eq=False)
class RootDatum:
    """Root datum in concrete coordinates.

    All cocharacters are vectors of length ``ambient_dim``; ``lattice_basis``
    spans the cocharacter lattice inside ``Z^ambient_dim``.
    """

    spec: GroupSpec
    ambient_dim: int
    lattice_basis: tuple[tuple[int, ...], ...]
    roots: tuple[tuple[int, ...], ...]
    coroots: tuple[tuple[int, ...], ...]
    simple_indices: tuple[int, ...]
    positive_indices: tuple[int, ...]
    sigma_cochar: tuple[tuple[int, ...], ...]
    sigma_perm: tuple[int, ...]

    def __eq__(self, other):
        return isinstance(other, RootDatum) and self.spec == other.spec

    def __hash__(self):
        return hash(self.spec)

    def __repr__(self):
        return f"RootDatum({self.spec.name}, sigma={self.sigma_perm})"

    @property
    def cochar_rank(self):
        return len(self.lattice_basis)

    @property
    def semisimple_rank(self):
        return len(self.simple_indices)

    @property
    def simple_roots(self):
        return [self.roots[i] for i in self.simple_indices]

    @property
    def simple_coroots(self):
        return [self.coroots[i] for i in self.simple_indices]

    @cached_property
    def positive_coroots(self):
        return [self.coroots[i] for i in self.positive_indices]

    @cached_property
    def cartan_matrix(self):
        return tuple(
            tuple(pairing(self, a, c) for c in self.simple_coroots) for a in self.simple_roots
        )

    @cached_property
    def coroot_index(self):
        return {c: i for i, c in enumerate(self.coroots)}

    @cached_property
    def is_twisted(self):
        d = self.ambient_dim
        return any(self.sigma_cochar[i][j] != int(i == j) for i in range(d) for j in range(d))

    @cached_property
    def sigma_order(self):
        v = [list(r) for r in self.sigma_cochar]
        k = 1
        ident = [[int(i == j) for j in range(self.ambient_dim)] for i in range(self.ambient_dim)]
        cur = v
        while cur != ident:
            cur = [[sum(a * b for a, b in zip(row, col)) for col in zip(*v)] for row in cur]
            k += 1
        return k

    @cached_property
    def sigma_inverse(self):
        # sigma has finite order, so its inverse is a power
        m = [list(r) for r in self.sigma_cochar]
        cur = [[int(i == j) for j in range(self.ambient_dim)] for i in range(self.ambient_dim)]
        for _ in range(self.sigma_order - 1):
            cur = [[sum(a * b for a, b in zip(row, col)) for col in zip(*m)] for row in cur]
        return tuple(tuple(r) for r in cur)

    @cached_property
    def central_basis(self):
        # linear functionals killing every coroot
        return nullspace_rational([list(c) for c in self.simple_coroots], ncols=self.ambient_dim)

    def in_lattice(self, v):
        if len(v) != self.ambient_dim:
            return False
        if any(Fraction(x).denominator != 1 for x in v):
            return False
        coords = lattice_coords(self, v, check=False)
        return coords is not None and all(c.denominator == 1 for c in coords)

    def cochar(self, v):
        """Validate and normalise an integral cocharacter."""
        v = tuple(v)
        if not self.in_lattice(v):
            raise ValueError(f"{v} is not a cocharacter of {self.spec.name}")
        return tuple(int(x) for x in v)


def lattice_coords(datum, v, check=True):
    """Coordinates of ``v`` with respect to ``datum.lattice_basis``."""
    basis = datum.lattice_basis
    a = [[basis[j][i] for j in range(len(basis))] for i in range(datum.ambient_dim)]
    x = solve_rational(a, list(v))
    if check and (x is None or any(c.denominator != 1 for c in x)):
        raise ValueError(f"{v} is not in the cocharacter lattice")
    return x


def build_root_datum(spec: GroupSpec) -> RootDatum:
    fam, rank = spec.family, spec.rank
    if fam == "GL":
        d = rank
        roots, coroots, positive, simple = _type_a(rank, d)
        basis = [_vec(d, [(i, 1)]) for i in range(d)]
    elif fam == "SL":
        d = rank
        roots, coroots, positive, simple = _type_a(rank, d)
        basis = [_vec(d, [(i, 1), (i + 1, -1)]) for i in range(d - 1)]
    else:
        n = rank // 2
        sim = fam == "GSp"
        d = n + 1 if sim else n
        roots, coroots, positive, simple = _type_c(n, sim)
        basis = [_vec(d, [(i, 1)]) for i in range(d)]

    simple_indices = tuple(roots.index(s) for s in simple)
    positive_indices = tuple(i for i, p in enumerate(positive) if p)
    ell = len(simple_indices)

    cartan = [[sum(a * c for a, c in zip(roots[i], coroots[j])) for j in simple_indices] for i in simple_indices]
    perm, sigma = _frobenius(spec, d, ell, cartan)

    datum = RootDatum(
        spec=spec,
        ambient_dim=d,
        lattice_basis=tuple(basis),
        roots=tuple(roots),
        coroots=tuple(coroots),
        simple_indices=simple_indices,
        positive_indices=positive_indices,
        sigma_cochar=sigma,
        sigma_perm=perm,
    )
    _check_datum(datum)
    return datum


def _frobenius(spec, d, ell, cartan):
    ident = tuple(tuple(int(i == j) for j in range(d)) for i in range(d))
    reversal = tuple(range(ell, 0, -1))
    type_a = spec.family in ("GL", "SL")
    minus_w0 = tuple(tuple(-int(j == d - 1 - i) for j in range(d)) for i in range(d))

    if spec.sigma is None:
        return tuple(range(1, ell + 1)), ident
    if spec.sigma == "opposite":
        if not type_a:
            raise SpecError(f"sigma=opposite is only defined for GL/SL, not {spec.family}")
        return reversal, minus_w0

    perm = tuple(spec.sigma)
    if sorted(perm) != list(range(1, ell + 1)):
        raise SpecError(f"sigma {perm} is not a permutation of the simple roots 1..{ell}")
    for i in range(ell):
        for j in range(ell):
            a, b = perm[i] - 1, perm[j] - 1
            if cartan[a][b] != cartan[i][j]:
                raise SpecError(
                    f"sigma {perm} does not preserve the Cartan matrix: "
                    f"A[{i + 1}][{j + 1}] = {cartan[i][j]} but "
                    f"A[{a + 1}][{b + 1}] = {cartan[a][b]}"
                )
    if perm == tuple(range(1, ell + 1)):
        return perm, ident
    if type_a and perm == reversal:
        return perm, minus_w0
    raise SpecError(f"no realization of diagram automorphism {perm} for {spec.name}")


def _check_datum(datum):
    for a, c in zip(datum.roots, datum.coroots):
        if sum(x * y for x, y in zip(a, c)) != 2:
            raise AssertionError(f"<{a}, {c}> != 2")
    pos = set(datum.positive_indices)
    for i, c in enumerate(datum.coroots):
        img = mat_vec(datum.sigma_cochar, c)
        j = datum.coroot_index.get(img)
        if j is None or (i in pos) != (j in pos):
            raise SpecError(f"sigma does not preserve the positive coroots ({c} -> {img})")
    for b in datum.lattice_basis:
        img = mat_vec(datum.sigma_cochar, b)
        if not datum.in_lattice(img):
            raise SpecError("sigma does not preserve the cocharacter lattice")


def pairing(datum, char, cochar):
    """The natural pairing ``<char, cochar>`` as an exact rational."""
    if len(char) != len(cochar) or len(char) != datum.ambient_dim:
        raise ValueError(
            f"dimension mismatch: character has {len(char)} entries, "
            f"cocharacter {len(cochar)}, datum expects {datum.ambient_dim}"
        )
    s = sum(Fraction(a) * Fraction(b) for a, b in zip(char, cochar))
    return s


def is_dominant(datum, v):
    return all(pairing(datum, datum.roots[i], v) >= 0 for i in datum.positive_indices)


def is_central(datum, v):
    return all(pairing(datum, a, v) == 0 for a in datum.roots)


def reflect(datum, i, v):
    """Apply the simple reflection with 1-based label ``i``."""
    a = datum.roots[datum.simple_indices[i - 1]]
    c = datum.coroots[datum.simple_indices[i - 1]]
    k = sum(Fraction(x) * Fraction(y) for x, y in zip(a, v))
    return tuple(_norm(Fraction(x) - k * y) for x, y in zip(v, c))


def _norm(x):
    x = Fraction(x)
    return int(x) if x.denominator == 1 else x


def dominant_representative(datum, v):
    """Return ``(v_plus, w)`` with ``v_plus`` dominant and ``w(v) = v_plus``.

    ``w`` is a WeylElement of the group of ``datum``.
    """
    from .weyl import weyl_group

    W = weyl_group(datum)
    cur = tuple(_norm(x) for x in v)
    word = []
    while True:
        for i, s in enumerate(datum.simple_roots, start=1):
            if pairing(datum, s, cur) < 0:
                cur = reflect(datum, i, cur)
                word.append(i)
                break
        else:
            break
    # w = s_{i_k} ... s_{i_1}
    return cur, W.from_word(tuple(reversed(word)))


def sigma_apply(datum, v):
    return tuple(_norm(x) for x in mat_vec(datum.sigma_cochar, [Fraction(x) for x in v]))


def sigma_inverse_apply(datum, v):
    return tuple(_norm(x) for x in mat_vec(datum.sigma_inverse, [Fraction(x) for x in v]))


def simple_coroot_coefficients(datum, v):
    """Write ``v`` as ``sum c_i alpha_i^vee`` over Q, or return None."""
    cols = datum.simple_coroots
    if not cols:
        return () if all(x == 0 for x in v) else None
    a = [[c[i] for c in cols] for i in range(datum.ambient_dim)]
    return solve_rational(a, [Fraction(x) for x in v])


def central_functionals(datum):
    """A basis of linear functionals vanishing on every coroot."""
    return datum.central_basis


def fmt_vec(v):
    """JSON-friendly rendering of a rational vector."""
    return [int(x) if Fraction(x).denominator == 1 else str(Fraction(x)) for x in v]


__all__ = [
    "GroupSpec", "RootDatum", "build_root_datum", "pairing", "is_dominant", "is_central",
    "dominant_representative", "sigma_apply", "sigma_inverse_apply", "lattice_coords",
    "simple_coroot_coefficients", "central_functionals", "fmt_vec", "reflect",
]
