"""Graded basis, canonical form modulo exact forms, and the bracket of the
full toroidal Lie algebra ``tau = g(x)A + Z + W_{n+1}``.

Basis symbols are ``Symbol(kind, index, degree)`` with kind one of

* ``"g"`` -- ``x_index (x) t^degree`` for a basis element of g,
* ``"K"`` -- the class of ``t^degree K_index`` in ``Z = Omega_A / dA``,
* ``"d"`` -- ``t^degree d_index``.

K classes are kept in a canonical form: for ``k != 0`` the coordinate
``j*(k)`` (largest index with ``k_j != 0``) is eliminated through the
relation ``sum_i k_i t^k K_i = 0``.
"""

import itertools
from fractions import Fraction
from typing import NamedTuple

from .combination import Combination
from . import linalg

KIND_ORDER = {"g": 0, "d": 1, "K": 2}


class RankMismatch(ValueError):
    pass


class WindowError(ValueError):
    """An operation produced a degree outside the declared window."""

    def __init__(self, message, degree=None):
        super().__init__(message)
        self.degree = degree


class Symbol(NamedTuple):
    kind: str
    index: int
    degree: tuple

    def sort_key(self):
        return (self.degree, KIND_ORDER[self.kind], self.index)

    def __str__(self):
        deg = ",".join(map(str, self.degree))
        if self.kind == "g":
            return f"g{self.index}[{deg}]"
        return f"{self.kind}{self.index}[{deg}]"


def GElem(x, k):
    return Symbol("g", x, tuple(k))


def KClass(i, k):
    return Symbol("K", i, tuple(k))


def DElem(i, k):
    return Symbol("d", i, tuple(k))


def eliminated_index(k):
    """Largest j with k_j != 0, or None for the zero multi-index."""
    for j in range(len(k) - 1, -1, -1):
        if k[j]:
            return j
    return None


def add(k, l):
    return tuple(a + b for a, b in zip(k, l))


def sub(k, l):
    return tuple(a - b for a, b in zip(k, l))


def neg(k):
    return tuple(-a for a in k)


def box(radius, rank):
    """All multi-indices of ``[-radius, radius]^rank`` in lexicographic order."""
    return [tuple(p) for p in itertools.product(range(-radius, radius + 1), repeat=rank)]


def _canonical_k(i, k, coeff):
    j = eliminated_index(k)
    if j is None or i != j:
        yield KClass(i, k), coeff
        return
    piv = k[j]
    for p, kp in enumerate(k):
        if p != j and kp:
            yield KClass(p, k), -coeff * Fraction(kp, piv)


class Element(Combination):
    """Exact element of tau: finitely supported map Symbol -> Fraction."""

    __slots__ = ("rank",)

    def __init__(self, terms=None, rank=None):
        if rank is None:
            if not terms:
                raise ValueError("rank is required for an empty element")
            rank = len(next(iter(terms)).degree)
        self.rank = rank
        super().__init__(terms)

    def _canonical(self, key, coeff):
        if len(key.degree) != self.rank:
            raise RankMismatch(
                f"symbol {key} has rank {len(key.degree)}, expected {self.rank}")
        if key.kind == "K":
            yield from _canonical_k(key.index, key.degree, coeff)
        else:
            yield key, coeff

    def _copy_context(self, obj):
        obj.rank = self.rank

    def _check(self, other):
        if not isinstance(other, Element):
            raise TypeError(f"cannot combine Element with {type(other).__name__}")
        if other.rank != self.rank:
            raise RankMismatch(f"rank {self.rank} vs {other.rank}")

    def __eq__(self, other):
        res = super().__eq__(other)
        if res is True and isinstance(other, Element):
            return self.rank == other.rank or not self._terms
        return res

    __hash__ = Combination.__hash__

    def symbols(self):
        return sorted(self._terms, key=Symbol.sort_key)

    def degrees(self):
        return {s.degree for s in self._terms}

    def degree(self):
        """Degree of a homogeneous element (None for zero or inhomogeneous)."""
        degs = self.degrees()
        return next(iter(degs)) if len(degs) == 1 else None

    def is_homogeneous(self):
        return len(self.degrees()) <= 1

    def k_part(self):
        return Element({s: c for s, c in self._terms.items() if s.kind == "K"}, self.rank)

    def without_k(self):
        return Element({s: c for s, c in self._terms.items() if s.kind != "K"}, self.rank)

    def __repr__(self):
        if not self._terms:
            return "0"
        parts = []
        for s in self.symbols():
            parts.append(f"{self._terms[s]}*{s}")
        return " + ".join(parts)


def normal_form(terms, rank):
    """Canonical element for raw K-terms ``[(direction, k, coeff), ...]``."""
    out = Element({}, rank)
    acc = {}
    for i, k, c in terms:
        k = tuple(k)
        if len(k) != rank:
            raise RankMismatch(f"multi-index {k} has rank {len(k)}, expected {rank}")
        acc[KClass(i, k)] = acc.get(KClass(i, k), 0) + Fraction(c)
    return out + Element(acc, rank)


# --------------------------------------------------------------------------
# finite-dimensional g


class SimpleAlgebra:
    """Basis, structure constants and invariant form of g.

    ``structure[(a, b)]`` is a dict ``c -> coeff`` with ``[x_a, x_b] = sum``.
    ``matrices`` (when available) is the defining representation.
    """

    def __init__(self, name, labels, structure, form, cartan=(), raising=(),
                 lowering=(), matrices=None, rank=0):
        self.name = name
        self.labels = tuple(labels)
        self.structure = structure
        self.form = [[Fraction(x) for x in row] for row in form]
        self.cartan = tuple(cartan)
        self.raising = tuple(raising)
        self.lowering = tuple(lowering)
        self.matrices = matrices
        self.rank = rank  # number of simple roots (0 for abelian / zero)

    @property
    def dim(self):
        return len(self.labels)

    def __repr__(self):
        return f"SimpleAlgebra({self.name!r}, dim={self.dim})"

    def index(self, x):
        if isinstance(x, str):
            return self.labels.index(x)
        if not 0 <= x < self.dim:
            raise IndexError(f"basis index {x} out of range for {self.name}")
        return x

    def bracket(self, a, b):
        return self.structure.get((a, b), {})

    def pairing(self, a, b):
        return self.form[a][b]

    def check_antisymmetry(self):
        return all(
            {k: v for k, v in self.bracket(a, b).items()}
            == {k: -v for k, v in self.bracket(b, a).items()}
            for a in range(self.dim) for b in range(self.dim))

    def _bracket_vec(self, u, v):
        out = {}
        for a, ca in u.items():
            for b, cb in v.items():
                linalg.axpy(out, ca * cb, self.bracket(a, b))
        return out

    def check_jacobi(self):
        for a, b, c in itertools.product(range(self.dim), repeat=3):
            total = {}
            for x, y, z in ((a, b, c), (b, c, a), (c, a, b)):
                linalg.axpy(total, 1, self._bracket_vec({x: 1}, self.bracket(y, z)))
            if total:
                return False
        return True

    def check_form(self):
        """Symmetric, nondegenerate and associative: ([x,y]|z) == (x|[y,z])."""
        n = self.dim
        if any(self.form[i][j] != self.form[j][i] for i in range(n) for j in range(n)):
            return False
        if n and linalg.matrix_rank(self.form) != n:
            return False
        for a, b, c in itertools.product(range(n), repeat=3):
            lhs = sum((v * self.form[k][c] for k, v in self.bracket(a, b).items()), Fraction(0))
            rhs = sum((v * self.form[a][k] for k, v in self.bracket(b, c).items()), Fraction(0))
            if lhs != rhs:
                return False
        return True


def _unit(m, i, j):
    out = linalg.zeros(m)
    out[i][j] = Fraction(1)
    return out


def sl_express(matrix):
    """Coordinates of a traceless m x m matrix on the sl_m basis of :func:`sl`."""
    m = len(matrix)
    coords = {}
    idx = 0
    for i in range(m):
        for j in range(m):
            if i != j:
                if matrix[i][j]:
                    coords[idx] = Fraction(matrix[i][j])
                idx += 1
    acc = Fraction(0)
    for i in range(m - 1):
        acc += matrix[i][i]
        if acc:
            coords[idx + i] = acc
    if acc + matrix[m - 1][m - 1]:
        raise ValueError("matrix is not traceless")
    return coords


def sl(m):
    """sl_m with basis E_ij (i != j, lexicographic) then H_i = E_ii - E_{i+1,i+1}.

    The invariant form is the trace form of the defining representation.
    """
    if m < 2:
        raise ValueError("sl_m needs m >= 2")
    labels, mats, raising, lowering = [], [], [], []
    for i in range(m):
        for j in range(m):
            if i != j:
                (raising if i < j else lowering).append(len(labels))
                labels.append(f"E{i}{j}")
                mats.append(_unit(m, i, j))
    cartan = []
    for i in range(m - 1):
        cartan.append(len(labels))
        labels.append(f"H{i}")
        mats.append(linalg.matsub(_unit(m, i, i), _unit(m, i + 1, i + 1)))
    structure = {}
    for a, b in itertools.product(range(len(mats)), repeat=2):
        c = sl_express(linalg.commutator(mats[a], mats[b]))
        if c:
            structure[(a, b)] = c
    form = [[_trace(linalg.matmul(x, y)) for y in mats] for x in mats]
    return SimpleAlgebra(f"sl{m}", labels, structure, form, cartan, raising, lowering,
                         matrices=mats, rank=m - 1)


def _trace(a):
    return sum((a[i][i] for i in range(len(a))), Fraction(0))


def zero_algebra():
    return SimpleAlgebra("none", [], {}, [])


def cartan_of(alg):
    """The abelian Cartan subalgebra with the restricted form."""
    idx = list(alg.cartan)
    form = [[alg.form[a][b] for b in idx] for a in idx]
    mats = [alg.matrices[a] for a in idx] if alg.matrices else None
    return SimpleAlgebra(f"cartan:{alg.name}", [alg.labels[a] for a in idx], {}, form,
                         cartan=range(len(idx)), matrices=mats)


def algebra_by_name(name):
    if name == "none":
        return zero_algebra()
    if name.startswith("cartan:"):
        return cartan_of(algebra_by_name(name[len("cartan:"):]))
    if name.startswith("sl"):
        return sl(int(name[2:]))
    raise ValueError(f"unknown algebra {name!r}")


# --------------------------------------------------------------------------
# the toroidal algebra


class ToroidalAlgebra:
    """Full toroidal Lie algebra of rank n+1 over g with cocycle mu1*phi1 + mu2*phi2.

    Instances are immutable after construction; the symbol-level bracket
    cache only ever grows with deterministic values.
    """

    def __init__(self, n, g=None, mu1=0, mu2=0):
        if n < 0:
            raise ValueError("n must be nonnegative")
        if isinstance(g, str):
            g = algebra_by_name(g)
        self.n = n
        self.rank = n + 1
        self.g = g if g is not None else zero_algebra()
        self.mu1 = Fraction(mu1)
        self.mu2 = Fraction(mu2)
        self._cache = {}

    def __repr__(self):
        return (f"ToroidalAlgebra(n={self.n}, g={self.g.name!r}, "
                f"mu1={self.mu1}, mu2={self.mu2})")

    def with_cocycle(self, mu1, mu2):
        return ToroidalAlgebra(self.n, self.g, mu1, mu2)

    # element constructors
    def zero(self):
        return Element({}, self.rank)

    def element(self, terms):
        return Element(terms, self.rank)

    def _deg(self, k):
        k = tuple(k) if k is not None else (0,) * self.rank
        if len(k) != self.rank:
            raise RankMismatch(f"multi-index {k} has rank {len(k)}, expected {self.rank}")
        return k

    def G(self, x, k=None, c=1):
        return Element({GElem(self.g.index(x), self._deg(k)): c}, self.rank)

    def K(self, i, k=None, c=1):
        return Element({KClass(self._check_dir(i), self._deg(k)): c}, self.rank)

    def D(self, i, k=None, c=1):
        return Element({DElem(self._check_dir(i), self._deg(k)): c}, self.rank)

    def _check_dir(self, i):
        if not 0 <= i <= self.n:
            raise IndexError(f"direction {i} outside [0, {self.n}]")
        return i

    def normal_form(self, terms):
        return normal_form(terms, self.rank)

    # cocycles
    def cocycle_terms(self, which, i, r, j, s):
        """Raw (un-normalised) K-terms of phi1 or phi2 on (t^r d_i, t^s d_j)."""
        r, s = tuple(r), tuple(s)
        if which == 1:
            f = -s[i] * r[j]
        elif which == 2:
            f = r[i] * s[j]
        else:
            raise ValueError("cocycle index must be 1 or 2")
        deg = add(r, s)
        if not f:
            return []
        return [(p, deg, f * rp) for p, rp in enumerate(r) if rp]

    def cocycle_value(self, i, r, j, s):
        terms = []
        for which, mu in ((1, self.mu1), (2, self.mu2)):
            if mu:
                terms += [(p, k, mu * c) for p, k, c in self.cocycle_terms(which, i, r, j, s)]
        return normal_form(terms, self.rank)

    # bracket
    def bracket_symbols(self, s, t):
        key = (s, t)
        hit = self._cache.get(key)
        if hit is None:
            hit = self._bracket_symbols(s, t)
            self._cache[key] = hit
        return hit

    def _bracket_symbols(self, s, t):
        rank = self.rank
        ks, kt = s.kind, t.kind
        if ks == "K" and kt == "K":
            return Element({}, rank)
        if ks != "d" and kt == "d":
            return -self.bracket_symbols(t, s)
        if ks == "g" and kt == "g":
            deg = add(s.degree, t.degree)
            terms = {GElem(c, deg): v for c, v in self.g.bracket(s.index, t.index).items()}
            form = self.g.pairing(s.index, t.index)
            if form:
                for i, ki in enumerate(s.degree):
                    if ki:
                        terms[KClass(i, deg)] = terms.get(KClass(i, deg), 0) + form * ki
            return Element(terms, rank)
        if ks != "d":
            # g with K, or K with g: Z is central in L(g) + Z
            return Element({}, rank)
        i, r = s.index, s.degree
        deg = add(r, t.degree)
        sd = t.degree
        if kt == "g":
            return Element({GElem(t.index, deg): sd[i]}, rank)
        if kt == "K":
            j = t.index
            terms = {KClass(j, deg): Fraction(sd[i])}
            if i == j:
                for p, rp in enumerate(r):
                    if rp:
                        terms[KClass(p, deg)] = terms.get(KClass(p, deg), 0) + rp
            return Element(terms, rank)
        j = t.index
        terms = {}
        if sd[i]:
            terms[DElem(j, deg)] = Fraction(sd[i])
        if r[j]:
            terms[DElem(i, deg)] = terms.get(DElem(i, deg), 0) - r[j]
        return Element(terms, rank) + self.cocycle_value(i, r, j, sd)

    def bracket(self, a, b):
        if a.rank != self.rank or b.rank != self.rank:
            raise RankMismatch(f"operands of rank {a.rank}, {b.rank}; algebra rank {self.rank}")
        out = {}
        for s, cs in a.items():
            for t, ct in b.items():
                linalg.axpy(out, cs * ct, self.bracket_symbols(s, t)._terms)
        return Element(out, self.rank)

    # grading
    def graded_component_basis(self, degree):
        degree = self._deg(degree)
        syms = [GElem(x, degree) for x in range(self.g.dim)]
        syms += [DElem(i, degree) for i in range(self.rank)]
        j = eliminated_index(degree)
        syms += [KClass(i, degree) for i in range(self.rank) if i != j]
        return syms

    def window_basis(self, degrees):
        basis = []
        for d in degrees:
            basis.extend(self.graded_component_basis(d))
        return basis

    def adjoint_action_matrix(self, a, degrees):
        """Matrix of ad(a) on the span of the graded components over ``degrees``.

        Returns ``(basis, matrix)`` with ``matrix[row][col]`` the coefficient of
        ``basis[row]`` in ``[a, basis[col]]``.
        """
        if not a.is_homogeneous():
            raise ValueError("adjoint_action_matrix needs a homogeneous element")
        degrees = [self._deg(d) for d in degrees]
        basis = self.window_basis(degrees)
        pos = {s: i for i, s in enumerate(basis)}
        mat = linalg.zeros(len(basis))
        for col, s in enumerate(basis):
            img = self.bracket(a, Element({s: 1}, self.rank))
            for t, c in img.items():
                row = pos.get(t)
                if row is None:
                    raise WindowError(f"[a, {s}] has degree {t.degree} outside the window",
                                      t.degree)
                mat[row][col] = c
        return basis, mat

    def is_central(self, a, degrees):
        return all(not self.bracket(a, Element({s: 1}, self.rank))
                   for s in self.window_basis(degrees))
