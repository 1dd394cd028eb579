"""Distinguished subalgebras and automorphisms of tau.

Witt and Virasoro-type pieces are carved out of :class:`ToroidalAlgebra`
elements directly.  The twisted Heisenberg-Virasoro algebra has its own
small presentation (:class:`HVirElement`) since it lives outside tau.
"""

import enum
import itertools
from fractions import Fraction

from . import linalg
from .algebra_core import DElem, Element, GElem, KClass, box
from .combination import Combination


class NotGeneric(ValueError):
    pass


class SolenoidalConfig:
    """Direction gamma certified generic on the box ``[-radius, radius]^{n+1}``."""

    def __init__(self, gamma, radius):
        self.gamma = tuple(Fraction(x) for x in gamma)
        self.radius = int(radius)
        if self.radius < 1:
            raise ValueError("certification radius must be >= 1")
        for r in box(self.radius, len(self.gamma)):
            if any(r) and not self.dot(r):
                raise NotGeneric(f"gamma . {r} = 0")

    def dot(self, r):
        return sum((g * x for g, x in zip(self.gamma, r)), Fraction(0))

    def covers(self, r):
        return all(abs(x) <= self.radius for x in r)

    def __repr__(self):
        return f"SolenoidalConfig(gamma={[str(g) for g in self.gamma]}, radius={self.radius})"


def solenoidal_element(r, cfg, rank=None):
    """``t^r D(gamma) = sum_i gamma_i t^r d_i``."""
    r = tuple(r)
    if not cfg.covers(r):
        raise NotGeneric(f"degree {r} outside the certified window of radius {cfg.radius}")
    rank = rank or len(cfg.gamma)
    return Element({DElem(i, r): g for i, g in enumerate(cfg.gamma) if g}, rank)


def solenoidal_coefficient(element, cfg):
    """Map degree -> c when ``element = sum c_r t^r D(gamma)``; None otherwise."""
    if element.k_part() or any(s.kind == "g" for s in element.keys()):
        return None
    by_deg = {}
    for s, c in element.items():
        by_deg.setdefault(s.degree, {})[s.index] = c
    out = {}
    piv = next(i for i, g in enumerate(cfg.gamma) if g)
    for deg, coeffs in by_deg.items():
        lam = coeffs.get(piv, Fraction(0)) / cfg.gamma[piv]
        if any(coeffs.get(i, 0) != lam * g for i, g in enumerate(cfg.gamma)):
            return None
        out[deg] = lam
    return out


def is_solenoidal(element, cfg):
    return solenoidal_coefficient(element, cfg) is not None


def solenoidal_bracket_closes(alg, r, s, cfg):
    """Whether ``[t^r D, t^s D]`` stays in W(gamma) inside ``alg``."""
    b = alg.bracket(solenoidal_element(r, cfg, alg.rank), solenoidal_element(s, cfg, alg.rank))
    return is_solenoidal(b, cfg)


def is_witt(element):
    """True when the element lies in W_{n+1} (only d-terms)."""
    return all(s.kind == "d" for s in element.keys())


# --------------------------------------------------------------------------
# sl_{n+2} inside W_{n+1}


def sl_embedding(alg, i, j):
    """The element F_{i,j} of W_{n+1}, 0 <= i, j <= n+1."""
    n = alg.n
    top = n + 1
    if not (0 <= i <= top and 0 <= j <= top):
        raise IndexError(f"F_{{{i},{j}}} needs indices in [0, {top}]")
    rank = alg.rank

    def e(k, sign=1):
        return tuple(sign if p == k else 0 for p in range(rank))

    if i <= n and j <= n:
        deg = tuple(a - b for a, b in zip(e(i), e(j)))
        return Element({DElem(j, deg): 1}, rank)
    if i <= n and j == top:
        return Element({DElem(k, e(i)): -1 for k in range(rank)}, rank)
    if i == top and j <= n:
        return Element({DElem(j, e(j, -1)): 1}, rank)
    return Element({DElem(k, (0,) * rank): -1 for k in range(rank)}, rank)


def sl_embedding_basis(alg):
    """Standard basis of sl_{n+2}: off-diagonal F_ij, then F_ii - F_{i+1,i+1}."""
    top = alg.n + 1
    out = {}
    for i in range(top + 1):
        for j in range(top + 1):
            if i != j:
                out[(i, j)] = sl_embedding(alg, i, j)
    for i in range(top):
        out[("h", i)] = sl_embedding(alg, i, i) - sl_embedding(alg, i + 1, i + 1)
    return out


def check_sl_relations(alg):
    """Failures of ``[F_ab, F_cd] = d_bc F_ad - d_da F_cb`` (expects phi = 0)."""
    top = alg.n + 1
    idx = range(top + 1)
    F = {(i, j): sl_embedding(alg, i, j) for i in idx for j in idx}
    failures = []
    for a, b, c, d in itertools.product(idx, repeat=4):
        lhs = alg.bracket(F[(a, b)], F[(c, d)])
        rhs = alg.zero()
        if b == c:
            rhs = rhs + F[(a, d)]
        if d == a:
            rhs = rhs - F[(c, b)]
        if lhs != rhs:
            failures.append(((a, b, c, d), lhs, rhs))
    return failures


# --------------------------------------------------------------------------
# twisted Heisenberg-Virasoro


class HVirElement(Combination):
    """Element of HVir on keys ("x", i), ("I", j), ("CD", 0), ("CDI", 0), ("CI", 0)."""

    __slots__ = ()

    def __repr__(self):
        if not self._terms:
            return "0"
        return " + ".join(f"{c}*{k[0]}({k[1]})" if k[0] in ("x", "I") else f"{c}*{k[0]}"
                          for k, c in sorted(self._terms.items()))


CENTRAL_HVIR = ("CD", "CDI", "CI")


def hx(i, c=1):
    return HVirElement({("x", i): c})


def hI(j, c=1):
    return HVirElement({("I", j): c})


def hc(name, c=1):
    if name not in CENTRAL_HVIR:
        raise ValueError(f"unknown central symbol {name}")
    return HVirElement({(name, 0): c})


def _hvir_pair(a, b):
    (ka, i), (kb, j) = a, b
    if ka in CENTRAL_HVIR or kb in CENTRAL_HVIR:
        return {}
    if ka == "x" and kb == "x":
        out = {}
        if j - i:
            out[("x", i + j)] = Fraction(j - i)
        if i + j == 0 and i ** 3 - i:
            out[("CD", 0)] = Fraction(i ** 3 - i, 12)
        return out
    if ka == "x" and kb == "I":
        out = {}
        if j:
            out[("I", i + j)] = Fraction(j)
        if i + j == 0 and i * i + i:
            out[("CDI", 0)] = Fraction(i * i + i)
        return out
    if ka == "I" and kb == "x":
        return {k: -v for k, v in _hvir_pair(b, a).items()}
    if i + j == 0 and i:
        return {("CI", 0): Fraction(i)}
    return {}


def hvir_bracket(a, b):
    out = {}
    for ka, ca in a.items():
        for kb, cb in b.items():
            linalg.axpy(out, ca * cb, _hvir_pair(ka, kb))
    return HVirElement(out)


# --------------------------------------------------------------------------
# change of coordinates


class LatticeAutomorphism:
    """Unimodular integer matrix A with cached inverse B.

    Multi-indices are row vectors m; the induced lattice map is
    ``m -> m A^t``, i.e. ``A`` acting on column vectors.
    """

    def __init__(self, matrix):
        self.A = tuple(tuple(int(x) for x in row) for row in matrix)
        n = len(self.A)
        if any(len(row) != n for row in self.A):
            raise ValueError("automorphism matrix must be square")
        det = linalg.determinant(self.A)
        if det not in (1, -1):
            raise ValueError(f"matrix is not unimodular (det = {det})")
        self.det = int(det)
        self.B = tuple(tuple(row) for row in linalg.integer_inverse(self.A))

    @property
    def size(self):
        return len(self.A)

    def __eq__(self, other):
        return isinstance(other, LatticeAutomorphism) and self.A == other.A

    def __hash__(self):
        return hash(self.A)

    def __repr__(self):
        return f"LatticeAutomorphism({[list(r) for r in self.A]})"

    @classmethod
    def identity(cls, size):
        return cls([[int(i == j) for j in range(size)] for i in range(size)])

    @classmethod
    def permutation(cls, perm):
        """Matrix sending e_j to e_{perm[j]}."""
        size = len(perm)
        return cls([[int(perm[j] == i) for j in range(size)] for i in range(size)])

    @classmethod
    def shear(cls, size, i, j, c=1):
        """Identity plus c at entry (i, j)."""
        return cls([[int(p == q) + (c if (p, q) == (i, j) else 0) for q in range(size)]
                    for p in range(size)])

    def inverse(self):
        return LatticeAutomorphism(self.B)

    def compose(self, other):
        """Matrix product ``self.A @ other.A``; ``T_{AB} = T_A o T_B``."""
        n = self.size
        return LatticeAutomorphism([[sum(self.A[i][k] * other.A[k][j] for k in range(n))
                                     for j in range(n)] for i in range(n)])

    def map_degree(self, m):
        """``m A^t`` for a row vector m."""
        return tuple(sum(self.A[p][q] * m[q] for q in range(self.size)) for p in range(self.size))

    def map_weight(self, mu):
        """Weights of a module twisted by T_A: ``mu -> mu B^t``."""
        return tuple(sum(self.B[p][q] * mu[q] for q in range(self.size))
                     for p in range(self.size))


def coordinate_change(a, A):
    """Apply T_A to an element of tau."""
    if a.rank != A.size:
        raise ValueError(f"automorphism of size {A.size} on rank-{a.rank} element")
    out = {}
    n = A.size
    for s, c in a.items():
        deg = A.map_degree(s.degree)
        if s.kind == "g":
            key = GElem(s.index, deg)
            out[key] = out.get(key, 0) + c
        elif s.kind == "K":
            for p in range(n):
                if A.A[p][s.index]:
                    key = KClass(p, deg)
                    out[key] = out.get(key, 0) + c * A.A[p][s.index]
        else:
            for p in range(n):
                if A.B[s.index][p]:
                    key = DElem(p, deg)
                    out[key] = out.get(key, 0) + c * A.B[s.index][p]
    return Element(out, a.rank)


def transported_bracket(alg, A):
    """Bracket of the algebra obtained by transporting ``alg`` along T_A."""
    inv = A.inverse()

    def bracket(a, b):
        return coordinate_change(alg.bracket(coordinate_change(a, inv),
                                             coordinate_change(b, inv)), A)

    return bracket


# --------------------------------------------------------------------------
# triangular decomposition


class TriangularPart(enum.Enum):
    MINUS = "tau-"
    ZERO = "tau0"
    PLUS = "tau+"


def triangular_part_of(symbol):
    """Strict classification by the t_0-degree of the symbol."""
    d0 = symbol.degree[0]
    if d0 > 0:
        return TriangularPart.PLUS
    if d0 < 0:
        return TriangularPart.MINUS
    return TriangularPart.ZERO


def triangular_part_of_element(element):
    parts = {triangular_part_of(s) for s in element.keys()}
    return parts.pop() if len(parts) == 1 else None
