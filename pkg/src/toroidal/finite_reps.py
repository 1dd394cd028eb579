"""Finite-dimensional irreducible representations seeding the tensor modules.

A gl_m representation stores one matrix per elementary matrix E_{j,i},
keyed ``(j, i)``.  A representation of a :class:`SimpleAlgebra` stores one
matrix per basis index of that algebra.
"""

import itertools
import json
from collections import deque
from fractions import Fraction

from . import linalg
from .algebra_core import algebra_by_name, sl, sl_express


class Irrep:
    """Exact matrices of a finite-dimensional representation.

    ``kind`` is ``"gl"`` (with ``m``) or ``"g"`` (with ``algebra``).
    ``label`` is the highest weight in fundamental-weight coordinates of the
    semisimple part (None when unknown); ``c`` is the scalar by which the
    identity matrix acts in the gl case.
    """

    def __init__(self, kind, dim, matrices, label=None, c=None, m=None, algebra=None):
        if kind not in ("gl", "g"):
            raise ValueError(f"unknown representation kind {kind!r}")
        self.kind = kind
        self.dim = dim
        self.matrices = matrices
        self.label = tuple(label) if label is not None else None
        self.c = Fraction(c) if c is not None else None
        self.m = m
        self.algebra = algebra

    def __repr__(self):
        what = f"gl{self.m}" if self.kind == "gl" else self.algebra.name
        return f"Irrep({what}, dim={self.dim}, label={self.label}, c={self.c})"

    def generators(self):
        if self.kind == "gl":
            return [(j, i) for j in range(self.m) for i in range(self.m)]
        return list(range(self.algebra.dim))

    def matrix(self, key):
        return self.matrices[key]

    def apply(self, key, vec):
        """Action of a generator on a sparse vector (dict index -> coeff)."""
        mat = self.matrices[key]
        out = {}
        for j, c in vec.items():
            for i in range(self.dim):
                x = mat[i][j]
                if x:
                    s = out.get(i, 0) + c * x
                    if s:
                        out[i] = s
                    else:
                        out.pop(i)
        return out

    def column(self, key, j):
        """Image of basis vector j as a sparse dict."""
        mat = self.matrices[key]
        return {i: mat[i][j] for i in range(self.dim) if mat[i][j]}

    # invariants ----------------------------------------------------------

    def relation_failures(self):
        out = []
        if self.kind == "gl":
            keys = self.generators()
            for (i, j), (k, l) in itertools.product(keys, repeat=2):
                lhs = linalg.commutator(self.matrices[(i, j)], self.matrices[(k, l)])
                rhs = linalg.zeros(self.dim)
                if j == k:
                    rhs = linalg.matadd(rhs, self.matrices[(i, l)])
                if l == i:
                    rhs = linalg.matsub(rhs, self.matrices[(k, j)])
                if lhs != rhs:
                    out.append(((i, j), (k, l)))
        else:
            alg = self.algebra
            for a, b in itertools.product(range(alg.dim), repeat=2):
                lhs = linalg.commutator(self.matrices[a], self.matrices[b])
                rhs = linalg.zeros(self.dim)
                for c, v in alg.bracket(a, b).items():
                    rhs = linalg.matadd(rhs, linalg.matscale(self.matrices[c], v))
                if lhs != rhs:
                    out.append((a, b))
        return out

    def identity_scalar(self):
        """Scalar by which sum_i E_ii acts (gl case), None if not scalar."""
        total = linalg.zeros(self.dim)
        for i in range(self.m):
            total = linalg.matadd(total, self.matrices[(i, i)])
        c = total[0][0] if self.dim else Fraction(0)
        if total != linalg.matscale(linalg.identity(self.dim), c):
            return None
        return c

    def raising_keys(self):
        if self.kind == "gl":
            return [(i, j) for i in range(self.m) for j in range(self.m) if i < j]
        return list(self.algebra.raising)

    def lowering_keys(self):
        if self.kind == "gl":
            return [(i, j) for i in range(self.m) for j in range(self.m) if i > j]
        return list(self.algebra.lowering)

    def highest_vector_ok(self, index=0):
        return all(not self.column(k, index) for k in self.raising_keys())

    def commutant_dimension(self):
        """Dimension of the space of matrices commuting with every generator."""
        d = self.dim
        ech = linalg.Echelon()
        for key in self.generators():
            mat = self.matrices[key]
            for i in range(d):
                for j in range(d):
                    # (X M - M X)[i][j] in the unknowns X[p][q] -> p*d + q
                    row = {}
                    for k in range(d):
                        if mat[k][j]:
                            linalg.axpy(row, mat[k][j], {i * d + k: 1})
                        if mat[i][k]:
                            linalg.axpy(row, -mat[i][k], {k * d + j: 1})
                    if row:
                        ech.add(row)
        return d * d - ech.rank

    def is_irreducible(self):
        return self.commutant_dimension() == 1

    def __eq__(self, other):
        return (isinstance(other, Irrep) and self.kind == other.kind and self.dim == other.dim
                and self.m == other.m and self.matrices == other.matrices)

    __hash__ = None

    # serialisation -------------------------------------------------------

    def to_json(self):
        def enc(mat):
            return [[str(x) for x in row] for row in mat]

        if self.kind == "gl":
            mats = {f"{j},{i}": enc(self.matrices[(j, i)]) for j, i in self.generators()}
            head = {"kind": "gl", "m": self.m}
        else:
            mats = {self.algebra.labels[a]: enc(self.matrices[a]) for a in self.generators()}
            head = {"kind": "g", "algebra": self.algebra.name}
        head.update({
            "dim": self.dim,
            "label": list(self.label) if self.label is not None else None,
            "c": str(self.c) if self.c is not None else None,
            "matrices": mats,
        })
        return head

    @classmethod
    def from_json(cls, data, validate=True):
        if isinstance(data, str):
            data = json.loads(data)

        def dec(mat):
            return [[Fraction(x) for x in row] for row in mat]

        dim = int(data["dim"])
        if data["kind"] == "gl":
            m = int(data["m"])
            mats = {}
            for key, mat in data["matrices"].items():
                j, i = (int(x) for x in key.split(","))
                mats[(j, i)] = dec(mat)
            for j, i in itertools.product(range(m), repeat=2):
                mats.setdefault((j, i), linalg.zeros(dim))
            rep = cls("gl", dim, mats, data.get("label"), data.get("c"), m=m)
        else:
            alg = algebra_by_name(data["algebra"])
            mats = {alg.labels.index(k): dec(v) for k, v in data["matrices"].items()}
            for a in range(alg.dim):
                mats.setdefault(a, linalg.zeros(dim))
            rep = cls("g", dim, mats, data.get("label"), algebra=alg)
        if any(len(mat) != dim or any(len(row) != dim for row in mat) for mat in mats.values()):
            raise ValueError("matrix shape does not match the declared dimension")
        if validate:
            rep.validate()
        return rep

    def validate(self):
        bad = self.relation_failures()
        if bad:
            raise ValueError(f"commutation relations fail on {bad[:3]}")
        if self.kind == "gl":
            c = self.identity_scalar()
            if c is None:
                raise ValueError("identity matrix does not act by a scalar")
            if self.c is not None and c != self.c:
                raise ValueError(f"identity acts by {c}, label says {self.c}")
            self.c = c
        if self.dim and not self.is_irreducible():
            raise ValueError("representation is not irreducible")


# ---------------------------------------------------------------------------
# constructions


def standard_rep(m):
    """Defining representation of gl_m: E_{j,i} e_k = delta_{ik} e_j."""
    if m < 1:
        raise ValueError("m must be >= 1")
    mats = {}
    for j in range(m):
        for i in range(m):
            mat = linalg.zeros(m)
            mat[j][i] = Fraction(1)
            mats[(j, i)] = mat
    return Irrep("gl", m, mats, label=fundamental_label(m, 1), c=1, m=m)


def fundamental_label(m, k):
    """omega_k for sl_m in fundamental coordinates (omega_0 = omega_m = 0)."""
    return tuple(int(i == k - 1) for i in range(m - 1))


def _wedge_action(mat, subsets, index):
    """Derivation action of ``mat`` on the k-th exterior power basis."""
    d = len(subsets)
    out = linalg.zeros(d)
    for col, S in enumerate(subsets):
        for pos, s in enumerate(S):
            for t in range(len(mat)):
                x = mat[t][s]
                if not x or (t != s and t in S):
                    continue
                new = list(S)
                new[pos] = t
                # sort with sign
                sign = 1
                for a in range(len(new)):
                    for b in range(a + 1, len(new)):
                        if new[a] > new[b]:
                            sign = -sign
                out[index[tuple(sorted(new))]][col] += sign * x
    return out


def exterior_power(rep, k):
    """k-th exterior power, basis = increasing index tuples in lexicographic order."""
    if not 0 <= k <= rep.dim:
        raise ValueError(f"exterior degree {k} outside [0, {rep.dim}]")
    subsets = list(itertools.combinations(range(rep.dim), k))
    index = {S: i for i, S in enumerate(subsets)}
    mats = {key: _wedge_action(rep.matrices[key], subsets, index) for key in rep.generators()}
    label, c = None, None
    if rep.kind == "gl" and rep == standard_rep(rep.m):
        label, c = fundamental_label(rep.m, k), Fraction(k)
    elif rep.kind == "gl" and rep.c is not None:
        c = rep.c * k
    out = Irrep(rep.kind, len(subsets), mats, label, c, m=rep.m, algebra=rep.algebra)
    out.subsets = subsets
    return out


def wedge_basis(dim, k):
    return list(itertools.combinations(range(dim), k))


def restrict_to_sl(rep, alg=None):
    """View a gl_m representation as a representation of sl_m."""
    if rep.kind != "gl":
        raise ValueError("restrict_to_sl needs a gl representation")
    alg = alg or sl(rep.m)
    mats = {}
    for a in range(alg.dim):
        total = linalg.zeros(rep.dim)
        X = alg.matrices[a]
        for i in range(rep.m):
            for j in range(rep.m):
                if X[i][j]:
                    total = linalg.matadd(total, linalg.matscale(rep.matrices[(i, j)], X[i][j]))
        mats[a] = total
    return Irrep("g", rep.dim, mats, rep.label, algebra=alg)


def trace_twist(rep, c):
    """gl_m representation V(c, lambda) from an sl_m representation V(lambda).

    E acts by rho(E - tr(E)/m Id) + c tr(E)/m Id, so the identity acts by c.
    """
    if rep.kind != "g" or not rep.algebra.name.startswith("sl"):
        raise ValueError("trace_twist needs an sl_m representation")
    alg = rep.algebra
    m = len(alg.matrices[0])
    c = Fraction(c)
    mats = {}
    for j in range(m):
        for i in range(m):
            E = linalg.zeros(m)
            E[j][i] = Fraction(1)
            if i == j:
                E = linalg.matsub(E, linalg.matscale(linalg.identity(m), Fraction(1, m)))
            total = linalg.zeros(rep.dim)
            for a, v in sl_express(E).items():
                total = linalg.matadd(total, linalg.matscale(rep.matrices[a], v))
            if i == j:
                total = linalg.matadd(total, linalg.matscale(linalg.identity(rep.dim), c / m))
            mats[(j, i)] = total
    return Irrep("gl", rep.dim, mats, rep.label, c, m=m)


def trivial_rep(alg):
    """One-dimensional trivial representation of g (all generators act by 0)."""
    if isinstance(alg, str):
        alg = algebra_by_name(alg)
    return Irrep("g", 1, {a: linalg.zeros(1) for a in range(alg.dim)},
                 (0,) * alg.rank, algebra=alg)


def trivial_gl(m, c=0):
    """One-dimensional gl_m module V(c, 0): E_{j,i} acts by delta_{ij} c/m."""
    mats = {}
    for j in range(m):
        for i in range(m):
            mats[(j, i)] = [[Fraction(c, m) if i == j else Fraction(0)]]
    return Irrep("gl", 1, mats, (0,) * (m - 1), c, m=m)


def character_rep(alg, values):
    """One-dimensional module of an abelian algebra: basis element a acts by values[a]."""
    if alg.structure:
        raise ValueError("character_rep needs an abelian algebra")
    if len(values) != alg.dim:
        raise ValueError("one value per basis element required")
    return Irrep("g", 1, {a: [[Fraction(v)]] for a, v in enumerate(values)},
                 tuple(Fraction(v) for v in values), algebra=alg)


def weyl_dimension(label):
    """Weyl dimension formula for the sl_m highest weight ``label`` (length m-1)."""
    m = len(label) + 1
    num, den = 1, 1
    for i in range(m):
        for j in range(i + 1, m):
            num *= sum(label[k] + 1 for k in range(i, j))
            den *= j - i
    return num // den


class _TensorProduct:
    """Sparse vectors on a tensor product of g-representations."""

    def __init__(self, factors):
        self.factors = factors

    def apply(self, key, vec):
        out = {}
        for idx, c in vec.items():
            for pos, rep in enumerate(self.factors):
                for i, x in rep.column(key, idx[pos]).items():
                    new = idx[:pos] + (i,) + idx[pos + 1:]
                    s = out.get(new, 0) + c * x
                    if s:
                        out[new] = s
                    else:
                        out.pop(new)
        return out


def highest_weight_irrep(label, algebra):
    """Irreducible V(label) as the cyclic lowering span of a product of highest vectors.

    The ambient space is the tensor product of label[k] copies of the
    (k+1)-th fundamental representation.  Basis vector 0 is the highest
    weight vector.
    """
    if isinstance(algebra, str):
        algebra = algebra_by_name(algebra)
    label = tuple(int(x) for x in label)
    if any(x < 0 for x in label):
        raise ValueError(f"weight {label} is not dominant")
    if len(label) != algebra.rank:
        raise ValueError(f"weight {label} has {len(label)} entries, algebra rank {algebra.rank}")
    if not any(label):
        return trivial_rep(algebra)
    if not algebra.name.startswith("sl"):
        raise ValueError(f"highest weight construction not available for {algebra.name}")
    m = algebra.rank + 1
    std = standard_rep(m)
    factors = []
    for k, mult in enumerate(label, start=1):
        fund = restrict_to_sl(exterior_power(std, k), algebra)
        factors.extend([fund] * mult)
    space = _TensorProduct(factors)
    top = {(0,) * len(factors): Fraction(1)}
    ech = linalg.Echelon()
    basis = []
    ech.add(top)
    basis.append(top)
    queue = deque([top])
    while queue:
        v = queue.popleft()
        for key in algebra.lowering:
            w = space.apply(key, v)
            if w and ech.add(w):
                basis.append(w)
                queue.append(w)
    d = len(basis)
    mats = {}
    for a in range(algebra.dim):
        mat = linalg.zeros(d)
        for j, b in enumerate(basis):
            for i, x in ech.coordinates(space.apply(a, b)).items():
                mat[i][j] = x
        mats[a] = mat
    return Irrep("g", d, mats, label, algebra=algebra)


def gl_irrep(label, c):
    """V(c, label) for gl_m with m = len(label) + 1."""
    m = len(label) + 1
    if m == 1:
        return trivial_gl(1, c)
    return trace_twist(highest_weight_irrep(label, sl(m)), c)
