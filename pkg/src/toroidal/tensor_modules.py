"""Tensor-field (jet) modules, the tau_0-modules of highest weight type, and
the de Rham complex.

A vector of ``V1 (x) V2 (x) C[t^{+-1}]`` is a :class:`ModuleVector` keyed by
``(i1, i2, r)``: basis indices of V1 and V2 and a lattice point r.
"""

import json
from dataclasses import dataclass, field
from fractions import Fraction

from . import linalg
from .algebra_core import add
from .combination import Combination
from .finite_reps import (exterior_power, fundamental_label, standard_rep,
                          trivial_gl, trivial_rep, wedge_basis)

JET = "jet"
TAU0 = "tau0"


class FlavorMismatch(ValueError):
    pass


class ModuleVector(Combination):
    __slots__ = ()

    def __repr__(self):
        if not self._terms:
            return "0"
        return " + ".join(f"{c}*v{i1}(x)w{i2}(x)t^{list(r)}"
                          for (i1, i2, r), c in sorted(self._terms.items()))

    def lattice_points(self):
        return {r for (_, _, r) in self._terms}


def vec(i1, i2, r, c=1):
    return ModuleVector({(i1, i2, tuple(r)): c})


@dataclass(frozen=True)
class NotHomogeneous:
    """Witness that a vector is not a d-eigenvector: ``d_direction v`` is not a multiple of v."""
    direction: int
    image: ModuleVector


class TensorModule:
    """V1 (x) V2 (x) C[lattice] with the jet (full tau) or tau_0 action.

    ``alg`` is the acting :class:`ToroidalAlgebra` of rank n+1.  For the jet
    flavour the lattice is Z^{n+1} and V2 is a gl_{n+1}-module; every K class
    acts by zero.  For the tau_0 flavour the lattice is Z^n (coordinates
    t_1..t_n), V2 is a gl_n-module, t^m K_0 acts by ``a`` and t^m d_0 by ``b``.
    """

    def __init__(self, alg, V1=None, V2=None, alpha=None, flavor=JET, a=0, b=0, name=None):
        if flavor not in (JET, TAU0):
            raise ValueError(f"unknown flavor {flavor!r}")
        self.alg = alg
        self.flavor = flavor
        self.lattice_rank = alg.rank if flavor == JET else alg.n
        self.V1 = V1 if V1 is not None else trivial_rep(alg.g)
        self.V2 = V2 if V2 is not None else trivial_gl(max(self.lattice_rank, 1))
        if self.V1.kind != "g" or self.V1.algebra.dim != alg.g.dim:
            raise ValueError("V1 must be a representation of g")
        if self.V2.kind != "gl" or self.V2.m != max(self.lattice_rank, 1):
            raise ValueError(f"V2 must be a gl_{self.lattice_rank}-module")
        alpha = alpha if alpha is not None else (0,) * self.lattice_rank
        if len(alpha) != self.lattice_rank:
            raise ValueError(f"alpha needs {self.lattice_rank} entries")
        self.alpha = tuple(Fraction(x) for x in alpha)
        self.a = Fraction(a)
        self.b = Fraction(b)
        if flavor == JET and (self.a or self.b):
            raise ValueError("(a, b) only apply to the tau0 flavor")
        self.name = name

    def __repr__(self):
        extra = f", a={self.a}, b={self.b}" if self.flavor == TAU0 else ""
        return (f"TensorModule({self.flavor}, dimV1={self.V1.dim}, dimV2={self.V2.dim}, "
                f"alpha={[str(x) for x in self.alpha]}{extra})")

    @property
    def fiber_dim(self):
        return self.V1.dim * self.V2.dim

    @property
    def weight_rank(self):
        return self.alg.rank

    def basis(self, window):
        """Basis keys over the lattice points of ``window``."""
        return [(i1, i2, tuple(r)) for r in window
                for i1 in range(self.V1.dim) for i2 in range(self.V2.dim)]

    def basis_vectors(self, window):
        return [ModuleVector({k: 1}) for k in self.basis(window)]

    # action --------------------------------------------------------------

    def _shift(self, s):
        if self.flavor == JET:
            return s.degree
        if s.degree[0]:
            raise FlavorMismatch(f"{s} is not in tau_0 (t_0-degree {s.degree[0]})")
        return s.degree[1:]

    def act_symbol(self, s, key, coeff, out):
        i1, i2, r = key
        m = self._shift(s)
        rm = add(r, m)
        if s.kind == "g":
            for i, x in self.V1.column(s.index, i1).items():
                linalg.axpy(out, coeff * x, {(i, i2, rm): 1})
            return
        if s.kind == "K":
            if self.flavor == TAU0 and s.index == 0 and self.a:
                linalg.axpy(out, coeff * self.a, {(i1, i2, rm): 1})
            return
        i = s.index
        if self.flavor == TAU0:
            if i == 0:
                if self.b:
                    linalg.axpy(out, coeff * self.b, {(i1, i2, rm): 1})
                return
            i -= 1
        lam = self.alpha[i] + r[i]
        if lam:
            linalg.axpy(out, coeff * lam, {(i1, i2, rm): 1})
        for j, mj in enumerate(m):
            if mj:
                for p, x in self.V2.column((j, i), i2).items():
                    linalg.axpy(out, coeff * mj * x, {(i1, p, rm): 1})

    def _image(self, s, key):
        cache = self.__dict__.setdefault("_images", {})
        hit = cache.get((s, key))
        if hit is None:
            out = {}
            self.act_symbol(s, key, Fraction(1), out)
            hit = cache[(s, key)] = out
        return hit

    def act(self, element, v):
        if element.rank != self.alg.rank:
            raise FlavorMismatch(f"rank-{element.rank} element on a rank-{self.alg.rank} module")
        out = {}
        for s, cs in element.items():
            for key, cv in v.items():
                linalg.axpy(out, cs * cv, self._image(s, key))
        return ModuleVector.from_clean(out)

    def acting_symbols(self, degrees):
        """Basis symbols of the acting algebra over ``degrees`` (tau_0 filtered)."""
        syms = self.alg.window_basis(degrees)
        if self.flavor == TAU0:
            syms = [s for s in syms if s.degree[0] == 0]
        return syms

    # weights -------------------------------------------------------------

    def weight_of_key(self, key):
        r = key[2]
        lattice = tuple(a + x for a, x in zip(self.alpha, r))
        if self.flavor == TAU0:
            return (self.b,) + lattice
        return lattice

    def weight_of(self, v):
        """Common eigenvalues of d_0..d_n on v, or a :class:`NotHomogeneous` witness."""
        if not v:
            return None
        rank = self.alg.rank
        weight = []
        for i in range(rank):
            img = self.act(self.alg.D(i), v)
            key, c = next(iter(v.items()))
            lam = img.coeff(key) / c
            if img != v * lam:
                return NotHomogeneous(i, img)
            weight.append(lam)
        return tuple(weight)

    def weight_space_dims(self, window):
        table = WeightTable(self.weight_rank, value_name="dim")
        for r in window:
            keys = self.basis([r])
            table.set(self.weight_of_key(keys[0]) if keys else None, len(keys))
        table.meta["module"] = repr(self)
        return table

    # serialisation helpers ------------------------------------------------

    def config_json(self):
        return {
            "flavor": self.flavor,
            "alpha": [str(x) for x in self.alpha],
            "a": str(self.a),
            "b": str(self.b),
            "V1": self.V1.to_json(),
            "V2": self.V2.to_json(),
        }


class TrivialModule:
    """The one-dimensional trivial module (every element acts by zero)."""

    weight_rank = None

    def __init__(self, rank):
        self.weight_rank = rank

    def weight_space_dims(self, window=None):
        table = WeightTable(self.weight_rank, value_name="dim")
        table.set((Fraction(0),) * self.weight_rank, 1)
        table.meta["module"] = "trivial"
        return table


# --------------------------------------------------------------------------
# catalogue helpers


def jet_module(alg, V1=None, V2=None, alpha=None):
    return TensorModule(alg, V1, V2, alpha, JET)


def tau0_module(alg, V1=None, V2=None, alpha=None, a=0, b=0):
    return TensorModule(alg, V1, V2, alpha, TAU0, a, b)


# --------------------------------------------------------------------------
# de Rham complex


@dataclass(frozen=True)
class DeRhamConfig:
    rank: int
    alpha: tuple
    degree: int

    def __post_init__(self):
        object.__setattr__(self, "alpha", tuple(Fraction(x) for x in self.alpha))
        if len(self.alpha) != self.rank:
            raise ValueError("alpha must have one entry per lattice direction")
        if not 0 <= self.degree <= self.rank:
            raise ValueError(f"form degree {self.degree} outside [0, {self.rank}]")

    def next(self):
        return DeRhamConfig(self.rank, self.alpha, self.degree + 1)


def derham_module(alg, alpha, k):
    """V(k, 0, omega_k, alpha): differential k-forms, V2 = k-th exterior power of W."""
    V2 = exterior_power(standard_rep(alg.rank), k)
    return TensorModule(alg, trivial_rep(alg.g), V2, alpha, JET, name=f"forms{k}")


def _wedge_insert(i, S):
    """Sign and index tuple of e_i ^ e_S, or (0, None) when i is in S."""
    if i in S:
        return 0, None
    before = sum(1 for s in S if s < i)
    return (-1) ** before, tuple(sorted(S + (i,)))


def derham_d(v, cfg):
    """d(w (x) t^r) = sum_i (alpha_i + r_i) (e_i ^ w) (x) t^r."""
    if cfg.degree >= cfg.rank:
        raise ValueError("d is not defined on top-degree forms")
    src = wedge_basis(cfg.rank, cfg.degree)
    dst = {S: j for j, S in enumerate(wedge_basis(cfg.rank, cfg.degree + 1))}
    out = {}
    for (i1, i2, r), c in v.items():
        S = src[i2]
        for i in range(cfg.rank):
            lam = cfg.alpha[i] + r[i]
            if not lam:
                continue
            sign, T = _wedge_insert(i, S)
            if sign:
                linalg.axpy(out, c * lam * sign, {(i1, dst[T], r): 1})
    return ModuleVector(out)


def derham_matrix(cfg, r):
    """Matrix of d_k at lattice point r (rows: (k+1)-forms, columns: k-forms)."""
    src = wedge_basis(cfg.rank, cfg.degree)
    nrows = len(wedge_basis(cfg.rank, cfg.degree + 1))
    mat = linalg.zeros(nrows, len(src))
    for j in range(len(src)):
        for (_, i2, _), c in derham_d(vec(0, j, r), cfg).items():
            mat[i2][j] = c
    return mat


def derham_rank(cfg, r):
    if cfg.degree < 0 or cfg.degree >= cfg.rank:
        return 0
    return linalg.matrix_rank(derham_matrix(cfg, r))


def derham_image_dims(cfg, window):
    """Weight table of dV(k, 0, omega_k, alpha): rank of d_k at each weight."""
    table = WeightTable(cfg.rank, value_name="rank")
    for r in window:
        table.set(tuple(a + x for a, x in zip(cfg.alpha, r)), derham_rank(cfg, r))
    table.meta["module"] = f"dV({cfg.degree},0,omega_{cfg.degree},alpha)"
    return table


# --------------------------------------------------------------------------
# catalogue of irreducible quotients


@dataclass
class CatalogueEntry:
    verdict: str
    k: int = None
    verbatim_irreducible: bool = None
    needs_review: bool = False
    notes: list = field(default_factory=list)

    def to_json(self):
        return {"verdict": self.verdict, "k": self.k,
                "verbatim_irreducible": self.verbatim_irreducible,
                "needs_review": self.needs_review, "notes": self.notes}


IRREDUCIBLE = "irreducible over tau-hat"
QUOTIENT_DV = "quotient dV(k,0,omega_k,alpha)"
TRIVIAL_QUOTIENT = "trivial 1-dimensional quotient"


def _is_integral(alpha):
    return all(Fraction(a).denominator == 1 for a in alpha)


def irreducible_quotient_catalogue(n, c, lambda1, lambda2, alpha):
    """Classify V(c, lambda1, lambda2, alpha) over tau-hat = W_{n+1} + L(g).

    ``lambda2`` has n entries (sl_{n+1} fundamental coordinates).  The
    condition list for irreducibility is evaluated both literally (as a
    disjunction) and in the reading that agrees with the de Rham structure;
    disagreements are flagged for review.
    """
    N = n + 1
    c = Fraction(c)
    lambda1 = tuple(lambda1)
    lambda2 = tuple(lambda2)
    alpha = tuple(Fraction(a) for a in alpha)
    if len(lambda2) != n or len(alpha) != N:
        raise ValueError("lambda2 needs n entries and alpha n+1 entries")
    integral = _is_integral(alpha)
    l2zero = not any(lambda2)
    exceptional = l2zero and c in (0, N) and integral
    fundamental = [k for k in range(1, N) if lambda2 == fundamental_label(N, k) and c == k]
    cond1 = not exceptional
    cond2 = any(lambda1)
    cond3 = not fundamental
    verbatim = cond1 or cond2 or cond3

    if cond2:
        entry = CatalogueEntry(IRREDUCIBLE)
    elif fundamental:
        entry = CatalogueEntry(QUOTIENT_DV, k=fundamental[0])
    elif l2zero and c == 0:
        if integral:
            entry = CatalogueEntry(QUOTIENT_DV, k=0)
        else:
            entry = CatalogueEntry(IRREDUCIBLE, k=0, notes=["d_0 injective: dV(0) = V(0)"])
    elif l2zero and c == N:
        if integral:
            entry = CatalogueEntry(TRIVIAL_QUOTIENT, k=N)
        else:
            entry = CatalogueEntry(IRREDUCIBLE, k=N)
    else:
        entry = CatalogueEntry(IRREDUCIBLE)
    entry.verbatim_irreducible = verbatim
    entry.needs_review = verbatim != (entry.verdict == IRREDUCIBLE)
    return entry


# --------------------------------------------------------------------------
# weight tables


def _fmt(x):
    return str(Fraction(x))


class WeightTable:
    """Map exact weight -> integer value, plus optional extra columns.

    Rows are emitted in lexicographic weight order so output is byte-stable.
    """

    def __init__(self, rank, value_name="dim"):
        self.rank = rank
        self.value_name = value_name
        self.rows = {}
        self.columns = {}
        self.meta = {}

    def set(self, weight, value, **extra):
        weight = tuple(Fraction(x) for x in weight)
        self.rows[weight] = value
        for k, v in extra.items():
            self.columns.setdefault(k, {})[weight] = v

    def get(self, weight, default=None):
        return self.rows.get(tuple(Fraction(x) for x in weight), default)

    def __getitem__(self, weight):
        return self.rows[tuple(Fraction(x) for x in weight)]

    def __contains__(self, weight):
        return tuple(Fraction(x) for x in weight) in self.rows

    def __len__(self):
        return len(self.rows)

    def weights(self):
        return sorted(self.rows)

    def support(self):
        return [w for w in self.weights() if self.rows[w]]

    def values(self):
        return [self.rows[w] for w in self.weights()]

    def to_tsv(self):
        cols = sorted(self.columns)
        lines = ["\t".join(["weight", self.value_name] + cols)]
        for w in self.weights():
            cells = ["(" + ",".join(_fmt(x) for x in w) + ")", str(self.rows[w])]
            cells += [str(self.columns[c].get(w, "")) for c in cols]
            lines.append("\t".join(cells))
        return "\n".join(lines) + "\n"

    def to_json(self):
        cols = sorted(self.columns)
        rows = []
        for w in self.weights():
            row = {"weight": [_fmt(x) for x in w], self.value_name: self.rows[w]}
            for c in cols:
                if w in self.columns[c]:
                    row[c] = self.columns[c][w]
            rows.append(row)
        return {"value": self.value_name, "meta": self.meta, "rows": rows}

    def dumps(self, fmt="json"):
        if fmt == "tsv":
            return self.to_tsv()
        return json.dumps(self.to_json(), sort_keys=True, indent=1) + "\n"

    @classmethod
    def from_json(cls, data):
        if isinstance(data, str):
            data = json.loads(data)
        rows = data["rows"]
        rank = len(rows[0]["weight"]) if rows else 0
        table = cls(rank, data.get("value", "dim"))
        table.meta = dict(data.get("meta", {}))
        for row in rows:
            extra = {k: v for k, v in row.items() if k not in ("weight", table.value_name)}
            table.set([Fraction(x) for x in row["weight"]], row[table.value_name], **extra)
        return table
