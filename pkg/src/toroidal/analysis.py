"""Diagnostics for cuspidal modules: differentiator operators, the A-cover
of a module and weight-support summaries.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

from . import linalg
from .algebra_core import DElem, Element, GElem, WindowError, add
from .tensor_modules import ModuleVector, WeightTable


def default_gamma(rank, radius):
    """Direction (1, 1/q, 1/q^2, ...) with q = 2*radius + 1.

    gamma . r = 0 with every |r_i| <= radius forces r = 0 (balanced base-q
    digits), so the direction is generic on the box of that radius.
    """
    q = 2 * radius + 1
    return tuple(Fraction(1, q ** i) for i in range(rank))


def default_directions(rank):
    """e_0, ..., e_n and (1, ..., 1)."""
    dirs = [tuple(int(i == j) for j in range(rank)) for i in range(rank)]
    dirs.append((1,) * rank)
    return dirs


# --------------------------------------------------------------------------
# differentiators


@dataclass(frozen=True)
class Differentiator:
    """Omega^{(m,h)}_{k,p} (kind "omega") or T^{(m,h)}_{j,p}(x) (kind "T").

    ``offset`` is k for omega and j for T; ``x`` is a basis index of g (T only).
    """
    kind: str
    order: int
    h: tuple
    offset: tuple
    p: tuple
    gamma: tuple
    x: int = None

    def __post_init__(self):
        if self.kind not in ("omega", "T"):
            raise ValueError(f"unknown differentiator kind {self.kind!r}")
        if self.order < 0:
            raise ValueError("order must be nonnegative")
        if not any(self.h):
            raise ValueError("direction h must be nonzero")
        if self.kind == "T" and self.x is None:
            raise ValueError("T needs an element x of g")
        if multiple_of(self.p, self.h) is None:
            raise ValueError(f"p = {self.p} is not an integer multiple of h = {self.h}")

    def params(self):
        return {"kind": self.kind, "order": self.order, "h": list(self.h),
                "offset": list(self.offset), "p": list(self.p),
                "gamma": [str(g) for g in self.gamma], "x": self.x}

    def with_order(self, m):
        return Differentiator(self.kind, m, self.h, self.offset, self.p, self.gamma, self.x)


def multiple_of(p, h):
    """The integer c with p = c*h, or None."""
    c = None
    for pi, hi in zip(p, h):
        if hi:
            q = Fraction(pi, hi)
            if q.denominator != 1 or (c is not None and q != c):
                return None
            c = q
        elif pi:
            return None
    return int(c) if c is not None else 0


def _d_gamma(alg, deg, gamma):
    return Element({DElem(i, deg): g for i, g in enumerate(gamma) if g}, alg.rank)


def apply_differentiator(diff, module, v):
    """Alternating sum of the composites applied to v; the right factor acts first."""
    alg = module.alg
    out = ModuleVector()
    for i in range(diff.order + 1):
        coeff = (-1) ** i * comb(diff.order, i)
        ih = tuple(i * x for x in diff.h)
        inner = _d_gamma(alg, add(diff.p, ih), diff.gamma)
        left_deg = tuple(a - b for a, b in zip(diff.offset, ih))
        if diff.kind == "omega":
            outer = _d_gamma(alg, left_deg, diff.gamma)
        else:
            outer = Element({GElem(diff.x, left_deg): 1}, alg.rank)
        out = out + module.act(outer, module.act(inner, v)) * coeff
    return out


def differentiator_family(module, kind, order, offsets, gamma=None, directions=None):
    """Default parameter grid: h in the default directions, p in {-h, 0, h}."""
    alg = module.alg
    rank = alg.rank
    gamma = gamma or default_gamma(rank, 3)
    xs = [None] if kind == "omega" else list(range(alg.g.dim))
    out = []
    for h in directions or default_directions(rank):
        for c in (-1, 0, 1):
            p = tuple(c * x for x in h)
            for k in offsets:
                for x in xs:
                    out.append(Differentiator(kind, order, tuple(h), tuple(k), p, gamma, x))
    return out


@dataclass
class CheckResult:
    name: str
    params: dict
    verdict: str
    witness: object = None

    @property
    def ok(self):
        return self.verdict in ("pass", "zero")

    def to_json(self):
        out = {"check": self.name, "parameters": self.params, "verdict": self.verdict}
        if self.witness is not None:
            out["witness"] = self.witness
        return out


def annihilation_report(module, family, vectors):
    """One result per differentiator: "zero" or "nonzero" with a witness."""
    results = []
    for diff in family:
        witness = None
        for v in vectors:
            img = apply_differentiator(diff, module, v)
            if img:
                witness = {"vector": repr(v), "image": repr(img)}
                break
        results.append(CheckResult("differentiator", diff.params(),
                                   "nonzero" if witness else "zero", witness))
    return results


def minimal_order(module, kind, offsets, vectors, max_order=6, gamma=None, directions=None):
    """Smallest m such that every order-m operator of the family kills ``vectors``.

    Returns ``(m, witness)`` where the witness shows an order m-1 operator
    acting nontrivially (None when m = 0); m is None if no order up to
    ``max_order`` works.
    """
    witness = None
    for m in range(max_order + 1):
        family = differentiator_family(module, kind, m, offsets, gamma, directions)
        bad = next((r for r in annihilation_report(module, family, vectors)
                    if r.verdict == "nonzero"), None)
        if bad is None:
            return m, witness
        witness = bad
    return None, witness


# --------------------------------------------------------------------------
# A-cover


class CoverElement:
    """Finite sum of mu_{x,u}; keys are (symbol of x, basis key of u).

    ``mu_{x,u}(t^l) = (t^l x) u``.  The value is bilinear in (x, u), so a
    representative in L (x) M is stored; equality in the cover is equality
    of the evaluation functions, checked on a window by :meth:`same_function`.
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = linalg.clean({k: Fraction(v) for k, v in (terms or {}).items()})

    @classmethod
    def mu(cls, x, u):
        out = {}
        for s, cs in x.items():
            for key, cu in u.items():
                linalg.axpy(out, cs * cu, {(s, key): 1})
        return cls(out)

    def __add__(self, other):
        out = dict(self.terms)
        linalg.axpy(out, 1, other.terms)
        return CoverElement(out)

    def __sub__(self, other):
        out = dict(self.terms)
        linalg.axpy(out, -1, other.terms)
        return CoverElement(out)

    def __mul__(self, c):
        return CoverElement(linalg.scale(self.terms, Fraction(c)))

    __rmul__ = __mul__

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        return " + ".join(f"{c}*mu({s}, {k})" for (s, k), c in sorted(self.terms.items())) or "0"

    def x_degrees(self):
        return {s.degree for (s, _) in self.terms}


class Cover:
    """Window-truncated A-cover of a tensor module.

    ``x_window`` bounds the degrees of the x entries and ``u_window`` the
    lattice points of the u entries; an action leaving either raises
    :class:`WindowError` naming the escaping degree.
    """

    def __init__(self, module, x_window, u_window, ideal=None):
        self.module = module
        self.alg = module.alg
        self.hat = module.alg.with_cocycle(0, 0)
        self.x_window = {tuple(d) for d in x_window}
        self.u_window = {tuple(r) for r in u_window}
        if ideal is None:
            ideal = "g" if self.alg.g.dim and module.V1.dim and any(
                any(any(row) for row in mat) for mat in module.V1.matrices.values()) else "d"
        self.ideal = ideal

    def x_symbols(self):
        out = []
        for deg in sorted(self.x_window):
            if self.ideal == "g":
                out += [GElem(x, deg) for x in range(self.alg.g.dim)]
            else:
                out += [DElem(i, deg) for i in range(self.alg.rank)]
        return out

    def generators(self):
        keys = self.module.basis(sorted(self.u_window))
        return [CoverElement({(s, k): 1}) for s in self.x_symbols() for k in keys]

    def _hat_bracket(self, a, b):
        return self.hat.bracket(a, b).without_k()

    def _check(self, mu):
        for (s, key) in mu.terms:
            if s.degree not in self.x_window:
                raise WindowError(f"cover element leaves the x-window at {s.degree}", s.degree)
            if key[2] not in self.u_window:
                raise WindowError(f"cover element leaves the u-window at {key[2]}", key[2])
        return mu

    def act(self, a, mu, strict=True):
        """Actions (i) and (ii): a mu_{x,u} = mu_{[a,x],u} + mu_{x,au} for a in tau-hat."""
        if a.k_part():
            raise ValueError("Z is not part of tau-hat")
        out = CoverElement()
        for (s, key), c in mu.terms.items():
            x = Element({s: 1}, self.alg.rank)
            u = ModuleVector({key: 1})
            out = out + CoverElement.mu(self._hat_bracket(a, x), u) * c
            out = out + CoverElement.mu(x, self.module.act(a, u)) * c
        return self._check(out) if strict else out

    def act_A(self, k, mu, strict=True):
        """Action (iii): t^k mu_{x,u} = mu_{t^k x, u}."""
        out = {}
        for (s, key), c in mu.terms.items():
            linalg.axpy(out, c, {(s._replace(degree=add(s.degree, k)), key): 1})
        out = CoverElement(out)
        return self._check(out) if strict else out

    def evaluate(self, mu, l):
        """mu(t^l) as a module vector."""
        out = ModuleVector()
        for (s, key), c in mu.terms.items():
            x = Element({s._replace(degree=add(s.degree, l)): 1}, self.alg.rank)
            out = out + self.module.act(x, ModuleVector({key: 1})) * c
        return out

    def pi(self, mu):
        return self.evaluate(mu, (0,) * self.alg.rank)

    def same_function(self, mu, nu, points):
        return all(self.evaluate(mu, l) == self.evaluate(nu, l) for l in points)

    def a_bracket(self, a, k):
        """[a, t^k] in A tau-hat as a pair (A-degree, coefficient) or None."""
        out = {}
        for s, c in a.items():
            if s.kind == "d" and k[s.index]:
                deg = add(s.degree, k)
                out[deg] = out.get(deg, 0) + c * k[s.index]
        return linalg.clean(out)

    def image_ranks(self, weights_window):
        """Per lattice point r: rank of pi(cover window) and of L.M at r, and dim M_r."""
        by_r = {}
        for mu in self.generators():
            img = self.pi(mu)
            if img:
                by_r.setdefault(next(iter(img.keys()))[2], []).append(img)
        direct = {}
        for s in self.x_symbols():
            x = Element({s: 1}, self.alg.rank)
            for key in self.module.basis(sorted(self.u_window)):
                img = self.module.act(x, ModuleVector({key: 1}))
                if img:
                    direct.setdefault(next(iter(img.keys()))[2], []).append(img)
        out = {}
        for r in weights_window:
            r = tuple(r)
            out[r] = (linalg.rank([v.terms for v in by_r.get(r, [])]),
                      linalg.rank([v.terms for v in direct.get(r, [])]),
                      self.module.fiber_dim)
        return out


# --------------------------------------------------------------------------
# support and bound


@dataclass
class SupportReport:
    table: WeightTable
    support: list
    max_dim: int
    min_dim: int
    uniform_bound: bool
    pattern: str
    notes: list = field(default_factory=list)

    def to_json(self):
        return {"support": [[str(x) for x in w] for w in self.support],
                "max_dim": self.max_dim, "min_dim": self.min_dim,
                "uniform_bound": self.uniform_bound, "pattern": self.pattern,
                "table": self.table.to_json()}


COSET = "lambda + Z^{n+1}"
PUNCTURED = "Z^{n+1} minus {0}"
POINT = "{0}"
OTHER = "other"


def support_and_bound(module, window=None, bound=None):
    """Support, dimension range and the dense-support pattern on a window.

    ``module`` is anything with ``weight_space_dims(window)`` or a ready
    :class:`WeightTable`.  ``bound`` is the expected uniform bound (for
    tensor modules the fiber dimension).
    """
    table = module if isinstance(module, WeightTable) else module.weight_space_dims(window)
    support = table.support()
    dims = [table[w] for w in support]
    max_dim = max(dims) if dims else 0
    min_dim = min(dims) if dims else 0
    if bound is None:
        bound = getattr(module, "fiber_dim", max_dim)
    uniform = max_dim <= bound
    weights = table.weights()
    zero = tuple(Fraction(0) for _ in range(table.rank))
    if support == [zero]:
        pattern = POINT
    elif support == weights:
        pattern = COSET
    elif zero in table.rows and support == [w for w in weights if w != zero]:
        pattern = PUNCTURED
    else:
        pattern = OTHER
    return SupportReport(table, support, max_dim, min_dim, uniform, pattern)
