"""JSON formats for elements, configurations, module vectors and module configs.

Scalars are exact rational strings ("p/q" or integers); floats are rejected.
"""

import json
from fractions import Fraction

from .algebra_core import DElem, Element, GElem, KClass, ToroidalAlgebra
from .finite_reps import Irrep, gl_irrep, highest_weight_irrep, trivial_gl, trivial_rep
from .subalgebras import LatticeAutomorphism
from .tensor_modules import (JET, TAU0, ModuleVector, TensorModule,
                             TrivialModule, derham_module)


class ParseError(ValueError):
    """Malformed input; ``offset`` is the byte offset of the problem when known."""

    def __init__(self, message, offset=None, source=None):
        where = f" at byte {offset}" if offset is not None else ""
        origin = f"{source}: " if source else ""
        super().__init__(f"{origin}{message}{where}")
        self.offset = offset


def loads(data, source=None):
    """Parse JSON from bytes or str, reporting errors by byte offset."""
    if isinstance(data, bytes):
        try:
            text = data.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ParseError("invalid UTF-8", exc.start, source) from None
    else:
        text = data
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        offset = len(text[:exc.pos].encode("utf-8"))
        raise ParseError(exc.msg, offset, source) from None


def load_file(path):
    with open(path, "rb") as fh:
        return loads(fh.read(), source=str(path))


def scalar(x):
    if isinstance(x, float):
        raise ParseError(f"float {x!r} not allowed; use an exact rational string")
    if isinstance(x, bool):
        raise ParseError("boolean is not a scalar")
    try:
        return Fraction(x)
    except (TypeError, ValueError, ZeroDivisionError):
        raise ParseError(f"bad rational {x!r}") from None


def fmt(x):
    return str(Fraction(x))


def _ints(seq, what):
    if not isinstance(seq, list) or not all(isinstance(v, int) and not isinstance(v, bool)
                                            for v in seq):
        raise ParseError(f"{what} must be a list of integers")
    return tuple(seq)


# --------------------------------------------------------------------------
# algebra configuration and elements


def config_to_json(alg):
    return {"n": alg.n, "g": alg.g.name, "mu1": fmt(alg.mu1), "mu2": fmt(alg.mu2)}


def config_from_json(data):
    if not isinstance(data, dict) or "n" not in data:
        raise ParseError("configuration needs at least the key 'n'")
    n = data["n"]
    if not isinstance(n, int) or n < 0:
        raise ParseError("'n' must be a nonnegative integer")
    try:
        return ToroidalAlgebra(n, data.get("g", "none"), scalar(data.get("mu1", 0)),
                               scalar(data.get("mu2", 0)))
    except ValueError as exc:
        raise ParseError(str(exc)) from None


def element_to_json(a, alg=None):
    terms = []
    for s, c in sorted(a.items(), key=lambda kv: kv[0].sort_key()):
        t = {"kind": s.kind}
        if s.kind == "g":
            t["x"] = alg.g.labels[s.index] if alg is not None else s.index
        else:
            t["i"] = s.index
        t["k"] = list(s.degree)
        t["c"] = fmt(c)
        terms.append(t)
    return {"rank": a.rank, "terms": terms}


def element_from_json(data, alg=None):
    if not isinstance(data, dict) or "rank" not in data or "terms" not in data:
        raise ParseError("element needs 'rank' and 'terms'")
    rank = data["rank"]
    if not isinstance(rank, int) or rank < 1:
        raise ParseError("'rank' must be a positive integer")
    out = {}
    for t in data["terms"]:
        kind = t.get("kind")
        k = _ints(t.get("k"), "'k'")
        if len(k) != rank:
            raise ParseError(f"degree {list(k)} does not have rank {rank}")
        c = scalar(t.get("c", 1))
        if kind == "g":
            x = t.get("x")
            if alg is not None:
                try:
                    x = alg.g.index(x)
                except (KeyError, ValueError, IndexError):
                    raise ParseError(f"unknown element {x!r} of {alg.g.name}") from None
            elif not isinstance(x, int):
                raise ParseError("'x' must be a basis index without an algebra config")
            sym = GElem(x, k)
        elif kind in ("K", "d"):
            i = t.get("i")
            if not isinstance(i, int) or not 0 <= i < rank:
                raise ParseError(f"direction {i!r} outside [0, {rank - 1}]")
            sym = KClass(i, k) if kind == "K" else DElem(i, k)
        else:
            raise ParseError(f"unknown term kind {kind!r}")
        out[sym] = out.get(sym, 0) + c
    return Element(out, rank)


# --------------------------------------------------------------------------
# module vectors


def vector_to_json(v):
    return {"terms": [{"v1": i1, "v2": i2, "r": list(r), "c": fmt(c)}
                      for (i1, i2, r), c in sorted(v.items())]}


def vector_from_json(data):
    if not isinstance(data, dict) or "terms" not in data:
        raise ParseError("module vector needs 'terms'")
    out = {}
    for t in data["terms"]:
        key = (t["v1"], t["v2"], _ints(t["r"], "'r'"))
        out[key] = out.get(key, 0) + scalar(t.get("c", 1))
    return ModuleVector(out)


# --------------------------------------------------------------------------
# automorphisms


def automorphism_from_json(data):
    if isinstance(data, dict):
        data = data.get("matrix")
    if not isinstance(data, list) or not all(isinstance(row, list) for row in data):
        raise ParseError("automorphism must be a row-major integer matrix")
    rows = [_ints(row, "matrix row") for row in data]
    try:
        return LatticeAutomorphism(rows)
    except ValueError as exc:
        raise ParseError(str(exc)) from None


def automorphism_to_json(A):
    return [list(row) for row in A.A]


# --------------------------------------------------------------------------
# module configurations


def _v1(data, alg):
    if data is None:
        return trivial_rep(alg.g)
    if "matrices" in data:
        return Irrep.from_json(data)
    label = data.get("label")
    if label is None or not any(label):
        return trivial_rep(alg.g)
    return highest_weight_irrep(label, alg.g)


def _v2(data, m):
    if data is None:
        return trivial_gl(m)
    if "matrices" in data:
        return Irrep.from_json(data)
    c = scalar(data.get("c", 0))
    label = data.get("label") or [0] * (m - 1)
    if len(label) != m - 1:
        raise ParseError(f"V2 label needs {m - 1} entries")
    if not any(label):
        return trivial_gl(m, c)
    return gl_irrep(label, c)


def module_from_json(data, alg=None):
    """Build a module from a config dict.

    Keys: "algebra" (optional config), "flavor" in {"jet", "tau0", "trivial",
    "derham"}, "V1"/"V2" given either as full Irrep JSON or as
    {"label": [...], "c": "p/q"}, "alpha", "a", "b", and "k" for "derham".
    """
    if not isinstance(data, dict):
        raise ParseError("module config must be an object")
    if "algebra" in data:
        alg = config_from_json(data["algebra"])
    if alg is None:
        raise ParseError("module config needs an algebra configuration")
    flavor = data.get("flavor", JET)
    alpha = data.get("alpha")
    if alpha is not None:
        alpha = [scalar(x) for x in alpha]
    try:
        if flavor == "trivial":
            return TrivialModule(alg.rank)
        if flavor == "derham":
            k = data.get("k", 0)
            return derham_module(alg, alpha or [0] * alg.rank, k)
        if flavor not in (JET, TAU0):
            raise ParseError(f"unknown module flavor {flavor!r}")
        m = alg.rank if flavor == JET else alg.n
        V1 = _v1(data.get("V1"), alg)
        V2 = _v2(data.get("V2"), max(m, 1))
        return TensorModule(alg, V1, V2, alpha, flavor, scalar(data.get("a", 0)),
                            scalar(data.get("b", 0)))
    except ParseError:
        raise
    except (ValueError, KeyError, TypeError) as exc:
        raise ParseError(f"invalid module config: {exc}") from None
