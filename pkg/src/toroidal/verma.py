"""Windowed generalized Verma modules M(X) = U(tau_-) (x) X and their
irreducible quotients L(X).

Vectors of M(X) are dicts keyed ``(monomial, xkey)`` where ``monomial`` is a
PBW-ordered tuple of tau_- symbols and ``xkey`` a basis key of X.  Actions
are computed exactly with no truncation; windows only choose which vectors
are examined and which raising operators are used to detect the radical.

The radical of a window is built in two stages.  Stage 0: v of depth m is
radical when every windowed raising word of total depth m sends v to zero
in X.  Stage i+1 additionally asks h v to be stage-i radical for every h in
the tau_0 closure set.  The stages are iterated until the radical on the
reported weights stops changing (or the cap is hit).
"""

import hashlib
import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from . import linalg
from .algebra_core import KIND_ORDER, add, box
from .subalgebras import LatticeAutomorphism, coordinate_change
from .tensor_modules import TAU0, ModuleVector, TensorModule, WeightTable

CODE_VERSION = "verma-1"


class VermaError(ValueError):
    pass


def pbw_key(s):
    """Fixed PBW order: t_0-depth, then lattice offset, then symbol kind and index."""
    return (-s.degree[0], s.degree[1:], KIND_ORDER[s.kind], s.index)


def depth_of(s):
    return -s.degree[0]


@dataclass(frozen=True)
class VermaWindow:
    dmax: int
    R: int
    caps: tuple = ()
    tau0_radius: int = 1
    max_iterations: int = 32
    raise_radius: int = None

    def __post_init__(self):
        if self.dmax < 1 or self.R < 1:
            raise ValueError("depth and radius must both be >= 1")
        if self.raise_radius is not None and self.raise_radius < 1:
            raise ValueError("raising radius must be >= 1")

    @property
    def rr(self):
        """Radius of the raising operators (defaults to R)."""
        return self.R if self.raise_radius is None else self.raise_radius

    def cap(self, depth):
        return self.caps[depth - 1] if depth - 1 < len(self.caps) else None

    def to_json(self):
        return {"dmax": self.dmax, "R": self.R, "raise_radius": self.rr, "caps": list(self.caps),
                "tau0_radius": self.tau0_radius, "max_iterations": self.max_iterations}


class TrivialTopModule:
    """One-dimensional tau_0-module on which everything acts by zero."""

    flavor = TAU0

    def __init__(self, alg):
        self.alg = alg
        self.lattice_rank = alg.n
        self.fiber_dim = 1

    def __repr__(self):
        return "TrivialTopModule()"

    def basis(self, window):
        zero = (0,) * self.lattice_rank
        return [(0, 0, zero)] if zero in {tuple(r) for r in window} else []

    def act_symbol(self, s, key, coeff, out):
        if s.degree[0]:
            raise VermaError(f"{s} is not in tau_0")

    def weight_of_key(self, key):
        return (Fraction(0),) * self.alg.rank

    def config_json(self):
        return {"flavor": "trivial"}


# --------------------------------------------------------------------------
# PBW arithmetic


class VermaAlgebra:
    """Exact action of tau on U(tau_-) (x) X with tau_+ X = 0."""

    def __init__(self, X):
        self.X = X
        self.alg = X.alg
        self._insert = lru_cache(maxsize=None)(self._insert_impl)
        self._apply = lru_cache(maxsize=None)(self._apply_impl)

    def part(self, s):
        d0 = s.degree[0]
        return "-" if d0 < 0 else ("+" if d0 > 0 else "0")

    def _insert_impl(self, y, mono):
        """y * mono rewritten in PBW order, as a tuple of (monomial, coeff)."""
        if not mono or pbw_key(y) <= pbw_key(mono[0]):
            return (((y,) + mono, Fraction(1)),)
        y1, rest = mono[0], mono[1:]
        out = {}
        for m2, c in self._insert(y, rest):
            for m3, c3 in self._insert(y1, m2):
                linalg.axpy(out, c * c3, {m3: 1})
        for t, c in self.alg.bracket_symbols(y, y1).items():
            for m2, c2 in self._insert(t, rest):
                linalg.axpy(out, c * c2, {m2: 1})
        return tuple(out.items())

    def _apply_impl(self, s, mono, xkey):
        part = self.part(s)
        if part == "-":
            return tuple(((m, xkey), c) for m, c in self._insert(s, mono))
        if not mono:
            if part == "+":
                return ()
            out = {}
            self.X.act_symbol(s, xkey, Fraction(1), out)
            return tuple((((), k), c) for k, c in out.items())
        y1, rest = mono[0], mono[1:]
        out = {}
        for t, c in self.alg.bracket_symbols(s, y1).items():
            for key, c2 in self._apply(t, rest, xkey):
                linalg.axpy(out, c * c2, {key: 1})
        for (m2, x2), c in self._apply(s, rest, xkey):
            for m3, c3 in self._insert(y1, m2):
                linalg.axpy(out, c * c3, {(m3, x2): 1})
        return tuple(out.items())

    def apply_symbol(self, s, vec):
        out = {}
        for (mono, xkey), c in vec.items():
            for key, c2 in self._apply(s, mono, xkey):
                linalg.axpy(out, c * c2, {key: 1})
        return out

    def apply(self, element, vec):
        out = {}
        for s, c in element.items():
            linalg.axpy(out, c, self.apply_symbol(s, vec))
        return out

    def apply_word(self, word, vec):
        """Apply word[0] first, then word[1], ..."""
        for s in word:
            vec = self.apply_symbol(s, vec)
            if not vec:
                break
        return vec

    def weight(self, mono, xkey):
        """Full weight (d_0, ..., d_n eigenvalues) of a PBW basis vector."""
        base = self.X.weight_of_key(xkey)
        shift = [0] * self.alg.rank
        for y in mono:
            shift = [a + b for a, b in zip(shift, y.degree)]
        return tuple(Fraction(a) + b for a, b in zip(base, shift))


# --------------------------------------------------------------------------
# state


@dataclass
class VermaState:
    X: object
    window: VermaWindow
    columns: dict                     # (depth, weight) -> list of PBW basis keys
    radical: dict = field(default_factory=dict)       # (depth, weight) -> list of vectors
    quotient: dict = field(default_factory=dict)      # (depth, weight) -> int
    iterations: dict = field(default_factory=dict)    # depth -> tau_0 iterations used
    converged: dict = field(default_factory=dict)     # depth -> bool
    history: dict = field(default_factory=dict)       # depth -> list of per-stage totals
    saturated: list = field(default_factory=list)
    engine: VermaAlgebra = None

    def dims(self):
        return {k: len(v) for k, v in self.columns.items()}


def lowering_generators(alg, depth, R):
    out = []
    for m in box(R, alg.n):
        out.extend(alg.graded_component_basis((-depth,) + m))
    return out


def raising_generators(alg, depth, R):
    out = []
    for m in box(R, alg.n):
        out.extend(alg.graded_component_basis((depth,) + m))
    return out


def tau0_generators(alg, radius):
    out = []
    for m in box(radius, alg.n):
        out.extend(alg.graded_component_basis((0,) + m))
    return out


def _monomials(alg, depth, R):
    """PBW monomials of total depth ``depth`` in windowed lowering generators."""
    gens = {q: sorted(lowering_generators(alg, q, R), key=pbw_key) for q in range(1, depth + 1)}
    out = []

    def rec(remaining, prefix, last):
        if remaining == 0:
            out.append(tuple(prefix))
            return
        for q in range(1, remaining + 1):
            for y in gens[q]:
                if last is not None and pbw_key(y) < pbw_key(last):
                    continue
                prefix.append(y)
                rec(remaining - q, prefix, y)
                prefix.pop()

    rec(depth, [], None)
    return sorted(set(out), key=lambda m: [pbw_key(y) for y in m])


def build_verma(X, w):
    """Windowed PBW basis of M(X), grouped by (depth, weight)."""
    if getattr(X, "flavor", None) != TAU0:
        raise VermaError("X must be a tau_0-module")
    engine = VermaAlgebra(X)
    alg = X.alg
    xkeys = X.basis(box(w.R, alg.n))
    state = VermaState(X, w, {}, engine=engine)
    for key in xkeys:
        state.columns.setdefault((0, engine.weight((), key)), []).append(((), key))
    for depth in range(1, w.dmax + 1):
        cap = w.cap(depth)
        count = 0
        for mono in _monomials(alg, depth, w.R):
            for key in xkeys:
                if cap is not None and count >= cap:
                    if depth not in state.saturated:
                        state.saturated.append(depth)
                    break
                state.columns.setdefault((depth, engine.weight(mono, key)), []).append((mono, key))
                count += 1
    return state


def raising_words(alg, depth, R):
    """Sequences of windowed raising generators whose depths add up to ``depth``."""
    gens = {q: raising_generators(alg, q, R) for q in range(1, depth + 1)}
    out = []

    def rec(remaining, prefix):
        if remaining == 0:
            out.append(tuple(prefix))
            return
        for q in range(1, remaining + 1):
            for z in gens[q]:
                prefix.append(z)
                rec(remaining - q, prefix)
                prefix.pop()

    rec(depth, [])
    return out


def _word_images(engine, words, key):
    """Stage-0 functional values on one basis vector: (word index, X key) -> coeff."""
    out = {}
    for idx, word in enumerate(words):
        for (mono, xkey), c in engine.apply_word(word, {key: Fraction(1)}).items():
            out[(idx, xkey)] = c
    return out


def _rows_from_columns(cols, images):
    """Transpose column images into a row-reduced list of row dicts (column -> value)."""
    rows = {}
    for col, img in zip(cols, images):
        for r, c in img.items():
            rows.setdefault(r, {})[col] = c
    ech = linalg.Echelon()
    for r in sorted(rows, key=repr):
        ech.add(rows[r])
    return ech.basis()


def _reach(engine, start, H, steps):
    """Closure of ``start`` under ``steps`` applications of H, by level."""
    levels = [set(start)]
    images = {}
    seen = set(start)
    frontier = list(start)
    for _ in range(steps):
        nxt = []
        for key in frontier:
            imgs = []
            for h in H:
                img = engine.apply_symbol(h, {key: Fraction(1)})
                imgs.append(img)
                for k2 in img:
                    if k2 not in seen:
                        seen.add(k2)
                        nxt.append(k2)
            images[key] = imgs
        levels.append(set(nxt))
        frontier = nxt
    return levels, images


def compute_radical(state, w=None):
    """Per-weight radical on the window, with tau_0 closure to a fixed point."""
    w = w or state.window
    engine = state.engine
    alg = engine.alg
    H = tau0_generators(alg, w.tau0_radius)
    for depth in range(0, w.dmax + 1):
        reported = {wt: cols for (d, wt), cols in state.columns.items() if d == depth}
        if depth == 0:
            for wt, cols in reported.items():
                state.radical[(0, wt)] = []
                state.quotient[(0, wt)] = len(cols)
            state.iterations[0] = 0
            state.converged[0] = True
            continue
        words = raising_words(alg, depth, w.rr)
        start = [k for cols in reported.values() for k in cols]
        J = min(2, w.max_iterations)
        while True:
            result = _closure_run(engine, words, H, start, reported, J, depth)
            stable_at, ranks = result
            if stable_at is not None or J >= w.max_iterations:
                break
            J = min(2 * J, w.max_iterations)
        kernel_rows = ranks[stable_at if stable_at is not None else J]
        state.iterations[depth] = stable_at if stable_at is not None else J
        state.converged[depth] = stable_at is not None
        state.history[depth] = [sum(len(r[wt]) for wt in reported) for r in ranks]
        for wt, cols in reported.items():
            rows = kernel_rows[wt]
            colvecs = [{i: r.get(k, 0) for i, r in enumerate(rows) if r.get(k)} for k in cols]
            kernel = linalg.column_kernel(colvecs)
            state.radical[(depth, wt)] = [{cols[j]: c for j, c in rel.items()} for rel in kernel]
            state.quotient[(depth, wt)] = len(cols) - len(kernel)
    return state


def _closure_run(engine, words, H, start, reported, J, depth):
    """Rows of the stage-i functionals on the reported columns for i = 0..J.

    Returns (first stage i whose radical equals stage i-1 on every reported
    weight, or None; list of {weight: rows} per stage).
    """
    levels, images = _reach(engine, start, H, J)
    # U_i = union of levels[0..J-i]
    weight_of = {}
    all_keys = set().union(*levels)
    for key in all_keys:
        weight_of[key] = engine.weight(*key)
    stage0 = {}
    for key in all_keys:
        stage0[key] = _word_images(engine, words, key)

    def keys_upto(i):
        out = set()
        for lv in levels[:J - i + 1]:
            out |= lv
        return out

    by_weight = {}
    for key in all_keys:
        by_weight.setdefault(weight_of[key], []).append(key)
    for wt in by_weight:
        by_weight[wt].sort(key=repr)

    # stage-0 rows per weight on U_0
    rows = {}
    for wt, keys in by_weight.items():
        rows[wt] = _rows_from_columns(keys, [stage0[k] for k in keys])
    history = [{wt: _restrict(rows.get(wt, []), reported[wt]) for wt in reported}]
    stable_at = None
    for i in range(1, J + 1):
        U = keys_upto(i)
        new_rows = {}
        groups = {}
        for key in U:
            groups.setdefault(weight_of[key], []).append(key)
        for wt, keys in groups.items():
            keys.sort(key=repr)
            cand = [{k: r[k] for k in keys if r.get(k)} for r in rows.get(wt, [])]
            for hi, h in enumerate(H):
                target = add(wt, h.degree)
                trows = rows.get(target, [])
                if not trows:
                    continue
                for r in trows:
                    comp = {}
                    for k in keys:
                        val = sum((r.get(k2, 0) * c for k2, c in images[k][hi].items()), Fraction(0))
                        if val:
                            comp[k] = val
                    if comp:
                        cand.append(comp)
            ech = linalg.Echelon()
            for r in cand:
                if r:
                    ech.add(r)
            new_rows[wt] = ech.basis()
        rows = new_rows
        history.append({wt: _restrict(rows.get(wt, []), reported[wt]) for wt in reported})
        if stable_at is None and all(_rank(history[-1][wt]) == _rank(history[-2][wt])
                                     for wt in reported):
            stable_at = i
            break
    return stable_at, history


def _restrict(rows, cols):
    cols = set(cols)
    out = []
    for r in rows:
        rr = {k: v for k, v in r.items() if k in cols}
        if rr:
            out.append(rr)
    ech = linalg.Echelon()
    for r in out:
        ech.add(r)
    return ech.basis()


def _rank(rows):
    return len(rows)


def l_of_x_multiplicities(state, previous=None):
    """Quotient dimension per (depth, weight); ``previous`` is the state at radius R-1.

    The extra column ``stable`` is 1 when the value agrees with ``previous``.
    """
    table = WeightTable(state.engine.alg.rank, value_name="dim")
    for (depth, wt), q in sorted(state.quotient.items()):
        extra = {"depth": depth}
        if previous is not None:
            extra["stable"] = int(previous.quotient.get((depth, wt)) == q)
        if wt in table:
            raise VermaError(f"weight {wt} seen at two depths")
        table.set(wt, q, **extra)
    table.meta.update({"window": state.window.to_json(),
                       "iterations": {str(k): v for k, v in sorted(state.iterations.items())},
                       "converged": {str(k): v for k, v in sorted(state.converged.items())}})
    return table


def radical_maximality(state, depth=1):
    """For a complement basis of the radical, exhibit an operator sequence
    (tau_0 elements then a raising word) reaching a nonzero vector of X.

    Returns a list of failures (empty when the certificate holds).
    """
    engine = state.engine
    alg = engine.alg
    w = state.window
    words = raising_words(alg, depth, w.rr)
    H = tau0_generators(alg, w.tau0_radius)
    failures = []
    for (d, wt), cols in sorted(state.columns.items()):
        if d != depth:
            continue
        ech = linalg.Echelon()
        for v in state.radical[(d, wt)]:
            ech.add(v)
        for col in cols:
            v = {col: Fraction(1)}
            if not ech.add(v):
                continue
            if _find_witness(engine, words, H, v, state.iterations.get(depth, 0)) is None:
                failures.append((wt, col))
    return failures


def _find_witness(engine, words, H, v, levels):
    frontier = [((), v)]
    for _ in range(levels + 1):
        nxt = []
        for prefix, vec in frontier:
            for word in words:
                out = engine.apply_word(word, vec)
                if out:
                    return prefix + word
            for h in H:
                img = engine.apply_symbol(h, vec)
                if img:
                    nxt.append((prefix + (h,), img))
        frontier = nxt
    return None


def radical_lowering_closure(state, depth=1, radius=None):
    """Apply windowed depth-1 lowering generators to radical vectors at ``depth``
    and test that raising words of depth+1 with offsets in ``radius`` kill the
    result.  Returns failures.

    The test words reach offsets up to three times ``radius`` after
    commuting past y, so a clean result needs a radical computed with
    ``raise_radius >= 3 * radius``.
    """
    engine = state.engine
    alg = engine.alg
    w = state.window
    radius = radius or w.R
    words = raising_words(alg, depth + 1, radius)
    failures = []
    for (d, wt), vecs in sorted(state.radical.items()):
        if d != depth:
            continue
        for v in vecs:
            for y in lowering_generators(alg, 1, radius):
                img = engine.apply_symbol(y, v)
                for word in words:
                    if engine.apply_word(word, img):
                        failures.append((wt, y, word))
                        break
    return failures


def verma_multiplicities(X, dmax, radii, **kw):
    """Quotient tables for each radius, each flagged against the previous radius."""
    tables = []
    prev = None
    for R in radii:
        state = compute_radical(build_verma(X, VermaWindow(dmax, R, **kw)))
        tables.append((R, state, l_of_x_multiplicities(state, prev)))
        prev = state
    return tables


def monotone_refinement(states):
    """Failures of dim_R(mu) <= dim_{R+1}(mu) on weights present at both radii."""
    failures = []
    for a, b in zip(states, states[1:]):
        for key, q in a.quotient.items():
            if key in b.quotient and b.quotient[key] < q:
                failures.append((key, q, b.quotient[key]))
    return failures


# --------------------------------------------------------------------------
# twisting


class TwistedModule:
    """The module V^A: a . v = T_A(a) v."""

    def __init__(self, module, A):
        if not isinstance(A, LatticeAutomorphism):
            A = LatticeAutomorphism(A)
        if A.size != module.alg.rank:
            raise ValueError(f"automorphism of size {A.size} for rank {module.alg.rank}")
        self.module = module
        self.A = A
        self.alg = module.alg

    def act(self, element, v):
        return self.module.act(coordinate_change(element, self.A), v)

    weight_of = TensorModule.weight_of

    def weight_of_key(self, key):
        return self.A.map_weight(self.module.weight_of_key(key))

    def basis(self, window):
        return self.module.basis(window)

    @property
    def fiber_dim(self):
        return self.module.fiber_dim

    def weight_space_dims(self, window):
        table = WeightTable(self.alg.rank, value_name="dim")
        counts = {}
        for key in self.basis(window):
            wt = self.weight_of(ModuleVector({key: 1}))
            counts[wt] = counts.get(wt, 0) + 1
        for wt, c in counts.items():
            table.set(wt, c)
        table.meta["module"] = f"twist({self.A.A})"
        return table


def twist_module(module, A):
    return TwistedModule(module, A)


# --------------------------------------------------------------------------
# cache


def cache_key(config, window):
    blob = json.dumps({"config": config, "window": window, "code": CODE_VERSION},
                      sort_keys=True).encode()
    return hashlib.sha256(blob).hexdigest()
