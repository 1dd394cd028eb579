import random
from fractions import Fraction
from math import comb

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from toroidal import TensorModule, ToroidalAlgebra, WeightTable
from toroidal.algebra_core import Element, box
from toroidal.finite_reps import gl_irrep, highest_weight_irrep, standard_rep
from toroidal.tensor_modules import (IRREDUCIBLE, QUOTIENT_DV, TRIVIAL_QUOTIENT, DeRhamConfig,
                                     FlavorMismatch, ModuleVector, NotHomogeneous, TrivialModule,
                                     derham_d, derham_image_dims, derham_matrix, derham_module,
                                     derham_rank, irreducible_quotient_catalogue, vec)


def std_module(alpha=(0, 0), **kw):
    alg = ToroidalAlgebra(1, "sl2", **kw)
    return TensorModule(alg, highest_weight_irrep((1,), alg.g), standard_rep(2), alpha)


def test_jet_action_example():
    M = std_module()
    v = vec(0, 0, (0, 0))
    assert M.act(M.alg.D(0, (1, 1)), v) == vec(0, 0, (1, 1)) + vec(0, 1, (1, 1))


def test_jet_action_formula_generic():
    """t^m d_i on v1 (x) v2 (x) t^r, computed by hand from the defining formula."""
    alg = ToroidalAlgebra(1, "sl2")
    V2 = gl_irrep((1,), Fraction(3, 2))
    alpha = (Fraction(1, 3), Fraction(-1, 2))
    M = TensorModule(alg, highest_weight_irrep((1,), alg.g), V2, alpha)
    r, m, i = (2, -1), (3, 2), 1
    got = M.act(alg.D(i, m), vec(1, 0, r))
    want = {}
    rm = (r[0] + m[0], r[1] + m[1])
    want[(1, 0, rm)] = alpha[i] + r[i]
    for j in range(2):
        for row, c in V2.column((j, i), 0).items():
            want[(1, row, rm)] = want.get((1, row, rm), 0) + m[j] * c
    assert got == ModuleVector(want)


def test_loop_action():
    M = std_module()
    alg = M.alg
    e = alg.G("E01", (1, 0))
    # e raises the lower vector of V1 to the highest one
    assert M.act(e, vec(1, 0, (0, 0))) == vec(0, 0, (1, 0))


def test_center_acts_by_zero():
    M = std_module(mu1=1, mu2=-1)
    for k in box(2, 2):
        for i in range(2):
            for v in M.basis_vectors([k]):
                assert not M.act(M.alg.K(i, k), v)


def test_tau0_k0_scalar():
    alg = ToroidalAlgebra(1)
    X = TensorModule(alg, None, None, (0,), "tau0", 1, 0)
    assert X.act(alg.K(0, (0, 3)), vec(0, 0, (2,))) == vec(0, 0, (5,))


def test_tau0_rejects_other_degrees():
    alg = ToroidalAlgebra(1)
    X = TensorModule(alg, None, None, (0,), "tau0", 1, 0)
    with pytest.raises(FlavorMismatch):
        X.act(alg.D(1, (1, 0)), vec(0, 0, (0,)))


def test_weight_of_literal():
    M = std_module()
    assert M.weight_of(vec(0, 0, (2, 3))) == (2, 3)
    M2 = std_module(alpha=(Fraction(1, 2), 0))
    assert M2.weight_of(vec(1, 1, (0, 0))) == (Fraction(1, 2), 0)


def test_weight_of_not_homogeneous():
    M = std_module()
    res = M.weight_of(vec(0, 0, (1, 0)) + vec(0, 0, (0, 0)))
    assert isinstance(res, NotHomogeneous)


def test_weight_space_dims_constant():
    M = std_module(alpha=(Fraction(1, 3), Fraction(1, 5)))
    table = M.weight_space_dims(list(box(2, 2)))
    assert len(table) == 25 and set(table.values()) == {4}


def test_trivial_module_table():
    t = TrivialModule(2).weight_space_dims(None)
    assert t.weights() == [(0, 0)] and t[(0, 0)] == 1


@settings(max_examples=40, deadline=None)
@given(st.data())
def test_module_axiom_random(data):
    """[a,b]v = a(bv) - b(av) for sampled symbols on a module with gl_2 V2 = V(2/3, (2))."""
    alg = ToroidalAlgebra(1, "sl2", 1, 1)
    M = TensorModule(alg, highest_weight_irrep((2,), alg.g), gl_irrep((2,), Fraction(2, 3)),
                     (Fraction(1, 7), Fraction(2, 5)))
    syms = alg.window_basis(list(box(2, 2)))
    keys = M.basis(list(box(2, 2)))
    a = Element({data.draw(st.sampled_from(syms)): 1}, 2)
    b = Element({data.draw(st.sampled_from(syms)): 1}, 2)
    v = ModuleVector({data.draw(st.sampled_from(keys)): 1})
    assert M.act(alg.bracket(a, b), v) == M.act(a, M.act(b, v)) - M.act(b, M.act(a, v))


# -- de Rham ----------------------------------------------------------------


def test_d_on_zero_forms():
    cfg = DeRhamConfig(2, (0, 0), 0)
    assert derham_d(vec(0, 0, (1, 0)), cfg) == vec(0, 0, (1, 0))


def test_d_top_degree_raises():
    with pytest.raises(ValueError):
        derham_d(vec(0, 0, (0, 0)), DeRhamConfig(2, (0, 0), 2))


@pytest.mark.parametrize("N", [2, 3])
def test_d_squared_zero(N):
    alpha = tuple(Fraction(1, p) for p in (2, 3, 5)[:N])
    for k in range(N - 1):
        cfg = DeRhamConfig(N, alpha, k)
        for r in box(2, N):
            for j in range(comb(N, k)):
                assert not derham_d(derham_d(vec(0, j, r), cfg), cfg.next())


@pytest.mark.parametrize("N,alpha", [(2, (0, 0)), (2, (Fraction(1, 2), 0)), (3, (0, 0, 0)),
                                     (3, (Fraction(1, 3), 0, Fraction(2, 5)))])
def test_rank_closed_form(N, alpha):
    """Koszul complex of the vector lambda = alpha + r: rank d_k = C(N-1, k) unless lambda = 0."""
    for k in range(N):
        cfg = DeRhamConfig(N, alpha, k)
        for r in box(2, N):
            lam = [a + x for a, x in zip(alpha, r)]
            expect = 0 if not any(lam) else comb(N - 1, k)
            assert derham_rank(cfg, r) == expect
            if r == (1,) * N:
                assert sympy.Matrix(derham_matrix(cfg, r)).rank() == expect


def test_d_equivariant_sampled():
    rng = random.Random(7)
    alg = ToroidalAlgebra(2)
    alpha = (Fraction(1, 2), 0, Fraction(1, 3))
    for k in range(3):
        cfg = DeRhamConfig(3, alpha, k)
        src, dst = derham_module(alg, alpha, k), derham_module(alg, alpha, k + 1)
        for _ in range(100):
            a = alg.D(rng.randrange(3), tuple(rng.randint(-2, 2) for _ in range(3)))
            v = vec(0, rng.randrange(comb(3, k)), tuple(rng.randint(-2, 2) for _ in range(3)))
            assert dst.act(a, derham_d(v, cfg)) == derham_d(src.act(a, v), cfg)


def test_image_dims_examples():
    gen = derham_image_dims(DeRhamConfig(2, (Fraction(1, 2), 0), 0), list(box(1, 2)))
    assert set(gen.values()) == {1}
    zero = derham_image_dims(DeRhamConfig(2, (0, 0), 0), list(box(1, 2)))
    assert zero[(0, 0)] == 0 and sum(zero.values()) == 8


# -- catalogue ------------------------------------------------------------------


def test_catalogue_examples():
    assert irreducible_quotient_catalogue(1, 1, (1,), (1,), (0, 0)).verdict == IRREDUCIBLE
    e = irreducible_quotient_catalogue(2, 1, (0,), (1, 0), (0, 0, 0))
    assert e.verdict == QUOTIENT_DV and e.k == 1
    e = irreducible_quotient_catalogue(2, 2, (0,), (0, 1), (Fraction(1, 2), 0, 0))
    assert e.verdict == QUOTIENT_DV and e.k == 2
    e = irreducible_quotient_catalogue(1, 2, (0,), (0,), (3, -1))
    assert e.verdict == TRIVIAL_QUOTIENT


def test_catalogue_generic_irreducible():
    e = irreducible_quotient_catalogue(1, Fraction(1, 2), (0,), (0,), (0, 0))
    assert e.verdict == IRREDUCIBLE and not e.needs_review


def test_catalogue_flags_verbatim_disagreement():
    # lambda1 = 0, (c, lambda2) = (1, omega_1): quotient, yet the literal
    # disjunction holds through its first clause
    e = irreducible_quotient_catalogue(1, 1, (0,), (1,), (0, 0))
    assert e.verdict == QUOTIENT_DV
    assert e.verbatim_irreducible and e.needs_review


# -- weight tables ------------------------------------------------------------


def test_weight_table_round_trip_and_order():
    t = WeightTable(2)
    for w, d in [((1, 0), 3), ((Fraction(-1, 2), 2), 1), ((0, 0), 0)]:
        t.set(w, d, stable=1)
    assert t.weights() == sorted(t.weights())
    back = WeightTable.from_json(t.to_json())
    assert back.to_json() == t.to_json()
    assert t.dumps("json") == back.dumps("json")
    assert t.to_tsv().splitlines()[0] == "weight\tdim\tstable"
    assert t.support() == [(Fraction(-1, 2), 2), (1, 0)]
