import itertools
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from toroidal import linalg
from toroidal.algebra_core import sl
from toroidal.finite_reps import (Irrep, exterior_power, gl_irrep, highest_weight_irrep,
                                  restrict_to_sl, standard_rep, trace_twist, trivial_gl,
                                  trivial_rep, weyl_dimension)


def ssyt_count(label):
    """Semistandard tableaux of the partition for ``label`` with entries 1..m."""
    m = len(label) + 1
    shape = [sum(label[i:]) for i in range(len(label))]
    shape = [p for p in shape if p]
    cells = [(r, c) for r, row in enumerate(shape) for c in range(row)]
    count = 0

    def fill(idx, tab):
        nonlocal count
        if idx == len(cells):
            count += 1
            return
        r, c = cells[idx]
        lo = 1
        if c:
            lo = max(lo, tab[(r, c - 1)])
        if r:
            lo = max(lo, tab[(r - 1, c)] + 1)
        for v in range(lo, m + 1):
            tab[(r, c)] = v
            fill(idx + 1, tab)
        tab.pop((r, c), None)

    fill(0, {})
    return count


@pytest.mark.parametrize("label", [(1,), (2,), (5,), (1, 0), (0, 1), (1, 1), (2, 1), (0, 3),
                                   (1, 0, 1), (0, 1, 0), (2, 0, 1)])
def test_weyl_dimension_matches_ssyt(label):
    assert weyl_dimension(label) == ssyt_count(label)


@pytest.mark.parametrize("label,alg", [((2,), "sl2"), ((1, 1), "sl3"), ((3,), "sl2"),
                                       ((2, 1), "sl3"), ((0, 1, 0), "sl4")])
def test_highest_weight_dimension(label, alg):
    rep = highest_weight_irrep(label, alg)
    assert rep.dim == ssyt_count(label)
    assert not rep.relation_failures()
    assert rep.is_irreducible()


def test_adjoint_of_sl3():
    assert highest_weight_irrep((1, 1), "sl3").dim == 8


def test_zero_label_is_trivial():
    rep = highest_weight_irrep((0, 0), "sl3")
    assert rep.dim == 1
    assert all(linalg.is_zero_matrix(rep.matrix(a)) for a in rep.generators())


def test_standard_rep():
    W = standard_rep(2)
    assert W.apply((1, 0), {0: 1}) == {1: 1}
    assert W.identity_scalar() == 1
    assert W.label == (1,)


def test_exterior_powers():
    W = standard_rep(3)
    top = exterior_power(W, 3)
    assert top.dim == 1 and top.identity_scalar() == 3
    zero = exterior_power(W, 0)
    assert zero.dim == 1 and all(linalg.is_zero_matrix(zero.matrix(k)) for k in zero.generators())
    assert exterior_power(W, 2).dim == 3


def test_trace_twist_standard_sl2():
    rep = restrict_to_sl(standard_rep(2))
    E00 = trace_twist(rep, 5).matrix((0, 0))
    assert E00 == [[3, 0], [0, 2]]


def test_trace_twist_zero_on_trivial():
    rep = trace_twist(trivial_rep("sl2"), 0)
    assert all(linalg.is_zero_matrix(rep.matrix(k)) for k in rep.generators())


@pytest.mark.parametrize("k", [1, 2, 3])
def test_trace_twist_recovers_wedge(k):
    wedge = exterior_power(standard_rep(4), k)
    back = trace_twist(restrict_to_sl(wedge), k)
    for key in wedge.generators():
        assert back.matrix(key) == wedge.matrix(key)


GL_REPS = [
    ("W3", lambda: standard_rep(3)),
    ("wedge2 W3", lambda: exterior_power(standard_rep(3), 2)),
    ("V(1/2,(2))", lambda: gl_irrep((2,), Fraction(1, 2))),
    ("V(-1,(1,1))", lambda: gl_irrep((1, 1), -1)),
    ("trivial gl2 c=3", lambda: trivial_gl(2, 3)),
]


@pytest.mark.parametrize("name,make", GL_REPS)
def test_gl_commutation(name, make):
    rep = make()
    m = rep.m
    for (i, j), (k, l) in itertools.product(itertools.product(range(m), repeat=2), repeat=2):
        lhs = linalg.commutator(rep.matrix((i, j)), rep.matrix((k, l)))
        rhs = linalg.zeros(rep.dim)
        if j == k:
            rhs = linalg.matadd(rhs, rep.matrix((i, l)))
        if l == i:
            rhs = linalg.matsub(rhs, rep.matrix((k, j)))
        assert lhs == rhs, (name, i, j, k, l)


@pytest.mark.parametrize("name,make", GL_REPS)
def test_identity_scalar(name, make):
    rep = make()
    total = linalg.zeros(rep.dim)
    for i in range(rep.m):
        total = linalg.matadd(total, rep.matrix((i, i)))
    assert total == linalg.matscale(linalg.identity(rep.dim), rep.c)


def test_commutant_via_sympy():
    rep = highest_weight_irrep((2, 1), "sl3")
    # Schur: the joint commutant of an irreducible module is one-dimensional
    d = rep.dim
    rows = []
    for a in rep.generators():
        M = sympy.Matrix(rep.matrix(a))
        rows.append(sympy.kronecker_product(sympy.eye(d), M) - sympy.kronecker_product(M.T, sympy.eye(d)))
    big = sympy.Matrix.vstack(*rows)
    assert d * d - big.rank() == 1 == rep.commutant_dimension()


def test_json_round_trip():
    rep = gl_irrep((1,), Fraction(2, 3))
    back = Irrep.from_json(rep.to_json())
    assert back.dim == rep.dim and back.c == rep.c
    for key in rep.generators():
        assert back.matrix(key) == rep.matrix(key)


def test_not_dominant():
    with pytest.raises(ValueError):
        highest_weight_irrep((-1,), "sl2")


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 3), st.integers(0, 2))
def test_sl3_dimensions(a, b):
    assert highest_weight_irrep((a, b), sl(3)).dim == ssyt_count((a, b))
