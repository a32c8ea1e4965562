import itertools
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from padic_spectral import (InputError, LogNorm, Operator, Vector, WeightedSpace,
                            adjoint_omega, adjoint_pi, apply, check_algebra_axioms, compose,
                            f_omega, is_self_adjoint, is_self_adjoint_pi, make_pi_structure,
                            op_norm, square_norm_witness, transpose, vector_norm)
from padic_spectral.operators import add, nilpotent_diagonal_witness, scale
from strategies import operators, space_and, vectors


def fractions_of(u):
    return [list(r) for r in u.fractions()]


def omega_of(sp):
    return [w.to_fraction() for w in sp.omega]


# -- frozen examples ----------------------------------------------------------

def test_column_convention():
    sp = WeightedSpace.orthonormal(2)
    u = Operator(sp, [[1, 2], [3, 4]])
    # u(e_j) = sum_i alpha_ij e_i
    assert apply(u, sp.basis(0)) == Vector(sp, [1, 3])
    assert apply(u, sp.basis(1)) == Vector(sp, [2, 4])
    assert compose(u, u) == Operator(sp, [[7, 10], [15, 22]])


def test_op_norm_example():
    sp = WeightedSpace([1, 5])
    u = Operator(sp, [[0, 1], [0, 0]])  # e_2 -> e_1
    # |1| * ||e_1|| / ||e_2|| = 5^(1/2); oracle gives twice-exponent -1
    assert oracles.op_norm_twice([[0, 1], [0, 0]], [1, 5], 5) == -1
    assert op_norm(u) == LogNorm(Fraction(-1, 2))
    assert str(op_norm(u)) == "p^(1/2)"
    assert op_norm(Operator.zero(sp)).is_zero
    assert op_norm(Operator.identity(sp)) == LogNorm(0)


def test_adjoint_example():
    sp = WeightedSpace([1, 5])
    u = Operator(sp, [[0, 1], [0, 0]])
    ua = adjoint_omega(u)
    assert fractions_of(ua) == [[0, 0], [Fraction(1, 5), 0]]
    assert fractions_of(ua) == oracles.adjoint_brute([[0, 1], [0, 0]], [1, 5])
    assert op_norm(ua) == op_norm(u)


def test_adjoint_is_transpose_for_unit_weights():
    sp = WeightedSpace.orthonormal(3)
    u = Operator(sp, [[1, 2, 0], [0, 5, Fraction(1, 5)], [7, 0, 1]])
    assert adjoint_omega(u) == transpose(u)


def test_adjoint_pi_example():
    sp = WeightedSpace([1, 25])
    ps = make_pi_structure(sp, 5)  # exponents (0, 1)
    u = Operator(sp, [[0, 1], [0, 0]])
    ua = adjoint_pi(u, ps)
    # beta_21 = pi^(2(n_1 - n_2)) alpha_12 = 1/25
    assert fractions_of(ua) == [[0, 0], [Fraction(1, 25), 0]]
    x, y = sp.basis(1), sp.basis(0)
    assert ps.f_pi(apply(u, x), y) == ps.f_pi(x, apply(ua, y))


def test_self_adjoint_examples():
    sp = WeightedSpace([1, 5])
    assert is_self_adjoint(Operator(sp, [[1, 5], [1, 0]]))
    assert not is_self_adjoint(Operator(sp, [[1, 1], [1, 0]]))
    ps = make_pi_structure(WeightedSpace([1, 25]), 5)
    assert is_self_adjoint_pi(Operator(ps.space, [[0, 25], [1, 0]]), ps)
    assert not is_self_adjoint_pi(Operator(ps.space, [[0, 1], [1, 0]]), ps)


def test_square_norm_witness():
    u = square_norm_witness()
    assert is_self_adjoint(u)
    assert op_norm(u) == LogNorm(0)
    assert op_norm(compose(u, u)) == LogNorm(2)
    assert op_norm(compose(transpose(u), u)) == LogNorm(2)
    assert op_norm(compose(u, u)) < op_norm(u) ** 2
    report = check_algebra_axioms([u], samples=10)
    assert not report.E
    assert report.counterexamples["E"] == u
    assert report.S and report.T
    assert report.to_json()["E"] is False


def test_square_norm_witness_needs_root_of_minus_one():
    from padic_spectral import NoSquareRootError

    with pytest.raises(NoSquareRootError):
        square_norm_witness(p=7)


def test_diagonal_algebra_passes_axioms():
    sp = WeightedSpace.orthonormal(3)
    gens = [Operator.diagonal(sp, [1, 5, Fraction(1, 5)]), Operator.diagonal(sp, [2, 0, 3])]
    report = check_algebra_axioms(gens, samples=30, seed=3)
    assert report.T and report.S and report.E


def test_axioms_need_generators():
    with pytest.raises(InputError):
        check_algebra_axioms([])


def test_nilpotent_has_zero_diagonal_image():
    sp = WeightedSpace.orthonormal(3)
    u = Operator(sp, [[0, 1, 2], [0, 0, 3], [0, 0, 0]])
    assert nilpotent_diagonal_witness(u)
    assert (u ** 3).is_zero()
    assert not nilpotent_diagonal_witness(Operator(sp, [[0, 1, 0], [1, 0, 0], [0, 0, 0]]))


def test_operator_validation():
    sp = WeightedSpace.orthonormal(2)
    with pytest.raises(InputError):
        Operator(sp, [[1, 2]])
    with pytest.raises(InputError):
        Operator(sp, [[1, 2], [3]])
    with pytest.raises(InputError):
        compose(Operator.identity(sp), Operator.identity(WeightedSpace([1, 5])))


def test_entries_equal_at_precision_compare_equal():
    sp = WeightedSpace.orthonormal(2)
    a = Operator(sp, [[1, 0], [0, 1]])
    b = Operator(sp, [[1 + 5 ** 16, 0], [0, 1]])
    assert a == b
    assert a != Operator(sp, [[1 + 5 ** 15, 0], [0, 1]])


# -- properties ---------------------------------------------------------------

@given(space_and(operators))
def test_op_norm_matches_oracle(case):
    sp, u = case
    twice = oracles.op_norm_twice(fractions_of(u), omega_of(sp), sp.p)
    n = op_norm(u)
    assert (twice is None and n.is_zero) or n == LogNorm(Fraction(twice, 2))


@given(space_and(operators))
def test_op_norm_is_attained_on_basis(case):
    sp, u = case
    ratios = [vector_norm(apply(u, sp.basis(j))) / sp.basis_norm(j) for j in range(sp.dim)]
    assert op_norm(u) == max(ratios)


@given(space_and(operators, 2))
def test_op_norm_submultiplicative(case):
    _, u, v = case
    assert op_norm(compose(u, v)) <= op_norm(u) * op_norm(v)
    assert op_norm(add(u, v)) <= max(op_norm(u), op_norm(v))


@given(space_and(operators))
def test_adjoint_matches_brute_force(case):
    sp, u = case
    assert fractions_of(adjoint_omega(u)) == oracles.adjoint_brute(fractions_of(u), omega_of(sp))


@given(space_and(operators))
def test_adjoint_defining_identity(case):
    sp, u = case
    ua = adjoint_omega(u)
    for i, j in itertools.product(range(sp.dim), repeat=2):
        ei, ej = sp.basis(i), sp.basis(j)
        assert f_omega(apply(u, ei), ej) == f_omega(ei, apply(ua, ej))


@given(space_and(operators, 2), st.fractions(max_denominator=25))
def test_adjoint_laws(case, lam):
    _, u, v = case
    ua, va = adjoint_omega(u), adjoint_omega(v)
    assert op_norm(ua) == op_norm(u)
    assert adjoint_omega(ua) == u
    assert adjoint_omega(compose(u, v)) == compose(va, ua)
    assert adjoint_omega(add(u, scale(lam, v))) == add(ua, scale(lam, va))


@given(space_and(operators), st.sampled_from([5, 25, Fraction(5, 2)]))
def test_adjoint_pi_identity(case, pi):
    sp, u = case
    ps = make_pi_structure(sp, pi)
    ua = adjoint_pi(u, ps)
    assert adjoint_pi(ua, ps) == u
    for i, j in itertools.product(range(sp.dim), repeat=2):
        ei, ej = sp.basis(i), sp.basis(j)
        assert ps.f_pi(apply(u, ei), ej) == ps.f_pi(ei, apply(ua, ej))


@given(space_and(lambda sp: st.tuples(operators(sp), vectors(sp))))
def test_apply_bounded(case):
    _, (u, x) = case
    assert vector_norm(apply(u, x)) <= op_norm(u) * vector_norm(x)
