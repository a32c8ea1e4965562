import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from padic_spectral import (AxiomViolation, ClopenAlgebra, FiniteRepresentation, InputError,
                            KMeasure, LogNorm, Operator, PadicScalar, StepFunction,
                            UnsupportedError, WeightedSpace, compose, eigenrange_check,
                            faithfulness, multiplication_rep, pvm_from_rep, rep_from_pvm,
                            simultaneous_decompose, spectral_decompose_diagonal,
                            spectral_integral, support, vector_norm)
from padic_spectral.sampling import (random_diagonal, random_kmeasure, random_pvm, random_space,
                                     random_step_function)
from padic_spectral.suites import Context, enumerate_two_atom
from padic_spectral.theorems import kernel_basis

P5, N = 5, 16


def S(q):
    return PadicScalar(q, P5, N)


def as_pair(P):
    return tuple(tuple(tuple(x) for x in P.projector(k).fractions()) for k in ("a", "b"))


# -- Stone correspondence -----------------------------------------------------

def test_two_atom_enumeration_matches_oracle():
    alg, sp, pvms, reps = enumerate_two_atom(Context())
    expected = oracles.two_atom_pvms((0, 1))
    assert len(expected) == 4
    assert {as_pair(P) for P in pvms} == set(expected)
    assert len(reps) == 4
    for P in pvms:
        assert pvm_from_rep(rep_from_pvm(P)) == P
    for T in reps:
        assert rep_from_pvm(pvm_from_rep(T)) == T


@pytest.mark.slow
def test_signed_enumeration_matches_oracle():
    alg, sp, pvms, reps = enumerate_two_atom(Context(), (-1, 0, 1))
    expected = oracles.two_atom_pvms((-1, 0, 1))
    assert len(expected) == 12
    assert {as_pair(P) for P in pvms} == set(expected)
    assert len(reps) == 12


def test_pvm_is_determined_by_its_integral():
    alg, sp, pvms, _ = enumerate_two_atom(Context())
    f = StepFunction.from_atom_values(alg, {"a": S(2), "b": S(7)})
    integrals = [spectral_integral(f, P) for P in pvms]
    assert len(set(integrals)) == len(pvms)


def test_invalid_representation():
    sp = WeightedSpace.orthonormal(2)
    alg = ClopenAlgebra.finite("ab")
    with pytest.raises(AxiomViolation) as info:
        FiniteRepresentation(alg, sp, {"a": Operator.identity(sp), "b": Operator.identity(sp)})
    assert {k for k, _ in info.value.violations} == {"multiplicative", "unital"}
    with pytest.raises(InputError):
        FiniteRepresentation(alg, sp, {"a": Operator.identity(sp)})


@given(st.integers(0, 10 ** 9), st.integers(1, 4), st.integers(1, 5))
def test_round_trip_random(seed, k, dim):
    rng = random.Random(seed)
    alg = ClopenAlgebra.finite("abcd"[:k])
    sp = random_space(rng, dim, P5, N, orthonormal=rng.random() < 0.5)
    P = random_pvm(rng, alg, sp)
    T = rep_from_pvm(P)
    assert pvm_from_rep(T) == P
    assert rep_from_pvm(pvm_from_rep(T)) == T
    f, g = (random_step_function(rng, alg, P5, N) for _ in range(2))
    assert T(f * g) == compose(T(f), T(g))
    assert T(f) == spectral_integral(f, P)


# -- diagonal decomposition ---------------------------------------------------

def test_decompose_example():
    sp = WeightedSpace.orthonormal(3)
    b = Operator.diagonal(sp, [2, 2, 7])
    d = spectral_decompose_diagonal(b)
    assert [x.to_fraction() for x in d.support] == [2, 7]
    assert d.pvm.algebra.atoms == ("2", "7")
    assert d.pvm.projector("2") == Operator.diagonal(sp, [1, 1, 0])
    assert d.reconstruct() == b


def test_decompose_orders_support_by_valuation_then_unit():
    sp = WeightedSpace([1, 5, 1, 1])
    b = Operator.diagonal(sp, [Fraction(1, 5), 25, 3, 0])
    d = spectral_decompose_diagonal(b)
    assert [x.to_fraction() for x in d.support] == [Fraction(1, 5), 3, 25, 0]
    assert d.reconstruct() == b


def test_decompose_merges_entries_equal_at_precision():
    sp = WeightedSpace.orthonormal(2)
    b = Operator.diagonal(sp, [1, 1 + 5 ** 16])
    d = spectral_decompose_diagonal(b)
    assert len(d.support) == 1
    assert d.reconstruct() == b


def test_decompose_with_basis():
    sp = WeightedSpace.orthonormal(2)
    s = Operator(sp, [[1, 1], [0, 1]])
    s_inv = Operator(sp, [[1, -1], [0, 1]])
    b = compose(compose(s, Operator.diagonal(sp, [2, 3])), s_inv)
    d = spectral_decompose_diagonal(b, s)
    assert d.reconstruct() == b
    assert eigenrange_check(b, d.pvm, d.pvm.algebra.universe)
    with pytest.raises(UnsupportedError):
        spectral_decompose_diagonal(b)
    with pytest.raises(InputError):
        spectral_decompose_diagonal(b, Operator(sp, [[1, 1], [1, 1]]))
    with pytest.raises(UnsupportedError):
        spectral_decompose_diagonal(b, Operator.identity(sp))


def test_simultaneous_example():
    sp = WeightedSpace.orthonormal(3)
    b = Operator.diagonal(sp, [2, 2, 7])
    c = Operator.diagonal(sp, [1, 3, 3])
    j = simultaneous_decompose([b, c])
    assert j.pvm.algebra.atoms == ("(2,1)", "(2,3)", "(7,3)")
    assert j.integral(0) == b and j.integral(1) == c
    bc = simultaneous_decompose([compose(b, c), b, c])
    for a in bc.pvm.algebra.atoms:
        t = bc.functions
        assert t[0].value(a) == t[1].value(a) * t[2].value(a)


def test_simultaneous_rejects():
    sp = WeightedSpace.orthonormal(2)
    with pytest.raises(InputError):
        simultaneous_decompose([Operator(sp, [[0, 1], [0, 0]]), Operator.diagonal(sp, [1, 2])])
    with pytest.raises(UnsupportedError):
        simultaneous_decompose([Operator(sp, [[0, 1], [0, 0]]), Operator.identity(sp)])
    with pytest.raises(InputError):
        simultaneous_decompose([])


def test_eigenrange_detects_wrong_measure():
    sp = WeightedSpace.orthonormal(3)
    b = Operator.diagonal(sp, [2, 2, 7])
    d = spectral_decompose_diagonal(b)
    assert eigenrange_check(b, d.pvm, {"2"})
    c = Operator.diagonal(sp, [2, 7, 7])
    assert not eigenrange_check(c, d.pvm, {"2"})


@given(st.integers(0, 10 ** 9), st.integers(1, 6))
def test_decompose_then_integrate(seed, dim):
    rng = random.Random(seed)
    sp = random_space(rng, dim, P5, N)
    pool = [S(x) for x in (0, 1, 5, Fraction(2, 5))] if rng.random() < 0.5 else None
    b = random_diagonal(rng, sp, pool=pool)
    d = spectral_decompose_diagonal(b)
    assert d.reconstruct() == b
    for a in d.pvm.algebra.atoms:
        assert eigenrange_check(b, d.pvm, {a})
    c = random_diagonal(rng, sp, pool=pool)
    j = simultaneous_decompose([b, c, compose(b, c)])
    assert j.integral(0) == b and j.integral(1) == c and j.integral(2) == compose(b, c)


# -- multiplication representation and faithfulness ---------------------------

def test_multiplication_rep_example():
    mu = KMeasure(ClopenAlgebra.finite("xy"), {"x": 5, "y": 1}, P5, N)
    M = multiplication_rep(mu)
    assert [w.to_fraction() for w in M.space.omega] == [25, 1]
    assert M.weights["x"] == LogNorm(1) and M.weights["y"] == LogNorm(0)
    f = M.function({"x": 1, "y": 0})
    assert vector_norm(f) == LogNorm(1)
    assert M.check_spectral_measure()


def test_multiplication_rep_drops_null_atoms():
    mu = KMeasure(ClopenAlgebra.finite("xyz"), {"x": 5, "y": 0, "z": 1}, P5, N)
    with pytest.warns(UserWarning, match="'y'"):
        M = multiplication_rep(mu)
    assert M.algebra.atoms == ("x", "z")
    with pytest.raises(InputError), pytest.warns(UserWarning):
        multiplication_rep(KMeasure(ClopenAlgebra.finite("x"), {"x": 0}, P5, N))


@given(st.integers(0, 10 ** 9), st.integers(1, 5))
def test_multiplication_rep_random(seed, k):
    rng = random.Random(seed)
    alg = ClopenAlgebra.finite("abcde"[:k])
    mu = random_kmeasure(rng, alg, P5, N)
    M = multiplication_rep(mu)
    assert M.check_spectral_measure()
    ahat = M.restrict(random_step_function(rng, alg, P5, N))
    f = M.function({a: S(rng.randint(-30, 30)) for a in M.algebra.atoms})
    assert M.check_bound(ahat, f)
    g = M.multiply(ahat, f)
    for a in M.algebra.atoms:
        i = M.algebra.index(a)
        assert g[i] == ahat.value(a, S(0)) * f[i]


def _rep(layout, labels="abc"):
    sp = WeightedSpace.orthonormal(len(layout))
    alg = ClopenAlgebra.finite(labels)
    return FiniteRepresentation(alg, sp, {a: Operator.diagonal(sp, [int(x == a) for x in layout])
                                          for a in labels})


def test_faithfulness_examples():
    assert faithfulness(_rep("abc"))
    T = _rep("aac")
    assert not faithfulness(T)
    assert support(pvm_from_rep(T)) == frozenset("ac")
    (k,) = kernel_basis(T)
    assert k.value("b") is not None and T(k).is_zero()
    assert len(kernel_basis(_rep("aaa"))) == 2
