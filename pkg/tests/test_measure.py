import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from padic_spectral import (AxiomViolation, ClopenAlgebra, InputError, KMeasure, LogNorm,
                            Operator, PadicScalar, StepFunction, Vector,
                            WeightedSpace, apply, compose, is_regular, measure_norm, n_mu_weight,
                            op_norm, pvm_eval, pvm_new, scalar_measure, spectral_integral,
                            support, vector_norm)
from padic_spectral.measure import measure_norm_bruteforce
from padic_spectral.operators import add, scale
from padic_spectral.sampling import (random_kmeasure, random_pvm, random_space,
                                     random_step_function, random_vector)

P5, N = 5, 16


def S(q):
    return PadicScalar(q, P5, N)


def diag_example():
    sp = WeightedSpace.orthonormal(3)
    alg = ClopenAlgebra.finite(["a", "b"])
    return pvm_new(alg, sp, {"a": Operator.diagonal(sp, [1, 1, 0]),
                             "b": Operator.diagonal(sp, [0, 0, 1])})


def test_clopen_algebra_basics():
    alg = ClopenAlgebra.finite("abc")
    assert len(list(alg.all_sets())) == 8
    assert alg.complement(frozenset("a")) == frozenset("bc")
    with pytest.raises(InputError):
        alg.set({"z"})
    with pytest.raises(InputError):
        ClopenAlgebra.finite(["a", "a"])
    with pytest.raises(InputError):
        ClopenAlgebra.finite([])


def test_zp_balls():
    alg = ClopenAlgebra.zp(2, 2)
    assert alg.atoms == (0, 1, 2, 3)
    assert alg.ball(1, 1) == frozenset({1, 3})
    assert alg.ball(0, 0) == alg.universe
    assert alg.ball(2, 2) == frozenset({2})
    with pytest.raises(InputError):
        alg.ball(0, 3)
    with pytest.raises(InputError):
        ClopenAlgebra.finite("ab").ball(0, 1)


def test_diag_example_integral():
    P = diag_example()
    f = StepFunction.from_atom_values(P.algebra, {"a": S(2), "b": S(7)})
    assert spectral_integral(f, P) == Operator.diagonal(P.space, [2, 2, 7])
    assert op_norm(spectral_integral(f, P)) == f.sup_norm() == LogNorm(0)
    assert pvm_eval(P, {"a", "b"}) == Operator.identity(P.space)
    assert P(set()).is_zero()
    assert support(P) == frozenset({"a", "b"})
    assert is_regular(P)


def test_pvm_violations_carry_witnesses():
    sp = WeightedSpace.orthonormal(2)
    alg = ClopenAlgebra.finite(["a", "b"])
    with pytest.raises(AxiomViolation) as info:
        pvm_new(alg, sp, {"a": Operator.diagonal(sp, [Fraction(1, 5), 0]),
                          "b": Operator.diagonal(sp, [1, 1])})
    kinds = {k for k, _ in info.value.violations}
    assert kinds == {"idempotent", "contractive", "orthogonal", "complete"}
    assert ("idempotent", ["a"]) in info.value.violations
    assert ("orthogonal", ["a", "b"]) in info.value.violations


def test_non_contractive_idempotents_are_rejected():
    # idempotent, orthogonal and complete, but ||P(a)|| = 5 > 1
    sp = WeightedSpace.orthonormal(2)
    alg = ClopenAlgebra.finite(["a", "b"])
    A = Operator(sp, [[1, Fraction(1, 5)], [0, 0]])
    B = Operator(sp, [[0, Fraction(-1, 5)], [0, 1]])
    assert compose(A, A) == A and compose(A, B).is_zero() and compose(B, A).is_zero()
    with pytest.raises(AxiomViolation) as info:
        pvm_new(alg, sp, {"a": A, "b": B})
    assert {k for k, _ in info.value.violations} == {"contractive"}


def test_pvm_table_mismatch():
    sp = WeightedSpace.orthonormal(1)
    with pytest.raises(InputError):
        pvm_new(ClopenAlgebra.finite("ab"), sp, {"a": Operator.identity(sp)})


def test_step_function_rules():
    alg = ClopenAlgebra.finite("abc")
    with pytest.raises(InputError):
        StepFunction(alg, [({"a", "b"}, S(1)), ({"b"}, S(2))])
    f = StepFunction(alg, [({"a", "b"}, S(5))])
    g = StepFunction(alg, [({"b", "c"}, S(2))])
    assert (f + g).value("b") == S(7)
    assert (f * g).value("b") == S(10)
    assert (f * g).value("a") == S(0)
    assert f.sup_norm() == LogNorm(1)
    assert StepFunction(alg, []).sup_norm().is_zero


def test_null_atoms_and_ess_sup():
    sp = WeightedSpace.orthonormal(2)
    alg = ClopenAlgebra.finite("abc")
    P = pvm_new(alg, sp, {"a": Operator.diagonal(sp, [1, 0]), "b": Operator.diagonal(sp, [0, 1]),
                          "c": Operator.zero(sp)})
    f = StepFunction.from_atom_values(alg, {"a": S(5), "b": S(25), "c": S(Fraction(1, 5))})
    assert support(P) == frozenset("ab")
    assert f.sup_norm() == LogNorm(-1)
    assert f.ess_sup(P) == LogNorm(1)
    assert op_norm(spectral_integral(f, P)) == f.ess_sup(P)
    g = StepFunction.from_atom_values(alg, {"a": S(5), "b": S(25)})
    assert f.agrees_off_null(g, P)
    assert spectral_integral(f, P) == spectral_integral(g, P)


def test_scalar_measure_example():
    P = diag_example()
    xi = Vector(P.space, [1, 2, 3])
    mu = scalar_measure(P, xi, 1)
    assert mu.atom_value("a") == S(2) and mu.atom_value("b") == S(0)
    mu2 = scalar_measure(P, xi, Vector(P.space, [1, 1, 5]))
    assert mu2.atom_value("a") == S(3) and mu2.atom_value("b") == S(15)
    with pytest.raises(InputError):
        scalar_measure(P, xi, 3)


def test_measure_norm_examples():
    alg = ClopenAlgebra.finite("xy")
    mu = KMeasure(alg, {"x": 5, "y": 1}, P5, N)
    assert str(n_mu_weight(mu, "x")) == "p^(-1)"
    assert str(n_mu_weight(mu, "y")) == "p^(0)"
    assert measure_norm(mu, alg.universe) == LogNorm(0)
    # mu(X) = 0 while ||X||_mu = 1
    nu = KMeasure(ClopenAlgebra.finite("abc"), {"a": 1, "b": -1, "c": 5}, P5, N)
    assert nu({"a", "b"}).is_zero()
    assert measure_norm(nu, {"a", "b"}) == LogNorm(0)
    assert measure_norm_bruteforce(nu, {"a", "b", "c"}) == LogNorm(0)


def _random_setup(seed, k, dim):
    rng = random.Random(seed)
    alg = ClopenAlgebra.finite("abcd"[:k])
    sp = random_space(rng, dim, P5, N, orthonormal=rng.random() < 0.5)
    return rng, alg, random_pvm(rng, alg, sp)


setup = st.tuples(st.integers(0, 10 ** 9), st.integers(1, 4), st.integers(1, 5))


@given(setup)
def test_random_pvm_axioms(args):
    rng, alg, P = _random_setup(*args)
    ident = Operator.identity(P.space)
    for A, B in itertools.product(alg.all_sets(), repeat=2):
        PA, PB = P(A), P(B)
        assert compose(PA, PB) == P(A & B)
        assert add(PA, P(alg.complement(A))) == ident
        assert op_norm(PA) <= LogNorm.one()


@given(setup)
def test_integral_is_isometric_homomorphism(args):
    rng, alg, P = _random_setup(*args)
    f = random_step_function(rng, alg, P5, N)
    g = random_step_function(rng, alg, P5, N)
    lam = S(Fraction(rng.randint(1, 30), 5))
    If, Ig = spectral_integral(f, P), spectral_integral(g, P)
    assert spectral_integral(f * g, P) == compose(If, Ig)
    assert spectral_integral(f + g.scale(lam), P) == add(If, scale(lam, Ig))
    assert op_norm(If) == f.ess_sup(P)
    for A in alg.all_sets():
        assert compose(P(A), If) == compose(If, P(A))


@given(setup)
def test_scalar_measures(args):
    rng, alg, P = _random_setup(*args)
    xi = random_vector(rng, P.space)
    eta = random_vector(rng, P.space)
    f = random_step_function(rng, alg, P5, N)
    j = rng.randrange(P.space.dim)
    mu = scalar_measure(P, xi, j)
    lhs = apply(spectral_integral(f, P), xi)[j]
    rhs = sum((f.value(a, S(0)) * mu.atom_value(a) for a in alg.atoms), S(0))
    assert lhs == rhs
    if not xi.is_zero():
        assert measure_norm(mu, alg.universe) <= vector_norm(xi) / P.space.basis_norm(j)
    s = xi + eta
    m = {k: scalar_measure(P, *k) for k in [(s, s), (xi, xi), (eta, eta), (xi, eta), (eta, xi)]}
    for a in alg.atoms:
        left = m[s, s].atom_value(a) - m[xi, xi].atom_value(a) - m[eta, eta].atom_value(a)
        assert left == m[xi, eta].atom_value(a) + m[eta, xi].atom_value(a)


@given(st.integers(0, 10 ** 9), st.integers(1, 6))
def test_measure_norm_shortcut_vs_enumeration(seed, k):
    rng = random.Random(seed)
    alg = ClopenAlgebra.finite("abcdef"[:k])
    mu = random_kmeasure(rng, alg, P5, N, zero_prob=0.2)
    for A in alg.all_sets():
        assert measure_norm(mu, A, cross_check=False) == measure_norm_bruteforce(mu, A)
    for a in alg.atoms:
        assert n_mu_weight(mu, a) == abs(mu.atom_value(a))
