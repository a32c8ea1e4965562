"""Seeded verification suites.

A suite is a list of numbered cases.  Case ``i`` of suite ``s`` under seed
``k`` draws from ``random.Random(f"{s}:{k}:{i}")``, so any single case can be
replayed without running the ones before it.  The first few cases of some
suites are fixed (exhaustive enumerations, known witnesses); the rest are
random.
"""

from __future__ import annotations

import itertools
import random
import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from . import serialize
from .errors import AxiomViolation, InputError, NoSquareRootError
from .gelfand import (BElement, Projector, b_norm, characters, gelfand, gelfand_inverse)
from .measure import (ClopenAlgebra, ProjectionValuedMeasure, StepFunction, measure_norm,
                      n_mu_weight, pvm_eval, scalar_measure, spectral_integral, support)
from .operators import (Operator, add, adjoint_omega, adjoint_pi, apply, check_algebra_axioms,
                        compose, is_self_adjoint, nilpotent_diagonal_witness, op_norm, scale,
                        square_norm_witness, transpose)
from .sampling import (random_belement, random_diagonal, random_kmeasure, random_operator,
                       random_pi, random_pvm, random_scalar, random_space, random_step_function,
                       random_vector)
from .scalar import LogNorm, PadicScalar, hensel_sqrt
from .space import WeightedSpace, f_omega, make_pi_structure, vector_norm
from .theorems import (FiniteRepresentation, eigenrange_check, faithfulness, kernel_basis,
                       multiplication_rep, pvm_from_rep, rep_from_pvm, rep_violations,
                       simultaneous_decompose, spectral_decompose_diagonal)


class CaseFailure(Exception):
    def __init__(self, check: str, data: dict | None = None):
        super().__init__(check)
        self.check = check
        self.data = data or {}


def _enc(x):
    try:
        return serialize.to_json(x)
    except TypeError:
        if isinstance(x, (list, tuple)):
            return [_enc(y) for y in x]
        if isinstance(x, (frozenset, set)):
            return sorted(map(str, x))
        if isinstance(x, (int, str, bool)) or x is None:
            return x
        return str(x)


def expect(cond: bool, check: str, **data) -> None:
    if not cond:
        raise CaseFailure(check, {k: _enc(v) for k, v in data.items()})


@dataclass(frozen=True)
class Context:
    p: int = 5
    precision: int = 16
    dim_max: int = 8


@dataclass(frozen=True)
class Suite:
    id: str
    title: str
    case: Callable  # (ctx, rng, i) -> None, raising CaseFailure
    fixed: int = 0  # leading deterministic cases, always run
    per_sample: int = 1  # random checks performed per case (reporting only)

    def case_count(self, samples: int) -> int:
        return self.fixed + samples


def _dim(rng, ctx, lo=1, hi=None):
    top = ctx.dim_max if hi is None else min(hi, ctx.dim_max)
    return rng.randint(lo, max(lo, top))


def _space(rng, ctx, n, orthonormal=None):
    if orthonormal is None:
        orthonormal = rng.random() < 0.3
    return random_space(rng, n, ctx.p, ctx.precision, orthonormal=orthonormal)


# -- scalar field -------------------------------------------------------------

def _case_valuation(ctx, rng, i):
    p, n = ctx.p, ctx.precision
    for _ in range(10):
        x = random_scalar(rng, p, n, -6, 6, digits=n, zero_prob=0.05)
        mode = rng.random()
        if mode < 0.25 and not x.is_zero():
            # same valuation: the sum may gain valuation through carries
            y = random_scalar(rng, p, n, x.valuation, x.valuation, digits=n)
        elif mode < 0.4 and not x.is_zero():
            # y = -x + p^(v+k) t: heavy cancellation
            k = rng.randint(1, n)
            t = random_scalar(rng, p, n, x.valuation + k, x.valuation + k, digits=2)
            y = t - x
        else:
            y = random_scalar(rng, p, n, -6, 6, digits=n, zero_prob=0.05)
        ax, ay = abs(x), abs(y)
        expect(ax.is_zero == x.is_zero(), "definite", x=x)
        expect(abs(x * y) == ax * ay, "multiplicative", x=x, y=y)
        s = abs(x + y)
        expect(s <= max(ax, ay), "strong-triangle", x=x, y=y)
        if ax != ay:
            expect(s == max(ax, ay), "strict-triangle-equality", x=x, y=y)
        expect(abs(-x) == ax, "symmetric", x=x)
        if not x.is_zero():
            expect(x * x.inverse() == 1, "inverse", x=x)
            expect(x.inverse().valuation == -x.valuation, "inverse-valuation", x=x)


def _case_hensel(ctx, rng, i):
    p, n = ctx.p, ctx.precision
    if p == 2:
        try:
            hensel_sqrt(PadicScalar(1, p, n))
        except InputError:
            return
        raise CaseFailure("p=2 accepted")
    r = random_scalar(rng, p, n, 0, 0, digits=n)
    k = rng.randint(-2, 2)
    a = PadicScalar._raw(r.to_fraction() ** 2 * Fraction(p) ** (2 * k), p, n)
    root = hensel_sqrt(a)
    expect(root * root == a, "square", a=a, root=root)
    nonres = next(t for t in range(2, p) if pow(t, (p - 1) // 2, p) == p - 1)
    try:
        hensel_sqrt(PadicScalar(nonres, p, n))
    except NoSquareRootError:
        pass
    else:
        raise CaseFailure("non-residue accepted", {"a": nonres})


# -- operators ----------------------------------------------------------------

def _case_operator_norms(ctx, rng, i):
    sp = _space(rng, ctx, _dim(rng, ctx))
    u, v = random_operator(rng, sp), random_operator(rng, sp)
    x = random_vector(rng, sp)
    nu, nv = op_norm(u), op_norm(v)
    expect(vector_norm(apply(u, x)) <= nu * vector_norm(x), "apply-bound", u=u, x=x)
    expect(op_norm(compose(u, v)) <= nu * nv, "submultiplicative", u=u, v=v)
    expect(op_norm(add(u, v)) <= max(nu, nv), "ultrametric-sum", u=u, v=v)
    ut = transpose(u)
    expect(transpose(ut) == u, "transpose-involution", u=u)
    expect(transpose(compose(u, v)) == compose(transpose(v), ut), "transpose-product", u=u, v=v)
    one = Operator.identity(sp)
    expect(compose(one, u) == u and compose(u, one) == u, "identity", u=u)
    if sp.is_orthonormal():
        expect(op_norm(ut) == nu, "transpose-norm", u=u)
    # strictly upper triangular words are nilpotent
    n = sp.dim
    t = Operator(sp, [[u.entry(r, c) if c > r else 0 for c in range(n)] for r in range(n)])
    expect((t ** n).is_zero() and nilpotent_diagonal_witness(t), "nilpotent", u=t)


def _case_adjoint_laws(ctx, rng, i):
    sp = _space(rng, ctx, _dim(rng, ctx))
    u, v = random_operator(rng, sp), random_operator(rng, sp)
    lam = random_scalar(rng, ctx.p, ctx.precision)
    us, vs = adjoint_omega(u), adjoint_omega(v)
    expect(op_norm(us) == op_norm(u), "adjoint-isometry", u=u)
    expect(adjoint_omega(us) == u, "adjoint-involution", u=u)
    expect(adjoint_omega(compose(u, v)) == compose(vs, us), "adjoint-product", u=u, v=v)
    expect(adjoint_omega(add(u, scale(lam, v))) == add(us, scale(lam, vs)),
           "adjoint-linear", u=u, v=v, lam=lam)
    if sp.has_unit_weights():
        expect(us == transpose(u), "adjoint-is-transpose", u=u)


def _case_adjoint_oracle(ctx, rng, i):
    sp = _space(rng, ctx, _dim(rng, ctx))
    u = random_operator(rng, sp)
    us = adjoint_omega(u)
    for a in range(sp.dim):
        ea = sp.basis(a)
        ua = apply(u, ea)
        for b in range(sp.dim):
            eb = sp.basis(b)
            lhs = f_omega(ua, eb)
            rhs = f_omega(ea, apply(us, eb))
            expect(lhs.to_fraction() == rhs.to_fraction(), "defining-identity", u=u, i=a, j=b)


def _case_pi(ctx, rng, i):
    sp = _space(rng, ctx, _dim(rng, ctx))
    pi = random_pi(rng, ctx.p, ctx.precision)
    ps = make_pi_structure(sp, pi)
    expect(ps.check_exponents(), "exponent-inequality", space=sp, pi=pi)
    x, y = random_vector(rng, sp), random_vector(rng, sp)
    nx, ny = vector_norm(x), vector_norm(y)
    px, py = ps.norm_pi(x), ps.norm_pi(y)
    a = pi.norm()
    expect(a * px <= nx <= px, "norm-equivalence", x=x, pi=pi)
    fp = abs(ps.f_pi(x, y))
    expect(fp <= px * py, "f-pi-bound", x=x, y=y)
    if not (nx.is_zero or ny.is_zero):
        expect(px * py <= nx * ny / (a * a), "f-pi-bound-weighted", x=x, y=y)
    expect(abs(f_omega(x, y)) <= nx * ny, "f-omega-bound", x=x, y=y)
    expect(abs(f_omega(x, x)) <= nx * nx, "f-omega-square-bound", x=x)
    u = random_operator(rng, sp)
    us = adjoint_pi(u, ps)
    for r in range(sp.dim):
        er = sp.basis(r)
        for c in range(sp.dim):
            ec = sp.basis(c)
            expect(ps.f_pi(apply(u, er), ec).to_fraction()
                   == ps.f_pi(er, apply(us, ec)).to_fraction(), "pi-adjoint-identity",
                   u=u, pi=pi, i=r, j=c)
    expect(adjoint_pi(us, ps) == u, "pi-adjoint-involution", u=u)


def _case_square_norm(ctx, rng, i):
    p = ctx.p if ctx.p % 4 == 1 else 5
    if i == 0:
        u = square_norm_witness(p, ctx.precision)
        expect(is_self_adjoint(u), "witness-self-adjoint", u=u)
        expect(op_norm(u) == LogNorm(0), "witness-norm", u=u)
        expect(op_norm(compose(u, u)) == LogNorm(2), "witness-square-norm", u=u)
        expect(op_norm(compose(transpose(u), u)) == LogNorm(2), "witness-tu-norm", u=u)
        report = check_algebra_axioms([u], samples=20, seed=0)
        expect(not report.E and report.counterexamples.get("E") == u, "E-failure-witness", u=u)
        expect(report.S and report.T, "S-and-T-hold", u=u)
        return
    # diagonal generators over an orthonormal space span an E-algebra
    sp = WeightedSpace.orthonormal(_dim(rng, ctx), ctx.p, ctx.precision)
    gens = [random_diagonal(rng, sp) for _ in range(rng.randint(1, 3))]
    report = check_algebra_axioms(gens, samples=5, seed=rng.randrange(1 << 30))
    expect(report.E and report.S and report.T, "diagonal-E-algebra",
           generators=gens, failure=report.to_json())


# -- projector algebra and Gelfand -------------------------------------------

def _case_projector_norms(ctx, rng, i):
    sp = _space(rng, ctx, _dim(rng, ctx, lo=1))
    u = random_belement(rng, sp)
    nb = b_norm(u)
    op = u.to_operator()
    expect(op_norm(op) == nb, "b-norm-vs-operator-norm", u=u)
    expect(op_norm(compose(op, op)) == nb * nb, "square-norm", u=u)
    expect(b_norm(u * u) == nb * nb, "square-norm-b", u=u)
    ps = make_pi_structure(sp, random_pi(rng, ctx.p, ctx.precision))
    expect(adjoint_pi(op, ps) == op, "pi-self-adjoint", u=u, pi=ps.pi)
    d = random_diagonal(rng, sp)
    expect(op_norm(compose(d, d)) == op_norm(d) ** 2, "diagonal-square-norm", d=d)
    n = sp.dim
    J = frozenset(j for j in range(n) if rng.random() < 0.5)
    L = frozenset(j for j in range(n) if rng.random() < 0.5)
    pj, pl = Projector(sp, J), Projector(sp, L)
    expect(compose(pj.to_operator(), pl.to_operator()) == Projector(sp, J & L).to_operator(),
           "projector-intersection", J=sorted(J), L=sorted(L))
    expect(add(pj.to_operator(), pj.complement().to_operator()) == Operator.identity(sp),
           "projector-complement", J=sorted(J))
    if J:
        expect(op_norm(pj.to_operator()) == LogNorm.one(), "projector-norm", J=sorted(J))
        expect(adjoint_pi(pj.to_operator(), ps) == pj.to_operator(), "projector-pi-adjoint",
               J=sorted(J))


def _case_gelfand(ctx, rng, i):
    sp = _space(rng, ctx, _dim(rng, ctx))
    u = random_belement(rng, sp)
    v = BElement(sp, u.partition, random_scalar(rng, ctx.p, ctx.precision),
                 [random_scalar(rng, ctx.p, ctx.precision) for _ in u.partition])
    gu, gv = gelfand(u), gelfand(v)
    expect(gelfand_inverse(gu) == u, "round-trip", u=u)
    expect(gu.sup_norm() == b_norm(u), "isometry", u=u)
    expect(gelfand(u * v).values == (gu * gv).values, "multiplicative", u=u, v=v)
    expect(gelfand(u + v).values == (gu + gv).values, "additive", u=u, v=v)
    vals = [val for _, val in characters(u, samples=2, seed=i)]
    expect(tuple(vals) == gu.values, "character-values", u=u)


# -- projection-valued measures ----------------------------------------------

def _diag_pvm(ctx, labels, layout, dim):
    sp = WeightedSpace.orthonormal(dim, ctx.p, ctx.precision)
    alg = ClopenAlgebra.finite(labels)
    table = {lab: Operator.diagonal(sp, [int(layout[k] == lab) for k in range(dim)])
             for lab in labels}
    return ProjectionValuedMeasure(alg, sp, table)


def diag_example(ctx=Context()) -> ProjectionValuedMeasure:
    """X = {a, b}, H = K^3, P(a) = diag(1,1,0), P(b) = diag(0,0,1)."""
    return _diag_pvm(ctx, ["a", "b"], ["a", "a", "b"], 3)


def _fixed_pvms(ctx):
    return [
        diag_example(ctx),
        _diag_pvm(ctx, ["a", "b", "c"], ["a", "b", "c", "a"], 4),
        _diag_pvm(ctx, ["a", "b", "c", "d"], ["a", "c", "c"], 3),  # b and d are P-null
    ]


def _random_algebra(rng, k):
    r = rng.random()
    if k == 4 and r < 0.3:
        return ClopenAlgebra.zp(2, 2)
    if k == 3 and r < 0.3:
        return ClopenAlgebra.zp(3, 1)
    return ClopenAlgebra.finite("abcd"[:k])


def check_pvm_properties(P, f, g, lam, xi, eta_index, eta_vec, rng, exhaustive_pairs):
    alg, sp = P.algebra, P.space
    p, prec = sp.p, sp.precision
    ident = Operator.identity(sp)
    If, Ig = spectral_integral(f, P), spectral_integral(g, P)
    expect(spectral_integral(f + g.scale(lam), P) == add(If, scale(lam, Ig)), "linearity",
           f=f, g=g)
    expect(spectral_integral(f * g, P) == compose(If, Ig), "multiplicativity", f=f, g=g)
    expect(op_norm(If) == f.ess_sup(P), "isometry", f=f, pvm=P)
    sets = list(alg.all_sets())
    evals = {A: pvm_eval(P, A) for A in sets}
    expect(evals[alg.empty].is_zero(), "empty-set", pvm=P)
    expect(evals[alg.universe] == ident, "whole-space", pvm=P)
    for A in sets:
        PA = evals[A]
        expect(add(PA, evals[alg.complement(A)]) == ident, "complement", A=A)
        expect(spectral_integral(StepFunction.indicator(alg, A, p, prec), P) == PA,
               "indicator-integral", A=A)
        expect(compose(PA, If) == compose(If, PA), "commutes", A=A, f=f)
        expect(compose(PA, PA) == PA, "idempotent", A=A)
    pairs = itertools.product(sets, sets) if exhaustive_pairs else \
        [(rng.choice(sets), rng.choice(sets)) for _ in range(6)]
    for A, B in pairs:
        PAB = compose(evals[A], evals[B])
        expect(evals[A & B] == PAB, "intersection", A=A, B=B)
        expect(PAB == compose(evals[B], evals[A]), "intersection-commutes", A=A, B=B)
        if not (A & B):
            expect(PAB.is_zero(), "disjoint-orthogonal", A=A, B=B)
    # integrals agree exactly when the functions agree off P-null atoms
    null = {a for a in alg.atoms if P.is_null(a)}
    one = PadicScalar(1, p, prec)
    for S in sets:
        h = f + StepFunction(alg, [(S, one)])
        same = spectral_integral(h, P) == If
        expect(same == (S <= null), "null-sets", S=S, f=f)
        expect(h.agrees_off_null(f, P) == (S <= null), "null-sets-pointwise", S=S)
    # scalar measures
    mu = scalar_measure(P, xi, eta_index)
    lhs = apply(If, xi)[eta_index]
    rhs = sum((f.value(a, one * 0) * mu.atom_value(a) for a in alg.atoms), one * 0)
    expect(lhs == rhs, "integral-vs-measure", f=f, xi=xi, eta=eta_index)
    total = measure_norm(mu, alg.universe)
    for A in sets:
        expect(measure_norm(mu, A) <= total, "measure-norm-monotone", A=A)
    if not xi.is_zero():
        expect(total <= vector_norm(xi) / sp.basis_norm(eta_index), "measure-norm-bound",
               xi=xi, eta=eta_index)
    mxe = scalar_measure(P, xi, eta_vec)
    mex = scalar_measure(P, eta_vec, xi)
    s = xi + eta_vec
    mss, mxx, mee = (scalar_measure(P, s, s), scalar_measure(P, xi, xi),
                     scalar_measure(P, eta_vec, eta_vec))
    symmetric = all(transpose(op) == op for _, op in P.items())
    for a in alg.atoms:
        left = mss.atom_value(a) - mxx.atom_value(a) - mee.atom_value(a)
        expect(left == mxe.atom_value(a) + mex.atom_value(a), "polarization", atom=a, xi=xi,
               eta=eta_vec)
        if symmetric:
            expect(left == 2 * mxe.atom_value(a), "polarization-symmetric", atom=a)
    expect(support(P) == frozenset(alg.atoms) - null, "support", pvm=P)


def _case_spectral_integral(ctx, rng, i):
    p, prec = ctx.p, ctx.precision
    if i < 3:
        P = _fixed_pvms(ctx)[i]
        alg = P.algebra
        f = StepFunction.from_atom_values(alg, {a: PadicScalar(v, p, prec)
                                                for a, v in zip(alg.atoms, [2, 7, 5, 1])})
        exhaustive = True
    else:
        alg = _random_algebra(rng, rng.randint(2, 4))
        sp = _space(rng, ctx, _dim(rng, ctx, hi=6), orthonormal=rng.random() < 0.6)
        P = random_pvm(rng, alg, sp)
        f = random_step_function(rng, alg, p, prec)
        exhaustive = False
    sp = P.space
    g = random_step_function(rng, alg, p, prec)
    lam = random_scalar(rng, p, prec)
    xi = random_vector(rng, sp)
    eta_vec = random_vector(rng, sp)
    eta_index = rng.randrange(sp.dim)
    check_pvm_properties(P, f, g, lam, xi, eta_index, eta_vec, rng, exhaustive)


# -- representations ----------------------------------------------------------

def enumerate_two_atom(ctx, entries=(0, 1)):
    """All valid pvms and all valid representations on {a, b} over K^2."""
    sp = WeightedSpace.orthonormal(2, ctx.p, ctx.precision)
    alg = ClopenAlgebra.finite(["a", "b"])
    mats = [Operator(sp, [[w, x], [y, z]]) for w, x, y, z in itertools.product(entries, repeat=4)]
    pvms, reps = [], []
    for A, B in itertools.product(mats, repeat=2):
        table = {"a": A, "b": B}
        try:
            pvms.append(ProjectionValuedMeasure(alg, sp, table))
        except AxiomViolation:
            pass
        T = FiniteRepresentation(alg, sp, table, validate=False)
        if not rep_violations(T):
            reps.append(T)
    return alg, sp, pvms, reps


def _case_stone(ctx, rng, i):
    p, prec = ctx.p, ctx.precision
    if i == 0:
        alg, sp, pvms, reps = enumerate_two_atom(ctx)
        expect(len(pvms) > 0 and len(pvms) == len(reps), "enumeration-sizes",
               pvms=len(pvms), reps=len(reps))
        for P in pvms:
            expect(pvm_from_rep(rep_from_pvm(P)) == P, "pvm-round-trip", pvm=P)
        for T in reps:
            expect(rep_from_pvm(pvm_from_rep(T)) == T, "rep-round-trip", rep=T)
        f = StepFunction.from_atom_values(alg, {"a": PadicScalar(2, p, prec),
                                                "b": PadicScalar(7, p, prec)})
        seen = {}
        for P in pvms:
            key = spectral_integral(f, P)
            expect(key not in seen, "uniqueness", first=seen.get(key), second=P)
            seen[key] = P
        return
    alg = _random_algebra(rng, rng.randint(1, 4))
    sp = _space(rng, ctx, _dim(rng, ctx, hi=6), orthonormal=rng.random() < 0.6)
    P = random_pvm(rng, alg, sp)
    T = rep_from_pvm(P)
    expect(not rep_violations(T), "rep-valid", pvm=P)
    expect(pvm_from_rep(T) == P, "pvm-round-trip", pvm=P)
    expect(rep_from_pvm(pvm_from_rep(T)) == T, "rep-round-trip", pvm=P)
    f = random_step_function(rng, alg, p, prec)
    g = random_step_function(rng, alg, p, prec)
    expect(T(f * g) == compose(T(f), T(g)), "rep-multiplicative", f=f, g=g, pvm=P)
    expect(T(f) == spectral_integral(f, P), "rep-is-integral", f=f, pvm=P)
    ones = StepFunction(alg, [(alg.universe, PadicScalar(1, p, prec))])
    expect(T(ones) == Operator.identity(sp), "rep-unital", pvm=P)


def _decomposition_checks(b, d, omegas):
    P = d.pvm
    expect(d.reconstruct() == b, "reconstruction", b=b)
    keys = [x.sort_key() for x in d.support]
    expect(keys == sorted(keys) and len(set(keys)) == len(keys), "support-order", b=b)
    for atom in P.algebra.atoms:
        expect(eigenrange_check(b, P, [atom]), "eigenrange", b=b, atom=atom)
    for om in omegas:
        expect(eigenrange_check(b, P, om), "eigenrange-set", b=b, omega=om)


def _case_diagonal(ctx, rng, i):
    p, prec = ctx.p, ctx.precision
    n = _dim(rng, ctx)
    sp = _space(rng, ctx, n)
    if i % 2 == 0:
        pool = [random_scalar(rng, p, prec, zero_prob=0.2) for _ in range(rng.randint(1, 3))]
        b = random_diagonal(rng, sp, pool=pool)
    else:
        b = random_diagonal(rng, sp)
    d = spectral_decompose_diagonal(b)
    alg = d.pvm.algebra
    _decomposition_checks(b, d, [alg.universe, alg.empty])
    distinct = {x.canonical() for x in b.diagonal_values()}
    expect(len(d.support) == len(distinct), "support-size", b=b)
    if i % 5 == 0:
        c = random_diagonal(rng, sp, pool=[random_scalar(rng, p, prec) for _ in range(3)])
        fam = [b, c, compose(b, c), add(b, c)]
        jd = simultaneous_decompose(fam)
        fb, fc, fbc, fsum = jd.functions
        for atom in jd.pvm.algebra.atoms:
            expect(fbc.value(atom) == fb.value(atom) * fc.value(atom), "joint-product",
                   b=b, c=c, atom=atom)
            expect(fsum.value(atom) == fb.value(atom) + fc.value(atom), "joint-sum",
                   b=b, c=c, atom=atom)
        ints = [jd.integral(k) for k in range(4)]
        for k in range(4):
            expect(ints[k] == fam[k], "joint-reconstruction", b=b, c=c, k=k)
        expect(compose(ints[0], ints[1]) == compose(ints[1], ints[0]), "joint-commutative",
               b=b, c=c)


def _case_eigenrange(ctx, rng, i):
    from .linalg import int_matrix_inverse
    from .sampling import _unipotent

    p, prec = ctx.p, ctx.precision
    n = _dim(rng, ctx, hi=6)
    pool = [random_scalar(rng, p, prec, vmin=0, vmax=2, zero_prob=0.2)
            for _ in range(rng.randint(1, 3))]
    if rng.random() < 0.5:
        sp = WeightedSpace.orthonormal(n, p, prec)
        lo, up = _unipotent(rng, n, True), _unipotent(rng, n, False)
        s = [[sum(lo[r][t] * up[t][c] for t in range(n)) for c in range(n)] for r in range(n)]
        S, Si = Operator(sp, s), Operator(sp, int_matrix_inverse(s))
        D = random_diagonal(rng, sp, pool=pool)
        b = compose(compose(S, D), Si)
        d = spectral_decompose_diagonal(b, basis=S)
    else:
        sp = _space(rng, ctx, n)
        b = random_diagonal(rng, sp, pool=pool)
        d = spectral_decompose_diagonal(b)
    alg = d.pvm.algebra
    om = frozenset(a for a in alg.atoms if rng.random() < 0.5)
    _decomposition_checks(b, d, [alg.universe, alg.empty, om])


def _case_multiplication(ctx, rng, i):
    p, prec = ctx.p, ctx.precision
    k = rng.randint(1, 5)
    alg = ClopenAlgebra.finite("abcde"[:k])
    mu = random_kmeasure(rng, alg, p, prec, zero_prob=0.2)
    if all(mu.atom_value(a).is_zero() for a in alg.atoms):
        mu = random_kmeasure(rng, alg, p, prec)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        M = multiplication_rep(mu)
    for a in M.algebra.atoms:
        idx = M.algebra.index(a)
        expect(M.weights[a] == abs(mu.atom_value(a)) == n_mu_weight(mu, a), "n-mu", mu=mu)
        expect(M.space.basis_norm(idx) == M.weights[a], "basis-norm-is-n-mu", mu=mu)
    fvec = random_vector(rng, M.space)
    expect(M.check_spectral_measure([fvec]), "spectral-measure", mu=mu, f=fvec)
    ahat = random_step_function(rng, M.algebra, p, prec)
    expect(M.check_bound(ahat, fvec), "multiplier-bound", mu=mu, f=fvec, ahat=ahat)
    g = M.multiply(ahat, fvec)
    zero = PadicScalar(0, p, prec)
    for a in M.algebra.atoms:
        idx = M.algebra.index(a)
        expect(g[idx] == ahat.value(a, zero) * fvec[idx], "pointwise", mu=mu, atom=a)


def _zeroed_rep(ctx, layout_dim, Z):
    """3-atom representation with the atoms in Z sent to 0 (their mass moves elsewhere)."""
    labels = ["a", "b", "c"]
    keep = [a for a in labels if a not in Z]
    layout = [labels[k % 3] for k in range(layout_dim)]
    layout = [a if a in keep else keep[0] for a in layout]
    P = _diag_pvm(ctx, labels, layout, layout_dim)
    return rep_from_pvm(P)


def _case_faithfulness(ctx, rng, i):
    p, prec = ctx.p, ctx.precision
    if i == 0:
        atoms = ["a", "b", "c"]
        for dim in (3, 4):
            for r in range(3):  # zeroing all three atoms cannot be unital
                for Z in itertools.combinations(atoms, r):
                    T = _zeroed_rep(ctx, dim, set(Z))
                    faithful = faithfulness(T)
                    expect(faithful == (not Z), "faithful-iff-full-support", zeroed=list(Z))
                    expect(support(pvm_from_rep(T)) == frozenset(atoms) - set(Z), "support",
                           zeroed=list(Z))
                    for z in Z:
                        ch = StepFunction.indicator(T.algebra, {z}, p, prec)
                        expect(T(ch).is_zero(), "indicator-in-kernel", zeroed=list(Z), atom=z)
                    expect(len(kernel_basis(T)) == len(Z), "kernel-dimension", zeroed=list(Z))
        return
    alg = _random_algebra(rng, rng.randint(1, 4))
    sp = _space(rng, ctx, _dim(rng, ctx, hi=6), orthonormal=rng.random() < 0.6)
    P = random_pvm(rng, alg, sp)
    T = rep_from_pvm(P)
    expect(faithfulness(T) == (support(P) == alg.universe), "faithful-iff-full-support", pvm=P)


SUITES = [
    Suite("valuation-axioms", "valuation axioms on random pairs", _case_valuation,
          per_sample=10),
    Suite("hensel-sqrt", "Hensel square roots", _case_hensel),
    Suite("operator-norm-laws", "operator norm, transpose and nilpotents",
          _case_operator_norms),
    Suite("adjoint-laws", "adjoint isometry and involution laws",
          _case_adjoint_laws),
    Suite("adjoint-oracle", "adjoint formula vs bilinear identity", _case_adjoint_oracle),
    Suite("pi-structure", "pi-norms, f_pi bounds and f_pi adjoints", _case_pi),
    Suite("square-norm-counterexample",
          "self-adjoint u with ||u^2|| < ||u||^2", _case_square_norm, fixed=1),
    Suite("projector-algebra-norms", "projector algebra norms",
          _case_projector_norms),
    Suite("gelfand-isometry", "Gelfand transform on the projector algebra", _case_gelfand),
    Suite("spectral-integral", "projection-valued measures and integrals",
          _case_spectral_integral, fixed=3),
    Suite("stone-roundtrip", "representation <-> measure round trips",
          _case_stone, fixed=1),
    Suite("diagonal-decomposition", "diagonal spectral decomposition",
          _case_diagonal),
    Suite("eigenrange", "eigenspaces are measure ranges", _case_eigenrange),
    Suite("multiplication-rep", "multiplication representations",
          _case_multiplication),
    Suite("faithfulness", "faithful iff full support", _case_faithfulness,
          fixed=1),
]

REGISTRY = {s.id: s for s in SUITES}


def resolve(name: str) -> list[Suite]:
    if name == "all":
        return sorted(SUITES, key=lambda s: s.id)
    if name not in REGISTRY:
        raise InputError(f"unknown suite {name!r}")
    return [REGISTRY[name]]


def run_case(suite: Suite, ctx: Context, seed: int, i: int):
    """None on success, else a counterexample dict."""
    rng = random.Random(f"{suite.id}:{seed}:{i}")
    try:
        suite.case(ctx, rng, i)
    except CaseFailure as exc:
        return {"case": i, "check": exc.check, "data": exc.data}
    except AssertionError as exc:
        return {"case": i, "check": "internal-assertion", "data": {"message": str(exc)}}
    return None


def run_suite(suite: Suite, ctx: Context, seed: int, samples: int,
              case: int | None = None) -> dict:
    cases = [case] if case is not None else range(suite.case_count(samples))
    failure = None
    ran = 0
    for i in cases:
        ran += 1
        failure = run_case(suite, ctx, seed, i)
        if failure is not None:
            break
    return {
        "suite": suite.id,
        "seed": seed,
        "samples": samples,
        "cases_run": ran,
        "p": ctx.p,
        "precision": ctx.precision,
        "passed": failure is None,
        "counterexample": failure,
    }
