"""Representations of finite function algebras and their spectral measures.

A representation of the step functions on a finite X is determined by the
images T(Ch_a) of the atom indicators; the measure it defines has
P(a) = T(Ch_a), read off through the scalar measures
mu_{e_j, e_i}(a) = e_i*(T(Ch_a) e_j).
"""

from __future__ import annotations

import itertools
import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .errors import AxiomViolation, InputError, UnsupportedError
from .linalg import int_rank, inverse, nullspace
from .measure import (ClopenAlgebra, KMeasure, ProjectionValuedMeasure, StepFunction,
                      n_mu_weight, pvm_eval, spectral_integral, support)
from .operators import Operator, add, apply, compose, op_norm, scale
from .scalar import LogNorm, PadicScalar
from .space import Vector, WeightedSpace, vector_norm


class FiniteRepresentation:
    """f -> T_f = sum_a f(a) T(Ch_a), validated on construction."""

    __slots__ = ("algebra", "space", "_table")

    def __init__(self, algebra: ClopenAlgebra, space: WeightedSpace, table: Mapping,
                 validate: bool = True):
        if set(table) != set(algebra.atoms):
            raise InputError("representation table must list every atom exactly once")
        for op in table.values():
            space.check_same(op.space)
        self.algebra = algebra
        self.space = space
        self._table = tuple(table[a] for a in algebra.atoms)
        if validate:
            bad = rep_violations(self)
            if bad:
                raise AxiomViolation(bad)

    def image(self, atom) -> Operator:
        return self._table[self.algebra.index(atom)]

    def items(self):
        return zip(self.algebra.atoms, self._table)

    def __call__(self, f: StepFunction) -> Operator:
        if f.algebra != self.algebra:
            raise InputError("step function over a different algebra")
        total = Operator.zero(self.space)
        for a, op in self.items():
            v = f.value(a)
            if v is not None and not v.is_zero():
                total = add(total, scale(v, op))
        return total

    def __eq__(self, other) -> bool:
        if not isinstance(other, FiniteRepresentation):
            return NotImplemented
        return (self.algebra == other.algebra and self.space == other.space
                and self._table == other._table)

    def __hash__(self) -> int:
        return hash((self.algebra, self._table))


def rep_violations(T: FiniteRepresentation) -> list:
    out = []
    atoms, table = T.algebra.atoms, T._table
    zero = Operator.zero(T.space)
    for (i, a), (j, b) in itertools.product(enumerate(atoms), repeat=2):
        if j < i:
            continue
        # Ch_a Ch_b = Ch_a when a == b and 0 otherwise
        want = table[i] if i == j else zero
        if compose(table[i], table[j]) != want or compose(table[j], table[i]) != want:
            out.append(("multiplicative", [a, b]))
    total = zero
    for op in table:
        total = add(total, op)
    if total != Operator.identity(T.space):
        out.append(("unital", list(atoms)))
    one = LogNorm.one()
    for a, op in zip(atoms, table):
        if op_norm(op) > one:
            out.append(("contractive", [a]))
    return out


def rep_from_pvm(P: ProjectionValuedMeasure) -> FiniteRepresentation:
    """T_f is the spectral integral of f; on indicators T(Ch_a) = P(a)."""
    return FiniteRepresentation(P.algebra, P.space, dict(P.items()), validate=False)


def pvm_from_rep(T: FiniteRepresentation) -> ProjectionValuedMeasure:
    n = T.space.dim
    basis = [T.space.basis(j) for j in range(n)]
    table = {}
    for a, op in T.items():
        cols = [apply(op, e) for e in basis]  # T(Ch_a) e_j
        # entry (i, j) is mu_{e_j, e_i}(a)
        table[a] = Operator(T.space, [[cols[j][i] for j in range(n)] for i in range(n)])
    return ProjectionValuedMeasure(T.algebra, T.space, table)


# -- diagonal spectral decomposition -----------------------------------------

@dataclass
class SpectralDecomposition:
    support: list
    pvm: ProjectionValuedMeasure

    def identity_function(self) -> StepFunction:
        """x -> x on the support."""
        return StepFunction.from_atom_values(self.pvm.algebra,
                                             dict(zip(self.pvm.algebra.atoms, self.support)))

    def reconstruct(self) -> Operator:
        return spectral_integral(self.identity_function(), self.pvm)


def _level_sets(keys):
    groups = {}
    for i, k in enumerate(keys):
        groups.setdefault(k, []).append(i)
    return groups


def _scalar_label(x: PadicScalar) -> str:
    return str(x)


def _diag_projector(space, idx):
    return Operator.diagonal(space, [int(i in idx) for i in range(space.dim)])


def spectral_decompose_diagonal(b: Operator, basis: Operator | None = None
                                ) -> SpectralDecomposition:
    """Support Sp(b) and the level-set measure with b = integral of x dP.

    ``basis`` (columns are eigenvectors) handles diagonalizable b: the
    level sets are computed for S^-1 b S and conjugated back.  Entries equal
    at working precision share one atom.  Support values are sorted by
    (valuation, unit).
    """
    space = b.space
    if basis is not None:
        space.check_same(basis.space)
        try:
            s_inv_rows = inverse(basis.fractions())
        except ZeroDivisionError:
            raise InputError("basis matrix is singular") from None
        s_inv = Operator(space, s_inv_rows)
        d = compose(compose(s_inv, b), basis)
        if not d.is_diagonal():
            raise UnsupportedError("the supplied basis does not diagonalize the operator")
    else:
        if not b.is_diagonal():
            raise UnsupportedError("non-diagonal operator without an eigenbasis")
        d = b
    values = d.diagonal_values()
    groups = _level_sets([v.canonical() for v in values])
    reps = sorted((values[idx[0]] for idx in groups.values()), key=lambda v: v.sort_key())
    labels = [_scalar_label(v) for v in reps]
    algebra = ClopenAlgebra.finite(labels)
    table = {}
    for lab, v in zip(labels, reps):
        proj = _diag_projector(space, set(groups[v.canonical()]))
        if basis is not None:
            proj = compose(compose(basis, proj), s_inv)
        table[lab] = proj
    return SpectralDecomposition(reps, ProjectionValuedMeasure(algebra, space, table))


@dataclass
class JointDecomposition:
    points: list
    pvm: ProjectionValuedMeasure
    functions: list

    def integral(self, k: int) -> Operator:
        return spectral_integral(self.functions[k], self.pvm)


def simultaneous_decompose(ops: Sequence[Operator]) -> JointDecomposition:
    """Joint level sets of commuting diagonal operators.

    Atoms are the distinct tuples (b_1[i], ..., b_g[i]); f_k reads the k-th
    coordinate, so the integral of f_k is b_k.
    """
    if not ops:
        raise InputError("need at least one operator")
    space = ops[0].space
    for u in ops:
        space.check_same(u.space)
    for (i, u), (j, v) in itertools.combinations(enumerate(ops), 2):
        if compose(u, v) != compose(v, u):
            raise InputError(f"operators {i} and {j} do not commute")
    for i, u in enumerate(ops):
        if not u.is_diagonal():
            raise UnsupportedError(f"operator {i} is not diagonal")
    diags = [u.diagonal_values() for u in ops]
    tuples = [tuple(d[i] for d in diags) for i in range(space.dim)]
    groups = _level_sets([tuple(x.canonical() for x in t) for t in tuples])
    reps = sorted((tuples[idx[0]] for idx in groups.values()),
                  key=lambda t: tuple(x.sort_key() for x in t))
    labels = ["(" + ",".join(_scalar_label(x) for x in t) + ")" for t in reps]
    algebra = ClopenAlgebra.finite(labels)
    table = {lab: _diag_projector(space, set(groups[tuple(x.canonical() for x in t)]))
             for lab, t in zip(labels, reps)}
    P = ProjectionValuedMeasure(algebra, space, table)
    functions = [StepFunction.from_atom_values(algebra, {lab: t[k] for lab, t in zip(labels, reps)})
                 for k in range(len(ops))]
    return JointDecomposition(reps, P, functions)


def _atom_value(P: ProjectionValuedMeasure, atom) -> PadicScalar:
    return PadicScalar(Fraction(str(atom)), P.space.p, P.space.precision)


def eigenrange_check(b: Operator, P: ProjectionValuedMeasure, omega) -> bool:
    """range P(Omega) equals the sum of the eigenspaces ker(b - lambda), lambda in Omega.

    Atom labels of P are the eigenvalues (as produced by
    spectral_decompose_diagonal).  Per atom: b P = lambda P, rank P(lambda)
    equals dim ker(b - lambda), and no basis vector outside range P(lambda)
    is a lambda-eigenvector.
    """
    omega = P.algebra.set(omega)
    space = b.space
    n = space.dim
    ident = Operator.identity(space)
    total_rank = 0
    for atom in P.algebra.sorted(omega):
        lam = _atom_value(P, atom)
        proj = P.projector(atom)
        shifted = add(b, scale(-lam, ident))
        if not compose(shifted, proj).is_zero():
            return False
        r = int_rank(proj._num)
        if r != n - int_rank(shifted._num):
            return False
        for i in range(n):
            e = space.basis(i)
            if apply(proj, e) != e and apply(shifted, e).is_zero():
                return False
        total_rank += r
    return int_rank(pvm_eval(P, omega)._num) == total_rank


# -- multiplication representation -------------------------------------------

@dataclass
class MultiplicationRep:
    """Pointwise multiplication on functions X -> K weighted by N_mu.

    ``space`` has one basis vector per non-null atom with omega_x = mu(x)^2,
    so ||e_x|| = N_mu(x) and ||f|| = max_x |f(x)| N_mu(x).
    """

    measure: KMeasure
    algebra: ClopenAlgebra
    space: WeightedSpace
    weights: dict
    rep: FiniteRepresentation

    def function(self, values: Mapping) -> Vector:
        return Vector(self.space, [values.get(a, 0) for a in self.algebra.atoms])

    def multiply(self, ahat: StepFunction, f: Vector) -> Vector:
        return apply(self.rep(ahat), f)

    def restrict(self, ahat: StepFunction) -> StepFunction:
        """ahat viewed on the surviving atoms."""
        vals = {a: ahat.value(a) for a in self.algebra.atoms if ahat.value(a) is not None}
        return StepFunction.from_atom_values(self.algebra, vals)

    def check_spectral_measure(self, vectors: Sequence[Vector] = ()) -> bool:
        """pvm_from_rep(T)(W) f = Ch_W f for every atom W and every test f."""
        P = pvm_from_rep(self.rep)
        tests = [self.space.basis(i) for i in range(self.space.dim)] + list(vectors)
        for W in self.algebra.atoms:
            proj = P.projector(W)
            if compose(proj, proj) != proj:
                return False
            k = self.algebra.index(W)
            for f in tests:
                expect = Vector(self.space, [f[i] if i == k else 0
                                             for i in range(self.space.dim)])
                if apply(proj, f) != expect:
                    return False
        return True

    def check_bound(self, ahat: StepFunction, f: Vector) -> bool:
        """||ahat f|| <= ||f|| ||ahat||_inf."""
        g = self.multiply(ahat, f)
        return vector_norm(g) <= vector_norm(f) * ahat.sup_norm()


def multiplication_rep(mu: KMeasure) -> MultiplicationRep:
    keep = []
    for a in mu.algebra.atoms:
        if n_mu_weight(mu, a).is_zero:
            warnings.warn(f"atom {a!r} is mu-null and is dropped", stacklevel=2)
        else:
            keep.append(a)
    if not keep:
        raise InputError("the measure vanishes on every atom")
    alg = mu.algebra
    sub = ClopenAlgebra(keep, alg.kind, alg.p, alg.resolution)
    omega = [mu.atom_value(a) * mu.atom_value(a) for a in keep]
    space = WeightedSpace(omega, mu.p, mu.precision)
    table = {a: _diag_projector(space, {i}) for i, a in enumerate(keep)}
    rep = FiniteRepresentation(sub, space, table)
    weights = {a: n_mu_weight(mu, a) for a in keep}
    return MultiplicationRep(mu, sub, space, weights, rep)


# -- faithfulness -------------------------------------------------------------

def kernel_basis(T: FiniteRepresentation) -> list[StepFunction]:
    """Step functions spanning ker(f -> T_f)."""
    atoms = T.algebra.atoms
    cols = [[x for row in op.fractions() for x in row] for op in T._table]
    # rows of the system: one per matrix entry, one column per atom
    system = [list(r) for r in zip(*cols)] if cols and cols[0] else []
    p, prec = T.space.p, T.space.precision
    out = []
    for vec in nullspace(system, len(atoms)):
        vals = {a: PadicScalar(c, p, prec) for a, c in zip(atoms, vec) if c}
        out.append(StepFunction.from_atom_values(T.algebra, vals))
    return out


def faithfulness(T: FiniteRepresentation) -> bool:
    """T injective on step functions, checked against supp(P) = X."""
    injective = not kernel_basis(T)
    full_support = support(pvm_from_rep(T)) == T.algebra.universe
    if injective != full_support:
        raise AssertionError("kernel and support disagree about faithfulness")
    return injective
