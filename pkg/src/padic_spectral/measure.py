"""Finite clopen algebras, projection-valued measures and spectral integrals.

Every algebra here is generated by finitely many atoms, so a clopen set is
just a set of atom labels.  Countable additivity, the shrinking-family axiom
and regularity are all automatic at this scale.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Iterable, Mapping

from .errors import AxiomViolation, InputError
from .operators import Operator, add, apply, compose, op_norm, scale
from .scalar import LogNorm, PadicScalar
from .space import Vector, WeightedSpace

BRUTE_FORCE_ATOMS = 16
ENUMERATE_ATOMS = 6


class ClopenAlgebra:
    """Atoms of a finite zero-dimensional space.

    ``finite``: string labels given by the caller.  ``zp``: Z_p cut at
    resolution m, atoms are the residues 0..p^m-1 (balls of radius p^-m).
    """

    __slots__ = ("kind", "atoms", "p", "resolution", "_pos")

    def __init__(self, atoms: Iterable, kind: str = "finite", p: int | None = None,
                 resolution: int | None = None):
        atoms = tuple(atoms)
        if not atoms:
            raise InputError("an algebra needs at least one atom")
        if len(set(atoms)) != len(atoms):
            raise InputError("atom labels must be distinct")
        self.kind = kind
        self.atoms = atoms
        self.p = p
        self.resolution = resolution
        self._pos = {a: i for i, a in enumerate(atoms)}

    @classmethod
    def finite(cls, labels: Iterable[str]) -> ClopenAlgebra:
        labels = [str(x) for x in labels]
        return cls(labels, "finite")

    @classmethod
    def zp(cls, p: int, resolution: int) -> ClopenAlgebra:
        if not 0 <= resolution <= 4:
            raise InputError("Z_p resolution must be between 0 and 4")
        return cls(range(p ** resolution), "zp", p, resolution)

    def __len__(self) -> int:
        return len(self.atoms)

    def __contains__(self, label) -> bool:
        return label in self._pos

    def index(self, label) -> int:
        try:
            return self._pos[label]
        except KeyError:
            raise InputError(f"unknown atom {label!r}") from None

    def label(self, raw):
        """Resolve a JSON atom label (always a string or int) to the stored label."""
        if self.kind == "zp":
            try:
                return int(raw)
            except (TypeError, ValueError):
                raise InputError(f"Z_p atoms are integers, got {raw!r}") from None
        return str(raw)

    def set(self, labels: Iterable) -> frozenset:
        s = frozenset(labels)
        for a in s:
            self.index(a)
        return s

    @property
    def universe(self) -> frozenset:
        return frozenset(self.atoms)

    @property
    def empty(self) -> frozenset:
        return frozenset()

    def complement(self, A: frozenset) -> frozenset:
        return self.universe - A

    def sorted(self, A: Iterable) -> list:
        return sorted(A, key=self.index)

    def all_sets(self):
        """Every clopen set, in a deterministic order (2^n of them)."""
        for r in range(len(self.atoms) + 1):
            for combo in itertools.combinations(self.atoms, r):
                yield frozenset(combo)

    def ball(self, center: int, radius_exp: int) -> frozenset:
        """{x : x = center mod p^k}, the ball of radius p^-k, as a union of atoms."""
        if self.kind != "zp":
            raise InputError("balls exist only in Z_p algebras")
        if not 0 <= radius_exp <= self.resolution:
            raise InputError(f"ball exponent must lie in [0, {self.resolution}]")
        mod = self.p ** radius_exp
        return frozenset(a for a in self.atoms if (a - center) % mod == 0)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ClopenAlgebra):
            return NotImplemented
        return (self.kind, self.atoms, self.p, self.resolution) == \
            (other.kind, other.atoms, other.p, other.resolution)

    def __hash__(self) -> int:
        return hash((self.kind, self.atoms))

    def __repr__(self) -> str:
        if self.kind == "zp":
            return f"ClopenAlgebra.zp({self.p}, {self.resolution})"
        return f"ClopenAlgebra.finite({list(self.atoms)})"


class ProjectionValuedMeasure:
    """Atom-indexed projectors; P(A) is the sum over the atoms of A.

    Construction validates idempotency, pairwise orthogonality, completeness
    (P(X) = id) and contractivity ||P(atom)|| <= 1, collecting a witness for
    every failure.
    """

    __slots__ = ("algebra", "space", "_table")

    def __init__(self, algebra: ClopenAlgebra, space: WeightedSpace,
                 projectors: Mapping, validate: bool = True):
        keys = set(projectors)
        expected = set(algebra.atoms)
        if keys != expected:
            missing = algebra.sorted(expected - keys)
            extra = sorted(map(str, keys - expected))
            raise InputError(f"projector table mismatch: missing {missing}, unknown {extra}")
        for a, op in projectors.items():
            if not isinstance(op, Operator):
                raise InputError(f"projector for {a!r} is not an operator")
            space.check_same(op.space)
        self.algebra = algebra
        self.space = space
        self._table = tuple(projectors[a] for a in algebra.atoms)
        if validate:
            violations = pvm_violations(self)
            if violations:
                raise AxiomViolation(violations)

    def projector(self, atom) -> Operator:
        return self._table[self.algebra.index(atom)]

    def items(self):
        return zip(self.algebra.atoms, self._table)

    def __call__(self, A: Iterable) -> Operator:
        return pvm_eval(self, A)

    def is_null(self, atom) -> bool:
        return self.projector(atom).is_zero()

    def __eq__(self, other) -> bool:
        if not isinstance(other, ProjectionValuedMeasure):
            return NotImplemented
        return (self.algebra == other.algebra and self.space == other.space
                and self._table == other._table)

    def __hash__(self) -> int:
        return hash((self.algebra, self._table))

    def __repr__(self) -> str:
        body = ", ".join(f"{a!r}: {op!r}" for a, op in self.items())
        return f"ProjectionValuedMeasure({{{body}}})"


def pvm_violations(P: ProjectionValuedMeasure) -> list:
    sp = P.space
    atoms = P.algebra.atoms
    table = P._table
    out = []
    one = LogNorm.one()
    for a, op in zip(atoms, table):
        if compose(op, op) != op:
            out.append(("idempotent", [a]))
        if op_norm(op) > one:
            out.append(("contractive", [a]))
    for (i, a), (j, b) in itertools.combinations(enumerate(atoms), 2):
        if not compose(table[i], table[j]).is_zero() or not compose(table[j], table[i]).is_zero():
            out.append(("orthogonal", [a, b]))
    total = Operator.zero(sp)
    for op in table:
        total = add(total, op)
    if total != Operator.identity(sp):
        out.append(("complete", list(atoms)))
    return out


def pvm_new(algebra: ClopenAlgebra, space: WeightedSpace, atom_projectors: Mapping
            ) -> ProjectionValuedMeasure:
    return ProjectionValuedMeasure(algebra, space, atom_projectors)


def pvm_eval(P: ProjectionValuedMeasure, A: Iterable) -> Operator:
    A = P.algebra.set(A)
    total = Operator.zero(P.space)
    for a, op in P.items():
        if a in A:
            total = add(total, op)
    return total


def support(P: ProjectionValuedMeasure) -> frozenset:
    return frozenset(a for a, op in P.items() if not op.is_zero())


def is_regular(P: ProjectionValuedMeasure) -> bool:
    """Always true: on a finite algebra every set is compact and open."""
    return True


class StepFunction:
    """sum_i lambda_i Ch_{B_i} over pairwise disjoint clopen sets."""

    __slots__ = ("algebra", "pieces", "_values")

    def __init__(self, algebra: ClopenAlgebra, pieces: Iterable, p: int | None = None,
                 precision: int | None = None):
        seen = set()
        norm_pieces = []
        values = {}
        for B, lam in pieces:
            B = algebra.set(B)
            if seen & B:
                raise InputError(f"step function pieces overlap on {algebra.sorted(seen & B)}")
            seen |= B
            if not isinstance(lam, PadicScalar):
                if p is None:
                    raise InputError("scalar values need a prime")
                lam = PadicScalar(lam, p, precision or 16)
            norm_pieces.append((B, lam))
            for a in B:
                values[a] = lam
        self.algebra = algebra
        self.pieces = tuple(norm_pieces)
        self._values = values

    @classmethod
    def from_atom_values(cls, algebra: ClopenAlgebra, values: Mapping) -> StepFunction:
        return cls(algebra, [(frozenset([a]), values[a]) for a in algebra.atoms if a in values])

    @classmethod
    def indicator(cls, algebra, A, p, precision) -> StepFunction:
        return cls(algebra, [(A, PadicScalar(1, p, precision))])

    def value(self, atom, zero: PadicScalar | None = None):
        v = self._values.get(atom)
        if v is None:
            return zero
        return v

    def _binary(self, other: StepFunction, op) -> StepFunction:
        if self.algebra != other.algebra:
            raise InputError("step functions over different algebras")
        vals = {}
        for a in self.algebra.atoms:
            x, y = self._values.get(a), other._values.get(a)
            if x is None and y is None:
                continue
            vals[a] = op(x, y)
        return StepFunction.from_atom_values(self.algebra, vals)

    def __add__(self, other: StepFunction) -> StepFunction:
        return self._binary(other, lambda x, y: y if x is None else (x if y is None else x + y))

    def __mul__(self, other: StepFunction) -> StepFunction:
        def mul(x, y):
            if x is None:
                return y * 0
            if y is None:
                return x * 0
            return x * y
        return self._binary(other, mul)

    def scale(self, lam) -> StepFunction:
        return StepFunction(self.algebra, [(B, v * lam) for B, v in self.pieces])

    def sup_norm(self) -> LogNorm:
        return max((v.norm() for v in self._values.values()), default=LogNorm.zero())

    def ess_sup(self, P: ProjectionValuedMeasure) -> LogNorm:
        """||f||_inf with P-null atoms ignored."""
        return max((v.norm() for a, v in self._values.items() if not P.is_null(a)),
                   default=LogNorm.zero())

    def agrees_off_null(self, other: StepFunction, P: ProjectionValuedMeasure) -> bool:
        for a in self.algebra.atoms:
            if P.is_null(a):
                continue
            x, y = self._values.get(a), other._values.get(a)
            x = Fraction(0) if x is None else x.to_fraction()
            y = Fraction(0) if y is None else y.to_fraction()
            if x != y:
                return False
        return True

    def __repr__(self) -> str:
        body = ", ".join(f"{self.algebra.sorted(B)}: {v}" for B, v in self.pieces)
        return f"StepFunction({body})"


def spectral_integral(f: StepFunction, P: ProjectionValuedMeasure) -> Operator:
    """sum_i lambda_i P(B_i)."""
    if f.algebra != P.algebra:
        raise InputError("step function and measure live on different algebras")
    total = Operator.zero(P.space)
    for B, lam in f.pieces:
        if lam.is_zero():
            continue
        total = add(total, scale(lam, pvm_eval(P, B)))
    return total


class KMeasure:
    """Additive K-valued set function fixed by its atom values."""

    __slots__ = ("algebra", "_values", "p", "precision")

    def __init__(self, algebra: ClopenAlgebra, atom_values: Mapping, p: int | None = None,
                 precision: int | None = None):
        vals = {}
        for a in algebra.atoms:
            v = atom_values.get(a, 0)
            if not isinstance(v, PadicScalar):
                if p is None:
                    first = next((x for x in atom_values.values() if isinstance(x, PadicScalar)),
                                 None)
                    if first is None:
                        raise InputError("measure values need a prime")
                    p, precision = first.p, first.precision
                v = PadicScalar(v, p, precision or 16)
            vals[a] = v
        extra = set(atom_values) - set(algebra.atoms)
        if extra:
            raise InputError(f"unknown atoms {sorted(map(str, extra))}")
        self.algebra = algebra
        self._values = vals
        first = next(iter(vals.values()))
        self.p, self.precision = first.p, first.precision

    def atom_value(self, atom) -> PadicScalar:
        return self._values[atom]

    def __call__(self, A: Iterable) -> PadicScalar:
        A = self.algebra.set(A)
        total = PadicScalar._raw(Fraction(0), self.p, self.precision)
        for a in A:
            total = total + self._values[a]
        return total

    def __repr__(self) -> str:
        return f"KMeasure({ {a: str(v) for a, v in self._values.items()} })"


def scalar_measure(P: ProjectionValuedMeasure, xi: Vector, eta) -> KMeasure:
    """mu_{xi,eta}(A) = eta*(P(A) xi).

    ``eta`` is a basis index (the functional e_eta*) or a Vector paired by
    the coordinate pairing sum_j eta_j x_j.
    """
    P.space.check_same(xi.space)
    vals = {}
    for a, op in P.items():
        y = apply(op, xi)
        if isinstance(eta, Vector):
            P.space.check_same(eta.space)
            s = sum((Fraction(u, y._den) * Fraction(w, eta._den)
                     for u, w in zip(y._num, eta._num)), Fraction(0))
            vals[a] = PadicScalar._raw(s, P.space.p, P.space.precision)
        else:
            if not 0 <= int(eta) < P.space.dim:
                raise InputError(f"functional index {eta} out of range")
            vals[a] = y[int(eta)]
    return KMeasure(P.algebra, vals)


def _subset_sums(values):
    sums = [Fraction(0)]
    for v in values:
        sums += [s + v for s in sums]
    return sums


def measure_norm_bruteforce(mu: KMeasure, A: Iterable) -> LogNorm:
    """max_{B subset A} |mu(B)| by enumerating every B."""
    A = mu.algebra.set(A)
    best = LogNorm.zero()
    for s in _subset_sums([mu.atom_value(a).to_fraction() for a in mu.algebra.sorted(A)]):
        best = max(best, PadicScalar._raw(s, mu.p, mu.precision).norm())
    return best


def measure_norm(mu: KMeasure, A: Iterable, cross_check: bool = True) -> LogNorm:
    """||A||_mu = sup over clopen B inside A of |mu(B)|.

    The ultrametric inequality reduces this to the largest atom value; on
    small algebras the subset enumeration is run as well and must agree.
    """
    A = mu.algebra.set(A)
    fast = max((mu.atom_value(a).norm() for a in A), default=LogNorm.zero())
    if cross_check and len(A) <= BRUTE_FORCE_ATOMS and len(mu.algebra) <= BRUTE_FORCE_ATOMS:
        slow = measure_norm_bruteforce(mu, A)
        if slow != fast:
            raise AssertionError(f"measure norm shortcut failed on {sorted(map(str, A))}")
    return fast


def n_mu_weight(mu: KMeasure, atom, cross_check: bool = True) -> LogNorm:
    """N_mu(x) = inf over clopen U containing x of ||U||_mu; equals |mu(x)|."""
    fast = mu.atom_value(atom).norm()
    alg = mu.algebra
    if cross_check and len(alg) <= ENUMERATE_ATOMS:
        best = None
        for U in alg.all_sets():
            if atom in U:
                val = measure_norm(mu, U, cross_check=False)
                if best is None or val < best:
                    best = val
        if best != fast:
            raise AssertionError(f"N_mu enumeration disagrees at {atom!r}")
    return fast
