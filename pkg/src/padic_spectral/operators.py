"""Matrix operators on a weighted space.

Convention, used everywhere: ``u(e_j) = sum_i alpha_ij e_i``, so entry (i, j)
is row i, column j and ``entries[i][j]`` in JSON.

Operators are stored as an integer matrix over one positive common
denominator; the kernels in :mod:`padic_spectral._backend` do the inner loops.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import Iterable, Sequence

from . import _exact
from ._backend import kernels
from .errors import InputError
from .scalar import LogNorm, PadicScalar
from .space import PiStructure, Vector, WeightedSpace, _scalar


class Operator:
    __slots__ = ("space", "_num", "_den")

    def __init__(self, space: WeightedSpace, entries: Iterable[Iterable]):
        rows = [[_scalar(x, space.p, space.precision) for x in row] for row in entries]
        n = space.dim
        if len(rows) != n or any(len(r) != n for r in rows):
            raise InputError(f"expected a {n}x{n} matrix")
        self.space = space
        self._num, self._den = _exact.mat_from_fractions(
            [[x.to_fraction() for x in row] for row in rows])

    @classmethod
    def _raw(cls, space, num, den, normalize=True) -> Operator:
        self = object.__new__(cls)
        self.space = space
        if normalize:
            num, den = _exact.mat_normalize(num, den)
        self._num, self._den = num, den
        return self

    @classmethod
    def identity(cls, space: WeightedSpace) -> Operator:
        n = space.dim
        return cls._raw(space, tuple(tuple(int(i == j) for j in range(n)) for i in range(n)), 1,
                        normalize=False)

    @classmethod
    def zero(cls, space: WeightedSpace) -> Operator:
        n = space.dim
        return cls._raw(space, tuple((0,) * n for _ in range(n)), 1, normalize=False)

    @classmethod
    def diagonal(cls, space: WeightedSpace, values: Sequence) -> Operator:
        n = space.dim
        if len(values) != n:
            raise InputError(f"expected {n} diagonal values")
        vals = [_scalar(v, space.p, space.precision).to_fraction() for v in values]
        return cls._raw(space, *_exact.mat_from_fractions(
            [[vals[i] if i == j else 0 for j in range(n)] for i in range(n)]), normalize=False)

    @property
    def dim(self) -> int:
        return self.space.dim

    def entry(self, i: int, j: int) -> PadicScalar:
        sp = self.space
        return PadicScalar._raw(Fraction(self._num[i][j], self._den), sp.p, sp.precision)

    @property
    def entries(self) -> tuple[tuple[PadicScalar, ...], ...]:
        n = self.dim
        return tuple(tuple(self.entry(i, j) for j in range(n)) for i in range(n))

    def fractions(self):
        return [[Fraction(x, self._den) for x in row] for row in self._num]

    def is_zero(self) -> bool:
        return not any(any(row) for row in self._num)

    def is_diagonal(self) -> bool:
        return all(x == 0 for i, row in enumerate(self._num) for j, x in enumerate(row) if i != j)

    def diagonal_values(self) -> tuple[PadicScalar, ...]:
        return tuple(self.entry(i, i) for i in range(self.dim))

    # -- algebra ------------------------------------------------------------

    def __add__(self, other: Operator) -> Operator:
        return add(self, other)

    def __sub__(self, other: Operator) -> Operator:
        return add(self, -other)

    def __neg__(self) -> Operator:
        return Operator._raw(self.space, tuple(tuple(-x for x in row) for row in self._num),
                             self._den, normalize=False)

    def __matmul__(self, other):
        if isinstance(other, Vector):
            return apply(self, other)
        return compose(self, other)

    def __rmul__(self, lam) -> Operator:
        return scale(lam, self)

    def __pow__(self, k: int) -> Operator:
        if k < 0:
            raise InputError("negative operator powers are not supported")
        out = Operator.identity(self.space)
        base = self
        while k:
            if k & 1:
                out = compose(out, base)
            base = compose(base, base)
            k >>= 1
        return out

    def norm(self) -> LogNorm:
        return op_norm(self)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Operator):
            return NotImplemented
        if self.space != other.space:
            return False
        if self._den == other._den and self._num == other._num:
            return True
        # equal at working precision (Hensel approximants may differ as rationals)
        return self.entries == other.entries

    def __hash__(self) -> int:
        return hash(tuple(tuple(x.canonical() for x in row) for row in self.entries))

    def __repr__(self) -> str:
        rows = "; ".join(" ".join(str(Fraction(x, self._den)) for x in row) for row in self._num)
        return f"Operator([{rows}])"


def apply(u: Operator, x: Vector) -> Vector:
    u.space.check_same(x.space)
    return Vector._raw(u.space, kernels.mat_vec(u._num, x._num), u._den * x._den)


def compose(u: Operator, v: Operator) -> Operator:
    u.space.check_same(v.space)
    return Operator._raw(u.space, kernels.mat_mul(u._num, v._num), u._den * v._den)


def add(u: Operator, v: Operator) -> Operator:
    u.space.check_same(v.space)
    den = u._den * v._den
    a = _exact.mat_rescale(u._num, u._den, den)
    b = _exact.mat_rescale(v._num, v._den, den)
    return Operator._raw(u.space, tuple(tuple(x + y for x, y in zip(r, s))
                                        for r, s in zip(a, b)), den)


def scale(lam, u: Operator) -> Operator:
    q = u.space.scalar(lam).to_fraction()
    return Operator._raw(u.space, tuple(tuple(x * q.numerator for x in row) for row in u._num),
                         u._den * q.denominator)


def op_norm(u: Operator) -> LogNorm:
    """max_ij |alpha_ij| ||e_i|| / ||e_j||, exactly."""
    sp = u.space
    wv = sp._wv
    twice = kernels.min_weighted_valuation(u._num, sp.p, wv, wv)
    if twice is None:
        return LogNorm.zero()
    return LogNorm(Fraction(twice, 2) - kernels.valuation(u._den, sp.p))


def transpose(u: Operator) -> Operator:
    return Operator._raw(u.space, tuple(zip(*u._num)), u._den, normalize=False)


def adjoint_omega(u: Operator) -> Operator:
    """The f_omega-adjoint: beta_ij = omega_i^(-1) omega_j alpha_ji."""
    sp = u.space
    w = sp._wnum  # omega_i = w[i] / sp._wden; the common denominator cancels
    lcm_w = lcm(*w)
    cols = tuple(zip(*u._num))
    n = sp.dim
    num = tuple(tuple((lcm_w // w[i]) * w[j] * cols[i][j] for j in range(n)) for i in range(n))
    return Operator._raw(sp, num, u._den * lcm_w)


def adjoint_pi(u: Operator, ps: PiStructure) -> Operator:
    """The f_pi-adjoint: beta_ij = pi^(2(n_j - n_i)) alpha_ji."""
    ps.space.check_same(u.space)
    n = u.dim
    a = u.fractions()
    return Operator._raw(u.space, *_exact.mat_from_fractions(
        [[ps.factor(i, j) * a[j][i] for j in range(n)] for i in range(n)]), normalize=False)


def is_self_adjoint(u: Operator) -> bool:
    """alpha_ji = omega_i omega_j^(-1) alpha_ij for all i, j (at working precision)."""
    return adjoint_omega(u) == u


def is_self_adjoint_pi(u: Operator, ps: PiStructure) -> bool:
    """pi^(2 n_i) alpha_ij = pi^(2 n_j) alpha_ji for all i, j."""
    return adjoint_pi(u, ps) == u


def is_symmetric(u: Operator) -> bool:
    return transpose(u) == u


def diagonal_part(u: Operator) -> Operator:
    n = u.dim
    return Operator._raw(u.space, tuple(tuple(u._num[i][j] if i == j else 0 for j in range(n))
                                        for i in range(n)), u._den)


def nilpotent_diagonal_witness(u: Operator) -> bool:
    """True when the diagonal of u^k vanishes for every k in 1..n.

    For a strictly triangular u this holds and u^n = 0; the diagonal image of
    such a u is zero.
    """
    n = u.dim
    power = u
    for _ in range(n):
        if not diagonal_part(power).is_zero():
            return False
        power = compose(power, u)
    return True


# -- E/T/S-algebra axioms ----------------------------------------------------

@dataclass
class AxiomReport:
    samples: int
    T: bool
    S: bool
    E: bool
    counterexamples: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        from .serialize import operator_to_json

        return {
            "samples": self.samples, "T": self.T, "S": self.S, "E": self.E,
            "counterexamples": {k: operator_to_json(v) for k, v in self.counterexamples.items()},
        }


def _random_word(rng, pool, space):
    from .sampling import random_scalar

    total = Operator.zero(space)
    for _ in range(rng.randint(1, 3)):
        term = rng.choice(pool)
        for _ in range(rng.randint(0, 2)):
            term = compose(term, rng.choice(pool))
        c = random_scalar(rng, space.p, space.precision, vmin=-1, vmax=1, digits=1)
        total = add(total, scale(c, term))
    return total


def check_algebra_axioms(generators: Sequence[Operator], samples: int = 100,
                         seed: int = 0) -> AxiomReport:
    """Sample the algebra generated by ``generators`` and their transposes.

    The generators themselves are examined first, then ``samples`` random
    K-linear combinations of short words.  T records the transposition laws
    on consecutive sample pairs; S and E record norm conditions
    ||a^t a|| = ||a^2|| and ||a^t a|| = ||a||^2.  A report never proves an
    axiom, it only fails to refute it.
    """
    if not generators:
        raise InputError("at least one generator is required")
    space = generators[0].space
    for g in generators:
        space.check_same(g.space)
    pool = list(generators) + [transpose(g) for g in generators]
    rng = random.Random(f"axioms:{seed}")
    elements = list(generators) + [_random_word(rng, pool, space) for _ in range(samples)]
    report = AxiomReport(samples=len(elements), T=True, S=True, E=True)
    prev = None
    for a in elements:
        at = transpose(a)
        ata = compose(at, a)
        n_ata = op_norm(ata)
        if report.E and n_ata != op_norm(a) ** 2:
            report.E = False
            report.counterexamples["E"] = a
        if report.S and n_ata != op_norm(compose(a, a)):
            report.S = False
            report.counterexamples["S"] = a
        if report.T:
            ok = transpose(at) == a
            if prev is not None:
                lam = rng.randint(1, 24)
                ok = ok and transpose(add(a, prev)) == add(at, transpose(prev))
                ok = ok and transpose(scale(lam, a)) == scale(lam, at)
                ok = ok and transpose(compose(a, prev)) == compose(transpose(prev), at)
            if not ok:
                report.T = False
                report.counterexamples["T"] = a
        prev = a
    return report


def square_norm_witness(p: int = 5, precision: int = 16, a=1, c=None) -> Operator:
    """The 4x4 symmetric operator with ||u^2|| < ||u||^2.

    Columns: u(e_1) = a e_1 + b e_2, u(e_2) = b e_1 - a e_2, u(e_3) = c e_3,
    u(e_4) = 0 with b = sqrt(-1).  Then u^2 = diag(a^2+b^2, a^2+b^2, c^2, 0)
    and a^2 + b^2 vanishes, so ||u^2|| = |c|^2 while ||u|| = |a|.
    """
    from .scalar import hensel_sqrt

    b = hensel_sqrt(PadicScalar(-1, p, precision))
    if c is None:
        c = p
    space = WeightedSpace.orthonormal(4, p, precision)
    return Operator(space, [[a, b, 0, 0], [b, -a, 0, 0], [0, 0, c, 0], [0, 0, 0, 0]])
