"""Finite free Banach spaces over Q_p with weighted orthogonal bases.

The space K^n carries the basis norms ``||e_i|| = |omega_i|^(1/2)`` and the
symmetric bilinear form ``f_omega(x, y) = sum omega_i x_i y_i``.  Taking every
omega_i = 1 gives the orthonormal space with the plain dot product.
"""

from __future__ import annotations

import itertools
import random
from fractions import Fraction
from typing import Iterable, Sequence

from . import _exact
from ._backend import kernels
from .errors import InputError, PrimeMismatchError
from .scalar import DEFAULT_PRECISION, DEFAULT_PRIME, INF, LogNorm, PadicScalar

DIM_CAP = 64


def _scalar(value, p, precision) -> PadicScalar:
    if isinstance(value, PadicScalar):
        if value.p != p:
            raise PrimeMismatchError(f"scalar over p={value.p} in a space over p={p}")
        return value
    return PadicScalar(value, p, precision)


class WeightedSpace:
    """K^n with weights omega (all nonzero)."""

    __slots__ = ("p", "precision", "omega", "_wv", "_wnum", "_wden", "_key")

    def __init__(self, omega: Iterable, p: int = DEFAULT_PRIME,
                 precision: int = DEFAULT_PRECISION):
        omega = tuple(_scalar(w, p, precision) for w in omega)
        if not omega:
            raise InputError("a space needs at least one basis vector")
        if len(omega) > DIM_CAP:
            raise InputError(f"dimension {len(omega)} exceeds the cap {DIM_CAP}")
        for i, w in enumerate(omega):
            if w.is_zero():
                raise InputError(f"omega[{i}] is zero")
        self.p = p
        self.precision = precision
        self.omega = omega
        self._wv = tuple(w.valuation for w in omega)
        self._wnum, self._wden = _exact.vec_from_fractions(w.to_fraction() for w in omega)
        self._key = tuple(w.canonical(precision) for w in omega)

    @classmethod
    def orthonormal(cls, dim: int, p: int = DEFAULT_PRIME,
                    precision: int = DEFAULT_PRECISION) -> WeightedSpace:
        return cls([1] * dim, p, precision)

    @property
    def dim(self) -> int:
        return len(self.omega)

    def basis_norm(self, i: int) -> LogNorm:
        return LogNorm(Fraction(self._wv[i], 2))

    def is_orthonormal(self) -> bool:
        """True when every basis vector has norm 1."""
        return all(v == 0 for v in self._wv)

    def has_unit_weights(self) -> bool:
        """True when omega is identically 1 (adjoint = transpose)."""
        return all(w == 1 for w in self.omega)

    def scalar(self, value) -> PadicScalar:
        return _scalar(value, self.p, self.precision)

    def zero(self) -> Vector:
        return Vector._raw(self, (0,) * self.dim, 1)

    def basis(self, i: int) -> Vector:
        nums = [0] * self.dim
        nums[i] = 1
        return Vector._raw(self, tuple(nums), 1)

    def vector(self, coords: Iterable) -> Vector:
        return Vector(self, coords)

    def __eq__(self, other) -> bool:
        if self is other:
            return True
        if not isinstance(other, WeightedSpace):
            return NotImplemented
        return (self.p, self.precision, self._key) == (other.p, other.precision, other._key)

    def __hash__(self) -> int:
        return hash((self.p, self.precision, self._key))

    def __repr__(self) -> str:
        return f"WeightedSpace(omega=[{', '.join(map(str, self.omega))}], p={self.p})"

    def check_same(self, other: WeightedSpace) -> None:
        if self is not other and self != other:
            if self.p != other.p:
                raise PrimeMismatchError(f"spaces over Q_{self.p} and Q_{other.p}")
            raise InputError("operands live in different spaces")


class Vector:
    """A vector of a :class:`WeightedSpace`, stored over a common denominator."""

    __slots__ = ("space", "_num", "_den")

    def __init__(self, space: WeightedSpace, coords: Iterable):
        coords = [_scalar(c, space.p, space.precision) for c in coords]
        if len(coords) != space.dim:
            raise InputError(f"expected {space.dim} coordinates, got {len(coords)}")
        nums, den = _exact.vec_from_fractions(c.to_fraction() for c in coords)
        self.space = space
        self._num = nums
        self._den = den

    @classmethod
    def _raw(cls, space, nums, den) -> Vector:
        self = object.__new__(cls)
        self.space = space
        self._num, self._den = _exact.vec_normalize(nums, den)
        return self

    @property
    def coords(self) -> tuple[PadicScalar, ...]:
        sp = self.space
        return tuple(PadicScalar._raw(Fraction(x, self._den), sp.p, sp.precision)
                     for x in self._num)

    def __getitem__(self, i: int) -> PadicScalar:
        sp = self.space
        return PadicScalar._raw(Fraction(self._num[i], self._den), sp.p, sp.precision)

    def __len__(self) -> int:
        return len(self._num)

    def is_zero(self) -> bool:
        return not any(self._num)

    def norm(self) -> LogNorm:
        return vector_norm(self)

    def __add__(self, other: Vector) -> Vector:
        self.space.check_same(other.space)
        den = self._den * other._den
        a = _exact.rescale(self._num, self._den, den)
        b = _exact.rescale(other._num, other._den, den)
        return Vector._raw(self.space, tuple(x + y for x, y in zip(a, b)), den)

    def __sub__(self, other: Vector) -> Vector:
        return self + (-other)

    def __neg__(self) -> Vector:
        return Vector._raw(self.space, tuple(-x for x in self._num), self._den)

    def scale(self, lam) -> Vector:
        q = self.space.scalar(lam).to_fraction()
        return Vector._raw(self.space, tuple(x * q.numerator for x in self._num),
                           self._den * q.denominator)

    def __rmul__(self, lam) -> Vector:
        return self.scale(lam)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Vector):
            return NotImplemented
        if self.space != other.space:
            return False
        if self._num == other._num and self._den == other._den:
            return True
        return self.coords == other.coords

    def __hash__(self) -> int:
        return hash(tuple(c.canonical() for c in self.coords))

    def __repr__(self) -> str:
        return f"Vector([{', '.join(map(str, self.coords))}])"


def vector_norm(x: Vector) -> LogNorm:
    """||x|| = max_i |x_i| ||e_i||, exactly."""
    sp = x.space
    best = None
    for xi, wv in zip(x._num, sp._wv):
        if xi:
            t = 2 * kernels.valuation(xi, sp.p) + wv
            if best is None or t < best:
                best = t
    if best is None:
        return LogNorm.zero()
    return LogNorm(Fraction(best, 2) - kernels.valuation(x._den, sp.p))


def f_omega(x: Vector, y: Vector) -> PadicScalar:
    """The symmetric bilinear form sum_i omega_i x_i y_i."""
    sp = x.space
    sp.check_same(y.space)
    s = kernels.weighted_dot(sp._wnum, x._num, y._num)
    return PadicScalar._raw(Fraction(s, sp._wden * x._den * y._den), sp.p, sp.precision)


def is_isotropic(x: Vector) -> bool:
    """x != 0 and f_omega(x, x) vanishes at working precision.

    "Vanishes" means |f_omega(x, x)| <= p^(-N) ||x||^2: the form has cancelled
    every digit the inputs carry.
    """
    if x.is_zero():
        return False
    v = f_omega(x, x).valuation
    return v == INF or v >= 2 * vector_norm(x).exponent + x.space.precision


class PiStructure:
    """Integer exponents n_i with |pi|^(n_i+1) < ||e_i|| <= |pi|^(n_i).

    Provides the equivalent norm ``||x||_pi = max |x_i| |pi|^(n_i)`` and the
    form ``f_pi(x, y) = sum pi^(2 n_i) x_i y_i``.
    """

    __slots__ = ("space", "pi", "exponents", "_fnum", "_fden")

    def __init__(self, space: WeightedSpace, pi: PadicScalar, exponents: Sequence[int]):
        self.space = space
        self.pi = pi
        self.exponents = tuple(exponents)
        q = pi.to_fraction()
        self._fnum, self._fden = _exact.vec_from_fractions(q ** (2 * n) for n in self.exponents)

    @property
    def pi_norm(self) -> LogNorm:
        return self.pi.norm()

    def check_exponents(self) -> bool:
        """The defining double inequality, evaluated in LogNorm arithmetic."""
        a = self.pi_norm
        return all(a ** (n + 1) < self.space.basis_norm(i) <= a ** n
                   for i, n in enumerate(self.exponents))

    def norm_pi(self, x: Vector) -> LogNorm:
        self.space.check_same(x.space)
        vpi = self.pi.valuation
        best = None
        for xi, n in zip(x.coords, self.exponents):
            if not xi.is_zero():
                t = xi.valuation + n * vpi
                if best is None or t < best:
                    best = t
        return LogNorm.zero() if best is None else LogNorm(best)

    def f_pi(self, x: Vector, y: Vector) -> PadicScalar:
        sp = self.space
        sp.check_same(x.space)
        sp.check_same(y.space)
        s = kernels.weighted_dot(self._fnum, x._num, y._num)
        return PadicScalar._raw(Fraction(s, self._fden * x._den * y._den), sp.p, sp.precision)

    def factor(self, i: int, j: int) -> Fraction:
        """pi^(2 (n_j - n_i)) as an exact rational."""
        return self.pi.to_fraction() ** (2 * (self.exponents[j] - self.exponents[i]))

    def __repr__(self) -> str:
        return f"PiStructure(pi={self.pi}, exponents={list(self.exponents)})"


def make_pi_structure(space: WeightedSpace, pi) -> PiStructure:
    pi = space.scalar(pi)
    if pi.is_zero() or pi.valuation < 1:
        raise InputError("pi must satisfy 0 < |pi| < 1")
    vpi = pi.valuation
    # |pi|^(n+1) < |omega|^(1/2) <= |pi|^n  <=>  n*vpi <= v(omega)/2 < (n+1)*vpi
    exponents = [w // (2 * vpi) for w in space._wv]
    return PiStructure(space, pi, exponents)


def _coefficient_pool(p, precision):
    pi = PadicScalar(p, p, precision)
    base = [PadicScalar(1, p, precision), pi, pi.inverse()]
    return [PadicScalar(0, p, precision)] + base + [-c for c in base]


def is_orthogonal_family(vectors: Sequence[Vector], samples: int = 64, seed: int = 0) -> bool:
    """Falsifier for ||sum a_j x_j|| = max_j ||a_j x_j||.

    Coefficients come from {0, +-1, +-p, +-1/p}: every tuple when there are at
    most four vectors, every pair-supported tuple otherwise, followed by
    ``samples`` seeded random tuples.  ``False`` means a violation was found;
    ``True`` only means none was.
    """
    if not vectors:
        return True
    sp = vectors[0].space
    for v in vectors:
        sp.check_same(v.space)
    k = len(vectors)
    pool = _coefficient_pool(sp.p, sp.precision)
    norms = [vector_norm(v) for v in vectors]

    def holds(coeffs) -> bool:
        total = sp.zero()
        best = LogNorm.zero()
        for c, v, nv in zip(coeffs, vectors, norms):
            if c.is_zero():
                continue
            total = total + v.scale(c)
            best = max(best, c.norm() * nv)
        return vector_norm(total) == best

    if k <= 4:
        tuples = itertools.product(pool, repeat=k)
    else:
        zero = pool[0]

        def pairs():
            for i, j in itertools.combinations(range(k), 2):
                for a in pool[1:]:
                    for b in pool[1:]:
                        t = [zero] * k
                        t[i], t[j] = a, b
                        yield t
        tuples = pairs()
    for coeffs in tuples:
        if not holds(coeffs):
            return False
    rng = random.Random(f"orthogonal:{seed}")
    from .sampling import random_scalar

    for _ in range(samples):
        coeffs = [random_scalar(rng, sp.p, sp.precision) for _ in range(k)]
        if not holds(coeffs):
            return False
    return True
