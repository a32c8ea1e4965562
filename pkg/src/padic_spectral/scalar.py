"""p-adic scalars and the exact value group of their norms.

A :class:`PadicScalar` carries an exact rational representative of an
element of Q_p together with a prime and a working precision N.  Arithmetic
is exact on the representative, so ring identities hold on the nose; the
working precision decides the canonical form ``(valuation, unit mod p^N)``,
equality, hashing and serialization.  Scalars that are not rational (Hensel
square roots) are represented by an integer agreeing with the true p-adic
value to N digits.

Norms never touch floating point: |x| = p^(-v) is stored as a
:class:`LogNorm` holding the exponent v, which may be a half-integer once
square-root weights enter.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from ._backend import kernels
from .errors import InputError, NoSquareRootError, PrimeMismatchError

DEFAULT_PRIME = 5
DEFAULT_PRECISION = 16

INF = math.inf

Number = Union[int, Fraction, "PadicScalar"]


def _as_exponent(e) -> Fraction | float:
    if e == INF:
        return INF
    e = Fraction(e)
    if e.denominator not in (1, 2):
        raise InputError(f"norm exponent {e} is outside the half-integer value group")
    return e


@functools.total_ordering
@dataclass(frozen=True)
class LogNorm:
    """The norm value p^(-exponent); exponent is in (1/2)Z or +inf.

    Ordering is by norm value, so ``max`` of two LogNorms is the larger norm
    (the smaller exponent).  +inf is the norm of zero.
    """

    exponent: Fraction | float

    def __post_init__(self):
        object.__setattr__(self, "exponent", _as_exponent(self.exponent))

    @classmethod
    def zero(cls) -> LogNorm:
        return cls(INF)

    @classmethod
    def one(cls) -> LogNorm:
        return cls(0)

    @classmethod
    def from_twice(cls, twice: int | None) -> LogNorm:
        """Build from a doubled exponent (``None`` meaning zero norm)."""
        return cls(INF if twice is None else Fraction(twice, 2))

    @property
    def is_zero(self) -> bool:
        return self.exponent == INF

    def __lt__(self, other: LogNorm) -> bool:
        if not isinstance(other, LogNorm):
            return NotImplemented
        return self.exponent > other.exponent

    def __mul__(self, other: LogNorm) -> LogNorm:
        if not isinstance(other, LogNorm):
            return NotImplemented
        return LogNorm(self.exponent + other.exponent)

    def __truediv__(self, other: LogNorm) -> LogNorm:
        if not isinstance(other, LogNorm):
            return NotImplemented
        if other.is_zero:
            raise ZeroDivisionError("division by the zero norm")
        if self.is_zero:
            return self
        return LogNorm(self.exponent - other.exponent)

    def __pow__(self, k: int) -> LogNorm:
        if self.is_zero:
            if k <= 0:
                raise ZeroDivisionError("non-positive power of the zero norm")
            return self
        return LogNorm(self.exponent * k)

    def sqrt(self) -> LogNorm:
        return self if self.is_zero else LogNorm(self.exponent / 2)

    def value(self, p: int) -> float:
        """Float approximation p^(-exponent); display only."""
        return 0.0 if self.is_zero else float(p) ** float(-self.exponent)

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        return f"p^({-self.exponent})"

    def to_json(self) -> dict:
        return {"exponent": "inf" if self.is_zero else str(self.exponent)}

    @classmethod
    def from_json(cls, obj) -> LogNorm:
        e = obj["exponent"] if isinstance(obj, dict) else obj
        if isinstance(e, str) and e.strip().lower() in ("inf", "+inf", "infinity"):
            return cls(INF)
        return cls(Fraction(e))


class PadicScalar:
    """An element of Q_p at working precision ``precision``.

    ``value`` may be an int, a Fraction, a rational string such as ``"3/25"``
    or another PadicScalar.  Instances are immutable.
    """

    __slots__ = ("p", "precision", "_q", "_v", "_unit")

    def __init__(self, value: Number | str = 0, p: int = DEFAULT_PRIME,
                 precision: int = DEFAULT_PRECISION):
        if isinstance(value, PadicScalar):
            if value.p != p:
                raise PrimeMismatchError(f"cannot move a {value.p}-adic scalar to p={p}")
            q = value._q
        else:
            try:
                q = Fraction(value)
            except (TypeError, ValueError, ZeroDivisionError) as exc:
                raise InputError(f"not a rational scalar: {value!r}") from exc
        if p < 2 or any(p % d == 0 for d in range(2, math.isqrt(p) + 1)):
            raise InputError(f"{p} is not a prime")
        if precision < 1:
            raise InputError("precision must be a positive integer")
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "precision", precision)
        object.__setattr__(self, "_q", q)
        if q == 0:
            object.__setattr__(self, "_v", INF)
        else:
            v = kernels.valuation(q.numerator, p) - kernels.valuation(q.denominator, p)
            object.__setattr__(self, "_v", v)
        object.__setattr__(self, "_unit", None)

    def __setattr__(self, name, value):
        raise AttributeError("PadicScalar is immutable")

    @classmethod
    def _raw(cls, q: Fraction, p: int, precision: int) -> PadicScalar:
        # skips primality checks; callers already hold a valid (p, precision)
        self = object.__new__(cls)
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "precision", precision)
        object.__setattr__(self, "_q", q)
        if q == 0:
            object.__setattr__(self, "_v", INF)
        else:
            v = kernels.valuation(q.numerator, p) - kernels.valuation(q.denominator, p)
            object.__setattr__(self, "_v", v)
        object.__setattr__(self, "_unit", None)
        return self

    @classmethod
    def from_canonical(cls, p: int, precision: int, valuation: int, unit: int) -> PadicScalar:
        """The scalar p^valuation * unit; ``unit`` must be prime to p."""
        if unit % p == 0:
            raise InputError(f"unit {unit} is divisible by p={p}")
        unit %= p ** precision
        q = Fraction(unit) * Fraction(p) ** valuation
        return cls(q, p, precision)

    @classmethod
    def zero(cls, p: int = DEFAULT_PRIME, precision: int = DEFAULT_PRECISION) -> PadicScalar:
        return cls(0, p, precision)

    @classmethod
    def one(cls, p: int = DEFAULT_PRIME, precision: int = DEFAULT_PRECISION) -> PadicScalar:
        return cls(1, p, precision)

    # -- canonical data ---------------------------------------------------

    @property
    def valuation(self) -> int | float:
        """v_p(x); ``math.inf`` for zero."""
        return self._v

    @property
    def unit(self) -> int | None:
        """The unit part reduced into [1, p^N); ``None`` for zero."""
        if self._v == INF:
            return None
        if self._unit is None:
            p = self.p
            mod = p ** self.precision
            num, den = self._q.numerator, self._q.denominator
            if self._v >= 0:
                num //= p ** self._v
            else:
                den //= p ** (-self._v)
            object.__setattr__(self, "_unit", num * pow(den, -1, mod) % mod)
        return self._unit

    def is_zero(self) -> bool:
        return self._v == INF

    def __bool__(self) -> bool:
        return self._v != INF

    def canonical(self, precision: int | None = None) -> tuple:
        """``(valuation, unit mod p^precision)``, or ``(inf, 0)`` for zero."""
        if self._v == INF:
            return (INF, 0)
        n = self.precision if precision is None else precision
        return (self._v, self.unit % self.p ** n)

    def to_fraction(self) -> Fraction:
        """The exact rational representative."""
        return self._q

    def with_precision(self, precision: int) -> PadicScalar:
        return PadicScalar._raw(self._q, self.p, precision)

    def norm(self) -> LogNorm:
        return LogNorm(self._v)

    __abs__ = norm

    # -- arithmetic ---------------------------------------------------------

    def _coerce(self, other) -> PadicScalar | None:
        if isinstance(other, PadicScalar):
            if other.p != self.p:
                raise PrimeMismatchError(f"prime mismatch: {self.p} vs {other.p}")
            return other
        if isinstance(other, (int, Fraction)):
            return PadicScalar._raw(Fraction(other), self.p, self.precision)
        return None

    def _new(self, q: Fraction, other: PadicScalar) -> PadicScalar:
        return PadicScalar._raw(q, self.p, min(self.precision, other.precision))

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self._new(self._q + o._q, o)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self._new(self._q - o._q, o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self._new(o._q - self._q, o)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self._new(self._q * o._q, o)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __neg__(self) -> PadicScalar:
        return PadicScalar._raw(-self._q, self.p, self.precision)

    def __pos__(self) -> PadicScalar:
        return self

    def __pow__(self, k: int) -> PadicScalar:
        if k < 0:
            return self.inverse() ** (-k)
        return PadicScalar._raw(self._q ** k, self.p, self.precision)

    def inverse(self) -> PadicScalar:
        if self._v == INF:
            raise ZeroDivisionError("inverse of the zero scalar")
        return PadicScalar._raw(1 / self._q, self.p, self.precision)

    def sqrt(self) -> PadicScalar:
        return hensel_sqrt(self)

    # -- comparison ---------------------------------------------------------

    def __eq__(self, other) -> bool:
        try:
            o = self._coerce(other)
        except PrimeMismatchError:
            return False
        if o is None:
            return NotImplemented
        if self._v != o._v:
            return False
        if self._v == INF or self._q == o._q:
            return True
        n = min(self.precision, o.precision)
        mod = self.p ** n
        return self.unit % mod == o.unit % mod

    def __hash__(self) -> int:
        # coarse on purpose: equality compares at the smaller of two precisions
        if self._v == INF:
            return hash((self.p, INF))
        return hash((self.p, self._v, self.unit % self.p))

    def sort_key(self) -> tuple:
        """Deterministic total order: by valuation, then canonical unit."""
        return self.canonical()

    def __repr__(self) -> str:
        return f"PadicScalar({str(self._q)!r}, p={self.p}, precision={self.precision})"

    def __str__(self) -> str:
        return str(self._q)

    # -- serialization -----------------------------------------------------

    def to_json(self) -> dict:
        if self._v == INF:
            return {"p": self.p, "precision": self.precision, "zero": True}
        return {"p": self.p, "precision": self.precision,
                "valuation": self._v, "unit": str(self.unit)}

    @classmethod
    def from_json(cls, obj, p: int | None = None, precision: int | None = None) -> PadicScalar:
        """Decode the canonical object form.

        Bare ints and rational strings are accepted as shorthand; they take
        ``p`` and ``precision`` from the caller's context.
        """
        if isinstance(obj, bool):
            raise InputError(f"not a scalar: {obj!r}")
        if isinstance(obj, (int, str)):
            return cls(obj, p or DEFAULT_PRIME, precision or DEFAULT_PRECISION)
        if not isinstance(obj, dict):
            raise InputError(f"not a scalar: {obj!r}")
        try:
            sp = int(obj.get("p", p or DEFAULT_PRIME))
            sn = int(obj.get("precision", precision or DEFAULT_PRECISION))
            if p is not None and sp != p:
                raise PrimeMismatchError(f"scalar has p={sp}, context has p={p}")
            if obj.get("zero"):
                return cls(0, sp, sn)
            return cls.from_canonical(sp, sn, int(obj["valuation"]), int(obj["unit"]))
        except (KeyError, TypeError, ValueError) as exc:
            if isinstance(exc, InputError):
                raise
            raise InputError(f"malformed scalar: {obj!r}") from exc


# -- functional surface -----------------------------------------------------

def add(x: PadicScalar, y: PadicScalar) -> PadicScalar:
    return x + y


def mul(x: PadicScalar, y: PadicScalar) -> PadicScalar:
    return x * y


def neg(x: PadicScalar) -> PadicScalar:
    return -x


def inv(x: PadicScalar) -> PadicScalar:
    return x.inverse()


def padic_abs(x: PadicScalar) -> LogNorm:
    return x.norm()


def _sqrt_mod_p(a: int, p: int) -> int:
    """Smallest r in [1, p) with r^2 = a (mod p); a must be a nonzero residue."""
    if p % 4 == 3:
        r = pow(a, (p + 1) // 4, p)
        return min(r, p - r)
    for r in range(1, p):
        if r * r % p == a:
            return r
    raise AssertionError("residue passed Euler's criterion but has no root")


def hensel_sqrt(a: PadicScalar) -> PadicScalar:
    """Square root of ``a`` to the working precision of ``a``.

    The seed is the smallest root mod p; Newton steps r <- r - (r^2-a)/(2r)
    double the number of correct digits each round.  Scalars of even
    valuation 2k are handled as p^k times the root of the unit part.
    """
    p, n = a.p, a.precision
    if p == 2:
        raise InputError("square roots are supported for odd primes only")
    if a.is_zero():
        return a
    v = a.valuation
    if v % 2:
        raise NoSquareRootError(f"odd valuation {v}: no square root in Q_{p}")
    u = a.unit
    if pow(u % p, (p - 1) // 2, p) != 1:
        raise NoSquareRootError(f"{a} is not a square modulo {p}")
    r = _sqrt_mod_p(u % p, p)
    k = 1
    while k < n:
        k = min(2 * k, n)
        mod = p ** k
        r = (r - (r * r - u) * pow(2 * r, -1, mod)) % mod
    root = PadicScalar._raw(Fraction(r), p, n)
    return root * PadicScalar._raw(Fraction(p) ** (v // 2), p, n)
