"""Coordinate projectors, the projector algebra B and its Gelfand transform.

An element of B is ``alpha0 * id + sum_nu alpha_nu * p_{J_nu}`` for a
partition J_1..J_k of part of the index set.  The index set must not be fully
covered: when it is, id is itself a sum of block projectors, the
coefficients stop being unique and the two norm formulas disagree.

Characters are tagged 0 (chi_0, reading alpha0) or nu in 1..k.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import InputError, UnsupportedError
from .operators import Operator
from .scalar import LogNorm, PadicScalar
from .space import WeightedSpace, _scalar


class Projector:
    """p_J, the diagonal 0/1 operator with support J."""

    __slots__ = ("space", "subset")

    def __init__(self, space: WeightedSpace, subset: Iterable[int]):
        subset = frozenset(subset)
        if any(not (0 <= i < space.dim) for i in subset):
            raise InputError(f"projector index out of range for dim {space.dim}")
        self.space = space
        self.subset = subset

    def to_operator(self) -> Operator:
        return Operator.diagonal(self.space, [int(i in self.subset) for i in range(self.space.dim)])

    def compose(self, other: Projector) -> Projector:
        self.space.check_same(other.space)
        return Projector(self.space, self.subset & other.subset)

    def complement(self) -> Projector:
        return Projector(self.space, set(range(self.space.dim)) - self.subset)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Projector):
            return NotImplemented
        return self.space == other.space and self.subset == other.subset

    def __hash__(self) -> int:
        return hash((self.space, self.subset))

    def __repr__(self) -> str:
        return f"Projector({sorted(self.subset)})"


def is_idempotent_diagonal(u: Operator) -> frozenset | None:
    """J with u = p_J, or None when the diagonal u is not idempotent.

    Raises UnsupportedError for a non-diagonal u.
    """
    if not u.is_diagonal():
        raise UnsupportedError("is_idempotent_diagonal needs a diagonal operator")
    J = set()
    for i, x in enumerate(u.diagonal_values()):
        if x == 1:
            J.add(i)
        elif not x.is_zero():
            return None
    return frozenset(J)


def _check_partition(partition, n):
    blocks = []
    seen = set()
    for block in partition:
        b = tuple(sorted(int(i) for i in block))
        if not b:
            raise InputError("partition blocks must be nonempty")
        if len(set(b)) != len(b):
            raise InputError(f"repeated index inside block {list(b)}")
        for i in b:
            if not 0 <= i < n:
                raise InputError(f"index {i} out of range for dim {n}")
            if i in seen:
                raise InputError(f"index {i} appears in two blocks")
            seen.add(i)
        blocks.append(b)
    if len(seen) == n:
        raise InputError("the blocks must leave at least one index uncovered")
    return tuple(blocks)


class BElement:
    __slots__ = ("space", "partition", "alpha0", "alphas")

    def __init__(self, space: WeightedSpace, partition: Sequence[Iterable[int]], alpha0,
                 alphas: Sequence):
        self.space = space
        self.partition = _check_partition(partition, space.dim)
        alphas = tuple(_scalar(a, space.p, space.precision) for a in alphas)
        if len(alphas) != len(self.partition):
            raise InputError(f"{len(self.partition)} blocks but {len(alphas)} coefficients")
        self.alpha0 = _scalar(alpha0, space.p, space.precision)
        self.alphas = alphas

    @classmethod
    def identity(cls, space, partition=()) -> BElement:
        return cls(space, partition, 1, [0] * len(partition))

    @classmethod
    def projector(cls, space, J) -> BElement:
        return cls(space, [J], 0, [1])

    def diagonal(self) -> list[PadicScalar]:
        d = [self.alpha0] * self.space.dim
        for block, a in zip(self.partition, self.alphas):
            for i in block:
                d[i] = self.alpha0 + a
        return d

    def to_operator(self) -> Operator:
        return Operator.diagonal(self.space, self.diagonal())

    def _same_shape(self, other):
        if not isinstance(other, BElement):
            raise InputError("expected a BElement")
        self.space.check_same(other.space)
        if self.partition != other.partition:
            raise InputError("BElements over different partitions")

    def __add__(self, other: BElement) -> BElement:
        self._same_shape(other)
        return BElement(self.space, self.partition, self.alpha0 + other.alpha0,
                        [a + b for a, b in zip(self.alphas, other.alphas)])

    def __mul__(self, other: BElement) -> BElement:
        self._same_shape(other)
        a0, b0 = self.alpha0, other.alpha0
        return BElement(self.space, self.partition, a0 * b0,
                        [a0 * b + a * b0 + a * b for a, b in zip(self.alphas, other.alphas)])

    def scale(self, lam) -> BElement:
        lam = self.space.scalar(lam)
        return BElement(self.space, self.partition, lam * self.alpha0,
                        [lam * a for a in self.alphas])

    def __eq__(self, other) -> bool:
        if not isinstance(other, BElement):
            return NotImplemented
        return (self.space == other.space and self.partition == other.partition
                and self.alpha0 == other.alpha0 and self.alphas == other.alphas)

    def __hash__(self) -> int:
        return hash((self.partition, self.alpha0, self.alphas))

    def __repr__(self) -> str:
        return (f"BElement(partition={[list(b) for b in self.partition]}, "
                f"alpha0={self.alpha0}, alphas={[str(a) for a in self.alphas]})")


def b_norm(u: BElement) -> LogNorm:
    """Norm of a B element, from both closed forms (which must agree)."""
    lhs = max([u.alpha0.norm()] + [(u.alpha0 + a).norm() for a in u.alphas])
    rhs = max([u.alpha0.norm()] + [a.norm() for a in u.alphas])
    if lhs != rhs:
        raise AssertionError(f"norm formulas disagree on {u!r}: {lhs} vs {rhs}")
    return rhs


@dataclass(frozen=True)
class Character:
    """chi_0 (tag 0) or chi_nu (tag nu >= 1) on a fixed partition."""

    tag: int

    def __call__(self, u: BElement) -> PadicScalar:
        if self.tag == 0:
            return u.alpha0
        if not 1 <= self.tag <= len(u.alphas):
            raise InputError(f"no block {self.tag} in this partition")
        return u.alpha0 + u.alphas[self.tag - 1]

    @property
    def name(self) -> str:
        return f"chi_{self.tag}"


def _verify_multiplicative(chars, space, partition, samples, seed):
    from .sampling import random_scalar

    rng = random.Random(f"characters:{seed}")
    p, n = space.p, space.precision
    k = len(partition)
    one = BElement.identity(space, partition)
    for chi in chars:
        if chi(one) != 1:
            raise AssertionError(f"{chi.name} is not unital")
    for _ in range(samples):
        x = BElement(space, partition, random_scalar(rng, p, n),
                     [random_scalar(rng, p, n) for _ in range(k)])
        y = BElement(space, partition, random_scalar(rng, p, n),
                     [random_scalar(rng, p, n) for _ in range(k)])
        xy = x * y
        for chi in chars:
            if chi(xy) != chi(x) * chi(y):
                raise AssertionError(f"{chi.name} is not multiplicative on {x!r}, {y!r}")


def characters(u: BElement, samples: int = 16, seed: int = 0):
    """[(chi, chi(u))] over Lambda_0 = {0, 1..k}, tag order."""
    chars = [Character(t) for t in range(len(u.partition) + 1)]
    _verify_multiplicative(chars, u.space, u.partition, samples, seed)
    return [(chi, chi(u)) for chi in chars]


@dataclass(frozen=True)
class GelfandTable:
    """A function on Lambda_0: ``values[t]`` is the value at chi_t."""

    space: WeightedSpace
    partition: tuple
    values: tuple

    def sup_norm(self) -> LogNorm:
        return max(v.norm() for v in self.values)

    def __mul__(self, other: GelfandTable) -> GelfandTable:
        if self.partition != other.partition:
            raise InputError("tables over different partitions")
        return GelfandTable(self.space, self.partition,
                            tuple(a * b for a, b in zip(self.values, other.values)))

    def __add__(self, other: GelfandTable) -> GelfandTable:
        if self.partition != other.partition:
            raise InputError("tables over different partitions")
        return GelfandTable(self.space, self.partition,
                            tuple(a + b for a, b in zip(self.values, other.values)))


def gelfand(u: BElement) -> GelfandTable:
    vals = [u.alpha0] + [u.alpha0 + a for a in u.alphas]
    return GelfandTable(u.space, u.partition, tuple(vals))


def gelfand_inverse(table: GelfandTable, partition=None) -> BElement:
    if partition is not None:
        if _check_partition(partition, table.space.dim) != table.partition:
            raise InputError("table was built over a different partition")
    if len(table.values) != len(table.partition) + 1:
        raise InputError(f"need {len(table.partition) + 1} values, got {len(table.values)}")
    f0 = table.values[0]
    return BElement(table.space, table.partition, f0, [f - f0 for f in table.values[1:]])


@dataclass(frozen=True)
class PointCharacter:
    """chi_i(diag(lambda)) = lambda_i on the diagonal algebra."""

    index: int

    def __call__(self, u: Operator) -> PadicScalar:
        if not u.is_diagonal():
            raise UnsupportedError("point characters act on diagonal operators")
        return u.entry(self.index, self.index)


def d_spectrum_finite(space: WeightedSpace, samples: int = 16, seed: int = 0):
    """The n characters of the diagonal algebra of a dim-n space."""
    from .sampling import random_diagonal

    chars = [PointCharacter(i) for i in range(space.dim)]
    rng = random.Random(f"d-spectrum:{seed}")
    ident = Operator.identity(space)
    for _ in range(samples):
        a = random_diagonal(rng, space)
        b = random_diagonal(rng, space)
        ab = a @ b
        for chi in chars:
            if chi(ab) != chi(a) * chi(b) or chi(ident) != 1:
                raise AssertionError(f"point character {chi.index} is not a character")
    return chars
