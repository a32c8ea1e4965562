"""Seeded generators for scalars, spaces, operators and measures.

Every generator takes an explicit ``random.Random``; nothing touches the
global RNG.  Units are kept short (a few base-p digits) by default so that
exact products stay cheap.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .scalar import PadicScalar


def random_unit(rng: random.Random, p: int, digits: int = 3) -> int:
    u = rng.randrange(1, p ** digits)
    while u % p == 0:
        u = rng.randrange(1, p ** digits)
    return u if rng.random() < 0.5 else -u


def random_scalar(rng: random.Random, p: int, precision: int, vmin: int = -2,
                  vmax: int = 3, digits: int = 3, zero_prob: float = 0.0) -> PadicScalar:
    if zero_prob and rng.random() < zero_prob:
        return PadicScalar._raw(Fraction(0), p, precision)
    v = rng.randint(vmin, vmax)
    q = Fraction(random_unit(rng, p, digits)) * Fraction(p) ** v
    return PadicScalar._raw(q, p, precision)


def random_space(rng: random.Random, dim: int, p: int, precision: int, vmin: int = -2,
                 vmax: int = 2, orthonormal: bool = False):
    from .space import WeightedSpace

    if orthonormal:
        return WeightedSpace.orthonormal(dim, p, precision)
    omega = [random_scalar(rng, p, precision, vmin, vmax, digits=2) for _ in range(dim)]
    return WeightedSpace(omega, p, precision)


def random_vector(rng: random.Random, space, zero_prob: float = 0.2, **kw):
    from .space import Vector

    kw.setdefault("vmin", -2)
    kw.setdefault("vmax", 3)
    return Vector(space, [random_scalar(rng, space.p, space.precision,
                                        zero_prob=zero_prob, **kw)
                          for _ in range(space.dim)])


def random_operator(rng: random.Random, space, zero_prob: float = 0.3, **kw):
    from .operators import Operator

    n = space.dim
    return Operator(space, [[random_scalar(rng, space.p, space.precision,
                                           zero_prob=zero_prob, **kw)
                             for _ in range(n)] for _ in range(n)])


def random_diagonal(rng: random.Random, space, pool=None, zero_prob: float = 0.1, **kw):
    """Diagonal operator; values drawn from ``pool`` when given (forces repeats)."""
    from .operators import Operator

    if pool is not None:
        values = [rng.choice(pool) for _ in range(space.dim)]
    else:
        values = [random_scalar(rng, space.p, space.precision, zero_prob=zero_prob, **kw)
                  for _ in range(space.dim)]
    return Operator.diagonal(space, values)


def random_partition(rng: random.Random, n: int, proper: bool = True):
    """Disjoint nonempty blocks of range(n); leaves at least one index out if ``proper``."""
    idx = list(range(n))
    rng.shuffle(idx)
    limit = n - 1 if proper else n
    take = rng.randint(0, limit) if limit > 0 else 0
    chosen = idx[:take]
    blocks = []
    while chosen:
        k = rng.randint(1, len(chosen))
        blocks.append(sorted(chosen[:k]))
        chosen = chosen[k:]
    return blocks


def random_belement(rng: random.Random, space, **kw):
    from .gelfand import BElement

    blocks = random_partition(rng, space.dim)
    p, prec = space.p, space.precision
    alpha0 = random_scalar(rng, p, prec, zero_prob=0.15, **kw)
    alphas = [random_scalar(rng, p, prec, zero_prob=0.1, **kw) for _ in blocks]
    return BElement(space, blocks, alpha0, alphas)


def random_pi(rng: random.Random, p: int, precision: int) -> PadicScalar:
    return random_scalar(rng, p, precision, vmin=1, vmax=2, digits=2)


def _unipotent(rng, n, lower):
    rows = [[0] * n for _ in range(n)]
    for i in range(n):
        rows[i][i] = 1
        for j in range(n):
            if (j < i if lower else j > i) and rng.random() < 0.5:
                rows[i][j] = rng.randint(-2, 2)
    return rows


def random_labels(rng: random.Random, k: int, n: int):
    """Assign each of n basis indices to one of k atoms (every atom used when k <= n)."""
    labels = list(range(k)) + [rng.randrange(k) for _ in range(max(0, n - k))]
    labels = labels[:n]
    rng.shuffle(labels)
    return labels


def random_pvm(rng: random.Random, algebra, space, conjugate: bool | None = None,
               allow_null: bool = True):
    """A pvm whose atom projectors are level sets of a random labelling.

    On spaces with unit weights the projectors may be conjugated by an
    integral unimodular S = L U, which keeps them contractive; weighted
    spaces get diagonal projectors.
    """
    from .linalg import int_matrix_inverse
    from .measure import ProjectionValuedMeasure
    from .operators import Operator

    n, k = space.dim, len(algebra.atoms)
    if allow_null:
        labels = [rng.randrange(k) for _ in range(n)]
    else:
        labels = random_labels(rng, k, n)
    if conjugate is None:
        conjugate = space.is_orthonormal() and rng.random() < 0.5
    if conjugate and not space.is_orthonormal():
        conjugate = False
    if conjugate:
        lo, up = _unipotent(rng, n, True), _unipotent(rng, n, False)
        s = [[sum(lo[i][t] * up[t][j] for t in range(n)) for j in range(n)] for i in range(n)]
        s_inv = int_matrix_inverse(s)
    table = {}
    for a in range(k):
        d = [[1 if (i == j and labels[i] == a) else 0 for j in range(n)] for i in range(n)]
        if conjugate:
            sd = [[s[i][j] * d[j][j] for j in range(n)] for i in range(n)]
            m = [[sum(sd[i][t] * s_inv[t][j] for t in range(n)) for j in range(n)]
                 for i in range(n)]
        else:
            m = d
        table[algebra.atoms[a]] = Operator(space, m)
    return ProjectionValuedMeasure(algebra, space, table)


def random_step_function(rng: random.Random, algebra, p: int, precision: int, **kw):
    from .measure import StepFunction

    values = {a: random_scalar(rng, p, precision, zero_prob=0.2, **kw) for a in algebra.atoms}
    return StepFunction.from_atom_values(algebra, values)


def random_kmeasure(rng: random.Random, algebra, p: int, precision: int, zero_prob=0.0, **kw):
    from .measure import KMeasure

    values = {a: random_scalar(rng, p, precision, zero_prob=zero_prob, **kw)
              for a in algebra.atoms}
    return KMeasure(algebra, values)
