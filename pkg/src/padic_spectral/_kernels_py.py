"""Pure-Python hot kernels.

Exact integer matrix arithmetic and p-adic valuation scans.  The compiled
module ``_kernels`` exports the same names with the same semantics; the
choice between them is made once in :mod:`padic_spectral._backend`.

Matrices are tuples of row tuples of Python ints.  Nothing here knows about
denominators: callers keep a common denominator alongside the integer matrix.
"""

from math import gcd


def valuation(n, p):
    """Return v_p(n) for a nonzero integer ``n``."""
    if n == 0:
        raise ValueError("valuation of 0 is infinite")
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def split_valuation(n, p):
    """Return ``(v, n / p**v)`` for nonzero ``n``."""
    if n == 0:
        raise ValueError("valuation of 0 is infinite")
    v = 0
    q, r = divmod(n, p)
    while r == 0:
        n = q
        v += 1
        q, r = divmod(n, p)
    return v, n


def mat_mul(a, b):
    cols = tuple(zip(*b))
    return tuple(
        tuple(sum(x * y for x, y in zip(row, col)) for col in cols) for row in a
    )


def mat_vec(a, x):
    return tuple(sum(r * c for r, c in zip(row, x)) for row in a)


def weighted_dot(w, x, y):
    return sum(wi * xi * yi for wi, xi, yi in zip(w, x, y))


def content(a, d):
    """gcd of every entry of ``a`` together with ``d``."""
    g = d
    for row in a:
        for x in row:
            if x:
                g = gcd(g, x)
                if g == 1:
                    return 1
    return g


def mat_valuations(a, p):
    """Matrix of v_p(entry), with ``None`` for zero entries."""
    return tuple(
        tuple(valuation(x, p) if x else None for x in row) for row in a
    )


def min_weighted_valuation(a, p, row_shift, col_shift):
    """min over nonzero a_ij of 2*v_p(a_ij) + row_shift[i] - col_shift[j].

    Returns ``None`` for the zero matrix.  This is the doubled log-norm scan
    behind the weighted operator norm.
    """
    best = None
    for i, row in enumerate(a):
        ri = row_shift[i]
        for j, x in enumerate(row):
            if x:
                t = 2 * valuation(x, p) + ri - col_shift[j]
                if best is None or t < best:
                    best = t
    return best


def mat_rank(a):
    """Rank of an integer matrix by fraction-free (Bareiss) elimination."""
    m = [list(row) for row in a]
    rows = len(m)
    cols = len(m[0]) if rows else 0
    r = 0
    prev = 1
    for c in range(cols):
        piv = None
        for i in range(r, rows):
            if m[i][c]:
                piv = i
                break
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        pr = m[r]
        for i in range(r + 1, rows):
            mi = m[i]
            f = mi[c]
            for j in range(c + 1, cols):
                mi[j] = (mi[j] * pr[c] - f * pr[j]) // prev
            mi[c] = 0
        prev = pr[c]
        r += 1
        if r == rows:
            break
    return r
