# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled hot kernels; drop-in twin of ``_kernels_py``.

Entries are arbitrary-precision Python ints.  Word-sized values take a C
fast path for valuation scans; products and sums stay on Python objects so
results are exact regardless of size.
"""

from math import gcd

cdef long long _SMALL = 1LL << 62


cdef inline int _small_valuation(long long n, long long p):
    cdef int v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


cpdef int valuation(object n, object p) except -1:
    if n == 0:
        raise ValueError("valuation of 0 is infinite")
    if -_SMALL < n < _SMALL and p < _SMALL:
        return _small_valuation(<long long>n, <long long>p)
    cdef int v = 0
    while n % p == 0:
        n = n // p
        v += 1
    return v


def split_valuation(object n, object p):
    if n == 0:
        raise ValueError("valuation of 0 is infinite")
    cdef int v = 0
    q, r = divmod(n, p)
    while r == 0:
        n = q
        v += 1
        q, r = divmod(n, p)
    return v, n


def mat_mul(tuple a, tuple b):
    cdef Py_ssize_t n = len(a)
    cdef Py_ssize_t m = len(b)
    cdef Py_ssize_t k = len(b[0]) if m else 0
    cdef Py_ssize_t i, j, t
    cdef tuple row
    cdef list out = []
    cdef list acc
    cdef object s, x
    cdef tuple cols = tuple(zip(*b))
    for i in range(n):
        row = <tuple>a[i]
        acc = []
        for j in range(k):
            col = <tuple>cols[j]
            s = 0
            for t in range(m):
                x = row[t]
                if x:
                    s = s + x * col[t]
            acc.append(s)
        out.append(tuple(acc))
    return tuple(out)


def mat_vec(tuple a, tuple x):
    cdef Py_ssize_t n = len(a)
    cdef Py_ssize_t m = len(x)
    cdef Py_ssize_t i, t
    cdef tuple row
    cdef object s, c
    cdef list out = []
    for i in range(n):
        row = <tuple>a[i]
        s = 0
        for t in range(m):
            c = x[t]
            if c:
                s = s + row[t] * c
        out.append(s)
    return tuple(out)


def weighted_dot(tuple w, tuple x, tuple y):
    cdef Py_ssize_t i
    cdef object s = 0
    for i in range(len(w)):
        if x[i] and y[i]:
            s = s + w[i] * x[i] * y[i]
    return s


def content(tuple a, object d):
    cdef object g = d
    cdef tuple row
    for row in a:
        for x in row:
            if x:
                g = gcd(g, x)
                if g == 1:
                    return 1
    return g


def mat_valuations(tuple a, object p):
    return tuple(
        tuple(valuation(x, p) if x else None for x in row) for row in a
    )


def min_weighted_valuation(tuple a, object p, tuple row_shift, tuple col_shift):
    cdef Py_ssize_t i, j
    cdef tuple row
    cdef object best = None
    cdef long long t, ri
    for i in range(len(a)):
        row = <tuple>a[i]
        ri = row_shift[i]
        for j in range(len(row)):
            x = row[j]
            if x:
                t = 2 * valuation(x, p) + ri - <long long>col_shift[j]
                if best is None or t < best:
                    best = t
    return best


def mat_rank(a):
    cdef list m = [list(row) for row in a]
    cdef Py_ssize_t rows = len(m)
    cdef Py_ssize_t cols = len(m[0]) if rows else 0
    cdef Py_ssize_t r = 0, c, i, j, piv
    cdef object prev = 1, f, pc
    cdef list pr, mi
    for c in range(cols):
        piv = -1
        for i in range(r, rows):
            if (<list>m[i])[c]:
                piv = i
                break
        if piv < 0:
            continue
        m[r], m[piv] = m[piv], m[r]
        pr = <list>m[r]
        pc = pr[c]
        for i in range(r + 1, rows):
            mi = <list>m[i]
            f = mi[c]
            if f:
                for j in range(c + 1, cols):
                    mi[j] = (mi[j] * pc - f * pr[j]) // prev
            else:
                for j in range(c + 1, cols):
                    mi[j] = (mi[j] * pc) // prev
            mi[c] = 0
        prev = pc
        r += 1
        if r == rows:
            break
    return r
