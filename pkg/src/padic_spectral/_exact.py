"""Common-denominator encoding of rational vectors and matrices.

A rational vector is stored as ``(nums, den)`` with integer ``nums`` and a
positive ``den``, reduced so that gcd(den, *nums) == 1.  This keeps inner
loops on plain ints (see the kernels) instead of Fraction objects.
"""

from fractions import Fraction
from math import gcd, lcm

from ._backend import kernels


def vec_from_fractions(values):
    qs = [Fraction(v) for v in values]
    den = lcm(*(q.denominator for q in qs)) if qs else 1
    nums = tuple(q.numerator * (den // q.denominator) for q in qs)
    return vec_normalize(nums, den)


def vec_normalize(nums, den):
    if den < 0:
        nums, den = tuple(-x for x in nums), -den
    g = gcd(den, *nums)
    if g > 1:
        nums = tuple(x // g for x in nums)
        den //= g
    return tuple(nums), den


def mat_from_fractions(rows):
    qs = [[Fraction(v) for v in row] for row in rows]
    den = lcm(*(q.denominator for row in qs for q in row)) if qs and qs[0] else 1
    nums = tuple(tuple(q.numerator * (den // q.denominator) for q in row) for row in qs)
    return mat_normalize(nums, den)


def mat_normalize(nums, den):
    if den < 0:
        nums, den = tuple(tuple(-x for x in row) for row in nums), -den
    g = kernels.content(nums, den)
    if g > 1:
        nums = tuple(tuple(x // g for x in row) for row in nums)
        den //= g
    return nums, den


def rescale(nums, den, target):
    """Re-express a vector over denominator ``target`` (a multiple of ``den``)."""
    f = target // den
    return tuple(x * f for x in nums)


def mat_rescale(nums, den, target):
    f = target // den
    if f == 1:
        return nums
    return tuple(tuple(x * f for x in row) for row in nums)
