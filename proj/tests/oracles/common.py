"""Shared helpers for the oracle scripts. Pure Python with exact rationals
where the quantity is rational; nothing here calls the C++ library."""
from fractions import Fraction
from math import gcd, log

import sympy


def totient(n):
    return int(sympy.totient(n))


def divisor_count(n):
    return int(sympy.divisor_count(n))


def mobius(n):
    return int(sympy.mobius(n))


def glog(x):
    """Natural log with log x := 2 for x <= 1."""
    return 2.0 if x <= 1 else log(x)


def centers(n, theta, reduced):
    return [Fraction(m) / n + theta / n for m in range(1, n + 1) if not reduced or gcd(m, n) == 1]


def arc_union(n, f, theta, reduced):
    """A_n as sorted disjoint half-open intervals inside [0, 1), exact."""
    r = f / n
    pieces = []
    if 2 * r >= 1:
        return [(Fraction(0), Fraction(1))]
    for c in centers(n, theta, reduced):
        lo, hi = c - r, c + r
        # reduce to [0, 1) and split at the seam
        shift = (lo.numerator // lo.denominator)
        lo, hi = lo - shift, hi - shift
        if hi <= 1:
            pieces.append((lo, hi))
        else:
            pieces.append((lo, Fraction(1)))
            pieces.append((Fraction(0), hi - 1))
    pieces = sorted(p for p in pieces if p[1] > p[0])
    merged = []
    for lo, hi in pieces:
        if merged and lo <= merged[-1][1]:
            merged[-1] = (merged[-1][0], max(merged[-1][1], hi))
        else:
            merged.append((lo, hi))
    return merged


def measure(arcs):
    return sum((hi - lo for lo, hi in arcs), Fraction(0))


def intersect(a, b):
    out = []
    i = j = 0
    while i < len(a) and j < len(b):
        lo = max(a[i][0], b[j][0])
        hi = min(a[i][1], b[j][1])
        if hi > lo:
            out.append((lo, hi))
        if a[i][1] < b[j][1]:
            i += 1
        else:
            j += 1
    return out
