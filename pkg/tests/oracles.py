"""Brute-force reference computations, deliberately independent of twistrank."""

from fractions import Fraction
from math import isqrt


def squarefree_int(n):
    """Squarefree part of a nonzero integer by removing square factors k^2."""
    sign = -1 if n < 0 else 1
    n = abs(n)
    k = 2
    while k * k <= n:
        while n % (k * k) == 0:
            n //= k * k
        k += 1
    return sign * n


def squarefree_rational(x):
    x = Fraction(x)
    # x = n/m = n*m / m^2
    return squarefree_int(x.numerator * x.denominator)


def is_rational_square(x):
    x = Fraction(x)
    if x < 0:
        return False
    n, m = x.numerator, x.denominator
    return isqrt(n) ** 2 == n and isqrt(m) ** 2 == m


def count_points(q, a, b):
    """#E(F_q) by testing every pair (x, y)."""
    a, b = a % q, b % q
    affine = sum(1 for x in range(q) for y in range(q) if (y * y - x**3 - a * x - b) % q == 0)
    return affine + 1


def all_points(q, a, b):
    pts = [None]
    for x in range(q):
        for y in range(q):
            if (y * y - x**3 - a * x - b) % q == 0:
                pts.append((x, y))
    return pts


def add_fq(q, a, P, Q):
    if P is None:
        return Q
    if Q is None:
        return P
    (x1, y1), (x2, y2) = P, Q
    if x1 == x2 and (y1 + y2) % q == 0:
        return None
    if P == Q:
        lam = (3 * x1 * x1 + a) * pow(2 * y1, q - 2, q) % q
    else:
        lam = (y2 - y1) * pow(x2 - x1, q - 2, q) % q
    x3 = (lam * lam - x1 - x2) % q
    return (x3, (lam * (x1 - x3) - y1) % q)


def order_by_addition(q, a, P):
    k, R = 1, P
    while R is not None:
        R = add_fq(q, a, R, P)
        k += 1
    return k


def group_invariants(q, a, b):
    """(m, n) with E(F_q) = Z/m x Z/n, from the largest element order."""
    pts = all_points(q, a, b)
    n = max(order_by_addition(q, a, P) if P is not None else 1 for P in pts)
    return len(pts) // n, n


def _unit_is_square_mod(u, q, k):
    mod = q**k
    u %= mod
    return any(t * t % mod == u for t in range(mod))


def is_local_square(z, q):
    """Is the nonzero rational z a square in Q_q (q = 0 for the reals)?"""
    z = Fraction(z)
    if q == 0:
        return z > 0
    v = 0
    n, m = z.numerator, z.denominator
    while n % q == 0:
        n //= q
        v += 1
    while m % q == 0:
        m //= q
        v -= 1
    if v % 2:
        return False
    # unit n/m is a square iff n*m is; squares are detected mod 8 at 2, mod q otherwise
    k = 3 if q == 2 else 1
    return _unit_is_square_mod(n * m, q, k)


def add_q(a, P, Q):
    """Group law over Q on y^2 = x^3 + a x + b (b does not enter)."""
    if P is None:
        return Q
    if Q is None:
        return P
    (x1, y1), (x2, y2) = P, Q
    if x1 == x2 and y1 + y2 == 0:
        return None
    if P == Q:
        lam = (3 * x1 * x1 + a) / (2 * y1)
    else:
        lam = (y2 - y1) / (x2 - x1)
    x3 = lam * lam - x1 - x2
    return (x3, lam * (x1 - x3) - y1)


def squarefree_smooth(n, limit):
    """Squarefree part of n when every prime factor of n is at most limit."""
    for k in range(2, limit + 1):
        while n % (k * k) == 0:
            n //= k * k
    return n


def heights(H):
    """All u/w in lowest terms with |u|, w <= H, by a plain double loop."""
    out = set()
    for w in range(1, H + 1):
        for u in range(-H, H + 1):
            out.add(Fraction(u, w))
    return out
