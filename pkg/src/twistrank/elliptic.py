"""Short Weierstrass curves over Q and over prime fields.

Affine points are ``(x, y)`` tuples and the point at infinity is ``None``.
Over Q the coordinates are Fractions; over F_q they are ints in ``[0, q)``.

The twist of E: y^2 = x^3 + a x + b by a nonzero integer d is always taken in
the normalized model y^2 = x^3 + a d^2 x + b d^3.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from math import isqrt
from typing import Iterator, Optional, Tuple

from sympy import factorint
from sympy.ntheory import sqrt_mod

from .arith import (
    RationalLike,
    as_fraction,
    is_prime,
    is_square,
    legendre_symbol,
    least_nonresidue,
    next_prime,
    squarefree_part,
)
from .errors import BadReductionError, TwistRankError

Point = Optional[Tuple]

# Exhaustive counting and discrete-log tables up to this field size;
# baby-step giant-step above it.
EXHAUSTIVE_LIMIT = 10**4
MAX_FIELD_PRIME = 10**6


class _WeierstrassGroup:
    """Chord-tangent group law, parametrized by the field operations."""

    a: object
    b: object

    def _norm(self, v):
        return v

    def _div(self, num, den):
        raise NotImplementedError

    def rhs(self, x):
        return self._norm(x * x * x + self.a * x + self.b)

    def contains(self, P: Point) -> bool:
        if P is None:
            return True
        x, y = P
        return self._norm(y * y) == self.rhs(x)

    def _check(self, P: Point):
        if not self.contains(P):
            raise TwistRankError(f"point {P} is not on {self}")

    def _neg(self, P: Point) -> Point:
        if P is None:
            return None
        return (P[0], self._norm(-P[1]))

    def _add(self, P: Point, Q: Point) -> Point:
        if P is None:
            return Q
        if Q is None:
            return P
        x1, y1 = P
        x2, y2 = Q
        if x1 == x2:
            if self._norm(y1 + y2) == 0:
                return None
            lam = self._div(3 * x1 * x1 + self.a, 2 * y1)
        else:
            lam = self._div(y2 - y1, x2 - x1)
        x3 = self._norm(lam * lam - x1 - x2)
        y3 = self._norm(lam * (x1 - x3) - y1)
        return (x3, y3)

    def _mul(self, k: int, P: Point) -> Point:
        if k < 0:
            k, P = -k, self._neg(P)
        result = None
        addend = P
        while k:
            if k & 1:
                result = self._add(result, addend)
            addend = self._add(addend, addend)
            k >>= 1
        return result

    def neg(self, P: Point) -> Point:
        self._check(P)
        return self._neg(P)

    def add(self, P: Point, Q: Point) -> Point:
        self._check(P)
        self._check(Q)
        return self._add(P, Q)

    def mul(self, k: int, P: Point) -> Point:
        self._check(P)
        return self._mul(k, P)


@dataclass(frozen=True)
class CurveQ(_WeierstrassGroup):
    """The curve y^2 = x^3 + a x + b over Q."""

    a: Fraction
    b: Fraction

    def __init__(self, a: RationalLike, b: RationalLike):
        object.__setattr__(self, "a", as_fraction(a))
        object.__setattr__(self, "b", as_fraction(b))
        if self.discriminant == 0:
            raise TwistRankError(f"singular curve: a={self.a}, b={self.b}")

    def __str__(self):
        return f"y^2 = x^3 + ({self.a})x + ({self.b})"

    @property
    def discriminant(self) -> Fraction:
        return -16 * (4 * self.a**3 + 27 * self.b**2)

    def _norm(self, v):
        return Fraction(v)

    def _div(self, num, den):
        return Fraction(num) / den

    def point(self, x: RationalLike, y: RationalLike) -> Point:
        P = (as_fraction(x), as_fraction(y))
        self._check(P)
        return P

    def twist(self, d: int) -> "CurveQ":
        return twist_curve(self, d)


def twist_curve(E: CurveQ, d: int) -> CurveQ:
    """Normalized model y^2 = x^3 + a d^2 x + b d^3 of the twist of E by d."""
    if d == 0:
        raise TwistRankError("cannot twist by 0")
    return CurveQ(E.a * d * d, E.b * d**3)


@dataclass(frozen=True)
class TwistPoint:
    """An affine rational point on the normalized twist E^d of ``curve``.

    ``d`` is usually squarefree (a twist class), but any nonzero integer is
    accepted so that unnormalized class representatives can be transported.
    """

    curve: CurveQ
    d: int
    x: Fraction
    y: Fraction

    def __init__(self, curve: CurveQ, d: int, x: RationalLike, y: RationalLike):
        object.__setattr__(self, "curve", curve)
        object.__setattr__(self, "d", int(d))
        object.__setattr__(self, "x", as_fraction(x))
        object.__setattr__(self, "y", as_fraction(y))
        if self.d == 0:
            raise TwistRankError("twist parameter must be nonzero")
        if not self.twisted.contains(self.xy):
            raise TwistRankError(f"({self.x}, {self.y}) is not on E^{self.d}: {self.twisted}")

    @cached_property
    def twisted(self) -> CurveQ:
        return twist_curve(self.curve, self.d)

    @property
    def xy(self) -> tuple[Fraction, Fraction]:
        return (self.x, self.y)

    @classmethod
    def from_xy(cls, curve: CurveQ, d: int, P: Point) -> "TwistPoint":
        if P is None:
            raise TwistRankError("the point at infinity is not an affine twist point")
        return cls(curve, d, P[0], P[1])

    def __neg__(self) -> "TwistPoint":
        return TwistPoint(self.curve, self.d, self.x, -self.y)

    def __add__(self, other: "TwistPoint") -> Point:
        if (other.curve, other.d) != (self.curve, self.d):
            raise TwistRankError("points lie on different twists")
        return self.twisted._add(self.xy, other.xy)

    def __rmul__(self, k: int) -> Point:
        return self.twisted._mul(k, self.xy)


def twist_transport(E: CurveQ, P: Point, c: int, d: int) -> Point:
    """Isomorphism E^c -> E^d over Q, defined when c/d is a rational square.

    With c = d t^2 it sends (x, y) to (x / t^2, y / t^3).
    """
    if c == 0 or d == 0:
        raise TwistRankError("twist parameters must be nonzero")
    ratio = Fraction(c, d)
    if not (ratio > 0 and is_square(ratio)):
        raise TwistRankError(f"{c} and {d} lie in different square classes")
    twist_curve(E, c)._check(P)
    if P is None:
        return None
    t = squarefree_part(ratio)[1]
    return (P[0] / t**2, P[1] / t**3)


@dataclass(frozen=True)
class CurveFq(_WeierstrassGroup):
    """The curve y^2 = x^3 + a x + b over the prime field F_q, q odd."""

    q: int
    a: int
    b: int

    def __init__(self, q: int, a: int, b: int):
        if q < 3 or not is_prime(q):
            raise TwistRankError(f"{q} is not an odd prime")
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "a", a % q)
        object.__setattr__(self, "b", b % q)
        if (4 * self.a**3 + 27 * self.b**2) % q == 0:
            raise BadReductionError(f"curve is singular mod {q}")

    def __str__(self):
        return f"y^2 = x^3 + {self.a}x + {self.b} over F_{self.q}"

    def _norm(self, v):
        return v % self.q

    def _div(self, num, den):
        return num * pow(den, -1, self.q) % self.q

    def quadratic_twist(self) -> "CurveFq":
        u = least_nonresidue(self.q)
        return CurveFq(self.q, self.a * u * u, self.b * u**3)

    def points(self) -> Iterator[tuple[int, int]]:
        """Affine points in lexicographic order of (x, y)."""
        q = self.q
        for x in range(q):
            f = self.rhs(x)
            if f == 0:
                yield (x, 0)
            elif legendre_symbol(f, q) == 1:
                r = int(sqrt_mod(f, q))
                yield (x, min(r, q - r))
                yield (x, max(r, q - r))

    def order(self) -> int:
        return group_order(self)

    def point_order(self, P: Point) -> int:
        return order_dividing(self, P, self.order())


def order_dividing(C: _WeierstrassGroup, P: Point, M: int) -> int:
    """Order of P given that M * P is the identity."""
    o = M
    for ell in factorint(M):
        while o % ell == 0 and C._mul(o // ell, P) is None:
            o //= ell
    return o


def _check_field_size(C: CurveFq, max_prime: int):
    if C.q >= max_prime:
        raise TwistRankError(f"field size {C.q} exceeds the supported bound {max_prime}")


def _bsgs(C: CurveFq, target: Point, base: Point, lo: int, span: int) -> Optional[int]:
    """Least k in [lo, lo + span) with k * base == target, or None."""
    s = isqrt(span) + 1
    baby = {}
    R = None
    for j in range(s):
        baby.setdefault(R, j)
        R = C._add(R, base)
    giant = C._neg(C._mul(s, base))
    T = C._add(target, C._neg(C._mul(lo, base)))
    for i in range(s + 1):
        j = baby.get(T)
        if j is not None and i * s + j < span:
            return lo + i * s + j
        T = C._add(T, giant)
    return None


def discrete_log(C: CurveFq, target: Point, base: Point, order: int) -> Optional[int]:
    """k in [0, order) with k * base == target, or None if target is not in <base>."""
    return _bsgs(C, target, base, 0, order)


def _hasse_candidates(C: CurveFq, P: Point, lo: int, hi: int) -> set[int]:
    M = _bsgs(C, None, P, lo, hi - lo + 1)
    if M is None:
        raise AssertionError(f"no multiple of the point order in the Hasse interval for {C}")
    o = order_dividing(C, P, M)
    return {N for N in range(lo + (-lo) % o, hi + 1, o)}


def _order_bsgs(C: CurveFq) -> int:
    # Mestre: for q > 229, E or its twist has a point whose order pins down
    # the group order inside the Hasse interval.
    q = C.q
    w = isqrt(4 * q) + 1
    lo, hi = q + 1 - w, q + 1 + w
    T = C.quadratic_twist()
    cands = set(range(lo, hi + 1))
    pts_e, pts_t = C.points(), T.points()
    for _ in range(200):
        P = next(pts_e)
        cands &= _hasse_candidates(C, P, lo, hi)
        if len(cands) == 1:
            break
        Pt = next(pts_t)
        cands &= {2 * q + 2 - N for N in _hasse_candidates(T, Pt, lo, hi)}
        if len(cands) == 1:
            break
    if len(cands) != 1:
        raise AssertionError(f"point count did not converge for {C}")
    return cands.pop()


@lru_cache(maxsize=4096)
def _group_order(C: CurveFq) -> int:
    q = C.q
    if q <= EXHAUSTIVE_LIMIT:
        return q + 1 + sum(legendre_symbol(C.rhs(x), q) for x in range(q))
    return _order_bsgs(C)


def group_order(C: CurveFq, max_prime: int = MAX_FIELD_PRIME) -> int:
    """Exact number of F_q-points, including infinity."""
    _check_field_size(C, max_prime)
    return _group_order(C)


@dataclass(frozen=True)
class GroupStructure:
    """E(F_q) = <g1> + <g2>, cyclic of orders m and n with m | n."""

    q: int
    m: int
    n: int
    generator_1: Point
    generator_2: Point

    @property
    def order(self) -> int:
        return self.m * self.n


def _in_cyclic(C: CurveFq, T: Point, h: Point, ell: int) -> bool:
    # is T one of the multiples of h (h of prime order ell)?
    R = None
    for _ in range(ell):
        if R == T:
            return True
        R = C._add(R, h)
    return False


def splits_off(C: CurveFq, P: Point, m: int, g: Point, n: int) -> bool:
    """True when m*P = O, P has order exactly m and <P> meets <g> trivially."""
    if C._mul(m, P) is not None:
        return False
    for ell in factorint(m):
        T = C._mul(m // ell, P)
        if T is None or _in_cyclic(C, T, C._mul(n // ell, g), ell):
            return False
    return True


def _structure_exhaustive(C: CurveFq) -> GroupStructure:
    N = group_order(C)
    pts = list(C.points())
    orders = [order_dividing(C, P, N) for P in pts]
    n = max(orders, default=1)
    m = N // n
    g2 = pts[orders.index(n)] if pts else None
    g1 = None
    if m > 1:
        g1 = next(P for P, o in zip(pts, orders) if o == m and splits_off(C, P, m, g2, n))
    return GroupStructure(C.q, m, n, g1, g2)


def _combine(C: CurveFq, g: Point, og: int, P: Point, oP: int) -> tuple[Point, int]:
    """An element whose order is lcm(og, oP)."""
    result, L = None, 1
    fg, fP = factorint(og), factorint(oP)
    for ell in set(fg) | set(fP):
        eg, eP = fg.get(ell, 0), fP.get(ell, 0)
        if eg >= eP:
            result = C._add(result, C._mul(og // ell**eg, g))
            L *= ell**eg
        else:
            result = C._add(result, C._mul(oP // ell**eP, P))
            L *= ell**eP
    return result, L


def _structure_generic(C: CurveFq) -> GroupStructure:
    # Grow an element g of maximal order L from points in lexicographic order,
    # and stop once some point yields a complement of order N/L: then
    # <g1> + <g> has N elements and the structure is proven.
    N = group_order(C)
    q = C.q
    g, L = None, 1
    for P in C.points():
        oP = order_dividing(C, P, N)
        if L % oP:
            g, L = _combine(C, g, L, P, oP)
        m = N // L
        if m == 1:
            return GroupStructure(q, 1, N, None, g)
        if L % m or (q - 1) % m:
            continue
        beta = discrete_log(C, C._mul(m, P), C._mul(m, g), L // m)
        if beta is None:
            continue
        P1 = C._add(P, C._neg(C._mul(beta, g)))
        if splits_off(C, P1, m, g, L):
            return GroupStructure(q, m, L, P1, g)
    raise AssertionError(f"group structure not determined for {C}")


@lru_cache(maxsize=1024)
def _group_structure(C: CurveFq) -> GroupStructure:
    if C.q <= EXHAUSTIVE_LIMIT:
        return _structure_exhaustive(C)
    return _structure_generic(C)


def group_structure(C: CurveFq, max_prime: int = MAX_FIELD_PRIME) -> GroupStructure:
    """Invariants m | n and generators with E(F_q) = Z/m x Z/n.

    For q up to EXHAUSTIVE_LIMIT the generators are the lexicographically
    least points realizing the decomposition.
    """
    _check_field_size(C, max_prime)
    return _group_structure(C)


def is_good_reduction(E: CurveQ, q: int) -> bool:
    """Whether the given model reduces to a smooth curve mod the odd prime q."""
    if q == 2:
        return False
    if E.a.denominator % q == 0 or E.b.denominator % q == 0:
        return False
    disc = E.discriminant
    return disc.numerator % q != 0


def reduce_curve(E: CurveQ, d: int, q: int) -> CurveFq:
    """Reduction of the normalized twist E^d modulo an odd prime q."""
    if q < 3 or not is_prime(q):
        raise BadReductionError(f"{q} is not an odd prime")
    Ed = twist_curve(E, d)
    if not is_good_reduction(Ed, q):
        raise BadReductionError(f"E^{d} has bad reduction at {q}")
    A = Ed.a.numerator * pow(Ed.a.denominator, -1, q)
    B = Ed.b.numerator * pow(Ed.b.denominator, -1, q)
    return CurveFq(q, A, B)


def reduce_rational_point(P: Point, q: int) -> Point:
    """Reduce a rational point on a q-integral model; q in the denominator of x
    means the point reduces to infinity."""
    if P is None:
        return None
    x, y = P
    if x.denominator % q == 0:
        return None
    return (
        x.numerator * pow(x.denominator, -1, q) % q,
        y.numerator * pow(y.denominator, -1, q) % q,
    )


def reduce_point(P: TwistPoint, q: int) -> Point:
    C = reduce_curve(P.curve, P.d, q)
    R = reduce_rational_point(P.xy, q)
    assert C.contains(R)
    return R


def _good_witness_primes(E: CurveQ, d: int, p: int, limit: int) -> Iterator[int]:
    Ed = twist_curve(E, d)
    q = 2
    while True:
        q = next_prime(q)
        if q >= limit:
            return
        if q != p and is_good_reduction(Ed, q):
            yield q


def torsion_p_trivial(E: CurveQ, d: int, p: int, scan_bound: int = 10**4) -> tuple[bool, Optional[int]]:
    """One-sided check that E^d(Q)[p] = 0 for an odd prime p.

    Returns ``(True, q)`` when some good odd prime q != p has p not dividing
    #E^d(F_q); prime-to-q torsion injects into E^d(F_q), so this is a proof.
    ``(False, None)`` only means no witness was found below ``scan_bound``.
    """
    if p == 2 or not is_prime(p):
        raise TwistRankError("p must be an odd prime")
    for q in _good_witness_primes(E, d, p, scan_bound):
        if group_order(reduce_curve(E, d, q)) % p:
            return True, q
    return False, None


def naive_height(x: Fraction) -> int:
    return max(abs(x.numerator), x.denominator)
