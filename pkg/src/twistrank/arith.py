"""Exact number-theoretic helpers: squarefree parts, residue symbols and
square classes of rationals in the completions Q_v.

Rationals are :class:`fractions.Fraction` throughout; they are always stored
reduced with a positive denominator.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Union

from sympy import factorint
from sympy import isprime as _isprime
from sympy import nextprime as _nextprime

from .errors import TwistRankError

RationalLike = Union[int, Fraction, str]


def as_fraction(x: RationalLike) -> Fraction:
    """Coerce ints, Fractions and strings like ``"-15/64"`` to a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        s = x.strip()
        if not s or any(c in s for c in ".eE"):
            raise ValueError(f"not an exact rational: {x!r}")
        return Fraction(s)
    raise TypeError(f"cannot interpret {x!r} as a rational")


def format_fraction(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def is_prime(n: int) -> bool:
    # sympy's test is deterministic below 2**64
    return n >= 2 and bool(_isprime(n))


def next_prime(n: int) -> int:
    return int(_nextprime(n))


def valuation(x: RationalLike, q: int) -> int:
    """q-adic valuation of a nonzero rational."""
    x = as_fraction(x)
    if x == 0:
        raise TwistRankError("valuation of zero is infinite")
    v = 0
    n, d = abs(x.numerator), x.denominator
    while n % q == 0:
        n //= q
        v += 1
    while d % q == 0:
        d //= q
        v -= 1
    return v


def squarefree_part(x: RationalLike) -> tuple[int, Fraction]:
    """Return ``(d, s)`` with ``x == d * s**2``, ``d`` squarefree and ``s > 0``.

    >>> squarefree_part(Fraction(-15, 64))
    (-15, Fraction(1, 8))
    """
    x = as_fraction(x)
    if x == 0:
        raise TwistRankError("squarefree part of zero is undefined")
    exps: dict[int, int] = {}
    for prime, e in factorint(abs(x.numerator)).items():
        exps[prime] = exps.get(prime, 0) + e
    for prime, e in factorint(x.denominator).items():
        exps[prime] = exps.get(prime, 0) - e
    d = -1 if x < 0 else 1
    s = Fraction(1)
    for prime, e in exps.items():
        if e % 2:
            d *= prime
        s *= Fraction(prime) ** ((e - e % 2) // 2)
    return d, s


def is_square(x: RationalLike) -> bool:
    x = as_fraction(x)
    return x == 0 or squarefree_part(x)[0] == 1


def is_squarefree(n: int) -> bool:
    return n != 0 and all(e == 1 for e in factorint(abs(n)).values())


def legendre_symbol(a: int, q: int) -> int:
    """Quadratic residue symbol (a/q) for an odd prime q, by Euler's criterion."""
    r = pow(a % q, (q - 1) // 2, q)
    return -1 if r == q - 1 else r


@lru_cache(maxsize=None)
def least_nonresidue(q: int) -> int:
    u = 2
    while legendre_symbol(u, q) != -1:
        u += 1
    return u


@dataclass(frozen=True, order=True)
class Place:
    """A place of Q: a rational prime, or the real place when ``prime`` is 0."""

    prime: int = 0

    def __post_init__(self):
        if self.prime != 0 and not is_prime(self.prime):
            raise TwistRankError(f"{self.prime} is not prime")

    @classmethod
    def real(cls) -> "Place":
        return cls(0)

    @classmethod
    def parse(cls, text: str | int) -> "Place":
        if isinstance(text, int):
            return cls(text)
        t = text.strip().lower()
        if t in ("real", "inf", "infinity", "oo"):
            return cls(0)
        return cls(int(t))

    @property
    def is_real(self) -> bool:
        return self.prime == 0

    def __str__(self):
        return "real" if self.is_real else str(self.prime)


@dataclass(frozen=True)
class LocalSquareClass:
    place: Place
    representative: int

    def __str__(self):
        return f"{self.representative} in Q_{self.place}*/squares"


def square_class_representatives(v: Place) -> tuple[int, ...]:
    """Canonical representatives of Q_v*/Q_v*^2, in a fixed order."""
    if v.is_real:
        return (1, -1)
    q = v.prime
    if q == 2:
        return (1, 3, 5, 7, 2, 6, 10, 14)
    u = least_nonresidue(q)
    return (1, u, q, q * u)


def local_square_class(x: RationalLike, v: Place) -> LocalSquareClass:
    """Class of a nonzero rational modulo squares in the completion at ``v``.

    At an odd prime the class is read off from the parity of the valuation and
    the residue symbol of the unit part; at 2 from the parity and the unit part
    mod 8; at the real place from the sign.
    """
    x = as_fraction(x)
    if x == 0:
        raise TwistRankError("zero has no square class")
    if v.is_real:
        return LocalSquareClass(v, 1 if x > 0 else -1)
    q = v.prime
    val = valuation(x, q)
    unit = x / Fraction(q) ** val
    if q == 2:
        rep = unit.numerator * pow(unit.denominator, -1, 8) % 8
    else:
        residue = unit.numerator * pow(unit.denominator, -1, q) % q
        rep = 1 if legendre_symbol(residue, q) == 1 else least_nonresidue(q)
    if val % 2:
        rep *= q
    return LocalSquareClass(v, rep)
