"""The x-line P^1 = E/{+-1} and the partition of its rational points by twist.

A Kummer coordinate is a Fraction (an affine point of P^1) or ``None`` for
the point at infinity. The open set Km_0 excludes infinity and the roots of
x^3 + a x + b; every x in it lifts to exactly one twist class d, on which the
lift is unique up to sign.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .arith import Place, LocalSquareClass, RationalLike, as_fraction, local_square_class, squarefree_part
from .elliptic import CurveQ, TwistPoint
from .errors import TwoTorsionError

KummerX = Optional[Fraction]


def kummer_x(x: RationalLike, c: int) -> Fraction:
    """Image in P^1 of a point with abscissa x on the normalized twist E^c."""
    return as_fraction(x) / c


def x_of(P: TwistPoint) -> Fraction:
    """The quotient map E^d -> P^1, (x, y) -> x / d. Insensitive to the sign of P."""
    if P is None:
        raise TwoTorsionError("the point at infinity maps outside Km_0")
    return kummer_x(P.x, P.d)


def is_two_torsion_x(E: CurveQ, x: KummerX) -> bool:
    return x is None or E.rhs(as_fraction(x)) == 0


def _check_x(E: CurveQ, x: KummerX) -> Fraction:
    if is_two_torsion_x(E, x):
        raise TwoTorsionError(f"2-torsion x: {x} is infinity or a root of x^3 + ({E.a})x + ({E.b})")
    return as_fraction(x)


@dataclass(frozen=True)
class CommonLift:
    """Points on one twist E^d lifting a tuple of Kummer coordinates.

    Each point is determined up to sign; the stored one has y > 0.
    """

    twist: int
    points: tuple[TwistPoint, ...]

    @property
    def r(self) -> int:
        return len(self.points)

    @property
    def point(self) -> TwistPoint:
        return self.points[0]


def lift_point(E: CurveQ, x: RationalLike) -> TwistPoint:
    """The point (d x, d^2 s) on E^d where x^3 + a x + b = d s^2."""
    x = _check_x(E, x)
    d, s = squarefree_part(E.rhs(x))
    return TwistPoint(E, d, d * x, d * d * s)


def lift_x(E: CurveQ, x: RationalLike) -> CommonLift:
    P = lift_point(E, x)
    return CommonLift(P.d, (P,))


def common_lift(E: CurveQ, xs: Sequence[RationalLike]) -> Optional[CommonLift]:
    """Lift a rational point of Km_0(E^r), given by its r coordinates.

    The tuple lifts to a single twist exactly when every coordinate has the
    same twist class; otherwise None.
    """
    if not xs:
        raise ValueError("need at least one coordinate")
    pts = tuple(lift_point(E, x) for x in xs)
    d = pts[0].d
    if any(P.d != d for P in pts):
        return None
    return CommonLift(d, pts)


def local_twist_class(E: CurveQ, x: RationalLike, v: Place) -> LocalSquareClass:
    """The class c in Q_v*/Q_v*^2 for which x lifts to E^c(Q_v)."""
    x = _check_x(E, x)
    return local_square_class(E.rhs(x), v)
