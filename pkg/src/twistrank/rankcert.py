"""Certificates that a twist E^d has Mordell-Weil rank at least r.

Pick r primes q_i of good reduction with p | #E^d(F_{q_i}) and surjections
pi_i: E^d(F_{q_i}) -> F_p. For points P_1..P_r in E^d(Q), the r x r matrix
(pi_i(P_j mod q_i)) over F_p is nonsingular only if the P_j are independent,
provided E^d(Q)[p] = 0: a relation sum a_j P_j = 0 can be divided by p until
some a_j is a unit mod p, and then (a_j) is a kernel vector of the matrix.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Optional, Sequence

from .arith import is_prime, next_prime
from .elliptic import (
    EXHAUSTIVE_LIMIT,
    CurveFq,
    CurveQ,
    GroupStructure,
    Point,
    TwistPoint,
    discrete_log,
    group_order,
    group_structure,
    is_good_reduction,
    reduce_curve,
    reduce_rational_point,
    torsion_p_trivial,
    twist_curve,
)
from .errors import BadReductionError, ScanExhaustedError, TwistRankError
from .kummer import CommonLift

VALID = "VALID"
INCONCLUSIVE = "INCONCLUSIVE"

DEFAULT_P = 3
PLACE_SCAN_BOUND = 10**5
TORSION_SCAN_BOUND = 10**4


def _check_odd_prime(p: int):
    if p == 2 or not is_prime(p):
        raise TwistRankError(f"p must be an odd prime, got {p}")


@lru_cache(maxsize=256)
def _coordinate_table(C: CurveFq, S: GroupStructure) -> dict:
    table = {}
    A = None
    for alpha in range(S.m):
        B = A
        for beta in range(S.n):
            table[B] = (alpha, beta)
            B = C._add(B, S.generator_2)
        A = C._add(A, S.generator_1)
    return table


def group_coordinates(C: CurveFq, S: GroupStructure, P: Point) -> tuple[int, int]:
    """(alpha, beta) with P = alpha*g1 + beta*g2 for the generators of S."""
    if not C.contains(P):
        raise TwistRankError(f"{P} is not on {C}")
    if C.q <= EXHAUSTIVE_LIMIT:
        return _coordinate_table(C, S)[P]
    T = P
    for alpha in range(S.m):
        beta = discrete_log(C, T, S.generator_2, S.n)
        if beta is not None:
            return alpha, beta
        T = C._add(T, C._neg(S.generator_1))
    raise AssertionError("generators do not span the group")


@dataclass(frozen=True)
class ProjectionMap:
    """A surjective homomorphism E(F_q) -> F_p.

    It sends alpha*g1 + beta*g2 to c1*alpha + c2*beta mod p; c1 must vanish
    unless p divides m, so that the value is well defined.
    """

    curve: CurveFq
    p: int
    structure: GroupStructure
    coefficients: tuple[int, int] = (0, 1)

    @property
    def q(self) -> int:
        return self.curve.q

    def __call__(self, P: Point) -> int:
        alpha, beta = group_coordinates(self.curve, self.structure, P)
        c1, c2 = self.coefficients
        return (c1 * alpha + c2 * beta) % self.p


def projection_map(C: CurveFq, p: int) -> ProjectionMap:
    """Surjection onto F_p through the Z/n factor: beta -> beta mod p.

    Since m | n and p | mn, p divides n, so beta mod p is well defined.
    """
    _check_odd_prime(p)
    if C.q == p:
        raise TwistRankError("the place must differ from p")
    if group_order(C) % p:
        raise TwistRankError(f"{p} does not divide #E(F_{C.q}) = {group_order(C)}")
    S = group_structure(C)
    pi = ProjectionMap(C, p, S, (0, 1))
    if pi(S.generator_2) == 0:
        raise AssertionError("projection is not surjective")
    return pi


def find_certifying_places(
    E: CurveQ,
    d: int,
    p: int,
    r: int,
    avoid: Iterable[int] = (),
    scan_bound: int = PLACE_SCAN_BOUND,
) -> list[int]:
    """First r odd primes q (increasing, outside ``avoid``) of good reduction
    for E^d, with q != p and p | #E^d(F_q)."""
    _check_odd_prime(p)
    if r < 0:
        raise ValueError("r must be nonnegative")
    avoid = set(avoid)
    Ed = twist_curve(E, d)
    found: list[int] = []
    q = 2
    while len(found) < r:
        q = next_prime(q)
        if q >= scan_bound:
            raise ScanExhaustedError(
                f"only {len(found)} of {r} places with {p} | #E^{d}(F_q) below {scan_bound}"
            )
        if q in avoid or q == p or d % q == 0 or not is_good_reduction(Ed, q):
            continue
        if group_order(reduce_curve(E, d, q)) % p == 0:
            found.append(q)
    return found


def det_mod_p(matrix: Sequence[Sequence[int]], p: int) -> int:
    """Determinant over F_p by Gaussian elimination."""
    M = [[v % p for v in row] for row in matrix]
    n = len(M)
    det = 1
    for col in range(n):
        pivot = next((i for i in range(col, n) if M[i][col]), None)
        if pivot is None:
            return 0
        if pivot != col:
            M[col], M[pivot] = M[pivot], M[col]
            det = -det
        det = det * M[col][col] % p
        inv = pow(M[col][col], -1, p)
        for i in range(col + 1, n):
            f = M[i][col] * inv % p
            if f:
                M[i] = [(a - f * b) % p for a, b in zip(M[i], M[col])]
    return det % p


def build_matrix(points: Sequence[TwistPoint], projections: Sequence[ProjectionMap]) -> list[list[int]]:
    """Entry (i, j) is pi_i applied to P_j reduced mod q_i."""
    matrix = []
    for i, pi in enumerate(projections):
        row = []
        for j, P in enumerate(points):
            R = reduce_rational_point(P.xy, pi.q)
            if not pi.curve.contains(R):
                raise BadReductionError(f"point {j} does not reduce onto the curve at place {i} (q={pi.q})")
            row.append(pi(R))
        matrix.append(row)
    return matrix


@dataclass(frozen=True)
class RankCertificate:
    base_curve: CurveQ
    twist: int
    p: int
    points: tuple[TwistPoint, ...]
    places: tuple[int, ...]
    projections: tuple[ProjectionMap, ...] = field(repr=False)
    matrix: tuple[tuple[int, ...], ...]
    determinant: int
    torsion_witness: Optional[int]
    verdict: str

    @property
    def r(self) -> int:
        return len(self.points)

    @property
    def is_valid(self) -> bool:
        return self.verdict == VALID


def certify_rank(
    E: CurveQ,
    lift: CommonLift,
    p: int = DEFAULT_P,
    places: Optional[Sequence[int]] = None,
    torsion_scan_bound: int = TORSION_SCAN_BOUND,
    place_scan_bound: int = PLACE_SCAN_BOUND,
) -> RankCertificate:
    """Run the determinant test on the points of ``lift``.

    VALID proves rank E^d(Q) >= r. INCONCLUSIVE says nothing about the rank.
    """
    _check_odd_prime(p)
    d = lift.twist
    points = tuple(lift.points)
    r = len(points)
    if any(P.d != d or P.curve != E for P in points):
        raise TwistRankError("all points must lie on the same twist of E")
    if places is None:
        places = find_certifying_places(E, d, p, r, scan_bound=place_scan_bound)
    places = tuple(int(q) for q in places)
    if len(places) != r:
        raise TwistRankError(f"need exactly {r} places, got {len(places)}")
    if len(set(places)) != r:
        raise TwistRankError("places must be pairwise distinct")
    projections = []
    for q in places:
        if q == p:
            raise TwistRankError("places must differ from p")
        projections.append(projection_map(reduce_curve(E, d, q), p))
    matrix = build_matrix(points, projections)
    det = det_mod_p(matrix, p)
    trivial, witness = torsion_p_trivial(E, d, p, torsion_scan_bound)
    verdict = VALID if det != 0 and trivial else INCONCLUSIVE
    return RankCertificate(
        base_curve=E,
        twist=d,
        p=p,
        points=points,
        places=places,
        projections=tuple(projections),
        matrix=tuple(tuple(row) for row in matrix),
        determinant=det,
        torsion_witness=witness,
        verdict=verdict,
    )


def dependence_search(points: Sequence[TwistPoint], bound: int) -> Optional[tuple[int, ...]]:
    """Brute-force search for a relation sum a_j P_j = O with 0 < max|a_j| <= bound.

    Coefficient vectors are scanned in lexicographic order, keeping only those
    whose first nonzero entry is positive (relations come in sign pairs).
    """
    if not points:
        raise ValueError("need at least one point")
    if bound <= 0:
        return None
    C = points[0].twisted
    if any(P.twisted != C for P in points):
        raise TwistRankError("points lie on different twists")
    multiples = []
    for P in points:
        table = {0: None}
        for k in range(1, bound + 1):
            table[k] = C._add(table[k - 1], P.xy)
            table[-k] = C._neg(table[k])
        multiples.append(table)
    for coeffs in itertools.product(range(-bound, bound + 1), repeat=len(points)):
        lead = next((a for a in coeffs if a), 0)
        if lead <= 0:
            continue
        S = None
        for a, table in zip(coeffs, multiples):
            S = C._add(S, table[a])
        if S is None:
            return coeffs
    return None
