"""Height-bounded search over the x-line: bucket rational points by twist,
certify rank >= r on twists with enough points, and tabulate local classes."""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Iterator, Sequence

from .arith import Place, is_prime, square_class_representatives
from .elliptic import CurveQ, TwistPoint, is_good_reduction, naive_height
from .errors import ScanExhaustedError, TwistRankError
from .kummer import CommonLift, is_two_torsion_x, lift_point, local_twist_class, x_of
from .rankcert import (
    DEFAULT_P,
    PLACE_SCAN_BOUND,
    RankCertificate,
    certify_rank,
    find_certifying_places,
)


def enumerate_x(height_bound: int) -> Iterator[Fraction]:
    """Every u/w with gcd(u, w) = 1, 1 <= w <= H and |u| <= H, once each,
    ordered by w and then u."""
    if height_bound < 1:
        raise ValueError("height bound must be at least 1")
    for w in range(1, height_bound + 1):
        for u in range(-height_bound, height_bound + 1):
            if gcd(u, w) == 1:
                yield Fraction(u, w)


@dataclass
class Buckets:
    buckets: dict[int, list[TwistPoint]]
    skipped: int
    total: int


def twist_buckets(E: CurveQ, height_bound: int) -> Buckets:
    """Partition the enumerated non-2-torsion x by the twist they lift to."""
    buckets: dict[int, list[TwistPoint]] = {}
    skipped = total = 0
    for x in enumerate_x(height_bound):
        total += 1
        if is_two_torsion_x(E, x):
            skipped += 1
            continue
        P = lift_point(E, x)
        buckets.setdefault(P.d, []).append(P)
    return Buckets(buckets, skipped, total)


@dataclass(frozen=True)
class SearchConfig:
    curve: CurveQ
    r: int = 1
    height_bound: int = 10
    p: int = DEFAULT_P
    exclusions: frozenset[int] = frozenset()
    place_scan_bound: int = PLACE_SCAN_BOUND
    max_attempts: int = 8

    def __post_init__(self):
        if self.r < 1:
            raise ValueError("r must be at least 1")
        if self.height_bound < 1:
            raise ValueError("height bound must be at least 1")
        if self.p == 2 or not is_prime(self.p):
            raise ValueError("p must be an odd prime")
        object.__setattr__(self, "exclusions", frozenset(self.exclusions))


@dataclass
class SearchResult:
    certificates: list[RankCertificate]
    exhausted: list[int] = field(default_factory=list)
    buckets_tried: int = 0
    attempts: int = 0


def _twist_order(d: int):
    return (abs(d), d < 0)


def candidate_subsets(points: Sequence[TwistPoint], r: int, max_attempts: int) -> list[tuple[TwistPoint, ...]]:
    """Windows of r consecutive points, after sorting by naive height of x."""
    ranked = sorted(points, key=lambda P: naive_height(x_of(P)))
    windows = [tuple(ranked[i : i + r]) for i in range(len(ranked) - r + 1)]
    return windows[:max_attempts]


def rank_r_twist_search(config: SearchConfig) -> SearchResult:
    """One VALID certificate (the first window that succeeds) per twist class
    with at least r points, sorted by |d| and then sign."""
    E = config.curve
    result = SearchResult([])
    bk = twist_buckets(E, config.height_bound).buckets
    for d in sorted(bk, key=_twist_order):
        if d in config.exclusions or len(bk[d]) < config.r:
            continue
        result.buckets_tried += 1
        try:
            places = find_certifying_places(E, d, config.p, config.r, scan_bound=config.place_scan_bound)
        except ScanExhaustedError:
            result.exhausted.append(d)
            continue
        for subset in candidate_subsets(bk[d], config.r, config.max_attempts):
            result.attempts += 1
            cert = certify_rank(E, CommonLift(d, subset), config.p, places)
            if cert.is_valid:
                result.certificates.append(cert)
                break
    return result


@dataclass
class DensityReport:
    places: tuple[Place, ...]
    class_counts: dict[tuple[int, ...], int]
    missed: list[tuple[int, ...]]
    total: int

    def all_vectors(self) -> list[tuple[int, ...]]:
        return list(itertools.product(*(square_class_representatives(v) for v in self.places)))


def density_probe(E: CurveQ, places: Sequence[Place], height_bound: int) -> DensityReport:
    """Count enumerated Kummer points by their vector of local twist classes."""
    places = tuple(places)
    if len(set(places)) != len(places):
        raise TwistRankError("places must be pairwise distinct")
    for v in places:
        if not v.is_real and v.prime != 2 and not is_good_reduction(E, v.prime):
            raise TwistRankError(f"unsupported place {v}: bad reduction")
    counts: Counter = Counter()
    total = 0
    for x in enumerate_x(height_bound):
        if is_two_torsion_x(E, x):
            continue
        total += 1
        counts[tuple(local_twist_class(E, x, v).representative for v in places)] += 1
    order = {
        vec: i
        for i, vec in enumerate(itertools.product(*(square_class_representatives(v) for v in places)))
    }
    class_counts = {vec: counts[vec] for vec in sorted(counts, key=order.__getitem__)}
    missed = [vec for vec in order if vec not in counts]
    return DensityReport(places, class_counts, missed, total)
