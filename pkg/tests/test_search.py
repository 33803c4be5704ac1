import json
from collections import Counter
from fractions import Fraction
from math import gcd

import pytest

from twistrank.arith import Place, local_square_class
from twistrank.certificate import dumps, verify_document
from twistrank.elliptic import CurveQ, TwistPoint
from twistrank.errors import TwistRankError
from twistrank.kummer import CommonLift, lift_x, local_twist_class
from twistrank.rankcert import VALID, certify_rank
from twistrank.search import (
    SearchConfig,
    candidate_subsets,
    density_probe,
    enumerate_x,
    rank_r_twist_search,
    twist_buckets,
)

F = Fraction
E = CurveQ(-1, 0)


def test_enumerate_small():
    assert list(enumerate_x(1)) == [-1, 0, 1]
    two = list(enumerate_x(2))
    assert set(two) == {-2, -1, 0, 1, 2, F(-1, 2), F(1, 2)}
    assert len(two) == len(set(two)) == 7
    with pytest.raises(ValueError):
        list(enumerate_x(0))


@pytest.mark.parametrize("H", [1, 3, 7, 12])
def test_enumerate_count_matches_double_loop(H):
    brute = sum(1 for w in range(1, H + 1) for u in range(-H, H + 1) if gcd(u, w) == 1)
    xs = list(enumerate_x(H))
    assert len(xs) == brute == len(set(xs))
    keys = [(x.denominator, x.numerator) for x in xs]
    assert keys == sorted(keys)


def test_buckets_h2():
    b = twist_buckets(E, 2)
    assert b.skipped == 3
    assert b.total == 7
    assert sum(len(v) for v in b.buckets.values()) + b.skipped == b.total
    six = {P.x / 6 for P in b.buckets[6]}
    # f(-1/2) = 3/8 = 6 (1/4)^2
    assert six == {F(2), F(-1, 2)}
    for d, pts in b.buckets.items():
        for P in pts:
            assert P.d == d and P.twisted.contains(P.xy)


def test_bucket_one_holds_square_values():
    b = twist_buckets(CurveQ(0, 1), 6)
    for P in b.buckets.get(1, []):
        x = P.x
        assert (x**3 + 1) == P.y**2


def test_candidate_subsets_order():
    pts = [lift_x(E, x).point for x in (F(2), F(-1, 2), F(25, 24))]
    windows = candidate_subsets(pts, 2, 5)
    assert [[P.x / 6 for P in w] for w in windows] == [[2, F(-1, 2)], [F(-1, 2), F(25, 24)]]
    assert candidate_subsets(pts, 2, 1) == windows[:1]


def test_search_r1_certificates_reverify():
    result = rank_r_twist_search(SearchConfig(E, r=1, height_bound=3, p=3))
    assert result.certificates
    keys = [(abs(c.twist), c.twist < 0) for c in result.certificates]
    assert keys == sorted(keys)
    for cert in result.certificates:
        assert cert.verdict == VALID
        P = cert.points[0]
        assert P.y**2 == P.x**3 - cert.twist**2 * P.x
        verify_document(json.loads(dumps(cert)))


def test_dependent_window_is_not_certified():
    P = TwistPoint(E, 6, 12, 36)
    P2 = TwistPoint.from_xy(E, 6, 2 * P)
    cert = certify_rank(E, CommonLift(6, (P, P2)), 3)
    assert cert.verdict != VALID


def test_search_r2_small_height_is_empty():
    assert rank_r_twist_search(SearchConfig(E, r=2, height_bound=1)).certificates == []


def test_search_exclusions():
    full = rank_r_twist_search(SearchConfig(E, r=1, height_bound=3))
    some = full.certificates[0].twist
    part = rank_r_twist_search(SearchConfig(E, r=1, height_bound=3, exclusions={some}))
    assert some not in {c.twist for c in part.certificates}
    assert len(part.certificates) == len(full.certificates) - 1


def test_search_config_validation():
    with pytest.raises(ValueError):
        SearchConfig(E, r=0)
    with pytest.raises(ValueError):
        SearchConfig(E, p=2)


def test_density_probe_place_5():
    report = density_probe(E, [Place(5)], 5)
    assert len(report.class_counts) <= 4
    assert sum(report.class_counts.values()) == report.total
    assert local_twist_class(E, 2, Place(5)).representative == 1
    assert report.class_counts[(1,)] >= 1
    assert set(report.class_counts) | set(report.missed) == set(report.all_vectors())


def test_density_probe_recount():
    places = [Place(5), Place(7), Place(0)]
    report = density_probe(E, places, 8)
    tally = Counter()
    for x in enumerate_x(8):
        if E.rhs(x) == 0:
            continue
        d = lift_x(E, x).twist
        tally[tuple(local_square_class(d, v).representative for v in places)] += 1
    assert dict(tally) == report.class_counts
    assert len(report.all_vectors()) == 4 * 4 * 2


def test_density_probe_rejects_bad_places():
    with pytest.raises(TwistRankError):
        density_probe(E, [Place(5), Place(5)], 3)
    with pytest.raises(TwistRankError):
        density_probe(CurveQ(0, 17), [Place(17)], 3)
