from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles import is_local_square, squarefree_rational
from twistrank.arith import (
    Place,
    as_fraction,
    is_prime,
    is_square,
    legendre_symbol,
    least_nonresidue,
    local_square_class,
    next_prime,
    square_class_representatives,
    squarefree_part,
)
from twistrank.errors import TwistRankError

nonzero_ints = st.integers(min_value=-10**6, max_value=10**6).filter(bool)
nonzero_rationals = st.builds(Fraction, nonzero_ints, st.integers(min_value=1, max_value=10**6))
PLACES = [Place(2), Place(3), Place(5), Place(7), Place(11), Place(0)]


@pytest.mark.parametrize(
    "x, d, s",
    [
        (Fraction(12), 3, Fraction(2)),
        (Fraction(-15, 64), -15, Fraction(1, 8)),
        # 1225 = 5^2 7^2, 13824 = 2^9 3^3
        (Fraction(1225, 13824), 6, Fraction(35, 288)),
        (Fraction(1), 1, Fraction(1)),
        (Fraction(-1, 4), -1, Fraction(1, 2)),
    ],
)
def test_squarefree_part_examples(x, d, s):
    assert squarefree_part(x) == (d, s)
    assert d * s * s == x


def test_squarefree_part_rejects_zero():
    with pytest.raises(TwistRankError):
        squarefree_part(0)


@given(nonzero_rationals)
def test_squarefree_part_decomposes(x):
    d, s = squarefree_part(x)
    assert d * s * s == x
    assert s > 0
    assert (d > 0) == (x > 0)
    assert d == squarefree_rational(x)


@given(nonzero_rationals, nonzero_rationals)
def test_squarefree_part_ignores_square_factors(x, y):
    assert squarefree_part(x * y * y)[0] == squarefree_part(x)[0]


@given(nonzero_rationals)
def test_square_iff_trivial_class(x):
    assert is_square(x * x)
    assert is_square(x) == (squarefree_part(x)[0] == 1)


@pytest.mark.parametrize(
    "a, q, expected",
    [(1, 5, 1), (6, 5, 1), (2, 3, -1), (0, 7, 0), (3, 7, -1), (2, 7, 1)],
)
def test_legendre_symbol(a, q, expected):
    assert legendre_symbol(a, q) == expected


@pytest.mark.parametrize("q", [3, 5, 7, 11, 13, 101])
def test_legendre_matches_squares(q):
    squares = {t * t % q for t in range(1, q)}
    for a in range(1, q):
        assert legendre_symbol(a, q) == (1 if a in squares else -1)


def test_primes():
    assert is_prime(11)
    assert not is_prime(1)
    assert not is_prime(0)
    assert next_prime(11) == 13
    assert next_prime(1) == 2
    assert is_prime(2**61 - 1)
    assert not is_prime(3215031751)  # strong pseudoprime to bases 2, 3, 5, 7


def test_least_nonresidue():
    assert least_nonresidue(3) == 2
    assert least_nonresidue(7) == 3
    assert least_nonresidue(71) == 7


@pytest.mark.parametrize(
    "x, v, rep",
    [
        (6, Place(5), 1),
        (6, Place(3), 6),
        (-15, Place(0), -1),
        (Fraction(-15, 64), Place(2), 1),  # -15 = 1 mod 8
        (3, Place(2), 3),
        (Fraction(1, 2), Place(2), 2),
        (Fraction(1, 7), Place(7), 7),
        (Fraction(3, 7), Place(7), 21),  # 3 is the least non-residue mod 7
    ],
)
def test_local_square_class_examples(x, v, rep):
    assert local_square_class(x, v).representative == rep


def test_local_square_class_rejects_zero():
    with pytest.raises(TwistRankError):
        local_square_class(0, Place(3))


@pytest.mark.parametrize("v", PLACES)
def test_representatives_pairwise_inequivalent(v):
    reps = square_class_representatives(v)
    assert len(reps) == {0: 2, 2: 8}.get(v.prime, 4)
    for r1 in reps:
        assert local_square_class(r1, v).representative == r1
        for r2 in reps:
            assert is_local_square(Fraction(r1, r2), v.prime) == (r1 == r2)


@pytest.mark.parametrize("v", PLACES)
@given(x=nonzero_rationals, y=nonzero_rationals)
def test_local_class_ignores_squares(v, x, y):
    assert local_square_class(x * y * y, v) == local_square_class(x, v)


@pytest.mark.parametrize("v", PLACES)
@given(x=nonzero_rationals)
def test_local_class_against_oracle(v, x):
    rep = local_square_class(x, v).representative
    assert rep in square_class_representatives(v)
    assert is_local_square(x / rep, v.prime)


def test_place_parsing():
    assert Place.parse("real") == Place.real()
    assert Place.parse("5") == Place(5)
    assert str(Place(0)) == "real"
    with pytest.raises(TwistRankError):
        Place(9)


def test_as_fraction():
    assert as_fraction("-15/64") == Fraction(-15, 64)
    with pytest.raises(ValueError):
        as_fraction("0.5")
