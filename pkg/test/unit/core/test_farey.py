from fractions import Fraction
from math import gcd

import pytest

from src.core.errors import FareyDepthError, PreconditionError
from src.core.farey import (
    BASE_NEGATIVE,
    BASE_POSITIVE,
    INFINITY,
    ZERO,
    FareyTriangle,
    Slope,
    best_start,
    complement_slope,
    continued_fraction,
    farey_adjacent,
    farey_line_distance_oracle,
    farey_walk,
    flip,
    geodesic_to_slope,
    norm,
    parse_slope,
)


def _reduced(pmax):
    return [Slope(q, p) for p in range(2, pmax + 1) for q in range(1, p) if gcd(p, q) == 1]


def test_slope_normalization():
    assert Slope(2, 4) == Slope(1, 2)
    assert Slope(3, -6) == Slope(-1, 2)
    assert Slope(-5, 0) == INFINITY
    assert str(Slope(2, 5)) == "2/5"
    assert str(INFINITY) == "1/0"
    with pytest.raises(PreconditionError):
        Slope(0, 0)


def test_slope_vector_convention():
    s = Slope.from_vector(5, 2)
    assert (s.q, s.p) == (2, 5)
    assert s.vector() == (5, 2)


def test_parse_slope():
    assert parse_slope("2/5") == Slope(2, 5)
    assert parse_slope(" 3 ") == Slope(3, 1)
    with pytest.raises(PreconditionError):
        parse_slope("two fifths")


def test_continued_fraction_of_two_fifths():
    cf = continued_fraction(Slope(2, 5))
    assert cf.terms == (0, 2, 2)
    assert str(cf) == "[0;2,2]"
    assert cf.value() == Fraction(2, 5)
    assert norm(Slope(2, 5)) == 4


def test_norm_of_integers_and_undefined_slopes():
    assert norm(Slope(1, 3)) == 3
    assert norm(Slope(3, 1)) == 3
    with pytest.raises(PreconditionError):
        norm(INFINITY)
    with pytest.raises(PreconditionError):
        norm(ZERO)


def test_norm_symmetries():
    for s in _reduced(200):
        assert norm(s) == norm(complement_slope(s)), f"complement symmetry fails at {s}"
        assert norm(s) == norm(Slope(s.p, s.q)), f"inversion symmetry fails at {s}"


def test_continued_fraction_round_trip():
    for s in _reduced(40):
        assert continued_fraction(s).slope() == s


def test_farey_triangles():
    assert farey_adjacent(Slope(1, 2), Slope(1, 3))
    assert not farey_adjacent(Slope(1, 3), Slope(2, 3))
    with pytest.raises(PreconditionError):
        FareyTriangle.of(ZERO, Slope(1, 3), Slope(2, 3))
    assert flip(BASE_POSITIVE, INFINITY) == FareyTriangle.of(ZERO, Slope(1, 2), Slope(1, 1))
    assert flip(BASE_POSITIVE, Slope(1, 1)) == BASE_NEGATIVE
    assert str(BASE_POSITIVE) == "(0/1,1/1,1/0)"


def test_walk_ends_at_target():
    walk = farey_walk(Slope(2, 5), BASE_POSITIVE)
    assert walk[0] == BASE_POSITIVE
    assert Slope(2, 5) in walk[-1]
    assert all(Slope(2, 5) not in t for t in walk[:-1])


def test_walk_needs_a_base_triangle_and_target_in_unit_interval():
    with pytest.raises(PreconditionError):
        farey_walk(Slope(5, 2), BASE_POSITIVE)
    with pytest.raises(PreconditionError):
        farey_walk(Slope(1, 3), FareyTriangle.of(ZERO, Slope(1, 2), Slope(1, 1)))


def test_best_start_length_is_norm_minus_one():
    for s in _reduced(50):
        start, walk = best_start(s)
        assert start in (BASE_POSITIVE, BASE_NEGATIVE)
        assert len(walk) - 1 == norm(s) - 1, f"walk to {s} has length {len(walk) - 1}"


def test_best_start_prefers_positive_base_in_unit_interval():
    for s in _reduced(12):
        start, walk = best_start(s)
        assert start == BASE_POSITIVE
        assert len(walk) < len(farey_walk(s, BASE_NEGATIVE))


def test_geodesic_from_any_triangle():
    start = FareyTriangle.of(Slope(1, 3), Slope(1, 2), Slope(2, 5))
    walk = geodesic_to_slope(start, INFINITY)
    assert walk[0] == start
    assert INFINITY in walk[-1]
    for a, b in zip(walk, walk[1:]):
        assert len(a.vertices & b.vertices) == 2


def test_oracle_agrees_with_norm():
    for s in _reduced(50):
        assert farey_line_distance_oracle(INFINITY, s, 64) == norm(s) - 1, f"oracle disagrees at {s}"


def test_oracle_depth_insufficient():
    with pytest.raises(FareyDepthError) as info:
        farey_line_distance_oracle(INFINITY, Slope(1, 5), 0)
    assert "depth insufficient" in str(info.value)


def test_oracle_needs_distinct_slopes():
    with pytest.raises(PreconditionError):
        farey_line_distance_oracle(ZERO, ZERO, 10)
