from fractions import Fraction

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from django_halfspace.core.exceptions import (
    AffinelyDependentError,
    AllSlopesZeroError,
    DimensionMismatchError,
    NonIntegralOffsetError,
    NotPrimitiveError,
    ZeroVectorError,
)
from django_halfspace.core.lattice import (
    BasicSet,
    HalfSpace,
    Hyperplane,
    adjacent,
    bezout_vec,
    box_points,
    dot,
    facing,
    gcd_vec,
    hs_equal,
    hs_member,
    hs_subset,
    hyperplane_through,
    lock_count_bound,
    min_j_distance,
    min_parallel_distance_sq,
    reduce_hyperplane,
    tangents,
)

rationals = st.fractions(min_value=-20, max_value=20, max_denominator=12)
small_ints = st.integers(min_value=-6, max_value=6)


@pytest.mark.parametrize(
    "slopes,displacement,expected",
    [
        ((1, 0), 0, Hyperplane((1, 0), Fraction(0))),
        ((4, 6), 2, Hyperplane((2, 3), Fraction(1))),
        (
            (Fraction(2, 3), Fraction(-1, 2)),
            Fraction(1, 6),
            Hyperplane((4, -3), Fraction(1)),
        ),
        ((0, -2), 1, Hyperplane((0, 1), Fraction(-1, 2))),
    ],
)
def test_reduce_hyperplane(slopes, displacement, expected):
    assert reduce_hyperplane(slopes, displacement) == expected


def test_reduce_hyperplane_all_slopes_zero():
    with pytest.raises(AllSlopesZeroError, match="target slopes all zero"):
        reduce_hyperplane((0, 0), 3)


@given(st.lists(rationals, min_size=2, max_size=3), rationals)
def test_reduce_hyperplane_keeps_solutions(slopes, displacement):
    assume(any(slopes))
    plane = reduce_hyperplane(slopes, displacement)
    assert gcd_vec(plane.normal) == 1
    assert next(a for a in plane.normal if a) > 0
    assert reduce_hyperplane(plane.normal, plane.offset) == plane

    # a solution of the input is a solution of the reduced form and vice versa
    pivot = next(i for i, s in enumerate(slopes) if s != 0)
    for free in range(-2, 3):
        point = [Fraction(free)] * len(slopes)
        rest = sum(s * x for i, (s, x) in enumerate(zip(slopes, point)) if i != pivot)
        point[pivot] = -(rest + displacement) / slopes[pivot]
        assert sum(a * x for a, x in zip(plane.normal, point)) + plane.offset == 0


@pytest.mark.parametrize(
    "vector,expected", [((4, 6), 2), ((0, 0, 5), 5), ((3, 5, 7), 1), ((0, 0), 0)]
)
def test_gcd_vec(vector, expected):
    assert gcd_vec(vector) == expected


@pytest.mark.parametrize("vector", [(3, 5), (6, 0), (4, 6, 9), (0, -7), (-4, 10)])
def test_bezout_vec(vector):
    assert dot(vector, bezout_vec(vector)) == gcd_vec(vector)


def test_bezout_vec_zero_vector():
    with pytest.raises(ZeroVectorError):
        bezout_vec((0, 0, 0))


@given(st.lists(small_ints, min_size=1, max_size=4))
def test_bezout_vec_substitution(vector):
    assume(any(vector))
    assert dot(vector, bezout_vec(vector)) == gcd_vec(vector)


@pytest.mark.parametrize(
    "points,expected",
    [
        (((0, 0), (1, 0)), Hyperplane((0, 1), Fraction(0))),
        (((0, 0), (1, 2)), Hyperplane((2, -1), Fraction(0))),
        (((1, 0, 0), (0, 1, 0), (0, 0, 1)), Hyperplane((1, 1, 1), Fraction(-1))),
    ],
)
def test_hyperplane_through(points, expected):
    plane = hyperplane_through(BasicSet.of(points))
    assert plane == expected
    assert all(plane.value(p) == 0 for p in points)


def test_hyperplane_through_dependent_points():
    with pytest.raises(AffinelyDependentError):
        hyperplane_through(BasicSet.of([(1, 1, 1), (2, 2, 2), (3, 3, 3)]))


def test_hyperplane_through_wrong_size():
    with pytest.raises(DimensionMismatchError):
        hyperplane_through(BasicSet.of([(0, 0), (1, 0), (0, 1)]))


def test_min_j_distance():
    assert min_j_distance(reduce_hyperplane((2, 3), 0), 1) == Fraction(1, 2)
    assert min_j_distance(reduce_hyperplane((2, 3), 0), 2) == Fraction(1, 3)
    assert min_j_distance(reduce_hyperplane((1, 0), 0), 2) is None


def test_min_j_distance_non_integral_offset():
    with pytest.raises(NonIntegralOffsetError):
        min_j_distance(Hyperplane((1, 0), Fraction(1, 2)), 1)


def test_min_j_distance_bad_axis():
    with pytest.raises(DimensionMismatchError):
        min_j_distance(reduce_hyperplane((2, 3), 0), 3)


@pytest.mark.parametrize(
    "normal,expected",
    [((3, 4), Fraction(1, 25)), ((1, 0), Fraction(1)), ((1, 1, 1), Fraction(1, 3))],
)
def test_min_parallel_distance_sq(normal, expected):
    assert min_parallel_distance_sq(normal) == expected


@pytest.mark.parametrize("normal", [(2, 4), (0, 0)])
def test_min_parallel_distance_sq_not_primitive(normal):
    with pytest.raises(NotPrimitiveError):
        min_parallel_distance_sq(normal)


def test_tangents():
    pair = tangents(reduce_hyperplane((1, -1), Fraction(1, 2)))
    assert pair.plus == HalfSpace((1, -1), 0)
    assert pair.minus == HalfSpace((-1, 1), -1)
    assert dot(pair.plus.normal, (0, 0)) + pair.plus.floor_offset == 0
    assert dot(pair.minus.normal, (0, 1)) + pair.minus.floor_offset == 0

    pair = tangents(reduce_hyperplane((1, 0), 0))
    assert pair.plus == HalfSpace((1, 0), 0)
    assert pair.minus == HalfSpace((-1, 0), -1)


@given(st.tuples(small_ints, small_ints), rationals)
def test_tangents_partition_the_lattice(slopes, displacement):
    assume(slopes != (0, 0))
    pair = tangents(reduce_hyperplane(slopes, displacement))
    for point in box_points(2, 4):
        assert hs_member(pair.plus, point) != hs_member(pair.minus, point)


def test_facing():
    assert facing(BasicSet.of([(0, 0), (2, 0)]), BasicSet.of([(1, 1), (3, 1)]))
    assert not facing(BasicSet.of([(0, 0), (1, 0)]), BasicSet.of([(5, 1), (6, 1)]))
    same = BasicSet.of([(0, 0), (1, 2)])
    assert facing(same, same)
    assert not facing(BasicSet.of([(0, 0), (1, 0)]), BasicSet.of([(0, 1), (1, 2)]))


def test_facing_in_three_dimensions():
    floor = BasicSet.of([(0, 0, 0), (2, 0, 0), (0, 2, 0)])
    assert facing(floor, BasicSet.of([(1, 1, 1), (3, 1, 1), (1, 3, 1)]))
    assert not facing(floor, BasicSet.of([(3, 3, 1), (5, 3, 1), (3, 5, 1)]))


@pytest.mark.parametrize(
    "first,second,expected",
    [
        (((0, 0), (1, 0)), ((0, 1), (1, 1)), True),
        (((0, 0), (1, 0)), ((0, 2), (1, 2)), False),
        (((0, 0), (1, 1)), ((0, 1), (1, 2)), True),
        (((0, 0), (1, 0)), ((5, 1), (6, 1)), False),
    ],
)
def test_adjacent(first, second, expected):
    assert adjacent(BasicSet.of(first), BasicSet.of(second)) is expected


def test_adjacent_leaves_no_lattice_point_between():
    first, second = BasicSet.of([(0, 0), (1, 1)]), BasicSet.of([(0, 1), (1, 2)])
    assert adjacent(first, second)
    low, high = sorted(
        (-hyperplane_through(first).offset, -hyperplane_through(second).offset)
    )
    normal = hyperplane_through(first).normal
    assert not any(low < dot(normal, p) < high for p in box_points(2, 6))


@pytest.mark.parametrize(
    "language,point,expected",
    [
        (HalfSpace((0, 1), 0), (7, 0), True),
        (HalfSpace((0, 1), 0), (7, -1), False),
        (HalfSpace((3, 4), -2), (1, 0), True),
    ],
)
def test_hs_member(language, point, expected):
    assert hs_member(language, point) is expected


def test_hs_member_dimension_mismatch():
    with pytest.raises(DimensionMismatchError):
        hs_member(HalfSpace((0, 1), 0), (1, 2, 3))


def test_hs_subset():
    x_at_least_one, x_at_least_zero = HalfSpace((1, 0), -1), HalfSpace((1, 0), 0)
    assert hs_subset(x_at_least_one, x_at_least_zero)
    assert not hs_subset(x_at_least_zero, x_at_least_one)
    assert not hs_subset(x_at_least_zero, HalfSpace((0, 1), 0))
    assert hs_member(x_at_least_zero, (5, -1))
    assert not hs_member(HalfSpace((0, 1), 0), (5, -1))


@given(
    st.tuples(small_ints, small_ints), small_ints, st.tuples(small_ints, small_ints)
)
def test_hs_subset_partial_order(normal, offset, other_normal):
    assume(normal != (0, 0))
    first = HalfSpace(normal, offset)
    second = HalfSpace(normal, offset + 1)
    assert hs_subset(first, first)
    assert hs_subset(first, second) and not hs_subset(second, first)
    assert hs_equal(first, first)
    if other_normal != normal:
        assert not hs_subset(first, HalfSpace(other_normal, offset))


def test_from_rational_keeps_orientation():
    assert HalfSpace.from_rational(
        [Fraction(1, 2), Fraction(-1, 3)], Fraction(5, 7)
    ) == HalfSpace((3, -2), 4)
    assert HalfSpace.from_rational([-2, 0], 1) == HalfSpace((-1, 0), 0)
    with pytest.raises(AllSlopesZeroError):
        HalfSpace.from_rational([0, 0], 1)


def test_half_space_describe_and_complement():
    assert HalfSpace((0, 1), 0).describe() == "+0*x1 +1*x2 +0 >= 0"
    assert HalfSpace((0, 1), 0).complement() == HalfSpace((0, -1), -1)
    assert HalfSpace.upper(3) == HalfSpace((0, 0, 1), 0)


@pytest.mark.parametrize(
    "normal,expected", [((1, 0), 4), ((1, 1), 8), ((0, 0, 1), 6)]
)
def test_lock_count_bound(normal, expected):
    assert lock_count_bound(normal) == expected


def test_box_points_order():
    assert list(box_points(2, 1))[:3] == [(-1, -1), (-1, 0), (-1, 1)]
    assert len(list(box_points(3, 2))) == 125
