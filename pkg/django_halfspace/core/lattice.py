"""
Exact lattice geometry over Z^d.

Integers are Python ints, rationals are Fractions; distances are only ever handled
squared or as integer offset gaps, so nothing irrational is represented.
"""

import itertools
import math
from fractions import Fraction
from functools import reduce
from typing import Iterable, Iterator, List, NamedTuple, Optional, Sequence, Tuple

from sympy.core.intfunc import igcd, igcdex, ilcm

from django_halfspace.core.exceptions import (
    AffinelyDependentError,
    AllSlopesZeroError,
    DimensionMismatchError,
    NonIntegralOffsetError,
    NotPrimitiveError,
    ZeroVectorError,
)
from django_halfspace.core.polyhedra import constraint, is_feasible

IntVec = Tuple[int, ...]


def as_vec(coords: Iterable[int]) -> IntVec:
    vec = tuple(int(c) for c in coords)
    if not vec:
        raise DimensionMismatchError("a lattice vector needs at least one coordinate")
    return vec


def dot(a: Sequence[int], b: Sequence[int]) -> int:
    if len(a) != len(b):
        raise DimensionMismatchError(f"cannot multiply {tuple(a)} and {tuple(b)}")
    return sum(x * y for x, y in zip(a, b))


def negate(v: IntVec) -> IntVec:
    return tuple(-x for x in v)


def norm_sq(v: Sequence[int]) -> int:
    return sum(x * x for x in v)


def gcd_vec(v: Sequence[int]) -> int:
    """
    gcd of the absolute coordinates; 0 only for the zero vector.
    """
    return int(reduce(igcd, (abs(int(x)) for x in v), 0))


def is_primitive(v: Sequence[int]) -> bool:
    return gcd_vec(v) == 1


def bezout_vec(v: Sequence[int]) -> IntVec:
    """
    Bezout coefficients of a vector: returns y with sum(v_i * y_i) == gcd_vec(v).

    Raises:
        ZeroVectorError: if v is the zero vector.
    """
    if gcd_vec(v) == 0:
        raise ZeroVectorError("the zero vector has no Bezout coefficients")

    g = 0
    coefficients: List[int] = []
    for value in v:
        s, t, g = igcdex(g, int(value))
        coefficients = [c * s for c in coefficients] + [t]
    return tuple(int(c) for c in coefficients)


class Hyperplane(NamedTuple):
    """
    The unoriented hyperplane normal . x + offset == 0 in integral reduced form:
    primitive normal whose first nonzero coordinate is positive.
    """

    normal: IntVec
    offset: Fraction

    @property
    def dimension(self) -> int:
        return len(self.normal)

    def value(self, point: Sequence[int]) -> Fraction:
        return dot(self.normal, point) + self.offset


class HalfSpace(NamedTuple):
    """
    Canonical representative of a lattice half-space language:
    {x in Z^d : normal . x + floor_offset >= 0} with a primitive normal.
    """

    normal: IntVec
    floor_offset: int

    @property
    def dimension(self) -> int:
        return len(self.normal)

    def contains(self, point: Sequence[int]) -> bool:
        return dot(self.normal, point) + self.floor_offset >= 0

    def complement(self) -> "HalfSpace":
        """The lattice complement, i.e. the negative tangent of the same boundary."""
        return HalfSpace(negate(self.normal), -self.floor_offset - 1)

    def describe(self) -> str:
        terms = " ".join(f"{a:+d}*x{i}" for i, a in enumerate(self.normal, start=1))
        return f"{terms} {self.floor_offset:+d} >= 0"

    @classmethod
    def from_rational(
        cls, slopes: Sequence, displacement
    ) -> "HalfSpace":
        """
        The language {x : sum(r_i * x_i) + r_0 >= 0} of rational coefficients.

        Only positive factors are applied, so the orientation is kept.

        Raises:
            AllSlopesZeroError: if every slope is zero.
        """
        normal, offset = _integral_form(slopes, displacement)
        return cls(normal, math.floor(offset))

    @classmethod
    def upper(cls, dimension: int) -> "HalfSpace":
        """x_d >= 0, the dummy language of data-collection hypotheses."""
        return cls(tuple([0] * (dimension - 1) + [1]), 0)


class BasicSet(NamedTuple):
    """d lattice points c_0, ..., c_{d-1} expected to be affinely independent."""

    points: Tuple[IntVec, ...]

    @property
    def dimension(self) -> int:
        return len(self.points[0])

    @classmethod
    def of(cls, points: Iterable[Iterable[int]]) -> "BasicSet":
        return cls(tuple(as_vec(p) for p in points))


class TangentPair(NamedTuple):
    plus: HalfSpace
    minus: HalfSpace


def _integral_form(slopes: Sequence, displacement) -> Tuple[IntVec, Fraction]:
    """
    Scale sum(r_i * x_i) + r_0 by lcm(denominators) / gcd(numerators).
    """
    rationals = [Fraction(s) for s in slopes]
    if not rationals:
        raise DimensionMismatchError("a hyperplane needs at least one slope")
    if all(r == 0 for r in rationals):
        raise AllSlopesZeroError("target slopes all zero")

    multiple = int(reduce(ilcm, (r.denominator for r in rationals), 1))
    integers = [int(r * multiple) for r in rationals]
    divisor = gcd_vec(integers)
    normal = tuple(x // divisor for x in integers)
    return normal, Fraction(displacement) * multiple / divisor


def _sign_normalized(normal: IntVec, offset: Fraction) -> Tuple[IntVec, Fraction]:
    lead = next(x for x in normal if x != 0)
    if lead < 0:
        return negate(normal), -offset
    return normal, offset


def reduce_hyperplane(slopes: Sequence, displacement) -> Hyperplane:
    """
    Put sum(r_i * x_i) + r_0 == 0 into integral reduced form.

    Raises:
        AllSlopesZeroError: if every slope is 0.
    """
    normal, offset = _sign_normalized(*_integral_form(slopes, displacement))
    return Hyperplane(normal, offset)


def _determinant(matrix: List[List[int]]) -> int:
    """Fraction-free (Bareiss) determinant of a square integer matrix."""
    size = len(matrix)
    if size == 0:
        return 1
    m = [list(row) for row in matrix]
    sign, previous = 1, 1
    for k in range(size - 1):
        if m[k][k] == 0:
            swap = next((i for i in range(k + 1, size) if m[i][k] != 0), None)
            if swap is None:
                return 0
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, size):
            for j in range(k + 1, size):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // previous
        previous = m[k][k]
    return sign * m[size - 1][size - 1]


def spanning_normal(points: Sequence[IntVec]) -> IntVec:
    """
    Generalized cross product of the differences c_i - c_0.

    The result is orthogonal to every difference and is the zero vector exactly
    when the points are affinely dependent.
    """
    origin = points[0]
    rows = [[a - b for a, b in zip(p, origin)] for p in points[1:]]
    dimension = len(origin)
    return tuple(
        (-1) ** column
        * _determinant([row[:column] + row[column + 1 :] for row in rows])
        for column in range(dimension)
    )


def hyperplane_through(basic_set: BasicSet) -> Hyperplane:
    """
    The unique hyperplane through the points of a basic set.

    Returns:
        Hyperplane -- integral reduced form; its offset is an integer.

    Raises:
        DimensionMismatchError: if the set does not hold d points of dimension d.
        AffinelyDependentError: if the points are affinely dependent.
    """
    points = basic_set.points
    dimension = len(points[0])
    if len(points) != dimension or any(len(p) != dimension for p in points):
        raise DimensionMismatchError(
            f"a basic set in dimension {dimension} needs exactly {dimension} points"
        )

    normal = spanning_normal(points)
    divisor = gcd_vec(normal)
    if divisor == 0:
        raise AffinelyDependentError(f"points {points} are affinely dependent")
    normal = tuple(x // divisor for x in normal)
    normal, offset = _sign_normalized(normal, Fraction(-dot(normal, points[0])))
    return Hyperplane(normal, offset)


def min_j_distance(hyperplane: Hyperplane, axis: int) -> Optional[Fraction]:
    """
    Smallest j-distance of a lattice point off the hyperplane, 1/|a_j|.

    Arguments:
        axis {int} -- 1-based coordinate index j.

    Returns:
        Fraction, or None when a_j == 0 and the j-distance is undefined.

    Raises:
        NonIntegralOffsetError: if the hyperplane misses every lattice point.
    """
    if hyperplane.offset.denominator != 1:
        raise NonIntegralOffsetError(
            f"offset {hyperplane.offset} is not an integer in reduced form"
        )
    if not 1 <= axis <= hyperplane.dimension:
        raise DimensionMismatchError(
            f"axis {axis} outside 1..{hyperplane.dimension}"
        )
    coefficient = hyperplane.normal[axis - 1]
    if coefficient == 0:
        return None
    return Fraction(1, abs(coefficient))


def min_parallel_distance_sq(normal: Sequence[int]) -> Fraction:
    """
    Squared distance between neighbouring lattice hyperplanes with this normal.

    Raises:
        NotPrimitiveError: if the normal is zero or not primitive.
    """
    if not is_primitive(normal):
        raise NotPrimitiveError(f"{tuple(normal)} is not a primitive vector")
    return Fraction(1, norm_sq(normal))


def tangents(hyperplane: Hyperplane) -> TangentPair:
    floor_offset = math.floor(hyperplane.offset)
    plus = HalfSpace(hyperplane.normal, floor_offset)
    return TangentPair(plus, plus.complement())


def tangent_gap_sq(language: HalfSpace) -> Fraction:
    """Squared distance between the two tangents of a canonical half-space."""
    return min_parallel_distance_sq(language.normal)


def orthogonal_basis(normal: IntVec) -> List[IntVec]:
    """An integer basis of the hyperplane direction orthogonal to normal."""
    pivot = next(i for i, x in enumerate(normal) if x != 0)
    basis = []
    for j in range(len(normal)):
        if j == pivot:
            continue
        vector = [0] * len(normal)
        vector[j] = normal[pivot]
        vector[pivot] = -normal[j]
        basis.append(tuple(vector))
    return basis


def cells_face(
    first: Sequence[IntVec], second: Sequence[IntVec], normal: IntVec
) -> bool:
    """
    Whether some segment parallel to normal joins conv(first) and conv(second).

    Decided as exact feasibility of the convex weights lambda, mu with
    b . (sum lambda_i c_i - sum mu_j c'_j) == 0 for a basis b of normal's complement.
    """
    n, m = len(first), len(second)
    width = n + m
    rows = []
    for i in range(width):
        coefficients = [0] * width
        coefficients[i] = -1
        rows.append(constraint(coefficients, 0))
    rows.append(constraint([1] * n + [0] * m, 1, equality=True))
    rows.append(constraint([0] * n + [1] * m, 1, equality=True))
    for direction in orthogonal_basis(normal):
        rows.append(
            constraint(
                [dot(direction, p) for p in first]
                + [-dot(direction, q) for q in second],
                0,
                equality=True,
            )
        )
    return is_feasible(rows)


def facing(first: BasicSet, second: BasicSet) -> bool:
    """
    Whether two basic sets are parallel and their cells face each other.
    """
    plane = hyperplane_through(first)
    other = hyperplane_through(second)
    if plane.normal != other.normal:
        return False
    return cells_face(first.points, second.points, plane.normal)


def adjacent(first: BasicSet, second: BasicSet) -> bool:
    """
    Facing basic sets whose hyperplanes are distinct but as close as possible,
    i.e. their integer offsets differ by exactly one.
    """
    plane = hyperplane_through(first)
    other = hyperplane_through(second)
    if plane.normal != other.normal or abs(plane.offset - other.offset) != 1:
        return False
    return cells_face(first.points, second.points, plane.normal)


def _check_dimensions(*dimensions: int) -> None:
    if len(set(dimensions)) != 1:
        raise DimensionMismatchError(f"dimensions differ: {dimensions}")


def hs_member(language: HalfSpace, point: Sequence[int]) -> bool:
    _check_dimensions(language.dimension, len(point))
    return language.contains(point)


def hs_equal(first: HalfSpace, second: HalfSpace) -> bool:
    _check_dimensions(first.dimension, second.dimension)
    return first == second


def hs_subset(first: HalfSpace, second: HalfSpace) -> bool:
    """
    Differently oriented half-spaces disagree arbitrarily far out, so inclusion
    only happens between equal normals.
    """
    _check_dimensions(first.dimension, second.dimension)
    return (
        first.normal == second.normal and first.floor_offset <= second.floor_offset
    )


def box_points(dimension: int, radius: int) -> Iterator[IntVec]:
    """Lattice points of max-norm at most radius, in lexicographic order."""
    return itertools.product(range(-radius, radius + 1), repeat=dimension)


def lock_count_bound(normal: Sequence[int]) -> int:
    """
    Number of primitive vectors a with sum(a_i^2) <= sum(normal_i^2).

    Lock distances are bounded below by the target's tangent gap, so this counts
    the normals a run may ever lock on.
    """
    limit = norm_sq(normal)
    radius = math.isqrt(limit)
    return sum(
        1
        for candidate in box_points(len(normal), radius)
        if norm_sq(candidate) <= limit and is_primitive(candidate)
    )
