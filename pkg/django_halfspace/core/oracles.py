"""
Exhaustive reference computations for the geometry and the lock search.

They are slow on purpose and only accept desk-sized inputs; tests compare the
fast code paths against them.
"""

import itertools
from fractions import Fraction
from typing import Iterable, NamedTuple, Optional

from django_halfspace.core.exceptions import (
    AffinelyDependentError,
    BoundsExceededError,
    NonIntegralOffsetError,
)
from django_halfspace.core.lattice import (
    BasicSet,
    Hyperplane,
    IntVec,
    box_points,
    cells_face,
    dot,
    hyperplane_through,
    norm_sq,
)
from django_halfspace.core.learners import Lock
from django_halfspace.core.streams import Datum, check_consistent

MAX_BOX = 20
MAX_DATA = 12
MAX_DIMENSION = 3


class JDistance(NamedTuple):
    distance: Fraction
    above: IntVec
    below: IntVec


def _check(dimension: int, box: Optional[int] = None, size: int = 0) -> None:
    if not 1 <= dimension <= MAX_DIMENSION:
        raise BoundsExceededError(f"dimension {dimension} outside 1..{MAX_DIMENSION}")
    if box is not None and not 0 <= box <= MAX_BOX:
        raise BoundsExceededError(f"box radius {box} outside 0..{MAX_BOX}")
    if size > MAX_DATA:
        raise BoundsExceededError(f"{size} data exceed the limit of {MAX_DATA}")


def _plane(points) -> Optional[Hyperplane]:
    try:
        return hyperplane_through(BasicSet.of(points))
    except AffinelyDependentError:
        return None


def lock_oracle(data: Iterable[Datum], dimension: int) -> Optional[Lock]:
    """
    Try every pair of a positive and a negative d-subset in lexicographic order.

    Returns:
        Lock -- the first pair that is adjacent, correctly oriented and separates
            all data; None if there is none.

    Raises:
        BoundsExceededError: for more than 12 data or a dimension above 3.
    """
    data = list(data)
    _check(dimension, size=len(data))
    labels = check_consistent(data)
    positives = sorted(p for p, label in labels.items() if label)
    negatives = sorted(p for p, label in labels.items() if not label)

    for plus in itertools.combinations(positives, dimension):
        plane = _plane(plus)
        if plane is None:
            continue
        for minus in itertools.combinations(negatives, dimension):
            other = _plane(minus)
            if other is None or other.normal != plane.normal:
                continue
            # orient the normal so that the plus plane is one level above
            if other.offset == plane.offset + 1:
                normal, level = plane.normal, int(-plane.offset)
            elif other.offset == plane.offset - 1:
                normal, level = tuple(-a for a in plane.normal), int(plane.offset)
            else:
                continue
            if any(dot(normal, p) < level for p in positives):
                continue
            if any(dot(normal, q) > level - 1 for q in negatives):
                continue
            if cells_face(plus, minus, normal):
                return Lock(plus, minus, normal, -level)
    return None


def gap_oracle(normal: IntVec, box: int) -> Fraction:
    """
    Squared distance between the closest distinct lattice hyperplanes with this
    normal, from the least positive value of normal . x over the box.
    """
    _check(len(normal), box)
    gap = min(
        (abs(v) for v in (dot(normal, x) for x in box_points(len(normal), box)) if v),
        default=None,
    )
    if gap is None:
        raise BoundsExceededError(f"box {box} too small for normal {tuple(normal)}")
    return Fraction(gap * gap, norm_sq(normal))


def jdist_oracle(hyperplane: Hyperplane, axis: int, box: int) -> Optional[JDistance]:
    """
    Least distance along axis (1-based) from an off-plane lattice point to the
    hyperplane, with the lexicographically first witness on each side.

    Returns:
        JDistance, or None when the axis is parallel to the hyperplane.
    """
    _check(hyperplane.dimension, box)
    if hyperplane.offset.denominator != 1:
        raise NonIntegralOffsetError(f"offset {hyperplane.offset} is not an integer")
    coefficient = hyperplane.normal[axis - 1]
    if coefficient == 0:
        return None

    best, above, below = None, None, None
    for point in box_points(hyperplane.dimension, box):
        value = hyperplane.value(point)
        if value == 0:
            continue
        distance = abs(value) / abs(coefficient)
        if best is None or distance < best:
            best, above, below = distance, None, None
        if distance == best:
            if value > 0 and above is None:
                above = point
            elif value < 0 and below is None:
                below = point
    if above is None or below is None:
        raise BoundsExceededError(f"box {box} holds no witnesses on both sides")
    return JDistance(Fraction(best), above, below)
