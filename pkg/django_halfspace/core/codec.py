"""
Natural-number codes for integers, tuples and half-space indices.

A half-space index encodes (a_0, a_1, ..., a_d) as the left-nested pairing of the
integer codes of its entries and names the language {x : a_0 >= sum(a_i * x_i)}.
Indices whose slopes are all zero form the degenerate set and name no half-space.
"""

import math
from fractions import Fraction
from typing import NamedTuple, Sequence, Tuple, Union

from django_halfspace.core.lattice import HalfSpace, IntVec, gcd_vec

PAIRING_NAME = "cantor"


class Degenerate(NamedTuple):
    """
    An index of the degenerate set: every slope is zero, so the index names
    {x : 0 >= -a_0}, the whole lattice or nothing.
    """

    displacement: int

    def contains(self, point) -> bool:
        return self.displacement >= 0


def z_to_n(x: int) -> int:
    """0, -1, 1, -2, 2, ... -> 0, 1, 2, 3, 4, ..."""
    return 2 * x if x >= 0 else -2 * x - 1


def n_to_z(i: int) -> int:
    return i // 2 if i % 2 == 0 else -(i + 1) // 2


def pair(i: int, j: int) -> int:
    """Cantor pairing (i + j)(i + j + 1)/2 + j."""
    s = i + j
    return s * (s + 1) // 2 + j


def unpair(k: int) -> Tuple[int, int]:
    w = (math.isqrt(8 * k + 1) - 1) // 2
    j = k - w * (w + 1) // 2
    return w - j, j


def encode_tuple(values: Sequence[int]) -> int:
    """
    Left-nested code: <i_0, ..., i_n> = pair(<i_0, ..., i_{n-1}>, i_n), <i_0> = i_0.
    The empty tuple is coded as 0.
    """
    if not values:
        return 0
    code = values[0]
    for value in values[1:]:
        code = pair(code, value)
    return code


def decode_tuple(code: int, length: int) -> Tuple[int, ...]:
    if length == 0:
        return ()
    values = []
    for _ in range(length - 1):
        code, last = unpair(code)
        values.append(last)
    values.append(code)
    return tuple(reversed(values))


def encode_int_vector(vector: Sequence[int]) -> int:
    return encode_tuple([z_to_n(x) for x in vector])


def decode_int_vector(code: int, length: int) -> IntVec:
    return tuple(n_to_z(i) for i in decode_tuple(code, length))


def decode_halfspace(index: int, dimension: int) -> Union[HalfSpace, Degenerate]:
    """
    Decode a half-space index for the configured dimension.

    Arguments:
        index {int} -- any natural number; decoding is total.
        dimension {int} -- the lattice dimension d, not part of the code.

    Returns:
        HalfSpace in canonical orientation, or Degenerate for the zero-slope set.
    """
    a0, *slopes = decode_int_vector(index, dimension + 1)
    divisor = gcd_vec(slopes)
    if divisor == 0:
        return Degenerate(a0)
    # a_0 >= sum(a_i x_i)  <=>  sum(-a_i / g * x_i) + a_0 / g >= 0
    normal = tuple(-a // divisor for a in slopes)
    return HalfSpace(normal, math.floor(Fraction(a0, divisor)))


def canonical_index(language: HalfSpace) -> int:
    """The index of (k, -n) for L = {n . x + k >= 0}; equal languages share it."""
    return encode_int_vector(
        [language.floor_offset] + [-a for a in language.normal]
    )


def decode_membership(index: int, code: int, dimension: int) -> bool:
    """
    The uniform decision procedure: is the point coded by code in the language
    named by index?

    Degenerate indices decide by the raw inequality 0 <= a_0, so they name
    everything or nothing.
    """
    point = decode_int_vector(code, dimension)
    decoded = decode_halfspace(index, dimension)
    return decoded.contains(point)
