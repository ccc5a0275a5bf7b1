"""
The encoded learner for half-planes, working on natural-number codes.

Hypotheses are naturals: an even code 2<s, <d_1, ..., d_s>> stores s data
d_i = <n_i, label_i>, an odd code 2<<u>, <v>, <x>, <y>> + 1 names the lock
(u, v | x, y). Codes of stored arrays grow very quickly, so hypotheses are kept as
structured values in bijection with their codes and the natural is only computed
on request.
"""

import itertools
import logging
from fractions import Fraction
from typing import NamedTuple, Optional, Sequence, Tuple

from django_halfspace.core.codec import (
    decode_int_vector,
    decode_tuple,
    encode_int_vector,
    encode_tuple,
    pair,
    unpair,
)
from django_halfspace.core.exceptions import (
    InconsistentDataError,
    MalformedCodeError,
)
from django_halfspace.core.lattice import HalfSpace, IntVec, dot, norm_sq
from django_halfspace.core.learners import (
    LOCKED,
    Hypothesis,
    Learner,
    candidate_normals,
    fingerprint,
    primitive_normal,
    separations,
)
from django_halfspace.core.streams import Datum, code_datum

logger = logging.getLogger(__name__)

COLLECT = "collect"

Coded = Tuple[int, int]


def _spans_overlap(first: Sequence[int], second: Sequence[int]) -> bool:
    return max(min(first), min(second)) <= min(max(first), max(second))


def lock_property_2d(u: IntVec, v: IntVec, x: IntVec, y: IntVec) -> bool:
    """
    The LOCK property of two point pairs in the plane.

    1. u != v and x != y;
    2. the lines uv and xy are parallel and distinct;
    3. no lattice line lies strictly between them (integer offsets differ by 1);
    4. the segments overlap in their projection on the first axis unless the lines
       are vertical, and on the second axis unless they are horizontal.
    """
    if u == v or x == y:
        return False
    normal = primitive_normal((u, v))
    if normal is None or primitive_normal((x, y)) != normal:
        return False
    if abs(dot(normal, u) - dot(normal, x)) != 1:
        return False
    if normal[1] != 0 and not _spans_overlap((u[0], v[0]), (x[0], y[0])):
        return False
    if normal[0] != 0 and not _spans_overlap((u[1], v[1]), (x[1], y[1])):
        return False
    return True


def lock_language(u: IntVec, v: IntVec, x: IntVec) -> HalfSpace:
    """The half-plane bounded by line uv on the side away from x."""
    normal = primitive_normal((u, v))
    if dot(normal, x) > dot(normal, u):
        normal = (-normal[0], -normal[1])
    return HalfSpace(normal, -dot(normal, u))


DUMMY = HalfSpace((0, 1), 0)


class Hypothesis2D(NamedTuple):
    """
    data -- stored coded data in arrival order (collecting hypotheses).
    lock -- (u, v, x, y) for odd codes; u, v positive and x, y negative.
    """

    data: Tuple[Coded, ...] = ()
    lock: Optional[Tuple[IntVec, IntVec, IntVec, IntVec]] = None

    @property
    def locked(self) -> bool:
        return self.lock is not None

    @property
    def code(self) -> int:
        if self.lock is not None:
            return 2 * encode_tuple([encode_int_vector(p) for p in self.lock]) + 1
        array = encode_tuple([pair(n, label) for n, label in self.data])
        return 2 * pair(len(self.data), array)

    @classmethod
    def from_code(cls, code: int) -> "Hypothesis2D":
        """
        Raises:
            MalformedCodeError: for a stored label other than 0 or 1, or a nonzero
                array code of length 0.
        """
        j, odd = divmod(code, 2)
        if odd:
            lock = tuple(decode_int_vector(c, 2) for c in decode_tuple(j, 4))
            return cls(lock=lock)
        length, array = unpair(j)
        if length == 0 and array != 0:
            raise MalformedCodeError(f"code {code} stores an empty array as {array}")
        data = tuple(unpair(item) for item in decode_tuple(array, length))
        for n, label in data:
            if label not in (0, 1):
                raise MalformedCodeError(f"code {code} stores label {label}")
        return cls(data=data)

    def language(self) -> HalfSpace:
        if self.lock is not None and lock_property_2d(*self.lock):
            u, v, x, _ = self.lock
            return lock_language(u, v, x)
        return DUMMY


def _search_lock(
    data: Sequence[Datum], anchor: Optional[Datum]
) -> Optional[Tuple[IntVec, IntVec, IntVec, IntVec]]:
    """
    Least (u, v, x, y) with the LOCK property whose half-plane agrees with all data.
    """
    positives = sorted({d.point for d in data if d.label})
    negatives = sorted({d.point for d in data if not d.label})
    if len(positives) < 2 or len(negatives) < 2:
        return None

    if anchor is None:
        normals = candidate_normals(positives, 2)
    else:
        side = positives if anchor.label else negatives
        normals = candidate_normals(side, 2, anchor.point)

    best = None
    for separation in separations(positives, negatives, normals):
        for u, v in itertools.combinations(separation.plus, 2):
            for x, y in itertools.combinations(separation.minus, 2):
                if anchor is not None and anchor.point not in (u, v, x, y):
                    continue
                if lock_property_2d(u, v, x, y):
                    candidate = (u, v, x, y)
                    if best is None or candidate < best:
                        best = candidate
                    break
            else:
                continue
            break
    return best


def learner_2d_step(hypothesis: Hypothesis2D, coded: Coded) -> Hypothesis2D:
    """
    One step of the encoded learner on the datum (code of a point, label).

    Raises:
        MalformedCodeError: for a label other than 0/1.
        InconsistentDataError: if the datum contradicts stored data.
    """
    n, label = coded
    if label not in (0, 1):
        raise MalformedCodeError(f"datum label {label} is not a bit")
    datum = Datum(decode_int_vector(n, 2), label)

    if hypothesis.lock is not None and not lock_property_2d(*hypothesis.lock):
        # odd codes without the LOCK property denote the dummy, as the empty store does
        hypothesis = Hypothesis2D()

    if hypothesis.lock is not None:
        u, v, x, y = hypothesis.lock
        stored = ((u, 1), (v, 1), (x, 0), (y, 0))
        for point, stored_label in stored:
            if point == datum.point and stored_label != label:
                raise InconsistentDataError(f"datum {datum} contradicts a lock point")
        if lock_language(u, v, x).contains(datum.point) == bool(label):
            return hypothesis
        logger.debug("datum %s breaks lock %s", datum, hypothesis.lock)
        return Hypothesis2D(
            data=tuple((encode_int_vector(p), b) for p, b in stored) + (coded,)
        )

    labels = {}
    for m, stored_label in hypothesis.data:
        labels.setdefault(m, stored_label)
    if n in labels:
        if labels[n] != label:
            raise InconsistentDataError(f"datum {datum} contradicts stored data")
        return hypothesis

    data = [Datum(decode_int_vector(m, 2), b) for m, b in hypothesis.data]
    data.append(datum)
    # stores of more than five data were searched before this datum arrived
    anchor = datum if len(hypothesis.data) > 5 else None
    lock = _search_lock(data, anchor)
    if lock is not None:
        return Hypothesis2D(lock=lock)
    return Hypothesis2D(data=hypothesis.data + (coded,))


class PlanarLearner(Learner):
    """The encoded half-plane learner presented with lattice data."""

    name = "planar"

    def initial(self) -> Hypothesis2D:
        return Hypothesis2D()

    def step(self, state: Hypothesis2D, datum: Datum) -> Hypothesis2D:
        coded = code_datum(Datum(tuple(datum.point), datum.label))
        return learner_2d_step(state, coded)

    def hypothesis(self, state: Hypothesis2D) -> Hypothesis:
        if state.lock is not None and lock_property_2d(*state.lock):
            language = state.language()
            return Hypothesis(
                f"p2d-{LOCKED}:{fingerprint(state.lock)}",
                language,
                LOCKED,
                Fraction(1, norm_sq(language.normal)),
            )
        return Hypothesis(f"p2d-{COLLECT}:{fingerprint(state.data)}", DUMMY, COLLECT)
