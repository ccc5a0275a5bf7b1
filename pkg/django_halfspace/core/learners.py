"""
Iterative learners and the locked-state search for integral half-spaces.

A learner is a triple (initial, step, hypothesis) over immutable states. For the
iterative learners the state carries nothing the hypothesis does not: Open states
are named by a fingerprint of their retained data, Locked states by their lock.
"""

import hashlib
import itertools
import logging
from abc import ABC, abstractmethod
from fractions import Fraction
from typing import (
    Any,
    Dict,
    Iterable,
    Iterator,
    List,
    NamedTuple,
    Optional,
    Sequence,
    Tuple,
    Union,
)

from django_halfspace.core.exceptions import InconsistentDataError
from django_halfspace.core.lattice import (
    HalfSpace,
    IntVec,
    cells_face,
    dot,
    gcd_vec,
    negate,
    norm_sq,
    spanning_normal,
)
from django_halfspace.core.streams import Datum, check_consistent

logger = logging.getLogger(__name__)

OPEN = "open"
LOCKED = "locked"


class Hypothesis(NamedTuple):
    """
    What a trace records about a state.

    identity -- the syntactic hypothesis; equal identities mean no mind change.
    semantics -- the language the hypothesis denotes.
    """

    identity: str
    semantics: Any
    mode: str
    lock_distance_sq: Optional[Fraction] = None


class Learner(ABC):
    name = "learner"
    iterative = True

    @abstractmethod
    def initial(self):
        ...

    @abstractmethod
    def step(self, state, datum: Datum):
        ...

    @abstractmethod
    def hypothesis(self, state) -> Hypothesis:
        ...


def fingerprint(value) -> str:
    """Short stable digest of a value built from tuples, ints and strings."""
    return hashlib.sha1(repr(value).encode()).hexdigest()[:16]


class Lock(NamedTuple):
    """
    Adjacent basic sets plus (from positive data) and minus (from negative data).

    normal points towards the positive side; the positive tangent is
    {normal . x + offset >= 0} and its lattice complement the negative one.
    """

    plus: Tuple[IntVec, ...]
    minus: Tuple[IntVec, ...]
    normal: IntVec
    offset: int

    @property
    def language(self) -> HalfSpace:
        return HalfSpace(self.normal, self.offset)

    @property
    def distance_sq(self) -> Fraction:
        return Fraction(1, norm_sq(self.normal))

    def data(self) -> Tuple[Datum, ...]:
        return tuple(Datum(p, 1) for p in self.plus) + tuple(
            Datum(q, 0) for q in self.minus
        )


def primitive_normal(points: Sequence[IntVec]) -> Optional[IntVec]:
    """Sign-normalized primitive normal of the hyperplane through points, if any."""
    normal = spanning_normal(points)
    divisor = gcd_vec(normal)
    if divisor == 0:
        return None
    normal = tuple(x // divisor for x in normal)
    if next(x for x in normal if x != 0) < 0:
        normal = negate(normal)
    return normal


class Separation(NamedTuple):
    """An oriented normal along which positives and negatives are one level apart."""

    normal: IntVec
    level: int
    plus: List[IntVec]
    minus: List[IntVec]


def separations(
    positives: Sequence[IntVec], negatives: Sequence[IntVec], normals: Iterable[IntVec]
) -> Iterator[Separation]:
    """
    For each normal and orientation m with min(m . p) - max(m . q) == 1, yield the
    points realizing the minimum and the maximum.
    """
    for normal in normals:
        for oriented in (normal, negate(normal)):
            plus_values = [dot(oriented, p) for p in positives]
            minus_values = [dot(oriented, q) for q in negatives]
            level = min(plus_values)
            if level - max(minus_values) != 1:
                continue
            yield Separation(
                oriented,
                level,
                sorted(p for p, v in zip(positives, plus_values) if v == level),
                sorted(q for q, v in zip(negatives, minus_values) if v == level - 1),
            )


def candidate_normals(
    points: Sequence[IntVec], dimension: int, anchor: Optional[IntVec] = None
) -> List[IntVec]:
    """Normals of hyperplanes through d of the points (through anchor if given)."""
    if anchor is None:
        subsets = itertools.combinations(points, dimension)
    else:
        others = [p for p in points if p != anchor]
        subsets = (
            (anchor,) + rest for rest in itertools.combinations(others, dimension - 1)
        )
    normals = {primitive_normal(subset) for subset in subsets}
    normals.discard(None)
    return sorted(normals)


def find_lock(
    data: Iterable[Datum], dimension: int, anchor: Optional[Datum] = None
) -> Optional[Lock]:
    """
    Search the data for a locked state.

    A lock is a pair of adjacent basic sets, plus from positive points and minus
    from negative points, whose tangent half-spaces separate every datum. Among all
    locks the one with the least (sorted plus, sorted minus) is returned.

    Arguments:
        anchor {Datum} -- when given, only locks using this datum's point are
            considered.

    Returns:
        Lock, or None when no lock exists.
    """
    labels = check_consistent(data)
    positives = sorted(p for p, label in labels.items() if label)
    negatives = sorted(p for p, label in labels.items() if not label)
    if len(positives) < dimension or len(negatives) < dimension:
        return None

    anchor_point = None
    if anchor is not None:
        anchor_point = anchor.point
        side = positives if anchor.label else negatives
        normals = candidate_normals(side, dimension, anchor_point)
    else:
        normals = candidate_normals(positives, dimension)

    best: Optional[Lock] = None
    for separation in separations(positives, negatives, normals):
        lock = _least_lock(separation, dimension, anchor_point)
        if lock is not None and (best is None or lock[:2] < best[:2]):
            best = lock
    return best


def _least_lock(
    separation: Separation, dimension: int, anchor: Optional[IntVec]
) -> Optional[Lock]:
    if len(separation.plus) < dimension or len(separation.minus) < dimension:
        return None
    for plus in itertools.combinations(separation.plus, dimension):
        if primitive_normal(plus) is None:
            continue
        for minus in itertools.combinations(separation.minus, dimension):
            if anchor is not None and anchor not in plus and anchor not in minus:
                continue
            if primitive_normal(minus) is None:
                continue
            if cells_face(plus, minus, separation.normal):
                return Lock(plus, minus, separation.normal, -separation.level)
    return None


class OpenState(NamedTuple):
    retained: Tuple[Datum, ...] = ()


class LockedState(NamedTuple):
    lock: Lock


HalfspaceState = Union[OpenState, LockedState]


class HalfspaceLearner(Learner):
    """
    Iterative learner of integral half-spaces from informants.

    Open: collect data until a lock exists, then discard everything but the lock.
    Locked: ignore data the positive tangent classifies correctly; a violating
    datum reopens with the 2d lock points and the violator.
    """

    name = "general"

    def __init__(self, dimension: int) -> None:
        self.dimension = dimension

    def initial(self) -> OpenState:
        return OpenState()

    def step(self, state: HalfspaceState, datum: Datum) -> HalfspaceState:
        datum = Datum(tuple(datum.point), int(datum.label))
        if isinstance(state, LockedState):
            return self._locked_step(state, datum)
        return self._open_step(state, datum)

    def _open_step(self, state: OpenState, datum: Datum) -> HalfspaceState:
        labels: Dict[IntVec, int] = dict(state.retained)
        if datum.point in labels:
            if labels[datum.point] != datum.label:
                raise InconsistentDataError(
                    f"datum {datum} contradicts a retained point"
                )
            return state

        retained = tuple(sorted(state.retained + (datum,)))
        # a search over more than 2d + 1 retained points already failed without
        # the new datum, so only locks through it are new
        anchor = datum if len(state.retained) > 2 * self.dimension + 1 else None
        lock = find_lock(retained, self.dimension, anchor)
        if lock is None:
            return OpenState(retained)

        logger.debug(
            "lock on %s after %d retained data", lock.language.describe(), len(retained)
        )
        return LockedState(lock)

    def _locked_step(self, state: LockedState, datum: Datum) -> HalfspaceState:
        lock = state.lock
        data = lock.data()
        for point, label in data:
            if point == datum.point and label != datum.label:
                raise InconsistentDataError(f"datum {datum} contradicts a lock point")
        if lock.language.contains(datum.point) == bool(datum.label):
            return state

        logger.debug("datum %s violates lock %s", datum, lock.language.describe())
        return OpenState(tuple(sorted(data + (datum,))))

    def hypothesis(self, state: HalfspaceState) -> Hypothesis:
        if isinstance(state, LockedState):
            lock = state.lock
            return Hypothesis(
                f"locked:{fingerprint(tuple(lock))}",
                lock.language,
                LOCKED,
                lock.distance_sq,
            )
        identity = "open:" + (fingerprint(state.retained) if state.retained else "")
        return Hypothesis(identity, HalfSpace.upper(self.dimension), OPEN)
