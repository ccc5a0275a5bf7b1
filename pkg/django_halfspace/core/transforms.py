"""
Learner transforms: a canny normal form and the witness-based enlargement of a
locally conservative learner.
"""

import logging
from typing import Any, NamedTuple, Tuple

from django_halfspace.core.exceptions import (
    HalfspaceError,
    UnderlyingLearnerUndefinedError,
)
from django_halfspace.core.learners import Hypothesis, Learner, fingerprint
from django_halfspace.core.semantics import PatchedHalfSpace
from django_halfspace.core.streams import Datum, neg, pos

logger = logging.getLogger(__name__)


def _advance(learner: Learner, state, datum: Datum):
    try:
        state = learner.step(state, datum)
        return state, learner.hypothesis(state)
    except HalfspaceError as error:
        raise UnderlyingLearnerUndefinedError(
            f"{learner.name} failed on {datum}: {error}"
        ) from error


class CannyState(NamedTuple):
    """sigma: the data that made the wrapped learner change its mind, in order."""

    sigma: Tuple[Datum, ...]
    inner: Any


class CannyLearner(Learner):
    """
    Runs the wrapped learner only on the subsequence of data that changed its
    hypothesis, so no datum causes a mind change twice.
    """

    def __init__(self, learner: Learner) -> None:
        self.learner = learner
        self.name = f"canny({learner.name})"

    def initial(self) -> CannyState:
        return CannyState((), self.learner.initial())

    def step(self, state: CannyState, datum: Datum) -> CannyState:
        datum = Datum(_hashable(datum.point), int(datum.label))
        if datum in state.sigma:
            return state
        before = self.learner.hypothesis(state.inner).identity
        inner, after = _advance(self.learner, state.inner, datum)
        if after.identity == before:
            return state
        return CannyState(state.sigma + (datum,), inner)

    def hypothesis(self, state: CannyState) -> Hypothesis:
        inner = self.learner.hypothesis(state.inner)
        return inner._replace(identity=f"canny:{fingerprint(state.sigma)}")


class WitnessState(NamedTuple):
    """mind_changes: the data that caused a mind change of the wrapped learner."""

    inner: Any
    mind_changes: Tuple[Datum, ...]


class WitnessLearner(Learner):
    """
    Enlarges the wrapped learner's guess by every datum that witnessed one of its
    mind changes: the hypothesis denotes (L + pos(MC)) - neg(MC).
    """

    def __init__(self, learner: Learner) -> None:
        self.learner = learner
        self.name = f"witness({learner.name})"

    def initial(self) -> WitnessState:
        return WitnessState(self.learner.initial(), ())

    def step(self, state: WitnessState, datum: Datum) -> WitnessState:
        datum = Datum(_hashable(datum.point), int(datum.label))
        if datum in state.mind_changes:
            return state
        before = self.learner.hypothesis(state.inner).identity
        inner, after = _advance(self.learner, state.inner, datum)
        if after.identity == before:
            # a full-information learner keeps the datum even without a mind change
            return state if self.learner.iterative else state._replace(inner=inner)
        logger.debug("%s mind change witnessed by %s", self.learner.name, datum)
        return WitnessState(inner, tuple(sorted(state.mind_changes + (datum,))))

    def hypothesis(self, state: WitnessState) -> Hypothesis:
        inner = self.learner.hypothesis(state.inner)
        if not state.mind_changes:
            semantics = inner.semantics
        else:
            semantics = PatchedHalfSpace(
                inner.semantics,
                frozenset(pos(state.mind_changes)),
                frozenset(neg(state.mind_changes)),
            )
        return inner._replace(
            identity=f"wb:{fingerprint((inner.identity, state.mind_changes))}",
            semantics=semantics,
        )


def _hashable(point):
    return tuple(point) if isinstance(point, list) else point


def canny_wrap(learner: Learner) -> CannyLearner:
    return CannyLearner(learner)


def witness_wrap(learner: Learner) -> WitnessLearner:
    return WitnessLearner(learner)
