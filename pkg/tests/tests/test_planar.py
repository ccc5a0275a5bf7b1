from fractions import Fraction

import pytest

from django_halfspace.core.codec import encode_int_vector, encode_tuple, pair
from django_halfspace.core.exceptions import (
    InconsistentDataError,
    MalformedCodeError,
)
from django_halfspace.core.lattice import HalfSpace
from django_halfspace.core.learners import LOCKED
from django_halfspace.core.planar import (
    COLLECT,
    DUMMY,
    Hypothesis2D,
    PlanarLearner,
    learner_2d_step,
    lock_language,
    lock_property_2d,
)
from django_halfspace.core.streams import Datum, code_datum

SQUARE_LOCK = ((0, 0), (1, 0), (0, 1), (1, 1))


@pytest.mark.parametrize(
    "points,expected",
    [
        (SQUARE_LOCK, True),
        (((0, 0), (1, 0), (0, 2), (1, 2)), False),
        (((0, 0), (1, 0), (5, 1), (6, 1)), False),
        (((0, 0), (0, 0), (0, 1), (1, 1)), False),
        (((0, 0), (1, 0), (0, 1), (1, 2)), False),
        # vertical lines only need overlapping second coordinates
        (((0, 0), (0, 1), (1, 1), (1, 5)), True),
        (((0, 0), (0, 1), (1, 3), (1, 5)), False),
    ],
)
def test_lock_property_2d(points, expected):
    assert lock_property_2d(*points) is expected


def test_lock_language_faces_away_from_the_negatives():
    assert lock_language((0, 0), (1, 0), (0, 1)) == HalfSpace((0, -1), 0)
    assert lock_language((0, 0), (1, 0), (0, -1)) == HalfSpace((0, 1), 0)


def test_initial_code():
    assert Hypothesis2D().code == 0
    assert Hypothesis2D.from_code(0) == Hypothesis2D()


def test_first_datum_is_stored():
    hypothesis = learner_2d_step(Hypothesis2D(), (0, 0))
    assert hypothesis.data == ((0, 0),)
    assert hypothesis.code == 2
    assert hypothesis.code == 2 * pair(1, encode_tuple([pair(0, 0)]))
    assert hypothesis.language() == DUMMY


def test_fourth_datum_completes_the_lock():
    hypothesis = Hypothesis2D()
    for point, label in [((0, 0), 1), ((1, 0), 1), ((0, 1), 0)]:
        hypothesis = learner_2d_step(hypothesis, code_datum(Datum(point, label)))
        assert not hypothesis.locked
        assert hypothesis.code % 2 == 0

    hypothesis = learner_2d_step(hypothesis, code_datum(Datum((1, 1), 0)))
    assert hypothesis.lock == SQUARE_LOCK
    assert hypothesis.code % 2 == 1
    assert hypothesis.code == (
        2 * encode_tuple([encode_int_vector(p) for p in SQUARE_LOCK]) + 1
    )
    assert Hypothesis2D.from_code(hypothesis.code) == hypothesis
    assert hypothesis.language() == HalfSpace((0, -1), 0)


def test_locked_code_repeats_on_consistent_data():
    locked = Hypothesis2D(lock=SQUARE_LOCK)
    assert learner_2d_step(locked, code_datum(Datum((4, -2), 1))) is locked
    assert learner_2d_step(locked, code_datum(Datum((4, 2), 0))) is locked


def test_locked_code_falls_back_to_five_stored_data():
    locked = Hypothesis2D(lock=SQUARE_LOCK)
    hypothesis = learner_2d_step(locked, code_datum(Datum((4, 2), 1)))
    assert not hypothesis.locked
    assert len(hypothesis.data) == 5
    assert hypothesis.data[-1] == code_datum(Datum((4, 2), 1))


def test_inconsistent_datum():
    with pytest.raises(InconsistentDataError):
        learner_2d_step(Hypothesis2D(lock=SQUARE_LOCK), code_datum(Datum((0, 0), 0)))
    stored = learner_2d_step(Hypothesis2D(), (0, 1))
    with pytest.raises(InconsistentDataError):
        learner_2d_step(stored, (0, 0))


def test_malformed_inputs():
    with pytest.raises(MalformedCodeError):
        learner_2d_step(Hypothesis2D(), (0, 2))


def test_odd_codes_without_the_lock_property_denote_the_dummy():
    broken = Hypothesis2D(lock=((0, 0), (1, 0), (0, 2), (1, 2)))
    assert broken.language() == DUMMY
    assert learner_2d_step(broken, (0, 1)) == learner_2d_step(Hypothesis2D(), (0, 1))
    assert Hypothesis2D.from_code(broken.code) == broken

    hypothesis = PlanarLearner().hypothesis(broken)
    assert hypothesis.semantics == DUMMY
    assert hypothesis.mode == COLLECT
    assert hypothesis.lock_distance_sq is None


@pytest.mark.parametrize("code", [52, 18])
def test_malformed_codes(code):
    with pytest.raises(MalformedCodeError):
        Hypothesis2D.from_code(code)


def test_planar_learner_hypotheses():
    learner = PlanarLearner()
    state = learner.initial()
    hypothesis = learner.hypothesis(state)
    assert hypothesis.mode == COLLECT
    assert hypothesis.semantics == DUMMY

    for point, label in [((0, 0), 1), ((1, 0), 1), ((0, 1), 0), ((1, 1), 0)]:
        state = learner.step(state, Datum(point, label))
    hypothesis = learner.hypothesis(state)
    assert hypothesis.mode == LOCKED
    assert hypothesis.identity.startswith("p2d-locked:")
    assert hypothesis.semantics == HalfSpace((0, -1), 0)
    assert hypothesis.lock_distance_sq == Fraction(1)
