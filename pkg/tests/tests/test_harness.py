from fractions import Fraction

import pytest

from django_halfspace.core.exceptions import HalfspaceConfigError, LearnerStepError
from django_halfspace.core.harness import (
    CONVERGED,
    NOT_CONVERGED,
    SYNTACTIC_STABLE,
    RunVerdict,
    build_learner,
    drive,
    lock_episodes,
    run,
    trace_laws,
)
from django_halfspace.core.lattice import HalfSpace
from django_halfspace.core.learners import LOCKED, HalfspaceLearner
from django_halfspace.core.planar import PlanarLearner
from django_halfspace.core.semantics import halfspace_adapter
from django_halfspace.core.streams import (
    CANONICAL,
    PERMUTED,
    Datum,
    StreamSpec,
    generate,
)
from django_halfspace.core.transforms import CannyLearner, WitnessLearner

X_AT_LEAST_ZERO = HalfSpace((1, 0), 0)
Y_AT_LEAST_ZERO = HalfSpace((0, 1), 0)


def test_run_verdict_summary():
    assert RunVerdict(CONVERGED, 5, 1).summary() == "CONVERGED t=5 locks=1"
    assert RunVerdict(NOT_CONVERGED).summary() == "NOT_CONVERGED"


@pytest.mark.parametrize(
    "learner_id,expected",
    [
        ("general", HalfspaceLearner),
        ("planar", PlanarLearner),
        ("canny(general)", CannyLearner),
        ("witness(general)", WitnessLearner),
        ("witness(canny(planar))", WitnessLearner),
    ],
)
def test_build_learner(learner_id, expected):
    assert isinstance(build_learner(learner_id, 2), expected)


@pytest.mark.parametrize("learner_id,dimension", [("nope", 2), ("planar", 3)])
def test_build_learner_errors(learner_id, dimension):
    with pytest.raises(HalfspaceConfigError):
        build_learner(learner_id, dimension)


def test_build_enumeration_defaults_to_the_halfspace_family():
    learner = build_learner("enumeration", 2)
    assert learner.name == "enumeration(halfspace-2d)"


def test_general_learner_converges_on_the_canonical_informant():
    trace = run(HalfspaceLearner(2), StreamSpec(X_AT_LEAST_ZERO, CANONICAL), 2000, 100)
    assert trace.verdict == RunVerdict(CONVERGED, 5, 1)
    assert len(trace.steps) == 105
    assert len(trace.hypotheses) == len(trace.data) + 1
    assert trace.hypotheses[5].mode == LOCKED
    assert trace.hypotheses[5].semantics == X_AT_LEAST_ZERO
    assert trace.target == X_AT_LEAST_ZERO
    assert trace.meta["learner"] == "general"
    assert trace.meta["dimension"] == 2


def test_general_learner_on_the_dummy_target():
    trace = run(HalfspaceLearner(2), StreamSpec(Y_AT_LEAST_ZERO, CANONICAL), 2000, 100)
    assert trace.verdict.summary() == "CONVERGED t=5 locks=1"


def test_planar_learner_converges():
    trace = run(PlanarLearner(), StreamSpec(X_AT_LEAST_ZERO, CANONICAL), 2000, 100)
    assert trace.verdict.summary() == "CONVERGED t=5 locks=1"
    assert trace.hypotheses[-1].identity.startswith("p2d-locked:")


@pytest.mark.parametrize("seed", range(5))
@pytest.mark.parametrize(
    "target", [HalfSpace((1, 1), 0), HalfSpace((2, -1), 1), HalfSpace((-1, 3), -2)]
)
def test_general_learner_converges_on_permuted_informants(target, seed):
    trace = run(HalfspaceLearner(2), StreamSpec(target, PERMUTED, seed), 5000, 100)
    assert trace.verdict.status == CONVERGED
    assert trace_laws(trace) == []


def test_runs_are_deterministic():
    spec = StreamSpec(HalfSpace((2, -1), 1), PERMUTED, 3)
    first = run(HalfspaceLearner(2), spec, 2000, 50)
    second = run(HalfspaceLearner(2), spec, 2000, 50)
    assert first == second


def test_zero_steps():
    trace = run(HalfspaceLearner(2), StreamSpec(X_AT_LEAST_ZERO, CANONICAL), 0, 100)
    assert trace.steps == ()
    assert trace.hypotheses == [trace.initial]
    assert trace.verdict == RunVerdict(NOT_CONVERGED)


def test_syntactic_stability_on_a_wrong_target():
    spec = StreamSpec(X_AT_LEAST_ZERO, CANONICAL)
    trace = drive(
        HalfspaceLearner(2),
        lambda t: generate(spec, t),
        Y_AT_LEAST_ZERO,
        {},
        50,
        10,
        halfspace_adapter(2),
    )
    assert trace.verdict == RunVerdict(SYNTACTIC_STABLE, 5, 1)
    assert len(trace.steps) == 50


def test_learner_failure_names_the_step():
    with pytest.raises(LearnerStepError) as error:
        drive(
            HalfspaceLearner(2),
            lambda t: Datum((0, 0), t % 2),
            X_AT_LEAST_ZERO,
            {},
            10,
            5,
            halfspace_adapter(2),
        )
    assert error.value.step == 1
    assert str(error.value).startswith("step 1:")


@pytest.mark.parametrize("max_steps,window", [(-1, 10), (10, 0)])
def test_bad_bounds(max_steps, window):
    spec = StreamSpec(X_AT_LEAST_ZERO, CANONICAL)
    with pytest.raises(HalfspaceConfigError):
        run(HalfspaceLearner(2), spec, max_steps, window)


def test_lock_episodes():
    trace = run(HalfspaceLearner(2), StreamSpec(X_AT_LEAST_ZERO, CANONICAL), 200, 50)
    episodes = lock_episodes(trace)
    assert len(episodes) == 1
    assert episodes[0].lock_distance_sq == Fraction(1)
    assert trace_laws(trace) == []
