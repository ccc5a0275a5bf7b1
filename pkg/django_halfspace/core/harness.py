"""
The referee: feeds a learner an informant, records every hypothesis and decides
convergence against the known target.

Index convention: hypotheses[0] is the initial hypothesis and hypotheses[t + 1] the
one output after datum t, so hypotheses[t] has seen exactly data[:t].

Traces of the general learner are conservative, weakly monotonic and strongly
non-U-shaped, with one exception: on its own dummy language x_d >= 0 the open
hypotheses already denote the target under distinct fingerprints, so snu and
locconv fail there. Cautiousness and decisiveness are not guaranteed: locking onto
x_d >= 1 shrinks the dummy, and every unlock returns to it.
"""

import logging
import re
from typing import Any, Callable, Dict, List, NamedTuple, Optional, Tuple

from django_halfspace import __version__
from django_halfspace.core.codec import PAIRING_NAME
from django_halfspace.core.enumeration import DEFAULT_BUDGET, EnumerationLearner
from django_halfspace.core.exceptions import (
    HalfspaceConfigError,
    HalfspaceError,
    LearnerStepError,
)
from django_halfspace.core.fixtures import Family, halfspace_family
from django_halfspace.core.lattice import HalfSpace, lock_count_bound, tangent_gap_sq
from django_halfspace.core.learners import (
    LOCKED,
    HalfspaceLearner,
    Hypothesis,
    Learner,
)
from django_halfspace.core.planar import PlanarLearner
from django_halfspace.core.semantics import (
    SemanticsAdapter,
    family_adapter,
    halfspace_adapter,
    semantics_from_json,
    semantics_to_json,
)
from django_halfspace.core.streams import (
    CANONICAL_ORDER_NAME,
    GENERATOR_NAME,
    Datum,
    StreamSpec,
    generate,
)
from django_halfspace.core.transforms import canny_wrap, witness_wrap

logger = logging.getLogger(__name__)

CONVERGED = "CONVERGED"
NOT_CONVERGED = "NOT_CONVERGED"
SYNTACTIC_STABLE = "SYNTACTIC_STABLE"

FAMILY_RADIUS = 64

LEARNER_IDS = (
    "general",
    "planar",
    "canny(general)",
    "witness(general)",
    "enumeration",
)


class Step(NamedTuple):
    t: int
    datum: Datum
    hypothesis: Hypothesis


class RunVerdict(NamedTuple):
    """
    status -- CONVERGED, NOT_CONVERGED or SYNTACTIC_STABLE.
    t -- index of the first hypothesis of the final stable run, if any.
    locks -- number of locked episodes.
    """

    status: str
    t: Optional[int] = None
    locks: int = 0

    def summary(self) -> str:
        if self.status == NOT_CONVERGED:
            return NOT_CONVERGED
        return f"{self.status} t={self.t} locks={self.locks}"


class Trace(NamedTuple):
    meta: Dict[str, Any]
    initial: Hypothesis
    steps: Tuple[Step, ...]
    verdict: RunVerdict

    @property
    def hypotheses(self) -> List[Hypothesis]:
        return [self.initial] + [step.hypothesis for step in self.steps]

    @property
    def data(self) -> List[Datum]:
        return [step.datum for step in self.steps]

    @property
    def target(self):
        target = self.meta.get("target")
        return semantics_from_json(target) if target else None


def build_learner(
    learner_id: str,
    dimension: int,
    family: Optional[Family] = None,
    budget: int = DEFAULT_BUDGET,
) -> Learner:
    """
    Resolve a learner id: general, planar, enumeration, or canny(<id>) /
    witness(<id>) around any of them.

    Raises:
        HalfspaceConfigError: for an unknown id, or planar outside dimension 2.
    """
    wrapped = re.fullmatch(r"(canny|witness)\((.+)\)", learner_id)
    if wrapped:
        inner = build_learner(wrapped.group(2), dimension, family, budget)
        if wrapped.group(1) == "canny":
            return canny_wrap(inner)
        return witness_wrap(inner)
    if learner_id == "general":
        return HalfspaceLearner(dimension)
    if learner_id == "planar":
        if dimension != 2:
            raise HalfspaceConfigError("learner planar requires dimension 2")
        return PlanarLearner()
    if learner_id == "enumeration":
        return EnumerationLearner(family or halfspace_family(dimension), budget)
    raise HalfspaceConfigError(
        f"unknown learner {learner_id!r}, expected one of {LEARNER_IDS}"
    )


def _check_bounds(max_steps: int, window: int) -> None:
    if window < 1:
        raise HalfspaceConfigError(f"convergence window must be >= 1, got {window}")
    if max_steps < 0:
        raise HalfspaceConfigError(f"max steps must be >= 0, got {max_steps}")


def drive(
    learner: Learner,
    datum_at: Callable[[int], Datum],
    target,
    meta: Dict[str, Any],
    max_steps: int,
    window: int,
    adapter: SemanticsAdapter,
) -> Trace:
    """
    Run learner on datum_at(0), datum_at(1), ... and referee it.

    Stops as soon as the hypothesis identity has been unchanged for window steps
    while denoting the target.

    Raises:
        LearnerStepError: wrapping any learner failure with its step index.
    """
    _check_bounds(max_steps, window)
    state = learner.initial()
    previous = learner.hypothesis(state)
    initial = previous
    steps: List[Step] = []
    stable_since, locks = 0, 0
    correct: Dict[str, bool] = {}

    def is_correct(hypothesis: Hypothesis) -> bool:
        if hypothesis.identity not in correct:
            correct[hypothesis.identity] = adapter.is_equal(
                hypothesis.semantics, target
            )
        return correct[hypothesis.identity]

    status = NOT_CONVERGED
    for t in range(max_steps):
        datum = datum_at(t)
        try:
            state = learner.step(state, datum)
            hypothesis = learner.hypothesis(state)
        except HalfspaceError as error:
            raise LearnerStepError(t, str(error)) from error
        steps.append(Step(t, datum, hypothesis))

        if hypothesis.identity != previous.identity:
            stable_since = t + 1
            if hypothesis.mode == LOCKED:
                locks += 1
        previous = hypothesis

        if t + 1 - stable_since >= window and is_correct(hypothesis):
            status = CONVERGED
            break
    else:
        if len(steps) - stable_since >= window and steps:
            status = SYNTACTIC_STABLE

    converged_at = None if status == NOT_CONVERGED else stable_since
    verdict = RunVerdict(status, converged_at, locks)
    logger.debug("%s on %s: %s", learner.name, meta.get("target"), verdict.summary())
    return Trace(dict(meta), initial, tuple(steps), verdict)


def _meta(learner: Learner, **fields) -> Dict[str, Any]:
    return {
        "learner": learner.name,
        "pairing": PAIRING_NAME,
        "order": CANONICAL_ORDER_NAME,
        "generator": GENERATOR_NAME,
        "version": __version__,
        **fields,
    }


def run(
    learner: Learner,
    spec: StreamSpec,
    max_steps: int,
    convergence_window: int,
    adapter: Optional[SemanticsAdapter] = None,
) -> Trace:
    """
    Run a learner on the informant described by spec.

    Returns:
        Trace -- every step plus the convergence verdict.
    """
    spec.validate()
    target = spec.target
    meta = _meta(
        learner,
        dimension=target.dimension,
        target=semantics_to_json(target),
        stream=spec.to_json(),
        max_steps=max_steps,
        window=convergence_window,
    )
    return drive(
        learner,
        lambda t: generate(spec, t),
        target,
        meta,
        max_steps,
        convergence_window,
        adapter or halfspace_adapter(target.dimension),
    )


def run_family(
    learner: Learner,
    family: Family,
    index: int,
    max_steps: int,
    convergence_window: int,
    adapter: Optional[SemanticsAdapter] = None,
) -> Trace:
    """Run a learner on the canonical informant of a fixture language."""
    if adapter is None:
        if family.on_naturals:
            adapter = family_adapter(FAMILY_RADIUS)
        else:
            adapter = halfspace_adapter(family.dimension)
    target = family.language(index)
    meta = _meta(
        learner,
        dimension=family.dimension,
        family=family.name,
        index=index,
        target=semantics_to_json(target),
        max_steps=max_steps,
        window=convergence_window,
    )
    return drive(
        learner,
        lambda t: family.datum(index, t),
        target,
        meta,
        max_steps,
        convergence_window,
        adapter,
    )


def lock_episodes(trace: Trace) -> List[Hypothesis]:
    """The first hypothesis of every locked episode, in order."""
    episodes = []
    previous = trace.initial
    for hypothesis in trace.hypotheses[1:]:
        if hypothesis.mode == LOCKED and hypothesis.identity != previous.identity:
            episodes.append(hypothesis)
        previous = hypothesis
    return episodes


def trace_laws(trace: Trace) -> List[str]:
    """
    Check the lock laws of a half-space run: strictly decreasing lock distances,
    bounded below by the target's tangent gap, at most lock_count_bound locks.

    Returns:
        list -- one message per violation, empty when every law holds.
    """
    target = trace.target
    episodes = lock_episodes(trace)
    distances = [h.lock_distance_sq for h in episodes]
    violations = []
    for earlier, later in zip(distances, distances[1:]):
        if not later < earlier:
            violations.append(f"lock distance {later} after {earlier} is not smaller")
    if isinstance(target, HalfSpace):
        gap = tangent_gap_sq(target)
        for distance in distances:
            if distance < gap:
                violations.append(f"lock distance {distance} below target gap {gap}")
        bound = lock_count_bound(target.normal)
        if len(episodes) > bound:
            violations.append(f"{len(episodes)} locks exceed the bound {bound}")
    return violations

