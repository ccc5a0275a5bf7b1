"""
Trace validators for learning restrictions.

A trace's hypotheses are compressed into runs of equal identity; every restriction is
a universally quantified condition over indices r <= s <= t, and the smallest
violating indices are always found at run starts, so the checks walk run starts in
lexicographic order and report the first violation found.

Membership of every datum in every distinct hypothesis is computed once as a numpy
bool vector; equality and inclusion are memoized per pair of identities.
"""

import logging
from typing import Callable, Dict, List, NamedTuple, Optional, Tuple

import numpy as np

from django_halfspace.core.exceptions import (
    AdapterInsufficientError,
    HalfspaceConfigError,
)
from django_halfspace.core.harness import Trace
from django_halfspace.core.learners import Hypothesis
from django_halfspace.core.semantics import SemanticsAdapter

logger = logging.getLogger(__name__)

PASS = "PASS"
FAIL = "FAIL"
BOUNDED_PASS = "BOUNDED_PASS"

Witness = Tuple[int, ...]


class Verdict(NamedTuple):
    restriction: str
    status: str
    witness: Optional[Witness] = None
    radius: Optional[int] = None

    @property
    def ok(self) -> bool:
        return self.status != FAIL

    def describe(self) -> str:
        if self.status == FAIL:
            return f"FAIL({','.join(str(i) for i in self.witness)})"
        if self.status == BOUNDED_PASS:
            return f"BOUNDED-PASS({self.radius})"
        return PASS


class Run(NamedTuple):
    start: int
    hypothesis: Hypothesis


class TraceContext:
    """Runs of a trace plus memoized semantic decisions about them."""

    def __init__(self, trace: Trace, adapter: SemanticsAdapter) -> None:
        self.trace = trace
        self.adapter = adapter
        self.hypotheses = trace.hypotheses
        self.data = trace.data
        self.labels = np.array([bool(d.label) for d in self.data], dtype=bool)

        self.runs: List[Run] = []
        for index, hypothesis in enumerate(self.hypotheses):
            previous = self.runs[-1].hypothesis.identity if self.runs else None
            if hypothesis.identity != previous:
                self.runs.append(Run(index, hypothesis))

        self._members: Dict[str, np.ndarray] = {}
        self._equal: Dict[Tuple[str, str], bool] = {}
        self._subset: Dict[Tuple[str, str], bool] = {}
        self._classes: Optional[List[int]] = None

    def members(self, hypothesis: Hypothesis) -> np.ndarray:
        """Membership of every datum's point in the hypothesis."""
        if hypothesis.identity not in self._members:
            member = self.adapter.member
            self._members[hypothesis.identity] = np.array(
                [member(hypothesis.semantics, d.point) for d in self.data], dtype=bool
            )
        return self._members[hypothesis.identity]

    def first_inconsistency(self, hypothesis: Hypothesis) -> int:
        """
        Index of the first datum the hypothesis misclassifies, or the number of data.
        I[t] is consistent with the hypothesis exactly for t up to this index.
        """
        wrong = np.flatnonzero(self.members(hypothesis) != self.labels)
        return int(wrong[0]) if wrong.size else len(self.data)

    def equal(self, first: Hypothesis, second: Hypothesis) -> bool:
        if first.identity == second.identity:
            return True
        key = (first.identity, second.identity)
        if key not in self._equal:
            value = self.adapter.is_equal(first.semantics, second.semantics)
            self._equal[key] = self._equal[key[::-1]] = value
        return self._equal[key]

    def subset(self, first: Hypothesis, second: Hypothesis) -> bool:
        if first.identity == second.identity:
            return True
        key = (first.identity, second.identity)
        if key not in self._subset:
            self._subset[key] = self.adapter.is_subset(
                first.semantics, second.semantics
            )
        return self._subset[key]

    def classes(self) -> List[int]:
        """Semantic equivalence class of every run, numbered by first appearance."""
        if self._classes is None:
            representatives: List[Hypothesis] = []
            classes = []
            for run in self.runs:
                for number, representative in enumerate(representatives):
                    if self.equal(run.hypothesis, representative):
                        classes.append(number)
                        break
                else:
                    classes.append(len(representatives))
                    representatives.append(run.hypothesis)
            self._classes = classes
        return self._classes

    def target_class(self) -> Optional[int]:
        target = self.trace.target
        if target is None:
            raise HalfspaceConfigError("trace meta names no target")
        for run, number in zip(self.runs, self.classes()):
            if self.adapter.is_equal(run.hypothesis.semantics, target):
                return number
        return None


def check_conv(context: TraceContext) -> Optional[Witness]:
    """Cons(I[t], W_s) implies h_s = h_t, compared semantically."""
    runs, classes = context.runs, context.classes()
    for i, run in enumerate(runs):
        consistent_until = context.first_inconsistency(run.hypothesis)
        for j in range(i + 1, len(runs)):
            if classes[j] != classes[i]:
                if runs[j].start <= consistent_until:
                    return (run.start, runs[j].start)
                break
    return None


def _returns_after_leaving(classes: List[int], i: int) -> Optional[Tuple[int, int]]:
    leave = next(
        (j for j in range(i + 1, len(classes)) if classes[j] != classes[i]), None
    )
    if leave is None:
        return None
    back = next(
        (k for k in range(leave + 1, len(classes)) if classes[k] == classes[i]), None
    )
    return None if back is None else (leave, back)


def _reappears(classes: List[int], i: int) -> Optional[int]:
    return next(
        (k for k in range(i + 1, len(classes)) if classes[k] == classes[i]), None
    )


def _decisive(context: TraceContext, only: Optional[int] = None) -> Optional[Witness]:
    runs, classes = context.runs, context.classes()
    for i, run in enumerate(runs):
        if only is not None and classes[i] != only:
            continue
        found = _returns_after_leaving(classes, i)
        if found:
            leave, back = found
            return (run.start, runs[leave].start, runs[back].start)
    return None


def _strongly_decisive(
    context: TraceContext, only: Optional[int] = None
) -> Optional[Witness]:
    runs, classes = context.runs, context.classes()
    for i, run in enumerate(runs):
        if only is not None and classes[i] != only:
            continue
        back = _reappears(classes, i)
        if back is not None:
            return (run.start, runs[i + 1].start, runs[back].start)
    return None


def check_dec(context: TraceContext) -> Optional[Witness]:
    """W_r = W_t implies W_r = W_s."""
    return _decisive(context)


def check_sdec(context: TraceContext) -> Optional[Witness]:
    """W_r = W_t implies h_r = h_s."""
    return _strongly_decisive(context)


def check_nu(context: TraceContext) -> Optional[Witness]:
    """W_r = W_t = target implies W_r = W_s."""
    target = context.target_class()
    return None if target is None else _decisive(context, target)


def check_snu(context: TraceContext) -> Optional[Witness]:
    """W_r = W_t = target implies h_r = h_s."""
    target = context.target_class()
    return None if target is None else _strongly_decisive(context, target)


def check_caut(context: TraceContext) -> Optional[Witness]:
    """Never W_t strictly inside W_s for s <= t."""
    runs = context.runs
    for i, earlier in enumerate(runs):
        for later in runs[i + 1 :]:
            if context.subset(later.hypothesis, earlier.hypothesis) and not (
                context.equal(later.hypothesis, earlier.hypothesis)
            ):
                return (earlier.start, later.start)
    return None


def check_wmon(context: TraceContext) -> Optional[Witness]:
    """Cons(I[t], W_s) implies W_s inside W_t."""
    runs = context.runs
    for i, earlier in enumerate(runs):
        consistent_until = context.first_inconsistency(earlier.hypothesis)
        for later in runs[i + 1 :]:
            if later.start > consistent_until:
                break
            if not context.subset(earlier.hypothesis, later.hypothesis):
                return (earlier.start, later.start)
    return None


def check_mon(context: TraceContext) -> Optional[Witness]:
    """W_s and pos(I) inside W_t and pos(I), pos(I) being the trace's positives."""
    runs = context.runs
    for i, earlier in enumerate(runs):
        kept = context.labels & context.members(earlier.hypothesis)
        for later in runs[i + 1 :]:
            if np.any(kept & ~context.members(later.hypothesis)):
                return (earlier.start, later.start)
    return None


def check_smon(context: TraceContext) -> Optional[Witness]:
    """W_s inside W_t."""
    runs = context.runs
    for i, earlier in enumerate(runs):
        for later in runs[i + 1 :]:
            if not context.subset(earlier.hypothesis, later.hypothesis):
                return (earlier.start, later.start)
    return None


def check_locconv(context: TraceContext) -> Optional[Witness]:
    """A mind change h_t != h_{t+1} needs datum t to contradict h_t."""
    hypotheses = context.hypotheses
    for t, datum in enumerate(context.data):
        if hypotheses[t].identity == hypotheses[t + 1].identity:
            continue
        if context.members(hypotheses[t])[t] == bool(datum.label):
            return (t, t + 1)
    return None


def check_wb(context: TraceContext) -> Optional[Witness]:
    """
    A mind change h_r != h_s needs a datum of I[s] that h_t classifies correctly
    and h_r does not, for every t >= s.
    """
    runs, labels = context.runs, context.labels
    for i, first in enumerate(runs):
        old = context.members(first.hypothesis)
        earliest: Dict[int, int] = {}

        def witnessed_from(k: int) -> int:
            if k not in earliest:
                new = context.members(runs[k].hypothesis)
                missed = (labels & new & ~old) | (~labels & old & ~new)
                found = np.flatnonzero(missed)
                earliest[k] = int(found[0]) if found.size else len(labels)
            return earliest[k]

        for j in range(i + 1, len(runs)):
            if runs[j].hypothesis.identity == first.hypothesis.identity:
                continue
            s = runs[j].start
            for k in range(j, len(runs)):
                if witnessed_from(k) >= s:
                    return (first.start, s, max(runs[k].start, s))
    return None


def check_canny(context: TraceContext) -> Optional[Witness]:
    """No datum causes a mind change twice."""
    hypotheses = context.hypotheses
    first_change: Dict[Tuple, int] = {}
    for t, datum in enumerate(context.data):
        if hypotheses[t].identity == hypotheses[t + 1].identity:
            continue
        point = tuple(datum.point) if isinstance(datum.point, list) else datum.point
        key = (point, datum.label)
        if key in first_change:
            return (first_change[key], t)
        first_change[key] = t
    return None


class Restriction(NamedTuple):
    check: Callable[[TraceContext], Optional[Witness]]
    semantic: bool


RESTRICTIONS: Dict[str, Restriction] = {
    "conv": Restriction(check_conv, True),
    "dec": Restriction(check_dec, True),
    "caut": Restriction(check_caut, True),
    "wmon": Restriction(check_wmon, True),
    "mon": Restriction(check_mon, False),
    "smon": Restriction(check_smon, True),
    "nu": Restriction(check_nu, True),
    "snu": Restriction(check_snu, True),
    "sdec": Restriction(check_sdec, True),
    "locconv": Restriction(check_locconv, False),
    "wb": Restriction(check_wb, False),
    "canny": Restriction(check_canny, False),
}


def truncate(trace: Trace, step_cap: Optional[int]) -> Trace:
    if step_cap is None or len(trace.steps) <= step_cap:
        return trace
    logger.warning("validating the first %d of %d steps", step_cap, len(trace.steps))
    return trace._replace(steps=trace.steps[:step_cap])


def validate(
    trace: Trace,
    restriction: str,
    adapter: SemanticsAdapter,
    step_cap: Optional[int] = None,
    context: Optional[TraceContext] = None,
) -> Verdict:
    """
    Check one restriction on a trace.

    Arguments:
        restriction {str} -- one of RESTRICTIONS.
        adapter {SemanticsAdapter} -- semantic restrictions need exact deciders or
            a radius for bounded checks.

    Returns:
        Verdict -- PASS, FAIL with the least witnessing indices, or BOUNDED_PASS.

    Raises:
        HalfspaceConfigError: for an unknown restriction.
        AdapterInsufficientError: for a semantic restriction without exact deciders
            or radius.
    """
    try:
        check, semantic = RESTRICTIONS[restriction]
    except KeyError:
        raise HalfspaceConfigError(
            f"unknown restriction {restriction!r}, expected one of "
            f"{', '.join(RESTRICTIONS)}"
        ) from None

    bounded = semantic and not adapter.exact
    if bounded and adapter.radius is None:
        raise AdapterInsufficientError(
            f"adapter insufficient for {restriction}: no exact decider and no radius"
        )

    if context is None:
        context = TraceContext(truncate(trace, step_cap), adapter)
    witness = check(context)
    if witness is not None:
        return Verdict(restriction, FAIL, witness)
    if bounded:
        return Verdict(restriction, BOUNDED_PASS, radius=adapter.radius)
    return Verdict(restriction, PASS)


def validate_all(
    trace: Trace,
    restrictions: List[str],
    adapter: SemanticsAdapter,
    step_cap: Optional[int] = None,
) -> List[Verdict]:
    """Validate several restrictions sharing one memoized context."""
    context = TraceContext(truncate(trace, step_cap), adapter)
    return [
        validate(trace, restriction, adapter, context=context)
        for restriction in restrictions
    ]
