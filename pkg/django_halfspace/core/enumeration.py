import logging
from typing import NamedTuple, Tuple

from django_halfspace.core.exceptions import EnumerationBudgetError
from django_halfspace.core.fixtures import Family
from django_halfspace.core.learners import Hypothesis, Learner
from django_halfspace.core.streams import Datum, check_consistent

logger = logging.getLogger(__name__)

ENUMERATE = "enumerate"
DEFAULT_BUDGET = 200_000


class EnumerationState(NamedTuple):
    index: int
    data: Tuple[Datum, ...] = ()


class EnumerationLearner(Learner):
    """
    Learning by enumeration: the least index of the family consistent with all data
    seen so far.

    Not iterative, the state keeps the whole prefix. Consistent indices only ever
    disappear, so the search resumes at the current index.
    """

    iterative = False

    def __init__(self, family: Family, budget: int = DEFAULT_BUDGET) -> None:
        self.family = family
        self.budget = budget
        self.name = f"enumeration({family.name})"

    def initial(self) -> EnumerationState:
        return EnumerationState(0)

    def consistent(self, index: int, data: Tuple[Datum, ...]) -> bool:
        member = self.family.member
        return all(
            bool(member(index, point)) == bool(label) for point, label in reversed(data)
        )

    def step(self, state: EnumerationState, datum: Datum) -> EnumerationState:
        point = tuple(datum.point) if isinstance(datum.point, list) else datum.point
        data = state.data + (Datum(point, int(datum.label)),)
        check_consistent(data)

        index = state.index
        for _ in range(self.budget):
            if self.consistent(index, data):
                if index != state.index:
                    logger.debug("%s moved to index %d", self.name, index)
                return EnumerationState(index, data)
            index += 1
        raise EnumerationBudgetError(
            f"no consistent index in [{state.index}, {index}) "
            f"after {len(data)} data"
        )

    def hypothesis(self, state: EnumerationState) -> Hypothesis:
        return Hypothesis(
            f"enum:{state.index}", self.family.language(state.index), ENUMERATE
        )
