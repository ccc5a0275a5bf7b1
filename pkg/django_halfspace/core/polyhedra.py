"""
Exact feasibility of small linear systems by Fourier-Motzkin elimination.

Every coefficient is a Fraction; no tolerance is ever involved. The systems met by
the learner have at most 2d variables (two convex combinations), so the doubly
exponential worst case of the elimination never matters in practice.
"""

from fractions import Fraction
from typing import Iterable, List, NamedTuple, Optional, Sequence, Set, Tuple

Coefficients = Tuple[Fraction, ...]


class Constraint(NamedTuple):
    """
    One linear constraint ``coefficients . x (<= | ==) bound``.
    """

    coefficients: Coefficients
    bound: Fraction
    equality: bool = False


def constraint(
    coefficients: Iterable, bound, equality: bool = False
) -> Constraint:
    return Constraint(
        tuple(Fraction(c) for c in coefficients), Fraction(bound), equality
    )


def _substitute(
    row: Constraint, pivot: int, expression: Coefficients, constant: Fraction
) -> Constraint:
    """
    Replace x_pivot by ``expression . x + constant`` inside row.
    """
    factor = row.coefficients[pivot]
    if factor == 0:
        return row
    coefficients = tuple(
        0 if index == pivot else value + factor * expression[index]
        for index, value in enumerate(row.coefficients)
    )
    return Constraint(coefficients, row.bound - factor * constant, row.equality)


def _normalized(row: Constraint) -> Constraint:
    """
    Scale an inequality so that its largest absolute coefficient is 1.
    """
    scale = max((abs(c) for c in row.coefficients), default=Fraction(0))
    if scale == 0:
        return row
    return Constraint(
        tuple(c / scale for c in row.coefficients), row.bound / scale, row.equality
    )


def _eliminate_equalities(
    rows: Sequence[Constraint],
) -> Optional[List[Constraint]]:
    """
    Solve the equalities one by one and substitute them into the rest.

    Returns:
        the remaining inequalities, or None if an equality is contradictory.
    """
    equalities = [row for row in rows if row.equality]
    inequalities = [row for row in rows if not row.equality]

    while equalities:
        row = equalities.pop()
        pivot = next(
            (index for index, c in enumerate(row.coefficients) if c != 0), None
        )
        if pivot is None:
            if row.bound != 0:
                return None
            continue

        lead = row.coefficients[pivot]
        expression = tuple(
            Fraction(0) if index == pivot else -c / lead
            for index, c in enumerate(row.coefficients)
        )
        constant = row.bound / lead
        equalities = [
            _substitute(other, pivot, expression, constant) for other in equalities
        ]
        inequalities = [
            _substitute(other, pivot, expression, constant) for other in inequalities
        ]

    return inequalities


def _eliminate_variable(
    rows: Sequence[Constraint], variable: int
) -> Optional[List[Constraint]]:
    upper, lower, untouched = [], [], []
    for row in rows:
        coefficient = row.coefficients[variable]
        if coefficient > 0:
            upper.append(row)
        elif coefficient < 0:
            lower.append(row)
        else:
            untouched.append(row)

    combined = list(untouched)
    for high in upper:
        for low in lower:
            a = high.coefficients[variable]
            b = -low.coefficients[variable]
            combined.append(
                Constraint(
                    tuple(
                        b * x + a * y
                        for x, y in zip(high.coefficients, low.coefficients)
                    ),
                    b * high.bound + a * low.bound,
                )
            )

    result: List[Constraint] = []
    seen: Set[Constraint] = set()
    for row in combined:
        if all(c == 0 for c in row.coefficients):
            if row.bound < 0:
                return None
            continue
        row = _normalized(row)
        if row not in seen:
            seen.add(row)
            result.append(row)
    return result


def is_feasible(rows: Sequence[Constraint]) -> bool:
    """
    Decide whether some rational point satisfies every constraint.

    Arguments:
        rows {Sequence[Constraint]} -- constraints over the same variables.

    Returns:
        bool -- True iff the system has a rational (equivalently real) solution.
    """
    if not rows:
        return True

    inequalities = _eliminate_equalities(rows)
    if inequalities is None:
        return False

    variables = len(rows[0].coefficients)
    for variable in range(variables):
        inequalities = _eliminate_variable(inequalities, variable)
        if inequalities is None:
            return False

    return all(row.bound >= 0 for row in inequalities)
