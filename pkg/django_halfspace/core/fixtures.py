"""
Indexed families with uniformly decidable membership.

Most families live on the naturals; the half-space families decide membership of
lattice points through the half-space index codec. Each family is registered under
a name so that traces can refer to a language as (family, index).
"""

from typing import Callable, Dict, Hashable, NamedTuple

from django_halfspace.core.codec import decode_halfspace, pair, unpair
from django_halfspace.core.exceptions import HalfspaceError
from django_halfspace.core.streams import Datum, canonical_point


class Family(NamedTuple):
    name: str
    member: Callable[[int, Hashable], bool]
    description: str
    dimension: int = 0

    @property
    def on_naturals(self) -> bool:
        return self.dimension == 0

    def language(self, index: int):
        """A semantics value for the index-th language."""
        if self.on_naturals:
            return FamilyLanguage(self.name, index)
        return decode_halfspace(index, self.dimension)

    def datum(self, index: int, t: int) -> Datum:
        """The t-th datum of the canonical informant for the index-th language."""
        point = t if self.on_naturals else canonical_point(self.dimension, t)
        return Datum(point, int(self.member(index, point)))


class FamilyLanguage(NamedTuple):
    family: str
    index: int

    def contains(self, point) -> bool:
        return get_family(self.family).member(self.index, point)


def bitmask(elements) -> int:
    """The code of a finite set of naturals, sum(2**n)."""
    return sum(1 << n for n in set(elements))


def _fin_or_naturals(index: int, n: int) -> bool:
    if index == 0:
        return True
    return bool((index - 1) >> n & 1)


def _cofinite(index: int, n: int) -> bool:
    return not index >> n & 1


def _evens_plus_odd(index: int, n: int) -> bool:
    if index == 0:
        return n % 2 == 0
    k, removed = divmod(index - 1, 2)
    if n == 2 * k + 1:
        return True
    if removed and n == 2 * k:
        return False
    return n % 2 == 0


def _naturals_minus_one(index: int, n: int) -> bool:
    return index == 0 or n != index - 1


def _rows(index: int, n: int) -> bool:
    rows, columns = unpair(index)
    row, column = unpair(n)
    if rows >> row & 1:
        return column == 0 or bool(columns >> column & 1)
    return column != 0


def fin_index(elements) -> int:
    """Index of a finite set in the Fin+N family (0 names N itself)."""
    return bitmask(elements) + 1


def rows_index(rows, columns) -> int:
    return pair(bitmask(rows), bitmask(columns))


def halfspace_family(dimension: int) -> Family:
    return Family(
        f"halfspace-{dimension}d",
        lambda index, point: decode_halfspace(index, dimension).contains(point),
        f"lattice half-spaces of Z^{dimension} by index (a_0 >= sum a_i x_i)",
        dimension,
    )


FAMILIES: Dict[str, Family] = {
    family.name: family
    for family in (
        Family(
            "fin-or-n",
            _fin_or_naturals,
            "N (index 0) and every finite set (index 1 + bitmask)",
        ),
        Family("cofin", _cofinite, "complements of finite sets (index = bitmask)"),
        Family(
            "evens-plus",
            _evens_plus_odd,
            "2N (index 0), 2N + {2k+1} (index 2k+1), 2N + {2k+1} - {2k} (index 2k+2)",
        ),
        Family(
            "n-minus-one",
            _naturals_minus_one,
            "N (index 0) and N - {x} (index x + 1)",
        ),
        Family(
            "rows",
            _rows,
            "S x (D + {0}) + (N - S) x (N - {0}) over paired naturals, "
            "index pair(bitmask S, bitmask D)",
        ),
        halfspace_family(1),
        halfspace_family(2),
        halfspace_family(3),
    )
}


def get_family(name: str) -> Family:
    try:
        return FAMILIES[name]
    except KeyError:
        raise HalfspaceError(
            f"unknown family {name!r}, expected one of {sorted(FAMILIES)}"
        ) from None


def fixtures() -> Dict[str, Family]:
    return dict(FAMILIES)


def evens_plus_index(k: int, removed: bool = False) -> int:
    return 2 * k + 2 if removed else 2 * k + 1

