"""
Hypothesis semantics: the languages a hypothesis denotes, their JSON form and the
adapters that let validators compare them.
"""

from typing import (
    Any,
    Callable,
    Dict,
    FrozenSet,
    Hashable,
    Iterable,
    NamedTuple,
    Optional,
    Tuple,
    Union,
)

from django_halfspace.core.codec import Degenerate
from django_halfspace.core.exceptions import (
    AdapterInsufficientError,
    TraceFormatError,
)
from django_halfspace.core.fixtures import FamilyLanguage
from django_halfspace.core.lattice import HalfSpace, box_points


class PatchedHalfSpace(NamedTuple):
    """(base + added) - removed for finite point sets added and removed."""

    base: Any
    added: FrozenSet[Hashable] = frozenset()
    removed: FrozenSet[Hashable] = frozenset()

    def contains(self, point) -> bool:
        point = tuple(point) if isinstance(point, list) else point
        if point in self.removed:
            return False
        return point in self.added or self.base.contains(point)


Semantics = Union[HalfSpace, PatchedHalfSpace, FamilyLanguage, Degenerate]


def point_to_json(point):
    return list(point) if isinstance(point, tuple) else point


def point_from_json(value):
    return tuple(int(x) for x in value) if isinstance(value, list) else int(value)


def _sorted_points(points: Iterable) -> list:
    return [point_to_json(p) for p in sorted(points)]


def semantics_to_json(semantics: Semantics) -> Dict[str, Any]:
    if isinstance(semantics, HalfSpace):
        return {
            "type": "halfspace",
            "normal": list(semantics.normal),
            "offset": semantics.floor_offset,
        }
    if isinstance(semantics, PatchedHalfSpace):
        return {
            "type": "patched",
            "base": semantics_to_json(semantics.base),
            "added": _sorted_points(semantics.added),
            "removed": _sorted_points(semantics.removed),
        }
    if isinstance(semantics, FamilyLanguage):
        return {"type": "family", "family": semantics.family, "index": semantics.index}
    if isinstance(semantics, Degenerate):
        return {"type": "degenerate", "displacement": semantics.displacement}
    raise TraceFormatError(f"cannot serialize semantics {semantics!r}")


def semantics_from_json(data: Dict[str, Any]) -> Semantics:
    try:
        kind = data["type"]
        if kind == "halfspace":
            return HalfSpace(tuple(int(a) for a in data["normal"]), int(data["offset"]))
        if kind == "patched":
            return PatchedHalfSpace(
                semantics_from_json(data["base"]),
                frozenset(point_from_json(p) for p in data["added"]),
                frozenset(point_from_json(p) for p in data["removed"]),
            )
        if kind == "family":
            return FamilyLanguage(str(data["family"]), int(data["index"]))
        if kind == "degenerate":
            return Degenerate(int(data["displacement"]))
    except (KeyError, TypeError, ValueError) as error:
        raise TraceFormatError(f"bad semantics {data!r}: {error}") from error
    raise TraceFormatError(f"unknown semantics type {data.get('type')!r}")


class SemanticsAdapter(NamedTuple):
    """
    Deciders for the languages a trace refers to.

    Without exact equal/subset deciders the validators fall back to comparing
    membership over universe(radius) and report bounded verdicts.
    """

    member: Callable[[Any, Hashable], bool]
    equal: Optional[Callable[[Any, Any], bool]] = None
    subset: Optional[Callable[[Any, Any], bool]] = None
    radius: Optional[int] = None
    universe: Optional[Callable[[int], Iterable[Hashable]]] = None

    @property
    def exact(self) -> bool:
        return self.equal is not None and self.subset is not None

    def with_radius(self, radius: Optional[int]) -> "SemanticsAdapter":
        return self._replace(radius=radius)

    def bounded_points(self) -> Tuple[Hashable, ...]:
        if self.radius is None or self.universe is None:
            raise AdapterInsufficientError(
                "adapter insufficient: no exact decider and no radius given"
            )
        return tuple(self.universe(self.radius))

    def is_equal(self, first, second) -> bool:
        if self.equal is not None:
            return self.equal(first, second)
        return all(
            self.member(first, p) == self.member(second, p)
            for p in self.bounded_points()
        )

    def is_subset(self, first, second) -> bool:
        if self.subset is not None:
            return self.subset(first, second)
        return all(
            not self.member(first, p) or self.member(second, p)
            for p in self.bounded_points()
        )


def _member(semantics, point) -> bool:
    return bool(semantics.contains(point))


class _Finite(NamedTuple):
    """Everything or nothing."""

    everything: bool


class _Patch(NamedTuple):
    """base symmetric-difference the finite patch, with the patch made effective."""

    base: HalfSpace
    added: FrozenSet[Hashable]
    removed: FrozenSet[Hashable]


def _parts(semantics) -> Union[_Finite, _Patch]:
    if isinstance(semantics, Degenerate):
        return _Finite(semantics.displacement >= 0)
    if isinstance(semantics, HalfSpace):
        return _Patch(semantics, frozenset(), frozenset())
    if isinstance(semantics, PatchedHalfSpace) and isinstance(
        semantics.base, HalfSpace
    ):
        base = semantics.base
        removed = frozenset(p for p in semantics.removed if base.contains(p))
        added = frozenset(
            p
            for p in semantics.added
            if not base.contains(p) and p not in semantics.removed
        )
        return _Patch(base, added, removed)
    raise AdapterInsufficientError(
        f"no exact decider for {type(semantics).__name__} semantics"
    )


def _line_window(first: _Patch, second: _Patch) -> range:
    """A window of Z outside of which two same-direction rays agree."""
    marks = [-first.base.floor_offset * first.base.normal[0]]
    marks.append(-second.base.floor_offset * second.base.normal[0])
    for patch in (first, second):
        marks.extend(p[0] for p in patch.added | patch.removed)
    return range(min(marks) - 1, max(marks) + 2)


def _patch_subset(first: _Patch, second: _Patch) -> bool:
    a, b = first.base, second.base
    if a.normal != b.normal:
        return False
    if a.dimension == 1:
        return all(
            not _patched_member(first, (x,)) or _patched_member(second, (x,))
            for x in _line_window(first, second)
        )
    if a.floor_offset > b.floor_offset:
        return False
    candidates = second.removed | first.added
    return all(
        not _patched_member(first, p) or _patched_member(second, p)
        for p in candidates
    )


def _patched_member(patch: _Patch, point) -> bool:
    if point in patch.removed:
        return False
    return point in patch.added or patch.base.contains(point)


def halfspace_subset(first, second) -> bool:
    """
    Exact inclusion between half-spaces, finitely patched half-spaces and the two
    degenerate languages.
    """
    x, y = _parts(first), _parts(second)
    if isinstance(x, _Finite) and not x.everything:
        return True
    if isinstance(y, _Finite):
        return y.everything
    if isinstance(x, _Finite):
        # every lattice point, while a patched half-space misses infinitely many
        return False
    return _patch_subset(x, y)


def halfspace_equal(first, second) -> bool:
    return halfspace_subset(first, second) and halfspace_subset(second, first)


def halfspace_adapter(
    dimension: int, radius: Optional[int] = None, exact: bool = True
) -> SemanticsAdapter:
    return SemanticsAdapter(
        member=_member,
        equal=halfspace_equal if exact else None,
        subset=halfspace_subset if exact else None,
        radius=radius,
        universe=lambda r: box_points(dimension, r),
    )


def family_adapter(radius: Optional[int] = None) -> SemanticsAdapter:
    """Membership-only adapter for families over the naturals."""
    return SemanticsAdapter(
        member=_member, radius=radius, universe=lambda r: range(r + 1)
    )


def adapter_for(meta: Dict[str, Any], radius: Optional[int] = None) -> SemanticsAdapter:
    """The adapter matching a trace header."""
    if meta.get("family") and not str(meta["family"]).startswith("halfspace-"):
        return family_adapter(radius)
    return halfspace_adapter(int(meta.get("dimension", 2)), radius)
