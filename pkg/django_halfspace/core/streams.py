"""
Informant and text prefixes, deterministic informant generators and the Boolean
mapping between informant and text presentations.

Generators are pure functions of (spec, t). Lattice points are enumerated by
increasing max-norm shell, lexicographically inside a shell; seeded variants draw
from numpy's PCG64 generator keyed by (seed, shell) or (seed, t).
"""

from bisect import bisect_left
from dataclasses import dataclass
from functools import lru_cache
from typing import (
    Any,
    Callable,
    Dict,
    Hashable,
    Iterable,
    List,
    NamedTuple,
    Optional,
    Sequence,
    Set,
    Tuple,
    Union,
)

import numpy as np

from django_halfspace.core.codec import decode_int_vector, encode_int_vector
from django_halfspace.core.exceptions import (
    InconsistentDataError,
    InvalidStreamSpecError,
)
from django_halfspace.core.lattice import HalfSpace, IntVec, box_points

CANONICAL_ORDER_NAME = "maxnorm-shell-lex"
GENERATOR_NAME = "numpy-pcg64"

CANONICAL = "canonical"
PERMUTED = "permuted"
REPEAT_HEAVY = "repeat-heavy"
WITHHOLD = "withhold"
STREAM_KINDS = (CANONICAL, PERMUTED, REPEAT_HEAVY, WITHHOLD)

DEFAULT_REPEATS = 2
DEFAULT_RELEASE = 50

PAUSE = "#"

Point = Hashable


class Datum(NamedTuple):
    """A labeled point; label 1 is positive, 0 negative."""

    point: Point
    label: int


@dataclass(frozen=True)
class InformantPrefix:
    """A finite, consistently labeled informant prefix."""

    items: Tuple[Datum, ...] = ()

    @classmethod
    def of(cls, data: Iterable[Datum]) -> "InformantPrefix":
        items = tuple(Datum(*d) for d in data)
        check_consistent(items)
        return cls(items)

    def __len__(self) -> int:
        return len(self.items)

    def __iter__(self):
        return iter(self.items)


def check_consistent(data: Iterable[Datum]) -> Dict[Point, int]:
    """
    Returns:
        dict -- the label of every point seen.

    Raises:
        InconsistentDataError: if a point occurs with both labels.
    """
    labels: Dict[Point, int] = {}
    for point, label in data:
        if labels.setdefault(point, label) != label:
            raise InconsistentDataError(f"point {point} labeled both ways")
    return labels


def pos(data: Iterable[Datum]) -> Set[Point]:
    return {p for p, label in check_consistent(data).items() if label}


def neg(data: Iterable[Datum]) -> Set[Point]:
    return {p for p, label in check_consistent(data).items() if not label}


def content(data: Iterable[Datum]) -> Set[Datum]:
    return {Datum(p, label) for p, label in check_consistent(data).items()}


def consistent_with(data: Iterable[Datum], language) -> bool:
    """
    Whether every positive point lies in language and every negative one outside.

    Arguments:
        language -- any value with a contains(point) method.
    """
    return all(
        bool(language.contains(p)) == bool(label)
        for p, label in check_consistent(data).items()
    )


@lru_cache(maxsize=256)
def _shell(dimension: int, radius: int) -> Tuple[IntVec, ...]:
    """Points of max-norm exactly radius, lexicographically sorted."""
    return tuple(
        p for p in box_points(dimension, radius) if max(map(abs, p)) == radius
    )


def _shell_start(dimension: int, radius: int) -> int:
    return 0 if radius == 0 else (2 * radius - 1) ** dimension


def _locate(dimension: int, t: int) -> Tuple[int, int]:
    """Shell radius and position inside the shell of the t-th canonical point."""
    radius = 0
    while (2 * radius + 1) ** dimension <= t:
        radius += 1
    return radius, t - _shell_start(dimension, radius)


def canonical_point(dimension: int, t: int) -> IntVec:
    radius, position = _locate(dimension, t)
    return _shell(dimension, radius)[position]


def canonical_position(point: IntVec) -> int:
    """Inverse of canonical_point."""
    dimension = len(point)
    radius = max(map(abs, point))
    return _shell_start(dimension, radius) + bisect_left(
        _shell(dimension, radius), tuple(point)
    )


def canonical_informant(target: HalfSpace, t: int) -> Datum:
    point = canonical_point(target.dimension, t)
    return Datum(point, int(target.contains(point)))


@lru_cache(maxsize=256)
def _shell_permutation(dimension: int, seed: int, radius: int) -> Tuple[int, ...]:
    generator = np.random.Generator(np.random.PCG64([seed, radius]))
    size = len(_shell(dimension, radius))
    return tuple(int(i) for i in generator.permutation(size))


class StreamSpec(NamedTuple):
    """
    A reproducible informant for target.

    params by kind:
        repeat-heavy -- "repeats": old data replayed after each fresh datum.
        withhold -- "point": the delayed lattice point, "release": the time it
            first appears.
    """

    target: HalfSpace
    kind: str = CANONICAL
    seed: int = 0
    params: Optional[Dict[str, Any]] = None

    def param(self, name: str, default=None):
        return (self.params or {}).get(name, default)

    def validate(self) -> "StreamSpec":
        """
        Raises:
            InvalidStreamSpecError: if the stream cannot be a legal informant.
        """
        if self.kind not in STREAM_KINDS:
            raise InvalidStreamSpecError(
                f"unknown stream kind {self.kind!r}, expected one of {STREAM_KINDS}"
            )
        if not 0 <= self.seed < 2**64:
            raise InvalidStreamSpecError(f"seed {self.seed} is not a 64-bit integer")
        if self.kind == REPEAT_HEAVY:
            repeats = self.param("repeats", DEFAULT_REPEATS)
            if not isinstance(repeats, int) or repeats < 0:
                raise InvalidStreamSpecError(f"repeats must be >= 0, got {repeats!r}")
        if self.kind == WITHHOLD:
            point = self.param("point")
            release = self.param("release", DEFAULT_RELEASE)
            if point is None or len(point) != self.target.dimension:
                raise InvalidStreamSpecError(
                    f"withhold needs a point of dimension {self.target.dimension}"
                )
            if not isinstance(release, int) or release < 0:
                raise InvalidStreamSpecError(f"release must be >= 0, got {release!r}")
        return self

    def to_json(self) -> Dict[str, Any]:
        params = dict(self.params or {})
        if "point" in params:
            params["point"] = list(params["point"])
        return {
            "target": {
                "normal": list(self.target.normal),
                "offset": self.target.floor_offset,
            },
            "kind": self.kind,
            "seed": self.seed,
            "params": params,
        }

    @classmethod
    def from_json(cls, data: Dict[str, Any]) -> "StreamSpec":
        try:
            target = HalfSpace(
                tuple(int(a) for a in data["target"]["normal"]),
                int(data["target"]["offset"]),
            )
            params = dict(data.get("params") or {})
            if "point" in params:
                params["point"] = tuple(int(x) for x in params["point"])
            spec = cls(
                target, data.get("kind", CANONICAL), int(data.get("seed", 0)), params
            )
        except (KeyError, TypeError, ValueError) as error:
            raise InvalidStreamSpecError(
                f"bad stream spec {data!r}: {error}"
            ) from error
        return spec.validate()


def _permuted_point(spec: StreamSpec, t: int) -> IntVec:
    dimension = spec.target.dimension
    radius, position = _locate(dimension, t)
    order = _shell_permutation(dimension, spec.seed, radius)
    return _shell(dimension, radius)[order[position]]


def _repeat_heavy_point(spec: StreamSpec, t: int) -> IntVec:
    dimension = spec.target.dimension
    fresh, replay = divmod(t, spec.param("repeats", DEFAULT_REPEATS) + 1)
    if replay == 0:
        return canonical_point(dimension, fresh)
    generator = np.random.Generator(np.random.PCG64([spec.seed, t]))
    return canonical_point(dimension, int(generator.integers(0, fresh + 1)))


def _withhold_point(spec: StreamSpec, t: int) -> IntVec:
    dimension = spec.target.dimension
    withheld = tuple(spec.param("point"))
    release = spec.param("release", DEFAULT_RELEASE)
    if t == release:
        return withheld
    index = t if t < release else t - 1
    if index >= canonical_position(withheld):
        index += 1
    return canonical_point(dimension, index)


_POINT_GENERATORS: Dict[str, Callable[[StreamSpec, int], IntVec]] = {
    CANONICAL: lambda spec, t: canonical_point(spec.target.dimension, t),
    PERMUTED: _permuted_point,
    REPEAT_HEAVY: _repeat_heavy_point,
    WITHHOLD: _withhold_point,
}


def generate(spec: StreamSpec, t: int) -> Datum:
    """
    The t-th datum of the informant described by spec.

    Raises:
        InvalidStreamSpecError: if spec is not valid.
    """
    spec.validate()
    point = _POINT_GENERATORS[spec.kind](spec, t)
    return Datum(point, int(spec.target.contains(point)))


def stream_prefix(spec: StreamSpec, length: int) -> List[Datum]:
    spec.validate()
    generator = _POINT_GENERATORS[spec.kind]
    points = (generator(spec, t) for t in range(length))
    return [Datum(p, int(spec.target.contains(p))) for p in points]


def natural_informant(member: Callable[[int], bool], t: int) -> Datum:
    """Canonical informant over the naturals: t labeled by membership."""
    return Datum(t, int(member(t)))


def text_from_informant(data: Iterable[Datum]) -> List[Union[Point, str]]:
    return [point if label else PAUSE for point, label in data]


def text_content(text: Iterable[Union[Point, str]]) -> Set[Point]:
    return {item for item in text if item != PAUSE}


def code_datum(datum: Datum) -> Tuple[int, int]:
    """(natural code of the point, label), the input of the encoded 2D learner."""
    return encode_int_vector(datum.point), datum.label


def decode_datum(coded: Sequence[int], dimension: int = 2) -> Datum:
    code, label = coded
    return Datum(decode_int_vector(code, dimension), int(label))


def bool_map_member(member: Callable[[int], bool], n: int) -> bool:
    """2n is in f(L) iff n is in L; 2n+1 is in f(L) iff n is not."""
    half, odd = divmod(n, 2)
    return member(half) != bool(odd)


def bool_map_informant(data: Sequence[Datum]) -> List[Datum]:
    """
    Interleave the positive and negative halves of the mapped informant: each
    input datum (n, label) yields (2n + 1 - label, 1) then (2n + label, 0).
    """
    check_consistent(data)
    mapped = []
    for n, label in data:
        mapped.append(Datum(2 * n + 1 - label, 1))
        mapped.append(Datum(2 * n + label, 0))
    return mapped


def bool_map_text(data: Sequence[Datum]) -> List[int]:
    check_consistent(data)
    return [2 * n + 1 - label for n, label in data]


def decode_bool_map_text(text: Iterable[int]) -> List[Datum]:
    """Parity decoding: an element m came from (m // 2, 1 - m % 2)."""
    return [Datum(m // 2, 1 - m % 2) for m in text]
