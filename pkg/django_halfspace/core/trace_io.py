"""
JSONL trace and stream files.

A trace file holds a header line {"meta", "initial"}, one line per step and a
trailer line {"verdict"}. Lines are written with sorted keys and no spaces so that
identical runs give identical bytes. Rationals are written as "p/q" strings.
"""

import io
import json
import logging
import re
from fractions import Fraction
from pathlib import Path
from typing import IO, Any, Dict, Iterable, List, Optional, Sequence, Union

import requests

from django_halfspace.core.exceptions import TraceFormatError
from django_halfspace.core.harness import RunVerdict, Step, Trace
from django_halfspace.core.learners import LOCKED, Hypothesis
from django_halfspace.core.semantics import (
    point_from_json,
    point_to_json,
    semantics_from_json,
    semantics_to_json,
)
from django_halfspace.core.streams import Datum

logger = logging.getLogger(__name__)

RATIONAL = re.compile(r"^-?\d+(/\d+)?$")

PathLike = Union[str, Path]


def parse_rational(text: str, field: str = "value") -> Fraction:
    """
    Parse an exact "p/q" or integer string; decimals are rejected.

    Raises:
        TraceFormatError: naming field when text is not an exact rational.
    """
    text = str(text).strip()
    if not RATIONAL.match(text):
        raise TraceFormatError(f"{field}: {text!r} is not an exact rational p/q")
    try:
        return Fraction(text)
    except ZeroDivisionError as error:
        raise TraceFormatError(f"{field}: zero denominator in {text!r}") from error


def format_rational(value: Optional[Fraction]) -> Optional[str]:
    return None if value is None else str(Fraction(value))


def _dumps(value: Any) -> str:
    return json.dumps(value, sort_keys=True, separators=(",", ":"))


def _hypothesis_fields(hypothesis: Hypothesis) -> Dict[str, Any]:
    return {
        "hypothesis": hypothesis.identity,
        "semantics": semantics_to_json(hypothesis.semantics),
        "mode": hypothesis.mode,
        "lock_distance_sq": format_rational(hypothesis.lock_distance_sq),
    }


def trace_lines(trace: Trace) -> List[str]:
    lines = [_dumps({"meta": trace.meta, "initial": _hypothesis_fields(trace.initial)})]
    for step in trace.steps:
        lines.append(
            _dumps(
                {
                    "t": step.t,
                    "point": point_to_json(step.datum.point),
                    "label": int(step.datum.label),
                    **_hypothesis_fields(step.hypothesis),
                }
            )
        )
    lines.append(_dumps({"verdict": trace.verdict._asdict()}))
    return lines


def write_trace(trace: Trace, path: PathLike) -> None:
    Path(path).write_text("\n".join(trace_lines(trace)) + "\n", encoding="utf-8")


def open_source(path: PathLike, timeout: float = 10.0) -> IO[str]:
    """Open a local file, or fetch it over HTTP(S) when no such file exists."""
    try:
        return open(path, "r", encoding="utf-8")
    except OSError:
        if not str(path).startswith(("http://", "https://")):
            raise
        logger.debug("no local file %s, fetching it", path)

    response = requests.get(str(path), timeout=timeout)
    response.raise_for_status()
    return io.StringIO(response.text)


def _read_lines(path: PathLike, timeout: float) -> List[Dict[str, Any]]:
    try:
        with open_source(path, timeout) as source:
            return [json.loads(line) for line in source if line.strip()]
    except (OSError, requests.RequestException, ValueError) as error:
        raise TraceFormatError(f"cannot read {path}: {error}") from error


def _hypothesis_from(record: Dict[str, Any], where: str) -> Hypothesis:
    try:
        mode = str(record["mode"])
        distance = record.get("lock_distance_sq")
    except (KeyError, TypeError) as error:
        raise TraceFormatError(f"{where}: missing field {error}") from error
    if (distance is None) == (mode == LOCKED):
        raise TraceFormatError(
            f"{where}: lock_distance_sq must be present exactly in mode {LOCKED}"
        )
    return Hypothesis(
        str(record["hypothesis"]),
        semantics_from_json(record["semantics"]),
        mode,
        None if distance is None else parse_rational(distance, f"{where} distance"),
    )


def parse_trace(records: Sequence[Dict[str, Any]]) -> Trace:
    """
    Raises:
        TraceFormatError: for a missing header, misordered steps or bad fields.
    """
    if not records or "meta" not in records[0]:
        raise TraceFormatError("trace has no header line")
    header = records[0]
    initial = _hypothesis_from(header.get("initial") or {}, "header")

    body = list(records[1:])
    verdict = RunVerdict("NOT_CONVERGED")
    if body and "verdict" in body[-1]:
        try:
            verdict = RunVerdict(**body.pop()["verdict"])
        except TypeError as error:
            raise TraceFormatError(f"bad verdict line: {error}") from error

    steps = []
    for expected, record in enumerate(body):
        where = f"step {expected}"
        if record.get("t") != expected:
            raise TraceFormatError(
                f"{where}: expected t={expected}, got {record.get('t')}"
            )
        try:
            datum = Datum(point_from_json(record["point"]), int(record["label"]))
        except (KeyError, TypeError, ValueError) as error:
            raise TraceFormatError(f"{where}: bad datum: {error}") from error
        if datum.label not in (0, 1):
            raise TraceFormatError(f"{where}: label {datum.label} is not a bit")
        steps.append(Step(expected, datum, _hypothesis_from(record, where)))

    return Trace(dict(header["meta"]), initial, tuple(steps), verdict)


def read_trace(path: PathLike, timeout: float = 10.0) -> Trace:
    return parse_trace(_read_lines(path, timeout))


def read_stream(path: PathLike, timeout: float = 10.0) -> List[Datum]:
    """
    A stream file holds one [n, label] pair per line (a natural-number informant).
    """
    data = []
    for number, record in enumerate(_read_lines(path, timeout)):
        try:
            n, label = record
            n, label = int(n), int(label)
        except (TypeError, ValueError) as error:
            raise TraceFormatError(f"{path} line {number + 1}: {error}") from error
        if n < 0 or label not in (0, 1):
            raise TraceFormatError(
                f"{path} line {number + 1}: expected [natural, 0|1], got {record}"
            )
        data.append(Datum(n, label))
    return data


def stream_lines(items: Iterable) -> List[str]:
    return [_dumps(list(item) if isinstance(item, tuple) else item) for item in items]


def write_stream(items: Iterable, path: PathLike) -> None:
    lines = stream_lines(items)
    Path(path).write_text("".join(line + "\n" for line in lines), encoding="utf-8")
