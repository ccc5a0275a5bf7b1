from fractions import Fraction
from typing import Dict, List, NamedTuple, Optional, Sequence

from django.template.loader import render_to_string
from django.utils.html import escape
from django.utils.safestring import mark_safe

from django_halfspace.core.codec import Degenerate
from django_halfspace.core.fixtures import FamilyLanguage
from django_halfspace.core.harness import Trace
from django_halfspace.core.lattice import HalfSpace
from django_halfspace.core.semantics import PatchedHalfSpace
from django_halfspace.core.validators import FAIL, Verdict

Tag = str

REPORT_TEMPLATE = "django_halfspace/report.html"


def attrs_to_str(attrs: Dict[str, str]) -> str:
    """
    Convert dictionary of attributes into a string that can be injected into a tag.
    """
    return " ".join(f'{key}="{escape(value)}"' for key, value in attrs.items())


def exact(value) -> str:
    """Render an int or Fraction as "p/q" (or "p"), never as a decimal."""
    if value is None:
        return "undefined"
    return str(Fraction(value))


def _points(points) -> str:
    return ", ".join(str(p) for p in sorted(points))


def describe_semantics(semantics) -> str:
    """
    Human-readable form of a hypothesis language.
    """
    if isinstance(semantics, HalfSpace):
        return semantics.describe()
    if isinstance(semantics, PatchedHalfSpace):
        text = describe_semantics(semantics.base)
        if semantics.added:
            text += f" plus {{{_points(semantics.added)}}}"
        if semantics.removed:
            text += f" minus {{{_points(semantics.removed)}}}"
        return text
    if isinstance(semantics, FamilyLanguage):
        return f"{semantics.family}[{semantics.index}]"
    if isinstance(semantics, Degenerate):
        return "every point" if semantics.displacement >= 0 else "no point"
    return repr(semantics)


class TimelineEntry(NamedTuple):
    """Consecutive hypotheses with the same identity."""

    start: int
    end: int
    identity: str
    mode: str
    semantics: str
    lock_distance_sq: Optional[Fraction]


def timeline(trace: Trace) -> List[TimelineEntry]:
    entries: List[TimelineEntry] = []
    for t, hypothesis in enumerate(trace.hypotheses):
        if entries and entries[-1].identity == hypothesis.identity:
            entries[-1] = entries[-1]._replace(end=t)
            continue
        entries.append(
            TimelineEntry(
                t,
                t,
                hypothesis.identity,
                hypothesis.mode,
                describe_semantics(hypothesis.semantics),
                hypothesis.lock_distance_sq,
            )
        )
    return entries


class ReportGenerator:
    @staticmethod
    def verdict_badge(verdict: Verdict) -> Tag:
        """
        Generates a <span> badge for one restriction verdict.

        Arguments:
            verdict {Verdict} -- Result of a validator.

        Returns:
            str -- The badge, classed by pass or fail.
        """

        attrs = {
            "class": "verdict verdict-fail" if verdict.status == FAIL else "verdict",
            "data-restriction": verdict.restriction,
        }
        return mark_safe(
            f"<span {attrs_to_str(attrs)}>{escape(verdict.describe())}</span>"
        )

    @staticmethod
    def render(trace: Trace, verdicts: Sequence[Verdict] = ()) -> str:
        """
        Render the HTML report of a trace and its verdicts.
        """

        return render_to_string(
            REPORT_TEMPLATE,
            {
                "meta": trace.meta,
                "target": describe_semantics(trace.target) if trace.target else "",
                "verdict": trace.verdict,
                "verdicts": list(verdicts),
                "timeline": timeline(trace),
                "steps": len(trace.steps),
            },
        )
