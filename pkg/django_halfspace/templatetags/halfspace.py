from typing import Union

from django import template
from django.utils.safestring import mark_safe

from django_halfspace.core.harness import Trace
from django_halfspace.core.report_generator import (
    ReportGenerator,
    describe_semantics,
    exact as exact_text,
)
from django_halfspace.core.semantics import adapter_for
from django_halfspace.core.settings_loader import (
    DEFAULT_PROFILE,
    HalfspaceSettingsLoader,
)
from django_halfspace.core.trace_io import read_trace
from django_halfspace.core.validators import Verdict, validate_all

register = template.Library()


@register.filter
def exact(value) -> str:
    """
    Renders a number as an exact "p/q" string, "undefined" for None.
    """

    return exact_text(value)


@register.filter
def inequality(semantics) -> str:
    """
    Renders a hypothesis language, e.g. "+0*x1 +1*x2 +0 >= 0".
    """

    return describe_semantics(semantics)


@register.filter
def verdict_badge(verdict: Verdict) -> str:
    return ReportGenerator.verdict_badge(verdict)


@register.simple_tag
@mark_safe
def trace_report(
    trace: Union[Trace, str],
    restrictions: str = "",
    profile: str = DEFAULT_PROFILE,
) -> str:
    """
    Generates the HTML report of a trace: run verdict, restriction verdicts and
    the hypothesis timeline.

    Arguments:
        trace {Trace|str} -- A trace, or the path or URL of a trace file.
        restrictions {str} -- Comma separated restriction ids to validate.
        profile {str} -- HALFSPACE profile to read validator options from.

    Returns:
        str -- The rendered report.

    Raises:
        HalfspaceConfigNotFoundError: If profile is not a HALFSPACE profile.
        TraceFormatError: If the trace file cannot be parsed.
    """

    config = HalfspaceSettingsLoader.instance().profile(profile).config
    if isinstance(trace, str):
        trace = read_trace(trace, config.remote_timeout)

    ids = [r.strip() for r in restrictions.split(",") if r.strip()]
    verdicts = []
    if ids:
        adapter = adapter_for(trace.meta, config.validator_radius)
        verdicts = validate_all(trace, ids, adapter, config.validator_step_cap)
    return ReportGenerator.render(trace, verdicts)
