from pathlib import Path

from django.core.management.base import CommandError

from django_halfspace.core.report_generator import ReportGenerator
from django_halfspace.core.semantics import adapter_for
from django_halfspace.core.trace_io import read_trace
from django_halfspace.core.validators import RESTRICTIONS, validate_all

from ._base import HalfspaceCommand

EXACT = "exact"
MEMBERSHIP = "membership"


class Command(HalfspaceCommand):
    help = "Check learning restrictions on a trace, one verdict line per restriction."

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument("trace", help="Trace file path or http(s) URL.")
        parser.add_argument(
            "--restrictions",
            default="conv,snu",
            help=f"Comma separated, from {', '.join(RESTRICTIONS)}.",
        )
        parser.add_argument(
            "--radius", type=int, help="Box radius for bounded semantic checks."
        )
        parser.add_argument(
            "--adapter",
            choices=(EXACT, MEMBERSHIP),
            default=EXACT,
            help="membership drops the exact equality and inclusion deciders.",
        )
        parser.add_argument("--step-cap", type=int)
        parser.add_argument("--html", help="Also write an HTML report here.")

    def handle_profile(self, profile, **options):
        config = profile.config
        radius = self.option(options, "radius", profile, "validator_radius")
        step_cap = self.option(options, "step_cap", profile, "validator_step_cap")

        trace = read_trace(options["trace"], config.remote_timeout)
        adapter = adapter_for(trace.meta, radius)
        if options["adapter"] == MEMBERSHIP:
            adapter = adapter._replace(equal=None, subset=None)

        restrictions = [
            r.strip().lower() for r in options["restrictions"].split(",") if r.strip()
        ]
        verdicts = validate_all(trace, restrictions, adapter, step_cap)
        for verdict in verdicts:
            self.stdout.write(f"{verdict.restriction} {verdict.describe()}")

        if options["html"]:
            Path(options["html"]).write_text(
                ReportGenerator.render(trace, verdicts), encoding="utf-8"
            )

        failed = [v.restriction for v in verdicts if not v.ok]
        if failed:
            raise CommandError(f"restrictions violated: {', '.join(failed)}")
