from django.core.management.base import CommandError

from django_halfspace.core.exceptions import HalfspaceConfigError
from django_halfspace.core.fixtures import get_family
from django_halfspace.core.harness import (
    CONVERGED,
    LEARNER_IDS,
    build_learner,
    run,
    run_family,
)
from django_halfspace.core.lattice import HalfSpace
from django_halfspace.core.streams import (
    CANONICAL,
    REPEAT_HEAVY,
    STREAM_KINDS,
    WITHHOLD,
    StreamSpec,
)
from django_halfspace.core.trace_io import parse_rational, write_trace

from ._base import NOT_CONVERGED_RETURNCODE, HalfspaceCommand


class Command(HalfspaceCommand):
    help = (
        "Run a learner on a generated informant, write the trace and print the "
        "convergence verdict."
    )

    def add_arguments(self, parser):
        super().add_arguments(parser)
        target = parser.add_argument_group("target")
        target.add_argument(
            "--slopes",
            nargs="+",
            metavar="P/Q",
            help="Target slopes r_1 .. r_d of sum(r_i * x_i) + r_0 >= 0.",
        )
        target.add_argument(
            "--offset", default="0", metavar="P/Q", help="Target displacement r_0."
        )
        target.add_argument("--dimension", type=int)
        target.add_argument("--family", help="Run on a fixture family instead.")
        target.add_argument("--index", type=int, default=0)

        stream = parser.add_argument_group("stream")
        stream.add_argument("--stream", choices=STREAM_KINDS, default=CANONICAL)
        stream.add_argument("--seed", type=int, default=0)
        stream.add_argument("--repeats", type=int)
        stream.add_argument("--withhold", nargs="+", type=int, metavar="X")
        stream.add_argument("--release", type=int)

        parser.add_argument(
            "--learner",
            default="general",
            help=f"One of {', '.join(LEARNER_IDS)}.",
        )
        parser.add_argument("--max-steps", type=int)
        parser.add_argument("--window", type=int)
        parser.add_argument("--output", help="Trace file (JSONL).")

    def _target(self, options, dimension):
        if not options["slopes"]:
            raise HalfspaceConfigError("--slopes: a target needs at least one slope")
        slopes = [parse_rational(s, "--slopes") for s in options["slopes"]]
        if dimension is not None and len(slopes) != dimension:
            raise HalfspaceConfigError(
                f"--slopes: {len(slopes)} slopes given for dimension {dimension}"
            )
        return HalfSpace.from_rational(
            slopes, parse_rational(options["offset"], "--offset")
        )

    def _params(self, options):
        params = {}
        if options["stream"] == REPEAT_HEAVY and options["repeats"] is not None:
            params["repeats"] = options["repeats"]
        if options["stream"] == WITHHOLD:
            params["point"] = tuple(options["withhold"] or ())
            if options["release"] is not None:
                params["release"] = options["release"]
        return params

    def handle_profile(self, profile, **options):
        max_steps = self.option(options, "max_steps", profile)
        window = self.option(options, "window", profile, "convergence_window")
        budget = profile.config.enumeration_budget

        if options["family"]:
            family = get_family(options["family"])
            learner = build_learner(
                options["learner"], max(family.dimension, 1), family, budget
            )
            trace = run_family(learner, family, options["index"], max_steps, window)
            default_name = f"{family.name}-{options['index']}.jsonl"
        else:
            target = self._target(options, options["dimension"])
            learner = build_learner(options["learner"], target.dimension, None, budget)
            spec = StreamSpec(
                target, options["stream"], options["seed"], self._params(options)
            )
            trace = run(learner, spec, max_steps, window)
            default_name = f"{options['stream']}-{options['seed']}.jsonl"

        write_trace(trace, options["output"] or profile.trace_path(default_name))
        self.stdout.write(trace.verdict.summary())
        if trace.verdict.status != CONVERGED:
            raise CommandError(
                f"{learner.name} did not converge within {max_steps} steps",
                returncode=NOT_CONVERGED_RETURNCODE,
            )
