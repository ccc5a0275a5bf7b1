from pathlib import Path

from django_halfspace.core.bench import cells, sweep, write_csv
from django_halfspace.core.exceptions import BoundsExceededError
from django_halfspace.core.streams import PERMUTED, STREAM_KINDS

from ._base import HalfspaceCommand

MAX_COEFFICIENT_BOUND = 10


class Command(HalfspaceCommand):
    help = (
        "Sweep every primitive target in a coefficient box over seeded informants "
        "and write one CSV row per (target, seed)."
    )

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument("--dimension", type=int)
        parser.add_argument("--coefficient-bound", type=int, default=2)
        parser.add_argument(
            "--offsets", nargs=2, type=int, default=(-1, 1), metavar=("LOW", "HIGH")
        )
        parser.add_argument(
            "--seeds", type=int, default=1, help="Run seeds 0 .. N-1 per target."
        )
        parser.add_argument("--stream", choices=STREAM_KINDS, default=PERMUTED)
        parser.add_argument("--learner", default="general")
        parser.add_argument("--max-steps", type=int)
        parser.add_argument("--window", type=int)
        parser.add_argument("--jobs", type=int)
        parser.add_argument("--out", default="-", help="CSV path, - for stdout.")

    def handle_profile(self, profile, **options):
        dimension = self.option(options, "dimension", profile)
        bound = options["coefficient_bound"]
        if not 1 <= bound <= MAX_COEFFICIENT_BOUND:
            raise BoundsExceededError(
                f"--coefficient-bound {bound} outside 1..{MAX_COEFFICIENT_BOUND}"
            )
        low, high = options["offsets"]

        bench_cells = cells(
            dimension,
            bound,
            range(low, high + 1),
            range(max(options["seeds"], 0)),
            learner=options["learner"],
            kind=options["stream"],
            max_steps=self.option(options, "max_steps", profile),
            window=self.option(options, "window", profile, "convergence_window"),
        )
        rows = sweep(bench_cells, self.option(options, "jobs", profile, "bench_jobs"))

        if options["out"] == "-":
            write_csv(rows, self.stdout)
        else:
            with open(Path(options["out"]), "w", newline="", encoding="utf-8") as out:
                write_csv(rows, out)
        failed = sum(1 for row in rows if row.status.startswith("ERROR"))
        if failed:
            self.stderr.write(f"{failed} of {len(rows)} rows failed")
