from django_halfspace.core.streams import bool_map_informant, bool_map_text
from django_halfspace.core.trace_io import read_stream, write_stream

from ._base import HalfspaceCommand


class Command(HalfspaceCommand):
    help = (
        "Apply the Boolean mapping to a natural-number informant stream file "
        "(JSONL of [n, label])."
    )

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument("input", help="Stream file path or http(s) URL.")
        parser.add_argument("output")
        parser.add_argument(
            "--text",
            action="store_true",
            help="Write the projected text (one natural per line) instead.",
        )

    def handle_profile(self, profile, **options):
        data = read_stream(options["input"], profile.config.remote_timeout)
        if options["text"]:
            mapped = bool_map_text(data)
        else:
            mapped = bool_map_informant(data)
        write_stream(mapped, options["output"])
        self.stdout.write(f"{len(data)} data -> {len(mapped)} items")
