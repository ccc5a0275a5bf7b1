from django_halfspace.core.exceptions import HalfspaceConfigError
from django_halfspace.core.lattice import (
    lock_count_bound,
    min_j_distance,
    min_parallel_distance_sq,
    reduce_hyperplane,
    tangents,
)
from django_halfspace.core.report_generator import exact
from django_halfspace.core.trace_io import parse_rational

from ._base import HalfspaceCommand

OPERATIONS = ("reduce", "tangent", "mindist", "jdist", "lockbound")


class Command(HalfspaceCommand):
    help = (
        "Lattice geometry utilities. reduce, tangent and jdist take r_1 .. r_d r_0 of "
        "sum(r_i * x_i) + r_0 = 0; mindist and lockbound take a normal a_1 .. a_d."
    )

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument("operation", choices=OPERATIONS)
        parser.add_argument("values", nargs="+", metavar="P/Q")
        parser.add_argument(
            "--axis", type=int, default=1, help="1-based coordinate for jdist."
        )

    def _hyperplane(self, values):
        if len(values) < 2:
            raise HalfspaceConfigError("expected slopes followed by a displacement")
        return reduce_hyperplane(values[:-1], values[-1])

    @staticmethod
    def _normal(values):
        if any(v.denominator != 1 for v in values):
            raise HalfspaceConfigError("a normal needs integer coordinates")
        return tuple(int(v) for v in values)

    def handle_profile(self, profile, **options):
        values = [parse_rational(v, options["operation"]) for v in options["values"]]
        operation = options["operation"]

        if operation == "reduce":
            plane = self._hyperplane(values)
            normal = " ".join(str(a) for a in plane.normal)
            self.stdout.write(f"{normal} | {exact(plane.offset)}")
        elif operation == "tangent":
            pair = tangents(self._hyperplane(values))
            self.stdout.write(f"plus: {pair.plus.describe()}")
            self.stdout.write(f"minus: {pair.minus.describe()}")
        elif operation == "mindist":
            distance = min_parallel_distance_sq(self._normal(values))
            self.stdout.write(f"{exact(distance)} (squared)")
        elif operation == "jdist":
            distance = min_j_distance(self._hyperplane(values), options["axis"])
            self.stdout.write(exact(distance))
        else:
            self.stdout.write(str(lock_count_bound(self._normal(values))))
