from django.core.management.base import BaseCommand

from counting.formulas import fuss_catalan_tilting
from geometry.angulation import enumerate_angulations, minimal_rotation, rotation_class_key
from geometry.polygon import PolygonParams
from geometry.serializers import AngulationDocumentSerializer

from ...mixins import CommandOutputMixin


class Command(CommandOutputMixin, BaseCommand):
    help = "List the (m+2)-angulations of P(n+1, m) as JSON lines."

    def add_arguments(self, parser):
        parser.add_argument('-n', '--n', type=int, required=True, help="Rank n; the polygon is P(n+1, m).")
        parser.add_argument('-m', '--m', type=int, required=True)
        parser.add_argument(
            '--classes',
            action='store_true',
            help="One representative (the smallest rotation) per rotation class.",
        )
        parser.add_argument('--output')

    def handle(self, *args, **options):
        n, m = options['n'], options['m']
        if n < 1 or m < 1:
            self.fail(f"-n and -m must be at least 1, got n={n}, m={m}")
        self.guard(fuss_catalan_tilting(n, m), 'GEOMETRY_MAX_ANGULATIONS', f"Enumerating P({n + 1},{m})")

        angulations = enumerate_angulations(PolygonParams(n + 1, m))
        if options['classes']:
            seen = {}
            for a in angulations:
                seen.setdefault(rotation_class_key(a), minimal_rotation(a))
            angulations = [seen[key] for key in sorted(seen)]

        lines = [
            self.render_json_line(AngulationDocumentSerializer(a).data)
            for a in angulations
        ]
        self.emit('\n'.join(lines), options.get('output'))
