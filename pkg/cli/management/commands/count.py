import logging

from django.core.management.base import BaseCommand

from counting.formulas import count_coloured_quivers, fuss_catalan_tilting
from geometry.angulation import count_rotation_classes
from geometry.polygon import PolygonParams
from verification.harness import bfs_mutation_class, seed_quiver

from ...mixins import MISMATCH, CommandOutputMixin

logger = logging.getLogger(__name__)

METHODS = ('formula', 'geometry', 'bfs', 'all')


class Command(CommandOutputMixin, BaseCommand):
    help = "Count non-isomorphic coloured quivers in the m-mutation class of A_n."

    def add_arguments(self, parser):
        parser.add_argument('-n', '--n', type=int, required=True, help="Rank n of A_n.")
        parser.add_argument('-m', '--m', type=int, required=True)
        parser.add_argument('--method', choices=METHODS, default='formula')
        parser.add_argument('--expect', type=int, help="Exit 2 unless the count equals this value.")

    def by_formula(self, n, m):
        return count_coloured_quivers(n, m)

    def by_geometry(self, n, m):
        self.guard(fuss_catalan_tilting(n, m), 'GEOMETRY_MAX_ANGULATIONS', f"Enumerating P({n + 1},{m})")
        return count_rotation_classes(PolygonParams(n + 1, m))

    def by_bfs(self, n, m):
        self.guard(count_coloured_quivers(n, m), 'BFS_MAX_CLASS_SIZE', f"BFS of A_{n}, m={m}")
        return len(bfs_mutation_class(seed_quiver(n, m)))

    def handle(self, *args, **options):
        n, m, method = options['n'], options['m'], options['method']
        if n < 1 or m < 1:
            self.fail(f"-n and -m must be at least 1, got n={n}, m={m}")

        if method == 'all':
            counts = {name: getattr(self, f'by_{name}')(n, m) for name in METHODS[:-1]}
            for name, value in counts.items():
                self.stdout.write(f"{name}: {value}")
            if len(set(counts.values())) != 1:
                self.fail(f"methods disagree for n={n}, m={m}: {counts}", MISMATCH)
            count = counts['formula']
        else:
            count = getattr(self, f'by_{method}')(n, m)
            self.stdout.write(str(count))

        logger.info(f"count n={n} m={m} method={method}: {count}")
        expected = options.get('expect')
        if expected is not None and expected != count:
            self.fail(f"expected {expected}, got {count}", MISMATCH)
