from django.core.management.base import BaseCommand

from counting.formulas import fuss_catalan_tilting

from ...mixins import MISMATCH, CommandOutputMixin


class Command(CommandOutputMixin, BaseCommand):
    help = "Number of m-cluster tilting objects of A_n (labelled (m+2)-angulations of P(n+1, m))."

    def add_arguments(self, parser):
        parser.add_argument('-n', '--n', type=int, required=True)
        parser.add_argument('-m', '--m', type=int, required=True)
        parser.add_argument('--expect', type=int)

    def handle(self, *args, **options):
        n, m = options['n'], options['m']
        if n < 1 or m < 1:
            self.fail(f"-n and -m must be at least 1, got n={n}, m={m}")
        count = fuss_catalan_tilting(n, m)
        self.stdout.write(str(count))
        if options.get('expect') is not None and options['expect'] != count:
            self.fail(f"expected {options['expect']}, got {count}", MISMATCH)
