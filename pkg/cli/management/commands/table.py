import csv
import io

from django.core.management.base import BaseCommand

from counting.formulas import count_coloured_quivers

from ...mixins import CommandOutputMixin
from ...utils import parse_range


class Command(CommandOutputMixin, BaseCommand):
    help = "Grid of coloured quiver counts for ranges of n and m."

    def add_arguments(self, parser):
        parser.add_argument('--n', dest='n_range', default='2..20', help="Range of n, e.g. 2..20.")
        parser.add_argument('--m', dest='m_range', default='1..4', help="Range of m, e.g. 1..4.")
        parser.add_argument('--format', choices=('text', 'json', 'csv'), default='text')
        parser.add_argument('--output', help="Write to this file instead of stdout.")

    def handle(self, *args, **options):
        ns = parse_range(options['n_range'], 'n')
        ms = parse_range(options['m_range'], 'm')
        if ns[-1] > self.setting('TABLE_MAX_N'):
            self.fail(f"n up to {ns[-1]} is above TABLE_MAX_N={self.setting('TABLE_MAX_N')}")
        rows = [(n, m, count_coloured_quivers(n, m)) for n in ns for m in ms]

        fmt = options['format']
        if fmt == 'csv':
            buffer = io.StringIO()
            writer = csv.writer(buffer, lineterminator='\n')
            writer.writerow(['n', 'm', 'count'])
            writer.writerows((n, m, str(count)) for n, m, count in rows)
            text = buffer.getvalue().rstrip('\n')
        elif fmt == 'json':
            text = self.render_json([{'n': n, 'm': m, 'count': str(count)} for n, m, count in rows])
        else:
            text = self.render_grid(ns, ms, {(n, m): count for n, m, count in rows})
        self.emit(text, options.get('output'))

    @staticmethod
    def render_grid(ns, ms, counts) -> str:
        width = max(len(str(value)) for value in counts.values())
        width = max(width, 4)
        lines = ['n\\m'.ljust(5) + ''.join(f"{m:>{width + 2}}" for m in ms)]
        for n in ns:
            lines.append(str(n).ljust(5) + ''.join(f"{counts[(n, m)]:>{width + 2}}" for m in ms))
        return '\n'.join(lines)
