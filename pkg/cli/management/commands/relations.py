from django.core.management.base import BaseCommand

from geometry.angulation import relations_of

from ...mixins import CommandOutputMixin
from ...utils import load_angulation


class Command(CommandOutputMixin, BaseCommand):
    help = "Zero paths of the Gabriel quiver of an angulation, as 0-based vertex triples."

    def add_arguments(self, parser):
        parser.add_argument('--input', required=True, help='Angulation JSON file, - for stdin, or "1-4,1-6".')
        parser.add_argument('-m', '--m', type=int)
        parser.add_argument('--format', choices=('text', 'json'), default='json')
        parser.add_argument('--output')

    def handle(self, *args, **options):
        angulation = load_angulation(options['input'], options.get('m'), options.get('stdin'))
        triples = sorted(relations_of(angulation))
        if options['format'] == 'json':
            text = self.render_json({'relations': [list(t) for t in triples]})
        else:
            text = '\n'.join(f"{i} -> {j} -> {k}" for i, j, k in triples)
        self.emit(text, options.get('output'))
