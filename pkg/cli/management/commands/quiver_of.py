from django.core.management.base import BaseCommand

from geometry.angulation import quiver_of
from quivers.serializers import QuiverDocumentSerializer

from ...mixins import CommandOutputMixin
from ...utils import load_angulation


class Command(CommandOutputMixin, BaseCommand):
    help = "Coloured quiver of an angulation; vertex k is the k-th listed diagonal."

    def add_arguments(self, parser):
        parser.add_argument('--input', required=True, help='Angulation JSON file, - for stdin, or "1-4,1-6".')
        parser.add_argument('-m', '--m', type=int, help="Needed for the compact form.")
        parser.add_argument('--output')

    def handle(self, *args, **options):
        angulation = load_angulation(options['input'], options.get('m'), options.get('stdin'))
        document = QuiverDocumentSerializer(quiver_of(angulation)).data
        self.emit(self.render_json(document), options.get('output'))
