import logging

from django.core.management.base import BaseCommand

from quivers.quiver import QuiverError, mutate_sequence
from quivers.serializers import QuiverDocumentSerializer

from ...mixins import CommandOutputMixin
from ...utils import load_quiver, parse_vertices

logger = logging.getLogger(__name__)


class Command(CommandOutputMixin, BaseCommand):
    help = "Mutate a coloured quiver document at a sequence of 0-based vertices, left to right."

    def add_arguments(self, parser):
        parser.add_argument('--input', required=True, help="Quiver JSON file, or - for stdin.")
        parser.add_argument(
            '--at',
            action='append',
            required=True,
            help="0-based vertex; repeat the flag or separate with commas.",
        )
        parser.add_argument('--output')

    def handle(self, *args, **options):
        quiver = load_quiver(options['input'], options.get('stdin'))
        vertices = parse_vertices(options['at'])
        try:
            result = mutate_sequence(quiver, vertices)
        except QuiverError as exc:
            self.fail(str(exc))
        logger.debug(f"Mutated at {vertices}: {result!r}")
        self.emit(self.render_json(QuiverDocumentSerializer(result).data), options.get('output'))
