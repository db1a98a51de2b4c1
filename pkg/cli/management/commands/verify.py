import logging

from django.core.management.base import BaseCommand

from counting.formulas import count_coloured_quivers, fuss_catalan_tilting
from verification.harness import CHECK_NAMES, VerifyOptions, instance_pairs, verify_all
from verification.serializers import VerificationReportSerializer

from ...mixins import MISMATCH, CommandOutputMixin
from ...utils import parse_pairs

logger = logging.getLogger(__name__)


class Command(CommandOutputMixin, BaseCommand):
    help = "Cross-check formulas, angulations and mutation classes; exit 2 on any failure."

    def add_arguments(self, parser):
        parser.add_argument('--max-n', type=int, help="Largest rank n (default VERIFY_MAX_N).")
        parser.add_argument('--max-m', type=int, help="Largest m (default VERIFY_MAX_M).")
        parser.add_argument(
            '--extra',
            action='append',
            help="Extra n,m instance beyond the grid; repeatable (default VERIFY_EXTRA).",
        )
        parser.add_argument('--check', action='append', choices=CHECK_NAMES, help="Run only these checks.")
        parser.add_argument('--format', choices=('text', 'json'), default='text')
        parser.add_argument('--output')

    def handle(self, *args, **options):
        n_max = options.get('max_n')
        m_max = options.get('max_m')
        if n_max is None:
            n_max = self.setting('VERIFY_MAX_N')
        if m_max is None:
            m_max = self.setting('VERIFY_MAX_M')
        if n_max < 1 or m_max < 1:
            self.fail(f"--max-n and --max-m must be at least 1, got {n_max}, {m_max}")
        extra = parse_pairs(options.get('extra') or [self.setting('VERIFY_EXTRA')], 'extra')
        checks = frozenset(options['check']) if options.get('check') else None

        pairs = instance_pairs(n_max, m_max, extra)
        what = f"verify up to n={n_max}, m={m_max}"
        self.guard(sum(fuss_catalan_tilting(n, m) for n, m in pairs), 'GEOMETRY_MAX_ANGULATIONS', what)
        self.guard(sum(count_coloured_quivers(n, m) for n, m in pairs), 'BFS_MAX_CLASS_SIZE', what)

        report = verify_all(n_max, m_max, VerifyOptions(checks=checks, extra=extra))
        if options['format'] == 'json':
            text = self.render_json(VerificationReportSerializer(report).data)
        else:
            text = report.to_text()
        self.emit(text, options.get('output'))

        if not report.passed:
            self.fail(f"verification failed: {len(report.failures)} of {len(report.checks)} checks", MISMATCH)
