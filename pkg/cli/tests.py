"""Test suite for the management commands."""
import json
import tempfile
from io import StringIO
from pathlib import Path
from unittest.mock import patch

from django.conf import settings
from django.core.management import call_command
from django.core.management.base import CommandError
from django.test import SimpleTestCase, override_settings

from counting.tests import KNOWN_COUNTS
from quivers.quiver import ColouredQuiver
from quivers.serializers import QuiverDocumentSerializer
from verification.tests import mirrored_quiver_of


class CommandTestMixin:
    """Mixin providing command execution helpers and a scratch directory."""

    def setUp(self):
        """Create a scratch directory for input and output files."""
        self.tmp = tempfile.TemporaryDirectory()
        self.addCleanup(self.tmp.cleanup)
        self.dir = Path(self.tmp.name)

    def run_command(self, *args, **kwargs) -> str:
        out = StringIO()
        call_command(*args, stdout=out, stderr=StringIO(), **kwargs)
        return out.getvalue().strip()

    def assertFails(self, returncode, *args, **kwargs):
        with self.assertRaises(CommandError) as ctx:
            self.run_command(*args, **kwargs)
        self.assertEqual(ctx.exception.returncode, returncode)
        return ctx.exception

    def write(self, name, content) -> str:
        path = self.dir / name
        path.write_text(content if isinstance(content, str) else json.dumps(content))
        return str(path)


class CountCommandTests(CommandTestMixin, SimpleTestCase):
    """Test suite for the count command."""

    def test_formula(self):
        """Test the closed form route."""
        self.assertEqual(self.run_command('count', '-n', '4', '-m', '2', '--method', 'formula'), '25')

    def test_geometry(self):
        """Test the rotation class route."""
        self.assertEqual(self.run_command('count', '-n', '2', '-m', '3', '--method', 'geometry'), '2')

    def test_bfs(self):
        """Test the mutation class route."""
        self.assertEqual(self.run_command('count', '-n', '3', '-m', '1', '--method', 'bfs'), '4')

    def test_all_methods_agree(self):
        """Test that all three routes print the same count."""
        output = self.run_command('count', '-n', '3', '-m', '2', '--method', 'all')
        self.assertEqual(output.splitlines(), ['formula: 7', 'geometry: 7', 'bfs: 7'])

    def test_large_values_are_decimal(self):
        """Test that counts beyond 64 bits print in full."""
        self.assertEqual(self.run_command('count', '-n', '20', '-m', '4'), '873654669882575000')

    def test_expect(self):
        """Test --expect success and mismatch."""
        self.assertEqual(self.run_command('count', '-n', '5', '-m', '3', '--expect', '366'), '366')
        error = self.assertFails(2, 'count', '-n', '5', '-m', '3', '--expect', '365')
        self.assertIn('expected 365', str(error))

    def test_invalid_arguments(self):
        """Test that usage errors exit 1."""
        self.assertFails(1, 'count', '-n', '0', '-m', '2')
        self.assertFails(1, 'count', '-n', 'x', '-m', '2')
        self.assertFails(1, 'count', '-n', '3', '-m', '2', '--method', 'guess')

    def test_guard(self):
        """Test that geometric enumeration respects the configured limit."""
        limits = {**settings.COLOURED_QUIVERS, 'GEOMETRY_MAX_ANGULATIONS': 5}
        with override_settings(COLOURED_QUIVERS=limits):
            error = self.assertFails(1, 'count', '-n', '3', '-m', '2', '--method', 'geometry')
        self.assertIn('GEOMETRY_MAX_ANGULATIONS', str(error))

    def test_tilting_count(self):
        """Test the Fuss-Catalan command."""
        self.assertEqual(self.run_command('tilting_count', '-n', '2', '-m', '2'), '12')
        self.assertEqual(self.run_command('tilting_count', '-n', '3', '-m', '1'), '14')
        self.assertFails(2, 'tilting_count', '-n', '3', '-m', '1', '--expect', '13')


class TableCommandTests(CommandTestMixin, SimpleTestCase):
    """Test suite for the table command."""

    def test_full_table_csv(self):
        """Test the 76-entry grid cell for cell."""
        output = self.run_command('table', '--n', '2..20', '--m', '1..4', '--format', 'csv')
        lines = output.splitlines()
        self.assertEqual(lines[0], 'n,m,count')
        self.assertEqual(len(lines), 77)
        for line in lines[1:]:
            n, m, count = line.split(',')
            self.assertEqual(int(count), KNOWN_COUNTS[int(n)][int(m) - 1])
        self.assertEqual(lines[-1], '20,4,873654669882575000')

    def test_single_row(self):
        """Test a one-cell table."""
        output = self.run_command('table', '--n', '2..2', '--m', '1..1', '--format', 'csv')
        self.assertEqual(output.splitlines()[1:], ['2,1,1'])

    def test_json(self):
        """Test that JSON counts are decimal strings."""
        output = self.run_command('table', '--n', '3', '--m', '1..4', '--format', 'json')
        rows = json.loads(output)
        self.assertEqual([row['count'] for row in rows], ['4', '7', '12', '19'])

    def test_text(self):
        """Test the aligned grid."""
        output = self.run_command('table', '--n', '2..3', '--m', '1..2')
        lines = output.splitlines()
        self.assertTrue(lines[0].startswith('n\\m'))
        self.assertEqual(lines[2].split(), ['3', '4', '7'])

    def test_output_file(self):
        """Test writing the table to a file."""
        target = self.dir / 'table.csv'
        self.run_command('table', '--n', '2..3', '--m', '1..1', '--format', 'csv', '--output', str(target))
        self.assertEqual(target.read_text().splitlines(), ['n,m,count', '2,1,1', '3,1,4'])

    def test_bad_range(self):
        """Test that malformed and empty ranges exit 1."""
        self.assertFails(1, 'table', '--n', '5..2')
        self.assertFails(1, 'table', '--n', 'two')


class EnumerateCommandTests(CommandTestMixin, SimpleTestCase):
    """Test suite for the enumerate command."""

    def test_all_angulations(self):
        """Test one JSON line per angulation."""
        lines = self.run_command('enumerate', '-n', '2', '-m', '2').splitlines()
        self.assertEqual(len(lines), 12)
        documents = [json.loads(line) for line in lines]
        self.assertTrue(all(doc['N'] == 3 and doc['m'] == 2 for doc in documents))
        self.assertTrue(all(len(doc['diagonals']) == 2 for doc in documents))

    def test_classes(self):
        """Test one representative per rotation class."""
        lines = self.run_command('enumerate', '-n', '3', '-m', '2', '--classes').splitlines()
        self.assertEqual(len(lines), 7)


class QuiverCommandTests(CommandTestMixin, SimpleTestCase):
    """Test suite for the mutate, quiver_of and relations commands."""

    def setUp(self):
        """Write the worked m=3 example to a file."""
        super().setUp()
        self.q = ColouredQuiver.from_symmetric(3, 3, [(0, 1, 0), (1, 2, 2)])
        self.q_prime = ColouredQuiver.from_symmetric(3, 3, [(0, 1, 0), (1, 2, 1)])
        self.document = QuiverDocumentSerializer(self.q).data
        self.path = self.write('q.json', self.document)

    def test_worked_example(self):
        """Test mutating at the third vertex."""
        output = self.run_command('mutate', '--input', self.path, '--at', '2')
        self.assertEqual(json.loads(output), QuiverDocumentSerializer(self.q_prime).data)

    def test_periodicity(self):
        """Test that m+1 mutations give back the input."""
        output = self.run_command('mutate', '--input', self.path, '--at', '1,1', '--at', '1', '--at', '1')
        self.assertEqual(json.loads(output), self.document)

    def test_stdin(self):
        """Test reading the quiver from stdin."""
        output = self.run_command('mutate', '--input', '-', '--at', '2', stdin=StringIO(json.dumps(self.document)))
        self.assertEqual(json.loads(output)['arrows'][2], {'from': 1, 'to': 2, 'colour': 1, 'mult': 1})

    def test_invalid_json(self):
        """Test that a malformed document exits 1."""
        path = self.write('broken.json', '{"m": 3, "vertices": ')
        self.assertFails(1, 'mutate', '--input', path, '--at', '0')

    def test_invalid_quiver(self):
        """Test that validation errors are reported."""
        path = self.write('bad.json', {'m': 2, 'vertices': 2, 'arrows': [{'from': 0, 'to': 1, 'colour': 0}]})
        error = self.assertFails(1, 'mutate', '--input', path, '--at', '0')
        self.assertIn('colour symmetry', str(error))

    def test_vertex_out_of_range(self):
        """Test that --at outside the quiver exits 1."""
        self.assertFails(1, 'mutate', '--input', self.path, '--at', '3')
        self.assertFails(1, 'mutate', '--input', self.path, '--at', '-1')

    def test_quiver_of_compact(self):
        """Test the compact angulation form."""
        output = self.run_command('quiver_of', '--input', '1-4,1-6', '-m', '2')
        self.assertEqual(json.loads(output), QuiverDocumentSerializer(
            ColouredQuiver.from_symmetric(2, 2, [(0, 1, 0)])
        ).data)

    def test_quiver_of_document(self):
        """Test the JSON angulation form."""
        path = self.write('a.json', {'N': 2, 'm': 2, 'diagonals': [[2, 5]]})
        output = self.run_command('quiver_of', '--input', path)
        self.assertEqual(json.loads(output), {'m': 2, 'vertices': 1, 'arrows': []})

    def test_quiver_of_needs_m(self):
        """Test that the compact form requires -m."""
        self.assertFails(1, 'quiver_of', '--input', '1-4,1-6')

    def test_quiver_of_invalid(self):
        """Test that crossing diagonals exit 1."""
        self.assertFails(1, 'quiver_of', '--input', '1-3,2-4', '-m', '1')

    def test_relations(self):
        """Test zero paths of the central triangle."""
        output = self.run_command('relations', '--input', '1-3,3-5,1-5', '-m', '1', '--format', 'text')
        self.assertEqual(output.splitlines(), ['0 -> 2 -> 1', '1 -> 0 -> 2', '2 -> 1 -> 0'])
        data = json.loads(self.run_command('relations', '--input', '1-3,1-4,1-5', '-m', '1'))
        self.assertEqual(data, {'relations': []})


class VerifyCommandTests(CommandTestMixin, SimpleTestCase):
    """Test suite for the verify command."""

    def test_passes(self):
        """Test a passing run."""
        output = self.run_command('verify', '--max-n', '2', '--max-m', '2')
        self.assertTrue(output.endswith('0 failed: PASS'))

    def test_trivial_rank(self):
        """Test n_max=1 across several m."""
        output = self.run_command('verify', '--max-n', '1', '--max-m', '4')
        self.assertIn('PASS triple n=1 m=4', output)

    def test_json_output_file(self):
        """Test the JSON report written to a file."""
        target = self.dir / 'report.json'
        self.run_command('verify', '--max-n', '2', '--max-m', '1', '--format', 'json', '--output', str(target))
        report = json.loads(target.read_text())
        self.assertTrue(report['passed'])
        self.assertEqual(report['failed'], 0)

    def test_selected_check(self):
        """Test --check restricts the run."""
        output = self.run_command('verify', '--max-n', '2', '--max-m', '2', '--check', 'fuss_catalan')
        self.assertEqual(output.count('fuss_catalan'), 4)
        self.assertTrue(output.endswith('4 checks, 0 failed: PASS'))

    def test_mirrored_colours_fail(self):
        """Test that a reversed colour convention exits 2."""
        with patch('verification.harness.quiver_of', side_effect=mirrored_quiver_of):
            error = self.assertFails(2, 'verify', '--max-n', '2', '--max-m', '2', '--check', 'commutation')
        self.assertIn('verification failed', str(error))

    def test_bad_bounds(self):
        """Test that zero bounds exit 1."""
        self.assertFails(1, 'verify', '--max-n', '0')

    def test_extra_instances(self):
        """Test --extra adds instances beyond the grid."""
        output = self.run_command(
            'verify', '--max-n', '1', '--max-m', '1', '--extra', '3,2',
            '--check', 'fuss_catalan', '--format', 'json',
        )
        report = json.loads(output)
        self.assertEqual(report['extra'], [[3, 2]])
        self.assertEqual([check['params'] for check in report['checks']], [{'n': 1, 'm': 1}, {'n': 3, 'm': 2}])
        self.assertFails(1, 'verify', '--max-n', '1', '--extra', '3')
        self.assertFails(1, 'verify', '--max-n', '1', '--extra', '0,2')

    def test_extra_from_settings(self):
        """Test the configured extra instances."""
        configured = {**settings.COLOURED_QUIVERS, 'VERIFY_EXTRA': '2,1'}
        with override_settings(COLOURED_QUIVERS=configured):
            output = self.run_command('verify', '--max-n', '1', '--max-m', '1', '--check', 'triple')
        self.assertIn('PASS triple n=2 m=1', output)

    def test_guard(self):
        """Test that verify refuses ranges above the configured limits."""
        limits = {**settings.COLOURED_QUIVERS, 'GEOMETRY_MAX_ANGULATIONS': 10}
        with override_settings(COLOURED_QUIVERS=limits):
            error = self.assertFails(1, 'verify', '--max-n', '3', '--max-m', '2')
        self.assertIn('GEOMETRY_MAX_ANGULATIONS', str(error))
        limits = {**settings.COLOURED_QUIVERS, 'BFS_MAX_CLASS_SIZE': 5}
        with override_settings(COLOURED_QUIVERS=limits):
            error = self.assertFails(1, 'verify', '--max-n', '3', '--max-m', '2')
        self.assertIn('BFS_MAX_CLASS_SIZE', str(error))
