"""Test suite for the cross-validation harness."""
from unittest.mock import patch

from django.test import SimpleTestCase, override_settings, tag

from geometry.angulation import angulation_from_pairs, enumerate_angulations, quiver_of
from geometry.polygon import PolygonParams
from quivers.canonical import canonical_key
from quivers.quiver import Arrow, ColouredQuiver, gabriel_quiver, validate_quiver

from .harness import (
    CHECK_NAMES,
    MutationClassLimitExceeded,
    VerifyOptions,
    _gabriel_edges,
    bfs_mutation_class,
    explore_mutation_class,
    instance_pairs,
    seed_quiver,
    verify_all,
)
from .serializers import VerificationReportSerializer


def frozen_mutation(q, j):
    """A broken mutation that leaves every quiver unchanged."""
    return q


def mirrored_quiver_of(a):
    """quiver_of with every colour c replaced by m - c."""
    q = quiver_of(a)
    return ColouredQuiver(q.m, q.vertex_count, {
        pair: Arrow(q.m - arrow.colour, arrow.multiplicity)
        for pair, arrow in q.arrows.items()
    })


class SeedQuiverTests(SimpleTestCase):
    """Test suite for the linear seed."""

    def test_single_vertex(self):
        """Test that A_1 has no arrows."""
        self.assertEqual(seed_quiver(1, 3), ColouredQuiver(3, 1, {}))

    def test_two_vertices(self):
        """Test the colours of A_2."""
        q = seed_quiver(2, 3)
        self.assertEqual(q.colour(0, 1), 0)
        self.assertEqual(q.colour(1, 0), 3)

    def test_matches_fan(self):
        """Test that the seed is the quiver of a fan."""
        fan = angulation_from_pairs(PolygonParams(4, 2), [(1, 4), (1, 6), (1, 8)])
        self.assertEqual(canonical_key(seed_quiver(3, 2)), canonical_key(quiver_of(fan)))

    def test_rejects_zero(self):
        """Test the precondition n >= 1."""
        with self.assertRaises(ValueError):
            seed_quiver(0, 1)


class MutationClassTests(SimpleTestCase):
    """Test suite for breadth-first exploration of mutation classes."""

    def test_small_classes(self):
        """Test class sizes against known values."""
        self.assertEqual(len(bfs_mutation_class(seed_quiver(1, 4))), 1)
        self.assertEqual(len(bfs_mutation_class(seed_quiver(2, 1))), 1)
        self.assertEqual(len(bfs_mutation_class(seed_quiver(3, 2))), 7)
        self.assertEqual(len(bfs_mutation_class(seed_quiver(4, 2))), 25)
        self.assertEqual(len(bfs_mutation_class(seed_quiver(3, 1))), 4)

    def test_class_members_are_valid(self):
        """Test that every discovered quiver passes validation."""
        for q in explore_mutation_class(seed_quiver(4, 3)).values():
            self.assertTrue(validate_quiver(q).ok)

    def test_start_does_not_matter(self):
        """Test that starting from another class member gives the same keys."""
        members = list(explore_mutation_class(seed_quiver(4, 2)).values())
        expected = bfs_mutation_class(members[0])
        self.assertEqual(bfs_mutation_class(members[-1]), expected)

    def test_limit(self):
        """Test that a class larger than the limit aborts."""
        with self.assertRaises(MutationClassLimitExceeded) as ctx:
            bfs_mutation_class(seed_quiver(4, 2), limit=10)
        self.assertEqual(ctx.exception.limit, 10)

    @override_settings(COLOURED_QUIVERS={'BFS_LIMIT_FACTOR': 10})
    def test_default_limit_from_formula(self):
        """Test that a runaway mutation trips the default limit."""
        def drifting(q, j):
            # a new m every time, so nothing repeats
            return seed_quiver(q.vertex_count, q.m + 1)

        with patch('verification.harness.mutate', side_effect=drifting):
            with self.assertRaises(MutationClassLimitExceeded) as ctx:
                bfs_mutation_class(seed_quiver(2, 1))
        self.assertEqual(ctx.exception.limit, 10)

    @tag('slow')
    def test_larger_class(self):
        """Test a larger class size."""
        self.assertEqual(len(bfs_mutation_class(seed_quiver(5, 3))), 366)


class VerifyAllTests(SimpleTestCase):
    """Test suite for the full harness."""

    def test_rank_one_is_trivial(self):
        """Test that n_max=1 passes for every m."""
        report = verify_all(1, 4)
        self.assertTrue(report.passed, report.to_text())
        self.assertNotIn('m1_specialization', {check.name for check in report.checks})

    def test_desk_scale_passes(self):
        """Test the default desk-scale run."""
        report = verify_all(3, 2)
        self.assertTrue(report.passed, report.to_text())
        triples = {
            (check.params['n'], check.params['m']): check.observed['bfs']
            for check in report.checks if check.name == 'triple'
        }
        self.assertEqual(triples[(2, 1)], 1)
        self.assertEqual(triples[(2, 2)], 2)
        self.assertEqual(triples[(3, 1)], 4)
        self.assertEqual(triples[(3, 2)], 7)

    @tag('slow')
    def test_listed_range_passes(self):
        """Test n_max=4, m_max=2 with the known class sizes."""
        report = verify_all(4, 2)
        self.assertTrue(report.passed, report.to_text())
        triples = {
            (check.params['n'], check.params['m']): check.observed['bfs']
            for check in report.checks if check.name == 'triple'
        }
        self.assertEqual(triples[(4, 1)], 6)
        self.assertEqual(triples[(4, 2)], 25)

    def test_selected_checks(self):
        """Test that options restrict the checks run."""
        report = verify_all(2, 2, VerifyOptions(checks=frozenset({'indecomposables'})))
        self.assertEqual({check.name for check in report.checks}, {'indecomposables'})
        self.assertEqual(len(report.checks), 4)

    def test_corrupted_mutation_is_caught(self):
        """Test that a broken mutation fails commutation at the smallest visible instance."""
        with patch('verification.harness.mutate', side_effect=frozen_mutation):
            report = verify_all(2, 2)
        self.assertFalse(report.passed)
        failed = [check for check in report.failures if check.name == 'commutation']
        self.assertEqual(failed[0].params, {'n': 2, 'm': 1})
        self.assertIn('first mismatch', failed[0].detail)

    def test_mirrored_colours_are_caught(self):
        """Test that reversing the colour convention fails once m > 1."""
        with patch('verification.harness.quiver_of', side_effect=mirrored_quiver_of):
            report = verify_all(2, 2, VerifyOptions(checks=frozenset({'commutation'})))
        failed = report.failures
        self.assertTrue(failed)
        self.assertTrue(all(check.params['m'] == 2 for check in failed))

    def test_crash_is_recorded(self):
        """Test that an exception inside a check becomes a failed check."""
        with patch('verification.harness.num_indecomposables', side_effect=ZeroDivisionError('boom')):
            report = verify_all(1, 1, VerifyOptions(checks=frozenset({'indecomposables'})))
        self.assertFalse(report.passed)
        self.assertIn('ZeroDivisionError', report.checks[0].detail)

    def test_rejects_empty_range(self):
        """Test the range precondition."""
        with self.assertRaises(ValueError):
            verify_all(0, 2)

    def test_check_names(self):
        """Test that every check is registered."""
        self.assertEqual(len(CHECK_NAMES), 14)
        self.assertIn('gabriel', CHECK_NAMES)
        self.assertIn('factor_connected', CHECK_NAMES)


class ExtraInstanceTests(SimpleTestCase):
    """Test suite for instances run beyond the n x m grid."""

    def test_instance_pairs(self):
        """Test grid order with extras appended once."""
        pairs = instance_pairs(2, 1, ((1, 1), (3, 1), (3, 1)))
        self.assertEqual(pairs, [(1, 1), (2, 1), (3, 1)])

    def test_rejects_bad_extra(self):
        """Test that extras must be positive."""
        with self.assertRaises(ValueError):
            instance_pairs(1, 1, ((0, 1),))

    def test_extra_runs_after_grid(self):
        """Test that an extra instance is checked and listed on the report."""
        options = VerifyOptions(checks=frozenset({'fuss_catalan'}), extra=((3, 2),))
        report = verify_all(1, 1, options)
        self.assertEqual([check.params for check in report.checks], [{'n': 1, 'm': 1}, {'n': 3, 'm': 2}])
        self.assertEqual(report.checks[1].observed, 55)
        self.assertEqual(report.extra, [(3, 2)])
        self.assertEqual(VerificationReportSerializer(report).data['extra'], [[3, 2]])

    @tag('slow')
    def test_rank_seven(self):
        """Test the three counts agree at n=7 for m=1 and m=2."""
        options = VerifyOptions(checks=frozenset({'triple'}), extra=((7, 1), (7, 2)))
        report = verify_all(1, 1, options)
        self.assertTrue(report.passed, report.to_text())
        observed = {(check.params['n'], check.params['m']): check.observed for check in report.checks}
        self.assertEqual(set(observed[(7, 1)].values()), {150})
        self.assertEqual(set(observed[(7, 2)].values()), {2431})


class GabrielAndFactorCheckTests(SimpleTestCase):
    """Test suite for the Gabriel quiver and connected factor checks."""

    def test_passes(self):
        """Test both checks over a desk-scale range."""
        report = verify_all(3, 2, VerifyOptions(checks=frozenset({'gabriel', 'factor_connected'})))
        self.assertTrue(report.passed, report.to_text())
        self.assertEqual({check.name for check in report.checks}, {'gabriel', 'factor_connected'})

    def test_cell_edges_match_quiver_of(self):
        """Test that colour-0 arrows read off the cells agree with quiver_of."""
        for N, m in [(3, 1), (4, 1), (4, 2), (3, 3)]:
            for a in enumerate_angulations(PolygonParams(N, m)):
                self.assertEqual(sorted(gabriel_quiver(quiver_of(a)).edges()), _gabriel_edges(a))

    def test_fan_edges(self):
        """Test the cell reading on the fan of the octagon."""
        fan = angulation_from_pairs(PolygonParams(3, 2), [(1, 4), (1, 6)])
        self.assertEqual(_gabriel_edges(fan), [(0, 1)])

    def test_frozen_mutation_is_caught(self):
        """Test that a broken mutation fails the Gabriel check at n=2."""
        with patch('verification.harness.mutate', side_effect=frozen_mutation):
            report = verify_all(2, 1, VerifyOptions(checks=frozenset({'gabriel'})))
        self.assertEqual([check.params for check in report.failures], [{'n': 2, 'm': 1}])

    def test_bad_removal_is_caught(self):
        """Test that a removal keeping every vertex fails the connected factor check."""
        with patch('verification.harness.remove_vertex', side_effect=lambda q, v: q):
            report = verify_all(2, 1, VerifyOptions(checks=frozenset({'factor_connected'})))
        self.assertFalse(report.passed)
        self.assertEqual(report.failures[0].params, {'n': 2, 'm': 1})


class ReportRenderingTests(SimpleTestCase):
    """Test suite for report text and JSON."""

    def setUp(self):
        """Run a small report."""
        self.report = verify_all(2, 1)

    def test_text(self):
        """Test the text rendering."""
        text = self.report.to_text()
        self.assertTrue(text.startswith('PASS triple n=1 m=1'))
        self.assertTrue(text.endswith('0 failed: PASS'))

    def test_json(self):
        """Test the serializer output."""
        data = VerificationReportSerializer(self.report).data
        self.assertTrue(data['passed'])
        self.assertEqual(data['failed'], 0)
        self.assertEqual(data['n_max'], 2)
        self.assertEqual(data['extra'], [])
        self.assertEqual(data['checks'][0]['name'], 'triple')
        self.assertEqual(data['checks'][0]['params'], {'n': 1, 'm': 1})
