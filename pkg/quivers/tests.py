"""Test suite for coloured quivers, mutation and canonical keys."""
from itertools import permutations

import networkx as nx
from django.test import SimpleTestCase

from .canonical import are_isomorphic, canonical_key
from .quiver import (
    Arrow,
    ColouredQuiver,
    InvalidQuiverError,
    QuiverError,
    VertexIndexError,
    gabriel_quiver,
    is_connected,
    mutate,
    mutate_sequence,
    relabel,
    remove_vertex,
    validate_quiver,
)
from .serializers import QuiverDocumentSerializer


def linear(n, m):
    return ColouredQuiver.from_symmetric(m, n, [(i, i + 1, 0) for i in range(n - 1)])


def as_digraph(q):
    graph = nx.DiGraph()
    graph.add_nodes_from(range(q.vertex_count))
    for (i, j), arrow in q.arrows.items():
        graph.add_edge(i, j, colour=arrow.colour, mult=arrow.multiplicity)
    return graph


class QuiverTestMixin:
    """Mixin providing the worked m=3 example."""

    def setUp(self):
        """Build Q and its mutation Q' at the third vertex."""
        self.q = ColouredQuiver.from_symmetric(3, 3, [(0, 1, 0), (1, 2, 2)])
        self.q_prime = ColouredQuiver.from_symmetric(3, 3, [(0, 1, 0), (1, 2, 1)])


class ValidationTests(QuiverTestMixin, SimpleTestCase):
    """Test suite for the quiver validator."""

    def test_valid_quiver(self):
        """Test that the worked example passes validation."""
        report = validate_quiver(self.q)
        self.assertTrue(report.ok)
        self.assertEqual(report.violations, ())

    def test_loop_reported(self):
        """Test that a loop is reported."""
        q = ColouredQuiver.from_arrows(1, 1, [(0, 0, 0, 1)])
        report = validate_quiver(q)
        self.assertFalse(report)
        self.assertTrue(report.violations[0].startswith('no loops'))

    def test_missing_partner_reported(self):
        """Test that a one-sided arrow breaks colour symmetry."""
        q = ColouredQuiver.from_arrows(2, 2, [(0, 1, 0, 1)])
        report = validate_quiver(q)
        self.assertEqual(len(report.violations), 1)
        self.assertIn('colour symmetry', report.violations[0])

    def test_wrong_partner_colour_reported(self):
        """Test that partner colours must sum to m."""
        q = ColouredQuiver.from_arrows(2, 2, [(0, 1, 0, 1), (1, 0, 1, 1)])
        report = validate_quiver(q)
        self.assertEqual(len(report.violations), 2)
        self.assertTrue(all('colour symmetry' in v for v in report.violations))

    def test_colour_out_of_range_reported(self):
        """Test that colours above m are rejected."""
        q = ColouredQuiver.from_arrows(1, 2, [(0, 1, 2, 1), (1, 0, 0, 1)])
        report = validate_quiver(q)
        self.assertTrue(any(v.startswith('colour range') for v in report.violations))

    def test_vertex_out_of_range_reported(self):
        """Test that arrows must stay inside the vertex range."""
        q = ColouredQuiver.from_symmetric(1, 2, [(0, 2, 0)])
        report = validate_quiver(q)
        self.assertTrue(any(v.startswith('vertex range') for v in report.violations))

    def test_mutate_rejects_invalid_input(self):
        """Test that mutation refuses an invalid quiver."""
        q = ColouredQuiver.from_arrows(2, 2, [(0, 1, 0, 1)])
        with self.assertRaises(InvalidQuiverError) as ctx:
            mutate(q, 0)
        self.assertEqual(len(ctx.exception.violations), 1)


class MutationTests(QuiverTestMixin, SimpleTestCase):
    """Test suite for coloured quiver mutation."""

    def test_worked_example(self):
        """Test that mutating Q at its third vertex gives Q'."""
        mutated = mutate(self.q, 2)
        self.assertEqual(mutated, self.q_prime)
        self.assertEqual(mutated.colour(1, 2), 1)
        self.assertEqual(mutated.colour(2, 1), 2)
        self.assertNotEqual(canonical_key(self.q), canonical_key(self.q_prime))

    def test_single_vertex(self):
        """Test that a single vertex quiver is fixed by mutation."""
        q = ColouredQuiver(2, 1, {})
        self.assertEqual(mutate(q, 0), q)

    def test_single_arrow_pair_recolours(self):
        """Test the A_2 case: the colour-0 arrow turns around one colour step."""
        q = linear(2, 3)
        mutated = mutate(q, 1)
        self.assertEqual(mutated.colour(0, 1), 3)
        self.assertEqual(mutated.colour(1, 0), 0)

    def test_m1_is_classical_mutation(self):
        """Test that m=1 mutation at the middle of A_3 gives the oriented 3-cycle."""
        mutated = mutate(linear(3, 1), 1)
        gabriel = gabriel_quiver(mutated)
        self.assertEqual(sorted(gabriel.edges()), [(0, 2), (1, 0), (2, 1)])
        self.assertEqual(mutated.colour(2, 0), 1)

    def test_step_two_cancellation(self):
        """Test that opposite colours on the same pair cancel in the 3-cycle."""
        cycle = mutate(linear(3, 1), 1)
        self.assertEqual(mutate(cycle, 1), linear(3, 1))

    def test_periodicity(self):
        """Test that m+1 mutations at one vertex give back the quiver."""
        for m in range(1, 5):
            q = mutate_sequence(linear(4, m), [1, 2, 0])
            for j in range(q.vertex_count):
                with self.subTest(m=m, j=j):
                    self.assertEqual(mutate_sequence(q, [j] * (m + 1)), q)

    def test_results_stay_valid(self):
        """Test that every mutation along a walk keeps the quiver valid."""
        q = linear(5, 2)
        for j in [0, 2, 4, 1, 3, 2, 2, 0]:
            q = mutate(q, j)
            self.assertTrue(validate_quiver(q).ok)

    def test_vertex_out_of_range(self):
        """Test that mutating a missing vertex raises."""
        with self.assertRaises(VertexIndexError):
            mutate(self.q, 3)


class StructureTests(QuiverTestMixin, SimpleTestCase):
    """Test suite for relabelling, vertex removal and the Gabriel quiver."""

    def test_gabriel_quiver(self):
        """Test that the Gabriel quiver keeps only colour-0 arrows."""
        graph = gabriel_quiver(linear(3, 2))
        self.assertEqual(sorted(graph.edges()), [(0, 1), (1, 2)])

    def test_gabriel_quiver_of_worked_example(self):
        """Test that the m=3 example and its mutation share the single arrow 0 -> 1."""
        self.assertEqual(list(gabriel_quiver(self.q).edges()), [(0, 1)])
        self.assertEqual(list(gabriel_quiver(mutate(self.q, 2)).edges()), [(0, 1)])
        self.assertEqual(gabriel_quiver(self.q).number_of_nodes(), 3)

    def test_gabriel_quiver_multiplicity(self):
        """Test one edge per unit of multiplicity."""
        double = ColouredQuiver.from_arrows(1, 2, [(0, 1, 0, 2), (1, 0, 1, 2)])
        self.assertEqual(gabriel_quiver(double).number_of_edges(0, 1), 2)

    def test_remove_vertex(self):
        """Test that removing a vertex renumbers the rest."""
        reduced = remove_vertex(self.q, 0)
        self.assertEqual(reduced, ColouredQuiver.from_symmetric(3, 2, [(0, 1, 2)]))

    def test_remove_middle_disconnects(self):
        """Test connectivity after removing the middle of a path."""
        self.assertTrue(is_connected(self.q))
        self.assertFalse(is_connected(remove_vertex(self.q, 1)))

    def test_remove_only_vertex(self):
        """Test that the last vertex cannot be factored out."""
        with self.assertRaises(QuiverError):
            remove_vertex(ColouredQuiver(1, 1, {}), 0)

    def test_relabel_rejects_non_permutation(self):
        """Test relabel input validation."""
        with self.assertRaises(QuiverError):
            relabel(self.q, [0, 0, 1])


class CanonicalKeyTests(SimpleTestCase):
    """Test suite for canonical keys."""

    def setUp(self):
        """Collect quivers reachable from A_4 by up to three mutations."""
        seed = linear(4, 2)
        self.quivers = {seed}
        frontier = [seed]
        for _ in range(3):
            frontier = [mutate(q, j) for q in frontier for j in range(q.vertex_count)]
            self.quivers.update(frontier)
        self.quivers = sorted(self.quivers, key=repr)

    def test_invariant_under_relabelling(self):
        """Test that every relabelling has the same key."""
        for q in self.quivers[:6]:
            key = canonical_key(q)
            for permutation in permutations(range(q.vertex_count)):
                self.assertEqual(canonical_key(relabel(q, permutation)), key)

    def test_agrees_with_networkx(self):
        """Test key equality against networkx isomorphism."""
        def match(a, b):
            return a['colour'] == b['colour'] and a['mult'] == b['mult']

        keys = [canonical_key(q) for q in self.quivers]
        graphs = [as_digraph(q) for q in self.quivers]
        for a in range(len(self.quivers)):
            for b in range(a, len(self.quivers)):
                expected = nx.is_isomorphic(graphs[a], graphs[b], edge_match=match)
                self.assertEqual(keys[a] == keys[b], expected)
        self.assertTrue(are_isomorphic(self.quivers[0], relabel(self.quivers[0], [3, 2, 1, 0])))

    def test_distinguishes_m(self):
        """Test that the same shape with a different m has another key."""
        self.assertNotEqual(canonical_key(linear(3, 1)), canonical_key(linear(3, 2)))

    def test_key_is_stable_text(self):
        """Test that the key renders as its JSON encoding."""
        key = canonical_key(ColouredQuiver(2, 1, {}))
        self.assertEqual(str(key), '[2,1,[[-1,0]]]')


class QuiverDocumentSerializerTests(QuiverTestMixin, SimpleTestCase):
    """Test suite for the quiver JSON document."""

    def test_valid_document(self):
        """Test reading a valid document."""
        data = {
            'm': 3,
            'vertices': 3,
            'arrows': [
                {'from': 0, 'to': 1, 'colour': 0},
                {'from': 1, 'to': 0, 'colour': 3},
                {'from': 1, 'to': 2, 'colour': 2},
                {'from': 2, 'to': 1, 'colour': 1},
            ],
        }
        serializer = QuiverDocumentSerializer(data=data)
        self.assertTrue(serializer.is_valid(), serializer.errors)
        self.assertEqual(serializer.save(), self.q)

    def test_representation(self):
        """Test writing a quiver lists every arrow in pair order."""
        data = QuiverDocumentSerializer(self.q).data
        self.assertEqual(data['vertices'], 3)
        self.assertEqual(data['arrows'][0], {'from': 0, 'to': 1, 'colour': 0, 'mult': 1})
        self.assertEqual(len(data['arrows']), 4)

    def test_conflicting_colours(self):
        """Test that one pair with two colours is rejected."""
        data = {
            'm': 2,
            'vertices': 2,
            'arrows': [
                {'from': 0, 'to': 1, 'colour': 0},
                {'from': 0, 'to': 1, 'colour': 1},
                {'from': 1, 'to': 0, 'colour': 2},
            ],
        }
        serializer = QuiverDocumentSerializer(data=data)
        self.assertFalse(serializer.is_valid())
        self.assertIn('colour uniqueness', serializer.errors['arrows'][0])

    def test_symmetry_violation(self):
        """Test that the validator message reaches the serializer errors."""
        data = {'m': 2, 'vertices': 2, 'arrows': [{'from': 0, 'to': 1, 'colour': 0}]}
        serializer = QuiverDocumentSerializer(data=data)
        self.assertFalse(serializer.is_valid())
        self.assertIn('colour symmetry', serializer.errors['arrows'][0])

    def test_missing_fields(self):
        """Test the required field messages."""
        serializer = QuiverDocumentSerializer(data={})
        self.assertFalse(serializer.is_valid())
        self.assertIn('m', serializer.errors)
        self.assertIn('vertices', serializer.errors)

    def test_arrow_defaults(self):
        """Test that multiplicity defaults to one."""
        q = ColouredQuiver(1, 2, {(0, 1): Arrow(0), (1, 0): Arrow(1)})
        data = {'m': 1, 'vertices': 2, 'arrows': [
            {'from': 0, 'to': 1, 'colour': 0}, {'from': 1, 'to': 0, 'colour': 1},
        ]}
        serializer = QuiverDocumentSerializer(data=data)
        self.assertTrue(serializer.is_valid(), serializer.errors)
        self.assertEqual(serializer.save(), q)
