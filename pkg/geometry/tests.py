"""Test suite for polygons, angulations and their quivers."""
from itertools import combinations
from math import comb

from django.test import SimpleTestCase, tag

from counting.formulas import num_indecomposables
from quivers.canonical import canonical_key
from quivers.quiver import ColouredQuiver, is_connected, mutate, remove_vertex, validate_quiver

from .angulation import (
    Angulation,
    DiagonalNotFoundError,
    InvalidAngulationError,
    NotBorderEdgeError,
    NotCloseToBorderError,
    angulation_from_pairs,
    close_to_border,
    count_rotation_classes,
    enumerate_angulations,
    extend_at,
    factor_out,
    minimal_rotation,
    mutate_at,
    quiver_classes_of_angulations,
    quiver_of,
    relations_of,
    rotate,
    rotation_class_key,
)
from .polygon import (
    GeometryError,
    InvalidDiagonalError,
    MDiagonal,
    PolygonParams,
    border_edges,
    count_m_diagonals,
    enumerate_m_diagonals,
    is_m_diagonal,
    make_diagonal,
)
from .serializers import AngulationDocumentSerializer, CompactAngulationSerializer


def fuss_catalan(N, m):
    return comb(N * (m + 1), N - 1) // N


def brute_force(p):
    diagonals = list(enumerate_m_diagonals(p))
    found = set()
    for subset in combinations(diagonals, p.N - 1):
        if not any(d.crosses(e) for d, e in combinations(subset, 2)):
            found.add(frozenset(subset))
    return found


class GeometryTestMixin:
    """Mixin providing small polygons and angulations."""

    def setUp(self):
        """Build the polygons used throughout."""
        self.hexagon = PolygonParams(2, 2)
        self.p32 = PolygonParams(3, 2)
        self.p42 = PolygonParams(4, 2)
        self.fan = angulation_from_pairs(self.p32, [(1, 4), (1, 6)])


class PolygonTests(GeometryTestMixin, SimpleTestCase):
    """Test suite for m-diagonals."""

    def test_is_m_diagonal(self):
        """Test the gap conditions."""
        self.assertTrue(is_m_diagonal(self.p42, 1, 4))
        self.assertFalse(is_m_diagonal(self.p42, 1, 2))
        self.assertTrue(is_m_diagonal(PolygonParams(3, 3), 1, 5))
        self.assertFalse(is_m_diagonal(PolygonParams(3, 3), 1, 4))

    def test_is_m_diagonal_matches_side_counts(self):
        """Test against counting the sides on both parts directly."""
        for N in range(1, 5):
            for m in range(1, 4):
                p = PolygonParams(N, m)
                for i in range(1, p.V + 1):
                    for j in range(i + 1, p.V + 1):
                        first = j - i + 1
                        second = p.V - (j - i) + 1
                        expected = (
                            first % m == 2 % m and second % m == 2 % m
                            and first >= m + 2 and second >= m + 2
                        )
                        self.assertEqual(is_m_diagonal(p, i, j), expected, (p, i, j))

    def test_label_out_of_range(self):
        """Test that labels outside 1..V raise."""
        with self.assertRaises(GeometryError):
            is_m_diagonal(self.hexagon, 0, 3)
        with self.assertRaises(GeometryError):
            is_m_diagonal(self.hexagon, 1, 7)

    def test_make_diagonal(self):
        """Test the checked constructor."""
        self.assertEqual(make_diagonal(self.hexagon, 4, 1), MDiagonal(1, 4))
        with self.assertRaises(InvalidDiagonalError):
            make_diagonal(self.hexagon, 1, 3)

    def test_invalid_params(self):
        """Test that N and m must be positive."""
        with self.assertRaises(GeometryError):
            PolygonParams(0, 2)
        with self.assertRaises(GeometryError):
            PolygonParams(2, 0)

    def test_count_m_diagonals(self):
        """Test the diagonal count against enumeration."""
        self.assertEqual(count_m_diagonals(PolygonParams(2, 3)), 4)
        self.assertEqual(count_m_diagonals(PolygonParams(4, 1)), 9)
        self.assertEqual(count_m_diagonals(self.p42), 15)
        for N in range(1, 8):
            for m in range(1, 5):
                p = PolygonParams(N, m)
                self.assertEqual(count_m_diagonals(p), len(list(enumerate_m_diagonals(p))))

    def test_crossing(self):
        """Test interior crossing with shared endpoints allowed."""
        self.assertTrue(MDiagonal(1, 4).crosses(MDiagonal(2, 5)))
        self.assertFalse(MDiagonal(1, 4).crosses(MDiagonal(4, 7)))
        self.assertFalse(MDiagonal(1, 4).crosses(MDiagonal(1, 6)))

    def test_border_edges(self):
        """Test that the last border edge wraps around."""
        edges = border_edges(self.hexagon)
        self.assertEqual(len(edges), 6)
        self.assertEqual(edges[0], (1, 2))
        self.assertEqual(edges[-1], (6, 1))


class AngulationTests(GeometryTestMixin, SimpleTestCase):
    """Test suite for angulation construction, enumeration and rotation."""

    def test_cells(self):
        """Test that the fan has three cells of four sides."""
        self.assertEqual(len(self.fan.cells), 3)
        self.assertTrue(all(len(cell.vertices) == 4 for cell in self.fan.cells))
        self.assertIn((1, 4, 5, 6), [cell.vertices for cell in self.fan.cells])

    def test_validation(self):
        """Test rejection of crossing, short and foreign diagonal sets."""
        p = PolygonParams(3, 1)
        with self.assertRaises(InvalidAngulationError):
            angulation_from_pairs(p, [(1, 3), (2, 4)])
        with self.assertRaises(InvalidAngulationError):
            angulation_from_pairs(p, [(1, 3)])
        with self.assertRaises(InvalidAngulationError):
            angulation_from_pairs(self.p32, [(1, 3), (1, 6)])
        with self.assertRaises(InvalidAngulationError):
            angulation_from_pairs(self.p32, [(1, 4), (1, 4)])

    def test_equality_ignores_slot_order(self):
        """Test that equality is set equality."""
        swapped = Angulation(self.p32, (MDiagonal(1, 6), MDiagonal(1, 4)))
        self.assertEqual(swapped, self.fan)
        self.assertEqual(hash(swapped), hash(self.fan))

    def test_enumerate_small(self):
        """Test the listed small enumerations."""
        hexagon = {a.diagonal_set for a in enumerate_angulations(self.hexagon)}
        self.assertEqual(hexagon, {
            frozenset({MDiagonal(1, 4)}),
            frozenset({MDiagonal(2, 5)}),
            frozenset({MDiagonal(3, 6)}),
        })
        self.assertEqual(len(list(enumerate_angulations(PolygonParams(3, 1)))), 5)
        self.assertEqual(len(list(enumerate_angulations(self.p32))), 12)
        self.assertEqual(len(list(enumerate_angulations(PolygonParams(1, 3)))), 1)

    def test_enumerate_matches_brute_force(self):
        """Test enumeration against all non-crossing subsets."""
        for N, m in [(3, 1), (4, 1), (5, 1), (3, 2), (4, 2), (3, 3), (4, 3)]:
            p = PolygonParams(N, m)
            listed = [a.diagonal_set for a in enumerate_angulations(p)]
            self.assertEqual(len(listed), len(set(listed)))
            self.assertEqual(set(listed), brute_force(p))

    def test_enumerate_matches_fuss_catalan(self):
        """Test enumeration counts and validity."""
        for N in range(1, 7):
            for m in range(1, 4):
                p = PolygonParams(N, m)
                count = 0
                for a in enumerate_angulations(p):
                    self.assertEqual(len(a.cells), N)
                    count += 1
                self.assertEqual(count, fuss_catalan(N, m), p)

    def test_rotate(self):
        """Test rotation by one step and by a full turn."""
        a = angulation_from_pairs(self.hexagon, [(1, 4)])
        self.assertEqual(rotate(a).diagonals, (MDiagonal(3, 6),))
        for b in enumerate_angulations(self.p42):
            self.assertEqual(rotate(b, self.p42.V), b)
            turned = b
            for _ in range(self.p42.V):
                turned = rotate(turned)
            self.assertEqual(turned, b)

    def test_rotation_classes(self):
        """Test the rotation class counts."""
        self.assertEqual(count_rotation_classes(self.hexagon), 1)
        self.assertEqual(count_rotation_classes(self.p32), 2)
        self.assertEqual(count_rotation_classes(self.p42), 7)

    def test_rotation_class_key(self):
        """Test that keys are shared exactly within orbits."""
        for a in enumerate_angulations(self.p42):
            key = rotation_class_key(a)
            self.assertEqual(rotation_class_key(rotate(a, 3)), key)
            self.assertEqual(rotation_class_key(minimal_rotation(a)), key)
        fan = angulation_from_pairs(self.p42, [(1, 4), (1, 6), (1, 8)])
        zigzag = angulation_from_pairs(self.p42, [(1, 4), (4, 7), (1, 8)])
        self.assertNotEqual(rotation_class_key(fan), rotation_class_key(zigzag))


class MutationTests(GeometryTestMixin, SimpleTestCase):
    """Test suite for diagonal mutation and its quiver."""

    def test_hexagon_cycle(self):
        """Test the three diagonals of the hexagon in mutation order."""
        a = angulation_from_pairs(self.hexagon, [(1, 4)])
        once = mutate_at(a, MDiagonal(1, 4))
        self.assertEqual(once.diagonals, (MDiagonal(2, 5),))
        twice = mutate_at(once, MDiagonal(2, 5))
        self.assertEqual(twice.diagonals, (MDiagonal(3, 6),))
        self.assertEqual(mutate_at(twice, MDiagonal(3, 6)), a)

    def test_flip(self):
        """Test that m=1 mutation flips the square's diagonal."""
        a = angulation_from_pairs(PolygonParams(2, 1), [(1, 3)])
        self.assertEqual(mutate_at(a, MDiagonal(1, 3)).diagonals, (MDiagonal(2, 4),))

    def test_missing_diagonal(self):
        """Test mutation at a diagonal that is not there."""
        with self.assertRaises(DiagonalNotFoundError):
            mutate_at(self.fan, MDiagonal(2, 5))

    def test_periodicity(self):
        """Test that m+1 mutations in one slot give back the angulation."""
        for N, m in [(4, 1), (4, 2), (3, 3), (5, 1)]:
            for a in enumerate_angulations(PolygonParams(N, m)):
                for slot in range(len(a.diagonals)):
                    b = a
                    for _ in range(m + 1):
                        b = mutate_at(b, b.diagonals[slot])
                    self.assertEqual(b, a)

    def test_commutation(self):
        """Test quiver_of(mutate_at(a, d)) == mutate(quiver_of(a), slot of d)."""
        for N, m in [(3, 1), (4, 1), (3, 2), (4, 2), (3, 3), (4, 3)]:
            for a in enumerate_angulations(PolygonParams(N, m)):
                q = quiver_of(a)
                for slot, d in enumerate(a.diagonals):
                    with self.subTest(a=a, d=d):
                        self.assertEqual(quiver_of(mutate_at(a, d)), mutate(q, slot))

    def test_quiver_of_fan(self):
        """Test the colours of the fan quiver."""
        q = quiver_of(self.fan)
        self.assertEqual(q, ColouredQuiver.from_symmetric(2, 2, [(0, 1, 0)]))

    def test_quiver_of_single_diagonal(self):
        """Test that one diagonal gives one vertex and no arrows."""
        q = quiver_of(angulation_from_pairs(self.hexagon, [(2, 5)]))
        self.assertEqual(q, ColouredQuiver(2, 1, {}))

    def test_quiver_validity_and_colour_sum(self):
        """Test that every quiver is valid and colours pair to m."""
        for m in range(1, 4):
            for a in enumerate_angulations(PolygonParams(4, m)):
                q = quiver_of(a)
                self.assertTrue(validate_quiver(q).ok)
                for (i, j), arrow in q.arrows.items():
                    self.assertEqual(arrow.colour + q.colour(j, i), m)

    def test_rotation_preserves_quiver(self):
        """Test that rotation keeps the quiver, slot for slot."""
        for a in enumerate_angulations(self.p42):
            self.assertEqual(quiver_of(rotate(a)), quiver_of(a))

    def test_quiver_classes(self):
        """Test that quiver classes and rotation classes pair up."""
        self.assertEqual(len(quiver_classes_of_angulations(self.p42)), 7)
        angulations = list(enumerate_angulations(self.p42))
        keys = {a: canonical_key(quiver_of(a)) for a in angulations}
        for a in angulations:
            for b in angulations:
                self.assertEqual(
                    keys[a] == keys[b],
                    rotation_class_key(a) == rotation_class_key(b),
                )


class FactorExtendTests(GeometryTestMixin, SimpleTestCase):
    """Test suite for factoring out and extending at the border."""

    def test_factor_out_fan(self):
        """Test factoring the fan down to the hexagon."""
        reduced = factor_out(self.fan, MDiagonal(1, 4))
        self.assertEqual(reduced.params, self.hexagon)
        self.assertEqual(reduced.diagonals, (MDiagonal(1, 4),))

    def test_factor_out_not_close(self):
        """Test that an inner diagonal cannot be factored out."""
        zigzag = angulation_from_pairs(PolygonParams(4, 1), [(1, 3), (1, 4), (4, 6)])
        self.assertEqual(close_to_border(zigzag), [MDiagonal(1, 3), MDiagonal(4, 6)])
        with self.assertRaises(NotCloseToBorderError):
            factor_out(zigzag, MDiagonal(1, 4))

    def test_factor_out_lemma(self):
        """Test that factoring a diagonal removes its quiver vertex."""
        for N, m in [(3, 2), (4, 2), (4, 3), (5, 1)]:
            for a in enumerate_angulations(PolygonParams(N, m)):
                q = quiver_of(a)
                for d in close_to_border(a):
                    reduced = factor_out(a, d)
                    self.assertEqual(quiver_of(reduced), remove_vertex(q, a.slot(d)))

    def test_connectivity_lemma(self):
        """Test that removing a vertex keeps the quiver connected exactly for border-close diagonals."""
        for N, m in [(4, 2), (5, 1), (4, 3)]:
            for a in enumerate_angulations(PolygonParams(N, m)):
                q = quiver_of(a)
                close = set(close_to_border(a))
                for slot, d in enumerate(a.diagonals):
                    self.assertEqual(is_connected(remove_vertex(q, slot)), d in close)

    def test_extend_hexagon(self):
        """Test extending the hexagon at its first edge."""
        a = angulation_from_pairs(self.hexagon, [(1, 4)])
        extended = extend_at(a, (1, 2))
        self.assertEqual(extended.params, self.p32)
        self.assertEqual(extended.diagonals, (MDiagonal(1, 6), MDiagonal(1, 4)))
        self.assertIn(MDiagonal(1, 4), close_to_border(extended))

    def test_extend_wrapping_edge(self):
        """Test extending at the edge from V back to 1."""
        a = angulation_from_pairs(self.hexagon, [(1, 4)])
        extended = extend_at(a, (1, 6))
        self.assertEqual(extended.diagonals, (MDiagonal(1, 4), MDiagonal(1, 6)))

    def test_extend_rejects_non_edge(self):
        """Test that only border edges can be extended."""
        with self.assertRaises(NotBorderEdgeError):
            extend_at(self.fan, (1, 3))

    def test_round_trip(self):
        """Test factor_out(extend_at(a, e), e) == a."""
        for N, m in [(1, 2), (2, 2), (3, 2), (3, 3)]:
            p = PolygonParams(N, m)
            for a in enumerate_angulations(p):
                for edge in border_edges(p):
                    extended = extend_at(a, edge)
                    self.assertEqual(len(extended.diagonals), N)
                    self.assertEqual(factor_out(extended, extended.diagonals[-1]), a)

    def test_extension_lemma(self):
        """Test that two extensions have isomorphic quivers exactly when they are rotations."""
        for a in enumerate_angulations(self.p32):
            extensions = [extend_at(a, edge) for edge in border_edges(self.p32)]
            for first, second in combinations(extensions, 2):
                self.assertEqual(
                    canonical_key(quiver_of(first)) == canonical_key(quiver_of(second)),
                    rotation_class_key(first) == rotation_class_key(second),
                )


class RelationTests(GeometryTestMixin, SimpleTestCase):
    """Test suite for zero paths."""

    def test_central_triangle(self):
        """Test that every path around the central triangle is a zero path."""
        a = angulation_from_pairs(PolygonParams(4, 1), [(1, 3), (3, 5), (1, 5)])
        self.assertEqual(relations_of(a), {(0, 2, 1), (2, 1, 0), (1, 0, 2)})

    def test_fan(self):
        """Test that a fan has no zero paths."""
        a = angulation_from_pairs(PolygonParams(4, 1), [(1, 3), (1, 4), (1, 5)])
        self.assertEqual(relations_of(a), frozenset())

    def test_single_diagonal(self):
        """Test that one diagonal has no zero paths."""
        a = angulation_from_pairs(self.hexagon, [(1, 4)])
        self.assertEqual(relations_of(a), frozenset())


class AngulationSerializerTests(GeometryTestMixin, SimpleTestCase):
    """Test suite for the angulation documents."""

    def test_document(self):
        """Test reading and writing the JSON document."""
        serializer = AngulationDocumentSerializer(data={'N': 3, 'm': 2, 'diagonals': [[1, 4], [1, 6]]})
        self.assertTrue(serializer.is_valid(), serializer.errors)
        self.assertEqual(serializer.save(), self.fan)
        self.assertEqual(
            AngulationDocumentSerializer(self.fan).data,
            {'N': 3, 'm': 2, 'diagonals': [[1, 4], [1, 6]]},
        )

    def test_document_crossing(self):
        """Test that a crossing pair is reported on diagonals."""
        serializer = AngulationDocumentSerializer(data={'N': 3, 'm': 2, 'diagonals': [[1, 4], [2, 7]]})
        self.assertFalse(serializer.is_valid())
        self.assertIn('diagonals', serializer.errors)

    def test_document_bad_pair(self):
        """Test that each diagonal needs two labels."""
        serializer = AngulationDocumentSerializer(data={'N': 2, 'm': 2, 'diagonals': [[1, 4, 5]]})
        self.assertFalse(serializer.is_valid())

    def test_compact(self):
        """Test the compact text form."""
        serializer = CompactAngulationSerializer(data={'m': 2, 'diagonals': '1-4, 1-6'})
        self.assertTrue(serializer.is_valid(), serializer.errors)
        self.assertEqual(serializer.save(), self.fan)

    def test_compact_blank(self):
        """Test that a blank compact form is the single cell."""
        serializer = CompactAngulationSerializer(data={'m': 3, 'diagonals': ''})
        self.assertTrue(serializer.is_valid(), serializer.errors)
        self.assertEqual(serializer.save().params, PolygonParams(1, 3))

    def test_compact_garbage(self):
        """Test that malformed text is rejected."""
        serializer = CompactAngulationSerializer(data={'m': 2, 'diagonals': '1-4;2'})
        self.assertFalse(serializer.is_valid())
        self.assertIn('diagonals', serializer.errors)


def fuss_catalan_pairs(limit=10 ** 6, m_max=10):
    """Every (N, m) with m <= m_max whose angulation count is at most limit."""
    for m in range(1, m_max + 1):
        N = 1
        while fuss_catalan(N, m) <= limit:
            yield N, m
            N += 1


@tag('slow')
class AcceptanceRangeTests(SimpleTestCase):
    """Test suite for exhaustive enumeration over the full acceptance ranges."""

    def test_pairs(self):
        """Test the range boundaries."""
        pairs = set(fuss_catalan_pairs())
        self.assertIn((13, 1), pairs)
        self.assertNotIn((14, 1), pairs)
        self.assertIn((5, 10), pairs)
        self.assertIn((9, 2), pairs)
        self.assertNotIn((10, 2), pairs)

    def test_indecomposables(self):
        """Test the closed form against m-diagonal enumeration for n <= 20, m <= 6."""
        for n in range(1, 21):
            for m in range(1, 7):
                p = PolygonParams(n + 1, m)
                self.assertEqual(num_indecomposables(n, m), sum(1 for _ in enumerate_m_diagonals(p)), p)

    def test_enumeration_matches_fuss_catalan(self):
        """Test enumeration counts wherever the count is at most a million."""
        for N, m in fuss_catalan_pairs():
            p = PolygonParams(N, m)
            self.assertEqual(sum(1 for _ in enumerate_angulations(p)), fuss_catalan(N, m), p)

    def test_periodicity(self):
        """Test that m+1 mutations in one slot give back the angulation for N <= 5."""
        for N, m in fuss_catalan_pairs():
            if N > 5:
                continue
            for a in enumerate_angulations(PolygonParams(N, m)):
                for slot in range(len(a.diagonals)):
                    b = a
                    for _ in range(m + 1):
                        b = mutate_at(b, b.diagonals[slot])
                    self.assertEqual(b, a, f"{a!r} at slot {slot}")
