"""Test suite for the closed-form counts."""
from fractions import Fraction
from unittest.mock import patch

from django.test import SimpleTestCase

from .formulas import (
    NonIntegralCountError,
    binomial,
    catalan,
    count_coloured_quivers,
    count_m1_specialization,
    euler_phi,
    f_coeff,
    fuss_catalan_tilting,
    h_correction_coeff,
    num_indecomposables,
    u_power_coeff,
)

# non-isomorphic coloured quivers in the m-mutation class of A_n, m = 1..4
KNOWN_COUNTS = {
    2: (1, 2, 2, 3),
    3: (4, 7, 12, 19),
    4: (6, 25, 57, 118),
    5: (19, 108, 366, 931),
    6: (49, 492, 2340, 7756),
    7: (150, 2431, 16252, 68685),
    8: (442, 12371, 115940, 630465),
    9: (1424, 65169, 854981, 5966610),
    10: (4522, 350792, 6444826, 57805410),
    11: (14924, 1926372, 49554420, 571178751),
    12: (49536, 10744924, 387203390, 5737638778),
    13: (167367, 60762760, 3068067060, 58455577800),
    14: (570285, 347653944, 24604111560, 602859152496),
    15: (1965058, 2009690895, 199398960212, 6283968796705),
    16: (6823410, 11723100775, 1631041938108, 66119469155523),
    17: (23884366, 68937782355, 13451978877748, 701526880303315),
    18: (84155478, 408323229930, 111765327780200, 7498841128986110),
    19: (298377508, 2434289046255, 934774244822704, 80696081185767000),
    20: (1063750740, 14598011263089, 7865200653146910, 873654669882575000),
}


class ArithmeticTests(SimpleTestCase):
    """Test suite for the arithmetic helpers."""

    def test_binomial(self):
        """Test binomial values and the out-of-range convention."""
        self.assertEqual(binomial(9, 2), 36)
        self.assertEqual(binomial(7, 0), 1)
        self.assertEqual(binomial(6, 7), 0)
        self.assertEqual(binomial(6, -1), 0)

    def test_euler_phi(self):
        """Test the totient against counting units."""
        self.assertEqual(euler_phi(1), 1)
        self.assertEqual(euler_phi(2), 1)
        self.assertEqual(euler_phi(12), 4)
        for d in range(1, 60):
            units = sum(1 for k in range(1, d + 1) if Fraction(k, d).denominator == d)
            self.assertEqual(euler_phi(d), units)

    def test_euler_phi_rejects_zero(self):
        """Test the precondition."""
        with self.assertRaises(ValueError):
            euler_phi(0)

    def test_catalan(self):
        """Test the first Catalan numbers."""
        self.assertEqual([catalan(i) for i in range(7)], [1, 1, 2, 5, 14, 42, 132])


class IndecomposableTests(SimpleTestCase):
    """Test suite for indecomposable and tilting object counts."""

    def test_num_indecomposables(self):
        """Test the listed values."""
        self.assertEqual(num_indecomposables(1, 5), 6)
        self.assertEqual(num_indecomposables(3, 1), 9)
        self.assertEqual(num_indecomposables(3, 2), 15)

    def test_fuss_catalan_tilting(self):
        """Test tilting object counts, including the Catalan case."""
        for m in range(1, 6):
            self.assertEqual(fuss_catalan_tilting(1, m), m + 1)
        self.assertEqual(fuss_catalan_tilting(2, 2), 12)
        self.assertEqual(fuss_catalan_tilting(3, 1), 14)
        self.assertEqual([fuss_catalan_tilting(n, 1) for n in range(1, 6)], [2, 5, 14, 42, 132])

    def test_preconditions(self):
        """Test that n and m must be positive."""
        with self.assertRaises(ValueError):
            fuss_catalan_tilting(0, 1)
        with self.assertRaises(ValueError):
            num_indecomposables(2, 0)


class SeriesTests(SimpleTestCase):
    """Test suite for the generating-function coefficients."""

    def test_u_power_coeff(self):
        """Test the listed coefficients."""
        self.assertEqual(u_power_coeff(3, 1, 2), 2)
        self.assertEqual(u_power_coeff(4, 2, 3), 6)
        self.assertEqual(u_power_coeff(5, 3, 3), 1)
        self.assertEqual(u_power_coeff(5, 3, 2), 0)

    def test_u_power_coeff_is_convolution(self):
        """Test U_s^t against repeated convolution of the t=1 series."""
        for s in range(3, 7):
            base = [0] + [u_power_coeff(s, 1, i) for i in range(1, 13)]
            power = base
            for t in range(1, 5):
                if t > 1:
                    power = [
                        sum(power[a] * base[i - a] for a in range(i + 1))
                        for i in range(13)
                    ]
                for i in range(1, 13):
                    self.assertEqual(u_power_coeff(s, t, i), power[i], (s, t, i))

    def test_f_coeff(self):
        """Test clusters rooted at a cell."""
        self.assertEqual(f_coeff(4, 3), 5)
        self.assertEqual(f_coeff(3, 3), 3)
        for s in range(3, 8):
            self.assertEqual(f_coeff(s, 1), 1)

    def test_h_correction_coeff(self):
        """Test the correction term."""
        self.assertEqual(h_correction_coeff(4, 3), 3)
        self.assertEqual(h_correction_coeff(5, 1), 0)
        self.assertEqual(h_correction_coeff(3, 2), 0)


class ColouredQuiverCountTests(SimpleTestCase):
    """Test suite for the number of coloured quivers."""

    def test_table(self):
        """Test every entry of the known table."""
        self.assertEqual(sum(len(row) for row in KNOWN_COUNTS.values()), 76)
        for n, row in KNOWN_COUNTS.items():
            for m, expected in enumerate(row, start=1):
                with self.subTest(n=n, m=m):
                    self.assertEqual(count_coloured_quivers(n, m), expected)

    def test_rank_one(self):
        """Test that A_1 has a single quiver for every m."""
        for m in range(1, 6):
            self.assertEqual(count_coloured_quivers(1, m), 1)

    def test_cross_route(self):
        """Test the closed form against f - h."""
        for n in range(1, 41):
            for m in range(1, 9):
                expected = f_coeff(m + 2, n + 1) - h_correction_coeff(m + 2, n + 1)
                self.assertEqual(count_coloured_quivers(n, m), expected, (n, m))

    def test_m1_specialization(self):
        """Test the Catalan expression for m=1."""
        self.assertEqual(count_m1_specialization(2), 1)
        self.assertEqual(count_m1_specialization(3), 4)
        self.assertEqual(count_m1_specialization(7), 150)
        for n in range(2, 41):
            self.assertEqual(count_m1_specialization(n), count_coloured_quivers(n, 1))

    def test_m1_specialization_range(self):
        """Test the precondition n >= 2."""
        with self.assertRaises(ValueError):
            count_m1_specialization(1)

    def test_non_integral_is_reported(self):
        """Test that a broken term surfaces as NonIntegralCountError."""
        def flat(a, b):
            return 1 if 0 <= b <= a else 0

        with patch('counting.formulas.binomial', side_effect=flat):
            with self.assertRaises(NonIntegralCountError):
                count_coloured_quivers(2, 2)
