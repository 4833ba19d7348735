import unittest
from fractions import Fraction

from sympy import divisor_count, divisors

from symcensus.modforms import (asymptotic_report, averaged_constant,
    dim_cusp, dim_new, dimension_record, dimension_table, gamma1_invariants,
    genus, leading_term, new_asymptotic_report, new_leading_term,
    trace_formula_dimension)

class GenusTest(unittest.TestCase):
    def test_small(self):
        for N in range(1, 11):
            self.assertEqual(genus(N), 0)
        self.assertEqual(genus(11), 1)
        self.assertEqual(genus(13), 2)
        self.assertEqual(genus(16), 2)

    def test_invariants(self):
        self.assertEqual(gamma1_invariants(1), (1, 1, 1, 1))
        self.assertEqual(gamma1_invariants(13), (84, 0, 0, 12))

class DimensionTest(unittest.TestCase):
    def test_level_one(self):
        self.assertEqual(dim_cusp(12, 1), 1)
        self.assertEqual(dim_cusp(4, 1), 0)
        self.assertEqual(dim_cusp(2, 1), 0)
        self.assertEqual(dim_cusp(24, 1), 2)

    def test_weight_two(self):
        self.assertEqual(dim_cusp(2, 11), 1)
        self.assertEqual(dim_new(2, 11), 1)
        self.assertEqual(dim_cusp(2, 22), 6)

    def test_known(self):
        self.assertEqual(dim_cusp(12, 13), 71)
        self.assertEqual(dim_new(12, 13), 69)
        self.assertEqual(dim_cusp(4, 9), 5)
        self.assertEqual(dim_cusp(8, 2), 1)
        self.assertEqual(dim_cusp(6, 3), 1)

    def test_odd_weight(self):
        with self.assertRaises(ValueError):
            dim_cusp(3, 5)
        with self.assertRaises(ValueError):
            dim_cusp(12, 0)

    def test_new_nonnegative(self):
        for k in (2, 4, 6):
            for N in range(1, 61):
                self.assertGreaterEqual(dim_new(k, N), 0)

    def test_new_old(self):
        for record in dimension_table([2, 4, 12], range(1, 41)):
            self.assertLessEqual(record.dim_new, record.dim_full)
        record = dimension_record(12, 11)
        self.assertEqual(record.dim_full, dim_cusp(12, 11))

    def test_new_old_identity(self):
        for k in (2, 4, 6, 8, 10, 12):
            for N in range(1, 301):
                total = sum(divisor_count(N // d) * dim_new(k, d)
                    for d in divisors(N))
                self.assertEqual(total, dim_cusp(k, N), f"k={k} N={N}")

class TraceFormulaTest(unittest.TestCase):
    def test_agrees(self):
        for k in (2, 4, 6, 8, 10, 12):
            for N in range(1, 61):
                self.assertEqual(trace_formula_dimension(k, N),
                    dim_cusp(k, N), f"k={k} N={N}")

class AsymptoticTest(unittest.TestCase):
    def test_leading_term(self):
        self.assertEqual(leading_term(12, 1), Fraction(11, 24))
        self.assertEqual(leading_term(4, 9), Fraction(1, 8) * Fraction(8, 9))
        self.assertEqual(new_leading_term(4, 3, 1),
            Fraction(1, 8) * Fraction(8, 9))
        self.assertEqual(new_leading_term(4, 3, 2),
            Fraction(1, 8) * Fraction(8, 9)**3)

    def test_primes(self):
        for row in asymptotic_report(4, [1009, 2003]) + asymptotic_report(12,
                [1009, 2003]):
            self.assertLess(row.relative_error, 0.01)

    def test_averaged(self):
        self.assertAlmostEqual(averaged_constant(12) * 3.14159265**2 / 6,
            11/24, places=5)

    def test_new(self):
        rows = new_asymptotic_report(12, 97, [1])
        self.assertLess(rows[0].relative_error, 0.02)
        self.assertEqual(rows[0].p, 97)
