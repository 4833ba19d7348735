import unittest
from fractions import Fraction

from sympy import multiplicity, primefactors

from symcensus.dirichlet import (adelize, characters, decompose_p_part,
    dirichlet_conductor, DirichletCharacter, even_characters, units_group,
    ZERO)
from symcensus.local     import LocalFieldError

def by_order(modulus: int, order: int) -> DirichletCharacter:
    return next(chi for chi in characters(modulus) if chi.order() == order)

class UnitsGroupTest(unittest.TestCase):
    def test_mod_8(self):
        self.assertEqual(units_group(8).invariant_factors, (2, 2))
    def test_mod_3(self):
        self.assertEqual(units_group(3).invariant_factors, (2,))
    def test_mod_1(self):
        self.assertEqual(units_group(1).invariant_factors, ())
    def test_bad_modulus(self):
        with self.assertRaises(ValueError):
            units_group(0)

class DirichletCharacterTest(unittest.TestCase):
    def test_count(self):
        for N, phi in [(1, 1), (7, 6), (12, 4), (45, 24)]:
            self.assertEqual(len(list(characters(N))), phi)

    def test_even(self):
        self.assertEqual(len(list(even_characters(7))), 3)
        self.assertTrue(DirichletCharacter.trivial(7).is_even())

    def test_values(self):
        chi = by_order(5, 4)
        self.assertIs(chi(10), ZERO)
        self.assertFalse(chi(5))
        self.assertEqual(chi(1), 0)
        self.assertEqual(chi(4), Fraction(1, 2))
        self.assertEqual(chi(6), chi(1))

    def test_conductor(self):
        self.assertEqual(dirichlet_conductor(DirichletCharacter.trivial(9)), 1)
        self.assertEqual(by_order(9, 2).conductor(), 3)
        self.assertEqual(by_order(9, 3).conductor(), 9)
        self.assertEqual(by_order(9, 6).conductor(), 9)

    def test_lift(self):
        chi    = by_order(5, 4)
        lifted = chi.lift(15)
        self.assertEqual(lifted.conductor(), 5)
        self.assertEqual(lifted(7), chi(2))
        self.assertIs(lifted(3), ZERO)
        with self.assertRaises(ValueError):
            chi.lift(12)

    def test_arithmetic(self):
        chi = by_order(13, 12)
        self.assertTrue((chi ** 12).is_trivial())
        self.assertEqual(chi * chi.inverse(), DirichletCharacter.trivial(13))

class DecomposeTest(unittest.TestCase):
    def test_product(self):
        for epsilon in characters(45):
            p_part, rest = decompose_p_part(epsilon, 3)
            self.assertEqual(p_part.modulus, 9)
            self.assertEqual(rest.modulus, 5)
            self.assertEqual(p_part.lift(45) * rest.lift(45), epsilon)

    def test_not_dividing(self):
        with self.assertRaises(ValueError):
            decompose_p_part(DirichletCharacter.trivial(7), 3)

class AdelizeTest(unittest.TestCase):
    def test_p_2(self):
        with self.assertRaises(LocalFieldError):
            adelize(DirichletCharacter.trivial(8), 2)

    def test_uniformizer(self):
        chi     = by_order(5, 4)
        epsilon = DirichletCharacter.trivial(3).lift(15) * chi.lift(15)
        local   = adelize(epsilon, 3)
        self.assertEqual(local.uniformizer_value, chi(3))
        self.assertEqual(local.conductor_exponent(), 0)

    def test_inverse_unit_part(self):
        epsilon = by_order(9, 6)
        local   = adelize(epsilon, 3)
        self.assertEqual(local.exponent, 2)
        self.assertEqual(local.conductor_exponent(), 2)
        self.assertEqual(local.uniformizer_value, 0)
        for a in (1, 2, 4, 5, 7, 8):
            self.assertEqual(local.evaluate(0, a), -epsilon(a) % 1)
        self.assertEqual(local.as_local_character().conductor(), 2)

    def test_conductor_exponent(self):
        for N in range(3, 101):
            for p in primefactors(N):
                if p == 2:
                    continue
                for epsilon in characters(N):
                    local_part, _ = decompose_p_part(epsilon, p)
                    expected = multiplicity(p, dirichlet_conductor(local_part))
                    local    = adelize(epsilon, p)
                    self.assertEqual(local.conductor_exponent(), expected)
                    self.assertEqual(local.as_local_character().conductor(),
                        expected)
