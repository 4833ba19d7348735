import unittest
from collections import Counter
from fractions import Fraction
from math import gcd

from symcensus.abelian import (char_inverse, char_mul, char_order, char_pow,
    FiniteAbelianGroup, FreePartError, group_from_multiplication, GroupError,
    MismatchedGroupError, orthogonality_sum, RelationPresentation,
    smith_normal_form)

def units_mod(n: int):
    return group_from_multiplication(
        [a for a in range(1, n) if Fraction(a, n).denominator == n],
        lambda a, b: a*b % n, name=f"(Z/{n})^x")

class SmithFormTest(unittest.TestCase):
    def test_coprime_diagonal(self):
        smith = smith_normal_form([[2, 0], [0, 3]])
        self.assertEqual(smith.invariant_factors, (6,))
        self.assertEqual(smith.free_rank, 0)

    def test_diagonal(self):
        smith = smith_normal_form([[6, 0], [0, 10]])
        self.assertEqual(smith.invariant_factors, (2, 30))

    def test_chain(self):
        smith = smith_normal_form([[2, 4, 4], [-6, 6, 12], [10, -4, -16]])
        self.assertEqual(smith.invariant_factors, (2, 6, 12))

    def test_free_part(self):
        smith = smith_normal_form([[2, 0]], 2)
        self.assertEqual(smith.free_rank, 1)
        with self.assertRaises(FreePartError):
            RelationPresentation([[2, 0]], 2)

    def test_product(self):
        matrix = [[4, 6], [6, 4]]
        smith  = smith_normal_form(matrix)
        left, right = smith.left, smith.right
        product = [[sum(left[i][k] * matrix[k][l] * right[l][j]
            for k in range(2) for l in range(2)) for j in range(2)]
            for i in range(2)]
        self.assertEqual(product, [[smith.diagonal[0], 0],
            [0, smith.diagonal[1]]])

class GroupTest(unittest.TestCase):
    def test_units_mod_8(self):
        self.assertEqual(units_mod(8).invariant_factors, (2, 2))
    def test_units_mod_3(self):
        self.assertEqual(units_mod(3).invariant_factors, (2,))
    def test_units_mod_15(self):
        group = units_mod(15)
        self.assertEqual(group.invariant_factors, (2, 4))
        self.assertEqual(group.order, 8)
        self.assertEqual(group.exponent, 4)

    def test_dlog_bijection(self):
        group = units_mod(21)
        vectors = {group.dlog(a) for a in group.dlog_table}
        self.assertEqual(len(vectors), group.order)
        for a in group.dlog_table:
            self.assertEqual(group.element(group.dlog(a)), a)

    def test_dlog_homomorphism(self):
        group = units_mod(20)
        for a in group.dlog_table:
            for b in group.dlog_table:
                total = [x + y for x, y in zip(group.dlog(a), group.dlog(b))]
                self.assertEqual(group.dlog(a*b % 20), group.reduce(total))

    def test_not_closed(self):
        with self.assertRaises(GroupError):
            group_from_multiplication([1, 2], lambda a, b: a*b % 5)

    def test_not_member(self):
        with self.assertRaises(GroupError):
            units_mod(8).dlog(2)

    def test_bad_factors(self):
        with self.assertRaises(GroupError):
            FiniteAbelianGroup([4, 6])

class CharacterTest(unittest.TestCase):
    def test_count(self):
        group = units_mod(15)
        self.assertEqual(len(list(group.characters())), 8)
        self.assertEqual(len(set(group.characters())), 8)

    def test_arithmetic(self):
        group = FiniteAbelianGroup([2, 6])
        chi = group.character([Fraction(1, 2), Fraction(1, 3)])
        psi = group.character([0, Fraction(1, 2)])
        self.assertEqual(char_order(chi), 6)
        self.assertEqual(char_mul(chi, psi).images,
            (Fraction(1, 2), Fraction(5, 6)))
        self.assertTrue(char_pow(chi, 6).is_trivial())
        self.assertTrue(char_mul(chi, char_inverse(chi)).is_trivial())
        self.assertEqual(chi((1, 1)), Fraction(5, 6))

    def test_bad_image(self):
        group = FiniteAbelianGroup([2, 6])
        with self.assertRaises(GroupError):
            group.character([Fraction(1, 3), 0])
        with self.assertRaises(GroupError):
            group.character([0])

    def test_mismatched(self):
        first  = FiniteAbelianGroup([2], name="A")
        second = FiniteAbelianGroup([2], name="B")
        with self.assertRaises(MismatchedGroupError):
            first.trivial_character() * second.trivial_character()

    def test_orthogonality(self):
        group = FiniteAbelianGroup([2, 4])
        chars = list(group.characters())
        self.assertEqual(orthogonality_sum(chars, (0, 0)), 8)
        for vector in group.vectors():
            if any(vector):
                self.assertEqual(orthogonality_sum(chars, vector), 0)

def chains(bound: int, step: int = 1):
    # invariant factor chains d1 | d2 | ... with product <= bound
    yield ()
    for d in range(step, bound + 1, step):
        if d < 2:
            continue
        for rest in chains(bound // d, d):
            yield (d,) + rest

def element_order(vector, factors) -> int:
    order = 1
    for v, d in zip(vector, factors):
        local = d // gcd(v, d)
        order = order * local // gcd(order, local)
    return order

class DualGroupTest(unittest.TestCase):
    def test_invariant_factors(self):
        for factors in [(2,), (2, 2), (2, 4), (2, 2, 2), (3, 6), (6, 12),
                (2, 10, 10), (10, 20), (200,)]:
            group = FiniteAbelianGroup(factors)
            dual  = group_from_multiplication(list(group.characters()),
                char_mul, identity=group.trivial_character(), check=False)
            self.assertEqual(dual.invariant_factors, factors)

    def test_orders(self):
        for factors in chains(200):
            if not factors:
                continue
            group = FiniteAbelianGroup(factors)
            chars = Counter()
            for chi in group.characters():
                order = char_order(chi)
                self.assertTrue(char_pow(chi, order).is_trivial())
                chars[order] += 1
            elements = Counter(element_order(v, factors)
                for v in group.vectors())
            self.assertEqual(chars, elements, factors)
