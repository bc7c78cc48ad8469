import random
import unittest
import sys
sys.path.append('src')  # Adjust path to include the directory where the modules are located

import numpy as np

from errors import (DegreeMismatch, FieldDivisionByZero, FieldMismatch, IndexOutOfRange, LimitExceeded, NotAGenerator,
                    NotIrreducible, NotPrime)
from ff_core import (_build_dlog_table, add, default_modulus, divisors, dlog_table, element_coeffs,
                     element_from_coeffs, elements, factorize, find_smallest_generator, inv, is_irreducible, is_prime,
                     is_square, make_extension_field, make_field, make_prime_field, mul, multiplicative_order, neg,
                     parse_modulus, power, prime_power_decomposition, sub, vec_add, vec_mul, vec_neg, vec_power)


class TestIntegerHelpers(unittest.TestCase):
    def test_is_prime(self):
        self.assertEqual([n for n in range(30) if is_prime(n)], [2, 3, 5, 7, 11, 13, 17, 19, 23, 29])

    def test_factorize(self):
        self.assertEqual(factorize(40), ((2, 3), (5, 1)))
        self.assertEqual(factorize(1), ())
        self.assertEqual(factorize(1023), ((3, 1), (11, 1), (31, 1)))

    def test_divisors(self):
        self.assertEqual(divisors(12), [1, 2, 3, 4, 6, 12])

    def test_prime_power_decomposition(self):
        self.assertEqual(prime_power_decomposition(16), (2, 4))
        self.assertEqual(prime_power_decomposition(41), (41, 1))
        with self.assertRaises(NotPrime):
            prime_power_decomposition(40)


class TestFieldConstruction(unittest.TestCase):
    def test_prime_field(self):
        field = make_prime_field(41)
        self.assertEqual((field.p, field.ext_deg, field.q, field.modulus), (41, 1, 41, None))
        self.assertEqual(field.q_minus_1_factors, ((2, 3), (5, 1)))
        self.assertEqual(str(field), "F_41")

    def test_smallest_prime_field(self):
        self.assertEqual(make_prime_field(2).q, 2)

    def test_composite_order_rejected(self):
        with self.assertRaises(NotPrime):
            make_prime_field(40)

    def test_default_modulus(self):
        self.assertEqual(default_modulus(2, 4), (1, 1, 0, 0, 1))
        self.assertEqual(default_modulus(2, 2), (1, 1, 1))
        self.assertEqual(default_modulus(3, 2), (1, 0, 1))

    def test_extension_field_default_modulus(self):
        field = make_extension_field(2, 4)
        self.assertEqual(field.q, 16)
        self.assertEqual(field.modulus, (1, 1, 0, 0, 1))
        self.assertEqual(str(field), "GF(2^4)")

    def test_extension_field_supplied_modulus(self):
        field = make_extension_field(2, 4, [1, 0, 0, 1, 1])
        self.assertEqual(field.modulus, (1, 0, 0, 1, 1))

    def test_reducible_modulus_rejected(self):
        # x^4 + x^2 + 1 = (x^2 + x + 1)^2
        with self.assertRaises(NotIrreducible):
            make_extension_field(2, 4, [1, 0, 1, 0, 1])

    def test_modulus_degree_mismatch(self):
        with self.assertRaises(DegreeMismatch):
            make_extension_field(2, 4, [1, 1, 1])
        with self.assertRaises(DegreeMismatch):
            make_extension_field(2, 1)

    def test_is_irreducible(self):
        self.assertTrue(is_irreducible([1, 1, 1], 2))
        self.assertFalse(is_irreducible([1, 0, 1], 2))
        self.assertTrue(is_irreducible([1, 0, 1], 3))

    def test_parse_modulus(self):
        self.assertEqual(parse_modulus("1, 1, 0, 0, 1"), (1, 1, 0, 0, 1))

    def test_make_field_combinations(self):
        self.assertEqual(make_field(q=41).q, 41)
        self.assertEqual(make_field(q=16).modulus, (1, 1, 0, 0, 1))
        self.assertEqual(make_field(q=16, p=2, ext_deg=4).q, 16)
        self.assertEqual(make_field(p=2, modulus=[1, 0, 0, 1, 1]).q, 16)
        with self.assertRaises(DegreeMismatch):
            make_field(q=16, p=2, ext_deg=3)
        with self.assertRaises(NotPrime):
            make_field(q=40)


class TestScalarArithmetic(unittest.TestCase):
    def setUp(self):
        self.f41 = make_prime_field(41)
        self.gf16 = make_extension_field(2, 4)

    def test_add(self):
        self.assertEqual(add(self.f41.element(29), self.f41.element(22)).index, 10)
        self.assertEqual(add(self.gf16.element(3), self.gf16.element(3)).index, 0)
        f5 = make_prime_field(5)
        self.assertEqual(add(f5.element(4), f5.element(1)).index, 0)

    def test_neg_and_sub(self):
        self.assertEqual(neg(self.f41.element(1)).index, 40)
        self.assertEqual(neg(self.gf16.element(7)).index, 7)
        self.assertEqual(sub(self.f41.element(3), self.f41.element(5)).index, 39)

    def test_mul(self):
        self.assertEqual(mul(self.f41.element(6), self.f41.element(7)).index, 1)
        # x^3 * x = x^4 = x + 1
        self.assertEqual(mul(self.gf16.element(8), self.gf16.element(2)).index, 3)

    def test_operator_overloads(self):
        a, b = self.f41.element(6), self.f41.element(7)
        self.assertEqual((a * b).index, 1)
        self.assertEqual((a + b).index, 13)
        self.assertEqual((a - b).index, 40)
        self.assertEqual((-a).index, 35)
        self.assertEqual((a / a).index, 1)
        self.assertEqual((a ** 2).index, 36)

    def test_field_mismatch(self):
        with self.assertRaises(FieldMismatch):
            add(self.f41.element(1), self.gf16.element(1))

    def test_element_index_out_of_range(self):
        with self.assertRaises(IndexOutOfRange):
            self.f41.element(41)
        with self.assertRaises(IndexOutOfRange):
            self.gf16.element(-1)

    def test_inv(self):
        f23, f13 = make_prime_field(23), make_prime_field(13)
        self.assertEqual(inv(f23.element(2)).index, 12)
        self.assertEqual(inv(f13.element(8)).index, 5)
        with self.assertRaises(FieldDivisionByZero):
            inv(f13.zero)

    def test_power(self):
        f13 = make_prime_field(13)
        self.assertEqual(power(f13.element(2), 12).index, 1)
        self.assertEqual(power(f13.zero, 0).index, 1)
        self.assertEqual(power(f13.zero, 5).index, 0)
        self.assertEqual(power(f13.element(2), -1).index, 7)
        self.assertEqual(power(self.gf16.element(2), 15).index, 1)

    def test_element_coefficients(self):
        element = self.gf16.element(11)
        self.assertEqual(element_coeffs(element), [1, 1, 0, 1])
        self.assertEqual(element_from_coeffs(self.gf16, [1, 1, 0, 1]), element)
        # x^4 reduces to x + 1
        self.assertEqual(element_from_coeffs(self.gf16, [0, 0, 0, 0, 1]).index, 3)
        self.assertEqual(element_from_coeffs(self.f41, [45]).index, 4)

    def test_is_square(self):
        f13 = make_prime_field(13)
        squares = sorted(x.index for x in elements(f13) if is_square(x))
        self.assertEqual(squares, [0, 1, 3, 4, 9, 10, 12])
        self.assertTrue(all(is_square(x) for x in elements(self.gf16)))

    def test_field_axioms(self):
        rng = random.Random(20240601)
        for field in (self.f41, self.gf16, make_extension_field(3, 3)):
            for _ in range(200):
                a, b, c = (field.element(rng.randrange(field.q)) for _ in range(3))
                self.assertEqual(a + b, b + a)
                self.assertEqual(a * b, b * a)
                self.assertEqual((a + b) + c, a + (b + c))
                self.assertEqual((a * b) * c, a * (b * c))
                self.assertEqual(a * (b + c), a * b + a * c)
                self.assertEqual(a + (-a), field.zero)
                if not a.is_zero():
                    self.assertEqual(a * inv(a), field.one)


class TestGenerators(unittest.TestCase):
    def test_multiplicative_order(self):
        f41 = make_prime_field(41)
        self.assertEqual(multiplicative_order(f41.element(2)), 20)
        self.assertEqual(multiplicative_order(f41.element(3)), 8)
        self.assertEqual(multiplicative_order(f41.element(6)), 40)
        self.assertEqual(multiplicative_order(f41.one), 1)

    def test_find_smallest_generator(self):
        self.assertEqual(find_smallest_generator(make_prime_field(41)).index, 6)
        self.assertEqual(find_smallest_generator(make_prime_field(13)).index, 2)
        self.assertEqual(find_smallest_generator(make_prime_field(7)).index, 3)
        self.assertEqual(find_smallest_generator(make_extension_field(2, 4)).index, 2)

    def test_dlog_table(self):
        f13 = make_prime_field(13)
        table = dlog_table(f13.element(2))
        self.assertEqual(table.exp.tolist(), [1, 2, 4, 8, 3, 6, 12, 11, 9, 5, 10, 7])
        self.assertEqual(table[8], 3)
        self.assertEqual(len(table), 12)
        self.assertEqual(table.as_dict()[12], 6)
        with self.assertRaises(FieldDivisionByZero):
            table[0]
        with self.assertRaises(ValueError):
            table.log[1] = 5

    def test_dlog_table_cache_is_small(self):
        self.assertLessEqual(_build_dlog_table.cache_info().maxsize, 4)

    def test_dlog_table_rejects_non_generator(self):
        f13 = make_prime_field(13)
        with self.assertRaises(NotAGenerator):
            dlog_table(f13.element(3))
        with self.assertRaises(NotAGenerator):
            dlog_table(f13.zero)

    def test_dlog_table_limit(self):
        f41 = make_prime_field(41)
        with self.assertRaises(LimitExceeded):
            dlog_table(f41.element(6), q_limit=40)


class TestVectorisedHelpers(unittest.TestCase):
    def test_vectorised_ops_agree_with_scalar_ops(self):
        for field in (make_prime_field(13), make_extension_field(2, 4), make_extension_field(3, 2)):
            table = dlog_table(find_smallest_generator(field))
            points = np.arange(field.q, dtype=np.int64)
            shifted = (points * 5 + 3) % field.q
            sums = vec_add(field, points, shifted)
            products = vec_mul(table, points, shifted)
            negatives = vec_neg(field, points)
            cubes = vec_power(table, points, 3)
            for x in range(field.q):
                a, b = field.element(x), field.element(int(shifted[x]))
                self.assertEqual(int(sums[x]), (a + b).index)
                self.assertEqual(int(products[x]), (a * b).index)
                self.assertEqual(int(negatives[x]), (-a).index)
                self.assertEqual(int(cubes[x]), power(a, 3).index)

    def test_vec_power_zero_exponent(self):
        field = make_prime_field(7)
        table = dlog_table(find_smallest_generator(field))
        self.assertEqual(vec_power(table, np.arange(7), 0).tolist(), [1] * 7)

    def test_vec_power_huge_exponents(self):
        for field in (make_prime_field(41), make_extension_field(2, 4)):
            table = dlog_table(find_smallest_generator(field))
            points = np.arange(field.q, dtype=np.int64)
            for exponent in (400000000000000001, 10 ** 30 - 1, field.q - 1):
                powers = vec_power(table, points, exponent)
                expected = [power(a, exponent).index for a in elements(field)]
                self.assertEqual(powers.tolist(), expected, f"exponent {exponent} over {field}")


if __name__ == '__main__':
    unittest.main()
