import unittest
import sys
sys.path.append('src')  # Adjust path to include the directory where the modules are located

from constructors import (Family, admissible_splits, compute_t7_params, construct, construct_h1, construct_h2,
                          construct_t1, construct_t2, construct_t3, construct_t7, construct_t8, count_t1_recipes,
                          enumerate_recipes, family_applies, make_recipe, parse_family, select_t8_case)
from errors import (BadCongruence, BadFactorization, CharacteristicTwo, ExponentOutOfRange, IndexOutOfRange,
                    NoMatchingCase, NotADivisor, NotAGenerator, NotCoprime, OddCofactor, UnsupportedFamily)
from ff_core import make_extension_field, make_prime_field
from sparse_poly import evaluate, format_poly


class TestQuarterFamilies(unittest.TestCase):
    def setUp(self):
        self.f13 = make_prime_field(13)
        self.g = self.f13.element(2)

    def test_t1_smallest_field(self):
        f5 = make_prime_field(5)
        self.assertEqual(format_poly(construct_t1(f5, f5.element(2), 0)), "4x")

    def test_t1(self):
        self.assertEqual(format_poly(construct_t1(self.f13, self.g, 0)), "6x^10 + 4x^4 + 7x")

    def test_t3_variants(self):
        self.assertEqual(format_poly(construct_t3(self.f13, self.g, 0, "a")), "5x^10 + 3x^7 + 5x^4 + 4x")
        self.assertEqual(format_poly(construct_t3(self.f13, self.g, 0, "b")), "x^10 + 10x^7 + 12x^4 + 4x")
        with self.assertRaises(UnsupportedFamily):
            construct_t3(self.f13, self.g, 0, "c")

    def test_t2_fixes_only_zero(self):
        poly = construct_t2(self.f13, self.g, 0)
        images = [evaluate(poly, x) for x in (self.f13.element(i) for i in range(13))]
        self.assertEqual([x for x in range(13) if images[x].index == x], [0])

    def test_bad_congruence(self):
        f7 = make_prime_field(7)
        with self.assertRaises(BadCongruence):
            construct_t1(f7, f7.element(3), 0)

    def test_characteristic_two(self):
        gf16 = make_extension_field(2, 4)
        with self.assertRaises(BadCongruence):
            construct_t1(gf16, gf16.element(2), 0)
        with self.assertRaises(CharacteristicTwo):
            construct_t7(gf16, 3, 5)

    def test_not_a_generator(self):
        with self.assertRaises(NotAGenerator):
            construct_t1(self.f13, self.f13.element(3), 0)

    def test_index_out_of_range(self):
        with self.assertRaises(IndexOutOfRange):
            construct_t2(self.f13, self.g, 3)
        with self.assertRaises(IndexOutOfRange):
            construct_t2(self.f13, self.g, -1)

    def test_constructions_vanish_at_zero(self):
        for recipe in (enumerate_recipes(self.f13, family)[0] for family in Family):
            poly = construct(recipe)
            self.assertEqual(evaluate(poly, self.f13.zero).index, 0)


class TestSubgroupFamilies(unittest.TestCase):
    def test_h1_h2_over_f7(self):
        f7 = make_prime_field(7)
        self.assertEqual(format_poly(construct_h1(f7, 2)), "4x^5 + 3x^4 + 4x^2 + 4x")
        self.assertEqual(format_poly(construct_h2(f7, 2)), "4x^5 + 4x^4 + 3x^2 + 4x")

    def test_h1_h2_over_f23(self):
        f23 = make_prime_field(23)
        self.assertEqual(format_poly(construct_h1(f23, 2)), "12x^21 + 11x^12 + 12x^10 + 12x")
        self.assertEqual(format_poly(construct_h2(f23, 2)), "12x^21 + 12x^12 + 11x^10 + 12x")

    def test_h1_h2_characteristic_two(self):
        gf16 = make_extension_field(2, 4)
        self.assertEqual(format_poly(construct_h1(gf16, 3)), "x^14 + x^11 + x^9 + x^6 + x^4")
        self.assertEqual(format_poly(construct_h2(gf16, 3)), "x^11 + x^9 + x^6 + x^4 + x")

    def test_full_inversion_divisor(self):
        f11 = make_prime_field(11)
        self.assertEqual(format_poly(construct_h1(f11, 1)), "x^9")

    def test_not_a_divisor(self):
        with self.assertRaises(NotADivisor):
            construct_h1(make_prime_field(7), 4)

    def test_trivial_subgroup_rejected(self):
        # d = q - 1 gives m = 1 and the terms x^0, x^(q-1)
        with self.assertRaises(ExponentOutOfRange):
            construct_h1(make_prime_field(7), 6)


class TestSplitFamilies(unittest.TestCase):
    def test_compute_t7_params(self):
        self.assertEqual(compute_t7_params(make_prime_field(13), 3, 4), (2, 2))
        self.assertEqual(compute_t7_params(make_prime_field(29), 7, 4), (2, 2))
        self.assertEqual(compute_t7_params(make_prime_field(17), 1, 16), (8, 2))
        self.assertEqual(compute_t7_params(make_prime_field(7), 3, 2), (1, 1))

    def test_compute_t7_params_errors(self):
        f13 = make_prime_field(13)
        with self.assertRaises(BadFactorization):
            compute_t7_params(f13, 5, 2)
        with self.assertRaises(NotCoprime):
            compute_t7_params(f13, 2, 6)
        with self.assertRaises(OddCofactor):
            compute_t7_params(f13, 4, 3)

    def test_t7(self):
        self.assertEqual(format_poly(construct_t7(make_prime_field(13), 3, 4)), "7x^11 + 6x^7 + 7x^5 + 7x")

    def test_t7_unit_k_inverts_squares(self):
        f7 = make_prime_field(7)
        poly = construct_t7(f7, 3, 2)
        self.assertEqual([evaluate(poly, f7.element(x)).index for x in range(7)], [0, 1, 4, 3, 2, 5, 6])

    def test_t8_case_selection(self):
        self.assertEqual(select_t8_case(make_prime_field(13), 3, 4), "m=1")
        self.assertEqual(select_t8_case(make_prime_field(61), 5, 12), "m=-1")
        self.assertEqual(select_t8_case(make_prime_field(7), 3, 2), "m=2")

    def test_t8(self):
        f13 = make_prime_field(13)
        self.assertEqual(format_poly(construct_t8(f13, 3, 4)), "6x^11 + 7x^7 + 7x^5 + 7x")
        self.assertEqual(format_poly(construct_t8(f13, 3, 4, printed=True)), "6x^11 + 7x^7 + 6x^5 + 7x")

    def test_t8_no_matching_case(self):
        # k = 16, 3 is not +-1 or +-2 modulo 16
        f_97 = make_prime_field(97)
        with self.assertRaises(NoMatchingCase):
            select_t8_case(f_97, 3, 32)

    def test_admissible_splits(self):
        self.assertEqual(admissible_splits(13), [(1, 12), (3, 4)])
        self.assertEqual(admissible_splits(41), [(1, 40), (5, 8)])
        self.assertEqual(admissible_splits(16), [])


class TestRecipes(unittest.TestCase):
    def setUp(self):
        self.f13 = make_prime_field(13)

    def test_parse_family(self):
        self.assertEqual(parse_family("t3", "a"), Family.T3A)
        self.assertEqual(parse_family("T3B"), Family.T3B)
        with self.assertRaises(UnsupportedFamily):
            parse_family("t3")
        with self.assertRaises(UnsupportedFamily):
            parse_family("t9")

    def test_make_recipe_records_parameters(self):
        recipe = make_recipe(Family.T1, self.f13, i=0)
        self.assertEqual(recipe.g.index, 2)
        self.assertEqual(recipe.params(), {"i": 0, "d": 3})
        self.assertEqual(recipe.alpha.index, 4)
        self.assertEqual(recipe.to_json(), {"family": "t1",
                                            "field": {"q": 13, "p": 13, "ext_deg": 1, "modulus": None},
                                            "g": 2, "params": {"i": 0, "d": 3}, "alpha": 4})

        recipe = make_recipe(Family.H1, self.f13, d=4)
        self.assertEqual(recipe.params(), {"d": 4, "m": 3})
        self.assertIsNone(recipe.alpha)

        recipe = make_recipe(Family.T8, self.f13, m=3, n=4, printed=True)
        self.assertEqual(recipe.params(), {"m": 3, "n": 4, "k": 2, "t8_case": "m=1", "printed": True})

    def test_make_recipe_errors(self):
        with self.assertRaises(NotAGenerator):
            make_recipe(Family.H1, self.f13, self.f13.element(3), d=4)
        with self.assertRaises(NotADivisor):
            make_recipe(Family.H2, self.f13, d=5)
        with self.assertRaises(IndexOutOfRange):
            make_recipe(Family.T1, self.f13)
        with self.assertRaises(BadFactorization):
            make_recipe(Family.T7, self.f13, m=3)

    def test_construct_dispatch(self):
        recipe = make_recipe(Family.T3B, self.f13, i=0)
        self.assertEqual(format_poly(construct(recipe)), "x^10 + 10x^7 + 12x^4 + 4x")

    def test_family_applies(self):
        self.assertTrue(family_applies(self.f13, Family.T1))
        self.assertFalse(family_applies(make_prime_field(7), Family.T1))
        self.assertTrue(family_applies(make_extension_field(2, 4), Family.H1))
        self.assertFalse(family_applies(make_extension_field(2, 4), Family.T7))

    def test_enumerate_recipes(self):
        self.assertEqual([r.i for r in enumerate_recipes(self.f13, Family.T2)], [0, 1, 2])
        self.assertEqual([r.d for r in enumerate_recipes(self.f13, Family.H1)], [1, 2, 3, 4, 6])
        self.assertEqual([(r.m, r.n) for r in enumerate_recipes(self.f13, Family.T7)], [(1, 12), (3, 4)])
        self.assertEqual(enumerate_recipes(make_prime_field(7), Family.T3A), [])

    def test_count_t1_recipes(self):
        self.assertEqual(count_t1_recipes(make_prime_field(41)), 10)
        self.assertEqual(count_t1_recipes(make_prime_field(7)), 0)

    def test_t3_counts_and_fixed_points(self):
        for q in (13, 41):
            field = make_prime_field(q)
            polys = [construct(recipe) for family in (Family.T3A, Family.T3B)
                     for recipe in enumerate_recipes(field, family)]
            self.assertEqual(len({format_poly(poly) for poly in polys}), (q - 1) // 2)
            for poly in polys:
                fixed = [x for x in range(q) if evaluate(poly, field.element(x)).index == x]
                self.assertEqual(len(fixed), (q + 1) // 2, format_poly(poly))

    def test_sort_key_orders_by_family_then_parameters(self):
        recipes = enumerate_recipes(self.f13, Family.H2) + enumerate_recipes(self.f13, Family.T1)
        ordered = sorted(recipes, key=lambda recipe: recipe.sort_key())
        self.assertEqual([(r.family, r.d if r.family == Family.H2 else r.i) for r in ordered][:4],
                         [(Family.T1, 0), (Family.T1, 1), (Family.T1, 2), (Family.H2, 1)])


if __name__ == '__main__':
    unittest.main()
