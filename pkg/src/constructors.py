"""Constructors

This module builds each involution family from its explicit coefficient formulas and records the
parameters of every construction in a ConstructionRecipe.

Families and their stable identifiers:
    * t1  - trinomial with 0 as the only fixed point, q = 1 (mod 4)
    * t2  - quadrinomial with 0 as the only fixed point, q = 1 (mod 4)
    * t3a - quadrinomial with (q+1)/2 fixed points, a3 = a1
    * t3b - quadrinomial with (q+1)/2 fixed points, a2 = 1 - a0, a3 = -a1
    * h1  - 2d-term polynomial inverting mu_m and fixing its complement
    * h2  - the coefficient-reversed partner of h1, fixing mu_m and inverting its complement
    * t7  - quadrinomial with coefficients +-1/2, parameters nm = q - 1, k = n/2, t = 2/m (mod k)
    * t8  - four quadrinomials selected by m = +-1, +-2 (mod k)

Every construction yields canonical exponents in [1, q - 2]; anything else is rejected.
"""

from dataclasses import dataclass
from enum import Enum
from math import gcd
from typing import Dict, List, Optional, Tuple

from errors import (BadCongruence, BadFactorization, CharacteristicTwo, ExponentOutOfRange, IndexOutOfRange,
                    NoMatchingCase, NotADivisor, NotAGenerator, NotCoprime, OddCofactor, UnsupportedFamily,
                    UnverifiedParams)
from ff_core import (FieldElement, FieldSpec, divisors, elements, find_smallest_generator, inv, multiplicative_order,
                     power)
from sparse_poly import SparsePoly, canonicalize, evaluate


class Family(str, Enum):
    T1 = "t1"
    T2 = "t2"
    T3A = "t3a"
    T3B = "t3b"
    H1 = "h1"
    H2 = "h2"
    T7 = "t7"
    T8 = "t8"


FAMILY_ORDER = list(Family)
QUARTER_FAMILIES = (Family.T1, Family.T2, Family.T3A, Family.T3B)
SUBGROUP_FAMILIES = (Family.H1, Family.H2)
SPLIT_FAMILIES = (Family.T7, Family.T8)

# Tried in this order; the first congruence whose exponents fit in [1, q - 2] applies
T8_CASES = ("m=-1", "m=1", "m=2", "m=-2")


@dataclass(frozen=True)
class ConstructionRecipe:
    """Family identifier plus every parameter a construction depends on."""

    family: Family
    field: FieldSpec
    g: FieldElement
    i: Optional[int] = None
    d: Optional[int] = None
    m: Optional[int] = None
    n: Optional[int] = None
    k: Optional[int] = None
    t: Optional[int] = None
    t8_case: Optional[str] = None
    printed: bool = False

    @property
    def alpha(self) -> Optional[FieldElement]:
        """alpha = g^(4i+2), defined for the quarter families."""
        if self.i is None:
            return None
        return power(self.g, 4 * self.i + 2)

    def params(self) -> Dict[str, object]:
        """
            Collects the family parameters that are set, in a stable order.

            @return: Dictionary of parameter names and values.
        """
        names = ("i", "d", "m", "n", "k", "t", "t8_case")
        params = {name: getattr(self, name) for name in names if getattr(self, name) is not None}
        if self.printed:
            params["printed"] = True
        return params

    def sort_key(self) -> Tuple:
        family_rank = FAMILY_ORDER.index(self.family)
        if self.family in QUARTER_FAMILIES:
            return family_rank, (self.i,)
        if self.family in SUBGROUP_FAMILIES:
            return family_rank, (self.d,)
        return family_rank, (self.m, self.n)

    def to_json(self) -> Dict[str, object]:
        recipe = {"family": self.family.value, "field": self.field.describe(), "g": self.g.index}
        recipe["params"] = self.params()
        alpha = self.alpha
        if alpha is not None:
            recipe["alpha"] = alpha.index
        return recipe


def parse_family(name: str, variant: Optional[str] = None) -> Family:
    """
        Resolves a family name from the command line; "t3" needs a variant a or b.

        @param name: The family identifier.
        @param variant: Optional variant for t3.

        @return: The family.
    """
    name = name.strip().lower()
    if name == "t3":
        if variant is None or variant.lower() not in ("a", "b"):
            raise UnsupportedFamily("family t3 needs --variant a or b")
        name = f"t3{variant.lower()}"
    try:
        return Family(name)
    except ValueError:
        raise UnsupportedFamily(f"unknown family `{name}`")


# Shared checks

def _check_odd_characteristic(field: FieldSpec, family: str) -> None:
    if field.p == 2:
        raise CharacteristicTwo(f"{family} divides by 2, which is impossible in {field}")


def _check_quarter_params(field: FieldSpec, g: FieldElement, i: int) -> int:
    if field.q % 4 != 1:
        raise BadCongruence(f"q = {field.q} is not 1 (mod 4)")
    _check_odd_characteristic(field, "the construction")
    if g.owner != field or g.is_zero() or multiplicative_order(g) != field.q - 1:
        raise NotAGenerator(f"{g.index} is not a generator of {field}")
    d = (field.q - 1) // 4
    if not 0 <= i < d:
        raise IndexOutOfRange(f"i = {i} outside [0, {d})")
    return d


def _check_exponents(poly: SparsePoly) -> SparsePoly:
    q = poly.owner.q
    for exponent in poly.exponents():
        if not 1 <= exponent <= q - 2:
            raise ExponentOutOfRange(f"exponent {exponent} outside [1, {q - 2}] in {poly}")
    return poly


def _constant(field: FieldSpec, value: int) -> FieldElement:
    """Image of an integer in the prime subfield."""
    return FieldElement(field, value % field.p)


# Quarter families, q = 1 (mod 4)

def construct_t1(field: FieldSpec, g: FieldElement, i: int) -> SparsePoly:
    """
        Builds a2 x^(3d+1) + a1 x^(d+1) + a0 x with
        a0 = (alpha^2 + 1) / (2 alpha), a1 = (g^d + 1)(alpha^2 - 1) / (4 g^(4i+d+2)), a2 = g^d a1.

        @param field: The field, q = 1 (mod 4).
        @param g: A generator of the multiplicative group.
        @param i: Index in [0, (q-1)/4).

        @return: The canonical polynomial.
    """
    d = _check_quarter_params(field, g, i)
    one, two, four = field.one, _constant(field, 2), _constant(field, 4)
    alpha = power(g, 4 * i + 2)
    alpha_sq = alpha * alpha
    g_d = power(g, d)

    a0 = (alpha_sq + one) / (two * alpha)
    a1 = (g_d + one) * (alpha_sq - one) / (four * power(g, 4 * i + d + 2))
    a2 = g_d * a1
    return _check_exponents(canonicalize(field, [(3 * d + 1, a2), (d + 1, a1), (1, a0)]))


def construct_t2(field: FieldSpec, g: FieldElement, i: int) -> SparsePoly:
    """
        Builds a3 x^(3d+1) + a2 x^(2d+1) + a1 x^(d+1) + a0 x with the four coefficient formulas
        over the denominators 4 g^(4i+3) and 4 g^(4i+d+3).

        @param field: The field, q = 1 (mod 4).
        @param g: A generator of the multiplicative group.
        @param i: Index in [0, (q-1)/4).

        @return: The canonical polynomial.
    """
    d = _check_quarter_params(field, g, i)
    one, four = field.one, _constant(field, 4)
    alpha_sq = power(g, 2 * (4 * i + 2))
    g_sq = g * g
    g_d2 = power(g, d + 2)
    low = four * power(g, 4 * i + 3)
    high = four * power(g, 4 * i + d + 3)

    a0 = (g_sq + one) * (alpha_sq + one) / low
    a1 = (g_d2 + one) * (alpha_sq - one) / high
    a2 = (g_sq - one) * (alpha_sq + one) / low
    a3 = (g_d2 - one) * (alpha_sq - one) / high
    return _check_exponents(canonicalize(field, [(3 * d + 1, a3), (2 * d + 1, a2), (d + 1, a1), (1, a0)]))


def construct_t3(field: FieldSpec, g: FieldElement, i: int, variant: str) -> SparsePoly:
    """
        Builds a3 x^(3d+1) + a2 x^(2d+1) + a1 x^(d+1) + a0 x with (q+1)/2 fixed points.
        Variant a: a3 = a1; variant b: a2 = 1 - a0, a3 = -a1.

        @param field: The field, q = 1 (mod 4).
        @param g: A generator of the multiplicative group.
        @param i: Index in [0, (q-1)/4).
        @param variant: "a" or "b".

        @return: The canonical polynomial.
    """
    d = _check_quarter_params(field, g, i)
    one, four = field.one, _constant(field, 4)
    alpha = power(g, 4 * i + 2)
    four_alpha = four * alpha

    a0 = (alpha + one) * (alpha + one) / four_alpha
    if variant.lower() == "a":
        a1 = (alpha * alpha - one) / four_alpha
        a2 = (alpha - one) * (alpha - one) / four_alpha
        a3 = a1
    elif variant.lower() == "b":
        a1 = (alpha * alpha - one) / (four_alpha * power(g, d))
        a2 = one - a0
        a3 = -a1
    else:
        raise UnsupportedFamily(f"t3 variant must be a or b, got `{variant}`")

    return _check_exponents(canonicalize(field, [(3 * d + 1, a3), (2 * d + 1, a2), (d + 1, a1), (1, a0)]))


# Subgroup families, d | q - 1

def _subgroup_terms(field: FieldSpec, d: int) -> List[Tuple[int, FieldElement]]:
    """Terms of m * sum_{i<d} (x^(im+1) - x^((d-i)m-1))."""
    if d < 1 or (field.q - 1) % d != 0:
        raise NotADivisor(f"d = {d} does not divide q - 1 = {field.q - 1}")
    m = (field.q - 1) // d
    m_elem = _constant(field, m)
    terms = []
    for i in range(d):
        terms.append((i * m + 1, m_elem))
        terms.append(((d - i) * m - 1, -m_elem))
    return terms


def construct_h1(field: FieldSpec, d: int) -> SparsePoly:
    """
        Builds h1 = m * sum_{i=0}^{d-1} (x^(im+1) - x^((d-i)m-1)) + x with m = (q-1)/d.
        Works in every characteristic; m is taken modulo p.

        @param field: The field.
        @param d: A divisor of q - 1.

        @return: The canonical polynomial.
    """
    terms = _subgroup_terms(field, d) + [(1, field.one)]
    return _check_exponents(canonicalize(field, terms))


def construct_h2(field: FieldSpec, d: int) -> SparsePoly:
    """
        Builds h2 = x^(dm-1) + m * sum_{i=0}^{d-1} (x^((d-i)m-1) - x^(im+1)) with m = (q-1)/d.

        @param field: The field.
        @param d: A divisor of q - 1.

        @return: The canonical polynomial.
    """
    terms = [(exponent, -coeff) for exponent, coeff in _subgroup_terms(field, d)]
    terms.append((field.q - 2, field.one))
    return _check_exponents(canonicalize(field, terms))


# Split families, nm = q - 1

def compute_t7_params(field: FieldSpec, m: int, n: int) -> Tuple[int, int]:
    """
        Computes k = n/2 and the least positive t with t*m = 2 (mod k).

        @param field: The field.
        @param m: Odd cofactor.
        @param n: Even cofactor, n*m = q - 1.

        @return: The pair (k, t).
    """
    if m < 1 or n < 1 or m * n != field.q - 1:
        raise BadFactorization(f"{m} * {n} != q - 1 = {field.q - 1}")
    if gcd(m, n) != 1:
        raise NotCoprime(f"gcd({m}, {n}) = {gcd(m, n)}")
    if n % 2 != 0:
        raise OddCofactor(f"n = {n} is odd")
    if m % 2 != 1:
        raise BadFactorization(f"m = {m} is even")

    k = n // 2
    t = 2 * pow(m, -1, k) % k if k > 1 else 0
    return k, t if t > 0 else k


def _half_terms(field: FieldSpec, signed_exponents: List[Tuple[int, int]]) -> SparsePoly:
    half = inv(_constant(field, 2))
    terms = [(exponent, half if sign > 0 else -half) for sign, exponent in signed_exponents]
    return _check_exponents(canonicalize(field, terms))


def construct_t7(field: FieldSpec, m: int, n: int) -> SparsePoly:
    """
        Builds (1/2)(x^((k+t)m-1) - x^(km+1) + x^(tm-1) + x).

        @param field: The field, odd characteristic.
        @param m: Odd cofactor.
        @param n: Even cofactor, n*m = q - 1, gcd(m, n) = 1.

        @return: The canonical polynomial.
    """
    _check_odd_characteristic(field, "t7")
    k, t = compute_t7_params(field, m, n)
    poly = _half_terms(field, [(1, (k + t) * m - 1), (-1, k * m + 1), (1, t * m - 1), (1, 1)])

    # t = 1 is a convention when k = 1, so the result is checked pointwise
    if k == 1 and any(evaluate(poly, evaluate(poly, x)) != x for x in elements(field)):
        raise UnverifiedParams(f"t7 with k = 1 over {field} is not an involution")
    return poly


def _t8_signed_exponents(case: str, m: int, k: int, printed: bool) -> List[Tuple[int, int]]:
    if case == "m=-1":
        return [(1, (2 * k - 2) * m - 1), (1, k * m + 1), (-1, (k - 2) * m - 1), (1, 1)]
    if case == "m=1":
        # As printed the x^(2m-1) sign sends every g^(ni+mj) with j odd to 0
        return [(-1, (k + 2) * m - 1), (1, k * m + 1), (-1 if printed else 1, 2 * m - 1), (1, 1)]
    if case == "m=2":
        return [(1, (k + 1) * m - 1), (1, k * m + 1), (-1, m - 1), (1, 1)]
    return [(-1, (2 * k - 1) * m - 1), (1, k * m + 1), (1, (k - 1) * m - 1), (1, 1)]


def select_t8_case(field: FieldSpec, m: int, n: int) -> str:
    """
        Picks the first case, in the order m = -1, 1, 2, -2 (mod k), whose congruence holds and
        whose exponents all lie in [1, q - 2].

        @param field: The field.
        @param m: Odd cofactor.
        @param n: Even cofactor.

        @return: The case label.
    """
    k, _ = compute_t7_params(field, m, n)
    residues = {"m=-1": -1, "m=1": 1, "m=2": 2, "m=-2": -2}
    for case in T8_CASES:
        if (m - residues[case]) % k != 0:
            continue
        exponents = [exponent for _, exponent in _t8_signed_exponents(case, m, k, printed=False)]
        if all(1 <= exponent <= field.q - 2 for exponent in exponents):
            return case

    raise NoMatchingCase(f"m = {m} is not +-1 or +-2 modulo k = {k}")


def construct_t8(field: FieldSpec, m: int, n: int, printed: bool = False) -> SparsePoly:
    """
        Builds the quadrinomial of the case selected by m modulo k.
        With printed=True the m = 1 case keeps its printed (non-permuting) sign.

        @param field: The field, odd characteristic.
        @param m: Odd cofactor.
        @param n: Even cofactor, n*m = q - 1, gcd(m, n) = 1.
        @param printed: Reproduce the formula exactly as printed.

        @return: The canonical polynomial.
    """
    _check_odd_characteristic(field, "t8")
    case = select_t8_case(field, m, n)
    k, _ = compute_t7_params(field, m, n)
    return _half_terms(field, _t8_signed_exponents(case, m, k, printed))


# Recipes

def make_recipe(family: Family, field: FieldSpec, g: Optional[FieldElement] = None, i: Optional[int] = None,
                d: Optional[int] = None, m: Optional[int] = None, n: Optional[int] = None,
                printed: bool = False) -> ConstructionRecipe:
    """
        Validates the parameters of a family and records them in a recipe.
        The generator defaults to the smallest one and is recorded for every family.

        @param family: The family.
        @param field: The field.
        @param g: Optional generator.
        @param i: Index for t1, t2, t3a, t3b.
        @param d: Divisor for h1, h2.
        @param m: Odd cofactor for t7, t8.
        @param n: Even cofactor for t7, t8.
        @param printed: Use the printed t8 formula.

        @return: The recipe.
    """
    if g is None:
        g = find_smallest_generator(field)
    elif g.is_zero() or multiplicative_order(g) != field.q - 1:
        raise NotAGenerator(f"{g.index} is not a generator of {field}")

    if family in QUARTER_FAMILIES:
        if i is None:
            raise IndexOutOfRange(f"{family.value} needs an index i")
        quarter = _check_quarter_params(field, g, i)
        return ConstructionRecipe(family, field, g, i=i, d=quarter)

    if family in SUBGROUP_FAMILIES:
        if d is None or d < 1 or (field.q - 1) % d != 0:
            raise NotADivisor(f"d = {d} does not divide q - 1 = {field.q - 1}")
        return ConstructionRecipe(family, field, g, d=d, m=(field.q - 1) // d)

    if m is None or n is None:
        raise BadFactorization(f"{family.value} needs both m and n")
    _check_odd_characteristic(field, family.value)
    k, t = compute_t7_params(field, m, n)
    if family == Family.T7:
        return ConstructionRecipe(family, field, g, m=m, n=n, k=k, t=t)
    return ConstructionRecipe(family, field, g, m=m, n=n, k=k, t8_case=select_t8_case(field, m, n),
                              printed=printed)


def construct(recipe: ConstructionRecipe) -> SparsePoly:
    """
        Builds the polynomial a recipe describes.

        @param recipe: The recipe.

        @return: The canonical polynomial.
    """
    family = recipe.family
    if family == Family.T1:
        return construct_t1(recipe.field, recipe.g, recipe.i)
    if family == Family.T2:
        return construct_t2(recipe.field, recipe.g, recipe.i)
    if family == Family.T3A:
        return construct_t3(recipe.field, recipe.g, recipe.i, "a")
    if family == Family.T3B:
        return construct_t3(recipe.field, recipe.g, recipe.i, "b")
    if family == Family.H1:
        return construct_h1(recipe.field, recipe.d)
    if family == Family.H2:
        return construct_h2(recipe.field, recipe.d)
    if family == Family.T7:
        return construct_t7(recipe.field, recipe.m, recipe.n)
    return construct_t8(recipe.field, recipe.m, recipe.n, printed=recipe.printed)


def admissible_splits(q: int) -> List[Tuple[int, int]]:
    """
        Lists every (m, n) with nm = q - 1, m odd, n even and gcd(m, n) = 1, by ascending m.

        @param q: The field order (odd).

        @return: The splits.
    """
    if q % 2 == 0:
        return []
    return [(m, (q - 1) // m) for m in divisors(q - 1)
            if m % 2 == 1 and ((q - 1) // m) % 2 == 0 and gcd(m, (q - 1) // m) == 1]


def family_applies(field: FieldSpec, family: Family) -> bool:
    """Returns True if the family has at least one admissible parameter set over the field."""
    if family in QUARTER_FAMILIES:
        return field.q % 4 == 1
    if family in SUBGROUP_FAMILIES:
        return field.q >= 3
    return field.p != 2 and field.q > 3


def enumerate_recipes(field: FieldSpec, family: Family, g: Optional[FieldElement] = None) -> List[ConstructionRecipe]:
    """
        Builds every recipe of a family over a field: all i for the quarter families, every
        divisor d < q - 1 for h1/h2 and every admissible (m, n) split for t7/t8.

        @param field: The field.
        @param family: The family.
        @param g: Optional generator, defaults to the smallest one.

        @return: The recipes in parameter order.
    """
    if g is None:
        g = find_smallest_generator(field)
    if not family_applies(field, family):
        return []

    if family in QUARTER_FAMILIES:
        return [make_recipe(family, field, g, i=i) for i in range((field.q - 1) // 4)]

    if family in SUBGROUP_FAMILIES:
        # d = q - 1 gives m = 1, whose expansion carries x^0 and x^(q-1)
        return [make_recipe(family, field, g, d=d) for d in divisors(field.q - 1) if d < field.q - 1]

    recipes = []
    for m, n in admissible_splits(field.q):
        if family == Family.T8:
            try:
                select_t8_case(field, m, n)
            except NoMatchingCase:
                continue
        recipes.append(make_recipe(family, field, g, m=m, n=n))
    return recipes


def count_t1_recipes(field: FieldSpec) -> int:
    """Number of t1 recipes over a field, (q - 1)/4 when q = 1 (mod 4)."""
    return len(enumerate_recipes(field, Family.T1))
