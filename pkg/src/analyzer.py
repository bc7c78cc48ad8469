"""Analyzer

This module turns polynomials into permutation maps and checks every claimed property: bijectivity,
the involution law, fixed points and cycle type.

The behaviour oracles rebuild each family's permutation directly from the case descriptions of the
constructions (swaps of generator powers, subgroup inversions, square classes). They never evaluate
the polynomial, so a bug in the evaluator cannot confirm itself.
"""

import logging
from collections import Counter
from dataclasses import dataclass, field as dataclass_field
from functools import lru_cache
from math import gcd
from typing import Dict, FrozenSet, List, Optional, Tuple

import numpy as np

from constructors import ConstructionRecipe, Family
from errors import LimitExceeded, NotADivisor, NotAPermutation, UnsupportedFamily
from ff_core import (DlogTable, FieldElement, FieldSpec, dlog_table, find_smallest_generator, inv, power, vec_mul,
                     vec_power)
from sparse_poly import SparsePoly, evaluate_all, format_poly
from utils import get_q_limit

logger = logging.getLogger(__name__)

ORACLE_MATCH = "match"
ORACLE_MISMATCH = "mismatch"
ORACLE_DESCRIPTIVE = "descriptive"


@dataclass(frozen=True, eq=False)
class PermutationMap:
    """Total map index -> index over all q elements of a field."""

    owner: FieldSpec
    image: np.ndarray

    def __call__(self, index: int) -> int:
        return int(self.image[index])

    def __len__(self) -> int:
        return len(self.image)

    def __eq__(self, other) -> bool:
        if not isinstance(other, PermutationMap):
            return NotImplemented
        return self.owner == other.owner and np.array_equal(self.image, other.image)

    def to_list(self) -> List[int]:
        return self.image.tolist()


@dataclass(frozen=True)
class CycleType:
    """Multiset of cycle lengths as sorted (length, count) pairs."""

    counts: Tuple[Tuple[int, int], ...]

    def as_dict(self) -> Dict[int, int]:
        return dict(self.counts)

    def total(self) -> int:
        return sum(length * count for length, count in self.counts)

    def to_json(self) -> Dict[str, int]:
        return {str(length): count for length, count in self.counts}

    @classmethod
    def from_counts(cls, counts: Dict[int, int]) -> "CycleType":
        return cls(tuple(sorted((length, count) for length, count in counts.items() if count)))


@dataclass
class ClaimReport:
    """Observed and expected properties of one polynomial."""

    field: FieldSpec
    poly: SparsePoly
    is_permutation: bool
    is_involution: bool
    fixed_point_count: int
    fixed_points: List[int]
    cycle_type: Optional[CycleType]
    oracle: str
    family: Optional[Family] = None
    g: Optional[int] = None
    params: Dict[str, object] = dataclass_field(default_factory=dict)
    expected_fixed_points: Optional[int] = None
    expected_cycle_type: Optional[CycleType] = None
    first_mismatch: Optional[int] = None

    @property
    def passed(self) -> bool:
        """True when the map is an involution and every expectation and the oracle agree."""
        if not self.is_involution or self.oracle == ORACLE_MISMATCH:
            return False
        if self.expected_fixed_points is not None and self.fixed_point_count != self.expected_fixed_points:
            return False
        if self.expected_cycle_type is not None and self.cycle_type != self.expected_cycle_type:
            return False
        return True

    def to_json(self) -> Dict[str, object]:
        return {
            "family": self.family.value if self.family is not None else None,
            "q": self.field.q,
            "g": self.g,
            "params": self.params,
            "poly": format_poly(self.poly),
            "involution": self.is_involution,
            "fixed_points": self.fixed_point_count,
            "cycle_type": self.cycle_type.to_json() if self.cycle_type is not None else {},
            "oracle": self.oracle,
        }


@lru_cache(maxsize=64)
def _default_generator(field: FieldSpec) -> FieldElement:
    return find_smallest_generator(field)


def _table_for(field: FieldSpec, g: Optional[FieldElement] = None, q_limit: Optional[int] = None) -> DlogTable:
    limit = get_q_limit(q_limit)
    if field.q > limit:
        raise LimitExceeded(f"q = {field.q} exceeds the q-limit {limit}; exhaustive verification refused")
    return dlog_table(g if g is not None else _default_generator(field), limit)


def identity_map(field: FieldSpec) -> PermutationMap:
    return PermutationMap(field, np.arange(field.q, dtype=np.int64))


def permutation_map(f: SparsePoly, q_limit: Optional[int] = None) -> PermutationMap:
    """
        Evaluates f at all q elements.

        @param f: The polynomial.
        @param q_limit: Optional cap on q, defaults to the configured q-limit.

        @return: The evaluated map.
    """
    table = _table_for(f.owner, q_limit=q_limit)
    return PermutationMap(f.owner, evaluate_all(f, table))


def compose(outer: PermutationMap, inner: PermutationMap) -> PermutationMap:
    """Returns outer o inner."""
    return PermutationMap(outer.owner, outer.image[inner.image])


def is_permutation(m: PermutationMap) -> bool:
    return bool(np.all(np.bincount(m.image, minlength=len(m)) == 1))


def inverse_map(m: PermutationMap) -> PermutationMap:
    if not is_permutation(m):
        raise NotAPermutation(f"map over {m.owner} is not a bijection")

    image = np.empty_like(m.image)
    image[m.image] = np.arange(len(m))
    return PermutationMap(m.owner, image)


def is_involution(m: PermutationMap) -> bool:
    """
        Checks image[image[x]] = x for every x, which implies bijectivity.

        @param m: The map.

        @return: True if the map is an involution.
    """
    return bool(np.array_equal(m.image[m.image], np.arange(len(m))))


def fixed_points(m: PermutationMap) -> Tuple[int, List[int]]:
    indices = np.flatnonzero(m.image == np.arange(len(m))).tolist()
    return len(indices), indices


def cycle_type(m: PermutationMap) -> CycleType:
    """
        Decomposes a permutation into cycles with a visited-flag sweep.

        @param m: A bijective map.

        @return: The cycle type.
    """
    if not is_permutation(m):
        raise NotAPermutation(f"map over {m.owner} is not a bijection")

    if is_involution(m):
        fixed_count, _ = fixed_points(m)
        return CycleType.from_counts({1: fixed_count, 2: (len(m) - fixed_count) // 2})

    image = m.image.tolist()
    visited = [False] * len(image)
    lengths = Counter()
    for start in range(len(image)):
        if visited[start]:
            continue
        length = 0
        current = start
        while not visited[current]:
            visited[current] = True
            current = image[current]
            length += 1
        lengths[length] += 1
    return CycleType.from_counts(lengths)


def mu_subgroup(field: FieldSpec, m: int, q_limit: Optional[int] = None) -> FrozenSet[int]:
    """
        Computes mu_m = {a : a^m = 1} by an exhaustive power test.

        @param field: The field.
        @param m: A divisor of q - 1.
        @param q_limit: Optional cap on q.

        @return: The element indices of the subgroup.
    """
    if m < 1 or (field.q - 1) % m != 0:
        raise NotADivisor(f"m = {m} does not divide q - 1 = {field.q - 1}")

    table = _table_for(field, q_limit=q_limit)
    points = np.arange(field.q, dtype=np.int64)
    return frozenset(np.flatnonzero(vec_power(table, points, m) == 1).tolist())


def first_mismatch(a: PermutationMap, b: PermutationMap) -> Optional[int]:
    differing = np.flatnonzero(a.image != b.image)
    return int(differing[0]) if len(differing) else None


# Behaviour oracles

def oracle_is_constructive(recipe: ConstructionRecipe) -> bool:
    """The t8 cases m = 2 and m = -2 (mod k) have no pointwise description."""
    return recipe.family != Family.T8 or recipe.t8_case in ("m=-1", "m=1")


def _from_exponents(table: DlogTable, exponents: np.ndarray) -> np.ndarray:
    """Maps exponents of nonzero elements back to indices, keeping 0 fixed."""
    image = np.zeros(table.field.q, dtype=np.int64)
    image[1:] = table.exp[exponents[1:] % (table.field.q - 1)]
    return image


def _quarter_swap_oracle(recipe: ConstructionRecipe, table: DlogTable) -> np.ndarray:
    """
    t1 swaps g^(4k) <-> g^(4k+4i+2) and g^(4k+1) <-> g^(4k+4i+3);
    t2 swaps g^(4k) <-> g^(4(k+i)+3) and g^(4k+1) <-> g^(4(k+i)+2).
    """
    exponents = table.log
    residue = exponents % 4
    if recipe.family == Family.T1:
        shift = 4 * recipe.i + 2
        shifts = np.where(residue < 2, shift, -shift)
    else:
        shifts = np.select([residue == 0, residue == 1, residue == 2, residue == 3],
                           [4 * recipe.i + 3, 4 * recipe.i + 1, -(4 * recipe.i + 1), -(4 * recipe.i + 3)])
    return _from_exponents(table, exponents + shifts)


def _square_class_oracle(recipe: ConstructionRecipe, table: DlogTable) -> np.ndarray:
    """
    t3a fixes 0 and the non-squares; a square b goes to b*alpha if b^d = 1 and to b/alpha if b^d = -1.
    t3b fixes 0 and the squares; a non-square b goes to b*alpha if b^d = g^d and to b/alpha otherwise.
    """
    field = recipe.field
    points = np.arange(field.q, dtype=np.int64)
    alpha = recipe.alpha
    alpha_inv = inv(alpha)

    squares = vec_power(table, points, (field.q - 1) // 2) == 1
    b_to_d = vec_power(table, points, recipe.d)
    if recipe.family == Family.T3A:
        moving = squares
        forward = b_to_d == 1
    else:
        moving = ~squares & (points != 0)
        forward = b_to_d == power(recipe.g, recipe.d).index

    image = points.copy()
    times_alpha = vec_mul(table, points, np.full(field.q, alpha.index, dtype=np.int64))
    over_alpha = vec_mul(table, points, np.full(field.q, alpha_inv.index, dtype=np.int64))
    image[moving & forward] = times_alpha[moving & forward]
    image[moving & ~forward] = over_alpha[moving & ~forward]
    return image


def _subgroup_oracle(recipe: ConstructionRecipe, table: DlogTable) -> np.ndarray:
    """h1 inverts mu_m and fixes the rest; h2 fixes mu_m and inverts the rest; both fix 0."""
    field = recipe.field
    points = np.arange(field.q, dtype=np.int64)
    in_mu = vec_power(table, points, recipe.m) == 1
    inverses = vec_power(table, points, field.q - 2)
    if recipe.family == Family.H1:
        return np.where(in_mu, inverses, points)
    return np.where(in_mu | (points == 0), points, inverses)


def _split_oracle(recipe: ConstructionRecipe, table: DlogTable) -> np.ndarray:
    """
    Writes a nonzero element as g^(ni+mj), 0 <= i < m, 0 <= j < n. Every element with i = 0 is fixed.
    t7 sends g^(ni+mj) to g^(-ni+mj) when i > 0 and j is even, and fixes odd j;
    t8 (m = -1 or 1 mod k) does the same with the parities exchanged.
    """
    m, n = recipe.m, recipe.n
    exponents = table.log
    i_part = exponents * pow(n, -1, m) % m if m > 1 else np.zeros_like(exponents)
    j_part = exponents * pow(m, -1, n) % n
    moving_parity = 0 if recipe.family == Family.T7 else 1
    moving = (i_part > 0) & (j_part % 2 == moving_parity)
    mirrored = np.where(moving, -n * i_part + m * j_part, exponents)
    return _from_exponents(table, mirrored)


def behavior_oracle(recipe: ConstructionRecipe, q_limit: Optional[int] = None) -> PermutationMap:
    """
        Builds the permutation a recipe should realise from its case description, without
        evaluating any polynomial.

        @param recipe: The recipe; its generator fixes the descriptions.
        @param q_limit: Optional cap on q.

        @return: The oracle map.
    """
    if not oracle_is_constructive(recipe):
        raise UnsupportedFamily(f"no pointwise description for t8 case {recipe.t8_case}")

    table = _table_for(recipe.field, recipe.g, q_limit)
    if recipe.family in (Family.T1, Family.T2):
        image = _quarter_swap_oracle(recipe, table)
    elif recipe.family in (Family.T3A, Family.T3B):
        image = _square_class_oracle(recipe, table)
    elif recipe.family in (Family.H1, Family.H2):
        image = _subgroup_oracle(recipe, table)
    else:
        image = _split_oracle(recipe, table)
    return PermutationMap(recipe.field, image)


# Claims

def expected_claims(recipe: ConstructionRecipe) -> Tuple[int, CycleType]:
    """
        Closed-form fixed-point count and cycle type each family claims.

        @param recipe: The recipe.

        @return: The pair (fixed point count, cycle type).
    """
    q = recipe.field.q
    family = recipe.family
    if family in (Family.T1, Family.T2):
        fixed = 1
    elif family in (Family.T3A, Family.T3B):
        fixed = (q + 1) // 2
    elif family == Family.H1:
        # mu_m elements equal to their own inverse stay fixed
        self_inverse = 1 if recipe.field.p == 2 else gcd(2, recipe.m)
        fixed = q - recipe.m + self_inverse
    elif family == Family.H2:
        minus_one_outside = 1 if recipe.field.p != 2 and recipe.m % 2 == 1 else 0
        fixed = 1 + recipe.m + minus_one_outside
    else:
        fixed = (recipe.n * (recipe.m + 1) + 2) // 2

    return fixed, CycleType.from_counts({1: fixed, 2: (q - fixed) // 2})


def verify_claim(recipe: Optional[ConstructionRecipe], poly: SparsePoly,
                 q_limit: Optional[int] = None) -> ClaimReport:
    """
        Evaluates the polynomial over the whole field and compares the result with the family's
        claims and with the behaviour oracle.

        @param recipe: The recipe the polynomial claims to realise, or None for a bare polynomial.
        @param poly: The polynomial.
        @param q_limit: Optional cap on q.

        @return: The claim report.
    """
    poly_map = permutation_map(poly, q_limit)
    bijective = is_permutation(poly_map)
    involution = bijective and is_involution(poly_map)
    fixed_count, fixed_list = fixed_points(poly_map)

    report = ClaimReport(
        field=poly.owner,
        poly=poly,
        is_permutation=bijective,
        is_involution=involution,
        fixed_point_count=fixed_count,
        fixed_points=fixed_list,
        cycle_type=cycle_type(poly_map) if bijective else None,
        oracle=ORACLE_DESCRIPTIVE,
    )
    if recipe is None:
        return report

    report.family = recipe.family
    report.g = recipe.g.index
    report.params = recipe.params()
    report.expected_fixed_points, report.expected_cycle_type = expected_claims(recipe)

    if oracle_is_constructive(recipe):
        mismatch = first_mismatch(poly_map, behavior_oracle(recipe, q_limit))
        report.oracle = ORACLE_MATCH if mismatch is None else ORACLE_MISMATCH
        report.first_mismatch = mismatch

    if not report.passed:
        logger.warning("Claim check failed for %s over %s: %s", recipe.family.value, recipe.field,
                       format_poly(poly))
    return report
