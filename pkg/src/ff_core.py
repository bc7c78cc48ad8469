"""Finite Field Core

This module implements exact arithmetic in F_q for prime and prime-power q.

Every element is identified by a canonical integer index in [0, q): the residue itself in a
prime field, and the base-p packing sum(c_i * p^i) of the coefficient vector in the polynomial
basis of the modulus in an extension field. Index 0 is the additive identity, index 1 the
multiplicative identity.

Besides scalar arithmetic the module builds discrete logarithm tables and offers vectorised
helpers working on numpy arrays of indices, which the analyzer uses for whole-field sweeps.
"""

import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from errors import (DegreeMismatch, FieldDivisionByZero, FieldMismatch, IndexOutOfRange, LimitExceeded, NotAGenerator,
                    NotIrreducible, NotPrime)
from utils import get_q_limit

logger = logging.getLogger(__name__)


# Integer helpers

def is_prime(n: int) -> bool:
    """
        Deterministic primality check by trial division.

        @param n: The integer to test.

        @return: True if n is prime.
    """
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    divisor = 3
    while divisor * divisor <= n:
        if n % divisor == 0:
            return False
        divisor += 2
    return True


def factorize(n: int) -> Tuple[Tuple[int, int], ...]:
    """
        Factorizes a positive integer by trial division.

        @param n: The integer to factorize (n >= 1).

        @return: Tuple of (prime, multiplicity) pairs in ascending prime order.
    """
    factors = []
    divisor = 2
    while divisor * divisor <= n:
        multiplicity = 0
        while n % divisor == 0:
            n //= divisor
            multiplicity += 1
        if multiplicity:
            factors.append((divisor, multiplicity))
        divisor += 1 if divisor == 2 else 2
    if n > 1:
        factors.append((n, 1))
    return tuple(factors)


def divisors(n: int) -> List[int]:
    """Returns all positive divisors of n in ascending order."""
    result = [1]
    for prime, multiplicity in factorize(n):
        result = [d * prime ** power for d in result for power in range(multiplicity + 1)]
    return sorted(result)


def prime_power_decomposition(q: int) -> Tuple[int, int]:
    """
        Writes q as p^k with p prime.

        @param q: The field order.

        @return: The pair (p, k).
    """
    factors = factorize(q) if q >= 2 else ()
    if len(factors) != 1:
        raise NotPrime(f"{q} is not a prime power")
    return factors[0]


# Dense polynomials over F_p, ascending coefficient lists

def _poly_trim(a: List[int]) -> List[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_sub(a: List[int], b: List[int], p: int) -> List[int]:
    size = max(len(a), len(b))
    result = [((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p for i in range(size)]
    return _poly_trim(result)


def _poly_mul(a: List[int], b: List[int], p: int) -> List[int]:
    if not a or not b:
        return []
    result = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                result[i + j] = (result[i + j] + ai * bj) % p
    return _poly_trim(result)


def _poly_mod(a: List[int], m: List[int], p: int) -> List[int]:
    a = _poly_trim(list(a))
    lead_inv = pow(m[-1], p - 2, p)
    deg_m = len(m) - 1
    while len(a) - 1 >= deg_m and a:
        factor = a[-1] * lead_inv % p
        shift = len(a) - 1 - deg_m
        for i, mi in enumerate(m):
            a[shift + i] = (a[shift + i] - factor * mi) % p
        _poly_trim(a)
    return a


def _poly_gcd(a: List[int], b: List[int], p: int) -> List[int]:
    a, b = _poly_trim(list(a)), _poly_trim(list(b))
    while b:
        a, b = b, _poly_mod(a, b, p)
    return a


def _poly_powmod(base: List[int], exponent: int, m: List[int], p: int) -> List[int]:
    result = [1]
    base = _poly_mod(base, m, p)
    while exponent:
        if exponent & 1:
            result = _poly_mod(_poly_mul(result, base, p), m, p)
        base = _poly_mod(_poly_mul(base, base, p), m, p)
        exponent >>= 1
    return result


def is_irreducible(coeffs: Sequence[int], p: int) -> bool:
    """
        Ben-Or irreducibility test: f is irreducible iff gcd(f, x^(p^i) - x) = 1 for i <= deg(f)/2.

        @param coeffs: Ascending coefficient list of the polynomial.
        @param p: The prime characteristic.

        @return: True if the polynomial is irreducible over F_p.
    """
    f = _poly_trim([c % p for c in coeffs])
    degree = len(f) - 1
    if degree <= 0:
        return False

    power = [0, 1]
    for _ in range(degree // 2):
        power = _poly_powmod(power, p, f, p)
        if len(_poly_gcd(f, _poly_sub(power, [0, 1], p), p)) != 1:
            return False
    return True


def parse_modulus(text: str) -> Tuple[int, ...]:
    """
        Parses a modulus given as comma separated ascending coefficients, e.g. "1,1,0,0,1".

        @param text: The modulus text.

        @return: The coefficient tuple.
    """
    try:
        return tuple(int(part) for part in text.replace(" ", "").strip("[]").split(","))
    except ValueError:
        raise DegreeMismatch(f"modulus must be a comma separated coefficient list, got `{text}`")


# Fields and elements

@dataclass(frozen=True)
class FieldSpec:
    """A finite field F_q, q = p^ext_deg, with its modulus and the factorization of q - 1."""

    p: int
    ext_deg: int
    q: int
    modulus: Optional[Tuple[int, ...]]
    q_minus_1_factors: Tuple[Tuple[int, int], ...]

    @property
    def is_prime_field(self) -> bool:
        return self.ext_deg == 1

    @property
    def zero(self) -> "FieldElement":
        return FieldElement(self, 0)

    @property
    def one(self) -> "FieldElement":
        return FieldElement(self, 1)

    def element(self, index: int) -> "FieldElement":
        return FieldElement(self, index)

    def describe(self) -> Dict[str, object]:
        """
            Builds the JSON description of the field used in recipes and catalogs.

            @return: Dictionary with q, p, ext_deg and modulus.
        """
        return {
            "q": self.q,
            "p": self.p,
            "ext_deg": self.ext_deg,
            "modulus": list(self.modulus) if self.modulus is not None else None,
        }

    def __str__(self) -> str:
        if self.is_prime_field:
            return f"F_{self.q}"
        return f"GF({self.p}^{self.ext_deg})"


@dataclass(frozen=True)
class FieldElement:
    """One value of a finite field, identified by its canonical index."""

    owner: FieldSpec
    index: int

    def __post_init__(self):
        if not 0 <= self.index < self.owner.q:
            raise IndexOutOfRange(f"element index {self.index} outside [0, {self.owner.q})")

    def is_zero(self) -> bool:
        return self.index == 0

    def __add__(self, other: "FieldElement") -> "FieldElement":
        return add(self, other)

    def __sub__(self, other: "FieldElement") -> "FieldElement":
        return sub(self, other)

    def __mul__(self, other: "FieldElement") -> "FieldElement":
        return mul(self, other)

    def __truediv__(self, other: "FieldElement") -> "FieldElement":
        return div(self, other)

    def __neg__(self) -> "FieldElement":
        return neg(self)

    def __pow__(self, exponent: int) -> "FieldElement":
        return power(self, exponent)

    def __int__(self) -> int:
        return self.index

    def __str__(self) -> str:
        return str(self.index)

    def __repr__(self) -> str:
        return f"FieldElement({self.index} in {self.owner})"


def make_prime_field(p: int) -> FieldSpec:
    """
        Creates the prime field F_p.

        @param p: The prime order.

        @return: The field specification.
    """
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")

    return FieldSpec(p=p, ext_deg=1, q=p, modulus=None, q_minus_1_factors=factorize(p - 1))


def default_modulus(p: int, ext_deg: int) -> Tuple[int, ...]:
    """
        Finds the monic irreducible polynomial of degree ext_deg with the smallest integer
        encoding (coefficients read as base-p digits, constant term least significant).

        @param p: The prime characteristic.
        @param ext_deg: The extension degree.

        @return: Ascending coefficient tuple of the modulus.
    """
    for encoding in range(p ** ext_deg):
        coeffs = _digits(encoding, p, ext_deg) + [1]
        # Divisible by x
        if coeffs[0] == 0:
            continue
        if is_irreducible(coeffs, p):
            return tuple(coeffs)

    # Unreachable: irreducible polynomials exist in every degree
    raise NotIrreducible(f"no irreducible polynomial of degree {ext_deg} over F_{p}")


def make_extension_field(p: int, ext_deg: int, modulus: Optional[Sequence[int]] = None) -> FieldSpec:
    """
        Creates the extension field F_{p^ext_deg}.

        @param p: The prime characteristic.
        @param ext_deg: The extension degree (at least 2).
        @param modulus: Optional ascending coefficient list of a monic irreducible polynomial.

        @return: The field specification.
    """
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if ext_deg < 2:
        raise DegreeMismatch(f"extension degree must be at least 2, got {ext_deg}")

    if modulus is None:
        chosen = default_modulus(p, ext_deg)
    else:
        chosen = tuple(int(c) for c in modulus)
        if len(chosen) != ext_deg + 1:
            raise DegreeMismatch(f"modulus has degree {len(chosen) - 1}, expected {ext_deg}")
        if chosen[-1] != 1:
            raise DegreeMismatch("modulus must be monic")
        if any(not 0 <= c < p for c in chosen):
            raise DegreeMismatch(f"modulus coefficients must lie in [0, {p})")
        if not is_irreducible(chosen, p):
            raise NotIrreducible(f"modulus {list(chosen)} is reducible over F_{p}")

    q = p ** ext_deg
    return FieldSpec(p=p, ext_deg=ext_deg, q=q, modulus=chosen, q_minus_1_factors=factorize(q - 1))


def make_field(q: Optional[int] = None, p: Optional[int] = None, ext_deg: Optional[int] = None,
               modulus: Optional[Sequence[int]] = None) -> FieldSpec:
    """
        Creates a field from any consistent combination of order, characteristic, degree and modulus.

        @param q: The field order.
        @param p: The prime characteristic.
        @param ext_deg: The extension degree.
        @param modulus: Optional ascending coefficient list of the modulus.

        @return: The field specification.
    """
    if p is None:
        if q is None:
            raise DegreeMismatch("either q or p must be given")
        p, derived_deg = prime_power_decomposition(q)
        if ext_deg is None:
            ext_deg = derived_deg
    elif ext_deg is None:
        if modulus is not None:
            ext_deg = len(modulus) - 1
        elif q is not None:
            q_prime, ext_deg = prime_power_decomposition(q)
            if q_prime != p:
                raise DegreeMismatch(f"q = {q} is not a power of p = {p}")
        else:
            ext_deg = 1

    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if q is not None and q != p ** ext_deg:
        raise DegreeMismatch(f"q = {q} differs from {p}^{ext_deg}")

    if ext_deg == 1 and modulus is None:
        return make_prime_field(p)
    return make_extension_field(p, ext_deg, modulus)


def elements(field: FieldSpec) -> Iterator[FieldElement]:
    """Enumerates all elements of the field in index order."""
    for index in range(field.q):
        yield FieldElement(field, index)


def _digits(index: int, p: int, length: int) -> List[int]:
    result = []
    for _ in range(length):
        index, digit = divmod(index, p)
        result.append(digit)
    return result


def _pack(coeffs: Sequence[int], p: int) -> int:
    index = 0
    for coeff in reversed(coeffs):
        index = index * p + coeff
    return index


def element_coeffs(a: FieldElement) -> List[int]:
    """Returns the coefficient vector c_0..c_{ext_deg-1} of an element."""
    return _digits(a.index, a.owner.p, a.owner.ext_deg)


def element_from_coeffs(field: FieldSpec, coeffs: Sequence[int]) -> FieldElement:
    """
        Builds an element from its coefficient vector, reducing modulo the field modulus.

        @param field: The owner field.
        @param coeffs: Ascending coefficients over F_p.

        @return: The field element.
    """
    reduced = [c % field.p for c in coeffs]
    if field.modulus is None:
        if len(_poly_trim(reduced)) > 1:
            raise DegreeMismatch(f"elements of {field} are constants")
        return FieldElement(field, reduced[0] if reduced else 0)

    return FieldElement(field, _pack(_poly_mod(reduced, list(field.modulus), field.p), field.p))


# Scalar arithmetic

def _check_same_field(a: FieldElement, b: FieldElement) -> None:
    if a.owner is not b.owner and a.owner != b.owner:
        raise FieldMismatch(f"elements of {a.owner} and {b.owner} cannot be combined")


def add(a: FieldElement, b: FieldElement) -> FieldElement:
    _check_same_field(a, b)
    field = a.owner
    if field.is_prime_field:
        return FieldElement(field, (a.index + b.index) % field.p)

    digits = [(x + y) % field.p for x, y in zip(element_coeffs(a), element_coeffs(b))]
    return FieldElement(field, _pack(digits, field.p))


def neg(a: FieldElement) -> FieldElement:
    field = a.owner
    if field.is_prime_field:
        return FieldElement(field, (-a.index) % field.p)

    return FieldElement(field, _pack([(-x) % field.p for x in element_coeffs(a)], field.p))


def sub(a: FieldElement, b: FieldElement) -> FieldElement:
    return add(a, neg(b))


def mul(a: FieldElement, b: FieldElement) -> FieldElement:
    """
        Multiplies two elements; extension fields reduce the polynomial product modulo the modulus.

        @param a: The first factor.
        @param b: The second factor.

        @return: The product.
    """
    _check_same_field(a, b)
    field = a.owner
    if field.is_prime_field:
        return FieldElement(field, a.index * b.index % field.p)

    product = _poly_mul(element_coeffs(a), element_coeffs(b), field.p)
    return FieldElement(field, _pack(_poly_mod(product, list(field.modulus), field.p), field.p))


def power(a: FieldElement, exponent: int) -> FieldElement:
    """
        Square-and-multiply exponentiation with the convention 0^0 = 1.
        A negative exponent raises the inverse.

        @param a: The base.
        @param exponent: The exponent.

        @return: a^exponent.
    """
    if exponent < 0:
        return power(inv(a), -exponent)

    field = a.owner
    if field.is_prime_field:
        return FieldElement(field, pow(a.index, exponent, field.p))

    result = field.one
    base = a
    while exponent:
        if exponent & 1:
            result = mul(result, base)
        base = mul(base, base)
        exponent >>= 1
    return result


def inv(a: FieldElement) -> FieldElement:
    if a.is_zero():
        raise FieldDivisionByZero(f"0 has no inverse in {a.owner}")
    return power(a, a.owner.q - 2)


def div(a: FieldElement, b: FieldElement) -> FieldElement:
    return mul(a, inv(b))


def is_square(a: FieldElement) -> bool:
    """
        Euler criterion: a nonzero x is a square iff x^((q-1)/2) = 1. Zero counts as a square,
        and in characteristic 2 every element is a square.

        @param a: The element to test.

        @return: True if a is a square.
    """
    field = a.owner
    if a.is_zero() or field.p == 2:
        return True
    return power(a, (field.q - 1) // 2).index == 1


def multiplicative_order(a: FieldElement) -> int:
    """
        Computes the multiplicative order by dividing q - 1 by its prime factors.

        @param a: A nonzero element.

        @return: The least e >= 1 with a^e = 1.
    """
    if a.is_zero():
        raise FieldDivisionByZero("0 has no multiplicative order")

    order = a.owner.q - 1
    for prime, multiplicity in a.owner.q_minus_1_factors:
        for _ in range(multiplicity):
            if power(a, order // prime).index == 1:
                order //= prime
            else:
                break
    return order


def find_smallest_generator(field: FieldSpec) -> FieldElement:
    """
        Finds the generator of the multiplicative group with the smallest index.

        @param field: The field.

        @return: The generator.
    """
    for index in range(1, field.q):
        candidate = FieldElement(field, index)
        if multiplicative_order(candidate) == field.q - 1:
            return candidate

    # Unreachable: the multiplicative group is cyclic
    raise NotAGenerator(f"no generator found in {field}")


# Discrete logarithms

class DlogTable:
    """
    Discrete logarithm and antilogarithm tables with respect to a fixed generator.

    `log[x]` is the exponent j in [0, q - 1) with g^j = x for nonzero x and -1 for x = 0;
    `exp[j]` is the index of g^j.
    """

    def __init__(self, generator: FieldElement, log: np.ndarray, exp: np.ndarray):
        self.generator = generator
        self.field = generator.owner
        self.log = log
        self.exp = exp
        self.log.flags.writeable = False
        self.exp.flags.writeable = False

    def __getitem__(self, index: int) -> int:
        if index == 0:
            raise FieldDivisionByZero("0 has no discrete logarithm")
        return int(self.log[index])

    def __len__(self) -> int:
        return len(self.exp)

    def as_dict(self) -> Dict[int, int]:
        return {int(index): exponent for exponent, index in enumerate(self.exp.tolist())}


@lru_cache(maxsize=4)
def _build_dlog_table(generator: FieldElement) -> DlogTable:
    field = generator.owner
    group_order = field.q - 1
    log = np.full(field.q, -1, dtype=np.int64)
    exp = np.zeros(group_order, dtype=np.int64)

    current = field.one
    for exponent in range(group_order):
        if exponent > 0 and current.index == 1:
            raise NotAGenerator(f"{generator.index} has order {exponent} < {group_order} in {field}")
        exp[exponent] = current.index
        log[current.index] = exponent
        current = mul(current, generator)

    if current.index != 1:
        raise NotAGenerator(f"{generator.index} is not a generator of {field}")

    logger.debug("Built dlog table for %s with generator %d.", field, generator.index)
    return DlogTable(generator, log, exp)


def dlog_table(g: FieldElement, q_limit: Optional[int] = None) -> DlogTable:
    """
        Builds the discrete logarithm table of a generator in one multiplicative sweep.
        Tables are cached per generator and read-only.

        @param g: A generator of the multiplicative group.
        @param q_limit: Optional cap on q, defaults to the configured q-limit.

        @return: The table.
    """
    limit = get_q_limit(q_limit)
    if g.owner.q > limit:
        raise LimitExceeded(f"q = {g.owner.q} exceeds the q-limit {limit}")
    if g.is_zero():
        raise NotAGenerator("0 is not a generator")

    return _build_dlog_table(g)


# Vectorised helpers over numpy index arrays

def vec_add(field: FieldSpec, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """
        Adds two arrays of element indices coefficient-wise.

        @param field: The owner field.
        @param a: Array of indices.
        @param b: Array of indices (broadcastable to a).

        @return: Array of sum indices.
    """
    if field.is_prime_field:
        return (a + b) % field.p

    result = np.zeros(np.broadcast(a, b).shape, dtype=np.int64)
    place = 1
    for _ in range(field.ext_deg):
        result += ((a // place % field.p + b // place % field.p) % field.p) * place
        place *= field.p
    return result


def vec_neg(field: FieldSpec, a: np.ndarray) -> np.ndarray:
    if field.is_prime_field:
        return (-a) % field.p

    result = np.zeros_like(a)
    place = 1
    for _ in range(field.ext_deg):
        result += ((-(a // place % field.p)) % field.p) * place
        place *= field.p
    return result


def vec_mul(table: DlogTable, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """
        Multiplies two arrays of element indices; extension fields go through the log tables.

        @param table: The dlog table of the field.
        @param a: Array of indices.
        @param b: Array of indices (broadcastable to a).

        @return: Array of product indices.
    """
    field = table.field
    if field.is_prime_field:
        return a * b % field.p

    a, b = np.broadcast_arrays(np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64))
    result = table.exp[(table.log[a] + table.log[b]) % (field.q - 1)]
    result[(a == 0) | (b == 0)] = 0
    return result


def vec_scale(table: DlogTable, c: FieldElement, a: np.ndarray) -> np.ndarray:
    return vec_mul(table, np.full(a.shape, c.index, dtype=np.int64), a)


def vec_power(table: DlogTable, a: np.ndarray, exponent: int) -> np.ndarray:
    """
        Raises every element of an index array to a fixed non-negative exponent, 0^0 = 1.

        @param table: The dlog table of the field.
        @param a: Array of indices.
        @param exponent: The exponent.

        @return: Array of power indices.
    """
    group_order = table.field.q - 1
    # reduce in Python ints first, x^e = x^((e - 1) mod (q - 1) + 1) for e >= 1
    reduced = (exponent - 1) % group_order + 1 if exponent > 0 else 0
    result = table.exp[(table.log[a] * reduced) % group_order]
    result[a == 0] = 1 if exponent == 0 else 0
    return result
