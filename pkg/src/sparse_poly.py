"""Sparse Polynomials

This module contains canonical sparse polynomials over a finite field: construction, evaluation at
one point or at the whole field, text round-trip and coefficient reversal.

A polynomial is stored as (exponent, coefficient) terms, strictly descending by exponent, without
zero coefficients. Exponents are kept exactly as constructed, so x^(q-1) and x^0 stay different
functions at x = 0.

Text grammar (whitespace ignored):
    poly  := ['-'] sterm (('+' | '-') sterm)*
    sterm := [coeff]['*']'x'['^'exp] | coeff
where coeff is an element index in decimal.
"""

from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Tuple, Union

import numpy as np

from errors import CoefficientOutOfRange, ExponentOutOfRange, FieldMismatch, PolySyntaxError, ZeroPolynomial
from ff_core import DlogTable, FieldElement, FieldSpec, add, mul, neg, power, vec_add, vec_power, vec_scale

Term = Tuple[int, FieldElement]
RawCoefficient = Union[FieldElement, int]


@dataclass(frozen=True)
class SparsePoly:
    """Canonical sparse polynomial over a FieldSpec."""

    owner: FieldSpec
    terms: Tuple[Term, ...]

    def is_zero(self) -> bool:
        return not self.terms

    @property
    def degree(self) -> int:
        if self.is_zero():
            raise ZeroPolynomial("the zero polynomial has no degree")
        return self.terms[0][0]

    @property
    def min_exponent(self) -> int:
        if self.is_zero():
            raise ZeroPolynomial("the zero polynomial has no terms")
        return self.terms[-1][0]

    def exponents(self) -> List[int]:
        return [exponent for exponent, _ in self.terms]

    def coefficient(self, exponent: int) -> FieldElement:
        for term_exponent, coeff in self.terms:
            if term_exponent == exponent:
                return coeff
        return self.owner.zero

    def to_json(self) -> Dict[str, object]:
        return {"q": self.owner.q, "terms": [[exponent, coeff.index] for exponent, coeff in self.terms]}

    def __call__(self, x: FieldElement) -> FieldElement:
        return evaluate(self, x)

    def __str__(self) -> str:
        return format_poly(self)


def canonicalize(owner: FieldSpec, raw_terms: Iterable[Tuple[int, RawCoefficient]]) -> SparsePoly:
    """
        Builds the canonical polynomial from raw terms: merges equal exponents by field addition,
        drops zero coefficients and sorts the terms descending by exponent.

        @param owner: The field of the coefficients.
        @param raw_terms: Pairs of (exponent, coefficient); a coefficient is a FieldElement or an index.

        @return: The canonical polynomial.
    """
    merged: Dict[int, FieldElement] = {}
    for exponent, coeff in raw_terms:
        if exponent < 0:
            raise ExponentOutOfRange(f"negative exponent {exponent}")
        if isinstance(coeff, FieldElement):
            if coeff.owner != owner:
                raise FieldMismatch(f"coefficient from {coeff.owner} in a polynomial over {owner}")
        else:
            if not 0 <= coeff < owner.q:
                raise CoefficientOutOfRange(f"coefficient index {coeff} outside [0, {owner.q})")
            coeff = FieldElement(owner, coeff)

        merged[exponent] = add(merged[exponent], coeff) if exponent in merged else coeff

    terms = tuple((exponent, merged[exponent]) for exponent in sorted(merged, reverse=True)
                  if not merged[exponent].is_zero())
    return SparsePoly(owner, terms)


def from_json(data: Dict[str, object], owner: FieldSpec) -> SparsePoly:
    """
        Loads a polynomial from its JSON form {"q": ..., "terms": [[exp, coeffIndex], ...]}.

        @param data: The decoded JSON object.
        @param owner: The field the polynomial lives in.

        @return: The canonical polynomial.
    """
    if data.get("q") != owner.q:
        raise FieldMismatch(f"polynomial over q = {data.get('q')} loaded into {owner}")
    return canonicalize(owner, [(int(exponent), int(coeff)) for exponent, coeff in data["terms"]])


def evaluate(f: SparsePoly, x: FieldElement, table: Optional[DlogTable] = None) -> FieldElement:
    """
        Evaluates f at x. With a dlog table the powers of a nonzero x are computed by exponent
        arithmetic modulo q - 1; otherwise each term uses square-and-multiply.

        @param f: The polynomial.
        @param x: The evaluation point.
        @param table: Optional dlog table of the field.

        @return: f(x).
    """
    if x.owner != f.owner:
        raise FieldMismatch(f"cannot evaluate a polynomial over {f.owner} at an element of {x.owner}")

    field = f.owner
    result = field.zero
    if x.is_zero():
        # 0^0 = 1, every other power of 0 vanishes
        return f.coefficient(0)

    if table is not None:
        log_x = table[x.index]
        for exponent, coeff in f.terms:
            x_power = FieldElement(field, int(table.exp[log_x * exponent % (field.q - 1)]))
            result = add(result, mul(coeff, x_power))
        return result

    for exponent, coeff in f.terms:
        result = add(result, mul(coeff, power(x, exponent)))
    return result


def evaluate_all(f: SparsePoly, table: DlogTable) -> np.ndarray:
    """
        Evaluates f at every element of its field in one vectorised pass.

        @param f: The polynomial.
        @param table: The dlog table of the field.

        @return: Array image with image[x] = f(x) as element indices.
    """
    field = f.owner
    if table.field != field:
        raise FieldMismatch(f"dlog table of {table.field} used for a polynomial over {field}")

    points = np.arange(field.q, dtype=np.int64)
    image = np.zeros(field.q, dtype=np.int64)
    for exponent, coeff in f.terms:
        image = vec_add(field, image, vec_scale(table, coeff, vec_power(table, points, exponent)))
    return image


def reverse_coefficients(f: SparsePoly, anchor: Optional[int] = None) -> SparsePoly:
    """
        Reverses the coefficient sequence of f around an anchor: (e, c) -> (anchor - e, c).
        The anchor defaults to the degree of f.

        @param f: A nonzero polynomial.
        @param anchor: The exponent sum of paired terms.

        @return: The reversed canonical polynomial.
    """
    if f.is_zero():
        raise ZeroPolynomial("cannot reverse the zero polynomial")

    if anchor is None:
        anchor = f.degree
    if anchor < f.degree:
        raise ExponentOutOfRange(f"anchor {anchor} is below the degree {f.degree}")

    return canonicalize(f.owner, [(anchor - exponent, coeff) for exponent, coeff in f.terms])


def reciprocal(f: SparsePoly) -> SparsePoly:
    """
        Reverses f around q - 1, i.e. x^(q-1) * f(1/x). On nonzero elements this is f(1/x),
        which is the duality between the subgroup-inversion polynomials.

        @param f: A nonzero polynomial with degree at most q - 1.

        @return: The reciprocal polynomial.
    """
    return reverse_coefficients(f, f.owner.q - 1)


class _PolyParser:
    """Recursive descent parser over the non-whitespace characters of a polynomial text."""

    def __init__(self, text: str, owner: FieldSpec):
        self.chars = [(char, position) for position, char in enumerate(text) if not char.isspace()]
        self.end_position = len(text)
        self.owner = owner
        self.cursor = 0

    def peek(self) -> Optional[str]:
        return self.chars[self.cursor][0] if self.cursor < len(self.chars) else None

    def position(self) -> int:
        return self.chars[self.cursor][1] if self.cursor < len(self.chars) else self.end_position

    def read_int(self) -> Optional[int]:
        digits = ""
        while self.peek() is not None and self.peek().isdigit():
            digits += self.peek()
            self.cursor += 1
        return int(digits) if digits else None

    def parse(self) -> SparsePoly:
        if not self.chars:
            raise PolySyntaxError("empty polynomial", 0)

        negative = False
        if self.peek() == '-':
            negative = True
            self.cursor += 1

        terms = [self.parse_term(negative)]
        while self.peek() is not None:
            operator = self.peek()
            if operator not in "+-":
                raise PolySyntaxError(f"expected '+' or '-', found '{operator}'", self.position())
            self.cursor += 1
            terms.append(self.parse_term(operator == '-'))

        return canonicalize(self.owner, terms)

    def parse_term(self, negative: bool) -> Term:
        start = self.position()
        coeff_index = self.read_int()

        if self.peek() == '*':
            if coeff_index is None:
                raise PolySyntaxError("expected a coefficient before '*'", self.position())
            self.cursor += 1
            if self.peek() != 'x':
                raise PolySyntaxError("expected 'x' after '*'", self.position())

        if self.peek() == 'x':
            self.cursor += 1
            exponent = 1
            if self.peek() == '^':
                self.cursor += 1
                exponent = self.read_int()
                if exponent is None:
                    raise PolySyntaxError("expected an exponent after '^'", self.position())
        elif coeff_index is None:
            found = self.peek()
            raise PolySyntaxError("expected a term" if found is None else f"unexpected '{found}'", start)
        else:
            exponent = 0

        if coeff_index is None:
            coeff_index = 1
        if coeff_index >= self.owner.q:
            raise CoefficientOutOfRange(f"coefficient {coeff_index} at position {start} is not below q = {self.owner.q}")

        coeff = FieldElement(self.owner, coeff_index)
        return exponent, neg(coeff) if negative else coeff


def parse(text: str, owner: FieldSpec) -> SparsePoly:
    """
        Parses the polynomial text grammar into a canonical polynomial.
        A '-' applies field negation to the coefficient that follows.

        @param text: The polynomial text, e.g. "26x^31 + 29x^11 + 22x".
        @param owner: The field of the coefficients.

        @return: The canonical polynomial.
    """
    return _PolyParser(text, owner).parse()


def format_poly(f: SparsePoly) -> str:
    """
        Formats a polynomial: descending terms joined by " + ", coefficients as indices, unit
        coefficients omitted except on the constant term, "x^1" printed as "x", zero as "0".

        @param f: The polynomial.

        @return: The polynomial text.
    """
    if f.is_zero():
        return "0"

    pieces = []
    for exponent, coeff in f.terms:
        if exponent == 0:
            pieces.append(str(coeff.index))
            continue
        prefix = "" if coeff.index == 1 else str(coeff.index)
        pieces.append(f"{prefix}x" if exponent == 1 else f"{prefix}x^{exponent}")
    return " + ".join(pieces)
