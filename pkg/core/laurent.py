"""
Laurent polynomials for braidbook.
Provides exact integer-coefficient Laurent polynomials in one variable t,
the coefficient ring of the Burau representation.
"""

from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Optional, Tuple, Union

from core.errors import NotDivisibleError, NotSymmetrizableError, PreconditionError

Scalar = Union[int, "LaurentPoly"]


class LaurentPoly:
    """
    A finite sum of terms c * t^e with integer e and nonzero integer c.

    Canonical form: no zero coefficient is stored, so the zero polynomial is
    the empty mapping and equality is equality of term mappings.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Optional[Mapping[int, int]] = None):
        cleaned: Dict[int, int] = {}
        if terms:
            for exponent, coefficient in terms.items():
                e, c = int(exponent), int(coefficient)
                if e != exponent or c != coefficient:
                    raise TypeError(
                        f"Laurent terms need integers, got {coefficient!r}*t^{exponent!r}")
                if c:
                    cleaned[e] = c
        self._terms = cleaned
        self._hash: Optional[int] = None

    # Constructors
    @classmethod
    def zero(cls) -> "LaurentPoly":
        return cls()

    @classmethod
    def one(cls) -> "LaurentPoly":
        return cls({0: 1})

    @classmethod
    def constant(cls, c: int) -> "LaurentPoly":
        return cls({0: c})

    @classmethod
    def monomial(cls, c: int, e: int) -> "LaurentPoly":
        return cls({e: c})

    @classmethod
    def t(cls) -> "LaurentPoly":
        return cls({1: 1})

    @classmethod
    def from_pairs(cls, pairs: Iterable[Tuple[int, int]]) -> "LaurentPoly":
        """Build from (exponent, coefficient) pairs; repeated exponents add up."""
        acc: Dict[int, int] = {}
        for exponent, coefficient in pairs:
            acc[exponent] = acc.get(exponent, 0) + coefficient
        return cls(acc)

    @staticmethod
    def coerce(value: Scalar) -> "LaurentPoly":
        if isinstance(value, LaurentPoly):
            return value
        if isinstance(value, int):
            return LaurentPoly.constant(value)
        raise TypeError(f"cannot use {type(value).__name__} as a Laurent polynomial")

    # Inspection
    def terms(self) -> Dict[int, int]:
        """Copy of the exponent -> coefficient mapping."""
        return dict(self._terms)

    def items_descending(self) -> List[Tuple[int, int]]:
        return sorted(self._terms.items(), reverse=True)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def coefficient(self, exponent: int) -> int:
        return self._terms.get(exponent, 0)

    @property
    def min_degree(self) -> int:
        if not self._terms:
            raise ValueError("the zero polynomial has no degree")
        return min(self._terms)

    @property
    def max_degree(self) -> int:
        if not self._terms:
            raise ValueError("the zero polynomial has no degree")
        return max(self._terms)

    def degree_span(self) -> int:
        """Breadth max_degree - min_degree."""
        return self.max_degree - self.min_degree

    # Ring operations
    def __add__(self, other: Scalar) -> "LaurentPoly":
        other = LaurentPoly.coerce(other)
        result = dict(self._terms)
        for exponent, coefficient in other._terms.items():
            result[exponent] = result.get(exponent, 0) + coefficient
        return LaurentPoly(result)

    __radd__ = __add__

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly({e: -c for e, c in self._terms.items()})

    def __sub__(self, other: Scalar) -> "LaurentPoly":
        return self + (-LaurentPoly.coerce(other))

    def __rsub__(self, other: Scalar) -> "LaurentPoly":
        return LaurentPoly.coerce(other) - self

    def __mul__(self, other: Scalar) -> "LaurentPoly":
        if isinstance(other, int):
            return LaurentPoly({e: c * other for e, c in self._terms.items()})
        other = LaurentPoly.coerce(other)
        result: Dict[int, int] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                result[e1 + e2] = result.get(e1 + e2, 0) + c1 * c2
        return LaurentPoly(result)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "LaurentPoly":
        if k < 0:
            if len(self._terms) == 1:
                (e, c), = self._terms.items()
                if abs(c) == 1:
                    return LaurentPoly({-e * -k: c ** -k})
            raise ValueError("only units can be raised to negative powers")
        result = LaurentPoly.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def shift(self, k: int) -> "LaurentPoly":
        """Multiply by t^k."""
        return LaurentPoly({e + k: c for e, c in self._terms.items()})

    # Evaluation
    def evaluate(self, x: int) -> Union[int, Fraction]:
        """Substitute t = x; exact, a Fraction only when the value is not integral."""
        total = Fraction(0)
        for exponent, coefficient in self._terms.items():
            total += coefficient * Fraction(x) ** exponent
        return int(total) if total.denominator == 1 else total

    # Equality and hashing
    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            other = LaurentPoly.constant(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    # Rendering
    def to_text(self) -> str:
        """Render as ``c0*t^e0 + c1*t^e1 + ...`` with exponents descending."""
        if not self._terms:
            return "0"
        parts: List[str] = []
        for i, (exponent, coefficient) in enumerate(self.items_descending()):
            body = f"{abs(coefficient)}*t^{exponent}"
            if i == 0:
                parts.append(body if coefficient > 0 else f"-{body}")
            else:
                parts.append(f"{'+' if coefficient > 0 else '-'} {body}")
        return " ".join(parts)

    def __str__(self) -> str:
        return self.to_text()

    def __repr__(self) -> str:
        return f"LaurentPoly({dict(self.items_descending())!r})"


def add(a: Scalar, b: Scalar) -> LaurentPoly:
    return LaurentPoly.coerce(a) + b


def sub(a: Scalar, b: Scalar) -> LaurentPoly:
    return LaurentPoly.coerce(a) - b


def mul(a: Scalar, b: Scalar) -> LaurentPoly:
    return LaurentPoly.coerce(a) * b


def neg(a: Scalar) -> LaurentPoly:
    return -LaurentPoly.coerce(a)


def eval_at_minus1(p: LaurentPoly) -> int:
    """Value at t = -1 (an alternating coefficient sum)."""
    return sum(c if e % 2 == 0 else -c for e, c in p.terms().items())


def divide_exact(num: Scalar, den: Scalar) -> LaurentPoly:
    """
    The quotient q with q * den == num.

    Raises NotDivisibleError when den does not divide num in Z[t, 1/t].
    """
    num = LaurentPoly.coerce(num)
    den = LaurentPoly.coerce(den)
    if den.is_zero():
        raise ZeroDivisionError("division by the zero Laurent polynomial")
    if num.is_zero():
        return LaurentPoly.zero()

    lead_exp, lead_coeff = den.max_degree, den.coefficient(den.max_degree)
    lowest_quotient_exp = num.min_degree - den.min_degree
    remainder = num.terms()
    quotient: Dict[int, int] = {}
    while remainder:
        top = max(remainder)
        exponent = top - lead_exp
        coefficient, rest = divmod(remainder[top], lead_coeff)
        if rest or exponent < lowest_quotient_exp:
            raise NotDivisibleError(f"{den} does not divide {num}")
        quotient[exponent] = coefficient
        for e, c in den.terms().items():
            key = e + exponent
            value = remainder.get(key, 0) - coefficient * c
            if value:
                remainder[key] = value
            else:
                remainder.pop(key, None)
    return LaurentPoly(quotient)


def normalize_symmetric(p: LaurentPoly) -> LaurentPoly:
    """
    Multiply by the unit +-t^k making p symmetric under t -> 1/t.

    The sign is fixed by p(1) > 0, or by a positive top coefficient when
    p(1) = 0.
    """
    if p.is_zero():
        raise PreconditionError("the zero polynomial has no symmetric normalization")
    low, high = p.min_degree, p.max_degree
    if (low + high) % 2:
        raise NotSymmetrizableError(f"{p} has odd degree span and cannot be symmetric")
    q = p.shift(-(low + high) // 2)
    terms = q.terms()
    if any(terms.get(-e, 0) != c for e, c in terms.items()):
        raise NotSymmetrizableError(f"no unit multiple of {p} is symmetric")
    value_at_one = sum(terms.values())
    if value_at_one < 0 or (value_at_one == 0 and q.coefficient(q.max_degree) < 0):
        q = -q
    return q


def geometric_sum(n: int) -> LaurentPoly:
    """1 + t + ... + t^(n-1)"""
    return LaurentPoly({e: 1 for e in range(n)})


__all__ = [
    'LaurentPoly', 'Scalar', 'add', 'sub', 'mul', 'neg', 'eval_at_minus1',
    'divide_exact', 'normalize_symmetric', 'geometric_sum',
]
