# affinepbw/ring.py
"""
Exact coefficient arithmetic.

Two scalar types are used throughout the engine:

* ``LaurentScalar``: an integer Laurent polynomial in ``q_s`` stored as an
  exponent -> coefficient map.
* ``RatFunc``: a sympy rational function in ``u = q_s^{-1}``. Writing
  everything in ``u`` makes "regular at q_s = infinity" a constant-term test
  on the denominator, and the residue a quotient of constant terms.
"""

from __future__ import annotations

import logging
from fractions import Fraction
from functools import lru_cache

from sympy import ZZ
from sympy.polys.fields import FracElement, field

from .exceptions import IndexOutOfRange, NotRegular

logger = logging.getLogger(__name__)

RATFUNC_FIELD, U = field("u", ZZ)
RATFUNC_DOMAIN = RATFUNC_FIELD.to_domain()
_POLY_RING = RATFUNC_FIELD.ring

RatFunc = FracElement
ONE = RATFUNC_FIELD.one
ZERO = RATFUNC_FIELD.zero


class LaurentScalar:
    """Integer Laurent polynomial in q_s. Immutable; zero coefficients are never stored."""

    __slots__ = ("_coeffs", "_hash")

    def __init__(self, coeffs=None):
        items = {}
        for exponent, coeff in (coeffs or {}).items():
            coeff = int(coeff)
            if coeff:
                items[int(exponent)] = items.get(int(exponent), 0) + coeff
        self._coeffs = {e: c for e, c in items.items() if c}
        self._hash = None

    @classmethod
    def monomial(cls, exponent: int, coeff: int = 1) -> "LaurentScalar":
        return cls({exponent: coeff})

    @classmethod
    def from_int(cls, value: int) -> "LaurentScalar":
        return cls({0: value})

    @property
    def coeffs(self) -> dict:
        return dict(self._coeffs)

    def exponents(self) -> list[int]:
        return sorted(self._coeffs)

    def __bool__(self):
        return bool(self._coeffs)

    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentScalar.from_int(other)
        if not isinstance(other, LaurentScalar):
            return NotImplemented
        return self._coeffs == other._coeffs

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(tuple(sorted(self._coeffs.items())))
        return self._hash

    def __neg__(self):
        return LaurentScalar({e: -c for e, c in self._coeffs.items()})

    def __add__(self, other):
        if isinstance(other, int):
            other = LaurentScalar.from_int(other)
        if not isinstance(other, LaurentScalar):
            return NotImplemented
        merged = dict(self._coeffs)
        for e, c in other._coeffs.items():
            merged[e] = merged.get(e, 0) + c
        return LaurentScalar(merged)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, int):
            other = LaurentScalar.from_int(other)
        if not isinstance(other, LaurentScalar):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return LaurentScalar({e: c * other for e, c in self._coeffs.items()})
        if not isinstance(other, LaurentScalar):
            return NotImplemented
        product: dict[int, int] = {}
        for e1, c1 in self._coeffs.items():
            for e2, c2 in other._coeffs.items():
                product[e1 + e2] = product.get(e1 + e2, 0) + c1 * c2
        return LaurentScalar(product)

    __rmul__ = __mul__

    def bar(self) -> "LaurentScalar":
        return LaurentScalar({-e: c for e, c in self._coeffs.items()})

    def to_ratfunc(self) -> RatFunc:
        return _laurent_ratfunc(tuple(sorted(self._coeffs.items())))

    def __repr__(self):
        return f"LaurentScalar({format_laurent(self._coeffs)})"

    def __str__(self):
        return format_laurent(self._coeffs)


@lru_cache(maxsize=None)
def _laurent_ratfunc(items: tuple) -> RatFunc:
    if not items:
        return ZERO
    top = max(e for e, _ in items)
    # q_s^e = u^{-e} = u^{top - e} / u^{top}
    numer = _POLY_RING.from_dict({(top - e,): c for e, c in items})
    if top >= 0:
        return RATFUNC_FIELD.new(numer, _POLY_RING.from_dict({(top,): 1}))
    return RATFUNC_FIELD.new(numer * _POLY_RING.from_dict({(-top,): 1}), _POLY_RING.one)


def qs(exponent: int) -> RatFunc:
    """q_s ** exponent as a rational function in u."""
    return _qs_power(int(exponent))


@lru_cache(maxsize=None)
def _qs_power(exponent: int) -> RatFunc:
    if exponent == 0:
        return ONE
    return U ** (-exponent)


def as_ratfunc(value) -> RatFunc:
    if isinstance(value, FracElement):
        return value
    if isinstance(value, LaurentScalar):
        return value.to_ratfunc()
    if isinstance(value, Fraction):
        return RATFUNC_FIELD((value.numerator, value.denominator))
    return RATFUNC_FIELD(int(value))


def _reverse(poly):
    degree = poly.degree()
    return _POLY_RING.from_dict({(degree - monom[0],): coeff for monom, coeff in poly.items()})


def bar_scalar(value):
    """Substitute q_s -> q_s^{-1}; returns the same scalar type it was given."""
    if isinstance(value, LaurentScalar):
        return value.bar()
    value = as_ratfunc(value)
    if not value:
        return value
    numer, denom = value.numer, value.denom
    shift = denom.degree() - numer.degree()
    flipped = RATFUNC_FIELD.new(_reverse(numer), _reverse(denom))
    if shift:
        flipped = flipped * U ** shift
    return flipped


def _lowest_degree(poly) -> int:
    return min(monom[0] for monom in poly.keys())


def valuation(value: RatFunc) -> int | None:
    """Order of vanishing at u = 0 (q_s = infinity); None for zero."""
    value = as_ratfunc(value)
    if not value:
        return None
    return _lowest_degree(value.numer) - _lowest_degree(value.denom)


def is_regular(value: RatFunc) -> bool:
    value = as_ratfunc(value)
    return not value or bool(value.denom.get((0,), 0))


def in_lower_lattice(value: RatFunc) -> bool:
    """True for elements of q_s^{-1} * A (regular and vanishing at infinity)."""
    val = valuation(value)
    return val is None or val >= 1


def residue_at_infinity(value) -> Fraction:
    value = as_ratfunc(value)
    if not value:
        return Fraction(0)
    denom_const = value.denom.get((0,), 0)
    if not denom_const:
        raise NotRegular("scalar has a pole at q_s = infinity", value=value)
    return Fraction(int(value.numer.get((0,), 0)), int(denom_const))


def to_laurent(value) -> LaurentScalar | None:
    """The Laurent polynomial equal to ``value``, or None when it is not one."""
    if isinstance(value, LaurentScalar):
        return value
    value = as_ratfunc(value)
    if not value:
        return LaurentScalar()
    denom = value.denom
    if len(denom) != 1:
        return None
    ((monom, lead),) = denom.items()
    lead = int(lead)
    coeffs = {}
    for (degree,), coeff in value.numer.items():
        coeff = int(coeff)
        if coeff % lead:
            return None
        # u^{degree - monom} = q_s^{monom - degree}
        coeffs[monom[0] - degree] = coeff // lead
    return LaurentScalar(coeffs)


def is_laurent(value) -> bool:
    return to_laurent(value) is not None


def specialize(value, at) -> Fraction:
    """Evaluate at q_s = ``at`` (a nonzero rational)."""
    at = Fraction(at)
    inv = 1 / at
    value = as_ratfunc(value)

    def _eval(poly):
        return sum((Fraction(int(c)) * inv ** m[0] for m, c in poly.items()), Fraction(0))

    return _eval(value.numer) / _eval(value.denom)


# --- Quantum integers --------------------------------------------------------

@lru_cache(maxsize=None)
def quantum_int_exp(n: int, step: int) -> LaurentScalar:
    """[n]_v for v = q_s^step."""
    if n < 0:
        raise IndexOutOfRange("quantum integers are defined for n >= 0", n=n)
    return LaurentScalar({step * (n - 1 - 2 * k): 1 for k in range(n)})


@lru_cache(maxsize=None)
def quantum_factorial_exp(n: int, step: int) -> LaurentScalar:
    if n < 0:
        raise IndexOutOfRange("quantum factorials are defined for n >= 0", n=n)
    result = LaurentScalar.from_int(1)
    for k in range(2, n + 1):
        result = result * quantum_int_exp(k, step)
    return result


@lru_cache(maxsize=None)
def quantum_binomial_exp(n: int, k: int, step: int) -> LaurentScalar:
    if n < 0:
        raise IndexOutOfRange("quantum binomials are defined for n >= 0", n=n, k=k)
    if k < 0 or k > n:
        return LaurentScalar()
    if k == 0 or k == n:
        return LaurentScalar.from_int(1)
    return (
        LaurentScalar.monomial(step * k) * quantum_binomial_exp(n - 1, k, step)
        + LaurentScalar.monomial(-step * (n - k)) * quantum_binomial_exp(n - 1, k - 1, step)
    )


def quantum_int(n: int, i: int, typ) -> LaurentScalar:
    """[n]_{q_i} for node ``i`` of ``typ``."""
    return quantum_int_exp(n, typ.node_step(i))


def quantum_factorial(n: int, i: int, typ) -> LaurentScalar:
    return quantum_factorial_exp(n, typ.node_step(i))


def quantum_binomial(n: int, k: int, i: int, typ) -> LaurentScalar:
    return quantum_binomial_exp(n, k, typ.node_step(i))


# --- Formatting --------------------------------------------------------------

def format_laurent(coeffs: dict) -> str:
    if not coeffs:
        return "0"
    parts = []
    for exponent in sorted(coeffs, reverse=True):
        coeff = coeffs[exponent]
        sign = "-" if coeff < 0 else "+"
        mag = abs(coeff)
        if exponent == 0:
            body = str(mag)
        else:
            power = "qs" if exponent == 1 else f"qs^{exponent}"
            body = power if mag == 1 else f"{mag}*{power}"
        parts.append((sign, body))
    first_sign, first_body = parts[0]
    text = ("-" if first_sign == "-" else "") + first_body
    for sign, body in parts[1:]:
        text += f" {sign} {body}"
    return text


def _poly_as_laurent(poly) -> dict:
    return {-monom[0]: int(coeff) for monom, coeff in poly.items()}


def format_scalar(value) -> str:
    """Canonical text for a scalar; Laurent polynomials print inline, others as (num)/(den)."""
    laurent = to_laurent(value)
    if laurent is not None:
        return str(laurent)
    value = as_ratfunc(value)
    return f"({format_laurent(_poly_as_laurent(value.numer))})/({format_laurent(_poly_as_laurent(value.denom))})"
