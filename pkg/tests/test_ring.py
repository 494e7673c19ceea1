# tests/test_ring.py
from fractions import Fraction

import pytest

from affinepbw.exceptions import EngineError, IndexOutOfRange, NotRegular
from affinepbw.ring import (
    ONE,
    U,
    LaurentScalar,
    bar_scalar,
    format_scalar,
    in_lower_lattice,
    is_regular,
    qs,
    quantum_binomial_exp,
    quantum_factorial_exp,
    quantum_int,
    residue_at_infinity,
    specialize,
    to_laurent,
    valuation,
)


def test_quantum_integers_small_values(a11):
    assert quantum_int(0, 1, a11) == LaurentScalar()
    assert quantum_int(1, 1, a11) == 1
    assert quantum_int(3, 1, a11) == LaurentScalar({2: 1, 0: 1, -2: 1})


def test_quantum_integer_of_long_node_uses_its_own_step(a22):
    # (alpha_0, alpha_0) = 8 in units of q_s, so q_0 = q_s^4
    assert quantum_int(2, 0, a22) == LaurentScalar({4: 1, -4: 1})
    assert quantum_int(2, 1, a22) == LaurentScalar({1: 1, -1: 1})


def test_negative_quantum_integer_rejected(a11):
    with pytest.raises(IndexOutOfRange) as excinfo:
        quantum_int(-1, 1, a11)
    assert isinstance(excinfo.value, EngineError)
    assert excinfo.value.as_dict()["error"] == "IndexOutOfRange"
    assert excinfo.value.context == {"n": -1}


def test_negative_factorial_and_binomial_rejected():
    with pytest.raises(IndexOutOfRange):
        quantum_factorial_exp(-2, 1)
    with pytest.raises(IndexOutOfRange):
        quantum_binomial_exp(-1, 0, 1)


def test_factorial_and_binomial_agree():
    # [4 choose 2] = [4]! / ([2]! [2]!)
    lhs = quantum_binomial_exp(4, 2, 1) * quantum_factorial_exp(2, 1) * quantum_factorial_exp(2, 1)
    assert lhs == quantum_factorial_exp(4, 1)
    assert quantum_binomial_exp(3, 5, 1) == LaurentScalar()


def test_bar_on_laurent_scalars():
    assert bar_scalar(LaurentScalar.from_int(1)) == 1
    assert bar_scalar(LaurentScalar({2: 1, 0: 3})) == LaurentScalar({-2: 1, 0: 3})
    for n in range(1, 6):
        assert bar_scalar(quantum_int_exp_for(n)) == quantum_int_exp_for(n)


def quantum_int_exp_for(n):
    return LaurentScalar({n - 1 - 2 * k: 1 for k in range(n)})


def test_bar_on_rational_functions_is_an_involution():
    x = (qs(2) + 3 * ONE) / (ONE - U)
    assert bar_scalar(bar_scalar(x)) == x
    assert not (bar_scalar(qs(3)) - qs(-3))


def test_residue_at_infinity_examples():
    assert residue_at_infinity(ONE + U) == 1
    assert residue_at_infinity(U ** 3 / (ONE + U)) == 0
    assert residue_at_infinity(ONE / (ONE - U)) == 1
    assert residue_at_infinity((2 * ONE + U) / (3 * ONE)) == Fraction(2, 3)


def test_residue_is_multiplicative_on_regular_elements():
    x, y = (2 * ONE + U) / (ONE - U), (3 * ONE + U ** 2) / (ONE + 2 * U)
    assert residue_at_infinity(x * y) == residue_at_infinity(x) * residue_at_infinity(y)


def test_residue_rejects_a_pole():
    assert not is_regular(qs(1))
    with pytest.raises(NotRegular):
        residue_at_infinity(qs(1))


def test_laurent_conversion_and_lattice():
    assert to_laurent(qs(2) + qs(-1)) == LaurentScalar({2: 1, -1: 1})
    assert to_laurent(ONE / (ONE - U)) is None
    assert LaurentScalar({1: 2, -1: -1}).to_ratfunc() == 2 * qs(1) - qs(-1)
    assert in_lower_lattice(U)
    assert not in_lower_lattice(ONE)
    assert valuation(U ** 2 / (ONE + U)) == 2
    assert valuation(0 * ONE) is None


def test_specialize_at_one_gives_classical_integer():
    assert specialize(quantum_int_exp_for(4).to_ratfunc(), 1) == 4


def test_format_scalar_is_canonical():
    assert format_scalar(LaurentScalar({2: 1, 0: 3})) == "qs^2 + 3"
    assert format_scalar(qs(-1) * 2 - ONE) == "-1 + 2*qs^-1"
