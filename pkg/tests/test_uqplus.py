# tests/test_uqplus.py
import pytest

from affinepbw.exceptions import WeightMismatch
from affinepbw.ring import ONE, qs
from affinepbw.uqplus import (
    AlgebraElement,
    FullElement,
    admits_positive_braid,
    bar_element,
    braid_apply,
    braid_word_apply,
    derivation,
    descent_residue,
    divided_power,
    dump,
    gram_rank,
    kashiwara_form,
    kashiwara_lower,
    kashiwara_raise,
    norm_residue,
    serre_element,
    star,
    string_length,
    word_shuffle,
    words_of_weight,
)


def E(typ, *word):
    return AlgebraElement.monomial(typ, word)


class TestShuffleModel:
    """Test suite for the shuffle image that decides equality in U_q^+."""

    def test_words_of_weight(self):
        assert words_of_weight((1, 1)) == [(0, 1), (1, 0)]
        assert words_of_weight((0, 2)) == [(1, 1)]
        assert words_of_weight((-1, 2)) == []

    def test_two_letter_shuffle(self, a11):
        assert word_shuffle(a11, (0, 1)) == {(0, 1): {0: 1}, (1, 0): {-2: 1}}

    def test_serre_relations_vanish(self, a11, a21, a22):
        assert serre_element(a11, 0, 1).is_zero()
        assert serre_element(a11, 1, 0).is_zero()
        assert serre_element(a21, 1, 2).is_zero()
        assert serre_element(a22, 0, 1).is_zero()

    def test_weight_space_dimensions(self, a11):
        assert gram_rank(a11, (2, 0)) == 1
        assert gram_rank(a11, (1, 1)) == 2
        # four words, one Serre relation
        assert gram_rank(a11, (3, 1)) == 3

    def test_distinct_monomials_differ(self, a11):
        assert E(a11, 0, 1) != E(a11, 1, 0)
        assert E(a11, 0, 1) + E(a11, 1, 0) - E(a11, 1, 0) == E(a11, 0, 1)

    def test_weight_of_inhomogeneous_element(self, a11):
        with pytest.raises(WeightMismatch):
            (E(a11, 0) + E(a11, 1)).weight
        assert E(a11, 0, 1, 1).weight == (1, 2)

    def test_dump_of_zero(self, a11):
        assert dump(AlgebraElement.zero(a11)) == "0"


class TestKashiwaraForm:
    """Test suite for the form and the derivations that are adjoint to it."""

    def test_generators_are_orthonormal(self, a11):
        assert kashiwara_form(E(a11, 0), E(a11, 0)) == ONE
        assert kashiwara_form(E(a11, 0), E(a11, 1)) == 0
        assert kashiwara_form(AlgebraElement.one(a11), AlgebraElement.one(a11)) == ONE

    def test_form_is_symmetric(self, a11):
        assert kashiwara_form(E(a11, 0, 1), E(a11, 1, 0)) == qs(-2)
        assert kashiwara_form(E(a11, 1, 0), E(a11, 0, 1)) == qs(-2)

    def test_divided_power_has_unit_norm_mod_u(self, a11):
        assert norm_residue(divided_power(a11, 1, 2)) == 1

    def test_left_derivation(self, a11):
        assert derivation(1, "left", E(a11, 1)) == AlgebraElement.one(a11)
        assert derivation(0, "left", E(a11, 1)).is_zero()
        assert derivation(1, "left", divided_power(a11, 1, 2)) == E(a11, 1).scale(qs(1))
        with pytest.raises(ValueError):
            derivation(1, "middle", E(a11, 1))

    def test_negative_divided_power_rejected(self, a11):
        with pytest.raises(ValueError):
            divided_power(a11, 0, -1)


def test_star_and_bar(a11):
    assert star(E(a11, 0, 1)) == E(a11, 1, 0)
    assert bar_element(E(a11, 0).scale(qs(1))) == E(a11, 0).scale(qs(-1))


def test_kashiwara_operators_on_small_lifts(a11):
    one = AlgebraElement.one(a11)
    assert kashiwara_raise(1, one) == E(a11, 1)
    assert kashiwara_lower(1, E(a11, 1)) == one
    assert string_length(1, E(a11, 1)) == 1
    assert string_length(0, E(a11, 1)) == 0
    assert descent_residue(divided_power(a11, 1, 2)) == 1


def test_quantum_commutator_of_e_and_f(a11):
    e, f = FullElement.E(a11, 1), FullElement.F(a11, 1)
    cartan_part = (FullElement.K(a11, (0, 1)) - FullElement.K(a11, (0, -1))).scale(ONE / (qs(1) - qs(-1)))
    assert e * f - f * e == cartan_part


class TestBraidOperators:
    """Test suite for Lusztig's braid group action."""

    def test_simple_root_goes_to_negative_part(self, a11):
        assert not admits_positive_braid(1, "fwd", E(a11, 1))
        image = braid_apply(1, "fwd", E(a11, 1))
        assert isinstance(image, FullElement)
        assert image == FullElement(a11, {((1,), (0, 1), ()): -ONE})

    def test_other_generator_stays_positive(self, a11):
        image = braid_apply(1, "fwd", E(a11, 0))
        assert isinstance(image, AlgebraElement)
        assert image.weight == (1, 2)
        assert braid_apply(1, "inv", E(a11, 0)).weight == (1, 2)

    def test_unknown_direction(self, a11):
        with pytest.raises(ValueError):
            braid_apply(1, "sideways", E(a11, 0))


@pytest.mark.parametrize("direction", ["fwd", "inv"])
@pytest.mark.parametrize("i, j, k", [(0, 1, 2), (1, 2, 0), (0, 2, 1)])
def test_braid_relations_on_a21(a21, direction, i, j, k):
    x = E(a21, k)
    left = braid_word_apply((i, j, i), x, direction)
    right = braid_word_apply((j, i, j), x, direction)
    assert left == right
    # s_i s_j s_i alpha_k = 2 delta - alpha_k
    assert left.weight == tuple(2 * d - a for d, a in zip(a21.delta, a21.simple_root(k)))
