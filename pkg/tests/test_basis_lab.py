# tests/test_basis_lab.py
import itertools

import pytest

from affinepbw.basis_lab import (
    canonical_basis_weight,
    canonical_sets_agree,
    canonical_violations,
    class_of,
    compare_lusztig_data,
    crystal_label,
    divided_power_action,
    expand_in_canonical,
    expand_in_pbw,
    is_greater,
    linear_extension,
    transition_map,
    transition_table,
)
from affinepbw.convex_order import bn_order
from affinepbw.exceptions import ResidueAmbiguity, WeightMismatch
from affinepbw.pbw import LusztigDatum, lusztig_data, pbw_monomial
from affinepbw.ring import ONE, qs
from affinepbw.uqplus import AlgebraElement, bar_element


@pytest.fixture
def real_datum(a11):
    return LusztigDatum.build(a11, {(1, 0): 1, (0, 1): 1})


@pytest.fixture
def imaginary_datum(a11):
    return LusztigDatum.build(a11, {}, [(1,)])


class TestLexicographicOrder:
    """Test suite for the bilexicographic order on Lusztig data."""

    def test_real_data_beat_imaginary_data(self, bn0, real_datum, imaginary_datum):
        result = compare_lusztig_data(real_datum, imaginary_datum, bn0)
        assert result.greater
        assert not is_greater(imaginary_datum, real_datum, bn0)
        assert not is_greater(real_datum, real_datum, bn0)

    def test_different_weights_are_incomparable(self, a11, bn0, real_datum):
        with pytest.raises(WeightMismatch):
            compare_lusztig_data(real_datum, LusztigDatum.build(a11, {(1, 0): 1}), bn0)

    def test_linear_extension_puts_smaller_data_first(self, bn0, real_datum, imaginary_datum):
        assert linear_extension([real_datum, imaginary_datum], bn0) == [imaginary_datum, real_datum]


class TestCrystalLabel:
    """Test suite for reading a crystal label off PBW coordinates."""

    def test_unique_unit_residue(self, real_datum, imaginary_datum):
        assert crystal_label({real_datum: ONE, imaginary_datum: qs(-1)}) == real_datum

    def test_pole_is_rejected(self, real_datum):
        with pytest.raises(ResidueAmbiguity):
            crystal_label({real_datum: qs(1)})

    def test_two_unit_residues_are_rejected(self, real_datum, imaginary_datum):
        with pytest.raises(ResidueAmbiguity):
            crystal_label({real_datum: ONE, imaginary_datum: ONE})


def test_pbw_monomial_expands_to_itself(bn0, real_datum):
    assert expand_in_pbw(pbw_monomial(real_datum, bn0), bn0) == {real_datum: ONE}
    assert class_of(pbw_monomial(real_datum, bn0), bn0) == real_datum


class TestTransitionMaps:
    """Test suite for the bijections between PBW labellings."""

    def test_same_order_is_identity(self, bn0, real_datum):
        assert transition_map(real_datum, bn0, bn0) is real_datum

    def test_single_datum_weights_map_to_themselves(self, a11, bn0):
        c = LusztigDatum.build(a11, {(0, 1): 2})
        assert transition_map(c, bn0, bn_order(a11, 1)) == c

    @pytest.mark.parametrize("p", [1, -1, 2])
    def test_transition_is_a_bijection(self, a11, bn0, p):
        target = bn_order(a11, p)
        rows = transition_table(bn0, target, (1, 1))
        assert sorted(out for _, out in rows) == lusztig_data(a11, (1, 1))
        back = {out: transition_map(out, target, bn0) for _, out in rows}
        assert all(back[out] == c for c, out in rows)

    @pytest.mark.parametrize("weight", [(2, 1), (1, 2), (2, 2)])
    def test_transition_is_a_bijection_at_larger_weights(self, a11, bn0, weight):
        target = bn_order(a11, 1)
        rows = transition_table(bn0, target, weight)
        assert sorted(out for _, out in rows) == lusztig_data(a11, weight)
        assert all(transition_map(out, target, bn0) == c for c, out in rows)

    def test_transition_on_a21(self, a21):
        source, target = bn_order(a21, 0), bn_order(a21, 1)
        for weight in [(1, 1, 0), (0, 1, 1), (1, 1, 1)]:
            rows = transition_table(source, target, weight)
            assert sorted(out for _, out in rows) == lusztig_data(a21, weight)


class TestCanonicalBasis:
    """Test suite for the bar-invariant unitriangular basis."""

    @pytest.mark.parametrize("weight", [(1, 0), (1, 1), (2, 1)])
    def test_no_violations(self, bn0, weight):
        assert canonical_violations(weight, bn0) == []

    def test_vectors_are_bar_invariant(self, bn0):
        for vector in canonical_basis_weight((1, 1), bn0):
            assert bar_element(vector.element) == vector.element
            assert vector.coordinates[vector.datum] == ONE
            assert vector.order_label == "bn:0"

    def test_simple_weight(self, a11, bn0):
        (vector,) = canonical_basis_weight((1, 0), bn0)
        assert vector.element == AlgebraElement.generator(a11, 0)
        assert expand_in_canonical(AlgebraElement.generator(a11, 0), bn0) == {vector.datum: ONE}

    def test_order_independence(self, a11, bn0):
        assert canonical_sets_agree((1, 1), bn0, bn_order(a11, 1))
        assert canonical_sets_agree((1, 1), bn0, bn_order(a11, -1))

    @pytest.mark.parametrize("weight", [(1, 1), (2, 1)])
    @pytest.mark.parametrize("p, p2", list(itertools.combinations(range(-2, 3), 2)))
    def test_order_independence_across_reflected_orders(self, a11, weight, p, p2):
        assert canonical_sets_agree(weight, bn_order(a11, p), bn_order(a11, p2))

    def test_divided_power_keeps_the_raised_label(self, bn0):
        (vector,) = canonical_basis_weight((1, 0), bn0)
        for side in ("left", "right"):
            assert divided_power_action(vector, 1, 1, bn0, side)["holds"]
