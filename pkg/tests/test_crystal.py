# tests/test_crystal.py
import pytest

from affinepbw.convex_order import bn_order
from affinepbw.pbw import LusztigDatum


class TestCrystalOperators:
    """Test suite for Kashiwara operators read off PBW lifts."""

    def test_lowest_element(self, crystal11):
        low = crystal11.lowest()
        assert crystal11.is_lowest(low)
        assert crystal11.weight(low) == (0, 0)
        for i in crystal11.typ.nodes:
            assert crystal11.phi(i, low) == 0
            assert crystal11.f(i, low) is None

    def test_raising_from_the_lowest_element(self, a11, crystal11):
        low = crystal11.lowest()
        assert crystal11.e(1, low).datum == LusztigDatum.build(a11, {(0, 1): 1})
        assert crystal11.e(0, low).datum == LusztigDatum.build(a11, {(1, 0): 1})
        twice = crystal11.e_power(1, low, 2)
        assert twice.datum == LusztigDatum.build(a11, {(0, 1): 2})
        assert len(crystal11.string(1, twice)) == 3

    def test_eps_is_phi_minus_weight_pairing(self, crystal11):
        b = crystal11.e(1, crystal11.lowest())
        assert crystal11.phi(1, b) == 1
        assert crystal11.phi(0, b) == 0
        assert crystal11.eps(1, b) == 1 - 2
        assert crystal11.eps(0, b) == 0 + 2

    @pytest.mark.parametrize("starred", [False, True])
    def test_e_and_f_are_inverse(self, crystal11, starred):
        for b in crystal11.elements_up_to(2):
            for i in crystal11.typ.nodes:
                raised = crystal11.e(i, b, starred)
                assert crystal11.f(i, raised, starred) == b
                lowered = crystal11.f(i, b, starred)
                if lowered is not None:
                    assert crystal11.e(i, lowered, starred) == b

    def test_shift_moves_both_ways(self, crystal11):
        low = crystal11.lowest()
        up = crystal11.shift(1, low, 2)
        assert crystal11.shift(1, up, -2) == low
        assert crystal11.shift(1, low, -1) is None


class TestCrystalShape:
    """Test suite for enumeration and the star involution."""

    def test_weights_up_to_height_two(self, crystal11):
        assert crystal11.weights_up_to(2) == [(0, 1), (1, 0), (0, 2), (1, 1), (2, 0)]

    def test_element_count_matches_weight_spaces(self, crystal11):
        # 1 + (1 + 1) + (1 + 2 + 1)
        assert len(crystal11.elements_up_to(2)) == 7

    def test_star_is_an_involution(self, crystal11):
        for b in crystal11.elements_up_to(2):
            assert crystal11.star(crystal11.star(b)) == b
            assert crystal11.weight(crystal11.star(b)) == crystal11.weight(b)

    def test_labels_under_another_order(self, a11, crystal11):
        other = bn_order(a11, 1)
        for b in crystal11.elements_up_to(2):
            c = crystal11.datum_under(b, other)
            assert crystal11.from_datum(c, other) == b

    def test_describe(self, crystal11):
        b = crystal11.e(0, crystal11.lowest())
        assert b.describe() == "{beta=[1,0]:1; delta=[[]]}"
        assert repr(crystal11) == "Crystal(A1~1, bn:0)"
