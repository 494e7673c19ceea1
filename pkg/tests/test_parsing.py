# tests/test_parsing.py
import pytest

from affinepbw.convex_order import bn_order, coarse_type
from affinepbw.exceptions import ParseError, RootNotInSystem
from affinepbw.parsing import (
    parse_datum,
    parse_element,
    parse_order,
    parse_root,
    parse_scalar,
    parse_word,
)
from affinepbw.pbw import LusztigDatum
from affinepbw.ring import qs
from affinepbw.uqplus import AlgebraElement


class TestScalars:
    """Test suite for reading rational functions of q."""

    def test_quantum_integer(self):
        assert parse_scalar("qs + qs^-1") == qs(1) + qs(-1)
        assert parse_scalar("qs**2 - 1") == qs(2) - 1

    def test_q_depends_on_the_scale(self, a11, a22):
        assert parse_scalar("q", a11) == qs(1)
        assert parse_scalar("q", a22) == qs(2)

    @pytest.mark.parametrize("text", ["x", "qs + t", "("])
    def test_unreadable_scalars(self, text):
        with pytest.raises(ParseError):
            parse_scalar(text)


def test_roots_and_words(a11):
    assert parse_root("[1,0]", a11) == (1, 0)
    assert parse_root([2, 1]) == (2, 1)
    with pytest.raises(ParseError):
        parse_root("[1,0,0]", a11)
    with pytest.raises(ParseError):
        parse_root("abc")
    assert parse_word("e") == ()
    assert parse_word("s0s1", a11) == (0, 1)
    with pytest.raises(ParseError):
        parse_word("012", a11)


class TestOrderSpecs:
    """Test suite for the order spec mini-language."""

    def test_bn_spec(self, a11):
        assert parse_order("bn:1", a11).key == bn_order(a11, 1).key
        assert parse_order("bn:1", a11).label == "bn:1"

    @pytest.mark.parametrize("spec", ["bn:x", "zzz", "word:0|1", "word:|0..0|"])
    def test_bad_specs(self, a11, spec):
        with pytest.raises(ParseError):
            parse_order(spec, a11)

    def test_word_spec_matches_the_standard_order(self, a11, bn0):
        assert parse_order("word:|0~10..1~10|", a11).key == bn0.key

    def test_coarse_and_minimal_specs(self, a11):
        assert coarse_type(parse_order("coarse:1", a11)) == a11.classical_element((1,))
        assert parse_order("min1:e", a11).minimal_root() == (0, 1)

    def test_chain_spec_keeps_its_label(self, a11):
        spec = "chain:[[0,1],[1,1],[1,0]]"
        assert parse_order(spec, a11).label == spec


class TestDatumSyntax:
    """Test suite for braced Lusztig data."""

    def test_full_datum(self, a11):
        c = parse_datum("{beta=[1,0]:2, beta=[0,1]:1; delta=[[1]]}", a11)
        assert c == LusztigDatum.build(a11, {(1, 0): 2, (0, 1): 1}, [(1,)])

    def test_empty_datum(self, a11):
        assert parse_datum("{}", a11).is_zero()

    def test_unbraced_datum(self, a11):
        with pytest.raises(ParseError):
            parse_datum("beta=[1,0]:2", a11)

    def test_delta_is_not_a_real_root(self, a11):
        with pytest.raises(RootNotInSystem):
            parse_datum("{beta=[1,1]:1}", a11)


class TestElementSyntax:
    """Test suite for elements written as sums of words."""

    def test_mixed_coefficients(self, a11):
        x = parse_element("(qs + qs^-1)*E0 E1 - 2*E1 E0", a11)
        expected = AlgebraElement.monomial(a11, (0, 1), qs(1) + qs(-1)) - AlgebraElement.monomial(a11, (1, 0), 2)
        assert x == expected

    def test_leading_sign_and_constants(self, a11):
        assert parse_element("-E0", a11) == AlgebraElement.monomial(a11, (0,), -1)
        assert parse_element("3", a11) == AlgebraElement.monomial(a11, (), 3)

    def test_node_outside_the_diagram(self, a11):
        with pytest.raises(ParseError):
            parse_element("E2", a11)
