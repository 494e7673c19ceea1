# tests/test_cartan.py
from fractions import Fraction

import pytest

from affinepbw.cartan import (
    SUPPORTED_TYPES,
    bn_infinite_word,
    build_type,
    enumerate_roots,
    inversion_roots,
    is_reduced,
    pairing,
    reflect_root,
    roots_up_to_height,
)
from affinepbw.exceptions import EngineError, UnsupportedType


def unrolled(word, periods):
    """period, twist(period), twist^2(period), ... as one finite word"""
    out, letters = [], list(word.period)
    for _ in range(periods):
        out.extend(letters)
        letters = [word.twist[i] for i in letters]
    return tuple(out)


class TestBuildType:
    """Test suite for the affine type table."""

    def test_a11_data(self, a11):
        assert a11.cartan == ((2, -2), (-2, 2))
        assert a11.delta == (1, 1)
        assert a11.d == (1, 1)
        assert a11.r == (1, 1)

    def test_a22_data(self, a22):
        assert a22.delta == (1, 2)
        assert a22.d == (2, 1)
        assert a22.r == (1, 2)
        assert a22.scale == 2

    def test_all_supported_types_build(self):
        for tag in SUPPORTED_TYPES:
            typ = build_type(tag)
            assert typ.tag == tag
            assert typ.coroot_pairing(typ.delta, 0) == 0

    def test_unknown_type_is_rejected(self):
        with pytest.raises(UnsupportedType) as info:
            build_type("B2~1")
        assert isinstance(info.value, EngineError)
        assert info.value.as_dict()["error"] == "UnsupportedType"

    def test_build_type_is_cached(self):
        assert build_type("A1~1") is build_type("A1~1")
        assert build_type(" A1~1 ") == build_type("A1~1")


def test_pairing_values(a11, a22):
    delta = a11.delta
    assert pairing(delta, delta, a11) == 0
    assert pairing((0, 1), (0, 1), a11) == 2
    assert pairing((1, 0), (0, 1), a11) == -2
    # long node 0, short node 1
    assert pairing((1, 0), (1, 0), a22) == 4
    assert pairing((0, 1), (0, 1), a22) == 1
    assert pairing(a22.delta, a22.delta, a22) == Fraction(0)


def test_reflection_of_simple_root(a11):
    assert reflect_root(1, (1, 0), a11) == (1, 2)
    assert reflect_root(0, (0, 1), a11) == (2, 1)
    # delta is fixed by every simple reflection
    for i in a11.nodes:
        assert reflect_root(i, a11.delta, a11) == a11.delta


def test_enumerate_roots_degree_one(a11):
    assert enumerate_roots(a11, 1) == ((0, 1), (1, 0), (1, 1))


def test_enumerate_roots_degree_two_adds_one_delta_only(a11):
    roots = enumerate_roots(a11, 2)
    assert roots == ((0, 1), (1, 0), (1, 1), (1, 2), (2, 1))
    assert (2, 2) not in roots


def test_enumerate_roots_a21(a21):
    roots = enumerate_roots(a21, 1)
    assert len(roots) == 7
    assert a21.delta in roots
    assert all(a21.in_min_positive_system(beta) for beta in roots)


def test_enumerate_roots_rejects_zero_degree(a11):
    with pytest.raises(ValueError):
        enumerate_roots(a11, 0)


def test_roots_up_to_height(a11):
    assert roots_up_to_height(a11, 0) == ()
    assert roots_up_to_height(a11, 2) == ((0, 1), (1, 0), (1, 1))
    assert (1, 2) in roots_up_to_height(a11, 3)


def test_root_predicates(a11, a22):
    assert a11.is_positive_real_root((1, 2))
    assert not a11.is_positive_real_root((2, 2))
    assert a11.is_root((2, 2))
    assert a11.is_root((-1, 0))
    assert not a11.in_min_positive_system((2, 2))
    assert a11.in_min_positive_system((1, 1))
    assert a11.delta_multiple((3, 3)) == 3
    assert a11.delta_multiple((1, 2)) is None
    # alpha_0 + alpha_1 = delta - alpha_1 is real in the twisted type
    assert a22.is_real((1, 1))
    assert a22.is_positive_real_root(reflect_root(1, (1, 0), a22))
    assert a22.delta_degree((0, 3)) == 2


def test_inversion_roots_and_reducedness(a11):
    assert inversion_roots(a11, (0, 1)) == [(0, 1), (1, 2)]
    assert is_reduced(a11, (0, 1, 0))
    assert not is_reduced(a11, (0, 0))


def test_classical_group_shapes(a11, a21):
    assert len(a11.classical_group) == 2
    assert len(a21.classical_group) == 6
    assert a21.longest.length == 3
    assert a21.identity.word == ()
    assert a21.star_node(1) == 2
    assert a11.star_node(1) == 1
    s1 = a21.classical_element((1,))
    assert a21.compose(s1, s1) == a21.identity


@pytest.mark.parametrize("tag", SUPPORTED_TYPES)
def test_bn_word_is_reduced_over_several_periods(tag):
    typ = build_type(tag)
    word = bn_infinite_word(typ)
    assert is_reduced(typ, unrolled(word, 3))
