# tests/test_pbw.py
import pytest

from affinepbw.cartan import roots_up_to_height
from affinepbw.convex_order import bn_order, reverse_order
from affinepbw.exceptions import IndexOutOfRange, RootBeyondCutoff, RootNotInSystem
from affinepbw.pbw import (
    LusztigDatum,
    complete_vector,
    dual_norm_residues,
    lusztig_data,
    lusztig_weight,
    monomial_factors,
    pbw_basis,
    pbw_monomial,
    prefix_factorization,
    psi_vector,
    real_root_vector,
    schur_vector,
)
from affinepbw.ring import ONE, is_regular, qs, residue_at_infinity
from affinepbw.symmetric import lr_product
from affinepbw.uqplus import AlgebraElement, commutator, divided_power, gram_rank, kashiwara_form, product, star


def E(typ, *word):
    return AlgebraElement.monomial(typ, word)


class TestLusztigDatum:
    """Test suite for Lusztig data and their weights."""

    def test_build_and_describe(self, a11):
        c = LusztigDatum.build(a11, {(1, 0): 2})
        assert c.describe() == "{beta=[1,0]:2; delta=[[]]}"
        assert c.count((1, 0)) == 2
        assert c.count((0, 1)) == 0
        assert not c.is_zero()
        assert LusztigDatum.build(a11).is_zero()

    def test_build_rejects_bad_input(self, a11):
        with pytest.raises(ValueError):
            LusztigDatum.build(a11, {(1, 0): -1})
        with pytest.raises(RootNotInSystem):
            LusztigDatum.build(a11, {(1, 1): 1})
        with pytest.raises(ValueError):
            LusztigDatum.build(a11, {}, [(1,), (1,)])

    def test_weight_includes_imaginary_part(self, a11, a22):
        c = LusztigDatum.build(a11, {(0, 1): 1}, [(2, 1)])
        assert lusztig_weight(c, a11) == (3, 4)
        # the imaginary part of the twisted type counts d_1 = 1 copies of delta per box
        assert lusztig_weight(LusztigDatum.build(a22, {}, [(1,)]), a22) == (1, 2)

    @pytest.mark.parametrize("weight", [(1, 0), (1, 1), (2, 1), (1, 2), (2, 2), (3, 1)])
    def test_data_count_matches_weight_space_dimension(self, a11, weight):
        data = lusztig_data(a11, weight)
        assert len(data) == gram_rank(a11, weight)
        assert all(lusztig_weight(c, a11) == weight for c in data)

    def test_negative_weight_has_no_data(self, a11):
        assert lusztig_data(a11, (-1, 2)) == []


class TestRootVectors:
    """Test suite for real and imaginary root vectors."""

    def test_simple_roots_give_generators(self, a11, a21):
        for typ in (a11, a21):
            for p in (0, 1, -1):
                order = bn_order(typ, p)
                for i in typ.nodes:
                    assert real_root_vector(order, typ.simple_root(i)) == E(typ, i)

    def test_root_vector_has_its_weight(self, bn0):
        assert real_root_vector(bn0, (2, 1)).weight == (2, 1)
        assert real_root_vector(bn0, (1, 2)).weight == (1, 2)

    @pytest.mark.parametrize("beta", [(0, 1), (1, 0), (1, 2), (2, 1), (2, 3), (3, 2), (3, 4), (4, 3)])
    def test_star_of_root_vector_uses_reversed_order(self, bn0, beta):
        assert star(real_root_vector(bn0, beta)) == real_root_vector(reverse_order(bn0), beta)

    @pytest.mark.parametrize("p", [0, 1])
    def test_star_of_root_vectors_on_a21(self, a21, p):
        order = bn_order(a21, p)
        for beta in roots_up_to_height(a21, 4):
            if a21.delta_multiple(beta) is None:
                assert star(real_root_vector(order, beta)) == real_root_vector(reverse_order(order), beta)

    def test_delta_and_cutoff_are_rejected(self, bn0):
        with pytest.raises(RootNotInSystem):
            real_root_vector(bn0, (1, 1))
        with pytest.raises(RootBeyondCutoff):
            real_root_vector(bn0, (2, 1), cutoff=2)

    def test_imaginary_vectors_commute(self, a11):
        psi1 = psi_vector(a11, a11.identity, 1, 1)
        psi2 = psi_vector(a11, a11.identity, 1, 2)
        assert psi1.weight == (1, 1)
        assert commutator(psi1, psi2).is_zero()

    def test_psi_index_starts_at_one(self, a11):
        with pytest.raises(IndexOutOfRange):
            psi_vector(a11, a11.identity, 1, 0)


class TestPBWMonomials:
    """Test suite for PBW monomials of the standard order."""

    def test_monomial_orders_factors_by_the_order(self, a11, bn0):
        c = LusztigDatum.build(a11, {(1, 0): 1, (0, 1): 1})
        below, above = monomial_factors(c, bn0)
        assert below == [((0, 1), 1)]
        assert above == [((1, 0), 1)]
        assert pbw_monomial(c, bn0) == E(a11, 1, 0)

    def test_divided_powers_of_simple_roots(self, a11, bn0):
        c = LusztigDatum.build(a11, {(0, 1): 2})
        assert pbw_monomial(c, bn0) == divided_power(a11, 1, 2)

    def test_basis_matches_data(self, a11, bn0):
        basis = pbw_basis(bn0, (1, 1))
        assert [c for c, _ in basis] == lusztig_data(a11, (1, 1))

    def test_prefix_factorization(self, a11, bn0):
        c = LusztigDatum.build(a11, {(0, 1): 1, (1, 2): 1, (1, 0): 1})
        left, right = prefix_factorization(c, bn0, 2)
        assert product(left, right) == pbw_monomial(c, bn0)

    def test_cutoff_on_monomials(self, a11, bn0):
        c = LusztigDatum.build(a11, {(1, 2): 1})
        with pytest.raises(RootBeyondCutoff):
            pbw_monomial(c, bn0, cutoff=2)

    def test_basis_is_almost_orthonormal(self, bn0):
        residues = dual_norm_residues(bn0, (1, 1))
        n = len(residues)
        assert residues == [[1 if a == b else 0 for b in range(n)] for a in range(n)]


class TestImaginaryVectors:
    """Test suite for the complete and Schur vectors built from psi."""

    def test_second_complete_vector_follows_the_generating_series(self, a11):
        psi1 = psi_vector(a11, a11.identity, 1, 1)
        psi2 = psi_vector(a11, a11.identity, 1, 2)
        expected = product(psi1, psi1).scale(ONE / 2) + psi2.scale(ONE / (qs(1) + qs(-1)))
        assert complete_vector(a11, a11.identity, 1, 1) == psi1
        assert complete_vector(a11, a11.identity, 1, 2) == expected

    def test_second_complete_vector_is_a_crystal_lift(self, a11):
        h2 = complete_vector(a11, a11.identity, 1, 2)
        norm = kashiwara_form(h2, h2)
        assert is_regular(norm)
        assert residue_at_infinity(norm) == 1

    @pytest.mark.parametrize(
        "lam, mu",
        [((1,), (1,)), ((1,), (2,)), ((1,), (1, 1)), ((2,), (1,))],
    )
    def test_schur_vectors_multiply_by_littlewood_richardson(self, a11, lam, mu):
        left = product(schur_vector(a11, a11.identity, 1, lam), schur_vector(a11, a11.identity, 1, mu))
        right = AlgebraElement.zero(a11)
        for nu, c in lr_product(lam, mu).items():
            right = right + schur_vector(a11, a11.identity, 1, nu).scale(c)
        assert left == right
