# tests/test_symmetric.py
import pytest

from affinepbw.symmetric import (
    dominates,
    insert_part,
    jacobi_trudi_terms,
    lr_coefficient,
    lr_product,
    multipartition_weight,
    multipartitions,
    normalize_partition,
    partitions,
    remove_largest_part,
)


def test_normalize_partition():
    assert normalize_partition([1, 3, 0, 2]) == (3, 2, 1)
    assert normalize_partition([]) == ()
    with pytest.raises(ValueError):
        normalize_partition([2, -1])


def test_partitions_are_listed_largest_first():
    assert partitions(0) == ((),)
    assert partitions(4) == ((4,), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1))
    assert partitions(-1) == ()


def test_multipartitions_weigh_nodes_by_d(a11, a21, a22):
    assert multipartitions(a11, 2) == (((2,),), ((1, 1),))
    assert set(multipartitions(a21, 1)) == {((1,), ()), ((), (1,))}
    assert len(multipartitions(a21, 2)) == 5
    assert multipartitions(a22, 2) == (((2,),), ((1, 1),))
    for mp in multipartitions(a21, 3):
        assert multipartition_weight(a21, mp) == 3


def test_dominance():
    assert dominates((2, 1), (1, 1, 1))
    assert not dominates((1, 1, 1), (2, 1))
    assert not dominates((2,), (1,))


def test_part_surgery():
    assert remove_largest_part((3, 1, 1)) == (1, 1)
    assert insert_part((3, 1), 2) == (3, 2, 1)


class TestLittlewoodRichardson:
    """Test suite for the tableau-counting oracle."""

    def test_pieri_products(self):
        assert lr_product((1,), (1,)) == {(2,): 1, (1, 1): 1}
        assert lr_product((2, 1), (1,)) == {(3, 1): 1, (2, 2): 1, (2, 1, 1): 1}

    def test_multiplicity_two(self):
        assert lr_coefficient((2, 1), (2, 1), (3, 2, 1)) == 2

    def test_size_mismatch_is_zero(self):
        assert lr_coefficient((1,), (1,), (3,)) == 0

    def test_symmetry_in_the_factors(self):
        for lam in partitions(2):
            for mu in partitions(2):
                assert lr_product(lam, mu) == lr_product(mu, lam)


def test_jacobi_trudi_expansion():
    assert jacobi_trudi_terms((2,)) == ((1, (2,)),)
    assert jacobi_trudi_terms((1, 1)) == ((1, (1, 1)), (-1, (2,)))
