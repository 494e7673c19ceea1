# tests/test_verification.py
import pytest

from affinepbw.convex_order import order_with_minimal, reflect_order
from affinepbw.exceptions import EngineError
from affinepbw.pbw import LusztigDatum
from affinepbw.verification import (
    TAGS,
    VerificationReport,
    VerificationSuite,
    default_orders,
    phi_map,
    trap_root,
)


def test_default_order_labels(a11):
    labels = [order.label for order in default_orders(a11)]
    assert labels == ["bn:0", "bn:1", "bn:-1", "bn:2", "bn:-2", "min1:e"]


def test_trap_roots(a11, a22):
    assert trap_root(a11, 1) == (1, 0)
    assert trap_root(a22, 1) == (1, 0)


class TestVerificationReport:
    """Test suite for recording and merging check results."""

    def test_record_counts_and_keeps_violations(self):
        report = VerificationReport("A1~1", 2)
        assert report.record("C", True)
        assert not report.record("C", False, "bad exponent", node=1)
        assert report.checked["C"] == 2
        assert not report.passed
        assert report.to_dict()["violations"] == [{"tag": "C", "detail": "bad exponent", "context": {"node": "1"}}]

    def test_merge_adds_counts(self):
        left = VerificationReport("A1~1", 2)
        left.record("S", True)
        right = VerificationReport("A1~1", 2)
        right.record("S", True)
        right.record("I", True)
        merged = left.merge(right)
        assert merged.checked["S"] == 2
        assert merged.checked["I"] == 1
        assert merged.passed

    def test_dict_round_trip(self):
        report = VerificationReport("A2~1", 3, ["bn:0"])
        report.record("trap", False, "reflected data leave the trapezoid", node=2)
        report.record("edge", True)
        payload = report.to_dict()
        assert VerificationReport.from_dict(payload).to_dict() == payload

    def test_every_tag_is_distinct(self):
        assert len(set(TAGS)) == len(TAGS)


class TestVerificationSuite:
    """Test suite for the end-to-end checks on A1~1."""

    def test_cutoff_must_be_positive(self, a11):
        with pytest.raises(EngineError):
            VerificationSuite(a11, 0)

    def test_crystal_conditions_hold(self, a11, crystal11):
        report = VerificationSuite(a11, 2, polytopes=False, crystal=crystal11).run()
        assert report.passed, report.to_dict()["violations"]
        for tag in ("C", "S", "convex", "axiom-1", "trap", "Phi-id"):
            assert report.checked[tag] > 0
        assert report.checked["cone"] == 0

    def test_window_convexity_has_its_own_tag(self, a11, crystal11):
        report = VerificationSuite(a11, 2, polytopes=False, crystal=crystal11).check_global()
        assert set(report.checked) == {"convex"}
        assert report.checked["convex"] == len(default_orders(a11))

    def test_all_checks_hold_on_a21(self, a21):
        report = VerificationSuite(a21, 2).run()
        assert report.passed, report.to_dict()["violations"]
        for tag in ("C", "S", "convex", "axiom-1", "cone", "path", "streams"):
            assert report.checked[tag] > 0

    def test_crystal_conditions_hold_on_a22(self, a22):
        report = VerificationSuite(a22, 2, polytopes=False).run()
        assert report.passed, report.to_dict()["violations"]
        for tag in ("C", "S", "convex", "axiom-1"):
            assert report.checked[tag] > 0

    def test_polytope_invariants_hold(self, a11, crystal11):
        report = VerificationSuite(a11, 1, crystal=crystal11).run()
        assert report.passed, report.to_dict()["violations"]
        assert report.checked["streams"] > 0
        assert report.checked["cone"] > 0
        assert report.checked["path"] > 0


def test_phi_map_fixes_a_single_box(crystal11):
    out = phi_map(crystal11, 1, ((1,),))
    assert out["image"] == ((1,),)
    assert out["a"] == 1


@pytest.mark.parametrize("mp", [((1,),), ((2,),), ((1, 1),), ((2, 1),)])
def test_phi_map_is_the_identity(crystal11, mp):
    assert phi_map(crystal11, 1, mp)["image"] == mp


def test_trapezoid_exchange_for_two_one(a11, crystal11):
    lower = order_with_minimal(a11, 1, a11.identity)
    upper = reflect_order(lower, 1)
    b = crystal11.from_datum(LusztigDatum.build(a11, {}, [(2, 1)]), upper)
    # the largest part 2 becomes the trapezoid edge and the rest stays imaginary
    expected = LusztigDatum.build(a11, {(0, 1): 2, (1, 0): 2}, [(1,)])
    assert crystal11.datum_under(b, lower) == expected
