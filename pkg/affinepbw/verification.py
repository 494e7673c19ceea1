# affinepbw/verification.py
"""
Verification suite for MV polytopes and the crystal B(-infinity).

Every check runs over crystal elements inside a height cutoff and records
each instance it examines under a condition tag. A failed instance becomes
a Violation carrying the tag, a short detail and the data needed to
reproduce it. Reports from separate weight spaces merge order-insensitively,
so the work can be split per weight (see tasks.verify_weight_task).
"""

from __future__ import annotations

import logging
from collections import Counter
from dataclasses import dataclass, field

from .basis_lab import lex_dominates
from .cartan import AffineTypeData, enumerate_roots, inversion_roots
from .convex_order import (
    OneRowOrder,
    bn_order,
    check_window_convexity,
    in_cone,
    order_with_minimal,
    reflect_order,
    translation_order,
)
from .crystal import Crystal, CrystalElem
from .exceptions import EngineError, PathAmbiguity
from .pbw import LusztigDatum
from .polytope import (
    build_pbw_polytope,
    crystal_theoretic_lusztig_data,
    order_path,
    polytopal_lusztig_data,
)
from .symmetric import insert_part, multipartition_weight, multipartitions, remove_largest_part
from .uqplus import admits_positive_braid, braid_apply

logger = logging.getLogger(__name__)

CSI_TAGS = ("C", "S", "I")
ORDER_TAGS = ("convex",)
LEMMA_TAGS = ("cone", "elex", "trap", "phi-eq", "a-le", "a-zero", "Phi-id")
AXIOM_TAGS = tuple(f"axiom-{k}" for k in range(1, 7)) + ("saito",)
POLYTOPE_TAGS = ("edge", "vertex", "path", "decoration", "streams")
TAGS = CSI_TAGS + ORDER_TAGS + LEMMA_TAGS + AXIOM_TAGS + POLYTOPE_TAGS


def _text(value) -> str:
    if value is None:
        return "none"
    if isinstance(value, CrystalElem):
        return value.describe()
    if isinstance(value, LusztigDatum):
        return value.describe()
    if isinstance(value, OneRowOrder):
        return value.label
    return str(value)


@dataclass(frozen=True)
class Violation:
    tag: str
    detail: str
    context: tuple = ()

    def to_dict(self) -> dict:
        return {"tag": self.tag, "detail": self.detail, "context": dict(self.context)}


@dataclass
class VerificationReport:
    """Counts of checked instances per tag plus every violated instance."""

    type_tag: str
    cutoff: int
    orders: list = field(default_factory=list)
    checked: Counter = field(default_factory=Counter)
    violations: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations

    def record(self, tag: str, ok: bool, detail: str = "", **context) -> bool:
        self.checked[tag] += 1
        if not ok:
            violation = Violation(tag, detail, tuple(sorted((k, _text(v)) for k, v in context.items())))
            self.violations.append(violation)
            logger.warning("violation [%s] %s %s", tag, detail, dict(violation.context))
        return ok

    def merge(self, other: "VerificationReport") -> "VerificationReport":
        self.checked.update(other.checked)
        self.violations.extend(other.violations)
        return self

    def to_dict(self) -> dict:
        ordered = sorted(self.violations, key=lambda v: (v.tag, v.detail, v.context))
        return {
            "type": self.type_tag,
            "cutoff": self.cutoff,
            "orders": list(self.orders),
            "checked": {tag: self.checked[tag] for tag in sorted(self.checked)},
            "violations": [v.to_dict() for v in ordered],
            "passed": self.passed,
        }

    @classmethod
    def from_dict(cls, payload: dict) -> "VerificationReport":
        report = cls(payload["type"], payload["cutoff"], list(payload.get("orders", [])))
        report.checked.update(payload.get("checked", {}))
        for item in payload.get("violations", []):
            context = tuple(sorted(item.get("context", {}).items()))
            report.violations.append(Violation(item["tag"], item["detail"], context))
        return report


def default_orders(typ: AffineTypeData) -> list:
    """Reflected Beck-Nakajima orders on both sides plus one order per finite node with alpha_i minimal."""
    orders = [bn_order(typ, p) for p in (0, 1, -1, 2, -2)]
    orders.extend(order_with_minimal(typ, i, typ.identity) for i in typ.finite_nodes)
    return orders


def trap_root(typ: AffineTypeData, i: int) -> tuple:
    """d_i delta - r_i alpha_i."""
    return tuple(typ.d[i] * m - (typ.r[i] if k == i else 0) for k, m in enumerate(typ.delta))


def _slot(typ: AffineTypeData, i: int) -> int:
    return list(typ.finite_nodes).index(i)


def phi_map(crystal: Crystal, i: int, mp) -> dict:
    """
    The round trip of a multipartition through sigma_i.

    b = b(mp) for the order with alpha_i minimal; a is read from the trapezoid
    edge of b in the reflected order, mu is the imaginary part of sigma_i b, and
    the image is mu with a inserted as a part at node i.
    """
    typ = crystal.typ
    lower = order_with_minimal(typ, i, typ.identity)
    upper = reflect_order(lower, i)
    b = crystal.from_datum(LusztigDatum.build(typ, {}, mp), lower)
    reflected = crystal.datum_under(b, upper)
    a = reflected.count(trap_root(typ, i))
    s = crystal.sigma(i, b)
    image = None
    mu = None
    if s is not None:
        mu = crystal.datum_under(s, lower).imaginary
        slot = _slot(typ, i)
        image = tuple(insert_part(part, a) if k == slot and a else part for k, part in enumerate(mu))
    return {"b": b, "a": a, "reflected": reflected, "sigma": s, "mu": mu, "image": image}


class VerificationSuite:
    """Conditions (C), (S), (I), the supporting lemmas, crystal axioms and polytope invariants."""

    def __init__(self, typ: AffineTypeData, cutoff: int, orders=None, polytopes: bool = True,
                 sample_length: int | None = None, crystal: Crystal | None = None):
        if cutoff < 1:
            raise EngineError("cutoff must be at least 1", cutoff=cutoff)
        self.typ = typ
        self.cutoff = cutoff
        self.orders = list(orders) if orders else default_orders(typ)
        self.polytopes = polytopes
        self.sample_length = sample_length
        self.crystal = crystal or Crystal(typ)

    def new_report(self) -> VerificationReport:
        return VerificationReport(self.typ.tag, self.cutoff, [o.label for o in self.orders])

    def weights(self) -> list:
        return self.crystal.weights_up_to(self.cutoff)

    def run(self, weights=None) -> VerificationReport:
        report = self.check_global()
        for weight in weights if weights is not None else self.weights():
            report.merge(self.check_weight(weight))
        logger.info(
            "verification %s cutoff %d: %d checks, %d violations",
            self.typ.tag, self.cutoff, sum(report.checked.values()), len(report.violations),
        )
        return report

    # --- Per-run checks ---

    def check_global(self) -> VerificationReport:
        report = self.new_report()
        degree = max(1, self.cutoff // max(1, sum(self.typ.delta)))
        for order in self.orders:
            bad = check_window_convexity(order, degree)
            report.record("convex", not bad, "order is not convex on the root window", order=order, pairs=bad[:3])
        return report

    def check_weight(self, weight) -> VerificationReport:
        weight = tuple(weight)
        report = self.new_report()
        for b in self.crystal.elements(weight):
            try:
                self._check_element(report, b)
            except EngineError as exc:
                report.record(exc.tag, False, str(exc.detail), **{**exc.context, "element": b})
        m = self.typ.delta_multiple(weight)
        if m:
            for mp in multipartitions(self.typ, m):
                for i in self.typ.finite_nodes:
                    try:
                        self._check_imaginary(report, i, mp)
                    except EngineError as exc:
                        report.record(exc.tag, False, str(exc.detail), **{**exc.context, "multipartition": mp, "node": i})
        return report

    def _check_element(self, report: VerificationReport, b: CrystalElem) -> None:
        self._check_axioms(report, b)
        self._check_saito(report, b)
        for order in self.orders:
            self._check_operator_edges(report, b, order)
            self._check_reflection(report, b, order)
        for i in self.typ.finite_nodes:
            self._check_trapezoid(report, b, i)
            self._check_lex_monotone(report, b, i)
        if self.polytopes:
            self._check_polytope(report, b)

    # --- Crystal axioms ---

    def _check_axioms(self, report: VerificationReport, b: CrystalElem) -> None:
        cr, typ = self.crystal, self.typ
        wt = cr.weight(b)
        for i in typ.nodes:
            up, up_star = cr.e(i, b), cr.e(i, b, starred=True)
            report.record(
                "axiom-1",
                cr.f(i, up) == b and cr.f(i, up_star, starred=True) == b,
                "raising then lowering does not return the element", element=b, node=i,
            )
            for j in typ.nodes:
                if j != i:
                    report.record(
                        "axiom-2",
                        cr.e(i, cr.e(j, b), starred=True) == cr.e(j, up_star),
                        "starred and plain raising do not commute", element=b, node=i, other=j,
                    )
            phi, phi_star = cr.phi(i, b), cr.phi(i, b, starred=True)
            s = phi + phi_star - typ.coroot_pairing(wt, i)
            report.record("axiom-3", s >= 0, "string sum is negative", element=b, node=i, value=s)
            if s == 0:
                report.record("axiom-4", up == up_star, "raisings differ at string sum zero", element=b, node=i)
            if s >= 1:
                report.record(
                    "axiom-5",
                    cr.phi(i, up, starred=True) == phi_star and cr.phi(i, up_star) == phi,
                    "raising changed the other string length", element=b, node=i, value=s,
                )
            if s >= 2:
                report.record(
                    "axiom-6",
                    cr.e(i, up_star) == cr.e(i, up, starred=True),
                    "raisings do not commute at string sum two", element=b, node=i, value=s,
                )

    def _check_saito(self, report: VerificationReport, b: CrystalElem) -> None:
        cr = self.crystal
        lift = cr.lift(b)
        for i in self.typ.nodes:
            for direction, starred in (("fwd", False), ("inv", True)):
                if not admits_positive_braid(i, direction, lift):
                    continue
                image = cr.classify(braid_apply(i, direction, lift))
                report.record(
                    "saito", image == cr.sigma(i, b, starred),
                    "braid image of the lift disagrees with the crystal reflection",
                    element=b, node=i, direction=direction, image=image,
                )

    # --- (C) and (S) ---

    def _extremal(self, order: OneRowOrder) -> list:
        """(node, starred) for the simple roots at either end of the order."""
        return [(order.backward.letter(0), False), (order.forward.letter(0), True)]

    def _check_operator_edges(self, report: VerificationReport, b: CrystalElem, order: OneRowOrder) -> None:
        cr, typ = self.crystal, self.typ
        c = cr.datum_under(b, order)
        for i, starred in self._extremal(order):
            alpha = typ.simple_root(i)
            report.record(
                "C", c.count(alpha) == cr.phi(i, b, starred),
                "extremal exponent differs from the string length",
                element=b, order=order, node=i, starred=starred,
            )
            lowered = cr.f(i, b, starred)
            if lowered is None:
                continue
            expected = c.with_real({alpha: c.count(alpha) - 1})
            got = cr.datum_under(lowered, order)
            report.record(
                "C", got == expected, "lowering did not decrement the extremal exponent by one",
                element=b, order=order, node=i, starred=starred, got=got, expected=expected,
            )

    def _check_reflection(self, report: VerificationReport, b: CrystalElem, order: OneRowOrder) -> None:
        cr, typ = self.crystal, self.typ
        for i, starred in self._extremal(order):
            if cr.f(i, b, starred) is not None:
                continue
            s = cr.sigma(i, b, starred)
            if not report.record("S", s is not None, "reflection is undefined", element=b, order=order, node=i):
                continue
            c = cr.datum_under(b, order)
            reflected = reflect_order(order, i)
            expected = LusztigDatum.build(typ, {typ.reflect(i, beta): n for beta, n in c.real}, c.imaginary)
            got = cr.datum_under(s, reflected)
            got = got.with_real({typ.simple_root(i): 0})
            report.record(
                "S", got == expected, "reflected data are not the reindexed data",
                element=b, order=order, node=i, starred=starred, got=got, expected=expected,
            )

    # --- (I) and the trapezoid ---

    def _check_trapezoid(self, report: VerificationReport, b: CrystalElem, i: int) -> None:
        cr, typ = self.crystal, self.typ
        lower = order_with_minimal(typ, i, typ.identity)
        upper = reflect_order(lower, i)
        slot = _slot(typ, i)
        alpha, trap = typ.simple_root(i), trap_root(typ, i)
        c_upper = cr.datum_under(b, upper)
        c_lower = cr.datum_under(b, lower)
        stage = multipartition_weight(typ, c_upper.imaginary)
        if c_upper.is_purely_imaginary() and c_upper.imaginary[slot]:
            lam = c_upper.imaginary
            top = lam[slot][0]
            imaginary = tuple(remove_largest_part(p) if k == slot else p for k, p in enumerate(lam))
            expected = LusztigDatum.build(typ, {alpha: typ.r[i] * top, trap: top}, imaginary)
            report.record(
                "I", c_lower == expected, "trapezoid exchange failed", element=b, node=i,
                stage=stage, got=c_lower, expected=expected,
            )
        a = c_lower.count(trap)
        shaped = a > 0 and set(c_lower.real_map) == {alpha, trap} and c_lower.count(alpha) == typ.r[i] * a
        if shaped:
            imaginary = tuple(insert_part(p, a) if k == slot else p for k, p in enumerate(c_lower.imaginary))
            expected = LusztigDatum.build(typ, {}, imaginary)
            report.record(
                "I", c_upper == expected, "trapezoid exchange failed in the converse direction",
                element=b, node=i, stage=stage, got=c_upper, expected=expected,
            )

    def _check_lex_monotone(self, report: VerificationReport, b: CrystalElem, i: int) -> None:
        cr, typ = self.crystal, self.typ
        lower = order_with_minimal(typ, i, typ.identity)
        upper = reflect_order(lower, i)
        raised_star = cr.e(i, b, starred=True)
        report.record(
            "elex",
            lex_dominates(cr.datum_under(raised_star, lower), cr.datum_under(b, lower), lower, above=False),
            "starred raising decreased the data from the left", element=b, node=i,
        )
        raised = cr.e(i, b)
        report.record(
            "elex",
            lex_dominates(cr.datum_under(raised, upper), cr.datum_under(b, upper), upper, above=True),
            "raising decreased the data from the right", element=b, node=i,
        )

    def _check_imaginary(self, report: VerificationReport, i: int, mp) -> None:
        cr, typ = self.crystal, self.typ
        lower = order_with_minimal(typ, i, typ.identity)
        alpha, trap = typ.simple_root(i), trap_root(typ, i)
        out = phi_map(cr, i, mp)
        b, a, reflected, s = out["b"], out["a"], out["reflected"], out["sigma"]
        stage = multipartition_weight(typ, mp)
        trap_shape = set(reflected.real_map) <= {alpha, trap} and reflected.count(alpha) == typ.r[i] * a
        report.record("trap", trap_shape, "reflected data leave the trapezoid", multipartition=mp, node=i,
                      got=reflected, stage=stage)
        if s is None:
            report.record("trap", False, "reflection of a purely imaginary element is undefined",
                          multipartition=mp, node=i)
            return
        c_sigma = cr.datum_under(s, lower)
        sigma_shape = set(c_sigma.real_map) <= {alpha, trap} and c_sigma.count(alpha) == typ.r[i] * c_sigma.count(trap)
        report.record("trap", sigma_shape, "reflected element leaves the trapezoid", multipartition=mp, node=i,
                      got=c_sigma, stage=stage)
        phi_star = cr.phi(i, b, starred=True)
        report.record(
            "phi-eq", cr.phi(i, s) == phi_star == typ.r[i] * a,
            "string lengths disagree across the reflection", multipartition=mp, node=i,
            phi=cr.phi(i, s), phi_star=phi_star, a=a,
        )
        inner = cr.from_datum(LusztigDatum.build(typ, {}, out["mu"]), lower)
        a_inner = cr.datum_under(inner, reflect_order(lower, i)).count(trap)
        report.record("a-le", a_inner <= a, "inner trapezoid is wider", multipartition=mp, node=i,
                      inner=a_inner, outer=a)
        if mp[_slot(typ, i)]:
            report.record("a-zero", phi_star > 0, "starred string length vanishes", multipartition=mp, node=i)
        report.record("Phi-id", out["image"] == tuple(mp), "round trip moved the multipartition",
                      multipartition=mp, node=i, image=out["image"])

    # --- Polytopes ---

    def _roots_below(self, weight) -> list:
        typ = self.typ
        if not any(weight):
            return []
        window = enumerate_roots(typ, max(1, typ.delta_degree(weight)))
        return [beta for beta in window if all(x <= w for x, w in zip(beta, weight))]

    def _check_polytope(self, report: VerificationReport, b: CrystalElem) -> None:
        cr, typ = self.crystal, self.typ
        try:
            P = build_pbw_polytope(cr, b, self.sample_length)
        except EngineError as exc:
            report.record("edge", False, str(exc.detail), **{**exc.context, "element": b})
            return
        report.record("edge", True)
        report.record("vertex", P.stabilized, "mu vertices did not stabilize", element=b,
                      sample_length=P.sample_length)
        vertices = set(P.vertices)
        zero = (0,) * typ.rank
        for word, pair in P.mu.items():
            report.record("vertex", all(p in vertices for p in pair), "mu vertex is not a hull vertex",
                          element=b, word=word, mu=pair)
        heights = sorted(sum(v) for v in P.vertices)
        report.record(
            "vertex",
            P.bottom == zero and P.top == P.weight and heights.count(heights[0]) == 1 and heights.count(heights[-1]) == 1,
            "extremal vertices are not unique", element=b,
        )
        self._check_cone(report, b, P)
        for wbar in typ.classical_group:
            order = translation_order(typ, wbar)
            try:
                path = order_path(P, order) if not P.is_point() else []
            except PathAmbiguity:
                continue
            length = sum(e["multiple"] for e in path if e["root"] == typ.delta)
            decoration = P.decorations.get(wbar.word)
            report.record(
                "decoration", multipartition_weight(typ, decoration) == length,
                "imaginary edge length differs from the decoration weight",
                element=b, coarse=wbar.word, length=length, decoration=decoration,
            )
        for order in self.orders:
            if not P.is_point():
                try:
                    order_path(P, order)
                except PathAmbiguity as exc:
                    report.record("path", False, str(exc.detail), **{**exc.context, "element": b})
                    continue
                report.record("path", True)
            expected = cr.datum_under(b, order)
            got = polytopal_lusztig_data(P, order)
            report.record("streams", got == expected, "polytopal data differ from PBW exponents",
                          element=b, order=order, got=got, expected=expected)
            roots = {beta for beta, _ in expected.real}
            roots.update(order.row_roots(1, 2) + order.row_roots(-1, 2))
            for beta in sorted(roots):
                value = crystal_theoretic_lusztig_data(cr, b, order, beta)
                report.record("streams", value == expected.count(beta),
                              "crystal-theoretic data differ from PBW exponents",
                              element=b, order=order, root=beta, got=value, expected=expected.count(beta))

    def _check_cone(self, report: VerificationReport, b: CrystalElem, P) -> None:
        """mu_S' - mu_S lies in the cone of -S_1 and S_2 for every pair of sampled partitions."""
        typ = self.typ
        window = self._roots_below(P.weight)
        partitions = {}
        for word, (plus, minus) in P.mu.items():
            inverted = set(inversion_roots(typ, word))
            low = frozenset(beta for beta in window if beta in inverted)
            high = frozenset(beta for beta in window if beta not in inverted)
            partitions[(low, high)] = plus
            partitions[(high, low)] = minus
        values = set(partitions.values())
        for (s1, s2), mu in partitions.items():
            generators = [tuple(-x for x in beta) for beta in s1] + list(s2)
            for other in values:
                diff = tuple(x - y for x, y in zip(other, mu))
                report.record("cone", in_cone(diff, generators), "vertex difference leaves the partition cone",
                              element=b, mu=mu, other=other)
