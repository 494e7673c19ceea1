# affinepbw/basis_lab.py
"""
Expansions between bases of U_q^+.

Everything here works in PBW coordinates: an element is expanded in the
PBW basis of a one-row order by solving against the shuffle coordinates
of its weight space, and the canonical basis is the bar-invariant
unitriangular family obtained from those expansions.
"""

from __future__ import annotations

import logging
import threading
from dataclasses import dataclass, field
from typing import NamedTuple

from sympy.polys.matrices import DomainMatrix

from .convex_order import OneRowOrder
from .exceptions import EngineError, ResidueAmbiguity, TriangularityFailure, WeightMismatch
from .pbw import LusztigDatum, lusztig_weight, pbw_basis, pbw_monomial
from .ring import (
    ONE,
    RATFUNC_DOMAIN,
    ZERO,
    LaurentScalar,
    in_lower_lattice,
    is_regular,
    residue_at_infinity,
    to_laurent,
)
from .uqplus import (
    AlgebraElement,
    bar_element,
    divided_power,
    kashiwara_form,
    kashiwara_raise,
    product,
    weight_space,
    word_weight,
)

logger = logging.getLogger(__name__)

_LOCK = threading.RLock()
_TABLES: dict = {}
_CANONICAL: dict = {}
_EXTENSIONS: dict = {}


def clear_memos() -> None:
    with _LOCK:
        for memo in (_TABLES, _CANONICAL, _EXTENSIONS):
            memo.clear()


# --- Expansion tables ---

@dataclass
class ExpansionTable:
    """PBW columns of one weight space restricted to the test words, with their inverse."""

    weight: tuple
    order: OneRowOrder
    data: list
    matrix: list = field(repr=False)
    inverse: list = field(repr=False)

    def coefficients(self, shuffle: dict) -> dict:
        space = weight_space(self.order.typ, self.weight)
        values = [shuffle.get(w, ZERO) for w in space.test_words]
        out = {}
        for c, row in zip(self.data, self.inverse):
            coeff = sum((row[k] * values[k] for k in range(len(values)) if values[k]), ZERO)
            if coeff:
                out[c] = coeff
        return out


def expansion_table(order: OneRowOrder, weight) -> ExpansionTable:
    weight = tuple(weight)
    key = (order.key, weight)
    cached = _TABLES.get(key)
    if cached is not None:
        return cached
    typ = order.typ
    space = weight_space(typ, weight)
    basis = pbw_basis(order, weight)
    if len(basis) != space.dim:
        raise EngineError(
            "PBW vector count differs from the weight space dimension",
            weight=weight, pbw=len(basis), dim=space.dim, order=order.label,
        )
    data = [c for c, _ in basis]
    matrix = [[vector.shuffle.get(w, ZERO) for _, vector in basis] for w in space.test_words]
    n = len(data)
    inverse = DomainMatrix(matrix, (n, n), RATFUNC_DOMAIN).inv().to_list() if n else []
    table = ExpansionTable(weight, order, data, matrix, inverse)
    logger.debug("expansion table %s %s: %d data", order.label, weight, n)
    with _LOCK:
        table = _TABLES.setdefault(key, table)
    return table


def expand_in_pbw(x: AlgebraElement, order: OneRowOrder) -> dict:
    """Coefficients a_c with x = sum a_c L(c, order)."""
    by_weight: dict = {}
    for w, c in x.shuffle.items():
        by_weight.setdefault(word_weight(x.typ, w), {})[w] = c
    out = {}
    for weight in sorted(by_weight):
        out.update(expansion_table(order, weight).coefficients(by_weight[weight]))
    return out


def pbw_vector(coords: dict, order: OneRowOrder) -> AlgebraElement:
    total = AlgebraElement.zero(order.typ)
    for c, coeff in coords.items():
        total = total + pbw_monomial(c, order).scale(coeff)
    return total


# --- Lexicographic preorders ---

class LexComparison(NamedTuple):
    ge_left: bool
    ge_right: bool
    greater: bool


def _first_difference(c: LusztigDatum, other: LusztigDatum, roots) -> int:
    """Sign of c - other at the first root where they differ; 0 when they agree on every root."""
    for beta in roots:
        diff = c.count(beta) - other.count(beta)
        if diff:
            return 1 if diff > 0 else -1
    return 0


def compare_lusztig_data(c: LusztigDatum, other: LusztigDatum, order: OneRowOrder) -> LexComparison:
    typ = order.typ
    if lusztig_weight(c, typ) != lusztig_weight(other, typ):
        raise WeightMismatch(
            "Lusztig data of different weights are incomparable",
            left=c.describe(), right=other.describe(),
        )
    support = {beta for beta, _ in c.real} | {beta for beta, _ in other.real}
    below = sorted((b for b in support if not order.is_above_delta(b)), key=order.sort_key)
    above = sorted((b for b in support if order.is_above_delta(b)), key=order.sort_key, reverse=True)
    left = _first_difference(c, other, below)
    right = _first_difference(c, other, above)
    ge_left, ge_right = left >= 0, right >= 0
    return LexComparison(ge_left, ge_right, ge_left and ge_right and (left > 0 or right > 0))


def is_greater(c: LusztigDatum, other: LusztigDatum, order: OneRowOrder) -> bool:
    return compare_lusztig_data(c, other, order).greater


def linear_extension(data, order: OneRowOrder) -> list:
    """The data sorted so that c comes before c' whenever c' > c."""
    data = sorted(data)
    key = (order.key, tuple(data))
    cached = _EXTENSIONS.get(key)
    if cached is not None:
        return cached
    below = {c: {d for d in data if d != c and is_greater(c, d, order)} for c in data}
    placed: list = []
    done: set = set()
    while len(placed) < len(data):
        ready = [c for c in data if c not in done and below[c] <= done]
        if not ready:
            raise TriangularityFailure("the order on Lusztig data has a cycle", order=order.label)
        placed.extend(ready)
        done.update(ready)
    with _LOCK:
        _EXTENSIONS.setdefault(key, placed)
    return placed


# --- Products ---

def product_expansion(c: LusztigDatum, other: LusztigDatum, order: OneRowOrder) -> dict:
    return expand_in_pbw(product(pbw_monomial(c, order), pbw_monomial(other, order)), order)


def _coordinatewise_ge(a, b) -> bool:
    return all(x >= y for x, y in zip(a, b))


def _segment_weight(c: LusztigDatum, roots: set, typ) -> tuple:
    total = [0] * typ.rank
    for beta, n in c.real:
        if beta in roots:
            for k, b in enumerate(beta):
                total[k] += n * b
    return tuple(total)


def product_triangularity_violations(c: LusztigDatum, other: LusztigDatum, order: OneRowOrder) -> list:
    """
    Terms of L(c) L(c') breaking the product bounds: every c'' must satisfy
    c'' >=_l c and c'' >=_r c', and for every initial segment S (taken from
    either end of the order) wt(c''_S) >= wt(c_S) and wt(c''_rest) >= wt(c'_rest).
    """
    typ = order.typ
    expansion = product_expansion(c, other, order)
    height = typ.height(lusztig_weight(c, typ)) + typ.height(lusztig_weight(other, typ))
    low = order.row_roots(-1, height)
    high = order.row_roots(1, height)
    segments = [set(low[:k]) for k in range(1, height + 1)]
    violations = []
    for target in expansion:
        if not (lex_dominates(target, c, order, above=False) and lex_dominates(target, other, order, above=True)):
            violations.append({"product": (c, other), "term": target, "reason": "lex"})
            continue
        for segment in segments:
            if not _coordinatewise_ge(_segment_weight(target, segment, typ), _segment_weight(c, segment, typ)):
                violations.append({"product": (c, other), "term": target, "reason": "prefix"})
                break
        for k in range(1, height + 1):
            top = set(high[:k])
            if not _coordinatewise_ge(_segment_weight(target, top, typ), _segment_weight(other, top, typ)):
                violations.append({"product": (c, other), "term": target, "reason": "suffix"})
                break
    return violations


def lex_dominates(c: LusztigDatum, other: LusztigDatum, order: OneRowOrder, above: bool) -> bool:
    """The one-sided lexicographic test without the equal-weight precondition."""
    support = {beta for beta, _ in c.real} | {beta for beta, _ in other.real}
    roots = sorted(
        (b for b in support if order.is_above_delta(b) == above), key=order.sort_key, reverse=above
    )
    return _first_difference(c, other, roots) >= 0


# --- Transition maps ---

def crystal_label(coords: dict, context: dict | None = None) -> LusztigDatum:
    """The unique datum whose coefficient is 1 modulo q_s^{-1}; every other coefficient must vanish there."""
    found = []
    for c, coeff in coords.items():
        if not is_regular(coeff):
            raise ResidueAmbiguity("coefficient has a pole at q_s = infinity", datum=c.describe(), **(context or {}))
        residue = residue_at_infinity(coeff)
        if residue:
            found.append((c, residue))
    if len(found) != 1 or found[0][1] != 1:
        raise ResidueAmbiguity(
            "expected exactly one coefficient with residue +1",
            residues=[(c.describe(), str(r)) for c, r in found], **(context or {}),
        )
    return found[0][0]


def class_of(x: AlgebraElement, order: OneRowOrder) -> LusztigDatum:
    """Label of the crystal element represented by ``x`` in the PBW basis of ``order``."""
    return crystal_label(expand_in_pbw(x, order), {"order": order.label})


def transition_map(c: LusztigDatum, source: OneRowOrder, target: OneRowOrder) -> LusztigDatum:
    if source.key == target.key:
        return c
    coords = expand_in_pbw(pbw_monomial(c, source), target)
    return crystal_label(coords, {"datum": c.describe(), "source": source.label, "target": target.label})


def transition_table(source: OneRowOrder, target: OneRowOrder, weight) -> list:
    """[(c_in, c_out), ...]; the map is checked to be a bijection."""
    rows = [(c, transition_map(c, source, target)) for c, _ in pbw_basis(source, weight)]
    images = [out for _, out in rows]
    if len(set(images)) != len(images):
        raise ResidueAmbiguity("transition map is not injective", weight=tuple(weight), source=source.label, target=target.label)
    return rows


def transition_residues(source: OneRowOrder, target: OneRowOrder, weight) -> list:
    """Residues of the transition matrix, row by row in the source PBW basis."""
    table = expansion_table(target, weight)
    out = []
    for c, vector in pbw_basis(source, weight):
        coords = expand_in_pbw(vector, target)
        out.append((c, [residue_at_infinity(coords.get(d, ZERO)) for d in table.data]))
    return out


# --- Canonical basis ---

@dataclass(frozen=True, eq=False)
class CanonicalVector:
    datum: LusztigDatum
    element: AlgebraElement
    order_label: str
    coordinates: dict = field(repr=False)


def _peel(coords: dict, family: dict, ranked: list) -> dict:
    """Coefficients of ``coords`` in a unitriangular family, lowest data first."""
    remaining = dict(coords)
    out = {}
    for c in ranked:
        if c not in family:
            continue
        a = remaining.get(c)
        if not a:
            continue
        out[c] = a
        for d, v in family[c].items():
            remaining[d] = remaining.get(d, ZERO) - a * v
    leftover = {d.describe(): v for d, v in remaining.items() if v}
    if leftover:
        raise TriangularityFailure("vector is not spanned by the family above it", leftover=sorted(leftover))
    return out


def _negative_part(value, context: dict):
    laurent = to_laurent(value)
    if laurent is None:
        raise TriangularityFailure("bar correction is not a Laurent polynomial", **context)
    coeffs = laurent.coeffs
    if coeffs.get(0):
        raise TriangularityFailure("bar correction has a constant term", **context)
    for e, c in coeffs.items():
        if coeffs.get(-e, 0) != -c:
            raise TriangularityFailure("bar correction is not bar-antisymmetric", **context)
    return LaurentScalar({e: c for e, c in coeffs.items() if e < 0}).to_ratfunc()


def canonical_basis_weight(weight, order: OneRowOrder) -> list:
    """Canonical vectors of one weight, labelled by the Lusztig data of ``order``."""
    weight = tuple(weight)
    key = (order.key, weight)
    cached = _CANONICAL.get(key)
    if cached is not None:
        return cached
    basis = dict(pbw_basis(order, weight))
    ranked = linear_extension(list(basis), order)
    family: dict = {}
    for c in reversed(ranked):
        context = {"datum": c.describe(), "order": order.label}
        barred = expand_in_pbw(bar_element(basis[c]), order)
        if barred.get(c, ZERO) != ONE:
            raise TriangularityFailure("bar image has diagonal coefficient other than 1", **context)
        for d, coeff in barred.items():
            if d != c and coeff and not is_greater(d, c, order):
                raise TriangularityFailure("bar image leaves the upper triangle", term=d.describe(), **context)
        correction = {d: v for d, v in barred.items() if d != c}
        s = _peel(correction, family, ranked)
        coords = {c: ONE}
        for d, value in s.items():
            t = _negative_part(value, {"term": d.describe(), **context})
            if not t:
                continue
            for e, v in family[d].items():
                coords[e] = coords.get(e, ZERO) + t * v
        family[c] = {d: v for d, v in coords.items() if v}
    vectors = [
        CanonicalVector(c, pbw_vector(family[c], order), order.label, family[c])
        for c in ranked
    ]
    logger.debug("canonical basis %s %s: %d vectors", order.label, weight, len(vectors))
    with _LOCK:
        vectors = _CANONICAL.setdefault(key, vectors)
    return vectors


def expand_in_canonical(x: AlgebraElement, order: OneRowOrder) -> dict:
    """Coefficients of x in the canonical basis, keyed by Lusztig data of ``order``."""
    coords = expand_in_pbw(x, order)
    out = {}
    weights = {lusztig_weight(c, order.typ) for c in coords}
    for weight in sorted(weights):
        vectors = canonical_basis_weight(weight, order)
        family = {v.datum: v.coordinates for v in vectors}
        ranked = [v.datum for v in vectors]
        part = {c: a for c, a in coords.items() if lusztig_weight(c, order.typ) == weight}
        out.update(_peel(part, family, ranked))
    return out


def canonical_sets_agree(weight, first: OneRowOrder, second: OneRowOrder) -> bool:
    """The canonical basis built from two orders is the same set of elements."""
    left = [v.element for v in canonical_basis_weight(weight, first)]
    right = [v.element for v in canonical_basis_weight(weight, second)]
    if len(left) != len(right):
        return False
    unmatched = list(right)
    for x in left:
        for k, y in enumerate(unmatched):
            if x == y:
                del unmatched[k]
                break
        else:
            return False
    return True


def canonical_violations(weight, order: OneRowOrder) -> list:
    """Bar-invariance, integrality, unitriangularity and crystal-residue checks on one weight."""
    problems = []
    for vector in canonical_basis_weight(weight, order):
        label = vector.datum.describe()
        if bar_element(vector.element) != vector.element:
            problems.append({"datum": label, "check": "bar"})
        if not vector.element.is_integral():
            problems.append({"datum": label, "check": "integral"})
        for d, coeff in vector.coordinates.items():
            if d == vector.datum:
                if coeff != ONE:
                    problems.append({"datum": label, "check": "diagonal"})
            elif not is_greater(d, vector.datum, order) or not in_lower_lattice(coeff):
                problems.append({"datum": label, "check": "triangular", "term": d.describe()})
            elif to_laurent(coeff) is None:
                problems.append({"datum": label, "check": "integral", "term": d.describe()})
        if residue_at_infinity(kashiwara_form(vector.element, vector.element)) != 1:
            problems.append({"datum": label, "check": "norm"})
    return problems


def divided_power_action(vector: CanonicalVector, i: int, n: int, order: OneRowOrder, side: str = "right") -> dict:
    """
    For b E_i^{(n)} (side ``right``) or E_i^{(n)} b (side ``left``): its canonical
    expansion and the label of the raised crystal element, which must occur in it.
    """
    typ = order.typ
    power = divided_power(typ, i, n)
    starred = side == "right"
    x = product(vector.element, power) if starred else product(power, vector.element)
    raised = pbw_monomial(vector.datum, order)
    for _ in range(n):
        raised = kashiwara_raise(i, raised, starred)
    label = class_of(raised, order)
    expansion = expand_in_canonical(x, order)
    return {"expansion": expansion, "raised": label, "holds": bool(expansion.get(label))}
