# affinepbw/crystal.py
"""
The crystal B(-infinity) read off PBW lifts.

A crystal element is stored as its Lusztig datum for one reference order.
Operators act on the PBW lift of an element and the result is classified
again through its residue in the reference PBW basis, so every answer here
is backed by an exact computation in U_q^+.
"""

from __future__ import annotations

import logging
import threading
from typing import NamedTuple

from .basis_lab import class_of, transition_map
from .cartan import AffineTypeData
from .convex_order import OneRowOrder, bn_order
from .exceptions import ResidueAmbiguity
from .pbw import LusztigDatum, lusztig_data, lusztig_weight, pbw_monomial
from .uqplus import AlgebraElement, kashiwara_lower, kashiwara_raise, star, string_length

logger = logging.getLogger(__name__)


class CrystalElem(NamedTuple):
    tag: str
    datum: LusztigDatum

    def describe(self) -> str:
        return self.datum.describe()


class Crystal:
    """Crystal operators, string lengths and Saito reflections on one affine type."""

    def __init__(self, typ: AffineTypeData, reference: OneRowOrder | None = None):
        self.typ = typ
        self.reference = reference or bn_order(typ, 0)
        self._memo: dict = {}
        self._lock = threading.RLock()

    def __repr__(self):
        return f"Crystal({self.typ.tag}, {self.reference.label})"

    # --- elements -----------------------------------------------------------
    def element(self, datum: LusztigDatum) -> CrystalElem:
        return CrystalElem(self.typ.tag, datum)

    def lowest(self) -> CrystalElem:
        return self.element(LusztigDatum.build(self.typ))

    def is_lowest(self, b: CrystalElem) -> bool:
        return b.datum.is_zero()

    def elements(self, weight) -> list:
        return [self.element(c) for c in lusztig_data(self.typ, weight)]

    def weights_up_to(self, height: int) -> list:
        """Nonzero weights of U_q^+ with height at most ``height``."""
        rank = self.typ.rank
        out = []

        def _fill(prefix, remaining):
            if len(prefix) == rank:
                if any(prefix) and lusztig_data(self.typ, prefix):
                    out.append(tuple(prefix))
                return
            for k in range(remaining + 1):
                _fill(prefix + [k], remaining - k)

        _fill([], height)
        return sorted(out, key=lambda w: (sum(w), w))

    def elements_up_to(self, height: int) -> list:
        out = [self.lowest()]
        for weight in self.weights_up_to(height):
            out.extend(self.elements(weight))
        return out

    def weight(self, b: CrystalElem) -> tuple:
        return lusztig_weight(b.datum, self.typ)

    def lift(self, b: CrystalElem) -> AlgebraElement:
        return pbw_monomial(b.datum, self.reference)

    def classify(self, x: AlgebraElement) -> CrystalElem:
        return self.element(class_of(x, self.reference))

    def datum_under(self, b: CrystalElem, order: OneRowOrder) -> LusztigDatum:
        return transition_map(b.datum, self.reference, order)

    def from_datum(self, c: LusztigDatum, order: OneRowOrder) -> CrystalElem:
        return self.element(transition_map(c, order, self.reference))

    def star(self, b: CrystalElem) -> CrystalElem:
        return self._cached(("star", b.datum), lambda: self.classify(star(self.lift(b))))

    # --- operators ----------------------------------------------------------
    def _cached(self, key, compute):
        with self._lock:
            if key in self._memo:
                return self._memo[key]
        value = compute()
        with self._lock:
            return self._memo.setdefault(key, value)

    def phi(self, i: int, b: CrystalElem, starred: bool = False) -> int:
        def _compute():
            n = string_length(i, self.lift(b), starred)
            if n is None:
                raise ResidueAmbiguity("lift has no well-defined string length", node=i, datum=b.describe())
            return n

        return self._cached(("phi", i, starred, b.datum), _compute)

    def eps(self, i: int, b: CrystalElem, starred: bool = False) -> int:
        return self.phi(i, b, starred) - self.typ.coroot_pairing(self.weight(b), i)

    def e(self, i: int, b: CrystalElem, starred: bool = False) -> CrystalElem:
        """Raise the weight by alpha_i; always defined on B(-infinity)."""
        return self._cached(
            ("e", i, starred, b.datum),
            lambda: self.classify(kashiwara_raise(i, self.lift(b), starred)),
        )

    def f(self, i: int, b: CrystalElem, starred: bool = False) -> CrystalElem | None:
        """Lower the weight by alpha_i; None when phi_i vanishes."""
        if self.phi(i, b, starred) == 0:
            return None
        return self._cached(
            ("f", i, starred, b.datum),
            lambda: self.classify(kashiwara_lower(i, self.lift(b), starred)),
        )

    def e_power(self, i: int, b: CrystalElem, n: int, starred: bool = False) -> CrystalElem:
        for _ in range(n):
            b = self.e(i, b, starred)
        return b

    def f_power(self, i: int, b: CrystalElem | None, n: int, starred: bool = False) -> CrystalElem | None:
        for _ in range(n):
            if b is None:
                return None
            b = self.f(i, b, starred)
        return b

    def shift(self, i: int, b: CrystalElem | None, n: int, starred: bool = False) -> CrystalElem | None:
        """e^n for n >= 0 and f^{-n} otherwise."""
        if b is None:
            return None
        if n >= 0:
            return self.e_power(i, b, n, starred)
        return self.f_power(i, b, -n, starred)

    def sigma(self, i: int, b: CrystalElem, starred: bool = False) -> CrystalElem | None:
        """
        Saito's reflection: e_i^{eps*_i(b)} (f*_i)^{phi*_i(b)} b, or the starred
        twin with the two families swapped. None when a step is undefined.
        """
        other = not starred
        lowered = self.f_power(i, b, self.phi(i, b, other), other)
        if lowered is None:
            return None
        return self.shift(i, lowered, self.eps(i, b, other), starred)

    def string(self, i: int, b: CrystalElem, starred: bool = False) -> list:
        """b, f b, f^2 b, ... down to the end of the i-string."""
        out = [b]
        while True:
            nxt = self.f(i, out[-1], starred)
            if nxt is None:
                return out
            out.append(nxt)
