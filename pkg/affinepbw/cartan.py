# affinepbw/cartan.py
"""
Affine Cartan data, roots, classical Weyl groups and translation words.

Roots are plain integer tuples over the simple roots (alpha_0, ..., alpha_n).
Classical vectors are tuples over the finite nodes 1..n. Weyl words are
tuples of node indices read left to right, so ``(i1, i2)`` is s_i1 s_i2.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import cached_property, lru_cache
from fractions import Fraction
from typing import NamedTuple

from .exceptions import IndexOutOfRange, UnsupportedType

logger = logging.getLogger(__name__)

Root = tuple
SUPPORTED_TYPES = ("A1~1", "A2~1", "A2~2")


class ClassicalElement(NamedTuple):
    """Element of the classical Weyl group: shortlex reduced word plus images of the simple roots."""

    word: tuple
    images: tuple

    def apply(self, vector) -> tuple:
        out = [0] * len(vector)
        for coeff, image in zip(vector, self.images):
            if coeff:
                for k, c in enumerate(image):
                    out[k] += coeff * c
        return tuple(out)

    @property
    def length(self) -> int:
        return len(self.word)


class TranslationWord(NamedTuple):
    """Periodic reduced word of a translation: letters repeat as period, twist(period), ..."""

    period: tuple
    twist: tuple


@dataclass(frozen=True)
class AffineTypeData:
    tag: str
    cartan: tuple
    marks: tuple
    comarks: tuple
    sym: tuple  # (alpha_i, alpha_j) in units where q = q_s ** scale
    scale: int
    d: tuple
    r: tuple
    automorphisms: tuple

    def __post_init__(self):
        n = len(self.cartan)
        if self.marks[0] != 1:
            raise UnsupportedType("node 0 must carry mark 1", tag=self.tag)
        for i in range(n):
            if sum(self.cartan[i][j] * self.marks[j] for j in range(n)) != 0:
                raise UnsupportedType("marks are not in the kernel of the Cartan matrix", tag=self.tag)
            if sum(self.comarks[j] * self.cartan[j][i] for j in range(n)) != 0:
                raise UnsupportedType("comarks are not in the left kernel of the Cartan matrix", tag=self.tag)
            for j in range(n):
                if self.sym[i][j] != self.sym[j][i]:
                    raise UnsupportedType("bilinear form is not symmetric", tag=self.tag)
                if self.sym[i][j] * self.marks[i] != self.scale * self.comarks[i] * self.cartan[i][j]:
                    raise UnsupportedType("bilinear form disagrees with the Cartan data", tag=self.tag)

    # --- Basic shape ------------------------------------------------------------
    @property
    def rank(self) -> int:
        return len(self.cartan)

    @property
    def nodes(self) -> range:
        return range(self.rank)

    @property
    def finite_nodes(self) -> range:
        return range(1, self.rank)

    @property
    def delta(self) -> Root:
        return tuple(self.marks)

    def simple_root(self, i: int) -> Root:
        return tuple(1 if j == i else 0 for j in self.nodes)

    def node_step(self, i: int) -> int:
        """q_i = q_s ** node_step(i)."""
        return self.sym[i][i] // 2

    def root_step(self, beta) -> int:
        """q_beta = q_s ** root_step(beta) for a real root."""
        return self.sym_pair(beta, beta) // 2

    # --- Pairings and reflections -------------------------------------------------
    def sym_pair(self, beta, gamma) -> int:
        total = 0
        for i, b in enumerate(beta):
            if b:
                row = self.sym[i]
                for j, g in enumerate(gamma):
                    if g:
                        total += b * g * row[j]
        return total

    def pairing(self, beta, gamma) -> Fraction:
        return Fraction(self.sym_pair(beta, gamma), self.scale)

    def coroot_pairing(self, beta, i: int) -> int:
        row = self.cartan[i]
        return sum(row[j] * b for j, b in enumerate(beta))

    def reflect(self, i: int, beta) -> Root:
        c = self.coroot_pairing(beta, i)
        if not c:
            return tuple(beta)
        out = list(beta)
        out[i] -= c
        return tuple(out)

    def apply_word(self, word, beta) -> Root:
        for i in reversed(word):
            beta = self.reflect(i, beta)
        return tuple(beta)

    # --- Root predicates ----------------------------------------------------------
    @staticmethod
    def height(beta) -> int:
        return sum(beta)

    def delta_degree(self, beta) -> int:
        """Smallest n with beta <= n*delta coordinatewise."""
        return max(-(-b // a) for b, a in zip(beta, self.marks))

    def delta_coefficient(self, beta) -> int:
        return beta[0] // self.marks[0]

    def classical(self, beta) -> tuple:
        b0 = beta[0]
        return tuple(beta[i] - b0 * self.marks[i] for i in self.finite_nodes)

    def lift(self, vector, n: int = 0) -> Root:
        return (n * self.marks[0],) + tuple(v + n * self.marks[i] for i, v in zip(self.finite_nodes, vector))

    def delta_multiple(self, beta) -> int | None:
        """m when beta = m*delta, else None."""
        m, rem = divmod(beta[0], self.marks[0])
        if rem or m <= 0:
            return None
        return m if all(b == m * a for b, a in zip(beta, self.marks)) else None

    def is_real(self, beta) -> bool:
        return self.sym_pair(beta, beta) > 0

    def is_positive_real_root(self, beta) -> bool:
        beta = tuple(beta)
        if any(c < 0 for c in beta) or not any(beta):
            return False
        while True:
            if sum(beta) == 1:
                return True
            for i in self.nodes:
                if self.coroot_pairing(beta, i) > 0:
                    beta = self.reflect(i, beta)
                    break
            else:
                return False
            if any(c < 0 for c in beta):
                return False

    def is_root(self, beta) -> bool:
        beta = tuple(beta)
        if all(c <= 0 for c in beta):
            beta = tuple(-c for c in beta)
        return self.is_positive_real_root(beta) or self.delta_multiple(beta) is not None

    def in_min_positive_system(self, beta) -> bool:
        """Membership in the positive real roots plus delta."""
        return tuple(beta) == self.delta or self.is_positive_real_root(beta)

    # --- Classical Weyl group ----------------------------------------------------
    def classical_reflect(self, i: int, vector) -> tuple:
        return self.classical(self.reflect(i, self.lift(vector, 0)))

    @cached_property
    def classical_group(self) -> tuple:
        size = self.rank - 1
        identity = tuple(tuple(1 if k == j else 0 for k in range(size)) for j in range(size))
        seen = {identity: ClassicalElement((), identity)}
        frontier = [seen[identity]]
        while frontier:
            nxt = []
            for element in sorted(frontier, key=lambda e: e.word):
                for i in self.finite_nodes:
                    # images of (w s_i): w(s_i alpha_j)
                    images = tuple(
                        element.apply(self.classical_reflect(i, tuple(1 if k == j else 0 for k in range(size))))
                        for j in range(size)
                    )
                    if images not in seen:
                        seen[images] = ClassicalElement(element.word + (i,), images)
                        nxt.append(seen[images])
            frontier = nxt
        return tuple(sorted(seen.values(), key=lambda e: (len(e.word), e.word)))

    def classical_element(self, word) -> ClassicalElement:
        word = tuple(word)
        size = self.rank - 1
        images = []
        for j in range(size):
            vector = tuple(1 if k == j else 0 for k in range(size))
            for i in reversed(word):
                vector = self.classical_reflect(i, vector)
            images.append(vector)
        images = tuple(images)
        for element in self.classical_group:
            if element.images == images:
                return element
        raise UnsupportedType("word does not define a classical Weyl element", word=word)

    @property
    def identity(self) -> ClassicalElement:
        return self.classical_group[0]

    @cached_property
    def longest(self) -> ClassicalElement:
        return self.classical_group[-1]

    def compose(self, x: ClassicalElement, y: ClassicalElement) -> ClassicalElement:
        images = tuple(x.apply(image) for image in y.images)
        for element in self.classical_group:
            if element.images == images:
                return element
        raise UnsupportedType("classical group is not closed under composition")

    def inverse(self, x: ClassicalElement) -> ClassicalElement:
        return self.classical_element(tuple(reversed(x.word)))

    def star_node(self, i: int) -> int:
        """The diagram involution i -> i* defined by -w0(alpha_i) = alpha_{i*}."""
        size = self.rank - 1
        image = self.longest.apply(tuple(-1 if k == i - 1 else 0 for k in range(size)))
        return image.index(1) + 1

    @cached_property
    def classical_roots(self) -> frozenset:
        out = set()
        for beta in enumerate_roots(self, 2):
            if self.is_real(beta):
                v = self.classical(beta)
                out.add(v)
                out.add(tuple(-c for c in v))
        return frozenset(out)

    @cached_property
    def positive_classical_roots(self) -> tuple:
        return tuple(sorted(v for v in self.classical_roots if all(c >= 0 for c in v)))

    @cached_property
    def negative_classical_roots(self) -> frozenset:
        return frozenset(tuple(-c for c in v) for v in self.positive_classical_roots)

    def above_set(self, w: ClassicalElement) -> frozenset:
        """Classical parts of the roots above delta for coarse type ``w``."""
        return frozenset(w.apply(v) for v in self.negative_classical_roots)

    def element_for_above_set(self, above) -> ClassicalElement:
        above = frozenset(above)
        for element in self.classical_group:
            if self.above_set(element) == above:
                return element
        raise UnsupportedType("set is not a classical Weyl translate of the negative roots")

    def classical_representative(self, vector) -> Root:
        """Positive real affine root with classical part ``vector`` and least delta coefficient."""
        vector = tuple(vector)
        for n in range(0, 8):
            beta = self.lift(vector, n)
            if self.is_positive_real_root(beta):
                return beta
        raise UnsupportedType("no affine root over classical vector", vector=vector)

    # --- Translations -------------------------------------------------------------
    def translation_images(self, lam) -> tuple:
        """Images of the simple roots under t_lam, lam given by its pairings with the finite simple roots."""
        images = []
        delta = self.delta
        for j in self.nodes:
            shift = sum(c * l for c, l in zip(self.classical(self.simple_root(j)), lam))
            images.append(tuple(s - shift * d for s, d in zip(self.simple_root(j), delta)))
        return tuple(images)

    def translation_word(self, above) -> TranslationWord:
        return _translation_word(self, frozenset(above))


@lru_cache(maxsize=None)
def _translation_word(typ: AffineTypeData, above: frozenset) -> TranslationWord:
    w = typ.element_for_above_set(above)
    w_inv = typ.inverse(w)
    size = typ.rank - 1
    lam = tuple(sum(w_inv.apply(tuple(1 if k == i else 0 for k in range(size)))) for i in range(size))
    images = [list(v) for v in typ.translation_images(lam)]
    found = []
    for _ in range(1000):
        negative = [i for i in typ.nodes if all(c <= 0 for c in images[i])]
        if not negative:
            break
        i = negative[0]
        pivot = images[i]
        images = [[a - typ.cartan[i][j] * b for a, b in zip(images[j], pivot)] for j in typ.nodes]
        found.append(i)
    else:  # pragma: no cover
        raise UnsupportedType("translation descent did not terminate", tag=typ.tag)
    twist = tuple(image.index(1) for image in images)
    if twist not in typ.automorphisms:
        raise UnsupportedType("translation ends in an unknown diagram automorphism", twist=twist)
    word = tuple(reversed(found))
    period = tuple(twist[i] for i in word)
    _check_reduced(typ, period)
    logger.debug("translation word for %s above=%s: %s twist %s", typ.tag, sorted(above), period, twist)
    return TranslationWord(period, twist)


def _check_reduced(typ: AffineTypeData, word) -> None:
    if not is_reduced(typ, word):
        raise UnsupportedType("stored translation word is not reduced", word=word)


# --- Type table ---------------------------------------------------------------

_TYPE_TABLE = {
    "A1~1": dict(
        cartan=((2, -2), (-2, 2)),
        marks=(1, 1),
        comarks=(1, 1),
        sym=((2, -2), (-2, 2)),
        scale=1,
        d=(1, 1),
        r=(1, 1),
        automorphisms=((0, 1), (1, 0)),
    ),
    "A2~1": dict(
        cartan=((2, -1, -1), (-1, 2, -1), (-1, -1, 2)),
        marks=(1, 1, 1),
        comarks=(1, 1, 1),
        sym=((2, -1, -1), (-1, 2, -1), (-1, -1, 2)),
        scale=1,
        d=(1, 1, 1),
        r=(1, 1, 1),
        automorphisms=((0, 1, 2), (1, 2, 0), (2, 0, 1)),
    ),
    # node 0 long, node 1 short; delta = alpha_0 + 2 alpha_1
    "A2~2": dict(
        cartan=((2, -1), (-4, 2)),
        marks=(1, 2),
        comarks=(2, 1),
        sym=((8, -4), (-4, 2)),
        scale=2,
        d=(2, 1),
        r=(1, 2),
        automorphisms=((0, 1),),
    ),
}


@lru_cache(maxsize=None)
def build_type(tag: str) -> AffineTypeData:
    spec = _TYPE_TABLE.get(str(tag).strip())
    if spec is None:
        raise UnsupportedType(f"unsupported affine type {tag!r}", supported=",".join(SUPPORTED_TYPES))
    typ = AffineTypeData(tag=str(tag).strip(), **spec)
    logger.debug("built affine type %s", typ.tag)
    return typ


def pairing(beta, gamma, typ: AffineTypeData) -> Fraction:
    return typ.pairing(beta, gamma)


def reflect_root(i: int, beta, typ: AffineTypeData) -> Root:
    return typ.reflect(i, beta)


def inversion_roots(typ: AffineTypeData, word) -> list:
    """N(w) for w = s_{i1} ... s_{ik}, listed as alpha_{ik}, s_{ik} alpha_{i(k-1)}, ..."""
    word = tuple(word)
    out = []
    for j in range(len(word) - 1, -1, -1):
        out.append(typ.apply_word(tuple(reversed(word[j + 1:])), typ.simple_root(word[j])))
    return out


def is_reduced(typ: AffineTypeData, word) -> bool:
    roots = inversion_roots(typ, word)
    return len(set(roots)) == len(roots) and all(all(c >= 0 for c in beta) for beta in roots)


@lru_cache(maxsize=None)
def enumerate_roots(typ: AffineTypeData, max_delta_degree: int) -> tuple:
    """Positive real roots and delta with delta-degree at most ``max_delta_degree``."""
    if max_delta_degree < 1:
        raise IndexOutOfRange("max_delta_degree must be at least 1", max_delta_degree=max_delta_degree)
    found = set()
    frontier = [typ.simple_root(i) for i in typ.nodes]
    found.update(frontier)
    while frontier:
        nxt = []
        for beta in frontier:
            for i in typ.nodes:
                if typ.coroot_pairing(beta, i) < 0:
                    gamma = typ.reflect(i, beta)
                    if gamma not in found and typ.delta_degree(gamma) <= max_delta_degree:
                        found.add(gamma)
                        nxt.append(gamma)
        frontier = nxt
    found.add(typ.delta)
    return tuple(sorted(found, key=lambda b: (sum(b), b)))


@lru_cache(maxsize=None)
def roots_up_to_height(typ: AffineTypeData, height: int) -> tuple:
    if height < 1:
        return ()
    return tuple(beta for beta in enumerate_roots(typ, height) if sum(beta) <= height)


@lru_cache(maxsize=None)
def bn_infinite_word(typ: AffineTypeData) -> TranslationWord:
    """Periodic word of the standard translation; i_{k+N} = twist(i_k)."""
    return typ.translation_word(typ.negative_classical_roots)
