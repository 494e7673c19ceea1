# affinepbw/convex_order.py
"""
One-row convex orders on the positive real roots plus delta.

An order is a pair of eventually periodic reduced words. The forward row
i_1, i_2, ... produces the roots above delta, largest first:
beta_k = s_{i_1} ... s_{i_{k-1}} alpha_{i_k}. The backward row i_0, i_{-1}, ...
produces the roots below delta, smallest first. Overall

    beta_0 < beta_{-1} < ... < delta < ... < beta_2 < beta_1.
"""

from __future__ import annotations

import itertools
import logging
import threading
from dataclasses import dataclass

from sympy import Integer, Symbol, symbols
from sympy.solvers.simplex import InfeasibleLPError, lpmin

from .cartan import AffineTypeData, ClassicalElement, bn_infinite_word, enumerate_roots
from .exceptions import NotConvexChain, RootNotInSystem, SimpleRootNotExtremal

logger = logging.getLogger(__name__)

DELTA_KEY = (1, 0)


@dataclass(frozen=True)
class InfiniteWord:
    """prefix, then period, twist(period), twist^2(period), ..."""

    prefix: tuple
    period: tuple
    twist: tuple

    def letter(self, k: int) -> int:
        if k < len(self.prefix):
            return self.prefix[k]
        turns, pos = divmod(k - len(self.prefix), len(self.period))
        letter = self.period[pos]
        for _ in range(turns % _order(self.twist)):
            letter = self.twist[letter]
        return letter

    def letters(self, n: int) -> tuple:
        return tuple(self.letter(k) for k in range(n))

    def drop_first(self) -> "InfiniteWord":
        if self.prefix:
            return InfiniteWord(self.prefix[1:], self.period, self.twist)
        head = self.period[0]
        return InfiniteWord((), self.period[1:] + (self.twist[head],), self.twist)

    def push_front(self, i: int) -> "InfiniteWord":
        return InfiniteWord((i,) + self.prefix, self.period, self.twist)

    def describe(self) -> str:
        pre = "".join(map(str, self.prefix))
        per = "".join(map(str, self.period))
        tw = "" if self.twist == tuple(range(len(self.twist))) else "~" + "".join(map(str, self.twist))
        return f"{pre}({per}){tw}"


def _order(perm: tuple) -> int:
    n, current = 1, perm
    identity = tuple(range(len(perm)))
    while current != identity:
        current = tuple(perm[c] for c in current)
        n += 1
    return n


class _Row:
    """Lazily computed roots of one row."""

    def __init__(self, typ: AffineTypeData, word: InfiniteWord):
        self.typ = typ
        self.word = word
        self.roots: list = []
        self.index: dict = {}
        self._images = [typ.simple_root(j) for j in typ.nodes]

    def extend_to(self, n: int) -> None:
        typ = self.typ
        while len(self.roots) < n:
            k = len(self.roots)
            i = self.word.letter(k)
            beta = self._images[i]
            self.roots.append(beta)
            self.index.setdefault(beta, k)
            row = typ.cartan[i]
            self._images = [
                tuple(a - row[j] * b for a, b in zip(self._images[j], beta)) for j in typ.nodes
            ]


class OneRowOrder:
    def __init__(self, typ: AffineTypeData, forward: InfiniteWord, backward: InfiniteWord, label: str = ""):
        self.typ = typ
        self.forward = forward
        self.backward = backward
        self.label = label or f"word:{forward.describe()}|{backward.describe()}"
        self._rows = {1: _Row(typ, forward), -1: _Row(typ, backward)}
        self._lock = threading.Lock()

    def __repr__(self):
        return f"OneRowOrder({self.typ.tag}, {self.label})"

    @property
    def key(self) -> tuple:
        """Hashable identity used by memo tables."""
        return (self.typ.tag, self.forward, self.backward)

    # --- Roots by index -----------------------------------------------------------
    def row_roots(self, direction: int, n: int) -> list:
        row = self._rows[direction]
        with self._lock:
            row.extend_to(n)
        return row.roots[:n]

    def beta_at(self, k: int):
        if k >= 1:
            return self.row_roots(1, k)[k - 1]
        return self.row_roots(-1, 1 - k)[-k]

    def minimal_root(self):
        return self.beta_at(0)

    def maximal_root(self):
        return self.beta_at(1)

    # --- Locating roots -------------------------------------------------------------
    def _search_cap(self, beta) -> int:
        typ = self.typ
        reach = max(len(self.forward.prefix), len(self.backward.prefix))
        period = max(len(self.forward.period), len(self.backward.period))
        return reach + period * (2 * (typ.delta_degree(beta) + reach) + 6)

    def index_of(self, beta) -> int | None:
        """Signed index k with beta_k = beta; None for delta."""
        beta = tuple(beta)
        typ = self.typ
        if beta == typ.delta:
            return None
        if not typ.is_positive_real_root(beta):
            raise RootNotInSystem("not a positive real root or delta", root=beta)
        cap = self._search_cap(beta)
        with self._lock:
            for direction in (1, -1):
                row = self._rows[direction]
                if beta in row.index:
                    pos = row.index[beta]
                    return pos + 1 if direction == 1 else -pos
            step = 8
            size = 0
            while size < cap:
                size = min(cap, size + step)
                for direction in (1, -1):
                    row = self._rows[direction]
                    row.extend_to(size)
                    if beta in row.index:
                        pos = row.index[beta]
                        return pos + 1 if direction == 1 else -pos
        raise RootNotInSystem("root not found in either row of the order", root=beta, order=self.label)

    def sort_key(self, beta) -> tuple:
        k = self.index_of(beta)
        if k is None:
            return DELTA_KEY
        if k >= 1:
            return (2, -k)
        return (0, -k)

    def is_above_delta(self, beta) -> bool:
        return self.sort_key(beta) > DELTA_KEY

    def sorted_roots(self, roots) -> list:
        return sorted(roots, key=self.sort_key)

    def check_reduced(self, n: int) -> bool:
        for direction in (1, -1):
            roots = self.row_roots(direction, n)
            if len(set(roots)) != len(roots) or any(any(c < 0 for c in b) for b in roots):
                return False
        fwd = set(self.row_roots(1, n))
        return not fwd.intersection(self.row_roots(-1, n))


# --- Comparisons and transformations -------------------------------------------

def beta_at(order: OneRowOrder, k: int):
    return order.beta_at(k)


def compare_roots(order: OneRowOrder, beta, gamma) -> int:
    a, b = order.sort_key(beta), order.sort_key(gamma)
    return (a > b) - (a < b)


def reflect_order(order: OneRowOrder, i: int) -> OneRowOrder:
    """The order beta < gamma  <=>  s_i beta <' s_i gamma, for extremal alpha_i."""
    label = f"{order.label}^s{i}"
    if order.forward.letter(0) == i:
        return OneRowOrder(order.typ, order.forward.drop_first(), order.backward.push_front(i), label)
    if order.backward.letter(0) == i:
        return OneRowOrder(order.typ, order.forward.push_front(i), order.backward.drop_first(), label)
    raise SimpleRootNotExtremal(f"alpha_{i} is neither minimal nor maximal", order=order.label)


def reflect_order_word(order: OneRowOrder, word) -> OneRowOrder:
    for i in word:
        order = reflect_order(order, i)
    return order


def reverse_order(order: OneRowOrder) -> OneRowOrder:
    label = order.label[:-1] if order.label.endswith("*") else order.label + "*"
    return OneRowOrder(order.typ, order.backward, order.forward, label)


def above_set(order: OneRowOrder) -> frozenset:
    typ = order.typ
    out = set()
    for vector in typ.classical_roots:
        if order.is_above_delta(typ.classical_representative(vector)):
            out.add(vector)
    return frozenset(out)


def coarse_type(order: OneRowOrder) -> ClassicalElement:
    return order.typ.element_for_above_set(above_set(order))


# --- Constructions ------------------------------------------------------------

def bn_order(typ: AffineTypeData, p: int = 0) -> OneRowOrder:
    """The Beck-Nakajima order reflected |p| times (at its maximum for p > 0, minimum for p < 0)."""
    word = bn_infinite_word(typ)
    inverse = tuple(word.twist.index(j) for j in typ.nodes)
    backward = tuple(inverse[letter] for letter in reversed(word.period))
    order = OneRowOrder(
        typ,
        InfiniteWord((), word.period, word.twist),
        InfiniteWord((), backward, inverse),
        "bn:0",
    )
    for _ in range(abs(p)):
        i = order.forward.letter(0) if p > 0 else order.backward.letter(0)
        order = reflect_order(order, i)
    order.label = f"bn:{p}"
    return order


def _classical_pullback(typ: AffineTypeData, prefix, vectors) -> frozenset:
    """x^{-1}(v) for x = s_{prefix[0]} s_{prefix[1]} ..."""
    word = tuple(reversed(prefix))
    return frozenset(typ.classical(typ.apply_word(word, typ.lift(v, 0))) for v in vectors)


def from_prefixes(typ: AffineTypeData, forward_prefix, backward_prefix, above, label: str = "") -> OneRowOrder:
    """Order whose rows start with the given letters and continue with translation tails."""
    above = frozenset(above)
    below = frozenset(tuple(-c for c in v) for v in above)
    forward_prefix, backward_prefix = tuple(forward_prefix), tuple(backward_prefix)
    tail_f = typ.translation_word(_classical_pullback(typ, forward_prefix, above))
    tail_b = typ.translation_word(_classical_pullback(typ, backward_prefix, below))
    order = OneRowOrder(
        typ,
        InfiniteWord(forward_prefix, tail_f.period, tail_f.twist),
        InfiniteWord(backward_prefix, tail_b.period, tail_b.twist),
        label,
    )
    for direction, prefix, allowed in ((1, forward_prefix, above), (-1, backward_prefix, below)):
        for beta in order.row_roots(direction, len(prefix)):
            if typ.classical(beta) not in allowed or any(c < 0 for c in beta):
                raise NotConvexChain("prefix leaves the prescribed side of delta", root=beta)
    return order


def translation_order(typ: AffineTypeData, w: ClassicalElement) -> OneRowOrder:
    """Order of translation type with coarse type ``w``."""
    return from_prefixes(typ, (), (), typ.above_set(w), label=f"coarse:{''.join(map(str, w.word)) or 'e'}")


def order_with_minimal(typ: AffineTypeData, i: int, w: ClassicalElement) -> OneRowOrder:
    """Order of coarse type ``w`` with alpha_i as its minimal root."""
    return from_prefixes(typ, (), (i,), typ.above_set(w), label=f"min{i}:{''.join(map(str, w.word)) or 'e'}")


def order_plus(typ: AffineTypeData, word) -> OneRowOrder:
    """A convex order in which N(w) is an initial segment (the partition (N(w), rest))."""
    word = tuple(word)
    backward = tuple(reversed(word))
    inverted = {typ.classical(beta) for beta in _row_prefix_roots(typ, backward)}
    for element in typ.classical_group:
        above = typ.above_set(element)
        if not inverted & above:
            return from_prefixes(typ, (), backward, above, label=f"plus:{''.join(map(str, word)) or 'e'}")
    raise NotConvexChain("no coarse type separates the inversion set", word=word)


def _row_prefix_roots(typ: AffineTypeData, letters) -> list:
    row = _Row(typ, InfiniteWord(tuple(letters), (0,), tuple(typ.nodes)))
    row.extend_to(len(letters))
    return row.roots


# --- Cone tests -----------------------------------------------------------------

def _form(coefficients, xs):
    return sum((c * x for c, x in zip(coefficients, xs) if c), Integer(0))


def _feasible(constraints) -> bool:
    try:
        lpmin(0, constraints)
    except InfeasibleLPError:
        return False
    return True


def cone_separated(lower, upper) -> bool:
    """True when cone(lower) and cone(upper) meet only at the origin.

    Looks for a functional x and a scale t >= 1 with x.v <= -t on every lower
    generator and x.v >= t on every upper one. Every constraint except t >= 1
    involves two or more symbols.
    """
    lower = [tuple(v) for v in lower if any(v)]
    upper = [tuple(v) for v in upper if any(v)]
    if not lower or not upper:
        return True
    xs = symbols(f"x:{len(lower[0])}")
    t = Symbol("t")
    constraints = [t >= 1]
    constraints += [_form(v, xs) + t <= 0 for v in lower]
    constraints += [_form(v, xs) - t >= 0 for v in upper]
    return _feasible(constraints)


def in_cone(vector, generators) -> bool:
    """Membership of ``vector`` in the closed real cone spanned by ``generators``.

    Solves sum_k x_k g_k = t * vector with x >= 0 and t >= 1.
    """
    vector = tuple(vector)
    generators = [tuple(g) for g in generators]
    if not any(vector):
        return True
    if not generators:
        return False
    xs = symbols(f"x:{len(generators)}")
    t = Symbol("t")
    constraints = [t >= 1] + [x >= 0 for x in xs]
    for k, target in enumerate(vector):
        lhs = _form([g[k] for g in generators], xs) - target * t
        if lhs == 0:
            continue
        constraints += [lhs <= 0, lhs >= 0]
    return _feasible(constraints)


def is_convex_chain(chain) -> bool:
    chain = [tuple(b) for b in chain]
    return all(cone_separated(chain[:j], chain[j:]) for j in range(1, len(chain)))


def check_window_convexity(order: OneRowOrder, max_delta_degree: int) -> list:
    """Pairs (a, b) with a < b whose sum lies in the window but outside [a, b]."""
    typ = order.typ
    window = enumerate_roots(typ, max_delta_degree)
    members = set(window)
    keys = {beta: order.sort_key(beta) for beta in window}
    violations = []
    for a, b in itertools.combinations(window, 2):
        total = tuple(x + y for x, y in zip(a, b))
        if total not in members:
            continue
        lo, hi = sorted((a, b), key=keys.get)
        if not keys[lo] < keys[total] < keys[hi]:
            violations.append((lo, hi, total))
    return violations


def prefix_is_biconvex(order: OneRowOrder, n: int, max_delta_degree: int) -> bool:
    """The first n roots from the bottom against the rest of the window."""
    window = enumerate_roots(order.typ, max_delta_degree)
    lower = order.row_roots(-1, n)
    lower_set = set(lower)
    upper = [beta for beta in window if beta not in lower_set]
    return cone_separated(lower, upper)


# --- Extension of finite chains -------------------------------------------------

def _greedy_prefix(typ: AffineTypeData, targets, allowed, max_steps: int = 256):
    """Letters realising ``targets`` as the first roots of a row whose classical parts lie in ``allowed``."""
    current = [tuple(b) for b in targets]
    allowed = frozenset(allowed)
    if any(typ.classical(b) not in allowed for b in current):
        return None
    prefix = []
    for _ in range(max_steps):
        if not current:
            return tuple(prefix)
        top = current[0]
        if sum(top) == 1:
            i = top.index(1)
            rest = current[1:]
        else:
            rest = current
            for i in typ.nodes:
                simple = typ.simple_root(i)
                if (
                    typ.coroot_pairing(top, i) > 0
                    and simple not in current
                    and typ.classical(simple) in allowed
                ):
                    break
            else:
                return None
        prefix.append(i)
        current = [typ.reflect(i, b) for b in rest]
        allowed = frozenset(typ.classical_reflect(i, v) for v in allowed)
        if any(any(c < 0 for c in b) for b in current):
            return None
    return None


def extend_finite_order(chain, typ: AffineTypeData, seed: int = 0) -> OneRowOrder:
    """A one-row order restricting to ``chain`` (listed from smallest to largest)."""
    chain = [tuple(b) for b in chain]
    if not chain:
        return bn_order(typ, 0)
    if len(set(chain)) != len(chain):
        raise NotConvexChain("chain repeats a root")
    for beta in chain:
        if not typ.in_min_positive_system(beta):
            raise RootNotInSystem("chain element is not a positive real root or delta", root=beta)
    if not is_convex_chain(chain):
        raise NotConvexChain("cone separation fails on the chain", chain=chain)

    delta = typ.delta
    splits = [chain.index(delta)] if delta in chain else list(range(len(chain) + 1))
    candidates = []
    for split in splits:
        real = [b for b in chain if b != delta]
        below, above = real[:split], real[split:]
        with_delta = real[:split] + [delta] + real[split:]
        if delta not in chain and not is_convex_chain(with_delta):
            continue
        for element in typ.classical_group:
            above_vectors = typ.above_set(element)
            if all(typ.classical(b) in above_vectors for b in above) and all(
                typ.classical(b) not in above_vectors for b in below
            ):
                candidates.append((split, element.word, element, below, above))
    if not candidates:
        raise NotConvexChain("no coarse type is compatible with the chain", chain=chain)
    candidates.sort(key=lambda c: (c[0], len(c[1]), c[1]))
    start = seed % len(candidates)
    for split, _, element, below, above in candidates[start:] + candidates[:start]:
        above_vectors = typ.above_set(element)
        below_vectors = frozenset(tuple(-c for c in v) for v in above_vectors)
        forward = _greedy_prefix(typ, list(reversed(above)), above_vectors)
        backward = _greedy_prefix(typ, below, below_vectors)
        if forward is None or backward is None:
            continue
        try:
            order = from_prefixes(typ, forward, backward, above_vectors, label="chain")
            keys = [order.sort_key(b) for b in chain]
        except (NotConvexChain, RootNotInSystem):
            continue
        if keys == sorted(keys) and len(set(keys)) == len(keys):
            logger.debug("extended chain %s with forward %s backward %s", chain, forward, backward)
            return order
    raise NotConvexChain("no one-row order realises the chain", chain=chain)
