# affinepbw/symmetric.py
"""Partitions, multipartitions and a tableau-counting Littlewood-Richardson oracle."""

from __future__ import annotations

from functools import lru_cache
from itertools import permutations

from sympy.combinatorics import Permutation
from sympy.utilities.iterables import partitions as _sympy_partitions

Partition = tuple


def normalize_partition(parts) -> Partition:
    parts = tuple(sorted((int(p) for p in parts if int(p)), reverse=True))
    if any(p < 0 for p in parts):
        raise ValueError("partition parts must be positive")
    return parts


@lru_cache(maxsize=None)
def partitions(n: int) -> tuple:
    """Partitions of n, largest first in reverse lexicographic order."""
    if n < 0:
        return ()
    if n == 0:
        return ((),)
    out = []
    for mult in _sympy_partitions(n):
        parts = []
        for part, count in mult.items():
            parts.extend([part] * count)
        out.append(normalize_partition(parts))
    return tuple(sorted(out, reverse=True))


def size(partition) -> int:
    return sum(partition)


def multipartitions(typ, m: int) -> tuple:
    """Multipartitions (one partition per finite node) of weight sum d_i |lambda_i| = m."""
    nodes = tuple(typ.finite_nodes)

    def _fill(k, remaining):
        if k == len(nodes):
            if remaining == 0:
                yield ()
            return
        d = typ.d[nodes[k]]
        for n in range(remaining // d + 1):
            for part in partitions(n):
                for rest in _fill(k + 1, remaining - d * n):
                    yield (part,) + rest

    return tuple(_fill(0, m))


def multipartition_weight(typ, mp) -> int:
    return sum(typ.d[i] * size(part) for i, part in zip(typ.finite_nodes, mp))


def empty_multipartition(typ) -> tuple:
    return tuple(() for _ in typ.finite_nodes)


def dominates(lam, mu) -> bool:
    """lam >= mu in dominance order (equal sizes assumed)."""
    if size(lam) != size(mu):
        return False
    a = b = 0
    for k in range(max(len(lam), len(mu))):
        a += lam[k] if k < len(lam) else 0
        b += mu[k] if k < len(mu) else 0
        if a < b:
            return False
    return True


def multipartition_dominates(lam, mu) -> bool:
    return all(dominates(a, b) for a, b in zip(lam, mu))


def remove_largest_part(partition) -> Partition:
    return tuple(partition[1:])


def insert_part(partition, part: int) -> Partition:
    return normalize_partition(tuple(partition) + (part,))


# --- Littlewood-Richardson ---

def _contains(outer, inner) -> bool:
    return len(inner) <= len(outer) and all(i <= o for i, o in zip(inner, outer))


@lru_cache(maxsize=None)
def lr_coefficient(lam: Partition, mu: Partition, nu: Partition) -> int:
    """
    c^{lam, mu}_nu by counting semistandard fillings of nu/lam with content mu
    whose reverse row reading word is a lattice word.
    """
    lam, mu, nu = normalize_partition(lam), normalize_partition(mu), normalize_partition(nu)
    if size(lam) + size(mu) != size(nu) or not _contains(nu, lam):
        return 0
    cells = []
    for row, length in enumerate(nu):
        start = lam[row] if row < len(lam) else 0
        # right to left within a row gives the reverse reading order
        for col in range(length - 1, start - 1, -1):
            cells.append((row, col))
    filling: dict = {}
    counts = [0] * (len(mu) + 1)

    def _ok(row, col, value) -> bool:
        right = filling.get((row, col + 1))
        if right is not None and right < value:
            return False
        up = filling.get((row - 1, col))
        if up is not None and up >= value:
            return False
        if row > 0 and up is None and col >= (lam[row - 1] if row - 1 < len(lam) else 0):
            return False
        return True

    def _place(k) -> int:
        if k == len(cells):
            return 1
        row, col = cells[k]
        total = 0
        for value in range(1, len(mu) + 1):
            if counts[value] >= mu[value - 1]:
                continue
            if value > 1 and counts[value] + 1 > counts[value - 1]:
                continue
            if not _ok(row, col, value):
                continue
            filling[(row, col)] = value
            counts[value] += 1
            total += _place(k + 1)
            counts[value] -= 1
            del filling[(row, col)]
        return total

    return _place(0)


def lr_product(lam, mu) -> dict:
    """s_lam * s_mu as {nu: c}."""
    n = size(lam) + size(mu)
    out = {}
    for nu in partitions(n):
        c = lr_coefficient(normalize_partition(lam), normalize_partition(mu), nu)
        if c:
            out[nu] = c
    return out


# --- Jacobi-Trudi ---

@lru_cache(maxsize=None)
def jacobi_trudi_terms(lam: Partition) -> tuple:
    """s_lam = det(h_{lam_a - a + b}) as ((sign, (k_1, ..., k_l)), ...) with every k >= 0."""
    lam = normalize_partition(lam)
    n = len(lam)
    terms = []
    for perm in permutations(range(n)):
        ks = tuple(lam[a] - a + perm[a] for a in range(n))
        if any(k < 0 for k in ks):
            continue
        terms.append((Permutation(list(perm)).signature(), tuple(sorted(k for k in ks if k))))
    merged: dict = {}
    for sign, ks in terms:
        merged[ks] = merged.get(ks, 0) + sign
    return tuple((sign, ks) for ks, sign in sorted(merged.items()) if sign)
