# affinepbw/pbw.py
"""
Root vectors, Lusztig data and PBW monomials.

Real root vectors follow the rows of a one-row order:
E_{beta_k} = T_{i_1} ... T_{i_{k-1}} E_{i_k} above delta and the same with
inverse braid operators below delta. Imaginary vectors are the commuting
psi_{i,k} built from a pair of real root vectors, and the Schur vectors
S_i^lambda are the Jacobi-Trudi determinants of complete vectors h_k obtained
from psi through the exponential generating series, with a sign and
q-power correction at the doubled node of A2~2.
"""

from __future__ import annotations

import logging
import threading
from dataclasses import dataclass, field

from .cartan import AffineTypeData, ClassicalElement, enumerate_roots
from .convex_order import OneRowOrder, coarse_type, translation_order
from .exceptions import CalibrationFailure, EngineError, IndexOutOfRange, RootBeyondCutoff, RootNotInSystem
from .ring import ONE, is_regular, qs, quantum_int_exp, residue_at_infinity
from .symmetric import jacobi_trudi_terms, multipartition_weight, multipartitions, normalize_partition
from .uqplus import (
    AlgebraElement,
    FullElement,
    braid_apply,
    descent_residue,
    divided_power_of,
    kashiwara_form,
    product,
)

logger = logging.getLogger(__name__)

_LOCK = threading.RLock()
_ROW_VECTORS: dict = {}
_SCALARS: dict = {}
_COMPLETE: dict = {}
_BASES: dict = {}
_COARSE: dict = {}

# exponent range searched for the twisted-node scalar, in units of q_i per k
CALIBRATION_SPREAD = 3


def clear_memos() -> None:
    with _LOCK:
        for memo in (_ROW_VECTORS, _SCALARS, _COMPLETE, _BASES, _COARSE):
            memo.clear()


# --- Lusztig data ---

@dataclass(frozen=True, order=True)
class LusztigDatum:
    """Real exponents ``((root, count), ...)`` sorted by root, plus one partition per finite node."""

    real: tuple = field(default=())
    imaginary: tuple = field(default=())

    @classmethod
    def build(cls, typ: AffineTypeData, real=None, imaginary=None) -> "LusztigDatum":
        merged: dict = {}
        for beta, count in dict(real or {}).items():
            beta, count = tuple(beta), int(count)
            if count < 0:
                raise IndexOutOfRange("Lusztig data exponents are nonnegative", root=beta, count=count)
            if count:
                if not typ.is_positive_real_root(beta):
                    raise RootNotInSystem("Lusztig datum supported off the positive real roots", root=beta)
                merged[beta] = merged.get(beta, 0) + count
        if imaginary is None:
            imaginary = [() for _ in typ.finite_nodes]
        imaginary = tuple(normalize_partition(part) for part in imaginary)
        if len(imaginary) != typ.rank - 1:
            raise ValueError("one partition per finite node is required")
        return cls(tuple(sorted(merged.items())), imaginary)

    def count(self, beta) -> int:
        return dict(self.real).get(tuple(beta), 0)

    @property
    def real_map(self) -> dict:
        return dict(self.real)

    def is_zero(self) -> bool:
        return not self.real and not any(self.imaginary)

    def is_purely_imaginary(self) -> bool:
        return not self.real

    def with_real(self, updates: dict) -> "LusztigDatum":
        merged = dict(self.real)
        for beta, count in updates.items():
            merged[tuple(beta)] = count
        return LusztigDatum(tuple(sorted((b, c) for b, c in merged.items() if c)), self.imaginary)

    def describe(self) -> str:
        real = ", ".join(f"beta=[{','.join(map(str, b))}]:{c}" for b, c in self.real)
        imag = ",".join("[" + ",".join(map(str, part)) + "]" for part in self.imaginary)
        return "{" + real + "; delta=[" + imag + "]}"

    def __str__(self):
        return self.describe()


def lusztig_weight(c: LusztigDatum, typ: AffineTypeData) -> tuple:
    total = [0] * typ.rank
    for beta, count in c.real:
        for k, b in enumerate(beta):
            total[k] += count * b
    m = multipartition_weight(typ, c.imaginary)
    return tuple(t + m * d for t, d in zip(total, typ.delta))


def _real_roots_below(typ: AffineTypeData, weight) -> list:
    if not any(weight):
        return []
    roots = enumerate_roots(typ, max(1, typ.delta_degree(weight)))
    return [
        beta for beta in roots
        if beta != typ.delta and all(b <= w for b, w in zip(beta, weight))
    ]


def lusztig_data(typ: AffineTypeData, weight) -> list:
    """Every Lusztig datum of the given weight, in a deterministic order."""
    weight = tuple(weight)
    if any(c < 0 for c in weight):
        return []
    roots = _real_roots_below(typ, weight)
    out = []

    def _fill(k, remaining, chosen):
        m = typ.delta_multiple(remaining) if any(remaining) else 0
        if m is not None:
            for mp in multipartitions(typ, m):
                out.append(LusztigDatum(tuple(sorted(chosen.items())), mp))
        for j in range(k, len(roots)):
            beta = roots[j]
            if all(b <= r for b, r in zip(beta, remaining)):
                chosen[beta] = chosen.get(beta, 0) + 1
                _fill(j, tuple(r - b for r, b in zip(remaining, beta)), chosen)
                chosen[beta] -= 1
                if not chosen[beta]:
                    del chosen[beta]

    _fill(0, weight, {})
    return sorted(set(out))


# --- Real root vectors ---

def _require_positive(image, context) -> AlgebraElement:
    if isinstance(image, AlgebraElement):
        return image
    if isinstance(image, FullElement) and image.is_positive():
        return image.to_positive()
    raise EngineError("braid image left the positive part", **context)


def _row_vector(typ: AffineTypeData, direction: str, letters: tuple) -> AlgebraElement:
    key = (typ.tag, direction, letters)
    cached = _ROW_VECTORS.get(key)
    if cached is not None:
        return cached
    if len(letters) == 1:
        vector = AlgebraElement.generator(typ, letters[0])
    else:
        inner = _row_vector(typ, direction, letters[1:])
        vector = _require_positive(braid_apply(letters[0], direction, inner), {"letters": letters})
    with _LOCK:
        _ROW_VECTORS.setdefault(key, vector)
    return vector


def real_root_vector(order: OneRowOrder, beta, cutoff: int | None = None) -> AlgebraElement:
    typ = order.typ
    beta = tuple(beta)
    if typ.delta_multiple(beta) is not None:
        raise RootNotInSystem("imaginary roots have no real root vector", root=beta)
    if cutoff is not None and typ.height(beta) > cutoff:
        raise RootBeyondCutoff("root exceeds the height cutoff", root=beta, cutoff=cutoff)
    k = order.index_of(beta)
    if k >= 1:
        return _row_vector(typ, "fwd", order.forward.letters(k))
    return _row_vector(typ, "inv", order.backward.letters(1 - k))


def real_divided_power(order: OneRowOrder, beta, n: int, cutoff: int | None = None) -> AlgebraElement:
    typ = order.typ
    if n == 0:
        return AlgebraElement.one(typ)
    return divided_power_of(real_root_vector(order, beta, cutoff), n, typ.root_step(beta))


# --- Imaginary vectors ---

def _unit(typ: AffineTypeData, i: int) -> tuple:
    return tuple(1 if k == i - 1 else 0 for k in range(typ.rank - 1))


def psi_roots(typ: AffineTypeData, wbar: ClassicalElement, i: int, k: int) -> tuple:
    """(k d_i delta - gamma_i, gamma_i) for the minimal gamma_i over wbar(alpha_i)."""
    gamma = typ.classical_representative(wbar.apply(_unit(typ, i)))
    partner = tuple(k * typ.d[i] * d - g for d, g in zip(typ.delta, gamma))
    return partner, gamma


def psi_vector(typ: AffineTypeData, wbar: ClassicalElement, i: int, k: int, cutoff: int | None = None) -> AlgebraElement:
    if k < 1:
        raise IndexOutOfRange("psi vectors are indexed by k >= 1", k=k, node=i)
    if cutoff is not None and typ.height(typ.delta) * k * typ.d[i] > cutoff:
        raise RootBeyondCutoff("imaginary weight exceeds the height cutoff", k=k, node=i, cutoff=cutoff)
    order = translation_order(typ, wbar)
    partner, gamma = psi_roots(typ, wbar, i, k)
    upper = real_root_vector(order, partner)
    lower = real_root_vector(order, gamma)
    return product(upper, lower) - product(lower, upper).scale(qs(-2 * typ.node_step(i)))


def _power_scalar(typ: AffineTypeData, i: int, k: int):
    """Scalar s_k with k h_k = sum_r s_r psi_r h_{k-r}.

    The generating series sum_k h_k z^k = exp(sum_k psi_k z^k / [k]_i) gives
    s_k = k / [k]_i. At the doubled node of a twisted type that scalar is
    corrected by a sign and a power of q_i, chosen so that h_k is a crystal
    basis lift.
    """
    key = (typ.tag, i, k)
    cached = _SCALARS.get(key)
    if cached is not None:
        return cached
    step = typ.node_step(i)
    standard = ONE * k / quantum_int_exp(k, step).to_ratfunc()
    if typ.r[i] == 1:
        with _LOCK:
            _SCALARS.setdefault(key, standard)
        return standard
    wbar = typ.identity
    base = AlgebraElement.zero(typ)
    for r in range(1, k):
        base = base + product(psi_vector(typ, wbar, i, r), complete_vector(typ, wbar, i, k - r)).scale(
            _power_scalar(typ, i, r)
        )
    psi = psi_vector(typ, wbar, i, k)
    spread = CALIBRATION_SPREAD * k * step
    exponents = sorted(range(-spread, spread + 1), key=lambda e: (abs(e), -e))
    for exponent in exponents:
        for sign in (1, -1):
            scalar = standard * qs(exponent) * sign
            candidate = (base + psi.scale(scalar)).scale(ONE / k)
            norm = kashiwara_form(candidate, candidate)
            if not is_regular(norm) or residue_at_infinity(norm) != 1:
                continue
            if not candidate.is_integral():
                continue
            if descent_residue(candidate) != 1:
                continue
            logger.debug("twisted scalar s_%d for %s node %d: sign %d exponent %d", k, typ.tag, i, sign, exponent)
            with _LOCK:
                _SCALARS.setdefault(key, scalar)
            return scalar
    raise CalibrationFailure("no Newton scalar makes the complete vector a crystal lift", type=typ.tag, node=i, k=k)


def complete_vector(typ: AffineTypeData, wbar: ClassicalElement, i: int, k: int) -> AlgebraElement:
    """h_k with k h_k = sum_r p_r h_{k-r} and p_r = scalar_r * psi_r."""
    if k == 0:
        return AlgebraElement.one(typ)
    key = (typ.tag, wbar.word, i, k)
    cached = _COMPLETE.get(key)
    if cached is not None:
        return cached
    total = AlgebraElement.zero(typ)
    for r in range(1, k + 1):
        total = total + product(psi_vector(typ, wbar, i, r), complete_vector(typ, wbar, i, k - r)).scale(
            _power_scalar(typ, i, r)
        )
    vector = total.scale(ONE / k)
    with _LOCK:
        _COMPLETE.setdefault(key, vector)
    return vector


def schur_vector(typ: AffineTypeData, wbar: ClassicalElement, i: int, lam, cutoff: int | None = None) -> AlgebraElement:
    lam = normalize_partition(lam)
    if cutoff is not None and typ.height(typ.delta) * typ.d[i] * sum(lam) > cutoff:
        raise RootBeyondCutoff("imaginary weight exceeds the height cutoff", partition=lam, cutoff=cutoff)
    total = AlgebraElement.zero(typ)
    for sign, ks in jacobi_trudi_terms(lam):
        term = AlgebraElement.one(typ)
        for k in ks:
            term = product(term, complete_vector(typ, wbar, i, k))
        total = total + (term if sign > 0 else -term)
    return total


def imaginary_block(typ: AffineTypeData, wbar: ClassicalElement, multipartition) -> AlgebraElement:
    block = AlgebraElement.one(typ)
    for i, lam in zip(typ.finite_nodes, multipartition):
        if lam:
            block = product(block, schur_vector(typ, wbar, i, lam))
    return block


# --- PBW monomials ---

def order_coarse_type(order: OneRowOrder) -> ClassicalElement:
    cached = _COARSE.get(order.key)
    if cached is None:
        cached = coarse_type(order)
        with _LOCK:
            _COARSE.setdefault(order.key, cached)
    return cached


def monomial_factors(c: LusztigDatum, order: OneRowOrder) -> tuple:
    """(below, above): real (root, count) pairs in ascending order on either side of delta."""
    keyed = sorted(c.real, key=lambda item: order.sort_key(item[0]))
    below = [item for item in keyed if not order.is_above_delta(item[0])]
    above = [item for item in keyed if order.is_above_delta(item[0])]
    return below, above


def pbw_monomial(c: LusztigDatum, order: OneRowOrder, cutoff: int | None = None) -> AlgebraElement:
    """L(c, order): smallest roots on the left, the imaginary block in the middle."""
    typ = order.typ
    if cutoff is not None and typ.height(lusztig_weight(c, typ)) > cutoff:
        raise RootBeyondCutoff("datum exceeds the height cutoff", datum=c.describe(), cutoff=cutoff)
    below, above = monomial_factors(c, order)
    result = AlgebraElement.one(typ)
    for beta, n in below:
        result = product(result, real_divided_power(order, beta, n))
    if any(c.imaginary):
        result = product(result, imaginary_block(typ, order_coarse_type(order), c.imaginary))
    for beta, n in above:
        result = product(result, real_divided_power(order, beta, n))
    return result


def pbw_basis(order: OneRowOrder, weight) -> list:
    """[(datum, L(datum, order)), ...] for one weight space."""
    weight = tuple(weight)
    key = (order.key, weight)
    cached = _BASES.get(key)
    if cached is not None:
        return cached
    basis = [(c, pbw_monomial(c, order)) for c in lusztig_data(order.typ, weight)]
    logger.debug("PBW basis %s %s: %d vectors", order.label, weight, len(basis))
    with _LOCK:
        _BASES.setdefault(key, basis)
    return basis


def split_datum(c: LusztigDatum, order: OneRowOrder, prefix_size: int) -> tuple:
    """(c_S, c_rest) for S the ``prefix_size`` smallest roots of the order."""
    prefix = set(order.row_roots(-1, prefix_size))
    inside = {b: n for b, n in c.real if b in prefix}
    outside = {b: n for b, n in c.real if b not in prefix}
    empty = tuple(() for _ in c.imaginary)
    return (
        LusztigDatum(tuple(sorted(inside.items())), empty),
        LusztigDatum(tuple(sorted(outside.items())), c.imaginary),
    )


def prefix_factorization(c: LusztigDatum, order: OneRowOrder, prefix_size: int) -> tuple:
    """L(c) = L(c_S) L(c_rest) for an initial segment S."""
    inside, outside = split_datum(c, order, prefix_size)
    return pbw_monomial(inside, order), pbw_monomial(outside, order)


def dual_norm_residues(order: OneRowOrder, weight) -> list:
    """Residues of the Gram matrix of the PBW basis; the identity when the basis is almost orthonormal."""
    basis = [vector for _, vector in pbw_basis(order, weight)]
    return [[residue_at_infinity(kashiwara_form(x, y)) for y in basis] for x in basis]
