# affinepbw/parsing.py
"""
Text syntaxes accepted by the commands and used in tests.

- scalars: integers, ``q``, ``qs``, ``^`` or ``**``, ``+ - * /`` and parentheses
  (``q = qs ** scale`` for the type at hand)
- roots: ``[c_0,...,c_n]``
- order specs: ``bn:<p>``, ``word:<prefix>|<period>..<period>|<prefix>``,
  ``chain:[root,...]``, ``coarse:<word>``, ``min<i>:<word>``, ``plus:<word>``
- Lusztig data: ``{beta=[1,0]:2, beta=[0,1]:1; delta=[[2,1],[]]}``
- elements: ``E0 E1 E0``, ``(qs + qs^-1)*E0 E1 - 2*E1 E0``
"""

from __future__ import annotations

import json
import re
from tokenize import TokenError

from sympy import Symbol
from sympy.core.sympify import SympifyError
from sympy.parsing.sympy_parser import convert_xor, parse_expr, standard_transformations

from .cartan import AffineTypeData
from .convex_order import (
    InfiniteWord,
    OneRowOrder,
    bn_order,
    extend_finite_order,
    order_plus,
    order_with_minimal,
    translation_order,
)
from .exceptions import EngineError, ParseError
from .pbw import LusztigDatum
from .ring import RATFUNC_FIELD, RatFunc
from .uqplus import AlgebraElement

_Q, _QS, _U = Symbol("q"), Symbol("qs"), Symbol("u")
_TRANSFORMS = standard_transformations + (convert_xor,)

_WORD_RE = re.compile(r"^(\d*)(?:~(\d+))?$")
_ROOT_ENTRY_RE = re.compile(r"beta\s*=\s*(\[[^\]]*\])\s*:\s*(\d+)")
_MONOMIAL_RE = re.compile(r"^(?:(.*?)\s*\*\s*)?((?:E\d+\s*)+)$")


# --- Scalars ---

def parse_scalar(text: str, typ: AffineTypeData | None = None) -> RatFunc:
    scale = typ.scale if typ is not None else 1
    try:
        expr = parse_expr(str(text), local_dict={"q": _Q, "qs": _QS}, transformations=_TRANSFORMS)
    except (SympifyError, SyntaxError, TypeError, TokenError) as exc:
        raise ParseError("unreadable scalar", text=text) from exc
    unknown = expr.free_symbols - {_Q, _QS}
    if unknown:
        raise ParseError("scalar uses unknown symbols", text=text, symbols=sorted(map(str, unknown)))
    expr = expr.subs(_Q, _QS ** scale).subs(_QS, 1 / _U)
    try:
        return RATFUNC_FIELD.from_expr(expr)
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError("scalar is not a rational function of q", text=text) from exc


# --- Roots and words ---

def parse_root(text, typ: AffineTypeData | None = None) -> tuple:
    try:
        value = json.loads(text) if isinstance(text, str) else text
        root = tuple(int(c) for c in value)
    except (ValueError, TypeError) as exc:
        raise ParseError("root must be a list of integers", text=text) from exc
    if typ is not None and len(root) != typ.rank:
        raise ParseError("root has the wrong number of coordinates", text=text, rank=typ.rank)
    return root


def parse_word(text: str, typ: AffineTypeData | None = None) -> tuple:
    """Node letters, ``s0s1``, ``0 1`` or ``01`` style; ``e`` is the empty word."""
    text = str(text).strip()
    if text in ("", "e"):
        return ()
    letters = tuple(int(ch) for ch in re.findall(r"\d", text))
    if typ is not None and any(i not in typ.nodes for i in letters):
        raise ParseError("word uses a node outside the diagram", text=text)
    return letters


def _infinite_word(prefix: str, periodic: str, typ: AffineTypeData) -> InfiniteWord:
    match = _WORD_RE.match(periodic.strip())
    if not match or not match.group(1):
        raise ParseError("period must be a nonempty string of node letters", text=periodic)
    twist = tuple(int(ch) for ch in match.group(2)) if match.group(2) else tuple(typ.nodes)
    if sorted(twist) != list(typ.nodes):
        raise ParseError("twist must permute the nodes", text=periodic)
    return InfiniteWord(parse_word(prefix, typ), parse_word(match.group(1), typ), twist)


# --- Orders ---

def parse_order(spec: str, typ: AffineTypeData, seed: int = 0) -> OneRowOrder:
    spec = str(spec).strip()
    kind, _, body = spec.partition(":")
    try:
        if kind == "bn":
            return bn_order(typ, int(body or 0))
        if kind == "word":
            return _word_order(spec, body, typ)
        if kind == "chain":
            roots = json.loads(body)
            order = extend_finite_order([parse_root(r, typ) for r in roots], typ, seed=seed)
            order.label = spec
            return order
        if kind == "coarse":
            return translation_order(typ, typ.classical_element(parse_word(body, typ)))
        if kind.startswith("min") and kind[3:].isdigit():
            return order_with_minimal(typ, int(kind[3:]), typ.classical_element(parse_word(body, typ)))
        if kind == "plus":
            return order_plus(typ, parse_word(body, typ))
    except EngineError:
        raise
    except (ValueError, TypeError) as exc:
        raise ParseError("unreadable order spec", spec=spec) from exc
    raise ParseError("unknown order spec", spec=spec)


def _word_order(spec: str, body: str, typ: AffineTypeData) -> OneRowOrder:
    try:
        forward_part, backward_part = body.split("..")
        f_prefix, f_period = forward_part.split("|")
        b_period, b_prefix = backward_part.split("|")
    except ValueError as exc:
        raise ParseError("word spec is <prefix>|<period>..<period>|<prefix>", spec=spec) from exc
    order = OneRowOrder(
        typ,
        _infinite_word(f_prefix, f_period, typ),
        _infinite_word(b_prefix, b_period, typ),
        spec,
    )
    window = 4 * (len(order.forward.prefix) + len(order.backward.prefix)) + 6 * typ.rank
    if not order.check_reduced(window):
        raise ParseError("word spec does not give a reduced one-row word", spec=spec)
    return order


# --- Lusztig data ---

def parse_datum(text: str, typ: AffineTypeData) -> LusztigDatum:
    text = str(text).strip()
    if not (text.startswith("{") and text.endswith("}")):
        raise ParseError("Lusztig datum must be braced", text=text)
    real_part, _, imag_part = text[1:-1].partition(";")
    real = {}
    leftover = _ROOT_ENTRY_RE.sub("", real_part).replace(",", "").strip()
    if leftover:
        raise ParseError("unreadable real exponents", text=text)
    for root_text, count in _ROOT_ENTRY_RE.findall(real_part):
        root = parse_root(root_text, typ)
        real[root] = real.get(root, 0) + int(count)
    imaginary = None
    imag_part = imag_part.strip()
    if imag_part:
        key, _, value = imag_part.partition("=")
        if key.strip() != "delta":
            raise ParseError("imaginary part must be delta=[...]", text=text)
        try:
            imaginary = [tuple(int(p) for p in part) for part in json.loads(value)]
        except (ValueError, TypeError) as exc:
            raise ParseError("delta must be a list of integer lists", text=text) from exc
    try:
        return LusztigDatum.build(typ, real, imaginary)
    except EngineError:
        raise
    except ValueError as exc:
        raise ParseError(str(exc), text=text) from exc


# --- Elements ---

def _split_terms(text: str) -> list:
    """Top-level signed summands."""
    terms, depth, start, sign = [], 0, 0, 1
    for k, ch in enumerate(text):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch in "+-" and depth == 0 and k > start and text[k - 1] not in "^*/":
            chunk = text[start:k].strip()
            if chunk:
                terms.append((sign, chunk))
            sign = 1 if ch == "+" else -1
            start = k + 1
        elif ch in "+-" and depth == 0 and k == start:
            sign = -sign if ch == "-" else sign
            start = k + 1
    chunk = text[start:].strip()
    if chunk:
        terms.append((sign, chunk))
    return terms


def parse_element(text: str, typ: AffineTypeData) -> AlgebraElement:
    total = AlgebraElement.zero(typ)
    for sign, chunk in _split_terms(str(text)):
        match = _MONOMIAL_RE.match(chunk)
        if match:
            coeff = parse_scalar(match.group(1), typ) if match.group(1) else RATFUNC_FIELD.one
            word = tuple(int(letter) for letter in re.findall(r"E(\d+)", match.group(2)))
        else:
            coeff, word = parse_scalar(chunk, typ), ()
        if any(i not in typ.nodes for i in word):
            raise ParseError("element uses a node outside the diagram", text=text)
        total = total + AlgebraElement.monomial(typ, word, coeff * sign)
    return total
