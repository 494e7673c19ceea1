# affinepbw/polytope.py
"""
PBW polytopes of crystal elements.

The vertices mu^+_w and mu^-_w of an element b are read from the PBW
monomial of b for an order in which the inversion set of w is an initial
(resp. final) segment. Hulls are computed exactly over the integers, edges
are checked to be root multiples, and each classical Weyl element carries
the multipartition of the matching imaginary block as a decoration.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from math import gcd

from sympy import Matrix

from .cartan import AffineTypeData, inversion_roots
from .convex_order import OneRowOrder, order_plus, reflect_order, reverse_order, translation_order
from .crystal import Crystal, CrystalElem
from .exceptions import EdgeNotRootParallel, NotAccessible, PathAmbiguity, RootNotInSystem
from .pbw import LusztigDatum, order_coarse_type
from .symmetric import multipartition_weight

logger = logging.getLogger(__name__)

SVG_HASH_SALT = "affinepbw"


# --- Weyl group sampling ---

def weyl_words(typ: AffineTypeData, max_length: int) -> list:
    """One reduced word per affine Weyl group element of length <= max_length, shortest first."""
    layer = {frozenset(): ()}
    out = [()]
    for _ in range(max_length):
        nxt = {}
        for word in sorted(layer.values()):
            for j in typ.nodes:
                if any(c < 0 for c in typ.apply_word(word, typ.simple_root(j))):
                    continue
                longer = word + (j,)
                key = frozenset(inversion_roots(typ, longer))
                if key not in nxt:
                    nxt[key] = longer
        layer = nxt
        out.extend(sorted(layer.values()))
    return out


def _below(beta, weight) -> bool:
    return all(b <= w for b, w in zip(beta, weight))


def _segment_weight(c: LusztigDatum, roots, rank: int) -> tuple:
    total = [0] * rank
    for beta, n in c.real:
        if beta in roots:
            for k, b in enumerate(beta):
                total[k] += n * b
    return tuple(total)


def mu_vertices(crystal: Crystal, b: CrystalElem, word) -> tuple:
    """(mu^+_w(b), mu^-_w(b)) for w = s_{word[0]} s_{word[1]} ..."""
    typ = crystal.typ
    word = tuple(word)
    weight = crystal.weight(b)
    inverted = set(inversion_roots(typ, word))
    if not any(_below(beta, weight) for beta in inverted):
        return (0,) * typ.rank, weight
    order = order_plus(typ, word)
    plus = _segment_weight(crystal.datum_under(b, order), inverted, typ.rank)
    tail = _segment_weight(crystal.datum_under(b, reverse_order(order)), inverted, typ.rank)
    minus = tuple(w - t for w, t in zip(weight, tail))
    return plus, minus


# --- Exact hulls ---

def _sub(a, b) -> tuple:
    return tuple(x - y for x, y in zip(a, b))


def _rank(vectors) -> int:
    vectors = [list(v) for v in vectors if any(v)]
    return Matrix(vectors).rank() if vectors else 0


def _cross(o, a, b) -> int:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _monotone_chain(points) -> list:
    """Counter-clockwise hull of planar points without collinear vertices."""
    points = sorted(set(points))
    if len(points) <= 2:
        return points
    lower: list = []
    for p in points:
        while len(lower) > 1 and _cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper: list = []
    for p in reversed(points):
        while len(upper) > 1 and _cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


def _planar_hull(points, base) -> tuple:
    diffs = [_sub(p, base) for p in points]
    dim = len(base)
    for a in range(dim):
        for b in range(a + 1, dim):
            if _rank([(d[a], d[b]) for d in diffs]) == 2:
                lookup = {(p[a], p[b]): p for p in points}
                cycle = [lookup[q] for q in _monotone_chain(list(lookup))]
                edges = [(cycle[k], cycle[(k + 1) % len(cycle)]) for k in range(len(cycle))]
                return cycle, edges
    raise ValueError("points do not span a plane")


def _spatial_hull(points) -> tuple:
    """Brute-force facets; fine for the few dozen points a polytope here carries."""
    planes = set()
    n = len(points)
    for x in range(n):
        for y in range(x + 1, n):
            for z in range(y + 1, n):
                u, v = _sub(points[y], points[x]), _sub(points[z], points[x])
                normal = (u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0])
                if not any(normal):
                    continue
                g = gcd(*normal)
                normal = tuple(c // g for c in normal)
                level = sum(a * b for a, b in zip(normal, points[x]))
                offsets = [sum(a * b for a, b in zip(normal, p)) - level for p in points]
                if max(offsets) > 0 and min(offsets) < 0:
                    continue
                if max(offsets) > 0:
                    # keep every point on the nonpositive side
                    normal, level = tuple(-c for c in normal), -level
                planes.add((normal, level))
    on = {p: [nrm for nrm, lvl in planes if sum(a * b for a, b in zip(nrm, p)) == lvl] for p in points}
    vertices = sorted(p for p in points if _rank(on[p]) == 3)
    edges = []
    for k, p in enumerate(vertices):
        for q in vertices[k + 1:]:
            shared = [nrm for nrm in on[p] if nrm in on[q]]
            if _rank(shared) == 2:
                edges.append((p, q))
    return vertices, edges


def convex_hull(points) -> tuple:
    """(vertices, edges) of the convex hull of integer points of dimension at most three."""
    points = sorted(set(tuple(p) for p in points))
    if len(points) == 1:
        return points, []
    base = points[0]
    dim = _rank([_sub(p, base) for p in points])
    if dim == 1:
        direction = _sub(points[-1], base)
        ends = sorted(points, key=lambda p: sum(a * b for a, b in zip(_sub(p, base), direction)))
        return [ends[0], ends[-1]], [(ends[0], ends[-1])]
    if dim == 2:
        return _planar_hull(points, base)
    return _spatial_hull(points)


def edge_root(typ: AffineTypeData, vector) -> tuple:
    """(root, multiple) with vector = multiple * root up to sign; delta for imaginary edges."""
    vector = tuple(vector)
    if typ.height(vector) < 0:
        vector = tuple(-c for c in vector)
    if typ.height(vector) <= 0 or any(c < 0 for c in vector):
        raise EdgeNotRootParallel("edge is not a root multiple", edge=vector)
    m = typ.delta_multiple(vector)
    if m is not None:
        return typ.delta, m
    g = gcd(*vector)
    for k in range(g, 0, -1):
        if g % k == 0:
            beta = tuple(c // k for c in vector)
            if typ.is_positive_real_root(beta):
                return beta, k
    raise EdgeNotRootParallel("edge is not a root multiple", edge=vector)


# --- Polytopes ---

@dataclass
class DecoratedPolytope:
    """A pseudo-Weyl polytope with mu_0 at the origin and one multipartition per classical Weyl element."""

    tag: str
    datum: LusztigDatum
    weight: tuple
    vertices: list
    edges: list = field(default_factory=list)
    mu: dict = field(default_factory=dict)
    decorations: dict = field(default_factory=dict)
    sample_length: int = 0
    stabilized: bool = True

    @property
    def bottom(self) -> tuple:
        return min(self.vertices, key=sum)

    @property
    def top(self) -> tuple:
        return max(self.vertices, key=sum)

    def is_point(self) -> bool:
        return len(self.vertices) == 1

    def to_dict(self) -> dict:
        return {
            "type": self.tag,
            "datum": self.datum.describe(),
            "weight": list(self.weight),
            "vertices": [list(v) for v in self.vertices],
            "edges": [
                {"from": list(e["from"]), "to": list(e["to"]), "root": list(e["root"]), "multiple": e["multiple"]}
                for e in self.edges
            ],
            "mu": [
                {"word": "".join(map(str, w)) or "e", "plus": list(p), "minus": list(m)}
                for w, (p, m) in sorted(self.mu.items(), key=lambda item: (len(item[0]), item[0]))
            ],
            "decorations": {
                ("".join(map(str, w)) or "e"): [list(part) for part in mp]
                for w, mp in sorted(self.decorations.items())
            },
            "sample_length": self.sample_length,
            "stabilized": self.stabilized,
        }


def default_sample_length(weight) -> int:
    return 2 * max(1, sum(weight))


def build_pbw_polytope(crystal: Crystal, b: CrystalElem, sample_length: int | None = None) -> DecoratedPolytope:
    typ = crystal.typ
    weight = crystal.weight(b)
    if sample_length is None:
        sample_length = default_sample_length(weight)
    mu: dict = {}
    seen: dict = {}
    last_new = 0
    for word in weyl_words(typ, sample_length):
        key = frozenset(beta for beta in inversion_roots(typ, word) if _below(beta, weight))
        if key not in seen:
            seen[key] = mu_vertices(crystal, b, word)
            last_new = len(word)
        mu[word] = seen[key]
    stabilized = not any(weight) or last_new < sample_length
    if not stabilized:
        logger.warning("mu vertices still changing at sample length %d for %s", sample_length, b.describe())
    points = {p for pair in mu.values() for p in pair}
    vertices, raw_edges = convex_hull(points)
    edges = []
    for start, end in raw_edges:
        if sum(end) < sum(start):
            start, end = end, start
        root, multiple = edge_root(typ, _sub(end, start))
        edges.append({"from": start, "to": end, "root": root, "multiple": multiple})
    decorations = {}
    for wbar in typ.classical_group:
        decorations[wbar.word] = crystal.datum_under(b, translation_order(typ, wbar)).imaginary
    return DecoratedPolytope(
        tag=typ.tag,
        datum=b.datum,
        weight=weight,
        vertices=sorted(vertices),
        edges=sorted(edges, key=lambda e: (e["from"], e["to"])),
        mu=mu,
        decorations=decorations,
        sample_length=sample_length,
        stabilized=stabilized,
    )


def order_path(P: DecoratedPolytope, order: OneRowOrder) -> list:
    """The path P^order from the bottom to the top vertex.

    Vertices are partial sums over initial segments of the order, so the
    path climbs through edge roots in strictly increasing order. A single
    edge parallel to a sum of roots is monotone too, so at every vertex the
    path leaves along the upward edge whose root comes first in the order.
    """
    adjacency: dict = {}
    for e in P.edges:
        adjacency.setdefault(e["from"], []).append(e)
    vertex, last_key, path = P.bottom, None, []
    top = P.top
    while vertex != top:
        keyed = [(order.sort_key(e["root"]), e) for e in adjacency.get(vertex, [])]
        if not keyed:
            raise PathAmbiguity("path stalls below the top vertex", vertex=vertex, order=order.label)
        key, e = min(keyed, key=lambda item: item[0])
        if last_key is not None and key <= last_key:
            raise PathAmbiguity("path edges are not increasing", vertex=vertex, root=e["root"], order=order.label)
        path.append(e)
        vertex, last_key = e["to"], key
    return path


def polytopal_lusztig_data(P: DecoratedPolytope, order: OneRowOrder) -> LusztigDatum:
    """Real data read along the monotone path; the imaginary part is the decoration of the order's coarse type."""
    typ = order.typ
    if P.is_point():
        return LusztigDatum.build(typ)
    real = {}
    imaginary_length = 0
    for e in order_path(P, order):
        if e["root"] == typ.delta:
            imaginary_length = e["multiple"]
        else:
            real[e["root"]] = e["multiple"]
    decoration = P.decorations.get(order_coarse_type(order).word)
    if decoration is None or multipartition_weight(typ, decoration) != imaginary_length:
        raise PathAmbiguity(
            "imaginary edge and decoration disagree",
            length=imaginary_length, decoration=decoration, order=order.label,
        )
    return LusztigDatum.build(typ, real, decoration)


# --- Crystal-theoretic data ---

def crystal_theoretic_lusztig_data(crystal: Crystal, b: CrystalElem, order: OneRowOrder, beta, max_depth: int = 64) -> int:
    """The exponent at ``beta`` through string lengths and Saito reflections, peeling the order from its nearer end."""
    typ = crystal.typ
    beta = tuple(beta)
    if not typ.is_positive_real_root(beta):
        raise NotAccessible("only real roots carry crystal-theoretic data", root=beta)
    try:
        k = order.index_of(beta)
    except RootNotInSystem as exc:
        raise NotAccessible("root is not finitely far from either end", root=beta) from exc
    depth = k - 1 if k >= 1 else -k
    if depth > max_depth:
        raise NotAccessible("root is beyond the recursion depth", root=beta, depth=depth)
    starred = k >= 1
    for _ in range(depth + 1):
        if b is None:
            raise NotAccessible("Saito reflection left the crystal", root=beta)
        i = order.forward.letter(0) if starred else order.backward.letter(0)
        if beta == typ.simple_root(i):
            return crystal.phi(i, b, starred)
        lowered = crystal.f_power(i, b, crystal.phi(i, b, starred), starred)
        b = crystal.sigma(i, lowered, starred)
        order = reflect_order(order, i)
        beta = typ.reflect(i, beta)
    raise NotAccessible("recursion did not reach the root", root=beta)


# --- Rendering ---

def render_svg(P: DecoratedPolytope, path, axes=(0, 1)) -> None:
    """Projection of the polytope to two root coordinates."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    matplotlib.rcParams["svg.hashsalt"] = SVG_HASH_SALT
    a, b = axes
    fig, ax = plt.subplots(figsize=(4, 4))
    for e in P.edges:
        ax.plot([e["from"][a], e["to"][a]], [e["from"][b], e["to"][b]], color="black", linewidth=1)
        mid = ((e["from"][a] + e["to"][a]) / 2, (e["from"][b] + e["to"][b]) / 2)
        ax.annotate(str(e["multiple"]), mid, fontsize=7, color="gray")
    ax.scatter([v[a] for v in P.vertices], [v[b] for v in P.vertices], s=12, color="black")
    ax.set_xlabel(f"alpha_{a}")
    ax.set_ylabel(f"alpha_{b}")
    ax.set_title(P.datum.describe(), fontsize=8)
    ax.set_aspect("equal", adjustable="datalim")
    fig.savefig(path, format="svg", metadata={"Date": None})
    plt.close(fig)
