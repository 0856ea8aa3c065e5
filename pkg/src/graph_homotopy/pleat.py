"""Folds, stiffness, and dismantling a graph down to its pleat."""

from __future__ import annotations

import random
from dataclasses import dataclass

from .errors import EmptyGraphError, InvalidFoldError, InvalidParameterError, PreconditionError
from .exponential import adjacent_homs
from .graph import (
    Graph,
    Vertex,
    VertexMap,
    _bits,
    are_isomorphic,
    identity_map,
    inclusion_map,
    product,
    remove_vertex,
    vertex_label,
)

POLICIES = ("first", "random")


@dataclass(frozen=True)
class Fold:
    """Send ``removed`` to ``into`` and fix everything else."""

    graph: Graph
    removed: Vertex
    into: Vertex

    def is_valid(self) -> bool:
        g = self.graph
        if self.removed not in g or self.into not in g or self.removed == self.into:
            return False
        nw = g.mask(g.index(self.removed))
        nv = g.mask(g.index(self.into))
        return nw & ~nv == 0

    def as_map(self) -> VertexMap:
        """The fold as an endomorphism of its graph."""
        g = self.graph
        idx = list(range(g.order))
        idx[g.index(self.removed)] = g.index(self.into)
        return VertexMap._raw(g, g, idx)

    def retraction(self) -> VertexMap:
        """The fold as a map onto its image (the graph minus ``removed``)."""
        image = remove_vertex(self.graph, self.removed)
        return VertexMap(self.graph, image,
                         [self.into if v == self.removed else v for v in self.graph.vertices])

    def __repr__(self) -> str:
        return f"Fold({vertex_label(self.removed)} -> {vertex_label(self.into)})"


def find_folds(g: Graph) -> list[Fold]:
    """Every ordered pair (w, v), w != v, with N(w) ⊆ N(v), ordered by (w, v)."""
    masks = g.masks
    verts = g.vertices
    out = []
    for w, mw in enumerate(masks):
        for v, mv in enumerate(masks):
            if v != w and mw & ~mv == 0:
                out.append(Fold(g, verts[w], verts[v]))
    return out


def is_stiff(g: Graph) -> bool:
    masks = g.masks
    n = len(masks)
    for w in range(n):
        mw = masks[w]
        for v in range(n):
            if v != w and mw & ~masks[v] == 0:
                return False
    return True


def is_fold(f: VertexMap) -> bool:
    """An endomorphism that moves exactly one vertex w to v with N(w) ⊆ N(v)."""
    if f.source != f.target:
        return False
    moved = [i for i, j in enumerate(f.indices) if i != j]
    if len(moved) != 1:
        return False
    w = moved[0]
    masks = f.source.masks
    return masks[w] & ~masks[f.indices[w]] == 0


def apply_fold(g: Graph, fold: Fold) -> Graph:
    if fold.graph != g or not fold.is_valid():
        raise InvalidFoldError(f"{fold!r} is not a fold of this graph")
    return remove_vertex(g, fold.removed)


@dataclass(frozen=True)
class PleatResult:
    """A stiff graph reached from ``original`` by ``fold_sequence``.

    ``embedding`` is the composite retraction original -> pleat and
    ``inclusion`` the subgraph inclusion pleat -> original.
    """

    original: Graph
    pleat: Graph
    fold_sequence: tuple[Fold, ...]
    embedding: VertexMap
    inclusion: VertexMap


def _choose_first(g: Graph, folds: list[Fold]) -> Fold:
    isolated = [f for f in folds if g.mask(g.index(f.removed)) == 0]
    return isolated[0] if isolated else folds[0]


def pleat(g: Graph, policy: str = "first", seed: int | str | None = None) -> PleatResult:
    """Fold until stiff.

    ``first`` removes isolated vertices first, then always takes the
    lowest-indexed fold.  ``random`` picks uniformly among all available folds
    with a ``random.Random(seed)`` stream.
    """
    if g.order == 0:
        raise EmptyGraphError("the empty graph has no pleat")
    if policy not in POLICIES:
        raise InvalidParameterError(f"unknown fold policy {policy!r}; expected one of {POLICIES}")
    rng = random.Random(seed)
    current = g
    where = list(g.vertices)  # current image of each original vertex
    sequence = []
    while True:
        folds = find_folds(current)
        if not folds:
            break
        fold = _choose_first(current, folds) if policy == "first" else rng.choice(folds)
        sequence.append(fold)
        where = [fold.into if x == fold.removed else x for x in where]
        current = remove_vertex(current, fold.removed)
    embedding = VertexMap(g, current, where)
    return PleatResult(g, current, tuple(sequence), embedding, inclusion_map(current, g))


@dataclass(frozen=True)
class HomotopyEquivalence:
    """Verdict of ``homotopy_equivalent``; when true, ``forward``/``backward``
    are mutually inverse homotopy equivalences."""

    equivalent: bool
    forward: VertexMap | None = None
    backward: VertexMap | None = None
    pleats: tuple[PleatResult, PleatResult] | None = None

    def __bool__(self) -> bool:
        return self.equivalent


def homotopy_equivalent(g: Graph, h: Graph) -> HomotopyEquivalence:
    """Compare pleats; on success build G -> pleat(G) -> pleat(H) -> H and back."""
    if g.order == 0 or h.order == 0:
        raise EmptyGraphError("homotopy equivalence is only decided for nonempty graphs")
    pg, ph = pleat(g), pleat(h)
    iso = are_isomorphic(pg.pleat, ph.pleat)
    if iso is None:
        return HomotopyEquivalence(False, pleats=(pg, ph))
    forward = ph.inclusion @ iso.forward @ pg.embedding
    backward = pg.inclusion @ iso.backward @ ph.embedding
    return HomotopyEquivalence(True, forward, backward, (pg, ph))


def _require_no_isolated(*graphs: Graph) -> None:
    for g in graphs:
        iso = g.isolated_vertices()
        if iso:
            raise PreconditionError(f"graph has isolated vertex {vertex_label(iso[0])!r}")


def pleat_product_check(g: Graph, h: Graph) -> bool:
    """pleat(G x H) ≅ pleat(G) x pleat(H) for graphs without isolated vertices."""
    _require_no_isolated(g, h)
    left = pleat(product(g, h)).pleat
    right = product(pleat(g).pleat, pleat(h).pleat)
    return are_isomorphic(left, right) is not None


def lift_fold_to_product(fold: Fold, h: Graph) -> list[Fold]:
    """Folds of G x H removing {w} x V(H) one vertex at a time, each (w, y) into (v, y)."""
    if not fold.is_valid():
        raise InvalidFoldError(f"{fold!r} is not a fold of its graph")
    current = product(fold.graph, h)
    out = []
    for y in h.vertices:
        step = Fold(current, (fold.removed, y), (fold.into, y))
        out.append(step)
        current = remove_vertex(current, step.removed)
    return out


@dataclass(frozen=True)
class Duplication:
    """G with ``twin`` added beside the duplicated vertex, plus the maps relating the two graphs."""

    graph: Graph
    twin: Vertex
    iota1: VertexMap
    iota2: VertexMap
    rho: VertexMap


def duplicate_vertex(g: Graph, v: Vertex) -> Duplication:
    """Add v* with N(v*) = N(v) (and a loop at v* iff v is looped)."""
    i = g.index(v)
    twin = vertex_label(v) + "*"
    while twin in g:
        twin += "*"
    n = g.order
    masks = list(g.masks)
    nv = masks[i]
    new_mask = nv
    if nv >> i & 1:
        new_mask |= 1 << n
    for j in _bits(nv):
        if j != i:
            masks[j] |= 1 << n
    masks[i] = nv | ((nv >> i & 1) << n)
    masks.append(new_mask)
    big = Graph._from_masks(list(g.vertices) + [twin], masks)
    iota1 = VertexMap._raw(g, big, range(n))
    iota2_idx = list(range(n))
    iota2_idx[i] = n
    iota2 = VertexMap._raw(g, big, iota2_idx)
    rho = VertexMap._raw(big, g, list(range(n)) + [i])
    return Duplication(big, twin, iota1, iota2, rho)


def identity_is_isolated_in_hom_graph(g: Graph) -> bool:
    """No endomorphism other than the identity is exponential-adjacent to it."""
    ident = identity_map(g)
    return all(f == ident for f in adjacent_homs(ident))
