"""Exponential graphs H^G, hom-sets and the induced maps on exponentials.

The exponential is implicit by default: ``exp_edge`` decides adjacency of two
set maps without building anything.  ``realize_exponential`` materialises the
whole graph when it fits under a cap.
"""

from __future__ import annotations

import itertools
from collections.abc import Callable, Iterator, Sequence
from dataclasses import dataclass

from .errors import MismatchError, TooLargeError
from .graph import Graph, VertexMap, _bits, product, require_morphism

DEFAULT_CAP = 10**6


def _check_parallel(f: VertexMap, g: VertexMap) -> None:
    if f.source != g.source or f.target != g.target:
        raise MismatchError("maps do not share source and target graphs")


def exp_edge(f: VertexMap, g: VertexMap) -> bool:
    """Adjacency in H^G: every edge u-v of G has f(u) adjacent to g(v) in H."""
    _check_parallel(f, g)
    return _exp_edge_idx(f.source.masks, f.target.masks, f.indices, g.indices)


def _exp_edge_idx(gm: Sequence[int], hm: Sequence[int], fi: Sequence[int], gi: Sequence[int]) -> bool:
    for u, m in enumerate(gm):
        row = hm[fi[u]]
        for v in _bits(m):
            if not row >> gi[v] & 1:
                return False
    return True


def _looped_mask(h: Graph) -> int:
    return sum(1 << i for i, m in enumerate(h.masks) if m >> i & 1)


def _search_homs(g: Graph, h: Graph, domains: Sequence[int]) -> Iterator[tuple[int, ...]]:
    """Backtrack over morphisms g -> h with image of vertex i inside ``domains[i]``.

    Vertices are assigned in source order; after each assignment the domains of
    later neighbours are intersected with the chosen image's neighbourhood.
    Output is lexicographic in the assignment.
    """
    n = g.order
    gm, hm = g.masks, h.masks
    loops = _looped_mask(h)
    doms = [d & loops if gm[i] >> i & 1 else d for i, d in enumerate(domains)]
    if n == 0:
        yield ()
        return
    if any(d == 0 for d in doms):
        return
    later = [gm[i] >> (i + 1) << (i + 1) for i in range(n)]
    assign = [0] * n

    def rec(i: int, doms: list[int]) -> Iterator[tuple[int, ...]]:
        for c in _bits(doms[i]):
            assign[i] = c
            if i + 1 == n:
                yield tuple(assign)
                continue
            nd = doms
            ok = True
            if later[i]:
                nd = list(doms)
                row = hm[c]
                for k in _bits(later[i]):
                    nd[k] &= row
                    if not nd[k]:
                        ok = False
                        break
            if ok:
                yield from rec(i + 1, nd)

    yield from rec(0, doms)


def _hom_indices(g: Graph, h: Graph) -> list[tuple[int, ...]]:
    full = (1 << h.order) - 1
    return list(_search_homs(g, h, [full] * g.order))


def enumerate_homs(g: Graph, h: Graph) -> list[VertexMap]:
    """Every graph morphism g -> h, lexicographic in source vertex order."""
    return [VertexMap._raw(g, h, t) for t in _hom_indices(g, h)]


def _neighbor_domains(g: Graph, h: Graph, fi: Sequence[int]) -> list[int]:
    full = (1 << h.order) - 1
    hm = h.masks
    doms = []
    for v, m in enumerate(g.masks):
        d = full
        for u in _bits(m):
            d &= hm[fi[u]]
        doms.append(d)
    return doms


def _adjacent_hom_indices(g: Graph, h: Graph, fi: Sequence[int]) -> Iterator[tuple[int, ...]]:
    return _search_homs(g, h, _neighbor_domains(g, h, fi))


def adjacent_homs(f: VertexMap) -> list[VertexMap]:
    """Morphisms g with f adjacent to g in H^G (f itself included when f is a morphism)."""
    g, h = f.source, f.target
    return [VertexMap._raw(g, h, t) for t in _adjacent_hom_indices(g, h, f.indices)]


@dataclass(frozen=True)
class ExponentialGraph:
    """H^G with ``base`` H and ``exponent`` G; ``realized`` holds the explicit graph."""

    base: Graph
    exponent: Graph
    realized: Graph | None = None

    def adjacent(self, f: VertexMap, g: VertexMap) -> bool:
        return exp_edge(f, g)

    def is_looped(self, f: VertexMap) -> bool:
        return exp_edge(f, f)

    @property
    def vertex_count(self) -> int:
        return self.base.order ** self.exponent.order


def realize_exponential(g: Graph, h: Graph, cap: int = DEFAULT_CAP) -> ExponentialGraph:
    """Materialise H^G (here ``g`` is the exponent, ``h`` the base).

    Vertices are all set maps in lexicographic order of their assignments.
    """
    n, m = g.order, h.order
    count = m**n
    if count > cap:
        raise TooLargeError(count, cap)
    weights = [m ** (n - 1 - i) for i in range(n)]
    tuples = list(itertools.product(range(m), repeat=n))
    adj = []
    for fi in tuples:
        cands = [list(_bits(d)) for d in _neighbor_domains(g, h, fi)]
        mask = 0
        for gi in itertools.product(*cands):
            mask |= 1 << sum(c * w for c, w in zip(gi, weights))
        adj.append(mask)
    verts = [VertexMap._raw(g, h, t) for t in tuples]
    return ExponentialGraph(h, g, Graph._from_masks(verts, adj))


def hom_graph(g: Graph, h: Graph) -> Graph:
    """Induced subgraph of H^G on the morphisms; every vertex is looped."""
    idx = _hom_indices(g, h)
    pos = {t: k for k, t in enumerate(idx)}
    adj = []
    for t in idx:
        mask = 0
        for u in _adjacent_hom_indices(g, h, t):
            mask |= 1 << pos[u]
        adj.append(mask)
    return Graph._from_masks([VertexMap._raw(g, h, t) for t in idx], adj)


def postcompose(phi: VertexMap) -> Callable[[VertexMap], VertexMap]:
    """phi_*: H^G -> K^G, f -> phi ∘ f, for a morphism phi: H -> K."""
    require_morphism(phi, "postcompose argument")

    def induced(f: VertexMap) -> VertexMap:
        return phi @ f

    return induced


def precompose(psi: VertexMap) -> Callable[[VertexMap], VertexMap]:
    """psi^*: H^G -> H^K, f -> f ∘ psi, for a morphism psi: K -> G."""
    require_morphism(psi, "precompose argument")

    def induced(f: VertexMap) -> VertexMap:
        return f @ psi

    return induced


def curry(f: VertexMap, left: Graph, right: Graph, cap: int = DEFAULT_CAP) -> VertexMap:
    """Transpose f: left x right -> K into left -> K^right.

    The target is the realised exponential, so ``cap`` bounds |V(K)|^|V(right)|.
    """
    if f.source != product(left, right):
        raise MismatchError("source of f is not left x right")
    require_morphism(f, "curried map")
    k = f.target
    exp = realize_exponential(right, k, cap).realized
    m = right.order
    fi = f.indices
    images = [VertexMap._raw(right, k, fi[i * m:(i + 1) * m]) for i in range(left.order)]
    return VertexMap(left, exp, images)


def uncurry(F: VertexMap, left: Graph, right: Graph) -> VertexMap:
    """Inverse of ``curry``: F: left -> K^right becomes left x right -> K."""
    if F.source != left:
        raise MismatchError("source of F is not the left factor")
    require_morphism(F, "uncurried map")
    images = F.images
    if not images:
        raise MismatchError("cannot recover the base graph from a map out of the empty graph")
    k = images[0].target
    idx = [t for fv in images for t in fv.indices]
    return VertexMap._raw(product(left, right), k, idx)
