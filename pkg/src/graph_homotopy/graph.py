"""Finite undirected graphs with loops, vertex maps, products and isomorphism.

Graphs are immutable.  Vertices are kept in insertion order and every search
in the package iterates in that order, so results are reproducible.  Internally
each vertex has an index and adjacency is a tuple of integer bitmasks, which
keeps the exhaustive verification loops cheap.
"""

from __future__ import annotations

import itertools
from collections import Counter
from collections.abc import Hashable, Iterable, Iterator, Mapping, Sequence
from dataclasses import dataclass

from .errors import (
    GraphError,
    InvalidMapError,
    InvalidParameterError,
    NotMorphismError,
    UnknownVertexError,
)

Vertex = Hashable

MAX_ENUMERATION_VERTICES = 6


def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def vertex_label(v: Vertex) -> str:
    """Render a vertex identifier as a string (tuples from products become ``(a,b)``)."""
    if isinstance(v, str):
        return v
    if isinstance(v, tuple):
        return "(" + ",".join(vertex_label(x) for x in v) + ")"
    if isinstance(v, VertexMap):
        return v.word
    return str(v)


class Graph:
    """A finite undirected graph; loops allowed, at most one edge per pair.

    >>> g = Graph(["a", "b"], [("a", "b"), ("a", "a")])
    >>> g.is_looped("a"), g.adjacent("b", "a")
    (True, True)
    """

    __slots__ = ("_vertices", "_index", "_adj", "_hash")

    def __init__(self, vertices: Iterable[Vertex] = (), edges: Iterable[Sequence[Vertex]] = ()):
        verts = tuple(vertices)
        index: dict[Vertex, int] = {}
        for i, v in enumerate(verts):
            if v in index:
                raise GraphError(f"duplicate vertex {v!r}")
            index[v] = i
        adj = [0] * len(verts)
        for edge in edges:
            u, v = edge
            try:
                iu, iv = index[u], index[v]
            except KeyError as exc:
                raise UnknownVertexError(exc.args[0], "edge list") from None
            adj[iu] |= 1 << iv
            adj[iv] |= 1 << iu
        self._vertices = verts
        self._index = index
        self._adj = tuple(adj)
        self._hash = None

    @classmethod
    def _from_masks(cls, vertices: Sequence[Vertex], adj: Sequence[int]) -> Graph:
        g = cls.__new__(cls)
        g._vertices = tuple(vertices)
        g._index = {v: i for i, v in enumerate(g._vertices)}
        g._adj = tuple(adj)
        g._hash = None
        return g

    # basic queries

    @property
    def vertices(self) -> tuple[Vertex, ...]:
        return self._vertices

    @property
    def order(self) -> int:
        return len(self._vertices)

    def __len__(self) -> int:
        return len(self._vertices)

    def __iter__(self) -> Iterator[Vertex]:
        return iter(self._vertices)

    def __contains__(self, v: object) -> bool:
        try:
            return v in self._index
        except TypeError:
            return False

    def index(self, v: Vertex) -> int:
        try:
            return self._index[v]
        except (KeyError, TypeError):
            raise UnknownVertexError(v) from None

    def mask(self, i: int) -> int:
        """Neighbourhood bitmask of the vertex with index ``i``."""
        return self._adj[i]

    @property
    def masks(self) -> tuple[int, ...]:
        return self._adj

    def adjacent(self, u: Vertex, v: Vertex) -> bool:
        return bool(self._adj[self.index(u)] >> self.index(v) & 1)

    def is_looped(self, v: Vertex) -> bool:
        i = self.index(v)
        return bool(self._adj[i] >> i & 1)

    def looped_vertices(self) -> list[Vertex]:
        return [v for i, v in enumerate(self._vertices) if self._adj[i] >> i & 1]

    def isolated_vertices(self) -> list[Vertex]:
        return [v for i, v in enumerate(self._vertices) if not self._adj[i]]

    @property
    def edges(self) -> list[tuple[Vertex, Vertex]]:
        """Edges as pairs ``(u, v)`` with ``u`` not after ``v`` in vertex order."""
        out = []
        for i, v in enumerate(self._vertices):
            for j in _bits(self._adj[i] >> i << i):
                out.append((v, self._vertices[j]))
        return out

    @property
    def size(self) -> int:
        return len(self.edges)

    def neighborhood(self, v: Vertex) -> frozenset:
        return frozenset(self._vertices[j] for j in _bits(self._adj[self.index(v)]))

    def __eq__(self, other: object) -> bool:
        if self is other:
            return True
        if not isinstance(other, Graph):
            return NotImplemented
        return self._vertices == other._vertices and self._adj == other._adj

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self._vertices, self._adj))
        return self._hash

    def __repr__(self) -> str:
        vs = ", ".join(vertex_label(v) for v in self._vertices)
        es = ", ".join(f"{vertex_label(u)}-{vertex_label(v)}" for u, v in self.edges)
        return f"Graph([{vs}], [{es}])"


def neighborhood(g: Graph, v: Vertex) -> frozenset:
    """N(v); a looped vertex is its own neighbour."""
    return g.neighborhood(v)


class VertexMap:
    """A total set map V(source) -> V(target); not necessarily a morphism.

    Construct from a mapping ``{v: image}`` or a sequence of images listed in
    source vertex order.  Equality is pointwise over the shared source order.
    """

    __slots__ = ("source", "target", "_images", "_hash")

    def __init__(self, source: Graph, target: Graph, assignment: Mapping | Sequence):
        if isinstance(assignment, Mapping):
            extra = [k for k in assignment if k not in source]
            if extra:
                raise InvalidMapError(f"assignment names undeclared source vertex {extra[0]!r}")
            missing = [v for v in source.vertices if v not in assignment]
            if missing:
                raise InvalidMapError(f"assignment is not total: no image for {missing[0]!r}")
            images = [assignment[v] for v in source.vertices]
        else:
            images = list(assignment)
            if len(images) != source.order:
                raise InvalidMapError(
                    f"expected {source.order} images, got {len(images)}"
                )
        idx = []
        for w in images:
            if w not in target:
                raise InvalidMapError(f"image {w!r} is not a vertex of the target")
            idx.append(target.index(w))
        self.source = source
        self.target = target
        self._images = tuple(idx)
        self._hash = None

    @classmethod
    def _raw(cls, source: Graph, target: Graph, idx: Sequence[int]) -> VertexMap:
        f = cls.__new__(cls)
        f.source = source
        f.target = target
        f._images = tuple(idx)
        f._hash = None
        return f

    @classmethod
    def from_word(cls, source: Graph, target: Graph, word: str) -> VertexMap:
        """Build from a string of single-character images, e.g. ``"babc"``."""
        return cls(source, target, list(word))

    @property
    def indices(self) -> tuple[int, ...]:
        return self._images

    @property
    def images(self) -> tuple[Vertex, ...]:
        tv = self.target.vertices
        return tuple(tv[i] for i in self._images)

    @property
    def word(self) -> str:
        labels = [vertex_label(v) for v in self.images]
        if all(len(s) == 1 for s in labels):
            return "".join(labels)
        return "[" + ",".join(labels) + "]"

    def __call__(self, v: Vertex) -> Vertex:
        return self.target.vertices[self._images[self.source.index(v)]]

    def as_dict(self) -> dict:
        return dict(zip(self.source.vertices, self.images))

    def __matmul__(self, other: VertexMap) -> VertexMap:
        """``self @ other`` is the composite ``self ∘ other``."""
        if other.target != self.source:
            raise GraphError("cannot compose: target of right map differs from source of left map")
        mine = self._images
        return VertexMap._raw(other.source, self.target, [mine[i] for i in other._images])

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, VertexMap):
            return NotImplemented
        return (
            self._images == other._images
            and self.source == other.source
            and self.target == other.target
        )

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self._images, self.source.order, self.target.order))
        return self._hash

    def __repr__(self) -> str:
        return f"VertexMap({self.word!r})"


def identity_map(g: Graph) -> VertexMap:
    return VertexMap._raw(g, g, range(g.order))


def inclusion_map(sub: Graph, g: Graph) -> VertexMap:
    return VertexMap._raw(sub, g, [g.index(v) for v in sub.vertices])


def is_morphism(f: VertexMap) -> bool:
    """True iff every edge of the source (loops included) lands on an edge."""
    src, tgt, img = f.source.masks, f.target.masks, f._images
    for i, m in enumerate(src):
        tm = tgt[img[i]]
        for j in _bits(m):
            if not tm >> img[j] & 1:
                return False
    return True


def require_morphism(f: VertexMap, what: str = "map") -> None:
    if not is_morphism(f):
        raise NotMorphismError(f"{what} {f.word} is not a graph morphism")


@dataclass(frozen=True)
class Isomorphism:
    forward: VertexMap
    backward: VertexMap


# constructions


def product(g: Graph, h: Graph) -> Graph:
    """Categorical product; vertices are pairs ``(v, w)`` in lexicographic order."""
    n, m = g.order, h.order
    verts = [(v, w) for v in g.vertices for w in h.vertices]
    adj = []
    for i in range(n):
        gi = g.mask(i)
        for j in range(m):
            hj = h.mask(j)
            mask = 0
            for a in _bits(gi):
                mask |= hj << (a * m)
            adj.append(mask)
    return Graph._from_masks(verts, adj)


def _tag(prefix: str, v: Vertex) -> str:
    return f"{prefix}:{vertex_label(v)}"


def coproduct(g: Graph, h: Graph) -> Graph:
    """Disjoint union; vertices are renamed ``L:<v>`` and ``R:<w>``."""
    n = g.order
    verts = [_tag("L", v) for v in g.vertices] + [_tag("R", w) for w in h.vertices]
    adj = list(g.masks) + [m << n for m in h.masks]
    return Graph._from_masks(verts, adj)


def coproduct_injections(g: Graph, h: Graph) -> tuple[Graph, VertexMap, VertexMap]:
    gh = coproduct(g, h)
    n = g.order
    left = VertexMap._raw(g, gh, range(n))
    right = VertexMap._raw(h, gh, range(n, n + h.order))
    return gh, left, right


def product_swap(g: Graph, h: Graph) -> VertexMap:
    """The isomorphism G x H -> H x G, (v, w) -> (w, v)."""
    gh, hg = product(g, h), product(h, g)
    return VertexMap(gh, hg, [(w, v) for v, w in gh.vertices])


def empty_graph() -> Graph:
    return Graph()


def path_graph(n: int) -> Graph:
    """P_n: n + 1 vertices ``"0".."n"`` with i adjacent to i + 1."""
    if n < 0:
        raise InvalidParameterError("path length must be non-negative")
    verts = [str(i) for i in range(n + 1)]
    return Graph(verts, [(verts[i], verts[i + 1]) for i in range(n)])


def looped_path_graph(n: int) -> Graph:
    """I_n: P_n with a loop at every vertex (the homotopy interval)."""
    p = path_graph(n)
    return Graph(p.vertices, p.edges + [(v, v) for v in p.vertices])


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise InvalidParameterError(f"cycle_graph needs n >= 3, got {n}")
    verts = [str(i) for i in range(n)]
    return Graph(verts, [(verts[i], verts[(i + 1) % n]) for i in range(n)])


def complete_graph(n: int) -> Graph:
    if n < 1:
        raise InvalidParameterError(f"complete_graph needs n >= 1, got {n}")
    verts = [str(i) for i in range(n)]
    return Graph(verts, itertools.combinations(verts, 2))


def induced_subgraph(g: Graph, vs: Iterable[Vertex]) -> Graph:
    """Restriction of ``g`` to ``vs``; vertex order is inherited from ``g``."""
    keep = set()
    for v in vs:
        keep.add(g.index(v))
    order = sorted(keep)
    pos = {old: new for new, old in enumerate(order)}
    adj = []
    for old in order:
        mask = 0
        for j in _bits(g.mask(old)):
            if j in pos:
                mask |= 1 << pos[j]
        adj.append(mask)
    return Graph._from_masks([g.vertices[i] for i in order], adj)


def remove_vertex(g: Graph, v: Vertex) -> Graph:
    i = g.index(v)
    return induced_subgraph(g, g.vertices[:i] + g.vertices[i + 1:])


# isomorphism


def _refined_colors(g: Graph, h: Graph) -> tuple[list[int], list[int]]:
    graphs = (g, h)
    colors = [
        [(gr.mask(i) >> i & 1, bin(gr.mask(i)).count("1")) for i in range(gr.order)]
        for gr in graphs
    ]
    palette: dict = {}
    cur = [[palette.setdefault(c, len(palette)) for c in cs] for cs in colors]
    classes = len(palette)
    while True:
        palette = {}
        nxt = []
        for gr, cs in zip(graphs, cur):
            nxt.append([
                palette.setdefault(
                    (cs[i], tuple(sorted(cs[j] for j in _bits(gr.mask(i))))), len(palette)
                )
                for i in range(gr.order)
            ])
        cur = nxt
        if len(palette) == classes:
            return cur[0], cur[1]
        classes = len(palette)


def are_isomorphic(g: Graph, h: Graph) -> Isomorphism | None:
    """Return a witness isomorphism, or ``None`` when the graphs differ.

    Colour refinement on (loop, degree) signatures prunes candidates; the
    remaining choices are resolved by backtracking in refinement order.
    """
    n = g.order
    if n != h.order or sorted(map(_popcount, g.masks)) != sorted(map(_popcount, h.masks)):
        return None
    if len(g.looped_vertices()) != len(h.looped_vertices()):
        return None
    cg, ch = _refined_colors(g, h)
    if Counter(cg) != Counter(ch):
        return None
    class_size = Counter(cg)
    order = sorted(range(n), key=lambda i: (class_size[cg[i]], i))
    by_color: dict[int, list[int]] = {}
    for j in range(n):
        by_color.setdefault(ch[j], []).append(j)
    gm, hm = g.masks, h.masks
    assign = [-1] * n
    used = 0

    def extend(k: int) -> bool:
        nonlocal used
        if k == n:
            return True
        i = order[k]
        for j in by_color[cg[i]]:
            if used >> j & 1:
                continue
            if (gm[i] >> i & 1) != (hm[j] >> j & 1):
                continue
            ok = True
            for kk in range(k):
                i2 = order[kk]
                if (gm[i] >> i2 & 1) != (hm[j] >> assign[i2] & 1):
                    ok = False
                    break
            if not ok:
                continue
            assign[i] = j
            used |= 1 << j
            if extend(k + 1):
                return True
            used &= ~(1 << j)
            assign[i] = -1
        return False

    if not extend(0):
        return None
    inverse = [0] * n
    for i, j in enumerate(assign):
        inverse[j] = i
    return Isomorphism(VertexMap._raw(g, h, assign), VertexMap._raw(h, g, inverse))


def _popcount(x: int) -> int:
    return bin(x).count("1")


def is_isomorphism(f: VertexMap) -> bool:
    """Bijective, and adjacency is preserved and reflected."""
    n = f.source.order
    if n != f.target.order or len(set(f.indices)) != n:
        return False
    img, sm, tm = f.indices, f.source.masks, f.target.masks
    return all(
        (sm[i] >> j & 1) == (tm[img[i]] >> img[j] & 1) for i in range(n) for j in range(n)
    )


def canonical_form(g: Graph) -> tuple:
    """Brute-force canonical key (minimum adjacency encoding over all relabelings).

    Exponential in the order; meant for verification-scale graphs only.
    """
    n = g.order
    best = None
    masks = g.masks
    for perm in itertools.permutations(range(n)):
        # perm[new] = old
        key = []
        for new_i in range(n):
            m = masks[perm[new_i]]
            row = 0
            for new_j in range(n):
                if m >> perm[new_j] & 1:
                    row |= 1 << new_j
            key.append(row)
        key = tuple(key)
        if best is None or key < best:
            best = key
    return (n, best)


# enumeration


def _slots(n: int, with_loops: bool) -> list[tuple[int, int]]:
    slots = list(itertools.combinations(range(n), 2))
    if with_loops:
        slots += [(i, i) for i in range(n)]
    return slots


def graphs_on(n: int, with_loops: bool = True) -> Iterator[Graph]:
    """All labelled graphs on vertices ``"0".."n-1"``, ordered by edge bitmask."""
    if n > MAX_ENUMERATION_VERTICES:
        raise InvalidParameterError(
            f"enumeration is capped at {MAX_ENUMERATION_VERTICES} vertices, got {n}"
        )
    verts = [str(i) for i in range(n)]
    slots = _slots(n, with_loops)
    for code in range(1 << len(slots)):
        adj = [0] * n
        for b in _bits(code):
            u, v = slots[b]
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        yield Graph._from_masks(verts, adj)


def enumerate_graphs(
    max_vertices: int,
    with_loops: bool = True,
    *,
    min_vertices: int = 1,
    up_to_isomorphism: bool = False,
) -> Iterator[Graph]:
    """Stream every labelled graph with ``min_vertices..max_vertices`` vertices.

    With ``up_to_isomorphism`` only the first graph of each isomorphism class
    (in enumeration order) is produced.
    """
    if max_vertices > MAX_ENUMERATION_VERTICES:
        raise InvalidParameterError(
            f"enumeration is capped at {MAX_ENUMERATION_VERTICES} vertices, got {max_vertices}"
        )
    for n in range(min_vertices, max_vertices + 1):
        seen = set()
        for g in graphs_on(n, with_loops):
            if up_to_isomorphism:
                key = canonical_form(g)
                if key in seen:
                    continue
                seen.add(key)
            yield g
