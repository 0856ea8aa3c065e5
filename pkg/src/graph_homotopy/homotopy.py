"""Homotopies between graph morphisms.

A homotopy from f to g is a looped walk in the hom-subgraph of H^G: a list of
morphisms (frames) with consecutive frames adjacent in the exponential.  All
searches stay inside the hom-set and use the implicit adjacency predicate.
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass

from .errors import MismatchError, NotMorphismError, PreconditionError
from .exponential import _adjacent_hom_indices, _exp_edge_idx, _hom_indices, exp_edge
from .graph import Graph, Vertex, VertexMap, _bits, is_morphism, looped_path_graph, product, require_morphism
from .search import EQUIVALENT, UNKNOWN, CancelToken, Equivalence, bfs_path

DEFAULT_PAD_BUDGET = 4
DEFAULT_MAX_STATES = 10**7


@dataclass(frozen=True)
class Homotopy:
    """A looped walk of morphisms ``frames[0] -> ... -> frames[-1]``."""

    frames: tuple[VertexMap, ...]

    def __post_init__(self):
        frames = tuple(self.frames)
        object.__setattr__(self, "frames", frames)
        if not frames:
            raise PreconditionError("a homotopy needs at least one frame")
        g, h = frames[0].source, frames[0].target
        for k, f in enumerate(frames):
            if f.source != g or f.target != h:
                raise MismatchError(f"frame {k} has a different source or target")
            if not is_morphism(f):
                raise NotMorphismError(f"frame {k} ({f.word}) is not a morphism")
        for k in range(len(frames) - 1):
            if not exp_edge(frames[k], frames[k + 1]):
                raise PreconditionError(f"frames {k} and {k + 1} are not adjacent in the exponential")

    @classmethod
    def constant(cls, f: VertexMap, length: int = 0) -> Homotopy:
        return cls((f,) * (length + 1))

    @property
    def length(self) -> int:
        return len(self.frames) - 1

    @property
    def start(self) -> VertexMap:
        return self.frames[0]

    @property
    def end(self) -> VertexMap:
        return self.frames[-1]

    @property
    def source(self) -> Graph:
        return self.frames[0].source

    @property
    def target(self) -> Graph:
        return self.frames[0].target

    @property
    def words(self) -> list[str]:
        return [f.word for f in self.frames]

    def postcompose(self, phi: VertexMap) -> Homotopy:
        """phi ∘ self (written ``phi alpha``)."""
        require_morphism(phi)
        return Homotopy(tuple(phi @ f for f in self.frames))

    def precompose(self, psi: VertexMap) -> Homotopy:
        """self ∘ psi (written ``alpha psi``)."""
        require_morphism(psi)
        return Homotopy(tuple(f @ psi for f in self.frames))

    def reversed(self) -> Homotopy:
        return Homotopy(self.frames[::-1])

    def padded(self, length: int) -> Homotopy:
        """Repeat the final frame until the homotopy has the given length."""
        if length < self.length:
            raise PreconditionError("cannot pad to a shorter length")
        return Homotopy(self.frames + (self.end,) * (length - self.length))

    def to_product_map(self) -> VertexMap:
        """The morphism G x I_n -> H, (v, k) -> frames[k](v)."""
        g, h = self.source, self.target
        interval = looped_path_graph(self.length)
        gi = product(g, interval)
        idx = [self.frames[k].indices[i] for i in range(g.order) for k in range(self.length + 1)]
        return VertexMap._raw(gi, h, idx)

    @classmethod
    def from_product_map(cls, lam: VertexMap, g: Graph, length: int) -> Homotopy:
        interval = looped_path_graph(length)
        if lam.source != product(g, interval):
            raise MismatchError("source is not G x I_n")
        require_morphism(lam, "homotopy")
        m = length + 1
        li = lam.indices
        frames = [
            VertexMap._raw(g, lam.target, [li[i * m + k] for i in range(g.order)])
            for k in range(m)
        ]
        return cls(tuple(frames))


@dataclass(frozen=True)
class SpiderMove:
    at: Vertex
    before: VertexMap
    after: VertexMap


def _check_pair(f: VertexMap, g: VertexMap) -> None:
    if f.source != g.source or f.target != g.target:
        raise MismatchError("maps do not share source and target graphs")
    require_morphism(f)
    require_morphism(g)


def are_homotopic(
    f: VertexMap,
    g: VertexMap,
    *,
    cancel: CancelToken | None = None,
) -> Homotopy | None:
    """Shortest homotopy from f to g, or ``None`` when they lie in different
    components of the hom-graph."""
    _check_pair(f, g)
    src, tgt = f.source, f.target
    out = bfs_path(
        f.indices,
        g.indices,
        lambda t: _adjacent_hom_indices(src, tgt, t),
        cancel=cancel,
    )
    if out.path is None:
        return None
    return Homotopy(tuple(VertexMap._raw(src, tgt, t) for t in out.path))


def homotopy_classes(g: Graph, h: Graph) -> list[list[VertexMap]]:
    """Connected components of the hom-graph, each in enumeration order."""
    idx = _hom_indices(g, h)
    seen: set = set()
    classes = []
    for t in idx:
        if t in seen:
            continue
        comp = {t}
        stack = [t]
        while stack:
            cur = stack.pop()
            for u in _adjacent_hom_indices(g, h, cur):
                if u not in comp:
                    comp.add(u)
                    stack.append(u)
        seen |= comp
        classes.append([VertexMap._raw(g, h, u) for u in idx if u in comp])
    return classes


def is_spider_pair(f: VertexMap, g: VertexMap) -> SpiderMove | None:
    """The spider move turning f into g, if they differ at exactly one vertex
    (and, at a looped vertex, the two images are adjacent)."""
    if f.source != g.source or f.target != g.target:
        return None
    if not (is_morphism(f) and is_morphism(g)):
        return None
    diff = [i for i, (a, b) in enumerate(zip(f.indices, g.indices)) if a != b]
    if len(diff) != 1:
        return None
    x = diff[0]
    gm, hm = f.source.masks, f.target.masks
    if gm[x] >> x & 1 and not hm[f.indices[x]] >> g.indices[x] & 1:
        return None
    return SpiderMove(f.source.vertices[x], f, g)


def spider_decompose(f: VertexMap, g: VertexMap) -> list[VertexMap]:
    """Chain of spider moves from f to an exponential-adjacent g.

    Frame k agrees with f on the first n - k vertices and with g on the rest,
    so vertices switch from last to first.  Repeated frames (where f and g
    already agree) are dropped.
    """
    _check_pair(f, g)
    if not exp_edge(f, g):
        raise PreconditionError(f"{f.word} and {g.word} are not adjacent in the exponential")
    n = f.source.order
    fi, gi = f.indices, g.indices
    chain = [f]
    for k in range(1, n + 1):
        cut = n - k
        step = VertexMap._raw(f.source, f.target, fi[:cut] + gi[cut:])
        if step != chain[-1]:
            chain.append(step)
    return chain


def concat_homotopies(a: Homotopy, b: Homotopy) -> Homotopy:
    if a.end != b.start:
        raise MismatchError(f"cannot concatenate: {a.end.word} != {b.start.word}")
    return Homotopy(a.frames + b.frames[1:])


def compose_homotopies(alpha: Homotopy, beta: Homotopy) -> Homotopy:
    """Horizontal composite of alpha: f ~ f' (G -> H) and beta: g ~ g' (H -> K).

    Returns ``g alpha * beta f'``, a homotopy from gf to g'f'.
    """
    if alpha.target != beta.source:
        raise MismatchError("target of alpha's maps is not the source of beta's maps")
    return concat_homotopies(alpha.postcompose(beta.start), beta.precompose(alpha.end))


def compose_homotopies_other_way(alpha: Homotopy, beta: Homotopy) -> Homotopy:
    """The alternative composite ``beta f * g' alpha``."""
    if alpha.target != beta.source:
        raise MismatchError("target of alpha's maps is not the source of beta's maps")
    return concat_homotopies(beta.precompose(alpha.start), alpha.postcompose(beta.end))


def homotopies_equivalent(
    a: Homotopy,
    b: Homotopy,
    pad_budget: int = DEFAULT_PAD_BUDGET,
    *,
    max_states: int = DEFAULT_MAX_STATES,
    cancel: CancelToken | None = None,
) -> Equivalence:
    """Decide whether two homotopies with the same ends are homotopic rel endpoints.

    Both are padded with stationary final frames to a common length and the
    space of frame sequences with fixed ends is searched; each step replaces
    one interior frame by a morphism adjacent to it and to both neighbours.
    When nothing connects them, both are padded once more, up to
    ``pad_budget`` times.  Failure is reported as ``unknown``, never as a
    definite negative.
    """
    if a.source != b.source or a.target != b.target:
        raise MismatchError("homotopies live in different hom-sets")
    if a.start != b.start or a.end != b.end:
        raise MismatchError("homotopies do not share endpoint morphisms")
    if a.frames == b.frames:
        return Equivalence(EQUIVALENT, "identical", (a,), 1)
    g, h = a.source, a.target
    homs = _hom_indices(g, h)
    pos = {t: k for k, t in enumerate(homs)}
    adj = []
    for t in homs:
        m = 0
        for u in _adjacent_hom_indices(g, h, t):
            m |= 1 << pos[u]
        adj.append(m)

    def neighbors(seq):
        for i in range(1, len(seq) - 1):
            cand = adj[seq[i - 1]] & adj[seq[i]] & adj[seq[i + 1]] & ~(1 << seq[i])
            for c in _bits(cand):
                yield seq[:i] + (c,) + seq[i + 1:]

    base = max(a.length, b.length)
    explored = 0
    capped = False
    for extra in range(pad_budget + 1):
        length = base + extra
        sa = tuple(pos[f.indices] for f in a.padded(length).frames)
        sb = tuple(pos[f.indices] for f in b.padded(length).frames)
        out = bfs_path(sa, sb, neighbors, max_states=max_states, cancel=cancel)
        explored += out.visited
        if out.path is not None:
            witness = tuple(
                Homotopy(tuple(VertexMap._raw(g, h, homs[k]) for k in seq)) for seq in out.path
            )
            return Equivalence(EQUIVALENT, "connected", witness, explored, extra)
        if out.budget_hit:
            capped = True
            break
    reason = "state budget exhausted" if capped else f"not connected within pad budget {pad_budget}"
    return Equivalence(UNKNOWN, reason, (), explored, pad_budget,
                       {"pad_budget": pad_budget, "max_states": max_states})


def check_interchange(alpha: Homotopy, beta: Homotopy, pad_budget: int = DEFAULT_PAD_BUDGET,
                      **kwargs) -> Equivalence:
    """``g alpha * beta f'`` against ``beta f * g' alpha``."""
    return homotopies_equivalent(
        compose_homotopies(alpha, beta), compose_homotopies_other_way(alpha, beta), pad_budget, **kwargs
    )


def seq_exp_edge(a: Sequence[VertexMap], b: Sequence[VertexMap]) -> bool:
    """Adjacency of two equal-length frame sequences in (H^G)^(I_n):
    frames i and j must be exponential-adjacent whenever |i - j| <= 1."""
    if len(a) != len(b):
        return False
    gm, hm = a[0].source.masks, a[0].target.masks
    n = len(a)
    for i in range(n):
        for j in (i - 1, i, i + 1):
            if 0 <= j < n and not _exp_edge_idx(gm, hm, a[i].indices, b[j].indices):
                return False
    return True
