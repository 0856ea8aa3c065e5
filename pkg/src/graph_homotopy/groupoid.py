"""Walks, pruning, and the fundamental groupoid of a graph.

An arrow of the groupoid is a class of walks with fixed endpoints, generated
by three moves: pruning a backtrack ``v w v -> v``, the end extension
``(.. x y) -> (.. x y x y)``, and spider moves that swap one interior vertex.
Arrows are stored by their fully pruned walk; deciding whether two pruned
walks name the same arrow needs the bounded search in ``walks_equivalent``.
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass
from functools import lru_cache

from .errors import MismatchError, NotMorphismError, PreconditionError, UnknownVertexError
from .graph import Graph, Vertex, VertexMap, _bits, is_morphism, path_graph, vertex_label
from .homotopy import are_homotopic, spider_decompose
from .search import EQUIVALENT, INEQUIVALENT, UNKNOWN, CancelToken, Equivalence, bfs_path

DEFAULT_PAD_BUDGET = 4
DEFAULT_MAX_STATES = 10**7


@dataclass(frozen=True)
class Walk:
    graph: Graph
    vertices: tuple

    def __post_init__(self):
        vs = tuple(self.vertices)
        object.__setattr__(self, "vertices", vs)
        if not vs:
            raise PreconditionError("a walk needs at least one vertex")
        g = self.graph
        for v in vs:
            if v not in g:
                raise UnknownVertexError(v, "walk")
        for k in range(len(vs) - 1):
            if not g.adjacent(vs[k], vs[k + 1]):
                raise PreconditionError(
                    f"{vertex_label(vs[k])} and {vertex_label(vs[k + 1])} are not adjacent (step {k})"
                )

    @classmethod
    def _raw(cls, graph: Graph, idx: Sequence[int]) -> Walk:
        w = cls.__new__(cls)
        object.__setattr__(w, "graph", graph)
        object.__setattr__(w, "vertices", tuple(graph.vertices[i] for i in idx))
        return w

    @property
    def indices(self) -> tuple[int, ...]:
        return tuple(self.graph.index(v) for v in self.vertices)

    @property
    def length(self) -> int:
        return len(self.vertices) - 1

    @property
    def source(self) -> Vertex:
        return self.vertices[0]

    @property
    def target(self) -> Vertex:
        return self.vertices[-1]

    def is_looped(self) -> bool:
        return all(self.graph.is_looped(v) for v in self.vertices)

    def reversed(self) -> Walk:
        return Walk._raw(self.graph, self.indices[::-1])

    def __mul__(self, other: Walk) -> Walk:
        return concat_walks(self, other)

    @property
    def word(self) -> str:
        labels = [vertex_label(v) for v in self.vertices]
        if all(len(s) == 1 for s in labels):
            return "".join(labels)
        return " ".join(labels)

    def __repr__(self) -> str:
        return f"Walk({self.word!r})"


def concat_walks(a: Walk, b: Walk) -> Walk:
    if a.graph != b.graph:
        raise MismatchError("walks live in different graphs")
    if a.target != b.source:
        raise MismatchError(f"cannot concatenate: walk ends at {a.target!r}, next starts at {b.source!r}")
    return Walk._raw(a.graph, a.indices + b.indices[1:])


# pruning


def _prunable_at(seq: Sequence, i: int) -> bool:
    return 0 <= i and i + 2 < len(seq) and seq[i] == seq[i + 2]


def prune_once(w: Walk, i: int) -> Walk:
    """Delete positions i and i + 1 of a walk with v_i = v_{i+2}."""
    seq = w.indices
    if not _prunable_at(seq, i):
        raise PreconditionError(f"walk {w.word} is not prunable at index {i}")
    return Walk._raw(w.graph, seq[:i] + seq[i + 2:])


def _prune_trace(seq: tuple) -> list[tuple]:
    """Successive prunes at the lowest prunable index; first entry is ``seq``."""
    out = [seq]
    i = 0
    while i + 2 < len(seq):
        if seq[i] == seq[i + 2]:
            seq = seq[:i] + seq[i + 2:]
            out.append(seq)
            i = max(0, i - 2)
        else:
            i += 1
    return out


def _prune_seq(seq: tuple) -> tuple:
    return _prune_trace(seq)[-1]


def prune_fully(w: Walk) -> Walk:
    """The unique non-prunable walk reached by repeated pruning."""
    return Walk._raw(w.graph, _prune_seq(w.indices))


def is_prunable(w: Walk) -> bool:
    seq = w.vertices
    return any(seq[i] == seq[i + 2] for i in range(len(seq) - 2))


@lru_cache(maxsize=None)
def all_pruning_results(seq: tuple) -> frozenset:
    """Fully pruned results over every possible order of prunes."""
    spots = [i for i in range(len(seq) - 2) if seq[i] == seq[i + 2]]
    if not spots:
        return frozenset([seq])
    out: set = set()
    for i in spots:
        out |= all_pruning_results(seq[:i] + seq[i + 2:])
    return frozenset(out)


def delta_extend(w: Walk) -> Walk:
    """(v_0 .. v_{n-1} v_n) -> (v_0 .. v_{n-1} v_n v_{n-1} v_n)."""
    if w.length < 1:
        raise PreconditionError("a constant walk has no end extension")
    seq = w.indices
    return Walk._raw(w.graph, seq + seq[-2:])


def delta_map(n: int) -> VertexMap:
    """The map P_{n+2} -> P_n fixing 0..n and sending n+1 -> n-1, n+2 -> n."""
    if n < 1:
        raise PreconditionError("delta_map needs n >= 1")
    big, small = path_graph(n + 2), path_graph(n)
    return VertexMap._raw(big, small, list(range(n + 1)) + [n - 1, n])


# equivalence of walks


@dataclass(frozen=True)
class WalkStep:
    """One move in a witness chain; ``kind`` says how ``walk`` follows the previous entry."""

    kind: str
    walk: Walk


_INVERSE = {"prune": "unprune", "extend": "retract", "spider": "spider", "unprune": "prune"}


def _pad_seq(graph: Graph, seq: tuple) -> tuple[str, tuple]:
    if len(seq) >= 2:
        return "extend", seq + seq[-2:]
    v = seq[0]
    nb = graph.mask(v)
    if not nb:
        raise PreconditionError("cannot pad a constant walk at an isolated vertex")
    x = (nb & -nb).bit_length() - 1
    return "unprune", (v, x, v)


def _spider_neighbors(masks: Sequence[int]):
    def neighbors(seq: tuple):
        for i in range(1, len(seq) - 1):
            cand = masks[seq[i - 1]] & masks[seq[i + 1]] & ~(1 << seq[i])
            for c in _bits(cand):
                yield seq[:i] + (c,) + seq[i + 1:]

    return neighbors


def walks_equivalent(
    a: Walk,
    b: Walk,
    pad_budget: int = DEFAULT_PAD_BUDGET,
    *,
    max_states: int = DEFAULT_MAX_STATES,
    cancel: CancelToken | None = None,
) -> Equivalence:
    """Decide whether two walks with the same endpoints give the same arrow.

    Both walks are pruned; different length parity is a certified negative.
    Otherwise the shorter is extended to the common length and the space of
    equal-length walks with fixed ends is searched through spider moves; on
    failure both are extended again, up to ``pad_budget`` times.  The witness
    is a chain of ``WalkStep`` moves from ``a`` to ``b``.
    """
    if a.graph != b.graph:
        raise MismatchError("walks live in different graphs")
    if a.source != b.source or a.target != b.target:
        raise MismatchError("walks do not share both endpoints")
    g = a.graph
    trace_a = _prune_trace(a.indices)
    trace_b = _prune_trace(b.indices)
    pa, pb = trace_a[-1], trace_b[-1]
    if (len(pa) - len(pb)) % 2:
        return Equivalence(INEQUIVALENT, "parity", (), 0, 0,
                           {"lengths": (len(pa) - 1, len(pb) - 1)})
    left = [("start", trace_a[0])] + [("prune", s) for s in trace_a[1:]]
    right = [("start", trace_b[0])] + [("prune", s) for s in trace_b[1:]]
    while len(left[-1][1]) < len(right[-1][1]):
        left.append(_pad_seq(g, left[-1][1]))
    while len(right[-1][1]) < len(left[-1][1]):
        right.append(_pad_seq(g, right[-1][1]))

    neighbors = _spider_neighbors(g.masks)
    explored = 0
    capped = False
    for extra in range(pad_budget + 1):
        if extra:
            left.append(_pad_seq(g, left[-1][1]))
            right.append(_pad_seq(g, right[-1][1]))
        out = bfs_path(left[-1][1], right[-1][1], neighbors, max_states=max_states, cancel=cancel)
        explored += out.visited
        if out.path is not None:
            chain = left + [("spider", s) for s in out.path[1:]]
            for k in range(len(right) - 1, 0, -1):
                chain.append((_INVERSE[right[k][0]], right[k - 1][1]))
            steps = tuple(WalkStep(kind, Walk._raw(g, s)) for kind, s in chain)
            return Equivalence(EQUIVALENT, "connected", steps, explored, extra)
        if out.budget_hit:
            capped = True
            break
    reason = "state budget exhausted" if capped else f"not connected within pad budget {pad_budget}"
    return Equivalence(UNKNOWN, reason, (), explored, pad_budget,
                       {"pad_budget": pad_budget, "max_states": max_states})


def check_witness(steps: Sequence[WalkStep]) -> bool:
    """Each step is the declared elementary move applied to the previous walk."""
    if not steps or steps[0].kind != "start":
        return False
    for step in steps:
        masks = step.walk.graph.masks
        seq = step.walk.indices
        if any(not masks[a] >> b & 1 for a, b in zip(seq, seq[1:])):
            return False
    for prev, step in zip(steps, steps[1:]):
        x, y = prev.walk.indices, step.walk.indices
        if x[0] != y[0] or x[-1] != y[-1]:
            return False
        if step.kind == "prune":
            ok = any(x[:i] + x[i + 2:] == y for i in range(len(x) - 2) if x[i] == x[i + 2])
        elif step.kind == "unprune":
            ok = any(y[:i] + y[i + 2:] == x for i in range(len(y) - 2) if y[i] == y[i + 2])
        elif step.kind == "extend":
            ok = len(x) >= 2 and y == x + x[-2:]
        elif step.kind == "retract":
            ok = len(y) >= 2 and x == y + y[-2:]
        elif step.kind == "spider":
            diff = [i for i in range(len(x)) if len(x) == len(y) and x[i] != y[i]]
            ok = len(x) == len(y) and len(diff) == 1 and 0 < diff[0] < len(x) - 1
        else:
            ok = False
        if not ok:
            return False
    return True


# the groupoid


@dataclass(frozen=True)
class GroupoidArrow:
    """An arrow of the fundamental groupoid, held as its fully pruned walk."""

    graph: Graph
    representative: Walk

    @property
    def source(self) -> Vertex:
        return self.representative.source

    @property
    def target(self) -> Vertex:
        return self.representative.target

    def __repr__(self) -> str:
        return f"GroupoidArrow({self.representative.word!r})"


def arrow(w: Walk) -> GroupoidArrow:
    return GroupoidArrow(w.graph, prune_fully(w))


def identity_arrow(g: Graph, v: Vertex) -> GroupoidArrow:
    return GroupoidArrow(g, Walk._raw(g, (g.index(v),)))


def compose_arrows(a: GroupoidArrow, b: GroupoidArrow) -> GroupoidArrow:
    """``a`` then ``b`` (requires t(a) = s(b))."""
    return arrow(concat_walks(a.representative, b.representative))


def invert_arrow(a: GroupoidArrow) -> GroupoidArrow:
    return GroupoidArrow(a.graph, a.representative.reversed())


def arrows_equivalent(a: GroupoidArrow, b: GroupoidArrow, pad_budget: int = DEFAULT_PAD_BUDGET,
                      **kwargs) -> Equivalence:
    return walks_equivalent(a.representative, b.representative, pad_budget, **kwargs)


def induced_functor(phi: VertexMap):
    """phi_*: arrows of Pi(G) -> arrows of Pi(H), pointwise image then prune."""
    if not is_morphism(phi):
        raise NotMorphismError(f"{phi.word} is not a graph morphism")
    src, tgt = phi.source, phi.target
    img = phi.indices

    def apply(a: GroupoidArrow | Walk) -> GroupoidArrow:
        w = a.representative if isinstance(a, GroupoidArrow) else a
        if w.graph != src:
            raise MismatchError("arrow does not live in the source graph of the functor")
        return GroupoidArrow(tgt, Walk._raw(tgt, _prune_seq(tuple(img[i] for i in w.indices))))

    return apply


def _require_no_isolated(g: Graph) -> None:
    iso = g.isolated_vertices()
    if iso:
        raise PreconditionError(f"graph has isolated vertex {vertex_label(iso[0])!r}")


def _move_component(before: VertexMap, after: VertexMap, x: int, v: int) -> tuple[int, ...]:
    if v != x:
        return (before.indices[v],)
    gm = before.source.masks
    nb = gm[x]
    w = (nb & -nb).bit_length() - 1
    # w == x only when x is looped and is its own lowest neighbour
    return (before.indices[x], before.indices[w], after.indices[x])


def natural_iso_component(
    phi: VertexMap,
    psi: VertexMap,
    v: Vertex,
    *,
    homotopy=None,
) -> GroupoidArrow:
    """Component at ``v`` of the natural isomorphism phi_* => psi_*.

    The homotopy (found by search unless given) is split into spider moves;
    a move at x contributes (phi(x) phi(w) psi(x)) at x, with w the first
    neighbour of x, and an identity elsewhere.  Contributions are concatenated
    along the chain and pruned.
    """
    g, h = phi.source, phi.target
    _require_no_isolated(g)
    _require_no_isolated(h)
    vi = g.index(v)
    if homotopy is None:
        homotopy = are_homotopic(phi, psi)
        if homotopy is None:
            raise PreconditionError(f"{phi.word} and {psi.word} are not homotopic")
    elif homotopy.start != phi or homotopy.end != psi:
        raise MismatchError("homotopy does not run from phi to psi")
    walk: tuple = (phi.indices[vi],)
    frames = homotopy.frames
    for k in range(len(frames) - 1):
        chain = spider_decompose(frames[k], frames[k + 1])
        for before, after in zip(chain, chain[1:]):
            x = next(i for i, (p, q) in enumerate(zip(before.indices, after.indices)) if p != q)
            walk = walk + _move_component(before, after, x, vi)[1:]
    return GroupoidArrow(h, Walk._raw(h, _prune_seq(walk)))


def naturality_holds(phi: VertexMap, psi: VertexMap, a: GroupoidArrow, *, homotopy=None,
                     pad_budget: int = DEFAULT_PAD_BUDGET) -> Equivalence:
    """phi_*(a) * eta(t(a))  against  eta(s(a)) * psi_*(a)."""
    eta_s = natural_iso_component(phi, psi, a.source, homotopy=homotopy)
    eta_t = natural_iso_component(phi, psi, a.target, homotopy=homotopy)
    left = compose_arrows(induced_functor(phi)(a), eta_t)
    right = compose_arrows(eta_s, induced_functor(psi)(a))
    return arrows_equivalent(left, right, pad_budget)


# fundamental group probe


@dataclass(frozen=True)
class GroupProbe:
    """Classes of closed walks at ``base`` found up to ``max_len``.

    Walks are merged only when ``walks_equivalent`` connects them; distinct
    classes are distinct up to the search budget.  ``unresolved`` counts
    comparisons that ended as unknown rather than by parity.
    """

    graph: Graph
    base: Vertex
    max_len: int
    classes: tuple[GroupoidArrow, ...]
    saturated: bool
    walks_examined: int
    unresolved: int


def _closed_pruned_walks(g: Graph, base: int, max_len: int):
    masks = g.masks
    out = []

    def rec(seq):
        if seq[-1] == base:
            out.append(seq)
        if len(seq) - 1 == max_len:
            return
        for c in _bits(masks[seq[-1]]):
            if len(seq) >= 2 and seq[-2] == c:
                continue
            rec(seq + (c,))

    rec((base,))
    out.sort(key=lambda s: (len(s), s))
    return out


def fundamental_group_probe(
    g: Graph,
    base: Vertex,
    max_len: int,
    pad_budget: int = DEFAULT_PAD_BUDGET,
) -> GroupProbe:
    """Enumerate pruned closed walks at ``base`` up to ``max_len`` and group them."""
    b = g.index(base)
    reps: list[tuple] = []
    last_new = 0
    unresolved = 0
    walks = _closed_pruned_walks(g, b, max_len)
    for seq in walks:
        w = Walk._raw(g, seq)
        found = False
        for r in reps:
            if (len(r) - len(seq)) % 2:
                continue
            res = walks_equivalent(Walk._raw(g, r), w, pad_budget)
            if res:
                found = True
                break
            if res.status == UNKNOWN:
                unresolved += 1
        if not found:
            reps.append(seq)
            last_new = len(seq) - 1
    classes = tuple(GroupoidArrow(g, Walk._raw(g, r)) for r in reps)
    return GroupProbe(g, base, max_len, classes, last_new <= max_len - 2, len(walks), unresolved)
