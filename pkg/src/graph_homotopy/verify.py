"""Exhaustive and seeded property suites over small graphs.

Each suite builds a deterministic list of instances, checks every instance
independently (optionally in worker processes) and aggregates the verdicts
into a ``VerificationReport`` sorted by instance key.
"""

from __future__ import annotations

import csv
import io as _stdio
import itertools
import json
import random
import time
from collections.abc import Callable, Iterable
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field

from .errors import InvalidParameterError
from .exponential import adjacent_homs, enumerate_homs, exp_edge, realize_exponential
from .graph import (
    Graph,
    VertexMap,
    coproduct,
    enumerate_graphs,
    are_isomorphic,
    identity_map,
    is_morphism,
    product,
)
from .groupoid import (
    Walk,
    _prune_seq,
    all_pruning_results,
    arrow,
    compose_arrows,
    identity_arrow,
    invert_arrow,
    walks_equivalent,
)
from .homotopy import (
    Homotopy,
    are_homotopic,
    check_interchange,
    is_spider_pair,
    seq_exp_edge,
    spider_decompose,
)
from .io import graph_to_doc, homotopy_to_doc, map_to_doc, walk_to_doc
from .pleat import Fold, duplicate_vertex, is_stiff, pleat, pleat_product_check
from .search import EQUIVALENT, UNKNOWN

DEFAULT_SEED = 0
PLEAT_ROUNDS = 10
INTERCHANGE_INSTANCES = 200
GROUPOID_TRIPLES = 5
PRUNE_MAX_LENGTH = 6


@dataclass
class Outcome:
    """Verdict for one instance: number of property checks run, failure
    records, and how many checks ended with an exhausted search budget."""

    checks: int = 0
    failures: list = field(default_factory=list)
    budget_exhausted: int = 0


@dataclass
class VerificationReport:
    suite: str
    instances: int
    checks: int
    failures: list
    budget_exhausted: int
    wall_time: float
    seed: int
    max_vertices: int

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_dict(self) -> dict:
        return asdict(self)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    def tsv_row(self) -> list:
        return [self.suite, self.instances, self.checks, len(self.failures),
                self.budget_exhausted, f"{self.wall_time:.3f}", self.seed, self.max_vertices]


TSV_HEADER = ["suite", "instances", "checks", "failures", "budget_exhausted", "wall_time_s",
              "seed", "max_vertices"]


def reports_to_tsv(reports: Iterable[VerificationReport]) -> str:
    buf = _stdio.StringIO()
    writer = csv.writer(buf, delimiter="\t", lineterminator="\n")
    writer.writerow(TSV_HEADER)
    for r in reports:
        writer.writerow(r.tsv_row())
    return buf.getvalue()


def graph_key(g: Graph) -> str:
    """Stable instance key: order plus sorted edge list."""
    edges = ",".join(f"{u}-{v}" for u, v in sorted(g.edges))
    return f"{g.order}:{edges}"


def _fail(key: str, reason: str, **data) -> dict:
    # ``key`` is replaced by the sortable instance key in run_suite
    return {"reason": reason, "detail": key, **data}


# pleat-confluence


def _pleat_confluence_instances(max_vertices: int, seed: int):
    for g in enumerate_graphs(max_vertices, with_loops=True):
        yield graph_key(g), (g, seed)


def _pleat_confluence_check(payload) -> Outcome:
    g, seed = payload
    key = graph_key(g)
    out = Outcome()
    ref = pleat(g)
    if not is_stiff(ref.pleat) or not is_morphism(ref.embedding):
        out.failures.append(_fail(key, "first-policy pleat is not a stiff retract", graph=graph_to_doc(g)))
    for k in range(PLEAT_ROUNDS):
        out.checks += 1
        res = pleat(g, "random", seed=f"{seed}:{key}:{k}")
        if not is_stiff(res.pleat) or are_isomorphic(res.pleat, ref.pleat) is None:
            out.failures.append(_fail(key, f"random fold order {k} gave a different pleat",
                                      graph=graph_to_doc(g), pleat=graph_to_doc(res.pleat),
                                      reference=graph_to_doc(ref.pleat)))
    return out


# pleat-product


def _no_isolated_graphs(max_vertices: int, with_loops: bool, up_to_iso: bool = False) -> list[Graph]:
    return [g for g in enumerate_graphs(max_vertices, with_loops, up_to_isomorphism=up_to_iso)
            if not g.isolated_vertices()]


def _pleat_product_instances(max_vertices: int, seed: int):
    graphs = _no_isolated_graphs(max_vertices, with_loops=False)
    for g, h in itertools.product(graphs, repeat=2):
        yield f"{graph_key(g)} x {graph_key(h)}", (g, h)


def _pleat_product_check(payload) -> Outcome:
    g, h = payload
    key = f"{graph_key(g)} x {graph_key(h)}"
    out = Outcome(checks=2)
    if not pleat_product_check(g, h):
        out.failures.append(_fail(key, "pleat of product differs from product of pleats",
                                  left=graph_to_doc(g), right=graph_to_doc(h)))
    if not is_stiff(product(pleat(g).pleat, pleat(h).pleat)):
        out.failures.append(_fail(key, "product of pleats is not stiff",
                                  left=graph_to_doc(g), right=graph_to_doc(h)))
    return out


# pleat-coproduct


def _pleat_coproduct_instances(max_vertices: int, seed: int):
    graphs = _no_isolated_graphs(max_vertices, with_loops=True, up_to_iso=True)
    for g, h in itertools.combinations_with_replacement(graphs, 2):
        yield f"{graph_key(g)} + {graph_key(h)}", (g, h)


def _pleat_coproduct_check(payload) -> Outcome:
    g, h = payload
    key = f"{graph_key(g)} + {graph_key(h)}"
    out = Outcome(checks=1)
    left = pleat(coproduct(g, h)).pleat
    right = coproduct(pleat(g).pleat, pleat(h).pleat)
    if are_isomorphic(left, right) is None:
        out.failures.append(_fail(key, "pleat of disjoint union differs from union of pleats",
                                  left=graph_to_doc(g), right=graph_to_doc(h)))
    return out


# interchange


def _random_homotopy(rng: random.Random, f: VertexMap, max_len: int) -> Homotopy:
    frames = [f]
    for _ in range(rng.randint(1, max_len)):
        frames.append(rng.choice(adjacent_homs(frames[-1])))
    return Homotopy(tuple(frames))


def _interchange_instances(max_vertices: int, seed: int):
    rng = random.Random(seed)
    graphs = list(enumerate_graphs(max_vertices, with_loops=True))
    homs: dict = {}

    def homs_of(a, b):
        if (a, b) not in homs:
            homs[a, b] = enumerate_homs(a, b)
        return homs[a, b]

    made = 0
    while made < INTERCHANGE_INSTANCES:
        g, h, k = (rng.choice(graphs) for _ in range(3))
        gh, hk = homs_of(g, h), homs_of(h, k)
        if not gh or not hk:
            continue
        alpha = _random_homotopy(rng, rng.choice(gh), 2)
        beta = _random_homotopy(rng, rng.choice(hk), 2)
        yield f"{made:04d}", (alpha, beta)
        made += 1


def _interchange_check(payload) -> Outcome:
    alpha, beta = payload
    key = f"{alpha.words} / {beta.words}"
    out = Outcome(checks=1)
    res = check_interchange(alpha, beta)
    data = {"alpha": homotopy_to_doc(alpha, True), "beta": homotopy_to_doc(beta, True)}
    if res.status == UNKNOWN:
        out.budget_exhausted += 1
    elif res.status != EQUIVALENT:
        out.failures.append(_fail(key, "composites not equivalent", **data))
    else:
        w = res.witness
        ok = all(seq_exp_edge(a.frames, b.frames) for a, b in zip(w, w[1:]))
        if not ok:
            out.failures.append(_fail(key, "witness contains an invalid move", **data))
    return out


# spider


def _graph_pairs(max_vertices: int):
    graphs = list(enumerate_graphs(max_vertices, with_loops=True))
    for g, h in itertools.product(graphs, repeat=2):
        yield f"{graph_key(g)} -> {graph_key(h)}", (g, h)


def _spider_check(payload) -> Outcome:
    g, h = payload
    key = f"{graph_key(g)} -> {graph_key(h)}"
    out = Outcome()
    for f in enumerate_homs(g, h):
        for f2 in adjacent_homs(f):
            if f2 == f:
                continue
            out.checks += 1
            chain = spider_decompose(f, f2)
            ok = chain[0] == f and chain[-1] == f2 and all(
                is_spider_pair(a, b) is not None for a, b in zip(chain, chain[1:])
            )
            if not ok:
                out.failures.append(_fail(key, "invalid spider chain",
                                          start=map_to_doc(f), end=map_to_doc(f2)))
    return out


# hom-loop


def _hom_loop_check(payload) -> Outcome:
    g, h = payload
    key = f"{graph_key(g)} -> {graph_key(h)}"
    out = Outcome()
    homs = set(enumerate_homs(g, h))
    for images in itertools.product(range(h.order), repeat=g.order):
        f = VertexMap._raw(g, h, images)
        out.checks += 1
        if is_morphism(f) != exp_edge(f, f) or is_morphism(f) != (f in homs):
            out.failures.append(_fail(key, "morphism test disagrees with exponential loop",
                                      map=map_to_doc(f)))
    ex = realize_exponential(g, h)
    out.checks += 1
    if set(ex.realized.looped_vertices()) != homs:
        out.failures.append(_fail(key, "looped vertices of the exponential are not the morphisms",
                                  source=graph_to_doc(g), target=graph_to_doc(h)))
    return out


# groupoid-axioms


def _random_walk(rng: random.Random, g: Graph, start, max_len: int) -> Walk:
    seq = [start]
    for _ in range(rng.randint(0, max_len)):
        nb = g.neighborhood(seq[-1])
        if not nb:
            break
        seq.append(rng.choice(sorted(nb, key=g.index)))
    return Walk(g, seq)


def _groupoid_instances(max_vertices: int, seed: int):
    for g in enumerate_graphs(max_vertices, with_loops=True, up_to_isomorphism=True):
        yield graph_key(g), (g, seed)


def _groupoid_check(payload) -> Outcome:
    g, seed = payload
    key = graph_key(g)
    rng = random.Random(f"{seed}:{key}")
    out = Outcome()

    def same(x, y, what):
        out.checks += 1
        res = walks_equivalent(x.representative, y.representative)
        if res.status == UNKNOWN:
            out.budget_exhausted += 1
        elif res.status != EQUIVALENT:
            out.failures.append(_fail(key, what, graph=graph_to_doc(g),
                                      left=walk_to_doc(x.representative),
                                      right=walk_to_doc(y.representative)))

    for _ in range(GROUPOID_TRIPLES):
        wa = _random_walk(rng, g, rng.choice(g.vertices), 4)
        wb = _random_walk(rng, g, wa.target, 4)
        wc = _random_walk(rng, g, wb.target, 4)
        a, b, c = arrow(wa), arrow(wb), arrow(wc)
        same(compose_arrows(compose_arrows(a, b), c), compose_arrows(a, compose_arrows(b, c)),
             "associativity")
        same(compose_arrows(identity_arrow(g, a.source), a), a, "left identity")
        same(compose_arrows(a, identity_arrow(g, a.target)), a, "right identity")
        same(compose_arrows(a, invert_arrow(a)), identity_arrow(g, a.source), "right inverse")
        same(compose_arrows(invert_arrow(a), a), identity_arrow(g, a.target), "left inverse")
        # concatenation respects the classes: an unpruned representative gives the same arrow
        same(arrow(wa * wb), compose_arrows(a, b), "concatenation on classes")
    return out


# prune-confluence


def _prune_confluence_instances(max_vertices: int, seed: int):
    for g in enumerate_graphs(max_vertices, with_loops=True):
        yield graph_key(g), g


def _prune_confluence_check(g: Graph) -> Outcome:
    key = graph_key(g)
    out = Outcome()
    masks = g.masks

    def rec(seq):
        out.checks += 1
        results = all_pruning_results(seq)
        if len(results) != 1 or _prune_seq(seq) not in results:
            out.failures.append(_fail(key, "pruning orders disagree", graph=graph_to_doc(g),
                                      walk=[g.vertices[i] for i in seq]))
        if len(seq) - 1 < PRUNE_MAX_LENGTH:
            m = masks[seq[-1]]
            while m:
                low = m & -m
                rec(seq + (low.bit_length() - 1,))
                m ^= low

    for i in range(g.order):
        rec((i,))
    return out


# duplicate-vertex


def _duplicate_check(g: Graph) -> Outcome:
    key = graph_key(g)
    out = Outcome()
    ident = identity_map(g)
    for v in g.vertices:
        out.checks += 1
        d = duplicate_vertex(g, v)
        fold = Fold(d.graph, d.twin, v)
        problems = []
        if not fold.is_valid() or fold.retraction().indices != d.rho.indices:
            problems.append("rho is not the fold of the twin onto v")
        if not all(is_morphism(m) for m in (d.iota1, d.iota2, d.rho)):
            problems.append("a structure map is not a morphism")
        if d.rho @ d.iota1 != ident or d.rho @ d.iota2 != ident:
            problems.append("rho does not retract both inclusions")
        if are_homotopic(d.iota1, d.iota2) is None:
            problems.append("the two inclusions are not homotopic")
        for p in problems:
            out.failures.append(_fail(key, p, graph=graph_to_doc(g), vertex=v))
    return out


@dataclass(frozen=True)
class Suite:
    name: str
    instances: Callable
    check: Callable
    default_max_vertices: int


def _plain_graphs(max_vertices: int, seed: int):
    for g in enumerate_graphs(max_vertices, with_loops=True):
        yield graph_key(g), g


def _graph_pair_instances(max_vertices: int, seed: int):
    return _graph_pairs(max_vertices)


SUITES: dict[str, Suite] = {
    s.name: s
    for s in (
        Suite("pleat-confluence", _pleat_confluence_instances, _pleat_confluence_check, 4),
        Suite("pleat-product", _pleat_product_instances, _pleat_product_check, 4),
        Suite("pleat-coproduct", _pleat_coproduct_instances, _pleat_coproduct_check, 3),
        Suite("interchange", _interchange_instances, _interchange_check, 3),
        Suite("spider", _graph_pair_instances, _spider_check, 3),
        Suite("hom-loop", _graph_pair_instances, _hom_loop_check, 3),
        Suite("groupoid-axioms", _groupoid_instances, _groupoid_check, 4),
        Suite("prune-confluence", _prune_confluence_instances, _prune_confluence_check, 4),
        Suite("duplicate-vertex", _plain_graphs, _duplicate_check, 4),
    )
}


def run_suite(name: str, max_vertices: int | None = None, seed: int = DEFAULT_SEED,
              workers: int = 1) -> VerificationReport:
    """Run one suite; ``max_vertices`` defaults to the suite's own bound."""
    if name not in SUITES:
        raise InvalidParameterError(f"unknown suite {name!r}; expected one of {sorted(SUITES)}")
    suite = SUITES[name]
    mv = suite.default_max_vertices if max_vertices is None else max_vertices
    if mv < 1:
        raise InvalidParameterError("max_vertices must be at least 1")
    t0 = time.perf_counter()
    items = list(suite.instances(mv, seed))
    keys = [k for k, _ in items]
    payloads = [p for _, p in items]
    if workers > 1 and len(payloads) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            outcomes = list(pool.map(suite.check, payloads, chunksize=max(1, len(payloads) // (8 * workers))))
    else:
        outcomes = [suite.check(p) for p in payloads]
    failures = []
    for key, o in sorted(zip(keys, outcomes), key=lambda t: t[0]):
        for f in o.failures:
            failures.append({**f, "instance": key})
    return VerificationReport(
        suite=name,
        instances=len(items),
        checks=sum(o.checks for o in outcomes),
        failures=failures,
        budget_exhausted=sum(o.budget_exhausted for o in outcomes),
        wall_time=time.perf_counter() - t0,
        seed=seed,
        max_vertices=mv,
    )


def run_all(max_vertices: int | None = None, seed: int = DEFAULT_SEED,
            workers: int = 1) -> list[VerificationReport]:
    return [run_suite(name, max_vertices, seed, workers) for name in SUITES]
