"""Gaifman graphs of the encodings, the explicit decomposition transfers from
the width-preservation proofs, the degree bound on the degree encoding, and a
tiny-scale topological-minor checker.

Each transfer construction rebuilds, bag by bag, the decomposition used in
the corresponding preservation proof, validates it against the actual Gaifman
graph, and checks the proof-level per-bag size bound.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, permutations
from typing import Callable, Dict, List, Optional, Tuple

from .decomp import (
    PathDecomposition,
    TimDecomposition,
    TreeDecomposition,
    _chain_link,
    validate_path_decomposition,
    validate_tim,
    validate_tree_decomposition,
    vim_decomposition,
)
from .encodings import (
    RelationalStructure,
    bag_id,
    edge_id,
    encode_degree,
    encode_lifetime,
    encode_tim,
    encode_vim,
    time_id,
    vertex_id,
)
from .errors import InvalidInputError, TooLargeError, ValidationFailureError
from .tgraph import StaticGraph, TemporalGraph


def gaifman_graph(rs: RelationalStructure) -> StaticGraph:
    """Vertices are the universe; edges join distinct elements co-occurring in
    a tuple of any relation of arity >= 2."""
    edges = set()
    for rel in rs.relations.values():
        if rel.arity < 2:
            continue
        for tup in rel.tuples:
            for a, b in combinations(sorted(set(tup)), 2):
                edges.add((a, b))
    return StaticGraph(frozenset(rs.universe()), frozenset(edges), directed=False)


@dataclass(frozen=True)
class BagBound:
    node: str
    size: int
    bound: int

    @property
    def holds(self) -> bool:
        return self.size <= self.bound


@dataclass(frozen=True)
class TransferReport:
    decomposition: TreeDecomposition
    bounds: Tuple[BagBound, ...]
    valid: bool

    @property
    def all_bounds_hold(self) -> bool:
        return all(b.holds for b in self.bounds)

    def width(self) -> int:
        return self.decomposition.width()


def _finish(gf: StaticGraph, td: TreeDecomposition, bounds, path_shape=False) -> TransferReport:
    if path_shape:
        verdict = validate_path_decomposition(gf.vertices, gf.edges, td)
    else:
        verdict = validate_tree_decomposition(gf.vertices, gf.edges, td)
    if not verdict:
        raise ValidationFailureError(f"transfer construction failed validation: {verdict}")
    return TransferReport(td, tuple(bounds), bool(verdict))


def transfer_td_lifetime(g: TemporalGraph, td_footprint: TreeDecomposition) -> TransferReport:
    """Footprint bags extended with their internal temporal edges and all time
    nodes; per-bag bound lifetime + lifetime*|B|^2 + |B|."""
    fp = g.footprint()
    if not validate_tree_decomposition(fp.vertices, fp.edges, td_footprint):
        raise InvalidInputError("footprint decomposition invalid")
    lam = g.lifetime()
    times = [time_id(t) for t in range(1, lam + 1)]
    bags = {}
    bounds = []
    for node in td_footprint.nodes:
        base = td_footprint.bags[node]
        inner = [edge_id(e) for e in g.edges if e.u in base and e.v in base]
        bag = frozenset(vertex_id(v) for v in base) | frozenset(inner) | frozenset(times)
        bags[node] = bag
        bounds.append(BagBound(str(node), len(bag), lam + lam * len(base) ** 2 + len(base)))
    td = TreeDecomposition(td_footprint.nodes, bags, td_footprint.edges)
    return _finish(gaifman_graph(encode_lifetime(g)), td, bounds)


def transfer_td_degree(g: TemporalGraph, td_footprint: TreeDecomposition) -> TransferReport:
    """Footprint bags extended with every temporal edge incident to them;
    per-bag bound (max temporal degree + 1) * |B|."""
    fp = g.footprint()
    if not validate_tree_decomposition(fp.vertices, fp.edges, td_footprint):
        raise InvalidInputError("footprint decomposition invalid")
    dt = g.max_temporal_degree()
    bags = {}
    bounds = []
    for node in td_footprint.nodes:
        base = td_footprint.bags[node]
        inc = [edge_id(e) for e in g.edges if e.u in base or e.v in base]
        bag = frozenset(vertex_id(v) for v in base) | frozenset(inc)
        bags[node] = bag
        bounds.append(BagBound(str(node), len(bag), (dt + 1) * len(base)))
    td = TreeDecomposition(td_footprint.nodes, bags, td_footprint.edges)
    return _finish(gaifman_graph(encode_degree(g)), td, bounds)


def transfer_pd_vim(g: TemporalGraph) -> TransferReport:
    """One bag per time step: alive vertices, the step's temporal edges, the
    step's bag node and its successor; per-bag bound 2 + |bag| + |bag|^2.

    Universe elements that never occur in a relation (possible only when the
    graph is edgeless at every time) are appended as singleton tail bags.
    """
    lam = g.lifetime()
    vim = vim_decomposition(g)
    nodes: List[str] = [f"B{t}" for t in range(1, lam + 1)]
    bags = {}
    bounds = []
    for t in range(1, lam + 1):
        gamma = vim.bag(t)
        bag = {vertex_id(v) for v in gamma}
        bag |= {edge_id(e) for e in g.edges if e.t == t}
        bag.add(bag_id(t))
        if t < lam:
            bag.add(bag_id(t + 1))
        bags[f"B{t}"] = frozenset(bag)
        bounds.append(BagBound(f"B{t}", len(bag), 2 + len(gamma) + len(gamma) ** 2))
    rs = encode_vim(g)
    gf = gaifman_graph(rs)
    covered = set().union(*bags.values()) if bags else set()
    for k, x in enumerate(sorted(set(rs.universe()) - covered)):
        nodes.append(f"iso{k}")
        bags[f"iso{k}"] = frozenset([x])
    if not nodes:
        nodes, bags = ["empty"], {"empty": frozenset()}
    edges = frozenset(tuple(sorted((nodes[i], nodes[i + 1]))) for i in range(len(nodes) - 1))
    pd = PathDecomposition(tuple(nodes), bags, edges)
    return _finish(gf, pd, bounds, path_shape=True)


def transfer_td_tim(g: TemporalGraph, d: TimDecomposition) -> TransferReport:
    """TIM bags extended with their internal same-time temporal edges, their
    own bag node, and all earlier-time neighbours; bound 2 + |bag| + |bag|^2.

    A node may meet several earlier bags; they are disjoint at that time, so
    the earlier-neighbour count is at most |bag| and the quadratic slack in
    the stated bound absorbs it.
    """
    verdict = validate_tim(g, d)
    if not verdict:
        raise InvalidInputError(f"invalid TIM decomposition: {verdict}")
    rs = encode_tim(g, d)
    gf = gaifman_graph(rs)
    nodes = list(d.nodes)
    bags = {}
    bounds = []
    for i in d.nodes:
        gamma = d.bags[i]
        bag = {vertex_id(v) for v in gamma}
        bag |= {
            edge_id(e)
            for e in g.edges
            if e.t == d.tau[i] and e.u in gamma and e.v in gamma
        }
        bag.add(bag_id(i))
        for j in d.parents(i):
            bag.add(bag_id(j))
        bags[i] = frozenset(bag)
        bounds.append(BagBound(str(i), len(bag), 2 + len(gamma) + len(gamma) ** 2))
    covered = set().union(*bags.values()) if bags else set()
    for k, x in enumerate(sorted(set(rs.universe()) - covered)):
        nodes.append(f"iso{k}")
        bags[f"iso{k}"] = frozenset([x])
    if not nodes:
        nodes, bags = ["empty"], {"empty": frozenset()}
    edges = _chain_link(tuple(nodes), {tuple(sorted(e)) for e in d.tree_edges})
    td = TreeDecomposition(tuple(nodes), bags, frozenset(edges))
    return _finish(gf, td, bounds)


@dataclass(frozen=True)
class DegreeBoundReport:
    max_gaifman_degree: int
    bound: int

    @property
    def holds(self) -> bool:
        return self.max_gaifman_degree <= self.bound


def degree_bound_check(g: TemporalGraph) -> DegreeBoundReport:
    """Max degree of the degree-encoding Gaifman graph against 2 * max temporal degree."""
    gf = gaifman_graph(encode_degree(g))
    return DegreeBoundReport(gf.max_degree(), 2 * g.max_temporal_degree())


# -- topological minors ----------------------------------------------------------


@dataclass(frozen=True)
class MinorModel:
    """A depth-r model of a clique: branch vertices plus connecting paths."""

    branch: Tuple[str, ...]
    paths: Dict[Tuple[int, int], Tuple[str, ...]]

    def verify(self, host: StaticGraph, r: int) -> bool:
        if len(set(self.branch)) != len(self.branch):
            return False
        internals = set()
        for (i, j), path in self.paths.items():
            if path[0] != self.branch[i] or path[-1] != self.branch[j]:
                return False
            if len(path) - 1 > r + 1:
                return False
            for a, b in zip(path, path[1:]):
                if not host.has_edge(a, b):
                    return False
            inner = set(path[1:-1])
            if inner & set(self.branch) or inner & internals or len(inner) != len(path) - 2:
                return False
            internals |= inner
        return True


def has_topological_minor(
    host: StaticGraph, q: int, r: int, max_vertices: int = 10, max_q: int = 5, max_r: int = 2
) -> Optional[MinorModel]:
    """Exhaustive search for a depth-r model of the q-clique in the host.

    Branch candidates need host degree at least q-1; connecting paths have
    length at most r+1 and pairwise disjoint internal vertices avoiding all
    branch vertices.  Returns a witness model or None.
    """
    if len(host.vertices) > max_vertices or q > max_q or r > max_r:
        raise TooLargeError(
            f"minor search ceiling exceeded (n={len(host.vertices)}, q={q}, r={r})"
        )
    verts = sorted(host.vertices)
    if q == 0:
        return MinorModel((), {})
    if q == 1:
        return MinorModel((verts[0],), {}) if verts else None
    cands = [v for v in verts if host.degree(v) >= q - 1]
    if len(cands) < q:
        return None

    adj = {v: sorted(host.neighbors(v)) for v in verts}

    def paths_between(a, b, banned):
        """Simple a-b paths of length <= r+1 with internals outside banned."""
        out = []

        def go(cur, acc):
            if len(acc) - 1 > r + 1:
                return
            if cur == b:
                out.append(tuple(acc))
                return
            if len(acc) - 1 == r + 1:
                return
            for nb in adj[cur]:
                if nb == b:
                    go(nb, acc + [nb])
                elif nb not in banned and nb not in acc and nb != a:
                    go(nb, acc + [nb])

        go(a, [a])
        return out

    pairs = list(combinations(range(q), 2))

    def assign(pair_idx, branch, used_internals, chosen):
        if pair_idx == len(pairs):
            return MinorModel(tuple(branch), dict(chosen))
        i, j = pairs[pair_idx]
        banned = set(branch) | used_internals
        for path in paths_between(branch[i], branch[j], banned):
            inner = set(path[1:-1])
            chosen[(i, j)] = path
            res = assign(pair_idx + 1, branch, used_internals | inner, chosen)
            if res is not None:
                return res
            del chosen[(i, j)]
        return None

    for branch in combinations(cands, q):
        res = assign(0, list(branch), set(), {})
        if res is not None:
            assert res.verify(host, r)
            return res
    return None


@dataclass(frozen=True)
class SparsityProfile:
    """Radius -> excluded clique size for a nowhere dense class."""

    d: Dict[int, int] = field(default_factory=dict)
    default: int = 3

    def of(self, r: int) -> int:
        return self.d.get(r, self.default)

    @staticmethod
    def constant(value: int) -> "SparsityProfile":
        return SparsityProfile({}, value)


@dataclass(frozen=True)
class NowhereDenseReport:
    clique_size: int
    radius: int
    vacuous: bool
    witness_found: bool

    @property
    def holds(self) -> bool:
        return not self.witness_found


def nowhere_dense_witness_check(
    g: TemporalGraph, profile: SparsityProfile, r: int
) -> NowhereDenseReport:
    """Spot-check the excluded clique of the lifetime-encoding Gaifman graph.

    The checked clique size is profile(ceil(r/2)) + 2*lifetime.  A vacuous
    pass (clique larger than the universe) is reported as such.
    """
    q = profile.of((r + 1) // 2) + 2 * g.lifetime()
    gf = gaifman_graph(encode_lifetime(g))
    if q > len(gf.vertices):
        return NowhereDenseReport(q, r, vacuous=True, witness_found=False)
    model = has_topological_minor(gf, q, r, max_vertices=64, max_q=max(q, 5))
    return NowhereDenseReport(q, r, vacuous=False, witness_found=model is not None)


# -- exports -----------------------------------------------------------------------


def gaifman_edge_list(gf: StaticGraph) -> str:
    lines = [f"{a} {b}" for a, b in sorted(gf.edges)]
    isolated = sorted(gf.vertices - {x for e in gf.edges for x in e})
    lines += [f"{v}" for v in isolated]
    return "\n".join(lines) + ("\n" if lines else "")


def gaifman_dot(gf: StaticGraph) -> str:
    body = "".join(f'  "{a}" -- "{b}";\n' for a, b in sorted(gf.edges))
    iso = "".join(
        f'  "{v}";\n' for v in sorted(gf.vertices - {x for e in gf.edges for x in e})
    )
    return "graph gaifman {\n" + iso + body + "}\n"
