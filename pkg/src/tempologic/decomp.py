"""VIM, TIM, tree and path decompositions: construction, validation, and
exact tiny-instance width oracles.

The VIM decomposition is unique (one bag of alive vertices per time step).
The TIM construction here is a heuristic fixed point: start from snapshot
connected components plus singletons, then merge same-time bags lying on a
cycle of the bag-adjacency graph until that graph is acyclic.  Validity is
always enforced by the validator; optimality is not claimed.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Dict, FrozenSet, List, Optional, Tuple

from .errors import InvalidInputError, TooLargeError, ValidationFailureError
from .tgraph import StaticGraph, TemporalGraph


@dataclass(frozen=True)
class Verdict:
    ok: bool
    clause: Optional[str] = None
    detail: str = ""

    def __bool__(self):
        return self.ok


@dataclass(frozen=True)
class VimDecomposition:
    """Bags indexed by time 1..lifetime; bag t holds the vertices alive at t."""

    bags: Tuple[FrozenSet[str], ...]

    def width(self) -> int:
        return max((len(b) for b in self.bags), default=0)

    def bag(self, t: int) -> FrozenSet[str]:
        return self.bags[t - 1]


@dataclass(frozen=True)
class TimDecomposition:
    """Labelled tree of bags; tau maps node id to its time step.

    tree_edges stores the derived directed pairs (i, j) with
    tau(i) = tau(j) + 1 and intersecting bags, i.e. child (later time) to
    parent (earlier time), following the defining clause.  The underlying
    undirected graph must be acyclic; it may be a forest, which is reported
    via component_count rather than rejected.
    """

    nodes: Tuple[str, ...]
    bags: Dict[str, FrozenSet[str]]
    tau: Dict[str, int]
    tree_edges: FrozenSet[Tuple[str, str]]

    def width(self) -> int:
        return max((len(b) for b in self.bags.values()), default=0)

    def nodes_at(self, t: int) -> List[str]:
        return [i for i in self.nodes if self.tau[i] == t]

    def component_count(self) -> int:
        return _component_count(self.nodes, self.tree_edges)

    def parents(self, i: str) -> List[str]:
        return sorted(j for (a, j) in self.tree_edges if a == i)

    def children(self, j: str) -> List[str]:
        return sorted(a for (a, b) in self.tree_edges if b == j)


@dataclass(frozen=True)
class TreeDecomposition:
    """Generic tree decomposition over arbitrary hashable element ids."""

    nodes: Tuple[str, ...]
    bags: Dict[str, FrozenSet]
    edges: FrozenSet[Tuple[str, str]]  # undirected, stored as sorted pairs

    def width(self) -> int:
        return max((len(b) for b in self.bags.values()), default=0) - 1


@dataclass(frozen=True)
class PathDecomposition(TreeDecomposition):
    """Tree decomposition whose tree is a path (nodes in path order)."""


def _component_count(nodes, edges) -> int:
    parent = {n: n for n in nodes}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in edges:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb
    return len({find(n) for n in nodes})


def _acyclic(nodes, edges) -> bool:
    nodes = list(nodes)
    return len(edges) == len(nodes) - _component_count(nodes, edges)


# -- VIM ----------------------------------------------------------------------


def vim_decomposition(g: TemporalGraph) -> VimDecomposition:
    lam = g.lifetime()
    intervals = {v: g.activity_interval(v) for v in g.vertices}
    bags = []
    for t in range(1, lam + 1):
        bags.append(frozenset(v for v, a in intervals.items() if a is not None and t in a))
    return VimDecomposition(tuple(bags))


# -- TIM ----------------------------------------------------------------------


def _snapshot_partition(g: TemporalGraph, t: int) -> List[FrozenSet[str]]:
    """Connected components of snapshot t, plus singletons for the rest."""
    adj = {}
    for e in g.edges:
        if e.t == t:
            adj.setdefault(e.u, set()).add(e.v)
            adj.setdefault(e.v, set()).add(e.u)
    seen = set()
    parts = []
    for v in sorted(g.vertices):
        if v in seen:
            continue
        comp = {v}
        stack = [v]
        while stack:
            x = stack.pop()
            for y in adj.get(x, ()):
                if y not in comp:
                    comp.add(y)
                    stack.append(y)
        seen |= comp
        parts.append(frozenset(comp))
    return parts


def _derive_tree_edges(levels: List[List[FrozenSet[str]]]):
    """Directed (later, earlier) pairs of intersecting consecutive-time bags."""
    edges = set()
    for t in range(1, len(levels)):
        for i, b in enumerate(levels[t]):
            for j, c in enumerate(levels[t - 1]):
                if b & c:
                    edges.add(((t + 1, i), (t, j)))
    return edges


def _find_cycle(nodes, und_edges):
    """Any simple cycle in the undirected graph, as a list of nodes; None if acyclic."""
    adj = {n: [] for n in nodes}
    for a, b in und_edges:
        adj[a].append(b)
        adj[b].append(a)
    colour = {}
    parent = {}

    def dfs(x, par):
        colour[x] = 1
        parent[x] = par
        for y in adj[x]:
            if y == par:
                continue
            if y not in colour:
                cyc = dfs(y, x)
                if cyc is not None:
                    return cyc
            elif colour[y] == 1:
                cycle = [x]
                cur = x
                while cur != y:
                    cur = parent[cur]
                    cycle.append(cur)
                return cycle
        colour[x] = 2
        return None

    for root in nodes:
        if root not in colour:
            cyc = dfs(root, None)
            if cyc is not None:
                return cyc
    return None


def tim_decomposition(g: TemporalGraph) -> TimDecomposition:
    """Cycle-elimination fixed point TIM construction.

    While the bag-adjacency graph contains a cycle, merge all same-time bags
    on that cycle; the bag count strictly decreases, so this terminates.
    """
    lam = g.lifetime()
    levels = [sorted(_snapshot_partition(g, t), key=sorted) for t in range(1, lam + 1)]
    while True:
        nodes = [(t + 1, i) for t in range(len(levels)) for i in range(len(levels[t]))]
        edges = _derive_tree_edges(levels)
        und = {tuple(sorted(e)) for e in edges}
        cycle = _find_cycle(nodes, und)
        if cycle is None:
            break
        by_time = {}
        for (t, i) in cycle:
            by_time.setdefault(t, []).append(i)
        for t, idxs in sorted(by_time.items()):
            if len(idxs) < 2:
                continue
            merged = frozenset().union(*(levels[t - 1][i] for i in idxs))
            keep = [b for i, b in enumerate(levels[t - 1]) if i not in set(idxs)]
            levels[t - 1] = sorted(keep + [merged], key=sorted)
    node_ids = {}
    for t in range(1, lam + 1):
        for i, b in enumerate(levels[t - 1]):
            node_ids[(t, i)] = f"t{t}#{i}"
    bags = {node_ids[(t, i)]: levels[t - 1][i] for (t, i) in node_ids}
    tau = {node_ids[(t, i)]: t for (t, i) in node_ids}
    edges = frozenset(
        (node_ids[a], node_ids[b]) for (a, b) in _derive_tree_edges(levels)
    )
    return TimDecomposition(tuple(sorted(node_ids.values())), bags, tau, edges)


def validate_tim(g: TemporalGraph, d: TimDecomposition) -> Verdict:
    """Check the three defining clauses; report the first violation."""
    lam = g.lifetime()
    for v in sorted(g.vertices):
        for t in range(1, lam + 1):
            hits = [i for i in d.nodes if d.tau[i] == t and v in d.bags[i]]
            if len(hits) != 1:
                return Verdict(False, "i", f"vertex {v!r} is in {len(hits)} bags at time {t}")
    for e in sorted(g.edges):
        if not any(
            d.tau[i] == e.t and e.u in d.bags[i] and e.v in d.bags[i] for i in d.nodes
        ):
            return Verdict(False, "ii", f"temporal edge {e} not inside any bag at its time")
    derived = set()
    for i in d.nodes:
        for j in d.nodes:
            if d.tau[i] == d.tau[j] + 1 and d.bags[i] & d.bags[j]:
                derived.add((i, j))
    if derived != set(d.tree_edges):
        return Verdict(False, "iii", "tree_edges differ from the defining intersection rule")
    und = {tuple(sorted(e)) for e in derived}
    if not _acyclic(d.nodes, und):
        return Verdict(False, "iii", "bag-adjacency graph contains a cycle")
    return Verdict(True)


def _set_partitions(items):
    items = list(items)
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in _set_partitions(rest):
        for i in range(len(part)):
            yield part[:i] + [[first] + part[i]] + part[i + 1 :]
        yield [[first]] + part


def tim_width_exact_tiny(g: TemporalGraph, max_n: int = 4, max_lifetime: int = 3) -> int:
    """Exhaustive minimum TIM width over all per-time set partitions of V.

    Forest-shaped decompositions are accepted, consistently with the
    validator.  Ceilings keep the partition product small.
    """
    n, lam = len(g.vertices), g.lifetime()
    if n > max_n or lam > max_lifetime:
        raise TooLargeError(f"n={n}, lifetime={lam} beyond exact-TIM ceiling")
    if lam == 0:
        return 0
    per_time = [
        [sorted(map(frozenset, p), key=sorted) for p in _set_partitions(sorted(g.vertices))]
        for _ in range(lam)
    ]
    best = None

    def rec(t, chosen):
        nonlocal best
        if t == lam:
            d = _tim_from_levels(chosen)
            if validate_tim(g, d):
                w = d.width()
                best = w if best is None else min(best, w)
            return
        for p in per_time[t]:
            w = max(len(b) for b in p)
            if best is not None and w >= best:
                continue
            rec(t + 1, chosen + [p])

    rec(0, [])
    if best is None:
        raise ValidationFailureError("no valid TIM decomposition found (bug)")
    return best


def _tim_from_levels(levels) -> TimDecomposition:
    node_ids = {}
    for t0, level in enumerate(levels):
        for i, b in enumerate(level):
            node_ids[(t0 + 1, i)] = f"t{t0 + 1}#{i}"
    bags = {node_ids[k]: levels[k[0] - 1][k[1]] for k in node_ids}
    tau = {node_ids[k]: k[0] for k in node_ids}
    edges = frozenset((node_ids[a], node_ids[b]) for (a, b) in _derive_tree_edges(list(levels)))
    return TimDecomposition(tuple(sorted(node_ids.values())), bags, tau, edges)


# -- tree decompositions of static graphs --------------------------------------


def validate_tree_decomposition(elements, graph_edges, td: TreeDecomposition) -> Verdict:
    """Coverage, edge containment, and connected-subtree checks.

    ``elements`` is the full element set to cover; ``graph_edges`` the edges
    (pairs) that must appear inside some bag.
    """
    und = {tuple(sorted(e)) for e in td.edges}
    if not _acyclic(td.nodes, und):
        return Verdict(False, "shape", "decomposition graph is not a forest")
    if _component_count(td.nodes, und) > 1:
        return Verdict(False, "shape", "decomposition graph is not connected")
    covered = set().union(*td.bags.values()) if td.bags else set()
    missing = set(elements) - covered
    if missing:
        return Verdict(False, "i", f"elements not covered: {sorted(missing)[:3]}")
    for a, b in graph_edges:
        if not any(a in bag and b in bag for bag in td.bags.values()):
            return Verdict(False, "ii", f"edge ({a!r}, {b!r}) inside no bag")
    adj = {n: set() for n in td.nodes}
    for a, b in td.edges:
        adj[a].add(b)
        adj[b].add(a)
    for x in set(elements):
        holding = [n for n in td.nodes if x in td.bags[n]]
        if not holding:
            continue
        seen = {holding[0]}
        stack = [holding[0]]
        while stack:
            cur = stack.pop()
            for nb in adj[cur]:
                if nb not in seen and x in td.bags[nb]:
                    seen.add(nb)
                    stack.append(nb)
        if len(seen) != len(holding):
            return Verdict(False, "iii", f"element {x!r} spans a disconnected subtree")
    return Verdict(True)


def validate_path_decomposition(elements, graph_edges, pd: PathDecomposition) -> Verdict:
    path_edges = {
        tuple(sorted((pd.nodes[i], pd.nodes[i + 1]))) for i in range(len(pd.nodes) - 1)
    }
    if {tuple(sorted(e)) for e in pd.edges} != path_edges:
        return Verdict(False, "shape", "edges do not form the node path")
    return validate_tree_decomposition(elements, graph_edges, pd)


def _chain_link(nodes, edges):
    """Connect a forest of decomposition nodes into a single tree."""
    edges = set(edges)
    if not nodes:
        return edges
    comp = {}
    for n in nodes:
        comp[n] = n
    parent = dict(comp)

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in edges:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb
    reps = {}
    for n in nodes:
        reps.setdefault(find(n), n)
    roots = sorted(reps.values())
    for a, b in zip(roots, roots[1:]):
        edges.add(tuple(sorted((a, b))))
    return edges


def tree_decomposition_footprint(sg: StaticGraph) -> TreeDecomposition:
    """Min-fill greedy elimination with lowest-name tie-break.

    Deterministic and always valid; the width can exceed the true treewidth.
    """
    verts = sorted(sg.vertices)
    adj = {v: set() for v in verts}
    for a, b in sg.edges:
        adj[a].add(b)
        adj[b].add(a)
    order = []
    bags = {}
    work = {v: set(nb) for v, nb in adj.items()}
    remaining = set(verts)
    while remaining:
        best_v, best_fill = None, None
        for v in sorted(remaining):
            nbs = [w for w in work[v] if w in remaining]
            fill = sum(
                1 for a, b in combinations(sorted(nbs), 2) if b not in work[a]
            )
            if best_fill is None or fill < best_fill:
                best_v, best_fill = v, fill
        v = best_v
        nbs = sorted(w for w in work[v] if w in remaining)
        bags[v] = frozenset([v] + nbs)
        for a, b in combinations(nbs, 2):
            work[a].add(b)
            work[b].add(a)
        remaining.remove(v)
        order.append(v)
    # tree: bag of v attaches to the bag of its earliest-eliminated later neighbour
    pos = {v: i for i, v in enumerate(order)}
    edges = set()
    for v in order:
        later = [w for w in bags[v] if w != v and pos[w] > pos[v]]
        if later:
            anchor = min(later, key=lambda w: pos[w])
            edges.add(tuple(sorted((v, anchor))))
    nodes = tuple(order) if order else ("empty",)
    if not order:
        bags = {"empty": frozenset()}
    edges = _chain_link(nodes, edges)
    td = TreeDecomposition(nodes, bags, frozenset(edges))
    verdict = validate_tree_decomposition(sg.vertices, sg.edges, td)
    if not verdict:
        raise ValidationFailureError(f"min-fill produced an invalid decomposition: {verdict}")
    return td


def treewidth_exact_tiny(sg: StaticGraph, max_n: int = 8) -> int:
    """Exact treewidth by dynamic programming over elimination orders.

    g(S) = min over v in S of max(|reachable-through-S neighbours of v|, g(S - v)),
    where the degree is taken in the graph with S \\ {v} already eliminated.
    """
    verts = sorted(sg.vertices)
    n = len(verts)
    if n > max_n:
        raise TooLargeError(f"n={n} beyond exact-treewidth ceiling {max_n}")
    if n == 0:
        return -1
    idx = {v: i for i, v in enumerate(verts)}
    nbr = [0] * n
    for a, b in sg.edges:
        nbr[idx[a]] |= 1 << idx[b]
        nbr[idx[b]] |= 1 << idx[a]

    def elim_degree(v: int, eliminated: int) -> int:
        # vertices outside `eliminated` connected to v through eliminated ones
        seen = 1 << v
        stack = [v]
        out = 0
        while stack:
            x = stack.pop()
            cand = nbr[x] & ~seen
            seen |= cand
            rest = cand
            while rest:
                low = rest & -rest
                rest ^= low
                y = low.bit_length() - 1
                if (eliminated >> y) & 1:
                    stack.append(y)
                else:
                    out |= low
        return bin(out).count("1")

    best = {0: -1}

    def g(S: int) -> int:
        if S in best:
            return best[S]
        res = None
        rest = S
        while rest:
            low = rest & -rest
            rest ^= low
            v = low.bit_length() - 1
            d = elim_degree(v, S & ~low)
            val = max(d, g(S & ~low))
            res = val if res is None else min(res, val)
        best[S] = res
        return res

    return g((1 << n) - 1)


# -- width-transfer witnesses ---------------------------------------------------


def path_decomposition_from_vim(g: TemporalGraph) -> PathDecomposition:
    """VIM bags in time order as a path decomposition of the footprint.

    Vertices that are never alive are appended as singleton tail bags so the
    coverage clause holds; alive vertices occupy contiguous bag runs because
    activity intervals are contiguous.
    """
    vim = vim_decomposition(g)
    nodes = [f"p{t}" for t in range(1, g.lifetime() + 1)]
    bags = {f"p{t}": vim.bag(t) for t in range(1, g.lifetime() + 1)}
    alive = set().union(*vim.bags) if vim.bags else set()
    isolated = sorted(g.vertices - alive)
    for k, v in enumerate(isolated):
        nodes.append(f"iso{k}")
        bags[f"iso{k}"] = frozenset([v])
    if not nodes:
        nodes = ["empty"]
        bags = {"empty": frozenset()}
    edges = frozenset(
        tuple(sorted((nodes[i], nodes[i + 1]))) for i in range(len(nodes) - 1)
    )
    pd = PathDecomposition(tuple(nodes), bags, edges)
    fp = g.footprint()
    verdict = validate_path_decomposition(fp.vertices, fp.edges, pd)
    if not verdict:
        raise ValidationFailureError(f"VIM bags failed path validation: {verdict}")
    return pd


def tree_decomposition_from_tim(g: TemporalGraph, d: TimDecomposition) -> TreeDecomposition:
    """TIM bags plus the TIM tree shape as a tree decomposition of the footprint."""
    verdict = validate_tim(g, d)
    if not verdict:
        raise InvalidInputError(f"invalid TIM decomposition: {verdict}")
    nodes = list(d.nodes)
    bags = {i: d.bags[i] for i in d.nodes}
    covered = set().union(*bags.values()) if bags else set()
    for k, v in enumerate(sorted(g.vertices - covered)):
        nodes.append(f"iso{k}")
        bags[f"iso{k}"] = frozenset([v])
    if not nodes:
        nodes = ["empty"]
        bags = {"empty": frozenset()}
    edges = _chain_link(tuple(nodes), {tuple(sorted(e)) for e in d.tree_edges})
    td = TreeDecomposition(tuple(nodes), bags, frozenset(edges))
    fp = g.footprint()
    out = validate_tree_decomposition(fp.vertices, fp.edges, td)
    if not out:
        raise ValidationFailureError(f"TIM bags failed tree validation: {out}")
    return td
