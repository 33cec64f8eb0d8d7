"""Independent brute-force ground-truth solvers for the cookbook problems.

Everything here works directly on TemporalGraph objects by exhaustive search;
nothing imports the encodings or the logic evaluator.  That independence is
the point: formula evaluation and these oracles must agree on every tested
instance, and neither side is allowed to peek at the other.

All searches carry hard ceilings and raise TooLargeError beyond them rather
than silently truncating.
"""
from __future__ import annotations

import hashlib
import os
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Optional

from .errors import TooLargeError, UnknownVertexError
from .tgraph import TemporalEdge, TemporalGraph, temporal_graph


@dataclass
class OracleCeiling:
    """Desk-scale input limits for the exhaustive searches."""

    n: int = 8
    lifetime: int = 6
    edges: int = 48
    subset_base: int = 20  # max ground-set size for subset min/max enumeration
    colour_k: int = 3

    @staticmethod
    def from_env() -> "OracleCeiling":
        c = OracleCeiling()
        raw = os.environ.get("TEMPO_ORACLE_CEILING", "")
        for part in raw.split(","):
            if "=" in part:
                key, val = part.split("=", 1)
                key = key.strip()
                if hasattr(c, key):
                    setattr(c, key, int(val))
        return c


CEILING = OracleCeiling.from_env()


def _check_scale(g: TemporalGraph, ceiling: OracleCeiling = None):
    c = ceiling or CEILING
    if len(g.vertices) > c.n or g.lifetime() > c.lifetime or len(g.edges) > c.edges:
        raise TooLargeError(
            f"instance (n={len(g.vertices)}, lifetime={g.lifetime()}, "
            f"edges={len(g.edges)}) exceeds oracle ceiling {c}"
        )


@dataclass
class OracleReport:
    verdict: object
    witness: object = None
    explored: int = 0


# -- reachability and path enumeration --------------------------------------


def _time_ok(strict: bool, prev: Optional[int], t: int, delta: Optional[int]) -> bool:
    if prev is None:
        return True
    if strict and not t > prev:
        return False
    if not strict and not t >= prev:
        return False
    if delta is not None and t - prev > delta:
        return False
    return True


def _usable_edges(g, allowed_vertices, allowed_static_edges, allowed_temporal_edges):
    if allowed_static_edges is not None:
        allowed_static_edges = {
            se if g.directed else (min(se), max(se)) for se in allowed_static_edges
        }
    out = []
    for e in sorted(g.edges):
        if allowed_vertices is not None and (e.u not in allowed_vertices or e.v not in allowed_vertices):
            continue
        if allowed_static_edges is not None and (e.u, e.v) not in allowed_static_edges:
            continue
        if allowed_temporal_edges is not None and e not in allowed_temporal_edges:
            continue
        out.append(e)
    return out


def oracle_reachable(
    g: TemporalGraph,
    u: str,
    v: str,
    strict: Optional[bool] = None,
    delta: Optional[int] = None,
    allowed_vertices=None,
    allowed_static_edges=None,
    allowed_temporal_edges=None,
) -> bool:
    """Exhaustive search over temporal edge sequences with simple-path pruning.

    Reflexive: every vertex reaches itself (by the empty path), provided it is
    not excluded by a vertex restriction.
    """
    if u not in g.vertices or v not in g.vertices:
        raise UnknownVertexError(f"unknown endpoint {u!r} or {v!r}")
    _check_scale(g)
    strict = g.strict if strict is None else strict
    if u == v:
        return True
    if allowed_vertices is not None and (u not in allowed_vertices or v not in allowed_vertices):
        return False
    edges = _usable_edges(g, allowed_vertices, allowed_static_edges, allowed_temporal_edges)
    incident = {}
    for e in edges:
        incident.setdefault(e.u, []).append(e)
        if not g.directed:
            incident.setdefault(e.v, []).append(e)

    def dfs(cur, prev_t, visited):
        if cur == v:
            return True
        for e in incident.get(cur, ()):
            nxt = e.v if e.u == cur else e.u
            if g.directed and e.u != cur:
                continue
            if nxt in visited or not _time_ok(strict, prev_t, e.t, delta):
                continue
            if dfs(nxt, e.t, visited | {nxt}):
                return True
        return False

    return dfs(u, None, {u})


def enumerate_temporal_paths(
    g: TemporalGraph,
    u: str,
    v: str,
    strict: Optional[bool] = None,
    delta: Optional[int] = None,
    allowed_temporal_edges=None,
) -> list:
    """All temporal paths u -> v as tuples of temporal edges (u != v)."""
    _check_scale(g)
    strict = g.strict if strict is None else strict
    edges = _usable_edges(g, None, None, allowed_temporal_edges)
    incident = {}
    for e in edges:
        incident.setdefault(e.u, []).append(e)
        if not g.directed:
            incident.setdefault(e.v, []).append(e)
    paths = []

    def dfs(cur, prev_t, visited, acc):
        if cur == v:
            paths.append(tuple(acc))
            return
        for e in incident.get(cur, ()):
            nxt = e.v if e.u == cur else e.u
            if g.directed and e.u != cur:
                continue
            if nxt in visited or not _time_ok(strict, prev_t, e.t, delta):
                continue
            acc.append(e)
            dfs(nxt, e.t, visited | {nxt}, acc)
            acc.pop()

    if u != v:
        dfs(u, None, {u}, [])
    return paths


def oracle_disjoint_paths(g: TemporalGraph, u: str, v: str, variant: str = "edge") -> bool:
    """Two disjoint temporal paths from u to v, per the formula's literal reading.

    variant "edge": the two paths share no temporal edge.
    variant "vertex": the two paths' vertex sets are fully disjoint; since
    both contain u and v, this is unsatisfiable by construction.  The formula
    in the catalogue quantifies two disjoint vertex sets that both contain
    the endpoints, and the oracle mirrors that literal semantics.
    """
    _check_scale(g)
    if variant == "vertex":
        return False
    paths = enumerate_temporal_paths(g, u, v)
    sets = {frozenset(p) for p in paths}
    for p1 in sets:
        for p2 in sets:
            if not p1 & p2:
                return True
    return False


# -- components, separators, spanners ----------------------------------------


def _reach_matrix(g: TemporalGraph, within=None):
    verts = sorted(g.vertices if within is None else within)
    return {
        (a, b): oracle_reachable(g, a, b, allowed_vertices=within)
        for a in verts
        for b in verts
    }


def _tcs_property(g, X, variant) -> bool:
    """Is X a temporally connected set under the given variant?"""
    X = frozenset(X)
    within = X if "closed" in variant else None
    for a in sorted(X):
        for b in sorted(X):
            if a == b:
                continue
            fwd = oracle_reachable(g, a, b, allowed_vertices=within)
            if variant.startswith("unilateral"):
                if not (fwd or oracle_reachable(g, b, a, allowed_vertices=within)):
                    return False
            elif not fwd:
                return False
    return True


def oracle_is_component(g: TemporalGraph, X, variant: str = "open") -> bool:
    """Is X a maximal temporally connected set (the component predicate)?

    variant in {open, closed, unilateral_open, unilateral_closed}.  Open
    variants use the single-vertex extension clause (equivalent to superset
    maximality because the property is hereditary); closed variants check all
    proper supersets.
    """
    X = frozenset(X)
    if not X or not X <= g.vertices:
        return False
    if not _tcs_property(g, X, variant):
        return False
    if "closed" in variant:
        rest = sorted(g.vertices - X)
        for r in range(1, len(rest) + 1):
            for extra in combinations(rest, r):
                if _tcs_property(g, X | frozenset(extra), variant):
                    return False
        return True
    for y in sorted(g.vertices - X):
        ok = True
        for u in sorted(X):
            fwd = oracle_reachable(g, u, y)
            bwd = oracle_reachable(g, y, u)
            good = (fwd or bwd) if variant.startswith("unilateral") else (fwd and bwd)
            if not good:
                ok = False
                break
        if ok:
            return False
    return True


def oracle_components(g: TemporalGraph, variant: str = "open") -> list:
    """All maximal temporally connected sets under the variant."""
    _check_scale(g)
    verts = sorted(g.vertices)
    sets = [
        frozenset(c)
        for r in range(1, len(verts) + 1)
        for c in combinations(verts, r)
        if _tcs_property(g, frozenset(c), variant)
    ]
    return sorted(
        (s for s in sets if not any(s < t for t in sets)),
        key=lambda s: sorted(s),
    )


def oracle_separator(g: TemporalGraph, s: str, z: str, variant: str = "vertex", candidate=None):
    """Separator verification or minimisation.

    With a candidate, returns whether removing it kills every temporal path
    from s to z (literal semantics: a vertex candidate containing s or z
    separates trivially).  With candidate None, returns an OracleReport with
    the minimum separator size and a witness; vertex minimisation ranges over
    V minus {s, z}.
    """
    _check_scale(g)
    def separated(cand):
        if variant == "vertex":
            return not oracle_reachable(g, s, z, allowed_vertices=g.vertices - frozenset(cand))
        if variant == "static_edge":
            fp = {(e.u, e.v) for e in g.edges}
            return not oracle_reachable(g, s, z, allowed_static_edges=fp - set(cand))
        return not oracle_reachable(g, s, z, allowed_temporal_edges=g.edges - frozenset(cand))

    if candidate is not None:
        return separated(candidate)

    if variant == "vertex":
        ground = sorted(g.vertices - {s, z})
    elif variant == "static_edge":
        ground = sorted({(e.u, e.v) for e in g.edges})
    else:
        ground = sorted(g.edges)
    if len(ground) > CEILING.subset_base:
        raise TooLargeError(f"minimisation base {len(ground)} over ceiling")
    explored = 0
    for r in range(len(ground) + 1):
        for cand in combinations(ground, r):
            explored += 1
            if separated(cand):
                return OracleReport(r, witness=set(cand), explored=explored)
    return OracleReport(None, explored=explored)


def oracle_spanner(g: TemporalGraph, X) -> bool:
    """Does X preserve reachability between all ordered pairs of distinct vertices?"""
    _check_scale(g)
    X = frozenset(X)
    for a in sorted(g.vertices):
        for b in sorted(g.vertices):
            if a == b:
                continue
            if oracle_reachable(g, a, b) and not oracle_reachable(g, a, b, allowed_vertices=X):
                return False
    return True


# -- exploration --------------------------------------------------------------


def oracle_exploration(g: TemporalGraph, variant: str = "vertex") -> bool:
    """Walk-based exploration, mirroring the unrolled walk semantics.

    The walk has lifetime-many steps; step t either stays put or crosses an
    edge present at time t.  Vertex variant: all vertices visited.  Edge
    variant: all static edges crossed by some moving step.
    """
    _check_scale(g)
    lam = g.lifetime()
    verts = sorted(g.vertices)
    if not verts:
        return False
    fp_edges = sorted({(e.u, e.v) for e in g.edges})
    goal_idx = {x: i for i, x in enumerate(verts if variant == "vertex" else fp_edges)}
    full = (1 << len(goal_idx)) - 1

    def covered_start(x):
        return 1 << goal_idx[x] if variant == "vertex" else 0

    states = {(x, covered_start(x)) for x in verts}
    if any(c == full for _, c in states):
        return True
    for t in range(1, lam + 1):
        step_edges = [e for e in g.edges if e.t == t]
        nxt = set(states)
        for (x, cov) in states:
            for e in step_edges:
                if g.directed:
                    moves = [(e.u, e.v)] if e.u == x else []
                else:
                    moves = [(e.u, e.v)] if e.u == x else ([(e.v, e.u)] if e.v == x else [])
                for (_, y) in moves:
                    c2 = cov
                    if variant == "vertex":
                        c2 |= 1 << goal_idx[y]
                    else:
                        c2 |= 1 << goal_idx[(e.u, e.v)]
                    nxt.add((y, c2))
        states = nxt
        if any(c == full for _, c in states):
            return True
    return any(c == full for _, c in states)


# -- clique / independent set -------------------------------------------------


def oracle_clique_is(g: TemporalGraph, S, delta: int, variant: str = "clique") -> bool:
    """Delta-window clique / independent set predicate on a vertex set.

    A pair is delta-covered at time t when some edge between them exists
    within distance delta-1 of t.  Clique: every pair covered at every
    t in [1, lifetime].  Independent set: no pair covered at any t.
    """
    _check_scale(g)
    S = frozenset(S)
    lam = g.lifetime()
    for a, b in combinations(sorted(S), 2):
        times = [e.t for e in g.edges if {e.u, e.v} == {a, b}]
        for t in range(1, lam + 1):
            near = any(abs(t - t2) <= delta - 1 for t2 in times)
            if variant == "clique" and not near:
                return False
            if variant == "independent" and near:
                return False
    return True


# -- temporal cycles and feedback sets ----------------------------------------


def _temporal_cycles(g: TemporalGraph, edges: Iterable[TemporalEdge]):
    """Closed temporal walks over >= 2 distinct temporal edges with distinct
    interior vertices (footprint cycles, including two parallel temporal
    copies of one static edge)."""
    edges = sorted(edges)
    incident = {}
    for e in edges:
        incident.setdefault(e.u, []).append(e)
        if not g.directed:
            incident.setdefault(e.v, []).append(e)

    found = []

    def dfs(start, cur, prev_t, visited, used, acc):
        for e in incident.get(cur, ()):
            nxt = e.v if e.u == cur else e.u
            if g.directed and e.u != cur:
                continue
            if e in used or not _time_ok(g.strict, prev_t, e.t, None):
                continue
            if nxt == start and len(acc) >= 1:
                found.append(tuple(acc) + (e,))
                continue
            if nxt in visited:
                continue
            acc.append(e)
            dfs(start, nxt, e.t, visited | {nxt}, used | {e}, acc)
            acc.pop()

    for s in sorted(g.vertices):
        dfs(s, s, None, {s}, frozenset(), [])
        if found:
            return found
    return found


def oracle_feedback(g: TemporalGraph, X, variant: str = "temporal_edge") -> bool:
    """Does deleting X leave the graph free of temporal cycles?

    variant "temporal_edge": X is a set of temporal edges.
    variant "connection": X is a set of static edges; all their temporal
    copies are removed.
    """
    _check_scale(g)
    if variant == "temporal_edge":
        remaining = [e for e in g.edges if e not in frozenset(X)]
    else:
        removed = {se if g.directed else (min(se), max(se)) for se in X}
        remaining = [e for e in g.edges if (e.u, e.v) not in removed]
    return not _temporal_cycles(g, remaining)


# -- colouring -----------------------------------------------------------------


def oracle_colouring(g: TemporalGraph, k: int) -> bool:
    """Temporal k-colourability: every snapshot is k-colourable.

    Snapshots are independent because vertices may be recoloured each step,
    so the check decomposes time-wise.
    """
    _check_scale(g)
    if k > CEILING.colour_k:
        raise TooLargeError(f"k={k} over colouring ceiling {CEILING.colour_k}")

    def colourable(adj, verts):
        order = sorted(verts)
        assign = {}

        def go(i):
            if i == len(order):
                return True
            v = order[i]
            for c in range(k):
                if all(assign.get(w) != c for w in adj.get(v, ())):
                    assign[v] = c
                    if go(i + 1):
                        return True
                    del assign[v]
            return False

        return go(0)

    for t in range(1, g.lifetime() + 1):
        adj = {}
        for e in g.edges:
            if e.t == t:
                adj.setdefault(e.u, set()).add(e.v)
                adj.setdefault(e.v, set()).add(e.u)
        if not colourable(adj, g.vertices):
            return False
    return True


# -- matchings ------------------------------------------------------------------


def _delta_matching_ok(g, M, delta) -> bool:
    for v in sorted(g.vertices):
        times = sorted(e.t for e in M if v in e.endpoints())
        if any(b - a < delta for a, b in zip(times, times[1:])):
            return False
    return True


def _temporal_matching_ok(g, M) -> bool:
    for e1 in M:
        for e2 in M:
            if e1 == e2:
                continue
            if set(e1.endpoints()) & set(e2.endpoints()):
                if (g.strict and e1.t < e2.t) or (not g.strict and e1.t <= e2.t):
                    return False
    return True


def oracle_matching(g: TemporalGraph, candidate=None, variant: str = "delta", delta: int = 1):
    """Matching verification, or exhaustive maximisation when candidate is None."""
    _check_scale(g)
    check = (
        (lambda M: _delta_matching_ok(g, M, delta))
        if variant == "delta"
        else (lambda M: _temporal_matching_ok(g, M))
    )
    if candidate is not None:
        return check(frozenset(candidate))
    edges = sorted(g.edges)
    if len(edges) > CEILING.subset_base:
        raise TooLargeError(f"maximisation base {len(edges)} over ceiling")
    for r in range(len(edges), -1, -1):
        for M in combinations(edges, r):
            if check(frozenset(M)):
                return OracleReport(r, witness=frozenset(M))
    return OracleReport(0, witness=frozenset())


# -- covers and dominating sets ---------------------------------------------------


def _active_at(g, v, t) -> bool:
    return any(v in e.endpoints() and e.t == t for e in g.edges)


def _adjacent_at(g, u, v, t) -> bool:
    return any({e.u, e.v} == {u, v} and e.t == t for e in g.edges)


def oracle_cover(g: TemporalGraph, variant: str, candidate, params=None) -> bool:
    """Verification checkers for the cover/domination family.

    candidate shape per variant:
      tvc, snapshot_ds          -> list of lifetime-many vertex sets
      delta_tvc                 -> list of lifetime-many vertex sets, params {delta}
      multistage                -> list of lifetime-many vertex sets, params {ell}
      timeline_vc, timeline_ds  -> list of (lifetime - ell + 1) vertex sets, params {k, ell}
      edge_cover                -> set of static-edge pairs
      overtime_ds, permanent_ds, reach_ds -> single vertex set
      tp_cover_tee              -> params {k}; candidate ignored (sentence-level search)
    """
    _check_scale(g)
    params = params or {}
    lam = g.lifetime()
    fp = sorted({(e.u, e.v) for e in g.edges})

    if variant == "tvc":
        Xs = candidate
        for (a, b) in fp:
            if not any(
                _adjacent_at(g, a, b, t) and (a in Xs[t - 1] or b in Xs[t - 1])
                for t in range(1, lam + 1)
            ):
                return False
        return True

    if variant == "delta_tvc":
        d = params["delta"]
        Xs = candidate
        for (a, b) in fp:
            for s in range(1, lam - d + 2):
                window = range(s, s + d)
                appears = any(_adjacent_at(g, a, b, t) for t in window)
                covered = any(
                    _adjacent_at(g, a, b, t) and (a in Xs[t - 1] or b in Xs[t - 1])
                    for t in window
                )
                if appears and not covered:
                    return False
        return True

    if variant == "multistage":
        ell = params["ell"]
        Xs = candidate
        for t in range(1, lam + 1):
            for e in g.edges:
                if e.t == t and e.u not in Xs[t - 1] and e.v not in Xs[t - 1]:
                    return False
        for t in range(lam - 1):
            if len(set(Xs[t]) ^ set(Xs[t + 1])) > ell:
                return False
        return True

    if variant in ("timeline_vc", "timeline_ds"):
        k, ell = params["k"], params["ell"]
        Xs = candidate
        starts = lam - ell + 1
        if starts < 0:
            starts = 0
        for v in sorted(g.vertices):
            if sum(1 for s in range(starts) if v in Xs[s]) > k:
                return False
        if variant == "timeline_vc":
            for e in g.edges:
                ok = any(
                    s + 1 <= e.t <= s + ell and (e.u in Xs[s] or e.v in Xs[s])
                    for s in range(starts)
                )
                if not ok:
                    return False
            return True
        for v in sorted(g.vertices):
            for t in range(1, lam + 1):
                ok = any(
                    s + 1 <= t <= s + ell
                    and (v in Xs[s] or any(u in Xs[s] and _adjacent_at(g, u, v, t) for u in g.vertices))
                    for s in range(starts)
                )
                if not ok:
                    return False
        return True

    if variant == "edge_cover":
        F = {se if g.directed else (min(se), max(se)) for se in candidate}
        for v in sorted(g.vertices):
            for t in range(1, lam + 1):
                if _active_at(g, v, t):
                    if not any(v in se and _adjacent_at(g, se[0], se[1], t) for se in F):
                        return False
        return True

    if variant == "snapshot_ds":
        Xs = candidate
        for t in range(1, lam + 1):
            for v in sorted(g.vertices):
                if v in Xs[t - 1]:
                    continue
                if not any(u in Xs[t - 1] and _adjacent_at(g, u, v, t) for u in g.vertices):
                    return False
        return True

    if variant == "overtime_ds":
        S = frozenset(candidate)
        for v in sorted(g.vertices):
            if v in S:
                continue
            if not any(any(_adjacent_at(g, u, v, t) for t in range(1, lam + 1)) for u in S):
                return False
        return True

    if variant == "permanent_ds":
        # Vertices with no edge at time t are exempt at that snapshot.
        S = frozenset(candidate)
        for t in range(1, lam + 1):
            for v in sorted(g.vertices):
                if v in S or not _active_at(g, v, t):
                    continue
                if not any(u in S and _adjacent_at(g, u, v, t) for u in g.vertices):
                    return False
        return True

    if variant == "reach_ds":
        S = frozenset(candidate)
        for v in sorted(g.vertices):
            if v in S:
                continue
            if not any(oracle_reachable(g, u, v) for u in sorted(S)):
                return False
        return True

    if variant == "tp_cover_tee":
        return oracle_tp_cover(g, params["k"])

    raise ValueError(f"unknown cover variant {variant!r}")


def oracle_cover_minimize(g: TemporalGraph, variant: str, params=None) -> OracleReport:
    """Smallest single-set solution for the set-valued cover variants."""
    _check_scale(g)
    if variant == "edge_cover":
        ground = sorted({(e.u, e.v) for e in g.edges})
    else:
        ground = sorted(g.vertices)
    if len(ground) > CEILING.subset_base:
        raise TooLargeError("minimisation base over ceiling")
    explored = 0
    for r in range(len(ground) + 1):
        for cand in combinations(ground, r):
            explored += 1
            if oracle_cover(g, variant, set(cand), params):
                return OracleReport(r, witness=set(cand), explored=explored)
    return OracleReport(None, explored=explored)


def _is_temporal_path_set(g: TemporalGraph, edges: frozenset) -> bool:
    """Is this edge set exactly a temporal path between some vertex pair?"""
    if not edges:
        return False
    deg = {}
    for e in edges:
        for x in e.endpoints():
            deg[x] = deg.get(x, 0) + 1
    ends = sorted(x for x, d in deg.items() if d == 1)
    if len(ends) != 2 or any(d > 2 for d in deg.values()):
        return False
    for u, v in (ends, ends[::-1]):
        for p in enumerate_temporal_paths(g, u, v, allowed_temporal_edges=edges):
            if frozenset(p) == edges:
                return True
    return False


def oracle_tp_cover(g: TemporalGraph, k: int) -> bool:
    """Can the temporal edge set be partitioned into exactly k temporal paths?"""
    _check_scale(g)
    n = len(g.vertices)
    if len(g.edges) > k * max(n - 1, 0):
        return False

    def parts(rest, k_left):
        if k_left == 0:
            return not rest
        if not rest:
            return False  # remaining paths would have to be empty
        rest_sorted = sorted(rest)
        anchor = rest_sorted[0]
        for r in range(1, len(rest_sorted) + 1):
            for combo in combinations(rest_sorted, r):
                if anchor not in combo:
                    continue
                cand = frozenset(combo)
                if _is_temporal_path_set(g, cand) and parts(rest - cand, k_left - 1):
                    return True
        return False

    return parts(frozenset(g.edges), k)


# -- random instances -------------------------------------------------------------


def _unit(seed: int, *counters) -> float:
    """Counter-based deterministic uniform(0,1): same inputs, same output, any platform."""
    payload = ("%d|" % seed + "|".join(str(c) for c in counters)).encode()
    digest = hashlib.sha256(payload).digest()
    return int.from_bytes(digest[:8], "big") / 2**64


@dataclass(frozen=True)
class InstanceConfig:
    n: int = 4
    lifetime: int = 3
    p: float = 0.5
    directed: bool = False
    strict: bool = True
    seed: int = 0


def random_instance(config: InstanceConfig) -> TemporalGraph:
    """Each (vertex pair, time) edge slot appears independently with probability p."""
    names = [chr(ord("a") + i) for i in range(config.n)]
    edges = []
    for i in range(config.n):
        for j in range(config.n):
            if (config.directed and i != j) or (not config.directed and i < j):
                for t in range(1, config.lifetime + 1):
                    if _unit(config.seed, i, j, t) < config.p:
                        edges.append((names[i], names[j], t))
    return temporal_graph(names, edges, directed=config.directed, strict=config.strict)


def random_tree_instance(n: int, lifetime: int, seed: int, strict: bool = True) -> TemporalGraph:
    """Temporal graph whose footprint is a random tree (for sparsity checks)."""
    names = [chr(ord("a") + i) for i in range(n)]
    edges = []
    for i in range(1, n):
        j = int(_unit(seed, "parent", i) * i)
        t = 1 + int(_unit(seed, "time", i) * lifetime)
        edges.append((names[j], names[i], min(t, lifetime)))
    return temporal_graph(names, edges, strict=strict)
