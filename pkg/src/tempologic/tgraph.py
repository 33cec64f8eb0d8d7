"""Core temporal-graph model: vertices, time-labelled edges, derived parameters,
and the earliest-arrival reachability primitive.

A temporal graph is a static footprint plus integer time labels on edges.  All
objects here are immutable; operations are pure functions or methods.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional

from .errors import SelfLoopError, TimeOutOfRangeError, UnknownVertexError


@dataclass(frozen=True, order=True)
class TemporalEdge:
    """An edge (u, v) available at time t.

    For undirected graphs the endpoints are stored in canonical (sorted)
    order, so (u, v, t) and (v, u, t) denote the same object.
    """

    u: str
    v: str
    t: int

    def endpoints(self):
        return (self.u, self.v)

    def static(self):
        """The underlying static edge as an endpoint pair."""
        return (self.u, self.v)


@dataclass(frozen=True)
class ActivityInterval:
    """[first, last] time at which a vertex or static edge is incident to an edge."""

    tmin: int
    tmax: int

    def __contains__(self, t: int) -> bool:
        return self.tmin <= t <= self.tmax


@dataclass(frozen=True)
class StaticGraph:
    """A simple static graph; edges are canonical pairs (sorted when undirected)."""

    vertices: frozenset
    edges: frozenset
    directed: bool = False

    def has_edge(self, u: str, v: str) -> bool:
        if self.directed:
            return (u, v) in self.edges
        return (min(u, v), max(u, v)) in self.edges

    def neighbors(self, v: str):
        """Undirected neighbourhood (both orientations for directed graphs)."""
        out = set()
        for a, b in self.edges:
            if a == v:
                out.add(b)
            elif b == v:
                out.add(a)
        return out

    def degree(self, v: str) -> int:
        return sum(1 for e in self.edges if v in e)

    def max_degree(self) -> int:
        return max((self.degree(v) for v in self.vertices), default=0)


def static_graph(vertices: Iterable[str], edges: Iterable[tuple], directed: bool = False) -> StaticGraph:
    vs = frozenset(vertices)
    canon = set()
    for u, v in edges:
        if u == v:
            raise SelfLoopError(f"self-loop at {u!r}")
        if u not in vs or v not in vs:
            raise UnknownVertexError(f"edge endpoint {u!r} or {v!r} not declared")
        canon.add((u, v) if directed else (min(u, v), max(u, v)))
    return StaticGraph(vs, frozenset(canon), directed)


@dataclass(frozen=True)
class TemporalGraph:
    """Immutable temporal graph with reachability semantics attached.

    ``strict`` selects strict (time labels strictly increase along a path)
    versus non-strict (non-decreasing) reachability.  The flag is threaded
    into encoders, formula builders and oracles.
    """

    vertices: frozenset
    edges: frozenset  # frozenset[TemporalEdge]
    directed: bool = False
    strict: bool = True

    # -- derived parameters -------------------------------------------------

    def lifetime(self) -> int:
        return max((e.t for e in self.edges), default=0)

    def temporal_degree(self, v: str) -> int:
        if v not in self.vertices:
            raise UnknownVertexError(f"unknown vertex {v!r}")
        return sum(1 for e in self.edges if v in e.endpoints())

    def max_temporal_degree(self) -> int:
        return max((self.temporal_degree(v) for v in self.vertices), default=0)

    def max_static_degree(self) -> int:
        return self.footprint().max_degree()

    def footprint(self) -> StaticGraph:
        return StaticGraph(
            self.vertices,
            frozenset(e.static() for e in self.edges),
            self.directed,
        )

    def snapshot(self, t: int) -> StaticGraph:
        if not 1 <= t <= self.lifetime():
            raise TimeOutOfRangeError(f"time {t} outside [1, {self.lifetime()}]")
        return StaticGraph(
            self.vertices,
            frozenset(e.static() for e in self.edges if e.t == t),
            self.directed,
        )

    def activity_interval(self, x) -> Optional[ActivityInterval]:
        """Activity interval of a vertex name or a static-edge pair; None if inactive."""
        if isinstance(x, tuple):
            key = x if self.directed else (min(x), max(x))
            times = [e.t for e in self.edges if e.static() == key]
        else:
            if x not in self.vertices:
                raise UnknownVertexError(f"unknown vertex {x!r}")
            times = [e.t for e in self.edges if x in e.endpoints()]
        if not times:
            return None
        return ActivityInterval(min(times), max(times))

    def edges_at(self, t: int):
        return [e for e in sorted(self.edges) if e.t == t]

    def incident(self, v: str):
        return [e for e in sorted(self.edges) if v in e.endpoints()]

    # -- reachability -------------------------------------------------------

    def reach_set(
        self,
        source: str,
        allowed_vertices=None,
        allowed_static_edges=None,
        allowed_temporal_edges=None,
        max_wait: Optional[int] = None,
    ) -> frozenset:
        """Vertices reachable from ``source`` by a temporal path.

        Uses an earliest-arrival label-correcting sweep.  With ``max_wait``
        (restless semantics: waiting between consecutive edges bounded by
        delta) label correction is unsound, so an exhaustive search over
        simple temporal paths is used instead; paths and walks coincide for
        the unbounded case but not under waiting bounds.

        Restrictions, when given, confine the path to the listed vertices,
        static edges (endpoint pairs) or temporal edges.
        """
        if source not in self.vertices:
            raise UnknownVertexError(f"unknown vertex {source!r}")
        edges = self._permitted_edges(allowed_vertices, allowed_static_edges, allowed_temporal_edges)
        if allowed_vertices is not None and source not in allowed_vertices:
            return frozenset({source})
        if max_wait is not None:
            return self._reach_restless(source, edges, max_wait)

        # arrival[v] = earliest arrival time; start can depart at any t >= 1
        arrival = {source: 0}
        out = {v: [] for v in self.vertices}
        for e in edges:
            out[e.u].append(e)
            if not self.directed:
                out[e.v].append(e)
        frontier = [source]
        while frontier:
            nxt = []
            for v in frontier:
                for e in out[v]:
                    w = e.v if e.u == v else e.u
                    if self.directed and e.u != v:
                        continue
                    ok = e.t > arrival[v] if (self.strict and arrival[v] > 0) else e.t >= arrival[v]
                    if not ok:
                        continue
                    if e.t < arrival.get(w, float("inf")):
                        arrival[w] = e.t
                        nxt.append(w)
            frontier = nxt
        return frozenset(arrival)

    def _permitted_edges(self, allowed_vertices, allowed_static_edges, allowed_temporal_edges):
        if allowed_static_edges is not None:
            allowed_static_edges = {
                se if self.directed else (min(se), max(se)) for se in allowed_static_edges
            }
        keep = []
        for e in sorted(self.edges):
            if allowed_vertices is not None and (e.u not in allowed_vertices or e.v not in allowed_vertices):
                continue
            if allowed_static_edges is not None and e.static() not in allowed_static_edges:
                continue
            if allowed_temporal_edges is not None and e not in allowed_temporal_edges:
                continue
            keep.append(e)
        return keep

    def _reach_restless(self, source, edges, delta):
        out = {}
        for e in edges:
            out.setdefault(e.u, []).append(e)
            if not self.directed:
                out.setdefault(e.v, []).append(e)
        reached = {source}

        def walk(v, last_t, visited):
            for e in out.get(v, ()):
                w = e.v if e.u == v else e.u
                if self.directed and e.u != v:
                    continue
                if w in visited:
                    continue
                if last_t is None:
                    ok = True
                else:
                    ok = (e.t > last_t if self.strict else e.t >= last_t) and e.t - last_t <= delta
                if not ok:
                    continue
                reached.add(w)
                walk(w, e.t, visited | {w})

        walk(source, None, {source})
        return frozenset(reached)


def temporal_graph(
    vertices: Iterable[str],
    edges: Iterable[tuple],
    directed: bool = False,
    strict: bool = True,
) -> TemporalGraph:
    """Build a canonical TemporalGraph from (u, v, t) triples.

    Duplicate triples collapse; undirected endpoints are sorted.  Endpoints
    must appear in ``vertices`` when an explicit vertex list is given (pass
    vertices=None to take the vertex set from the edges).
    """
    triples = list(edges)
    if vertices is None:
        vs = frozenset(x for u, v, _ in triples for x in (u, v))
    else:
        vs = frozenset(vertices)
    canon = set()
    for u, v, t in triples:
        if u == v:
            raise SelfLoopError(f"self-loop ({u!r}, {v!r}, {t})")
        if u not in vs or v not in vs:
            raise UnknownVertexError(f"edge endpoint {u!r} or {v!r} not declared")
        if t < 1:
            raise TimeOutOfRangeError(f"time label {t} must be a positive integer")
        if not directed:
            u, v = min(u, v), max(u, v)
        canon.add(TemporalEdge(u, v, int(t)))
    return TemporalGraph(vs, frozenset(canon), directed, strict)
