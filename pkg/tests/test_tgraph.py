import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tempologic.errors import SelfLoopError, TimeOutOfRangeError, UnknownVertexError
from tempologic.oracles import InstanceConfig, oracle_reachable, random_instance
from tempologic.tgraph import ActivityInterval, TemporalEdge, temporal_graph


def test_construction_canonicalizes(e1):
    assert e1.lifetime() == 2
    assert len(e1.edges) == 2
    assert TemporalEdge("a", "b", 1) in e1.edges


def test_duplicate_triples_collapse():
    g = temporal_graph("ab", [("a", "b", 1), ("b", "a", 1)])
    assert len(g.edges) == 1


def test_self_loop_rejected():
    with pytest.raises(SelfLoopError):
        temporal_graph("a", [("a", "a", 1)])


def test_undeclared_endpoint_rejected():
    with pytest.raises(UnknownVertexError):
        temporal_graph("ab", [("a", "c", 1)])


def test_footprint(e1):
    fp = e1.footprint()
    assert fp.has_edge("a", "b") and fp.has_edge("c", "b")
    assert not fp.has_edge("a", "c")
    assert fp.vertices == frozenset("abc")


def test_footprint_dedups_over_time():
    g = temporal_graph("ab", [("a", "b", 1), ("a", "b", 5)])
    assert len(g.footprint().edges) == 1


def test_snapshot(e1):
    assert e1.snapshot(1).edges == frozenset({("a", "b")})
    assert e1.snapshot(2).edges == frozenset({("b", "c")})
    with pytest.raises(TimeOutOfRangeError):
        e1.snapshot(3)


def test_degrees(e1):
    assert e1.max_temporal_degree() == 2
    assert e1.temporal_degree("b") == 2
    assert e1.temporal_degree("a") == 1
    assert e1.max_static_degree() == 2


def test_star_temporal_degree():
    g = temporal_graph("abcd", [("c", "a", 1), ("c", "b", 2), ("c", "d", 3)])
    assert g.max_temporal_degree() == 3


def test_edgeless():
    g = temporal_graph("a", [])
    assert g.lifetime() == 0
    assert g.max_temporal_degree() == 0
    assert g.footprint().edges == frozenset()


def test_activity_interval(e1):
    assert e1.activity_interval("b") == ActivityInterval(1, 2)
    assert e1.activity_interval("a") == ActivityInterval(1, 1)
    assert temporal_graph("a", []).activity_interval("a") is None
    assert e1.activity_interval(("a", "b")) == ActivityInterval(1, 1)
    with pytest.raises(UnknownVertexError):
        e1.activity_interval("z")


def test_reach_set_strict(e1):
    assert e1.reach_set("a") == frozenset("abc")
    # undirected: c still steps to b over the time-2 edge, but never on to a
    assert e1.reach_set("c") == frozenset("bc")
    assert "a" not in e1.reach_set("c")


def test_reach_set_needs_time_order():
    g = temporal_graph("abc", [("a", "b", 2), ("b", "c", 1)])
    assert g.reach_set("a") == frozenset("ab")


def test_reach_set_nonstrict_at_equal_times():
    g = temporal_graph("abc", [("a", "b", 1), ("b", "c", 1)], strict=False)
    assert g.reach_set("a") == frozenset("abc")
    strict = temporal_graph("abc", [("a", "b", 1), ("b", "c", 1)], strict=True)
    assert strict.reach_set("a") == frozenset("ab")


def test_reach_set_restrictions(e1):
    assert e1.reach_set("a", allowed_vertices={"a", "c"}) == frozenset("a")
    assert e1.reach_set("a", allowed_static_edges={("a", "b")}) == frozenset("ab")
    only_bc = {e for e in e1.edges if e.u == "b"}
    assert e1.reach_set("a", allowed_temporal_edges=only_bc) == frozenset("a")


def test_reach_set_restless():
    g = temporal_graph("abc", [("a", "b", 1), ("b", "c", 5)])
    assert "c" not in g.reach_set("a", max_wait=2)
    assert "c" in g.reach_set("a", max_wait=4)
    direct = temporal_graph("ab", [("a", "b", 7)])
    assert direct.reach_set("a", max_wait=1) == frozenset("ab")


def test_directed_reach():
    g = temporal_graph("abc", [("a", "b", 1), ("b", "c", 2)], directed=True)
    assert g.reach_set("a") == frozenset("abc")
    assert g.reach_set("b") == frozenset("bc")
    rev = temporal_graph("abc", [("b", "a", 1), ("c", "b", 2)], directed=True)
    assert rev.reach_set("a") == frozenset("a")


@settings(max_examples=60, deadline=None)
@given(
    seed=st.integers(0, 10_000),
    n=st.integers(2, 5),
    lam=st.integers(1, 4),
    p=st.sampled_from([0.2, 0.5, 0.8]),
    strict=st.booleans(),
)
def test_reach_set_matches_oracle(seed, n, lam, p, strict):
    g = random_instance(InstanceConfig(n=n, lifetime=lam, p=p, strict=strict, seed=seed))
    verts = sorted(g.vertices)
    for u in verts:
        reach = g.reach_set(u)
        for v in verts:
            assert (v in reach) == oracle_reachable(g, u, v)


@settings(max_examples=40, deadline=None)
@given(seed=st.integers(0, 10_000), n=st.integers(2, 5), lam=st.integers(1, 4))
def test_strict_reach_subset_of_nonstrict(seed, n, lam):
    gs = random_instance(InstanceConfig(n=n, lifetime=lam, p=0.5, strict=True, seed=seed))
    gn = random_instance(InstanceConfig(n=n, lifetime=lam, p=0.5, strict=False, seed=seed))
    for u in sorted(gs.vertices):
        assert gs.reach_set(u) <= gn.reach_set(u)


@settings(max_examples=40, deadline=None)
@given(seed=st.integers(0, 10_000), n=st.integers(2, 4), lam=st.integers(1, 3))
def test_reach_monotone_under_edge_addition(seed, n, lam):
    g = random_instance(InstanceConfig(n=n, lifetime=lam, p=0.4, seed=seed))
    verts = sorted(g.vertices)
    extra = temporal_graph(
        verts,
        [(e.u, e.v, e.t) for e in g.edges] + [(verts[0], verts[-1], max(1, lam))],
        strict=g.strict,
    )
    for u in verts:
        assert g.reach_set(u) <= extra.reach_set(u)


@settings(max_examples=40, deadline=None)
@given(seed=st.integers(0, 10_000), n=st.integers(2, 5), lam=st.integers(1, 4))
def test_snapshots_partition_edges(seed, n, lam):
    g = random_instance(InstanceConfig(n=n, lifetime=lam, p=0.5, seed=seed))
    total = sum(len(g.snapshot(t).edges and {e for e in g.edges if e.t == t}) for t in range(1, g.lifetime() + 1))
    assert total == len(g.edges)


def test_degree_sum_counts_each_edge_twice():
    g = random_instance(InstanceConfig(n=5, lifetime=3, p=0.6, seed=7))
    assert sum(g.temporal_degree(v) for v in g.vertices) == 2 * len(g.edges)
