import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tempologic.decomp import (
    PathDecomposition,
    TimDecomposition,
    path_decomposition_from_vim,
    tim_decomposition,
    tim_width_exact_tiny,
    tree_decomposition_footprint,
    tree_decomposition_from_tim,
    treewidth_exact_tiny,
    validate_tim,
    validate_tree_decomposition,
    vim_decomposition,
)
from tempologic.errors import InvalidInputError, TooLargeError
from tempologic.oracles import InstanceConfig, random_instance
from tempologic.tgraph import static_graph, temporal_graph


def complete_graph(k):
    names = [chr(ord("a") + i) for i in range(k)]
    return static_graph(names, [(a, b) for i, a in enumerate(names) for b in names[i + 1 :]])


def cycle_graph(k):
    names = [chr(ord("a") + i) for i in range(k)]
    return static_graph(names, list(zip(names, names[1:])) + [(names[-1], names[0])])


# -- VIM ------------------------------------------------------------------------


def test_vim_e1(e1):
    d = vim_decomposition(e1)
    assert d.bags == (frozenset("ab"), frozenset("bc"))
    assert d.width() == 2


def test_vim_single_late_edge():
    g = temporal_graph("uv", [("u", "v", 3)])
    d = vim_decomposition(g)
    assert d.bags == (frozenset(), frozenset(), frozenset("uv"))
    assert d.width() == 2


def test_vim_temporally_connected_is_n():
    g = temporal_graph("abc", [("a", "b", 1), ("b", "c", 2), ("a", "b", 3), ("b", "c", 4)], strict=True)
    verts = sorted(g.vertices)
    assert all(v in g.reach_set(u) for u in verts for v in verts)
    assert vim_decomposition(g).width() == len(g.vertices)


def test_vim_idempotent(e1):
    assert vim_decomposition(e1) == vim_decomposition(e1)


# -- TIM ------------------------------------------------------------------------


def test_tim_e1(e1):
    d = tim_decomposition(e1)
    assert validate_tim(e1, d)
    assert len(d.nodes) == 4
    assert sorted(sorted(d.bags[i]) for i in d.nodes_at(1)) == [["a", "b"], ["c"]]
    assert sorted(sorted(d.bags[i]) for i in d.nodes_at(2)) == [["a"], ["b", "c"]]
    assert d.width() == 2


def test_tim_gap_merges_cycle():
    g = temporal_graph("ab", [("a", "b", 1), ("a", "b", 3)])
    d = tim_decomposition(g)
    assert validate_tim(g, d)
    # the two singletons at t=2 sit on a cycle and must merge
    assert [sorted(d.bags[i]) for i in d.nodes_at(2)] == [["a", "b"]]
    assert d.width() == 2
    assert len(d.nodes) == 3


def test_tim_edgeless():
    g = temporal_graph("ab", [])
    d = tim_decomposition(g)
    assert d.nodes == ()
    assert d.width() == 0
    assert validate_tim(g, d)


def test_validate_tim_detects_missing_vertex(e1):
    d = tim_decomposition(e1)
    bags = dict(d.bags)
    victim = d.nodes_at(2)[0]
    bags[victim] = frozenset()
    bad = TimDecomposition(d.nodes, bags, dict(d.tau), d.tree_edges)
    v = validate_tim(e1, bad)
    assert not v and v.clause in ("i", "ii", "iii")


def test_validate_tim_detects_wrong_tree_edges():
    g = temporal_graph("ab", [("a", "b", 1), ("a", "b", 2)])
    nodes = ("t1#0", "t2#0")
    bags = {"t1#0": frozenset("ab"), "t2#0": frozenset("ab")}
    tau = {"t1#0": 1, "t2#0": 2}
    bad = TimDecomposition(nodes, bags, tau, frozenset())  # omits the required edge
    v = validate_tim(g, bad)
    assert not v and v.clause == "iii"


def test_validate_tim_detects_cycle():
    # clauses (i) and (ii) hold, but the derived next-graph is a 4-cycle
    g = temporal_graph("ab", [("a", "b", 1), ("a", "b", 3)])
    nodes = ("t1#0", "t2#0", "t2#1", "t3#0")
    bags = {
        "t1#0": frozenset("ab"),
        "t2#0": frozenset("a"),
        "t2#1": frozenset("b"),
        "t3#0": frozenset("ab"),
    }
    tau = {"t1#0": 1, "t2#0": 2, "t2#1": 2, "t3#0": 3}
    edges = frozenset(
        {("t2#0", "t1#0"), ("t2#1", "t1#0"), ("t3#0", "t2#0"), ("t3#0", "t2#1")}
    )
    bad = TimDecomposition(nodes, bags, tau, edges)
    v = validate_tim(g, bad)
    assert not v and v.clause == "iii"
    assert "cycle" in v.detail


def test_tim_exact_tiny_values(e1):
    assert tim_width_exact_tiny(e1) == 2
    gap = temporal_graph("ab", [("a", "b", 1), ("a", "b", 3)])
    assert tim_width_exact_tiny(gap) == 2
    single = temporal_graph("uv", [("u", "v", 1)])
    assert tim_width_exact_tiny(single) == 2


def test_tim_exact_tiny_ceiling():
    g = random_instance(InstanceConfig(n=5, lifetime=2, p=0.5, seed=1))
    with pytest.raises(TooLargeError):
        tim_width_exact_tiny(g)


@settings(max_examples=60, deadline=None)
@given(seed=st.integers(0, 5000), n=st.integers(1, 4), lam=st.integers(0, 3), p=st.sampled_from([0.3, 0.7]))
def test_tim_heuristic_valid_and_bounded_below_by_exact(seed, n, lam, p):
    g = random_instance(InstanceConfig(n=n, lifetime=lam, p=p, seed=seed))
    d = tim_decomposition(g)
    assert validate_tim(g, d)
    assert d.width() >= tim_width_exact_tiny(g)


# -- static tree decompositions ----------------------------------------------------


def test_min_fill_path():
    sg = static_graph("abc", [("a", "b"), ("b", "c")])
    td = tree_decomposition_footprint(sg)
    assert validate_tree_decomposition(sg.vertices, sg.edges, td)
    assert td.width() == 1


def test_min_fill_k4():
    sg = complete_graph(4)
    td = tree_decomposition_footprint(sg)
    assert validate_tree_decomposition(sg.vertices, sg.edges, td)
    assert td.width() == 3


def test_min_fill_c4():
    sg = cycle_graph(4)
    td = tree_decomposition_footprint(sg)
    assert validate_tree_decomposition(sg.vertices, sg.edges, td)
    assert td.width() == 2 == treewidth_exact_tiny(sg)


def test_min_fill_handles_isolated_and_disconnected():
    sg = static_graph("abcd", [("a", "b")])
    td = tree_decomposition_footprint(sg)
    assert validate_tree_decomposition(sg.vertices, sg.edges, td)


def test_treewidth_exact_known_values():
    for k in range(2, 6):
        assert treewidth_exact_tiny(complete_graph(k)) == k - 1
    tree = static_graph("abcde", [("a", "b"), ("a", "c"), ("c", "d"), ("c", "e")])
    assert treewidth_exact_tiny(tree) == 1
    assert treewidth_exact_tiny(cycle_graph(6)) == 2


def test_treewidth_exact_ceiling():
    with pytest.raises(TooLargeError):
        treewidth_exact_tiny(complete_graph(9))


@settings(max_examples=40, deadline=None)
@given(seed=st.integers(0, 5000), n=st.integers(1, 6), lam=st.integers(0, 4))
def test_min_fill_width_at_least_exact(seed, n, lam):
    g = random_instance(InstanceConfig(n=n, lifetime=lam, p=0.5, seed=seed))
    sg = g.footprint()
    td = tree_decomposition_footprint(sg)
    assert validate_tree_decomposition(sg.vertices, sg.edges, td)
    assert td.width() >= treewidth_exact_tiny(sg)


# -- transfer witnesses -------------------------------------------------------------


def test_path_decomposition_from_vim_e1(e1):
    pd = path_decomposition_from_vim(e1)
    assert isinstance(pd, PathDecomposition)
    assert [sorted(pd.bags[n]) for n in pd.nodes] == [["a", "b"], ["b", "c"]]
    assert pd.width() == 1


def test_path_decomposition_from_vim_triangle():
    g = temporal_graph(
        "abc",
        [("a", "b", 1), ("b", "c", 1), ("a", "c", 1), ("a", "b", 2), ("b", "c", 2), ("a", "c", 2)],
    )
    pd = path_decomposition_from_vim(g)
    assert pd.width() == 2


def test_path_decomposition_from_vim_edgeless():
    g = temporal_graph("ab", [])
    pd = path_decomposition_from_vim(g)
    fp = g.footprint()
    assert validate_tree_decomposition(fp.vertices, fp.edges, pd)


def test_tree_from_tim_e1(e1):
    d = tim_decomposition(e1)
    td = tree_decomposition_from_tim(e1, d)
    assert td.width() <= 1
    fp = e1.footprint()
    assert validate_tree_decomposition(fp.vertices, fp.edges, td)


def test_tree_from_tim_rejects_invalid(e1):
    d = tim_decomposition(e1)
    bags = {i: frozenset() for i in d.nodes}
    bad = TimDecomposition(d.nodes, bags, dict(d.tau), frozenset())
    with pytest.raises(InvalidInputError):
        tree_decomposition_from_tim(e1, bad)


@settings(max_examples=60, deadline=None)
@given(seed=st.integers(0, 5000), n=st.integers(1, 6), lam=st.integers(0, 4), p=st.sampled_from([0.2, 0.5]))
def test_vim_and_tim_witness_width_bounds(seed, n, lam, p):
    g = random_instance(InstanceConfig(n=n, lifetime=lam, p=p, seed=seed))
    pd = path_decomposition_from_vim(g)
    assert pd.width() <= max(vim_decomposition(g).width(), 1) - 1 or pd.width() <= vim_decomposition(g).width()
    d = tim_decomposition(g)
    td = tree_decomposition_from_tim(g, d)
    assert td.width() <= d.width()
