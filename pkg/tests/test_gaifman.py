import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tempologic.decomp import tim_decomposition, tree_decomposition_footprint
from tempologic.encodings import encode_degree, encode_lifetime, encode_vim
from tempologic.errors import TooLargeError
from tempologic.gaifman import (
    SparsityProfile,
    degree_bound_check,
    gaifman_dot,
    gaifman_edge_list,
    gaifman_graph,
    has_topological_minor,
    nowhere_dense_witness_check,
    transfer_pd_vim,
    transfer_td_degree,
    transfer_td_lifetime,
    transfer_td_tim,
)
from tempologic.oracles import InstanceConfig, random_instance, random_tree_instance
from tempologic.tgraph import static_graph, temporal_graph


def cycle_graph(k):
    names = [chr(ord("a") + i) for i in range(k)]
    return static_graph(names, list(zip(names, names[1:])) + [(names[-1], names[0])])


def test_gaifman_lifetime_e1(e1):
    gf = gaifman_graph(encode_lifetime(e1))
    assert len(gf.vertices) == 7
    expected = {
        ("te:a|b@1", "v:a"), ("te:a|b@1", "v:b"), ("te:a|b@1", "t:1"),
        ("te:b|c@2", "v:b"), ("te:b|c@2", "v:c"), ("te:b|c@2", "t:2"),
        ("t:1", "t:2"),
    }
    assert gf.edges == frozenset(tuple(sorted(e)) for e in expected)


def test_gaifman_degree_e1(e1):
    gf = gaifman_graph(encode_degree(e1))
    assert len(gf.edges) == 5
    assert gf.max_degree() == 3


def test_gaifman_ignores_unary(e1):
    rs = encode_degree(e1)
    rels = {name: rel for name, rel in rs.relations.items() if name == "psuc"}
    only_unary = type(rs)(rs.sorts, {}, rs.provenance)
    assert gaifman_graph(only_unary).edges == frozenset()


def test_transfer_lifetime_e1(e1):
    td = tree_decomposition_footprint(e1.footprint())
    report = transfer_td_lifetime(e1, td)
    assert report.valid and report.all_bounds_hold
    bags = set(map(frozenset, report.decomposition.bags.values()))
    assert frozenset({"v:a", "v:b", "te:a|b@1", "t:1", "t:2"}) in bags
    assert frozenset({"v:b", "v:c", "te:b|c@2", "t:1", "t:2"}) in bags


def test_transfer_degree_e1(e1):
    td = tree_decomposition_footprint(e1.footprint())
    report = transfer_td_degree(e1, td)
    assert report.valid and report.all_bounds_hold
    bags = set(map(frozenset, report.decomposition.bags.values()))
    assert frozenset({"v:a", "v:b", "te:a|b@1", "te:b|c@2"}) in bags


def test_transfer_degree_star():
    g = temporal_graph("abcd", [("c", "a", 1), ("c", "b", 2), ("c", "d", 3)])
    td = tree_decomposition_footprint(g.footprint())
    report = transfer_td_degree(g, td)
    assert report.valid and report.all_bounds_hold


def test_transfer_vim_e1(e1):
    report = transfer_pd_vim(e1)
    assert report.valid and report.all_bounds_hold
    bags = [report.decomposition.bags[n] for n in report.decomposition.nodes]
    assert frozenset({"v:a", "v:b", "te:a|b@1", "bag:1", "bag:2"}) in bags
    assert frozenset({"v:b", "v:c", "te:b|c@2", "bag:2"}) in bags


def test_transfer_vim_single_edge():
    g = temporal_graph("uv", [("u", "v", 1)])
    report = transfer_pd_vim(g)
    assert report.valid
    assert report.decomposition.bags["B1"] == frozenset(
        {"v:u", "v:v", "te:u|v@1", "bag:1"}
    )


def test_transfer_tim_e1(e1):
    report = transfer_td_tim(e1, tim_decomposition(e1))
    assert report.valid and report.all_bounds_hold
    assert len(report.bounds) == 4


def test_transfers_edgeless():
    g = temporal_graph("ab", [])
    td = tree_decomposition_footprint(g.footprint())
    assert transfer_td_lifetime(g, td).valid
    assert transfer_td_degree(g, td).valid
    assert transfer_pd_vim(g).valid
    assert transfer_td_tim(g, tim_decomposition(g)).valid


@settings(max_examples=60, deadline=None)
@given(
    seed=st.integers(0, 20_000),
    n=st.integers(1, 6),
    lam=st.integers(0, 4),
    p=st.sampled_from([0.2, 0.5]),
)
def test_all_transfers_validate_and_bound(seed, n, lam, p):
    g = random_instance(InstanceConfig(n=n, lifetime=lam, p=p, seed=seed))
    td = tree_decomposition_footprint(g.footprint())
    for report in (
        transfer_td_lifetime(g, td),
        transfer_td_degree(g, td),
        transfer_pd_vim(g),
        transfer_td_tim(g, tim_decomposition(g)),
    ):
        assert report.valid
        assert report.all_bounds_hold


def test_degree_bound_e1(e1):
    report = degree_bound_check(e1)
    assert report.max_gaifman_degree == 3
    assert report.bound == 4
    assert report.holds


def test_degree_bound_tight_on_single_edge():
    g = temporal_graph("uv", [("u", "v", 1)])
    report = degree_bound_check(g)
    assert report.max_gaifman_degree == 2 == report.bound


def test_degree_bound_star():
    g = temporal_graph("abcd", [("c", "a", 1), ("c", "b", 2), ("c", "d", 3)])
    report = degree_bound_check(g)
    assert report.holds
    assert report.bound == 6


@settings(max_examples=80, deadline=None)
@given(
    seed=st.integers(0, 50_000),
    n=st.integers(1, 6),
    lam=st.integers(0, 4),
    p=st.sampled_from([0.2, 0.5, 0.9]),
    directed=st.booleans(),
)
def test_degree_bound_always_holds(seed, n, lam, p, directed):
    g = random_instance(InstanceConfig(n=n, lifetime=lam, p=p, directed=directed, seed=seed))
    assert degree_bound_check(g).holds


# -- topological minors ---------------------------------------------------------


def test_k3_in_c6_at_depth_1():
    model = has_topological_minor(cycle_graph(6), 3, 1)
    assert model is not None
    assert model.verify(cycle_graph(6), 1)


def test_k3_not_in_c6_at_depth_0():
    assert has_topological_minor(cycle_graph(6), 3, 0) is None


def test_k2_depth_0_is_an_edge():
    assert has_topological_minor(cycle_graph(4), 2, 0) is not None
    edgeless = static_graph("ab", [])
    assert has_topological_minor(edgeless, 2, 0) is None


def test_minor_ceiling():
    with pytest.raises(TooLargeError):
        has_topological_minor(cycle_graph(6), 6, 0)


@settings(max_examples=40, deadline=None)
@given(seed=st.integers(0, 5000), n=st.integers(2, 6), q=st.integers(2, 3))
def test_minor_monotone_in_depth(seed, n, q):
    g = random_instance(InstanceConfig(n=n, lifetime=1, p=0.5, seed=seed))
    host = g.footprint()
    for r in (0, 1):
        if has_topological_minor(host, q, r) is not None:
            assert has_topological_minor(host, q, r + 1) is not None


def test_nowhere_dense_on_tree_footprints():
    for seed in range(10):
        g = random_tree_instance(4, 2, seed)
        report = nowhere_dense_witness_check(g, SparsityProfile.constant(3), r=1)
        assert report.holds


def test_nowhere_dense_vacuous_case():
    g = temporal_graph("ab", [("a", "b", 1)])
    report = nowhere_dense_witness_check(g, SparsityProfile.constant(3), r=0)
    # clique size 3 + 2*1 = 5 exceeds the 4-element universe
    assert report.vacuous and report.holds
    assert report.clique_size == 5


def test_exports(e1):
    gf = gaifman_graph(encode_vim(e1))
    text = gaifman_edge_list(gf)
    assert "v:b" in text
    dot = gaifman_dot(gf)
    assert dot.startswith("graph gaifman {") and dot.rstrip().endswith("}")
