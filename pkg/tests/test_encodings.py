import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tempologic.decomp import TimDecomposition, tim_decomposition
from tempologic.encodings import (
    encode,
    encode_degree,
    encode_lifetime,
    encode_tim,
    encode_vim,
    structure_from_json,
    structure_stats,
    structure_to_json,
    validate_structure,
)
from tempologic.errors import InvalidInputError
from tempologic.oracles import InstanceConfig, random_instance
from tempologic.tgraph import temporal_graph


def test_lifetime_e1(e1):
    rs = encode_lifetime(e1)
    stats = structure_stats(rs)
    assert stats["sorts"] == {"V": 3, "TE": 2, "L": 2}
    assert stats["relations"]["pres"] == 2
    assert rs.relations["ltT"].tuples == frozenset({("t:1", "t:2")})
    assert validate_structure(rs)


def test_lifetime_single_edge_no_order():
    g = temporal_graph("ab", [("a", "b", 1)])
    rs = encode_lifetime(g)
    assert rs.relations["ltT"].tuples == frozenset()


def test_lifetime_directed_uses_source_target():
    g = temporal_graph("abc", [("a", "b", 1), ("b", "c", 2)], directed=True)
    rs = encode_lifetime(g)
    assert "inc" not in rs.relations
    assert len(rs.relations["source"].tuples) == 2
    assert len(rs.relations["target"].tuples) == 2
    assert validate_structure(rs)


def test_degree_e1_strict_psuc(e1):
    rs = encode_degree(e1)
    assert rs.relations["psuc"].tuples == frozenset({("te:a|b@1", "te:b|c@2")})
    assert validate_structure(rs)
    assert structure_stats(rs)["relations"]["psuc"] == 1


def test_degree_equal_times():
    strict = temporal_graph("abc", [("a", "b", 1), ("b", "c", 1)], strict=True)
    assert encode_degree(strict).relations["psuc"].tuples == frozenset()
    nonstrict = temporal_graph("abc", [("a", "b", 1), ("b", "c", 1)], strict=False)
    assert encode_degree(nonstrict).relations["psuc"].tuples == frozenset(
        {("te:a|b@1", "te:b|c@1"), ("te:b|c@1", "te:a|b@1")}
    )


def test_vim_e1(e1):
    rs = encode_vim(e1)
    assert rs.relations["bag"].tuples == frozenset(
        {("v:a", "bag:1"), ("v:b", "bag:1"), ("v:b", "bag:2"), ("v:c", "bag:2")}
    )
    assert rs.relations["next"].tuples == frozenset({("bag:1", "bag:2")})
    assert validate_structure(rs)


def test_vim_late_edge_has_full_chain():
    g = temporal_graph("uv", [("u", "v", 3)])
    rs = encode_vim(g)
    assert rs.relations["next"].tuples == frozenset(
        {("bag:1", "bag:2"), ("bag:2", "bag:3")}
    )
    assert rs.relations["bag"].tuples == frozenset(
        {("v:u", "bag:3"), ("v:v", "bag:3")}
    )


def test_vim_edgeless():
    g = temporal_graph("ab", [])
    rs = encode_vim(g)
    assert rs.sorts["B"] == ()
    assert all(not rel.tuples for rel in rs.relations.values())
    assert validate_structure(rs)


def test_tim_e1(e1):
    d = tim_decomposition(e1)
    rs = encode_tim(e1, d)
    assert len(rs.sorts["B"]) == 4
    assert len(rs.relations["next"].tuples) == 3
    # next runs from earlier-time bags to later-time bags
    for a, b in rs.relations["next"].tuples:
        ta = d.tau[a.split(":", 1)[1]]
        tb = d.tau[b.split(":", 1)[1]]
        assert tb == ta + 1
    assert validate_structure(rs)


def test_tim_rejects_invalid(e1):
    d = tim_decomposition(e1)
    bad = TimDecomposition(d.nodes, {i: frozenset() for i in d.nodes}, dict(d.tau), frozenset())
    with pytest.raises(InvalidInputError):
        encode_tim(e1, bad)


def test_validate_rejects_missing_element(e1):
    rs = encode_lifetime(e1)
    broken_rel = rs.relations["pres"]
    tampered = type(broken_rel)(
        "pres", 2, broken_rel.tuples | {("te:ghost@9", "t:1")}
    )
    rels = dict(rs.relations)
    rels["pres"] = tampered
    bad = type(rs)(rs.sorts, rels, rs.provenance)
    assert not validate_structure(bad)


def test_validate_rejects_partial_order(e1):
    rs = encode_lifetime(e1)
    rels = dict(rs.relations)
    rels["ltT"] = type(rels["ltT"])("ltT", 2, frozenset())
    bad = type(rs)(rs.sorts, rels, rs.provenance)
    assert not validate_structure(bad)


def test_stats_degree(e1):
    stats = structure_stats(encode_degree(e1))
    assert stats["sorts"] == {"V": 3, "TE": 2}
    assert stats["relations"]["psuc"] == 1


def test_json_round_trip(e1):
    for enc in ("lifetime", "degree", "vim", "tim"):
        rs = encode(e1, enc)
        blob = json.dumps(structure_to_json(rs))
        back = structure_from_json(json.loads(blob))
        assert back == rs


@settings(max_examples=50, deadline=None)
@given(
    seed=st.integers(0, 5000),
    n=st.integers(1, 5),
    lam=st.integers(0, 4),
    p=st.sampled_from([0.2, 0.5]),
    directed=st.booleans(),
    strict=st.booleans(),
)
def test_every_encoder_output_validates(seed, n, lam, p, directed, strict):
    g = random_instance(
        InstanceConfig(n=n, lifetime=lam, p=p, directed=directed, strict=strict, seed=seed)
    )
    for enc in ("lifetime", "degree", "vim", "tim"):
        rs = encode(g, enc)
        assert validate_structure(rs), enc
        stats = structure_stats(rs)
        assert stats["sorts"]["V"] == n
        assert stats["sorts"]["TE"] == len(g.edges)


@settings(max_examples=30, deadline=None)
@given(seed=st.integers(0, 5000), n=st.integers(2, 5), lam=st.integers(1, 3))
def test_directed_and_undirected_share_universe(seed, n, lam):
    directed = random_instance(InstanceConfig(n=n, lifetime=lam, p=0.4, directed=False, seed=seed))
    as_directed = temporal_graph(
        sorted(directed.vertices),
        [(e.u, e.v, e.t) for e in directed.edges],
        directed=True,
        strict=directed.strict,
    )
    for enc in ("lifetime", "degree"):
        ru = encode(directed, enc)
        rd = encode(as_directed, enc)
        assert ru.universe() == rd.universe()
        assert set(ru.relations) - {"inc"} == set(rd.relations) - {"source", "target"}


def test_lifetime_pres_and_order_sizes():
    g = random_instance(InstanceConfig(n=4, lifetime=4, p=0.5, seed=11))
    rs = encode_lifetime(g)
    lam = g.lifetime()
    assert len(rs.relations["pres"].tuples) == len(g.edges)
    assert len(rs.relations["ltT"].tuples) == lam * (lam - 1) // 2


def test_tim_next_equals_tree_edges():
    g = random_instance(InstanceConfig(n=4, lifetime=3, p=0.5, seed=3))
    d = tim_decomposition(g)
    rs = encode_tim(g, d)
    expected = {(f"bag:{j}", f"bag:{i}") for (i, j) in d.tree_edges}
    assert rs.relations["next"].tuples == frozenset(expected)
