import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tempologic.cookbook import (
    EncodingTag,
    build_clique_is,
    build_colouring,
    build_component,
    build_cover,
    build_disjoint,
    build_exploration,
    build_feedback,
    build_matching,
    build_path,
    build_restless,
    build_separator,
    build_shortcut,
    build_spanner,
)
from tempologic.encodings import edge_id, encode, vertex_id
from tempologic.errors import UnsupportedCombinationError
from tempologic.logic import ast_stats, parse_formula, print_formula
from tempologic.logic.evaluate import Evaluator
from tempologic.oracles import InstanceConfig, oracle_reachable, random_instance
from tempologic.tgraph import TemporalEdge, temporal_graph
from tempologic.verify import PROBLEMS, run_trial

ALL = ("lifetime", "degree", "vim", "tim")


def ev_check(g, enc, cf, assignment):
    rs = encode(g, enc)
    translated = {}
    sorts = {fv.name: (fv.kind, fv.sort) for fv in cf.free_vars}
    for name, value in assignment.items():
        kind, sort = sorts[name]
        conv = vertex_id if sort == "V" else edge_id
        translated[name] = (
            conv(value) if kind == "element" else {conv(x) for x in value}
        )
    return Evaluator(rs).evaluate(
        cf.formula, translated, free=list(cf.free_vars), budget=None
    )


# -- frozen examples ------------------------------------------------------------


def test_path_examples_all_encodings(e1):
    for enc in ALL:
        cf = build_path(EncodingTag(enc, True), "path")
        assert ev_check(e1, enc, cf, {"u": "a", "v": "c"})
        assert not ev_check(e1, enc, cf, {"u": "c", "v": "a"})


def test_pathV_excluding_interior(e1):
    for enc in ALL:
        cf = build_path(EncodingTag(enc, True), "pathV")
        assert not ev_check(e1, enc, cf, {"u": "a", "v": "c", "X": {"a", "c"}})
        assert ev_check(e1, enc, cf, {"u": "a", "v": "c", "X": {"a", "b", "c"}})


def test_pe_path_candidate(e1):
    cf = build_path(EncodingTag("lifetime", True), "pe_path")
    both = set(e1.edges)
    assert ev_check(e1, "lifetime", cf, {"u": "a", "v": "c", "P": both})
    assert not ev_check(e1, "lifetime", cf, {"u": "c", "v": "a", "P": both})
    one = {TemporalEdge("a", "b", 1)}
    assert ev_check(e1, "lifetime", cf, {"u": "a", "v": "b", "P": one})
    assert not ev_check(e1, "lifetime", cf, {"u": "a", "v": "c", "P": one})


def test_fo_strict_unrolled_path(e1):
    cf = build_path(EncodingTag("lifetime", True), "fo_strict", {"lifetime": e1.lifetime()})
    assert ev_check(e1, "lifetime", cf, {"u": "a", "v": "c"})
    assert not ev_check(e1, "lifetime", cf, {"u": "c", "v": "a"})
    assert ev_check(e1, "lifetime", cf, {"u": "a", "v": "a"})  # stay put
    stats = ast_stats(cf.formula)
    assert stats["element_quantifiers"] >= e1.lifetime() + 1


def test_fo_strict_needs_strict():
    with pytest.raises(UnsupportedCombinationError):
        build_path(EncodingTag("lifetime", False), "fo_strict", {"lifetime": 2})


def test_disjoint_paths_diamond():
    diamond = temporal_graph(
        "abcd", [("a", "b", 1), ("b", "d", 2), ("a", "c", 1), ("c", "d", 2)]
    )
    for enc in ("lifetime", "degree"):
        cf = build_disjoint(EncodingTag(enc, True), "edge")
        assert ev_check(diamond, enc, cf, {"u": "a", "v": "d"})
        vf = build_disjoint(EncodingTag(enc, True), "vertex")
        assert not ev_check(diamond, enc, vf, {"u": "a", "v": "d"})


def test_edge_disjoint_false_on_single_route(e1):
    cf = build_disjoint(EncodingTag("lifetime", True), "edge")
    assert not ev_check(e1, "lifetime", cf, {"u": "a", "v": "c"})


def test_restless_examples():
    g = temporal_graph("abc", [("a", "b", 1), ("b", "c", 5)])
    for enc in ("lifetime", "vim", "tim"):
        f2 = build_restless(EncodingTag(enc, True), 2)
        f4 = build_restless(EncodingTag(enc, True), 4)
        assert not ev_check(g, enc, f2, {"u": "a", "v": "c"})
        assert ev_check(g, enc, f4, {"u": "a", "v": "c"})


def test_restless_degree_unsupported():
    with pytest.raises(UnsupportedCombinationError):
        build_restless(EncodingTag("degree", True), 1)


def test_component_examples(e1):
    for enc in ALL:
        open_f = build_component(EncodingTag(enc, True), "open")
        assert not ev_check(e1, enc, open_f, {"X": {"a", "b", "c"}})
        assert ev_check(e1, enc, open_f, {"X": {"b", "c"}})
        uni = build_component(EncodingTag(enc, True), "unilateral_open")
        assert ev_check(e1, enc, uni, {"X": {"a", "b", "c"}})


def test_component_mutual_pair():
    g = temporal_graph("ab", [("a", "b", 1), ("a", "b", 2)])
    cf = build_component(EncodingTag("lifetime", True), "open")
    assert ev_check(g, "lifetime", cf, {"X": {"a", "b"}})
    cf = build_component(EncodingTag("lifetime", True), "closed")
    assert ev_check(g, "lifetime", cf, {"X": {"a", "b"}})


def test_separator_examples(e1, triangle):
    for enc in ALL:
        cf = build_separator(EncodingTag(enc, True), "vertex")
        assert ev_check(e1, enc, cf, {"s": "a", "z": "c", "X": {"b"}})
        assert not ev_check(triangle, enc, cf, {"s": "a", "z": "c", "X": {"b"}})
    te = build_separator(EncodingTag("lifetime", True), "temporal_edge")
    cut = {TemporalEdge("b", "c", 2), TemporalEdge("a", "c", 3)}
    assert ev_check(triangle, "lifetime", te, {"s": "a", "z": "c", "F": cut})


def test_spanner_examples(e1):
    for enc in ALL:
        cf = build_spanner(EncodingTag(enc, True))
        assert ev_check(e1, enc, cf, {"X": set(e1.vertices)})
        assert not ev_check(e1, enc, cf, {"X": {"a", "c"}})


def test_exploration_examples(e1):
    v = build_exploration(EncodingTag("lifetime", True), "vertex", e1.lifetime())
    e = build_exploration(EncodingTag("lifetime", True), "edge", e1.lifetime())
    assert ev_check(e1, "lifetime", v, {})
    assert ev_check(e1, "lifetime", e, {})
    two = temporal_graph("abcd", [("a", "b", 1), ("c", "d", 1)])
    v2 = build_exploration(EncodingTag("lifetime", True), "vertex", two.lifetime())
    assert not ev_check(two, "lifetime", v2, {})


def test_exploration_lifetime_only():
    with pytest.raises(UnsupportedCombinationError):
        build_exploration(EncodingTag("vim", True), "vertex", 2)


def test_clique_examples():
    single = temporal_graph("ab", [("a", "b", 1)])
    for enc in ("lifetime", "vim"):
        cf = build_clique_is(EncodingTag(enc, True), "clique", 1)
        assert ev_check(single, enc, cf, {"X": {"a", "b"}})
    gap = temporal_graph("ab", [("a", "b", 1), ("a", "b", 3)])
    for enc in ("lifetime", "vim"):
        c1 = build_clique_is(EncodingTag(enc, True), "clique", 1)
        c2 = build_clique_is(EncodingTag(enc, True), "clique", 2)
        assert not ev_check(gap, enc, c1, {"X": {"a", "b"}})
        assert ev_check(gap, enc, c2, {"X": {"a", "b"}})


def test_independent_examples(e1):
    for enc in ("lifetime", "vim"):
        cf = build_clique_is(EncodingTag(enc, True), "independent", e1.lifetime())
        assert ev_check(e1, enc, cf, {"X": {"a", "c"}})
        assert not ev_check(e1, enc, cf, {"X": {"a", "b"}})


def test_feedback_examples(e1, triangle):
    for enc in ALL:
        cf = build_feedback(EncodingTag(enc, True), "temporal_edge")
        assert ev_check(e1, enc, cf, {"F": set()})
        assert not ev_check(triangle, enc, cf, {"F": set()})
        assert ev_check(triangle, enc, cf, {"F": {TemporalEdge("a", "c", 3)}})


def test_colouring_examples():
    single = temporal_graph("ab", [("a", "b", 1)])
    k1 = build_colouring(EncodingTag("lifetime", True), 1, 1)
    k2 = build_colouring(EncodingTag("lifetime", True), 2, 1)
    assert not ev_check(single, "lifetime", k1, {})
    assert ev_check(single, "lifetime", k2, {})
    tri = temporal_graph("abc", [("a", "b", 1), ("b", "c", 1), ("a", "c", 1)])
    assert not ev_check(tri, "lifetime", build_colouring(EncodingTag("lifetime", True), 2, 1), {})
    assert ev_check(tri, "lifetime", build_colouring(EncodingTag("lifetime", True), 3, 1), {})


def test_colouring_quantifier_count():
    for k, lam in ((2, 3), (3, 2)):
        cf = build_colouring(EncodingTag("lifetime", True), k, lam)
        assert ast_stats(cf.formula)["set_quantifiers"] == k * lam


def test_card_formula_length():
    for k in (2, 3, 4):
        cf = build_shortcut(EncodingTag("lifetime", True), "card", {"k": k})
        assert ast_stats(cf.formula)["inequality_atoms"] == k * (k - 1) // 2


def test_matching_examples():
    gap = temporal_graph("ab", [("a", "b", 1), ("a", "b", 3)])
    for enc in ("lifetime", "vim"):
        m2 = build_matching(EncodingTag(enc, True), "delta", 2)
        m3 = build_matching(EncodingTag(enc, True), "delta", 3)
        assert ev_check(gap, enc, m2, {"M": set(gap.edges)})
        assert not ev_check(gap, enc, m3, {"M": set(gap.edges)})


def test_temporal_matching_examples(e1):
    for enc in ALL:
        cf = build_matching(EncodingTag(enc, True), "temporal")
        assert not ev_check(e1, enc, cf, {"M": set(e1.edges)})
        assert ev_check(e1, enc, cf, {"M": {TemporalEdge("a", "b", 1)}})


def test_cover_examples(e1):
    reach = build_cover(EncodingTag("lifetime", True), "reach_ds")
    assert ev_check(e1, "lifetime", reach, {"S": {"a"}})
    assert not ev_check(e1, "lifetime", reach, {"S": {"c"}})
    perm = build_cover(EncodingTag("lifetime", True), "permanent_ds")
    assert ev_check(e1, "lifetime", perm, {"S": {"b"}})
    tp1 = build_cover(EncodingTag("lifetime", True), "tp_cover_tee", {"k": 1})
    assert ev_check(e1, "lifetime", tp1, {})


def test_degenerate_parameters_rejected():
    tag = EncodingTag("lifetime", True)
    with pytest.raises(ValueError):
        build_clique_is(tag, "clique", 0)
    with pytest.raises(ValueError):
        build_colouring(tag, 0, 2)
    with pytest.raises(ValueError):
        build_matching(tag, "delta", 0)
    with pytest.raises(ValueError):
        build_cover(tag, "tp_cover_tee", {"k": 0})


def test_unsupported_combinations():
    with pytest.raises(UnsupportedCombinationError):
        build_clique_is(EncodingTag("degree", True), "clique", 1)
    with pytest.raises(UnsupportedCombinationError):
        build_colouring(EncodingTag("tim", True), 2, 2)
    with pytest.raises(UnsupportedCombinationError):
        build_cover(EncodingTag("vim", True), "tvc", {"lifetime": 2})


# -- structural properties -----------------------------------------------------


def _registered_formulas():
    g = random_instance(InstanceConfig(n=3, lifetime=2, p=0.7, seed=5))
    for name, defn in sorted(PROBLEMS.items()):
        params, _ = defn.sample(g, 3)
        for enc in defn.encodings:
            for strict in (True, False):
                try:
                    cf = defn.build(EncodingTag(enc, strict), g, params)
                except UnsupportedCombinationError:
                    continue
                yield name, enc, strict, cf


def test_parse_print_round_trip_for_all_registered_formulas():
    count = 0
    for name, enc, strict, cf in _registered_formulas():
        text = print_formula(cf.formula)
        assert parse_formula(text) == cf.formula, (name, enc, strict)
        count += 1
    assert count > 100


def test_strict_true_implies_nonstrict_true_for_paths():
    for seed in range(25):
        g = random_instance(InstanceConfig(n=4, lifetime=3, p=0.4, seed=seed, strict=True))
        verts = sorted(g.vertices)
        u, v = verts[0], verts[-1]
        if oracle_reachable(g, u, v, strict=True):
            assert oracle_reachable(g, u, v, strict=False)
            for enc in ("lifetime", "degree"):
                gn = temporal_graph(
                    verts, [(e.u, e.v, e.t) for e in g.edges], strict=False
                )
                cf = build_path(EncodingTag(enc, False), "path")
                assert ev_check(gn, enc, cf, {"u": u, "v": v})


@settings(max_examples=20, deadline=None)
@given(seed=st.integers(0, 2000))
def test_encoding_independence_path(seed):
    g = random_instance(InstanceConfig(n=4, lifetime=3, p=0.4, seed=seed))
    verts = sorted(g.vertices)
    u, v = verts[0], verts[1]
    verdicts = set()
    for enc in ALL:
        cf = build_path(EncodingTag(enc, True), "path")
        verdicts.add(ev_check(g, enc, cf, {"u": u, "v": v}))
    assert len(verdicts) == 1


@settings(max_examples=12, deadline=None)
@given(seed=st.integers(0, 10_000))
def test_master_property_spot_checks(seed):
    # one random problem cell per draw, mirroring the harness
    names = sorted(PROBLEMS)
    name = names[seed % len(names)]
    defn = PROBLEMS[name]
    enc = defn.encodings[seed % len(defn.encodings)]
    ok, detail = run_trial(defn, enc, seed)
    assert ok, (name, enc, detail)
