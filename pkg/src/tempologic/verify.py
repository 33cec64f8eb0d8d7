"""Randomized cross-validation harness: cookbook formulas versus oracles.

For every problem cell (problem x supported encoding) the harness draws
seeded random instances, samples a candidate assignment, evaluates the
catalogue formula on the chosen encoding, runs the independent brute-force
oracle on the plain graph, and compares verdicts.  A disagreement record
carries everything needed to replay it: the trial seed, the instance
configuration, and the assignment.

All sampling is counter-based on the trial seed, so a report is reproducible
from (problem, encoding, seed, trials) alone.
"""
from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Tuple

from . import oracles
from .cookbook import (
    CookbookFormula,
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
    build_spanner,
)
from .encodings import edge_id, encode, vertex_id
from .logic.evaluate import Evaluator
from .oracles import InstanceConfig, _unit, random_instance
from .tgraph import TemporalGraph

ALL = ("lifetime", "degree", "vim", "tim")

# instance sizes drawn per trial; the envelope is n <= 5, lifetime <= 4
SIZE_LADDER = (
    (3, 2), (4, 2), (3, 3), (2, 4), (4, 3), (5, 2), (3, 4), (4, 4), (5, 3), (5, 4),
)
P_CHOICES = (0.2, 0.5)


def _pick(seed, tag, seq):
    return seq[int(_unit(seed, tag) * len(seq)) % len(seq)]


def _subset(seed, tag, items, p=0.5):
    return {x for i, x in enumerate(sorted(items)) if _unit(seed, tag, i) < p}


def _vertex_pair(seed, g):
    verts = sorted(g.vertices)
    u = _pick(seed, "u", verts)
    rest = [v for v in verts if v != u]
    v = _pick(seed, "v", rest)
    return u, v


@dataclass
class Disagreement:
    seed: int
    config: InstanceConfig
    params: dict
    assignment: dict
    formula_verdict: bool
    oracle_verdict: bool


@dataclass
class VerifyReport:
    problem: str
    encoding: str
    trials: int
    agreements: int
    disagreements: List[Disagreement]
    seconds: float

    @property
    def ok(self) -> bool:
        return not self.disagreements and self.agreements == self.trials


@dataclass(frozen=True)
class ProblemDef:
    """One cookbook problem wired to its oracle and candidate sampler.

    sample(g, seed) -> (params, assignment) with graph-level values;
    oracle(g, params, assignment) -> bool;
    build(tag, g, params) -> CookbookFormula.
    """

    name: str
    encodings: Tuple[str, ...]
    build: Callable
    oracle: Callable
    sample: Callable
    strictness: Optional[bool] = None  # None: draw per trial
    min_lifetime: int = 0


def _translate(g: TemporalGraph, cf: CookbookFormula, assignment: dict) -> dict:
    out = {}
    sorts = {fv.name: (fv.kind, fv.sort) for fv in cf.free_vars}
    for name, value in assignment.items():
        kind, sort = sorts[name]
        if kind == "element":
            out[name] = vertex_id(value) if sort == "V" else edge_id(value)
        else:
            conv = vertex_id if sort == "V" else edge_id
            out[name] = {conv(x) for x in value}
    return out


def _static_reps(g: TemporalGraph, pairs):
    """Lowest-time temporal copy of each chosen static edge."""
    reps = []
    for (a, b) in pairs:
        copies = sorted(e for e in g.edges if {e.u, e.v} == {a, b})
        if copies:
            reps.append(copies[0])
    return set(reps)


# -- samplers / problem table -----------------------------------------------------


def _registry() -> Dict[str, ProblemDef]:
    defs = {}

    def add(d: ProblemDef):
        defs[d.name] = d

    def pair_sample(g, seed):
        u, v = _vertex_pair(seed, g)
        return {}, {"u": u, "v": v}

    add(ProblemDef(
        "path_strict", ALL,
        lambda tag, g, p: build_path(tag, "path"),
        lambda g, p, a: oracles.oracle_reachable(g, a["u"], a["v"]),
        pair_sample, strictness=True,
    ))
    add(ProblemDef(
        "path_nonstrict", ALL,
        lambda tag, g, p: build_path(tag, "path"),
        lambda g, p, a: oracles.oracle_reachable(g, a["u"], a["v"]),
        pair_sample, strictness=False,
    ))

    def pathv_sample(g, seed):
        u, v = _vertex_pair(seed, g)
        X = _subset(seed, "X", g.vertices, 0.6)
        if _unit(seed, "force") < 0.5:
            X |= {u, v}
        return {}, {"u": u, "v": v, "X": X}

    add(ProblemDef(
        "pathV", ALL,
        lambda tag, g, p: build_path(tag, "pathV"),
        lambda g, p, a: oracles.oracle_reachable(g, a["u"], a["v"], allowed_vertices=a["X"]),
        pathv_sample,
    ))

    def sep_v_sample(g, seed):
        s, z = _vertex_pair(seed, g)
        X = _subset(seed, "X", g.vertices - {s, z}, 0.5)
        return {}, {"s": s, "z": z, "X": X}

    add(ProblemDef(
        "separator_vertex", ALL,
        lambda tag, g, p: build_separator(tag, "vertex"),
        lambda g, p, a: oracles.oracle_separator(g, a["s"], a["z"], "vertex", a["X"]),
        sep_v_sample,
    ))

    def sep_se_sample(g, seed):
        s, z = _vertex_pair(seed, g)
        fp = sorted({(e.u, e.v) for e in g.edges})
        pairs = _subset(seed, "F", fp, 0.5)
        return {"static": pairs}, {"s": s, "z": z, "F": _static_reps(g, pairs)}

    add(ProblemDef(
        "separator_static_edge", ALL,
        lambda tag, g, p: build_separator(tag, "static_edge"),
        lambda g, p, a: oracles.oracle_separator(g, a["s"], a["z"], "static_edge", p["static"]),
        sep_se_sample,
    ))

    def sep_te_sample(g, seed):
        s, z = _vertex_pair(seed, g)
        F = _subset(seed, "F", g.edges, 0.5)
        return {}, {"s": s, "z": z, "F": F}

    add(ProblemDef(
        "separator_temporal_edge", ALL,
        lambda tag, g, p: build_separator(tag, "temporal_edge"),
        lambda g, p, a: oracles.oracle_separator(g, a["s"], a["z"], "temporal_edge", a["F"]),
        sep_te_sample,
    ))

    def component_sample(variant):
        def sample(g, seed):
            if _unit(seed, "pick") < 0.5:
                comps = oracles.oracle_components(g, variant)
                if comps:
                    return {}, {"X": set(_pick(seed, "c", comps))}
            X = _subset(seed, "X", g.vertices, 0.5) or {sorted(g.vertices)[0]}
            return {}, {"X": X}
        return sample

    for variant in ("open", "closed", "unilateral_open", "unilateral_closed"):
        add(ProblemDef(
            f"component_{variant}", ALL,
            (lambda var: lambda tag, g, p: build_component(tag, var))(variant),
            (lambda var: lambda g, p, a: oracles.oracle_is_component(g, a["X"], var))(variant),
            component_sample(variant),
        ))

    def spanner_sample(g, seed):
        X = set(g.vertices) if _unit(seed, "all") < 0.25 else _subset(seed, "X", g.vertices, 0.7)
        return {}, {"X": X}

    add(ProblemDef(
        "spanner", ALL,
        lambda tag, g, p: build_spanner(tag),
        lambda g, p, a: oracles.oracle_spanner(g, a["X"]),
        spanner_sample,
    ))

    def restless_def(name, delta_of):
        def sample(g, seed):
            u, v = _vertex_pair(seed, g)
            return {"delta": delta_of(g)}, {"u": u, "v": v}

        add(ProblemDef(
            name, ("lifetime", "vim", "tim"),
            lambda tag, g, p: build_restless(tag, p["delta"]),
            lambda g, p, a: oracles.oracle_reachable(g, a["u"], a["v"], delta=p["delta"]),
            sample, min_lifetime=1,
        ))

    restless_def("restless_1", lambda g: 1)
    restless_def("restless_2", lambda g: 2)
    restless_def("restless_lifetime", lambda g: max(g.lifetime(), 1))

    def delta_matching_sample(g, seed):
        delta = _pick(seed, "delta", (1, 2))
        M = _subset(seed, "M", g.edges, 0.4)
        return {"delta": delta}, {"M": M}

    add(ProblemDef(
        "delta_matching", ("lifetime", "vim"),
        lambda tag, g, p: build_matching(tag, "delta", p["delta"]),
        lambda g, p, a: oracles.oracle_matching(g, a["M"], "delta", p["delta"]),
        delta_matching_sample,
    ))

    add(ProblemDef(
        "temporal_matching", ALL,
        lambda tag, g, p: build_matching(tag, "temporal"),
        lambda g, p, a: oracles.oracle_matching(g, a["M"], "temporal"),
        lambda g, seed: ({}, {"M": _subset(seed, "M", g.edges, 0.4)}),
    ))

    add(ProblemDef(
        "feedback_temporal_edge", ALL,
        lambda tag, g, p: build_feedback(tag, "temporal_edge"),
        lambda g, p, a: oracles.oracle_feedback(g, a["F"], "temporal_edge"),
        lambda g, seed: ({}, {"F": _subset(seed, "F", g.edges, 0.4)}),
    ))

    def feedback_conn_sample(g, seed):
        fp = sorted({(e.u, e.v) for e in g.edges})
        pairs = _subset(seed, "F", fp, 0.4)
        return {"static": pairs}, {"F": _static_reps(g, pairs)}

    add(ProblemDef(
        "feedback_connection", ALL,
        lambda tag, g, p: build_feedback(tag, "connection"),
        lambda g, p, a: oracles.oracle_feedback(g, p["static"], "connection"),
        feedback_conn_sample,
    ))

    def set_sample(name, p_in=0.5, nonempty=False):
        def sample(g, seed):
            S = _subset(seed, name, g.vertices, p_in)
            if nonempty and not S:
                S = {sorted(g.vertices)[0]}
            return {}, {name: S}
        return sample

    add(ProblemDef(
        "reach_ds", ALL,
        lambda tag, g, p: build_cover(tag, "reach_ds"),
        lambda g, p, a: oracles.oracle_cover(g, "reach_ds", a["S"]),
        set_sample("S", 0.5),
    ))
    add(ProblemDef(
        "permanent_ds", ("lifetime",),
        lambda tag, g, p: build_cover(tag, "permanent_ds"),
        lambda g, p, a: oracles.oracle_cover(g, "permanent_ds", a["S"]),
        set_sample("S", 0.6),
    ))
    add(ProblemDef(
        "overtime_ds", ("lifetime",),
        lambda tag, g, p: build_cover(tag, "overtime_ds"),
        lambda g, p, a: oracles.oracle_cover(g, "overtime_ds", a["S"]),
        set_sample("S", 0.6),
    ))

    def tvc_sample(g, seed):
        lam = g.lifetime()
        fam = [_subset(seed, f"X{t}", g.vertices, 0.6) for t in range(lam)]
        return (
            {"lifetime": lam},
            {f"X{t + 1}": fam[t] for t in range(lam)},
        )

    add(ProblemDef(
        "tvc", ("lifetime",),
        lambda tag, g, p: build_cover(tag, "tvc", p),
        lambda g, p, a: oracles.oracle_cover(
            g, "tvc", [a[f"X{t + 1}"] for t in range(p["lifetime"])]
        ),
        tvc_sample, min_lifetime=1,
    ))

    def snapshot_ds_sample(g, seed):
        lam = g.lifetime()
        return (
            {"lifetime": lam},
            {f"X{t + 1}": _subset(seed, f"X{t}", g.vertices, 0.7) for t in range(lam)},
        )

    add(ProblemDef(
        "snapshot_ds", ("lifetime",),
        lambda tag, g, p: build_cover(tag, "snapshot_ds", p),
        lambda g, p, a: oracles.oracle_cover(
            g, "snapshot_ds", [a[f"X{t + 1}"] for t in range(p["lifetime"])]
        ),
        snapshot_ds_sample, min_lifetime=1,
    ))

    def edge_cover_sample(g, seed):
        fp = sorted({(e.u, e.v) for e in g.edges})
        pairs = _subset(seed, "F", fp, 0.6)
        return {"static": pairs}, {"F": _static_reps(g, pairs)}

    add(ProblemDef(
        "edge_cover", ("lifetime",),
        lambda tag, g, p: build_cover(tag, "edge_cover"),
        lambda g, p, a: oracles.oracle_cover(g, "edge_cover", p["static"]),
        edge_cover_sample,
    ))

    def tp_sample(g, seed):
        return {"k": _pick(seed, "k", (1, 2))}, {}

    add(ProblemDef(
        "tp_cover_tee", ALL,
        lambda tag, g, p: build_cover(tag, "tp_cover_tee", {"k": p["k"]}),
        lambda g, p, a: oracles.oracle_tp_cover(g, p["k"]),
        tp_sample,
    ))

    def clique_sample(g, seed):
        delta = _pick(seed, "delta", (1, 2))
        X = _subset(seed, "X", g.vertices, 0.5)
        return {"delta": delta}, {"X": X}

    for variant in ("clique", "independent"):
        add(ProblemDef(
            variant, ("lifetime", "vim"),
            (lambda var: lambda tag, g, p: build_clique_is(tag, var, p["delta"]))(variant),
            (lambda var: lambda g, p, a: oracles.oracle_clique_is(g, a["X"], p["delta"], var))(variant),
            clique_sample, min_lifetime=1,
        ))

    add(ProblemDef(
        "colouring", ("lifetime",),
        lambda tag, g, p: build_colouring(tag, p["k"], p["lifetime"]),
        lambda g, p, a: oracles.oracle_colouring(g, p["k"]),
        lambda g, seed: ({"k": _pick(seed, "k", (1, 2, 3)), "lifetime": g.lifetime()}, {}),
    ))

    for variant in ("vertex", "edge"):
        add(ProblemDef(
            f"exploration_{variant}", ("lifetime",),
            (lambda var: lambda tag, g, p: build_exploration(tag, var, p["lifetime"]))(variant),
            (lambda var: lambda g, p, a: oracles.oracle_exploration(g, var))(variant),
            lambda g, seed: ({"lifetime": g.lifetime()}, {}),
        ))

    add(ProblemDef(
        "edge_disjoint_paths", ALL,
        lambda tag, g, p: build_disjoint(tag, "edge"),
        lambda g, p, a: oracles.oracle_disjoint_paths(g, a["u"], a["v"], "edge"),
        pair_sample,
    ))
    add(ProblemDef(
        "vertex_disjoint_paths", ALL,
        lambda tag, g, p: build_disjoint(tag, "vertex"),
        lambda g, p, a: oracles.oracle_disjoint_paths(g, a["u"], a["v"], "vertex"),
        pair_sample,
    ))

    def multistage_sample(g, seed):
        lam = g.lifetime()
        ell = _pick(seed, "ell", (1, 2))
        return (
            {"lifetime": lam, "ell": ell},
            {f"X{t + 1}": _subset(seed, f"X{t}", g.vertices, 0.6) for t in range(lam)},
        )

    add(ProblemDef(
        "multistage_vc", ("lifetime",),
        lambda tag, g, p: build_cover(tag, "multistage", p),
        lambda g, p, a: oracles.oracle_cover(
            g, "multistage", [a[f"X{t + 1}"] for t in range(p["lifetime"])],
            {"ell": p["ell"]},
        ),
        multistage_sample, min_lifetime=1,
    ))

    def delta_tvc_sample(g, seed):
        lam = g.lifetime()
        delta = _pick(seed, "delta", tuple(range(1, lam + 1)))
        return (
            {"lifetime": lam, "delta": delta},
            {f"X{t + 1}": _subset(seed, f"X{t}", g.vertices, 0.6) for t in range(lam)},
        )

    add(ProblemDef(
        "delta_tvc", ("lifetime",),
        lambda tag, g, p: build_cover(tag, "delta_tvc", p),
        lambda g, p, a: oracles.oracle_cover(
            g, "delta_tvc", [a[f"X{t + 1}"] for t in range(p["lifetime"])],
            {"delta": p["delta"]},
        ),
        delta_tvc_sample, min_lifetime=1,
    ))

    def timeline_sample(g, seed):
        lam = g.lifetime()
        ell = _pick(seed, "ell", tuple(range(1, lam + 1)))
        k = _pick(seed, "k", (1, 2))
        starts = lam - ell + 1
        return (
            {"lifetime": lam, "ell": ell, "k": k},
            {f"X{s + 1}": _subset(seed, f"X{s}", g.vertices, 0.5) for s in range(starts)},
        )

    for variant in ("timeline_vc", "timeline_ds"):
        add(ProblemDef(
            variant, ("lifetime",),
            (lambda var: lambda tag, g, p: build_cover(tag, var, p))(variant),
            (lambda var: lambda g, p, a: oracles.oracle_cover(
                g, var,
                [a[f"X{s + 1}"] for s in range(p["lifetime"] - p["ell"] + 1)],
                {"k": p["k"], "ell": p["ell"]},
            ))(variant),
            timeline_sample, min_lifetime=1,
        ))

    return defs


PROBLEMS: Dict[str, ProblemDef] = _registry()

# the acceptance matrix: every formula-oracle agreement cell of criterion 1
CRITERION_PROBLEMS = (
    "path_strict", "path_nonstrict", "pathV",
    "separator_vertex", "separator_static_edge", "separator_temporal_edge",
    "component_open", "component_closed",
    "component_unilateral_open", "component_unilateral_closed",
    "spanner",
    "restless_1", "restless_2", "restless_lifetime",
    "delta_matching", "temporal_matching",
    "feedback_temporal_edge", "feedback_connection",
    "reach_ds", "permanent_ds", "tvc", "edge_cover", "tp_cover_tee",
    "clique", "independent",
    "colouring", "exploration_vertex", "exploration_edge",
)


def run_trial(defn: ProblemDef, encoding: str, seed: int):
    """One sampled instance + candidate; returns (agree, detail)."""
    n, lam = _pick(seed, "size", SIZE_LADDER)
    lam = max(lam, defn.min_lifetime)
    p = _pick(seed, "p", P_CHOICES)
    strict = defn.strictness
    if strict is None:
        strict = _unit(seed, "strict") < 0.5
    config = InstanceConfig(n=n, lifetime=lam, p=p, directed=False, strict=strict, seed=seed)
    g = random_instance(config)
    bump = 0
    while g.lifetime() < defn.min_lifetime and bump < 64:
        # lifetime-indexed builders need at least one edge; redraw deterministically
        bump += 1
        config = InstanceConfig(
            n=n, lifetime=lam, p=p, directed=False, strict=strict,
            seed=seed + 7_777_777 * bump,
        )
        g = random_instance(config)
    params, assignment = defn.sample(g, seed)
    want = defn.oracle(g, params, assignment)
    tag = EncodingTag(encoding, strict)
    cf = defn.build(tag, g, params)
    rs = encode(g, encoding)
    ev = Evaluator(rs)
    got = ev.evaluate(
        cf.formula, _translate(g, cf, assignment), free=list(cf.free_vars), budget=None
    )
    detail = Disagreement(seed, config, params, assignment, got, want)
    return got == want, detail


def verify_problem(problem: str, encoding: str, trials: int = 50, seed: int = 0) -> VerifyReport:
    defn = PROBLEMS[problem]
    if encoding not in defn.encodings:
        raise ValueError(f"{problem} does not support the {encoding} encoding")
    agreements = 0
    disagreements = []
    start = time.perf_counter()
    for i in range(trials):
        ok, detail = run_trial(defn, encoding, seed * 1_000_003 + i)
        if ok:
            agreements += 1
        else:
            disagreements.append(detail)
    return VerifyReport(
        problem, encoding, trials, agreements, disagreements,
        time.perf_counter() - start,
    )


def verify_all(problems=None, trials: int = 50, seed: int = 0,
               progress: Optional[Callable[[VerifyReport], None]] = None) -> List[VerifyReport]:
    reports = []
    names = problems if problems is not None else CRITERION_PROBLEMS
    for name in names:
        for enc in PROBLEMS[name].encodings:
            rep = verify_problem(name, enc, trials, seed)
            reports.append(rep)
            if progress is not None:
                progress(rep)
    return reports
