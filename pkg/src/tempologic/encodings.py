"""The four relational-structure encodings of a temporal graph.

Universe elements are tagged ids: "v:x" for vertices, "te:u|v@t" for temporal
edges, "t:3" for time steps (lifetime encoding), "bag:..." for bag nodes
(VIM/TIM encodings).  Ids are derived deterministically from the source
graph, so encoding the same graph twice yields identical structures.

Directed graphs replace the incidence relation with source/target.  The
degree encoding bakes strictness into its possible-successor relation; the
other encodings leave strictness to the formula level.
"""
from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from typing import Dict, Optional, Tuple

from .decomp import TimDecomposition, validate_tim, vim_decomposition
from .errors import InvalidInputError
from .tgraph import TemporalEdge, TemporalGraph

SORTS = ("V", "TE", "L", "B")


@dataclass(frozen=True)
class Relation:
    name: str
    arity: int
    tuples: frozenset

    def __post_init__(self):
        for tup in self.tuples:
            if len(tup) != self.arity:
                raise InvalidInputError(f"tuple {tup} does not match arity {self.arity}")


@dataclass(frozen=True)
class RelationalStructure:
    sorts: Dict[str, Tuple[str, ...]]  # sort name -> sorted element ids
    relations: Dict[str, Relation]
    provenance: Dict[str, object] = field(default_factory=dict)

    def universe(self) -> Tuple[str, ...]:
        out = []
        for s in SORTS:
            out.extend(self.sorts.get(s, ()))
        return tuple(out)

    def sort_of(self, element: str) -> Optional[str]:
        for s, ids in self.sorts.items():
            if element in ids:
                return s
        return None


def vertex_id(v: str) -> str:
    return f"v:{v}"


def edge_id(e: TemporalEdge) -> str:
    return f"te:{e.u}|{e.v}@{e.t}"


def time_id(t: int) -> str:
    return f"t:{t}"


def bag_id(name) -> str:
    return f"bag:{name}"


# Signatures: relation name -> (left sort, right sort), per encoding.
SIGNATURES = {
    "lifetime": {"inc": ("TE", "V"), "source": ("TE", "V"), "target": ("TE", "V"),
                 "pres": ("TE", "L"), "ltT": ("L", "L")},
    "degree": {"inc": ("TE", "V"), "source": ("TE", "V"), "target": ("TE", "V"),
               "psuc": ("TE", "TE")},
    "vim": {"inc": ("TE", "V"), "source": ("TE", "V"), "target": ("TE", "V"),
            "bag": ("V", "B"), "pres": ("TE", "B"), "next": ("B", "B")},
    "tim": {"inc": ("TE", "V"), "source": ("TE", "V"), "target": ("TE", "V"),
            "bag": ("V", "B"), "pres": ("TE", "B"), "next": ("B", "B")},
}


def graph_hash(g: TemporalGraph) -> str:
    blob = json.dumps(
        {
            "vertices": sorted(g.vertices),
            "edges": sorted((e.u, e.v, e.t) for e in g.edges),
            "directed": g.directed,
            "strict": g.strict,
        },
        sort_keys=True,
    ).encode()
    return hashlib.sha256(blob).hexdigest()[:16]


def _incidence_relations(g: TemporalGraph) -> Dict[str, Relation]:
    if g.directed:
        src = frozenset((edge_id(e), vertex_id(e.u)) for e in g.edges)
        tgt = frozenset((edge_id(e), vertex_id(e.v)) for e in g.edges)
        return {
            "source": Relation("source", 2, src),
            "target": Relation("target", 2, tgt),
        }
    inc = frozenset(
        (edge_id(e), vertex_id(x)) for e in g.edges for x in (e.u, e.v)
    )
    return {"inc": Relation("inc", 2, inc)}


def _base_sorts(g: TemporalGraph) -> Dict[str, Tuple[str, ...]]:
    return {
        "V": tuple(sorted(vertex_id(v) for v in g.vertices)),
        "TE": tuple(sorted(edge_id(e) for e in g.edges)),
    }


def _provenance(g: TemporalGraph, encoding: str) -> Dict[str, object]:
    return {
        "encoding": encoding,
        "graph": graph_hash(g),
        "directed": g.directed,
        "strict": g.strict,
    }


def encode_lifetime(g: TemporalGraph) -> RelationalStructure:
    """Universe V + TE + L with presence and a strict total order on time steps."""
    lam = g.lifetime()
    sorts = _base_sorts(g)
    sorts["L"] = tuple(time_id(t) for t in range(1, lam + 1))
    rels = _incidence_relations(g)
    rels["pres"] = Relation(
        "pres", 2, frozenset((edge_id(e), time_id(e.t)) for e in g.edges)
    )
    rels["ltT"] = Relation(
        "ltT",
        2,
        frozenset(
            (time_id(t1), time_id(t2))
            for t1 in range(1, lam + 1)
            for t2 in range(t1 + 1, lam + 1)
        ),
    )
    return RelationalStructure(sorts, rels, _provenance(g, "lifetime"))


def encode_degree(g: TemporalGraph) -> RelationalStructure:
    """Universe V + TE with the possible-successor relation.

    Strictness is structural here: psuc pairs are ordered by < for strict
    graphs and by <= (excluding equal edges) for non-strict ones.
    """
    sorts = _base_sorts(g)
    rels = _incidence_relations(g)
    psuc = set()
    edges = sorted(g.edges)
    for e1 in edges:
        for e2 in edges:
            if e1 == e2:
                continue
            if not set(e1.endpoints()) & set(e2.endpoints()):
                continue
            if (g.strict and e1.t < e2.t) or (not g.strict and e1.t <= e2.t):
                psuc.add((edge_id(e1), edge_id(e2)))
    rels["psuc"] = Relation("psuc", 2, frozenset(psuc))
    return RelationalStructure(sorts, rels, _provenance(g, "degree"))


def encode_vim(g: TemporalGraph) -> RelationalStructure:
    """Universe V + TE + one bag node per time step of the VIM decomposition."""
    lam = g.lifetime()
    vim = vim_decomposition(g)
    sorts = _base_sorts(g)
    sorts["B"] = tuple(bag_id(t) for t in range(1, lam + 1))
    rels = _incidence_relations(g)
    rels["bag"] = Relation(
        "bag",
        2,
        frozenset(
            (vertex_id(v), bag_id(t))
            for t in range(1, lam + 1)
            for v in vim.bag(t)
        ),
    )
    rels["pres"] = Relation(
        "pres", 2, frozenset((edge_id(e), bag_id(e.t)) for e in g.edges)
    )
    rels["next"] = Relation(
        "next", 2, frozenset((bag_id(t), bag_id(t + 1)) for t in range(1, lam))
    )
    return RelationalStructure(sorts, rels, _provenance(g, "vim"))


def encode_tim(g: TemporalGraph, d: TimDecomposition) -> RelationalStructure:
    """Universe V + TE + one bag node per TIM node.

    next is oriented from the earlier-time bag to the later-time bag (the
    defining clause lists tree edges child-to-parent; the encoding needs the
    forward orientation to mirror the VIM successor relation).
    """
    verdict = validate_tim(g, d)
    if not verdict:
        raise InvalidInputError(f"invalid TIM decomposition: {verdict}")
    sorts = _base_sorts(g)
    sorts["B"] = tuple(sorted(bag_id(i) for i in d.nodes))
    rels = _incidence_relations(g)
    rels["bag"] = Relation(
        "bag",
        2,
        frozenset((vertex_id(v), bag_id(i)) for i in d.nodes for v in d.bags[i]),
    )
    pres = set()
    for e in g.edges:
        for i in d.nodes:
            if d.tau[i] == e.t and e.u in d.bags[i] and e.v in d.bags[i]:
                pres.add((edge_id(e), bag_id(i)))
    rels["pres"] = Relation("pres", 2, frozenset(pres))
    rels["next"] = Relation(
        "next",
        2,
        frozenset((bag_id(j), bag_id(i)) for (i, j) in d.tree_edges),
    )
    return RelationalStructure(sorts, rels, _provenance(g, "tim"))


ENCODERS = {
    "lifetime": encode_lifetime,
    "degree": encode_degree,
    "vim": encode_vim,
    "tim": None,  # needs a decomposition; see encode()
}


def encode(g: TemporalGraph, encoding: str, tim: Optional[TimDecomposition] = None) -> RelationalStructure:
    """Encode with the named encoding; builds the heuristic TIM when needed."""
    from .decomp import tim_decomposition

    if encoding == "tim":
        return encode_tim(g, tim if tim is not None else tim_decomposition(g))
    if encoding not in ENCODERS or ENCODERS[encoding] is None:
        raise InvalidInputError(f"unknown encoding {encoding!r}")
    return ENCODERS[encoding](g)


# -- validation and stats -----------------------------------------------------


@dataclass(frozen=True)
class StructureVerdict:
    ok: bool
    detail: str = ""

    def __bool__(self):
        return self.ok


def validate_structure(rs: RelationalStructure) -> StructureVerdict:
    """Sort-partition, signature and encoding-specific shape checks."""
    seen = {}
    for s, ids in rs.sorts.items():
        if s not in SORTS:
            return StructureVerdict(False, f"unknown sort {s!r}")
        for x in ids:
            if x in seen:
                return StructureVerdict(False, f"element {x!r} in sorts {seen[x]} and {s}")
            seen[x] = s
    encoding = rs.provenance.get("encoding")
    sig = SIGNATURES.get(encoding, {})
    for name, rel in rs.relations.items():
        if rel.name != name:
            return StructureVerdict(False, f"relation {name!r} mislabelled as {rel.name!r}")
        for tup in rel.tuples:
            for x in tup:
                if x not in seen:
                    return StructureVerdict(False, f"{name} tuple references missing {x!r}")
            if name in sig and rel.arity == 2:
                ls, rsort = sig[name]
                if seen[tup[0]] != ls or seen[tup[1]] != rsort:
                    return StructureVerdict(
                        False, f"{name} tuple {tup} violates signature {ls}x{rsort}"
                    )
    if encoding == "lifetime":
        times = rs.sorts.get("L", ())
        lt = rs.relations["ltT"].tuples
        for i, t1 in enumerate(times):
            for t2 in times[i + 1 :]:
                a, b = (t1, t2) if int(t1.split(":")[1]) < int(t2.split(":")[1]) else (t2, t1)
                if (a, b) not in lt or (b, a) in lt:
                    return StructureVerdict(False, "ltT is not the strict total order")
        if len(lt) != len(times) * (len(times) - 1) // 2:
            return StructureVerdict(False, "ltT has the wrong number of pairs")
        if len(rs.relations["pres"].tuples) != len(rs.sorts["TE"]):
            return StructureVerdict(False, "pres must hold exactly once per temporal edge")
    if encoding == "degree":
        psuc = rs.relations["psuc"].tuples
        for a, b in psuc:
            if a == b:
                return StructureVerdict(False, "psuc is reflexive")
        if rs.provenance.get("strict"):
            for a, b in psuc:
                if (b, a) in psuc:
                    return StructureVerdict(False, "strict psuc is not antisymmetric")
    if encoding in ("vim", "tim"):
        nxt = rs.relations["next"].tuples
        bags = rs.sorts.get("B", ())
        if encoding == "vim":
            if len(nxt) != max(len(bags) - 1, 0):
                return StructureVerdict(False, "vim next must chain the bags")
            outs = {a for a, _ in nxt}
            ins = {b for _, b in nxt}
            if len(outs) != len(nxt) or len(ins) != len(nxt):
                return StructureVerdict(False, "vim next is not a simple path")
        else:
            und = {tuple(sorted(p)) for p in nxt}
            parent = {b: b for b in bags}

            def find(x):
                while parent[x] != x:
                    parent[x] = parent[parent[x]]
                    x = parent[x]
                return x

            for a, b in und:
                ra, rb = find(a), find(b)
                if ra == rb:
                    return StructureVerdict(False, "tim next contains a cycle")
                parent[ra] = rb
        if len(rs.relations["pres"].tuples) != len(rs.sorts["TE"]):
            return StructureVerdict(False, "pres must hold exactly once per temporal edge")
    return StructureVerdict(True)


def structure_stats(rs: RelationalStructure) -> Dict[str, Dict[str, int]]:
    return {
        "sorts": {s: len(ids) for s, ids in rs.sorts.items()},
        "relations": {name: len(rel.tuples) for name, rel in rs.relations.items()},
    }


# -- JSON round-trip ------------------------------------------------------------


def structure_to_json(rs: RelationalStructure) -> dict:
    return {
        "sorts": {s: list(ids) for s, ids in rs.sorts.items()},
        "relations": {
            name: {"arity": rel.arity, "tuples": sorted(list(t) for t in rel.tuples)}
            for name, rel in rs.relations.items()
        },
        "provenance": dict(rs.provenance),
    }


def structure_from_json(data: dict) -> RelationalStructure:
    sorts = {s: tuple(ids) for s, ids in data["sorts"].items()}
    relations = {
        name: Relation(name, spec["arity"], frozenset(tuple(t) for t in spec["tuples"]))
        for name, spec in data["relations"].items()
    }
    return RelationalStructure(sorts, relations, dict(data.get("provenance", {})))
