"""Parameterized builders for the temporal-graph formula catalogue.

Every builder returns a CookbookFormula: an AST over the relation names of
the chosen encoding plus the declared free variables.  Shared semantics: the
formula, evaluated on the corresponding encoding of a graph, must agree with
the matching brute-force oracle for all tested assignments; that agreement is
the module's master property and is exercised by the verification harness.

Builders take an EncodingTag carrying the encoding kind and the strictness of
the source graph.  Lifetime-indexed builders (walk unrollings, per-snapshot
set families) additionally take the lifetime as a number, since the language
has no constants: specific time steps are pinned down by a prefix of
designated time variables (least element, successor of the previous one).

Only undirected graphs are supported here: the catalogue is stated for the
incidence relation, and directed temporal paths need source/target-aware
successor notions that the catalogue does not define.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Dict, Optional, Tuple

from .errors import UnsupportedCombinationError
from .logic.ast import (
    And,
    Eq,
    ExistsElem,
    ExistsSet,
    ForallElem,
    ForallSet,
    Formula,
    FreeVar,
    Iff,
    Implies,
    Member,
    Not,
    Or,
    RelAtom,
    conj,
    disj,
)

KINDS = ("lifetime", "degree", "vim", "tim")


@dataclass(frozen=True)
class EncodingTag:
    kind: str
    strict: bool = True

    def __post_init__(self):
        if self.kind not in KINDS:
            raise UnsupportedCombinationError(f"unknown encoding kind {self.kind!r}")


@dataclass(frozen=True)
class CookbookFormula:
    problem: str
    tag: EncodingTag
    formula: Formula
    free_vars: Tuple[FreeVar, ...]
    params: Dict[str, object] = field(default_factory=dict)


def _require(tag: EncodingTag, kinds, problem: str):
    if tag.kind not in kinds:
        raise UnsupportedCombinationError(
            f"{problem} is not expressible in the {tag.kind} encoding"
        )


def _positive(name, value):
    if not isinstance(value, int) or value < 1:
        raise ValueError(f"parameter {name} must be a positive integer, got {value!r}")


class _B:
    """Fresh-name supply plus the per-tag shortcut formulas."""

    def __init__(self, tag: EncodingTag):
        self.tag = tag
        self.n = 0

    def fresh(self, prefix: str) -> str:
        self.n += 1
        return f"{prefix}{self.n}"

    # -- atoms --------------------------------------------------------------

    def inc(self, e, x):
        return RelAtom("inc", (e, x))

    def neq(self, a, b):
        return Not(Eq(a, b))

    # -- static-edge shortcuts -----------------------------------------------

    def same_static(self, e1, e2):
        v = self.fresh("w")
        return ForallElem(v, "V", Implies(self.inc(e1, v), self.inc(e2, v)))

    def edgeset_ok(self, F):
        e1, e2 = self.fresh("e"), self.fresh("e")
        return ForallElem(
            e1, "TE",
            Implies(
                Member(e1, F),
                ForallElem(
                    e2, "TE",
                    Implies(Member(e2, F), Implies(self.same_static(e1, e2), Eq(e1, e2))),
                ),
            ),
        )

    def shares_static_with(self, e, F):
        f = self.fresh("f")
        return ExistsElem(f, "TE", conj([Member(f, F), self.same_static(f, e)]))

    # -- time distance (lifetime) ---------------------------------------------

    def lint(self, ta, tb, ell):
        """|ta - tb| <= ell - 1, via ell stepping-stone time variables."""
        names = [self.fresh("s") for _ in range(ell)]
        t = self.fresh("t")
        cover = ForallElem(
            t, "L",
            Implies(
                And((RelAtom("ltT", (names[0], t)), RelAtom("ltT", (t, names[-1])))),
                disj([Eq(n, t) for n in names]),
            ),
        )
        body = conj([Eq(names[0], ta), Eq(names[-1], tb), cover])
        for n in reversed(names):
            body = ExistsElem(n, "L", body)
        return body

    def fwd_within(self, ta, tb, d):
        """0 <= tb - ta <= d on time elements."""
        return conj([Not(RelAtom("ltT", (tb, ta))), self.lint(ta, tb, d + 1)])

    # -- bag order (vim/tim) ----------------------------------------------------

    def bag_le(self, b1, b2):
        """b1 is no later than b2: the interval path-set formula.

        For the tim encoding a shared vertex is additionally required, which
        pins both bags onto one root-to-leaf time line.
        """
        P = self.fresh("BP")
        b = self.fresh("b")
        bp = self.fresh("b")
        has_pred = ExistsElem(bp, "B", conj([RelAtom("next", (bp, b)), Member(bp, P)]))
        pred_side = ForallElem(
            b, "B", Implies(Member(b, P), disj([Eq(b, b1), has_pred]))
        )
        b_ = self.fresh("b")
        bs = self.fresh("b")
        has_succ = ExistsElem(bs, "B", conj([RelAtom("next", (b_, bs)), Member(bs, P)]))
        succ_side = ForallElem(
            b_, "B", Implies(Member(b_, P), disj([Eq(b_, b2), has_succ]))
        )
        parts = [Member(b1, P), Member(b2, P), pred_side, succ_side]
        if self.tag.kind == "tim":
            v = self.fresh("w")
            shared = ExistsElem(
                v, "V", conj([RelAtom("bag", (v, b1)), RelAtom("bag", (v, b2))])
            )
            parts = [Member(b1, P), Member(b2, P), shared, pred_side, succ_side]
        return ExistsSet(P, "B", conj(parts))

    def bag_lt(self, b1, b2):
        return conj([self.neq(b1, b2), self.bag_le(b1, b2)])

    def bint(self, b1, b2, d):
        """0 <= time(b2) - time(b1) <= d: d next-or-stay steps."""
        names = [self.fresh("c") for _ in range(d + 1)]
        steps = [
            disj([Eq(a, b), RelAtom("next", (a, b))])
            for a, b in zip(names, names[1:])
        ]
        body = conj([Eq(names[0], b1), Eq(names[-1], b2)] + steps)
        for n in reversed(names):
            body = ExistsElem(n, "B", body)
        return body

    # -- possible successor -------------------------------------------------------

    def time_order(self, t1, t2):
        lt = RelAtom("ltT", (t1, t2))
        return lt if self.tag.strict else disj([lt, Eq(t1, t2)])

    def psuc(self, e1, e2):
        """e2 can follow e1 in a temporal path (shared endpoint, ordered times)."""
        kind = self.tag.kind
        if kind == "degree":
            return RelAtom("psuc", (e1, e2))
        v = self.fresh("w")
        if kind == "lifetime":
            t1, t2 = self.fresh("t"), self.fresh("t")
            return ExistsElem(
                v, "V",
                conj([
                    self.inc(e1, v), self.inc(e2, v),
                    ExistsElem(
                        t1, "L",
                        conj([
                            RelAtom("pres", (e1, t1)),
                            ExistsElem(
                                t2, "L",
                                conj([RelAtom("pres", (e2, t2)), self.time_order(t1, t2)]),
                            ),
                        ]),
                    ),
                ]),
            )
        b1, b2 = self.fresh("b"), self.fresh("b")
        order = self.bag_lt(b1, b2) if self.tag.strict else self.bag_le(b1, b2)
        return ExistsElem(
            v, "V",
            conj([
                self.inc(e1, v), self.inc(e2, v),
                ExistsElem(
                    b1, "B",
                    conj([
                        RelAtom("pres", (e1, b1)),
                        ExistsElem(b2, "B", conj([RelAtom("pres", (e2, b2)), order])),
                    ]),
                ),
            ]),
        )

    def delta_psuc(self, e1, e2, delta):
        """psuc with waiting time at most delta."""
        kind = self.tag.kind
        if kind == "degree":
            raise UnsupportedCombinationError(
                "the degree encoding carries no time distances; restless paths unsupported"
            )
        v = self.fresh("w")
        if kind == "lifetime":
            t1, t2 = self.fresh("t"), self.fresh("t")
            return ExistsElem(
                v, "V",
                conj([
                    self.inc(e1, v), self.inc(e2, v),
                    ExistsElem(
                        t1, "L",
                        conj([
                            RelAtom("pres", (e1, t1)),
                            ExistsElem(
                                t2, "L",
                                conj([
                                    RelAtom("pres", (e2, t2)),
                                    self.time_order(t1, t2),
                                    self.lint(t1, t2, delta + 1),
                                ]),
                            ),
                        ]),
                    ),
                ]),
            )
        b1, b2 = self.fresh("b"), self.fresh("b")
        gap = self.bint(b1, b2, delta)
        order = [gap] if not self.tag.strict else [gap, self.neq(b1, b2)]
        return ExistsElem(
            v, "V",
            conj([
                self.inc(e1, v), self.inc(e2, v),
                ExistsElem(
                    b1, "B",
                    conj([
                        RelAtom("pres", (e1, b1)),
                        ExistsElem(b2, "B", conj([RelAtom("pres", (e2, b2))] + order)),
                    ]),
                ),
            ]),
        )

    def psuc_via_other(self, e1, e2, avoid):
        """psuc witnessed by a shared endpoint different from ``avoid``."""
        kind = self.tag.kind
        v = self.fresh("w")
        shared = conj([self.neq(v, avoid), self.inc(e1, v), self.inc(e2, v)])
        if kind == "degree":
            return ExistsElem(v, "V", conj([shared, RelAtom("psuc", (e1, e2))]))
        if kind == "lifetime":
            t1, t2 = self.fresh("t"), self.fresh("t")
            timing = ExistsElem(
                t1, "L",
                conj([
                    RelAtom("pres", (e1, t1)),
                    ExistsElem(
                        t2, "L",
                        conj([RelAtom("pres", (e2, t2)), self.time_order(t1, t2)]),
                    ),
                ]),
            )
            return ExistsElem(v, "V", conj([shared, timing]))
        b1, b2 = self.fresh("b"), self.fresh("b")
        order = self.bag_lt(b1, b2) if self.tag.strict else self.bag_le(b1, b2)
        timing = ExistsElem(
            b1, "B",
            conj([
                RelAtom("pres", (e1, b1)),
                ExistsElem(b2, "B", conj([RelAtom("pres", (e2, b2)), order])),
            ]),
        )
        return ExistsElem(v, "V", conj([shared, timing]))

    # -- temporal adjacency --------------------------------------------------------

    def tadj(self, x, y, when=None):
        e = self.fresh("e")
        parts = [self.inc(e, x), self.inc(e, y)]
        if self.tag.kind == "lifetime" and when is not None:
            parts.append(RelAtom("pres", (e, when)))
        elif self.tag.kind == "vim" and when is not None:
            parts.append(RelAtom("pres", (e, when)))
        elif self.tag.kind == "tim":
            b = self.fresh("b")
            parts.append(ExistsElem(b, "B", RelAtom("pres", (e, b))))
        return ExistsElem(e, "TE", conj(parts))

    # -- cardinality and degrees ------------------------------------------------------

    def card_at_least(self, X, k, sort="V"):
        names = [self.fresh("x") for _ in range(k)]
        parts = [Member(n, X) for n in names]
        parts += [self.neq(a, b) for a, b in combinations(names, 2)]
        body = conj(parts)
        for n in reversed(names):
            body = ExistsElem(n, sort, body)
        return body

    def deg0(self, x, P):
        e = self.fresh("e")
        return ForallElem(e, "TE", Implies(Member(e, P), Not(self.inc(e, x))))

    def deg_exact(self, x, P, k):
        names = [self.fresh("e") for _ in range(k)]
        other = self.fresh("e")
        parts = [self.inc(n, x) for n in names]
        parts += [self.neq(a, b) for a, b in combinations(names, 2)]
        parts.append(
            ForallElem(
                other, "TE",
                Implies(
                    Member(other, P),
                    Implies(self.inc(other, x), disj([Eq(other, n) for n in names])),
                ),
            )
        )
        body = conj(parts)
        for n in reversed(names):
            body = ExistsElem(n, "TE", conj([Member(n, P), body]))
        return body

    # -- footprint connectivity --------------------------------------------------------

    def fp_reach(self, r, x, P):
        """x lies in every vertex set containing r and closed under P-edges."""
        X = self.fresh("RX")
        v, w = self.fresh("w"), self.fresh("w")
        e = self.fresh("e")
        closed = ForallElem(
            v, "V",
            Implies(
                Member(v, X),
                ForallElem(
                    e, "TE",
                    Implies(
                        Member(e, P),
                        Implies(
                            self.inc(e, v),
                            ExistsElem(
                                w, "V",
                                conj([self.neq(w, v), self.inc(e, w), Member(w, X)]),
                            ),
                        ),
                    ),
                ),
            ),
        )
        return ForallSet(
            X, "V", Implies(And((Member(r, X), closed)), Member(x, X))
        )

    def tecc(self, P):
        """P induces a connected subgraph of the static footprint."""
        r, x = self.fresh("w"), self.fresh("w")
        e1, e2 = self.fresh("e"), self.fresh("e")
        touched = ExistsElem(e2, "TE", conj([Member(e2, P), self.inc(e2, x)]))
        return ExistsElem(
            r, "V",
            conj([
                ExistsElem(e1, "TE", conj([Member(e1, P), self.inc(e1, r)])),
                ForallElem(x, "V", Implies(touched, self.fp_reach(r, x, P))),
            ]),
        )

    # -- temporal paths -----------------------------------------------------------------

    def chain(self, es, ez, P, succ):
        """ez lies in the succ-closure of es within P (traversability)."""
        R = self.fresh("CR")
        a, b = self.fresh("e"), self.fresh("e")
        closed = ForallElem(
            a, "TE",
            Implies(
                Member(a, R),
                ForallElem(
                    b, "TE",
                    Implies(Member(b, P), Implies(succ(a, b), Member(b, R))),
                ),
            ),
        )
        return ForallSet(
            R, "TE", Implies(And((Member(es, R), closed)), Member(ez, R))
        )

    def pe_path(self, u, v, P, delta=None):
        """P forms a temporal path from u to v.

        Degree conditions force a simple footprint u-v path (plus possible
        stray cycles, which footprint connectivity excludes); the closure
        condition makes the edge sequence traversable in time order.
        """
        succ = (lambda a, b: self.psuc(a, b)) if delta is None else (
            lambda a, b: self.delta_psuc(a, b, delta)
        )
        e, w = self.fresh("e"), self.fresh("w")
        interior = ForallElem(
            e, "TE",
            Implies(
                Member(e, P),
                ForallElem(
                    w, "V",
                    Implies(
                        conj([self.inc(e, w), self.neq(w, u), self.neq(w, v)]),
                        self.deg_exact(w, P, 2),
                    ),
                ),
            ),
        )
        es, ez = self.fresh("e"), self.fresh("e")
        endpoints = ExistsElem(
            es, "TE",
            conj([
                Member(es, P),
                self.inc(es, u),
                ExistsElem(
                    ez, "TE",
                    conj([Member(ez, P), self.inc(ez, v), self.chain(es, ez, P, succ)]),
                ),
            ]),
        )
        return conj([
            self.deg_exact(u, P, 1),
            self.deg_exact(v, P, 1),
            interior,
            self.tecc(P),
            endpoints,
        ])

    def covered_by(self, P, X):
        """Every edge of P has both endpoints in X."""
        e = self.fresh("e")
        v1, v2 = self.fresh("w"), self.fresh("w")
        return ForallElem(
            e, "TE",
            Implies(
                Member(e, P),
                ExistsElem(
                    v1, "V",
                    conj([
                        Member(v1, X),
                        ExistsElem(
                            v2, "V",
                            conj([
                                Member(v2, X), self.neq(v1, v2),
                                self.inc(e, v1), self.inc(e, v2),
                            ]),
                        ),
                    ]),
                ),
            ),
        )

    def reach(self, u, v, delta=None, edge_filter=None, cover=None):
        """There is a temporal path u -> v; optional edge restriction and
        vertex-cover condition are conjoined onto the path set."""
        P = self.fresh("PE")
        parts = []
        if edge_filter is not None:
            e = self.fresh("e")
            parts.append(
                ForallElem(e, "TE", Implies(Member(e, P), edge_filter(e)))
            )
        parts.append(self.pe_path(u, v, P, delta=delta))
        if cover is not None:
            parts.append(self.covered_by(P, cover))
        return ExistsSet(P, "TE", conj(parts))

    def reach_within(self, u, v, X):
        return self.reach(u, v, cover=X)

    def pv_path(self, u, v, PV):
        """The paper's vertex-set path predicate: some edge set forms the
        path and every edge has two distinct endpoints in PV."""
        P = self.fresh("PE")
        return ExistsSet(P, "TE", conj([self.pe_path(u, v, P), self.covered_by(P, PV)]))


# -- registry-facing builders ----------------------------------------------------------


ALL = ("lifetime", "degree", "vim", "tim")


def build_shortcut(tag: EncodingTag, name: str, params=None) -> CookbookFormula:
    """Standalone shortcut formulas, mainly for inspection and tests."""
    params = dict(params or {})
    b = _B(tag)
    if name == "sharededge":
        f = b.same_static("e1", "e2")
        free = (FreeVar("e1", "element", "TE"), FreeVar("e2", "element", "TE"))
    elif name == "edgeset":
        f = b.edgeset_ok("F")
        free = (FreeVar("F", "set", "TE"),)
    elif name == "psuc":
        f = b.psuc("e1", "e2")
        free = (FreeVar("e1", "element", "TE"), FreeVar("e2", "element", "TE"))
    elif name == "bag_le":
        _require(tag, ("vim", "tim"), "bag order")
        f = b.bag_le("b1", "b2")
        free = (FreeVar("b1", "element", "B"), FreeVar("b2", "element", "B"))
    elif name == "bag_lt":
        _require(tag, ("vim", "tim"), "bag order")
        f = b.bag_lt("b1", "b2")
        free = (FreeVar("b1", "element", "B"), FreeVar("b2", "element", "B"))
    elif name == "tadj":
        if tag.kind in ("lifetime", "vim"):
            when = "t" if tag.kind == "lifetime" else "bt"
            f = b.tadj("x", "y", when)
            free = (
                FreeVar("x", "element", "V"), FreeVar("y", "element", "V"),
                FreeVar(when, "element", "L" if tag.kind == "lifetime" else "B"),
            )
        else:
            f = b.tadj("x", "y")
            free = (FreeVar("x", "element", "V"), FreeVar("y", "element", "V"))
    elif name == "card":
        _positive("k", params.get("k"))
        f = b.card_at_least("X", params["k"])
        free = (FreeVar("X", "set", "V"),)
    elif name == "deg0":
        f = b.deg0("x", "P")
        free = (FreeVar("x", "element", "V"), FreeVar("P", "set", "TE"))
    elif name == "deg":
        _positive("k", params.get("k"))
        f = b.deg_exact("x", "P", params["k"])
        free = (FreeVar("x", "element", "V"), FreeVar("P", "set", "TE"))
    elif name == "interval_time":
        _require(tag, ("lifetime",), "time intervals")
        _positive("ell", params.get("ell"))
        f = b.lint("t1", "t2", params["ell"])
        free = (FreeVar("t1", "element", "L"), FreeVar("t2", "element", "L"))
    elif name == "interval_bag":
        _require(tag, ("vim", "tim"), "bag intervals")
        if not isinstance(params.get("ell"), int) or params["ell"] < 0:
            raise ValueError("ell must be a nonnegative integer")
        f = b.bint("b1", "b2", params["ell"])
        free = (FreeVar("b1", "element", "B"), FreeVar("b2", "element", "B"))
    elif name == "snapshot_cc":
        f, free = _snapshot_cc(b, tag)
    elif name == "fp_reach":
        f = b.fp_reach("r", "x", "P")
        free = (
            FreeVar("r", "element", "V"), FreeVar("x", "element", "V"),
            FreeVar("P", "set", "TE"),
        )
    elif name == "tecc":
        f = b.tecc("P")
        free = (FreeVar("P", "set", "TE"),)
    else:
        raise UnsupportedCombinationError(f"unknown shortcut {name!r}")
    return CookbookFormula(f"shortcut:{name}", tag, f, free, params)


def _snapshot_cc(b: _B, tag: EncodingTag):
    """X is connected within a snapshot: every nonempty proper subset of X
    has a crossing edge present at the designated time.

    Lifetime and vim variants take the time (or its bag) as a free variable;
    the tim variant, which cannot name times, asks for some snapshot.
    """
    Y = b.fresh("SY")
    y, x = b.fresh("w"), b.fresh("w")
    e = b.fresh("e")
    if tag.kind == "lifetime":
        when = RelAtom("pres", (e, "t"))
        free = (FreeVar("X", "set", "V"), FreeVar("t", "element", "L"))
    elif tag.kind == "vim":
        when = RelAtom("pres", (e, "bt"))
        free = (FreeVar("X", "set", "V"), FreeVar("bt", "element", "B"))
    else:
        when = RelAtom("pres", (e, "bt"))
        free = (FreeVar("X", "set", "V"),)
    crossing = ExistsElem(
        y, "V",
        conj([
            Member(y, Y),
            ExistsElem(
                x, "V",
                conj([
                    Member(x, "X"), Not(Member(x, Y)),
                    ExistsElem(e, "TE", conj([b.inc(e, x), b.inc(e, y), when])),
                ]),
            ),
        ]),
    )
    w1, w2, w3 = b.fresh("w"), b.fresh("w"), b.fresh("w")
    nonempty = ExistsElem(w1, "V", Member(w1, Y))
    subset = ForallElem(w2, "V", Implies(Member(w2, Y), Member(w2, "X")))
    proper = ExistsElem(w3, "V", conj([Member(w3, "X"), Not(Member(w3, Y))]))
    f = ForallSet(Y, "V", Implies(conj([nonempty, subset, proper]), crossing))
    if tag.kind == "tim":
        f = ExistsElem("bt", "B", f)
    return f, free


def build_path(tag: EncodingTag, variant: str = "path", params=None) -> CookbookFormula:
    params = dict(params or {})
    b = _B(tag)
    if variant == "pe_path":
        f = b.pe_path("u", "v", "P")
        free = (
            FreeVar("u", "element", "V"), FreeVar("v", "element", "V"),
            FreeVar("P", "set", "TE"),
        )
    elif variant == "pv_path":
        f = b.pv_path("u", "v", "PV")
        free = (
            FreeVar("u", "element", "V"), FreeVar("v", "element", "V"),
            FreeVar("PV", "set", "V"),
        )
    elif variant == "path":
        PV = b.fresh("PV")
        f = ExistsSet(PV, "V", b.pv_path("u", "v", PV))
        free = (FreeVar("u", "element", "V"), FreeVar("v", "element", "V"))
    elif variant == "pathV":
        PV = b.fresh("PV")
        w = b.fresh("w")
        f = ExistsSet(
            PV, "V",
            conj([
                ForallElem(w, "V", Implies(Member(w, PV), Member(w, "X"))),
                b.pv_path("u", "v", PV),
            ]),
        )
        free = (
            FreeVar("u", "element", "V"), FreeVar("v", "element", "V"),
            FreeVar("X", "set", "V"),
        )
    elif variant == "pathSE":
        f = b.reach("u", "v", edge_filter=lambda e: b.shares_static_with(e, "F"))
        free = (
            FreeVar("u", "element", "V"), FreeVar("v", "element", "V"),
            FreeVar("F", "set", "TE"),
        )
    elif variant == "pathTE":
        f = b.reach("u", "v", edge_filter=lambda e: Member(e, "F"))
        free = (
            FreeVar("u", "element", "V"), FreeVar("v", "element", "V"),
            FreeVar("F", "set", "TE"),
        )
    elif variant == "fo_strict":
        _require(tag, ("lifetime",), "the unrolled FO path")
        if not tag.strict:
            raise UnsupportedCombinationError("the unrolled path needs strict semantics")
        lam = params.get("lifetime")
        if lam is None or lam < 0:
            raise ValueError("fo_strict needs the lifetime")
        f = _fo_strict_path(b, lam)
        free = (FreeVar("u", "element", "V"), FreeVar("v", "element", "V"))
    else:
        raise UnsupportedCombinationError(f"unknown path variant {variant!r}")
    return CookbookFormula(f"path:{variant}", tag, f, free, params)


def _time_prefix(b: _B, lam: int, body_fn):
    """exists t_1 < ... < t_lam, consecutively: the designated time steps."""
    taus = [b.fresh("tau") for _ in range(lam)]
    body = body_fn(taus)
    for i in reversed(range(lam)):
        s = b.fresh("t")
        if i == 0:
            pin = Not(ExistsElem(s, "L", RelAtom("ltT", (s, taus[0]))))
        else:
            s2 = b.fresh("t")
            pin = conj([
                RelAtom("ltT", (taus[i - 1], taus[i])),
                Not(ExistsElem(
                    s2, "L",
                    And((RelAtom("ltT", (taus[i - 1], s2)), RelAtom("ltT", (s2, taus[i])))),
                )),
            ])
        body = ExistsElem(taus[i], "L", conj([pin, body]))
    return body


def _walk_conjuncts(b: _B, xs, taus):
    steps = []
    for i in range(1, len(xs)):
        steps.append(disj([Eq(xs[i - 1], xs[i]), b.tadj(xs[i - 1], xs[i], taus[i - 1])]))
    return steps


def _fo_strict_path(b: _B, lam: int):
    xs = [b.fresh("x") for _ in range(lam + 1)]

    def body(taus):
        parts = [Eq(xs[0], "u"), Eq(xs[-1], "v")]
        for i in range(1, len(xs)):
            move = conj(
                [b.tadj(xs[i - 1], xs[i], taus[i - 1])]
                + [b.neq(xs[j], xs[i]) for j in range(i)]
            )
            parts.append(disj([Eq(xs[i - 1], xs[i]), move]))
        inner = conj(parts)
        for x in reversed(xs):
            inner = ExistsElem(x, "V", inner)
        return inner

    if lam == 0:
        return Eq("u", "v")
    return _time_prefix(b, lam, body)


def build_disjoint(tag: EncodingTag, variant: str = "edge") -> CookbookFormula:
    b = _B(tag)
    if variant == "edge":
        P1, P2 = b.fresh("PE"), b.fresh("PE")
        e1, e2 = b.fresh("e"), b.fresh("e")
        f = ExistsSet(
            P1, "TE",
            ExistsSet(
                P2, "TE",
                conj([
                    ForallElem(e1, "TE", Implies(Member(e1, P1), Not(Member(e1, P2)))),
                    ForallElem(e2, "TE", Implies(Member(e2, P2), Not(Member(e2, P1)))),
                    b.pe_path("u", "v", P1),
                    b.pe_path("u", "v", P2),
                ]),
            ),
        )
    elif variant == "vertex":
        # literal catalogue semantics: both vertex sets contain u and v, so
        # full disjointness is unsatisfiable; kept verbatim by design
        P1, P2 = b.fresh("PV"), b.fresh("PV")
        w1, w2 = b.fresh("w"), b.fresh("w")
        f = ExistsSet(
            P1, "V",
            ExistsSet(
                P2, "V",
                conj([
                    ForallElem(w1, "V", Implies(Member(w1, P1), Not(Member(w1, P2)))),
                    ForallElem(w2, "V", Implies(Member(w2, P2), Not(Member(w2, P1)))),
                    b.pv_path("u", "v", P1),
                    b.pv_path("u", "v", P2),
                ]),
            ),
        )
    else:
        raise UnsupportedCombinationError(f"unknown disjointness variant {variant!r}")
    free = (FreeVar("u", "element", "V"), FreeVar("v", "element", "V"))
    return CookbookFormula(f"disjoint:{variant}", tag, f, free, {})


def build_restless(tag: EncodingTag, delta: int) -> CookbookFormula:
    _positive("delta", delta)
    _require(tag, ("lifetime", "vim", "tim"), "restless reachability")
    b = _B(tag)
    f = b.reach("u", "v", delta=delta)
    free = (FreeVar("u", "element", "V"), FreeVar("v", "element", "V"))
    return CookbookFormula("restless", tag, f, free, {"delta": delta})


def build_component(tag: EncodingTag, variant: str = "open") -> CookbookFormula:
    b = _B(tag)
    unilateral = variant.startswith("unilateral")
    closed = "closed" in variant
    if variant not in ("open", "closed", "unilateral_open", "unilateral_closed"):
        raise UnsupportedCombinationError(f"unknown component variant {variant!r}")

    def pair_connected(u, v, inside):
        fwd = b.reach_within(u, v, inside) if inside else b.reach(u, v)
        if not unilateral:
            return fwd
        bwd = b.reach_within(v, u, inside) if inside else b.reach(v, u)
        return disj([fwd, bwd])

    u, v = b.fresh("w"), b.fresh("w")
    prop = ForallElem(
        u, "V",
        Implies(
            Member(u, "X"),
            ForallElem(
                v, "V",
                Implies(
                    Member(v, "X"),
                    Implies(b.neq(u, v), pair_connected(u, v, "X" if closed else None)),
                ),
            ),
        ),
    )
    if closed:
        Y = b.fresh("CY")
        w1, w2 = b.fresh("w"), b.fresh("w")
        uu, vv = b.fresh("w"), b.fresh("w")
        if unilateral:
            pair_y = disj([b.reach_within(uu, vv, Y), b.reach_within(vv, uu, Y)])
        else:
            pair_y = conj([b.reach_within(uu, vv, Y), b.reach_within(vv, uu, Y)])
        bigger = ExistsSet(
            Y, "V",
            conj([
                ForallElem(w1, "V", Implies(Member(w1, "X"), Member(w1, Y))),
                ExistsElem(w2, "V", conj([Member(w2, Y), Not(Member(w2, "X"))])),
                ForallElem(
                    uu, "V",
                    Implies(
                        Member(uu, Y),
                        ForallElem(
                            vv, "V",
                            Implies(Member(vv, Y), Implies(b.neq(uu, vv), pair_y)),
                        ),
                    ),
                ),
            ]),
        )
        maximal = Not(bigger)
    else:
        y, u2 = b.fresh("w"), b.fresh("w")
        if unilateral:
            link = disj([b.reach(u2, y), b.reach(y, u2)])
        else:
            link = conj([b.reach(u2, y), b.reach(y, u2)])
        maximal = Not(
            ExistsElem(
                y, "V",
                conj([
                    Not(Member(y, "X")),
                    ForallElem(u2, "V", Implies(Member(u2, "X"), link)),
                ]),
            )
        )
    f = conj([prop, maximal])
    return CookbookFormula(
        f"component:{variant}", tag, f, (FreeVar("X", "set", "V"),), {}
    )


def build_separator(tag: EncodingTag, variant: str = "vertex") -> CookbookFormula:
    b = _B(tag)
    if variant == "vertex":
        # path through V minus X: inline complement of the restriction set
        P = b.fresh("PE")
        e = b.fresh("e")
        v1, v2 = b.fresh("w"), b.fresh("w")
        avoid = ForallElem(
            e, "TE",
            Implies(
                Member(e, P),
                ExistsElem(
                    v1, "V",
                    conj([
                        Not(Member(v1, "X")),
                        ExistsElem(
                            v2, "V",
                            conj([
                                Not(Member(v2, "X")), b.neq(v1, v2),
                                b.inc(e, v1), b.inc(e, v2),
                            ]),
                        ),
                    ]),
                ),
            ),
        )
        f = Not(ExistsSet(P, "TE", conj([avoid, b.pe_path("s", "z", P)])))
        free = (
            FreeVar("X", "set", "V"),
            FreeVar("s", "element", "V"), FreeVar("z", "element", "V"),
        )
    elif variant == "static_edge":
        f = Not(
            b.reach("s", "z", edge_filter=lambda e: Not(b.shares_static_with(e, "F")))
        )
        free = (
            FreeVar("F", "set", "TE"),
            FreeVar("s", "element", "V"), FreeVar("z", "element", "V"),
        )
    elif variant == "temporal_edge":
        f = Not(b.reach("s", "z", edge_filter=lambda e: Not(Member(e, "F"))))
        free = (
            FreeVar("F", "set", "TE"),
            FreeVar("s", "element", "V"), FreeVar("z", "element", "V"),
        )
    else:
        raise UnsupportedCombinationError(f"unknown separator variant {variant!r}")
    return CookbookFormula(f"separator:{variant}", tag, f, free, {})


def build_spanner(tag: EncodingTag) -> CookbookFormula:
    b = _B(tag)
    u, v = b.fresh("w"), b.fresh("w")
    f = ForallElem(
        u, "V",
        ForallElem(
            v, "V",
            Implies(
                b.neq(u, v),
                Implies(b.reach(u, v), b.reach_within(u, v, "X")),
            ),
        ),
    )
    return CookbookFormula("spanner", tag, f, (FreeVar("X", "set", "V"),), {})


def build_exploration(tag: EncodingTag, variant: str, lifetime: int) -> CookbookFormula:
    _require(tag, ("lifetime",), "exploration")
    if variant not in ("vertex", "edge"):
        raise UnsupportedCombinationError(f"unknown exploration variant {variant!r}")
    b = _B(tag)
    lam = lifetime
    xs = [b.fresh("x") for _ in range(lam + 1)]

    def body(taus):
        parts = _walk_conjuncts(b, xs, taus)
        if variant == "vertex":
            y = b.fresh("w")
            parts.append(ForallElem(y, "V", disj([Eq(y, x) for x in xs])))
        else:
            e = b.fresh("e")
            hits = [
                conj([b.neq(xs[i - 1], xs[i]), b.inc(e, xs[i - 1]), b.inc(e, xs[i])])
                for i in range(1, len(xs))
            ]
            parts.append(ForallElem(e, "TE", disj(hits)))
        inner = conj(parts)
        for x in reversed(xs):
            inner = ExistsElem(x, "V", inner)
        return inner

    if lam == 0:
        x0, y = b.fresh("x"), b.fresh("w")
        if variant == "vertex":
            f = ExistsElem(x0, "V", ForallElem(y, "V", Eq(y, x0)))
        else:
            e = b.fresh("e")
            f = ExistsElem(x0, "V", ForallElem(e, "TE", Not(Eq(e, e))))
    else:
        f = _time_prefix(b, lam, body)
    return CookbookFormula(f"exploration:{variant}", tag, f, (), {"lifetime": lam})


def build_clique_is(tag: EncodingTag, variant: str, delta: int,
                    mode: str = "check") -> CookbookFormula:
    _positive("delta", delta)
    _require(tag, ("lifetime", "vim"), "windowed clique / independent set")
    if variant not in ("clique", "independent"):
        raise UnsupportedCombinationError(f"unknown variant {variant!r}")
    b = _B(tag)
    u, v = b.fresh("w"), b.fresh("w")
    e = b.fresh("e")
    if tag.kind == "lifetime":
        t, t2 = b.fresh("t"), b.fresh("t")
        # symmetric distance: the one-sided interval formula in both directions
        near = conj([b.lint(t, t2, delta), b.lint(t2, t, delta)])
        edge_at = conj([b.inc(e, u), b.inc(e, v), RelAtom("pres", (e, t2)), near])
        if variant == "clique":
            window = ForallElem(
                t, "L", ExistsElem(e, "TE", ExistsElem(t2, "L", edge_at))
            )
        else:
            window = ForallElem(
                t, "L",
                ForallElem(
                    e, "TE",
                    ForallElem(
                        t2, "L",
                        Implies(
                            conj([b.inc(e, u), b.inc(e, v), RelAtom("pres", (e, t2))]),
                            Not(near),
                        ),
                    ),
                ),
            )
    else:
        bb, b2 = b.fresh("b"), b.fresh("b")
        near = disj([b.bint(bb, b2, delta - 1), b.bint(b2, bb, delta - 1)])
        edge_at = conj([b.inc(e, u), b.inc(e, v), RelAtom("pres", (e, b2)), near])
        if variant == "clique":
            window = ForallElem(
                bb, "B", ExistsElem(e, "TE", ExistsElem(b2, "B", edge_at))
            )
        else:
            window = ForallElem(
                bb, "B",
                ForallElem(
                    e, "TE",
                    ForallElem(
                        b2, "B",
                        Implies(
                            conj([b.inc(e, u), b.inc(e, v), RelAtom("pres", (e, b2))]),
                            Not(near),
                        ),
                    ),
                ),
            )
    body = ForallElem(
        u, "V",
        Implies(
            Member(u, "X"),
            ForallElem(
                v, "V",
                Implies(Member(v, "X"), Implies(b.neq(u, v), window)),
            ),
        ),
    )
    if mode == "check":
        return CookbookFormula(
            f"{variant}:check", tag, body, (FreeVar("X", "set", "V"),), {"delta": delta}
        )
    f = ExistsSet("X", "V", body)
    return CookbookFormula(f"{variant}:sentence", tag, f, (), {"delta": delta})


def build_feedback(tag: EncodingTag, variant: str = "temporal_edge") -> CookbookFormula:
    b = _B(tag)
    if variant == "temporal_edge":
        removed = lambda e: Member(e, "F")
    elif variant == "connection":
        removed = lambda e: b.shares_static_with(e, "F")
    else:
        raise UnsupportedCombinationError(f"unknown feedback variant {variant!r}")

    v = b.fresh("w")
    P = b.fresh("PE")
    e0 = b.fresh("e")
    available = ForallElem(e0, "TE", Implies(Member(e0, P), Not(removed(e0))))

    e1, w1 = b.fresh("e"), b.fresh("w")
    all_deg2 = ForallElem(
        e1, "TE",
        Implies(
            Member(e1, P),
            ForallElem(w1, "V", Implies(b.inc(e1, w1), b.deg_exact(w1, P, 2))),
        ),
    )
    es, ez = b.fresh("e"), b.fresh("e")
    around = b.chain(es, ez, P, lambda x, y: b.psuc_via_other(x, y, v))
    closing = ExistsElem(
        es, "TE",
        conj([
            Member(es, P), b.inc(es, v),
            ExistsElem(
                ez, "TE",
                conj([Member(ez, P), b.neq(es, ez), b.inc(ez, v), around]),
            ),
        ]),
    )
    cycle_at_v = ExistsSet(
        P, "TE", conj([available, all_deg2, b.tecc(P), closing])
    )
    f = ForallElem(v, "V", Not(cycle_at_v))
    return CookbookFormula(
        f"feedback:{variant}", tag, f, (FreeVar("F", "set", "TE"),), {}
    )


def build_colouring(tag: EncodingTag, k: int, lifetime: int) -> CookbookFormula:
    _positive("k", k)
    _require(tag, ("lifetime",), "temporal colouring")
    b = _B(tag)
    lam = lifetime
    if lam == 0:
        x = b.fresh("w")
        f = ForallElem(x, "V", Eq(x, x))
        return CookbookFormula("colouring", tag, f, (), {"k": k, "lifetime": lam})

    def body(taus):
        per_time = []
        for t in range(lam):
            names = [f"Y{t + 1}_{c + 1}" for c in range(k)]
            v = b.fresh("w")
            one_colour = ForallElem(
                v, "V",
                disj([
                    conj(
                        [Member(v, names[c])]
                        + [Not(Member(v, names[c2])) for c2 in range(k) if c2 != c]
                    )
                    for c in range(k)
                ]),
            )
            e, u1, u2 = b.fresh("e"), b.fresh("w"), b.fresh("w")
            proper = ForallElem(
                e, "TE",
                Implies(
                    RelAtom("pres", (e, taus[t])),
                    ForallElem(
                        u1, "V",
                        Implies(
                            b.inc(e, u1),
                            ForallElem(
                                u2, "V",
                                Implies(
                                    conj([b.inc(e, u2), b.neq(u1, u2)]),
                                    conj([
                                        Not(And((Member(u1, names[c]), Member(u2, names[c]))))
                                        for c in range(k)
                                    ]) if k > 1 else Not(
                                        And((Member(u1, names[0]), Member(u2, names[0])))
                                    ),
                                ),
                            ),
                        ),
                    ),
                ),
            )
            block = conj([one_colour, proper])
            for name in reversed(names):
                block = ExistsSet(name, "V", block)
            per_time.append(block)
        return conj(per_time)

    f = _time_prefix(b, lam, body)
    return CookbookFormula("colouring", tag, f, (), {"k": k, "lifetime": lam})


def build_matching(tag: EncodingTag, variant: str, delta: Optional[int] = None,
                   mode: str = "check") -> CookbookFormula:
    b = _B(tag)
    if variant == "delta":
        _require(tag, ("lifetime", "vim"), "windowed matching")
        _positive("delta", delta)
        v = b.fresh("w")
        e1, e2 = b.fresh("e"), b.fresh("e")
        if tag.kind == "lifetime":
            t1, t2 = b.fresh("t"), b.fresh("t")
            # the stepping-stone interval formula is one-sided (vacuous for
            # backward pairs), so "at least delta apart" is the disjunction
            far = ForallElem(
                t1, "L",
                Implies(
                    RelAtom("pres", (e1, t1)),
                    ForallElem(
                        t2, "L",
                        Implies(
                            RelAtom("pres", (e2, t2)),
                            disj([
                                Not(b.lint(t1, t2, delta)),
                                Not(b.lint(t2, t1, delta)),
                            ]),
                        ),
                    ),
                ),
            )
        else:
            b1, b2 = b.fresh("b"), b.fresh("b")
            far = ForallElem(
                b1, "B",
                Implies(
                    RelAtom("pres", (e1, b1)),
                    ForallElem(
                        b2, "B",
                        Implies(
                            RelAtom("pres", (e2, b2)),
                            conj([
                                Not(b.bint(b1, b2, delta - 1)),
                                Not(b.bint(b2, b1, delta - 1)),
                            ]),
                        ),
                    ),
                ),
            )
        body = ForallElem(
            v, "V",
            ForallElem(
                e1, "TE",
                Implies(
                    Member(e1, "M"),
                    ForallElem(
                        e2, "TE",
                        Implies(
                            Member(e2, "M"),
                            Implies(
                                conj([b.neq(e1, e2), b.inc(e1, v), b.inc(e2, v)]), far
                            ),
                        ),
                    ),
                ),
            ),
        )
        problem = "delta_matching"
        params = {"delta": delta}
    elif variant == "temporal":
        e1, e2 = b.fresh("e"), b.fresh("e")
        body = ForallElem(
            e1, "TE",
            Implies(
                Member(e1, "M"),
                ForallElem(
                    e2, "TE",
                    Implies(
                        Member(e2, "M"),
                        Implies(
                            b.neq(e1, e2),
                            conj([Not(b.psuc(e1, e2)), Not(b.psuc(e2, e1))]),
                        ),
                    ),
                ),
            ),
        )
        problem = "temporal_matching"
        params = {}
    else:
        raise UnsupportedCombinationError(f"unknown matching variant {variant!r}")
    if mode == "check":
        return CookbookFormula(
            f"{problem}:check", tag, body, (FreeVar("M", "set", "TE"),), params
        )
    return CookbookFormula(
        f"{problem}:sentence", tag, ExistsSet("M", "TE", body), (), params
    )


def _dominated_at(b: _B, v, S, tau):
    u, e = b.fresh("w"), b.fresh("e")
    return ExistsElem(
        u, "V",
        conj([
            Member(u, S),
            ExistsElem(
                e, "TE",
                conj([RelAtom("pres", (e, tau)), b.inc(e, u), b.inc(e, v)]),
            ),
        ]),
    )


def build_cover(tag: EncodingTag, variant: str, params=None,
                mode: str = "check") -> CookbookFormula:
    """The cover/domination family; names mirror the problem catalogue."""
    params = dict(params or {})
    b = _B(tag)
    lam = params.get("lifetime", 0)

    if variant == "tp_cover_tee":
        k = params.get("k")
        _positive("k", k)
        names = [f"P{i + 1}" for i in range(k)]
        paths = []
        for name in names:
            u, v = b.fresh("w"), b.fresh("w")
            paths.append(
                ExistsElem(
                    u, "V",
                    ExistsElem(
                        v, "V", conj([b.neq(u, v), b.pe_path(u, v, name)])
                    ),
                )
            )
        e = b.fresh("e")
        exactly_one = ForallElem(
            e, "TE",
            disj([
                conj(
                    [Member(e, names[i])]
                    + [Not(Member(e, names[j])) for j in range(k) if j != i]
                )
                for i in range(k)
            ]),
        )
        f = conj(paths + [exactly_one])
        for name in reversed(names):
            f = ExistsSet(name, "TE", f)
        return CookbookFormula("tp_cover_tee", tag, f, (), params)

    if variant == "reach_ds":
        v, u = b.fresh("w"), b.fresh("w")
        body = ForallElem(
            v, "V",
            disj([
                Member(v, "S"),
                ExistsElem(u, "V", conj([Member(u, "S"), b.reach(u, v)])),
            ]),
        )
        if mode == "check":
            return CookbookFormula(
                "reach_ds:check", tag, body, (FreeVar("S", "set", "V"),), params
            )
        return CookbookFormula(
            "reach_ds:sentence", tag, ExistsSet("S", "V", body), (), params
        )

    # the remaining variants are lifetime-only
    _require(tag, ("lifetime",), f"cover variant {variant}")

    if variant == "edge_cover":
        v2 = b.fresh("w")
        t0 = b.fresh("t")
        e_in, f_cov, e_wit = b.fresh("e"), b.fresh("e"), b.fresh("e")
        active = ExistsElem(
            e_in, "TE", conj([b.inc(e_in, v2), RelAtom("pres", (e_in, t0))])
        )
        covered = ExistsElem(
            f_cov, "TE",
            conj([
                Member(f_cov, "F"),
                b.inc(f_cov, v2),
                ExistsElem(
                    e_wit, "TE",
                    conj([b.same_static(f_cov, e_wit), RelAtom("pres", (e_wit, t0))]),
                ),
            ]),
        )
        body = conj([
            b.edgeset_ok("F"),
            ForallElem(t0, "L", ForallElem(v2, "V", Implies(active, covered))),
        ])
        if mode == "check":
            return CookbookFormula(
                "edge_cover:check", tag, body, (FreeVar("F", "set", "TE"),), params
            )
        return CookbookFormula(
            "edge_cover:sentence", tag, ExistsSet("F", "TE", body), (), params
        )

    if variant == "overtime_ds":
        v, u, t, e = b.fresh("w"), b.fresh("w"), b.fresh("t"), b.fresh("e")
        body = ForallElem(
            v, "V",
            disj([
                Member(v, "S"),
                ExistsElem(
                    u, "V",
                    conj([
                        Member(u, "S"),
                        ExistsElem(
                            t, "L",
                            ExistsElem(
                                e, "TE",
                                conj([
                                    RelAtom("pres", (e, t)),
                                    b.inc(e, u), b.inc(e, v), b.neq(u, v),
                                ]),
                            ),
                        ),
                    ]),
                ),
            ]),
        )
        if mode == "check":
            return CookbookFormula(
                "overtime_ds:check", tag, body, (FreeVar("S", "set", "V"),), params
            )
        return CookbookFormula(
            "overtime_ds:sentence", tag, ExistsSet("S", "V", body), (), params
        )

    if variant == "permanent_ds":
        # vertices with no edge in a snapshot are exempt in that snapshot
        v, t = b.fresh("w"), b.fresh("t")
        e_a = b.fresh("e")
        active = ExistsElem(
            e_a, "TE", conj([b.inc(e_a, v), RelAtom("pres", (e_a, t))])
        )
        body = ForallElem(
            t, "L",
            ForallElem(
                v, "V",
                Implies(active, disj([Member(v, "S"), _dominated_at(b, v, "S", t)])),
            ),
        )
        if mode == "check":
            return CookbookFormula(
                "permanent_ds:check", tag, body, (FreeVar("S", "set", "V"),), params
            )
        return CookbookFormula(
            "permanent_ds:sentence", tag, ExistsSet("S", "V", body), (), params
        )

    # family-valued problems need the lifetime for their set-variable blocks
    if lam < 1 and variant in ("tvc", "delta_tvc", "multistage", "timeline_vc",
                               "timeline_ds", "snapshot_ds"):
        raise ValueError(f"{variant} needs lifetime >= 1")
    names = [f"X{t + 1}" for t in range(lam)]

    if variant == "tvc":
        def body(taus):
            e, e2, x = b.fresh("e"), b.fresh("e"), b.fresh("w")
            branches = [
                conj([
                    RelAtom("pres", (e2, taus[t])),
                    ExistsElem(x, "V", conj([Member(x, names[t]), b.inc(e2, x)])),
                ])
                for t in range(lam)
            ]
            return ForallElem(
                e, "TE",
                ExistsElem(e2, "TE", conj([b.same_static(e, e2), disj(branches)])),
            )
        return _family_cover(b, tag, "tvc", names, body, params, mode)

    if variant == "delta_tvc":
        d = params.get("delta")
        _positive("delta", d)
        if d > lam:
            raise ValueError("delta must be at most the lifetime")
        last_start = lam - d + 1

        def body(taus):
            e, t = b.fresh("e"), b.fresh("t")
            e_w, t_w = b.fresh("e"), b.fresh("t")
            appears = ExistsElem(
                e_w, "TE",
                conj([
                    b.same_static(e, e_w),
                    ExistsElem(
                        t_w, "L",
                        conj([RelAtom("pres", (e_w, t_w)), b.fwd_within(t, t_w, d - 1)]),
                    ),
                ]),
            )
            e_c, t_c, x = b.fresh("e"), b.fresh("t"), b.fresh("w")
            in_some_x = disj([
                conj([Eq(t_c, taus[s]), Member(x, names[s])]) for s in range(lam)
            ])
            covered = ExistsElem(
                e_c, "TE",
                conj([
                    b.same_static(e, e_c),
                    ExistsElem(
                        t_c, "L",
                        conj([
                            RelAtom("pres", (e_c, t_c)),
                            b.fwd_within(t, t_c, d - 1),
                            ExistsElem(x, "V", conj([b.inc(e_c, x), in_some_x])),
                        ]),
                    ),
                ]),
            )
            window_start = Not(RelAtom("ltT", (taus[last_start - 1], t)))
            return ForallElem(
                e, "TE",
                ForallElem(
                    t, "L", Implies(conj([window_start, appears]), covered)
                ),
            )
        return _family_cover(b, tag, "delta_tvc", names, body, params, mode)

    if variant == "multistage":
        ell = params.get("ell")
        if not isinstance(ell, int) or ell < 0:
            raise ValueError("ell must be a nonnegative integer")

        def body(taus):
            parts = []
            for t in range(lam):
                e, x = b.fresh("e"), b.fresh("w")
                parts.append(
                    ForallElem(
                        e, "TE",
                        Implies(
                            RelAtom("pres", (e, taus[t])),
                            ExistsElem(x, "V", conj([Member(x, names[t]), b.inc(e, x)])),
                        ),
                    )
                )
            for t in range(lam - 1):
                S = b.fresh("DS")
                v = b.fresh("w")
                sym_diff = Iff(
                    Member(v, S),
                    disj([
                        And((Member(v, names[t]), Not(Member(v, names[t + 1])))),
                        And((Not(Member(v, names[t])), Member(v, names[t + 1]))),
                    ]),
                )
                parts.append(
                    ExistsSet(
                        S, "V",
                        conj([
                            Not(b.card_at_least(S, ell + 1)),
                            ForallElem(v, "V", sym_diff),
                        ]),
                    )
                )
            return conj(parts)
        return _family_cover(b, tag, "multistage", names, body, params, mode)

    if variant in ("timeline_vc", "timeline_ds"):
        k, ell = params.get("k"), params.get("ell")
        _positive("k", k)
        _positive("ell", ell)
        starts = lam - ell + 1
        if starts < 1:
            raise ValueError("ell must be at most the lifetime")
        snames = [f"X{s + 1}" for s in range(starts)]

        def budget_ok():
            v = b.fresh("w")
            if k + 1 > starts:
                return ForallElem(v, "V", Eq(v, v))
            overfull = disj([
                conj([Member(v, snames[s]) for s in combo])
                for combo in combinations(range(starts), k + 1)
            ])
            return ForallElem(v, "V", Not(overfull))

        if variant == "timeline_vc":
            def body(taus):
                e, t, x = b.fresh("e"), b.fresh("t"), b.fresh("w")
                active_cover = disj([
                    conj([Member(x, snames[s]), b.fwd_within(taus[s], t, ell - 1)])
                    for s in range(starts)
                ])
                coverage = ForallElem(
                    e, "TE",
                    ForallElem(
                        t, "L",
                        Implies(
                            RelAtom("pres", (e, t)),
                            ExistsElem(x, "V", conj([b.inc(e, x), active_cover])),
                        ),
                    ),
                )
                return conj([coverage, budget_ok()])
            return _family_cover(b, tag, "timeline_vc", snames, body, params, mode)

        def body(taus):
            v, t = b.fresh("w"), b.fresh("t")
            u, e = b.fresh("w"), b.fresh("e")
            per_start = [
                conj([
                    b.fwd_within(taus[s], t, ell - 1),
                    disj([
                        Member(v, snames[s]),
                        ExistsElem(
                            u, "V",
                            conj([
                                Member(u, snames[s]),
                                ExistsElem(
                                    e, "TE",
                                    conj([
                                        RelAtom("pres", (e, t)),
                                        b.inc(e, u), b.inc(e, v), b.neq(u, v),
                                    ]),
                                ),
                            ]),
                        ),
                    ]),
                ])
                for s in range(starts)
            ]
            dominated = ForallElem(
                v, "V", ForallElem(t, "L", disj(per_start))
            )
            return conj([dominated, budget_ok()])
        return _family_cover(b, tag, "timeline_ds", snames, body, params, mode)

    if variant == "snapshot_ds":
        def body(taus):
            parts = []
            for t in range(lam):
                v = b.fresh("w")
                parts.append(
                    ForallElem(
                        v, "V",
                        disj([Member(v, names[t]), _dominated_at(b, v, names[t], taus[t])]),
                    )
                )
            return conj(parts)
        return _family_cover(b, tag, "snapshot_ds", names, body, params, mode)

    raise UnsupportedCombinationError(f"unknown cover variant {variant!r}")


def _family_cover(b, tag, problem, names, body_fn, params, mode):
    lam = params["lifetime"]
    inner = _time_prefix(b, lam, body_fn)
    if mode == "check":
        free = tuple(FreeVar(name, "set", "V") for name in names)
        return CookbookFormula(f"{problem}:check", tag, inner, free, params)
    f = inner
    for name in reversed(names):
        f = ExistsSet(name, "V", f)
    return CookbookFormula(f"{problem}:sentence", tag, f, (), params)
