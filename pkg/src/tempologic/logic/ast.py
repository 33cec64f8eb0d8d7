"""Abstract syntax for the FO/MSO formula language.

Terms are variable names; constants enter only through assignments binding
free variables.  And/Or are n-ary and kept flattened so that parsing a
printed formula reproduces the same tree.  Element quantifiers may carry a
sort guard (one of V, TE, L, B); set quantifiers range over subsets of their
guarded sort, or of the whole universe when unguarded.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Tuple

SORT_NAMES = ("V", "TE", "L", "B")


class Formula:
    __slots__ = ()


@dataclass(frozen=True)
class Eq(Formula):
    left: str
    right: str


@dataclass(frozen=True)
class RelAtom(Formula):
    name: str
    terms: Tuple[str, ...]


@dataclass(frozen=True)
class Member(Formula):
    element: str
    set_var: str


@dataclass(frozen=True)
class Not(Formula):
    body: Formula


@dataclass(frozen=True)
class And(Formula):
    parts: Tuple[Formula, ...]


@dataclass(frozen=True)
class Or(Formula):
    parts: Tuple[Formula, ...]


@dataclass(frozen=True)
class Implies(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Iff(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class ExistsElem(Formula):
    var: str
    sort: Optional[str]
    body: Formula


@dataclass(frozen=True)
class ForallElem(Formula):
    var: str
    sort: Optional[str]
    body: Formula


@dataclass(frozen=True)
class ExistsSet(Formula):
    var: str
    sort: Optional[str]
    body: Formula


@dataclass(frozen=True)
class ForallSet(Formula):
    var: str
    sort: Optional[str]
    body: Formula


QUANTIFIERS = (ExistsElem, ForallElem, ExistsSet, ForallSet)
ELEMENT_QUANTIFIERS = (ExistsElem, ForallElem)
SET_QUANTIFIERS = (ExistsSet, ForallSet)


@dataclass(frozen=True)
class FreeVar:
    """Declared free variable: kind is 'element' or 'set'."""

    name: str
    kind: str = "element"
    sort: Optional[str] = None


def conj(parts: Iterable[Formula]) -> Formula:
    """Flattened n-ary conjunction; single operand passes through."""
    flat = []
    for p in parts:
        if isinstance(p, And):
            flat.extend(p.parts)
        else:
            flat.append(p)
    if not flat:
        raise ValueError("empty conjunction")
    return flat[0] if len(flat) == 1 else And(tuple(flat))


def disj(parts: Iterable[Formula]) -> Formula:
    flat = []
    for p in parts:
        if isinstance(p, Or):
            flat.extend(p.parts)
        else:
            flat.append(p)
    if not flat:
        raise ValueError("empty disjunction")
    return flat[0] if len(flat) == 1 else Or(tuple(flat))


def children(f: Formula):
    if isinstance(f, Not):
        return (f.body,)
    if isinstance(f, (And, Or)):
        return f.parts
    if isinstance(f, (Implies, Iff)):
        return (f.left, f.right)
    if isinstance(f, QUANTIFIERS):
        return (f.body,)
    return ()


def walk(f: Formula):
    yield f
    for c in children(f):
        yield from walk(c)


def free_variables(f: Formula):
    """Free variables in first-occurrence order, as (name, kind) pairs.

    A name is free if some occurrence is not in the scope of a quantifier
    binding it; kind comes from how the occurrence is used.
    """
    out = []
    seen = set()

    def note(name, kind):
        if name not in seen:
            seen.add(name)
            out.append((name, kind))

    def go(node, bound):
        if isinstance(node, Eq):
            for t in (node.left, node.right):
                if t not in bound:
                    note(t, "element")
        elif isinstance(node, RelAtom):
            for t in node.terms:
                if t not in bound:
                    note(t, "element")
        elif isinstance(node, Member):
            if node.element not in bound:
                note(node.element, "element")
            if node.set_var not in bound:
                note(node.set_var, "set")
        elif isinstance(node, QUANTIFIERS):
            go(node.body, bound | {node.var})
        else:
            for c in children(node):
                go(c, bound)

    go(f, frozenset())
    return out


def is_fo(f: Formula) -> bool:
    """True when the formula involves no second-order variables at all."""
    return not any(isinstance(n, SET_QUANTIFIERS + (Member,)) for n in walk(f))


def ast_stats(f: Formula) -> dict:
    """Structural counts used by the formula-length contracts."""
    stats = {
        "nodes": 0,
        "element_quantifiers": 0,
        "set_quantifiers": 0,
        "atoms": 0,
        "inequality_atoms": 0,
    }
    for n in walk(f):
        stats["nodes"] += 1
        if isinstance(n, ELEMENT_QUANTIFIERS):
            stats["element_quantifiers"] += 1
        elif isinstance(n, SET_QUANTIFIERS):
            stats["set_quantifiers"] += 1
        elif isinstance(n, (Eq, RelAtom, Member)):
            stats["atoms"] += 1
    # inequality atoms are Not(Eq(..)) nodes
    for n in walk(f):
        if isinstance(n, Not) and isinstance(n.body, Eq):
            stats["inequality_atoms"] += 1
    return stats
