"""Pretty-printer for formulas; parse(print(f)) reproduces f structurally."""
from __future__ import annotations

from .ast import (
    And,
    Eq,
    ExistsElem,
    ExistsSet,
    ForallElem,
    ForallSet,
    Formula,
    Iff,
    Implies,
    Member,
    Not,
    Or,
    RelAtom,
)

# binding strength; quantifiers are weakest because their body runs maximally right
_PREC_IFF, _PREC_IMP, _PREC_OR, _PREC_AND, _PREC_NOT, _PREC_ATOM = 1, 2, 3, 4, 5, 9
_PREC_QUANT = 0


def _prec(f: Formula) -> int:
    if isinstance(f, Iff):
        return _PREC_IFF
    if isinstance(f, Implies):
        return _PREC_IMP
    if isinstance(f, Or):
        return _PREC_OR
    if isinstance(f, And):
        return _PREC_AND
    if isinstance(f, Not):
        return _PREC_NOT
    if isinstance(f, (ExistsElem, ForallElem, ExistsSet, ForallSet)):
        return _PREC_QUANT
    return _PREC_ATOM


def _show(f: Formula, required: int) -> str:
    text = _render(f)
    if _prec(f) < required:
        return f"({text})"
    return text


def _render(f: Formula) -> str:
    if isinstance(f, Eq):
        return f"{f.left} = {f.right}"
    if isinstance(f, RelAtom):
        return f"{f.name}({', '.join(f.terms)})"
    if isinstance(f, Member):
        return f"{f.element} in {f.set_var}"
    if isinstance(f, Not):
        return "!" + _show(f.body, _PREC_NOT)
    if isinstance(f, And):
        return " & ".join(_show(p, _PREC_NOT) for p in f.parts)
    if isinstance(f, Or):
        return " | ".join(_show(p, _PREC_AND) for p in f.parts)
    if isinstance(f, Implies):
        return f"{_show(f.left, _PREC_OR)} -> {_show(f.right, _PREC_IMP)}"
    if isinstance(f, Iff):
        return f"{_show(f.left, _PREC_IFF)} <-> {_show(f.right, _PREC_IMP)}"
    if isinstance(f, (ExistsElem, ForallElem)):
        word = "exists" if isinstance(f, ExistsElem) else "forall"
        guard = f" : {f.sort}" if f.sort else ""
        return f"{word} {f.var}{guard} . {_render(f.body)}"
    if isinstance(f, (ExistsSet, ForallSet)):
        word = "Exists" if isinstance(f, ExistsSet) else "Forall"
        guard = f" sub {f.sort}" if f.sort else ""
        return f"{word} {f.var}{guard} . {_render(f.body)}"
    raise TypeError(f"not a formula node: {f!r}")


def print_formula(f: Formula) -> str:
    return _render(f)
