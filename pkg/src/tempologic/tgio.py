"""The .tg text format for temporal graphs.

Line 1 is the header "tg 1".  Line 2 carries the flags, one from
{directed, undirected} and one from {strict, nonstrict}, in either order.
Then "vertex NAME" and "edge U V T [T2 T3 ...]" lines; several labels on an
edge line expand into one temporal edge per label.  "#" starts a comment;
blank lines are ignored.  parse(print(g)) reproduces the graph exactly.
"""
from __future__ import annotations

from .errors import SelfLoopError, TempoError
from .tgraph import TemporalGraph, temporal_graph


class TgSyntaxError(TempoError):
    def __init__(self, message, line=None):
        if line is not None:
            message = f"{message} (line {line})"
        super().__init__(message)
        self.line = line


class DuplicateHeaderError(TgSyntaxError):
    pass


def parse_tg(text: str) -> TemporalGraph:
    lines = text.splitlines()
    header_seen = False
    flags_seen = False
    directed = False
    strict = True
    vertices = []
    edges = []
    for lineno, raw in enumerate(lines, start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        words = line.split()
        if not header_seen:
            if words != ["tg", "1"]:
                raise TgSyntaxError(f"expected header 'tg 1', found {line!r}", lineno)
            header_seen = True
            continue
        if words[0] == "tg":
            raise DuplicateHeaderError("second 'tg' header", lineno)
        if not flags_seen:
            if len(words) != 2 or {*words} - {"directed", "undirected", "strict", "nonstrict"}:
                raise TgSyntaxError(
                    "expected flags line with one of directed|undirected and strict|nonstrict",
                    lineno,
                )
            if ("directed" in words) == ("undirected" in words):
                raise TgSyntaxError("need exactly one of directed|undirected", lineno)
            if ("strict" in words) == ("nonstrict" in words):
                raise TgSyntaxError("need exactly one of strict|nonstrict", lineno)
            directed = "directed" in words
            strict = "strict" in words
            flags_seen = True
            continue
        if words[0] == "vertex":
            if len(words) != 2:
                raise TgSyntaxError("vertex lines are 'vertex NAME'", lineno)
            vertices.append(words[1])
        elif words[0] == "edge":
            if len(words) < 4:
                raise TgSyntaxError("edge lines are 'edge U V T [T2 ...]'", lineno)
            u, v = words[1], words[2]
            if u == v:
                raise SelfLoopError(f"self-loop at {u!r} (line {lineno})")
            for t_raw in words[3:]:
                try:
                    t = int(t_raw)
                except ValueError:
                    raise TgSyntaxError(f"bad time label {t_raw!r}", lineno) from None
                if t < 1:
                    raise TgSyntaxError(f"time label {t} must be positive", lineno)
                edges.append((u, v, t))
            vertices.extend([u, v])
        else:
            raise TgSyntaxError(f"unknown directive {words[0]!r}", lineno)
    if not header_seen:
        raise TgSyntaxError("missing 'tg 1' header", 1)
    if not flags_seen:
        raise TgSyntaxError("missing flags line", 2)
    try:
        return temporal_graph(vertices, edges, directed=directed, strict=strict)
    except TempoError as exc:
        raise type(exc)(f"{exc}") from exc


def print_tg(g: TemporalGraph) -> str:
    out = ["tg 1"]
    out.append(
        ("directed" if g.directed else "undirected")
        + " "
        + ("strict" if g.strict else "nonstrict")
    )
    touched = {x for e in g.edges for x in (e.u, e.v)}
    for v in sorted(g.vertices - touched):
        out.append(f"vertex {v}")
    by_pair = {}
    for e in sorted(g.edges):
        by_pair.setdefault((e.u, e.v), []).append(e.t)
    for (u, v), times in sorted(by_pair.items()):
        out.append(f"edge {u} {v} " + " ".join(str(t) for t in sorted(times)))
    return "\n".join(out) + "\n"


def load_tg(path: str) -> TemporalGraph:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_tg(fh.read())
