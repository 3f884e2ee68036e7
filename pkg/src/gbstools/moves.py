"""Elementary moves on GBS graphs and transport of words across them.

Every move returns the new graph together with a :class:`MoveRecord` that
carries enough data to replay the move (:func:`apply_move`), undo it exactly
(:func:`invert`) and push words through the induced isomorphism of
fundamental groups (:func:`transport_word`).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable

from .errors import MoveError, ParseError
from .graph import GbsGraph, edge_name, make_edge, require_valid, reverse
from .words import GogWord, check_word

KINDS = ("collapse", "expand", "subdivide", "unsubdivide")


@dataclass(frozen=True)
class MoveRecord:
    kind: str
    data: dict = field(default_factory=dict)

    def to_json(self) -> str:
        return json.dumps({"kind": self.kind, **self.data}, sort_keys=True)

    @classmethod
    def from_json(cls, line: str) -> "MoveRecord":
        obj = json.loads(line)
        kind = obj.pop("kind")
        if kind not in KINDS:
            raise ValueError(f"unknown move kind {kind!r}")
        return cls(kind, obj)


# -- collapse / expand ------------------------------------------------------


def collapse(g: GbsGraph, e: str) -> tuple[GbsGraph, MoveRecord]:
    """Collapse ``e``, merging ``origin(e)`` into ``terminus(e)``.

    Needs ``e`` to be a non-loop with ``label(e)`` in {1, -1}.  Each other end
    ``f`` at the deleted vertex moves to the surviving vertex with label
    ``label(f) * label(e) * label(~e)``.
    """
    require_valid(g)
    if not g.has_edge(e):
        raise MoveError(f"cannot collapse {e}: no such edge")
    v, w = g.origin(e), g.terminus(e)
    if v == w:
        raise MoveError(f"cannot collapse {e}: it is a loop (both endpoints are {v})")
    if g.label(e) not in (1, -1):
        raise MoveError(
            f"cannot collapse {e}: label at its origin {v} is {g.label(e)}, not 1 or -1")
    factor = g.label(e) * g.label(reverse(e))
    rec = MoveRecord("collapse", {
        "edge": e,
        "removed": v,
        "into": w,
        "labels": [g.label(e), g.label(reverse(e))],
        "reattached": [[f, g.label(f), g.label(f) * factor] for f in g.ends_at(v) if f != e],
    })
    return _apply_collapse(g, rec), rec


def _apply_collapse(g: GbsGraph, rec: MoveRecord) -> GbsGraph:
    d = rec.data
    v, w = d["removed"], d["into"]
    factor = d["labels"][0] * d["labels"][1]
    new_edges = []
    for x in g.edges:
        if x.name == edge_name(d["edge"]):
            continue
        o, t, lo, lt = x.origin, x.terminus, x.origin_label, x.terminus_label
        if o == v:
            o, lo = w, lo * factor
        if t == v:
            t, lt = w, lt * factor
        new_edges.append(x._replace(origin=o, terminus=t, origin_label=lo, terminus_label=lt))
    return GbsGraph([u for u in g.vertices if u != v], new_edges)


def expand(g: GbsGraph, v: str, ends: Iterable[str], b: int,
           new_vertex: str | None = None, new_edge: str | None = None) -> tuple[GbsGraph, MoveRecord]:
    """Split ``v``: the ends in ``ends`` move to a new vertex joined to ``v``.

    The new edge runs from the new vertex to ``v`` with labels ``(1, b)``;
    each moved end ``f`` gets label ``label(f) / b``.
    """
    return _expand(g, v, ends, b, 1, new_vertex, new_edge)


def _expand(g, v, ends, b, unit, new_vertex, new_edge):
    require_valid(g)
    if v not in g.vertices:
        raise MoveError(f"cannot expand: {v} is not a vertex")
    if not isinstance(b, int) or b == 0:
        raise MoveError(f"cannot expand: divisor must be a nonzero integer, got {b!r}")
    ends = sorted(set(ends))
    at_v = set(g.ends_at(v))
    for f in ends:
        if f not in at_v:
            raise MoveError(f"cannot expand: {f} is not an edge end at {v}")
        if g.label(f) % b != 0:
            raise MoveError(f"cannot expand: divisor {b} does not divide label {g.label(f)} of end {f}")
    x = new_vertex or g.fresh_vertex("x")
    ne = new_edge or g.fresh_edge("s")
    if x in g.vertices:
        raise MoveError(f"cannot expand: vertex name {x} is taken")
    if g.has_edge(ne):
        raise MoveError(f"cannot expand: edge name {edge_name(ne)} is taken")
    rec = MoveRecord("expand", {
        "vertex": v,
        "new_vertex": x,
        "new_edge": ne,
        "divisor": b,
        "unit": unit,
        "ends": ends,
        "relabeled": [[f, g.label(f), g.label(f) // (unit * b)] for f in ends],
    })
    return _apply_expand(g, rec), rec


def _apply_expand(g: GbsGraph, rec: MoveRecord) -> GbsGraph:
    d = rec.data
    v, x, scale = d["vertex"], d["new_vertex"], d["unit"] * d["divisor"]
    moved = set(d["ends"])
    new_edges = []
    for e in g.edges:
        o, t, lo, lt = e.origin, e.terminus, e.origin_label, e.terminus_label
        if e.name in moved:
            o, lo = x, lo // scale
        if "~" + e.name in moved:
            t, lt = x, lt // scale
        new_edges.append(e._replace(origin=o, terminus=t, origin_label=lo, terminus_label=lt))
    new_edges.append(make_edge(d["new_edge"], x, v, d["unit"], d["divisor"]))
    return GbsGraph(list(g.vertices) + [x], new_edges)


# -- subdivision --------------------------------------------------------------


def subdivide(g: GbsGraph, e: str, new_vertex: str | None = None,
              halves: tuple[str, str] | None = None) -> tuple[GbsGraph, MoveRecord]:
    """Replace ``e`` (labels ``(a, b)``) by ``(a, 1)`` and ``(1, b)`` through a new vertex."""
    return _subdivide(g, e, new_vertex, halves, (1, 1))


def _subdivide(g, e, new_vertex, halves, middle):
    require_valid(g)
    if not g.has_edge(e):
        raise MoveError(f"cannot subdivide {e}: no such edge")
    x = new_vertex or g.fresh_vertex("x")
    if halves is None:
        base = edge_name(e)
        used = {y.name for y in g.edges} - {base}
        h1 = _fresh_name(base + "a", used)
        h2 = _fresh_name(base + "b", used | {h1})
        halves = (h1, h2)
    h1, h2 = halves
    if x in g.vertices:
        raise MoveError(f"cannot subdivide: vertex name {x} is taken")
    for h in halves:
        if g.has_edge(h) and edge_name(h) != edge_name(e):
            raise MoveError(f"cannot subdivide: edge name {edge_name(h)} is taken")
    rec = MoveRecord("subdivide", {
        "edge": e,
        "new_vertex": x,
        "halves": [h1, h2],
        "labels": [g.label(e), g.label(reverse(e))],
        "middle": list(middle),
        "endpoints": [g.origin(e), g.terminus(e)],
    })
    return _apply_subdivide(g, rec), rec


def _fresh_name(stem, used):
    if stem not in used:
        return stem
    i = 1
    while f"{stem}{i}" in used:
        i += 1
    return f"{stem}{i}"


def _apply_subdivide(g: GbsGraph, rec: MoveRecord) -> GbsGraph:
    d = rec.data
    u, w = d["endpoints"]
    a, b = d["labels"]
    s1, s2 = d["middle"]
    x = d["new_vertex"]
    h1, h2 = d["halves"]
    return g.replace(
        remove_edges=[d["edge"]],
        add_vertices=[x],
        add_edges=[make_edge(h1, u, x, a, s1), make_edge(h2, x, w, s2, b)],
    )


def unsubdivide(g: GbsGraph, x: str, first: str | None = None,
                new_edge: str | None = None) -> tuple[GbsGraph, MoveRecord]:
    """Merge the two edges at a vertex ``x`` whose two ends are labeled +-1.

    With ends ``f1`` (``x -> u``) and ``f2`` (``x -> w``) the result is one edge
    ``u -> w`` labeled ``(label(~f1), label(f1) * label(f2) * label(~f2))``.
    ``first`` picks ``f1``; the default is the smaller end name.
    """
    require_valid(g)
    if x not in g.vertices:
        raise MoveError(f"cannot unsubdivide: {x} is not a vertex")
    ends = list(g.ends_at(x))
    if len(ends) != 2:
        raise MoveError(f"cannot unsubdivide {x}: it has {len(ends)} edge ends, not 2")
    if any(g.label(f) not in (1, -1) for f in ends):
        raise MoveError(f"cannot unsubdivide {x}: an end label is not 1 or -1")
    if ends[0] == reverse(ends[1]):
        raise MoveError(f"cannot unsubdivide {x}: its two ends belong to one loop")
    if first is not None:
        if first not in ends:
            raise MoveError(f"cannot unsubdivide {x}: {first} is not an end at {x}")
        ends.remove(first)
        f1, f2 = first, ends[0]
    else:
        f1, f2 = ends
    ne = new_edge or edge_name(f1)
    if g.has_edge(ne) and edge_name(ne) not in (edge_name(f1), edge_name(f2)):
        raise MoveError(f"cannot unsubdivide: edge name {edge_name(ne)} is taken")
    rec = MoveRecord("unsubdivide", {
        "vertex": x,
        "ends": [f1, f2],
        "end_labels": [g.label(f1), g.label(f2)],
        "far_labels": [g.label(reverse(f1)), g.label(reverse(f2))],
        "far_vertices": [g.terminus(f1), g.terminus(f2)],
        "new_edge": ne,
    })
    return _apply_unsubdivide(g, rec), rec


def _apply_unsubdivide(g: GbsGraph, rec: MoveRecord) -> GbsGraph:
    d = rec.data
    (f1, f2), (s1, s2), (a, b) = d["ends"], d["end_labels"], d["far_labels"]
    u, w = d["far_vertices"]
    return g.replace(
        remove_vertices=[d["vertex"]],
        remove_edges=[f1, f2],
        add_edges=[make_edge(d["new_edge"], u, w, a, s1 * s2 * b)],
    )


# -- replay, inversion, reduction ----------------------------------------------


_APPLY = {
    "collapse": _apply_collapse,
    "expand": _apply_expand,
    "subdivide": _apply_subdivide,
    "unsubdivide": _apply_unsubdivide,
}


def apply_move(g: GbsGraph, rec: MoveRecord) -> GbsGraph:
    """Replay a recorded move on ``g`` (re-checking its preconditions)."""
    d = rec.data
    if rec.kind == "collapse":
        out, _ = collapse(g, d["edge"])
        return out
    if rec.kind == "expand":
        out, _ = _expand(g, d["vertex"], d["ends"], d["divisor"], d["unit"],
                         d["new_vertex"], d["new_edge"])
        return out
    if rec.kind == "subdivide":
        out, _ = _subdivide(g, d["edge"], d["new_vertex"], tuple(d["halves"]), tuple(d["middle"]))
        return out
    if rec.kind == "unsubdivide":
        out, _ = unsubdivide(g, d["vertex"], d["ends"][0], d["new_edge"])
        return out
    raise MoveError(f"unknown move kind {rec.kind!r}")


def invert(rec: MoveRecord) -> MoveRecord:
    """The record of the move that exactly undoes ``rec`` (same names, same labels)."""
    d = rec.data
    if rec.kind == "collapse":
        lab, back = d["labels"]
        ends = [f for f, _, _ in d["reattached"]]
        return MoveRecord("expand", {
            "vertex": d["into"],
            "new_vertex": d["removed"],
            "new_edge": d["edge"],
            "divisor": back,
            "unit": lab,
            "ends": sorted(ends),
            "relabeled": [[f, new, old] for f, old, new in d["reattached"]],
        })
    if rec.kind == "expand":
        return MoveRecord("collapse", {
            "edge": d["new_edge"],
            "removed": d["new_vertex"],
            "into": d["vertex"],
            "labels": [d["unit"], d["divisor"]],
            "reattached": [[f, new, old] for f, old, new in d["relabeled"]],
        })
    if rec.kind == "subdivide":
        h1, h2 = d["halves"]
        (a, b), (s1, s2) = d["labels"], d["middle"]
        return MoveRecord("unsubdivide", {
            "vertex": d["new_vertex"],
            "ends": [reverse(h1), h2],
            "end_labels": [s1, s2],
            "far_labels": [a, b],
            "far_vertices": list(d["endpoints"]),
            "new_edge": d["edge"],
        })
    if rec.kind == "unsubdivide":
        f1, f2 = d["ends"]
        return MoveRecord("subdivide", {
            "edge": d["new_edge"],
            "new_vertex": d["vertex"],
            "halves": [reverse(f1), f2],
            "labels": list(d["far_labels"]),
            "middle": list(d["end_labels"]),
            "endpoints": list(d["far_vertices"]),
        })
    raise MoveError(f"unknown move kind {rec.kind!r}")


def collapsible_edges(g: GbsGraph) -> list[str]:
    return [f for f in g.oriented_edges() if not g.is_loop(f) and g.label(f) in (1, -1)]


def _edge_order(f: str):
    return (edge_name(f), f.startswith("~"))


def reduce_graph(g: GbsGraph) -> tuple[GbsGraph, list[MoveRecord]]:
    """Collapse eligible edges until the graph is reduced.

    Policy: the eligible oriented edge with the smallest edge name, unreversed
    orientation first.
    """
    require_valid(g)
    records = []
    while True:
        cands = collapsible_edges(g)
        if not cands:
            return g, records
        g, rec = collapse(g, min(cands, key=_edge_order))
        records.append(rec)


def replay(g: GbsGraph, records: Iterable[MoveRecord]) -> GbsGraph:
    for rec in records:
        g = apply_move(g, rec)
    return g


def essential_vertices(g: GbsGraph) -> set[str]:
    """Vertices other than those with exactly two ends, both labeled +-1."""
    require_valid(g)
    out = set()
    for v in g.vertices:
        ends = g.ends_at(v)
        if not (len(ends) == 2 and all(g.label(f) in (1, -1) for f in ends)):
            out.add(v)
    return out


# -- word transport -----------------------------------------------------------


def transport_word(rec: MoveRecord, w: GogWord, source: GbsGraph | None = None) -> GogWord:
    """Image of ``w`` under the isomorphism of fundamental groups induced by ``rec``.

    If ``source`` (the graph the move was applied to) is given, ``w`` is checked
    against it first.
    """
    if source is not None:
        check_word(source, w)
    d = rec.data
    if rec.kind == "collapse":
        lab, back = d["labels"]
        ends = [d["edge"]] + [f for f, _, _ in d["reattached"]]
        return _substitute(w, d["removed"], d["into"], lab * back,
                           {d["edge"]: [], reverse(d["edge"]): []}, ends)
    if rec.kind == "expand":
        moved = set(d["ends"])
        ne, v = d["new_edge"], d["vertex"]
        subst = {}
        for f in set(w.edges):
            path = [f]
            if f in moved:
                path = [reverse(ne)] + path
            if reverse(f) in moved:
                path = path + [ne]
            if len(path) > 1:
                subst[f] = path
        return _substitute(w, None, None, 1, subst)
    if rec.kind == "subdivide":
        h1, h2 = d["halves"]
        e = d["edge"]
        return _substitute(w, None, None, 1, {e: [h1, h2], reverse(e): [reverse(h2), reverse(h1)]})
    if rec.kind == "unsubdivide":
        f1, f2 = d["ends"]
        s2, b = d["end_labels"][1], d["far_labels"][1]
        ne = d["new_edge"]
        return _substitute(w, d["vertex"], d["far_vertices"][1], s2 * b,
                           {f1: [reverse(ne)], reverse(f1): [ne], f2: [], reverse(f2): []},
                           [f1, f2])
    raise MoveError(f"unknown move kind {rec.kind!r}")


def _substitute(w: GogWord, old_vertex, new_vertex, factor: int, subst: dict,
                ends_at_old=()) -> GogWord:
    """Rewrite edge letters by ``subst``; rescale syllables sitting at ``old_vertex``.

    A syllable after letter ``e`` sits at ``terminus(e)``, which is the old
    vertex iff ``~e`` is one of ``ends_at_old``.  Inserted edges carry trivial
    syllables; a deleted letter merges its neighbouring syllables.
    """
    ends_at_old = set(ends_at_old)
    base = w.base
    g0 = w.gs[0]
    if base == old_vertex:
        base, g0 = new_vertex, g0 * factor
    gs, edges = [g0], []
    for e, x in zip(w.edges, w.gs[1:]):
        for h in subst.get(e, [e]):
            edges.append(h)
            gs.append(0)
        gs[-1] += x * factor if reverse(e) in ends_at_old else x
    return GogWord.from_parts(base, gs, edges)


def read_move_log(text: str, source: str | None = None) -> list[MoveRecord]:
    out = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        try:
            out.append(MoveRecord.from_json(line))
        except (ValueError, KeyError) as exc:
            raise ParseError(f"bad move record: {exc}", lineno, source) from None
    return out


def write_move_log(records: Iterable[MoveRecord]) -> str:
    return "".join(rec.to_json() + "\n" for rec in records)
