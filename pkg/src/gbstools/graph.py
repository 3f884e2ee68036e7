"""GBS graphs of groups: every vertex and edge group is infinite cyclic.

A geometric edge is stored once, as ``Edge(name, origin, terminus,
origin_label, terminus_label)``.  Its two orientations are addressed by the
strings ``name`` and ``~name``; ``label(f)`` is always the label of the end
at ``origin(f)``, i.e. the edge group includes into the vertex group at
``origin(f)`` as multiplication by ``label(f)``.
"""

from __future__ import annotations

import itertools
import math
import re
from collections import Counter, defaultdict
from typing import Iterable, NamedTuple

from .errors import InvalidGraphError, ParseError

#: Label sentinel for an edge group of infinite index in its vertex group.
INFINITE_INDEX = math.inf

NAME_RE = re.compile(r"^[A-Za-z0-9_.'\-]+$")


class Edge(NamedTuple):
    name: str
    origin: str
    terminus: str
    origin_label: int
    terminus_label: int


def reverse(f: str) -> str:
    """The oppositely oriented copy of the oriented edge ``f``."""
    return f[1:] if f.startswith("~") else "~" + f


def edge_name(f: str) -> str:
    return f[1:] if f.startswith("~") else f


def make_edge(f: str, origin: str, terminus: str, label: int, reverse_label: int) -> Edge:
    """Build the geometric edge whose orientation ``f`` runs origin -> terminus."""
    if f.startswith("~"):
        return Edge(f[1:], terminus, origin, reverse_label, label)
    return Edge(f, origin, terminus, label, reverse_label)


class GbsGraph:
    """Immutable finite graph with a nonzero integer label on every edge end.

    Construction does not validate; call :func:`validate` for diagnostics or
    :func:`require_valid` to raise.
    """

    __slots__ = ("vertices", "edges", "_by_name", "_ends", "_key")

    def __init__(self, vertices: Iterable[str], edges: Iterable[Edge | tuple] = ()):
        self.vertices: tuple[str, ...] = tuple(vertices)
        self.edges: tuple[Edge, ...] = tuple(Edge(*e) for e in edges)
        self._by_name = {e.name: e for e in self.edges}
        ends: dict[str, list[str]] = defaultdict(list)
        for e in self.edges:
            ends[e.origin].append(e.name)
            ends[e.terminus].append("~" + e.name)
        self._ends = {v: tuple(sorted(fs)) for v, fs in ends.items()}
        self._key = (tuple(sorted(self.vertices)), tuple(sorted(self.edges)))

    def __eq__(self, other):
        return isinstance(other, GbsGraph) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        return f"GbsGraph(vertices={list(self._key[0])}, edges={list(self._key[1])})"

    # -- oriented-edge accessors ---------------------------------------

    def edge(self, f: str) -> Edge:
        try:
            return self._by_name[edge_name(f)]
        except KeyError:
            raise InvalidGraphError(f"no edge named {edge_name(f)!r}") from None

    def has_edge(self, f: str) -> bool:
        return edge_name(f) in self._by_name

    def origin(self, f: str) -> str:
        e = self.edge(f)
        return e.terminus if f.startswith("~") else e.origin

    def terminus(self, f: str) -> str:
        e = self.edge(f)
        return e.origin if f.startswith("~") else e.terminus

    def label(self, f: str) -> int:
        e = self.edge(f)
        return e.terminus_label if f.startswith("~") else e.origin_label

    def oriented_edges(self) -> list[str]:
        return sorted(itertools.chain.from_iterable((e.name, "~" + e.name) for e in self.edges))

    def ends_at(self, v: str) -> tuple[str, ...]:
        """Oriented edges with origin ``v``; a loop at ``v`` contributes both."""
        return self._ends.get(v, ())

    def is_loop(self, f: str) -> bool:
        e = self.edge(f)
        return e.origin == e.terminus

    def vertex_valence(self, v: str) -> int:
        """Valence of any lift of ``v`` in the Bass-Serre tree."""
        return sum(abs(self.label(f)) for f in self.ends_at(v))

    def replace(self, remove_vertices=(), remove_edges=(), add_vertices=(), add_edges=()) -> "GbsGraph":
        rv, re_ = set(remove_vertices), {edge_name(f) for f in remove_edges}
        new_edges = {e.name: e for e in self.edges if e.name not in re_}
        for e in add_edges:
            new_edges[e.name] = e
        verts = [v for v in self.vertices if v not in rv] + list(add_vertices)
        return GbsGraph(verts, new_edges.values())

    def fresh_vertex(self, stem: str = "x") -> str:
        return _fresh(stem, set(self.vertices))

    def fresh_edge(self, stem: str = "s") -> str:
        return _fresh(stem, set(self._by_name))


def _fresh(stem: str, used: set[str]) -> str:
    if stem not in used:
        return stem
    for i in itertools.count(1):
        name = f"{stem}{i}"
        if name not in used:
            return name


# -- validation and predicates -----------------------------------------


def _is_label(x) -> bool:
    if x == INFINITE_INDEX:
        return True
    return isinstance(x, int) and not isinstance(x, bool)


def validate(g: GbsGraph) -> list[str]:
    """Return a list of violations; empty iff ``g`` is a valid GBS graph."""
    problems = []
    seen = Counter(g.vertices)
    for v, n in sorted(seen.items()):
        if n > 1:
            problems.append(f"vertex {v}: declared {n} times")
        if not NAME_RE.match(v):
            problems.append(f"vertex {v!r}: invalid name")
    names = Counter(e.name for e in g.edges)
    for name, n in sorted(names.items()):
        if n > 1:
            problems.append(f"edge {name}: declared {n} times")
        if name in seen:
            problems.append(f"edge {name}: name clashes with a vertex")
    for e in g.edges:
        if not NAME_RE.match(e.name):
            problems.append(f"edge {e.name!r}: invalid name")
        for which, v in (("origin", e.origin), ("terminus", e.terminus)):
            if v not in seen:
                problems.append(f"edge {e.name}: {which} {v} is not a vertex")
        for which, lab in (("origin", e.origin_label), ("terminus", e.terminus_label)):
            if not _is_label(lab):
                problems.append(f"edge {e.name}: label at {which} is not an integer: {lab!r}")
            elif lab == 0:
                problems.append(f"edge {e.name}: label at {which} is 0")
    if not g.vertices:
        problems.append("graph has no vertices")
    elif not problems and not is_connected(g):
        problems.append("graph is not connected")
    return problems


def require_valid(g: GbsGraph, finite: bool = True) -> None:
    problems = validate(g)
    if problems:
        raise InvalidGraphError("invalid graph: " + "; ".join(problems))
    if finite and not is_locally_finite(g):
        raise InvalidGraphError("graph has an infinite-index edge end")


def is_connected(g: GbsGraph) -> bool:
    if not g.vertices:
        return False
    adj = defaultdict(set)
    for e in g.edges:
        adj[e.origin].add(e.terminus)
        adj[e.terminus].add(e.origin)
    start = g.vertices[0]
    seen, stack = {start}, [start]
    while stack:
        for w in adj[stack.pop()]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return seen == set(g.vertices)


def is_reduced(g: GbsGraph) -> bool:
    """True iff no non-loop edge has an end labeled +1 or -1."""
    require_valid(g, finite=False)
    return not any(
        not g.is_loop(f) and g.label(f) in (1, -1) for f in g.oriented_edges()
    )


def is_locally_finite(g: GbsGraph) -> bool:
    """False iff some end carries the :data:`INFINITE_INDEX` sentinel."""
    require_valid(g, finite=False)
    return all(
        lab != INFINITE_INDEX for e in g.edges for lab in (e.origin_label, e.terminus_label)
    )


def first_betti_number(g: GbsGraph) -> int:
    """Rank of the fundamental group of the underlying graph: E - V + 1."""
    if not is_connected(g):
        raise InvalidGraphError("first Betti number needs a connected graph")
    return len(g.edges) - len(g.vertices) + 1


# -- isomorphism ----------------------------------------------------------


def _edge_key(i: int, j: int, a: int, b: int, signs: bool) -> tuple:
    variants = [(i, j, a, b), (j, i, b, a)]
    if signs:
        variants += [(i, j, -a, -b), (j, i, -b, -a)]
    return min(variants)


def _vertex_classes(g: GbsGraph) -> list[list[str]]:
    sig = {}
    for v in g.vertices:
        ends = g.ends_at(v)
        sig[v] = (
            len(ends),
            tuple(sorted(abs(g.label(f)) for f in ends)),
            sum(g.is_loop(f) for f in ends),
        )
    groups = defaultdict(list)
    for v in g.vertices:
        groups[sig[v]].append(v)
    return [groups[k] for k in sorted(groups)]


def canonical_form(g: GbsGraph, signs: bool = False) -> tuple:
    """Isomorphism-invariant key, by exhaustive search over vertex bijections.

    With ``signs=True`` the key is also invariant under the admissible sign
    changes (negate both labels of an edge; negate every label at a vertex),
    which change the generators but not the graph of groups.
    """
    classes = _vertex_classes(g)
    shape = tuple((len(c), i) for i, c in enumerate(classes))
    best = None
    n = len(g.vertices)
    sign_choices = list(itertools.product((1, -1), repeat=n)) if signs else [(1,) * n]
    for perms in itertools.product(*(itertools.permutations(c) for c in classes)):
        order = list(itertools.chain.from_iterable(perms))
        index = {v: i for i, v in enumerate(order)}
        for vs in sign_choices:
            key = tuple(sorted(
                _edge_key(index[e.origin], index[e.terminus],
                          vs[index[e.origin]] * e.origin_label,
                          vs[index[e.terminus]] * e.terminus_label, signs)
                for e in g.edges
            ))
            if best is None or key < best:
                best = key
    return (shape, best)


def is_isomorphic(g: GbsGraph, h: GbsGraph, signs: bool = False) -> bool:
    if len(g.vertices) != len(h.vertices) or len(g.edges) != len(h.edges):
        return False
    return canonical_form(g, signs) == canonical_form(h, signs)


def relabel(g: GbsGraph, vertex_map: dict[str, str], edge_map: dict[str, str]) -> GbsGraph:
    """Rename vertices and geometric edges (missing keys keep their names)."""
    vm = lambda v: vertex_map.get(v, v)  # noqa: E731
    return GbsGraph(
        [vm(v) for v in g.vertices],
        [Edge(edge_map.get(e.name, e.name), vm(e.origin), vm(e.terminus),
              e.origin_label, e.terminus_label) for e in g.edges],
    )


# -- text format ------------------------------------------------------------


def parse_graph(text: str, source: str | None = None) -> GbsGraph:
    """Parse ``vertex <name>`` / ``edge <name> <o> <t> <lo> <lt>`` lines."""
    vertices, edges = [], []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tok = line.split()
        if tok[0] == "vertex":
            if len(tok) != 2:
                raise ParseError("expected 'vertex <name>'", lineno, source)
            vertices.append(_name(tok[1], lineno, source))
        elif tok[0] == "edge":
            if len(tok) != 6:
                raise ParseError(
                    "expected 'edge <name> <origin> <terminus> <label_at_origin> <label_at_terminus>'",
                    lineno, source)
            name, o, t = (_name(x, lineno, source) for x in tok[1:4])
            edges.append(Edge(name, o, t, _int(tok[4], lineno, source), _int(tok[5], lineno, source)))
        else:
            raise ParseError(f"unknown declaration {tok[0]!r}", lineno, source)
    return GbsGraph(vertices, edges)


def _name(tok: str, lineno: int, source) -> str:
    if not NAME_RE.match(tok):
        raise ParseError(f"invalid name {tok!r}", lineno, source)
    return tok


def _int(tok: str, lineno: int, source) -> int:
    try:
        return int(tok)
    except ValueError:
        raise ParseError(f"expected an integer label, got {tok!r}", lineno, source) from None


def format_graph(g: GbsGraph) -> str:
    lines = [f"vertex {v}" for v in sorted(g.vertices)]
    for e in sorted(g.edges):
        lines.append(f"edge {e.name} {e.origin} {e.terminus} {e.origin_label} {e.terminus_label}")
    return "\n".join(lines) + "\n"
