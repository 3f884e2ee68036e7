"""Finite balls in the Bass-Serre tree of a GBS graph of groups.

A tree vertex is addressed by the path of steps ``(f, c)`` from the root,
where ``f`` is an edge end at the current quotient vertex and
``0 <= c < |label(f)|`` picks one of the ``|label(f)|`` tree edges above
``f``.  Slot ``c = 0`` on the end ``~e`` is the edge back to the parent and
is never a child.  The ball has the right valences and orbit structure but
no twisting data for the group action.
"""

from __future__ import annotations

import os
from collections import Counter, defaultdict
from dataclasses import dataclass

from .errors import BallTooLargeError, GbsError
from .graph import GbsGraph, require_valid, reverse

DEFAULT_CAP = 10**6

Address = tuple  # tuple of (edge end, coset index) steps


@dataclass(frozen=True)
class TreeBall:
    graph: GbsGraph
    base: str
    radius: int
    image: dict  # address -> quotient vertex
    children: dict  # address -> number of child addresses

    @property
    def root(self) -> Address:
        return ()

    @property
    def vertices(self) -> list[Address]:
        return sorted(self.image, key=_addr_key)

    @property
    def frontier(self) -> list[Address]:
        return [a for a in self.vertices if len(a) == self.radius]

    def is_interior(self, a: Address) -> bool:
        return len(a) < self.radius

    def valence(self, a: Address) -> int:
        """Number of tree edges at ``a`` (only complete for interior addresses)."""
        return self.children[a] + (1 if a else 0)

    def incident_ends(self, a: Address) -> list[str]:
        """Quotient edge end under each tree edge at ``a`` (parent direction first)."""
        out = [reverse(a[-1][0])] if a else []
        out += [f for f in self.graph.ends_at(self.image[a])
                for c in range(abs(self.graph.label(f)))
                if (a + ((f, c),)) in self.image]
        return out

    def __len__(self):
        return len(self.image)


def _addr_key(a: Address):
    return (len(a), a)


def ball_cap() -> int:
    env = os.environ.get("GBS_BALL_CAP")
    if env:
        try:
            return int(env)
        except ValueError:
            raise GbsError(f"GBS_BALL_CAP must be an integer, got {env!r}") from None
    return DEFAULT_CAP


def projected_size(g: GbsGraph, base: str, r: int) -> int:
    """Vertex count of the radius-``r`` ball, computed per arrival type."""
    level = Counter({(base, None): 1})
    total = 1
    for _ in range(r):
        nxt = Counter()
        for (v, arrived), n in level.items():
            back = reverse(arrived) if arrived else None
            for f in g.ends_at(v):
                slots = abs(g.label(f)) - (f == back)
                if slots:
                    nxt[(g.terminus(f), f)] += n * slots
        total += sum(nxt.values())
        level = nxt
    return total


def expand_ball(g: GbsGraph, base: str, r: int, cap: int | None = None) -> TreeBall:
    """The radius-``r`` ball about a lift of ``base``."""
    require_valid(g)
    if not isinstance(r, int) or r < 0:
        raise GbsError(f"radius must be a nonnegative integer, got {r!r}")
    if base not in g.vertices:
        raise GbsError(f"{base} is not a vertex")
    cap = ball_cap() if cap is None else cap
    size = projected_size(g, base, r)
    if size > cap:
        raise BallTooLargeError(
            f"ball of radius {r} at {base} would have {size} vertices (cap {cap}; set GBS_BALL_CAP)")
    image = {(): base}
    children = {}
    frontier = [()]
    for depth in range(r):
        nxt = []
        for a in frontier:
            v = image[a]
            back = reverse(a[-1][0]) if a else None
            count = 0
            for f in g.ends_at(v):
                for c in range(abs(g.label(f))):
                    if f == back and c == 0:
                        continue
                    child = a + ((f, c),)
                    image[child] = g.terminus(f)
                    nxt.append(child)
                    count += 1
            children[a] = count
        frontier = nxt
    for a in frontier:
        children[a] = 0
    return TreeBall(g, base, r, image, children)


def interior_valences(b: TreeBall) -> Counter:
    """Multiset of ``(quotient vertex, valence)`` over interior tree vertices."""
    if b.radius < 1:
        raise GbsError("interior valences need radius >= 1")
    return Counter((b.image[a], b.valence(a)) for a in b.image if b.is_interior(a))


def inessential_tree_vertices(b: TreeBall) -> set:
    """Interior addresses with exactly two tree edges, both over ends labeled +-1."""
    if b.radius < 1:
        raise GbsError("inessential vertices need radius >= 1")
    g = b.graph
    out = set()
    for a in b.image:
        if b.is_interior(a) and b.valence(a) == 2:
            if all(g.label(f) in (1, -1) for f in b.incident_ends(a)):
                out.add(a)
    return out


# -- folds --------------------------------------------------------------------


def _tree_edge(b: TreeBall, e):
    """Return ``(origin, terminus, quotient edge end)`` for a tree edge."""
    try:
        o, t = (tuple(x) for x in e)
    except (TypeError, ValueError):
        raise GbsError(f"a tree edge is a pair of addresses, got {e!r}") from None
    for a in (o, t):
        if a not in b.image:
            raise GbsError(f"address {format_address(a)} is not in the ball")
    if len(t) == len(o) + 1 and t[:-1] == o:
        return o, t, t[-1][0]
    if len(o) == len(t) + 1 and o[:-1] == t:
        return o, t, reverse(o[-1][0])
    raise GbsError(f"{format_address(o)} and {format_address(t)} are not adjacent")


def classify_fold(b: TreeBall, e1, e2) -> str:
    """Fold type (IA, IB, IIA, IIB, IIIA, IIIB) of two tree edges with a common origin.

    Tree edges are ``(origin address, terminus address)`` pairs.
    """
    o1, u1, f1 = _tree_edge(b, e1)
    o2, u2, f2 = _tree_edge(b, e2)
    if o1 != o2:
        raise GbsError(
            f"tree edges must share an origin: {format_address(o1)} vs {format_address(o2)}")
    if u1 == u2:
        return "degenerate"
    img = b.image
    if f1 == f2:
        numeral = "II"
    elif img[u1] == img[u2]:
        numeral = "III"
    else:
        numeral = "I"
    letter = "A" if img[o1] not in (img[u1], img[u2]) else "B"
    return numeral + letter


# -- text ------------------------------------------------------------------------


def format_address(a: Address) -> str:
    return "/".join(f"{f}:{c}" for f, c in a) if a else "."


def parse_address(text: str) -> Address:
    text = text.strip()
    if text in (".", ""):
        return ()
    steps = []
    for part in text.split("/"):
        f, sep, c = part.rpartition(":")
        if not sep or not f:
            raise GbsError(f"bad address step {part!r} (expected <edge end>:<index>)")
        try:
            steps.append((f, int(c)))
        except ValueError:
            raise GbsError(f"bad coset index in address step {part!r}") from None
    return tuple(steps)


def ball_table(b: TreeBall) -> list[tuple[str, str, int, str]]:
    """Rows ``(address, quotient vertex, depth, valence)``; frontier valence is '-'."""
    rows = []
    for a in b.vertices:
        val = str(b.valence(a)) if b.is_interior(a) else "-"
        rows.append((format_address(a), b.image[a], len(a), val))
    return rows


def level_counts(b: TreeBall) -> list[int]:
    counts = defaultdict(int)
    for a in b.image:
        counts[len(a)] += 1
    return [counts[i] for i in range(b.radius + 1)]
