"""Mod-2 cohomology of a finite 2-complex and the accessibility bounds.

``delta(L) = 2 dim H^1(L; Z/2) + l0 + l2`` where ``l0``, ``l2`` count the
0- and 2-cells of ``L``.  Given the first Betti number ``b1`` of the group,
a reduced locally finite tree with finitely generated stabilizers has at most
``delta + b1`` vertex orbits and ``delta + 2 b1 - 1`` edge orbits; the
Bestvina-Feighn-reduced variant has at most ``4 delta + 9 b1 - 5`` vertex
orbits.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ComplexError, ParseError
from .graph import NAME_RE


@dataclass(frozen=True)
class ChainComplex2:
    cells0: tuple[str, ...]
    cells1: tuple[tuple[str, str, str], ...]  # (name, v, w)
    cells2: tuple[tuple[str, tuple[str, ...]], ...]  # (name, boundary 1-cells)

    @property
    def counts(self) -> tuple[int, int, int]:
        return len(self.cells0), len(self.cells1), len(self.cells2)

    def boundary1_rows(self) -> list[int]:
        """Boundary of each 1-cell as a bitmask over 0-cells."""
        idx = {v: i for i, v in enumerate(self.cells0)}
        return [(1 << idx[v]) ^ (1 << idx[w]) for _, v, w in self.cells1]

    def boundary2_rows(self) -> list[int]:
        """Boundary of each 2-cell as a bitmask over 1-cells (repeats cancel)."""
        idx = {name: i for i, (name, _, _) in enumerate(self.cells1)}
        rows = []
        for _, bd in self.cells2:
            m = 0
            for e in bd:
                m ^= 1 << idx[e]
            rows.append(m)
        return rows


def check_complex(c: ChainComplex2) -> None:
    names0 = set(c.cells0)
    names1 = {name for name, _, _ in c.cells1}
    if len(names0) != len(c.cells0) or len(names1) != len(c.cells1) \
            or len({n for n, _ in c.cells2}) != len(c.cells2):
        raise ComplexError("duplicate cell names")
    if not c.cells0:
        raise ComplexError("complex has no 0-cells")
    for name, v, w in c.cells1:
        for x in (v, w):
            if x not in names0:
                raise ComplexError(f"1-cell {name}: {x} is not a 0-cell")
    for name, bd in c.cells2:
        for e in bd:
            if e not in names1:
                raise ComplexError(f"2-cell {name}: {e} is not a 1-cell")
    b1 = c.boundary1_rows()
    for (name, _), row in zip(c.cells2, c.boundary2_rows()):
        acc = 0
        for i, r in enumerate(b1):
            if row >> i & 1:
                acc ^= r
        if acc:
            raise ComplexError(f"boundary of boundary of 2-cell {name} is nonzero mod 2")
    if not _connected(c):
        raise ComplexError("complex is not connected")


def _connected(c: ChainComplex2) -> bool:
    parent = {v: v for v in c.cells0}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for _, v, w in c.cells1:
        parent[find(v)] = find(w)
    return len({find(v) for v in c.cells0}) == 1


def gf2_rank(rows: list[int]) -> int:
    """Rank over GF(2) of a matrix given as integer bitmask rows."""
    rank = 0
    rows = [r for r in rows if r]
    while rows:
        pivot = rows.pop()
        if not pivot:
            continue
        rank += 1
        low = pivot & -pivot
        rows = [r ^ pivot if r & low else r for r in rows]
        rows = [r for r in rows if r]
    return rank


def h1_dim_mod2(c: ChainComplex2) -> int:
    """dim H^1(L; Z/2) = dim ker(d^1) - rank(d^0) = l1 - rank(bd2) - rank(bd1)."""
    check_complex(c)
    l1 = len(c.cells1)
    return l1 - gf2_rank(c.boundary2_rows()) - gf2_rank(c.boundary1_rows())


def betti_mod2(c: ChainComplex2) -> tuple[int, int, int]:
    check_complex(c)
    l0, l1, l2 = c.counts
    r1 = gf2_rank(c.boundary1_rows())
    r2 = gf2_rank(c.boundary2_rows())
    return l0 - r1, l1 - r1 - r2, l2 - r2


def delta(c: ChainComplex2) -> int:
    l0, _, l2 = c.counts
    return 2 * h1_dim_mod2(c) + l0 + l2


@dataclass(frozen=True)
class BoundReport:
    delta: int
    beta1: int
    vertex_bound: int
    edge_bound: int
    total_bound: int
    bf_vertex_bound: int

    def rows(self) -> list[tuple[str, int]]:
        return [
            ("delta", self.delta),
            ("beta1", self.beta1),
            ("vertex_bound", self.vertex_bound),
            ("edge_bound", self.edge_bound),
            ("total_bound", self.total_bound),
            ("bf_vertex_bound", self.bf_vertex_bound),
        ]


def accessibility_bounds(c: ChainComplex2, beta1: int) -> BoundReport:
    if not isinstance(beta1, int) or beta1 < 0:
        raise ComplexError(f"beta1 must be a nonnegative integer, got {beta1!r}")
    d = delta(c)
    vb = d + beta1
    eb = vb - 1 + beta1
    return BoundReport(d, beta1, vb, eb, vb + eb, 4 * d + 9 * beta1 - 5)


# -- text format ----------------------------------------------------------------


def parse_complex(text: str, source: str | None = None) -> ChainComplex2:
    """Parse ``cell0 <n>`` / ``cell1 <n> <v> <w>`` / ``cell2 <n> <e1> ... <ek>`` lines."""
    c0, c1, c2 = [], [], []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tok = line.split()
        for t in tok[1:]:
            if not NAME_RE.match(t):
                raise ParseError(f"invalid name {t!r}", lineno, source)
        if tok[0] == "cell0" and len(tok) == 2:
            c0.append(tok[1])
        elif tok[0] == "cell1" and len(tok) == 4:
            c1.append((tok[1], tok[2], tok[3]))
        elif tok[0] == "cell2" and len(tok) >= 2:
            c2.append((tok[1], tuple(tok[2:])))
        elif tok[0] in ("cell0", "cell1", "cell2"):
            raise ParseError(f"wrong number of fields for {tok[0]}", lineno, source)
        else:
            raise ParseError(f"unknown declaration {tok[0]!r}", lineno, source)
    return ChainComplex2(tuple(c0), tuple(c1), tuple(c2))


def format_complex(c: ChainComplex2) -> str:
    lines = [f"cell0 {v}" for v in c.cells0]
    lines += [f"cell1 {n} {v} {w}" for n, v, w in c.cells1]
    lines += [" ".join(["cell2", n, *bd]) for n, bd in c.cells2]
    return "\n".join(lines) + "\n"
