"""Chains of infinite cyclic groups giving finite-index splittings of F2.

The chain ``v0 -e1- v1 -e2- ... -ek- vk`` has label ``q[i-1]`` at the
``v_{i-1}`` end of ``e_i`` and ``r[i-1]`` (i.e. r_i) at the ``v_i`` end.  When no
label is +-1 and ``gcd(r_i, q_j) = 1`` for ``1 <= i <= j <= k-1`` the group is
2-generated, so F2 acts on its Bass-Serre tree with ``k + 1`` vertex orbits.
With ``q0 = rk = 5`` and interior labels 2, 3 that tree is the 5-regular tree
for every ``k``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .errors import GbsError
from .graph import Edge, GbsGraph, first_betti_number, is_locally_finite, is_reduced
from .moves import essential_vertices
from .tree_ball import expand_ball, interior_valences


@dataclass(frozen=True)
class ChainSpec:
    q: tuple[int, ...]  # q_0 .. q_{k-1}
    r: tuple[int, ...]  # r_1 .. r_k

    def __post_init__(self):
        object.__setattr__(self, "q", tuple(self.q))
        object.__setattr__(self, "r", tuple(self.r))
        if len(self.q) != len(self.r) or not self.q:
            raise GbsError("a chain needs k >= 1 and len(q) == len(r) == k")
        for name, seq in (("q", self.q), ("r", self.r)):
            for i, x in enumerate(seq):
                if not isinstance(x, int) or x == 0:
                    raise GbsError(f"{name} entry {i} must be a nonzero integer, got {x!r}")

    @property
    def k(self) -> int:
        return len(self.q)

    def r_(self, i: int) -> int:
        """r_i with the 1-based indexing of the chain (1 <= i <= k)."""
        return self.r[i - 1]

    @property
    def reduced(self) -> bool:
        return all(abs(x) != 1 for x in self.q + self.r)

    def expected_valence(self, i: int) -> int:
        if i == 0:
            return abs(self.q[0])
        if i == self.k:
            return abs(self.r_(self.k))
        return abs(self.r_(i)) + abs(self.q[i])


def vertex_name(i: int) -> str:
    return f"v{i}"


def make_chain(spec: ChainSpec) -> GbsGraph:
    vertices = [vertex_name(i) for i in range(spec.k + 1)]
    edges = [
        Edge(f"e{i}", vertex_name(i - 1), vertex_name(i), spec.q[i - 1], spec.r_(i))
        for i in range(1, spec.k + 1)
    ]
    return GbsGraph(vertices, edges)


def is_two_generated(spec: ChainSpec) -> bool:
    """gcd(r_i, q_j) == 1 whenever 1 <= i <= j <= k - 1 (stated for reduced chains)."""
    if not spec.reduced:
        raise GbsError("the 2-generation criterion applies to reduced chains (no label +-1)")
    k = spec.k
    return all(
        math.gcd(spec.r_(i), spec.q[j]) == 1
        for j in range(1, k)
        for i in range(1, j + 1)
    )


def family_spec(k: int) -> ChainSpec:
    """q0 = rk = 5 with interior q_i = 2, r_i = 3."""
    q = [5] + [2] * (k - 1)
    r = [3] * (k - 1) + [5]
    return ChainSpec(tuple(q), tuple(r))


@dataclass
class FamilyRow:
    k: int
    vertices: int
    edges: int
    reduced: bool
    two_generated: bool
    valences: tuple[int, ...]
    essential: int
    failures: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    @property
    def complexity(self) -> int:
        return self.vertices + self.edges


@dataclass
class FamilyReport:
    rows: list[FamilyRow]

    @property
    def passed(self) -> bool:
        return all(row.passed for row in self.rows)

    def failures(self) -> list[str]:
        return [f"k={row.k}: {msg}" for row in self.rows for msg in row.failures]


def check_chain(spec: ChainSpec, radius: int = 3, valence: int | None = 5) -> FamilyRow:
    g = make_chain(spec)
    k = spec.k
    fails = []
    reduced = is_reduced(g)
    if not reduced:
        fails.append("not reduced")
    if not is_locally_finite(g):
        fails.append("not locally finite")
    two = is_two_generated(spec) if spec.reduced else False
    if not two:
        fails.append("not 2-generated")
    if len(g.vertices) != k + 1:
        fails.append(f"{len(g.vertices)} vertices, expected {k + 1}")
    if first_betti_number(g) != 0:
        fails.append("quotient graph is not a tree")
    seen = set()
    for i in range(k + 1):
        vals = interior_valences(expand_ball(g, vertex_name(i), radius))
        for (v, val), _ in vals.items():
            seen.add(val)
            j = int(v[1:])
            if val != spec.expected_valence(j):
                fails.append(f"valence {val} over {v}, expected {spec.expected_valence(j)}")
            if valence is not None and val != valence:
                fails.append(f"valence {val} over {v} in ball at v{i}, expected {valence}")
    ess = essential_vertices(g)
    if len(ess) != k + 1:
        fails.append(f"{len(ess)} essential vertices, expected {k + 1}")
    return FamilyRow(k, len(g.vertices), len(g.edges), reduced, two,
                     tuple(sorted(seen)), len(ess), sorted(set(fails)))


def verify_family(kmax: int, radius: int = 3) -> FamilyReport:
    """Check the valence-5 family for every k in 1..kmax."""
    if not isinstance(kmax, int) or kmax < 1:
        raise GbsError(f"kmax must be a positive integer, got {kmax!r}")
    return FamilyReport([check_chain(family_spec(k), radius) for k in range(1, kmax + 1)])
