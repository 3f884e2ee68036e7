"""Bass-Serre words for elements of the fundamental group of a GBS graph.

A word ``g0 e1 g1 ... en gn`` based at ``v`` is a closed edge path
``e1 ... en`` at ``v`` interleaved with vertex-group exponents: ``gi`` is a
power of the generator of the vertex group at ``terminus(ei)``.  The defining
relation for an oriented edge ``e`` from ``u`` to ``w`` is

    a_u ** (label(e) * c) . e  ==  e . a_w ** (label(~e) * c)

for every integer ``c``.  Orientation convention: a loop ``e`` at ``v`` with
labels ``(m, n)`` (``m`` at the origin end) presents the Baumslag-Solitar group
``<a, t | t a^m t^-1 = a^n>`` with ``a = a_v`` and ``t = ~e``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import ParseError, WordError
from .graph import GbsGraph, reverse


@dataclass(frozen=True)
class GogWord:
    base: str
    syllables: tuple  # (g0, e1, g1, ..., en, gn)

    def __post_init__(self):
        s = tuple(self.syllables)
        object.__setattr__(self, "syllables", s)
        if len(s) % 2 != 1:
            raise WordError("a word needs an odd number of syllables (g0 e1 g1 ... en gn)")

    @classmethod
    def from_parts(cls, base: str, gs, edges) -> "GogWord":
        gs, edges = list(gs), list(edges)
        if len(gs) != len(edges) + 1:
            raise WordError("need one more vertex syllable than edges")
        syl = [gs[0]]
        for e, x in zip(edges, gs[1:]):
            syl += [e, x]
        return cls(base, tuple(syl))

    @classmethod
    def vertex_element(cls, base: str, g: int = 0) -> "GogWord":
        return cls(base, (g,))

    @property
    def gs(self) -> tuple[int, ...]:
        return self.syllables[0::2]

    @property
    def edges(self) -> tuple[str, ...]:
        return self.syllables[1::2]

    @property
    def n(self) -> int:
        return len(self.syllables) // 2

    def __str__(self):
        return format_word(self)


def check_word(g: GbsGraph, w: GogWord) -> None:
    """Raise :class:`WordError` naming the first broken adjacency."""
    if w.base not in g.vertices:
        raise WordError(f"base {w.base!r} is not a vertex")
    for i, x in enumerate(w.gs):
        if not isinstance(x, int) or isinstance(x, bool):
            raise WordError(f"vertex syllable g{i} = {x!r} is not an integer")
    at = w.base
    for i, e in enumerate(w.edges, 1):
        if not isinstance(e, str) or not g.has_edge(e):
            raise WordError(f"syllable e{i} = {e!r} is not an edge")
        if g.origin(e) != at:
            raise WordError(f"e{i} = {e} starts at {g.origin(e)}, but the path is at {at}")
        at = g.terminus(e)
    if at != w.base:
        raise WordError(f"path ends at {at}, not at the base {w.base}")


def reduce_word(g: GbsGraph, w: GogWord) -> GogWord:
    """Remove pinches ``e . a^(label(~e) c) . ~e`` until none remain (leftmost first)."""
    check_word(g, w)
    return _reduce(g, w.base, w.gs, w.edges)


def _reduce(g: GbsGraph, base: str, gs, edges) -> GogWord:
    out_g = [gs[0]]
    out_e: list[str] = []
    for e, nxt in zip(edges, gs[1:]):
        if out_e and e == reverse(out_e[-1]):
            back = g.label(e)  # label(~previous edge) at the pinch vertex
            if out_g[-1] % back == 0:
                c = out_g[-1] // back
                prev = out_e.pop()
                out_g.pop()
                out_g[-1] += g.label(prev) * c + nxt
                continue
        out_e.append(e)
        out_g.append(nxt)
    return GogWord.from_parts(base, out_g, out_e)


def normal_form(g: GbsGraph, w: GogWord) -> GogWord:
    """Reduced word with ``0 <= g_i < |label(e_{i+1})|`` for ``i < n``.

    Reduced words in this form are unique, so two words at the same base
    represent the same element iff their normal forms coincide.
    """
    r = reduce_word(g, w)
    gs, edges = list(r.gs), r.edges
    for i, e in enumerate(edges):
        lab = g.label(e)
        rem = gs[i] % abs(lab)
        c = (gs[i] - rem) // lab
        gs[i] = rem
        gs[i + 1] += g.label(reverse(e)) * c
    return GogWord.from_parts(r.base, gs, edges)


def words_equal(g: GbsGraph, w1: GogWord, w2: GogWord) -> bool:
    if w1.base != w2.base:
        raise WordError("words have different basepoints")
    return normal_form(g, w1) == normal_form(g, w2)


def multiply(w1: GogWord, w2: GogWord) -> GogWord:
    if w1.base != w2.base:
        raise WordError("words have different basepoints")
    gs = list(w1.gs[:-1]) + [w1.gs[-1] + w2.gs[0]] + list(w2.gs[1:])
    return GogWord.from_parts(w1.base, gs, w1.edges + w2.edges)


def inverse(w: GogWord) -> GogWord:
    return GogWord.from_parts(
        w.base, [-x for x in reversed(w.gs)], [reverse(e) for e in reversed(w.edges)]
    )


def power(w: GogWord, k: int) -> GogWord:
    if k < 0:
        return power(inverse(w), -k)
    out = GogWord.vertex_element(w.base)
    for _ in range(k):
        out = multiply(out, w)
    return out


def rotate(g: GbsGraph, w: GogWord, j: int) -> GogWord:
    """Cyclic permutation starting at edge ``j`` (a conjugate of ``w``)."""
    n = w.n
    if n == 0:
        return w
    j %= n
    gs, edges = w.gs, w.edges
    cyc_g = [gs[0] + gs[-1]] + list(gs[1:-1])
    new_g = cyc_g[j:] + cyc_g[:j] + [0]
    new_e = edges[j:] + edges[:j]
    base = g.origin(new_e[0])
    return GogWord.from_parts(base, new_g, new_e)


def cyclically_reduce(g: GbsGraph, w: GogWord) -> GogWord:
    """A conjugate of ``w`` that is reduced and has no pinch across the wrap-around."""
    w = reduce_word(g, w)
    while w.n >= 1:
        first, last = w.edges[0], w.edges[-1]
        h = w.gs[-1] + w.gs[0]
        if first == reverse(last) and h % g.label(first) == 0:
            gs, edges = w.gs, w.edges
            rot_g = [0, h] + list(gs[1:-1])
            rot_e = [last] + list(edges[:-1])
            w = _reduce(g, g.origin(last), rot_g, rot_e)
        else:
            break
    if w.n >= 1:
        gs = list(w.gs)
        gs[0] += gs[-1]
        gs[-1] = 0
        w = GogWord.from_parts(w.base, gs, w.edges)
    return w


def translation_length(g: GbsGraph, w: GogWord) -> int:
    """Translation length of the element on the Bass-Serre tree (0 iff elliptic)."""
    return cyclically_reduce(g, w).n


def is_elliptic(g: GbsGraph, w: GogWord) -> bool:
    return translation_length(g, w) == 0


# -- text format ----------------------------------------------------------

_WORD_RE = re.compile(r"^\s*word\s+(\S+?)\s*:(.*)$")


def parse_word(text: str, line: int | None = None, source: str | None = None) -> GogWord:
    """Parse ``word <base>: g0 (edge|~edge) g1 ... gn``."""
    m = _WORD_RE.match(text)
    if not m:
        raise ParseError("expected 'word <base>: g0 e1 g1 ... en gn'", line, source)
    base, rest = m.group(1), m.group(2).split()
    if len(rest) % 2 != 1:
        raise ParseError("word needs alternating integers and edges, starting and ending with an integer",
                         line, source)
    syl = []
    for i, tok in enumerate(rest):
        if i % 2 == 0:
            try:
                syl.append(int(tok))
            except ValueError:
                raise ParseError(f"expected an integer at position {i}, got {tok!r}", line, source) from None
        else:
            if not re.match(r"^~?[A-Za-z0-9_.'\-]+$", tok):
                raise ParseError(f"expected an edge at position {i}, got {tok!r}", line, source)
            syl.append(tok)
    return GogWord(base, tuple(syl))


def parse_words(text: str, source: str | None = None) -> list[GogWord]:
    out = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            out.append(parse_word(line, lineno, source))
    return out


def format_word(w: GogWord) -> str:
    return f"word {w.base}: " + " ".join(str(s) for s in w.syllables)
