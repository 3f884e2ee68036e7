"""Reduced words, ellipticity and translation length."""

from gbstools import Edge, GbsGraph, is_elliptic, parse_word, power, reduce_word, translation_length
from gbstools import format_word, transport_word, collapse

# BS(1,2): the loop e has label 1 at its start and 2 at its end
bs12 = GbsGraph(["v"], [Edge("e", "v", "v", 1, 2)])
w = parse_word("word v: 0 e 2 ~e 0")
print(format_word(w), "->", format_word(reduce_word(bs12, w)))

t = parse_word("word v: 0 e 0")
for n in (1, 2, 3):
    print(f"translation length of t^{n}:", translation_length(bs12, power(t, n)))

# a conjugate of a vertex element stays elliptic even when it does not reduce
seg = GbsGraph(["u", "w"], [Edge("e", "u", "w", 1, 3)])
x = parse_word("word u: 0 e 1 ~e 0")
print(format_word(reduce_word(seg, x)), "elliptic:", is_elliptic(seg, x))

# collapsing an edge keeps elliptic elements elliptic, but it can shorten axes:
# here the axis crosses two lifts of e in every period
g = GbsGraph(["v", "w"], [Edge("e", "v", "w", 1, 2), Edge("f", "v", "v", 3, 5)])
y = parse_word("word v: 0 f 0 e 1 ~e 0")
h, rec = collapse(g, "e")
z = transport_word(rec, y, g)
print(format_word(y), "length", translation_length(g, y))
print(format_word(z), "length", translation_length(h, z))
