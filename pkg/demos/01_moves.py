"""Elementary moves on a small graph of groups, and a replayable reduction log."""

from gbstools import (
    Edge,
    GbsGraph,
    apply_move,
    collapse,
    essential_vertices,
    expand,
    format_graph,
    invert,
    is_isomorphic,
    reduce_graph,
    subdivide,
    write_move_log,
)

# v carries an edge to w with label 1 at v, so the edge can be collapsed
g = GbsGraph(["u", "v", "w"], [Edge("e", "v", "w", 1, 3), Edge("f", "v", "u", 2, 5)])
print(format_graph(g))

h, rec = collapse(g, "e")
print("after collapsing e (f now starts at w, label 2*3):")
print(format_graph(h))
print("record:", rec.to_json())
assert apply_move(h, invert(rec)) == g

# expanding at w with divisor 3 and moving f back undoes it up to names
back, _ = expand(h, "w", ["f"], 3)
print("expand again, isomorphic to the start:", is_isomorphic(back, g))

# subdividing a loop adds an inessential vertex
loop = GbsGraph(["v"], [Edge("t", "v", "v", 2, 3)])
s, rec = subdivide(loop, "t")
print(format_graph(s))
print("essential vertices:", sorted(essential_vertices(s)))

# reduction, and the log that replays it
r, log = reduce_graph(s)
print("reduced:")
print(format_graph(r))
print(write_move_log(log))
