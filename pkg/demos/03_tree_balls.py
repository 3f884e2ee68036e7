"""Balls in the Bass-Serre tree and the type of a fold."""

from gbstools import ChainSpec, Edge, GbsGraph, ball_table, classify_fold, expand_ball, make_chain
from gbstools import inessential_tree_vertices, interior_valences, level_counts, subdivide

bs23 = GbsGraph(["v"], [Edge("e", "v", "v", 2, 3)])
b = expand_ball(bs23, "v", 2)
for row in ball_table(b)[:8]:
    print(*row, sep="\t")
print("vertices per level:", level_counts(b))
print("interior valences:", dict(interior_valences(b)))

chain = make_chain(ChainSpec((2, 2, 2), (3, 3, 3)))
print("chain valences:", sorted(interior_valences(expand_ball(chain, "v1", 3))))

# tree edges are (origin address, terminus address); addresses are paths of (end, coset)
print("siblings over the BS(2,3) loop:",
      classify_fold(b, ((), (("e", 0),)), ((), (("e", 1),))))
print("back and forward at v1:",
      classify_fold(expand_ball(chain, "v1", 2), ((), (("~e1", 0),)), ((), (("e2", 0),))))
print("siblings at v0:",
      classify_fold(expand_ball(chain, "v0", 2), ((), (("e1", 0),)), ((), (("e1", 1),))))

s, _ = subdivide(bs23, "e")
print("inessential lifts after subdividing:", len(inessential_tree_vertices(expand_ball(s, "v", 3))))
