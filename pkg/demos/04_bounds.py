"""delta from a 2-complex and the resulting vertex and edge bounds."""

from gbstools import ChainComplex2, accessibility_bounds, delta, h1_dim_mod2, parse_complex

hollow = ChainComplex2(("a", "b", "c"), (("x", "a", "b"), ("y", "b", "c"), ("z", "c", "a")), ())
filled = ChainComplex2(hollow.cells0, hollow.cells1, (("t", ("x", "y", "z")),))
for name, c in (("hollow triangle", hollow), ("filled triangle", filled)):
    print(f"{name}: H^1 dim {h1_dim_mod2(c)}, delta {delta(c)}")

wedge = parse_complex("""
cell0 o
cell0 a
cell0 b
cell0 c
cell0 d
cell1 e1 o a
cell1 e2 a b
cell1 e3 b o
cell1 e4 o c
cell1 e5 c d
cell1 e6 d o
""")
for name, value in accessibility_bounds(wedge, beta1=2).rows():
    print(f"{name:16} {value}")
