"""Reduced chains with valence-5 trees and unbounded quotient size."""

from gbstools import ChainSpec, family_spec, format_graph, is_two_generated, make_chain, verify_family

print("gcd criterion, q=(2,2) r=(3,3):", is_two_generated(ChainSpec((2, 2), (3, 3))))
print("gcd criterion, q=(2,2) r=(2,3):", is_two_generated(ChainSpec((2, 2), (2, 3))))

print(family_spec(3))
print(format_graph(make_chain(family_spec(3))))

report = verify_family(12)
print("k  vertices  edges  valences  status")
for row in report.rows:
    print(f"{row.k:<2} {row.vertices:<9} {row.edges:<6} {row.valences!s:<9} "
          f"{'pass' if row.passed else row.failures}")
print("all pass:", report.passed)
