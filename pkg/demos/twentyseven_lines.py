"""Walk the line geometry of a cubic surface in the Picard lattice.

Everything here is integer arithmetic on classes a*H - sum b_i E_i: the 27
lines, who meets whom, the 45 coplanar triples, and what collapses when the
surface degenerates to a single node.
"""

from delpezzo import (C, E, F, L, MINUS_K, SurfaceModel,
                      enumerate_negative_curves, incidence_graph,
                      third_line, tritangent_triples)

lines = enumerate_negative_curves(SurfaceModel.SMOOTH)
print(f"smooth cubic surface: {len(lines)} lines")
print(f"anticanonical class -K = {MINUS_K}, square {MINUS_K.square()}")
print()

# the three families: exceptional curves, secant transforms, conic transforms
for lab in ("E1", "L12", "F1"):
    cls = lines[lab]
    print(f"  {lab:<4} = {cls}   square {cls.square()}, degree {cls.degree()}")
print()

# every line meets exactly ten of the other twenty-six
graph = incidence_graph(lines)
assert {len(nbrs) for nbrs in graph.values()} == {10}
print("each line meets exactly 10 others (Schlaefli's incidence count)")

# the double six: E_i and F_j meet unless the indices agree
assert E(1).intersect(F(1)) == 0 and E(1).intersect(F(2)) == 1
print("double six: E_i . F_j = 1 - delta_ij")

triples = tritangent_triples(lines)
print(f"tritangent planes: {len(triples)}")
a, b, c = triples[0]
print(f"  first triple {a}, {b}, {c}: classes sum to -K "
      f"({(lines[a] + lines[b] + lines[c]) == MINUS_K})")

# the third line in a plane is determined by the other two
t = third_line(L(1, 2), L(3, 4))
print(f"  third line in the plane of L12 and L34: {t}")
print()

# one ordinary double point: six pairs of lines fuse through the node and
# the resolution shows a (-2)-curve C in place of the vanished classes
nodal = enumerate_negative_curves(SurfaceModel.NODAL)
print(f"one-node cubic: {len(nodal) - 1} lines plus the (-2)-curve C")
print(f"  C = {C}, square {C.square()}, degree {C.degree()}")
adjacent = sorted(lab for lab, cls in nodal.items()
                  if lab != "C" and cls.intersect(C) == 1)
print(f"  lines through the node: {' '.join(adjacent)}")

# the six missing secant lines reappear as reducible sums through C
assert nodal["C"] + E(3) == L(1, 2)
print("  and e.g. L12 = C + E3 splits through the node")
