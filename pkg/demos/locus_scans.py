"""Exclusion scans for non-integrable locus candidates on a cubic surface.

Suppose some multiple m(-K) carries a divisor whose every coefficient on a
one-dimensional locus exceeds m/lam.  The scans enumerate all lattice
candidates for that locus under the degree budget and record, for each one,
the counting argument that kills it.  On the smooth surface everything dies;
on the one-node surface a single configuration through the node survives for
even m, and the case solvers pin its numerical data.
"""

from fractions import Fraction

from delpezzo import (canonical_nodal_survivor, encode_case3, encode_nodal,
                      lemma31_scan, lemma51_scan, solve)

for m in (2, 3, 4):
    verdict = lemma31_scan(m, Fraction(2, 3))
    counts = verdict.counts_by_reason()
    print(f"smooth, m={m}: {len(verdict.records)} candidates -> {counts}")
assert not lemma31_scan(4, Fraction(2, 3)).survivors
print()

verdict = lemma51_scan(2)
print(f"nodal, m=2: {len(verdict.records)} candidates, "
      f"{len(verdict.survivors)} survivor")
(rec,) = verdict.survivors
print(f"  {rec.line()}")

# the survivor is an identity in the lattice: locus + residual = -2K
d = canonical_nodal_survivor(2)
print(f"  locus class {d.locus_class()} + residual {d.residual} = -2K")
print()

# odd multiples force half-integral coefficients, so nothing survives
verdict = lemma51_scan(3)
print(f"nodal, m=3: {verdict.counts_by_reason()}")
print()

# the companion inequality systems, solved by exact Fourier-Motzkin: at even
# m the blow-up rows force every unknown; at odd m the forced value of mu is
# half-integral, the same contradiction in linear-programming clothing
for m in (6, 5):
    rep = solve(encode_case3(m))
    mu = rep.forced["mu"]
    note = "" if rep.integrality["mu"] else "  <- not an integer"
    print(f"case 3, m={m}: forced mu = {mu}{note}")

rep = solve(encode_nodal(6, "q_on_c"))
print(f"nodal subcase q_on_c, m=6: forced "
      + " ".join(f"{v}={rep.forced[v]}" for v in ("mu", "nu", "mult_s")))
