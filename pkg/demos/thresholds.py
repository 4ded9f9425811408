"""Log canonical thresholds of plane curve germs, two ways.

The Newton polygon gives a fast upper bound that is exact for nondegenerate
germs; embedded resolution by blow-ups computes the true value from
discrepancies.  This script runs both on the classic examples and shows a
germ where the polygon certificate genuinely fails.
"""

from fractions import Fraction

from delpezzo import blowup_lct, newton_lct, parse_germ, resolve_germ

CLASSICS = [
    "y^2 - x^3",          # cusp
    "x*y*(x + y)",        # three concurrent lines
    "x*(y^2 - x^3)",      # cusp plus a transverse smooth branch
    "x^2*y^3",            # monomial, lct = min(1/2, 1/3) read off exponents
    "(y^2 - 2*x^2)^2 - x^7",  # branches conjugate over Q(sqrt 2)
]

for text in CLASSICS:
    f = parse_germ(text)
    newton = newton_lct(f)
    blowup = blowup_lct(f)
    tag = "exact" if newton.exact else "bound"
    print(f"{text:<24} newton {str(newton.value):>4} ({tag})   "
          f"blowup {blowup.value}")
print()

# the cusp resolves in three blow-ups; lct = min over nodes of (a+1)/b
res = resolve_germ(parse_germ("y^2 - x^3"))
print("resolution of the cusp, (discrepancy, multiplicity) per node:")
for node in res.nodes:
    print(f"  {node}   (a+1)/b = {node.ratio}")
print()

# squares of smooth germs defeat the polygon: (y - x)^2 looks like a node
# after the monomial change of basis, but the branch is doubled
f = parse_germ("(y - x)^2")
newton, blowup = newton_lct(f), blowup_lct(f)
print(f"(y - x)^2: newton says {newton.value} "
      f"({'exact' if newton.exact else 'inexact, upper bound only'})")
print(f"           blowup says {blowup.value} via {blowup.witness}")
assert blowup.value == Fraction(1, 2)
print()

# scaling law: lct(f^k) = min(1, lct(f)/k)
f = parse_germ("y^2 - x^3")
c = blowup_lct(f).value
for k in (2, 3, 4):
    print(f"lct((y^2 - x^3)^{k}) = {blowup_lct(f ** k).value}"
          f"  (law predicts {min(Fraction(1), c / k)})")
