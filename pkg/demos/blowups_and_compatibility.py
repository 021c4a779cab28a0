"""When a chart lifting respects an ideal, a point, or a blow-up center.

Three compatibility questions about the same kind of object.  First:
does the lifted Frobenius carry an ideal into its p-th power (so the
lifting descends to the subscheme)?  Second: does the lifting extend
over the blow-up in a coordinate center?  Third: what do liftings do to
rational points, and how do they transform under polynomial maps?
"""

import random

from froblift.idealcalc import IdealPresentation
from froblift.liftlab import (
    ChartLifting,
    blowup_extends,
    base_change_psi,
    canonical_point_lift,
    compatibility_report,
    frobenius_pullback,
    nu_star,
    psi_commutes_with_liftings,
    standard_toric,
    theta_star,
)
from froblift.polycore import MultiPoly, p_times
from froblift.sampling import random_lifting, random_mod_p2_poly

names = ["x", "y"]

# -- ideal compatibility -------------------------------------------------------

p = 3
toric = standard_toric(p, 2)
axes = IdealPresentation(
    [MultiPoly.variable(2, p * p, 0), MultiPoly.variable(2, p * p, 1)]
)
print("toric lifting vs the ideal (x, y):", compatibility_report(toric, axes))

# a skewed lifting sends x to x^p + p*y, which leaves (x, y)-compatibility
q = 2
xx = MultiPoly.variable(2, q * q, 0)
yy = MultiPoly.variable(2, q * q, 1)
skew = ChartLifting(q, (xx**q + p_times(MultiPoly.variable(2, q, 1)), yy**q))
axes2 = IdealPresentation([xx, yy])
print("skewed lifting vs the ideal (x, y):", compatibility_report(skew, axes2))

# -- blow-up extension ---------------------------------------------------------

# The lifting extends over the blow-up of the center exactly when every
# delta of a center coordinate lies in the p-th power of the center
# ideal.  The report also runs the equivalent pairwise cross-term test.
report = blowup_extends(toric, (0, 1))
print("toric center (x, y): deltas in I^p", report.deltas_ok,
      "| cross terms in I^2p", report.cross_terms_ok,
      "| extends:", report.extends)

report = blowup_extends(skew, (0, 1))
print("skewed center (x, y): deltas in I^p", report.deltas_ok,
      "| extends:", report.extends)

# deep noise keeps the extension property
deep = ChartLifting(
    q,
    (
        xx**q + p_times(MultiPoly(2, q, {(2, 2): 1})),
        yy**q + p_times(MultiPoly(2, q, {(2, 2): 1})),
    ),
)
print("deep-noise center (x, y): extends:", blowup_extends(deep, (0, 1)).extends)

# -- rational points -----------------------------------------------------------

# Evaluating the lifted Frobenius at a canonical point lift returns the
# point itself: these are the Teichmueller-style coordinates the lifting
# singles out.
point = (2, 1)
lift = canonical_point_lift(toric, point)
print("canonical lift of", point, "is", lift, "mod", p * p)

rng = random.Random(7)
for _ in range(5):
    f = random_mod_p2_poly(rng, 2, p)
    before = f.evaluate(lift)
    after = frobenius_pullback(toric, f).evaluate(lift)
    assert before == after
print("evaluation at the canonical lift is fixed by the lifted Frobenius")

# -- base change along a polynomial map ----------------------------------------

# A mod-p map phi between chart rings induces a map of liftings; the
# induced map commutes with both lifted Frobenii, whatever phi is.
source = random_lifting(rng, q, 2)
target = random_lifting(rng, q, 2)
phi = [MultiPoly(2, q, {(2, 0): 1}), MultiPoly(2, q, {(0, 1): 1})]
images = base_change_psi(target, phi)
print("induced images:", [img.to_text(names) for img in images])
assert psi_commutes_with_liftings(source, target, phi)
print("the induced map commutes with the liftings")

# -- the two-component view ----------------------------------------------------

# Splitting a mod-p^2 element into (reduction, divided difference) and
# reassembling recovers the lifted Frobenius pullback exactly.
f = random_mod_p2_poly(rng, 2, p)
pair = nu_star(toric, f)
assert theta_star(pair) == frobenius_pullback(toric, f)
print("pair decomposition followed by reassembly equals the Frobenius pullback")

print("done")
