"""Trace-form Frobenius splittings and the canonical mod-p^2 lift they induce.

Every splitting of a polynomial ring in characteristic p is a trace form:
f maps to Tr(u * f) for a key polynomial u, where Tr keeps the monomials
whose exponents sit at p-th-power positions shifted by the corner
(p-1, ..., p-1).  This script exercises the splitting calculus (Fedder's
hypersurface test, compatible ideals, the divisor of a splitting, group
averaging) and then builds the flat mod-p^2 ring a splitting determines.
"""

import random

from froblift.idealcalc import IdealPresentation
from froblift.liftlab import associated_splitting, standard_toric
from froblift.polycore import MultiPoly
from froblift.sampling import random_poly
from froblift.splitlab import (
    CanonicalLiftRing,
    GroupAction,
    TraceSplitting,
    compatible_ideal_splitting,
    divisor_of_splitting,
    fedder_is_fsplit,
    group_average,
    p1_invariant_scan,
    theorem_iso_check,
    trace_form_from_map,
)

# -- trace-form splittings -----------------------------------------------------

p = 2
x = MultiPoly.variable(1, p, 0)
sigma = TraceSplitting(p, 1, x + x**2)
print("key u = x + x^2 at p = 2")
print("sigma(1) =", sigma.evaluate(MultiPoly.constant(1, p, 1)).to_text(["x"]))
print("sigma(x) =", sigma.evaluate(x).to_text(["x"]))
print("unital:", sigma.is_unital())

# the defining projection property: sigma(f^p * g) = f * sigma(g)
rng = random.Random(11)
for _ in range(20):
    f = random_poly(rng, 1, p)
    g = random_poly(rng, 1, p)
    assert sigma.evaluate(f**p * g) == f * sigma.evaluate(g)
print("projection identity verified on random probes")

# any p^(-1)-semilinear projection is a trace form; the key is recoverable
rebuilt = trace_form_from_map(sigma.evaluate, p, 1)
assert rebuilt.u == sigma.u
print("the key polynomial is recovered from the map alone")

# -- Fedder-style hypersurface test ---------------------------------------------

for q, label, poly in (
    (2, "xy", MultiPoly(2, 2, {(1, 1): 1})),
    (5, "xy", MultiPoly(2, 5, {(1, 1): 1})),
    (2, "y^2 - x^3", MultiPoly(2, 2, {(0, 2): 1, (3, 0): 1})),
    (3, "x + y + z", MultiPoly(3, 3, {(1, 0, 0): 1, (0, 1, 0): 1, (0, 0, 1): 1})),
):
    print("p = %d, f = %s: F-split %s" % (q, label, fedder_is_fsplit(poly)))

# -- compatible ideals and the divisor of a splitting ---------------------------

q = 3
toric = associated_splitting(standard_toric(q, 2))
axes = IdealPresentation(
    [MultiPoly.variable(2, q, 0), MultiPoly.variable(2, q, 1)]
)
print("toric splitting compatible with (x, y):",
      compatible_ideal_splitting(toric, axes))

report = divisor_of_splitting(
    toric, [MultiPoly.variable(2, q, 0), MultiPoly.variable(2, q, 1)]
)
for factor, mult, coeff in report.entries:
    print("divisor component %s: multiplicity %d, coefficient %s"
          % (factor.to_text(["x", "y"]), mult, coeff))
print("residual:", report.residual.to_text(["x", "y"]))

# -- averaging over a finite group action ----------------------------------------

# Averaging a splitting over a group of order prime to p produces an
# invariant splitting.  Here: the swap action on two variables.
xx = MultiPoly.variable(2, q, 0)
yy = MultiPoly.variable(2, q, 1)
swap = GroupAction(q, ((xx, yy), (yy, xx)))
lopsided = TraceSplitting(q, 2, xx**2 * yy**2 + xx**4 * yy)
averaged = group_average(lopsided, swap)
print("averaged key:", averaged.u.to_text(["x", "y"]))
print("averaged splitting unital:", averaged.is_unital())

# -- the canonical mod-p^2 lift of a split ring -----------------------------------

# A unital splitting turns pairs (f0, f1) of mod-p polynomials into a
# flat Z/p^2-algebra: pairs whose second slot the splitting kills are
# identified with zero.  Normal forms make the quotient computable.
q = 2
sigma1 = associated_splitting(standard_toric(q, 1))
ring = CanonicalLiftRing(sigma1)
x1 = MultiPoly.variable(1, q, 0)
zero_slot = ring.normal_form(MultiPoly.zero(1, q), x1)
print("(0, x) normalizes to zero:", zero_slot == ring.zero())

e = ring.normal_form(x1, x1**2)
assert ring.normal_form(e.f0, e.f1) == e
print("normal forms are idempotent")

shifted = ring.p_shift(ring.normal_form(x1, MultiPoly.zero(1, q)))
print("p * (x, 0) has slots (%s, %s)"
      % (shifted.f0.to_text(["x"]), shifted.f1.to_text(["x"])))

assert ring.flatness_check(2 * q)
print("multiplication by p kills exactly the p-divisible part (flatness)")

report = theorem_iso_check(standard_toric(q, 1), probes=20, seed=0, splitting=sigma1)
print("lifting/splitting correspondence checks:", "ok" if report.ok else report.failures())

# -- a global obstruction scan ----------------------------------------------------

# The coefficient that obstructs a certain splitting on the projective
# line vanishes for every odd prime; p = 2 is the lone exception.
for q in (2, 3, 5, 7, 11, 13):
    print("p = %2d: obstruction coefficient %d" % (q, p1_invariant_scan(q)))

print("done")
