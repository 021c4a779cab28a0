"""Frobenius liftings on affine charts and their xi-determinants.

A chart lifting over Z/p^2 is a tuple of polynomials, one per variable,
each congruent to the p-th power of its variable mod p.  The delta map
measures the mod-p "noise" above the naive p-th power, and the xi matrix
packages how the lifting acts on differentials.  Its determinant cuts
out the divisor attached to the lifting; for the standard monomial
lifting that divisor is exactly the union of coordinate hyperplanes.
"""

from froblift.liftlab import (
    ChartLifting,
    delta,
    divisor_unit_parts,
    log_det_identity_holds,
    log_xi_det,
    product_lifting,
    restrict_to_coordinate_divisor,
    standard_toric,
    xi_det,
    xi_matrix,
)
from froblift.polycore import MultiPoly, p_times

# -- the standard monomial lifting -------------------------------------------

p = 3
names = ["x", "y"]
toric = standard_toric(p, 2)
print("images:", [img.to_text(names) for img in toric.images])
print("deltas:", [d.to_text(names) for d in toric.deltas])

det = xi_det(toric)
print("det xi =", det.to_text(names))
assert det == MultiPoly.monomial(2, p, (p - 1, p - 1))
print("the determinant is the product of coordinate hyperplanes to the p-1")

# delta is not additive on the nose; it picks up the p-th power carry
x2 = MultiPoly.variable(2, p * p, 0)
y2 = MultiPoly.variable(2, p * p, 1)
d = delta(toric, x2 + y2)
print("delta(x + y) =", d.to_text(names))

# -- a deformed lifting in one variable --------------------------------------

q = 2
t = MultiPoly.variable(1, q * q, 0)
cube = MultiPoly.monomial(1, q, (3,))
deformed = ChartLifting(q, (t**q + p_times(cube),))
print("deformed image:", deformed.images[0].to_text(["x"]))
print("its delta:", deformed.deltas[0].to_text(["x"]))

matrix = xi_matrix(deformed)
print("xi matrix entry:", matrix.entries[0][0].to_text(["x"]))
print("det xi =", xi_det(deformed).to_text(["x"]))

# -- boundary-compatible liftings and the log factorization ------------------

# When the first coordinate's image is x^p times a unit, the lifting
# respects the divisor x = 0 and the determinant factors: the full det
# equals the log det times x^{p-1}.
unit = MultiPoly.constant(1, q * q, 1) + p_times(MultiPoly.variable(1, q, 0))
boundary_lifting = ChartLifting(q, (t**q * unit,))
print("unit parts along the boundary:",
      [u.to_text(["x"]) for u in divisor_unit_parts(boundary_lifting, 1)])
print("log det:", log_xi_det(boundary_lifting, 1).to_text(["x"]))
print("full det:", xi_det(boundary_lifting).to_text(["x"]))
assert log_det_identity_holds(boundary_lifting, 1)
print("det xi = (log det) * x^(p-1) holds")

# -- products and restrictions ------------------------------------------------

left = standard_toric(q, 1)
combined = product_lifting(left, boundary_lifting)
names2 = ["x", "y"]
print("product images:", [img.to_text(names2) for img in combined.images])
expected = xi_det(left).embed(2, 0) * xi_det(boundary_lifting).embed(2, 1)
assert xi_det(combined) == expected
print("the determinant of a product lifting is the product of determinants")

# a lifting compatible with y = 0 restricts to a lifting of the divisor
xx = MultiPoly.variable(2, q * q, 0)
yy = MultiPoly.variable(2, q * q, 1)
noise = MultiPoly(2, q, {(1, 1): 1})  # x*y vanishes on y = 0
compat = ChartLifting(q, (xx**q + p_times(noise), yy**q))
restricted = restrict_to_coordinate_divisor(compat, 1)
print("restriction to y = 0 has image:",
      [img.to_text(["x"]) for img in restricted.images])

print("done")
