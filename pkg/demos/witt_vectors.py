"""Length-2 Witt vectors: carry arithmetic checked against the ghost map.

A scalar (a0, a1) with entries mod p stands for the integer a0^p + p*a1
mod p^2.  That identification (the ghost map) turns componentwise-exotic
addition and multiplication rules into plain arithmetic in Z/p^2, which
makes it a complete correctness oracle.  This script walks through the
scalar ring, the Frobenius and Verschiebung operators, and the same
structure with polynomial components.
"""

from froblift.polycore import MultiPoly
from froblift.wittcore import (
    WittPoly,
    WittScalar,
    from_ghost,
    ghost_map,
    teichmuller,
    teichmuller_poly,
    witt_add,
    witt_frobenius,
    witt_mul,
    witt_neg,
    witt_sub,
    witt_verschiebung,
)

p = 3

# -- scalar arithmetic and the ghost oracle ---------------------------------

a = WittScalar(p, 2, 1)
b = WittScalar(p, 1, 2)
print("a =", (a.a0, a.a1), " ghost(a) =", ghost_map(a))
print("b =", (b.a0, b.a1), " ghost(b) =", ghost_map(b))

total = witt_add(a, b)
prod = witt_mul(a, b)
print("a + b =", (total.a0, total.a1), " ghost =", ghost_map(total))
print("a * b =", (prod.a0, prod.a1), " ghost =", ghost_map(prod))

# the ghost map is a ring isomorphism onto Z/p^2, so every pair must agree
mod = p * p
scalars = [WittScalar(p, x, y) for x in range(p) for y in range(p)]
for u in scalars:
    for v in scalars:
        assert ghost_map(witt_add(u, v)) == (ghost_map(u) + ghost_map(v)) % mod
        assert ghost_map(witt_mul(u, v)) == (ghost_map(u) * ghost_map(v)) % mod
        assert ghost_map(witt_sub(u, v)) == (ghost_map(u) - ghost_map(v)) % mod
print("all", len(scalars) ** 2, "scalar pairs agree with Z/%d" % mod)

# ghost is a bijection, so we can travel in the other direction too
for value in range(mod):
    assert ghost_map(from_ghost(p, value)) == value
print("from_ghost inverts ghost_map on all residues")

# -- Frobenius, Verschiebung, Teichmueller ----------------------------------

# F raises components to the p-th power; V shifts them up one slot.
# Composing them multiplies by p, which is what ghost arithmetic confirms.
for u in scalars:
    vf = witt_verschiebung(witt_frobenius(u))
    assert ghost_map(vf) == (p * ghost_map(u)) % mod
print("V(F(a)) = p*a for every scalar")

# Teichmueller representatives are the multiplicative section c -> (c, 0):
# their ghost values are the p-th powers c^p mod p^2.
for c in range(p):
    t = teichmuller(p, c)
    assert ghost_map(t) == pow(c, p, mod)
    assert witt_mul(t, t) == teichmuller(p, (c * c) % p)
print("Teichmueller lifts are multiplicative with ghost value c^p")

neg = witt_neg(a)
assert witt_add(a, neg) == WittScalar(p, 0, 0)
print("a + (-a) = 0")

# -- polynomial components ---------------------------------------------------

# The same ring structure works with mod-p polynomials in the slots.
names = ["x", "y"]
x = MultiPoly.variable(2, p, 0)
y = MultiPoly.variable(2, p, 1)

f = WittPoly(x, y)
g = WittPoly(y, x)
fg = witt_mul(f, g)
print("f = (x, y), g = (y, x)")
print("f * g = (%s, %s)" % (fg.f0.to_text(names), fg.f1.to_text(names)))

# addition carries: the first components add, the second pick up the carry
total = witt_add(f, g)
print("f + g = (%s, %s)" % (total.f0.to_text(names), total.f1.to_text(names)))

t = teichmuller_poly(x * y)
assert witt_mul(t, t) == teichmuller_poly((x * y) ** 2)
print("Teichmueller is multiplicative for polynomial entries as well")

print("done")
