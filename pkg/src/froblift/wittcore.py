"""Length-2 Witt vector arithmetic over prime fields and their polynomial rings.

A length-2 Witt vector is a component pair (a0, a1).  Addition carries through
the polynomial (X^p + Y^p - (X+Y)^p)/p, multiplication twists the second
component by p-th powers, and the ghost map a |-> a0^p + p*a1 identifies the
scalar ring with Z/p^2.  The ghost map is the correctness oracle for all of it.
"""

from __future__ import annotations

from dataclasses import dataclass

from .polycore import (
    MultiPoly,
    _is_prime,
    carry_coefficients,
    carry_poly,
    require_mod_p,
)


@dataclass(frozen=True)
class Prime:
    """A validated odd-or-even prime shared by one computation context."""

    p: int

    def __post_init__(self):
        if not _is_prime(self.p):
            raise ValueError("%d is not prime" % self.p)

    @property
    def square(self) -> int:
        return self.p * self.p


@dataclass(frozen=True)
class WittScalar:
    """A length-2 Witt vector over F_p, components stored as least residues."""

    p: int
    a0: int
    a1: int

    def __post_init__(self):
        if not _is_prime(self.p):
            raise ValueError("%d is not prime" % self.p)
        object.__setattr__(self, "a0", self.a0 % self.p)
        object.__setattr__(self, "a1", self.a1 % self.p)


@dataclass(frozen=True)
class WittPoly:
    """A length-2 Witt vector whose components are mod-p polynomials."""

    f0: MultiPoly
    f1: MultiPoly

    def __post_init__(self):
        p = require_mod_p(self.f0)
        require_mod_p(self.f1)
        self.f0._check_compatible(self.f1)

    @property
    def p(self) -> int:
        return self.f0.modulus

    @property
    def arity(self) -> int:
        return self.f0.arity


WittValue = WittScalar | WittPoly


def _check_pair(a: WittValue, b: WittValue) -> None:
    if type(a) is not type(b):
        raise ValueError("cannot mix Witt scalars and Witt polynomials")
    if isinstance(a, WittScalar):
        if a.p != b.p:
            raise ValueError("prime mismatch: %d vs %d" % (a.p, b.p))
    else:
        a.f0._check_compatible(b.f0)


def _carry_scalar(p: int, x: int, y: int) -> int:
    total = 0
    for k, c in carry_coefficients(p):
        total += c * pow(x, k, p) * pow(y, p - k, p)
    return total % p


def witt_add(a: WittValue, b: WittValue) -> WittValue:
    _check_pair(a, b)
    if isinstance(a, WittScalar):
        return WittScalar(a.p, a.a0 + b.a0, a.a1 + b.a1 + _carry_scalar(a.p, a.a0, b.a0))
    return WittPoly(a.f0 + b.f0, a.f1 + b.f1 + carry_poly(a.f0, b.f0))


def witt_mul(a: WittValue, b: WittValue) -> WittValue:
    _check_pair(a, b)
    if isinstance(a, WittScalar):
        p = a.p
        return WittScalar(
            p,
            a.a0 * b.a0,
            pow(a.a0, p, p) * b.a1 + a.a1 * pow(b.a0, p, p),
        )
    p = a.p
    return WittPoly(a.f0 * b.f0, a.f0**p * b.f1 + a.f1 * b.f0**p)


def witt_neg(a: WittValue) -> WittValue:
    """Additive inverse: (-a0, -a1 - [p=2]*a0^2), from the carry at (a0, -a0)."""
    if isinstance(a, WittScalar):
        extra = a.a0 * a.a0 if a.p == 2 else 0
        return WittScalar(a.p, -a.a0, -a.a1 - extra)
    extra = a.f0 * a.f0 if a.p == 2 else MultiPoly.zero(a.arity, a.p)
    return WittPoly(-a.f0, -a.f1 - extra)


def witt_sub(a: WittValue, b: WittValue) -> WittValue:
    return witt_add(a, witt_neg(b))


def witt_frobenius(a: WittValue) -> WittValue:
    if isinstance(a, WittScalar):
        return WittScalar(a.p, pow(a.a0, a.p, a.p), pow(a.a1, a.p, a.p))
    return WittPoly(a.f0 ** a.p, a.f1 ** a.p)


def witt_verschiebung(a: WittValue) -> WittValue:
    """Shift into the second slot: (a0, a1) |-> (0, a0)."""
    if isinstance(a, WittScalar):
        return WittScalar(a.p, 0, a.a0)
    return WittPoly(MultiPoly.zero(a.arity, a.p), a.f0)


def teichmuller(p: int, c: int) -> WittScalar:
    return WittScalar(p, c, 0)


def teichmuller_poly(f: MultiPoly) -> WittPoly:
    require_mod_p(f)
    return WittPoly(f, MultiPoly.zero(f.arity, f.modulus))


def witt_zero(p: int) -> WittScalar:
    return WittScalar(p, 0, 0)


def witt_one(p: int) -> WittScalar:
    return WittScalar(p, 1, 0)


def ghost_map(a: WittScalar) -> int:
    """The ring isomorphism onto Z/p^2: (a0, a1) |-> a0^p + p*a1."""
    p = a.p
    return (pow(a.a0, p, p * p) + p * a.a1) % (p * p)


def from_ghost(p: int, value: int) -> WittScalar:
    """Inverse of ghost_map, stepping through the p^2 scalars."""
    value %= p * p
    a0 = value % p
    rem = (value - pow(a0, p, p * p)) % (p * p)
    if rem % p:
        raise ArithmeticError("ghost preimage failed at %d" % value)
    return WittScalar(p, a0, rem // p)
