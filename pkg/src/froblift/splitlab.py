"""Trace-form Frobenius splittings and the canonical mod-p^2 lift they define.

Every splitting here is sigma_u(f) = trace(u*f) for a key polynomial u, where
the trace is the monomial dual of the p-th power map.  The module covers the
usual queries (unitality, Fedder's criterion, ideal compatibility, the
associated divisor with its 1/(p-1) coefficients, averaging over a tame group
action) plus the degree-two Witt quotient whose second component is stabilized
by sigma, with checks that it really is a flat ring receiving the lifting.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product as iter_product
from typing import Callable, Sequence

from .idealcalc import (
    IdealPresentation,
    exact_divide,
    frobenius_power,
    ideal_member,
)
from .polycore import (
    MultiPoly,
    _is_prime,
    monomial_trace,
    reduce_mod_p,
    require_mod_p,
)
from .wittcore import WittPoly, witt_add, witt_mul, witt_neg


class SplittingAxiomFailed(ArithmeticError):
    """A map that was supposed to behave like a Frobenius splitting does not."""


class DegreeUnbounded(ArithmeticError):
    """A probed splitting callback returned output beyond the degree cap."""


class OrderDivisibleByP(ValueError):
    """Group averaging needs the group order to be invertible mod p."""


@dataclass(frozen=True)
class TraceSplitting:
    """The map f |-> trace(u * f) for a fixed mod-p key polynomial u."""

    p: int
    n: int
    u: MultiPoly

    def __post_init__(self):
        if require_mod_p(self.u) != self.p:
            raise ValueError("key polynomial modulus does not match p")
        if self.u.arity != self.n:
            raise ValueError("key polynomial arity does not match n")

    def evaluate(self, f: MultiPoly) -> MultiPoly:
        if require_mod_p(f) != self.p or f.arity != self.n:
            raise ValueError("argument does not live in this splitting's ring")
        return monomial_trace(self.u * f)

    def is_unital(self) -> bool:
        """Whether the splitting sends 1 to 1, i.e. trace(u) == 1."""
        one = MultiPoly.constant(self.n, self.p, 1)
        return self.evaluate(one) == one


def trace_form_from_map(
    sigma: Callable[[MultiPoly], MultiPoly], p: int, n: int, degree_cap: int = 256
) -> TraceSplitting:
    """Reconstruct the key polynomial of a p^-1-semilinear map from p^n probes.

    u is recovered as sum over residue vectors b of x^b * sigma(x^((p-1)*1-b))^p.
    Any probe whose output exceeds degree_cap raises DegreeUnbounded.
    """
    if not _is_prime(p):
        raise ValueError("%d is not prime" % p)
    u = MultiPoly.zero(n, p)
    corner = (p - 1,) * n
    for b in iter_product(range(p), repeat=n):
        probe = MultiPoly.monomial(n, p, tuple(c - e for c, e in zip(corner, b)))
        out = sigma(probe)
        if require_mod_p(out) != p or out.arity != n:
            raise ValueError("callback output lives in the wrong ring")
        if out.total_degree() > degree_cap:
            raise DegreeUnbounded(
                "probe output degree %d exceeds cap %d" % (out.total_degree(), degree_cap)
            )
        u = u + MultiPoly.monomial(n, p, b) * out**p
    return TraceSplitting(p, n, u)


def fedder_is_fsplit(f: MultiPoly) -> bool:
    """Fedder's criterion for the hypersurface f = 0: split iff f^(p-1) avoids
    the ideal of coordinate p-th powers."""
    p = require_mod_p(f)
    n = f.arity
    powers = IdealPresentation([MultiPoly.variable(n, p, i) ** p for i in range(n)])
    return not ideal_member(f ** (p - 1), powers)


def compatible_ideal_splitting(splitting: TraceSplitting, ideal: IdealPresentation) -> bool:
    """Whether u * I lands in the Frobenius power of I, generator by generator."""
    if ideal.is_mod_p2() or ideal.p != splitting.p or ideal.arity != splitting.n:
        raise ValueError("ideal does not live in this splitting's ring")
    target = frobenius_power(ideal)
    return all(ideal_member(splitting.u * g, target) for g in ideal.generators)


@dataclass(frozen=True)
class DivisorReport:
    """Multiplicities of candidate factors inside the key polynomial."""

    entries: tuple[tuple[MultiPoly, int, Fraction], ...]  # (factor, mult, mult/(p-1))
    residual: MultiPoly


def divisor_of_splitting(
    splitting: TraceSplitting, factors: Sequence[MultiPoly]
) -> DivisorReport:
    """Peel candidate factors off u and report multiplicities over p-1.

    Each multiplicity is taken against the running residual, so a repeated
    candidate is absorbed by its first occurrence; for pairwise coprime
    candidates this is the plain maximal power dividing u.  Multiplicities
    above p-1 contradict the splitting normalization and raise.
    """
    p = splitting.p
    residual = splitting.u
    if not residual.terms:
        raise ValueError("the zero key polynomial has no divisor")
    entries = []
    for factor in factors:
        if require_mod_p(factor) != p or factor.arity != splitting.n:
            raise ValueError("candidate factor lives in the wrong ring")
        if factor.total_degree() < 1:
            raise ValueError("candidate factors must be nonconstant")
        mult = 0
        while True:
            try:
                quotient = exact_divide(residual, factor)
            except ArithmeticError:
                break
            residual = quotient
            mult += 1
            if mult > p - 1:
                raise SplittingAxiomFailed(
                    "factor multiplicity exceeds p-1; not a splitting divisor"
                )
        entries.append((factor, mult, Fraction(mult, p - 1)))
    return DivisorReport(tuple(entries), residual)


# -- group averaging ----------------------------------------------------------


@dataclass(frozen=True)
class GroupAction:
    """A finite group acting by ring substitutions, listed map by map."""

    p: int
    maps: tuple[tuple[MultiPoly, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "maps", tuple(tuple(m) for m in self.maps))
        if not self.maps:
            raise ValueError("a group action needs at least the identity")
        n = len(self.maps[0])
        for m in self.maps:
            if len(m) != n:
                raise ValueError("all maps must substitute every variable")
            for g in m:
                if require_mod_p(g) != self.p or g.arity != n:
                    raise ValueError("substitution images live in the wrong ring")
        if len(self.maps) % self.p == 0:
            raise OrderDivisibleByP("group order %d is divisible by p" % len(self.maps))
        ident = self.identity()
        if ident not in self.maps:
            raise ValueError("the identity map is missing")
        for a in self.maps:
            for b in self.maps:
                if self.compose(a, b) not in self.maps:
                    raise ValueError("maps are not closed under composition")
        for a in self.maps:
            if self.inverse(a) is None:
                raise ValueError("a listed map has no inverse in the list")

    @property
    def n(self) -> int:
        return len(self.maps[0])

    def identity(self) -> tuple[MultiPoly, ...]:
        return tuple(MultiPoly.variable(self.n, self.p, i) for i in range(self.n))

    def apply(self, m: tuple[MultiPoly, ...], f: MultiPoly) -> MultiPoly:
        return f.substitute(list(m))

    def compose(self, a, b) -> tuple[MultiPoly, ...]:
        """The map acting as f |-> apply(a, apply(b, f))."""
        return tuple(g.substitute(list(a)) for g in b)

    def inverse(self, m) -> tuple[MultiPoly, ...] | None:
        ident = self.identity()
        for cand in self.maps:
            if self.compose(m, cand) == ident and self.compose(cand, m) == ident:
                return cand
        return None


def group_average(
    splitting: TraceSplitting, action: GroupAction, degree_cap: int = 256
) -> TraceSplitting:
    """Average the splitting over the action: f |-> |G|^-1 sum g^-1(sigma(g(f))).

    The averaged map is again of trace form; its key polynomial is recovered
    by probing.  If the input is unital the average is too, and it is invariant
    under every listed map.
    """
    p = splitting.p
    if action.p != p or action.n != splitting.n:
        raise ValueError("action and splitting live in different rings")
    inverses = {i: action.inverse(m) for i, m in enumerate(action.maps)}
    scale = pow(len(action.maps), -1, p)

    def averaged(f: MultiPoly) -> MultiPoly:
        total = MultiPoly.zero(splitting.n, p)
        for i, m in enumerate(action.maps):
            total = total + action.apply(inverses[i], splitting.evaluate(action.apply(m, f)))
        return total.scale(scale)

    return trace_form_from_map(averaged, p, splitting.n, degree_cap)


# -- the canonical degree-two lift --------------------------------------------


@dataclass(frozen=True)
class CanonicalLiftElement:
    """A normalized Witt pair in the canonical lift ring: f1 is sigma-stabilized."""

    f0: MultiPoly
    f1: MultiPoly


class CanonicalLiftRing:
    """Witt pairs modulo the relations (0, f) = 0 for sigma(f) = 0.

    Representatives are normalized by replacing the second component with
    sigma of it, raised to the p: two pairs name the same element exactly
    when their normal forms coincide.
    """

    def __init__(self, splitting: TraceSplitting, require_unital: bool = True):
        if require_unital and not splitting.is_unital():
            raise SplittingAxiomFailed("canonical lifting needs a unital splitting")
        self.splitting = splitting
        self.p = splitting.p
        self.n = splitting.n

    def normal_form(self, f0: MultiPoly, f1: MultiPoly) -> CanonicalLiftElement:
        stab = self.splitting.evaluate(f1) ** self.p
        return CanonicalLiftElement(f0, stab)

    def zero(self) -> CanonicalLiftElement:
        z = MultiPoly.zero(self.n, self.p)
        return CanonicalLiftElement(z, z)

    def one(self) -> CanonicalLiftElement:
        return self.normal_form(
            MultiPoly.constant(self.n, self.p, 1), MultiPoly.zero(self.n, self.p)
        )

    def _pair(self, a: CanonicalLiftElement) -> WittPoly:
        return WittPoly(a.f0, a.f1)

    def add(self, a: CanonicalLiftElement, b: CanonicalLiftElement) -> CanonicalLiftElement:
        s = witt_add(self._pair(a), self._pair(b))
        return self.normal_form(s.f0, s.f1)

    def mul(self, a: CanonicalLiftElement, b: CanonicalLiftElement) -> CanonicalLiftElement:
        s = witt_mul(self._pair(a), self._pair(b))
        return self.normal_form(s.f0, s.f1)

    def neg(self, a: CanonicalLiftElement) -> CanonicalLiftElement:
        s = witt_neg(self._pair(a))
        return self.normal_form(s.f0, s.f1)

    def p_shift(self, a: CanonicalLiftElement) -> CanonicalLiftElement:
        """Multiplication by p: (f0, f1) |-> (0, f0^p)."""
        return self.normal_form(MultiPoly.zero(self.n, self.p), a.f0**self.p)

    def flatness_check(self, degree_cap: int) -> bool:
        """p-torsion equals the image of p on pairs of monomials up to the cap.

        Any element killed by p must itself be p times something; the witness
        is (sigma(f1), 0).  Returns False only on an implementation bug.
        """
        zero = self.zero()
        monos = [MultiPoly.zero(self.n, self.p)]
        for exps in iter_product(range(degree_cap + 1), repeat=self.n):
            if 0 < sum(exps) <= degree_cap:
                monos.append(MultiPoly.monomial(self.n, self.p, exps))
        monos.append(MultiPoly.constant(self.n, self.p, 1))
        for f0 in monos:
            for f1 in monos:
                z = self.normal_form(f0, f1)
                if self.p_shift(z) != zero:
                    continue
                witness = self.normal_form(self.splitting.evaluate(z.f1), MultiPoly.zero(self.n, self.p))
                if self.p_shift(witness) != z:
                    return False
        return True


@dataclass(frozen=True)
class IsoCheckReport:
    section_ok: bool  # sigma undoes p-th powers: sigma(f^p) = f
    additive_ok: bool  # f |-> (f mod p, delta f) respects addition
    multiplicative_ok: bool  # ... and multiplication

    @property
    def ok(self) -> bool:
        return self.section_ok and self.additive_ok and self.multiplicative_ok

    def failures(self) -> tuple[str, ...]:
        out = []
        if not self.section_ok:
            out.append("section")
        if not self.additive_ok:
            out.append("additive")
        if not self.multiplicative_ok:
            out.append("multiplicative")
        return tuple(out)


def theorem_iso_check(
    lifting, probes: int = 20, seed: int = 0, splitting: TraceSplitting | None = None
) -> IsoCheckReport:
    """Spot-check that the chart lifting agrees with the canonical lift ring.

    Verifies that the lifting's splitting retracts p-th powers, and that
    sending a mod-p^2 polynomial to the normalized pair (reduction, delta)
    is a ring map into the canonical lift ring.  A deliberately corrupted
    splitting can be passed in to watch the identities fail.
    """
    import random

    from . import liftlab
    from .sampling import random_poly

    sigma = splitting if splitting is not None else liftlab.associated_splitting(lifting)
    ring = CanonicalLiftRing(sigma, require_unital=False)
    p, n = lifting.p, lifting.n
    rng = random.Random(seed)

    section_ok = True
    for _ in range(probes):
        f = random_poly(rng, n, p, max_degree=3, terms=4)
        if sigma.evaluate(f**p) != f:
            section_ok = False
            break

    def embed(f):
        return ring.normal_form(reduce_mod_p(f), liftlab.delta(lifting, f))

    additive_ok = True
    multiplicative_ok = True
    for _ in range(probes):
        f = random_poly(rng, n, p * p, max_degree=3, terms=4)
        g = random_poly(rng, n, p * p, max_degree=3, terms=4)
        if embed(f + g) != ring.add(embed(f), embed(g)):
            additive_ok = False
        if embed(f * g) != ring.mul(embed(f), embed(g)):
            multiplicative_ok = False
        if not (additive_ok or multiplicative_ok):
            break
    return IsoCheckReport(section_ok, additive_ok, multiplicative_ok)


def p1_invariant_scan(p: int) -> int:
    """Coefficient of x^(p-1) y^(p-1) in x * prod_{l=1}^{p-1} (x - l*y) * y^(p-2).

    Zero for every odd prime; the measured value at p = 2 is 1.
    """
    if not _is_prime(p):
        raise ValueError("%d is not prime" % p)
    x = MultiPoly.variable(2, p, 0)
    y = MultiPoly.variable(2, p, 1)
    poly = x
    for ell in range(1, p):
        poly = poly * (x - y.scale(ell))
    poly = poly * y ** (p - 2)
    return poly.terms.get((p - 1, p - 1), 0)
