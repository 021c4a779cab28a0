"""Ideal arithmetic over F_p, plus membership testing over Z/p^2.

The engine is a plain Buchberger loop under graded reverse lex with the
normal selection strategy, tracking how every basis element is built from the
input generators.  That bookkeeping is what makes the two harder operations
possible: generating syzygies of the input generators, and ideal membership
over Z/p^2, which reduces to a mod-p membership after one division by p and a
syzygy correction.  Everything is deterministic: same input list, same output.
"""

from __future__ import annotations

import threading
from itertools import combinations, combinations_with_replacement

from .polycore import (
    MultiPoly,
    OrderKey,
    TermKey,
    divide_by_p,
    grevlex_key,
    lift_mod_p2,
    monomial_divides,
    monomial_lcm,
    monomial_quotient,
    reduce_mod_p,
    require_mod_p,
    require_mod_p2,
    split_modulus,
)


def elimination_key(exponents: TermKey):
    """Order eliminating variable 0: compare its degree first, then grevlex."""
    return (exponents[0], grevlex_key(exponents[1:]))


def divide_with_cofactors(
    f: MultiPoly, divisors: list[MultiPoly], key: OrderKey = grevlex_key
) -> tuple[list[MultiPoly], MultiPoly]:
    """Multivariate division: f = sum(q[i]*divisors[i]) + r.

    No term of r is divisible by any divisor's leading monomial.  The first
    divisor whose leading monomial divides wins each step, so the output is a
    function of the divisor order.
    """
    p = require_mod_p(f)
    zero = MultiPoly.zero(f.arity, p)
    quotients = [zero] * len(divisors)
    heads = []
    for d in divisors:
        lm, lc = d.leading_term(key)
        heads.append((lm, pow(lc, -1, p), d))
    remainder = zero
    work = f
    while work.terms:
        m = max(work.terms, key=key)
        c = work.terms[m]
        for i, (lm, lc_inv, d) in enumerate(heads):
            if monomial_divides(lm, m):
                shift = monomial_quotient(lm, m)
                coeff = (c * lc_inv) % p
                work = work - d.mul_monomial(shift, coeff)
                quotients[i] = quotients[i] + MultiPoly.monomial(f.arity, p, shift, coeff)
                break
        else:
            term = MultiPoly.monomial(f.arity, p, m, c)
            remainder = remainder + term
            work = work - term
    return quotients, remainder


def normal_form(f: MultiPoly, basis: list[MultiPoly], key: OrderKey = grevlex_key) -> MultiPoly:
    if not basis:
        return f
    return divide_with_cofactors(f, basis, key)[1]


def _spair_parts(lm_i, lc_i, lm_j, lc_j, p):
    lcm = monomial_lcm(lm_i, lm_j)
    ti = monomial_quotient(lm_i, lcm)
    tj = monomial_quotient(lm_j, lcm)
    ci = pow(lc_i, -1, p)
    cj = pow(lc_j, -1, p)
    return lcm, ti, ci, tj, cj


class _TrackedBasis:
    """A Groebner basis remembering each element as a combination of the inputs."""

    def __init__(self, generators: list[MultiPoly], key: OrderKey = grevlex_key):
        if not generators:
            raise ValueError("need at least one generator")
        self.key = key
        p = require_mod_p(generators[0])
        self.p = p
        self.arity = generators[0].arity
        for g in generators:
            generators[0]._check_compatible(g)
            if not g.terms:
                raise ValueError("zero generator")
        self.generators = list(generators)
        zero = MultiPoly.zero(self.arity, p)
        m = len(generators)
        self.elements: list[MultiPoly] = []
        self.reps: list[list[MultiPoly]] = []
        for i, g in enumerate(generators):
            lc = g.leading_term(key)[1]
            inv = pow(lc, -1, p)
            rep = [zero] * m
            rep[i] = MultiPoly.constant(self.arity, p, inv)
            self.elements.append(g.scale(inv))
            self.reps.append(rep)
        self._run()
        self._autoreduce()

    # f = sum(q*elements) + r with the rep of r relative to the generators
    def _reduce_tracked(self, f: MultiPoly, rep: list[MultiPoly]):
        quotients, r = divide_with_cofactors(f, self.elements, self.key)
        rep = list(rep)
        for q, elem_rep in zip(quotients, self.reps):
            if q.terms:
                for j in range(len(rep)):
                    if elem_rep[j].terms:
                        rep[j] = rep[j] - q * elem_rep[j]
        return r, rep

    def _run(self):
        key = self.key
        p = self.p
        pairs = {(i, j) for i, j in combinations(range(len(self.elements)), 2)}
        while pairs:
            best = None
            for i, j in pairs:
                lm_i = self.elements[i].leading_term(key)[0]
                lm_j = self.elements[j].leading_term(key)[0]
                lcm = monomial_lcm(lm_i, lm_j)
                cand = (sum(lcm), i, j)
                if best is None or cand < best:
                    best = cand
            _, i, j = best
            pairs.discard((i, j))
            lm_i, lc_i = self.elements[i].leading_term(key)
            lm_j, lc_j = self.elements[j].leading_term(key)
            lcm, ti, ci, tj, cj = _spair_parts(lm_i, lc_i, lm_j, lc_j, p)
            if lcm == tuple(a + b for a, b in zip(lm_i, lm_j)):
                continue  # coprime leading monomials reduce to zero
            spoly = self.elements[i].mul_monomial(ti, ci) - self.elements[j].mul_monomial(tj, cj)
            rep = [MultiPoly.monomial(self.arity, p, ti, ci) * a for a in self.reps[i]]
            rep = [
                r - MultiPoly.monomial(self.arity, p, tj, cj) * b
                for r, b in zip(rep, self.reps[j])
            ]
            r, rep = self._reduce_tracked(spoly, rep)
            if r.terms:
                inv = pow(r.leading_term(key)[1], -1, p)
                k = len(self.elements)
                self.elements.append(r.scale(inv))
                self.reps.append([a.scale(inv) for a in rep])
                pairs.update((t, k) for t in range(k))

    def _autoreduce(self):
        key = self.key
        order = sorted(range(len(self.elements)), key=lambda i: key(self.elements[i].leading_term(key)[0]))
        kept: list[int] = []
        for i in order:
            lm = self.elements[i].leading_term(key)[0]
            if not any(monomial_divides(self.elements[j].leading_term(key)[0], lm) for j in kept):
                kept.append(i)
        elements = [self.elements[i] for i in kept]
        reps = [self.reps[i] for i in kept]
        changed = True
        while changed:
            changed = False
            for i in range(len(elements)):
                others = elements[:i] + elements[i + 1 :]
                quotients, r = divide_with_cofactors(elements[i], others, key)
                if r != elements[i]:
                    changed = True
                    rep = list(reps[i])
                    other_reps = reps[:i] + reps[i + 1 :]
                    for q, elem_rep in zip(quotients, other_reps):
                        if q.terms:
                            rep = [a - q * b for a, b in zip(rep, elem_rep)]
                    elements[i] = r
                    reps[i] = rep
        pairs = sorted(
            zip(elements, reps),
            key=lambda er: key(er[0].leading_term(key)[0]),
            reverse=True,
        )
        self.elements = [e for e, _ in pairs]
        self.reps = [r for _, r in pairs]

    def member_with_cofactors(self, f: MultiPoly):
        """Return (True, cofactors over the input generators) or (False, None)."""
        quotients, r = divide_with_cofactors(f, self.elements, self.key)
        if r.terms:
            return False, None
        m = len(self.generators)
        zero = MultiPoly.zero(self.arity, self.p)
        cof = [zero] * m
        for q, rep in zip(quotients, self.reps):
            if q.terms:
                for j in range(m):
                    if rep[j].terms:
                        cof[j] = cof[j] + q * rep[j]
        return True, cof

    def generator_syzygies(self) -> list[list[MultiPoly]]:
        """A generating set of relations sum(s[a]*generators[a]) == 0."""
        key = self.key
        p = self.p
        m = len(self.generators)
        zero = MultiPoly.zero(self.arity, p)
        syzygies: list[list[MultiPoly]] = []

        # rows of (identity - V*A), where generators = V*elements, elements = A*generators
        for j, g in enumerate(self.generators):
            quotients, r = divide_with_cofactors(g, self.elements, key)
            if r.terms:
                raise AssertionError("generator escaped its own basis")
            row = [zero] * m
            row[j] = MultiPoly.constant(self.arity, p, 1)
            for q, rep in zip(quotients, self.reps):
                if q.terms:
                    row = [a - q * b for a, b in zip(row, rep)]
            if any(a.terms for a in row):
                syzygies.append(row)

        # Schreyer relations of the basis, pulled back along A
        for i, j in combinations(range(len(self.elements)), 2):
            lm_i, lc_i = self.elements[i].leading_term(key)
            lm_j, lc_j = self.elements[j].leading_term(key)
            lcm, ti, ci, tj, cj = _spair_parts(lm_i, lc_i, lm_j, lc_j, p)
            spoly = self.elements[i].mul_monomial(ti, ci) - self.elements[j].mul_monomial(tj, cj)
            quotients, r = divide_with_cofactors(spoly, self.elements, key)
            if r.terms:
                raise AssertionError("S-polynomial escaped a completed basis")
            tau = [zero] * len(self.elements)
            tau[i] = tau[i] + MultiPoly.monomial(self.arity, p, ti, ci)
            tau[j] = tau[j] - MultiPoly.monomial(self.arity, p, tj, cj)
            tau = [t - q for t, q in zip(tau, quotients)]
            row = [zero] * m
            for t, rep in zip(tau, self.reps):
                if t.terms:
                    row = [a + t * b for a, b in zip(row, rep)]
            if any(a.terms for a in row):
                syzygies.append(row)

        for s in syzygies:
            acc = zero
            for a, g in zip(s, self.generators):
                acc = acc + a * g
            if acc.terms:
                raise AssertionError("inexact syzygy")
        return syzygies


class IdealPresentation:
    """A finitely presented ideal over F_p or Z/p^2, with a cached mod-p basis."""

    def __init__(self, generators):
        generators = list(generators)
        if not generators:
            raise ValueError("an ideal presentation needs at least one generator")
        first = generators[0]
        for g in generators:
            first._check_compatible(g)
            if not g.terms:
                raise ValueError("generators must be nonzero")
        self.generators: tuple[MultiPoly, ...] = tuple(generators)
        self._lock = threading.Lock()
        self._tracked: _TrackedBasis | None = None

    @property
    def arity(self) -> int:
        return self.generators[0].arity

    @property
    def modulus(self) -> int:
        return self.generators[0].modulus

    @property
    def p(self) -> int:
        return split_modulus(self.modulus)[0]

    def is_mod_p2(self) -> bool:
        return split_modulus(self.modulus)[1] == 2

    def _mod_p_generators(self) -> list[MultiPoly]:
        if self.is_mod_p2():
            reduced = [reduce_mod_p(g) for g in self.generators]
            return [g for g in reduced if g.terms]
        return list(self.generators)

    def _engine(self) -> _TrackedBasis:
        # single-writer lazy init; concurrent readers share the result
        if self._tracked is None:
            with self._lock:
                if self._tracked is None:
                    gens = self._mod_p_generators()
                    if not gens:
                        raise ValueError("every generator vanishes mod p")
                    self._tracked = _TrackedBasis(gens)
        return self._tracked

    def groebner(self) -> list[MultiPoly]:
        """The reduced grevlex basis of the mod-p part, cached."""
        return list(self._engine().elements)

    def attach_basis(self, basis: list[MultiPoly]) -> None:
        """Adopt an externally supplied basis after verifying it is equivalent.

        Checks that the candidate is itself a Groebner basis, that every
        generator reduces to zero against it, and that each candidate element
        lies in the generator ideal.
        """
        if not basis:
            raise ValueError("candidate basis is empty")
        p = require_mod_p(basis[0])
        for b in basis:
            if not b.terms:
                raise ValueError("zero element in basis")
            basis[0]._check_compatible(b)
        for i, j in combinations(range(len(basis)), 2):
            lm_i, lc_i = basis[i].leading_term(grevlex_key)
            lm_j, lc_j = basis[j].leading_term(grevlex_key)
            _, ti, ci, tj, cj = _spair_parts(lm_i, lc_i, lm_j, lc_j, p)
            spoly = basis[i].mul_monomial(ti, ci) - basis[j].mul_monomial(tj, cj)
            if normal_form(spoly, basis).terms:
                raise ValueError("candidate basis is not a Groebner basis")
        for g in self._mod_p_generators():
            if normal_form(g, basis).terms:
                raise ValueError("candidate basis misses a generator")
        engine = self._engine()
        for b in basis:
            if normal_form(b, engine.elements).terms:
                raise ValueError("candidate basis is larger than the ideal")

    def member(self, f: MultiPoly) -> bool:
        if self.is_mod_p2():
            return member_mod_p2(f, self)
        return ideal_member(f, self)


def buchberger(ideal: IdealPresentation) -> list[MultiPoly]:
    return ideal.groebner()


def ideal_member(f: MultiPoly, ideal: IdealPresentation) -> bool:
    """Mod-p membership via normal form against the cached basis."""
    require_mod_p(f)
    if f.arity != ideal.arity:
        raise ValueError("arity mismatch")
    if f.modulus != ideal.p:
        raise ValueError("modulus mismatch")
    if not f.terms:
        return True
    return not normal_form(f, ideal.groebner()).terms


def member_with_cofactors(f: MultiPoly, ideal: IdealPresentation):
    """Mod-p membership plus cofactors over the presentation's generators."""
    if ideal.is_mod_p2():
        raise ValueError("cofactor extraction works on mod-p presentations")
    if not f.terms:
        zero = MultiPoly.zero(ideal.arity, ideal.p)
        return True, [zero] * len(ideal.generators)
    return ideal._engine().member_with_cofactors(f)


def syzygy_basis(ideal: IdealPresentation) -> list[list[MultiPoly]]:
    """Generating syzygies of the (mod-p) generators, each verified exact."""
    if ideal.is_mod_p2():
        raise ValueError("syzygy_basis works on mod-p presentations")
    return ideal._engine().generator_syzygies()


def ideal_power(ideal: IdealPresentation, k: int) -> IdealPresentation:
    """The k-th power, presented by all k-fold products of the generators."""
    if k < 1:
        raise ValueError("power must be at least 1")
    products = []
    for combo in combinations_with_replacement(ideal.generators, k):
        acc = combo[0]
        for g in combo[1:]:
            acc = acc * g
        if acc.terms:
            products.append(acc)
    return IdealPresentation(products)


def frobenius_power(ideal: IdealPresentation) -> IdealPresentation:
    """The ideal generated by the p-th powers of the generators."""
    p = ideal.p
    return IdealPresentation([g**p for g in ideal.generators])


def exact_divide(f: MultiPoly, g: MultiPoly) -> MultiPoly:
    """Exact polynomial quotient f/g over F_p; raises if the division leaves a remainder."""
    require_mod_p(f)
    if not g.terms:
        raise ZeroDivisionError("division by the zero polynomial")
    quotients, r = divide_with_cofactors(f, [g])
    if r.terms:
        raise ArithmeticError("not an exact multiple")
    return quotients[0]


def colon_ideal(ideal: IdealPresentation, g: MultiPoly) -> IdealPresentation:
    """Generators of (I : g), via intersection with (g) in an extended ring.

    An auxiliary variable t is prepended, the intersection I ∩ (g) is read off
    from an eliminating basis of t*I + (1-t)*(g), and each intersection
    generator is divided exactly by g.
    """
    require_mod_p(g)
    if not g.terms:
        raise ZeroDivisionError("colon by the zero polynomial")
    if ideal.is_mod_p2():
        raise ValueError("colon_ideal works on mod-p presentations")
    n = ideal.arity
    p = ideal.p
    t = MultiPoly.variable(n + 1, p, 0)
    one = MultiPoly.constant(n + 1, p, 1)
    g_up = g.embed(n + 1, 1)
    gens = [t * f.embed(n + 1, 1) for f in ideal.generators]
    gens.append((one - t) * g_up)
    tracked = _TrackedBasis(gens, key=elimination_key)
    quotients = []
    for b in tracked.elements:
        if all(exps[0] == 0 for exps in b.terms):
            quotients.append(exact_divide(b.drop_variable(0), g))
    if not quotients:
        # I*(g) lies in the intersection, so an eliminating basis always has a t-free part
        raise AssertionError("elimination produced no intersection generators")
    return IdealPresentation(_TrackedBasis(quotients).elements)


def member_mod_p2(f: MultiPoly, ideal: IdealPresentation) -> bool:
    """Membership over Z/p^2, staged through the mod-p engine.

    First f must land in the reduced ideal mod p, with explicit cofactors.
    Subtracting that lifted combination leaves p times a mod-p residual, and
    f belongs to the ideal exactly when the residual lies in the mod-p ideal
    enlarged by one correction term per generating syzygy (plus one for each
    generator that vanishes mod p).
    """
    require_mod_p2(f)
    if not ideal.is_mod_p2():
        raise ValueError("member_mod_p2 needs a mod-p^2 presentation")
    if f.arity != ideal.arity or f.modulus != ideal.modulus:
        raise ValueError("mismatched polynomial and presentation")
    p = ideal.p
    reduced = [reduce_mod_p(g) for g in ideal.generators]
    live = [i for i, g in enumerate(reduced) if g.terms]
    n = ideal.arity

    residual = f
    if live:
        engine = ideal._engine()
        ok, cof = engine.member_with_cofactors(reduce_mod_p(f))
        if not ok:
            return False
        for q, i in zip(cof, live):
            if q.terms:
                residual = residual - lift_mod_p2(q) * ideal.generators[i]
        syzygies = engine.generator_syzygies()
    else:
        if reduce_mod_p(f).terms:
            return False
        syzygies = []
    r = divide_by_p(residual)

    corrections: list[MultiPoly] = []
    for s in syzygies:
        acc = MultiPoly.zero(n, p * p)
        for q, i in zip(s, live):
            if q.terms:
                acc = acc + lift_mod_p2(q) * ideal.generators[i]
        w = divide_by_p(acc)
        if w.terms:
            corrections.append(w)
    for i, g in enumerate(reduced):
        if not g.terms:
            corrections.append(divide_by_p(ideal.generators[i]))

    mod_p_gens = [reduced[i] for i in live] + [w for w in corrections if w.terms]
    if not mod_p_gens:
        return not r.terms
    return ideal_member(r, IdealPresentation(mod_p_gens))
