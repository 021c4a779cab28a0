"""Exact sparse multivariate polynomial arithmetic over Z/p and Z/p^2.

Polynomials are dictionaries from exponent tuples to nonzero least residues.
Every operation returns a new value; nothing mutates in place.  The modulus is
carried on the value and mixing moduli or arities is a hard error, so a prime
and its square never meet silently.
"""

from __future__ import annotations

from functools import lru_cache
from math import isqrt
from typing import Callable, Iterable, Mapping, Sequence

# Exponents stay within machine width; desk-scale inputs never get close.
EXPONENT_LIMIT = 2**31 - 1

TermKey = tuple[int, ...]
OrderKey = Callable[[TermKey], object]


class NotDivisible(ArithmeticError):
    """Division by p hit a monomial whose coefficient is not divisible by p."""

    def __init__(self, exponents: TermKey, coefficient: int):
        self.exponents = exponents
        self.coefficient = coefficient
        super().__init__(
            "coefficient %d of monomial %s is not divisible by p"
            % (coefficient, format_monomial(exponents))
        )


@lru_cache(maxsize=None)
def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


@lru_cache(maxsize=None)
def split_modulus(modulus: int) -> tuple[int, int]:
    """Return (p, k) with modulus == p**k, k in {1, 2} and p prime."""
    if _is_prime(modulus):
        return modulus, 1
    r = isqrt(modulus)
    if r * r == modulus and _is_prime(r):
        return r, 2
    raise ValueError("modulus %d is neither a prime nor a prime square" % modulus)


def grevlex_key(exponents: TermKey) -> tuple[int, tuple[int, ...]]:
    """Sort key under which max() picks the graded reverse lex leading monomial."""
    return (sum(exponents), tuple(-e for e in reversed(exponents)))


def monomial_divides(a: TermKey, b: TermKey) -> bool:
    return all(x <= y for x, y in zip(a, b))


def monomial_quotient(a: TermKey, b: TermKey) -> TermKey:
    """Exponent tuple of b / a, assuming a divides b."""
    return tuple(y - x for x, y in zip(a, b))


def monomial_lcm(a: TermKey, b: TermKey) -> TermKey:
    return tuple(max(x, y) for x, y in zip(a, b))


def format_monomial(exponents: TermKey, names: Sequence[str] | None = None) -> str:
    if names is None:
        names = ["x%d" % (i + 1) for i in range(len(exponents))]
    factors = []
    for name, e in zip(names, exponents):
        if e == 1:
            factors.append(name)
        elif e > 1:
            factors.append("%s^%d" % (name, e))
    return "*".join(factors) if factors else "1"


class MultiPoly:
    """A sparse polynomial with a fixed variable count and coefficient modulus.

    ``terms`` maps exponent tuples of length ``arity`` to coefficients in
    ``[1, modulus)``.  Instances are immutable by convention.
    """

    __slots__ = ("arity", "modulus", "terms")

    def __init__(self, arity: int, modulus: int, terms: Mapping[TermKey, int] | None = None):
        if arity < 0:
            raise ValueError("arity must be nonnegative")
        split_modulus(modulus)
        self.arity = arity
        self.modulus = modulus
        clean: dict[TermKey, int] = {}
        for exps, c in (terms or {}).items():
            if len(exps) != arity:
                raise ValueError("exponent tuple %r does not match arity %d" % (exps, arity))
            if any(e < 0 for e in exps):
                raise ValueError("negative exponent in %r" % (exps,))
            if any(e > EXPONENT_LIMIT for e in exps):
                raise OverflowError("exponent beyond machine width in %r" % (exps,))
            c %= modulus
            if c:
                clean[tuple(exps)] = c
        self.terms = clean

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, arity: int, modulus: int) -> "MultiPoly":
        return cls(arity, modulus)

    @classmethod
    def constant(cls, arity: int, modulus: int, value: int) -> "MultiPoly":
        return cls(arity, modulus, {(0,) * arity: value})

    @classmethod
    def variable(cls, arity: int, modulus: int, index: int) -> "MultiPoly":
        if not 0 <= index < arity:
            raise ValueError("variable index %d out of range for arity %d" % (index, arity))
        exps = tuple(1 if i == index else 0 for i in range(arity))
        return cls(arity, modulus, {exps: 1})

    @classmethod
    def monomial(cls, arity: int, modulus: int, exponents: TermKey, coefficient: int = 1) -> "MultiPoly":
        return cls(arity, modulus, {tuple(exponents): coefficient})

    # -- structure ----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return (
            self.arity == other.arity
            and self.modulus == other.modulus
            and self.terms == other.terms
        )

    __hash__ = None  # mutable dict inside; use structural equality only

    def __repr__(self) -> str:
        return "MultiPoly(%r mod %d)" % (self.to_text(), self.modulus)

    def total_degree(self) -> int:
        """Total degree, with the zero polynomial reported as -1."""
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def leading_term(self, key: OrderKey = grevlex_key) -> tuple[TermKey, int]:
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        m = max(self.terms, key=key)
        return m, self.terms[m]

    def sorted_terms(self, reverse: bool = True) -> list[tuple[TermKey, int]]:
        return [(m, self.terms[m]) for m in sorted(self.terms, key=grevlex_key, reverse=reverse)]

    def constant_term(self) -> int:
        return self.terms.get((0,) * self.arity, 0)

    def _like(self, terms: dict[TermKey, int]) -> "MultiPoly":
        out = object.__new__(MultiPoly)
        out.arity = self.arity
        out.modulus = self.modulus
        out.terms = terms
        return out

    def _check_compatible(self, other: "MultiPoly") -> None:
        if self.arity != other.arity:
            raise ValueError("arity mismatch: %d vs %d" % (self.arity, other.arity))
        if self.modulus != other.modulus:
            raise ValueError("modulus mismatch: %d vs %d" % (self.modulus, other.modulus))

    # -- ring operations ----------------------------------------------------

    def __add__(self, other: "MultiPoly | int") -> "MultiPoly":
        if isinstance(other, int):
            other = MultiPoly.constant(self.arity, self.modulus, other)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        self._check_compatible(other)
        terms = dict(self.terms)
        mod = self.modulus
        for exps, c in other.terms.items():
            s = (terms.get(exps, 0) + c) % mod
            if s:
                terms[exps] = s
            else:
                terms.pop(exps, None)
        return self._like(terms)

    __radd__ = __add__

    def __neg__(self) -> "MultiPoly":
        mod = self.modulus
        return self._like({e: mod - c for e, c in self.terms.items()})

    def __sub__(self, other: "MultiPoly | int") -> "MultiPoly":
        if isinstance(other, int):
            other = MultiPoly.constant(self.arity, self.modulus, other)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: int) -> "MultiPoly":
        return MultiPoly.constant(self.arity, self.modulus, other) - self

    def __mul__(self, other: "MultiPoly | int") -> "MultiPoly":
        if isinstance(other, int):
            return self.scale(other)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        self._check_compatible(other)
        mod = self.modulus
        terms: dict[TermKey, int] = {}
        for ea, ca in self.terms.items():
            for eb, cb in other.terms.items():
                exps = tuple(x + y for x, y in zip(ea, eb))
                c = (terms.get(exps, 0) + ca * cb) % mod
                if c:
                    terms[exps] = c
                else:
                    terms.pop(exps, None)
        for exps in terms:
            if any(e > EXPONENT_LIMIT for e in exps):
                raise OverflowError("exponent beyond machine width in product")
        return self._like(terms)

    def __rmul__(self, other: int) -> "MultiPoly":
        return self.scale(other)

    def scale(self, c: int) -> "MultiPoly":
        c %= self.modulus
        if c == 0:
            return self._like({})
        mod = self.modulus
        terms = {}
        for exps, a in self.terms.items():
            v = (a * c) % mod
            if v:
                terms[exps] = v
        return self._like(terms)

    def __pow__(self, n: int) -> "MultiPoly":
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = MultiPoly.constant(self.arity, self.modulus, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def mul_monomial(self, exponents: TermKey, coefficient: int = 1) -> "MultiPoly":
        mod = self.modulus
        coefficient %= mod
        terms = {}
        for exps, c in self.terms.items():
            v = (c * coefficient) % mod
            if v:
                terms[tuple(x + y for x, y in zip(exps, exponents))] = v
        return self._like(terms)

    # -- calculus and substitution ------------------------------------------

    def partial_derivative(self, index: int) -> "MultiPoly":
        """Formal partial derivative with respect to variable ``index``."""
        if not 0 <= index < self.arity:
            raise ValueError("variable index %d out of range" % index)
        mod = self.modulus
        terms: dict[TermKey, int] = {}
        for exps, c in self.terms.items():
            e = exps[index]
            if e == 0:
                continue
            v = (c * e) % mod
            if v:
                down = exps[:index] + (e - 1,) + exps[index + 1 :]
                terms[down] = (terms.get(down, 0) + v) % mod
                if not terms[down]:
                    del terms[down]
        return self._like(terms)

    def substitute(self, images: Sequence["MultiPoly"]) -> "MultiPoly":
        """Ring-map substitution sending variable i to images[i].

        All images must share one arity and this polynomial's modulus.
        """
        if len(images) != self.arity:
            raise ValueError("expected %d images, got %d" % (self.arity, len(images)))
        if self.arity == 0:
            raise ValueError("cannot infer target arity for a 0-variable substitution")
        target = images[0].arity
        for g in images:
            if g.arity != target:
                raise ValueError("images must share one arity")
            if g.modulus != self.modulus:
                raise ValueError("modulus mismatch in substitution")
        out = MultiPoly.zero(target, self.modulus)
        powers: dict[tuple[int, int], MultiPoly] = {}

        def power(i: int, e: int) -> MultiPoly:
            got = powers.get((i, e))
            if got is None:
                got = images[i] ** e
                powers[(i, e)] = got
            return got

        for exps, c in self.terms.items():
            term = MultiPoly.constant(target, self.modulus, c)
            for i, e in enumerate(exps):
                if e:
                    term = term * power(i, e)
            out = out + term
        return out

    def evaluate(self, point: Sequence[int]) -> int:
        """Evaluate at a tuple of residues, returning a least residue."""
        if len(point) != self.arity:
            raise ValueError("expected %d coordinates, got %d" % (self.arity, len(point)))
        mod = self.modulus
        total = 0
        for exps, c in self.terms.items():
            v = c
            for a, e in zip(point, exps):
                if e:
                    v = (v * pow(a % mod, e, mod)) % mod
            total = (total + v) % mod
        return total

    def embed(self, arity: int, offset: int = 0) -> "MultiPoly":
        """Reinterpret in a larger variable list, shifting indices by ``offset``."""
        if offset < 0 or offset + self.arity > arity:
            raise ValueError("embedding window out of range")
        pad_left = (0,) * offset
        pad_right = (0,) * (arity - offset - self.arity)
        terms = {pad_left + exps + pad_right: c for exps, c in self.terms.items()}
        return MultiPoly(arity, self.modulus, terms)

    def drop_variable(self, index: int) -> "MultiPoly":
        """Remove a variable no term uses."""
        terms: dict[TermKey, int] = {}
        for exps, c in self.terms.items():
            if exps[index]:
                raise ValueError("variable %d still occurs" % index)
            terms[exps[:index] + exps[index + 1 :]] = c
        return MultiPoly(self.arity - 1, self.modulus, terms)

    # -- printing -----------------------------------------------------------

    def to_text(self, names: Sequence[str] | None = None) -> str:
        """Canonical text form: grevlex-descending terms, least-residue coefficients."""
        if not self.terms:
            return "0"
        if names is not None and len(names) != self.arity:
            raise ValueError("expected %d variable names" % self.arity)
        parts = []
        for exps, c in self.sorted_terms():
            mono = format_monomial(exps, names)
            if mono == "1":
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            else:
                parts.append("%d*%s" % (c, mono))
        return " + ".join(parts)


# -- characteristic-p primitives ---------------------------------------------


def require_mod_p(f: MultiPoly) -> int:
    p, k = split_modulus(f.modulus)
    if k != 1:
        raise ValueError("expected a mod-p value, got modulus %d" % f.modulus)
    return p


def require_mod_p2(f: MultiPoly) -> int:
    p, k = split_modulus(f.modulus)
    if k != 2:
        raise ValueError("expected a mod-p^2 value, got modulus %d" % f.modulus)
    return p


def divide_by_p(f: MultiPoly) -> MultiPoly:
    """Divide a mod-p^2 polynomial by p, landing in the mod-p ring.

    Every coefficient must be divisible by p; otherwise NotDivisible reports
    the grevlex-largest offending monomial.
    """
    p = require_mod_p2(f)
    for exps, c in f.sorted_terms():
        if c % p:
            raise NotDivisible(exps, c)
    return MultiPoly(f.arity, p, {e: c // p for e, c in f.terms.items()})


def lift_mod_p2(f: MultiPoly) -> MultiPoly:
    """Least-residue coefficient lift from Z/p to Z/p^2."""
    p = require_mod_p(f)
    return MultiPoly(f.arity, p * p, dict(f.terms))


def reduce_mod_p(f: MultiPoly) -> MultiPoly:
    """Coefficient reduction from Z/p^2 to Z/p."""
    p = require_mod_p2(f)
    return MultiPoly(f.arity, p, {e: c % p for e, c in f.terms.items()})


def p_times(f: MultiPoly) -> MultiPoly:
    """Multiply the least-residue lift of a mod-p value by p inside Z/p^2."""
    p = require_mod_p(f)
    return MultiPoly(f.arity, p * p, {e: c * p for e, c in f.terms.items()})


def monomial_trace(f: MultiPoly) -> MultiPoly:
    """The monomial trace dual to the (p-1)-st power of the coordinate product.

    Sends x^a to x^((a - (p-1)*1)/p) when every entry of a is congruent to
    p - 1 mod p, and kills every other monomial.  It is the right inverse of
    the p-th power map used by all trace-form splittings here, and satisfies
    monomial_trace(g**p * f) == g * monomial_trace(f).
    """
    p = require_mod_p(f)
    terms: dict[TermKey, int] = {}
    for exps, c in f.terms.items():
        if all(e % p == p - 1 for e in exps):
            terms[tuple((e - (p - 1)) // p for e in exps)] = c
    return MultiPoly(f.arity, p, terms)


def carry_coefficients(p: int) -> tuple[tuple[int, int], ...]:
    """Coefficients c_k of the mod-p carry polynomial for length-2 Witt sums.

    (X^p + Y^p - (X+Y)^p)/p expands over Z to sum_k c_k X^k Y^(p-k) with
    c_k = -binomial(p, k)/p; the tuple holds (k, c_k mod p) for 0 < k < p.
    """
    if not _is_prime(p):
        raise ValueError("%d is not prime" % p)
    out = []
    binom = 1
    for k in range(1, p):
        binom = binom * (p - k + 1) // k
        out.append((k, (-(binom // p)) % p))
    return tuple(out)


def carry_poly(f: MultiPoly, g: MultiPoly) -> MultiPoly:
    """Evaluate the Witt addition carry (f^p + g^p - (f+g)^p)/p in the mod-p ring."""
    p = require_mod_p(f)
    f._check_compatible(g)
    out = MultiPoly.zero(f.arity, p)
    for k, c in carry_coefficients(p):
        out = out + (f**k * g ** (p - k)).scale(c)
    return out
