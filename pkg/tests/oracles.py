"""Independent oracles the test suite checks the library against.

Ideal membership is re-decided here by brute-force linear algebra: write the
candidate as an unknown combination of shifted generators with multiplier
monomials up to a degree cap, then test the linear system for consistency,
over F_p by Gaussian elimination and over Z/p^2 by unit-pivot elimination
followed by a mod-p solve of the p-divisible residue.  None of this shares
code with the Groebner engine.
"""

from __future__ import annotations

from itertools import product as iter_product

from froblift.polycore import MultiPoly, split_modulus

# membership cap: multiplier degree = deg(f) - min generator degree + slack
DEGREE_SLACK = 4


def monomials_up_to(arity: int, degree: int) -> list[tuple[int, ...]]:
    out = [
        exps
        for exps in iter_product(range(degree + 1), repeat=arity)
        if sum(exps) <= degree
    ]
    out.sort()
    return out


def solve_mod_p(rows: list[list[int]], rhs: list[int], p: int) -> bool:
    """Consistency of A x = b over F_p."""
    aug = [row[:] + [b % p] for row, b in zip(rows, rhs)]
    ncols = len(rows[0]) if rows else 0
    used = [False] * len(aug)
    for c in range(ncols):
        pivot = None
        for r in range(len(aug)):
            if not used[r] and aug[r][c] % p:
                pivot = r
                break
        if pivot is None:
            continue
        inv = pow(aug[pivot][c], -1, p)
        aug[pivot] = [(v * inv) % p for v in aug[pivot]]
        for r in range(len(aug)):
            if r != pivot and aug[r][c]:
                factor = aug[r][c]
                aug[r] = [(v - factor * w) % p for v, w in zip(aug[r], aug[pivot])]
        used[pivot] = True
    for r in range(len(aug)):
        if not used[r] and any(aug[r][:-1]):
            raise AssertionError("elimination left a usable row behind")
        if not used[r] and aug[r][-1] % p:
            return False
    return True


def solve_mod_p2(rows: list[list[int]], rhs: list[int], p: int) -> bool:
    """Consistency of A x = b over Z/p^2.

    Pivots must be units; once none remain, every left-behind entry is
    divisible by p and the system collapses to one over F_p.
    """
    mod = p * p
    aug = [[v % mod for v in row] + [b % mod] for row, b in zip(rows, rhs)]
    ncols = len(rows[0]) if rows else 0
    used = [False] * len(aug)
    for c in range(ncols):
        pivot = None
        for r in range(len(aug)):
            if not used[r] and aug[r][c] % p:
                pivot = r
                break
        if pivot is None:
            continue
        inv = pow(aug[pivot][c], -1, mod)
        aug[pivot] = [(v * inv) % mod for v in aug[pivot]]
        for r in range(len(aug)):
            if r != pivot and aug[r][c]:
                factor = aug[r][c]
                aug[r] = [(v - factor * w) % mod for v, w in zip(aug[r], aug[pivot])]
        used[pivot] = True
    reduced_rows = []
    reduced_rhs = []
    for r in range(len(aug)):
        if used[r]:
            continue
        *coeffs, b = aug[r]
        if any(v % p for v in coeffs):
            raise AssertionError("unit entry survived outside a pivot row")
        if b % p:
            return False
        reduced_rows.append([(v // p) % p for v in coeffs])
        reduced_rhs.append((b // p) % p)
    if not reduced_rows:
        return True
    return solve_mod_p(reduced_rows, reduced_rhs, p)


def oracle_member(f: MultiPoly, generators: list[MultiPoly], slack: int = DEGREE_SLACK) -> bool:
    """Degree-truncated membership of f in the generator ideal, same modulus."""
    if not f.terms:
        return True
    p, k = split_modulus(f.modulus)
    degrees = [g.total_degree() for g in generators if g.terms]
    if not degrees:
        return False
    cap = max(0, f.total_degree() - min(degrees)) + slack
    shifted = []
    for g in generators:
        if not g.terms:
            continue
        for mono in monomials_up_to(f.arity, cap):
            shifted.append(g.mul_monomial(mono))
    support = set(f.terms)
    for s in shifted:
        support.update(s.terms)
    support = sorted(support)
    rows = [[s.terms.get(m, 0) for s in shifted] for m in support]
    rhs = [f.terms.get(m, 0) for m in support]
    if k == 1:
        return solve_mod_p(rows, rhs, p)
    return solve_mod_p2(rows, rhs, p)


def monomial_power_member(f: MultiPoly, center: tuple[int, ...], k: int) -> bool:
    """Exact membership in (x_i : i in center)^k, decided term by term."""
    return all(sum(exps[i] for i in center) >= k for exps in f.terms)
