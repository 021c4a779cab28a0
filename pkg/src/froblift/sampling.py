"""Seeded random generators shared by the tests, the demos, and the CLI.

Everything takes an explicit random.Random so runs are reproducible.
"""

from __future__ import annotations

import random

from .polycore import MultiPoly, lift_mod_p2, p_times


def random_exponents(rng: random.Random, arity: int, max_degree: int) -> tuple[int, ...]:
    exps = [0] * arity
    budget = rng.randint(0, max_degree)
    for _ in range(budget):
        exps[rng.randrange(arity)] += 1
    return tuple(exps)


def random_poly(
    rng: random.Random, arity: int, modulus: int, max_degree: int = 3, terms: int = 4
) -> MultiPoly:
    """A random sparse polynomial; may come out zero after cancellation."""
    chosen: dict[tuple[int, ...], int] = {}
    for _ in range(terms):
        exps = random_exponents(rng, arity, max_degree)
        chosen[exps] = (chosen.get(exps, 0) + rng.randrange(modulus)) % modulus
    return MultiPoly(arity, modulus, chosen)


def random_nonzero_poly(
    rng: random.Random, arity: int, modulus: int, max_degree: int = 3, terms: int = 4
) -> MultiPoly:
    while True:
        f = random_poly(rng, arity, modulus, max_degree, terms)
        if f.terms:
            return f


def random_witt_scalar(rng: random.Random, p: int):
    from .wittcore import WittScalar

    return WittScalar(p, rng.randrange(p), rng.randrange(p))


def random_lifting(
    rng: random.Random, p: int, n: int, max_degree: int = 4, terms: int = 3
):
    """A random chart lifting: coordinate p-th powers plus p times random noise."""
    from .liftlab import ChartLifting

    mod = p * p
    images = []
    for i in range(n):
        noise = random_poly(rng, n, p, max_degree, terms)
        images.append(MultiPoly.variable(n, mod, i) ** p + p_times(noise))
    return ChartLifting(p, tuple(images))


def random_divisor_compatible_lifting(
    rng: random.Random, p: int, n: int, log_rank: int, max_degree: int = 3, terms: int = 3
):
    """A random lifting compatible with the first log_rank coordinate divisors."""
    from .liftlab import ChartLifting

    mod = p * p
    images = []
    for i in range(n):
        if i < log_rank:
            v = random_poly(rng, n, p, max_degree, terms)
            unit = MultiPoly.constant(n, mod, 1) + p_times(v)
            images.append(MultiPoly.variable(n, mod, i) ** p * unit)
        else:
            noise = random_poly(rng, n, p, max_degree, terms)
            images.append(MultiPoly.variable(n, mod, i) ** p + p_times(noise))
    return ChartLifting(p, tuple(images))


def random_monomial_map(
    rng: random.Random, p: int, source_arity: int, target_count: int, max_degree: int = 2
) -> list[MultiPoly]:
    """A list of monomials with random coefficients, one per target coordinate."""
    out = []
    for _ in range(target_count):
        exps = random_exponents(rng, source_arity, max_degree)
        out.append(MultiPoly.monomial(source_arity, p, exps, rng.randrange(1, p)))
    return out


def random_mod_p2_poly(
    rng: random.Random, arity: int, p: int, max_degree: int = 3, terms: int = 4
) -> MultiPoly:
    low = random_poly(rng, arity, p, max_degree, terms)
    high = random_poly(rng, arity, p, max_degree, terms)
    return lift_mod_p2(low) + p_times(high)
