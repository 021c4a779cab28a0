"""Chart-level Frobenius liftings modulo p^2 and the maps they induce.

A lifting on an affine chart with n coordinates is the list of images of the
coordinates under a ring endomorphism of Z/p^2[x] that reduces to the p-th
power map mod p.  Dividing the defect against the plain p-th power by p gives
the delta operator; its Jacobian, shifted by the diagonal of (p-1)-st powers,
is the xi matrix whose determinant drives every splitting construction here.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations

from .idealcalc import IdealPresentation, ideal_power, member_mod_p2
from .polycore import (
    MultiPoly,
    divide_by_p,
    lift_mod_p2,
    p_times,
    reduce_mod_p,
    require_mod_p,
    require_mod_p2,
    split_modulus,
)
from .splitlab import SplittingAxiomFailed, TraceSplitting
from .wittcore import WittPoly


class NotALifting(ValueError):
    """An image fails to reduce to the p-th power of its coordinate."""

    def __init__(self, index: int):
        self.index = index
        super().__init__("image %d does not reduce to its coordinate's p-th power" % index)


class NotCompatibleWithDivisor(ValueError):
    """An image is not an exact multiple of its coordinate's p-th power."""

    def __init__(self, index: int):
        self.index = index
        super().__init__(
            "image %d is not x_%d^p times a unit congruent to 1" % (index, index + 1)
        )


class CenterTooSmall(ValueError):
    """Blow-up centers need codimension at least 2."""


class RoundtripFailed(AssertionError):
    """One of the two recover-Frobenius identities broke."""


@dataclass(frozen=True)
class ChartLifting:
    """A Frobenius lifting on an affine chart, given by coordinate images mod p^2."""

    p: int
    images: tuple[MultiPoly, ...]

    def __post_init__(self):
        object.__setattr__(self, "images", tuple(self.images))
        if not self.images:
            raise ValueError("a chart needs at least one coordinate")
        n = len(self.images)
        for i, img in enumerate(self.images):
            if require_mod_p2(img) != self.p:
                raise ValueError("image %d has the wrong modulus" % i)
            if img.arity != n:
                raise ValueError("image %d has arity %d, expected %d" % (i, img.arity, n))
            power = MultiPoly.variable(n, self.p, i) ** self.p
            if reduce_mod_p(img) != power:
                raise NotALifting(i)

    @property
    def n(self) -> int:
        return len(self.images)

    @cached_property
    def deltas(self) -> tuple[MultiPoly, ...]:
        """delta of each coordinate: (image_i - x_i^p) / p, a mod-p polynomial."""
        out = []
        for i, img in enumerate(self.images):
            power = MultiPoly.variable(self.n, self.p * self.p, i) ** self.p
            out.append(divide_by_p(img - power))
        return tuple(out)


def standard_toric(p: int, n: int) -> ChartLifting:
    """The coordinatewise p-th power lifting; all deltas vanish."""
    mod = p * p
    return ChartLifting(p, tuple(MultiPoly.variable(n, mod, i) ** p for i in range(n)))


def frobenius_pullback(lifting: ChartLifting, f: MultiPoly) -> MultiPoly:
    """Apply the lifted Frobenius to a mod-p^2 polynomial on the chart."""
    if require_mod_p2(f) != lifting.p or f.arity != lifting.n:
        raise ValueError("polynomial does not live on this chart")
    return f.substitute(list(lifting.images))


def delta(lifting: ChartLifting, f: MultiPoly) -> MultiPoly:
    """The divided Frobenius defect (F*(f) - f^p)/p, a mod-p polynomial.

    Additive up to the Witt carry and twisted-Leibniz multiplicative:
    delta(fg) = f^p delta(g) + g^p delta(f) after reduction.
    """
    return divide_by_p(frobenius_pullback(lifting, f) - f**lifting.p)


def poly_det(rows: list[list[MultiPoly]]) -> MultiPoly:
    """Exact determinant by cofactor expansion; matrices stay 4x4 or smaller."""
    n = len(rows)
    if n > 4:
        raise ValueError("determinants are supported up to size 4")
    for row in rows:
        if len(row) != n:
            raise ValueError("matrix is not square")
    if n == 1:
        return rows[0][0]

    def expand(r: int, cols: tuple[int, ...]) -> MultiPoly:
        if len(cols) == 1:
            return rows[r][cols[0]]
        acc = None
        for k, c in enumerate(cols):
            minor = expand(r + 1, cols[:k] + cols[k + 1 :])
            term = rows[r][c] * minor
            if k % 2:
                term = -term
            acc = term if acc is None else acc + term
        return acc

    return expand(0, tuple(range(n)))


@dataclass(frozen=True)
class XiMatrix:
    """The divided-Frobenius matrix on the chart: diag(x_i^(p-1)) + Jacobian of delta."""

    p: int
    entries: tuple[tuple[MultiPoly, ...], ...]

    @cached_property
    def det(self) -> MultiPoly:
        return poly_det([list(row) for row in self.entries])


@dataclass(frozen=True)
class XiLogMatrix:
    """The xi matrix rewritten in the mixed basis with log columns for the divisor."""

    p: int
    log_rank: int
    entries: tuple[tuple[MultiPoly, ...], ...]

    @cached_property
    def det(self) -> MultiPoly:
        return poly_det([list(row) for row in self.entries])


def xi_matrix(lifting: ChartLifting) -> XiMatrix:
    p, n = lifting.p, lifting.n
    if n > 4:
        raise ValueError("determinants are supported up to size 4")
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            entry = lifting.deltas[i].partial_derivative(j)
            if i == j:
                entry = entry + MultiPoly.variable(n, p, i) ** (p - 1)
            row.append(entry)
        rows.append(tuple(row))
    return XiMatrix(p, tuple(rows))


def xi_det(lifting: ChartLifting) -> MultiPoly:
    return xi_matrix(lifting).det


def divisor_unit_parts(lifting: ChartLifting, log_rank: int) -> tuple[MultiPoly, ...]:
    """For i < log_rank, the v_i with image_i = x_i^p * (1 + p*v_i).

    Raises NotCompatibleWithDivisor(i) when image_i is not an exact multiple
    of x_i^p, or when the cofactor fails to reduce to 1.
    """
    p, n = lifting.p, lifting.n
    if not 1 <= log_rank <= n:
        raise ValueError("log rank must be between 1 and the chart dimension")
    out = []
    one = MultiPoly.constant(n, p, 1)
    for i in range(log_rank):
        img = lifting.images[i]
        if any(exps[i] < p for exps in img.terms):
            raise NotCompatibleWithDivisor(i)
        shifted = {
            exps[:i] + (exps[i] - p,) + exps[i + 1 :]: c for exps, c in img.terms.items()
        }
        unit = MultiPoly(n, p * p, shifted)
        if reduce_mod_p(unit) != one:
            raise NotCompatibleWithDivisor(i)
        out.append(divide_by_p(unit - 1))
    return tuple(out)


def log_xi_matrix(lifting: ChartLifting, log_rank: int) -> XiLogMatrix:
    """Mixed-basis xi matrix for the divisor cut out by the first log_rank coordinates.

    Row i below log_rank reads [i==j] + x_j * dv_i/dx_j on log columns and
    dv_i/dx_j on plain columns; the remaining rows are the ordinary xi rows
    with their log-column entries rescaled by x_j.
    """
    p, n = lifting.p, lifting.n
    if n > 4:
        raise ValueError("determinants are supported up to size 4")
    vs = divisor_unit_parts(lifting, log_rank)
    rows = []
    for i in range(n):
        row = []
        if i < log_rank:
            source = vs[i]
            diag = MultiPoly.constant(n, p, 1)
        else:
            source = lifting.deltas[i]
            diag = MultiPoly.variable(n, p, i) ** (p - 1)
        for j in range(n):
            entry = source.partial_derivative(j)
            if j < log_rank:
                entry = entry * MultiPoly.variable(n, p, j)
            if i == j:
                entry = entry + diag
            row.append(entry)
        rows.append(tuple(row))
    return XiLogMatrix(p, log_rank, tuple(rows))


def log_xi_det(lifting: ChartLifting, log_rank: int) -> MultiPoly:
    return log_xi_matrix(lifting, log_rank).det


def log_det_identity_holds(lifting: ChartLifting, log_rank: int) -> bool:
    """det(xi) equals det(log xi) times the (p-1)-st power of the divisor equation."""
    p, n = lifting.p, lifting.n
    scale = MultiPoly.constant(n, p, 1)
    for i in range(log_rank):
        scale = scale * MultiPoly.variable(n, p, i) ** (p - 1)
    return xi_det(lifting) == log_xi_det(lifting, log_rank) * scale


def associated_splitting(lifting: ChartLifting) -> TraceSplitting:
    """The trace-form splitting whose key polynomial is det(xi)."""
    u = xi_det(lifting)
    splitting = TraceSplitting(lifting.p, lifting.n, u)
    if not splitting.is_unital():
        raise SplittingAxiomFailed("det(xi) failed to trace to 1")
    return splitting


# -- compatibility and blow-ups ----------------------------------------------


def compatibility_report(lifting: ChartLifting, ideal: IdealPresentation) -> list[bool]:
    """For each generator g of the mod-p^2 ideal, whether F*(g) lies in ideal^p."""
    if not ideal.is_mod_p2() or ideal.p != lifting.p or ideal.arity != lifting.n:
        raise ValueError("ideal does not live on this chart over Z/p^2")
    target = ideal_power(ideal, lifting.p)
    return [member_mod_p2(frobenius_pullback(lifting, g), target) for g in ideal.generators]


def is_compatible_with_ideal(lifting: ChartLifting, ideal: IdealPresentation) -> bool:
    return all(compatibility_report(lifting, ideal))


@dataclass(frozen=True)
class BlowupReport:
    center: tuple[int, ...]
    cross_terms_ok: tuple[bool, ...]  # x_i^p f_j - x_j^p f_i in I^(2p), pairs in index order
    deltas_ok: tuple[bool, ...]  # f_i in I^p
    extends: bool


def blowup_extends(lifting: ChartLifting, center: tuple[int, ...]) -> BlowupReport:
    """Whether the lifting extends over the blow-up in a coordinate subspace.

    Runs both equivalent membership tests: the pairwise cross terms
    x_i^p f_j - x_j^p f_i against I^(2p), and each f_i = delta(x_i) against
    I^p.  The two verdicts must agree; disagreement is an internal error.
    """
    p, n = lifting.p, lifting.n
    center = tuple(center)
    if len(set(center)) != len(center) or any(not 0 <= i < n for i in center):
        raise ValueError("center must be a list of distinct coordinate indices")
    if len(center) < 2:
        raise CenterTooSmall("blow-up centers need at least two coordinates")
    coord_gens = [MultiPoly.variable(n, p, i) for i in center]
    ideal = IdealPresentation(coord_gens)
    power_p = ideal_power(ideal, p)
    power_2p = ideal_power(ideal, 2 * p)
    deltas = {i: lifting.deltas[i] for i in center}

    deltas_ok = tuple(power_p.member(deltas[i]) for i in center)
    cross = []
    for a, b in combinations(range(len(center)), 2):
        i, j = center[a], center[b]
        xi_p = MultiPoly.variable(n, p, i) ** p
        xj_p = MultiPoly.variable(n, p, j) ** p
        cross.append(power_2p.member(xi_p * deltas[j] - xj_p * deltas[i]))
    cross_terms_ok = tuple(cross)

    if all(cross_terms_ok) != all(deltas_ok):
        raise AssertionError("the two blow-up criteria disagreed; internal error")
    return BlowupReport(center, cross_terms_ok, deltas_ok, all(deltas_ok))


# -- functoriality -----------------------------------------------------------


def product_lifting(a: ChartLifting, b: ChartLifting) -> ChartLifting:
    """Block-diagonal lifting on the product chart."""
    if a.p != b.p:
        raise ValueError("prime mismatch")
    n = a.n + b.n
    images = [img.embed(n, 0) for img in a.images]
    images += [img.embed(n, a.n) for img in b.images]
    return ChartLifting(a.p, tuple(images))


def _set_variable_zero(f: MultiPoly, index: int) -> MultiPoly:
    terms = {e: c for e, c in f.terms.items() if e[index] == 0}
    return MultiPoly(f.arity, f.modulus, terms)


def restrict_to_coordinate_divisor(lifting: ChartLifting, index: int) -> ChartLifting:
    """The induced lifting on the divisor x_index = 0.

    Requires image_index to be an exact x_index^p multiple with cofactor
    congruent to 1, the same condition the log matrix needs for that row.
    """
    p, n = lifting.p, lifting.n
    if not 0 <= index < n:
        raise ValueError("no such coordinate")
    if n == 1:
        raise ValueError("restricting a curve chart leaves no coordinates")
    img = lifting.images[index]
    if any(exps[index] < p for exps in img.terms):
        raise NotCompatibleWithDivisor(index)
    shifted = {
        exps[:index] + (exps[index] - p,) + exps[index + 1 :]: c
        for exps, c in img.terms.items()
    }
    unit = MultiPoly(n, p * p, shifted)
    if reduce_mod_p(unit) != MultiPoly.constant(n, p, 1):
        raise NotCompatibleWithDivisor(index)
    images = []
    for j in range(n):
        if j == index:
            continue
        images.append(_set_variable_zero(lifting.images[j], index).drop_variable(index))
    return ChartLifting(p, tuple(images))


def base_change_psi(lifting: ChartLifting, phi: list[MultiPoly]) -> list[MultiPoly]:
    """Images of the target coordinates under the canonical mod-p^2 base change.

    phi is a mod-p ring map from the target chart's coordinates into a source
    ring; the i-th output is lift(phi_i)^p + p * lift(delta_i o phi).
    """
    if len(phi) != lifting.n:
        raise ValueError("expected %d substitution polynomials" % lifting.n)
    for g in phi:
        if require_mod_p(g) != lifting.p:
            raise ValueError("substitution map must be a mod-p map for the same prime")
        phi[0]._check_compatible(g)
    out = []
    for i in range(lifting.n):
        head = lift_mod_p2(phi[i]) ** lifting.p
        tail = p_times(lifting.deltas[i].substitute(phi))
        out.append(head + tail)
    return out


def psi_commutes_with_liftings(
    source: ChartLifting, target: ChartLifting, phi: list[MultiPoly]
) -> bool:
    """Check psi o F_source == F_target o psi on every target coordinate."""
    psi = base_change_psi(target, phi)
    for i in range(target.n):
        left = psi[i].substitute(list(source.images))
        right = target.images[i].substitute(psi)
        if left != right:
            return False
    return True


def canonical_point_lift(lifting: ChartLifting, point: tuple[int, ...]) -> tuple[int, ...]:
    """Lift a rational chart point to Z/p^2 coordinates a_i^p + p*delta_i(a)."""
    p, n = lifting.p, lifting.n
    if len(point) != n:
        raise ValueError("expected %d coordinates" % n)
    mod = p * p
    point = tuple(a % p for a in point)
    return tuple(
        (pow(a, p, mod) + p * lifting.deltas[i].evaluate(point)) % mod
        for i, a in enumerate(point)
    )


def theta_star(pair: WittPoly) -> MultiPoly:
    """Collapse a Witt pair into Z/p^2 by lift(f0)^p + p*lift(f1), least residues."""
    return lift_mod_p2(pair.f0) ** pair.p + p_times(pair.f1)


def nu_star(lifting: ChartLifting, f: MultiPoly) -> WittPoly:
    """The Witt pair (f mod p, delta(f)) attached to a mod-p^2 polynomial."""
    return WittPoly(reduce_mod_p(f), delta(lifting, f))


def nu_theta_roundtrip(lifting: ChartLifting, f: MultiPoly) -> bool:
    """Verify both recover-Frobenius identities at f; raise RoundtripFailed otherwise.

    theta* o nu* must reproduce the lifted Frobenius pullback of f, and
    nu* o theta* must act on the Witt pair of f as componentwise p-th powers.
    """
    pair = nu_star(lifting, f)
    if theta_star(pair) != frobenius_pullback(lifting, f):
        raise RoundtripFailed("theta* o nu* missed the lifted Frobenius")
    back = nu_star(lifting, theta_star(pair))
    if back.f0 != pair.f0**lifting.p or back.f1 != pair.f1**lifting.p:
        raise RoundtripFailed("nu* o theta* is not the Witt Frobenius")
    return True
