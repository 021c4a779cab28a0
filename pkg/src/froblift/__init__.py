"""Exact symbolic workbench for Frobenius liftings modulo p^2.

The package computes, over Z/p and Z/p^2 with no floating point anywhere:
length-2 Witt vector arithmetic, sparse polynomial rings, Groebner-based
ideal membership on both levels, chart Frobenius liftings with their divided
defect and determinant invariants, trace-form Frobenius splittings with the
canonical degree-two lift they define, and integer screens for Fano
threefold invariants.  ``froblift.cli`` exposes all of it as subcommands.
"""

from .fanoscreen import (
    BoundsReport,
    ChernData,
    FanoInvariantRecord,
    NonIntegralChi,
    ScreenResult,
    TableReport,
    boundedness_bounds,
    chi_tangent,
    euler_c3,
    hrr_chi,
    ingest_table,
    ingest_table_path,
    rigidity_screen,
)
from .idealcalc import (
    IdealPresentation,
    buchberger,
    colon_ideal,
    exact_divide,
    frobenius_power,
    ideal_member,
    ideal_power,
    member_mod_p2,
    member_with_cofactors,
    syzygy_basis,
)
from .liftlab import (
    CenterTooSmall,
    ChartLifting,
    NotALifting,
    NotCompatibleWithDivisor,
    RoundtripFailed,
    XiLogMatrix,
    XiMatrix,
    associated_splitting,
    base_change_psi,
    blowup_extends,
    canonical_point_lift,
    delta,
    frobenius_pullback,
    is_compatible_with_ideal,
    log_det_identity_holds,
    log_xi_det,
    log_xi_matrix,
    nu_star,
    nu_theta_roundtrip,
    product_lifting,
    psi_commutes_with_liftings,
    restrict_to_coordinate_divisor,
    standard_toric,
    theta_star,
    xi_det,
    xi_matrix,
)
from .polycore import (
    MultiPoly,
    NotDivisible,
    divide_by_p,
    lift_mod_p2,
    monomial_trace,
    p_times,
    reduce_mod_p,
)
from .splitlab import (
    CanonicalLiftElement,
    CanonicalLiftRing,
    DegreeUnbounded,
    GroupAction,
    OrderDivisibleByP,
    SplittingAxiomFailed,
    TraceSplitting,
    compatible_ideal_splitting,
    divisor_of_splitting,
    fedder_is_fsplit,
    group_average,
    p1_invariant_scan,
    theorem_iso_check,
    trace_form_from_map,
)
from .wittcore import (
    WittPoly,
    WittScalar,
    from_ghost,
    ghost_map,
    teichmuller,
    witt_add,
    witt_frobenius,
    witt_mul,
    witt_neg,
    witt_sub,
    witt_verschiebung,
)

__version__ = "0.1.0"
