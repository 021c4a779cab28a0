"""Integer invariant screens for Fano threefolds.

Exact Fraction arithmetic end to end: Euler characteristics come out of the
degree-three Riemann-Roch polynomial, the tangent-sheaf characteristic is a
one-sided rigidity screen (negative rules rigidity out, nonnegative decides
nothing), and the appendix-style chain bound 4*M*m^3 is reported with its
strictness, which fails exactly at m = 1.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

NOT_RIGID = "not_rigid"
POSSIBLY_RIGID = "possibly_rigid"


class NonIntegralChi(ArithmeticError):
    """A characteristic formula came out fractional; some parity input is wrong."""


@dataclass(frozen=True)
class ChernData:
    """Intersection numbers needed by the rank-anything Riemann-Roch polynomial."""

    rank: int
    c1c2_tangent: int
    c1e_c1t_sq: int = 0  # c1(E).c1(T)^2
    c1e_c2t: int = 0  # c1(E).c2(T)
    c1t_c1e_sq: int = 0  # c1(T).c1(E)^2
    c1t_c2e: int = 0  # c1(T).c2(E)
    c1e_cube: int = 0  # c1(E)^3
    c1e_c2e: int = 0  # c1(E).c2(E)
    c3e: int = 0  # c3(E)


def hrr_chi(data: ChernData) -> int:
    """chi(E) on a threefold from Chern numbers, exact and integer-checked."""
    total = (
        Fraction(data.rank * data.c1c2_tangent, 24)
        + Fraction(data.c1e_c1t_sq + data.c1e_c2t, 12)
        + Fraction(data.c1t_c1e_sq - 2 * data.c1t_c2e, 4)
        + Fraction(data.c1e_cube - 3 * data.c1e_c2e + 3 * data.c3e, 6)
    )
    if total.denominator != 1:
        raise NonIntegralChi("chi(E) = %s is not an integer" % total)
    return int(total)


@dataclass(frozen=True)
class FanoInvariantRecord:
    """One Fano threefold: anticanonical degree, Picard rank, third Betti number."""

    identifier: str
    degree: int  # (-K)^3
    rho: int
    b3: int
    c1c2: int = 24
    extra: tuple[tuple[str, str], ...] = field(default=())

    def __post_init__(self):
        if self.degree < 2:
            raise ValueError("anticanonical degree must be at least 2")
        if self.rho < 1:
            raise ValueError("Picard rank must be positive")
        if self.b3 < 0:
            raise ValueError("b3 must be nonnegative")
        if self.b3 % 2:
            raise NonIntegralChi("odd b3 breaks every characteristic parity")
        if self.degree % 2:
            raise NonIntegralChi("odd degree makes chi(T) fractional")
        if self.c1c2 % 24:
            raise NonIntegralChi("c1c2 = %d makes chi(O) fractional" % self.c1c2)


def chi_structure_sheaf(record: FanoInvariantRecord) -> int:
    return record.c1c2 // 24


def chi_tangent(record: FanoInvariantRecord) -> int:
    """chi of the tangent sheaf: degree/2 - 18 + rho - b3/2, exact."""
    total = Fraction(record.degree, 2) - 18 + record.rho - Fraction(record.b3, 2)
    if total.denominator != 1:
        raise NonIntegralChi("chi(T) = %s is not an integer" % total)
    return int(total)


def euler_c3(record: FanoInvariantRecord) -> int:
    """c3 as the topological Euler number 2 + 2*rho - b3 (b1 = 0, b2 = rho)."""
    return 2 + 2 * record.rho - record.b3


@dataclass(frozen=True)
class ScreenResult:
    record: FanoInvariantRecord
    chi_tangent: int
    c3: int
    chi_o: int
    verdict: str


def rigidity_screen(record: FanoInvariantRecord) -> ScreenResult:
    """One-sided screen: chi(T) < 0 rules rigidity out, otherwise undecided."""
    chi = chi_tangent(record)
    verdict = NOT_RIGID if chi < 0 else POSSIBLY_RIGID
    return ScreenResult(record, chi, euler_c3(record), chi_structure_sheaf(record), verdict)


@dataclass(frozen=True)
class BoundsReport:
    big_m: int
    m: int
    cap: int  # 4*M*m^3
    partial_sums: tuple[int, int, int, int]
    strict: bool  # last partial sum < cap
    equality: bool  # the m = 1 degeneration, flagged rather than passed


def boundedness_bounds(big_m: int, m: int) -> BoundsReport:
    """The chain M < M(1+m) < M(1+m+m^2) < M(1+m+m^2+m^3) against 4*M*m^3."""
    if big_m < 1 or m < 1:
        raise ValueError("both parameters must be positive")
    cap = 4 * big_m * m**3
    sums = (
        big_m,
        big_m * (1 + m),
        big_m * (1 + m + m * m),
        big_m * (1 + m + m * m + m**3),
    )
    strict = sums[-1] < cap
    equality = sums[-1] == cap
    return BoundsReport(big_m, m, cap, sums, strict, equality)


# -- CSV ingestion -------------------------------------------------------------


REQUIRED_COLUMNS = ("id", "degree", "rho", "b3")


@dataclass(frozen=True)
class TableReport:
    results: tuple[ScreenResult, ...]
    errors: tuple[tuple[int, str], ...]  # (line number, message)

    @property
    def accepted(self) -> int:
        return len(self.results)

    @property
    def rejected(self) -> int:
        return len(self.errors)


def ingest_table(lines: Iterable[str]) -> TableReport:
    """Screen a CSV table with header id,degree,rho,b3 and optional extras.

    Malformed rows are reported with their line numbers and skipped; the rest
    are screened.  An unexpected header is a hard error.
    """
    reader = csv.DictReader(lines)
    if reader.fieldnames is None:
        return TableReport((), ())
    fields = [name.strip() for name in reader.fieldnames]
    if not any(fields):
        return TableReport((), ())
    for col in REQUIRED_COLUMNS:
        if col not in fields:
            raise ValueError("missing required column %r" % col)
    results = []
    errors = []
    for line, row in enumerate(reader, start=2):
        try:
            if any(row.get(col) in (None, "") for col in REQUIRED_COLUMNS):
                raise ValueError("missing required fields")
            kwargs = {}
            if row.get("c1c2") not in (None, ""):
                kwargs["c1c2"] = int(row["c1c2"])
            extra = tuple(
                (k, v)
                for k, v in row.items()
                if k not in REQUIRED_COLUMNS + ("c1c2",) and v not in (None, "")
            )
            record = FanoInvariantRecord(
                identifier=row["id"].strip(),
                degree=int(row["degree"]),
                rho=int(row["rho"]),
                b3=int(row["b3"]),
                extra=extra,
                **kwargs,
            )
            results.append(rigidity_screen(record))
        except (ValueError, NonIntegralChi, ArithmeticError) as exc:
            errors.append((line, str(exc)))
    return TableReport(tuple(results), tuple(errors))


def ingest_table_path(path: str) -> TableReport:
    with open(path, newline="", encoding="utf-8") as handle:
        return ingest_table(handle)
