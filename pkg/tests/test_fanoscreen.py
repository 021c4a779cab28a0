"""Numeric screens for Fano threefolds and the CSV ingestion around them."""

import pytest

from froblift.fanoscreen import (
    NOT_RIGID,
    POSSIBLY_RIGID,
    BoundsReport,
    ChernData,
    FanoInvariantRecord,
    NonIntegralChi,
    TableReport,
    boundedness_bounds,
    chi_structure_sheaf,
    chi_tangent,
    euler_c3,
    hrr_chi,
    ingest_table,
    ingest_table_path,
    rigidity_screen,
)

# (identifier, degree, rho, b3, expected chi of the tangent sheaf)
REFERENCE_ROWS = (
    ("P3", 64, 1, 0, 15),
    ("Q3", 54, 1, 0, 10),
    ("P1xP2", 54, 2, 0, 11),
    ("X4", 4, 1, 60, -45),
)


def record(identifier, degree, rho, b3, **kw):
    return FanoInvariantRecord(identifier, degree, rho, b3, **kw)


class TestChiFormulas:
    @pytest.mark.parametrize("identifier,degree,rho,b3,expected", REFERENCE_ROWS)
    def test_reference_tangent_values(self, identifier, degree, rho, b3, expected):
        assert chi_tangent(record(identifier, degree, rho, b3)) == expected

    def test_structure_sheaf(self):
        assert chi_structure_sheaf(record("P3", 64, 1, 0)) == 1
        assert chi_structure_sheaf(record("weird", 64, 1, 0, c1c2=48)) == 2

    def test_euler_number(self):
        assert euler_c3(record("P3", 64, 1, 0)) == 4
        assert euler_c3(record("X4", 4, 1, 60)) == -56
        assert euler_c3(record("artificial", 64, 1, 4)) == 0

    def test_parity_guards(self):
        with pytest.raises(NonIntegralChi):
            record("odd-b3", 64, 1, 3)
        with pytest.raises(NonIntegralChi):
            record("odd-degree", 63, 1, 0)
        with pytest.raises(NonIntegralChi):
            record("bad-c1c2", 64, 1, 0, c1c2=23)

    def test_range_guards(self):
        with pytest.raises(ValueError):
            record("flat", 0, 1, 0)
        with pytest.raises(ValueError):
            record("rankless", 64, 0, 0)
        with pytest.raises(ValueError):
            record("negative", 64, 1, -2)


class TestHrr:
    def test_structure_sheaf_normalization(self):
        assert hrr_chi(ChernData(rank=1, c1c2_tangent=24)) == 1

    def test_tangent_of_p3(self):
        # E = T on P3: c1(T) = 4H, c2(T) = 6H^2, c3(T) = 4H^3, H^3 = 1
        data = ChernData(
            rank=3,
            c1c2_tangent=24,
            c1e_c1t_sq=64,
            c1e_c2t=24,
            c1t_c1e_sq=64,
            c1t_c2e=24,
            c1e_cube=64,
            c1e_c2e=24,
            c3e=4,
        )
        assert hrr_chi(data) == 15

    def test_rank_scales_constant_part(self):
        assert hrr_chi(ChernData(rank=2, c1c2_tangent=24)) == 2
        assert hrr_chi(ChernData(rank=1, c1c2_tangent=48)) == 2

    def test_non_integral_raises(self):
        with pytest.raises(NonIntegralChi):
            hrr_chi(ChernData(rank=1, c1c2_tangent=23))
        with pytest.raises(NonIntegralChi):
            hrr_chi(ChernData(rank=1, c1c2_tangent=24, c3e=1))


class TestRigidityScreen:
    def test_reference_verdicts(self):
        verdicts = {}
        for identifier, degree, rho, b3, _ in REFERENCE_ROWS:
            result = rigidity_screen(record(identifier, degree, rho, b3))
            verdicts[identifier] = result.verdict
        assert verdicts == {
            "P3": POSSIBLY_RIGID,
            "Q3": POSSIBLY_RIGID,
            "P1xP2": POSSIBLY_RIGID,
            "X4": NOT_RIGID,
        }

    def test_result_carries_all_numbers(self):
        result = rigidity_screen(record("X4", 4, 1, 60))
        assert result.chi_tangent == -45
        assert result.c3 == -56
        assert result.chi_o == 1
        assert result.verdict == NOT_RIGID

    def test_zero_chi_is_undecided(self):
        # chi(T) = 0 must not be ruled out
        result = rigidity_screen(record("edge", 36, 1, 2))
        assert result.chi_tangent == 0
        assert result.verdict == POSSIBLY_RIGID


class TestBounds:
    def test_reference_chain(self):
        report = boundedness_bounds(3, 2)
        assert report.cap == 96
        assert report.partial_sums == (3, 9, 21, 45)
        assert report.strict
        assert not report.equality

    def test_equality_at_m_one(self):
        report = boundedness_bounds(1, 1)
        assert report.cap == 4
        assert report.partial_sums == (1, 2, 3, 4)
        assert not report.strict
        assert report.equality

    def test_strict_for_all_m_at_least_two(self):
        for big_m in range(1, 6):
            for m in range(2, 8):
                report = boundedness_bounds(big_m, m)
                assert report.strict, (big_m, m)
                previous = 0
                for s in report.partial_sums:
                    assert s > previous
                    previous = s

    def test_guards(self):
        with pytest.raises(ValueError):
            boundedness_bounds(0, 1)
        with pytest.raises(ValueError):
            boundedness_bounds(1, 0)


CSV_HEADER = "id,degree,rho,b3\n"


class TestIngest:
    def test_reference_table(self):
        lines = [CSV_HEADER] + [
            "%s,%d,%d,%d\n" % row[:4] for row in REFERENCE_ROWS
        ]
        report = ingest_table(lines)
        assert report.accepted == 4
        assert report.rejected == 0
        verdicts = [r.verdict for r in report.results]
        assert verdicts.count(NOT_RIGID) == 1
        assert verdicts.count(POSSIBLY_RIGID) == 3

    def test_empty_file(self):
        assert ingest_table([]) == TableReport((), ())
        assert ingest_table(["\n"]) == TableReport((), ())
        assert ingest_table(["", "\n"]) == TableReport((), ())

    def test_bad_rows_reported_with_line_numbers(self):
        lines = [
            CSV_HEADER,
            "P3,64,1,0\n",
            "bad,64,1,3\n",
            "worse,sixty,1,0\n",
            "Q3,54,1,0\n",
        ]
        report = ingest_table(lines)
        assert report.accepted == 2
        assert [line for line, _ in report.errors] == [3, 4]
        assert "odd b3" in report.errors[0][1]

    def test_missing_fields_rejected_rowwise(self):
        report = ingest_table([CSV_HEADER, "P3,,1,0\n"])
        assert report.accepted == 0
        assert report.errors[0][0] == 2

    def test_missing_column_is_hard_error(self):
        with pytest.raises(ValueError):
            ingest_table(["id,degree,rho\n", "P3,64,1\n"])

    def test_c1c2_column_honored(self):
        lines = ["id,degree,rho,b3,c1c2\n", "twisted,64,1,0,48\n", "broken,64,1,0,25\n"]
        report = ingest_table(lines)
        assert report.accepted == 1
        assert report.results[0].chi_o == 2
        assert report.rejected == 1

    def test_extra_columns_pass_through(self):
        lines = ["id,degree,rho,b3,source\n", "P3,64,1,0,classic\n"]
        report = ingest_table(lines)
        assert report.results[0].record.extra == (("source", "classic"),)

    def test_path_helper(self, tmp_path):
        target = tmp_path / "rows.csv"
        target.write_text(CSV_HEADER + "P3,64,1,0\n", encoding="utf-8")
        report = ingest_table_path(str(target))
        assert report.accepted == 1

    def test_shipped_reference_table(self):
        import pathlib

        here = pathlib.Path(__file__).resolve().parent.parent
        report = ingest_table_path(str(here / "data" / "refrows.csv"))
        assert report.accepted == 4
        assert report.rejected == 0
