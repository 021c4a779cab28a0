"""Command line surface: expression parsing, file loading, JSON envelopes."""

import json
import pathlib
import random
import subprocess

import pytest
from jsonschema import Draft7Validator, validate

from froblift.cli import (
    COMMANDS,
    DEFAULT_SCAN_PRIMES,
    PRIMES_ENV_VAR,
    PolySyntaxError,
    RunConfig,
    UnknownVariableError,
    load_chart,
    load_group,
    load_splitting,
    main,
    parse_expression,
    parse_poly,
    run_command,
)
from froblift.polycore import MultiPoly
from froblift.sampling import random_poly

PKG_ROOT = pathlib.Path(__file__).resolve().parent.parent
SCHEMA = json.loads(
    (PKG_ROOT / "src" / "froblift" / "schemas" / "report.schema.json").read_text()
)
TORIC2 = str(PKG_ROOT / "data" / "toric2.json")
REFROWS = str(PKG_ROOT / "data" / "refrows.csv")


def run_cli(capsys, argv):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def run_json(capsys, argv):
    code, out, err = run_cli(capsys, argv)
    envelope = json.loads(out)
    validate(envelope, SCHEMA)
    return code, envelope, err


@pytest.fixture
def charts(tmp_path):
    files = {
        "deform1": {"p": 2, "vars": ["x"], "images": ["x^2 + 2*x^3"], "log_rank": 1},
        "skew2": {
            "p": 2,
            "vars": ["x", "y"],
            "images": ["x^2 + 2*y", "y^2"],
            "center": ["x", "y"],
        },
        "restrict2": {
            "p": 2,
            "vars": ["x", "y"],
            "images": ["x^2 + 2*x^2*y", "y^2 + 2*x*y"],
        },
        "psi1": {"p": 2, "vars": ["y"], "images": ["y^2 + 2*y"]},
        "yquad": {"p": 2, "vars": ["y"], "images": ["y^2"]},
        "xquad": {"p": 2, "vars": ["x"], "images": ["x^2"]},
    }
    paths = {}
    for name, data in files.items():
        target = tmp_path / ("%s.json" % name)
        target.write_text(json.dumps(data), encoding="utf-8")
        paths[name] = str(target)
    return paths


@pytest.fixture
def splits(tmp_path):
    files = {
        "sym": {"p": 3, "vars": ["x", "y"], "u": "x^2*y^2"},
        "xplus": {"p": 2, "vars": ["x"], "u": "x + x^2"},
        "xonly": {"p": 2, "vars": ["x"], "u": "x"},
    }
    paths = {}
    for name, data in files.items():
        target = tmp_path / ("split_%s.json" % name)
        target.write_text(json.dumps(data), encoding="utf-8")
        paths[name] = str(target)
    swap = tmp_path / "group_swap.json"
    swap.write_text(
        json.dumps([{"x": "x", "y": "y"}, {"x": "y", "y": "x"}]), encoding="utf-8"
    )
    paths["swap_group"] = str(swap)
    return paths


class TestExpressionParser:
    def test_basic_forms(self):
        f = parse_poly("x^2 + 2*y", ("x", "y"), 4)
        assert f.terms == {(2, 0): 1, (0, 1): 2}
        g = parse_poly("x*(x-y)*(x-2*y)*y", ("x", "y"), 3)
        assert g.terms == {(3, 1): 1, (1, 3): 2}
        assert parse_poly("0", ("x",), 5).is_zero()
        assert parse_poly("7", ("x",), 5).constant_term() == 2

    def test_unary_minus_binds_above_product(self):
        f = parse_poly("-x^2", ("x",), 5)
        assert f.terms == {(2,): 4}
        g = parse_poly("-x*y", ("x", "y"), 5)
        assert g.terms == {(1, 1): 4}
        h = parse_poly("--x", ("x",), 5)
        assert h.terms == {(1,): 1}

    def test_precedence(self):
        assert parse_poly("2*x^2", ("x",), 7).terms == {(2,): 2}
        assert parse_poly("x + y*x", ("x", "y"), 7).terms == {(1, 0): 1, (1, 1): 1}
        assert parse_poly("(x + y)^2", ("x", "y"), 2).terms == {(2, 0): 1, (0, 2): 1}

    def test_whitespace(self):
        assert parse_poly(" x  +\t2 * y ", ("x", "y"), 4).terms == {(1, 0): 1, (0, 1): 2}

    def test_syntax_errors_carry_offsets(self):
        with pytest.raises(PolySyntaxError) as info:
            parse_expression("x +")
        assert info.value.offset == 3
        assert "at offset 3" in str(info.value)
        with pytest.raises(PolySyntaxError):
            parse_expression("x y")
        with pytest.raises(PolySyntaxError):
            parse_expression("(x")
        with pytest.raises(PolySyntaxError) as info:
            parse_expression("x $ y")
        assert info.value.offset == 2
        with pytest.raises(PolySyntaxError):
            parse_expression("x^y")
        with pytest.raises(PolySyntaxError):
            parse_expression("x^2^3")
        with pytest.raises(PolySyntaxError):
            parse_expression("")

    def test_unknown_variable(self):
        with pytest.raises(UnknownVariableError) as info:
            parse_poly("x + z", ("x", "y"), 5)
        assert info.value.name == "z"
        assert info.value.offset == 4

    def test_duplicate_names_rejected(self):
        with pytest.raises(ValueError):
            parse_poly("x", ("x", "x"), 5)

    @pytest.mark.parametrize("modulus", (2, 3, 9, 25))
    def test_print_parse_fixed_point(self, modulus):
        rng = random.Random(modulus)
        names = ("x", "y", "z")
        for _ in range(50):
            f = random_poly(rng, 3, modulus, max_degree=4, terms=5)
            text = f.to_text(list(names))
            assert parse_poly(text, names, modulus) == f
            assert parse_poly(text, names, modulus).to_text(list(names)) == text


class TestLoaders:
    def test_chart_json(self):
        chart = load_chart(TORIC2)
        assert chart.lifting.p == 3
        assert chart.names == ("x", "y")
        assert chart.log_rank == 2
        assert all(d.is_zero() for d in chart.lifting.deltas)

    def test_chart_toml(self, tmp_path):
        target = tmp_path / "chart.toml"
        target.write_text('p = 3\nvars = ["u"]\nimages = ["u^3"]\n', encoding="utf-8")
        chart = load_chart(str(target))
        assert chart.lifting.p == 3
        assert chart.names == ("u",)

    def test_toml_content_in_json_file(self, tmp_path):
        target = tmp_path / "chart.json"
        target.write_text('p = 2\nvars = ["x"]\nimages = ["x^2"]\n', encoding="utf-8")
        assert load_chart(str(target)).lifting.p == 2

    def test_garbage_file(self, tmp_path):
        target = tmp_path / "chart.json"
        target.write_text("][ neither", encoding="utf-8")
        with pytest.raises(ValueError):
            load_chart(str(target))

    def test_chart_errors(self, tmp_path):
        cases = [
            {"vars": ["x"], "images": ["x^2"]},
            {"p": 2, "vars": ["x"], "images": ["x^2", "x^2"]},
            {"p": 2, "vars": ["x", "x"], "images": ["x^2", "x^2"]},
            {"p": 2, "vars": ["x"], "images": ["x^3"]},
            {"p": 2, "vars": ["x"], "images": ["x^2"], "center": ["nope"]},
        ]
        for i, data in enumerate(cases):
            target = tmp_path / ("bad%d.json" % i)
            target.write_text(json.dumps(data), encoding="utf-8")
            with pytest.raises(ValueError):
                load_chart(str(target))

    def test_splitting(self, splits):
        s, names = load_splitting(splits["sym"])
        assert s.p == 3
        assert names == ("x", "y")
        assert s.u.terms == {(2, 2): 1}

    def test_group(self, splits):
        action = load_group(splits["swap_group"], 3, ("x", "y"))
        assert len(action.maps) == 2

    def test_group_maps_key(self, tmp_path):
        target = tmp_path / "group.json"
        target.write_text(json.dumps({"maps": [{"x": "x"}]}), encoding="utf-8")
        action = load_group(str(target), 3, ("x",))
        assert len(action.maps) == 1

    def test_group_wrong_variables(self, tmp_path):
        target = tmp_path / "group.json"
        target.write_text(json.dumps([{"y": "y"}]), encoding="utf-8")
        with pytest.raises(ValueError):
            load_group(str(target), 3, ("x",))


class TestSchema:
    def test_schema_is_valid_draft7(self):
        Draft7Validator.check_schema(SCHEMA)

    def test_schema_covers_every_command(self):
        enum = SCHEMA["properties"]["command"]["enum"]
        assert sorted(enum) == sorted(COMMANDS)

    def test_error_envelope_validates(self, capsys):
        code, out, err = run_cli(capsys, ["witt"])
        assert code == 1
        envelope = json.loads(out)
        validate(envelope, SCHEMA)
        assert envelope["ok"] is False
        assert envelope["error"]["kind"] == "ValueError"
        assert err


class TestWittCommand:
    def test_exhaustive_mode(self, capsys):
        code, envelope, _ = run_json(capsys, ["witt", "--p", "3"])
        assert code == 0
        result = envelope["result"]
        assert result == {
            "p": 3,
            "pairs_checked": 81,
            "add_agrees_with_ghost": True,
            "mul_agrees_with_ghost": True,
        }

    def test_scalar_mode(self, capsys):
        code, envelope, _ = run_json(
            capsys, ["witt", "--p", "3", "--a", "2,1", "--b", "1,2"]
        )
        assert code == 0
        result = envelope["result"]
        assert result["sum"] == [0, 0]
        assert result["product"] == [2, 2]
        assert result["difference"] == [1, 1]
        assert result["a_frobenius"] == [2, 1]
        assert result["a_verschiebung"] == [0, 2]
        assert result["ghost_consistent"] is True

    def test_half_pair_rejected(self, capsys):
        code, out, _ = run_cli(capsys, ["witt", "--p", "3", "--a", "1,1"])
        assert code == 1
        assert json.loads(out)["error"]["kind"] == "ValueError"

    def test_human_mode(self, capsys):
        code, out, _ = run_cli(capsys, ["witt", "--p", "2", "--human"])
        assert code == 0
        assert "pairs checked: 16" in out


class TestChartCommands:
    def test_lift_validate(self, capsys):
        code, envelope, _ = run_json(capsys, ["lift-validate", "--chart", TORIC2])
        assert code == 0
        assert envelope["result"]["valid"] is True
        assert envelope["result"]["deltas"] == ["0", "0"]

    def test_delta(self, capsys):
        code, envelope, _ = run_json(
            capsys, ["delta", "--chart", TORIC2, "--poly", "x + y"]
        )
        assert code == 0
        assert envelope["result"]["delta"] == "2*x^2*y + 2*x*y^2"

    def test_xi_det_json_and_human(self, capsys, charts):
        code, envelope, _ = run_json(capsys, ["xi-det", "--chart", TORIC2])
        assert code == 0
        assert envelope["result"]["det"] == "x^2*y^2"
        code, out, _ = run_cli(capsys, ["xi-det", "--chart", charts["deform1"], "--human"])
        assert code == 0
        assert out == "x^2 + x\n"

    def test_log_xi_det(self, capsys, charts):
        code, envelope, _ = run_json(capsys, ["log-xi-det", "--chart", charts["deform1"]])
        assert code == 0
        result = envelope["result"]
        assert result == {
            "log_rank": 1,
            "det_log": "x + 1",
            "det": "x^2 + x",
            "identity_ok": True,
        }

    def test_log_xi_det_needs_rank(self, capsys, charts):
        code, out, _ = run_cli(capsys, ["log-xi-det", "--chart", charts["restrict2"]])
        assert code == 1
        assert json.loads(out)["error"]["kind"] == "ValueError"

    def test_split_from_lift(self, capsys):
        code, envelope, _ = run_json(capsys, ["split-from-lift", "--chart", TORIC2])
        assert code == 0
        assert envelope["result"] == {"p": 3, "u": "x^2*y^2", "unital": True}

    def test_compat(self, capsys, charts):
        code, envelope, _ = run_json(
            capsys, ["compat", "--chart", TORIC2, "--ideal", "x,y"]
        )
        assert code == 0
        assert envelope["result"]["compatible"] is True
        code, envelope, _ = run_json(
            capsys, ["compat", "--chart", charts["skew2"], "--ideal", "x,y"]
        )
        assert envelope["result"]["frobenius_images_in_power"] == [False, True]
        assert envelope["result"]["compatible"] is False

    def test_blowup(self, capsys, charts):
        code, envelope, _ = run_json(
            capsys, ["blowup", "--chart", TORIC2, "--center", "x,y"]
        )
        assert code == 0
        assert envelope["result"]["extends"] is True
        # center comes from the chart file here
        code, envelope, _ = run_json(capsys, ["blowup", "--chart", charts["skew2"]])
        assert envelope["result"]["extends"] is False
        assert envelope["result"]["deltas_in_power"] == [False, True]

    def test_blowup_small_center(self, capsys):
        code, out, _ = run_cli(capsys, ["blowup", "--chart", TORIC2, "--center", "x"])
        assert code == 1
        assert json.loads(out)["error"]["kind"] == "CenterTooSmall"

    def test_product(self, capsys, charts):
        code, envelope, _ = run_json(
            capsys,
            ["product", "--chart", charts["deform1"], "--other", charts["yquad"]],
        )
        assert code == 0
        result = envelope["result"]
        assert result["vars"] == ["x", "y"]
        assert result["det"] == "x^2*y + x*y"
        assert result["det_multiplicative"] is True

    def test_product_name_collision_renames(self, capsys, charts):
        code, envelope, _ = run_json(
            capsys,
            ["product", "--chart", charts["deform1"], "--other", charts["xquad"]],
        )
        assert code == 0
        assert envelope["result"]["vars"] == ["x1", "x2"]

    def test_product_prime_mismatch(self, capsys, charts):
        code, out, _ = run_cli(
            capsys, ["product", "--chart", charts["deform1"], "--other", TORIC2]
        )
        assert code == 1
        assert json.loads(out)["error"]["kind"] == "ValueError"

    def test_restrict(self, capsys, charts):
        code, envelope, _ = run_json(
            capsys, ["restrict", "--chart", charts["restrict2"], "--var", "x"]
        )
        assert code == 0
        assert envelope["result"] == {
            "removed": "x",
            "vars": ["y"],
            "images": ["y^2"],
        }

    def test_restrict_incompatible(self, capsys, charts):
        code, out, _ = run_cli(
            capsys, ["restrict", "--chart", charts["skew2"], "--var", "x"]
        )
        assert code == 1
        assert json.loads(out)["error"]["kind"] == "NotCompatibleWithDivisor"

    def test_psi(self, capsys, charts):
        code, envelope, _ = run_json(
            capsys, ["psi", "--chart", charts["psi1"], "--map", "x^2", "--map-vars", "x"]
        )
        assert code == 0
        assert envelope["result"]["images"] == ["x^4 + 2*x^2"]

    def test_psi_default_source_names(self, capsys, charts):
        code, envelope, _ = run_json(
            capsys, ["psi", "--chart", charts["psi1"], "--map", "x1^2"]
        )
        assert code == 0
        assert envelope["result"]["source_vars"] == ["x1"]

    def test_point_lift(self, capsys):
        code, envelope, _ = run_json(
            capsys, ["point-lift", "--chart", TORIC2, "--point", "2,1"]
        )
        assert code == 0
        assert envelope["result"] == {"point": [2, 1], "lift": [8, 1], "modulus": 9}

    def test_roundtrip_single(self, capsys, charts):
        code, envelope, _ = run_json(
            capsys, ["roundtrip", "--chart", charts["deform1"], "--poly", "x + 1"]
        )
        assert code == 0
        assert envelope["result"]["ok"] is True

    def test_roundtrip_random(self, capsys):
        code, envelope, _ = run_json(
            capsys, ["roundtrip", "--chart", TORIC2, "--count", "5", "--seed", "3"]
        )
        assert code == 0
        assert envelope["result"] == {"count": 5, "seed": 3, "ok": True}

    def test_canonical_lift_check(self, capsys):
        code, envelope, _ = run_json(
            capsys, ["canonical-lift-check", "--chart", TORIC2, "--probes", "5"]
        )
        assert code == 0
        assert envelope["result"]["ok"] is True

    def test_prime_flag_mismatch(self, capsys):
        code, out, _ = run_cli(capsys, ["xi-det", "--chart", TORIC2, "--p", "5"])
        assert code == 1
        assert json.loads(out)["error"]["kind"] == "ValueError"

    def test_missing_chart_file(self, capsys, tmp_path):
        code, out, _ = run_cli(
            capsys, ["xi-det", "--chart", str(tmp_path / "absent.json")]
        )
        assert code == 1
        assert json.loads(out)["error"]["kind"] == "FileNotFoundError"

    def test_poly_syntax_error_envelope(self, capsys):
        code, out, _ = run_cli(capsys, ["delta", "--chart", TORIC2, "--poly", "x +"])
        assert code == 1
        error = json.loads(out)["error"]
        assert error["kind"] == "PolySyntaxError"
        assert "offset 3" in error["message"]

    def test_unknown_variable_envelope(self, capsys):
        code, out, _ = run_cli(
            capsys, ["compat", "--chart", TORIC2, "--ideal", "x,q"]
        )
        assert code == 1
        assert json.loads(out)["error"]["kind"] == "UnknownVariableError"


class TestSplittingCommands:
    def test_fedder(self, capsys):
        code, envelope, _ = run_json(
            capsys, ["fedder", "--p", "2", "--poly", "x*y", "--vars", "x,y"]
        )
        assert code == 0
        assert envelope["result"]["fsplit"] is True
        code, envelope, _ = run_json(
            capsys, ["fedder", "--p", "2", "--poly", "y^2 - x^3", "--vars", "x,y"]
        )
        assert envelope["result"]["fsplit"] is False
        code, envelope, _ = run_json(
            capsys, ["fedder", "--p", "2", "--poly", "x1", "--arity", "1"]
        )
        assert envelope["result"]["fsplit"] is True

    def test_fedder_needs_names(self, capsys):
        code, out, _ = run_cli(capsys, ["fedder", "--p", "2", "--poly", "x"])
        assert code == 1
        assert json.loads(out)["error"]["kind"] == "ValueError"

    def test_compat_split(self, capsys, splits):
        code, envelope, _ = run_json(
            capsys, ["compat-split", "--split", splits["xonly"], "--ideal", "x"]
        )
        assert code == 0
        assert envelope["result"]["compatible"] is True
        code, envelope, _ = run_json(
            capsys, ["compat-split", "--split", splits["xonly"], "--ideal", "x - 1"]
        )
        assert envelope["result"]["compatible"] is False
        code, envelope, _ = run_json(
            capsys, ["compat-split", "--split", splits["xplus"], "--ideal", "x - 1"]
        )
        assert envelope["result"]["compatible"] is True

    def test_divisor(self, capsys, splits):
        code, envelope, _ = run_json(
            capsys, ["divisor", "--split", splits["sym"], "--factors", "x,y"]
        )
        assert code == 0
        result = envelope["result"]
        assert result["components"] == [
            {"factor": "x", "multiplicity": 2, "coefficient": "1"},
            {"factor": "y", "multiplicity": 2, "coefficient": "1"},
        ]
        assert result["residual"] == "1"

    def test_divisor_two_roots(self, capsys, splits):
        code, envelope, _ = run_json(
            capsys, ["divisor", "--split", splits["xplus"], "--factors", "x,x + 1"]
        )
        assert code == 0
        multiplicities = [c["multiplicity"] for c in envelope["result"]["components"]]
        assert multiplicities == [1, 1]

    def test_divisor_constant_factor(self, capsys, splits):
        code, out, _ = run_cli(
            capsys, ["divisor", "--split", splits["sym"], "--factors", "1"]
        )
        assert code == 1
        assert json.loads(out)["error"]["kind"] == "ValueError"

    def test_average(self, capsys, splits):
        code, envelope, _ = run_json(
            capsys,
            ["average", "--split", splits["sym"], "--group", splits["swap_group"]],
        )
        assert code == 0
        assert envelope["result"] == {"order": 2, "u": "x^2*y^2", "unital": True}


class TestScanCommands:
    def test_p1_scan_explicit(self, capsys):
        code, envelope, _ = run_json(capsys, ["p1-scan", "--p", "2,3"])
        assert code == 0
        assert envelope["result"] == {
            "coefficients": [[2, 1], [3, 0]],
            "all_zero": False,
        }

    def test_p1_scan_default(self, capsys, monkeypatch):
        monkeypatch.delenv(PRIMES_ENV_VAR, raising=False)
        code, envelope, _ = run_json(capsys, ["p1-scan"])
        assert code == 0
        assert envelope["result"]["coefficients"] == [
            [p, 0] for p in DEFAULT_SCAN_PRIMES
        ]
        assert envelope["result"]["all_zero"] is True

    def test_p1_scan_env_var(self, capsys, monkeypatch):
        monkeypatch.setenv(PRIMES_ENV_VAR, "5,7")
        code, envelope, _ = run_json(capsys, ["p1-scan"])
        assert envelope["result"]["coefficients"] == [[5, 0], [7, 0]]
        # explicit flag still wins over the environment
        code, envelope, _ = run_json(capsys, ["p1-scan", "--p", "3"])
        assert envelope["result"]["coefficients"] == [[3, 0]]

    def test_p1_scan_jobs_match_serial(self, capsys):
        _, serial, _ = run_json(capsys, ["p1-scan", "--p", "3,5,7"])
        _, parallel, _ = run_json(capsys, ["p1-scan", "--p", "3,5,7", "--jobs", "3"])
        assert serial["result"] == parallel["result"]

    def test_fano_screen(self, capsys):
        code, envelope, _ = run_json(capsys, ["fano-screen", REFROWS])
        assert code == 0
        result = envelope["result"]
        assert result["accepted"] == 4
        assert result["rejected"] == 0
        assert result["not_rigid"] == 1
        assert result["possibly_rigid"] == 3
        by_id = {row["id"]: row for row in result["rows"]}
        assert by_id["P3"]["chi_tangent"] == 15
        assert by_id["X4"]["verdict"] == "not_rigid"

    def test_fano_screen_human_summary(self, capsys):
        code, out, _ = run_cli(capsys, ["fano-screen", REFROWS, "--human"])
        assert code == 0
        assert out.rstrip().endswith("1 NotRigid / 3 PossiblyRigid")

    def test_fano_screen_row_errors_keep_exit_zero(self, capsys, tmp_path):
        table = tmp_path / "rows.csv"
        table.write_text("id,degree,rho,b3\nP3,64,1,0\nbad,64,1,3\n", encoding="utf-8")
        code, envelope, _ = run_json(capsys, ["fano-screen", str(table)])
        assert code == 0
        result = envelope["result"]
        assert result["accepted"] == 1
        assert result["errors"][0][0] == 3

    def test_fano_screen_jobs_match_serial(self, capsys, tmp_path):
        table = tmp_path / "rows.csv"
        table.write_text(
            "id,degree,rho,b3\nP3,64,1,0\nbad,64,1,3\nQ3,54,1,0\n", encoding="utf-8"
        )
        _, serial, _ = run_json(capsys, ["fano-screen", str(table)])
        _, parallel, _ = run_json(capsys, ["fano-screen", str(table), "--jobs", "3"])
        assert serial["result"] == parallel["result"]

    def test_fano_screen_missing_column(self, capsys, tmp_path):
        table = tmp_path / "rows.csv"
        table.write_text("id,degree,rho\nP3,64,1\n", encoding="utf-8")
        code, out, _ = run_cli(capsys, ["fano-screen", str(table)])
        assert code == 1
        assert json.loads(out)["error"]["kind"] == "ValueError"

    def test_fano_screen_empty_file(self, capsys, tmp_path):
        table = tmp_path / "rows.csv"
        table.write_text("", encoding="utf-8")
        code, envelope, _ = run_json(capsys, ["fano-screen", str(table)])
        assert code == 0
        assert envelope["result"]["accepted"] == 0
        assert envelope["result"]["rejected"] == 0

    def test_bounds(self, capsys):
        code, envelope, _ = run_json(capsys, ["bounds", "--big-m", "5", "--m", "2"])
        assert code == 0
        result = envelope["result"]
        assert result["cap"] == 160
        assert result["partial_sums"] == [5, 15, 35, 75]
        assert result["strict"] is True


class TestEnvelopeMechanics:
    def test_byte_identical_repeats(self, capsys):
        _, first, _ = run_cli(capsys, ["xi-det", "--chart", TORIC2])
        _, second, _ = run_cli(capsys, ["xi-det", "--chart", TORIC2])
        assert first == second
        _, first, _ = run_cli(capsys, ["fano-screen", REFROWS])
        _, second, _ = run_cli(capsys, ["fano-screen", REFROWS])
        assert first == second

    def test_envelope_shape(self, capsys):
        _, envelope, _ = run_json(capsys, ["bounds", "--big-m", "1", "--m", "1"])
        assert list(sorted(envelope)) == ["command", "ok", "result"]
        assert envelope["command"] == "bounds"

    def test_out_file(self, capsys, tmp_path):
        target = tmp_path / "report.json"
        code, out, _ = run_cli(
            capsys, ["xi-det", "--chart", TORIC2, "--out", str(target)]
        )
        assert code == 0
        assert out == ""
        envelope = json.loads(target.read_text(encoding="utf-8"))
        validate(envelope, SCHEMA)
        assert envelope["result"]["det"] == "x^2*y^2"

    def test_human_error_has_no_stdout_envelope(self, capsys):
        code, out, err = run_cli(capsys, ["witt", "--human"])
        assert code == 1
        assert out == ""
        assert "ValueError" in err

    def test_unknown_command_exit_two(self, capsys):
        assert run_command(RunConfig("no-such-command")) == 2
        capsys.readouterr()

    def test_every_command_is_wired(self):
        from froblift.cli import _HANDLERS

        assert sorted(_HANDLERS) == sorted(COMMANDS)

    def test_console_script_installed(self):
        proc = subprocess.run(
            ["froblift", "bounds", "--big-m", "1", "--m", "2"],
            capture_output=True,
            text=True,
        )
        assert proc.returncode == 0
        envelope = json.loads(proc.stdout)
        assert envelope["ok"] is True
