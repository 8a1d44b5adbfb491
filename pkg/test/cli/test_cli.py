"""Tests for the pgdef command line."""

import io
import json
from pathlib import Path

import pytest

from pgdef import __version__, construct
from pgdef.cli import (
    EXIT_CEILING,
    EXIT_COSET_LIMIT,
    EXIT_FAILURE,
    EXIT_OK,
    EXIT_PARSE_ERROR,
    EXIT_UNCERTIFIED,
    EXIT_USAGE,
    run,
)

PRESENTATIONS = Path(__file__).resolve().parents[2] / "presentations"
B2 = str(PRESENTATIONS / "b2.gp")
A2 = str(PRESENTATIONS / "a2.gp")
B3 = str(PRESENTATIONS / "b3.gp")
DINF = str(PRESENTATIONS / "dinf.gp")
GOLDEN = Path(__file__).resolve().parent / "golden"

# golden file stem -> (argv, exit code)
GOLDEN_RUNS = {
    "solve": (["solve", "-n", "7"], EXIT_OK),
    "construct": (["construct", "-p", "2", "-n", "2", "--verify", "table"], EXIT_OK),
    "order": (["order", B3], EXIT_OK),
    "homology": (["homology", B2, "--degree", "2"], EXIT_OK),
    "certify": (["certify", B2], EXIT_OK),
    "table": (["table", "-p", "3", "--max-n", "2", "--ascii"], EXIT_OK),
    "gs_check": (["gs-check", "-d", "4", "--def", "0"], EXIT_FAILURE),
    "parse": (["parse", B2, "--format", "gap"], EXIT_OK),
}


def _json_report(capsys) -> dict:
    report = json.loads(capsys.readouterr().out)
    report.pop("timings")
    return report


class TestSolve:
    """``pgdef solve``."""

    def test_text(self, capsys):
        assert run(["solve", "-n", "7"]) == EXIT_OK
        assert capsys.readouterr().out.splitlines() == [
            "(r, s, t) = (0, 1, 2)",
            "m = 4, d = 1",
            "group: B×C²",
            "deficiency: -7",
        ]

    def test_ascii(self, capsys):
        assert run(["solve", "-n", "5", "--ascii"]) == EXIT_OK
        assert "group: A x C^2" in capsys.readouterr().out

    def test_json(self, capsys):
        assert run(["solve", "-n", "8", "--json"]) == EXIT_OK
        report = _json_report(capsys)
        assert report["schema_version"] == "1"
        assert report["tool_version"] == __version__
        assert report["command"] == "solve"
        assert report["parameters"]["n"] == 8
        assert report["results"]["deficiency"] == -8
        assert report["results"]["counts"]["s"] == 2

    def test_json_is_deterministic(self, capsys):
        run(["solve", "-n", "12", "--json"])
        first = _json_report(capsys)
        run(["solve", "-n", "12", "--json"])
        assert _json_report(capsys) == first

    def test_negative_n(self, capsys):
        assert run(["solve", "-n", "-3"]) == EXIT_USAGE
        assert "non-negative" in capsys.readouterr().err


class TestConstruct:
    """``pgdef construct``."""

    def test_text(self, capsys):
        assert run(["construct", "-p", "2", "-n", "5"]) == EXIT_OK
        assert capsys.readouterr().out.startswith("< a1, b1, a2, a3 | ")

    def test_verify(self, capsys):
        assert run(["construct", "-p", "3", "-n", "7", "--verify", "kunneth"]) == EXIT_OK
        lines = capsys.readouterr().out.splitlines()
        assert "H2: (Z/3)^7" in lines
        assert lines[-1] == "certified deficiency: -7"

    def test_verify_by_table(self, capsys):
        assert run(["construct", "-p", "2", "-n", "2", "--verify", "table"]) == EXIT_OK
        assert capsys.readouterr().out.splitlines()[-1] == "certified deficiency: -2"

    def test_gap_format(self, capsys):
        assert run(["construct", "-p", "5", "-n", "0", "--format", "gap"]) == EXIT_OK
        assert capsys.readouterr().out.strip() == 'F := FreeGroup("a");; G := F / [ F.1^5 ];;'

    def test_json(self, capsys):
        assert run(["construct", "-p", "2", "-n", "4", "--verify", "kunneth", "--json"]) == EXIT_OK
        results = _json_report(capsys)["results"]
        assert results["counts"] == [3, 7]
        assert results["name"] == "B×C"
        assert results["certificate"]["certified_value"] == -4
        assert "presentation" not in results["certificate"]

    def test_not_prime(self, capsys):
        assert run(["construct", "-p", "4", "-n", "2"]) == EXIT_USAGE
        assert "pgdef construct:" in capsys.readouterr().err


class TestOrder:
    """``pgdef order``."""

    def test_b2_file(self, capsys):
        assert run(["order", B2]) == EXIT_OK
        assert capsys.readouterr().out.strip() == "16"

    def test_felsch(self, capsys):
        assert run(["order", A2, "--strategy", "felsch"]) == EXIT_OK
        assert capsys.readouterr().out.strip() == "8"

    def test_stdin(self, capsys, monkeypatch):
        monkeypatch.setattr("sys.stdin", io.StringIO("< a | a^5 >\n"))
        assert run(["order", "-"]) == EXIT_OK
        assert capsys.readouterr().out.strip() == "5"

    def test_b3_file(self, capsys):
        assert run(["order", B3, "--strategy", "felsch"]) == EXIT_OK
        assert capsys.readouterr().out.strip() == "27"

    def test_infinite_group(self, capsys):
        assert run(["order", DINF, "--max-cosets", "200"]) == EXIT_COSET_LIMIT
        assert "coset limit 200" in capsys.readouterr().err

    def test_infinite_group_json(self, capsys):
        assert run(["order", DINF, "--max-cosets", "200", "--json"]) == EXIT_COSET_LIMIT
        report = _json_report(capsys)
        assert report["exit_code"] == EXIT_COSET_LIMIT
        assert report["results"]["error_type"] == "CosetLimitExceeded"

    def test_parse_error(self, capsys, tmp_path):
        path = tmp_path / "bad.gp"
        path.write_text("< a | b >\n", encoding="utf-8")
        assert run(["order", str(path)]) == EXIT_PARSE_ERROR
        assert "pgdef order:" in capsys.readouterr().err

    def test_missing_file(self, tmp_path):
        assert run(["order", str(tmp_path / "missing.gp")]) == EXIT_PARSE_ERROR


class TestHomology:
    """``pgdef homology``."""

    def test_h1(self, capsys):
        assert run(["homology", B2, "--degree", "1"]) == EXIT_OK
        assert capsys.readouterr().out.strip() == "Z/2 + Z/4"

    def test_h2_defaults_to_table(self, capsys):
        assert run(["homology", B2, "--degree", "2", "--json"]) == EXIT_OK
        results = _json_report(capsys)["results"]
        assert results["via"] == "table"
        assert results["text"] == "(Z/2)^2"
        assert results["group"] == {"torsion_free_rank": 0, "invariant_factors": [2, 2]}

    def test_ceiling(self, capsys):
        assert run(["homology", B2, "--degree", "2", "--ceiling", "8"]) == EXIT_CEILING
        assert "ceiling 8" in capsys.readouterr().err

    def test_ceiling_from_environment(self, monkeypatch):
        monkeypatch.setenv("PGDEF_H2_CEILING", "8")
        assert run(["homology", B2, "--degree", "2"]) == EXIT_CEILING

    def test_h2_from_presentation_rejected(self):
        assert run(["homology", B2, "--degree", "2", "--via", "presentation"]) == EXIT_USAGE

    def test_kunneth_without_pedigree(self, capsys):
        assert run(["homology", B2, "--degree", "2", "--via", "kunneth"]) == EXIT_FAILURE
        assert "construct" in capsys.readouterr().err


class TestCertify:
    """``pgdef certify``."""

    def test_b2(self, capsys):
        assert run(["certify", B2]) == EXIT_OK
        assert capsys.readouterr().out.splitlines() == [
            "lower bound: -2",
            "H1: Z/2 + Z/4",
            "H2: (Z/2)^2",
            "upper bound: -2",
            "certified deficiency: -2",
        ]

    def test_infinite_group(self, capsys):
        assert run(["certify", DINF, "--max-cosets", "200"]) == EXIT_COSET_LIMIT
        assert capsys.readouterr().out.splitlines()[-1].startswith("deficiency: unknown (coset limit 200")

    def test_uncertified(self, capsys, tmp_path):
        path = tmp_path / "z2.gp"
        path.write_text("< a | a^2, a^4 >\n", encoding="utf-8")
        assert run(["certify", str(path)]) == EXIT_UNCERTIFIED
        assert capsys.readouterr().out.splitlines()[-1] == "deficiency: unknown, in [-1, 0]"

    def test_kunneth_rejects_mismatched_pedigree(self, capsys, tmp_path):
        labelled = construct(2, 1).model_copy(update={"pedigree": construct(2, 2).pedigree})
        path = tmp_path / "labelled.json"
        path.write_text(labelled.model_dump_json(by_alias=True), encoding="utf-8")
        assert run(["certify", str(path), "--mode", "kunneth"]) == EXIT_FAILURE
        assert "pedigree" in capsys.readouterr().err

    def test_kunneth_on_constructed_file(self, capsys, tmp_path):
        path = tmp_path / "b.json"
        assert run(["construct", "-p", "3", "-n", "2", "--format", "json"]) == EXIT_OK
        path.write_text(capsys.readouterr().out, encoding="utf-8")
        assert run(["certify", str(path), "--mode", "kunneth"]) == EXIT_OK
        assert capsys.readouterr().out.splitlines()[-1] == "certified deficiency: -2"

    def test_json(self, capsys):
        assert run(["certify", A2, "--json"]) == EXIT_OK
        certificate = _json_report(capsys)["results"]["certificate"]
        assert certificate["certified_value"] == 0
        assert certificate["mode"] == "table"
        assert certificate["presentation"]["generators"] == ["a", "b"]


class TestTable:
    """``pgdef table``."""

    def test_labels(self, capsys):
        assert run(["table", "-p", "2", "--max-n", "7"]) == EXIT_OK
        lines = capsys.readouterr().out.splitlines()
        assert len(lines) == 8
        assert [line.split()[1] for line in lines] == ["C", "C²", "B", "C³", "B×C", "A×C²", "C⁴", "B×C²"]
        assert lines[7].split()[0] == "-7"

    def test_json(self, capsys):
        assert run(["table", "-p", "3", "--max-n", "2", "--ascii", "--json"]) == EXIT_OK
        rows = _json_report(capsys)["results"]["rows"]
        assert [row["name"] for row in rows] == ["C", "C^2", "B"]
        assert rows[2]["counts"]["p"] == 3


class TestGolodShafarevichCheck:
    """``pgdef gs-check``."""

    def test_consistent(self, capsys):
        assert run(["gs-check", "-d", "2", "--def=-2"]) == EXIT_OK
        assert capsys.readouterr().out.strip() == "consistent: -2 < 1"

    def test_violation(self, capsys):
        assert run(["gs-check", "-d", "4", "--def", "0"]) == EXIT_FAILURE
        assert capsys.readouterr().out.strip() == "violation: 0 >= 0"


class TestParse:
    """``pgdef parse``."""

    def test_text(self, capsys):
        assert run(["parse", B2]) == EXIT_OK
        assert capsys.readouterr().out.strip() == "< a, b | a^4, b^4, a*b*a*b, a^-1*b*a^-1*b >"

    def test_magma(self, capsys, monkeypatch):
        monkeypatch.setattr("sys.stdin", io.StringIO("< x | x^3 >"))
        assert run(["parse", "-", "--format", "magma"]) == EXIT_OK
        assert capsys.readouterr().out.strip() == "G<x> := Group<x | x^3>;"

    def test_json_counts(self, capsys):
        assert run(["parse", A2, "--json"]) == EXIT_OK
        assert _json_report(capsys)["results"]["counts"] == [2, 2]


class TestUsage:
    """Argument errors."""

    def test_unknown_flag(self, capsys):
        assert run(["solve", "-n", "3", "--frobnicate"]) == EXIT_USAGE
        assert "usage:" in capsys.readouterr().err

    def test_missing_subcommand(self):
        assert run([]) == EXIT_USAGE

    def test_bad_choice(self):
        assert run(["certify", B2, "--mode", "guess"]) == EXIT_USAGE

    def test_version(self, capsys):
        assert run(["--version"]) == EXIT_OK
        assert __version__ in capsys.readouterr().out

    def test_verbose(self, capsys):
        assert run(["solve", "-n", "1", "-vv"]) == EXIT_OK
        assert capsys.readouterr().out.splitlines()[-1] == "deficiency: -1"


class TestGoldenOutput:
    """Each subcommand's text output, byte for byte, and its repeatable JSON report."""

    @pytest.mark.parametrize("name", sorted(GOLDEN_RUNS))
    def test_text_matches_golden_file(self, name, capsys):
        argv, code = GOLDEN_RUNS[name]
        assert run(argv) == code
        assert capsys.readouterr().out == (GOLDEN / f"{name}.txt").read_text(encoding="utf-8")

    @pytest.mark.parametrize("name", sorted(GOLDEN_RUNS))
    def test_json_report_is_repeatable(self, name, capsys):
        argv, code = GOLDEN_RUNS[name]
        assert run([*argv, "--json"]) == code
        first = _json_report(capsys)
        assert run([*argv, "--json"]) == code
        assert _json_report(capsys) == first
