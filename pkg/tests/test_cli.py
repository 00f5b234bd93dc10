"""
Unit tests for the udcodes command-line interface
"""
import json

import pytest
from click.testing import CliRunner

from cli import EXIT_BUDGET, EXIT_FAILURE, EXIT_UNCOVERED, EXIT_USAGE, cli, exit_code_for
from errors import (
    ConfigurationError,
    PreconditionError,
    SizeLimitError,
    UncoveredFamilyError,
    UndefinedRatioError,
    UnrealizableError,
    WordFormatError,
)
from models import PointOutcome, VerificationReport


def invoke(*args):
    runner = CliRunner()
    return runner.invoke(cli, ["--threads", "1", *args])


def document(result):
    return json.loads(result.stdout)


class TestExitCodes:
    """Test cases for exit_code_for"""

    @pytest.mark.parametrize(
        "error, code",
        [
            (SizeLimitError("x"), EXIT_BUDGET),
            (UncoveredFamilyError("x"), EXIT_UNCOVERED),
            (WordFormatError("x"), EXIT_USAGE),
            (PreconditionError("x"), EXIT_USAGE),
            (UnrealizableError("x"), EXIT_USAGE),
            (UndefinedRatioError("x"), EXIT_USAGE),
            (ConfigurationError("x"), EXIT_FAILURE),
        ],
    )
    def test_mapping(self, error, code):
        """Test each error family maps to its exit code"""
        assert exit_code_for(error) == code


class TestDecideCommand:
    """Test cases for udcodes decide"""

    def test_code(self):
        """Test (1, 00, 1000) is a code"""
        result = invoke("decide", "-n", "2", "-w", "1,00,1000")
        assert result.exit_code == 0
        data = document(result)
        assert data["command"] == "decide"
        assert data["status"] == "ok"
        assert data["results"] == {"is_code": True, "termination": "RepeatedDanglingSet"}

    def test_trace(self):
        """Test the trace is included on request"""
        result = invoke("decide", "-n", "2", "-w", "1,00,1000", "--trace")
        assert document(result)["results"]["trace"] == [["1", "00", "1000"], ["000"], ["0"], ["0"]]

    def test_witness(self):
        """Test a non-code comes with an ambiguous word"""
        result = invoke("decide", "-n", "2", "-w", "1,00,100", "--witness")
        assert result.exit_code == 0
        results = document(result)["results"]
        assert results["is_code"] is False
        assert results["termination"] == "IntersectionWithD0"
        assert results["witness"] == {"word": "100", "factorization_a": [0, 1], "factorization_b": [2]}

    def test_witness_bound_too_short(self):
        """Test no witness below the given length bound"""
        result = invoke("decide", "-n", "2", "-w", "1,00,100", "--witness", "--max-len", "2")
        assert document(result)["results"]["witness"] is None

    def test_bad_digit(self):
        """Test a digit outside the alphabet exits with the usage code"""
        result = invoke("decide", "-n", "2", "-w", "1,2")
        assert result.exit_code == EXIT_USAGE
        data = document(result)
        assert data["status"] == "error"
        assert data["results"]["error_type"] == "WordFormatError"
        assert "Error:" in result.stderr

    def test_missing_words(self):
        """Test click rejects a missing option"""
        result = invoke("decide", "-n", "2")
        assert result.exit_code == 2


class TestCountCommand:
    """Test cases for udcodes count"""

    def test_prefix_formula(self):
        """Test |PR_2((1,2,6))| = 64"""
        result = invoke("count", "pr", "-n", "2", "-L", "1,2,6")
        assert result.exit_code == 0
        assert document(result)["results"] == {"formula": "64", "count": "64"}

    def test_both_methods(self):
        """Test closed form and census agree for (1,1,2) over three letters"""
        result = invoke("count", "ud", "-n", "3", "-L", "1,1,2", "--method", "both")
        assert result.exit_code == 0
        data = document(result)
        assert data["status"] == "pass"
        assert data["results"]["formula"] == "30"
        assert data["results"]["enumerate"] == "30"
        assert data["results"]["agreement"] is True
        assert data["inputs"]["lengths"] == [1, 1, 2]

    def test_pair_formula(self):
        """Test |UD_2((2,3))| = 2^5 - 2"""
        result = invoke("count", "ud", "-n", "2", "-L", "2,3")
        assert document(result)["results"]["count"] == "30"

    def test_uncovered(self):
        """Test a family without a closed form exits 4"""
        result = invoke("count", "ud", "-n", "2", "-L", "1,3,3")
        assert result.exit_code == EXIT_UNCOVERED
        assert document(result)["inputs"]["lengths"] == [1, 3, 3]

    def test_budget(self):
        """Test a census beyond the budget exits 3"""
        result = CliRunner().invoke(cli, ["--budget", "10", "--threads", "1", "count", "ud", "-n", "2", "-L", "1,3,3", "--method", "enumerate"])
        assert result.exit_code == EXIT_BUDGET

    def test_bad_lengths(self):
        """Test an unparsable distribution is a usage error"""
        result = invoke("count", "ud", "-n", "2", "-L", "1,x")
        assert result.exit_code == 2


class TestRhoCommand:
    """Test cases for udcodes rho"""

    def test_closed_form(self):
        """Test rho for binary (1,2,4)"""
        result = invoke("rho", "-n", "2", "-L", "1,2,4")
        assert result.exit_code == 0
        results = document(result)["results"]
        assert results["rho"] == "8/27"
        assert results["method"] == "ClosedForm"
        assert results["alpha"] == "1/6"
        assert results["rho_decimal"] == "0.296296296296"

    def test_cross_check(self):
        """Test both paths agree for (1,2,2)"""
        result = invoke("rho", "-n", "2", "-L", "1,2,2", "--cross-check")
        data = document(result)
        assert data["status"] == "pass"
        assert data["results"]["path_agreement"] is True

    def test_census(self):
        """Test an uncovered point falls back to the census"""
        result = invoke("rho", "-n", "2", "-L", "1,3,3")
        results = document(result)["results"]
        assert results["rho"] == "3/8"
        assert results["method"] == "Enumeration"

    def test_forced_closed_form(self):
        """Test forcing a missing closed form exits 4"""
        result = invoke("rho", "-n", "2", "-L", "1,3,3", "--method", "ClosedForm")
        assert result.exit_code == EXIT_UNCOVERED

    def test_unrealizable(self):
        """Test an unrealizable L is a usage error"""
        result = invoke("rho", "-n", "2", "-L", "1,1,2")
        assert result.exit_code == EXIT_USAGE
        assert document(result)["results"]["error_type"] == "UnrealizableError"


class TestVerifyCommand:
    """Test cases for udcodes verify"""

    def test_pass(self):
        """Test the lower bound holds on a small grid"""
        result = invoke("verify", "theorem4", "--n-max", "3", "--len-max", "3")
        assert result.exit_code == 0
        data = document(result)
        assert data["status"] == "pass"
        assert data["results"]["claim"] == "theorem4"
        assert data["results"]["passed"] is True

    def test_failure_exits_one(self, mocker):
        """Test a failing claim exits 1 and lists the point"""
        failing = VerificationReport(
            claim="theorem4",
            grid="1 point",
            points=[PointOutcome(point="n=2 L=(1,2,2)", values={"rho": "1/2"}, passed=False)],
        )
        mocker.patch("commands.run_claim", return_value=failing)
        result = invoke("verify", "theorem4")
        assert result.exit_code == EXIT_FAILURE
        data = document(result)
        assert data["status"] == "fail"
        assert data["results"]["points"][0]["point"] == "n=2 L=(1,2,2)"

    def test_unknown_claim(self):
        """Test an unknown claim is a usage error"""
        result = invoke("verify", "theorem9")
        assert result.exit_code == EXIT_USAGE

    def test_claims_listing(self):
        """Test claims prints one name per line"""
        result = invoke("claims")
        assert result.exit_code == 0
        names = result.stdout.split()
        assert len(names) == 18
        assert "theorem4" in names and "decider" in names


class TestTableCommand:
    """Test cases for udcodes table"""

    def test_csv(self):
        """Test the binary (1,2,c) table as CSV"""
        result = invoke("table", "--family", "12c", "-n", "2", "--c-max", "30", "--format", "csv", "--digits", "6")
        assert result.exit_code == 0
        lines = result.stdout.strip().splitlines()
        assert lines[0] == "c,rho,rho_decimal,gap_decimal"
        assert len(lines) == 30
        assert lines[1] == "2,1/2,0.500000,0.333333"
        assert lines[-1].startswith("30,")

    def test_json(self):
        """Test the (1,1,c) table as JSON"""
        result = invoke("table", "--family", "11c", "-n", "3", "--c-max", "10")
        assert result.exit_code == 0
        data = document(result)
        assert data["status"] == "pass"
        assert data["results"]["limit"] == "1/3"
        assert len(data["results"]["rows"]) == 10
        assert data["results"]["strictly_decreasing"] is True

    @pytest.mark.parametrize("output_format", ["json", "csv"])
    def test_family_alphabet_mismatch(self, output_format):
        """Test (1,1,c) over two letters is a usage error in both formats"""
        result = invoke("table", "--family", "11c", "-n", "2", "--c-max", "5", "--format", output_format)
        assert result.exit_code == EXIT_USAGE


class TestGroupOptions:
    """Test cases for global options"""

    def test_version(self):
        """Test --version"""
        result = CliRunner().invoke(cli, ["--version"])
        assert result.exit_code == 0
        assert "0.1.0" in result.output

    def test_help_lists_commands(self):
        """Test every command appears in the help text"""
        result = CliRunner().invoke(cli, ["--help"])
        for command in ("decide", "count", "rho", "verify", "claims", "table"):
            assert command in result.output
