"""
Unit tests for exact ratios, grid verification and convergence tables
"""
from fractions import Fraction

import pytest

from analysis import (
    check_path_agreement,
    convergence_table,
    corollary1_evidence,
    describe_grid,
    format_decimal,
    length_grid,
    point_label,
    rho,
    rho_over_grid,
    verify_bounds,
    verify_theorem4,
)
from config import DEFAULT_BUDGET
from errors import (
    PreconditionError,
    SizeLimitError,
    UncoveredFamilyError,
    UndefinedRatioError,
    UnrealizableError,
    WordFormatError,
)
from models import CensusResult, Family, RhoMethod
from words import LengthDistribution


L = LengthDistribution.of


class TestFormatDecimal:
    """Test cases for format_decimal"""

    @pytest.mark.parametrize(
        "value, digits, expected",
        [
            (Fraction(1, 3), 4, "0.3333"),
            (Fraction(1, 8), 2, "0.12"),
            (Fraction(3, 8), 2, "0.38"),
            (Fraction(-1, 3), 3, "-0.333"),
            (Fraction(5, 2), 0, "2"),
            (Fraction(1, 1000), 2, "0.00"),
            (Fraction(7), 2, "7.00"),
        ],
    )
    def test_half_even(self, value, digits, expected):
        """Test fixed-point output with ties to even"""
        assert format_decimal(value, digits) == expected


class TestRho:
    """Test cases for rho"""

    def test_closed_form_path(self):
        """Test n=3, L=(1,1,2) comes from the closed forms"""
        result = rho(3, L(1, 1, 2))
        assert result.rho == Fraction(3, 5)
        assert result.method == RhoMethod.CLOSED_FORM
        assert (result.pr_count, result.ud_count) == (18, 30)

    def test_forced_enumeration(self):
        """Test the census path gives the same ratio"""
        result = rho(2, L(1, 2, 2), method=RhoMethod.ENUMERATION)
        assert result.rho == Fraction(1, 2)
        assert result.method == RhoMethod.ENUMERATION

    @pytest.mark.parametrize(
        "n, lengths, expected",
        [(2, (1, 2), Fraction(2, 3)), (2, (1, 2, 4), Fraction(8, 27)), (2, (1, 2, 5), Fraction(16, 61)), (3, (1, 1, 4), Fraction(27, 65))],
    )
    def test_examples(self, n, lengths, expected):
        """Test exact ratios of covered families"""
        assert rho(n, L(*lengths)).rho == expected

    def test_uncovered_falls_back_to_census(self):
        """Test n=2, L=(1,3,3) is swept"""
        result = rho(2, L(1, 3, 3))
        assert result.method == RhoMethod.ENUMERATION
        assert result.rho == Fraction(3, 8)

    def test_forced_closed_form_uncovered(self):
        """Test forcing the closed form where none exists"""
        with pytest.raises(UncoveredFamilyError):
            rho(2, L(1, 3, 3), method=RhoMethod.CLOSED_FORM)

    def test_census_budget(self):
        """Test the census path respects the budget"""
        with pytest.raises(SizeLimitError):
            rho(2, L(1, 3, 3), budget=10)

    def test_unrealizable(self):
        """Test the Kraft inequality is checked first"""
        with pytest.raises(UnrealizableError):
            rho(2, L(1, 1, 2))

    def test_no_codes(self, mocker):
        """Test a census without codes leaves the ratio undefined"""
        mocker.patch(
            "analysis.census",
            return_value=CensusResult(n=2, lengths=(1, 3, 3), total_tuples=128, ud_count=0, pr_count=0),
        )
        with pytest.raises(UndefinedRatioError):
            rho(2, L(1, 3, 3))


class TestPathAgreement:
    """Test cases for check_path_agreement"""

    @pytest.mark.parametrize("n, lengths", [(2, (1, 2, 2)), (3, (1, 1, 2)), (2, (2, 3)), (2, (2, 2, 2))])
    def test_agree(self, n, lengths):
        """Test both paths give identical counts"""
        assert check_path_agreement(n, L(*lengths)) is True

    def test_uncovered(self):
        """Test None when only the census applies"""
        assert check_path_agreement(2, L(1, 3, 3)) is None


class TestGrid:
    """Test cases for length_grid and its helpers"""

    def test_binary_small(self):
        """Test only realizable sorted triples are kept"""
        assert length_grid([2], 2) == [(2, L(1, 2, 2)), (2, L(2, 2, 2))]

    def test_budget_keeps_covered_points(self):
        """Test large uncovered points are dropped, covered ones stay"""
        grid = length_grid([2], 4, budget=2 ** 6)
        assert (2, L(1, 2, 4)) in grid
        assert (2, L(1, 3, 3)) not in grid
        assert (2, L(1, 3, 3)) in length_grid([2], 4)

    def test_pairs(self):
        """Test m = 2"""
        grid = length_grid([3], 2, m=2)
        assert grid == [(3, L(1, 1)), (3, L(1, 2)), (3, L(2, 2))]

    def test_invalid_alphabet(self):
        """Test n < 2 is refused"""
        with pytest.raises(WordFormatError):
            length_grid([1], 3)

    def test_labels(self):
        """Test point labels and the grid description"""
        assert point_label(2, L(1, 2, 3)) == "n=2 L=(1,2,3)"
        assert describe_grid([]) == "empty grid"
        assert describe_grid(length_grid([2], 2)) == "2 points, n in [2], m in [3], lengths <= 2"

    def test_parallel_keeps_order(self):
        """Test worker processes return results in grid order"""
        grid = length_grid([2, 3], 3, budget=2 ** 10)
        serial = rho_over_grid(grid, budget=2 ** 10, workers=1)
        pooled = rho_over_grid(grid, budget=2 ** 10, workers=2)
        assert [r.rho for r in pooled] == [r.rho for r in serial]
        assert [r.lengths for r in pooled] == [lengths.lengths for _, lengths in grid]


class TestVerification:
    """Test cases for the grid verifiers"""

    def setup_method(self):
        """Setup a small mixed grid"""
        self.grid = length_grid([2, 3], 3, budget=2 ** 12)

    def test_lower_bound_alpha(self):
        """Test rho > alpha_n at every point"""
        report = verify_theorem4(self.grid, budget=2 ** 12)
        assert report.passed
        assert len(report.points) == len(self.grid)
        assert report.points[0].values["alpha"] == "1/6"

    def test_bounds(self):
        """Test every ratio lies between the general lower bound and the pairwise upper bounds"""
        report = verify_bounds(self.grid, budget=2 ** 12)
        assert report.passed
        point = next(p for p in report.points if p.point == "n=2 L=(1,2,3)")
        assert point.values["upper(1,2)"] == "4/5"
        assert point.values["lower"] == "1/128"

    def test_pair_bounds(self):
        """Test two-element ratios stay above (n-1)/n"""
        report = verify_bounds(length_grid([2, 3, 4], 4, m=2), claim="theorem3")
        assert report.passed
        assert report.claim == "theorem3"
        assert all("pair_infimum" in p.values for p in report.points)

    def test_failure_is_reported(self, mocker):
        """Test a failing point shows up in failures"""
        mocker.patch("analysis.alpha", return_value=Fraction(1))
        report = verify_theorem4([(2, L(1, 2, 2))])
        assert not report.passed
        assert [p.point for p in report.failures] == ["n=2 L=(1,2,2)"]

    def test_extremal_family_structure(self):
        """Test one point per alphabet with its smallest ratio"""
        report = corollary1_evidence(self.grid, budget=2 ** 12)
        assert [p.point for p in report.points] == ["n=2", "n=3"]
        for outcome in report.points:
            assert set(outcome.values) == {"min_rho", "argmin", "alpha"}
            assert Fraction(outcome.values["min_rho"]) > Fraction(outcome.values["alpha"])

    @pytest.mark.slow
    def test_lower_bound_alpha_large_grid(self):
        """Test rho > alpha_n for n in 2..4 and lengths up to 5"""
        grid = length_grid(range(2, 5), 5, budget=DEFAULT_BUDGET)
        assert (3, L(2, 4, 5)) in grid and (4, L(2, 3, 4)) in grid
        assert verify_theorem4(grid, workers=2).passed


class TestConvergenceTable:
    """Test cases for convergence_table"""

    def test_binary_family(self):
        """Test binary (1,2,c) from c = 2 to 30"""
        table = convergence_table(Family.FAMILY_12C_BINARY, 2, 30)
        assert len(table.rows) == 29
        assert table.rows[0].c == 2
        assert table.rows[0].rho == Fraction(1, 2)
        assert table.limit == Fraction(1, 6)
        assert table.strictly_decreasing
        assert table.rows[-1].gap < Fraction(3, 10 ** 4)
        row_20 = next(r for r in table.rows if r.c == 20)
        assert row_20.gap < Fraction(3, 10 ** 3)

    def test_one_one_c_family(self):
        """Test (1,1,c) over three letters"""
        table = convergence_table(Family.FAMILY_11C, 3, 30, digits=6)
        assert table.rows[0].c == 1
        assert table.rows[0].rho_decimal == "1.000000"
        assert table.limit == Fraction(1, 3)
        assert table.strictly_decreasing
        assert table.rows[9].gap < Fraction(6, 10 ** 3)
        assert table.rows[-1].gap < Fraction(1, 10 ** 4)

    def test_decimal_columns(self):
        """Test decimals are rendered at the requested precision"""
        table = convergence_table(Family.FAMILY_12C_BINARY, 2, 4, digits=4)
        assert [r.rho_decimal for r in table.rows] == ["0.5000", "0.4000", "0.2963"]
        assert table.rows[0].gap_decimal == "0.3333"

    @pytest.mark.parametrize(
        "family, n, c_max",
        [(Family.FAMILY_11C, 2, 5), (Family.FAMILY_12C_BINARY, 3, 5), (Family.FAMILY_12C_BINARY, 2, 1)],
    )
    def test_preconditions(self, family, n, c_max):
        """Test family and alphabet must match and c_max must reach the first row"""
        with pytest.raises(PreconditionError):
            convergence_table(family, n, c_max)
