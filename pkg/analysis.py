"""
Exact prefix-code ratios, grid verification of the ratio bounds and
convergence tables for the families approaching the lower bound
"""
import itertools
import logging
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from closed_forms import (
    alpha,
    count_by_formula,
    pair_rho_infimum,
    rho_11c_closed,
    rho_12c_binary_closed,
    thm1_rho_upper_bound,
    thm2_rho_lower_bound,
)
from config import DEFAULT_BUDGET, DEFAULT_DECIMAL_DIGITS
from decidability import is_realizable
from enumeration import census
from errors import PreconditionError, UncoveredFamilyError, UndefinedRatioError, UnrealizableError
from models import (
    ConvergenceRow,
    ConvergenceTable,
    CountKind,
    Family,
    PointOutcome,
    RhoMethod,
    RhoResult,
    VerificationReport,
    render_ratio,
)
from words import LengthDistribution, check_alphabet


logger = logging.getLogger(__name__)

GridPoint = Tuple[int, LengthDistribution]


def format_decimal(value: Fraction, digits: int = DEFAULT_DECIMAL_DIGITS) -> str:
    """Fixed-point rendering rounded half-even at the given number of decimal places"""
    scaled = round(value * 10 ** digits)
    sign = "-" if scaled < 0 else ""
    text = str(abs(scaled))
    if digits == 0:
        return sign + text
    text = text.rjust(digits + 1, "0")
    return f"{sign}{text[:-digits]}.{text[-digits:]}"


def _closed_form_counts(n: int, lengths: LengthDistribution) -> Optional[Tuple[int, int]]:
    try:
        return (
            count_by_formula(CountKind.PR, n, lengths),
            count_by_formula(CountKind.UD, n, lengths),
        )
    except UncoveredFamilyError:
        return None


def _result(n: int, lengths: LengthDistribution, pr: int, ud: int, method: RhoMethod) -> RhoResult:
    if ud == 0:
        raise UndefinedRatioError(f"No codes with n={n}, L={lengths}; the ratio is undefined")
    return RhoResult(
        n=n, lengths=lengths.lengths, rho=Fraction(pr, ud), method=method, pr_count=pr, ud_count=ud
    )


def rho(
    n: int,
    lengths: LengthDistribution,
    budget: int = DEFAULT_BUDGET,
    workers: int = 1,
    method: Optional[RhoMethod] = None,
) -> RhoResult:
    """
    Exact ratio |PR_n(L)| / |UD_n(L)|

    Closed forms are used whenever they cover L, otherwise an exhaustive
    census runs. Passing method forces one path.

    Raises:
        UnrealizableError: If L violates the Kraft inequality
        UncoveredFamilyError: If method is ClosedForm and no formula applies
        SizeLimitError: If the census exceeds the budget
    """
    check_alphabet(n)
    if not is_realizable(n, lengths):
        raise UnrealizableError(f"L={lengths} is not realizable over n={n}")

    if method is not RhoMethod.ENUMERATION:
        counts = _closed_form_counts(n, lengths)
        if counts is not None:
            return _result(n, lengths, counts[0], counts[1], RhoMethod.CLOSED_FORM)
        if method is RhoMethod.CLOSED_FORM:
            raise UncoveredFamilyError(f"No closed form covers n={n}, L={lengths}")

    swept = census(n, lengths, budget=budget, workers=workers)
    return _result(n, lengths, swept.pr_count, swept.ud_count, RhoMethod.ENUMERATION)


def check_path_agreement(n: int, lengths: LengthDistribution, budget: int = DEFAULT_BUDGET) -> Optional[bool]:
    """Compare closed-form and enumeration results; None when no closed form applies"""
    if _closed_form_counts(n, lengths) is None:
        return None
    closed = rho(n, lengths, budget=budget, method=RhoMethod.CLOSED_FORM)
    swept = rho(n, lengths, budget=budget, method=RhoMethod.ENUMERATION)
    agree = (closed.rho, closed.pr_count, closed.ud_count) == (swept.rho, swept.pr_count, swept.ud_count)
    if not agree:
        logger.warning(f"Closed form and census disagree at n={n} L={lengths}: {closed} vs {swept}")
    return agree


def length_grid(
    n_values: Iterable[int],
    len_max: int,
    m: int = 3,
    budget: Optional[int] = None,
) -> List[GridPoint]:
    """
    Sorted realizable length distributions a_1 <= ... <= a_m <= len_max

    With a budget, points that would need a census larger than the budget are
    left out; points covered by a closed form are always kept.
    """
    grid = []
    for n in sorted(set(n_values)):
        check_alphabet(n)
        for entries in itertools.combinations_with_replacement(range(1, len_max + 1), m):
            lengths = LengthDistribution(entries)
            if not is_realizable(n, lengths):
                continue
            if budget is not None and n ** lengths.total > budget and _closed_form_counts(n, lengths) is None:
                continue
            grid.append((n, lengths))
    return grid


def describe_grid(grid: Sequence[GridPoint]) -> str:
    if not grid:
        return "empty grid"
    alphabets = sorted({n for n, _ in grid})
    longest = max(max(lengths) for _, lengths in grid)
    sizes = sorted({lengths.m for _, lengths in grid})
    return f"{len(grid)} points, n in {alphabets}, m in {sizes}, lengths <= {longest}"


def point_label(n: int, lengths: LengthDistribution) -> str:
    return f"n={n} L={lengths}"


def _rho_point(point: GridPoint, budget: int) -> RhoResult:
    n, lengths = point
    return rho(n, lengths, budget=budget)


def rho_over_grid(grid: Sequence[GridPoint], budget: int = DEFAULT_BUDGET, workers: int = 1) -> List[RhoResult]:
    """Ratios for every grid point, in grid order; points run in parallel when workers > 1"""
    if workers > 1 and len(grid) > 1:
        with ProcessPoolExecutor(max_workers=workers) as executor:
            return list(executor.map(_rho_point, grid, itertools.repeat(budget)))
    return [_rho_point(point, budget) for point in grid]


def build_report(claim: str, grid: str, points: List[PointOutcome]) -> VerificationReport:
    """Wrap per-point outcomes and log every failing point"""
    report = VerificationReport(claim=claim, grid=grid, points=points)
    for failure in report.failures:
        logger.warning(f"{claim} fails at {failure.point}: {failure.values}")
    logger.info(f"{claim}: {'pass' if report.passed else 'FAIL'} over {len(points)} points")
    return report


def verify_theorem4(grid: Sequence[GridPoint], budget: int = DEFAULT_BUDGET, workers: int = 1) -> VerificationReport:
    """Check rho_{n,L} > alpha_n exactly at every grid point"""
    points = []
    for (n, lengths), result in zip(grid, rho_over_grid(grid, budget, workers)):
        bound = alpha(n)
        points.append(
            PointOutcome(
                point=point_label(n, lengths),
                values={
                    "rho": render_ratio(result.rho),
                    "alpha": render_ratio(bound),
                    "method": result.method.value,
                },
                passed=result.rho > bound,
            )
        )
    return build_report("theorem4", describe_grid(grid), points)


def verify_bounds(
    grid: Sequence[GridPoint],
    budget: int = DEFAULT_BUDGET,
    workers: int = 1,
    lower: bool = True,
    upper: bool = True,
    claim: str = "bounds",
) -> VerificationReport:
    """
    Sandwich every ratio between the general lower bound and the pairwise upper bounds

    Two-element points are also checked against the (n-1)/n infimum.
    """
    points = []
    for (n, lengths), result in zip(grid, rho_over_grid(grid, budget, workers)):
        values: Dict[str, str] = {"rho": render_ratio(result.rho)}
        passed = True
        if lower:
            floor = thm2_rho_lower_bound(n, lengths.m)
            values["lower"] = render_ratio(floor)
            passed = passed and floor <= result.rho
            if lengths.m == 2:
                infimum = pair_rho_infimum(n)
                values["pair_infimum"] = render_ratio(infimum)
                passed = passed and infimum <= result.rho
        if upper and not lengths.is_constant:
            for a, b in itertools.combinations(lengths.values, 2):
                ceiling = thm1_rho_upper_bound(n, lengths, a, b)
                values[f"upper({a},{b})"] = render_ratio(ceiling)
                passed = passed and result.rho <= ceiling
        points.append(PointOutcome(point=point_label(n, lengths), values=values, passed=passed))
    return build_report(claim, describe_grid(grid), points)


def _in_extremal_family(n: int, lengths: LengthDistribution) -> bool:
    head = lengths.sorted_lengths[:2]
    return head == ((1, 1) if n > 2 else (1, 2))


def corollary1_evidence(grid: Sequence[GridPoint], budget: int = DEFAULT_BUDGET, workers: int = 1) -> VerificationReport:
    """
    Per alphabet, find the smallest ratio on the grid and check it sits in the
    extremal family ((1,1,c) for n > 2, (1,2,c) for n = 2) above alpha_n
    """
    smallest: Dict[int, Tuple[Fraction, LengthDistribution]] = {}
    for (n, lengths), result in zip(grid, rho_over_grid(grid, budget, workers)):
        if n not in smallest or result.rho < smallest[n][0]:
            smallest[n] = (result.rho, lengths)
    points = []
    for n in sorted(smallest):
        value, lengths = smallest[n]
        points.append(
            PointOutcome(
                point=f"n={n}",
                values={
                    "min_rho": render_ratio(value),
                    "argmin": str(lengths),
                    "alpha": render_ratio(alpha(n)),
                },
                passed=_in_extremal_family(n, lengths) and value > alpha(n),
            )
        )
    return build_report("corollary1", describe_grid(grid), points)


def convergence_table(
    family: Family,
    n: int,
    c_max: int,
    digits: int = DEFAULT_DECIMAL_DIGITS,
) -> ConvergenceTable:
    """
    Ratios along (1,1,c) (n > 2, c >= 1) or binary (1,2,c) (c >= 2) against their limit alpha_n

    Raises:
        PreconditionError: If the family and alphabet do not match or c_max is too small
    """
    family = Family(family)
    check_alphabet(n)
    if family is Family.FAMILY_11C:
        if n == 2:
            raise PreconditionError("The (1,1,c) family needs n > 2")
        c_min = 1
        ratio = lambda c: rho_11c_closed(n, c)
    else:
        if n != 2:
            raise PreconditionError("The (1,2,c) family is only resolved for n = 2")
        c_min = 2
        ratio = rho_12c_binary_closed
    if c_max < c_min:
        raise PreconditionError(f"c_max must be at least {c_min} for family {family.value}")

    limit = alpha(n)
    rows = []
    for c in range(c_min, c_max + 1):
        value = ratio(c)
        gap = abs(value - limit)
        rows.append(
            ConvergenceRow(
                c=c,
                rho=value,
                rho_decimal=format_decimal(value, digits),
                gap=gap,
                gap_decimal=format_decimal(gap, digits),
            )
        )
    decreasing = all(earlier.gap > later.gap for earlier, later in zip(rows, rows[1:]))
    if not decreasing:
        logger.warning(f"Gap to the limit is not strictly decreasing for family {family.value}, n={n}")
    return ConvergenceTable(
        family=family, n=n, limit=limit, digits=digits, rows=rows, strictly_decreasing=decreasing
    )
