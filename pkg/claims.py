"""
Named claims that `verify` can check over a finite grid

Every claim takes the same ClaimSettings and returns a VerificationReport.
Grids are built from n_max (alphabets 2..n_max), len_max (largest codeword
length, or largest total length for the claims that sweep whole code
sequences) and c_max (largest c for the (1,2,c) and (1,1,c) families).
"""
import itertools
import logging
from collections import defaultdict
from dataclasses import dataclass
from typing import Callable, Dict, List, Tuple

from analysis import (
    build_report,
    convergence_table,
    corollary1_evidence,
    describe_grid,
    length_grid,
    point_label,
    verify_bounds,
    verify_theorem4,
)
from closed_forms import (
    j_count_100,
    j_count_101,
    nud_count_closed,
    pr_count_pair,
    pr_count_triple,
    ud_count_11c,
    ud_count_12c_binary,
    ud_count_pair,
)
from config import DEFAULT_BUDGET
from decidability import is_code, is_code_packed, is_realizable, naive_double_factorization, oracle_bound, reduce_sequence
from enumeration import census, enumerate_code_sequences, j100_words, j101_words, k_tilde, nud_decomposition_report
from errors import PreconditionError
from models import Family, PointOutcome, VerificationReport
from words import CodeSequence, LengthDistribution, Word, is_prefix, reverse_code, words_of_length


logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ClaimSettings:
    """Grid bounds and resources shared by every claim"""

    n_max: int = 3
    len_max: int = 4
    c_max: int = 12
    budget: int = DEFAULT_BUDGET
    workers: int = 1

    def alphabets(self, minimum: int = 2) -> range:
        return range(minimum, max(self.n_max, minimum) + 1)

    def triples(self) -> List[Tuple[int, LengthDistribution]]:
        return length_grid(self.alphabets(), self.len_max, m=3, budget=self.budget)

    def pairs(self) -> List[Tuple[int, LengthDistribution]]:
        return length_grid(self.alphabets(), self.len_max, m=2, budget=self.budget)

    def describe(self) -> str:
        return f"n <= {self.n_max}, lengths <= {self.len_max}, c <= {self.c_max}, budget {self.budget}"


ClaimCheck = Callable[[ClaimSettings], VerificationReport]

CLAIMS: Dict[str, ClaimCheck] = {}


def claim(name: str):
    def register(check: ClaimCheck) -> ClaimCheck:
        CLAIMS[name] = check
        return check
    return register


def claim_names() -> List[str]:
    return sorted(CLAIMS)


def run_claim(name: str, settings: ClaimSettings) -> VerificationReport:
    """
    Check one named claim

    Raises:
        PreconditionError: If the claim name is unknown
        SizeLimitError: If a required sweep exceeds the budget
    """
    check = CLAIMS.get(name)
    if check is None:
        raise PreconditionError(f"Unknown claim {name!r}; expected one of {', '.join(claim_names())}")
    logger.info(f"Verifying {name} with {settings.describe()}")
    return check(settings)


def _within_budget(n: int, lengths: LengthDistribution, budget: int) -> bool:
    return n ** lengths.total <= budget


@claim("theorem1")
def check_theorem1(settings: ClaimSettings) -> VerificationReport:
    return verify_bounds(
        settings.triples(), settings.budget, settings.workers, lower=False, claim="theorem1"
    )


@claim("theorem2")
def check_theorem2(settings: ClaimSettings) -> VerificationReport:
    return verify_bounds(
        settings.triples(), settings.budget, settings.workers, upper=False, claim="theorem2"
    )


@claim("theorem3")
def check_theorem3(settings: ClaimSettings) -> VerificationReport:
    return verify_bounds(settings.pairs(), settings.budget, settings.workers, claim="theorem3")


@claim("theorem4")
def check_theorem4(settings: ClaimSettings) -> VerificationReport:
    return verify_theorem4(settings.triples(), settings.budget, settings.workers)


def _convergence_point(family: Family, n: int, c_max: int) -> PointOutcome:
    table = convergence_table(family, n, c_max)
    above = all(row.rho > table.limit for row in table.rows)
    last = table.rows[-1]
    return PointOutcome(
        point=f"family={family.value} n={n} c<={c_max}",
        values={
            "rows": str(len(table.rows)),
            "gap_at_c_max": last.gap_decimal,
            "strictly_decreasing": str(table.strictly_decreasing).lower(),
        },
        passed=above and table.strictly_decreasing,
    )


@claim("theorem5")
def check_theorem5(settings: ClaimSettings) -> VerificationReport:
    """(1,1,c) ratios stay above (n-2)/n and approach it monotonically"""
    points = [_convergence_point(Family.FAMILY_11C, n, settings.c_max) for n in settings.alphabets(3)]
    return build_report("theorem5", settings.describe(), points)


@claim("theorem6")
def check_theorem6(settings: ClaimSettings) -> VerificationReport:
    """Binary (1,2,c) ratios stay above 1/6 and approach it monotonically"""
    points = [_convergence_point(Family.FAMILY_12C_BINARY, 2, max(settings.c_max, 2))]
    return build_report("theorem6", settings.describe(), points)


@claim("corollary1")
def check_corollary1(settings: ClaimSettings) -> VerificationReport:
    return corollary1_evidence(settings.triples(), settings.budget, settings.workers)


@claim("eq1")
def check_eq1(settings: ClaimSettings) -> VerificationReport:
    """Census of every ordered pair (a, b) against the two-element closed forms"""
    points = []
    for n in settings.alphabets():
        for a, b in itertools.product(range(1, settings.len_max + 1), repeat=2):
            lengths = LengthDistribution.of(a, b)
            if not _within_budget(n, lengths, settings.budget):
                continue
            swept = census(n, lengths, budget=settings.budget, workers=settings.workers)
            ud, pr = ud_count_pair(n, a, b), pr_count_pair(n, a, b)
            points.append(
                PointOutcome(
                    point=point_label(n, lengths),
                    values={
                        "ud_census": str(swept.ud_count),
                        "ud_formula": str(ud),
                        "pr_census": str(swept.pr_count),
                        "pr_formula": str(pr),
                    },
                    passed=(swept.ud_count, swept.pr_count) == (ud, pr),
                )
            )
    return build_report("eq1", settings.describe(), points)


@claim("twoelement")
def check_two_element(settings: ClaimSettings) -> VerificationReport:
    """A pair (w, v) is a code exactly when wv != vw"""
    points = []
    for n in settings.alphabets():
        for a, b in itertools.product(range(1, settings.len_max + 1), repeat=2):
            if n ** (a + b) > settings.budget:
                continue
            codes = disagreements = 0
            for w, v in itertools.product(words_of_length(n, a), words_of_length(n, b)):
                decided = is_code_packed(n, [(a, w.value), (b, v.value)])
                codes += decided
                if decided != (w.concat(v) != v.concat(w)):
                    disagreements += 1
            expected = ud_count_pair(n, a, b)
            points.append(
                PointOutcome(
                    point=point_label(n, LengthDistribution.of(a, b)),
                    values={"codes": str(codes), "formula": str(expected), "disagreements": str(disagreements)},
                    passed=disagreements == 0 and codes == expected,
                )
            )
    return build_report("twoelement", settings.describe(), points)


@claim("prop1")
def check_prop1(settings: ClaimSettings) -> VerificationReport:
    """Three-element prefix-code counts: closed form against census, realizable or not"""
    points = []
    grid = [
        (n, lengths)
        for n in settings.alphabets()
        for lengths in map(LengthDistribution, itertools.combinations_with_replacement(range(1, settings.len_max + 1), 3))
        if _within_budget(n, lengths, settings.budget)
    ]
    for n, lengths in grid:
        swept = census(n, lengths, budget=settings.budget, workers=settings.workers)
        expected = pr_count_triple(n, lengths)
        points.append(
            PointOutcome(
                point=point_label(n, lengths),
                values={"census": str(swept.pr_count), "formula": str(expected)},
                passed=swept.pr_count == expected,
            )
        )
    return build_report("prop1", describe_grid(grid), points)


@claim("prop2")
def check_prop2(settings: ClaimSettings) -> VerificationReport:
    """(1,1,c) code counts over n > 2 letters: closed form against census"""
    points = []
    for n in settings.alphabets(3):
        for c in range(1, settings.len_max + 1):
            lengths = LengthDistribution.of(1, 1, c)
            if not _within_budget(n, lengths, settings.budget):
                continue
            swept = census(n, lengths, budget=settings.budget, workers=settings.workers)
            expected = ud_count_11c(n, c)
            points.append(
                PointOutcome(
                    point=point_label(n, lengths),
                    values={"census": str(swept.ud_count), "formula": str(expected)},
                    passed=swept.ud_count == expected,
                )
            )
    return build_report("prop2", settings.describe(), points)


def _slice_point(c: int, swept: frozenset, pattern: frozenset, expected: int) -> PointOutcome:
    return PointOutcome(
        point=f"c={c}",
        values={"slice": str(len(swept)), "pattern": str(len(pattern)), "formula": str(expected)},
        passed=swept == pattern and len(swept) == expected,
    )


@claim("prop3")
def check_prop3(settings: ClaimSettings) -> VerificationReport:
    """Non-codes (1, 00, w) are exactly w in {1, 00}* plus 0^c"""
    points = []
    for c in range(1, settings.c_max + 1):
        pattern = j100_words(c, budget=settings.budget) | {Word(2, c, 0)}
        swept = k_tilde(c, 1, 0, 0, budget=settings.budget)
        points.append(_slice_point(c, swept, pattern, j_count_100(c)[1]))
    return build_report("prop3", settings.describe(), points)


@claim("prop4")
def check_prop4(settings: ClaimSettings) -> VerificationReport:
    """Non-codes (1, 01, w) are exactly the w without two consecutive zeros"""
    points = []
    for c in range(1, settings.c_max + 1):
        swept = k_tilde(c, 1, 0, 1, budget=settings.budget)
        points.append(_slice_point(c, swept, j101_words(c, budget=settings.budget), j_count_101(c)))
    return build_report("prop4", settings.describe(), points)


@claim("nud")
def check_nud(settings: ClaimSettings) -> VerificationReport:
    """Decomposition of the binary (1,2,c) non-codes into the eight slices"""
    points = []
    for c in range(1, settings.c_max + 1):
        report = nud_decomposition_report(c, budget=settings.budget, workers=settings.workers)
        values = {key: str(count) for key, count in report.k_counts.items()}
        values.update(nud=str(report.nud_count), ud=str(report.ud_count))
        points.append(
            PointOutcome(
                point=f"c={c}",
                values=values,
                passed=(
                    report.passed
                    and report.nud_count == nud_count_closed(c)
                    and report.ud_count == ud_count_12c_binary(c)
                ),
            )
        )
    return build_report("nud", settings.describe(), points)


def _sweep_sequences(
    name: str,
    settings: ClaimSettings,
    violations: Callable[[CodeSequence], Tuple[int, int]],
) -> VerificationReport:
    """
    Run a per-sequence check over every sequence with total length <= len_max

    The check returns (cases examined, violations); results are grouped by
    alphabet and total length.
    """
    tallies: Dict[Tuple[int, int], List[int]] = defaultdict(lambda: [0, 0, 0])
    for n in settings.alphabets():
        for code in enumerate_code_sequences(n, settings.len_max, budget=settings.budget):
            cases, bad = violations(code)
            tally = tallies[(n, code.total_length)]
            tally[0] += 1
            tally[1] += cases
            tally[2] += bad
    points = [
        PointOutcome(
            point=f"n={n} total={total}",
            values={"sequences": str(seen), "cases": str(cases), "violations": str(bad)},
            passed=bad == 0,
        )
        for (n, total), (seen, cases, bad) in sorted(tallies.items())
    ]
    return build_report(name, settings.describe(), points)


def _lemma1_violations(code: CodeSequence) -> Tuple[int, int]:
    original = is_code(code)
    cases = bad = 0
    for mu, kappa in itertools.permutations(range(len(code)), 2):
        if code[kappa].length >= code[mu].length or not is_prefix(code[kappa], code[mu]):
            continue
        cases += 1
        if not original and is_code(reduce_sequence(code, mu, kappa)):
            bad += 1
    return cases, bad


def _reversal_violations(code: CodeSequence) -> Tuple[int, int]:
    return 1, int(is_code(code) != is_code(reverse_code(code)))


def _decider_violations(code: CodeSequence) -> Tuple[int, int]:
    witness = naive_double_factorization(code, oracle_bound(code))
    return 1, int(is_code(code) != (witness is None))


@claim("lemma1")
def check_lemma1(settings: ClaimSettings) -> VerificationReport:
    """Stripping a proper prefix from another entry never turns a non-code into a code"""
    return _sweep_sequences("lemma1", settings, _lemma1_violations)


@claim("reversal")
def check_reversal(settings: ClaimSettings) -> VerificationReport:
    """Reversing every codeword preserves unique decodability"""
    return _sweep_sequences("reversal", settings, _reversal_violations)


@claim("decider")
def check_decider(settings: ClaimSettings) -> VerificationReport:
    """Sardinas-Patterson agrees with the bounded double-factorization search"""
    return _sweep_sequences("decider", settings, _decider_violations)


@claim("mcmillan")
def check_mcmillan(settings: ClaimSettings) -> VerificationReport:
    """Codes, prefix codes and the Kraft inequality agree on existence"""
    points = []
    for n in settings.alphabets():
        for entries in itertools.combinations_with_replacement(range(1, settings.len_max + 1), 3):
            lengths = LengthDistribution(entries)
            if not _within_budget(n, lengths, settings.budget):
                continue
            swept = census(n, lengths, budget=settings.budget, workers=settings.workers)
            realizable = is_realizable(n, lengths)
            points.append(
                PointOutcome(
                    point=point_label(n, lengths),
                    values={
                        "realizable": str(realizable).lower(),
                        "ud": str(swept.ud_count),
                        "pr": str(swept.pr_count),
                    },
                    passed=(swept.ud_count > 0) == (swept.pr_count > 0) == realizable,
                )
            )
    return build_report("mcmillan", settings.describe(), points)
