"""
Command runner shared by the CLI and the HTTP service

Each command takes plain inputs, runs the library and returns an
OutputDocument. Domain errors propagate unchanged; the CLI turns them into
exit codes and the service into HTTP responses.
"""
import logging
import time
from typing import Any, Dict, Optional, Sequence

from analysis import check_path_agreement, convergence_table, format_decimal, rho
from claims import ClaimSettings, run_claim
from closed_forms import alpha, count_by_formula
from config import DEFAULT_BUDGET, DEFAULT_DECIMAL_DIGITS, DEFAULT_ORACLE_STATE_BUDGET
from decidability import naive_double_factorization, oracle_bound, sardinas_patterson
from enumeration import census
from models import ConvergenceTable, CountKind, CountMethod, Family, OutputDocument, RhoMethod, render_ratio
from words import CodeSequence, LengthDistribution


logger = logging.getLogger(__name__)


class CommandRunner:
    """Runs decide / count / rho / verify / table with fixed resource limits"""

    def __init__(
        self,
        budget: int = DEFAULT_BUDGET,
        workers: int = 1,
        decimal_digits: int = DEFAULT_DECIMAL_DIGITS,
        oracle_state_budget: int = DEFAULT_ORACLE_STATE_BUDGET,
    ):
        """
        Initialize the runner

        Args:
            budget: Maximum tuples (or sequences) any enumeration may visit
            workers: Worker processes for census and grid evaluation
            decimal_digits: Default decimal places in convergence tables
            oracle_state_budget: Maximum states the factorization search may expand
        """
        self.budget = budget
        self.workers = workers
        self.decimal_digits = decimal_digits
        self.oracle_state_budget = oracle_state_budget

    @staticmethod
    def _document(
        command: str,
        inputs: Dict[str, Any],
        started: float,
        results: Dict[str, Any],
        status: str = "ok",
    ) -> OutputDocument:
        elapsed = time.perf_counter() - started
        logger.debug(f"{command} finished with status {status} in {elapsed:.3f}s")
        return OutputDocument(command=command, inputs=inputs, results=results, status=status, timing=elapsed)

    def decide(
        self,
        n: int,
        words: Sequence[str],
        trace: bool = False,
        witness: bool = False,
        max_len: Optional[int] = None,
    ) -> OutputDocument:
        """
        Decide unique decodability, optionally with the trace and an ambiguous word

        Raises:
            WordFormatError: If a word does not parse under the alphabet
            SizeLimitError: If the witness search exceeds its state budget
        """
        started = time.perf_counter()
        code = CodeSequence.parse(n, list(words))
        inputs = {"n": n, "words": [str(w) for w in code], "trace": trace, "witness": witness, "max_len": max_len}

        verdict = sardinas_patterson(code)
        dumped = verdict.model_dump(mode="json")
        results: Dict[str, Any] = {
            "is_code": verdict.is_code,
            "termination": dumped["termination"],
        }
        if trace:
            results["trace"] = dumped["trace"]
        if witness and not verdict.is_code:
            bound = max_len or oracle_bound(code)
            found = naive_double_factorization(code, bound, state_budget=self.oracle_state_budget)
            results["witness"] = found.model_dump(mode="json") if found else None
        return self._document("decide", inputs, started, results)

    def count(
        self,
        kind: CountKind,
        n: int,
        lengths: LengthDistribution,
        method: CountMethod = CountMethod.FORMULA,
    ) -> OutputDocument:
        """
        Count codes or prefix codes by closed form, by census, or both

        Raises:
            UncoveredFamilyError: If a formula is requested and none applies
            SizeLimitError: If the census exceeds the budget
        """
        started = time.perf_counter()
        kind, method = CountKind(kind), CountMethod(method)
        inputs = {"kind": kind.value, "n": n, "lengths": list(lengths), "method": method.value}

        results: Dict[str, Any] = {}
        if method in (CountMethod.FORMULA, CountMethod.BOTH):
            results["formula"] = str(count_by_formula(kind, n, lengths))
        if method in (CountMethod.ENUMERATE, CountMethod.BOTH):
            swept = census(n, lengths, budget=self.budget, workers=self.workers)
            counted = swept.ud_count if kind is CountKind.UD else swept.pr_count
            results["enumerate"] = str(counted)
            results["total_tuples"] = str(swept.total_tuples)
        results["count"] = results.get("formula", results.get("enumerate"))

        status = "ok"
        if method is CountMethod.BOTH:
            results["agreement"] = results["formula"] == results["enumerate"]
            status = "pass" if results["agreement"] else "fail"
        return self._document("count", inputs, started, results, status)

    def rho(
        self,
        n: int,
        lengths: LengthDistribution,
        method: Optional[RhoMethod] = None,
        cross_check: bool = False,
    ) -> OutputDocument:
        """
        Exact ratio of prefix codes among codes

        With cross_check, both evaluation paths run where a closed form exists
        and the document fails if they disagree.
        """
        started = time.perf_counter()
        inputs = {
            "n": n,
            "lengths": list(lengths),
            "method": method.value if method else None,
            "cross_check": cross_check,
        }
        result = rho(n, lengths, budget=self.budget, workers=self.workers, method=method)
        results = result.model_dump(mode="json")
        results["rho_decimal"] = format_decimal(result.rho, self.decimal_digits)
        results["alpha"] = render_ratio(alpha(n))

        status = "ok"
        if cross_check:
            agreement = check_path_agreement(n, lengths, budget=self.budget)
            results["path_agreement"] = agreement
            if agreement is not None:
                status = "pass" if agreement else "fail"
        return self._document("rho", inputs, started, results, status)

    def verify(self, claim: str, n_max: int = 3, len_max: int = 4, c_max: int = 12) -> OutputDocument:
        """
        Check a named claim over the grid given by n_max, len_max and c_max

        Raises:
            PreconditionError: If the claim is unknown
        """
        started = time.perf_counter()
        inputs = {"claim": claim, "n_max": n_max, "len_max": len_max, "c_max": c_max}
        settings = ClaimSettings(
            n_max=n_max, len_max=len_max, c_max=c_max, budget=self.budget, workers=self.workers
        )
        report = run_claim(claim, settings)
        status = "pass" if report.passed else "fail"
        return self._document("verify", inputs, started, report.model_dump(mode="json"), status)

    def convergence(self, family: Family, n: int, c_max: int, digits: Optional[int] = None) -> ConvergenceTable:
        return convergence_table(family, n, c_max, digits or self.decimal_digits)

    def table(self, family: Family, n: int, c_max: int, digits: Optional[int] = None) -> OutputDocument:
        """Convergence table as a document; fails when the gap stops decreasing"""
        started = time.perf_counter()
        family = Family(family)
        digits = digits or self.decimal_digits
        inputs = {"family": family.value, "n": n, "c_max": c_max, "digits": digits}
        table = self.convergence(family, n, c_max, digits)
        status = "pass" if table.strictly_decreasing else "fail"
        return self._document("table", inputs, started, table.model_dump(mode="json"), status)
