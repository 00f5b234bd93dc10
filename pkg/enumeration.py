"""
Brute-force counting: exhaustive sweeps over tuples of words, the binary
(1,2,c) non-code slices and their pattern characterizations
"""
import itertools
import logging
import re
import time
from concurrent.futures import ProcessPoolExecutor
from datetime import timedelta
from typing import FrozenSet, Iterator, List, Sequence, Tuple

from closed_forms import k_count_closed
from config import DEFAULT_BUDGET
from decidability import is_code_packed
from errors import PreconditionError, SizeLimitError, WordFormatError
from models import CensusResult, NudReport
from words import (
    CodeSequence,
    LengthDistribution,
    Word,
    check_alphabet,
    enumerate_words,
    packed_is_prefix_code,
)


logger = logging.getLogger(__name__)

# Sweeps smaller than this run in-process even when workers > 1
PARALLEL_THRESHOLD = 2 ** 14

_J100 = re.compile(r"(?:1|00)*")

SLICE_KEYS = ("0,00", "0,01", "0,10", "0,11", "1,00", "1,01", "1,10", "1,11")


def _decode(index: int, lengths: Sequence[int], sizes: Sequence[int]) -> List[Tuple[int, int]]:
    # Row-major: the last word varies fastest
    packed = []
    for a, size in zip(reversed(lengths), reversed(sizes)):
        index, value = divmod(index, size)
        packed.append((a, value))
    packed.reverse()
    return packed


def census_range(n: int, lengths: Tuple[int, ...], start: int, stop: int) -> Tuple[int, int]:
    """
    Count (codes, prefix codes) among tuples start..stop-1 in row-major order

    Partial counts over disjoint ranges add up to the full census.
    """
    sizes = [n ** a for a in lengths]
    ud = pr = 0
    for index in range(start, stop):
        packed = _decode(index, lengths, sizes)
        if len(set(packed)) < len(packed):
            continue
        if is_code_packed(n, packed):
            ud += 1
        if packed_is_prefix_code(n, packed):
            pr += 1
    return ud, pr


def _partition(total: int, parts: int) -> List[Tuple[int, int]]:
    step = -(-total // parts)
    return [(start, min(start + step, total)) for start in range(0, total, step)]


def census(
    n: int,
    lengths: LengthDistribution,
    budget: int = DEFAULT_BUDGET,
    workers: int = 1,
) -> CensusResult:
    """
    Count codes and prefix codes with length distribution L by exhaustive sweep

    Args:
        n: Alphabet size
        lengths: Length distribution L
        budget: Maximum number of tuples to examine
        workers: Worker processes; the tuple range is split into disjoint chunks

    Returns:
        CensusResult with exact counts

    Raises:
        SizeLimitError: If n^sum(L) exceeds the budget
    """
    check_alphabet(n)
    total = n ** lengths.total
    if total > budget:
        raise SizeLimitError(
            f"Census of n={n}, L={lengths} needs {n}^{lengths.total} = {total} tuples, budget is {budget}"
        )
    started = time.perf_counter()
    if workers > 1 and total >= PARALLEL_THRESHOLD:
        chunks = _partition(total, workers * 4)
        logger.debug(f"Census n={n} L={lengths}: {len(chunks)} chunks on {workers} workers")
        with ProcessPoolExecutor(max_workers=workers) as executor:
            partials = list(
                executor.map(
                    census_range,
                    itertools.repeat(n),
                    itertools.repeat(lengths.lengths),
                    [s for s, _ in chunks],
                    [e for _, e in chunks],
                )
            )
        ud = sum(p[0] for p in partials)
        pr = sum(p[1] for p in partials)
    else:
        ud, pr = census_range(n, lengths.lengths, 0, total)
    elapsed = timedelta(seconds=time.perf_counter() - started)
    logger.info(f"Census n={n} L={lengths}: {ud} codes, {pr} prefix codes of {total} in {elapsed}")
    return CensusResult(
        n=n, lengths=lengths.lengths, total_tuples=total, ud_count=ud, pr_count=pr, elapsed=elapsed
    )


def _binary_letter(name: str, letter: int) -> int:
    if letter not in (0, 1):
        raise PreconditionError(f"{name} must be a binary letter, got {letter!r}")
    return letter


def k_tilde(c: int, x: int, y: int, z: int, budget: int = DEFAULT_BUDGET) -> FrozenSet[Word]:
    """Binary words w of length c such that (x, yz, w) is not a code"""
    if c < 1:
        raise PreconditionError(f"c must be positive, got {c}")
    x, y, z = (_binary_letter(name, v) for name, v in (("x", x), ("y", y), ("z", z)))
    first, second = (1, x), (2, 2 * y + z)
    return frozenset(
        w for w in enumerate_words(2, c, budget=budget)
        if not is_code_packed(2, [first, second, (c, w.value)])
    )


def census_K(c: int, x: int, y: int, z: int, budget: int = DEFAULT_BUDGET) -> int:
    """|K_{x,yz}(c)|: how many w of length c make (x, yz, w) a non-code"""
    return len(k_tilde(c, x, y, z, budget=budget))


def _binary_text(w: Word) -> str:
    if w.n != 2:
        raise WordFormatError(f"Expected a binary word, got one over n={w.n}")
    return str(w)


def is_in_J100(w: Word) -> bool:
    """w is a concatenation of blocks 1 and 00"""
    return _J100.fullmatch(_binary_text(w)) is not None


def is_in_J101(w: Word) -> bool:
    """w has no two consecutive zeros"""
    return "00" not in _binary_text(w)


def j100_words(c: int, budget: int = DEFAULT_BUDGET) -> FrozenSet[Word]:
    return frozenset(w for w in enumerate_words(2, c, budget=budget) if is_in_J100(w))


def j101_words(c: int, budget: int = DEFAULT_BUDGET) -> FrozenSet[Word]:
    return frozenset(w for w in enumerate_words(2, c, budget=budget) if is_in_J101(w))


def nud_decomposition_report(c: int, budget: int = DEFAULT_BUDGET, workers: int = 1) -> NudReport:
    """
    Split the binary non-codes with lengths (1,2,c) by their first two words

    Every slice is counted by SP, |NUD(c)| comes from a full census, and the
    report records whether the decomposition identity, the symmetry classes
    and the Fibonacci closed forms hold.

    Raises:
        SizeLimitError: If 2^(c+3) exceeds the budget
    """
    if c < 1:
        raise PreconditionError(f"c must be positive, got {c}")
    if 2 ** (c + 3) > budget:
        raise SizeLimitError(f"NUD({c}) needs 2^{c + 3} tuples, budget is {budget}")

    k_counts = {}
    for key in SLICE_KEYS:
        x, yz = key.split(",")
        k_counts[key] = census_K(c, int(x), int(yz[0]), int(yz[1]), budget=budget)

    swept = census(2, LengthDistribution.of(1, 2, c), budget=budget, workers=workers)
    nud = swept.total_tuples - swept.ud_count

    decomposition = (
        nud == 2 ** (c + 1) + 2 * k_counts["1,00"] + 4 * k_counts["1,01"]
        and nud == sum(k_counts.values())
    )
    symmetry = (
        k_counts["0,00"] == k_counts["1,11"] == 2 ** c
        and k_counts["0,11"] == k_counts["1,00"]
        and k_counts["0,01"] == k_counts["0,10"] == k_counts["1,01"] == k_counts["1,10"]
    )
    closed_form = all(
        k_counts[key] == k_count_closed(c, int(key[0]), int(key[2]), int(key[3])) for key in SLICE_KEYS
    )
    if not (decomposition and symmetry and closed_form):
        logger.warning(f"NUD({c}) decomposition failed: {k_counts}, |NUD|={nud}")
    return NudReport(
        c=c,
        k_counts=k_counts,
        nud_count=nud,
        ud_count=swept.ud_count,
        decomposition_holds=decomposition,
        symmetry_holds=symmetry,
        closed_form_holds=closed_form,
    )


def _compositions(total: int) -> Iterator[Tuple[int, ...]]:
    if total == 0:
        yield ()
        return
    for first in range(1, total + 1):
        for rest in _compositions(total - first):
            yield (first,) + rest


def count_code_sequences(n: int, total_max: int) -> int:
    """Number of sequences with total codeword length <= total_max: sum of n^t 2^(t-1)"""
    return sum(n ** t * 2 ** (t - 1) for t in range(1, total_max + 1))


def enumerate_code_sequences(n: int, total_max: int, budget: int = DEFAULT_BUDGET) -> Iterator[CodeSequence]:
    """
    Every code sequence over n letters with total codeword length <= total_max

    Raises:
        SizeLimitError: If there are more such sequences than the budget
    """
    check_alphabet(n)
    size = count_code_sequences(n, total_max)
    if size > budget:
        raise SizeLimitError(f"{size} sequences with total length <= {total_max} exceed the budget of {budget}")
    for total in range(1, total_max + 1):
        for lengths in _compositions(total):
            for values in itertools.product(*(range(n ** a) for a in lengths)):
                yield CodeSequence(n, tuple(Word(n, a, v) for a, v in zip(lengths, values)))
