"""
Unique decodability: Sardinas-Patterson decision, a bounded brute-force
oracle, the prefix-stripping reduction and the Kraft sum
"""
import heapq
import itertools
import logging
from fractions import Fraction
from typing import FrozenSet, Iterator, List, Optional, Sequence, Set, Tuple

from config import DEFAULT_ORACLE_STATE_BUDGET
from errors import PreconditionError, SizeLimitError
from models import FactorizationWitness, SPVerdict, Termination
from words import CodeSequence, LengthDistribution, Word, check_alphabet


logger = logging.getLogger(__name__)

# (length, packed base-n value)
Packed = Tuple[int, int]


def _strip_prefix(n: int, prefix: Packed, word: Packed) -> Optional[Packed]:
    """If prefix is a prefix of word, return the rest of word (possibly empty)"""
    gap = word[0] - prefix[0]
    if gap < 0:
        return None
    scale = n ** gap
    if word[1] // scale != prefix[1]:
        return None
    return (gap, word[1] % scale)


def _dangling_sets(n: int, codewords: FrozenSet[Packed]) -> Iterator[FrozenSet[Packed]]:
    """Yield D_1, D_2, ... for D_0 = codewords; the caller decides when to stop"""
    previous = codewords
    while True:
        current: Set[Packed] = set()
        for d in previous:
            for c in codewords:
                # d u = c
                rest = _strip_prefix(n, d, c)
                if rest is not None and rest[0] > 0:
                    current.add(rest)
                # c u = d
                rest = _strip_prefix(n, c, d)
                if rest is not None and rest[0] > 0:
                    current.add(rest)
        previous = frozenset(current)
        yield previous


def _run(n: int, packed: Sequence[Packed], keep_trace: bool):
    codewords = frozenset(packed)
    trace: List[FrozenSet[Packed]] = [codewords]
    if len(codewords) < len(packed):
        return False, Termination.DUPLICATE_CODEWORDS, trace

    seen: Set[FrozenSet[Packed]] = set()
    for dangling in _dangling_sets(n, codewords):
        if keep_trace:
            trace.append(dangling)
        if dangling & codewords:
            return False, Termination.INTERSECTION_WITH_D0, trace
        if not dangling:
            return True, Termination.EMPTY_DANGLING_SET, trace
        if dangling in seen:
            return True, Termination.REPEATED_DANGLING_SET, trace
        seen.add(dangling)
    raise AssertionError("unreachable: dangling sets are drawn from a finite universe")


def is_code_packed(n: int, packed: Sequence[Packed]) -> bool:
    """Decide unique decodability of packed words without building a trace"""
    return _run(n, packed, keep_trace=False)[0]


def is_code(code: CodeSequence) -> bool:
    return is_code_packed(code.n, code.packed)


def sardinas_patterson(code: CodeSequence) -> SPVerdict:
    """
    Decide whether a sequence of words is a code

    D_0 is the set of codewords; D_i holds the nonempty words u with
    D_{i-1}u meeting D_0 or D_0u meeting D_{i-1}. The sequence is not a code
    as soon as some D_i (i >= 1) meets D_0, and is a code once a D_i is empty
    or repeats an earlier one. Equal entries are rejected up front since the
    sets would silently merge them.

    Args:
        code: The sequence to decide

    Returns:
        SPVerdict with the dangling-set trace
    """
    n = code.n
    is_ud, termination, trace = _run(n, code.packed, keep_trace=True)
    logger.debug(f"SP on {code}: {termination.value} after {len(trace) - 1} rounds")
    return SPVerdict(
        is_code=is_ud,
        trace=tuple(frozenset(Word(n, length, value) for length, value in d) for d in trace),
        termination=termination,
    )


def oracle_bound(code: CodeSequence) -> int:
    """Default witness length bound: total length x (distinct proper suffixes + 2)"""
    n = code.n
    suffixes = set()
    for length, value in code.packed:
        for k in range(1, length):
            suffixes.add((k, value % n ** k))
    return code.total_length * (len(suffixes) + 2)


def _concat_indices(code: CodeSequence, indices: Sequence[int]) -> Word:
    word = Word.empty(code.n)
    for i in indices:
        word = word.concat(code[i])
    return word


def naive_double_factorization(
    code: CodeSequence,
    max_len: int,
    state_budget: int = DEFAULT_ORACLE_STATE_BUDGET,
) -> Optional[FactorizationWitness]:
    """
    Search for a word of length <= max_len with two different factorizations

    Two factorizations are grown side by side; a state records the index
    sequences and the overhang by which the longer side leads. States are
    expanded shortest-first and each overhang is expanded once, so the first
    completed state gives a shortest ambiguous word.

    Args:
        code: Sequence to search
        max_len: Longest witness considered
        state_budget: Maximum number of expanded states

    Returns:
        A FactorizationWitness, or None if no ambiguous word fits the bound

    Raises:
        PreconditionError: If max_len < 1
        SizeLimitError: If more than state_budget states are expanded
    """
    if max_len < 1:
        raise PreconditionError(f"max_len must be at least 1, got {max_len}")
    n = code.n
    packed = code.packed
    tiebreak = itertools.count()
    # (long_len, tiebreak, short_indices, long_indices, short_len, overhang)
    heap = []

    for i, wi in enumerate(packed):
        for j, wj in enumerate(packed):
            if i == j or wj[0] > max_len:
                continue
            rest = _strip_prefix(n, wi, wj)
            if rest is None or (rest[0] == 0 and i > j):
                continue
            heapq.heappush(heap, (wj[0], next(tiebreak), (i,), (j,), wi[0], rest))

    expanded: Set[Packed] = set()
    while heap:
        long_len, _, short_idx, long_idx, short_len, overhang = heapq.heappop(heap)
        if overhang[0] == 0:
            first, second = sorted([short_idx, long_idx])
            witness = FactorizationWitness(
                word=_concat_indices(code, first),
                factorization_a=first,
                factorization_b=second,
            )
            logger.debug(f"Ambiguous word {witness.word} for {code}")
            return witness
        if overhang in expanded:
            continue
        expanded.add(overhang)
        if len(expanded) > state_budget:
            raise SizeLimitError(
                f"Factorization search for {code} exceeded {state_budget} states"
            )

        for k, wk in enumerate(packed):
            rest = _strip_prefix(n, overhang, wk)
            if rest is not None:
                # The short side overtakes (or meets) the long side
                new_len = short_len + wk[0]
                if new_len > max_len:
                    continue
                if rest[0] == 0:
                    heapq.heappush(heap, (long_len, next(tiebreak), short_idx + (k,), long_idx, long_len, rest))
                else:
                    heapq.heappush(heap, (new_len, next(tiebreak), long_idx, short_idx + (k,), long_len, rest))
                continue
            rest = _strip_prefix(n, wk, overhang)
            if rest is not None:
                heapq.heappush(
                    heap, (long_len, next(tiebreak), short_idx + (k,), long_idx, short_len + wk[0], rest)
                )
    return None


def reduce_sequence(code: CodeSequence, mu: int, kappa: int) -> CodeSequence:
    """
    Replace entry mu by what remains after stripping entry kappa from its front

    If the original sequence is not a code, neither is the reduced one.

    Args:
        code: Original sequence
        mu: Index (0-based) of the entry to shorten
        kappa: Index (0-based) of the entry that is a proper prefix of entry mu

    Raises:
        PreconditionError: If mu == kappa, an index is out of range, or
            entry kappa is not a proper prefix of entry mu
    """
    m = len(code)
    if not (0 <= mu < m and 0 <= kappa < m):
        raise PreconditionError(f"Indices mu={mu}, kappa={kappa} out of range for {m} entries")
    if mu == kappa:
        raise PreconditionError("mu and kappa must differ")
    prefix, word = code.packed[kappa], code.packed[mu]
    rest = _strip_prefix(code.n, prefix, word)
    if rest is None or rest[0] == 0:
        raise PreconditionError(f"{code[kappa]} is not a proper prefix of {code[mu]}")
    return code.replace(mu, Word(code.n, rest[0], rest[1]))


def kraft_sum(n: int, lengths: LengthDistribution) -> Fraction:
    """Exact sum of n^(-a_i)"""
    check_alphabet(n)
    return sum((Fraction(1, n ** a) for a in lengths), Fraction(0))


def is_realizable(n: int, lengths: LengthDistribution) -> bool:
    """Kraft inequality; by McMillan equivalent to UD_n(L) and PR_n(L) being nonempty"""
    return kraft_sum(n, lengths) <= 1
