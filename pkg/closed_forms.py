"""
Exact closed-form counts and bounds for codes with two and three codewords
"""
import logging
from fractions import Fraction
from math import factorial, gcd
from typing import Tuple

from decidability import is_realizable
from errors import PreconditionError, UncoveredFamilyError, UnrealizableError
from models import CountKind
from words import LengthDistribution, check_alphabet


logger = logging.getLogger(__name__)


def _positive(name: str, value: int) -> int:
    if isinstance(value, bool) or not isinstance(value, int) or value < 1:
        raise PreconditionError(f"{name} must be a positive integer, got {value!r}")
    return value


def fib(k: int) -> int:
    """
    k-th Fibonacci number, F_0 = 0, F_1 = 1

    Computed by the integer recurrence; never through the irrational closed form.
    """
    if k < 0:
        raise PreconditionError(f"Fibonacci index must be non-negative, got {k}")
    current, following = 0, 1
    for _ in range(k):
        current, following = following, current + following
    return current


def alpha(n: int) -> Fraction:
    """Sharp lower bound for the ratio over three-element distributions"""
    check_alphabet(n)
    if n == 2:
        return Fraction(1, 6)
    return Fraction(n - 2, n)


def ud_count_pair(n: int, a: int, b: int) -> int:
    """|UD_n((a,b))| = n^(a+b) - n^gcd(a,b)"""
    check_alphabet(n)
    _positive("a", a)
    _positive("b", b)
    return n ** (a + b) - n ** gcd(a, b)


def pr_count_pair(n: int, a: int, b: int) -> int:
    """|PR_n((a,b))|: the shorter word is free, the longer one must avoid it as a prefix"""
    check_alphabet(n)
    a, b = sorted((_positive("a", a), _positive("b", b)))
    return n ** a * (n ** b - n ** (b - a))


def pair_rho_infimum(n: int) -> Fraction:
    """Infimum of the ratio over realizable two-element distributions, (n-1)/n"""
    check_alphabet(n)
    return Fraction(n - 1, n)


def pr_count_triple(n: int, lengths: LengthDistribution) -> int:
    """
    |PR_n(L)| for a three-element L

    The entries are sorted first (the count is invariant under permutation),
    then the expanded form n^c (n^(a+b) - 2n^b - n^a + n^(b-a) + 1) is checked
    against the product form n^a (n^b - n^(b-a)) (n^c - n^(c-a) - n^(c-b)).
    The nonemptiness precondition is not enforced.
    """
    check_alphabet(n)
    if lengths.m != 3:
        raise PreconditionError(f"Expected three lengths, got {lengths}")
    a, b, c = lengths.sorted_lengths
    expanded = n ** c * (n ** (a + b) - 2 * n ** b - n ** a + n ** (b - a) + 1)
    product = n ** a * (n ** b - n ** (b - a)) * (n ** c - n ** (c - a) - n ** (c - b))
    if expanded != product:
        raise ArithmeticError(f"Prefix-count forms disagree for n={n}, L={lengths}: {expanded} != {product}")
    return expanded


def ud_count_11c(n: int, c: int) -> int:
    """|UD_n((1,1,c))| = n (n-1) (n^c - 2^c)"""
    check_alphabet(n)
    _positive("c", c)
    return n * (n - 1) * (n ** c - 2 ** c)


def ud_count_12c_binary(c: int) -> int:
    """|UD_2((1,2,c))| = 3 * 2^(c+1) - 2 F_(c+4) - 2 (c mod 2); binary alphabet only"""
    _positive("c", c)
    return 3 * 2 ** (c + 1) - 2 * fib(c + 4) - 2 * (c % 2)


def j_count_100(c: int) -> Tuple[int, int]:
    """
    Sizes of the words w of length c built from blocks 1 and 00

    Returns:
        (|J_{1,00}(c)|, |J_{1,00}(c) with 0^c added|); the second equals |K_{1,00}(c)|
    """
    _positive("c", c)
    base = fib(c + 1)
    return base, base + c % 2


def j_count_101(c: int) -> int:
    """|K_{1,01}(c)| = number of binary words of length c without "00" = F_(c+2)"""
    _positive("c", c)
    return fib(c + 2)


def k_count_closed(c: int, x: int, y: int, z: int) -> int:
    """
    |K_{x,yz}(c)| for any binary letters x, y, z

    K_{0,00} and K_{1,11} are full (2^c), K_{0,11} mirrors K_{1,00}, and the
    four slices whose second word mixes letters share the size of K_{1,01}.
    """
    _positive("c", c)
    for letter in (x, y, z):
        if letter not in (0, 1):
            raise PreconditionError(f"Letters must be binary, got {letter!r}")
    if y != z:
        return j_count_101(c)
    if x == y:
        return 2 ** c
    return j_count_100(c)[1]


def nud_count_closed(c: int) -> int:
    """|NUD(c)| = 2^(c+1) + 2|K_{1,00}(c)| + 4|K_{1,01}(c)|"""
    return 2 ** (c + 1) + 2 * j_count_100(c)[1] + 4 * j_count_101(c)


def thm1_rho_upper_bound(n: int, lengths: LengthDistribution, a: int, b: int) -> Fraction:
    """
    Upper bound on the ratio from two distinct values a, b of L

    The reciprocal of the ratio is at least 1 + r_a r_b / (n^(a+b) - n^max(a,b)),
    where r_a, r_b count the entries equal to a and b.

    Raises:
        PreconditionError: If a == b, a or b does not occur in L, or L is constant
        UnrealizableError: If L violates the Kraft inequality
    """
    check_alphabet(n)
    if a == b:
        raise PreconditionError("a and b must be different values of L")
    if lengths.is_constant:
        raise PreconditionError(f"L={lengths} is constant")
    r_a, r_b = lengths.multiplicity(a), lengths.multiplicity(b)
    if r_a == 0 or r_b == 0:
        raise PreconditionError(f"Both {a} and {b} must occur in L={lengths}")
    if not is_realizable(n, lengths):
        raise UnrealizableError(f"L={lengths} is not realizable over n={n}")
    excess = Fraction(r_a * r_b, n ** (a + b) - n ** max(a, b))
    return 1 / (1 + excess)


def thm2_rho_lower_bound(n: int, m: int) -> Fraction:
    """
    Lower bound on the ratio valid for every realizable L with m entries

    q_{n,m} * ((n - (m mod (n-1))) / n^(floor(m/(n-1)) + 1))^(m-1), where
    q_{n,m} = 1 if n >= m and (m-1)!/(m-1)^(m-1) otherwise.
    """
    check_alphabet(n)
    _positive("m", m)
    q = Fraction(1) if n >= m else Fraction(factorial(m - 1), (m - 1) ** (m - 1))
    base = Fraction(n - m % (n - 1), n ** (m // (n - 1) + 1))
    return q * base ** (m - 1)


def q_value(n: int, a: int, b: int) -> Fraction:
    """Q(a,b) = (n^(a+b) - 2n^b - n^a + n^(b-a) + 1) / (n^(a+b) - n), for b >= a"""
    check_alphabet(n)
    _positive("a", a)
    if b < a:
        raise PreconditionError(f"Q(a,b) needs b >= a, got a={a}, b={b}")
    return Fraction(n ** (a + b) - 2 * n ** b - n ** a + n ** (b - a) + 1, n ** (a + b) - n)


def q_pair_limit(n: int, a: int) -> Fraction:
    """(1 - n^(-a))^2, the value Q(a,b) increases towards as b grows"""
    check_alphabet(n)
    _positive("a", a)
    return (1 - Fraction(1, n ** a)) ** 2


def rho_11c_closed(n: int, c: int) -> Fraction:
    """Ratio for L = (1,1,c) over n > 2 letters: (n-2) n^(c-1) / (n^c - 2^c)"""
    check_alphabet(n)
    _positive("c", c)
    if n == 2:
        raise PreconditionError("L=(1,1,c) is not realizable over a binary alphabet")
    return Fraction((n - 2) * n ** (c - 1), n ** c - 2 ** c)


def rho_12c_binary_closed(c: int) -> Fraction:
    """Ratio for L = (1,2,c) over the binary alphabet, c >= 2"""
    _positive("c", c)
    if c < 2:
        raise PreconditionError("L=(1,2,1) is not realizable over a binary alphabet")
    return Fraction(2 ** c, ud_count_12c_binary(c))


def count_by_formula(kind: CountKind, n: int, lengths: LengthDistribution) -> int:
    """
    Count codes (ud) or prefix codes (pr) with a closed form

    Covered: one entry; two entries; three entries for pr; three entries for
    ud when sorted L is (1,1,c), (1,2,c) with n = 2 and c >= 2, or constant.

    Raises:
        UncoveredFamilyError: If no closed form applies
    """
    check_alphabet(n)
    kind = CountKind(kind)
    ordered = lengths.sorted_lengths
    if lengths.m == 1:
        return n ** ordered[0]
    if lengths.m == 2:
        a, b = ordered
        return ud_count_pair(n, a, b) if kind is CountKind.UD else pr_count_pair(n, a, b)
    if lengths.m == 3:
        if kind is CountKind.PR:
            return pr_count_triple(n, lengths)
        a, b, c = ordered
        if lengths.is_constant:
            # Same-length words: codes and prefix codes coincide
            return pr_count_triple(n, lengths)
        if (a, b) == (1, 1):
            return ud_count_11c(n, c)
        if n == 2 and (a, b) == (1, 2):
            return ud_count_12c_binary(c)
    raise UncoveredFamilyError(f"No closed form for |{kind.value.upper()}_{n}({lengths})|")
