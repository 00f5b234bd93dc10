"""
Words over an n-letter alphabet, code sequences and length distributions

A word is stored as (alphabet size, length, packed base-n value). The packed
value is a Python int, so packing never overflows however long the word is.
"""
import logging
from dataclasses import dataclass
from typing import Iterable, Iterator, List, Optional, Sequence, Tuple, Union

from config import DEFAULT_BUDGET
from errors import AlphabetMismatchError, PreconditionError, SizeLimitError, WordFormatError


logger = logging.getLogger(__name__)


def check_alphabet(n: int) -> int:
    """
    Validate an alphabet size

    Args:
        n: Number of letters; letters are the digits 0..n-1

    Returns:
        n unchanged

    Raises:
        WordFormatError: If n is not an integer >= 2
    """
    if isinstance(n, bool) or not isinstance(n, int):
        raise WordFormatError(f"Alphabet size must be an integer, got {n!r}")
    if n < 2:
        raise WordFormatError(f"Alphabet size must be at least 2, got {n}")
    return n


class Word:
    """Immutable word over the alphabet {0, ..., n-1}"""

    __slots__ = ("n", "length", "value")

    def __init__(self, n: int, length: int, value: int):
        check_alphabet(n)
        if isinstance(length, bool) or not isinstance(length, int) or length < 0:
            raise WordFormatError(f"Word length must be a non-negative integer, got {length!r}")
        if not 0 <= value < n ** length:
            raise WordFormatError(f"Packed value {value} out of range for length {length} over n={n}")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "length", length)
        object.__setattr__(self, "value", value)

    @classmethod
    def _trusted(cls, n: int, length: int, value: int) -> "Word":
        # Skips range checks; callers guarantee 0 <= value < n**length
        word = object.__new__(cls)
        object.__setattr__(word, "n", n)
        object.__setattr__(word, "length", length)
        object.__setattr__(word, "value", value)
        return word

    def __setattr__(self, name, value):
        raise AttributeError("Word is immutable")

    def __reduce__(self):
        return (Word, (self.n, self.length, self.value))

    @classmethod
    def empty(cls, n: int) -> "Word":
        return cls(n, 0, 0)

    @classmethod
    def from_digits(cls, n: int, digits: Iterable[int]) -> "Word":
        """Build a word from its digit sequence (most significant first)"""
        check_alphabet(n)
        value = 0
        length = 0
        for digit in digits:
            if isinstance(digit, bool) or not isinstance(digit, int) or not 0 <= digit < n:
                raise WordFormatError(f"Digit {digit!r} is not a letter of the {n}-letter alphabet")
            value = value * n + digit
            length += 1
        return cls._trusted(n, length, value)

    @classmethod
    def parse(cls, text: str, n: int) -> "Word":
        """
        Parse a word from its text form

        Args:
            text: Digit string such as "010", or dot-separated digits such as "0.11.2"
                  (required when n > 10, accepted for any n)
            n: Alphabet size

        Returns:
            The parsed Word

        Raises:
            WordFormatError: If a symbol is not a digit below n
        """
        check_alphabet(n)
        text = text.strip()
        if text == "":
            return cls.empty(n)
        if "." in text or n > 10:
            symbols = text.split(".")
        else:
            symbols = list(text)
        digits = []
        for symbol in symbols:
            if not symbol.isdecimal():
                raise WordFormatError(f"Cannot parse {text!r}: {symbol!r} is not a digit")
            digit = int(symbol)
            if digit >= n:
                raise WordFormatError(f"Cannot parse {text!r}: digit {digit} is not below n={n}")
            digits.append(digit)
        return cls.from_digits(n, digits)

    @property
    def digits(self) -> Tuple[int, ...]:
        out = []
        value = self.value
        for _ in range(self.length):
            value, digit = divmod(value, self.n)
            out.append(digit)
        return tuple(reversed(out))

    def reversed(self) -> "Word":
        return Word.from_digits(self.n, reversed(self.digits))

    def concat(self, other: "Word") -> "Word":
        _same_alphabet(self, other)
        return Word._trusted(
            self.n, self.length + other.length, self.value * self.n ** other.length + other.value
        )

    def __len__(self) -> int:
        return self.length

    def __eq__(self, other) -> bool:
        if not isinstance(other, Word):
            return NotImplemented
        return (self.n, self.length, self.value) == (other.n, other.length, other.value)

    def __hash__(self) -> int:
        return hash((self.n, self.length, self.value))

    def __lt__(self, other: "Word") -> bool:
        # Shorter words first, then lexicographic
        return (self.length, self.value) < (other.length, other.value)

    def __str__(self) -> str:
        separator = "." if self.n > 10 else ""
        return separator.join(str(d) for d in self.digits)

    def __repr__(self) -> str:
        return f"Word({str(self)!r}, n={self.n})"


def _same_alphabet(u: Word, w: Word) -> None:
    if u.n != w.n:
        raise AlphabetMismatchError(f"Words over different alphabets: n={u.n} and n={w.n}")


def is_prefix(u: Word, w: Word) -> bool:
    """
    Check whether u is a prefix (initial segment) of w

    Raises:
        AlphabetMismatchError: If u and w are over different alphabets
    """
    _same_alphabet(u, w)
    if u.length > w.length:
        return False
    return w.value // w.n ** (w.length - u.length) == u.value


@dataclass(frozen=True)
class LengthDistribution:
    """Ordered tuple of positive codeword lengths (a_1, ..., a_m)"""

    lengths: Tuple[int, ...]

    def __post_init__(self):
        lengths = tuple(self.lengths)
        if not lengths:
            raise WordFormatError("A length distribution needs at least one length")
        for a in lengths:
            if isinstance(a, bool) or not isinstance(a, int) or a < 1:
                raise WordFormatError(f"Lengths must be positive integers, got {a!r}")
        object.__setattr__(self, "lengths", lengths)

    @classmethod
    def of(cls, *lengths: int) -> "LengthDistribution":
        return cls(tuple(lengths))

    @classmethod
    def parse(cls, text: str) -> "LengthDistribution":
        """Parse comma-separated lengths such as "1,2,5" """
        parts = [p.strip() for p in text.split(",")]
        if "" in parts:
            raise WordFormatError(f"Empty length in {text!r}")
        try:
            return cls(tuple(int(p) for p in parts))
        except ValueError:
            raise WordFormatError(f"Cannot parse length distribution {text!r}")

    @property
    def m(self) -> int:
        return len(self.lengths)

    @property
    def total(self) -> int:
        return sum(self.lengths)

    @property
    def sorted_lengths(self) -> Tuple[int, ...]:
        return tuple(sorted(self.lengths))

    def sorted(self) -> "LengthDistribution":
        return LengthDistribution(self.sorted_lengths)

    @property
    def values(self) -> Tuple[int, ...]:
        """Distinct lengths, ascending"""
        return tuple(sorted(set(self.lengths)))

    @property
    def is_constant(self) -> bool:
        return len(set(self.lengths)) == 1

    def multiplicity(self, value: int) -> int:
        """r_value: how many entries of L equal value"""
        return self.lengths.count(value)

    def remainder(self, n: int) -> int:
        """(m)_{n-1}: remainder of m divided by n-1"""
        check_alphabet(n)
        return self.m % (n - 1)

    def _sorted_entry(self, index: int, name: str) -> int:
        ordered = self.sorted_lengths
        if index >= len(ordered):
            raise PreconditionError(f"{name} is undefined for a distribution of length {self.m}")
        return ordered[index]

    @property
    def a(self) -> int:
        return self._sorted_entry(0, "a")

    @property
    def b(self) -> int:
        return self._sorted_entry(1, "b")

    @property
    def c(self) -> int:
        return self._sorted_entry(2, "c")

    def __iter__(self) -> Iterator[int]:
        return iter(self.lengths)

    def __len__(self) -> int:
        return self.m

    def __str__(self) -> str:
        return "(" + ",".join(str(a) for a in self.lengths) + ")"


@dataclass(frozen=True)
class CodeSequence:
    """Ordered sequence of nonempty words over one alphabet; duplicates allowed"""

    n: int
    words: Tuple[Word, ...]

    def __post_init__(self):
        check_alphabet(self.n)
        words = tuple(self.words)
        if not words:
            raise WordFormatError("A code sequence needs at least one word")
        for word in words:
            if not isinstance(word, Word):
                raise WordFormatError(f"Expected a Word, got {word!r}")
            if word.n != self.n:
                raise AlphabetMismatchError(
                    f"Word {word} is over n={word.n}, sequence is over n={self.n}"
                )
            if word.length == 0:
                raise WordFormatError("The empty word cannot be a codeword")
        object.__setattr__(self, "words", words)

    @classmethod
    def parse(cls, n: int, texts: Union[str, Sequence[str]]) -> "CodeSequence":
        """
        Parse a code sequence

        Args:
            n: Alphabet size
            texts: Comma-separated words ("1,00,100") or a list of word strings
        """
        if isinstance(texts, str):
            texts = [t for t in texts.split(",")]
        return cls(n, tuple(Word.parse(t, n) for t in texts))

    @property
    def lengths(self) -> LengthDistribution:
        return LengthDistribution(tuple(w.length for w in self.words))

    @property
    def total_length(self) -> int:
        return sum(w.length for w in self.words)

    @property
    def packed(self) -> Tuple[Tuple[int, int], ...]:
        return tuple((w.length, w.value) for w in self.words)

    def replace(self, index: int, word: Word) -> "CodeSequence":
        words = list(self.words)
        words[index] = word
        return CodeSequence(self.n, tuple(words))

    def __len__(self) -> int:
        return len(self.words)

    def __iter__(self) -> Iterator[Word]:
        return iter(self.words)

    def __getitem__(self, index: int) -> Word:
        return self.words[index]

    def __str__(self) -> str:
        return "(" + ", ".join(str(w) for w in self.words) + ")"


def packed_is_prefix_code(n: int, packed: Sequence[Tuple[int, int]]) -> bool:
    """is_prefix_code on (length, value) pairs"""
    for i, (short_len, short_value) in enumerate(packed):
        for j, (long_len, long_value) in enumerate(packed):
            if i == j or short_len > long_len:
                continue
            if long_value // n ** (long_len - short_len) == short_value:
                return False
    return True


def is_prefix_code(code: CodeSequence) -> bool:
    """True iff no entry is a prefix of a different entry (equal entries included)"""
    return packed_is_prefix_code(code.n, code.packed)


def reverse_code(code: CodeSequence) -> CodeSequence:
    """Reverse every codeword, keeping the order of the entries"""
    return CodeSequence(code.n, tuple(w.reversed() for w in code.words))


def enumerate_words(
    n: int,
    length: int,
    budget: int = DEFAULT_BUDGET,
    start: int = 0,
    stop: Optional[int] = None,
) -> Iterator[Word]:
    """
    Stream every word of the given length in lexicographic order

    Args:
        n: Alphabet size
        length: Word length (0 yields just the empty word)
        budget: Maximum number of words the full range may contain
        start, stop: Optional sub-range of packed values, for partitioned sweeps

    Raises:
        SizeLimitError: If n**length exceeds the budget
    """
    check_alphabet(n)
    if length < 0:
        raise WordFormatError(f"Word length must be non-negative, got {length}")
    size = n ** length
    if size > budget:
        raise SizeLimitError(f"Enumerating {n}^{length} = {size} words exceeds the budget of {budget}")
    stop = size if stop is None else min(stop, size)
    for value in range(start, stop):
        yield Word._trusted(n, length, value)


def words_of_length(n: int, length: int, budget: int = DEFAULT_BUDGET) -> List[Word]:
    return list(enumerate_words(n, length, budget=budget))
