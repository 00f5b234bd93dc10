"""
Unit tests for words, code sequences and length distributions
"""
import pickle

import pytest

from errors import AlphabetMismatchError, PreconditionError, SizeLimitError, WordFormatError
from words import (
    CodeSequence,
    LengthDistribution,
    Word,
    check_alphabet,
    enumerate_words,
    is_prefix,
    is_prefix_code,
    reverse_code,
    words_of_length,
)


def w(text: str, n: int = 2) -> Word:
    return Word.parse(text, n)


class TestWord:
    """Test cases for the Word type"""

    def test_parse_binary(self):
        """Test parsing a digit string packs it base n"""
        word = w("010")
        assert word.length == 3
        assert word.value == 2
        assert word.digits == (0, 1, 0)
        assert str(word) == "010"

    def test_parse_large_alphabet_uses_dots(self):
        """Test dot-separated digits above ten letters"""
        word = Word.parse("0.11.2", 12)
        assert word.digits == (0, 11, 2)
        assert str(word) == "0.11.2"

    def test_parse_rejects_digit_outside_alphabet(self):
        """Test a digit >= n is a format error"""
        with pytest.raises(WordFormatError, match="not below n=2"):
            Word.parse("012", 2)

    def test_parse_rejects_non_digit(self):
        """Test a letter that is not a digit is a format error"""
        with pytest.raises(WordFormatError, match="not a digit"):
            Word.parse("0a", 3)

    def test_empty_word(self):
        """Test the empty word parses and has length zero"""
        empty = Word.parse("", 3)
        assert empty == Word.empty(3)
        assert len(empty) == 0
        assert str(empty) == ""

    @pytest.mark.parametrize("n", [0, 1, -3, True, 2.0])
    def test_invalid_alphabet(self, n):
        """Test alphabets below two letters are rejected"""
        with pytest.raises(WordFormatError):
            check_alphabet(n)

    def test_value_out_of_range(self):
        """Test packed values must fit the length"""
        with pytest.raises(WordFormatError, match="out of range"):
            Word(2, 2, 4)

    def test_immutable(self):
        """Test words cannot be modified after construction"""
        word = w("10")
        with pytest.raises(AttributeError):
            word.value = 0

    def test_concat_and_reverse(self):
        """Test concatenation and digit reversal"""
        assert w("1").concat(w("00")) == w("100")
        assert w("100").reversed() == w("001")

    def test_concat_alphabet_mismatch(self):
        """Test concatenating words over different alphabets fails"""
        with pytest.raises(AlphabetMismatchError):
            w("1").concat(Word.parse("1", 3))

    def test_equality_includes_length(self):
        """Test leading zeros distinguish words with the same packed value"""
        assert w("01") != w("1")
        assert w("01") != w("001")
        assert hash(w("01")) == hash(Word(2, 2, 1))

    def test_ordering_shorter_first(self):
        """Test words sort by length, then lexicographically"""
        assert sorted([w("11"), w("0"), w("10"), w("1")]) == [w("0"), w("1"), w("10"), w("11")]

    def test_pickle_round_trip(self):
        """Test words survive pickling for worker processes"""
        word = Word.parse("2.0.1", 3)
        assert pickle.loads(pickle.dumps(word)) == word


class TestIsPrefix:
    """Test cases for is_prefix"""

    @pytest.mark.parametrize(
        "u, target, expected",
        [("1", "10", True), ("10", "1", False), ("01", "01", True), ("0", "10", False), ("", "101", True)],
    )
    def test_examples(self, u, target, expected):
        """Test prefix examples over the binary alphabet"""
        assert is_prefix(w(u), w(target)) is expected

    def test_alphabet_mismatch(self):
        """Test comparing words over different alphabets raises"""
        with pytest.raises(AlphabetMismatchError):
            is_prefix(w("1"), Word.parse("10", 3))

    def test_transitive(self):
        """Test prefix chains compose"""
        a, b, c = w("1"), w("10"), w("1011")
        assert is_prefix(a, b) and is_prefix(b, c) and is_prefix(a, c)


class TestLengthDistribution:
    """Test cases for LengthDistribution"""

    def test_parse(self):
        """Test comma-separated parsing keeps the order"""
        lengths = LengthDistribution.parse("5, 1,2")
        assert lengths.lengths == (5, 1, 2)
        assert lengths.m == 3
        assert lengths.total == 8
        assert str(lengths) == "(5,1,2)"

    @pytest.mark.parametrize("text", ["", "1,x", "0,1", "-1", "1,,2", "1,2,"])
    def test_parse_invalid(self, text):
        """Test invalid distributions are rejected"""
        with pytest.raises(WordFormatError):
            LengthDistribution.parse(text)

    def test_sorted_accessors(self):
        """Test a, b, c come from the sorted lengths"""
        lengths = LengthDistribution.of(5, 1, 2)
        assert (lengths.a, lengths.b, lengths.c) == (1, 2, 5)
        assert lengths.sorted() == LengthDistribution.of(1, 2, 5)

    def test_missing_accessor(self):
        """Test c is undefined for two lengths"""
        with pytest.raises(PreconditionError):
            LengthDistribution.of(1, 2).c

    def test_multiplicities(self):
        """Test value multiplicities and constancy"""
        lengths = LengthDistribution.of(1, 1, 2)
        assert lengths.multiplicity(1) == 2
        assert lengths.multiplicity(3) == 0
        assert lengths.values == (1, 2)
        assert not lengths.is_constant
        assert LengthDistribution.of(2, 2, 2).is_constant

    def test_remainder(self):
        """Test (m)_{n-1}"""
        assert LengthDistribution.of(1, 1, 2).remainder(3) == 1
        assert LengthDistribution.of(1, 1, 2).remainder(2) == 0
        assert LengthDistribution.of(1, 1, 2).remainder(5) == 3


class TestCodeSequence:
    """Test cases for CodeSequence"""

    def test_parse(self):
        """Test parsing a comma-separated sequence"""
        code = CodeSequence.parse(2, "1,00,100")
        assert len(code) == 3
        assert code.lengths == LengthDistribution.of(1, 2, 3)
        assert code.total_length == 6
        assert str(code) == "(1, 00, 100)"

    def test_duplicates_allowed(self):
        """Test sequences may repeat a word"""
        code = CodeSequence.parse(2, ["0", "0"])
        assert code[0] == code[1]

    def test_empty_word_rejected(self):
        """Test the empty word cannot be a codeword"""
        with pytest.raises(WordFormatError, match="empty word"):
            CodeSequence.parse(2, ["1", ""])

    def test_empty_sequence_rejected(self):
        """Test a sequence needs at least one word"""
        with pytest.raises(WordFormatError):
            CodeSequence(2, ())

    def test_alphabet_mismatch(self):
        """Test every word must share the alphabet"""
        with pytest.raises(AlphabetMismatchError):
            CodeSequence(2, (w("1"), Word.parse("2", 3)))

    def test_replace(self):
        """Test replacing an entry keeps the others"""
        code = CodeSequence.parse(2, "1,00,100")
        assert code.replace(2, w("00")) == CodeSequence.parse(2, "1,00,00")
        assert code == CodeSequence.parse(2, "1,00,100")


class TestIsPrefixCode:
    """Test cases for is_prefix_code"""

    @pytest.mark.parametrize(
        "text, expected",
        [("0,10,11", True), ("1,00,10", False), ("1,00,1000", False), ("0,0", False), ("01", True)],
    )
    def test_examples(self, text, expected):
        """Test prefix-code examples"""
        assert is_prefix_code(CodeSequence.parse(2, text)) is expected

    def test_permutation_invariant(self):
        """Test the verdict ignores the order of entries"""
        for text in ("11,0,10", "10,11,0", "100,1,00"):
            code = CodeSequence.parse(2, text)
            assert is_prefix_code(code) == is_prefix_code(CodeSequence(2, tuple(reversed(code.words))))


class TestReverseCode:
    """Test cases for reverse_code"""

    def test_examples(self):
        """Test digit reversal keeps the order of entries"""
        assert reverse_code(CodeSequence.parse(2, "1,00,10")) == CodeSequence.parse(2, "1,00,01")
        assert reverse_code(CodeSequence.parse(2, "0,1")) == CodeSequence.parse(2, "0,1")

    def test_involution(self):
        """Test reversing twice gives the original"""
        code = CodeSequence.parse(3, "012,2,110")
        assert reverse_code(reverse_code(code)) == code


class TestEnumerateWords:
    """Test cases for enumerate_words"""

    def test_binary_square(self):
        """Test all binary words of length 2 in lexicographic order"""
        assert [str(x) for x in enumerate_words(2, 2)] == ["00", "01", "10", "11"]

    def test_ternary_letters(self):
        """Test single letters of a three-letter alphabet"""
        assert [str(x) for x in enumerate_words(3, 1)] == ["0", "1", "2"]

    def test_length_zero(self):
        """Test length zero yields exactly the empty word"""
        assert list(enumerate_words(2, 0)) == [Word.empty(2)]

    @pytest.mark.parametrize("n, length", [(2, 6), (3, 4), (4, 3)])
    def test_distinct_and_complete(self, n, length):
        """Test n^length pairwise-distinct words"""
        words = words_of_length(n, length)
        assert len(words) == n ** length
        assert len(set(words)) == n ** length

    def test_sub_range(self):
        """Test start/stop select a slice of packed values"""
        assert [x.value for x in enumerate_words(2, 3, start=2, stop=5)] == [2, 3, 4]

    def test_budget(self):
        """Test exceeding the budget names the size"""
        with pytest.raises(SizeLimitError, match="2\\^10 = 1024"):
            list(enumerate_words(2, 10, budget=1000))
