"""
Exception hierarchy shared by the library, the CLI and the HTTP service
"""


class UdCodesError(Exception):
    """Base class for every error raised by this project"""
    pass


class WordFormatError(UdCodesError, ValueError):
    """Raised when a word, alphabet or length distribution cannot be parsed or is invalid"""
    pass


class AlphabetMismatchError(UdCodesError, ValueError):
    """Raised when words over different alphabets are combined"""
    pass


class SizeLimitError(UdCodesError):
    """Raised when an enumeration or search would exceed its configured budget"""
    pass


class PreconditionError(UdCodesError, ValueError):
    """Raised when an operation is called outside its documented precondition"""
    pass


class UnrealizableError(PreconditionError):
    """Raised when a length distribution violates the Kraft inequality"""
    pass


class UndefinedRatioError(UdCodesError, ArithmeticError):
    """Raised when the prefix-code ratio is requested for an empty set of codes"""
    pass


class UncoveredFamilyError(UdCodesError):
    """Raised when no closed-form count covers the requested length distribution"""
    pass


class ConfigurationError(UdCodesError):
    """Raised when required configuration is missing or invalid"""
    pass
