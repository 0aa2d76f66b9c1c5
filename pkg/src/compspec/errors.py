"""Exception hierarchy shared by all subpackages."""


class CompSpecError(Exception):
    """Base class for every error raised by this package."""


class ResourceLimitError(CompSpecError):
    """An exact computation would exceed the configured degree or bit budget."""


class ParseError(CompSpecError):
    """Malformed polynomial expression.

    ``column`` is 1-based and points at the offending character.
    """

    def __init__(self, message: str, column: int, source: str = ""):
        self.column = column
        self.source = source
        super().__init__(f"{message} at column {column}")


class IdentitySymbolError(CompSpecError):
    """The symbol is the identity map, so every point is fixed."""


class UnsupportedCaseError(CompSpecError):
    """The requested predicate is not defined for this kind of symbol."""


class HypothesisError(CompSpecError):
    """A lemma was invoked on a symbol that violates its hypotheses."""


class CertificateNotFound(CompSpecError):
    """Search for a certificate failed; ``witnesses`` carries the evidence."""

    def __init__(self, message: str, witnesses=()):
        self.witnesses = list(witnesses)
        super().__init__(message)


class DivergenceError(CompSpecError):
    """A series was detected to diverge; ``evidence`` holds partial-sum norms."""

    def __init__(self, message: str, evidence=()):
        self.evidence = list(evidence)
        super().__init__(message)


class GridError(CompSpecError):
    """A grid is too coarse or too small for the requested evaluation."""


class MetadataError(CompSpecError):
    """Monotone-symbol metadata is internally inconsistent."""


class BracketError(CompSpecError):
    """A bisection bracket has no sign change."""
