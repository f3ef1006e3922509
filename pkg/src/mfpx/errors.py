"""Exception hierarchy shared by the library and the CLI."""


class MFPError(Exception):
    """Base class for all library errors."""


class ConfigDegenerate(MFPError):
    """The Minkowski sum of the configuration does not span its ambient space."""


class RetriesExhausted(MFPError):
    """Random perturbations repeatedly failed to produce a fine mixed subdivision."""


class TieUnresolved(MFPError):
    """Two distinct fiber points agree under both parts of a perturbed covector."""


class NonIntegralResult(MFPError):
    """The reference oracle produced a non-integral vertex (covector not generic)."""


class OracleInconsistent(MFPError):
    """A confirmed facet was violated by a later oracle answer."""


class ParseError(MFPError):
    """Malformed input text; carries 1-based line and column."""

    def __init__(self, message: str, line: int = 0, column: int = 0):
        self.line = line
        self.column = column
        where = f"line {line}, column {column}: " if line else ""
        super().__init__(where + message)


class UnknownVariable(ParseError):
    pass


class EmptyPolynomial(ParseError):
    pass
