"""Exception types shared across the package."""


class DomainError(ValueError):
    """A numeric input is outside the operation's domain (non-finite values,
    non-unit axes, matrices failing orthogonality or skew-symmetry checks)."""


class ModelError(ValueError):
    """The link records do not form a valid robot tree."""


class InputError(ValueError):
    """A joint-state map is inconsistent with the model (missing or unknown ids)."""


class UnknownLinkError(KeyError):
    """A link id is not present in the model."""

    def __str__(self) -> str:
        return self.args[0] if self.args else "unknown link"


class ParseError(ValueError):
    """A robot description file is malformed. Carries the 1-based source line,
    and a column for token-level syntax errors."""

    def __init__(self, message: str, line: int, column: int | None = None):
        self.message = message
        self.line = line
        self.column = column
        super().__init__(str(self))

    def __str__(self) -> str:
        where = f"line {self.line}"
        if self.column is not None:
            where += f", column {self.column}"
        return f"{where}: {self.message}"
