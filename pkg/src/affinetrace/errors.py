"""Exception types shared by the algebra modules and the CLI."""


class DivisionByZero(ZeroDivisionError):
    pass


class NonLaurent(ArithmeticError):
    """A quotient that should land in Z[q^±1] does not."""


class InexactDivision(ArithmeticError):
    """A symmetrized rational function failed to be a Laurent polynomial."""


class ScalarNotInvertible(ZeroDivisionError):
    pass


class StrandMismatch(ValueError):
    pass


class IndexOutOfRange(IndexError):
    pass


class ParseError(ValueError):
    """Syntax error with the character offset and the tokens that would have been accepted."""

    def __init__(self, message, text="", position=0, expected=()):
        self.text = text
        self.position = position
        self.expected = tuple(expected)
        detail = message
        if expected:
            detail += f" (expected {' or '.join(self.expected)})"
        super().__init__(f"{detail} at position {position}")
