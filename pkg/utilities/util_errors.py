"""Exception hierarchy shared by the OOCF utilities and the command line"""


class OocfError(Exception):
    """Base class for every error raised by this package."""


class InputError(OocfError, ValueError):
    """The caller supplied a value the operation cannot accept.

    Covers zero denominators, values outside [0, 1], mixed radicands,
    poles of a Mobius map and malformed digit streams.
    """


class IllegalDigitError(InputError):
    """A partial quotient outside the digit alphabet, e.g. (1, -1)."""


class ParseError(InputError):
    """The number grammar rejected an input string.

    Args:
        message (str): What went wrong
        text (str): The offending input
        position (int): 0-based index of the first bad character
    """

    def __init__(self, message, text, position):
        self.text = text
        self.position = position
        super().__init__(f"{message} at position {position}: {text!r}")


class NeedMoreDigitsError(InputError):
    """A truncated RCF stream ended before the next OOCF digit was decided."""

    def __init__(self, consumed):
        self.consumed = consumed
        super().__init__(f"need more digits after {consumed} RCF digits")


class MalformedExpansionError(OocfError):
    """A periodic expansion whose period map has no fixed point in [0, 1]."""


class IterationCapError(OocfError):
    """An iteration guard tripped before the loop finished.

    Args:
        what (str): Name of the loop that gave up
        cap (int): The limit that was reached
        value: The input being processed
    """

    def __init__(self, what, cap, value):
        self.cap = cap
        self.value = value
        super().__init__(f"{what} exceeded {cap} iterations for {value}")
