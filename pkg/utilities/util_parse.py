"""Number grammar shared by the command line and the test fixtures

    p/q                      a rational (p alone means p/1)
    (P+S*sqrt(D))/Q          a quadratic irrational; P, S may be negative
    (P-sqrt(D))/Q, sqrt(D)   shorthands with S = +-1 and Q = 1

Whitespace is ignored everywhere.  Errors carry the position of the first
offending character in the original string.
"""

from utilities.util_arith import QuadIrr, rational_reduce
from utilities.util_errors import InputError, ParseError


class _Cursor:
    def __init__(self, text):
        self.text = text
        self.chars = [(i, ch) for i, ch in enumerate(text) if not ch.isspace()]
        self.k = 0

    @property
    def pos(self):
        if self.k < len(self.chars):
            return self.chars[self.k][0]
        return len(self.text)

    def peek(self, ahead=0):
        if self.k + ahead < len(self.chars):
            return self.chars[self.k + ahead][1]
        return ""

    def fail(self, message):
        raise ParseError(message, self.text, self.pos)

    def expect(self, literal):
        for ch in literal:
            if self.peek() != ch:
                self.fail(f"expected {literal!r}")
            self.k += 1

    def accept(self, literal):
        if "".join(self.peek(i) for i in range(len(literal))) == literal:
            self.k += len(literal)
            return True
        return False

    def sign(self):
        negative = False
        while self.peek() in ("+", "-"):
            negative ^= self.peek() == "-"
            self.k += 1
        return -1 if negative else 1

    def digits(self):
        start = self.k
        while self.peek().isdigit():
            self.k += 1
        if self.k == start:
            self.fail("expected an integer")
        return int("".join(ch for _, ch in self.chars[start : self.k]))

    def integer(self):
        return self.sign() * self.digits()

    def done(self):
        if self.k != len(self.chars):
            self.fail("unexpected trailing input")


def _sqrt_term(cur):
    cur.expect("sqrt(")
    d = cur.digits()
    cur.expect(")")
    return d


def parse_number(text):
    """Parse a rational or quadratic irrational from the CLI grammar.

    Args:
        text (str): e.g. "2/7", "(-1+1*sqrt(2))/1" or "sqrt(3)"

    Raises:
        ParseError: the string does not follow the grammar
        InputError: zero denominator or an invalid radicand

    Returns:
        Fraction | QuadIrr: The parsed value; perfect-square radicands
        collapse to a Fraction
    """
    cur = _Cursor(text)
    if not cur.chars:
        cur.fail("empty input")

    if cur.peek() == "s":
        d = _sqrt_term(cur)
        cur.done()
        return _make(cur, 0, 1, d, 1)

    if cur.accept("("):
        p = 0
        if cur.peek() != "s":
            p = cur.integer()
        sign = cur.sign() if cur.peek() in ("+", "-") else 1
        if p != 0 and sign == 1 and cur.chars[cur.k - 1][1] not in "+-":
            cur.fail("expected '+' or '-' before the surd")
        s = 1
        if cur.peek().isdigit():
            s = cur.digits()
            cur.expect("*")
        d = _sqrt_term(cur)
        cur.expect(")")
        q = 1
        if cur.accept("/"):
            q = cur.integer()
        cur.done()
        return _make(cur, p, sign * s, d, q)

    p = cur.integer()
    q = 1
    if cur.accept("/"):
        q = cur.integer()
    cur.done()
    return rational_reduce(p, q)


def _make(cur, p, s, d, q):
    if q == 0:
        raise ParseError("zero denominator", cur.text, cur.pos)
    if d == 0:
        raise InputError(f"radicand must be positive in {cur.text!r}")
    return QuadIrr.of(p, s, d, q)


def parse_digits(text):
    """Parse a comma separated list of positive integers, e.g. "3,2".

    Raises:
        ParseError: a token is not a positive integer
    """
    if not text.strip():
        return []
    out = []
    offset = 0
    for token in text.split(","):
        stripped = token.strip()
        if not stripped.isdigit() or int(stripped) < 1:
            raise ParseError(
                "expected a positive integer",
                text,
                offset + (len(token) - len(token.lstrip())),
            )
        out.append(int(stripped))
        offset += len(token) + 1
    return out
