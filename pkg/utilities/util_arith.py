"""Exact arithmetic: rationals, real quadratic irrationals and 2x2 integer matrices

Rationals are ``fractions.Fraction`` throughout.  Quadratic irrationals are
``QuadIrr`` values (P + S*sqrt(D))/Q kept in canonical form, so equal values
over the same D compare and hash equal.  No decision in this module touches
floating point.
"""

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from math import gcd, isqrt

from utilities.util_errors import IllegalDigitError, InputError


class Parity(str, Enum):
    """Orbit class of a reduced fraction under the theta group."""

    ONE_RATIONAL = "one_rational"
    INF_RATIONAL = "inf_rational"


def rational_reduce(num, den):
    """Reduce num/den to lowest terms with a positive denominator.

    Args:
        num (int): Numerator
        den (int): Denominator, nonzero

    Raises:
        InputError: den is zero

    Returns:
        Fraction: The reduced rational
    """
    if den == 0:
        raise InputError(f"zero denominator in {num}/{den}")
    return Fraction(num, den)


def classify(r):
    """Parity class of a rational: both parts odd or not.

    Args:
        r (Fraction | int): A rational number

    Returns:
        Parity: ONE_RATIONAL when numerator and denominator are odd
    """
    r = Fraction(r)
    if r.numerator % 2 and r.denominator % 2:
        return Parity.ONE_RATIONAL
    return Parity.INF_RATIONAL


def is_square(n):
    return n >= 0 and isqrt(n) ** 2 == n


SQUARE_SCAN = 10**4


@lru_cache(maxsize=4096)
def square_split(d):
    """Write d = s*s*r with r free of square factors.

    Trial division stops at SQUARE_SCAN; past that point a square factor
    made only of larger primes can survive in r, which happens only for d
    beyond SQUARE_SCAN**3.

    Returns:
        tuple: (s, r)
    """
    s, r, rest, k = 1, 1, d, 2
    while k <= SQUARE_SCAN and k * k <= rest:
        e = 0
        while rest % k == 0:
            rest //= k
            e += 1
        s *= k ** (e // 2)
        r *= k ** (e % 2)
        k += 1
    if is_square(rest):
        return s * isqrt(rest), r
    return s, r * rest


def surd_sign(a, b, d):
    """Sign of a + b*sqrt(d) for integers a, b and a non-square d > 0."""
    if b == 0:
        return (a > 0) - (a < 0)
    if a == 0 or (a > 0) == (b > 0):
        return 1 if (a > 0 or (a == 0 and b > 0)) else -1
    # opposite signs: the larger magnitude wins, and a*a != b*b*d
    if a * a > b * b * d:
        return 1 if a > 0 else -1
    return 1 if b > 0 else -1


@dataclass(frozen=True)
class QuadIrr:
    """The irrational number (P + S*sqrt(D))/Q.

    Construction canonicalizes to Q > 0, a square-free D (see
    ``square_split``) and gcd(P, S, Q) = 1, so one value has one
    representation.  Use
    ``QuadIrr.of`` when the result may degenerate to a rational.
    """

    P: int
    S: int
    D: int
    Q: int

    def __post_init__(self):
        P, S, D, Q = (int(v) for v in (self.P, self.S, self.D, self.Q))
        if Q == 0:
            raise InputError("division by zero in quadratic irrational")
        if S == 0:
            raise InputError("S must be nonzero; use a Fraction instead")
        if D <= 0 or is_square(D):
            raise InputError(f"radicand {D} must be a positive non-square")
        if Q < 0:
            P, S, Q = -P, -S, -Q
        s, D = square_split(D)
        S *= s
        g = gcd(gcd(P, S), Q)
        object.__setattr__(self, "P", P // g)
        object.__setattr__(self, "S", S // g)
        object.__setattr__(self, "D", D)
        object.__setattr__(self, "Q", Q // g)

    @classmethod
    def of(cls, P, S, D, Q):
        """Build (P + S*sqrt(D))/Q, collapsing to a Fraction when rational."""
        if Q == 0:
            raise InputError("division by zero in quadratic irrational")
        if S == 0:
            return Fraction(P, Q)
        if is_square(D):
            return Fraction(P + S * isqrt(D), Q)
        return cls(P, S, D, Q)

    @classmethod
    def sqrt(cls, d):
        return cls.of(0, 1, d, 1)

    def _align(self, other):
        """other over this radicand; raises InputError across different fields."""
        if other.D == self.D:
            return other
        if not is_square(self.D * other.D):
            raise InputError(
                f"mixed radicands sqrt({self.D}) and sqrt({other.D})"
            )
        return other.rebase(self.D)

    def sign(self):
        return surd_sign(self.P, self.S, self.D)

    def conjugate(self):
        return QuadIrr(self.P, -self.S, self.D, self.Q)

    def rebase(self, d):
        """Rewrite the same value over radicand d.

        Works when D*d is a perfect square, since then
        sqrt(D) = sqrt(D*d)/d * sqrt(d).  Square factors of d are stripped
        again on construction.

        Raises:
            InputError: the two radicands span different fields
        """
        if d == self.D:
            return self
        if not is_square(self.D * d):
            raise InputError(f"sqrt({self.D}) is not in the field of sqrt({d})")
        s = isqrt(self.D * d)
        return QuadIrr(self.P * d, self.S * s, d, self.Q * d)

    def __neg__(self):
        return QuadIrr(-self.P, -self.S, self.D, self.Q)

    def __pos__(self):
        return self

    def __abs__(self):
        return -self if self.sign() < 0 else self

    def __add__(self, other):
        if isinstance(other, QuadIrr):
            other = self._align(other)
            return QuadIrr.of(
                self.P * other.Q + other.P * self.Q,
                self.S * other.Q + other.S * self.Q,
                self.D,
                self.Q * other.Q,
            )
        if isinstance(other, (int, Fraction)):
            other = Fraction(other)
            n, m = other.numerator, other.denominator
            return QuadIrr(m * self.P + n * self.Q, m * self.S, self.D, m * self.Q)
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, (QuadIrr, int, Fraction)):
            return self + (-other)
        return NotImplemented

    def __rsub__(self, other):
        if isinstance(other, (int, Fraction)):
            return (-self) + other
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, QuadIrr):
            other = self._align(other)
            return QuadIrr.of(
                self.P * other.P + self.S * other.S * self.D,
                self.P * other.S + other.P * self.S,
                self.D,
                self.Q * other.Q,
            )
        if isinstance(other, (int, Fraction)):
            other = Fraction(other)
            if other == 0:
                return Fraction(0)
            n, m = other.numerator, other.denominator
            return QuadIrr(n * self.P, n * self.S, self.D, m * self.Q)
        return NotImplemented

    __rmul__ = __mul__

    def inverse(self):
        norm = self.P * self.P - self.S * self.S * self.D
        return QuadIrr(self.Q * self.P, -self.Q * self.S, self.D, norm)

    def __truediv__(self, other):
        if isinstance(other, QuadIrr):
            return self * other.inverse()
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise InputError("division by zero")
            return self * (1 / Fraction(other))
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.inverse() * other
        return NotImplemented

    def _cmp(self, other):
        if not isinstance(other, (QuadIrr, int, Fraction)):
            return NotImplemented
        diff = self - other
        if isinstance(diff, Fraction):
            return (diff > 0) - (diff < 0)
        return diff.sign()

    def __lt__(self, other):
        c = self._cmp(other)
        return c if c is NotImplemented else c < 0

    def __le__(self, other):
        c = self._cmp(other)
        return c if c is NotImplemented else c <= 0

    def __gt__(self, other):
        c = self._cmp(other)
        return c if c is NotImplemented else c > 0

    def __ge__(self, other):
        c = self._cmp(other)
        return c if c is NotImplemented else c >= 0

    def __floor__(self):
        n = self.S * self.S * self.D
        t = isqrt(n) if self.S > 0 else -isqrt(n) - 1
        return (self.P + t) // self.Q

    def __float__(self):
        return (self.P + self.S * self.D**0.5) / self.Q

    def __str__(self):
        sign = "+" if self.S > 0 else "-"
        return f"({self.P}{sign}{abs(self.S)}*sqrt({self.D}))/{self.Q}"


def compare(x, y):
    """Exact three-way comparison of two rationals or quadratic irrationals.

    Returns:
        int: -1, 0 or 1
    """
    if isinstance(x, QuadIrr):
        return x._cmp(y)
    if isinstance(y, QuadIrr):
        return -y._cmp(x)
    return (x > y) - (x < y)


def reduced_rationals(qmax, closed=False):
    """Reduced p/q in (0, 1) with q <= qmax, ordered by (q, p); with 0 and 1 when closed."""
    out = [Fraction(0), Fraction(1)] if closed else []
    out += [
        Fraction(p, q)
        for q in range(2, qmax + 1)
        for p in range(1, q)
        if gcd(p, q) == 1
    ]
    return out


def to_exact(x):
    """Accept an int, Fraction or QuadIrr; reject anything inexact."""
    if isinstance(x, QuadIrr):
        return x
    if isinstance(x, (int, Fraction)):
        return Fraction(x)
    raise InputError(f"{x!r} is not an exact rational or quadratic irrational")


def check_unit_interval(x):
    """Return x as an exact value after checking 0 <= x <= 1.

    Raises:
        InputError: x is not exact or lies outside [0, 1]
    """
    x = to_exact(x)
    if x < 0 or x > 1:
        raise InputError(f"{x} lies outside [0, 1]")
    return x


@dataclass(frozen=True)
class Mat2:
    """A 2x2 integer matrix [[a, b], [c, d]] acting by z -> (az+b)/(cz+d)."""

    a: int
    b: int
    c: int
    d: int

    @classmethod
    def identity(cls):
        return cls(1, 0, 0, 1)

    @property
    def det(self):
        return self.a * self.d - self.b * self.c

    @property
    def trace(self):
        return self.a + self.d

    def __matmul__(self, other):
        if not isinstance(other, Mat2):
            return NotImplemented
        return Mat2(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def theta_member(self):
        """True for the theta group: determinant 1 and congruent mod 2 to
        the identity or to [[0, 1], [1, 0]]."""
        if self.det != 1:
            return False
        residue = (self.a % 2, self.b % 2, self.c % 2, self.d % 2)
        return residue in ((1, 0, 0, 1), (0, 1, 1, 0))

    def theta_coset_member(self):
        """True when the matrix lies in theta or in [[0,1],[1,0]]*theta."""
        return self.theta_member() or Mat2(self.c, self.d, self.a, self.b).theta_member()

    def apply(self, x):
        """Exact Mobius image of x.

        Raises:
            InputError: cx + d = 0
        """
        if isinstance(x, QuadIrr):
            n1, n2 = self.a * x.P + self.b * x.Q, self.a * x.S
            m1, m2 = self.c * x.P + self.d * x.Q, self.c * x.S
            if m1 == 0 and m2 == 0:
                raise InputError(f"{x} is a pole of {self}")
            norm = m1 * m1 - m2 * m2 * x.D
            return QuadIrr.of(
                n1 * m1 - n2 * m2 * x.D, x.S * x.Q * self.det, x.D, norm
            )
        x = to_exact(x)
        den = self.c * x + self.d
        if den == 0:
            raise InputError(f"{x} is a pole of {self}")
        return (self.a * x + self.b) / den

    def __str__(self):
        return f"[[{self.a},{self.b}],[{self.c},{self.d}]]"


def mat_mul(a, b):
    return a @ b


def mat_apply(m, x):
    return m.apply(x)


def check_digit(a, eps):
    """Validate an OOCF digit (a, eps).

    Raises:
        IllegalDigitError: a < 1, eps not in {1, -1}, or the pair (1, -1)
    """
    if not isinstance(a, int) or a < 1 or eps not in (1, -1):
        raise IllegalDigitError(f"illegal OOCF digit ({a}, {eps})")
    if a == 1 and eps == -1:
        raise IllegalDigitError("(1, -1) is not an OOCF digit")


def digit_matrix(a, eps):
    """A_(a,eps) = [[a-1, a+eps-1], [a, a+eps]]; its determinant is -eps."""
    check_digit(a, eps)
    return Mat2(a - 1, a + eps - 1, a, a + eps)
