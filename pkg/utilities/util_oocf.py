"""OOCF digit streams: extraction, evaluation and periodicity"""

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from functools import reduce
from typing import NamedTuple, Optional

from prefect.logging import get_logger

from utilities.util_arith import (
    Mat2,
    QuadIrr,
    check_digit,
    check_unit_interval,
    digit_matrix,
)
from utilities.util_errors import (
    InputError,
    IterationCapError,
    MalformedExpansionError,
)
from utilities.util_maps import oocf_step
from utilities.util_settings import get_settings

logger = get_logger(__name__)


class OocfDigit(NamedTuple):
    """Partial quotient (a, eps); compares equal to the plain tuple."""

    a: int
    eps: int

    @classmethod
    def make(cls, a, eps):
        check_digit(a, eps)
        return cls(a, eps)


class Terminator(str, Enum):
    FINITE = "finite"
    TAIL_2M1 = "tail_2m1"
    PERIODIC = "periodic"
    TRUNCATED = "truncated"


TAIL_DIGIT = OocfDigit(2, -1)


@dataclass(frozen=True)
class OocfExpansion:
    """A digit prefix plus what follows it.

    finite: nothing follows, the value is the prefix applied to 1.
    tail_2m1: (2,-1) repeats forever, the value is the prefix applied to 0.
    periodic: digits[period_start:] repeats forever.
    truncated: the stream was cut at max_digits.

    ``need_more_digits`` marks a truncated expansion whose source (a
    truncated RCF stream) ran out before the next digit was decided.
    """

    digits: tuple
    terminator: Terminator
    period_start: Optional[int] = None
    need_more_digits: bool = field(default=False, compare=False)

    def __post_init__(self):
        digits = tuple(OocfDigit.make(*d) for d in self.digits)
        object.__setattr__(self, "digits", digits)
        object.__setattr__(self, "terminator", Terminator(self.terminator))
        if self.terminator is Terminator.PERIODIC:
            if self.period_start is None or not 0 <= self.period_start < len(digits):
                raise InputError("periodic expansion needs a nonempty period")
        elif self.period_start is not None:
            raise InputError("period_start is only meaningful for periodic expansions")
        if self.need_more_digits and self.terminator is not Terminator.TRUNCATED:
            raise InputError("need_more_digits only applies to truncated expansions")

    @property
    def preperiod(self):
        if self.terminator is Terminator.PERIODIC:
            return self.digits[: self.period_start]
        return self.digits

    @property
    def period(self):
        if self.terminator is Terminator.PERIODIC:
            return self.digits[self.period_start :]
        if self.terminator is Terminator.TAIL_2M1:
            return (TAIL_DIGIT,)
        return ()

    def unrolled(self, n):
        """First n digits of the infinite stream (fewer if it is finite or truncated)."""
        out = list(self.digits[:n])
        period = self.period
        while len(out) < n and period and self.terminator in (
            Terminator.PERIODIC,
            Terminator.TAIL_2M1,
        ):
            out.extend(period)
        return out[:n]

    def to_dict(self):
        out = {
            "digits": [[d.a, d.eps] for d in self.digits],
            "terminator": self.terminator.value,
        }
        if self.terminator is Terminator.PERIODIC:
            out["period_start"] = self.period_start
        if self.need_more_digits:
            out["need_more_digits"] = True
        return out

    @classmethod
    def from_dict(cls, payload):
        return cls(
            tuple(tuple(d) for d in payload["digits"]),
            Terminator(payload["terminator"]),
            payload.get("period_start"),
            payload.get("need_more_digits", False),
        )

    def __str__(self):
        body = ",".join(f"({d.a},{d.eps})" for d in self.digits)
        return f"[[{body}]] {self.terminator.value}"


def digits_matrix(digits):
    """Product A_(a1,e1) ... A_(an,en); the identity for no digits."""
    return reduce(
        lambda acc, d: acc @ digit_matrix(*d), digits, Mat2.identity()
    )


def expand(x, max_digits=None):
    """Canonical OOCF expansion of x in [0, 1].

    Iterates T_OOCF, stopping at 1 (finite), at 0 (tail_2m1), on a repeated
    state for quadratic irrationals (periodic) or after max_digits digits
    (truncated).  The first repeated state starts the minimal cycle.

    Args:
        x (Fraction | QuadIrr): The value to expand
        max_digits (int, optional): Digit cap. Defaults to OODD_MAX_DIGITS.

    Returns:
        OocfExpansion: The expansion
    """
    if max_digits is None:
        max_digits = get_settings().max_digits
    zeta = check_unit_interval(x)
    digits = []
    seen = {}
    while True:
        if zeta == 1:
            return OocfExpansion(tuple(digits), Terminator.FINITE)
        if zeta == 0:
            return OocfExpansion(tuple(digits), Terminator.TAIL_2M1)
        if isinstance(zeta, QuadIrr):
            if zeta in seen:
                return OocfExpansion(tuple(digits), Terminator.PERIODIC, seen[zeta])
            seen[zeta] = len(digits)
        if len(digits) >= max_digits:
            return OocfExpansion(tuple(digits), Terminator.TRUNCATED)
        digit, zeta = oocf_step(zeta)
        digits.append(OocfDigit(*digit))


def all_expansions(x):
    """Both OOCF expansions of a rational in (0, 1), canonical first.

    A 1-rational has two finite expansions differing in the last digit,
    (k,1) against (k+1,-1).  An inf-rational has two (2,-1)-tailed ones,
    (k+2,-1) against (k,1) where the orbit lands on k/(k+1).

    Raises:
        InputError: x is irrational, 0, or outside (0, 1)

    Returns:
        tuple: (canonical, alternative) OocfExpansion pair
    """
    if isinstance(x, QuadIrr):
        raise InputError("an irrational has a unique expansion; use expand")
    x = check_unit_interval(x)
    if x == 0 or x == 1:
        raise InputError(f"{x} is not in the open interval (0, 1)")
    canonical = expand(x, max_digits=x.denominator + 1)
    a, eps = canonical.digits[-1]
    if canonical.terminator is Terminator.FINITE:
        last = OocfDigit(a + 1, -1)
    else:
        last = OocfDigit(a - 2, 1)
    alternative = OocfExpansion(canonical.digits[:-1] + (last,), canonical.terminator)
    return canonical, alternative


def fixed_point(m):
    """Attracting fixed point of z -> (az+b)/(cz+d) inside [0, 1].

    Solves c z^2 + (d - a) z - b = 0.

    Raises:
        MalformedExpansionError: no root lies in [0, 1]
    """
    if m.c == 0:
        raise MalformedExpansionError(f"{m} has no finite fixed point to select")
    disc = m.trace**2 - 4 * m.det
    if disc < 0:
        raise MalformedExpansionError(f"{m} has no real fixed point")
    roots = {QuadIrr.of(m.a - m.d, s, disc, 2 * m.c) for s in (1, -1)}
    inside = [z for z in roots if 0 <= z <= 1]
    if not inside:
        raise MalformedExpansionError(f"{m} has no fixed point in [0, 1]")
    if len(inside) == 1:
        return inside[0]
    attracting = [z for z in inside if abs(m.c * z + m.d) > 1]
    return attracting[0] if attracting else min(inside)


def evaluate(e):
    """Exact value of an expansion.

    finite and truncated evaluate the prefix at 1, tail_2m1 at 0, periodic
    at the fixed point of the period.

    Raises:
        MalformedExpansionError: the period has no fixed point in [0, 1]
    """
    if e.terminator in (Terminator.FINITE, Terminator.TRUNCATED):
        return digits_matrix(e.digits).apply(Fraction(1))
    if e.terminator is Terminator.TAIL_2M1:
        return digits_matrix(e.digits).apply(Fraction(0))
    z = fixed_point(digits_matrix(e.period))
    return digits_matrix(e.preperiod).apply(z)


def detect_period(x, cap=None):
    """Preperiod and period lengths of the OOCF expansion of a quadratic irrational.

    Args:
        x (QuadIrr): A quadratic irrational in (0, 1)
        cap (int, optional): Digit guard. Defaults to OODD_PERIOD_CAP.

    Raises:
        InputError: x is rational
        IterationCapError: no repetition within cap digits

    Returns:
        tuple: (preperiod_len, period_len)
    """
    if not isinstance(x, QuadIrr):
        raise InputError(f"{x} is rational; periodicity needs a quadratic irrational")
    cap = cap or get_settings().period_cap
    e = expand(x, max_digits=cap)
    if e.terminator is not Terminator.PERIODIC:
        raise IterationCapError("period detection", cap, x)
    logger.debug(
        "%s: preperiod %s, period %s", x, e.period_start, len(e.digits) - e.period_start
    )
    return e.period_start, len(e.digits) - e.period_start
