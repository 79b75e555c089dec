"""Regular and even-integer continued fractions, and their bridges to OOCF

Covers RCF digits and (intermediate) convergents, the RCF rewrite of an
OOCF inverse branch, the streaming RCF -> OOCF converter, EICF digits and
convergents, and the conjugacy f(x) = (1-x)/(1+x) between T_OOCF and T_EICF.
"""

from collections import deque
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from math import floor
from typing import NamedTuple

from prefect.logging import get_logger

from utilities.util_arith import (
    Mat2,
    Parity,
    QuadIrr,
    check_digit,
    check_unit_interval,
    classify,
)
from utilities.util_convergents import convergent_table, principal_convergents
from utilities.util_errors import IllegalDigitError, InputError, NeedMoreDigitsError
from utilities.util_maps import eicf_branch_of, eicf_map, oocf_map
from utilities.util_oocf import OocfDigit, OocfExpansion, Terminator, expand
from utilities.util_settings import get_settings

logger = get_logger(__name__)


class RcfTerminator(str, Enum):
    FINITE = "finite"
    TRUNCATED = "truncated"


@dataclass(frozen=True)
class RcfExpansion:
    """Digits d_1, d_2, ... of x = [0; d_1, d_2, ...] in [0, 1].

    Finite expansions are stored canonically: a trailing 1 after another
    digit is merged into it, so [.., d, 1] becomes [.., d + 1].
    """

    digits: tuple
    terminator: RcfTerminator = RcfTerminator.FINITE

    def __post_init__(self):
        digits = tuple(int(d) for d in self.digits)
        if any(d < 1 for d in digits):
            raise InputError(f"RCF digits must be positive: {list(digits)}")
        terminator = RcfTerminator(self.terminator)
        if terminator is RcfTerminator.FINITE and len(digits) > 1 and digits[-1] == 1:
            digits = digits[:-2] + (digits[-2] + 1,)
        object.__setattr__(self, "digits", digits)
        object.__setattr__(self, "terminator", terminator)

    @property
    def finite(self):
        return self.terminator is RcfTerminator.FINITE

    def to_dict(self):
        return {"digits": list(self.digits), "terminator": self.terminator.value}


def rcf_expand(x, max_digits=None):
    """Gauss-map digits of x in [0, 1]; 0 is the empty expansion."""
    if max_digits is None:
        max_digits = get_settings().max_digits
    z = check_unit_interval(x)
    digits = []
    while z != 0:
        if len(digits) >= max_digits:
            return RcfExpansion(tuple(digits), RcfTerminator.TRUNCATED)
        y = 1 / z
        d = floor(y)
        digits.append(d)
        z = y - d
    return RcfExpansion(tuple(digits), RcfTerminator.FINITE)


def rcf_value(e):
    """Exact value of a finite expansion, or of the prefix of a truncated one."""
    value = Fraction(0)
    for d in reversed(e.digits):
        value = 1 / (d + value)
    return value


def rcf_convergent_pairs(digits):
    """(p_k, q_k) for k = -1, 0, 1, ..., len(digits), seeded by 1/0 and 0/1."""
    pairs = [(1, 0), (0, 1)]
    for d in digits:
        (p2, q2), (p1, q1) = pairs[-2], pairs[-1]
        pairs.append((d * p1 + p2, d * q1 + q2))
    return pairs


def rcf_convergents(e):
    """Convergents p_k/q_k for k = 1..len."""
    return [Fraction(p, q) for p, q in rcf_convergent_pairs(e.digits)[2:]]


def intermediate_pairs(digits, n):
    """(p_(n,j), q_(n,j)) = (p_(n-2) + j p_(n-1), q_(n-2) + j q_(n-1)), j = 0..d_n."""
    if not 1 <= n <= len(digits):
        raise InputError(f"level {n} needs at least {n} RCF digits, have {len(digits)}")
    pairs = rcf_convergent_pairs(digits)
    (p2, q2), (p1, q1) = pairs[n - 1], pairs[n]
    return [(p2 + j * p1, q2 + j * q1) for j in range(digits[n - 1] + 1)]


def intermediate_convergents(e, n):
    """Intermediate convergents at level n for 1 <= j <= d_n."""
    return [Fraction(p, q) for p, q in intermediate_pairs(e.digits, n)[1:]]


def change_rcf(digit, e):
    """RCF of f_(a,eps)(x) given the RCF of x.

    (1, 1):        prepend 2
    (a >= 2, 1):   prepend 1, a-1, 1
    (2, -1):       d_1 -> d_1 + 2
    (a >= 3, -1):  prepend 1, a-2 and d_1 -> d_1 + 1

    An empty expansion (x = 0) behaves as d_1 = infinity.

    Raises:
        IllegalDigitError: digit is not in the OOCF alphabet
        NeedMoreDigitsError: d_1 is needed but the truncated stream is empty
    """
    a, eps = digit
    check_digit(a, eps)
    d = list(e.digits)
    if eps == -1 and not d and not e.finite:
        raise NeedMoreDigitsError(0)
    if eps == 1:
        out = [2] + d if a == 1 else [1, a - 1, 1] + d
    elif a == 2:
        out = [d[0] + 2] + d[1:] if d else []
    else:
        out = [1, a - 2] + ([d[0] + 1] + d[1:] if d else [])
    return RcfExpansion(tuple(out), e.terminator)


class _Stream:
    """RCF digits consumed from the left, with knowledge of whether more exist."""

    def __init__(self, digits, finite):
        self.buf = deque(digits)
        self.finite = finite
        self.consumed = 0

    def known(self, i):
        """True if digit i exists; raises when the stream cannot tell."""
        if i < len(self.buf):
            return True
        if self.finite:
            return False
        raise NeedMoreDigitsError(self.consumed)

    def pop(self):
        self.consumed += 1
        return self.buf.popleft()


def rcf_to_oocf_stream(digits, finite=True):
    """Yield canonical OOCF digits of [0; digits] one at a time.

    Returns (as the generator value) the terminator once the value is used
    up.  Each step needs at most three RCF digits of lookahead.

    Raises:
        NeedMoreDigitsError: a truncated stream ran out before a decision
    """
    s = _Stream(digits, finite)
    buf = s.buf
    while True:
        if not s.known(0):
            return Terminator.TAIL_2M1
        d1 = buf[0]
        if d1 == 1 and not s.known(1):
            return Terminator.FINITE
        if d1 >= 3:
            if d1 == 3 and not s.known(1):
                # x = 1/3
                s.pop()
                buf.appendleft(1)
                yield OocfDigit(1, 1)
            else:
                buf[0] -= 2
                yield OocfDigit(2, -1)
        elif d1 == 2:
            s.pop()
            if s.known(0):
                yield OocfDigit(1, 1)
            else:
                yield OocfDigit(3, -1)
        else:
            s.pop()
            d2 = s.pop()
            if not s.known(0):
                yield OocfDigit(d2 + 2, -1)
                continue
            d3 = buf[0]
            if d3 == 1:
                # tau in (1/2, 1): F(tau) = G(tau)
                s.pop()
                yield OocfDigit(d2 + 1, 1)
            elif d3 == 2 and not s.known(1):
                # tau = 1/2
                buf[0] = 1
                yield OocfDigit(d2 + 1, 1)
            else:
                buf[0] -= 1
                yield OocfDigit(d2 + 2, -1)


def rcf_to_oocf(e, max_digits=None):
    """Convert an RCF expansion to the canonical OOCF expansion.

    A truncated input yields a truncated output holding every digit that
    the available RCF digits decide; when the input ran out first the
    result carries ``need_more_digits``.

    Args:
        e (RcfExpansion): The input stream
        max_digits (int, optional): Stop after this many OOCF digits

    Returns:
        OocfExpansion: Same digits as ``expand`` of the value
    """
    out = []
    stream = rcf_to_oocf_stream(e.digits, e.finite)
    try:
        while max_digits is None or len(out) < max_digits:
            out.append(next(stream))
        return OocfExpansion(tuple(out), Terminator.TRUNCATED)
    except StopIteration as stop:
        return OocfExpansion(tuple(out), stop.value)
    except NeedMoreDigitsError as err:
        logger.info("need more digits: %s", err)
        return OocfExpansion(tuple(out), Terminator.TRUNCATED, need_more_digits=True)


class EicfDigit(NamedTuple):
    b: int
    eta: int

    @classmethod
    def make(cls, b, eta):
        if b < 2 or b % 2 or eta not in (1, -1):
            raise IllegalDigitError(f"illegal EICF digit ({b}, {eta})")
        return cls(b, eta)


@dataclass(frozen=True)
class EicfExpansion:
    """EICF digits with finite (reached 0), tail_2m1 (reached 1) or truncated."""

    digits: tuple
    terminator: Terminator

    def to_dict(self):
        return {
            "digits": [[d.b, d.eta] for d in self.digits],
            "terminator": Terminator(self.terminator).value,
        }


def eicf_expand(x, max_digits=None):
    """EICF digits of x in [0, 1] by iterating T_EICF."""
    if max_digits is None:
        max_digits = get_settings().max_digits
    z = check_unit_interval(x)
    digits = []
    while True:
        if z == 0:
            return EicfExpansion(tuple(digits), Terminator.FINITE)
        if z == 1:
            return EicfExpansion(tuple(digits), Terminator.TAIL_2M1)
        if len(digits) >= max_digits:
            return EicfExpansion(tuple(digits), Terminator.TRUNCATED)
        digits.append(EicfDigit.make(*eicf_branch_of(z)))
        z = eicf_map(z)


def eicf_convergents(digits):
    """p^E_n/q^E_n for n = 1..len from [[0,1],[1,0]] prod [[b, eta], [1, 0]]."""
    m = Mat2(0, 1, 1, 0)
    out = []
    for b, eta in digits:
        EicfDigit.make(b, eta)
        m = m @ Mat2(b, eta, 1, 0)
        out.append(Fraction(m.a, m.c))
    return out


def phi(digit):
    """OOCF -> EICF digit: (k+1,-1) -> (2k,-1), (k,1) -> (2k,1)."""
    a, eps = digit
    check_digit(a, eps)
    if eps == -1:
        return EicfDigit(2 * (a - 1), -1)
    return EicfDigit(2 * a, 1)


def phi_inverse(digit):
    b, eta = EicfDigit.make(*digit)
    if eta == -1:
        return OocfDigit(b // 2 + 1, -1)
    return OocfDigit(b // 2, 1)


_CONJUGACY = Mat2(-1, 1, 1, 1)


def conjugacy(x):
    """f(x) = (1-x)/(1+x); an involution of [0, 1]."""
    return _CONJUGACY.apply(check_unit_interval(x))


@dataclass(frozen=True)
class ConjugacyReport:
    input: str
    steps: int
    map_ok: bool
    digits_ok: bool
    convergents_ok: bool

    @property
    def passed(self):
        return self.map_ok and self.digits_ok and self.convergents_ok

    def to_dict(self):
        return {
            "input": self.input,
            "steps": self.steps,
            "map_ok": self.map_ok,
            "digits_ok": self.digits_ok,
            "convergents_ok": self.convergents_ok,
            "pass": self.passed,
        }


def verify_conjugacy(x, steps=30):
    """Check f o T_OOCF = T_EICF o f along the orbit of x, the digit map
    phi position by position, and p^E_n(f(x))/q^E_n(f(x)) = f(p_n/q_n)."""
    x = check_unit_interval(x)
    z = x
    map_ok = True
    for _ in range(steps):
        if conjugacy(oocf_map(z)) != eicf_map(conjugacy(z)):
            map_ok = False
            break
        z = oocf_map(z)

    oocf = expand(x, max_digits=steps)
    eicf = eicf_expand(conjugacy(x), max_digits=steps)
    terminators_match = oocf.terminator == eicf.terminator or (
        oocf.terminator is Terminator.PERIODIC
        and eicf.terminator is Terminator.TRUNCATED
    )
    digits_ok = terminators_match and [
        phi(d) for d in oocf.unrolled(len(eicf.digits))
    ] == list(eicf.digits)

    principals = [
        t.principal for t in convergent_table(oocf.unrolled(len(eicf.digits)))[1:]
    ]
    convergents_ok = [conjugacy(r) for r in principals] == eicf_convergents(eicf.digits)
    return ConjugacyReport(str(x), steps, map_ok, digits_ok, convergents_ok)


@dataclass(frozen=True)
class EicfBestReport:
    input: str
    n_max: int
    candidates: list
    one_rationals: list
    missing: list

    @property
    def passed(self):
        return not self.missing

    def to_dict(self):
        return {
            "input": self.input,
            "n_max": self.n_max,
            "candidates": [str(r) for r in self.candidates],
            "one_rationals": [str(r) for r in self.one_rationals],
            "missing": [str(r) for r in self.missing],
            "pass": self.passed,
        }


def eicf_best_to_oocf(x, n_max=10):
    """Every odd/odd 1 - p^E_n(1-x)/q^E_n(1-x) must be an OOCF principal convergent of x.

    Raises:
        InputError: x is rational or outside (0, 1)
    """
    if not isinstance(x, QuadIrr):
        raise InputError(f"{x} is rational; best approximations need an irrational")
    x = check_unit_interval(x)
    e = eicf_expand(1 - x, max_digits=n_max)
    candidates = [1 - r for r in eicf_convergents(e.digits)]
    ones = [r for r in candidates if classify(r) is Parity.ONE_RATIONAL]
    qmax = max((r.denominator for r in ones), default=0)
    principals = set(principal_convergents(x, qmax=qmax)) | {Fraction(1)}
    missing = [r for r in ones if r not in principals]
    return EicfBestReport(str(x), n_max, candidates, ones, missing)


@dataclass(frozen=True)
class IntermediateReport:
    input: str
    n_max: int
    located: list
    missing: list
    rule_violations: list

    @property
    def passed(self):
        return not self.missing and not self.rule_violations

    def to_dict(self):
        return {
            "input": self.input,
            "n_max": self.n_max,
            "located": [
                {"convergent": str(r), "level": level, "j": j}
                for r, level, j in self.located
            ],
            "missing": [str(r) for r in self.missing],
            "rule_violations": self.rule_violations,
            "pass": self.passed,
        }


def _rcf_covering(x, qmax):
    """RCF digits of x, extended until q_k exceeds qmax or the expansion ends."""
    n = 8
    while True:
        e = rcf_expand(x, max_digits=n)
        pairs = rcf_convergent_pairs(e.digits)
        if e.finite or pairs[-1][1] > qmax:
            return e
        n *= 2


def _rcf_forms(e):
    """Digit strings to search: a finite expansion also ends as [.., d - 1, 1]."""
    forms = [e.digits]
    if e.finite and e.digits and e.digits[-1] > 1:
        forms.append(e.digits[:-1] + (e.digits[-1] - 1, 1))
    return forms


def _locate_in(r, digits, finite):
    pairs = rcf_convergent_pairs(digits)
    levels = len(digits) + (1 if finite else 0)
    p, q = r.numerator, r.denominator
    for n in range(1, levels + 1):
        (p2, q2), (p1, q1) = pairs[n - 1], pairs[n]
        if q < q2:
            break
        j, rem = divmod(q - q2, q1)
        d_n = digits[n - 1] if n <= len(digits) else None
        if rem == 0 and j >= 1 and (d_n is None or j <= d_n) and p2 + j * p1 == p:
            return n, j
    return None


def locate_intermediate(r, e):
    """(level, j) with r = (p_(n-2) + j p_(n-1))/(q_(n-2) + j q_(n-1)), or None.

    A finite expansion continues with an unbounded partial quotient, so
    level len+1 accepts any j >= 1.  Both RCF forms of a rational are
    searched since the principal convergents may approach from either side.
    """
    for digits in _rcf_forms(e):
        spot = _locate_in(r, digits, e.finite)
        if spot is not None:
            return spot
    return None


def verify_intermediate(x, n_max=10):
    """OOCF principal convergents of x (index <= n_max) are RCF intermediate convergents.

    For irrational x the classification rule is checked too: below level n
    an intermediate p_(n,j)/q_(n,j), 1 <= j < d_n, is an OOCF principal
    convergent exactly when p_(n-1)/q_(n-1) is an inf-rational and
    p_(n,j)/q_(n,j) is a 1-rational.

    Raises:
        InputError: x lies outside (0, 1)
    """
    x = check_unit_interval(x)
    if x == 0 or x == 1:
        raise InputError(f"{x} is not in the open interval (0, 1)")
    principals = principal_convergents(x, n_max=n_max)
    qmax = max((r.denominator for r in principals), default=1)
    e = _rcf_covering(x, qmax)

    located, missing = [], []
    for r in principals:
        spot = locate_intermediate(r, e)
        if spot is None:
            missing.append(r)
        else:
            located.append((r, *spot))

    violations = []
    if isinstance(x, QuadIrr):
        pairs = rcf_convergent_pairs(e.digits)
        levels = [n for n in range(1, len(e.digits) + 1) if pairs[n + 1][1] <= qmax]
        full = set(principal_convergents(x, qmax=qmax)) | {Fraction(1)}
        for n in levels:
            p1, q1 = pairs[n]
            previous_one = classify(Fraction(p1, q1)) is Parity.ONE_RATIONAL
            for j, (p, q) in enumerate(intermediate_pairs(e.digits, n)[1:-1], start=1):
                r = Fraction(p, q)
                expected = not previous_one and classify(r) is Parity.ONE_RATIONAL
                if (r in full) != expected:
                    violations.append(f"level {n}, j={j}: {r}")
        for p, q in pairs[2:]:
            r = Fraction(p, q)
            if q <= qmax and classify(r) is Parity.ONE_RATIONAL and r not in full:
                violations.append(f"convergent {r} is not an OOCF principal convergent")
    if missing or violations:
        logger.warning("%s: %s missing, %s rule violations", x, len(missing), len(violations))
    return IntermediateReport(str(x), n_max, located, missing, violations)
