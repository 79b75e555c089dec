"""Best 1-rational approximation: Ford circles and the odd-denominator scan

All comparisons of |b x - a| are exact.  For x = (P + S sqrt(D))/Q the
quantity Q (b x - a) is u + v sqrt(D) with u = bP - aQ and v = bS, so
every decision reduces to the sign of an integer surd.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

from prefect.logging import get_logger

from utilities.util_arith import QuadIrr, check_unit_interval, surd_sign, to_exact
from utilities.util_convergents import principal_convergents
from utilities.util_errors import InputError
from utilities.util_rcf import intermediate_pairs, rcf_convergent_pairs, rcf_expand

logger = get_logger(__name__)


@dataclass(frozen=True)
class FordCircle:
    """Circle tangent to the real line at ``base`` with radius 1/(2 q^2)."""

    base: Fraction
    radius: Fraction

    @classmethod
    def at(cls, r):
        r = Fraction(r)
        return cls(r, ford_radius(r))

    def tangent_to(self, other):
        return ford_tangent(self.base, other.base)


@dataclass(frozen=True)
class ApproxRecord:
    candidate: Fraction
    err_sq: object


def ford_radius(r):
    return Fraction(1, 2 * Fraction(r).denominator ** 2)


def ford_tangent(r1, r2):
    """Ford circles at a/b and c/d touch iff |ad - bc| = 1."""
    r1, r2 = Fraction(r1), Fraction(r2)
    return abs(r1.numerator * r2.denominator - r2.numerator * r1.denominator) == 1


def err_sq(r, x):
    """|b x - a|^2 for r = a/b, exact in the field of x."""
    r = Fraction(r)
    e = r.denominator * to_exact(x) - r.numerator
    return e * e


def horo_radius(r, x):
    """R_(a/b)(x) = |b x - a|^2 / 2, the radius of the horocycle at x
    that a Ford-type circle at a/b measures against."""
    return err_sq(r, x) / 2


def approx_record(r, x):
    return ApproxRecord(Fraction(r), err_sq(r, x))


def _floor_bx(b, x):
    n = b * b * x.S * x.S * x.D
    t = isqrt(n) if x.S > 0 else -isqrt(n) - 1
    return (b * x.P + t) // x.Q


def _abs_less(u1, v1, u2, v2, d):
    """|u1 + v1 sqrt(d)| < |u2 + v2 sqrt(d)|."""
    return surd_sign(
        u2 * u2 + v2 * v2 * d - u1 * u1 - v1 * v1 * d, 2 * (u2 * v2 - u1 * v1), d
    ) > 0


def scan_odd_denominators(x, b_lo, b_hi):
    """Strict successive minima of |b x - a| over odd a, odd b in [b_lo, b_hi].

    For each b only the two odd integers around b x can be nearest, and
    the even integer between them decides which.

    Returns:
        list[tuple]: (a, b, u, v) records in ascending b, with u, v the
        surd coordinates of Q (b x - a)
    """
    out = []
    best = None
    b = b_lo if b_lo % 2 else b_lo + 1
    while b <= b_hi:
        f = _floor_bx(b, x)
        low = f if f % 2 else f - 1
        v = b * x.S
        # bx > low + 1 means the upper odd neighbour is closer
        if surd_sign(b * x.P - (low + 1) * x.Q, v, x.D) > 0:
            a = low + 2
        else:
            a = low
        u = b * x.P - a * x.Q
        if best is None or _abs_less(u, v, best[2], best[3], x.D):
            best = (a, b, u, v)
            out.append(best)
        b += 2
    return out


def merge_minima(chunks, d):
    """Merge per-partition minima lists, in ascending b, into global minima."""
    out = []
    best = None
    for chunk in chunks:
        for rec in chunk:
            if best is None or _abs_less(rec[2], rec[3], best[2], best[3], d):
                best = rec
                out.append(rec)
    return out


def partition_odd_range(qmax, parts):
    """Split [1, qmax] into at most ``parts`` contiguous ranges."""
    parts = max(1, min(parts, qmax))
    step = -(-qmax // parts)
    return [(lo, min(lo + step - 1, qmax)) for lo in range(1, qmax + 1, step)]


def require_irrational(x):
    if not isinstance(x, QuadIrr):
        raise InputError(f"{x} is rational; best 1-rational approximation needs an irrational")
    x = check_unit_interval(x)
    return x


def best_one_rationals(x, qmax, include_seed=False, partitions=1):
    """Best 1-rational approximations a/b of x with b <= qmax.

    1/1 always opens the list of records at b = 1; it is the n = 0 principal
    convergent and is dropped unless ``include_seed``.

    Args:
        x (QuadIrr): An irrational in (0, 1)
        qmax (int): Largest denominator
        include_seed (bool, optional): Keep 1/1. Defaults to False.
        partitions (int, optional): Scan the b-range in this many pieces.

    Raises:
        InputError: x is rational

    Returns:
        list[Fraction]: Ordered by denominator
    """
    x = require_irrational(x)
    if qmax < 1:
        return []
    chunks = [
        scan_odd_denominators(x, lo, hi) for lo, hi in partition_odd_range(qmax, partitions)
    ]
    records = merge_minima(chunks, x.D)
    out = [Fraction(a, b) for a, b, _, _ in records]
    if not include_seed and out and out[0] == 1:
        out = out[1:]
    logger.debug("%s best 1-rationals of %s up to %s", len(out), x, qmax)
    return out


@dataclass(frozen=True)
class ApproxReport:
    input: str
    qmax: int
    oocf_list: list
    brute_list: list

    @property
    def passed(self):
        return self.oocf_list == self.brute_list

    def to_dict(self):
        return {
            "input": self.input,
            "qmax": self.qmax,
            "oocf_list": [str(r) for r in self.oocf_list],
            "brute_list": [str(r) for r in self.brute_list],
            "pass": self.passed,
        }


def verify_best_approximations(x, qmax, brute_list=None):
    """OOCF principal convergents with q_n <= qmax against the brute-force list.

    Args:
        x (QuadIrr): An irrational in (0, 1)
        qmax (int): Largest denominator
        brute_list (list, optional): A precomputed ``best_one_rationals`` result

    Returns:
        ApproxReport: Both lists and the verdict
    """
    x = require_irrational(x)
    oocf_list = principal_convergents(x, qmax=qmax) if qmax >= 1 else []
    if brute_list is None:
        brute_list = best_one_rationals(x, qmax)
    report = ApproxReport(str(x), qmax, oocf_list, list(brute_list))
    if not report.passed:
        logger.warning("best approximations of %s disagree below %s", x, qmax)
    return report


@dataclass(frozen=True)
class MonotonicityReport:
    input: str
    n: int
    denominators: list
    errors: list
    denominators_ok: bool
    errors_ok: bool

    @property
    def passed(self):
        return self.denominators_ok and self.errors_ok

    def to_dict(self):
        return {
            "input": self.input,
            "n": self.n,
            "denominators": self.denominators,
            "errors": [str(e) for e in self.errors],
            "denominators_ok": self.denominators_ok,
            "errors_ok": self.errors_ok,
            "pass": self.passed,
        }


def intermediate_monotonicity(x, n):
    """Monotone chains of the level-n intermediate convergents of x.

        q_(n-2) < q_(n-1) <= q_(n,1) < ... < q_(n,d_n) = q_n
        |q_n x - p_n| < |q_(n-1) x - p_(n-1)| <= |q_(n,d_n - 1) x - ...| < ... < |q_(n-2) x - p_(n-2)|

    The first link is q_0 = q_1 = 1 when n = 2 and d_1 = 1, and is checked
    with <= there.

    Raises:
        InputError: x has fewer than n RCF digits
    """
    x = check_unit_interval(x)
    if n < 1:
        raise InputError("level n must be at least 1")
    e = rcf_expand(x, max_digits=n)
    if len(e.digits) < n:
        raise InputError(f"{x} has only {len(e.digits)} RCF digits, level {n} needs {n}")
    pairs = rcf_convergent_pairs(e.digits)
    inter = intermediate_pairs(e.digits, n)
    p1, q1 = pairs[n]

    def err(p, q):
        return abs(q * x - p)

    qs = [q for _, q in inter]
    first_ok = qs[0] <= q1 if (n == 2 and e.digits[0] == 1) else qs[0] < q1
    denominators_ok = (
        first_ok and q1 <= qs[1] and all(s < t for s, t in zip(qs[1:], qs[2:]))
    )

    errs = [err(p, q) for p, q in inter]
    e_prev = err(p1, q1)
    errors_ok = (
        errs[-1] < e_prev
        and e_prev <= errs[-2]
        and all(errs[j + 1] < errs[j] for j in range(len(errs) - 2))
    )
    return MonotonicityReport(
        str(x),
        n,
        [qs[0], q1] + qs[1:],
        [errs[-1], e_prev] + errs[-2::-1],
        denominators_ok,
        errors_ok,
    )
