"""Principal, sub and pseudo convergents of OOCF digit strings

For a prefix with digit product M = [[a, b], [c, d]] the three convergents
are the images of 1, infinity and 0:

    principal p/q   = (a+b)/(c+d)
    sub       p'/q' = a/c
    pseudo    p''/q'' = b/d

Signed identities, with det A_(a,eps) = -eps:

    p'q'' - p''q'           = (-1)^n eps_1...eps_n
    p_(n-1) q_n - p_n q_(n-1) = 2 (-1)^(n+1) eps_1...eps_(n-1)
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from prefect.logging import get_logger

from utilities.util_arith import Mat2, check_digit, check_unit_interval, digit_matrix
from utilities.util_errors import InputError
from utilities.util_maps import oocf_map
from utilities.util_oocf import (
    OocfDigit,
    all_expansions,
    expand,
)

logger = get_logger(__name__)


@dataclass(frozen=True)
class ConvergentTriple:
    """Row n of a convergent table; n = 0 is the seed row.

    The sub-convergent of the seed is 1/0, so it is stored as the integer
    pair (p_sub, q_sub) and ``sub`` returns None there.
    """

    n: int
    digit: Optional[OocfDigit]
    p: int
    q: int
    p_sub: int
    q_sub: int
    p_pseudo: int
    q_pseudo: int
    eps_prod: int
    adjacent_det: Optional[int] = None

    @property
    def principal(self):
        return Fraction(self.p, self.q)

    @property
    def sub(self):
        if self.q_sub == 0:
            return None
        return Fraction(self.p_sub, self.q_sub)

    @property
    def pseudo(self):
        return Fraction(self.p_pseudo, self.q_pseudo)

    @property
    def sub_pseudo_det(self):
        return self.p_sub * self.q_pseudo - self.p_pseudo * self.q_sub

    def to_dict(self):
        return {
            "n": self.n,
            "digit": list(self.digit) if self.digit else None,
            "principal": f"{self.p}/{self.q}",
            "sub": f"{self.p_sub}/{self.q_sub}",
            "pseudo": f"{self.p_pseudo}/{self.q_pseudo}",
            "eps_prod": self.eps_prod,
            "adjacent_det": self.adjacent_det,
            "sub_pseudo_det": self.sub_pseudo_det,
        }


SEED = ConvergentTriple(0, None, 1, 1, 1, 0, 0, 1, 1)


def _legal(digits):
    out = []
    for d in digits:
        check_digit(*d)
        out.append(OocfDigit(*d))
    return out


def convergent_table(digits):
    """Convergent triples by the scalar recursions.

        p'_n  = a_n p_(n-1) - p'_(n-1)
        p''_n = p'_n + eps_n p_(n-1)
        p_n   = p'_n + p''_n

    seeded with p'_0 = 1, q'_0 = 0, p_0 = q_0 = 1.

    Args:
        digits (iterable): (a, eps) pairs

    Raises:
        IllegalDigitError: a digit is not in the OOCF alphabet

    Returns:
        list[ConvergentTriple]: Rows n = 0..len(digits)
    """
    table = [SEED]
    prev = SEED
    for n, (a, eps) in enumerate(_legal(digits), start=1):
        p_sub = a * prev.p - prev.p_sub
        q_sub = a * prev.q - prev.q_sub
        p_pseudo = p_sub + eps * prev.p
        q_pseudo = q_sub + eps * prev.q
        p, q = p_sub + p_pseudo, q_sub + q_pseudo
        prev = ConvergentTriple(
            n,
            OocfDigit(a, eps),
            p,
            q,
            p_sub,
            q_sub,
            p_pseudo,
            q_pseudo,
            prev.eps_prod * eps,
            prev.p * q - p * prev.q,
        )
        table.append(prev)
    return table


def convergent_table_matrix(digits):
    """Same rows as ``convergent_table`` from running products of A_(a,eps).

    M [[1, -1], [1, 0]] = [[p, -p'], [q, -q']] and M applied to 0 gives p''/q''.
    """
    shift = Mat2(1, -1, 1, 0)
    table = [SEED]
    m = Mat2.identity()
    eps_prod = 1
    for n, digit in enumerate(_legal(digits), start=1):
        m = m @ digit_matrix(*digit)
        eps_prod *= digit.eps
        head = m @ shift
        prev = table[-1]
        table.append(
            ConvergentTriple(
                n,
                digit,
                head.a,
                head.c,
                -head.b,
                -head.d,
                m.b,
                m.d,
                eps_prod,
                prev.p * head.c - head.a * prev.q,
            )
        )
    return table


def principal_recursion(digits):
    """(p_n, q_n) for n = 1..len from the three-term recursion

        p_n = (2 a_n + eps_n - 1) p_(n-1) + eps_(n-1) p_(n-2)

    with p_(-1) = -1, q_(-1) = 1, p_0 = q_0 = 1 and eps_0 = 1.
    """
    (p2, q2), (p1, q1) = (-1, 1), (1, 1)
    prev_eps = 1
    out = []
    for a, eps in _legal(digits):
        mult = 2 * a + eps - 1
        p, q = mult * p1 + prev_eps * p2, mult * q1 + prev_eps * q2
        out.append((p, q))
        (p2, q2), (p1, q1) = (p1, q1), (p, q)
        prev_eps = eps
    return out


def valid_prefixes(x, n):
    """Every length-n digit prefix an OOCF expansion of x can start with."""
    x = check_unit_interval(x)
    if isinstance(x, Fraction) and 0 < x < 1:
        expansions = all_expansions(x)
    else:
        expansions = (expand(x, max_digits=n),)
    out = []
    for e in expansions:
        digits = e.unrolled(n)
        if len(digits) == n:
            out.append(tuple(digits))
    return out


def _check_prefix(x, table, n):
    if not 0 <= n < len(table):
        raise InputError(f"row {n} is not in a table of {len(table) - 1} digits")
    prefix = tuple(t.digit for t in table[1 : n + 1])
    if prefix not in valid_prefixes(x, n):
        raise InputError(f"digits {list(prefix)} do not start an expansion of {x}")


def _between(v, lo, hi):
    """lo <= v <= hi in either order; None stands for infinity."""
    if lo is None or hi is None:
        finite = hi if lo is None else lo
        return v >= finite
    return min(lo, hi) <= v <= max(lo, hi)


@dataclass(frozen=True)
class BetweennessReport:
    n: int
    x_between: bool
    principal_between: bool
    nested_in_previous: bool
    previous_outside: bool

    @property
    def passed(self):
        return (
            self.x_between
            and self.principal_between
            and self.nested_in_previous
            and self.previous_outside
        )

    def to_dict(self):
        return {
            "n": self.n,
            "x_between": self.x_between,
            "principal_between": self.principal_between,
            "nested_in_previous": self.nested_in_previous,
            "previous_outside": self.previous_outside,
            "pass": self.passed,
        }


def _in_half_closed(v, excluded, included):
    return v != excluded and _between(v, excluded, included)


def betweenness_report(x, table, n):
    """Ordering facts for row n of a convergent table of x.

    Flags: x lies between principal and pseudo; the principal lies between
    sub and pseudo; the row's three convergents lie in I_(n-1), the
    interval from the previous principal (open) to the previous pseudo
    (closed); the previous principal lies outside [sub, pseudo].

    Raises:
        InputError: the table's digits are not a prefix of an expansion of x
    """
    _check_prefix(x, table, n)
    row = table[n]
    x_between = _between(x, row.principal, row.pseudo)
    principal_between = _between(row.principal, row.sub, row.pseudo)
    if n == 0:
        return BetweennessReport(0, x_between, principal_between, True, True)
    prev = table[n - 1]
    nested = all(
        _in_half_closed(v, prev.principal, prev.pseudo)
        for v in (row.principal, row.sub, row.pseudo)
    )
    outside = not _between(prev.principal, row.sub, row.pseudo)
    return BetweennessReport(n, x_between, principal_between, nested, outside)


@dataclass(frozen=True)
class GapReport:
    n: int
    gap: object
    bound: Fraction
    certified: bool

    def to_dict(self):
        return {
            "n": self.n,
            "gap": str(self.gap),
            "bound": str(self.bound),
            "certified": self.certified,
        }


def convergence_gap(x, table, n):
    """|x - p_n/q_n| against the bound 2/q_n, decided exactly."""
    _check_prefix(x, table, n)
    row = table[n]
    gap = abs(x - row.principal)
    bound = Fraction(2, row.q)
    return GapReport(n, gap, bound, gap < bound)


def complete_quotient_check(x, n):
    """x = (p''_n + p'_n z)/(q''_n + q'_n z) with z = T^n(x), exactly.

    Raises:
        InputError: the expansion of x ends before n digits
    """
    x = check_unit_interval(x)
    e = expand(x, max_digits=n)
    digits = e.unrolled(n)
    if len(digits) < n:
        raise InputError(f"{x} has only {len(digits)} OOCF digits")
    row = convergent_table(digits)[n]
    z = x
    for _ in range(n):
        z = oocf_map(z)
    value = (row.p_pseudo + row.p_sub * z) / (row.q_pseudo + row.q_sub * z)
    return value == x


def principal_convergents(x, qmax=None, n_max=None):
    """Principal convergents p_n/q_n (n >= 1) of the canonical expansion.

    Stops at the first q_n > qmax or after n_max rows, whichever is given.
    """
    if qmax is None and n_max is None:
        raise InputError("principal_convergents needs qmax or n_max")
    x = check_unit_interval(x)
    chunk = n_max if n_max is not None else 32
    while True:
        digits = expand(x, max_digits=chunk).unrolled(chunk)
        out = []
        for t in convergent_table(digits)[1:]:
            if qmax is not None and t.q > qmax:
                return out
            out.append(t.principal)
        if n_max is not None or len(digits) < chunk:
            return out
        chunk *= 2
        logger.debug("%s: extending convergent search to %s digits", x, chunk)
