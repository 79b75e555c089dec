"""
Verification suites for the odd-odd continued fraction library, run as Prefect flows
"""

import random
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

import pandas as pd
from prefect import flow, get_run_logger, task
from prefect.task_runners import ThreadPoolTaskRunner

from utilities.util_approx import (
    intermediate_monotonicity,
    merge_minima,
    partition_odd_range,
    require_irrational,
    scan_odd_denominators,
    verify_best_approximations,
)
from utilities.util_arith import (
    Parity,
    QuadIrr,
    classify,
    is_square,
    reduced_rationals,
)
from utilities.util_convergents import (
    convergent_table,
    convergent_table_matrix,
    principal_recursion,
)
from utilities.util_data import payload
from utilities.util_errors import InputError
from utilities.util_maps import (
    HittingSet,
    Interval,
    branch_inverse,
    eicf_map,
    farey,
    gauss,
    jump_transform,
    measure_check,
    oocf_map,
    romik,
)
from utilities.util_oocf import (
    Terminator,
    all_expansions,
    detect_period,
    digits_matrix,
    evaluate,
    expand,
)
from utilities.util_parse import parse_number
from utilities.util_rcf import (
    change_rcf,
    eicf_best_to_oocf,
    rcf_expand,
    rcf_to_oocf,
    rcf_value,
    verify_conjugacy,
    verify_intermediate,
)
from utilities.util_settings import get_settings

FIXTURES = (
    "(-1+1*sqrt(2))/1",
    "(-1+1*sqrt(5))/2",
    "(-1+1*sqrt(3))/1",
    "(-3+1*sqrt(13))/2",
    "(-2+1*sqrt(7))/1",
)

MEASURE_INTERVALS = (("1/2", "1/1"), ("1/3", "2/3"), ("1/10", "1/5"))


@dataclass(frozen=True)
class SuiteReport:
    """Outcome of one suite: a row per checked item and an overall verdict."""

    suite: str
    rows: pd.DataFrame
    passed: bool

    def to_dict(self):
        return payload(
            suite=self.suite,
            passed=self.passed,
            rows=self.rows.to_dict(orient="records"),
        )


def _finish(suite, rows):
    logger = get_run_logger()
    df = pd.DataFrame(rows)
    passed = bool(df["pass"].all()) if not df.empty else True
    failed = 0 if df.empty else int((~df["pass"].astype(bool)).sum())
    logger.info("%s: %s rows, %s failed", suite, len(df), failed)
    return SuiteReport(suite, df, passed)


def _chunks(items, parts):
    parts = max(1, min(parts, len(items)))
    return [items[i::parts] for i in range(parts)]


def quadratic_fixtures(d_max=50):
    """frac(sqrt(D)) for every non-square D <= d_max, in the CLI grammar."""
    return [
        f"(-{isqrt(d)}+1*sqrt({d}))/1" for d in range(2, d_max + 1) if not is_square(d)
    ]


@task(name="Scan Odd Denominators")
def scan_range(text, b_lo, b_hi):
    return scan_odd_denominators(parse_number(text), b_lo, b_hi)


@task(name="Compare Best Approximations")
def compare_best(text, qmax, chunks):
    """Merge the scanned minima and hold them against the OOCF principal convergents.

    Args:
        text (str): The input in the CLI grammar
        qmax (int): Largest denominator
        chunks (list): Per-partition scan results in ascending b

    Returns:
        dict: ApproxReport row
    """
    logger = get_run_logger()
    x = parse_number(text)
    records = merge_minima(chunks, x.D)
    brute = [Fraction(a, b) for a, b, _, _ in records if b > 1]
    report = verify_best_approximations(x, qmax, brute)
    logger.info("%s: %s best 1-rationals up to %s", text, len(brute), qmax)
    return report.to_dict()


@flow(
    name="Verify Best 1-Rational Approximations",
    task_runner=ThreadPoolTaskRunner(max_workers=get_settings().threads),
)
def best_approximation_flow(inputs=None, qmax=10_000):
    """Principal convergents against the brute-force odd-denominator scan.

    The b-range is split into OODD_THREADS partitions scanned concurrently.
    """
    inputs = list(inputs or FIXTURES)
    parts = partition_odd_range(qmax, get_settings().threads) if qmax >= 1 else []
    rows = []
    for text in inputs:
        require_irrational(parse_number(text))
        futures = [scan_range.submit(text, lo, hi) for lo, hi in parts]
        chunks = [f.result() for f in futures]
        rows.append(compare_best(text, qmax, chunks))
    return _finish("thm1", rows)


@task(name="Detect Period")
def period_row(text):
    x = parse_number(text)
    start, length = detect_period(x)
    e = expand(x, max_digits=start + length)
    value = evaluate(e)
    return {
        "input": text,
        "preperiod": start,
        "period": length,
        "expansion": str(e),
        "value": str(value),
        "pass": e.terminator is Terminator.PERIODIC and value == x,
    }


@flow(name="Verify Eventual Periodicity")
def periodicity_flow(inputs=None):
    """Period detection and exact evaluation round trip for quadratic irrationals."""
    inputs = list(inputs or quadratic_fixtures())
    return _finish("thm2", [period_row(text) for text in inputs])


@task(name="Verify Intermediate Convergents")
def intermediate_row(text, n_max):
    return verify_intermediate(parse_number(text), n_max).to_dict()


@flow(name="Verify OOCF Convergents Are Intermediate Convergents")
def intermediate_flow(inputs=None, n_max=10):
    inputs = list(inputs or FIXTURES)
    return _finish("intermediate", [intermediate_row(text, n_max) for text in inputs])


@task(name="Check Intermediate Chains")
def chain_rows(text, n):
    """Monotone denominator and error chains at every level 1..n."""
    x = parse_number(text)
    return [
        {"level": level, **intermediate_monotonicity(x, level).to_dict()}
        for level in range(1, n + 1)
    ]


@flow(name="Verify Intermediate Monotonicity")
def monotonicity_flow(inputs=None, n=10):
    inputs = list(inputs or FIXTURES)
    rows = []
    for text in inputs:
        rows.extend(chain_rows(text, n))
    return _finish("keita", rows)


@task(name="Verify Conjugacy")
def conjugacy_row(text, steps):
    return verify_conjugacy(parse_number(text), steps).to_dict()


@flow(name="Verify OOCF and EICF Conjugacy")
def conjugacy_flow(inputs=None, steps=30, qmax=0):
    """f o T_OOCF = T_EICF o f, digit by digit and convergent by convergent.

    Args:
        inputs (list, optional): Values to check. Defaults to the fixtures.
        steps (int, optional): Orbit length and digit count. Defaults to 30.
        qmax (int, optional): Also sweep every rational in [0, 1] with q <= qmax.
    """
    texts = list(inputs or FIXTURES)
    if qmax:
        texts += [str(r) for r in reduced_rationals(qmax, closed=True)]
    return _finish("conjugacy", [conjugacy_row(text, steps) for text in texts])


@task(name="Check EICF Best Approximations")
def eicf_best_row(text, n_max):
    return eicf_best_to_oocf(parse_number(text), n_max).to_dict()


@flow(name="Verify EICF Approximations Are OOCF Convergents")
def eicf_best_flow(inputs=None, n_max=10):
    inputs = list(inputs or FIXTURES)
    return _finish("eicf-best", [eicf_best_row(text, n_max) for text in inputs])


@task(name="Check Invariant Measure")
def measure_row(lo, hi, k_max, tol):
    interval = Interval(parse_number(lo), parse_number(hi))
    return measure_check(interval, k_max, tol).to_dict()


@flow(name="Verify Invariant Measure")
def measure_flow(intervals=None, k_max=None, tol=None):
    intervals = list(intervals or MEASURE_INTERVALS)
    return _finish("measure", [measure_row(lo, hi, k_max, tol) for lo, hi in intervals])


def _two_expansions(x):
    canonical, alternative = all_expansions(x)
    terminator = (
        Terminator.FINITE if classify(x) is Parity.ONE_RATIONAL else Terminator.TAIL_2M1
    )
    return {
        "input": str(x),
        "canonical": str(canonical),
        "alternative": str(alternative),
        "pass": (
            canonical.terminator is terminator
            and alternative.terminator is terminator
            and canonical.digits[:-1] == alternative.digits[:-1]
            and canonical.digits[-1] != alternative.digits[-1]
            and evaluate(canonical) == x
            and evaluate(alternative) == x
        ),
    }


@task(name="Check Two Expansions")
def expansion_rows(values):
    return [_two_expansions(x) for x in values]


@flow(
    name="Verify Two Expansions of Rationals",
    task_runner=ThreadPoolTaskRunner(max_workers=get_settings().threads),
)
def expansions_flow(qmax=99):
    """Every rational in (0, 1) with q <= qmax has exactly two expansions of its parity type."""
    chunks = _chunks(reduced_rationals(qmax), get_settings().threads)
    futures = [expansion_rows.submit(chunk) for chunk in chunks]
    rows = [row for f in futures for row in f.result()]
    return _finish("expansions", rows)


@task(name="Check Jump Transformations")
def jump_rows(values):
    rows = []
    for x in values:
        oocf_ok = oocf_map(x) == jump_transform(romik, HittingSet.E2, x)
        eicf_ok = eicf_map(x) == jump_transform(romik, HittingSet.E1, x)
        gauss_ok = gauss(x) == jump_transform(farey, HittingSet.E_GAUSS, x)
        rows.append(
            {
                "input": str(x),
                "oocf": oocf_ok,
                "eicf": eicf_ok,
                "gauss": gauss_ok,
                "pass": oocf_ok and eicf_ok and gauss_ok,
            }
        )
    return rows


@flow(
    name="Verify Jump Transformations",
    task_runner=ThreadPoolTaskRunner(max_workers=get_settings().threads),
)
def jump_flow(qmax=200, inputs=None):
    """T_OOCF, T_EICF and the Gauss map as jump transformations of Romik and Farey."""
    values = reduced_rationals(qmax, closed=True)
    values += [parse_number(text) for text in inputs or FIXTURES]
    futures = [jump_rows.submit(chunk) for chunk in _chunks(values, get_settings().threads)]
    return _finish("jump", [row for f in futures for row in f.result()])


def random_digits(rng, max_len, a_max=9):
    """A random legal OOCF digit string of length 1..max_len."""
    out = []
    for _ in range(rng.randint(1, max_len)):
        a = rng.randint(1, a_max)
        eps = 1 if a == 1 else rng.choice((1, -1))
        out.append((a, eps))
    return out


def identity_failures(digits):
    """Names of the convergent identities that fail for one digit string."""
    failures = []
    table = convergent_table(digits)
    if table != convergent_table_matrix(digits):
        failures.append("scalar_vs_matrix")
    if [(t.p, t.q) for t in table[1:]] != principal_recursion(digits):
        failures.append("principal_recursion")
    if not digits_matrix(digits).theta_coset_member():
        failures.append("theta_coset")
    prev = table[0]
    for t in table[1:]:
        n = t.n
        if classify(t.principal) is not Parity.ONE_RATIONAL:
            failures.append(f"principal_parity@{n}")
        if t.q_sub and classify(t.sub) is not Parity.INF_RATIONAL:
            failures.append(f"sub_parity@{n}")
        if classify(t.pseudo) is not Parity.INF_RATIONAL:
            failures.append(f"pseudo_parity@{n}")
        if (t.p, t.q) != (t.p_sub + t.p_pseudo, t.q_sub + t.q_pseudo):
            failures.append(f"sum@{n}")
        if t.sub_pseudo_det != (-1) ** n * t.eps_prod:
            failures.append(f"sub_pseudo_det@{n}")
        if t.adjacent_det != 2 * (-1) ** (n + 1) * prev.eps_prod:
            failures.append(f"adjacent_det@{n}")
        if t.q <= prev.q:
            failures.append(f"increasing@{n}")
        prev = t
    return failures


@task(name="Check Convergent Identities")
def identity_rows(seed, samples, max_len):
    rng = random.Random(seed)
    bad = []
    for _ in range(samples):
        digits = random_digits(rng, max_len)
        failures = identity_failures(digits)
        if failures:
            bad.append((digits, failures))
    return {
        "seed": seed,
        "samples": samples,
        "failures": len(bad),
        "first_failure": str(bad[0]) if bad else "",
        "pass": not bad,
    }


@flow(
    name="Verify Convergent Identities",
    task_runner=ThreadPoolTaskRunner(max_workers=get_settings().threads),
)
def identities_flow(samples=10_000, max_len=30, seed=0):
    """Random digit strings, split into seeded batches, one per worker."""
    threads = get_settings().threads
    sizes = [samples // threads + (1 if i < samples % threads else 0) for i in range(threads)]
    futures = [
        identity_rows.submit(seed + i, size, max_len) for i, size in enumerate(sizes) if size
    ]
    return _finish("identities", [f.result() for f in futures])


def _convert_rational(x):
    direct = expand(x, max_digits=x.denominator + 1)
    converted = rcf_to_oocf(rcf_expand(x))
    return {"input": str(x), "expansion": str(direct), "pass": converted == direct}


def _convert_stream(x, digits):
    direct = expand(x, max_digits=digits).unrolled(digits)
    converted = rcf_to_oocf(rcf_expand(x, max_digits=3 * digits + 3), max_digits=digits)
    return {
        "input": str(x),
        "expansion": str(converted),
        "pass": len(converted.digits) == len(direct) and list(converted.digits) == direct,
    }


@task(name="Check RCF Conversion")
def convert_rows(values, digits):
    return [
        _convert_stream(x, digits) if isinstance(x, QuadIrr) else _convert_rational(x)
        for x in values
    ]


@task(name="Check RCF Branch Rewrite")
def change_rcf_row(pairs, seed, den_max=50):
    """evaluate(change_rcf(d, e)) against f_d(evaluate(e)) on random pairs."""
    rng = random.Random(seed)
    mismatches = []
    for _ in range(pairs):
        a = rng.randint(1, 12)
        eps = 1 if a == 1 else rng.choice((1, -1))
        q = rng.randint(1, den_max)
        t = Fraction(rng.randint(0, q), q)
        lhs = rcf_value(change_rcf((a, eps), rcf_expand(t)))
        if lhs != branch_inverse((a, eps), t):
            mismatches.append(f"({a},{eps}) on {t}")
    return {
        "input": f"{pairs} random pairs",
        "expansion": "; ".join(mismatches[:5]),
        "pass": not mismatches,
    }


@flow(
    name="Verify RCF to OOCF Conversion",
    task_runner=ThreadPoolTaskRunner(max_workers=get_settings().threads),
)
def convert_flow(qmax=150, inputs=None, digits=30, pairs=1000, seed=0):
    """Streaming converter against direct expansion, plus the branch rewrite cross-check."""
    values = reduced_rationals(qmax, closed=True)
    values += [parse_number(text) for text in inputs or FIXTURES]
    futures = [
        convert_rows.submit(chunk, digits) for chunk in _chunks(values, get_settings().threads)
    ]
    rows = [row for f in futures for row in f.result()]
    if pairs:
        rows.append(change_rcf_row(pairs, seed))
    return _finish("convert", rows)


SUITES = {
    "thm1": best_approximation_flow,
    "thm2": periodicity_flow,
    "intermediate": intermediate_flow,
    "keita": monotonicity_flow,
    "conjugacy": conjugacy_flow,
    "eicf-best": eicf_best_flow,
    "measure": measure_flow,
    "expansions": expansions_flow,
    "jump": jump_flow,
    "identities": identities_flow,
    "convert": convert_flow,
}


def run_suite(name, inputs=None, qmax=None, n=None):
    """Run a suite by its command-line token with the options that apply to it.

    Raises:
        InputError: unknown suite name
    """
    if name not in SUITES:
        raise InputError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    inputs = list(inputs) if inputs else None
    options = {
        "thm1": {"inputs": inputs, "qmax": qmax},
        "thm2": {"inputs": inputs},
        "intermediate": {"inputs": inputs, "n_max": n},
        "keita": {"inputs": inputs, "n": n},
        "conjugacy": {"inputs": inputs, "steps": n, "qmax": qmax},
        "eicf-best": {"inputs": inputs, "n_max": n},
        "measure": {},
        "expansions": {"qmax": qmax},
        "jump": {"inputs": inputs, "qmax": qmax},
        "identities": {"samples": n},
        "convert": {"inputs": inputs, "qmax": qmax, "digits": n},
    }[name]
    return SUITES[name](**{k: v for k, v in options.items() if v is not None})


# Local Testing
if __name__ == "__main__":
    for suite in SUITES.values():
        suite()
