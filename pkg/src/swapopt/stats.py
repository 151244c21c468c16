"""Exact chance models and tests for ensembles of order distributions."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial, prod
from typing import Iterable, Sequence

from ._errors import ConsistencyError, InvalidArgumentError, Undefined
from .distribution import OrderDistribution
from .optimality import DEFAULT_ENUM_CAP, analyze, min_bruteforce
from .permutohedron import Permutohedron
from .structure import detect_contiguity


def p_optimal_given_m(m: int) -> Fraction:
    """Chance that a random shuffling of ``m`` distinct non-zero probabilities is optimal (n = 3)."""
    if not 1 <= m <= 6:
        raise InvalidArgumentError(f"m must be in [1, 6], got {m}")
    if m == 1:
        return Fraction(1)
    return Fraction(factorial(6 - m), 60)


def p_contiguous_given_m(m: int) -> Fraction:
    """Chance that ``m`` randomly chosen hexagon vertices form a path."""
    if not 0 <= m <= 6:
        raise InvalidArgumentError(f"m must be in [0, 6], got {m}")
    if m in (0, 6):
        return Fraction(1)
    return Fraction(factorial(m) * factorial(6 - m), 120)


def pi_optimal_numeric(
    graph: Permutohedron, d: OrderDistribution, enum_cap: int = DEFAULT_ENUM_CAP
) -> Fraction:
    """Exact share of the ``N!`` shufflings of ``d`` that attain the minimum ``<d>``."""
    return min_bruteforce(graph, d, enum_cap).fraction


def _check_probability(p) -> None:
    if not 0 <= p <= 1:
        raise InvalidArgumentError(f"success probability {p!r} outside [0, 1]")


def poisson_binomial_pmf(probs: Sequence) -> list:
    """PMF of the number of successes among independent Bernoulli trials.

    Exact when ``probs`` are Fractions; the convolution only adds and
    multiplies, so the arithmetic type of the input is kept.
    """
    pmf = [1]
    for p in probs:
        _check_probability(p)
        nxt = [0] * (len(pmf) + 1)
        for k, mass in enumerate(pmf):
            nxt[k] += mass * (1 - p)
            nxt[k + 1] += mass * p
        pmf = nxt
    return pmf


def poisson_binomial_right_tail(probs: Sequence, k: int):
    """``P(B >= k)`` for a Poisson binomial ``B`` with the given success probabilities."""
    probs = list(probs)
    if not 0 <= k <= len(probs):
        raise InvalidArgumentError(f"k must be in [0, {len(probs)}], got {k}")
    pmf = poisson_binomial_pmf(probs)
    return sum(pmf[k:])


def contiguity_ensemble_p(ms: Sequence[int], contiguous: Sequence[bool]) -> Fraction:
    """Right-tail p-value of the number of contiguous trials.

    When every trial is contiguous this is the product of the per-trial
    chances, grouped by ``m``.
    """
    if len(ms) != len(contiguous):
        raise InvalidArgumentError("ms and contiguous must have equal length")
    C = sum(bool(c) for c in contiguous)
    if C == len(ms):
        return prod((p_contiguous_given_m(m) ** t for m, t in Counter(ms).items()), start=Fraction(1))
    return poisson_binomial_right_tail([p_contiguous_given_m(m) for m in ms], C)


@dataclass(frozen=True)
class WilcoxonResult:
    V: Fraction
    p: Fraction
    n_used: int
    alternative: str = "less"


def _average_ranks(values: Sequence[Fraction]) -> list[Fraction]:
    order = sorted(range(len(values)), key=lambda k: values[k])
    ranks = [Fraction(0)] * len(values)
    i = 0
    while i < len(order):
        j = i
        while j + 1 < len(order) and values[order[j + 1]] == values[order[i]]:
            j += 1
        rank = Fraction(i + j + 2, 2)
        for k in order[i : j + 1]:
            ranks[k] = rank
        i = j + 1
    return ranks


def _signed_rank_null(doubled_ranks: Sequence[int]) -> Counter:
    """Counts of each doubled rank sum over all ``2**T`` sign assignments."""
    counts = Counter({0: 1})
    for r in doubled_ranks:
        nxt = Counter()
        for total, c in counts.items():
            nxt[total] += c
            nxt[total + r] += c
        counts = nxt
    return counts


def wilcoxon_signed_rank(
    pairs: Iterable[tuple], alternative: str = "less"
) -> WilcoxonResult | Undefined:
    """Exact Wilcoxon signed-rank test on paired differences ``x - y``.

    Zero differences are dropped and tied absolute differences share their
    average rank. ``V`` is the sum of ranks of positive differences. The
    p-value is exact over all sign assignments of the remaining ranks; the
    default alternative is that ``x`` tends to be smaller than ``y``.
    """
    if alternative not in ("less", "greater", "two-sided"):
        raise InvalidArgumentError(f"unknown alternative {alternative!r}")
    diffs = [Fraction(x) - Fraction(y) for x, y in pairs]
    if not diffs:
        raise InvalidArgumentError("at least one pair is required")
    diffs = [x for x in diffs if x != 0]
    if not diffs:
        return Undefined("all differences are zero")
    ranks = _average_ranks([abs(x) for x in diffs])
    V = sum((r for r, x in zip(ranks, diffs) if x > 0), Fraction(0))
    doubled = [int(2 * r) for r in ranks]
    null = _signed_rank_null(doubled)
    total = 2 ** len(diffs)
    v2 = int(2 * V)
    low = Fraction(sum(c for s, c in null.items() if s <= v2), total)
    high = Fraction(sum(c for s, c in null.items() if s >= v2), total)
    if alternative == "less":
        p = low
    elif alternative == "greater":
        p = high
    else:
        p = min(Fraction(1), 2 * min(low, high))
    return WilcoxonResult(V=V, p=p, n_used=len(diffs), alternative=alternative)


@dataclass(frozen=True)
class TrialRecord:
    """One distribution's contribution to an ensemble test."""

    label: str
    m: int
    pi_o: Fraction
    is_optimal: bool
    is_contiguous: bool
    avg_d: Fraction
    avg_d_random: Fraction
    avg_d_min: Fraction | None = None

    def __post_init__(self):
        if self.avg_d_min is not None and self.is_optimal != (self.avg_d == self.avg_d_min):
            raise ConsistencyError(f"trial {self.label!r}: optimality flag contradicts <d>_min")


def trial_from_distribution(
    graph: Permutohedron,
    d: OrderDistribution,
    label: str = "",
    enum_cap: int = DEFAULT_ENUM_CAP,
) -> TrialRecord:
    report = analyze(graph, d, verify_bruteforce=True, enum_cap=enum_cap)
    if report.pi_o is None:
        raise InvalidArgumentError("pi_o needs the shuffle enumeration; raise enum_cap")
    return TrialRecord(
        label=label,
        m=report.m,
        pi_o=report.pi_o,
        is_optimal=report.is_optimal,
        is_contiguous=detect_contiguity(graph, d),
        avg_d=report.avg_d,
        avg_d_random=report.avg_d_random,
        avg_d_min=report.avg_d_min,
    )


@dataclass(frozen=True)
class EnsembleResult:
    T: int
    B: int
    C: int
    p_optimal: Fraction
    p_contiguous: Fraction
    wilcoxon: WilcoxonResult | Undefined
    T_of_m: dict = field(default_factory=dict)


def run_ensemble(trials: Sequence[TrialRecord]) -> EnsembleResult:
    """Count optimal and contiguous trials and test both counts against chance.

    The contiguity chance model is the hexagon one, so trials must have n = 3.
    """
    trials = list(trials)
    if not trials:
        raise InvalidArgumentError("the ensemble is empty")
    B = sum(t.is_optimal for t in trials)
    C = sum(t.is_contiguous for t in trials)
    ms = [t.m for t in trials]
    return EnsembleResult(
        T=len(trials),
        B=B,
        C=C,
        p_optimal=poisson_binomial_right_tail([t.pi_o for t in trials], B),
        p_contiguous=contiguity_ensemble_p(ms, [t.is_contiguous for t in trials]),
        wilcoxon=wilcoxon_signed_rank([(t.avg_d, t.avg_d_random) for t in trials]),
        T_of_m=dict(sorted(Counter(ms).items())),
    )
