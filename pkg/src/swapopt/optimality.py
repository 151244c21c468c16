"""Average swap distance, its baselines and extremes, and the optimality score.

All quantities are exact :class:`~fractions.Fraction` values. Enumeration over
probability shufflings is done on integers: probabilities are scaled by the
least common multiple of their denominators, so ``<d>`` of every shuffling is
an integer divided by that scale squared.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations
from math import factorial, lcm, perm
from typing import Sequence

import numpy as np

from ._errors import (
    CapacityError,
    ConsistencyError,
    InvalidArgumentError,
    Undefined,
    UnsupportedError,
)
from .distribution import OrderDistribution, dominance, nonzero_support, ranked, simpson
from .permutohedron import Permutohedron

DEFAULT_ENUM_CAP = 40320
WITNESS_CAP = 1024

# Hexagon positions (0 = the vertex holding the largest probability) that
# receive the 1st, 2nd, ... 6th largest probability in the two optimal
# arrangements, which mirror each other.
OPTIMAL_HEXAGON_FILL = (0, 1, 5, 2, 4, 3)
OPTIMAL_HEXAGON_FILL_MIRROR = (0, 5, 1, 4, 2, 3)


def _check(graph: Permutohedron, d: OrderDistribution) -> None:
    if d.n != graph.n:
        raise InvalidArgumentError(f"distribution has n={d.n} but permutohedron has n={graph.n}")


def average_swap_distance(graph: Permutohedron, d: OrderDistribution) -> Fraction:
    """Probability-weighted mean swap distance between two independent draws."""
    _check(graph, d)
    p = d.probs
    D = graph.dist
    total = Fraction(0)
    for i in range(graph.N):
        if p[i]:
            total += p[i] * sum((int(D[i, j]) * p[j] for j in range(graph.N) if p[j]), Fraction(0))
    return total


def local_average_swap_distance(graph: Permutohedron, d: OrderDistribution, i: int) -> Fraction:
    """Mean swap distance from vertex ``i`` to a draw from ``d``."""
    _check(graph, d)
    if not 0 <= i < graph.N:
        raise InvalidArgumentError(f"vertex index {i} out of range [0, {graph.N})")
    return sum((int(graph.dist[i, j]) * p for j, p in enumerate(d.probs)), Fraction(0))


def local_bounds(graph: Permutohedron, d: OrderDistribution, i: int) -> tuple[Fraction, Fraction]:
    """Tight bounds of the local mean distance from ``i`` over all shufflings.

    The smallest value pairs the largest probabilities with the smallest
    distances from ``i``; the largest value pairs them with the largest.
    """
    _check(graph, d)
    if not 0 <= i < graph.N:
        raise InvalidArgumentError(f"vertex index {i} out of range [0, {graph.N})")
    pi = ranked(d).pi
    row = sorted(int(x) for x in graph.dist[i])
    low = sum((p * x for p, x in zip(pi, row)), Fraction(0))
    high = sum((p * x for p, x in zip(pi, reversed(row))), Fraction(0))
    return low, high


def distance_mass(graph: Permutohedron, d: OrderDistribution) -> tuple[Fraction, ...]:
    """``P(c)``: probability that two independent draws are at swap distance ``c``."""
    _check(graph, d)
    mass = [Fraction(0)] * (graph.d_max + 1)
    p = d.probs
    for i in range(graph.N):
        if not p[i]:
            continue
        for j in range(graph.N):
            if p[j]:
                mass[int(graph.dist[i, j])] += p[i] * p[j]
    return tuple(mass)


def max_average_swap_distance(n: int) -> Fraction:
    """Largest ``<d>`` any distribution on ``n`` elements can reach, ``d_max / 2``.

    Attained by the uniform distribution and by two antipodal orders at 1/2.
    It is also an upper bound for every ``n``: ``<d>`` sums, over the
    ``n(n-1)/2`` element pairs, the probability that two draws disagree on
    that pair, and each such probability is at most 1/2.
    """
    return Fraction(n * (n - 1), 4)


def expected_random_shuffle(d: OrderDistribution) -> Fraction:
    """Mean of ``<d>`` over all shufflings of the probabilities of ``d``."""
    N = d.N
    d_max = d.n * (d.n - 1) // 2
    return dominance(d) * Fraction(N, N - 1) * Fraction(d_max, 2)


def expected_die_roll(d: OrderDistribution, F: int | None = None) -> Fraction:
    """Expected ``<d>`` when each of ``F`` observations picks an order uniformly."""
    if F is None:
        F = d.F
    if F is None or F < 2:
        raise InvalidArgumentError(f"F must be an integer >= 2, got {F!r}")
    return Fraction(F - 1, F) * max_average_swap_distance(d.n)


@dataclass(frozen=True)
class MinimizerSet:
    """Extreme ``<d>`` over shufflings and the arrangements that reach it.

    ``count`` is the number of shufflings (out of ``total = N!``) attaining
    ``value``. ``witnesses`` holds the distinct arrangements, vertex by vertex,
    truncated to ``WITNESS_CAP`` entries.
    """

    value: Fraction
    witnesses: tuple[tuple[Fraction, ...], ...]
    count: int
    total: int

    @property
    def fraction(self) -> Fraction:
        return Fraction(self.count, self.total)


@dataclass(frozen=True, eq=False)
class ShuffleSpace:
    """Every placement of the non-zero probabilities onto distinct vertices.

    Zero probabilities are interchangeable, so each placement stands for
    ``(N - m)!`` shufflings of the full vector. ``values[k] / scale`` is
    ``<d>`` for placement ``k``.
    """

    N: int
    items: tuple[Fraction, ...]
    placements: np.ndarray = field(repr=False)
    values: np.ndarray = field(repr=False)
    scale: int

    @property
    def multiplicity(self) -> int:
        return factorial(self.N - len(self.items))

    def arrangement(self, k: int) -> tuple[Fraction, ...]:
        out = [Fraction(0)] * self.N
        for item, vertex in zip(self.items, self.placements[k]):
            out[int(vertex)] = item
        return tuple(out)

    def extreme(self, which: str = "min") -> MinimizerSet:
        target = self.values.min() if which == "min" else self.values.max()
        hits = np.flatnonzero(self.values == target)
        seen: dict[tuple, None] = {}
        for k in hits:
            if len(seen) >= WITNESS_CAP:
                break
            seen.setdefault(self.arrangement(int(k)), None)
        return MinimizerSet(
            value=Fraction(int(target), self.scale),
            witnesses=tuple(seen),
            count=len(hits) * self.multiplicity,
            total=factorial(self.N),
        )

    def mean(self) -> Fraction:
        return Fraction(int(self.values.sum()), self.scale * len(self.values))

    def omega_values(self, avg_r: Fraction, avg_min: Fraction) -> list[Fraction]:
        return [(avg_r - Fraction(int(v), self.scale)) / (avg_r - avg_min) for v in self.values]


def shuffle_space(
    graph: Permutohedron, d: OrderDistribution, enum_cap: int = DEFAULT_ENUM_CAP
) -> ShuffleSpace:
    """Enumerate ``<d>`` over all shufflings of ``d``'s probabilities.

    Raises
    ------
    CapacityError
        If the number of placements ``N! / (N - m)!`` exceeds ``enum_cap``.
    """
    _check(graph, d)
    m, support = nonzero_support(d)
    n_placements = perm(graph.N, m)
    if n_placements > enum_cap:
        raise CapacityError(
            f"{n_placements} placements of {m} non-zero probabilities on {graph.N} vertices "
            f"exceed the enumeration cap {enum_cap}"
        )
    items = tuple(d.probs[k] for k in support)
    scale_root = lcm(*(p.denominator for p in items))
    weights = [int(p * scale_root) for p in items]
    safe = graph.d_max * scale_root * scale_root < 2**62
    dtype = np.int64 if safe else object
    w = np.array(weights, dtype=dtype)

    placements = np.array(list(permutations(range(graph.N), m)), dtype=np.int64).reshape(-1, m)
    D = graph.dist if safe else graph.dist.astype(object)
    values = np.zeros(len(placements), dtype=dtype)
    for a in range(m):
        for b in range(a + 1, m):
            values = values + 2 * w[a] * w[b] * D[placements[:, a], placements[:, b]]
    return ShuffleSpace(
        N=graph.N, items=items, placements=placements, values=values, scale=scale_root**2
    )


def min_bruteforce(
    graph: Permutohedron, d: OrderDistribution, enum_cap: int = DEFAULT_ENUM_CAP
) -> MinimizerSet:
    """Exact minimum of ``<d>`` over all shufflings, by enumeration."""
    return shuffle_space(graph, d, enum_cap).extreme("min")


def max_bruteforce(
    graph: Permutohedron, d: OrderDistribution, enum_cap: int = DEFAULT_ENUM_CAP
) -> Fraction:
    """Exact maximum of ``<d>`` over all shufflings, by enumeration."""
    return shuffle_space(graph, d, enum_cap).extreme("max").value


def min_closed_form_n3(d: OrderDistribution) -> Fraction:
    """Minimum ``<d>`` over shufflings for ``n = 3`` from the sorted probabilities."""
    if d.n != 3:
        raise UnsupportedError("the closed form only holds for n = 3")
    p1, p2, p3, p4, p5, p6 = ranked(d).pi
    cross = (
        p1 * (2 * p2 + p4)
        + p2 * (2 * p4 + p6)
        + p3 * (2 * p1 + p2)
        + p4 * (2 * p6 + p5)
        + p5 * (2 * p3 + p1)
        + p6 * (2 * p5 + p3)
    )
    return 3 * dominance(d) - 2 * cross


def optimal_arrangements_n3(graph: Permutohedron, d: OrderDistribution, start: int | None = None):
    """The two optimal arrangements with the largest probability at ``start``.

    ``start`` is a hexagon position (default 0, the identity order). Returns
    two probability vectors in canonical vertex order.
    """
    _check(graph, d)
    if graph.n != 3:
        raise UnsupportedError("sorted assignment is only defined for n = 3")
    hexagon = graph.hexagon()
    start = start or 0
    pi = ranked(d).pi
    out = []
    for fill in (OPTIMAL_HEXAGON_FILL, OPTIMAL_HEXAGON_FILL_MIRROR):
        probs = [Fraction(0)] * 6
        for value, pos in zip(pi, fill):
            probs[hexagon[(pos + start) % 6]] = value
        out.append(tuple(probs))
    return out


def min_by_sorted_assignment(graph: Permutohedron, d: OrderDistribution) -> MinimizerSet:
    """Minimum ``<d>`` for ``n = 3`` by placing sorted probabilities on the hexagon.

    Only the two canonical arrangements are evaluated, so ``count`` is the
    number of those two that reach the reported value and ``total`` is 2.
    """
    arrangements = optimal_arrangements_n3(graph, d)
    values = [
        average_swap_distance(graph, OrderDistribution(n=3, probs=a)) for a in arrangements
    ]
    if values[0] != values[1]:
        raise ConsistencyError(f"mirror arrangements disagree: {values[0]} != {values[1]}")
    unique = tuple(dict.fromkeys(arrangements))
    return MinimizerSet(value=values[0], witnesses=unique, count=2, total=2)


def omega(
    avg_d: Fraction,
    avg_d_random: Fraction,
    avg_d_min: Fraction,
    d: OrderDistribution | None = None,
) -> Fraction | Undefined:
    """Optimality score ``(<d>_r - <d>) / (<d>_r - <d>_min)``.

    Returns :class:`Undefined` when the denominator vanishes, which happens
    when every shuffling has the same ``<d>``: a point mass, a uniform
    distribution, or more generally all but one probability equal.
    """
    if avg_d_random < avg_d_min:
        raise ConsistencyError(f"random baseline {avg_d_random} below minimum {avg_d_min}")
    if avg_d_random == avg_d_min:
        if d is not None:
            m, _ = nonzero_support(d)
            if m == 1:
                return Undefined("only one order has non-zero probability")
            if len(set(d.probs)) == 1:
                return Undefined("all orders are equally likely")
        return Undefined("every shuffling of the probabilities has the same <d>")
    return (avg_d_random - avg_d) / (avg_d_random - avg_d_min)


def bounds(d: OrderDistribution) -> tuple[Fraction, Fraction]:
    """Lower and upper bounds of ``<d>`` as functions of the dominance index.

    For ``n = 3`` the refined hexagon bounds are intersected with the general
    ``d_max * S_bar`` ceiling, which is tighter near a point mass.
    """
    s_bar = dominance(d)
    d_max = d.n * (d.n - 1) // 2
    low, high = s_bar, min(max_average_swap_distance(d.n), d_max * s_bar)
    if d.n == 3:
        low = max(low, 2 * s_bar - Fraction(2, 3))
        high = min(high, s_bar + 1, 2 * s_bar + Fraction(1, 2))
    return low, high


def omega_min_m2(n: int) -> Fraction:
    """Smallest score reachable with two non-zero probabilities, for any ``pi_1``.

    It is reached by putting the two orders at maximum swap distance.
    """
    if n < 3:
        raise InvalidArgumentError(f"n must be >= 3, got {n}")
    N = factorial(n)
    c = Fraction(N, N - 1)
    d_max = n * (n - 1) // 2
    return (c - 2) * d_max / (c * d_max - 2)


def antipodal_pair_sum(pi: Sequence[Fraction]) -> Fraction:
    """``pi1*pi6 + pi2*pi5 + pi3*pi4`` for six sorted probabilities."""
    return pi[0] * pi[5] + pi[1] * pi[4] + pi[2] * pi[3]


@dataclass(frozen=True)
class SwapReport:
    n: int
    avg_d: Fraction
    avg_d_random: Fraction
    avg_d_min: Fraction
    avg_d_max_global: Fraction
    omega: Fraction | Undefined
    S: Fraction
    S_bar: Fraction
    m: int
    d_max: int
    distance_mass: tuple[Fraction, ...]
    bounds: tuple[Fraction, Fraction]
    Z: Fraction | None = None
    pi_o: Fraction | None = None
    min_method: str = "bruteforce"

    @property
    def is_optimal(self) -> bool:
        return self.avg_d == self.avg_d_min


def analyze(
    graph: Permutohedron,
    d: OrderDistribution,
    verify_bruteforce: bool | None = None,
    enum_cap: int = DEFAULT_ENUM_CAP,
) -> SwapReport:
    """Full scorecard for one distribution.

    For ``n = 3`` the minimum comes from the closed form; with
    ``verify_bruteforce`` (default on for ``n = 3``) it is also enumerated and
    the two must agree exactly. For other ``n`` the minimum is always
    enumerated, which raises :class:`CapacityError` past ``enum_cap``.
    """
    _check(graph, d)
    if verify_bruteforce is None:
        verify_bruteforce = graph.n == 3
    m, _ = nonzero_support(d)
    avg_d = average_swap_distance(graph, d)
    avg_r = expected_random_shuffle(d)

    space = None
    if graph.n == 3:
        avg_min = min_closed_form_n3(d)
        method = "closed-form"
        if verify_bruteforce and perm(graph.N, m) <= enum_cap:
            space = shuffle_space(graph, d, enum_cap)
            brute = space.extreme("min").value
            if brute != avg_min:
                raise ConsistencyError(f"closed form {avg_min} != brute force {brute}")
            method = "closed-form+bruteforce"
    else:
        space = shuffle_space(graph, d, enum_cap)
        avg_min = space.extreme("min").value
        method = "bruteforce"

    pi_o = None
    if space is not None:
        hits = int(np.count_nonzero(space.values == space.values.min()))
        pi_o = Fraction(hits, len(space.values))

    Z = antipodal_pair_sum(ranked(d).pi) if graph.n == 3 else None
    return SwapReport(
        n=graph.n,
        avg_d=avg_d,
        avg_d_random=avg_r,
        avg_d_min=avg_min,
        avg_d_max_global=max_average_swap_distance(graph.n),
        omega=omega(avg_d, avg_r, avg_min, d),
        S=simpson(d),
        S_bar=dominance(d),
        m=m,
        d_max=graph.d_max,
        distance_mass=distance_mass(graph, d),
        bounds=bounds(d),
        Z=Z,
        pi_o=pi_o,
        min_method=method,
    )
