"""Probability distributions over the vertices of a permutohedron.

Probabilities are kept as :class:`fractions.Fraction` so that optimality can
be decided by exact equality. Floats are accepted on input but converted with
``Fraction(x)`` (exact binary value) unless ``limit_denominator`` is given.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Mapping, Sequence

from ._errors import IngestionError, InvalidArgumentError
from .permutohedron import build_permutohedron, check_alphabet, default_alphabet


@dataclass(frozen=True)
class OrderDistribution:
    """Probability vector over the ``n!`` orders in canonical vertex order.

    ``counts`` and ``F`` are set only when the distribution was built from
    frequencies, in which case ``probs[i] == counts[i] / F``.
    """

    n: int
    probs: tuple[Fraction, ...]
    counts: tuple[int, ...] | None = None
    F: int | None = None

    def __post_init__(self):
        if len(self.probs) != factorial(self.n):
            raise InvalidArgumentError(
                f"expected {factorial(self.n)} probabilities for n={self.n}, got {len(self.probs)}"
            )
        if any(p < 0 for p in self.probs):
            raise InvalidArgumentError("probabilities must be non-negative")
        if sum(self.probs) != 1:
            raise InvalidArgumentError(f"probabilities sum to {sum(self.probs)}, not 1")

    @property
    def N(self) -> int:
        return len(self.probs)

    def __len__(self) -> int:
        return len(self.probs)

    def __iter__(self):
        return iter(self.probs)

    def __getitem__(self, k):
        return self.probs[k]


@dataclass(frozen=True)
class RankedProbs:
    """Probabilities sorted non-increasingly.

    ``order[r]`` is the vertex holding the ``r``-th largest probability (ties
    broken by vertex index) and ``rank_of_vertex`` is its inverse.
    """

    pi: tuple[Fraction, ...]
    order: tuple[int, ...]
    rank_of_vertex: tuple[int, ...]

    def tie_groups(self) -> list[tuple[int, ...]]:
        """Runs of equal values, as tuples of ranks."""
        groups: list[list[int]] = []
        for r, value in enumerate(self.pi):
            if groups and self.pi[groups[-1][0]] == value:
                groups[-1].append(r)
            else:
                groups.append([r])
        return [tuple(g) for g in groups]

    def has_ties(self, nonzero_only: bool = True) -> bool:
        values = [p for p in self.pi if p > 0] if nonzero_only else list(self.pi)
        return len(set(values)) != len(values)


def _as_fraction(x, limit_denominator: int | None = None) -> Fraction:
    f = Fraction(x)
    if limit_denominator is not None and not isinstance(x, (int, Fraction)):
        f = f.limit_denominator(limit_denominator)
    return f


def from_probs(
    n: int, probs: Sequence, limit_denominator: int | None = None
) -> OrderDistribution:
    """Distribution from a probability vector given in canonical vertex order."""
    values = tuple(_as_fraction(p, limit_denominator) for p in probs)
    return OrderDistribution(n=n, probs=values)


def from_count_vector(n: int, counts: Sequence[int]) -> OrderDistribution:
    counts = tuple(int(c) for c in counts)
    if len(counts) != factorial(n):
        raise InvalidArgumentError(f"expected {factorial(n)} counts for n={n}, got {len(counts)}")
    if any(c < 0 for c in counts):
        raise InvalidArgumentError("counts must be non-negative")
    F = sum(counts)
    if F == 0:
        raise InvalidArgumentError("all counts are zero")
    return OrderDistribution(
        n=n, probs=tuple(Fraction(c, F) for c in counts), counts=counts, F=F
    )


def from_counts(
    n: int, counts: Mapping[str, int], alphabet: str | None = None
) -> OrderDistribution:
    """Distribution from a mapping of order labels to frequencies.

    Orders missing from ``counts`` get frequency zero.

    >>> d = from_counts(3, {"SOV": 1, "SVO": 1})
    >>> d.F, max(d.probs)
    (2, Fraction(1, 2))
    """
    alphabet = check_alphabet(alphabet or default_alphabet(n), n)
    graph = build_permutohedron(n)
    vector = [0] * graph.N
    seen = set()
    for label, count in counts.items():
        try:
            k = graph.index_of_label(label, alphabet)
        except InvalidArgumentError as exc:
            raise IngestionError(str(exc)) from None
        if k in seen:
            raise IngestionError(f"duplicate order label {label!r}")
        seen.add(k)
        if isinstance(count, bool) or int(count) != count or count < 0:
            raise IngestionError(f"count for {label!r} must be a non-negative integer, got {count!r}")
        vector[k] = int(count)
    return from_count_vector(n, vector)


def simpson(d: OrderDistribution) -> Fraction:
    """Simpson index, the probability that two independent draws coincide."""
    return sum((p * p for p in d.probs), Fraction(0))


def dominance(d: OrderDistribution) -> Fraction:
    """Dominance index ``1 - simpson(d)``."""
    return 1 - simpson(d)


def nonzero_support(d: OrderDistribution) -> tuple[int, tuple[int, ...]]:
    support = tuple(k for k, p in enumerate(d.probs) if p > 0)
    return len(support), support


def ranked(d: OrderDistribution) -> RankedProbs:
    order = tuple(sorted(range(d.N), key=lambda k: (-d.probs[k], k)))
    rank = [0] * d.N
    for r, k in enumerate(order):
        rank[k] = r
    return RankedProbs(
        pi=tuple(d.probs[k] for k in order), order=order, rank_of_vertex=tuple(rank)
    )


def arrange(d: OrderDistribution, values: Sequence) -> OrderDistribution:
    """A distribution on the same ``n`` carrying ``values`` vertex by vertex."""
    return OrderDistribution(n=d.n, probs=tuple(Fraction(v) for v in values))
