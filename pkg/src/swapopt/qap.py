"""Exact Koopmans-Beckmann quadratic assignment by enumeration, and its special cases.

``qap_min`` minimises ``sum_ij W[i, j] * D[s(i), s(j)]`` over permutations
``s`` that send facility ``i`` to location ``s(i)``. Minimum linear
arrangement, average swap distance minimisation and compression with
prescribed magnitudes are all instances of it.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations
from math import factorial, lcm
from typing import Sequence

import numpy as np

from ._errors import CapacityError, InvalidArgumentError

DEFAULT_QAP_CAP = 40320  # 8!
WITNESS_CAP = 1024


def _fraction_matrix(M) -> list[list[Fraction]]:
    return [[Fraction(x) for x in row] for row in np.asarray(M, dtype=object).tolist()]


def _integer_matrix(M: list[list[Fraction]]) -> tuple[np.ndarray, int]:
    scale = lcm(*(x.denominator for row in M for x in row)) if M and M[0] else 1
    return np.array([[int(x * scale) for x in row] for row in M], dtype=object), scale


@dataclass(frozen=True)
class QapInstance:
    """Flow matrix ``W`` and distance matrix ``D``.

    Both are square of equal size with ``D`` zero on the diagonal, or, for
    the linear case, ``W`` is ``1 x N`` and ``D`` is ``N x 1`` and the cost
    is ``sum_i W[0, i] * D[s(i), 0]``.
    """

    W: tuple[tuple[Fraction, ...], ...]
    D: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        W = _fraction_matrix(self.W)
        D = _fraction_matrix(self.D)
        object.__setattr__(self, "W", tuple(map(tuple, W)))
        object.__setattr__(self, "D", tuple(map(tuple, D)))
        if self.linear:
            return
        N = len(W)
        if any(len(row) != N for row in W) or len(D) != N or any(len(row) != N for row in D):
            raise InvalidArgumentError("W and D must be square matrices of equal size")
        if any(D[i][i] != 0 for i in range(N)):
            raise InvalidArgumentError("D must be zero on the diagonal")

    @property
    def linear(self) -> bool:
        return (
            len(self.W) == 1
            and len(self.W[0]) == len(self.D) > 1
            and all(len(row) == 1 for row in self.D)
        )

    @property
    def N(self) -> int:
        return len(self.D)


@dataclass(frozen=True)
class QapResult:
    value: Fraction
    witnesses: tuple[tuple[int, ...], ...]
    count: int


def qap_min(inst: QapInstance, enum_cap: int = DEFAULT_QAP_CAP) -> QapResult:
    """Exact QAP minimum over all ``N!`` assignments.

    ``witnesses`` lists optimal assignments ``s`` (``s[i]`` is the location
    of facility ``i``), truncated to ``WITNESS_CAP``; ``count`` is their total.
    """
    N = inst.N
    if factorial(N) > enum_cap:
        raise CapacityError(f"{N}! assignments exceed the enumeration cap {enum_cap}")
    Wi, w_scale = _integer_matrix([list(r) for r in inst.W])
    Di, d_scale = _integer_matrix([list(r) for r in inst.D])
    P = np.array(list(permutations(range(N))), dtype=np.int64)
    if inst.linear:
        costs = (Wi[0][None, :] * Di[P, 0]).sum(axis=1)
    else:
        costs = (Wi[None, :, :] * Di[P[:, :, None], P[:, None, :]]).sum(axis=(1, 2))
    best = costs.min()
    hits = np.flatnonzero(costs == best)
    return QapResult(
        value=Fraction(int(best), w_scale * d_scale),
        witnesses=tuple(tuple(int(x) for x in P[k]) for k in hits[:WITNESS_CAP]),
        count=len(hits),
    )


def average_swap_distance_instance(probs: Sequence, dist) -> QapInstance:
    """Flows ``p_i p_j`` over permutohedron distances."""
    p = [Fraction(x) for x in probs]
    return QapInstance(W=tuple(tuple(a * b for b in p) for a in p), D=dist)


@dataclass(frozen=True)
class GraphInstance:
    N: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        seen = set()
        for u, v in self.edges:
            if u == v:
                raise InvalidArgumentError(f"self-loop at vertex {u}")
            if not (0 <= u < self.N and 0 <= v < self.N):
                raise InvalidArgumentError(f"edge ({u}, {v}) outside [0, {self.N})")
            key = (min(u, v), max(u, v))
            if key in seen:
                raise InvalidArgumentError(f"duplicate edge {key}")
            seen.add(key)

    def adjacency(self) -> list[list[int]]:
        A = [[0] * self.N for _ in range(self.N)]
        for u, v in self.edges:
            A[u][v] = A[v][u] = 1
        return A


def linear_arrangement_cost(g: GraphInstance, layout: Sequence[int]) -> int:
    """Sum of edge lengths when vertex ``i`` sits at position ``layout[i]``."""
    return sum(abs(layout[u] - layout[v]) for u, v in g.edges)


def mla_min(g: GraphInstance, enum_cap: int = DEFAULT_QAP_CAP) -> tuple[int, tuple[int, ...]]:
    """Minimum linear arrangement cost and one optimal layout, by enumeration."""
    if factorial(g.N) > enum_cap:
        raise CapacityError(f"{g.N}! layouts exceed the enumeration cap {enum_cap}")
    best = None
    for layout in permutations(range(g.N)):
        cost = linear_arrangement_cost(g, layout)
        if best is None or cost < best[0]:
            best = (cost, layout)
    return best


def mla_instance(g: GraphInstance) -> QapInstance:
    """Adjacency flows over path-graph distances ``|i - j|``.

    The QAP value of this instance is twice the linear arrangement cost.
    """
    return QapInstance(
        W=g.adjacency(), D=[[abs(i - j) for j in range(g.N)] for i in range(g.N)]
    )


def mla_random(g: GraphInstance) -> Fraction:
    """Mean linear arrangement cost over all layouts."""
    return Fraction(len(g.edges) * (g.N + 1), 3)


@dataclass(frozen=True)
class CodingInstance:
    p: tuple[Fraction, ...]
    l: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "p", tuple(Fraction(x) for x in self.p))
        object.__setattr__(self, "l", tuple(Fraction(x) for x in self.l))
        if len(self.p) != len(self.l):
            raise InvalidArgumentError("p and l must have equal length")
        if any(x < 0 for x in self.p) or sum(self.p) != 1:
            raise InvalidArgumentError("p must be a probability vector")
        if any(x <= 0 for x in self.l):
            raise InvalidArgumentError("magnitudes must be positive")

    def as_qap(self) -> QapInstance:
        return QapInstance(W=(self.p,), D=tuple((x,) for x in self.l))


def compression_min(inst: CodingInstance) -> Fraction:
    """Smallest mean magnitude: largest probabilities get the smallest magnitudes."""
    return rearrangement_bounds(inst.p, inst.l)[0]


def compression_random(inst: CodingInstance) -> Fraction:
    """Mean magnitude over all assignments, the unweighted mean of ``l``."""
    return sum(inst.l, Fraction(0)) / len(inst.l)


def rearrangement_bounds(a: Sequence, b: Sequence) -> tuple[Fraction, Fraction]:
    """Smallest and largest dot product over all pairings of ``a`` with ``b``."""
    if len(a) != len(b):
        raise InvalidArgumentError(f"length mismatch: {len(a)} != {len(b)}")
    up = sorted(Fraction(x) for x in a)
    b_up = sorted(Fraction(x) for x in b)
    low = sum((x * y for x, y in zip(up, reversed(b_up))), Fraction(0))
    high = sum((x * y for x, y in zip(up, b_up)), Fraction(0))
    return low, high
