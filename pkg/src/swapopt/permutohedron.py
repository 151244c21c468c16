"""Permutations, swap distance and the permutohedron graph.

Vertices are the ``n!`` orderings of the labels ``0..n-1`` in lexicographic
order. Two vertices are adjacent when one is obtained from the other by
swapping two neighbouring elements. Graph distance on this graph is the swap
distance, which equals the number of discordant pairs (Kendall tau distance).
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import permutations
from typing import Hashable, Sequence

import numpy as np

from ._errors import CapacityError, ConsistencyError, InvalidArgumentError, UnsupportedError

Permutation = tuple[int, ...]

DEFAULT_N_CAP = 5
DEFAULT_ALPHABET = "SOV"


def default_alphabet(n: int) -> str:
    if n == 3:
        return DEFAULT_ALPHABET
    return "ABCDEFGHIJ"[:n]


def check_permutation(perm: Sequence[int], n: int | None = None) -> Permutation:
    """Return ``perm`` as a tuple after checking it is a permutation of ``0..n-1``."""
    try:
        perm = tuple(int(x) for x in perm)
    except (TypeError, ValueError) as exc:
        raise InvalidArgumentError(f"not a permutation: {perm!r}") from exc
    if n is None:
        n = len(perm)
    if len(perm) != n:
        raise InvalidArgumentError(f"expected a permutation of length {n}, got {len(perm)}")
    if n < 2 or sorted(perm) != list(range(n)):
        raise InvalidArgumentError(f"not a permutation of 0..{n - 1}: {perm!r}")
    return perm


def count_inversions(seq: Sequence[int]) -> int:
    return sum(1 for i in range(len(seq)) for j in range(i + 1, len(seq)) if seq[i] > seq[j])


def swap_distance(a: Sequence[Hashable], b: Sequence[Hashable]) -> int:
    """Minimum number of adjacent swaps turning ``a`` into ``b``.

    Works on any two orderings of the same distinct items, so both
    ``swap_distance((0, 1, 2), (2, 1, 0))`` and ``swap_distance("SOV", "VOS")``
    are valid (both give 3).
    """
    a = tuple(a)
    b = tuple(b)
    if len(a) != len(b):
        raise InvalidArgumentError(f"length mismatch: {len(a)} != {len(b)}")
    if len(set(a)) != len(a) or set(a) != set(b):
        raise InvalidArgumentError("arguments must be orderings of the same distinct items")
    position = {item: k for k, item in enumerate(a)}
    return count_inversions([position[item] for item in b])


@dataclass(frozen=True, eq=False)
class Permutohedron:
    """The permutohedron of order ``n`` with all-pairs swap distances.

    Attributes
    ----------
    n : int
        Sequence length.
    vertices : tuple of Permutation
        All ``n!`` permutations in lexicographic order.
    adjacency : tuple of tuple of int
        For each vertex, the sorted indices of the vertices one swap away.
    dist : numpy.ndarray
        ``N x N`` read-only integer matrix of swap distances.
    """

    n: int
    vertices: tuple[Permutation, ...]
    adjacency: tuple[tuple[int, ...], ...]
    dist: np.ndarray = field(repr=False)
    _index: dict = field(repr=False, compare=False)

    @property
    def N(self) -> int:
        return len(self.vertices)

    @property
    def d_max(self) -> int:
        return self.n * (self.n - 1) // 2

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u, nbrs in enumerate(self.adjacency) for v in nbrs if u < v]

    def vertex_index(self, perm: Sequence[int]) -> int:
        return self._index[check_permutation(perm, self.n)]

    def label(self, k: int, alphabet: str | None = None) -> str:
        alphabet = alphabet or default_alphabet(self.n)
        return "".join(alphabet[x] for x in self.vertices[k])

    def labels(self, alphabet: str | None = None) -> list[str]:
        return [self.label(k, alphabet) for k in range(self.N)]

    def index_of_label(self, label: str, alphabet: str | None = None) -> int:
        alphabet = alphabet or default_alphabet(self.n)
        check_alphabet(alphabet, self.n)
        if len(label) != self.n or sorted(label) != sorted(alphabet):
            raise InvalidArgumentError(
                f"{label!r} is not an ordering of the constituents {alphabet!r}"
            )
        return self._index[tuple(alphabet.index(c) for c in label)]

    def hexagon(self) -> tuple[int, ...]:
        """Vertex indices around the hexagon, starting at the identity.

        The cycle alternates swaps of the last and first constituent pairs,
        which for the alphabet ``SOV`` gives SOV, SVO, VSO, VOS, OVS, OSV.
        """
        if self.n != 3:
            raise UnsupportedError("the hexagon layout only exists for n = 3")
        cycle = []
        perm = [0, 1, 2]
        for step in range(6):
            cycle.append(self._index[tuple(perm)])
            i = 1 if step % 2 == 0 else 0
            perm[i], perm[i + 1] = perm[i + 1], perm[i]
        return tuple(cycle)


def check_alphabet(alphabet: str, n: int) -> str:
    if len(alphabet) != n or len(set(alphabet)) != n:
        raise InvalidArgumentError(f"alphabet must have {n} distinct symbols, got {alphabet!r}")
    return alphabet


def _bfs(adjacency, source: int) -> list[int]:
    dist = [-1] * len(adjacency)
    dist[source] = 0
    queue = deque([source])
    while queue:
        u = queue.popleft()
        for v in adjacency[u]:
            if dist[v] < 0:
                dist[v] = dist[u] + 1
                queue.append(v)
    return dist


@lru_cache(maxsize=None)
def build_permutohedron(n: int, n_cap: int = DEFAULT_N_CAP) -> Permutohedron:
    """Build the permutohedron of order ``n``.

    Distances come from a breadth-first search out of every vertex and are
    checked against the inversion count of the relative permutation.

    Raises
    ------
    CapacityError
        If ``n < 2`` or ``n > n_cap``.
    """
    if not isinstance(n, (int, np.integer)) or n < 2 or n > n_cap:
        raise CapacityError(f"n must be an integer in [2, {n_cap}], got {n!r}")
    n = int(n)
    vertices = tuple(permutations(range(n)))
    index = {v: k for k, v in enumerate(vertices)}
    adjacency = []
    for v in vertices:
        nbrs = []
        for i in range(n - 1):
            w = list(v)
            w[i], w[i + 1] = w[i + 1], w[i]
            nbrs.append(index[tuple(w)])
        adjacency.append(tuple(sorted(nbrs)))
    adjacency = tuple(adjacency)

    dist = np.array([_bfs(adjacency, s) for s in range(len(vertices))], dtype=np.int64)
    for i, a in enumerate(vertices):
        for j, b in enumerate(vertices):
            if dist[i, j] != swap_distance(a, b):
                raise ConsistencyError(f"BFS and inversion distances disagree at ({i}, {j})")
    dist.setflags(write=False)
    return Permutohedron(n=n, vertices=vertices, adjacency=adjacency, dist=dist, _index=index)
