"""Structural signatures of swap distance minimization.

Detectors for how probability is laid out on the permutohedron: whether the
attested orders form a path (contiguity), whether the two most likely orders
are neighbours (adjacency), whether probability never increases moving away
from a most likely order (radiation), plus the hexagon-specific slash and
wedge patterns and the Hasse diagram induced by per-vertex values.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import networkx as nx

from ._errors import InvalidArgumentError, Undefined, UnsupportedError
from .distribution import OrderDistribution, nonzero_support, ranked
from .optimality import OPTIMAL_HEXAGON_FILL, OPTIMAL_HEXAGON_FILL_MIRROR, _check
from .permutohedron import Permutohedron, build_permutohedron, check_alphabet


def is_path(graph: Permutohedron, vertices: Sequence[int]) -> bool:
    """True if ``vertices`` induce a simple path in ``graph``."""
    chosen = set(vertices)
    if len(chosen) <= 1:
        return True
    degree = {v: sum(1 for w in graph.adjacency[v] if w in chosen) for v in chosen}
    n_edges = sum(degree.values()) // 2
    if n_edges != len(chosen) - 1 or max(degree.values()) > 2:
        return False
    # m - 1 edges and connected means a tree; max degree 2 makes it a path
    start = next(iter(chosen))
    stack, seen = [start], {start}
    while stack:
        v = stack.pop()
        for w in graph.adjacency[v]:
            if w in chosen and w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == len(chosen)


def detect_contiguity(graph: Permutohedron, d: OrderDistribution) -> bool:
    """Whether the non-zero probability orders form a path.

    A distribution with full support counts as contiguous.
    """
    _check(graph, d)
    m, support = nonzero_support(d)
    return m == graph.N or is_path(graph, support)


def detect_adjacency_top2(graph: Permutohedron, d: OrderDistribution) -> bool | Undefined:
    """Whether a most likely order is adjacent to a second most likely one."""
    _check(graph, d)
    m, _ = nonzero_support(d)
    if m < 2:
        return Undefined("fewer than two orders have non-zero probability")
    pi = ranked(d).pi
    top = [k for k, p in enumerate(d.probs) if p == pi[0]]
    second = {k for k, p in enumerate(d.probs) if p == pi[1]}
    return any(v in second for u in top for v in graph.adjacency[u])


def radiates_from(graph: Permutohedron, d: OrderDistribution, u: int) -> bool:
    """Probability never increases along any shortest path leaving ``u``."""
    p = d.probs
    row = graph.dist[u]
    for a, b in graph.edges():
        if row[b] == row[a] + 1 and p[a] < p[b]:
            return False
        if row[a] == row[b] + 1 and p[b] < p[a]:
            return False
    return True


def detect_radiation(graph: Permutohedron, d: OrderDistribution) -> bool:
    """Whether probability radiates from some most likely order.

    On the hexagon with the source at position 1 this is the partial order
    ``p1 >= p2 >= p3 >= p4`` and ``p1 >= p6 >= p5 >= p4``; the two arcs are
    not compared with each other.
    """
    _check(graph, d)
    top = max(d.probs)
    return any(radiates_from(graph, d, u) for u, p in enumerate(d.probs) if p == top)


def _require_hexagon(graph: Permutohedron) -> tuple[int, ...]:
    if graph.n != 3:
        raise UnsupportedError("slash and wedge structures are defined for n = 3 only")
    return graph.hexagon()


def detect_slash(graph: Permutohedron, d: OrderDistribution) -> list[tuple[int, int]]:
    """Hexagon edges, listed clockwise, whose endpoints both reach ``pi_2``."""
    _check(graph, d)
    hexagon = _require_hexagon(graph)
    pi2 = ranked(d).pi[1]
    p = d.probs
    pairs = []
    for k in range(6):
        u, v = hexagon[k], hexagon[(k + 1) % 6]
        if p[u] >= pi2 and p[v] >= pi2:
            pairs.append((u, v))
    return pairs


def detect_wedge(graph: Permutohedron, d: OrderDistribution) -> list[tuple[int, int, int]]:
    """Clockwise hexagon paths ``t, u, v`` with ``p_u >= p_t, p_v`` all reaching ``pi_3``."""
    _check(graph, d)
    hexagon = _require_hexagon(graph)
    pi3 = ranked(d).pi[2]
    p = d.probs
    triples = []
    for k in range(6):
        t, u, v = hexagon[k], hexagon[(k + 1) % 6], hexagon[(k + 2) % 6]
        if min(p[t], p[u], p[v]) >= pi3 and p[u] >= p[t] and p[u] >= p[v]:
            triples.append((t, u, v))
    return triples


@dataclass(frozen=True)
class StructureFlags:
    contiguous: bool
    adjacency_top2: bool | Undefined
    radiation: bool
    slash_pairs: tuple[tuple[int, int], ...] = ()
    wedge_triples: tuple[tuple[int, int, int], ...] = ()


def structure_flags(graph: Permutohedron, d: OrderDistribution) -> StructureFlags:
    hexagonal = graph.n == 3
    return StructureFlags(
        contiguous=detect_contiguity(graph, d),
        adjacency_top2=detect_adjacency_top2(graph, d),
        radiation=detect_radiation(graph, d),
        slash_pairs=tuple(detect_slash(graph, d)) if hexagonal else (),
        wedge_triples=tuple(detect_wedge(graph, d)) if hexagonal else (),
    )


@dataclass(frozen=True)
class HasseDiagram:
    """Order induced by per-vertex values along permutohedron edges.

    ``arcs`` are strict relations ``(u, v)`` meaning ``value[u] > value[v]``
    that survive transitive reduction. ``ties`` are edges ``(u, v)`` with
    ``u < v`` and equal values; each stands for a two-way relation.
    ``tie_groups`` are the connected classes of tied vertices.
    """

    values: tuple
    arcs: tuple[tuple[int, int], ...]
    ties: tuple[tuple[int, int], ...]
    tie_groups: tuple[tuple[int, ...], ...]


def hasse(values: Sequence, graph: Permutohedron) -> HasseDiagram:
    """Hasse diagram of ``u >= v`` restricted to permutohedron edges.

    ``values`` may be probabilities or any other per-vertex score such as
    acceptability ratings; only their order matters.
    """
    values = tuple(values)
    if len(values) != graph.N:
        raise InvalidArgumentError(f"expected {graph.N} values, got {len(values)}")
    ties = tuple((u, v) for u, v in graph.edges() if values[u] == values[v])

    tie_graph = nx.Graph()
    tie_graph.add_nodes_from(range(graph.N))
    tie_graph.add_edges_from(ties)
    groups = sorted(tuple(sorted(c)) for c in nx.connected_components(tie_graph))
    group_of = {v: g for g, members in enumerate(groups) for v in members}

    strict = []
    for u, v in graph.edges():
        if values[u] > values[v]:
            strict.append((u, v))
        elif values[v] > values[u]:
            strict.append((v, u))
    dag = nx.DiGraph()
    dag.add_nodes_from(range(len(groups)))
    dag.add_edges_from((group_of[u], group_of[v]) for u, v in strict)
    reduced = nx.transitive_reduction(dag)
    arcs = tuple(sorted((u, v) for u, v in strict if reduced.has_edge(group_of[u], group_of[v])))
    return HasseDiagram(
        values=values,
        arcs=arcs,
        ties=ties,
        tie_groups=tuple(g for g in groups if len(g) > 1),
    )


def predicted_rankings(most_likely: str, alphabet: str = "SOV") -> tuple[tuple[str, ...], tuple[str, ...]]:
    """The two probability rankings of an optimal arrangement around a source order.

    >>> predicted_rankings("SOV")[0]
    ('SOV', 'SVO', 'OSV', 'VSO', 'OVS', 'VOS')
    """
    check_alphabet(alphabet, 3)
    graph = build_permutohedron(3)
    source = graph.index_of_label(most_likely, alphabet)
    hexagon = graph.hexagon()
    s = hexagon.index(source)
    return tuple(
        tuple(graph.label(hexagon[(s + pos) % 6], alphabet) for pos in fill)
        for fill in (OPTIMAL_HEXAGON_FILL, OPTIMAL_HEXAGON_FILL_MIRROR)
    )


def contiguous_shuffle_minimum(graph: Permutohedron, d: OrderDistribution, space=None) -> Fraction:
    """Smallest ``<d>`` among shufflings of ``d`` whose support is a path."""
    from .optimality import shuffle_space

    space = space if space is not None else shuffle_space(graph, d)
    best = None
    for k, placement in enumerate(space.placements):
        if len(placement) == graph.N or is_path(graph, [int(v) for v in placement]):
            value = space.values[k]
            if best is None or value < best:
                best = value
    return Fraction(int(best), space.scale)
