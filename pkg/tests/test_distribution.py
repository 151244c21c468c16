from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from swapopt import (
    IngestionError,
    InvalidArgumentError,
    build_permutohedron,
    dominance,
    from_count_vector,
    from_counts,
    from_probs,
    nonzero_support,
    ranked,
    simpson,
)

counts6 = st.lists(st.integers(0, 50), min_size=6, max_size=6).filter(lambda c: sum(c) > 0)


def test_point_mass_from_counts():
    g = build_permutohedron(3)
    d = from_counts(3, {"SOV": 1})
    assert [d.probs[k] for k in g.hexagon()] == [1, 0, 0, 0, 0, 0]
    assert nonzero_support(d)[0] == 1


def test_two_orders_half_each():
    d = from_counts(3, {"SOV": 1, "SVO": 1})
    assert d.F == 2
    assert sorted(d.probs)[-2:] == [Fraction(1, 2)] * 2


def test_from_counts_errors():
    with pytest.raises(IngestionError):
        from_counts(3, {"SOX": 1})
    with pytest.raises(IngestionError):
        from_counts(3, {"SOV": -1})
    with pytest.raises(InvalidArgumentError):
        from_counts(3, {"SOV": 0, "VOS": 0})
    with pytest.raises(InvalidArgumentError):
        from_count_vector(3, [1, 2, 3])


def test_custom_alphabet():
    d = from_counts(3, {"abc": 2, "cba": 2}, alphabet="abc")
    assert d.probs[0] == d.probs[5] == Fraction(1, 2)


def test_probs_must_sum_to_one():
    with pytest.raises(InvalidArgumentError):
        from_probs(3, [0.5, 0.4, 0, 0, 0, 0])
    with pytest.raises(InvalidArgumentError):
        from_probs(3, [1.5, -0.5, 0, 0, 0, 0])
    d = from_probs(3, [0.1, 0.2, 0.3, 0.4, 0, 0], limit_denominator=1000)
    assert d.probs[0] == Fraction(1, 10)


def test_simpson_examples():
    assert simpson(from_counts(3, {"SOV": 4})) == 1
    assert dominance(from_counts(3, {"SOV": 4})) == 0
    assert simpson(from_count_vector(3, [1] * 6)) == Fraction(1, 6)
    assert dominance(from_counts(3, {"SOV": 1, "VOS": 1})) == Fraction(1, 2)


def test_support_examples(fixture_csv):
    assert nonzero_support(from_count_vector(3, [1] * 6))[0] == 6
    from swapopt.io import ingest_csv

    groups = dict(ingest_csv(fixture_csv))
    assert nonzero_support(groups["reversible", "English"])[0] == 4


def test_ranked_examples():
    d = from_probs(3, [Fraction(1, 10), Fraction(1, 2), Fraction(2, 5), 0, 0, 0])
    r = ranked(d)
    assert r.pi == (Fraction(1, 2), Fraction(2, 5), Fraction(1, 10), 0, 0, 0)
    assert r.order[:3] == (1, 2, 0)
    assert [r.rank_of_vertex[v] for v in r.order] == list(range(6))
    assert set(ranked(from_count_vector(3, [2] * 6)).pi) == {Fraction(1, 6)}
    assert r.tie_groups() == [(0,), (1,), (2,), (3, 4, 5)]
    assert not r.has_ties() and r.has_ties(nonzero_only=False)


@given(counts6)
def test_probabilities_exact(counts):
    d = from_count_vector(3, counts)
    assert sum(d.probs) == 1
    assert all(p == Fraction(c, d.F) for p, c in zip(d.probs, d.counts))


@given(counts6)
def test_simpson_range_by_support(counts):
    d = from_count_vector(3, counts)
    m, support = nonzero_support(d)
    assert list(support) == sorted(support)
    S = simpson(d)
    assert Fraction(1, m) <= S <= 1
    assert 0 <= dominance(d) <= 1 - Fraction(1, m)
    pi = ranked(d).pi
    assert pi[0] >= Fraction(1, m) >= Fraction(1, 6)


@given(counts6)
def test_ranked_lower_bounds(counts):
    d = from_count_vector(3, counts)
    m, _ = nonzero_support(d)
    pi = ranked(d).pi
    assert all(pi[k] >= pi[k + 1] for k in range(5))
    assert sorted(pi) == sorted(d.probs)
    for i in range(1, m + 1):
        assert pi[i - 1] >= (1 - (i - 1) * pi[0]) / (m - i + 1)
