"""Acceptance criteria, one test each, printing a PASS/FAIL line per criterion."""

import time
from fractions import Fraction
from itertools import permutations

import numpy as np
import pytest

from _oracles import random_probs
from swapopt import (
    average_swap_distance,
    bounds,
    build_permutohedron,
    compression_min,
    contiguity_ensemble_p,
    detect_adjacency_top2,
    detect_contiguity,
    detect_radiation,
    dominance,
    expected_random_shuffle,
    from_probs,
    min_bruteforce,
    min_by_sorted_assignment,
    min_closed_form_n3,
    mla_min,
    omega,
    omega_min_m2,
    p_contiguous_given_m,
    p_optimal_given_m,
    pi_optimal_numeric,
    poisson_binomial_right_tail,
    qap_min,
    shuffle_space,
    wilcoxon_signed_rank,
)
from swapopt.io import round_half_away
from swapopt.qap import CodingInstance, GraphInstance, average_swap_distance_instance, mla_instance
from swapopt.structure import contiguous_shuffle_minimum, is_path

G3 = build_permutohedron(3)

# published summary rows: S_bar, <d>_min, <d>, <d>_r, Omega
ROWS = {
    "reversible English": ("0.37", "0.41", "0.47", "0.67", "0.78"),
    "reversible Russian": ("0.57", "0.64", "0.70", "1.02", "0.85"),
    "reversible Irish": ("0.54", "0.62", "0.62", "0.97", "1"),
    "reversible Tagalog": ("0.61", "0.74", "0.74", "1.1", "1"),
    "nonreversible English": ("0.6", "0.71", "0.74", "1.08", "0.91"),
    "nonreversible Russian": ("0.54", "0.59", "0.59", "0.97", "1"),
    "nonreversible Irish": ("0.69", "0.94", "0.94", "1.24", "1"),
    "nonreversible Tagalog": ("0.5", "0.7", "0.73", "0.9", "0.86"),
}


@pytest.fixture
def verdict(capsys):
    def emit(number, title, ok, detail=""):
        with capsys.disabled():
            print(f"\n{'PASS' if ok else 'FAIL'}  criterion {number}: {title}  {detail}".rstrip())
        assert ok, f"criterion {number} failed: {detail}"

    return emit


def test_criterion_1_chance_tables(verdict):
    rng = np.random.default_rng(1)
    start = time.perf_counter()
    ok = [p_optimal_given_m(m) for m in range(1, 7)] == [
        1, Fraction(2, 5), Fraction(1, 10), Fraction(1, 30), Fraction(1, 60), Fraction(1, 60)
    ]
    ok &= [p_contiguous_given_m(m) for m in range(1, 7)] == [
        1, Fraction(2, 5), Fraction(3, 10), Fraction(2, 5), 1, 1
    ]
    for m in range(1, 7):
        probs = random_probs(rng, m=m, distinct=True)
        ok &= pi_optimal_numeric(G3, from_probs(3, probs)) == p_optimal_given_m(m)
        hits = sum(
            detect_contiguity(G3, from_probs(3, [probs[k] for k in perm])) for perm in permutations(range(6))
        )
        ok &= Fraction(hits, 720) == p_contiguous_given_m(m)
    elapsed = time.perf_counter() - start
    verdict(1, "p_o(m) and p_c(m) tables, checked by 720-shuffle counting", ok and elapsed < 1, f"({elapsed:.2f} s)")


def test_criterion_2_oracle_equivalence(verdict):
    rng = np.random.default_rng(2)
    start = time.perf_counter()
    bad = 0
    for _ in range(1000):
        d = from_probs(3, random_probs(rng, max_count=int(rng.integers(2, 1000))))
        closed = min_closed_form_n3(d)
        if not (closed == min_bruteforce(G3, d).value == min_by_sorted_assignment(G3, d).value):
            bad += 1
    elapsed = time.perf_counter() - start
    verdict(2, "closed form = brute force = sorted assignment on 1000 distributions",
            bad == 0 and elapsed < 30, f"({bad} mismatches, {elapsed:.1f} s)")


def test_criterion_3_baseline_identity(verdict):
    rng = np.random.default_rng(3)
    bad = 0
    for _ in range(100):
        d = from_probs(3, random_probs(rng))
        target = dominance(d) * Fraction(6, 5) * Fraction(3, 2)
        if not (shuffle_space(G3, d).mean() == target == expected_random_shuffle(d)):
            bad += 1
    off = []
    for name, (s_bar, _, _, d_r, _) in ROWS.items():
        got = round_half_away(Fraction(18, 10) * Fraction(s_bar), 2)
        if got != Fraction(d_r):
            off.append(f"{name}: 1.8*{s_bar} -> {float(got):g}, printed {d_r}")
    verdict(3, "shuffle mean equals the dominance baseline; 1.8*S_bar rounds to printed <d>_r",
            bad == 0 and not off, f"({bad} mismatches; rows off: {'; '.join(off) or 'none'})")


def test_criterion_4_omega_reconstruction(verdict):
    worst, exact_ok = Fraction(0), True
    for name, (_, d_min, d, d_r, om) in ROWS.items():
        got = omega(Fraction(d), Fraction(d_r), Fraction(d_min))
        worst = max(worst, abs(got - Fraction(om)))
        if d == d_min:
            exact_ok &= got == 1
    verdict(4, "Omega from rounded columns within 0.02 of printed values",
            worst <= Fraction(2, 100) and exact_ok, f"(max deviation {float(worst):.4f})")


def test_criterion_5_published_p_values(verdict):
    start = time.perf_counter()
    t30, t10 = Fraction(1, 30), Fraction(1, 10)
    p4 = poisson_binomial_right_tail([t30, t10, t30, t30], 2)
    p8 = poisson_binomial_right_tail([t30, t10, t30, t30] * 2, 4)
    c = [
        contiguity_ensemble_p([3, 4, 4, 4], [True] * 4) == Fraction(12, 625),
        contiguity_ensemble_p([3, 4, 4], [True] * 3) == Fraction(6, 125),
        contiguity_ensemble_p([3, 3] + [4] * 5, [True] * 7) == Fraction(72, 78125),
    ]
    w8 = wilcoxon_signed_rank([(Fraction(k, 10), Fraction(k, 10) + Fraction(k + 1, 7)) for k in range(8)])
    w4 = wilcoxon_signed_rank([(Fraction(k, 10), Fraction(k, 10) + Fraction(k + 1, 7)) for k in range(4)])
    ok = (
        abs(float(p4) - 0.013) <= 0.001
        and abs(float(p8) - 3e-4) <= 1e-4
        and all(c)
        and (w8.V, w8.p) == (0, Fraction(1, 256))
        and (w4.V, w4.p) == (0, Fraction(1, 16))
        and round(float(w8.p), 3) == 0.004
        and round(float(w4.p), 3) == 0.062
    )
    elapsed = time.perf_counter() - start
    verdict(5, "Poisson binomial, contiguity and Wilcoxon p-values", ok and elapsed < 1,
            f"(P_o={float(p4):.4f}, {float(p8):.2e}; {elapsed:.2f} s)")


def test_criterion_6_omega_min(verdict):
    ok = [omega_min_m2(n) for n in (3, 4, 5)] == [Fraction(-3, 2), Fraction(-66, 49), Fraction(-590, 481)]
    for pi1 in (Fraction(1, 2), Fraction(2, 3), Fraction(9, 10)):
        d = from_probs(3, [pi1, 1 - pi1, 0, 0, 0, 0])
        space = shuffle_space(G3, d)
        top = space.extreme("max")
        avg_r, avg_min = expected_random_shuffle(d), space.extreme("min").value
        ok &= omega(top.value, avg_r, avg_min) == omega_min_m2(3)
        for w in top.witnesses:
            u, v = [k for k, p in enumerate(w) if p]
            ok &= G3.dist[u, v] == G3.d_max
    verdict(6, "Omega_min closed form and antipodal attainment", ok)


def test_criterion_7_epiphenomena(verdict):
    rng = np.random.default_rng(7)
    start = time.perf_counter()
    failures = 0
    for _ in range(500):
        d = from_probs(3, random_probs(rng, distinct=True))
        for w in min_bruteforce(G3, d).witnesses:
            wd = from_probs(3, w)
            if not (detect_contiguity(G3, wd) and detect_adjacency_top2(G3, wd) is not False
                    and detect_radiation(G3, wd)):
                failures += 1
    outside = 0
    for _ in range(10000):
        d = from_probs(3, random_probs(rng, max_count=int(rng.integers(2, 200))))
        low, high = bounds(d)
        if not low <= average_swap_distance(G3, d) <= high:
            outside += 1
    no_better = 0
    for _ in range(200):
        d = from_probs(3, random_probs(rng, m=int(rng.integers(2, 5))))
        space = shuffle_space(G3, d)
        best = contiguous_shuffle_minimum(G3, d, space) * space.scale
        for k, placement in enumerate(space.placements):
            if not is_path(G3, [int(v) for v in placement]) and not space.values[k] > best:
                no_better += 1
    elapsed = time.perf_counter() - start
    ok = failures == 0 and outside == 0 and no_better == 0 and elapsed < 120
    verdict(7, "minimizer signatures, bounds, contiguous rearrangement", ok,
            f"({failures}/{outside}/{no_better} violations, {elapsed:.1f} s)")


def test_criterion_8_qap_unification(verdict):
    rng = np.random.default_rng(8)
    swap_bad = mla_bad = comp_bad = 0
    for _ in range(100):
        probs = random_probs(rng)
        if qap_min(average_swap_distance_instance(probs, G3.dist.tolist())).value != min_bruteforce(
            G3, from_probs(3, probs)
        ).value:
            swap_bad += 1
    for _ in range(100):
        N = int(rng.integers(2, 7))
        edges = tuple((i, j) for i in range(N) for j in range(i + 1, N) if rng.random() < 0.5)
        g = GraphInstance(N, edges)
        if qap_min(mla_instance(g)).value != 2 * mla_min(g)[0]:
            mla_bad += 1
    for _ in range(100):
        N = int(rng.integers(2, 7))
        w = rng.integers(1, 30, size=N)
        inst = CodingInstance(
            tuple(Fraction(int(x), int(w.sum())) for x in w), tuple(int(x) for x in rng.integers(1, 12, size=N))
        )
        if qap_min(inst.as_qap()).value != compression_min(inst):
            comp_bad += 1
    verdict(8, "QAP reproduces <d>_min, minimum linear arrangement and compression",
            swap_bad == mla_bad == comp_bad == 0, f"({swap_bad}/{mla_bad}/{comp_bad} mismatches)")
