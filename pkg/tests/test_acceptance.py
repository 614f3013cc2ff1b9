"""End-to-end acceptance criteria, one test each.

Each test prints (via the terminal summary in conftest) a PASS/FAIL line
with the measured numbers.  Run just this module with
``pytest tests/test_acceptance.py``.
"""

import logging
import math
import random
import statistics
import time
from fractions import Fraction

import pytest

from generators import (
    all_binary_matrices,
    exhaustive_trim_nfas,
    random_matrix,
    random_polynomial_dfa,
    random_trim_nfa,
)
from langgrowth.automata import Nfa, determinize, trim
from langgrowth.classifier import Growth, certificate_holds, classify, witness_holds
from langgrowth.oracle import count_words, structural_growth_oracle
from langgrowth.order import OrderKind, bounded_witness, polynomial_order
from langgrowth.regex import regex_to_nfa
from langgrowth.spectral import (
    AdjacencyMatrix,
    SpectralKind,
    adjacency_of,
    estimate_spectral_radius,
    spectral_class,
    verify_growth_law,
)

log = logging.getLogger(__name__)

TOL = 1e-6


@pytest.fixture(scope="module")
def oracle_suite():
    """Classify the exhaustive and random suites once; both criteria read it."""
    started = time.perf_counter()
    stats = {"exhaustive": 0, "random": 0, "disagree": 0, "witnesses": 0,
             "certificates": 0, "bad_witness": 0, "bad_certificate": 0, "exponential": 0}

    def check(a):
        result = classify(a)
        oracle = structural_growth_oracle(determinize(a))
        if (oracle is Growth.EXPONENTIAL) != (result.growth is Growth.EXPONENTIAL):
            stats["disagree"] += 1
            log.error("classifier and oracle disagree on %s", a)
        if result.witness is not None:
            stats["exponential"] += 1
            stats["witnesses"] += 1
            if not witness_holds(result.automaton, result.witness):
                stats["bad_witness"] += 1
        for c in result.certificates:
            stats["certificates"] += 1
            if not certificate_holds(result.automaton, c):
                stats["bad_certificate"] += 1

    for a in exhaustive_trim_nfas(3, "ab"):
        stats["exhaustive"] += 1
        check(a)
    rng = random.Random(20240601)
    for _ in range(10_000):
        stats["random"] += 1
        check(random_trim_nfa(rng, max_states=8))
    stats["seconds"] = time.perf_counter() - started
    return stats


@pytest.mark.criterion("classifier agrees with the structural oracle (exhaustive <=3 states + 10k random <=8 states, < 60 s)")
def test_oracle_equivalence(oracle_suite, criterion):
    s = oracle_suite
    criterion.note(f"{s['exhaustive']} exhaustive + {s['random']} random, "
                   f"{s['disagree']} disagreements, {s['seconds']:.1f} s")
    assert s["exhaustive"] > 300_000
    assert s["random"] == 10_000
    assert s["disagree"] == 0
    assert s["seconds"] < 60


@pytest.mark.criterion("every witness and certificate from the oracle suite re-verifies")
def test_witness_soundness(oracle_suite, criterion):
    s = oracle_suite
    criterion.note(f"{s['witnesses']} witnesses ({s['bad_witness']} bad), "
                   f"{s['certificates']} certificates ({s['bad_certificate']} bad)")
    assert s["witnesses"] > 0 and s["certificates"] > 0
    assert s["bad_witness"] == 0
    assert s["bad_certificate"] == 0


@pytest.mark.criterion("a1*...ak* has degree k-1 and C(m+k-1, k-1) words of each length m <= 50, k = 1..6")
def test_exact_order_of_star_chains(criterion):
    for k in range(1, 7):
        symbols = "abcdef"[:k]
        d = determinize(regex_to_nfa("".join(c + "*" for c in symbols)))
        order = polynomial_order(d)
        assert order.kind is OrderKind.DEGREE and order.degree == k - 1, k
        counts = count_words(d, 50).counts
        assert counts == tuple(math.comb(m + k - 1, k - 1) for m in range(51)), k
    criterion.note("k = 1..6 exact")


@pytest.mark.criterion("bounded decompositions of 1000 random polynomial DFAs accept all words with exponents 0..3")
def test_bounded_witness_words_accepted(criterion):
    rng = random.Random(7)
    checked = words = failures = 0
    while checked < 1000:
        d = random_polynomial_dfa(rng, max_states=6)
        assert classify(d).growth is Growth.POLYNOMIAL
        if polynomial_order(d).kind is OrderKind.FINITE:
            continue
        checked += 1
        for _, w in bounded_witness(d).words(3):
            words += 1
            failures += not d.accepts(w)
    criterion.note(f"{checked} DFAs, {words} words, {failures} rejected")
    assert failures == 0


def estimate_band(estimate):
    if estimate < TOL:
        return SpectralKind.ZERO
    if estimate > 1 + TOL:
        return SpectralKind.GREATER_THAN_ONE
    if abs(estimate - 1) <= TOL:
        return SpectralKind.ONE
    return None


@pytest.mark.criterion("spectral radius estimates avoid (0, 1) and match spectral_class (0/1 matrices <=3, 5000 random)")
def test_spectral_radius_gap(criterion):
    rng = random.Random(11)
    matrices = list(all_binary_matrices(3)) + [random_matrix(rng, max_order=6, max_entry=3) for _ in range(5000)]
    in_gap = mismatched = skipped = 0
    for a in matrices:
        estimate, converged = estimate_spectral_radius(a, iterations=200)
        if TOL <= estimate <= 1 - TOL:
            in_gap += 1
        band = estimate_band(estimate)
        if not converged or band is None:
            skipped += 1
            log.info("inconclusive estimate %r for %s", estimate, a.rows)
            continue
        if band is not spectral_class(a).kind:
            mismatched += 1
    rate = skipped / len(matrices)
    criterion.note(f"{len(matrices)} matrices, {in_gap} in gap, {mismatched} mismatched, skip rate {rate:.2%}")
    assert in_gap == 0
    assert mismatched == 0
    assert rate < 0.05


@pytest.mark.criterion("r = 1 growth law: max(A^m)/m^(d-1) stable within 25% at m = 64, 128, 256; J13 ratio within 2% of 1/2")
def test_unit_radius_growth_law(criterion):
    rng = random.Random(13)
    checked = worst = 0
    by_d = {}
    while checked < 200:
        a = random_matrix(rng, max_order=6, max_entry=3)
        cls = spectral_class(a)
        if cls.kind is not SpectralKind.ONE or cls.dominating_d > 4:
            continue
        checked += 1
        by_d[cls.dominating_d] = by_d.get(cls.dominating_d, 0) + 1
        v = verify_growth_law(a, 64, 256, ms=[64, 128, 256]).values
        for lo, hi in [(64, 128), (128, 256)]:
            change = abs(v[hi] / v[lo] - 1)
            worst = max(worst, change)
            assert change < Fraction(1, 4), a.rows
        assert all(Fraction(1, 10 ** 6) <= x <= 10 ** 6 for x in v.values())
    j13 = AdjacencyMatrix(((1, 1, 0), (0, 1, 1), (0, 0, 1)))
    limit = verify_growth_law(j13, 256, 256).ratio(256)
    criterion.note(f"{checked} matrices (d counts {dict(sorted(by_d.items()))}), worst change {float(worst):.3f}, "
                   f"J13 ratio {float(limit):.5f}")
    assert abs(limit - Fraction(1, 2)) / Fraction(1, 2) < Fraction(2, 100)


@pytest.mark.criterion("spectral dominating d equals the special-vertex count on 1000 random trim polynomial DFAs")
def test_cross_module_d(criterion):
    rng = random.Random(17)
    disagreements = 0
    for _ in range(1000):
        d = random_polynomial_dfa(rng, max_states=6)
        assert trim(d) == d
        cls = spectral_class(adjacency_of(d))
        spectral_d = 0 if cls.kind is SpectralKind.ZERO else cls.dominating_d
        assert cls.kind is not SpectralKind.GREATER_THAN_ONE
        disagreements += spectral_d != polynomial_order(d).special_count_d
    criterion.note(f"1000 DFAs, {disagreements} disagreements")
    assert disagreements == 0


def scaling_instance(rng, n, t):
    """Random trim NFA with ``n`` states and about ``t`` transitions."""
    while True:
        transitions = {(rng.randrange(q), rng.choice("ab"), q) for q in range(1, n)}
        # a few back edges make every state co-reachable
        transitions |= {(q, rng.choice("ab"), rng.randrange(q + 1)) for q in range(n) if rng.random() < 0.5}
        while len(transitions) < t:
            transitions.add((rng.randrange(n), rng.choice("ab"), rng.randrange(n)))
        finals = frozenset(rng.sample(range(n), max(1, n // 10)))
        a = trim(Nfa(n, "ab", frozenset(transitions), 0, finals))
        if a.state_count == n:
            return a


def classify_seconds(a, repeats=3):
    times = []
    for _ in range(repeats):
        started = time.perf_counter()
        classify(a)
        times.append(time.perf_counter() - started)
    return statistics.median(times)


@pytest.mark.criterion("classify on n = 200, t ~ 1000 takes < 5 s and doubling n costs < 16x")
def test_classifier_scaling(criterion):
    rng = random.Random(19)
    small = scaling_instance(rng, 200, 1000)
    large = scaling_instance(rng, 400, 2000)
    t_small = classify_seconds(small)
    t_large = classify_seconds(large)
    ratio = t_large / t_small
    criterion.note(f"n=200 t={small.transition_count}: {t_small * 1000:.2f} ms, "
                   f"n=400 t={large.transition_count}: {t_large * 1000:.2f} ms, ratio {ratio:.1f}")
    assert t_small < 5
    assert ratio < 16
