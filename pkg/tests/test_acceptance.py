"""Acceptance criteria, one test each; every test prints a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -v``; the lines appear even
without ``-s``.
"""

import logging
import random
import time
from collections import Counter
from fractions import Fraction

import pytest

from conftest import all_M, all_T, lp_feasible, random_threshold
from shiftmat.census import census, percent, ratio_series, threshold_count_formula
from shiftmat.cli import main
from shiftmat.oracles import (
    asummability_oracle,
    binary_symdiff_oracle,
    circuits_bruteforce,
    paving_oracle,
)
from shiftmat.poset import componentwise_leq, sorted_concat
from shiftmat.recognition import ExplicitMatroid, canonicalize, explicit_from_shifted, relabel
from shiftmat.shifted import (
    DefiningBasis,
    circuits,
    contract_coloops,
    dual,
    is_binary_structural,
    is_free_plus_loops,
    is_paving,
)
from shiftmat.threshold import (
    Verdict,
    certificate,
    classify,
    doubled,
    synthesize_weights,
    verify_certificate,
    verify_weights,
)

from test_recognition import validate_growth_ratio


@pytest.fixture
def report(capsys):
    def emit(label, ok, detail):
        with capsys.disabled():
            print(f"\n[{'PASS' if ok else 'FAIL'}] criterion {label}: {detail}")
        assert ok, detail

    return emit


def test_criterion_01_counterexample(report, capsys):
    t0 = time.perf_counter()
    M = DefiningBasis.of((2, 4, 6, 8), 8)
    verdict = classify(M).verdict
    code = main(["certify", "--n", "8", "--t", "2 4 6 8"])
    out = capsys.readouterr().out
    parts = dict(line.split("=") for line in out.strip().splitlines())
    sets = {k: set(map(int, v.split())) for k, v in parts.items()}
    cert = certificate(M)
    elapsed = time.perf_counter() - t0
    ok = (
        verdict is Verdict.NOT_THRESHOLD
        and code == 0
        and sets["B1"] | sets["B2"] == sets["D1"] | sets["D2"] == set(range(1, 9))
        and not sets["B1"] & sets["B2"]
        and not sets["D1"] & sets["D2"]
        and verify_certificate(M, cert)
        and {frozenset(sets["B1"]), frozenset(sets["B2"])} == {frozenset({2, 4, 6, 8}), frozenset({1, 3, 5, 7})}
        and {frozenset(sets["D1"]), frozenset(sets["D2"])} == {frozenset({1, 2, 7, 8}), frozenset({3, 4, 5, 6})}
        and elapsed < 1.0
    )
    report("1", ok, f"<2468> NotThreshold, certificate {out.strip().replace(chr(10), ' / ')}, {elapsed:.3f}s")


@pytest.mark.slow
def test_criterion_02_two_trade(report):
    t0 = time.perf_counter()
    bad = []
    count = 0
    for M in all_M(8):
        count += 1
        lp = lp_feasible(M.letters, M.n)
        trade_free = asummability_oracle(M, 2) is None
        thr = classify(M).verdict is Verdict.THRESHOLD
        if not (lp == trade_free == thr):
            bad.append((M.letters, M.n, lp, trade_free, thr))
    elapsed = time.perf_counter() - t0
    report("2", not bad, f"{count} defining bases with n <= 8, {len(bad)} discrepancies {bad[:3]}, {elapsed:.1f}s")


@pytest.mark.slow
def test_criterion_03_enumeration(report):
    wrong = [n for n in range(1, 21) if census(n).threshold_count != threshold_count_formula(n)]
    f14 = census(14).threshold_count
    f35 = threshold_count_formula(35)
    ok = not wrong and f14 == 8191 and Fraction(f35, 2**35) < Fraction(1, 10**4)
    report(
        "3",
        ok,
        f"census = formula for n <= 20 (mismatches {wrong}); F(14) = {f14}; "
        f"F(35)/2^35 = {f35}/{2**35} < 1e-4",
    )


def test_criterion_03_percentage_printout(report):
    """8191/16384 is 0.49994..., which prints as 49.99%; only the non-empty
    denominator 16383 gives 50.00%."""
    series = dict((n, (num, den)) for n, num, den in ratio_series(14))
    num, den = series[14]
    shown = percent(num, den)
    report(
        "3 (percentage)",
        shown == "50.00%",
        f"{num}/{den} prints as {shown}; {num}/{den - 1} prints as {percent(num, den - 1)}",
    )


def test_criterion_04_smallest_non_threshold(report):
    early = {n: census(n).non_threshold_count for n in range(1, 8)}
    at8 = census(8).non_threshold_examples
    ok = all(v == 0 for v in early.values()) and set(at8) == {(2, 4, 6, 8), (2, 5, 6, 8)} and len(at8) == 2
    report("4", ok, f"non-threshold counts n<=7 {list(early.values())}; n=8 {at8}")


def test_criterion_05_weight_synthesis(report):
    full_fail, checked = [], 0
    for M in all_M(10):
        if classify(M).verdict is Verdict.THRESHOLD:
            checked += 1
            if not verify_weights(M, synthesize_weights(M), "full"):
                full_fail.append(M)
    rng = random.Random(5)
    structural_fail = []
    sizes = []
    for _ in range(1000):
        M = random_threshold(rng, 200)
        sizes.append(M.n)
        if not verify_weights(M, synthesize_weights(M), "structural"):
            structural_fail.append(M)
    ok = not full_fail and not structural_fail
    report(
        "5",
        ok,
        f"{checked} threshold T (n<=10) full: {len(full_fail)} failures; 1000 random T "
        f"(n up to {max(sizes)}) structural: {len(structural_fail)} failures",
    )


def test_criterion_06_certificates(report):
    fails, checked = [], 0
    for M in all_M(12):
        if classify(M).verdict is Verdict.NOT_THRESHOLD:
            checked += 1
            c = certificate(M)
            if not (verify_certificate(M, c) and componentwise_leq(sorted_concat(c.D1, c.D2), doubled(M))):
                fails.append(M)
    report("6", not fails, f"{checked} non-threshold T with n <= 12, {len(fails)} failures")


@pytest.mark.slow
def test_criterion_07_recognition(report):
    rng = random.Random(7)
    fails, trials = [], 0
    for M in all_M(8, nonempty=False):
        E = explicit_from_shifted(M)
        for _ in range(50):
            perm = list(range(1, M.n + 1))
            rng.shuffle(perm)
            E2 = relabel(E, dict(zip(range(1, M.n + 1), perm)))
            E2 = ExplicitMatroid(tuple(rng.sample(E2.ground, M.n)), tuple(rng.sample(E2.bases, E2.m)), M.k)
            trials += 1
            if canonicalize(E2).basis != M:
                fails.append(M)
    ratio, m = validate_growth_ratio()
    ok = not fails and ratio <= 4.5
    report(
        "7",
        ok,
        f"{trials} relabeled round trips, {len(fails)} failures; validate_bases time "
        f"ratio at m={2 * m} vs m={m}: {ratio:.2f} (limit 4.5)",
    )


def test_criterion_08_circuits(report):
    bad = [M for M in all_M(8, nonempty=False) if circuits(M) != circuits_bruteforce(M)]
    hist = Counter(c.size for c in circuits(DefiningBasis.of((2, 4, 6, 8), 8)))
    ok = not bad and hist == {2: 1, 3: 2, 4: 5, 5: 14}
    report("8", ok, f"{len(bad)} mismatches for n <= 8; <2468> sizes {dict(sorted(hist.items()))}")


def test_criterion_09_structural_predicates(report, caplog):
    paving_bad = [M for M in all_M(7) if is_paving(M) != paving_oracle(M)]
    binary_bad = []
    with caplog.at_level(logging.WARNING, logger="shiftmat.shifted"):
        for M in all_M(7):
            if is_binary_structural(M) != binary_symdiff_oracle(M):
                binary_bad.append(M)
    expected = [M for M in all_M(7) if is_free_plus_loops(M)]
    logged = sum("free-plus-loops" in r.message for r in caplog.records)
    ok = not paving_bad and binary_bad == expected and logged >= len(expected)
    report(
        "9",
        ok,
        f"paving mismatches {len(paving_bad)}; binary mismatches {len(binary_bad)}, all free-plus-loops "
        f"T = 1..k with n > k ({logged} warnings logged), e.g. {[str(M) for M in binary_bad[:3]]}",
    )


def test_criterion_10_duality_and_contraction(report):
    dual_bad, contr_bad, rank_zero = [], [], []
    for M in all_M(10):
        v = classify(M).verdict
        Md, (Mc, _) = dual(M), contract_coloops(M)
        for other, bad in ((Md, dual_bad), (Mc, contr_bad)):
            if other.k == 0:
                # the rank-0 matroid is kept out of the verdict table on purpose
                rank_zero.append(M)
                continue
            if classify(other).verdict != v:
                bad.append(M)
    ok = not dual_bad and not contr_bad
    report(
        "10",
        ok,
        f"dual mismatches {len(dual_bad)}, contraction mismatches {len(contr_bad)} for n <= 10; "
        f"{len(rank_zero)} comparisons against the rank-0 matroid skipped (T = [n] for duals, T = 1..k for contractions)",
    )
