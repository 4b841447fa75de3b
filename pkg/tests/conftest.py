import functools
import itertools

import pytest
from hypothesis import settings

from shiftmat.oracles import check_farkas, lp_threshold_oracle
from shiftmat.shifted import DefiningBasis

settings.register_profile("default", deadline=None, max_examples=200)
settings.load_profile("default")


def pytest_addoption(parser):
    parser.addoption("--runslow", action="store_true", help="run the n = 9 exhaustive LP sweeps")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--runslow"):
        return
    skip = pytest.mark.skip(reason="needs --runslow")
    for item in items:
        if "very_slow" in item.keywords:
            item.add_marker(skip)


def all_T(n, nonempty=True):
    """Every subset of [n] as a sorted tuple, in increasing bitmask order."""
    for mask in range(1 if nonempty else 0, 1 << n):
        yield tuple(i + 1 for i in range(n) if mask >> i & 1)


def all_M(n_max, nonempty=True, n_min=1):
    for n in range(n_min, n_max + 1):
        for T in all_T(n, nonempty):
            yield DefiningBasis.of(T, n)


def brute_bases(T, n):
    return [S for S in itertools.combinations(range(1, n + 1), len(T)) if all(s <= t for s, t in zip(S, T))]


@functools.lru_cache(maxsize=None)
def lp_feasible(T, n):
    """LP verdict with its witness re-checked; cached for the whole session."""
    from shiftmat.threshold import verify_weights

    M = DefiningBasis.of(T, n)
    res = lp_threshold_oracle(M)
    if res.feasible:
        assert verify_weights(M, res.weights, "full"), (T, n)
    else:
        assert check_farkas(M, res), (T, n)
    return res.feasible


def random_threshold(rng, n_max):
    """A random threshold T: random subset of [n] cut down to its first
    one to four blocks, kept only if it classifies as threshold."""
    from shiftmat.poset import runs
    from shiftmat.threshold import Verdict, classify

    while True:
        n = rng.randint(1, n_max)
        p = rng.random()
        T = [x for x in range(1, n + 1) if rng.random() < p]
        if not T:
            continue
        keep = runs(T)[: rng.randint(1, 4)]
        M = DefiningBasis.of((x for b in keep for x in b), n)
        if classify(M).verdict is Verdict.THRESHOLD:
            return M
