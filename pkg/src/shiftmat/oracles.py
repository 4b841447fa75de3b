"""Brute-force ground truth.

Everything here works from the bases themselves (or, for a defining basis,
from a direct subset filter) and deliberately avoids the block-structure
code in :mod:`shiftmat.shifted` and :mod:`shiftmat.threshold`. Only plain
data types are shared.
"""

from __future__ import annotations

import itertools
import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from . import _fm
from .errors import InvalidArgumentError, ResourceLimitError, UnsupportedError
from .poset import SubsetWord
from .recognition import ExplicitMatroid
from .shifted import Circuit, DefiningBasis
from .threshold import WeightFunction

log = logging.getLogger(__name__)

Matroid = Union[DefiningBasis, ExplicitMatroid]

DEFAULT_LP_CAP = math.comb(10, 5)
DEFAULT_PAIR_CAP = 5_000_000
DEFAULT_CIRCUIT_PAIR_CAP = 5_000_000
MAX_BRUTEFORCE_N = 12


def _ground_bases(M: Matroid) -> tuple[int, int, set[int]]:
    """(n, k, set of basis bitmasks over ground positions 0..n-1)."""
    if isinstance(M, DefiningBasis):
        T, n, k = M.letters, M.n, M.k
        bases = set()
        for S in itertools.combinations(range(n), k):
            if all(s + 1 <= t for s, t in zip(S, T)):
                bases.add(sum(1 << s for s in S))
        return n, k, bases
    return M.n, M.k, set(M.masks)


def _letters(mask: int) -> tuple[int, ...]:
    out, i = [], 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


# --- LP feasibility ----------------------------------------------------------


@dataclass(frozen=True)
class LpWitness:
    """Feasible: ``weights`` with w(B) >= 1 on bases and w(D) <= 0 elsewhere.
    Infeasible: ``farkas`` lists (subset, is_basis, multiplier) whose weighted
    sum of constraints reads ``0 >= positive``."""

    feasible: bool
    weights: WeightFunction | None
    farkas: tuple[tuple[tuple[int, ...], bool, Fraction], ...] | None
    peak_rows: int

    def serialize(self) -> str:
        if self.feasible:
            return self.weights.serialize()
        lines = ["infeasible"]
        for S, basis, lam in self.farkas:
            tag = "B" if basis else "D"
            lines.append(f"{tag} {' '.join(map(str, S))}: {lam.numerator}/{lam.denominator}")
        return "\n".join(lines)

    def to_dict(self):
        if self.feasible:
            return {"feasible": True, **self.weights.to_dict()}
        return {
            "feasible": False,
            "farkas": [
                {"subset": list(S), "basis": basis, "multiplier": f"{lam.numerator}/{lam.denominator}"}
                for S, basis, lam in self.farkas
            ],
        }


def lp_threshold_oracle(M: Matroid, cap: int = DEFAULT_LP_CAP) -> LpWitness:
    """Decide whether some weights put every basis at >= 1 and every other
    k-subset at <= 0 (strict separation rescaled), by exact elimination."""
    n, k, bases = _ground_bases(M)
    total = math.comb(n, k)
    if total > cap:
        raise ResourceLimitError(f"C({n},{k}) = {total} constraints exceeds cap {cap}")
    rows, subsets = [], []
    for S in itertools.combinations(range(n), k):
        mask = sum(1 << s for s in S)
        basis = mask in bases
        a = [0] * n
        for s in S:
            a[s] = 1 if basis else -1
        rows.append((a, 1 if basis else 0))
        subsets.append((tuple(s + 1 for s in S), basis))
    res = _fm.solve(rows, n)
    log.debug("elimination on %d rows peaked at %d rows, %d repairs", len(rows), res.peak_rows, res.repairs)
    if res.feasible:
        return LpWitness(True, WeightFunction(res.point, "lp-oracle"), None, res.peak_rows)
    farkas = tuple(
        (subsets[i][0], subsets[i][1], lam) for i, lam in sorted(res.farkas.items()) if lam
    )
    return LpWitness(False, None, farkas, res.peak_rows)


def check_farkas(M: Matroid, witness: LpWitness) -> bool:
    """Recheck an infeasibility witness against the constraints of M."""
    n, k, bases = _ground_bases(M)
    coeff = [Fraction(0)] * n
    rhs = Fraction(0)
    for S, basis, lam in witness.farkas:
        if lam < 0 or len(S) != k:
            return False
        if (sum(1 << (s - 1) for s in S) in bases) != basis:
            return False
        sign = 1 if basis else -1
        for s in S:
            coeff[s - 1] += sign * lam
        rhs += lam if basis else 0
    return all(c == 0 for c in coeff) and rhs > 0


# --- uniform asummability ----------------------------------------------------


@dataclass(frozen=True)
class AsummabilityViolation:
    bases: tuple[SubsetWord, ...]
    non_bases: tuple[SubsetWord, ...]

    def serialize(self) -> str:
        lines = [f"B{i}={B}" for i, B in enumerate(self.bases, 1)]
        lines += [f"D{i}={D}" for i, D in enumerate(self.non_bases, 1)]
        return "\n".join(lines)

    def to_dict(self):
        out = {f"B{i}": list(B.letters) for i, B in enumerate(self.bases, 1)}
        out.update({f"D{i}": list(D.letters) for i, D in enumerate(self.non_bases, 1)})
        return out


def _shifted_violation(M: DefiningBasis, l: int, cap: int) -> AsummabilityViolation | None:
    """Search l-multisets of non-bases whose concatenation lies below T+...+T.

    Sorted words compare componentwise iff, for every x, the first has at
    most as many letters above x as the second; that count is additive over
    concatenation, which gives cheap pruning on partial multisets.
    """
    T, n, k = M.letters, M.n, M.k
    non_bases = [
        S for S in itertools.combinations(range(1, n + 1), k)
        if not all(s <= t for s, t in zip(S, T))
    ]
    if math.comb(len(non_bases) + l - 1, l) > cap:
        raise ResourceLimitError(f"{len(non_bases)} non-bases give too many {l}-multisets (cap {cap})")

    def above(S):
        return tuple(sum(1 for s in S if s > x) for x in range(1, n + 1))

    limit = tuple(l * c for c in above(T))
    counts = [above(S) for S in non_bases]

    def extend(start, acc, chosen):
        if len(chosen) == l:
            return chosen
        for i in range(start, len(non_bases)):
            nxt = tuple(a + c for a, c in zip(acc, counts[i]))
            if any(a > b for a, b in zip(nxt, limit)):
                continue
            found = extend(i, nxt, chosen + [i])
            if found:
                return found
        return None

    chosen = extend(0, (0,) * n, [])
    if chosen is None:
        return None
    D = [non_bases[i] for i in chosen]
    merged = sorted(x for S in D for x in S)
    B = [tuple(merged[j::l]) for j in range(l)]
    for S in B:
        if len(set(S)) != k or not all(s <= t for s, t in zip(S, T)):
            raise AssertionError(f"splitting {merged} did not give bases: {B}")
    return AsummabilityViolation(
        tuple(SubsetWord(S, n) for S in B), tuple(SubsetWord(S, n) for S in D)
    )


def _general_violation(M: Matroid, l: int, cap: int) -> AsummabilityViolation | None:
    """Hash the sorted concatenations of all basis l-multisets, then scan the
    non-basis l-multisets in lexicographic order."""
    n, k, bases = _ground_bases(M)
    basis_words = sorted(_letters(b) for b in bases)
    non_bases = [
        S for S in itertools.combinations(range(1, n + 1), k)
        if sum(1 << (s - 1) for s in S) not in bases
    ]
    if max(math.comb(len(basis_words) + l - 1, l), math.comb(len(non_bases) + l - 1, l)) > cap:
        raise ResourceLimitError(f"{l}-multisets of bases or non-bases exceed cap {cap}")
    sums: dict[tuple, tuple] = {}
    for combo in itertools.combinations_with_replacement(basis_words, l):
        sums.setdefault(tuple(sorted(itertools.chain(*combo))), combo)
    for combo in itertools.combinations_with_replacement(non_bases, l):
        key = tuple(sorted(itertools.chain(*combo)))
        if key in sums:
            return AsummabilityViolation(
                tuple(SubsetWord(S, n) for S in sums[key]),
                tuple(SubsetWord(S, n) for S in combo),
            )
    return None


def asummability_oracle(
    M: Matroid, l: int = 2, cap: int = DEFAULT_PAIR_CAP, general: bool = False
) -> AsummabilityViolation | None:
    """First l-uniform asummability violation in lexicographic order of the
    non-bases, or None. Defining bases use the order-ideal fast path unless
    ``general`` is set; explicit matroids always use the hashing path
    (labels are then ground positions 1..n)."""
    if l not in (2, 3):
        raise UnsupportedError(f"only l = 2 and l = 3 are supported, got {l}")
    if isinstance(M, DefiningBasis) and not general:
        return _shifted_violation(M, l, cap)
    return _general_violation(M, l, cap)


# --- circuits and structural predicates ----------------------------------------


def _independence_table(n: int, bases: set[int]) -> bytearray:
    if n > MAX_BRUTEFORCE_N:
        raise ResourceLimitError(f"subset sweep over 2^{n} sets exceeds the n <= {MAX_BRUTEFORCE_N} cap")
    indep = bytearray(1 << n)
    for b in bases:
        indep[b] = 1
    # subsets of independent sets are independent; larger masks first
    for mask in range((1 << n) - 1, 0, -1):
        if indep[mask]:
            m = mask
            while m:
                low = m & -m
                indep[mask ^ low] = 1
                m ^= low
    return indep


def _circuit_masks(M: Matroid) -> tuple[int, list[int]]:
    n, _, bases = _ground_bases(M)
    indep = _independence_table(n, bases)
    out = []
    for mask in range(1 << n):
        if indep[mask]:
            continue
        m, minimal = mask, True
        while m:
            low = m & -m
            if not indep[mask ^ low]:
                minimal = False
                break
            m ^= low
        if minimal:
            out.append(mask)
    return n, out


def circuits_bruteforce(M: Matroid) -> list[Circuit]:
    """Minimal dependent sets by a sweep over all 2^n subsets, sorted by
    (size, lexicographic). Elements are ground positions 1..n."""
    n, masks = _circuit_masks(M)
    words = sorted((_letters(c) for c in masks), key=lambda c: (len(c), c))
    return [Circuit(SubsetWord(c, n)) for c in words]


def binary_symdiff_oracle(M: Matroid, cap: int = DEFAULT_CIRCUIT_PAIR_CAP) -> bool:
    """Every symmetric difference of two distinct circuits contains a circuit."""
    _, masks = _circuit_masks(M)
    if len(masks) * (len(masks) - 1) // 2 > cap:
        raise ResourceLimitError(f"{len(masks)} circuits give too many pairs (cap {cap})")
    for a, b in itertools.combinations(masks, 2):
        sym = a ^ b
        if not any(c & ~sym == 0 for c in masks):
            return False
    return True


def paving_oracle(M: Matroid) -> bool:
    """Every circuit has at least k elements."""
    _, k, _ = _ground_bases(M)
    _, masks = _circuit_masks(M)
    return all(c.bit_count() >= k for c in masks)


def bases_bruteforce(M: DefiningBasis) -> list[SubsetWord]:
    """k-subsets below T by filtering all of them, lexicographic."""
    _, _, bases = _ground_bases(M)
    return [SubsetWord(S, M.n) for S in sorted(_letters(b) for b in bases)]


def shifted_by_relabeling(M: ExplicitMatroid, max_n: int = 7) -> tuple[tuple[int, ...], dict] | None:
    """Try every bijection ground -> [n]; return (T, map) for the first one
    that makes the bases exactly the k-subsets below some T."""
    n, k = M.n, M.k
    if n > max_n:
        raise ResourceLimitError(f"{math.factorial(n)} relabelings exceed the n <= {max_n} cap")
    if k > n:
        raise InvalidArgumentError("rank exceeds ground set size")
    for perm in itertools.permutations(range(1, n + 1)):
        label = dict(zip(M.ground, perm))
        words = {tuple(sorted(label[e] for e in B)) for B in M.bases}
        T = tuple(max(col) for col in zip(*words)) if k else ()
        if T not in words:
            continue
        ideal = {
            S for S in itertools.combinations(range(1, n + 1), k)
            if all(s <= t for s, t in zip(S, T))
        }
        if ideal == words:
            return T, label
    return None
