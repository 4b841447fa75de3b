"""Thresholdness of shifted matroids from the block structure of T.

``classify`` reads the verdict off the blocks of the coloop-free part of T.
Threshold cases get an explicit exact-rational weight function from
``synthesize_weights``; the others get a two-bases/two-non-bases trade from
``certificate``. Both kinds of witness have independent checkers.
"""

from __future__ import annotations

import enum
import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .errors import ContractViolationError, InvariantViolationError, ResourceLimitError
from .poset import SubsetWord, Word, runs, sorted_concat
from .shifted import DefiningBasis, coloops, contract_coloops, dual

DEFAULT_FULL_CAP = 1_000_000


class Verdict(str, enum.Enum):
    THRESHOLD = "Threshold"
    NOT_THRESHOLD = "NotThreshold"
    DEGENERATE_RANK_ZERO = "DegenerateRankZero"


class Case(str, enum.Enum):
    AT_MOST_TWO_BLOCKS = "AtMostTwoBlocks"
    THREE_BLOCKS_SECOND_BLOCK_ONE = "ThreeBlocksSecondBlockOne"
    THREE_BLOCKS_SECOND_GAP_ONE = "ThreeBlocksSecondGapOne"
    FOUR_PLUS_BLOCKS = "FourPlusBlocks"
    THREE_BLOCKS_BAD = "ThreeBlocksBad"


@dataclass(frozen=True)
class ThresholdClassification:
    verdict: Verdict
    case: Case | None
    coloops: tuple[int, ...]
    contracted: DefiningBasis
    relabel: dict[int, int] = field(compare=False, repr=False)

    def __str__(self):
        return self.verdict.value if self.case is None else f"{self.verdict.value} {self.case.value}"

    def to_dict(self):
        return {
            "verdict": self.verdict.value,
            "case": None if self.case is None else self.case.value,
            "coloops": list(self.coloops),
            "contracted": self.contracted.to_dict(),
        }


def classify_letters(T: Sequence[int]) -> tuple[Verdict, Case | None]:
    """Verdict for a strictly increasing T; the census sweep calls this directly."""
    if not T:
        return Verdict.DEGENERATE_RANK_ZERO, None
    j = 0
    while j < len(T) and T[j] == j + 1:
        j += 1
    blocks = runs(T[j:])
    if len(blocks) <= 2:
        return Verdict.THRESHOLD, Case.AT_MOST_TWO_BLOCKS
    if len(blocks) >= 4:
        return Verdict.NOT_THRESHOLD, Case.FOUR_PLUS_BLOCKS
    if len(blocks[1]) == 1:
        return Verdict.THRESHOLD, Case.THREE_BLOCKS_SECOND_BLOCK_ONE
    # coloop-free T starts with a gap, so its second gap sits between blocks 1 and 2
    if blocks[1][0] - blocks[0][-1] - 1 == 1:
        return Verdict.THRESHOLD, Case.THREE_BLOCKS_SECOND_GAP_ONE
    return Verdict.NOT_THRESHOLD, Case.THREE_BLOCKS_BAD


def classify(M: DefiningBasis) -> ThresholdClassification:
    contracted, relabel = contract_coloops(M)
    verdict, case = classify_letters(M.letters)
    return ThresholdClassification(verdict, case, coloops(M).letters, contracted, relabel)


# --- weight functions ---------------------------------------------------


@dataclass(frozen=True)
class WeightFunction:
    weights: tuple[Fraction, ...]
    provenance: str = ""

    def __post_init__(self):
        object.__setattr__(self, "weights", tuple(Fraction(x) for x in self.weights))

    def __len__(self):
        return len(self.weights)

    def __getitem__(self, i: int) -> Fraction:
        """Weight of element ``i`` (1-based)."""
        return self.weights[i - 1]

    def weigh(self, S) -> Fraction:
        return sum((self.weights[x - 1] for x in S), Fraction(0))

    def serialize(self) -> str:
        return "\n".join(
            f"{i}: {w.numerator}/{w.denominator}" for i, w in enumerate(self.weights, 1)
        )

    def to_dict(self):
        return {
            "weights": [f"{w.numerator}/{w.denominator}" for w in self.weights],
            "provenance": self.provenance,
        }


NEG_INF = None  # placeholder for a -infinity entry before finalisation


def _strictify(w: list, k: int) -> list:
    return [None if x is NEG_INF else 2 * k * x + 1 for x in w]


def _replace_neg_inf(w: list, k: int) -> list[Fraction]:
    finite = [abs(x) for x in w if x is not NEG_INF]
    L = 1 + k * max(finite, default=0)
    return [Fraction(-L) if x is NEG_INF else Fraction(x) for x in w]


def _one_block(n: int, k: int, t0: int) -> list:
    return [0 if j <= t0 else -1 for j in range(1, n + 1)]


def _two_blocks(n: int, b1: tuple, b2: tuple) -> list:
    t1, t2, lam1, lam2 = b1[-1], b2[-1], len(b1), len(b2)
    return [lam2 if j <= t1 else -lam1 if j <= t2 else NEG_INF for j in range(1, n + 1)]


def _three_blocks_middle_singleton(n: int, b1: tuple, b2: tuple, b3: tuple) -> list:
    l1, l3 = len(b1), len(b3)
    t1, t2, t3 = b1[-1], b2[-1], b3[-1]
    high = 2 * l3**3 + 6 * l3**2 + 4 * l3 + 1
    mid = (1 - 2 * l1) * l3**2 + (1 - 3 * l1) * l3
    low = -2 * l1 * l3**2 - (4 * l1 + 1) * l3 - (l1 + 1)
    return [
        high if j <= t1 else mid if j <= t2 else low if j <= t3 else NEG_INF
        for j in range(1, n + 1)
    ]


def _lift_coloops(w: list[Fraction], rank: int, count: int) -> list[Fraction]:
    """Re-add ``count`` coloops in front; ``rank`` is the rank before lifting."""
    for _ in range(count):
        rank += 1
        alpha = max(w) + 1
        w = [(rank - 1) * alpha] + [x - alpha for x in w]
    return w


def _coloop_free_weights(M: DefiningBasis, allow_dual: bool) -> tuple[list[Fraction], str]:
    n, k, T = M.n, M.k, M.letters
    blocks = runs(T)
    if len(blocks) == 1:
        return _replace_neg_inf(_strictify(_one_block(n, k, T[-1]), k), k), "one-block"
    if len(blocks) == 2:
        return _replace_neg_inf(_strictify(_two_blocks(n, *blocks), k), k), "two-blocks"
    if len(blocks) == 3 and len(blocks[1]) == 1:
        w = _three_blocks_middle_singleton(n, *blocks)
        return _replace_neg_inf(w, k), "three-blocks-middle-singleton"
    if len(blocks) == 3 and blocks[1][0] - blocks[0][-1] == 2 and allow_dual:
        D = dual(M)
        wd, inner = _weights(D, allow_dual=False)
        # w(B) = wd(complement of B, reversed labels) for every k-subset B
        c = sum(wd, Fraction(0))
        w = [c / k - wd[n - i] for i in range(1, n + 1)]
        return w, f"dual-transport({inner})"
    raise ContractViolationError(f"no weight construction applies to <{M.T}>")


def _weights(M: DefiningBasis, allow_dual: bool = True) -> tuple[list[Fraction], str]:
    contracted, _ = contract_coloops(M)
    j = M.n - contracted.n
    if contracted.k == 0:
        # T = [k]: one block ending at k, built directly on the full ground set
        if M.k == 0:
            raise ContractViolationError("rank-0 matroids admit no weight function")
        w = _replace_neg_inf(_strictify(_one_block(M.n, M.k, M.k), M.k), M.k)
        return w, "one-block"
    w, how = _coloop_free_weights(contracted, allow_dual)
    if j:
        w = _lift_coloops(w, contracted.k, j)
        how = f"lift({j} coloops, {how})"
    return w, how


def synthesize_weights(M: DefiningBasis) -> WeightFunction:
    verdict, case = classify_letters(M.letters)
    if verdict is not Verdict.THRESHOLD:
        raise ContractViolationError(f"<{M.T}> on [{M.n}] is {verdict.value}; no weights exist")
    w, how = _weights(M)
    return WeightFunction(tuple(w), how)


def _minimal_non_bases(M: DefiningBasis):
    """M_i = {1..i-1} + {t_i+1, ..., t_i+1+(k-i)}: every non-basis dominates one."""
    T, n, k = M.letters, M.n, M.k
    for i in range(1, k + 1):
        t = T[i - 1]
        if t + 1 + k - i <= n:
            yield tuple(range(1, i)) + tuple(range(t + 1, t + 2 + k - i))


def verify_weights(
    M: DefiningBasis, w: WeightFunction, mode: str = "full", cap: int = DEFAULT_FULL_CAP
) -> bool:
    """Check that w separates bases (w > 0) from the other k-subsets (w <= 0).

    ``structural`` is sound but incomplete: it also demands w be weakly
    decreasing, then only looks at T and the dominating minimal non-bases.
    """
    T, n, k = M.letters, M.n, M.k
    if len(w) != n:
        return False
    if mode == "structural":
        ws = w.weights
        if any(ws[i] < ws[i + 1] for i in range(n - 1)):
            return False
        if w.weigh(T) <= 0:
            return False
        return all(w.weigh(S) <= 0 for S in _minimal_non_bases(M))
    if mode != "full":
        raise ValueError(f"unknown mode {mode!r}")
    total = math.comb(n, k)
    if total > cap:
        raise ResourceLimitError(f"C({n},{k}) = {total} subsets exceeds cap {cap}")
    for S in itertools.combinations(range(1, n + 1), k):
        basis = all(s <= t for s, t in zip(S, T))
        if (w.weigh(S) > 0) != basis:
            return False
    return True


# --- non-threshold certificates -------------------------------------------


@dataclass(frozen=True)
class NonThresholdCertificate:
    B1: SubsetWord
    B2: SubsetWord
    D1: SubsetWord
    D2: SubsetWord

    def serialize(self) -> str:
        return "\n".join(f"{name}={getattr(self, name)}" for name in ("B1", "B2", "D1", "D2"))

    def to_dict(self):
        return {name: list(getattr(self, name).letters) for name in ("B1", "B2", "D1", "D2")}


def _trade_four_blocks(blocks):
    # merge blocks 4.. into one run starting where block 4 starts
    tail = sum(len(b) for b in blocks[3:])
    p1, p2, p3 = blocks[:3]
    p4 = tuple(range(blocks[3][0], blocks[3][0] + tail))
    d1 = (p1[0] - 1,) + p1 + p2[1:] + p3[1:] + (p4[0] - 1,) + p4
    d2 = p1[1:] + (p2[0] - 1,) + p2 + (p3[0] - 1,) + p3 + p4[1:]
    return d1, d2


def _trade_three_blocks(blocks):
    p1, p2, p3 = blocks
    d1 = (p1[0] - 1,) + p1 + p2[2:] + (p3[0] - 1,) + p3
    d2 = p1[1:] + (p2[0] - 2, p2[0] - 1) + p2 + p3[1:]
    return d1, d2


def split_by_positions(word: Sequence[int], parts: int) -> list[tuple[int, ...]]:
    """B_j takes positions j, j+parts, j+2*parts, ... of a sorted concatenation."""
    return [tuple(word[j::parts]) for j in range(parts)]


def certificate(M: DefiningBasis) -> NonThresholdCertificate:
    verdict, case = classify_letters(M.letters)
    if verdict is not Verdict.NOT_THRESHOLD:
        raise ContractViolationError(f"<{M.T}> on [{M.n}] is {verdict.value}; no certificate exists")
    contracted, _ = contract_coloops(M)
    j = M.n - contracted.n
    blocks = runs(contracted.letters)
    if case is Case.FOUR_PLUS_BLOCKS:
        d1, d2 = _trade_four_blocks(blocks)
    else:
        d1, d2 = _trade_three_blocks(blocks)
    b1, b2 = split_by_positions(sorted(d1 + d2), 2)

    head = tuple(range(1, j + 1))

    def lift(s):
        return SubsetWord(head + tuple(x + j for x in sorted(s)), M.n)

    try:
        cert = NonThresholdCertificate(lift(b1), lift(b2), lift(d1), lift(d2))
    except ValueError as exc:
        raise InvariantViolationError(f"certificate for <{M.T}> is not made of sets: {exc}") from exc
    if not verify_certificate(M, cert):
        raise InvariantViolationError(f"certificate for <{M.T}> failed verification: {cert}")
    return cert


def verify_certificate(M: DefiningBasis, c: NonThresholdCertificate) -> bool:
    T, k = M.letters, M.k

    def basis(S):
        return all(s <= t for s, t in zip(S, T))

    parts = (c.B1, c.B2, c.D1, c.D2)
    if any(len(S) != k or S.n != M.n for S in parts):
        return False
    if not (basis(c.B1) and basis(c.B2)) or basis(c.D1) or basis(c.D2):
        return False
    return sorted_concat(c.B1, c.B2) == sorted_concat(c.D1, c.D2)


def doubled(M: DefiningBasis, copies: int = 2) -> Word:
    """T + T + ... + T."""
    return Word(tuple(sorted(M.letters * copies)), M.n)
