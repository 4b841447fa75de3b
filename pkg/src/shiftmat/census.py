"""Counting threshold classes among shifted matroids on [n].

Shifted isomorphism classes on [n] are the subsets T of [n] (2^n of them,
the empty one included). ``census`` classifies every non-empty T;
``threshold_count_formula`` is the closed form it must reproduce.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from decimal import ROUND_HALF_EVEN, Decimal, localcontext
from fractions import Fraction
from math import comb

from .errors import InvalidArgumentError, ResourceLimitError
from .poset import runs
from .threshold import Case, Verdict, classify_letters

DEFAULT_CENSUS_CAP = 24
DEFAULT_OFFENDER_CAP = 1000

PROOF_CASES = ("1", "2", "3a", "3b", "3c", "4a", "4b")


def _c(n: int, k: int) -> int:
    return comb(n, k) if n >= k >= 0 else 0


def threshold_count_formula(n: int) -> int:
    """F(n) = C(n+1,2) + C(n+1,4) + C(n+1,6) + C(n-1,6), non-empty T only."""
    if n < 1:
        raise InvalidArgumentError(f"n must be positive, got {n}")
    return _c(n + 1, 2) + _c(n + 1, 4) + _c(n + 1, 6) + _c(n - 1, 6)


def proof_case_formulas(n: int) -> dict[str, int]:
    """Expected size of each of the seven mutually exclusive threshold cases."""
    return {
        "1": _c(n + 1, 2),
        "2": _c(n + 1, 4),
        "3a": _c(n, 5),
        "3b": _c(n - 1, 5),
        "3c": _c(n - 2, 5),
        "4a": _c(n - 1, 6),
        "4b": _c(n - 2, 6),
    }


def proof_case(T) -> str | None:
    """Which threshold case a raw (uncontracted) T falls in, or None.

    Cases by number of blocks of T itself: 1; 2; three blocks with 1 in T
    (3a), without 1 and a singleton middle block (3b), or without 1, a
    longer middle block and a one-element gap before it (3c); four blocks
    with 1 in T and a singleton third block (4a), or a longer third block
    and a one-element gap before it (4b).
    """
    blocks = runs(T)
    first = T[0] == 1
    if len(blocks) == 1:
        return "1"
    if len(blocks) == 2:
        return "2"
    if len(blocks) == 3:
        if first:
            return "3a"
        if len(blocks[1]) == 1:
            return "3b"
        if blocks[1][0] - blocks[0][-1] == 2:
            return "3c"
        return None
    if len(blocks) == 4 and first:
        if len(blocks[2]) == 1:
            return "4a"
        if blocks[2][0] - blocks[1][-1] == 2:
            return "4b"
    return None


@dataclass(frozen=True)
class CensusReport:
    n: int
    shifted_classes: int
    non_empty: int
    threshold_by_case: dict[str, int]
    non_threshold_by_case: dict[str, int]
    proof_cases: dict[str, int]
    non_threshold_examples: tuple[tuple[int, ...], ...]
    examples_truncated: bool = field(default=False)

    @property
    def threshold_count(self) -> int:
        return sum(self.threshold_by_case.values())

    @property
    def non_threshold_count(self) -> int:
        return sum(self.non_threshold_by_case.values())

    @property
    def ratio(self) -> Fraction:
        return Fraction(self.threshold_count, self.shifted_classes)

    def to_dict(self):
        return {
            "n": self.n,
            "shifted_classes": self.shifted_classes,
            "non_empty": self.non_empty,
            "threshold_count": self.threshold_count,
            "threshold_by_case": self.threshold_by_case,
            "non_threshold_count": self.non_threshold_count,
            "non_threshold_by_case": self.non_threshold_by_case,
            "proof_cases": self.proof_cases,
            "non_threshold_examples": [" ".join(map(str, T)) for T in self.non_threshold_examples],
            "examples_truncated": self.examples_truncated,
            "ratio": {"numerator": self.threshold_count, "denominator": self.shifted_classes},
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


def census(n: int, cap: int = DEFAULT_CENSUS_CAP, offender_cap: int = DEFAULT_OFFENDER_CAP) -> CensusReport:
    """Classify every non-empty T of [n] (bitmasks in increasing order)."""
    if n < 1:
        raise InvalidArgumentError(f"n must be positive, got {n}")
    if n > cap:
        raise ResourceLimitError(f"census over 2^{n} subsets exceeds the n <= {cap} cap")
    thr = {c.value: 0 for c in Case if c not in (Case.FOUR_PLUS_BLOCKS, Case.THREE_BLOCKS_BAD)}
    bad = {Case.FOUR_PLUS_BLOCKS.value: 0, Case.THREE_BLOCKS_BAD.value: 0}
    cases = dict.fromkeys(PROOF_CASES, 0)
    offenders = []
    truncated = False
    for mask in range(1, 1 << n):
        T = tuple(i + 1 for i in range(n) if mask >> i & 1)
        verdict, case = classify_letters(T)
        pc = proof_case(T)
        if pc is not None:
            cases[pc] += 1
        if verdict is Verdict.THRESHOLD:
            thr[case.value] += 1
        else:
            bad[case.value] += 1
            if len(offenders) < offender_cap:
                offenders.append(T)
            else:
                truncated = True
    return CensusReport(n, 1 << n, (1 << n) - 1, thr, bad, cases, tuple(offenders), truncated)


def ratio_series(n_max: int, n_min: int = 1) -> list[tuple[int, int, int]]:
    """(n, F(n), 2^n) for n_min..n_max; the fraction is left unreduced."""
    if n_min < 1 or n_max < n_min:
        raise InvalidArgumentError(f"need 1 <= n_min <= n_max, got {n_min}..{n_max}")
    return [(n, threshold_count_formula(n), 1 << n) for n in range(n_min, n_max + 1)]


def decimal_ratio(num: int, den: int, places: int = 6) -> str:
    """Exact ratio rounded half-to-even to ``places`` decimals."""
    with localcontext() as ctx:
        ctx.prec = len(str(num)) + len(str(den)) + places + 10
        q = Decimal(num) / Decimal(den)
        return str(q.quantize(Decimal(1).scaleb(-places), rounding=ROUND_HALF_EVEN))


def percent(num: int, den: int, places: int = 2) -> str:
    return decimal_ratio(100 * num, den, places) + "%"


def ratio_csv(series) -> str:
    lines = ["n,numerator,denominator,decimal"]
    lines += [f"{n},{num},{den},{decimal_ratio(num, den)}" for n, num, den in series]
    return "\n".join(lines) + "\n"
