"""Shifted matroids <T>: the bases are the k-subsets S of [n] with S below T
componentwise.

Everything here is computed from the defining basis T directly; the
brute-force counterparts live in :mod:`shiftmat.oracles`.
"""

from __future__ import annotations

import logging
import re
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .errors import InvalidArgumentError, ResourceLimitError
from .poset import SubsetWord, componentwise_leq, parse_subset_word, runs

log = logging.getLogger(__name__)

DEFAULT_BASES_CAP = 2_000_000


@dataclass(frozen=True)
class DefiningBasis:
    T: SubsetWord

    @classmethod
    def of(cls, letters: Iterable[int], n: int) -> "DefiningBasis":
        return cls(SubsetWord(tuple(letters), n))

    @property
    def n(self) -> int:
        return self.T.n

    @property
    def k(self) -> int:
        return len(self.T)

    @property
    def letters(self) -> tuple[int, ...]:
        return self.T.letters

    def __str__(self):
        return f"n={self.n}; T={self.T}"

    def to_dict(self):
        return {"n": self.n, "T": list(self.letters)}


_DB_RE = re.compile(r"^\s*n\s*=\s*(\d+)\s*;\s*T\s*=(.*)$")


def parse_defining_basis(text: str) -> DefiningBasis:
    """Parse the textual form ``"n=8; T=2 4 6 8"``."""
    m = _DB_RE.match(text)
    if not m:
        raise InvalidArgumentError(f"expected 'n=<int>; T=<letters>', got {text!r}")
    return DefiningBasis(parse_subset_word(m.group(2), int(m.group(1))))


@dataclass(frozen=True)
class Circuit:
    elements: SubsetWord

    @property
    def size(self) -> int:
        return len(self.elements)

    def __str__(self):
        return str(self.elements)


def _as_subset(M: DefiningBasis, S) -> SubsetWord:
    if isinstance(S, SubsetWord):
        if S.n != M.n:
            raise InvalidArgumentError(f"subset lives on [{S.n}], matroid on [{M.n}]")
        return S
    return SubsetWord(tuple(S), M.n)


def is_basis(M: DefiningBasis, S) -> bool:
    S = _as_subset(M, S)
    if len(S) != M.k:
        raise InvalidArgumentError(f"a basis has {M.k} elements, got {len(S)}")
    return componentwise_leq(S, M.T)


def _below(bound: Sequence[int], floor: int = 0) -> Iterator[tuple[int, ...]]:
    """Strictly increasing words c with floor < c[0] and c[i] <= bound[i], lex order."""
    if not bound:
        yield ()
        return
    stack = [(0, floor, ())]
    # explicit DFS so deep k does not hit the recursion limit
    while stack:
        i, prev, acc = stack.pop()
        if i == len(bound):
            yield acc
            continue
        for x in range(bound[i], prev, -1):
            stack.append((i + 1, x, acc + (x,)))


def count_bases(M: DefiningBasis) -> int:
    """Number of k-subsets below T; O(nk) running-sum recurrence."""
    T, n = M.letters, M.n
    if not T:
        return 1
    # ways[x]: strictly increasing prefixes of current length ending at x
    ways = [0] + [1 if x <= T[0] else 0 for x in range(1, n + 1)]
    for t in T[1:]:
        new = [0] * (n + 1)
        running = 0
        for x in range(1, n + 1):
            if x <= t:
                new[x] = running
            running += ways[x]
        ways = new
    return sum(ways)


def enumerate_bases(M: DefiningBasis, cap: int = DEFAULT_BASES_CAP) -> list[SubsetWord]:
    total = count_bases(M)
    if total > cap:
        raise ResourceLimitError(f"<{M.T}> has {total} bases, cap is {cap}")
    return [SubsetWord(s, M.n) for s in _below(M.letters)]


def circuits(M: DefiningBasis) -> list[Circuit]:
    """All circuits, generated family by family from the block suffixes of T.

    For a block starting at position p of T the circuits are c0 c1 .. cm with
    m = k - p, c1..cm below T[p:], c0 < c1 and (p > 0) c0 > T[p-1]. Loops are
    the elements above max(T). Sorted by (size, lexicographic).
    """
    T, n, k = M.letters, M.n, M.k
    out = [(x,) for x in range((T[-1] if T else 0) + 1, n + 1)]
    p = 0
    for block in runs(T):
        lower = T[p - 1] if p else 0
        for tail in _below(T[p:], floor=lower + 1):
            for c0 in range(lower + 1, tail[0]):
                out.append((c0,) + tail)
        p += len(block)
    assert p == k
    out.sort(key=lambda c: (len(c), c))
    return [Circuit(SubsetWord(c, n)) for c in out]


def loops(M: DefiningBasis) -> SubsetWord:
    top = M.letters[-1] if M.k else 0
    return SubsetWord(tuple(range(top + 1, M.n + 1)), M.n)


def coloops(M: DefiningBasis) -> SubsetWord:
    j = 0
    while j < M.k and M.letters[j] == j + 1:
        j += 1
    return SubsetWord(tuple(range(1, j + 1)), M.n)


def contract_coloops(M: DefiningBasis) -> tuple[DefiningBasis, dict[int, int]]:
    """Contract every coloop; returns the contraction on [n-j] and old->new labels."""
    j = len(coloops(M))
    relabel = {x: x - j for x in range(j + 1, M.n + 1)}
    return DefiningBasis.of((t - j for t in M.letters[j:]), M.n - j), relabel


def dual(M: DefiningBasis) -> DefiningBasis:
    """Complement of T with the order of [n] reversed."""
    n = M.n
    return DefiningBasis.of(sorted(n + 1 - x for x in M.T.complement()), n)


def is_paving(M: DefiningBasis) -> bool:
    """True iff T = l, m, m+1, ..., n with l < m (every rank <= 1 matroid is paving)."""
    T, n, k = M.letters, M.n, M.k
    if k <= 1:
        return True
    return T[1:] == tuple(range(n - k + 2, n + 1)) and T[0] < T[1]


def is_free_plus_loops(M: DefiningBasis) -> bool:
    """T = {1..k} with n > k: the free matroid padded with loops."""
    return M.letters == tuple(range(1, M.k + 1)) and M.n > M.k


def is_binary_structural(M: DefiningBasis) -> bool:
    """Boolean (T = [n]) or T = {1..k} minus one l, plus one m > k.

    The free-plus-loops shape T = {1..k}, n > k matches neither printed form
    and gets False here even though its circuits (all loops) pass the
    symmetric-difference test; :func:`is_free_plus_loops` flags it.
    """
    T, n, k = M.letters, M.n, M.k
    if T == tuple(range(1, n + 1)):
        return True
    if is_free_plus_loops(M):
        log.warning("free-plus-loops shape %s: structural answer False, circuit test says binary", M)
    # k-1 distinct letters below k+1 miss exactly one l in [k]
    return k >= 1 and T[-1] > k and (k == 1 or T[-2] <= k)
