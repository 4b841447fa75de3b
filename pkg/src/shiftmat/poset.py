"""Weakly increasing words over [n] and the componentwise order on them.

A word carries its ground-set size ``n``; a subset word is a strictly
increasing word and additionally exposes a bitmask (bit ``i-1`` for letter
``i``).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

from .errors import DegenerateInputError, InvalidArgumentError


@dataclass(frozen=True)
class Word:
    letters: tuple[int, ...]
    n: int

    def __post_init__(self):
        letters = tuple(int(x) for x in self.letters)
        object.__setattr__(self, "letters", letters)
        if self.n < 0:
            raise InvalidArgumentError(f"ground-set size must be non-negative, got {self.n}")
        for pos, x in enumerate(letters):
            if not 1 <= x <= self.n:
                raise InvalidArgumentError(
                    f"letter {x} at position {pos + 1} lies outside [1, {self.n}]"
                )
            if pos and letters[pos - 1] > x:
                raise InvalidArgumentError(
                    f"letters must be weakly increasing (position {pos + 1})"
                )

    def __len__(self):
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __getitem__(self, i):
        return self.letters[i]

    def __str__(self):
        return " ".join(map(str, self.letters))


@dataclass(frozen=True)
class SubsetWord(Word):
    def __post_init__(self):
        super().__post_init__()
        for pos in range(1, len(self.letters)):
            if self.letters[pos - 1] == self.letters[pos]:
                raise InvalidArgumentError(
                    f"subset letters must be strictly increasing (position {pos + 1})"
                )

    @cached_property
    def mask(self) -> int:
        m = 0
        for x in self.letters:
            m |= 1 << (x - 1)
        return m

    def __contains__(self, x):
        return 1 <= x <= self.n and bool(self.mask >> (x - 1) & 1)

    def complement(self) -> tuple[int, ...]:
        return tuple(x for x in range(1, self.n + 1) if x not in self)

    @classmethod
    def from_mask(cls, mask: int, n: int) -> "SubsetWord":
        return cls(tuple(i + 1 for i in range(n) if mask >> i & 1), n)


@dataclass(frozen=True)
class BlockDecomposition:
    """Maximal runs of T (blocks) and of its complement (gaps), in order."""

    blocks: tuple[tuple[int, ...], ...]
    gaps: tuple[tuple[int, ...], ...]
    n: int
    starts_with_block: bool

    @property
    def sizes(self) -> tuple[int, ...]:
        return tuple(len(b) for b in self.blocks)

    def block(self, i: int) -> tuple[int, ...]:
        """1-based block accessor."""
        return self.blocks[i - 1]

    def gap(self, j: int) -> tuple[int, ...]:
        """1-based gap accessor."""
        return self.gaps[j - 1]


def _check_same_shape(s: Word, t: Word):
    if len(s) != len(t):
        raise InvalidArgumentError(f"words have different lengths ({len(s)} vs {len(t)})")
    if s.n != t.n:
        raise InvalidArgumentError(f"words live on different ground sets ({s.n} vs {t.n})")


def componentwise_leq(s: Word, t: Word) -> bool:
    _check_same_shape(s, t)
    return all(a <= b for a, b in zip(s.letters, t.letters))


def matching_witness(s: Word, t: Word) -> tuple[int, ...] | None:
    """Find a position bijection ``pi`` with ``s[i] <= t[pi[i]]`` for every i.

    Positions are 0-based. Positions of ``s`` are processed in increasing
    order and each takes the smallest unused position of ``t`` able to cover
    it; this greedy is optimal because the admissible sets are nested.
    """
    _check_same_shape(s, t)
    used = [False] * len(t)
    pi = []
    for a in s.letters:
        for j, b in enumerate(t.letters):
            if not used[j] and b >= a:
                used[j] = True
                pi.append(j)
                break
        else:
            return None
    return tuple(pi)


def sorted_concat(a: Word, b: Word) -> Word:
    if a.n != b.n:
        raise InvalidArgumentError(f"words live on different ground sets ({a.n} vs {b.n})")
    return Word(tuple(sorted(a.letters + b.letters)), a.n)


def concat_all(words: Iterable[Word]) -> Word:
    words = list(words)
    if not words:
        raise InvalidArgumentError("nothing to concatenate")
    out = words[0]
    for w in words[1:]:
        out = sorted_concat(out, w)
    return out


def runs(values: Sequence[int]) -> list[tuple[int, ...]]:
    """Split an increasing sequence into maximal runs of consecutive integers."""
    out: list[list[int]] = []
    for x in values:
        if out and out[-1][-1] + 1 == x:
            out[-1].append(x)
        else:
            out.append([x])
    return [tuple(r) for r in out]


def block_decomposition(t: SubsetWord) -> BlockDecomposition:
    if not len(t):
        raise DegenerateInputError("the empty set has no block decomposition")
    return BlockDecomposition(
        blocks=tuple(runs(t.letters)),
        gaps=tuple(runs(t.complement())),
        n=t.n,
        starts_with_block=t.letters[0] == 1,
    )


def parse_subset_word(text: str, n: int) -> SubsetWord:
    """Parse ``"2 4 6 8"``; errors name the 1-based position of the bad token."""
    tokens = text.replace(",", " ").split()
    letters = []
    for pos, tok in enumerate(tokens, 1):
        try:
            x = int(tok)
        except ValueError:
            raise InvalidArgumentError(f"token {pos} ({tok!r}) is not an integer") from None
        if not 1 <= x <= n:
            raise InvalidArgumentError(f"token {pos} ({tok!r}) lies outside [1, {n}]")
        if letters and x <= letters[-1]:
            raise InvalidArgumentError(
                f"token {pos} ({tok!r}) breaks strict increase (previous {letters[-1]})"
            )
        letters.append(x)
    return SubsetWord(tuple(letters), n)
