"""Recognize shifted matroids given as a list of bases.

Pipeline: ``validate_bases`` (basis exchange), ``vicinal_preorder``
(neighbourhoods of every element), ``is_shifted`` (totality of the preorder)
and ``canonicalize`` (relabel by the preorder, read off T, check the ideal).
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from functools import cached_property
from typing import Hashable, Iterable, Sequence

from .errors import (
    ContractViolationError,
    InvalidArgumentError,
    NotAMatroidError,
    VerificationFailedError,
)
from .shifted import DefiningBasis, count_bases, enumerate_bases

log = logging.getLogger(__name__)

DEFAULT_TIE_RETRIES = 10_000


@dataclass(frozen=True)
class ExplicitMatroid:
    """A rank-k matroid on ``ground`` presented by its bases.

    Build through :func:`validate_bases`; the constructor itself does not
    check the exchange axiom.
    """

    ground: tuple[Hashable, ...]
    bases: tuple[frozenset, ...]
    k: int

    @property
    def n(self) -> int:
        return len(self.ground)

    @property
    def m(self) -> int:
        return len(self.bases)

    @cached_property
    def index(self) -> dict:
        """token -> bit position (0-based, input order)."""
        return {e: i for i, e in enumerate(self.ground)}

    @cached_property
    def masks(self) -> tuple[int, ...]:
        idx = self.index
        return tuple(sum(1 << idx[e] for e in B) for B in self.bases)


def validate_bases(
    bases: Iterable[Iterable[Hashable]], ground: Sequence[Hashable] | None = None
) -> ExplicitMatroid:
    """Check the basis-exchange axiom and wrap the bases as a matroid.

    ``ground`` defaults to the tokens in order of first appearance; pass it
    to add elements lying in no basis (loops) or to fix the order.
    """
    bases = [tuple(B) for B in bases]
    if not bases:
        raise InvalidArgumentError("a matroid needs at least one basis")
    k = len(bases[0])
    for pos, B in enumerate(bases, 1):
        if len(set(B)) != len(B):
            raise InvalidArgumentError(f"basis {pos} repeats an element")
        if len(B) != k:
            raise InvalidArgumentError(f"basis {pos} has {len(B)} elements, basis 1 has {k}")
    if ground is None:
        ground = list(dict.fromkeys(e for B in bases for e in B))
    else:
        ground = list(ground)
        if len(set(ground)) != len(ground):
            raise InvalidArgumentError("ground set lists an element twice")
        known = set(ground)
        for pos, B in enumerate(bases, 1):
            extra = [e for e in B if e not in known]
            if extra:
                raise InvalidArgumentError(f"basis {pos} uses {extra[0]!r}, not in the ground set")
    M = ExplicitMatroid(tuple(ground), tuple(frozenset(B) for B in bases), k)

    masks = M.masks
    seen: dict[int, int] = {}
    for pos, mask in enumerate(masks, 1):
        if mask in seen:
            raise InvalidArgumentError(f"basis {pos} duplicates basis {seen[mask]}")
        seen[mask] = pos
    present = set(masks)
    bits = [[1 << i for i in range(M.n) if mask >> i & 1] for mask in masks]
    for a, A in enumerate(masks):
        for b, B in enumerate(masks):
            if a == b:
                continue
            only_b = [x for x in bits[b] if not A & x]
            for x in bits[a]:
                if B & x:
                    continue
                if not any((A ^ x) | y in present for y in only_b):
                    raise NotAMatroidError(M.bases[a], M.bases[b], M.ground[x.bit_length() - 1])
    return M


def explicit_from_shifted(M: DefiningBasis) -> ExplicitMatroid:
    """The bases of <T> as an explicit matroid on the ground set 1..n."""
    return ExplicitMatroid(
        tuple(range(1, M.n + 1)),
        tuple(frozenset(S.letters) for S in enumerate_bases(M)),
        M.k,
    )


def relabel(M: ExplicitMatroid, mapping: dict) -> ExplicitMatroid:
    """Rename every element; ``mapping`` must be a bijection on the ground set."""
    if len(set(mapping[e] for e in M.ground)) != M.n:
        raise InvalidArgumentError("relabeling is not injective")
    return ExplicitMatroid(
        tuple(mapping[e] for e in M.ground),
        tuple(frozenset(mapping[e] for e in B) for B in M.bases),
        M.k,
    )


# --- vicinal preorder ------------------------------------------------------


@dataclass(frozen=True)
class VicinalData:
    """Open and closed neighbourhoods per element (bitmasks of (k-1)-sets) and
    ``leq[i][j]`` = (element i precedes element j), indices in ground order."""

    ground: tuple[Hashable, ...]
    open_nbhd: tuple[frozenset, ...]
    closed_nbhd: tuple[frozenset, ...]
    leq: tuple[tuple[bool, ...], ...] = field(repr=False)

    def precedes(self, a: Hashable, b: Hashable) -> bool:
        i, j = self.ground.index(a), self.ground.index(b)
        return self.leq[i][j]


def vicinal_preorder(M: ExplicitMatroid) -> VicinalData:
    """i precedes j iff N[i] contains N(j).

    N(i) = {B - i : i in B}, N[i] = {B - j : i, j in B}; both are built in one
    pass over the (basis, element) pairs. A smaller position in the order is
    the "stronger" element: it can replace any later one.
    """
    n = M.n
    open_sets: list[set[int]] = [set() for _ in range(n)]
    closed_sets: list[set[int]] = [set() for _ in range(n)]
    for mask in M.masks:
        members = [i for i in range(n) if mask >> i & 1]
        for i in members:
            rest = mask & ~(1 << i)
            open_sets[i].add(rest)
            for j in members:
                closed_sets[j].add(rest)
    leq = tuple(
        tuple(open_sets[j] <= closed_sets[i] for j in range(n)) for i in range(n)
    )
    return VicinalData(
        M.ground,
        tuple(frozenset(s) for s in open_sets),
        tuple(frozenset(s) for s in closed_sets),
        leq,
    )


@dataclass(frozen=True)
class ShiftednessResult:
    """``order``: ground elements strongest first, when the preorder is total;
    otherwise ``witness``: an incomparable pair."""

    order: tuple[Hashable, ...] | None
    witness: tuple[Hashable, Hashable] | None = None
    ties: tuple[tuple[Hashable, ...], ...] = ()

    def __bool__(self):
        return self.order is not None


def is_shifted(M: ExplicitMatroid, data: VicinalData | None = None) -> ShiftednessResult:
    data = data or vicinal_preorder(M)
    n, leq = M.n, data.leq
    for i in range(n):
        for j in range(i + 1, n):
            if not (leq[i][j] or leq[j][i]):
                return ShiftednessResult(None, (M.ground[i], M.ground[j]))
    # in a total preorder, stronger elements precede more elements
    score = [sum(row) for row in leq]
    idx = sorted(range(n), key=lambda i: (-score[i], i))
    ties = []
    for _, grp in itertools.groupby(idx, key=lambda i: score[i]):
        grp = list(grp)
        if len(grp) > 1:
            ties.append(tuple(M.ground[i] for i in grp))
    return ShiftednessResult(tuple(M.ground[i] for i in idx), None, tuple(ties))


# --- canonical form --------------------------------------------------------


@dataclass(frozen=True)
class CanonicalForm:
    basis: DefiningBasis
    relabel: dict = field(compare=False)

    def serialize(self) -> str:
        lines = [str(self.basis)]
        lines += [f"{tok} -> {lab}" for tok, lab in sorted(self.relabel.items(), key=lambda p: p[1])]
        return "\n".join(lines)

    def to_dict(self):
        return {
            **self.basis.to_dict(),
            "relabel": [[str(tok), lab] for tok, lab in sorted(self.relabel.items(), key=lambda p: p[1])],
        }


def _try_order(M: ExplicitMatroid, order: Sequence[Hashable]) -> CanonicalForm | None:
    label = {e: i for i, e in enumerate(order, 1)}
    words = [tuple(sorted(label[e] for e in B)) for B in M.bases]
    T = tuple(max(col) for col in zip(*words)) if M.k else ()
    if T not in set(words):
        return None
    D = DefiningBasis.of(T, M.n)
    # every basis lies below T by construction; equal counts make the ideal exact
    if count_bases(D) != M.m:
        return None
    return CanonicalForm(D, label)


def canonicalize(M: ExplicitMatroid, max_retries: int = DEFAULT_TIE_RETRIES) -> CanonicalForm:
    """Relabel a shifted matroid so its bases are the ideal below some T."""
    result = is_shifted(M)
    if not result:
        a, b = result.witness
        raise ContractViolationError(f"not shifted: {a!r} and {b!r} are incomparable")
    form = _try_order(M, result.order)
    if form is not None:
        return form
    # tie classes are meant to be interchangeable; try other arrangements
    log.warning("vicinal order failed the ideal check; permuting %d tie classes", len(result.ties))
    order = list(result.order)
    slots = [[order.index(e) for e in grp] for grp in result.ties]
    tries = 0
    for perms in itertools.product(*(itertools.permutations(grp) for grp in result.ties)):
        tries += 1
        if tries > max_retries:
            break
        cand = order[:]
        for pos, perm in zip(slots, perms):
            for p, e in zip(pos, perm):
                cand[p] = e
        form = _try_order(M, cand)
        if form is not None:
            return form
    raise VerificationFailedError(f"no tie-breaking of the vicinal order gives an ideal ({tries} tried)")


# --- bases files -------------------------------------------------------------


def parse_bases(text: str, n: int | None = None) -> ExplicitMatroid:
    """One basis per line, whitespace-separated tokens; '#' starts a comment.

    With ``n`` the tokens must be integers in 1..n and the ground set is
    1..n (so elements in no basis are loops); otherwise the ground set is
    the tokens in order of first appearance.
    """
    bases = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        toks = line.split()
        if n is not None:
            row = []
            for pos, tok in enumerate(toks, 1):
                try:
                    x = int(tok)
                except ValueError:
                    raise InvalidArgumentError(f"line {lineno}, token {pos}: {tok!r} is not an integer") from None
                if not 1 <= x <= n:
                    raise InvalidArgumentError(f"line {lineno}, token {pos}: {x} lies outside [1, {n}]")
                row.append(x)
            toks = row
        bases.append(toks)
    if not bases:
        # a lone empty line cannot be told apart from no input; treat as an error
        raise InvalidArgumentError("no bases found")
    return validate_bases(bases, ground=range(1, n + 1) if n is not None else None)
