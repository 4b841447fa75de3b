"""Exact Fourier-Motzkin elimination for systems ``a . x >= b``.

Private to the oracles. Coefficients stay integral (rows are combined with
positive integer multipliers and divided by the gcd of their coefficients);
right-hand sides are Fractions.

Redundancy control:

* rows with the same coefficient vector keep only the strongest bound;
* a derived row built from h input rows is dropped when h exceeds one plus
  the number of variables its input rows mention but it no longer does
  (Chernikov's rule, implicit eliminations counted).

The two together are fast but not guaranteed to keep every needed row, so
every answer is certified instead of trusted. A contradiction ``0 >= c > 0``
is always a genuine nonnegative combination of input rows and is returned
as explicit multipliers. A feasible answer is a point obtained by
back-substitution, and the last step of that checks every input row. If
back-substitution gets stuck at variable v, step v pruned too much; it is
redone without pruning and elimination resumes from there.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Sequence

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class FMResult:
    feasible: bool
    point: tuple[Fraction, ...] | None
    # input row index -> multiplier; the combination reads 0 >= positive
    farkas: dict[int, Fraction] | None
    peak_rows: int
    repairs: int


class _Rows:
    """Provenance store: derived row id -> (parent ids, multipliers, divisor)."""

    def __init__(self, n_inputs: int):
        self.parents: list = [None] * n_inputs

    def derive(self, p, mp, q, mq, g):
        self.parents.append((p, mp, q, mq, g))
        return len(self.parents) - 1

    def expand(self, rid: int) -> dict[int, Fraction]:
        out: dict[int, Fraction] = {}
        todo = [(rid, Fraction(1))]
        while todo:
            r, m = todo.pop()
            src = self.parents[r]
            if src is None:
                out[r] = out.get(r, Fraction(0)) + m
                continue
            p, mp, q, mq, g = src
            todo.append((p, m * mp / g))
            todo.append((q, m * mq / g))
        return out


def _normalize(coeffs):
    g = 0
    for c in coeffs:
        g = gcd(g, c)
    if g > 1:
        return tuple(c // g for c in coeffs), g
    return coeffs, 1


def _support(coeffs) -> int:
    m = 0
    for i, c in enumerate(coeffs):
        if c:
            m |= 1 << i
    return m


def _keep(table, coeffs, row):
    old = table.get(coeffs)
    # row = (rhs, hist, support, rid)
    if old is None or row[0] > old[0] or (row[0] == old[0] and row[1].bit_count() < old[1].bit_count()):
        table[coeffs] = row


def _eliminate(table, v, store: _Rows, prune: bool):
    pos, neg, nxt = [], [], {}
    for coeffs, row in table.items():
        c = coeffs[v]
        if c > 0:
            pos.append((coeffs, row))
        elif c < 0:
            neg.append((coeffs, row))
        else:
            nxt[coeffs] = row
    width = range(len(pos[0][0]) if pos else 0)
    for pa, (pb, ph, ps, pid) in pos:
        cp = pa[v]
        for na, (nb, nh, ns, nid) in neg:
            cn = -na[v]
            hist = ph | nh
            sup = ps | ns
            h = hist.bit_count()
            raw = [cn * pa[i] + cp * na[i] for i in width]
            newsup = 0
            g = 0
            for i in width:
                if raw[i]:
                    newsup |= 1 << i
                    g = gcd(g, raw[i])
            if not newsup:
                rhs = cn * pb + cp * nb
                if rhs > 0:
                    return None, store.derive(pid, cn, nid, cp, 1)
                continue
            if prune and h > 2 and h > 1 + (sup & ~newsup).bit_count():
                continue
            coeffs = tuple(raw) if g == 1 else tuple(c // g for c in raw)
            rhs = (cn * pb + cp * nb) / g
            old = nxt.get(coeffs)
            if old is not None and old[0] >= rhs and old[1].bit_count() <= hist.bit_count():
                continue
            _keep(nxt, coeffs, (rhs, hist, sup, store.derive(pid, cn, nid, cp, g)))
    log.debug("eliminated x%d: %d rows (+%d, -%d)", v, len(nxt), len(pos), len(neg))
    return nxt, None


def _back_substitute(stages, nvars):
    x = [Fraction(0)] * nvars
    for v in reversed(range(nvars)):
        lo = hi = None
        for coeffs, (rhs, _, _, _) in stages[v].items():
            c = coeffs[v]
            if c == 0:
                continue
            rest = rhs - sum(coeffs[u] * x[u] for u in range(v + 1, nvars) if coeffs[u])
            bound = rest / c
            if c > 0:
                lo = bound if lo is None or bound > lo else lo
            else:
                hi = bound if hi is None or bound < hi else hi
        if lo is not None and hi is not None and lo > hi:
            return None, v
        x[v] = lo if lo is not None else hi if hi is not None else Fraction(0)
    return tuple(x), None


def solve(rows: Sequence[tuple[Sequence[int], int]], nvars: int) -> FMResult:
    """Decide feasibility of ``{x : a_i . x >= b_i}``; certify either answer."""
    store = _Rows(len(rows))
    base: dict = {}
    for idx, (a, b) in enumerate(rows):
        coeffs = tuple(int(c) for c in a)
        if not any(coeffs):
            if b > 0:
                return FMResult(False, None, {idx: Fraction(1)}, len(rows), 0)
            continue
        coeffs, g = _normalize(coeffs)
        rid = idx
        if g > 1:
            rid = store.derive(idx, 1, idx, 0, g)
        _keep(base, coeffs, (Fraction(b) / g, 1 << idx, _support(coeffs), rid))

    stages = [base]
    exact = [False] * nvars
    peak = len(base)
    repairs = 0
    while True:
        while len(stages) <= nvars:
            v = len(stages) - 1
            nxt, bad = _eliminate(stages[v], v, store, prune=not exact[v])
            if bad is not None:
                return FMResult(False, None, store.expand(bad), peak, repairs)
            stages.append(nxt)
            peak = max(peak, len(nxt))
        point, stuck = _back_substitute(stages, nvars)
        if point is not None:
            return FMResult(True, point, None, peak, repairs)
        if exact[stuck]:
            raise AssertionError(f"exact elimination of x{stuck} did not project correctly")
        log.debug("back-substitution stuck at x%d; redoing that step unpruned", stuck)
        exact[stuck] = True
        repairs += 1
        del stages[stuck + 1:]
