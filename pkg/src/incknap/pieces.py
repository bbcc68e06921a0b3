"""Disjunctive pieces of the IIK relaxation: stairways, guess maps and piece LPs.

A piece is fixed by a stairway (when each new top profit class first shows
up) plus a map ``rho`` guessing, for every significant time and every class
in the window following the current top class, how many items of that class
are in the knapsack.  Times are 1-based, items and classes 0-based.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterator, Mapping, Optional, Sequence

from .lp import LE, LinearProgram
from .preprocess import SMALL, c_eps, num_profit_classes, significant_times

ZERO = Fraction(0)


@dataclass(frozen=True)
class Stairway:
    """Grid entries ``(j, k)``: j strictly decreasing, k strictly increasing.

    ``j`` indexes significant times (1-based), ``k`` profit classes.
    """

    entries: tuple

    def __post_init__(self):
        e = tuple(tuple(p) for p in self.entries)
        object.__setattr__(self, "entries", e)
        for (j1, k1), (j2, k2) in zip(e, e[1:]):
            if not (j1 > j2 and k1 < k2):
                raise ValueError(f"not a stairway: {e}")

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)


def enumerate_stairways(J: int, K: int, require_k1_zero: bool = True,
                        include_empty: bool = False,
                        allowed_classes: Optional[set] = None,
                        prune: Optional[Callable] = None) -> Iterator[Stairway]:
    """Every stairway on the grid [J] x [K]_0, in lexicographic order.

    ``prune(entries)`` may return True to drop a prefix together with all
    of its extensions.
    """
    if J < 1 or K < 0:
        raise ValueError("need J >= 1 and K >= 0")
    ks = [k for k in range(K + 1) if allowed_classes is None or k in allowed_classes]

    def extend(prefix):
        if prune is not None and prune(prefix):
            return
        yield Stairway(prefix)
        j0, k0 = prefix[-1]
        for j in range(1, j0):
            for k in ks:
                if k > k0:
                    yield from extend(prefix + ((j, k),))

    if include_empty and not require_k1_zero:
        yield Stairway(())
    first_ks = [0] if require_k1_zero else ks
    for j in range(1, J + 1):
        for k in first_ks:
            if k in ks:
                yield from extend(((j, k),))


@dataclass(frozen=True)
class Block:
    """Stairway entry h: top class ``k`` from time ``start`` until before ``stop``."""

    start: int            # t_h
    stop: int             # t_{h-1} (T+1 for the first block)
    k: int                # k_h
    next_k: int           # k_{h+1}, K+1 for the last block
    times: tuple          # significant times in [start, stop)
    classes: tuple        # window k_h .. k_h + C_eps, clipped to K


def stairway_blocks(s: Stairway, times: Sequence[int], T: int, K: int, C: int) -> tuple:
    out = []
    stop = T + 1
    entries = list(s)
    for h, (j, k) in enumerate(entries):
        start = times[j - 1]
        nk = entries[h + 1][1] if h + 1 < len(entries) else K + 1
        window = tuple(range(k, min(k + C, K) + 1))
        out.append(Block(start, stop, k, nk, tuple(t for t in times if start <= t < stop), window))
        stop = start
    return tuple(out)


@dataclass(frozen=True)
class RhoMap:
    """Guessed counts ``values[(t, k)]``; cells on ``domain`` not listed are 0."""

    values: Mapping
    domain: tuple

    def __getitem__(self, cell):
        return self.values.get(cell, 0)

    def items(self):
        return ((c, self.values.get(c, 0)) for c in self.domain)


def rho_limits(eps) -> tuple:
    """(exact, cap): counts up to ``exact`` are exact, ``cap`` means at least cap."""
    exact = math.ceil(1 / Fraction(eps))
    return exact, exact + 1


def enumerate_rho(s: Stairway, eps, times: Sequence[int], class_sizes=None,
                  T: Optional[int] = None, K: Optional[int] = None,
                  prune: Optional[Callable] = None, C: Optional[int] = None) -> Iterator[RhoMap]:
    """All guess maps for stairway ``s``.

    ``class_sizes[k]`` is the total multiplicity of class k (``None`` for
    unbounded); ``None`` for the whole argument disables size pruning.
    ``prune(t, values)`` is called once every cell at time t is set and may
    return True to cut the subtree.
    """
    eps = Fraction(eps)
    T = T if T is not None else max(times)
    if K is None:
        K = max(range(len(class_sizes))) if class_sizes is not None else max(k for _, k in s)
    C = c_eps(eps) if C is None else C
    _, cap = rho_limits(eps)
    blocks = stairway_blocks(s, times, T, K, C)

    def size(k):
        if class_sizes is None:
            return cap
        v = class_sizes[k] if k < len(class_sizes) else 0
        return cap if v is None else min(cap, v)

    # cells in ascending time, then class; each knows the previous cell of its class
    cells = []
    domain = []
    last = {}
    for blk in reversed(blocks):
        for t in blk.times:
            for k in blk.classes:
                domain.append((t, k))
                hi = size(k)
                lo = 1 if k == blk.k else 0
                if hi < lo:
                    return
                cells.append((t, k, lo, hi, last.get(k)))
                last[k] = (t, k)
    domain = tuple(domain)
    layer_end = {i for i in range(len(cells)) if i + 1 == len(cells) or cells[i + 1][0] != cells[i][0]}
    values = {}

    def rec(idx):
        if idx == len(cells):
            yield RhoMap({c: v for c, v in values.items() if v}, domain)
            return
        t, k, lo, hi, prev = cells[idx]
        if prev is not None:
            lo = max(lo, values[prev])
        for v in range(lo, hi + 1):
            values[(t, k)] = v
            if idx in layer_end and prune is not None and prune(t, values):
                continue
            yield from rec(idx + 1)
        del values[(t, k)]

    yield from rec(0)


@dataclass
class Frame:
    """Per-instance data shared by all pieces of one well-behaved instance."""

    profits: tuple
    weights: tuple
    capacities: tuple
    mult: tuple                 # None = unbounded
    eps: Fraction
    T: int
    K: int
    C: int
    exact: int
    cap: int
    times: tuple                # significant times
    band_len: dict              # significant time -> number of times it stands for
    classes: tuple              # per item class or SMALL
    members: dict               # class -> items sorted by (weight, index)
    class_sizes: list           # per class total multiplicity (None unbounded)

    @classmethod
    def build(cls, inst, eps) -> "Frame":
        eps = Fraction(eps)
        T = inst.T
        K = num_profit_classes(T, eps)
        exact, cap = rho_limits(eps)
        times = significant_times(T, eps)
        band_len = {}
        for a, s in enumerate(times):
            nxt = times[a + 1] if a + 1 < len(times) else T + 1
            band_len[s] = nxt - s
        base = 1 + eps
        classes = []
        for p in inst.profits:
            k = None
            for j in range(K + 1):
                if p == 1 / base ** j:
                    k = j
                    break
            if k is None and p > eps / T:
                raise ValueError("instance is not well-behaved for this eps")
            classes.append(k)
        members = {}
        for i, k in enumerate(classes):
            if k is not SMALL:
                members.setdefault(k, []).append(i)
        for k in members:
            members[k].sort(key=lambda i: (inst.weights[i], i))
        sizes = [0] * (K + 1)
        for k, items in members.items():
            tot = 0
            for i in items:
                d = inst.multiplicities[i]
                if d is None:
                    tot = None
                    break
                tot += d
            sizes[k] = tot
        return cls(inst.profits, inst.weights, inst.capacities, inst.multiplicities,
                   eps, T, K, c_eps(eps), exact, cap, times, band_len,
                   tuple(classes), {k: tuple(v) for k, v in members.items()}, sizes)

    @property
    def n(self):
        return len(self.profits)


class _Overdrawn(Exception):
    """A guess asks for more copies than the class holds."""


def _class_fixings(fr: Frame, k: int, v: int):
    """Yield ``(item, value)`` equalities and ``(item, None)`` zero caps for a guess."""
    items = fr.members.get(k, ())
    if v == 0:
        if v <= fr.exact:
            for i in items:
                yield i, 0
        return
    acc = 0
    pos = 0
    while pos < len(items):
        d = fr.mult[items[pos]]
        if d is not None and acc + d < v:
            yield items[pos], d
            acc += d
            pos += 1
        else:
            break
    if pos == len(items):
        raise _Overdrawn()
    yield items[pos], v - acc
    if v <= fr.exact:
        for i in items[pos + 1:]:
            yield i, 0


def _raw_bounds(fr: Frame, blocks, rho_values, upto: Optional[int] = None):
    """Fixings before propagation as (fix_eq, fix_zero) cell dicts."""
    T, n = fr.T, fr.n
    lo = [[ZERO] * n for _ in range(T + 1)]
    hi = [[None if fr.mult[i] is None else Fraction(fr.mult[i]) for i in range(n)]
          for _ in range(T + 1)]
    first = fr.times[0]
    for t in range(1, first):
        hi[t] = [ZERO] * n
    for blk in blocks:
        cut = [i for i in range(n) if fr.classes[i] is not SMALL and fr.classes[i] < blk.next_k]
        for t in range(1, blk.start):
            row = hi[t]
            for i in cut:
                row[i] = ZERO
        for t in blk.times:
            if upto is not None and t > upto:
                continue
            for k in blk.classes:
                if k not in fr.members:
                    continue
                for i, c in _class_fixings(fr, k, rho_values.get((t, k), 0)):
                    c = Fraction(c)
                    if c > lo[t][i]:
                        lo[t][i] = c
                    if hi[t][i] is None or c < hi[t][i]:
                        hi[t][i] = c
    return lo, hi


def stairway_relaxation(fr: Frame, entries):
    """Bounds implied by every stairway that starts with ``entries``.

    The top class of each block holds at least one item throughout the
    block; rule (i) is applied with the next class taken as small as any
    extension allows.
    """
    T, n = fr.T, fr.n
    lo = [[ZERO] * n for _ in range(T + 1)]
    hi = [[None if fr.mult[i] is None else Fraction(fr.mult[i]) for i in range(n)]
          for _ in range(T + 1)]
    for t in range(1, fr.times[0]):
        hi[t] = [ZERO] * n
    blocks = stairway_blocks(Stairway(entries), fr.times, T, fr.K, fr.C)
    for h, blk in enumerate(blocks):
        nk = blk.next_k if h + 1 < len(blocks) else blk.k + 1
        cut = [i for i in range(n) if fr.classes[i] is not SMALL and fr.classes[i] < nk]
        for t in range(1, blk.start):
            for i in cut:
                hi[t][i] = ZERO
        first = fr.members[blk.k][0]
        for t in blk.times:
            if lo[t][first] < 1:
                lo[t][first] = Fraction(1)
    _propagate(fr, lo, hi)
    _tie_bands(fr, lo, hi)
    return lo, hi


def infeasible_bounds(fr: Frame, lo, hi, upto: Optional[int] = None) -> bool:
    """Contradictory cells or forced weight above capacity at some time <= upto."""
    last = fr.T if upto is None else upto
    w, b = fr.weights, fr.capacities
    for t in range(1, last + 1):
        load = ZERO
        lrow, hrow = lo[t], hi[t]
        for i in range(fr.n):
            h = hrow[i]
            l = lrow[i]
            if h is not None and l > h:
                return True
            if l:
                load += w[i] * l
        if load > b[t - 1]:
            return True
    return False


def _propagate(fr: Frame, lo, hi):
    T, n = fr.T, fr.n
    for t in range(2, T + 1):
        a, b = lo[t], lo[t - 1]
        for i in range(n):
            if b[i] > a[i]:
                a[i] = b[i]
    for t in range(T - 1, 0, -1):
        a, b = hi[t], hi[t + 1]
        for i in range(n):
            if b[i] is not None and (a[i] is None or b[i] < a[i]):
                a[i] = b[i]


def _tie_bands(fr: Frame, lo, hi):
    """Non-significant times copy the bounds of the significant time starting their band."""
    for s in fr.times:
        for t in range(s + 1, s + fr.band_len[s]):
            lo[t] = list(lo[s])
            hi[t] = list(hi[s])


@dataclass
class Piece:
    """One non-empty disjunct: per-time bounds plus the residual LP."""

    stairway: Stairway
    rho: RhoMap
    lo: tuple                   # lo[t][i], t = 1..T (index 0 unused)
    hi: tuple
    lp: LinearProgram
    var_keys: tuple             # LP variable -> (significant time, item)
    constant: Fraction          # objective contribution of fixed cells
    frame: Frame = field(repr=False)

    def fixed(self, t, i) -> bool:
        h = self.hi[t][i]
        return h is not None and self.lo[t][i] == h

    def included(self, t) -> set:
        """Items fixed at their full multiplicity no later than t."""
        fr = self.frame
        return {i for i in range(fr.n)
                if fr.mult[i] is not None and self.lo[t][i] == fr.mult[i]}

    def excluded(self, t) -> set:
        """Items fixed to zero at time t or later."""
        return {i for i in range(self.frame.n) if self.hi[t][i] == 0}

    def expand(self, x) -> list:
        """Full T x n matrix (rows 1..T, index 0 is all zeros) from an LP point."""
        fr = self.frame
        val = {key: x[v] for v, key in enumerate(self.var_keys)}
        out = [[ZERO] * fr.n]
        for t in range(1, fr.T + 1):
            row = []
            for i in range(fr.n):
                if self.fixed(t, i):
                    row.append(self.lo[t][i])
                else:
                    s = self._band(t)
                    row.append(val[(s, i)])
            out.append(row)
        return out

    def _band(self, t):
        s = None
        for u in self.frame.times:
            if u <= t:
                s = u
        return s

    def upper_bound(self) -> Fraction:
        return relaxation_bound(self.frame, self.lo, self.hi)


def relaxation_bound(fr: Frame, lo, hi, from_time: int = 1) -> Fraction:
    """Sum over bands of a fractional-knapsack bound at each significant time."""
    total = ZERO
    for s in fr.times:
        if s < from_time:
            continue
        total += fr.band_len[s] * _time_bound(fr, lo[s], hi[s], fr.capacities[s - 1])
    return total


def _time_bound(fr: Frame, lo_row, hi_row, b) -> Fraction:
    p, w = fr.profits, fr.weights
    val = ZERO
    room = b
    free = []
    for i in range(fr.n):
        l = lo_row[i]
        if l:
            val += p[i] * l
            room -= w[i] * l
        h = hi_row[i]
        if h is None or h > l:
            free.append(i)
    if room < 0:
        return ZERO
    free.sort(key=lambda i: (-p[i] / w[i], i))
    for i in free:
        h = hi_row[i]
        span = None if h is None else h - lo_row[i]
        need = room / w[i]
        take = need if span is None or need < span else span
        val += p[i] * take
        room -= w[i] * take
        if room <= 0:
            break
    return val


def build_piece(fr: Frame, s: Stairway, rho: RhoMap) -> Optional[Piece]:
    """Apply the piece's fixings; ``None`` when they are contradictory or overweight."""
    blocks = stairway_blocks(s, fr.times, fr.T, fr.K, fr.C)
    try:
        lo, hi = _raw_bounds(fr, blocks, rho.values)
    except _Overdrawn:
        return None
    _propagate(fr, lo, hi)
    _tie_bands(fr, lo, hi)
    n = fr.n
    for t in range(1, fr.T + 1):
        load = ZERO
        for i in range(n):
            h = hi[t][i]
            if h is not None and lo[t][i] > h:
                return None
            if lo[t][i]:
                load += fr.weights[i] * lo[t][i]
        if load > fr.capacities[t - 1]:
            return None

    keys, index = [], {}
    for s_ in fr.times:
        for i in range(n):
            h = hi[s_][i]
            if h is None or lo[s_][i] < h:
                index[(s_, i)] = len(keys)
                keys.append((s_, i))
    obj = [ZERO] * len(keys)
    low = [ZERO] * len(keys)
    up = [None] * len(keys)
    for v, (s_, i) in enumerate(keys):
        obj[v] = fr.profits[i] * fr.band_len[s_]
        low[v] = lo[s_][i]
        up[v] = hi[s_][i]
    lp = LinearProgram(len(keys), obj, "max", lower=low, upper=up)
    constant = ZERO
    for t in range(1, fr.T + 1):
        for i in range(n):
            h = hi[t][i]
            if h is not None and lo[t][i] == h and h:
                constant += fr.profits[i] * h
    for a, s_ in enumerate(fr.times):
        row = {index[(s_, i)]: fr.weights[i] for i in range(n) if (s_, i) in index}
        if row:
            fixed_load = sum((fr.weights[i] * lo[s_][i] for i in range(n)
                              if (s_, i) not in index and lo[s_][i]), ZERO)
            lp.add(row, LE, fr.capacities[s_ - 1] - fixed_load)
        if a + 1 < len(fr.times):
            nxt = fr.times[a + 1]
            for i in range(n):
                if (s_, i) in index and (nxt, i) in index:
                    lp.add({index[(s_, i)]: 1, index[(nxt, i)]: -1}, LE, 0)
    return Piece(s, rho, tuple(tuple(r) for r in lo), tuple(tuple(r) for r in hi),
                 lp, tuple(keys), constant, fr)
