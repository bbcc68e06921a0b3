"""Seeded random instances.

Randomness comes from :class:`random.Random` (Mersenne Twister), but only
through :meth:`~random.Random.getrandbits`, whose output for a given seed is
fixed across platforms and Python versions.  Integers are drawn by rejection
sampling on top of it.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .model import IikInstance, MinkInstance


class GeneratorError(ValueError):
    pass


class Rng:
    """Small wrapper with a documented integer draw."""

    def __init__(self, seed: int):
        self._r = random.Random(seed)

    def integer(self, lo: int, hi: int) -> int:
        """Uniform on lo..hi inclusive."""
        if hi < lo:
            raise GeneratorError(f"empty range {lo}..{hi}")
        span = hi - lo + 1
        bits = max(1, (span - 1).bit_length())
        while True:
            v = self._r.getrandbits(bits)
            if v < span:
                return lo + v

    def choice(self, seq: Sequence):
        return seq[self.integer(0, len(seq) - 1)]

    def sample(self, seq: Sequence, k: int) -> list:
        pool = list(seq)
        out = []
        for _ in range(k):
            out.append(pool.pop(self.integer(0, len(pool) - 1)))
        return out


@dataclass(frozen=True)
class IikParams:
    n: int = 5
    T: int = 3
    weight_range: tuple = (1, 20)
    profit_range: tuple = (1, 20)        # numerator range
    profit_denominators: tuple = (1, 5)  # denominator range
    capacity: str = "random"             # "random", "linear" or "ample"
    capacity_fraction: Fraction = Fraction(1, 2)
    max_discount: Optional[int] = None   # nondecreasing discounts in 1..max
    max_multiplicity: Optional[int] = None
    unbounded_share: Fraction = Fraction(0)


def gen_iik(seed: int, params: IikParams = IikParams()) -> IikInstance:
    """Nondecreasing positive capacities; totals at most a fraction of the weight sum."""
    if params.n < 1 or params.T < 1:
        raise GeneratorError("need n >= 1 and T >= 1")
    if not 0 < params.capacity_fraction:
        raise GeneratorError("capacity fraction must be positive")
    rng = Rng(seed)
    w = [rng.integer(*params.weight_range) for _ in range(params.n)]
    p = [Fraction(rng.integer(*params.profit_range), rng.integer(*params.profit_denominators))
         for _ in range(params.n)]
    top = max(1, int(sum(w) * params.capacity_fraction))
    if params.capacity == "random":
        b = sorted(rng.integer(1, top) for _ in range(params.T))
    elif params.capacity == "linear":
        b = [max(1, top * t // params.T) for t in range(1, params.T + 1)]
    elif params.capacity == "ample":
        b = [sum(w) * (params.max_multiplicity or 1)] * params.T
    else:
        raise GeneratorError(f"unknown capacity profile {params.capacity!r}")
    extra = {}
    if params.max_discount:
        extra["discounts"] = sorted(rng.integer(1, params.max_discount) for _ in range(params.T))
    if params.max_multiplicity:
        mult = []
        for _ in range(params.n):
            v = rng.integer(1, params.max_multiplicity)
            if params.unbounded_share and Fraction(rng.integer(0, 999), 1000) < params.unbounded_share:
                v = None
            mult.append(v)
        extra["multiplicities"] = mult
    return IikInstance(p, w, b, **extra)


@dataclass(frozen=True)
class MinkParams:
    n: int = 8
    weight_range: tuple = (1, 20)
    levels: Optional[int] = None          # draw costs from this many powers of 1/(1+eps)
    eps: Fraction = Fraction(1, 16)
    exponent_range: tuple = (0, 60)
    cost_range: tuple = (1, 100)          # numerators over 100 when levels is None
    demand_fraction: tuple = (1, 1)       # demand drawn in [1, sum(w) * a / b]


def gen_mink(seed: int, params: MinkParams = MinkParams()) -> MinkInstance:
    if params.n < 1:
        raise GeneratorError("need n >= 1")
    rng = Rng(seed)
    w = [rng.integer(*params.weight_range) for _ in range(params.n)]
    if params.levels is not None:
        lo, hi = params.exponent_range
        if params.levels < 1 or params.levels > hi - lo + 1:
            raise GeneratorError("number of cost levels does not fit the exponent range")
        exps = rng.sample(range(lo, hi + 1), params.levels)
        base = 1 + Fraction(params.eps)
        c = [1 / base ** rng.choice(exps) for _ in range(params.n)]
    else:
        c = [Fraction(rng.integer(*params.cost_range), 100) for _ in range(params.n)]
    a, b = params.demand_fraction
    beta = rng.integer(1, max(1, sum(w) * a // b))
    return MinkInstance(c, w, beta)


def gen_random(kind: str, seed: int, **params):
    """Dispatch on ``kind`` ("iik" or "mink") with keyword overrides of the defaults."""
    if kind == "iik":
        return gen_iik(seed, IikParams(**params))
    if kind == "mink":
        return gen_mink(seed, MinkParams(**params))
    raise GeneratorError(f"unknown kind {kind!r}")
