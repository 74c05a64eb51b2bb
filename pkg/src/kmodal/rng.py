"""Seeded randomness for trial generators.

Raw 64-bit words come from PCG64 (numpy's ``PCG64`` bit generator, seeded
through ``SeedSequence(seed)``).  Everything derived from them is spelled out
here so a port only needs a PCG64 stream:

* ``below(m)``: draw words w until ``w < 2**64 - (2**64 % m)``; return ``w % m``.
* ``permutation(n)``: Fisher-Yates on ``[0, n)``, for i = n-1 .. 1 swap a[i]
  with a[below(i+1)].
* ``fork(tag)``: a fresh stream seeded with ``seed * 1000003 + tag``.
"""

from __future__ import annotations

import os
from fractions import Fraction

import numpy as np

from .core import GenericPointSet, Point

RNG_ALGORITHM = "pcg64-v1"
DEFAULT_SEED = 20261014
SEED_ENV = "KMODAL_SEED"

_TWO64 = 1 << 64


def default_seed() -> int:
    value = os.environ.get(SEED_ENV)
    return int(value) if value not in (None, "") else DEFAULT_SEED


class TrialRng:
    def __init__(self, seed: int):
        self.seed = seed
        self._bits = np.random.PCG64(np.random.SeedSequence(seed))

    def word(self) -> int:
        return int(self._bits.random_raw())

    def below(self, m: int) -> int:
        if m <= 0:
            raise ValueError("m must be positive")
        limit = _TWO64 - (_TWO64 % m)
        while True:
            w = self.word()
            if w < limit:
                return w % m

    def between(self, lo: int, hi: int) -> int:
        """Uniform integer in [lo, hi]."""
        return lo + self.below(hi - lo + 1)

    def permutation(self, n: int) -> list[int]:
        a = list(range(n))
        for i in range(n - 1, 0, -1):
            j = self.below(i + 1)
            a[i], a[j] = a[j], a[i]
        return a

    def choice(self, seq):
        return seq[self.below(len(seq))]

    def fork(self, tag: int) -> TrialRng:
        """Independent stream for trial number ``tag``."""
        return TrialRng(self.seed * 1_000_003 + tag)


def random_point_set(rng: TrialRng, n: int) -> GenericPointSet:
    """Points (i, pi(i)) for a uniform permutation pi."""
    return GenericPointSet(Point(i + 1, v + 1) for i, v in enumerate(rng.permutation(n)))


def random_rational_point_set(rng: TrialRng, n: int) -> GenericPointSet:
    """Same order type distribution as :func:`random_point_set`, on irregular rationals."""
    xs, ys = set(), set()
    while len(xs) < n:
        xs.add(Fraction(rng.between(-10 ** 6, 10 ** 6), rng.between(1, 97)))
    while len(ys) < n:
        ys.add(Fraction(rng.between(-10 ** 6, 10 ** 6), rng.between(1, 97)))
    xs, ys = sorted(xs), sorted(ys)
    perm = rng.permutation(n)
    return GenericPointSet(Point(xs[i], ys[perm[i]]) for i in range(n))
