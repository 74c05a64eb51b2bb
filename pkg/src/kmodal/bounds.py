"""Closed-form bounds on the longest k-modal subsequence, in exact integer arithmetic.

No square root is ever taken in floating point: every ceiling of a surd is
obtained from :func:`math.isqrt` and squaring comparisons.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt


def ceil_sqrt(m: int) -> int:
    if m < 0:
        raise ValueError("negative radicand")
    r = isqrt(m)
    return r if r * r == m else r + 1


@dataclass(frozen=True)
class Surd:
    """The real number sqrt(radicand) + offset, radicand >= 0, both rational.

    Comparisons against rationals are decided by squaring.
    """

    radicand: Fraction
    offset: Fraction

    def _cmp(self, c) -> int:
        # sign of (sqrt(radicand) + offset) - c
        d = Fraction(c) - self.offset  # compare sqrt(radicand) with d
        if d < 0:
            return 1
        sq = d * d
        return (self.radicand > sq) - (self.radicand < sq)

    def __le__(self, c):
        return self._cmp(c) <= 0

    def __lt__(self, c):
        return self._cmp(c) < 0

    def __ge__(self, c):
        return self._cmp(c) >= 0

    def __gt__(self, c):
        return self._cmp(c) > 0

    def __eq__(self, c):
        if isinstance(c, Surd):
            return (self.radicand, self.offset) == (c.radicand, c.offset)
        return self._cmp(c) == 0

    def __hash__(self):
        return hash((self.radicand, self.offset))

    def __float__(self):
        return float(self.radicand) ** 0.5 + float(self.offset)

    def ceil(self) -> int:
        """Smallest integer m with m >= sqrt(radicand) + offset."""
        a, q = self.radicand.numerator, self.radicand.denominator
        # isqrt(a*q)/q <= sqrt(a/q) < (isqrt(a*q) + 1)/q
        lo = Fraction(isqrt(a * q), q) + self.offset
        m = -((-lo.numerator) // lo.denominator)
        while not self <= m:
            m += 1
        return m

    def __str__(self):
        return f"sqrt({self.radicand}) + {self.offset}"


def lb_radicand(n: int, k: int) -> Fraction:
    """(2k+1)(n - 1/4)."""
    return Fraction((2 * k + 1) * (4 * n - 1), 4)


def lb_rho_raw(n: int, k: int) -> int:
    """ceil(sqrt((2k+1)(n - 1/4)) - k/2) exactly.

    Equivalently the smallest m with 2m + k >= 0 and (2m+k)^2 >= (2k+1)(4n-1).
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if k < 0:
        raise ValueError(f"k must be >= 0, got {k}")
    c = ceil_sqrt((2 * k + 1) * (4 * n - 1))
    return -((k - c) // 2)


def lb_rho(n: int, k: int) -> int:
    """Guaranteed length of a k-modal subsequence of any n-term generic sequence.

    This is the closed form :func:`lb_rho_raw`, floored at 1: the closed form
    drops below 1 only for n = 1 and k >= 7, where a one-term sequence is
    trivially 1-long.
    """
    return max(lb_rho_raw(n, k), 1)


def ub_threshold(k: int) -> int:
    return 10 * k ** 3


def ub_rho(n: int, k: int) -> int:
    """Upper bound lb_rho + 1, certified for k >= 1 and n >= 10k^3.

    Outside that range the value is still returned; use
    :func:`ub_certified` to tell whether it is backed by the construction.
    For k = 0 the lower bound is exact and is returned as is.
    """
    if k == 0:
        return lb_rho(n, 0)
    return lb_rho(n, k) + 1


def ub_certified(n: int, k: int) -> bool:
    return k == 0 or n >= ub_threshold(k)


def chung_upper(n: int, k: int) -> int:
    """ceil(sqrt((2k+1) n))."""
    return ceil_sqrt((2 * k + 1) * n)


def gong_lower(n: int, k: int) -> int:
    """floor(sqrt(2kn))."""
    return isqrt(2 * k * n)


def m_lower(n: int, k: int) -> Surd:
    """sqrt((2k+1)(n - 1/4)) + k/2, the lower bound on fine-covering size."""
    return Surd(lb_radicand(n, k), Fraction(k, 2))


def covering_bound_holds(m: int, n: int, k: int) -> bool:
    """m >= sqrt((2k+1)(n - 1/4)) + k/2, via (2m-k) >= 0 and (2m-k)^2 >= (2k+1)(4n-1)."""
    d = 2 * m - k
    return d >= 0 and d * d >= (2 * k + 1) * (4 * n - 1)


@dataclass(frozen=True)
class BoundsRecord:
    n: int
    k: int
    lb_rho: int
    ub_rho: int
    ub_certified: bool
    chung_upper: int
    gong_lower: int
    m_lower: Surd

    def as_row(self) -> dict:
        return {"n": self.n, "k": self.k, "lb": self.lb_rho, "ub": self.ub_rho,
                "chung": self.chung_upper, "gong": self.gong_lower}


def reference_bounds(n: int, k: int) -> BoundsRecord:
    return BoundsRecord(n=n, k=k, lb_rho=lb_rho(n, k), ub_rho=ub_rho(n, k),
                        ub_certified=ub_certified(n, k),
                        chung_upper=chung_upper(n, k), gong_lower=gong_lower(n, k),
                        m_lower=m_lower(n, k))
