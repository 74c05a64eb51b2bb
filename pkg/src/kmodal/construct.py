"""Block sets U^{s,t} with no long k-modal path, and n-point extremal sets from them."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .bounds import lb_rho_raw, ub_threshold
from .core import GenericPointSet, ModalPath, Point, Sign


class ThresholdError(ValueError):
    """n is below the range in which the construction is guaranteed."""


def block_lengths(s: int, t: int) -> list[int]:
    """t, t+1, ..., 2t-1, then s blocks of 2t, then 2t-1, ..., t."""
    ramp = list(range(t, 2 * t))
    return ramp + [2 * t] * s + ramp[::-1]


def ust_size(s: int, t: int) -> int:
    return t * (2 * s + 3 * t - 1)


@dataclass(frozen=True)
class BlockSet:
    s: int
    t: int
    blocks: tuple[tuple[Point, ...], ...]

    @property
    def points(self) -> GenericPointSet:
        return GenericPointSet(p for b in self.blocks for p in b)

    def block_index(self) -> dict[Point, int]:
        """point -> 1-based block number."""
        return {p: b for b, blk in enumerate(self.blocks, start=1) for p in blk}


def build_ust(s: int, t: int) -> BlockSet:
    """Decreasing diagonal blocks, block b inside the open square (b, b+1)^2."""
    if s < 1 or t < 1:
        raise ValueError(f"s and t must be positive, got s={s}, t={t}")
    blocks = []
    for b, L in enumerate(block_lengths(s, t), start=1):
        blocks.append(tuple(Point(b + Fraction(j, L + 1), b + 1 - Fraction(j, L + 1))
                            for j in range(1, L + 1)))
    return BlockSet(s, t, tuple(blocks))


def ust_cap(s: int, t: int, k: int) -> int:
    """floor((k+2)t + s - k/2)."""
    return ((k + 2) * t + s) - ((k + 1) // 2)


def nearest_int(num: int, den: int) -> int:
    """floor(num/den + 1/2)."""
    return (2 * num + den) // (2 * den)


@dataclass(frozen=True)
class ConstructionParams:
    n: int
    k: int
    x: int
    y: int
    t: int
    s: int
    adjusted: bool = False  # t lowered from the nearest-integer choice to keep s >= 1

    @property
    def size(self) -> int:
        return ust_size(self.s, self.t)


def choose_params(n: int, k: int) -> ConstructionParams:
    """x = lb, y = x + 1 + ceil(k/2), t = <y/(2k+1)>, s = y - (k+2)t.

    For k = 1 the nearest-integer t can leave s <= 0; then the largest smaller
    t with s >= 1 and |U| >= n is used.  Any t with s >= 1 keeps the cap
    (k+2)t + s - ceil(k/2) = x + 1, so only the size needs rechecking.
    """
    if k < 1:
        raise ValueError("the construction needs k >= 1")
    if n < ub_threshold(k):
        raise ThresholdError(f"n = {n} is below 10k^3 = {ub_threshold(k)}")
    x = lb_rho_raw(n, k)
    y = x + 1 + (k + 1) // 2
    w = 2 * k + 1
    t = nearest_int(y, w)
    s = y - (k + 2) * t
    adjusted = False
    if s < 1 or t < 1:
        for tt in range(t - 1, 0, -1):
            ss = y - (k + 2) * tt
            if ss >= 1 and ust_size(ss, tt) >= n:
                t, s, adjusted = tt, ss, True
                break
        else:
            raise RuntimeError(f"no admissible (s, t) for n={n}, k={k}")
    params = ConstructionParams(n, k, x, y, t, s, adjusted)
    if params.size < n:
        raise RuntimeError(f"|U^{{{s},{t}}}| = {params.size} < n = {n}")
    return params


def size_certificate(params: ConstructionParams) -> bool:
    """(2y-1)^2 >= 4(2k+1)n + (2k+1)^2, sufficient for |U| >= n at the nearest-integer t."""
    w = 2 * params.k + 1
    return (2 * params.y - 1) ** 2 >= 4 * w * params.n + w * w


def extremal_set(n: int, k: int) -> GenericPointSet:
    """n points of U^{s,t}: the |U| - n points of largest x are dropped."""
    p = choose_params(n, k)
    pts = build_ust(p.s, p.t).points
    return GenericPointSet(pts.points[:n])


def rich_block_diagnostic(U: BlockSet, path: ModalPath) -> dict:
    """Block accounting for a k-modal path Q inside U^{s,t}.

    alpha, beta: blocks of the first and last point; rich: interior blocks
    meeting Q at least twice.  ``cap`` is floor(k/2) for (+k)-paths and
    floor((k-1)/2) for (-k)-paths; ``end_cap`` subtracts one for each
    end block that is bad (end section increasing, block met more than once).
    The caps are stated for k >= 1.
    """
    k = path.k
    if k < 1:
        raise ValueError("the block diagnostic needs k >= 1")
    where = U.block_index()
    lab = path.labelled()
    if not lab:
        return {"rich": 0, "cap": None, "end_cap": None, "ok": True}
    alpha, beta = where[lab[0][0]], where[lab[-1][0]]
    count = {}
    for p, _ in lab:
        count[where[p]] = count.get(where[p], 0) + 1
    rich = [g for g in range(alpha + 1, beta) if count.get(g, 0) >= 2]
    cap = k // 2 if path.sign is Sign.PLUS else (k - 1) // 2
    alpha_bad = path.sign.increasing(0) and count[alpha] > 1
    beta_bad = path.sign.increasing(k) and count[beta] > 1
    end_cap = k // 2 - alpha_bad - beta_bad
    return {"alpha": alpha, "beta": beta, "rich": len(rich), "cap": cap,
            "alpha_bad": alpha_bad, "beta_bad": beta_bad, "end_cap": end_cap,
            "ok": len(rich) <= cap and (alpha == beta or len(rich) <= end_cap)}
