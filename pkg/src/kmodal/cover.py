"""Fine coverings built by unfolding S into k+1 reflected layers.

A k-modal path of S becomes a monotone path of the unfolded set, so a
minimum cover of the unfolded set by decreasing paths (Dilworth) folds back
into a fine covering of S by at most M + k paths.
"""

from __future__ import annotations

from bisect import bisect_right
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

from .core import (FineCovering, GenericPointSet, ModalPath, Point, Report, Sign,
                   normalization_map, validate_modal_path, PASS)
from .solver import longest_modal


def natural_sign(k: int) -> Sign:
    """Sign of the paths produced by folding decreasing paths of the unfolded set."""
    return Sign.PLUS if k % 2 else Sign.MINUS


@dataclass(frozen=True)
class UnfoldedSet:
    base: GenericPointSet
    k: int
    layers: tuple[GenericPointSet, ...]
    union: GenericPointSet
    tau: tuple[dict, ...]  # tau[i]: base point -> its image in layer i

    @cached_property
    def layer_of(self) -> dict[Point, tuple[int, Point]]:
        """Unfolded point -> (layer index, base point)."""
        return {img: (i, p) for i, t in enumerate(self.tau) for p, img in t.items()}


def _reflect_shift(p: Point, i: int) -> Point:
    return Point(p.x + 1, 2 * i - p.y)


def unfold_normalized(base: GenericPointSet, k: int) -> UnfoldedSet:
    """Unfold a set already inside R x (0,1) with x-gaps >= k+1."""
    image = {p: p for p in base}
    layers = [base]
    tau = [dict(image)]
    for i in range(1, k + 1):
        image = {p: _reflect_shift(q, i) for p, q in image.items()}
        tau.append(dict(image))
        layers.append(GenericPointSet(image.values()))
    union = GenericPointSet(q for layer in layers for q in layer)
    return UnfoldedSet(base, k, tuple(layers), union, tuple(tau))


def unfold(S: GenericPointSet, k: int) -> UnfoldedSet:
    """Rank-normalize S, then stack the layers S_i = r_i(S_{i-1}), r_i(x, y) = (x+1, 2i-y)."""
    norm = normalization_map(S, k)
    return unfold_normalized(GenericPointSet(norm.values()), k)


def min_decreasing_cover(T: GenericPointSet) -> list[tuple[Point, ...]]:
    """Greedy cover of T by disjoint decreasing paths, as few as the longest increasing path.

    Points are scanned by x; each joins the chain whose last point is the
    lowest one still above it, or opens a new chain.
    """
    tails: list[Fraction] = []  # sorted ascending
    owner: list[int] = []       # chain index for each tail
    chains: list[list[Point]] = []
    for p in T:
        i = bisect_right(tails, p.y)
        if i == len(tails):
            tails.append(p.y)
            owner.append(len(chains))
            chains.append([p])
        else:
            tails[i] = p.y
            chains[owner[i]].append(p)
    return [tuple(c) for c in chains]


def fold_decreasing(U: UnfoldedSet, chain, back=None) -> ModalPath:
    """g(P): section i is the preimage of P's part in layer k - i."""
    k = U.k
    where = U.layer_of
    sections: list[list[Point]] = [[] for _ in range(k + 1)]
    for q in chain:
        layer, p = where[q]
        sections[k - layer].append(back[p] if back else p)
    return ModalPath(k, natural_sign(k), tuple(tuple(s) for s in sections))


def fold_increasing(U: UnfoldedSet, chain) -> ModalPath:
    """T_P for an increasing path P: section i is the preimage of P's part in layer i.

    A base point hit in several layers is kept only in the lowest one.
    """
    where = U.layer_of
    sections: list[list[Point]] = [[] for _ in range(U.k + 1)]
    seen = set()
    for q in sorted(chain, key=lambda q: where[q][0]):
        layer, p = where[q]
        if p not in seen:
            seen.add(p)
            sections[layer].append(p)
    return ModalPath(U.k, Sign.PLUS, tuple(tuple(s) for s in sections))


def _direct_cover(S: GenericPointSet, k: int, sigma: bool) -> list[ModalPath]:
    """Folded Dilworth cover of S (optionally of its mirror image), in S's coordinates."""
    norm = normalization_map(S, k)
    if sigma:
        # reflection over y = 1/2 of the normalized copy
        norm = {p: Point(q.x, 1 - q.y) for p, q in norm.items()}
    back = {q: p for p, q in norm.items()}
    U = unfold_normalized(GenericPointSet(norm.values()), k)
    paths = []
    for chain in min_decreasing_cover(U.union):
        P = fold_decreasing(U, chain, back)
        if sigma:
            # points are already S's own; only the monotonicity labels flip
            P = ModalPath(k, P.sign.flipped(), P.sections)
        if not P.is_empty():
            paths.append(P)
    return paths


def reflected_for(k: int, sign: Sign) -> bool:
    """Whether the cover for this (k, sign) is built on the mirror image."""
    return Sign.parse(sign) is not natural_sign(k)


def fine_cover(S: GenericPointSet, k: int, sign) -> FineCovering:
    sign = Sign.parse(sign)
    if len(S) == 0:
        return FineCovering(k, sign, (), S)
    paths = _direct_cover(S, k, reflected_for(k, sign))
    return FineCovering(k, sign, tuple(paths), S)


def size_bound_sign(k: int, sign) -> Sign:
    """Sign sigma with |fine_cover(S, k, sign)| <= M_sigma(S) + k.

    Odd k: sigma = sign.  Even k: sigma = the opposite sign.
    """
    sign = Sign.parse(sign)
    return sign if k % 2 else sign.flipped()


def size_bound(S: GenericPointSet, k: int, sign) -> int:
    return longest_modal(S, k, size_bound_sign(k, sign)).length + k


def check_fine_cover(C: FineCovering) -> Report:
    """pass, or the first violation as (section index, point, reason)."""
    for P in C.paths:
        if P.k != C.k or P.sign is not C.sign:
            return Report(False, "invalid path", None, ())
        r = validate_modal_path(P, C.ground)
        if not r:
            return Report(False, "invalid path", r.section, r.points)
    for i in range(C.k + 1):
        counts = Counter(p for P in C.paths for p in P.sections[i])
        for p in C.ground:
            c = counts.get(p, 0)
            if c == 0:
                return Report(False, "missing", i, (p,))
            if c > 1:
                return Report(False, "duplicated", i, (p,))
    return PASS
