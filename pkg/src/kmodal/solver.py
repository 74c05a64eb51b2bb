"""Longest (+k)-, (-k)- and k-modal paths; brute-force oracle; exhaustive rho(n; k)."""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import combinations, permutations
from typing import Sequence

from .core import GenericPointSet, ModalPath, Point, Sign

BRUTE_GUARD = 16
RHO_GUARD = 10


@dataclass(frozen=True)
class SolveResult:
    length: int
    witness: ModalPath


@dataclass(frozen=True)
class RhoResult:
    n: int
    k: int
    value: int
    witness_permutation: tuple[int, ...]


def _section_flags(k: int, sign: Sign):
    inc = [j for j in range(k + 1) if sign.increasing(j)]
    dec = [j for j in range(k + 1) if not sign.increasing(j)]
    return inc, dec


def modal_dp(ys: Sequence, k: int, sign: Sign) -> tuple[int, list[list[int]]]:
    """Longest path over a sequence of distinct values, with its sections as index lists.

    State (p, j): a path ending at position p with p in section j.  It extends
    either a path ending in section j at an earlier q ordered compatibly with
    p, or a path ending at any earlier q in a section j' < j (the sections in
    between being empty).
    """
    n = len(ys)
    if n == 0:
        return 0, [[] for _ in range(k + 1)]
    inc, dec = _section_flags(k, sign)
    f = [[0] * (k + 1) for _ in range(n)]
    parent: list[list[tuple[int, int] | None]] = [[None] * (k + 1) for _ in range(n)]
    # prefix[j] = best (value, (q, j')) over processed q and j' <= j
    prefix: list[tuple[int, tuple[int, int] | None]] = [(0, None)] * (k + 1)
    for p in range(n):
        yp = ys[p]
        same = [0] * (k + 1)
        arg: list[tuple[int, int] | None] = [None] * (k + 1)
        for q in range(p):
            fq = f[q]
            for j in (inc if ys[q] < yp else dec):
                if fq[j] > same[j]:
                    same[j] = fq[j]
                    arg[j] = (q, j)
        fp, pp = f[p], parent[p]
        for j in range(k + 1):
            v, a = same[j], arg[j]
            if j and prefix[j - 1][0] > v:
                v, a = prefix[j - 1]
            fp[j] = v + 1
            pp[j] = a
        run = (0, None)
        for j in range(k + 1):
            if fp[j] > run[0]:
                run = (fp[j], (p, j))
            if run[0] > prefix[j][0]:
                prefix[j] = run
    length, node = prefix[k]
    sections: list[list[int]] = [[] for _ in range(k + 1)]
    while node is not None:
        q, j = node
        sections[j].append(q)
        node = parent[q][j]
    for s in sections:
        s.reverse()
    return length, sections


def modal_length(ys: Sequence, k: int, sign: Sign) -> int:
    """Length-only variant of :func:`modal_dp` for exhaustive scans."""
    n = len(ys)
    if n == 0:
        return 0
    inc, dec = _section_flags(k, sign)
    f = [None] * n
    prefix = [0] * (k + 1)
    for p in range(n):
        yp = ys[p]
        same = [0] * (k + 1)
        for q in range(p):
            fq = f[q]
            for j in (inc if ys[q] < yp else dec):
                if fq[j] > same[j]:
                    same[j] = fq[j]
        fp = [0] * (k + 1)
        for j in range(k + 1):
            v = same[j]
            if j and prefix[j - 1] > v:
                v = prefix[j - 1]
            fp[j] = v + 1
        run = 0
        for j in range(k + 1):
            if fp[j] > run:
                run = fp[j]
            if run > prefix[j]:
                prefix[j] = run
        f[p] = fp
    return prefix[k]


def best_length(ys: Sequence, k: int) -> int:
    return max(modal_length(ys, k, Sign.PLUS), modal_length(ys, k, Sign.MINUS))


def longest_modal(S: GenericPointSet, k: int, sign="best") -> SolveResult:
    """Longest k-modal path of S with the given sign, or of either sign for ``"best"``.

    With ``"best"`` ties go to the (+k)-path.
    """
    if k < 0:
        raise ValueError("k must be nonnegative")
    if sign == "best":
        a = longest_modal(S, k, Sign.PLUS)
        b = longest_modal(S, k, Sign.MINUS)
        return a if a.length >= b.length else b
    sign = Sign.parse(sign)
    ys = [p.y for p in S]
    length, secs = modal_dp(ys, k, sign)
    witness = ModalPath(k, sign, tuple(tuple(S[i] for i in sec) for sec in secs))
    return SolveResult(length, witness)


def greedy_sections(seq: Sequence, increasing_first: bool) -> int:
    """Fewest alternating monotone runs covering ``seq``, the first run of the given kind.

    Each run is taken maximal; a shorter suffix never needs more runs, so
    the greedy count is optimal.
    """
    n = len(seq)
    runs, i, up = 0, 0, increasing_first
    while i < n:
        j = i + 1
        while j < n and (seq[j] > seq[j - 1]) == up:
            j += 1
        runs += 1
        i = j
        up = not up
    return runs


def is_modal_sequence(seq: Sequence, k: int, sign: Sign) -> bool:
    return greedy_sections(seq, Sign.parse(sign) is Sign.PLUS) <= k + 1


def brute_longest(S: GenericPointSet, k: int, guard: int = BRUTE_GUARD) -> int:
    """Independent oracle: largest subset that is a (+k)- or (-k)-path."""
    n = len(S)
    if n > guard:
        raise ValueError(f"brute_longest is limited to {guard} points, got {n}")
    ys = [p.y for p in S]
    for size in range(n, -1, -1):
        for combo in combinations(range(n), size):
            seq = [ys[i] for i in combo]
            if greedy_sections(seq, True) <= k + 1 or greedy_sections(seq, False) <= k + 1:
                return size
    return 0


def _symmetry_images(perm: tuple[int, ...]) -> tuple[tuple[int, ...], ...]:
    n = len(perm)
    rev = perm[::-1]
    comp = tuple(n - 1 - v for v in perm)
    return rev, comp, comp[::-1]


def is_canonical(perm: tuple[int, ...]) -> bool:
    """perm is the lexicographic minimum of its reverse/complement orbit."""
    return all(perm <= img for img in _symmetry_images(perm))


def _rho_shard(args) -> tuple[int, tuple[int, ...]]:
    n, k, first, prune = args
    rest = [v for v in range(n) if v != first]
    best, witness = n + 1, ()
    for tail in permutations(rest):
        perm = (first,) + tail
        if prune and not is_canonical(perm):
            continue
        v = best_length(perm, k)
        if v < best:
            best, witness = v, perm
    return best, witness


def rho_exact(n: int, k: int, *, prune: bool = True, workers: int = 1,
              guard: int = RHO_GUARD) -> RhoResult:
    """min over all permutations of [n] of the longest k-modal subsequence.

    The witness is the lexicographically smallest permutation attaining the
    minimum, reported 1-based.  Shards (one per leading value) are
    independent and may run in a process pool.
    """
    if n < 0 or k < 0:
        raise ValueError("n and k must be nonnegative")
    if n > guard:
        raise ValueError(f"rho_exact enumerates n! permutations and is limited to n <= {guard}; "
                         f"use rho_sample for an upper bound")
    if n == 0:
        return RhoResult(0, k, 0, ())
    tasks = [(n, k, first, prune) for first in range(n)]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_rho_shard, tasks))
    else:
        results = [_rho_shard(t) for t in tasks]
    # shards are in lexicographic order, so the first minimum is the lex-smallest
    best, witness = min(results, key=lambda r: r[0])
    return RhoResult(n, k, best, tuple(v + 1 for v in witness))


def rho_sample(n: int, k: int, trials: int, rng) -> RhoResult:
    """Upper bound on rho(n; k) from ``trials`` random permutations (not exact)."""
    best, witness = n + 1, ()
    for _ in range(trials):
        perm = tuple(rng.permutation(n))
        v = best_length(perm, k)
        if v < best or (v == best and perm < witness):
            best, witness = v, perm
    return RhoResult(n, k, best if n else 0, tuple(v + 1 for v in witness))


def points_of_permutation(perm: Sequence[int]) -> GenericPointSet:
    return GenericPointSet(Point(i + 1, v) for i, v in enumerate(perm))
