"""Seeded verification suites behind ``kmodal verify``.

Every trial draws from its own forked stream, so a suite's outcome depends
only on (parameters, seed).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import permutations

from .bounds import covering_bound_holds, lb_rho
from .construct import build_ust, extremal_set, ust_cap
from .core import GenericPointSet, Point, Sign, se_less, validate_modal_path
from .cover import check_fine_cover, fine_cover, min_decreasing_cover, size_bound
from .coverlab import (colliding_pair, cover_pair, iteration_bound, lex_less, phi_structure,
                       repair_injectivity, covering_certificate)
from .rng import TrialRng, random_point_set, random_rational_point_set
from .solver import best_length, brute_longest, longest_modal

MAX_REPORTED_FAILURES = 20


@dataclass
class SuiteResult:
    name: str
    params: dict
    checked: int = 0
    failures: list = field(default_factory=list)
    records: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def fail(self, invariant: str, **detail):
        if len(self.failures) < MAX_REPORTED_FAILURES:
            self.failures.append({"invariant": invariant, **detail})
        else:
            self.failures[-1].setdefault("more", 0)
            self.failures[-1]["more"] += 1

    def summary(self) -> dict:
        return {"suite": self.name, "params": self.params, "checked": self.checked,
                "passed": self.passed, "failures": self.failures}


def _pick_k(rng: TrialRng, k, max_k: int) -> int:
    return k if k is not None else rng.between(0, max_k)


def _random_set(rng: TrialRng, n: int) -> GenericPointSet:
    return random_rational_point_set(rng, n) if rng.below(4) == 0 else random_point_set(rng, n)


def thm11(max_n: int = 8, ks=(1, 2, 3)) -> SuiteResult:
    """Every permutation of [n] has a k-modal subsequence of length >= lb_rho(n, k)."""
    res = SuiteResult("thm11", {"max_n": max_n, "ks": list(ks)})
    for k in ks:
        for n in range(1, max_n + 1):
            lb = lb_rho(n, k)
            worst = n + 1
            for perm in permutations(range(n)):
                v = best_length(perm, k)
                res.checked += 1
                worst = min(worst, v)
                if v < lb:
                    res.fail("longest k-modal subsequence >= lb_rho(n,k)", n=n, k=k,
                             permutation=[x + 1 for x in perm], length=v, lb=lb)
            res.records.append({"n": n, "k": k, "min_longest": worst, "lb_rho": lb})
    return res


def thm12_grid(ks=(1, 2, 3)) -> list[tuple[int, int]]:
    return [(n, k) for k in ks for n in (10 * k ** 3, 10 * k ** 3 + 17, 20 * k ** 3)]


def thm12(grid=None) -> SuiteResult:
    """lb_rho(n,k) <= M(extremal_set(n,k)) <= lb_rho(n,k) + 1."""
    grid = list(grid) if grid is not None else thm12_grid()
    res = SuiteResult("thm12", {"grid": [list(g) for g in grid]})
    for n, k in grid:
        S = extremal_set(n, k)
        M = longest_modal(S, k).length
        lb = lb_rho(n, k)
        res.checked += 1
        res.records.append({"n": n, "k": k, "lb_rho": lb, "optimum": M})
        if len(S) != n:
            res.fail("extremal_set has exactly n points", n=n, k=k, size=len(S))
        if not lb <= M <= lb + 1:
            res.fail("lb_rho <= M(extremal_set) <= lb_rho + 1", n=n, k=k, optimum=M, lb=lb)
    return res


def ust(max_s: int = 6, max_t: int = 6, max_k: int = 4) -> SuiteResult:
    """Longest k-modal path of U^{s,t} is at most floor((k+2)t + s - k/2)."""
    res = SuiteResult("ust", {"max_s": max_s, "max_t": max_t, "max_k": max_k})
    for s in range(1, max_s + 1):
        for t in range(1, max_t + 1):
            U = build_ust(s, t).points
            if len(U) != t * (2 * s + 3 * t - 1):
                res.fail("|U^{s,t}| = t(2s+3t-1)", s=s, t=t, size=len(U))
            for k in range(max_k + 1):
                M = longest_modal(U, k).length
                res.checked += 1
                if M > ust_cap(s, t, k):
                    res.fail("M(U^{s,t}) <= floor((k+2)t + s - k/2)", s=s, t=t, k=k,
                             optimum=M, cap=ust_cap(s, t, k))
    return res


def _adversarial_sets() -> list[GenericPointSet]:
    out = []
    for n in (1, 2, 5, 17, 50, 100):
        out.append(GenericPointSet(Point(i, i) for i in range(n)))          # increasing
        out.append(GenericPointSet(Point(i, -i) for i in range(n)))         # decreasing
        out.append(GenericPointSet(Point(i, i + 2 * (i % 2) * n) for i in range(n)))  # zigzag
        m = max(1, int(n ** 0.5))
        # m decreasing runs, stacked up: longest increasing path = m
        out.append(GenericPointSet(Point(i, (i // m) * n - i) for i in range(n)))
    return out


def _is_decreasing_cover(T: GenericPointSet, chains) -> bool:
    seen = [p for c in chains for p in c]
    if sorted(seen, key=lambda p: p.x) != list(T.points):
        return False
    return all(se_less(a, b) for c in chains for a, b in zip(c, c[1:]))


def dilworth(trials: int = 1000, max_n: int = 100, seed: int = 0) -> SuiteResult:
    """Greedy decreasing cover is valid and as large as the longest increasing path."""
    res = SuiteResult("dilworth", {"trials": trials, "max_n": max_n, "seed": seed})
    root = TrialRng(seed)
    cases = [(None, T) for T in _adversarial_sets()]
    cases += [(t, None) for t in range(trials)]
    for trial, T in cases:
        if T is None:
            rng = root.fork(trial)
            T = _random_set(rng, rng.between(0, max_n))
        chains = min_decreasing_cover(T)
        lis = longest_modal(T, 0, Sign.PLUS).length
        res.checked += 1
        if not _is_decreasing_cover(T, chains):
            res.fail("cover consists of disjoint decreasing paths covering T", trial=trial, n=len(T))
        if len(chains) != lis:
            res.fail("|min_decreasing_cover(T)| = longest increasing path", trial=trial,
                     n=len(T), cover=len(chains), lis=lis)
    return res


def prop22(trials: int = 500, max_n: int = 30, max_k: int = 4, k=None, seed: int = 0) -> SuiteResult:
    """fine_cover is a fine covering within the parity-correct M + k bound."""
    res = SuiteResult("prop22", {"trials": trials, "max_n": max_n, "max_k": max_k, "k": k,
                                 "seed": seed})
    root = TrialRng(seed)
    for trial in range(trials):
        rng = root.fork(trial)
        kk = _pick_k(rng, k, max_k)
        S = _random_set(rng, rng.between(1, max_n))
        for sign in (Sign.PLUS, Sign.MINUS):
            C = fine_cover(S, kk, sign)
            rep = check_fine_cover(C)
            res.checked += 1
            if not rep:
                res.fail("fine_cover output is a fine covering", trial=trial, k=kk,
                         sign=sign.value, reason=rep.reason)
            bound = size_bound(S, kk, sign)
            if len(C) > bound:
                res.fail("|fine_cover| <= M_sigma + k", trial=trial, k=kk, sign=sign.value,
                         size=len(C), bound=bound)
    return res


def oracle(trials: int = 500, max_n: int = 12, max_k: int = 3, k=None, seed: int = 0) -> SuiteResult:
    """Dynamic program agrees with subset enumeration."""
    res = SuiteResult("oracle", {"trials": trials, "max_n": max_n, "max_k": max_k, "k": k,
                                 "seed": seed})
    root = TrialRng(seed)
    for trial in range(trials):
        rng = root.fork(trial)
        kk = _pick_k(rng, k, max_k)
        S = _random_set(rng, rng.between(0, max_n))
        sol = longest_modal(S, kk)
        brute = brute_longest(S, kk)
        res.checked += 1
        if sol.length != brute:
            res.fail("longest_modal = brute_longest", trial=trial, n=len(S), k=kk,
                     dp=sol.length, brute=brute)
        rep = validate_modal_path(sol.witness, S)
        if not rep or len(sol.witness) != sol.length:
            res.fail("witness is a valid modal path of the reported length", trial=trial,
                     reason=rep.reason)
    return res


def coverlab(trials: int = 200, max_n: int = 20, max_k: int = 3, k=None, seed: int = 0,
             emit: bool = False) -> SuiteResult:
    """Certificates on repaired constructive covering pairs."""
    res = SuiteResult("coverlab", {"trials": trials, "max_n": max_n, "max_k": max_k, "k": k,
                                   "seed": seed})
    root = TrialRng(seed)
    for trial in range(trials):
        rng = root.fork(trial)
        kk = _pick_k(rng, k, max_k)
        S = _random_set(rng, rng.between(1, max_n))
        pair = repair_injectivity(cover_pair(S, kk))
        cert = covering_certificate(pair)
        res.checked += 1
        if not cert.valid:
            name, detail = cert.first_failure()
            res.fail(name, trial=trial, n=len(S), k=kk, detail=detail)
        if not covering_bound_holds(cert.m, len(S), kk):
            res.fail("max(|C+|,|C-|) >= sqrt((2k+1)(n-1/4)) + k/2", trial=trial, n=len(S),
                     k=kk, m=cert.m)
        M = longest_modal(S, kk).length
        if M < lb_rho(len(S), kk):
            res.fail("lb_rho(n,k) <= longest_modal(S,k)", trial=trial, n=len(S), k=kk)
        if emit:
            res.records.append({"trial": trial, "certificate": cert.to_json()})
    return res


def exchange(trials: int = 100, max_n: int = 12, max_k: int = 3, k=None, seed: int = 0) -> SuiteResult:
    """Repair of colliding pairs: terminates, keeps sizes and validity, raises the potential."""
    res = SuiteResult("exchange", {"trials": trials, "max_n": max_n, "max_k": max_k, "k": k,
                                   "seed": seed})
    root = TrialRng(seed)
    collided = 0
    for trial in range(trials):
        rng = root.fork(trial)
        kk = k if k is not None else rng.between(1, max_k)
        S = _random_set(rng, rng.between(2, max_n))
        pair = colliding_pair(rng, S, kk)
        if pair is None:
            continue
        collided += 1
        history = []
        out = repair_injectivity(pair, history)
        res.checked += 1
        if len(history) > iteration_bound(pair):
            res.fail("repair terminates within the potential-derived bound", trial=trial)
        if out.sizes() != pair.sizes():
            res.fail("repair preserves |C+| and |C-|", trial=trial)
        rep = out.check()
        if not rep:
            res.fail("repaired coverings are fine coverings", trial=trial, reason=rep.reason)
        if not phi_structure(out).injective:
            res.fail("phi is injective after repair", trial=trial)
        for step in history:
            a, b, d = step.potential_before, step.potential_after, step.depth
            pad = max(len(a), len(b), d + 1)
            a = a + (0,) * (pad - len(a))
            b = b + (0,) * (pad - len(b))
            if not (all(a[i] <= b[i] for i in range(d)) and a[d] < b[d] and lex_less(a, b)):
                res.fail("potential rises at the collision depth and not below it",
                         trial=trial, before=list(a), after=list(b), depth=d)
        res.records.append({"trial": trial, "n": len(S), "k": kk, "steps": len(history)})
    res.params["collided"] = collided
    if collided == 0:
        res.fail("generator produced at least one colliding pair")
    return res


SUITES = {
    "thm11": thm11, "thm12": thm12, "ust": ust, "dilworth": dilworth, "prop22": prop22,
    "oracle": oracle, "coverlab": coverlab, "exchange": exchange,
}
