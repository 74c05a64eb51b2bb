"""Certificates for the fine-covering lower bound.

Given a (+k)-covering and a (-k)-covering of the same ground set, this module
builds the successor map phi on covering paths, repairs it to be injective
by the point-exchange procedure, and then walks the counting argument that
forces max(|C+|, |C-|) >= sqrt((2k+1)(n - 1/4)) + k/2, checking every
intermediate inequality exactly.

Paths are identified by ``(sign, index)`` into their covering, never by
their point sets: two members of a covering may be equal as sets.
"""

from __future__ import annotations

from collections import Counter, defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from .bounds import Surd, covering_bound_holds, m_lower
from .core import FineCovering, GenericPointSet, ModalPath, Point, Sign, validate_modal_path
from .cover import check_fine_cover

PathId = tuple  # (Sign, int)


class CertificateError(RuntimeError):
    """An internal consistency check failed; the input pair was valid."""


def _id_key(pid: PathId) -> tuple[int, int]:
    return (0 if pid[0] is Sign.PLUS else 1, pid[1])


def _fmt_id(pid: PathId) -> str:
    return f"{pid[0].value}{pid[1]}"


# ---------------------------------------------------------------------------
# covering pairs and the successor map


@dataclass(frozen=True)
class CoveringPair:
    cplus: FineCovering
    cminus: FineCovering

    def __post_init__(self):
        if self.cplus.sign is not Sign.PLUS or self.cminus.sign is not Sign.MINUS:
            raise ValueError("cplus must be a (+k)-covering and cminus a (-k)-covering")
        if self.cplus.k != self.cminus.k:
            raise ValueError("coverings have different k")
        if self.cplus.ground != self.cminus.ground:
            raise ValueError("coverings have different ground sets")

    @property
    def k(self) -> int:
        return self.cplus.k

    @property
    def ground(self) -> GenericPointSet:
        return self.cplus.ground

    def covering(self, sign: Sign) -> FineCovering:
        return self.cplus if sign is Sign.PLUS else self.cminus

    def path(self, pid: PathId) -> ModalPath:
        return self.covering(pid[0]).paths[pid[1]]

    def ids(self) -> list[PathId]:
        """Identities of all nonempty members, plus paths first."""
        return [(s, i) for s in (Sign.PLUS, Sign.MINUS)
                for i, P in enumerate(self.covering(s).paths) if not P.is_empty()]

    def sizes(self) -> tuple[int, int]:
        return len(self.cplus), len(self.cminus)

    def check(self):
        for C in (self.cplus, self.cminus):
            r = check_fine_cover(C)
            if not r:
                return r
        return r

    def replaced(self, changes: dict) -> CoveringPair:
        """Copy with the members named in ``changes`` swapped for new paths."""
        out = {}
        for s in (Sign.PLUS, Sign.MINUS):
            C = self.covering(s)
            paths = list(C.paths)
            for (sign, i), P in changes.items():
                if sign is s:
                    paths[i] = P
            out[s] = FineCovering(C.k, s, tuple(paths), C.ground)
        return CoveringPair(out[Sign.PLUS], out[Sign.MINUS])


class _SectionIndex:
    """point -> member index, per covering and section index."""

    def __init__(self, pair: CoveringPair):
        self.k = pair.k
        self.table = {}
        for s in (Sign.PLUS, Sign.MINUS):
            per = [dict() for _ in range(pair.k + 1)]
            for idx, P in enumerate(pair.covering(s).paths):
                for i, sec in enumerate(P.sections):
                    for p in sec:
                        per[i][p] = idx
            self.table[s] = per

    def next_path(self, pid: PathId, p: Point, i: int) -> PathId:
        other = pid[0].flipped()
        return (other, self.table[other][i + 1][p])


def next_path(pair: CoveringPair, pid: PathId, p: Point) -> PathId:
    """Opposite-covering member holding p in the section after p's section in ``pid``."""
    P = pair.path(pid)
    for i, sec in enumerate(P.sections):
        if p in sec:
            break
    else:
        raise ValueError(f"{p} is not on path {_fmt_id(pid)}")
    if i == pair.k:
        raise ValueError(f"{p} lies in the last section of {_fmt_id(pid)}")
    return _SectionIndex(pair).next_path(pid, p, i)


@dataclass
class PhiData:
    k: int
    first: dict          # s(P)
    first_section: dict  # i(P)
    phi_domain: frozenset
    phi: dict
    depth: dict
    gamma: dict
    injective: bool
    acyclic: bool
    orbits: list = field(default_factory=list)  # chains ordered by depth, when injective

    def witness_key(self, pid):
        return (self.first[pid].x, -self.first_section[pid])

    def potential(self) -> tuple[int, ...]:
        """(H_0, H_1, ...) with H_d the sum of gamma(P)^2 over paths of depth d."""
        if not self.depth:
            return ()
        h = [0] * (max(self.depth.values()) + 1)
        for pid, d in self.depth.items():
            h[d] += self.gamma[pid] ** 2
        while h and h[-1] == 0:
            h.pop()
        return tuple(h)


def lex_less(a: tuple, b: tuple) -> bool:
    """Lexicographic a < b for finitely supported sequences (zero-padded)."""
    n = max(len(a), len(b))
    return tuple(a) + (0,) * (n - len(a)) < tuple(b) + (0,) * (n - len(b))


def phi_structure(pair: CoveringPair) -> PhiData:
    k = pair.k
    index = _SectionIndex(pair)
    first, first_sec, phi, gamma = {}, {}, {}, {}
    ids = pair.ids()
    for pid in ids:
        lab = pair.path(pid).labelled()
        p0, i0 = lab[0]
        first[pid], first_sec[pid] = p0, i0
        if i0 == k:
            gamma[pid] = 0
            continue
        target = index.next_path(pid, p0, i0)
        phi[pid] = target
        g = 0
        for p, i in lab:
            if i == k or index.next_path(pid, p, i) != target:
                break
            g += 1
        gamma[pid] = g
    domain = frozenset(phi)
    acyclic = all((first[phi[P]].x, -first_sec[phi[P]]) < (first[P].x, -first_sec[P])
                  for P in domain)
    depth = {}
    for pid in ids:
        trail = []
        cur = pid
        while cur not in depth:
            if cur not in domain:
                depth[cur] = 0
                break
            if cur in trail:
                raise CertificateError(f"phi has a cycle through {_fmt_id(cur)}")
            trail.append(cur)
            cur = phi[cur]
        d = depth[cur]
        for q in reversed(trail):
            d += 1
            depth[q] = d
    injective = len(set(phi.values())) == len(phi)
    data = PhiData(k, first, first_sec, domain, phi, depth, gamma, injective, acyclic)
    if injective:
        inverse = {v: u for u, v in phi.items()}
        for pid in ids:
            if depth[pid] == 0:
                chain = [pid]
                while chain[-1] in inverse:
                    chain.append(inverse[chain[-1]])
                data.orbits.append(chain)
        data.orbits.sort(key=lambda c: _id_key(c[0]))
    return data


# ---------------------------------------------------------------------------
# repair by exchange


@dataclass(frozen=True)
class ExchangeStep:
    target: PathId
    receiver: PathId   # Q, gains points
    donor: PathId      # R, loses its first gamma(R) points
    depth: int
    moved: int
    potential_before: tuple
    potential_after: tuple


def find_collision(phi: PhiData):
    """(P, Q, R) with phi(Q) = phi(R) = P at minimal depth, or None.

    Ties are broken by (x(s(Q)), identity) of the preimages.
    """
    pre = defaultdict(list)
    for Q in phi.phi_domain:
        pre[phi.phi[Q]].append(Q)
    best = None
    for P, qs in pre.items():
        if len(qs) < 2:
            continue
        qs.sort(key=lambda Q: (phi.first[Q].x, _id_key(Q)))
        key = (phi.depth[qs[0]], phi.first[qs[0]].x, _id_key(qs[0]), _id_key(qs[1]))
        if best is None or key < best[0]:
            best = (key, P, qs[0], qs[1])
    return None if best is None else best[1:]


def exchange(pair: CoveringPair, phi: PhiData, Q: PathId, R: PathId):
    """Move the first gamma(R) points of R into Q (after naming so that x(q) > x(r)).

    Returns the new pair and the (receiver, donor, number moved).
    """
    lab = {pid: pair.path(pid).labelled() for pid in (Q, R)}
    q = lab[Q][phi.gamma[Q] - 1][0]
    r = lab[R][phi.gamma[R] - 1][0]
    if q.x == r.x:
        raise CertificateError("colliding paths share their last common-successor point")
    if q.x < r.x:
        Q, R, q, r = R, Q, r, q
    A = {p for p, _ in lab[R][:phi.gamma[R]]}
    PQ, PR = pair.path(Q), pair.path(R)
    new_q = ModalPath(PQ.k, PQ.sign, tuple(sq + tuple(p for p in sr if p in A)
                                            for sq, sr in zip(PQ.sections, PR.sections)))
    new_r = ModalPath(PR.k, PR.sign, tuple(tuple(p for p in sr if p not in A)
                                            for sr in PR.sections))
    for name, P in (("receiver", new_q), ("donor", new_r)):
        rep = validate_modal_path(P)
        if not rep:
            raise CertificateError(f"exchange produced an invalid {name} path: {rep.reason}")
    return pair.replaced({Q: new_q, R: new_r}), (Q, R, len(A))


def iteration_bound(pair: CoveringPair) -> int:
    """Number of distinct potentials: H_d <= 2 n^2 max|C|, depth <= |C+| + |C-|."""
    n = len(pair.ground)
    total = len(pair.cplus) + len(pair.cminus)
    cap = 2 * n * n * max(pair.sizes())
    return (cap + 1) ** (total + 1)


def repair_injectivity(pair: CoveringPair, history: list | None = None) -> CoveringPair:
    """Exchange points between colliding paths until phi is injective.

    Member counts are preserved; a donor emptied by the exchange stays in its
    covering as an empty path, which the phi machinery ignores.  Each step is
    checked to raise the potential lexicographically.
    """
    bound = iteration_bound(pair)
    steps = 0
    phi = phi_structure(pair)
    while not phi.injective:
        hit = find_collision(phi)
        if hit is None:
            raise CertificateError("phi is not injective but no collision was found")
        target, Q, R = hit
        before = phi.potential()
        pair, (recv, donor, moved) = exchange(pair, phi, Q, R)
        new_phi = phi_structure(pair)
        after = new_phi.potential()
        if not lex_less(before, after):
            raise CertificateError(f"exchange did not raise the potential: {before} -> {after}")
        if history is not None:
            history.append(ExchangeStep(target, recv, donor, phi.depth[Q], moved, before, after))
        phi = new_phi
        steps += 1
        if steps > bound:
            raise CertificateError(f"repair exceeded the iteration bound {bound}")
    return pair


# ---------------------------------------------------------------------------
# certificate


LAMBDA_TABLE = {
    "A": {"A": 2, "B": 1, "C": 0, "D": 1},
    "B": {"A": 1, "B": 2, "C": 1, "D": 0},
    "C": {"A": 0, "B": 1, "C": 2, "D": 1},
    "D": {"A": 1, "B": 0, "C": 1, "D": 2},
}


def parity_class(sign: Sign, ell: int) -> str:
    if sign is Sign.PLUS:
        return "A" if ell % 2 else "B"
    return "C" if ell % 2 else "D"


def pair_length(ell_i: int, ell_j: int, same_sign: bool) -> int:
    """Largest possible |S_ij|: odd or even values among 0 .. ell_i + ell_j - 2."""
    return (ell_i + ell_j - 1) // 2 if same_sign else (ell_i + ell_j) // 2


@dataclass(frozen=True)
class OrbitRecord:
    members: tuple      # path ids, depth 0 .. t
    ell: int
    sign: Sign
    path: ModalPath     # sections are the first sections of members at depth >= k


@dataclass
class Certificate:
    n: int
    k: int
    size_plus: int
    size_minus: int
    r: int
    orbits: list
    chi: dict           # point -> (i, j), 1-based orbit indices, i < j
    positions: dict     # point -> (u, v) with p in section u of R^i and v of R^j
    fibers: dict        # (i, j) -> |S_ij|, over all of K
    pair_lengths: dict  # (i, j) -> l(i, j)
    lam: dict           # (i, j) -> lambda(i, j)
    classes: dict       # "A".."D" -> orbit indices
    bound: Surd
    verdicts: dict = field(default_factory=dict)
    failures: dict = field(default_factory=dict)

    @property
    def m(self) -> int:
        return max(self.size_plus, self.size_minus)

    @property
    def valid(self) -> bool:
        return all(self.verdicts.values())

    @property
    def squared_slack(self) -> int:
        """(2m - k)^2 - (2k+1)(4n - 1); zero means the bound is attained."""
        return (2 * self.m - self.k) ** 2 - (2 * self.k + 1) * (4 * self.n - 1)

    def first_failure(self):
        for name, ok in self.verdicts.items():
            if not ok:
                return name, self.failures.get(name, "")
        return None

    def to_json(self) -> dict:
        key = lambda ij: f"{ij[0]},{ij[1]}"
        return {
            "n": self.n, "k": self.k,
            "size_plus": self.size_plus, "size_minus": self.size_minus,
            "r": self.r,
            "orbits": [{"members": [_fmt_id(p) for p in o.members], "ell": o.ell,
                        "sign": o.sign.value} for o in self.orbits],
            "classes": self.classes,
            "fibers": {key(ij): v for ij, v in sorted(self.fibers.items()) if v},
            "pair_lengths": {key(ij): v for ij, v in sorted(self.pair_lengths.items())},
            "lambda": {key(ij): v for ij, v in sorted(self.lam.items())},
            "bound": str(self.bound),
            "squared_slack": self.squared_slack,
            "verdicts": self.verdicts,
            "failures": self.failures,
            "valid": self.valid,
        }


class _Verdicts:
    def __init__(self):
        self.verdicts, self.failures = {}, {}

    def __call__(self, name: str, ok: bool, detail: str = ""):
        ok = bool(ok)
        self.verdicts[name] = self.verdicts.get(name, True) and ok
        if not ok and name not in self.failures:
            self.failures[name] = detail


def _orbit_path(pair: CoveringPair, chain: list, k: int) -> OrbitRecord:
    deep = chain[k:]
    sign = deep[0][0]
    sections = tuple(pair.path(pid).sections[0] for pid in deep)
    ell = len(chain) - k
    return OrbitRecord(tuple(chain), ell, sign, ModalPath(ell - 1, sign, sections))


def covering_certificate(pair: CoveringPair) -> Certificate:
    """Check every step of the counting argument on this pair of coverings."""
    k, S = pair.k, pair.ground
    n = len(S)
    if n == 0:
        raise ValueError("certificate needs a nonempty ground set")
    phi = phi_structure(pair)
    if not phi.injective:
        raise ValueError("phi is not injective; run repair_injectivity first")
    check = _Verdicts()
    ids = pair.ids()

    # successor map structure
    for P in phi.phi_domain:
        Q = phi.phi[P]
        check("phi_acyclic", phi.witness_key(Q) < phi.witness_key(P),
              f"{_fmt_id(P)} -> {_fmt_id(Q)}")
        check("phi_opposite_covering", Q[0] is not P[0], _fmt_id(P))
    for P in ids:
        d = phi.depth[P]
        if P in phi.phi_domain:
            check("depth_recurrence", d == phi.depth[phi.phi[P]] + 1 and d >= 1, _fmt_id(P))
        else:
            check("depth_recurrence", d == 0, _fmt_id(P))
        if d < k:
            check("shallow_first_sections_empty", not pair.path(P).sections[0], _fmt_id(P))

    # long orbits and their paths R^1..R^r
    orbits = [_orbit_path(pair, c, k) for c in phi.orbits if len(c) >= k + 1]
    r = len(orbits)
    for idx, o in enumerate(orbits, start=1):
        rep = validate_modal_path(o.path, S)
        check("orbit_paths_valid", rep, f"R^{idx}: {rep.reason}")
        check("orbit_signs_alternate",
              all(a[0] is not b[0] for a, b in zip(o.members, o.members[1:])), f"R^{idx}")
    used = Counter(pid for o in orbits for pid in o.members[k:])
    deep = Counter(P for P in ids if phi.depth[P] >= k)
    check("orbit_sections_are_deep_first_sections", used == deep,
          f"{len(used)} orbit sections vs {len(deep)} deep paths")
    total = len(pair.cplus) + len(pair.cminus)
    m = max(pair.sizes())
    sum_ell = sum(o.ell for o in orbits)
    check("orbit_count_bound", k * r + sum_ell <= total <= 2 * m,
          f"kr + sum(ell) = {k * r + sum_ell}, |C+|+|C-| = {total}, 2m = {2 * m}")

    # increasing / decreasing sections of the R^i
    inc_at, dec_at = defaultdict(list), defaultdict(list)
    for idx, o in enumerate(orbits, start=1):
        for u, sec in enumerate(o.path.sections):
            bucket = inc_at if o.sign.increasing(u) else dec_at
            for p in sec:
                bucket[p].append((idx, u))
    for name, bucket in (("increasing_sections_cover", inc_at),
                         ("decreasing_sections_cover", dec_at)):
        extra = set(bucket) - set(S)
        check(name, not extra, "points outside ground")
        for p in S:
            check(name, len(bucket.get(p, ())) == 1,
                  f"{p} lies in {len(bucket.get(p, ()))} sections")

    # chi and the fibers S_ij
    chi, positions = {}, {}
    fibers = {ij: 0 for ij in combinations(range(1, r + 1), 2)}
    fiber_sums = defaultdict(list)
    for p in S:
        if len(inc_at.get(p, ())) != 1 or len(dec_at.get(p, ())) != 1:
            continue
        (a, ua), (b, ub) = inc_at[p][0], dec_at[p][0]
        if a == b:
            check("chi_distinct_orbits", False, f"{p} meets R^{a} twice")
            continue
        (i, u), (j, v) = sorted([(a, ua), (b, ub)])
        chi[p], positions[p] = (i, j), (u, v)
        fibers[(i, j)] += 1
        fiber_sums[(i, j)].append(u + v)
        opposite = orbits[i - 1].sign is not orbits[j - 1].sign
        check("fiber_parity", (u + v) % 2 == (0 if opposite else 1), f"{p}")
    check("chi_distinct_orbits", True)
    check("fiber_partition", sum(fibers.values()) == n,
          f"sum |S_ij| = {sum(fibers.values())}, n = {n}")
    for ij, sums in fiber_sums.items():
        check("fiber_sums_distinct", len(set(sums)) == len(sums), f"{ij}")

    ells = [o.ell for o in orbits]
    pair_lengths, lam = {}, {}
    classes = {c: [] for c in "ABCD"}
    for idx, o in enumerate(orbits, start=1):
        classes[parity_class(o.sign, o.ell)].append(idx)
    cls = {idx: c for c, members in classes.items() for idx in members}
    for (i, j) in fibers:
        same = orbits[i - 1].sign is orbits[j - 1].sign
        lij = pair_length(ells[i - 1], ells[j - 1], same)
        pair_lengths[(i, j)] = lij
        check("fiber_size_bound", fibers[(i, j)] <= lij,
              f"|S_{i},{j}| = {fibers[(i, j)]} > {lij}")
        lam[(i, j)] = ells[i - 1] + ells[j - 1] - 2 * lij
        check("lambda_table", lam[(i, j)] == LAMBDA_TABLE[cls[i]][cls[j]],
              f"lambda({i},{j}) = {lam[(i, j)]}, table gives {LAMBDA_TABLE[cls[i]][cls[j]]}")

    K = len(fibers)
    a, b, c, d = (len(classes[x]) for x in "ABCD")
    lam_sum = sum(lam.values())
    identity = Fraction(K) + Fraction((a - c) ** 2 + (b - d) ** 2 - r, 2)
    check("lambda_sum", lam_sum == identity and lam_sum >= K - Fraction(r, 2),
          f"sum lambda = {lam_sum}, identity gives {identity}, |K| - r/2 = {K - Fraction(r, 2)}")

    half_sum = sum(Fraction(ells[i - 1] + ells[j - 1] - 1, 2) for (i, j) in fibers)
    check("pair_length_sum_bound", sum(pair_lengths.values()) <= half_sum + Fraction(r, 4),
          f"{sum(pair_lengths.values())} > {half_sum + Fraction(r, 4)}")

    # the closing chain of inequalities, with m = max(|C+|, |C-|)
    w = 2 * k + 1
    steps = [
        Fraction(w * n),
        Fraction(w * sum(fibers.values())),
        Fraction(w * sum(pair_lengths.values())),
        w * (half_sum + Fraction(r, 4)),
        w * (Fraction(r - 1, 2) * (sum_ell - Fraction(r, 2)) + Fraction(r, 4)),
        w * (Fraction(r - 1, 2) * (2 * m - (k + Fraction(1, 2)) * r) + Fraction(r, 4)),
        (m - Fraction(k, 2)) ** 2 + Fraction(w, 4),
    ]
    relations = ["==", "<=", "<=", "==", "<=", "<="]
    for t, (lhs, rhs, rel) in enumerate(zip(steps, steps[1:], relations)):
        ok = lhs == rhs if rel == "==" else lhs <= rhs
        check("counting_chain", ok, f"step {t}: {lhs} {rel} {rhs} fails")
    check("final_bound", covering_bound_holds(m, n, k),
          f"max(|C+|,|C-|) = {m} < sqrt({w}({n} - 1/4)) + {k}/2")

    return Certificate(n=n, k=k, size_plus=len(pair.cplus), size_minus=len(pair.cminus), r=r,
                       orbits=orbits, chi=chi, positions=positions, fibers=fibers,
                       pair_lengths=pair_lengths, lam=lam, classes=classes,
                       bound=m_lower(n, k), verdicts=check.verdicts, failures=check.failures)


# ---------------------------------------------------------------------------
# pairs for trials


def cover_pair(S: GenericPointSet, k: int) -> CoveringPair:
    """The constructive (+k)- and (-k)-coverings of S."""
    from .cover import fine_cover
    return CoveringPair(fine_cover(S, k, Sign.PLUS), fine_cover(S, k, Sign.MINUS))


def _merged(P: ModalPath, Q: ModalPath, sign: Sign) -> ModalPath | None:
    M = ModalPath(P.k, sign, tuple(a + b for a, b in zip(P.sections, Q.sections)))
    return M if validate_modal_path(M) else None


def random_fine_cover(rng, S: GenericPointSet, k: int, sign, attempts: int | None = None) -> FineCovering:
    """Random fine covering: start from one-point paths and merge random compatible pairs."""
    sign = Sign.parse(sign)
    paths = []
    for p in S:
        for i in range(k + 1):
            secs = [() for _ in range(k + 1)]
            secs[i] = (p,)
            paths.append(ModalPath(k, sign, tuple(secs)))
    if attempts is None:
        attempts = 6 * len(paths)
    for _ in range(attempts):
        if len(paths) < 2:
            break
        a = rng.below(len(paths))
        b = rng.below(len(paths) - 1)
        b += b >= a
        M = _merged(paths[a], paths[b], sign)
        if M is not None:
            paths[a] = M
            paths.pop(b)
    return FineCovering(k, sign, tuple(paths), S)


def split_paths(rng, C: FineCovering, splits: int) -> FineCovering:
    """Split random members in two; each half of a modal path is again one."""
    paths = list(C.paths)
    for _ in range(splits):
        idx = rng.below(len(paths))
        P = paths[idx]
        if len(P) < 2:
            continue
        left, right = [], []
        for sec in P.sections:
            a, b = [], []
            for p in sec:
                (a if rng.below(2) else b).append(p)
            left.append(tuple(a))
            right.append(tuple(b))
        L, R = ModalPath(P.k, P.sign, tuple(left)), ModalPath(P.k, P.sign, tuple(right))
        if L.is_empty() or R.is_empty():
            continue
        paths[idx] = L
        paths.append(R)
    return FineCovering(C.k, C.sign, tuple(paths), C.ground)


def random_pair(rng, S: GenericPointSet, k: int) -> CoveringPair:
    """A random valid pair: merged one-point paths, or constructive covers split apart."""
    if rng.below(2):
        return CoveringPair(random_fine_cover(rng, S, k, Sign.PLUS),
                            random_fine_cover(rng, S, k, Sign.MINUS))
    base = cover_pair(S, k)
    splits = 1 + rng.below(max(1, len(S)))
    return CoveringPair(split_paths(rng, base.cplus, splits), split_paths(rng, base.cminus, splits))


def colliding_pair(rng, S: GenericPointSet, k: int, tries: int = 200) -> CoveringPair | None:
    """A random valid pair whose phi is not injective, or None if none was found."""
    for _ in range(tries):
        pair = random_pair(rng, S, k)
        if not phi_structure(pair).injective:
            return pair
    return None
