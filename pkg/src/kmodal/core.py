"""Exact-arithmetic domain model for k-modal paths.

Coordinates are :class:`fractions.Fraction` throughout, so genericity and
x-separation are decided exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Iterable, NamedTuple, Sequence


class NonGenericError(ValueError):
    """Two points share an x- or a y-coordinate."""


def to_rational(value) -> Fraction:
    """Convert ``value`` to an exact rational.

    Strings may be integers, finite decimals or ``p/q``.  Floats are taken at
    their shortest decimal repr, so ``3.14`` becomes ``157/50``.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, float):
        if not math.isfinite(value):
            raise ValueError(f"non-finite coordinate {value!r}")
        return Fraction(repr(value))
    if isinstance(value, str):
        return Fraction(value.strip())
    return Fraction(value)


class _PointBase(NamedTuple):
    x: Fraction
    y: Fraction


class Point(_PointBase):
    __slots__ = ()

    def __new__(cls, x, y):
        return super().__new__(cls, to_rational(x), to_rational(y))

    def __repr__(self):
        return f"({self.x}, {self.y})"


def ne_less(p: Point, q: Point) -> bool:
    """p precedes q in the northeast order."""
    return p.x < q.x and p.y < q.y


def se_less(p: Point, q: Point) -> bool:
    """p precedes q in the southeast order."""
    return p.x < q.x and p.y > q.y


class GenericPointSet:
    """A finite planar point set with pairwise distinct x's and y's.

    Points are kept sorted by x; ``S[i]`` is the (i+1)-th point of S.
    """

    __slots__ = ("points", "_index")

    def __init__(self, points: Iterable = ()):
        pts = sorted((p if isinstance(p, Point) else Point(*p) for p in points),
                     key=lambda p: p.x)
        for a, b in zip(pts, pts[1:]):
            if a.x == b.x:
                raise NonGenericError(f"points {a} and {b} share x = {a.x}")
        ys = {}
        for p in pts:
            if p.y in ys:
                raise NonGenericError(f"points {ys[p.y]} and {p} share y = {p.y}")
            ys[p.y] = p
        self.points: tuple[Point, ...] = tuple(pts)
        self._index = {p: i for i, p in enumerate(pts)}

    def __len__(self):
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def __getitem__(self, i):
        return self.points[i]

    def __contains__(self, p):
        return p in self._index

    def __eq__(self, other):
        return isinstance(other, GenericPointSet) and self.points == other.points

    def __hash__(self):
        return hash(self.points)

    def __repr__(self):
        return f"GenericPointSet({list(self.points)!r})"

    def index(self, p: Point) -> int:
        return self._index[p]

    def y_ranks(self) -> list[int]:
        """0-based y-rank of each point, listed in x order."""
        order = sorted(range(len(self.points)), key=lambda i: self.points[i].y)
        ranks = [0] * len(order)
        for r, i in enumerate(order):
            ranks[i] = r
        return ranks


class Sign(Enum):
    PLUS = "+"
    MINUS = "-"

    def increasing(self, i: int) -> bool:
        """Whether section ``i`` of a path with this sign is increasing."""
        return (i % 2 == 0) == (self is Sign.PLUS)

    def flipped(self) -> Sign:
        return Sign.MINUS if self is Sign.PLUS else Sign.PLUS

    @classmethod
    def parse(cls, text) -> Sign:
        if isinstance(text, Sign):
            return text
        t = str(text).strip().lower()
        if t in ("+", "plus", "+1", "p"):
            return cls.PLUS
        if t in ("-", "−", "minus", "-1", "m"):
            return cls.MINUS
        raise ValueError(f"unknown sign {text!r}")


@dataclass(frozen=True)
class ModalPath:
    """A point set with an explicit (k+1)-partition into sections.

    Empty sections still carry the monotonicity fixed by ``sign`` and their
    index.  Construction only normalizes (sorts each section by x); use
    :func:`validate_modal_path` to check the path invariants.
    """

    k: int
    sign: Sign
    sections: tuple[tuple[Point, ...], ...]

    def __post_init__(self):
        if self.k < 0:
            raise ValueError("k must be nonnegative")
        if len(self.sections) != self.k + 1:
            raise ValueError(f"expected {self.k + 1} sections, got {len(self.sections)}")
        secs = tuple(tuple(sorted((p if isinstance(p, Point) else Point(*p) for p in sec),
                                  key=lambda p: p.x))
                     for sec in self.sections)
        object.__setattr__(self, "sign", Sign.parse(self.sign))
        object.__setattr__(self, "sections", secs)

    def __len__(self):
        return sum(len(s) for s in self.sections)

    @property
    def points(self) -> tuple[Point, ...]:
        """All points in x order (sections are x-separated, so this is a concatenation)."""
        return tuple(sorted((p for s in self.sections for p in s), key=lambda p: p.x))

    def labelled(self) -> list[tuple[Point, int]]:
        """(point, section index) pairs in x order."""
        return sorted(((p, i) for i, s in enumerate(self.sections) for p in s),
                      key=lambda t: t[0].x)

    def is_empty(self) -> bool:
        return all(not s for s in self.sections)


@dataclass(frozen=True)
class Report:
    """Outcome of a report-style validation; truthy iff it passed."""

    ok: bool
    reason: str = ""
    section: int | None = None
    points: tuple = ()

    def __bool__(self):
        return self.ok


PASS = Report(True)


def validate_modal_path(path: ModalPath, ground: GenericPointSet | None = None) -> Report:
    """Check x-separation, per-section monotonicity and (optionally) membership."""
    all_pts = [p for s in path.sections for p in s]
    if len(set(all_pts)) != len(all_pts):
        seen = set()
        for i, s in enumerate(path.sections):
            for p in s:
                if p in seen:
                    return Report(False, "point repeated across sections", i, (p,))
                seen.add(p)
    if ground is not None:
        for i, s in enumerate(path.sections):
            for p in s:
                if p not in ground:
                    return Report(False, "point not in ground set", i, (p,))
    for i, sec in enumerate(path.sections):
        inc = path.sign.increasing(i)
        for a, b in zip(sec, sec[1:]):
            if not (ne_less(a, b) if inc else se_less(a, b)):
                kind = "increasing" if inc else "decreasing"
                return Report(False, f"section {i} must be {kind}", i, (a, b))
    # x-separation between every pair of nonempty sections, in index order
    last = None
    for i, sec in enumerate(path.sections):
        if not sec:
            continue
        if last is not None and not last[1].x < sec[0].x:
            return Report(False, f"sections {last[0]} and {i} are not x-separated", i,
                          (last[1], sec[0]))
        last = (i, sec[-1])
    return PASS


@dataclass(frozen=True)
class FineCovering:
    """Same-sign k-modal paths whose i-th sections partition ``ground`` for each i."""

    k: int
    sign: Sign
    paths: tuple[ModalPath, ...]
    ground: GenericPointSet = field(compare=True)

    def __post_init__(self):
        object.__setattr__(self, "sign", Sign.parse(self.sign))
        object.__setattr__(self, "paths", tuple(self.paths))

    def __len__(self):
        return len(self.paths)


def from_sequence(seq: Sequence) -> GenericPointSet:
    """The point set {(i, a_i)} of a generic sequence, with i starting at 1."""
    vals = [to_rational(v) for v in seq]
    first = {}
    for i, v in enumerate(vals, start=1):
        if v in first:
            raise NonGenericError(f"sequence entries {first[v]} and {i} are both {v}")
        first[v] = i
    return GenericPointSet(Point(i, v) for i, v in enumerate(vals, start=1))


def to_sequence(S: GenericPointSet) -> list[Fraction]:
    return [p.y for p in S]


def rank_normalize(S: GenericPointSet, k: int) -> GenericPointSet:
    """Order-isomorphic copy with x = (k+1)*rank_x and y = rank_y/(n+1) in (0, 1)."""
    n = len(S)
    ranks = S.y_ranks()
    return GenericPointSet(Point((k + 1) * (i + 1), Fraction(r + 1, n + 1))
                           for i, r in enumerate(ranks))


def normalization_map(S: GenericPointSet, k: int) -> dict[Point, Point]:
    """Map from each point of S to its image under :func:`rank_normalize`."""
    N = rank_normalize(S, k)
    return dict(zip(S.points, N.points))


def reflect_y(S: GenericPointSet) -> GenericPointSet:
    """Mirror image under y -> -y; swaps increasing and decreasing paths."""
    return GenericPointSet(Point(p.x, -p.y) for p in S)


def reflect_path(path: ModalPath) -> ModalPath:
    """Mirror a path under y -> -y, flipping its sign."""
    return ModalPath(path.k, path.sign.flipped(),
                     tuple(tuple(Point(p.x, -p.y) for p in s) for s in path.sections))
