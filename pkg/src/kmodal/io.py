"""File formats: point-set CSV, sequence files, path and covering JSON.

Rationals are written as ``p/q`` (or a bare integer) so files round-trip
exactly.  Signs are written as ``"+"`` / ``"-"``; ``"−"`` (U+2212) is
accepted on input.
"""

from __future__ import annotations

import csv
import io
import json
from fractions import Fraction
from pathlib import Path

from .core import FineCovering, GenericPointSet, ModalPath, Point, Sign, from_sequence, to_rational


def fmt(q: Fraction) -> str:
    return str(q)


def read_points_csv(path) -> GenericPointSet:
    text = Path(path).read_text()
    return parse_points_csv(text)


def parse_points_csv(text: str) -> GenericPointSet:
    rows = list(csv.reader(io.StringIO(text)))
    rows = [r for r in rows if r and any(c.strip() for c in r)]
    if not rows:
        return GenericPointSet()
    header = [c.strip().lower() for c in rows[0]]
    if header[:2] != ["x", "y"]:
        raise ValueError(f"point CSV must start with header 'x,y', got {rows[0]!r}")
    return GenericPointSet(Point(to_rational(r[0]), to_rational(r[1])) for r in rows[1:])


def points_csv(S) -> str:
    out = io.StringIO()
    w = csv.writer(out, lineterminator="\n")
    w.writerow(["x", "y"])
    for p in S:
        w.writerow([fmt(p.x), fmt(p.y)])
    return out.getvalue()


def write_points_csv(S, path) -> None:
    Path(path).write_text(points_csv(S))


def read_sequence(path) -> GenericPointSet:
    lines = [ln.strip() for ln in Path(path).read_text().splitlines()]
    return from_sequence([ln for ln in lines if ln and not ln.startswith("#")])


def read_point_input(path) -> GenericPointSet:
    """Read either a point CSV (header ``x,y``) or a one-value-per-line sequence."""
    text = Path(path).read_text()
    first = next((ln for ln in text.splitlines() if ln.strip()), "")
    if first.replace(" ", "").lower().startswith("x,y"):
        return parse_points_csv(text)
    return read_sequence(path)


def _pair(p: Point) -> list[str]:
    return [fmt(p.x), fmt(p.y)]


def _sections_json(path: ModalPath) -> list:
    return [[_pair(p) for p in sec] for sec in path.sections]


def path_to_json(path: ModalPath) -> dict:
    return {"k": path.k, "sign": path.sign.value, "sections": _sections_json(path)}


def path_from_json(obj: dict) -> ModalPath:
    return ModalPath(int(obj["k"]), Sign.parse(obj["sign"]),
                     tuple(tuple(Point(*xy) for xy in sec) for sec in obj["sections"]))


def covering_to_json(C: FineCovering) -> dict:
    return {
        "k": C.k,
        "sign": C.sign.value,
        "ground": [_pair(p) for p in C.ground],
        "paths": [{"sections": _sections_json(P)} for P in C.paths],
    }


def covering_from_json(obj: dict) -> FineCovering:
    k, sign = int(obj["k"]), Sign.parse(obj["sign"])
    paths = tuple(ModalPath(k, sign, tuple(tuple(Point(*xy) for xy in sec)
                                           for sec in P["sections"]))
                  for P in obj["paths"])
    if "ground" in obj:
        ground = GenericPointSet(Point(*xy) for xy in obj["ground"])
    else:
        ground = GenericPointSet({p for P in paths for p in P.sections[0]})
    return FineCovering(k, sign, paths, ground)


def dump_json(obj, path=None) -> str:
    text = json.dumps(obj, sort_keys=True, indent=None, separators=(",", ":"))
    if path is not None:
        Path(path).write_text(text + "\n")
    return text
