"""Serialization of locus results: report.json, CSV tables and sphere polylines.

All writers are deterministic: floats use 12 significant digits, rationals
print as "p/q", JSON keys are sorted.  Files are written atomically.
"""

from __future__ import annotations

import csv
import io
import json
import os
import tempfile
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence

from .algebraic import AlgebraicReal
from .geometry import ProjectivePoint, gnomonic_lift, lift_float
from .pjrl import Component, LocusSlice
from .polycore import format_rational
from .solver import SweepPoint

FLOAT_FORMAT = ".12g"


def fmt_float(v: float) -> str:
    return format(float(v) + 0.0, FLOAT_FORMAT)


def round_float(v: float) -> float:
    return float(fmt_float(v))


def exact_value(c, var: str = "t"):
    """"p/q" for rationals, a minimal-polynomial descriptor otherwise."""
    if isinstance(c, AlgebraicReal):
        d = c.descriptor(var)
        d["float"] = round_float(d["float"])
        return d
    return format_rational(Fraction(c))


def point_json(p: ProjectivePoint):
    return [exact_value(c, v) for c, v in zip(p.coords, "xyz")]


def component_json(c: Component):
    return {"patch": c.patch, "polys": [str(p) for p in c.polys]}


def slice_json(sl: LocusSlice) -> dict:
    return {
        "k": str(sl.k) if sl.k is not None else None,
        "points": [point_json(p) for p in sl.points],
        "finite": [point_json(p) for p in sl.finite_points],
        "infinite": [point_json(p) for p in sl.infinite_points],
        "components": [component_json(c) for c in sl.components],
        "empty": sl.empty,
    }


def slope_json(s, var: str = "m"):
    return "vertical" if s is None else exact_value(s, var)


@dataclass
class Branch:
    branch_id: int
    samples: List[tuple] = field(default_factory=list)  # (k, x, y)


def collect_branches(sweep: Sequence[SweepPoint], ids: Sequence[Sequence[int]]) -> List[Branch]:
    by_id: Dict[int, Branch] = {}
    for sp, row in zip(sweep, ids):
        for (x, y), b in zip(sp.roots, row):
            by_id.setdefault(b, Branch(b)).samples.append((sp.k, x, y))
    return [by_id[b] for b in sorted(by_id)]


@dataclass
class LocusReport:
    plant: dict
    closure_system: List[str]
    initial: LocusSlice
    terminal: LocusSlice
    asymptotes: Dict[str, Dict[str, list]]
    branches: List[Branch]
    sweep: dict
    symbolic: Optional[dict] = None

    def to_dict(self) -> dict:
        out = {
            "plant": self.plant,
            "closure_system": self.closure_system,
            "initial": slice_json(self.initial),
            "terminal": slice_json(self.terminal),
            "asymptotes": {
                patch: {end: [slope_json(s) for s in slopes] for end, slopes in ends.items()}
                for patch, ends in self.asymptotes.items()
            },
            "branches": [
                {
                    "branch_id": b.branch_id,
                    "points": [[fmt_rational_or_float(k), round_float(x), round_float(y)] for k, x, y in b.samples],
                }
                for b in self.branches
            ],
            "sweep": self.sweep,
        }
        if self.symbolic is not None:
            out["symbolic_lambda"] = self.symbolic
        return out

    def to_json(self) -> str:
        return dumps(self.to_dict())


def fmt_rational_or_float(k) -> str:
    k = Fraction(k)
    if k.denominator <= 10 ** 6:
        return format_rational(k)
    return fmt_float(k)


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


# -- CSV ------------------------------------------------------------------------------


def locus_csv(sweep: Sequence[SweepPoint], ids: Sequence[Sequence[int]]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["k", "branch_id", "x", "y"])
    for sp, row in zip(sweep, ids):
        if sp.degree_drop:
            continue
        for (x, y), b in sorted(zip(sp.roots, row), key=lambda t: t[1]):
            w.writerow([fmt_rational_or_float(sp.k), b, fmt_float(x), fmt_float(y)])
    return buf.getvalue()


def complementary_csv(sweep: Sequence[SweepPoint], ids: Sequence[Sequence[int]], patch: str = "zy") -> str:
    from .solver import patch_image

    header = {"zy": ["k", "branch_id", "z", "y", "blow_up"], "xz": ["k", "branch_id", "x", "z", "blow_up"]}[patch]
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for sp, row in zip(sweep, ids):
        if sp.degree_drop:
            continue
        for (x, y), b in sorted(zip(sp.roots, row), key=lambda t: t[1]):
            img = patch_image(x, y, patch)
            k = fmt_rational_or_float(sp.k)
            if img is None:
                w.writerow([k, b, "", "", 1])
            else:
                w.writerow([k, b, fmt_float(img[0]), fmt_float(img[1]), 0])
    return buf.getvalue()


def sphere_json(branches: Sequence[Branch], initial: LocusSlice, terminal: LocusSlice) -> str:
    def lift(p):
        return [round_float(v) for v in gnomonic_lift(p).as_list()]

    data = {
        "branches": [
            {
                "branch_id": b.branch_id,
                "points": [[round_float(v) for v in lift_float(x, y).as_list()] for _, x, y in b.samples],
            }
            for b in branches
        ],
        "initial": [lift(p) for p in initial.points],
        "terminal": [lift(p) for p in terminal.points],
    }
    return dumps(data)


# -- files ----------------------------------------------------------------------------


def atomic_write(path: str, text: str) -> None:
    """Write ``text`` to ``path`` via a temporary file and rename."""
    directory = os.path.dirname(os.path.abspath(path))
    os.makedirs(directory, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", suffix=os.path.basename(path))
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
