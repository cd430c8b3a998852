"""Command-line entry point: ``pjroot --plant "(s+1)/s^2" --patch all``."""

from __future__ import annotations

import argparse
import os
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence

from . import pjrl, report
from .algebraic import AlgebraicReal
from .geometry import gnomonic_lift
from .parsing import ParseError, parse_rational_expression
from .pencil import NotCoprimeError, RationalFunction

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_NOT_COPRIME = 3
EXIT_PIPELINE = 4

PATCHES = ("xy", "zy", "xz", "sphere")
EMITS = ("csv", "svg", "json")


class PipelineError(RuntimeError):
    def __init__(self, stage: str, cause: BaseException):
        self.stage = stage
        self.cause = cause
        super().__init__(f"{stage}: {cause}")


def parse_transfer_function(text: str) -> RationalFunction:
    """Parse "num/den" in the variable s into a coprime, monic-denominator G(s)."""
    num, den = parse_rational_expression(text, ("s",))
    if den.is_zero():
        raise ParseError("denominator is zero", 0, text)
    if num.is_zero():
        raise ParseError("numerator is zero", 0, text)
    return RationalFunction(num, den)


def parse_rational(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from exc


@dataclass
class RunConfig:
    plant: str
    patch: str = "all"
    k_min: Optional[Fraction] = None
    k_max: Optional[Fraction] = None
    samples: int = 400
    emit: Sequence[str] = ("csv", "svg", "json")
    out_dir: str = "."
    symbolic_lambda: bool = False

    def __post_init__(self):
        if self.samples < 2:
            raise ValueError("samples must be at least 2")
        if (self.k_min is None) != (self.k_max is None):
            raise ValueError("give both --k-min and --k-max or neither")
        if self.k_min is not None and not self.k_min < self.k_max:
            raise ValueError("k_min must be less than k_max")
        if self.patch not in PATCHES + ("all",):
            raise ValueError(f"unknown patch {self.patch!r}")
        bad = [e for e in self.emit if e not in EMITS]
        if bad:
            raise ValueError(f"unknown emit target(s) {', '.join(bad)}")

    @property
    def patches(self) -> List[str]:
        return list(PATCHES) if self.patch == "all" else [self.patch]


@dataclass
class RunResult:
    report: report.LocusReport
    files: Dict[str, str] = field(default_factory=dict)


def _stage(name, fn, *args, **kwargs):
    try:
        return fn(*args, **kwargs)
    except (ParseError, NotCoprimeError):
        raise
    except Exception as exc:  # surfaced with the stage that failed
        raise PipelineError(name, exc) from exc


def _float_pair(p, patch):
    x, y, z = p.floats()
    if patch == "xy":
        return None if z == 0 else (x / z, y / z)
    if patch == "zy":
        return None if x == 0 else (z / x, y / x)
    return None if y == 0 else (x / y, z / y)


def _chart_of(patch: str) -> str:
    return {"xy": "z", "zy": "x", "xz": "y"}[patch]


def run(config: RunConfig) -> RunResult:
    """Execute the whole pipeline and write the requested artifacts."""
    from .solver import (
        axis_crossings,
        default_k_grid,
        linear_k_grid,
        sweep_conventional,
        track_branches,
    )

    G = parse_transfer_function(config.plant)
    system = _stage("closure", pjrl.projective_closure, G)
    initial = _stage("initial slice", pjrl.initial_slice, system)
    terminal = _stage("terminal slice", pjrl.terminal_slice, system)

    asymptotes = {}
    for patch in ("xy", "zy", "xz"):
        chart = _chart_of(patch)
        asymptotes[patch] = {
            "initial": pjrl.asymptote_directions(initial, chart),
            "terminal": pjrl.asymptote_directions(terminal, chart),
        }

    if config.k_min is None:
        grid = default_k_grid(config.samples)
    else:
        grid = linear_k_grid(config.k_min, config.k_max, config.samples)
    sweep = _stage("sweep", sweep_conventional, G, grid)
    ids = _stage("branch tracking", track_branches, sweep)
    branches = report.collect_branches(sweep, ids)
    drops = [report.fmt_rational_or_float(sp.k) for sp in sweep if sp.degree_drop]
    crossings = _stage("axis crossings", axis_crossings, G, grid)

    symbolic = None
    if config.symbolic_lambda:
        sym = _stage("symbolic lambda", pjrl.symbolic_intermediary, system)
        symbolic = {
            "variables": list(pjrl.SYMBOLIC_VARS),
            "system": [str(p) for p in sym],
            "views": {
                patch: [str(p) for p in pjrl.affine_view(sym, patch).polys] for patch in ("xy", "zy", "xz")
            },
        }

    n_deg, d_deg = G.degrees()
    rep = report.LocusReport(
        plant={
            "text": config.plant,
            "num": str(G.num),
            "den": str(G.den),
            "degrees": [n_deg, d_deg],
            "roles_swapped": system.swapped,
        },
        closure_system=[str(p) for p in system.polys],
        initial=initial,
        terminal=terminal,
        asymptotes=asymptotes,
        branches=branches,
        sweep={
            "samples": len(grid),
            "grid": "linear" if config.k_min is not None else "log",
            "k_min": report.fmt_rational_or_float(min(grid)),
            "k_max": report.fmt_rational_or_float(max(grid)),
            "degree_drop_k": drops,
            "axis_crossings": [report.round_float(k) for k in crossings],
        },
        symbolic=symbolic,
    )

    texts: Dict[str, str] = {}
    emit = set(config.emit)
    patches = config.patches
    if "csv" in emit:
        if "xy" in patches:
            texts["locus.csv"] = report.locus_csv(sweep, ids)
        if "zy" in patches:
            texts["complementary.csv"] = report.complementary_csv(sweep, ids, "zy")
        if "xz" in patches:
            texts["complementary_xz.csv"] = report.complementary_csv(sweep, ids, "xz")
    if "json" in emit:
        texts["report.json"] = rep.to_json()
        if "sphere" in patches:
            texts["sphere.json"] = report.sphere_json(branches, initial, terminal)
    if "svg" in emit:
        texts.update(_stage("plotting", _render_all, patches, branches, initial, terminal, asymptotes, config.plant))

    files = {}
    for name in sorted(texts):
        path = os.path.join(config.out_dir, name)
        _stage("write " + name, report.atomic_write, path, texts[name])
        files[name] = path
    return RunResult(rep, files)


def _render_all(patches, branches, initial, terminal, asymptotes, title) -> Dict[str, str]:
    from . import plotting

    names = {"xy": "locus.svg", "zy": "complementary.svg", "xz": "complementary_xz.svg"}
    out = {}
    for patch in patches:
        if patch == "sphere":
            out["sphere.svg"] = plotting.render_sphere(
                branches,
                [gnomonic_lift(p).as_list() for p in initial.points],
                [gnomonic_lift(p).as_list() for p in terminal.points],
                title,
            )
            continue
        slopes = sorted(
            {float(s) if s is not None else None for end in asymptotes[patch].values() for s in end},
            key=lambda s: (s is None, s if s is not None else 0),
        )
        out[names[patch]] = plotting.render_chart(
            branches,
            patch,
            slopes,
            [q for q in (_float_pair(p, patch) for p in initial.points) if q is not None],
            [q for q in (_float_pair(p, patch) for p in terminal.points) if q is not None],
            title,
        )
    return out


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="pjroot",
        description="Projective root locus of a rational transfer function G(s) = n(s)/d(s).",
    )
    ap.add_argument("--plant", required=True, help='transfer function in s, e.g. "(s+1)/s^2"')
    ap.add_argument("--patch", default="all", choices=PATCHES + ("all",), help="which charts to emit")
    ap.add_argument("--k-min", type=parse_rational, default=None, help="lower gain of a linear sweep")
    ap.add_argument("--k-max", type=parse_rational, default=None, help="upper gain of a linear sweep")
    ap.add_argument("--samples", type=int, default=400, help="number of gain samples (default 400)")
    ap.add_argument("--emit", default="csv,svg,json", help="comma-separated subset of csv,svg,json")
    ap.add_argument("--out", default=".", help="output directory")
    ap.add_argument("--symbolic-lambda", action="store_true",
                    help="include the gain-parametric system in report.json")
    return ap


def main(argv: Optional[Sequence[str]] = None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        config = RunConfig(
            plant=args.plant,
            patch=args.patch,
            k_min=args.k_min,
            k_max=args.k_max,
            samples=args.samples,
            emit=tuple(e.strip() for e in args.emit.split(",") if e.strip()),
            out_dir=args.out,
            symbolic_lambda=args.symbolic_lambda,
        )
    except ValueError as exc:
        ap.error(str(exc))
    try:
        result = run(config)
    except ParseError as exc:
        print(f"pjroot: parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except NotCoprimeError as exc:
        print(f"pjroot: {exc}", file=sys.stderr)
        return EXIT_NOT_COPRIME
    except PipelineError as exc:
        print(f"pjroot: {exc}", file=sys.stderr)
        return EXIT_PIPELINE
    except Exception as exc:  # anything unexpected is a pipeline failure too
        print(f"pjroot: internal error: {exc}", file=sys.stderr)
        return EXIT_PIPELINE
    _summary(result)
    return EXIT_OK


def _summary(result: RunResult) -> None:
    rep = result.report

    def fmt(sl):
        return ", ".join(repr(p) for p in sl.points) or "(none)"

    print(f"initial  (k = 0):   {fmt(rep.initial)}")
    print(f"terminal (k = inf): {fmt(rep.terminal)}")
    for patch, ends in rep.asymptotes.items():
        slopes = [s for end in ends.values() for s in end]
        if slopes:
            text = ", ".join("vertical" if s is None else _fmt_slope(s) for s in slopes)
            print(f"asymptotes {patch}: {text}")
    for name, path in result.files.items():
        print(f"wrote {path}")


def _fmt_slope(s) -> str:
    if isinstance(s, AlgebraicReal):
        return f"{float(s):.12g} ({s.defining_polynomial('m')} = 0)"
    return str(s)


if __name__ == "__main__":
    sys.exit(main())
