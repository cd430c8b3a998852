"""SVG rendering of root-locus branches with matplotlib."""

from __future__ import annotations

import io
import math
from typing import Dict, List, Optional, Sequence, Tuple

import matplotlib

matplotlib.use("Agg")
matplotlib.rcParams["svg.hashsalt"] = "pjroot"
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from .solver import patch_image  # noqa: E402

AXIS_LABELS = {"xy": ("x = Re s", "y = Im s"), "zy": ("z", "y"), "xz": ("x", "z")}

Polyline = List[Tuple[float, float]]


def chart_polylines(branches, patch: str) -> List[Polyline]:
    """Branch polylines in a chart, split where a branch leaves through infinity."""
    out = []
    for b in branches:
        cur: Polyline = []
        for _, x, y in b.samples:
            img = patch_image(x, y, patch)
            if img is None:
                if len(cur) > 1:
                    out.append(cur)
                cur = []
                continue
            if cur and _jump(cur[-1], img):
                if len(cur) > 1:
                    out.append(cur)
                cur = []
            cur.append(img)
        if cur:
            out.append(cur)
    return out


def _jump(a, b, limit: float = 1e3) -> bool:
    # consecutive samples on opposite sides of a pole of the chart map
    return abs(a[0] - b[0]) + abs(a[1] - b[1]) > limit


def _frame(points: np.ndarray, markers: np.ndarray):
    allp = points if markers.size == 0 else np.vstack([points.reshape(-1, 2), markers])
    if allp.size == 0:
        return (-1.0, 1.0), (-1.0, 1.0)
    lo = np.percentile(allp, 2, axis=0)
    hi = np.percentile(allp, 98, axis=0)
    # fence off the tail of samples crowding towards a chart singularity
    q1, q3 = np.percentile(allp, [25, 75], axis=0)
    iqr = np.maximum(q3 - q1, 1.0)
    lo = np.maximum(lo, q1 - 4 * iqr)
    hi = np.minimum(hi, q3 + 4 * iqr)
    if markers.size:
        lo = np.minimum(lo, markers.min(axis=0))
        hi = np.maximum(hi, markers.max(axis=0))
    span = np.maximum(hi - lo, 1.0)
    pad = 0.1 * span
    mid = (lo + hi) / 2
    half = span / 2 + pad
    return (mid[0] - half[0], mid[0] + half[0]), (mid[1] - half[1], mid[1] + half[1])


def _intercept(points: np.ndarray, slope: Optional[float]) -> float:
    """Offset of an asymptote with the given slope, fitted to the far-out points."""
    if points.size == 0:
        return 0.0
    r = np.hypot(points[:, 0], points[:, 1])
    far = points[r >= np.percentile(r, 80)]
    if slope is None:
        angle = math.pi / 2
    else:
        angle = math.atan(slope)
    theta = np.arctan2(far[:, 1], far[:, 0])
    diff = np.abs(((theta - angle) + math.pi / 2) % math.pi - math.pi / 2)
    near = far[diff < math.radians(15)]
    if near.size == 0:
        return 0.0
    if slope is None:
        return float(np.median(near[:, 0]))
    return float(np.median(near[:, 1] - slope * near[:, 0]))


def render_chart(branches, patch: str, asymptotes: Sequence[Optional[float]] = (),
                 initial: Sequence[Tuple[float, float]] = (), terminal: Sequence[Tuple[float, float]] = (),
                 title: str = "") -> str:
    """SVG text of the locus in the chart ``patch`` ('xy', 'zy' or 'xz')."""
    lines = chart_polylines(branches, patch)
    pts = np.array([p for line in lines for p in line], dtype=float).reshape(-1, 2)
    marks = np.array(list(initial) + list(terminal), dtype=float).reshape(-1, 2)
    (x0, x1), (y0, y1) = _frame(pts, marks)
    fig, ax = plt.subplots(figsize=(6, 6))
    cmap = plt.get_cmap("tab10")
    for i, line in enumerate(lines):
        arr = np.array(line)
        ax.plot(arr[:, 0], arr[:, 1], color=cmap(i % 10), linewidth=1.2)
    for slope in asymptotes:
        b = _intercept(pts, slope)
        if slope is None:
            ax.plot([b, b], [y0, y1], linestyle="--", color="0.4", linewidth=0.8)
        else:
            xs = np.array([x0, x1])
            ax.plot(xs, slope * xs + b, linestyle="--", color="0.4", linewidth=0.8)
    if len(initial):
        arr = np.array(initial, dtype=float)
        ax.plot(arr[:, 0], arr[:, 1], "x", color="k", markersize=8, label="k = 0")
    if len(terminal):
        arr = np.array(terminal, dtype=float)
        ax.plot(arr[:, 0], arr[:, 1], "o", mfc="none", color="k", markersize=8, label="k = inf")
    ax.axhline(0, color="0.8", linewidth=0.6)
    ax.axvline(0, color="0.8", linewidth=0.6)
    ax.set_xlim(x0, x1)
    ax.set_ylim(y0, y1)
    xl, yl = AXIS_LABELS[patch]
    ax.set_xlabel(xl)
    ax.set_ylabel(yl)
    if title:
        ax.set_title(title)
    if len(initial) or len(terminal):
        ax.legend(loc="best", fontsize=8)
    return _svg(fig)


def render_sphere(branches, initial=(), terminal=(), title: str = "") -> str:
    """Top view (X, Y) of the locus lifted to the upper unit hemisphere."""
    from .geometry import lift_float

    fig, ax = plt.subplots(figsize=(6, 6))
    t = np.linspace(0, 2 * math.pi, 361)
    ax.plot(np.cos(t), np.sin(t), color="0.5", linewidth=0.8)
    cmap = plt.get_cmap("tab10")
    for i, b in enumerate(branches):
        arr = np.array([lift_float(x, y).as_list() for _, x, y in b.samples]).reshape(-1, 3)
        if arr.size:
            ax.plot(arr[:, 0], arr[:, 1], color=cmap(i % 10), linewidth=1.2)
    for pts, style in ((initial, "x"), (terminal, "o")):
        for X, Y, _ in pts:
            ax.plot([X], [Y], style, color="k", mfc="none", markersize=8)
    ax.set_xlim(-1.1, 1.1)
    ax.set_ylim(-1.1, 1.1)
    ax.set_aspect("equal")
    ax.set_xlabel("X")
    ax.set_ylabel("Y")
    if title:
        ax.set_title(title)
    return _svg(fig)


def _svg(fig) -> str:
    buf = io.StringIO()
    fig.savefig(buf, format="svg", metadata={"Date": None})
    plt.close(fig)
    return buf.getvalue()
