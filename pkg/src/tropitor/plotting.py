"""Figures for the CLI report path (matplotlib, headless Agg backend)."""

from __future__ import annotations

from collections import defaultdict
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from . import exact  # noqa: E402
from .moduli import CellComplex  # noqa: E402
from .quadform import Polytope  # noqa: E402


def _cell_label(cell) -> str:
    if cell.kind == "curve":
        G = cell.payload
        w = "".join(map(str, G.weights))
        return f"{cell.id}\nw={w} e={G.n_edges}"
    return f"{cell.id}\nn={cell.payload.size}"


def hasse_diagram(X: CellComplex, path: str | Path) -> Path:
    """Cells arranged in rows by dimension, with a segment for every cover."""
    by_dim = defaultdict(list)
    for c in X.cells:
        by_dim[c.dim].append(c)
    pos = {}
    widest = max(len(v) for v in by_dim.values())
    for d, cells in by_dim.items():
        step = widest / (len(cells) + 1)
        for i, c in enumerate(sorted(cells, key=lambda c: c.id)):
            pos[c.id] = ((i + 1) * step, d)
    fig_w = min(40, max(6, widest * 0.9))
    fig_h = max(3, 1.4 * (max(by_dim) + 1))
    fig, ax = plt.subplots(figsize=(fig_w, fig_h))
    for cv in X.covers:
        (x0, y0), (x1, y1) = pos[cv.face], pos[cv.cell]
        ax.plot([x0, x1], [y0, y1], color="0.6", lw=0.7, zorder=1)
    small = len(X.cells) <= 60
    for c in X.cells:
        x, y = pos[c.id]
        ax.scatter([x], [y], s=30, color="tab:blue", zorder=2)
        if small:
            ax.annotate(_cell_label(c), (x, y), textcoords="offset points", xytext=(0, 6),
                        ha="center", fontsize=7)
    ax.set_yticks(sorted(by_dim))
    ax.set_ylabel("cell dimension")
    ax.set_xticks([])
    ax.set_title(f"{X.kind} cells, genus {X.genus}")
    fig.tight_layout()
    out = Path(path)
    fig.savefig(out, dpi=120)
    plt.close(fig)
    return out


def _polygon_order(vertices):
    """Counter-clockwise order of the vertices of a convex polygon (exact angle sort)."""
    cx = sum(v[0] for v in vertices) / len(vertices)
    cy = sum(v[1] for v in vertices) / len(vertices)

    def half(v):
        x, y = v[0] - cx, v[1] - cy
        return 0 if (y > 0 or (y == 0 and x > 0)) else 1

    from functools import cmp_to_key

    def cmp(a, b):
        ha, hb = half(a), half(b)
        if ha != hb:
            return ha - hb
        cross = (a[0] - cx) * (b[1] - cy) - (a[1] - cy) * (b[0] - cx)
        return -1 if cross > 0 else (1 if cross < 0 else 0)

    return sorted(vertices, key=cmp_to_key(cmp))


def _edges_3d(P: Polytope):
    tight = {v: {k for k, (n, b) in enumerate(P.halfspaces) if exact.dot(n, v) == b}
             for v in P.vertices}
    out = []
    vs = list(P.vertices)
    for i, a in enumerate(vs):
        for b in vs[i + 1:]:
            common = tight[a] & tight[b]
            if len(common) >= 2 and exact.rank([P.halfspaces[k][0] for k in common]) == 2:
                out.append((a, b))
    return out


def polytope_plot(polys: dict[str, Polytope], path: str | Path, title: str = "") -> Path:
    """Overlay 2- or 3-dimensional polytopes (one colour each)."""
    dims = {P.dim_ambient for P in polys.values()}
    if len(dims) != 1 or dims.pop() not in (2, 3):
        raise ValueError("only 2- or 3-dimensional polytopes can be drawn")
    three = next(iter(polys.values())).dim_ambient == 3
    fig = plt.figure(figsize=(5, 5))
    ax = fig.add_subplot(projection="3d") if three else fig.add_subplot()
    for k, (name, P) in enumerate(polys.items()):
        colour = f"C{k}"
        if three:
            for a, b in _edges_3d(P):
                ax.plot(*[[float(a[i]), float(b[i])] for i in range(3)], color=colour, lw=1)
            ax.plot([], [], color=colour, label=name)
        else:
            ring = _polygon_order(list(P.vertices))
            xs = [float(v[0]) for v in ring] + [float(ring[0][0])]
            ys = [float(v[1]) for v in ring] + [float(ring[0][1])]
            ax.fill(xs, ys, alpha=0.15, color=colour)
            ax.plot(xs, ys, color=colour, label=name)
    if not three:
        ax.set_aspect("equal")
    ax.legend(fontsize=8)
    ax.set_title(title)
    fig.tight_layout()
    out = Path(path)
    fig.savefig(out, dpi=120)
    plt.close(fig)
    return out
