"""SVG drawings of instances and solutions.

The layout is a barycentric (Tutte) embedding: the vertices of the outer
face are pinned to a regular polygon and every other vertex sits at the
average of its neighbours. It is for viewing only.
"""

from __future__ import annotations

import math
from pathlib import Path
from xml.sax.saxutils import escape

import numpy as np

from .planar import Embedding, Instance, build_embedding
from .solution import Solution

_COLOURS = ("#d62728", "#1f77b4", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b")


def tutte_layout(emb: Embedding, outer: int) -> np.ndarray:
    """Coordinates in ``[-1, 1]^2``, one row per vertex."""
    g = emb.graph
    n = g.n_vertices
    ring: list[int] = []
    for v in emb.face_vertices(outer):
        if v not in ring:
            ring.append(v)
    if not ring:
        ring = [0]
    pos = np.zeros((n, 2))
    for i, v in enumerate(ring):
        angle = math.pi / 2 - 2 * math.pi * i / len(ring)
        pos[v] = (math.cos(angle), math.sin(angle))
    pinned = set(ring)
    free = [v for v in range(n) if v not in pinned]
    if not free:
        return pos
    index = {v: i for i, v in enumerate(free)}
    lap = np.zeros((len(free), len(free)))
    rhs = np.zeros((len(free), 2))
    for a in g.arcs:
        for u, w in ((a.src, a.dst), (a.dst, a.src)):
            if u not in index:
                continue
            i = index[u]
            lap[i, i] += 1
            if w in index:
                lap[i, index[w]] -= 1
            else:
                rhs[i] += pos[w]
    pos[free] = np.linalg.solve(lap, rhs)
    return pos


def render_svg(inst: Instance, sol: Solution | None = None, size: int = 600) -> str:
    """SVG 1.1 drawing; solution paths are drawn in bold, one colour per pair."""
    g = inst.graph
    emb = build_embedding(g)
    outer = emb.resolve(inst.face_t)
    pos = tutte_layout(emb, outer)
    margin = 30
    pix = (pos + 1) / 2 * (size - 2 * margin) + margin
    pix[:, 1] = size - pix[:, 1]

    bold: dict[int, int] = {}
    if sol is not None and sol.feasible:
        for i, path in enumerate(sol.paths):
            for a in path:
                bold[a] = i

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{size}" height="{size}" '
        f'viewBox="0 0 {size} {size}">',
        '<rect width="100%" height="100%" fill="white"/>',
    ]
    s_face = emb.face_vertices(emb.resolve(inst.face_s))
    if len(s_face) >= 3:
        pts = " ".join(f"{pix[v, 0]:.1f},{pix[v, 1]:.1f}" for v in s_face)
        out.append(f'<polygon points="{pts}" fill="#eeeeee" stroke="none"/>')
    for a, arc in enumerate(g.arcs):
        if a in bold:
            continue
        x1, y1 = pix[arc.src]
        x2, y2 = pix[arc.dst]
        out.append(
            f'<line x1="{x1:.1f}" y1="{y1:.1f}" x2="{x2:.1f}" y2="{y2:.1f}" '
            'stroke="#999999" stroke-width="1"/>'
        )
    for a, i in bold.items():
        arc = g.arcs[a]
        x1, y1 = pix[arc.src]
        x2, y2 = pix[arc.dst]
        out.append(
            f'<line x1="{x1:.1f}" y1="{y1:.1f}" x2="{x2:.1f}" y2="{y2:.1f}" '
            f'stroke="{_COLOURS[i % len(_COLOURS)]}" stroke-width="4"/>'
        )
    labels: dict[int, list[str]] = {}
    for i, (s, t) in enumerate(inst.pairs):
        labels.setdefault(s, []).append(f"s{i + 1}")
        labels.setdefault(t, []).append(f"t{i + 1}")
    r = 4 if g.n_vertices <= 400 else 2
    for v in range(g.n_vertices):
        x, y = pix[v]
        fill = "black" if v in labels else "#555555"
        out.append(f'<circle cx="{x:.1f}" cy="{y:.1f}" r="{r}" fill="{fill}"/>')
        if v in labels:
            text = escape(",".join(labels[v]))
            out.append(
                f'<text x="{x + 6:.1f}" y="{y - 6:.1f}" font-family="sans-serif" '
                f'font-size="12">{text}</text>'
            )
    out.append("</svg>")
    return "\n".join(out) + "\n"


def write_svg(inst: Instance, path: str | Path, sol: Solution | None = None) -> None:
    Path(path).write_text(render_svg(inst, sol), encoding="utf-8")
