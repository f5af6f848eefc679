"""Standalone SVG line plot of proportion trajectories.

Fixed styling: 800x480 canvas, steps on the x axis, ``p`` in [0, 1] on the
y axis, one coloured polyline per trajectory and a red horizontal line at
each theoretical limit point.
"""

from __future__ import annotations

from pathlib import Path
from typing import Sequence
from xml.sax.saxutils import escape

from .urn import Trajectory

WIDTH, HEIGHT = 800, 480
MARGIN_L, MARGIN_R, MARGIN_T, MARGIN_B = 60, 20, 30, 45
PALETTE = (
    "#1f77b4", "#ff7f0e", "#2ca02c", "#9467bd", "#8c564b",
    "#e377c2", "#7f7f7f", "#bcbd22", "#17becf", "#393b79",
)


def render_trajectory_svg(
    trajectories: Sequence[Trajectory],
    limit_points: Sequence[float] = (),
    title: str | None = None,
) -> str:
    if not trajectories:
        raise ValueError("need at least one trajectory")
    x_max = max(max(t.max_steps, len(t.p) - 1) for t in trajectories) or 1
    plot_w = WIDTH - MARGIN_L - MARGIN_R
    plot_h = HEIGHT - MARGIN_T - MARGIN_B

    def sx(n):
        return MARGIN_L + plot_w * n / x_max

    def sy(p):
        return MARGIN_T + plot_h * (1.0 - p)

    out = [
        '<?xml version="1.0" encoding="UTF-8" standalone="no"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{WIDTH}" '
        f'height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">',
        f'<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
    ]
    if title:
        out.append(
            f'<text x="{WIDTH / 2:.1f}" y="18" text-anchor="middle" '
            f'font-family="sans-serif" font-size="13">{escape(title)}</text>'
        )
    # axes and ticks
    out.append(
        f'<g id="axes" stroke="black" stroke-width="1" fill="none">'
        f'<line x1="{sx(0):.2f}" y1="{sy(0):.2f}" x2="{sx(x_max):.2f}" y2="{sy(0):.2f}"/>'
        f'<line x1="{sx(0):.2f}" y1="{sy(0):.2f}" x2="{sx(0):.2f}" y2="{sy(1):.2f}"/></g>'
    )
    labels = ['<g id="labels" font-family="sans-serif" font-size="11" fill="black">']
    for k in range(6):
        p = k / 5
        labels.append(
            f'<text x="{MARGIN_L - 6}" y="{sy(p) + 4:.2f}" text-anchor="end">{p:.1f}</text>'
        )
    for k in range(6):
        n = round(x_max * k / 5)
        labels.append(
            f'<text x="{sx(n):.2f}" y="{HEIGHT - MARGIN_B + 16}" text-anchor="middle">{n}</text>'
        )
    labels.append(
        f'<text x="{MARGIN_L + plot_w / 2:.1f}" y="{HEIGHT - 8}" text-anchor="middle">n</text>'
    )
    labels.append(
        f'<text x="16" y="{MARGIN_T + plot_h / 2:.1f}" text-anchor="middle">p</text>'
    )
    labels.append("</g>")
    out.extend(labels)

    out.append('<g id="trajectories" fill="none" stroke-width="0.8">')
    for i, traj in enumerate(trajectories):
        pts = traj.valid_p().tolist()
        coords = " ".join(f"{sx(n):.2f},{sy(p):.2f}" for n, p in enumerate(pts))
        out.append(
            f'<polyline class="trajectory" stroke="{PALETTE[i % len(PALETTE)]}" '
            f'points="{coords}"/>'
        )
    out.append("</g>")

    out.append('<g id="limits" stroke="red" stroke-width="2">')
    for lp in limit_points:
        out.append(
            f'<line class="limit" x1="{sx(0):.2f}" y1="{sy(lp):.2f}" '
            f'x2="{sx(x_max):.2f}" y2="{sy(lp):.2f}"/>'
        )
    out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"


def emit_trajectory_svg(
    trajectories: Sequence[Trajectory],
    limit_points: Sequence[float],
    path,
    title: str | None = None,
) -> Path:
    path = Path(path)
    path.write_text(render_trajectory_svg(trajectories, limit_points, title), encoding="utf-8")
    return path
