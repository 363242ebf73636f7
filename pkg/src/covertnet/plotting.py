"""Convenience SVG rendering of result CSVs.

Plots are generated from the CSV file itself (never from in-memory
results), so the numeric outputs stay independent of matplotlib.
"""

from __future__ import annotations

from pathlib import Path

import numpy as np

from .results import read_csv


def _setup_matplotlib():
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
    plt.rcParams["svg.hashsalt"] = "covertnet"
    return plt


def _series_groups(columns, rows, group_col):
    idx = columns.index(group_col)
    keys = []
    for row in rows:
        if row[idx] not in keys:
            keys.append(row[idx])
    return idx, keys


def csv_to_svg(csv_path, svg_path) -> Path:
    """Render a table produced by this package into an SVG line/box plot."""
    plt = _setup_matplotlib()
    meta, columns, rows = read_csv(csv_path)
    kind = meta.get("plot", "lines")
    fig, ax = plt.subplots(figsize=(7.0, 4.2))

    if kind == "heat":
        xcol, ycol = meta["plot_x"], meta["plot_y"]
        vcol = meta["plot_value"]
        xi, yi, vi = (columns.index(c) for c in (xcol, ycol, vcol))
        xs = sorted({r[xi] for r in rows})
        ys = sorted({r[yi] for r in rows})
        grid = np.full((len(ys), len(xs)), np.nan)
        xpos = {v: i for i, v in enumerate(xs)}
        ypos = {v: i for i, v in enumerate(ys)}
        for r in rows:
            grid[ypos[r[yi]], xpos[r[xi]]] = r[vi]
        im = ax.imshow(grid, origin="lower", aspect="auto",
                       extent=(min(xs), max(xs), min(ys), max(ys)),
                       vmin=max(-80.0, np.nanmin(grid)), cmap="viridis")
        fig.colorbar(im, ax=ax, label=vcol)
        ax.set_xlabel(xcol)
        ax.set_ylabel(ycol)

    elif kind == "box":
        xcol = meta["plot_x"]
        xi = columns.index(xcol)
        gi, groups = _series_groups(columns, rows, meta["plot_group"])
        pi, panels = _series_groups(columns, rows, meta["plot_panel"])
        q1i, q3i, mi = (columns.index(c) for c in ("q1", "q3", "median"))
        styles = ["-", "--", ":", "-."]
        for p_idx, panel in enumerate(panels):
            for g_idx, group in enumerate(groups):
                sel = [r for r in rows if r[gi] == group and r[pi] == panel]
                xs = [r[xi] for r in sel]
                ax.fill_between(xs, [r[q1i] for r in sel], [r[q3i] for r in sel],
                                alpha=0.18, color=f"C{g_idx}")
                ax.plot(xs, [r[mi] for r in sel], styles[p_idx % len(styles)],
                        color=f"C{g_idx}",
                        label=f"{group} ({meta['plot_panel']}={panel:g})")
        ax.set_xlabel(xcol)
        ax.set_ylabel("statistic quartiles")
        ax.legend(fontsize=7)

    else:  # lines
        xcol = meta["plot_x"]
        xi = columns.index(xcol)
        ycols = meta["plot_y"].split(";")
        group = meta.get("plot_group")
        if group:
            gi, groups = _series_groups(columns, rows, group)
            yi = columns.index(ycols[0])
            for g_idx, gval in enumerate(groups):
                sel = [r for r in rows if r[gi] == gval]
                label = f"{group}={gval:g}" if isinstance(gval, float) else str(gval)
                ax.plot([r[xi] for r in sel], [r[yi] for r in sel],
                        color=f"C{g_idx}", label=label)
            ax.set_ylabel(ycols[0])
        else:
            for y in ycols:
                yi = columns.index(y)
                ax.plot([r[xi] for r in rows], [r[yi] for r in rows], label=y)
            ax.set_ylabel("value")
        ax.set_xlabel(xcol)
        ax.legend(fontsize=7)

    title = meta.get("description", "")
    ax.set_title(title, fontsize=9)
    fig.tight_layout()
    svg_path = Path(svg_path)
    svg_path.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(svg_path, format="svg", metadata={"Date": None})
    plt.close(fig)
    return svg_path
