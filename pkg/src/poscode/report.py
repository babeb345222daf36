"""Report rendering: pattern figures as PNG plus a delimited summary.

The ``report`` CLI subcommand builds a scheme's canonical pattern, runs
the window-uniqueness verifier, spot-checks the decoder on seeded random
windows, and writes the results as a CSV next to one PNG figure per
rendered grid.
"""

from __future__ import annotations

import csv
import random
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from . import anoto, meshcode, rasnik, wavelet  # noqa: E402
from .bitgrid import BitGrid, subgrid, verify_uniqueness  # noqa: E402

__all__ = ["save_pattern_figure", "write_summary_csv", "build_report"]

REPORT_FIELDS = [
    "scheme",
    "grid",
    "rows",
    "cols",
    "window",
    "duplicate_pairs",
    "decode_trials",
    "decode_ok",
]


def save_pattern_figure(grid: BitGrid, path, title: str | None = None) -> Path:
    """Render a bit grid to a PNG (dark = 1), one figure per file."""
    path = Path(path)
    height = max(2.0, min(8.0, grid.rows / 48))
    width = max(2.0, min(12.0, grid.cols / 48))
    fig, ax = plt.subplots(figsize=(width, height))
    ax.imshow(grid.array, cmap="binary", interpolation="nearest")
    if title:
        ax.set_title(title)
    ax.set_xticks([])
    ax.set_yticks([])
    fig.savefig(path, dpi=150, bbox_inches="tight")
    plt.close(fig)
    return path


def write_summary_csv(path, rows: list[dict]) -> Path:
    path = Path(path)
    with open(path, "w", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=REPORT_FIELDS)
        writer.writeheader()
        writer.writerows(rows)
    return path


def _summary_row(scheme, name, grid, win_h, win_w, trials="", ok=""):
    rep = verify_uniqueness(grid, win_h, win_w)
    return {
        "scheme": scheme,
        "grid": name,
        "rows": grid.rows,
        "cols": grid.cols,
        "window": f"{win_h}x{win_w}",
        "duplicate_pairs": rep.duplicate_count,
        "decode_trials": trials,
        "decode_ok": ok,
    }


def build_report(scheme: str, out_dir, seed: int = 0, trials: int = 50) -> dict:
    """Write ``<scheme>_report.csv`` and the pattern figures to out_dir.

    Returns a summary dict with the written paths and row data.
    """
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    rng = random.Random(seed)
    rows = []
    figures = []

    if scheme == "mesh":
        grid = meshcode.build_mesh().bits
        ok = 0
        for _ in range(trials):
            r = rng.randrange(grid.rows - 3)
            c = rng.randrange(grid.cols - 3)
            pos = meshcode.decode_mesh(subgrid(grid, r, c, 4, 4))
            ok += (pos.row, pos.col) == (r, c)
        rows.append(_summary_row(scheme, "pattern", grid, 4, 4, trials, ok))
        figures.append(save_pattern_figure(grid, out_dir / "mesh_pattern.png", "mesh pattern"))

    elif scheme == "wavelet":
        pattern = wavelet.build_pattern()
        grid = pattern.bits
        ok = 0
        for _ in range(trials):
            i, j = rng.randrange(256), rng.randrange(256)
            ok += wavelet.decode_at(pattern, i, j) == (j, i)
        # Sliding 4x4 duplicates are expected: the scheme needs delimiters,
        # only block-aligned windows are unique.
        rows.append(_summary_row(scheme, "pattern", grid, 4, 4, trials, ok))
        figures.append(save_pattern_figure(grid, out_dir / "wavelet_pattern.png", "wavelet pattern"))

    elif scheme == "rasnik":
        x0, y0 = 100, 500
        grid = rasnik.tile_pattern(x0, y0, 16, 16).bits
        ok = 0
        for _ in range(trials):
            r = rng.randrange(grid.rows - 10)
            c = rng.randrange(grid.cols - 8)
            pos = rasnik.decode_window(subgrid(grid, r, c, 11, 9))
            ok += (pos.pixel_row, pos.pixel_col) == (11 * y0 + r, 9 * x0 + c)
        rows.append(_summary_row(scheme, "pattern", grid, 11, 9, trials, ok))
        figures.append(save_pattern_figure(grid, out_dir / "rasnik_pattern.png", "rasnik pattern"))

    elif scheme == "anoto":
        system = anoto.default_system()
        sx, sy, x0, y0 = 7, 11, 1000, 2000
        patch = anoto.generate_patch(system, sx, sy, x0, y0, 63, 63)
        ok = 0
        for _ in range(trials):
            r = rng.randrange(patch.height - 5)
            c = rng.randrange(patch.width - 5)
            pos = anoto.decode_window(
                system,
                subgrid(patch.xbits, r, c, 6, 6),
                subgrid(patch.ybits, r, c, 6, 6),
            )
            ok += (pos.x, pos.y, pos.section_x, pos.section_y) == (x0 + c, y0 + r, sx, sy)
        rows.append(_summary_row(scheme, "xplane", patch.xbits, 6, 6, trials, ok))
        rows.append(_summary_row(scheme, "yplane", patch.ybits, 6, 6))
        figures.append(
            save_pattern_figure(patch.xbits, out_dir / "anoto_xplane.png", "anoto x plane")
        )
        dots = anoto.render_dots(anoto.generate_patch(system, sx, sy, x0, y0, 24, 24), 8)
        figures.append(save_pattern_figure(dots, out_dir / "anoto_dots.png", "anoto dots"))

    else:
        raise ValueError(f"unknown scheme {scheme!r}")

    csv_path = write_summary_csv(out_dir / f"{scheme}_report.csv", rows)
    return {"csv": csv_path, "figures": figures, "rows": rows}
