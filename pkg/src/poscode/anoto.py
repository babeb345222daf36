"""Anoto-style position pattern built from column phases of one cyclic
main sequence.

Layout conventions:

* The x bit plane writes the 63-symbol main sequence down every column;
  column c (global index) is cyclically shifted by a phase p(c), so the
  bit at global (row y, col x) is ``main[(y + p(x)) % 63]``.
* Phases start from a per-pattern constant, the *section*, and step by
  the difference sequence: p(0) = section and p(c) - p(c+1) = d(c)
  (mod 63), where every d(c) lies in {5..58}.
* d(c) packs four digit streams through the mixed-radix bijection; the
  streams are periodic with the coprime periods 236, 233, 31 and 241, so
  five consecutive differences pin the column index below
  L = 236*233*31*241 = 410815348 by Chinese remaindering.
* The y plane is the transposed twin: the same construction along rows,
  with its own section; the y bit at (y, x) is ``main[(x + p_y(y)) % 63]``.

A 6x6 cut of both planes therefore decodes to the absolute (x, y) of its
top-left dot plus the two sections.  Dots are rendered as offsets from a
raster: each raster cell's single dark pixel is displaced a quarter cell
up/right/down/left, encoding (xbit, ybit) per ``dot_map``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from pathlib import Path

import numpy as np

from .bitgrid import BitGrid, read_pbm, write_pbm
from .errors import (
    CorruptedWindowError,
    InvalidDifferenceError,
    WindowNotFoundError,
)
from .sequences import (
    CrtBasis,
    CyclicSequence,
    crt_combine,
    gen_quasi_debruijn,
    parse_fixture,
    phi,
    phi_inv,
)

__all__ = [
    "MAIN_NUMBER_SEQUENCE",
    "SECONDARY_SHAPES",
    "SequenceSystem",
    "default_system",
    "regenerate_secondary",
    "AnotoPatch",
    "AnotoPosition",
    "DotGrid",
    "difference_at",
    "prefix_diff_sum",
    "column_phase",
    "generate_patch",
    "decode_window",
    "dot_map",
    "dot_unmap",
    "dots_for_patch",
    "render_dots",
    "read_dots",
    "dot_grid_text",
    "write_patch",
    "read_patch",
]

# The published 63-symbol order-6 main number sequence.
MAIN_NUMBER_SEQUENCE = (
    0, 0, 0, 0, 0, 0, 1, 0, 0, 1, 1, 1, 1, 1, 0, 1, 0, 0, 1, 0, 0,
    0, 0, 1, 1, 1, 0, 1, 1, 1, 0, 0, 1, 0, 1, 0, 1, 0, 0, 0, 1, 0,
    1, 1, 0, 1, 1, 0, 0, 1, 1, 0, 1, 0, 1, 1, 1, 1, 0, 0, 0, 1, 1,
)

# (alphabet, order, length) of the four secondary digit streams, in the
# digit order of the mixed-radix bijection.
SECONDARY_SHAPES = ((3, 5, 236), (3, 5, 233), (2, 5, 31), (3, 5, 241))

_DIGIT_WEIGHTS = (1, 3, 9, 18)
_MAIN_LEN = 63
_DIFF_LO, _DIFF_HI = 5, 58

_FIXTURE_NAMES = tuple(f"secondary_{k}_{n}_{m}.txt" for k, n, m in SECONDARY_SHAPES)


def regenerate_secondary() -> tuple[CyclicSequence, ...]:
    """Generate the four secondary sequences from scratch (deterministic)."""
    return tuple(gen_quasi_debruijn(k, n, m) for k, n, m in SECONDARY_SHAPES)


class SequenceSystem:
    """The per-axis sequence bundle: main sequence, four secondary
    sequences, CRT basis, and prefix-sum tables for O(1) phase sums."""

    def __init__(self, main: CyclicSequence, secondary):
        secondary = tuple(secondary)
        if (main.alphabet_size, main.order, len(main)) != (2, 6, _MAIN_LEN):
            raise ValueError("main sequence must be binary, order 6, length 63")
        if tuple((s.alphabet_size, s.order, len(s)) for s in secondary) != SECONDARY_SHAPES:
            raise ValueError(f"secondary sequences must have shapes {SECONDARY_SHAPES}")
        self.main = main
        self.secondary = secondary
        self.basis = CrtBasis.from_moduli([len(s) for s in secondary])
        self.period_sums = tuple(
            tuple(_prefix_sums(s.symbols)) for s in secondary
        )

    @property
    def period(self) -> int:
        """Combined period L of the difference sequence."""
        return self.basis.product


def _prefix_sums(symbols):
    sums = [0]
    for s in symbols:
        sums.append(sums[-1] + s)
    return sums


@lru_cache(maxsize=1)
def default_system() -> SequenceSystem:
    """The packaged system: published main sequence + frozen fixtures."""
    main = CyclicSequence(2, 6, MAIN_NUMBER_SEQUENCE)
    data = resources.files(__package__) / "data"
    secondary = [
        parse_fixture((data / name).read_text(encoding="ascii"))
        for name in _FIXTURE_NAMES
    ]
    return SequenceSystem(main, secondary)


def difference_at(sys: SequenceSystem, i: int) -> int:
    """The difference-sequence value at index i (periodic with period L)."""
    i %= sys.period
    digits = tuple(s.symbols[i % len(s)] for s in sys.secondary)
    return phi_inv(digits)


def prefix_diff_sum(sys: SequenceSystem, c: int) -> int:
    """Sum of the first c difference values, mod 63, in O(1).

    Splits through the mixed-radix expansion: each difference is
    5 + sum(weight_j * digit_j), so the sum is 5*c plus the weighted
    digit-stream sums, each of which is whole periods plus a prefix.
    """
    if c < 0:
        raise ValueError("prefix length must be non-negative")
    total = _DIFF_LO * c
    for seq, sums, weight in zip(sys.secondary, sys.period_sums, _DIGIT_WEIGHTS):
        q, r = divmod(c, len(seq))
        total += weight * (q * sums[-1] + sums[r])
    return total % _MAIN_LEN


def column_phase(sys: SequenceSystem, section: int, c: int) -> int:
    """Phase of column c: p(0) = section, p(c) - p(c+1) = d(c) (mod 63)."""
    if not (0 <= section < _MAIN_LEN):
        raise ValueError(f"section {section} outside 0..62")
    return (section - prefix_diff_sum(sys, c)) % _MAIN_LEN


@dataclass(frozen=True)
class AnotoPatch:
    """A rectangular region of the pattern: both bit planes plus where
    and under which sections it was generated."""

    section_x: int
    section_y: int
    origin_x: int
    origin_y: int
    width: int
    height: int
    xbits: BitGrid
    ybits: BitGrid


@dataclass(frozen=True)
class AnotoPosition:
    x: int
    y: int
    section_x: int
    section_y: int


def generate_patch(
    sys: SequenceSystem,
    section_x: int,
    section_y: int,
    x0: int,
    y0: int,
    w: int,
    h: int,
) -> AnotoPatch:
    """Generate the w x h patch whose top-left dot is global (x0, y0)."""
    if w < 1 or h < 1:
        raise ValueError("patch must be at least 1x1")
    if x0 < 0 or x0 + w > sys.period:
        raise ValueError(f"columns {x0}..{x0 + w - 1} outside 0..{sys.period - 1}")
    if y0 < 0 or y0 + h > sys.period:
        raise ValueError(f"rows {y0}..{y0 + h - 1} outside 0..{sys.period - 1}")

    main = np.array(sys.main.symbols, dtype=np.uint8)
    col_phases = np.array(
        [column_phase(sys, section_x, x0 + c) for c in range(w)], dtype=np.int64
    )
    row_phases = np.array(
        [column_phase(sys, section_y, y0 + r) for r in range(h)], dtype=np.int64
    )
    rows = np.arange(h, dtype=np.int64)[:, None]
    cols = np.arange(w, dtype=np.int64)[None, :]
    xbits = main[(y0 + rows + col_phases[None, :]) % _MAIN_LEN]
    ybits = main[(x0 + cols + row_phases[:, None]) % _MAIN_LEN]
    return AnotoPatch(
        section_x, section_y, x0, y0, w, h, BitGrid(xbits), BitGrid(ybits)
    )


def _locate_words(sys, words, stage):
    indices = []
    for k, word in enumerate(words):
        try:
            indices.append(sys.main.locate(word))
        except WindowNotFoundError:
            raise CorruptedWindowError(
                f"{stage} {k} is not a main-sequence window", stage=stage
            ) from None
    return indices


def _differences(indices, stage):
    diffs = []
    for k in range(len(indices) - 1):
        d = (indices[k] - indices[k + 1]) % _MAIN_LEN
        if not (_DIFF_LO <= d <= _DIFF_HI):
            raise InvalidDifferenceError(
                f"{stage}: difference {d} at offset {k} outside "
                f"{{{_DIFF_LO}..{_DIFF_HI}}}",
                stage=stage,
            )
        diffs.append(d)
    return diffs


def _place(sys, diffs, stage) -> int:
    residues = []
    for j, seq in enumerate(sys.secondary):
        stream = tuple(phi(d)[j] for d in diffs)
        try:
            residues.append(seq.locate(stream))
        except WindowNotFoundError:
            raise CorruptedWindowError(
                f"{stage}: digit stream {j} not in its secondary sequence",
                stage=f"{stage} secondary {j}",
            ) from None
    return crt_combine(residues, sys.basis)


def decode_window(sys: SequenceSystem, xwin: BitGrid, ywin: BitGrid) -> AnotoPosition:
    """Decode aligned 6x6 cuts of the two bit planes.

    Returns the global (x, y) of the window's top-left dot and both
    sections.  The places are recovered first (columns of the x plane,
    rows of the y plane); each section then follows from the other axis's
    coordinate and the recovered phase.
    """
    if xwin.shape != (6, 6) or ywin.shape != (6, 6):
        raise ValueError("decode_window needs two 6x6 windows")
    xa, ya = xwin.array, ywin.array

    col_words = [tuple(int(b) for b in xa[:, k]) for k in range(6)]
    row_words = [tuple(int(b) for b in ya[r, :]) for r in range(6)]
    col_idx = _locate_words(sys, col_words, "x-plane column")
    row_idx = _locate_words(sys, row_words, "y-plane row")

    x = _place(sys, _differences(col_idx, "x plane"), "x plane")
    y = _place(sys, _differences(row_idx, "y plane"), "y plane")

    # col_idx[0] = (y + p_x(x)) % 63 with p_x(x) = section_x - prefix(x).
    section_x = (col_idx[0] - y + prefix_diff_sum(sys, x)) % _MAIN_LEN
    section_y = (row_idx[0] - x + prefix_diff_sum(sys, y)) % _MAIN_LEN
    return AnotoPosition(x, y, section_x, section_y)


# ---------------------------------------------------------------------------
# Dot-offset representation.

_DOT_DIRECTIONS = {(0, 0): "U", (1, 0): "R", (0, 1): "L", (1, 1): "D"}
_DOT_BITS = {d: bits for bits, d in _DOT_DIRECTIONS.items()}
_DOT_STEP = {"U": (-1, 0), "R": (0, 1), "D": (1, 0), "L": (0, -1)}


def dot_map(xbit: int, ybit: int) -> str:
    """Direction letter for a bit pair: (0,0) U, (1,0) R, (0,1) L, (1,1) D."""
    try:
        return _DOT_DIRECTIONS[(xbit, ybit)]
    except KeyError:
        raise ValueError(f"bits must be 0 or 1, got {(xbit, ybit)}") from None


def dot_unmap(direction: str) -> tuple[int, int]:
    """Inverse of :func:`dot_map`."""
    try:
        return _DOT_BITS[direction]
    except KeyError:
        raise ValueError(f"unknown direction {direction!r}") from None


@dataclass(frozen=True)
class DotGrid:
    """Dot directions of a patch, one row string of U/R/D/L per raster row."""

    width: int
    height: int
    rows: tuple[str, ...]


def dots_for_patch(patch: AnotoPatch) -> DotGrid:
    xa, ya = patch.xbits.array, patch.ybits.array
    rows = tuple(
        "".join(dot_map(int(xa[r, c]), int(ya[r, c])) for c in range(patch.width))
        for r in range(patch.height)
    )
    return DotGrid(patch.width, patch.height, rows)


def dot_grid_text(dots: DotGrid) -> str:
    return "\n".join(dots.rows) + "\n"


def render_dots(patch: AnotoPatch, scale: int) -> BitGrid:
    """Render the patch as a bitmap, one scale x scale cell per dot.

    Each cell holds a single dark pixel displaced scale//4 pixels from the
    cell centre in the dot's direction; scale < 4 would make the offset
    vanish.
    """
    if scale < 4:
        raise ValueError("scale must be at least 4")
    dots = dots_for_patch(patch)
    img = np.zeros((patch.height * scale, patch.width * scale), dtype=np.uint8)
    centre = scale // 2
    off = scale // 4
    for r, row in enumerate(dots.rows):
        for c, d in enumerate(row):
            sr, sc = _DOT_STEP[d]
            img[r * scale + centre + sr * off, c * scale + centre + sc * off] = 1
    return BitGrid(img)


def read_dots(img: BitGrid, scale: int) -> DotGrid:
    """Recover a DotGrid from a rendered bitmap (nearest-direction rule)."""
    if scale < 4:
        raise ValueError("scale must be at least 4")
    if img.rows % scale or img.cols % scale:
        raise ValueError("bitmap dimensions are not a multiple of the scale")
    height, width = img.rows // scale, img.cols // scale
    a = img.array
    centre = scale // 2
    rows = []
    for r in range(height):
        out = []
        for c in range(width):
            cell = a[r * scale : (r + 1) * scale, c * scale : (c + 1) * scale]
            ys, xs = np.nonzero(cell)
            if len(ys) != 1:
                raise ValueError(f"cell ({r}, {c}) has {len(ys)} dark pixels, not 1")
            dr, dc = int(ys[0]) - centre, int(xs[0]) - centre
            if abs(dr) > abs(dc):
                out.append("U" if dr < 0 else "D")
            elif abs(dc) > abs(dr):
                out.append("L" if dc < 0 else "R")
            else:
                raise ValueError(f"cell ({r}, {c}) dot is not offset on an axis")
        rows.append("".join(out))
    return DotGrid(width, height, tuple(rows))


# ---------------------------------------------------------------------------
# Patch files: two PBM planes plus a one-line sidecar.


def write_patch(patch: AnotoPatch, stem) -> tuple[Path, Path, Path]:
    """Write ``<stem>.x.pbm``, ``<stem>.y.pbm`` and the ``<stem>.txt``
    sidecar holding "section_x section_y x0 y0 w h"."""
    stem = Path(stem)
    xpath = stem.with_name(stem.name + ".x.pbm")
    ypath = stem.with_name(stem.name + ".y.pbm")
    spath = stem.with_name(stem.name + ".txt")
    write_pbm(patch.xbits, xpath)
    write_pbm(patch.ybits, ypath)
    spath.write_text(
        f"{patch.section_x} {patch.section_y} {patch.origin_x} "
        f"{patch.origin_y} {patch.width} {patch.height}\n",
        encoding="ascii",
    )
    return xpath, ypath, spath


def read_patch(stem) -> AnotoPatch:
    stem = Path(stem)
    xbits = read_pbm(stem.with_name(stem.name + ".x.pbm"))
    ybits = read_pbm(stem.with_name(stem.name + ".y.pbm"))
    fields = stem.with_name(stem.name + ".txt").read_text(encoding="ascii").split()
    if len(fields) != 6:
        raise ValueError("sidecar must hold 'section_x section_y x0 y0 w h'")
    sx, sy, x0, y0, w, h = (int(f) for f in fields)
    if xbits.shape != (h, w) or ybits.shape != (h, w):
        raise ValueError("plane dimensions disagree with the sidecar")
    return AnotoPatch(sx, sy, x0, y0, w, h, xbits, ybits)
