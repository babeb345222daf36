"""Delimiter-free 48x576 mesh pattern: construction and 4x4 decoding.

The pattern interleaves four 2x2 lattices on a cell-parity grid (1-based
pattern coordinates):

* odd row, odd col: the alignment marker [[1,0],[0,0]] tiled every 4x4
  block, so every 4x4 window contains exactly one translate of it and
  that translate reveals the window's offset (m, n) inside the block;
* odd row, even col: the twelves digit of the x block index;
* even row, even col: the ones digit of the x block index;
* even row, odd col: the row digit (the y block index).

Digits 1..12 are drawn from ``MeshTables.base``, twelve 2x2 arrays none
of which has exactly one 1 (that exclusion is what keeps marker
detection unambiguous).  The x digits of block column j are laid out
row-major: j = 12*(hi-1) + (lo-1).  The row digit of block row b is
laid out *transposed*, using table entry ((b+1) mod 12) + 1.

Windows that straddle two block columns see the right column of one
digit quad next to the left column of the following block's quad;
``MeshTables.spliced`` tabulates those combinations (with wraparound),
and the analogous row-straddling combinations of the transposed row
digits are the transposed spliced quads.  All lookups are therefore
four table probes after flip/swap normalisation; no exhaustive search
is needed.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .bitgrid import BitGrid
from .errors import AmbiguousWindowError, NotMeshWindowError

__all__ = [
    "MeshTables",
    "MeshPattern",
    "MeshPosition",
    "TABLES",
    "block_at",
    "build_mesh",
    "decode_mesh",
]

ROWS, COLS = 48, 576
_BANDS = ROWS // 4
_BLOCK_COLS = COLS // 4


def _quad_code(q) -> int:
    return int(q[0, 0]) * 8 + int(q[0, 1]) * 4 + int(q[1, 0]) * 2 + int(q[1, 1])


class MeshTables:
    """The digit tables, the marker, and their reverse-lookup maps."""

    def __init__(self):
        base = [
            [[0, 0], [0, 0]], [[0, 1], [0, 1]], [[0, 0], [1, 1]],
            [[0, 1], [1, 0]], [[0, 1], [1, 1]], [[1, 0], [0, 1]],
            [[1, 0], [1, 0]], [[1, 0], [1, 1]], [[1, 1], [0, 0]],
            [[1, 1], [0, 1]], [[1, 1], [1, 0]], [[1, 1], [1, 1]],
        ]
        self.base = tuple(np.array(q, dtype=np.uint8) for q in base)
        self.spliced = tuple(
            np.column_stack([self.base[i][:, 1], self.base[(i + 1) % 12][:, 0]])
            for i in range(12)
        )
        self.marker = np.array([[1, 0], [0, 0]], dtype=np.uint8)
        self.marker_codes = {8, 4, 2, 1}  # the four translates of the marker
        self.base_index = {_quad_code(q): i + 1 for i, q in enumerate(self.base)}
        self.spliced_index = {_quad_code(q): i + 1 for i, q in enumerate(self.spliced)}
        self._validate()

    def _validate(self):
        if len(self.base_index) != 12 or len(self.spliced_index) != 12:
            raise AssertionError("digit tables must hold 12 distinct arrays")
        for table in (self.base, self.spliced):
            for q in table:
                if int(q.sum()) == 1:
                    raise AssertionError("digit arrays must not have exactly one 1")


TABLES = MeshTables()


def _row_digit_table_index(band: int) -> int:
    # Row-digit slot of band b holds BASE_QUADS[((b+1) mod 12) + 1], transposed.
    return (band + 1) % 12 + 1


def block_at(band: int, block_col: int, tables: MeshTables = TABLES) -> np.ndarray:
    """The 4x4 block at block row ``band`` (0..11), block col (0..143)."""
    if not (0 <= band < _BANDS):
        raise ValueError(f"band {band} outside 0..{_BANDS - 1}")
    if not (0 <= block_col < _BLOCK_COLS):
        raise ValueError(f"block col {block_col} outside 0..{_BLOCK_COLS - 1}")
    hi = block_col // 12 + 1
    lo = block_col % 12 + 1
    blk = np.zeros((4, 4), dtype=np.uint8)
    blk[0, 0] = 1  # marker; its other three cells stay 0
    q_hi, q_lo = tables.base[hi - 1], tables.base[lo - 1]
    q_row = tables.base[_row_digit_table_index(band) - 1].T
    blk[0, 1::2] = q_hi[0]
    blk[2, 1::2] = q_hi[1]
    blk[1, 1::2] = q_lo[0]
    blk[3, 1::2] = q_lo[1]
    blk[1, 0::2] = q_row[0]
    blk[3, 0::2] = q_row[1]
    return blk


@dataclass(frozen=True)
class MeshPattern:
    bits: BitGrid


def build_mesh(tables: MeshTables = TABLES) -> MeshPattern:
    """Assemble the full 48x576 pattern."""
    p = np.zeros((ROWS, COLS), dtype=np.uint8)
    for band in range(_BANDS):
        for j in range(_BLOCK_COLS):
            p[4 * band : 4 * band + 4, 4 * j : 4 * j + 4] = block_at(band, j, tables)
    return MeshPattern(BitGrid(p))


@dataclass(frozen=True)
class MeshPosition:
    """Decode result, both 1-based (x = col, y = row, matching the
    pattern's own coordinate convention) and 0-based (row, col)."""

    x: int
    y: int
    row: int
    col: int
    ones_digit: int
    twelves_digit: int
    row_digit: int
    offset_row: int
    offset_col: int


# Marker translate -> how the window offsets (m, n) in 1..4 follow from
# the translate's strided-quad position (k, l) in {1,2}^2.
def _offsets_from_marker(code: int, k: int, l: int) -> tuple[int, int]:
    m = (4 if k == 2 else 1) if code in (8, 4) else 4 - k
    n = (4 if l == 2 else 1) if code in (8, 2) else 4 - l
    return m, n


def decode_mesh(win: BitGrid, tables: MeshTables = TABLES) -> MeshPosition:
    """Decode any 4x4 window of the mesh pattern to its 1-based origin."""
    if win.shape != (4, 4):
        raise ValueError(f"window must be 4x4, got {win.shape}")
    a = win.array

    def quad(r, s):  # strided 2x2 at 1-based (r, s)
        return a[r - 1 :: 2, s - 1 :: 2]

    markers = []
    for k in (1, 2):
        for l in (1, 2):
            code = _quad_code(quad(k, l))
            if code in tables.marker_codes:
                markers.append(_offsets_from_marker(code, k, l))
    if not markers:
        raise NotMeshWindowError(
            "no translate of the alignment marker found", stage="marker search"
        )
    if len(markers) > 1:
        raise AmbiguousWindowError(
            f"{len(markers)} marker candidates in one window", markers
        )
    m, n = markers[0]

    # Least 1-based r with m-1+r even/odd, and the column analogues.
    r_even = 2 if m % 2 else 1
    r_odd = 1 if m % 2 else 2
    s_even = 2 if n % 2 else 1
    s_odd = 1 if n % 2 else 2

    # Ones digit of the x block index (even/even cells).
    q = quad(r_even, s_even)
    if m in (3, 4):
        q = q[::-1, :]
    if n in (1, 2):
        lo = tables.base_index.get(_quad_code(q))
        carry = False
    else:
        lo = tables.spliced_index.get(_quad_code(q))
        carry = lo == 12
    if lo is None:
        raise NotMeshWindowError("ones-digit lookup failed", stage="x ones digit")

    # Twelves digit (odd/even cells).  A straddling window shows the next
    # block column's quad half; when the ones digit wrapped (carry), the
    # twelves digits differ too and the spliced table applies.
    q = quad(r_odd, s_even)
    if m in (2, 3):
        q = q[::-1, :]
    if n in (1, 2):
        hi = tables.base_index.get(_quad_code(q))
    elif not carry:
        hi = tables.base_index.get(_quad_code(q[:, ::-1]))
    else:
        hi = tables.spliced_index.get(_quad_code(q))
    if hi is None:
        raise NotMeshWindowError("twelves-digit lookup failed", stage="x twelves digit")

    # Row digit (even/odd cells), stored transposed with the +2 table
    # shift; row-straddling windows read the transposed spliced table.
    q = quad(r_even, s_odd)
    if n in (2, 3):
        q = q[:, ::-1]
    code = _quad_code(q.T)
    if m in (1, 2):
        t = tables.base_index.get(code)
    else:
        t = tables.spliced_index.get(code)
    if t is None:
        raise NotMeshWindowError("row-digit lookup failed", stage="row digit")
    band = (t - 2) % 12

    x = ((hi - 1) * 12 + (lo - 1)) * 4 + n
    y = 4 * band + m
    if x + 3 > COLS or y + 3 > ROWS:
        raise NotMeshWindowError(
            f"decoded origin ({x}, {y}) leaves no room for a 4x4 window",
            stage="bounds",
        )
    return MeshPosition(
        x=x, y=y, row=y - 1, col=x - 1,
        ones_digit=lo, twelves_digit=hi, row_digit=band + 1,
        offset_row=m, offset_col=n,
    )
