"""Rasnik B3 coding blocks, pattern tiling and window decoding.

A B3 block is 11 rows x 9 cols.  Its first column (rows 0..9, top to
bottom) holds the ten y bits b9..b0; its bottom row (cols 1..8, left to
right) holds the eight x bits b0..b7; the startbit at (10, 0) is always
1 and anchors the block lattice.  All other cells are 0.  Encodable
coordinates: 0 <= x <= 255, 0 <= y <= 1023.

Tiled patterns place block (bx, by) so that x grows rightwards and y
grows downwards, then XOR one global checkerboard over the pixels (parity
anchored at global pixel (0, 0), i.e. cell (i, j) flips when (i+j) is
odd), which adjacent patches agree on.

Decoding an arbitrary 11x9 pixel cut searches all 11*9 offset hypotheses
times 2 checkerboard parities; a hypothesis survives when the startbit is
present, every structural cell is 0, and the coordinate bits of the up to
four visible block fragments are consistent (horizontal neighbours differ
by 1 in x, vertical by 1 in y).  Windows cut from regions whose visible
coordinate bits are almost all zero can be globally ambiguous; the
decoder then reports every candidate instead of guessing.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .bitgrid import BitGrid
from .errors import AmbiguousWindowError, NotRasnikWindowError

__all__ = [
    "BLOCK_ROWS",
    "BLOCK_COLS",
    "B3Block",
    "RasnikPattern",
    "RasnikPosition",
    "encode_b3",
    "tile_pattern",
    "decode_window",
]

BLOCK_ROWS = 11
BLOCK_COLS = 9
_X_BITS = 8
_Y_BITS = 10
_N_OFFSETS = BLOCK_ROWS * BLOCK_COLS


@dataclass(frozen=True)
class B3Block:
    """One coding block before the checkerboard overlay."""

    x: int
    y: int
    bits: BitGrid


@dataclass(frozen=True)
class RasnikPattern:
    """A tiled region of blocks with the checkerboard overlay applied."""

    origin_x: int
    origin_y: int
    blocks_wide: int
    blocks_high: int
    bits: BitGrid


@dataclass(frozen=True)
class RasnikPosition:
    """Decode result: the block containing the window's top-left pixel,
    the offset of that pixel inside the block, and its global pixel
    coordinates (pixel_row = 11*block_y + offset_row, likewise cols)."""

    block_x: int
    block_y: int
    offset_row: int
    offset_col: int
    parity: int
    pixel_row: int
    pixel_col: int


def _block_array(x: int, y: int) -> np.ndarray:
    b = np.zeros((BLOCK_ROWS, BLOCK_COLS), dtype=np.uint8)
    b[10, 0] = 1
    for i in range(_X_BITS):
        b[10, 1 + i] = (x >> i) & 1
    for r in range(_Y_BITS):
        b[r, 0] = (y >> (9 - r)) & 1
    return b


def encode_b3(x: int, y: int) -> B3Block:
    if not (0 <= x <= 255):
        raise ValueError(f"x {x} outside 0..255")
    if not (0 <= y <= 1023):
        raise ValueError(f"y {y} outside 0..1023")
    return B3Block(x, y, BitGrid(_block_array(x, y)))


def tile_pattern(x0: int, y0: int, blocks_wide: int, blocks_high: int) -> RasnikPattern:
    """Tile blocks (x0.., y0..) and apply the global checkerboard."""
    if blocks_wide < 1 or blocks_high < 1:
        raise ValueError("pattern must be at least 1x1 blocks")
    if x0 < 0 or x0 + blocks_wide > 256:
        raise ValueError(f"block columns {x0}..{x0 + blocks_wide - 1} outside 0..255")
    if y0 < 0 or y0 + blocks_high > 1024:
        raise ValueError(f"block rows {y0}..{y0 + blocks_high - 1} outside 0..1023")
    plain = np.zeros((BLOCK_ROWS * blocks_high, BLOCK_COLS * blocks_wide), dtype=np.uint8)
    for by in range(blocks_high):
        for bx in range(blocks_wide):
            plain[
                BLOCK_ROWS * by : BLOCK_ROWS * (by + 1),
                BLOCK_COLS * bx : BLOCK_COLS * (bx + 1),
            ] = _block_array(x0 + bx, y0 + by)
    gi = (BLOCK_ROWS * y0 + np.arange(plain.shape[0]))[:, None]
    gj = (BLOCK_COLS * x0 + np.arange(plain.shape[1]))[None, :]
    overlay = ((gi + gj) % 2).astype(np.uint8)
    return RasnikPattern(x0, y0, blocks_wide, blocks_high, BitGrid(plain ^ overlay))


def _build_hypothesis_tables():
    """Per-offset structural masks and startbit cells for the decoder.

    For offset (dr, dc) the window pixel (i, j) has in-block coordinates
    ((dr+i) % 11, (dc+j) % 9); cells off the first column and bottom row
    must be 0, and the single cell at in-block (10, 0) is the startbit.
    """
    masks = np.zeros((_N_OFFSETS, _N_OFFSETS), dtype=np.uint8)
    start = np.zeros(_N_OFFSETS, dtype=np.int64)
    for dr in range(BLOCK_ROWS):
        for dc in range(BLOCK_COLS):
            h = dr * BLOCK_COLS + dc
            start[h] = ((10 - dr) % BLOCK_ROWS) * BLOCK_COLS + ((9 - dc) % BLOCK_COLS)
            for i in range(BLOCK_ROWS):
                for j in range(BLOCK_COLS):
                    if (dr + i) % BLOCK_ROWS != 10 and (dc + j) % BLOCK_COLS != 0:
                        masks[h, i * BLOCK_COLS + j] = 1
    checker = (np.add.outer(np.arange(BLOCK_ROWS), np.arange(BLOCK_COLS)) % 2).astype(
        np.uint8
    )
    return masks, start, checker


_MASKS, _START, _CHECKER = _build_hypothesis_tables()


def _solve_x(p: np.ndarray, dr: int, dc: int):
    """x of the left block from the visible bottom-row bits, or None.

    With column offset dc >= 1 the window shows x's bits b(dc-1)..b7 from
    the left block and (x+1)'s bits b0..b(dc-2) from the right one; the
    unknown low bits of x are forced by the carry structure of x+1.
    """
    row = (10 - dr) % BLOCK_ROWS
    high = 0
    low = 0
    for c in range(1, 9):
        j = (c - dc) % BLOCK_COLS
        bit = int(p[row, j])
        if c >= dc:
            high |= bit << (c - 1)
        else:
            low |= bit << (c - 1)
    if dc == 0:
        return high
    k = dc - 1
    if k == 0:
        x = high
    else:
        unknown = low - 1 if low >= 1 else (1 << k) - 1
        x = high | unknown
    return x if x + 1 <= 255 else None


def _solve_y(p: np.ndarray, dr: int, dc: int):
    """y of the top block band from the visible first-column bits."""
    col = (9 - dc) % BLOCK_COLS
    low = 0
    high = 0
    for r in range(_Y_BITS):
        i = (r - dr) % BLOCK_ROWS
        bit = int(p[i, col])
        if r >= dr:
            low |= bit << (9 - r)
        else:
            high |= bit << (9 - r)
    if dr == 0:
        return low
    width = _Y_BITS - dr
    low &= (1 << width) - 1
    high >>= width
    if low < (1 << width) - 1:
        y = (high << width) | low
    elif high == 0:
        return None  # would need y + 1 = 1024
    else:
        y = ((high - 1) << width) | low
    return y if y + 1 <= 1023 else None


def decode_window(win: BitGrid) -> RasnikPosition:
    """Decode an arbitrary-alignment 11x9 pixel window of a pattern."""
    if win.shape != (BLOCK_ROWS, BLOCK_COLS):
        raise ValueError(f"window must be {BLOCK_ROWS}x{BLOCK_COLS}, got {win.shape}")
    survivors = []
    for parity in (0, 1):
        p = win.array ^ _CHECKER ^ np.uint8(parity)
        flat = p.reshape(_N_OFFSETS)
        violations = _MASKS @ flat.astype(np.int64)
        for h in np.nonzero((violations == 0) & (flat[_START] == 1))[0]:
            dr, dc = divmod(int(h), BLOCK_COLS)
            x = _solve_x(p, dr, dc)
            if x is None:
                continue
            y = _solve_y(p, dr, dc)
            if y is None:
                continue
            survivors.append(
                RasnikPosition(
                    x, y, dr, dc, parity,
                    BLOCK_ROWS * y + dr, BLOCK_COLS * x + dc,
                )
            )
    if not survivors:
        raise NotRasnikWindowError(
            "no offset/parity hypothesis fits the window", stage="hypothesis search"
        )
    if len(survivors) > 1:
        survivors.sort(key=lambda p: (p.offset_row, p.offset_col, p.parity))
        raise AmbiguousWindowError(
            f"{len(survivors)} hypotheses fit the window", survivors
        )
    return survivors[0]
