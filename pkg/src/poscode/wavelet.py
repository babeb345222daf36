"""Binary-wavelet block code: GF(2) matrix transforms over 4x4 blocks.

Coordinates 0..255 are laid out bitwise in a 4x4 matrix (x in the top two
rows, y in the bottom two, weights 2^0..2^7 left to right then top to
bottom per pair of rows) and disguised by the inverse transform
``inv(T) @ G @ inv(T.T)`` over GF(2).  Reading a block back is
``unlayout(T @ block @ T.T)``.  The full pattern is 256x256 blocks =
1024x1024 bits; block boundaries are not self-delimiting, so decoding
takes block indices as input.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .bitgrid import BitGrid
from .errors import GridBoundsError, SingularMatrixError

__all__ = [
    "TRANSFORM",
    "Gf2Matrix4",
    "WaveletPattern",
    "gf2_mul",
    "gf2_inv",
    "layout",
    "unlayout",
    "encode_block",
    "decode_block",
    "build_pattern",
    "decode_at",
]

# Alias documenting the contract: a 4x4 uint8 array with entries in {0,1}.
Gf2Matrix4 = np.ndarray

TRANSFORM = np.array(
    [
        [1, 0, 1, 1],
        [1, 1, 1, 0],
        [1, 1, 0, 0],
        [0, 0, 1, 1],
    ],
    dtype=np.uint8,
)

_BLOCK = 4
_SIDE = 1024
_COORD_MAX = 255


def _as_gf2(a, name="matrix") -> np.ndarray:
    m = np.asarray(a, dtype=np.uint8)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"{name} must be square, got shape {m.shape}")
    if m.size and m.max() > 1:
        raise ValueError(f"{name} entries must be 0 or 1")
    return m


def _mul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    # Internal product of already-validated {0,1} matrices.
    return (a.astype(np.int64) @ b.astype(np.int64) % 2).astype(np.uint8)


def gf2_mul(a, b) -> np.ndarray:
    """Matrix product with all arithmetic mod 2."""
    return _mul(_as_gf2(a, "left factor"), _as_gf2(b, "right factor"))


def gf2_inv(a) -> np.ndarray:
    """Inverse over GF(2) by Gauss-Jordan elimination."""
    a = _as_gf2(a)
    n = a.shape[0]
    work = np.concatenate([a.copy(), np.eye(n, dtype=np.uint8)], axis=1)
    row = 0
    for col in range(n):
        pivot = None
        for r in range(row, n):
            if work[r, col]:
                pivot = r
                break
        if pivot is None:
            raise SingularMatrixError("matrix is singular over GF(2)")
        if pivot != row:
            work[[row, pivot]] = work[[pivot, row]]
        for r in range(n):
            if r != row and work[r, col]:
                work[r] ^= work[row]
        row += 1
    return work[:, n:].copy()


_T_INV = gf2_inv(TRANSFORM)  # also asserts TRANSFORM is invertible
_TT_INV = gf2_inv(TRANSFORM.T)


def layout(x: int, y: int) -> np.ndarray:
    """Bit-layout matrix: rows 0-1 hold x's bits b0..b7, rows 2-3 y's."""
    if not (0 <= x <= _COORD_MAX):
        raise ValueError(f"x {x} outside 0..{_COORD_MAX}")
    if not (0 <= y <= _COORD_MAX):
        raise ValueError(f"y {y} outside 0..{_COORD_MAX}")
    g = np.zeros((_BLOCK, _BLOCK), dtype=np.uint8)
    for bit in range(8):
        g[bit // 4, bit % 4] = (x >> bit) & 1
        g[2 + bit // 4, bit % 4] = (y >> bit) & 1
    return g


def unlayout(g) -> tuple[int, int]:
    """Inverse of :func:`layout`."""
    g = _as_gf2(g, "layout matrix")
    if g.shape != (_BLOCK, _BLOCK):
        raise ValueError(f"layout matrix must be 4x4, got {g.shape}")
    x = y = 0
    for bit in range(8):
        x |= int(g[bit // 4, bit % 4]) << bit
        y |= int(g[2 + bit // 4, bit % 4]) << bit
    return x, y


def encode_block(x: int, y: int) -> np.ndarray:
    """The pattern block for (x, y): inv(T) @ layout(x, y) @ inv(T.T)."""
    return _mul(_mul(_T_INV, layout(x, y)), _TT_INV)


def decode_block(block) -> tuple[int, int]:
    """Coordinates encoded in a block: unlayout(T @ block @ T.T)."""
    block = _as_gf2(block, "block")
    if block.shape != (_BLOCK, _BLOCK):
        raise ValueError(f"block must be 4x4, got {block.shape}")
    return unlayout(_mul(_mul(TRANSFORM, block), TRANSFORM.T))


@dataclass(frozen=True)
class WaveletPattern:
    """The assembled 1024x1024 pattern; block (row i, col j) encodes
    position (x=j, y=i)."""

    bits: BitGrid


def build_pattern() -> WaveletPattern:
    """Assemble all 256x256 blocks.

    The transform is linear, so each block is the XOR of an x-only and a
    y-only encoding; broadcasting the 256 precomputed halves assembles
    the pattern without 65536 matrix products.
    """
    ex = np.stack([encode_block(x, 0) for x in range(256)])
    ey = np.stack([encode_block(0, y) for y in range(256)])
    blocks = ey[:, None, :, :] ^ ex[None, :, :, :]
    bits = blocks.transpose(0, 2, 1, 3).reshape(_SIDE, _SIDE)
    return WaveletPattern(BitGrid(bits))


def decode_at(pattern: WaveletPattern, i: int, j: int) -> tuple[int, int]:
    """Decode the block at block-row i, block-col j (alignment is the
    caller's input: the scheme has no in-band delimiters)."""
    if not (0 <= i <= _COORD_MAX):
        raise GridBoundsError(f"block row {i} outside 0..{_COORD_MAX}")
    if not (0 <= j <= _COORD_MAX):
        raise GridBoundsError(f"block col {j} outside 0..{_COORD_MAX}")
    a = pattern.bits.array
    block = a[_BLOCK * i : _BLOCK * (i + 1), _BLOCK * j : _BLOCK * (j + 1)]
    return decode_block(block)
