"""Core bit-grid type, window extraction, PBM I/O and the uniqueness verifier.

Conventions used throughout the package:

* grids are indexed ``(row, col)``, row 0 at the top, col 0 at the left;
* every cell holds 0 or 1, with 1 meaning dark/ink in rendered output;
* all indices are 0-based.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .errors import GridBoundsError, PbmParseError

__all__ = [
    "BitGrid",
    "Window",
    "UniquenessReport",
    "subgrid",
    "strided_quad",
    "verify_uniqueness",
    "read_pbm",
    "write_pbm",
]


class BitGrid:
    """Immutable rectangular array of bits.

    Wraps a read-only ``uint8`` numpy array.  ``grid[r, c]`` reads one bit;
    ``grid.array`` exposes the read-only backing array for bulk numpy work.
    """

    __slots__ = ("_a",)

    def __init__(self, data):
        a = np.asarray(data, dtype=np.uint8)
        if a.ndim != 2:
            raise ValueError(f"bit grid must be 2-D, got {a.ndim}-D")
        if a.size and a.max() > 1:
            raise ValueError("bit grid entries must be 0 or 1")
        a = np.ascontiguousarray(a)
        a.flags.writeable = False
        self._a = a

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "BitGrid":
        return cls(np.zeros((rows, cols), dtype=np.uint8))

    @property
    def rows(self) -> int:
        return self._a.shape[0]

    @property
    def cols(self) -> int:
        return self._a.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self._a.shape

    @property
    def array(self) -> np.ndarray:
        """The read-only backing array."""
        return self._a

    def to_array(self) -> np.ndarray:
        """A writable copy of the bits."""
        return self._a.copy()

    def transposed(self) -> "BitGrid":
        return BitGrid(self._a.T)

    def __getitem__(self, rc):
        r, c = rc
        if not (0 <= r < self.rows):
            raise GridBoundsError(f"row {r} outside 0..{self.rows - 1}")
        if not (0 <= c < self.cols):
            raise GridBoundsError(f"col {c} outside 0..{self.cols - 1}")
        return int(self._a[r, c])

    def __eq__(self, other):
        if not isinstance(other, BitGrid):
            return NotImplemented
        return self._a.shape == other._a.shape and bool((self._a == other._a).all())

    def __hash__(self):
        return hash((self._a.shape, self._a.tobytes()))

    def __repr__(self):
        return f"BitGrid({self.rows}x{self.cols})"


@dataclass(frozen=True)
class Window:
    """A rectangular cut of a grid together with where it was taken from.

    Decoder inputs are plain :class:`BitGrid` values; ``Window`` is for
    callers that need to carry the origin along with the bits.
    """

    origin_row: int
    origin_col: int
    bits: BitGrid

    @property
    def height(self) -> int:
        return self.bits.rows

    @property
    def width(self) -> int:
        return self.bits.cols

    @classmethod
    def from_grid(cls, g: BitGrid, r: int, c: int, h: int, w: int) -> "Window":
        return cls(r, c, subgrid(g, r, c, h, w))


def subgrid(g: BitGrid, r: int, c: int, h: int, w: int) -> BitGrid:
    """The h x w copy of ``g`` whose (0,0) cell is ``g[r, c]``."""
    if r < 0 or r + h > g.rows:
        raise GridBoundsError(f"rows {r}..{r + h - 1} outside 0..{g.rows - 1}")
    if c < 0 or c + w > g.cols:
        raise GridBoundsError(f"cols {c}..{c + w - 1} outside 0..{g.cols - 1}")
    return BitGrid(g.array[r : r + h, c : c + w])


def strided_quad(g: BitGrid, r: int, c: int, dr: int, dc: int) -> BitGrid:
    """The 2x2 grid [[g(r,c), g(r,c+dc)], [g(r+dr,c), g(r+dr,c+dc)]]."""
    if r < 0 or r + dr >= g.rows:
        raise GridBoundsError(f"rows {r},{r + dr} outside 0..{g.rows - 1}")
    if c < 0 or c + dc >= g.cols:
        raise GridBoundsError(f"cols {c},{c + dc} outside 0..{g.cols - 1}")
    a = g.array
    return BitGrid([[a[r, c], a[r, c + dc]], [a[r + dr, c], a[r + dr, c + dc]]])


@dataclass(frozen=True)
class UniquenessReport:
    """Result of a window-uniqueness scan.

    ``groups`` holds, for every window content that occurs more than once,
    the sorted list of its origins.  ``pairs()`` enumerates the colliding
    origin pairs; ``duplicate_count`` is their total number, computed
    combinatorially because degenerate grids can collide quadratically.
    """

    window_height: int
    window_width: int
    cyclic: bool
    groups: tuple[tuple[tuple[int, int], ...], ...]

    @property
    def is_unique(self) -> bool:
        return not self.groups

    @property
    def duplicate_count(self) -> int:
        return sum(len(g) * (len(g) - 1) // 2 for g in self.groups)

    def pairs(self):
        """Yield every pair of distinct origins with equal window contents."""
        for group in self.groups:
            yield from combinations(group, 2)


def _window_matrix(g: BitGrid, h: int, w: int, cyclic: bool):
    """All window contents as an (n_origins, h*w) uint8 matrix."""
    a = g.array
    if cyclic:
        a = np.pad(a, ((0, h - 1), (0, w - 1)), mode="wrap")
        n_rows, n_cols = g.rows, g.cols
    else:
        n_rows, n_cols = g.rows - h + 1, g.cols - w + 1
    wins = np.lib.stride_tricks.sliding_window_view(a, (h, w))
    return wins.reshape(n_rows * n_cols, h * w), n_cols


def verify_uniqueness(g: BitGrid, h: int, w: int, cyclic: bool = False) -> UniquenessReport:
    """Scan every h x w window of ``g`` and report colliding origin groups.

    With ``cyclic=True`` windows wrap across the right and bottom edges and
    every cell is a window origin.  An empty report means the grid is a
    valid position code at this window size.
    """
    if h < 1 or h > g.rows:
        raise GridBoundsError(f"window height {h} outside 1..{g.rows}")
    if w < 1 or w > g.cols:
        raise GridBoundsError(f"window width {w} outside 1..{g.cols}")

    flat, n_cols = _window_matrix(g, h, w, cyclic)
    packed = np.packbits(flat, axis=1)

    # Fingerprint per window: the packed bits themselves when they fit in
    # 128 bits (injective), a 128-bit blake2b digest otherwise.
    if packed.shape[1] <= 16:
        fingerprints = [row.tobytes() for row in packed]
        exact = True
    else:
        fingerprints = [
            hashlib.blake2b(row.tobytes(), digest_size=16).digest() for row in packed
        ]
        exact = False

    buckets: dict[bytes, list[int]] = {}
    for idx, fp in enumerate(fingerprints):
        buckets.setdefault(fp, []).append(idx)

    groups = []
    for bucket in buckets.values():
        if len(bucket) < 2:
            continue
        if exact:
            classes = [bucket]
        else:
            # Hash collision is possible: confirm raw-bit equality.
            by_bits: dict[bytes, list[int]] = {}
            for idx in bucket:
                by_bits.setdefault(flat[idx].tobytes(), []).append(idx)
            classes = [c for c in by_bits.values() if len(c) > 1]
        for cls in classes:
            groups.append(tuple(divmod(idx, n_cols) for idx in sorted(cls)))
    groups.sort()
    return UniquenessReport(h, w, cyclic, tuple(groups))


def write_pbm(g: BitGrid, path) -> None:
    """Write ``g`` as a plain-text P1 bitmap, one grid row per line."""
    rows, cols = g.shape
    # Interleave ASCII digits with separators in one buffer; fast enough
    # for the 4096x4096 grids the round-trip contract covers.
    out = np.full((rows, 2 * cols), ord(" "), dtype=np.uint8)
    out[:, ::2] = g.array + ord("0")
    out[:, -1] = ord("\n")
    with open(path, "wb") as fh:
        fh.write(f"P1\n{cols} {rows}\n".encode("ascii"))
        fh.write(out.tobytes())


def read_pbm(path) -> BitGrid:
    """Read a plain-text P1 bitmap written by :func:`write_pbm`.

    Accepts any whitespace layout and ``#`` comments; raises
    :class:`PbmParseError` with a line number on malformed input.
    """
    with open(path, "rb") as fh:
        text = fh.read().decode("ascii", errors="replace")

    magic = None
    header = []  # cols, rows tokens, may span lines
    dims = None
    chunks = []
    total = 0
    lineno = 1
    for lineno, line in enumerate(text.splitlines(), start=1):
        body = line.split("#", 1)[0]
        tokens = body.split()
        if not tokens:
            continue
        if magic is None:
            if tokens[0] != "P1":
                raise PbmParseError(f"expected magic 'P1', got {tokens[0]!r}", lineno)
            magic = tokens[0]
            tokens = tokens[1:]
        if dims is None:
            while tokens and len(header) < 2:
                header.append((tokens.pop(0), lineno))
            if len(header) < 2:
                continue
            (cols_tok, _), (rows_tok, rows_line) = header
            try:
                cols, rows = int(cols_tok), int(rows_tok)
            except ValueError:
                raise PbmParseError(
                    f"bad dimensions {cols_tok!r} {rows_tok!r}", rows_line
                ) from None
            if cols < 1 or rows < 1:
                raise PbmParseError(f"bad dimensions {cols} x {rows}", rows_line)
            dims = (rows, cols)
        digits = "".join(tokens)
        if digits.strip("01"):
            bad = next(ch for ch in digits if ch not in "01")
            raise PbmParseError(f"non-bit token character {bad!r}", lineno)
        if digits:
            chunks.append(np.frombuffer(digits.encode("ascii"), dtype=np.uint8) - ord("0"))
            total += len(digits)
        if dims is not None and total > dims[0] * dims[1]:
            raise PbmParseError(
                f"more than {dims[0] * dims[1]} bits for {dims[1]} x {dims[0]} bitmap",
                lineno,
            )
    if magic is None:
        raise PbmParseError("empty file, expected magic 'P1'", 1)
    if dims is None:
        raise PbmParseError("missing dimensions line", 1)
    rows, cols = dims
    if total != rows * cols:
        raise PbmParseError(f"expected {rows * cols} bits, found {total}", lineno)
    bits = np.concatenate(chunks) if chunks else np.empty(0, dtype=np.uint8)
    return BitGrid(bits.reshape(rows, cols))
