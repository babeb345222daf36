"""Command-line front end: generate, decode, verify, tables, report.

Exit codes: 0 success, 1 decode/verify failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import anoto, meshcode, rasnik, wavelet
from .bitgrid import BitGrid, read_pbm, subgrid, verify_uniqueness, write_pbm
from .errors import PbmParseError, PositionCodeError
from .sequences import fixture_text, phi

SCHEMES = ("rasnik", "anoto", "wavelet", "mesh")

# Default uniqueness window per scheme (rows, cols).
_VERIFY_WINDOWS = {"rasnik": (11, 9), "anoto": (6, 6), "wavelet": (4, 4), "mesh": (4, 4)}


def read_window_file(path) -> BitGrid:
    """Read a window: a P1 bitmap, or bare rows of 0/1 characters."""
    text = Path(path).read_text(encoding="ascii", errors="replace")
    if text.lstrip().startswith("P1"):
        return read_pbm(path)
    rows = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        compact = "".join(line.split())
        if not compact:
            continue
        if compact.strip("01"):
            raise PbmParseError("window rows must hold only 0/1", lineno)
        rows.append([int(ch) for ch in compact])
    if not rows:
        raise PbmParseError("empty window file", 1)
    if len({len(r) for r in rows}) != 1:
        raise PbmParseError("window rows have unequal lengths", len(rows))
    return BitGrid(rows)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="poscode",
        description="Generate, decode and verify 2D position-coding patterns.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("generate", help="write a pattern as PBM (+ sidecar for anoto)")
    gen.add_argument("--scheme", required=True, choices=SCHEMES)
    gen.add_argument("--x0", type=int, help="region origin x (rasnik: block, anoto: dot)")
    gen.add_argument("--y0", type=int, help="region origin y")
    gen.add_argument("--w", type=int, help="region width (rasnik: blocks, anoto: dots)")
    gen.add_argument("--h", type=int, help="region height")
    gen.add_argument("--section-x", type=int, help="anoto x-plane section (0..62)")
    gen.add_argument("--section-y", type=int, help="anoto y-plane section (0..62)")
    gen.add_argument("--dots", help="anoto only: also write the U/R/D/L dot grid here")
    gen.add_argument("--out", required=True, help="output PBM path (anoto: path stem)")

    dec = sub.add_parser("decode", help="decode a window file to coordinates")
    dec.add_argument("--scheme", required=True, choices=SCHEMES)
    dec.add_argument("--window", help="window file (PBM or bare 0/1 rows); anoto: patch stem")
    dec.add_argument("--window-x", help="anoto x-plane window file")
    dec.add_argument("--window-y", help="anoto y-plane window file")
    dec.add_argument("--block-i", type=int, help="wavelet: expected block row")
    dec.add_argument("--block-j", type=int, help="wavelet: expected block col")

    ver = sub.add_parser("verify", help="run the window-uniqueness verifier")
    ver.add_argument("--scheme", required=True, choices=SCHEMES)
    ver.add_argument("--win-h", type=int, help="window height (default per scheme)")
    ver.add_argument("--win-w", type=int, help="window width (default per scheme)")

    sub.add_parser("tables", help="print the frozen sequence fixtures and digit table")

    rep = sub.add_parser("report", help="write figures and a CSV summary")
    rep.add_argument("--scheme", required=True, choices=SCHEMES)
    rep.add_argument("--out-dir", required=True)
    rep.add_argument("--seed", type=int, default=0, help="seed for decode spot checks")

    return parser


def _reject_options(parser, args, names):
    for name in names:
        if getattr(args, name.replace("-", "_")) is not None:
            parser.error(f"--{name} does not apply to scheme {args.scheme!r}")


def _cmd_generate(parser, args) -> int:
    scheme = args.scheme
    if scheme == "mesh":
        _reject_options(parser, args, ["x0", "y0", "w", "h", "section-x", "section-y", "dots"])
        write_pbm(meshcode.build_mesh().bits, args.out)
    elif scheme == "wavelet":
        _reject_options(parser, args, ["x0", "y0", "w", "h", "section-x", "section-y", "dots"])
        write_pbm(wavelet.build_pattern().bits, args.out)
    elif scheme == "rasnik":
        _reject_options(parser, args, ["section-x", "section-y", "dots"])
        x0 = args.x0 if args.x0 is not None else 0
        y0 = args.y0 if args.y0 is not None else 0
        w = args.w if args.w is not None else 8
        h = args.h if args.h is not None else 8
        write_pbm(rasnik.tile_pattern(x0, y0, w, h).bits, args.out)
    else:  # anoto
        system = anoto.default_system()
        patch = anoto.generate_patch(
            system,
            args.section_x if args.section_x is not None else 0,
            args.section_y if args.section_y is not None else 0,
            args.x0 if args.x0 is not None else 0,
            args.y0 if args.y0 is not None else 0,
            args.w if args.w is not None else 6,
            args.h if args.h is not None else 6,
        )
        paths = anoto.write_patch(patch, args.out)
        if args.dots:
            Path(args.dots).write_text(
                anoto.dot_grid_text(anoto.dots_for_patch(patch)), encoding="ascii"
            )
        print(" ".join(str(p) for p in paths))
    return 0


def _cmd_decode(parser, args) -> int:
    scheme = args.scheme
    if scheme == "anoto":
        if args.window_x and args.window_y:
            xwin = read_window_file(args.window_x)
            ywin = read_window_file(args.window_y)
        elif args.window:
            patch = anoto.read_patch(args.window)
            xwin = subgrid(patch.xbits, 0, 0, 6, 6)
            ywin = subgrid(patch.ybits, 0, 0, 6, 6)
        else:
            parser.error("anoto decode needs --window STEM or --window-x/--window-y")
        pos = anoto.decode_window(anoto.default_system(), xwin, ywin)
        print(f"x={pos.x} y={pos.y} section_x={pos.section_x} section_y={pos.section_y}")
        return 0

    if not args.window:
        parser.error("decode needs --window FILE")
    win = read_window_file(args.window)
    if scheme == "mesh":
        pos = meshcode.decode_mesh(win)
        print(f"x={pos.x} y={pos.y}")
    elif scheme == "rasnik":
        pos = rasnik.decode_window(win)
        print(f"x={pos.pixel_col} y={pos.pixel_row}")
    else:  # wavelet: 16 bits plus optional expected block indices
        x, y = wavelet.decode_block(win.array)
        print(f"x={x} y={y}")
        if args.block_i is not None and args.block_j is not None:
            if (x, y) != (args.block_j, args.block_i):
                print(
                    f"block ({args.block_i}, {args.block_j}) should encode "
                    f"x={args.block_j} y={args.block_i}",
                    file=sys.stderr,
                )
                return 1
    return 0


def _cmd_verify(args) -> int:
    scheme = args.scheme
    win_h, win_w = _VERIFY_WINDOWS[scheme]
    if args.win_h is not None:
        win_h = args.win_h
    if args.win_w is not None:
        win_w = args.win_w
    if scheme == "mesh":
        grids = [meshcode.build_mesh().bits]
    elif scheme == "wavelet":
        grids = [wavelet.build_pattern().bits]
    elif scheme == "rasnik":
        grids = [rasnik.tile_pattern(0, 0, 16, 16).bits]
    else:
        patch = anoto.generate_patch(anoto.default_system(), 0, 0, 0, 0, 63, 63)
        grids = [patch.xbits, patch.ybits]
    duplicates = sum(
        verify_uniqueness(g, win_h, win_w).duplicate_count for g in grids
    )
    print(f"duplicates={duplicates}")
    return 0 if duplicates == 0 else 1


def _cmd_tables() -> int:
    for seq, (k, n, m) in zip(
        anoto.default_system().secondary, anoto.SECONDARY_SHAPES
    ):
        print(f"# secondary k={k} n={n} m={m}")
        print(fixture_text(seq), end="")
    print("# digit bijection r -> (a1, a2, a3, a4)")
    for r in range(5, 59):
        print(r, *phi(r))
    return 0


def _cmd_report(args) -> int:
    from .report import build_report  # deferred: pulls in matplotlib

    result = build_report(args.scheme, args.out_dir, seed=args.seed)
    print(f"wrote {result['csv']}")
    for fig in result["figures"]:
        print(f"wrote {fig}")
    return 0


def run(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "generate":
            return _cmd_generate(parser, args)
        if args.command == "decode":
            return _cmd_decode(parser, args)
        if args.command == "verify":
            return _cmd_verify(args)
        if args.command == "tables":
            return _cmd_tables()
        return _cmd_report(args)
    except (PositionCodeError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    raise SystemExit(run())


if __name__ == "__main__":
    main()
