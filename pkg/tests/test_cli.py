"""Command-line behaviour: outputs, formats and exit codes."""

import pytest

from poscode.bitgrid import read_pbm
from poscode.cli import run
from poscode.meshcode import build_mesh

MESH_WINDOW = "1001\n0010\n0101\n0111\n"


def test_generate_mesh_writes_the_pattern(tmp_path):
    out = tmp_path / "mesh.pbm"
    assert run(["generate", "--scheme", "mesh", "--out", str(out)]) == 0
    assert read_pbm(out) == build_mesh().bits


def test_generate_rejects_inapplicable_options(tmp_path):
    with pytest.raises(SystemExit) as exc:
        run(["generate", "--scheme", "mesh", "--x0", "1", "--out", str(tmp_path / "m.pbm")])
    assert exc.value.code == 2


def test_usage_error_on_unknown_scheme():
    with pytest.raises(SystemExit) as exc:
        run(["generate", "--scheme", "qr", "--out", "x.pbm"])
    assert exc.value.code == 2


def test_decode_mesh_worked_example(tmp_path, capsys):
    win = tmp_path / "win.txt"
    win.write_text(MESH_WINDOW)
    assert run(["decode", "--scheme", "mesh", "--window", str(win)]) == 0
    assert capsys.readouterr().out == "x=201 y=5\n"


def test_decode_mesh_accepts_pbm_windows(tmp_path, capsys):
    win = tmp_path / "win.pbm"
    win.write_text("P1\n4 4\n" + "\n".join(" ".join(row) for row in MESH_WINDOW.split()) + "\n")
    assert run(["decode", "--scheme", "mesh", "--window", str(win)]) == 0
    assert capsys.readouterr().out == "x=201 y=5\n"


def test_decode_mesh_zero_window_fails(tmp_path, capsys):
    win = tmp_path / "zero.txt"
    win.write_text("0000\n0000\n0000\n0000\n")
    assert run(["decode", "--scheme", "mesh", "--window", str(win)]) == 1
    assert "marker" in capsys.readouterr().err


def test_verify_mesh(capsys):
    assert run(["verify", "--scheme", "mesh"]) == 0
    assert capsys.readouterr().out == "duplicates=0\n"


def test_verify_rasnik(capsys):
    assert run(["verify", "--scheme", "rasnik"]) == 0
    assert capsys.readouterr().out == "duplicates=0\n"


def test_verify_reports_duplicates_with_exit_1(capsys):
    # 2x2 windows of the mesh pattern are far from unique.
    assert run(["verify", "--scheme", "mesh", "--win-h", "2", "--win-w", "2"]) == 1
    out = capsys.readouterr().out
    assert out.startswith("duplicates=") and out != "duplicates=0\n"


def test_anoto_generate_then_decode(tmp_path, capsys):
    stem = tmp_path / "patch"
    code = run(
        [
            "generate", "--scheme", "anoto",
            "--section-x", "17", "--section-y", "42",
            "--x0", "123456", "--y0", "9876543",
            "--w", "6", "--h", "6",
            "--out", str(stem),
        ]
    )
    assert code == 0
    capsys.readouterr()
    assert run(["decode", "--scheme", "anoto", "--window", str(stem)]) == 0
    out = capsys.readouterr().out
    assert out == "x=123456 y=9876543 section_x=17 section_y=42\n"


def test_anoto_dot_export(tmp_path):
    stem = tmp_path / "p"
    dots = tmp_path / "dots.txt"
    run(
        [
            "generate", "--scheme", "anoto", "--w", "5", "--h", "3",
            "--dots", str(dots), "--out", str(stem),
        ]
    )
    lines = dots.read_text().splitlines()
    assert len(lines) == 3
    assert all(len(line) == 5 and set(line) <= set("URDL") for line in lines)


def test_rasnik_generate_then_decode(tmp_path, capsys):
    out = tmp_path / "r.pbm"
    assert run(
        ["generate", "--scheme", "rasnik", "--x0", "100", "--y0", "500",
         "--w", "1", "--h", "1", "--out", str(out)]
    ) == 0
    assert run(["decode", "--scheme", "rasnik", "--window", str(out)]) == 0
    assert capsys.readouterr().out == f"x={9 * 100} y={11 * 500}\n"


def test_wavelet_block_decode(tmp_path, capsys):
    from poscode.bitgrid import write_pbm, BitGrid
    from poscode.wavelet import encode_block

    win = tmp_path / "block.pbm"
    write_pbm(BitGrid(encode_block(12, 108)), win)
    assert run(
        ["decode", "--scheme", "wavelet", "--window", str(win),
         "--block-i", "108", "--block-j", "12"]
    ) == 0
    assert capsys.readouterr().out == "x=12 y=108\n"
    # mismatching expected block indices fail
    assert run(
        ["decode", "--scheme", "wavelet", "--window", str(win),
         "--block-i", "0", "--block-j", "0"]
    ) == 1


def test_tables_is_deterministic(capsys):
    assert run(["tables"]) == 0
    first = capsys.readouterr().out
    assert run(["tables"]) == 0
    assert capsys.readouterr().out == first
    assert "secondary k=3 n=5 m=236" in first
    assert "58 2 2 1 2" in first.replace("  ", " ")


def test_report_mesh(tmp_path, capsys):
    assert run(["report", "--scheme", "mesh", "--out-dir", str(tmp_path), "--seed", "1"]) == 0
    csv_path = tmp_path / "mesh_report.csv"
    png_path = tmp_path / "mesh_pattern.png"
    assert csv_path.exists() and png_path.exists()
    lines = csv_path.read_text().splitlines()
    assert lines[0].startswith("scheme,")
    row = lines[1].split(",")
    assert row[0] == "mesh"
    assert row[5] == "0"  # duplicate_pairs
    assert row[6] == row[7] == "50"  # all spot decodes succeed


def test_missing_window_file_is_reported(capsys):
    assert run(["decode", "--scheme", "mesh", "--window", "/nonexistent.txt"]) == 1
    assert "error:" in capsys.readouterr().err
