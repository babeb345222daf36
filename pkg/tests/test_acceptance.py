"""Acceptance suite: one timed pass/fail line per criterion.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the lines.
"""

import random
import time
from importlib import resources

import numpy as np

from poscode import anoto, meshcode, rasnik, wavelet
from poscode.bitgrid import BitGrid, subgrid, verify_uniqueness
from poscode.sequences import fixture_text, phi

MESH_EXAMPLE = BitGrid([[1, 0, 0, 1], [0, 0, 1, 0], [0, 1, 0, 1], [0, 1, 1, 1]])
WAVELET_EXAMPLE_LAYOUT = np.array(
    [[0, 0, 1, 1], [0, 0, 0, 0], [0, 0, 1, 1], [0, 1, 1, 0]], dtype=np.uint8
)


def _timed(name, budget_s, fn):
    start = time.perf_counter()
    try:
        fn()
    except Exception:
        print(f"FAIL {name}")
        raise
    elapsed = time.perf_counter() - start
    print(f"PASS {name} [{elapsed:.3f}s < {budget_s}s]")
    assert elapsed < budget_s, f"{name} took {elapsed:.3f}s, budget {budget_s}s"


def test_criterion_1_mesh_golden_decode():
    meshcode.decode_mesh(subgrid(meshcode.build_mesh().bits, 0, 0, 4, 4))  # warm

    def check():
        pos = meshcode.decode_mesh(MESH_EXAMPLE)
        assert (pos.x, pos.y) == (201, 5)
        assert pos.ones_digit == 3
        assert pos.twelves_digit == 5
        assert pos.row_digit == 2

    _timed("mesh golden decode", 0.001, check)


def test_criterion_2_mesh_exhaustive_roundtrip():
    def check():
        mesh = meshcode.build_mesh()
        a = mesh.bits.array
        count = 0
        for r in range(45):
            for c in range(573):
                pos = meshcode.decode_mesh(BitGrid(a[r : r + 4, c : c + 4]))
                assert (pos.row, pos.col) == (r, c)
                count += 1
        assert count == 45 * 573 == 25785
        assert verify_uniqueness(mesh.bits, 4, 4).duplicate_count == 0

    _timed("mesh exhaustive roundtrip + uniqueness", 5.0, check)


def test_criterion_3_wavelet_golden():
    def check():
        assert (wavelet.layout(12, 108) == WAVELET_EXAMPLE_LAYOUT).all()
        inv = wavelet.gf2_inv(wavelet.TRANSFORM)
        assert (wavelet.gf2_mul(inv, wavelet.TRANSFORM) == np.eye(4, dtype=np.uint8)).all()
        for x in range(256):
            for y in range(256):
                assert wavelet.decode_block(wavelet.encode_block(x, y)) == (x, y)
        assert wavelet.build_pattern().bits.shape == (1024, 1024)

    _timed("wavelet golden + 65536 block roundtrips", 5.0, check)


def test_criterion_4_anoto_sequence_facts():
    def check():
        system = anoto.default_system()
        windows = {system.main.window(i) for i in range(63)}
        assert len(windows) == 63
        images = {phi(r) for r in range(5, 59)}
        assert len(images) == 54
        assert system.basis.product == 236 * 233 * 31 * 241 == 410815348

    _timed("anoto sequence facts", 1.0, check)


def test_criterion_5_anoto_roundtrip_1000_draws():
    def check():
        system = anoto.default_system()
        L = system.period
        rng = random.Random(20250811)
        draws = []
        for _ in range(12):
            draws.append((rng.randrange(7), rng.randrange(7)))
        for _ in range(12):
            draws.append((L - 6 - rng.randrange(7), L - 6 - rng.randrange(7)))
        while len(draws) < 1000:
            draws.append((rng.randrange(L - 6), rng.randrange(L - 6)))
        assert sum(1 for x, y in draws if x <= 6 and y <= 6) >= 10
        assert sum(1 for x, y in draws if x >= L - 12 and y >= L - 12) >= 10
        for x, y in draws:
            sx, sy = rng.randrange(63), rng.randrange(63)
            patch = anoto.generate_patch(system, sx, sy, x, y, 6, 6)
            pos = anoto.decode_window(system, patch.xbits, patch.ybits)
            assert (pos.x, pos.y, pos.section_x, pos.section_y) == (x, y, sx, sy)

    _timed("anoto roundtrip, 1000 draws incl. period edges", 30.0, check)


def test_criterion_6_anoto_prefix_sum_oracle():
    def check():
        system = anoto.default_system()
        span = 10**6
        streams = [
            np.resize(np.array(s.symbols, dtype=np.int64), span)
            for s in system.secondary
        ]
        literal = 5 + streams[0] + 3 * streams[1] + 9 * streams[2] + 18 * streams[3]
        sums = np.concatenate([[0], np.cumsum(literal)])
        rng = random.Random(6)
        points = [0, 1, 63, 10**4, 10**5] + [rng.randrange(span) for _ in range(100)]
        for c in points:
            assert anoto.prefix_diff_sum(system, c) == int(sums[c]) % 63

    _timed("anoto prefix-sum vs literal summation", 10.0, check)


def test_criterion_7_secondary_fixtures():
    regenerated = []

    def generate():
        regenerated.extend(anoto.regenerate_secondary())

    _timed("secondary sequence generation", 60.0, generate)

    def check():
        data = resources.files("poscode") / "data"
        for seq, (k, n, m) in zip(regenerated, anoto.SECONDARY_SHAPES):
            assert (seq.alphabet_size, seq.order, len(seq)) == (k, n, m)
            assert len({seq.window(i) for i in range(m)}) == m
            frozen = (data / f"secondary_{k}_{n}_{m}.txt").read_text(encoding="ascii")
            assert fixture_text(seq) == frozen

    _timed("secondary fixtures byte-identical", 1.0, check)


def test_criterion_8_rasnik_exhaustive_roundtrip():
    def check():
        x0, y0 = 100, 500
        pattern = rasnik.tile_pattern(x0, y0, 8, 8)
        a = pattern.bits
        offsets = set()
        parities = set()
        for r in range(a.rows - 10):
            for c in range(a.cols - 8):
                # decode_window raises unless exactly one hypothesis survives
                pos = rasnik.decode_window(subgrid(a, r, c, 11, 9))
                assert (pos.pixel_row, pos.pixel_col) == (11 * y0 + r, 9 * x0 + c)
                offsets.add((pos.offset_row, pos.offset_col))
                parities.add(pos.parity)
        assert len(offsets) == 99
        assert parities == {0, 1}

    _timed("rasnik exhaustive roundtrip, 99 offsets x 2 parities", 10.0, check)


def test_criterion_9_verifier_sanity():
    def check():
        assert not verify_uniqueness(BitGrid.zeros(8, 8), 2, 2).is_unique
        assert verify_uniqueness(meshcode.build_mesh().bits, 4, 4).is_unique
        main_row = BitGrid([list(anoto.MAIN_NUMBER_SEQUENCE)])
        assert verify_uniqueness(main_row, 1, 6, cyclic=True).is_unique

    _timed("verifier sanity (constant, mesh, cyclic main sequence)", 1.0, check)
