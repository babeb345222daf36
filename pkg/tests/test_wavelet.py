"""GF(2) matrix code: transforms, bit layout and the 1024x1024 pattern."""

import numpy as np
import pytest

from poscode.errors import GridBoundsError, SingularMatrixError
from poscode.wavelet import (
    TRANSFORM,
    build_pattern,
    decode_at,
    decode_block,
    encode_block,
    gf2_inv,
    gf2_mul,
    layout,
    unlayout,
)

EXAMPLE_LAYOUT = np.array(
    [[0, 0, 1, 1], [0, 0, 0, 0], [0, 0, 1, 1], [0, 1, 1, 0]], dtype=np.uint8
)


def test_gf2_mul_identity():
    rng = np.random.default_rng(1)
    a = rng.integers(0, 2, size=(4, 4), dtype=np.uint8)
    eye = np.eye(4, dtype=np.uint8)
    assert (gf2_mul(eye, a) == a).all()
    assert (gf2_mul(a, eye) == a).all()


def test_gf2_mul_is_mod2():
    a = np.ones((4, 4), dtype=np.uint8)
    assert (gf2_mul(a, a) == np.zeros((4, 4))).all()  # 4 = 0 mod 2


def test_transform_is_invertible():
    inv = gf2_inv(TRANSFORM)
    assert (gf2_mul(inv, TRANSFORM) == np.eye(4, dtype=np.uint8)).all()
    assert (gf2_mul(TRANSFORM, inv) == np.eye(4, dtype=np.uint8)).all()


def test_gf2_inv_singular():
    with pytest.raises(SingularMatrixError):
        gf2_inv(np.zeros((4, 4), dtype=np.uint8))
    with pytest.raises(SingularMatrixError):
        gf2_inv(np.ones((4, 4), dtype=np.uint8))


def test_gf2_inv_random_invertible():
    rng = np.random.default_rng(2)
    found = 0
    while found < 20:
        a = rng.integers(0, 2, size=(4, 4), dtype=np.uint8)
        try:
            inv = gf2_inv(a)
        except SingularMatrixError:
            continue
        found += 1
        assert (gf2_mul(a, inv) == np.eye(4, dtype=np.uint8)).all()


def test_layout_example():
    assert (layout(12, 108) == EXAMPLE_LAYOUT).all()


def test_layout_zero():
    assert (layout(0, 0) == np.zeros((4, 4))).all()


def test_layout_unlayout_exhaustive():
    for x in range(256):
        for y in (0, 1, 107, 255, x):
            assert unlayout(layout(x, y)) == (x, y)


def test_layout_range_errors():
    with pytest.raises(ValueError):
        layout(256, 0)
    with pytest.raises(ValueError):
        layout(0, -1)


def test_encode_decode_example():
    assert decode_block(encode_block(12, 108)) == (12, 108)


def test_transforming_encoded_block_recovers_layout():
    block = encode_block(12, 108)
    recovered = gf2_mul(gf2_mul(TRANSFORM, block), TRANSFORM.T)
    assert (recovered == EXAMPLE_LAYOUT).all()


def test_encode_zero_is_zero():
    assert (encode_block(0, 0) == np.zeros((4, 4))).all()


def test_pattern_dimensions_and_origin():
    pattern = build_pattern()
    assert pattern.bits.shape == (1024, 1024)
    assert decode_at(pattern, 0, 0) == (0, 0)


def test_pattern_blocks_match_scalar_encoder():
    pattern = build_pattern()
    a = pattern.bits.array
    rng = np.random.default_rng(3)
    for _ in range(50):
        i, j = rng.integers(0, 256, size=2)
        block = a[4 * i : 4 * i + 4, 4 * j : 4 * j + 4]
        assert (block == encode_block(int(j), int(i))).all()
        assert decode_at(pattern, int(i), int(j)) == (int(j), int(i))


def test_decode_at_bounds():
    pattern = build_pattern()
    with pytest.raises(GridBoundsError):
        decode_at(pattern, 256, 0)
    with pytest.raises(GridBoundsError):
        decode_at(pattern, 0, -1)
