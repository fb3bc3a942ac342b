import itertools

import numpy as np
import pytest

from combcache.gfmds import (
    CodedSymbolBlock,
    DuplicateSymbolError,
    InsufficientSymbolsError,
    MdsCode,
    MdsParameterError,
    field,
    from_symbols,
    mds_decode,
    mds_encode,
    symbol_width,
    to_symbols,
)
from combcache.shared.utils import xor_bytes


def _message(code, symbols=3, seed=0):
    rng = np.random.default_rng(seed)
    size = symbols * code.symbol_bytes
    return [rng.integers(0, 256, size=size, dtype=np.uint8).tobytes() for _ in range(code.k)]


def test_gf256_tables():
    gf = field(8)
    assert gf.exp_table[0] == 1
    assert gf.exp_table[8] == 0x1D
    assert int(gf.mul(2, 0x80)) == 0x1D
    assert int(gf.mul(0, 0x53)) == 0
    assert int(gf.add(0x53, 0xCA)) == 0x99

    a = np.arange(1, 256)
    assert np.all(gf.mul(a, gf.inverse(a)) == 1)
    assert np.all(gf.mul(gf.mul(a, 7), gf.inverse(7)) == a)


def test_gf256_distributes_over_xor():
    gf = field(8)
    b, c = np.meshgrid(np.arange(256), np.arange(256), indexing="ij")
    for a in range(256):
        assert np.array_equal(gf.mul(a, gf.add(b, c)), gf.add(gf.mul(a, b), gf.mul(a, c))), a


def test_gf65536_tables():
    gf = field(16)
    assert int(gf.mul(2, 0x8000)) == 0x100B

    a = np.array([1, 2, 3, 0x1234, 0xFFFF])
    assert np.all(gf.mul(a, gf.inverse(a)) == 1)


def test_field_errors():
    with pytest.raises(MdsParameterError):
        field(4)
    with pytest.raises(ZeroDivisionError):
        field(8).inverse(0)


@pytest.mark.parametrize("w,m", [(8, 5), (8, 40), (16, 30)])
def test_cauchy_inverse(w, m):
    gf = field(w)
    x = np.arange(m, 2 * m)
    y = np.arange(m)
    C = gf.cauchy(x, y)
    assert np.array_equal(gf.matmul(C, gf.cauchy_inverse(x, y)), np.eye(m, dtype=np.int64))


def test_symbols():
    assert symbol_width(8) == 1
    assert symbol_width(16) == 2

    payload = bytes([0x12, 0x34, 0xAB, 0xCD])
    assert list(to_symbols(payload, 16)) == [0x1234, 0xABCD]
    assert from_symbols(to_symbols(payload, 16), 16) == payload
    assert list(to_symbols(payload, 8)) == [0x12, 0x34, 0xAB, 0xCD]

    with pytest.raises(MdsParameterError):
        to_symbols(b"\x01\x02\x03", 16)


def test_code_parameters():
    assert MdsCode.for_parameters(255, 10).w == 8
    assert MdsCode.for_parameters(256, 10).w == 16
    assert MdsCode.for_parameters(256, 10).symbol_bytes == 2

    with pytest.raises(MdsParameterError):
        MdsCode.for_parameters(65536, 1)
    with pytest.raises(MdsParameterError):
        MdsCode(n=3, k=4)
    with pytest.raises(MdsParameterError):
        MdsCode(n=3, k=0)
    with pytest.raises(MdsParameterError):
        MdsCode(n=300, k=4, w=8)


def test_encode_is_systematic():
    code = MdsCode.for_parameters(9, 4)
    message = _message(code)
    blocks = mds_encode(code, message)

    assert [b.index for b in blocks] == list(range(1, 10))
    assert [b.payload for b in blocks[:4]] == message
    assert all(len(b.payload) == len(message[0]) for b in blocks)


def test_encode_errors():
    code = MdsCode.for_parameters(5, 3)
    with pytest.raises(MdsParameterError):
        mds_encode(code, [b"ab", b"cd"])
    with pytest.raises(MdsParameterError):
        mds_encode(code, [b"ab", b"cd", b"e"])
    with pytest.raises(MdsParameterError):
        mds_encode(code, [b"", b"", b""])


@pytest.mark.parametrize("n,k", [(1, 1), (5, 1), (6, 5), (7, 3), (8, 8), (9, 4)])
def test_any_k_symbols_decode(n, k):
    code = MdsCode.for_parameters(n, k)
    message = _message(code, seed=n * 31 + k)
    blocks = mds_encode(code, message)

    for subset in itertools.combinations(blocks, k):
        assert mds_decode(code, subset) == message


def test_decode_wide_field():
    code = MdsCode.for_parameters(300, 40)
    assert code.w == 16
    message = _message(code, seed=3)
    blocks = mds_encode(code, message)

    rng = np.random.default_rng(11)
    for _ in range(5):
        picked = rng.choice(300, size=40, replace=False)
        assert mds_decode(code, [blocks[i] for i in picked]) == message


def test_decode_with_extra_symbols():
    code = MdsCode.for_parameters(10, 4)
    message = _message(code)
    blocks = mds_encode(code, message)
    assert mds_decode(code, blocks[2:]) == message


def test_decode_errors():
    code = MdsCode.for_parameters(6, 3)
    blocks = mds_encode(code, _message(code))

    with pytest.raises(InsufficientSymbolsError):
        mds_decode(code, blocks[:2])
    with pytest.raises(DuplicateSymbolError):
        mds_decode(code, [blocks[0], blocks[0], blocks[1]])
    with pytest.raises(MdsParameterError):
        mds_decode(code, blocks[:2] + [CodedSymbolBlock(index=7, payload=blocks[2].payload)])
    with pytest.raises(MdsParameterError):
        mds_decode(code, blocks[:2] + [CodedSymbolBlock(index=3, payload=b"x")])


@pytest.mark.parametrize("n,k", [(12, 5), (400, 150)])
def test_encode_is_xor_linear(n, k):
    code = MdsCode.for_parameters(n, k)
    a = _message(code, seed=1)
    b = _message(code, seed=2)

    mixed = mds_encode(code, [xor_bytes([x, y]) for x, y in zip(a, b)])
    for s, u, v in zip(mixed, mds_encode(code, a), mds_encode(code, b)):
        assert s.payload == xor_bytes([u.payload, v.payload])
