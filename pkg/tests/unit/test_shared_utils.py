from fractions import Fraction

import pytest

from combcache.shared import log
from combcache.shared.utils import (
    format_decimal,
    format_fraction,
    generate_md5_hash,
    load_json,
    load_jsonl,
    parse_fraction,
    save_jsonl,
    split_even,
    xor_bytes,
)


def test_xor_bytes():
    assert xor_bytes([b"\x0f\xf0", b"\xff\x00"]) == b"\xf0\xf0"
    assert xor_bytes([b"ab"]) == b"ab"
    assert xor_bytes(iter([b"\x01", b"\x02", b"\x04"])) == b"\x07"

    with pytest.raises(ValueError):
        xor_bytes([b"ab", b"c"])
    with pytest.raises(ValueError):
        xor_bytes([])


def test_split_even():
    assert split_even(b"abcdef", 3) == [b"ab", b"cd", b"ef"]
    assert split_even(b"", 2) == [b"", b""]

    with pytest.raises(ValueError):
        split_even(b"abcde", 2)
    with pytest.raises(ValueError):
        split_even(b"ab", 0)


def test_fractions():
    assert format_fraction(Fraction(1, 3)) == "1/3"
    assert format_fraction(Fraction(4, 2)) == "2"
    assert format_fraction(0) == "0"
    assert parse_fraction(" 2/6 ") == Fraction(1, 3)
    assert format_decimal(Fraction(1, 3)) == "0.333333333333"
    assert format_decimal(Fraction(1660, 209), digits=4) == "7.943"


def test_jsonl(tmp_path):
    fname = str(tmp_path / "data.jsonl")
    data = [{"relay": 1, "multicast_set": [1, 2]}, {"relay": 2, "multicast_set": [3]}]
    save_jsonl(fname, data)
    assert load_jsonl(fname) == data

    assert load_jsonl(str(tmp_path / "missing.jsonl")) is None
    assert load_json(str(tmp_path / "missing.json")) is None


def test_md5():
    assert generate_md5_hash(b"") == "d41d8cd98f00b204e9800998ecf8427e"


def test_log_setup():
    log.setup("debug")
    with pytest.raises(ValueError):
        log.setup("chatty")
