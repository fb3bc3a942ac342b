import hashlib
import json
import os
from fractions import Fraction
from typing import Iterable, Optional

import numpy as np


def load_json(fname):
    if os.path.isfile(fname):
        with open(fname) as f:
            return json.loads(f.read())
    else:
        return None


def save_jsonl(fname, data):
    assert fname.endswith(".jsonl")
    with open(fname, "w") as outfile:
        for entry in data:
            json.dump(entry, outfile)
            outfile.write("\n")


def load_jsonl(jsonl_fname):
    if os.path.isfile(jsonl_fname):
        data = []
        with open(jsonl_fname) as f:
            for line in f:
                line = line.strip()
                if line:
                    data.append(json.loads(line))
        return data
    else:
        return None


def generate_md5_hash(data: bytes):
    """Generate a md5 hash of the payload bytes

    :param data: the payload
    :return: the md5 hash string
    """
    return hashlib.md5(data).hexdigest()


def xor_bytes(payloads: Iterable[bytes]) -> bytes:
    """Bit-wise XOR of equal-length byte strings."""
    acc: Optional[np.ndarray] = None
    for p in payloads:
        arr = np.frombuffer(p, dtype=np.uint8)
        if acc is None:
            acc = arr.copy()
        else:
            if arr.shape != acc.shape:
                raise ValueError(
                    f"Cannot XOR payloads of length {acc.shape[0]} and {arr.shape[0]}"
                )
            np.bitwise_xor(acc, arr, out=acc)
    if acc is None:
        raise ValueError("xor_bytes needs at least one payload")
    return acc.tobytes()


def split_even(payload: bytes, parts: int):
    """Split into `parts` contiguous equal-length pieces."""
    if parts < 1 or len(payload) % parts != 0:
        raise ValueError(f"Cannot split {len(payload)} bytes into {parts} equal pieces")
    size = len(payload) // parts
    return [payload[i * size:(i + 1) * size] for i in range(parts)]


def format_fraction(x: Fraction) -> str:
    """1/3 -> '1/3', 2 -> '2'"""
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def parse_fraction(text: str) -> Fraction:
    return Fraction(text.strip())


def format_decimal(x: Fraction, digits: int = 12) -> str:
    return f"{float(x):.{digits}g}"
