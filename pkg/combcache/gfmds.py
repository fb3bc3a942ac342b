"""
GF(2^w) arithmetic and a systematic MDS erasure code.

Field: GF(2^8) with x^8 + x^4 + x^3 + x^2 + 1 (0x11D) and GF(2^16) with
x^16 + x^12 + x^3 + x + 1 (0x1100B); in both, alpha = 2 generates the
multiplicative group. Elements are plain integers, addition is XOR.

Code: the generator is [I_k ; C] where C is the (n - k) x k Cauchy matrix
C[p][j] = 1 / (x_p + y_j) with y_j = j and x_p = k + p. Every square
submatrix of a Cauchy matrix is invertible, so any k coded symbols determine
the message. Symbols 1..k are systematic. A w=16 symbol is a big-endian byte
pair. See docs/codec.md.
"""

import functools
from dataclasses import dataclass
from typing import Dict, Iterable, List, Sequence

import numpy as np

FieldElement = int

POLYNOMIALS = {8: 0x11D, 16: 0x1100B}
MAX_N = (1 << 16) - 1


class MdsParameterError(ValueError):
    pass


class InsufficientSymbolsError(ValueError):
    pass


class DuplicateSymbolError(ValueError):
    pass


class GaloisField:
    def __init__(self, w: int):
        if w not in POLYNOMIALS:
            raise MdsParameterError(f"Unsupported word size w={w}")
        self.w = w
        self.order = 1 << w
        self.q = self.order - 1
        self.polynomial = POLYNOMIALS[w]
        self.exp_table, self.log_table = self._build_tables()

    def _build_tables(self):
        exp = [0] * (2 * self.q)
        log = [0] * self.order
        x = 1
        for i in range(self.q):
            exp[i] = x
            log[x] = i
            x <<= 1
            if x & self.order:
                x ^= self.polynomial
        for i in range(self.q, 2 * self.q):
            exp[i] = exp[i - self.q]

        exp = np.array(exp, dtype=np.int64)
        log = np.array(log, dtype=np.int64)
        # alpha must generate every nonzero element.
        assert len(np.unique(exp[: self.q])) == self.q, "polynomial is not primitive"
        return exp, log

    def add(self, a, b):
        return np.bitwise_xor(a, b)

    def mul(self, a, b):
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        res = self.exp_table[self.log_table[a] + self.log_table[b]]
        return np.where((a == 0) | (b == 0), 0, res)

    def inverse(self, a):
        a = np.asarray(a, dtype=np.int64)
        if np.any(a == 0):
            raise ZeroDivisionError("0 has no inverse")
        return self.exp_table[(self.q - self.log_table[a]) % self.q]

    def matmul(self, A, X):
        """A (m x k) times X (k x L) over the field."""
        A = np.asarray(A, dtype=np.int64)
        X = np.asarray(X, dtype=np.int64)
        out = np.zeros((A.shape[0], X.shape[1]), dtype=np.int64)
        logA = self.log_table[A]
        logX = self.log_table[X]
        for j in range(A.shape[1]):
            prod = self.exp_table[logA[:, j, None] + logX[None, j, :]]
            prod[(A[:, j] == 0)[:, None] | (X[j] == 0)[None, :]] = 0
            np.bitwise_xor(out, prod, out=out)
        return out

    def cauchy(self, x, y):
        """C[i][j] = 1 / (x_i + y_j); x and y must be disjoint."""
        x = np.asarray(x, dtype=np.int64)
        y = np.asarray(y, dtype=np.int64)
        return self.inverse(x[:, None] ^ y[None, :])

    def cauchy_inverse(self, x, y):
        """Inverse of the square Cauchy matrix cauchy(x, y), in closed form.

        Rows of the result are indexed by y, columns by x.
        """
        x = np.asarray(x, dtype=np.int64)
        y = np.asarray(y, dtype=np.int64)
        log = self.log_table

        l_yx = log[y[:, None] ^ x[None, :]]
        l_xx = log[x[:, None] ^ x[None, :]]
        l_yy = log[y[:, None] ^ y[None, :]]
        np.fill_diagonal(l_xx, 0)
        np.fill_diagonal(l_yy, 0)

        s_yx = l_yx.sum(axis=1)
        s_xy = l_yx.sum(axis=0)
        s_xx = l_xx.sum(axis=1)
        s_yy = l_yy.sum(axis=1)

        logb = (
            s_yx[:, None] + s_xy[None, :] - l_yx - s_xx[None, :] - s_yy[:, None]
        ) % self.q
        return self.exp_table[logb]


@functools.lru_cache(maxsize=None)
def field(w: int) -> GaloisField:
    return GaloisField(w)


def symbol_width(w: int) -> int:
    return w // 8


def _dtype(w: int):
    return np.dtype(np.uint8) if w == 8 else np.dtype(">u2")


def to_symbols(payload: bytes, w: int) -> np.ndarray:
    if len(payload) % symbol_width(w) != 0:
        raise MdsParameterError(
            f"Payload of {len(payload)} bytes is not a whole number of w={w} symbols"
        )
    return np.frombuffer(payload, dtype=_dtype(w)).astype(np.int64)


def from_symbols(symbols: np.ndarray, w: int) -> bytes:
    return np.asarray(symbols).astype(_dtype(w)).tobytes()


@dataclass(frozen=True)
class MdsCode:
    n: int
    k: int
    w: int = 8

    def __post_init__(self):
        if self.w not in POLYNOMIALS:
            raise MdsParameterError(f"Unsupported word size w={self.w}")
        if not (1 <= self.k <= self.n):
            raise MdsParameterError(f"Need 1 <= k <= n, got n={self.n}, k={self.k}")
        if self.n > (1 << self.w) - 1:
            raise MdsParameterError(f"n={self.n} exceeds 2^{self.w} - 1")

    @classmethod
    def for_parameters(cls, n: int, k: int) -> "MdsCode":
        """Smallest supported word size that fits n."""
        if n > MAX_N:
            raise MdsParameterError(f"n={n} exceeds {MAX_N}")
        return cls(n=n, k=k, w=8 if n <= 255 else 16)

    @property
    def symbol_bytes(self) -> int:
        return symbol_width(self.w)


@dataclass(frozen=True)
class CodedSymbolBlock:
    index: int  # 1..n
    payload: bytes


@functools.lru_cache(maxsize=32)
def _parity_matrix(n: int, k: int, w: int) -> np.ndarray:
    gf = field(w)
    return gf.cauchy(np.arange(k, n), np.arange(k))


def mds_encode(code: MdsCode, message: Sequence[bytes]) -> List[CodedSymbolBlock]:
    if len(message) != code.k:
        raise MdsParameterError(f"Expected {code.k} message pieces, got {len(message)}")
    lengths = {len(p) for p in message}
    if len(lengths) != 1:
        raise MdsParameterError(f"Message pieces have unequal lengths: {sorted(lengths)}")
    L = lengths.pop()
    if L < 1:
        raise MdsParameterError("Message pieces must be at least one byte")

    blocks = [CodedSymbolBlock(index=i + 1, payload=bytes(p)) for i, p in enumerate(message)]
    if code.n == code.k:
        return blocks

    gf = field(code.w)
    M = np.stack([to_symbols(p, code.w) for p in message])
    parity = gf.matmul(_parity_matrix(code.n, code.k, code.w), M)
    for p in range(code.n - code.k):
        blocks.append(
            CodedSymbolBlock(index=code.k + p + 1, payload=from_symbols(parity[p], code.w))
        )
    return blocks


def mds_decode(code: MdsCode, blocks: Iterable[CodedSymbolBlock]) -> List[bytes]:
    available: Dict[int, bytes] = {}
    for block in blocks:
        if not 1 <= block.index <= code.n:
            raise MdsParameterError(f"Symbol index {block.index} not in [1..{code.n}]")
        if block.index in available:
            raise DuplicateSymbolError(f"Symbol index {block.index} given twice")
        available[block.index] = block.payload

    if len(available) < code.k:
        raise InsufficientSymbolsError(
            f"Need {code.k} distinct symbols to decode, got {len(available)}"
        )
    lengths = {len(p) for p in available.values()}
    if len(lengths) != 1:
        raise MdsParameterError(f"Symbols have unequal lengths: {sorted(lengths)}")

    known = sorted(i - 1 for i in available if i <= code.k)
    missing = sorted(set(range(code.k)) - set(known))
    message = {j: available[j + 1] for j in known}
    if not missing:
        return [message[j] for j in range(code.k)]

    gf = field(code.w)
    parity_rows = sorted(i - 1 for i in available if i > code.k)[: len(missing)]
    x = np.array(parity_rows, dtype=np.int64)
    rhs = np.stack([to_symbols(available[i + 1], code.w) for i in parity_rows])
    if known:
        M_known = np.stack([to_symbols(message[j], code.w) for j in known])
        rhs = rhs ^ gf.matmul(gf.cauchy(x, known), M_known)

    recovered = gf.matmul(gf.cauchy_inverse(x, missing), rhs)
    for pos, j in enumerate(missing):
        message[j] = from_symbols(recovered[pos], code.w)
    return [message[j] for j in range(code.k)]
