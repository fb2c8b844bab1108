"""Linear codes C_F built from an (n, m)-function and their weight distributions.

Message index of codeword c(mu, nu) is ``mu | nu << m`` (plus ``lam << (m+n)``
for the augmented code), i.e. bit b of the index selects generator row b.
Coordinate j of a codeword is the value at x = j + 1 (x = j when augmented).
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Iterator

import numpy as np

from .errors import BudgetExceeded, ConstraintViolation, VerificationFailure
from .gf2 import rank
from .vectorial import VectorialFunction, iter_spectra

ENUMERATE_MAX_K = 24
SAMPLE_COUNT = 100_000


def _pack(bits: np.ndarray) -> np.ndarray:
    """Bit array (..., N) -> little-endian uint64 words (..., ceil(N/64))."""
    N = bits.shape[-1]
    W = (N + 63) // 64
    padded = np.zeros(bits.shape[:-1] + (W * 64,), dtype=np.uint8)
    padded[..., :N] = bits
    packed = np.packbits(padded, axis=-1, bitorder="little")
    return packed.view("<u8").reshape(bits.shape[:-1] + (W,))


@dataclass(frozen=True, eq=False)
class LinearCode:
    function: VectorialFunction
    augmented: bool = False
    rows_bits: np.ndarray = dc_field(repr=False, default=None)

    @property
    def n(self) -> int:
        return self.function.n

    @property
    def m(self) -> int:
        return self.function.m

    @property
    def pairing(self) -> str:
        return self.function.pairing

    @property
    def length(self) -> int:
        return (1 << self.n) - (0 if self.augmented else 1)

    @property
    def dimension(self) -> int:
        return self.m + self.n + (1 if self.augmented else 0)

    k = dimension

    @property
    def xs(self) -> np.ndarray:
        return np.arange(0 if self.augmented else 1, 1 << self.n, dtype=np.int64)

    @property
    def words(self) -> np.ndarray:
        """Generator rows packed into uint64 words, shape (k, W)."""
        return _pack(self.rows_bits)

    def row_ints(self) -> list[int]:
        out = []
        for row in self.rows_bits:
            out.append(int.from_bytes(np.packbits(row, bitorder="little").tobytes(), "little"))
        return out

    def generator_hex(self) -> list[str]:
        width = (self.length + 3) // 4
        return [f"{r:0{width}x}" for r in self.row_ints()]

    def codeword_bits(self, index: int) -> np.ndarray:
        if not 0 <= index < 1 << self.dimension:
            raise ValueError(f"message index {index} out of range")
        out = np.zeros(self.length, dtype=np.uint8)
        for b in range(self.dimension):
            if index >> b & 1:
                out ^= self.rows_bits[b]
        return out

    def message_index(self, mu: int, nu: int, lam: int = 0) -> int:
        if not 0 <= mu < 1 << self.m or not 0 <= nu < 1 << self.n:
            raise ValueError("(mu, nu) out of range")
        if lam and not self.augmented:
            raise ValueError("constant term only exists in the augmented code")
        return mu | nu << self.m | (lam & 1) << (self.m + self.n)

    def split_index(self, index: int) -> tuple[int, int, int]:
        m, n = self.m, self.n
        return index & ((1 << m) - 1), (index >> m) & ((1 << n) - 1), index >> (m + n)


@dataclass(frozen=True, eq=False)
class PlainCode:
    """A binary code given only by generator rows (no underlying function)."""

    rows_bits: np.ndarray = dc_field(repr=False)

    @classmethod
    def from_rows(cls, rows: list[str] | list[list[int]]) -> "PlainCode":
        bits = np.array([[int(c) for c in r] for r in rows], dtype=np.uint8)
        if rank(int("".join(map(str, r[::-1])), 2) for r in bits) != len(bits):
            raise ConstraintViolation("generator rows are linearly dependent")
        bits.setflags(write=False)
        return cls(bits)

    @property
    def length(self) -> int:
        return self.rows_bits.shape[1]

    @property
    def dimension(self) -> int:
        return self.rows_bits.shape[0]

    @property
    def words(self) -> np.ndarray:
        return _pack(self.rows_bits)

    codeword_bits = LinearCode.codeword_bits


def build_code(F: VectorialFunction, pairing: str | None = None, augmented: bool = False) -> LinearCode:
    """Generator matrix of C_F; refuses F(0) != 0 and linear components."""
    if pairing is not None and pairing != F.pairing:
        raise ConstraintViolation(f"function carries the {F.pairing} pairing, not {pairing}")
    if F(0) != 0:
        raise ConstraintViolation("F(0) must be 0")
    full = 1 << F.n
    for mus, rows in iter_spectra(F):
        hit = np.flatnonzero(np.abs(rows).max(axis=1) == full)
        if hit.size:
            raise ConstraintViolation(f"component mu={int(mus[hit[0]]):#x} is linear; dimension claim fails")
    xs = np.arange(0 if augmented else 1, full, dtype=np.int64)
    unit_mu = [1 << j for j in range(F.m)]
    rows = [F.component_tables(unit_mu)[:, xs]]
    rows.append(np.stack([F.character(1 << j).table[xs] for j in range(F.n)]))
    if augmented:
        rows.append(np.ones((1, xs.size), dtype=np.uint8))
    bits = np.concatenate(rows).astype(np.uint8)
    bits.setflags(write=False)
    code = LinearCode(F, augmented, bits)
    r = rank(code.row_ints())
    if r != code.dimension:
        raise VerificationFailure(f"generator rank {r} differs from claimed dimension {code.dimension}")
    return code


# ---------------------------------------------------------------- weights

def walsh_weight_matrix(F: VectorialFunction) -> np.ndarray:
    """wt(c(mu, nu)) as a (2^m, 2^n) array from the spectra."""
    half = 1 << (F.n - 1)
    out = np.empty((1 << F.m, 1 << F.n), dtype=np.int64)
    for mus, rows in iter_spectra(F, start=0):
        out[mus] = half - rows // 2
    return out


def walsh_weights_by_index(code: LinearCode) -> np.ndarray:
    """Weight of every codeword by message index, from the Walsh formula."""
    w = walsh_weight_matrix(code.function)
    # row mu = 0 gives 2^(n-1) - 2^(n-1) = 0 at nu = 0 and 2^(n-1) elsewhere
    flat = w.T.reshape(-1)  # index nu * 2^m + mu
    if code.augmented:
        flat = np.concatenate([flat, (1 << code.n) - flat])
    return flat


def codeword_weight(code: LinearCode, mu: int, nu: int, lam: int = 0, route: str = "walsh") -> int:
    idx = code.message_index(mu, nu, lam)
    if route == "popcount":
        return int(code.codeword_bits(idx).sum())
    if route != "walsh":
        raise ValueError(f"unknown route {route!r}")
    n = code.n
    if mu == 0:
        w = 0 if nu == 0 else 1 << (n - 1)
    else:
        W = int(code.function.spectra_rows([mu])[0][nu])
        w = (1 << (n - 1)) - W // 2
    return (1 << n) - w if lam else w


def iter_codeword_words(code: LinearCode, low_bits: int | None = None
                        ) -> Iterator[tuple[int, np.ndarray]]:
    """Yield (first_index, packed words) for consecutive blocks of codewords."""
    k = code.dimension
    words = code.words
    L = min(k, low_bits if low_bits is not None else 16)
    low = np.zeros((1, words.shape[1]), dtype=np.uint64)
    for b in range(L):
        low = np.concatenate([low, low ^ words[b]])
    for h in range(1 << (k - L)):
        acc = np.zeros(words.shape[1], dtype=np.uint64)
        for b in range(k - L):
            if h >> b & 1:
                acc ^= words[L + b]
        yield h << L, low ^ acc


def popcount_weights(code: LinearCode) -> np.ndarray:
    k = code.dimension
    if k > ENUMERATE_MAX_K:
        raise BudgetExceeded(f"k={k} exceeds the enumeration budget {ENUMERATE_MAX_K}")
    out = np.empty(1 << k, dtype=np.int64)
    for start, block in iter_codeword_words(code):
        out[start:start + block.shape[0]] = np.bitwise_count(block).sum(axis=1)
    return out


def popcount_weights_at(code: LinearCode, indices: np.ndarray) -> np.ndarray:
    """Popcount weights of selected codewords (XOR of packed rows per index bit)."""
    indices = np.asarray(indices, dtype=np.int64)
    words = code.words
    acc = np.zeros((indices.size, words.shape[1]), dtype=np.uint64)
    for b in range(code.dimension):
        sel = (indices >> b) & 1 == 1
        acc[sel] ^= words[b]
    return np.bitwise_count(acc).sum(axis=1).astype(np.int64)


@dataclass(frozen=True)
class WeightDistribution:
    freq: dict[int, int]
    verified: str = "none"  # full | sampled | none | closed-form

    @property
    def total(self) -> int:
        return sum(self.freq.values())

    @property
    def nonzero_weights(self) -> list[int]:
        return sorted(w for w, c in self.freq.items() if w and c)

    @property
    def w_min(self) -> int:
        return self.nonzero_weights[0]

    @property
    def w_max(self) -> int:
        return self.nonzero_weights[-1]

    @property
    def d(self) -> int:
        return self.w_min

    def enumerator(self) -> str:
        terms = []
        for w in sorted(self.freq):
            c = self.freq[w]
            if c == 0:
                continue
            if w == 0:
                terms.append(str(c))
            else:
                terms.append(f"{'' if c == 1 else c}z^{w}")
        return "+".join(terms)

    def to_csv(self) -> str:
        lines = ["weight,frequency"]
        lines += [f"{w},{self.freq[w]}" for w in sorted(self.freq)]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_csv(cls, text: str) -> "WeightDistribution":
        rows = text.strip().splitlines()
        if not rows or rows[0].strip() != "weight,frequency":
            raise ValueError("missing weight,frequency header")
        freq = {}
        for line in rows[1:]:
            w, c = line.split(",")
            freq[int(w)] = int(c)
        return cls(freq)

    @classmethod
    def from_weights(cls, weights: np.ndarray, verified: str = "none") -> "WeightDistribution":
        vals, counts = np.unique(weights, return_counts=True)
        return cls({int(v): int(c) for v, c in zip(vals, counts)}, verified)

    def same_counts(self, other: "WeightDistribution") -> bool:
        a = {w: c for w, c in self.freq.items() if c}
        b = {w: c for w, c in other.freq.items() if c}
        return a == b

    def ratio(self) -> Fraction:
        return Fraction(self.w_min, self.w_max)


def weight_distribution(code: LinearCode, samples: int = SAMPLE_COUNT, seed: int = 0,
                        full_limit: int = ENUMERATE_MAX_K) -> WeightDistribution:
    """Walsh-route distribution, checked codeword by codeword against popcounts.

    Every codeword is enumerated when k <= full_limit; otherwise ``samples``
    random message indices are compared.
    """
    walsh = walsh_weights_by_index(code)
    k = code.dimension
    if k <= full_limit:
        pop = popcount_weights(code)
        bad = np.flatnonzero(pop != walsh)
        verified = "full"
    else:
        rng = np.random.default_rng(seed)
        idx = rng.integers(0, 1 << k, size=samples, dtype=np.int64)
        pop = popcount_weights_at(code, idx)
        bad = idx[pop != walsh[idx]]
        verified = "sampled"
    if bad.size:
        raise VerificationFailure(f"Walsh and popcount weights disagree at message index {int(bad[0])}")
    dist = WeightDistribution.from_weights(walsh, verified)
    if dist.total != 1 << k or dist.freq.get(0) != 1:
        raise VerificationFailure("weight distribution does not account for 2^k codewords exactly once at 0")
    return dist


def parameters(code: LinearCode, dist: WeightDistribution) -> str:
    return f"[{code.length},{code.dimension},{dist.d}]"
