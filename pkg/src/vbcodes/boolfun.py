"""Boolean functions as truth tables and their Walsh-Hadamard spectra.

Index convention: the truth-table index of ``x`` is its integer value, and bit
``i`` of that integer is coordinate ``x_{i+1}``.  All spectra are exact int64.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Callable, Iterable, Sequence

import numpy as np

from .errors import ConstraintViolation
from .gf2 import MAX_N, Subspace, dot_array, dual_subspace


def fwht_inplace(a: np.ndarray) -> np.ndarray:
    """Unnormalised radix-2 Hadamard butterfly along the last axis (in place)."""
    size = a.shape[-1]
    lead = a.shape[:-1]
    h = 1
    while h < size:
        v = a.reshape(*lead, size // (2 * h), 2, h)
        lo = v[..., 0, :].copy()
        hi = v[..., 1, :]
        v[..., 0, :] += hi
        lo -= hi
        v[..., 1, :] = lo
        h *= 2
    return a


@lru_cache(maxsize=None)
def _hadamard(k: int) -> np.ndarray:
    H = np.ones((1, 1), dtype=np.float32)
    for _ in range(k):
        H = np.block([[H, H], [H, -H]])
    H.setflags(write=False)
    return H


def hadamard_transform(a: np.ndarray) -> np.ndarray:
    """Hadamard transform along the last axis, returned as a new int64 array.

    Sign inputs (entries in {-1, 0, 1}) go through two float32 matrix products,
    which are exact because every partial sum stays below 2^24; anything else
    falls back to the integer butterfly.
    """
    a = np.asarray(a)
    size = a.shape[-1]
    k = size.bit_length() - 1
    if k < 4 or k > 16 or (a.size and np.abs(a).max() > 1):
        return fwht_inplace(np.array(a, dtype=np.int64))
    lo = k // 2
    x = a.astype(np.float32).reshape(*a.shape[:-1], 1 << (k - lo), 1 << lo)
    x = _hadamard(k - lo) @ (x @ _hadamard(lo))
    return np.rint(x).astype(np.int64).reshape(a.shape)


def signs(table: np.ndarray) -> np.ndarray:
    """(-1)^f as int64, for one table or a stack of tables."""
    return 1 - 2 * np.asarray(table, dtype=np.int64)


def walsh_rows(tables: np.ndarray) -> np.ndarray:
    """Spectra of a stack of truth tables (last axis indexed by x)."""
    return hadamard_transform(signs(tables))


def walsh_naive(table: Sequence[int]) -> np.ndarray:
    """Direct O(4^n) double sum; the reference the butterfly is tested against."""
    table = np.asarray(table, dtype=np.int64)
    size = table.size
    x = np.arange(size, dtype=np.int64)
    out = np.empty(size, dtype=np.int64)
    for nu in range(size):
        out[nu] = int(np.sum(1 - 2 * ((table + dot_array(x, nu)) & 1)))
    return out


def xor_convolve(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """c[z] = sum_{x ^ y = z} a[x] b[y], exact for integer inputs."""
    size = a.shape[-1]
    ha = fwht_inplace(np.array(a, dtype=np.int64))
    hb = fwht_inplace(np.array(b, dtype=np.int64))
    c = fwht_inplace(ha * hb)
    return c // size


def _n_of(size: int) -> int:
    n = size.bit_length() - 1
    if size != 1 << n:
        raise ValueError(f"table length {size} is not a power of two")
    return n


@dataclass(frozen=True, eq=False)
class WalshSpectrum:
    n: int
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        if self.values.shape != (1 << self.n,):
            raise ValueError("spectrum length must be 2^n")

    def __getitem__(self, nu):
        return self.values[nu]

    def __eq__(self, other):
        return isinstance(other, WalshSpectrum) and np.array_equal(self.values, other.values)

    def __hash__(self):
        return hash(self.values.tobytes())

    @property
    def max_abs(self) -> int:
        return int(np.abs(self.values).max())

    def parseval_ok(self) -> bool:
        return int(np.sum(self.values * self.values)) == 1 << (2 * self.n)

    def value_counts(self) -> dict[int, int]:
        vals, counts = np.unique(self.values, return_counts=True)
        return {int(v): int(c) for v, c in zip(vals, counts)}


@dataclass(frozen=True, eq=False)
class BooleanFunction:
    n: int
    table: np.ndarray = field(repr=False)

    def __post_init__(self):
        t = np.asarray(self.table, dtype=np.uint8)
        if t.shape != (1 << self.n,):
            raise ValueError(f"truth table must have length 2^{self.n}, got {t.shape}")
        if np.any(t > 1):
            raise ValueError("truth table entries must be 0 or 1")
        t = t.copy()
        t.setflags(write=False)
        object.__setattr__(self, "table", t)

    @classmethod
    def from_table(cls, table: Sequence[int]) -> "BooleanFunction":
        table = np.asarray(table, dtype=np.uint8)
        return cls(_n_of(table.size), table)

    @classmethod
    def from_callable(cls, n: int, fn: Callable[[int], int]) -> "BooleanFunction":
        return cls(n, np.array([fn(x) & 1 for x in range(1 << n)], dtype=np.uint8))

    @classmethod
    def zero(cls, n: int) -> "BooleanFunction":
        return cls(n, np.zeros(1 << n, dtype=np.uint8))

    @classmethod
    def linear(cls, n: int, a: int, c: int = 0) -> "BooleanFunction":
        return cls(n, dot_array(np.arange(1 << n), a) ^ (c & 1))

    @classmethod
    def indicator(cls, E: Subspace) -> "BooleanFunction":
        return cls(E.n, E.indicator())

    @classmethod
    def from_hex(cls, n: int, text: str) -> "BooleanFunction":
        value = int(text, 16)
        if value >> (1 << n):
            raise ValueError("hex truth table longer than 2^n bits")
        bits = np.array([(value >> x) & 1 for x in range(1 << n)], dtype=np.uint8)
        return cls(n, bits)

    def to_hex(self) -> str:
        value = int.from_bytes(np.packbits(self.table, bitorder="little").tobytes(), "little")
        width = max(1, (1 << self.n) // 4)
        return f"{value:0{width}x}"

    def __call__(self, x: int) -> int:
        return int(self.table[x])

    def __eq__(self, other):
        return isinstance(other, BooleanFunction) and self.n == other.n and np.array_equal(self.table, other.table)

    def __hash__(self):
        return hash((self.n, self.table.tobytes()))

    def _same_n(self, other: "BooleanFunction") -> None:
        if self.n != other.n:
            raise ValueError(f"dimension mismatch: {self.n} vs {other.n}")

    def __add__(self, other):
        if isinstance(other, int):
            return BooleanFunction(self.n, self.table ^ (other & 1))
        self._same_n(other)
        return BooleanFunction(self.n, self.table ^ other.table)

    __radd__ = __add__
    __xor__ = __add__

    def __mul__(self, other: "BooleanFunction") -> "BooleanFunction":
        self._same_n(other)
        return BooleanFunction(self.n, self.table & other.table)

    @property
    def weight(self) -> int:
        return int(self.table.sum())

    @cached_property
    def spectrum(self) -> WalshSpectrum:
        return fwht(self)

    def anf(self) -> np.ndarray:
        return mobius(self.table)

    @property
    def degree(self) -> int:
        return degree(self)

    def is_affine(self) -> bool:
        return self.degree <= 1


def fwht(f: BooleanFunction) -> WalshSpectrum:
    vals = walsh_rows(f.table)
    vals.setflags(write=False)
    return WalshSpectrum(f.n, vals)


def mobius(table: np.ndarray) -> np.ndarray:
    a = np.array(table, dtype=np.uint8)
    size = a.size
    h = 1
    while h < size:
        v = a.reshape(size // (2 * h), 2, h)
        v[:, 1, :] ^= v[:, 0, :]
        h *= 2
    return a


def degree(f: BooleanFunction) -> int:
    anf = mobius(f.table)
    idx = np.flatnonzero(anf)
    if idx.size == 0:
        return 0
    return int(np.bitwise_count(idx).max())


def nonlinearity(f: BooleanFunction) -> int:
    return (1 << (f.n - 1)) - f.spectrum.max_abs // 2 if f.n else 0


def plateaued_amplitude(f: BooleanFunction) -> int | None:
    """Amplitude L if every W_f(v) is in {0, +-L}, else None."""
    mags = np.unique(np.abs(f.spectrum.values))
    mags = mags[mags != 0]
    return int(mags[0]) if mags.size == 1 else None


def is_bent(f: BooleanFunction) -> bool:
    return f.n % 2 == 0 and bool(np.all(np.abs(f.spectrum.values) == 1 << (f.n // 2)))


class SignProfile(str, enum.Enum):
    ALL_NONNEG = "all_nonneg"
    ALL_NONPOS = "all_nonpos"
    MIXED = "mixed"


def sign_profile(f: BooleanFunction) -> SignProfile:
    w = f.spectrum.values
    if np.all(w >= 0):
        return SignProfile.ALL_NONNEG
    if np.all(w <= 0):
        return SignProfile.ALL_NONPOS
    return SignProfile.MIXED


def indicator_sum(subspaces: Sequence[Subspace]) -> BooleanFunction:
    n = subspaces[0].n
    t = np.zeros(1 << n, dtype=np.uint8)
    for E in subspaces:
        t ^= E.indicator()
    return BooleanFunction(n, t)


def indicator_sum_walsh(spread, indices: Iterable[int]) -> WalshSpectrum:
    """Closed-form spectrum of the F_2-sum of spread-member indicators.

    Valid whenever the chosen t-dimensional subspaces of F_2^(2t) meet pairwise
    in {0} and so do their duals (true for members of a spread).
    """
    members = spread.subspaces if hasattr(spread, "subspaces") else spread
    indices = sorted(set(indices))
    if not indices:
        raise ConstraintViolation("indicator sum needs at least one subspace")
    chosen = [members[i] for i in indices]
    n = chosen[0].n
    t = n // 2
    if n != 2 * t or any(E.dim != t for E in chosen):
        raise ConstraintViolation("indicator sums need t-dimensional subspaces of F_2^(2t)")
    s = len(chosen)
    f0 = s & 1
    in_dual = np.zeros(1 << n, dtype=bool)
    for E in chosen:
        in_dual |= dual_subspace(E).members
    w = np.full(1 << n, 2 * s - 2 * f0, dtype=np.int64)
    w[in_dual] = -(1 << (t + 1)) + 2 * s - 2 * f0
    w[0] = (1 << n) - 2 * s * ((1 << t) - 1) - 2 * f0
    w.setflags(write=False)
    return WalshSpectrum(n, w)


def combine3(phi1: BooleanFunction, phi2: BooleanFunction, phi3: BooleanFunction
             ) -> tuple[BooleanFunction, WalshSpectrum]:
    """Majority of three functions, with its spectrum predicted from the inputs.

    W_maj = (W_1 + W_2 + W_3 - W_4) / 2 where phi4 = phi1 + phi2 + phi3.
    """
    phi1._same_n(phi2)
    phi1._same_n(phi3)
    maj = phi1 * phi2 + phi1 * phi3 + phi2 * phi3
    phi4 = phi1 + phi2 + phi3
    total = phi1.spectrum.values + phi2.spectrum.values + phi3.spectrum.values - phi4.spectrum.values
    pred = total // 2
    pred.setflags(write=False)
    return maj, WalshSpectrum(phi1.n, pred)


def check_n(n: int) -> None:
    if not 1 <= n <= MAX_N:
        raise ConstraintViolation(f"n={n} outside 1..{MAX_N}")
