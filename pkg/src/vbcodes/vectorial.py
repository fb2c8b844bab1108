"""(n, m)-functions, component spectra W_F(mu, nu) and vectorial classification.

A function is either a plain vector function (components mu.F(x), characters
nu.x) or a field-version function carrying a :class:`FieldContext`.  In field
mode the top ``m - plain_bits`` output bits form an element of GF(2^n);
component ``mu`` is ``mu_low . F_low(x) + Tr(mu_high * F_high(x))`` and the
character is ``Tr(nu * x)``.  Both pairings are reduced to the dot product via
the trace-dual map, so the same FWHT engine serves both.
"""
from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field as dc_field
from functools import cached_property
from typing import Iterator

import numpy as np

from .boolfun import BooleanFunction, walsh_rows
from .errors import ConstraintViolation
from .gf2 import MAX_N, FieldContext, parity_array

# above this many (mu, nu) entries spectra are streamed row-block by row-block
MATERIALIZE_LOG2 = 26


@dataclass(frozen=True, eq=False)
class VectorialFunction:
    n: int
    m: int
    table: np.ndarray = dc_field(repr=False)
    field: FieldContext | None = None
    plain_bits: int = 0
    family: dict | None = dc_field(default=None, compare=False)

    def __post_init__(self):
        if not 1 <= self.n <= MAX_N:
            raise ConstraintViolation(f"n={self.n} outside 1..{MAX_N}")
        if self.m < 1:
            raise ConstraintViolation("m must be positive")
        t = np.asarray(self.table, dtype=np.int64)
        if t.shape != (1 << self.n,):
            raise ValueError(f"value table must have length 2^{self.n}")
        if np.any(t < 0) or np.any(t >> self.m):
            raise ValueError(f"value table entries must lie in [0, 2^{self.m})")
        t = t.copy()
        t.setflags(write=False)
        object.__setattr__(self, "table", t)
        if self.field is not None:
            if self.field.n != self.n:
                raise ConstraintViolation("field degree must equal n")
            if self.m - self.plain_bits != self.n:
                raise ConstraintViolation("field-version outputs must be plain_bits + n wide")

    @property
    def pairing(self) -> str:
        return "trace" if self.field is not None else "dot"

    def __call__(self, x: int) -> int:
        return int(self.table[x])

    def __eq__(self, other):
        return (isinstance(other, VectorialFunction)
                and (self.n, self.m, self.field, self.plain_bits) == (other.n, other.m, other.field, other.plain_bits)
                and np.array_equal(self.table, other.table))

    def __hash__(self):
        return hash((self.n, self.m, self.table.tobytes()))

    @classmethod
    def from_boolean(cls, f: BooleanFunction) -> "VectorialFunction":
        return cls(f.n, 1, f.table)

    def as_vector(self) -> "VectorialFunction":
        """Same value table read with the dot pairing on inputs and outputs."""
        return VectorialFunction(self.n, self.m, self.table, family=self.family)

    def coordinate(self, j: int) -> BooleanFunction:
        return BooleanFunction(self.n, (self.table >> j) & 1)

    @cached_property
    def output_masks(self) -> np.ndarray:
        """masks[mu] such that component mu equals dot(masks[mu], F(x))."""
        mu = np.arange(1 << self.m, dtype=np.int64)
        if self.field is None:
            return mu
        low = mu & ((1 << self.plain_bits) - 1)
        high = mu >> self.plain_bits
        return low | (self.field.trace_dual_map[high] << self.plain_bits)

    @property
    def input_map(self) -> np.ndarray | None:
        return None if self.field is None else self.field.trace_dual_map

    def character(self, nu: int) -> BooleanFunction:
        """x -> nu.x, or Tr(nu x) in field mode."""
        mask = nu if self.field is None else int(self.field.trace_dual_map[nu])
        return BooleanFunction.linear(self.n, mask)

    def component_tables(self, mus) -> np.ndarray:
        masks = self.output_masks[np.asarray(mus, dtype=np.int64)]
        return parity_array(masks[..., None] & self.table)

    def spectra_rows(self, mus) -> np.ndarray:
        """W_F(mu, .) for each mu in ``mus`` (mu = 0 gives 2^n at nu = 0)."""
        rows = walsh_rows(self.component_tables(mus))
        if self.field is not None:
            rows = np.take(rows, self.field.trace_dual_map, axis=-1)
        return rows


def component(F: VectorialFunction, mu: int) -> BooleanFunction:
    if mu == 0:
        raise ConstraintViolation("the zero component is excluded")
    if not 0 < mu < 1 << F.m:
        raise ValueError(f"mu={mu:#x} is not an {F.m}-bit mask")
    return BooleanFunction(F.n, F.component_tables([mu])[0])


@dataclass(frozen=True, eq=False)
class ComponentSpectra:
    """All W_F(mu, nu); row 0 is the trivial spectrum (2^n at nu = 0)."""

    n: int
    m: int
    values: np.ndarray = dc_field(repr=False)

    def row(self, mu: int) -> np.ndarray:
        if mu == 0:
            raise ConstraintViolation("the zero component is excluded")
        return self.values[mu]

    def __getitem__(self, key):
        return self.values[key]

    @property
    def nonzero(self) -> np.ndarray:
        return self.values[1:]

    @cached_property
    def max_abs_per_row(self) -> np.ndarray:
        return np.abs(self.values).max(axis=1)

    @property
    def max_abs(self) -> int:
        return int(self.max_abs_per_row[1:].max())

    @property
    def max(self) -> int:
        return int(self.values[1:].max())

    @property
    def min(self) -> int:
        return int(self.values[1:].min())


def _block_size(F: VectorialFunction) -> int:
    return max(1, (1 << 22) >> F.n)


def iter_spectra(F: VectorialFunction, start: int = 1, stop: int | None = None,
                 block: int | None = None) -> Iterator[tuple[np.ndarray, np.ndarray]]:
    """Yield ``(mus, rows)`` blocks covering mu in [start, stop)."""
    stop = (1 << F.m) if stop is None else stop
    block = block or _block_size(F)
    ranges = [np.arange(lo, min(stop, lo + block), dtype=np.int64) for lo in range(start, stop, block)]
    workers = thread_count()
    if workers == 1 or len(ranges) == 1:
        for mus in ranges:
            yield mus, F.spectra_rows(mus)
        return
    # disjoint mu-ranges in a pool; map() keeps the merge order fixed
    with ThreadPoolExecutor(workers) as pool:
        for window in range(0, len(ranges), workers):
            chunk = ranges[window:window + workers]
            yield from zip(chunk, pool.map(F.spectra_rows, chunk))


def all_spectra(F: VectorialFunction) -> ComponentSpectra:
    if F.n + F.m > MATERIALIZE_LOG2:
        raise ConstraintViolation(
            f"(2^{F.m}) x (2^{F.n}) spectra exceed the materialisation limit; use iter_spectra")
    vals = np.empty((1 << F.m, 1 << F.n), dtype=np.int64)
    for mus, rows in iter_spectra(F, start=0):
        vals[mus] = rows
    vals.setflags(write=False)
    return ComponentSpectra(F.n, F.m, vals)


@dataclass(frozen=True)
class Classification:
    kind: str  # bent | AB | plateaued | plateaued-mixed | general
    amplitude: int | None
    nonlinearity: int
    amplitudes: tuple[int, ...] = ()

    def __str__(self):
        if self.kind == "plateaued":
            return f"plateaued({self.amplitude})"
        return self.kind


def classify_vectorial(F: VectorialFunction) -> Classification:
    amps: set[int] = set()
    plateaued = True
    max_abs = 0
    for _, rows in iter_spectra(F):
        mags = np.abs(rows)
        max_abs = max(max_abs, int(mags.max()))
        top = mags.max(axis=1)
        # plateaued iff every nonzero magnitude equals the row maximum
        if np.any((mags != 0) & (mags != top[:, None])):
            plateaued = False
        amps.update(int(a) for a in np.unique(top))
    nl = (1 << (F.n - 1)) - max_abs // 2
    if not plateaued:
        return Classification("general", None, nl)
    if len(amps) > 1:
        return Classification("plateaued-mixed", None, nl, tuple(sorted(amps)))
    (amp,) = amps
    if F.n % 2 == 0 and amp == 1 << (F.n // 2):
        kind = "bent"
    elif F.n % 2 == 1 and amp == 1 << ((F.n + 1) // 2):
        kind = "AB"
    else:
        kind = "plateaued"
    return Classification(kind, amp, nl, (amp,))


def nonlinearity(F: VectorialFunction) -> int:
    return classify_vectorial(F).nonlinearity


def thread_count() -> int:
    try:
        return max(1, int(os.environ.get("VBCODES_THREADS", "1")))
    except ValueError:
        return 1
