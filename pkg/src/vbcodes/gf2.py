"""Arithmetic over F_2^n (vectors as integers) and GF(2^n).

Vectors are plain ints: bit ``i`` is coordinate ``i``.  Field elements use the
polynomial basis ``1, a, ..., a^(n-1)`` with the same bit convention, so a field
element and its coordinate vector are the same integer.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from functools import cached_property, lru_cache
from typing import Iterable, Sequence

import numpy as np

from .errors import ConstraintViolation

MAX_N = 16

# Irreducible moduli for GF(2^n).  Every entry is re-verified on load.
DEFAULT_MODULI = {
    1: 0x3,
    2: 0x7,
    3: 0xB,
    4: 0x13,
    5: 0x25,
    6: 0x43,
    7: 0x83,
    8: 0x11B,
    9: 0x211,
    10: 0x409,
    11: 0x805,
    12: 0x1053,
    13: 0x201B,
    14: 0x4443,
    15: 0x8003,
    16: 0x1100B,
}


def popcount(x: int) -> int:
    return x.bit_count()


def dot(u: int, v: int, n: int | None = None) -> int:
    """Standard inner product on F_2^n: parity of ``u & v``."""
    if n is not None and (u >> n or v >> n):
        raise ValueError(f"vector out of range for n={n}: {u:#x}, {v:#x}")
    if u < 0 or v < 0:
        raise ValueError("vectors must be non-negative")
    return (u & v).bit_count() & 1


def parity_array(x: np.ndarray) -> np.ndarray:
    return (np.bitwise_count(x) & 1).astype(np.uint8)


def dot_array(u, v) -> np.ndarray:
    """Elementwise (broadcast) inner product of integer-encoded vectors."""
    return parity_array(np.bitwise_and(np.asarray(u, dtype=np.int64), np.asarray(v, dtype=np.int64)))


def rank(vectors: Iterable[int]) -> int:
    return len(echelon(vectors))


def echelon(vectors: Iterable[int]) -> list[int]:
    """Reduced XOR basis of the span, one vector per leading bit (descending)."""
    pivots: dict[int, int] = {}
    for v in vectors:
        while v:
            top = v.bit_length() - 1
            if top not in pivots:
                pivots[top] = v
                break
            v ^= pivots[top]
    return [pivots[k] for k in sorted(pivots, reverse=True)]


# ---------------------------------------------------------------- polynomials

def clmul(a: int, b: int) -> int:
    r = 0
    while b:
        if b & 1:
            r ^= a
        a <<= 1
        b >>= 1
    return r


def poly_mod(a: int, m: int) -> int:
    dm = m.bit_length() - 1
    while a and a.bit_length() - 1 >= dm:
        a ^= m << (a.bit_length() - 1 - dm)
    return a


def is_irreducible(poly: int) -> bool:
    """Exhaustive trial division by every polynomial of degree 1..deg/2."""
    deg = poly.bit_length() - 1
    if deg < 1:
        return False
    for d in range(2, 1 << (deg // 2 + 1)):
        if poly_mod(poly, d) == 0:
            return False
    return True


def _prime_factors(x: int) -> list[int]:
    out, p = [], 2
    while p * p <= x:
        if x % p == 0:
            out.append(p)
            while x % p == 0:
                x //= p
        p += 1
    if x > 1:
        out.append(x)
    return out


# ---------------------------------------------------------------- field

@dataclass(frozen=True, eq=False)
class FieldContext:
    """GF(2^n) with log/antilog tables built from a verified irreducible modulus."""

    n: int
    modulus: int
    exp: np.ndarray = dc_field(repr=False)
    log: np.ndarray = dc_field(repr=False)

    @property
    def order(self) -> int:
        return 1 << self.n

    def __eq__(self, other):
        return isinstance(other, FieldContext) and (self.n, self.modulus) == (other.n, other.modulus)

    def __hash__(self):
        return hash((self.n, self.modulus))

    def _check(self, *xs: int) -> None:
        for x in xs:
            if not 0 <= x < self.order:
                raise ValueError(f"{x} is not an element of GF(2^{self.n})")

    def mul(self, a: int, b: int) -> int:
        self._check(a, b)
        if a == 0 or b == 0:
            return 0
        return int(self.exp[int(self.log[a]) + int(self.log[b])])

    def pow(self, a: int, e: int) -> int:
        self._check(a)
        if e == 0:
            return 1
        if a == 0:
            return 0
        return int(self.exp[(int(self.log[a]) * e) % (self.order - 1)])

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("0 has no inverse")
        return self.pow(a, self.order - 2)

    def mul_array(self, a, b) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        out = self.exp[self.log[a] + self.log[b]]
        return np.where((a == 0) | (b == 0), 0, out)

    def pow_array(self, a, e: int) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        if e == 0:
            return np.ones_like(a)
        out = self.exp[(self.log[a] * e) % (self.order - 1)]
        return np.where(a == 0, 0, out)

    def trace(self, x: int, r: int = 1, k: int | None = None) -> int:
        """Tr_r^k(x) = x + x^(2^r) + ... + x^(2^(k-r)); lands in the subfield GF(2^r).

        ``k`` defaults to n; for k < n, x must lie in the subfield GF(2^k).
        """
        k = self.n if k is None else k
        if r <= 0 or k <= 0 or k % r or self.n % k:
            raise ValueError(f"need r | k | n, got r={r}, k={k}, n={self.n}")
        self._check(x)
        if k != self.n and self.pow(x, 1 << k) != x:
            raise ValueError(f"{x:#x} is not in the subfield GF(2^{k})")
        acc, y = 0, x
        for _ in range(k // r):
            acc ^= y
            y = self.pow(y, 1 << r)
        return acc

    @cached_property
    def trace_mask(self) -> int:
        """Mask ``t`` with Tr_1^n(x) = parity(x & t)."""
        return sum(self.trace(1 << i) << i for i in range(self.n))

    def trace_array(self, x) -> np.ndarray:
        return parity_array(np.asarray(x, dtype=np.int64) & self.trace_mask)

    @cached_property
    def trace_dual_map(self) -> np.ndarray:
        """``L[v]`` with Tr_1^n(v*x) = dot(L[v], x) for every x.

        Bit i of L[v] is Tr(v * a^i).  L is a linear bijection because the
        trace form is nondegenerate.
        """
        v = np.arange(self.order, dtype=np.int64)
        out = np.zeros(self.order, dtype=np.int64)
        for i in range(self.n):
            out |= self.trace_array(self.mul_array(v, 1 << i)).astype(np.int64) << i
        out.setflags(write=False)
        return out

    def subfield(self, r: int) -> np.ndarray:
        """Sorted elements of the subfield GF(2^r) (fixed points of x -> x^(2^r))."""
        if r <= 0 or self.n % r:
            raise ValueError(f"r={r} does not divide n={self.n}")
        x = np.arange(self.order, dtype=np.int64)
        return x[self.pow_array(x, 1 << r) == x]


@lru_cache(maxsize=None)
def field(n: int, modulus: int | None = None) -> FieldContext:
    if not 1 <= n <= MAX_N:
        raise ConstraintViolation(f"field degree n={n} outside 1..{MAX_N}")
    if modulus is None:
        modulus = DEFAULT_MODULI[n]
    if modulus.bit_length() - 1 != n:
        raise ConstraintViolation(f"modulus {modulus:#x} does not have degree {n}")
    if not is_irreducible(modulus):
        raise ConstraintViolation(f"modulus {modulus:#x} is reducible over F_2")
    q = 1 << n
    # any primitive element will do; x itself need not be primitive
    factors = _prime_factors(q - 1)
    gen = None
    for g in range(2 if n > 1 else 1, q):
        if all(_slow_pow(g, (q - 1) // p, modulus) != 1 for p in factors):
            gen = g
            break
    exp = np.zeros(2 * (q - 1) + 1, dtype=np.int64)
    log = np.zeros(q, dtype=np.int64)
    y = 1
    for k in range(q - 1):
        exp[k] = y
        log[y] = k
        y = poly_mod(clmul(y, gen), modulus)
    exp[q - 1:2 * (q - 1)] = exp[:q - 1]
    exp[2 * (q - 1)] = exp[0]
    exp.setflags(write=False)
    log.setflags(write=False)
    return FieldContext(n, modulus, exp, log)


def _slow_pow(a: int, e: int, modulus: int) -> int:
    r = 1
    while e:
        if e & 1:
            r = poly_mod(clmul(r, a), modulus)
        a = poly_mod(clmul(a, a), modulus)
        e >>= 1
    return r


def field_mul(ctx: FieldContext, a: int, b: int) -> int:
    return ctx.mul(a, b)


def trace(ctx: FieldContext, r: int, x: int) -> int:
    return ctx.trace(x, r)


# ---------------------------------------------------------------- subspaces

@dataclass(frozen=True, eq=False)
class Subspace:
    n: int
    basis: tuple[int, ...]
    members: np.ndarray = dc_field(repr=False)

    @classmethod
    def span(cls, n: int, vectors: Iterable[int]) -> "Subspace":
        if not 0 <= n <= MAX_N:
            raise ConstraintViolation(f"ambient dimension {n} outside 0..{MAX_N}")
        vectors = list(vectors)
        for v in vectors:
            if not 0 <= v < 1 << n:
                raise ValueError(f"vector {v:#x} not in F_2^{n}")
        basis = tuple(echelon(vectors))
        pts = np.zeros(1, dtype=np.int64)
        for b in basis:
            pts = np.concatenate([pts, pts ^ b])
        members = np.zeros(1 << n, dtype=bool)
        members[pts] = True
        members.setflags(write=False)
        return cls(n, basis, members)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __contains__(self, v: int) -> bool:
        return bool(self.members[v])

    def __eq__(self, other):
        return (isinstance(other, Subspace) and self.n == other.n
                and np.array_equal(self.members, other.members))

    def __hash__(self):
        return hash((self.n, self.members.tobytes()))

    def elements(self) -> np.ndarray:
        return np.flatnonzero(self.members)

    def indicator(self) -> np.ndarray:
        return self.members.astype(np.uint8)

    def intersection(self, other: "Subspace") -> "Subspace":
        pts = np.flatnonzero(self.members & other.members)
        return Subspace.span(self.n, (int(p) for p in pts))


def dual_subspace(E: Subspace) -> Subspace:
    """E^perp = {w : dot(w, e) = 0 for all e in E} under the standard dot product."""
    w = np.arange(1 << E.n, dtype=np.int64)
    ok = np.ones(w.size, dtype=bool)
    for b in E.basis:
        ok &= dot_array(w, b) == 0
    pts = np.flatnonzero(ok)
    out = Subspace.span(E.n, (int(p) for p in pts))
    assert out.dim == E.n - E.dim
    return out


def trace_dual_subspace(ctx: FieldContext, E: Subspace) -> Subspace:
    """Dual of E under the trace pairing Tr_1^n(w*e)."""
    L = ctx.trace_dual_map
    w = np.arange(ctx.order, dtype=np.int64)
    ok = np.ones(w.size, dtype=bool)
    for b in E.basis:
        ok &= dot_array(L, b) == 0
    return Subspace.span(E.n, (int(p) for p in np.flatnonzero(ok)))


def all_vectors(n: int) -> np.ndarray:
    return np.arange(1 << n, dtype=np.int64)


def unit(i: int) -> int:
    return 1 << i


def as_int_list(xs: Sequence) -> list[int]:
    return [int(x) for x in xs]
