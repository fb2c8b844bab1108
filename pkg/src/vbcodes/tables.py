"""Closed-form weight distributions for the code families with known tables."""
from __future__ import annotations

import math

import numpy as np

from .codes import WeightDistribution
from .constructions import build_family, desarguesian_spread, gold, ps_g
from .errors import ConstraintViolation
from .gf2 import field
from .vectorial import VectorialFunction

KINDS = ("plateaued", "bent", "ab", "theorem6")


def table_frequencies(kind: str, n: int, m: int | None = None, lam: int = 0) -> WeightDistribution:
    """Weight -> frequency from the closed forms.

    plateaued: single amplitude 2^((n+lam)/2), n > 4, 0 <= lam <= n-4.
    bent: n even > 4, m <= n/2.  ab: n odd > 4 (m = n).  theorem6: n = 2t, t >= 3.
    """
    kind = kind.lower()
    if kind == "bent":
        if n <= 4 or n % 2:
            raise ConstraintViolation(f"bent table needs even n > 4, got n={n}")
        if m is None or not 1 <= m <= n // 2:
            raise ConstraintViolation(f"bent table needs 1 <= m <= n/2, got m={m}")
        return _plateaued(n, m, 0, check=False)
    if kind == "ab":
        if n <= 4 or n % 2 == 0:
            raise ConstraintViolation(f"AB table needs odd n > 4, got n={n}")
        if m not in (None, n):
            raise ConstraintViolation("AB functions have m = n")
        return _plateaued(n, n, 1, check=False)
    if kind == "plateaued":
        if m is None or m < 1:
            raise ConstraintViolation("plateaued table needs m >= 1")
        return _plateaued(n, m, lam, check=True)
    if kind == "theorem6":
        return _theorem6(n)
    raise ConstraintViolation(f"unknown table kind {kind!r}; choose from {', '.join(KINDS)}")


def _plateaued(n: int, m: int, lam: int, check: bool) -> WeightDistribution:
    if check:
        if n <= 4:
            raise ConstraintViolation(f"plateaued table needs n > 4, got n={n}")
        if not 0 <= lam <= n - 4:
            raise ConstraintViolation(f"plateaued table needs 0 <= lambda <= n-4, got {lam}")
        if (n + lam) % 2:
            raise ConstraintViolation("n + lambda must be even")
    q = (1 << m) - 1
    half = 1 << (n - 1)
    shift = 1 << ((n + lam) // 2 - 1)
    s = 1 << ((n - lam) // 2 - 1)
    big = 1 << (n - lam - 1)
    freq = {
        0: 1,
        half: (1 << n) - 1 + q * ((1 << n) - (1 << (n - lam))),
        half + shift: q * (big - s),
        half - shift: q * (big + s),
    }
    return WeightDistribution(freq, "closed-form")


def _theorem6(n: int) -> WeightDistribution:
    if n % 2 or n < 6:
        raise ConstraintViolation(f"theorem6 table needs n = 2t with t >= 3, got n={n}")
    t = n // 2
    half = 1 << (n - 1)
    freq = {
        0: 1,
        half: (1 << n) - 1,
        (1 << (t + 1)) - 2: 1,
        half + (1 << t) - 2: (1 << (t + 1)) - 2,
        half - 2: (1 << n) - (1 << (t + 1)) + 1,
        half - (1 << (t - 1)): (1 << n) + (1 << t),
        half + (1 << (t - 1)): (1 << n) - (1 << t),
    }
    return WeightDistribution(freq, "closed-form")


def _first_coordinates(F: VectorialFunction, m: int) -> VectorialFunction:
    if not 1 <= m <= F.m:
        raise ConstraintViolation(f"fixture offers at most m={F.m}, asked for m={m}")
    return VectorialFunction(F.n, m, F.table & ((1 << m) - 1))


def _bent_fixture(n: int, m: int) -> VectorialFunction:
    t = n // 2
    if m == 1:
        return VectorialFunction.from_boolean(ps_g(desarguesian_spread(t), 0))
    return build_family("vbent", n=n, r=m)


def _plateaued_fixture(n: int, m: int, lam: int) -> VectorialFunction:
    """All components plateaued with amplitude 2^((n+lam)/2).

    Uses x^(2^lam+1) when n/lam is odd.  Otherwise the Gold AB function on
    n' = n - lam + 1 variables, ignoring the top lam - 1 inputs (each ignored
    input doubles the amplitude).
    """
    if lam == 0:
        return _bent_fixture(n, m)
    if n % lam == 0 and (n // lam) % 2 == 1 and m <= n:
        G, _ = gold(field(n), lam)
        return _first_coordinates(G.as_vector(), m)
    small = n - lam + 1
    G, _ = gold(field(small), 1)
    low = np.arange(1 << n, dtype=np.int64) & ((1 << small) - 1)
    padded = VectorialFunction(n, small, G.table[low])
    return _first_coordinates(padded, m)


def table_fixture(kind: str, n: int, m: int | None = None, lam: int = 0, i: int = 0,
                  complemented: bool = False) -> VectorialFunction:
    """A concrete function whose code should follow ``table_frequencies(kind, ...)``."""
    kind = kind.lower()
    table_frequencies(kind, n, m, lam)  # range checks
    if kind == "bent":
        return _bent_fixture(n, m)
    if kind == "ab":
        return gold(field(n), 1)[0]
    if kind == "plateaued":
        return _plateaued_fixture(n, m, lam)
    return build_family("theorem6", n=n, i=i, complemented=complemented)
