"""Independent pure-Python reference implementations used as test oracles.

Nothing here imports vbcodes; every routine is the textbook definition,
written for clarity over speed.
"""
from __future__ import annotations

from math import gcd


def popcount(x: int) -> int:
    return bin(x).count("1")


def dot(u: int, v: int) -> int:
    return popcount(u & v) & 1


def gf_mul(a: int, b: int, modulus: int) -> int:
    """Shift-and-add multiplication in F_2[x]/(modulus)."""
    deg = modulus.bit_length() - 1
    r = 0
    while b:
        if b & 1:
            r ^= a
        b >>= 1
        a <<= 1
        if a >> deg & 1:
            a ^= modulus
    return r


def gf_pow(a: int, e: int, modulus: int) -> int:
    r = 1
    for _ in range(e):
        r = gf_mul(r, a, modulus)
    return r


def gf_trace(x: int, n: int, modulus: int) -> int:
    acc, y = 0, x
    for _ in range(n):
        acc ^= y
        y = gf_mul(y, y, modulus)
    assert acc in (0, 1)
    return acc


def walsh(table: list[int], nu: int) -> int:
    return sum((-1) ** (table[x] ^ dot(nu, x)) for x in range(len(table)))


def walsh_all(table: list[int]) -> list[int]:
    return [walsh(table, nu) for nu in range(len(table))]


def span(vectors) -> set[int]:
    pts = {0}
    for v in vectors:
        pts |= {p ^ v for p in pts}
    return pts


def code_rows(n: int, m: int, values: list[int], component, character, augmented=False) -> list[int]:
    """Generator rows as Python ints, bit j = coordinate j.

    ``component(mu, y)`` and ``character(nu, x)`` give the pairings.
    """
    xs = list(range(0 if augmented else 1, 1 << n))
    rows = []
    for b in range(m):
        rows.append(sum(component(1 << b, values[x]) << j for j, x in enumerate(xs)))
    for b in range(n):
        rows.append(sum(character(1 << b, x) << j for j, x in enumerate(xs)))
    if augmented:
        rows.append((1 << len(xs)) - 1)
    return rows


def all_codewords(rows: list[int]) -> list[int]:
    words = [0]
    for r in rows:
        words += [w ^ r for w in words]
    return words


def weight_distribution(rows: list[int]) -> dict[int, int]:
    out: dict[int, int] = {}
    for w in all_codewords(rows):
        k = popcount(w)
        out[k] = out.get(k, 0) + 1
    return out


def is_minimal(rows: list[int]) -> bool:
    """Covering definition: no nonzero c1 != c2 with supp(c1) inside supp(c2)."""
    words = [w for w in all_codewords(rows) if w]
    for a in words:
        for b in words:
            if a != b and a & ~b == 0:
                return False
    return True


def gold_lambda(n: int, i: int) -> int:
    return gcd(n, i)
