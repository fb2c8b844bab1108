"""Concrete function families: spreads, spread-indicator functions, Gold maps
and the composed (f, G) functions that feed the code generator."""
from __future__ import annotations

import inspect
import logging
import math
from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .boolfun import BooleanFunction, indicator_sum
from .errors import ConstraintViolation
from .gf2 import MAX_N, FieldContext, Subspace, dual_subspace, field
from .vectorial import VectorialFunction

log = logging.getLogger(__name__)

FAMILIES = ("theorem6", "theorem8", "theorem10", "gold", "vbent")


@dataclass(frozen=True, eq=False)
class SpreadFamily:
    """2^t + 1 t-dimensional subspaces of F_2^(2t) meeting pairwise in {0}.

    A vector v splits as x = low t bits, y = high t bits.
    """

    t: int
    subspaces: tuple[Subspace, ...]
    field: FieldContext

    @property
    def n(self) -> int:
        return 2 * self.t

    def __len__(self):
        return len(self.subspaces)

    def __getitem__(self, k: int) -> Subspace:
        return self.subspaces[k]

    def check(self) -> None:
        """Raise unless every spread invariant holds."""
        t, n = self.t, self.n
        if len(self.subspaces) != (1 << t) + 1:
            raise ConstraintViolation(f"a spread of F_2^{n} needs {(1 << t) + 1} members")
        cover = np.zeros(1 << n, dtype=np.int64)
        for E in self.subspaces:
            if E.n != n or E.dim != t:
                raise ConstraintViolation("spread members must be t-dimensional subspaces of F_2^(2t)")
            cover += E.members
        # pairwise trivial intersection and full cover are both "every nonzero vector exactly once"
        if cover[0] != len(self.subspaces) or np.any(cover[1:] != 1):
            raise ConstraintViolation("spread members do not partition the nonzero vectors")


def desarguesian_spread(t: int, ctx: FieldContext | None = None) -> SpreadFamily:
    """E_k = {(x, l_k x)} for k < 2^t (l_k the field element encoded by k), E_{2^t} = {(0, y)}."""
    if not 2 <= t <= MAX_N // 2:
        raise ConstraintViolation(f"spread parameter t={t} outside 2..{MAX_N // 2}")
    ctx = ctx or field(t)
    if ctx.n != t:
        raise ConstraintViolation("spread field must be GF(2^t)")
    members = []
    for k in range(1 << t):
        basis = [(1 << j) | (ctx.mul(k, 1 << j) << t) for j in range(t)]
        members.append(Subspace.span(2 * t, basis))
    members.append(Subspace.span(2 * t, [(1 << j) << t for j in range(t)]))
    spread = SpreadFamily(t, tuple(members), ctx)
    spread.check()
    return spread


def ps_f_theorem6(spread: SpreadFamily, complemented: bool = False) -> BooleanFunction:
    """1_{E_0} + 1_{E_top}; the complemented variant uses E_{2^t - 1} instead of E_0."""
    top = 1 << spread.t
    first = top - 1 if complemented else 0
    return indicator_sum([spread[first], spread[top]])


def selected_indices(t: int, i: int, complemented: bool = False) -> list[int]:
    """Spread indices k < 2^t whose bit i is 1 (or 0 when complemented)."""
    want = 0 if complemented else 1
    return [k for k in range(1 << t) if (k >> i) & 1 == want]


def ps_g(spread: SpreadFamily, i: int, complemented: bool = False) -> BooleanFunction:
    t = spread.t
    if not 0 <= i < t:
        raise ConstraintViolation(f"bit position i={i} outside 0..{t - 1}")
    ks = selected_indices(t, i, complemented) + [1 << t]
    return indicator_sum([spread[k] for k in ks]) + 1


def ps_vectorial_bent(spread: SpreadFamily, r: int, complemented: bool = False) -> VectorialFunction:
    """G = (g_0, ..., g_{r-1}) with g_i in output bit i."""
    if not 2 <= r <= spread.t:
        raise ConstraintViolation(f"r={r} outside 2..t={spread.t}")
    table = np.zeros(1 << spread.n, dtype=np.int64)
    for i in range(r):
        table |= ps_g(spread, i, complemented).table.astype(np.int64) << i
    return VectorialFunction(spread.n, r, table)


def modified_indicator(E: Subspace, a: int, b: int) -> tuple[BooleanFunction, bool]:
    """f = 1_E + (a.x)(b.x) + 1, plus whether a, b, a+b all avoid E^perp.

    The flag is exactly the condition under which f has the five-case spectrum.
    """
    n = E.n
    if n % 2 or E.dim != n // 2:
        raise ConstraintViolation("need n = 2t and dim(E) = t")
    if a == 0 or b == 0:
        raise ConstraintViolation("a and b must be nonzero")
    if a == b:
        raise ConstraintViolation("a and b must differ")
    if a >> n or b >> n:
        raise ConstraintViolation(f"a, b must lie in F_2^{n}")
    dual = dual_subspace(E)
    ok = a not in dual and b not in dual and (a ^ b) not in dual
    f = BooleanFunction.indicator(E) + BooleanFunction.linear(n, a) * BooleanFunction.linear(n, b) + 1
    return f, ok


@dataclass(frozen=True)
class GoldParams:
    n: int
    i: int
    lam: int

    @property
    def amplitude(self) -> int:
        return 1 << ((self.n + self.lam) // 2)


def gold_params(n: int, i: int) -> GoldParams:
    if not 1 <= i <= n - 1:
        raise ConstraintViolation(f"Gold exponent parameter i={i} outside 1..{n - 1}")
    lam = math.gcd(n, i)
    if (n // lam) % 2 == 0:
        raise ConstraintViolation(f"n/lambda is odd is violated: lambda=gcd({n},{i})={lam}, n/lambda={n // lam}")
    return GoldParams(n, i, lam)


def gold(ctx: FieldContext, i: int) -> tuple[VectorialFunction, GoldParams]:
    """x -> x^(2^i + 1) on GF(2^n), carrying the trace pairing."""
    params = gold_params(ctx.n, i)
    x = np.arange(ctx.order, dtype=np.int64)
    table = ctx.pow_array(x, (1 << i) + 1)
    F = VectorialFunction(ctx.n, ctx.n, table, field=ctx,
                          family={"kind": "gold", "n": ctx.n, "i": i, "modulus": hex(ctx.modulus)})
    return F, params


def concat(f: BooleanFunction, G: VectorialFunction) -> VectorialFunction:
    """F = (f, G) with f in output bit 0 and G shifted up by one bit."""
    if f.n != G.n:
        raise ConstraintViolation(f"dimension mismatch: f on {f.n} bits, G on {G.n} bits")
    table = f.table.astype(np.int64) | (G.table << 1)
    if G.field is None:
        return VectorialFunction(G.n, G.m + 1, table)
    return VectorialFunction(G.n, G.m + 1, table, field=G.field, plain_bits=G.plain_bits + 1)


# ---------------------------------------------------------------- families

def _even_n(n: int, t_min: int) -> int:
    if n % 2 or not 2 * t_min <= n <= MAX_N:
        raise ConstraintViolation(f"need n = 2t with {t_min} <= t <= {MAX_N // 2}, got n={n}")
    return n // 2


def default_theorem8_pair(spread: SpreadFamily) -> tuple[int, int]:
    dual = dual_subspace(spread[0])
    pts = [int(v) for v in dual.elements() if v]
    for a, b in combinations(sorted(pts), 2):
        if (a ^ b) in dual:
            return a, b
    raise ConstraintViolation("no valid (a, b) pair in E_0^perp")


def default_theorem10_pair(ctx: FieldContext) -> tuple[int, int]:
    sub = np.zeros(ctx.order, dtype=bool)
    sub[ctx.subfield(ctx.n // 2)] = True
    outside = np.flatnonzero(~sub)
    a = int(outside[0])
    for b in outside[1:]:
        if not sub[a ^ int(b)]:
            return a, int(b)
    raise ConstraintViolation("no valid (a, b) pair outside the subfield")


def _parse_int(v) -> int | None:
    if v is None or isinstance(v, int):
        return v
    return int(v, 0)


def build_family(kind: str, **params) -> VectorialFunction:
    """Compose the function of one of the named families.

    theorem6: n, i, complemented.  theorem8: n, r, a, b, complemented.
    theorem10: n, i, a, b, modulus.  gold: n, i, modulus.  vbent: n, r.
    """
    if kind not in FAMILIES:
        raise ConstraintViolation(f"unknown family {kind!r}; choose from {', '.join(FAMILIES)}")
    return globals()[_BUILDER_NAMES[kind]](**params)


_BUILDER_NAMES = {"theorem6": "_theorem6", "theorem8": "_theorem8", "theorem10": "_theorem10",
                  "gold": "_gold_family", "vbent": "_vbent"}


def builder_params(family: dict) -> dict:
    """The subset of a family record that ``build_family`` accepts."""
    fn = globals()[_BUILDER_NAMES[family["kind"]]]
    names = inspect.signature(fn).parameters
    return {k: v for k, v in family.items() if k in names}


def _theorem6(n: int, i: int = 0, complemented: bool = False) -> VectorialFunction:
    t = _even_n(n, 3)
    if not 0 <= i < t:
        raise ConstraintViolation(f"need 0 <= i <= t-1 = {t - 1}, got i={i}")
    spread = desarguesian_spread(t)
    f = ps_f_theorem6(spread, complemented)
    g = ps_g(spread, i, complemented)
    table = f.table.astype(np.int64) | (g.table.astype(np.int64) << 1)
    fam = {"kind": "theorem6", "n": n, "t": t, "i": i, "complemented": bool(complemented),
           "spread": "desarguesian", "modulus": hex(spread.field.modulus)}
    return VectorialFunction(n, 2, table, family=fam)


def _theorem8(n: int, r: int = 2, a=None, b=None, complemented: bool = False) -> VectorialFunction:
    t = _even_n(n, 3)
    if not 2 <= r <= t:
        raise ConstraintViolation(f"need 2 <= r <= t = {t}, got r={r}")
    spread = desarguesian_spread(t)
    a, b = _parse_int(a), _parse_int(b)
    if a is None or b is None:
        if (a is None) != (b is None):
            raise ConstraintViolation("give both a and b, or neither")
        a, b = default_theorem8_pair(spread)
    dual0 = dual_subspace(spread[0])
    for name, v in (("a", a), ("b", b), ("a+b", a ^ b)):
        if not 0 < v < 1 << n or v not in dual0:
            raise ConstraintViolation(f"a,b,a+b in E_0^perp minus 0 is violated by {name}={v:#x}")
    log.info("theorem8: reading the indicator 1_{E^{2^t}} as the spread member E_{2^t}")
    top = spread[1 << t]
    f, ok = modified_indicator(top, a, b)
    assert ok  # E_0^perp meets E_top^perp only in 0
    G = ps_vectorial_bent(spread, r, complemented)
    F = concat(f, G)
    fam = {"kind": "theorem8", "n": n, "t": t, "r": r, "a": hex(a), "b": hex(b),
           "complemented": bool(complemented), "spread": "desarguesian",
           "modulus": hex(spread.field.modulus)}
    return VectorialFunction(F.n, F.m, F.table, family=fam)


def theorem10_parts(n: int, i: int = 2, a=None, b=None, modulus=None):
    """(f, G, ctx, params, (a, b)) for the field-version family."""
    t = _even_n(n, 5)
    if not 2 <= i <= n - 1:
        raise ConstraintViolation(f"need 2 <= i <= n-1, got i={i}")
    params = gold_params(n, i)
    ctx = field(n, _parse_int(modulus))
    a, b = _parse_int(a), _parse_int(b)
    if a is None or b is None:
        if (a is None) != (b is None):
            raise ConstraintViolation("give both a and b, or neither")
        a, b = default_theorem10_pair(ctx)
    sub = Subspace.span(n, (int(v) for v in ctx.subfield(t)))
    for name, v in (("a", a), ("b", b), ("a+b", a ^ b)):
        if not 0 <= v < ctx.order or v in sub:
            raise ConstraintViolation(f"a,b,a+b outside E=F_(2^{t}) is violated by {name}={v:#x}")
    L = ctx.trace_dual_map
    # Tr(a x) Tr(b x) = (L[a].x)(L[b].x); the trace dual of the subfield is itself
    f, ok = modified_indicator(sub, int(L[a]), int(L[b]))
    assert ok
    G, _ = gold(ctx, i)
    return f, G, ctx, params, (a, b)


def _theorem10(n: int, i: int = 2, a=None, b=None, modulus=None) -> VectorialFunction:
    f, G, ctx, params, (a, b) = theorem10_parts(n, i, a, b, modulus)
    F = concat(f, G)
    fam = {"kind": "theorem10", "n": n, "t": n // 2, "i": i, "lambda": params.lam,
           "a": hex(a), "b": hex(b), "modulus": hex(ctx.modulus)}
    return VectorialFunction(F.n, F.m, F.table, field=F.field, plain_bits=F.plain_bits, family=fam)


def _gold_family(n: int, i: int = 1, modulus=None) -> VectorialFunction:
    ctx = field(n, _parse_int(modulus))
    F, _ = gold(ctx, i)
    return F


def _vbent(n: int, r: int = 2, complemented: bool = False) -> VectorialFunction:
    t = _even_n(n, 2)
    G = ps_vectorial_bent(desarguesian_spread(t), r, complemented)
    fam = {"kind": "vbent", "n": n, "t": t, "r": r, "complemented": bool(complemented),
           "spread": "desarguesian", "modulus": hex(field(t).modulus)}
    return VectorialFunction(G.n, G.m, G.table, family=fam)


def mixed_spectrum_values(n: int, lam: int) -> set[int]:
    """The ten admissible spectrum values of Tr(mu x^(2^i+1)) + 1_E, E the half-degree subfield."""
    t = n // 2
    q2 = t + lam // 2
    if n % 2 or (n + lam) % 2 or q2 % 2:
        raise ConstraintViolation("value set needs n even and integral exponents")
    P = 1 << ((n + lam) // 2)
    Q = 1 << (q2 // 2 + 1)
    T = 1 << (t + 1)
    return {0, -T, P, -P, Q, -Q, P - T, -P - T, P + Q, P - Q, -P + Q, -P - Q}


def theorem10_bound(n: int, lam: int) -> int:
    """Upper bound 2^((n+lam)/2 + 1) + 2^(t+2) on max |W_A|."""
    return (1 << ((n + lam) // 2 + 1)) + (1 << (n // 2 + 2))
