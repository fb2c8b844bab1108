"""Minimality and AB-condition checkers.

Three independent routes decide minimality:

* brute force over codeword pairs, once with the weight criterion
  wt(c1 + c2) != wt(c2) - wt(c1) and once with support covering;
* the spectral pair/triple criterion on W_F (and its refinement for F = (f, G));
* a magnitude-bound argument on the spectra, plus random sampling of pairs.

Witnesses are message-index pairs (c1, c2) with wt(c1+c2) = wt(c2) - wt(c1).
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from itertools import product

import numpy as np

from .boolfun import BooleanFunction, fwht_inplace
from .codes import (LinearCode, WeightDistribution, build_code, popcount_weights,
                    popcount_weights_at)
from .constructions import concat, mixed_spectrum_values, theorem10_bound, theorem10_parts
from .errors import BudgetExceeded, ConstraintViolation, VerificationFailure
from .vectorial import ComponentSpectra, VectorialFunction, all_spectra, iter_spectra

BRUTEFORCE_MAX_K = 24
CRITERION_MAX_LOG2 = 18  # n + m
BLOCK = 1 << 22


@dataclass(frozen=True)
class Witness:
    c1: int
    c2: int
    description: str = ""

    def recheck(self, code) -> bool:
        """Re-derive the violation from the codewords themselves."""
        a = code.codeword_bits(self.c1)
        b = code.codeword_bits(self.c2)
        s = a ^ b
        if not (a.any() and b.any() and s.any()):
            return False
        return int(s.sum()) == int(b.sum()) - int(a.sum())

    def to_json(self) -> dict:
        return {"c1": self.c1, "c2": self.c2, "description": self.description}


@dataclass(frozen=True)
class MinimalityReport:
    minimal: bool
    route: str  # bruteforce | walsh-criterion | genericAB-criterion | bound-argument
    witness: Witness | None = None
    details: dict = dc_field(default_factory=dict)

    @property
    def verdict(self) -> str:
        return "minimal" if self.minimal else "not_minimal"


# ---------------------------------------------------------------- brute force

def ding_bruteforce(code, weights: np.ndarray | None = None) -> Witness | None:
    """Scan every pair with wt(c_i ^ c_j) == wt(c_j) - wt(c_i); first by (j, i)."""
    k = code.dimension
    w = popcount_weights(code) if weights is None else weights
    K = 1 << k
    idx = np.arange(K, dtype=np.int64)
    step = max(1, BLOCK // K)
    for j0 in range(1, K, step):
        js = np.arange(j0, min(K, j0 + step), dtype=np.int64)
        sums = w[idx[None, :] ^ js[:, None]]
        hit = sums == (w[js][:, None] - w[None, :])
        hit[:, 0] = False
        hit[np.arange(js.size), js] = False
        rows = np.flatnonzero(hit.any(axis=1))
        if rows.size:
            r = rows[0]
            return Witness(int(np.flatnonzero(hit[r])[0]), int(js[r]), "weight criterion")
    return None


def _all_codeword_words(code) -> np.ndarray:
    words = code.words
    table = np.zeros((1, words.shape[1]), dtype=np.uint64)
    for b in range(code.dimension):
        table = np.concatenate([table, table ^ words[b]])
    return table


def covering_bruteforce(code) -> Witness | None:
    """Scan every pair for supp(c_i) inside supp(c_j), c_i not in {0, c_j}."""
    table = _all_codeword_words(code)
    K, W = table.shape
    step = max(1, BLOCK // K)
    cols = [np.ascontiguousarray(table[:, w]) for w in range(W)]
    for j0 in range(1, K, step):
        js = np.arange(j0, min(K, j0 + step))
        outside = np.zeros((js.size, K), dtype=np.uint64)
        for col in cols:
            outside |= col[None, :] & ~col[js][:, None]
        covered = outside == 0
        covered[:, 0] = False
        covered[np.arange(js.size), js] = False
        rows = np.flatnonzero(covered.any(axis=1))
        if rows.size:
            r = rows[0]
            return Witness(int(np.flatnonzero(covered[r])[0]), int(js[r]), "support covering")
    return None


def is_minimal_bruteforce(code, max_k: int = BRUTEFORCE_MAX_K) -> MinimalityReport:
    k = code.dimension
    if k > max_k:
        raise BudgetExceeded(f"k={k} exceeds the brute-force budget k <= {max_k}; "
                             "use the walsh or bound route")
    ding = ding_bruteforce(code)
    cover = covering_bruteforce(code)
    if (ding is None) != (cover is None) or (ding and (ding.c1, ding.c2) != (cover.c1, cover.c2)):
        raise VerificationFailure(f"weight and covering scans disagree: {ding} vs {cover}")
    if ding is not None and not ding.recheck(code):
        raise VerificationFailure(f"witness {ding} does not re-check")
    return MinimalityReport(ding is None, "bruteforce", ding,
                            {"ding": ding is None, "covering": cover is None, "k": k})


# ---------------------------------------------------------------- spectral search

def _pair_hit(row: np.ndarray, N: int) -> tuple[int, int, int] | None:
    """First (nu, nu', sign) with row[nu] + sign*row[nu'] == N, nu != nu'.

    sign = +1 means a sum, -1 means row[nu] - row[nu'] == N.
    """
    vals, counts = np.unique(row, return_counts=True)
    present = dict(zip(vals.tolist(), counts.tolist()))
    possible = any((N - a in present and (N - a != a or c > 1)) or (a - N in present)
                   for a, c in present.items())
    if not possible:
        return None
    for nu in range(row.size):
        a = int(row[nu])
        plus = row == N - a
        minus = row == a - N
        plus[nu] = minus[nu] = False
        cands = np.flatnonzero(plus | minus)
        if cands.size:
            nu2 = int(cands[0])
            return nu, nu2, 1 if plus[nu2] else -1
    return None


def _triple_hit(X: np.ndarray, Y: np.ndarray, Z: np.ndarray, N: int) -> tuple[int, int] | None:
    """First (nu, nu') with X[nu] + Y[nu'] + Z[nu ^ nu'] == N (signs pre-applied)."""
    if int(X.max()) + int(Y.max()) + int(Z.max()) < N:
        return None
    zvals = set(np.unique(Z).tolist())
    found = False
    xu = np.unique(X)
    yu = np.unique(Y)
    for a, b in product(xu.tolist(), yu.tolist()):
        c = N - a - b
        if c not in zvals:
            continue
        # count pairs (nu, nu') with X = a, Y = b landing on each nu ^ nu'
        ha = fwht_inplace((X == a).astype(np.int64))
        hb = fwht_inplace((Y == b).astype(np.int64))
        conv = fwht_inplace(ha * hb)
        if np.any((conv > 0) & (Z == c)):
            found = True
            break
    if not found:
        return None
    idx = np.arange(X.size)
    for nu in range(X.size):
        hit = np.flatnonzero(Y + Z[idx ^ nu] == N - int(X[nu]))
        if hit.size:
            return nu, int(hit[0])
    raise AssertionError("convolution reported a hit the direct scan cannot find")


def _pair_witness(m: int, mu: int, nu: int, nu2: int, sign: int, what: str) -> Witness:
    if sign > 0:
        # W(mu,a) + W(mu,b) = 2^n: c(mu,a) lies under c(0,a^b)
        return Witness(mu | nu << m, (nu ^ nu2) << m, f"{what}: W({mu},{nu}) + W({mu},{nu2}) = 2^n")
    return Witness((nu ^ nu2) << m, mu | nu2 << m, f"{what}: W({mu},{nu}) - W({mu},{nu2}) = 2^n")


def _triple_witness(m: int, P: int, Q: int, R: int, nu: int, nu2: int, what: str) -> Witness:
    # W(P,nu) + W(Q,nu') - W(R,nu^nu') = 2^n: c(P,nu) lies under c(R,nu^nu')
    return Witness(P | nu << m, R | (nu ^ nu2) << m,
                   f"{what}: W({P},{nu}) + W({Q},{nu2}) - W({R},{nu ^ nu2}) = 2^n")


def _hypothesis(F: VectorialFunction, S: ComponentSpectra) -> None:
    if F(0) != 0:
        raise ConstraintViolation("hypothesis F(0) = 0 fails")
    full = 1 << F.n
    bad = np.flatnonzero(S.max_abs_per_row[1:] == full)
    if bad.size:
        raise ConstraintViolation(f"hypothesis fails: component mu={int(bad[0]) + 1:#x} is affine")


def _budget(F: VectorialFunction, max_log2: int) -> None:
    if F.n + F.m > max_log2:
        raise BudgetExceeded(f"n+m={F.n + F.m} exceeds the spectral-criterion budget {max_log2}; "
                             "use the bound route")


def minimality_walsh_criterion(F: VectorialFunction, spectra: ComponentSpectra | None = None,
                               max_log2: int = CRITERION_MAX_LOG2) -> MinimalityReport:
    """Pair condition on each row, then the triple condition on every {mu, mu'}.

    Order of search (and so of the reported witness): pair condition before
    triples, then mu (or (mu, mu') with mu < mu'), then nu, then nu'.
    """
    _budget(F, max_log2)
    S = spectra or all_spectra(F)
    _hypothesis(F, S)
    N = 1 << F.n
    M = 1 << F.m
    for mu in range(1, M):
        hit = _pair_hit(S[mu], N)
        if hit:
            return MinimalityReport(False, "walsh-criterion", _pair_witness(F.m, mu, *hit, "pair condition"))
    top = S.values.max(axis=1)
    bottom = S.values.min(axis=1)
    skipped = 0
    for P in range(1, M):
        for Q in range(P + 1, M):
            R = P ^ Q
            if int(top[P]) + int(top[Q]) - int(bottom[R]) < N:
                skipped += 1
                continue
            hit = _triple_hit(S[P], S[Q], -S[R], N)
            if hit:
                return MinimalityReport(False, "walsh-criterion",
                                        _triple_witness(F.m, P, Q, R, *hit, "triple condition"))
    return MinimalityReport(True, "walsh-criterion", None, {"pairs_pruned": skipped})


def walsh_criterion_direct(F: VectorialFunction) -> bool:
    """Reference implementation: literal loops over (mu, mu', nu, nu'); tiny inputs only."""
    S = all_spectra(F).values
    N = 1 << F.n
    M, size = 1 << F.m, 1 << F.n
    idx = np.arange(size)
    for mu in range(1, M):
        for nu in range(size):
            for nu2 in range(size):
                if nu != nu2 and (S[mu, nu] + S[mu, nu2] == N or S[mu, nu] - S[mu, nu2] == N):
                    return False
    for mu in range(1, M):
        for mu2 in range(1, M):
            if mu == mu2:
                continue
            for nu in range(size):
                if np.any(S[mu, nu] + S[mu2, idx] - S[mu ^ mu2, nu ^ idx] == N):
                    return False
    return True


# ---------------------------------------------------------------- (f, G) split

@dataclass(frozen=True)
class PremiseReport:
    f_zero: bool
    a_holds: bool
    b_holds: bool
    a_witness: tuple[int, int, int] | None
    max_w: int
    min_w: int

    @property
    def ok(self) -> bool:
        return self.f_zero and self.a_holds and self.b_holds


def construction2_premises(f: BooleanFunction) -> PremiseReport:
    """(a) W_f(nu) +- W_f(nu') != 2^n for nu != nu'; (b) 2 max W_f - min W_f >= 2^n."""
    W = f.spectrum.values
    N = 1 << f.n
    hit = _pair_hit(W, N)
    hi, lo = int(W.max()), int(W.min())
    return PremiseReport(f(0) == 0, hit is None, 2 * hi - lo >= N, hit, hi, lo)


def _split_rows(F: VectorialFunction, S: ComponentSpectra):
    """Rows of f, of G(mu~) and of A_mu~ = f + mu~.G, indexed by mu~."""
    r = F.m - 1
    mt = np.arange(1, 1 << r)
    return S[1], S[mt << 1], S[1 | (mt << 1)]


@dataclass(frozen=True)
class ABReport:
    w_min: int
    w_max: int
    satisfies_AB: bool
    spectral_check: bool  # True when 2 max W - min W >= 2^n, i.e. the spectral test says "violated"

    @property
    def ratio(self) -> str:
        return f"{self.w_min}/{self.w_max}"

    def to_json(self) -> dict:
        return {"w_min": self.w_min, "w_max": self.w_max, "satisfied": self.satisfies_AB,
                "spectral": self.spectral_check, "ratio": self.ratio}


def _spectral_extremes(spectra) -> tuple[int, int, int]:
    if isinstance(spectra, ComponentSpectra):
        return spectra.max, spectra.min, spectra.n
    if isinstance(spectra, VectorialFunction):
        hi, lo = None, None
        for _, rows in iter_spectra(spectra):
            a, b = int(rows.max()), int(rows.min())
            hi = a if hi is None else max(hi, a)
            lo = b if lo is None else min(lo, b)
        return hi, lo, spectra.n
    hi, lo, n = spectra
    return int(hi), int(lo), int(n)


def ab_check(dist: WeightDistribution, spectra) -> ABReport:
    """Weight-ratio test and the spectral test; they must agree."""
    hi, lo, n = _spectral_extremes(spectra)
    satisfied = 2 * dist.w_min > dist.w_max
    violated = 2 * hi - lo >= 1 << n
    if satisfied == violated:
        raise VerificationFailure(
            f"AB weight test ({dist.w_min}/{dist.w_max}) and spectral test (2*{hi} - ({lo})) disagree")
    return ABReport(dist.w_min, dist.w_max, satisfied, violated)


def ab_from_spectra(spectra) -> ABReport:
    """AB report with w_min, w_max read off the spectra (no enumeration)."""
    hi, lo, n = _spectral_extremes(spectra)
    half = 1 << (n - 1)
    w_min = min(half, half - hi // 2)
    w_max = max(half, half - lo // 2)
    return ab_check(WeightDistribution({0: 1, w_min: 1, w_max: 1}), (hi, lo, n))


def genericAB_criterion(f: BooleanFunction, G: VectorialFunction, g_minimal: MinimalityReport | None = None,
                        max_log2: int = CRITERION_MAX_LOG2) -> tuple[MinimalityReport, ABReport]:
    """Three-condition criterion for F = (f, G) under the premises on f and G."""
    F = concat(f, G)
    _budget(F, max_log2)
    prem = construction2_premises(f)
    if not prem.f_zero:
        raise ConstraintViolation("premise f(0) = 0 fails")
    if not prem.a_holds:
        raise ConstraintViolation(f"premise (a) fails: W_f(nu) +- W_f(nu') = 2^n at {prem.a_witness}")
    if not prem.b_holds:
        raise ConstraintViolation(f"premise (b) fails: 2*{prem.max_w} - ({prem.min_w}) < 2^{f.n}")
    if G(0) != 0:
        raise ConstraintViolation("premise G(0) = 0 fails")
    S = all_spectra(F)
    full = 1 << F.n
    bad = np.flatnonzero(S.max_abs_per_row[1:] == full)
    if bad.size:
        raise ConstraintViolation(f"premise fails: component mu={int(bad[0]) + 1:#x} of (f, G) is affine")
    g_rep = g_minimal or minimality_walsh_criterion(G)
    if not g_rep.minimal:
        raise ConstraintViolation(f"premise fails: C_G is not minimal ({g_rep.witness})")
    ab = ab_from_spectra(S)
    N = full
    m = F.m
    Wf, WG, WA = _split_rows(F, S)
    r = F.m - 1
    # (1) pair condition on every A row
    for j in range(WA.shape[0]):
        hit = _pair_hit(WA[j], N)
        if hit:
            mu = 1 | (j + 1) << 1
            return MinimalityReport(False, "genericAB-criterion", _pair_witness(m, mu, *hit, "condition (1)")), ab
    # (2) +-W_f(nu) +- W_G(mt, nu') +- W_A(mt, nu^nu'), exactly one minus sign
    for j in range(WG.shape[0]):
        mt = j + 1
        terms = [(Wf, 1), (WG[j], mt << 1), (WA[j], 1 | mt << 1)]
        for neg in range(3):
            X, Y, Z = [(-T if i == neg else T) for i, (T, _) in enumerate(terms)]
            hit = _triple_hit(X, Y, Z, N)
            if hit:
                mus = [mu for _, mu in terms]
                R = mus[neg]
                P, Q = [mu for i, mu in enumerate(mus) if i != neg]
                nu, nu2 = hit
                # relabel so the negated row carries nu ^ nu'
                nus = [nu, nu2, nu ^ nu2]
                nR = nus[neg]
                nP, nQ = [v for i, v in enumerate(nus) if i != neg]
                w = Witness(P | nP << m, R | nR << m, f"condition (2), mu~={mt}, minus on term {neg}")
                return MinimalityReport(False, "genericAB-criterion", w), ab
    # (3) W_A(mt, nu) +- W_G(mt', nu') +- W_A(mt^mt', nu^nu'), exactly one minus sign
    for j, j2 in product(range(WG.shape[0]), repeat=2):
        if j == j2:
            continue
        mt, mt2 = j + 1, j2 + 1
        X = WA[j]
        A3 = WA[(mt ^ mt2) - 1]
        for sy, sz in ((1, -1), (-1, 1)):
            hit = _triple_hit(X, sy * WG[j2], sz * A3, N)
            if hit:
                nu, nu2 = hit
                mus = [1 | mt << 1, mt2 << 1, 1 | (mt ^ mt2) << 1]
                nus = [nu, nu2, nu ^ nu2]
                neg = 1 if sy < 0 else 2
                P, Q = [mus[i] for i in range(3) if i != neg]
                nP, _ = [nus[i] for i in range(3) if i != neg]
                w = Witness(P | nP << m, mus[neg] | nus[neg] << m,
                            f"condition (3), mu~={mt}, mu~'={mt2}")
                return MinimalityReport(False, "genericAB-criterion", w), ab
    details = {"condition3_vacuous": r == 1}
    return MinimalityReport(True, "genericAB-criterion", None, details), ab


# ---------------------------------------------------------------- bound argument

def sample_ding(code: LinearCode, samples: int = 1_000_000, seed: int = 0,
                chunk: int = 1 << 17) -> Witness | None:
    """Random nonzero pairs (i, j), i != j, checked by popcount in both orders."""
    rng = np.random.default_rng(seed)
    K = 1 << code.dimension
    done = 0
    while done < samples:
        size = min(chunk, samples - done)
        i = rng.integers(1, K, size=size, dtype=np.int64)
        j = rng.integers(1, K, size=size, dtype=np.int64)
        j = np.where(i == j, (j % (K - 1)) + 1, j)
        j = np.where(i == j, (j % (K - 1)) + 1, j)
        wi = popcount_weights_at(code, i)
        wj = popcount_weights_at(code, j)
        ws = popcount_weights_at(code, i ^ j)
        for a, b, wa, wb in ((i, j, wi, wj), (j, i, wj, wi)):
            bad = np.flatnonzero(ws == wb - wa)
            if bad.size:
                return Witness(int(a[bad[0]]), int(b[bad[0]]), "random sample")
        done += size
    return None


def _split_maxima(F: VectorialFunction) -> dict[str, int]:
    """Exact maxima of |W_f|, |W_G| and |W_A| over all mu~ (streamed)."""
    out = {"f": 0, "G": 0, "A": 0, "any": 0}
    for mus, rows in iter_spectra(F):
        mags = np.abs(rows).max(axis=1)
        low = mus & 1
        high = mus >> 1
        out["any"] = max(out["any"], int(mags.max()))
        for key, sel in (("f", (low == 1) & (high == 0)), ("G", low == 0), ("A", (low == 1) & (high != 0))):
            if sel.any():
                out[key] = max(out[key], int(mags[sel].max()))
    return out


def bound_argument(F: VectorialFunction, split: bool | None = None, code: LinearCode | None = None,
                   samples: int = 1_000_000, seed: int = 0) -> MinimalityReport:
    """Minimality from magnitude bounds, cross-checked by random pair sampling.

    Unsplit: 2 max|W| < 2^n and 3 max|W| < 2^n settle both spectral conditions.
    Split (F = (f, G), f in bit 0): premises on f and G, then
    2 maxA < 2^n, maxf + maxG + maxA < 2^n and 2 maxA + maxG < 2^n.
    Inconclusive bounds raise VerificationFailure; they do not prove non-minimality.
    """
    N = 1 << F.n
    if F(0) != 0:
        raise ConstraintViolation("hypothesis F(0) = 0 fails")
    split = (F.family or {}).get("kind") in ("theorem6", "theorem8", "theorem10") if split is None else split
    mx = _split_maxima(F)
    if mx["any"] >= N:
        raise ConstraintViolation("hypothesis fails: some component is affine")
    checks: dict[str, bool] = {}
    if split:
        f = F.coordinate(0)
        prem = construction2_premises(f)
        checks["f(0)=0"] = prem.f_zero
        checks["premise (a)"] = prem.a_holds
        checks["premise (b)"] = prem.b_holds
        checks["C_G minimal: 2 maxG < 2^n"] = 2 * mx["G"] < N
        checks["C_G minimal: 3 maxG < 2^n"] = 3 * mx["G"] < N
        checks["2 maxA < 2^n"] = 2 * mx["A"] < N
        checks["maxf + maxG + maxA < 2^n"] = mx["f"] + mx["G"] + mx["A"] < N
        checks["2 maxA + maxG < 2^n"] = 2 * mx["A"] + mx["G"] < N
    else:
        checks["2 max|W| < 2^n"] = 2 * mx["any"] < N
        checks["3 max|W| < 2^n"] = 3 * mx["any"] < N
    failed = [k for k, ok in checks.items() if not ok]
    if failed:
        raise VerificationFailure(f"bound argument inconclusive; failed: {', '.join(failed)}")
    code = code or build_code(F)
    wit = sample_ding(code, samples, seed) if samples else None
    if wit is not None:
        raise VerificationFailure(f"bounds hold but sampling found a violating pair {wit}")
    return MinimalityReport(True, "bound-argument", None,
                            {"maxima": mx, "checks": checks, "samples": samples, "seed": seed})


def bound_argument_theorem10(F: VectorialFunction, samples: int = 1_000_000, seed: int = 0,
                             code: LinearCode | None = None) -> MinimalityReport:
    """Split bound argument plus the closed-form constants of the field family."""
    fam = F.family or {}
    if fam.get("kind") != "theorem10":
        raise ConstraintViolation("function was not built as the theorem10 family")
    n, lam = F.n, int(fam["lambda"])
    t = n // 2
    if n <= 8:
        raise ConstraintViolation("need n = 2t > 8")
    amp = 1 << ((n + lam) // 2)
    bound = theorem10_bound(n, lam)
    N = 1 << n
    rep = bound_argument(F, split=True, code=code, samples=samples, seed=seed)
    mx = rep.details["maxima"]
    closed_form = {
        "max|W_A| <= 2^((n+lam)/2+1) + 2^(t+2)": mx["A"] <= bound,
        "max|W_f| = 2^(n-1) - 2^t": mx["f"] == (N >> 1) - (1 << t),
        "max|W_G| = 2^((n+lam)/2)": mx["G"] == amp,
        "2^((n+lam)/2+2) + 2^(t+3) < 2^n": (amp << 2) + (1 << (t + 3)) < N,
        "(2^(n-1) - 2^t) + 2^((n+lam)/2) + bound < 2^n": (N >> 1) - (1 << t) + amp + bound < N,
        "2 bound + 2^((n+lam)/2) < 2^n": 2 * bound + amp < N,
    }
    # component spectra of 1_E + Tr(mu~ G): rows (1 | mu~ << 1) of (1_E, G)
    allowed = mixed_spectrum_values(n, lam)
    _, G, ctx, _, _ = theorem10_parts(n, int(fam["i"]), fam["a"], fam["b"], fam["modulus"])
    sub = np.zeros(1 << n, dtype=np.uint8)
    sub[ctx.subfield(t)] = 1
    E_ind = BooleanFunction(n, sub)
    H = concat(E_ind, G)
    seen: set[int] = set()
    for mus, rows in iter_spectra(H):
        sel = (mus & 1) == 1
        sel &= (mus >> 1) != 0
        if sel.any():
            seen.update(np.unique(rows[sel]).tolist())
    closed_form["mixed value set"] = seen <= allowed
    failed = [k for k, ok in closed_form.items() if not ok]
    if failed:
        raise VerificationFailure(f"closed-form display violated: {', '.join(failed)}")
    details = dict(rep.details)
    details.update({"bound": bound, "closed_form_checks": closed_form, "mixed_values": sorted(seen)})
    return MinimalityReport(True, "bound-argument", None, details)
