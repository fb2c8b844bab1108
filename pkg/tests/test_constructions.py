import numpy as np
import pytest

from vbcodes.boolfun import BooleanFunction, indicator_sum_walsh
from vbcodes.constructions import (build_family, builder_params, concat, default_theorem10_pair,
                                   default_theorem8_pair, desarguesian_spread, gold, gold_params,
                                   mixed_spectrum_values, modified_indicator, ps_f_theorem6, ps_g,
                                   ps_vectorial_bent, selected_indices)
from vbcodes.errors import ConstraintViolation
from vbcodes.gf2 import Subspace, dual_subspace, field
from vbcodes.vectorial import all_spectra, classify_vectorial

import oracles


def dual_union(spread, ks):
    out = np.zeros(1 << spread.n, dtype=bool)
    for k in ks:
        out |= dual_subspace(spread[k]).members
    return out


@pytest.mark.parametrize("t", range(2, 7))
def test_spread_invariants(t):
    sp = desarguesian_spread(t)
    sp.check()
    assert len(sp) == (1 << t) + 1
    seen = np.zeros(1 << sp.n, dtype=int)
    for a in range(len(sp)):
        assert sp[a].dim == t
        seen += sp[a].members
        for b in range(a + 1, len(sp)):
            assert np.flatnonzero(sp[a].members & sp[b].members).tolist() == [0]
    assert seen[0] == len(sp) and set(seen[1:].tolist()) == {1}


def test_spread_orientation():
    sp = desarguesian_spread(3)
    assert 1 in sp[0] and (1 << 3) in sp[8]
    assert all(sp[k].indicator().sum() == 8 for k in range(9))


@pytest.mark.parametrize("t", [3, 4, 5])
def test_theorem6_f_spectrum(t):
    sp = desarguesian_spread(t)
    f = ps_f_theorem6(sp)
    n = 2 * t
    assert f(0) == 0 and f.weight == 2 * ((1 << t) - 1)
    W = f.spectrum.values
    duals = dual_union(sp, [0, 1 << t])
    assert W[0] == (1 << n) - 4 * ((1 << t) - 1)
    assert set(W[1:][duals[1:]].tolist()) == {-(1 << (t + 1)) + 4}
    assert set(W[~duals].tolist()) == {4}
    assert np.array_equal(W, indicator_sum_walsh(sp, [0, 1 << t]).values)


@pytest.mark.parametrize("t", [2, 3, 4, 5])
@pytest.mark.parametrize("complemented", [False, True])
def test_g_spectra_closed_form(t, complemented):
    sp = desarguesian_spread(t)
    for i in range(t):
        g = ps_g(sp, i, complemented)
        assert g(0) == 0
        ks = selected_indices(t, i, complemented)
        assert len(ks) == 1 << (t - 1)
        plus = dual_union(sp, ks + [1 << t])
        want = np.where(plus, 1 << t, -(1 << t))
        assert np.array_equal(g.spectrum.values, want)


def test_selected_indices_example():
    assert selected_indices(3, 0) == [1, 3, 5, 7]


@pytest.mark.parametrize("t", [2, 3, 4, 5])
def test_vectorial_bent_parity_cases(t):
    sp = desarguesian_spread(t)
    for r in range(2, t + 1):
        G = ps_vectorial_bent(sp, r)
        assert G(0) == 0
        S = all_spectra(G)
        for mu in range(1, 1 << r):
            ks = [k for k in range(1 << t) if oracles.dot(mu, k & ((1 << r) - 1))]
            assert len(ks) == 1 << (t - 1)
            if oracles.popcount(mu) % 2:
                want = np.where(dual_union(sp, ks + [1 << t]), 1 << t, -(1 << t))
            else:
                minus = dual_union(sp, ks)
                minus[0] = False
                want = np.where(minus, -(1 << t), 1 << t)
            assert np.array_equal(S[mu], want), (t, r, mu)


@pytest.mark.parametrize("r", [2, 3])
def test_vectorial_bent_classification(r):
    assert classify_vectorial(ps_vectorial_bent(desarguesian_spread(3), r)).kind == "bent"


@pytest.mark.parametrize("t", [3, 4])
def test_modified_indicator_five_cases(t):
    n = 2 * t
    sp = desarguesian_spread(t)
    E = sp[1 << t]
    a, b = default_theorem8_pair(sp)
    f, ok = modified_indicator(E, a, b)
    assert ok
    W = f.spectrum.values
    assert W.tolist() == oracles.walsh_all(f.table.tolist())
    low = -(1 << (n - 1)) + (1 << t)
    for v in (0, a, b):
        assert W[v] == low
    assert W[a ^ b] == (1 << (n - 1)) - (1 << t)
    rest = np.ones(1 << n, dtype=bool)
    rest[[0, a, b, a ^ b]] = False
    assert set(W[rest].tolist()) <= {0, 1 << t, -(1 << t)}


def test_modified_indicator_violation_witness():
    sp = desarguesian_spread(3)
    E = sp[0]
    dual = [int(v) for v in dual_subspace(E).elements() if v]
    a, b = dual[0], dual[1]
    f, ok = modified_indicator(E, a, b)
    assert not ok
    W = f.spectrum.values
    assert W[a ^ b] - W[a] == 1 << 6


def test_modified_indicator_rejects_bad_input():
    E = desarguesian_spread(3)[0]
    for a, b in ((0, 1), (3, 3), (1, 0)):
        with pytest.raises(ConstraintViolation):
            modified_indicator(E, a, b)


@pytest.mark.parametrize("t", [3, 4, 5])
def test_theorem8_a_components_five_valued(t):
    for r in range(2, t + 1):
        F = build_family("theorem8", n=2 * t, r=r)
        S = all_spectra(F)
        allowed = {0, 1 << t, -(1 << t), 1 << (t + 1), -(1 << (t + 1))}
        for mt in range(1, 1 << r):
            assert set(np.unique(S[1 | mt << 1]).tolist()) <= allowed


def test_gold_parameters():
    assert gold_params(6, 2).amplitude == 16
    p = gold_params(10, 2)
    assert (p.lam, p.amplitude) == (2, 64)
    with pytest.raises(ConstraintViolation, match="n/lambda is odd"):
        gold_params(10, 5)
    G, _ = gold(field(7), 1)
    assert G(0) == 0 and G(1) == 1


@pytest.mark.parametrize("n,i", [(5, 1), (5, 2), (6, 2), (7, 1), (7, 3), (9, 3)])
def test_gold_amplitude(n, i):
    G, p = gold(field(n), i)
    c = classify_vectorial(G)
    assert c.amplitude == p.amplitude == 1 << ((n + oracles.gold_lambda(n, i)) // 2)


def test_gold_matches_power_oracle():
    ctx = field(7)
    G, _ = gold(ctx, 2)
    for x in range(128):
        assert G(x) == oracles.gf_pow(x, 5, ctx.modulus)


def test_concat_components():
    sp = desarguesian_spread(3)
    f = ps_f_theorem6(sp)
    G = ps_vectorial_bent(sp, 2)
    F = concat(f, G)
    S, SG = all_spectra(F), all_spectra(G)
    assert np.array_equal(S[1], f.spectrum.values)
    for mt in range(1, 4):
        assert np.array_equal(S[mt << 1], SG[mt])
    assert F(0) == 0
    with pytest.raises(ConstraintViolation):
        concat(BooleanFunction.zero(4), G)


def test_theorem10_defaults_and_mixed_values():
    ctx = field(10)
    assert default_theorem10_pair(ctx) == (2, 4)
    F = build_family("theorem10", n=10, i=2)
    assert (F.n, F.m) == (10, 11)
    # phi = Tr(mu~ G) + 1_E for every mu~ != 0
    E = BooleanFunction(10, np.isin(np.arange(1024), ctx.subfield(5)).astype(np.uint8))
    G, _ = gold(ctx, 2)
    S = all_spectra(concat(E, G))
    got = set(np.unique(S.values[1 | np.arange(1, 1024) << 1]).tolist())
    allowed = mixed_spectrum_values(10, 2)
    assert len(allowed) == 10
    assert got <= allowed


def test_theorem10_preconditions():
    with pytest.raises(ConstraintViolation, match="n/lambda is odd"):
        build_family("theorem10", n=10, i=5)
    with pytest.raises(ConstraintViolation):
        build_family("theorem10", n=8, i=2)
    with pytest.raises(ConstraintViolation, match="outside E"):
        build_family("theorem10", n=10, i=2, a="0x1", b="0x2")


def test_theorem8_preconditions():
    assert default_theorem8_pair(desarguesian_spread(3)) == (8, 16)
    with pytest.raises(ConstraintViolation, match="E_0"):
        build_family("theorem8", n=6, r=2, a="0x1", b="0x10")
    with pytest.raises(ConstraintViolation):
        build_family("theorem8", n=6, r=4)


def test_theorem6_shape():
    F = build_family("theorem6", n=6, i=0)
    assert (F.n, F.m) == (6, 2)
    with pytest.raises(ConstraintViolation):
        build_family("theorem6", n=6, i=3)
    with pytest.raises(ConstraintViolation):
        build_family("nonsense", n=6)


@pytest.mark.parametrize("kind,kw", [("theorem6", {"n": 8, "i": 3}), ("theorem8", {"n": 8, "r": 3}),
                                     ("theorem10", {"n": 10}), ("gold", {"n": 9, "i": 2}),
                                     ("vbent", {"n": 8, "r": 4, "complemented": True})])
def test_family_record_rebuilds_same_table(kind, kw):
    F = build_family(kind, **kw)
    G = build_family(F.family["kind"], **builder_params(F.family))
    assert F == G
