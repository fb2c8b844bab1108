import numpy as np
import pytest

from vbcodes.boolfun import BooleanFunction
from vbcodes.codes import PlainCode, build_code, weight_distribution
from vbcodes.constructions import (build_family, concat, desarguesian_spread, ps_f_theorem6,
                                   ps_g, ps_vectorial_bent)
from vbcodes.errors import BudgetExceeded, ConstraintViolation, VerificationFailure
from vbcodes.minimality import (ab_check, ab_from_spectra, bound_argument, construction2_premises,
                                covering_bruteforce, ding_bruteforce, genericAB_criterion,
                                is_minimal_bruteforce, minimality_walsh_criterion, sample_ding,
                                walsh_criterion_direct)
from vbcodes.vectorial import VectorialFunction, all_spectra

import oracles


def test_plain_codes():
    assert is_minimal_bruteforce(PlainCode.from_rows(["110", "011"])).minimal
    rep = is_minimal_bruteforce(PlainCode.from_rows(["1111", "1100"]))
    assert not rep.minimal
    assert rep.witness.recheck(PlainCode.from_rows(["1111", "1100"]))


@pytest.mark.parametrize("seed", range(12))
def test_random_small_functions_all_checkers_agree(seed):
    """Random (4, 2)- and (5, 2)-functions: brute force vs spectral vs literal definition."""
    rng = np.random.default_rng(seed)
    n = 4 + seed % 2
    while True:
        table = rng.integers(0, 4, 1 << n)
        table[0] = 0
        F = VectorialFunction(n, 2, table)
        S = all_spectra(F)
        if np.abs(S.values[1:]).max() < 1 << n:
            break
    code = build_code(F)
    rows = code.row_ints()
    want = oracles.is_minimal(rows)
    assert is_minimal_bruteforce(code).minimal == want
    rep = minimality_walsh_criterion(F)
    assert rep.minimal == want == walsh_criterion_direct(F)
    if not rep.minimal:
        assert rep.witness.recheck(code)


def test_spectral_witness_rechecks_on_nonminimal_concat():
    sp = desarguesian_spread(3)
    F = concat(ps_f_theorem6(sp), ps_vectorial_bent(sp, 2))
    code = build_code(F)
    brute = is_minimal_bruteforce(code)
    walsh = minimality_walsh_criterion(F)
    assert not brute.minimal and not walsh.minimal
    assert walsh.witness.recheck(code)
    assert not walsh_criterion_direct(F)


def test_ding_and_covering_agree_on_augmented():
    code = build_code(build_family("vbent", n=6, r=2), augmented=True)
    d, c = ding_bruteforce(code), covering_bruteforce(code)
    assert (d.c1, d.c2) == (c.c1, c.c2)
    assert code.codeword_bits(d.c2).all()  # the all-ones word


def test_hypothesis_violation():
    F = VectorialFunction(3, 1, [0, 1, 0, 1, 0, 1, 0, 1])  # x0, affine
    with pytest.raises(ConstraintViolation):
        minimality_walsh_criterion(F)


def test_walsh_budget():
    with pytest.raises(BudgetExceeded):
        minimality_walsh_criterion(build_family("gold", n=11))


def test_bruteforce_budget():
    with pytest.raises(BudgetExceeded, match="route"):
        is_minimal_bruteforce(build_code(build_family("gold", n=13)))


def test_premises_theorem6_f():
    f = ps_f_theorem6(desarguesian_spread(3))
    prem = construction2_premises(f)
    assert prem.ok


def test_generic_criterion_detects_nonminimal():
    sp = desarguesian_spread(3)
    with pytest.raises(ConstraintViolation):
        # g_0 alone is bent so C_G is minimal, but f = 0 fails f-premises
        genericAB_criterion(BooleanFunction.zero(6), VectorialFunction.from_boolean(ps_g(sp, 0)))


@pytest.mark.parametrize("r", [2, 3])
def test_generic_criterion_theorem8(r):
    F = build_family("theorem8", n=6, r=r)
    f, G = F.coordinate(0), VectorialFunction(6, r, F.table >> 1)
    rep, ab = genericAB_criterion(f, G)
    assert rep.minimal and not ab.satisfies_AB


def test_ab_semantics():
    code = build_code(build_family("theorem6", n=6))
    dist = weight_distribution(code)
    ab = ab_check(dist, code.function)
    assert (ab.satisfies_AB, ab.spectral_check, ab.ratio) == (False, True, "14/38")
    assert ab_from_spectra(code.function) == ab
    with pytest.raises(VerificationFailure):
        from vbcodes.codes import WeightDistribution
        ab_check(WeightDistribution({0: 1, 28: 1, 36: 1}), code.function)


def test_bound_argument_inconclusive_is_not_a_verdict():
    # read without the (f, G) split, max|W| = 36 > 64/2 and the bounds cannot conclude
    F = build_family("theorem6", n=6)
    with pytest.raises(VerificationFailure, match="inconclusive"):
        bound_argument(F, split=False, samples=0)
    assert bound_argument(F, samples=0).minimal


def test_bound_argument_gold():
    rep = bound_argument(build_family("gold", n=9), samples=20000)
    assert rep.minimal and rep.route == "bound-argument"


def test_sampling_finds_planted_violation():
    code = PlainCode.from_rows(["1111", "1100"])
    w = sample_ding(code, samples=1000, seed=1)
    assert w is not None and w.recheck(code)
