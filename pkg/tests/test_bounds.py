import math
from fractions import Fraction

import mpmath
import pytest

from randknot.bounds import (
    InapplicableBound,
    complement_bound_not_apex,
    complement_edge_bound,
    exact_tail,
    exact_tail_fraction,
    gilbert_report,
    hoeffding_bound,
    hoeffding_t,
    known_bounds,
    log_tail,
    model3_chain,
)
from randknot.enumeration import size_profile


def _mp_tail(n, p):
    mpmath.mp.dps = 60
    big_n = n * (n - 1) // 2
    p = mpmath.mpf(p)
    return sum(mpmath.binomial(big_n, k) * p ** k * (1 - p) ** (big_n - k) for k in range(5 * n - 14))


def test_exact_tail_examples():
    for n in (7, 8, 15):
        assert exact_tail(n, 1.0) == 0.0
    assert exact_tail(7, 1e-12) == pytest.approx(1.0)
    oracle = _mp_tail(20, 0.5)
    assert abs(exact_tail(20, 0.5) - float(oracle)) <= 1e-9 * float(oracle)


@pytest.mark.parametrize("n,p", [(20, 0.5), (25, 0.3), (31, 0.5), (45, 0.3), (60, 0.7), (90, 0.4)])
def test_exact_tail_relative_error(n, p):
    oracle = _mp_tail(n, p)
    got = exact_tail(n, p)
    assert abs(got - float(oracle)) <= 1e-9 * float(oracle)


def test_both_paths_agree():
    for n in (10, 20, 30):
        for p in (0.3, 0.5):
            assert math.exp(log_tail(n, p)) == pytest.approx(float(exact_tail_fraction(n, p)), rel=1e-9)


def test_exact_tail_domain():
    with pytest.raises(ValueError):
        exact_tail(6, 0.5)
    with pytest.raises(ValueError):
        exact_tail(10, 0.0)


def test_hoeffding_examples():
    assert hoeffding_t(20, 0.5) == pytest.approx(0.5 - 85 / 190)
    mpmath.mp.dps = 40
    t = mpmath.mpf(1) / 2 - mpmath.mpf(85) / 190
    assert hoeffding_bound(20, 0.5) == pytest.approx(float(mpmath.exp(-2 * t * t * 190)), rel=1e-12)
    assert round(hoeffding_bound(20, 0.5), 4) == 0.3490
    edge = 85 / 190 + 1e-9
    assert hoeffding_bound(20, edge) == pytest.approx(1.0)
    b = [hoeffding_bound(n, 0.5) for n in (20, 30, 40)]
    assert b[0] > b[1] > b[2]
    with pytest.raises(InapplicableBound):
        hoeffding_bound(10, 0.3)


def test_hoeffding_dominates_exact_tail():
    for n in range(10, 61):
        for p in (0.3, 0.5, 0.7):
            if hoeffding_t(n, p) > 0:
                assert exact_tail(n, p) <= hoeffding_bound(n, p)


def test_tail_monotone_in_p():
    for n in (10, 20, 40):
        vals = [exact_tail(n, p / 20) for p in range(1, 21)]
        assert all(a >= b for a, b in zip(vals, vals[1:]))


def test_model3_chain_examples():
    r = model3_chain(106)
    assert (r.N, r.q, r.r) == (5565, 2782, 515)
    assert r.q - r.r == 2267 and r.N - r.r == 5050 and r.all_hold
    assert model3_chain(18).r == 75 and model3_chain(18).q == 76
    assert model3_chain(200).model3_terms["log_final_term"] < -100 * math.log(10)
    with pytest.raises(ValueError):
        model3_chain(17)


def test_model3_links_hold_over_range():
    for n in list(range(18, 130)) + [150, 200, 300, 500]:
        assert model3_chain(n).all_hold, n


def test_factorial_inequality_used_in_final_step():
    assert all(math.factorial(n) <= n ** (n - 1) for n in range(1, 600))


def test_labelled_counts_bound_unlabelled_counts():
    for n in range(2, 9):
        big_n = n * (n - 1) // 2
        prof = size_profile(n)
        run_u = run_l = 0
        for k in range(big_n + 1):
            run_u += prof[k]
            run_l += math.comb(big_n, k)
            assert run_u <= run_l


def test_complement_edge_bound():
    assert complement_edge_bound() == 18
    assert -(-136 // 2) < 5 * 17 - 14
    assert -(-171 // 2) >= 5 * 19 - 14


def test_known_bounds():
    kb = known_bounds()
    assert kb["n_NP"] == 9 and kb["n_IK"] == (13, 18) and kb["n_NA"] == 11
    assert kb["n_NnA_upper"](2) == 13
    assert complement_bound_not_apex(2) == min(2 * 2 + 9, 13)
    assert complement_bound_not_apex(5) == 19


def test_report_serialises():
    rep = gilbert_report(20, 0.5)
    assert rep.all_hold and rep.t == pytest.approx(hoeffding_t(20, 0.5))
    assert len(rep.csv_row()) == len(rep.csv_fields())
    assert rep.to_json()["N"] == 190
    rep = gilbert_report(10, 0.3)  # t < 0: no Hoeffding column
    assert rep.hoeffding is None
