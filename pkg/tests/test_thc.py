import math

import pytest
from hypothesis import given, settings, strategies as st

from thh import thc
from thh.padic import PrimeContext, nu


def test_dp_degree_and_multiply():
    for p in (2, 3):
        for k in range(1, 10):
            assert thc.dp_degree(p, k) == 2 * p * p * k
    # gamma_i gamma_j = C(i+j, i) gamma_{i+j}
    for p in (2, 3, 5):
        for i in range(1, 12):
            for j in range(1, 12):
                val, idx = thc.dp_multiply(PrimeContext(p), i, j)
                assert idx == i + j
                assert val == nu(p, math.comb(i + j, i)) if math.comb(i + j, i) % p == 0 else val == 0


def test_cap_binomial_and_bounds():
    ctx = PrimeContext(3)
    res = thc.cap(ctx, 2, "a", 7)
    assert res.index == 5
    assert res.valuation == nu(3, math.comb(6, 2))
    assert thc.cap(ctx, 0, "a", 7).index == 7
    with pytest.raises(ValueError):
        thc.cap(ctx, 7, "a", 7)
    with pytest.raises(ValueError):
        thc.cap(ctx, 2, "c", 7)


def test_cohomology_answer_orders():
    for p in (2, 3):
        ctx = PrimeContext(p)
        window = 2 * p**4
        out = thc.thc_ell_HZ(ctx, window)
        assert out[0] == (1, [])
        assert out[2 * p - 1] == (1, [])
        for k in range(1, window // (2 * p * p) + 1):
            d = thc.dp_degree(p, k)
            assert p ** (nu(p, k) + 1) in out[d][1]


def test_divided_power_generator_orders_at_prime_powers():
    for p in (2, 3):
        ctx = PrimeContext(p)
        for k in range(4):
            d = thc.dp_degree(p, p**k)
            if d <= 2 * p**4:
                assert thc.thc_ell_HZ(ctx, d)[d] == (0, [p ** (k + 1)])


def test_hom_ext_mirror_matches_cohomology():
    for p in (2, 3):
        ctx = PrimeContext(p)
        window = 2 * p**4
        mirror = thc.thh_ell_HZ_mirror(ctx, window)
        direct = thc.thc_ell_HZ(ctx, window)
        for d in range(window + 1):
            assert mirror.get(d, (0, [])) == direct.get(d, (0, []))


def test_unit_check_suite_is_clean():
    for p in (2, 3, 5):
        checks = thc.unit_check_suite(PrimeContext(p), p**4)
        bad = [c for c in checks if not c.ok]
        assert bad == []
        assert checks  # nonempty: the claims are actually exercised


def test_naturality_closure_is_empty():
    for p in (2, 3):
        assert thc.naturality_closure(PrimeContext(p), p**4) == []


@settings(max_examples=80, deadline=None)
@given(st.sampled_from([2, 3]), st.integers(1, 30), st.integers(1, 30))
def test_cap_associativity_defect_vanishes(p, i, j):
    assert thc.cap_associativity_defect(PrimeContext(p), i + j + 1, i, j) == 0


def test_mod_p_dimension_tables_agree_with_brute_force():
    for p in (2, 3):
        ctx = PrimeContext(p)
        dims = thc.thc_ell_HFp_dims(ctx, 2 * p**4)
        # E(x, y) (x) Gamma(c): one basis vector per (eps1, eps2, k) triple
        brute = {}
        k = 0
        while thc.dp_degree(p, k) <= 2 * p**4:
            for e1 in (0, 1):
                for e2 in (0, 1):
                    d = (e1 * (2 * p - 1) + e2 * (2 * p * p - 1)
                         + thc.dp_degree(p, k))
                    if d <= 2 * p**4:
                        brute[d] = brute.get(d, 0) + 1
            k += 1
        assert dims == brute
