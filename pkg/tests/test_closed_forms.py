from hypothesis import given, settings, strategies as st

from thh import closed_forms as cf
from thh.graded import Generator, GradedModulePresentation, Relation, RingSpec
from thh.padic import PrimeContext, a_degree, b_degree, lambda_degree, nu


def test_torsion_block_one_at_two():
    # independently reduced by Smith normal form from the presentation
    expected = {0: [4], 2: [4], 4: [2], 6: [2], 8: [4], 10: [4]}
    t1 = cf.build_Tn(PrimeContext(2), 1)
    for d in range(12):
        rank, tors = t1.group_at(d)
        assert rank == 0
        assert sorted(tors) == expected.get(d, [])


def test_torsion_block_zero_is_truncated_ring():
    for p in (2, 3, 5):
        ctx = PrimeContext(p)
        t0 = cf.build_Tn(ctx, 0)
        ring = RingSpec(p, 2 * p - 2)
        trunc = GradedModulePresentation(ring, [Generator("u", 0)], [])
        trunc.add_relation(Relation(((p, 0, "u"),)))
        trunc.add_relation(Relation(((1, p, "u"),)))
        top = cf.tn_top_degree(p, 0)
        assert t0.isomorphic_on(trunc, range(0, top + 2))


def test_torsion_blocks_are_self_dual():
    for p in (2, 3):
        for n in range(4):
            tn = cf.build_Tn(PrimeContext(p), n)
            top = cf.tn_top_degree(p, n)
            for d in range(top + 1):
                lo = tn.group_at(d)
                hi = tn.group_at(top - d)
                assert lo[0] == 0 and hi[0] == 0
                assert sorted(lo[1]) == sorted(hi[1])


def test_integral_hz_answer_orders():
    for p in (2, 3):
        ctx = PrimeContext(p)
        window = 2 * p**4
        hz = cf.thh_ell_HZ(ctx, window)
        assert hz.group_at(lambda_degree(p, 1)) == (1, [])
        i = 1
        while b_degree(p, i) <= window:
            assert hz.group_at(a_degree(p, i)) == (0, [p ** (nu(p, i) + 1)])
            assert hz.group_at(b_degree(p, i)) == (0, [p ** (nu(p, i) + 1)])
            i += 1


def test_reduced_plus_unit_tower_is_unreduced():
    for p in (2, 3):
        ctx = PrimeContext(p)
        red = cf.thh_ell(ctx, 40)
        full = cf.thh_ell(ctx, 40, reduced=False)
        for d in range(41):
            unit = 1 if d % (2 * p - 2) == 0 else 0
            assert full.group_at(d)[0] == red.group_at(d)[0] + unit
            assert sorted(full.group_at(d)[1]) == sorted(red.group_at(d)[1])


def test_mod_p_euler_characteristic_consistency():
    # dim over F_p of the mod-p answer equals dim(M (x) F_p) + dim Tor(M, F_p)
    for p in (2, 3):
        ctx = PrimeContext(p)
        k1 = cf.thh_ell_k1(ctx, 40)
        red = cf.thh_ell(ctx, 41)
        for d in range(40):
            rank, tors = red.group_at(d)
            _, tors_prev = red.group_at(d - 1) if d else (0, [])
            k1_rank, k1_tors = k1.group_at(d)
            assert k1_rank + len(k1_tors) == rank + len(tors) + len(tors_prev)


def test_ko_homotopy_bott_pattern():
    expected = [(1, []), (0, [2]), (0, [2]), (0, []), (1, []),
                (0, []), (0, []), (0, []), (1, [])]
    for d, e in enumerate(expected):
        assert cf.ko_homotopy(d) == e
    for d in range(32):
        assert cf.ko_homotopy(d + 8)[0] == cf.ko_homotopy(d)[0]


def test_reduced_thh_ko_spot_values():
    mod = cf.thh_ko(30)
    assert mod.group_at(5) == (1, [])
    assert mod.group_at(20) == (0, [2])
    assert mod.group_at(26) == (0, [4])


def test_ko_ku_bottom_classes():
    mod = cf.thh_ko_ku(30)
    assert mod.group_at(5) == (1, [])   # bottom odd class
    assert mod.group_at(7) == (1, [])   # v times the bottom class
    assert mod.group_at(8) == (0, [])   # below the first torsion block


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([2, 3]), st.integers(0, 2), st.integers(0, 40))
def test_word_dictionary_round_trip(p, n, seed):
    ctx = PrimeContext(p)
    lo, hi = p**n, 2 * p**n
    m = lo + seed % (hi - lo)
    j_max = nu(p, m)
    j = seed % (j_max + 1)
    nn, w, jj = cf.class_to_word(ctx, m, j)
    assert jj == j
    mm, j2 = cf.word_dictionary(ctx, nn, w, jj)
    assert (mm, j2) == (m, j)


def test_torsion_block_shifts_cover_window():
    for p in (2, 3):
        shifts = list(cf.torsion_block_shifts(p, 2 * p**4))
        assert shifts == sorted(shifts, key=lambda s: s[-1]) or shifts
        # every shift lands inside the window
        for entry in shifts:
            assert entry[-1] <= 2 * p**4
