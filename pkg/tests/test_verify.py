from thh import verify
from thh.padic import PrimeContext


def _clean(checks):
    return [c for c in checks if not c.ok]


def test_k1_enumeration_spot_values():
    ctx = PrimeContext(2)
    assert [e[:3] for e in verify.enumerate_k1_basis(ctx, 7).entries] == [("x", 2, 0)]
    assert verify.enumerate_k1_basis(ctx, 8).entries == ()
    assert [e[:3] for e in verify.enumerate_k1_basis(ctx, 12).entries] == [("x'", 1, 0)]


def test_k1_dimension_budget_low_degrees():
    # the scan agrees with the closed-form k(1) module dimension per degree
    from thh import closed_forms as cf
    for p in (2, 3):
        ctx = PrimeContext(p)
        k1 = cf.thh_ell_k1(ctx, 40)
        for d in range(40):
            rank, tors = k1.group_at(d)
            assert len(verify.enumerate_k1_basis(ctx, d).entries) == rank + len(tors)


def test_lemma_suite_passes():
    for p in (2, 3, 5):
        checks = verify.lemma_suite_section4(PrimeContext(p), 2)
        assert _clean(checks) == []
        assert checks


def test_matching_window_twenty_pairs():
    rep = verify.matching_B1(PrimeContext(2), 20)
    assert rep.ok
    assert rep.pairs["mu"] == ("x", 1, 0, 2)
    assert rep.pairs["l2*mu"] == ("x'", 1, 0, 2)
    assert rep.pairs["mu^2"] == ("x", 2, 0, 4)


def test_matching_survivors_window_twelve():
    rep = verify.matching_B1(PrimeContext(2), 12)
    assert rep.ok
    # reduced convention: the unit monomial is not tracked
    assert set(rep.survivors) == {"l1", "l2", "l1*l2", "l1*mu"}


def test_matching_empty_window():
    rep = verify.matching_B1(PrimeContext(2), 0)
    assert rep.ok
    assert rep.pairs == {}


def test_cofiber_identities_short_window():
    for p in (2, 3):
        assert _clean(verify.cofiber_checks(PrimeContext(p), 30)) == []
    assert _clean(verify.cofiber_checks_ko(30)) == []


def test_dueling_short_window():
    for p in (2, 3):
        assert _clean(verify.dueling_comparison(PrimeContext(p), 24)) == []


def test_gap_and_rational_short():
    for p in (2, 3):
        assert _clean(verify.gap_check(PrimeContext(p), 1)) == []
        assert _clean(verify.rational_rank_check(PrimeContext(p), 40)) == []


def test_word_transport():
    for p in (2, 3):
        for n in range(3):
            assert verify.torsion_word_transport(PrimeContext(p), n)


def test_duality_short():
    for p in (2, 3):
        assert _clean(verify.duality_check(PrimeContext(p), 2, 40)) == []


def test_ko_comparison_short():
    assert _clean(verify.ko_ku_comparison(32)) == []
    assert _clean(verify.eta_square_annihilates(32)) == []
