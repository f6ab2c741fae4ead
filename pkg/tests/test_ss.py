import pytest

from thh import closed_forms as cf, ss
from thh.padic import PrimeContext


def _agree(result, reference, degrees):
    mismatches = []
    for d in degrees:
        got = result.group_at(d)
        want = reference.group_at(d)
        if (got[0], sorted(got[1])) != (want[0], sorted(want[1])):
            mismatches.append((d, got, want))
    return mismatches


def test_p_tower_engine_reproduces_integral_hz():
    for p in (2, 3):
        ctx = PrimeContext(p)
        window = 2 * p**4
        out = ss.v0_tower_setup(ctx, window).run()
        ref = cf.thh_ell_HZ(ctx, window, reduced=False)
        assert _agree(out, ref, range(window + 1)) == []


def test_v_tower_engine_reproduces_integral_answer():
    for p, window in ((2, 40), (3, 80)):
        ctx = PrimeContext(p)
        out = ss.v1_tower_setup(ctx, window).run()
        ref = cf.thh_ell(ctx, window)
        assert _agree(out, ref, range(window + 1)) == []


def test_eta_tower_engine_reproduces_real_answer():
    out = ss.eta_tower_setup(64).run()
    ref = cf.thh_ko(64)
    assert _agree(out, ref, range(65)) == []


def test_base_engine_reproduces_ko_coefficients():
    out = ss.ko_base_setup(40).run()
    for d in range(41):
        assert out.group_at(d) == cf.ko_homotopy(d)


def test_sign_flip_gives_the_same_groups():
    # flipping every differential's sign cannot change the abutment
    for p, window in ((2, 32), (3, 40)):
        ctx = PrimeContext(p)
        plain = ss.v1_tower_setup(ctx, window).run()
        flipped = ss.v1_tower_setup(ctx, window).sign_flipped().run()
        assert _agree(flipped, plain, range(window + 1)) == []


def test_eta_sign_flip():
    plain = ss.eta_tower_setup(40).run()
    flipped = ss.eta_tower_setup(40).sign_flipped().run()
    assert _agree(flipped, plain, range(41)) == []


def test_non_cycle_source_is_rejected():
    setup = ss.v0_tower_setup(PrimeContext(2), 16)
    rules = list(setup.rules)
    # target a class that earlier differentials have already killed
    victim = rules[0]
    bogus = ss.Rule(victim.page + 1, victim.slot, victim.source,
                    victim.target, "bogus-repeat")
    setup.ss.run(rules, 1, audit=True)
    with pytest.raises(ss.EngineError):
        setup.ss.run([bogus], bogus.page, audit=True)


def test_audit_catches_rank_growth():
    # a differential out of a dead class must be refused
    setup = ss.v1_tower_setup(PrimeContext(2), 16)
    first = setup.rules[0]
    bad = ss.Rule(first.page, first.slot, first.source,
                  tuple(2 * t for t in first.target), first.name + "-doubled")
    fresh = ss.v1_tower_setup(PrimeContext(2), 16)
    replaced = [bad if r is not first else bad
                for r in [bad] + [r for r in fresh.rules if r.name != first.name]]
    with pytest.raises(ss.EngineError):
        fresh.ss.run(replaced + [first], setup.last_page, audit=True)
