"""Coset systems, factorization, double cosets, conjugated characters."""

import pytest

from gl2restrict import build_tower, grp, mackey, projline, reps


def test_borel_coset_system_at_3_2():
    t = build_tower(3, 2)
    sys = mackey.coset_system(t, grp.borel(2))
    assert sys.dim == 10
    # the identification hits every point of P^1(F_q) exactly once
    assert set(sys.point_of) == set(projline.all_points(t.level(2)))
    # g_x maps to x-hat and w to infinity-hat
    for rep, pt in zip(sys.reps, sys.point_of):
        if rep == (0, 1, 1, 0):
            assert pt == projline.INFINITY
        else:
            assert rep == (1, 0, pt, 1)


def test_aniso_coset_system_at_3_2():
    t = build_tower(3, 2)
    sys = mackey.coset_system(t, grp.aniso(2))
    assert sys.dim == 72
    assert set(sys.point_of) == projline.epsilon_orbit(t)


def test_factor_properties():
    t = build_tower(3, 2)
    F = t.level(2)
    sys_b = mackey.coset_system(t, grp.borel(2))
    # factor(g_x) = (g_x, identity)
    for x in range(9):
        i, h = sys_b.factor((1, 0, x, 1))
        assert sys_b.reps[i] == (1, 0, x, 1) and h == grp.IDENTITY
    # borel elements land in the identity coset
    for b in grp.enumerate_subgroup(t, grp.borel(2))[::31]:
        i, h = sys_b.factor(b)
        assert sys_b.reps[i] == (1, 0, 0, 1) and h == b
    # every g factors as rep * h with h in the small subgroup
    for sys, small in [(sys_b, grp.borel(2)), (mackey.coset_system(t, grp.aniso(2)), grp.aniso(2))]:
        for g in grp.enumerate_subgroup(t, grp.full(2))[::97]:
            i, h = sys.factor(g)
            assert grp.contains(t, small, h)
            assert grp.mmul(F, sys.reps[i], h) == g


def test_cosets_cover_the_group():
    t = build_tower(3, 2)
    for small in (grp.borel(2), grp.aniso(2)):
        sys = mackey.coset_system(t, small)
        assert sys.dim * grp.subgroup_order(t, small) == grp.subgroup_order(t, grp.full(2))


def test_generic_coset_system():
    t = build_tower(3, 1)
    sys = mackey.coset_system(t, grp.center(), ambient=grp.split())
    assert sys.dim == 2
    F = t.level(1)
    for g in grp.enumerate_subgroup(t, grp.split()):
        i, h = sys.factor(g)
        assert grp.contains(t, grp.center(), h)
        assert grp.mmul(F, sys.reps[i], h) == g


@pytest.mark.parametrize("p,f,which,count,kinds", [
    (3, 2, "borel", 2, ["aniso", "borel"]),
    (3, 3, "borel", 2, ["borel", "center"]),
    (3, 2, "aniso", 3, ["center", "center", "center"]),
    (3, 3, "aniso", 30, ["aniso"] + ["center"] * 29),
])
def test_double_coset_counts_and_kinds(p, f, which, count, kinds):
    t = build_tower(p, f)
    small = grp.borel(f) if which == "borel" else grp.aniso(f)
    data = mackey.double_coset_reps(t, small)
    assert len(data.entries) == count
    assert sorted(e.kind for e in data.entries) == sorted(kinds)


def test_conjugated_intersections_for_borel_at_3_2():
    t = build_tower(3, 2)
    data = mackey.double_coset_reps(t, grp.borel(2))
    by_kind = {e.kind: e for e in data.entries}
    assert set(by_kind["borel"].intersection) == set(grp.enumerate_subgroup(t, grp.borel(1)))
    assert set(by_kind["aniso"].intersection) == set(grp.enumerate_subgroup(t, grp.aniso(1)))
    # the torus gamma is g_x at x = eta
    assert by_kind["aniso"].gamma == (1, 0, t.embed(t.eta, 2, 2), 1)


def test_double_cosets_partition_brute_force():
    t = build_tower(3, 2)
    for small in (grp.borel(2), grp.aniso(2)):
        data = mackey.double_coset_reps(t, small)
        out = mackey.verify_double_coset_partition(t, small, data.gammas)
        assert out["disjoint"] and out["covers"]
        # size law |G_p gamma H| = |G_p| |H| / |H^gamma|
        for entry, size in zip(data.entries, out["sizes"]):
            expected = 48 * grp.subgroup_order(t, small) // len(entry.intersection)
            assert size == expected


def test_w_and_g0_give_the_same_double_coset():
    t = build_tower(3, 2)
    F = t.level(2)
    gp_emb = grp.embedded_subgroup(t, grp.full(1), 2)
    bq = grp.enumerate_subgroup(t, grp.borel(2))

    def double_coset(gamma):
        out = set()
        for g in gp_emb:
            gg = grp.mmul(F, g, gamma)
            for h in bq:
                out.add(grp.mmul(F, gg, h))
        return out

    assert double_coset((1, 0, 0, 1)) == double_coset((0, 1, 1, 0))


def test_partition_budget_rejected():
    t = build_tower(3, 2)
    data = mackey.double_coset_reps(t, grp.borel(2))
    with pytest.raises(grp.BudgetError):
        mackey.verify_double_coset_partition(t, grp.borel(2), data.gammas, budget=10)


def test_twisted_character_matches_torus_character():
    # chi_r twisted by g_eta agrees with omega_2^r on all of T_p (even f)
    t = build_tower(3, 2)
    data = mackey.double_coset_reps(t, grp.borel(2))
    eta_entry = next(e for e in data.entries if e.kind == "aniso")
    for r in range(8):
        chi = reps.chi_rs(t, 2, r, 0)
        tw = reps.twist_character(t, chi, eta_entry.gamma, list(eta_entry.intersection))
        om = reps.omega(t, 1, r)
        for m in grp.enumerate_subgroup(t, grp.aniso(1)):
            assert tw.value_at_top(m) == om.value_at_top(m)


def test_twist_by_identity_is_restriction():
    t = build_tower(3, 2)
    chi = reps.chi_rs(t, 2, 3, 1)
    members = grp.enumerate_subgroup(t, grp.borel(1))
    tw = reps.twist_character(t, chi, grp.IDENTITY, members)
    res = reps.restrict_character(chi, grp.borel(1))
    for m in members:
        assert tw(m) == res(m)


def test_twists_agree_on_the_center():
    # chi^{g_x} restricted to Z_p equals chi restricted to Z_p, for every x
    t = build_tower(3, 2)
    chi = reps.chi_rs(t, 2, 5, 0)
    centre = grp.enumerate_subgroup(t, grp.center())
    res = reps.restrict_character(chi, grp.center())
    for x in range(9):
        tw = reps.twist_character(t, chi, (1, 0, x, 1), centre)
        for z in centre:
            assert tw(z) == res(z)
