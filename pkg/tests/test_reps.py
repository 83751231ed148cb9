"""Characters, induced representations, Steinberg model, tensor and sums."""

import random

import pytest

from gl2restrict import brauer, build_tower, grp, reps
from gl2restrict.grp import BudgetError


def test_chi_rs_values():
    t = build_tower(3, 2)
    F = t.level(2)
    for r, s in [(0, 0), (1, 0), (3, 5)]:
        chi = reps.chi_rs(t, 2, r, s)
        for a in range(1, 9):
            for d in range(1, 9):
                assert chi((a, 0, 0, d)) == F.mul(F.pow(a, r), F.pow(d, s))
    assert all(reps.chi_rs(t, 2, 0, 0)(m) == 1
               for m in grp.enumerate_subgroup(t, grp.borel(2))[::17])


def test_omega_value_example():
    # omega_2 on [[0,1],[eta^2,0]] is eta itself
    t = build_tower(3, 1)
    om = reps.omega(t, 1, 1)
    assert om((0, 1, t.eta_sq, 0)) == t.eta


def test_character_domain_check():
    t = build_tower(3, 2)
    chi = reps.chi_rs(t, 2, 1, 0)
    with pytest.raises(ValueError):
        chi.value((1, 0, 1, 1))  # lower triangular, not in the Borel


def test_characters_multiplicative_exhaustive():
    t = build_tower(3, 2)
    F2 = t.level(2)
    om = reps.omega(t, 2, 3)
    tq = grp.enumerate_subgroup(t, grp.aniso(2))
    Ft = t.level(4)
    for g in tq:
        for h in tq:
            assert om.value_at_top(grp.mmul(F2, g, h)) == Ft.mul(om.value_at_top(g), om.value_at_top(h))
    chi = reps.chi_rs(t, 2, 2, 1)
    bq = grp.enumerate_subgroup(t, grp.borel(2))
    rng = random.Random(3)
    for _ in range(4000):
        g, h = rng.choice(bq), rng.choice(bq)
        assert chi(grp.mmul(F2, g, h)) == F2.mul(chi(g), chi(h))


def test_central_character_agreement():
    # chi_r and chi_{i,(r-i)} restrict identically to the center
    t = build_tower(3, 1)
    for r in range(2):
        chi_r = reps.chi_rs(t, 1, r, 0)
        for i in range(1, 3):
            chi_i = reps.chi_rs(t, 1, i % 2, (r - i) % 2)
            for z in grp.enumerate_subgroup(t, grp.center()):
                assert chi_r(z) == chi_i(z)


def test_induced_dimensions():
    t = build_tower(3, 2)
    q = t.q
    assert reps.induce(t, grp.borel(2), reps.chi_rs(t, 2, 1), grp.full(2)).dim == q + 1
    assert reps.induce(t, grp.aniso(2), reps.omega(t, 2, 1), grp.full(2)).dim == q * (q - 1)
    chi_z = reps.restrict_character(reps.chi_rs(t, 1, 1), grp.center())
    assert reps.induce(t, grp.center(), chi_z, grp.split()).dim == 2
    assert reps.induce(t, grp.center(), chi_z, grp.aniso(1)).dim == 4
    assert reps.induce(t, grp.center(), chi_z, grp.full(1)).dim == 24


def test_induction_budget():
    t = build_tower(3, 2)
    with pytest.raises(BudgetError):
        reps.induce(t, grp.aniso(2), reps.omega(t, 2, 1), grp.full(2), dim_budget=10)


def _monomial_compose(F, act_g, act_h):
    sg, cg = act_g
    sh, ch = act_h
    sigma = [sg[sh[j]] for j in range(len(sh))]
    scal = [F.mul(ch[j], cg[sh[j]]) for j in range(len(sh))]
    return sigma, scal


def test_monomial_homomorphism_property():
    t = build_tower(3, 2)
    Ft = t.level(4)
    F2 = t.level(2)
    rep = reps.induce(t, grp.borel(2), reps.chi_rs(t, 2, 5, 2), grp.full(2))
    elems = grp.enumerate_subgroup(t, grp.full(2))
    rng = random.Random(11)
    pairs = [(rng.choice(elems), rng.choice(elems)) for _ in range(100)]
    gens = [grp.embed_matrix(t, g, 1, 2) for g in grp.gp_generators(t)]
    pairs += [(g, h) for g in gens for h in gens]
    for g, h in pairs:
        lhs = rep.monomial_action(grp.mmul(F2, g, h))
        rhs = _monomial_compose(Ft, rep.monomial_action(g), rep.monomial_action(h))
        assert lhs == (rhs[0], rhs[1])


def test_restriction_keeps_dimension_and_identity():
    t = build_tower(3, 2)
    rep = reps.induce(t, grp.borel(2), reps.chi_rs(t, 2, 1), grp.full(2))
    res = reps.restrict(rep, grp.full(1))
    assert res.dim == rep.dim
    sigma, scal = res.monomial_action(grp.IDENTITY)
    assert sigma == list(range(10)) and set(scal) == {1}
    # restricted action equals the embedded action
    for g in grp.enumerate_subgroup(t, grp.full(1))[::7]:
        assert res.monomial_action(g) == rep.monomial_action(grp.embed_matrix(t, g, 1, 2))


def test_steinberg_model_shape():
    for p in (3, 5):
        t = build_tower(p, 1)
        st = reps.steinberg_model(t)
        assert st.dim == p
        F = t.level(1)
        for a in range(1, p):
            for d in range(1, p):
                M = st.matrix((a, 0, 0, d))
                for k in range(p):
                    expect = F.mul(F.pow(a, p - 1 - k), F.pow(d, k))
                    assert M[k][k] == expect
                    assert all(M[j][k] == 0 for j in range(p) if j != k)


def test_steinberg_is_a_homomorphism_sampled():
    t = build_tower(3, 1)
    st = reps.steinberg_model(t)
    F = t.level(1)
    elems = grp.enumerate_subgroup(t, grp.full(1))
    rng = random.Random(5)
    from gl2restrict import linalg
    for _ in range(60):
        g, h = rng.choice(elems), rng.choice(elems)
        assert st.matrix(grp.mmul(F, g, h)) == linalg.mat_mul(
            t.level(2), st.matrix(g), st.matrix(h))


def test_tensor_with_trivial_character_is_identity():
    t = build_tower(3, 1)
    rep = reps.induce(t, grp.borel(1), reps.chi_rs(t, 1, 1), grp.full(1))
    triv = reps.CharRep(reps.det_power(t, 1, 0), grp.full(1))
    tw = reps.tensor(rep, triv)
    assert tw.dim == rep.dim
    for g in grp.enumerate_subgroup(t, grp.full(1))[::5]:
        assert tw.monomial_action(g) == rep.monomial_action(g)


def test_tensor_dimensions_and_det_twist_identity():
    # ind(chi_{r,s}) and ind(chi_{r-s}) (x) det^s have equal fingerprints
    t = build_tower(3, 2)
    st = reps.steinberg_model(t)
    base = reps.induce(t, grp.borel(1), reps.chi_rs(t, 1, 1), grp.full(1))
    assert reps.tensor(base, st).dim == base.dim * st.dim
    for r, s in [(3, 1), (5, 2), (2, 7)]:
        a = reps.restrict(
            reps.induce(t, grp.borel(2), reps.chi_rs(t, 2, r, s), grp.full(2)),
            grp.full(1))
        plain = reps.induce(t, grp.borel(2), reps.chi_rs(t, 2, (r - s) % 8, 0), grp.full(2))
        b = reps.tensor(reps.restrict(plain, grp.full(1)),
                        reps.CharRep(reps.det_power(t, 1, s), grp.full(1)))
        assert brauer.compare(brauer.fingerprint(t, a), brauer.fingerprint(t, b))["equal"]


def test_direct_sum_dimensions_and_zero():
    t = build_tower(3, 1)
    rep = reps.induce(t, grp.borel(1), reps.chi_rs(t, 1, 1), grp.full(1))
    s = reps.direct_sum([(rep, 3)])
    assert s.dim == 3 * rep.dim
    zero = reps.direct_sum([(rep, 0)])
    assert zero.dim == 0
    assert brauer.fingerprint(t, zero).polys == ((1,),) * 6


def test_torus_tower_splitting_inside_induction():
    # ind_{Z_p}^{T_p} of a central character splits into the p+1 torus
    # characters with matching central restriction
    t = build_tower(3, 1)
    for r in range(2):
        chi_z = reps.restrict_character(reps.chi_rs(t, 1, r), grp.center())
        ind = reps.induce(t, grp.center(), chi_z, grp.aniso(1))
        chars = [reps.omega(t, 1, k) for k in range(8)]
        mults = reps.character_multiplicities(t, ind, chars)
        got = {k for k, (_, m) in enumerate(mults) if m}
        assert got == {(r + 2 * i) % 8 for i in range(4)}
        assert sum(m for _, m in mults) == 4


def test_frobenius_reciprocity_sanity():
    # the p-level induction embeds into the restricted q-level induction
    for p, f in [(3, 2), (3, 3)]:
        t = build_tower(p, f)
        r = 1
        big_b = reps.restrict(
            reps.induce(t, grp.borel(f), reps.chi_rs(t, f, r), grp.full(f)),
            grp.full(1))
        small_b = reps.induce(t, grp.borel(1), reps.chi_rs(t, 1, r), grp.full(1))
        assert brauer.hom_dim(t, small_b, big_b) >= 1
        big_t = reps.restrict(
            reps.induce(t, grp.aniso(f), reps.omega(t, f, r), grp.full(f)),
            grp.full(1))
        small_t = reps.induce(t, grp.aniso(1), reps.omega(t, 1, r), grp.full(1))
        assert brauer.hom_dim(t, small_t, big_t) >= 1
