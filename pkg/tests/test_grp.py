"""GL2 arithmetic, named subgroups, conjugacy classes, generators."""

import random

import pytest

from gl2restrict import build_tower, grp
from gl2restrict.grp import IDENTITY, BudgetError

from oracles import burnside_class_count


def test_subgroup_orders_as_enumerated():
    t = build_tower(3, 2)
    cases = [
        (grp.full(1), 48),
        (grp.full(2), 5760),
        (grp.borel(2), 576),
        (grp.aniso(2), 80),
        (grp.split(), 4),
        (grp.center(), 2),
    ]
    for sub, n in cases:
        elems = grp.enumerate_subgroup(t, sub)
        assert len(elems) == n == grp.subgroup_order(t, sub)
        assert len(set(elems)) == n
    assert len(grp.enumerate_subgroup(build_tower(5, 2), grp.center())) == 4


def test_enumeration_budget():
    t = build_tower(3, 4)
    with pytest.raises(BudgetError):
        grp.enumerate_subgroup(t, grp.full(4), budget=600_000)


def test_group_axioms_sampled():
    t = build_tower(3, 2)
    F = t.level(2)
    rng = random.Random(7)
    elems = grp.enumerate_subgroup(t, grp.full(2))
    for _ in range(200):
        g, h, k = (rng.choice(elems) for _ in range(3))
        assert grp.mmul(F, grp.mmul(F, g, h), k) == grp.mmul(F, g, grp.mmul(F, h, k))
        assert grp.mmul(F, g, grp.minv(F, g)) == IDENTITY


@pytest.mark.parametrize("kind", ["borel", "aniso", "split", "center"])
def test_subgroups_closed_under_product_and_inverse(kind):
    t = build_tower(3, 2)
    degree = 2 if kind in ("borel", "aniso") else 1
    sub = grp.Subgroup(kind, degree)
    F = t.level(degree)
    elems = grp.enumerate_subgroup(t, sub)
    eset = set(elems)
    for g in elems:
        assert grp.minv(F, g) in eset
        for h in elems:
            assert grp.mmul(F, g, h) in eset


def test_aniso_torus_is_abelian():
    t = build_tower(3, 2)
    F = t.level(2)
    elems = grp.enumerate_subgroup(t, grp.aniso(2))
    assert len(elems) == 80
    for g in elems:
        for h in elems:
            assert grp.mmul(F, g, h) == grp.mmul(F, h, g)


def test_contains_shape_examples():
    t = build_tower(3, 2)
    assert grp.contains(t, grp.borel(2), (1, 1, 0, 1))
    assert not grp.contains(t, grp.borel(2), (1, 0, 1, 1))
    # [[0,1],[eta^2,0]] sits in the p-level torus
    assert grp.contains(t, grp.aniso(1), (0, 1, t.eta_sq, 0))
    assert not grp.contains(t, grp.center(), (1, 0, 0, 2))
    # singular matrices are never members
    assert not grp.contains(t, grp.borel(2), (1, 1, 0, 0))


def test_contains_embeds_lower_level_elements():
    t = build_tower(3, 3)
    # T_p element tested inside T_q: possible exactly because f is odd
    m = (0, 1, t.eta_sq, 0)
    assert grp.contains(t, grp.aniso(3), m, m_degree=1)


@pytest.mark.parametrize("p,f,kind,size", [
    (3, 2, "center", 2),
    (3, 3, "aniso", 8),
    (5, 2, "center", 4),
])
def test_torus_intersection_with_gp(p, f, kind, size):
    t = build_tower(p, f)
    members, got_kind = grp.intersect_with_gp(t, grp.aniso(f))
    assert got_kind == kind
    assert len(members) == size
    # independent cross-check: intersect the embedded element sets directly
    tq = set(grp.enumerate_subgroup(t, grp.aniso(f)))
    gp_emb = {
        tuple(t.embed(x, 1, f) for x in m): m
        for m in grp.enumerate_subgroup(t, grp.full(1))
    }
    direct = sorted(m1 for mf, m1 in gp_emb.items() if mf in tq)
    assert direct == sorted(members)


def test_conjugacy_classes_at_p3():
    t = build_tower(3, 1)
    classes = grp.conjugacy_classes(t)
    assert len(classes) == 8
    assert sum(len(c) for c in classes) == 48
    reps = grp.p_regular_class_reps(t)
    assert len(reps) == 6
    assert IDENTITY in reps
    # classes are conjugation-stable
    F = t.level(1)
    elems = grp.enumerate_subgroup(t, grp.full(1))
    for cls in classes:
        cset = set(cls)
        g = cls[0]
        assert {grp.mmul(F, grp.mmul(F, h, g), grp.minv(F, h)) for h in elems} == cset


def test_class_counts_against_burnside():
    for p in (3, 5):
        t = build_tower(p, 1)
        F = t.level(1)
        elems = grp.enumerate_subgroup(t, grp.full(1))
        mul = lambda a, b: grp.mmul(F, a, b)
        assert len(grp.conjugacy_classes(t)) == burnside_class_count(elems, mul)


def test_p_regular_count_at_p5():
    # (p-1) central + (p-1)(p-2)/2 split + (p^2-p)/2 anisotropic classes
    t = build_tower(5, 1)
    assert len(grp.p_regular_class_reps(t)) == 4 + 6 + 10
    assert len(grp.conjugacy_classes(t)) == 24


def test_element_orders_are_coprime_to_p_on_regular_reps():
    t = build_tower(5, 1)
    F = t.level(1)
    for m in grp.p_regular_class_reps(t):
        assert grp.element_order(F, m) % 5 != 0


def test_generators_close_to_the_whole_group():
    for p, expected in [(3, 48), (5, 480)]:
        t = build_tower(p, 1)
        gens = grp.gp_generators(t)
        assert len(grp.mulclose(t.level(1), gens)) == expected


def test_dropping_diagonal_generator_gives_proper_subgroup():
    t = build_tower(5, 1)
    F = t.level(1)
    transvections = grp.gp_generators(t)[:2]
    closure = grp.mulclose(F, transvections)
    # the two transvections generate SL2 only: determinant never hits a non-square
    assert len(closure) == 120
    assert all(grp.mdet(F, m) == 1 for m in closure)


def test_embed_matrix_functorial():
    t = build_tower(3, 2)
    F1, F2 = t.level(1), t.level(2)
    for m in grp.enumerate_subgroup(t, grp.full(1)):
        for n in grp.enumerate_subgroup(t, grp.center()):
            lhs = grp.embed_matrix(t, grp.mmul(F1, m, n), 1, 2)
            rhs = grp.mmul(F2, grp.embed_matrix(t, m, 1, 2), grp.embed_matrix(t, n, 1, 2))
            assert lhs == rhs
