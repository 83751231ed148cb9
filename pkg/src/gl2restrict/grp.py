"""GL2 over tower levels: matrices, named subgroups, classes, generators.

A matrix is a plain 4-tuple (a, b, c, d) of field ints, meaning [[a, b], [c, d]]
with entries at some tower level.  The named subgroups are the ones the
restriction machinery needs:

* full    -- all of GL2 at the level,
* borel   -- upper triangular invertible,
* aniso   -- the anisotropic torus [[a, b], [b*e2, a]], (a, b) != (0, 0),
             where e2 is epsilon^2 at the q-level and eta^2 at the p-level,
* split   -- diagonal invertible matrices over F_p,
* center  -- scalar matrices over F_p.

Conjugacy classes of GL2(F_p) are computed by brute force (the groups here
have at most 2016 elements) with the lex-least member of each class as its
canonical representative.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .ffield import FiniteField, Tower

Matrix = tuple[int, int, int, int]

IDENTITY: Matrix = (1, 0, 0, 1)


class BudgetError(Exception):
    """An enumeration or solve would exceed the configured budget."""


@dataclass(frozen=True)
class Subgroup:
    kind: str  # full | borel | aniso | split | center
    degree: int

    def __str__(self):
        return f"{self.kind}@deg{self.degree}"


def full(degree: int) -> Subgroup:
    return Subgroup("full", degree)


def borel(degree: int) -> Subgroup:
    return Subgroup("borel", degree)


def aniso(degree: int) -> Subgroup:
    return Subgroup("aniso", degree)


def split() -> Subgroup:
    return Subgroup("split", 1)


def center() -> Subgroup:
    return Subgroup("center", 1)


# ---------------------------------------------------------------------------
# matrix arithmetic over one level


def mmul(F: FiniteField, m: Matrix, n: Matrix) -> Matrix:
    a, b, c, d = m
    e, f_, g, h = n
    return (
        F.add(F.mul(a, e), F.mul(b, g)),
        F.add(F.mul(a, f_), F.mul(b, h)),
        F.add(F.mul(c, e), F.mul(d, g)),
        F.add(F.mul(c, f_), F.mul(d, h)),
    )


def mdet(F: FiniteField, m: Matrix) -> int:
    a, b, c, d = m
    return F.sub(F.mul(a, d), F.mul(b, c))


def minv(F: FiniteField, m: Matrix) -> Matrix:
    a, b, c, d = m
    di = F.inv(mdet(F, m))
    return (F.mul(di, d), F.mul(di, F.neg(b)), F.mul(di, F.neg(c)), F.mul(di, a))


def mat_lex_key(F: FiniteField, m: Matrix):
    return (F.lex_key(m[0]), F.lex_key(m[1]), F.lex_key(m[2]), F.lex_key(m[3]))


def embed_matrix(tower: Tower, m: Matrix, src_degree: int, dst_degree: int) -> Matrix:
    if src_degree == dst_degree:
        return m
    e = lambda x: tower.embed(x, src_degree, dst_degree)
    return (e(m[0]), e(m[1]), e(m[2]), e(m[3]))


def element_order(F: FiniteField, m: Matrix) -> int:
    k = 1
    x = m
    while x != IDENTITY:
        x = mmul(F, x, m)
        k += 1
    return k


# ---------------------------------------------------------------------------
# named subgroups


def subgroup_order(tower: Tower, sub: Subgroup) -> int:
    s = tower.level(sub.degree).size
    if sub.kind == "full":
        return (s * s - 1) * (s * s - s)
    if sub.kind == "borel":
        return s * (s - 1) ** 2
    if sub.kind == "aniso":
        return s * s - 1
    if sub.kind == "split":
        return (s - 1) ** 2
    if sub.kind == "center":
        return s - 1
    raise ValueError(f"unknown subgroup kind {sub.kind!r}")


def _torus_param(tower: Tower, degree: int) -> int:
    """The non-square e2 defining the anisotropic torus at this level."""
    if degree == 1:
        return tower.eta_sq
    if degree == tower.f:
        return tower.epsilon_sq
    raise ValueError(f"anisotropic torus only defined at degrees 1 and f, not {degree}")


def contains(tower: Tower, sub: Subgroup, m: Matrix, m_degree: int | None = None) -> bool:
    """Exact membership; m may live at a sub-level and is embedded first."""
    if m_degree is not None and m_degree != sub.degree:
        if sub.degree % m_degree != 0:
            raise ValueError(f"cannot embed degree {m_degree} into degree {sub.degree}")
        m = embed_matrix(tower, m, m_degree, sub.degree)
    F = tower.level(sub.degree)
    a, b, c, d = m
    if mdet(F, m) == 0:
        return False
    if sub.kind == "full":
        return True
    if sub.kind == "borel":
        return c == 0
    if sub.kind == "aniso":
        e2 = _torus_param(tower, sub.degree)
        return d == a and c == F.mul(b, e2)
    if sub.kind == "split":
        return b == 0 and c == 0
    if sub.kind == "center":
        return b == 0 and c == 0 and a == d
    raise ValueError(f"unknown subgroup kind {sub.kind!r}")


def iter_subgroup(tower: Tower, sub: Subgroup):
    """Deterministic duplicate-free iteration, no budget check."""
    F = tower.level(sub.degree)
    s = F.size
    if sub.kind == "full":
        for m in itertools.product(range(s), repeat=4):
            if mdet(F, m) != 0:
                yield m
    elif sub.kind == "borel":
        for a in range(1, s):
            for d in range(1, s):
                for b in range(s):
                    yield (a, b, 0, d)
    elif sub.kind == "aniso":
        e2 = _torus_param(tower, sub.degree)
        for a in range(s):
            for b in range(s):
                if a or b:
                    yield (a, b, F.mul(b, e2), a)
    elif sub.kind == "split":
        for a in range(1, s):
            for d in range(1, s):
                yield (a, 0, 0, d)
    elif sub.kind == "center":
        for a in range(1, s):
            yield (a, 0, 0, a)
    else:
        raise ValueError(f"unknown subgroup kind {sub.kind!r}")


def enumerate_subgroup(tower: Tower, sub: Subgroup, budget: int | None = None) -> list[Matrix]:
    """Exact element list, cached on the tower; rejects oversize requests."""
    key = ("subgroup", sub)
    if key in tower.cache:
        return tower.cache[key]
    n = subgroup_order(tower, sub)
    if budget is not None and n > budget:
        raise BudgetError(f"|{sub}| = {n} exceeds enumeration budget {budget}")
    elems = list(iter_subgroup(tower, sub))
    assert len(elems) == n, f"enumeration of {sub} produced {len(elems)} != {n}"
    tower.cache[key] = elems
    return elems


def embedded_subgroup(tower: Tower, sub: Subgroup, dst_degree: int) -> list[Matrix]:
    """The subgroup's elements pushed into a larger level, cached."""
    key = ("embedded", sub, dst_degree)
    if key in tower.cache:
        return tower.cache[key]
    elems = [embed_matrix(tower, m, sub.degree, dst_degree) for m in enumerate_subgroup(tower, sub)]
    tower.cache[key] = elems
    return elems


def intersect_with_gp(tower: Tower, sub: Subgroup) -> tuple[list[Matrix], str]:
    """T_q intersected with GL2(F_p), as level-1 matrices plus a classified kind.

    The anisotropic torus of G_q meets G_p in the center Z_p when f is even
    and in the full torus T_p when f is odd (where epsilon is the embedded
    eta).  The intersection is computed exhaustively; the kind is decided by
    set equality against the named candidates.
    """
    if sub.kind != "aniso" or sub.degree != tower.f:
        raise ValueError("only the intersection of the q-level torus with G_p is supported")
    f = tower.f
    members = []
    for m in enumerate_subgroup(tower, sub):
        if all(tower.in_subfield(x, 1, f) for x in m):
            members.append(tuple(tower._pullback(x, f, 1) for x in m))
    member_set = set(members)
    if member_set == set(enumerate_subgroup(tower, center())):
        kind = "center"
    elif member_set == set(enumerate_subgroup(tower, aniso(1))):
        kind = "aniso"
    else:
        kind = "explicit"
    F1 = tower.level(1)
    members.sort(key=lambda m: mat_lex_key(F1, m))
    return members, kind


# ---------------------------------------------------------------------------
# generators and closure


def mulclose(F: FiniteField, gens, limit: int | None = None) -> set[Matrix]:
    seen = set(gens)
    seen.add(IDENTITY)
    frontier = list(seen)
    while frontier:
        new = []
        for g in frontier:
            for h in gens:
                k = mmul(F, g, h)
                if k not in seen:
                    seen.add(k)
                    new.append(k)
                    if limit is not None and len(seen) > limit:
                        raise BudgetError(f"closure exceeded limit {limit}")
        frontier = new
    return seen


def gl2_generators(tower: Tower, degree: int) -> list[Matrix]:
    """Standard generators of GL2 at a level: both elementary transvections
    plus diag(u, 1) for u a generator of the multiplicative group.  These
    generate: conjugating the transvections by diag(u,1)-powers yields every
    elementary matrix, hence SL2, and det diag(u,1) = u generates the
    determinant quotient.
    """
    u = tower.level(degree).generator
    return [(1, 1, 0, 1), (1, 0, 1, 1), (u, 0, 0, 1)]


def gp_generators(tower: Tower) -> list[Matrix]:
    """Generators of GL2(F_p), with the closure verified by enumeration."""
    key = "gp_generators"
    if key in tower.cache:
        return tower.cache[key]
    gens = gl2_generators(tower, 1)
    F = tower.level(1)
    order = subgroup_order(tower, full(1))
    closure = mulclose(F, gens, limit=order)
    if len(closure) != order:
        raise AssertionError(
            f"generator closure has {len(closure)} elements, expected {order}"
        )
    tower.cache[key] = gens
    return gens


# ---------------------------------------------------------------------------
# conjugacy classes of GL2(F_p)


def conjugacy_classes(tower: Tower) -> list[list[Matrix]]:
    """All conjugacy classes of GL2(F_p), each sorted lex, rep first."""
    key = "conj_classes"
    if key in tower.cache:
        return tower.cache[key]
    F = tower.level(1)
    elems = enumerate_subgroup(tower, full(1))
    ordered = sorted(elems, key=lambda m: mat_lex_key(F, m))
    seen = set()
    classes = []
    for g in ordered:
        if g in seen:
            continue
        cls = {mmul(F, mmul(F, h, g), minv(F, h)) for h in elems}
        seen |= cls
        classes.append(sorted(cls, key=lambda m: mat_lex_key(F, m)))
    assert sum(len(c) for c in classes) == len(elems)
    tower.cache[key] = classes
    return classes


def p_regular_class_reps(tower: Tower) -> list[Matrix]:
    """Lex-least representative of each class whose order is coprime to p."""
    key = "p_regular_reps"
    if key in tower.cache:
        return tower.cache[key]
    F = tower.level(1)
    reps = [
        cls[0]
        for cls in conjugacy_classes(tower)
        if element_order(F, cls[0]) % tower.p != 0
    ]
    tower.cache[key] = reps
    return reps
