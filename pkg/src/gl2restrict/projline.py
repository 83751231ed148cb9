"""Projective lines over tower levels and the GL2 orbit machinery.

A point of P^1(F_s) is an int: x >= 0 means [1 : x] (written x-hat) and the
constant INFINITY means [0 : 1].  Any [u : v] with u != 0 normalizes to v/u.

Orbits are computed by breadth-first search over group generators; the
stabilizer of a canonical representative is computed exhaustively over the
enumerated acting group and classified against the named subgroups by set
equality.  The orbit-stabilizer identity |orbit| * |stab| = |G| therefore
cross-checks the two computations on every orbit.

Canonical representatives: the distinguished points 0-hat, eta-hat and
epsilon-hat are preferred when the orbit contains one of them (those are the
points whose stabilizers have a name); otherwise the lexicographically least
point of the orbit is chosen.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import grp
from .ffield import FiniteField, Tower
from .grp import Matrix, Subgroup

INFINITY = -1


def all_points(F: FiniteField) -> list[int]:
    return list(range(F.size)) + [INFINITY]


def point_lex_key(F: FiniteField, pt: int):
    if pt == INFINITY:
        return (1,)
    return (0,) + F.lex_key(pt)


def act(F: FiniteField, m: Matrix, pt: int) -> int:
    """[[a,b],[c,d]] . [x:y] = [ax+by : cx+dy], normalized."""
    a, b, c, d = m
    if pt == INFINITY:
        num, den = b, d
    else:
        num = F.add(a, F.mul(b, pt))
        den = F.add(c, F.mul(d, pt))
    if num == 0:
        return INFINITY
    return F.mul(den, F.inv(num))


def orbit_bfs(F: FiniteField, gens: list[Matrix], pt: int) -> set[int]:
    seen = {pt}
    frontier = [pt]
    while frontier:
        new = []
        for q in frontier:
            for g in gens:
                r = act(F, g, q)
                if r not in seen:
                    seen.add(r)
                    new.append(r)
        frontier = new
    return seen


def orbit_exhaustive(F: FiniteField, elems: list[Matrix], pt: int) -> set[int]:
    return {act(F, g, pt) for g in elems}


def stabilizer(tower: Tower, acting: Subgroup, pt: int, space_degree: int,
               budget: int | None = None) -> tuple[list[Matrix], str]:
    """Exact fixer list (at the acting group's own level) plus classified kind."""
    F = tower.level(space_degree)
    elems = grp.enumerate_subgroup(tower, acting, budget=budget)
    if acting.degree == space_degree:
        members = [g for g in elems if act(F, g, pt) == pt]
    else:
        emb = grp.embedded_subgroup(tower, acting, space_degree)
        members = [g for g, ge in zip(elems, emb) if act(F, ge, pt) == pt]
    return members, classify_subgroup(tower, members, acting.degree)


def classify_subgroup(tower: Tower, members: list[Matrix], degree: int) -> str:
    mset = set(members)
    candidates = ["borel", "aniso", "split", "center", "full"]
    for kind in candidates:
        sub = grp.Subgroup(kind, degree)
        if kind in ("split", "center") and degree != 1:
            continue
        if grp.subgroup_order(tower, sub) != len(mset):
            continue
        if mset == set(grp.enumerate_subgroup(tower, sub)):
            return kind
    return "explicit"


@dataclass(frozen=True)
class Orbit:
    rep: int
    size: int
    stab_kind: str
    points: frozenset[int] = field(repr=False)
    stab_size: int = 0


@dataclass(frozen=True)
class OrbitDecomposition:
    acting: Subgroup
    space_degree: int
    space_size: int
    orbits: tuple[Orbit, ...]

    def sizes(self) -> list[int]:
        return [o.size for o in self.orbits]

    def orbit_of(self, pt: int) -> Orbit:
        for o in self.orbits:
            if pt in o.points:
                return o
        raise KeyError(f"point {pt} not in any orbit")

    def to_json(self, tower: Tower) -> dict:
        F = tower.level(self.space_degree)
        enc = lambda pt: "inf" if pt == INFINITY else list(F.coeffs(pt))
        return {
            "acting": str(self.acting),
            "space": f"P1(p^{self.space_degree})",
            "orbits": [
                {"rep": enc(o.rep), "size": o.size, "stab": o.stab_kind}
                for o in self.orbits
            ],
        }


def _preferred_points(tower: Tower, space_degree: int) -> list[int]:
    pts = [0]
    if space_degree % 2 == 0:
        pts.append(tower.embed(tower.eta, 2, space_degree))
    if space_degree == 2 * tower.f:
        pts.append(tower.epsilon)
    return pts


def decompose(tower: Tower, acting: Subgroup, points, space_degree: int,
              budget: int | None = None) -> OrbitDecomposition:
    """Partition a G-stable point set into orbits with classified stabilizers."""
    F = tower.level(space_degree)
    if acting.kind == "full":
        gens = grp.gl2_generators(tower, acting.degree)
    else:
        gens = grp.enumerate_subgroup(tower, acting)
    gens = [grp.embed_matrix(tower, g, acting.degree, space_degree) for g in gens]
    points = list(points)
    pointset = set(points)
    preferred = [pt for pt in _preferred_points(tower, space_degree) if pt in pointset]
    remaining = set(points)
    acting_order = grp.subgroup_order(tower, acting)
    orbits = []
    seeds = preferred + sorted(remaining, key=lambda pt: point_lex_key(F, pt))
    for seed in seeds:
        if seed not in remaining:
            continue
        orb = orbit_bfs(F, gens, seed)
        assert orb <= remaining, "orbit leaks outside the given point set"
        remaining -= orb
        stab, kind = stabilizer(tower, acting, seed, space_degree, budget=budget)
        assert len(orb) * len(stab) == acting_order, (
            f"orbit-stabilizer failure at rep {seed}: {len(orb)} * {len(stab)} != {acting_order}"
        )
        orbits.append(Orbit(rep=seed, size=len(orb), stab_kind=kind,
                            points=frozenset(orb), stab_size=len(stab)))
    assert sum(o.size for o in orbits) == len(points)
    orbits.sort(key=lambda o: point_lex_key(F, o.rep))
    return OrbitDecomposition(acting=acting, space_degree=space_degree,
                              space_size=len(points), orbits=tuple(orbits))


def orbit_decomposition(tower: Tower, acting: Subgroup, space_degree: int,
                        budget: int | None = None) -> OrbitDecomposition:
    """Orbits of the acting group on the whole of P^1 at the given level."""
    key = ("p1_decomposition", acting, space_degree)
    if key in tower.cache:
        return tower.cache[key]
    F = tower.level(space_degree)
    dec = decompose(tower, acting, all_points(F), space_degree, budget=budget)
    tower.cache[key] = dec
    return dec


def epsilon_orbit(tower: Tower, budget: int | None = None) -> set[int]:
    """O_{G_q}(epsilon-hat) inside P^1(F_{q^2}): the non-rational points."""
    key = "epsilon_orbit"
    if key in tower.cache:
        return tower.cache[key]
    top = 2 * tower.f
    F = tower.level(top)
    gens = [
        grp.embed_matrix(tower, g, tower.f, top)
        for g in grp.gl2_generators(tower, tower.f)
    ]
    orb = orbit_bfs(F, gens, tower.epsilon)
    assert len(orb) == tower.q * tower.q - tower.q
    tower.cache[key] = orb
    return orb


def split_epsilon_orbit(tower: Tower, budget: int | None = None) -> OrbitDecomposition:
    """The G_p-orbit decomposition of O_{G_q}(epsilon-hat)."""
    key = "split_epsilon_orbit"
    if key in tower.cache:
        return tower.cache[key]
    orb = epsilon_orbit(tower)
    dec = decompose(tower, grp.full(1), orb, 2 * tower.f, budget=budget)
    tower.cache[key] = dec
    return dec


def expected_orbit_counts(p: int, f: int) -> dict:
    """The closed-form representative counts, with integrality enforced."""
    def exact_div(num, den, label):
        if num % den:
            raise AssertionError(f"{label} = {num}/{den} is not an integer")
        return num // den

    out = {}
    if f % 2 == 1:
        out["I1"] = exact_div(p ** (f - 1) - 1, p * p - 1, "|I1|")
    else:
        out["I2"] = exact_div(p * (p ** (f - 2) - 1), p * p - 1, "|I2|")
    if f % 2 == 0:
        out["J"] = exact_div(p ** (f - 1) * (p**f - 1), p * p - 1, "|J|")
    else:
        out["Jp"] = exact_div((p ** (f - 1) - 1) * (p**f + p - 1), p * p - 1, "|J'|")
    return out
