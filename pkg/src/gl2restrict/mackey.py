"""Coset systems, double cosets and conjugated stabilizers.

Two explicit coset systems realize G_q/H for the inducing subgroups:

* H = B_q: representatives g_x = [[1,0],[x,1]] for x in F_q together with
  w = [[0,1],[1,0]]; the identification with P^1(F_q) sends g_x to x-hat and
  w to infinity-hat (both sit over the base point 0-hat).
* H = T_q: representatives g_{a,b} = [[1,0],[a,b]] for a, b in F_q, b != 0;
  the identification with the non-rational orbit sends g_{a,b} to the point
  (a + b*epsilon)-hat over the base point epsilon-hat.

Factoring g = rep * h is a point lookup: rep is the representative sitting
over g . base, and h = rep^{-1} g is checked for membership in H.

Double cosets G_p \\ G_q / H correspond to G_p-orbits on the point space;
one gamma is taken per orbit (the representative over the orbit's canonical
point).  The conjugated intersection gamma H gamma^{-1} n G_p is computed
exhaustively and must equal the stabilizer in G_p of gamma's point.

Generic left-coset systems inside GL2(F_p) (for Z_p <= S_p, Z_p <= T_p,
B_p <= G_p, ...) are built by direct partition with lex-least representatives.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import grp, projline
from .ffield import Tower
from .grp import Matrix, Subgroup


class CosetSystem:
    """Left cosets of `small` in an ambient group, with a factoring map.

    Exposes: reps (ordered), index_of_point / factor.  The two explicit
    systems identify cosets with points of a projective space; the generic
    system identifies them by table lookup.
    """

    def __init__(self, tower: Tower, small: Subgroup):
        self.tower = tower
        self.small = small

    @property
    def dim(self) -> int:
        return len(self.reps)


class PointCosetSystem(CosetSystem):
    """GL2/B or GL2/T at a level, realized on an orbit in a projective line.

    At the q-level these are the systems G_q/B_q and G_q/T_q; the same
    representative families work verbatim at the p-level for G_p/B_p and
    G_p/T_p (the torus base point is then eta-hat in P^1(F_{p^2})).
    """

    def __init__(self, tower: Tower, small: Subgroup):
        super().__init__(tower, small)
        deg = small.degree
        F = tower.level(deg)
        self.ambient_degree = deg
        if small.kind == "borel":
            self.space_degree = deg
            self.base_point = 0
            reps = [(1, 0, x, 1) for x in sorted(range(F.size), key=F.lex_key)]
            reps.append((0, 1, 1, 0))  # the coset over infinity-hat
        elif small.kind == "aniso":
            self.space_degree = 2 * deg
            self.base_point = tower.eta if deg == 1 else tower.epsilon
            order = sorted(range(F.size), key=F.lex_key)
            reps = [(1, 0, a, b) for a in order for b in order if b != 0]
        else:
            raise ValueError("explicit coset systems exist for borel and aniso only")
        self.reps = reps
        self._space_field = tower.level(self.space_degree)
        self._rep_at_space = [
            grp.embed_matrix(tower, m, deg, self.space_degree) for m in reps
        ]
        self.point_of = [
            projline.act(self._space_field, m, self.base_point) for m in self._rep_at_space
        ]
        self.index_of_point = {pt: i for i, pt in enumerate(self.point_of)}
        assert len(self.index_of_point) == len(reps), "coset representatives collide"

    def point_of_element(self, g: Matrix) -> int:
        ge = grp.embed_matrix(self.tower, g, self.ambient_degree, self.space_degree)
        return projline.act(self._space_field, ge, self.base_point)

    def factor(self, g: Matrix) -> tuple[int, Matrix]:
        """g = reps[i] * h with h in the small subgroup; i is returned."""
        i = self.index_of_point[self.point_of_element(g)]
        F = self.tower.level(self.ambient_degree)
        h = grp.mmul(F, grp.minv(F, self.reps[i]), g)
        if not grp.contains(self.tower, self.small, h):
            raise AssertionError(
                f"coset factorization failed: {h} is not in {self.small}"
            )
        return i, h


class GenericCosetSystem(CosetSystem):
    """Left cosets of a small subgroup inside an enumerated ambient group."""

    def __init__(self, tower: Tower, ambient: Subgroup, small: Subgroup):
        super().__init__(tower, small)
        assert ambient.degree == small.degree
        self.ambient_degree = ambient.degree
        F = tower.level(ambient.degree)
        elems = grp.enumerate_subgroup(tower, ambient)
        sub = grp.enumerate_subgroup(tower, small)
        for h in sub:
            assert grp.contains(tower, ambient, h), f"{small} is not inside {ambient}"
        index = {}
        reps = []
        for g in sorted(elems, key=lambda m: grp.mat_lex_key(F, m)):
            if g in index:
                continue
            i = len(reps)
            reps.append(g)
            for h in sub:
                index[grp.mmul(F, g, h)] = i
        assert len(index) == len(elems)
        self.reps = reps
        self._index = index
        self._F = F

    def factor(self, g: Matrix) -> tuple[int, Matrix]:
        i = self._index[g]
        h = grp.mmul(self._F, grp.minv(self._F, self.reps[i]), g)
        return i, h


def coset_system(tower: Tower, small: Subgroup, ambient: Subgroup | None = None) -> CosetSystem:
    """The cached coset system for `small` inside `ambient` (G_q by default)."""
    if ambient is None:
        ambient = grp.full(tower.f)
    key = ("cosets", ambient, small)
    if key in tower.cache:
        return tower.cache[key]
    if ambient.kind == "full" and ambient.degree == small.degree \
            and small.kind in ("borel", "aniso"):
        sys = PointCosetSystem(tower, small)
    else:
        sys = GenericCosetSystem(tower, ambient, small)
    tower.cache[key] = sys
    return sys


# ---------------------------------------------------------------------------
# double cosets G_p \ G_q / H


@dataclass(frozen=True)
class DoubleCosetEntry:
    gamma: Matrix             # at the q-level
    point: int                # gamma . base, in the system's point space
    orbit_size: int           # size of the G_p-orbit of that point
    intersection: tuple[Matrix, ...]   # gamma H gamma^{-1} n G_p, level-1 matrices
    kind: str                 # classified: borel | aniso | center | explicit


@dataclass(frozen=True)
class DoubleCosetData:
    small: Subgroup
    entries: tuple[DoubleCosetEntry, ...]

    @property
    def gammas(self) -> list[Matrix]:
        return [e.gamma for e in self.entries]


def conjugated_intersection(tower: Tower, gamma: Matrix, small: Subgroup) -> tuple[list[Matrix], str]:
    """gamma * small * gamma^{-1} intersected with G_p, as level-1 matrices."""
    f = tower.f
    F = tower.level(f)
    gi = grp.minv(F, gamma)
    members = []
    gp_elems = grp.enumerate_subgroup(tower, grp.full(1))
    gp_embedded = grp.embedded_subgroup(tower, grp.full(1), f)
    for m1, mf in zip(gp_elems, gp_embedded):
        if grp.contains(tower, small, grp.mmul(F, grp.mmul(F, gi, mf), gamma)):
            members.append(m1)
    return members, projline.classify_subgroup(tower, members, 1)


def double_coset_reps(tower: Tower, small: Subgroup,
                      budget: int | None = None) -> DoubleCosetData:
    """One gamma per G_p-orbit on the coset space, via the point identification.

    For every gamma the conjugated intersection is computed exhaustively and
    checked (set equality) against the G_p-stabilizer of gamma's point.
    """
    sys = coset_system(tower, small)
    if small.kind == "borel":
        dec = projline.orbit_decomposition(tower, grp.full(1), sys.space_degree,
                                           budget=budget)
    else:
        dec = projline.split_epsilon_orbit(tower, budget=budget)
    entries = []
    for orbit in dec.orbits:
        pt = orbit.rep
        if pt not in sys.index_of_point:
            # the only coset space missing a point is G_q/B_q at infinity-hat,
            # whose orbit also contains 0-hat; the canonical rep is finite
            pt = min(
                (q for q in orbit.points if q in sys.index_of_point),
                key=lambda q: projline.point_lex_key(sys._space_field, q),
            )
        gamma = sys.reps[sys.index_of_point[pt]]
        members, kind = conjugated_intersection(tower, gamma, small)
        stab, _ = projline.stabilizer(tower, grp.full(1), pt, sys.space_degree)
        if set(members) != set(stab):
            raise AssertionError(
                f"conjugated intersection at gamma={gamma} differs from the point stabilizer"
            )
        entries.append(DoubleCosetEntry(
            gamma=gamma, point=pt, orbit_size=orbit.size,
            intersection=tuple(members), kind=kind,
        ))
    return DoubleCosetData(small=small, entries=tuple(entries))


def verify_double_coset_partition(tower: Tower, small: Subgroup,
                                  gammas: list[Matrix],
                                  budget: int | None = None) -> dict:
    """Brute-force check that the sets G_p gamma H partition G_q.

    This is the independent oracle for the orbit correspondence: it multiplies
    out every product g * gamma * h and compares the union against the full
    enumeration of G_q.  Matrices are packed to ints to keep the sets small.
    """
    f = tower.f
    F = tower.level(f)
    s = F.size
    pack = lambda m: ((m[0] * s + m[1]) * s + m[2]) * s + m[3]
    gp = grp.embedded_subgroup(tower, grp.full(1), f)
    h_elems = grp.enumerate_subgroup(tower, small)
    work = len(gp) * len(h_elems) * len(gammas)
    if budget is not None and work > budget:
        raise grp.BudgetError(
            f"double-coset brute force needs {work} products, budget {budget}"
        )
    cells = []
    for gamma in gammas:
        cell = set()
        left = [grp.mmul(F, g, gamma) for g in gp]
        for gg in left:
            for h in h_elems:
                cell.add(pack(grp.mmul(F, gg, h)))
        cells.append(cell)
    sizes = [len(c) for c in cells]
    total = set().union(*cells)
    full_order = grp.subgroup_order(tower, grp.full(f))
    disjoint = sum(sizes) == len(total)
    covers = len(total) == full_order
    return {"sizes": sizes, "disjoint": disjoint, "covers": covers, "products": work}
