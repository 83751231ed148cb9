"""Mod-p characters and the representations built from them.

Characters here are multiplicative maps from a subgroup of GL2 at some tower
level into a (possibly larger) tower level:

* chi_rs(r, s) on the Borel: [[a,b],[0,d]] |-> a^r d^s, values at the same
  level (any character of the Borel is of this shape, since a mod-p character
  kills the unipotent radical);
* omega(r) on the anisotropic torus: [[a,b],[b*e2,a]] |-> (a + b*delta)^r
  computed in the quadratic extension, delta = eta at the p-level and epsilon
  at the q-level.

An induced representation ind_H^G chi acts monomially on the left cosets of
H: g . e_j = chi(h) e_i where g * rep_j = rep_i * h.  Everything downstream
(fingerprints, Hom solving) consumes either that monomial form (permutation +
scalars, scalars pushed into the top field F_{q^2}) or a dense matrix over the
top field.  Dense matrices only ever appear for the Steinberg model and its
tensor products, whose dimensions stay tiny.

The Steinberg reduction is modeled as the (p-1)-st symmetric power of the
standard representation of GL2(F_p): p-dimensional, diag(a,d) acting with
eigenvalues a^{p-1-k} d^k on the monomial basis.  The model earns its name
only through the induction identity it is checked against in the verification
layer.
"""

from __future__ import annotations

from . import grp, linalg, mackey
from .ffield import Tower
from .grp import BudgetError, Matrix, Subgroup

DEFAULT_DIM_BUDGET = 10_000


class Character:
    """A multiplicative character of a subgroup, valued in a tower level."""

    def __init__(self, tower: Tower, domain: Subgroup, value_degree: int, fn, label: str,
                 members=None):
        self.tower = tower
        self.domain = domain
        self.degree = domain.degree
        self.value_degree = value_degree
        self._fn = fn
        self.label = label
        self._members = frozenset(members) if members is not None else None
        top = 2 * tower.f
        self._to_top = (lambda v: v) if value_degree == top else \
            (lambda v: tower.embed(v, value_degree, top))

    def __call__(self, m: Matrix) -> int:
        return self._fn(m)

    def value(self, m: Matrix, check: bool = True) -> int:
        if check and not self.domain_contains(m):
            raise ValueError(f"{m} is outside the domain of {self.label}")
        return self._fn(m)

    def value_at_top(self, m: Matrix) -> int:
        return self._to_top(self._fn(m))

    def domain_contains(self, m: Matrix) -> bool:
        if self._members is not None:
            return m in self._members
        return grp.contains(self.tower, self.domain, m)

    def domain_elements(self) -> list[Matrix]:
        if self._members is not None:
            return sorted(self._members)
        return grp.enumerate_subgroup(self.tower, self.domain)

    def __repr__(self):
        return f"Character({self.label})"


def chi_rs(tower: Tower, degree: int, r: int, s: int = 0) -> Character:
    """a^r d^s on the Borel at the given level."""
    F = tower.level(degree)
    n = F.size - 1
    r, s = r % n, s % n
    fn = lambda m: F.mul(F.pow(m[0], r), F.pow(m[3], s))
    return Character(tower, grp.borel(degree), degree, fn, f"chi_{r},{s}@deg{degree}")


def omega(tower: Tower, degree: int, r: int) -> Character:
    """(a + b*delta)^r on the anisotropic torus at the given level."""
    if degree == 1:
        vdeg, delta = 2, tower.eta
    elif degree == tower.f:
        vdeg, delta = 2 * tower.f, tower.epsilon
    else:
        raise ValueError("torus characters live at degrees 1 and f")
    Fv = tower.level(vdeg)
    r = r % (Fv.size - 1)
    emb = lambda x: tower.embed(x, degree, vdeg)

    def fn(m):
        return Fv.pow(Fv.add(emb(m[0]), Fv.mul(emb(m[1]), delta)), r)

    return Character(tower, grp.aniso(degree), vdeg, fn, f"omega^{r}@deg{degree}")


def det_power(tower: Tower, degree: int, s: int) -> Character:
    F = tower.level(degree)
    s = s % (F.size - 1)
    fn = lambda m: F.pow(grp.mdet(F, m), s)
    return Character(tower, grp.full(degree), degree, fn, f"det^{s}@deg{degree}")


def restrict_character(chi: Character, domain: Subgroup, label: str | None = None) -> Character:
    """The same character read on a smaller subgroup, possibly at a sub-level."""
    tower = chi.tower
    if chi.degree % domain.degree != 0:
        raise ValueError("restriction target does not embed into the character's level")
    fn = lambda m: chi(grp.embed_matrix(tower, m, domain.degree, chi.degree))
    return Character(tower, domain, chi.value_degree, fn,
                     label or f"{chi.label}|{domain}")


def twist_character(tower: Tower, chi: Character, gamma: Matrix,
                    members: list[Matrix]) -> Character:
    """chi^gamma on the conjugated intersection: m |-> chi(gamma^-1 m gamma).

    `members` is the explicit conjugated-intersection subgroup at level 1;
    well-definedness (gamma^-1 m gamma lands in chi's domain) is checked for
    every member up front.
    """
    f = chi.degree
    F = tower.level(f)
    gi = grp.minv(F, gamma)

    def conj(m):
        mf = grp.embed_matrix(tower, m, 1, f)
        return grp.mmul(F, grp.mmul(F, gi, mf), gamma)

    for m in members:
        if not chi.domain_contains(conj(m)):
            raise AssertionError(f"twist by {gamma} is ill-defined at {m}")
    fn = lambda m: chi(conj(m))
    return Character(tower, grp.Subgroup("explicit", 1), chi.value_degree, fn,
                     f"{chi.label}^g{gamma}", members=members)


def mul_characters(a: Character, b: Character) -> Character:
    """Pointwise product, valued in the top level (used for det twists)."""
    assert a.tower is b.tower and a.degree == b.degree
    top = 2 * a.tower.f
    Ft = a.tower.level(top)
    fn = lambda m: Ft.mul(a.value_at_top(m), b.value_at_top(m))
    domain = a.domain if a._members is None else b.domain
    return Character(a.tower, domain, top, fn, f"{a.label}*{b.label}")


# ---------------------------------------------------------------------------
# representations


class Rep:
    """Common surface: a finite-dim representation with entries in F_{q^2}."""

    tower: Tower
    group: Subgroup
    dim: int
    is_monomial: bool
    label: str

    def monomial_action(self, m: Matrix):
        """(sigma, scalars): column j maps to scalars[j] * e_{sigma[j]}."""
        raise NotImplementedError

    def matrix(self, m: Matrix):
        """Dense matrix of m over the top level."""
        if not self.is_monomial:
            raise NotImplementedError
        sigma, scalars = self.monomial_action(m)
        out = [[0] * self.dim for _ in range(self.dim)]
        for j, (i, c) in enumerate(zip(sigma, scalars)):
            out[i][j] = c
        return out

    def __repr__(self):
        return f"Rep({self.label}, dim={self.dim})"


class InducedRep(Rep):
    """ind_H^G chi realized on the left cosets of H."""

    def __init__(self, tower: Tower, sys: mackey.CosetSystem, char: Character,
                 group: Subgroup, label: str | None = None):
        self.tower = tower
        self.sys = sys
        self.char = char
        self.group = group
        self.dim = sys.dim
        self.is_monomial = True
        self.label = label or f"ind({sys.small}, {char.label})"
        self._F = tower.level(group.degree)

    def monomial_action(self, m: Matrix):
        F = self._F
        sigma = [0] * self.dim
        scalars = [0] * self.dim
        for j, gamma in enumerate(self.sys.reps):
            i, h = self.sys.factor(grp.mmul(F, m, gamma))
            sigma[j] = i
            scalars[j] = self.char.value_at_top(h)
        return sigma, scalars


class RestrictedRep(Rep):
    """The same space, with the action read on a subgroup at a sub-level."""

    def __init__(self, inner: Rep, group: Subgroup):
        if inner.group.degree % group.degree != 0:
            raise ValueError("restriction target does not embed into the rep's group")
        self.tower = inner.tower
        self.inner = inner
        self.group = group
        self.dim = inner.dim
        self.is_monomial = inner.is_monomial
        self.label = f"{inner.label}|{group}"

    def _lift(self, m: Matrix) -> Matrix:
        return grp.embed_matrix(self.tower, m, self.group.degree, self.inner.group.degree)

    def monomial_action(self, m: Matrix):
        return self.inner.monomial_action(self._lift(m))

    def matrix(self, m: Matrix):
        return self.inner.matrix(self._lift(m))


class DirectSumRep(Rep):
    """Block sum of parts with multiplicities (kept symbolic for fingerprints)."""

    def __init__(self, parts: list[tuple[Rep, int]]):
        assert parts, "empty direct sums are represented by mult = 0 entries"
        towers = {id(part.tower) for part, _ in parts}
        degrees = {part.group.degree for part, _ in parts}
        assert len(towers) == 1 and len(degrees) == 1, "summands must share a group"
        self.tower = parts[0][0].tower
        self.group = parts[0][0].group
        self.parts = [(part, mult) for part, mult in parts if mult > 0]
        self.dim = sum(part.dim * mult for part, mult in self.parts)
        self.is_monomial = all(part.is_monomial for part, _ in self.parts)
        self.label = " + ".join(
            (f"{mult}*" if mult != 1 else "") + part.label for part, mult in parts
        ) or "0"

    def monomial_action(self, m: Matrix):
        sigma = []
        scalars = []
        off = 0
        for part, mult in self.parts:
            ps, pc = part.monomial_action(m)
            for _ in range(mult):
                sigma.extend(i + off for i in ps)
                scalars.extend(pc)
                off += part.dim
        return sigma, scalars

    def matrix(self, m: Matrix):
        Ft = self.tower.level(2 * self.tower.f)
        blocks = []
        for part, mult in self.parts:
            B = part.matrix(m)
            blocks.extend([B] * mult)
        return linalg.block_diag(Ft, blocks)


class CharRep(Rep):
    """A character viewed as a 1-dimensional representation."""

    def __init__(self, char: Character, group: Subgroup | None = None):
        self.tower = char.tower
        self.char = char
        self.group = group or char.domain
        self.dim = 1
        self.is_monomial = True
        self.label = char.label

    def monomial_action(self, m: Matrix):
        return [0], [self.char.value_at_top(m)]


class ScalarTwistRep(Rep):
    """inner tensor a character of the same group (dimension preserved)."""

    def __init__(self, inner: Rep, char: Character):
        self.tower = inner.tower
        self.inner = inner
        self.char = char
        self.group = inner.group
        self.dim = inner.dim
        self.is_monomial = inner.is_monomial
        self.label = f"{inner.label} (x) {char.label}"
        self._Ft = inner.tower.level(2 * inner.tower.f)

    def monomial_action(self, m: Matrix):
        sigma, scalars = self.inner.monomial_action(m)
        c = self.char.value_at_top(m)
        return sigma, [self._Ft.mul(c, x) for x in scalars]

    def matrix(self, m: Matrix):
        c = self.char.value_at_top(m)
        Ft = self._Ft
        return [[Ft.mul(c, x) for x in row] for row in self.inner.matrix(m)]


class TensorRep(Rep):
    """Kronecker product; dense (only used with small factors)."""

    def __init__(self, a: Rep, b: Rep):
        assert a.tower is b.tower and a.group == b.group
        self.tower = a.tower
        self.a = a
        self.b = b
        self.group = a.group
        self.dim = a.dim * b.dim
        self.is_monomial = False
        self.label = f"({a.label}) (x) ({b.label})"

    def matrix(self, m: Matrix):
        Ft = self.tower.level(2 * self.tower.f)
        return linalg.kron(Ft, self.a.matrix(m), self.b.matrix(m))


class MatrixRep(Rep):
    """A representation tabulated as dense matrices over the top level."""

    def __init__(self, tower: Tower, group: Subgroup, table: dict[Matrix, list], label: str):
        self.tower = tower
        self.group = group
        self.table = table
        self.dim = len(next(iter(table.values())))
        self.is_monomial = False
        self.label = label

    def matrix(self, m: Matrix):
        return self.table[m]


# ---------------------------------------------------------------------------
# constructors


def induce(tower: Tower, sub: Subgroup, char: Character, into: Subgroup,
           dim_budget: int = DEFAULT_DIM_BUDGET) -> InducedRep:
    """ind_sub^into(char) as a monomial representation."""
    if char.domain != sub and char._members is None:
        raise ValueError(f"character {char.label} is not defined on {sub}")
    if sub.degree != into.degree:
        raise ValueError("induction requires subgroup and group at the same level")
    index = grp.subgroup_order(tower, into) // grp.subgroup_order(tower, sub)
    if index > dim_budget:
        raise BudgetError(f"induced dimension {index} exceeds budget {dim_budget}")
    sys = mackey.coset_system(tower, sub, ambient=into)
    return InducedRep(tower, sys, char, into)


def restrict(rep: Rep, to: Subgroup) -> Rep:
    """The action read on a subgroup (possibly at a smaller level)."""
    return RestrictedRep(rep, to)


def direct_sum(parts: list[tuple[Rep, int]]) -> DirectSumRep:
    return DirectSumRep(parts)


def tensor(a: Rep, b: Rep) -> Rep:
    if isinstance(a, CharRep):
        return ScalarTwistRep(b, a.char)
    if isinstance(b, CharRep):
        return ScalarTwistRep(a, b.char)
    return TensorRep(a, b)


def _sym_power_matrix(p: int, m: Matrix, n: int):
    """Matrix of m on degree-n monomials in the symmetric power, entries mod p."""
    a, b, c, d = m
    cols = []
    for k in range(n + 1):
        poly = [1]
        for _ in range(n - k):
            poly = [((poly[t] if t < len(poly) else 0) * a
                     + (poly[t - 1] if t >= 1 else 0) * c) % p
                    for t in range(len(poly) + 1)]
        for _ in range(k):
            poly = [((poly[t] if t < len(poly) else 0) * b
                     + (poly[t - 1] if t >= 1 else 0) * d) % p
                    for t in range(len(poly) + 1)]
        cols.append(poly + [0] * (n + 1 - len(poly)))
    return [[cols[k][j] for k in range(n + 1)] for j in range(n + 1)]


def steinberg_model(tower: Tower) -> MatrixRep:
    """Candidate Steinberg reduction: Sym^{p-1} of the standard rep of GL2(F_p).

    The table covers all of GL2(F_p), extended from the generator images by
    breadth-first products; single-valuedness is spot-checked on revisited
    products.  The verification layer certifies the model against the
    induction identity it has to satisfy before any theorem check uses it.
    """
    key = "steinberg"
    if key in tower.cache:
        return tower.cache[key]
    p = tower.p
    gens = grp.gp_generators(tower)
    F1 = tower.level(1)
    Ft = tower.level(2 * tower.f)
    images = {g: _sym_power_matrix(p, g, p - 1) for g in gens}
    table = {grp.IDENTITY: linalg.identity_matrix(p)}
    frontier = [grp.IDENTITY]
    checks = 0
    while frontier:
        new = []
        for g in frontier:
            for h in gens:
                k = grp.mmul(F1, g, h)
                prod = linalg.mat_mul(Ft, table[g], images[h])
                if k not in table:
                    table[k] = prod
                    new.append(k)
                elif checks < 64:
                    assert table[k] == prod, "generator images are not a homomorphism"
                    checks += 1
        frontier = new
    assert len(table) == grp.subgroup_order(tower, grp.full(1))
    rep = MatrixRep(tower, grp.full(1), table, f"Sym^{p - 1}(std)")
    tower.cache[key] = rep
    return rep


# ---------------------------------------------------------------------------
# decomposition of abelian-group representations into characters


def character_multiplicities(tower: Tower, rep: Rep, characters: list[Character]):
    """Multiplicity of each character in a rep of an abelian p'-group.

    The group order is prime to p, so the representation is semisimple and
    the multiplicity of a character psi equals the dimension of the joint
    eigenspace { v : rho(h) v = psi(h) v for all h }.
    """
    Ft = tower.level(2 * tower.f)
    elems = grp.enumerate_subgroup(tower, rep.group)
    out = []
    for psi in characters:
        rows = []
        for h in elems:
            M = rep.matrix(h)
            c = psi.value_at_top(h)
            for i in range(rep.dim):
                row = list(M[i])
                row[i] = Ft.sub(row[i], c)
                rows.append(row)
        mult = len(linalg.nullspace_basis(Ft, rows, rep.dim))
        out.append((psi, mult))
    return out
