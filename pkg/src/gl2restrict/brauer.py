"""Brauer fingerprints, Hom spaces and probabilistic isomorphism tests.

Two mod-p representations of GL2(F_p) have equal Brauer characters exactly
when their eigenvalue multisets agree on every p-regular element, i.e. when
the characteristic polynomials of the p-regular class representatives agree.
The fingerprint stores those polynomials with coefficients in F_{q^2}; equal
fingerprints mean equal composition-factor multisets.

For a monomial matrix the characteristic polynomial is read off the cycle
structure: a cycle of length L with scalar product c contributes x^L - c.
Direct sums contribute the product of their parts' polynomials (raised to the
multiplicity), so huge block sums are never materialized.

Hom(a, b) = { M : M rho_a(g) = rho_b(g) M for the generators g } is solved by
exact structure-aware routes:

* direct sums split off: Hom is additive in both arguments, so block summands
  are solved separately and their bases lifted to the right offsets;
* both sides monomial: every equation ties exactly two entries of M with a
  unit ratio, so the solution space is counted by a weighted union-find over
  the entry grid (components whose cycles force a ratio != 1 collapse to 0);
* one side monomial: the equations tie whole columns (or rows) of M along the
  permutation, with invertible dense transfer maps; a spanning tree of that
  graph leaves one small unknown vector per component, constrained by the
  non-tree cycles;
* both dense: a nullspace solve in dim(a)*dim(b) unknowns.

The total unknown count is capped by the budget.  Every leaf basis is
verified against the intertwining relations before it is returned.
iso_probable samples random linear combinations of a Hom basis and reports
ISO on the first invertible one; it only ever reports NOT_ISO on a
fingerprint mismatch, never from failed sampling.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from . import grp, linalg, reps
from .ffield import Tower
from .grp import BudgetError, Matrix

DEFAULT_HOM_BUDGET = 40_000
DEFAULT_TRIALS = 8

ISO = "ISO"
NOT_ISO = "NOT_ISO"
INCONCLUSIVE = "INCONCLUSIVE"


@dataclass(frozen=True)
class BrauerFingerprint:
    p: int
    f: int
    dim: int
    class_reps: tuple[Matrix, ...]
    polys: tuple[tuple[int, ...], ...]
    label: str = ""

    def to_json(self, tower: Tower) -> dict:
        F1 = tower.level(1)
        Ft = tower.level(2 * tower.f)
        return {
            "dim": self.dim,
            "classes": [
                {
                    "rep": [[list(F1.coeffs(m[0])), list(F1.coeffs(m[1]))],
                            [list(F1.coeffs(m[2])), list(F1.coeffs(m[3]))]],
                    "poly": [list(Ft.coeffs(c)) for c in poly],
                }
                for m, poly in zip(self.class_reps, self.polys)
            ],
        }


def _monomial_charpoly(tower: Tower, rep: reps.Rep, g: Matrix):
    Ft = tower.level(2 * tower.f)
    sigma, scalars = rep.monomial_action(g)
    n = len(sigma)
    seen = [False] * n
    poly = [1]
    for start in range(n):
        if seen[start]:
            continue
        length = 0
        prod = 1
        j = start
        while not seen[j]:
            seen[j] = True
            prod = Ft.mul(prod, scalars[j])
            j = sigma[j]
            length += 1
        assert j == start, "monomial action is not a permutation with scalars"
        cycle_poly = [Ft.neg(prod)] + [0] * (length - 1) + [1]
        poly = linalg.poly_mul(Ft, poly, cycle_poly)
    return poly


def rep_charpoly(tower: Tower, rep: reps.Rep, g: Matrix):
    """Characteristic polynomial of rep(g) over the top level."""
    Ft = tower.level(2 * tower.f)
    if isinstance(rep, reps.DirectSumRep):
        poly = [1]
        for part, mult in rep.parts:
            piece = linalg.poly_pow(Ft, rep_charpoly(tower, part, g), mult)
            poly = linalg.poly_mul(Ft, poly, piece)
        return poly
    if rep.is_monomial:
        return _monomial_charpoly(tower, rep, g)
    return linalg.charpoly(Ft, rep.matrix(g))


def fingerprint(tower: Tower, rep: reps.Rep) -> BrauerFingerprint:
    """Fingerprint of a representation of GL2(F_p) (restrictions included).

    Cached per tower by the representation's structural label, which encodes
    the full construction (inducing subgroup, character exponents, twists,
    multiplicities).
    """
    if rep.group.degree != 1:
        raise ValueError("fingerprints are taken on GL2(F_p); restrict first")
    key = ("fingerprint", rep.label, rep.dim)
    if key in tower.cache:
        return tower.cache[key]
    class_reps = tuple(grp.p_regular_class_reps(tower))
    polys = tuple(tuple(rep_charpoly(tower, rep, g)) for g in class_reps)
    fp = BrauerFingerprint(p=tower.p, f=tower.f, dim=rep.dim,
                           class_reps=class_reps, polys=polys, label=rep.label)
    tower.cache[key] = fp
    return fp


def compare(a: BrauerFingerprint, b: BrauerFingerprint) -> dict:
    """Equality verdict with a first-mismatch witness."""
    if a.p != b.p:
        raise ValueError("fingerprints over different primes are incomparable")
    if a.dim != b.dim:
        return {"equal": False, "witness": {"kind": "dimension", "a": a.dim, "b": b.dim}}
    assert a.class_reps == b.class_reps
    for g, pa, pb in zip(a.class_reps, a.polys, b.polys):
        if pa != pb:
            return {
                "equal": False,
                "witness": {"kind": "charpoly", "class_rep": g,
                            "a_poly": list(pa), "b_poly": list(pb)},
            }
    return {"equal": True, "witness": None}


# ---------------------------------------------------------------------------
# Hom spaces


def _check_intertwiner(tower: Tower, a: reps.Rep, b: reps.Rep, M, gens) -> bool:
    Ft = tower.level(2 * tower.f)
    if a.is_monomial and b.is_monomial:
        # entrywise relation M[tau(i), sigma(j)] * c_j == d_i * M[i, j]
        for g in gens:
            sigma, c = a.monomial_action(g)
            tau, d = b.monomial_action(g)
            for i in range(b.dim):
                Mi = M[i]
                Mti = M[tau[i]]
                di = d[i]
                for j in range(a.dim):
                    if Ft.mul(Mti[sigma[j]], c[j]) != Ft.mul(di, Mi[j]):
                        return False
        return True
    for g in gens:
        left = linalg.mat_mul(Ft, M, a.matrix(g))
        right = linalg.mat_mul(Ft, b.matrix(g), M)
        if left != right:
            return False
    return True


def _hom_monomial(tower: Tower, a: reps.Rep, b: reps.Rep, gens):
    """Weighted union-find over the entry grid of M (dim_b rows, dim_a cols).

    Each generator equation ties M[tau(i), sigma(j)] = (d_i / c_j) M[i, j];
    a component collapses to zero when some cycle forces a ratio != 1, and
    each surviving component contributes one basis intertwiner.
    """
    Ft = tower.level(2 * tower.f)
    da, db = a.dim, b.dim
    n = da * db
    parent = list(range(n))
    weight = [1] * n  # value(x) = weight[x] * value(parent[x])
    dead = [False] * n

    def find(x0):
        chain = []
        x = x0
        while parent[x] != x:
            chain.append(x)
            x = parent[x]
        root = x
        w = 1
        for y in reversed(chain):
            w = Ft.mul(weight[y], w)
            parent[y] = root
            weight[y] = w
        return root, w

    def union(x, y, r):
        # impose value(y) = r * value(x)
        rx, wx = find(x)
        ry, wy = find(y)
        if rx == ry:
            if wy != Ft.mul(r, wx):
                dead[rx] = True
            return
        parent[ry] = rx
        weight[ry] = Ft.mul(r, Ft.mul(wx, Ft.inv(wy)))
        if dead[ry]:
            dead[rx] = True

    for g in gens:
        sigma, c = a.monomial_action(g)
        tau, d = b.monomial_action(g)
        for j in range(da):
            cj_inv = Ft.inv(c[j])
            sj = sigma[j]
            base = sj  # column index after the permutation
            for i in range(db):
                union(i * da + j, tau[i] * da + base, Ft.mul(d[i], cj_inv))

    components = {}
    for x in range(n):
        r, w = find(x)
        if not dead[r]:
            components.setdefault(r, []).append((x, w))
    basis = []
    for members in components.values():
        M = [[0] * da for _ in range(db)]
        for x, w in members:
            M[x // da][x % da] = w
        basis.append(M)
    return basis


def _hom_column_graph(tower: Tower, a: reps.Rep, b: reps.Rep, gens):
    """Hom basis when a is monomial and b is dense.

    Reading M ρ_a(g) = ρ_b(g) M column by column gives
    c_j M[:, sigma(j)] = B_g M[:, j]: the columns of M propagate along the
    permutation graph on a's basis with invertible transfers c_j^{-1} B_g.
    One unknown vector (in F^{dim b}) remains per connected component; the
    non-tree edges impose its linear constraints.
    """
    Ft = tower.level(2 * tower.f)
    da, db = a.dim, b.dim
    actions = []
    for g in gens:
        sigma, c = a.monomial_action(g)
        actions.append((sigma, c, b.matrix(g)))
    # spanning forest: transfer[j] expresses column j as transfer[j] @ x_root
    transfer = [None] * da
    comp = [-1] * da
    roots = []
    constraints = {}  # root index -> list of rows
    for start in range(da):
        if comp[start] != -1:
            continue
        root = len(roots)
        roots.append(start)
        comp[start] = root
        transfer[start] = linalg.identity_matrix(db)
        constraints[root] = []
        queue = [start]
        while queue:
            j = queue.pop()
            Rj = transfer[j]
            for sigma, c, B in actions:
                k = sigma[j]
                # x_k = c_j^{-1} B x_j = (c_j^{-1} B R_j) x_root
                cinv = Ft.inv(c[j])
                Rk = [[Ft.mul(cinv, x) for x in row] for row in linalg.mat_mul(Ft, B, Rj)]
                if comp[k] == -1:
                    comp[k] = root
                    transfer[k] = Rk
                    queue.append(k)
                else:
                    # cycle: (Rk - transfer[k]) x_root = 0
                    for r1, r2 in zip(Rk, transfer[k]):
                        row = [Ft.sub(x, y) for x, y in zip(r1, r2)]
                        if any(row):
                            constraints[root].append(row)
    basis = []
    for root_idx in range(len(roots)):
        vecs = linalg.nullspace_basis(Ft, constraints[root_idx], db)
        cols = [j for j in range(da) if comp[j] == root_idx]
        for v in vecs:
            M = [[0] * da for _ in range(db)]
            for j in cols:
                Rj = transfer[j]
                for i in range(db):
                    M[i][j] = _dot(Ft, Rj[i], v)
            basis.append(M)
    return basis


def _hom_row_graph(tower: Tower, a: reps.Rep, b: reps.Rep, gens):
    """Hom basis when b is monomial and a is dense (mirror of the column case).

    Row i of M propagates along b's permutation:
    M[tau(i), :] = d_i * M[i, :] A_g^{-1}.  With rows written as v @ T_i for a
    per-row transfer matrix T_i, a cycle imposes v (T_new - T_old) = 0, i.e.
    the transposed difference as constraint rows on v.
    """
    Ft = tower.level(2 * tower.f)
    F1 = tower.level(1)
    da, db = a.dim, b.dim
    actions = []
    for g in gens:
        tau, d = b.monomial_action(g)
        actions.append((tau, d, a.matrix(grp.minv(F1, g))))
    transfer = [None] * db
    comp = [-1] * db
    n_roots = 0
    constraints = {}
    for start in range(db):
        if comp[start] != -1:
            continue
        root = n_roots
        n_roots += 1
        comp[start] = root
        transfer[start] = linalg.identity_matrix(da)
        constraints[root] = []
        queue = [start]
        while queue:
            i = queue.pop()
            Ti = transfer[i]
            for tau, d, Ainv in actions:
                k = tau[i]
                di = d[i]
                Tk = [[Ft.mul(di, x) for x in row] for row in linalg.mat_mul(Ft, Ti, Ainv)]
                if comp[k] == -1:
                    comp[k] = root
                    transfer[k] = Tk
                    queue.append(k)
                else:
                    diff = [[Ft.sub(x, y) for x, y in zip(r1, r2)]
                            for r1, r2 in zip(Tk, transfer[k])]
                    for col in zip(*diff):
                        if any(col):
                            constraints[root].append(list(col))
    basis = []
    for root_idx in range(n_roots):
        rows_of = [i for i in range(db) if comp[i] == root_idx]
        for v in linalg.nullspace_basis(Ft, constraints[root_idx], da):
            M = [[0] * da for _ in range(db)]
            for i in rows_of:
                Ti = transfer[i]
                for j in range(da):
                    M[i][j] = _dot(Ft, [Ti[k][j] for k in range(da)], v)
            basis.append(M)
    return basis


def _dot(F, row, v):
    acc = 0
    for x, y in zip(row, v):
        if x and y:
            acc = F.add(acc, F.mul(x, y))
    return acc


def _hom_dense(tower: Tower, a: reps.Rep, b: reps.Rep, gens):
    Ft = tower.level(2 * tower.f)
    da, db = a.dim, b.dim
    n = da * db
    rows = []
    for g in gens:
        A = a.matrix(g)
        B = b.matrix(g)
        for i in range(db):
            Bi = B[i]
            for j in range(da):
                row = [0] * n
                for k in range(da):
                    row[i * da + k] = A[k][j]
                for k in range(db):
                    row[k * da + j] = Ft.sub(row[k * da + j], Bi[k])
                rows.append(row)
    vecs = linalg.nullspace_basis(Ft, rows, n)
    return [[v[i * da : (i + 1) * da] for i in range(db)] for v in vecs]


def _hom_leaf(tower: Tower, a: reps.Rep, b: reps.Rep, gens) -> list:
    if a.dim == 0 or b.dim == 0:
        return []
    if a.is_monomial and b.is_monomial:
        basis = _hom_monomial(tower, a, b, gens)
    elif a.is_monomial:
        basis = _hom_column_graph(tower, a, b, gens)
    elif b.is_monomial:
        basis = _hom_row_graph(tower, a, b, gens)
    else:
        basis = _hom_dense(tower, a, b, gens)
    for M in basis:
        if not _check_intertwiner(tower, a, b, M, gens):
            raise AssertionError("Hom solver produced a non-intertwiner")
    return basis


def _hom_recursive(tower: Tower, a: reps.Rep, b: reps.Rep, gens) -> list:
    if isinstance(b, reps.DirectSumRep):
        out = []
        off = 0
        for part, mult in b.parts:
            part_basis = _hom_recursive(tower, a, part, gens)
            for _ in range(mult):
                for Mp in part_basis:
                    M = [[0] * a.dim for _ in range(b.dim)]
                    for i, row in enumerate(Mp):
                        M[off + i] = list(row)
                    out.append(M)
                off += part.dim
        return out
    if isinstance(a, reps.DirectSumRep):
        out = []
        off = 0
        for part, mult in a.parts:
            part_basis = _hom_recursive(tower, part, b, gens)
            for _ in range(mult):
                for Mp in part_basis:
                    M = [[0] * a.dim for _ in range(b.dim)]
                    for i, row in enumerate(Mp):
                        M[i][off : off + part.dim] = row
                    out.append(M)
                off += part.dim
        return out
    return _hom_leaf(tower, a, b, gens)


def hom_basis(tower: Tower, a: reps.Rep, b: reps.Rep,
              budget: int = DEFAULT_HOM_BUDGET) -> list:
    """Basis of the intertwiner space Hom_{G_p}(a, b), matrices over F_{q^2}."""
    if a.group.degree != 1 or b.group.degree != 1:
        raise ValueError("Hom spaces are solved over GL2(F_p); restrict first")
    if a.dim * b.dim > budget:
        raise BudgetError(
            f"Hom solve needs {a.dim * b.dim} unknowns, budget {budget}"
        )
    gens = grp.gp_generators(tower)
    return _hom_recursive(tower, a, b, gens)


def hom_dim(tower: Tower, a: reps.Rep, b: reps.Rep,
            budget: int = DEFAULT_HOM_BUDGET) -> int:
    return len(hom_basis(tower, a, b, budget=budget))


def iso_probable(tower: Tower, a: reps.Rep, b: reps.Rep,
                 trials: int = DEFAULT_TRIALS, seed: int = 0,
                 budget: int = DEFAULT_HOM_BUDGET) -> str:
    """ISO / NOT_ISO / INCONCLUSIVE for two G_p-representations.

    NOT_ISO is only ever returned on a fingerprint mismatch (an isomorphism
    invariant); failure to sample an invertible intertwiner is reported as
    INCONCLUSIVE, never as a negative.
    """
    fa = fingerprint(tower, a)
    fb = fingerprint(tower, b)
    if not compare(fa, fb)["equal"]:
        return NOT_ISO
    basis = hom_basis(tower, a, b, budget=budget)
    if not basis:
        return INCONCLUSIVE
    Ft = tower.level(2 * tower.f)
    rng = random.Random(seed)
    n = a.dim
    for _ in range(trials):
        coeffs = [rng.randrange(Ft.size) for _ in basis]
        M = [[0] * n for _ in range(n)]
        for c, B in zip(coeffs, basis):
            if c:
                for i in range(n):
                    Bi = B[i]
                    Mi = M[i]
                    for j in range(n):
                        if Bi[j]:
                            Mi[j] = Ft.add(Mi[j], Ft.mul(c, Bi[j]))
        if linalg.is_invertible(Ft, M):
            return ISO
    return INCONCLUSIVE
