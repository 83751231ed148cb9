"""Exact dense linear algebra over a tower level.

Matrices are lists of row lists of field ints.  Small systems run through a
plain Python row reduction; larger ones switch to a vectorized elimination
where rows are numpy arrays of element indices and each row operation is a
pair of fancy-indexed lookups into precomputed add/mul tables (so everything
stays exact).  The table backend is only built for fields of size <= 2048,
which covers every level a dense solve is ever needed on here.

Characteristic polynomials are computed by similarity reduction to upper
Hessenberg form followed by the standard leading-minor recurrence; the
monomial fast path in the representation layer bypasses this entirely for
permutation-with-scalars matrices.
"""

from __future__ import annotations

import numpy as np

from .ffield import FiniteField

_TABLE_MAX = 2048
_NP_THRESHOLD = 64  # rows*cols above which the table backend is used


def identity_matrix(n: int) -> list[list[int]]:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def mat_mul(F: FiniteField, A, B):
    n, k, m = len(A), len(B), len(B[0])
    out = [[0] * m for _ in range(n)]
    for i in range(n):
        Ai = A[i]
        row = out[i]
        for t in range(k):
            a = Ai[t]
            if a:
                Bt = B[t]
                for j in range(m):
                    if Bt[j]:
                        row[j] = F.add(row[j], F.mul(a, Bt[j]))
    return out


def kron(F: FiniteField, A, B):
    na, nb = len(A), len(B)
    ma, mb = len(A[0]), len(B[0])
    out = [[0] * (ma * mb) for _ in range(na * nb)]
    for i in range(na):
        for j in range(ma):
            a = A[i][j]
            if a:
                for k in range(nb):
                    for t in range(mb):
                        out[i * nb + k][j * mb + t] = F.mul(a, B[k][t])
    return out


def block_diag(F: FiniteField, blocks):
    n = sum(len(b) for b in blocks)
    out = [[0] * n for _ in range(n)]
    off = 0
    for b in blocks:
        for i, row in enumerate(b):
            out[off + i][off : off + len(row)] = row
        off += len(b)
    return out


# ---------------------------------------------------------------------------
# row reduction


def _tables(F: FiniteField):
    cached = getattr(F, "_np_tables", None)
    if cached is not None:
        return cached
    s = F.size
    if s > _TABLE_MAX:
        raise ValueError(f"field of size {s} too large for the table backend")
    add = np.empty((s, s), dtype=np.uint32)
    mul = np.empty((s, s), dtype=np.uint32)
    for x in range(s):
        add[x] = [F.add(x, y) for y in range(s)]
        mul[x] = [F.mul(x, y) for y in range(s)]
    neg = np.array([F.neg(x) for x in range(s)], dtype=np.uint32)
    inv = np.array([0] + [F.inv(x) for x in range(1, s)], dtype=np.uint32)
    F._np_tables = (add, mul, neg, inv)
    return F._np_tables


def rref_py(F: FiniteField, rows):
    """In-place-free reduced row echelon form; returns (reduced rows, pivot cols)."""
    M = [list(r) for r in rows]
    ncols = len(M[0]) if M else 0
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(M)) if M[i][c]), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        inv = F.inv(M[r][c])
        M[r] = [F.mul(inv, x) for x in M[r]]
        for i in range(len(M)):
            if i != r and M[i][c]:
                fac = M[i][c]
                M[i] = [F.sub(x, F.mul(fac, y)) for x, y in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
        if r == len(M):
            break
    return M[:r], pivots


def rref_np(F: FiniteField, rows):
    add, mul, neg, inv = _tables(F)
    M = np.array(rows, dtype=np.uint32)
    nrows, ncols = M.shape
    pivots = []
    r = 0
    for c in range(ncols):
        nz = np.nonzero(M[r:, c])[0]
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            M[[r, i]] = M[[i, r]]
        M[r] = mul[inv[M[r, c]]][M[r]]
        rest = np.nonzero(M[:, c])[0]
        rest = rest[rest != r]
        if rest.size:
            prod = mul[M[rest, c][:, None], M[r][None, :]]
            M[rest] = add[M[rest], neg[prod]]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return [list(map(int, row)) for row in M[:r]], pivots


def rref(F: FiniteField, rows):
    if not rows:
        return [], []
    if F.size <= _TABLE_MAX and len(rows) * len(rows[0]) >= _NP_THRESHOLD:
        return rref_np(F, rows)
    return rref_py(F, rows)


def rank(F: FiniteField, rows) -> int:
    return len(rref(F, rows)[1])


def is_invertible(F: FiniteField, A) -> bool:
    return len(A) == len(A[0]) and rank(F, A) == len(A)


def nullspace_basis(F: FiniteField, rows, ncols: int):
    """Basis of the right nullspace of the given row system."""
    if not rows:
        return [[1 if i == j else 0 for i in range(ncols)] for j in range(ncols)]
    reduced, pivots = rref(F, rows)
    pivot_set = set(pivots)
    free = [c for c in range(ncols) if c not in pivot_set]
    basis = []
    for fc in free:
        v = [0] * ncols
        v[fc] = 1
        for r, pc in enumerate(pivots):
            # pivot row r reads: x_pc + sum_{c free} M[r][c] x_c = 0
            v[pc] = F.neg(reduced[r][fc])
        basis.append(v)
    return basis


# ---------------------------------------------------------------------------
# characteristic polynomials and polynomial arithmetic
# polynomials are little-endian coefficient lists over F


def poly_mul(F: FiniteField, a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                if bj:
                    out[i + j] = F.add(out[i + j], F.mul(ai, bj))
    return out


def poly_pow(F: FiniteField, a, e: int):
    result = [1]
    base = list(a)
    while e:
        if e & 1:
            result = poly_mul(F, result, base)
        base = poly_mul(F, base, base)
        e >>= 1
    return result


def poly_eval(F: FiniteField, a, x: int) -> int:
    acc = 0
    for c in reversed(a):
        acc = F.add(F.mul(acc, x), c)
    return acc


def charpoly(F: FiniteField, A):
    """det(xI - A) as a little-endian coefficient list (monic, degree n)."""
    n = len(A)
    H = [list(row) for row in A]
    for j in range(n - 2):
        piv = next((i for i in range(j + 1, n) if H[i][j]), None)
        if piv is None:
            continue
        if piv != j + 1:
            H[j + 1], H[piv] = H[piv], H[j + 1]
            for r in range(n):
                H[r][j + 1], H[r][piv] = H[r][piv], H[r][j + 1]
        inv = F.inv(H[j + 1][j])
        for i in range(j + 2, n):
            if H[i][j]:
                m = F.mul(H[i][j], inv)
                Hr = H[j + 1]
                Hi = H[i]
                for k in range(j, n):
                    Hi[k] = F.sub(Hi[k], F.mul(m, Hr[k]))
                for r in range(n):
                    H[r][j + 1] = F.add(H[r][j + 1], F.mul(m, H[r][i]))
    # leading-minor recurrence for upper Hessenberg matrices
    polys = [[1]]
    for k in range(1, n + 1):
        prev = polys[k - 1]
        term = [0] + prev  # x * p_{k-1}
        hkk = H[k - 1][k - 1]
        if hkk:
            for t in range(len(prev)):
                term[t] = F.sub(term[t], F.mul(hkk, prev[t]))
        prod = 1
        for i in range(k - 1, 0, -1):
            prod = F.mul(prod, H[i][i - 1])
            if prod == 0:
                break
            coeff = F.mul(H[i - 1][k - 1], prod)
            if coeff:
                pi = polys[i - 1]
                for t in range(len(pi)):
                    term[t] = F.sub(term[t], F.mul(coeff, pi[t]))
        polys.append(term)
    return polys[n]


def charpoly_interpolation(F: FiniteField, A):
    """Slow reference: evaluate det(xI - A) at distinct points and interpolate.

    Needs n+1 distinct field points, so only valid when F.size > len(A).
    Used by the test suite as an independent oracle for `charpoly`.
    """
    n = len(A)
    if F.size <= n:
        raise ValueError("field too small for interpolation")
    xs = list(range(n + 1))
    ys = []
    for x in xs:
        M = [[F.sub(x if i == j else 0, A[i][j]) for j in range(n)] for i in range(n)]
        ys.append(_det(F, M))
    # Lagrange interpolation
    poly = [0] * (n + 1)
    for i, xi in enumerate(xs):
        num = [1]
        den = 1
        for j, xj in enumerate(xs):
            if i != j:
                num = poly_mul(F, num, [F.neg(xj), 1])
                den = F.mul(den, F.sub(xi, xj))
        scale = F.mul(ys[i], F.inv(den))
        for t, c in enumerate(num):
            poly[t] = F.add(poly[t], F.mul(scale, c))
    return poly


def _det(F: FiniteField, M) -> int:
    n = len(M)
    M = [list(r) for r in M]
    det = 1
    for c in range(n):
        piv = next((i for i in range(c, n) if M[i][c]), None)
        if piv is None:
            return 0
        if piv != c:
            M[c], M[piv] = M[piv], M[c]
            det = F.neg(det)
        det = F.mul(det, M[c][c])
        inv = F.inv(M[c][c])
        for i in range(c + 1, n):
            if M[i][c]:
                fac = F.mul(M[i][c], inv)
                M[i] = [F.sub(x, F.mul(fac, y)) for x, y in zip(M[i], M[c])]
    return det
