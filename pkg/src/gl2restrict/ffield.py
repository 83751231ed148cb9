"""Finite field towers F_p < F_{p^2}, F_q = F_{p^f} < F_{q^2} with fixed embeddings.

An element of F_{p^d} is a plain int in [0, p^d): the integer sum(c_i * p^i)
encodes the coefficient vector (c_0, ..., c_{d-1}) on the polynomial basis
1, t, ..., t^{d-1} of F_p[t]/(m(t)).  Each level precomputes Zech logarithm
tables once, so add/mul/inv/pow are O(1) list lookups afterwards.

Every choice in the construction is canonical, so the same (p, f) always
yields bit-identical towers:

* the defining polynomial of degree d is the lexicographically least monic
  irreducible over F_p, comparing coefficient vectors (c_0, ..., c_{d-1});
* an embedding sends t to the lex-least root of the subfield's defining
  polynomial in the superfield;
* eta is the lex-least square root in F_{p^2} of the lex-least non-square of
  F_p; for even f, epsilon is likewise the lex-least square root in F_{q^2}
  of the lex-least non-square of F_q; for odd f, epsilon is the embedded eta.

Characteristic 2 is rejected outright: squaring is bijective there, so no
element with x^2 in the base field can sit outside it and the anisotropic
torus in the form used here does not exist.
"""

from __future__ import annotations

import itertools
from functools import lru_cache

F_MAX_DEFAULT = 4

# ---------------------------------------------------------------------------
# polynomial helpers over F_p (construction-time only; coefficient tuples,
# little-endian, not necessarily normalized)


def _poly_trim(a):
    i = len(a)
    while i > 0 and a[i - 1] == 0:
        i -= 1
    return tuple(a[:i])


def _poly_mul(p, a, b):
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _poly_trim(out)


def _poly_mod(p, a, m):
    # m monic of degree len(m)-1
    a = list(a)
    dm = len(m) - 1
    for i in range(len(a) - 1, dm - 1, -1):
        c = a[i]
        if c:
            a[i] = 0
            for j in range(dm):
                a[i - dm + j] = (a[i - dm + j] - c * m[j]) % p
    return _poly_trim(a)


def _poly_divisible(p, a, b):
    """Whether monic b divides a, both over F_p."""
    a = list(a)
    db = len(b) - 1
    while len(a) - 1 >= db and a:
        c = a[-1]
        shift = len(a) - 1 - db
        for j in range(db + 1):
            a[shift + j] = (a[shift + j] - c * b[j]) % p
        a = list(_poly_trim(a))
    return not a


def _is_irreducible(p, m):
    """Trial division by every monic polynomial of degree <= deg(m)/2."""
    d = len(m) - 1
    if d == 1:
        return True
    for e in range(1, d // 2 + 1):
        for tail in itertools.product(range(p), repeat=e):
            if _poly_divisible(p, m, tail + (1,)):
                return False
    return True


def _least_irreducible(p, d):
    """Lex-least monic irreducible of degree d, as its full coefficient tuple."""
    for tail in itertools.product(range(p), repeat=d):
        m = tail + (1,)
        if _is_irreducible(p, m):
            return m
    raise AssertionError("no irreducible polynomial found")  # unreachable


def _prime_factors(n):
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


class FiniteField:
    """One tower level F_{p^degree}, elements encoded as ints in [0, size)."""

    def __init__(self, p: int, degree: int, modulus=None):
        self.p = p
        self.degree = degree
        self.size = p**degree
        self.modulus = modulus if modulus is not None else _least_irreducible(p, degree)
        assert len(self.modulus) == degree + 1 and self.modulus[degree] == 1
        self._n = self.size - 1
        self._build_tables()

    # -- construction ------------------------------------------------------

    def _encode(self, coeffs) -> int:
        x = 0
        for c in reversed(coeffs):
            x = x * self.p + c
        return x

    def _decode(self, x: int):
        p, d = self.p, self.degree
        out = []
        for _ in range(d):
            x, c = divmod(x, p)
            out.append(c)
        return tuple(out)

    def _build_tables(self):
        p, n = self.p, self._n
        mod = self.modulus
        mulmod = lambda a, b: _poly_mod(p, _poly_mul(p, a, b), mod)

        def powmod(a, e):
            r = (1,)
            while e:
                if e & 1:
                    r = mulmod(r, a)
                a = mulmod(a, a)
                e >>= 1
            return r

        g = None
        factors = _prime_factors(n) if n > 1 else []
        for coeffs in itertools.product(range(p), repeat=self.degree):
            cand = _poly_trim(coeffs)
            if not cand:
                continue
            if n == 1:
                g = cand  # F_2 never happens here, but F_p with p-1==1 means p==2
                break
            if all(powmod(cand, n // ell) != (1,) for ell in factors):
                g = cand
                break
        assert g is not None
        self.generator = self._encode(g + (0,) * (self.degree - len(g)))

        exp = [0] * n
        log = [0] * self.size
        acc = (1,)
        for k in range(n):
            x = self._encode(acc + (0,) * (self.degree - len(acc)))
            exp[k] = x
            log[x] = k
            acc = mulmod(acc, g)
        assert acc == (1,), "generator order is not size-1"
        self._exp = exp
        self._log = log

        # zech[k] = log(1 + g^k); None when 1 + g^k == 0
        zech = [None] * n
        for k in range(n):
            x = exp[k]
            c0 = x % p
            y = x - c0 + (c0 + 1) % p
            zech[k] = log[y] if y else None
        self._zech = zech
        self._half = n // 2  # log(-1) for odd p

    # -- arithmetic ---------------------------------------------------------

    def add(self, x: int, y: int) -> int:
        if x == 0:
            return y
        if y == 0:
            return x
        lx = self._log[x]
        z = self._zech[(self._log[y] - lx) % self._n]
        if z is None:
            return 0
        return self._exp[(lx + z) % self._n]

    def neg(self, x: int) -> int:
        if x == 0:
            return 0
        return self._exp[(self._log[x] + self._half) % self._n]

    def sub(self, x: int, y: int) -> int:
        return self.add(x, self.neg(y))

    def mul(self, x: int, y: int) -> int:
        if x == 0 or y == 0:
            return 0
        return self._exp[(self._log[x] + self._log[y]) % self._n]

    def inv(self, x: int) -> int:
        if x == 0:
            raise ZeroDivisionError("inverse of zero")
        return self._exp[-self._log[x] % self._n]

    def div(self, x: int, y: int) -> int:
        return self.mul(x, self.inv(y))

    def pow(self, x: int, e: int) -> int:
        if x == 0:
            if e == 0:
                return 1
            if e < 0:
                raise ZeroDivisionError("negative power of zero")
            return 0
        return self._exp[(self._log[x] * e) % self._n]

    def frobenius(self, x: int, k: int = 1) -> int:
        """x^(p^k); the identity on this level when degree | k."""
        return self.pow(x, self.p**k)

    def is_square(self, x: int) -> bool:
        return x == 0 or self._log[x] % 2 == 0

    def sqrts(self, x: int):
        """Both square roots of x in this field, lex-ordered (empty if none)."""
        if x == 0:
            return [0]
        lx = self._log[x]
        if lx % 2:
            return []
        r = self._exp[lx // 2]
        s = self.neg(r)
        return sorted({r, s}, key=self.lex_key)

    # -- encoding and order -------------------------------------------------

    def coeffs(self, x: int):
        """Coefficient vector (c_0, ..., c_{degree-1}) of x."""
        return self._decode(x)

    def element(self, coeffs) -> int:
        assert len(coeffs) <= self.degree
        assert all(0 <= c < self.p for c in coeffs)
        return self._encode(tuple(coeffs) + (0,) * (self.degree - len(coeffs)))

    def lex_key(self, x: int):
        return self._decode(x)

    def elements_lex(self):
        """All elements in lexicographic coefficient order."""
        for coeffs in itertools.product(range(self.p), repeat=self.degree):
            yield self._encode(coeffs)

    def __repr__(self):
        return f"FiniteField(p={self.p}, degree={self.degree})"


class Embedding:
    """A fixed ring embedding between two tower levels, tabulated."""

    def __init__(self, src: FiniteField, dst: FiniteField):
        assert dst.degree % src.degree == 0
        self.src = src
        self.dst = dst
        root = None
        for y in dst.elements_lex():
            acc = 0
            for c in reversed(src.modulus):
                acc = dst.add(dst.mul(acc, y), c % dst.p)
            if acc == 0:
                root = y
                break
        assert root is not None, "subfield polynomial has no root in superfield"
        self.root = root
        table = [0] * src.size
        pows = [1]
        for _ in range(src.degree - 1):
            pows.append(dst.mul(pows[-1], root))
        for x in range(src.size):
            acc = 0
            for c, rp in zip(src.coeffs(x), pows):
                acc = dst.add(acc, dst.mul(c, rp))
            table[x] = acc
        self.table = table

    def __call__(self, x: int) -> int:
        return self.table[x]


class Tower:
    """The field lattice for a parameter pair (p, f), plus eta and epsilon.

    Levels are keyed by their degree over F_p; the degrees present are
    {1, 2, f, 2f} (collapsed when they coincide).  ``eta`` lives in the
    degree-2 level, ``epsilon`` in the degree-2f level, and ``eta_sq`` /
    ``epsilon_sq`` are their squares pulled back to degree 1 / degree f,
    which is where the anisotropic torus matrices need them.
    """

    def __init__(self, p: int, f: int, f_max: int = F_MAX_DEFAULT):
        if not is_prime(p):
            raise ValueError(f"p = {p} is not prime")
        if p == 2:
            raise ValueError(
                "p = 2 rejected: in characteristic 2 squaring is bijective, so the "
                "anisotropic torus form [[a,b],[b*e,a]] with e a non-square does not exist"
            )
        if not 1 <= f <= f_max:
            raise ValueError(f"f = {f} out of range [1, {f_max}]")
        self.p = p
        self.f = f
        self.q = p**f
        self.degrees = sorted({1, 2, f, 2 * f})
        self.levels = {d: FiniteField(p, d) for d in self.degrees}
        self._emb = {}
        for d1 in self.degrees:
            for d2 in self.degrees:
                if d1 < d2 and d2 % d1 == 0:
                    self._emb[(d1, d2)] = Embedding(self.levels[d1], self.levels[d2])
        self._assert_commuting()

        self.eta = self._least_root_of_least_nonsquare(1, 2)
        if f % 2 == 1:
            self.epsilon = self.embed(self.eta, 2, 2 * f)
        else:
            self.epsilon = self._least_root_of_least_nonsquare(f, 2 * f)
        self.eta_sq = self._pullback(self.levels[2].mul(self.eta, self.eta), 2, 1)
        self.epsilon_sq = self._pullback(
            self.levels[2 * f].mul(self.epsilon, self.epsilon), 2 * f, f
        )
        self.cache = {}

    # -----------------------------------------------------------------

    def level(self, degree: int) -> FiniteField:
        return self.levels[degree]

    def embed(self, x: int, src_degree: int, dst_degree: int) -> int:
        if src_degree == dst_degree:
            return x
        if dst_degree % src_degree != 0:
            raise ValueError(f"no embedding F_{{p^{src_degree}}} -> F_{{p^{dst_degree}}}")
        return self._emb[(src_degree, dst_degree)](x)

    def frobenius(self, x: int, degree: int, k: int = 1) -> int:
        return self.levels[degree].frobenius(x, k)

    def in_subfield(self, x: int, sub_degree: int, degree: int) -> bool:
        """Whether x (at `degree`) lies in the embedded image of the sub level."""
        if sub_degree == degree:
            return True
        F = self.levels[degree]
        # fixed field of frobenius^sub_degree
        return F.pow(x, self.p**sub_degree) == x

    def _pullback(self, y: int, degree: int, sub_degree: int) -> int:
        emb = self._emb[(sub_degree, degree)]
        for x in range(self.levels[sub_degree].size):
            if emb(x) == y:
                return x
        raise AssertionError("element is not in the subfield image")

    def _least_root_of_least_nonsquare(self, d: int, d2: int) -> int:
        base, ext = self.levels[d], self.levels[d2]
        nsq = next(x for x in base.elements_lex() if x and not base.is_square(x))
        roots = ext.sqrts(self.embed(nsq, d, d2))
        assert roots, "non-square of the base field must be a square one level up"
        return roots[0]

    def _assert_commuting(self):
        for d1 in self.degrees:
            for d2 in self.degrees:
                for d3 in self.degrees:
                    if (d1, d2) in self._emb and (d2, d3) in self._emb and (d1, d3) in self._emb:
                        e12, e23, e13 = self._emb[(d1, d2)], self._emb[(d2, d3)], self._emb[(d1, d3)]
                        assert all(
                            e23(e12(x)) == e13(x) for x in range(self.levels[d1].size)
                        ), f"embedding diagram {d1}->{d2}->{d3} does not commute"

    def to_json(self) -> dict:
        top = self.levels[2 * self.f]
        return {
            "p": self.p,
            "f": self.f,
            "polys": {str(d): list(self.levels[d].modulus) for d in self.degrees},
            "eta": list(self.levels[2].coeffs(self.eta)),
            "epsilon": list(top.coeffs(self.epsilon)),
        }

    def __repr__(self):
        return f"Tower(p={self.p}, f={self.f})"


@lru_cache(maxsize=None)
def build_tower(p: int, f: int, f_max: int = F_MAX_DEFAULT) -> Tower:
    """Construct (or fetch the memoized) tower for (p, f)."""
    return Tower(p, f, f_max)


def find_epsilon(tower: Tower) -> int:
    """The distinguished epsilon of the top level (already fixed at build time)."""
    return tower.epsilon
