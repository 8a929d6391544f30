"""Arithmetic in the residue field F_{p^f} and small linear algebra mod p.

Elements are tuples of f ints mod p (coordinates over the power basis of
the defining polynomial).  Everything here is exact.
"""

from __future__ import annotations

from itertools import product

from .errors import NotIrreducible


def _polmul_modp(a, b, p):
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return out


def _polmod(a, m, p):
    # m monic
    a = list(a)
    dm = len(m) - 1
    for i in range(len(a) - 1, dm - 1, -1):
        c = a[i] % p
        if c:
            for j in range(dm + 1):
                a[i - dm + j] = (a[i - dm + j] - c * m[j]) % p
    return [c % p for c in a[:dm]] + [0] * max(0, dm - len(a))


def _polgcd_modp(a, b, p):
    a = [c % p for c in a]
    b = [c % p for c in b]

    def deg(x):
        d = len(x) - 1
        while d >= 0 and x[d] == 0:
            d -= 1
        return d

    while deg(b) >= 0:
        da, db = deg(a), deg(b)
        if da < db:
            a, b = b, a
            continue
        inv = pow(b[deg(b)], -1, p)
        r = list(a)
        for _ in range(da - db + 1):
            dr = deg(r)
            if dr < db:
                break
            c = r[dr] * inv % p
            for j in range(db + 1):
                r[dr - db + j] = (r[dr - db + j] - c * b[j]) % p
        a, b = b, r
    d = deg(a)
    return [c % p for c in a[: d + 1]] if d >= 0 else [0]


def _xpow_mod(p, e, m):
    """X^(p^e) mod m over F_p by repeated Frobenius of X."""
    r = [0, 1]  # X
    for _ in range(e):
        r = _polpow_modp(r, p, m, p)
    return r


def _polpow_modp(a, k, m, p):
    r = [1]
    b = _polmod(a, m, p)
    while k:
        if k & 1:
            r = _polmod(_polmul_modp(r, b, p), m, p)
        b = _polmod(_polmul_modp(b, b, p), m, p)
        k >>= 1
    return r


def check_irreducible(coeffs, p) -> None:
    """Raise NotIrreducible unless `coeffs` (monic, low-to-high, over F_p)
    is irreducible of its full degree."""
    m = [c % p for c in coeffs]
    f = len(m) - 1
    if f < 1 or m[-1] != 1:
        raise NotIrreducible("polynomial must be monic of degree >= 1")
    # X^(p^f) == X mod m, and gcd(X^(p^(f/l)) - X, m) = 1 for primes l | f
    xq = list(_xpow_mod(p, f, m)) + [0, 0]
    xred = list(_polmod([0, 1], m, p)) + [0, 0]
    if any((a - b) % p for a, b in zip(xq, xred)):
        raise NotIrreducible(f"{coeffs} is not irreducible mod {p}")
    ell = 2
    ff = f
    while ff > 1:
        if ff % ell == 0:
            sub = _xpow_mod(p, f // ell, m)
            diff = list(sub) + [0, 0]
            diff[1] = (diff[1] - 1) % p
            g = _polgcd_modp(diff, m, p)
            if len(g) > 1:
                raise NotIrreducible(f"{coeffs} has a factor of degree dividing {f // ell}")
            while ff % ell == 0:
                ff //= ell
        ell += 1


def default_unram_poly(p: int, f: int) -> tuple[int, ...]:
    """Smallest (lexicographic) monic irreducible of degree f over F_p.
    For f = 1 this is X - 1, so the residue generator lifts to 1."""
    if f == 1:
        return (-1 % p, 1)
    for tail in product(range(p), repeat=f):
        cand = list(tail) + [1]
        try:
            check_irreducible(cand, p)
            return tuple(cand)
        except NotIrreducible:
            continue
    raise NotIrreducible(f"no irreducible of degree {f} mod {p}?")


class ResidueField:
    """F_{p^f} presented as F_p[z]/(modulus); elements are f-tuples."""

    def __init__(self, p: int, modulus):
        self.p = p
        self.modulus = tuple(c % p for c in modulus)
        self.f = len(modulus) - 1
        self.size = p ** self.f

    def zero(self):
        return (0,) * self.f

    def one(self):
        return tuple([1] + [0] * (self.f - 1))

    def gen(self):
        if self.f == 1:
            # residue generator is the class of 1 (modulus X - 1)
            return self.one()
        return tuple([0, 1] + [0] * (self.f - 2))

    def from_vector(self, vec):
        return tuple(c % self.p for c in vec)

    def add(self, a, b):
        return tuple((x + y) % self.p for x, y in zip(a, b))

    def sub(self, a, b):
        return tuple((x - y) % self.p for x, y in zip(a, b))

    def neg(self, a):
        return tuple(-x % self.p for x in a)

    def scalar(self, c, a):
        return tuple(c * x % self.p for x in a)

    def mul(self, a, b):
        prod = _polmul_modp(list(a), list(b), self.p)
        red = _polmod(prod, list(self.modulus), self.p)
        return tuple(red[: self.f] + [0] * (self.f - len(red)))

    def pow(self, a, k):
        r = self.one()
        b = a
        while k:
            if k & 1:
                r = self.mul(r, b)
            b = self.mul(b, b)
            k >>= 1
        return r

    def inv(self, a):
        if a == self.zero():
            raise ZeroDivisionError("residue inverse of 0")
        return self.pow(a, self.size - 2)

    def is_zero(self, a):
        return all(x == 0 for x in a)

    def elements(self):
        for tup in product(range(self.p), repeat=self.f):
            yield tup

    def nonzero_elements(self):
        for a in self.elements():
            if not self.is_zero(a):
                yield a

    # -- F_p-linear maps as matrices over the power basis -------------------

    def matrix_of(self, func):
        """Column-major matrix of an F_p-linear map on the power basis."""
        cols = []
        for i in range(self.f):
            e = tuple(1 if j == i else 0 for j in range(self.f))
            cols.append(func(e))
        return cols

    def solve_linear(self, cols, target):
        """Solve sum_i x_i * cols[i] = target over F_p; None if unsolvable."""
        p, f = self.p, self.f
        n = len(cols)
        rows = [[cols[j][i] % p for j in range(n)] + [target[i] % p]
                for i in range(f)]
        piv_cols = []
        r = 0
        for c in range(n):
            sel = next((i for i in range(r, f) if rows[i][c]), None)
            if sel is None:
                continue
            rows[r], rows[sel] = rows[sel], rows[r]
            inv = pow(rows[r][c], -1, p)
            rows[r] = [x * inv % p for x in rows[r]]
            for i in range(f):
                if i != r and rows[i][c]:
                    fac = rows[i][c]
                    rows[i] = [(x - fac * y) % p for x, y in zip(rows[i], rows[r])]
            piv_cols.append(c)
            r += 1
            if r == f:
                break
        for i in range(r, f):
            if rows[i][n]:
                return None
        sol = [0] * n
        for i, c in enumerate(piv_cols):
            sol[c] = rows[i][n]
        return sol
