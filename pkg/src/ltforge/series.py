"""Truncated formal power series over p-adic scalars.

One- and two-variable series with exact truncation-degree contracts: every
operation is exact through degree D.  Coefficient precision rides along on
the scalars themselves.  The functional-equation solver implements the
successive-approximation scheme in which the degree-r mismatch of the
defining equation is divided by (pi^r - pi).
"""

from __future__ import annotations

from .errors import (
    NonIntegralCoefficient,
    NonzeroConstantTerm,
    PrecisionExhausted,
)
from .padic import PadicScalar

_PRECISION_FLOOR = 8


class TruncSeries1:
    """sum_{n<=D} c_n X^n, exact through degree D."""

    __slots__ = ("p", "D", "coeffs")

    def __init__(self, p, coeffs):
        self.p = p
        self.coeffs = tuple(coeffs)
        self.D = len(self.coeffs) - 1

    @classmethod
    def from_ints(cls, p, ints, D, prec):
        cs = [PadicScalar.from_int(p, ints[n] if n < len(ints) else 0, prec)
              for n in range(D + 1)]
        return cls(p, cs)

    @classmethod
    def zero(cls, p, D, prec):
        z = PadicScalar.zero(p, prec)
        return cls(p, [z] * (D + 1))

    @classmethod
    def identity(cls, p, D, prec):
        s = cls.zero(p, D, prec)
        cs = list(s.coeffs)
        cs[1] = PadicScalar.one(p, prec)
        return cls(p, cs)

    def __getitem__(self, n):
        return self.coeffs[n]

    def _samering(self, other):
        if self.p != other.p or self.D != other.D:
            raise ValueError("series of different rings or degrees")

    def __add__(self, other):
        self._samering(other)
        return TruncSeries1(self.p, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __neg__(self):
        return TruncSeries1(self.p, [-a for a in self.coeffs])

    def __sub__(self, other):
        return self + (-other)

    def scalar_mul(self, s: PadicScalar):
        return TruncSeries1(self.p, [a * s for a in self.coeffs])

    def __mul__(self, other):
        self._samering(other)
        D = self.D
        out = [None] * (D + 1)
        for i, a in enumerate(self.coeffs):
            for j in range(D + 1 - i):
                t = a * other.coeffs[j]
                out[i + j] = t if out[i + j] is None else out[i + j] + t
        return TruncSeries1(self.p, out)

    def truncate_to(self, D):
        if D > self.D:
            raise ValueError("cannot extend a truncated series")
        return TruncSeries1(self.p, self.coeffs[: D + 1])

    def homogeneous_component(self, r):
        out = [PadicScalar.zero(self.p, c.N) for c in self.coeffs]
        out[r] = self.coeffs[r]
        return TruncSeries1(self.p, out)

    def min_precision(self):
        return min(c.N for c in self.coeffs)

    def constant_is_zero(self):
        c = self.coeffs[0]
        return c.u is None

    def is_polynomial_of_ints(self):
        """Exact integer coefficients and finite support, or None."""
        out = []
        for c in self.coeffs:
            if c.u is None:
                out.append(0)
            elif c.v >= 0:
                out.append(c.lift())
            else:
                return None
        while len(out) > 1 and out[-1] == 0:
            out.pop()
        return out

    def assert_integral(self):
        for n, c in enumerate(self.coeffs):
            if c.u is not None and c.v < 0:
                raise NonIntegralCoefficient(
                    f"coefficient of X^{n} has valuation {c.v}")

    def to_json(self):
        prec = self.min_precision()
        return {"vars": 1, "D": self.D, "prec": prec,
                "coeffs": [c.truncate(prec).to_pair() for c in self.coeffs]}

    @classmethod
    def from_json(cls, p, data):
        prec = data["prec"]
        return cls(p, [PadicScalar.from_pair(p, pair, prec)
                       for pair in data["coeffs"]])

    def __repr__(self):
        head = ", ".join(repr(c) for c in self.coeffs[:4])
        return f"TruncSeries1(D={self.D}: {head}, ...)"


class TruncSeries2:
    """sum_{i+j<=D} c_ij X^i Y^j in triangular storage."""

    __slots__ = ("p", "D", "coeffs")

    def __init__(self, p, D, coeffs):
        self.p = p
        self.D = D
        self.coeffs = tuple(coeffs)  # triangular: row i holds j = 0..D-i

    @staticmethod
    def index(D, i, j):
        return i * (D + 1) - i * (i - 1) // 2 + j

    @classmethod
    def zero(cls, p, D, prec):
        z = PadicScalar.zero(p, prec)
        n = (D + 1) * (D + 2) // 2
        return cls(p, D, [z] * n)

    @classmethod
    def linear_xy(cls, p, D, prec):
        s = cls.zero(p, D, prec)
        cs = list(s.coeffs)
        one = PadicScalar.one(p, prec)
        cs[cls.index(D, 1, 0)] = one
        cs[cls.index(D, 0, 1)] = one
        return cls(p, D, cs)

    def get(self, i, j):
        return self.coeffs[self.index(self.D, i, j)]

    def iter_indices(self):
        for i in range(self.D + 1):
            for j in range(self.D + 1 - i):
                yield i, j

    def _samering(self, other):
        if self.p != other.p or self.D != other.D:
            raise ValueError("series of different rings or degrees")

    def __add__(self, other):
        self._samering(other)
        return TruncSeries2(self.p, self.D,
                            [a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __neg__(self):
        return TruncSeries2(self.p, self.D, [-a for a in self.coeffs])

    def __sub__(self, other):
        return self + (-other)

    def scalar_mul(self, s):
        return TruncSeries2(self.p, self.D, [a * s for a in self.coeffs])

    def __mul__(self, other):
        self._samering(other)
        D = self.D
        idx = self.index
        out = [None] * len(self.coeffs)
        for i1, j1 in self.iter_indices():
            a = self.coeffs[idx(D, i1, j1)]
            for i2 in range(D + 1 - i1 - j1):
                for j2 in range(D + 1 - i1 - j1 - i2):
                    t = a * other.coeffs[idx(D, i2, j2)]
                    k = idx(D, i1 + i2, j1 + j2)
                    out[k] = t if out[k] is None else out[k] + t
        z = PadicScalar.zero(self.p, self.min_precision())
        return TruncSeries2(self.p, D, [z if c is None else c for c in out])

    def homogeneous_component(self, r):
        zs = [PadicScalar.zero(self.p, c.N) for c in self.coeffs]
        for i in range(r + 1):
            j = r - i
            if i <= self.D and j <= self.D - i:
                k = self.index(self.D, i, j)
                zs[k] = self.coeffs[k]
        return TruncSeries2(self.p, self.D, zs)

    def min_precision(self):
        return min(c.N for c in self.coeffs)

    def is_symmetric(self):
        for i, j in self.iter_indices():
            d = self.get(i, j) - self.get(j, i)
            if d.u is not None:
                return False
        return True

    def assert_integral(self):
        for i, j in self.iter_indices():
            c = self.get(i, j)
            if c.u is not None and c.v < 0:
                raise NonIntegralCoefficient(
                    f"coefficient of X^{i}Y^{j} has valuation {c.v}")

    def to_json(self):
        prec = self.min_precision()
        return {"vars": 2, "D": self.D, "prec": prec,
                "coeffs": [c.truncate(prec).to_pair() for c in self.coeffs]}

    @classmethod
    def from_json(cls, p, data):
        prec = data["prec"]
        return cls(p, data["D"],
                   [PadicScalar.from_pair(p, pair, prec)
                    for pair in data["coeffs"]])


# ---------------------------------------------------------------------------
# composition / substitution
# ---------------------------------------------------------------------------

def compose1(outer: TruncSeries1, inner: TruncSeries1) -> TruncSeries1:
    """(outer o inner) exact through the common truncation degree."""
    if not inner.constant_is_zero():
        raise NonzeroConstantTerm("inner series must have zero constant term")
    D = min(outer.D, inner.D)
    inner = inner.truncate_to(D)
    acc = TruncSeries1.zero(outer.p, D, outer.min_precision())
    for k in range(outer.D, -1, -1):
        acc = acc * inner
        cs = list(acc.coeffs)
        cs[0] = cs[0] + outer.coeffs[k]
        acc = TruncSeries1(outer.p, cs)
    return acc


def substitute2(F: TruncSeries2, g: TruncSeries1, h: TruncSeries1) -> TruncSeries1:
    """F(g(X), h(X)) as a univariate series."""
    for s in (g, h):
        if not s.constant_is_zero():
            raise NonzeroConstantTerm("substituted series must vanish at 0")
    D = min(F.D, g.D, h.D)
    prec = min(F.min_precision(), g.min_precision(), h.min_precision())
    gp = _powers(g.truncate_to(D), D)
    hp = _powers(h.truncate_to(D), D)
    out = [None] * (D + 1)
    for i, j in F.iter_indices():
        if i + j > D:
            continue
        c = F.get(i, j)
        gi, hj = gp[i], hp[j]
        for a in range(i, D + 1 - j):
            ca = c * gi.coeffs[a]
            for b in range(j, D + 1 - a):
                t = ca * hj.coeffs[b]
                k = a + b
                out[k] = t if out[k] is None else out[k] + t
    z = PadicScalar.zero(F.p, prec)
    return TruncSeries1(F.p, [z if c is None else c for c in out])


def substitute2_xy(F: TruncSeries2, g: TruncSeries1, h: TruncSeries1) -> TruncSeries2:
    """F(g(X), h(Y)) as a bivariate series."""
    for s in (g, h):
        if not s.constant_is_zero():
            raise NonzeroConstantTerm("substituted series must vanish at 0")
    D = min(F.D, g.D, h.D)
    prec = min(F.min_precision(), g.min_precision(), h.min_precision())
    gp = _powers(g.truncate_to(D), D)
    hp = _powers(h.truncate_to(D), D)
    out = [None] * ((D + 1) * (D + 2) // 2)
    idx = TruncSeries2.index
    for i, j in F.iter_indices():
        if i + j > D:
            continue
        c = F.get(i, j)
        gi, hj = gp[i], hp[j]
        for a in range(i, D + 1):
            ca = c * gi.coeffs[a]
            for b in range(j, D + 1 - a):
                t = ca * hj.coeffs[b]
                k = idx(D, a, b)
                out[k] = t if out[k] is None else out[k] + t
    z = PadicScalar.zero(F.p, prec)
    return TruncSeries2(F.p, D, [z if c is None else c for c in out])


def _powers(s: TruncSeries1, top):
    prec = s.min_precision()
    one = TruncSeries1.zero(s.p, s.D, prec)
    cs = list(one.coeffs)
    cs[0] = PadicScalar.one(s.p, prec)
    out = [TruncSeries1(s.p, cs)]
    cur = out[0]
    for _ in range(top):
        cur = cur * s
        out.append(cur)
    return out


# ---------------------------------------------------------------------------
# the successive-approximation solver
# ---------------------------------------------------------------------------

def solve_coefficientwise(residual, start, pi: PadicScalar, degree_range=None,
                          expect_integral=True):
    """Solve residual(g) = 0 by correcting one degree at a time.

    The residual must satisfy the linearization convention
    residual(g* + h) == (pi^r - pi) h + O(deg > r) for homogeneous h of
    degree r, which holds for all the commuting/defining equations in
    this package.  Every correction divides by pi^r - pi (valuation 1),
    so integral equations produce integral solutions; `expect_integral`
    turns the check into an error.
    """
    cur = start
    D = start.D
    degrees = degree_range or range(2, D + 1)
    for r in degrees:
        res = residual(cur)
        mism = res.homogeneous_component(r)
        divisor = (pi ** r) - pi
        corr = mism.scalar_mul(divisor.invert())
        cur = cur - corr
        if corr.min_precision() < _PRECISION_FLOOR:
            raise PrecisionExhausted(
                f"fewer than {_PRECISION_FLOOR} certified digits at degree {r}")
    if expect_integral:
        cur.assert_integral()
    res = residual(cur)
    for c in (res.coeffs if hasattr(res, "coeffs") else []):
        if c.u is not None:
            raise PrecisionExhausted(
                "defining equation not satisfied at certified precision")
    return cur
