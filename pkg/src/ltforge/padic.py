"""Exact arithmetic in Q_p with absolute-precision tracking.

A scalar is stored as ``u * p^v`` where the unit mantissa ``u`` is coprime
to ``p`` and reduced mod ``p^(N - v)``; the element is known mod ``p^N``.
A scalar whose every representative is divisible by ``p^N`` carries no
mantissa and is only known to be "indistinguishable from zero at
precision N".  Operations never report more absolute precision than their
inputs justify.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import BadPrime, PrecisionExhausted

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)

_pow_cache: dict[int, list[int]] = {}


def ppow(p: int, k: int) -> int:
    """p**k with a per-prime cache (k >= 0); hot in scalar arithmetic."""
    if k < 0:
        raise ValueError("ppow needs a non-negative exponent")
    cache = _pow_cache.get(p)
    if cache is None:
        cache = _pow_cache[p] = [1]
    if k < len(cache):
        return cache[k]
    while len(cache) <= k:
        cache.append(cache[-1] * p)
    return cache[k]


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for q in _SMALL_PRIMES:
        if n % q == 0:
            return n == q
    # deterministic Miller-Rabin for n < 3.3e24 with these bases
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def vp(n: int, p: int) -> int:
    """p-adic valuation of a nonzero integer."""
    if n == 0:
        raise ValueError("valuation of 0 is undefined")
    v = 0
    n = abs(n)
    # strip large blocks first; cheap and keeps worst cases linear
    pk = p * p * p * p
    while n % pk == 0:
        n //= pk
        v += 4
    while n % p == 0:
        n //= p
        v += 1
    return v


class PadicScalar:
    """An element of Q_p known mod p^N."""

    __slots__ = ("p", "v", "u", "N")

    def __init__(self, p, v, u, N):
        # raw constructor: assumes u is None (zero marker, v == N) or a
        # unit mantissa already reduced mod p^(N - v)
        self.p = p
        self.v = v
        self.u = u
        self.N = N

    # -- constructors ------------------------------------------------------

    @classmethod
    def from_int(cls, p: int, value: int, N: int) -> "PadicScalar":
        if N < 1:
            raise ValueError("precision must be >= 1")
        value %= ppow(p, N)
        if value == 0:
            return cls(p, N, None, N)
        v = vp(value, p)
        u = (value // ppow(p, v)) % ppow(p, N - v)
        return cls(p, v, u, N)

    @classmethod
    def from_rational(cls, p, num, den, N) -> "PadicScalar":
        if den == 0:
            raise ZeroDivisionError
        if num == 0:
            return cls(p, N, None, N)
        vn = vp(num, p)
        vd = vp(den, p)
        v = vn - vd
        rel = N - v
        if rel <= 0:
            return cls(p, N, None, N)
        un = num // ppow(p, vn)
        ud = den // ppow(p, vd)
        m = ppow(p, rel)
        u = un * pow(ud, -1, m) % m
        return cls(p, v, u, N)

    @classmethod
    def from_fraction(cls, p, frac: Fraction, N) -> "PadicScalar":
        return cls.from_rational(p, frac.numerator, frac.denominator, N)

    @classmethod
    def zero(cls, p, N) -> "PadicScalar":
        return cls(p, N, None, N)

    @classmethod
    def one(cls, p, N) -> "PadicScalar":
        return cls(p, 0, 1, N)

    # -- predicates --------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        """True when indistinguishable from zero at this precision."""
        return self.u is None

    @property
    def valuation(self) -> int:
        if self.u is None:
            raise PrecisionExhausted(
                f"element is 0 mod {self.p}^{self.N}; valuation unknown")
        return self.v

    @property
    def val_floor(self) -> int:
        """Exact valuation, or the precision bound N for a zero marker."""
        return self.v if self.u is not None else self.N

    # -- arithmetic --------------------------------------------------------

    def _check(self, other):
        if self.p != other.p:
            raise ValueError("mixed primes")

    def __add__(self, other: "PadicScalar") -> "PadicScalar":
        self._check(other)
        p = self.p
        N = min(self.N, other.N)
        if self.u is None and other.u is None:
            return PadicScalar(p, N, None, N)
        if self.u is None:
            return other.truncate(N)
        if other.u is None:
            return self.truncate(N)
        vmin = min(self.v, other.v)
        rel = N - vmin
        if rel <= 0:
            return PadicScalar(p, N, None, N)
        z = (self.u * ppow(p, self.v - vmin) +
             other.u * ppow(p, other.v - vmin)) % ppow(p, rel)
        if z == 0:
            return PadicScalar(p, N, None, N)
        w = vp(z, p)
        v = vmin + w
        if v >= N:
            return PadicScalar(p, N, None, N)
        return PadicScalar(p, v, (z // ppow(p, w)) % ppow(p, N - v), N)

    def __neg__(self) -> "PadicScalar":
        if self.u is None:
            return self
        return PadicScalar(self.p, self.v, -self.u % ppow(self.p, self.N - self.v), self.N)

    def __sub__(self, other: "PadicScalar") -> "PadicScalar":
        return self + (-other)

    def __mul__(self, other: "PadicScalar") -> "PadicScalar":
        self._check(other)
        p = self.p
        if self.u is None or other.u is None:
            # x = O(p^Nx) times y = u p^vy + O(p^Ny): product is O(p^(Nx+vy))
            N = min(self.N + other.val_floor, other.N + self.val_floor)
            return PadicScalar(p, N, None, N)
        rel = min(self.N - self.v, other.N - other.v)
        v = self.v + other.v
        u = self.u * other.u % ppow(p, rel)
        return PadicScalar(p, v, u, v + rel)

    def invert(self) -> "PadicScalar":
        if self.u is None:
            raise PrecisionExhausted("cannot invert a value that is 0 at precision")
        rel = self.N - self.v
        u = pow(self.u, -1, ppow(self.p, rel))
        return PadicScalar(self.p, -self.v, u, -self.v + rel)

    def __truediv__(self, other: "PadicScalar") -> "PadicScalar":
        return self * other.invert()

    def __pow__(self, k: int) -> "PadicScalar":
        if k < 0:
            return self.invert() ** (-k)
        if self.u is None:
            if k == 0:
                return PadicScalar.one(self.p, self.N)
            N = self.N * k  # O(p^N)^k; generous but sound for markers
            return PadicScalar(self.p, N, None, N)
        rel = self.N - self.v
        u = pow(self.u, k, ppow(self.p, rel))
        v = self.v * k
        return PadicScalar(self.p, v, u, v + rel)

    def shift(self, k: int) -> "PadicScalar":
        """Multiply by p^k (exact)."""
        if self.u is None:
            return PadicScalar(self.p, self.N + k, None, self.N + k)
        return PadicScalar(self.p, self.v + k, self.u, self.N + k)

    def mul_int(self, c: int) -> "PadicScalar":
        """Multiply by an exact integer (no precision cost beyond v_p(c))."""
        if c == 0:
            return PadicScalar(self.p, self.N, None, self.N)
        vc = vp(c, self.p)
        if self.u is None:
            N = self.N + vc
            return PadicScalar(self.p, N, None, N)
        rel = self.N - self.v
        u = self.u * (c // ppow(self.p, vc)) % ppow(self.p, rel)
        v = self.v + vc
        return PadicScalar(self.p, v, u, v + rel)

    # -- precision management ---------------------------------------------

    def truncate(self, N: int) -> "PadicScalar":
        """Forget digits beyond p^N.  Never adds precision."""
        if N >= self.N:
            if N > self.N:
                raise ValueError("cannot raise precision by truncation")
            return self
        if self.u is None or self.v >= N:
            return PadicScalar(self.p, N, None, N)
        return PadicScalar(self.p, self.v, self.u % ppow(self.p, N - self.v), N)

    # -- conversion / comparison -------------------------------------------

    def lift(self):
        """Canonical representative: an int when v >= 0, else a Fraction."""
        if self.u is None:
            return 0
        if self.v >= 0:
            return self.u * ppow(self.p, self.v)
        return Fraction(self.u, ppow(self.p, -self.v))

    def unit_residue(self) -> int:
        """The unit mantissa mod p (first digit)."""
        if self.u is None:
            raise PrecisionExhausted("no digits available")
        return self.u % self.p

    def eq_at(self, other: "PadicScalar", N: int | None = None) -> bool:
        """Equality as elements at (at most) the joint precision."""
        self._check(other)
        d = self - other
        if N is None:
            return d.u is None
        if d.N < N:
            raise PrecisionExhausted(
                f"cannot compare at precision {N}: only {d.N} digits certified")
        return d.u is None or d.v >= N

    def __repr__(self):
        if self.u is None:
            return f"O({self.p}^{self.N})"
        return f"{self.u}*{self.p}^{self.v} + O({self.p}^{self.N})"

    # -- JSON --------------------------------------------------------------

    def to_pair(self):
        """The ["val", "mantissa_hex"] wire pair (precision carried by the
        container)."""
        if self.u is None:
            return [self.N, None]
        return [self.v, hex(self.u)]

    @classmethod
    def from_pair(cls, p, pair, N):
        v, mh = pair
        if mh is None:
            return cls(p, N, None, N)
        u = int(mh, 16)
        if v >= N or u % p == 0:
            raise ValueError("corrupt scalar pair")
        return cls(p, v, u % ppow(p, N - v), N)


def check_prime(p: int) -> None:
    if not is_prime(p):
        raise BadPrime(f"{p} is not prime")
