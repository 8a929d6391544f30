"""Two-step local field towers L = (unramified f) o (Eisenstein e) over Q_p.

Elements are coordinate arrays over the tower basis {zeta^i * w^j} where
zeta is the Teichmueller lift of the residue-field generator and w is the
class of X modulo the Eisenstein polynomial.  The valuation of

    sum_{i,j} a_ij zeta^i w^j

is exactly min_j ( e * min_i v_p(a_ij) + j ): the inner sums have
valuations in distinct classes mod e, so no cancellation across columns
is possible.  This closed form is what makes every valuation reported
here exact rather than heuristic.
"""

from __future__ import annotations

from .errors import (
    InternalCheckFailed,
    NotEisenstein,
    NotIrreducible,
    PrecisionExhausted,
    WrongLevel,
)
from .padic import PadicScalar, check_prime, ppow, vp
from .residue import ResidueField, check_irreducible, default_unram_poly

_INF = float("inf")


# ---------------------------------------------------------------------------
# integer arithmetic in U0 = Z_p[X]/(m0), used only to build field data
# ---------------------------------------------------------------------------

def _u0_red(vec, m0, p, M):
    pm = ppow(p, M)
    dm = len(m0) - 1
    vec = [c % pm for c in vec]
    for i in range(len(vec) - 1, dm - 1, -1):
        c = vec[i]
        if c:
            for j in range(dm):
                vec[i - dm + j] = (vec[i - dm + j] - c * m0[j]) % pm
            vec[i] = 0
    vec = vec[:dm]
    return vec + [0] * (dm - len(vec))


def _u0_mul(a, b, m0, p, M):
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return _u0_red(out, m0, p, M)


def _u0_pow(a, k, m0, p, M):
    r = [1] + [0] * (len(m0) - 2)
    b = list(a)
    while k:
        if k & 1:
            r = _u0_mul(r, b, m0, p, M)
        b = _u0_mul(b, b, m0, p, M)
        k >>= 1
    return r


def _u0_inv(a, m0, p, M):
    """Invert a unit of Z_p[X]/(m0) mod p^M: residue inverse then Newton."""
    res = ResidueField(p, m0)
    y = list(res.inv(tuple(c % p for c in a)))
    pm = ppow(p, M)
    prec = 1
    while prec < M:
        ay = _u0_mul(a, y, m0, p, M)
        corr = [(-c) % pm for c in ay]
        corr[0] = (corr[0] + 2) % pm
        y = _u0_mul(y, corr, m0, p, M)
        prec *= 2
    return y


def _teichmuller_generator(m0, p, f, M):
    """The Teichmueller lift of the residue generator inside Z_p[X]/(m0),
    by Newton iteration on t^(p^f) = t (the derivative is a unit)."""
    q = p ** f
    pm = ppow(p, M)
    t = [0, 1] + [0] * (f - 2)
    for _ in range(M.bit_length() + 2):
        tq = _u0_pow(t, q, m0, p, M)
        g = [(a - b) % pm for a, b in zip(tq, t)]
        if not any(g):
            return t
        dg = [c * q % pm for c in _u0_pow(t, q - 1, m0, p, M)]
        dg[0] = (dg[0] - 1) % pm
        corr = _u0_mul(g, _u0_inv(dg, m0, p, M), m0, p, M)
        t = [(a - b) % pm for a, b in zip(t, corr)]
    raise InternalCheckFailed("Teichmueller iteration did not converge")


def _teichmuller_minpoly(m0, p, f, M):
    """Monic degree-f polynomial over Z/p^M killed by the Teichmueller
    generator; its power basis is the zeta-basis of the unramified step."""
    if f == 1:
        return [(-1) % ppow(p, M), 1]
    pm = ppow(p, M)
    tau = _teichmuller_generator(m0, p, f, M)
    conj = [tau]
    for _ in range(f - 1):
        conj.append(_u0_pow(conj[-1], p, m0, p, M))
    poly = [[1] + [0] * (f - 1)]  # coefficients of Y^k, highest degree first
    for c in conj:
        neg = [(-x) % pm for x in c]
        nxt = [[0] * f for _ in range(len(poly) + 1)]
        for d, coeff in enumerate(poly):
            nxt[d] = [(a + b) % pm for a, b in zip(nxt[d], coeff)]
            prod = _u0_mul(coeff, neg, m0, p, M)
            nxt[d + 1] = [(a + b) % pm for a, b in zip(nxt[d + 1], prod)]
        poly = nxt
    out = []
    for coeff in reversed(poly):  # now low-to-high in Y
        if any(coeff[1:]):
            raise InternalCheckFailed(
                "Teichmueller minimal polynomial is not rational")
        out.append(coeff[0] % pm)
    return out  # length f+1, monic


# ---------------------------------------------------------------------------
# the tower descriptor
# ---------------------------------------------------------------------------

class LocalField:
    """Immutable descriptor of L = Q_p(zeta, w); safe to share across threads."""

    def __init__(self, p, f, e, eis_coeffs, unram_coeffs, N):
        check_prime(p)
        if f < 1 or e < 1:
            raise ValueError("f and e must be >= 1")
        if N < 1:
            raise ValueError("precision must be >= 1")
        self.p = p
        self.f = f
        self.e = e
        self.N = N
        self.degree = e * f
        # scalar working precision: N reported w-digits plus a guard for
        # logarithm reductions and dual-route cross-checks
        self.scalar_prec = -(-(N + 64) // e) + 8

        if unram_coeffs is None:
            unram_coeffs = default_unram_poly(p, f)
        unram_coeffs = tuple(c % p for c in unram_coeffs)
        if len(unram_coeffs) != f + 1:
            raise NotIrreducible(
                f"unramified polynomial must have degree {f}")
        check_irreducible(unram_coeffs, p)
        self.unram_min_poly = unram_coeffs
        self.residue = ResidueField(p, unram_coeffs)

        self.minpoly_zeta = _teichmuller_minpoly(
            [int(c) for c in unram_coeffs], p, f, self.scalar_prec)

        # zeta^k for k in f..2f-2 as scalar vectors over the zeta basis
        red = {}
        if f >= 2:
            pm = ppow(p, self.scalar_prec)
            cur = [(-self.minpoly_zeta[i]) % pm for i in range(f)]
            red[f] = list(cur)
            for k in range(f + 1, 2 * f - 1):
                nxt = [0] + cur[: f - 1]
                top = cur[f - 1]
                if top:
                    base = red[f]
                    for i in range(f):
                        nxt[i] = (nxt[i] + top * base[i]) % pm
                cur = nxt
                red[k] = list(cur)
        self._zeta_red = {
            k: tuple(PadicScalar.from_int(p, c, self.scalar_prec) for c in vec)
            for k, vec in red.items()}

        if eis_coeffs is None:
            eis_coeffs = [-p] + [0] * (e - 1) + [1]
        eis = []
        for c in eis_coeffs:
            if isinstance(c, (list, tuple)):
                if len(c) != f:
                    raise NotEisenstein("vector coefficient has wrong length")
                eis.append(tuple(int(x) for x in c))
            else:
                eis.append(tuple([int(c)] + [0] * (f - 1)))
        if len(eis) != e + 1:
            raise NotEisenstein(f"polynomial must have degree exactly {e}")
        self.eis_vectors = tuple(eis)
        self.eis_input = tuple(
            list(c) if isinstance(c, (list, tuple)) else int(c)
            for c in eis_coeffs)
        self._check_eisenstein()
        self._winv = None

    def _check_eisenstein(self):
        lead = self.eis_vectors[-1]
        if lead[0] != 1 or any(lead[1:]):
            raise NotEisenstein("leading coefficient must be 1")

        def uval(vec):
            nz = [vp(c, self.p) for c in vec if c != 0]
            return min(nz) if nz else _INF

        for c in self.eis_vectors[:-1]:
            if uval(c) < 1:
                raise NotEisenstein(f"coefficient {c} is a unit")
        if uval(self.eis_vectors[0]) != 1:
            raise NotEisenstein(
                "constant coefficient must have valuation exactly 1")

    # -- canonical scalars and elements --------------------------------------

    def scalar(self, value, prec=None):
        return PadicScalar.from_int(self.p, value, prec or self.scalar_prec)

    def scalar_zero(self, prec=None):
        return PadicScalar.zero(self.p, prec or self.scalar_prec)

    def _blank(self):
        z = self.scalar_zero()
        return [[z] * self.e for _ in range(self.f)]

    def zero(self):
        return FieldElement(self, self._blank())

    def one(self):
        return self.from_int(1)

    def from_int(self, n):
        rows = self._blank()
        rows[0][0] = self.scalar(n)
        return FieldElement(self, rows)

    def from_scalar(self, s: PadicScalar):
        rows = self._blank()
        rows[0][0] = s
        return FieldElement(self, rows)

    def uniformizer(self):
        if self.e == 1:
            c0 = self.eis_vectors[0]
            rows = [[self.scalar(-c0[i])] for i in range(self.f)]
            return FieldElement(self, rows)
        rows = self._blank()
        rows[0][1] = self.scalar(1)
        return FieldElement(self, rows)

    def zeta(self, i: int):
        """The i-th residue basis lift (1-indexed): zeta^(i-1)."""
        if not 1 <= i <= self.f:
            raise ValueError("zeta index out of range")
        rows = self._blank()
        rows[i - 1][0] = self.scalar(1)
        return FieldElement(self, rows)

    def basis_elements(self):
        """The Q_p-basis zeta^i w^j of L in (i, j) lexicographic order."""
        out = []
        for i in range(self.f):
            for j in range(self.e):
                rows = self._blank()
                rows[i][j] = self.scalar(1)
                out.append(FieldElement(self, rows))
        return out

    def uniformizer_inverse(self):
        """1/w computed from the Eisenstein relation, not by Newton
        (Newton needs 1/w itself to normalize valuations)."""
        if self._winv is not None:
            return self._winv
        p, e, f = self.p, self.e, self.f
        c0 = self.eis_vectors[0]
        u0 = [c // p for c in c0]  # c0 = p * u0 with u0 a unit of U
        if f == 1:
            u0inv = [pow(u0[0], -1, ppow(p, self.scalar_prec))]
        else:
            u0inv = _u0_inv(list(u0), self.minpoly_zeta, p, self.scalar_prec)
        u0inv_s = [PadicScalar.from_int(p, c, self.scalar_prec) for c in u0inv]
        rows = self._blank()
        if e == 1:
            # w = -c0 itself; 1/w = -u0inv / p
            for i in range(f):
                rows[i][0] = -(u0inv_s[i].shift(-1))
        else:
            # w * (w^(e-1) + sum_{l>=1} c_l w^(l-1)) = -c0
            num_cols = [[self.scalar_zero()] * f for _ in range(e)]
            num_cols[e - 1] = [self.scalar(1 if i == 0 else 0) for i in range(f)]
            for l in range(1, e):
                cl = self.eis_vectors[l]
                num_cols[l - 1] = [
                    a + self.scalar(cl[i])
                    for i, a in enumerate(num_cols[l - 1])]
            for j in range(e):
                prod = _uvec_mul(self, num_cols[j], u0inv_s)
                for i in range(f):
                    rows[i][j] = -(prod[i].shift(-1))
        self._winv = FieldElement(self, rows)
        return self._winv

    # -- residue helpers ------------------------------------------------------

    def element_from_residue(self, coords, level: int):
        """sum_i coords[i] zeta_i w^level with integer lifts of coords."""
        jq, jr = divmod(level, self.e)
        rows = self._blank()
        for i, c in enumerate(coords):
            c = int(c) % self.p
            if c:
                rows[i][jr] = self.scalar(c).shift(jq)
        return FieldElement(self, rows)

    # -- seeded randomness ------------------------------------------------------

    def random_element(self, rng, level: int = 1):
        """A random element of exact valuation `level`."""
        jq, jr = divmod(level, self.e)
        while True:
            rows = self._blank()
            lead = False
            for i in range(self.f):
                c = rng.randrange(self.p ** 4)
                if c % self.p:
                    lead = True
                if c:
                    rows[i][jr] = self.scalar(c).shift(jq)
            if not lead:
                continue
            for i in range(self.f):
                for j in range(self.e):
                    if j == jr:
                        continue
                    sh = max(0, -(-(level + 1 - j) // self.e))
                    c = rng.randrange(self.p ** 4)
                    if c:
                        rows[i][j] = self.scalar(c).shift(sh)
            return FieldElement(self, rows)

    def random_unit(self, rng):
        while True:
            rows = self._blank()
            lead = False
            for i in range(self.f):
                c = rng.randrange(self.p ** 4)
                if c % self.p:
                    lead = True
                if c:
                    rows[i][0] = self.scalar(c)
                for j in range(1, self.e):
                    d = rng.randrange(self.p ** 4)
                    if d:
                        rows[i][j] = self.scalar(d)
            if lead:
                return FieldElement(self, rows)

    # -- JSON --------------------------------------------------------------------

    def descriptor(self):
        d = {"p": self.p, "f": self.f, "e": self.e,
             "eis": list(self.eis_input), "N": self.N}
        if self.f > 1:
            d["unram"] = list(self.unram_min_poly)
        return d

    def __repr__(self):
        return f"LocalField(p={self.p}, f={self.f}, e={self.e})"


_tower_cache: dict = {}


def make_tower(p, f, e, eis_coeffs=None, N=64, unram_coeffs=None) -> LocalField:
    """Construct and validate a tower descriptor.

    `eis_coeffs` lists low-to-high coefficients (ints, or f-vectors of ints
    over the zeta powers) of a monic Eisenstein polynomial; default X^e - p.
    `unram_coeffs` is a monic irreducible mod p of degree f; a canonical one
    is chosen when omitted.  Descriptors are cached and shared.
    """
    if unram_coeffs is None:
        unram_coeffs = default_unram_poly(p, f)
    if eis_coeffs is None:
        eis_coeffs = [-p] + [0] * (e - 1) + [1]
    key = (p, f, e,
           tuple(tuple(c) if isinstance(c, (list, tuple)) else int(c)
                 for c in eis_coeffs),
           N,
           tuple(c % p for c in unram_coeffs))
    field = _tower_cache.get(key)
    if field is None:
        field = LocalField(p, f, e, eis_coeffs, unram_coeffs, N)
        _tower_cache[key] = field
    return field


# ---------------------------------------------------------------------------
# elements
# ---------------------------------------------------------------------------

class FieldElement:
    """A coordinate array over {zeta^i w^j} with per-scalar precision."""

    __slots__ = ("field", "rows")

    def __init__(self, field, rows):
        self.field = field
        self.rows = [tuple(r) for r in rows]

    # -- valuation / precision -------------------------------------------------

    def precision(self) -> int:
        e = self.field.e
        return min(e * s.N + j for row in self.rows for j, s in enumerate(row))

    def _definite_min(self):
        e = self.field.e
        best = None
        for row in self.rows:
            for j, s in enumerate(row):
                if s.u is not None:
                    t = e * s.v + j
                    if best is None or t < best:
                        best = t
        return best

    def valuation(self) -> int:
        cand = self._definite_min()
        prec = self.precision()
        if cand is None or cand >= prec:
            raise PrecisionExhausted(
                f"element is 0 mod w^{prec}; valuation not certified")
        return cand

    def val_floor(self) -> int:
        cand = self._definite_min()
        prec = self.precision()
        return prec if cand is None else min(cand, prec)

    @property
    def is_zero(self) -> bool:
        cand = self._definite_min()
        return cand is None or cand >= self.precision()

    # -- ring operations ----------------------------------------------------------

    def _samefield(self, other):
        if self.field is not other.field:
            raise ValueError("elements of different fields")

    def __add__(self, other):
        self._samefield(other)
        rows = [[a + b for a, b in zip(ra, rb)]
                for ra, rb in zip(self.rows, other.rows)]
        return FieldElement(self.field, rows)

    def __neg__(self):
        return FieldElement(self.field,
                            [[-a for a in row] for row in self.rows])

    def __sub__(self, other):
        return self + (-other)

    def scalar_mul(self, s: PadicScalar):
        return FieldElement(self.field,
                            [[a * s for a in row] for row in self.rows])

    def int_mul(self, c: int):
        return FieldElement(self.field,
                            [[a.mul_int(c) for a in row] for row in self.rows])

    def shift_p(self, k: int):
        """Multiply by p^k (exact)."""
        return FieldElement(self.field,
                            [[a.shift(k) for a in row] for row in self.rows])

    def __mul__(self, other):
        self._samefield(other)
        fld = self.field
        f, e = fld.f, fld.e
        grid = [[None] * (2 * e - 1) for _ in range(2 * f - 1)]
        for i1, ra in enumerate(self.rows):
            for j1, a in enumerate(ra):
                for i2, rb in enumerate(other.rows):
                    row_out = grid[i1 + i2]
                    for j2, b in enumerate(rb):
                        prod = a * b
                        cur = row_out[j1 + j2]
                        row_out[j1 + j2] = prod if cur is None else cur + prod
        zero = fld.scalar_zero()
        for i in range(2 * f - 1):
            gi = grid[i]
            for j in range(2 * e - 1):
                if gi[j] is None:
                    gi[j] = zero
        # fold zeta powers >= f back down
        for k in range(2 * f - 2, f - 1, -1):
            rowk = grid[k]
            vec = fld._zeta_red[k]
            for j in range(2 * e - 1):
                s = rowk[j]
                if s.u is not None:
                    for i in range(f):
                        grid[i][j] = grid[i][j] + s * vec[i]
                else:
                    grid[0][j] = grid[0][j] + s
            grid[k] = None
        # fold w powers >= e against the Eisenstein relation
        for m in range(2 * e - 2, e - 1, -1):
            col = [grid[i][m] for i in range(f)]
            if any(s.u is not None for s in col):
                for l in range(e):
                    cvec = fld.eis_vectors[l]
                    if not any(cvec):
                        continue
                    corr = _uvec_mul_intvec(fld, cvec, col)
                    for i in range(f):
                        grid[i][m - e + l] = grid[i][m - e + l] - corr[i]
            else:
                # marker column: scaled by p-divisible coefficients it lands
                # one w-block lower with one extra scalar digit of slack
                for i in range(f):
                    s = col[i]
                    grid[i][m - e] = grid[i][m - e] + \
                        PadicScalar(fld.p, s.N + 1, None, s.N + 1)
            for i in range(f):
                grid[i][m] = None
        rows = [grid[i][:e] for i in range(f)]
        return FieldElement(fld, rows)

    def __pow__(self, k: int):
        if k < 0:
            return self.invert() ** (-k)
        r = self.field.one()
        b = self
        while k:
            if k & 1:
                r = r * b
            b = b * b
            k >>= 1
        return r

    def _unit_invert(self):
        fld = self.field
        res = self.residue_decompose(0)
        y = fld.element_from_residue(fld.residue.inv(tuple(res)), 0)
        avail = self.precision()
        two = fld.from_int(2)
        certified = 1
        while certified < avail:
            y = y * (two - self * y)
            certified *= 2
        return y

    def invert(self):
        fld = self.field
        v = self.valuation()
        if v == 0:
            return self._unit_invert()
        shift = fld.uniformizer_inverse() ** v if v > 0 \
            else fld.uniformizer() ** (-v)
        unit = self * shift
        return unit._unit_invert() * shift

    def __truediv__(self, other):
        return self * other.invert()

    def div_uniformizer(self):
        """Division by w (the standard shift-down op)."""
        return self * self.field.uniformizer_inverse()

    # -- residue decomposition ------------------------------------------------------

    def residue_decompose(self, j: int):
        """Coordinates (c_1..c_f) over F_p with x == sum_i c_i zeta_i w^j
        mod w^(j+1); requires v_L(x) == j exactly."""
        v = self.valuation()
        if v != j:
            raise WrongLevel(f"element has valuation {v}, not {j}")
        fld = self.field
        jq, jr = divmod(j, fld.e)
        out = []
        for i in range(fld.f):
            s = self.rows[i][jr]
            if s.u is None or s.v > jq:
                out.append(0)
            elif s.v == jq:
                out.append(s.u % fld.p)
            else:
                raise InternalCheckFailed("valuation bookkeeping violated")
        return tuple(out)

    # -- comparison / io ----------------------------------------------------------------

    def eq_at(self, other, prec: int | None = None) -> bool:
        d = self - other
        if prec is None:
            return d.is_zero
        if d.precision() < prec:
            raise PrecisionExhausted(
                f"cannot compare mod w^{prec}: only {d.precision()} digits")
        return d.val_floor() >= prec

    def truncate(self, prec: int):
        """Forget information beyond w^prec."""
        e = self.field.e
        rows = []
        for row in self.rows:
            new = []
            for j, s in enumerate(row):
                target = max(1, -(-(prec - j) // e))
                new.append(s.truncate(min(s.N, target)))
            rows.append(new)
        return FieldElement(self.field, rows)

    def flat_coords(self):
        """All f*e scalars in (i, j) lexicographic order."""
        return [s for row in self.rows for s in row]

    def to_json(self):
        prec = self.precision()
        e = self.field.e
        coeffs = []
        for row in self.rows:
            out_row = []
            for j, s in enumerate(row):
                target = max(1, -(-(prec - j) // e))
                out_row.append(s.truncate(min(s.N, target)).to_pair())
            coeffs.append(out_row)
        return {"field": self.field.descriptor(), "coeffs": coeffs, "prec": prec}

    @classmethod
    def from_json(cls, data, field: LocalField | None = None):
        d = data["field"]
        if field is None:
            field = make_tower(d["p"], d["f"], d["e"], d["eis"], d["N"],
                               d.get("unram"))
        prec = data["prec"]
        rows = []
        for i in range(field.f):
            row = []
            for j in range(field.e):
                target = max(1, -(-(prec - j) // field.e))
                row.append(PadicScalar.from_pair(
                    field.p, data["coeffs"][i][j], target))
            rows.append(row)
        return cls(field, rows)

    def __repr__(self):
        try:
            return f"<element v={self.valuation()}, prec={self.precision()}>"
        except PrecisionExhausted:
            return f"<element O(w^{self.precision()})>"


def _uvec_mul(field, avec, bvec):
    """Product of two zeta-basis vectors of scalars (U-arithmetic)."""
    f = field.f
    if f == 1:
        return [avec[0] * bvec[0]]
    out = [None] * (2 * f - 1)
    for i, a in enumerate(avec):
        for k, b in enumerate(bvec):
            t = a * b
            out[i + k] = t if out[i + k] is None else out[i + k] + t
    return _fold_zeta(field, out)


def _uvec_mul_intvec(field, ivec, svec):
    """(sum ivec_i zeta^i) * (sum svec_i zeta^i) with exact integer ivec."""
    f = field.f
    if f == 1:
        # exact zero multiplier must not inject a finite-precision marker
        if ivec[0] == 0:
            return [field.scalar_zero()]
        return [svec[0].mul_int(ivec[0])]
    out = [None] * (2 * f - 1)
    for i, c in enumerate(ivec):
        if c == 0:
            continue
        for k, s in enumerate(svec):
            t = s.mul_int(c)
            out[i + k] = t if out[i + k] is None else out[i + k] + t
    if all(t is None for t in out):
        out[0] = field.scalar_zero()
    return _fold_zeta(field, out)


def _fold_zeta(field, out):
    f = field.f
    zero = field.scalar_zero()
    out = [zero if t is None else t for t in out]
    for k in range(2 * f - 2, f - 1, -1):
        s = out[k]
        if s.u is not None:
            vec = field._zeta_red[k]
            for i in range(f):
                out[i] = out[i] + s * vec[i]
        else:
            out[0] = out[0] + s
    return out[:f]
