"""Validated Lubin-Tate contexts and certified evaluation on maximal ideals.

A context packages a series s(X) == pi*X mod X^2, == X^q mod p together
with its formal group law, logarithm, exponential and endomorphisms, all
truncated at degree D with per-coefficient precision.  Element evaluation
is certified: tail cutoffs come from runtime-checked coefficient
valuation bounds, and every logarithm value is cross-checked against the
limit quotient s^(m)(x)/pi^m at two depths before it is returned.
"""

from __future__ import annotations

import threading

from . import fastpoly
from .errors import (
    InternalCheckFailed,
    NonIntegralCoefficient,
    NotIntegral,
    NotLubinTate,
    OutsideConvergenceDisc,
    PrecisionExhausted,
    SeriesNotPolynomial,
    TailBoundViolated,
)
from .padic import PadicScalar, ppow, vp
from .series import TruncSeries1, TruncSeries2
from .tower import FieldElement, LocalField, make_tower

_bound_cache: dict = {}


def ilog(q: int, n: int) -> int:
    """floor(log_q(n)) by exact integer comparison."""
    if n < 1:
        raise ValueError("ilog of a nonpositive integer")
    k, t = 0, q
    while t <= n:
        t *= q
        k += 1
    return k


def denominator_growth_bound(q: int, D: int) -> int:
    """An upper bound B with v_p([S^n]_d) >= -B for every n and d <= D
    whenever S has v_p(coeff_m) >= -floor(log_q m): the worst split of a
    degree-d monomial into n factors costs at most n*log_q(D/n) digits."""
    key = (q, D)
    b = _bound_cache.get(key)
    if b is None:
        b = 0
        for n in range(1, D + 1):
            lhs = D ** n
            rhs = n ** n
            c = 0
            while rhs < lhs:
                rhs *= q
                c += 1
            b = max(b, c)
        _bound_cache[key] = b
    return b


def default_trunc_degree(p: int, e_hint: int = 1, N: int = 64) -> int:
    """Default truncation degree p^(gamma+2), at least 64, where gamma is
    the exponent governing the minimal logarithm valuation on a tower of
    ramification e_hint."""
    q = p
    if e_hint < q - 1:
        gamma = 0
    else:
        gamma = ilog(q, e_hint // (q - 1)) + 1
        while q ** gamma * (q - 1) <= e_hint:  # ensure e/(q-1) < q^gamma
            gamma += 1
    return max(64, p ** (gamma + 2))


# ---------------------------------------------------------------------------
# scaled-integer bridges between PadicScalar series and the packed kernel
# ---------------------------------------------------------------------------

def _scaled_ints(coeffs, shift, M, p):
    """Lift coefficients c_n (with v_p(c_n) >= -shift) to c_n * p^shift
    mod p^M; returns (ints, validity) where validity bounds the modulus to
    which the scaled values are actually known."""
    pm = ppow(p, M)
    out = []
    validity = M
    for c in coeffs:
        if c.u is None:
            out.append(0)
            validity = min(validity, c.N + shift)
            continue
        if c.v + shift < 0:
            raise NonIntegralCoefficient(
                f"coefficient valuation {c.v} below fixed-point shift {-shift}")
        out.append(c.u * ppow(p, c.v + shift) % pm)
        validity = min(validity, c.N + shift)
    return out, validity


# ---------------------------------------------------------------------------
# the context
# ---------------------------------------------------------------------------

class LTContext:
    """A validated series with cached group law, log, exp and endomorphisms.

    Immutable after construction except the endomorphism memo, which is
    guarded by a lock (concurrent reads, idempotent fills).
    """

    def __init__(self, pi, lt_series, D, prec, label):
        self.pi = pi
        self.p = pi.p
        self.q = pi.p
        self.D = D
        self.prec = prec
        self.label = label
        self.lt_series = lt_series
        self.lt_ints = lt_series.is_polynomial_of_ints()
        self.log_series = None
        self.exp_series = None
        self.log_shift = 0
        self.exp_shift = 0
        self.log_bound_ok = True
        self.exp_bound_ok = True
        self.fgl_degree = None
        self._fgl = None
        self._lock = threading.Lock()
        self.endo_cache: dict = {}
        self._iterates = {1: lt_series}

    # -- lazy formal group law ----------------------------------------------

    @property
    def fgl(self) -> TruncSeries2:
        if self._fgl is None:
            with self._lock:
                if self._fgl is None:
                    self._fgl = _build_fgl(self, self.fgl_degree)
        return self._fgl

    def describe(self):
        return {"p": self.p, "pi": self.pi.to_pair(), "D": self.D,
                "kind": self.label,
                "lt_head": [c.to_pair() for c in self.lt_series.coeffs[:6]]}


def validate_lt_series(pi, s: TruncSeries1, fgl_degree=None,
                       label="custom") -> LTContext:
    """Check the defining congruences of `s`, then build the logarithm and
    exponential and wrap everything in a context."""
    if isinstance(pi, int):
        pi = PadicScalar.from_int(s.p, pi, s.min_precision())
    p = s.p
    if pi.u is None or pi.v != 1:
        raise NotLubinTate("pi must be a uniformiser of Z_p (valuation 1)")
    q = p
    D = s.D
    s.assert_integral()
    c0, c1 = s.coeffs[0], s.coeffs[1]
    if c0.u is not None:
        raise NotLubinTate("nonzero constant term")
    if (c1 - pi).u is not None:
        raise NotLubinTate("linear coefficient differs from pi")
    if D < q:
        raise NotLubinTate(f"need the X^{q} coefficient; D too small")
    for n, c in enumerate(s.coeffs):
        want_unit = (n == q)
        if want_unit:
            if c.u is None or c.v != 0 or c.u % p != 1:
                raise NotLubinTate(f"X^{q} coefficient is not 1 mod {p}")
        elif n != 1 and c.u is not None and c.v < 1:
            raise NotLubinTate(f"X^{n} coefficient is a unit mod {p}")

    ctx = LTContext(pi, s, D, s.min_precision(), label)
    _build_log_exp(ctx)
    ctx.fgl_degree = fgl_degree or min(D, 72)
    return ctx


def _build_log_exp(ctx):
    """Logarithm by the coefficient recurrence against the powers of the
    series; exponential by series reversion.  Both checked against the
    valuation patterns the tail cutoffs later rely on."""
    p, q, D, P = ctx.p, ctx.q, ctx.D, ctx.prec
    pi = ctx.pi

    # integral powers table of the series, packed arithmetic mod p^P
    lt_ints, validity = _scaled_ints(ctx.lt_series.coeffs, 0, P, p)
    T = fastpoly.pow_list_1d(lt_ints, D, p, P, D)
    tprec = min(P, validity)

    # log([pi](X)) = pi log(X), solved degree by degree
    b = [PadicScalar.zero(p, tprec), PadicScalar.one(p, tprec)]
    for k in range(2, D + 1):
        acc = None
        for m in range(1, k):
            tmk = T[m][k] if k < len(T[m]) else 0
            term = b[m] * PadicScalar.from_int(p, tmk, tprec)
            acc = term if acc is None else acc + term
        divisor = pi - pi ** k
        b.append(acc * divisor.invert())
    ctx.log_series = TruncSeries1(p, b)

    # runtime valuation pattern: v(b_n) >= -floor(log_q n)
    shift = 0
    for n in range(1, D + 1):
        c = b[n]
        if c.u is not None:
            if c.v < -ilog(q, n):
                ctx.log_bound_ok = False
                raise TailBoundViolated(
                    f"log coefficient {n} has valuation {c.v} < -{ilog(q, n)}")
            shift = max(shift, -c.v)
    ctx.log_shift = shift

    # exponential by reversion: sum_m e_m (log X)^m = X
    e = [PadicScalar.zero(p, tprec), PadicScalar.one(p, tprec)]
    logpow = ctx.log_series  # log^1
    rows = {1: logpow.coeffs}
    for m in range(2, D + 1):
        logpow = logpow * ctx.log_series
        rows[m] = logpow.coeffs
    for n in range(2, D + 1):
        acc = None
        for m in range(1, n):
            t = e[m] * rows[m][n]
            acc = t if acc is None else acc + t
        e.append(-acc)
    ctx.exp_series = TruncSeries1(p, e)

    eshift = 0
    for n in range(1, D + 1):
        c = e[n]
        if c.u is not None:
            # v(e_n) >= -(n-1)/(q-1) is what the convergence disc needs
            if c.v * (q - 1) < -(n - 1):
                ctx.exp_bound_ok = False
                raise TailBoundViolated(
                    f"exp coefficient {n} has valuation {c.v}")
            eshift = max(eshift, -c.v)
    ctx.exp_shift = eshift

    # independent inverse-direction check: log(exp(X)) == X through D
    comp = _compose_series(ctx.log_series, ctx.exp_series)
    ident = TruncSeries1.identity(p, D, 4)
    for n in range(D + 1):
        d = comp.coeffs[n] - ident.coeffs[n]
        if d.u is not None:
            raise InternalCheckFailed(
                f"log(exp(X)) differs from X at degree {n}")


def _compose_series(outer: TruncSeries1, inner: TruncSeries1) -> TruncSeries1:
    """Object-level Horner composition (inner constant term must vanish)."""
    p, D = outer.p, outer.D
    acc = TruncSeries1.zero(p, D, outer.min_precision())
    for k in range(D, -1, -1):
        acc = acc * inner
        cs = list(acc.coeffs)
        cs[0] = cs[0] + outer.coeffs[k]
        acc = TruncSeries1(p, cs)
    return acc


# ---------------------------------------------------------------------------
# formal group law: F = exp(log X + log Y) in fixed-point packed arithmetic
# ---------------------------------------------------------------------------

def _build_fgl(ctx, D2) -> TruncSeries2:
    p, q = ctx.p, ctx.q
    t = ctx.log_shift
    se = ctx.exp_shift
    B = denominator_growth_bound(q, D2)

    log_ints, v_log = _scaled_ints(ctx.log_series.coeffs[: D2 + 1], t,
                                   ctx.prec + t, p)
    exp_ints, v_exp = _scaled_ints(ctx.exp_series.coeffs[: D2 + 1], se,
                                   ctx.prec + se, p)
    # certified output precision: input precision minus the worst
    # denominator amplification of powers of the argument
    goal = min(v_log - t, v_exp - se) - B - 4
    if goal < 16:
        raise PrecisionExhausted("not enough working precision for the group law")
    sigma = se + t * D2
    M = goal + sigma
    pm = ppow(p, M)

    # S = log X + log Y on the triangular grid, scaled by p^t
    S = [0] * fastpoly.tri_size(D2)
    for n in range(1, D2 + 1):
        z = log_ints[n] % pm
        S[fastpoly.tri_index(D2, n, 0)] = z
        S[fastpoly.tri_index(D2, 0, n)] = z
    # Horner over the exponential's coefficients; running shift grows by t
    acc = [0] * fastpoly.tri_size(D2)
    acc[0] = exp_ints[D2] % pm
    for k in range(D2 - 1, -1, -1):
        acc = fastpoly.mul_2d(acc, S, p, M, D2)
        align = se + t * (D2 - k)  # current shift of acc
        acc[0] = (acc[0] + exp_ints[k] * ppow(p, align - se)) % pm
    # final shift is sigma; the law is integral, so division must be exact
    cs = []
    div = ppow(p, sigma)
    for z in acc:
        zz = z % pm
        if zz % div:
            raise NonIntegralCoefficient(
                "group law coefficient failed integrality at certified precision")
        cs.append(PadicScalar.from_int(p, zz // div, goal))
    F = TruncSeries2(p, D2, cs)

    one = PadicScalar.one(p, goal)
    if (F.get(1, 0) - one).u is not None or (F.get(0, 1) - one).u is not None \
            or F.get(0, 0).u is not None:
        raise InternalCheckFailed("group law linear part is not X + Y")
    if not F.is_symmetric():
        raise InternalCheckFailed("group law is not symmetric")
    _check_fgl_commutes(ctx, F, goal)
    return F


def _check_fgl_commutes(ctx, F, goal):
    """[pi](F(X,Y)) == F([pi]X, [pi]Y) through the law's degree, checked in
    integral packed arithmetic."""
    p = ctx.p
    D2 = F.D
    M = min(goal, ctx.prec)
    pm = ppow(p, M)
    f_ints, vF = _scaled_ints(F.coeffs, 0, M, p)
    lt_ints, vL = _scaled_ints(ctx.lt_series.coeffs, 0, M, p)
    while len(lt_ints) > 2 and lt_ints[-1] == 0:
        lt_ints.pop()
    # left side: Horner of the series over F
    lhs = [0] * fastpoly.tri_size(D2)
    lhs[0] = lt_ints[-1]
    for k in range(len(lt_ints) - 2, -1, -1):
        lhs = fastpoly.mul_2d(lhs, f_ints, p, M, D2)
        lhs[0] = (lhs[0] + lt_ints[k]) % pm
    # right side: F(ltX, ltY) assembled from powers of the series
    powers = fastpoly.pow_list_1d(lt_ints[: D2 + 1], D2, p, M, D2)
    rhs = [0] * fastpoly.tri_size(D2)
    for i in range(D2 + 1):
        for j in range(D2 + 1 - i):
            c = f_ints[fastpoly.tri_index(D2, i, j)]
            if c == 0:
                continue
            gi, hj = powers[i], powers[j]
            for a in range(i, D2 + 1 - j):
                ca = c * gi[a] if a < len(gi) else 0
                if ca == 0:
                    continue
                for bdeg in range(j, D2 + 1 - a):
                    hb = hj[bdeg] if bdeg < len(hj) else 0
                    if hb:
                        k = fastpoly.tri_index(D2, a, bdeg)
                        rhs[k] = (rhs[k] + ca * hb) % pm
    check = min(vF, vL, M) - denominator_growth_bound(ctx.q, D2) - 2
    dm = ppow(p, max(8, check))
    for a, b in zip(lhs, rhs):
        if (a - b) % dm:
            raise InternalCheckFailed(
                "group law does not commute with the series")


# ---------------------------------------------------------------------------
# endomorphisms and morphisms
# ---------------------------------------------------------------------------

def _endo_key(a):
    if isinstance(a, int):
        return ("int", a)
    return ("scalar", a.v if a.u is not None else None,
            a.u, a.N)


def endo(ctx, a, verify=True) -> TruncSeries1:
    """The unique series a*X + O(X^2) commuting with the context's series."""
    key = _endo_key(a)
    got = ctx.endo_cache.get(key)
    if got is not None:
        return got
    if isinstance(a, int):
        a_sc = PadicScalar.from_int(ctx.p, a, ctx.prec)
    else:
        a_sc = a
    if a_sc.u is not None and a_sc.v < 0:
        raise NotIntegral("scalar action is only defined over Z_p")

    if ctx.label == "multiplicative":
        series = _binomial_endo(ctx, a_sc)
    else:
        series = _exp_of_scaled_log(ctx, a_sc)
    series.assert_integral()
    lin = series.coeffs[1] - a_sc
    if lin.u is not None:
        raise InternalCheckFailed("endomorphism linear term is off")
    if verify:
        _assert_commutes(ctx, series)
    with ctx._lock:
        ctx.endo_cache.setdefault(key, series)
    return ctx.endo_cache[key]


def _binomial_endo(ctx, a_sc):
    """(1+X)^a - 1 for the multiplicative context: exact binomials."""
    p, D = ctx.p, ctx.D
    cs = [PadicScalar.zero(p, ctx.prec), a_sc]
    cur = a_sc
    for n in range(2, D + 1):
        step = (a_sc - PadicScalar.from_int(p, n - 1, ctx.prec)) \
            * PadicScalar.from_rational(p, 1, n, ctx.prec)
        cur = cur * step
        cs.append(cur)
    return TruncSeries1(p, cs)


def _exp_of_scaled_log(ctx, a_sc):
    """exp(a * log X) through degree D in fixed-point packed arithmetic."""
    p, q, D = ctx.p, ctx.q, ctx.D
    scaled = [c * a_sc for c in ctx.log_series.coeffs]
    t = max([0] + [-c.v for c in scaled if c.u is not None])
    se = ctx.exp_shift
    B = denominator_growth_bound(q, D)
    log_ints, v_log = _scaled_ints(scaled, t, ctx.prec + t, p)
    exp_ints, v_exp = _scaled_ints(ctx.exp_series.coeffs, se, ctx.prec + se, p)
    goal = min(v_log - t, v_exp - se) - B - 4
    if goal < 16:
        raise PrecisionExhausted("not enough precision for the endomorphism")
    sigma = se + t * D
    M = goal + sigma
    pm = ppow(p, M)
    acc = [exp_ints[D] % pm]
    for k in range(D - 1, -1, -1):
        acc = fastpoly.mul_1d(acc, log_ints, p, M, D)
        align = se + t * (D - k)
        if len(acc) == 0:
            acc = [0]
        acc[0] = (acc[0] + exp_ints[k] * ppow(p, align - se)) % pm
    div = ppow(p, sigma)
    cs = []
    for n in range(D + 1):
        z = (acc[n] if n < len(acc) else 0) % pm
        if z % div:
            raise NonIntegralCoefficient(
                f"endomorphism coefficient {n} failed integrality")
        cs.append(PadicScalar.from_int(p, z // div, goal))
    return TruncSeries1(p, cs)


def _assert_commutes(ctx, series):
    """series o [pi] == [pi] o series through D in packed arithmetic."""
    p, D = ctx.p, ctx.D
    M = min(ctx.prec, series.min_precision())
    a_ints, va = _scaled_ints(series.coeffs, 0, M, p)
    l_ints, vl = _scaled_ints(ctx.lt_series.coeffs, 0, M, p)
    lhs = fastpoly.compose_1d(a_ints, l_ints, p, M, D)
    rhs = fastpoly.compose_1d(l_ints, a_ints, p, M, D)
    check = ppow(p, max(8, min(va, vl) - 2))
    for x, y in zip(lhs, rhs):
        if (x - y) % check:
            raise InternalCheckFailed("endomorphism does not commute")


def iterate_pi(ctx, n: int) -> TruncSeries1:
    """The n-fold self-composition, with the congruence
    X^(q^n) + pi^n X mod pi*X^2 asserted on the result."""
    if n < 0:
        raise ValueError("n must be >= 0")
    if n == 0:
        return TruncSeries1.identity(ctx.p, ctx.D, ctx.prec)
    got = ctx._iterates.get(n)
    if got is not None:
        return got
    p, D = ctx.p, ctx.D
    prev = iterate_pi(ctx, n - 1)
    M = min(ctx.prec, prev.min_precision(), ctx.lt_series.min_precision())
    a_ints, va = _scaled_ints(prev.coeffs, 0, M, p)
    l_ints, vl = _scaled_ints(ctx.lt_series.coeffs, 0, M, p)
    comp = fastpoly.compose_1d(a_ints, l_ints, p, M, D)
    out = TruncSeries1(p, [PadicScalar.from_int(p, c, min(va, vl))
                           for c in comp])
    _assert_iterate_congruence(ctx, out, n)
    with ctx._lock:
        ctx._iterates.setdefault(n, out)
    return ctx._iterates[n]


def _assert_iterate_congruence(ctx, series, n):
    q = ctx.q
    qn = q ** n
    pin = ctx.pi ** n
    d = series.coeffs[1] - pin
    if d.u is not None:
        raise InternalCheckFailed("iterate linear term differs from pi^n")
    for k in range(2, series.D + 1):
        c = series.coeffs[k]
        if k == qn:
            c = c - PadicScalar.one(ctx.p, c.N)
        if c.u is not None and c.v < 1:
            raise InternalCheckFailed(
                f"iterate congruence fails at degree {k}")
    # degrees beyond the truncation (e.g. X^(q^n) when q^n > D) are not
    # visible here; the congruence is asserted on what is stored


def build_lt_morphism(src, dst) -> TruncSeries1:
    """The unique theta = X + O(X^2) with dst o theta = theta o src (same
    uniformiser), computed as exp_dst(log_src(X)) and re-verified."""
    if (src.pi - dst.pi).u is not None:
        raise NotLubinTate("contexts must share the same uniformiser")
    p = src.p
    D = min(src.D, dst.D)
    t = src.log_shift
    se = dst.exp_shift
    B = denominator_growth_bound(src.q, D)
    log_ints, v_log = _scaled_ints(src.log_series.coeffs[: D + 1], t,
                                   src.prec + t, p)
    exp_ints, v_exp = _scaled_ints(dst.exp_series.coeffs[: D + 1], se,
                                   dst.prec + se, p)
    goal = min(v_log - t, v_exp - se) - B - 4
    if goal < 16:
        raise PrecisionExhausted("not enough precision for the morphism")
    sigma = se + t * D
    M = goal + sigma
    pm = ppow(p, M)
    acc = [exp_ints[D] % pm]
    for k in range(D - 1, -1, -1):
        acc = fastpoly.mul_1d(acc, log_ints, p, M, D)
        if not acc:
            acc = [0]
        align = se + t * (D - k)
        acc[0] = (acc[0] + exp_ints[k] * ppow(p, align - se)) % pm
    div = ppow(p, sigma)
    cs = []
    for n in range(D + 1):
        z = (acc[n] if n < len(acc) else 0) % pm
        if z % div:
            raise NonIntegralCoefficient(
                f"morphism coefficient {n} failed integrality")
        cs.append(PadicScalar.from_int(p, z // div, goal))
    theta = TruncSeries1(p, cs)

    # re-substitution: dst(theta(X)) == theta(src(X)) through D
    th_ints, vt = _scaled_ints(theta.coeffs, 0, goal, p)
    d_ints, vd = _scaled_ints(dst.lt_series.coeffs[: D + 1], 0, goal, p)
    s_ints, vs = _scaled_ints(src.lt_series.coeffs[: D + 1], 0, goal, p)
    lhs = fastpoly.compose_1d(d_ints, th_ints, p, goal, D)
    rhs = fastpoly.compose_1d(th_ints, s_ints, p, goal, D)
    check = ppow(p, max(8, min(vt, vd, vs) - 2))
    for x, y in zip(lhs, rhs):
        if (x - y) % check:
            raise InternalCheckFailed("morphism does not intertwine the series")
    return theta


# ---------------------------------------------------------------------------
# element evaluation
# ---------------------------------------------------------------------------

def eval_integral_series(series, x: FieldElement, target=None) -> FieldElement:
    """sum c_n x^n for an integral series and v_L(x) >= 1, certified to
    min(target, (cutoff+1) v(x)) w-digits."""
    fld = x.field
    if x.is_zero:
        return x  # integral series with no constant term maps O(w^P) to itself
    v = x.valuation()
    if v < 1:
        raise OutsideConvergenceDisc("argument must lie in the maximal ideal")
    if target is None:
        target = x.precision()
    cutoff = min(series.D, max(1, -(-target // v)))
    acc = fld.from_scalar(series.coeffs[cutoff])
    for n in range(cutoff - 1, -1, -1):
        acc = acc * x + fld.from_scalar(series.coeffs[n])
    tail = (cutoff + 1) * v
    return acc.truncate(min(acc.precision(), tail, target))


def eval_lt(ctx, x: FieldElement) -> FieldElement:
    return eval_integral_series(ctx.lt_series, x)


def eval_iterated_lt(ctx, x: FieldElement, n: int) -> FieldElement:
    y = x
    for _ in range(n):
        y = eval_lt(ctx, y)
    return y


def eval_endo(ctx, a, x: FieldElement) -> FieldElement:
    return eval_integral_series(endo(ctx, a), x)


def eval_fgl(ctx, x: FieldElement, y: FieldElement) -> FieldElement:
    """F(x, y) by direct bivariate evaluation."""
    if x.field is not y.field:
        raise ValueError("elements of different fields")
    fld = x.field
    F = ctx.fgl
    vx = x.val_floor()
    vy = y.val_floor()
    if min(vx, vy) < 1:
        raise OutsideConvergenceDisc("group law arguments must have v >= 1")
    D2 = F.D
    support = [(i, j) for i, j in F.iter_indices() if F.get(i, j).u is not None]
    top_i = max((i for i, _ in support), default=0)
    top_j = max((j for _, j in support), default=0)
    xp = [fld.one()]
    yp = [fld.one()]
    for _ in range(top_i):
        xp.append(xp[-1] * x)
    for _ in range(top_j):
        yp.append(yp[-1] * y)
    acc = fld.zero()
    for i, j in support:
        acc = acc + (xp[i] * yp[j]).scalar_mul(F.get(i, j))
    # markers in the law are capped collectively through its min precision
    tail = (D2 + 1) * min(vx, vy)
    cap = min(acc.precision(), tail, fld.e * F.min_precision() + 2)
    return acc.truncate(cap)


def f_sum(ctx, elements) -> FieldElement:
    """Left fold of the group law over a list of elements."""
    it = iter(elements)
    acc = next(it)
    for x in it:
        acc = eval_fgl(ctx, acc, x)
    return acc


def f_negate(ctx, x: FieldElement) -> FieldElement:
    return eval_endo(ctx, PadicScalar.from_int(ctx.p, -1, ctx.prec), x)


def ell_for(ctx, field: LocalField, v: int) -> int:
    """Least l >= 0 with q^l * v * (q-1) > v_L(pi); exact integers only."""
    q = ctx.q
    vpi = field.e * ctx.pi.v
    if v * (q - 1) > vpi:
        return 0
    ell = 1
    while (q ** ell) * v * (q - 1) <= vpi:
        ell += 1
    return ell


def _log_tail_cutoff(ctx, field, w, goal):
    """Smallest n0 so every term past n0 of log evaluated at valuation w
    is >= goal, using v(c_n) >= -floor(log_q n); None if D is too small."""
    e, q = field.e, ctx.q
    n0 = max(1, -(-3 * e // w))
    while n0 <= ctx.D:
        if n0 * w - e * (ilog(q, n0) + 1) >= goal + e:
            return n0
        n0 += 1
    return None


def eval_log(ctx, x: FieldElement) -> FieldElement:
    """The logarithm at x (v_L(x) >= 1), certified by dual routes: the
    series is evaluated inside the convergence disc after l steps of the
    context's series, and the answer must agree with the limit quotients
    s^(m)(x)/pi^m at depths m and m+1 on all overlapping digits."""
    fld = x.field
    if x.is_zero:
        return x
    v = x.valuation()
    if v < 1:
        raise OutsideConvergenceDisc("logarithm needs v_L(x) >= 1")
    if not ctx.log_bound_ok:
        raise TailBoundViolated("log coefficient bound failed at build time")
    e, q = fld.e, ctx.q
    vpi = e * ctx.pi.v
    ell = ell_for(ctx, fld, v)

    # direct verification of the closed form for ell
    y = x
    for k in range(ell):
        if y.is_zero:
            raise PrecisionExhausted(
                "input precision too low to certify the reduction depth")
        if y.valuation() * (q - 1) > vpi:
            raise InternalCheckFailed("ell closed form overshoots")
        y = eval_lt(ctx, y)
    if y.is_zero:
        # torsion at working precision: the logarithm vanishes
        return y.scalar_mul(ctx.pi.invert() ** ell)
    w = y.valuation()
    if not w * (q - 1) > vpi:
        raise InternalCheckFailed("ell closed form undershoots")

    goal = min(x.precision(), fld.N + 48)
    n0 = _log_tail_cutoff(ctx, fld, w, goal)
    if n0 is None:
        # degrade to the largest target the truncation degree can certify,
        # as long as the field's nominal precision is still reached
        best = ctx.D * w - e * (ilog(q, ctx.D) + 2)
        if best < fld.N:
            raise TailBoundViolated(
                f"truncation degree {ctx.D} certifies only {best} digits; "
                "raise D")
        goal = min(goal, best)
        n0 = _log_tail_cutoff(ctx, fld, w, goal)
        if n0 is None:
            raise TailBoundViolated(
                f"truncation degree {ctx.D} cannot reach {goal} digits")
    # power-sum evaluation: summing c_n y^n keeps the error intervals tight
    # (Horner would pair deep-denominator coefficients with the raw
    # uncertainty of y and shed a dozen certified digits)
    acc = y.scalar_mul(ctx.log_series.coeffs[1])
    yn = y
    for n in range(2, n0 + 1):
        yn = yn * y
        c = ctx.log_series.coeffs[n]
        if c.u is not None or fld.e * c.N + n * w < goal:
            acc = acc + yn.scalar_mul(c)
    logy = acc.truncate(min(acc.precision(), goal))
    pi_inv = ctx.pi.invert()
    result = logy.scalar_mul(pi_inv ** ell)

    _limit_quotient_guard(ctx, x, y, ell, result)
    return result


def _limit_quotient_guard(ctx, x, y, ell, result):
    """Quotient-route consistency at depths ell+2 and ell+3."""
    fld = x.field
    e, q = fld.e, ctx.q
    pi_inv = ctx.pi.invert()
    ym = y
    m = ell
    for depth in (ell + 2, ell + 3):
        while m < depth and not ym.is_zero:
            ym = eval_lt(ctx, ym)
            m += 1
        try:
            vym = ym.valuation()
        except PrecisionExhausted:
            continue  # quotient route collapsed to 0 at precision; no info
        # v(y - log y) >= min over n>=2 of (n v(y) - e*floor(log_q n))
        bound = min(n * vym - e * ilog(q, n)
                    for n in range(2, max(66, 3 * e + 2)))
        quot = ym.scalar_mul(pi_inv ** m)
        avail = quot.precision()
        overlap = min(result.precision(), bound - m * e, avail)
        if overlap <= 0:
            continue
        diff = quot - result
        if diff.val_floor() < overlap:
            raise InternalCheckFailed(
                "limit-quotient route disagrees with the series route")


def eval_exp(ctx, x: FieldElement) -> FieldElement:
    """The exponential on its convergence disc v_L(x) > v_L(pi)/(q-1)."""
    fld = x.field
    if x.is_zero:
        return x
    v = x.valuation()
    e, q = fld.e, ctx.q
    vpi = e * ctx.pi.v
    if not v * (q - 1) > vpi:
        raise OutsideConvergenceDisc(
            f"exp needs v > {vpi}/{q - 1}; argument has v = {v}")
    if not ctx.exp_bound_ok:
        raise TailBoundViolated("exp coefficient bound failed at build time")
    goal = min(x.precision(), fld.N + 48)
    # term valuation >= n(v - vpi/(q-1)) + vpi/(q-1), increasing in n
    den = v * (q - 1) - vpi
    reachable = (ctx.D * den + vpi) // (q - 1)
    if reachable < fld.N:
        raise TailBoundViolated(
            f"truncation degree {ctx.D} certifies only {reachable} digits "
            "of exp; raise D")
    goal = min(goal, reachable)
    n0 = max(1, -(-(goal * (q - 1) - vpi) // den))
    acc = x.scalar_mul(ctx.exp_series.coeffs[1])
    xn = x
    for n in range(2, n0 + 1):
        xn = xn * x
        c = ctx.exp_series.coeffs[n]
        if c.u is not None or fld.e * c.N + n * v < goal:
            acc = acc + xn.scalar_mul(c)
    return acc.truncate(min(acc.precision(), goal))


# ---------------------------------------------------------------------------
# torsion fields
# ---------------------------------------------------------------------------

class TorsionField:
    """Level-n torsion tower: the quotient polynomial of consecutive
    iterates is Eisenstein and its root generates the torsion module."""

    def __init__(self, level, field, lam, defining_poly):
        self.level = level
        self.field = field
        self.lam = lam
        self.defining_poly = defining_poly

    def torsion_points(self, ctx):
        """All q^level torsion points as endomorphism values of lambda."""
        pts = []
        for a in range(ctx.q ** self.level):
            if a == 0:
                pts.append(self.field.zero())
            else:
                pts.append(eval_endo(ctx, a, self.lam))
        return pts

    def __repr__(self):
        return f"TorsionField(level={self.level}, degree={self.field.degree})"


def _poly_compose_int(outer, inner):
    acc = [outer[-1]]
    for k in range(len(outer) - 2, -1, -1):
        conv = [0] * (len(acc) + len(inner) - 1)
        for i, a in enumerate(acc):
            if a:
                for j, b in enumerate(inner):
                    conv[i + j] += a * b
        acc = conv
        acc[0] += outer[k]
    return acc


def _poly_divexact_int(num, den):
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    for k in range(len(out) - 1, -1, -1):
        c = num[k + len(den) - 1]
        if c % den[-1]:
            raise InternalCheckFailed("iterate quotient is not a polynomial")
        c //= den[-1]
        out[k] = c
        for j, d in enumerate(den):
            num[k + j] -= c * d
    if any(num):
        raise InternalCheckFailed("iterate division left a remainder")
    return out


def torsion_field(ctx, n: int, N: int = 64) -> TorsionField:
    """The level-n torsion tower as an Eisenstein extension of degree
    q^(n-1) (q-1), with the uniformiser as module generator."""
    if n < 1:
        raise ValueError("level must be >= 1")
    ints = ctx.lt_ints
    if ints is None:
        raise SeriesNotPolynomial(
            "torsion towers need a polynomial series with exact integer "
            "coefficients; conjugate through a morphism from the basic "
            "context instead")
    if ints[-1] != 1:
        raise SeriesNotPolynomial("polynomial series must be monic")
    upper = list(ints)
    for _ in range(n - 1):
        upper = _poly_compose_int(upper, ints)
    lower = [0, 1]
    for _ in range(n - 1):
        lower = _poly_compose_int(lower, ints)
    # upper = [pi^n], lower = [pi^(n-1)]; lower = X * (stuff), divide twice
    phi = _poly_divexact_int(upper, lower)
    field = make_tower(ctx.p, 1, len(phi) - 1, phi, N)
    lam = field.uniformizer()
    top = eval_iterated_lt(ctx, lam, n)
    if not top.is_zero:
        raise InternalCheckFailed("lambda is not level-n torsion")
    if n >= 1:
        below = eval_iterated_lt(ctx, lam, n - 1)
        if below.is_zero:
            raise InternalCheckFailed("lambda is torsion of level below n")
    if lam.valuation() != 1:
        raise InternalCheckFailed("lambda is not prime in the torsion tower")
    return TorsionField(n, field, lam, phi)


def conjugated_torsion_point(ctx, n: int, N: int = 64):
    """A level-n torsion point for an arbitrary context, reached inside the
    basic context's torsion tower through the intertwining morphism (the
    route that works even when the context's series is not a polynomial).

    Returns (torsion_tower_of_basic, point)."""
    base = get_context(ctx.p, "basic", ctx.D, N)
    if (ctx.pi - base.pi).u is not None:
        raise NotLubinTate("conjugation route needs pi = p")
    theta = build_lt_morphism(base, ctx)
    tf = torsion_field(base, n, N)
    pt = eval_integral_series(theta, tf.lam)
    if not eval_iterated_lt(ctx, pt, n).is_zero:
        raise InternalCheckFailed("conjugated point is not level-n torsion")
    if n >= 1 and eval_iterated_lt(ctx, pt, n - 1).is_zero:
        raise InternalCheckFailed("conjugated point has level below n")
    return tf, pt


# ---------------------------------------------------------------------------
# canonical contexts
# ---------------------------------------------------------------------------

_context_cache: dict = {}
_context_lock = threading.Lock()


def _context_precision(p, D, N):
    return N + 48 + D + denominator_growth_bound(p, D) + 16


def multiplicative_context(p, D=None, N=64) -> LTContext:
    D = D or default_trunc_degree(p, 1, N)
    P = _context_precision(p, D, N)
    ints = [0] * (D + 1)
    for k in range(1, min(p, D) + 1):
        ints[k] = _binom(p, k)
    s = TruncSeries1.from_ints(p, ints, D, P)
    return validate_lt_series(PadicScalar.from_int(p, p, P), s,
                              fgl_degree=min(D, N + 8),
                              label="multiplicative")


def basic_context(p, D=None, N=64, pi=None) -> LTContext:
    D = D or default_trunc_degree(p, 1, N)
    P = _context_precision(p, D, N)
    pi = pi if pi is not None else p
    ints = [0] * (D + 1)
    ints[1] = pi
    ints[p] = 1
    s = TruncSeries1.from_ints(p, ints, D, P)
    return validate_lt_series(PadicScalar.from_int(p, pi, P), s,
                              fgl_degree=min(D, N + 8), label="basic")


def custom_context(p, coeff_ints, D=None, N=64) -> LTContext:
    D = D or default_trunc_degree(p, 1, N)
    P = _context_precision(p, D, N)
    s = TruncSeries1.from_ints(p, list(coeff_ints), D, P)
    return validate_lt_series(PadicScalar.from_int(p, coeff_ints[1], P), s,
                              fgl_degree=min(D, N + 8), label="custom")


def get_context(p, kind="multiplicative", D=None, N=64) -> LTContext:
    key = (p, kind, D, N)
    with _context_lock:
        got = _context_cache.get(key)
    if got is not None:
        return got
    if kind == "multiplicative":
        ctx = multiplicative_context(p, D, N)
    elif kind == "basic":
        ctx = basic_context(p, D, N)
    else:
        raise ValueError(f"unknown context kind {kind!r}")
    with _context_lock:
        _context_cache.setdefault(key, ctx)
        return _context_cache[key]


def _binom(n, k):
    out = 1
    for i in range(k):
        out = out * (n - i) // (i + 1)
    return out
