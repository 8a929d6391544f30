"""Module-theoretic algorithms on the maximal ideal of a tower.

Everything here treats m_L as a Z_p-module through a Lubin-Tate context:
regularity testing, the induced maps of the series on graded quotients,
bases and spanning sets, valuation certificates, membership/coordinate
solving by exact Gaussian elimination with valuation pivoting, and the
greedy digit expansion that witnesses spanning claims.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .errors import (
    InternalCheckFailed,
    NotInSpan,
    NotRegular,
    PrecisionExhausted,
    RankDeficient,
    RatioTooSmall,
    RegularFieldGiven,
    StuckLevel,
)
from .lubintate import (
    LTContext,
    ell_for,
    endo,
    eval_endo,
    eval_fgl,
    eval_log,
    eval_lt,
    f_negate,
    torsion_field,
)
from .padic import PadicScalar
from .tower import FieldElement, LocalField


# ---------------------------------------------------------------------------
# regularity
# ---------------------------------------------------------------------------

@dataclass
class RegularityReport:
    is_regular: bool
    ratio_integral: bool
    epsilon: FieldElement
    witness: tuple | None

    def to_json(self):
        return {"is_regular": self.is_regular,
                "ratio_integral": self.ratio_integral,
                "witness": list(self.witness) if self.witness else None}


def _vpi(L: LocalField, ctx: LTContext) -> int:
    return L.e * ctx.pi.v


def unit_part_of_pi(L: LocalField, ctx: LTContext) -> FieldElement:
    """The unit eps with pi = eps * w^(v_L(pi)) for the canonical w."""
    vpi = _vpi(L, ctx)
    pi_elem = L.from_scalar(PadicScalar.from_int(L.p, 1, L.scalar_prec) * ctx.pi)
    return pi_elem * (L.uniformizer_inverse() ** vpi)


def regularity_check(L: LocalField, ctx: LTContext,
                     uniformizer: FieldElement | None = None) -> RegularityReport:
    """No nontrivial torsion iff the ratio is non-integral or the residue
    equation u^q + eps*u = 0 has no unit solution."""
    q = ctx.q
    vpi = _vpi(L, ctx)
    if uniformizer is None:
        eps = unit_part_of_pi(L, ctx)
    else:
        eps = L.from_scalar(PadicScalar.from_int(L.p, 1, L.scalar_prec)
                            * ctx.pi) * (uniformizer.invert() ** vpi)
    ratio_integral = vpi % (q - 1) == 0
    if not ratio_integral:
        return RegularityReport(True, False, eps, None)
    res = L.residue
    eps_bar = eps.residue_decompose(0)
    for u in res.nonzero_elements():
        if res.is_zero(res.add(res.pow(u, q), res.mul(eps_bar, u))):
            return RegularityReport(False, True, eps, u)
    return RegularityReport(True, True, eps, None)


# ---------------------------------------------------------------------------
# induced maps on graded quotients
# ---------------------------------------------------------------------------

def _residue_step_map(L, ctx, eps_bar, i):
    """The map k_L -> k_L induced by the series between levels i and
    next_level(i), as a function on residue tuples."""
    q = ctx.q
    vpi = _vpi(L, ctx)
    res = L.residue
    if i * (q - 1) < vpi:
        return (lambda u: res.pow(u, q)), q * i
    if i * (q - 1) == vpi:
        return (lambda u: res.add(res.pow(u, q), res.mul(eps_bar, u))), q * i
    return (lambda u: res.mul(eps_bar, u)), i + vpi


def next_level(L, ctx, i):
    q = ctx.q
    vpi = _vpi(L, ctx)
    return q * i if i * (q - 1) <= vpi else i + vpi


def induced_map_check(L: LocalField, ctx: LTContext, i: int) -> dict:
    """Enumerate all q^f residue classes at level i, push them through the
    series, and report well-definedness, additivity, injectivity and
    surjectivity of the induced map on graded quotients."""
    if i < 1:
        raise ValueError("level must be >= 1")
    q = ctx.q
    vpi = _vpi(L, ctx)
    res = L.residue
    eps_bar = unit_part_of_pi(L, ctx).residue_decompose(0)
    target = next_level(L, ctx, i)
    table = {}
    well_defined = True
    for c in res.elements():
        x = L.element_from_residue(c, i)
        if res.is_zero(c):
            table[c] = res.zero()
            continue
        y = eval_lt(ctx, x)
        if y.val_floor() < target:
            well_defined = False
            table[c] = None
            continue
        try:
            v = y.valuation()
        except PrecisionExhausted:
            table[c] = res.zero()
            continue
        table[c] = y.residue_decompose(target) if v == target else res.zero()

    # stability under change of representative: perturb each basis class
    # one level up and re-map
    for t in range(L.f):
        c = tuple(1 if s == t else 0 for s in range(L.f))
        x = L.element_from_residue(c, i) + \
            L.zeta(1 + t) * (L.uniformizer() ** (i + 1))
        y = eval_lt(ctx, x)
        if y.val_floor() < target:
            well_defined = False
            continue
        cls = res.zero()
        try:
            if y.valuation() == target:
                cls = y.residue_decompose(target)
        except PrecisionExhausted:
            pass
        if cls != table[c]:
            well_defined = False

    additive = all(
        table[a] is not None and table[b] is not None
        and table[res.add(a, b)] == res.add(table[a], table[b])
        for a in res.elements() for b in res.elements())
    images = [v for v in table.values() if v is not None]
    injective = len(set(images)) == len(images)
    surjective = set(images) == set(res.elements())
    kernel = [list(c) for c, v in table.items()
              if v is not None and res.is_zero(v) and not res.is_zero(c)]
    # the predicted residue-level formula, for the report
    fmap, tgt2 = _residue_step_map(L, ctx, eps_bar, i)
    formula_ok = tgt2 == target and all(
        v is None or v == fmap(c) for c, v in table.items())
    return {"level": i, "target": target,
            "regime": ("below" if i * (q - 1) < vpi
                       else "at" if i * (q - 1) == vpi else "above"),
            "well_defined": well_defined, "additive": additive,
            "injective": injective, "surjective": surjective,
            "kernel_classes": kernel, "formula_consistent": formula_ok}


# ---------------------------------------------------------------------------
# generating sets
# ---------------------------------------------------------------------------

@dataclass
class GeneratingSet:
    kind: str                      # basis | log-basis | spanning | torsion-gens | torsion-log-basis
    elements: list
    claimed_rank: int
    levels: list = dc_field(default_factory=list)
    labels: list = dc_field(default_factory=list)

    def __len__(self):
        return len(self.elements)


def basis_levels(L: LocalField, ctx: LTContext):
    """j in 1..floor(q v_L(pi)/(q-1)) with q not dividing j."""
    q = ctx.q
    vpi = _vpi(L, ctx)
    top = (q * vpi) // (q - 1)
    return [j for j in range(1, top + 1) if j % q]


def module_basis(L: LocalField, ctx: LTContext) -> GeneratingSet:
    """The unit-lift power basis of the maximal ideal as a Z_p-module
    (regular towers only)."""
    reg = regularity_check(L, ctx)
    if not reg.is_regular:
        raise NotRegular("tower contains nontrivial torsion; no basis exists")
    w = L.uniformizer()
    elements, levels, labels = [], [], []
    for j in basis_levels(L, ctx):
        wj = w ** j
        for i in range(1, L.f + 1):
            elements.append(L.zeta(i) * wj)
            levels.append(j)
            labels.append((i, j))
    rank = L.f * _vpi(L, ctx)
    if len(elements) != rank or rank != L.degree * ctx.pi.v:
        raise InternalCheckFailed("basis size disagrees with f*v_L(pi)")
    return GeneratingSet("basis", elements, rank, levels, labels)


def log_image_basis(L: LocalField, ctx: LTContext) -> GeneratingSet:
    base = module_basis(L, ctx)
    logs = [eval_log(ctx, g) for g in base.elements]
    return GeneratingSet("log-basis", logs, base.claimed_rank,
                         base.levels, base.labels)


def spanning_set(L: LocalField, ctx: LTContext) -> GeneratingSet:
    """For towers containing level-one torsion: the basis levels below the
    top plus one full extra level at j = q v_L(pi)/(q-1)."""
    reg = regularity_check(L, ctx)
    if reg.is_regular:
        raise RegularFieldGiven("tower is regular; use module_basis")
    q = ctx.q
    vpi = _vpi(L, ctx)
    top = q * vpi // (q - 1)  # integral: non-regularity forces it
    w = L.uniformizer()
    elements, levels, labels = [], [], []
    for j in [j for j in range(1, top) if j % q] + [top]:
        wj = w ** j
        for i in range(1, L.f + 1):
            elements.append(L.zeta(i) * wj)
            levels.append(j)
            labels.append((i, j))
    want = L.f * vpi + L.f
    if len(elements) != want:
        raise InternalCheckFailed("spanning set size disagrees with [L:K]+f")
    return GeneratingSet("spanning", elements, L.f * vpi, levels, labels)


def torsion_generating_sets(ctx: LTContext, n: int, N: int = 64):
    """(S_n, B_n, tower): powers lambda^j of the torsion generator span;
    their logarithms with j = 1 dropped are a basis of the log image."""
    tf = torsion_field(ctx, n, N)
    q = ctx.q
    lam = tf.lam
    js = [j for j in range(1, q ** n) if j % q] + [q ** n]
    pows = {}
    cur = lam
    pows[1] = cur
    for j in range(2, q ** n + 1):
        cur = cur * lam
        pows[j] = cur
    gens = GeneratingSet("torsion-gens", [pows[j] for j in js],
                         q ** n - q ** (n - 1), js, [(1, j) for j in js])
    log_js = [j for j in js if j != 1]
    logs = GeneratingSet("torsion-log-basis",
                         [eval_log(ctx, pows[j]) for j in log_js],
                         q ** n - q ** (n - 1), log_js,
                         [(1, j) for j in log_js])
    if len(logs) != q ** n - q ** (n - 1):
        raise InternalCheckFailed("torsion log basis has the wrong size")
    return gens, logs, tf


# ---------------------------------------------------------------------------
# exact linear algebra over Q_p
# ---------------------------------------------------------------------------

def _pivot_row(rows, col, used):
    best, bestv = None, None
    for r, row in enumerate(rows):
        if r in used:
            continue
        s = row[col]
        if s.u is None:
            continue
        if bestv is None or s.v < bestv:
            best, bestv = r, s.v
    return best


def coords_in_span(target: FieldElement, gens) -> list:
    """Solve target = sum c_k g_k over Q_p by Gaussian elimination with
    valuation pivoting; membership in the Z_p-span means all v(c_k) >= 0."""
    if isinstance(gens, GeneratingSet):
        gens = gens.elements
    if not gens:
        raise RankDeficient("no generators")
    cols = [g.flat_coords() for g in gens]
    rhs = list(target.flat_coords())
    m = len(rhs)
    n = len(cols)
    rows = [[cols[c][r] for c in range(n)] + [rhs[r]] for r in range(m)]
    used = {}
    for c in range(n):
        r = _pivot_row(rows, c, used)
        if r is None:
            raise RankDeficient(f"generators dependent at column {c}")
        used[r] = c
        inv = rows[r][c].invert()
        rows[r] = [s * inv for s in rows[r]]
        for r2 in range(m):
            if r2 != r and rows[r2][c].u is not None:
                fac = rows[r2][c]
                rows[r2] = [a - fac * b for a, b in zip(rows[r2], rows[r])]
    for r in range(m):
        if r not in used and rows[r][n].u is not None:
            raise NotInSpan(
                f"residual of valuation {rows[r][n].v} remains outside the span")
    out = [None] * n
    for r, c in used.items():
        out[c] = rows[r][n]
    return out


def coordinate_matrix_rank(gens) -> int:
    """Rank of the coordinate matrix, certified by valuation pivoting."""
    if isinstance(gens, GeneratingSet):
        gens = gens.elements
    cols = [g.flat_coords() for g in gens]
    m = len(cols[0])
    rows = [[cols[c][r] for c in range(len(cols))] for r in range(m)]
    used = {}
    rank = 0
    for c in range(len(cols)):
        r = _pivot_row(rows, c, used)
        if r is None:
            continue
        used[r] = c
        rank += 1
        inv = rows[r][c].invert()
        rows[r] = [s * inv for s in rows[r]]
        for r2 in range(m):
            if r2 != r and rows[r2][c].u is not None:
                fac = rows[r2][c]
                rows[r2] = [a - fac * b for a, b in zip(rows[r2], rows[r])]
    return rank


def lattices_equal(gens_a, gens_b) -> bool:
    """Mutual integral coordinates: each side lies in the other's Z_p-span."""
    ea = gens_a.elements if isinstance(gens_a, GeneratingSet) else gens_a
    eb = gens_b.elements if isinstance(gens_b, GeneratingSet) else gens_b
    try:
        for x in ea:
            if any(c.u is not None and c.v < 0 for c in coords_in_span(x, eb)):
                return False
        for x in eb:
            if any(c.u is not None and c.v < 0 for c in coords_in_span(x, ea)):
                return False
    except NotInSpan:
        return False
    return True


# ---------------------------------------------------------------------------
# valuation certificates and the minimum of the log image
# ---------------------------------------------------------------------------

@dataclass
class ValuationCertificate:
    x: FieldElement
    ell: int
    predicted: int
    observed: int | None          # None: indistinguishable from zero
    relation: str                 # equality | at-least | violated

    def to_json(self):
        return {"ell": self.ell, "predicted": self.predicted,
                "observed": self.observed, "relation": self.relation}


def valuation_certificate(L: LocalField, ctx: LTContext,
                          x: FieldElement) -> ValuationCertificate:
    v = x.valuation()
    if v < 1:
        raise ValueError("certificates need v_L(x) >= 1")
    q = ctx.q
    vpi = _vpi(L, ctx)
    ell = ell_for(ctx, L, v)
    predicted = q ** ell * v - ell * vpi
    lx = eval_log(ctx, x)
    try:
        observed = lx.valuation()
    except PrecisionExhausted:
        observed = None
    if observed is None:
        relation = "at-least"
    elif observed == predicted:
        relation = "equality"
    elif observed > predicted:
        relation = "at-least"
    else:
        relation = "violated"
    return ValuationCertificate(x, ell, predicted, observed, relation)


def min_log_valuation(L: LocalField, ctx: LTContext) -> dict:
    """The minimal valuation in the log image: q^gamma - gamma v_L(pi) on
    regular towers (cross-checked two ways), a spanning-set sweep otherwise."""
    q = ctx.q
    vpi = _vpi(L, ctx)
    reg = regularity_check(L, ctx)
    if vpi < q - 1:
        raise RatioTooSmall(
            "v_L(pi) < q-1: the image is the whole maximal ideal, min = 1")
    if reg.is_regular:
        gamma = 1
        while q ** gamma * (q - 1) <= vpi:
            gamma += 1
        if not q ** (gamma - 1) * (q - 1) <= vpi:
            raise InternalCheckFailed("gamma bracketing failed")
        minval = q ** gamma - gamma * vpi
        obs = eval_log(ctx, L.uniformizer()).valuation()
        if obs != minval:
            raise InternalCheckFailed(
                f"v(log w) = {obs} disagrees with q^g - g vpi = {minval}")
        sweep = min(g.valuation() for g in log_image_basis(L, ctx).elements)
        if sweep != minval:
            raise InternalCheckFailed("basis sweep disagrees with the formula")
        return {"gamma": gamma, "min": minval, "method": "formula"}
    sweep = None
    for g in spanning_set(L, ctx).elements:
        lg = eval_log(ctx, g)
        try:
            v = lg.valuation()
        except PrecisionExhausted:
            continue  # kernel element: contributes nothing to the minimum
        sweep = v if sweep is None else min(sweep, v)
    return {"gamma": None, "min": sweep, "method": "sweep"}


# ---------------------------------------------------------------------------
# greedy digit expansion
# ---------------------------------------------------------------------------

def _ladder_to(L, ctx, start, level):
    """Number of series applications taking `start` to `level`, or None."""
    j, m = start, 0
    while j < level:
        j = next_level(L, ctx, j)
        m += 1
    return m if j == level else None


def expand_in_generators(x: FieldElement, gens: GeneratingSet,
                         ctx: LTContext, target: int | None = None,
                         verify: bool = False) -> dict:
    """Greedy digit expansion x == F-sum of [a_k](g_k) mod w^target.

    At each step the remainder's residue class is matched by a generator
    level pushed up the [pi]-ladder; the solved F_p point contributes
    c * pi^m to that generator's digit.  Ties between candidate levels go
    to the smallest level, then the smallest lift index.  A level no
    candidate can solve falsifies the spanning claim being exercised.
    """
    L = x.field
    res = L.residue
    if target is None:
        target = min(L.N, x.precision())
    by_level: dict = {}
    for k in range(len(gens.elements)):
        by_level.setdefault(gens.levels[k], []).append(k)
    level_list = sorted(by_level)
    digits = [PadicScalar.zero(ctx.p, ctx.prec) for _ in gens.elements]
    pushed: dict = {}  # k -> (m, [pi^m](g_k)); m only ever grows

    def push(k, m):
        pm, ym = pushed.get(k, (0, gens.elements[k]))
        if pm > m:
            pm, ym = 0, gens.elements[k]
        while pm < m:
            ym = eval_lt(ctx, ym)
            pm += 1
        pushed[k] = (pm, ym)
        return ym

    def class_at(y, v):
        if y.val_floor() < v:
            raise InternalCheckFailed("ladder level bookkeeping violated")
        try:
            if y.valuation() == v:
                return y.residue_decompose(v)
        except PrecisionExhausted:
            pass
        return res.zero()

    r = x
    last_v = None
    steps = 0
    while not (r.is_zero or r.val_floor() >= target):
        v = r.valuation()
        if last_v is not None and v <= last_v:
            raise InternalCheckFailed("remainder valuation failed to increase")
        last_v = v
        steps += 1
        if steps > 4 * target + 8:
            raise InternalCheckFailed("expansion failed to terminate")
        tau = r.residue_decompose(v)
        solved = False
        for j in level_list:
            if j > v:
                break
            m = _ladder_to(L, ctx, j, v)
            if m is None:
                continue
            ks = by_level[j]
            cols = [class_at(push(k, m), v) for k in ks]
            sol = res.solve_linear(cols, tau)
            if sol is None:
                continue
            for k, c in zip(ks, sol):
                c %= L.p
                if c == 0:
                    continue
                piece = eval_endo(ctx, c, push(k, m))
                r = eval_fgl(ctx, r, f_negate(ctx, piece))
                digits[k] = digits[k] + \
                    PadicScalar.from_int(ctx.p, c, ctx.prec) * (ctx.pi ** m)
            solved = True
            break
        if not solved:
            raise StuckLevel(
                f"no generator level reaches {v}; spanning claim fails here")

    report = {"digits": digits, "target": target,
              "labels": list(gens.labels), "steps": steps}
    if verify:
        acc = None
        for k, g in enumerate(gens.elements):
            if digits[k].u is None:
                continue
            piece = eval_endo(ctx, digits[k], g)
            acc = piece if acc is None else eval_fgl(ctx, acc, piece)
        if acc is None:
            acc = L.zero()
        d = x - acc
        if d.val_floor() < min(target, d.precision()):
            raise InternalCheckFailed("digit re-evaluation missed the input")
        report["verified"] = True
    return report
