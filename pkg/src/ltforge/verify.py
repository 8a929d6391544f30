"""Theorem verification sweeps.

Each check runs a named statement against concrete towers and contexts at
finite precision and reports "consistent" or "violated" with a witness.
All randomness is seeded; identical configurations produce identical
reports.  Nothing here proves a theorem: a passing sweep is evidence at
precision N, a failing one is a counterexample to the implementation or
the statement.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .errors import (
    InternalCheckFailed,
    NotLubinTate,
    PrecisionExhausted,
    RatioTooSmall,
    StuckLevel,
)
from .lubintate import (
    endo,
    eval_fgl,
    eval_iterated_lt,
    eval_log,
    eval_lt,
    f_negate,
    get_context,
    torsion_field,
    validate_lt_series,
)
from .padic import PadicScalar
from .series import TruncSeries1
from .structure import (
    GeneratingSet,
    coordinate_matrix_rank,
    coords_in_span,
    expand_in_generators,
    induced_map_check,
    lattices_equal,
    log_image_basis,
    min_log_valuation,
    module_basis,
    regularity_check,
    spanning_set,
    torsion_generating_sets,
    valuation_certificate,
)
from .tower import make_tower

THEOREM_IDS = (
    "ltseries", "fgl", "endo", "log-hom", "valpix", "genlemgen", "wiles",
    "kernel", "FV", "regisolem", "FV3", "basisthm1", "basisthm2", "logval",
    "unitinv", "minval", "genspan", "genval2", "mincor", "ltbasis",
    "example-p3", "example-zetap",
)


@dataclass
class SuiteConfig:
    primes: tuple = (2, 3, 5)
    towers: tuple = ((3, 1, 4), (5, 1, 6), (3, 2, 1), (5, 2, 2), (2, 1, 3))
    series_kind: str = "multiplicative"
    precision: int = 64
    trunc_degree: int = 128
    sample_count: int = 25
    seed: int = 0

    def rng(self, salt: str) -> random.Random:
        return random.Random(f"{self.seed}:{salt}")


def _tower(cfg, spec):
    p, f, e = spec[:3]
    eis = list(spec[3]) if len(spec) > 3 and spec[3] else None
    return make_tower(p, f, e, eis, cfg.precision)


def _ctx(cfg, p):
    return get_context(p, cfg.series_kind, cfg.trunc_degree, cfg.precision)


def _report(theorem, status, field=None, precision=None, **detail):
    out = {"theorem": theorem, "status": status}
    if field is not None:
        out["field"] = field.descriptor() if hasattr(field, "descriptor") else field
    if precision is not None:
        out["precision"] = precision
    if detail:
        out["detail"] = detail
    return out


def _ratio_levels(L, ctx):
    q = ctx.q
    vpi = L.e * ctx.pi.v
    below = [i for i in range(1, vpi // (q - 1) + 1) if i * (q - 1) < vpi]
    at = [vpi // (q - 1)] if vpi % (q - 1) == 0 else []
    above = [vpi // (q - 1) + 1, vpi // (q - 1) + 2]
    return below, at, above


# ---------------------------------------------------------------------------
# individual checks
# ---------------------------------------------------------------------------

def check_ltseries(cfg: SuiteConfig):
    reports = []
    for p in cfg.primes:
        for kind in ("multiplicative", "basic"):
            ctx = get_context(p, kind, cfg.trunc_degree, cfg.precision)
            ok = ctx.lt_series.coeffs[1].eq_at(ctx.pi) \
                and ctx.lt_series.coeffs[p].unit_residue() == 1
            reports.append(_report(
                "ltseries", "consistent" if ok else "violated",
                precision=cfg.precision, p=p, kind=kind))
        # a series without linear term must be rejected
        bad = TruncSeries1.from_ints(p, [0, 0, 1], 8, 32)
        try:
            validate_lt_series(p, bad)
            reports.append(_report("ltseries", "violated", p=p,
                                   negative="X^2 accepted"))
        except NotLubinTate:
            reports.append(_report("ltseries", "consistent", p=p,
                                   negative="X^2 rejected"))
    return reports


def _trivar_assoc_check(ctx, deg=9):
    """Direct trivariate check of associativity through total degree deg."""
    F = ctx.fgl
    prec = F.min_precision()
    zero = PadicScalar.zero(ctx.p, prec)

    def tmul(a, b):
        out = {}
        for ka, va in a.items():
            for kb, vb in b.items():
                k = tuple(x + y for x, y in zip(ka, kb))
                if sum(k) > deg:
                    continue
                t = va * vb
                out[k] = out[k] + t if k in out else t
        return out

    def subst(u, v):
        """F(u, v) for trivariate dicts u, v with no constant term."""
        up = {(0, 0, 0): PadicScalar.one(ctx.p, prec)}
        upow = [up]
        vpow = [up]
        for _ in range(deg):
            upow.append(tmul(upow[-1], u))
            vpow.append(tmul(vpow[-1], v))
        out = {}
        for i in range(deg + 1):
            for j in range(deg + 1 - i):
                c = F.get(i, j)
                if c.u is None:
                    continue
                for k, val in tmul(upow[i], vpow[j]).items():
                    t = val * c
                    out[k] = out[k] + t if k in out else t
        return out

    one = PadicScalar.one(ctx.p, prec)
    X = {(1, 0, 0): one}
    Y = {(0, 1, 0): one}
    Z = {(0, 0, 1): one}
    lhs = subst(subst(X, Y), Z)
    rhs = subst(X, subst(Y, Z))
    keys = set(lhs) | set(rhs)
    for k in keys:
        d = lhs.get(k, zero) - rhs.get(k, zero)
        if d.u is not None:
            return False, k
    return True, None


def check_fgl(cfg: SuiteConfig):
    reports = []
    for p in cfg.primes:
        ctx = _ctx(cfg, p)
        F = ctx.fgl  # construction asserts symmetry, X+Y, integrality, (3.5)
        ok, witness = _trivar_assoc_check(ctx)
        L = _tower(cfg, next(t for t in cfg.towers if t[0] == p))
        rng = cfg.rng(f"fgl:{p}")
        elem_ok = True
        for _ in range(max(3, cfg.sample_count // 5)):
            x = L.random_element(rng, 1)
            y = L.random_element(rng, rng.randrange(1, 4))
            z = L.random_element(rng, rng.randrange(1, 4))
            lhs = eval_fgl(ctx, eval_fgl(ctx, x, y), z)
            rhs = eval_fgl(ctx, x, eval_fgl(ctx, y, z))
            if not (lhs - rhs).is_zero:
                elem_ok = False
            if not (eval_fgl(ctx, x, L.zero()) - x).is_zero:
                elem_ok = False
            if not eval_fgl(ctx, x, f_negate(ctx, x)).is_zero:
                elem_ok = False
        status = "consistent" if (ok and elem_ok) else "violated"
        reports.append(_report("fgl", status, field=L,
                               precision=cfg.precision, p=p, fgl_degree=F.D,
                               assoc_direct_degree=9,
                               assoc_witness=list(witness) if witness else None))
    return reports


def check_endo(cfg: SuiteConfig):
    import ltforge.fastpoly as fastpoly
    from .lubintate import _scaled_ints
    reports = []
    for p in cfg.primes:
        ctx = _ctx(cfg, p)
        ok = True
        one = endo(ctx, 1)
        ok &= all((c - i).u is None for c, i in zip(
            one.coeffs, TruncSeries1.identity(p, ctx.D, 8).coeffs))
        pi_endo = endo(ctx, ctx.pi)
        ok &= all((a - b).u is None
                  for a, b in zip(pi_endo.coeffs, ctx.lt_series.coeffs))
        # [a][b] = [ab] through D in packed arithmetic
        for (a, b) in ((2, 3), (5, -1)):
            ea, eb, eab = endo(ctx, a), endo(ctx, b), endo(ctx, a * b)
            M = min(s.min_precision() for s in (ea, eb, eab)) - 2
            ia, _ = _scaled_ints(ea.coeffs, 0, M, p)
            ib, _ = _scaled_ints(eb.coeffs, 0, M, p)
            iab, _ = _scaled_ints(eab.coeffs, 0, M, p)
            comp = fastpoly.compose_1d(ia, ib, p, M, ctx.D)
            pm = p ** (M - 2)
            ok &= all((x - y) % pm == 0 for x, y in zip(comp, iab))
        reports.append(_report("endo", "consistent" if ok else "violated",
                               precision=cfg.precision, p=p))
    return reports


def check_log_hom(cfg: SuiteConfig, pairs=None):
    reports = []
    specs = [t for t in cfg.towers if t[0] in cfg.primes]
    n_each = max(1, (pairs or cfg.sample_count) // max(1, len(specs)))
    for spec in specs:
        L = _tower(cfg, spec)
        ctx = _ctx(cfg, spec[0])
        rng = cfg.rng(f"log-hom:{spec}")
        bad = 0
        checked = 0
        for _ in range(n_each):
            x = L.random_element(rng, rng.randrange(1, 3))
            y = L.random_element(rng, rng.randrange(1, 4))
            lhs = eval_log(ctx, eval_fgl(ctx, x, y))
            rhs = eval_log(ctx, x) + eval_log(ctx, y)
            d = lhs - rhs
            if d.precision() < cfg.precision:
                raise PrecisionExhausted(
                    f"homomorphism check certified only {d.precision()} digits")
            if not d.val_floor() >= cfg.precision:
                bad += 1
            checked += 1
        reports.append(_report(
            "log-hom", "consistent" if bad == 0 else "violated", field=L,
            precision=cfg.precision, pairs=checked, mismatches=bad))
    return reports


def check_valpix(cfg: SuiteConfig):
    reports = []
    for spec in cfg.towers:
        if spec[0] not in cfg.primes:
            continue
        L = _tower(cfg, spec)
        ctx = _ctx(cfg, spec[0])
        q = ctx.q
        vpi = L.e * ctx.pi.v
        rng = cfg.rng(f"valpix:{spec}")
        bad = []
        for _ in range(cfg.sample_count):
            lvl = rng.randrange(1, 2 * vpi + 3)
            if lvl * (q - 1) == vpi:
                continue  # the statement splits strictly at the boundary
            x = L.random_element(rng, lvl)
            got = eval_lt(ctx, x).valuation()
            want = q * lvl if lvl * (q - 1) < vpi else lvl + vpi
            if got != want:
                bad.append({"level": lvl, "got": got, "want": want})
        reports.append(_report(
            "valpix", "consistent" if not bad else "violated", field=L,
            precision=cfg.precision, mismatches=bad))
    return reports


def check_genlemgen(cfg: SuiteConfig):
    reports = []
    for spec in cfg.towers:
        if spec[0] not in cfg.primes:
            continue
        L = _tower(cfg, spec)
        ctx = _ctx(cfg, spec[0])
        q = ctx.q
        vpi = L.e * ctx.pi.v
        rng = cfg.rng(f"genlemgen:{spec}")
        bad = []
        for _ in range(cfg.sample_count):
            x = L.random_element(rng, rng.randrange(1, 4))
            for n in (1, 2, 3):
                d = eval_iterated_lt(ctx, x, n) - x ** (q ** n)
                floor = d.val_floor()
                if not floor * (q - 1) > vpi:
                    bad.append({"n": n, "floor": floor})
        reports.append(_report(
            "genlemgen", "consistent" if not bad else "violated", field=L,
            precision=cfg.precision, mismatches=bad))
    return reports


def check_limit_quotient(cfg: SuiteConfig):
    """The dual-route guard inside eval_log is the theorem; run it on a
    spread of elements and report the agreements it enforced."""
    reports = []
    for spec in cfg.towers:
        if spec[0] not in cfg.primes:
            continue
        L = _tower(cfg, spec)
        ctx = _ctx(cfg, spec[0])
        rng = cfg.rng(f"wiles:{spec}")
        try:
            for _ in range(cfg.sample_count):
                eval_log(ctx, L.random_element(rng, rng.randrange(1, 5)))
            status = "consistent"
        except InternalCheckFailed:
            status = "violated"
        reports.append(_report("wiles", status, field=L,
                               precision=cfg.precision,
                               samples=cfg.sample_count))
    return reports


def check_kernel(cfg: SuiteConfig, p=None, level=1):
    reports = []
    for prime in ([p] if p else cfg.primes):
        ctx = _ctx(cfg, prime)
        tf = torsion_field(ctx, level, cfg.precision)
        bad = 0
        for pt in tf.torsion_points(ctx):
            if pt.is_zero:
                continue
            if not eval_log(ctx, pt).is_zero:
                bad += 1
        reports.append(_report(
            "kernel", "consistent" if bad == 0 else "violated",
            field=tf.field, precision=cfg.precision, level=level,
            points=ctx.q ** level, nonvanishing=bad))
    return reports


def check_graded_maps(cfg: SuiteConfig, which):
    reports = []
    for spec in cfg.towers:
        if spec[0] not in cfg.primes:
            continue
        L = _tower(cfg, spec)
        ctx = _ctx(cfg, spec[0])
        below, at, above = _ratio_levels(L, ctx)
        reg = regularity_check(L, ctx).is_regular
        if which == "FV":
            levels, expect_iso = below, True
        elif which == "FV3":
            levels, expect_iso = above, True
        else:
            levels, expect_iso = at, reg
        ok = True
        details = []
        for i in levels:
            r = induced_map_check(L, ctx, i)
            good = r["well_defined"] and r["additive"] and r["formula_consistent"]
            if expect_iso:
                good &= r["injective"] and r["surjective"]
            else:
                good &= not r["injective"]
            ok &= good
            details.append({"i": i, "injective": r["injective"],
                            "kernel": r["kernel_classes"]})
        if which == "regisolem" and not levels:
            continue  # ratio not integral: nothing to test on this tower
        reports.append(_report(
            which, "consistent" if ok else "violated", field=L,
            precision=cfg.precision, regular=reg, levels=details))
    # the torsion tower provides the guaranteed non-injective witness
    if which == "regisolem":
        for prime in cfg.primes:
            if prime == 2:
                continue
            ctx = _ctx(cfg, prime)
            tf = torsion_field(ctx, 1, cfg.precision)
            i = (tf.field.e * ctx.pi.v) // (ctx.q - 1)
            r = induced_map_check(tf.field, ctx, i)
            ok = (not r["injective"]) and r["well_defined"] and bool(r["kernel_classes"])
            reports.append(_report(
                "regisolem", "consistent" if ok else "violated",
                field=tf.field, precision=cfg.precision, regular=False,
                levels=[{"i": i, "injective": r["injective"],
                         "kernel": r["kernel_classes"]}]))
    return reports


def check_basisthm1(cfg: SuiteConfig):
    reports = []
    for spec in cfg.towers:
        if spec[0] not in cfg.primes:
            continue
        L = _tower(cfg, spec)
        ctx = _ctx(cfg, spec[0])
        if not regularity_check(L, ctx).is_regular:
            continue
        B = module_basis(L, ctx)
        ok = len(B) == L.degree * ctx.pi.v
        rng = cfg.rng(f"basisthm1:{spec}")
        expansions = 0
        try:
            for _ in range(max(2, cfg.sample_count // 8)):
                x = L.random_element(rng, rng.randrange(1, 3))
                expand_in_generators(x, B, ctx,
                                     target=min(24, cfg.precision))
                expansions += 1
        except StuckLevel:
            ok = False
        reports.append(_report(
            "basisthm1", "consistent" if ok else "violated", field=L,
            precision=cfg.precision, size=len(B), levels=B.levels,
            expansions=expansions))
    return reports


def check_basisthm2(cfg: SuiteConfig):
    reports = []
    for spec in cfg.towers:
        if spec[0] not in cfg.primes:
            continue
        L = _tower(cfg, spec)
        ctx = _ctx(cfg, spec[0])
        if not regularity_check(L, ctx).is_regular:
            continue
        lb = log_image_basis(L, ctx)
        ok = coordinate_matrix_rank(lb) == L.degree
        q = ctx.q
        top = q * (q * L.e * ctx.pi.v // (q - 1))
        w = L.uniformizer()
        nonint = []
        for j in range(1, top + 1):
            for i in range(1, L.f + 1):
                target = eval_log(ctx, L.zeta(i) * w ** j)
                cs = coords_in_span(target, lb)
                if any(c.u is not None and c.v < 0 for c in cs):
                    nonint.append([i, j])
        ok &= not nonint
        reports.append(_report(
            "basisthm2", "consistent" if ok else "violated", field=L,
            precision=cfg.precision, rank=L.degree, swept_levels=top,
            nonintegral=nonint))
    return reports


def check_logval(cfg: SuiteConfig, samples=200):
    reports = []
    for spec in cfg.towers:
        if spec[0] not in cfg.primes:
            continue
        L = _tower(cfg, spec)
        ctx = _ctx(cfg, spec[0])
        if not regularity_check(L, ctx).is_regular:
            continue
        q = ctx.q
        vpi = L.e * ctx.pi.v
        top = max(1, q * vpi // (q - 1))
        rng = cfg.rng(f"logval:{spec}")
        mismatches = []
        for k in range(samples):
            lvl = 1 + (k % top)
            x = L.random_element(rng, lvl)
            cert = valuation_certificate(L, ctx, x)
            if cert.relation != "equality":
                mismatches.append({"level": lvl, "cert": cert.to_json()})
        reports.append(_report(
            "logval", "consistent" if not mismatches else "violated",
            field=L, precision=cfg.precision, samples=samples,
            mismatches=mismatches))
    return reports


def check_unitinv(cfg: SuiteConfig):
    reports = []
    for spec in cfg.towers:
        if spec[0] not in cfg.primes:
            continue
        L = _tower(cfg, spec)
        ctx = _ctx(cfg, spec[0])
        if not regularity_check(L, ctx).is_regular:
            continue
        rng = cfg.rng(f"unitinv:{spec}")
        bad = 0
        for _ in range(cfg.sample_count):
            x = L.random_element(rng, rng.randrange(1, 5))
            u = L.random_unit(rng)
            if eval_log(ctx, u * x).valuation() != eval_log(ctx, x).valuation():
                bad += 1
        reports.append(_report(
            "unitinv", "consistent" if bad == 0 else "violated", field=L,
            precision=cfg.precision, mismatches=bad))
    return reports


def check_minval(cfg: SuiteConfig):
    reports = []
    for spec in cfg.towers:
        if spec[0] not in cfg.primes:
            continue
        L = _tower(cfg, spec)
        ctx = _ctx(cfg, spec[0])
        if not regularity_check(L, ctx).is_regular:
            continue
        try:
            # min_log_valuation cross-checks the formula against both
            # v(log w) and the exhaustive basis sweep internally
            r = min_log_valuation(L, ctx)
            status = "consistent"
        except RatioTooSmall:
            r = {"gamma": None, "min": 1, "method": "whole-ideal"}
            status = "consistent"
        except InternalCheckFailed as ex:
            r = {"error": str(ex)}
            status = "violated"
        reports.append(_report("minval", status, field=L,
                               precision=cfg.precision, **r))
    return reports


def check_genspan(cfg: SuiteConfig):
    reports = []
    for prime in cfg.primes:
        ctx = _ctx(cfg, prime)
        tf = torsion_field(ctx, 1, cfg.precision)
        L = tf.field
        S = spanning_set(L, ctx)
        ok = len(S) == L.degree * ctx.pi.v + L.f
        rng = cfg.rng(f"genspan:{prime}")
        try:
            for _ in range(max(2, cfg.sample_count // 8)):
                x = L.random_element(rng, rng.randrange(1, 3))
                expand_in_generators(x, S, ctx, target=min(24, cfg.precision))
        except StuckLevel:
            ok = False
        # minimality evidence: dropping the extra top level must stick
        top = max(S.levels)
        keep = [k for k, j in enumerate(S.levels) if j != top]
        dropped = GeneratingSet("spanning",
                                [S.elements[k] for k in keep],
                                S.claimed_rank,
                                [S.levels[k] for k in keep],
                                [S.labels[k] for k in keep])
        stuck = False
        try:
            expand_in_generators(L.uniformizer() ** top, dropped, ctx,
                                 target=min(24, cfg.precision))
        except StuckLevel:
            stuck = True
        ok &= stuck
        reports.append(_report(
            "genspan", "consistent" if ok else "violated", field=L,
            precision=cfg.precision, size=len(S),
            top_level_needed=stuck))
    return reports


def check_genval2(cfg: SuiteConfig):
    reports = []
    for prime in cfg.primes:
        ctx = _ctx(cfg, prime)
        for level in (1, 2) if prime != 5 else (1,):
            tf = torsion_field(ctx, level, cfg.precision)
            L = tf.field
            rng = cfg.rng(f"genval2:{prime}:{level}")
            bad = []
            for _ in range(cfg.sample_count):
                x = L.random_element(rng, rng.randrange(1, 5))
                cert = valuation_certificate(L, ctx, x)
                if cert.relation == "violated":
                    bad.append(cert.to_json())
            # torsion points make the bound strict
            strict = valuation_certificate(L, ctx, tf.lam)
            if strict.relation == "violated":
                bad.append(strict.to_json())
            reports.append(_report(
                "genval2", "consistent" if not bad else "violated",
                field=L, precision=cfg.precision, level=level,
                violations=bad))
    return reports


def check_mincor(cfg: SuiteConfig, levels=((2, 2), (3, 1), (3, 2), (5, 1))):
    reports = []
    for prime, n in levels:
        if prime not in cfg.primes:
            continue
        ctx = _ctx(cfg, prime)
        gens, logs, tf = torsion_generating_sets(ctx, n, cfg.precision)
        q = ctx.q
        ok = len(gens) == q ** n - q ** (n - 1) + 1
        rng = cfg.rng(f"mincor:{prime}:{n}")
        try:
            for _ in range(2):
                x = tf.field.random_element(rng, rng.randrange(1, 3))
                expand_in_generators(x, gens, ctx,
                                     target=min(20, cfg.precision))
        except StuckLevel:
            ok = False
        reports.append(_report(
            "mincor", "consistent" if ok else "violated", field=tf.field,
            precision=cfg.precision, level=n, size=len(gens)))
    return reports


def check_ltbasis(cfg: SuiteConfig, levels=((3, 1), (5, 1), (2, 2), (3, 2))):
    reports = []
    for prime, n in levels:
        if prime not in cfg.primes:
            continue
        ctx = _ctx(cfg, prime)
        gens, logs, tf = torsion_generating_sets(ctx, n, cfg.precision)
        q = ctx.q
        ok = len(logs) == q ** n - q ** (n - 1)
        ok &= coordinate_matrix_rank(logs) == len(logs)
        lam = tf.lam
        nonint = []
        cur = tf.field.one()
        for j in range(1, q ** n + q + 1):
            cur = cur * lam
            target = eval_log(ctx, cur)
            cs = coords_in_span(target, logs)
            if any(c.u is not None and c.v < 0 for c in cs):
                nonint.append(j)
        ok &= not nonint
        reports.append(_report(
            "ltbasis", "consistent" if ok else "violated", field=tf.field,
            precision=cfg.precision, level=n, size=len(logs),
            swept_powers=q ** n + q, nonintegral=nonint))
    return reports


def check_example_p3(cfg: SuiteConfig):
    ctx = get_context(3, "multiplicative", cfg.trunc_degree, cfg.precision)
    L = make_tower(3, 1, 4, None, cfg.precision)
    reg = regularity_check(L, ctx)
    mv = min_log_valuation(L, ctx)
    w = L.uniformizer()
    explicit = [w ** 2, w.invert() - w, w ** 3, w ** 4]
    lb = log_image_basis(L, ctx)
    same = lattices_equal(lb, explicit)
    ok = reg.is_regular and mv["gamma"] == 1 and mv["min"] == -1 \
        and len(lb) == 4 and same
    return [_report("example-p3", "consistent" if ok else "violated",
                    field=L, precision=cfg.precision, regular=reg.is_regular,
                    gamma=mv["gamma"], min=mv["min"],
                    explicit_lattice_match=same)]


def check_example_zetap(cfg: SuiteConfig):
    reports = []
    for prime in cfg.primes:
        if prime == 2:
            continue
        ctx = _ctx(cfg, prime)
        tf = torsion_field(ctx, 1, cfg.precision)
        L = tf.field
        lam = tf.lam
        mv = min_log_valuation(L, ctx)
        ok = mv["min"] == 2
        congruences = []
        cur = lam
        for j in range(2, prime + 1):
            cur = cur * lam
            d = eval_log(ctx, cur) - cur
            good = d.val_floor() >= j + 1
            congruences.append({"j": j, "holds": good})
            ok &= good
        reports.append(_report(
            "example-zetap", "consistent" if ok else "violated", field=L,
            precision=cfg.precision, min=mv["min"], congruences=congruences))
    return reports


# ---------------------------------------------------------------------------
# dispatch
# ---------------------------------------------------------------------------

_CHECKS = {
    "ltseries": check_ltseries,
    "fgl": check_fgl,
    "endo": check_endo,
    "log-hom": check_log_hom,
    "valpix": check_valpix,
    "genlemgen": check_genlemgen,
    "wiles": check_limit_quotient,
    "kernel": check_kernel,
    "FV": lambda cfg: check_graded_maps(cfg, "FV"),
    "regisolem": lambda cfg: check_graded_maps(cfg, "regisolem"),
    "FV3": lambda cfg: check_graded_maps(cfg, "FV3"),
    "basisthm1": check_basisthm1,
    "basisthm2": check_basisthm2,
    "logval": check_logval,
    "unitinv": check_unitinv,
    "minval": check_minval,
    "genspan": check_genspan,
    "genval2": check_genval2,
    "mincor": check_mincor,
    "ltbasis": check_ltbasis,
    "example-p3": check_example_p3,
    "example-zetap": check_example_zetap,
}


def run_theorem(theorem: str, cfg: SuiteConfig, **kwargs):
    if theorem not in _CHECKS:
        raise KeyError(f"unknown theorem id {theorem!r}")
    return _CHECKS[theorem](cfg, **kwargs) if kwargs else _CHECKS[theorem](cfg)


def run_all(cfg: SuiteConfig):
    reports = []
    for tid in THEOREM_IDS:
        reports.extend(run_theorem(tid, cfg))
    return reports
