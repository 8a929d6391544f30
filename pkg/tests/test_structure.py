import random

import pytest

from ltforge import (
    GeneratingSet,
    NotInSpan,
    NotRegular,
    RatioTooSmall,
    RegularFieldGiven,
    StuckLevel,
    coordinate_matrix_rank,
    coords_in_span,
    eval_fgl,
    eval_log,
    expand_in_generators,
    induced_map_check,
    lattices_equal,
    log_image_basis,
    make_tower,
    min_log_valuation,
    module_basis,
    regularity_check,
    spanning_set,
    torsion_field,
    torsion_generating_sets,
    valuation_certificate,
)


def test_regularity_known_towers(ctx3, ctx5, L34, L56):
    rep = regularity_check(L34, ctx3)
    assert rep.is_regular and rep.ratio_integral
    rep5 = regularity_check(L56, ctx5)
    assert rep5.is_regular and not rep5.ratio_integral  # 1 < 6/4 < 2


def test_regularity_torsion_tower(ctx3):
    t = torsion_field(ctx3, 1)
    rep = regularity_check(t.field, ctx3)
    assert not rep.is_regular and rep.witness is not None


def test_regularity_uniformizer_independence(ctx3, L34):
    # the witness criterion does not depend on which prime defines epsilon
    alt = L34.uniformizer().int_mul(2)  # another uniformiser: 2w
    a = regularity_check(L34, ctx3)
    b = regularity_check(L34, ctx3, uniformizer=alt)
    assert a.is_regular == b.is_regular


def test_q2_never_regular(ctx2, Q2):
    assert not regularity_check(Q2, ctx2).is_regular


def test_induced_maps_regular_tower(ctx3, L34):
    # ratio = 4/2 = 2: iso below, iso at (regular), iso above with shift
    r1 = induced_map_check(L34, ctx3, 1)
    assert r1["regime"] == "below" and r1["injective"] and r1["surjective"]
    assert r1["target"] == 3
    r2 = induced_map_check(L34, ctx3, 2)
    assert r2["regime"] == "at" and r2["injective"]
    r3 = induced_map_check(L34, ctx3, 3)
    assert r3["regime"] == "above" and r3["injective"] and r3["target"] == 7
    assert all(r["well_defined"] and r["additive"] for r in (r1, r2, r3))


def test_induced_map_kernel_on_torsion_tower(ctx3):
    t = torsion_field(ctx3, 1)
    r = induced_map_check(t.field, ctx3, 1)
    assert r["regime"] == "at"
    assert not r["injective"] and not r["surjective"]
    assert r["kernel_classes"]


def test_module_basis_levels(ctx3, L34, Q3):
    B = module_basis(L34, ctx3)
    assert B.levels == [1, 2, 4, 5] and len(B) == 4
    B1 = module_basis(Q3, ctx3)
    assert B1.levels == [1] and len(B1) == 1


def test_module_basis_f2_doubles(ctx3):
    M = make_tower(3, 2, 1, None, 64)
    assert regularity_check(M, ctx3).is_regular
    B = module_basis(M, ctx3)
    assert len(B) == 2 == M.degree


def test_module_basis_requires_regular(ctx3):
    t = torsion_field(ctx3, 1)
    with pytest.raises(NotRegular):
        module_basis(t.field, ctx3)
    with pytest.raises(RegularFieldGiven):
        spanning_set(make_tower(3, 1, 4, None, 64), ctx3)


def test_log_basis_explicit_p3_lattice(ctx3, L34):
    lb = log_image_basis(L34, ctx3)
    w = L34.uniformizer()
    explicit = [w ** 2, w.invert() - w, w ** 3, w ** 4]
    assert lattices_equal(lb, explicit)
    assert coordinate_matrix_rank(lb) == 4


def test_log_basis_explicit_p5_lattice(ctx5, L56):
    lb = log_image_basis(L56, ctx5)
    assert len(lb) == 6
    w = L56.uniformizer()
    explicit = [w + w.invert()] + [w ** j for j in range(2, 7)]
    assert lattices_equal(lb, explicit)


def test_coords_examples(ctx3, L34):
    lb = log_image_basis(L34, ctx3)
    g = lb.elements
    cs = coords_in_span(g[0], g)
    assert cs[0].lift() == 1 and all(c.u is None for c in cs[1:])
    target = g[0].int_mul(3) + g[1]
    cs = coords_in_span(target, g)
    assert cs[0].lift() == 3 and cs[1].lift() == 1
    # log of a high power stays integral over the basis
    deep = eval_log(ctx3, L34.zeta(1) * L34.uniformizer() ** 9)
    cs = coords_in_span(deep, g)
    assert all(c.u is None or c.v >= 0 for c in cs)


def test_coords_not_in_span(ctx3, L34):
    lb = log_image_basis(L34, ctx3)
    short = lb.elements[:3]
    with pytest.raises(NotInSpan):
        coords_in_span(lb.elements[3], short)


def test_valuation_certificates(ctx3, L34):
    w = L34.uniformizer()
    c = valuation_certificate(L34, ctx3, w)
    assert (c.ell, c.predicted, c.observed, c.relation) == (1, -1, -1, "equality")
    x = w ** 3  # inside the convergence disc
    c = valuation_certificate(L34, ctx3, x)
    assert c.ell == 0 and c.predicted == 3 and c.relation == "equality"
    t = torsion_field(ctx3, 1)
    c = valuation_certificate(t.field, ctx3, t.lam)
    assert c.observed is None and c.relation == "at-least"


def test_min_valuation_known_values(ctx3, ctx5, L34, L56):
    assert min_log_valuation(L34, ctx3) == \
        {"gamma": 1, "min": -1, "method": "formula"}
    assert min_log_valuation(L56, ctx5) == \
        {"gamma": 1, "min": -1, "method": "formula"}


def test_min_valuation_sweep_on_torsion(ctx3, ctx5):
    for ctx in (ctx3, ctx5):
        t = torsion_field(ctx, 1)
        assert min_log_valuation(t.field, ctx)["min"] == 2


def test_min_valuation_ratio_too_small(ctx5, Q5):
    with pytest.raises(RatioTooSmall):
        min_log_valuation(Q5, ctx5)


def test_min_valuation_q2(ctx2, Q2):
    assert min_log_valuation(Q2, ctx2)["min"] == 2  # log(1+2Z_2) = 4Z_2


def test_torsion_sets_sizes(ctx3):
    gens, logs, tf = torsion_generating_sets(ctx3, 1)
    assert len(gens) == 3 and gens.levels == [1, 2, 3]
    assert len(logs) == 2 and logs.levels == [2, 3]


def test_expand_single_generator(ctx3, L34):
    B = module_basis(L34, ctx3)
    rep = expand_in_generators(B.elements[0], B, ctx3, target=24)
    digits = rep["digits"]
    assert digits[0].lift() == 1
    assert all(d.u is None for d in digits[1:])


def test_expand_f_sum_of_two(ctx3, L34):
    B = module_basis(L34, ctx3)
    x = eval_fgl(ctx3, B.elements[0], B.elements[1])
    rep = expand_in_generators(x, B, ctx3, target=24)
    digits = rep["digits"]
    assert digits[0].lift() == 1 and digits[1].lift() == 1
    assert all(d.u is None for d in digits[2:])


def test_expand_random_torsion_gens(ctx3):
    gens, _, tf = torsion_generating_sets(ctx3, 1, N=48)
    rng = random.Random(21)
    x = tf.field.random_element(rng, 1)
    rep = expand_in_generators(x, gens, ctx3, target=30, verify=True)
    assert rep["verified"]


def test_expand_stuck_without_top_level(ctx3):
    t = torsion_field(ctx3, 1)
    S = spanning_set(t.field, ctx3)
    top = max(S.levels)
    keep = [k for k, j in enumerate(S.levels) if j != top]
    dropped = GeneratingSet("spanning", [S.elements[k] for k in keep],
                            S.claimed_rank, [S.levels[k] for k in keep],
                            [S.labels[k] for k in keep])
    with pytest.raises(StuckLevel):
        expand_in_generators(t.field.uniformizer() ** top, dropped, ctx3,
                             target=24)


def test_unit_invariance(ctx3, L34):
    rng = random.Random(22)
    for _ in range(8):
        x = L34.random_element(rng, rng.randrange(1, 6))
        u = L34.random_unit(rng)
        assert eval_log(ctx3, u * x).valuation() == \
            eval_log(ctx3, x).valuation()


def test_log_injective_on_regular_samples(ctx3, L34):
    rng = random.Random(23)
    pts = [L34.random_element(rng, rng.randrange(1, 4)) for _ in range(8)]
    logs = [eval_log(ctx3, x) for x in pts]
    for i in range(len(pts)):
        for j in range(i + 1, len(pts)):
            if not (pts[i] - pts[j]).is_zero:
                assert not (logs[i] - logs[j]).is_zero


def test_rank_and_freeness_checks(ctx3, L34):
    # rank of the log-image lattice equals [L:K]; the coordinate matrix
    # being invertible certifies freeness at the testable level
    lb = log_image_basis(L34, ctx3)
    assert len(lb) == L34.degree
    assert coordinate_matrix_rank(lb) == L34.degree


def test_min_valuation_is_series_independent(ctx3, ctx3_basic, L34):
    # the minimum depends only on the tower, not on which series backs it
    assert min_log_valuation(L34, ctx3) == min_log_valuation(L34, ctx3_basic)


def test_min_valuation_cube_root_of_two(ctx2):
    # Q_2(2^(1/3)) is never 2-regular, yet the sweep finds the known -2
    L = make_tower(2, 1, 3, None, 64)
    assert not regularity_check(L, ctx2).is_regular
    assert min_log_valuation(L, ctx2)["min"] == -2
