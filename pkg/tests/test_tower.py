import json
import random
from fractions import Fraction

import pytest

from ltforge import (
    BadPrime,
    FieldElement,
    NotEisenstein,
    NotIrreducible,
    PrecisionExhausted,
    WrongLevel,
    make_tower,
)


def test_make_tower_quartic_ramified():
    L = make_tower(3, 1, 4, [-3, 0, 0, 0, 1], N=40)
    assert L.degree == 4
    assert L.from_int(3).valuation() == 4  # v_L(p) = e


def test_make_tower_identity():
    Q5 = make_tower(5, 1, 1, [-5, 1], N=40)
    assert Q5.uniformizer().valuation() == 1
    assert Q5.from_int(5).valuation() == 1


def test_make_tower_unramified_quadratic():
    U = make_tower(2, 2, 1, None, N=40, unram_coeffs=[1, 1, 1])
    # residue field has exactly 4 elements: enumerate residues of units+0
    seen = set()
    for a in range(2):
        for b in range(2):
            x = U.from_int(a) + U.zeta(2).int_mul(b)
            if x.is_zero:
                seen.add((0, 0))
            elif x.valuation() == 0:
                seen.add(x.residue_decompose(0))
    assert len(seen | {(0, 0)}) == 4
    # the Teichmueller generator satisfies z^(q^f) = z, here z^4 = z
    z = U.zeta(2)
    assert (z ** 4 - z).is_zero


def test_make_tower_errors():
    with pytest.raises(BadPrime):
        make_tower(6, 1, 2, None, 20)
    with pytest.raises(NotEisenstein):
        make_tower(3, 1, 2, [-1, 0, 1], 20)  # constant term a unit
    with pytest.raises(NotEisenstein):
        make_tower(3, 1, 2, [-9, 0, 1], 20)  # valuation 2, not exactly 1
    with pytest.raises(NotIrreducible):
        make_tower(3, 2, 1, None, 20, unram_coeffs=[2, 0, 1])  # X^2-2=(X-1)(X+1) mod 3


def test_valuation_examples():
    L = make_tower(3, 1, 4, None, N=40)
    w = L.uniformizer()
    assert L.from_int(3).valuation() == 4
    assert (w + L.from_int(3)).valuation() == 1
    with pytest.raises(PrecisionExhausted):
        (w ** 4 - L.from_int(3)).valuation()


def test_residue_decompose_examples():
    M = make_tower(5, 2, 4, None, N=40)
    z, w = M.zeta(2), M.uniformizer()
    x = z.int_mul(2) * w ** 3
    assert x.residue_decompose(3) == (0, 2)
    y = w ** 3 + w ** 5
    assert y.residue_decompose(3) == (1, 0)
    t = (M.one() + z) * w ** 2
    assert t.residue_decompose(2) == (1, 1)
    with pytest.raises(WrongLevel):
        x.residue_decompose(2)


def test_residue_decompose_lift_roundtrip():
    M = make_tower(3, 2, 2, None, N=40)
    rng = random.Random(5)
    for lvl in (0, 1, 2, 5):
        x = M.random_element(rng, lvl) if lvl else M.random_unit(rng)
        coords = x.residue_decompose(lvl)
        back = M.element_from_residue(coords, lvl)
        assert (x - back).val_floor() >= lvl + 1


def test_valuation_laws_random():
    M = make_tower(3, 2, 2, None, N=40)
    rng = random.Random(7)
    for _ in range(30):
        x = M.random_element(rng, rng.randrange(0, 4) or 1)
        y = M.random_element(rng, rng.randrange(1, 5))
        assert (x * y).valuation() == x.valuation() + y.valuation()
        s = x + y
        if not s.is_zero:
            assert s.valuation() >= min(x.valuation(), y.valuation())
            if x.valuation() != y.valuation():
                assert s.valuation() == min(x.valuation(), y.valuation())


def test_invert_contract():
    L = make_tower(3, 1, 4, None, N=40)
    rng = random.Random(9)
    for lvl in (0, 1, 3):
        x = L.random_element(rng, lvl) if lvl else L.random_unit(rng)
        xi = x.invert()
        prod = x * xi - L.one()
        # certified at least N - 2 v(x) - small bookkeeping slack
        assert prod.val_floor() >= x.precision() - 2 * lvl * L.e - 8
        assert prod.is_zero


def test_division_and_uniformizer_shift():
    L = make_tower(5, 1, 3, None, N=40)
    w = L.uniformizer()
    x = L.from_int(35) + w ** 2
    assert (x / x - L.one()).is_zero
    down = (w ** 5).div_uniformizer()
    assert down.valuation() == 4


def test_norm_determinant_oracle():
    # v_p(Norm(x)) = f * v_L(x), with the norm as a multiplication matrix
    M = make_tower(3, 2, 2, None, N=30)
    rng = random.Random(3)
    basis = M.basis_elements()

    def det(m):
        m = [row[:] for row in m]
        n = len(m)
        d = Fraction(1)
        for c in range(n):
            piv = next(r for r in range(c, n) if m[r][c] != 0)
            if piv != c:
                m[c], m[piv] = m[piv], m[c]
                d = -d
            d *= m[c][c]
            inv = 1 / m[c][c]
            for r in range(c + 1, n):
                fac = m[r][c] * inv
                if fac:
                    m[r] = [a - fac * b for a, b in zip(m[r], m[c])]
        return d

    from ltforge.padic import vp
    for lvl in (1, 2, 3):
        x = M.random_element(rng, lvl)
        cols = [(x * b).flat_coords() for b in basis]
        mat = [[Fraction(cols[c][r].lift()) for c in range(4)] for r in range(4)]
        dv = det(mat)
        assert vp(dv.numerator, 3) - vp(dv.denominator, 3) == M.f * lvl


def test_element_json_bit_exact():
    M = make_tower(3, 2, 2, None, N=40)
    rng = random.Random(13)
    x = M.random_element(rng, 1) + M.zeta(2).scalar_mul(
        M.scalar(1).shift(-2))
    blob = json.dumps(x.to_json(), sort_keys=True)
    y = FieldElement.from_json(json.loads(blob))
    assert (x - y).is_zero
    assert json.dumps(y.to_json(), sort_keys=True) == blob


def test_precision_never_inflated():
    L = make_tower(3, 1, 2, None, N=20)
    w = L.uniformizer()
    x = w.truncate(5)
    assert (x * w).precision() <= 5 + 1
    assert (x + w).precision() <= 5
