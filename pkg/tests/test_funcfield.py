import random

import pytest

from mwcycle.errors import MWError
from mwcycle.fields import GF, Poly
from mwcycle.funcfield import FF, constant_extension, crt_uniformizer, power_map, strong_approx_lift


F3 = GF(3)
K = FF(F3, "t")


def test_valuation_and_residue_examples():
    t = K.x
    pt = K.place(K.poly([0, 1]))
    v, r = pt.valuation_and_residue(t * t * (t + 1))
    assert (v, r) == (2, F3.zero)
    pinf = K.place_inf()
    assert pinf.valuation_and_residue((t + 1) / t) == (0, F3.one)
    pt1 = K.place(K.poly([-1, 1]))
    assert pt1.valuation_and_residue(t) == (0, F3.one)
    with pytest.raises(MWError):
        pt.val(K.zero)
    # negative valuation: residue is undefined (None)
    v, r = pt.valuation_and_residue(K.one / t)
    assert v == -1 and r is None


def test_valuation_additive_and_min():
    rng = random.Random(1)
    pt = K.place(K.poly([1, 1]))
    for _ in range(40):
        a = K.random_element(rng, nonzero=True)
        b = K.random_element(rng, nonzero=True)
        if not a or not b:
            continue
        assert pt.val(a * b) == pt.val(a) + pt.val(b)
        if a + b:
            assert pt.val(a + b) >= min(pt.val(a), pt.val(b))


def test_degree_formula():
    rng = random.Random(2)
    for _ in range(30):
        r = K.random_element(rng, nonzero=True)
        if not r:
            continue
        assert sum(m * pl.degree for pl, m in K.places_dividing(r).items()) == 0


def test_crt_uniformizer_examples():
    pt = K.place(K.poly([0, 1]))
    pt1 = K.place(K.poly([-1, 1]))
    pi = crt_uniformizer([pt, pt1], 0)
    assert pt.val(pi) == 1
    assert pt1.res_unit(pi) == -F3.one
    assert crt_uniformizer([pt], 0) == K.coerce(pt.fpoly)
    Ks = FF(F3, "s")
    ps = Ks.place(Ks.poly([0, 1]))
    ps1 = Ks.place(Ks.poly([-1, 1]))
    pi2 = crt_uniformizer([ps, ps1], 0)
    assert ps.val(pi2) == 1 and ps1.res_unit(pi2) == -F3.one
    with pytest.raises(MWError):
        crt_uniformizer([pt, pt], 0)


def test_crt_uniformizer_with_infinity():
    pt = K.place(K.poly([0, 1]))
    pinf = K.place_inf()
    pi = crt_uniformizer([pt, pinf], 0)
    assert pt.val(pi) == 1
    assert pinf.res_unit(pi) == -F3.one
    pi2 = crt_uniformizer([pinf, pt], 0)
    assert pinf.val(pi2) == 1
    assert pt.res_unit(pi2) == -F3.one


def test_residue_field_presentation():
    P = K.place(K.poly([1, 0, 1]))  # t^2 + 1
    assert P.res_field.order == 9
    th = P.t_image
    assert th * th + P.res_field.one == P.res_field.zero
    for v in range(1, 9):
        xb = P.res_field.from_int(v)
        assert P.res_unit(P.lift_residue(xb)) == xb
    # norm/trace land in the constant field and match conjugate products
    x = P.res_field.from_int(5)
    assert P.embed_base(P.norm_to_base(x)) == x * x**3
    assert P.embed_base(P.trace_to_base(x)) == x + x**3


def test_strong_approx():
    P = K.place(K.poly([1, 0, 1]))
    pt = K.place(K.poly([0, 1]))
    pt1 = K.place(K.poly([-1, 1]))
    xb = P.res_field.from_int(7)
    u = strong_approx_lift(P, xb, [pt, pt1])
    assert P.val(u) == 0 and P.res_unit(u) == xb
    assert pt.res_unit(u) == F3.one and pt1.res_unit(u) == F3.one


def test_constant_extension_and_power_map():
    F9 = GF(3, 2)
    emb = constant_extension(K, F9)
    t = K.x
    g = (t + 1) / (t - 1)
    img = emb(g)
    assert img.ff.base is F9
    pm = power_map(K, 2)
    assert pm(t + 1) == t * t + 1
    with pytest.raises(MWError):
        power_map(K, 3)  # wildly ramified at p = 3
