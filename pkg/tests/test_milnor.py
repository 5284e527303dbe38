import random

import pytest

from mwcycle.errors import MWError
from mwcycle.fields import GF
from mwcycle.funcfield import FF
from mwcycle.milnor import MilnorSymbolSum as MS, km_equal, km_norm, km_normal_form, tame_symbol
from mwcycle.quadforms import finite_ext, place_ext

F3 = GF(3)
F5 = GF(5)
K = FF(F3, "t")


def test_tame_symbol_examples():
    t = K.x
    pt = K.place(K.poly([0, 1]))
    # del_(t){t, u} = {ubar} for a unit u
    r = tame_symbol(pt, MS.symbol(K, (t, K.coerce(2))))
    assert km_normal_form(r).data == ("unit", 2)
    # units go to zero
    assert tame_symbol(pt, MS.symbol(K, (K.coerce(2), t + 1))).is_zero_formal()
    # del_(t){t} = 1 in K^M_0 = Z
    assert km_normal_form(tame_symbol(pt, MS.symbol(K, (t,)))).data == 1
    with pytest.raises(MWError):
        tame_symbol(pt, MS.integer(K, 1))


def test_steinberg_and_antisymmetry():
    rng = random.Random(1)
    for _ in range(30):
        a = K.random_element(rng, nonzero=True)
        if not a or a == K.one:
            continue
        assert km_normal_form(MS.symbol(K, (a, K.one - a))).is_zero()
    # {a,-a} = 0 and {t,t} = {t,-1}
    t = K.x
    assert km_normal_form(MS.symbol(K, (t, -t))).is_zero()
    assert km_equal(MS.symbol(K, (t, t)), MS.symbol(K, (t, K.coerce(-1))))


def test_degree2_finite_field_vanishes():
    rng = random.Random(2)
    for _ in range(25):
        a, b = F5.random_unit(rng), F5.random_unit(rng)
        assert km_normal_form(MS.symbol(F5, (a, b))).is_zero()


def test_normal_form_homomorphism():
    rng = random.Random(3)
    for _ in range(15):
        def rnd():
            a = K.random_element(rng, nonzero=True)
            b = K.random_element(rng, nonzero=True)
            return MS.symbol(K, (a, b)) if a and b else None

        x, y = rnd(), rnd()
        if x is None or y is None:
            continue
        assert km_normal_form(x + y) == km_normal_form((x + y) + (y - y))
        # idempotence through a formally different representative
        assert km_equal(x + y - y, x)


def test_reciprocity_with_norms():
    rng = random.Random(4)
    for _ in range(15):
        a = K.random_element(rng, nonzero=True)
        b = K.random_element(rng, nonzero=True)
        if not a or not b:
            continue
        s = MS.symbol(K, (a, b))
        places = set(K.places_dividing(a)) | set(K.places_dividing(b))
        places.add(K.place_inf())
        acc = F3.one
        for pl in places:
            nf = km_normal_form(tame_symbol(pl, s))
            if nf.data[1] is None:
                continue
            ext = place_ext(pl)
            acc = acc * ext.norm(pl.res_field.from_int(nf.data[1]))
        assert acc == F3.one


def test_km_norm():
    F9 = GF(3, 2)
    ext = finite_ext(F3, F9)
    rng = random.Random(5)
    for _ in range(10):
        x = F9.random_unit(rng)
        nm = km_norm(ext, MS.symbol(F9, (x,)))
        assert km_normal_form(nm).data == ("unit", None if ext.norm(x) == F3.one else ext.norm(x).as_int())
    assert km_norm(ext, MS.integer(F9, 1)).terms == {(): 2}
    # degree >= 2 over finite fields: zero
    a, b = F9.from_int(2), F9.from_int(5)
    assert km_norm(ext, MS.symbol(F9, (a, b))).is_zero_formal()


def test_degree3_catalog_axiom_sanity():
    """One-time brute-force-ish check at q=3: degree-3 normal forms vanish."""
    rng = random.Random(6)
    for _ in range(10):
        es = []
        while len(es) < 3:
            e = K.random_element(rng, nonzero=True)
            if e:
                es.append(e)
        assert km_normal_form(MS.symbol(K, tuple(es))).is_zero()
