import random

import pytest

from mwcycle.errors import MWError
from mwcycle.fields import GF
from mwcycle.funcfield import FF
from mwcycle.mwk import (
    MWElement as MW,
    canonicalize,
    epsilon_integer,
    ff_const_ext,
    mw_equal,
    mw_is_zero,
    mw_residue,
    mw_specialization,
    mw_transfer,
    r5_construct,
    realize,
)
from mwcycle.quadforms import finite_ext
from mwcycle.twists import GradedLine, ONE, TwistIso, normal_line, trivial_line
from mwcycle.cyclemod import random_element

from oracles import MWLattice

F3 = GF(3)
F5 = GF(5)
K = FF(F3, "t")


def test_ring_relation_examples():
    assert mw_is_zero(MW.symbol(K, (K.one,)))
    assert mw_is_zero(MW.eta(F3) * MW.hyperbolic(F3))
    assert mw_equal(MW.epsilon(F3) * MW.epsilon(F3), MW.one(F3))
    assert mw_equal(epsilon_integer(F3, 2), MW.hyperbolic(F3))
    assert mw_equal(epsilon_integer(F3, 1), MW.one(F3))
    assert mw_is_zero(epsilon_integer(F3, 0))
    with pytest.raises(MWError):
        MW(F3, trivial_line(0), {(0, (F3.one,)): 1})  # degree/grade mismatch


def test_ab_relation_random():
    rng = random.Random(1)
    for F in (F5, K):
        for _ in range(60):
            a = F.random_unit(rng) if hasattr(F, "order") else F.random_element(rng, nonzero=True)
            b = F.random_unit(rng) if hasattr(F, "order") else F.random_element(rng, nonzero=True)
            if not a or not b:
                continue
            lhs = MW.symbol(F, (a * b,))
            rhs = MW.symbol(F, (a,)) + MW.symbol(F, (b,)) + MW.eta(F) * MW.symbol(F, (a, b))
            assert mw_equal(lhs, rhs.with_line(lhs.line))


def test_steinberg_and_eps_commutation():
    rng = random.Random(2)
    for _ in range(25):
        a = K.random_element(rng, nonzero=True)
        b = K.random_element(rng, nonzero=True)
        if not a or not b or a == K.one:
            continue
        assert mw_is_zero(MW.symbol(K, (a, K.one - a))) or a == K.one
        lhs = MW.symbol(K, (a, b))
        rhs = MW.epsilon(K) * MW.symbol(K, (b, a))
        assert mw_equal(lhs, rhs.with_line(lhs.line))


def test_residue_normalization():
    """del^pi([-pi][u...]) = [u...]; units-only go to zero; eta-linear."""
    t = K.x
    pt = K.place(K.poly([0, 1]))
    u1, u2 = t + 1, t - 1
    r = mw_residue(MW.symbol(K, (-t, u1, u2)), pt, t, "tbar")
    expect = MW(F3, r.line, {(0, (F3.one, F3.from_int(2))): 1})
    assert mw_equal(r, expect)
    assert mw_residue(MW.symbol(K, (u1, u2)), pt, t).is_zero_formal()
    x = MW.eta(K) * MW.symbol(K, (-t, u1))
    r2 = mw_residue(x, pt, t, "tbar")
    assert list(r2.terms) == [(1, (F3.one,))]
    # del([t]) = <-1> and del([-t]) = 1 in our normalization
    r3 = mw_residue(MW.symbol(K, (t,)), pt, t, "tbar")
    assert mw_equal(r3.with_line(trivial_line(0)), MW.gw_unit(F3, -F3.one))
    r4 = mw_residue(MW.symbol(K, (-t,)), pt, t, "tbar")
    assert mw_equal(r4.with_line(trivial_line(0)), MW.one(F3))
    with pytest.raises(MWError):
        mw_residue(MW.symbol(K, (t,)), pt, t * t)


def test_specialization():
    t = K.x
    pt = K.place(K.poly([0, 1]))
    # s^pi_v of a lifted constant is the constant (R3d shape)
    s = mw_specialization(MW.symbol(K, (t - 1,)), pt, t)
    assert mw_equal(s, MW.symbol(F3, (-F3.one,)))
    one = MW.one(K)
    assert mw_equal(mw_specialization(one, pt, t), MW.one(F3))
    # s(eta x) = eta s(x)
    rng = random.Random(3)
    for _ in range(10):
        x = random_element(K, 1, rng)
        lhs = mw_specialization(MW.eta(K) * x, pt, t)
        rhs = MW.eta(F3) * mw_specialization(x, pt, t)
        assert mw_equal(lhs, rhs.with_line(lhs.line))


def test_uniformizer_change_transport():
    """del^{u pi}(x) = <ubar> del^{pi}(x) after identifying twists."""
    rng = random.Random(4)
    t = K.x
    pt = K.place(K.poly([0, 1]))
    for _ in range(15):
        x = random_element(K, rng.randrange(0, 3), rng)
        u = K.coerce(2)
        r1 = mw_residue(x, pt, t, "tbar")
        r2 = mw_residue(x, pt, u * t, "pibar")
        moved = r2.rebase(TwistIso(r2.line, r1.line, pt.res_unit(u)))
        want = MW.gw_unit(F3, pt.res_unit(u)).gamma(r1.with_line(trivial_line(r1.line.grade))).with_line(r1.line)
        assert mw_equal(moved, want)


def test_canonical_idempotent_and_zero():
    rng = random.Random(5)
    for n in (-2, -1, 0, 1, 2):
        for _ in range(10):
            x = random_element(K, n, rng)
            c1 = canonicalize(x, check=False)
            y = realize(c1)
            assert canonicalize(y, check=False) == c1
            assert mw_equal(x, y.with_line(x.line))


def test_degree_bound_catalog():
    rng = random.Random(6)
    for _ in range(10):
        es = []
        while len(es) < 3:
            e = K.random_element(rng, nonzero=True)
            if e:
                es.append(e)
        assert mw_is_zero(MW.symbol(K, tuple(es)))


def test_oracle_rewriting_closure():
    """Canonical equality agrees with the presentation lattice over F_3."""
    rng = random.Random(7)
    for degree in (0, 1, 2):
        lat = MWLattice(F3, degree)
        agree = 0
        for _ in range(40):
            x = random_element(F3, degree, rng, max_terms=2, max_eta=2)
            y = random_element(F3, degree, rng, max_terms=2, max_eta=2)
            t1 = {(m, tuple(a.as_int() for a in es)): c for (m, es), c in x.terms.items()}
            t2 = {(m, tuple(a.as_int() for a in es)): c for (m, es), c in y.terms.items()}
            lat_eq = lat.equal(t1, t2)
            if lat_eq is None:
                continue
            can_eq = mw_equal(x, y)
            if lat_eq:
                assert can_eq, (x, y)
            agree += 1
            # targeted identities must be seen equal by both
        assert agree > 0
        # identity pairs: canonical equal => lattice member (completeness of the lattice
        # at this size); spot-check with constructed rewrites
        for _ in range(25):
            x = random_element(F3, degree, rng, max_terms=2, max_eta=1)
            if degree >= 1:
                # rewrite the first symbol entry via [ab] = [a]+[b]+eta[a][b]
                (m, es), c = next(iter(x.terms.items()))
                if len(es) >= 1:
                    a = es[0]
                    b = F3.from_int(2)
                    y = MW(F3, x.line, {k: v for k, v in x.terms.items() if k != (m, es)})
                    repl = {
                        (m, (a * b,) + es[1:]): c,
                        (m, (b,) + es[1:]): -c,
                        (m + 1, (a, b) + es[1:]): -c,
                    }
                    terms = dict(y.terms)
                    for k, v in repl.items():
                        terms[k] = terms.get(k, 0) + v
                    y = MW(F3, x.line, terms)
                    assert mw_equal(x, y)
                    t1 = {(mm, tuple(v.as_int() for v in ee)): cc for (mm, ee), cc in x.terms.items()}
                    t2 = {(mm, tuple(v.as_int() for v in ee)): cc for (mm, ee), cc in y.terms.items()}
                    r = lat.equal(t1, t2)
                    if r is not None:
                        assert r, (x, y)


def test_transfers():
    F9 = GF(3, 2)
    ext = finite_ext(F3, F9)
    assert mw_equal(mw_transfer(ext, MW.one(F9)), MW.hyperbolic(F3))
    rng = random.Random(8)
    # additivity and the projection formula phi^* o phi_* = gamma_{tr(1)}
    emb = F3.embedding_into(F9)
    tr1 = mw_transfer(ext, MW.one(F9))
    for n in (-1, 0, 1):
        for _ in range(8):
            x = random_element(F3, n, rng)
            xr = MW(F9, x.line, {(m, tuple(emb(a) for a in es)): c for (m, es), c in x.terms.items()})
            lhs = mw_transfer(ext, xr)
            rhs = (tr1 * x).with_line(lhs.line)
            assert mw_equal(lhs, rhs)


def test_r5_construct_examples():
    Ks = FF(F3, "s")
    s = Ks.x
    ps = Ks.place(Ks.poly([0, 1]))
    ps1 = Ks.place(Ks.poly([-1, 1]))
    # alpha = [ubar] (x) pibar^dual with pi = -s  =>  beta = [s][u~]
    line = normal_line("pibar").dual().tensor(GradedLine(2, ONE))
    alpha = MW(F3, line, {(0, (F3.from_int(2),)): 1})
    beta, pi = r5_construct(Ks, [ps], alpha)
    assert pi == Ks.coerce(ps.fpoly)
    r = mw_residue(beta, ps, pi, "pibar")
    assert mw_equal(r.with_line(alpha.line), alpha)
    # alpha = 0 -> beta = 0
    z, _ = r5_construct(Ks, [ps, ps1], MW.zero(F3, line))
    assert z.is_zero_formal()
    # degree-0 target <u>: beta = [-pi](1 + eta[u~]) has the right residues
    line0 = normal_line("pibar").dual().tensor(GradedLine(1, ONE))
    alpha0 = MW(F3, line0, {(0, ()): 1, (1, (F3.from_int(2),)): 1})
    beta0, pi0 = r5_construct(Ks, [ps, ps1], alpha0)
    r1 = mw_residue(beta0, ps, pi0, "pibar")
    assert mw_equal(r1.with_line(alpha0.line), alpha0)
    assert mw_is_zero(mw_residue(beta0, ps1))
    with pytest.raises(MWError):
        r5_construct(Ks, [ps, ps], alpha)
