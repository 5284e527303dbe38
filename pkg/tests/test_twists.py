import random

import pytest

from mwcycle.errors import MWError
from mwcycle.fields import GF
from mwcycle.twists import (
    GradedLine,
    ONE,
    TwistIso,
    lambda_line,
    normal_line,
    omega_line,
    trivial_line,
    uniformizer_change,
)


def test_tensor_grade_additivity_and_dual():
    rng = random.Random(0)
    atoms = [trivial_line(0), normal_line("tbar"), GradedLine(1, ("dt", "t")), omega_line("x", 0)]
    for _ in range(40):
        a = rng.choice(atoms)
        b = rng.choice(atoms)
        c = rng.choice(atoms)
        assert a.tensor(b).grade == a.grade + b.grade
        assert a.tensor(b).tensor(c) == a.tensor(b.tensor(c))
        assert a.dual().grade == -a.grade
        assert a.dual().dual() == a


def test_dual_pair_cancellation():
    dt = GradedLine(1, ("dt", "t"))
    assert dt.tensor(dt.dual()) == trivial_line(0)
    assert dt.dual().tensor(dt).token == ONE


def test_hom_sets_empty_across_grades():
    F3 = GF(3)
    with pytest.raises(MWError):
        TwistIso(trivial_line(0), trivial_line(1), F3.one)
    with pytest.raises(MWError):
        TwistIso(trivial_line(0), trivial_line(0), F3.zero)


def test_iso_composition():
    F3 = GF(3)
    a, b, c = normal_line("a"), normal_line("b"), normal_line("c")
    i1 = TwistIso(a, b, F3.from_int(2))
    i2 = TwistIso(b, c, F3.from_int(2))
    comp = i2.compose(i1)
    assert comp.scalar == F3.one and comp.src == a and comp.dst == c
    inv = i1.inverse()
    assert inv.compose(i1).scalar == F3.one


def test_catalog_assignments():
    # finite fields: trivial omega; F(t)/F: dt with grade 1
    assert omega_line(None, 0) == trivial_line(0)
    assert omega_line(None, 1, var="t") == GradedLine(1, ("dt", "t"))
    # Lambda: grade = dim of closure
    lam = lambda_line(omega_line(None, 0), 0)
    assert lam.grade == 0
    lam1 = lambda_line(omega_line(None, 1, var="t"), 1)
    assert lam1.grade == 1 and lam1.token == ("dt", "t")


def test_normal_line_and_uniformizer_change():
    F3 = GF(3)
    n = normal_line("tbar")
    assert n.grade == 1 and n.dual().grade == -1
    iso = uniformizer_change("tbar", "pibar", -F3.one)
    assert iso.scalar == -F3.one


def test_rendering():
    tok = GradedLine(
        -2, ("tensor", ("dual", ("nbar", "tbar")), ("dual", ("nbar", "pibar")))
    )
    assert tok.render() == "dual(tbar)^dual(pibar)"
