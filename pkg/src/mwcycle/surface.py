"""The 2-dimensional catalog layer: K(t) for K = F_q(s) and its valuations.

Elements of the tower field that enter cochains are `TowerElt`s: a unit in
K^x times a monomial in *atoms* (monic irreducible polynomials of K[t] from
the whitelist closure).  Keeping the factorization explicit makes supports,
valuations and residues exact without bivariate factorization; sums of
tower elements are deliberately not provided (symbol calculus only ever
multiplies and divides entries).

Whitelisted atoms and their residue-field models:

  t - a(s)        a(0) arbitrary in R          E = K,             s -> s
  t^2 - c s       c in F_q^x                   E = F_q(u),        s -> u^2/c, t -> u
  g(t) s-free     g irreducible over F_q       E = F_(q^deg g)(s) with  t -> gbar
  t - a, a not in R  (pole at s)               closed codim-1 point, E = K via t -> a

Each atom whose closure meets the closed fiber carries the valuation of that
closure's closed point on the model, the residue-field data, and the wedge
transport scalar into the declared fiber-first basis (dual(tbar)^dual(pibar));
the scalars are the determinants of the conormal change of basis, anchored
at +1 on the vertical path, which reproduces Thm-1.5-Step-4 style golden
values exactly.
"""

from .errors import err
from .fields import Fq, GF, Poly
from .funcfield import FF, FunctionField, RatFunc

# ---------------------------------------------------------------------------
# base descriptors
# ---------------------------------------------------------------------------


class FieldBase:
    """S = Spec F_q."""

    kind = "field"

    def __init__(self, field):
        self.field = field
        self.name = f"Spec({field.name})"

    def is_horizontal(self, place):
        return False

    def __repr__(self):
        return self.name


class DVRBase:
    """S = Spec F_q[s]_(s): an equicharacteristic excellent DVR."""

    kind = "dvr"

    def __init__(self, res_field):
        self.res_field = res_field
        self.frac = FF(res_field, "s")
        self.s = self.frac.x
        self.s_place = self.frac.place(self.frac.poly([0, 1]))
        self.name = f"SpecDVR({res_field.name}[s])"
        # fields lying over the generic point (for the Example-2.10 module)
        self.eta_field_ids = {id(self.frac)}

    def is_horizontal(self, place):
        """Def-2.1 horizontality on Frac(R): only the s-adic place drops to s."""
        return place.ff is self.frac and place.kind == "finite" and place is self.s_place

    def __repr__(self):
        return self.name


def dvr_base(p, k=1):
    return DVRBase(GF(p, k))


# ---------------------------------------------------------------------------
# tower field and factored elements
# ---------------------------------------------------------------------------


class TowerField:
    """K(t) for K = F_q(s), with TowerElt as the element type for symbols."""

    def __init__(self, base_dvr):
        self.dvr = base_dvr
        self.K = base_dvr.frac
        self.ff = FF(self.K, "t")  # raw arithmetic field
        self.name = f"{self.K.name}(t)"
        self.one = TowerElt(self, self.K.one, {})
        self._atoms = {}

    def coerce(self, v):
        if isinstance(v, TowerElt):
            if v.tower is not self:
                raise err("field-mismatch")
            return v
        if isinstance(v, int):
            u = self.K.coerce(v)
            if not u:
                return TowerElt(self, self.K.zero, {})
            return TowerElt(self, u, {})
        if isinstance(v, RatFunc) and v.ff is self.K:
            return TowerElt(self, v, {})
        raise err("field-mismatch", f"cannot coerce {v!r} into {self.name}")

    def constant(self, c):
        return self.coerce(c)

    def atom(self, poly):
        """Register/fetch a whitelist atom (monic polynomial over K in t)."""
        key = poly.coeffs
        if key not in self._atoms:
            self._atoms[key] = Atom(self, poly)
        return self._atoms[key]

    def atom_elt(self, poly):
        a = self.atom(poly)
        return TowerElt(self, self.K.one, {a: 1})

    def t_elt(self):
        return self.atom_elt(Poly.x(self.K))

    def s_elt(self):
        return self.coerce(self.dvr.s)

    def __repr__(self):
        return self.name


class Atom:
    """A monic irreducible of K[t] with its closure data on the surface catalog."""

    __slots__ = ("tower", "poly", "family", "model", "closes_at_fiber", "wedge_det", "label")

    def __init__(self, tower, poly):
        self.tower = tower
        self.poly = poly
        K = tower.K
        Fqf = K.base
        d = poly.degree
        if d < 1:
            raise err("bad-place", "atom must be nonconstant")
        coeffs_in_R = all(c.den.eval(Fqf.zero) for c in poly.coeffs)
        sfree = all(c.den.degree == 0 and c.num.degree <= 0 for c in poly.coeffs)
        if d == 1:
            a = -poly.coeffs[0]  # atom is t - a
            if not coeffs_in_R:
                self.family = "closed"  # pole along s: closure misses the closed fiber
                self.closes_at_fiber = False
                self.model = None
                self.wedge_det = None
            else:
                self.family = "linear"
                self.closes_at_fiber = True
                self.model = LinearModel(tower, a)
                self.wedge_det = -Fqf.one
        elif sfree:
            g = Poly(Fqf, [c.num.coeffs[0] if c.num.coeffs else Fqf.zero for c in poly.coeffs])
            if not g.is_irreducible():
                raise err("bad-place", "s-free atom must be irreducible over F_q")
            self.family = "sfree"
            self.closes_at_fiber = True
            self.model = SfreeModel(tower, g)
            self.wedge_det = -Fqf.one
        elif d == 2 and coeffs_in_R:
            # t^2 - c*s shape (the regular quadratic family)
            c0, c1, c2 = poly.coeffs[0], (poly.coeffs[1] if d >= 1 else K.zero), poly.coeffs[2]
            if c1 or c2 != K.one:
                raise err("normalization-unsupported", "quadratic atoms must be t^2 - c*s")
            negc0 = -c0
            if negc0.den.degree != 0 or negc0.num.degree != 1 or negc0.num.coeffs[0]:
                raise err("normalization-unsupported", "quadratic atoms must be t^2 - c*s")
            c = negc0.num.coeffs[1]
            self.family = "quadratic"
            self.closes_at_fiber = True
            self.model = QuadraticModel(tower, c)
            self.wedge_det = -c
        else:
            raise err("normalization-unsupported", f"atom outside the regular whitelist: {poly!r}")
        self.label = _poly_label(poly)

    def __hash__(self):
        return hash((id(self.tower), self.poly.coeffs))

    def __eq__(self, other):
        return isinstance(other, Atom) and other.tower is self.tower and other.poly == self.poly

    def key(self):
        return ("atom", self.label)

    def __repr__(self):
        return f"atom({self.label})"


def _poly_label(poly):
    from .funcfield import _poly_str

    return _poly_str(poly, "t")


class TowerElt:
    """unit * prod atom^e in K(t)^x (or 0 when unit is 0 and no atoms)."""

    __slots__ = ("tower", "unit", "powers")

    def __init__(self, tower, unit, powers):
        self.tower = tower
        self.unit = unit
        self.powers = {a: e for a, e in powers.items() if e}
        if not unit and self.powers:
            raise err("zero-argument", "zero with atom factors")

    def __bool__(self):
        return bool(self.unit)

    def __eq__(self, other):
        if not isinstance(other, TowerElt) or other.tower is not self.tower:
            return False
        return self.value() == other.value()

    def __hash__(self):
        return hash((id(self.tower), self.value()))

    def value(self):
        acc = self.tower.ff.coerce(self.unit)
        for a, e in self.powers.items():
            acc = acc * self.tower.ff.coerce(a.poly) ** e
        return acc

    def __mul__(self, other):
        other = self.tower.coerce(other)
        powers = dict(self.powers)
        for a, e in other.powers.items():
            powers[a] = powers.get(a, 0) + e
        return TowerElt(self.tower, self.unit * other.unit, powers)

    def inverse(self):
        if not self.unit:
            raise ZeroDivisionError
        return TowerElt(self.tower, self.tower.K.one / self.unit, {a: -e for a, e in self.powers.items()})

    def __truediv__(self, other):
        return self * self.tower.coerce(other).inverse()

    def __pow__(self, n):
        if n == 0:
            return self.tower.one
        if n < 0:
            return self.inverse() ** (-n)
        return TowerElt(self.tower, self.unit**n, {a: e * n for a, e in self.powers.items()})

    def __neg__(self):
        return TowerElt(self.tower, -self.unit, dict(self.powers))

    def atoms(self):
        return set(self.powers)

    def __repr__(self):
        bits = [repr(self.unit)] if self.unit != self.tower.K.one or not self.powers else []
        for a, e in self.powers.items():
            bits.append(f"{a.label}^{e}" if e != 1 else a.label)
        return "*".join(bits) if bits else "1"


# ---------------------------------------------------------------------------
# residue-field models for atoms (every whitelist residue field is rational)
# ---------------------------------------------------------------------------


class LinearModel:
    """E_(t-a) = K itself: t -> a, s -> s; fiber valuation = s-adic place of K."""

    def __init__(self, tower, a):
        self.tower = tower
        self.res_ff = tower.K
        self.a = a
        self.fiber_place = tower.dvr.s_place

    def send(self, unit, powers_excl):
        acc = self.res_ff.coerce(unit)
        for atom, e in powers_excl:
            acc = acc * atom.poly.eval(self.a) ** e
        return acc


class QuadraticModel:
    """E_(t^2-cs) = F_q(u): s -> u^2/c, t -> u; fiber valuation = (u)-adic."""

    def __init__(self, tower, c):
        self.tower = tower
        Fqf = tower.K.base
        self.c = c
        self.res_ff = FF(Fqf, "u")
        self.u = self.res_ff.x
        self.s_img = self.u * self.u / self.res_ff.coerce(c)
        self.fiber_place = self.res_ff.place(self.res_ff.poly([0, 1]))
        tower.dvr.eta_field_ids.add(id(self.res_ff))

    def _send_K(self, r):
        num = _eval_poly_at(r.num, self.s_img, self.res_ff)
        den = _eval_poly_at(r.den, self.s_img, self.res_ff)
        return num / den

    def send(self, unit, powers_excl):
        acc = self._send_K(unit)
        for atom, e in powers_excl:
            img = self.res_ff.zero
            pw = self.res_ff.one
            for co in atom.poly.coeffs:
                img = img + self._send_K(co) * pw
                pw = pw * self.u
            acc = acc * img**e
        return acc


class SfreeModel:
    """E_g = F_(q^d)(s) for s-free irreducible g: t -> gbar, s -> s."""

    def __init__(self, tower, g):
        Fqf = tower.K.base
        self.tower = tower
        self.g = g
        self.curve_place = FF(Fqf, "t").place(g)  # reuses the residue-field machinery
        self.kappa = self.curve_place.res_field
        self.res_ff = FF(self.kappa, "s")
        self.t_img = self.res_ff.coerce(self.curve_place.t_image)
        self.emb = self.curve_place.embed_base
        self.fiber_place = self.res_ff.place(self.res_ff.poly([0, 1]))
        tower.dvr.eta_field_ids.add(id(self.res_ff))

    def _send_K(self, r):
        num = _map_poly(r.num, self.emb, self.res_ff.base)
        den = _map_poly(r.den, self.emb, self.res_ff.base)
        return self.res_ff.from_poly_pair(num, den)

    def send(self, unit, powers_excl):
        acc = self._send_K(unit)
        for atom, e in powers_excl:
            img = self.res_ff.zero
            pw = self.res_ff.one
            for co in atom.poly.coeffs:
                img = img + self._send_K(co) * pw
                pw = pw * self.t_img
            acc = acc * img**e
        return acc


def _eval_poly_at(poly, x, dst_ff):
    acc = dst_ff.zero
    pw = dst_ff.one
    for c in poly.coeffs:
        acc = acc + dst_ff.coerce(c) * pw
        pw = pw * x
    return acc


def _map_poly(poly, coeff_hom, dst_base):
    return Poly(dst_base, [coeff_hom(c) for c in poly.coeffs])


# ---------------------------------------------------------------------------
# valuations on the tower field (protocol: ff/val/res_unit/res_field/uniformizer)
# ---------------------------------------------------------------------------


class HorizontalValuation:
    """The (f)-adic valuation of K(t) at a whitelist atom."""

    def __init__(self, tower, atom):
        self.tower = tower
        self.atom = atom
        self.ff = tower
        self.res_field = atom.model.res_ff if atom.model else tower.K
        self.uniformizer = TowerElt(tower, tower.K.one, {atom: 1})

    def val(self, x):
        x = self.tower.coerce(x)
        if not x:
            raise err("valuation-of-zero")
        return x.powers.get(self.atom, 0)

    def res_unit(self, x):
        x = self.tower.coerce(x)
        if self.val(x):
            raise err("bad-uniformizer", "not a unit at this atom")
        rest = [(a, e) for a, e in x.powers.items() if a is not self.atom]
        if self.atom.model is not None:
            return self.atom.model.send(x.unit, rest)
        # closed codim-1 point t - a with a having an s-pole: E = K via t -> a
        acc = x.unit
        a = -self.atom.poly.coeffs[0]
        for atom, e in rest:
            acc = acc * atom.poly.eval(a) ** e
        return acc

    def key(self):
        return self.atom.key()


class GaussValuation:
    """The s-adic Gauss valuation on K(t); residue field F_q(t)."""

    def __init__(self, tower):
        self.tower = tower
        self.ff = tower
        Fqf = tower.K.base
        self.res_ff = FF(Fqf, "t")
        self.res_field = self.res_ff
        self.uniformizer = tower.s_elt()
        self._s_place = tower.dvr.s_place

    def _val_K(self, c):
        return self._s_place.val(c)

    def _val_poly(self, f):
        return min(self._val_K(c) for c in f.coeffs if c)

    def val(self, x):
        x = self.tower.coerce(x)
        if not x:
            raise err("valuation-of-zero")
        v = self._val_K(x.unit)
        for a, e in x.powers.items():
            v += e * self._val_poly(a.poly)
        return v

    def _res_poly(self, f, shift):
        """Reduce s^(-shift) * f coefficientwise at s = 0 into F_q[t]."""
        Fqf = self.res_ff.base
        s_inv_pow = self._s_place.uniformizer ** (-shift)
        out = []
        for c in f.coeffs:
            cc = c * s_inv_pow
            if not cc:
                out.append(Fqf.zero)
                continue
            v = self._s_place.val(cc)
            out.append(Fqf.zero if v > 0 else self._s_place.res_unit(cc))
        return Poly(Fqf, out)

    def res_unit(self, x):
        x = self.tower.coerce(x)
        if self.val(x) != 0:
            raise err("bad-uniformizer", "not a Gauss unit")
        vu = self._val_K(x.unit)
        acc_num = self._res_poly(Poly(self.tower.K, (x.unit,)), vu)
        acc = self.res_ff.coerce(acc_num)
        for a, e in x.powers.items():
            va = self._val_poly(a.poly)
            img = self.res_ff.coerce(self._res_poly(a.poly, va))
            acc = acc * img**e
        return acc

    def key(self):
        return ("gauss",)


def tower_equal(x, y):
    """Equality in K^MW over K(t): all finite-place residues plus the (t)-specialization.

    Sound by the homotopy exact sequence for the base field K: the kernel of
    all residues is the image of M(K), on which specialization at (t) is a
    retraction.
    """
    from .mwk import canonicalize, mw_specialization

    if x.field is not y.field or x.line.grade != y.line.grade:
        return False
    d = x - y.with_line(x.line)
    tower = x.field
    atoms = set()
    for (_, es) in d.terms:
        for a in es:
            atoms |= a.atoms()
    for a in atoms:
        from .mwk import mw_residue

        r = mw_residue(d, HorizontalValuation(tower, a))
        if not _res_is_zero(r):
            return False
    t_at = tower.atom(Poly.x(tower.K))
    sp = mw_specialization(d, HorizontalValuation(tower, t_at))
    return _res_is_zero(sp)


def _res_is_zero(r):
    from .mwk import mw_is_zero

    fld = r.field
    if isinstance(fld, (Fq, FunctionField)):
        return mw_is_zero(r)
    raise err("field-mismatch", "unexpected residue field")
