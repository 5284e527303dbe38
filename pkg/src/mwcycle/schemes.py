"""The scheme catalog: points, residue fields, twists and incidence data.

Each scheme descriptor enumerates its points by codimension.  A point
carries its residue field, the graded line Lambda_x = (omega_{kappa(x)/S},
dim cl(x)), which side of a DVR base it lies over ("eta"/"s"; field bases
use "base"), and enough incidence data for the Gersten differential: the
valuation used by del^xi_x, and for codimension-1 points of surfaces the
closure's fiber valuation plus the wedge transport scalar into the declared
fiber-first basis.

Closed points of infinite strata are materialized on demand (from cochain
supports or by bounded-degree enumeration).
"""

from .errors import err
from .fields import Fq, Poly
from .funcfield import FF
from .surface import (
    Atom,
    DVRBase,
    FieldBase,
    GaussValuation,
    HorizontalValuation,
    TowerField,
)
from .twists import GradedLine, ONE, trivial_line


class Point:
    __slots__ = (
        "scheme", "key", "codim", "kappa", "lam_grade", "lam_token", "over", "label",
        "place", "atom", "curve_place", "wedge_token", "fiber_name",
    )

    def __init__(self, scheme, key, codim, kappa, lam_grade, lam_token, over, label):
        self.scheme = scheme
        self.key = key
        self.codim = codim
        self.kappa = kappa
        self.lam_grade = lam_grade
        self.lam_token = lam_token
        self.over = over
        self.label = label

    def term_line(self, L):
        return GradedLine(self.lam_grade + L.grade, ("tensor", self.lam_token, L.token))

    def __repr__(self):
        return f"<{self.label} in {self.scheme.name}>"


class SchemeDesc:
    """Shared plumbing: point registry keyed by point key."""

    def __init__(self, base, name, dim):
        self.base = base
        self.name = name
        self.dim = dim
        self._points = {}

    def _add(self, key, codim, kappa, lam_grade, lam_token, over, label):
        if key not in self._points:
            self._points[key] = Point(self, key, codim, kappa, lam_grade, lam_token, over, label)
        return self._points[key]

    def point(self, key):
        if key not in self._points:
            raise err("unsupported-scheme", f"unknown point {key} on {self.name}")
        return self._points[key]

    def __repr__(self):
        return self.name


class PointScheme(SchemeDesc):
    kind = "point"

    def __init__(self, base, field, over="base"):
        super().__init__(base, f"Spec({field.name})", 0)
        self.field = field
        self.xi = self._add(("xi",), 0, field, 0, ONE, over, "pt")

    def max_codim(self):
        return 0


class SpecDVRScheme(SchemeDesc):
    kind = "spec-dvr"

    def __init__(self, dvr):
        super().__init__(dvr, f"SpecDVR/{dvr.res_field.name}", 1)
        self.dvr = dvr
        self.eta = self._add(("eta",), 0, dvr.frac, 1, ONE, "eta", "eta")
        self.s = self._add(("s",), 1, dvr.res_field, 0, ONE, "s", "s")

    def max_codim(self):
        return 1


class CurveScheme(SchemeDesc):
    """A^1, P^1 or a semilocalized A^1 over a field F (the base field of `ff`)."""

    def __init__(self, base, ff, name, with_inf, restrict_places=None, over="base"):
        super().__init__(base, name, 1)
        self.ff = ff
        self.with_inf = with_inf
        self.restrict = None
        self.over = over
        self.xi = self._add(("xi",), 0, ff, 1, ("dt", ff.var), over, "xi")
        if restrict_places is not None:
            self.restrict = []
            for pl in restrict_places:
                self.restrict.append(self.closed_point(pl))

    def closed_point(self, place):
        if place.kind == "inf" and not self.with_inf:
            raise err("unsupported-scheme", "infinity not on the affine line")
        key = ("pl", place.key())
        pt = self._add(
            key, 1, place.res_field, 0, ("omega", f"{self.name}:{place.label()}"), self.over, place.label()
        )
        pt.place = place
        return pt

    def in_scheme(self, place):
        if self.restrict is not None:
            return any(p.place is place for p in self.restrict)
        if place.kind == "inf":
            return self.with_inf
        return True

    def closed_points(self, max_degree=1):
        """Materialized closed points (restricted list, or all up to a degree bound)."""
        if self.restrict is not None:
            return list(self.restrict)
        out = []
        for f in _monic_irreducibles(self.ff, max_degree):
            out.append(self.closed_point(self.ff.place(f)))
        if self.with_inf:
            out.append(self.closed_point(self.ff.place_inf()))
        return out

    def max_codim(self):
        return 1


def _monic_irreducibles(ff, max_degree):
    base = ff.base
    for d in range(1, max_degree + 1):
        for idx in range(base.order**d):
            cs = []
            v = idx
            for _ in range(d):
                v, r = divmod(v, base.order)
                cs.append(base.from_int(r))
            f = Poly(base, cs + [base.one])
            if f.is_irreducible():
                yield f


def affine_line(field):
    base = FieldBase(field)
    return CurveScheme(base, FF(field, "t"), f"A1/{field.name}", with_inf=False)


def projective_line(field):
    base = FieldBase(field)
    return CurveScheme(base, FF(field, "t"), f"P1/{field.name}", with_inf=True)


def semilocal_affine_line(field, places):
    base = FieldBase(field)
    ff = FF(field, "t")
    name = f"semilocal:A1/{field.name}@[{','.join(p.label() for p in places)}]"
    return CurveScheme(base, ff, name, with_inf=False, restrict_places=places)


class SurfaceScheme(SchemeDesc):
    """A^1 (or its (s,t)-localization, or P^1) over the DVR base."""

    def __init__(self, dvr, name, semilocal, with_inf=False):
        super().__init__(dvr, name, 2)
        self.dvr = dvr
        self.tower = TowerField(dvr)
        self.semilocal = semilocal
        self.with_inf = with_inf
        self.gauss = GaussValuation(self.tower)
        self.xi = self._add(("xi",), 0, self.tower, 2, ("dt", "t"), "eta", "xi")
        self.vpt = self._add(("gauss",), 1, self.gauss.res_field, 1, ("dt", "t"), "s", "(s)")
        if with_inf:
            self._add(("atom", "inf"), 1, dvr.frac, 1, ("omega", f"{name}:inf"), "eta", "inf-section")

    # -- codim-1 horizontal points -------------------------------------------

    def atom_point(self, atom):
        if self.semilocal and not self._through_origin(atom):
            raise err("unsupported-scheme", f"{atom!r} misses the chosen closed point")
        key = ("atom", atom.label)
        kappa = atom.model.res_ff if atom.model else self.tower.K
        pt = self._add(key, 1, kappa, 1, ("omega", f"{self.name}:{atom.label}"), "eta", atom.label)
        pt.atom = atom
        return pt

    def _through_origin(self, atom):
        # contained in (s, t): constant coefficient of the atom lies in (s)
        c0 = atom.poly.coeffs[0] if atom.poly.degree >= 0 else None
        if atom.family == "closed":
            return False
        if atom.family == "sfree":
            return atom.model.g.coeffs[0] == self.dvr.res_field.zero
        v = self.dvr.s_place.val(c0) if c0 else 1
        return v >= 1

    def atom_in_scheme(self, atom):
        if atom.family == "closed":
            return not self.semilocal
        return (not self.semilocal) or self._through_origin(atom)

    # -- closed points ---------------------------------------------------------

    def closed_point(self, gpoly):
        """The point (s, g) for monic irreducible g over the residue field."""
        curve_place = FF(self.dvr.res_field, "t").place(gpoly)
        key = ("x0", curve_place.key())
        glabel = curve_place.label()
        fiber_name = f"{_strip_parens(glabel)}bar" if gpoly.degree > 1 else _g_display(gpoly)
        token = (
            "tensor",
            ("dual", ("nbar", fiber_name)),
            ("dual", ("nbar", "pibar")),
        )
        pt = self._add(key, 2, curve_place.res_field, 0, ONE, "s", f"(s,{_strip_parens(glabel)})")
        pt.curve_place = curve_place
        pt.wedge_token = token
        pt.fiber_name = fiber_name
        return pt

    def term_line_closed(self, pt, L):
        return GradedLine(L.grade - 2, ("tensor", pt.wedge_token, L.token))

    def origin(self):
        g = Poly(self.dvr.res_field, (self.dvr.res_field.zero, self.dvr.res_field.one))
        return self.closed_point(g)

    def max_codim(self):
        return 2


def _strip_parens(label):
    return label[1:-1] if label.startswith("(") else label


def _g_display(gpoly):
    # degree-1 g = t - c: fiber coordinate is t itself
    return "tbar"


def affine_line_over_dvr(dvr):
    return SurfaceScheme(dvr, f"A1overDVR/{dvr.res_field.name}", semilocal=False)


def semilocal_surface(dvr):
    return SurfaceScheme(dvr, f"semilocal:A1overDVR/{dvr.res_field.name}@(s,t)", semilocal=True)


def projective_line_over_dvr(dvr):
    return SurfaceScheme(dvr, f"P1overDVR/{dvr.res_field.name}", semilocal=False, with_inf=True)


def parse_scheme(literal, default_p=3):
    """Scheme literals: A1/F3, P1/F3, SpecDVR/p=3, A1overDVR/p=3, semilocal:..."""
    from .fields import GF

    lit = literal.strip()
    if lit.startswith("semilocal:A1overDVR") or lit.startswith("A1overDVR") or lit.startswith("P1overDVR") or lit.startswith("SpecDVR"):
        p = default_p
        if "p=" in lit:
            p = int(lit.split("p=")[1].split("@")[0].rstrip("/"))
        dvr = DVRBase(GF(p))
        if lit.startswith("SpecDVR"):
            return SpecDVRScheme(dvr)
        if lit.startswith("P1overDVR"):
            return projective_line_over_dvr(dvr)
        if lit.startswith("semilocal"):
            return semilocal_surface(dvr)
        return affine_line_over_dvr(dvr)
    if lit.startswith("semilocal:A1/"):
        body = lit[len("semilocal:A1/") :]
        fname, placelist = body.split("@")
        field = _field_from_name(fname)
        ff = FF(field, "t")
        places = _parse_place_list(ff, placelist)
        return semilocal_affine_line(field, places)
    if lit.startswith("A1/"):
        return affine_line(_field_from_name(lit[3:]))
    if lit.startswith("P1/"):
        return projective_line(_field_from_name(lit[3:]))
    if lit.startswith("point/"):
        field = _field_from_name(lit[6:])
        return PointScheme(FieldBase(field), field)
    raise err("unsupported-scheme", literal)


def _field_from_name(name):
    from .fields import GF

    if not name.startswith("F"):
        raise err("unsupported-scheme", f"bad field name {name}")
    q = int(name[1:])
    p, k = _split_prime_power(q)
    return GF(p, k)


def _split_prime_power(q):
    for p in range(2, q + 1):
        if q % p == 0:
            k = 0
            while q % p == 0:
                q //= p
                k += 1
            if q != 1:
                raise err("unsupported-scheme", "field size not a prime power")
            return p, k
    raise err("unsupported-scheme", "bad field size")


def _parse_place_list(ff, text):
    from .cli import parse_poly  # shared tiny parser

    text = text.strip()
    if not (text.startswith("[") and text.endswith("]")):
        raise err("unsupported-scheme", "place list must be [...]")
    out = []
    depth = 0
    cur = ""
    items = []
    for ch in text[1:-1]:
        if ch == "(":
            depth += 1
        if ch == ")":
            depth -= 1
        if ch == "," and depth == 0:
            items.append(cur)
            cur = ""
        else:
            cur += ch
    if cur.strip():
        items.append(cur)
    for item in items:
        item = item.strip()
        if item in ("inf", "place:inf"):
            out.append(ff.place_inf())
        else:
            body = item[1:-1] if item.startswith("(") else item
            out.append(ff.place(parse_poly(ff, body).num.monic()))
    return out
