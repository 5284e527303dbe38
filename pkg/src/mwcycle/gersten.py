"""Gersten complexes over the scheme catalog and their structural maps.

Terms are indexed by scheme points with declared twists Lambda_x (x) L; the
differential computes D4 residues along the incidence data and transports
them into the declared bases (scalar 1 by the omega conventions, with the
wedge determinant on the second step of surface paths).  d o d = 0 is
asserted at runtime on every evaluated element.

Exactness probes are constructive-or-inconclusive: a `pass` verdict always
carries a preimage that has been re-checked through the differential, and a
`counterexample` carries the witness; the probe never reports exactness it
did not verify.

The degree-1 probe over the DVR base follows the filtration structure: the
horizontal components are killed by a Milnor-style staircase over the
generic fiber (descending place degrees, canonical lifts of residues), and
the vertical leftover is a cocycle of the closed fiber, hence the
restriction of a constant (field-base homotopy), which lifts along
gamma_[-s] with no horizontal contamination.
"""

from .errors import err
from .fields import Fq, Poly
from .funcfield import FF, FunctionField, crt_uniformizer, strong_approx_lift
from .mwk import (
    MWElement,
    canonicalize,
    mw_equal,
    mw_is_zero,
    mw_residue,
    mw_specialization,
    r5_construct,
)
from .schemes import (
    CurveScheme,
    PointScheme,
    SpecDVRScheme,
    SurfaceScheme,
)
from .surface import GaussValuation, HorizontalValuation, TowerField, TowerElt
from .twists import GradedLine, ONE, trivial_line


class Cochain:
    """Finitely supported map from codim-p point keys to instance elements."""

    __slots__ = ("complex", "p", "data")

    def __init__(self, complex, p, data=None):
        self.complex = complex
        self.p = p
        self.data = {}
        for key, val in (data or {}).items():
            if not val.is_zero_formal():
                self.data[key] = val

    def add_into(self, key, val):
        if key in self.data:
            self.data[key] = self.data[key] + val
        else:
            self.data[key] = val

    def __add__(self, other):
        out = Cochain(self.complex, self.p, dict(self.data))
        for k, v in other.data.items():
            out.add_into(k, v)
        return out

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, n):
        return Cochain(self.complex, self.p, {k: v.scale(n) for k, v in self.data.items()})

    def is_zero(self):
        return all(self.complex.instance.is_zero(v) for v in self.data.values())

    def __repr__(self):
        if not self.data:
            return f"0 in C^{self.p}"
        return "; ".join(f"{k}: {v!r}" for k, v in self.data.items())


class GerstenComplex:
    """C^p(X, M, L) = (+)_(x in X^(p)) M(x, L) with explicit differentials."""

    def __init__(self, scheme, instance, L=None):
        self.scheme = scheme
        self.instance = instance
        self.L = L if L is not None else trivial_line(0)

    def term_line(self, point):
        sch = self.scheme
        if isinstance(sch, SurfaceScheme) and point.codim == 2:
            return sch.term_line_closed(point, GradedLine(self.L.grade + 2, self.L.token))
        return point.term_line(self.L)

    def zero(self, p):
        return Cochain(self, p)

    def elt(self, point, value):
        """Wrap an instance element, checking it sits in the declared twist."""
        want = self.term_line(point)
        if value.line != want:
            raise err("mixed-degree", f"value line {value.line!r} != declared {want!r}")
        return Cochain(self, point.codim, {point.key: value})

    def differential(self, cochain):
        out = Cochain(self, cochain.p + 1)
        for key, val in cochain.data.items():
            point = self.scheme.point(key)
            for tkey, contrib in self._routes(point, val):
                out.add_into(tkey, contrib)
        return out

    def d2_check(self, cochain):
        dd = self.differential(self.differential(cochain))
        if not dd.is_zero():
            raise err("closedness-violation", f"d o d != 0 on {cochain!r}")
        return dd

    # -- route computation ------------------------------------------------------

    def _routes(self, point, val):
        sch = self.scheme
        inst = self.instance
        if isinstance(sch, PointScheme):
            return []
        if isinstance(sch, SpecDVRScheme):
            if point.key != ("eta",):
                return []
            pl = sch.dvr.s_place
            r = inst.residue(val, pl)
            target = sch.point(("s",))
            return [(target.key, self._declare(r, target))] if not r.is_zero_formal() else []
        if isinstance(sch, CurveScheme):
            return self._curve_routes(point, val)
        if isinstance(sch, SurfaceScheme):
            return self._surface_routes(point, val)
        raise err("unsupported-scheme", sch.name)

    def _declare(self, r, target_point, scalar=None):
        line = self.term_line(target_point)
        x = r
        if scalar is not None and scalar != r.field.one:
            x = MWElement.gw_unit(r.field, scalar).gamma(
                x.with_line(trivial_line(x.line.grade))
            ).with_line(x.line)
        return x.with_line(line)

    def _curve_routes(self, point, val):
        sch = self.scheme
        if point.codim != 0:
            return []
        out = []
        for pl in _curve_support(sch, val):
            r = self.instance.residue(val, pl)
            if r.is_zero_formal():
                continue
            target = sch.closed_point(pl)
            out.append((target.key, self._declare(r, target)))
        return out

    def _surface_routes(self, point, val):
        sch = self.scheme
        inst = self.instance
        out = []
        if point.codim == 0:
            atoms = set()
            for (_, es) in val.terms:
                for a in es:
                    atoms |= a.atoms()
            for atom in sorted(atoms, key=lambda a: a.label):
                if not sch.atom_in_scheme(atom):
                    continue
                v = HorizontalValuation(sch.tower, atom)
                r = inst.residue(val, v)
                if r.is_zero_formal():
                    continue
                target = sch.atom_point(atom)
                out.append((target.key, self._declare(r, target)))
            g = sch.gauss
            r = inst.residue(val, g)
            if not r.is_zero_formal():
                out.append((sch.vpt.key, self._declare(r, sch.vpt)))
            return out
        if point.codim != 1:
            return []
        if point.key == ("gauss",):
            for pl in _vertical_support(sch, val):
                r = inst.residue(val, pl)
                if r.is_zero_formal():
                    continue
                target = sch.closed_point(pl.fpoly)
                out.append((target.key, self._declare(r, target)))
            return out
        if point.key[0] == "atom":
            atom = point.atom
            if atom.family == "closed" or not atom.closes_at_fiber:
                return []
            model = atom.model
            r = inst.residue(val, model.fiber_place)
            if r.is_zero_formal():
                return []
            target = _atom_fiber_target(sch, atom)
            det = _wedge_det_in_kappa(atom, target)
            out.append((target.key, self._declare(r, target, det)))
            return out
        return []


def _curve_support(sch, val):
    """Places of the curve where the value can have a residue (scheme-filtered)."""
    if sch.restrict is not None:
        return [p.place for p in sch.restrict]
    ff = sch.ff
    places = set()
    for (_, es) in val.terms:
        for a in es:
            for pl in ff.places_dividing(a):
                places.add(pl)
    if not sch.with_inf:
        places = {pl for pl in places if pl.kind != "inf"}
    elif val.terms:
        places.add(ff.place_inf())
    omit = getattr(sch, "omit", None)
    if omit is not None:
        places.discard(omit)
    return sorted(places, key=lambda pl: pl.key())


def _vertical_support(sch, val):
    """Closed-fiber places under the Gauss point that lie in the scheme."""
    ffq = FF(sch.dvr.res_field, "t")
    if sch.semilocal:
        return [ffq.place(Poly.x(sch.dvr.res_field))]
    places = set()
    for (_, es) in val.terms:
        for a in es:
            for pl in ffq.places_dividing(a):
                if pl.kind != "inf":
                    places.add(pl)
    return sorted(places, key=lambda pl: pl.key())


def _atom_fiber_target(sch, atom):
    Fqf = sch.dvr.res_field
    if atom.family == "sfree":
        return sch.closed_point(atom.model.g)
    if atom.family == "quadratic":
        return sch.closed_point(Poly.x(Fqf))
    # linear t - a: reduces to t - abar(0)
    a = -atom.poly.coeffs[0]
    if not a:
        abar = Fqf.zero
    else:
        abar = sch.dvr.s_place.res_unit(a) if sch.dvr.s_place.val(a) == 0 else Fqf.zero
    g = Poly(Fqf, (-abar, Fqf.one))
    return sch.closed_point(g)


def _wedge_det_in_kappa(atom, target):
    det = atom.wedge_det
    kappa = target.kappa
    if det.field is kappa:
        return det
    return det.field.embedding_into(kappa)(det) if isinstance(kappa, Fq) else det


def build_complex(scheme, instance, L=None):
    return GerstenComplex(scheme, instance, L)


# ---------------------------------------------------------------------------
# Def 2.15 maps: f_*, g^*, [a], boundary
# ---------------------------------------------------------------------------


def pullback_structure(src_complex, dst_complex, cochain):
    """g^* along the structure map of a relative curve (A^1_X -> X or the open
    complement A^1 - 0 -> Spec F); twist gains (omega^v, -1), which the token
    algebra cancels against Lambda."""
    dst = dst_complex
    sch_src = src_complex.scheme
    sch_dst = dst.scheme
    out = Cochain(dst, cochain.p)
    for key, val in cochain.data.items():
        if isinstance(sch_src, PointScheme) and isinstance(sch_dst, CurveScheme):
            ff = sch_dst.ff
            target = sch_dst.xi
            lifted = _restrict_constants(ff, val, dst.term_line(target))
            out.add_into(target.key, lifted)
        elif isinstance(sch_src, SpecDVRScheme) and isinstance(sch_dst, SurfaceScheme):
            if key == ("eta",):
                target = sch_dst.xi
                lifted = _restrict_K_to_tower(sch_dst.tower, val, dst.term_line(target))
                out.add_into(target.key, lifted)
            else:
                target = sch_dst.vpt
                lifted = _restrict_constants(FF(sch_dst.dvr.res_field, "t"), val, dst.term_line(target))
                out.add_into(target.key, lifted)
        else:
            raise err("unsupported-morphism", "pullback outside the catalog")
    return out


def _restrict_constants(ff, x, line):
    terms = {}
    for (m, es), c in x.terms.items():
        terms[(m, tuple(ff.coerce(a) for a in es))] = c
    return MWElement(ff, line, terms)


def _restrict_K_to_tower(tower, x, line):
    terms = {}
    for (m, es), c in x.terms.items():
        terms[(m, tuple(tower.coerce(a) for a in es))] = c
    return MWElement(tower, line, terms)


def pushforward_section(pt_complex, curve_complex, place, cochain):
    """f_* along the closed immersion Spec kappa(P) -> curve at the place P."""
    sch = curve_complex.scheme
    out = Cochain(curve_complex, cochain.p + 1)
    for key, val in cochain.data.items():
        target = sch.closed_point(place)
        out.add_into(target.key, val.with_line(curve_complex.term_line(target)))
    return out


def unit_mult(complex, a, cochain):
    """Def 2.15(3): [a] with the sign <-1>^(d-q) on C^q of a d-dimensional scheme."""
    d = complex.scheme.dim
    q = cochain.p
    out = Cochain(complex, q)
    inst = complex.instance
    for key, val in cochain.data.items():
        point = complex.scheme.point(key)
        a_x = _restrict_unit(complex, point, a)
        sign = MWElement.gw_unit(val.field, -val.field.one) if (d - q) % 2 else MWElement.one(val.field)
        bumped = inst.gamma_symbol(a_x, val)
        bumped = (sign * bumped).with_line(bumped.line)
        out.add_into(key, bumped)
    return out


def _restrict_unit(complex, point, a):
    """Image of a global unit at a point (catalog: units of O(X) on curves)."""
    sch = complex.scheme
    if isinstance(sch, CurveScheme):
        if point.codim == 0:
            return a
        pl = point.place
        if pl.val(a) != 0:
            raise err("zero-argument", "not a unit at a point of the scheme")
        return pl.res_unit(a)
    raise err("unsupported-morphism", "unit restriction outside curves")


def boundary_triple(field, instance, L=None):
    """The (Spec F --sigma--> A^1_F <-- A^1 - 0) data of Lemma 3.1.

    Returns (point complex, open-curve complex, full-curve complex, helpers).
    """
    from .schemes import FieldBase, affine_line

    base = FieldBase(field)
    pt = PointScheme(base, field)
    full = affine_line(field)
    ff = full.ff
    t_place = ff.place(Poly.x(field))
    open_curve = CurveScheme(base, ff, f"A1-0/{field.name}", with_inf=False)
    open_curve.omit = t_place
    L = L if L is not None else trivial_line(0)
    cpt = GerstenComplex(pt, instance, L)
    copen = GerstenComplex(open_curve, instance, L)
    cfull = GerstenComplex(full, instance, L)
    return cpt, copen, cfull, t_place


def lemma31_composite(field, instance, x):
    """Theta o del o [t] o g~^* applied to x in M(F, L); Lemma 3.1 says it returns x.

    Twist thread: g~^* brings (omega^v, -1) (cancelled against Lambda_xi by
    the token pairing), [t] brings the trivial grade-1 line, d brings
    dual(nbar_t); Theta undoes the lot with scalar 1.
    """
    from .schemes import FieldBase, affine_line

    L = GradedLine(x.line.grade, x.line.token)
    base = FieldBase(field)
    pt = PointScheme(base, field)
    full = affine_line(field)
    ff = full.ff
    t_place = ff.place(Poly.x(field))
    open_curve = CurveScheme(base, ff, f"A1-0/{field.name}", with_inf=False)
    open_curve.omit = t_place
    L1 = GradedLine(L.grade - 1, ("tensor", ("dual", ("dt", "t")), L.token))
    L2 = GradedLine(L.grade, L1.token)
    cpt = GerstenComplex(pt, instance, L)
    copen = GerstenComplex(open_curve, instance, L1)
    cfull_mult = GerstenComplex(full, instance, L2)
    c0 = cpt.elt(pt.xi, x.with_line(cpt.term_line(pt.xi)))
    pulled = pullback_structure(cpt, copen, c0)
    if ("xi",) not in pulled.data:  # formally zero input
        return instance.zero(field, x.line), {}
    # [t] with sign <-1>^(d-q) = <-1> on C^0 of the curve
    bumped = unit_mult(copen, ff.x, pulled)
    j = Cochain(cfull_mult, 0, {("xi",): bumped.data[("xi",)]})
    d = cfull_mult.differential(j)
    t_key = ("pl", t_place.key())
    supported = d.data.get(t_key)
    if supported is not None:
        theta = supported.with_line(x.line)
    else:
        theta = instance.zero(field, x.line)
    # del o g~^* must vanish: d of the un-multiplied pullback over L1
    cfull_plain = GerstenComplex(full, instance, L1)
    j0 = Cochain(cfull_plain, 0, {("xi",): pulled.data[("xi",)]})
    d0 = cfull_plain.differential(j0)
    leak = {k: v for k, v in d0.data.items() if not instance.is_zero(v)}
    return theta, leak


# ---------------------------------------------------------------------------
# A^1 decomposition and constructive surjectivity (field base)
# ---------------------------------------------------------------------------


def a1_decompose(complex, cochain):
    """Split gamma in C^0(A^1_F) as (constant part, residue certificate)."""
    sch = complex.scheme
    if not isinstance(sch, CurveScheme):
        raise err("no-constructive-H", "a1_decompose needs an affine line over a field")
    val = cochain.data.get(("xi",))
    if val is None:
        zero = complex.instance.zero(sch.ff.base, trivial_line(complex.term_line(sch.xi).grade - 1))
        return zero, {}
    t_place = sch.ff.place(Poly.x(sch.ff.base))
    const = complex.instance.specialize(val, t_place)
    cert = {}
    for pl in _curve_support(sch, val):
        r = complex.instance.residue(val, pl)
        if not complex.instance.is_zero(r):
            cert[pl.key()] = r
    return const, cert


def restrict_constant(complex, const):
    """r: M(F, L) -> C^0(A^1_F) (the H-sequence injection)."""
    sch = complex.scheme
    line = complex.term_line(sch.xi)
    return Cochain(complex, 0, {("xi",): _restrict_constants(sch.ff, const, line)})


def mw_surj_lift(complex, targets):
    """Milnor staircase: y in C^0(A^1_F) with del_P(y) = targets[P], 0 elsewhere.

    Targets are instance elements in the dual(nbar_P)-residue shape.  Lifts use
    canonical residue representatives of degree < deg P, so corrections only
    appear at places of strictly smaller degree.
    """
    sch = complex.scheme
    ff = sch.ff
    inst = complex.instance
    line0 = complex.term_line(sch.xi)
    result = MWElement.zero(ff, line0)
    work = {}
    for pl, alpha in targets.items():
        if pl.kind == "inf":
            raise err("no-constructive-H", "staircase targets must be finite places")
        work[pl] = alpha
    while work:
        pl = max(work, key=lambda q: (q.degree, q.key()))
        alpha = work.pop(pl)
        if inst.is_zero(alpha):
            continue
        gamma = _staircase_term(ff, pl, alpha, line0)
        result = result + gamma
        for q in _gamma_support(ff, gamma):
            if q is pl:
                continue
            r = inst.residue(gamma, q)
            if inst.is_zero(r):
                continue
            prev = work.get(q)
            work[q] = (prev - r.with_line(prev.line)) if prev is not None else -_retwist(r, q)
        back = inst.residue(gamma, pl)
        diff = alpha - back.with_line(alpha.line)
        if not inst.is_zero(diff):
            work[pl] = diff
    return Cochain(complex, 0, {("xi",): result})


def _retwist(r, place):
    return r


def _gamma_support(ff, gamma):
    places = set()
    for (_, es) in gamma.terms:
        for a in es:
            for pl in ff.places_dividing(a):
                if pl.kind != "inf":
                    places.add(pl)
    return sorted(places, key=lambda pl: pl.key())


def _staircase_term(ff, place, alpha, line0):
    """sum_terms c eta^m [-f_P][lift(u_1)...]: residue at P is exactly alpha."""
    rho = -ff.coerce(place.fpoly)
    terms = {}
    for (m, es), c in alpha.terms.items():
        lifted = tuple(place.lift_residue(u) for u in es)
        key = (m, (rho,) + lifted)
        terms[key] = terms.get(key, 0) + c
    return MWElement(ff, line0, terms)


# ---------------------------------------------------------------------------
# exactness probes
# ---------------------------------------------------------------------------


class ProbeResult:
    __slots__ = ("verdict", "preimage", "witness")

    def __init__(self, verdict, preimage=None, witness=None):
        self.verdict = verdict  # "pass" | "counterexample" | "inconclusive"
        self.preimage = preimage
        self.witness = witness

    def as_json(self):
        return {
            "verdict": self.verdict,
            "witness": repr(self.witness) if self.witness is not None else None,
        }

    def __repr__(self):
        return f"ProbeResult({self.verdict})"


def exactness_probe(complex, p, z):
    """Construct a preimage of the cocycle z in degree p >= 1, or certify failure.

    Never claims `pass` without re-verifying d(preimage) == z through the
    complex; configurations outside the constructive catalog come back
    `inconclusive`.
    """
    inst = complex.instance
    sch = complex.scheme
    if p < 1:
        raise err("bad-op", "probe degree must be >= 1")
    if not complex.differential(z).is_zero():
        raise err("bad-op", "probe input is not a cocycle")
    if p > sch.max_codim():
        return ProbeResult("pass", complex.zero(p - 1))
    if z.is_zero():
        return ProbeResult("pass", complex.zero(p - 1))
    if getattr(inst, "degenerate_side", None) == "eta-zero-groups":
        # Example-2.10 module: sources over the generic point are zero groups
        return _probe_eg1(complex, p, z)
    if isinstance(sch, SpecDVRScheme):
        return _probe_specdvr(complex, z)
    if isinstance(sch, CurveScheme):
        return _probe_curve(complex, z)
    if isinstance(sch, SurfaceScheme):
        if p == 2:
            return _probe_surface_deg2(complex, z)
        return _probe_surface_deg1(complex, z)
    return ProbeResult("inconclusive", witness="unsupported scheme")


def _verify(complex, y, z):
    diff = complex.differential(y) - z
    if diff.is_zero():
        return ProbeResult("pass", y)
    return ProbeResult("inconclusive", witness=f"verification failed: {diff!r}")


def _probe_eg1(complex, p, z):
    sch = complex.scheme
    sources = [pt for key, pt in sch._points.items() if pt.codim == p - 1]
    if all(pt.over == "eta" for pt in sources):
        wit = next(iter(z.data.values()))
        return ProbeResult("counterexample", witness=wit)
    # mixed sources: fall back to the kmw construction on the s-side
    return ProbeResult("inconclusive", witness="eg1 probe outside Spec R")


def _probe_specdvr(complex, z):
    sch = complex.scheme
    inst = complex.instance
    dvr = sch.dvr
    val = z.data.get(("s",))
    if val is None:
        return ProbeResult("pass", complex.zero(0))
    # residue shape: dual(sbar) (x) eta-term line
    eta_line = complex.term_line(sch.eta)
    from .twists import normal_line

    shape = normal_line("sbar").dual().tensor(eta_line)
    alpha = val.with_line(shape)
    beta, pi = inst.r5(dvr.frac, [dvr.s_place], alpha, base=dvr)
    y = Cochain(complex, 0, {("eta",): beta.with_line(eta_line)})
    return _verify(complex, y, z)


def _probe_curve(complex, z):
    """Semilocal (or staircase-able) degree-1 preimages over a field base."""
    sch = complex.scheme
    inst = complex.instance
    from .twists import normal_line

    xi_line = complex.term_line(sch.xi)
    if sch.restrict is not None:
        places = [pt.place for pt in sch.restrict]
        y_val = MWElement.zero(sch.ff, xi_line)
        for i, pt in enumerate(sch.restrict):
            val = z.data.get(pt.key)
            if val is None or inst.is_zero(val):
                continue
            shape = normal_line("nbar").dual().tensor(xi_line)
            ordered = [pt.place] + [q for q in places if q is not pt.place]
            # the CRT uniformizer pi differs from the canonical one f_P by a
            # unit u; del^{f_P} = <ubar> del^{pi}, so prescribe <ubar> * target
            pi = crt_uniformizer(ordered, 0)
            ubar = pt.place.res_unit(pi / sch.ff.coerce(pt.place.fpoly))
            adjusted = MWElement.gw_unit(val.field, ubar).gamma(
                val.with_line(trivial_line(val.line.grade))
            ).with_line(shape)
            beta, pi2 = inst.r5(sch.ff, ordered, adjusted)
            y_val = y_val + beta.with_line(xi_line)
        return _verify(complex, Cochain(complex, 0, {("xi",): y_val}), z)
    targets = {}
    for key, val in z.data.items():
        pt = sch.point(key)
        if pt.place.kind == "inf":
            return ProbeResult("inconclusive", witness="staircase needs affine support")
        targets[pt.place] = val.with_line(
            normal_line("nbar").dual().tensor(xi_line)
        )
    y = mw_surj_lift(complex, targets)
    return _verify(complex, y, z)


def _probe_surface_deg2(complex, z):
    """C^2 target at the closed point: lift along the (t)-atom path."""
    sch = complex.scheme
    inst = complex.instance
    from .twists import normal_line

    tower = sch.tower
    t_atom = tower.atom(Poly.x(tower.K))
    origin = sch.origin()
    val = z.data.get(origin.key)
    if val is None:
        return ProbeResult("inconclusive", witness="target outside the (s,t) origin")
    t_point = sch.atom_point(t_atom)
    term1 = complex.term_line(t_point)
    # route scalar from the (t)-path is -1: prescribe <det>^{-1} * z as the fiber residue
    det = t_atom.wedge_det
    alpha = MWElement.gw_unit(val.field, det).gamma(
        val.with_line(trivial_line(val.line.grade))
    )
    model = t_atom.model
    shape = normal_line("sbar").dual().tensor(term1)
    alpha = alpha.with_line(shape)
    beta, pi = inst.r5(model.res_ff, [model.fiber_place], alpha)
    y = Cochain(complex, 1, {t_point.key: beta.with_line(term1)})
    return _verify(complex, y, z)


def _probe_surface_deg1(complex, z):
    """Two-stage preimage: horizontal staircase over A^1_K, then the vertical
    constant (full) or the (t)-adapted decomposition (semilocal)."""
    sch = complex.scheme
    inst = complex.instance
    tower = sch.tower
    from .twists import normal_line

    xi_line = complex.term_line(sch.xi)
    # stage 1: horizontal targets
    targets = {}
    for key, val in z.data.items():
        if key == ("gauss",):
            continue
        atom = sch.point(key).atom
        targets[atom] = val.with_line(normal_line("nbar").dual().tensor(xi_line))
    y1 = _tower_staircase(complex, targets, xi_line)
    if y1 is None:
        return ProbeResult("inconclusive", witness="staircase outside the whitelist")
    z1 = z - complex.differential(y1)
    bad = [k for k in z1.data if k != ("gauss",) and not inst.is_zero(z1.data[k])]
    if bad:
        return ProbeResult("inconclusive", witness=f"horizontal leftovers at {bad}")
    gval = z1.data.get(("gauss",))
    if gval is None or inst.is_zero(gval):
        return _verify(complex, y1, z)
    y2 = _vertical_lift(complex, gval)
    if y2 is None:
        return ProbeResult("inconclusive", witness="vertical lift failed")
    return _verify(complex, y1 + y2, z)


def _tower_staircase(complex, targets, xi_line):
    """Kill horizontal targets over the generic fiber, exact at every atom."""
    sch = complex.scheme
    inst = complex.instance
    tower = sch.tower
    result = MWElement.zero(tower, xi_line)
    work = dict(targets)
    rounds = 0
    while work:
        rounds += 1
        if rounds > 500:
            return None
        atom = max(work, key=lambda a: (a.poly.degree, a.label))
        alpha = work.pop(atom)
        if inst.is_zero(alpha):
            continue
        gamma = _tower_term(tower, atom, alpha, xi_line)
        if gamma is None:
            return None
        result = result + gamma
        touched = set()
        for (_, es) in gamma.terms:
            for a in es:
                touched |= a.atoms()
        for other in touched:
            if other is atom or not sch.atom_in_scheme(other):
                continue
            v = HorizontalValuation(tower, other)
            r = inst.residue(gamma, v)
            if inst.is_zero(r):
                continue
            prev = work.get(other)
            work[other] = (prev - r.with_line(prev.line)) if prev is not None else -r
        back = inst.residue(gamma, HorizontalValuation(tower, atom))
        diff = alpha - back.with_line(alpha.line)
        if not inst.is_zero(diff):
            work[atom] = diff
    return Cochain(complex, 0, {("xi",): result})


def _tower_term(tower, atom, alpha, xi_line):
    """[-f][lifts...] over K(t): canonical lifts of E_f residues, degree < deg f."""
    rho = -tower.atom_elt(atom.poly)
    terms = {}
    for (m, es), c in alpha.terms.items():
        lifted = []
        for u in es:
            lift = _lift_model_residue(tower, atom, u)
            if lift is None:
                return None
            lifted.append(lift)
        key = (m, (rho,) + tuple(lifted))
        terms[key] = terms.get(key, 0) + c
    return MWElement(tower, xi_line, terms)


def _lift_model_residue(tower, atom, u):
    """Lift an E_f-model element to a TowerElt with t-degree < deg f."""
    K = tower.K
    fam = atom.family
    model = atom.model
    if fam == "linear" or fam == "closed":
        return tower.coerce(u)  # E = K
    if fam == "quadratic":
        # u in F_q(v): split into even/odd parts, v^2 = c*s; rationalize the
        # denominator by its conjugate so the lift is a0 + a1*t with a_i in K
        c = model.c
        cs = K.coerce(c) * K.x
        ne, no = _split_parity(u.num, K, c)
        de, do = _split_parity(u.den, K, c)
        if do:
            ne, no = ne * de - cs * no * do, no * de - ne * do
            de = de * de - cs * do * do
        if not de:
            return None
        return _linear_tower_elt(tower, ne / de, no / de)
    if fam == "sfree":
        # u in F_(q^d)(s): coefficients expand along the power basis of theta
        d = model.g.degree
        place = model.curve_place
        num = _sfree_lift_poly(tower, model, u.num)
        den = _sfree_lift_poly(tower, model, u.den)
        if num is None or den is None:
            return None
        lift = num / den if den != tower.one else num
        return lift
    return None


def _split_parity(poly, K, c):
    """f(v) over F_q with v^2 = c*s: return (E, O) in K with f = E + v*O."""
    cs = K.coerce(c) * K.x
    even = K.zero
    odd = K.zero
    for i, co in enumerate(poly.coeffs):
        val = K.coerce(co) * cs ** (i // 2)
        if i % 2 == 0:
            even = even + val
        else:
            odd = odd + val
    return even, odd


def _linear_tower_elt(tower, a0, a1):
    """a0 + a1*t as a TowerElt (monic atom times unit), or a constant."""
    K = tower.K
    if not a1:
        return tower.coerce(a0)
    root = -(a0 / a1)
    atom_poly = Poly(K, (-root, K.one))
    return tower.atom_elt(atom_poly) * tower.coerce(a1)


def _sfree_lift_poly(tower, model, poly):
    """Lift a polynomial over F_(q^d) in s to K[t]-data: theta -> t, s -> s."""
    K = tower.K
    place = model.curve_place
    d = model.g.degree
    # coefficients of `poly` live in kappa = F_(q^d); expand each over F_q[t]/(g)
    acc = tower.coerce(0)
    s = tower.coerce(K.x)
    total = None
    spow = tower.one
    for co in poly.coeffs:
        lifted = _lift_kappa_elt(tower, place, co)
        if lifted is None:
            return None
        piece = lifted * spow
        total = piece if total is None else _tower_add(total, piece)
        if total is None:
            return None
        spow = spow * s
    return total if total is not None else tower.coerce(0)


def _lift_kappa_elt(tower, place, co):
    """Lift an F_(q^d)-element along theta -> t as a factored TowerElt."""
    if not co:
        return None
    K = tower.K
    pol = place.lift_residue(co)  # poly of degree < d over F_q, as RatFunc of F_q(t)
    num = pol.num
    # embed F_q[t] into K[t] and factor over F_q (verbatim lifts stay irreducible)
    lc, fac = num.factor()
    out = tower.coerce(K.coerce(lc))
    for g, m in fac:
        gk = Poly(K, [K.coerce(c) for c in g.coeffs])
        out = out * tower.atom_elt(gk) ** m
    return out


def _tower_add(a, b):
    """Sum of tower elements when the result still factors over the whitelist."""
    tower = a.tower
    val = a.value() + b.value()
    if not val:
        return tower.coerce(0)
    return _tower_from_ratfunc(tower, val)


def _tower_from_ratfunc(tower, val):
    """Refactor a K(t)-rational function over the whitelist (t-degree <= 2 pieces)."""
    K = tower.K
    out_unit = K.one
    powers = {}
    for poly, sgn in ((val.num, 1), (val.den, -1)):
        res = _factor_tower_poly(tower, poly)
        if res is None:
            return None
        unit, parts = res
        out_unit = out_unit * (unit if sgn == 1 else K.one / unit)
        for atom, e in parts:
            powers[atom] = powers.get(atom, 0) + sgn * e
    return TowerElt(tower, out_unit, powers)


def _factor_tower_poly(tower, poly):
    """Factor a K[t]-polynomial of t-degree <= 2 (or s-free) into atoms."""
    K = tower.K
    if poly.degree < 0:
        raise err("zero-polynomial")
    if poly.degree == 0:
        return poly.coeffs[0], []
    lc = poly.lc
    mon = poly.monic()
    if poly.degree == 1:
        return lc, [(tower.atom(mon), 1)]
    if poly.degree == 2:
        from .errors import MWError

        b = mon.coeffs[1]
        c0 = mon.coeffs[0]
        disc = b * b - K.coerce(4) * c0
        rt = disc.sqrt() if disc else K.zero
        if disc and rt is None:
            try:
                return lc, [(tower.atom(mon), 1)]
            except MWError:
                return None  # irreducible quadratic outside the whitelist
        half = K.one / K.coerce(2)
        r1 = (-b + rt) * half
        r2 = (-b - rt) * half
        a1 = Poly(K, (-r1, K.one))
        if r1 != r2:
            a2 = Poly(K, (-r2, K.one))
            return lc, [(tower.atom(a1), 1), (tower.atom(a2), 1)]
        return lc, [(tower.atom(a1), 2)]
    # s-free of higher degree
    sfree = all(c.den.degree == 0 and c.num.degree <= 0 for c in mon.coeffs)
    if sfree:
        Fqf = K.base
        g = Poly(Fqf, [c.num.coeffs[0] if c.num.coeffs else Fqf.zero for c in mon.coeffs])
        glc, fac = g.factor()
        out = []
        for h, m in fac:
            hk = Poly(K, [K.coerce(c) for c in h.coeffs])
            out.append((tower.atom(hk), m))
        return lc * K.coerce(glc), out
    return None


def _vertical_lift(complex, gval):
    """Preimage of a gauss-supported cocycle: the closed-fiber constant route.

    Full surface: gval is a closed-fiber cocycle, hence r(c0); semilocal:
    decompose at (t) and use the c == 1 mechanism plus the cocycle condition.
    """
    sch = complex.scheme
    inst = complex.instance
    tower = sch.tower
    ffq = FF(sch.dvr.res_field, "t")
    xi_line = complex.term_line(sch.xi)
    t_place = ffq.place(Poly.x(sch.dvr.res_field))
    if not sch.semilocal:
        c0 = inst.specialize(gval, t_place)
        back = _restrict_constants(ffq, c0, gval.line)
        if not inst.equal(back, gval):
            return None
        # y = [-s] * r_{K(t)}(c0): constants lift with no horizontal support
        rho = -tower.s_elt()
        terms = {}
        for (m, es), c in c0.terms.items():
            lifted = tuple(tower.coerce(tower.K.coerce(a)) for a in es)
            terms[(m, (rho,) + lifted)] = terms.get((m, (rho,) + lifted), 0) + c
        return Cochain(complex, 0, {("xi",): MWElement(tower, xi_line, terms)})
    # semilocal: gval in ker(del_t); peel [-tbar]-parts using the cocycle condition
    return _vertical_lift_semilocal(complex, gval)


def _vertical_lift_semilocal(complex, gval):
    sch = complex.scheme
    inst = complex.instance
    tower = sch.tower
    Fqf = sch.dvr.res_field
    ffq = FF(Fqf, "t")
    xi_line = complex.term_line(sch.xi)
    t_place = ffq.place(Poly.x(Fqf))
    from .mwk import _decompose_term, _RHO

    rho_bar = -ffq.coerce(t_place.fpoly)
    a_terms = {}
    b_terms = {}
    for (m, es), c in gval.terms.items():
        for (m2, es2), c2 in _decompose_term(t_place, rho_bar, m, es).items():
            if es2 and es2[0] is _RHO:
                key = (m2, es2[1:])
                b_terms[key] = b_terms.get(key, 0) + c * c2
            else:
                key = (m2, es2)
                a_terms[key] = a_terms.get(key, 0) + c * c2
    rho_s = -tower.s_elt()
    t_atom = tower.atom(Poly.x(tower.K))

    def lift_units(terms, prefix):
        out = {}
        for (m, es), c in terms.items():
            lifted = []
            for u in es:
                lift = _verbatim_tower_lift(tower, u)
                if lift is None:
                    return None
                lifted.append(lift)
            key = (m, prefix + (rho_s,) + tuple(lifted))
            out[key] = out.get(key, 0) + c
        return out

    ya_terms = lift_units(a_terms, ())
    if ya_terms is None:
        return None
    # eps * [-t] * [-s]-lift of B gives gauss-residue [-tbar] * B
    yb_base = lift_units(b_terms, ())
    if yb_base is None:
        return None
    neg_t = -tower.atom_elt(Poly.x(tower.K))
    yb_terms = {}
    for (m, es), c in yb_base.items():
        # eps = -1 - eta[-1]
        key1 = (m, (neg_t,) + es)
        yb_terms[key1] = yb_terms.get(key1, 0) - c
        key2 = (m + 1, (neg_t,) + es + (tower.coerce(-1),))
        yb_terms[key2] = yb_terms.get(key2, 0) - c
    terms = dict(ya_terms)
    for k, c in yb_terms.items():
        terms[k] = terms.get(k, 0) + c
    y = MWElement(tower, xi_line, terms)
    return Cochain(complex, 0, {("xi",): y})


# ---------------------------------------------------------------------------
# reciprocity sums, A^1-invariance, filtration
# ---------------------------------------------------------------------------


def p1_reciprocity_sum(field, instance, a, b):
    """Sum over closed points of P^1 of transferred residues of [a][b].

    Returns an element of M(F); the reciprocity law says it vanishes.
    Transfers use the plain trace-form convention (see quadforms).
    """
    from .quadforms import place_ext
    from .schemes import projective_line
    from .mwk import mw_transfer

    pr = projective_line(field)
    cx = GerstenComplex(pr, instance, trivial_line(1))
    xi_line = cx.term_line(pr.xi)
    z = MWElement(pr.ff, xi_line, {(0, (a, b)): 1})
    d = cx.differential(Cochain(cx, 0, {("xi",): z}))
    total = instance.zero(field, trivial_line(1))
    for key, v in d.data.items():
        pl = pr.point(key).place
        ext = place_ext(pl)
        flat = v.with_line(trivial_line(v.line.grade))
        piece = flat if ext.degree == 1 else mw_transfer(ext, flat).with_line(flat.line)
        total = total + piece
    return total


def weak_reciprocity_residue(complex, gamma):
    """del_inf on an A^0(A^1_F) element (must vanish; Prop WR)."""
    sch = complex.scheme
    val = gamma.data.get(("xi",))
    if val is None:
        return complex.instance.zero(sch.ff.base, trivial_line(0))
    return complex.instance.residue(val, sch.ff.place_inf())


def a1_invariance_point(field, instance, c_rewritten, complex):
    """Round-trip A^0(X) -> A^0(A^1_X) -> A^0(X) for X = Spec F."""
    const, cert = a1_decompose(complex, c_rewritten)
    return const, cert


def fil_level(scheme, key):
    """Lemma 4.1 filtration level of a point: 0 over eta, 1 over s."""
    pt = scheme.point(key)
    return 0 if pt.over in ("eta", "base") else 1


def filtration_e1(complex, samples=10, rng=None, probe_samples=5):
    """Graded pieces of the Lemma-4.1 filtration, verified on random cochains.

    Checks (a) d preserves the filtration, (b) the degree-0 graded
    differential equals the generic-fiber (horizontal) differential, (c) the
    F^1 piece equals the closed-fiber complex shifted by one, and (d) F^2 = 0.
    Returns a report dict with an E_1 summary from fiber probes.
    """
    import random as _random

    from .cyclemod import _random_surface_elt, random_element
    from .schemes import affine_line

    sch = complex.scheme
    if not isinstance(sch, SurfaceScheme):
        raise err("no-filtration", "filtration needs a scheme over the DVR base")
    inst = complex.instance
    rng = rng or _random.Random(0)
    checks = {"fil_preserved": 0, "graded_matches_generic": 0, "f1_matches_fiber": 0}
    failures = []
    Fqf = sch.dvr.res_field
    fiber_sch = affine_line(Fqf)
    for i in range(samples):
        val = _random_surface_elt(sch, rng)
        cxn = GerstenComplex(sch, inst, trivial_line(val.line.grade - 2))
        d = cxn.differential(Cochain(cxn, 0, {("xi",): val}))
        graded0 = {k: v for k, v in d.data.items() if fil_level(sch, k) == 0}
        # (b) horizontal residues computed independently
        atoms = set()
        for (_, es) in val.terms:
            for a in es:
                atoms |= a.atoms()
        expect = {}
        for atom in atoms:
            if not sch.atom_in_scheme(atom):
                continue
            r = inst.residue(val, HorizontalValuation(sch.tower, atom))
            if not inst.is_zero(r):
                expect[("atom", atom.label)] = r
        vals_ok = True
        for k in set(graded0) | set(expect):
            g, e = graded0.get(k), expect.get(k)
            if g is None:
                vals_ok = vals_ok and inst.is_zero(e)
            elif e is None:
                vals_ok = vals_ok and inst.is_zero(g)
            else:
                vals_ok = vals_ok and inst.equal(g, e.with_line(g.line))
        if vals_ok:
            checks["graded_matches_generic"] += 1
        else:
            failures.append({"sample": i, "check": "graded0"})
        # (c) the F^1 part of d on a gauss-supported cochain matches the fiber curve
        ffq = FF(Fqf, "t")
        gline = cxn.term_line(sch.vpt)
        gval = MWElement(ffq, gline, random_element(ffq, gline.grade, rng).terms)
        dg = cxn.differential(Cochain(cxn, 1, {("gauss",): gval}))
        if all(fil_level(sch, k) == 1 for k in dg.data):
            checks["fil_preserved"] += 1
        else:
            failures.append({"sample": i, "check": "fil_preserved"})
        fiber_cx = GerstenComplex(fiber_sch, inst, GradedLine(gline.grade - 1, gline.token))
        fval = gval.with_line(fiber_cx.term_line(fiber_sch.xi))
        df = fiber_cx.differential(Cochain(fiber_cx, 0, {("xi",): fval}))
        match = True
        got = {k[1]: v for k, v in dg.data.items()}  # ("x0", place-key) -> value
        want = {k[1]: v for k, v in df.data.items()}  # ("pl", place-key) -> value
        if set(got) != set(want):
            match = False
        else:
            for k in got:
                if not inst.equal(got[k], want[k].with_line(got[k].line)):
                    match = False
        if match:
            checks["f1_matches_fiber"] += 1
        else:
            failures.append({"sample": i, "check": "f1_fiber"})
    # E_1 summary: fiber probes (closed fiber is an affine line over a field)
    e1 = {"F2": "zero (S has no codimension-2 points)"}
    fiber_cx = GerstenComplex(fiber_sch, inst, trivial_line(0))
    verdicts = []
    for j in range(probe_samples):
        pl = fiber_sch.ff.place(Poly.x(Fqf))
        pt = fiber_sch.closed_point(pl)
        v = random_element(Fqf, fiber_cx.term_line(pt).grade, rng)
        z = Cochain(fiber_cx, 1, {pt.key: MWElement(Fqf, fiber_cx.term_line(pt), v.terms)})
        verdicts.append(exactness_probe(fiber_cx, 1, z).verdict)
    e1["closed_fiber_degree1"] = verdicts
    return {"samples": samples, "checks": checks, "failures": failures, "e1": e1}


def _verbatim_tower_lift(tower, u):
    """Lift an F_q(t)-element to K(t) verbatim, factored over s-free atoms."""
    K = tower.K
    Fqf = K.base
    num = _factor_tower_poly(tower, Poly(K, [K.coerce(c) for c in u.num.coeffs]))
    den = _factor_tower_poly(tower, Poly(K, [K.coerce(c) for c in u.den.coeffs]))
    if num is None or den is None:
        return None
    (nu, np), (du, dp) = num, den
    powers = {}
    for atom, e in np:
        powers[atom] = powers.get(atom, 0) + e
    for atom, e in dp:
        powers[atom] = powers.get(atom, 0) - e
    return TowerElt(tower, K.coerce(nu) / K.coerce(du), powers)

