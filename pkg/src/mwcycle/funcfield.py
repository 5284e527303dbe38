"""Rational function fields F_q(t), their places, and residue-field machinery.

`FunctionField(base, var)` is generic in the coefficient field, so the same
class gives F_q(t), the DVR fraction field F_p(s), and the tower F_p(s)(t)
used by the surface catalog.  Elements are reduced fractions with monic
denominator.

`Place` objects only exist for function fields whose base is finite (places
of the tower field are handled by the scheme layer).  A finite place stores
its monic irreducible polynomial, a uniformizer, and a fully materialized
residue field: for degree d >= 2 the residue field F_q[t]/(f) is presented
as an absolute field F_{p^(kd)} through a deterministically chosen primitive
element, together with both directions of the isomorphism and the embedding
of F_q.  That keeps every downstream algorithm (norms, traces, square
classes, Milnor normal forms) on the single absolute-finite-field code path.

CRT uniformizers follow the congruence trick used throughout the harness:
pi has valuation exactly 1 at the target place and residue -1 at every other
listed place.  Lists containing the infinite place are handled by a Moebius
change of coordinates.
"""

from .errors import err
from .fields import Fq, FqElem, FieldHom, GF, Poly

_FF_CACHE = {}


class RatFunc:
    """Reduced fraction num/den of polynomials; den monic, gcd(num, den) = 1."""

    __slots__ = ("ff", "num", "den")

    def __init__(self, ff, num, den, reduced=False):
        if not den:
            raise ZeroDivisionError("zero denominator")
        if not reduced:
            g = num.gcd(den)
            if g.degree > 0:
                num, den = num // g, den // g
            lc = den.lc
            if lc != ff.base.one:
                inv = ff.base.one / lc
                num = Poly(ff.base, [c * inv for c in num.coeffs])
                den = den.monic()
        self.ff = ff
        self.num = num
        self.den = den

    def __bool__(self):
        return bool(self.num)

    def __eq__(self, other):
        if not isinstance(other, RatFunc) or other.ff is not self.ff:
            return False
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((id(self.ff), self.num.coeffs, self.den.coeffs))

    def __add__(self, other):
        other = self.ff.coerce(other)
        return RatFunc(self.ff, self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(self.ff, -self.num, self.den, reduced=True)

    def __sub__(self, other):
        return self + (-self.ff.coerce(other))

    def __rsub__(self, other):
        return self.ff.coerce(other) - self

    def __mul__(self, other):
        other = self.ff.coerce(other)
        return RatFunc(self.ff, self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def inverse(self):
        if not self.num:
            raise ZeroDivisionError("inverse of zero")
        return RatFunc(self.ff, self.den, self.num)

    def __truediv__(self, other):
        return self * self.ff.coerce(other).inverse()

    def __rtruediv__(self, other):
        return self.ff.coerce(other) / self

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        out = self.ff.one
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def sqrt(self):
        """Exact square root or None; keeps Poly.sqrt generic over towers."""
        if not self.num:
            return self
        n, d = self.num.sqrt(), self.den.sqrt()
        if n is None or d is None:
            return None
        cand = RatFunc(self.ff, n, d)
        return cand if cand * cand == self else None

    def is_poly(self):
        return self.den.degree == 0

    def as_int(self):
        # sorting key helper mirroring FqElem.as_int for deterministic orders
        return hash(self)

    def __repr__(self):
        s = _poly_str(self.num, self.ff.var)
        if self.den.degree == 0:
            return s
        return f"({s})/({_poly_str(self.den, self.ff.var)})"


def _poly_str(f, var):
    if not f:
        return "0"
    parts = []
    for i, c in enumerate(f.coeffs):
        if not c:
            continue
        if i == 0:
            parts.append(f"{_coeff_str(c)}")
        else:
            head = "" if c == f.field.one else f"{_coeff_str(c)}*"
            parts.append(f"{head}{var}" + (f"^{i}" if i > 1 else ""))
    return "+".join(reversed(parts)).replace("+-", "-")


def _coeff_str(c):
    if isinstance(c, FqElem):
        return str(c.as_int())
    return repr(c)


class FunctionField:
    """F(t) for a coefficient field F; also used as a coefficient field itself."""

    def __init__(self, base, var):
        self.base = base
        self.var = var
        self.zero = RatFunc(self, Poly(base, ()), Poly.const(base, 1), reduced=True)
        self.one = RatFunc(self, Poly.const(base, 1), Poly.const(base, 1), reduced=True)
        self.x = RatFunc(self, Poly.x(base), Poly.const(base, 1), reduced=True)
        self.name = f"{getattr(base, 'name', base)}({var})"
        self._places = {}
        self._inf = None

    def coerce(self, v):
        if isinstance(v, RatFunc):
            if v.ff is self:
                return v
            if v.ff is self.base:  # tower: constants from the coefficient field
                return RatFunc(self, Poly(self.base, (v,)), Poly.const(self.base, 1))
            raise err("field-mismatch", f"{v!r} not in {self.name}")
        if isinstance(v, Poly) and v.field is self.base:
            return RatFunc(self, v, Poly.const(self.base, 1))
        if isinstance(v, int):
            return RatFunc(self, Poly.const(self.base, v), Poly.const(self.base, 1))
        if isinstance(v, FqElem) and v.field is self.base:
            return RatFunc(self, Poly(self.base, (v,)), Poly.const(self.base, 1))
        raise err("field-mismatch", f"cannot coerce {v!r} into {self.name}")

    def poly(self, coeffs):
        return Poly(self.base, [self.base.coerce(c) for c in coeffs])

    def from_poly_pair(self, num, den):
        return RatFunc(self, num, den)

    def random_element(self, rng, max_deg=2, nonzero=False):
        while True:
            num = Poly(self.base, [self.base.random_element(rng) for _ in range(rng.randrange(1, max_deg + 2))])
            den = Poly(self.base, [self.base.random_element(rng) for _ in range(rng.randrange(1, max_deg + 2))])
            if not den:
                continue
            if nonzero and not num:
                continue
            return RatFunc(self, num, den)

    # -- places --------------------------------------------------------------

    def place(self, fpoly):
        """The finite place at a monic irreducible polynomial."""
        f = fpoly.monic() if fpoly.lc != self.base.one else fpoly
        key = f.coeffs
        if key not in self._places:
            if not isinstance(self.base, Fq):
                raise err("unsupported-scheme", "places only materialized over finite base fields")
            if not f.is_irreducible():
                raise err("bad-place", f"{f!r} is not irreducible")
            self._places[key] = Place(self, "finite", f)
        return self._places[key]

    def place_inf(self):
        if self._inf is None:
            self._inf = Place(self, "inf", None)
        return self._inf

    def places_dividing(self, r):
        """Finite places in the support of div(r), with multiplicities; plus inf."""
        r = self.coerce(r)
        if not r:
            raise err("valuation-of-zero", "support of zero")
        out = []
        for poly in (r.num, r.den):
            sign = 1 if poly is r.num else -1
            _, fac = poly.factor()
            for g, m in fac:
                if g.degree > 0:
                    out.append((self.place(g), sign * m))
        sup = {}
        for pl, m in out:
            sup[pl] = sup.get(pl, 0) + m
        vinf = r.den.degree - r.num.degree
        if vinf:
            sup[self.place_inf()] = vinf
        return {pl: m for pl, m in sup.items() if m}

    def __repr__(self):
        return self.name


def FF(base, var="t"):
    key = (id(base), var)
    if key not in _FF_CACHE:
        _FF_CACHE[key] = FunctionField(base, var)
    return _FF_CACHE[key]


class Place:
    """A place of F_q(t): finite (monic irreducible f) or the place at infinity.

    Attributes:
      res_field    absolute Fq presentation of the residue field
      embed_base   FieldHom F_q -> res_field
      t_image      image of t (finite places) in res_field
      uniformizer  canonical uniformizer (f, or 1/t at infinity)
    """

    __slots__ = (
        "ff", "kind", "fpoly", "degree", "_res_field", "_embed_base", "_t_image",
        "uniformizer", "_to_res", "_from_res", "_norm_cache", "_built",
    )

    def __init__(self, ff, kind, fpoly):
        self.ff = ff
        self.kind = kind
        self.fpoly = fpoly
        base = ff.base
        self._norm_cache = {}
        self._to_res = None
        self._from_res = None
        self._built = False
        if kind == "inf":
            self.degree = 1
            self._res_field = base
            self._embed_base = FieldHom(base, base, base.gen)
            self._t_image = None
            self.uniformizer = ff.one / ff.x
            self._built = True
        else:
            self.degree = fpoly.degree
            self.uniformizer = ff.coerce(fpoly)
            if self.degree == 1:
                self._res_field = base
                self._embed_base = FieldHom(base, base, base.gen)
                self._t_image = -fpoly.coeffs[0]
                self._built = True
            else:
                self._res_field = None
                self._embed_base = None
                self._t_image = None

    # residue fields of high-degree places are expensive (primitive-element
    # search); build them only when a residue is actually taken
    @property
    def res_field(self):
        if not self._built:
            self._build_residue_field()
            self._built = True
        return self._res_field

    @property
    def embed_base(self):
        if not self._built:
            self._build_residue_field()
            self._built = True
        return self._embed_base

    @property
    def t_image(self):
        if not self._built:
            self._build_residue_field()
            self._built = True
        return self._t_image

    def residue_is_square(self, r):
        """Square character of a unit's residue, without building the field."""
        r = self.ff.coerce(r)
        if self.kind == "inf" or self.degree == 1:
            return self.res_unit(r).is_square()
        f = self.fpoly
        num, den = r.num % f, r.den % f
        if not num or not den:
            raise err("bad-uniformizer", "not a unit at this place")
        g, u, _ = den.xgcd(f)
        cls = (num * u) % f
        e = (self.ff.base.order**self.degree - 1) // 2
        w = cls.pow_mod(e, f)
        if w.degree == 0 and w.coeffs[0] == self.ff.base.one:
            return True
        return False

    # residue-field presentation for deg >= 2 ------------------------------

    def _build_residue_field(self):
        base = self.ff.base
        p, k, d = base.p, base.k, self.degree
        n = k * d
        f = self.fpoly

        def vec(a):  # a: Poly over base, deg < d  ->  F_p vector of length n
            out = []
            for j in range(d):
                c = a.coeffs[j] if j <= a.degree else base.zero
                cs = list(c.coeffs) + [0] * (k - len(c.coeffs))
                out.extend(cs)
            return out

        def mulmod(a, b):
            return (a * b) % f

        one = Poly.const(base, 1)
        # deterministic primitive-element scan over A = F_q[t]/(f) by index
        theta = None
        for idx in range(p, p**n):
            cand = _elem_from_index(base, idx, d)
            pows = [one]
            for _ in range(n):
                pows.append(mulmod(pows[-1], cand))
            mat = [vec(g) for g in pows[:n]]
            if _rank_fp(mat, p) == n:
                theta = cand
                theta_pows = pows
                break
        if theta is None:
            raise err("unsupported-extension", "no primitive element found")
        # minimal polynomial: theta^n = -sum m_i theta^i
        sol = _solve_fp([vec(g) for g in theta_pows[:n]], vec(theta_pows[n]), p)
        modulus = tuple((-c) % p for c in sol) + (1,)
        kappa = _abs_field(p, n, modulus)
        # both directions of the isomorphism A = F_q[t]/(f)  <->  kappa
        basis_mat = [vec(g) for g in theta_pows[:n]]
        self._res_field = kappa
        self._to_res = (basis_mat, p, n)

        def from_res(x):
            acc = Poly(base, ())
            for i, ci in enumerate(x.coeffs):
                if ci:
                    acc = acc + Poly.const(base, ci) * theta_pows[i]
            return acc % f

        self._from_res = from_res
        self._embed_base = FieldHom(base, kappa, self._reduce_poly(Poly(base, (base.gen,))))
        self._t_image = self._reduce_poly(Poly.x(base))

    def _reduce_poly(self, a):
        """Image of a polynomial class (deg < d) in the absolute residue field."""
        base = self.ff.base
        if self.degree == 1:
            return a.eval(self._t_image) if a.degree >= 0 else base.zero
        basis_mat, p, n = self._to_res
        k, d = base.k, self.degree
        a = a % self.fpoly
        v = []
        for j in range(d):
            c = a.coeffs[j] if j <= a.degree else base.zero
            cs = list(c.coeffs) + [0] * (k - len(c.coeffs))
            v.extend(cs)
        w = _solve_fp(basis_mat, v, p)
        return self._res_field.from_coeffs(w)

    # -- valuations and residues --------------------------------------------

    def val(self, r):
        r = self.ff.coerce(r)
        if not r:
            raise err("valuation-of-zero", "valuation of 0 is undefined")
        if self.kind == "inf":
            return r.den.degree - r.num.degree
        return _poly_val(r.num, self.fpoly) - _poly_val(r.den, self.fpoly)

    def res_unit(self, r):
        """Residue of a valuation-0 element."""
        r = self.ff.coerce(r)
        if self.kind == "inf":
            if r.num.degree != r.den.degree:
                raise err("bad-uniformizer", "not a unit at infinity")
            return r.num.lc / r.den.lc
        f = self.fpoly
        num, den = r.num % f, r.den % f
        if not num or not den:
            raise err("bad-uniformizer", "not a unit at this place")
        if self.degree == 1:
            return num.eval(self.t_image) / den.eval(self.t_image)
        return self._reduce_poly(num) / self._reduce_poly(den)

    def valuation_and_residue(self, r):
        """(v(r), residue) with residue = image for units, 0 for positive v, None for poles."""
        v = self.val(r)
        if v > 0:
            return v, self.res_field.zero
        if v < 0:
            return v, None
        return 0, self.res_unit(r)

    def decompose(self, r, pi=None):
        """Write r = pi^e * u and return (e, residue of u); pi defaults to the stored uniformizer."""
        pi = self.uniformizer if pi is None else self.ff.coerce(pi)
        if self.val(pi) != 1:
            raise err("bad-uniformizer", "uniformizer must have valuation 1")
        e = self.val(r)
        u = r * pi ** (-e)
        return e, self.res_unit(u)

    # -- relative norm / trace (residue field over the constant field) -------

    def norm_to_base(self, x):
        return self._gal_product(x, trace=False)

    def trace_to_base(self, x):
        return self._gal_product(x, trace=True)

    def _gal_product(self, x, trace):
        base = self.ff.base
        if self.degree == 1 and self.kind != "inf":
            return x
        if self.kind == "inf":
            return x
        q = base.order
        acc = None
        y = x
        for _ in range(self.degree):
            acc = y if acc is None else (acc + y if trace else acc * y)
            y = y**q
        return self._pull_back(acc)

    def _pull_back(self, x):
        """Preimage under embed_base of an element known to lie in F_q."""
        key = x.coeffs
        if not self._norm_cache:
            for y in self.ff.base.elements():
                self._norm_cache[self.embed_base(y).coeffs] = y
        if key not in self._norm_cache:
            raise err("unsupported-extension", "element not in the constant field")
        return self._norm_cache[key]

    def rel_power_basis(self):
        """Images of 1, tbar, ..., tbar^(d-1) in the residue field (transfer basis)."""
        if self.kind == "inf" or self.degree == 1:
            return [self.res_field.one]
        base = self.ff.base
        out = []
        acc = Poly.const(base, 1)
        for _ in range(self.degree):
            out.append(self._reduce_poly(acc))
            acc = (acc * Poly.x(base)) % self.fpoly
        return out

    def lift_residue(self, x):
        """Canonical lift of a residue-field element to F (poly of degree < deg f)."""
        if self.kind == "inf":
            return self.ff.coerce(x)
        if self.degree == 1:
            return self.ff.coerce(self._base_preimage(x))
        return self.ff.coerce(self._from_res(x))

    def _base_preimage(self, x):
        if x.field is self.ff.base:
            return x
        raise err("field-mismatch", "residue element not over the base field")

    def key(self):
        if self.kind == "inf":
            return (1, ())
        return (0, self.fpoly.degree, tuple(c.as_int() for c in self.fpoly.coeffs))

    def label(self):
        if self.kind == "inf":
            return "inf"
        return f"({_poly_str(self.fpoly, self.ff.var)})"

    def __repr__(self):
        return f"place:{self.label()} on {self.ff.name}"


_ABS_CACHE = {}


def _abs_field(p, n, modulus):
    key = (p, n, modulus)
    if key not in _ABS_CACHE:
        _ABS_CACHE[key] = Fq(p, n, modulus=modulus)
    return _ABS_CACHE[key]


def _poly_val(g, f):
    if not g:
        raise err("valuation-of-zero")
    v = 0
    while True:
        q, r = divmod(g, f)
        if r:
            return v
        v += 1
        g = q


def _elem_from_index(base, idx, d):
    """idx-th element of F_q[t]/(f) (deg < d), little-endian over base field indices."""
    q = base.order
    cs = []
    for _ in range(d):
        idx, r = divmod(idx, q)
        cs.append(base.from_int(r))
    return Poly(base, cs)


def _rank_fp(rows, p):
    m = [r[:] for r in rows]
    rank = 0
    cols = len(m[0]) if m else 0
    for c in range(cols):
        piv = next((i for i in range(rank, len(m)) if m[i][c] % p), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        inv = pow(m[rank][c], p - 2, p)
        m[rank] = [x * inv % p for x in m[rank]]
        for i in range(len(m)):
            if i != rank and m[i][c] % p:
                f = m[i][c]
                m[i] = [(x - f * y) % p for x, y in zip(m[i], m[rank])]
        rank += 1
    return rank


def _solve_fp(basis_rows, target, p):
    """Solve sum_i w_i * basis_rows[i] = target over F_p (basis assumed independent)."""
    n = len(basis_rows)
    cols = len(target)
    # transpose to solve M w = t with M[c][i] = basis_rows[i][c]
    aug = [[basis_rows[i][c] % p for i in range(n)] + [target[c] % p] for c in range(cols)]
    rank = 0
    pivots = []
    for c in range(n):
        piv = next((i for i in range(rank, cols) if aug[i][c]), None)
        if piv is None:
            continue
        aug[rank], aug[piv] = aug[piv], aug[rank]
        inv = pow(aug[rank][c], p - 2, p)
        aug[rank] = [x * inv % p for x in aug[rank]]
        for i in range(cols):
            if i != rank and aug[i][c]:
                f = aug[i][c]
                aug[i] = [(x - f * y) % p for x, y in zip(aug[i], aug[rank])]
        pivots.append(c)
        rank += 1
    w = [0] * n
    for r, c in enumerate(pivots):
        w[c] = aug[r][n]
    return w


# ---------------------------------------------------------------------------
# CRT uniformizers and strong approximation
# ---------------------------------------------------------------------------


def poly_crt(moduli, targets, field):
    """CRT in F[t] for pairwise coprime monic moduli."""
    M = Poly.const(field.base, 1)
    for m in moduli:
        M = M * m
    acc = Poly(field.base, ())
    for m, t in zip(moduli, targets):
        rest = M // m
        g, u, _ = rest.xgcd(m)
        if g.degree != 0:
            raise err("places-not-distinct", "moduli not coprime")
        inv = rest * u  # == 1 mod m, == 0 mod others (up to constant)
        c = g.coeffs[0]
        inv = Poly(field.base, [x / c for x in inv.coeffs])
        acc = acc + t * inv
    return acc % M


def crt_uniformizer(places, target_index):
    """pi with v(pi) = 1 at places[target_index] and residue -1 at every other place."""
    if len(set(places)) != len(places):
        raise err("places-not-distinct", "duplicate places")
    ff = places[0].ff
    if any(pl.ff is not ff for pl in places):
        raise err("field-mismatch", "places on different fields")
    target = places[target_index]
    others = [pl for i, pl in enumerate(places) if i != target_index]
    if not others:
        return target.uniformizer
    if target.kind == "inf" or any(pl.kind == "inf" for pl in others):
        mob, inv = _moebius_avoiding(ff, places)
        new_places = [_map_place(mob, pl) for pl in places]
        pi = crt_uniformizer(new_places, target_index)
        return inv(pi)
    f0 = target.fpoly
    moduli = [pl.fpoly for pl in others]
    minus_one = Poly.const(ff.base, -1)
    # h == -f0^{-1} mod each f_j, then pi = f0*h == -1 mod f_j
    targets = []
    for m in moduli:
        g, u, _ = f0.xgcd(m)
        if g.degree != 0:
            raise err("places-not-distinct", "target divides a disturbing place")
        inv0 = u * Poly.const(ff.base, ff.base.one / g.coeffs[0])
        targets.append((minus_one * inv0) % m)
    h = poly_crt(moduli, targets, ff)
    if not h:
        h = Poly.const(ff.base, 1)
        for m in moduli:
            h = h * m
        # cannot happen when targets are units; guard anyway
    if not (h % f0):
        D = Poly.const(ff.base, 1)
        for m in moduli:
            D = D * m
        h = h + D
    return ff.coerce(f0 * h)


def strong_approx_lift(target, xbar, others):
    """Lift a residue-field unit xbar at `target` to u in F with u == 1 at `others`."""
    ff = target.ff
    if not xbar:
        raise err("zero-argument", "cannot lift zero as a unit")
    if target.kind == "inf" or any(pl.kind == "inf" for pl in others):
        mob, inv = _moebius_avoiding(ff, [target, *others])
        new_t = _map_place(mob, target)
        # residue fields of corresponding places are identified via the isomorphism
        u = strong_approx_lift(new_t, _transport_residue(mob, target, new_t, xbar), [_map_place(mob, pl) for pl in others])
        return inv(u)
    u0 = target.lift_residue(xbar)
    if not others:
        return u0
    moduli = [target.fpoly] + [pl.fpoly for pl in others]
    targets = [u0.num % target.fpoly] + [Poly.const(ff.base, 1) for _ in others]
    u = poly_crt(moduli, targets, ff)
    return ff.coerce(u)


def _moebius_avoiding(ff, places):
    """An automorphism of F(t) sending every listed place to a finite place."""
    taken = {pl.fpoly.coeffs for pl in places if pl.kind == "finite" and pl.degree == 1}
    c = None
    for cand in ff.base.elements():
        key = ((-cand), ff.base.one)
        if (key[0], key[1]) not in taken:
            c = cand
            break
    if c is None:
        raise err("catalog-violated", "no free degree-1 place for the Moebius move")
    x = ff.x
    fwd = RatHom(ff, ff, None, ff.coerce(c) + ff.one / x)
    bwd = RatHom(ff, ff, None, ff.one / (x - ff.coerce(c)))
    return fwd, bwd


def _map_place(mob, pl):
    """Pushforward of a place along a Moebius automorphism (v-preserving)."""
    ff = pl.ff
    if pl.kind == "inf":
        return ff.place(Poly.x(ff.base))
    img = mob(ff.coerce(pl.fpoly))
    if img.num.degree == 0:
        return ff.place_inf()
    return ff.place(img.num.monic())


def _transport_residue(mob, old_pl, new_pl, xbar):
    """Transport a residue along the place correspondence of a Moebius move."""
    # residues at corresponding places: res_new(mob(r)) = res_old(r); realize by
    # lifting, mapping, and reducing.
    lift = old_pl.lift_residue(xbar)
    return new_pl.res_unit(mob(lift)) if new_pl.val(mob(lift)) == 0 else _fail()


def _fail():
    raise err("bad-uniformizer", "residue transport failed")


class RatHom:
    """Hom of function fields: coefficient hom (or None for identity) + variable image."""

    __slots__ = ("src", "dst", "coeff_hom", "var_image")

    def __init__(self, src, dst, coeff_hom, var_image):
        self.src = src
        self.dst = dst
        self.coeff_hom = coeff_hom
        self.var_image = var_image

    def __call__(self, r):
        r = self.src.coerce(r)
        return self._map_poly(r.num) / self._map_poly(r.den)

    def _map_poly(self, f):
        acc = self.dst.zero
        pw = self.dst.one
        for c in f.coeffs:
            cc = self.coeff_hom(c) if self.coeff_hom else c
            acc = acc + self.dst.coerce(cc) * pw
            pw = pw * self.var_image
        return acc


def constant_extension(small_ff, big_base):
    """F_q(t) -> F_{q^r}(t), t -> t, coefficients via the canonical embedding."""
    big_ff = FF(big_base, small_ff.var)
    emb = small_ff.base.embedding_into(big_base)
    return RatHom(small_ff, big_ff, emb, big_ff.x)


def power_map(ff, e):
    """The ramified self-cover t -> t^e of F_q(t) (e coprime to the characteristic)."""
    if e % ff.base.p == 0:
        raise err("unsupported-extension", "wildly ramified cover")
    return RatHom(ff, ff, None, ff.x**e)
