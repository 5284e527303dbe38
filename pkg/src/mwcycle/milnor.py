"""Milnor K-theory normal forms over the catalog: tame symbols and norms.

A `MilnorSymbolSum` is a formal integer combination of pure symbols
{a_1,...,a_n}, homogeneous of degree n.  Normal forms are complete per
catalog field:

  over F_q:      degree 0 -> integer, degree 1 -> element of F_q^x,
                 degree >= 2 -> 0;
  over F_q(t):   degree 0 -> integer, degree 1 -> factored unit data,
                 degree 2 -> vector of tame residues at finite places
                 (the infinity component is determined by reciprocity),
                 degree >= 3 -> 0 (Milnor exact sequence with vanishing
                 degree-2 finite-field coefficients; one-time brute-force
                 sanity check at q = 3 lives in the test suite).

The tame symbol follows the two-symbol rule del{pi, u_2..u_n} = {ubar...},
extended multilinearly, with {a,a} = {-1,a} and antisymmetric swaps.
"""

from .errors import err
from .fields import Fq
from .funcfield import FunctionField

_PI = ("PI",)  # sentinel entry used during residue normalization


class MilnorSymbolSum:
    """Formal Z-combination of degree-n pure symbols over one field."""

    __slots__ = ("field", "degree", "terms")

    def __init__(self, field, degree, terms=None):
        self.field = field
        self.degree = degree
        self.terms = {}
        if terms:
            for es, c in terms.items():
                if c:
                    if len(es) != degree:
                        raise err("degree-underflow", "inhomogeneous symbol sum")
                    self.terms[es] = self.terms.get(es, 0) + c
            self.terms = {es: c for es, c in self.terms.items() if c}

    @classmethod
    def symbol(cls, field, entries):
        es = tuple(field.coerce(a) for a in entries)
        if any(not a for a in es):
            raise err("zero-argument", "symbol entries must be nonzero")
        return cls(field, len(es), {es: 1})

    @classmethod
    def integer(cls, field, n):
        return cls(field, 0, {(): n})

    def __add__(self, other):
        self._chk(other)
        terms = dict(self.terms)
        for es, c in other.terms.items():
            terms[es] = terms.get(es, 0) + c
        return MilnorSymbolSum(self.field, self.degree, terms)

    def __neg__(self):
        return MilnorSymbolSum(self.field, self.degree, {es: -c for es, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, n):
        return MilnorSymbolSum(self.field, self.degree, {es: n * c for es, c in self.terms.items()})

    def _chk(self, other):
        if other.field is not self.field or other.degree != self.degree:
            raise err("field-mismatch", "incompatible symbol sums")

    def is_zero_formal(self):
        return not self.terms

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for es, c in self.terms.items():
            s = "{" + ",".join(repr(a) for a in es) + "}"
            bits.append(f"{c}*{s}" if c != 1 else s)
        return " + ".join(bits)


def tame_symbol(place, s, pi=None):
    """Residue map K^M_n(F) -> K^M_(n-1)(kappa(v)); degree must be >= 1."""
    if s.degree < 1:
        raise err("degree-underflow", "tame symbol needs degree >= 1")
    ff = s.field
    pi = place.uniformizer if pi is None else ff.coerce(pi)
    if place.val(pi) != 1:
        raise err("bad-uniformizer")
    out = {}
    for es, c in s.terms.items():
        for es2, c2 in _normalize_term(place, pi, es).items():
            if es2 and es2[0] is _PI:
                key = tuple(place.res_unit(u) for u in es2[1:])
                out[key] = out.get(key, 0) + c * c2
    return MilnorSymbolSum(place.res_field, s.degree - 1, out)


def _normalize_term(place, pi, entries):
    """Rewrite {a_1..a_n} as a combination of {units} and {PI, units} terms."""
    minus_one = -place.ff.one
    work = [(1, tuple(entries))]
    done = {}
    while work:
        c, es = work.pop()
        # phase A: split a raw entry of nonzero valuation: {pi^e u} = e{pi} + {u}
        idx = next((i for i, a in enumerate(es) if a is not _PI and place.val(a) != 0), None)
        if idx is not None:
            a = es[idx]
            e = place.val(a)
            u = a * pi ** (-e)
            work.append((c * e, es[:idx] + (_PI,) + es[idx + 1 :]))
            if u != place.ff.one:
                work.append((c, es[:idx] + (u,) + es[idx + 1 :]))
            continue
        # phase B: antisymmetric swap to move a PI left past a unit
        swap = next(
            (i for i in range(1, len(es)) if es[i] is _PI and es[i - 1] is not _PI), None
        )
        if swap is not None:
            es2 = es[: swap - 1] + (es[swap], es[swap - 1]) + es[swap + 1 :]
            work.append((-c, es2))
            continue
        # phase C: leading {PI, PI, ...} -> {-1, PI, ...}
        if len(es) >= 2 and es[0] is _PI and es[1] is _PI:
            work.append((c, (minus_one, _PI) + es[2:]))
            continue
        done[es] = done.get(es, 0) + c
    return {es: c for es, c in done.items() if c}


# -- normal forms -------------------------------------------------------------


class KMNormalForm:
    """Hashable complete normal form; `data` shape depends on (field, degree)."""

    __slots__ = ("field", "degree", "data")

    def __init__(self, field, degree, data):
        self.field = field
        self.degree = degree
        self.data = data

    def __eq__(self, other):
        return (
            isinstance(other, KMNormalForm)
            and self.field is other.field
            and self.degree == other.degree
            and self.data == other.data
        )

    def __hash__(self):
        return hash((id(self.field), self.degree, self.data))

    def is_zero(self):
        if self.degree == 0:
            return self.data == 0
        return self.data == () or self.data == ("unit", None)

    def __repr__(self):
        return f"KM(deg {self.degree}: {self.data})"


def km_normal_form(s):
    """Complete, idempotent normal form of a Milnor symbol sum (catalog fields)."""
    fld, n = s.field, s.degree
    if n == 0:
        return KMNormalForm(fld, 0, sum(s.terms.values()))
    if isinstance(fld, Fq):
        if n == 1:
            acc = fld.one
            for es, c in s.terms.items():
                acc = acc * es[0] ** c
            return KMNormalForm(fld, 1, ("unit", None if acc == fld.one else acc.as_int()))
        return KMNormalForm(fld, n, ())  # K^M_{>=2}(F_q) = 0
    if isinstance(fld, FunctionField) and isinstance(fld.base, Fq):
        if n == 1:
            acc = fld.one
            for es, c in s.terms.items():
                acc = acc * es[0] ** c
            if acc == fld.one:
                return KMNormalForm(fld, 1, ("unit", None))
            lc = acc.num.lc / acc.den.lc
            parts = []
            for poly, sgn in ((acc.num, 1), (acc.den, -1)):
                _, fac = poly.factor()
                for g, m in fac:
                    parts.append((fld.place(g).key(), sgn * m))
            parts = tuple(sorted((k, e) for k, e in parts if e))
            return KMNormalForm(fld, 1, ("funit", lc.as_int(), parts))
        if n == 2:
            vec = []
            for pl in _support_places(s):
                if pl.kind == "inf":
                    continue  # determined by reciprocity
                r = km_normal_form(tame_symbol(pl, s))
                if not r.is_zero():
                    vec.append((pl.key(), r.data))
            return KMNormalForm(fld, 2, tuple(sorted(vec)))
        return KMNormalForm(fld, n, ())  # degree >= 3: zero by catalog structure
    raise err("field-mismatch", f"no Milnor normal form over {fld!r}")


def _support_places(s):
    places = set()
    for es in s.terms:
        for a in es:
            for pl in s.field.places_dividing(a):
                places.add(pl)
    return sorted(places, key=lambda pl: pl.key())


def km_equal(a, b):
    return km_normal_form(a - b).is_zero() if a.field is b.field and a.degree == b.degree else False


def km_norm(ext, s):
    """Norm along a finite catalog extension (ExtData): E = ext.big down to F = ext.small."""
    fld = ext.small
    if s.field is not ext.big:
        raise err("unsupported-extension", "symbol sum not over the big field")
    n = s.degree
    if n == 0:
        return MilnorSymbolSum.integer(fld, ext.degree * sum(s.terms.values()))
    if n == 1:
        out = {}
        for es, c in s.terms.items():
            v = ext.norm(es[0])
            out[(v,)] = out.get((v,), 0) + c
        return MilnorSymbolSum(fld, 1, out)
    if isinstance(ext.big, Fq):
        return MilnorSymbolSum(fld, n, {})  # degree >= 2 over finite fields is zero
    raise err("unsupported-extension", "norm in degree >= 2 outside finite fields")
