"""Grothendieck-Witt / Witt arithmetic with complete invariants for the catalog.

Forms are diagonal; virtual classes are (plus, minus) entry tuples.  Over the
catalog fields (finite fields and global rational function fields without
real places, odd characteristic) a Witt class is completely determined by

    (dim mod 2, signed discriminant, Witt-Hasse c-invariant list)

where the c-invariant is the hyperbolic-stable correction of the plain Hasse
symbol product (Lam's table; over these fields (-1,-1)_v = +1 everywhere, so
only the (-1, d)_v factor survives).  I^3 = 0 on the catalog, so these data
also decide fundamental-ideal membership.

Hilbert symbols use the tame formula chi((-1)^(ab) a^beta b^(-alpha) mod m);
residue characteristic is always odd here.

The Scharlau transfer diagonalizes the trace-form Gram matrix on the power
basis of the stored modulus (deterministic choice; alternative functionals
differ by a unit the twist module tracks).
"""

from .errors import err
from .fields import Fq, GF
from .funcfield import FunctionField, Place

PLUS, MINUS = 1, -1


_SQKEY_CACHE = {}


def square_class_key(field, a):
    """Canonical key of a in F^x / (F^x)^2."""
    if not a:
        raise err("degenerate-form", "zero has no square class")
    if isinstance(field, Fq):
        return ("sq",) if a.is_square() else ("ns",)
    ck = (id(field), a)
    if ck in _SQKEY_CACHE:
        return _SQKEY_CACHE[ck]
    if isinstance(field, FunctionField) and isinstance(field.base, Fq):
        lc = a.num.lc / a.den.lc
        odd = []
        for poly in (a.num, a.den):
            _, fac = poly.factor()
            for g, m in fac:
                if m % 2:
                    odd.append(field.place(g).key())
        out = ("sq" if lc.is_square() else "ns", tuple(sorted(odd)))
        _SQKEY_CACHE[ck] = out
        return out
    raise err("field-mismatch", f"no square classes for {field!r}")


def is_trivial_class(field, a):
    key = square_class_key(field, a)
    return key[0] == "sq" and (len(key) == 1 or not key[1])


def signed_disc(field, entries):
    """(-1)^(r(r-1)/2) * prod(entries); the hyperbolic-stable discriminant."""
    r = len(entries)
    d = field.one if hasattr(field, "one") else None
    for a in entries:
        d = d * a
    sign = (-field.one) ** (r * (r - 1) // 2)
    return sign * d


def hilbert_symbol(a, b, place):
    """Tame Hilbert symbol (a, b)_v = chi((-1)^(alpha*beta) a^beta b^(-alpha))."""
    if not a or not b:
        raise err("zero-argument", "Hilbert symbol of zero")
    alpha, beta = place.val(a), place.val(b)
    ff = place.ff
    w = ((-ff.one) ** (alpha * beta)) * a**beta * b ** (-alpha)
    return 1 if place.residue_is_square(w) else -1


def hasse_symbol_list(field, entries):
    """Sorted sparse list of place keys where prod_{i<j} (a_i, a_j)_v = -1."""
    if isinstance(field, Fq):
        return ()
    rel = set()
    for a in entries:
        for pl in field.places_dividing(a):
            rel.add(pl)
    rel.add(field.place_inf())
    out = []
    for pl in rel:
        s = 1
        for i in range(len(entries)):
            for j in range(i + 1, len(entries)):
                s *= hilbert_symbol(entries[i], entries[j], pl)
        if s == -1:
            out.append(pl.key())
    return tuple(sorted(out))


def _c_invariant_list(field, entries):
    """Witt-stable Hasse data: places where s_v(q) * (-1, d)_v^delta = -1."""
    if isinstance(field, Fq):
        return ()
    r = len(entries)
    delta = 1 if r % 8 in (3, 4, 7, 0) else 0
    d = signed_disc(field, entries)
    rel = set()
    for a in entries:
        for pl in field.places_dividing(a):
            rel.add(pl)
    if d:
        for pl in field.places_dividing(d):
            rel.add(pl)
    rel.add(field.place_inf())
    out = []
    minus_one = -field.one
    for pl in rel:
        s = 1
        for i in range(r):
            for j in range(i + 1, r):
                s *= hilbert_symbol(entries[i], entries[j], pl)
        if delta:
            s *= hilbert_symbol(minus_one, d, pl)
        if s == -1:
            out.append(pl.key())
    return tuple(sorted(out))


class WittInvariants:
    """(rank, dim mod 2, discriminant class, sparse Hasse list) of a diagonal form."""

    __slots__ = ("rank", "dim2", "disc_key", "hasse")

    def __init__(self, rank, dim2, disc_key, hasse):
        self.rank = rank
        self.dim2 = dim2
        self.disc_key = disc_key
        self.hasse = hasse

    def as_tuple(self):
        return (self.rank, self.dim2, self.disc_key, self.hasse)

    def __eq__(self, other):
        return isinstance(other, WittInvariants) and self.as_tuple() == other.as_tuple()

    def __hash__(self):
        return hash(self.as_tuple())

    def __repr__(self):
        return f"WittInvariants(rank={self.rank}, dim2={self.dim2}, disc={self.disc_key}, hasse={list(self.hasse)})"


def witt_invariants(field, entries):
    """Isometry invariants of a diagonal form <a_1,...,a_r>."""
    entries = tuple(entries)
    if any(not a for a in entries):
        raise err("degenerate-form", "zero entry in a diagonal form")
    if not entries:
        return WittInvariants(0, 0, ("sq",) if isinstance(field, Fq) else ("sq", ()), ())
    return WittInvariants(
        len(entries),
        len(entries) % 2,
        square_class_key(field, signed_disc(field, entries)),
        hasse_symbol_list(field, entries),
    )


def witt_reduce(field, entries):
    """Witt-equivalent shortening: square-class merge plus <a> + <-a> ~ 0.

    Keeps invariant computations O(small) even for virtual forms assembled
    from many Pfister expansions.
    """
    counts = {}
    reps = {}
    for a in entries:
        k = square_class_key(field, a)
        counts[k] = counts.get(k, 0) + 1
        reps.setdefault(k, a)
    for k in list(counts):
        if counts.get(k, 0) <= 0:
            continue
        nk = square_class_key(field, -reps[k])
        if nk == k:
            counts[k] %= 2
        elif nk in counts and counts[nk] > 0:
            c = min(counts[k], counts[nk])
            counts[k] -= c
            counts[nk] -= c
    out = []
    for k, c in sorted(counts.items()):
        out.extend([reps[k]] * c)
    return tuple(out)


def witt_class_key(field, plus, minus=()):
    """Complete Witt-class invariant of the virtual form plus - minus."""
    entries = tuple(plus) + tuple(-a for a in minus)
    if any(not a for a in entries):
        raise err("degenerate-form", "zero entry in a diagonal form")
    entries = witt_reduce(field, entries)
    if not entries:
        disc = ("sq",) if isinstance(field, Fq) else ("sq", ())
        return (0, disc, ())
    return (
        len(entries) % 2,
        square_class_key(field, signed_disc(field, entries)),
        _c_invariant_list(field, entries),
    )


def witt_is_zero(field, plus, minus=()):
    e, d, c = witt_class_key(field, plus, minus)
    return e == 0 and d[0] == "sq" and (len(d) == 1 or not d[1]) and not c


def witt_equal(field, form1, form2):
    """form = (plus, minus) pair; Witt-class equality via the complete key."""
    return witt_class_key(field, *form1) == witt_class_key(field, *form2)


def in_fundamental_power(field, plus, minus, n):
    """Membership of the Witt class in I^n (catalog: I^3 = 0)."""
    e, d, c = witt_class_key(field, plus, minus)
    if n <= 0:
        return True
    if e != 0:
        return False
    if n == 1:
        return True
    if not (d[0] == "sq" and (len(d) == 1 or not d[1])):
        return False
    if n == 2:
        return True
    return not c  # I^3 and beyond: zero class only


# -- GW arithmetic on virtual diagonal classes --------------------------------


class GWVirtual:
    """Formal difference of diagonal forms over one field."""

    __slots__ = ("field", "plus", "minus")

    def __init__(self, field, plus=(), minus=()):
        if any(not a for a in tuple(plus) + tuple(minus)):
            raise err("degenerate-form", "zero entry")
        self.field = field
        self.plus = tuple(plus)
        self.minus = tuple(minus)

    def __add__(self, other):
        self._chk(other)
        return GWVirtual(self.field, self.plus + other.plus, self.minus + other.minus)

    def __neg__(self):
        return GWVirtual(self.field, self.minus, self.plus)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        self._chk(other)
        plus = [a * b for a in self.plus for b in other.plus]
        plus += [a * b for a in self.minus for b in other.minus]
        minus = [a * b for a in self.plus for b in other.minus]
        minus += [a * b for a in self.minus for b in other.plus]
        return GWVirtual(self.field, plus, minus)

    def _chk(self, other):
        if other.field is not self.field:
            raise err("field-mismatch", "GW operands over different fields")

    @property
    def rank(self):
        return len(self.plus) - len(self.minus)

    def disc(self):
        entries = self.plus + tuple(-a for a in self.minus)
        if not entries:
            return self.field.one
        return signed_disc(self.field, entries)

    def witt_key(self):
        return witt_class_key(self.field, self.plus, self.minus)

    def gw_key(self):
        return (self.rank, self.witt_key())

    def __eq__(self, other):
        return (
            isinstance(other, GWVirtual)
            and self.field is other.field
            and self.gw_key() == other.gw_key()
        )

    def __hash__(self):
        return hash((id(self.field), self.gw_key()))

    def __repr__(self):
        p = ",".join(repr(a) for a in self.plus)
        m = ",".join(repr(a) for a in self.minus)
        return f"<{p}>-<{m}>" if m else f"<{p}>"


def gw_arithmetic(op, operands):
    """Spec surface: op in {add, mul, rank, disc} on GWVirtual operands."""
    if op == "add":
        return operands[0] + operands[1]
    if op == "mul":
        return operands[0] * operands[1]
    if op == "rank":
        return operands[0].rank
    if op == "disc":
        return operands[0].disc()
    raise err("bad-op", f"unknown GW op {op}")


# -- transfers ----------------------------------------------------------------


class ExtData:
    """A concrete finite extension E/F with the data transfers need.

    phi: F -> E, basis: F-basis of E (power basis of the stored modulus),
    trace/norm: E -> F.
    """

    __slots__ = ("small", "big", "phi", "basis", "degree", "_trace", "_norm")

    def __init__(self, small, big, phi, basis, degree, trace, norm):
        self.small = small
        self.big = big
        self.phi = phi
        self.basis = basis
        self.degree = degree
        self._trace = trace
        self._norm = norm

    def trace(self, x):
        return self._trace(x)

    def norm(self, x):
        return self._norm(x)


def finite_ext(small, big):
    """F_{p^a} inside F_{p^b} via the canonical embedding; power basis of z."""
    phi = small.embedding_into(big)
    m = big.k // small.k
    basis = [big.gen**i for i in range(m)]
    q = small.order
    inv = {}

    def pull(x):
        if not inv:
            for y in small.elements():
                inv[phi(y).coeffs] = y
        if x.coeffs not in inv:
            raise err("unsupported-extension", "value not in the small field")
        return inv[x.coeffs]

    def trace(x):
        acc = big.zero
        y = x
        for _ in range(m):
            acc = acc + y
            y = y**q
        return pull(acc)

    def norm(x):
        acc = big.one
        y = x
        for _ in range(m):
            acc = acc * y
            y = y**q
        return pull(acc)

    return ExtData(small, big, phi, basis, m, trace, norm)


def place_ext(place):
    """kappa(P) over the constant field F_q of the ambient function field."""
    small = place.ff.base
    big = place.res_field
    if place.kind == "inf" or place.degree == 1:
        ident = lambda x: x
        return ExtData(small, big, place.embed_base, [big.one], 1, ident, ident)
    return ExtData(
        small,
        big,
        place.embed_base,
        place.rel_power_basis(),
        place.degree,
        place.trace_to_base,
        place.norm_to_base,
    )


def scharlau_transfer(ext, plus, minus=()):
    """Trace-form transfer of a virtual diagonal class down the extension.

    Degree-1 extensions give the identity; otherwise each <a> becomes the
    diagonalization of the Gram matrix Tr(a * b_i * b_j) on the power basis.
    """
    if ext.degree == 1:
        to_small = lambda a: _descend(ext, a)
        return tuple(to_small(a) for a in plus), tuple(to_small(a) for a in minus)
    out_p, out_m = [], []
    for sign, entries in ((PLUS, plus), (MINUS, minus)):
        for a in entries:
            diag = _transfer_one(ext, a)
            (out_p if sign == PLUS else out_m).extend(diag)
    return tuple(out_p), tuple(out_m)


def _descend(ext, a):
    # degree 1: pull back through phi (element lies in the image)
    if ext.small is ext.big:
        return a
    # F_q -> kappa of a degree-1 place presents the same field
    return a


def _transfer_one(ext, a):
    n = ext.degree
    gram = [[ext.trace(a * ext.basis[i] * ext.basis[j]) for j in range(n)] for i in range(n)]
    return _diagonalize(ext.small, gram)


def _diagonalize(field, gram):
    """Congruence-diagonalize a symmetric matrix over a field of odd characteristic."""
    g = [row[:] for row in gram]
    n = len(g)
    diag = []
    active = list(range(n))
    while active:
        piv = next((i for i in active if g[i][i]), None)
        if piv is None:
            pair = next(((i, j) for i in active for j in active if i != j and g[i][j]), None)
            if pair is None:
                break  # remaining block is zero (degenerate input)
            i, j = pair
            # char != 2: adding row+column j to i puts 2*g[i][j] on the diagonal
            for k in range(n):
                g[i][k] = g[i][k] + g[j][k]
            for k in range(n):
                g[k][i] = g[k][i] + g[k][j]
            continue
        d = g[piv][piv]
        diag.append(d)
        active.remove(piv)
        for i in list(active):
            c = g[i][piv] / d
            if c:
                for k in range(n):
                    g[i][k] = g[i][k] - c * g[piv][k]
                for k in range(n):
                    g[k][i] = g[k][i] - c * g[k][piv]
    return [d for d in diag if d]
