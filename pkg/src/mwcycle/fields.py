"""Exact arithmetic for the field catalog: F_q and dense univariate polynomials.

Finite fields F_{p^k} (p an odd prime <= 97) are presented as F_p[z]/(m(z))
with a deterministic choice of monic irreducible modulus m.  Elements are
immutable coefficient tuples over F_p (ascending, trailing zeros stripped),
so they hash and compare structurally.

`Poly` is a dense univariate polynomial over an arbitrary coefficient field
object; the same class serves F_q[t], F_q(s)[t] and deeper towers.  The
coefficient field only needs the small protocol implemented by `Fq` and
`FunctionField`: attributes ``zero``/``one``, a ``coerce`` method, and
elements with ring/field operators, ``__bool__`` and ``__hash__``.

Factorization (squarefree / distinct-degree / Cantor-Zassenhaus) is only
available over finite fields; its randomness is seeded from the input so
factor lists are reproducible, and factors are returned sorted.
"""

import random

from .errors import err

MAX_CHAR = 97


def _is_prime(n):
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


class FqElem:
    """Element of F_{p^k}: coefficient tuple over F_p in the power basis of z."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field, coeffs):
        self.field = field
        self.coeffs = coeffs  # ascending, ints in [0, p), no trailing zeros

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        return (
            isinstance(other, FqElem)
            and self.field is other.field
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((id(self.field), self.coeffs))

    def __add__(self, other):
        other = self.field.coerce(other)
        return self.field._make(_vec_add(self.coeffs, other.coeffs, self.field.p))

    __radd__ = __add__

    def __neg__(self):
        p = self.field.p
        return self.field._make(tuple((-c) % p for c in self.coeffs))

    def __sub__(self, other):
        return self + (-self.field.coerce(other))

    def __rsub__(self, other):
        return self.field.coerce(other) - self

    def __mul__(self, other):
        other = self.field.coerce(other)
        return self.field._make(self.field._mulmod(self.coeffs, other.coeffs))

    __rmul__ = __mul__

    def inverse(self):
        if not self.coeffs:
            raise ZeroDivisionError("inverse of zero field element")
        fld = self.field
        if fld._log is not None:
            return fld._make(fld._exp[-fld._log[self.coeffs] % (fld.order - 1)])
        return fld._make(fld._invmod(self.coeffs))

    def __truediv__(self, other):
        return self * self.field.coerce(other).inverse()

    def __rtruediv__(self, other):
        return self.field.coerce(other) / self

    def __pow__(self, n):
        fld = self.field
        if fld._log is not None and self.coeffs:
            return fld._make(fld._exp[(fld._log[self.coeffs] * n) % (fld.order - 1)])
        if n < 0:
            return self.inverse() ** (-n)
        out = fld.one
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def is_square(self):
        """Quadratic-residue test by exponentiation to (q-1)/2; 0 counts as square."""
        if not self.coeffs:
            return True
        fld = self.field
        if fld._log is not None:
            return fld._log[self.coeffs] % 2 == 0
        cache = fld._sq_cache
        if self.coeffs not in cache:
            cache[self.coeffs] = self ** ((fld.order - 1) // 2) == fld.one
        return cache[self.coeffs]

    def __repr__(self):
        return f"{self.field.name}({self.as_int()})"

    def as_int(self):
        """Index encoding: sum c_i p^i (used for literals and sorting)."""
        v = 0
        for c in reversed(self.coeffs):
            v = v * self.field.p + c
        return v


def _vec_add(a, b, p):
    n = max(len(a), len(b))
    out = [(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)]
    out = [c % p for c in out]
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


_FQ_CACHE = {}
_FACTOR_CACHE = {}


class Fq:
    """The finite field F_{p^k} = F_p[z]/(modulus); odd p <= 97."""

    def __init__(self, p, k=1, modulus=None):
        if not _is_prime(p) or p == 2 or p > MAX_CHAR:
            raise err("bad-characteristic", f"p={p} must be an odd prime <= {MAX_CHAR}")
        self.p = p
        self.k = k
        self.order = p**k
        if k == 1:
            self.modulus = (0, 1)  # z, formally; elements are constants
        else:
            self.modulus = modulus if modulus is not None else _find_modulus(p, k)
        self.name = f"F{self.order}"
        self.zero = FqElem(self, ())
        self.one = FqElem(self, (1,))
        # algebra generator (power basis of z); the multiplicative generator is
        # searched separately since the modulus is not a Conway polynomial
        self.gen = FqElem(self, (0, 1)) if k > 1 else self.one
        self._sq_cache = {}
        self._exp = None
        self._log = None
        self.mult_gen = self._find_mult_gen()
        if self.order <= 4096:
            self._build_log_tables()
        self._ext_roots = {}

    def _build_log_tables(self):
        """Discrete-log tables: O(1) multiplication for desk-scale fields."""
        exp = []
        log = {}
        x = self.one
        for i in range(self.order - 1):
            exp.append(x.coeffs)
            log[x.coeffs] = i
            x = FqElem(self, self._mulmod_raw(x.coeffs, self.mult_gen.coeffs))
        self._exp = exp
        self._log = log

    # -- construction ------------------------------------------------------

    def _make(self, coeffs):
        return FqElem(self, coeffs)

    def coerce(self, v):
        if isinstance(v, FqElem):
            if v.field is self:
                return v
            raise err("field-mismatch", f"{v!r} not in {self.name}")
        if isinstance(v, int):
            c = v % self.p
            return FqElem(self, (c,) if c else ())
        raise err("field-mismatch", f"cannot coerce {v!r} into {self.name}")

    def from_coeffs(self, coeffs):
        cs = [c % self.p for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        if len(cs) > self.k:
            raise ValueError("coefficient vector too long")
        return FqElem(self, tuple(cs))

    def from_int(self, v):
        cs = []
        v0 = v
        while v0:
            v0, r = divmod(v0, self.p)
            cs.append(r)
        return self.from_coeffs(cs)

    def elements(self):
        for v in range(self.order):
            yield self.from_int(v)

    def random_element(self, rng, nonzero=False):
        lo = 1 if nonzero else 0
        return self.from_int(rng.randrange(lo, self.order))

    def random_unit(self, rng):
        return self.random_element(rng, nonzero=True)

    # -- internal modular arithmetic over F_p[z]/(modulus) ------------------

    def _mulmod(self, a, b):
        if not a or not b:
            return ()
        if self._log is not None:
            return self._exp[(self._log[a] + self._log[b]) % (self.order - 1)]
        return self._mulmod_raw(a, b)

    def _mulmod_raw(self, a, b):
        p = self.p
        if not a or not b:
            return ()
        prod = [0] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    prod[i + j] = (prod[i + j] + ai * bj) % p
        return self._reduce(prod)

    def _reduce(self, cs):
        p, m, k = self.p, self.modulus, self.k
        if self.k == 1:
            c = cs[0] % p if cs else 0
            return (c,) if c else ()
        cs = list(cs)
        for i in range(len(cs) - 1, k - 1, -1):
            c = cs[i] % p
            if c:
                for j in range(k):
                    cs[i - k + j] = (cs[i - k + j] - c * m[j]) % p
            cs[i] = 0
        while cs and cs[-1] % p == 0:
            cs.pop()
        return tuple(c % p for c in cs)

    def _invmod(self, a):
        # extended Euclid in F_p[z] against the modulus
        if self.k == 1:
            return (pow(a[0], self.p - 2, self.p),)
        r0, r1 = list(self.modulus), list(a)
        s0, s1 = [0], [1]
        while any(c % self.p for c in r1):
            q, r = _fp_divmod(r0, r1, self.p)
            r0, r1 = r1, r
            s0, s1 = s1, _fp_sub(s0, _fp_mul(q, s1, self.p), self.p)
        c = next(c for c in reversed(r0) if c % self.p)  # r0 is a nonzero constant*unit
        cinv = pow(_fp_lc(r0, self.p), self.p - 2, self.p)
        return self._reduce([x * cinv for x in s0])

    def _find_mult_gen(self):
        """Smallest multiplicative generator; doubles as the cyclicity check."""
        n = self.order - 1
        divisors = _prime_divisors(n)
        for v in range(2, self.order):
            g = self.from_int(v)
            if g and all(g ** (n // q) != self.one for q in divisors):
                return g
        raise err("bad-modulus", f"{self.name}: multiplicative group not cyclic")

    # -- extension embeddings -----------------------------------------------

    def embedding_into(self, big):
        """Canonical embedding F_{p^k} -> F_{p^m} for k | m: smallest root of the modulus."""
        key = id(big)
        if key in self._ext_roots:
            return self._ext_roots[key]
        if big.p != self.p or big.k % self.k != 0:
            raise err("unsupported-extension", f"{self.name} does not embed in {big.name}")
        if self.k == 1:
            hom = FieldHom(self, big, big.one)
        else:
            from_poly = Poly(big, tuple(big.coerce(c) for c in self.modulus))
            roots = sorted((r.as_int() for r, _ in from_poly.roots()),)
            if not roots:
                raise err("unsupported-extension", "modulus has no root in target")
            hom = FieldHom(self, big, big.from_int(roots[0]))
        self._ext_roots[key] = hom
        return hom

    def __repr__(self):
        return self.name


def GF(p, k=1):
    """Cached constructor for F_{p^k} with the deterministic modulus."""
    key = (p, k)
    if key not in _FQ_CACHE:
        _FQ_CACHE[key] = Fq(p, k)
    return _FQ_CACHE[key]


def _prime_divisors(n):
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def _mult_order(g, p):
    o, x = 1, g % p
    while x != 1:
        x = x * g % p
        o += 1
    return o


# -- raw F_p[z] helpers (lists of ints) -------------------------------------


def _fp_lc(a, p):
    for c in reversed(a):
        if c % p:
            return c % p
    return 0


def _fp_trim(a, p):
    a = [c % p for c in a]
    while a and a[-1] == 0:
        a.pop()
    return a


def _fp_sub(a, b, p):
    n = max(len(a), len(b))
    return _fp_trim(
        [(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)], p
    )


def _fp_mul(a, b, p):
    a, b = _fp_trim(a, p), _fp_trim(b, p)
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        for j, bj in enumerate(b):
            out[i + j] = (out[i + j] + ai * bj) % p
    return out


def _fp_divmod(a, b, p):
    a, b = _fp_trim(a, p), _fp_trim(b, p)
    if not b:
        raise ZeroDivisionError
    q = [0] * max(0, len(a) - len(b) + 1)
    r = a[:]
    inv = pow(b[-1], p - 2, p)
    while len(r) >= len(b) and r:
        c = r[-1] * inv % p
        d = len(r) - len(b)
        q[d] = c
        for i, bc in enumerate(b):
            r[i + d] = (r[i + d] - c * bc) % p
        r = _fp_trim(r, p)
    return q, r


def _find_modulus(p, k):
    """Smallest monic irreducible of degree k over F_p in lexicographic coefficient order."""
    for v in range(p**k):
        cs = []
        v0 = v
        for _ in range(k):
            v0, r = divmod(v0, p)
            cs.append(r)
        m = cs + [1]
        if _fp_is_irreducible(m, p):
            return tuple(m)
    raise err("bad-modulus", f"no irreducible of degree {k} over F_{p}")


def _fp_is_irreducible(m, p):
    k = len(m) - 1
    if k == 1:
        return True
    # Rabin: z^(p^k) == z mod m, and gcd(z^(p^(k/q)) - z, m) == 1 for prime q | k
    def powmod_xq(e):
        # z^(p^e) mod m by repeated Frobenius
        r = [0, 1]
        for _ in range(e):
            r = _fp_powmod(r, p, m, p)
        return r

    top = powmod_xq(k)
    if _fp_trim(_fp_sub(top, [0, 1], p), p):
        return False
    for q in _prime_divisors(k):
        mid = powmod_xq(k // q)
        g = _fp_gcd(_fp_sub(mid, [0, 1], p), m, p)
        if len(_fp_trim(g, p)) != 1:
            return False
    return True


def _fp_powmod(a, n, m, p):
    r = [1]
    base = _fp_divmod(a, m, p)[1]
    while n:
        if n & 1:
            r = _fp_divmod(_fp_mul(r, base, p), m, p)[1]
        base = _fp_divmod(_fp_mul(base, base, p), m, p)[1]
        n >>= 1
    return r


def _fp_gcd(a, b, p):
    a, b = _fp_trim(a, p), _fp_trim(b, p)
    while b:
        a, b = b, _fp_divmod(a, b, p)[1]
    return a


# ---------------------------------------------------------------------------
# Generic dense polynomials over a coefficient field object
# ---------------------------------------------------------------------------


class Poly:
    """Univariate polynomial over a coefficient field; coeffs ascending, no trailing zeros."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field, coeffs):
        cs = list(coeffs)
        while cs and not cs[-1]:
            cs.pop()
        self.field = field
        self.coeffs = tuple(cs)

    @classmethod
    def const(cls, field, c):
        return cls(field, (field.coerce(c),))

    @classmethod
    def x(cls, field):
        return cls(field, (field.zero, field.one))

    @property
    def degree(self):
        return len(self.coeffs) - 1  # -1 for the zero polynomial

    @property
    def lc(self):
        return self.coeffs[-1] if self.coeffs else self.field.zero

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        return (
            isinstance(other, Poly)
            and self.field is other.field
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((id(self.field), self.coeffs))

    def __add__(self, other):
        other = self._co(other)
        n = max(len(self.coeffs), len(other.coeffs))
        z = self.field.zero
        return Poly(
            self.field,
            [
                (self.coeffs[i] if i < len(self.coeffs) else z)
                + (other.coeffs[i] if i < len(other.coeffs) else z)
                for i in range(n)
            ],
        )

    __radd__ = __add__

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative polynomial power")
        out = Poly.const(self.field, 1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __neg__(self):
        return Poly(self.field, [-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-self._co(other))

    def __mul__(self, other):
        other = self._co(other)
        if not self or not other:
            return Poly(self.field, ())
        z = self.field.zero
        out = [z] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] = out[i + j] + a * b
        return Poly(self.field, out)

    __rmul__ = __mul__

    def _co(self, other):
        if isinstance(other, Poly):
            if other.field is not self.field:
                raise err("field-mismatch", "polynomials over different fields")
            return other
        return Poly.const(self.field, other)

    def __divmod__(self, other):
        other = self._co(other)
        if not other:
            raise ZeroDivisionError("polynomial division by zero")
        q = [self.field.zero] * max(0, self.degree - other.degree + 1)
        r = list(self.coeffs)
        inv = self.field.one / other.lc
        while len(r) >= len(other.coeffs) and any(map(bool, r)):
            while r and not r[-1]:
                r.pop()
            if len(r) < len(other.coeffs):
                break
            c = r[-1] * inv
            d = len(r) - len(other.coeffs)
            q[d] = c
            for i, bc in enumerate(other.coeffs):
                r[i + d] = r[i + d] - c * bc
        return Poly(self.field, q), Poly(self.field, r)

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def monic(self):
        if not self:
            return self
        inv = self.field.one / self.lc
        return Poly(self.field, [c * inv for c in self.coeffs])

    def gcd(self, other):
        a, b = self, self._co(other)
        while b:
            a, b = b, a % b
        return a.monic()

    def xgcd(self, other):
        """Return (g, u, v) with u*self + v*other = g, g monic (or zero)."""
        zero, one = Poly(self.field, ()), Poly.const(self.field, 1)
        r0, r1 = self, self._co(other)
        s0, s1 = one, zero
        t0, t1 = zero, one
        while r1:
            q, r = divmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, s0 - q * s1
            t0, t1 = t1, t0 - q * t1
        if r0:
            inv = self.field.one / r0.lc
            r0, s0, t0 = (
                Poly(self.field, [c * inv for c in g.coeffs]) for g in (r0, s0, t0)
            )
        return r0, s0, t0

    def eval(self, x):
        acc = self.field.zero if not isinstance(x, Poly) else Poly(self.field, ())
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self):
        return Poly(
            self.field,
            [self.field.coerce(i) * c for i, c in enumerate(self.coeffs)][1:],
        )

    def shift_var(self, a):
        """Substitute t -> t + a."""
        t = Poly(self.field, (self.field.coerce(a), self.field.one))
        return self.eval(t)

    def pow_mod(self, n, m):
        r = Poly.const(self.field, 1)
        base = self % m
        while n:
            if n & 1:
                r = (r * base) % m
            base = (base * base) % m
            n >>= 1
        return r

    def resultant(self, other):
        """Resultant via the Euclidean remainder chain (coefficients in a field)."""
        a, b = self, self._co(other)
        one = self.field.one
        res = one
        if not a or not b:
            return self.field.zero
        while b.degree > 0:
            r = a % b
            if not r:
                return self.field.zero
            res = res * (b.lc ** (a.degree - r.degree)) * ((-one) ** (a.degree * b.degree))
            a, b = b, r
        return res * (b.lc**a.degree)

    def discriminant(self):
        d = self.derivative()
        if not d:
            return self.field.zero
        n = self.degree
        sign = (-self.field.one) ** (n * (n - 1) // 2)
        return sign * self.resultant(d) / self.lc

    def sqrt(self):
        """Exact square root if one exists (None otherwise); generic over any odd-char field."""
        if not self:
            return self
        if self.degree % 2:
            return None
        lc_rt = _field_sqrt(self.field, self.lc)
        if lc_rt is None:
            return None
        h = self.degree // 2
        z = self.field.zero
        root = [z] * (h + 1)
        root[h] = lc_rt
        # match coefficients from the top down
        for i in range(h - 1, -1, -1):
            acc = self.coeffs[i + h] if i + h <= self.degree else z
            s = z
            for j in range(i + 1, h):
                if i + h - j <= h:
                    s = s + root[j] * root[i + h - j]
            num = acc - s
            root[i] = num / (lc_rt + lc_rt)
        cand = Poly(self.field, root)
        return cand if cand * cand == self else None

    def __repr__(self):
        if not self:
            return "Poly(0)"
        return "Poly[" + ",".join(repr(c) for c in self.coeffs) + "]"

    # -- finite-field-only algorithms ---------------------------------------

    def is_irreducible(self):
        f = self.monic()
        if f.degree <= 0:
            return False
        if f.degree == 1:
            return True
        q = self.field.order
        x = Poly.x(self.field)
        xq = x.pow_mod(q**f.degree, f)
        if xq != x % f:
            return False
        for r in _prime_divisors(f.degree):
            xe = x.pow_mod(q ** (f.degree // r), f)
            if (xe - x).gcd(f).degree != 0:
                return False
        return True

    def roots(self):
        """Roots in the coefficient field with multiplicity (finite fields only)."""
        return [(-g.coeffs[0], m) for g, m in self.factor()[1] if g.degree == 1]

    def factor(self):
        """Return (leading coefficient, sorted [(monic irreducible, multiplicity)]).

        Raises on the zero polynomial.  Deterministic: Cantor-Zassenhaus randomness
        is seeded from the polynomial itself.  Results are cached per field.
        """
        if not self:
            raise err("zero-polynomial", "cannot factor the zero polynomial")
        lc = self.lc
        f = self.monic()
        if f.degree == 0:
            return lc, []
        cache_key = (id(self.field), f.coeffs)
        if cache_key in _FACTOR_CACHE:
            return lc, _FACTOR_CACHE[cache_key]
        rng = random.Random(repr(("factor", self.field.order, _poly_key(f))))
        found = {}
        for g, m in _squarefree_decompose(f):
            for h, d in _distinct_degree(g):
                for irr in _equal_degree(h, d, rng):
                    key = _poly_key(irr)
                    found[key] = (irr, found.get(key, (irr, 0))[1] + m)
        fac = sorted(found.values(), key=lambda t: (t[0].degree, _poly_key(t[0])))
        _FACTOR_CACHE[cache_key] = fac
        return lc, fac

    def factor_squarefree_part(self):
        return [g for g, _ in self.factor()[1]]


def _field_sqrt(field, a):
    """Square root in Fq (None if nonsquare); Tonelli-Shanks is overkill at this size."""
    if isinstance(field, Fq):
        if not a:
            return a
        if not a.is_square():
            return None
        # q is small: find by exponent when q % 4 == 3, else scan
        q = field.order
        if q % 4 == 3:
            r = a ** ((q + 1) // 4)
            return r if r * r == a else None
        for x in field.elements():
            if x * x == a:
                return x
        return None
    # fraction fields: delegate to the element
    return a.sqrt() if hasattr(a, "sqrt") else None


def _poly_key(f):
    return tuple(c.as_int() if isinstance(c, FqElem) else hash(c) for c in f.coeffs)


def _squarefree_decompose(f):
    """Yield (squarefree factor, multiplicity) over F_q, handling p-th powers."""
    p = f.field.p
    out = []
    d = f.derivative()
    if not d:
        # f = g(t^p): take p-th root coefficientwise (Frobenius is bijective)
        root = _pth_root(f)
        for g, m in _squarefree_decompose(root):
            out.append((g, m * p))
        return out
    c = f.gcd(d)
    w = f // c
    i = 1
    while w.degree > 0:
        y = w.gcd(c)
        z = w // y
        if z.degree > 0:
            out.append((z, i))
        w = y
        c = c // y
        i += 1
    if c.degree > 0:
        for g, m in _squarefree_decompose(c):
            out.append((g, m * p))
    return out


def _pth_root(f):
    fld = f.field
    p = fld.p
    q = fld.order
    cs = []
    for i in range(0, f.degree + 1, p):
        c = f.coeffs[i] if i <= f.degree else fld.zero
        cs.append(c ** (q // p))  # inverse Frobenius
    return Poly(fld, cs)


def _distinct_degree(f):
    """Split a squarefree monic f into products of irreducibles of equal degree."""
    q = f.field.order
    x = Poly.x(f.field)
    out = []
    xq = x
    d = 0
    rest = f
    while rest.degree > 0:
        d += 1
        if 2 * d > rest.degree:
            out.append((rest, rest.degree))
            break
        xq = xq.pow_mod(q, rest)
        g = (xq - x).gcd(rest)
        if g.degree > 0:
            out.append((g, d))
            rest = rest // g
            xq = xq % rest
    return out


def _equal_degree(f, d, rng):
    """Cantor-Zassenhaus split of a product of degree-d irreducibles (odd q)."""
    if f.degree == d:
        return [f.monic()]
    q = f.field.order
    e = (q**d - 1) // 2
    while True:
        a = Poly(f.field, [f.field.from_int(rng.randrange(q)) for _ in range(f.degree)])
        if a.degree <= 0:
            continue
        g = a.gcd(f)
        if 0 < g.degree < f.degree:
            return _equal_degree(g, d, rng) + _equal_degree(f // g, d, rng)
        b = a.pow_mod(e, f) - Poly.const(f.field, 1)
        g = b.gcd(f)
        if 0 < g.degree < f.degree:
            return _equal_degree(g, d, rng) + _equal_degree(f // g, d, rng)


def factor_polynomial(poly):
    """Spec entry point: factor over F_q, returning (leading coeff, factor list)."""
    return poly.factor()


class FieldHom:
    """Field homomorphism determined by the image of the source generator.

    For Fq sources the element Σ c_i z^i maps to Σ c_i gen_image^i; function
    field sources extend this with a variable image (see funcfield.RatHom).
    """

    __slots__ = ("src", "dst", "gen_image")

    def __init__(self, src, dst, gen_image):
        self.src = src
        self.dst = dst
        self.gen_image = gen_image

    def __call__(self, x):
        x = self.src.coerce(x)
        acc = self.dst.zero
        pw = self.dst.one
        for c in x.coeffs:
            acc = acc + self.dst.coerce(c) * pw
            pw = pw * self.gen_image
        return acc

    def degree(self):
        if isinstance(self.src, Fq) and isinstance(self.dst, Fq):
            return self.dst.k // self.src.k
        raise err("unsupported-extension", "degree only defined for finite-field homs")

    def __repr__(self):
        return f"Hom({self.src!r} -> {self.dst!r})"
