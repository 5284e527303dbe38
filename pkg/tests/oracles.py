"""Independent brute-force oracles used to freeze expected values.

These deliberately avoid the package's invariant machinery: isometry classes
come from chain-equivalence closure, Hilbert symbols from solvability in
truncations, and MW equality from the integer lattice spanned by relation
instances of the defining presentation.
"""

import itertools
from math import gcd


# -- diagonal-form isometry by chain equivalence --------------------------------


def isometry_classes(field, rank):
    """Partition rank-r diagonal forms over F_q into chain-equivalence classes.

    Moves: <a> -> <a c^2>, and the binary Witt move <a,b> -> <c, abc> for any
    represented c = a x^2 + b y^2 != 0 (applied at every coordinate pair),
    with forms stored as sorted multisets.  Chain equivalence generates
    isometry for diagonal forms in odd characteristic.
    """
    elems = [e for e in field.elements() if e]
    squares = sorted({(e * e).as_int() for e in elems})

    def key(form):
        return tuple(sorted(a.as_int() for a in form))

    def neighbors(form):
        out = set()
        r = len(form)
        for i in range(r):
            for c2 in squares:
                g = list(form)
                g[i] = form[i] * field.from_int(c2)
                out.add(key(g))
        wide = elems + [field.zero]
        for i in range(r):
            for j in range(r):
                if i == j:
                    continue
                a, b = form[i], form[j]
                for x in wide:
                    for y in wide:
                        c = a * x * x + b * y * y
                        if not c:
                            continue
                        g = list(form)
                        g[i] = c
                        g[j] = a * b * c
                        out.add(key(g))
        return out

    seen = {}
    classes = []
    for form in itertools.product(elems, repeat=rank):
        k = key(form)
        if k in seen:
            continue
        cls = {k}
        frontier = [k]
        while frontier:
            cur = frontier.pop()
            cur_form = [field.from_int(v) for v in cur]
            for nk in neighbors(cur_form):
                if nk not in cls:
                    cls.add(nk)
                    frontier.append(nk)
        idx = len(classes)
        classes.append(cls)
        for k2 in cls:
            seen[k2] = idx
    return seen, classes


# -- Hilbert symbol by solvability in truncations --------------------------------


def brute_hilbert(a, b, place, N=4):
    """(a,b)_v via primitive solvability of a x^2 + b y^2 = z^2 mod pi^N."""
    ff = place.ff
    kappa = place.res_field
    pi = place.uniformizer

    va, vb = place.val(a), place.val(b)
    a = a * pi ** (-2 * (va // 2))
    b = b * pi ** (-2 * (vb // 2))

    def expand(r):
        digits = []
        cur = r
        for _ in range(N):
            if cur and place.val(cur) == 0:
                d = place.res_unit(cur)
                digits.append(d)
                cur = cur - place.lift_residue(d)
            else:
                digits.append(kappa.zero)
            if cur:
                cur = cur / pi
        return digits

    da, db = expand(a), expand(b)

    def series_mul(u, v):
        out = [kappa.zero] * N
        for i in range(N):
            if not u[i]:
                continue
            for j in range(N - i):
                out[i + j] = out[i + j] + u[i] * v[j]
        return out

    elems = list(kappa.elements())
    vecs = list(itertools.product(elems, repeat=N))
    for x in vecs:
        sq = series_mul(list(x), list(x))
        qa = series_mul(da, sq)
        for y in vecs:
            sy = series_mul(list(y), list(y))
            qb = series_mul(db, sy)
            rhs = [qa[i] + qb[i] for i in range(N)]
            for z in vecs:
                if not (x[0] or y[0] or z[0]):
                    continue
                if series_mul(list(z), list(z)) == rhs:
                    return 1
    return -1


# -- MW equality by rewriting-closure lattice membership --------------------------


class MWLattice:
    """The relation lattice of K^MW_degree(F_q) on a bounded term universe.

    Basis: eta^m [a_1..a_k] with k - m = degree, k <= max_len, m <= max_eta,
    entries in F_q^x (as ints).  Relations: all homogeneous instances of

      [ab] - [a] - [b] - eta[a][b],    [a][1-a],    eta h = 2 eta + eta^2[-1],
      [a][b] - [b][a] - eta[-1][b][a]     (eps-commutation, eps = -1 - eta[-1])

    padded by unit prefixes and extra eta factors.  Membership of a difference
    vector in the lattice is decided by exact integer elimination; it proves
    equality in the presented group (the universe is closed for the instances
    used, so at these sizes the oracle is exact).
    """

    def __init__(self, field, degree, max_len=5, max_eta=4):
        self.field = field
        self.degree = degree
        self.max_len = max_len
        self.max_eta = max_eta
        self.basis = {}
        rows = []
        for core in self._cores():
            for inst in self._instances(core):
                if inst:
                    rows.append(inst)
        self.n = len(self.basis)
        mat = []
        for r in rows:
            row = [0] * self.n
            for i, c in r.items():
                row[i] = c
            mat.append(row)
        self.pivots = _hnf_pivots(mat, self.n)

    def _idx(self, m, es):
        if len(es) - m != self.degree or len(es) > self.max_len or m > self.max_eta:
            return None
        key = (m, tuple(es))
        if key not in self.basis:
            self.basis[key] = len(self.basis)
        return self.basis[key]

    def _cores(self):
        F = self.field
        units = [v for v in range(1, F.order) if F.from_int(v)]
        mul = lambda x, y: (F.from_int(x) * F.from_int(y)).as_int()
        m1 = (-F.one).as_int()
        for a in units:
            for b in units:
                yield [((0, (mul(a, b),)), 1), ((0, (a,)), -1), ((0, (b,)), -1), ((1, (a, b)), -1)]
        for a in units:
            am = F.from_int(a)
            one_minus = (F.one - am).as_int()
            if one_minus:
                yield [((0, (a, one_minus)), 1)]
        yield [((1, ()), 2), ((2, (m1,)), 1)]  # eta h
        for a in units:
            for b in units:
                yield [((0, (a, b)), 1), ((0, (b, a)), 1), ((1, (m1, b, a)), 1)]

    def _instances(self, core):
        F = self.field
        units = [v for v in range(1, F.order) if F.from_int(v)]
        pads = [()]
        pads.extend((u,) for u in units)
        pads.extend(itertools.product(units, repeat=2))
        for extra_eta in range(0, 3):
            for pre in pads:
                vec = {}
                ok = True
                for (m, es), c in core:
                    i = self._idx(m + extra_eta, tuple(pre) + es)
                    if i is None:
                        ok = False
                        break
                    vec[i] = vec.get(i, 0) + c
                if ok:
                    yield {i: c for i, c in vec.items() if c}

    def vector(self, terms):
        """terms: {(m, int-entry-tuple): coeff} -> dense vector (None if out of range)."""
        v = [0] * self.n
        for (m, es), c in terms.items():
            i = self._idx(m, tuple(es))
            if i is None:
                return None
            if i >= len(v):
                v.extend([0] * (i + 1 - len(v)))
            v[i] += c
        return v

    def equal(self, terms1, terms2):
        t1 = self.vector(terms1)
        t2 = self.vector(terms2)
        if t1 is None or t2 is None:
            return None  # outside the universe
        diff = [a - b for a, b in zip(t1, t2)]
        return _reduces_to_zero(self.pivots, diff, self.n)


def _hnf_pivots(rows, n):
    """Column-by-column integer elimination; returns {col: pivot row}."""
    rows = [r[:] for r in rows if any(r)]
    pivots = {}
    for col in range(n):
        active = [r for r in rows if r[col] != 0]
        if not active:
            continue
        piv = active[0]
        for r in active[1:]:
            a, b = piv[col], r[col]
            g, u, v = _xgcd(a, b)
            new_piv = [u * x + v * y for x, y in zip(piv, r)]
            new_r = [(b // g) * x - (a // g) * y for x, y in zip(piv, r)]
            piv[:] = new_piv
            r[:] = new_r
        pivots[col] = piv[:]
        rows = [r for r in rows if r[col] == 0 and any(r)]
    return pivots


def _reduces_to_zero(pivots, t, n):
    t = t[:]
    for col in range(n):
        if t[col] == 0:
            continue
        piv = pivots.get(col)
        if piv is None or t[col] % piv[col] != 0:
            return False
        q = t[col] // piv[col]
        for i in range(col, n):
            t[i] -= q * piv[i]
    return not any(t)


def _xgcd(a, b):
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    return old_r, old_s, old_t