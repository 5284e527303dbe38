"""Graded line bundles: the coefficient/twist bookkeeping device.

A `GradedLine` is (grade, basis token).  Tokens are canonical tuple trees:
("one",), ("dt", <field name>), ("omega", <tag>), ("nbar", <tag>, <display>),
("dual", tok), ("tensor", tok, ...).  Tensor is associative with grade
addition; duals invert grades; units ("one",) are dropped from tensors.

Hom-sets across distinct grades are empty: `TwistIso` construction rejects a
grade mismatch.  An iso carries the unit scalar expressing the target basis
in the source basis; changing a uniformizer pi -> u*pi changes the conormal
basis by u, which downstream acts on elements through gamma_<u> (R4a).

Grade conventions (recorded once, used by all golden files): omega of a
transcendence-degree-d catalog field over the base carries grade d; Lambda_x
carries grade dim cl(x); N_v carries grade 1.  Wedge bases at dimension-2
closed points are ordered fiber-direction first (tbar before pibar).
"""

from .errors import err

ONE = ("one",)


def _flatten(tok):
    if tok[0] == "tensor":
        out = []
        for part in tok[1:]:
            inner = _flatten(part)
            if inner[0] == "tensor":
                out.extend(inner[1:])
            elif inner != ONE:
                out.append(inner)
        # cancel L (x) dual(L) pairs (canonical pairing, scalar 1 for lines)
        changed = True
        while changed:
            changed = False
            for i in range(len(out)):
                for j in range(len(out)):
                    if i != j and out[j] == ("dual", out[i]):
                        for k in sorted((i, j), reverse=True):
                            out.pop(k)
                        changed = True
                        break
                if changed:
                    break
        if not out:
            return ONE
        if len(out) == 1:
            return out[0]
        return ("tensor", *out)
    if tok[0] == "dual":
        inner = _flatten(tok[1])
        if inner == ONE:
            return ONE
        if inner[0] == "dual":
            return inner[1]
        if inner[0] == "tensor":
            return _flatten(("tensor", *(("dual", p) for p in inner[1:])))
        return ("dual", inner)
    return tok


class GradedLine:
    """A 1-dimensional twist with an integer grade and a labeled basis vector."""

    __slots__ = ("grade", "token")

    def __init__(self, grade, token=ONE):
        self.grade = grade
        self.token = _flatten(token)

    def tensor(self, other):
        return GradedLine(self.grade + other.grade, ("tensor", self.token, other.token))

    def dual(self):
        return GradedLine(-self.grade, ("dual", self.token))

    def shift(self, n):
        """Same basis, grade moved by n (the trivial grade-n line tensored in)."""
        return GradedLine(self.grade + n, self.token)

    def __eq__(self, other):
        return (
            isinstance(other, GradedLine)
            and self.grade == other.grade
            and self.token == other.token
        )

    def __hash__(self):
        return hash((self.grade, self.token))

    def render(self):
        return _render(self.token)

    def __repr__(self):
        return f"({self.render()}, {self.grade})"


def _render(tok):
    if tok == ONE:
        return "1"
    if tok[0] == "dt":
        return f"d{tok[1]}"
    if tok[0] == "omega":
        return f"w({tok[1]})"
    if tok[0] == "nbar":
        return tok[1]
    if tok[0] == "dual":
        return f"dual({_render(tok[1])})"
    if tok[0] == "tensor":
        return "^".join(_render(p) for p in tok[1:])
    return repr(tok)


def trivial_line(grade=0):
    return GradedLine(grade, ONE)


class TwistIso:
    """Iso of graded lines of equal grade; scalar = target basis in source basis units."""

    __slots__ = ("src", "dst", "scalar")

    def __init__(self, src, dst, scalar):
        if src.grade != dst.grade:
            raise err("grade-mismatch", f"{src!r} vs {dst!r}")
        if not scalar:
            raise err("zero-argument", "iso scalar must be a unit")
        self.src = src
        self.dst = dst
        self.scalar = scalar

    def compose(self, other):
        """self after other (other: A->B, self: B->C gives A->C)."""
        if other.dst != self.src:
            raise err("grade-mismatch", "isos not composable")
        return TwistIso(other.src, self.dst, self.scalar * other.scalar)

    def inverse(self):
        one = self.scalar / self.scalar
        return TwistIso(self.dst, self.src, one / self.scalar)

    def __repr__(self):
        return f"TwistIso({self.src!r} -> {self.dst!r}, {self.scalar!r})"


def identity_iso(line, field):
    return TwistIso(line, line, field.one)


# -- catalog assignments -----------------------------------------------------


def omega_line(field_tag, trdeg, var=None):
    """Canonical sheaf line per catalog rule.

    trdeg 0 fields (finite fields, the base residue field, finite extensions
    of the fraction field presented as residue fields) get their own omega
    token at grade 0 -- trivial ("one") when the field is finite or the base
    residue field, a tagged token otherwise.  F(t)/F gets basis dt, grade 1.
    """
    if trdeg == 0:
        return trivial_line(0) if field_tag is None else GradedLine(0, ("omega", field_tag))
    if trdeg == 1:
        return GradedLine(1, ("dt", var or "t"))
    if trdeg == 2:
        return GradedLine(2, ("tensor", ("dt", var or "t"), ("omega", field_tag or "base")))
    raise err("unsupported-scheme", f"no omega rule for trdeg {trdeg}")


def lambda_line(omega, closure_dim):
    """Lambda_x = (omega of kappa(x), dim of the closure of x)."""
    return GradedLine(closure_dim, omega.token)


def normal_line(display):
    """N_v = (m_v/m_v^2, 1) with basis named after the chosen uniformizer."""
    return GradedLine(1, ("nbar", display))


def uniformizer_change(display_old, display_new, ubar):
    """TwistIso for pi -> u*pi on N_v: new basis = ubar * old basis."""
    return TwistIso(normal_line(display_old), normal_line(display_new), ubar)
