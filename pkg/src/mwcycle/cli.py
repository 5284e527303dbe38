"""Batch command-line interface with machine-readable reports.

Subcommands: residue, canon, axioms, gersten, probe, spectral,
counterexample, golden.  Reports are JSON (sorted keys); the human text is a
rendering of the same JSON.  Identical argv + seed produce byte-identical
reports: the ms field stays null unless --timing is given, which is outside
the determinism contract.

Exit codes: 0 all verdicts pass, 1 a computation produced a counterexample
or failure (witness in the report), 2 usage errors.
"""

import argparse
import json
import os
import random
import sys
import time

from .errors import MWError, err
from .fields import GF, Poly
from .funcfield import FF, FunctionField
from .twists import GradedLine, ONE, trivial_line
from .mwk import MWElement, canonicalize, mw_residue


# -- tiny parsers --------------------------------------------------------------


def parse_field(name):
    name = name.strip()
    if "(" in name:
        base, var = name.split("(")
        var = var.rstrip(")")
        return FF(parse_field(base), var)
    if not name.startswith("F"):
        raise err("parse-error", f"bad field literal {name!r}")
    q = int(name[1:])
    p = next(d for d in range(2, q + 1) if q % d == 0)
    k = 0
    qq = q
    while qq % p == 0:
        qq //= p
        k += 1
    if qq != 1:
        raise err("parse-error", f"{q} is not a prime power")
    return GF(p, k)


class _Tok:
    def __init__(self, text):
        self.text = text
        self.pos = 0

    def peek(self):
        while self.pos < len(self.text) and self.text[self.pos] == " ":
            self.pos += 1
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def take(self):
        c = self.peek()
        self.pos += 1
        return c


def parse_poly(ff, text):
    """Arithmetic expressions in the field variable: t^2+1, 2*t, (t+1)*(t-1), 1/t."""
    tok = _Tok(text)
    val = _parse_sum(ff, tok)
    if tok.peek():
        raise err("parse-error", f"trailing input in {text!r}")
    return val


def _parse_sum(ff, tok):
    acc = _parse_product(ff, tok)
    while tok.peek() in "+-":
        op = tok.take()
        rhs = _parse_product(ff, tok)
        acc = acc + rhs if op == "+" else acc - rhs
    return acc


def _parse_product(ff, tok):
    acc = _parse_power(ff, tok)
    while tok.peek() in "*/":
        op = tok.take()
        rhs = _parse_power(ff, tok)
        acc = acc * rhs if op == "*" else acc / rhs
    return acc


def _parse_power(ff, tok):
    base = _parse_atom(ff, tok)
    if tok.peek() == "^":
        tok.take()
        neg = tok.peek() == "-"
        if neg:
            tok.take()
        n = _parse_int(tok)
        return base ** (-n if neg else n)
    return base


def _parse_atom(ff, tok):
    c = tok.peek()
    if c == "(":
        tok.take()
        v = _parse_sum(ff, tok)
        if tok.take() != ")":
            raise err("parse-error", "unbalanced parentheses")
        return v
    if c == "-":
        tok.take()
        return -_parse_atom(ff, tok)
    if c.isdigit():
        return ff.coerce(_parse_int(tok))
    if c.isalpha():
        name = ""
        while tok.peek().isalnum():
            name += tok.take()
        if name == ff.var:
            return ff.x
        if isinstance(ff.base, FunctionField) and name == ff.base.var:
            return ff.coerce(ff.base.x)
        raise err("parse-error", f"unknown symbol {name!r}")
    raise err("parse-error", f"unexpected {c!r}")


def _parse_int(tok):
    digits = ""
    while tok.peek().isdigit():
        digits += tok.take()
    if not digits:
        raise err("parse-error", "expected an integer")
    return int(digits)


def parse_place(ff, text):
    text = text.strip()
    if text.startswith("place:"):
        text = text[len("place:") :]
    if text == "inf":
        return ff.place_inf()
    if text == "s-adic":
        return ff.place(Poly.x(ff.base))
    if text.startswith("(") and text.endswith(")"):
        text = text[1:-1]
    poly = parse_poly(ff, text)
    return ff.place(poly.num.monic())


def parse_element(field, text):
    """Element literals: `eta^1*[a,b] + 2*[c] - 3` (the twist basis is implied)."""
    text = text.strip()
    terms = {}
    degree = None
    for sign, chunk in _split_terms(text):
        coeff, m, entries = _parse_term(field, chunk)
        es = tuple(entries)
        deg = len(es) - m
        if degree is None:
            degree = deg
        elif degree != deg:
            raise err("mixed-degree", "inhomogeneous element literal")
        key = (m, es)
        terms[key] = terms.get(key, 0) + sign * coeff
    if degree is None:
        degree = 0
    return MWElement(field, GradedLine(degree, ONE), terms)


def _split_terms(text):
    out = []
    depth = 0
    cur = ""
    sign = 1
    for ch in text:
        if ch in "([":
            depth += 1
        if ch in ")]":
            depth -= 1
        if depth == 0 and ch in "+-" and cur.strip():
            out.append((sign, cur))
            sign = 1 if ch == "+" else -1
            cur = ""
        elif depth == 0 and ch in "+-" and not cur.strip():
            sign = sign if ch == "+" else -sign
        else:
            cur += ch
    if cur.strip():
        out.append((sign, cur))
    return out


def _parse_term(field, chunk):
    chunk = chunk.strip()
    coeff = 1
    m = 0
    entries = []
    while chunk:
        if chunk[0].isdigit():
            i = 0
            while i < len(chunk) and chunk[i].isdigit():
                i += 1
            coeff *= int(chunk[:i])
            chunk = chunk[i:].lstrip().lstrip("*").lstrip()
        elif chunk.startswith("eta"):
            chunk = chunk[3:]
            if chunk.startswith("^"):
                i = 1
                while i < len(chunk) and chunk[i].isdigit():
                    i += 1
                m = int(chunk[1:i])
                chunk = chunk[i:]
            else:
                m = 1
            chunk = chunk.lstrip().lstrip("*").lstrip()
        elif chunk.startswith("["):
            close = chunk.index("]")
            inner = chunk[1:close]
            if inner.strip():
                for part in _split_commas(inner):
                    entries.append(_entry(field, part))
            chunk = chunk[close + 1 :].lstrip().lstrip("*").lstrip()
        else:
            raise err("parse-error", f"cannot parse term {chunk!r}")
    return coeff, m, entries


def _split_commas(text):
    out = []
    depth = 0
    cur = ""
    for ch in text:
        if ch == "(":
            depth += 1
        if ch == ")":
            depth -= 1
        if ch == "," and depth == 0:
            out.append(cur)
            cur = ""
        else:
            cur += ch
    if cur.strip():
        out.append(cur)
    return out


def _entry(field, text):
    text = text.strip()
    if isinstance(field, FunctionField):
        return parse_poly(field, text)
    # finite field: integer literals (index encoding)
    return field.from_int(int(text)) if text.isdigit() else field.coerce(int(text))


# -- report plumbing -------------------------------------------------------------


def _emit(args, report, exit_code):
    payload = json.dumps(report, sort_keys=True, separators=(",", ":")) + "\n"
    sys.stdout.write(payload)
    if not args.json:
        for line in _render_text(report):
            sys.stderr.write(line + "\n")
    return exit_code


def _render_text(report, indent=0):
    pad = "  " * indent
    for k in sorted(report):
        v = report[k]
        if isinstance(v, dict):
            yield f"{pad}{k}:"
            yield from _render_text(v, indent + 1)
        else:
            yield f"{pad}{k}: {v}"


def _base_report(args, command):
    seed = args.seed if args.seed is not None else int(os.environ.get("MWC_SEED", "1"))
    return {
        "command": command,
        "seed": seed,
        "ms": None,
        "inputs": {},
        "outputs": {},
        "verdicts": {},
    }, seed


def _finish(args, report, t0):
    if args.timing:
        report["ms"] = int((time.time() - t0) * 1000)
    ok = all(v in ("pass", True, "zero") for v in report["verdicts"].values())
    return _emit(args, report, 0 if ok else 1)


# -- subcommands -----------------------------------------------------------------


def _cmd_residue(args):
    t0 = time.time()
    report, seed = _base_report(args, "residue")
    field = parse_field(args.field)
    place = parse_place(field, args.place)
    x = parse_element(field, args.element)
    pi = parse_poly(field, args.pi) if args.pi else None
    r = mw_residue(x, place, pi, nbar_name="pibar")
    report["inputs"] = {"field": args.field, "place": args.place, "element": args.element}
    report["outputs"] = {"residue": repr(r), "canonical": repr(canonicalize(r, check=False))}
    report["verdicts"]["computed"] = "pass"
    return _finish(args, report, t0)


def _cmd_canon(args):
    t0 = time.time()
    report, seed = _base_report(args, "canon")
    field = parse_field(args.field)
    x = parse_element(field, args.element)
    c = canonicalize(x, check=False)
    report["inputs"] = {"field": args.field, "element": args.element}
    report["outputs"] = {
        "canonical": repr(c),
        "is_zero": c.is_zero(),
        "rendering": "0" if c.is_zero() else repr(c),
    }
    report["verdicts"]["computed"] = "pass"
    return _finish(args, report, t0)


def _instance_by_name(name, p):
    from .cyclemod import instance_eg1, instance_km, instance_kmw
    from .surface import DVRBase

    if name == "kmw":
        return instance_kmw()
    if name == "km":
        return instance_km()
    if name == "eg1":
        return instance_eg1(DVRBase(GF(p)))
    raise err("parse-error", f"unknown instance {name!r}")


def _cmd_axioms(args):
    from .cyclemod import AXIOM_IDS, check_axiom

    t0 = time.time()
    report, seed = _base_report(args, "axioms")
    inst = _instance_by_name(args.instance, args.p)
    axioms = args.axioms.split(",") if args.axioms else list(AXIOM_IDS)
    anchors = []
    for name in (args.anchors or f"F{args.p}").split(","):
        anchors.append(parse_field(name))
    results = {}
    for ax in axioms:
        for anchor in anchors:
            if ax == "R5" and isinstance(anchor, FunctionField):
                continue
            rep = check_axiom(inst, ax, seed=seed, samples=args.samples, anchor=anchor)
            key = f"{ax}@{getattr(anchor, 'name', anchor)}"
            results[key] = rep.as_json()
            report["verdicts"][key] = "pass" if rep.passed else "fail"
    report["inputs"] = {"instance": args.instance, "samples": args.samples}
    report["outputs"] = results
    return _finish(args, report, t0)


def _cmd_gersten(args):
    from .cyclemod import _random_surface_elt, random_element
    from .gersten import Cochain, GerstenComplex
    from .schemes import SurfaceScheme, parse_scheme
    from .mwk import MWElement as MW

    t0 = time.time()
    report, seed = _base_report(args, "gersten")
    inst = _instance_by_name(args.instance, args.p)
    sch = parse_scheme(args.scheme, default_p=args.p)
    rng = random.Random(seed)
    bad = 0
    for i in range(args.samples):
        if isinstance(sch, SurfaceScheme):
            val = _random_surface_elt(sch, rng)
            cx = GerstenComplex(sch, inst, trivial_line(val.line.grade - 2))
        else:
            cx = GerstenComplex(sch, inst, trivial_line(rng.randrange(-1, 2)))
            gen_field = sch.point(("xi",)).kappa if ("xi",) in sch._points else sch.point(("eta",)).kappa
            line = cx.term_line(sch.point(("xi",)) if ("xi",) in sch._points else sch.point(("eta",)))
            val = MW(gen_field, line, random_element(gen_field, line.grade, rng, max_deg=args.degree_bound).terms)
        key = ("xi",) if ("xi",) in sch._points else ("eta",)
        dd = cx.differential(cx.differential(Cochain(cx, 0, {key: val})))
        if not dd.is_zero():
            bad += 1
    report["inputs"] = {"scheme": args.scheme, "samples": args.samples}
    report["outputs"] = {"dd_failures": bad}
    report["verdicts"]["d_o_d_zero"] = "pass" if bad == 0 else "fail"
    return _finish(args, report, t0)


def _cmd_probe(args):
    from .cyclemod import _random_surface_elt, random_element
    from .gersten import Cochain, GerstenComplex, exactness_probe
    from .schemes import CurveScheme, SpecDVRScheme, SurfaceScheme, parse_scheme
    from .mwk import MWElement as MW

    t0 = time.time()
    report, seed = _base_report(args, "probe")
    inst = _instance_by_name(args.instance, args.p)
    sch = parse_scheme(args.scheme, default_p=args.p)
    rng = random.Random(seed)
    p = args.degree
    verdicts = []
    witness = None
    for i in range(args.samples):
        cx, z = _sample_cocycle(sch, inst, p, rng, args.degree_bound)
        if z is None:
            continue
        res = exactness_probe(cx, p, z)
        verdicts.append(res.verdict)
        if res.verdict != "pass" and witness is None:
            witness = res.as_json()
    report["inputs"] = {"scheme": args.scheme, "degree": p, "samples": args.samples}
    report["outputs"] = {"verdicts": verdicts, "witness": witness}
    all_pass = bool(verdicts) and all(v == "pass" for v in verdicts)
    report["verdicts"]["probe"] = "pass" if all_pass else (verdicts and verdicts[0] or "inconclusive")
    return _finish(args, report, t0)


def _sample_cocycle(sch, inst, p, rng, degree_bound):
    from .cyclemod import _random_surface_elt, random_element
    from .gersten import Cochain, GerstenComplex
    from .schemes import CurveScheme, SpecDVRScheme, SurfaceScheme
    from .mwk import MWElement as MW

    if isinstance(sch, SurfaceScheme):
        val = _random_surface_elt(sch, rng)
        cx = GerstenComplex(sch, inst, trivial_line(val.line.grade - 2))
        if p == 1:
            z = cx.differential(Cochain(cx, 0, {("xi",): val}))
            return cx, (z if z.data else None)
        origin = sch.origin()
        line = cx.term_line(origin)
        v = random_element(origin.kappa, line.grade, rng)
        return cx, Cochain(cx, 2, {origin.key: MW(origin.kappa, line, v.terms)})
    if isinstance(sch, SpecDVRScheme):
        cx = GerstenComplex(sch, inst, trivial_line(rng.randrange(-1, 2)))
        line = cx.term_line(sch.s)
        v = random_element(sch.dvr.res_field, line.grade, rng)
        return cx, Cochain(cx, 1, {("s",): MW(sch.dvr.res_field, line, v.terms)})
    if isinstance(sch, CurveScheme):
        cx = GerstenComplex(sch, inst, trivial_line(rng.randrange(-1, 2)))
        data = {}
        pts = sch.restrict if sch.restrict is not None else sch.closed_points(max_degree=min(degree_bound, 2))
        for pt in pts:
            if pt.place.kind == "inf" or rng.random() < 0.3:
                continue
            line = cx.term_line(pt)
            v = random_element(pt.kappa, line.grade, rng)
            if v.terms:
                data[pt.key] = MW(pt.kappa, line, v.terms)
        return cx, (Cochain(cx, 1, data) if data else None)
    raise err("unsupported-scheme", sch.name)


def _cmd_spectral(args):
    from .gersten import GerstenComplex, filtration_e1
    from .schemes import affine_line_over_dvr
    from .surface import DVRBase

    t0 = time.time()
    report, seed = _base_report(args, "spectral")
    inst = _instance_by_name(args.instance, args.p)
    sch = affine_line_over_dvr(DVRBase(GF(args.p)))
    cx = GerstenComplex(sch, inst, trivial_line(0))
    rep = filtration_e1(cx, samples=args.samples, rng=random.Random(seed))
    report["inputs"] = {"p": args.p, "samples": args.samples}
    report["outputs"] = rep
    ok = not rep["failures"]
    report["verdicts"]["filtration"] = "pass" if ok else "fail"
    return _finish(args, report, t0)


def _cmd_counterexample(args):
    from .cyclemod import instance_eg1, random_element
    from .gersten import Cochain, GerstenComplex, exactness_probe
    from .schemes import SpecDVRScheme
    from .surface import DVRBase
    from .mwk import MWElement as MW

    t0 = time.time()
    report, seed = _base_report(args, "counterexample")
    dvr = DVRBase(GF(args.p))
    inst = instance_eg1(dvr)
    sch = SpecDVRScheme(dvr)
    cx = GerstenComplex(sch, inst, trivial_line(args.degree))
    line = cx.term_line(sch.s)
    witness_val = MW(dvr.res_field, line, {(0, ()): 1})  # <1> in GW(F_p)
    z = Cochain(cx, 1, {("s",): witness_val})
    res = exactness_probe(cx, 1, z)
    report["inputs"] = {"p": args.p, "degree": args.degree}
    report["outputs"] = {
        "verdict": res.verdict,
        "witness": f"<1> in GW(F{args.p}) at the closed point",
        "complex": "0 -> M(eta) -> M(s) -> 0 with M(eta) = 0",
    }
    report["verdicts"]["exactness_degree1"] = res.verdict
    return _finish(args, report, t0)


def _cmd_golden(args):
    t0 = time.time()
    report, seed = _base_report(args, f"golden {args.fixture}")
    if args.fixture == "step4":
        out, ok = _golden_step4(args.p)
    elif args.fixture == "step1":
        out, ok = _golden_step1(args.p, seed)
    elif args.fixture == "lemma31":
        out, ok = _golden_lemma31(args.p, seed)
    else:
        raise err("parse-error", f"unknown fixture {args.fixture!r}")
    report["inputs"] = {"p": args.p}
    report["outputs"] = out
    report["verdicts"][args.fixture] = "pass" if ok else "fail"
    return _finish(args, report, t0)


def _golden_step4(p):
    from .cyclemod import instance_kmw
    from .gersten import Cochain, GerstenComplex
    from .schemes import semilocal_surface
    from .surface import DVRBase

    Fp = GF(p)
    dvr = DVRBase(Fp)
    sch = semilocal_surface(dvr)
    inst = instance_kmw()
    cx = GerstenComplex(sch, inst, trivial_line(0))
    tower = sch.tower
    val = MWElement(tower, cx.term_line(sch.xi), {(0, (tower.s_elt(), tower.t_elt())): 1})
    d1 = cx.differential(Cochain(cx, 0, {("xi",): val}))
    origin = sch.origin()
    wline = cx.term_line(origin)
    pieces = {}
    total = None
    for key in sorted(d1.data):
        single = cx.differential(Cochain(cx, 1, {key: d1.data[key]}))
        v = single.data.get(origin.key)
        if v is None:
            continue
        name = "x1:(t)" if key == ("atom", "t") else "x2:(pi)"
        minus_one = MWElement(Fp, wline, {(0, ()): -1})
        plus_one = MWElement(Fp, wline, {(0, ()): 1})
        if inst.equal(v, minus_one):
            pieces[name] = f"-1 (x) {wline.render()}"
        elif inst.equal(v, plus_one):
            pieces[name] = f"+1 (x) {wline.render()}"
        else:
            pieces[name] = repr(v)
        total = v if total is None else total + v
    sum_zero = total is None or inst.is_zero(total)
    ok = (
        pieces.get("x1:(t)", "").startswith("-1")
        and pieces.get("x2:(pi)", "").startswith("+1")
        and sum_zero
    )
    return {"pieces": pieces, "sum": "0" if sum_zero else repr(total)}, ok


def _golden_step1(p, seed):
    from .cyclemod import instance_kmw, random_element
    from .funcfield import crt_uniformizer
    from .surface import DVRBase
    from .twists import normal_line
    from .mwk import mw_is_zero

    Fp = GF(p)
    dvr = DVRBase(Fp)
    Kf = dvr.frac
    inst = instance_kmw()
    ps = dvr.s_place
    pdist = Kf.place(Poly(Fp, (-Fp.one, Fp.one)))
    rng = random.Random(seed)
    checks = 0
    for i in range(10):
        n = rng.randrange(-2, 3)
        a0 = random_element(Fp, n, rng)
        line = normal_line("pibar").dual().tensor(GradedLine(n + 1, ONE))
        alpha = MWElement(Fp, line, a0.terms)
        beta, pi = inst.r5(Kf, [ps, pdist], alpha, base=dvr)
        r1 = inst.residue(beta, ps, pi, "pibar")
        if not inst.equal(r1.with_line(alpha.line), alpha):
            return {"fail_at": i}, False
        if not inst.is_zero(inst.residue(beta, pdist)):
            return {"fail_at": i, "which": "disturbing"}, False
        checks += 1
    return {"samples": checks, "pi_example": repr(crt_uniformizer([ps, pdist], 0))}, True


def _golden_lemma31(p, seed):
    from .cyclemod import instance_kmw, random_element
    from .gersten import lemma31_composite

    Fp = GF(p)
    inst = instance_kmw()
    rng = random.Random(seed)
    for i in range(10):
        x = random_element(Fp, rng.randrange(-1, 2), rng)
        theta, leak = lemma31_composite(Fp, inst, x)
        if not inst.equal(theta, x):
            return {"fail_at": i}, False
        if leak:
            return {"fail_at": i, "which": "del o g~^* != 0"}, False
    return {"samples": 10, "identity": "Theta o del o [t] o g~^* = id"}, True


# -- argument plumbing -----------------------------------------------------------


def build_parser():
    ap = argparse.ArgumentParser(prog="mwcycle", description=__doc__)
    ap.add_argument("--json", action="store_true", help="JSON only (no text rendering)")
    ap.add_argument("--timing", action="store_true", help="fill the ms field (breaks byte-stability)")
    sub = ap.add_subparsers(dest="cmd", required=True)

    def common(sp):
        sp.add_argument("--p", type=int, default=3)
        sp.add_argument("--q", type=int, default=None, help="alias for --p on prime fields")
        sp.add_argument("--seed", type=int, default=None)
        sp.add_argument("--samples", type=int, default=20)
        sp.add_argument("--degree-bound", dest="degree_bound", type=int, default=2)

    sp = sub.add_parser("residue")
    common(sp)
    sp.add_argument("--field", required=True)
    sp.add_argument("--place", required=True)
    sp.add_argument("--pi", default=None)
    sp.add_argument("element")
    sp.set_defaults(fn=_cmd_residue)

    sp = sub.add_parser("canon")
    common(sp)
    sp.add_argument("--field", default="F3")
    sp.add_argument("element")
    sp.set_defaults(fn=_cmd_canon)

    sp = sub.add_parser("axioms")
    common(sp)
    sp.add_argument("--instance", default="kmw")
    sp.add_argument("--axioms", default=None)
    sp.add_argument("--anchors", default=None)
    sp.set_defaults(fn=_cmd_axioms)

    sp = sub.add_parser("gersten")
    common(sp)
    sp.add_argument("--instance", default="kmw")
    sp.add_argument("--scheme", required=True)
    sp.set_defaults(fn=_cmd_gersten)

    sp = sub.add_parser("probe")
    common(sp)
    sp.add_argument("--instance", default="kmw")
    sp.add_argument("--scheme", required=True)
    sp.add_argument("--degree", type=int, default=1)
    sp.set_defaults(fn=_cmd_probe)

    sp = sub.add_parser("spectral")
    common(sp)
    sp.add_argument("--instance", default="kmw")
    sp.set_defaults(fn=_cmd_spectral)

    sp = sub.add_parser("counterexample")
    common(sp)
    sp.add_argument("--degree", type=int, default=0)
    sp.set_defaults(fn=_cmd_counterexample)

    sp = sub.add_parser("golden")
    common(sp)
    sp.add_argument("fixture", choices=("step4", "step1", "lemma31"))
    sp.set_defaults(fn=_cmd_golden)

    return ap


def main(argv=None):
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return 2 if e.code not in (0, None) else 0
    if args.q is not None:
        args.p = args.q
    try:
        return args.fn(args)
    except MWError as e:
        sys.stdout.write(json.dumps({"error": str(e)}, sort_keys=True) + "\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
