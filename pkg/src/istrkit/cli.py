"""Command line front end.

Fields are named on the command line as one of the built-in labels (Z, K49,
F229, Q21, L21, Q13, L13), as ``poly:c0,c1,...,cd`` (maximal order computed), or
as a label looked up in ``--table FILE``. Forms are either ``--diag a1,a2,...``
or ``--form FILE`` in the form file format of :mod:`istrkit.tables`.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction

from . import corpus as C
from .enumtr import EnumerationQuery, enum_totally_real
from .istr import (
    FAILS_ISTR,
    TargetRepresented,
    TargetRepresentedOverZ,
    ObstructionProof,
    find_failure_elements,
    find_failure_fields_prime_degree,
    istr_check,
    odd_totally_real_obstruction,
    omega_shift_candidates,
    scan_fields_from_table,
    verify_obstruction,
)
from .localq import REAL, DyadicCubicContext, Place, is_square_dyadic, represents_local, three_squares_k49
from .numfield import (
    canonical_embedding,
    is_totally_positive,
    make_embedding,
    order_disc,
)
from .orders import field_with_maximal_order
from .qform import DiagonalRationalForm, diag_form
from .repsearch import represent
from .suite import FAIL, paper_suite
from .tables import BadEntry, MalformedInput, bundled_cubic_table, parse_coords, parse_form, read_field_table

NAMED = {
    "Z": C.Z,
    "K49": C.K49,
    "F229": C.F229,
    "Q21": C.Q21,
    "L21": C.L21,
    "Q13": C.Q13,
    "L13": C.L13,
}


class Out:
    def __init__(self, records: bool):
        self.records = records

    def emit(self, kind, status=None, witness=None, exhaustive=None, nodes=None, millis=None, text=None, **extra):
        if self.records:
            rec = {"kind": kind, "status": status, "witness": witness, "exhaustive": exhaustive, "nodes": nodes, "millis": millis}
            rec.update(extra)
            print(json.dumps(rec, sort_keys=False))
        elif text is not None:
            print(text)


def _ints(s: str) -> list[int]:
    try:
        return [int(t) for t in s.split(",")]
    except ValueError:
        raise MalformedInput(f"expected comma-separated integers, got {s!r}")


def resolve_field(name: str, table: str | None = None):
    if name in NAMED:
        return NAMED[name]()
    if name.startswith("poly:"):
        f = _ints(name[5:])
        if f[-1] != 1:
            raise MalformedInput("polynomial must be monic (constant term first)")
        return field_with_maximal_order(f, label=name)
    if table:
        for e in read_field_table(table):
            if e.label == name:
                if isinstance(e, BadEntry):
                    raise MalformedInput(f"table line {e.lineno}: {e.error}")
                return e.build()
    raise MalformedInput(f"unknown field {name!r}")


def resolve_form(args, fld):
    if getattr(args, "form", None):
        with open(args.form, encoding="utf-8") as fh:
            return parse_form(fh.read(), fld)
    if getattr(args, "diag", None):
        return diag_form(fld, _ints(args.diag))
    raise MalformedInput("give --diag or --form")


def _wit(w):
    return None if w is None else [list(x.coords) for x in w.vector]


def _report_search(out, rep, label="represent"):
    for w in rep.witnesses:
        out.emit("witness", status="found", witness=_wit(w), text="witness " + " ; ".join(",".join(map(str, x.coords)) for x in w.vector))
    status = "represented" if rep.found else ("not-represented" if rep.exhaustive else "inconclusive")
    out.emit(
        label,
        status=status,
        witness=_wit(rep.witnesses[0]) if rep.witnesses else None,
        exhaustive=rep.exhaustive,
        nodes=rep.nodes_visited,
        millis=round(rep.millis, 3),
        count=len(rep.witnesses),
        text=f"{status}: {len(rep.witnesses)} witness(es), exhaustive={rep.exhaustive}, nodes={rep.nodes_visited}, {rep.millis:.1f} ms",
    )


def _embedding(args, base, ext):
    if args.image:
        return make_embedding(base, ext, parse_coords(args.image, ext))
    if base.degree == 1:
        return canonical_embedding(ext)
    raise MalformedInput("--image is needed when the base field is not Q")


# ------------------------------------------------------------------ commands


def cmd_field_info(args, out):
    fld = resolve_field(args.field, args.table)
    t0 = time.perf_counter()
    disc = order_disc(fld)
    out.emit(
        "field",
        status="ok",
        millis=round((time.perf_counter() - t0) * 1000, 3),
        label=fld.label,
        degree=fld.degree,
        disc=disc,
        minpoly=list(fld.minpoly),
        totally_real=fld.totally_real,
        basis=[[str(c) for c in r] for r in fld.basis],
        text=f"{fld.label}: degree {fld.degree}, order discriminant {disc}, totally real {fld.totally_real}\n"
        f"minpoly (constant first) {','.join(map(str, fld.minpoly))}\n"
        + "\n".join("b%d = %s" % (i + 1, " ".join(str(c) for c in r)) for i, r in enumerate(fld.basis)),
    )
    return 0


def cmd_represent(args, out):
    fld = resolve_field(args.field, args.table)
    Q = resolve_form(args, fld)
    a = parse_coords(args.target, fld)
    rep = represent(Q, a, mode=args.mode, strategy=args.strategy, node_cap=args.node_cap)
    _report_search(out, rep)
    return 0


def cmd_istr_check(args, out):
    base = resolve_field(args.base, args.table)
    ext = resolve_field(args.ext, args.table)
    e = _embedding(args, base, ext)
    Q = resolve_form(args, base)
    a = parse_coords(args.target, base)
    rep = istr_check(Q, a, e, node_cap=args.node_cap)
    for ev in rep.local_evidence:
        good = ev.get("represented", ev.get("solvable"))
        out.emit("local-evidence", status="ok" if good else "obstructed", **ev)
    ex = rep.ext_search
    out.emit(
        "istr-check",
        status=rep.status,
        witness=_wit(rep.witness),
        exhaustive=rep.base_search.exhaustive,
        nodes=rep.base_search.nodes_visited + (ex.nodes_visited if ex else 0),
        millis=round(rep.base_search.millis + (ex.millis if ex else 0), 3),
        text=f"{rep.status}" + (f"; witness over {ext.label}: " + " ; ".join(",".join(map(str, x)) for x in _wit(rep.witness)) if rep.witness else ""),
    )
    return 0


def cmd_scan_elements(args, out):
    base = resolve_field(args.base, args.table)
    ext = resolve_field(args.ext, args.table)
    e = _embedding(args, base, ext)
    Q = resolve_form(args, base)
    t0 = time.perf_counter()
    hits = find_failure_elements(Q, e, Fraction(args.bound), node_cap=args.node_cap)
    for a, rep in hits:
        out.emit("failure-element", status=rep.status, witness=_wit(rep.witness), exhaustive=True, target=list(a.coords), text=f"{','.join(map(str, a.coords))}  {rep.status}")
    out.emit("scan-elements", status="done", millis=round((time.perf_counter() - t0) * 1000, 3), count=len(hits), text=f"{len(hits)} failure element(s)")
    return 0


def cmd_scan_fields(args, out):
    Z = C.Z()
    Q = resolve_form(args, Z)
    table = read_field_table(args.table) if args.table else bundled_cubic_table()
    targets = _ints(args.targets)
    t0 = time.perf_counter()
    recs = scan_fields_from_table(Q, targets, table, node_cap=args.node_cap)
    for r in recs:
        if r.error:
            out.emit("field-scan", status="error", label=r.label, error=r.error, text=f"{r.label}: error {r.error}")
            continue
        for t, rep in zip(targets, r.reports):
            out.emit("field-scan", status=rep.status, witness=_wit(rep.witness), exhaustive=rep.ext_search.exhaustive if rep.ext_search else rep.base_search.exhaustive, label=r.label, disc=r.disc, target=t, text=f"{r.label} (disc {r.disc}) target {t}: {rep.status}")
    n = sum(r.failure_found for r in recs)
    out.emit("scan-fields", status="done", millis=round((time.perf_counter() - t0) * 1000, 3), count=n, text=f"{len(recs)} field(s) scanned, {n} with a failure")
    return 0


def cmd_failure_fields(args, out):
    Q = resolve_form(args, C.Z())
    t0 = time.perf_counter()
    res = find_failure_fields_prime_degree(Q, args.target, args.degree, node_cap=args.node_cap)
    for L, rep in res:
        out.emit("failure-field", status=rep.status, witness=_wit(rep.witness), minpoly=list(L.minpoly), disc=order_disc(L), text=f"{','.join(map(str, L.minpoly))} (disc {order_disc(L)}): {rep.status}")
    out.emit("failure-fields", status="done", exhaustive=all(r.status == FAILS_ISTR for _, r in res), millis=round((time.perf_counter() - t0) * 1000, 3), count=len(res), text=f"{len(res)} field(s)")
    return 0


def cmd_enum(args, out):
    q = EnumerationQuery(args.degree, Fraction(args.house), require_irreducible=args.irreducible, degree_min=args.min_degree)
    t0 = time.perf_counter()
    res = enum_totally_real(q)
    for f in res:
        out.emit("poly", status="irreducible" if f.irreducible else ("unknown" if f.irreducible is None else "reducible"), coeffs=list(f.coeffs), text=f"{f}  irreducible={f.irreducible}")
    out.emit("enum-totally-real", status="done", exhaustive=True, millis=round((time.perf_counter() - t0) * 1000, 3), count=len(res), text=f"{len(res)} polynomial(s)")
    return 0


def cmd_dyadic(args, out):
    K = resolve_field(args.field, args.table)
    x = parse_coords(args.element, K)
    sq = is_square_dyadic(x, DyadicCubicContext.for_field(K))
    extra = {}
    txt = f"square in the dyadic completion: {sq}"
    if order_disc(K) == 49 and not x.is_zero() and is_totally_positive(x):
        extra["three_squares"] = three_squares_k49(x)
        txt += f"; sum of three squares: {extra['three_squares']}"
    out.emit("dyadic-square", status=str(sq).lower(), text=txt, **extra)
    return 0


def _place(s: str) -> Place:
    if s in ("inf", "real"):
        return REAL
    try:
        return Place.finite(int(s))
    except ValueError as exc:
        raise MalformedInput(str(exc))


def cmd_local(args, out):
    try:
        f = DiagonalRationalForm(tuple(Fraction(t) for t in args.diag.split(",")))
        a = Fraction(args.target)
    except (ValueError, ZeroDivisionError):
        raise MalformedInput("entries and target must be rationals")
    v = _place(args.place)
    r = represents_local(f, a, v)
    out.emit("local", status=str(r).lower(), place=str(v), text=f"represented over Q_{v}: {r}")
    return 0


def cmd_obstruction(args, out):
    Q = resolve_form(args, C.Z())
    t0 = time.perf_counter()
    try:
        res = odd_totally_real_obstruction(Q, args.target)
    except TargetRepresented as exc:
        out.emit("obstruction", status="represented", text=str(exc))
        return 0
    ms = round((time.perf_counter() - t0) * 1000, 3)
    if isinstance(res, ObstructionProof):
        ok = verify_obstruction(res)
        for c in res.cases:
            out.emit("case", status=c.eliminated_by, coordinate=c.coordinate, value=c.value, residual=c.residual, text=f"x{c.coordinate + 1} = {c.value}: residual {c.residual} eliminated by {c.eliminated_by}")
        st = res.trace_step
        out.emit("obstruction", status="proof" if ok else "proof-rejected", millis=ms, coordinates=list(st.coordinates), lower_bound=str(st.lower_bound), text=f"coordinates {[i + 1 for i in st.coordinates]} are irrational, so Tr(Q(x)) > {st.lower_bound}*d >= {st.target}*d = Tr(a); verified {ok}")
        return 0 if ok else 1
    out.emit("obstruction", status="unknown", millis=ms, reason=res.reason, text=f"unknown: {res.reason}")
    return 0


def cmd_omega_shift(args, out):
    t0 = time.perf_counter()
    hits = omega_shift_candidates(args.m, args.max, count=args.count, node_cap=args.node_cap)
    for n, w in hits:
        out.emit("omega-shift", status="found", witness=_wit(w), target=n, text=f"n = {n}: n - {args.m}w^2 = x^2 + y^2 with " + " ; ".join(",".join(map(str, x)) for x in _wit(w)))
    out.emit("omega-shift-scan", status="done", millis=round((time.perf_counter() - t0) * 1000, 3), count=len(hits), text=f"{len(hits)} value(s) of n")
    return 0


def cmd_suite(args, out):
    only = args.only.split(",") if args.only else None
    items = paper_suite(node_cap=args.node_cap, only=only)
    for it in items:
        out.emit("suite-item", status=it.status, millis=round(it.millis, 3), key=it.key, title=it.title, detail=it.detail, text=f"[{it.status:>12}] {it.key:>3} {it.title}  ({it.millis / 1000:.2f} s)  {it.detail}")
    bad = sum(it.status == FAIL for it in items)
    out.emit("paper-suite", status="fail" if bad else "pass", count=len(items), text=f"{len(items) - bad}/{len(items)} items without failure")
    return 1 if bad else 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="istrkit", description="Representations by quadratic forms over totally real orders.")
    ap.add_argument("--records", action="store_true", help="one JSON record per line")
    sub = ap.add_subparsers(dest="cmd", required=True)

    def form_args(p):
        g = p.add_mutually_exclusive_group(required=True)
        g.add_argument("--diag", help="diagonal entries, e.g. 1,1,1,37")
        g.add_argument("--form", help="form file")

    def common(p):
        p.add_argument("--table", help="field table file")
        p.add_argument("--node-cap", type=int, default=None)

    p = sub.add_parser("field-info", help="show a field and its order")
    p.add_argument("field")
    p.add_argument("--table")
    p.set_defaults(fn=cmd_field_info)

    p = sub.add_parser("represent", help="decide a in Q(O)")
    p.add_argument("--field", default="Z")
    form_args(p)
    common(p)
    p.add_argument("--target", required=True, help="coordinates of a in the integral basis")
    p.add_argument("--mode", choices=["first", "all"], default="all")
    p.add_argument("--strategy", choices=["split", "trace"], default="split")
    p.set_defaults(fn=cmd_represent)

    p = sub.add_parser("istr-check", help="compare representation over K and over L")
    p.add_argument("--base", default="Z")
    p.add_argument("--ext", required=True)
    p.add_argument("--image", help="coordinates in L of the image of the generator of K")
    form_args(p)
    common(p)
    p.add_argument("--target", required=True)
    p.set_defaults(fn=cmd_istr_check)

    p = sub.add_parser("scan-elements", help="totally positive elements up to a house bound that fail ISTR")
    p.add_argument("--base", default="Z")
    p.add_argument("--ext", required=True)
    p.add_argument("--image")
    form_args(p)
    common(p)
    p.add_argument("--bound", required=True)
    p.set_defaults(fn=cmd_scan_elements)

    p = sub.add_parser("scan-fields", help="run istr-check over every field of a table")
    form_args(p)
    common(p)
    p.add_argument("--targets", required=True, help="comma-separated integers")
    p.set_defaults(fn=cmd_scan_fields)

    p = sub.add_parser("failure-fields", help="all fields of prime degree p where a becomes represented")
    form_args(p)
    p.add_argument("--target", type=int, required=True)
    p.add_argument("--degree", type=int, default=3)
    p.add_argument("--node-cap", type=int, default=None)
    p.set_defaults(fn=cmd_failure_fields)

    p = sub.add_parser("enum-totally-real", help="monic polynomials with all roots real of bounded house")
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--min-degree", type=int, default=1)
    p.add_argument("--house", required=True, help="rational bound on the house")
    p.add_argument("--irreducible", action="store_true")
    p.set_defaults(fn=cmd_enum)

    p = sub.add_parser("dyadic-square", help="square test in the dyadic completion of a cubic order")
    p.add_argument("element", help="coordinates")
    p.add_argument("--field", default="K49")
    p.add_argument("--table")
    p.set_defaults(fn=cmd_dyadic)

    p = sub.add_parser("local", help="local representation of a rational by a diagonal form")
    p.add_argument("--diag", required=True)
    p.add_argument("--target", required=True)
    p.add_argument("--place", required=True, help="a prime or inf")
    p.set_defaults(fn=cmd_local)

    p = sub.add_parser("obstruction", help="odd totally real degree obstruction for a diagonal form over Z")
    form_args(p)
    p.add_argument("--target", type=int, required=True)
    p.set_defaults(fn=cmd_obstruction)

    p = sub.add_parser("omega-shift", help="n outside <1,1,m>(Z) with n - m w^2 a sum of two squares in K49")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--max", type=int, required=True, help="largest n to try")
    p.add_argument("--count", type=int, default=None, help="stop after this many hits")
    p.add_argument("--node-cap", type=int, default=None)
    p.set_defaults(fn=cmd_omega_shift)

    p = sub.add_parser("paper-suite", help="run the reproduction suite")
    p.add_argument("--node-cap", type=int, default=None)
    p.add_argument("--only", help="comma-separated item keys")
    p.set_defaults(fn=cmd_suite)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    out = Out(args.records)
    try:
        return args.fn(args, out)
    except (MalformedInput, OSError) as exc:
        print(f"istrkit: {exc}", file=sys.stderr)
        return 2
    except TargetRepresentedOverZ as exc:
        out.emit(args.cmd, status="represented", text=str(exc))
        return 0
    except ValueError as exc:
        print(f"istrkit: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
