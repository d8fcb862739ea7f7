"""ISTR verdicts, failure scans and the odd-degree obstruction schema."""

from __future__ import annotations

import time
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from math import floor, isqrt
from typing import Sequence

from . import poly as P
from .enumtr import EnumerationQuery, enum_totally_real, kronecker_family, sqrt_upper
from .lattice import Ellipsoid
from .localq import (
    DiagonalRationalForm,
    Place,
    obstructing_places,
    prime_factors,
    relevant_places,
    represents_local,
    represents_rational,
    solvable_mod,
)
from .numfield import (
    FieldEmbedding,
    NumberField,
    OrderElement,
    canonical_embedding,
    is_totally_positive,
    map_elem,
    order_disc,
    rational_field,
)
from .orders import field_with_maximal_order
from .qform import QuadraticForm, diag_form, evaluate, extend_scalars, rational_diagonalize
from .repsearch import NotDiagonal, SearchReport, Witness, represent

FAILS_ISTR = "FAILS_ISTR"
REPRESENTED_BASE = "REPRESENTED_BASE"
NOT_REPRESENTED_EXT = "NOT_REPRESENTED_EXT"
INCONCLUSIVE = "INCONCLUSIVE"


class TargetRepresentedOverZ(ValueError):
    pass


class TargetRepresented(ValueError):
    pass


@dataclass
class IstrReport:
    form_id: str
    base: NumberField
    ext: NumberField
    target: OrderElement
    status: str
    base_search: SearchReport
    ext_search: SearchReport | None
    local_evidence: list[dict] = dc_field(default_factory=list)

    @property
    def witness(self) -> Witness | None:
        if self.ext_search and self.ext_search.witnesses:
            return self.ext_search.witnesses[0]
        return None


def _local_evidence(Q: QuadraticForm, a: OrderElement) -> list[dict]:
    """Congruence-level and rational-completion-level evidence (weaker than integral local representation)."""
    if Q.field.degree != 1 or not Q.has_rational_coeffs():
        return []
    t = a.coords[0]
    out = []
    if t == 0:
        return out
    diag = rational_diagonalize(Q)
    for v in relevant_places(diag, t):
        out.append({"level": "rational-completion", "place": str(v), "represented": represents_local(diag, t, v)})
    det = 1
    for e in diag.entries:
        det *= e.numerator * e.denominator
    for p in sorted(set(prime_factors(2 * t * det))):
        m = p
        while m * p <= 64:
            m *= p
        if m ** Q.rank > 2_000_000 and not Q.is_diagonal():
            continue
        out.append({"level": "congruence", "modulus": m, "solvable": solvable_mod(Q, t, m)})
    return out


def istr_check(Q: QuadraticForm, a: OrderElement, e: FieldEmbedding, mode: str = "first", node_cap: int | None = None, form_id: str = "") -> IstrReport:
    base = represent(Q, a, mode=mode, node_cap=node_cap)
    ev = _local_evidence(Q, a)
    if base.found:
        return IstrReport(form_id, Q.field, e.target, a, REPRESENTED_BASE, base, None, ev)
    if not base.exhaustive:
        return IstrReport(form_id, Q.field, e.target, a, INCONCLUSIVE, base, None, ev)
    QL = extend_scalars(Q, e)
    aL = map_elem(e, a)
    ext = represent(QL, aL, mode="first", node_cap=node_cap)
    if ext.found:
        w = ext.witnesses[0]
        if evaluate(QL, list(w.vector)) != aL:
            raise AssertionError("extension witness failed re-verification")
        status = FAILS_ISTR
    elif ext.exhaustive:
        status = NOT_REPRESENTED_EXT
    else:
        status = INCONCLUSIVE
    return IstrReport(form_id, Q.field, e.target, a, status, base, ext, ev)


def _totally_positive_upto(fld: NumberField, bound) -> list[OrderElement]:
    """Totally positive a in the order with house(a) <= bound, sorted by coordinates."""
    from .numfield import house_le, is_totally_positive

    d = fld.degree
    T = [[Fraction(fld.trace_coords(fld.mult_table[i][j])) for j in range(d)] for i in range(d)]
    bound = Fraction(bound)
    out = []
    for v in Ellipsoid(T).points(d * bound * bound):
        x = OrderElement(fld, tuple(v))
        if not x.is_zero() and is_totally_positive(x) and house_le(x, bound):
            out.append(x)
    out.sort(key=lambda x: x.coords)
    return out


def find_failure_elements(Q: QuadraticForm, e: FieldEmbedding, bound, node_cap: int | None = None) -> list[tuple[OrderElement, IstrReport]]:
    fld = Q.field
    bound = Fraction(bound)
    if fld.degree == 1:
        cands = [fld.from_int(k) for k in range(1, floor(bound) + 1)]
    else:
        cands = _totally_positive_upto(fld, bound)
    hits = []
    for a in cands:
        rep = istr_check(Q, a, e, node_cap=node_cap)
        if rep.status == FAILS_ISTR:
            hits.append((a, rep))
    return hits


# ------------------------------------------------------------------ fields of prime degree


def _eval_poly_in(f: Sequence[int], x: OrderElement) -> OrderElement:
    acc = x.field.zero
    for c in reversed(f):
        acc = acc * x + c
    return acc


def poly_roots_in_field(f: Sequence[int], L: NumberField) -> list[OrderElement]:
    """All roots of the monic integer polynomial f in the order of L (exhaustive)."""
    f = P.trim(f)
    if P.count_real_roots(f) == len(f) - 1:
        g = _squarefree(f)
        B = 0
        for lo, hi in P.isolate_real_roots(g):
            while hi - lo > Fraction(1, 1024):
                lo, hi = P.refine_root(g, lo, hi)
            B = max(B, abs(lo), abs(hi))
    else:
        B = P.root_bound(f)
    d = L.degree
    T = [[Fraction(L.trace_coords(L.mult_table[i][j])) for j in range(d)] for i in range(d)]
    out = []
    for v in Ellipsoid(T).points(d * Fraction(B) ** 2):
        x = OrderElement(L, tuple(v))
        if _eval_poly_in(f, x).is_zero():
            out.append(x)
    return out


def _squarefree(f):
    g = P.pgcd(f, P.pderiv(f))
    if len(g) <= 1:
        return f
    return P.pdivmod(f, g)[0]


def _is_prime(n: int) -> bool:
    return n >= 2 and all(n % q for q in range(2, isqrt(n) + 1))


def _candidate_generators(entries: list[int], r: int, p: int, out: set, trail: list):
    """Collect minimal polynomials of degree p that some solution coordinate must generate."""
    if r == 0 or not entries:
        return
    diag = DiagonalRationalForm(tuple(entries))
    if not represents_rational(diag, r):
        trail.append(("springer", tuple(entries), r))
        return
    if len(entries) == 1:
        # x^2 = r / a_1 forces x into a field of degree <= 2
        trail.append(("single", tuple(entries), r))
        return
    i = max(range(len(entries)), key=lambda k: (entries[k], -k))
    ai = entries[i]
    B = Fraction(r, ai)
    q = EnumerationQuery(p, sqrt_upper(B), require_irreducible=True, degree_min=p, square_bound=B)
    for f in enum_totally_real(q):
        if f.irreducible is not False:
            out.add(f.coeffs)
    rest = entries[:i] + entries[i + 1:]
    z = 0
    while ai * z * z <= r:
        _candidate_generators(rest, r - ai * z * z, p, out, trail)
        z += 1


def find_failure_fields_prime_degree(Q: QuadraticForm, a: int, p: int, node_cap: int | None = None):
    """All totally real fields L of degree p (up to isomorphism) with a in Q(O_L); a must not be in Q(Z)."""
    if Q.field.degree != 1 or not Q.is_diagonal():
        raise NotDiagonal("needs a diagonal form over Z")
    if p < 3 or not _is_prime(p):
        raise ValueError("degree must be an odd prime")
    Z = Q.field
    base = represent(Q, Z.from_int(a), mode="first")
    if base.found:
        raise TargetRepresentedOverZ(f"{a} is already represented over Z")
    entries = [c.coords[0] for c in Q.diagonal()]
    gens: set = set()
    trail: list = []
    _candidate_generators(entries, a, p, gens, trail)
    fields: list[NumberField] = []
    for f in sorted(gens, key=lambda g: (P.discriminant(g), g)):
        if any(poly_roots_in_field(f, L) for L in fields):
            continue
        fields.append(field_with_maximal_order(f, label=f"deg{p}:{','.join(map(str, f))}"))
    out = []
    for L in fields:
        rep = istr_check(Q, Z.from_int(a), canonical_embedding(L), node_cap=node_cap)
        if rep.status == FAILS_ISTR:
            out.append((L, rep))
        elif rep.status == INCONCLUSIVE:
            out.append((L, rep))
    return out


@dataclass
class PairCase:
    n: int
    field: NumberField  # Q(beta), beta = 2cos(pi/n)
    beta: OrderElement
    residual: OrderElement  # a - c2 beta^2
    search: SearchReport

    @property
    def integral(self) -> bool:
        return self.search.found


def kronecker_pair_classification(c1: int, c2: int, a: int) -> list[PairCase]:
    """Solutions of c1 x^2 + c2 y^2 = a in totally real integers with y irrational or small.

    Any solution has house(y)^2 < a/c2; when that is below 4, y^2 is conjugate
    to 2 + 2cos(2pi/n) for one of the Kronecker indices n, so y = 2cos(pi/n) up
    to sign and conjugation. For each n we decide whether x can be integral in
    Q(y) by an exhaustive search for c1 x^2 = a - c2 y^2 there.
    """
    out = []
    for ent in kronecker_family(Fraction(a, c2)):
        f = ent.beta_poly
        if len(f) == 2:
            L = rational_field()
            beta = L.from_int(-f[0])
        else:
            L = field_with_maximal_order(f, label=f"2cos(pi/{ent.n})")
            beta = L.gen()
        r = a - beta * beta * c2
        out.append(PairCase(ent.n, L, beta, r, represent(diag_form(L, [c1]), r, mode="all")))
    return out


def omega_shift_candidates(m: int, n_max: int, count: int | None = None, node_cap: int | None = None) -> list[tuple[int, Witness]]:
    """n <= n_max with n not in <1,1,m>(Z) but n - m w^2 in <1,1>(O), w = 2cos(2pi/7).

    Each hit comes with the witness (x, y) over O, so (x, y, w) represents n by
    <1,1,m> over the cubic order. Stops after ``count`` hits if given.
    """
    from . import corpus as C

    K = C.K49()
    w2 = C.omega() * C.omega()
    Z = C.Z()
    Q, Q2 = diag_form(Z, [1, 1, m]), diag_form(K, [1, 1])
    out = []
    for n in range(1, n_max + 1):
        r = n - w2 * m
        if not is_totally_positive(r):
            continue
        if represent(Q, Z.from_int(n), mode="first", node_cap=node_cap).found:
            continue
        rep = represent(Q2, r, mode="first", node_cap=node_cap)
        if rep.found:
            out.append((n, rep.witnesses[0]))
            if count is not None and len(out) >= count:
                break
    return out


# ------------------------------------------------------------------ discriminant cap


def cubic_disc_cap(Q: QuadraticForm, i: int, a: int) -> int:
    """floor((3a/a_i)^3 / 2): cap on disc(K) for cubic K with a solution where x_i is irrational."""
    ai = Fraction(Q.c(i, i).coords[0])
    if ai < 1:
        raise ValueError("distinguished coefficient must be >= 1")
    tr = Fraction(3 * a) / ai
    return floor(tr ** 3 / 2)


@dataclass
class FieldScanRecord:
    label: str
    disc: int | None
    reports: list[IstrReport]
    error: str | None = None

    @property
    def failure_found(self) -> bool:
        return any(r.status == FAILS_ISTR for r in self.reports)


def scan_fields_from_table(Q: QuadraticForm, targets: Sequence[int], table, node_cap: int | None = None) -> list[FieldScanRecord]:
    from .tables import FieldTableEntry

    out = []
    Z = Q.field
    for entry in table:
        try:
            if not isinstance(entry, FieldTableEntry):
                raise ValueError("not a field table entry")
            L = entry.build()
        except Exception as exc:  # malformed entries are reported, the scan continues
            out.append(FieldScanRecord(getattr(entry, "label", "?"), None, [], str(exc)))
            continue
        e = canonical_embedding(L)
        reps = [istr_check(Q, Z.from_int(t), e, node_cap=node_cap, form_id="") for t in targets]
        out.append(FieldScanRecord(entry.label, entry.disc, reps))
    return out


# ------------------------------------------------------------------ obstruction schema


@dataclass(frozen=True)
class CaseRecord:
    coordinate: int
    value: int
    residual: int
    eliminated_by: str  # "place:<p>" or "zero-residual"


@dataclass(frozen=True)
class TraceStep:
    coordinates: tuple[int, ...]
    lower_bound: Fraction  # sum over W of (3/2) a_i
    target: int

    @property
    def closes(self) -> bool:
        return self.lower_bound >= self.target


@dataclass(frozen=True)
class ObstructionProof:
    entries: tuple[int, ...]
    target: int
    cases: tuple[CaseRecord, ...]
    trace_step: TraceStep


@dataclass(frozen=True)
class Unknown:
    reason: str
    trace_step: TraceStep | None = None


def _eliminate_coordinate(entries: list[int], i: int, a: int) -> list[CaseRecord] | None:
    rest = entries[:i] + entries[i + 1:]
    recs = []
    z = 0
    while entries[i] * z * z <= a:
        r = a - entries[i] * z * z
        if r == 0:
            recs.append(CaseRecord(i, z, 0, "zero-residual"))
        else:
            bad = obstructing_places(DiagonalRationalForm(tuple(rest)), r)
            if not bad:
                return None
            recs.append(CaseRecord(i, z, r, f"place:{bad[0]}"))
        z += 1
    return recs


def odd_totally_real_obstruction(Q: QuadraticForm, a: int):
    """Prove a is not in Q(O_K) for every totally real K of odd degree, or return Unknown."""
    if Q.field.degree != 1 or not Q.is_diagonal():
        raise NotDiagonal("schema needs a diagonal form over Z")
    Z = Q.field
    if represent(Q, Z.from_int(a), mode="first").found:
        raise TargetRepresented(f"{a} is represented over Z")
    entries = [c.coords[0] for c in Q.diagonal()]
    if len(entries) == 1:
        return Unknown("rank one: no complementary coordinates")
    cases = []
    W = []
    for i in range(len(entries)):
        recs = _eliminate_coordinate(entries, i, a)
        if recs is not None:
            W.append(i)
            cases.extend(recs)
    lb = sum((Fraction(3, 2) * entries[i] for i in W), Fraction(0))
    step = TraceStep(tuple(W), lb, a)
    if not W:
        return Unknown("no coordinate is forced irrational", step)
    if not step.closes:
        return Unknown("trace inequality does not close", step)
    return ObstructionProof(tuple(entries), a, tuple(cases), step)


def verify_obstruction(proof: ObstructionProof) -> bool:
    """Independent re-check: every integer value of every W-coordinate is eliminated, and the trace step closes."""
    entries, a = proof.entries, proof.target
    if any(e <= 0 for e in entries):
        return False
    W = proof.trace_step.coordinates
    if sorted(set(W)) != list(W) or not W:
        return False
    if sum(Fraction(3 * entries[i], 2) for i in W) != proof.trace_step.lower_bound:
        return False
    if not proof.trace_step.lower_bound >= a:
        return False
    by_case = {(c.coordinate, c.value): c for c in proof.cases}
    for i in W:
        rest = DiagonalRationalForm(tuple(e for k, e in enumerate(entries) if k != i))
        for z in range(isqrt(a // entries[i]) + 1):
            rec = by_case.get((i, z))
            if rec is None:
                return False
            r = a - entries[i] * z * z
            if rec.residual != r:
                return False
            if r == 0:
                # then every other coordinate vanishes and the solution is rational
                if rec.eliminated_by != "zero-residual":
                    return False
                continue
            tag = rec.eliminated_by
            if not tag.startswith("place:"):
                return False
            s = tag.split(":", 1)[1]
            v = Place(None) if s == "inf" else Place.finite(int(s))
            if represents_local(rest, r, v):
                return False
    return True
