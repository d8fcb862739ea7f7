"""The reproduction suite: one check per acceptance item, each isolated.

A check returns (ok, detail). A search that hits the node cap aborts its
check as INCONCLUSIVE, never as a failure. Any other exception inside a check
is reported as a failure of that check only.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import ceil, isqrt

from . import corpus as C
from . import poly as P
from .enumtr import kronecker_family
from .istr import (
    FAILS_ISTR,
    cubic_disc_cap,
    find_failure_fields_prime_degree,
    istr_check,
    kronecker_pair_classification,
    odd_totally_real_obstruction,
    poly_roots_in_field,
    ObstructionProof,
    verify_obstruction,
)
from .localq import (
    REAL,
    DyadicCubicContext,
    Place,
    dyadic_digits,
    hilbert,
    is_square_dyadic,
    prime_factors,
    represents_local,
    solvable_mod,
    three_squares_k49,
)
from .numfield import canonical_embedding, char_poly, is_totally_positive, map_elem, norm, trace
from .qform import diag_form, evaluate, extend_scalars, general_form, orth_sum, rational_diagonalize
from .repsearch import enumerate_value, represent, represented_set_below, trace_gram

PASS, FAIL, INCONCLUSIVE = "PASS", "FAIL", "INCONCLUSIVE"
SEED = 20240611


class _Budget(Exception):
    pass


@dataclass
class SuiteItem:
    key: str
    title: str
    status: str
    millis: float
    detail: str


def _search(Q, a, node_cap, mode="all"):
    rep = represent(Q, a, mode=mode, node_cap=node_cap)
    if not rep.exhaustive and not rep.found:
        raise _Budget("node cap reached")
    return rep


def _empty(rep) -> bool:
    return rep.exhaustive and not rep.witnesses


def _sum3():
    return C.form([1, 1, 1])


# ------------------------------------------------------------------ checks


def check_congruences(cap):
    a = solvable_mod(_sum3(), 28, 32)
    b = solvable_mod(_sum3(), 7, 8)
    return (not a and not b), f"28 mod 32: {a}, 7 mod 8: {b}"


def check_124_37(cap):
    K = C.K49()
    w = C.omega()
    Q = C.form([1, 1, 1, 37])
    base = _search(Q, C.Z().from_int(124), cap)
    ext = _search(C.to_k49(Q), K.from_int(124), cap, mode="first")
    ok_ext = ext.found and evaluate(C.to_k49(Q), list(ext.witnesses[0].vector)) == K.from_int(124)
    r = 124 - 37 * w * w
    t3 = three_squares_k49(r)
    sq = is_square_dyadic(-r, DyadicCubicContext.for_field(K))
    ok = _empty(base) and ok_ext and t3 and not sq
    return ok, f"Z empty: {_empty(base)}, witness over K49: {ok_ext}, three squares: {t3}, dyadic square: {sq}"


def check_digits(cap):
    K = C.K49()
    w = C.omega()
    ctx = DyadicCubicContext.for_field(K)
    dig = dyadic_digits(5 * w * w + 4, 3, ctx)
    want = [(w * w).coords, (0, 0, 0), (1 + w * w).coords]
    rhs = 1 + w * w
    sols = []
    for u in ctx.digit_set:
        x = K.element(u)
        lhs = x * x + w * x - rhs
        if all(c % 2 == 0 for c in lhs.coords):
            sols.append(u)
    return dig == want and not sols and len(ctx.digit_set) == 8, f"digits {dig}, solutions of the u-condition {sols}"


def check_232(cap):
    K = C.K49()
    Q = C.form([1, 71])
    base = _search(Q, C.Z().from_int(232), cap)
    v = [K.element(c) for c in C.W232]
    val = evaluate(C.to_k49(Q), v)
    fam = kronecker_family(Fraction(232, 71))
    w2 = C.omega() ** 2
    squares_ok = [e.n for e in fam] == [2, 3, 4, 5, 6, 7] and tuple(char_poly(w2)) == tuple(fam[-1].square_poly)
    # the first five squares are 0, 1, 2, (3+sqrt5)/2, 3
    want = [(0, 1), (-1, 1), (-2, 1), (1, -3, 1), (-3, 1)]
    squares_ok = squares_ok and [tuple(e.square_poly) for e in fam[:5]] == want
    pairs = kronecker_pair_classification(1, 71, 232)
    if any(not p.search.exhaustive for p in pairs):
        raise _Budget("node cap reached")
    integral = [p.n for p in pairs if p.integral]
    ok = _empty(base) and val == K.from_int(232) and squares_ok and integral == [7]
    return ok, f"Z empty: {_empty(base)}, witness value ok: {val == K.from_int(232)}, family {[e.n for e in fam]}, integral pairs at n = {integral}"


def check_census(cap):
    A = set(represented_set_below(C.form([1, 2, 7]), 1500))
    B = set(represented_set_below(C.form([1, 1, 14]), 1500))
    D = sorted(A - B)
    return (len(D) == 54 and D[0] == 3 and D[-1] == 1428), f"{len(D)} numbers, min {D[0]}, max {D[-1]}"


def check_sqrt21(cap):
    K, L = C.Q21(), C.L21()
    e = C.emb21()
    a = K.element((12, 1))
    Q = diag_form(K, [1, 1, 1, 1])
    base = _search(Q, a, cap)
    v = [L.element(c) for c in C.W21]
    same = evaluate(extend_scalars(Q, e), v) == map_elem(e, a)
    return _empty(base) and same, f"base empty: {_empty(base)}, degree 6 identity: {same}"


def check_145(cap):
    B = C.F229()
    Q = C.form145()
    QB = extend_scalars(Q, canonical_embedding(B))
    val = evaluate(QB, [B.element(c) for c in C.W145])
    base = _search(Q, C.Z().from_int(145), cap)
    tern = rational_diagonalize(Q.subform([1, 2, 3]))
    loc = [represents_local(tern, t, Place.finite(29)) for t in (145, 116, 29)]
    cap_ = cubic_disc_cap(Q, 0, 145)
    ok = val == B.from_int(145) and _empty(base) and not any(loc) and cap_ == 1687
    return ok, f"witness ok: {val == B.from_int(145)}, Z empty: {_empty(base)}, local at 29: {loc}, cap {cap_}"


def check_fifteen(cap):
    Q = C.form([1, 2, 5, 5])
    pf = odd_totally_real_obstruction(Q, 15)
    proof_ok = isinstance(pf, ObstructionProof) and verify_obstruction(pf)
    loc = [represents_local(rational_diagonalize(C.form([1, 2, 5])), t, Place.finite(5)) for t in (10, 15)]
    means = []
    for L in (C.K49(), C.F229()):
        rep = _search(extend_scalars(Q, canonical_embedding(L)), L.from_int(15), cap)
        means.append(_empty(rep))
    return proof_ok and not any(loc) and all(means), f"proof verifies: {proof_ok}, local at 5: {loc}, empty over K49 and Z[beta]: {means}"


def check_uniqueness(cap):
    res = find_failure_fields_prime_degree(C.form([1, 71]), 232, 3, node_cap=cap)
    if any(r.status != FAILS_ISTR for _, r in res):
        raise _Budget("a field search hit the node cap")
    iso = len(res) == 1 and bool(poly_roots_in_field(res[0][0].minpoly, C.K49()))
    return iso, f"{len(res)} field(s): {[L.minpoly for L, _ in res]}"


def check_orth_sum(cap):
    Q = orth_sum(C.form([1, 1, 1, 37]), C.form([125]))
    base = _search(Q, C.Z().from_int(124), cap)
    ext = _search(C.to_k49(Q), C.K49().from_int(124), cap, mode="first")
    return _empty(base) and ext.found, f"Z empty: {_empty(base)}, found over K49: {ext.found}"


def check_sqrt13(cap):
    K = C.Q13()
    e = C.emb13()
    a = K.element((10, 4))
    rep = istr_check(diag_form(K, [1, 1, 1, 1]), a, e, node_cap=cap)
    if rep.status == "INCONCLUSIVE":
        raise _Budget("node cap reached")
    return rep.status == FAILS_ISTR, f"status {rep.status}"


# ------------------------------------------------------------------ randomized oracle checks


def _rand_sqfree(rng):
    while True:
        n = rng.choice([-1, 1]) * rng.randint(1, 210)
        if all(n % (q * q) for q in (2, 3, 5, 7, 11, 13)):
            return n


def _hilbert_oracle(a: int, b: int, p: int) -> int:
    """Primitive solution of z^2 = a x^2 + b y^2 mod p^k (k = 5 at 2, else 3); a, b squarefree."""
    k = 5 if p == 2 else 3
    m = p ** k
    sq = {(z * z) % m for z in range(m)}
    for x in range(m):
        ax = (a * x * x) % m
        for y in range(m):
            if x % p == 0 and y % p == 0:
                continue
            if (ax + b * y * y) % m in sq:
                return 1
    return -1


def _box_oracle(S, t):
    """Integer v with v^T S v = t, for S the half Gram (so v^T S v = Q(v))."""
    n = len(S)
    inv = P.inverse(S)
    box = [isqrt(ceil(t * inv[i][i])) + 1 for i in range(n)]
    out = set()
    for v in product(*[range(-b, b + 1) for b in box]):
        if sum(S[i][j] * v[i] * v[j] for i in range(n) for j in range(n)) == t:
            out.add(v)
    return out


def properties(cases: int = 200, seed: int = SEED) -> list[tuple[str, bool, str]]:
    rng = random.Random(seed)
    res = []
    primes = [2, 3, 5, 7]

    # Hilbert symbol laws and product formula
    bad = 0
    for _ in range(cases):
        a, b, c = (_rand_sqfree(rng) for _ in range(3))
        places = [REAL] + [Place(p) for p in prime_factors(2 * a * b * c)]
        for v in places:
            if hilbert(a, b, v) != hilbert(b, a, v) or hilbert(a, b * c, v) != hilbert(a, b, v) * hilbert(a, c, v):
                bad += 1
        prod = 1
        for v in places:
            prod *= hilbert(a, b, v)
        if prod != 1:
            bad += 1
    res.append(("hilbert laws", bad == 0, f"{cases} triples, {bad} violations"))

    bad = 0
    for _ in range(cases):
        a, b, p = _rand_sqfree(rng), _rand_sqfree(rng), rng.choice(primes)
        if hilbert(a, b, Place(p)) != _hilbert_oracle(a, b, p):
            bad += 1
    res.append(("hilbert vs congruence oracle", bad == 0, f"{cases} pairs, {bad} mismatches"))

    bad = 0
    Z = C.Z()
    for _ in range(cases):
        n = rng.randint(1, 3)
        while True:
            co = [[0] * n for _ in range(n)]
            for i in range(n):
                co[i][i] = rng.randint(1, 6)
                for j in range(i + 1, n):
                    co[i][j] = rng.randint(-3, 3)
            Q = general_form(Z, co)
            try:
                G = trace_gram(Q)
                break
            except ValueError:
                continue
        t = rng.randint(0, 30)
        got = set(enumerate_value(G, t))
        if got != _box_oracle(Q.half_gram_rational(), t):
            bad += 1
    res.append(("enumerate_value vs box oracle", bad == 0, f"{cases} forms, {bad} mismatches"))

    # three squares in K49 against brute force over the coefficient box
    K = C.K49()
    tmax = 24
    T = [[Fraction(K.trace_coords(K.mult_table[i][j])) for j in range(3)] for i in range(3)]
    inv = P.inverse(T)
    box = [isqrt(ceil(tmax * inv[i][i])) + 1 for i in range(3)]
    squares = {}
    for c in product(*[range(-b, b + 1) for b in box]):
        x = K.element(c)
        s = x * x
        tr = K.trace_coords(s.coords)
        if tr <= tmax:
            squares.setdefault(s.coords, tr)
    sq_list = sorted(squares.items(), key=lambda kv: kv[1])
    bad = 0
    done = 0
    while done < cases:
        c = tuple(rng.randint(-6, 6) for _ in range(3))
        x = K.element(c)
        if x.is_zero() or not is_totally_positive(x) or K.trace_coords(c) > tmax:
            continue
        done += 1
        tr = K.trace_coords(c)
        found = False
        for s1, t1 in sq_list:
            if 3 * t1 > tr or found:
                break
            for s2, t2 in sq_list:
                if t1 + t2 > tr:
                    break
                r = tuple(u - v - w for u, v, w in zip(c, s1, s2))
                if r in squares:
                    found = True
                    break
        if found != three_squares_k49(x):
            bad += 1
    res.append(("three squares in K49 vs brute force", bad == 0, f"{cases} elements, {bad} mismatches"))

    # ring laws
    bad = 0
    e = C.emb21()
    for _ in range(cases):
        for fld in (K, C.F229(), C.Q21()):
            x = fld.element([rng.randint(-9, 9) for _ in range(fld.degree)])
            y = fld.element([rng.randint(-9, 9) for _ in range(fld.degree)])
            if trace(x + y) != trace(x) + trace(y) or norm(x * y) != norm(x) * norm(y):
                bad += 1
        Kq = C.Q21()
        x = Kq.element([rng.randint(-9, 9) for _ in range(2)])
        y = Kq.element([rng.randint(-9, 9) for _ in range(2)])
        if map_elem(e, x + y) != map_elem(e, x) + map_elem(e, y) or map_elem(e, x * y) != map_elem(e, x) * map_elem(e, y):
            bad += 1
    res.append(("ring homomorphism laws", bad == 0, f"{cases} pairs per field, {bad} violations"))

    # Galois stability of witnesses over K49
    w = C.omega()
    img = w * w - 2

    def sigma(x):
        acc = K.zero
        for c in reversed(x.coords):
            acc = acc * img + c
        return acc

    bad = 0
    for _ in range(cases):
        ents = [rng.randint(1, 9) for _ in range(rng.randint(1, 3))]
        Q = diag_form(K, ents)
        a = rng.randint(1, 25)
        rep = represent(Q, K.from_int(a))
        got = {tuple(x.coords for x in wt.vector) for wt in rep.witnesses}
        for wt in rep.witnesses:
            im = [sigma(x) for x in wt.vector]
            if evaluate(Q, im) != K.from_int(a) or tuple(x.coords for x in im) not in got:
                bad += 1
    res.append(("Galois stability of K49 witnesses", bad == 0, f"{cases} searches, {bad} violations"))
    return res


def check_properties(cap):
    res = properties()
    ok = all(r[1] for r in res)
    return ok, "; ".join(f"{name}: {'ok' if good else 'FAILED'} ({msg})" for name, good, msg in res)


CHECKS = [
    ("1", "congruence obstructions for three squares", check_congruences),
    ("2", "124 and <1,1,1,37> over Z and K49", check_124_37),
    ("3", "dyadic digits of 5w^2+4", check_digits),
    ("4", "232 and <1,71>", check_232),
    ("5", "<1,1,14> versus <1,2,7> below 1500", check_census),
    ("6", "sqrt21 example", check_sqrt21),
    ("7", "145 example", check_145),
    ("8", "15 and <1,2,5,5>", check_fifteen),
    ("9", "cubic fields where <1,71> represents 232", check_uniqueness),
    ("10", "randomized property checks", check_properties),
    ("11", "124 and <1,1,1,37,125>", check_orth_sum),
    ("x1", "sqrt13 example", check_sqrt13),
]


def run_check(key: str, title: str, fn, node_cap=None) -> SuiteItem:
    t0 = time.perf_counter()
    try:
        ok, detail = fn(node_cap)
        status = PASS if ok else FAIL
    except _Budget as exc:
        status, detail = INCONCLUSIVE, str(exc)
    except Exception as exc:  # one broken check must not take the others down
        status, detail = FAIL, f"{type(exc).__name__}: {exc}"
    return SuiteItem(key, title, status, (time.perf_counter() - t0) * 1000, detail)


def paper_suite(node_cap: int | None = None, only=None) -> list[SuiteItem]:
    out = []
    for key, title, fn in CHECKS:
        if only and key not in only:
            continue
        out.append(run_check(key, title, fn, node_cap))
    return out
