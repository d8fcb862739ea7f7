"""Randomized invariants, each checked against an independent brute-force oracle."""

from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import ceil, comb, floor, isqrt

from hypothesis import assume, given
from hypothesis import strategies as st

from istrkit import corpus as C
from istrkit import poly as P
from istrkit.enumtr import EnumerationQuery, enum_totally_real
from istrkit.localq import Place, REAL, hilbert, prime_factors, three_squares_k49
from istrkit.numfield import house_enclosure, is_totally_positive, map_elem, norm, trace
from istrkit.qform import bilinear, diag_form, evaluate, extend_scalars, general_form, is_positive_definite
from istrkit.repsearch import enumerate_value, represent, trace_gram

SMALL_PRIMES = [2, 3, 5, 7, 11, 13]

nonzero = st.integers(-300, 300).filter(lambda n: n != 0)


def sqfree(n):
    return all(n % (q * q) for q in range(2, isqrt(abs(n)) + 1))


sqfree_ints = st.integers(-210, 210).filter(lambda n: n != 0 and sqfree(n))


def brute_hilbert(a, b, p):
    # primitive solutions of z^2 = a x^2 + b y^2 modulo p^k; enough for squarefree a, b
    k = 6 if p == 2 else 2
    m = p ** k
    sq = {z * z % m for z in range(m)}
    for x in range(m):
        for y in range(m):
            if x % p or y % p:
                if (a * x * x + b * y * y) % m in sq:
                    return 1
    return -1


def places_of(n):
    return [REAL] + [Place.finite(p) for p in prime_factors(abs(n))]


@given(nonzero, nonzero)
def test_hilbert_symmetric(a, b):
    for v in places_of(2 * a * b):
        assert hilbert(a, b, v) == hilbert(b, a, v)


@given(nonzero, nonzero, nonzero)
def test_hilbert_bimultiplicative(a, b, c):
    for v in places_of(2 * a * b * c):
        assert hilbert(a, b * c, v) == hilbert(a, b, v) * hilbert(a, c, v)


@given(nonzero, nonzero)
def test_hilbert_product_formula(a, b):
    prod = 1
    for v in places_of(2 * a * b):
        prod *= hilbert(a, b, v)
    assert prod == 1


@given(nonzero, st.integers(1, 40))
def test_hilbert_square_invariance(a, s):
    for v in places_of(2 * a * s):
        assert hilbert(a, s * s, v) == 1
        assert hilbert(a, -a, v) == 1


@given(sqfree_ints, sqfree_ints, st.sampled_from(SMALL_PRIMES))
def test_hilbert_matches_congruence_oracle(a, b, p):
    assert hilbert(a, b, Place.finite(p)) == brute_hilbert(a, b, p)


# --------------------------------------------------------------- forms over Z

@st.composite
def pd_forms(draw):
    n = draw(st.integers(1, 3))
    rows = [[0] * n for _ in range(n)]
    for i in range(n):
        rows[i][i] = draw(st.integers(1, 6))
        for j in range(i + 1, n):
            rows[i][j] = draw(st.integers(-3, 3))
    Q = general_form(C.Z(), rows)
    assume(is_positive_definite(Q))
    return Q


def half_gram(Q):
    n = Q.rank
    return [[Fraction(Q.c(i, i).coords[0]) if i == j else Fraction(Q.c(min(i, j), max(i, j)).coords[0], 2) for j in range(n)] for i in range(n)]


def box_points(S, t):
    n = len(S)
    inv = P.inverse(S)
    box = [isqrt(ceil(t * inv[i][i])) + 1 for i in range(n)]
    pts = set()
    for v in product(*[range(-b, b + 1) for b in box]):
        if sum(S[i][j] * v[i] * v[j] for i in range(n) for j in range(n)) == t:
            pts.add(v)
    return pts


@given(pd_forms(), st.integers(0, 40))
def test_enumerate_value_matches_box(Q, t):
    got = list(enumerate_value(trace_gram(Q), t))
    assert got == sorted(got)
    assert set(got) == box_points(half_gram(Q), t)


@given(pd_forms(), st.integers(1, 40))
def test_represent_strategies_agree(Q, t):
    Z = C.Z()
    a = represent(Q, Z.from_int(t), strategy="split")
    b = represent(Q, Z.from_int(t), strategy="trace")
    assert a.exhaustive and b.exhaustive
    key = lambda r: sorted(tuple(x.coords for x in w.vector) for w in r.witnesses)
    assert key(a) == key(b)
    for w in a.witnesses:
        assert evaluate(Q, list(w.vector)) == Z.from_int(t)


vec3 = st.lists(st.integers(-9, 9), min_size=3, max_size=3)


@given(pd_forms(), vec3, vec3, st.integers(-5, 5))
def test_form_identities(Q, u, w, lam):
    Z = C.Z()
    n = Q.rank
    U = [Z.from_int(x) for x in u[:n]]
    W = [Z.from_int(x) for x in w[:n]]
    assert evaluate(Q, [x * lam for x in U]) == evaluate(Q, U) * (lam * lam)
    assert bilinear(Q, U, W) == bilinear(Q, W, U)
    assert bilinear(Q, U, U) == evaluate(Q, U) * 2
    assert evaluate(Q, U).coords[0] >= 0


# --------------------------------------------------------------- fields

FIELDS = [C.K49, C.F229, C.Q21, C.Q13]


@st.composite
def field_pairs(draw):
    fld = draw(st.sampled_from(FIELDS))()
    mk = lambda: fld.element(draw(st.lists(st.integers(-12, 12), min_size=fld.degree, max_size=fld.degree)))
    return fld, mk(), mk()


@given(field_pairs())
def test_ring_laws(fxy):
    fld, x, y = fxy
    assert x + y == y + x and x * y == y * x
    assert (x + y) * y == x * y + y * y
    assert trace(x + y) == trace(x) + trace(y)
    assert norm(x * y) == norm(x) * norm(y)
    assert trace(x * x) >= 0


@given(field_pairs())
def test_house_inequalities(fxy):
    fld, x, y = fxy
    eps = Fraction(1, 10 ** 6)
    hx, hy = house_enclosure(x, eps)[1], house_enclosure(y, eps)[1]
    assert house_enclosure(x + y, eps)[0] <= hx + hy
    assert house_enclosure(x * y, eps)[0] <= hx * hy
    assert hx ** fld.degree >= abs(norm(x))


@given(st.lists(st.integers(-9, 9), min_size=2, max_size=2), st.lists(st.integers(-9, 9), min_size=2, max_size=2))
def test_embedding_is_homomorphism(u, w):
    e = C.emb21()
    x, y = C.Q21().element(u), C.Q21().element(w)
    assert map_elem(e, x + y) == map_elem(e, x) + map_elem(e, y)
    assert map_elem(e, x * y) == map_elem(e, x) * map_elem(e, y)
    assert trace(map_elem(e, x)) == 3 * trace(x)


def galois(x):
    K = C.K49()
    img = C.omega() * C.omega() - 2
    acc = K.zero
    for c in reversed(x.coords):
        acc = acc * img + c
    return acc


@given(st.lists(st.integers(1, 6), min_size=1, max_size=3), st.integers(1, 20))
def test_witnesses_galois_stable(ents, a):
    K = C.K49()
    Q = diag_form(K, ents)
    rep = represent(Q, K.from_int(a))
    got = {tuple(x.coords for x in w.vector) for w in rep.witnesses}
    for w in rep.witnesses:
        im = [galois(x) for x in w.vector]
        assert evaluate(Q, im) == K.from_int(a)
        assert tuple(x.coords for x in im) in got


@given(st.lists(st.integers(-6, 6), min_size=3, max_size=3))
def test_three_squares_matches_search(c):
    K = C.K49()
    x = K.element(c)
    assume(not x.is_zero() and is_totally_positive(x) and trace(x) <= 30)
    rep = represent(diag_form(K, [1, 1, 1]), x, mode="first")
    assert rep.found or rep.exhaustive
    assert three_squares_k49(x) == rep.found


@given(st.lists(st.integers(-6, 6), min_size=3, max_size=3))
def test_extension_commutes_with_evaluation(c):
    K = C.K49()
    e = C.emb21()
    Q = diag_form(C.Q21(), [1, 2])
    u = [C.Q21().element((c[0], c[1])), C.Q21().element((c[2], c[0]))]
    assert map_elem(e, evaluate(Q, u)) == evaluate(extend_scalars(Q, e), [map_elem(e, x) for x in u])


# --------------------------------------------------------------- enumeration

@lru_cache(maxsize=None)
def brute_real_rooted(d, h):
    out = []
    ranges = [range(-floor(comb(d, m) * h ** (d - m)), floor(comb(d, m) * h ** (d - m)) + 1) for m in range(d)]
    for cs in product(*ranges):
        f = tuple(cs) + (1,)
        if not P.is_squarefree(f):
            continue
        if P.count_roots_closed(P.sturm_sequence(f), -h, h) == d:
            out.append(f)
    return sorted(out)


@given(st.integers(1, 3), st.fractions(Fraction(1, 2), Fraction(2), max_denominator=6))
def test_enum_matches_box_search(d, h):
    got = sorted(f.coeffs for f in enum_totally_real(EnumerationQuery(d, h, degree_min=d)))
    assert got == brute_real_rooted(d, h)
