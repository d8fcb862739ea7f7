"""Dense univariate polynomials over Q, Sturm sequences and exact linear algebra.

Polynomials are tuples of coefficients, constant term first, with no trailing
zeros (the zero polynomial is the empty tuple). Coefficients are ``int`` or
``Fraction``; every routine returns normalized tuples.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Sequence

Poly = tuple


def trim(p: Sequence) -> Poly:
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return tuple(p)


def degree(p: Poly) -> int:
    return len(p) - 1


def padd(p: Poly, q: Poly) -> Poly:
    n = max(len(p), len(q))
    return trim([(p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0) for i in range(n)])


def psub(p: Poly, q: Poly) -> Poly:
    n = max(len(p), len(q))
    return trim([(p[i] if i < len(p) else 0) - (q[i] if i < len(q) else 0) for i in range(n)])


def pscale(p: Poly, c) -> Poly:
    return trim([c * a for a in p])


def pmul(p: Poly, q: Poly) -> Poly:
    if not p or not q:
        return ()
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a == 0:
            continue
        for j, b in enumerate(q):
            out[i + j] += a * b
    return trim(out)


def pderiv(p: Poly) -> Poly:
    return trim([i * p[i] for i in range(1, len(p))])


def pdivmod(a: Poly, b: Poly) -> tuple[Poly, Poly]:
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = [Fraction(c) for c in a]
    lead = Fraction(b[-1])
    db = len(b) - 1
    if len(a) - 1 < db:
        return (), trim(a)
    quot = [Fraction(0)] * (len(a) - db)
    for k in range(len(a) - 1 - db, -1, -1):
        c = a[k + db] / lead
        quot[k] = c
        if c:
            for j in range(db + 1):
                a[k + j] -= c * b[j]
    return trim(quot), trim(a[:db])


def prem(a: Poly, b: Poly) -> Poly:
    return pdivmod(a, b)[1]


def pmonic(p: Poly) -> Poly:
    lead = Fraction(p[-1])
    return tuple(Fraction(c) / lead for c in p)


def pgcd(a: Poly, b: Poly) -> Poly:
    a, b = trim(a), trim(b)
    while b:
        a, b = b, prem(a, b)
    return pmonic(a) if a else ()


def peval(p: Poly, x):
    acc = 0
    for c in reversed(p):
        acc = acc * x + c
    return acc


def sign(x) -> int:
    return (x > 0) - (x < 0)


def pcompose_neg(p: Poly) -> Poly:
    """p(-T)."""
    return tuple(c if i % 2 == 0 else -c for i, c in enumerate(p))


def pshift(p: Poly, s) -> Poly:
    """p(T + s)."""
    out: Poly = ()
    for c in reversed(p):
        out = padd(pmul(out, (s, 1)), (c,))
    return out


def is_squarefree(p: Poly) -> bool:
    return degree(pgcd(p, pderiv(p))) == 0


def to_int_poly(p: Poly) -> Poly:
    """Scale a rational polynomial to a primitive integer one with positive leading term."""
    den = 1
    for c in p:
        den = den * Fraction(c).denominator // gcd(den, Fraction(c).denominator)
    ints = [int(Fraction(c) * den) for c in p]
    g = 0
    for c in ints:
        g = gcd(g, c)
    if g == 0:
        return ()
    if ints[-1] < 0:
        g = -g
    return tuple(c // g for c in ints)


# --------------------------------------------------------------------------
# Sturm sequences and real roots


def sturm_sequence(p: Poly) -> list[Poly]:
    seq = [tuple(Fraction(c) for c in p), tuple(Fraction(c) for c in pderiv(p))]
    while seq[-1]:
        r = prem(seq[-2], seq[-1])
        seq.append(tuple(-c for c in r))
    seq.pop()
    # primitive integer multiples keep later evaluations cheap and signs intact
    out = []
    for q in seq:
        qi = to_int_poly(q)
        if Fraction(q[-1]) < 0:
            qi = tuple(-c for c in qi)
        out.append(qi)
    return out


def _variations(signs: list[int]) -> int:
    nz = [s for s in signs if s]
    return sum(1 for a, b in zip(nz, nz[1:]) if a != b)


def variations_at(seq: list[Poly], x) -> int:
    return _variations([sign(peval(q, x)) for q in seq])


def variations_at_infinity(seq: list[Poly], positive: bool) -> int:
    signs = []
    for q in seq:
        s = sign(q[-1])
        if not positive and (len(q) - 1) % 2 == 1:
            s = -s
        signs.append(s)
    return _variations(signs)


def count_roots(seq: list[Poly], a, b) -> int:
    """Distinct real roots in the half-open interval (a, b]; ``None`` means infinity."""
    va = variations_at_infinity(seq, False) if a is None else variations_at(seq, a)
    vb = variations_at_infinity(seq, True) if b is None else variations_at(seq, b)
    return va - vb


def count_roots_closed(seq: list[Poly], a, b) -> int:
    """Distinct real roots in [a, b] (a <= b, both finite)."""
    n = count_roots(seq, a, b)
    if peval(seq[0], a) == 0:
        n += 1
    return n


def root_bound(p: Poly) -> Fraction:
    """Cauchy bound: every complex root has absolute value < 1 + max|c_i / lead|."""
    lead = Fraction(p[-1])
    return 1 + max((abs(Fraction(c) / lead) for c in p[:-1]), default=Fraction(0))


def count_real_roots(p: Poly) -> int:
    seq = sturm_sequence(p)
    return count_roots(seq, None, None)


def isolate_real_roots(p: Poly) -> list[tuple[Fraction, Fraction]]:
    """Disjoint isolating intervals [lo, hi] for the real roots of a squarefree ``p``.

    Each interval either has lo < hi with p(lo), p(hi) nonzero of opposite signs
    and exactly one root inside, or is a degenerate [r, r] at an exact rational root.
    Intervals are returned in increasing order.
    """
    if not is_squarefree(p):
        raise ValueError("polynomial is not squarefree")
    seq = sturm_sequence(p)
    bound = root_bound(p)
    out: list[tuple[Fraction, Fraction]] = []
    stack = [(-bound, bound)]
    while stack:
        a, b = stack.pop()
        n = count_roots(seq, a, b)
        if n == 0:
            continue
        if n == 1:
            if peval(p, b) == 0:
                out.append((b, b))
                continue
            lo, k = a, 0
            # a root sitting exactly at a belongs to the neighbouring interval
            while peval(p, lo) == 0 or count_roots(seq, lo, b) != 1:
                k += 1
                lo = a + (b - a) / 2**k
            out.append((lo, b))
            continue
        mid = (a + b) / 2
        stack.append((mid, b))
        stack.append((a, mid))
    out.sort()
    return out


def refine_root(p: Poly, lo: Fraction, hi: Fraction) -> tuple[Fraction, Fraction]:
    """Halve an isolating interval produced by :func:`isolate_real_roots`."""
    if lo == hi:
        return lo, hi
    mid = (lo + hi) / 2
    sm = sign(peval(p, mid))
    if sm == 0:
        return mid, mid
    if sign(peval(p, lo)) * sm < 0:
        return lo, mid
    return mid, hi


def interval_eval(p: Poly, lo: Fraction, hi: Fraction) -> tuple[Fraction, Fraction]:
    """Enclosure of p over [lo, hi] by interval Horner evaluation."""
    alo = ahi = Fraction(0)
    for c in reversed(p):
        cands = (alo * lo, alo * hi, ahi * lo, ahi * hi)
        alo = min(cands) + c
        ahi = max(cands) + c
    return alo, ahi


# --------------------------------------------------------------------------
# exact linear algebra over Q


def det(m: Sequence[Sequence]) -> Fraction:
    a = [[Fraction(x) for x in row] for row in m]
    n = len(a)
    d = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            d = -d
        d *= a[col][col]
        inv = 1 / a[col][col]
        for r in range(col + 1, n):
            f = a[r][col] * inv
            if f:
                for c in range(col, n):
                    a[r][c] -= f * a[col][c]
    return d


def inverse(m: Sequence[Sequence]) -> list[list[Fraction]]:
    n = len(m)
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(m)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        a[col], a[piv] = a[piv], a[col]
        inv = 1 / a[col][col]
        a[col] = [x * inv for x in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return [row[n:] for row in a]


def charpoly(m: Sequence[Sequence]) -> Poly:
    """Characteristic polynomial det(T·I - M), monic, via Faddeev-LeVerrier."""
    n = len(m)
    a = [[Fraction(x) for x in row] for row in m]
    coeffs = [Fraction(0)] * (n + 1)
    coeffs[n] = Fraction(1)
    mk = [[Fraction(0)] * n for _ in range(n)]
    for k in range(1, n + 1):
        # mk <- A * (mk + c_{n-k+1} I)
        prev = [[mk[i][j] + (coeffs[n - k + 1] if i == j else 0) for j in range(n)] for i in range(n)]
        mk = [[sum(a[i][t] * prev[t][j] for t in range(n)) for j in range(n)] for i in range(n)]
        coeffs[n - k] = -sum(mk[i][i] for i in range(n)) / k
    return tuple(coeffs)


def resultant(p: Poly, q: Poly) -> Fraction:
    m, n = len(p) - 1, len(q) - 1
    if m < 0 or n < 0:
        return Fraction(0)
    size = m + n
    if size == 0:
        return Fraction(1)
    rows = []
    for i in range(n):
        row = [0] * size
        for j, c in enumerate(reversed(p)):
            row[i + j] = c
        rows.append(row)
    for i in range(m):
        row = [0] * size
        for j, c in enumerate(reversed(q)):
            row[i + j] = c
        rows.append(row)
    return det(rows)


def discriminant(p: Poly) -> Fraction:
    n = len(p) - 1
    if n < 1:
        raise ValueError("discriminant of a constant")
    if n == 1:
        return Fraction(1)
    sgn = -1 if (n * (n - 1) // 2) % 2 else 1
    return sgn * resultant(p, pderiv(p)) / Fraction(p[-1])


# --------------------------------------------------------------------------
# cyclotomic data


def cyclotomic(n: int) -> Poly:
    """Integer cyclotomic polynomial Phi_n."""
    num: Poly = tuple([-1] + [0] * (n - 1) + [1])
    for d in range(1, n):
        if n % d == 0:
            num, r = pdivmod(num, cyclotomic(d))
            assert not r
    return tuple(int(c) for c in num)


def real_cyclotomic(n: int) -> Poly:
    """Minimal polynomial of 2cos(2*pi/n) over Q, integer coefficients."""
    if n == 1:
        return (-2, 1)
    if n == 2:
        return (2, 1)
    phi = cyclotomic(n)
    m = (len(phi) - 1) // 2
    # x^k + x^-k = D_k(x + 1/x) with D_0 = 2, D_1 = y, D_{k+1} = y D_k - D_{k-1}
    dick = [(2,), (0, 1)]
    for k in range(2, m + 1):
        dick.append(psub(pmul((0, 1), dick[k - 1]), dick[k - 2]))
    out: Poly = (phi[m],)
    for k in range(1, m + 1):
        out = padd(out, pscale(dick[k], phi[m + k]))
    return tuple(int(c) for c in out)
