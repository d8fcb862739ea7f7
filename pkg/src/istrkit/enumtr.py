"""Totally real algebraic integers of bounded degree and house.

Polynomials f = T^d + c_{d-1} T^{d-1} + ... + c_0 are built from the top
coefficient down. After c_{d-1}, ..., c_m are fixed, the normalized
derivative F_m = f^{(m)} / m! = sum_{i >= m} C(i, m) c_i T^{i-m} is known; it
must again have all its roots real and inside [-h, h]. Its constant term is
c_m, and the root interlacing of F_m with F_{m+1} (its derivative up to a
positive factor) confines c_m to an interval computed with exact rational
enclosures. The coefficient box |c_m| <= C(d, m) h^(d-m) is intersected in.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import ceil, comb, floor, isqrt
from typing import Sequence

from . import poly as P


class NotSquarefree(ValueError):
    pass


class BoundTooLarge(ValueError):
    pass


@dataclass(frozen=True)
class MonicIntPoly:
    coeffs: tuple[int, ...]  # constant term first
    irreducible: bool | None = None  # None: not verified (degree >= 4)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __str__(self):
        return ",".join(str(c) for c in self.coeffs)


@dataclass(frozen=True)
class EnumerationQuery:
    degree_max: int
    house_bound: Fraction
    require_irreducible: bool = False
    degree_min: int = 1
    square_bound: Fraction | None = None  # optional extra filter house^2 <= square_bound

    def __post_init__(self):
        object.__setattr__(self, "house_bound", Fraction(self.house_bound))
        if self.house_bound <= 0:
            raise ValueError("house bound must be positive")
        if self.square_bound is not None:
            object.__setattr__(self, "square_bound", Fraction(self.square_bound))


def _sqfree(p):
    g = P.pgcd(p, P.pderiv(p))
    if len(g) <= 1:
        return p
    q, r = P.pdivmod(p, g)
    return q


def all_roots_real(f: Sequence[int]) -> bool:
    f = P.trim(f)
    if len(f) < 2:
        raise ValueError("constant polynomial")
    if not P.is_squarefree(f):
        raise NotSquarefree("polynomial is not squarefree")
    return P.count_real_roots(f) == len(f) - 1


def roots_within(f, h: Fraction) -> bool:
    """All complex roots of f real and in [-h, h] (multiplicities allowed)."""
    s = _sqfree(P.trim(f))
    deg = len(s) - 1
    if deg == 0:
        return True
    seq = P.sturm_sequence(s)
    return P.count_roots_closed(seq, -h, h) == deg


def house_squared_le(f, B: Fraction) -> bool:
    """All roots r of f satisfy r^2 <= B (f assumed real-rooted)."""
    g = P.pmul(f, P.pcompose_neg(f))
    # g(T) is even: substitute S = T^2
    s = P.trim(g[0::2])
    s = _sqfree(s)
    if len(s) <= 1:
        return True
    return P.count_roots(P.sturm_sequence(s), B, None) == 0


def _has_rational_root(f) -> bool:
    c0 = f[0]
    if c0 == 0:
        return True
    n = abs(c0)
    for q in range(1, isqrt(n) + 1):
        if n % q == 0:
            for r in (q, n // q):
                if P.peval(f, r) == 0 or P.peval(f, -r) == 0:
                    return True
    return False


def _extreme_root(F, largest: bool, width: Fraction):
    s = _sqfree(F)
    ivs = P.isolate_real_roots(s)
    lo, hi = ivs[-1] if largest else ivs[0]
    while hi - lo > width:
        lo, hi = P.refine_root(s, lo, hi)
    return lo, hi


def _range_for_constant(G, deg: int, Fnext, h: Fraction, box: int):
    """Integer interval for c with G + c real-rooted inside [-h, h] (necessary conditions)."""
    lo_c, hi_c = -box, box
    # endpoints: F(h) >= 0 and (-1)^deg F(-h) >= 0
    lo_c = max(lo_c, ceil(-P.peval(G, h)))
    gm = P.peval(G, -h)
    if deg % 2 == 0:
        lo_c = max(lo_c, ceil(-gm))
    else:
        hi_c = min(hi_c, floor(-gm))
    if deg >= 2 and len(Fnext) >= 2:
        w = Fraction(1, 1 << 20)
        a, b = _extreme_root(Fnext, True, w)
        glo, _ = P.interval_eval(G, a, b)
        hi_c = min(hi_c, floor(-glo))
        a, b = _extreme_root(Fnext, False, w)
        glo, ghi = P.interval_eval(G, a, b)
        if deg % 2 == 1:
            lo_c = max(lo_c, ceil(-ghi))
        else:
            hi_c = min(hi_c, floor(-glo))
    return lo_c, hi_c


def _enum_degree(d: int, h: Fraction):
    """Monic integer polynomials of degree d with all roots real in [-h, h]."""
    out = []
    c = [0] * (d + 1)
    c[d] = 1

    def F(m):
        return P.trim([comb(i, m) * c[i] for i in range(m, d + 1)])

    def rec(m, Fnext):
        deg = d - m
        box = floor(comb(d, m) * h ** deg)
        G = list(F(m))
        G[0] = 0
        G = tuple(G)
        lo_c, hi_c = _range_for_constant(G, deg, Fnext, h, box)
        for v in range(lo_c, hi_c + 1):
            c[m] = v
            Fm = F(m)
            if not roots_within(Fm, h):
                continue
            if m == 0:
                out.append(tuple(c))
            else:
                rec(m - 1, Fm)
        c[m] = 0

    rec(d - 1, (1,))
    return out


def enum_totally_real(q: EnumerationQuery) -> list[MonicIntPoly]:
    """Squarefree monic integer polynomials with all roots real and house <= bound."""
    h = q.house_bound
    res = []
    for d in range(max(1, q.degree_min), q.degree_max + 1):
        for f in _enum_degree(d, h):
            if not P.is_squarefree(f):
                continue
            if q.square_bound is not None and not house_squared_le(f, q.square_bound):
                continue
            if d <= 3:
                irr = d == 1 or not _has_rational_root(f)
            else:
                irr = False if _has_rational_root(f) else None
            if q.require_irreducible and irr is False:
                continue
            res.append(MonicIntPoly(f, irr))
    res.sort(key=lambda m: (m.degree, m.coeffs[::-1]))
    return res


def sqrt_upper(B: Fraction, bits: int = 30) -> Fraction:
    """Rational s >= sqrt(B) within 2^-bits."""
    B = Fraction(B)
    scale = 1 << bits
    n = B * scale * scale
    r = isqrt(ceil(n))
    if r * r < n:
        r += 1
    return Fraction(r, scale)


# ------------------------------------------------------------------ Kronecker


@dataclass(frozen=True)
class KroneckerEntry:
    n: int
    cos_poly: tuple[int, ...]  # minimal polynomial of 2cos(2pi/n)
    square_poly: tuple[int, ...]  # minimal polynomial of 2 + 2cos(2pi/n)
    beta_poly: tuple[int, ...]  # minimal polynomial of 2cos(pi/n), a square root


def _square_value_below(n: int, B: Fraction) -> bool:
    """2 + 2cos(2pi/n) < B, decided exactly; 2cos(2pi/n) is the largest root."""
    f = P.real_cyclotomic(n)
    t = B - 2
    if P.peval(f, t) == 0:
        return False
    return P.count_roots(P.sturm_sequence(f), t, None) == 0


def kronecker_family(bound_on_square) -> list[KroneckerEntry]:
    """All n with 2 + 2cos(2pi/n) < bound. The value is 4 at n = 1, 0 at n = 2, then increasing."""
    B = Fraction(bound_on_square)
    if B >= 4:
        raise BoundTooLarge("the family is infinite once the bound reaches 4")
    out = []
    n = 2
    while _square_value_below(n, B):
        f = P.real_cyclotomic(n)
        out.append(KroneckerEntry(n, f, tuple(int(x) for x in P.pshift(f, -2)), P.real_cyclotomic(2 * n)))
        n += 1
    return out
