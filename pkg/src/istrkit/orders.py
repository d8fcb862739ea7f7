"""Maximal orders of fields given by a monic polynomial, by p-saturation.

Starting from the power basis, for every prime p with p^2 dividing the
discriminant we look for integral elements x = (sum c_i b_i) / p outside the
current order. Such an x lies in the trace dual, so c is in the kernel of the
trace matrix mod p, which keeps the search small. When one is found the order
is replaced by O[x] (Hermite normal form of the spanning set) and the step
repeats; when none exists the order is p-maximal.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product
from math import lcm
from typing import Sequence

from . import poly as P
from .localq import prime_factors
from .numfield import NumberField, make_field, order_disc


def _hnf_rows(rows: list[list[int]]) -> list[list[int]]:
    """Row Hermite form of an integer matrix, pivots on the diagonal from the last column backwards."""
    rows = [list(r) for r in rows if any(r)]
    ncol = len(rows[0])
    out = []
    for col in range(ncol - 1, -1, -1):
        live = [r for r in rows if r[col] != 0]
        rest = [r for r in rows if r[col] == 0]
        while len(live) > 1:
            live.sort(key=lambda r: abs(r[col]))
            piv = live[0]
            nxt = [piv]
            for r in live[1:]:
                q = r[col] // piv[col]
                r2 = [a - q * b for a, b in zip(r, piv)]
                if r2[col] != 0:
                    nxt.append(r2)
                elif any(r2):
                    rest.append(r2)
            live = nxt
        if live:
            piv = live[0]
            if piv[col] < 0:
                piv = [-a for a in piv]
            out.append(piv)
        rows = rest
    # reduce entries above pivots
    for i, r in enumerate(out):
        pc = ncol - 1 - i
        for k in range(i):
            s = out[k]
            q = s[pc] // r[pc]
            if q:
                out[k] = [a - q * b for a, b in zip(s, r)]
    return out


def _order_from_generators(gens: list[list[Fraction]], d: int) -> list[list[Fraction]]:
    den = 1
    for g in gens:
        for c in g:
            den = lcm(den, Fraction(c).denominator)
    ints = [[int(Fraction(c) * den) for c in g] for g in gens]
    h = _hnf_rows(ints)
    if len(h) != d:
        raise ValueError("generators do not span a full lattice")
    basis = [[Fraction(c, den) for c in row] for row in reversed(h)]
    if basis[0] != [Fraction(1)] + [Fraction(0)] * (d - 1):
        raise ValueError("order does not meet Q in Z")
    return basis


def _power_mul(fld_poly, a, b):
    d = len(fld_poly) - 1
    prod = P.pmul(a, b)
    _, r = P.pdivmod(prod, fld_poly)
    r = list(r) + [Fraction(0)] * (d - len(r))
    return r


def _is_integral(fld: NumberField, powc) -> bool:
    M = _mult_matrix_power(fld.minpoly, powc)
    cp = P.charpoly(M)
    return all(Fraction(c).denominator == 1 for c in cp)


def _mult_matrix_power(f, x):
    d = len(f) - 1
    rows = []
    for k in range(d):
        e = [Fraction(0)] * d
        e[k] = Fraction(1)
        rows.append(_power_mul(f, x, e))
    return rows


def _kernel_mod_p(M: list[list[int]], p: int) -> list[list[int]]:
    """Basis of {c : c M = 0 mod p}."""
    n = len(M)
    m = len(M[0])
    # solve M^T c = 0 by row reduction of M^T
    A = [[M[i][j] % p for i in range(n)] for j in range(m)]
    pivots = []
    r = 0
    for col in range(n):
        piv = next((i for i in range(r, m) if A[i][col]), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        inv = pow(A[r][col], -1, p)
        A[r] = [(x * inv) % p for x in A[r]]
        for i in range(m):
            if i != r and A[i][col]:
                f = A[i][col]
                A[i] = [(x - f * y) % p for x, y in zip(A[i], A[r])]
        pivots.append(col)
        r += 1
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for fc in free:
        v = [0] * n
        v[fc] = 1
        for row, pc in enumerate(pivots):
            v[pc] = (-A[row][fc]) % p
        basis.append(v)
    return basis


def _enlarge_at(fld: NumberField, p: int):
    """An integral element of (1/p)O not in O, in power coordinates, or None."""
    d = fld.degree
    T = [[fld.trace_coords(fld.mult_table[i][j]) for j in range(d)] for i in range(d)]
    ker = _kernel_mod_p(T, p)
    if not ker:
        return None
    for coeffs in product(range(p), repeat=len(ker)):
        if not any(coeffs):
            continue
        c = [sum(a * v[i] for a, v in zip(coeffs, ker)) % p for i in range(d)]
        powc = [Fraction(0)] * d
        for i in range(d):
            if c[i]:
                for t in range(d):
                    powc[t] += Fraction(c[i], p) * fld.basis[i][t]
        if _is_integral(fld, powc):
            return powc
    return None


def maximal_order_basis(minpoly: Sequence[int]) -> list[list[Fraction]]:
    f = tuple(int(c) for c in minpoly)
    d = len(f) - 1
    basis = [[Fraction(int(i == j)) for j in range(d)] for i in range(d)]
    fld = NumberField(f, basis)
    disc = abs(order_disc(fld))
    if disc == 0:
        raise ValueError("polynomial is not squarefree")
    for p in prime_factors(disc):
        while order_disc(fld) % (p * p) == 0:
            x = _enlarge_at(fld, p)
            if x is None:
                break
            # ring generated by the old basis and x
            gens = [list(b) for b in fld.basis]
            xp = [Fraction(1)] + [Fraction(0)] * (d - 1)
            for _ in range(1, d):
                xp = _power_mul(f, xp, x)
                for b in fld.basis:
                    gens.append(_power_mul(f, list(b), xp))
            fld = NumberField(f, _order_from_generators(gens, d))
    return [list(r) for r in fld.basis]


def field_with_maximal_order(minpoly: Sequence[int], label: str = "") -> NumberField:
    return make_field(minpoly, maximal_order_basis(minpoly), label)
