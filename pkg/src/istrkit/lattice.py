"""Exact LDL^T and Fincke-Pohst enumeration of integer vectors in an ellipsoid.

The quadratic function is q(v) = (v + s)^T A (v + s) with A rational symmetric
positive definite and s an optional rational shift. After LDL^T the search runs
on integers only: every level is rescaled to a common denominator, so bounds
come from ``math.isqrt`` and no rounding decisions are ever approximate.
"""

from __future__ import annotations

from fractions import Fraction
from math import isqrt, lcm
from typing import Iterator, Sequence


class NotPositiveDefinite(ValueError):
    pass


class NegativeTarget(ValueError):
    pass


class BudgetExceeded(RuntimeError):
    pass


def ldlt(G: Sequence[Sequence]) -> tuple[list[list[Fraction]], list[Fraction]]:
    """G = L D L^T with L unit lower triangular; raises if a pivot is <= 0."""
    n = len(G)
    a = [[Fraction(x) for x in row] for row in G]
    for i in range(n):
        for j in range(n):
            if a[i][j] != a[j][i]:
                raise ValueError("matrix is not symmetric")
    L = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    D = [Fraction(0)] * n
    for j in range(n):
        dj = a[j][j] - sum(L[j][k] ** 2 * D[k] for k in range(j))
        if dj <= 0:
            raise NotPositiveDefinite(f"pivot {j} is {dj}")
        D[j] = dj
        for i in range(j + 1, n):
            L[i][j] = (a[i][j] - sum(L[i][k] * L[j][k] * D[k] for k in range(j))) / dj
    return L, D


def reversed_ldlt(A: Sequence[Sequence]):
    """LDL^T of A with rows and columns reversed, so the first coordinate is outermost."""
    n = len(A)
    rev = [[Fraction(A[n - 1 - i][n - 1 - j]) for j in range(n)] for i in range(n)]
    return ldlt(rev) if n else ([], [])


class Counter:
    """Shared node counter with an optional cap."""

    def __init__(self, cap: int | None = None):
        self.nodes = 0
        self.cap = cap

    def tick(self, k: int = 1):
        self.nodes += k
        if self.cap is not None and self.nodes > self.cap:
            raise BudgetExceeded(f"node cap {self.cap} exceeded")


class Ellipsoid:
    """Integer points of q(v) = (v + s)^T A (v + s), emitted in lexicographic order of v."""

    def __init__(self, A: Sequence[Sequence], shift: Sequence | None = None, factor=None):
        n = len(A)
        self.dim = n
        if factor is None:
            factor = reversed_ldlt(A)
        L, D = factor
        s = [Fraction(0)] * n if shift is None else [Fraction(x) for x in reversed(list(shift))]
        # level k: Y_k = den_k * (w_k + sum_{m>k} L_mk w_m + c_k) is an integer
        self.den, self.ell, self.off = [], [], []
        for k in range(n):
            ck = s[k] + sum(L[m][k] * s[m] for m in range(k + 1, n))
            den = ck.denominator
            for m in range(k + 1, n):
                den = lcm(den, L[m][k].denominator)
            self.den.append(den)
            self.ell.append([(m, int(L[m][k] * den)) for m in range(k + 1, n) if L[m][k] != 0])
            self.off.append(int(ck * den))
        weights = [D[k] / self.den[k] ** 2 for k in range(n)]
        M = 1
        for w in weights:
            M = lcm(M, w.denominator)
        self.scale = M
        self.omega = [int(w * M) for w in weights]

    def points(self, bound, exact: bool = False, counter: Counter | None = None) -> Iterator[tuple[int, ...]]:
        """Vectors with q(v) <= bound (or == bound when ``exact``)."""
        n = self.dim
        counter = counter or Counter()
        bound = Fraction(bound)
        if bound < 0:
            if exact:
                raise NegativeTarget("target value must be nonnegative")
            return
        if n == 0:
            if not exact or bound == 0:
                yield ()
            return
        scaled = bound * self.scale
        if exact and scaled.denominator != 1:
            return
        R0 = scaled.numerator // scaled.denominator
        den, ell, off, omega = self.den, self.ell, self.off, self.omega
        w = [0] * n
        hi = [0] * n
        cen = [0] * n
        rem = [0] * (n + 1)
        rem[n] = R0
        leaf: list[int] = []

        def open_level(k: int) -> None:
            C = off[k]
            for m, c in ell[k]:
                C += c * w[m]
            cen[k] = C
            R = rem[k + 1]
            if k == 0 and exact:
                leaf.clear()
                q, r = divmod(R, omega[0])
                if r == 0:
                    s = isqrt(q)
                    if s * s == q:
                        for Y in sorted({-s, s}):
                            t = Y - C
                            if t % den[0] == 0:
                                leaf.append(t // den[0])
                return
            s = isqrt(R // omega[k])
            w[k] = -((s + C) // den[k])
            hi[k] = (s - C) // den[k]

        k = n - 1
        open_level(k)
        while True:
            if k == 0 and exact:
                counter.tick(1 + len(leaf))
                for w0 in leaf:
                    w[0] = w0
                    yield tuple(reversed(w))
                k = 1
                if k == n:
                    return
                w[k] += 1
                continue
            if w[k] > hi[k]:
                k += 1
                if k == n:
                    return
                w[k] += 1
                continue
            counter.tick()
            if k == 0:
                yield tuple(reversed(w))
                w[0] += 1
                continue
            Y = den[k] * w[k] + cen[k]
            rem[k] = rem[k + 1] - omega[k] * Y * Y
            k -= 1
            open_level(k)


def value(A: Sequence[Sequence], v: Sequence, shift: Sequence | None = None) -> Fraction:
    n = len(A)
    x = [Fraction(v[i]) + (Fraction(shift[i]) if shift is not None else 0) for i in range(n)]
    return sum(Fraction(A[i][j]) * x[i] * x[j] for i in range(n) for j in range(n))
