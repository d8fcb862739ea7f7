"""Local obstructions: Hilbert symbols over Q_v, Hasse-Minkowski tests,
congruence solvability and squares in the unramified cubic dyadic order.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Sequence

from .numfield import NumberField, OrderElement, is_totally_positive
from .qform import DiagonalRationalForm, QuadraticForm


class LocalError(ValueError):
    pass


class EvenPrime(LocalError):
    pass


class ZeroArgument(LocalError):
    pass


class ZeroTarget(LocalError):
    pass


class ZeroElement(LocalError):
    pass


class FactorizationLimit(LocalError):
    pass


TRIAL_DIVISION_BOUND = 10**6


@dataclass(frozen=True)
class Place:
    """A place of Q: ``p`` a prime, or ``p = None`` for the real place."""

    p: int | None = None

    @classmethod
    def real(cls) -> "Place":
        return cls(None)

    @classmethod
    def finite(cls, p: int) -> "Place":
        if p < 2 or any(p % q == 0 for q in range(2, int(p**0.5) + 1)):
            raise LocalError(f"{p} is not prime")
        return cls(p)

    @property
    def is_real(self) -> bool:
        return self.p is None

    def __str__(self):
        return "inf" if self.p is None else str(self.p)


REAL = Place.real()


def prime_factors(n: int, bound: int = TRIAL_DIVISION_BOUND) -> list[int]:
    n = abs(n)
    out = []
    q = 2
    while q * q <= n:
        if q > bound:
            raise FactorizationLimit(f"residual {n} not factored below {bound}")
        if n % q == 0:
            out.append(q)
            while n % q == 0:
                n //= q
        q += 1 if q == 2 else 2
    if n > 1:
        out.append(n)
    return out


def squarefree_part(x) -> int:
    """Squarefree integer in the rational square class of x != 0."""
    x = Fraction(x)
    if x == 0:
        raise ZeroArgument("zero has no square class")
    n = x.numerator * x.denominator
    sgn = -1 if n < 0 else 1
    n = abs(n)
    out = 1
    for p in prime_factors(n):
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        if e % 2:
            out *= p
    return sgn * out


def _val(n: int, p: int) -> int:
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def _split(x: Fraction, p: int) -> tuple[int, int]:
    """x ~ p^v u (mod squares) with u an integer prime to p."""
    n = x.numerator * x.denominator
    v = _val(n, p)
    return v, n // p**v


def legendre(a: int, p: int) -> int:
    if p == 2:
        raise EvenPrime("Legendre symbol needs an odd prime")
    a %= p
    if a == 0:
        return 0
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1


def hilbert(a, b, v: Place) -> int:
    a, b = Fraction(a), Fraction(b)
    if a == 0 or b == 0:
        raise ZeroArgument("Hilbert symbol of zero")
    if v.is_real:
        return -1 if a < 0 and b < 0 else 1
    p = v.p
    al, u = _split(a, p)
    be, w = _split(b, p)
    if p != 2:
        eps = (p - 1) // 2
        s = -1 if (al * be * eps) % 2 else 1
        if be % 2:
            s *= legendre(u, p)
        if al % 2:
            s *= legendre(w, p)
        return s
    eu, ew = ((u - 1) // 2) % 2, ((w - 1) // 2) % 2
    ou, ow = ((u * u - 1) // 8) % 2, ((w * w - 1) // 8) % 2
    e = eu * ew + al * ow + be * ou
    return -1 if e % 2 else 1


def hasse(f: DiagonalRationalForm, v: Place) -> int:
    s = 1
    ent = f.entries
    for i in range(len(ent)):
        for j in range(i + 1, len(ent)):
            s *= hilbert(ent[i], ent[j], v)
    return s


def is_square_local(x, v: Place) -> bool:
    x = Fraction(x)
    if x == 0:
        return True
    if v.is_real:
        return x > 0
    val, u = _split(x, v.p)
    if val % 2:
        return False
    if v.p == 2:
        return u % 8 == 1
    return legendre(u, v.p) == 1


def _disc(f: DiagonalRationalForm) -> Fraction:
    d = Fraction(1)
    for e in f.entries:
        d *= e
    return d


def is_isotropic_local(f: DiagonalRationalForm, v: Place) -> bool:
    n = f.rank
    if v.is_real:
        return any(e > 0 for e in f.entries) and any(e < 0 for e in f.entries)
    d = _disc(f)
    if n == 1:
        return False
    if n == 2:
        return is_square_local(-d, v)
    if n == 3:
        return hilbert(-1, -d, v) == hasse(f, v)
    if n == 4:
        return (not is_square_local(d, v)) or hilbert(-1, -1, v) == hasse(f, v)
    return True


def represents_local(f: DiagonalRationalForm, a, v: Place) -> bool:
    a = Fraction(a)
    if a == 0:
        raise ZeroTarget("use is_isotropic_local for the zero target")
    return is_isotropic_local(f.orth(DiagonalRationalForm((-a,))), v)


def relevant_places(f: DiagonalRationalForm, a) -> list[Place]:
    n = 2
    a = Fraction(a)
    for x in (a,) + f.entries:
        n *= x.numerator * x.denominator
    return [REAL] + [Place(p) for p in prime_factors(n)]


def represents_rational(f: DiagonalRationalForm, a) -> bool:
    a = Fraction(a)
    if a == 0:
        raise ZeroTarget("use isotropy for the zero target")
    return all(represents_local(f, a, v) for v in relevant_places(f, a))


def obstructing_places(f: DiagonalRationalForm, a) -> list[Place]:
    return [v for v in relevant_places(f, a) if not represents_local(f, a, v)]


# ---------------------------------------------------------------- congruences


def solvable_mod(Q: QuadraticForm, a: int, m: int) -> bool:
    """Brute force: does Q(x) = a have a solution in (Z/m)^n? Rational coefficients only."""
    if m < 1:
        raise ValueError("modulus must be positive")
    if m == 1:
        return True
    if not Q.has_rational_coeffs():
        raise ValueError("congruence test needs coefficients in Z")
    n = Q.rank
    c = [[Q.c(i, j).coords[0] for j in range(n)] for i in range(n)]
    target = a % m
    if Q.is_diagonal():
        reach = {0}
        for i in range(n):
            vals = {(c[i][i] * x * x) % m for x in range(m)}
            reach = {(r + s) % m for r in reach for s in vals}
        return target in reach
    for x in product(range(m), repeat=n):
        s = 0
        for i in range(n):
            if x[i]:
                for j in range(i, n):
                    s += c[i][j] * x[i] * x[j]
        if s % m == target:
            return True
    return False


def value_set_mod(Q: QuadraticForm, m: int) -> frozenset[int]:
    n = Q.rank
    c = [[Q.c(i, j).coords[0] for j in range(n)] for i in range(n)]
    out = set()
    for x in product(range(m), repeat=n):
        s = sum(c[i][j] * x[i] * x[j] for i in range(n) for j in range(i, n))
        out.add(s % m)
    return frozenset(out)


# ---------------------------------------------------------------- dyadic cubic


@dataclass(frozen=True)
class DyadicCubicContext:
    order: NumberField
    digit_set: tuple[tuple[int, ...], ...]

    @classmethod
    def for_field(cls, fld: NumberField) -> "DyadicCubicContext":
        if fld.degree != 3:
            raise LocalError("dyadic context is implemented for cubic orders only")
        f = fld.minpoly
        if any(sum(c * x**k for k, c in enumerate(f)) % 2 == 0 for x in (0, 1)):
            raise LocalError("2 is not inert: minimal polynomial has a root mod 2")
        if any(c.denominator % 2 == 0 for row in fld.basis for c in row):
            raise LocalError("order is not Z[theta] locally at 2")
        digits = tuple(tuple(bits) for bits in product((0, 1), repeat=3))
        digits = tuple(sorted(digits, key=lambda t: (sum(t), t[::-1])))
        return cls(fld, digits)

    def digit(self, coords: Sequence[int]) -> tuple[int, ...]:
        return tuple(c % 2 for c in coords)


def dyadic_valuation(x: OrderElement, ctx: DyadicCubicContext) -> int:
    if x.is_zero():
        raise ZeroElement("valuation of zero")
    v = 0
    c = x.coords
    while all(t % 2 == 0 for t in c):
        c = tuple(t // 2 for t in c)
        v += 1
    return v


def _squares_mod(ctx: DyadicCubicContext, k: int) -> frozenset:
    m = 1 << k
    fld = ctx.order
    out = set()
    for y in product(range(m), repeat=3):
        sq = fld.mul_coords(y, y)
        out.add(tuple(t % m for t in sq))
    return frozenset(out)


_SQ_CACHE: dict = {}


def squares_mod(ctx: DyadicCubicContext, k: int) -> frozenset:
    key = (ctx.order, k)
    if key not in _SQ_CACHE:
        _SQ_CACHE[key] = _squares_mod(ctx, k)
    return _SQ_CACHE[key]


# units that are squares mod 8 are squares (unramified dyadic local square theorem: 2e+1 = 3)
UNIT_SQUARE_PRECISION = 3


def is_square_dyadic(x: OrderElement, ctx: DyadicCubicContext) -> bool:
    if x.is_zero():
        return True
    v = dyadic_valuation(x, ctx)
    if v % 2:
        return False
    u = tuple(t >> v for t in x.coords)
    m = 1 << UNIT_SQUARE_PRECISION
    return tuple(t % m for t in u) in squares_mod(ctx, UNIT_SQUARE_PRECISION)


def dyadic_digits(x: OrderElement, k: int, ctx: DyadicCubicContext) -> list[tuple[int, ...]]:
    """Digits u_i in the 0/1 basis combinations with x = sum u_i 2^i (mod 2^k)."""
    c = list(x.coords)
    out = []
    for _ in range(k):
        u = ctx.digit(c)
        out.append(u)
        c = [(t - s) // 2 for t, s in zip(c, u)]
    return out


def three_squares_k49(alpha: OrderElement) -> bool:
    """Sum of three squares in the ring of integers of the field of discriminant 49."""
    fld = alpha.field
    if fld.degree != 3 or _disc_of(fld) != 49:
        raise LocalError("criterion applies to the cubic field of discriminant 49 only")
    if alpha.is_zero():
        return True
    if not is_totally_positive(alpha):
        return False
    return not is_square_dyadic(-alpha, DyadicCubicContext.for_field(fld))


def _disc_of(fld: NumberField) -> int:
    from .numfield import order_disc

    return order_disc(fld)
