"""Totally real number fields given by a monic polynomial and an integral basis.

Elements of the order are integer coordinate vectors in the integral basis
``b_1 = 1, b_2, ..., b_d`` (rows of ``basis``, written over the power basis of
the generator ``theta``). Real embeddings are indexed by the isolated real
roots of the minimal polynomial in increasing order.

Every sign or comparison is decided with exact rational interval arithmetic;
zero is recognized from the coordinates alone.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import floor, ceil
from typing import Iterable, Sequence

from . import poly as P


class NumberFieldError(ValueError):
    pass


class NotMonic(NumberFieldError):
    pass


class NotSquarefree(NumberFieldError):
    pass


class BasisNotClosed(NumberFieldError):
    pass


class BasisSingular(NumberFieldError):
    pass


class NoRationalRootCheckFailed(NumberFieldError):
    """A minimal polynomial of degree <= 3 has a rational root, so it is reducible."""


class FieldMismatch(NumberFieldError):
    pass


class NotTotallyRealField(NumberFieldError):
    pass


class InvalidImage(NumberFieldError):
    pass


class NotIntegralImage(NumberFieldError):
    pass


class PrecisionExhausted(ArithmeticError):
    """Interval refinement did not separate a value from zero (reducible minpoly?)."""


MAX_PREC = 1 << 13


def _divisors(n: int) -> list[int]:
    n = abs(n)
    out = []
    k = 1
    while k * k <= n:
        if n % k == 0:
            out.extend({k, n // k})
        k += 1
    return out


def _has_rational_root(f: Sequence[int]) -> bool:
    if f[0] == 0:
        return True
    for r in _divisors(f[0]):
        if P.peval(f, r) == 0 or P.peval(f, -r) == 0:
            return True
    return False


class NumberField:
    """A number field with an explicit order. Build with :func:`make_field`."""

    def __init__(self, minpoly, basis, label=""):
        self.minpoly: tuple[int, ...] = tuple(int(c) for c in minpoly)
        self.degree: int = len(self.minpoly) - 1
        self.basis: tuple[tuple[Fraction, ...], ...] = tuple(tuple(Fraction(c) for c in row) for row in basis)
        self.label = label
        d = self.degree
        self._key = (self.minpoly, self.basis)
        try:
            self._basis_inv = P.inverse(self.basis)
        except ZeroDivisionError:
            raise BasisSingular("integral basis matrix is singular") from None
        # power-basis reduction of theta^k, k < 2d - 1
        self._theta_pow = []
        cur = [Fraction(0)] * d
        cur[0] = Fraction(1)
        for _ in range(2 * d - 1):
            self._theta_pow.append(tuple(cur))
            top = cur[-1]
            nxt = [Fraction(0)] + cur[:-1]
            for i in range(d):
                nxt[i] -= top * self.minpoly[i]
            cur = nxt
        table = []
        for i in range(d):
            row = []
            for j in range(d):
                prod = P.pmul(self.basis[i], self.basis[j])
                if len(prod) < 2 * d - 1:
                    prod = prod + (0,) * (2 * d - 1 - len(prod))
                powc = [Fraction(0)] * d
                for k, c in enumerate(prod):
                    if c:
                        for t in range(d):
                            powc[t] += c * self._theta_pow[k][t]
                coords = self._power_to_basis(powc)
                if any(c.denominator != 1 for c in coords):
                    raise BasisNotClosed(f"b_{i + 1} * b_{j + 1} has non-integral coordinates {coords}")
                row.append(tuple(int(c) for c in coords))
            table.append(tuple(row))
        self.mult_table: tuple = tuple(table)
        self._basis_traces = tuple(sum(self.mult_table[j][k][k] for k in range(d)) for j in range(d))
        self.totally_real = P.count_real_roots(self.minpoly) == d
        self.root_intervals = tuple(P.isolate_real_roots(self.minpoly)) if self.totally_real else None
        self._roots = list(self.root_intervals) if self.totally_real else None
        self._enc_cache: dict[int, list] = {}

    # ------------------------------------------------------------ identity
    def __eq__(self, other):
        return isinstance(other, NumberField) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        name = self.label or "NumberField"
        return f"<{name}: minpoly {list(self.minpoly)}, degree {self.degree}>"

    # ------------------------------------------------------------ coordinates
    def _power_to_basis(self, powc) -> list[Fraction]:
        d = self.degree
        return [sum(Fraction(powc[i]) * self._basis_inv[i][j] for i in range(d)) for j in range(d)]

    def element(self, coords: Iterable[int]) -> "OrderElement":
        coords = tuple(int(c) for c in coords)
        if len(coords) != self.degree:
            raise ValueError(f"expected {self.degree} coordinates, got {len(coords)}")
        return OrderElement(self, coords)

    def from_int(self, n: int) -> "OrderElement":
        return OrderElement(self, (int(n),) + (0,) * (self.degree - 1))

    @property
    def zero(self) -> "OrderElement":
        return self.from_int(0)

    @property
    def one(self) -> "OrderElement":
        return self.from_int(1)

    def from_power(self, coeffs: Sequence) -> "OrderElement":
        """Element given by power-basis coefficients (constant first); must lie in the order."""
        coeffs = list(coeffs) + [0] * (2 * self.degree - 1 - len(coeffs))
        powc = [Fraction(0)] * self.degree
        for k, c in enumerate(coeffs):
            if c:
                pw = self._theta_pow[k] if k < len(self._theta_pow) else self._reduce_power(k)
                for t in range(self.degree):
                    powc[t] += Fraction(c) * pw[t]
        coords = self._power_to_basis(powc)
        if any(c.denominator != 1 for c in coords):
            raise ValueError("element is not in the order")
        return OrderElement(self, tuple(int(c) for c in coords))

    def _reduce_power(self, k: int):
        _, r = P.pdivmod((0,) * k + (1,), self.minpoly)
        return tuple(r) + (0,) * (self.degree - len(r))

    def gen(self) -> "OrderElement":
        return self.from_power([0, 1])

    def to_power(self, x: "OrderElement") -> tuple[Fraction, ...]:
        d = self.degree
        return tuple(sum(x.coords[i] * self.basis[i][j] for i in range(d)) for j in range(d))

    # ------------------------------------------------------------ ring ops on raw coordinates
    def mul_coords(self, a: Sequence[int], b: Sequence[int]) -> tuple[int, ...]:
        d = self.degree
        out = [0] * d
        table = self.mult_table
        for i in range(d):
            ai = a[i]
            if not ai:
                continue
            row = table[i]
            for j in range(d):
                bj = b[j]
                if not bj:
                    continue
                p = ai * bj
                t = row[j]
                for k in range(d):
                    if t[k]:
                        out[k] += p * t[k]
        return tuple(out)

    def trace_coords(self, a: Sequence) -> int:
        return sum(c * t for c, t in zip(a, self._basis_traces))

    def mult_matrix(self, a: Sequence) -> list[list]:
        d = self.degree
        cols = [self.mul_coords(a, tuple(int(i == j) for i in range(d))) for j in range(d)]
        return [[cols[j][k] for j in range(d)] for k in range(d)]

    # ------------------------------------------------------------ embeddings
    def _require_real(self):
        if not self.totally_real:
            raise NotTotallyRealField(f"{self!r} is not totally real")

    def _basis_enclosures(self, prec: int) -> list[list[tuple[int, int]]]:
        """Per root, per basis element: integers (lo, hi) with lo <= 2^prec * b_j(root) <= hi."""
        self._require_real()
        if prec in self._enc_cache:
            return self._enc_cache[prec]
        scale = 1 << prec
        tol = Fraction(1, scale << 2)
        table = []
        for k in range(self.degree):
            lo, hi = self._roots[k]
            while True:
                encs = [P.interval_eval(self.basis[j], lo, hi) for j in range(self.degree)]
                if all(h - l <= tol for l, h in encs):
                    break
                lo, hi = P.refine_root(self.minpoly, lo, hi)
            self._roots[k] = (lo, hi)
            table.append([(floor(l * scale), ceil(h * scale)) for l, h in encs])
        self._enc_cache[prec] = table
        return table

    def enclosures(self, coords: Sequence[int], prec: int = 64) -> list[tuple[int, int]]:
        """Integer bounds (lo, hi) on 2^prec * sigma_k(x) for every real embedding k."""
        out = []
        for row in self._basis_enclosures(prec):
            lo = hi = 0
            for c, (l, h) in zip(coords, row):
                if c > 0:
                    lo += c * l
                    hi += c * h
                elif c < 0:
                    lo += c * h
                    hi += c * l
            out.append((lo, hi))
        return out

    def signs_coords(self, coords: Sequence[int]) -> list[int]:
        """Exact signs of all real embeddings of a nonzero element."""
        if not any(coords):
            return [0] * self.degree
        signs = [0] * self.degree
        prec = 64
        while True:
            for k, (lo, hi) in enumerate(self.enclosures(coords, prec)):
                if signs[k] == 0:
                    if lo > 0:
                        signs[k] = 1
                    elif hi < 0:
                        signs[k] = -1
            if all(signs):
                return signs
            prec *= 2
            if prec > MAX_PREC:
                raise PrecisionExhausted("could not separate an embedding from zero")

    def is_totally_nonnegative_coords(self, coords: Sequence[int]) -> bool:
        if not any(coords):
            return True
        for lo, hi in self.enclosures(coords, 64):
            if hi < 0:
                return False
        return all(s > 0 for s in self.signs_coords(coords))

    def embedding_enclosure(self, x: "OrderElement", k: int, eps: Fraction) -> tuple[Fraction, Fraction]:
        prec = 64
        while True:
            lo, hi = self.enclosures(x.coords, prec)[k]
            if Fraction(hi - lo, 1 << prec) <= eps:
                return Fraction(lo, 1 << prec), Fraction(hi, 1 << prec)
            prec *= 2

    def conjugate_floats(self, x: "OrderElement") -> list[float]:
        """Approximate real conjugates (display only)."""
        return [float(Fraction(lo + hi, 2 << 64)) for lo, hi in self.enclosures(x.coords, 64)]


@dataclass(frozen=True, slots=True)
class OrderElement:
    field: NumberField
    coords: tuple[int, ...]

    def _check(self, other) -> "OrderElement":
        if isinstance(other, int):
            return self.field.from_int(other)
        if not isinstance(other, OrderElement):
            return NotImplemented
        if other.field is not self.field and other.field != self.field:
            raise FieldMismatch("elements belong to different fields")
        return other

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return OrderElement(self.field, tuple(a + b for a, b in zip(self.coords, other.coords)))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return OrderElement(self.field, tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return OrderElement(self.field, tuple(-a for a in self.coords))

    def __mul__(self, other):
        if isinstance(other, int):
            return OrderElement(self.field, tuple(other * a for a in self.coords))
        other = self._check(other)
        if other is NotImplemented:
            return other
        return OrderElement(self.field, self.field.mul_coords(self.coords, other.coords))

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative powers are not order elements")
        out = self.field.one
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def is_zero(self) -> bool:
        return not any(self.coords)

    def is_rational(self) -> bool:
        return not any(self.coords[1:])

    def __repr__(self):
        return f"OrderElement({list(self.coords)})"


@dataclass(frozen=True)
class FieldEmbedding:
    source: NumberField
    target: NumberField
    image: OrderElement
    _powers: tuple = ()


# ---------------------------------------------------------------- construction


def make_field(minpoly: Sequence[int], basis: Sequence[Sequence] | None = None, label: str = "") -> NumberField:
    """Validate and build a field. ``basis=None`` means the power basis."""
    f = P.trim([int(c) for c in minpoly])
    if len(f) < 2 or f[-1] != 1:
        raise NotMonic(f"minimal polynomial {list(f)} is not monic of degree >= 1")
    d = len(f) - 1
    if not P.is_squarefree(f):
        raise NotSquarefree(f"{list(f)} has a repeated factor")
    if 2 <= d <= 3 and _has_rational_root(f):
        raise NoRationalRootCheckFailed(f"{list(f)} has a rational root")
    if basis is None:
        basis = [[int(i == j) for j in range(d)] for i in range(d)]
    basis = [[Fraction(c) for c in row] for row in basis]
    if len(basis) != d or any(len(row) != d for row in basis):
        raise ValueError("basis must be a d x d matrix")
    if basis[0] != [1] + [0] * (d - 1):
        raise ValueError("first basis element must be 1")
    return NumberField(f, basis, label)


def rational_field() -> NumberField:
    return make_field((-1, 1), [[1]], label="Q")


# ---------------------------------------------------------------- free-function operations


def add(x: OrderElement, y: OrderElement) -> OrderElement:
    return x + y


def mul(x: OrderElement, y: OrderElement) -> OrderElement:
    return x * y


def trace(x: OrderElement) -> Fraction:
    return Fraction(x.field.trace_coords(x.coords))


def norm(x: OrderElement) -> Fraction:
    return P.det(x.field.mult_matrix(x.coords))


def char_poly(x: OrderElement) -> tuple[int, ...]:
    cp = P.charpoly(x.field.mult_matrix(x.coords))
    return tuple(int(c) for c in cp)


def minimal_poly(x: OrderElement) -> tuple[int, ...]:
    """Minimal polynomial over Q (the squarefree part of the characteristic polynomial)."""
    cp = char_poly(x)
    g = P.pgcd(cp, P.pderiv(cp))
    if len(g) <= 1:
        return cp
    q, _ = P.pdivmod(cp, g)
    return tuple(int(c) for c in P.pmonic(q))


def is_totally_positive(x: OrderElement) -> bool:
    x.field._require_real()
    if x.is_zero():
        return False
    return all(s > 0 for s in x.field.signs_coords(x.coords))


def is_totally_nonnegative(x: OrderElement) -> bool:
    x.field._require_real()
    return x.field.is_totally_nonnegative_coords(x.coords)


def signs(x: OrderElement) -> list[int]:
    x.field._require_real()
    return x.field.signs_coords(x.coords)


def house_enclosure(x: OrderElement, eps: Fraction) -> tuple[Fraction, Fraction]:
    """Interval [lo, hi] of width <= eps containing max over embeddings of |sigma(x)|."""
    fld = x.field
    fld._require_real()
    eps = Fraction(eps)
    prec = 64
    while True:
        scale = 1 << prec
        best_lo = best_hi = Fraction(0)
        for lo, hi in fld.enclosures(x.coords, prec):
            alo = 0 if lo <= 0 <= hi else min(abs(lo), abs(hi))
            ahi = max(abs(lo), abs(hi))
            best_lo = max(best_lo, Fraction(alo, scale))
            best_hi = max(best_hi, Fraction(ahi, scale))
        if best_hi - best_lo <= eps:
            return best_lo, best_hi
        prec *= 2
        if prec > MAX_PREC:
            raise PrecisionExhausted("house enclosure did not converge")


def house_lt(x: OrderElement, bound) -> bool:
    """Exactly decide max_sigma |sigma(x)| < bound."""
    fld = x.field
    fld._require_real()
    bound = Fraction(bound)
    if bound <= 0:
        return False
    p, q = bound.numerator, bound.denominator
    below = tuple(q * c for c in x.coords)
    below = (below[0] - p,) + below[1:]
    above = (below[0] + 2 * p,) + below[1:]
    if not any(below) or not any(above):
        return False
    return all(s < 0 for s in fld.signs_coords(below)) and all(s > 0 for s in fld.signs_coords(above))


def house_le(x: OrderElement, bound) -> bool:
    """Exactly decide max_sigma |sigma(x)| <= bound."""
    fld = x.field
    fld._require_real()
    bound = Fraction(bound)
    if bound < 0:
        return False
    p, q = bound.numerator, bound.denominator
    below = tuple(q * c for c in x.coords)
    below = (below[0] - p,) + below[1:]
    above = (below[0] + 2 * p,) + below[1:]
    return all(s <= 0 for s in fld.signs_coords(below)) and all(s >= 0 for s in fld.signs_coords(above))


def elem_disc(x: OrderElement) -> int:
    cp = char_poly(x)
    if len(cp) == 2:
        return 1
    return int(P.discriminant(cp))


def order_disc(fld: NumberField) -> int:
    """Discriminant of the order: det of the trace pairing on the integral basis."""
    d = fld.degree
    gram = [[fld.trace_coords(fld.mult_table[i][j]) for j in range(d)] for i in range(d)]
    return int(P.det(gram))


def make_embedding(source: NumberField, target: NumberField, image: OrderElement) -> FieldEmbedding:
    if image.field != target:
        raise FieldMismatch("image must lie in the target field")
    powers = [target.one]
    for _ in range(source.degree):
        powers.append(powers[-1] * image)
    value = target.zero
    for c, pw in zip(source.minpoly, powers):
        value = value + pw * c
    if not value.is_zero():
        raise InvalidImage("source minimal polynomial does not vanish at the image")
    return FieldEmbedding(source, target, image, tuple(powers[: source.degree]))


def identity_embedding(fld: NumberField) -> FieldEmbedding:
    return make_embedding(fld, fld, fld.gen())


def canonical_embedding(target: NumberField) -> FieldEmbedding:
    """The inclusion Z -> O_L, source being the rational field."""
    return make_embedding(rational_field(), target, target.one)


def map_elem(e: FieldEmbedding, x: OrderElement) -> OrderElement:
    if x.field != e.source:
        raise FieldMismatch("element is not in the embedding's source")
    powc = e.source.to_power(x)
    d = e.target.degree
    acc = [Fraction(0)] * d
    for c, pw in zip(powc, e._powers):
        if c:
            for t in range(d):
                acc[t] += c * pw.coords[t]
    if any(c.denominator != 1 for c in acc):
        raise NotIntegralImage("image leaves the target order")
    return OrderElement(e.target, tuple(int(c) for c in acc))
