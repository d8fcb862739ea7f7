"""Quadratic forms on free modules O^n over an order.

A form stores its polynomial coefficients ``c[i][j]`` (i <= j), so that
``Q(x) = sum_{i<=j} c[i][j] x_i x_j``. The associated bilinear map has Gram
matrix ``2c[i][i]`` on the diagonal and ``c[i][j]`` off it.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .numfield import (
    FieldEmbedding,
    FieldMismatch,
    NumberField,
    NotTotallyRealField,
    OrderElement,
    is_totally_positive,
    map_elem,
)


class FormError(ValueError):
    pass


class EmptyEntries(FormError):
    pass


class RankMismatch(FormError):
    pass


class DegenerateForm(FormError):
    pass


@dataclass(frozen=True)
class DiagonalRationalForm:
    entries: tuple[Fraction, ...]

    def __post_init__(self):
        if not self.entries:
            raise EmptyEntries("a diagonal form needs at least one entry")
        object.__setattr__(self, "entries", tuple(Fraction(e) for e in self.entries))
        if any(e == 0 for e in self.entries):
            raise DegenerateForm("diagonal entries must be nonzero")

    @property
    def rank(self) -> int:
        return len(self.entries)

    def orth(self, other: "DiagonalRationalForm") -> "DiagonalRationalForm":
        return DiagonalRationalForm(self.entries + other.entries)


@dataclass(frozen=True)
class QuadraticForm:
    field: NumberField
    rank: int
    coeffs: tuple[tuple[OrderElement, ...], ...]

    def c(self, i: int, j: int) -> OrderElement:
        return self.coeffs[min(i, j)][max(i, j)]

    def is_diagonal(self) -> bool:
        return all(self.coeffs[i][j].is_zero() for i in range(self.rank) for j in range(i + 1, self.rank))

    def has_rational_coeffs(self) -> bool:
        return all(self.coeffs[i][j].is_rational() for i in range(self.rank) for j in range(i, self.rank))

    def diagonal(self) -> list[OrderElement]:
        return [self.coeffs[i][i] for i in range(self.rank)]

    def half_gram_rational(self) -> list[list[Fraction]]:
        """Symmetric rational matrix S with Q(x) = x^T S x; rational coefficients only."""
        n = self.rank
        return [[Fraction(self.c(i, j).coords[0]) * (1 if i == j else Fraction(1, 2)) for j in range(n)] for i in range(n)]

    def subform(self, idx: Sequence[int]) -> "QuadraticForm":
        idx = list(idx)
        rows = []
        for a, i in enumerate(idx):
            rows.append(tuple(self.c(i, j) if b >= a else self.field.zero for b, j in enumerate(idx)))
        return QuadraticForm(self.field, len(idx), tuple(rows))

    def __repr__(self):
        if self.field.degree == 1:
            if self.is_diagonal():
                return "<" + ", ".join(str(e.coords[0]) for e in self.diagonal()) + ">"
        return f"QuadraticForm(rank={self.rank}, field={self.field.label or self.field.minpoly})"


def _coerce(field: NumberField, x) -> OrderElement:
    if isinstance(x, OrderElement):
        if x.field != field:
            raise FieldMismatch("coefficient from another field")
        return x
    if isinstance(x, int):
        return field.from_int(x)
    return field.element(x)


def diag_form(field: NumberField, entries: Sequence) -> QuadraticForm:
    if not entries:
        raise EmptyEntries("diagonal form needs at least one entry")
    n = len(entries)
    vals = [_coerce(field, e) for e in entries]
    rows = tuple(tuple(vals[i] if j == i else field.zero for j in range(n)) for i in range(n))
    return QuadraticForm(field, n, rows)


def general_form(field: NumberField, coeffs: Sequence[Sequence]) -> QuadraticForm:
    """Form from an n x n matrix whose upper triangle holds the coefficients c_ij."""
    n = len(coeffs)
    if n == 0:
        raise EmptyEntries("form needs rank >= 1")
    rows = []
    for i in range(n):
        if len(coeffs[i]) != n:
            raise RankMismatch("coefficient matrix must be square")
        rows.append(tuple(_coerce(field, coeffs[i][j]) if j >= i else field.zero for j in range(n)))
    return QuadraticForm(field, n, tuple(rows))


def _check_vector(Q: QuadraticForm, v: Sequence[OrderElement]):
    if len(v) != Q.rank:
        raise RankMismatch(f"vector of length {len(v)} for a rank {Q.rank} form")
    for x in v:
        if x.field != Q.field:
            raise FieldMismatch("vector entry from another field")


def evaluate_coords(Q: QuadraticForm, vs: Sequence[Sequence[int]]) -> tuple[int, ...]:
    fld = Q.field
    d = fld.degree
    acc = [0] * d
    for i in range(Q.rank):
        if not any(vs[i]):
            continue
        for j in range(i, Q.rank):
            c = Q.coeffs[i][j].coords
            if not any(c) or not any(vs[j]):
                continue
            t = fld.mul_coords(c, fld.mul_coords(vs[i], vs[j]))
            for k in range(d):
                acc[k] += t[k]
    return tuple(acc)


def evaluate(Q: QuadraticForm, v: Sequence[OrderElement]) -> OrderElement:
    _check_vector(Q, v)
    return OrderElement(Q.field, evaluate_coords(Q, [x.coords for x in v]))


def bilinear(Q: QuadraticForm, u: Sequence[OrderElement], w: Sequence[OrderElement]) -> OrderElement:
    _check_vector(Q, u)
    _check_vector(Q, w)
    s = [a + b for a, b in zip(u, w)]
    return evaluate(Q, s) - evaluate(Q, u) - evaluate(Q, w)


def gram_matrix(Q: QuadraticForm) -> list[list[OrderElement]]:
    n = Q.rank
    return [[Q.c(i, j) * (2 if i == j else 1) for j in range(n)] for i in range(n)]


def _det_ring(m: list[list[OrderElement]], zero: OrderElement) -> OrderElement:
    n = len(m)

    @lru_cache(maxsize=None)
    def minor(row: int, cols: frozenset) -> OrderElement:
        if row == n:
            return zero.field.one
        acc = zero
        sign = 1
        for c in sorted(cols):
            if not m[row][c].is_zero():
                term = m[row][c] * minor(row + 1, cols - {c})
                acc = acc + term if sign > 0 else acc - term
            sign = -sign
        return acc

    return minor(0, frozenset(range(n)))


def is_positive_definite(Q: QuadraticForm) -> bool:
    if not Q.field.totally_real:
        raise NotTotallyRealField("positive definiteness needs a totally real field")
    g = gram_matrix(Q)
    for k in range(1, Q.rank + 1):
        sub = [row[:k] for row in g[:k]]
        if not is_totally_positive(_det_ring(sub, Q.field.zero)):
            return False
    return True


def orth_sum(Q1: QuadraticForm, Q2: QuadraticForm) -> QuadraticForm:
    if Q1.field != Q2.field:
        raise FieldMismatch("orthogonal sum of forms over different fields")
    n1, n2 = Q1.rank, Q2.rank
    z = Q1.field.zero
    rows = []
    for i in range(n1):
        rows.append(tuple(Q1.coeffs[i]) + (z,) * n2)
    for i in range(n2):
        rows.append((z,) * n1 + tuple(Q2.coeffs[i]))
    return QuadraticForm(Q1.field, n1 + n2, tuple(rows))


def extend_scalars(Q: QuadraticForm, e: FieldEmbedding) -> QuadraticForm:
    if Q.field != e.source:
        raise FieldMismatch("embedding source differs from the form's field")
    rows = tuple(tuple(map_elem(e, c) for c in row) for row in Q.coeffs)
    return QuadraticForm(e.target, Q.rank, rows)


def rational_diagonalize(Q: QuadraticForm) -> DiagonalRationalForm:
    """Diagonal form over Q equivalent to Q (symmetric Gaussian elimination)."""
    if not Q.has_rational_coeffs():
        raise FormError("rational diagonalization needs coefficients in Q")
    return diagonalize_symmetric(Q.half_gram_rational())


def diagonalize_symmetric(s: Sequence[Sequence]) -> DiagonalRationalForm:
    a = [[Fraction(x) for x in row] for row in s]
    n = len(a)
    out = []
    for k in range(n):
        piv = next((i for i in range(k, n) if a[i][i] != 0), None)
        if piv is None:
            pair = next(((i, j) for i in range(k, n) for j in range(i + 1, n) if a[i][j] != 0), None)
            if pair is None:
                raise DegenerateForm("form is degenerate")
            i, j = pair
            # x_i <- x_i + x_j makes the ith diagonal entry 2 a_ij
            for t in range(n):
                a[i][t] += a[j][t]
            for t in range(n):
                a[t][i] += a[t][j]
            piv = i
        a[k], a[piv] = a[piv], a[k]
        for row in a:
            row[k], row[piv] = row[piv], row[k]
        p = a[k][k]
        out.append(p)
        for i in range(k + 1, n):
            f = a[i][k] / p
            if f:
                for t in range(k, n):
                    a[i][t] -= f * a[k][t]
        for i in range(k + 1, n):
            a[k][i] = Fraction(0)
            a[i][k] = Fraction(0)
    return DiagonalRationalForm(tuple(out))
