"""Named fields, forms and elements used by the example suite.

Provenance: every polynomial, image and witness below is quoted data except
SQRT13_IMAGE, which was found by an exhaustive root search of T^2 - 13 in the
order of the real subfield of the 13th cyclotomic field and is re-checked
whenever the embedding is built.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from . import poly as P
from .numfield import NumberField, OrderElement, make_embedding, make_field, rational_field
from .qform import diag_form, extend_scalars, general_form
from .numfield import canonical_embedding

K49_POLY = (-1, -2, 1, 1)  # T^3 + T^2 - 2T - 1
BETA229_POLY = (-1, -4, 0, 1)  # T^3 - 4T - 1
THETA21_POLY = (1, -8, 8, 6, -6, -1, 1)  # minimal polynomial of zeta21 + zeta21^-1
SQRT21_IMAGE = (3, 12, -8, -10, 2, 2)  # power basis of the degree 6 field
SQRT13_IMAGE = (5, -4, -8, 2, 2, 0)  # derived, see module docstring

W232 = ((-16, -1, 4), (0, 1, 0))  # (4w^2 - w - 16, w)
W145 = ((0, 1, 0), (-5, 2, 1), (-8, 0, 2), (1, -1, 0))  # (b, b^2 + 2b - 5, 2b^2 - 8, -b + 1)
W21 = ((1, 0, 0, 0, 0, 0), (-1, 1, 0, 0, 0, 0), (-2, 1, 1, 0, 0, 0), (-5, 12, 5, -7, -1, 1))

FORM145 = [[29, 0, 0, 0], [0, 1, 0, 1], [0, 0, 2, 1], [0, 0, 0, 4]]


@lru_cache(maxsize=None)
def Z() -> NumberField:
    return rational_field()


@lru_cache(maxsize=None)
def K49() -> NumberField:
    return make_field(K49_POLY, label="K49")


@lru_cache(maxsize=None)
def F229() -> NumberField:
    return make_field(BETA229_POLY, label="F229")


@lru_cache(maxsize=None)
def Q21() -> NumberField:
    return make_field((-21, 0, 1), [(1, 0), (Fraction(1, 2), Fraction(1, 2))], label="Q(sqrt21)")


@lru_cache(maxsize=None)
def L21() -> NumberField:
    return make_field(THETA21_POLY, label="Q(zeta21)+")


@lru_cache(maxsize=None)
def Q13() -> NumberField:
    return make_field((-13, 0, 1), [(1, 0), (Fraction(1, 2), Fraction(1, 2))], label="Q(sqrt13)")


@lru_cache(maxsize=None)
def L13() -> NumberField:
    return make_field(P.real_cyclotomic(13), label="Q(zeta13)+")


def emb21():
    return make_embedding(Q21(), L21(), L21().element(SQRT21_IMAGE))


def emb13():
    return make_embedding(Q13(), L13(), L13().element(SQRT13_IMAGE))


def omega() -> OrderElement:
    return K49().gen()


def to_k49(Q):
    return extend_scalars(Q, canonical_embedding(K49()))


def form(entries):
    return diag_form(Z(), list(entries))


def form145():
    return general_form(Z(), FORM145)
