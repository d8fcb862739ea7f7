from fractions import Fraction

import pytest

from istrkit import corpus as C
from istrkit.numfield import (
    BasisNotClosed,
    BasisSingular,
    FieldMismatch,
    InvalidImage,
    NoRationalRootCheckFailed,
    NotIntegralImage,
    NotMonic,
    NotSquarefree,
    NotTotallyRealField,
    char_poly,
    elem_disc,
    house_enclosure,
    house_le,
    house_lt,
    identity_embedding,
    is_totally_positive,
    make_embedding,
    make_field,
    map_elem,
    norm,
    order_disc,
    rational_field,
    trace,
)


def test_make_field_examples():
    K = C.K49()
    assert K.degree == 3 and K.totally_real
    Z = make_field((-1, 1))
    assert Z.degree == 1 and trace(Z.from_int(5)) == 5
    Q21 = make_field((-21, 0, 1), [(1, 0), (Fraction(1, 2), Fraction(1, 2))])
    assert order_disc(Q21) == 21
    assert len(K.root_intervals) == 3


def test_make_field_errors():
    with pytest.raises(NotMonic):
        make_field((1, 2))
    with pytest.raises(NotSquarefree):
        make_field((1, 2, 1))
    with pytest.raises(BasisNotClosed):
        make_field((-2, 0, 1), [(1, 0), (Fraction(1, 2), Fraction(1, 2))])
    with pytest.raises(BasisSingular):
        make_field((-2, 0, 1), [(1, 0), (2, 0)])

def test_reducible_cubic_rejected():
    with pytest.raises(NoRationalRootCheckFailed):
        make_field((6, -5, -2, 1))  # (T-1)(T+2)(T-3)


def test_ring_ops():
    K = C.K49()
    w = K.gen()
    assert w + w == 2 * w
    assert w * w * w == -(w * w) + 2 * w + 1
    assert (w * K.zero).is_zero()
    with pytest.raises(FieldMismatch):
        w + C.F229().gen()


def test_trace_norm():
    K = C.K49()
    w = K.gen()
    assert trace(K.one) == 3
    assert trace(w) == -1
    assert norm(w) == 1
    Q13 = C.Q13()
    alpha = Q13.element((10, 4))  # 12 + 2 sqrt13 in the basis 1, (1+sqrt13)/2
    assert trace(alpha) == 24
    assert norm(alpha) == 144 - 52


def test_total_positivity():
    K = C.K49()
    w = K.gen()
    assert is_totally_positive(K.one)
    assert not is_totally_positive(w)
    assert is_totally_positive(124 - 37 * w * w)
    assert not is_totally_positive(K.zero)
    cplx = make_field((1, 0, 1))
    with pytest.raises(NotTotallyRealField):
        is_totally_positive(cplx.gen())


def test_house():
    K = C.K49()
    w = K.gen()
    assert house_lt(K.from_int(5), 6) and not house_lt(K.from_int(5), 5)
    assert house_le(K.from_int(5), 5)
    assert house_lt(w, 2)
    assert house_lt(w * w, Fraction(13, 4))
    lo, hi = house_enclosure(w, Fraction(1, 10**6))
    assert lo <= Fraction(1802, 1000) <= hi + Fraction(1, 1000) and hi - lo <= Fraction(1, 10**6)


def test_elem_disc():
    assert elem_disc(C.F229().gen()) == 229
    assert elem_disc(C.K49().gen()) == 49
    assert elem_disc(C.K49().from_int(3)) == 0


def test_char_poly():
    w = C.K49().gen()
    assert char_poly(w) == (-1, -2, 1, 1)
    # omega^2 = 2 + 2cos(4pi/7), a conjugate of 2 + omega, so f(T - 2)
    assert char_poly(w * w) == (-1, 6, -5, 1)


def test_sqrt21_embedding():
    e = C.emb21()
    s = map_elem(e, C.Q21().element((-1, 2)))  # 2*(1+sqrt21)/2 - 1 = sqrt21
    assert s.coords == C.SQRT21_IMAGE
    assert s * s == C.L21().from_int(21)


def test_sqrt13_embedding_derived():
    # derived by exhaustive root search of T^2 - 13 in the degree 6 order
    e = C.emb13()
    s = map_elem(e, C.Q13().element((-1, 2)))
    assert s.coords == (5, -4, -8, 2, 2, 0)
    assert s * s == C.L13().from_int(13)


def test_embedding_errors_and_identity():
    K = C.K49()
    idm = identity_embedding(K)
    x = K.element((3, -1, 2))
    assert map_elem(idm, x) == x
    with pytest.raises(InvalidImage):
        make_embedding(make_field((-21, 0, 1)), rational_field(), rational_field().from_int(2))
    # the maximal order of Q(sqrt5) does not map into Z[sqrt5]
    big = make_field((-5, 0, 1), [(1, 0), (Fraction(1, 2), Fraction(1, 2))])
    small = make_field((-5, 0, 1))
    with pytest.raises(NotIntegralImage):
        e = make_embedding(big, small, small.gen())
        map_elem(e, big.element((0, 1)))
