from itertools import product

import pytest

from istrkit import corpus as C
from istrkit.localq import (
    REAL,
    DyadicCubicContext,
    EvenPrime,
    LocalError,
    Place,
    ZeroArgument,
    ZeroElement,
    ZeroTarget,
    dyadic_digits,
    dyadic_valuation,
    hasse,
    hilbert,
    is_isotropic_local,
    is_square_dyadic,
    legendre,
    obstructing_places,
    represents_local,
    represents_rational,
    solvable_mod,
    squares_mod,
    three_squares_k49,
)
from istrkit.numfield import is_totally_positive
from istrkit.qform import DiagonalRationalForm, diag_form, rational_diagonalize
from istrkit.repsearch import represent

P5 = Place.finite(5)


def D(*xs):
    return DiagonalRationalForm(tuple(xs))


def test_legendre():
    assert legendre(1, 7) == 1
    assert legendre(2, 5) == -1
    assert legendre(10, 5) == 0
    with pytest.raises(EvenPrime):
        legendre(3, 2)


def test_hilbert_examples():
    for v in (REAL, Place(2), Place(3), P5):
        assert hilbert(1, 7, v) == 1
    assert hilbert(2, 5, P5) == -1
    assert hilbert(-1, -1, REAL) == -1
    assert hilbert(-1, -1, Place(2)) == -1
    with pytest.raises(ZeroArgument):
        hilbert(0, 3, REAL)


def test_hasse():
    assert hasse(D(7), P5) == 1
    assert hasse(D(1, 2, 5), P5) == -1
    assert all(hasse(D(1, 1, 1), v) == 1 for v in (REAL, Place(2), Place(3)))


def test_isotropy():
    for v in (REAL, Place(2), Place(3), P5):
        assert is_isotropic_local(D(1, -1), v)
    assert not is_isotropic_local(D(1, 2, 5, -15), P5)
    assert is_isotropic_local(D(1, 1, 1, 1, 1), Place(2))
    assert not is_isotropic_local(D(1, 1, 1, 1, 1), REAL)


def test_local_representation():
    f = D(1, 2, 5)
    assert not represents_local(f, 15, P5)
    assert not represents_local(f, 10, P5)
    tern = rational_diagonalize(C.form145().subform([1, 2, 3]))
    for t in (145, 116, 29):
        assert not represents_local(tern, t, Place.finite(29))
    assert represents_rational(D(1), 4)
    assert not represents_rational(D(1, 1, 1), 7)
    assert represents_rational(D(1, 1, 1), 6)
    assert [str(v) for v in obstructing_places(f, 15)] == ["5"]
    with pytest.raises(ZeroTarget):
        represents_local(f, 0, P5)


def test_place_validation():
    with pytest.raises(LocalError):
        Place.finite(9)
    assert str(REAL) == "inf"


def test_solvable_mod():
    s3 = C.form([1, 1, 1])
    assert not solvable_mod(s3, 28, 32)
    assert not solvable_mod(s3, 7, 8)
    assert solvable_mod(s3, 6, 8)
    assert solvable_mod(C.form145(), 12345, 1)


def ctx():
    return DyadicCubicContext.for_field(C.K49())


def test_dyadic_valuation():
    K = C.K49()
    w = K.gen()
    assert dyadic_valuation(K.from_int(2), ctx()) == 1
    assert dyadic_valuation(w, ctx()) == 0
    assert dyadic_valuation(4 * w, ctx()) == 2
    with pytest.raises(ZeroElement):
        dyadic_valuation(K.zero, ctx())


def test_context_requires_inert_two():
    with pytest.raises(LocalError):
        DyadicCubicContext.for_field(C.F229())  # T^3 - 4T - 1 has the root 1 mod 2
    with pytest.raises(LocalError):
        DyadicCubicContext.for_field(C.Q21())


def test_dyadic_squares():
    K = C.K49()
    w = K.gen()
    assert not is_square_dyadic(37 * w * w - 124, ctx())
    assert is_square_dyadic(w * w, ctx())
    assert not is_square_dyadic(K.from_int(2), ctx())
    assert is_square_dyadic(K.zero, ctx())


def test_digits():
    K = C.K49()
    w = K.gen()
    assert dyadic_digits(w, 1, ctx()) == [w.coords]
    assert dyadic_digits(5 * w * w + 4, 3, ctx()) == [(0, 0, 1), (0, 0, 0), (1, 0, 1)]
    assert dyadic_digits(K.zero, 4, ctx()) == [(0, 0, 0)] * 4
    assert len(ctx().digit_set) == 8 and len({tuple(d) for d in ctx().digit_set}) == 8


def test_u_condition_has_no_solution():
    K = C.K49()
    w = K.gen()
    for u in ctx().digit_set:
        x = K.element(u)
        r = x * x + w * x - 1 - w * w
        assert any(c % 2 for c in r.coords)


def test_three_squares_examples():
    K = C.K49()
    w = K.gen()
    assert three_squares_k49(124 - 37 * w * w)
    assert not three_squares_k49(K.from_int(-1))
    assert three_squares_k49(K.one)
    assert three_squares_k49(K.zero)
    assert not three_squares_k49(K.from_int(7))
    with pytest.raises(LocalError):
        three_squares_k49(C.F229().one)


def test_unit_square_threshold_stable():
    # a unit that is a square mod 8 is a square mod 32 (so mod every power)
    c = ctx()
    s8, s32 = squares_mod(c, 3), squares_mod(c, 5)
    for u in product(range(32), repeat=3):
        if all(t % 2 == 0 for t in u):
            continue
        assert (tuple(t % 8 for t in u) in s8) == (u in s32)


@pytest.mark.slow
def test_three_squares_against_search():
    K = C.K49()
    w = K.gen()
    Q = diag_form(K, [1, 1, 1])
    n = 0
    for a, b, c in product(range(7), repeat=3):
        x = K.element((a, b, c))
        k = 0
        while not is_totally_positive(x + k):
            k += 1
        x = x + k
        found = represent(Q, x, mode="first").found
        assert found == three_squares_k49(x), x
        n += 1
    assert n == 343
