from fractions import Fraction
from itertools import product

import pytest

from istrkit import corpus as C
from istrkit.lattice import BudgetExceeded, Counter, Ellipsoid, NegativeTarget, NotPositiveDefinite, ldlt
from istrkit.qform import diag_form, evaluate, general_form
from istrkit.repsearch import (
    NotDiagonal,
    TargetNotTotallyPositive,
    coordinate_house_bounds,
    enumerate_value,
    represent,
    represented_set_below,
    trace_gram,
)


def test_ldlt():
    L, d = ldlt([[1, 0], [0, 1]])
    assert L == [[1, 0], [0, 1]] and d == [1, 1]
    L, d = ldlt([[2, 1], [1, 2]])
    assert d == [2, Fraction(3, 2)] and L[1][0] == Fraction(1, 2)
    with pytest.raises(NotPositiveDefinite):
        ldlt([[1, 2], [2, 1]])


def test_ellipsoid_points_and_budget():
    pts = list(Ellipsoid([[1, 0], [0, 1]]).points(2))
    assert len(pts) == 9 and pts == sorted(pts)
    assert list(Ellipsoid([[1, 0], [0, 1]]).points(5, exact=True)) == [(-2, -1), (-2, 1), (-1, -2), (-1, 2), (1, -2), (1, 2), (2, -1), (2, 1)]
    with pytest.raises(BudgetExceeded):
        list(Ellipsoid([[1, 0], [0, 1]]).points(10**4, counter=Counter(10)))


def test_house_bounds():
    Z = C.Z()
    assert coordinate_house_bounds(C.form([1, 71]), Z.from_int(232)) == [232, Fraction(232, 71)]
    assert coordinate_house_bounds(C.form([1]), Z.from_int(4)) == [4]
    b = coordinate_house_bounds(C.form([1, 1, 1, 37]), Z.from_int(124))
    assert b[3] == Fraction(124, 37) and b[3] < 4
    with pytest.raises(NotDiagonal):
        coordinate_house_bounds(C.form145(), Z.from_int(145))
    with pytest.raises(TargetNotTotallyPositive):
        coordinate_house_bounds(C.form([1]), Z.from_int(-1))
    K = C.K49()
    w = K.gen()
    # enclosure bounds over K49 sit just above the largest conjugate of 124 - 37 w^2
    ub = coordinate_house_bounds(diag_form(K, [1, 1]), 124 - 37 * w * w)[0]
    assert Fraction(1166, 10) < ub < Fraction(1167, 10)


def test_trace_gram():
    assert trace_gram(C.form([1])).gram == ((2,),)
    K = C.K49()
    g = trace_gram(diag_form(K, [1])).gram
    assert [list(r) for r in g] == [[6, -2, 10], [-2, 10, -8], [10, -8, 26]]
    g2 = trace_gram(diag_form(K, [1, 1])).gram
    assert [list(r[:3]) for r in g2[:3]] == [list(r) for r in g] and all(g2[i][j] == 0 for i in range(3) for j in range(3, 6))
    with pytest.raises(NotPositiveDefinite):
        trace_gram(C.form([1, -1]))


def test_trace_gram_value_law():
    K = C.K49()
    Q = diag_form(K, [K.one, 124 - 37 * K.gen() ** 2])
    G = trace_gram(Q)
    for v in product(range(-1, 2), repeat=6):
        x = G.assemble(v)
        lhs = sum(G.gram[i][j] * v[i] * v[j] for i in range(6) for j in range(6)) / 2
        assert lhs == K.trace_coords(evaluate(Q, x).coords)


def test_enumerate_value():
    assert sorted(enumerate_value(trace_gram(C.form([1])), 4)) == [(-2,), (2,)]
    assert list(enumerate_value(trace_gram(C.form([1, 1])), 5)) == [(-2, -1), (-2, 1), (-1, -2), (-1, 2), (1, -2), (1, 2), (2, -1), (2, 1)]
    assert list(enumerate_value(trace_gram(C.form145()), 0)) == [(0, 0, 0, 0)]
    with pytest.raises(NegativeTarget):
        list(enumerate_value(trace_gram(C.form([1])), -1))


def test_represent_worked_examples():
    Z, K = C.Z(), C.K49()
    for strategy in ("split", "trace"):
        r = represent(C.form([1, 1, 1, 37]), Z.from_int(124), strategy=strategy)
        assert r.exhaustive and not r.witnesses and r.proves_absent
    r = represent(C.to_k49(C.form([1, 71])), K.from_int(232))
    assert r.exhaustive and len(r.witnesses) == 12
    assert ((-16, -1, 4), (0, 1, 0)) in [w.coords() for w in r.witnesses]
    r0 = represent(C.form145(), Z.zero)
    assert [w.coords() for w in r0.witnesses] == [((0,), (0,), (0,), (0,))]


def test_strategies_agree():
    K = C.K49()
    Q = C.to_k49(C.form([1, 71]))
    a = represent(Q, K.from_int(232), strategy="split")
    b = represent(Q, K.from_int(232), strategy="trace")
    assert [w.coords() for w in a.witnesses] == [w.coords() for w in b.witnesses]
    Z = C.Z()
    a = represent(C.form145(), Z.from_int(146))
    b = represent(C.form145(), Z.from_int(146), strategy="trace")
    assert len(a.witnesses) == 84 and [w.coords() for w in a.witnesses] == [w.coords() for w in b.witnesses]


def test_not_totally_positive_and_first_mode():
    K = C.K49()
    r = represent(diag_form(K, [1, 1]), K.gen())
    assert r.exhaustive and not r.witnesses
    r = represent(C.to_k49(C.form([1, 71])), K.from_int(232), mode="first")
    assert r.found and not r.exhaustive


def test_node_cap_is_never_a_negative():
    r = represent(C.to_k49(C.form([1, 1, 1, 37])), C.K49().from_int(124), node_cap=5)
    assert not r.exhaustive and not r.witnesses and r.notes
    with pytest.raises(NotPositiveDefinite):
        represent(C.form([1, -1]), C.Z().one)


def test_represented_set_below():
    Z = C.Z()
    assert represented_set_below(C.form([1, 2, 5, 5]), 100) == [k for k in range(100) if k != 15]
    assert represented_set_below(C.form([1]), 10) == [0, 1, 4, 9]
    A = set(represented_set_below(C.form([1, 2, 7]), 1500))
    B = set(represented_set_below(C.form([1, 1, 14]), 1500))
    D = sorted(A - B)
    assert len(D) == 54 and D[0] == 3 and D[-1] == 1428
    # non-diagonal path
    F = general_form(Z, [[1, 1], [0, 1]])
    assert represented_set_below(F, 10) == [0, 1, 3, 4, 7, 9]


def test_census_agrees_with_represent():
    Z = C.Z()
    Q = C.form([1, 1, 14])
    S = set(represented_set_below(Q, 120))
    for a in range(120):
        assert (a in S) == represent(Q, Z.from_int(a), mode="first").found


def test_galois_closure_of_232_witnesses():
    K = C.K49()
    w = K.gen()
    img = w * w - 2

    def sigma(x):
        acc = K.zero
        for c in reversed(x.coords):
            acc = acc * img + c
        return acc

    Q = C.to_k49(C.form([1, 71]))
    ws = represent(Q, K.from_int(232)).witnesses
    got = {w_.coords() for w_ in ws}
    for wt in ws:
        im = tuple(sigma(x).coords for x in wt.vector)
        assert im in got
