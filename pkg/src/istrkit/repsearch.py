"""Complete decision of a in Q(O_L) for positive definite Q.

Two engines are available and both are exhaustive:

* ``trace``: one Fincke-Pohst enumeration of the trace form Tr(Q(x)) at the
  exact target Tr(a) in dimension n*d, followed by an exact filter.
* ``split`` (default): the variables are split into orthogonal components
  (after optionally fixing a few conditioning variables that carry all the
  cross terms). Each component gets its own enumeration bounded by the trace
  of the residual target, candidates are filtered by total positivity of the
  residual, and the components are then matched exactly by a hash join.

Every witness is re-evaluated with :func:`qform.evaluate_coords` before it
is reported, and an empty exhaustive report is a proof of non-representation
because Q(x) = a forces Tr(Q(x_k)) <= Tr(a) for every component.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from itertools import product
from math import ceil, isqrt, lcm
from typing import Iterator, Sequence

import numpy as np

from . import poly as P
from .lattice import BudgetExceeded, Counter, Ellipsoid, NegativeTarget, NotPositiveDefinite, ldlt, reversed_ldlt
from .numfield import FieldMismatch, NumberField, OrderElement, is_totally_positive
from .qform import QuadraticForm, evaluate_coords, is_positive_definite

__all__ = [
    "NotDiagonal",
    "NotPositiveDefinite",
    "NegativeTarget",
    "TargetNotTotallyPositive",
    "TraceFormGram",
    "Witness",
    "SearchReport",
    "coordinate_house_bounds",
    "trace_gram",
    "ldlt",
    "enumerate_value",
    "represent",
    "represented_set_below",
]


class NotDiagonal(ValueError):
    pass


class TargetNotTotallyPositive(ValueError):
    pass


@dataclass(frozen=True)
class TraceFormGram:
    gram: tuple[tuple[Fraction, ...], ...]
    index_map: tuple[tuple[int, int], ...]
    field: NumberField
    form: QuadraticForm

    def assemble(self, v: Sequence[int]) -> list[OrderElement]:
        d = self.field.degree
        coords = [[0] * d for _ in range(self.form.rank)]
        for k, (i, j) in enumerate(self.index_map):
            coords[i][j] = v[k]
        return [OrderElement(self.field, tuple(c)) for c in coords]


@dataclass(frozen=True)
class Witness:
    vector: tuple[OrderElement, ...]
    value: OrderElement

    def coords(self) -> tuple[tuple[int, ...], ...]:
        return tuple(x.coords for x in self.vector)


@dataclass
class SearchReport:
    exhaustive: bool
    witnesses: list[Witness]
    nodes_visited: int
    trace_target: Fraction
    strategy: str = "split"
    millis: float = 0.0
    notes: list[str] = dc_field(default_factory=list)

    @property
    def found(self) -> bool:
        return bool(self.witnesses)

    @property
    def proves_absent(self) -> bool:
        return self.exhaustive and not self.witnesses


# ------------------------------------------------------------------ bounds


def coordinate_house_bounds(Q: QuadraticForm, a: OrderElement) -> list[Fraction]:
    """Upper bounds for house(x_i)^2 over all solutions of <a_1..a_n>(x) = a."""
    if not Q.is_diagonal():
        raise NotDiagonal("coordinate bounds need a diagonal form")
    if not is_positive_definite(Q):
        raise NotPositiveDefinite("form is not positive definite")
    if a.field != Q.field:
        raise FieldMismatch("target lives in another field")
    if not is_totally_positive(a):
        raise TargetNotTotallyPositive("target is not totally positive")
    fld = Q.field
    out = []
    for ai in Q.diagonal():
        if ai.is_rational() and a.is_rational():
            out.append(Fraction(a.coords[0], ai.coords[0]))
            continue
        prec = 64
        scale = 1 << prec
        best = Fraction(0)
        ea = fld.enclosures(a.coords, prec)
        ei = fld.enclosures(ai.coords, prec)
        while any(lo <= 0 for lo, _ in ei):
            prec *= 2
            ea = fld.enclosures(a.coords, prec)
            ei = fld.enclosures(ai.coords, prec)
        for (_, ahi), (ilo, _) in zip(ea, ei):
            best = max(best, Fraction(ahi, ilo))
        del scale
        out.append(best)
    return out


# ------------------------------------------------------------------ trace form


def _trace_matrix(fld: NumberField) -> list[list[int]]:
    d = fld.degree
    return [[fld.trace_coords(fld.mult_table[j][l]) for l in range(d)] for j in range(d)]


def _gram_of(Q: QuadraticForm) -> list[list[int]]:
    """Integer Gram of v -> 2 Tr(Q(x_v)) with index (i, j) -> i*d + j."""
    fld = Q.field
    d, n = fld.degree, Q.rank
    N = n * d
    G = [[0] * N for _ in range(N)]
    for i in range(n):
        for k in range(i, n):
            c = Q.c(i, k)
            if c.is_zero():
                continue
            mult = 2 if i == k else 1
            for j in range(d):
                for l in range(d):
                    t = fld.mul_coords(c.coords, fld.mult_table[j][l])
                    val = mult * fld.trace_coords(t)
                    G[i * d + j][k * d + l] = val
                    G[k * d + l][i * d + j] = val
    return G


def trace_gram(Q: QuadraticForm) -> TraceFormGram:
    if not is_positive_definite(Q):
        raise NotPositiveDefinite("form is not positive definite")
    d = Q.field.degree
    G = _gram_of(Q)
    idx = tuple((i, j) for i in range(Q.rank) for j in range(d))
    return TraceFormGram(tuple(tuple(Fraction(x) for x in row) for row in G), idx, Q.field, Q)


def enumerate_value(G: TraceFormGram, t, counter: Counter | None = None) -> Iterator[tuple[int, ...]]:
    """Integer vectors v with (1/2) v^T G v = t, lexicographically."""
    t = Fraction(t)
    if t < 0:
        raise NegativeTarget("target value must be nonnegative")
    A = [[x / 2 for x in row] for row in G.gram]
    yield from Ellipsoid(A).points(t, exact=True, counter=counter)


# ------------------------------------------------------------------ helpers


def _canonical(ws: list[Witness]) -> list[Witness]:
    seen = {}
    for w in ws:
        seen.setdefault(w.coords(), w)
    return [seen[k] for k in sorted(seen)]


def _make_witness(Q: QuadraticForm, coords: Sequence[Sequence[int]], a: OrderElement) -> Witness | None:
    val = evaluate_coords(Q, coords)
    if val != a.coords:
        return None
    fld = Q.field
    return Witness(tuple(OrderElement(fld, tuple(c)) for c in coords), a)


def _components(n: int, adj: dict[int, set[int]], alive: set[int]) -> list[list[int]]:
    out, seen = [], set()
    for s in sorted(alive):
        if s in seen:
            continue
        comp, stack = [], [s]
        seen.add(s)
        while stack:
            v = stack.pop()
            comp.append(v)
            for w in adj[v]:
                if w in alive and w not in seen:
                    seen.add(w)
                    stack.append(w)
        out.append(sorted(comp))
    return out


def _adjacency(Q: QuadraticForm) -> dict[int, set[int]]:
    n = Q.rank
    adj = {i: set() for i in range(n)}
    for i in range(n):
        for j in range(i + 1, n):
            if not Q.c(i, j).is_zero():
                adj[i].add(j)
                adj[j].add(i)
    return adj


def conditioning_set(Q: QuadraticForm, max_block: int = 1) -> list[int]:
    """Variables to fix first so the rest splits into blocks of size <= max_block.

    Only used for rational coefficients, where fixing variables amounts to a
    rational shift of the remaining ones.
    """
    if Q.is_diagonal() or not Q.has_rational_coeffs():
        return []
    adj = _adjacency(Q)
    alive = set(range(Q.rank))
    chosen = []
    while True:
        big = [c for c in _components(Q.rank, adj, alive) if len(c) > max_block]
        if not big:
            return sorted(chosen)
        cand = [v for c in big for v in c]
        v = max(cand, key=lambda u: (len(adj[u] & alive), -u))
        chosen.append(v)
        alive.discard(v)


def _mult_by(fld: NumberField, c: Sequence[int]) -> list[list[int]]:
    """Matrix M with coords(z * c) = coords(z) @ M."""
    d = fld.degree
    return [list(fld.mul_coords(tuple(int(t == s) for t in range(d)), c)) for s in range(d)]


_INT64_SAFE = 1 << 62


class _Numeric:
    """Vectorized field arithmetic on coordinate arrays with certified enclosures."""

    def __init__(self, fld: NumberField):
        self.fld = fld
        self.d = fld.degree
        self.table = np.array(fld.mult_table, dtype=object)
        b = []
        for j in range(self.d):
            e = fld.enclosures(tuple(int(t == j) for t in range(self.d)), 8)
            b.append(max(max(abs(lo), abs(hi)) for lo, hi in e) / 256)
        self.bmax = max(b) + 1
        self.tmax = max(sum(abs(fld.mult_table[k][l][t]) for k in range(self.d) for l in range(self.d)) for t in range(self.d))
        self._enc: dict[int, tuple] = {}

    def prec_for(self, maxabs: int) -> int:
        need = int(maxabs * self.d * self.bmax) + 1
        return 61 - need.bit_length()

    def enc_arrays(self, prec: int):
        if prec not in self._enc:
            rows = self.fld._basis_enclosures(prec)
            lo = np.array([[rows[k][j][0] for k in range(self.d)] for j in range(self.d)], dtype=np.int64)
            hi = np.array([[rows[k][j][1] for k in range(self.d)] for j in range(self.d)], dtype=np.int64)
            self._enc[prec] = (lo, hi)
        return self._enc[prec]

    def lower(self, X: np.ndarray, prec: int) -> np.ndarray:
        lo, hi = self.enc_arrays(prec)
        return np.where(X > 0, X, 0) @ lo + np.where(X < 0, X, 0) @ hi

    def upper(self, X: np.ndarray, prec: int) -> np.ndarray:
        lo, hi = self.enc_arrays(prec)
        return np.where(X > 0, X, 0) @ hi + np.where(X < 0, X, 0) @ lo

    def mul(self, A: np.ndarray, B: np.ndarray) -> np.ndarray:
        t = self.table if A.dtype == object else self.table.astype(np.int64)
        return np.einsum("mk,ml,klt->mt", A, B, t)


def _to_int64(X: np.ndarray) -> np.ndarray | None:
    if X.size == 0:
        return X.astype(np.int64)
    m = max(abs(int(X.max())), abs(int(X.min())))
    if m >= _INT64_SAFE:
        return None
    return X.astype(np.int64)


class _Component:
    def __init__(self, Q: QuadraticForm, idx: list[int], cond: list[int], num: _Numeric):
        self.idx = idx
        self.sub = Q.subform(idx)
        fld = Q.field
        d = fld.degree
        G = _gram_of(self.sub)
        self.A = [[Fraction(x, 2) for x in row] for row in G]
        self.factor = reversed_ldlt(self.A)
        self.coef = []
        for a in range(len(idx)):
            for b in range(a, len(idx)):
                c = self.sub.c(a, b)
                if not c.is_zero():
                    self.coef.append((a, b, np.array(_mult_by(fld, c.coords), dtype=object)))
        self.shift_map = None
        if cond:
            S = Q.half_gram_rational()
            Skk = [[S[i][j] for j in idx] for i in idx]
            SkC = [[S[i][j] for j in cond] for i in idx]
            inv = P.inverse(Skk)
            self.shift_map = [[sum(inv[r][t] * SkC[t][c] for t in range(len(idx))) for c in range(len(cond))] for r in range(len(idx))]
        self.num = num
        self.d = d

    def shift(self, xc: Sequence[Sequence[int]]) -> list[list[Fraction]]:
        """Rational coordinates of c_k with Q_k(x_k) + cross terms = Q_k(x_k + c_k) - const."""
        r = len(self.idx)
        if self.shift_map is None:
            return [[Fraction(0)] * self.d for _ in range(r)]
        out = []
        for row in self.shift_map:
            out.append([sum((m * xc[c][t] for c, m in enumerate(row) if m), Fraction(0)) for t in range(self.d)])
        return out

    def values(self, Y: np.ndarray) -> np.ndarray:
        """Q_k on rows of Y (shape m x r x d), exact."""
        m = Y.shape[0]
        acc = np.zeros((m, self.d), dtype=object)
        for a, b, M in self.coef:
            acc = acc + self.num.mul(Y[:, a, :], Y[:, b, :]) @ M
        return acc


def _tot_nonneg_mask(num: _Numeric, X: np.ndarray) -> np.ndarray:
    """Exact mask of rows of X (integer coords) that are totally nonnegative."""
    m = X.shape[0]
    if m == 0:
        return np.zeros(0, dtype=bool)
    Xi = _to_int64(X)
    keep = np.zeros(m, dtype=bool)
    undecided = np.arange(m)
    if Xi is not None:
        maxabs = int(np.abs(Xi).max())
        prec = num.prec_for(maxabs)
        if prec >= 8:
            lo = num.lower(Xi, prec)
            hi = num.upper(Xi, prec)
            yes = (lo >= 0).all(axis=1) | ~Xi.any(axis=1)
            no = (hi < 0).any(axis=1)
            keep[yes] = True
            undecided = np.nonzero(~yes & ~no)[0]
    fld = num.fld
    for i in undecided:
        keep[i] = fld.is_totally_nonnegative_coords(tuple(int(t) for t in X[i]))
    return keep


def _row_hash(X: np.ndarray, mult: np.ndarray) -> np.ndarray:
    return (X.astype(np.uint64) * mult).sum(axis=1, dtype=np.uint64)


def _match(vals: list[np.ndarray], target: tuple[int, ...], num: _Numeric, counter: Counter, first: bool) -> list[tuple[int, ...]]:
    """Index tuples (one row per component) whose values sum to target exactly."""
    K = len(vals)
    d = num.d
    tgt = np.array(target, dtype=object)
    if K == 1:
        hits = [r for r in range(vals[0].shape[0]) if tuple(vals[0][r]) == target]
        return [(r,) for r in hits[:1 if first else None]]
    ints = [_to_int64(V) for V in vals]
    tgt64 = _to_int64(tgt[None, :])
    if any(V is None for V in ints) or tgt64 is None:
        return _match_python(vals, target, counter, first)
    maxabs = max([int(np.abs(V).max()) if V.size else 0 for V in ints] + [int(np.abs(tgt64).max())])
    if 2 * K * maxabs >= _INT64_SAFE:
        return _match_python(vals, target, counter, first)
    order = sorted(range(K), key=lambda k: -vals[k].shape[0])
    kt, kv, outer = order[0], order[1], order[2:]
    prec = num.prec_for(maxabs * K)
    e = d
    if prec >= 8:
        los = [num.lower(V, prec) for V in ints]
        hiR = num.upper(tgt64, prec)[0]
    else:
        los = [np.zeros((V.shape[0], e), dtype=np.int64) for V in ints]
        hiR = np.zeros(e, dtype=np.int64)
    rng = np.random.default_rng(0x5EED)
    mult = rng.integers(1, 1 << 63, size=d, dtype=np.uint64) | np.uint64(1)
    T = ints[kt]
    hT = _row_hash(T, mult)
    perm = np.argsort(hT, kind="stable")
    hTs = hT[perm]
    Vv, Lv = ints[kv], los[kv]
    out: list[tuple[int, ...]] = []
    choice = [0] * K
    t0 = tgt64[0]

    def finish(psum, plo):
        X = (t0 - psum)[None, :] - Vv
        ok = (hiR - plo - Lv >= 0).all(axis=1)
        rows = np.nonzero(ok)[0]
        counter.tick(int(rows.size) + 1)
        if rows.size == 0:
            return False
        X = X[rows]
        h = _row_hash(X, mult)
        pos = np.searchsorted(hTs, h)
        for r_i in np.nonzero(pos < hTs.size)[0]:
            p = pos[r_i]
            while p < hTs.size and hTs[p] == h[r_i]:
                trow = perm[p]
                if np.array_equal(T[trow], X[r_i]):
                    choice[kv] = int(rows[r_i])
                    choice[kt] = int(trow)
                    out.append(tuple(choice))
                    if first:
                        return True
                p += 1
        return False

    def rec(level, psum, plo):
        if level == len(outer):
            return finish(psum, plo)
        k = outer[level]
        ok = (hiR - plo - los[k] >= 0).all(axis=1)
        rows = np.nonzero(ok)[0]
        counter.tick(int(rows.size) + 1)
        for r in rows:
            choice[k] = int(r)
            if rec(level + 1, psum + ints[k][r], plo + los[k][r]):
                return True
        return False

    rec(0, np.zeros(d, dtype=np.int64), np.zeros(e, dtype=np.int64))
    return out


def _match_python(vals, target, counter, first):
    K = len(vals)
    order = sorted(range(K), key=lambda k: -vals[k].shape[0])
    kt = order[0]
    table: dict[tuple, list[int]] = {}
    for r in range(vals[kt].shape[0]):
        table.setdefault(tuple(int(x) for x in vals[kt][r]), []).append(r)
    rest = order[1:]
    out = []
    for rows in product(*[range(vals[k].shape[0]) for k in rest]):
        counter.tick()
        s = [int(t) for t in target]
        for k, r in zip(rest, rows):
            for j in range(len(s)):
                s[j] -= int(vals[k][r][j])
        for rt in table.get(tuple(s), ()):
            choice = [0] * K
            for k, r in zip(rest, rows):
                choice[k] = r
            choice[kt] = rt
            out.append(tuple(choice))
            if first:
                return out
    return out


# ------------------------------------------------------------------ engines


def _trace_engine(Q: QuadraticForm, a: OrderElement, first: bool, counter: Counter) -> tuple[list[Witness], bool]:
    G = trace_gram(Q)
    t = Fraction(Q.field.trace_coords(a.coords))
    found = []
    d = Q.field.degree
    for v in enumerate_value(G, t, counter):
        coords = [tuple(v[i * d:(i + 1) * d]) for i in range(Q.rank)]
        w = _make_witness(Q, coords, a)
        if w is not None:
            found.append(w)
            if first:
                return found, False
    return found, True


def _lex_positive(xc) -> bool:
    for c in xc:
        for t in c:
            if t:
                return t > 0
    return True


def _split_engine(Q: QuadraticForm, a: OrderElement, first: bool, counter: Counter) -> tuple[list[Witness], bool]:
    fld = Q.field
    d, n = fld.degree, Q.rank
    num = _Numeric(fld)
    cond = conditioning_set(Q)
    alive = set(range(n)) - set(cond)
    comps_idx = _components(n, _adjacency(Q), alive)
    comps = [_Component(Q, idx, cond, num) for idx in comps_idx]
    tr_a = Fraction(fld.trace_coords(a.coords))
    found: list[Witness] = []

    if cond:
        S = Q.half_gram_rational()
        schur = [[S[i][j] for j in cond] for i in cond]
        for comp in comps:
            sub = [[S[i][j] for j in comp.idx] for i in comp.idx]
            inv = P.inverse(sub)
            SkC = [[S[i][j] for j in cond] for i in comp.idx]
            for p in range(len(cond)):
                for q in range(len(cond)):
                    schur[p][q] -= sum(SkC[r][p] * inv[r][s] * SkC[s][q] for r in range(len(comp.idx)) for s in range(len(comp.idx)))
        Tm = _trace_matrix(fld)
        c = len(cond)
        A_c = [[schur[p][q] * Tm[j][l] for q in range(c) for l in range(d)] for p in range(c) for j in range(d)]
        den_s = 1
        for row in schur:
            for x in row:
                den_s = lcm(den_s, x.denominator)
        outer = Ellipsoid(A_c).points(tr_a, counter=counter)
    else:
        schur = None
        outer = iter([()])

    for v in outer:
        xc = [tuple(v[p * d:(p + 1) * d]) for p in range(len(cond))]
        if cond and not _lex_positive(xc):
            continue
        # residual a - Schur(x_C), scaled later
        if cond:
            sc = [Fraction(0)] * d
            for p in range(len(cond)):
                for q in range(len(cond)):
                    if schur[p][q]:
                        prod_ = fld.mul_coords(xc[p], xc[q])
                        for t in range(d):
                            sc[t] += schur[p][q] * prod_[t]
            resid = [Fraction(a.coords[t]) - sc[t] for t in range(d)]
            scaled = [int(x * den_s) for x in resid]
            if not fld.is_totally_nonnegative_coords(scaled):
                continue
        else:
            resid = [Fraction(x) for x in a.coords]
        shifts = [comp.shift(xc) for comp in comps]
        lam = 1
        for sh in shifts:
            for row in sh:
                for x in row:
                    lam = lcm(lam, x.denominator)
        target = [x * lam * lam for x in resid]
        if any(x.denominator != 1 for x in target):
            continue
        target = tuple(int(x) for x in target)
        tr_r = Fraction(fld.trace_coords(target), lam * lam)
        tgt_arr = np.array(target, dtype=object)

        cand_vals, cand_groups = [], []
        dead = False
        for comp, sh in zip(comps, shifts):
            flat = [x for row in sh for x in row]
            ell = Ellipsoid(comp.A, flat if cond else None, factor=comp.factor)
            pts = list(ell.points(tr_r, counter=counter))
            if not pts:
                dead = True
                break
            r = len(comp.idx)
            V = np.array(pts, dtype=object).reshape(len(pts), r, d)
            off = np.array([[int(x * lam) for x in row] for row in sh], dtype=object)
            Y = V * lam + off[None, :, :]
            Yi = _to_int64(Y)
            small = Yi is not None and (int(np.abs(Yi).max()) ** 2) * num.tmax < _INT64_SAFE
            g = comp.values(Yi if small else Y)
            g = np.array(g, dtype=object)
            keep = _tot_nonneg_mask(num, tgt_arr[None, :] - g)
            if not keep.any():
                dead = True
                break
            g, V = g[keep], V[keep]
            groups: dict[tuple, list] = {}
            for row_g, row_v in zip(g, V):
                groups.setdefault(tuple(int(x) for x in row_g), []).append(tuple(tuple(int(t) for t in xr) for xr in row_v))
            keys = list(groups)
            cand_vals.append(np.array(keys, dtype=object).reshape(len(keys), d))
            cand_groups.append([groups[k] for k in keys])
        if dead:
            continue
        matches = _match(cand_vals, target, num, counter, first)
        for m in matches:
            for parts in product(*[cand_groups[k][m[k]] for k in range(len(comps))]):
                coords = [None] * n
                for p, var in enumerate(cond):
                    coords[var] = xc[p]
                for comp, part in zip(comps, parts):
                    for var, x in zip(comp.idx, part):
                        coords[var] = x
                w = _make_witness(Q, coords, a)
                if w is None:
                    raise AssertionError("matched candidate failed exact re-evaluation")
                found.append(w)
                if cond and any(any(t) for t in xc):
                    neg = [tuple(-t for t in x) for x in coords]
                    wn = _make_witness(Q, neg, a)
                    if wn is None:
                        raise AssertionError("negated witness failed exact re-evaluation")
                    found.append(wn)
                if first:
                    return found, False
    return found, True


def represent(Q: QuadraticForm, a: OrderElement, mode: str = "all", strategy: str = "split", node_cap: int | None = None) -> SearchReport:
    """Decide whether a = Q(x) has a solution x in O^n; list all solutions in ``all`` mode."""
    if mode not in ("first", "all"):
        raise ValueError("mode must be 'first' or 'all'")
    if strategy not in ("split", "trace"):
        raise ValueError("strategy must be 'split' or 'trace'")
    if a.field != Q.field:
        raise FieldMismatch("target lives in another field")
    if not is_positive_definite(Q):
        raise NotPositiveDefinite("form is not positive definite")
    fld = Q.field
    t0 = time.perf_counter()
    tr = Fraction(fld.trace_coords(a.coords))
    zero = tuple(0 for _ in range(fld.degree))

    def done(ws, exhaustive, nodes, note=None):
        rep = SearchReport(exhaustive, _canonical(ws), nodes, tr, strategy, (time.perf_counter() - t0) * 1000)
        if note:
            rep.notes.append(note)
        return rep

    if a.is_zero():
        return done([Witness(tuple(fld.zero for _ in range(Q.rank)), a)], mode == "all", 0)
    if not is_totally_positive(a):
        return done([], True, 0, "target is not totally positive")
    counter = Counter(node_cap)
    first = mode == "first"
    engine = _split_engine if strategy == "split" else _trace_engine
    try:
        ws, exhaustive = engine(Q, a, first, counter)
    except BudgetExceeded:
        return done([], False, counter.nodes, "node cap reached")
    del zero
    return done(ws, exhaustive, counter.nodes)


# ------------------------------------------------------------------ integer census


def represented_set_below(Q: QuadraticForm, N: int) -> list[int]:
    """All 0 <= a < N represented by Q over Z (direct enumeration, no trace machinery)."""
    if Q.field.degree != 1:
        raise ValueError("census needs a form over the rational integers")
    if not is_positive_definite(Q):
        raise NotPositiveDefinite("form is not positive definite")
    if N <= 0:
        return []
    n = Q.rank
    c = [[Q.c(i, j).coords[0] for j in range(n)] for i in range(n)]
    if Q.is_diagonal():
        reach = np.zeros(N, dtype=bool)
        reach[0] = True
        for i in range(n):
            sq = [c[i][i] * x * x for x in range(1, isqrt(N // c[i][i]) + 2) if c[i][i] * x * x < N]
            nxt = reach.copy()
            for s in sq:
                nxt[s:] |= reach[: N - s]
            reach = nxt
        return [int(x) for x in np.nonzero(reach)[0]]
    S = Q.half_gram_rational()
    inv = P.inverse(S)
    box = [isqrt(int(ceil((N - 1) * inv[i][i]))) + 1 for i in range(n)]
    seen = set()
    for x in product(*[range(-b, b + 1) for b in box]):
        v = 0
        for i in range(n):
            if x[i]:
                for j in range(i, n):
                    v += c[i][j] * x[i] * x[j]
        if v < N:
            seen.add(v)
    return sorted(seen)
