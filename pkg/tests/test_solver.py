import itertools

import numpy as np
import pytest

from theta.poly import Poly, parse_poly
from theta.solver import assemble_system, enumerate_integer_solutions, mod2_distinctness


def _vectorized(poly, cols):
    total = np.zeros(len(next(iter(cols.values()))), dtype=np.int64) + int(poly.constant())
    for m, c in poly.terms.items():
        if not m:
            continue
        term = np.full_like(total, int(c))
        for v in m:
            term = term * cols[v]
        total = total + term
    return total


def test_system_shape(p2):
    system = p2.system
    assert len(system) == 92
    assert sum(1 for q in system if q.degree == 1) == 2
    assert all(q.variables <= set(p2.basis) for q in system)
    assert all(float(c).is_integer() for q in system for c in q.terms.values())
    x = Poly.var
    assert (x(2) - x(14)) * (x(4) - x(8)) in system or -((x(2) - x(14)) * (x(4) - x(8))) in system


def test_system_contains_constraints(p2):
    keys = {q.canonical().key() for q in p2.system}
    assert parse_poly("1-x1+x2+x3+x4+x5").canonical().key() in keys
    assert parse_poly("1+x8+x9+x14+x15+x60").canonical().key() in keys


def test_box_one_matches_table(p2, pd):
    rows = [tuple(r[1]) for r in pd.appendix_c]
    assert p2.solutions(1, reference=rows) == rows


def test_box_one_against_exhaustive_numpy(p2):
    # every point of {-1,0,1}^10, checked with vectorized arithmetic
    grid = np.array(list(itertools.product((-1, 0, 1), repeat=10)), dtype=np.int64)
    cols = {v: grid[:, k] for k, v in enumerate(p2.basis)}
    ok = np.ones(len(grid), dtype=bool)
    for q in p2.system:
        ok &= _vectorized(q, cols) == 0
    brute = sorted(map(tuple, grid[ok].tolist()))
    assert brute == p2.solutions(1)


def test_box_two_adds_nothing(p2):
    # oracle: free coordinates over {-2..2}^8, with x5 and x60 solved from the
    # linear constraints
    el = p2.substitution.elimination()
    free = p2.substitution.free
    grid = np.array(list(itertools.product(range(-2, 3), repeat=len(free))), dtype=np.int64)
    cols = {v: grid[:, k] for k, v in enumerate(free)}
    for v, form in el.items():
        cols[v] = _vectorized(form, cols)
    ok = (np.abs(cols[5]) <= 2) & (np.abs(cols[60]) <= 2)
    for q in p2.system:
        ok &= _vectorized(q, cols) == 0
    brute = sorted(tuple(int(cols[v][k]) for v in p2.basis) for k in np.flatnonzero(ok))
    assert brute == p2.solutions(2) == p2.solutions(1)


def test_empty_system():
    assert enumerate_integer_solutions([], 1, variables=[1]) == [(-1,), (0,), (1,)]


def test_bad_box():
    with pytest.raises(ValueError):
        enumerate_integer_solutions([], 0, variables=[1])


def test_linear_propagation_respects_integrality():
    # 2*x1 = x2 forces x2 even
    sols = enumerate_integer_solutions([parse_poly("2*x1-x2")], 2, variables=[1, 2])
    assert sols == [(-1, -2), (0, 0), (1, 2)]


def test_mod2():
    assert not mod2_distinctness([(0, 1), (0, -1)])
    assert mod2_distinctness([(1, 0)])


def test_table_rows_distinct_mod2(pd):
    assert mod2_distinctness([r[1] for r in pd.appendix_c])


def test_points_satisfy_raw_relations(p2):
    sub = p2.substitution
    for pt in p2.solutions(1):
        values = {i: sub[i].evaluate(dict(zip(p2.basis, pt))) for i in sub.rows}
        assert set(values.values()) <= {-1, 0, 1}
        for r in p2.linear:
            assert r.poly.evaluate(values) == 0
        for q in p2.quadratic:
            assert q.poly.evaluate(values) == 0


def test_assemble_accepts_relations(p2):
    assert assemble_system(p2.substitution, p2.quadratic[:3]) == (
        p2.substitution.constraints + [p2.substitution.apply(q.poly) for q in p2.quadratic[:3]])


def test_n1_pipeline(p1):
    assert len(p1.solutions(1)) == 4
    assert p1.solutions(2) == p1.solutions(1)
