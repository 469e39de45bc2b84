import math

import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from theta.groebner import GF2, QQ, PrimeField, Ring, buchberger, field_for, quotient_dimension, standard_monomials
from theta.poly import Poly, parse_poly


def test_single_square():
    gb = buchberger([parse_poly("x1*x1")], [1])
    assert gb.as_polys() == [parse_poly("x1*x1")]
    assert quotient_dimension(gb) == 2


def test_inconsistent():
    gb = buchberger([parse_poly("x1"), parse_poly("x1+1")], [1])
    assert gb.is_unit_ideal() and gb.as_polys() == [Poly.const(1)]
    assert quotient_dimension(gb) == 0


def test_free_ring_is_infinite():
    gb = buchberger([], [1, 2])
    assert quotient_dimension(gb) == math.inf and standard_monomials(gb) is None


def test_field_names():
    assert field_for("q") is QQ and field_for("f2").p == 2 and field_for("f7").p == 7


def _sympy_basis(polys, variables, modulus=None):
    gens = sympy.symbols([f"x{v}" for v in variables])
    env = {f"x{v}": g for v, g in zip(variables, gens)}
    exprs = [sympy.sympify(str(p).replace("^", "**"), locals=env) for p in polys]
    kw = {"modulus": modulus} if modulus else {}
    G = sympy.groebner(exprs, *gens, order="grevlex", **kw)
    return {sympy.Poly(g, *gens).monic().as_expr() for g in G.exprs}, env


def _ours_as_sympy(gb, env, modulus=None):
    out = set()
    for p in gb.as_polys():
        e = sympy.sympify(str(p), locals=env)
        P = sympy.Poly(e, *env.values(), modulus=modulus) if modulus else sympy.Poly(e, *env.values())
        out.add(P.monic().as_expr())
    return out


def test_reference_system_matches_sympy(p2):
    system = p2.eliminated_system()
    free = p2.substitution.free
    gb = buchberger(system, free, QQ)
    ref, env = _sympy_basis(system, free)
    assert _ours_as_sympy(gb, env) == ref
    assert quotient_dimension(gb) == 37


def test_reference_system_mod_two(p2):
    gb = buchberger(p2.eliminated_system(), p2.substitution.free, GF2)
    assert quotient_dimension(gb) == 37
    ref, env = _sympy_basis(p2.eliminated_system(), p2.substitution.free, modulus=2)
    assert _ours_as_sympy(gb, env, modulus=2) == ref


def test_basis_properties(p2):
    system = p2.eliminated_system()
    gb = buchberger(system, p2.substitution.free, QQ)
    ring = gb.ring
    for q in system:
        assert gb.contains(q)
    for f in gb.polys:
        for g in gb.polys:
            if f is not g:
                assert not gb.reduce(ring.spoly(f, g))


monomials = st.lists(st.tuples(st.integers(-3, 3), st.lists(st.integers(1, 3), max_size=2)), min_size=1, max_size=4)


def _poly(terms):
    return Poly([(tuple(sorted(m)), c) for c, m in terms if c])


@settings(max_examples=60, deadline=None)
@given(st.lists(monomials, min_size=1, max_size=4))
def test_random_systems_match_sympy(raw):
    polys = [p for p in (_poly(t) for t in raw) if p]
    if not polys:
        return
    gb = buchberger(polys, [1, 2, 3], QQ)
    ref, env = _sympy_basis(polys, [1, 2, 3])
    assert _ours_as_sympy(gb, env) == ref


@settings(max_examples=40, deadline=None)
@given(st.lists(monomials, min_size=1, max_size=4))
def test_random_systems_match_sympy_mod_three(raw):
    F = PrimeField(3)
    polys = [p for p in (_poly(t) for t in raw) if Ring([1, 2, 3], F).from_poly(p)]
    if not polys:
        return
    gb = buchberger(polys, [1, 2, 3], F)
    ref, env = _sympy_basis(polys, [1, 2, 3], modulus=3)
    assert _ours_as_sympy(gb, env, modulus=3) == ref


def test_n1_dimension(p1):
    assert p1.dimension(QQ) == 4 and p1.dimension(GF2) == 4
