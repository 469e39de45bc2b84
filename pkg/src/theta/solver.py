"""Assemble the reduced polynomial system and find its integer points."""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from .linalg import SubstitutionMap
from .poly import Poly


def _as_poly(q) -> Poly:
    return q if isinstance(q, Poly) else q.poly


def assemble_system(sub: SubstitutionMap, quadratics: Iterable) -> list[Poly]:
    """Basis constraints followed by every quadratic rewritten over the basis."""
    system = list(sub.constraints)
    for q in quadratics:
        system.append(sub.apply(_as_poly(q)))
    return system


def enumerate_integer_solutions(system: Sequence[Poly], box_bound: int,
                                variables: Sequence[int] | None = None,
                                reference: Sequence[Sequence[int]] | None = None) -> list[tuple[int, ...]]:
    """Integer points in [-box_bound, box_bound]^k satisfying every polynomial.

    Depth-first over ``variables`` (default: all variables, ascending).  A
    linear equation with a single unassigned variable fixes that variable;
    any equation whose variables are all assigned is checked on the spot.
    Points are returned lexicographically, or, when ``reference`` rows are
    given, in reference order with unmatched points last.
    """
    if box_bound < 1:
        raise ValueError("box_bound must be >= 1")
    system = [p for p in system if p]
    if variables is None:
        variables = sorted(set().union(*(p.variables for p in system))) if system else []
    variables = list(variables)
    for p in system:
        if not p.variables <= set(variables):
            raise ValueError(f"{p} uses variables outside {variables}")
    order = {v: i for i, v in enumerate(variables)}
    # an equation is checked once the last of its variables is assigned
    due: dict[int, list[Poly]] = {i: [] for i in range(-1, len(variables))}
    for p in system:
        due[max((order[v] for v in p.variables), default=-1)].append(p)
    if any(p.evaluate({}) != 0 for p in due[-1]):
        return []
    linear = [p for p in system if p.degree == 1]
    values: dict[int, int] = {}
    out = []
    rng = range(-box_bound, box_bound + 1)

    def forced(i):
        """Value of variables[i] implied by a linear equation, None if free, False if impossible."""
        v = variables[i]
        for p in linear:
            if v not in p.variables:
                continue
            rest = p.variables - {v}
            if all(u in values for u in rest):
                c = p.coefficient((v,))
                s = p.constant() + sum(p.coefficient((u,)) * values[u] for u in rest)
                x = Fraction(-s, 1) / c
                if x.denominator != 1 or abs(x) > box_bound:
                    return False
                return int(x)
        return None

    def rec(i):
        if i == len(variables):
            out.append(tuple(values[v] for v in variables))
            return
        f = forced(i)
        if f is False:
            return
        for x in ([f] if f is not None else rng):
            values[variables[i]] = x
            if all(p.evaluate(values) == 0 for p in due[i]):
                rec(i + 1)
            del values[variables[i]]

    rec(0)
    out.sort()
    if reference is not None:
        ref = {tuple(r): k for k, r in enumerate(reference)}
        out.sort(key=lambda pt: (ref.get(pt, len(ref)), pt))
    return out


def mod2_distinctness(points: Iterable[Sequence[int]]) -> bool:
    """Pairwise distinct after reduction mod 2.

    Distinctness modulo odd primes is automatic for coordinates in {-1,0,1}
    (differences are at most 2 in size) and is asserted rather than searched.
    """
    pts = [tuple(points_) for points_ in points]
    for pt in pts:
        if any(abs(x) > 1 for x in pt):
            raise ValueError("coordinates must lie in {-1, 0, 1}")
    reduced = {tuple(x % 2 for x in pt) for pt in pts}
    return len(reduced) == len(pts)
