"""A small Buchberger engine over Q and prime fields, graded reverse lex order.

Polynomials are dicts from exponent tuples to field elements.  The pair
bookkeeping uses the Gebauer-Moeller update, and pairs are processed by the
normal strategy (smallest lcm first).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .poly import Poly

Exp = tuple


class Rationals:
    name = "QQ"
    characteristic = 0

    def convert(self, c):
        return Fraction(c)

    def div(self, a, b):
        return a / b

    def __repr__(self):
        return "QQ"


class PrimeField:
    def __init__(self, p: int):
        if p < 2 or any(p % d == 0 for d in range(2, math.isqrt(p) + 1)):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.characteristic = p
        self.name = f"GF({p})"

    def convert(self, c):
        c = Fraction(c)
        return c.numerator * pow(c.denominator, -1, self.p) % self.p

    def div(self, a, b):
        return a * pow(b, -1, self.p) % self.p

    def __repr__(self):
        return self.name


QQ = Rationals()
GF2 = PrimeField(2)


def field_for(name: str):
    name = name.lower()
    if name in ("q", "qq", "rational", "rationals"):
        return QQ
    if name.startswith("f") or name.startswith("gf"):
        digits = "".join(ch for ch in name if ch.isdigit())
        return PrimeField(int(digits or 2))
    raise ValueError(f"unknown field {name!r}")


def grevlex_key(e: Exp):
    return (sum(e), tuple(-x for x in reversed(e)))


def divides(a: Exp, b: Exp) -> bool:
    return all(x <= y for x, y in zip(a, b))


def lcm(a: Exp, b: Exp) -> Exp:
    return tuple(max(x, y) for x, y in zip(a, b))


def disjoint(a: Exp, b: Exp) -> bool:
    return all(x == 0 or y == 0 for x, y in zip(a, b))


class Ring:
    """Polynomial ring over ``field`` in the given variables (generator indices)."""

    def __init__(self, variables: Sequence[int], field=QQ):
        self.variables = list(variables)
        self.pos = {v: i for i, v in enumerate(self.variables)}
        self.field = field
        self.nvars = len(self.variables)
        self.p = getattr(field, "p", None)

    # conversion
    def from_poly(self, q: Poly) -> dict:
        out = {}
        for m, c in q.terms.items():
            e = [0] * self.nvars
            for v in m:
                e[self.pos[v]] += 1
            c = self.field.convert(c)
            if c:
                e = tuple(e)
                out[e] = out.get(e, 0) + c
                if self.p:
                    out[e] %= self.p
                if not out[e]:
                    del out[e]
        return out

    def to_poly(self, f: dict) -> Poly:
        terms = []
        for e, c in f.items():
            m = tuple(v for v, k in zip(self.variables, e) for _ in range(k))
            terms.append((m, int(c) if isinstance(c, int) or c.denominator == 1 else c))
        return Poly(terms)

    # arithmetic
    def lm(self, f: dict) -> Exp:
        return max(f, key=grevlex_key)

    def monic(self, f: dict) -> dict:
        lc = f[self.lm(f)]
        return {e: self.field.div(c, lc) for e, c in f.items()}

    def sub_mul(self, f: dict, c, shift: Exp, g: dict) -> dict:
        """f - c * x^shift * g."""
        out = dict(f)
        p = self.p
        for e, d in g.items():
            e2 = tuple(x + y for x, y in zip(e, shift))
            v = out.get(e2, 0) - c * d
            if p:
                v %= p
            if v:
                out[e2] = v
            else:
                out.pop(e2, None)
        return out

    def reduce(self, f: dict, G: Sequence[dict], lms: Sequence[Exp] | None = None) -> dict:
        """Full normal form of f modulo G (G need not be monic)."""
        if lms is None:
            lms = [self.lm(g) for g in G]
        f = dict(f)
        r = {}
        while f:
            m = max(f, key=grevlex_key)
            c = f[m]
            for g, gm in zip(G, lms):
                if divides(gm, m):
                    shift = tuple(x - y for x, y in zip(m, gm))
                    f = self.sub_mul(f, self.field.div(c, g[gm]), shift, g)
                    break
            else:
                r[m] = c
                del f[m]
        return r

    def spoly(self, f: dict, g: dict) -> dict:
        mf, mg = self.lm(f), self.lm(g)
        L = lcm(mf, mg)
        sf = tuple(x - y for x, y in zip(L, mf))
        sg = tuple(x - y for x, y in zip(L, mg))
        a = self.sub_mul({}, -self.field.div(1, f[mf]), sf, f)
        return self.sub_mul(a, self.field.div(1, g[mg]), sg, g)


@dataclass
class GroebnerBasis:
    ring: Ring
    polys: list[dict]

    @property
    def leading_monomials(self) -> list[Exp]:
        return [self.ring.lm(g) for g in self.polys]

    def reduce(self, f: dict) -> dict:
        return self.ring.reduce(f, self.polys)

    def contains(self, q: Poly) -> bool:
        return not self.reduce(self.ring.from_poly(q))

    def as_polys(self) -> list[Poly]:
        return [self.ring.to_poly(g) for g in self.polys]

    def is_unit_ideal(self) -> bool:
        return any(sum(m) == 0 for m in self.leading_monomials)


def _update(ring: Ring, store: list, G: list[int], B: list[tuple[int, int]], h: int):
    lm = ring.lm
    mh = lm(store[h])
    C = [(h, g) for g in G]
    D = []
    while C:
        _, g1 = pair = C.pop(0)
        L1 = lcm(mh, lm(store[g1]))
        if disjoint(mh, lm(store[g1])) or not any(
            divides(lcm(mh, lm(store[g2])), L1) for _, g2 in C + D
        ):
            D.append(pair)
    E = [(a, b) for a, b in D if not disjoint(mh, lm(store[b]))]
    Bn = []
    for g1, g2 in B:
        m1, m2 = lm(store[g1]), lm(store[g2])
        L = lcm(m1, m2)
        if divides(mh, L) and lcm(m1, mh) != L and lcm(mh, m2) != L:
            continue
        Bn.append((g1, g2))
    Bn.extend(E)
    Gn = [g for g in G if not divides(mh, lm(store[g]))]
    Gn.append(h)
    return Gn, Bn


def buchberger(system: Iterable[Poly], variables: Sequence[int], field=QQ) -> GroebnerBasis:
    """Reduced Groebner basis of the ideal generated by ``system`` (grevlex, variables[0] largest)."""
    ring = Ring(variables, field)
    store: list[dict] = []
    G: list[int] = []
    B: list[tuple[int, int]] = []
    for q in system:
        f = ring.from_poly(q)
        if store:
            f = ring.reduce(f, [store[g] for g in G])
        if f:
            store.append(ring.monic(f))
            G, B = _update(ring, store, G, B, len(store) - 1)
    while B:
        best = min(range(len(B)), key=lambda k: grevlex_key(lcm(ring.lm(store[B[k][0]]), ring.lm(store[B[k][1]]))))
        g1, g2 = B.pop(best)
        basis = [store[g] for g in G]
        h = ring.reduce(ring.spoly(store[g1], store[g2]), basis)
        if h:
            store.append(ring.monic(h))
            G, B = _update(ring, store, G, B, len(store) - 1)
    return GroebnerBasis(ring, _interreduce(ring, [store[g] for g in G]))


def _interreduce(ring: Ring, polys: list[dict]) -> list[dict]:
    polys = [ring.monic(p) for p in polys if p]
    lms = [ring.lm(p) for p in polys]
    keep = []
    for i, m in enumerate(lms):
        if any(j != i and divides(lms[j], m) and (lms[j] != m or j < i) for j in range(len(polys))):
            continue
        keep.append(polys[i])
    out = []
    for i, p in enumerate(keep):
        others = keep[:i] + keep[i + 1:]
        out.append(ring.monic(ring.reduce(p, others)))
    return sorted(out, key=lambda f: grevlex_key(ring.lm(f)))


def standard_monomials(gb: GroebnerBasis, limit: int | None = None) -> list[Exp] | None:
    """Monomials outside the leading-term ideal, or None if there are infinitely many."""
    n = gb.ring.nvars
    lms = gb.leading_monomials
    if any(sum(m) == 0 for m in lms):
        return []
    bounds = []
    for i in range(n):
        pure = [m[i] for m in lms if m[i] > 0 and sum(m) == m[i]]
        if not pure:
            return None
        bounds.append(min(pure))
    out = []

    def rec(i, e):
        if i == n:
            t = tuple(e)
            if not any(divides(m, t) for m in lms):
                out.append(t)
            return
        for k in range(bounds[i]):
            e.append(k)
            # prune early: the partial monomial is already divisible
            partial = tuple(e) + (0,) * (n - i - 1)
            if not any(divides(m, partial) for m in lms):
                rec(i + 1, e)
            e.pop()
            if limit is not None and len(out) > limit:
                return

    rec(0, [])
    return sorted(out, key=grevlex_key)


def quotient_dimension(gb: GroebnerBasis) -> int | float:
    """Vector-space dimension of R/I; ``math.inf`` when the staircase is unbounded."""
    sm = standard_monomials(gb)
    return math.inf if sm is None else len(sm)
