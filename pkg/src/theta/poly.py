"""Sparse polynomials in the generator variables x1, x2, ...

A monomial is a sorted tuple of variable indices (with repetition), so
``(7, 13)`` is x7*x13, ``(8, 8)`` is x8^2 and ``()`` is the constant term.
Coefficients are Python ints or Fractions; nothing here ever touches floats.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Mapping

Monomial = tuple


def mono_key(m: Monomial):
    return (len(m), m)


class Poly:
    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Monomial, object] | Iterable = ()):
        acc: dict[Monomial, object] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for m, c in items:
            m = tuple(sorted(m))
            v = acc.get(m, 0) + c
            if v:
                acc[m] = v
            else:
                acc.pop(m, None)
        self.terms = acc

    @classmethod
    def var(cls, i: int) -> "Poly":
        return cls({(i,): 1})

    @classmethod
    def const(cls, c) -> "Poly":
        return cls({(): c})

    # arithmetic
    def __add__(self, other):
        other = _lift(other)
        return Poly(list(self.terms.items()) + list(other.terms.items()))

    __radd__ = __add__

    def __neg__(self):
        return Poly({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-_lift(other))

    def __rsub__(self, other):
        return _lift(other) - self

    def __mul__(self, other):
        other = _lift(other)
        out = []
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                out.append((m1 + m2, c1 * c2))
        return Poly(out)

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Poly.const(other)
        return isinstance(other, Poly) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    @property
    def degree(self) -> int:
        return max((len(m) for m in self.terms), default=-1)

    @property
    def variables(self) -> set[int]:
        return {v for m in self.terms for v in m}

    def constant(self):
        return self.terms.get((), 0)

    def coefficient(self, m: Monomial):
        return self.terms.get(tuple(sorted(m)), 0)

    def subs(self, mapping: Mapping[int, "Poly"]) -> "Poly":
        """Replace variables by polynomials (unmapped variables stay)."""
        out = Poly()
        for m, c in self.terms.items():
            t = Poly.const(c)
            for v in m:
                t = t * (mapping[v] if v in mapping else Poly.var(v))
            out = out + t
        return out

    def evaluate(self, values: Mapping[int, object]):
        total = 0
        for m, c in self.terms.items():
            t = c
            for v in m:
                t = t * values[v]
            total += t
        return total

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda mc: mono_key(mc[0]))

    def canonical(self) -> "Poly":
        """Scale so the first term in (degree, variables) order has coefficient +1."""
        if not self.terms:
            return self
        _, lead = self.sorted_terms()[0]
        return Poly({m: _div(c, lead) for m, c in self.terms.items()})

    def key(self) -> tuple:
        return tuple(self.sorted_terms())

    def __repr__(self):
        return f"Poly({format_poly(self)!r})"

    def __str__(self):
        return format_poly(self)


def _div(a, b):
    q = Fraction(a) / Fraction(b)
    return int(q) if q.denominator == 1 else q


def _lift(x) -> Poly:
    return x if isinstance(x, Poly) else Poly.const(x)


def format_mono(m: Monomial) -> str:
    return "*".join(f"x{v}" for v in m)


def format_poly(p: Poly) -> str:
    if not p.terms:
        return "0"
    parts = []
    for m, c in p.sorted_terms():
        sign = "-" if c < 0 else "+"
        a = abs(c)
        if not m:
            body = str(a)
        elif a == 1:
            body = format_mono(m)
        else:
            body = f"{a}*{format_mono(m)}"
        parts.append((sign, body))
    text = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, body in parts[1:]:
        text += sign + body
    return text


_TERM = re.compile(r"([+-]?)\s*(\d+(?:/\d+)?)?\s*\*?\s*((?:x\d+\s*\*?\s*)*)")


def parse_poly(text: str) -> Poly:
    """Parse expressions like "1-x1+x2", "x7*x13", "2*x8*x8", "-x65"."""
    s = text.replace(" ", "")
    if not s:
        raise ValueError("empty expression")
    out = []
    pos = 0
    while pos < len(s):
        m = _TERM.match(s, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse {text!r} at {s[pos:]!r}")
        sign, coef, vars_ = m.groups()
        if coef is None and not vars_:
            raise ValueError(f"cannot parse {text!r}")
        c = Fraction(coef) if coef else Fraction(1)
        if sign == "-":
            c = -c
        mono = tuple(int(v) for v in re.findall(r"x(\d+)", vars_))
        out.append((mono, int(c) if c.denominator == 1 else c))
        pos = m.end()
    return Poly(out)


def parse_equation(text: str) -> Poly:
    """"lhs = rhs" -> lhs - rhs."""
    lhs, rhs = text.split("=")
    return parse_poly(lhs) - parse_poly(rhs)
