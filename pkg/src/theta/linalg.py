"""Exact rational linear algebra for affine relations among generators."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .poly import Poly

CONST = "1"  # column tag for the constant term


class InconsistentSystem(ValueError):
    """The affine relations force 1 = 0."""


def rref(M: Sequence[Sequence]) -> tuple[list[list[Fraction]], int, list[int]]:
    """Reduced row echelon form over Q; pivot = leftmost nonzero, first row found.

    Returns (matrix, rank, pivot columns).  Zero rows are kept at the bottom.
    """
    A = [[Fraction(x) for x in row] for row in M]
    if not A:
        return A, 0, []
    ncols = len(A[0])
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(A)) if A[i][c] != 0), None)
        if p is None:
            continue
        A[r], A[p] = A[p], A[r]
        pv = A[r][c]
        if pv != 1:
            A[r] = [x / pv for x in A[r]]
        for i in range(len(A)):
            if i != r and A[i][c] != 0:
                f = A[i][c]
                row_r = A[r]
                A[i] = [x - f * y for x, y in zip(A[i], row_r)]
        pivots.append(c)
        r += 1
        if r == len(A):
            break
    return A, r, pivots


def rank(M: Sequence[Sequence]) -> int:
    return rref(M)[1]


def _linear_poly(p: Poly) -> Poly:
    if p.degree > 1:
        raise ValueError(f"{p} is not affine")
    return p


def to_matrix(polys: Iterable[Poly], columns: Sequence) -> list[list[Fraction]]:
    """Rows of coefficients; column tag ``CONST`` holds the constant term."""
    out = []
    for p in polys:
        p = _linear_poly(p)
        row = []
        for c in columns:
            row.append(Fraction(p.constant() if c == CONST else p.coefficient((c,))))
        out.append(row)
    return out


def from_row(row: Sequence, columns: Sequence) -> Poly:
    terms = []
    for c, v in zip(columns, row):
        if v:
            v = int(v) if Fraction(v).denominator == 1 else Fraction(v)
            terms.append(((), v) if c == CONST else ((c,), v))
    return Poly(terms)


def _columns_for(*groups: Iterable[Poly]) -> list:
    variables = set()
    for g in groups:
        for p in g:
            variables |= p.variables
    return sorted(variables) + [CONST]


def in_span(p: Poly, span: Sequence[Poly]) -> bool:
    cols = _columns_for(span, [p])
    return rank(to_matrix(span, cols)) == rank(to_matrix(list(span) + [p], cols))


def span_equal(A: Sequence[Poly], B: Sequence[Poly]) -> bool:
    """Both lists of affine relations generate the same space of consequences."""
    cols = _columns_for(A, B)
    ra = rank(to_matrix(A, cols))
    rb = rank(to_matrix(B, cols))
    return ra == rb == rank(to_matrix(list(A) + list(B), cols))


@dataclass
class SubstitutionMap:
    """Every generator as an affine form over ``basis``, plus the relations left on the basis.

    ``rows[i]`` is a Poly in the basis variables equal to x_i modulo the
    linear relations.  ``constraints`` are the relations that remain among
    the basis variables, in reduced form with pivots ``eliminated``.
    """

    basis: list[int]
    rows: dict[int, Poly]
    constraints: list[Poly]
    eliminated: list[int]

    def __getitem__(self, i: int) -> Poly:
        return self.rows[i]

    @property
    def free(self) -> list[int]:
        return [v for v in self.basis if v not in self.eliminated]

    def apply(self, p: Poly) -> Poly:
        return p.subs(self.rows)

    def elimination(self) -> dict[int, Poly]:
        """eliminated variable -> affine form in the free variables."""
        out = {}
        for c, v in zip(self.constraints, self.eliminated):
            out[v] = Poly.var(v) - c
        return out

    def reduced(self, i: int) -> Poly:
        """x_i over the free variables only."""
        return self.rows[i].subs(self.elimination())

    def to_json(self) -> dict:
        def form(p):
            return {"constant": _num(p.constant()),
                    "coefficients": {f"x{v}": _num(p.coefficient((v,))) for v in self.basis if p.coefficient((v,))}}
        return {
            "basis": [f"x{v}" for v in self.basis],
            "eliminated": [f"x{v}" for v in self.eliminated],
            "constraints": [str(c) + " = 0" for c in self.constraints],
            "rows": {f"x{i}": form(p) for i, p in sorted(self.rows.items())},
        }


def _num(x):
    x = Fraction(x)
    return x.numerator if x.denominator == 1 else str(x)


def build_substitution(relations: Sequence[Poly], variables: Iterable[int],
                       basis: Sequence[int] | None = None,
                       eliminate: Sequence[int] | None = None) -> SubstitutionMap:
    """Express every variable over a basis using the affine ``relations``.

    Non-basis variables are eliminated highest index first.  The constant
    column sits before the basis columns, so whenever possible the
    expressions come out homogeneous; the first basis column then absorbs the
    remaining homogeneous basis relation.  Without an explicit ``basis`` the
    free variables of a plain elimination are used.
    """
    variables = sorted(set(variables))
    if basis is None:
        cols = sorted(variables, reverse=True) + [CONST]
        _, _, piv = rref(to_matrix(relations, cols))
        pivot_vars = {cols[c] for c in piv}
        if CONST in pivot_vars:
            raise InconsistentSystem("relations imply 1 = 0")
        basis = [v for v in variables if v not in pivot_vars]
    basis = list(basis)
    others = sorted((v for v in variables if v not in basis), reverse=True)
    cols = others + [CONST] + basis
    R, rk, piv = rref(to_matrix(relations, cols))
    rows: dict[int, Poly] = {v: Poly.var(v) for v in basis}
    residual = []
    pivot_cols = set()
    for r, c in zip(R[:rk], piv):
        tag = cols[c]
        pivot_cols.add(tag)
        if tag in basis or tag == CONST:
            residual.append(from_row(r, cols))
            continue
        # x_tag + (rest) = 0
        rows[tag] = Poly.var(tag) - from_row(r, cols)
    missing = [v for v in others if v not in pivot_cols]
    if missing:
        raise InconsistentSystem(f"relations do not determine x{missing[0]} over the basis")

    # residual relations among basis variables, pivoting on ``eliminate`` first
    if eliminate is None:
        eliminate_order = sorted(basis, reverse=True)
    else:
        eliminate_order = list(eliminate) + [v for v in sorted(basis, reverse=True) if v not in eliminate]
    cols2 = eliminate_order + [CONST]
    R2, rk2, piv2 = rref(to_matrix(residual, cols2)) if residual else ([], 0, [])
    constraints, eliminated = [], []
    for r, c in zip(R2[:rk2], piv2):
        if cols2[c] == CONST:
            raise InconsistentSystem("relations imply 1 = 0")
        constraints.append(from_row(r, cols2))
        eliminated.append(cols2[c])
    return SubstitutionMap(basis, rows, constraints, eliminated)
