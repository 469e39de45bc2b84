"""End-to-end computation for a given number of orders, cached per order count."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache

from .equations import (
    LRelation,
    QRelation,
    generate_linear,
    generate_quadratic,
    reduce_quadratics,
)
from .groebner import QQ, GroebnerBasis, buchberger, quotient_dimension
from .linalg import SubstitutionMap, build_substitution
from .marked import GeneratorTable
from .poly import Poly
from .solver import assemble_system, enumerate_integer_solutions

# Presentation choices for two orders: the ten basis classes, the two basis
# variables solved for by the inhomogeneous relations, and the 21 classes
# that survive the vanishing and sign-equality reductions.
BASIS2 = (1, 2, 3, 4, 5, 8, 9, 14, 15, 60)
ELIMINATE2 = (5, 60)
SURVIVORS2 = (1, 2, 3, 4, 5, 8, 9, 14, 15, 60, 65, 6, 7, 12, 13, 18, 19, 20, 27, 44, 51)


def sign_reduction(sub: SubstitutionMap, survivors) -> dict[int, Poly]:
    """x_i -> 0 or x_i -> +-x_j (j a survivor) whenever the linear relations force it."""
    survivors = sorted(survivors)
    out = {}
    for i, row in sub.rows.items():
        if i in survivors:
            continue
        if not row:
            out[i] = Poly()
            continue
        for j in survivors:
            if row == sub.rows[j]:
                out[i] = Poly.var(j)
                break
            if row == -sub.rows[j]:
                out[i] = -Poly.var(j)
                break
    return out


@dataclass
class Pipeline:
    order_count: int
    q_size: int | None = None

    @cached_property
    def table(self) -> GeneratorTable:
        return GeneratorTable.enumerated(self.order_count)

    @cached_property
    def linear(self) -> list[LRelation]:
        return generate_linear(self.order_count, self.table)

    @cached_property
    def substitution(self) -> SubstitutionMap:
        polys = [r.poly for r in self.linear]
        variables = range(1, len(self.table) + 1)
        if self.order_count == 2:
            return build_substitution(polys, variables, basis=BASIS2, eliminate=ELIMINATE2)
        return build_substitution(polys, variables)

    @cached_property
    def quadratic(self) -> list[QRelation]:
        return generate_quadratic(self.order_count, self.table, max_size=self.q_size)

    @cached_property
    def reduction(self) -> dict[int, Poly]:
        survivors = SURVIVORS2 if self.order_count == 2 else self.substitution.basis
        return sign_reduction(self.substitution, survivors)

    @cached_property
    def reduced_quadratics(self) -> list[Poly]:
        return reduce_quadratics(self.quadratic, self.reduction)

    @cached_property
    def system(self) -> list[Poly]:
        return assemble_system(self.substitution, self.reduced_quadratics)

    @property
    def basis(self) -> list[int]:
        return list(self.substitution.basis)

    def solutions(self, box: int = 1, reference=None) -> list[tuple[int, ...]]:
        return enumerate_integer_solutions(self.system, box, variables=self.basis, reference=reference)

    def eliminated_system(self) -> list[Poly]:
        """The quadratics over the free variables, the linear constraints solved away."""
        el = self.substitution.elimination()
        out = []
        for p in self.system[len(self.substitution.constraints):]:
            p = p.subs(el)
            if p:
                out.append(p)
        return out

    def groebner(self, field=QQ) -> GroebnerBasis:
        return buchberger(self.eliminated_system(), self.substitution.free, field)

    def dimension(self, field=QQ) -> int | float:
        return quotient_dimension(self.groebner(field))


@lru_cache(maxsize=None)
def pipeline(order_count: int, q_size: int | None = None) -> Pipeline:
    if order_count < 1:
        raise ValueError("need at least one order")
    return Pipeline(order_count, q_size)
