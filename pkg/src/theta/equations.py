"""Linear (L) and quadratic (Q) relations among the minimal generators.

An L-datum (X, a, b) gives

    [X \\ b, a] = delta + sum_i [X_i, a]

over the proper one-point amalgamations X_i; a Q-datum gives

    [X, a] * [X \\ a, b] = [X, b] * [X \\ b, a].

Every marked class is replaced by its neighborhood before indexing.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping

from .amalgamation import one_point_amalgamations
from .marked import GeneratorTable, MarkedStructure, encode_marked, is_minimal
from .poly import Poly
from .structures import (
    DomainError,
    OrderedStructure,
    induced,
    neighbor_set,
)


def l_datum_text(X: OrderedStructure, a: int, b: int) -> str:
    return encode_marked(X, {a: "[]", b: "()"})


def q_datum_text(X: OrderedStructure, a: int, b: int) -> str:
    return encode_marked(X, {a: "[]", b: "[]"})


def _minus(X: OrderedStructure, drop: int, keep: int) -> MarkedStructure:
    """(X \\ drop, keep) as a marked structure."""
    Z, label = induced(X, (e for e in X.elements if e != drop))
    return MarkedStructure(Z, label[keep])


def _check(X, a, b):
    X.check_element(a)
    X.check_element(b)
    if a == b:
        raise DomainError("a and b must be distinct")


@dataclass(frozen=True)
class LRelation:
    lhs: int
    constant: int
    rhs: tuple[int, ...]
    datum: tuple[OrderedStructure, int, int] = field(compare=False)

    @property
    def key(self) -> tuple:
        """Identity of the equation as written: lhs, delta and the multiset of rhs terms."""
        return (self.lhs, self.constant, tuple(sorted(self.rhs)))

    @property
    def poly(self) -> Poly:
        p = Poly.var(self.lhs) - self.constant
        for i in self.rhs:
            p = p - Poly.var(i)
        return p

    def is_trivial(self) -> bool:
        return not self.poly

    @property
    def datum_text(self) -> str:
        return l_datum_text(*self.datum)

    def __str__(self) -> str:
        terms = ([str(self.constant)] if self.constant else []) + [f"x{i}" for i in self.rhs]
        return f"x{self.lhs} = {' + '.join(terms) if terms else '0'}"

    def to_json(self) -> dict:
        return {"lhs": [self.lhs], "rhs": list(self.rhs), "constant": self.constant, "datum": self.datum_text}


@dataclass(frozen=True)
class QRelation:
    left: tuple[int, int]
    right: tuple[int, int]
    datum: tuple[OrderedStructure, int, int] = field(compare=False)

    def __post_init__(self):
        # a and b play symmetric roles: store the smaller pair on the left
        l, r = tuple(sorted(self.left)), tuple(sorted(self.right))
        if r < l:
            l, r = r, l
        object.__setattr__(self, "left", l)
        object.__setattr__(self, "right", r)

    @property
    def key(self) -> tuple:
        return (self.left, self.right)

    @property
    def poly(self) -> Poly:
        return Poly.var(self.left[0]) * Poly.var(self.left[1]) - Poly.var(self.right[0]) * Poly.var(self.right[1])

    def is_trivial(self) -> bool:
        return self.left == self.right

    @property
    def datum_text(self) -> str:
        return q_datum_text(*self.datum)

    def __str__(self) -> str:
        return f"x{self.left[0]}*x{self.left[1]} = x{self.right[0]}*x{self.right[1]}"

    def to_json(self) -> dict:
        return {"lhs": list(self.left), "rhs": list(self.right), "constant": 0, "datum": self.datum_text}


# -- single data ----------------------------------------------------------------

def is_minimal_l_datum(X: OrderedStructure, a: int, b: int) -> bool:
    """a, b are neighbors and (X \\ b, a) is minimal.

    Separation and stable separation coincide for tuples of total orders, so
    no embedding of X needs to be inspected.
    """
    _check(X, a, b)
    return b in neighbor_set(X, a) and is_minimal(_minus(X, b, a))


def is_minimal_q_datum(X: OrderedStructure, a: int, b: int) -> bool:
    _check(X, a, b)
    # (a) the transposition of a and b is an automorphism only if it
    # preserves every order, which total orders never allow
    if _swap_is_automorphism(X, a, b):
        return False
    # (b)
    na = neighbor_set(X, a)
    if b not in na:
        return False
    # (c) a point far from both a and b is far from the mark in all four
    # marked structures, so it suffices to look at X itself
    nb = neighbor_set(X, b)
    return len(na | nb) == X.size


def _swap_is_automorphism(X: OrderedStructure, a: int, b: int) -> bool:
    swap = {a: b, b: a}
    return all(
        X.less(k, swap.get(u, u), swap.get(v, v)) == X.less(k, u, v)
        for k in range(X.order_count)
        for u in X.elements
        for v in X.elements
        if u != v
    )


def linear_relation(X: OrderedStructure, a: int, b: int, table: GeneratorTable) -> LRelation:
    _check(X, a, b)
    res = one_point_amalgamations(X, a, b)
    lhs = table.to_generator(_minus(X, b, a))
    rhs = tuple(table.to_generator(m) for m in res.proper)
    return LRelation(lhs, res.delta, rhs, (X, a, b))


def quadratic_relation(X: OrderedStructure, a: int, b: int, table: GeneratorTable) -> QRelation:
    _check(X, a, b)
    left = (table.of(X, a), table.to_generator(_minus(X, a, b)))
    right = (table.of(X, b), table.to_generator(_minus(X, b, a)))
    return QRelation(left, right, (X, a, b))


# -- enumeration of data ----------------------------------------------------------

def insert_point(Z: OrderedStructure, ranks: tuple[int, ...]) -> tuple[OrderedStructure, dict[int, int], int]:
    """Add a new element at 0-based rank ``ranks[k]`` of each order k.

    Returns the new structure, the relabeling of Z's elements and the label
    of the new element.
    """
    new = object()
    listings = [list(lst) for lst in Z.listings]
    for lst, r in zip(listings, ranks):
        lst.insert(r, new)
    label = {e: i for i, e in enumerate(listings[0], start=1)}
    words = tuple(tuple(label[e] for e in lst) for lst in listings[1:])
    X = OrderedStructure(Z.size + 1, Z.order_count, words)
    return X, {e: label[e] for e in Z.elements}, label[new]


def minimal_l_data(table: GeneratorTable) -> Iterator[tuple[OrderedStructure, int, int]]:
    """Every minimal L-datum, built by adding b to a minimal marked (X \\ b, a)."""
    for m in table.structures:
        Z = m.structure
        for ranks in itertools.product(range(Z.size + 1), repeat=Z.order_count):
            X, relabel, b = insert_point(Z, ranks)
            a = relabel[m.mark]
            if b in neighbor_set(X, a):
                yield X, a, b


def all_l_data(order_count: int, max_size: int) -> Iterator[tuple[OrderedStructure, int, int]]:
    from .structures import enumerate_structures

    for size in range(2, max_size + 1):
        for X in enumerate_structures(size, order_count):
            for a, b in itertools.permutations(X.elements, 2):
                yield X, a, b


def minimal_q_data(order_count: int, max_size: int) -> Iterator[tuple[OrderedStructure, int, int]]:
    """Minimal Q-data with a < b (the relation is symmetric in a and b)."""
    from .structures import enumerate_structures

    for size in range(2, max_size + 1):
        for X in enumerate_structures(size, order_count):
            nbrs = {e: neighbor_set(X, e) for e in X.elements}
            for a in X.elements:
                for b in sorted(nbrs[a]):
                    if b > a and len(nbrs[a] | nbrs[b]) == size:
                        yield X, a, b


def default_q_size(order_count: int) -> int:
    """Size bound for minimal Q-data: a, b plus at most 2n-1 other neighbors of each."""
    return 4 * order_count


def _dedup(relations: Iterable) -> list:
    seen = {}
    for r in relations:
        if r.is_trivial():
            continue
        seen.setdefault(r.key, r)
    return list(seen.values())


def generate_linear(order_count: int, table: GeneratorTable | None = None, minimal_only: bool = True,
                    max_size: int | None = None) -> list[LRelation]:
    """Distinct L-relations, deduplicated by their written form (see LRelation.key).

    Relations whose two sides cancel identically are dropped.  With
    ``minimal_only=False`` all L-data up to ``max_size`` (default 2n+2) are used.
    """
    table = table or GeneratorTable.enumerated(order_count)
    if minimal_only:
        data = minimal_l_data(table)
    else:
        data = all_l_data(order_count, max_size or 2 * order_count + 2)
    return _dedup(linear_relation(X, a, b, table) for X, a, b in data)


def generate_quadratic(order_count: int, table: GeneratorTable | None = None,
                       max_size: int | None = None) -> list[QRelation]:
    """Distinct non-trivial Q-relations from minimal Q-data with at most ``max_size`` points."""
    table = table or GeneratorTable.enumerated(order_count)
    if max_size is None:
        max_size = default_q_size(order_count)
    return _dedup(quadratic_relation(X, a, b, table) for X, a, b in minimal_q_data(order_count, max_size))


# -- reduction to fewer variables -----------------------------------------------------

def sign_substitution(group1: Iterable[int], chains: Iterable[Iterable[tuple[int, int]]],
                      keep: Iterable[int] = ()) -> dict[int, Poly]:
    """x_i -> 0 for group1, and x_i -> +-(chain head) along each chain.

    ``chains`` hold (sign, index) pairs meaning sign*x_index are all equal;
    indices listed in ``keep`` are left alone.
    """
    keep = set(keep)
    sub = {i: Poly() for i in group1}
    for chain in chains:
        chain = list(chain)
        s0, head = chain[0]
        for s, v in chain[1:]:
            if v in keep:
                continue
            sub[v] = Poly.var(head) * (s * s0)
    return sub


def reduce_quadratics(qs: Iterable[QRelation], sub: Mapping[int, Poly]) -> list[Poly]:
    """Rewrite each relation through ``sub``, canonicalize, drop 0 = 0 and duplicates."""
    out = {}
    for q in qs:
        p = q.poly.subs(sub).canonical()
        if p:
            out.setdefault(p.key(), p)
    return list(out.values())
