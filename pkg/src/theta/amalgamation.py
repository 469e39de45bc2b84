"""Amalgamations of ordered structures.

Two entry points: the closed-form one-point case that drives the linear
relations, and a brute-force enumerator for arbitrary spans Y -> X, Y -> Y'
used as an oracle when testing the measure axioms.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

from .marked import MarkedStructure
from .structures import (
    DomainError,
    Embedding,
    OrderedStructure,
    adjacent_in,
    normalize_with_labels,
)

MAX_AMALGAM_SIZE = 8


class UnsupportedSize(ValueError):
    """Instance is above the brute-force budget."""


@dataclass(frozen=True)
class OnePointAmalgamationResult:
    proper: tuple[MarkedStructure, ...]
    delta: int
    # for each proper amalgam, the canonical label of the second point
    partners: tuple[int, ...] = ()


def _check_pair(X: OrderedStructure, a: int, b: int) -> None:
    X.check_element(a)
    X.check_element(b)
    if a == b:
        raise DomainError("the two points must be distinct")


def adjacent_orders(X: OrderedStructure, a: int, b: int) -> list[int]:
    return [k for k in range(X.order_count) if adjacent_in(X, k, a, b)]


def one_point_amalgamations(X: OrderedStructure, a: int, b: int) -> OnePointAmalgamationResult:
    """Proper amalgamations of X \\ a and X \\ b over X \\ {a, b}, marked at a.

    The orders can only be changed on the pair (a, b), and only in orders
    where a and b are adjacent; every subset of those orders may be flipped.
    Subsets are taken in binary order over the adjacent orders, so the first
    amalgam is always X itself.
    """
    _check_pair(X, a, b)
    adj = adjacent_orders(X, a, b)
    proper = []
    partners = []
    for mask in range(1 << len(adj)):
        listings = [list(lst) for lst in X.listings]
        for bit, k in enumerate(adj):
            if mask >> bit & 1:
                lst = listings[k]
                i, j = lst.index(a), lst.index(b)
                lst[i], lst[j] = b, a
        Z, label = normalize_with_labels(listings)
        proper.append(MarkedStructure(Z, label[a]))
        partners.append(label[b])
    delta = 1 if len(adj) == X.order_count else 0
    return OnePointAmalgamationResult(tuple(proper), delta, tuple(partners))


def are_separated(X: OrderedStructure, x: int, y: int) -> bool:
    """X is the unique amalgamation of X \\ x and X \\ y over X \\ {x, y}."""
    r = one_point_amalgamations(X, x, y)
    return len(r.proper) == 1 and r.delta == 0


# -- general spans ----------------------------------------------------------------

@dataclass(frozen=True)
class AmalgamationTriple:
    total: OrderedStructure
    into_from_Yprime: Embedding
    into_from_X: Embedding


@lru_cache(maxsize=1 << 16)
def _linear_extensions(chain_a: tuple, chain_b: tuple) -> tuple:
    """All total orders on the union of two chains that restrict to both.

    Each chain lists its elements in order; shared elements are what tie the
    two together.  Results come out in a fixed order (smallest repr first).
    """
    succ: dict = {}
    nodes = set(chain_a) | set(chain_b)
    indeg = {v: 0 for v in nodes}
    for chain in (chain_a, chain_b):
        for u, v in zip(chain, chain[1:]):
            if v not in succ.setdefault(u, set()):
                succ[u].add(v)
                indeg[v] += 1
    ranked = sorted(nodes, key=repr)
    out = []
    prefix = []

    def rec():
        if len(prefix) == len(ranked):
            out.append(tuple(prefix))
            return
        for v in ranked:
            if indeg[v] == 0:
                indeg[v] = -1
                for w in succ.get(v, ()):
                    indeg[w] -= 1
                prefix.append(v)
                rec()
                prefix.pop()
                for w in succ.get(v, ()):
                    indeg[w] += 1
                indeg[v] = 0

    rec()
    return tuple(out)


def amalgam_keys(X: OrderedStructure, x_map: tuple, Yp: OrderedStructure, y_map: tuple):
    """Raw amalgamations: (total, image of Y', image of X) as label tuples.

    ``x_map`` and ``y_map`` give the images of Y in X and in Y'.  Every
    amalgamation up to isomorphism of triples appears exactly once: totals
    are canonical, so two isomorphic triples have identical keys.
    """
    n = X.order_count
    x_rest = [u for u in X.elements if u not in set(x_map)]
    yp_rest = [v for v in Yp.elements if v not in set(y_map)]
    core = dict(zip(x_map, y_map))
    seen = set()
    # number of identified pairs, most first, so smaller totals come first
    for r in range(min(len(x_rest), len(yp_rest)), -1, -1):
        for xs in itertools.combinations(x_rest, r):
            for ys in itertools.permutations(yp_rest, r):
                ident = dict(core)
                ident.update(zip(xs, ys))
                tags = {u: (0, ident[u]) if u in ident else (1, u) for u in X.elements}
                per_order = []
                for k in range(n):
                    ca = tuple(tags[u] for u in X.listings[k])
                    cb = tuple((0, v) for v in Yp.listings[k])
                    exts = _linear_extensions(ca, cb)
                    if not exts:
                        break
                    per_order.append(exts)
                else:
                    for listings in itertools.product(*per_order):
                        Z, label = normalize_with_labels(list(listings))
                        key = (Z,
                               tuple(label[(0, v)] for v in Yp.elements),
                               tuple(label[tags[u]] for u in X.elements))
                        if key not in seen:
                            seen.add(key)
                            yield key


def enumerate_amalgamations(i: Embedding, j: Embedding) -> list[AmalgamationTriple]:
    """Every amalgamation of i: Y -> X and j: Y -> Y', up to isomorphism of triples.

    Works by choosing which points of X outside i(Y) are identified with points
    of Y' outside j(Y), then merging each order.  Ordered by (total size,
    identification, orders).
    """
    if i.source != j.source:
        raise DomainError("the two embeddings must share a source")
    X, Yp = i.target, j.target
    if X.size + Yp.size - i.source.size > MAX_AMALGAM_SIZE:
        raise UnsupportedSize(
            f"|X|+|Y'|-|Y| = {X.size + Yp.size - i.source.size} exceeds {MAX_AMALGAM_SIZE}"
        )
    return [
        AmalgamationTriple(Z, Embedding(Yp, Z, e_yp), Embedding(X, Z, e_x))
        for Z, e_yp, e_x in amalgam_keys(X, i.map, Yp, j.map)
    ]
