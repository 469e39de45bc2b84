"""Finite sets carrying n total orders, kept in canonical form.

Elements are always named by their rank in the first order (1..size).  The
first order is therefore implicit, and the remaining n-1 orders are stored as
one-line words: word k lists the elements in increasing order of order k+1.
Because this form is canonical, isomorphism is plain equality.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Sequence


class MalformedInput(ValueError):
    """Order data that does not describe total orders on one set."""


class DomainError(ValueError):
    """An element or argument outside the structure it refers to."""


@dataclass(frozen=True, order=True)
class OrderedStructure:
    size: int
    order_count: int
    words: tuple[tuple[int, ...], ...] = field(default=())

    def __post_init__(self):
        if self.order_count < 1:
            raise MalformedInput("need at least one order")
        if len(self.words) != self.order_count - 1:
            raise MalformedInput(
                f"expected {self.order_count - 1} words, got {len(self.words)}"
            )
        full = tuple(range(1, self.size + 1))
        for w in self.words:
            if tuple(sorted(w)) != full:
                raise MalformedInput(f"{w!r} is not a permutation of 1..{self.size}")

    @cached_property
    def positions(self) -> tuple[tuple[int, ...], ...]:
        """positions[k][e] is the rank of element e in order k (0-based, index 0 unused)."""
        pos = [tuple(range(self.size + 1))]
        for w in self.words:
            p = [0] * (self.size + 1)
            for r, e in enumerate(w, start=1):
                p[e] = r
            pos.append(tuple(p))
        return tuple(pos)

    @cached_property
    def listings(self) -> tuple[tuple[int, ...], ...]:
        """Every order as a listing of the elements, including the first."""
        return (tuple(range(1, self.size + 1)),) + self.words

    @property
    def elements(self) -> range:
        return range(1, self.size + 1)

    def __contains__(self, x) -> bool:
        return isinstance(x, int) and 1 <= x <= self.size

    def __len__(self) -> int:
        return self.size

    def __str__(self) -> str:
        return encode(self)

    def __repr__(self) -> str:
        return f"OrderedStructure({encode(self)!r}, n={self.order_count})"

    def less(self, k: int, x: int, y: int) -> bool:
        """True iff x precedes y in order k."""
        p = self.positions[k]
        return p[x] < p[y]

    def check_element(self, x: int) -> None:
        if x not in self:
            raise DomainError(f"{x!r} is not an element of {self}")


def empty(order_count: int = 2) -> OrderedStructure:
    return OrderedStructure(0, order_count, ((),) * (order_count - 1))


def from_words(*words: Sequence[int] | str, order_count: int | None = None) -> OrderedStructure:
    """Build a structure from one-line words (strings of digits or int sequences)."""
    ws = tuple(tuple(int(c) for c in w) for w in words)
    n = order_count if order_count is not None else len(ws) + 1
    size = len(ws[0]) if ws else 0
    return OrderedStructure(size, n, ws)


def identity(size: int, order_count: int = 2) -> OrderedStructure:
    ident = tuple(range(1, size + 1))
    return OrderedStructure(size, order_count, (ident,) * (order_count - 1))


# -- text encoding ---------------------------------------------------------

def encode(X: OrderedStructure) -> str:
    """Text form: "3142" for n=2, "312;231" for n=3, "-" for the empty structure.

    For n=1 the (implicit) first order is written out.  Sizes above 9 use the
    length-prefixed form "12:3,1,...;...".
    """
    if X.size == 0:
        return "-"
    words = X.words if X.order_count > 1 else (tuple(X.elements),)
    if X.size > 9:
        return f"{X.size}:" + ";".join(",".join(map(str, w)) for w in words)
    return ";".join("".join(map(str, w)) for w in words)


def parse(text: str, order_count: int = 2) -> OrderedStructure:
    text = text.strip()
    if text in ("-", ""):
        return empty(order_count)
    try:
        if ":" in text:
            size_s, body = text.split(":", 1)
            words = tuple(tuple(int(t) for t in part.split(",")) for part in body.split(";"))
            if any(len(w) != int(size_s) for w in words):
                raise MalformedInput(f"length prefix disagrees with words in {text!r}")
        else:
            words = tuple(tuple(int(c) for c in part) for part in text.split(";"))
    except ValueError as exc:
        if isinstance(exc, MalformedInput):
            raise
        raise MalformedInput(f"cannot read {text!r} as a structure") from None
    if order_count == 1:
        if len(words) != 1 or words[0] != tuple(range(1, len(words[0]) + 1)):
            raise MalformedInput(f"{text!r} is not a single-order structure")
        return OrderedStructure(len(words[0]), 1, ())
    if len(words) != order_count - 1:
        raise MalformedInput(f"{text!r} has {len(words)} words, expected {order_count - 1}")
    return OrderedStructure(len(words[0]), order_count, words)


# -- normalization -----------------------------------------------------------

def _as_listing(order, elements: set) -> list:
    """Turn one order (a listing, or a set of (smaller, larger) pairs) into a listing."""
    if isinstance(order, (set, frozenset)):
        pairs = set(order)
        for a, b in pairs:
            if a not in elements or b not in elements:
                raise MalformedInput(f"pair {(a, b)!r} mentions unknown element")
            if a == b or (b, a) in pairs:
                raise MalformedInput(f"order is not antisymmetric at {(a, b)!r}")
        below = {e: sum(1 for (a, b) in pairs if b == e) for e in elements}
        listing = sorted(elements, key=lambda e: below[e])
        for i, a in enumerate(listing):
            for b in listing[i + 1:]:
                if (a, b) not in pairs:
                    raise MalformedInput(f"order is not total/transitive at {(a, b)!r}")
        return listing
    listing = list(order)
    if len(listing) != len(elements) or set(listing) != elements:
        raise MalformedInput("orders do not list the same element set")
    return listing


def normalize_with_labels(orders: Sequence) -> tuple[OrderedStructure, dict]:
    """Canonicalize abstract order data; also return the relabeling used.

    ``orders`` is a sequence of n orders on a common element set, each given as
    a listing (smallest first) or as a set of ``(a, b)`` pairs meaning a < b.
    """
    if not orders:
        raise MalformedInput("need at least one order")
    first = orders[0]
    if isinstance(first, (set, frozenset)):
        elements = {e for pair in first for e in pair}
    else:
        elements = set(first)
    if len(orders) > 1 and not elements:
        other = orders[1]
        elements = set(e for pair in other for e in pair) if isinstance(other, (set, frozenset)) else set(other)
    listings = [_as_listing(o, elements) for o in orders]
    label = {e: r for r, e in enumerate(listings[0], start=1)}
    words = tuple(tuple(label[e] for e in lst) for lst in listings[1:])
    return OrderedStructure(len(elements), len(orders), words), label


def normalize(orders: Sequence) -> OrderedStructure:
    return normalize_with_labels(orders)[0]


def induced(X: OrderedStructure, keep: Iterable[int]) -> tuple[OrderedStructure, dict[int, int]]:
    """Induced substructure on ``keep`` plus the map old label -> new label."""
    keep = sorted(set(keep))
    for e in keep:
        X.check_element(e)
    label = {e: r for r, e in enumerate(keep, start=1)}
    words = tuple(tuple(label[e] for e in w if e in label) for w in X.words)
    return OrderedStructure(len(keep), X.order_count, words), label


def delete(X: OrderedStructure, S: Iterable[int]) -> OrderedStructure:
    S = set(S)
    for e in S:
        X.check_element(e)
    return induced(X, (e for e in X.elements if e not in S))[0]


# -- embeddings ---------------------------------------------------------------

@dataclass(frozen=True)
class Embedding:
    """An order-preserving injection; ``map[i-1]`` is the image of element i."""

    source: OrderedStructure
    target: OrderedStructure
    map: tuple[int, ...]

    def __post_init__(self):
        if len(self.map) != self.source.size:
            raise MalformedInput("embedding map has the wrong length")
        if len(set(self.map)) != len(self.map) or any(e not in self.target for e in self.map):
            raise MalformedInput("embedding map is not an injection into the target")
        sub, label = induced(self.target, self.map)
        if sub != self.source or any(label[self.map[i]] != i + 1 for i in range(self.source.size)):
            raise MalformedInput("map does not preserve the orders")

    @property
    def image(self) -> tuple[int, ...]:
        return self.map

    def __call__(self, x: int) -> int:
        return self.map[x - 1]

    def then(self, other: "Embedding") -> "Embedding":
        """Composite other ∘ self."""
        if other.source != self.target:
            raise DomainError("embeddings are not composable")
        return Embedding(self.source, other.target, tuple(other(e) for e in self.map))

    def is_isomorphism(self) -> bool:
        return self.source.size == self.target.size


def inclusion(X: OrderedStructure, image: Iterable[int]) -> Embedding:
    """The embedding of the induced substructure on ``image`` into X."""
    image = tuple(sorted(set(image)))
    sub, _ = induced(X, image)
    return Embedding(sub, X, image)


def embeddings(Y: OrderedStructure, X: OrderedStructure) -> list[Embedding]:
    """All embeddings Y -> X, ordered lexicographically by image."""
    if Y.order_count != X.order_count:
        return []
    out = []
    # the first order is preserved, so an embedding is fixed by its image set
    for image in itertools.combinations(X.elements, Y.size):
        if induced(X, image)[0] == Y:
            out.append(Embedding(Y, X, image))
    return out


def embeds(Y: OrderedStructure, X: OrderedStructure) -> bool:
    if Y.order_count != X.order_count or Y.size > X.size:
        return False
    return any(induced(X, image)[0] == Y for image in itertools.combinations(X.elements, Y.size))


# -- adjacency ------------------------------------------------------------------

def adjacent_in(X: OrderedStructure, k: int, x: int, y: int) -> bool:
    p = X.positions[k]
    return abs(p[x] - p[y]) == 1


def order_neighbors(X: OrderedStructure, k: int, x: int) -> tuple[int, ...]:
    """Immediate predecessor/successor of x in order k."""
    lst = X.listings[k]
    r = X.positions[k][x] - 1
    return tuple(lst[i] for i in (r - 1, r + 1) if 0 <= i < X.size)


def neighbors(X: OrderedStructure, x: int) -> dict[int, tuple[bool, ...]]:
    """Each neighbor of x mapped to per-order adjacency flags."""
    X.check_element(x)
    out: dict[int, list[bool]] = {}
    for k in range(X.order_count):
        for y in order_neighbors(X, k, x):
            out.setdefault(y, [False] * X.order_count)[k] = True
    return {y: tuple(flags) for y, flags in sorted(out.items())}


def neighbor_set(X: OrderedStructure, x: int) -> set[int]:
    s = set()
    for k in range(X.order_count):
        s.update(order_neighbors(X, k, x))
    return s


# -- patterns and enumeration ---------------------------------------------------

def avoids(X: OrderedStructure, patterns: Iterable[OrderedStructure]) -> bool:
    return not any(embeds(P, X) for P in patterns)


def enumerate_structures(size: int, order_count: int) -> Iterator[OrderedStructure]:
    """Every isomorphism class of the given size once, lexicographic in the words."""
    perms = list(itertools.permutations(range(1, size + 1)))
    for words in itertools.product(perms, repeat=order_count - 1):
        yield OrderedStructure(size, order_count, words)
