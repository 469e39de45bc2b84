"""Marked structures, neighborhoods and minimal marked structures.

A marked structure (X, x) is minimal when every other element of X is a
neighbor of x.  The neighborhood map sends any marked structure to the unique
minimal one equivalent to it, so the minimal marked structures index the
generators of the presentation ring.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from typing import Iterable, Iterator

from .structures import (
    DomainError,
    MalformedInput,
    OrderedStructure,
    encode,
    induced,
    neighbor_set,
    parse,
)


class ConsistencyError(RuntimeError):
    """Internal data disagrees with what the enumeration produced."""


@dataclass(frozen=True, order=True)
class MarkedStructure:
    structure: OrderedStructure
    mark: int

    def __post_init__(self):
        self.structure.check_element(self.mark)

    @property
    def size(self) -> int:
        return self.structure.size

    @property
    def order_count(self) -> int:
        return self.structure.order_count

    def sort_key(self):
        return (self.structure.size, self.structure.words, self.mark)

    def __str__(self) -> str:
        return encode_marked(self.structure, {self.mark: "[]"})

    def __repr__(self) -> str:
        return f"MarkedStructure({str(self)!r})"

    def to_json(self) -> dict:
        return {"word": encode(self.structure), "mark": self.mark}


def encode_marked(X: OrderedStructure, brackets: dict[int, str]) -> str:
    """Encode X with the given elements wrapped, e.g. {2: "[]"} -> "13[2]4".

    Brackets go on the first word (for n=1, on the written-out first order).
    """
    if X.size == 0:
        return "-"
    first = X.words[0] if X.order_count > 1 else tuple(X.elements)
    rest = X.words[1:] if X.order_count > 1 else ()
    sep = "," if X.size > 9 else ""

    def tok(e):
        b = brackets.get(e)
        return f"{b[0]}{e}{b[1]}" if b else str(e)

    text = sep.join(tok(e) for e in first)
    if rest:
        text += ";" + ";".join(sep.join(map(str, w)) for w in rest)
    if X.size > 9:
        text = f"{X.size}:" + text
    return text


_TOKEN = re.compile(r"\[(\d+)\]|\((\d+)\)|(\d)")


def decode_marked(text: str, order_count: int = 2) -> tuple[OrderedStructure, list[int], list[int]]:
    """Parse a bracketed word; returns (X, solid marks in "[ ]", hollow marks in "( )")."""
    text = text.strip()
    prefix = ""
    if ":" in text:
        prefix, text = text.split(":", 1)
    first, *rest = text.split(";")
    solid, hollow, digits = [], [], []
    if prefix:
        for tok in first.split(","):
            m = re.fullmatch(r"\[(\d+)\]|\((\d+)\)|(\d+)", tok)
            if not m:
                raise MalformedInput(f"bad token {tok!r} in {text!r}")
            _collect(m, solid, hollow, digits)
    else:
        pos = 0
        for m in _TOKEN.finditer(first):
            if m.start() != pos:
                raise MalformedInput(f"unparseable marked word {text!r}")
            pos = m.end()
            _collect(m, solid, hollow, digits)
        if pos != len(first):
            raise MalformedInput(f"unparseable marked word {text!r}")
    if prefix:
        plain = f"{prefix}:" + ",".join(map(str, digits)) + "".join(";" + r for r in rest)
    else:
        plain = "".join(map(str, digits)) + "".join(";" + r for r in rest)
    X = parse(plain, order_count)
    return X, solid, hollow


def _collect(m, solid, hollow, digits):
    if m.group(1):
        e = int(m.group(1))
        solid.append(e)
    elif m.group(2):
        e = int(m.group(2))
        hollow.append(e)
    else:
        e = int(m.group(3))
    digits.append(e)


def parse_marked(text: str, order_count: int = 2) -> MarkedStructure:
    X, solid, hollow = decode_marked(text, order_count)
    if len(solid) != 1 or hollow:
        raise MalformedInput(f"{text!r} must carry exactly one [mark]")
    return MarkedStructure(X, solid[0])


def is_minimal(m: MarkedStructure) -> bool:
    return len(neighbor_set(m.structure, m.mark)) == m.size - 1


def neighborhood(X: OrderedStructure, x: int) -> MarkedStructure:
    """The induced structure on x and its neighbors, marked at x."""
    X.check_element(x)
    sub, label = induced(X, neighbor_set(X, x) | {x})
    return MarkedStructure(sub, label[x])


def reduce_marked(m: MarkedStructure) -> MarkedStructure:
    return neighborhood(m.structure, m.mark)


# -- enumeration ------------------------------------------------------------------

def _cover_orders(size: int, mark: int, order_count: int) -> Iterator[tuple[tuple[int, ...], ...]]:
    """Words w_2..w_n making every element a neighbor of ``mark`` in some order."""
    elements = tuple(range(1, size + 1))
    covered0 = {e for e in (mark - 1, mark + 1) if 1 <= e <= size}
    todo0 = frozenset(elements) - covered0 - {mark}

    def last_word(todo):
        todo = sorted(todo)
        others = [e for e in elements if e != mark and e not in todo]
        if len(todo) == 0:
            yield from itertools.permutations(elements)
            return
        if len(todo) == 1:
            blocks = ((todo[0], mark), (mark, todo[0]))
        else:
            blocks = ((todo[0], mark, todo[1]), (todo[1], mark, todo[0]))
        for block in blocks:
            for arrangement in itertools.permutations(others + [None]):
                w = []
                for e in arrangement:
                    if e is None:
                        w.extend(block)
                    else:
                        w.append(e)
                yield tuple(w)

    def rec(todo, remaining):
        if len(todo) > 2 * remaining:
            return
        if remaining == 1:
            for w in last_word(todo):
                yield (w,)
            return
        for w in itertools.permutations(elements):
            r = w.index(mark)
            nb = {w[i] for i in (r - 1, r + 1) if 0 <= i < size}
            for tail in rec(todo - nb, remaining - 1):
                yield (w,) + tail

    if order_count == 1:
        if not todo0:
            yield ()
        return
    yield from rec(todo0, order_count - 1)


def iter_minimal(order_count: int, sizes: Iterable[int] | None = None) -> Iterator[MarkedStructure]:
    """Stream every minimal marked structure with ``order_count`` orders.

    Candidates are generated directly in canonical form (first order fixed,
    mark plus covering words), so each isomorphism class appears exactly once.
    Output is grouped by size, then mark; use :func:`enumerate_minimal` for the
    sorted list.
    """
    if order_count < 1:
        raise DomainError("order_count must be >= 1")
    if sizes is None:
        sizes = range(1, 2 * order_count + 2)
    for size in sizes:
        for mark in range(1, size + 1):
            for words in _cover_orders(size, mark, order_count):
                yield MarkedStructure(OrderedStructure(size, order_count, words), mark)


def iter_minimal_raw(order_count: int, size: int, mark: int) -> Iterator[tuple[tuple[int, ...], ...]]:
    """Like :func:`iter_minimal` for one (size, mark) cell, yielding bare word tuples."""
    return _cover_orders(size, mark, order_count)


def enumerate_minimal(order_count: int) -> list[MarkedStructure]:
    """All minimal marked structures, sorted by (size, words, mark)."""
    return sorted(iter_minimal(order_count), key=MarkedStructure.sort_key)


# -- generator tables -------------------------------------------------------------

class GeneratorTable:
    """Bijection between generator indices 1..N and minimal marked structures."""

    def __init__(self, structures: Iterable[MarkedStructure]):
        self.structures = list(structures)
        self.index = {m: i for i, m in enumerate(self.structures, start=1)}
        if len(self.index) != len(self.structures):
            raise ConsistencyError("duplicate marked structure in generator table")
        for m in self.structures:
            if not is_minimal(m):
                raise ConsistencyError(f"{m} is not minimal")
        ns = {m.order_count for m in self.structures}
        if len(ns) > 1:
            raise ConsistencyError("mixed order counts in generator table")
        self.order_count = ns.pop() if ns else None

    def __len__(self) -> int:
        return len(self.structures)

    def __getitem__(self, i: int) -> MarkedStructure:
        if not 1 <= i <= len(self.structures):
            raise DomainError(f"no generator x{i}")
        return self.structures[i - 1]

    def to_generator(self, m: MarkedStructure) -> int:
        """Index of the minimal class of ``m``."""
        r = reduce_marked(m)
        try:
            return self.index[r]
        except KeyError:
            raise ConsistencyError(f"{m} reduces to {r}, which is not in the table") from None

    def of(self, X: OrderedStructure, x: int) -> int:
        """Index of the generator for the one-point extension X \\ x -> X."""
        return self.to_generator(MarkedStructure(X, x))

    @classmethod
    def enumerated(cls, order_count: int) -> "GeneratorTable":
        return cls(enumerate_minimal(order_count))
