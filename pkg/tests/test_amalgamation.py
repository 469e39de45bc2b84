import itertools
from collections import Counter

import pytest

from theta.amalgamation import (
    UnsupportedSize,
    are_separated,
    enumerate_amalgamations,
    one_point_amalgamations,
)
from theta.equations import insert_point
from theta.marked import MarkedStructure, decode_marked, parse_marked
from theta.structures import (
    DomainError,
    empty,
    enumerate_structures,
    identity,
    induced,
    inclusion,
    neighbor_set,
    parse,
)


def test_four_amalgams_when_adjacent_in_both_orders(p2):
    X, solid, hollow = decode_marked("[1](2)")
    r = one_point_amalgamations(X, solid[0], hollow[0])
    assert r.delta == 1
    # binary order over the flipped orders: none, first, second, both
    assert [str(m) for m in r.proper] == ["[1]2", "[2]1", "2[1]", "1[2]"]
    assert sorted(p2.table.to_generator(m) for m in r.proper) == [2, 3, 4, 5]
    assert Counter(m.structure for m in r.proper) == Counter({parse("12"): 2, parse("21"): 2})


def test_two_amalgams_reduce_to_the_same_class(p2):
    X, solid, hollow = decode_marked("1(2)45[3]")
    r = one_point_amalgamations(X, solid[0], hollow[0])
    assert len(r.proper) == 2 and r.delta == 0
    assert [p2.table.to_generator(m) for m in r.proper] == [23, 23]


def test_non_neighbors_give_only_the_structure_itself():
    X, solid, hollow = decode_marked("[1]2(3)")
    r = one_point_amalgamations(X, solid[0], hollow[0])
    assert r.proper == (MarkedStructure(X, 1),) and r.delta == 0


def test_same_point_is_a_domain_error():
    with pytest.raises(DomainError):
        one_point_amalgamations(parse("12"), 1, 1)
    with pytest.raises(DomainError):
        are_separated(parse("12"), 2, 2)


def test_are_separated_examples():
    assert are_separated(parse("153264"), 3, 6)
    assert not are_separated(parse("12"), 1, 2)
    assert not are_separated(parse("21"), 1, 2)
    # in 1342 the points 1 and 3 are adjacent in the second order; in 12453
    # (1245 with 3 appended) they are not adjacent in either
    assert not are_separated(parse("1342"), 1, 3)
    assert are_separated(parse("12453"), 1, 3)


def test_separated_iff_not_neighbors():
    for size in range(2, 6):
        for X in enumerate_structures(size, 2):
            for x, y in itertools.permutations(X.elements, 2):
                r = one_point_amalgamations(X, x, y)
                assert are_separated(X, x, y) == (y not in neighbor_set(X, x))
                adj = sum(1 for k in range(2) if abs(X.positions[k][x] - X.positions[k][y]) == 1)
                assert len(r.proper) == 2 ** adj
                assert r.delta == (adj == 2)


def test_separation_is_stable():
    # separated points stay separated in every one-point extension
    for size in range(2, 5):
        for X in enumerate_structures(size, 2):
            for x, y in itertools.combinations(X.elements, 2):
                if not are_separated(X, x, y):
                    continue
                for ranks in itertools.product(range(size + 1), repeat=2):
                    Z, relabel, _ = insert_point(X, ranks)
                    assert are_separated(Z, relabel[x], relabel[y])


def test_general_enumerator_agrees_with_one_point_case():
    for size in range(2, 6):
        for X in enumerate_structures(size, 2):
            for a, b in itertools.permutations(X.elements, 2):
                rest = [e for e in X.elements if e not in (a, b)]
                Xb, lb = induced(X, rest + [a])  # X \ b, still holding a
                Xa, la = induced(X, rest + [b])  # X \ a, still holding b
                i = inclusion(Xb, [lb[e] for e in rest])
                j = inclusion(Xa, [la[e] for e in rest])
                triples = enumerate_amalgamations(i, j)
                proper = [t for t in triples if t.total.size == size]
                improper = [t for t in triples if t.total.size == size - 1]
                r = one_point_amalgamations(X, a, b)
                assert len(improper) == r.delta
                # mark the image of a in each proper amalgam
                marked = Counter(MarkedStructure(t.total, t.into_from_X(lb[a])) for t in proper)
                assert marked == Counter(r.proper)


def test_trivial_spans():
    X = parse("3142")
    ident = inclusion(X, X.elements)
    # Y = X = Y': the only amalgamation is X itself
    assert len(enumerate_amalgamations(ident, ident)) == 1
    # Y = X: amalgamations are Y' with the given embedding
    j = inclusion(parse("31542"), [1, 2, 4, 5])
    j = inclusion(j.target, j.map)
    i = inclusion(j.source, j.source.elements)
    triples = enumerate_amalgamations(i, j)
    assert len(triples) == 1 and triples[0].total == j.target


def test_two_points_over_empty():
    # one identified amalgam plus four distinct size-2 triples ("12" and "21",
    # each with either point coming from X)
    one = parse("1")
    e = inclusion(one, [])
    triples = enumerate_amalgamations(e, e)
    assert len(triples) == 5
    assert Counter(t.total.size for t in triples) == {1: 1, 2: 4}
    assert {t.total for t in triples if t.total.size == 2} == {parse("12"), parse("21")}


def test_amalgamations_are_jointly_surjective_and_agree():
    X = parse("231")
    Yp = parse("2143")
    i = inclusion(X, [1, 3])
    j = next(inclusion(Yp, img) for img in itertools.combinations(Yp.elements, 2)
             if induced(Yp, img)[0] == i.source)
    for t in enumerate_amalgamations(i, j):
        assert set(t.into_from_X.map) | set(t.into_from_Yprime.map) == set(t.total.elements)
        for y in i.source.elements:
            assert t.into_from_X(i(y)) == t.into_from_Yprime(j(y))


def test_budget():
    big = identity(5)
    e = inclusion(big, [])
    with pytest.raises(UnsupportedSize):
        enumerate_amalgamations(e, e)


def test_mismatched_sources():
    with pytest.raises(DomainError):
        enumerate_amalgamations(inclusion(parse("12"), [1]), inclusion(parse("12"), []))


def test_empty_span():
    e = inclusion(empty(2), [])
    assert [t.total for t in enumerate_amalgamations(e, e)] == [empty(2)]


def brute_amalgamations(i, j):
    """All (Z, i', j') with i' o j = j' o i and jointly surjective, over every candidate Z."""
    from theta.structures import embeddings

    X, Yp, Y = i.target, j.target, i.source
    out = set()
    for size in range(max(X.size, Yp.size), X.size + Yp.size - Y.size + 1):
        for Z in enumerate_structures(size, 2):
            for ip in embeddings(Yp, Z):
                for jp in embeddings(X, Z):
                    if set(ip.map) | set(jp.map) != set(Z.elements):
                        continue
                    if all(ip(j(y)) == jp(i(y)) for y in Y.elements):
                        out.add((Z, ip.map, jp.map))
    return out


def test_general_enumerator_matches_brute_force():
    spans = []
    for X in list(enumerate_structures(2, 2)) + list(enumerate_structures(3, 2)):
        for Yp in enumerate_structures(2, 2):
            for r in range(0, 2):
                for A in itertools.combinations(X.elements, r):
                    for B in itertools.combinations(Yp.elements, r):
                        i, j = inclusion(X, A), inclusion(Yp, B)
                        if i.source == j.source:
                            spans.append((i, j))
    assert len(spans) > 50
    for i, j in spans:
        got = enumerate_amalgamations(i, j)
        keys = {(t.total, t.into_from_Yprime.map, t.into_from_X.map) for t in got}
        assert len(keys) == len(got)
        assert keys == brute_amalgamations(i, j)
