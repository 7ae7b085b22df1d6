import itertools
import json

import pytest

from nilcap.basiccomm import (
    Leaf,
    Node,
    basics_json,
    bracket,
    compare,
    enumerate_basic,
    format_tree,
    is_basic,
    two_generator_shape,
    witt_count,
)


def names(r, k):
    return [format_tree(c) for c in enumerate_basic(r, k)]


def test_enumerate_examples():
    assert names(2, 2) == ["x1", "x2", "[x2,x1]"]
    assert names(2, 3) == ["x1", "x2", "[x2,x1]", "[x2,x1,x1]", "[x2,x1,x2]"]
    assert names(2, 4) == names(2, 3) + ["[x2,x1,x1,x1]", "[x2,x1,x1,x2]", "[x2,x1,x2,x2]"]


def all_trees(r, w, cache={}):
    """Every bracketing of weight ``w`` (the unfiltered free magma)."""
    key = (r, w)
    if key not in cache:
        if w == 1:
            cache[key] = [Leaf(i) for i in range(1, r + 1)]
        else:
            out = []
            for a in range(1, w):
                for u in all_trees(r, a):
                    for v in all_trees(r, w - a):
                        out.append(Node(u, v))
            cache[key] = out
    return cache[key]


def test_enumeration_matches_brute_filter():
    # Oracle: filter every bracketing by the basic-commutator rules directly.
    for r in (2, 3):
        for k in range(1, 5):
            brute = {t for w in range(1, k + 1) for t in all_trees(r, w) if is_basic(t)}
            assert brute == set(enumerate_basic(r, k))


def test_witt_counts():
    for r in range(1, 5):
        for n in range(1, 7):
            got = sum(1 for c in enumerate_basic(r, n) if c.weight == n)
            assert got == witt_count(r, n)


def test_witt_known_values():
    assert witt_count(2, 4) == 3
    assert witt_count(2, 5) == 6
    assert witt_count(3, 3) == 8


def test_compare_examples():
    x1, x2 = Leaf(1), Leaf(2)
    c21 = Node(x2, x1)
    assert compare(x1, x2) < 0
    assert compare(c21, c21) == 0
    assert compare(bracket(x2, x1, x1), bracket(x2, x1, x2)) < 0
    with pytest.raises(ValueError):
        compare(Node(x1, x2), x1)


def test_enumeration_sorted_and_total_order():
    seq = enumerate_basic(3, 4)
    for a, b in zip(seq, seq[1:]):
        assert compare(a, b) < 0
    for a, b in itertools.combinations(seq[:30], 2):
        assert compare(a, b) == -compare(b, a)


def test_hash_consing():
    assert Node(Leaf(2), Leaf(1)) is Node(Leaf(2), Leaf(1))
    assert bracket(Leaf(2), Leaf(1), Leaf(1)) is Node(Node(Leaf(2), Leaf(1)), Leaf(1))


def test_two_generator_shape_examples():
    s = two_generator_shape(bracket(Leaf(2), Leaf(1), Leaf(1)))
    assert s.prefix == Leaf(1) and s.tail == ()
    s = two_generator_shape(bracket(Leaf(2), Leaf(1), Leaf(2)))
    assert s.prefix == Leaf(2) and s.tail == ()
    s = two_generator_shape(bracket(Leaf(2), Leaf(1), Leaf(1), Leaf(2)))
    assert s.prefix == Leaf(1) and s.tail == (Leaf(2),)


def test_two_generator_shape_round_trip():
    for c in enumerate_basic(2, 7):
        if c.weight < 3:
            continue
        s = two_generator_shape(c)
        rebuilt = bracket(Leaf(2), Leaf(1), s.prefix, *s.tail)
        assert rebuilt == c


def test_bounds():
    with pytest.raises(ValueError):
        enumerate_basic(17, 2)
    with pytest.raises(ValueError):
        enumerate_basic(2, 11)


def test_basics_json():
    rows = json.loads(basics_json(2, 2))
    assert rows == [
        {"index": 1, "weight": 1, "expr": "x1"},
        {"index": 2, "weight": 1, "expr": "x2"},
        {"index": 3, "weight": 2, "expr": "[x2,x1]"},
    ]
    assert basics_json(3, 3) == basics_json(3, 3)
