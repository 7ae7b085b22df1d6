import itertools
import random

from nilcap.lattice import hermite_rows, index, integer_kernel, kernel_mod, preimage


def in_span(v, basis):
    """Brute-force membership for small lattices via the echelon basis."""
    v = list(v)
    for row in basis:
        col = next(c for c, a in enumerate(row) if a)
        if v[col] % row[col]:
            return False
        q = v[col] // row[col]
        v = [a - q * b for a, b in zip(v, row)]
    return not any(v)


def test_hermite_spans_same_lattice():
    rng = random.Random(1)
    for _ in range(50):
        rows = [[rng.randint(-6, 6) for _ in range(4)] for _ in range(rng.randint(1, 5))]
        h = hermite_rows(rows, 4)
        for r in rows:
            assert in_span(r, h)
        for r in h:
            assert in_span(r, hermite_rows(rows + [r], 4))


def test_integer_kernel():
    rng = random.Random(2)
    for _ in range(50):
        m = [[rng.randint(-4, 4) for _ in range(5)] for _ in range(2)]
        ker = integer_kernel(m, 5)
        for v in ker:
            assert all(sum(a * b for a, b in zip(row, v)) == 0 for row in m)
        # Completeness on a box: every small kernel vector lies in the span.
        h = hermite_rows(ker, 5)
        for v in itertools.product(range(-1, 2), repeat=5):
            if all(sum(a * b for a, b in zip(row, v)) == 0 for row in m):
                assert in_span(v, h) if h else not any(v)


def test_kernel_mod_brute_force():
    vectors = [[1, 2], [2, 0], [0, 3]]
    moduli = [4, 6]
    ker = kernel_mod(vectors, moduli)
    for e in itertools.product(range(12), repeat=3):
        hit = all(sum(e[t] * vectors[t][c] for t in range(3)) % moduli[c] == 0 for c in range(2))
        assert hit == in_span(e, ker)


def test_preimage():
    images = [[2, 0], [0, 3], [1, 1]]
    lattice = [[4, 0], [0, 6]]
    pre = preimage(images, lattice)
    for f in itertools.product(range(-3, 4), repeat=3):
        v = [sum(f[t] * images[t][c] for t in range(3)) for c in range(2)]
        assert in_span(v, lattice) == in_span(f, pre)


def test_index():
    assert index([[2, 0], [0, 3]], 2) == 6
    assert index([[2, 1], [0, 3]], 2) == 6
    assert index([[1, 0, 0], [0, 1, 0], [0, 0, 5]], 3) == 5
