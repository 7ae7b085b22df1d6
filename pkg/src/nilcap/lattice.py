"""Small exact integer-lattice routines (Hermite form, integer kernels)."""

from __future__ import annotations

from typing import Sequence


def _ext_gcd(a: int, b: int) -> tuple[int, int, int]:
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


def hermite_rows(rows: Sequence[Sequence[int]], ncols: int) -> list[list[int]]:
    """Row Hermite normal form: a basis of the lattice spanned by ``rows``."""
    work = [list(r) for r in rows if any(r)]
    basis: list[list[int]] = []
    for col in range(ncols):
        pivot = None
        rest = []
        for row in work:
            if row[col] == 0:
                rest.append(row)
                continue
            if pivot is None:
                pivot = row
                continue
            g, s, t = _ext_gcd(pivot[col], row[col])
            u, v = pivot[col] // g, row[col] // g
            new_pivot = [s * a + t * b for a, b in zip(pivot, row)]
            other = [u * b - v * a for a, b in zip(pivot, row)]
            pivot = new_pivot
            if any(other):
                rest.append(other)
        work = rest
        if pivot is not None:
            if pivot[col] < 0:
                pivot = [-a for a in pivot]
            basis.append(pivot)
    # Reduce entries above the pivots.
    for i, row in enumerate(basis):
        col = next(c for c, a in enumerate(row) if a)
        for prev in basis[:i]:
            q = prev[col] // row[col]
            if q:
                for c in range(ncols):
                    prev[c] -= q * row[c]
    return basis


def integer_kernel(matrix: Sequence[Sequence[int]], ncols: int) -> list[list[int]]:
    """Basis of ``{x in Z^ncols : matrix @ x == 0}``."""
    cols = [[row[j] for row in matrix] + [int(i == j) for i in range(ncols)] for j in range(ncols)]
    m = len(matrix)
    start = 0
    for i in range(m):
        live = [c for c in range(start, ncols) if cols[c][i]]
        if not live:
            continue
        # Euclid on column entries of row i until one nonzero remains.
        while len(live) > 1:
            live.sort(key=lambda c: abs(cols[c][i]))
            p = live[0]
            for c in live[1:]:
                q = cols[c][i] // cols[p][i]
                cols[c] = [a - q * b for a, b in zip(cols[c], cols[p])]
            live = [c for c in live if cols[c][i]]
        p = live[0]
        cols[start], cols[p] = cols[p], cols[start]
        start += 1
    return [col[m:] for col in cols[start:]]


def kernel_mod(vectors: Sequence[Sequence[int]], moduli: Sequence[int]) -> list[list[int]]:
    """Basis of ``{e in Z^len(vectors) : sum e_t vectors[t] == 0 mod moduli}``."""
    m = len(vectors)
    rows = []
    for c, n in enumerate(moduli):
        row = [v[c] for v in vectors] + [0] * len(moduli)
        row[m + c] = n
        rows.append(row)
    ker = integer_kernel(rows, m + len(moduli))
    return hermite_rows([k[:m] for k in ker], m)


def preimage(images: Sequence[Sequence[int]], lattice: Sequence[Sequence[int]]) -> list[list[int]]:
    """Basis of ``{f : sum f_t images[t] in span(lattice)}``."""
    s = len(images)
    if s == 0:
        return []
    dim = len(images[0])
    rows = []
    for c in range(dim):
        rows.append([img[c] for img in images] + [-b[c] for b in lattice])
    ker = integer_kernel(rows, s + len(lattice))
    return hermite_rows([k[:s] for k in ker], s)


def index(basis: Sequence[Sequence[int]], dim: int) -> int:
    """``|Z^dim / L|`` for a full-rank lattice ``L`` spanned by ``basis``."""
    h = hermite_rows(basis, dim)
    if len(h) != dim:
        raise ArithmeticError("lattice is not of full rank")
    out = 1
    for i, row in enumerate(h):
        out *= row[i]
    return abs(out)
