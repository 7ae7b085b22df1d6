"""Magnus embedding of the free nilpotent group into truncated power series.

``x_i -> 1 + X_i`` in ``Z<<X_1..X_r>>`` modulo terms of degree > k is
faithful on the free nilpotent group of class ``k``, so it gives exact group
arithmetic that is independent of any collection procedure.  A series is a
list of homogeneous components; component ``d`` is an integer array of length
``r**d`` indexed by the monomial read as a base-``r`` number.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from .basiccomm import CommutatorTree, Leaf, enumerate_basic


class MagnusAlgebra:
    def __init__(self, r: int, k: int):
        self.r, self.k = r, k

    def one(self) -> list:
        return [np.array([1], dtype=object)] + [
            np.zeros(self.r**d, dtype=object) for d in range(1, self.k + 1)
        ]

    def generator(self, i: int) -> list:
        s = self.one()
        if self.k >= 1:
            s[1][i - 1] = 1
        return s

    def mul(self, a: list, b: list) -> list:
        out = []
        for d in range(self.k + 1):
            acc = np.zeros(self.r**d, dtype=object)
            for da in range(d + 1):
                ca, cb = a[da], b[d - da]
                if not ca.any() or not cb.any():
                    continue
                acc = acc + np.multiply.outer(ca, cb).ravel()
            out.append(acc)
        return out

    def inv(self, a: list) -> list:
        # (1 + N)^-1 = sum (-N)^m, truncated.
        n = [np.zeros(1, dtype=object)] + [c.copy() for c in a[1:]]
        neg = [-c for c in n]
        result, term = self.one(), self.one()
        for _ in range(self.k):
            term = self.mul(term, neg)
            result = [x + y for x, y in zip(result, term)]
        return result

    def pow(self, a: list, n: int) -> list:
        if n < 0:
            a, n = self.inv(a), -n
        result = self.one()
        while n:
            if n & 1:
                result = self.mul(result, a)
            a = self.mul(a, a)
            n >>= 1
        return result

    def comm(self, a: list, b: list) -> list:
        return self.mul(self.mul(self.inv(a), self.inv(b)), self.mul(a, b))

    def equal(self, a: list, b: list) -> bool:
        return all(np.array_equal(x, y) for x, y in zip(a, b))

    def image(self, t: CommutatorTree) -> list:
        if isinstance(t, Leaf):
            return self.generator(t.index)
        return self.comm(self.image(t.left), self.image(t.right))


def lie_lead(t: CommutatorTree, r: int) -> np.ndarray:
    """Lowest-degree component of the image of ``t`` (the Lie bracket of leads)."""
    if isinstance(t, Leaf):
        v = np.zeros(r, dtype=object)
        v[t.index - 1] = 1
        return v
    a, b = lie_lead(t.left, r), lie_lead(t.right, r)
    return np.multiply.outer(a, b).ravel() - np.multiply.outer(b, a).ravel()


class _LayerSolver:
    """Exact solver for ``L a = v`` where the columns of ``L`` are leads of one weight."""

    def __init__(self, columns: list[np.ndarray]):
        self.n = len(columns)
        self.columns = columns
        mat = np.array(columns, dtype=object).T if columns else np.zeros((0, 0), dtype=object)
        # Pick independent rows greedily with an echelon basis.
        echelon: list[tuple[int, list[Fraction]]] = []
        rows: list[int] = []
        for ri in range(mat.shape[0]):
            if len(rows) == self.n:
                break
            red = [Fraction(int(x)) for x in mat[ri]]
            for col, b in echelon:
                if red[col]:
                    f = red[col] / b[col]
                    red = [x - f * y for x, y in zip(red, b)]
            nz = next((c for c, x in enumerate(red) if x), None)
            if nz is not None:
                echelon.append((nz, red))
                rows.append(ri)
        if len(rows) != self.n:
            raise ArithmeticError("leading terms are not linearly independent")
        self.pivots = rows
        self.inverse = _invert([[Fraction(int(x)) for x in mat[ri]] for ri in rows])

    def solve(self, v: np.ndarray) -> list[int]:
        rhs = [Fraction(int(v[ri])) for ri in self.pivots]
        sol = [sum(row[j] * rhs[j] for j in range(self.n)) for row in self.inverse]
        out = []
        for x in sol:
            if x.denominator != 1:
                raise ArithmeticError("non-integral coordinates")
            out.append(int(x))
        check = np.zeros(len(v), dtype=object)
        for a, col in zip(out, self.columns):
            check = check + a * col
        if not np.array_equal(check, v):
            raise ArithmeticError("component is not in the span of the basic leads")
        return out


def _invert(m: list[list[Fraction]]) -> list[list[Fraction]]:
    n = len(m)
    aug = [list(row) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(m)]
    for c in range(n):
        p = next(i for i in range(c, n) if aug[i][c])
        aug[c], aug[p] = aug[p], aug[c]
        pv = aug[c][c]
        aug[c] = [x / pv for x in aug[c]]
        for i in range(n):
            if i != c and aug[i][c]:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[c])]
    return [row[n:] for row in aug]


class MagnusNormalizer:
    """Reads off basic-commutator normal forms from power series."""

    def __init__(self, r: int, k: int):
        self.alg = MagnusAlgebra(r, k)
        self.basis = enumerate_basic(r, k)
        self.r, self.k = r, k
        self._images: dict = {}
        self._solvers: dict[int, _LayerSolver] = {}

    def basis_image(self, idx: int) -> list:
        img = self._images.get(idx)
        if img is None:
            img = self._images[idx] = self.alg.image(self.basis[idx])
        return img

    def _solver(self, w: int) -> _LayerSolver:
        s = self._solvers.get(w)
        if s is None:
            cols = [lie_lead(c, self.r) for c in self.basis if c.weight == w]
            s = self._solvers[w] = _LayerSolver(cols)
        return s

    def element(self, exps) -> list:
        s = self.alg.one()
        for idx, e in enumerate(exps):
            if e:
                s = self.alg.mul(s, self.alg.pow(self.basis_image(idx), e))
        return s

    def normal_form(self, series: list, min_weight: int = 1) -> tuple[int, ...]:
        exps = [0] * len(self.basis)
        rem = series
        for w in range(min_weight, self.k + 1):
            idxs = [i for i, c in enumerate(self.basis) if c.weight == w]
            for d in range(1, w):
                if rem[d].any():
                    raise ArithmeticError("series has unexpected low-degree terms")
            if not rem[w].any():
                continue
            coords = self._solver(w).solve(rem[w])
            layer = self.alg.one()
            for idx, a in zip(idxs, coords):
                exps[idx] = a
                if a:
                    layer = self.alg.mul(layer, self.alg.pow(self.basis_image(idx), a))
            rem = self.alg.mul(self.alg.inv(layer), rem)
        if any(rem[d].any() for d in range(1, self.k + 1)):
            raise ArithmeticError("series did not reduce to 1")
        return tuple(exps)
