"""Exact linear algebra over Z/p**N.

Z/p**N is a local ring, so a matrix can be brought to the diagonal form
diag(p**v0, p**v1, ...) by invertible row and column operations alone,
provided pivots are always chosen with minimal p-adic valuation.  The
resulting factorization P*A*C = D decides solvability of A*x = b exactly
and exposes kernel vectors and pivot valuations, which is everything the
membership and independence probes need.
"""

from __future__ import annotations

from dataclasses import dataclass

from .padic import valuation_of


def _identity(n: int) -> list[list[int]]:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


@dataclass
class Diagonalization:
    """Factorization P*A*C = diag(p**v) over Z/p**N with unimodular P, C."""

    p: int
    N: int
    rows: int
    cols: int
    pivot_valuations: list[int]
    row_ops: list[list[int]]
    col_ops: list[list[int]]

    @property
    def rank(self) -> int:
        return len(self.pivot_valuations)

    def solve(self, b: list[int]) -> list[int] | None:
        """A solution x of A*x = b mod p**N, or None if none exists."""
        mod = self.p**self.N
        bp = [sum(self.row_ops[i][j] * b[j] for j in range(self.rows)) % mod
              for i in range(self.rows)]
        y = [0] * self.cols
        for i in range(self.rows):
            if i < self.rank:
                pv = self.p ** self.pivot_valuations[i]
                if bp[i] % pv:
                    return None
                y[i] = bp[i] // pv
            elif bp[i] % mod:
                return None
        return [sum(self.col_ops[i][j] * y[j] for j in range(self.cols)) % mod
                for i in range(self.cols)]

    def kernel_vector(self, j: int) -> list[int]:
        """Exact kernel element from column j of the factorization.

        For j >= rank the column of C itself lies in the kernel; for a
        pivot column the p**(N - v_j) multiple does.
        """
        mod = self.p**self.N
        scale = 1
        if j < self.rank:
            scale = self.p ** (self.N - self.pivot_valuations[j])
        return [(self.col_ops[i][j] * scale) % mod for i in range(self.cols)]


def diagonalize(matrix: list[list[int]], p: int, N: int) -> Diagonalization:
    """Reduce an integer matrix to diagonal form over Z/p**N."""
    mod = p**N
    m = len(matrix)
    t = len(matrix[0]) if m else 0
    d = [[x % mod for x in row] for row in matrix]
    pmat = _identity(m)
    cmat = _identity(t)
    pivots: list[int] = []
    k = 0
    while k < min(m, t):
        best = None
        best_val = N
        for i in range(k, m):
            for j in range(k, t):
                if d[i][j]:
                    v = valuation_of(d[i][j], p, N)
                    if v < best_val:
                        best, best_val = (i, j), v
        if best is None:
            break
        r, c = best
        if r != k:
            d[r], d[k] = d[k], d[r]
            pmat[r], pmat[k] = pmat[k], pmat[r]
        if c != k:
            for row in d:
                row[c], row[k] = row[k], row[c]
            for row in cmat:
                row[c], row[k] = row[k], row[c]
        v = best_val
        pv = p**v
        unit = d[k][k] // pv
        inv = pow(unit % mod, -1, mod)
        d[k] = [(x * inv) % mod for x in d[k]]
        pmat[k] = [(x * inv) % mod for x in pmat[k]]
        for i in range(k + 1, m):
            if d[i][k]:
                f = d[i][k] // pv
                d[i] = [(a - f * b) % mod for a, b in zip(d[i], d[k])]
                pmat[i] = [(a - f * b) % mod for a, b in zip(pmat[i], pmat[k])]
        for j in range(k + 1, t):
            if d[k][j]:
                g = d[k][j] // pv
                for row in d:
                    row[j] = (row[j] - g * row[k]) % mod
                for row in cmat:
                    row[j] = (row[j] - g * row[k]) % mod
        pivots.append(v)
        k += 1
    return Diagonalization(p, N, m, t, pivots, pmat, cmat)


def solve_mod_pn(matrix: list[list[int]], b: list[int], p: int, N: int) -> list[int] | None:
    """Solve A*x = b over Z/p**N; None means definitively unsolvable."""
    return diagonalize(matrix, p, N).solve(b)
