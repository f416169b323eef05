"""Exact integer matrix algebra: Smith normal form and linear systems over Z and Z/n.

All arithmetic uses Python integers, so nothing overflows.  Matrices are small
(desk scale) and dense; clarity wins over speed here.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .errors import DimensionMismatch, InvalidInput


class IntMatrix:
    """An immutable ``rows x cols`` matrix of arbitrary-precision integers.

    Shapes with a zero dimension are allowed; ``cols`` must then be given
    explicitly when there are no rows.
    """

    __slots__ = ("rows", "cols", "data")

    def __init__(self, data: Iterable[Iterable[int]] = (), cols: Optional[int] = None):
        rows = tuple(tuple(int(x) for x in row) for row in data)
        if cols is None:
            if not rows:
                raise InvalidInput("cols is required for a matrix without rows")
            cols = len(rows[0])
        for row in rows:
            if len(row) != cols:
                raise DimensionMismatch("matrix rows must all have length %d" % cols)
        object.__setattr__(self, "rows", len(rows))
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "data", rows)

    def __setattr__(self, name, value):
        raise AttributeError("IntMatrix is immutable")

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMatrix":
        return cls([[0] * cols for _ in range(rows)], cols=cols)

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls([[int(i == j) for j in range(n)] for i in range(n)], cols=n)

    @classmethod
    def diagonal(cls, entries: Sequence[int], rows: Optional[int] = None,
                 cols: Optional[int] = None) -> "IntMatrix":
        rows = len(entries) if rows is None else rows
        cols = len(entries) if cols is None else cols
        out = [[0] * cols for _ in range(rows)]
        for i, d in enumerate(entries):
            out[i][i] = d
        return cls(out, cols=cols)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[int]], rows: int) -> "IntMatrix":
        for c in columns:
            if len(c) != rows:
                raise DimensionMismatch("column of length %d, expected %d" % (len(c), rows))
        return cls([[c[i] for c in columns] for i in range(rows)], cols=len(columns))

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.data[i][j]

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(row[j] for row in self.data)

    def columns(self) -> list[tuple[int, ...]]:
        return [self.column(j) for j in range(self.cols)]

    def tolist(self) -> list[list[int]]:
        return [list(row) for row in self.data]

    def transpose(self) -> "IntMatrix":
        return IntMatrix(self.columns(), cols=self.rows)

    def apply(self, vec: Sequence[int]) -> list[int]:
        if len(vec) != self.cols:
            raise DimensionMismatch("vector of length %d for %d columns" % (len(vec), self.cols))
        return [sum(a * x for a, x in zip(row, vec)) for row in self.data]

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise DimensionMismatch("cannot multiply %dx%d by %dx%d" % (*self.shape, *other.shape))
        ocols = other.columns()
        return IntMatrix(
            [[sum(a * b for a, b in zip(row, col)) for col in ocols] for row in self.data],
            cols=other.cols,
        )

    def hstack(self, *others: "IntMatrix") -> "IntMatrix":
        rows = [list(r) for r in self.data]
        cols = self.cols
        for o in others:
            if o.rows != self.rows:
                raise DimensionMismatch("hstack needs equal row counts")
            for r, orow in zip(rows, o.data):
                r.extend(orow)
            cols += o.cols
        return IntMatrix(rows, cols=cols)

    def det(self) -> int:
        if self.rows != self.cols:
            raise DimensionMismatch("determinant of a non-square matrix")
        return bareiss_det([list(r) for r in self.data])

    def __eq__(self, other):
        if not isinstance(other, IntMatrix):
            return NotImplemented
        return self.shape == other.shape and self.data == other.data

    def __hash__(self):
        return hash((self.rows, self.cols, self.data))

    def __repr__(self):
        return "IntMatrix(%r, cols=%d)" % (self.tolist(), self.cols)


def bareiss_det(a: list[list[int]]) -> int:
    """Fraction-free determinant; ``a`` is consumed."""
    n = len(a)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


@dataclass(frozen=True)
class SnfDecomposition:
    """``D = U @ A @ V`` with ``U``, ``V`` unimodular and ``D`` in Smith form.

    ``U_inv`` is carried along because presentations need both directions of
    the change of basis.
    """

    U: IntMatrix
    D: IntMatrix
    V: IntMatrix
    U_inv: IntMatrix

    @property
    def diagonal(self) -> list[int]:
        return [self.D[i, i] for i in range(min(self.D.rows, self.D.cols))]

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d)


def snf(A: IntMatrix) -> SnfDecomposition:
    """Smith normal form by elementary row/column operations.

    The pivot is always the entry of least absolute value in the remaining
    block, which keeps intermediate growth modest on small inputs.
    """
    m, n = A.rows, A.cols
    D = [list(r) for r in A.data]
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    Ui = [[int(i == j) for j in range(m)] for i in range(m)]
    V = [[int(i == j) for j in range(n)] for i in range(n)]

    def add_row(i, k, c):  # row_i += c * row_k
        Di, Dk = D[i], D[k]
        for j in range(n):
            Di[j] += c * Dk[j]
        Ui_, Uk = U[i], U[k]
        for j in range(m):
            Ui_[j] += c * Uk[j]
        for row in Ui:
            row[k] -= c * row[i]

    def swap_rows(a, b):
        D[a], D[b] = D[b], D[a]
        U[a], U[b] = U[b], U[a]
        for row in Ui:
            row[a], row[b] = row[b], row[a]

    def negate_row(i):
        D[i] = [-x for x in D[i]]
        U[i] = [-x for x in U[i]]
        for row in Ui:
            row[i] = -row[i]

    def add_col(j, k, c):  # col_j += c * col_k
        for row in D:
            row[j] += c * row[k]
        for row in V:
            row[j] += c * row[k]

    def swap_cols(a, b):
        for row in D:
            row[a], row[b] = row[b], row[a]
        for row in V:
            row[a], row[b] = row[b], row[a]

    for t in range(min(m, n)):
        best = None
        for i in range(t, m):
            for j in range(t, n):
                v = D[i][j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
        if best is None:
            break
        swap_rows(t, best[1])
        swap_cols(t, best[2])
        while True:
            p = D[t][t]
            for i in range(t + 1, m):
                if D[i][t]:
                    add_row(i, t, -(D[i][t] // p))
            for j in range(t + 1, n):
                if D[t][j]:
                    add_col(j, t, -(D[t][j] // p))
            best = None
            for i in range(t + 1, m):
                v = D[i][t]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, "r")
            for j in range(t + 1, n):
                v = D[t][j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), j, "c")
            if best is not None:
                if best[2] == "r":
                    swap_rows(t, best[1])
                else:
                    swap_cols(t, best[1])
                continue
            bad = next(
                (i for i in range(t + 1, m) for j in range(t + 1, n) if D[i][j] % p),
                None,
            )
            if bad is not None:
                add_row(t, bad, 1)
                continue
            break
        if D[t][t] < 0:
            negate_row(t)

    return SnfDecomposition(
        U=IntMatrix(U, cols=m), D=IntMatrix(D, cols=n),
        V=IntMatrix(V, cols=n), U_inv=IntMatrix(Ui, cols=m),
    )


def smith_invariants(A: IntMatrix) -> list[int]:
    return snf(A).diagonal


def kernel_basis(A: IntMatrix) -> list[list[int]]:
    """A Z-basis of the integer null space ``{x : A x = 0}``."""
    dec = snf(A)
    r = dec.rank
    return [list(dec.V.column(j)) for j in range(r, A.cols)]


def solve_linear(A: IntMatrix, b: Sequence[int],
                 modulus: Optional[int] = None) -> Optional[list[int]]:
    """Return some integer ``x`` with ``A x = b`` (mod ``modulus`` if given), or None."""
    if len(b) != A.rows:
        raise DimensionMismatch("right-hand side has length %d, matrix has %d rows" % (len(b), A.rows))
    if modulus is not None:
        if modulus < 1:
            raise InvalidInput("modulus must be positive")
        aug = A.hstack(IntMatrix.diagonal([modulus] * A.rows))
        sol = solve_linear(aug, b)
        if sol is None:
            return None
        x = [v % modulus for v in sol[: A.cols]]
        assert all((u - v) % modulus == 0 for u, v in zip(A.apply(x), b))
        return x
    dec = snf(A)
    c = dec.U.apply(b)
    diag = dec.diagonal
    y = [0] * A.cols
    for i, ci in enumerate(c):
        d = diag[i] if i < len(diag) else 0
        if d == 0:
            if ci:
                return None
        elif ci % d:
            return None
        else:
            y[i] = ci // d
    x = dec.V.apply(y)
    assert A.apply(x) == list(b)
    return x


def prime_factors(n: int) -> list[int]:
    """Distinct prime factors of ``|n|`` in increasing order (empty for 0 and +-1)."""
    n = abs(n)
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1 if p == 2 else 2
    if n > 1:
        out.append(n)
    return out
