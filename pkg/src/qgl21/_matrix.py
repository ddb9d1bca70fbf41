"""Column-sparse square matrices over an arbitrary scalar type.

Generator matrices have at most a couple of nonzeros per column, and
arbitrary-precision multiply-adds are expensive, so products only touch
stored entries.
"""

from __future__ import annotations

from typing import Any, Iterable, Iterator


class SparseMatrix:
    __slots__ = ("n", "cols", "zero")

    def __init__(self, n: int, zero: Any = 0, cols: list[dict[int, Any]] | None = None):
        self.n = n
        self.zero = zero
        self.cols = cols if cols is not None else [{} for _ in range(n)]

    @property
    def shape(self) -> tuple[int, int]:
        return (self.n, self.n)

    @classmethod
    def diagonal(cls, values: list, zero: Any = 0) -> "SparseMatrix":
        return cls(len(values), zero, [{j: v} if v != 0 else {} for j, v in enumerate(values)])

    @classmethod
    def identity(cls, n: int, one: Any = 1, zero: Any = 0) -> "SparseMatrix":
        return cls(n, zero, [{j: one} for j in range(n)])

    @classmethod
    def from_dense(cls, rows: list[list], zero: Any = 0) -> "SparseMatrix":
        n = len(rows)
        m = cls(n, zero)
        for i, row in enumerate(rows):
            if len(row) != n:
                raise ValueError("matrix is not square")
            for j, v in enumerate(row):
                if v != 0:
                    m.cols[j][i] = v
        return m

    def add(self, i: int, j: int, value) -> None:
        col = self.cols[j]
        col[i] = col[i] + value if i in col else value

    def __getitem__(self, ij: tuple[int, int]):
        i, j = ij
        return self.cols[j].get(i, self.zero)

    def __setitem__(self, ij: tuple[int, int], value) -> None:
        i, j = ij
        self.cols[j][i] = value

    def items(self) -> Iterator[tuple[int, int, Any]]:
        for j, col in enumerate(self.cols):
            for i, v in col.items():
                yield i, j, v

    def nnz(self) -> int:
        return sum(len(c) for c in self.cols)

    def column(self, j: int) -> dict[int, Any]:
        return self.cols[j]

    def apply(self, vec: dict[int, Any]) -> dict[int, Any]:
        """Image of a sparse vector given as {index: value}."""
        out: dict[int, Any] = {}
        for k, b in vec.items():
            for i, a in self.cols[k].items():
                out[i] = out[i] + a * b if i in out else a * b
        return out

    def __matmul__(self, other: "SparseMatrix") -> "SparseMatrix":
        if self.n != other.n:
            raise ValueError(f"dimension mismatch {self.shape} vs {other.shape}")
        return SparseMatrix(self.n, self.zero, [self.apply(c) for c in other.cols])

    def _combine(self, other: "SparseMatrix", sign: int) -> "SparseMatrix":
        if self.n != other.n:
            raise ValueError(f"dimension mismatch {self.shape} vs {other.shape}")
        cols = []
        for a, b in zip(self.cols, other.cols):
            c = dict(a)
            for i, v in b.items():
                if i in c:
                    c[i] = c[i] + v if sign > 0 else c[i] - v
                else:
                    c[i] = v if sign > 0 else -v
            cols.append(c)
        return SparseMatrix(self.n, self.zero, cols)

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def __neg__(self):
        return self * -1

    def __mul__(self, s) -> "SparseMatrix":
        return SparseMatrix(self.n, self.zero, [{i: v * s for i, v in c.items()} for c in self.cols])

    __rmul__ = __mul__

    def abs(self) -> "SparseMatrix":
        return SparseMatrix(self.n, self.zero, [{i: abs(v) for i, v in c.items()} for c in self.cols])

    def max_abs(self):
        return max((abs(v) for _, _, v in self.items()), default=abs(self.zero))

    def is_diagonal(self) -> bool:
        return all(i == j for i, j, v in self.items() if v != 0)

    def diagonal_values(self) -> list:
        return [self[j, j] for j in range(self.n)]

    def submatrix(self, keep: Iterable[int]) -> "SparseMatrix":
        keep = list(keep)
        pos = {k: t for t, k in enumerate(keep)}
        cols = [{pos[i]: v for i, v in self.cols[k].items() if i in pos} for k in keep]
        return SparseMatrix(len(keep), self.zero, cols)

    def to_dense(self) -> list[list]:
        rows = [[self.zero] * self.n for _ in range(self.n)]
        for i, j, v in self.items():
            rows[i][j] = v
        return rows

    def __eq__(self, other) -> bool:
        if not isinstance(other, SparseMatrix) or other.n != self.n:
            return NotImplemented
        return self.to_dense() == other.to_dense()

    def __repr__(self):
        return f"SparseMatrix(n={self.n}, nnz={self.nnz()})"
