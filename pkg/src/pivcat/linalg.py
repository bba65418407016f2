"""Exact sparse linear algebra over Q and cyclotomic fields.

Matrices are lists of sparse rows (``dict[col, value]``).  Values are any
exact field elements supporting ``+ - * /`` and truthiness for zero tests:
``int``/``Fraction`` for Q, :class:`~pivcat.cyclotomic.CyclotomicScalar` for
Q(zeta_m).  Mixed rows are fine; arithmetic promotes on demand.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Iterator, Sequence

Row = dict


def _clean(row: dict) -> dict:
    return {c: v for c, v in row.items() if v}


class Matrix:
    """Sparse exact matrix; ``rows[i]`` maps column index to a nonzero value."""

    __slots__ = ("nrows", "ncols", "rows")

    def __init__(self, nrows: int, ncols: int, rows: Sequence[dict] | None = None):
        self.nrows = nrows
        self.ncols = ncols
        if rows is None:
            self.rows = [dict() for _ in range(nrows)]
        else:
            if len(rows) != nrows:
                raise ValueError("row count mismatch")
            self.rows = [_clean(r) for r in rows]

    @classmethod
    def identity(cls, n: int, scale=1) -> "Matrix":
        return cls(n, n, [{i: Fraction(scale)} if scale else {} for i in range(n)])

    @classmethod
    def diagonal(cls, values: Sequence) -> "Matrix":
        return cls(len(values), len(values), [{i: v} for i, v in enumerate(values)])

    @classmethod
    def from_dense(cls, dense: Sequence[Sequence]) -> "Matrix":
        nrows = len(dense)
        ncols = len(dense[0]) if nrows else 0
        rows = [{j: (Fraction(v) if isinstance(v, int) else v) for j, v in enumerate(r) if v}
                for r in dense]
        return cls(nrows, ncols, rows)

    @classmethod
    def from_columns(cls, nrows: int, columns: Sequence[dict]) -> "Matrix":
        m = cls(nrows, len(columns))
        for j, col in enumerate(columns):
            for i, v in col.items():
                if v:
                    m.rows[i][j] = v
        return m

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    def __getitem__(self, key: tuple[int, int]):
        i, j = key
        return self.rows[i].get(j, 0)

    def entries(self) -> Iterator[tuple[int, int, object]]:
        for i, row in enumerate(self.rows):
            for j in sorted(row):
                yield i, j, row[j]

    def column(self, j: int) -> dict:
        return {i: r[j] for i, r in enumerate(self.rows) if j in r}

    def columns(self) -> list[dict]:
        cols: list[dict] = [dict() for _ in range(self.ncols)]
        for i, row in enumerate(self.rows):
            for j, v in row.items():
                cols[j][i] = v
        return cols

    def to_dense(self) -> list[list]:
        return [[r.get(j, 0) for j in range(self.ncols)] for r in self.rows]

    def transpose(self) -> "Matrix":
        t = Matrix(self.ncols, self.nrows)
        for i, row in enumerate(self.rows):
            for j, v in row.items():
                t.rows[j][i] = v
        return t

    T = property(transpose)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        out = []
        orows = other.rows
        for row in self.rows:
            acc: dict = {}
            for k, a in row.items():
                for j, b in orows[k].items():
                    acc[j] = acc.get(j, 0) + a * b
            out.append(acc)
        return Matrix(self.nrows, other.ncols, out)

    def apply(self, vec: dict) -> dict:
        """Matrix times sparse column vector."""
        out = {}
        for i, row in enumerate(self.rows):
            s = 0
            for k, a in row.items():
                if k in vec:
                    s = s + a * vec[k]
            if s:
                out[i] = s
        return out

    def __add__(self, other: "Matrix") -> "Matrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch in addition")
        out = []
        for r1, r2 in zip(self.rows, other.rows):
            acc = dict(r1)
            for j, v in r2.items():
                acc[j] = acc.get(j, 0) + v
            out.append(acc)
        return Matrix(self.nrows, self.ncols, out)

    def __neg__(self) -> "Matrix":
        return Matrix(self.nrows, self.ncols, [{j: -v for j, v in r.items()} for r in self.rows])

    def __sub__(self, other: "Matrix") -> "Matrix":
        return self + (-other)

    def scale(self, s) -> "Matrix":
        return Matrix(self.nrows, self.ncols, [{j: v * s for j, v in r.items()} for r in self.rows])

    def kron(self, other: "Matrix") -> "Matrix":
        """Tensor product; row/col index of (i, k) is ``i * other.dim + k``."""
        out = Matrix(self.nrows * other.nrows, self.ncols * other.ncols)
        for i, r1 in enumerate(self.rows):
            for j, a in r1.items():
                for k, r2 in enumerate(other.rows):
                    target = out.rows[i * other.nrows + k]
                    for l, b in r2.items():
                        target[j * other.ncols + l] = a * b
        out.rows = [_clean(r) for r in out.rows]
        return out

    def is_zero(self) -> bool:
        return not any(self.rows)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and (self - other).is_zero()

    __hash__ = None  # mutable container

    def first_difference(self, other: "Matrix") -> tuple[int, int] | None:
        diff = self - other
        for i, row in enumerate(diff.rows):
            if row:
                return i, min(row)
        return None

    def rank(self) -> int:
        return Echelon.from_rows(self.rows).rank

    def nullspace(self) -> list[dict]:
        return Echelon.from_rows(self.rows).nullspace(self.ncols)

    def column_space(self) -> list[dict]:
        """Basis of the image as sparse vectors (reduced echelon form)."""
        return Echelon.from_rows(self.columns()).basis()

    def __repr__(self) -> str:
        return f"Matrix({self.nrows}x{self.ncols}, nnz={sum(len(r) for r in self.rows)})"


class Echelon:
    """Incrementally maintained reduced row echelon form.

    Each stored row has pivot coefficient 1 and no entries in any other
    pivot column, so reducing a new vector needs a single pass.
    """

    def __init__(self):
        self.pivot_rows: dict[int, dict] = {}

    @classmethod
    def from_rows(cls, rows: Iterable[dict]) -> "Echelon":
        ech = cls()
        for r in rows:
            ech.add(r)
        return ech

    @property
    def rank(self) -> int:
        return len(self.pivot_rows)

    @property
    def pivots(self) -> list[int]:
        return sorted(self.pivot_rows)

    def reduce(self, vec: dict) -> dict:
        """Remainder of ``vec`` modulo the row space (supported off-pivot)."""
        vec = _clean(dict(vec))
        for p in [c for c in vec if c in self.pivot_rows]:
            coef = vec.get(p)
            if not coef:
                continue
            for j, v in self.pivot_rows[p].items():
                nv = vec.get(j, 0) - coef * v
                if nv:
                    vec[j] = nv
                else:
                    vec.pop(j, None)
        return vec

    def add(self, vec: dict) -> bool:
        """Insert a row; returns False if it was dependent."""
        rem = self.reduce(vec)
        if not rem:
            return False
        p = min(rem)
        inv = 1 / rem[p] if not isinstance(rem[p], int) else Fraction(1, rem[p])
        row = {j: v * inv for j, v in rem.items()}
        row[p] = Fraction(1)
        for q, other in self.pivot_rows.items():
            coef = other.get(p)
            if coef:
                for j, v in row.items():
                    nv = other.get(j, 0) - coef * v
                    if nv:
                        other[j] = nv
                    else:
                        other.pop(j, None)
        self.pivot_rows[p] = row
        return True

    def basis(self) -> list[dict]:
        return [dict(self.pivot_rows[p]) for p in self.pivots]

    def nullspace(self, ncols: int) -> list[dict]:
        free = [c for c in range(ncols) if c not in self.pivot_rows]
        vectors = []
        for f in free:
            v = {f: Fraction(1)}
            for p, row in self.pivot_rows.items():
                if f in row:
                    v[p] = -row[f]
            vectors.append(v)
        return vectors


def solve(rows: Sequence[dict], rhs: Sequence, ncols: int):
    """Solve ``A x = b`` exactly.

    Returns ``(solution, None)`` with free variables set to zero, or
    ``(None, certificate)`` where the certificate is the rank pair
    ``(rank A, rank [A | b])`` proving infeasibility.
    """
    ech = Echelon()
    aug = Echelon()
    for row, b in zip(rows, rhs):
        ech.add(row)
        r = dict(row)
        if b:
            r[ncols] = b
        aug.add(r)
    if ncols in aug.pivot_rows:
        return None, (ech.rank, aug.rank)
    sol = {}
    for p, row in aug.pivot_rows.items():
        val = row.get(ncols, 0)
        if val:
            sol[p] = val
    return sol, None


def nullity(rows: Sequence[dict], ncols: int) -> int:
    return ncols - Echelon.from_rows(rows).rank
