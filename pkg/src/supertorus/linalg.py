"""Dense exact rational linear algebra and Boolean-poset incidence matrices.

Ranks and invertibility run fraction-free (Bareiss) over integers after
clearing denominators row by row; a reduction modulo a fixed large prime
serves as a fast certificate when the matrix has full rank, since the rank
modulo a prime never exceeds the rank over the rationals.  Kernels and
coordinate solves run in plain rational row reduction, which keeps the
returned bases in canonical reduced form.
"""

from __future__ import annotations

import csv
import io
import itertools
import math
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

# Largest Mersenne prime below 2**31; products of two residues fit in int64.
_CERT_PRIME = 2**31 - 1


class Matrix:
    """Immutable dense matrix of Fractions, row major."""

    __slots__ = ("nrows", "ncols", "_data")

    def __init__(self, nrows: int, ncols: int, entries: Iterable[Fraction] | None = None):
        if nrows < 0 or ncols < 0:
            raise ValueError("matrix dimensions must be nonnegative")
        self.nrows = nrows
        self.ncols = ncols
        if entries is None:
            self._data = [[Fraction(0)] * ncols for _ in range(nrows)]
        else:
            flat = [Fraction(e) for e in entries]
            if len(flat) != nrows * ncols:
                raise ValueError(
                    f"expected {nrows * ncols} entries, got {len(flat)}"
                )
            self._data = [flat[r * ncols : (r + 1) * ncols] for r in range(nrows)]

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> "Matrix":
        nrows = len(rows)
        ncols = len(rows[0]) if rows else 0
        for row in rows:
            if len(row) != ncols:
                raise ValueError("ragged rows")
        return cls(nrows, ncols, [x for row in rows for x in row])

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], nrows: int | None = None) -> "Matrix":
        if columns:
            nrows = len(columns[0])
        elif nrows is None:
            nrows = 0
        return cls.from_rows(
            [[col[r] for col in columns] for r in range(nrows)]
            if columns
            else [[] for _ in range(nrows)]
        )

    @classmethod
    def identity(cls, k: int) -> "Matrix":
        m = cls(k, k)
        for i in range(k):
            m._data[i][i] = Fraction(1)
        return m

    def __getitem__(self, key: tuple[int, int]) -> Fraction:
        r, c = key
        return self._data[r][c]

    def row(self, r: int) -> list[Fraction]:
        return list(self._data[r])

    def column(self, c: int) -> list[Fraction]:
        return [self._data[r][c] for r in range(self.nrows)]

    def rows(self) -> list[list[Fraction]]:
        return [list(row) for row in self._data]

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Matrix)
            and self.shape == other.shape
            and self._data == other._data
        )

    def __hash__(self):
        return hash((self.shape, tuple(tuple(r) for r in self._data)))

    def __repr__(self) -> str:
        return f"Matrix({self.nrows}x{self.ncols})"

    def transpose(self) -> "Matrix":
        return Matrix.from_rows(
            [[self._data[r][c] for r in range(self.nrows)] for c in range(self.ncols)]
            if self.nrows
            else [[] for _ in range(self.ncols)]
        )

    def mat_vec(self, v: Sequence) -> list[Fraction]:
        if len(v) != self.ncols:
            raise ValueError("vector length mismatch")
        vv = [Fraction(x) for x in v]
        return [
            sum((row[c] * vv[c] for c in range(self.ncols)), Fraction(0))
            for row in self._data
        ]

    def __mul__(self, other: "Matrix") -> "Matrix":
        if not isinstance(other, Matrix):
            return NotImplemented
        if self.ncols != other.nrows:
            raise ValueError("inner dimensions mismatch")
        out = Matrix(self.nrows, other.ncols)
        for r in range(self.nrows):
            row = self._data[r]
            for c in range(other.ncols):
                out._data[r][c] = sum(
                    (row[k] * other._data[k][c] for k in range(self.ncols)),
                    Fraction(0),
                )
        return out

    def scaled_integer_rows(self) -> list[list[int]]:
        """Each row times the lcm of its denominators; rank preserving."""
        out = []
        for row in self._data:
            scale = math.lcm(*(x.denominator for x in row)) if row else 1
            out.append([int(x * scale) for x in row])
        return out

    def rank(self) -> int:
        if self.nrows == 0 or self.ncols == 0:
            return 0
        ints = self.scaled_integer_rows()
        r = _modp_rank(ints)
        if r == min(self.nrows, self.ncols):
            # full rank modulo the prime certifies full rank over Q
            return r
        return _bareiss_rank(ints)

    def is_invertible(self) -> bool:
        if self.nrows != self.ncols:
            raise ValueError("invertibility requires a square matrix")
        return self.rank() == self.nrows

    def rref(self) -> tuple["Matrix", tuple[int, ...]]:
        rows, pivots = _rref([list(row) for row in self._data], self.ncols)
        out = Matrix(self.nrows, self.ncols)
        out._data = rows
        return out, tuple(pivots)

    def kernel_basis(self) -> list[list[Fraction]]:
        """Canonical basis of the right null space, one vector per free column."""
        rows, pivots = _rref([list(row) for row in self._data], self.ncols)
        pivot_set = set(pivots)
        basis = []
        for free in range(self.ncols):
            if free in pivot_set:
                continue
            v = [Fraction(0)] * self.ncols
            v[free] = Fraction(1)
            for r, p in enumerate(pivots):
                v[p] = -rows[r][free]
            basis.append(v)
        return basis

    def solve_many(self, vectors: Sequence[Sequence]) -> list[list[Fraction] | None]:
        """Coordinates of each vector in the column span, or None if outside."""
        k = len(vectors)
        for v in vectors:
            if len(v) != self.nrows:
                raise ValueError("vector length mismatch")
        aug = [
            [self._data[r][c] for c in range(self.ncols)]
            + [Fraction(vectors[i][r]) for i in range(k)]
            for r in range(self.nrows)
        ]
        rows, pivots = _rref(aug, self.ncols + k)
        results: list[list[Fraction] | None] = []
        for i in range(k):
            col = self.ncols + i
            if col in pivots:
                results.append(None)
            else:
                x = [Fraction(0)] * self.ncols
                ok = True
                for r, p in enumerate(pivots):
                    if p >= self.ncols:
                        if rows[r][col]:
                            ok = False
                            break
                        continue
                    x[p] = rows[r][col]
                results.append(x if ok else None)
        return results

    def coordinates(self, v: Sequence) -> list[Fraction] | None:
        """Exact coordinates of v in the column span; None when not in span."""
        return self.solve_many([v])[0]

    def to_csv(self) -> str:
        """Serialize with a leading "rows,cols" line; entries as p or p/q."""
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow([self.nrows, self.ncols])
        for row in self._data:
            writer.writerow([_format_rat(x) for x in row])
        return buf.getvalue()

    @classmethod
    def from_csv(cls, text: str) -> "Matrix":
        reader = csv.reader(io.StringIO(text))
        header = next(reader)
        nrows, ncols = int(header[0]), int(header[1])
        entries: list[Fraction] = []
        for row in reader:
            if not row:
                continue
            entries.extend(Fraction(x) for x in row)
        return cls(nrows, ncols, entries)


def _format_rat(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _rref(rows: list[list[Fraction]], ncols: int) -> tuple[list[list[Fraction]], list[int]]:
    """In-place reduced row echelon form; pivot choice is the first nonzero."""
    nrows = len(rows)
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        piv = next((k for k in range(r, nrows) if rows[k][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for k in range(nrows):
            if k != r and rows[k][c]:
                f = rows[k][c]
                rowr = rows[r]
                rows[k] = [a - f * b for a, b in zip(rows[k], rowr)]
        pivots.append(c)
        r += 1
    return rows, pivots


def _bareiss_rank(int_rows: list[list[int]]) -> int:
    """Exact rank by fraction-free elimination with virtual column pivoting."""
    m = [row[:] for row in int_rows]
    nrows = len(m)
    ncols = len(m[0]) if m else 0
    rank = 0
    prev = 1
    for col in range(ncols):
        if rank == nrows:
            break
        piv = next((k for k in range(rank, nrows) if m[k][col]), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        pivot = m[rank][col]
        for k in range(rank + 1, nrows):
            factor = m[k][col]
            row_k = m[k]
            row_p = m[rank]
            for c in range(col + 1, ncols):
                num = pivot * row_k[c] - factor * row_p[c]
                q, rem = divmod(num, prev)
                assert rem == 0, "fraction-free elimination produced a remainder"
                row_k[c] = q
            row_k[col] = 0
        prev = pivot
        rank += 1
    return rank


def _modp_rank(int_rows: list[list[int]], p: int = _CERT_PRIME) -> int:
    """Rank modulo p; always a lower bound for the rank over Q."""
    if not int_rows or not int_rows[0]:
        return 0
    a = np.array([[x % p for x in row] for row in int_rows], dtype=np.int64)
    nrows, ncols = a.shape
    rank = 0
    for col in range(ncols):
        if rank == nrows:
            break
        nz = np.nonzero(a[rank:, col])[0]
        if nz.size == 0:
            continue
        piv = rank + int(nz[0])
        if piv != rank:
            a[[rank, piv]] = a[[piv, rank]]
        inv = pow(int(a[rank, col]), p - 2, p)
        a[rank, col:] = (a[rank, col:] * inv) % p
        below = a[rank + 1 :, col]
        hot = np.nonzero(below)[0]
        if hot.size:
            rows_idx = rank + 1 + hot
            factors = a[rows_idx, col][:, None]
            a[rows_idx, col:] = (a[rows_idx, col:] - factors * a[rank, col:]) % p
        rank += 1
    return rank


def subsets_lex(n: int, k: int) -> list[tuple[int, ...]]:
    """Size-k subsets of 1..n in lexicographic order on sorted tuples."""
    return list(itertools.combinations(range(1, n + 1), k))


def boolean_incidence(n: int, i: int, j: int) -> Matrix:
    """Containment matrix between size-i and size-j subsets of 1..n.

    Rows follow the size-i subsets and columns the size-j subsets, both in
    lexicographic order; the entry is 1 exactly when the row subset is
    contained in the column subset.
    """
    if not 0 <= i <= j <= n:
        raise ValueError(f"need 0 <= i <= j <= n, got i={i}, j={j}, n={n}")
    rows = subsets_lex(n, i)
    cols = subsets_lex(n, j)
    data = []
    for S in rows:
        s = set(S)
        data.extend(Fraction(1) if s <= set(T) else Fraction(0) for T in cols)
    return Matrix(len(rows), len(cols), data)
