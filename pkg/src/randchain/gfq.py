"""Prime-field arithmetic and dense linear algebra over F_q.

Matrices are small (tens of rows at most), so entries live in a flat
row-major tuple of Python ints and elimination is done in pure Python.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence


@lru_cache(maxsize=None)
def is_prime(n: int) -> bool:
    """Deterministic trial-division primality test."""
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def check_prime(q: int) -> int:
    if not isinstance(q, int) or isinstance(q, bool):
        raise TypeError(f"field order must be an int, got {type(q).__name__}")
    if not is_prime(q):
        raise ValueError(f"field order q={q} is not prime")
    return q


@dataclass(frozen=True)
class PrimeField:
    """The field F_q for a prime q."""

    q: int

    def __post_init__(self):
        check_prime(self.q)

    def inv(self, a: int) -> int:
        a %= self.q
        if a == 0:
            raise ZeroDivisionError("0 has no inverse in F_q")
        return pow(a, -1, self.q)


class MatrixFq:
    """Immutable dense matrix over a prime field, stored row-major."""

    __slots__ = ("rows", "cols", "entries", "field")

    def __init__(self, rows: int, cols: int, entries: Iterable[int], field: PrimeField):
        if rows < 0 or cols < 0:
            raise ValueError(f"negative shape {rows}x{cols}")
        q = field.q
        data = tuple(int(e) for e in entries)
        if len(data) != rows * cols:
            raise ValueError(
                f"expected {rows * cols} entries for a {rows}x{cols} matrix, got {len(data)}"
            )
        for e in data:
            if not 0 <= e < q:
                raise ValueError(f"entry {e} is not a residue mod {q}")
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "entries", data)
        object.__setattr__(self, "field", field)

    def __setattr__(self, name, value):
        raise AttributeError("MatrixFq is immutable")

    @classmethod
    def _trusted(cls, rows: int, cols: int, entries: tuple, field: PrimeField) -> "MatrixFq":
        # Skips validation; callers guarantee reduced residues and shape.
        self = object.__new__(cls)
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "entries", entries)
        object.__setattr__(self, "field", field)
        return self

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], field: PrimeField | int, cols: int | None = None) -> "MatrixFq":
        """Build a matrix from nested lists; entries are reduced mod q.

        ``cols`` is needed only when ``rows`` is empty.
        """
        if isinstance(field, int):
            field = PrimeField(field)
        q = field.q
        nrows = len(rows)
        if nrows == 0:
            return cls(0, cols or 0, (), field)
        ncols = len(rows[0])
        if cols is not None and cols != ncols:
            raise ValueError(f"rows have {ncols} columns, expected {cols}")
        flat = []
        for r in rows:
            if len(r) != ncols:
                raise ValueError("ragged rows")
            flat.extend(int(x) % q for x in r)
        return cls(nrows, ncols, flat, field)

    @classmethod
    def zeros(cls, rows: int, cols: int, field: PrimeField | int) -> "MatrixFq":
        if isinstance(field, int):
            field = PrimeField(field)
        return cls(rows, cols, (0,) * (rows * cols), field)

    @classmethod
    def identity(cls, n: int, field: PrimeField | int) -> "MatrixFq":
        if isinstance(field, int):
            field = PrimeField(field)
        return cls(n, n, (int(i == j) for i in range(n) for j in range(n)), field)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(ij)
        return self.entries[i * self.cols + j]

    def to_rows(self) -> list[list[int]]:
        c = self.cols
        return [list(self.entries[i * c:(i + 1) * c]) for i in range(self.rows)]

    def is_zero(self) -> bool:
        return not any(self.entries)

    def __eq__(self, other):
        if not isinstance(other, MatrixFq):
            return NotImplemented
        return (
            self.field == other.field
            and self.rows == other.rows
            and self.cols == other.cols
            and self.entries == other.entries
        )

    def __hash__(self):
        return hash((self.field.q, self.rows, self.cols, self.entries))

    def __repr__(self):
        return f"MatrixFq({self.rows}x{self.cols} over F_{self.field.q}, {self.to_rows()})"

    def __matmul__(self, other: "MatrixFq") -> "MatrixFq":
        return mat_mul(self, other)


def mat_mul(a: MatrixFq, b: MatrixFq) -> MatrixFq:
    """Matrix product with entries reduced mod q."""
    if a.field != b.field:
        raise ValueError(f"field mismatch: F_{a.field.q} vs F_{b.field.q}")
    if a.cols != b.rows:
        raise ValueError(f"cannot multiply {a.rows}x{a.cols} by {b.rows}x{b.cols}")
    q = a.field.q
    n, k, p = a.rows, a.cols, b.cols
    ae, be = a.entries, b.entries
    bcols = [be[j::p] for j in range(p)] if p else []
    out = []
    for i in range(n):
        row = ae[i * k:(i + 1) * k]
        for col in bcols:
            out.append(sum(x * y for x, y in zip(row, col)) % q)
    return MatrixFq._trusted(n, p, tuple(out), a.field)


def _rref(m: MatrixFq) -> tuple[list[list[int]], list[int]]:
    """Reduced row echelon form; pivots are taken as the first nonzero
    entry at or below the current row, scanning columns left to right."""
    q = m.field.q
    rows = m.to_rows()
    pivots: list[int] = []
    r = 0
    for c in range(m.cols):
        if r == m.rows:
            break
        piv = next((i for i in range(r, m.rows) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = pow(rows[r][c], -1, q)
        prow = [(x * inv) % q for x in rows[r]]
        rows[r] = prow
        for i in range(m.rows):
            f = rows[i][c]
            if i != r and f:
                rows[i] = [(x - f * y) % q for x, y in zip(rows[i], prow)]
        pivots.append(c)
        r += 1
    return rows, pivots


def rank(m: MatrixFq) -> int:
    """Rank over F_q by Gaussian elimination; 0 for empty matrices."""
    if m.rows == 0 or m.cols == 0:
        return 0
    q = m.field.q
    c = m.cols
    e = m.entries
    rows = [list(e[i * c:(i + 1) * c]) for i in range(m.rows)]
    r = 0
    nrows = m.rows
    for col in range(c):
        piv = None
        for i in range(r, nrows):
            if rows[i][col]:
                piv = i
                break
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        prow = rows[r]
        inv = pow(prow[col], -1, q)
        for i in range(r + 1, nrows):
            f = rows[i][col]
            if f:
                f = f * inv % q
                rows[i] = [(x - f * y) % q for x, y in zip(rows[i], prow)]
        r += 1
        if r == nrows:
            break
    return r


def nullity(m: MatrixFq) -> int:
    return m.cols - rank(m)


def kernel_basis(m: MatrixFq) -> MatrixFq:
    """Basis of ker(m) as the columns of a ``cols x nullity`` matrix.

    One basis vector per free column of the RREF: the free coordinate is 1,
    the other free coordinates are 0, and pivot coordinates are solved for.
    """
    q = m.field.q
    n = m.cols
    if m.rows == 0:
        return MatrixFq.identity(n, m.field)
    rows, pivots = _rref(m)
    pivot_set = set(pivots)
    free = [c for c in range(n) if c not in pivot_set]
    k = len(free)
    out = [0] * (n * k)
    for j, f in enumerate(free):
        out[f * k + j] = 1
        for r, p in enumerate(pivots):
            out[p * k + j] = (-rows[r][f]) % q
    return MatrixFq._trusted(n, k, tuple(out), m.field)
