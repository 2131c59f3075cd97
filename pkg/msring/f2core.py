"""
Linear algebra over F2 on bit-packed vectors and matrices.

Vectors are Python ints used as bitsets: bit i holds coordinate i (0-based).
Matrices are row-major tuples of such ints. Elimination always pivots on the
lowest available index so every derived basis is reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from msring.errors import DegenerateVectorError, DimensionMismatchError, SingularMatrixError, UnsupportedRankError

MAX_GROUP_RANK = 6


def parity(bits: int) -> int:
    return bin(bits).count("1") & 1


def support(bits: int) -> list[int]:
    """Indices of the set bits, ascending."""
    out = []
    while bits:
        low = bits & -bits
        out.append(low.bit_length() - 1)
        bits ^= low
    return out


@dataclass(frozen=True)
class F2Vector:
    dim: int
    bits: int = 0

    def __post_init__(self):
        if self.dim < 0:
            raise DimensionMismatchError("Vector dimension must be non-negative")
        if self.bits >> self.dim:
            raise DimensionMismatchError(f"Bits {self.bits:#b} do not fit dimension {self.dim}")

    @classmethod
    def zero(cls, dim: int) -> "F2Vector":
        return cls(dim, 0)

    @classmethod
    def unit(cls, dim: int, index: int) -> "F2Vector":
        """Standard basis vector e_{index+1} (index is 0-based)."""
        if not 0 <= index < dim:
            raise DimensionMismatchError(f"Basis index {index} out of range for dimension {dim}")
        return cls(dim, 1 << index)

    @classmethod
    def from_list(cls, values: Sequence[int]) -> "F2Vector":
        bits = 0
        for i, value in enumerate(values):
            if value & 1:
                bits |= 1 << i
        return cls(len(values), bits)

    def to_list(self) -> list[int]:
        return [(self.bits >> i) & 1 for i in range(self.dim)]

    def __getitem__(self, index: int) -> int:
        return (self.bits >> index) & 1

    def __add__(self, other: "F2Vector") -> "F2Vector":
        _check_dims(self.dim, other.dim)
        return F2Vector(self.dim, self.bits ^ other.bits)

    def dot(self, other: "F2Vector") -> int:
        _check_dims(self.dim, other.dim)
        return parity(self.bits & other.bits)

    def is_zero(self) -> bool:
        return self.bits == 0

    def __str__(self) -> str:
        return "(" + ",".join(str(b) for b in self.to_list()) + ")"


@dataclass(frozen=True)
class F2Matrix:
    rows: int
    cols: int
    data: tuple[int, ...]

    def __post_init__(self):
        if len(self.data) != self.rows:
            raise DimensionMismatchError(f"Expected {self.rows} rows, got {len(self.data)}")
        limit = 1 << self.cols
        for row in self.data:
            if row < 0 or row >= limit:
                raise DimensionMismatchError(f"Row {row:#b} does not fit {self.cols} columns")

    @classmethod
    def identity(cls, n: int) -> "F2Matrix":
        return cls(n, n, tuple(1 << i for i in range(n)))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "F2Matrix":
        return cls(rows, cols, (0,) * rows)

    @classmethod
    def from_lists(cls, entries: Sequence[Sequence[int]], cols: int | None = None) -> "F2Matrix":
        width = cols if cols is not None else (len(entries[0]) if entries else 0)
        rows = []
        for row in entries:
            if len(row) != width:
                raise DimensionMismatchError("Ragged matrix rows")
            rows.append(F2Vector.from_list(row).bits)
        return cls(len(rows), width, tuple(rows))

    @classmethod
    def from_columns(cls, columns: Sequence[int], dim: int) -> "F2Matrix":
        """Build the dim x len(columns) matrix whose j-th column has bitset columns[j]."""
        rows = [0] * dim
        for j, col in enumerate(columns):
            if col >> dim:
                raise DimensionMismatchError(f"Column {col:#b} does not fit dimension {dim}")
            for i in support(col):
                rows[i] |= 1 << j
        return cls(dim, len(columns), tuple(rows))

    def entry(self, i: int, j: int) -> int:
        return (self.data[i] >> j) & 1

    def column(self, j: int) -> int:
        bits = 0
        for i, row in enumerate(self.data):
            if (row >> j) & 1:
                bits |= 1 << i
        return bits

    def columns(self) -> list[int]:
        return [self.column(j) for j in range(self.cols)]

    def to_lists(self) -> list[list[int]]:
        return [[(row >> j) & 1 for j in range(self.cols)] for row in self.data]

    def transpose(self) -> "F2Matrix":
        return F2Matrix(self.cols, self.rows, tuple(self.columns()))

    def apply(self, bits: int) -> int:
        """Matrix-vector product on a raw bitset."""
        out = 0
        for i, row in enumerate(self.data):
            if parity(row & bits):
                out |= 1 << i
        return out

    def __matmul__(self, other):
        if isinstance(other, F2Vector):
            _check_dims(self.cols, other.dim)
            return F2Vector(self.rows, self.apply(other.bits))
        if isinstance(other, F2Matrix):
            _check_dims(self.cols, other.rows)
            out = []
            for row in self.data:
                acc = 0
                for j in support(row):
                    acc ^= other.data[j]
                out.append(acc)
            return F2Matrix(self.rows, other.cols, tuple(out))
        return NotImplemented

    def is_invertible(self) -> bool:
        return self.rows == self.cols and rank(self) == self.rows

    def inverse(self) -> "F2Matrix":
        if self.rows != self.cols:
            raise SingularMatrixError("Only square matrices can be inverted")
        n = self.rows
        work = list(self.data)
        inv = [1 << i for i in range(n)]
        for col in range(n):
            pivot = next((r for r in range(col, n) if (work[r] >> col) & 1), None)
            if pivot is None:
                raise SingularMatrixError("Singular matrix over F2")
            work[col], work[pivot] = work[pivot], work[col]
            inv[col], inv[pivot] = inv[pivot], inv[col]
            for r in range(n):
                if r != col and (work[r] >> col) & 1:
                    work[r] ^= work[col]
                    inv[r] ^= inv[col]
        return F2Matrix(n, n, tuple(inv))

    def __str__(self) -> str:
        return "[" + ", ".join("[" + ",".join(str(b) for b in row) + "]" for row in self.to_lists()) + "]"


def _check_dims(a: int, b: int) -> None:
    if a != b:
        raise DimensionMismatchError(f"Dimension mismatch: {a} != {b}")


def _row_reduce(rows: Iterable[int], cols: int) -> tuple[list[int], list[int]]:
    """Reduced row echelon form; returns (nonzero rows, pivot columns), pivots ascending."""
    work = [r for r in rows]
    pivots: list[int] = []
    top = 0
    for col in range(cols):
        pivot = next((r for r in range(top, len(work)) if (work[r] >> col) & 1), None)
        if pivot is None:
            continue
        work[top], work[pivot] = work[pivot], work[top]
        for r in range(len(work)):
            if r != top and (work[r] >> col) & 1:
                work[r] ^= work[top]
        pivots.append(col)
        top += 1
        if top == len(work):
            break
    return work[:top], pivots


def rank(m: F2Matrix) -> int:
    return len(_row_reduce(m.data, m.cols)[1])


def kernel_basis(m: F2Matrix) -> list[F2Vector]:
    """Basis of {v : m v = 0}, one vector per free column in ascending order."""
    reduced, pivots = _row_reduce(m.data, m.cols)
    pivot_set = set(pivots)
    basis = []
    for free in range(m.cols):
        if free in pivot_set:
            continue
        bits = 1 << free
        for row, col in zip(reduced, pivots):
            if (row >> free) & 1:
                bits |= 1 << col
        basis.append(F2Vector(m.cols, bits))
    return basis


def span_rank(vectors: Iterable[int], dim: int) -> int:
    return len(_row_reduce(vectors, dim)[1])


def complete_basis(vectors: Sequence[int], dim: int) -> list[int]:
    """Extend independent bitsets to a basis of F2^dim with the lowest standard vectors."""
    basis = list(vectors)
    if span_rank(basis, dim) != len(basis):
        raise SingularMatrixError("Vectors to complete are linearly dependent")
    for i in range(dim):
        if len(basis) == dim:
            break
        candidate = basis + [1 << i]
        if span_rank(candidate, dim) == len(candidate):
            basis = candidate
    return basis


def transvection(n: int, i: int, j: int) -> F2Matrix:
    """I + E_ij: adds coordinate j into coordinate i, so it sends e_j to e_j + e_i."""
    rows = [1 << r for r in range(n)]
    rows[i] |= 1 << j
    return F2Matrix(n, n, tuple(rows))


def group_generators(rho: int, fixed: F2Vector | None = None) -> list[F2Matrix]:
    """
    Generators of GL(rho, 2), or of the stabilizer of `fixed` when given.

    GL(rho, 2) is generated by the elementary transvections. The stabilizer of
    e_1 is generated by the transvections that leave the first column alone;
    a general nonzero vector is handled by conjugating with a basis change P
    that sends e_1 to it.
    """
    if not 1 <= rho <= MAX_GROUP_RANK:
        raise UnsupportedRankError(f"Group generators are supported for 1 <= rho <= {MAX_GROUP_RANK}, got {rho}")
    if fixed is not None:
        _check_dims(rho, fixed.dim)
        if fixed.is_zero():
            raise DegenerateVectorError("Fixed vector must be nonzero")

    if rho == 1:
        return [F2Matrix.identity(1)]

    if fixed is None:
        return [transvection(rho, i, j) for i in range(rho) for j in range(rho) if i != j]

    base = [transvection(rho, i, j) for i in range(rho) for j in range(1, rho) if i != j]
    if fixed.bits == 1:
        return base
    p = F2Matrix.from_columns(complete_basis([fixed.bits], rho), rho)
    p_inv = p.inverse()
    return [p @ t @ p_inv for t in base]


def group_order(rho: int) -> int:
    order = 1
    for i in range(rho):
        order *= (1 << rho) - (1 << i)
    return order
