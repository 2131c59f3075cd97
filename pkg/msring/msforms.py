"""
MS-algebras as symmetric trilinear forms over F2 with a distinguished class w.

A finite MS-algebra A* is determined up to isomorphism by its rank
rho = dim A^1, the triple product nu: (A^1)^{⊙3} -> A^3 = F2 and w. Because
A^1 x A^2 -> A^3 is a perfect pairing, A^2 is identified with the dual of A^1
(x*y is the functional z -> nu(x, y, z)), and A^0, A^3 with F2. Nonsingularity
therefore holds by construction and is never checked at runtime.

Bit layout of a form: the multisets {i <= j <= k} are listed lexicographically
and the first one is the most significant bit of `bits`. Comparing `bits`
as integers is the same as comparing the serialized bit strings.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache
from itertools import combinations_with_replacement, permutations

import numpy as np

from msring import config
from msring.errors import DimensionMismatchError, PostnikovWuError, SingularMatrixError
from msring.f2core import (
    F2Matrix,
    F2Vector,
    complete_basis,
    kernel_basis,
    parity,
    rank,
    span_rank,
    support,
)
from msring.schemas import FormModel


@lru_cache(maxsize=None)
def multisets(rho: int) -> tuple[tuple[int, int, int], ...]:
    """All 0-based multisets i <= j <= k in serialization order."""
    return tuple(combinations_with_replacement(range(rho), 3))


@lru_cache(maxsize=None)
def _bit_index(rho: int) -> dict[tuple[int, int, int], int]:
    keys = multisets(rho)
    n = len(keys)
    return {key: n - 1 - pos for pos, key in enumerate(keys)}


def multiset_bit(rho: int, i: int, j: int, k: int) -> int:
    """Bit position of the multiset {i, j, k} (0-based indices, any order)."""
    return _bit_index(rho)[tuple(sorted((i, j, k)))]


@dataclass(frozen=True)
class SymTrilinearForm:
    rank: int
    bits: int = 0

    def __post_init__(self):
        if self.rank < 0:
            raise DimensionMismatchError("Form rank must be non-negative")
        if self.bits < 0 or self.bits >> len(multisets(self.rank)):
            raise DimensionMismatchError(f"Bits do not fit a rank-{self.rank} form")

    @classmethod
    def from_triples(cls, rank: int, triples) -> "SymTrilinearForm":
        """Build from 0-based index triples whose value is 1; repeats cancel mod 2."""
        bits = 0
        for i, j, k in triples:
            for idx in (i, j, k):
                if not 0 <= idx < rank:
                    raise DimensionMismatchError(f"Index {idx} out of range for rank {rank}")
            bits ^= 1 << multiset_bit(rank, i, j, k)
        return cls(rank, bits)

    @classmethod
    def from_tensor(cls, tensor: np.ndarray) -> "SymTrilinearForm":
        rho = tensor.shape[0]
        bits = 0
        for i, j, k in multisets(rho):
            if int(tensor[i, j, k]) & 1:
                bits |= 1 << multiset_bit(rho, i, j, k)
        return cls(rho, bits)

    def value(self, i: int, j: int, k: int) -> int:
        return (self.bits >> multiset_bit(self.rank, i, j, k)) & 1

    def triples(self) -> list[tuple[int, int, int]]:
        """0-based multisets with value 1, in serialization order."""
        return [key for key in multisets(self.rank) if self.value(*key)]

    @cached_property
    def tensor(self) -> np.ndarray:
        t = np.zeros((self.rank,) * 3, dtype=np.int64)
        for key in self.triples():
            for perm in set(permutations(key)):
                t[perm] = 1
        return t

    @cached_property
    def _rows(self) -> tuple[tuple[int, ...], ...]:
        # _rows[i][j] is the bitset of k with nu(e_i, e_j, e_k) = 1
        rho = self.rank
        rows = [[0] * rho for _ in range(rho)]
        for i, j, k in self.triples():
            for a, b, c in set(permutations((i, j, k))):
                rows[a][b] |= 1 << c
        return tuple(tuple(r) for r in rows)

    def eval_bits(self, x: int, y: int, z: int) -> int:
        acc = 0
        for i in support(x):
            row = self._rows[i]
            for j in support(y):
                acc ^= row[j] & z
        return parity(acc)

    def __str__(self) -> str:
        shown = " ".join("{" + ",".join(str(v + 1) for v in key) + "}" for key in self.triples())
        return f"rank {self.rank}: {shown or '0'}"


@dataclass(frozen=True)
class MsDescriptor:
    form: SymTrilinearForm
    w: F2Vector

    def __post_init__(self):
        if self.w.dim != self.form.rank:
            raise DimensionMismatchError(f"w has dimension {self.w.dim}, form has rank {self.form.rank}")

    @property
    def rank(self) -> int:
        return self.form.rank

    @property
    def orientable(self) -> bool:
        return self.w.is_zero()


def _check_vectors(f: SymTrilinearForm, *vectors: F2Vector) -> None:
    for v in vectors:
        if v.dim != f.rank:
            raise DimensionMismatchError(f"Vector of dimension {v.dim} used with a rank-{f.rank} form")


def evaluate(f: SymTrilinearForm, x: F2Vector, y: F2Vector, z: F2Vector) -> int:
    """nu(x, y, z): the trilinear expansion sum x_i y_j z_k f{i,j,k} mod 2."""
    _check_vectors(f, x, y, z)
    if f.rank == 0:
        return 0
    vx, vy, vz = (np.array(v.to_list(), dtype=np.int64) for v in (x, y, z))
    return int(np.einsum("i,j,k,ijk->", vx, vy, vz, f.tensor)) & 1


def pw_violations(f: SymTrilinearForm, w: F2Vector) -> list[tuple[int, int]]:
    """1-based basis pairs (i <= j) where w e_i e_j != e_i^2 e_j + e_i e_j^2."""
    _check_vectors(f, w)
    bad = []
    for i in range(f.rank):
        for j in range(i, f.rank):
            lhs = f.eval_bits(w.bits, 1 << i, 1 << j)
            rhs = 0 if i == j else f.value(i, i, j) ^ f.value(i, j, j)
            if lhs != rhs:
                bad.append((i + 1, j + 1))
    return bad


def check_pw(f: SymTrilinearForm, w: F2Vector) -> bool:
    """Postnikov-Wu identity w x y = x^2 y + x y^2, checked on basis pairs."""
    return not pw_violations(f, w)


def require_pw(d: MsDescriptor) -> None:
    bad = pw_violations(d.form, d.w)
    if bad:
        raise PostnikovWuError(bad)


def squaring_matrix(f: SymTrilinearForm) -> F2Matrix:
    """Q with Q[j][i] = f{i,i,j}: column i is x_i^2 as a functional on A^1."""
    rho = f.rank
    rows = []
    for j in range(rho):
        row = 0
        for i in range(rho):
            if f.value(i, i, j):
                row |= 1 << i
        rows.append(row)
    return F2Matrix(rho, rho, tuple(rows))


def square_functional(f: SymTrilinearForm, x: F2Vector) -> F2Vector:
    _check_vectors(f, x)
    return squaring_matrix(f) @ x


def cube_functional(f: SymTrilinearForm) -> F2Vector:
    bits = 0
    for i in range(f.rank):
        if f.value(i, i, i):
            bits |= 1 << i
    return F2Vector(f.rank, bits)


def w_pairing_matrix(f: SymTrilinearForm, w: F2Vector) -> F2Matrix:
    """W[i][j] = nu(w, e_i, e_j); alternating whenever Postnikov-Wu holds."""
    _check_vectors(f, w)
    rows = []
    for i in range(f.rank):
        row = 0
        for l in support(w.bits):
            row ^= f._rows[l][i]
        rows.append(row)
    return F2Matrix(f.rank, f.rank, tuple(rows))


def pullback_tensor(tensor: np.ndarray, g: F2Matrix) -> np.ndarray:
    """T'[a,b,c] = sum g[i,a] g[j,b] g[k,c] T[i,j,k] mod 2."""
    mat = np.array(g.to_lists(), dtype=np.int64)
    return np.einsum("ia,jb,kc,ijk->abc", mat, mat, mat, tensor, optimize=True) % 2


def pullback(f: SymTrilinearForm, g: F2Matrix) -> SymTrilinearForm:
    """The form (x, y, z) -> f(gx, gy, gz); a right action of GL(rho, 2)."""
    if g.rows != f.rank or g.cols != f.rank:
        raise DimensionMismatchError(f"Basis change of size {g.rows}x{g.cols} for rank {f.rank}")
    if not g.is_invertible():
        raise SingularMatrixError("Pullback needs an invertible basis change")
    if f.rank == 0 or f.bits == 0:
        return f
    return SymTrilinearForm.from_tensor(pullback_tensor(f.tensor, g))


def pullback_operator(g: F2Matrix) -> tuple[int, ...]:
    """
    The pullback by g as a linear map on form bits: entry b is the image of
    the form whose only nonzero bit is b. Applying it to a form is an XOR of
    the entries selected by the form's bits.
    """
    rho = g.rows
    images = [0] * len(multisets(rho))
    for key in multisets(rho):
        bit = multiset_bit(rho, *key)
        images[bit] = pullback(SymTrilinearForm(rho, 1 << bit), g).bits
    return tuple(images)


def apply_operator(op: tuple[int, ...], bits: int) -> int:
    out = 0
    while bits:
        low = bits & -bits
        out ^= op[low.bit_length() - 1]
        bits ^= low
    return out


def transport(d: MsDescriptor, g: F2Matrix) -> MsDescriptor:
    """Rewrite d in the basis given by the columns of g; w moves by g^-1."""
    return MsDescriptor(pullback(d.form, g), g.inverse() @ d.w)


def _sym_pairs(rho: int) -> list[tuple[int, int]]:
    return [(i, j) for i in range(rho) for j in range(i, rho)]


def _cup_matrix(f: SymTrilinearForm) -> F2Matrix:
    # rows: x_i ⊙ x_j (i <= j); columns: the functional z -> nu(x_i, x_j, z)
    rows = tuple(f._rows[i][j] for i, j in _sym_pairs(f.rank)) if f.rank else ()
    return F2Matrix(len(rows), f.rank, rows)


def cup_kernel_dim(f: SymTrilinearForm) -> int:
    """Dimension of the kernel of the cup product map ⊙^2 A^1 -> A^2."""
    m = _cup_matrix(f)
    return m.rows - rank(m)


def cup_kernel_basis(f: SymTrilinearForm) -> list[list[tuple[int, int]]]:
    """Kernel generators as lists of 1-based pairs (i, j), meaning the sum of x_i ⊙ x_j."""
    pairs = _sym_pairs(f.rank)
    m = _cup_matrix(f)
    out = []
    for vec in kernel_basis(m.transpose()):
        out.append([(pairs[p][0] + 1, pairs[p][1] + 1) for p in support(vec.bits)])
    return out


def cube_vanishes(f: SymTrilinearForm) -> bool:
    """
    Whether x^3 = 0 for every x in A^1.

    As a function of x, nu(x, x, x) = sum_i x_i f{i,i,i} + sum_{i<j} x_i x_j (f{i,i,j} + f{i,j,j})
    mod 2, and a multilinear polynomial over F2 is zero exactly when all its
    coefficients are. The basis cubes alone are not enough once w != 0.
    """
    if not cube_functional(f).is_zero():
        return False
    return all(f.value(i, i, j) == f.value(i, j, j) for i in range(f.rank) for j in range(i + 1, f.rank))


def invariants(d: MsDescriptor) -> dict[str, int]:
    return {
        "sq_rank": rank(squaring_matrix(d.form)),
        "cup_kernel_dim": cup_kernel_dim(d.form),
        "cube_rank": 0 if cube_vanishes(d.form) else 1,
        "sigma": rank(w_pairing_matrix(d.form, d.w)),
    }


def connected_sum(a: MsDescriptor, b: MsDescriptor) -> MsDescriptor:
    """Block sum of the two forms with w = (w_a, w_b)."""
    rho = a.rank + b.rank
    shift = a.rank
    triples = list(a.form.triples())
    triples += [(i + shift, j + shift, k + shift) for i, j, k in b.form.triples()]
    w = F2Vector(rho, a.w.bits | (b.w.bits << shift))
    return MsDescriptor(SymTrilinearForm.from_triples(rho, triples), w)


def isomorphic(a: MsDescriptor, b: MsDescriptor) -> F2Matrix | None:
    """
    A witness g with pullback(b.form, g) == a.form and g a.w == b.w, or None.

    Small ranks compare canonical forms; larger ranks backtrack column by
    column after both w's have been moved to e_1.
    """
    if a.rank != b.rank or a.orientable != b.orientable:
        return None
    if a.rank == 0:
        return F2Matrix.identity(0)
    if invariants(a) != invariants(b):
        return None

    if a.rank <= config.MAX_CANONICAL_RANK:
        from msring.classify import canonical_with_witness

        canon_a, h_a = canonical_with_witness(a)
        canon_b, h_b = canonical_with_witness(b)
        if canon_a != canon_b:
            return None
        return h_b @ h_a.inverse()

    p_a = _w_frame(a)
    p_b = _w_frame(b)
    g = _backtrack(pullback(a.form, p_a), pullback(b.form, p_b), fix_first=not a.orientable)
    if g is None:
        return None
    return p_b @ g @ p_a.inverse()


def _w_frame(d: MsDescriptor) -> F2Matrix:
    """A basis change whose first column is w (identity when w = 0)."""
    if d.orientable:
        return F2Matrix.identity(d.rank)
    return F2Matrix.from_columns(complete_basis([d.w.bits], d.rank), d.rank)


def _backtrack(fa: SymTrilinearForm, fb: SymTrilinearForm, fix_first: bool) -> F2Matrix | None:
    rho = fa.rank
    by_top: list[list[tuple[int, int, int]]] = [[] for _ in range(rho)]
    for key in multisets(rho):
        by_top[key[2]].append(key)
    columns: list[int] = []

    def independent(candidate: int) -> bool:
        return span_rank(columns + [candidate], rho) == len(columns) + 1

    def extend(t: int) -> bool:
        if t == rho:
            return True
        options = [1] if (fix_first and t == 0) else range(1, 1 << rho)
        for cand in options:
            if not independent(cand):
                continue
            columns.append(cand)
            if all(fb.eval_bits(columns[i], columns[j], columns[k]) == fa.value(i, j, k) for i, j, k in by_top[t]):
                if extend(t + 1):
                    return True
            columns.pop()
        return False

    if not extend(0):
        return None
    return F2Matrix.from_columns(columns, rho)


def descriptor_from_model(model: FormModel) -> MsDescriptor:
    form = SymTrilinearForm.from_triples(model.rank, [(i - 1, j - 1, k - 1) for i, j, k in model.triples])
    return MsDescriptor(form, F2Vector.from_list(model.w))


def descriptor_to_model(d: MsDescriptor) -> FormModel:
    triples = [(i + 1, j + 1, k + 1) for i, j, k in d.form.triples()]
    return FormModel(rank=d.rank, w=d.w.to_list(), triples=triples)


def descriptor_from_json(text: str) -> MsDescriptor:
    return descriptor_from_model(FormModel.model_validate_json(text))


def descriptor_to_json(d: MsDescriptor) -> str:
    return descriptor_to_model(d).model_dump_json()
