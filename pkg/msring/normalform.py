"""
Basis normalization for the two pairings an MS-algebra carries.

Orientable: B(x, y) = nu(x, x, y) is symmetric once Postnikov-Wu holds with
w = 0, and splits into [1] blocks, hyperbolic pairs and a radical.
Nonorientable: W(x, y) = nu(w, x, y) is alternating; it is brought to
symplectic shape with w kept as the first basis vector.
"""

from __future__ import annotations

from dataclasses import dataclass

from msring.errors import OrientabilityMismatchError
from msring.f2core import F2Matrix, F2Vector, complete_basis, parity, support
from msring.msforms import MsDescriptor, SymTrilinearForm, require_pw
from msring.schemas import NonorientableReportModel, NormalizeModel, OrientableReportModel


@dataclass(frozen=True)
class OrientableReport:
    a: int
    b: int
    c: int

    def to_model(self) -> OrientableReportModel:
        return OrientableReportModel(a=self.a, b=self.b, c=self.c)


@dataclass(frozen=True)
class NonorientableReport:
    sigma: int
    w_square_nonzero: bool
    pairs: tuple[tuple[int, int], ...]

    def to_model(self) -> NonorientableReportModel:
        return NonorientableReportModel(
            sigma=self.sigma,
            w_square_nonzero=self.w_square_nonzero,
            pairs=list(self.pairs),
        )


@dataclass(frozen=True)
class BasisChange:
    g: F2Matrix
    report: OrientableReport | NonorientableReport | None = None

    def to_model(self) -> NormalizeModel:
        report = self.report.to_model() if self.report is not None else None
        return NormalizeModel(basis_change=self.g.to_lists(), report=report)


class _Pairing:
    """A bilinear form over F2 given by rows[i] = bitset of j with B(e_i, e_j) = 1."""

    def __init__(self, rows: list[int]):
        self.rows = rows

    def __call__(self, x: int, y: int) -> int:
        acc = 0
        for i in support(x):
            acc ^= self.rows[i]
        return parity(acc & y)


def _square_pairing(f: SymTrilinearForm) -> _Pairing:
    return _Pairing([sum(1 << j for j in range(f.rank) if f.value(i, i, j)) for i in range(f.rank)])


def _w_pairing(f: SymTrilinearForm, w: F2Vector) -> _Pairing:
    rows = []
    for i in range(f.rank):
        rows.append(sum(1 << j for j in range(f.rank) if f.eval_bits(w.bits, 1 << i, 1 << j)))
    return _Pairing(rows)


def _split_hyperbolic(pairing: _Pairing, vectors: list[int]) -> tuple[list[tuple[int, int]], list[int]]:
    """Peel hyperbolic pairs off an alternating pairing; what is left is the radical."""
    rest = list(vectors)
    pairs = []
    while True:
        found = None
        for pos, u in enumerate(rest):
            for v in rest[pos + 1:]:
                if pairing(u, v):
                    found = (u, v)
                    break
            if found:
                break
        if found is None:
            return pairs, rest
        u, v = found
        rest = [x for x in rest if x not in (u, v)]
        rest = [x ^ (u if pairing(x, v) else 0) ^ (v if pairing(x, u) else 0) for x in rest]
        pairs.append((u, v))


def normalize_orientable(f: SymTrilinearForm) -> tuple[BasisChange, OrientableReport]:
    """Columns of g: the [1] blocks, then the hyperbolic pairs, then the radical."""
    require_pw(MsDescriptor(f, F2Vector.zero(f.rank)))
    pairing = _square_pairing(f)

    rest = [1 << i for i in range(f.rank)]
    diagonal = []
    while True:
        v = next((u for u in rest if pairing(u, u)), None)
        if v is None:
            break
        rest.remove(v)
        rest = [u ^ v if pairing(u, v) else u for u in rest]
        diagonal.append(v)

    pairs, radical = _split_hyperbolic(pairing, rest)

    # [1]+[1]+[1] is isometric to [1]+H; keep at most two [1] blocks
    while len(diagonal) >= 3:
        u1, u2, u3 = diagonal[:3]
        diagonal = [u1 ^ u2 ^ u3] + diagonal[3:]
        pairs.insert(0, (u1 ^ u2, u1 ^ u3))

    columns = diagonal + [x for pair in pairs for x in pair] + radical
    report = OrientableReport(a=len(diagonal), b=len(pairs), c=len(radical))
    return BasisChange(F2Matrix.from_columns(columns, f.rank), report), report


def normalize_nonorientable(f: SymTrilinearForm, w: F2Vector) -> tuple[BasisChange, NonorientableReport]:
    """
    Put W(x, y) = nu(w, x, y) in symplectic shape with e_1 = w.

    When w^2 != 0 the first pair is (w, y) for the lowest y with W(w, y) = 1.
    Every remaining vector is then cleared against the pair with the
    substitution x -> x + W(x, y) w + W(x, w) y.
    """
    if w.is_zero():
        raise OrientabilityMismatchError("normalize_nonorientable needs w != 0; use normalize_orientable")
    require_pw(MsDescriptor(f, w))
    pairing = _w_pairing(f, w)

    rest = complete_basis([w.bits], f.rank)[1:]
    columns = [w.bits]
    pairs: list[tuple[int, int]] = []

    partner = next((y for y in rest if pairing(w.bits, y)), None)
    w_square_nonzero = partner is not None
    if w_square_nonzero:
        rest.remove(partner)
        rest = [x ^ (w.bits if pairing(x, partner) else 0) ^ (partner if pairing(x, w.bits) else 0) for x in rest]
        columns.append(partner)
        pairs.append((1, 2))

    hyperbolic, radical = _split_hyperbolic(pairing, rest)
    for u, v in hyperbolic:
        columns.extend((u, v))
        pairs.append((len(columns) - 1, len(columns)))
    columns.extend(radical)

    report = NonorientableReport(sigma=2 * len(pairs), w_square_nonzero=w_square_nonzero, pairs=tuple(pairs))
    return BasisChange(F2Matrix.from_columns(columns, f.rank), report), report


def normalize(d: MsDescriptor) -> BasisChange:
    if d.orientable:
        return normalize_orientable(d.form)[0]
    return normalize_nonorientable(d.form, d.w)[0]
