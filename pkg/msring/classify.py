"""
Census of MS-algebras at small rank.

For a fixed w the Postnikov-Wu identity is a set of linear conditions on the
bits of a form, so the valid forms are a subspace. Isomorphism classes are
orbits of that subspace under the stabilizer of w, found by BFS over the
generator action. Forms are compared by their integer bits, which orders
them exactly as their serialized bit strings.
"""

from __future__ import annotations

from collections import deque
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator

from msring import config
from msring.errors import DimensionMismatchError, UnsupportedRankError
from msring.f2core import F2Matrix, F2Vector, complete_basis, group_generators, kernel_basis
from msring.msforms import (
    MsDescriptor,
    SymTrilinearForm,
    apply_operator,
    descriptor_to_model,
    invariants,
    multiset_bit,
    multisets,
    pullback_operator,
    transport,
)
from msring.schemas import CensusClassModel, CensusModel, InvariantsModel

W_CLASSES = ("zero", "nonzero")


@dataclass(frozen=True)
class SolutionSpace:
    rho: int
    w: F2Vector
    basis: tuple[int, ...]

    @property
    def dimension(self) -> int:
        return len(self.basis)

    @property
    def size(self) -> int:
        return 1 << len(self.basis)

    def members(self) -> Iterator[int]:
        """Every valid form as bits, in Gray-code order starting from 0."""
        current = 0
        yield current
        for step in range(1, self.size):
            flip = (step & -step).bit_length() - 1
            current ^= self.basis[flip]
            yield current


@dataclass(frozen=True)
class Census:
    rho: int
    w_class: str
    representatives: tuple[MsDescriptor, ...]
    orbit_sizes: tuple[int, ...]

    @property
    def class_count(self) -> int:
        return len(self.representatives)


def _pw_constraints(rho: int, w: F2Vector) -> F2Matrix:
    # one row per basis pair (i <= j); column b is form bit b
    rows = []
    for i in range(rho):
        for j in range(i, rho):
            row = 0
            for l in range(rho):
                if w[l]:
                    row ^= 1 << multiset_bit(rho, l, i, j)
            if i != j:
                row ^= 1 << multiset_bit(rho, i, i, j)
                row ^= 1 << multiset_bit(rho, i, j, j)
            rows.append(row)
    return F2Matrix(len(rows), len(multisets(rho)), tuple(rows))


def enumerate_pw(rho: int, w: F2Vector) -> SolutionSpace:
    if not 0 <= rho <= config.CENSUS_RANK_CEILING:
        raise UnsupportedRankError(f"Solution spaces are enumerated for 0 <= rho <= {config.CENSUS_RANK_CEILING}, got {rho}")
    if w.dim != rho:
        raise DimensionMismatchError(f"w has dimension {w.dim}, expected {rho}")
    basis = tuple(v.bits for v in kernel_basis(_pw_constraints(rho, w)))
    return SolutionSpace(rho, w, basis)


def standard_w(rho: int, w_class: str) -> F2Vector:
    if w_class not in W_CLASSES:
        raise ValueError(f"w_class must be one of {W_CLASSES}, got {w_class!r}")
    return F2Vector.zero(rho) if w_class == "zero" else F2Vector.unit(rho, 0)


@lru_cache(maxsize=None)
def _stabilizer_action(rho: int, orientable: bool) -> tuple[tuple[F2Matrix, tuple[int, ...]], ...]:
    fixed = None if orientable else F2Vector.unit(rho, 0)
    return tuple((g, pullback_operator(g)) for g in group_generators(rho, fixed))


def canonical_with_witness(d: MsDescriptor) -> tuple[MsDescriptor, F2Matrix]:
    """
    The orbit-minimal form with w moved to e_1, and h with
    pullback(d.form, h) equal to it and h e_1 = d.w.
    """
    rho = d.rank
    if rho > config.MAX_CANONICAL_RANK:
        raise UnsupportedRankError(f"Canonical forms are computed up to rank {config.MAX_CANONICAL_RANK}, got {rho}")
    if rho == 0:
        return d, F2Matrix.identity(0)

    if d.orientable:
        frame = F2Matrix.identity(rho)
    else:
        frame = F2Matrix.from_columns(complete_basis([d.w.bits], rho), rho)
    start = transport(d, frame)
    action = _stabilizer_action(rho, d.orientable)

    parent: dict[int, tuple[int, int] | None] = {start.form.bits: None}
    queue = deque([start.form.bits])
    best = start.form.bits
    while queue:
        x = queue.popleft()
        best = min(best, x)
        for gen_index, (_, op) in enumerate(action):
            y = apply_operator(op, x)
            if y not in parent:
                parent[y] = (x, gen_index)
                queue.append(y)

    # pullback by g1 then g2 equals pullback by g1 g2, so the path multiplies left to right
    path = []
    node = best
    while parent[node] is not None:
        node, gen_index = parent[node]
        path.append(action[gen_index][0])
    h = frame
    for g in reversed(path):
        h = h @ g
    return MsDescriptor(SymTrilinearForm(rho, best), start.w), h


def canonical(d: MsDescriptor) -> MsDescriptor:
    return canonical_with_witness(d)[0]


class UnionFind:
    def __init__(self, items):
        self.parent = {x: x for x in items}
        self.rank = {x: 0 for x in items}

    def find(self, x):
        y = self.parent[x]
        if self.parent[y] != y:
            y = self.parent[x] = self.find(y)
        return y

    def union(self, x, y):
        x, y = self.find(x), self.find(y)
        if x == y:
            return
        if self.rank[x] < self.rank[y]:
            x, y = y, x
        elif self.rank[x] == self.rank[y]:
            self.rank[x] += 1
        self.parent[y] = x
        del self.rank[y]


def _orbit_edges(rho: int, orientable: bool, chunk: list[int]) -> list[tuple[int, int]]:
    action = _stabilizer_action(rho, orientable)
    edges = []
    for x in chunk:
        for _, op in action:
            y = apply_operator(op, x)
            if y != x:
                edges.append((x, y))
    return edges


def _orbits_bfs(members: list[int], action) -> list[tuple[int, int]]:
    seen: set[int] = set()
    orbits = []
    for seed in members:
        if seed in seen:
            continue
        seen.add(seed)
        queue = deque([seed])
        size = 0
        while queue:
            x = queue.popleft()
            size += 1
            for _, op in action:
                y = apply_operator(op, x)
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
        # members are ascending, so the seed is the smallest element of its orbit
        orbits.append((seed, size))
    return orbits


def _orbits_sharded(members: list[int], rho: int, orientable: bool, workers: int) -> list[tuple[int, int]]:
    step = -(-len(members) // workers)
    chunks = [members[i:i + step] for i in range(0, len(members), step)]
    uf = UnionFind(members)
    with ProcessPoolExecutor(max_workers=workers) as pool:
        for edges in pool.map(_orbit_edges, [rho] * len(chunks), [orientable] * len(chunks), chunks):
            for x, y in edges:
                uf.union(x, y)
    groups: dict[int, list[int]] = {}
    for x in members:
        groups.setdefault(uf.find(x), []).append(x)
    return sorted((min(group), len(group)) for group in groups.values())


def census(rho: int, w_class: str, parallel: int = 1) -> Census:
    if not 1 <= rho <= config.MAX_CENSUS_RANK:
        raise UnsupportedRankError(f"Census is supported for 1 <= rho <= {config.MAX_CENSUS_RANK}, got {rho}")
    w = standard_w(rho, w_class)
    space = enumerate_pw(rho, w)
    members = sorted(space.members())
    config.log("census", f"rho={rho} w={w_class} dimension={space.dimension} forms={len(members)} workers={parallel}")

    if parallel > 1 and len(members) > 1:
        orbits = _orbits_sharded(members, rho, w_class == "zero", parallel)
    else:
        orbits = _orbits_bfs(members, _stabilizer_action(rho, w_class == "zero"))

    result = Census(
        rho=rho,
        w_class=w_class,
        representatives=tuple(MsDescriptor(SymTrilinearForm(rho, bits), w) for bits, _ in orbits),
        orbit_sizes=tuple(size for _, size in orbits),
    )
    config.log("census", f"rho={rho} w={w_class} classes={result.class_count}")
    return result


def census_to_model(c: Census) -> CensusModel:
    classes = []
    for rep, size in zip(c.representatives, c.orbit_sizes):
        classes.append(
            CensusClassModel(
                representative=descriptor_to_model(rep),
                orbit_size=size,
                invariants=InvariantsModel(**invariants(rep)),
            )
        )
    return CensusModel(rho=c.rho, w_class=c.w_class, classes=classes)


def census_to_json(c: Census) -> str:
    return census_to_model(c).model_dump_json()
