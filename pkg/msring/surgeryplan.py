"""
LinkPlan: a framed link described by the tangle blocks it is built from,
and the evaluator that reads off the MS-descriptor of the surgered manifold.

Orientable plans live in S^3 and component i is basis vector e_i.
Nonorientable plans live in the twisted S^2-bundle over S^1; e_1 is
reserved for w and component i is e_{i+1}.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from itertools import combinations
from typing import Iterable

from msring.errors import OrientabilityMismatchError, PlanValidationError
from msring.f2core import F2Vector
from msring.msforms import MsDescriptor, SymTrilinearForm, multiset_bit
from msring.schemas import KbBlockModel, PlanModel

ALLOWED_FRAMINGS = (0, 2)


@dataclass(frozen=True, order=True)
class KbBlock:
    """Klein-bottle block on strands a and q; k and m set the cubes of a and q."""

    a: int
    q: int
    k: int = 0
    m: int = 0


@dataclass(frozen=True)
class LinkPlan:
    orientable: bool
    n: int
    framings: tuple[int, ...] = ()
    clasps: tuple[tuple[int, int], ...] = ()
    borromeans: tuple[tuple[int, int, int], ...] = ()
    rp2_blocks: tuple[int, ...] = ()
    kb_blocks: tuple[KbBlock, ...] = field(default_factory=tuple)

    def __post_init__(self):
        # clasps and borromeans are unordered; repeated entries stay for validate to report
        object.__setattr__(self, "framings", tuple(self.framings))
        object.__setattr__(self, "clasps", tuple(sorted(tuple(sorted(c)) for c in self.clasps)))
        object.__setattr__(self, "borromeans", tuple(sorted(tuple(sorted(b)) for b in self.borromeans)))
        object.__setattr__(self, "rp2_blocks", tuple(sorted(self.rp2_blocks)))
        object.__setattr__(self, "kb_blocks", tuple(sorted(self.kb_blocks)))

    @property
    def rank(self) -> int:
        return self.n if self.orientable else self.n + 1

    def basis_index(self, component: int) -> int:
        """0-based basis index of a 1-based component."""
        return component - 1 if self.orientable else component


@dataclass(frozen=True)
class EvalResult:
    descriptor: MsDescriptor


def make_plan(
    orientable: bool,
    n: int,
    framings: Iterable[int] | None = None,
    clasps: Iterable[Iterable[int]] = (),
    borromeans: Iterable[Iterable[int]] = (),
    rp2_blocks: Iterable[int] = (),
    kb_blocks: Iterable[KbBlock] = (),
) -> LinkPlan:
    return LinkPlan(
        orientable=orientable,
        n=n,
        framings=tuple(framings) if framings is not None else (0,) * n,
        clasps=tuple(tuple(c) for c in clasps),
        borromeans=tuple(tuple(b) for b in borromeans),
        rp2_blocks=tuple(rp2_blocks),
        kb_blocks=tuple(kb_blocks),
    )


def validate(p: LinkPlan) -> list[str]:
    violations: list[str] = []

    if p.n < 0:
        violations.append(f"component count {p.n} is negative")
    if len(p.framings) != p.n:
        violations.append(f"{len(p.framings)} framings given for {p.n} components")
    for c, fr in enumerate(p.framings, start=1):
        if fr not in ALLOWED_FRAMINGS:
            violations.append(f"framing {fr} on component {c} is not 0 or 2")

    def check_indices(label: str, entries: tuple[int, ...]) -> None:
        if any(not 1 <= c <= p.n for c in entries):
            violations.append(f"{label} {list(entries)} has an index outside 1..{p.n}")
        if len(set(entries)) != len(entries):
            violations.append(f"{label} {list(entries)} repeats a component")

    for label, entries in (("clasp", p.clasps), ("borromean", p.borromeans)):
        for entry in entries:
            check_indices(label, entry)
        for entry in sorted(set(entries)):
            if entries.count(entry) > 1:
                violations.append(f"{label} {list(entry)} listed more than once")

    if p.orientable and (p.rp2_blocks or p.kb_blocks):
        violations.append("orientable plan carries rp2 or kb blocks")

    owner: dict[int, str] = {}

    def claim(component: int, block: str) -> None:
        if component in owner:
            violations.append(f"component {component} belongs to both {owner[component]} and {block}")
        else:
            owner[component] = block

    for c in p.rp2_blocks:
        check_indices("rp2 block", (c,))
        claim(c, f"rp2 block {c}")
    for kb in p.kb_blocks:
        label = f"kb block ({kb.a},{kb.q})"
        check_indices(label, (kb.a, kb.q))
        if kb.k not in (0, 1) or kb.m not in (0, 1):
            violations.append(f"{label} has k={kb.k}, m={kb.m}; both must be 0 or 1")
        claim(kb.a, label)
        claim(kb.q, label)
        for c in (kb.a, kb.q):
            if 1 <= c <= len(p.framings) and p.framings[c - 1]:
                violations.append(f"component {c} in {label} has framing {p.framings[c - 1]}; kb strands take k and m")

    return violations


def require_valid(p: LinkPlan) -> None:
    violations = validate(p)
    if violations:
        raise PlanValidationError(violations)


def eval_plan(p: LinkPlan) -> EvalResult:
    """
    Superpose the block contributions, mod 2:

    cubes come from framings (kb strands from k and m); nu(i, i, j) counts a
    clasp on {i, j} plus a kb block with a = i and q = j; nu(i, j, k) counts a
    borromean move plus one more when two or three of its pairs are clasped;
    nu(w, w, i) marks rp2 strands and nu(w, i, j) marks kb pairs.
    """
    require_valid(p)
    rho = p.rank
    idx = p.basis_index
    bits = 0

    def toggle(i: int, j: int, k: int) -> None:
        nonlocal bits
        bits ^= 1 << multiset_bit(rho, i, j, k)

    kb_cubes = {}
    for kb in p.kb_blocks:
        kb_cubes[kb.a] = kb.k
        kb_cubes[kb.q] = kb.m
    for c in range(1, p.n + 1):
        cube = kb_cubes[c] if c in kb_cubes else p.framings[c - 1] // 2
        if cube:
            toggle(idx(c), idx(c), idx(c))

    clasped = set(p.clasps)
    for i, j in p.clasps:
        toggle(idx(i), idx(i), idx(j))
        toggle(idx(i), idx(j), idx(j))

    for i, j, k in combinations(range(1, p.n + 1), 3):
        hits = sum(pair in clasped for pair in ((i, j), (i, k), (j, k)))
        if hits >= 2:
            toggle(idx(i), idx(j), idx(k))
    for i, j, k in p.borromeans:
        toggle(idx(i), idx(j), idx(k))

    if not p.orientable:
        for c in p.rp2_blocks:
            toggle(0, 0, idx(c))
        for kb in p.kb_blocks:
            toggle(idx(kb.a), idx(kb.a), idx(kb.q))
            toggle(0, idx(kb.a), idx(kb.q))

    w = F2Vector.zero(rho) if p.orientable else F2Vector.unit(rho, 0)
    return EvalResult(MsDescriptor(SymTrilinearForm(rho, bits), w))


def splice(p1: LinkPlan, p2: LinkPlan) -> LinkPlan:
    """Disjoint union; p2's components are renumbered after p1's and w is shared."""
    if p1.orientable != p2.orientable:
        raise OrientabilityMismatchError("Cannot splice an orientable plan with a nonorientable one")
    s = p1.n
    return make_plan(
        orientable=p1.orientable,
        n=p1.n + p2.n,
        framings=p1.framings + p2.framings,
        clasps=list(p1.clasps) + [(i + s, j + s) for i, j in p2.clasps],
        borromeans=list(p1.borromeans) + [(i + s, j + s, k + s) for i, j, k in p2.borromeans],
        rp2_blocks=list(p1.rp2_blocks) + [c + s for c in p2.rp2_blocks],
        kb_blocks=list(p1.kb_blocks) + [replace(kb, a=kb.a + s, q=kb.q + s) for kb in p2.kb_blocks],
    )


def with_moves(
    p: LinkPlan,
    clasps: Iterable[Iterable[int]] = (),
    borromeans: Iterable[Iterable[int]] = (),
    framings: dict[int, int] | None = None,
) -> LinkPlan:
    new_framings = list(p.framings)
    for c, fr in (framings or {}).items():
        new_framings[c - 1] = fr
    return make_plan(
        orientable=p.orientable,
        n=p.n,
        framings=new_framings,
        clasps=list(p.clasps) + [tuple(c) for c in clasps],
        borromeans=list(p.borromeans) + [tuple(b) for b in borromeans],
        rp2_blocks=p.rp2_blocks,
        kb_blocks=p.kb_blocks,
    )


# catalogued tangles

def unknot_plan(framing: int = 0) -> LinkPlan:
    return make_plan(True, 1, framings=[framing])


def clasp_plan() -> LinkPlan:
    """Two components joined by one clasp; 0-framed surgery gives S^3/Q(8)."""
    return make_plan(True, 2, clasps=[(1, 2)])


def borromean_plan() -> LinkPlan:
    return make_plan(True, 3, borromeans=[(1, 2, 3)])


def figure3_plan() -> LinkPlan:
    return with_moves(make_plan(True, 3), clasps=[(2, 3)], borromeans=[(1, 2, 3)])


def figure4_plan() -> LinkPlan:
    return make_plan(True, 3, clasps=[(1, 3), (2, 3)])


def figure5_plan() -> LinkPlan:
    return make_plan(True, 3, clasps=[(1, 2), (1, 3), (2, 3)])


def rp2_plan() -> LinkPlan:
    return make_plan(False, 1, rp2_blocks=[1])


def kb_plan(k: int = 0, m: int = 0) -> LinkPlan:
    """S^1 x Kb for k = m = 0; k = m = 1 gives the Sol manifold."""
    return make_plan(False, 2, kb_blocks=[KbBlock(1, 2, k, m)])


def describe_blocks(p: LinkPlan) -> list[str]:
    out = []
    kb_strands = {c for kb in p.kb_blocks for c in (kb.a, kb.q)}
    for c, fr in enumerate(p.framings, start=1):
        if fr and c not in kb_strands:
            out.append(f"framing {fr} on component {c}")
    for i, j in p.clasps:
        out.append(f"L(2,4) clasp on ({i},{j})")
    for i, j, k in p.borromeans:
        out.append(f"Bo on ({i},{j},{k})")
    for c in p.rp2_blocks:
        out.append(f"S1xRP2 on component {c}")
    for kb in p.kb_blocks:
        name = "S1xKb" if kb.k == kb.m == 0 else f"Sol({kb.k},{kb.m})"
        out.append(f"{name} on ({kb.a},{kb.q})")
    return out


def plan_to_model(p: LinkPlan) -> PlanModel:
    return PlanModel(
        orientable=p.orientable,
        components=p.n,
        framings=list(p.framings),
        clasps=list(p.clasps),
        borromeans=list(p.borromeans),
        rp2_blocks=list(p.rp2_blocks),
        kb_blocks=[KbBlockModel(a=kb.a, q=kb.q, k=kb.k, m=kb.m) for kb in p.kb_blocks],
    )


def plan_from_model(model: PlanModel) -> LinkPlan:
    return make_plan(
        orientable=model.orientable,
        n=model.components,
        framings=model.framings,
        clasps=model.clasps,
        borromeans=model.borromeans,
        rp2_blocks=model.rp2_blocks,
        kb_blocks=[KbBlock(kb.a, kb.q, kb.k, kb.m) for kb in model.kb_blocks],
    )


def plan_to_json(p: LinkPlan) -> str:
    return plan_to_model(p).model_dump_json()


def plan_from_json(text: str) -> LinkPlan:
    return plan_from_model(PlanModel.model_validate_json(text))
