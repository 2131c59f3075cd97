"""Compile a Postnikov-Wu descriptor into a LinkPlan that evaluates back to it."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from msring import config
from msring.errors import PostnikovWuError
from msring.f2core import F2Matrix
from msring.msforms import MsDescriptor, SymTrilinearForm, multisets, require_pw, transport
from msring.normalform import BasisChange, normalize_nonorientable
from msring.surgeryplan import KbBlock, LinkPlan, describe_blocks, eval_plan, make_plan


@dataclass(frozen=True)
class RoundtripResult:
    ok: bool
    mismatch: str | None = None


@dataclass(frozen=True)
class RealizeReport:
    plan: LinkPlan
    basis_change: BasisChange
    blocks: list[str]


def _clasp_triples(n: int, clasps: set[tuple[int, int]]) -> set[tuple[int, int, int]]:
    out = set()
    for i, j, k in combinations(range(1, n + 1), 3):
        if sum(pair in clasps for pair in ((i, j), (i, k), (j, k))) >= 2:
            out.add((i, j, k))
    return out


def _assemble(
    t: SymTrilinearForm,
    orientable: bool,
    n: int,
    rp2_blocks: list[int],
    kb_blocks: list[KbBlock],
) -> LinkPlan:
    """
    Framings, then clasps, then borromean corrections. Each stage only
    touches entries the later stages leave alone, so one pass suffices.
    """
    shift = 0 if orientable else 1

    def value(*components: int) -> int:
        return t.value(*(c - 1 + shift for c in components))

    kb_strands = {c for kb in kb_blocks for c in (kb.a, kb.q)}
    kb_roles = {(kb.a, kb.q) for kb in kb_blocks}

    framings = [0 if c in kb_strands else 2 * value(c, c, c) for c in range(1, n + 1)]
    clasps = set()
    for i, j in combinations(range(1, n + 1), 2):
        if value(i, i, j) ^ ((i, j) in kb_roles):
            clasps.add((i, j))
    induced = _clasp_triples(n, clasps)
    borromeans = [(i, j, k) for i, j, k in combinations(range(1, n + 1), 3) if value(i, j, k) ^ ((i, j, k) in induced)]

    return make_plan(
        orientable=orientable,
        n=n,
        framings=framings,
        clasps=clasps,
        borromeans=borromeans,
        rp2_blocks=rp2_blocks,
        kb_blocks=kb_blocks,
    )


def realize(d: MsDescriptor) -> tuple[LinkPlan, BasisChange]:
    require_pw(d)
    if d.orientable:
        plan = _assemble(d.form, True, d.rank, [], [])
        change = BasisChange(F2Matrix.identity(d.rank), None)
    else:
        change, report = normalize_nonorientable(d.form, d.w)
        t = transport(d, change.g).form
        rp2_blocks = []
        kb_blocks = []
        for p, q in report.pairs:
            if p == 1:
                # (w, x_2): w^2 != 0
                rp2_blocks.append(q - 1)
                continue
            a, b = (p, q) if t.value(p - 1, p - 1, q - 1) else (q, p)
            kb_blocks.append(KbBlock(a - 1, b - 1, t.value(a - 1, a - 1, a - 1), t.value(b - 1, b - 1, b - 1)))
        plan = _assemble(t, False, d.rank - 1, rp2_blocks, kb_blocks)

    config.log(
        "realize",
        f"rho={d.rank} orientable={d.orientable} components={plan.n} "
        f"clasps={len(plan.clasps)} borromeans={len(plan.borromeans)} "
        f"rp2={len(plan.rp2_blocks)} kb={len(plan.kb_blocks)}",
    )
    return plan, change


def roundtrip(d: MsDescriptor) -> RoundtripResult:
    """Realize d, evaluate the plan and compare with d in the recorded basis."""
    try:
        plan, change = realize(d)
    except PostnikovWuError as exc:
        return RoundtripResult(False, str(exc))
    expected = transport(d, change.g)
    got = eval_plan(plan).descriptor
    if got.rank != expected.rank:
        return RoundtripResult(False, f"rank {got.rank} != {expected.rank}")
    if got.w != expected.w:
        return RoundtripResult(False, f"w {got.w} != {expected.w}")
    for key in multisets(expected.rank):
        if got.form.value(*key) != expected.form.value(*key):
            shown = "{" + ",".join(str(i + 1) for i in key) + "}"
            return RoundtripResult(False, f"multiset {shown}: expected {expected.form.value(*key)}, got {got.form.value(*key)}")
    return RoundtripResult(True)


def realize_report(d: MsDescriptor) -> RealizeReport:
    plan, change = realize(d)
    return RealizeReport(plan=plan, basis_change=change, blocks=describe_blocks(plan))
