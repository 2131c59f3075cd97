"""Named fixtures: the small manifolds whose mod 2 rings anchor everything else."""

from __future__ import annotations

from dataclasses import dataclass

from msring.f2core import F2Vector
from msring.msforms import MsDescriptor, SymTrilinearForm
from msring.surgeryplan import (
    LinkPlan,
    clasp_plan,
    figure3_plan,
    figure4_plan,
    figure5_plan,
    kb_plan,
    make_plan,
    rp2_plan,
    unknot_plan,
)


@dataclass(frozen=True)
class CatalogueEntry:
    name: str
    title: str
    descriptor: MsDescriptor
    plan: LinkPlan | None


def _descriptor(rank: int, triples: list[str], nonorientable: bool = False) -> MsDescriptor:
    """Triples written as 1-based digit strings, e.g. "112"."""
    keys = [tuple(int(ch) - 1 for ch in t) for t in triples]
    w = F2Vector.unit(rank, 0) if nonorientable else F2Vector.zero(rank)
    return MsDescriptor(SymTrilinearForm.from_triples(rank, keys), w)


CATALOGUE: dict[str, CatalogueEntry] = {
    entry.name: entry
    for entry in (
        CatalogueEntry("s3", "3-sphere", _descriptor(0, []), make_plan(True, 0)),
        CatalogueEntry("rp3", "RP3 = L(2,1)", _descriptor(1, ["111"]), unknot_plan(2)),
        CatalogueEntry("s1xs2", "S1 x S2", _descriptor(1, []), unknot_plan(0)),
        # same ring as S1 x S2; needs framing 4, which plans do not carry
        CatalogueEntry("l41", "L(4,1)", _descriptor(1, []), None),
        CatalogueEntry("q8", "S3/Q(8)", _descriptor(2, ["112", "122"]), clasp_plan()),
        CatalogueEntry("rp3#rp3", "RP3 # RP3", _descriptor(2, ["111", "222"]), make_plan(True, 2, framings=[2, 2])),
        CatalogueEntry("mt-halfturn", "mapping torus of -I on T2", _descriptor(3, ["123", "223", "233"]), figure3_plan()),
        CatalogueEntry("fig4", "surgery on the two-clasp chain", _descriptor(3, ["113", "123", "133", "223", "233"]), figure4_plan()),
        CatalogueEntry(
            "fig5",
            "surgery on the three-clasp cycle",
            _descriptor(3, ["112", "113", "122", "123", "133", "223", "233"]),
            figure5_plan(),
        ),
        CatalogueEntry("s2xts1", "twisted S2 bundle over S1", _descriptor(1, [], nonorientable=True), make_plan(False, 0)),
        CatalogueEntry("s1xrp2", "S1 x RP2", _descriptor(2, ["112"], nonorientable=True), rp2_plan()),
        CatalogueEntry("s1xkb", "S1 x Kb", _descriptor(3, ["123", "223"], nonorientable=True), kb_plan(0, 0)),
        CatalogueEntry("sol", "Sol manifold", _descriptor(3, ["123", "222", "223", "333"], nonorientable=True), kb_plan(1, 1)),
    )
}


def get_entry(name: str) -> CatalogueEntry:
    try:
        return CATALOGUE[name]
    except KeyError:
        raise KeyError(f"Unknown catalogue entry {name!r}; known: {', '.join(CATALOGUE)}") from None
