"""
Wire models for every JSON document msring reads or writes.

Indices on the wire are 1-based. Parsers normalize ordering so that
serializing a parsed document reproduces sorted input byte for byte.
"""

from __future__ import annotations

from typing import Literal

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator


class WireModel(BaseModel):
    model_config = ConfigDict(extra="forbid")


class FormModel(WireModel):
    rank: int = Field(ge=0)
    w: list[int]
    triples: list[tuple[int, int, int]] = Field(default_factory=list)

    @field_validator("w")
    @classmethod
    def _bits_only(cls, value: list[int]) -> list[int]:
        if any(b not in (0, 1) for b in value):
            raise ValueError("w entries must be 0 or 1")
        return value

    @model_validator(mode="after")
    def _check_indices(self) -> "FormModel":
        if len(self.w) != self.rank:
            raise ValueError(f"w has {len(self.w)} entries for rank {self.rank}")
        seen = set()
        for triple in self.triples:
            if not all(1 <= idx <= self.rank for idx in triple):
                raise ValueError(f"Triple {list(triple)} has an index outside 1..{self.rank}")
            key = tuple(sorted(triple))
            if key in seen:
                raise ValueError(f"Triple {list(key)} listed twice")
            seen.add(key)
        self.triples = sorted(seen)
        return self


class KbBlockModel(WireModel):
    a: int
    q: int
    k: int
    m: int


class PlanModel(WireModel):
    orientable: bool
    components: int = Field(ge=0)
    framings: list[int]
    clasps: list[tuple[int, int]] = Field(default_factory=list)
    borromeans: list[tuple[int, int, int]] = Field(default_factory=list)
    rp2_blocks: list[int] = Field(default_factory=list)
    kb_blocks: list[KbBlockModel] = Field(default_factory=list)


class OrientableReportModel(WireModel):
    kind: Literal["orientable"] = "orientable"
    a: int
    b: int
    c: int


class NonorientableReportModel(WireModel):
    kind: Literal["nonorientable"] = "nonorientable"
    sigma: int
    w_square_nonzero: bool
    pairs: list[tuple[int, int]]


class NormalizeModel(WireModel):
    basis_change: list[list[int]]
    report: OrientableReportModel | NonorientableReportModel | None = None


class InvariantsModel(WireModel):
    sq_rank: int
    cup_kernel_dim: int
    sigma: int
    cube_rank: int


class CensusClassModel(WireModel):
    representative: FormModel
    orbit_size: int
    invariants: InvariantsModel


class CensusModel(WireModel):
    rho: int
    w_class: Literal["zero", "nonzero"]
    classes: list[CensusClassModel]


class AltFormModel(WireModel):
    beta: int = Field(ge=0)
    coeffs: list[tuple[int, int, int, int]] = Field(default_factory=list)

    @model_validator(mode="after")
    def _check_coeffs(self) -> "AltFormModel":
        seen: dict[tuple[int, int, int], int] = {}
        for i, j, k, n in self.coeffs:
            if not 1 <= i < j < k <= self.beta:
                raise ValueError(f"Coefficient index ({i},{j},{k}) must satisfy 1 <= i < j < k <= {self.beta}")
            if n == 0:
                raise ValueError(f"Coefficient for ({i},{j},{k}) must be nonzero")
            if (i, j, k) in seen:
                raise ValueError(f"Coefficient ({i},{j},{k}) listed twice")
            seen[(i, j, k)] = n
        self.coeffs = [(*key, seen[key]) for key in sorted(seen)]
        return self


class BoPlanModel(WireModel):
    components: int = Field(ge=0)
    triples: list[tuple[int, int, int, int]] = Field(default_factory=list)
