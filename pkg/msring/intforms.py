"""
Torsion-free orientable theory: alternating integer 3-forms mu on H = Z^beta.

The cohomology ring is Z in degrees 0 and 3, H* in degree 1 and H in
degree 2, with r s the element of H given by t -> mu(r, s, t) and the
degree 1 x 2 product the evaluation r(h) eps3. Every mu is realized by
surgery on a link whose 3-component sublinks are trivial or Bo(n); the
coefficient of e_ijk is the cable parameter n of the sublink on i, j, k.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from math import comb
from typing import Mapping, Sequence

import galois
import numpy as np

from msring.errors import DimensionMismatchError, MsringError, PlanValidationError, UnsupportedFieldError, UnsupportedRankError
from msring.f2core import F2Vector
from msring.msforms import MsDescriptor, SymTrilinearForm
from msring.schemas import AltFormModel, BoPlanModel

SUPPORTED_PRIMES = (3, 5)
MAX_STANDARD_BETA = 5


@dataclass(frozen=True)
class AltForm:
    """coeffs holds ((i, j, k), n) for 0-based i < j < k and n != 0, sorted."""

    beta: int
    coeffs: tuple[tuple[tuple[int, int, int], int], ...] = ()

    @classmethod
    def from_mapping(cls, beta: int, mapping: Mapping[tuple[int, int, int], int]) -> "AltForm":
        if beta < 0:
            raise DimensionMismatchError("beta must be non-negative")
        clean = {}
        for key, n in mapping.items():
            i, j, k = key
            if not 0 <= i < j < k < beta:
                raise DimensionMismatchError(f"Triple {key} is not strictly increasing inside 0..{beta - 1}")
            if n:
                clean[key] = int(n)
        return cls(beta, tuple(sorted(clean.items())))

    @classmethod
    def basis_form(cls, beta: int, i: int, j: int, k: int, n: int = 1) -> "AltForm":
        return cls.from_mapping(beta, {(i, j, k): n})

    def coeff(self, i: int, j: int, k: int) -> int:
        return dict(self.coeffs).get((i, j, k), 0)

    @cached_property
    def tensor(self) -> np.ndarray:
        t = np.zeros((self.beta,) * 3, dtype=np.int64)
        for (i, j, k), n in self.coeffs:
            t[i, j, k] = t[j, k, i] = t[k, i, j] = n
            t[j, i, k] = t[i, k, j] = t[k, j, i] = -n
        return t

    def __str__(self) -> str:
        terms = [f"{n}*e{i + 1}{j + 1}{k + 1}" for (i, j, k), n in self.coeffs]
        return " + ".join(terms) if terms else "0"


def _as_vector(v: Sequence[int], beta: int) -> np.ndarray:
    arr = np.asarray(v, dtype=np.int64)
    if arr.shape != (beta,):
        raise DimensionMismatchError(f"Expected a vector of length {beta}, got shape {arr.shape}")
    return arr


def eval_alt(mu: AltForm, x: Sequence[int], y: Sequence[int], z: Sequence[int]) -> int:
    """Sum over i < j < k of coeff_ijk times the ijk minor of the matrix (x | y | z)."""
    vx, vy, vz = (_as_vector(v, mu.beta) for v in (x, y, z))
    if mu.beta == 0:
        return 0
    return int(np.einsum("i,j,k,ijk->", vx, vy, vz, mu.tensor))


@dataclass(frozen=True)
class BoPlan:
    """Surgery link with one Bo(n) sublink per record (i, j, k, n); indices 1-based."""

    m: int
    triples: tuple[tuple[int, int, int, int], ...] = ()


def validate_boplan(p: BoPlan) -> list[str]:
    violations = []
    seen = set()
    for i, j, k, n in p.triples:
        if not 1 <= i < j < k <= p.m:
            violations.append(f"Bo({n}) on ({i},{j},{k}) needs 1 <= i < j < k <= {p.m}")
        if (i, j, k) in seen:
            violations.append(f"more than one Bo sublink on ({i},{j},{k})")
        seen.add((i, j, k))
    return violations


def mu_of_boplan(p: BoPlan) -> AltForm:
    violations = validate_boplan(p)
    if violations:
        raise PlanValidationError(violations)
    return AltForm.from_mapping(p.m, {(i - 1, j - 1, k - 1): n for i, j, k, n in p.triples})


def realize_integral(mu: AltForm) -> BoPlan:
    return BoPlan(mu.beta, tuple((i + 1, j + 1, k + 1, n) for (i, j, k), n in mu.coeffs))


@dataclass(frozen=True)
class GradedRing:
    """
    products11[a, b] is e_a* e_b* in H (coordinates against e_1..e_beta);
    the degree 1 x 2 product is the evaluation pairing. modulus None means Z.
    """

    beta: int
    modulus: int | None
    products11: np.ndarray

    def _reduce(self, arr):
        return arr % self.modulus if self.modulus else arr

    def product11(self, r: Sequence[int], s: Sequence[int]) -> np.ndarray:
        vr, vs = _as_vector(r, self.beta), _as_vector(s, self.beta)
        return self._reduce(np.einsum("a,b,abc->c", vr, vs, self.products11))

    def product12(self, r: Sequence[int], h: Sequence[int]) -> int:
        """r h as a multiple of eps3."""
        return int(self._reduce(_as_vector(r, self.beta) @ _as_vector(h, self.beta)))

    def triple(self, r: Sequence[int], s: Sequence[int], t: Sequence[int]) -> int:
        """(r s) t as a multiple of eps3."""
        return self.product12(t, self.product11(r, s))

    def is_associative(self) -> bool:
        # (e_a e_b) e_c against e_a (e_b e_c) on every basis triple
        left = self._reduce(self.products11)
        right = self._reduce(np.transpose(self.products11, (2, 0, 1)))
        return bool(np.array_equal(left, right))

    def is_graded_commutative(self) -> bool:
        total = self._reduce(self.products11 + np.transpose(self.products11, (1, 0, 2)))
        return not total.any()


def build_ring(mu: AltForm, modulus: int | None = None) -> GradedRing:
    table = mu.tensor.copy()
    if modulus:
        table %= modulus
    return GradedRing(beta=mu.beta, modulus=modulus, products11=table)


@dataclass(frozen=True)
class StandardClass:
    label: str
    representative: AltForm


def _contraction_rank(mu: AltForm, p: int) -> int:
    pairs = list(combinations(range(mu.beta), 2))
    if not pairs:
        return 0
    matrix = np.array([[mu.tensor[x, j, k] % p for j, k in pairs] for x in range(mu.beta)], dtype=np.int64)
    field = galois.GF(p)
    return int(np.linalg.matrix_rank(field(matrix)))


def _check_field(p: int, beta: int) -> None:
    if p not in SUPPORTED_PRIMES:
        raise UnsupportedFieldError(f"Only F_p with p in {SUPPORTED_PRIMES} is supported, got p={p}")
    if beta > MAX_STANDARD_BETA:
        raise UnsupportedRankError(f"Standard forms are known here for beta <= {MAX_STANDARD_BETA}, got {beta}")


def standard_class_small_beta(mu: AltForm, p: int) -> StandardClass:
    """
    Classify mu over F_p by the rank of x -> mu(x, -, -). Up to GL(beta, p)
    the only forms for beta <= 5 are 0, e123 and e123 + e145, with
    contraction ranks 0, 3 and 5.
    """
    _check_field(p, mu.beta)
    r = _contraction_rank(mu, p)
    if r == 0:
        return StandardClass("zero", AltForm(mu.beta))
    if r == 3:
        return StandardClass("single-block", AltForm.basis_form(mu.beta, 0, 1, 2))
    if r == 5:
        return StandardClass("double-block", AltForm.from_mapping(mu.beta, {(0, 1, 2): 1, (0, 3, 4): 1}))
    raise MsringError(f"Contraction rank {r} does not occur for beta <= {MAX_STANDARD_BETA}")


def wedge_kernel_dim(mu: AltForm, p: int) -> int:
    """Dimension over F_p of the kernel of Lambda^2 H* -> H^2, r ^ s -> r s."""
    _check_field(p, mu.beta)
    return comb(mu.beta, 2) - _contraction_rank(mu, p)


def reduce_mod2(mu: AltForm) -> MsDescriptor:
    """Mod 2 ring: squares and cubes vanish, nu(i, j, k) = mu_ijk mod 2."""
    triples = [key for key, n in mu.coeffs if n % 2]
    return MsDescriptor(SymTrilinearForm.from_triples(mu.beta, triples), F2Vector.zero(mu.beta))


def altform_to_model(mu: AltForm) -> AltFormModel:
    return AltFormModel(beta=mu.beta, coeffs=[(i + 1, j + 1, k + 1, n) for (i, j, k), n in mu.coeffs])


def altform_from_model(model: AltFormModel) -> AltForm:
    return AltForm.from_mapping(model.beta, {(i - 1, j - 1, k - 1): n for i, j, k, n in model.coeffs})


def altform_to_json(mu: AltForm) -> str:
    return altform_to_model(mu).model_dump_json()


def altform_from_json(text: str) -> AltForm:
    return altform_from_model(AltFormModel.model_validate_json(text))


def boplan_to_json(p: BoPlan) -> str:
    return BoPlanModel(components=p.m, triples=list(p.triples)).model_dump_json()


def boplan_from_json(text: str) -> BoPlan:
    model = BoPlanModel.model_validate_json(text)
    return BoPlan(model.components, tuple(sorted(model.triples)))
