import json
import random
import unittest

from msring import config
from msring.classify import canonical, canonical_with_witness, census, census_to_json, enumerate_pw
from msring.errors import UnsupportedRankError
from msring.f2core import F2Matrix, F2Vector
from msring.msforms import MsDescriptor, SymTrilinearForm, invariants, pullback, transport
from msring.realize import roundtrip

from oracles import iter_gl, orbit_count_brute, pullback_by_expansion, pw_forms_brute


def form(rank: int, *triples: str) -> SymTrilinearForm:
    return SymTrilinearForm.from_triples(rank, [tuple(int(c) - 1 for c in t) for t in triples])


def random_invertible(rng: random.Random, rho: int) -> F2Matrix:
    while True:
        m = F2Matrix(rho, rho, tuple(rng.getrandbits(rho) for _ in range(rho)))
        if m.is_invertible():
            return m


class EnumerateTests(unittest.TestCase):
    def test_dimensions(self):
        expected_zero = {1: 1, 2: 3, 3: 7, 4: 14}
        expected_e1 = {1: 0, 2: 2, 3: 6, 4: 13}
        for rho, dim in expected_zero.items():
            self.assertEqual(enumerate_pw(rho, F2Vector.zero(rho)).dimension, dim)
        for rho, dim in expected_e1.items():
            self.assertEqual(enumerate_pw(rho, F2Vector.unit(rho, 0)).dimension, dim)

    def test_members_match_brute_force(self):
        for rho in (1, 2, 3):
            for w_bits in range(0, 1 << rho):
                w = F2Vector(rho, w_bits)
                self.assertEqual(sorted(enumerate_pw(rho, w).members()), pw_forms_brute(rho, w))

    def test_rank_limit(self):
        with self.assertRaises(UnsupportedRankError):
            enumerate_pw(6, F2Vector.zero(6))


class CanonicalTests(unittest.TestCase):
    def test_idempotent(self):
        rng = random.Random(53)
        for _ in range(100):
            rho = rng.randint(1, 4)
            w = F2Vector(rho, rng.getrandbits(rho))
            space = enumerate_pw(rho, w)
            bits = 0
            for b in space.basis:
                if rng.getrandbits(1):
                    bits ^= b
            c = canonical(MsDescriptor(SymTrilinearForm(rho, bits), w))
            self.assertEqual(canonical(c), c)

    def test_swap_gives_same_canonical(self):
        q8 = MsDescriptor(form(2, "112", "122"), F2Vector.zero(2))
        swapped = transport(q8, F2Matrix.from_lists([[0, 1], [1, 0]]))
        self.assertEqual(canonical(q8), canonical(swapped))

    def test_halfturn_and_figure5_share_a_ring(self):
        mt = MsDescriptor(form(3, "223", "233", "123"), F2Vector.zero(3))
        fig5 = MsDescriptor(form(3, "112", "122", "113", "133", "223", "233", "123"), F2Vector.zero(3))
        self.assertEqual(canonical(mt), canonical(fig5))
        self.assertTrue(any(pullback_by_expansion(fig5.form, g) == mt.form for g in iter_gl(3)))

    def test_separates_three_torus_and_halfturn(self):
        # T^3 has vanishing squares, the half-turn mapping torus does not
        t3 = MsDescriptor(form(3, "123"), F2Vector.zero(3))
        mt = MsDescriptor(form(3, "223", "233", "123"), F2Vector.zero(3))
        self.assertFalse(any(pullback_by_expansion(mt.form, g) == t3.form for g in iter_gl(3)))
        self.assertNotEqual(canonical(t3), canonical(mt))

    def test_witness(self):
        rng = random.Random(59)
        for _ in range(50):
            rho = rng.randint(1, 4)
            w = F2Vector(rho, rng.getrandbits(rho))
            space = enumerate_pw(rho, w)
            bits = 0
            for b in space.basis:
                if rng.getrandbits(1):
                    bits ^= b
            d = MsDescriptor(SymTrilinearForm(rho, bits), w)
            c, h = canonical_with_witness(d)
            self.assertEqual(pullback(d.form, h), c.form)
            self.assertEqual(h @ c.w, d.w)

    def test_constant_on_sampled_rank_four_orbits(self):
        rng = random.Random(61)
        w = F2Vector.unit(4, 0)
        space = enumerate_pw(4, w)
        for _ in range(30):
            bits = 0
            for b in space.basis:
                if rng.getrandbits(1):
                    bits ^= b
            d = MsDescriptor(SymTrilinearForm(4, bits), w)
            self.assertEqual(canonical(d), canonical(transport(d, random_invertible(rng, 4))))

    def test_rank_limit(self):
        with self.assertRaises(UnsupportedRankError):
            canonical(MsDescriptor(SymTrilinearForm(config.MAX_CANONICAL_RANK + 1), F2Vector.zero(config.MAX_CANONICAL_RANK + 1)))


class CensusTests(unittest.TestCase):
    def test_known_counts(self):
        self.assertEqual(census(1, "zero").class_count, 2)
        self.assertEqual(census(1, "nonzero").class_count, 1)
        self.assertEqual(census(2, "zero").class_count, 4)
        nonzero = census(2, "nonzero")
        self.assertEqual(nonzero.class_count, 3)
        self.assertEqual(sorted(nonzero.orbit_sizes), [1, 1, 2])

    def test_counts_match_full_group_scan(self):
        for rho in (1, 2, 3):
            for w_class in ("zero", "nonzero"):
                w = F2Vector.zero(rho) if w_class == "zero" else F2Vector.unit(rho, 0)
                self.assertEqual(census(rho, w_class).class_count, orbit_count_brute(rho, w), (rho, w_class))

    def test_orbit_sum_identity(self):
        for rho in range(1, 5):
            for w_class in ("zero", "nonzero"):
                result = census(rho, w_class)
                w = F2Vector.zero(rho) if w_class == "zero" else F2Vector.unit(rho, 0)
                self.assertEqual(sum(result.orbit_sizes), enumerate_pw(rho, w).size)

    def test_representatives_are_canonical_and_distinct(self):
        for rho in (1, 2, 3):
            for w_class in ("zero", "nonzero"):
                result = census(rho, w_class)
                for rep in result.representatives:
                    self.assertEqual(canonical(rep), rep)
                self.assertEqual(len({rep.form.bits for rep in result.representatives}), result.class_count)
                self.assertEqual([r.form.bits for r in result.representatives], sorted(r.form.bits for r in result.representatives))

    def test_invariants_constant_on_classes(self):
        rng = random.Random(67)
        for rho in (2, 3):
            for w_class in ("zero", "nonzero"):
                for rep in census(rho, w_class).representatives:
                    for _ in range(5):
                        moved = transport(rep, random_invertible(rng, rho))
                        self.assertEqual(invariants(moved), invariants(rep))

    def test_every_representative_realizes(self):
        for rho in range(1, 5):
            for w_class in ("zero", "nonzero"):
                for rep in census(rho, w_class).representatives:
                    self.assertTrue(roundtrip(rep).ok)

    def test_parallel_matches_serial(self):
        for rho, w_class in ((2, "nonzero"), (3, "zero"), (3, "nonzero")):
            self.assertEqual(census(rho, w_class, parallel=2), census(rho, w_class))

    def test_json_layout(self):
        payload = json.loads(census_to_json(census(1, "zero")))
        self.assertEqual(payload["rho"], 1)
        self.assertEqual(payload["w_class"], "zero")
        self.assertEqual([c["orbit_size"] for c in payload["classes"]], [1, 1])
        self.assertEqual(payload["classes"][1]["representative"]["triples"], [[1, 1, 1]])
        self.assertEqual(set(payload["classes"][0]["invariants"]), {"sq_rank", "cup_kernel_dim", "sigma", "cube_rank"})

    def test_rank_limits(self):
        with self.assertRaises(UnsupportedRankError):
            census(0, "zero")
        with self.assertRaises(UnsupportedRankError):
            census(config.MAX_CENSUS_RANK + 1, "zero")


if __name__ == "__main__":
    unittest.main()
