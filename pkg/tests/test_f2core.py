import random
import unittest

from msring.errors import DegenerateVectorError, DimensionMismatchError, MsringError, SingularMatrixError, UnsupportedRankError
from msring.f2core import (
    F2Matrix,
    F2Vector,
    complete_basis,
    group_generators,
    group_order,
    kernel_basis,
    rank,
)

from oracles import closure_size, iter_gl


def random_matrix(rng: random.Random, rows: int, cols: int) -> F2Matrix:
    return F2Matrix(rows, cols, tuple(rng.getrandbits(cols) if cols else 0 for _ in range(rows)))


class F2VectorTests(unittest.TestCase):
    def test_addition_is_xor(self):
        a = F2Vector.from_list([1, 0, 1])
        b = F2Vector.from_list([1, 1, 0])
        self.assertEqual((a + b).to_list(), [0, 1, 1])
        self.assertTrue((a + a).is_zero())

    def test_zero_exists_for_every_dim(self):
        for dim in range(0, 7):
            self.assertTrue(F2Vector.zero(dim).is_zero())

    def test_bits_must_fit(self):
        with self.assertRaises(DimensionMismatchError):
            F2Vector(2, 0b100)

    def test_mismatched_add_raises(self):
        with self.assertRaises(DimensionMismatchError):
            F2Vector.zero(2) + F2Vector.zero(3)


class RankAndKernelTests(unittest.TestCase):
    def test_rank_examples(self):
        self.assertEqual(rank(F2Matrix.identity(3)), 3)
        self.assertEqual(rank(F2Matrix.from_lists([[1, 1], [1, 1]])), 1)
        self.assertEqual(rank(F2Matrix.zeros(3, 3)), 0)

    def test_kernel_examples(self):
        self.assertEqual(kernel_basis(F2Matrix.identity(3)), [])
        zero_basis = kernel_basis(F2Matrix.zeros(2, 2))
        self.assertEqual(len(zero_basis), 2)
        self.assertEqual(rank(F2Matrix.from_columns([v.bits for v in zero_basis], 2)), 2)
        self.assertEqual(kernel_basis(F2Matrix.from_lists([[1, 1], [0, 0]])), [F2Vector.from_list([1, 1])])

    def test_rank_nullity_on_random_matrices(self):
        rng = random.Random(7)
        for _ in range(300):
            m = random_matrix(rng, rng.randint(1, 7), rng.randint(1, 7))
            basis = kernel_basis(m)
            self.assertEqual(rank(m) + len(basis), m.cols)
            for v in basis:
                self.assertTrue((m @ v).is_zero())

    def test_inverse_round_trip(self):
        rng = random.Random(11)
        checked = 0
        while checked < 100:
            m = random_matrix(rng, 5, 5)
            if not m.is_invertible():
                with self.assertRaises(SingularMatrixError):
                    m.inverse()
                continue
            self.assertEqual(m @ m.inverse(), F2Matrix.identity(5))
            checked += 1

    def test_complete_basis_uses_lowest_vectors(self):
        self.assertEqual(complete_basis([0b110], 3), [0b110, 0b001, 0b010])
        with self.assertRaises(SingularMatrixError):
            complete_basis([0b11, 0b11], 2)


class GroupGeneratorTests(unittest.TestCase):
    def test_rank_one_is_trivial(self):
        self.assertEqual(group_generators(1), [F2Matrix.identity(1)])

    def test_closure_matches_group_order(self):
        expected = {1: 1, 2: 6, 3: 168, 4: 20160}
        for rho, order in expected.items():
            self.assertEqual(group_order(rho), order)
            self.assertEqual(closure_size(group_generators(rho)), order)

    def test_closure_matches_enumeration_for_small_rank(self):
        for rho in (2, 3):
            self.assertEqual(closure_size(group_generators(rho)), sum(1 for _ in iter_gl(rho)))

    def test_stabilizer_of_e1(self):
        # |GL(rho-1, 2)| * 2^(rho-1)
        self.assertEqual(closure_size(group_generators(2, F2Vector.unit(2, 0))), 2)
        self.assertEqual(closure_size(group_generators(3, F2Vector.unit(3, 0))), 24)
        self.assertEqual(closure_size(group_generators(4, F2Vector.unit(4, 0))), 1344)

    def test_stabilizer_brute_force_counts(self):
        self.assertEqual(sum(1 for _ in iter_gl(3, F2Vector.unit(3, 0))), 24)
        self.assertEqual(sum(1 for _ in iter_gl(4, F2Vector.unit(4, 0))), 1344)

    def test_generators_fix_arbitrary_vector(self):
        for bits in range(1, 8):
            fixed = F2Vector(3, bits)
            gens = group_generators(3, fixed)
            for g in gens:
                self.assertEqual(g @ fixed, fixed)
            self.assertEqual(closure_size(gens), 24)

    def test_rank_out_of_range(self):
        with self.assertRaises(UnsupportedRankError):
            group_generators(0)
        with self.assertRaises(UnsupportedRankError):
            group_generators(7)

    def test_zero_fixed_vector(self):
        with self.assertRaises(DegenerateVectorError) as ctx:
            group_generators(3, F2Vector.zero(3))
        self.assertIsInstance(ctx.exception, MsringError)
        self.assertEqual(ctx.exception.exit_code, 2)


if __name__ == "__main__":
    unittest.main()
