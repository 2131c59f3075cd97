import unittest

from msring.catalogue import CATALOGUE, get_entry
from msring.f2core import rank
from msring.msforms import check_pw, cube_functional, cup_kernel_dim, squaring_matrix
from msring.realize import roundtrip
from msring.surgeryplan import eval_plan


def triples(name: str) -> list[str]:
    return ["".join(str(i + 1) for i in key) for key in get_entry(name).descriptor.form.triples()]


class CatalogueTests(unittest.TestCase):
    def test_names(self):
        self.assertEqual(
            list(CATALOGUE),
            ["s3", "rp3", "s1xs2", "l41", "q8", "rp3#rp3", "mt-halfturn", "fig4", "fig5", "s2xts1", "s1xrp2", "s1xkb", "sol"],
        )

    def test_every_entry_passes_postnikov_wu(self):
        for entry in CATALOGUE.values():
            self.assertTrue(check_pw(entry.descriptor.form, entry.descriptor.w), entry.name)

    def test_plans_evaluate_to_their_descriptor(self):
        for entry in CATALOGUE.values():
            if entry.plan is None:
                continue
            self.assertEqual(eval_plan(entry.plan).descriptor, entry.descriptor, entry.name)
            self.assertTrue(roundtrip(entry.descriptor).ok, entry.name)

    def test_tables(self):
        self.assertEqual(triples("q8"), ["112", "122"])
        self.assertEqual(triples("mt-halfturn"), ["123", "223", "233"])
        self.assertEqual(triples("fig4"), ["113", "123", "133", "223", "233"])
        self.assertEqual(triples("fig5"), ["112", "113", "122", "123", "133", "223", "233"])
        self.assertEqual(triples("sol"), ["123", "222", "223", "333"])
        self.assertEqual(triples("rp3"), ["111"])
        self.assertEqual(triples("s1xs2"), [])

    def test_quoted_ring_facts(self):
        q8 = get_entry("q8").descriptor.form
        self.assertTrue(cube_functional(q8).is_zero())
        self.assertEqual(cup_kernel_dim(q8), 1)
        self.assertEqual(cup_kernel_dim(get_entry("rp3#rp3").descriptor.form), 1)
        # fig5: the only relation among squares is u^2 + v^2 + z^2 = 0
        q = squaring_matrix(get_entry("fig5").descriptor.form)
        c1, c2, c3 = q.columns()
        self.assertEqual(c1 ^ c2 ^ c3, 0)
        self.assertEqual(rank(q), 2)

    def test_l41_shares_the_s1xs2_ring(self):
        self.assertEqual(get_entry("l41").descriptor, get_entry("s1xs2").descriptor)
        self.assertIsNone(get_entry("l41").plan)

    def test_unknown_name(self):
        with self.assertRaises(KeyError):
            get_entry("poincare")


if __name__ == "__main__":
    unittest.main()
