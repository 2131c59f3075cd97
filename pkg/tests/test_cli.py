import io
import json
import unittest
from unittest.mock import patch

from msring import config
from msring.catalogue import CATALOGUE
from msring.cli import main
from msring.msforms import descriptor_from_json, transport
from msring.normalform import normalize


def run(argv, stdin_text=""):
    out, err = io.StringIO(), io.StringIO()
    code = main(argv, stdin=io.StringIO(stdin_text), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


class CliTests(unittest.TestCase):
    def test_example_then_verify(self):
        code, out, _ = run(["example", "q8"])
        self.assertEqual(code, 0)
        code, out, _ = run(["verify"], out)
        self.assertEqual((code, out.strip()), (0, "ok"))

    def test_verify_names_violated_pair(self):
        code, out, _ = run(["verify"], '{"rank":2,"w":[0,0],"triples":[[1,1,2]]}\n')
        self.assertEqual(code, 1)
        self.assertEqual(out.strip(), "violated: (1,2)")

    def test_fig4_pipeline_is_byte_identical(self):
        _, fig4, _ = run(["example", "fig4"])
        _, plan, _ = run(["realize"], fig4)
        code, evaluated, _ = run(["evalplan"], plan)
        self.assertEqual(code, 0)
        self.assertEqual(evaluated, fig4)

    def test_every_entry_survives_the_pipeline(self):
        for name in CATALOGUE:
            _, text, _ = run(["example", name])
            _, plan, _ = run(["realize"], text)
            code, evaluated, _ = run(["evalplan"], plan)
            self.assertEqual(code, 0, name)
            d = descriptor_from_json(text.strip())
            expected = d if d.orientable else transport(d, normalize(d).g)
            self.assertEqual(descriptor_from_json(evaluated.strip()), expected, name)

    def test_roundtrip_and_kernel(self):
        _, q8, _ = run(["example", "q8"])
        self.assertEqual(run(["roundtrip"], q8)[1].strip(), "ok")
        self.assertEqual(run(["kernel"], q8)[1].strip(), "1")

    def test_normalize_output(self):
        _, sol, _ = run(["example", "sol"])
        code, out, _ = run(["normalize"], sol)
        self.assertEqual(code, 0)
        payload = json.loads(out)
        self.assertEqual(payload["basis_change"], [[1, 0, 0], [0, 1, 0], [0, 0, 1]])
        self.assertEqual(payload["report"], {"kind": "nonorientable", "sigma": 2, "w_square_nonzero": False, "pairs": [[2, 3]]})

    def test_classify(self):
        code, out, _ = run(["classify", "--rank", "2", "--w", "nonzero"])
        self.assertEqual(code, 0)
        self.assertEqual(len(json.loads(out)["classes"]), 3)

    def test_classify_rank_out_of_range(self):
        code, _, err = run(["classify", "--rank", "9"])
        self.assertEqual(code, 2)
        self.assertIn("[cli] error:", err)

    def test_integral(self):
        code, out, _ = run(["integral"], '{"beta":5,"coeffs":[[1,2,3,2],[1,4,5,3]]}\n')
        self.assertEqual(code, 0)
        self.assertEqual(out.strip(), '{"components":5,"triples":[[1,2,3,2],[1,4,5,3]]}')

    def test_example_plan_and_list(self):
        code, out, _ = run(["example", "sol", "--plan"])
        self.assertEqual(code, 0)
        self.assertEqual(json.loads(out)["kb_blocks"], [{"a": 1, "q": 2, "k": 1, "m": 1}])
        code, out, _ = run(["example", "--list"])
        self.assertEqual(len(out.strip().splitlines()), len(CATALOGUE))
        self.assertEqual(run(["example", "l41", "--plan"])[0], 1)
        self.assertEqual(run(["example", "nowhere"])[0], 2)

    def test_malformed_input_exits_2(self):
        code, out, err = run(["verify"], "{not json}\n")
        self.assertEqual(code, 2)
        self.assertEqual(out, "")
        self.assertIn("malformed input", err)

    def test_unknown_command_exits_2(self):
        with patch("sys.stderr", new_callable=io.StringIO):
            self.assertEqual(run(["frobnicate"])[0], 2)

    def test_worst_line_wins(self):
        lines = '{"rank":1,"w":[0],"triples":[]}\n{"rank":2,"w":[0,0],"triples":[[1,1,2]]}\n'
        code, out, _ = run(["verify"], lines)
        self.assertEqual(code, 1)
        self.assertEqual(out.splitlines(), ["ok", "violated: (1,2)"])

    def test_invalid_plan_is_a_domain_failure(self):
        plan = '{"orientable":true,"components":2,"framings":[0,0],"clasps":[[1,1]],"borromeans":[],"rp2_blocks":[],"kb_blocks":[]}'
        code, _, err = run(["evalplan"], plan + "\n")
        self.assertEqual(code, 1)
        self.assertIn("repeats a component", err)

    def test_verbose_logs_to_stderr(self):
        with patch("sys.stderr", new_callable=io.StringIO) as fake_err:
            try:
                run(["--verbose", "classify", "--rank", "1"])
            finally:
                config.set_verbose(False)
        self.assertIn("[census] rho=1 w=zero", fake_err.getvalue())


if __name__ == "__main__":
    unittest.main()
