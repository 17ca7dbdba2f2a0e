import contextlib
import io
import json
import os
import tempfile
import unittest

from ..cli import *


class CLITestCase(unittest.TestCase):
    def setUp(self):
        self._tmpdir = tempfile.TemporaryDirectory()
        self.addCleanup(self._tmpdir.cleanup)

    def path(self, name):
        return os.path.join(self._tmpdir.name, name)

    def run_main(self, *argv):
        stderr = io.StringIO()
        with contextlib.redirect_stderr(stderr):
            code = main(list(argv))
        return code, stderr.getvalue()

    def run_json(self, *argv):
        out = self.path("out.json")
        code, _ = self.run_main("-o", out, *argv)
        with open(out) as f:
            return code, json.load(f)

    def fixture(self, name, *params):
        path = self.path(name + ".json")
        code, _ = self.run_main("-o", path, "gen", "--fixture", name, *params)
        self.assertEqual(code, EXIT_OK)
        return path

    def test_parse_field(self):
        self.assertFalse(parse_field("Q").is_prime)
        self.assertEqual(parse_field("GF5").p, 5)
        self.assertEqual(parse_field("GF:7").p, 7)
        self.assertEqual(parse_field("3").p, 3)
        with self.assertRaisesRegex(ValueError,
                r"Field must be Q, GF<p> or a prime, not 'R'"):
            parse_field("R")

    def test_classify(self):
        code, obj = self.run_json("classify", self.fixture("c4_figure"))
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(obj["class"], "signable")
        self.assertEqual(obj["edges"][2]["sigma"], -1)

    def test_decompose(self):
        code, obj = self.run_json("decompose", "--mode", "good", self.fixture("c4_figure"))
        self.assertEqual(code, EXIT_OK)
        self.assertEqual([edge["omega"] for edge in obj["edges"]], [1, 1, 2, 1])

    def test_lift(self):
        code, obj = self.run_json("lift", self.fixture("c4_figure"))
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(len(obj["graph"]["edges"]), 5)
        self.assertEqual(obj["provenance"][3], [3, 1])

    def test_aux(self):
        path = self.fixture("c4_figure")
        code, obj = self.run_json("aux", "--kind", "sigma", path)
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(obj["n"], 5)
        self.assertEqual(obj["labels"][4], "m3")
        out = self.path("aux.dot")
        self.assertEqual(self.run_main("-o", out, "aux", "--dot", path)[0], EXIT_OK)
        with open(out) as f:
            self.assertIn("digraph", f.read())

    def test_aux_not_applicable(self):
        code, obj = self.run_json("aux", "--kind", "sigma", self.fixture("w6_signable"))
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(obj["n"], 9)
        path = self.path("general.json")
        with open(path, "w") as f:
            json.dump({"graph": {"n": 2, "edges": [[1, 2]]}, "field": {"field": "Q"},
                       "lists": {"1": [1, 2], "2": [2, 4]},
                       "matchings": [{"edge": 1, "tail": 1, "pairs": [[1, 2], [2, 4]]}]}, f)
        code, stderr = self.run_main("aux", "--kind", "sigma", path)
        self.assertEqual(code, EXIT_INCONCLUSIVE)
        self.assertIn("not applicable", stderr)

    def test_euler(self):
        path = self.fixture("c4_figure")
        code, obj = self.run_json("euler", "--kind", "sigma", path)
        self.assertEqual(code, EXIT_INCONCLUSIVE)
        self.assertEqual((obj["even"], obj["odd"], obj["residue"]), (1, 1, 0))
        code, obj = self.run_json("euler", path)
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(obj["difference"], 2)

    def test_euler_cap(self):
        code, stderr = self.run_main("--cap", "eulerian=3", "euler", self.fixture("c4_figure"))
        self.assertEqual(code, EXIT_INCONCLUSIVE)
        self.assertIn("'eulerian' cap of 3", stderr)

    def test_coeff(self):
        path = self.fixture("c4_figure")
        code, obj = self.run_json("coeff", path)
        self.assertEqual(code, EXIT_INCONCLUSIVE)
        self.assertEqual(obj["monomial"], [1, 1, 1, 1])
        self.assertEqual(obj["coefficient"], "0")
        code, obj = self.run_json("coeff", "--plain", "--full", path)
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(obj["coefficient"], "2")
        self.assertIn({"exp": [1, 1, 1, 1], "coef": "2"}, obj["polynomial"])

    def test_coeff_monomial(self):
        path = self.fixture("c4_figure")
        code, obj = self.run_json("coeff", "--plain", "--monomial", "2,0,1,1", path)
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(obj["coefficient"], "-1")
        code, stderr = self.run_main("coeff", "--monomial", "1,1", path)
        self.assertEqual(code, EXIT_ERROR)
        self.assertIn("Monomial must have 4 exponents", stderr)

    def test_verify_identity(self):
        code, obj = self.run_json("verify-identity", "--trials", "30", "--field", "GF3")
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(obj["failed"], [])
        self.assertEqual(obj["checked"] + obj["skipped"], 30)

    def test_certify_replay(self):
        path = self.fixture("toroidal_grid", "--k", "2", "--seed", "4")
        cert = self.path("cert.json")
        code, _ = self.run_main("-o", cert, "certify", "--mode", "good", path)
        self.assertEqual(code, EXIT_OK)
        code, obj = self.run_json("replay", path, cert)
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(obj["outcome"], "certified")

        with open(cert) as f:
            verdict = json.load(f)
        verdict["certificate"]["odd"] = 1
        with open(cert, "w") as f:
            json.dump(verdict, f)
        code, obj = self.run_json("replay", path, cert)
        self.assertEqual(code, EXIT_INCONCLUSIVE)
        self.assertEqual(obj["reason"], "replay-mismatch")

    def test_certify_inconclusive(self):
        code, obj = self.run_json("certify", self.fixture("c4_figure"))
        self.assertEqual(code, EXIT_INCONCLUSIVE)
        self.assertEqual(obj["reason"], "zero-residue")
        code, stderr = self.run_main("replay", self.fixture("c4_figure"), self.path("out.json"))
        self.assertEqual(code, EXIT_ERROR)
        self.assertIn("carries no certificate", stderr)

    def test_solve(self):
        code, obj = self.run_json("solve", self.fixture("c4_figure"))
        self.assertEqual(code, EXIT_INCONCLUSIVE)
        self.assertEqual(obj["outcome"], "absent")
        code, obj = self.run_json("solve", self.fixture("cycle", "--n", "5"))
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(sorted(obj["coloring"]), ["1", "2", "3", "4", "5"])

    def test_solve_budget(self):
        code, obj = self.run_json("--cap", "solver_budget=1", "solve", self.fixture("c4_figure"))
        self.assertEqual(code, EXIT_INCONCLUSIVE)
        self.assertEqual(obj["outcome"], "unknown")

    def test_cross_validate(self):
        code, obj = self.run_json("cross-validate", "--trials", "20", "--seed", "3")
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(obj["trials"], 20)
        self.assertEqual(obj["discrepancies"], [])

    def test_errors(self):
        code, stderr = self.run_main("solve", self.path("missing.json"))
        self.assertEqual(code, EXIT_ERROR)
        self.assertIn("dporient: error:", stderr)
        code, stderr = self.run_main("--cap", "bogus=1", "solve", self.fixture("k2_signed"))
        self.assertEqual(code, EXIT_ERROR)
        self.assertIn("Unknown cap 'bogus'", stderr)
        code, stderr = self.run_main("gen", "--fixture", "c4_figure", "--k", "3")
        self.assertEqual(code, EXIT_ERROR)
        self.assertIn("does not take parameters k", stderr)
