import json
import unittest
from fractions import Fraction

from ..certify import Instance, Route, certify, replay
from ..correspondence import build_assignment
from ..field import FieldSpec
from ..fixtures import c4_doubled, c4_figure, cycle, toroidal_grid, w6_signable
from ..graph import build_multigraph
from ..nullstellensatz import expand_graph_polynomial
from ..solver import solve
from ..schema import *


def through_json(obj):
    return json.loads(dumps(obj))


def gf5_edge():
    graph = build_multigraph(2, [(1, 2)])
    return Instance(build_assignment(graph, FieldSpec.prime(5), {1: [1, 2], 2: [2, 4]},
                                     [(1, 1, [(1, 2), (2, 4)])]))


class InstanceTestCase(unittest.TestCase):
    def test_assignment(self):
        obj = assignment_to_json(c4_figure().assignment)
        self.assertEqual(obj["field"], {"field": "Q"})
        self.assertEqual(obj["lists"]["1"], [1, 2])
        self.assertEqual(obj["matchings"][2], {"edge": 3, "tail": 3, "pairs": [[1, 2], [2, 1]]})
        self.assertEqual(assignment_from_json(through_json(obj)), c4_figure().assignment)

    def test_orientation(self):
        instance = instance_from_json(through_json(instance_to_json(c4_doubled())))
        self.assertEqual(instance.orientation, c4_doubled().orientation)
        self.assertEqual(instance.assignment, c4_doubled().assignment)

    def test_prime_field(self):
        obj = through_json(instance_to_json(gf5_edge()))
        self.assertEqual(obj["field"], {"field": "GF", "p": 5})
        self.assertEqual(instance_from_json(obj).field, FieldSpec.prime(5))

    def test_missing_key(self):
        obj = assignment_to_json(c4_figure().assignment)
        del obj["field"]
        with self.assertRaisesRegex(ValueError, r"JSON object is missing the 'field' key"):
            assignment_from_json(obj)

    def test_missing_list(self):
        obj = assignment_to_json(c4_figure().assignment)
        del obj["lists"]["2"]
        with self.assertRaisesRegex(ValueError, r"List of vertex 2 is missing"):
            assignment_from_json(obj)

    def test_orientation_wrong(self):
        with self.assertRaisesRegex(ValueError,
                r"Orientation must be a list of 4 tails, not \[1, 2\]"):
            orientation_from_json(c4_figure().graph, [1, 2])

    def test_not_object(self):
        with self.assertRaisesRegex(ValueError, r"Expected a JSON object, not \[\]"):
            graph_from_json([])


class ValueTestCase(unittest.TestCase):
    def test_rational(self):
        self.assertEqual(rational_to_json(Fraction(-1, 2)), "-1/2")
        self.assertEqual(rational_to_json(3), "3")

    def test_field_elements(self):
        q = FieldSpec.rationals()
        obj = through_json(coloring_to_json({1: Fraction(1, 2), 2: Fraction(-3)}, q))
        self.assertEqual(obj, {"1": "1/2", "2": -3})
        self.assertEqual(coloring_from_json(obj, q), {1: Fraction(1, 2), 2: Fraction(-3)})
        obj = through_json(coloring_to_json({1: 4, 2: 0}, FieldSpec.prime(5)))
        self.assertEqual(obj, {"1": 4, "2": 0})

    def test_polynomial(self):
        orientation = c4_doubled().orientation
        polynomial = expand_graph_polynomial(orientation, {5: Fraction(1, 2)})
        obj = through_json(polynomial_to_json(polynomial))
        self.assertEqual(dict(polynomial_from_json(orientation.n, obj).items()),
                         dict(polynomial.items()))

    def test_coloring(self):
        instance = cycle(5)
        coloring = solve(instance.assignment)
        obj = through_json(coloring_to_json(coloring, instance.field))
        self.assertEqual(dict(coloring_from_json(obj, instance.field)), dict(coloring))
        with self.assertRaisesRegex(ValueError, r"Coloring must be a JSON object, not 1"):
            coloring_from_json(1, instance.field)


class CertificateTestCase(unittest.TestCase):
    def assertRoundTrip(self, instance, mode="auto"):
        certificate = certify(instance, mode=mode).certificate
        obj = through_json(certificate_to_json(certificate, instance.field))
        decoded = certificate_from_json(obj, instance)
        self.assertEqual(decoded._evidence(), certificate._evidence())
        self.assertEqual(decoded.orientation, certificate.orientation)
        self.assertEqual(dict(decoded.provenance), dict(certificate.provenance))
        self.assertTrue(replay(instance, decoded))
        return obj

    def test_orientation_route(self):
        obj = self.assertRoundTrip(toroidal_grid(2), "good")
        self.assertEqual(obj["route"], "orientation")
        self.assertTrue(obj["lifted"])
        self.assertEqual(obj["odd"], 0)
        self.assertIsNone(obj["sigma"])

    def test_sigma_route(self):
        obj = self.assertRoundTrip(w6_signable(), "signable")
        self.assertEqual(obj["route"], "sigma")
        self.assertEqual(obj["sigma"]["5"], -1)

    def test_sigma_phi_route(self):
        obj = self.assertRoundTrip(gf5_edge())
        self.assertEqual(obj["route"], Route.SIGMA_PHI.value)
        self.assertEqual(obj["residue"], 1)

    def test_verdict(self):
        obj = through_json(verdict_to_json(certify(c4_figure(), mode="good"),
                                           FieldSpec.rationals()))
        self.assertEqual(obj["outcome"], "inconclusive")
        self.assertEqual(obj["reason"], "no-feasible-orientation")
        self.assertNotIn("certificate", obj)
