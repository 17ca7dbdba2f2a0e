import random
import unittest

from ..correspondence import EdgeClass, classify_assignment
from ..field import FieldSpec
from ..graph import out_degrees
from ..fixtures import *


class FixtureTestCase(unittest.TestCase):
    def test_c4_figure(self):
        instance = c4_figure()
        self.assertEqual(instance.graph.size, 4)
        self.assertIsNone(instance.orientation)
        self.assertEqual(classify_assignment(instance.assignment).tag, EdgeClass.SIGNABLE)

    def test_c4_doubled(self):
        instance = c4_doubled()
        self.assertEqual(instance.graph.size, 5)
        self.assertEqual(instance.graph.edge(4), (3, 4))
        self.assertEqual(dict(out_degrees(instance.orientation)), {1: 1, 2: 1, 3: 1, 4: 2})
        self.assertEqual(classify_assignment(instance.assignment).tag, EdgeClass.GOOD)

    def test_k2_signed(self):
        instance = k2_signed()
        self.assertEqual([len(colors) for _, colors in instance.assignment.lists()], [2, 2])

    def test_w6(self):
        self.assertEqual(w6_lists().assignment.list(6), (0,))
        instance = w6_signable()
        self.assertEqual(instance.graph.size, 10)
        self.assertEqual([instance.graph.edge(e) for e in (5, 7, 9)],
                         [(5, 1), (2, 6), (4, 6)])

    def test_toroidal_grid(self):
        instance = toroidal_grid(2)
        self.assertEqual(instance.graph.n, 16)
        self.assertEqual(instance.graph.size, 32)
        for v, colors in instance.assignment.lists():
            self.assertEqual(len(colors), 4 if v % 2 == 0 else 3)
        self.assertEqual(list(toroidal_grid(2, seed=3).assignment.lists()),
                         list(toroidal_grid(2, seed=3).assignment.lists()))

    def test_toroidal_grid_wrong(self):
        with self.assertRaisesRegex(ValueError,
                r"Grid parameter must be an integer of at least 2, not 1"):
            toroidal_grid(1)

    def test_cycle_wheel(self):
        self.assertEqual(len(cycle(4).assignment.list(1)), 2)
        self.assertEqual(len(cycle(5).assignment.list(1)), 3)
        self.assertEqual(wheel(5).graph.size, 8)
        with self.assertRaisesRegex(ValueError,
                r"Cycle length must be an integer of at least 3, not 2"):
            cycle(2)
        with self.assertRaisesRegex(ValueError,
                r"Wheel size must be an integer of at least 4, not 3"):
            wheel(3)


class GenFixtureTestCase(unittest.TestCase):
    def test_params(self):
        self.assertEqual(gen_fixture("cycle", n=7).graph.n, 7)
        self.assertEqual(gen_fixture("toroidal_grid", k=3).graph.n, 36)
        self.assertEqual(set(FIXTURES), {"c4_figure", "c4_doubled", "k2_signed", "w6_lists",
                                         "w6_signable", "toroidal_grid", "cycle", "wheel"})

    def test_unknown(self):
        with self.assertRaisesRegex(ValueError,
                r"Unknown fixture 'foo'; must be one of c4_figure, c4_doubled, "):
            gen_fixture("foo")

    def test_wrong_params(self):
        with self.assertRaises(TypeError):
            gen_fixture("c4_figure", k=2)


class RandomAssignmentTestCase(unittest.TestCase):
    def test_reproducible(self):
        for field in (FieldSpec.rationals(), FieldSpec.prime(5)):
            first  = random_assignment(random.Random(3), field)
            second = random_assignment(random.Random(3), field)
            self.assertEqual(first.graph, second.graph)
            self.assertEqual(list(first.lists()), list(second.lists()))

    def test_bounds(self):
        rng = random.Random(0)
        for _ in range(50):
            assignment = random_assignment(rng, FieldSpec.prime(3), n_max=4, list_max=2)
            self.assertTrue(2 <= assignment.graph.n <= 4)
            self.assertGreater(assignment.graph.size, 0)
            for _, colors in assignment.lists():
                self.assertTrue(1 <= len(colors) <= 2)
