import random
import unittest

from ..caps import Caps
from ..correspondence import build_assignment
from ..decomposition import CoverMode
from ..field import FieldSpec
from ..fixtures import (c4_doubled, c4_figure, cycle, k2_signed, random_assignment,
                        toroidal_grid, w6_signable, wheel)
from ..graph import build_multigraph, out_degrees
from ..solver import check_coloring, solve
from ..certify import *


Q = FieldSpec.rationals()


def general_edge():
    graph = build_multigraph(2, [(1, 2)])
    return Instance(build_assignment(graph, Q, {1: [1, 2], 2: [2, 4]},
                                     [(1, 1, [(1, 2), (2, 4)])]))


class InstanceTestCase(unittest.TestCase):
    def test_wrong_assignment(self):
        with self.assertRaisesRegex(TypeError,
                r"Assignment must be an instance of CorrespondenceAssignment, not 'foo'"):
            Instance("foo")

    def test_wrong_orientation(self):
        with self.assertRaisesRegex(TypeError,
                r"Orientation must be an instance of Orientation, not 'foo'"):
            Instance(c4_figure().assignment, "foo")
        with self.assertRaisesRegex(ValueError,
                r"Orientation must orient the graph of the assignment"):
            Instance(c4_figure().assignment, c4_doubled().orientation)


class WorkingAssignmentTestCase(unittest.TestCase):
    def test_already_in_class(self):
        assignment = c4_figure().assignment
        working, provenance, lifted = working_assignment(assignment, "signable")
        self.assertIs(working, assignment)
        self.assertFalse(lifted)
        self.assertEqual(dict(provenance), {e: (e, 0) for e in range(1, 5)})

    def test_lifted(self):
        working, provenance, lifted = working_assignment(c4_figure().assignment, "good")
        self.assertTrue(lifted)
        self.assertEqual(working.graph.size, 5)
        self.assertEqual(provenance[4], (3, 1))


class CertifyTestCase(unittest.TestCase):
    def test_c4_figure_good(self):
        verdict = certify(c4_figure(), mode="good")
        self.assertFalse(verdict)
        self.assertEqual(verdict.outcome, Outcome.INCONCLUSIVE)
        self.assertEqual(verdict.reason, Reason.NO_FEASIBLE_ORIENTATION)

    def test_c4_figure_auto(self):
        verdict = certify(c4_figure())
        self.assertEqual(verdict.reason, Reason.ZERO_RESIDUE)

    def test_c4_doubled(self):
        instance = c4_doubled()
        self.assertEqual(list(out_degrees(instance.orientation).values()), [1, 1, 1, 2])
        verdict = certify(instance)
        self.assertEqual(verdict.reason, Reason.NO_FEASIBLE_ORIENTATION)

    def test_toroidal_grid(self):
        instance = toroidal_grid(2)
        verdict = certify(instance, mode="good")
        self.assertTrue(verdict)
        certificate = verdict.certificate
        self.assertEqual(certificate.mode, CoverMode.GOOD)
        self.assertTrue(certificate.lifted)
        self.assertEqual(certificate.route, Route.ORIENTATION)
        self.assertEqual(certificate.orientation.size, 40)
        self.assertEqual(certificate.odd, 0)
        self.assertTrue(certificate.bipartite)
        for v, degree in out_degrees(certificate.orientation).items():
            self.assertLessEqual(degree, 3 if v % 2 == 0 else 2)
        for v, (needed, available) in certificate.degrees.items():
            self.assertLessEqual(needed, available)

    def test_toroidal_grid_family(self):
        for seed in range(25):
            instance = toroidal_grid(2, seed=seed)
            self.assertIsNotNone(solve(instance.assignment))
            if seed < 5:
                self.assertTrue(certify(instance, mode="good"))

    def test_w6_signable(self):
        verdict = certify(w6_signable(), mode="signable")
        self.assertTrue(verdict)
        certificate = verdict.certificate
        self.assertFalse(certificate.lifted)
        self.assertEqual(certificate.route, Route.SIGMA)
        self.assertTrue(certificate.bipartite)
        self.assertEqual(sorted(e for e, s in certificate.sigma.items() if s == -1),
                         [5, 7, 9])
        for v, degree in out_degrees(certificate.orientation).items():
            self.assertLessEqual(degree, 2)

    def test_k2_signed(self):
        verdict = certify(k2_signed())
        self.assertTrue(verdict)
        self.assertEqual(verdict.certificate.even, 1)

    def test_straight_cycles(self):
        for instance in (cycle(4), cycle(5), cycle(6), wheel(5)):
            verdict = certify(instance)
            self.assertTrue(verdict, msg=repr(verdict))
            self.assertTrue(check_coloring(instance.assignment, solve(instance.assignment)))

    def test_odd_cycle_walk(self):
        verdict = certify(cycle(5))
        self.assertTrue(verdict)
        self.assertFalse(verdict.certificate.bipartite)
        self.assertEqual(verdict.certificate.odd, 0)

    def test_exhaustive(self):
        verdict = certify(cycle(5), strategy="exhaustive")
        self.assertTrue(verdict)
        self.assertEqual(certify(c4_figure(), strategy="exhaustive").reason,
                         Reason.ZERO_RESIDUE)

    def test_nullstellensatz(self):
        verdict = certify(cycle(4), strategy="nullstellensatz")
        self.assertTrue(verdict)
        self.assertEqual(verdict.certificate.route, Route.POLYNOMIAL)
        self.assertEqual(verdict.certificate.monomial, (1, 1, 1, 1))
        self.assertEqual(verdict.certificate.residue, 2)
        self.assertEqual(certify(c4_figure(), strategy="nullstellensatz").reason,
                         Reason.ZERO_RESIDUE)

    def test_nullstellensatz_general(self):
        verdict = certify(general_edge(), strategy="nullstellensatz")
        self.assertTrue(verdict)
        self.assertFalse(verdict.certificate.lifted)
        self.assertEqual(verdict.certificate.monomial, (1, 0))
        self.assertTrue(certify(general_edge()))

    def test_lifted_polynomial(self):
        verdict = certify(general_edge(), mode="good", strategy="nullstellensatz")
        self.assertTrue(verdict)
        self.assertTrue(verdict.certificate.lifted)
        self.assertEqual(verdict.certificate.monomial, (1, 1))

    def test_irregular(self):
        graph = build_multigraph(2, [(1, 2)])
        irregular = Instance(build_assignment(graph, Q, {1: [0, 1, 2], 2: [0, 1, 2]},
                                              [(1, 1, [(0, 0), (1, 2), (2, 1)])]))
        self.assertTrue(certify(irregular))

    def test_empty_list(self):
        graph = build_multigraph(2, [(1, 2)])
        instance = Instance(build_assignment(graph, Q, {1: [1], 2: []}))
        verdict = certify(instance)
        self.assertEqual(verdict.reason, Reason.EMPTY_LIST)
        self.assertEqual(verdict.detail, "vertex 2 has an empty list")

    def test_caps_exceeded(self):
        verdict = certify(cycle(5), caps=Caps(eulerian=3))
        self.assertEqual(verdict.reason, Reason.CAPS_EXCEEDED)
        verdict = certify(cycle(5), strategy="exhaustive", caps=Caps(exhaustive=3))
        self.assertEqual(verdict.reason, Reason.CAPS_EXCEEDED)

    def test_mode_wrong(self):
        with self.assertRaisesRegex(ValueError,
                r"Invalid certify mode 'x'; must be one of auto, good, signable, zsignable"):
            certify(cycle(4), mode="x")
        with self.assertRaisesRegex(ValueError,
                r"Invalid strategy 'x'; must be one of bounded-first, exhaustive, "
                r"nullstellensatz"):
            certify(cycle(4), strategy="x")
        with self.assertRaisesRegex(TypeError,
                r"Instance must be an instance of Instance, not 'foo'"):
            certify("foo")

    def test_monotonic_modes(self):
        for instance in (cycle(4), cycle(6), wheel(6), k2_signed()):
            if certify(instance, mode="good"):
                self.assertTrue(certify(instance, mode="signable"))
                self.assertTrue(certify(instance, mode="zsignable"))

    def test_monotonic_modes_random(self):
        rng  = random.Random(8)
        caps = Caps(exhaustive=10, eulerian=64)
        certified = 0
        for field in (Q, FieldSpec.prime(3)):
            for _ in range(80):
                instance = Instance(random_assignment(rng, field, n_max=4))
                if not certify(instance, mode="good", strategy="exhaustive", caps=caps):
                    continue
                certified += 1
                for mode in ("signable", "zsignable"):
                    verdict = certify(instance, mode=mode, strategy="exhaustive", caps=caps)
                    if verdict.reason == Reason.CAPS_EXCEEDED:
                        continue
                    self.assertTrue(verdict, msg="{} mode: {!r}".format(mode, verdict))
        self.assertGreater(certified, 10)

    def test_soundness(self):
        rng = random.Random(21)
        for field in (Q, FieldSpec.prime(3)):
            for _ in range(60):
                instance = Instance(random_assignment(rng, field))
                for mode in ("auto", "good", "signable", "zsignable"):
                    if certify(instance, mode=mode):
                        self.assertIsNotNone(solve(instance.assignment))


class ReplayTestCase(unittest.TestCase):
    def test_replay(self):
        for instance, mode in ((toroidal_grid(2), "good"), (w6_signable(), "signable"),
                               (cycle(5), "auto"), (k2_signed(), "zsignable")):
            verdict = certify(instance, mode=mode)
            replayed = replay(instance, verdict.certificate)
            self.assertTrue(replayed, msg=repr(replayed))
            self.assertEqual(replayed.certificate._evidence(),
                             verdict.certificate._evidence())

    def test_replay_polynomial(self):
        instance = cycle(4)
        verdict = certify(instance, strategy="nullstellensatz")
        self.assertTrue(replay(instance, verdict.certificate))

    def test_tampered_counts(self):
        instance = cycle(5)
        certificate = certify(instance).certificate
        certificate.odd = 1
        verdict = replay(instance, certificate)
        self.assertEqual(verdict.reason, Reason.REPLAY_MISMATCH)
        self.assertEqual(verdict.detail, "recomputed evidence differs")

    def test_tampered_orientation(self):
        # Every out-degree of the grid certificate equals its bound.
        instance = toroidal_grid(2)
        certificate = certify(instance, mode="good").certificate
        certificate.orientation = certificate.orientation.reverse([1])
        verdict = replay(instance, certificate)
        self.assertEqual(verdict.reason, Reason.REPLAY_MISMATCH)
        self.assertEqual(verdict.detail, "an out-degree reaches the list size")

    def test_wrong_instance(self):
        certificate = certify(cycle(5)).certificate
        verdict = replay(wheel(5), certificate)
        self.assertEqual(verdict.reason, Reason.REPLAY_MISMATCH)


class CrossValidateTestCase(unittest.TestCase):
    def test_empty(self):
        report = cross_validate(trials=0)
        self.assertTrue(report)
        self.assertEqual(report.trials, 0)
        self.assertEqual(report.discrepancies, [])

    def test_rationals(self):
        report = cross_validate(seed=1, trials=200)
        self.assertEqual(report.discrepancies, [])
        self.assertEqual(report.trials, 200)
        self.assertGreater(report.certified, 0)
        self.assertGreater(report.checks["identity"], 0)

    def test_prime(self):
        report = cross_validate(seed=2, trials=200, field=FieldSpec.prime(3))
        self.assertEqual(report.discrepancies, [])
        self.assertGreater(report.checks["factorization"], 0)
