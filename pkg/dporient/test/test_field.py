import unittest
from fractions import Fraction

from hypothesis import given, settings, strategies as st

from ..field import *


class FieldSpecTestCase(unittest.TestCase):
    def test_rationals(self):
        field = FieldSpec.rationals()
        self.assertEqual(field.kind, FieldSpec.Kind.RATIONALS)
        self.assertFalse(field.is_prime)
        self.assertEqual(field.characteristic, 0)
        self.assertEqual(field.element("1/2"), Fraction(1, 2))
        self.assertEqual(field.element(3), Fraction(3))

    def test_prime(self):
        field = FieldSpec.prime(5)
        self.assertEqual(field.kind, FieldSpec.Kind.PRIME)
        self.assertEqual(field.characteristic, 5)
        self.assertEqual(field.element(-1), 4)
        self.assertEqual(field.element(Fraction(1, 2)), 3)
        self.assertEqual(field.element("7"), 2)

    def test_kind_wrong(self):
        with self.assertRaisesRegex(ValueError,
                r"Invalid field kind 'R'; must be one of Q, GF"):
            FieldSpec("R")

    def test_modulus_wrong(self):
        with self.assertRaisesRegex(ValueError,
                r"Modulus must be prime, not 4"):
            FieldSpec.prime(4)
        with self.assertRaisesRegex(ValueError,
                r"Modulus must be an integer between 2 and 2\*\*31, not 1"):
            FieldSpec.prime(1)

    def test_element_wrong(self):
        with self.assertRaisesRegex(TypeError,
                r"Field element must be an integer, a fraction or a string, not 1.5"):
            FieldSpec.rationals().element(1.5)
        with self.assertRaisesRegex(ValueError,
                r"Field element must be written as an integer or p/q, not 'x'"):
            FieldSpec.rationals().element("x")
        with self.assertRaisesRegex(ZeroDivisionError,
                r"Denominator 3 vanishes modulo 3"):
            FieldSpec.prime(3).element(Fraction(1, 3))

    def test_inv_zero(self):
        with self.assertRaises(ZeroDivisionError):
            FieldSpec.prime(7).inv(0)
        with self.assertRaises(ZeroDivisionError):
            FieldSpec.rationals().div(Fraction(1), Fraction(0))

    def test_encode(self):
        self.assertEqual(FieldSpec.rationals().encode(Fraction(3, 2)), "3/2")
        self.assertEqual(FieldSpec.rationals().encode(Fraction(-2)), -2)
        self.assertEqual(FieldSpec.prime(3).encode(2), 2)

    def test_json(self):
        for field in (FieldSpec.rationals(), FieldSpec.prime(3), FieldSpec.prime(5)):
            self.assertEqual(FieldSpec.from_json(field.to_json()), field)
        with self.assertRaisesRegex(ValueError,
                r"Field spec must be an object with a \"field\" key, not 3"):
            FieldSpec.from_json(3)

    def test_reduce(self):
        self.assertEqual(FieldSpec.prime(3).reduce(-4), 2)
        self.assertEqual(FieldSpec.rationals().reduce(-4), -4)


class FieldArithTestCase(unittest.TestCase):
    def test_rationals(self):
        field = FieldSpec.rationals()
        self.assertEqual(field_arith(field, "div", Fraction(1), Fraction(3)), Fraction(1, 3))
        self.assertEqual(field_arith(field, "neg", Fraction(2)), Fraction(-2))

    def test_prime(self):
        field = FieldSpec.prime(7)
        self.assertEqual(field_arith(field, "div", 3, 5), 2)
        self.assertEqual(field_arith(field, "sub", 1, 3), 5)

    def test_div_zero(self):
        with self.assertRaises(ZeroDivisionError):
            field_arith(FieldSpec.prime(7), "div", 3, 0)

    def test_op_wrong(self):
        with self.assertRaisesRegex(ValueError,
                r"Invalid operation 'pow'; must be one of add, sub, mul, div, neg"):
            field_arith(FieldSpec.prime(7), "pow", 3, 0)

    def test_operand_wrong(self):
        with self.assertRaisesRegex(ValueError,
                r"Operand 9 is not a canonical element of FieldSpec\(GF, p=7\)"):
            field_arith(FieldSpec.prime(7), "add", 9, 1)

    @settings(deadline=None)
    @given(st.sampled_from([2, 3, 5, 7, 11]), st.integers(), st.integers(min_value=1))
    def test_division_inverts_multiplication(self, p, a, b):
        field = FieldSpec.prime(p)
        a, b = field.element(a), field.element(b)
        if b == 0:
            return
        self.assertEqual(field.mul(field.div(a, b), b), a)


FIELDS = [FieldSpec.rationals()] + [FieldSpec.prime(p) for p in (2, 3, 5, 7, 11, 101)]


@st.composite
def field_triples(draw):
    field = draw(st.sampled_from(FIELDS))
    if field.is_prime:
        elements = st.integers(min_value=-10 ** 6, max_value=10 ** 6)
    else:
        elements = st.fractions(min_value=-100, max_value=100, max_denominator=50)
    return field, tuple(field.element(draw(elements)) for _ in range(3))


class FieldAxiomsTestCase(unittest.TestCase):
    @settings(deadline=None, max_examples=1000)
    @given(field_triples())
    def test_axioms(self, triple):
        field, (a, b, c) = triple
        self.assertTrue(all(field.contains(x) for x in (a, b, c)))
        self.assertEqual(field.add(field.add(a, b), c), field.add(a, field.add(b, c)))
        self.assertEqual(field.mul(field.mul(a, b), c), field.mul(a, field.mul(b, c)))
        self.assertEqual(field.mul(a, field.add(b, c)),
                         field.add(field.mul(a, b), field.mul(a, c)))
        self.assertEqual(field.add(a, b), field.add(b, a))
        self.assertEqual(field.mul(a, b), field.mul(b, a))
        self.assertEqual(field.add(a, field.neg(a)), field.zero)
        self.assertEqual(field.sub(field.add(a, b), b), a)
        self.assertEqual(field.mul(a, field.one), a)
        if a != 0:
            self.assertEqual(field.mul(a, field.inv(a)), field.one)
            self.assertEqual(field.div(field.mul(b, a), a), b)


class SubgroupTestCase(unittest.TestCase):
    @settings(deadline=None, max_examples=300)
    @given(st.sampled_from(FIELDS), st.integers(min_value=-10 ** 4, max_value=10 ** 4),
           st.integers(min_value=-10 ** 4, max_value=10 ** 4))
    def test_unit_subgroup_closed(self, field, a, b):
        a, b = field.element(a), field.element(b)
        self.assertTrue(in_unit_subgroup(field, a))
        self.assertTrue(in_unit_subgroup(field, b))
        for op in ("add", "sub", "mul"):
            self.assertTrue(in_unit_subgroup(field, field_arith(field, op, a, b)))

    @settings(deadline=None)
    @given(st.fractions(max_denominator=20))
    def test_unit_subgroup_rationals(self, x):
        self.assertEqual(in_unit_subgroup(FieldSpec.rationals(), x), x.denominator == 1)

    def test_unit_subgroup(self):
        self.assertTrue(in_unit_subgroup(FieldSpec.rationals(), Fraction(-3)))
        self.assertFalse(in_unit_subgroup(FieldSpec.rationals(), Fraction(1, 2)))
        self.assertTrue(in_unit_subgroup(FieldSpec.prime(5), 3))

    def test_zero_residue(self):
        self.assertTrue(is_zero_residue(FieldSpec.prime(3), 6))
        self.assertFalse(is_zero_residue(FieldSpec.rationals(), 6))
        self.assertTrue(is_zero_residue(FieldSpec.rationals(), 0))

    def test_factorization_rationals(self):
        field = FieldSpec.rationals()
        self.assertEqual(positive_factorization(field, Fraction(-3)), (-1, 3))
        self.assertEqual(positive_factorization(field, Fraction(2)), (1, 2))
        with self.assertRaisesRegex(ValueError,
                r"Sign 1 contradicts multiplier -3 over the rationals"):
            positive_factorization(field, Fraction(-3), 1)
        with self.assertRaisesRegex(ValueError,
                r"Multiplier 1/2 is not in the subgroup generated by 1"):
            positive_factorization(field, Fraction(1, 2))

    def test_factorization_prime(self):
        field = FieldSpec.prime(5)
        self.assertEqual(positive_factorization(field, 4), (-1, 1))
        self.assertEqual(positive_factorization(field, 2), (1, 2))
        self.assertEqual(positive_factorization(field, 4, 1), (1, 4))
        self.assertEqual(positive_factorization(field, 2, -1), (-1, 3))

    def test_factorization_zero(self):
        with self.assertRaisesRegex(ValueError, r"Multiplier must be nonzero"):
            positive_factorization(FieldSpec.prime(5), 0)

    @settings(deadline=None)
    @given(st.sampled_from([2, 3, 5, 7]), st.integers(min_value=1, max_value=6),
           st.sampled_from([None, 1, -1]))
    def test_factorization_recomposes(self, p, phi, sign):
        field = FieldSpec.prime(p)
        phi = field.element(phi)
        if phi == 0:
            return
        sigma, phi_plus = positive_factorization(field, phi, sign)
        self.assertGreater(phi_plus, 0)
        self.assertEqual(field.element(sigma * phi_plus), phi)
