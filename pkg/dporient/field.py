import enum
from fractions import Fraction

from sympy import isprime


__all__ = ["FieldSpec", "field_arith", "in_unit_subgroup", "is_zero_residue",
           "positive_factorization"]


MAX_MODULUS = 2 ** 31


class FieldSpec:
    class Kind(enum.Enum):
        """Coefficient field kind."""
        RATIONALS = "Q"
        PRIME     = "GF"

    """Coefficient field.

    Either the rationals, standing in for the reals, or the prime field of residues
    modulo ``p``. Elements of the rationals are :class:`fractions.Fraction` values,
    elements of a prime field are integers in ``range(p)``.

    Parameters
    ----------
    kind : :class:`Kind`
        Field kind, ``"Q"`` or ``"GF"``.
    p : int
        Prime modulus. Required for prime fields, forbidden otherwise.
    """
    def __init__(self, kind="Q", *, p=None):
        choices = ("Q", "GF")
        if not isinstance(kind, FieldSpec.Kind) and kind not in choices:
            raise ValueError("Invalid field kind {!r}; must be one of {}"
                             .format(kind, ", ".join(choices)))
        kind = FieldSpec.Kind(kind)
        if kind == FieldSpec.Kind.PRIME:
            if not isinstance(p, int) or isinstance(p, bool) or not 2 <= p <= MAX_MODULUS:
                raise ValueError("Modulus must be an integer between 2 and 2**31, not {!r}"
                                 .format(p))
            if not isprime(p):
                raise ValueError("Modulus must be prime, not {!r}".format(p))
        elif p is not None:
            raise ValueError("Modulus must not be given for the rationals, not {!r}"
                             .format(p))
        self._kind = kind
        self._p    = p

    @classmethod
    def rationals(cls):
        return cls("Q")

    @classmethod
    def prime(cls, p):
        return cls("GF", p=p)

    @property
    def kind(self):
        return self._kind

    @property
    def p(self):
        return self._p

    @property
    def is_prime(self):
        return self._kind == FieldSpec.Kind.PRIME

    @property
    def characteristic(self):
        return self._p if self.is_prime else 0

    def __eq__(self, other):
        return isinstance(other, FieldSpec) and (self._kind, self._p) == (other._kind, other._p)

    def __hash__(self):
        return hash((self._kind, self._p))

    def __repr__(self):
        if self.is_prime:
            return "FieldSpec(GF, p={})".format(self._p)
        return "FieldSpec(Q)"

    def element(self, value):
        """Convert a value to a canonical element of this field.

        Arguments
        ---------
        value : int or :class:`fractions.Fraction` or str
            Value to convert. Strings use the ``"p/q"`` notation. Over a prime field,
            a fraction is mapped through the inverse of its denominator.

        Return value
        ------------
        A :class:`fractions.Fraction` for the rationals, an ``int`` in ``range(p)`` for
        a prime field.

        Exceptions
        ----------
        Raises :exn:`TypeError` if the value is not a number, and :exn:`ZeroDivisionError`
        if a fraction's denominator vanishes in the field.
        """
        if isinstance(value, bool) or not isinstance(value, (int, Fraction, str)):
            raise TypeError("Field element must be an integer, a fraction or a string, "
                            "not {!r}".format(value))
        if isinstance(value, str):
            try:
                value = Fraction(value)
            except ValueError:
                raise ValueError("Field element must be written as an integer or p/q, "
                                 "not {!r}".format(value)) from None
        if not self.is_prime:
            return Fraction(value)
        if isinstance(value, Fraction):
            if value.denominator % self._p == 0:
                raise ZeroDivisionError("Denominator {} vanishes modulo {}"
                                        .format(value.denominator, self._p))
            return value.numerator * pow(value.denominator, -1, self._p) % self._p
        return value % self._p

    def contains(self, value):
        """Check that a value is already a canonical element of this field."""
        if self.is_prime:
            return (isinstance(value, int) and not isinstance(value, bool)
                    and 0 <= value < self._p)
        return isinstance(value, Fraction)

    @property
    def zero(self):
        return self.element(0)

    @property
    def one(self):
        return self.element(1)

    def add(self, a, b):
        return self.element(a + b)

    def sub(self, a, b):
        return self.element(a - b)

    def mul(self, a, b):
        return self.element(a * b)

    def neg(self, a):
        return self.element(-a)

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("Division by zero in {!r}".format(self))
        if self.is_prime:
            return pow(a, -1, self._p)
        return 1 / Fraction(a)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def reduce(self, coefficient):
        """Map an exact integer or rational coefficient into this field."""
        return self.element(coefficient)

    def sort_key(self, value):
        return value

    def encode(self, value):
        """Encode an element as JSON: integers stay bare, other rationals become ``"p/q"``."""
        if self.is_prime:
            return int(value)
        value = Fraction(value)
        if value.denominator == 1:
            return value.numerator
        return "{}/{}".format(value.numerator, value.denominator)

    def to_json(self):
        if self.is_prime:
            return {"field": "GF", "p": self._p}
        return {"field": "Q"}

    @classmethod
    def from_json(cls, obj):
        if not isinstance(obj, dict) or "field" not in obj:
            raise ValueError("Field spec must be an object with a \"field\" key, not {!r}"
                             .format(obj))
        if obj["field"] == "GF":
            return cls("GF", p=obj.get("p"))
        return cls(obj["field"])


def _check_operand(spec, value):
    if not spec.contains(value):
        raise ValueError("Operand {!r} is not a canonical element of {!r}"
                         .format(value, spec))


def field_arith(spec, op, a, b=None):
    """Exact field arithmetic.

    Arguments
    ---------
    spec : :class:`FieldSpec`
        Field to compute in.
    op : str
        One of ``"add"``, ``"sub"``, ``"mul"``, ``"div"``, ``"neg"``.
    a, b : field elements
        Operands. ``b`` is ignored by ``"neg"``.

    Return value
    ------------
    The canonical field element ``a op b``.

    Exceptions
    ----------
    Raises :exn:`ZeroDivisionError` on division by zero.
    """
    if op not in ("add", "sub", "mul", "div", "neg"):
        raise ValueError("Invalid operation {!r}; must be one of add, sub, mul, div, neg"
                         .format(op))
    _check_operand(spec, a)
    if op == "neg":
        return spec.neg(a)
    _check_operand(spec, b)
    return getattr(spec, op)(a, b)


def in_unit_subgroup(spec, x):
    """Check membership in the additive subgroup generated by ``1``.

    Over the rationals this subgroup is the integers; over a prime field it is the
    whole field.
    """
    if spec.is_prime:
        return True
    return Fraction(x).denominator == 1


def is_zero_residue(spec, n):
    """Check whether the integer ``n`` vanishes in the field."""
    if spec.is_prime:
        return n % spec.p == 0
    return n == 0


def positive_factorization(spec, phi, sign=None):
    """Split a multiplier into a sign and a positive integer.

    Arguments
    ---------
    spec : :class:`FieldSpec`
        Field of ``phi``.
    phi : field element
        Nonzero element of the unit subgroup.
    sign : 1, -1 or None
        Requested sign. Over the rationals the sign is forced by ``phi`` and a
        contradicting request is rejected. Over a prime field any sign can be chosen;
        by default the sign giving the smaller positive part is used.

    Return value
    ------------
    A tuple ``(sigma, phi_plus)`` with ``sigma`` in ``{1, -1}`` and ``phi_plus`` a positive
    integer such that ``sigma * phi_plus`` equals ``phi`` in the field.

    Exceptions
    ----------
    Raises :exn:`ValueError` if ``phi`` is zero, outside the unit subgroup, or if ``sign``
    contradicts the sign of ``phi`` over the rationals.
    """
    if sign not in (None, 1, -1):
        raise ValueError("Sign must be 1, -1 or None, not {!r}".format(sign))
    if phi == 0:
        raise ValueError("Multiplier must be nonzero")
    if not in_unit_subgroup(spec, phi):
        raise ValueError("Multiplier {} is not in the subgroup generated by 1"
                         .format(spec.encode(phi)))

    if not spec.is_prime:
        value = Fraction(phi).numerator
        forced = 1 if value > 0 else -1
        if sign is not None and sign != forced:
            raise ValueError("Sign {} contradicts multiplier {} over the rationals"
                             .format(sign, value))
        return forced, abs(value)

    p = spec.p
    if sign is None:
        sign = 1 if phi <= p - phi else -1
    return sign, (sign * phi) % p
