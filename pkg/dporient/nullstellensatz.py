from collections import namedtuple
from fractions import Fraction

from .auxiliary import build_d_sigma_phi
from .caps import _resolve
from .correspondence import CorrespondenceAssignment
from .graph import out_degrees


__all__ = ["SparsePolynomial", "EulerianCount", "EulerianDifference", "IdentityReport",
           "expand_graph_polynomial", "target_monomial", "coefficient", "count_eulerian",
           "eulerian_difference", "at_sufficient_monomial", "verify_identity"]


def _exact(value):
    if isinstance(value, Fraction) and value.denominator == 1:
        return value.numerator
    return value


class SparsePolynomial:
    """Polynomial in ``x_1..x_n`` with exact coefficients.

    Monomials are exponent tuples of length ``n``; coefficients are integers, or fractions
    when a multiplier is not integral. Zero coefficients are never stored.

    Parameters
    ----------
    n : int
        Number of variables.
    terms : dict(tuple : int or Fraction)
        Coefficient of every monomial.
    """
    def __init__(self, n, terms=()):
        self._n     = n
        self._terms = {}
        for monomial, coef in dict(terms).items():
            monomial = tuple(monomial)
            if len(monomial) != n or any(e < 0 for e in monomial):
                raise ValueError("Monomial must be a tuple of {} non-negative exponents, "
                                 "not {!r}".format(n, monomial))
            if coef != 0:
                self._terms[monomial] = _exact(coef)

    @property
    def n(self):
        return self._n

    def __getitem__(self, monomial):
        return self._terms.get(tuple(monomial), 0)

    def __len__(self):
        return len(self._terms)

    def __iter__(self):
        yield from self._terms

    def items(self):
        return self._terms.items()

    def degrees(self):
        return {sum(monomial) for monomial in self._terms}

    def is_homogeneous(self):
        return len(self.degrees()) <= 1

    def graded(self):
        """Monomials in decreasing graded lexicographic order."""
        return sorted(self._terms, key=lambda monomial: (sum(monomial), monomial),
                      reverse=True)

    def __eq__(self, other):
        return (isinstance(other, SparsePolynomial) and self._n == other._n
                and self._terms == other._terms)

    def __repr__(self):
        return "SparsePolynomial({})".format(
            {monomial: self._terms[monomial] for monomial in self.graded()})


def target_monomial(orientation):
    """Monomial whose exponent of ``x_v`` is the out-degree of ``v``."""
    return tuple(out_degrees(orientation).values())


def expand_graph_polynomial(orientation, phi=None, *, degree_cap=None, caps=None):
    """Expand the graph polynomial of an orientation.

    The polynomial is the product of ``x_v - phi(e) * x_w`` over the arcs ``e = (v, w)``,
    taken in edge id order.

    Arguments
    ---------
    orientation : :class:`Orientation`
        Orientation.
    phi : dict(int : int or Fraction) or None
        Multiplier of every edge. ``1`` for every edge by default.
    degree_cap : tuple or None
        If given, monomials exceeding it in some exponent are dropped during expansion.
        Coefficients of monomials below the cap are unaffected.
    caps : :class:`Caps` or None
        The number of edges is bounded by the ``expansion`` cap.

    Return value
    ------------
    A :class:`SparsePolynomial`.

    Exceptions
    ----------
    Raises :exn:`ValueError` if a multiplier is zero, and :exn:`CapExceededError` if the
    orientation has too many edges.
    """
    caps = _resolve(caps)
    caps.check("expansion", orientation.size)
    n = orientation.n
    if phi is None:
        phi = {}
    if degree_cap is not None and len(degree_cap) != n:
        raise ValueError("Degree cap must have {} exponents, not {!r}".format(n, degree_cap))

    terms = {(0,) * n: 1}
    for edge_id, tail, head in orientation.arcs():
        factor = _exact(Fraction(phi.get(edge_id, 1)))
        if factor == 0:
            raise ValueError("Multiplier of edge {} must be nonzero".format(edge_id))
        product = {}
        for monomial, coef in terms.items():
            for v, scale in ((tail, 1), (head, -factor)):
                if degree_cap is not None and monomial[v - 1] >= degree_cap[v - 1]:
                    continue
                shifted = monomial[:v - 1] + (monomial[v - 1] + 1,) + monomial[v:]
                product[shifted] = product.get(shifted, 0) + scale * coef
        terms = {monomial: coef for monomial, coef in product.items() if coef != 0}
    return SparsePolynomial(n, terms)


def coefficient(polynomial, monomial, field):
    """Coefficient of a monomial, mapped into ``field``."""
    return field.reduce(polynomial[monomial])


class EulerianCount(namedtuple("EulerianCount", ("even", "odd"))):
    """Numbers of even and odd spanning Eulerian subdigraphs."""

    @property
    def difference(self):
        return self.even - self.odd


EulerianDifference = namedtuple("EulerianDifference", ("difference", "residue", "is_zero"))


def _arc_order(digraph):
    degree = {v: 0 for v in digraph.vertices}
    for _, tail, head in digraph.arcs():
        degree[tail] += 1
        degree[head] += 1
    order, seen = [], set()
    for v in sorted(digraph.vertices, key=lambda v: (degree[v], v)):
        for arc_id, tail, head in digraph.arcs():
            if v in (tail, head) and arc_id not in seen:
                seen.add(arc_id)
                order.append((tail, head))
    return order


def count_eulerian(digraph, *, caps=None):
    """Count the even and odd spanning Eulerian subdigraphs of a digraph.

    Arcs are decided one at a time, those of low-degree vertices first. A branch is cut as
    soon as an endpoint of the decided arc can no longer be balanced by its undecided arcs.
    Partial counts are shared between branches that reach the same balances.

    Arguments
    ---------
    digraph : :class:`Digraph`
        Digraph.
    caps : :class:`Caps` or None
        The number of arcs is bounded by the ``eulerian`` cap.

    Return value
    ------------
    An :class:`EulerianCount`. The empty subdigraph is counted as even.

    Exceptions
    ----------
    Raises :exn:`CapExceededError` if the digraph has too many arcs.
    """
    caps = _resolve(caps)
    caps.check("eulerian", digraph.size)

    order    = _arc_order(digraph)
    balance  = [0] * (digraph.n + 1)
    rem_out  = [0] * (digraph.n + 1)
    rem_in   = [0] * (digraph.n + 1)
    for tail, head in order:
        rem_out[tail] += 1
        rem_in[head]  += 1
    memo = {}

    def feasible(v):
        return -rem_out[v] <= balance[v] <= rem_in[v]

    def count(index):
        if index == len(order):
            return 1, 0
        key = (index, tuple(balance))
        if key in memo:
            return memo[key]

        tail, head = order[index]
        rem_out[tail] -= 1
        rem_in[head]  -= 1
        even = odd = 0
        if feasible(tail) and feasible(head):
            even, odd = count(index + 1)
        balance[tail] += 1
        balance[head] -= 1
        if feasible(tail) and feasible(head):
            taken_even, taken_odd = count(index + 1)
            even += taken_odd
            odd  += taken_even
        balance[tail] -= 1
        balance[head] += 1
        rem_out[tail] += 1
        rem_in[head]  += 1

        memo[key] = even, odd
        return even, odd

    return EulerianCount(*count(0))


def eulerian_difference(digraph, field, *, caps=None):
    """Difference between even and odd Eulerian subdigraph counts, and its residue in
    ``field``.

    Return value
    ------------
    A tuple ``(difference, residue, is_zero)``.
    """
    difference = count_eulerian(digraph, caps=caps).difference
    residue = field.reduce(difference)
    return EulerianDifference(difference, residue, residue == 0)


def at_sufficient_monomial(polynomial, lists, field):
    """Find a monomial with a nonzero coefficient whose exponents fit the list sizes.

    Arguments
    ---------
    polynomial : :class:`SparsePolynomial`
        Polynomial to search.
    lists : :class:`CorrespondenceAssignment` or dict(int : int)
        Assignment, or list size of every vertex.
    field : :class:`FieldSpec`
        Field coefficients are reduced into.

    Return value
    ------------
    The first monomial in decreasing graded lexicographic order whose coefficient is nonzero
    in ``field`` and whose exponent of ``x_v`` is less than the list size of ``v``, or ``None``.
    """
    if isinstance(lists, CorrespondenceAssignment):
        sizes = {v: len(colors) for v, colors in lists.lists()}
    else:
        sizes = dict(lists)
    for monomial in polynomial.graded():
        if any(exponent + 1 > sizes[v] for v, exponent in enumerate(monomial, start=1)):
            continue
        if coefficient(polynomial, monomial, field) != 0:
            return monomial
    return None


class IdentityReport:
    """Both sides of the coefficient identity for one orientation.

    Attributes
    ----------
    monomial : tuple
        Out-degree monomial of the orientation.
    coefficient : int
        Exact coefficient of the monomial in the graph polynomial.
    count : :class:`EulerianCount`
        Eulerian subdigraph counts of the auxiliary digraph.
    field : :class:`FieldSpec`
        Field the sides are compared in.
    holds : bool
        Whether both sides agree in ``field``.
    """
    def __init__(self, monomial, coefficient, count, field):
        self.monomial    = monomial
        self.coefficient = coefficient
        self.count       = count
        self.field       = field
        self.holds       = field.reduce(coefficient) == field.reduce(count.difference)

    def __repr__(self):
        return "IdentityReport(coefficient={}, even={}, odd={}, holds={})".format(
            self.coefficient, self.count.even, self.count.odd, self.holds)


def verify_identity(orientation, sign_data, field=None, *, caps=None):
    """Compare the graph polynomial coefficient with the Eulerian count difference.

    The coefficient of the out-degree monomial in the product of ``x_v - sigma * k * x_w``
    is compared with ``EE - EO`` of the multiplier gadget digraph. Nothing is asserted.

    Arguments
    ---------
    orientation : :class:`Orientation`
        Orientation.
    sign_data : :class:`SignData`
        Sign data relative to ``orientation``, with integral multipliers.
    field : :class:`FieldSpec` or None
        Comparison field. The field of the sign data by default.
    caps : :class:`Caps` or None
        Expansion and counting caps.

    Return value
    ------------
    An :class:`IdentityReport`.
    """
    if field is None:
        field = sign_data.field
    digraph  = build_d_sigma_phi(orientation, sign_data)
    monomial = target_monomial(orientation)
    phi = {edge_id: sign.sigma * sign.phi_plus for edge_id, sign in sign_data.items()}
    polynomial = expand_graph_polynomial(orientation, phi, degree_cap=monomial, caps=caps)
    count = count_eulerian(digraph, caps=caps)
    return IdentityReport(monomial, polynomial[monomial], count, field)
