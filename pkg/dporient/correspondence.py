import enum
from collections import OrderedDict, namedtuple

from .field import FieldSpec, in_unit_subgroup, positive_factorization
from .graph import Multigraph, Orientation


__all__ = ["PartialMatching", "CorrespondenceAssignment", "build_assignment",
           "EdgeClass", "EdgeClassification", "EdgeSign", "SignData",
           "AssignmentClassification", "classify_pairs", "classify_edge",
           "classify_assignment", "reverse_sign_data", "apply_renaming"]


class PartialMatching:
    """Partial matching between the lists of the endpoints of an edge.

    Parameters
    ----------
    edge_id : int
        Matched edge.
    tail : int
        Endpoint whose colors come first in each pair.
    head : int
        Other endpoint.
    pairs : iterable of (color, color)
        Matched pairs ``(c1, c2)`` with ``c1`` from the list of ``tail`` and ``c2`` from the
        list of ``head``.
    """
    def __init__(self, edge_id, tail, head, pairs):
        self._edge_id = edge_id
        self._tail    = tail
        self._head    = head
        self._pairs   = tuple((c1, c2) for c1, c2 in pairs)

        firsts  = [c1 for c1, _ in self._pairs]
        seconds = [c2 for _, c2 in self._pairs]
        if len(set(firsts)) != len(firsts) or len(set(seconds)) != len(seconds):
            raise ValueError("Pairs of edge {} must form a matching, not {!r}"
                             .format(edge_id, list(self._pairs)))

    @property
    def edge_id(self):
        return self._edge_id

    @property
    def tail(self):
        return self._tail

    @property
    def head(self):
        return self._head

    @property
    def pairs(self):
        return self._pairs

    def oriented(self, tail):
        """Pairs as seen from ``tail``: the first color of each pair belongs to ``tail``."""
        if tail == self._tail:
            return self._pairs
        if tail == self._head:
            return tuple((c2, c1) for c1, c2 in self._pairs)
        raise ValueError("Vertex {} is not an endpoint of edge {}"
                         .format(tail, self._edge_id))

    def reversed(self):
        return PartialMatching(self._edge_id, self._head, self._tail, self.oriented(self._head))

    def forbids(self, tail_color, head_color):
        return (tail_color, head_color) in self._pairs

    def __len__(self):
        return len(self._pairs)

    def __eq__(self, other):
        return (isinstance(other, PartialMatching)
                and (self._edge_id, self._tail, self._head) ==
                    (other._edge_id, other._tail, other._head)
                and set(self._pairs) == set(other._pairs))

    def __repr__(self):
        return "PartialMatching(edge={}, {}->{}, {})".format(
            self._edge_id, self._tail, self._head, list(self._pairs))


class CorrespondenceAssignment:
    """Correspondence assignment over a field.

    An assignment is built by setting the list of every vertex, then adding a partial
    matching per edge. Edges without a matching get an empty one when the assignment
    is frozen. Once frozen, the assignment cannot be changed anymore.

    Parameters
    ----------
    graph : :class:`Multigraph`
        Underlying multigraph. It is frozen by the assignment.
    field : :class:`FieldSpec`
        Field the colors belong to.
    """
    def __init__(self, graph, field):
        if not isinstance(graph, Multigraph):
            raise TypeError("Graph must be an instance of Multigraph, not {!r}"
                            .format(graph))
        if not isinstance(field, FieldSpec):
            raise TypeError("Field must be an instance of FieldSpec, not {!r}"
                            .format(field))
        graph.freeze()
        self._graph     = graph
        self._field     = field
        self._lists     = OrderedDict()
        self._matchings = OrderedDict()
        self._frozen    = False

    @property
    def graph(self):
        return self._graph

    @property
    def field(self):
        return self._field

    @property
    def frozen(self):
        return self._frozen

    def freeze(self):
        """Freeze the assignment.

        Exceptions
        ----------
        Raises :exn:`ValueError` if a vertex has no list.
        """
        if self._frozen:
            return
        for v in self._graph.vertices:
            if v not in self._lists:
                raise ValueError("List of vertex {} is missing".format(v))
        for edge_id, (u, v) in self._graph.edges():
            if edge_id not in self._matchings:
                self._matchings[edge_id] = PartialMatching(edge_id, u, v, ())
        self._matchings = OrderedDict(sorted(self._matchings.items()))
        self._frozen = True

    def set_list(self, v, colors):
        """Set the list of a vertex.

        Arguments
        ---------
        v : int
            Vertex.
        colors : iterable
            Distinct colors. Each one is converted to an element of the field.

        Exceptions
        ----------
        Raises :exn:`ValueError` if the assignment is frozen, if the vertex already has
        a list, or if colors repeat.
        """
        if self._frozen:
            raise ValueError("Assignment has been frozen. Cannot set list of vertex {}"
                             .format(v))
        if v not in self._graph.vertices:
            raise ValueError("Vertex must be an integer between 1 and {}, not {!r}"
                             .format(self._graph.n, v))
        if v in self._lists:
            raise ValueError("List of vertex {} is already set".format(v))
        colors = tuple(self._field.element(c) for c in colors)
        if len(set(colors)) != len(colors):
            raise ValueError("Colors in the list of vertex {} must be distinct, not {!r}"
                             .format(v, [self._field.encode(c) for c in colors]))
        self._lists[v] = colors

    def add_matching(self, edge_id, tail, pairs):
        """Add the partial matching of an edge.

        Arguments
        ---------
        edge_id : int
            Edge.
        tail : int
            Endpoint whose colors come first in each pair.
        pairs : iterable of (color, color)
            Matched pairs.

        Return value
        ------------
        The new :class:`PartialMatching`.

        Exceptions
        ----------
        Raises :exn:`ValueError` if the assignment is frozen, if the edge already has a
        matching, if an endpoint has no list yet, if a color is not in the list of its
        endpoint, or if the pairs do not form a matching.
        Raises :exn:`KeyError` if the edge is not found.
        """
        if self._frozen:
            raise ValueError("Assignment has been frozen. Cannot add matching of edge {}"
                             .format(edge_id))
        head = self._graph.other(edge_id, tail)
        if edge_id in self._matchings:
            raise ValueError("Matching of edge {} is already set".format(edge_id))
        for v in (tail, head):
            if v not in self._lists:
                raise ValueError("List of vertex {} must be set before matching edge {}"
                                 .format(v, edge_id))

        converted = []
        for c1, c2 in pairs:
            c1, c2 = self._field.element(c1), self._field.element(c2)
            if c1 not in self._lists[tail]:
                raise ValueError("Color {} of edge {} is not in the list of vertex {}"
                                 .format(self._field.encode(c1), edge_id, tail))
            if c2 not in self._lists[head]:
                raise ValueError("Color {} of edge {} is not in the list of vertex {}"
                                 .format(self._field.encode(c2), edge_id, head))
            converted.append((c1, c2))
        matching = PartialMatching(edge_id, tail, head, converted)
        self._matchings[edge_id] = matching
        return matching

    def list(self, v):
        """Get the list of a vertex, as a tuple of field elements."""
        if v not in self._lists:
            raise KeyError("Vertex {!r} has no list".format(v))
        return self._lists[v]

    def lists(self):
        """Iterate lists.

        Yield values
        ------------
        A tuple ``v, colors`` for each vertex.
        """
        yield from self._lists.items()

    def matching(self, edge_id):
        if edge_id not in self._matchings:
            raise KeyError("Edge {!r} has no matching".format(edge_id))
        return self._matchings[edge_id]

    def matchings(self):
        """Iterate matchings.

        Yield values
        ------------
        A :class:`PartialMatching` for each edge, in edge id order.
        """
        yield from self._matchings.values()

    def pairs(self, edge_id, tail):
        """Matched pairs of an edge, as seen from ``tail``."""
        return self.matching(edge_id).oriented(tail)

    def natural_orientation(self):
        """Orient every edge from the tail of its matching."""
        self.freeze()
        return Orientation(self._graph, {m.edge_id: m.tail for m in self.matchings()})

    def __eq__(self, other):
        return (isinstance(other, CorrespondenceAssignment)
                and self._graph == other._graph and self._field == other._field
                and {v: set(c) for v, c in self._lists.items()} ==
                    {v: set(c) for v, c in other._lists.items()}
                and self._matchings == other._matchings)

    def __repr__(self):
        return "CorrespondenceAssignment({!r}, {!r})".format(self._graph, self._field)


def build_assignment(graph, field, lists, matchings=()):
    """Build a frozen correspondence assignment.

    Arguments
    ---------
    graph : :class:`Multigraph`
        Underlying multigraph.
    field : :class:`FieldSpec`
        Field of the colors.
    lists : dict(int : iterable)
        List of every vertex.
    matchings : iterable of (int, int, iterable)
        Tuples ``(edge_id, tail, pairs)``. Missing edges get empty matchings.
    """
    assignment = CorrespondenceAssignment(graph, field)
    for v in graph.vertices:
        assignment.set_list(v, lists[v])
    for edge_id, tail, pairs in matchings:
        assignment.add_matching(edge_id, tail, pairs)
    assignment.freeze()
    return assignment


class EdgeClass(enum.Enum):
    """Class of a matching, from the most to the least specific."""
    STRAIGHT  = "straight"
    GOOD      = "good"
    SIGNABLE  = "signable"
    ZSIGNABLE = "zsignable"
    GENERAL   = "general"
    IRREGULAR = "irregular"

    @property
    def rank(self):
        return list(EdgeClass).index(self)

    def within(self, other):
        """Check whether every matching of this class also belongs to ``other``."""
        if other == EdgeClass.STRAIGHT:
            return self == EdgeClass.STRAIGHT
        return self.rank <= other.rank


class EdgeClassification:
    """Classification of one directed matching.

    A matching is classified with witnesses ``phi`` and ``shift`` such that every pair
    ``(c1, c2)`` satisfies ``c1 - phi * c2 == shift``. Irregular matchings have no witness.

    Attributes
    ----------
    tag : :class:`EdgeClass`
        Most specific class of the matching.
    phi : field element or None
        Multiplier. ``1`` for straight and good matchings, ``-1`` for signable ones.
    shift : field element or None
        Constant shift.
    """
    def __init__(self, tag, phi=None, shift=None):
        self.tag   = EdgeClass(tag)
        self.phi   = phi
        self.shift = shift

    def verify(self, field, pairs):
        """Check the witnesses against every pair."""
        if self.tag == EdgeClass.IRREGULAR:
            return False
        return all(field.sub(c1, field.mul(self.phi, c2)) == self.shift for c1, c2 in pairs)

    def __eq__(self, other):
        return (isinstance(other, EdgeClassification)
                and (self.tag, self.phi, self.shift) == (other.tag, other.phi, other.shift))

    def __repr__(self):
        if self.tag == EdgeClass.IRREGULAR:
            return "EdgeClassification(irregular)"
        return "EdgeClassification({}, phi={}, shift={})".format(
            self.tag.value, self.phi, self.shift)


def classify_pairs(field, pairs):
    """Classify a set of matched pairs.

    Arguments
    ---------
    field : :class:`FieldSpec`
        Field of the colors.
    pairs : sequence of (color, color)
        Matched pairs, as seen from the tail.

    Return value
    ------------
    The :class:`EdgeClassification` of the most specific class containing the pairs.
    """
    pairs = list(pairs)
    one, zero = field.one, field.zero
    if all(c1 == c2 for c1, c2 in pairs):
        return EdgeClassification(EdgeClass.STRAIGHT, one, zero)

    differences = {field.sub(c1, c2) for c1, c2 in pairs}
    if len(differences) == 1:
        return EdgeClassification(EdgeClass.GOOD, one, differences.pop())

    sums = {field.add(c1, c2) for c1, c2 in pairs}
    if len(sums) == 1:
        return EdgeClassification(EdgeClass.SIGNABLE, field.neg(one), sums.pop())

    # Distinct second colors make the slope through the first two pairs well defined.
    (c1, c2), (d1, d2) = pairs[0], pairs[1]
    phi   = field.div(field.sub(c1, d1), field.sub(c2, d2))
    shift = field.sub(c1, field.mul(phi, c2))
    candidate = EdgeClassification(EdgeClass.GENERAL, phi, shift)
    if not candidate.verify(field, pairs):
        return EdgeClassification(EdgeClass.IRREGULAR)
    if in_unit_subgroup(field, phi):
        candidate.tag = EdgeClass.ZSIGNABLE
    return candidate


def classify_edge(assignment, edge_id, tail=None):
    """Classify the matching of a directed edge.

    Arguments
    ---------
    assignment : :class:`CorrespondenceAssignment`
        Assignment holding the matching.
    edge_id : int
        Edge.
    tail : int or None
        Tail of the directed edge. By default, the tail of the matching.

    Return value
    ------------
    An :class:`EdgeClassification`.
    """
    matching = assignment.matching(edge_id)
    if tail is None:
        tail = matching.tail
    return classify_pairs(assignment.field, matching.oriented(tail))


EdgeSign = namedtuple("EdgeSign", ("sigma", "phi", "phi_plus", "shift"))
EdgeSign.__doc__ = """Sign data of one directed edge.

``phi == sigma * phi_plus`` in the field, and every pair ``(c1, c2)`` of the edge satisfies
``c1 - phi * c2 == shift``. ``sigma`` and ``phi_plus`` are ``None`` when ``phi`` is not in the
subgroup generated by ``1``.
"""


def _edge_sign(field, phi, shift, sign=None):
    if in_unit_subgroup(field, phi):
        sigma, phi_plus = positive_factorization(field, phi, sign)
        return EdgeSign(sigma, phi, phi_plus, shift)
    return EdgeSign(None, phi, None, shift)


class SignData:
    """Generalized sign function of an assignment relative to an orientation.

    Parameters
    ----------
    assignment : :class:`CorrespondenceAssignment`
        Signed assignment.
    orientation : :class:`Orientation`
        Orientation of the underlying multigraph.
    signs : dict(int : :class:`EdgeSign`)
        Sign data of every edge, relative to its direction in ``orientation``.
    """
    def __init__(self, assignment, orientation, signs):
        if orientation.base != assignment.graph:
            raise ValueError("Orientation must orient the graph of the assignment")
        self._assignment  = assignment
        self._orientation = orientation
        self._signs       = OrderedDict((edge_id, signs[edge_id])
                                        for edge_id in assignment.graph.edge_ids)

    @property
    def assignment(self):
        return self._assignment

    @property
    def orientation(self):
        return self._orientation

    @property
    def field(self):
        return self._assignment.field

    def __getitem__(self, edge_id):
        return self._signs[edge_id]

    def items(self):
        return self._signs.items()

    def sigma(self):
        """Sign of every edge, as a ``{edge_id: 1 or -1}`` dictionary."""
        return OrderedDict((edge_id, sign.sigma) for edge_id, sign in self._signs.items())

    def phi(self):
        return OrderedDict((edge_id, sign.phi) for edge_id, sign in self._signs.items())

    @property
    def integral(self):
        """Whether every multiplier has a sign and a positive integer part."""
        return all(sign.phi_plus is not None for sign in self._signs.values())

    def verify(self):
        """Check the sign data against every matched pair.

        Return value
        ------------
        ``None`` if the data is consistent, or the id of the first inconsistent edge.
        """
        field = self.field
        for edge_id, tail, _ in self._orientation.arcs():
            sign = self._signs[edge_id]
            if sign.sigma is not None:
                if field.element(sign.sigma * sign.phi_plus) != sign.phi:
                    return edge_id
            for c1, c2 in self._assignment.pairs(edge_id, tail):
                if field.sub(c1, field.mul(sign.phi, c2)) != sign.shift:
                    return edge_id
        return None

    def __repr__(self):
        return "SignData({})".format(dict(self._signs))


class AssignmentClassification:
    """Classification of a whole assignment relative to an orientation.

    Attributes
    ----------
    tag : :class:`EdgeClass`
        Least specific class among the edges. Straight edges count as good, so this is never
        :attr:`EdgeClass.STRAIGHT`.
    edges : dict(int : :class:`EdgeClassification`)
        Classification of every directed edge.
    sign_data : :class:`SignData` or None
        Witnesses of every edge, unless the assignment is irregular.
    irregular : list of int
        Irregular edges.
    """
    def __init__(self, tag, edges, sign_data, irregular):
        self.tag       = tag
        self.edges     = edges
        self.sign_data = sign_data
        self.irregular = irregular

    def __repr__(self):
        return "AssignmentClassification({}, irregular={})".format(self.tag.value,
                                                                   self.irregular)


def classify_assignment(assignment, orientation=None, *, signs=None):
    """Classify an assignment relative to an orientation.

    Arguments
    ---------
    assignment : :class:`CorrespondenceAssignment`
        Assignment to classify. It is frozen.
    orientation : :class:`Orientation` or None
        Orientation of the underlying multigraph. By default, the tails of the matchings.
    signs : dict(int : int) or None
        Requested sign of some edges. Only meaningful over prime fields; over the rationals
        the sign is forced by the multiplier.

    Return value
    ------------
    An :class:`AssignmentClassification`.
    """
    assignment.freeze()
    if orientation is None:
        orientation = assignment.natural_orientation()
    signs = dict(signs or {})
    field = assignment.field

    edges     = OrderedDict()
    tag       = EdgeClass.GOOD
    irregular = []
    for edge_id, tail, _ in orientation.arcs():
        classification = classify_pairs(field, assignment.pairs(edge_id, tail))
        edges[edge_id] = classification
        if classification.tag == EdgeClass.IRREGULAR:
            irregular.append(edge_id)
        if classification.tag.rank > tag.rank:
            tag = classification.tag

    sign_data = None
    if not irregular:
        sign_data = SignData(assignment, orientation, {
            edge_id: _edge_sign(field, c.phi, c.shift, signs.get(edge_id))
            for edge_id, c in edges.items()
        })
        assert sign_data.verify() is None
    return AssignmentClassification(tag, edges, sign_data, irregular)


def reverse_sign_data(sign_data, edge_ids):
    """Reverse some edges of the orientation underlying sign data.

    A reversed edge gets the multiplier ``phi ** -1`` and the shift ``-(phi ** -1) * shift``.
    Signs are kept; the positive parts are recomputed.

    Arguments
    ---------
    sign_data : :class:`SignData`
        Sign data to transform.
    edge_ids : iterable of int
        Edges to reverse.

    Return value
    ------------
    A :class:`SignData` relative to the reversed orientation.
    """
    field    = sign_data.field
    edge_ids = set(edge_ids)
    signs    = OrderedDict()
    for edge_id, sign in sign_data.items():
        if edge_id not in edge_ids:
            signs[edge_id] = sign
            continue
        inverse = field.inv(sign.phi)
        shift   = field.neg(field.mul(inverse, sign.shift))
        signs[edge_id] = _edge_sign(field, inverse, shift, sign.sigma)

    reversed_data = SignData(sign_data.assignment, sign_data.orientation.reverse(edge_ids),
                             signs)
    assert reversed_data.verify() is None
    return reversed_data


def apply_renaming(assignment, renaming):
    """Rename the colors of an assignment.

    Arguments
    ---------
    assignment : :class:`CorrespondenceAssignment`
        Assignment to rename.
    renaming : dict(int : dict)
        Bijection ``{old color: new color}`` for some vertices. Other vertices keep their
        colors.

    Return value
    ------------
    An equivalent frozen :class:`CorrespondenceAssignment`, with every pair ``(c1, c2)``
    of an edge ``(u, v)`` replaced by ``(h_u(c1), h_v(c2))``.

    Exceptions
    ----------
    Raises :exn:`ValueError` if a renaming does not cover the list of its vertex or is not
    injective on it.
    """
    assignment.freeze()
    field = assignment.field

    maps = {}
    for v, colors in assignment.lists():
        mapping = {field.element(k): field.element(c)
                   for k, c in dict(renaming.get(v, {})).items()}
        if v not in renaming:
            mapping = {c: c for c in colors}
        for c in colors:
            if c not in mapping:
                raise ValueError("Renaming of vertex {} does not cover color {}"
                                 .format(v, field.encode(c)))
        images = [mapping[c] for c in colors]
        if len(set(images)) != len(images):
            raise ValueError("Renaming of vertex {} must be injective on its list"
                             .format(v))
        maps[v] = mapping

    renamed = CorrespondenceAssignment(assignment.graph, field)
    for v, colors in assignment.lists():
        renamed.set_list(v, [maps[v][c] for c in colors])
    for matching in assignment.matchings():
        renamed.add_matching(matching.edge_id, matching.tail,
                             [(maps[matching.tail][c1], maps[matching.head][c2])
                              for c1, c2 in matching.pairs])
    renamed.freeze()
    return renamed
