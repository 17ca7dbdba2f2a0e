import enum
import logging
from collections import OrderedDict
from fractions import Fraction

import networkx as nx

from .caps import _resolve
from .correspondence import (CorrespondenceAssignment, EdgeClass, PartialMatching,
                             classify_pairs)
from .field import in_unit_subgroup
from .graph import Multigraph


__all__ = ["CoverMode", "MatchingCover", "LiftResult", "omega_good", "omega_signable",
           "omega_zsignable", "omega", "absolute_shift", "lift"]


logger = logging.getLogger(__name__)


class CoverMode(enum.Enum):
    """Class of the parts a matching is decomposed into."""
    GOOD      = "good"
    SIGNABLE  = "signable"
    ZSIGNABLE = "zsignable"

    @classmethod
    def parse(cls, value):
        aliases = {"g": "good", "s": "signable", "z": "zsignable"}
        choices = ("good", "signable", "zsignable")
        if isinstance(value, cls):
            return value
        value = aliases.get(value, value)
        if value not in choices:
            raise ValueError("Invalid cover mode {!r}; must be one of {}"
                             .format(value, ", ".join(choices)))
        return cls(value)

    @property
    def edge_class(self):
        return EdgeClass(self.value)


class MatchingCover:
    """Decomposition of a matching into sub-matchings of one class.

    Parameters
    ----------
    mode : :class:`CoverMode`
        Class of the parts.
    parts : list of (tuple, :class:`EdgeClassification`)
        Disjoint nonempty pair sets with the classification of each one.

    Attributes
    ----------
    k : int
        Number of parts.
    """
    def __init__(self, mode, parts):
        self._mode  = CoverMode.parse(mode)
        self._parts = [(tuple(pairs), classification) for pairs, classification in parts]

    @property
    def mode(self):
        return self._mode

    @property
    def parts(self):
        return list(self._parts)

    @property
    def k(self):
        return len(self._parts)

    def verify(self, field, pairs):
        """Check that the parts partition ``pairs`` and each one belongs to the class."""
        covered = [pair for part, _ in self._parts for pair in part]
        if sorted(covered, key=repr) != sorted(pairs, key=repr):
            return False
        for part, classification in self._parts:
            if not part or not classification.tag.within(self._mode.edge_class):
                return False
            if not classification.verify(field, part):
                return False
        return True

    def __repr__(self):
        return "MatchingCover({}, k={}, {})".format(
            self._mode.value, self.k, [list(part) for part, _ in self._parts])


def _pairs_of(matching):
    if isinstance(matching, PartialMatching):
        return list(matching.pairs)
    return list(matching)


def _cover(field, mode, groups):
    parts = []
    for group in groups:
        classification = classify_pairs(field, group)
        assert group and classification.tag.within(mode.edge_class)
        parts.append((group, classification))
    return MatchingCover(mode, parts)


def _group_by(pairs, key):
    groups = OrderedDict()
    for pair in pairs:
        groups.setdefault(key(pair), []).append(pair)
    return list(groups.values())


def omega_good(matching, field):
    """Decompose a matching into good sub-matchings.

    The parts are the classes of pairs with equal difference ``c1 - c2``, which is the least
    possible number.

    Arguments
    ---------
    matching : :class:`PartialMatching` or list of (color, color)
        Matching to decompose. Pairs are taken as seen from the tail.
    field : :class:`FieldSpec`
        Field of the colors.

    Return value
    ------------
    A :class:`MatchingCover`. An empty matching has no parts.
    """
    pairs = _pairs_of(matching)
    return _cover(field, CoverMode.GOOD,
                  _group_by(pairs, lambda pair: field.sub(pair[0], pair[1])))


def omega_signable(matching, field):
    """Decompose a matching into the least number of signable sub-matchings.

    Every pair belongs to exactly one difference class ``c1 - c2 = a`` and one sum class
    ``c1 + c2 = b``; a least decomposition selects a minimum vertex cover of the bipartite
    graph joining the two classes of each pair. When both classes of a pair are selected,
    the pair goes to its difference class. In characteristic 2 sums and differences coincide
    and the decomposition is the good one.

    Arguments
    ---------
    matching : :class:`PartialMatching` or list of (color, color)
        Matching to decompose.
    field : :class:`FieldSpec`
        Field of the colors.

    Return value
    ------------
    A :class:`MatchingCover`.
    """
    pairs = _pairs_of(matching)
    if field.characteristic == 2 or not pairs:
        return MatchingCover(CoverMode.SIGNABLE, omega_good(pairs, field).parts)

    graph = nx.Graph()
    differences = OrderedDict()
    for c1, c2 in pairs:
        d_node = ("d", field.sub(c1, c2))
        s_node = ("s", field.add(c1, c2))
        differences[d_node] = None
        graph.add_edge(d_node, s_node, pair=(c1, c2))
    top = list(differences)
    matching_edges = nx.bipartite.hopcroft_karp_matching(graph, top_nodes=top)
    cover = nx.bipartite.to_vertex_cover(graph, matching_edges, top_nodes=top)

    groups = OrderedDict()
    for c1, c2 in pairs:
        d_node = ("d", field.sub(c1, c2))
        s_node = ("s", field.add(c1, c2))
        node = d_node if d_node in cover else s_node
        assert node in cover
        groups.setdefault(node, []).append((c1, c2))
    assert len(groups) == len(cover)
    ordered = sorted(groups, key=lambda node: node[0] == "s")
    return _cover(field, CoverMode.SIGNABLE, [groups[node] for node in ordered])


def _candidate_lines(field, pairs):
    lines = OrderedDict()
    for i, (c1, c2) in enumerate(pairs):
        for d1, d2 in pairs[i + 1:]:
            phi = field.div(field.sub(c1, d1), field.sub(c2, d2))
            if not in_unit_subgroup(field, phi):
                continue
            shift   = field.sub(c1, field.mul(phi, c2))
            members = frozenset(index for index, (e1, e2) in enumerate(pairs)
                                if field.sub(e1, field.mul(phi, e2)) == shift)
            lines[members] = None
    for index in range(len(pairs)):
        lines[frozenset([index])] = None
    # Subsets of another candidate never shorten a cover.
    maximal = [line for line in lines if not any(line < other for other in lines)]
    return sorted(maximal, key=lambda line: (-len(line), sorted(line)))


def omega_zsignable(matching, field, *, caps=None):
    """Decompose a matching into the least number of Z-signable sub-matchings.

    Each part lies on a line ``c1 = phi * c2 + shift`` whose multiplier ``phi`` is in the
    subgroup generated by ``1``. Candidate lines are those through two pairs with such a
    slope, plus single pairs. A greedy cover bounds a branch-and-bound search that always
    branches on the lowest uncovered pair.

    Arguments
    ---------
    matching : :class:`PartialMatching` or list of (color, color)
        Matching to decompose.
    field : :class:`FieldSpec`
        Field of the colors.
    caps : :class:`Caps` or None
        The number of pairs is bounded by the ``pairs`` cap.

    Return value
    ------------
    A :class:`MatchingCover`.

    Exceptions
    ----------
    Raises :exn:`CapExceededError` if the matching has too many pairs.
    """
    caps  = _resolve(caps)
    pairs = _pairs_of(matching)
    caps.check("pairs", len(pairs))
    if not pairs:
        return MatchingCover(CoverMode.ZSIGNABLE, [])

    lines = _candidate_lines(field, pairs)
    universe = frozenset(range(len(pairs)))

    greedy, uncovered = [], set(universe)
    while uncovered:
        line = max(lines, key=lambda line: len(line & uncovered))
        greedy.append(line)
        uncovered -= line
    best = [greedy]
    widest = len(lines[0])

    def search(chosen, covered):
        if covered == universe:
            if len(chosen) < len(best[0]):
                best[0] = list(chosen)
            return
        remaining = len(universe) - len(covered)
        if len(chosen) + -(-remaining // widest) >= len(best[0]):
            return
        lowest = min(universe - covered)
        for line in lines:
            if lowest in line:
                chosen.append(line)
                search(chosen, covered | line)
                chosen.pop()

    search([], frozenset())
    logger.debug("Z-signable cover of %d pairs: greedy %d, optimum %d",
                 len(pairs), len(greedy), len(best[0]))

    groups, assigned = [], set()
    for line in best[0]:
        group = [pairs[index] for index in sorted(line - assigned)]
        assigned |= line
        groups.append(group)
    return _cover(field, CoverMode.ZSIGNABLE, groups)


def omega(matching, field, mode, *, caps=None):
    """Decompose a matching according to ``mode``."""
    mode = CoverMode.parse(mode)
    if mode == CoverMode.GOOD:
        return omega_good(matching, field)
    if mode == CoverMode.SIGNABLE:
        return omega_signable(matching, field)
    return omega_zsignable(matching, field, caps=caps)


def absolute_shift(matching, field):
    """Common absolute difference of a matching over the rationals.

    Return value
    ------------
    The shift ``a >= 0`` such that every pair satisfies ``|c1 - c2| == a``, or ``None`` if there
    is none, if the matching is empty, or if the field is not the rationals. Such a matching
    is the union of at most two good matchings.
    """
    pairs = _pairs_of(matching)
    if field.is_prime or not pairs:
        return None
    shifts = {abs(Fraction(c1) - Fraction(c2)) for c1, c2 in pairs}
    if len(shifts) != 1:
        return None
    return shifts.pop()


class LiftResult:
    """Multigraph lift of an assignment.

    Attributes
    ----------
    mode : :class:`CoverMode`
        Class of the lifted matchings.
    graph : :class:`Multigraph`
        Lifted multigraph. Edge ``e`` of the original multigraph is replaced by ``k``
        parallel edges, ``k`` being the number of parts of its cover.
    assignment : :class:`CorrespondenceAssignment`
        Lifted assignment, with the same lists and one part per lifted edge.
    provenance : dict(int : (int, int))
        Original edge and part index of every lifted edge.
    covers : dict(int : :class:`MatchingCover`)
        Cover of every original edge.
    """
    def __init__(self, mode, assignment, provenance, covers):
        self.mode       = mode
        self.assignment = assignment
        self.graph      = assignment.graph
        self.provenance = provenance
        self.covers     = covers

    def __repr__(self):
        return "LiftResult({}, edges={})".format(self.mode.value, self.graph.size)


def lift(assignment, mode, *, caps=None):
    """Lift an assignment to a multigraph whose matchings all belong to one class.

    Arguments
    ---------
    assignment : :class:`CorrespondenceAssignment`
        Assignment to lift.
    mode : :class:`CoverMode` or str
        Class of the lifted matchings.
    caps : :class:`Caps` or None
        Caps forwarded to the cover computation.

    Return value
    ------------
    A :class:`LiftResult`. Lifted edges are directed from the tail of the original matching
    and numbered in order of original edge and part. Edges with empty matchings are dropped.

    Exceptions
    ----------
    Raises :exn:`CapExceededError` if a matching exceeds the ``pairs`` cap in Z-signable mode.
    """
    mode  = CoverMode.parse(mode)
    caps  = _resolve(caps)
    assignment.freeze()
    field = assignment.field

    covers = OrderedDict()
    for matching in assignment.matchings():
        covers[matching.edge_id] = omega(matching, field, mode, caps=caps)

    graph = Multigraph(assignment.graph.n)
    edges = []
    provenance = OrderedDict()
    for matching in assignment.matchings():
        for index, (part, _) in enumerate(covers[matching.edge_id].parts):
            lifted_id = graph.add_edge(matching.tail, matching.head)
            provenance[lifted_id] = (matching.edge_id, index)
            edges.append((lifted_id, matching.tail, part))
    graph.freeze()

    lifted = CorrespondenceAssignment(graph, field)
    for v, colors in assignment.lists():
        lifted.set_list(v, colors)
    for lifted_id, tail, part in edges:
        lifted.add_matching(lifted_id, tail, part)
    lifted.freeze()

    logger.debug("Lifted %d edges to %d in %s mode", assignment.graph.size, graph.size,
                 mode.value)
    return LiftResult(mode, lifted, provenance, covers)
