import logging
from collections import OrderedDict
from collections.abc import Mapping

from .caps import _resolve


__all__ = ["Coloring", "ColoringCheck", "SearchBudgetExhausted", "check_coloring", "solve"]


logger = logging.getLogger(__name__)


class SearchBudgetExhausted(RuntimeError):
    """The coloring search ran out of nodes before reaching a conclusion.

    Parameters
    ----------
    budget : int
        Node budget that was exhausted.
    """
    def __init__(self, budget):
        super().__init__("Coloring search exhausted its budget of {} nodes".format(budget))
        self.budget = budget


class Coloring(Mapping):
    """Color of every vertex.

    A read-only ``{vertex: color}`` mapping, iterated in vertex order.
    """
    def __init__(self, colors):
        self._colors = OrderedDict(sorted(dict(colors).items()))

    def __getitem__(self, v):
        return self._colors[v]

    def __iter__(self):
        yield from self._colors

    def __len__(self):
        return len(self._colors)

    def __repr__(self):
        return "Coloring({})".format(list(self._colors.items()))


class ColoringCheck:
    """Outcome of :func:`check_coloring`.

    Attributes
    ----------
    valid : bool
        Whether the coloring is valid.
    vertex : int or None
        First vertex without a color from its list.
    edge_id : int or None
        First edge whose endpoints got a matched pair of colors.
    """
    def __init__(self, valid, vertex=None, edge_id=None):
        self.valid   = valid
        self.vertex  = vertex
        self.edge_id = edge_id

    def __bool__(self):
        return self.valid

    def __repr__(self):
        if self.valid:
            return "ColoringCheck(valid)"
        if self.vertex is not None:
            return "ColoringCheck(vertex={})".format(self.vertex)
        return "ColoringCheck(edge={})".format(self.edge_id)


def check_coloring(assignment, coloring):
    """Check a coloring against a correspondence assignment.

    Arguments
    ---------
    assignment : :class:`CorrespondenceAssignment`
        Assignment.
    coloring : mapping
        Color of every vertex.

    Return value
    ------------
    A :class:`ColoringCheck`, true iff every vertex is colored from its list and no edge
    ``{u, v}`` has ``(f(u), f(v))`` in its matching.
    """
    assignment.freeze()
    field = assignment.field
    for v, colors in assignment.lists():
        if v not in coloring:
            return ColoringCheck(False, vertex=v)
        try:
            color = field.element(coloring[v])
        except (TypeError, ValueError, ZeroDivisionError):
            return ColoringCheck(False, vertex=v)
        if color not in colors:
            return ColoringCheck(False, vertex=v)
    for matching in assignment.matchings():
        if matching.forbids(field.element(coloring[matching.tail]),
                            field.element(coloring[matching.head])):
            return ColoringCheck(False, edge_id=matching.edge_id)
    return ColoringCheck(True)


def solve(assignment, *, caps=None):
    """Find a coloring of a correspondence assignment.

    Vertices are colored in decreasing order of degree, ties broken by id. Each choice
    removes the matched colors from the lists of uncolored neighbours, and a branch is
    abandoned as soon as some list becomes empty.

    Arguments
    ---------
    assignment : :class:`CorrespondenceAssignment`
        Assignment to color.
    caps : :class:`Caps` or None
        The number of search nodes is bounded by the ``solver_budget`` cap.

    Return value
    ------------
    A :class:`Coloring`, or ``None`` if the assignment has no coloring.

    Exceptions
    ----------
    Raises :exn:`SearchBudgetExhausted` if the node budget runs out.
    """
    caps   = _resolve(caps)
    budget = caps["solver_budget"]
    assignment.freeze()
    graph  = assignment.graph

    order = sorted(graph.vertices, key=lambda v: (-graph.degree(v), v))
    conflicts = {v: [] for v in graph.vertices}
    for matching in assignment.matchings():
        if not len(matching):
            continue
        for v in (matching.tail, matching.head):
            forbidden = {}
            for c1, c2 in matching.oriented(v):
                forbidden[c1] = c2
            conflicts[v].append((graph.other(matching.edge_id, v), forbidden))

    domains = {v: list(assignment.list(v)) for v in graph.vertices}
    if any(not domain for domain in domains.values()):
        return None
    colors = {}
    nodes  = [0]

    def search(position):
        if position == len(order):
            return True
        v = order[position]
        for color in list(domains[v]):
            nodes[0] += 1
            if nodes[0] > budget:
                raise SearchBudgetExhausted(budget)
            colors[v] = color
            removed, wiped = [], False
            for w, forbidden in conflicts[v]:
                if w in colors or color not in forbidden:
                    continue
                banned = forbidden[color]
                if banned in domains[w]:
                    domains[w].remove(banned)
                    removed.append((w, banned))
                    if not domains[w]:
                        wiped = True
                        break
            if not wiped and search(position + 1):
                return True
            for w, banned in removed:
                domains[w].append(banned)
            del colors[v]
        return False

    found = search(0)
    logger.debug("Coloring search visited %d nodes", nodes[0])
    if not found:
        return None
    return Coloring(colors)
