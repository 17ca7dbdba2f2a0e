import enum
from collections import OrderedDict, namedtuple

from .correspondence import SignData
from .graph import Digraph


__all__ = ["AuxKind", "AuxVertex", "GammaPath", "AuxDigraph", "EulerianStructure",
           "build_d_sigma", "build_d_sigma_phi", "gamma_paths", "check_eulerian_structure"]


class AuxKind(enum.Enum):
    ORIGINAL = "v"
    TAIL     = "t"
    HEAD     = "h"
    INTERNAL = "x"
    MID      = "m"


AuxVertex = namedtuple("AuxVertex", ("kind", "ref", "index"))
AuxVertex.__new__.__defaults__ = (None,)


GammaPath = namedtuple("GammaPath", ("edge_id", "index", "arcs"))
GammaPath.__doc__ = """Directed path through the gadget of an edge.

``arcs`` is the sequence of arc ids from the tail of the edge to its head; ``index`` counts
from 1.
"""


class AuxDigraph(Digraph):
    """Auxiliary digraph of an orientation.

    Vertices ``1..n`` are the original vertices; the remaining ones belong to the gadget of a
    single edge. Every gadget is the union of the gamma paths of its edge.

    Parameters
    ----------
    orientation : :class:`Orientation`
        Original orientation.
    tags : list of :class:`AuxVertex`
        Tag of every vertex, by increasing id.
    sigma : dict(int : int)
        Sign of every edge.
    sign_data : :class:`SignData` or None
        Sign data the multiplicities were taken from, if any.
    """
    def __init__(self, orientation, tags, sigma, sign_data=None):
        super().__init__(len(tags))
        self._orientation = orientation
        self._tags        = list(tags)
        self._sigma       = OrderedDict(sigma)
        self._sign_data   = sign_data
        self._gammas      = OrderedDict((edge_id, []) for edge_id in orientation.base.edge_ids)

    @property
    def orientation(self):
        return self._orientation

    @property
    def sigma(self):
        return self._sigma

    @property
    def sign_data(self):
        return self._sign_data

    def tag(self, v):
        return self._tags[v - 1]

    def vertex_label(self, v):
        tag = self.tag(v)
        if tag.kind == AuxKind.INTERNAL:
            return "x{}_{}".format(tag.ref, tag.index)
        return "{}{}".format(tag.kind.value, tag.ref)

    def _add_gamma(self, edge_id, arcs):
        paths = self._gammas[edge_id]
        paths.append(GammaPath(edge_id, len(paths) + 1, tuple(arcs)))

    def gamma_paths(self, edge_id):
        if edge_id not in self._gammas:
            raise KeyError("Unknown edge {!r}".format(edge_id))
        return list(self._gammas[edge_id])

    def gadget(self, edge_id):
        """Arc ids of the gadget of an edge."""
        return {arc for path in self.gamma_paths(edge_id) for arc in path.arcs}


def _check_sigma(orientation, sigma):
    sigma = dict(sigma)
    for edge_id in orientation.base.edge_ids:
        if sigma.get(edge_id) not in (1, -1):
            raise ValueError("Sign of edge {} must be 1 or -1, not {!r}"
                             .format(edge_id, sigma.get(edge_id)))
    return sigma


def build_d_sigma(orientation, sigma):
    """Subdivide the negative edges of an orientation.

    Every edge with sign ``1`` is copied; every edge ``(v, w)`` with sign ``-1`` becomes the
    path ``v -> m -> w`` through a new vertex ``m``. New vertices are numbered in edge id
    order. When every sign is ``1`` the result has the same arcs as the orientation.

    Arguments
    ---------
    orientation : :class:`Orientation`
        Orientation to transform.
    sigma : dict(int : int)
        Sign of every edge.

    Return value
    ------------
    An :class:`AuxDigraph` with one gamma path per edge.
    """
    sigma = _check_sigma(orientation, sigma)
    tags  = [AuxVertex(AuxKind.ORIGINAL, v) for v in orientation.base.vertices]
    mids  = {}
    for edge_id, _, _ in orientation.arcs():
        if sigma[edge_id] == -1:
            tags.append(AuxVertex(AuxKind.MID, edge_id))
            mids[edge_id] = len(tags)

    digraph = AuxDigraph(orientation, tags, sigma)
    for edge_id, tail, head in orientation.arcs():
        if sigma[edge_id] == 1:
            arcs = [digraph.add_arc(tail, head)]
        else:
            arcs = [digraph.add_arc(tail, mids[edge_id]),
                    digraph.add_arc(mids[edge_id], head)]
        digraph._add_gamma(edge_id, arcs)
    digraph.freeze()
    return digraph


def build_d_sigma_phi(orientation, sign_data):
    """Replace every edge of an orientation by its multiplier gadget.

    For an edge ``(v, w)`` with positive part ``k`` the gadget has a tail vertex ``t`` and a
    head vertex ``h`` with arcs ``(v, t)`` and ``(h, w)``. If the sign is ``1``, ``k`` parallel
    arcs ``(t, h)`` join them; if it is ``-1``, ``k`` internal vertices ``x`` each carry the arcs
    ``(t, x)`` and ``(x, h)``. Gadget vertices are numbered in edge id order, the tail vertex
    before the internal vertices before the head vertex.

    Arguments
    ---------
    orientation : :class:`Orientation`
        Orientation the sign data is relative to.
    sign_data : :class:`SignData`
        Sign data with a positive integer part for every edge.

    Return value
    ------------
    An :class:`AuxDigraph` with ``k`` gamma paths per edge.

    Exceptions
    ----------
    Raises :exn:`ValueError` if the sign data is relative to another orientation, or if a
    multiplier has no positive integer part.
    """
    if not isinstance(sign_data, SignData):
        raise TypeError("Sign data must be an instance of SignData, not {!r}"
                        .format(sign_data))
    if sign_data.orientation != orientation:
        raise ValueError("Sign data must be relative to the given orientation")
    if not sign_data.integral:
        raise ValueError("Every multiplier must have a positive integer part")

    tags  = [AuxVertex(AuxKind.ORIGINAL, v) for v in orientation.base.vertices]
    slots = {}
    for edge_id, _, _ in orientation.arcs():
        sign = sign_data[edge_id]
        tags.append(AuxVertex(AuxKind.TAIL, edge_id))
        first = len(tags)
        if sign.sigma == -1:
            tags.extend(AuxVertex(AuxKind.INTERNAL, edge_id, i)
                        for i in range(1, sign.phi_plus + 1))
        tags.append(AuxVertex(AuxKind.HEAD, edge_id))
        slots[edge_id] = (first, len(tags))

    digraph = AuxDigraph(orientation, tags, sign_data.sigma(), sign_data)
    for edge_id, tail, head in orientation.arcs():
        sign = sign_data[edge_id]
        t, h = slots[edge_id]
        enter = digraph.add_arc(tail, t)
        if sign.sigma == 1:
            middles = [(digraph.add_arc(t, h),) for _ in range(sign.phi_plus)]
        else:
            middles = [(digraph.add_arc(t, t + i), digraph.add_arc(t + i, h))
                       for i in range(1, sign.phi_plus + 1)]
        leave = digraph.add_arc(h, head)
        for middle in middles:
            digraph._add_gamma(edge_id, (enter,) + middle + (leave,))
    digraph.freeze()
    return digraph


def gamma_paths(digraph, edge_id):
    """Gamma paths of an edge, as a list of :class:`GammaPath`.

    Exceptions
    ----------
    Raises :exn:`KeyError` if the edge is not found.
    """
    return digraph.gamma_paths(edge_id)


class EulerianStructure:
    """Outcome of :func:`check_eulerian_structure`.

    Attributes
    ----------
    eulerian : bool
        Whether the arc subset is Eulerian.
    paths : list of :class:`GammaPath` or None
        Decomposition into edge-disjoint gamma paths, if Eulerian.
    violation : tuple or None
        ``("edge", edge_id)`` if a gadget holds something other than a single whole gamma
        path, or ``("vertex", v)`` if an original vertex is unbalanced.
    """
    def __init__(self, eulerian, paths=None, violation=None):
        self.eulerian  = eulerian
        self.paths     = paths
        self.violation = violation

    def __bool__(self):
        return self.eulerian

    def __repr__(self):
        if self.eulerian:
            return "EulerianStructure(eulerian, paths={})".format(len(self.paths))
        return "EulerianStructure(violation={!r})".format(self.violation)


def _is_balanced(digraph, arcs):
    balance = {v: 0 for v in digraph.vertices}
    for arc_id in arcs:
        tail, head = digraph.arc(arc_id)
        balance[tail] += 1
        balance[head] -= 1
    return balance


def check_eulerian_structure(digraph, arcs):
    """Check whether an arc subset of an auxiliary digraph is Eulerian.

    The subset is accepted if every gadget holds either nothing or exactly one whole gamma
    path, and every original vertex is balanced. The verdict always agrees with the plain
    test that every vertex has equal in- and out-degree.

    Arguments
    ---------
    digraph : :class:`AuxDigraph`
        Auxiliary digraph.
    arcs : iterable of int
        Arc ids of the subset.

    Return value
    ------------
    An :class:`EulerianStructure`.
    """
    arcs = set(arcs)
    for arc_id in arcs:
        digraph.arc(arc_id)

    paths, violation = [], None
    for edge_id in digraph.orientation.base.edge_ids:
        held = arcs & digraph.gadget(edge_id)
        if not held:
            continue
        whole = [path for path in digraph.gamma_paths(edge_id) if set(path.arcs) == held]
        if not whole:
            violation = ("edge", edge_id)
            break
        paths.append(whole[0])

    balance = _is_balanced(digraph, arcs)
    if violation is None:
        for v in digraph.orientation.base.vertices:
            if balance[v] != 0:
                violation = ("vertex", v)
                break

    naive = all(value == 0 for value in balance.values())
    assert naive == (violation is None)
    if violation is not None:
        return EulerianStructure(False, violation=violation)
    return EulerianStructure(True, paths=paths)
