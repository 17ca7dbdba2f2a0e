from collections import OrderedDict, deque

import networkx as nx

from .caps import _resolve


__all__ = ["Multigraph", "Digraph", "Orientation", "build_multigraph", "out_degrees",
           "enumerate_orientations", "find_bounded_orientation", "subdivide", "is_bipartite"]


def _check_count(n):
    if not isinstance(n, int) or isinstance(n, bool) or n < 0:
        raise ValueError("Vertex count must be a non-negative integer, not {!r}"
                         .format(n))


def _check_vertex(n, v, what="Vertex"):
    if not isinstance(v, int) or isinstance(v, bool) or not 1 <= v <= n:
        raise ValueError("{} must be an integer between 1 and {}, not {!r}"
                         .format(what, n, v))


class Multigraph:
    """Loopless multigraph.

    A multigraph is built by adding edges, which are numbered implicitly by increment,
    starting at 1. Vertices are the integers ``1..n``. Parallel edges are permitted, loops
    are not. Once frozen, no more edges can be added.

    Parameters
    ----------
    n : int
        Vertex count.
    """
    def __init__(self, n):
        _check_count(n)
        self._n      = n
        self._edges  = OrderedDict()
        self._frozen = False

    @property
    def n(self):
        return self._n

    @property
    def size(self):
        """Number of edges."""
        return len(self._edges)

    @property
    def vertices(self):
        return range(1, self._n + 1)

    @property
    def frozen(self):
        return self._frozen

    def freeze(self):
        """Freeze the multigraph.

        Once the multigraph is frozen, edges cannot be added anymore.
        """
        self._frozen = True

    def add_edge(self, u, v):
        """Add an edge.

        Arguments
        ---------
        u, v : int
            Endpoints. Must be distinct vertices.

        Return value
        ------------
        The id of the new edge.

        Exceptions
        ----------
        Raises :exn:`ValueError` if the multigraph is frozen, if an endpoint is out of range,
        or if the edge is a loop.
        """
        if self._frozen:
            raise ValueError("Multigraph has been frozen. Cannot add edge {{{}, {}}}"
                             .format(u, v))
        _check_vertex(self._n, u, "Endpoint")
        _check_vertex(self._n, v, "Endpoint")
        if u == v:
            raise ValueError("Edge {{{}, {}}} is a loop".format(u, v))
        edge_id = self.size + 1
        self._edges[edge_id] = (u, v)
        return edge_id

    def edge(self, edge_id):
        """Get the endpoints ``(u, v)`` of an edge, in the order they were added.

        Exceptions
        ----------
        Raises :exn:`KeyError` if the edge is not found.
        """
        if edge_id not in self._edges:
            raise KeyError("Unknown edge {!r}".format(edge_id))
        return self._edges[edge_id]

    def edges(self):
        """Iterate edges.

        Yield values
        ------------
        A tuple ``edge_id, (u, v)`` for each edge, in id order.
        """
        yield from self._edges.items()

    @property
    def edge_ids(self):
        return list(self._edges)

    def __contains__(self, edge_id):
        return edge_id in self._edges

    def other(self, edge_id, v):
        """Get the endpoint of an edge opposite to ``v``."""
        u, w = self.edge(edge_id)
        if v == u:
            return w
        if v == w:
            return u
        raise ValueError("Vertex {} is not an endpoint of edge {}".format(v, edge_id))

    def incident(self, v):
        """Get the ids of the edges incident to ``v``."""
        return [edge_id for edge_id, (a, b) in self._edges.items() if v in (a, b)]

    def degree(self, v):
        return len(self.incident(v))

    def copy(self):
        """Create an unfrozen copy with identical edge ids."""
        graph = Multigraph(self._n)
        for u, v in self._edges.values():
            graph.add_edge(u, v)
        return graph

    def to_networkx(self):
        """Convert to a :class:`networkx.MultiGraph` keyed by edge id."""
        graph = nx.MultiGraph()
        graph.add_nodes_from(self.vertices)
        for edge_id, (u, v) in self._edges.items():
            graph.add_edge(u, v, key=edge_id)
        return graph

    def __eq__(self, other):
        return (isinstance(other, Multigraph) and self._n == other._n
                and list(self._edges.items()) == list(other._edges.items()))

    def __hash__(self):
        return hash((self._n, tuple(self._edges.items())))

    def __repr__(self):
        return "Multigraph(n={}, edges={})".format(self._n, list(self._edges.values()))


class Digraph:
    """Loopless multidigraph.

    Arcs are numbered implicitly by increment, starting at 1. Parallel and antiparallel arcs
    are permitted, loops are not.

    Parameters
    ----------
    n : int
        Vertex count.
    """
    def __init__(self, n):
        _check_count(n)
        self._n      = n
        self._arcs   = OrderedDict()
        self._frozen = False

    @property
    def n(self):
        return self._n

    @property
    def size(self):
        """Number of arcs."""
        return len(self._arcs)

    @property
    def vertices(self):
        return range(1, self._n + 1)

    def freeze(self):
        self._frozen = True

    def add_arc(self, tail, head):
        """Add an arc from ``tail`` to ``head`` and return its id.

        Exceptions
        ----------
        Raises :exn:`ValueError` if the digraph is frozen, if an endpoint is out of range,
        or if the arc is a loop.
        """
        if self._frozen:
            raise ValueError("Digraph has been frozen. Cannot add arc ({}, {})"
                             .format(tail, head))
        _check_vertex(self._n, tail, "Tail")
        _check_vertex(self._n, head, "Head")
        if tail == head:
            raise ValueError("Arc ({}, {}) is a loop".format(tail, head))
        arc_id = self.size + 1
        self._arcs[arc_id] = (tail, head)
        return arc_id

    def arc(self, arc_id):
        if arc_id not in self._arcs:
            raise KeyError("Unknown arc {!r}".format(arc_id))
        return self._arcs[arc_id]

    def arcs(self):
        """Iterate arcs.

        Yield values
        ------------
        A tuple ``arc_id, tail, head`` for each arc, in id order.
        """
        for arc_id, (tail, head) in self._arcs.items():
            yield arc_id, tail, head

    @property
    def arc_ids(self):
        return list(self._arcs)

    def out_degree(self, v):
        return sum(1 for tail, _ in self._arcs.values() if tail == v)

    def in_degree(self, v):
        return sum(1 for _, head in self._arcs.values() if head == v)

    def underlying(self):
        """Get the underlying :class:`Multigraph`, with edge ids equal to arc ids."""
        graph = Multigraph(self._n)
        for tail, head in self._arcs.values():
            graph.add_edge(tail, head)
        graph.freeze()
        return graph

    def vertex_label(self, v):
        return "v{}".format(v)

    def to_dot(self, name="D"):
        """Render as Graphviz DOT text, with arcs labelled by their ids."""
        lines = ["digraph {} {{".format(name)]
        for v in self.vertices:
            lines.append("  {};".format(self.vertex_label(v)))
        for arc_id, tail, head in self.arcs():
            lines.append("  {} -> {} [label=\"{}\"];"
                         .format(self.vertex_label(tail), self.vertex_label(head), arc_id))
        lines.append("}")
        return "\n".join(lines) + "\n"

    def __eq__(self, other):
        return (isinstance(other, Digraph) and self._n == other._n
                and list(self._arcs.items()) == list(other._arcs.items()))

    def __hash__(self):
        return hash((self._n, tuple(self._arcs.items())))

    def __repr__(self):
        return "Digraph(n={}, arcs={})".format(self._n, list(self._arcs.values()))


class Orientation:
    """Orientation of a multigraph.

    Parameters
    ----------
    base : :class:`Multigraph`
        Oriented multigraph. It is frozen by the orientation.
    tails : dict(int : int)
        Tail of each edge, by edge id. Every edge of ``base`` must have an entry.

    Exceptions
    ----------
    Raises :exn:`ValueError` if an edge is missing, unknown, or if its tail is not one of
    its endpoints.
    """
    def __init__(self, base, tails):
        if not isinstance(base, Multigraph):
            raise TypeError("Base must be an instance of Multigraph, not {!r}".format(base))
        base.freeze()
        tails = dict(tails)
        for edge_id in tails:
            if edge_id not in base:
                raise ValueError("Orientation refers to unknown edge {!r}".format(edge_id))
        self._base  = base
        self._tails = OrderedDict()
        for edge_id, (u, v) in base.edges():
            if edge_id not in tails:
                raise ValueError("Orientation has no direction for edge {}".format(edge_id))
            if tails[edge_id] not in (u, v):
                raise ValueError("Tail of edge {} must be {} or {}, not {!r}"
                                 .format(edge_id, u, v, tails[edge_id]))
            self._tails[edge_id] = tails[edge_id]

    @classmethod
    def natural(cls, base):
        """Orient every edge ``{u, v}`` from ``u`` to ``v``, in the order it was added."""
        return cls(base, {edge_id: u for edge_id, (u, v) in base.edges()})

    @property
    def base(self):
        return self._base

    @property
    def n(self):
        return self._base.n

    @property
    def size(self):
        return self._base.size

    @property
    def key(self):
        """Tails in edge id order. Orders orientations of the same multigraph."""
        return tuple(self._tails.values())

    def tail(self, edge_id):
        if edge_id not in self._tails:
            raise KeyError("Unknown edge {!r}".format(edge_id))
        return self._tails[edge_id]

    def head(self, edge_id):
        return self._base.other(edge_id, self.tail(edge_id))

    def arcs(self):
        """Iterate arcs.

        Yield values
        ------------
        A tuple ``edge_id, tail, head`` for each edge, in id order.
        """
        for edge_id, tail in self._tails.items():
            yield edge_id, tail, self._base.other(edge_id, tail)

    def reverse(self, edge_ids):
        """Return the orientation with the given edges reversed."""
        tails = OrderedDict(self._tails)
        for edge_id in edge_ids:
            tails[edge_id] = self.head(edge_id)
        return Orientation(self._base, tails)

    def to_digraph(self):
        """Get the oriented :class:`Digraph`. Arc ids equal edge ids."""
        digraph = Digraph(self.n)
        for edge_id, tail, head in self.arcs():
            arc_id = digraph.add_arc(tail, head)
            assert arc_id == edge_id
        digraph.freeze()
        return digraph

    def to_dot(self, name="D"):
        return self.to_digraph().to_dot(name)

    def __eq__(self, other):
        return (isinstance(other, Orientation) and self._base == other._base
                and self._tails == other._tails)

    def __hash__(self):
        return hash((self._base, self.key))

    def __repr__(self):
        return "Orientation({})".format(["{}->{}".format(tail, head)
                                          for _, tail, head in self.arcs()])


def build_multigraph(n, endpoints):
    """Build a frozen multigraph.

    Arguments
    ---------
    n : int
        Vertex count.
    endpoints : iterable of (int, int)
        Edge endpoints. Edges receive ids ``1..m`` in this order.

    Return value
    ------------
    A frozen :class:`Multigraph`.
    """
    graph = Multigraph(n)
    for pair in endpoints:
        u, v = pair
        graph.add_edge(u, v)
    graph.freeze()
    return graph


def out_degrees(orientation):
    """Out-degree of every vertex, as an ordered ``{vertex: count}`` dictionary."""
    degrees = OrderedDict((v, 0) for v in orientation.base.vertices)
    for _, tail, _ in orientation.arcs():
        degrees[tail] += 1
    return degrees


def _check_fixed(graph, fixed):
    fixed = dict(fixed or {})
    for edge_id, tail in fixed.items():
        if tail not in graph.edge(edge_id):
            raise ValueError("Fixed tail of edge {} must be one of its endpoints, not {!r}"
                             .format(edge_id, tail))
    return fixed


def enumerate_orientations(graph, *, fixed=None, caps=None):
    """Enumerate all orientations of a multigraph.

    Orientations are produced by a binary counter over edge ids: bit ``i - 1`` of the counter
    reverses the ``i``-th free edge from its natural direction.

    Arguments
    ---------
    graph : :class:`Multigraph`
        Multigraph to orient.
    fixed : dict(int : int) or None
        Edges whose tail is prescribed. They are not enumerated.
    caps : :class:`Caps` or None
        Enumeration caps. The number of free edges is bounded by the ``orientations`` cap.

    Yield values
    ------------
    Each :class:`Orientation` exactly once.

    Exceptions
    ----------
    Raises :exn:`CapExceededError` if there are too many free edges.
    """
    caps  = _resolve(caps)
    graph.freeze()
    fixed = _check_fixed(graph, fixed)
    free  = [edge_id for edge_id in graph.edge_ids if edge_id not in fixed]
    caps.check("orientations", len(free))

    def generate():
        for counter in range(2 ** len(free)):
            tails = {}
            for edge_id, (u, v) in graph.edges():
                tails[edge_id] = fixed.get(edge_id, u)
            for bit, edge_id in enumerate(free):
                if counter >> bit & 1:
                    tails[edge_id] = graph.edge(edge_id)[1]
            yield Orientation(graph, tails)

    return generate()


def _check_bounds(graph, bounds):
    bounds = dict(bounds)
    for v in graph.vertices:
        if v not in bounds:
            raise ValueError("Out-degree bound for vertex {} is missing".format(v))
        bound = bounds[v]
        if not isinstance(bound, int) or isinstance(bound, bool) or bound < 0:
            raise ValueError("Out-degree bound of vertex {} must be a non-negative integer, "
                             "not {!r}".format(v, bound))
    return bounds


def find_bounded_orientation(graph, bounds, *, fixed=None, initial=None):
    """Find an orientation with bounded out-degrees.

    Starting from an initial orientation, a directed path from an overloaded vertex to a
    vertex with spare capacity is reversed until no vertex is overloaded. Paths are found by
    breadth-first search, visiting arcs in edge id order.

    Arguments
    ---------
    graph : :class:`Multigraph`
        Multigraph to orient.
    bounds : dict(int : int)
        Maximum out-degree of every vertex.
    fixed : dict(int : int) or None
        Edges whose tail is prescribed. They are never reversed.
    initial : :class:`Orientation` or None
        Starting orientation. It must agree with ``fixed``. By default each free edge is
        oriented away from the endpoint with more spare capacity.

    Return value
    ------------
    An :class:`Orientation` satisfying the bounds, or ``None`` if no such orientation exists.
    """
    graph.freeze()
    bounds = _check_bounds(graph, bounds)
    fixed  = _check_fixed(graph, fixed)

    tails   = {}
    degrees = {v: 0 for v in graph.vertices}
    if initial is not None:
        if initial.base != graph:
            raise ValueError("Initial orientation must orient the same multigraph")
        for edge_id, tail, _ in initial.arcs():
            if edge_id in fixed and fixed[edge_id] != tail:
                raise ValueError("Initial orientation contradicts the fixed tail of edge {}"
                                 .format(edge_id))
            tails[edge_id] = tail
            degrees[tail] += 1
    else:
        for edge_id, tail in fixed.items():
            tails[edge_id] = tail
            degrees[tail] += 1
        for edge_id, (u, v) in graph.edges():
            if edge_id in fixed:
                continue
            tail = u if bounds[u] - degrees[u] >= bounds[v] - degrees[v] else v
            tails[edge_id] = tail
            degrees[tail] += 1

    out_arcs = {v: [] for v in graph.vertices}
    for edge_id, (u, v) in graph.edges():
        if edge_id not in fixed:
            out_arcs[u].append(edge_id)
            out_arcs[v].append(edge_id)

    def augmenting_path(source):
        parent = {source: None}
        queue  = deque([source])
        while queue:
            v = queue.popleft()
            for edge_id in out_arcs[v]:
                if tails[edge_id] != v:
                    continue
                w = graph.other(edge_id, v)
                if w in parent:
                    continue
                parent[w] = (v, edge_id)
                if degrees[w] < bounds[w]:
                    path = []
                    while parent[w] is not None:
                        w, edge_id = parent[w]
                        path.append(edge_id)
                    return path
                queue.append(w)
        return None

    for v in graph.vertices:
        while degrees[v] > bounds[v]:
            path = augmenting_path(v)
            if path is None:
                return None
            for edge_id in path:
                tail = tails[edge_id]
                head = graph.other(edge_id, tail)
                tails[edge_id] = head
                degrees[tail] -= 1
                degrees[head] += 1

    return Orientation(graph, tails)


def subdivide(graph, edge_ids):
    """Subdivide edges.

    Each selected edge ``e = {u, v}`` keeps its id as the edge ``{u, x}`` towards a new
    vertex ``x``; the edge ``{x, v}`` is appended. New vertices and edges are numbered in
    increasing order of the selected edge ids.

    Arguments
    ---------
    graph : :class:`Multigraph`
        Multigraph to subdivide.
    edge_ids : iterable of int
        Edges to subdivide.

    Return value
    ------------
    A frozen :class:`Multigraph`.

    Exceptions
    ----------
    Raises :exn:`KeyError` if an edge is not found.
    """
    selected = sorted(set(edge_ids))
    for edge_id in selected:
        graph.edge(edge_id)
    result = Multigraph(graph.n + len(selected))
    middle = {edge_id: graph.n + index + 1 for index, edge_id in enumerate(selected)}
    for edge_id, (u, v) in graph.edges():
        result.add_edge(u, middle.get(edge_id, v))
    for edge_id in selected:
        result.add_edge(middle[edge_id], graph.edge(edge_id)[1])
    result.freeze()
    return result


def is_bipartite(graph, *, witness=False):
    """Check whether a multigraph is bipartite.

    Parallel edges form even cycles and never make a graph non-bipartite.

    Arguments
    ---------
    graph : :class:`Multigraph`
        Multigraph to check.
    witness : bool
        If true, also return a witness.

    Return value
    ------------
    ``True`` or ``False``; if ``witness`` is true, a tuple ``(bipartite, witness)`` where
    the witness is a ``{vertex: 0 or 1}`` 2-coloring, or a list of vertices forming a
    closed walk of odd length (the first vertex is not repeated at the end).
    """
    simple = nx.Graph(graph.to_networkx())
    try:
        coloring = nx.bipartite.color(simple)
    except nx.NetworkXError:
        coloring = None
    if not witness:
        return coloring is not None
    if coloring is not None:
        return True, {v: coloring[v] for v in graph.vertices}

    for component in nx.connected_components(simple):
        root  = min(component)
        paths = nx.single_source_shortest_path(simple, root)
        for u, v in sorted(simple.subgraph(component).edges()):
            if len(paths[u]) % 2 == len(paths[v]) % 2:
                walk = paths[u] + list(reversed(paths[v]))
                return False, walk[:-1]
    assert False # :nocov:
