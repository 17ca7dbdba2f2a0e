import random
from fractions import Fraction

from .certify import Instance
from .correspondence import build_assignment
from .decomposition import absolute_shift, lift
from .field import FieldSpec
from .graph import Orientation, build_multigraph


__all__ = ["FIXTURES", "gen_fixture", "c4_figure", "c4_doubled", "k2_signed", "w6_lists",
           "w6_signable", "toroidal_grid", "cycle", "wheel", "random_assignment"]


def _straight(lists, u, v):
    return [(c, c) for c in lists[u] if c in lists[v]]


def _straight_matchings(graph, lists):
    return [(edge_id, u, _straight(lists, u, v)) for edge_id, (u, v) in graph.edges()]


def c4_figure():
    """The 4-cycle with lists ``{1, 2}``, three straight edges and the edge ``{3, 4}`` crossed.

    It has no coloring.
    """
    graph = build_multigraph(4, [(1, 2), (2, 3), (3, 4), (4, 1)])
    lists = {v: [1, 2] for v in graph.vertices}
    matchings = [(1, 1, [(1, 1), (2, 2)]),
                 (2, 2, [(1, 1), (2, 2)]),
                 (3, 3, [(1, 2), (2, 1)]),
                 (4, 4, [(1, 1), (2, 2)])]
    return Instance(build_assignment(graph, FieldSpec.rationals(), lists, matchings))


def c4_doubled():
    """The good lift of :func:`c4_figure`, with the crossed edge doubled, oriented so that
    the out-degrees are ``1, 1, 1, 2``."""
    assignment = lift(c4_figure().assignment, "good").assignment
    orientation = Orientation(assignment.graph, {1: 1, 2: 2, 3: 3, 4: 4, 5: 4})
    return Instance(assignment, orientation)


def k2_signed():
    """A single edge ``{v, w}`` with lists ``{-1, 1}`` and the one pair ``(-1, 1)``."""
    graph = build_multigraph(2, [(1, 2)])
    lists = {1: [-1, 1], 2: [-1, 1]}
    return Instance(build_assignment(graph, FieldSpec.rationals(), lists,
                                     [(1, 1, [(-1, 1)])]))


def _wheel_graph(n):
    rim = n - 1
    endpoints  = [(v, v % rim + 1) for v in range(1, rim + 1)]
    endpoints += [(v, n) for v in range(1, rim + 1)]
    return build_multigraph(n, endpoints)


# Edges {5, 1}, {2, 6} and {4, 6} of the wheel on six vertices.
W6_BAD_EDGES = (5, 7, 9)


def w6_lists():
    """The wheel on six vertices with hub list ``{0}``, rim lists ``{0, 1, 2}`` and straight
    matchings. It has no coloring."""
    graph = _wheel_graph(6)
    lists = {v: [0, 1, 2] for v in range(1, 6)}
    lists[6] = [0]
    return Instance(build_assignment(graph, FieldSpec.rationals(), lists,
                                     _straight_matchings(graph, lists)))


def w6_signable():
    """The wheel on six vertices with lists ``{0, 1, 2}``. Three edges pair colors summing to
    2, the others are straight. Subdividing those three edges gives a bipartite graph."""
    graph = _wheel_graph(6)
    lists = {v: [0, 1, 2] for v in graph.vertices}
    matchings = []
    for edge_id, (u, v) in graph.edges():
        if edge_id in W6_BAD_EDGES:
            matchings.append((edge_id, u, [(0, 2), (1, 1), (2, 0)]))
        else:
            matchings.append((edge_id, u, _straight(lists, u, v)))
    return Instance(build_assignment(graph, FieldSpec.rationals(), lists, matchings))


def _rung(rng, first, second):
    for shift in rng.sample(range(1, 8), 7):
        pairs = [(c1, c2) for c1 in first for c2 in second if c1 - c2 == shift]
        used1, used2 = {c1 for c1, _ in pairs}, {c2 for _, c2 in pairs}
        for c1 in first:
            for c2 in second:
                if c2 - c1 == shift and c1 not in used1 and c2 not in used2:
                    pairs.append((c1, c2))
                    used1.add(c1)
                    used2.add(c2)
        if any(c1 > c2 for c1, c2 in pairs) and any(c1 < c2 for c1, c2 in pairs):
            return pairs
    return None


def toroidal_grid(k=2, seed=0):
    """A ``2k`` by ``2k`` toroidal grid.

    Vertex ``r * 2k + c + 1`` sits in row ``r`` and column ``c``. Vertices with an even id get
    lists of 4 colors, the others lists of 3 colors, drawn from ``0..7``. The vertical edges
    of odd columns match pairs with ``|c1 - c2| = a`` in both directions; every other edge
    matches all pairs with one difference ``c1 - c2``. Lists and pairs are drawn from a
    generator seeded with ``seed``.
    """
    if not isinstance(k, int) or isinstance(k, bool) or k < 2:
        raise ValueError("Grid parameter must be an integer of at least 2, not {!r}"
                         .format(k))
    side = 2 * k

    def vertex(r, c):
        return (r % side) * side + (c % side) + 1

    endpoints, rungs = [], set()
    for r in range(side):
        for c in range(side):
            endpoints.append((vertex(r, c), vertex(r, c + 1)))
            endpoints.append((vertex(r, c), vertex(r + 1, c)))
            if c % 2 == 1:
                rungs.add(len(endpoints))
    graph = build_multigraph(side * side, endpoints)

    rng = random.Random(seed)
    while True:
        lists = {v: sorted(rng.sample(range(8), 4 if v % 2 == 0 else 3))
                 for v in graph.vertices}
        matchings = []
        for edge_id, (u, v) in graph.edges():
            if edge_id in rungs:
                pairs = _rung(rng, lists[u], lists[v])
                if pairs is None:
                    break
                assert absolute_shift(pairs, FieldSpec.rationals()) is not None
            else:
                shift = rng.choice(sorted({c1 - c2 for c1 in lists[u] for c2 in lists[v]}))
                pairs = [(c1, c2) for c1 in lists[u] for c2 in lists[v] if c1 - c2 == shift]
            matchings.append((edge_id, u, pairs))
        else:
            break
    return Instance(build_assignment(graph, FieldSpec.rationals(), lists, matchings))


def cycle(n=4):
    """A straight cycle on ``n`` vertices with lists of size 2 if ``n`` is even, else 3."""
    if not isinstance(n, int) or isinstance(n, bool) or n < 3:
        raise ValueError("Cycle length must be an integer of at least 3, not {!r}".format(n))
    graph = build_multigraph(n, [(v, v % n + 1) for v in range(1, n + 1)])
    colors = [1, 2] if n % 2 == 0 else [1, 2, 3]
    lists = {v: colors for v in graph.vertices}
    return Instance(build_assignment(graph, FieldSpec.rationals(), lists,
                                     _straight_matchings(graph, lists)))


def wheel(n=6):
    """A straight wheel on ``n`` vertices, hub ``n``, with lists ``{0, 1, 2, 3}``."""
    if not isinstance(n, int) or isinstance(n, bool) or n < 4:
        raise ValueError("Wheel size must be an integer of at least 4, not {!r}".format(n))
    graph = _wheel_graph(n)
    lists = {v: [0, 1, 2, 3] for v in graph.vertices}
    return Instance(build_assignment(graph, FieldSpec.rationals(), lists,
                                     _straight_matchings(graph, lists)))


FIXTURES = {
    "c4_figure":     c4_figure,
    "c4_doubled":    c4_doubled,
    "k2_signed":     k2_signed,
    "w6_lists":      w6_lists,
    "w6_signable":   w6_signable,
    "toroidal_grid": toroidal_grid,
    "cycle":         cycle,
    "wheel":         wheel,
}


def gen_fixture(name, **params):
    """Build a named fixture.

    Arguments
    ---------
    name : str
        One of the keys of :data:`FIXTURES`.
    **params
        Parameters of the fixture, such as ``k`` and ``seed`` for ``toroidal_grid`` or ``n``
        for ``cycle`` and ``wheel``.

    Return value
    ------------
    An :class:`Instance`.
    """
    if name not in FIXTURES:
        raise ValueError("Unknown fixture {!r}; must be one of {}"
                         .format(name, ", ".join(FIXTURES)))
    return FIXTURES[name](**params)


def random_assignment(rng, field, *, n_max=5, list_max=3, edge_prob=0.5):
    """Draw a random correspondence assignment.

    Most matchings lie on a line ``c1 = phi * c2 + a``; some are straight, arbitrary or
    empty. Edges are occasionally doubled.

    Arguments
    ---------
    rng : :class:`random.Random`
        Source of randomness.
    field : :class:`FieldSpec`
        Field of the colors.
    n_max : int
        Maximum vertex count, at least 2.
    list_max : int
        Maximum list size.
    edge_prob : float
        Probability of each vertex pair being an edge.
    """
    n = rng.randint(2, n_max)
    endpoints = []
    for u in range(1, n + 1):
        for v in range(u + 1, n + 1):
            if rng.random() < edge_prob:
                endpoints.append((u, v))
                if rng.random() < 0.15:
                    endpoints.append((v, u))
    if not endpoints:
        endpoints.append((1, 2))
    graph = build_multigraph(n, endpoints)

    if field.is_prime:
        universe = list(range(field.p))
        slopes   = list(range(1, field.p))
    else:
        universe = list(range(-list_max, list_max + 1))
        slopes   = [1, -1, 2, -2, 3, Fraction(1, 2)]
    lists = {v: rng.sample(universe, rng.randint(1, min(list_max, len(universe))))
             for v in graph.vertices}

    matchings = []
    for edge_id, (u, v) in graph.edges():
        tail, head = rng.choice([(u, v), (v, u)])
        first, second = lists[tail], lists[head]
        kind = rng.choice(("straight", "line", "line", "line", "random", "empty"))
        if kind == "straight":
            pairs = [(c, c) for c in first if c in second]
        elif kind == "line":
            phi   = field.element(rng.choice(slopes))
            shift = field.sub(field.element(rng.choice(first)),
                              field.mul(phi, field.element(rng.choice(second))))
            pairs = [(c1, c2) for c2 in second for c1 in first
                     if field.element(c1) == field.add(field.mul(phi, field.element(c2)),
                                                       shift)]
            pairs = [pair for pair in pairs if rng.random() < 0.85]
        elif kind == "random":
            size  = rng.randint(0, min(len(first), len(second)))
            pairs = list(zip(rng.sample(first, size), rng.sample(second, size)))
        else:
            pairs = []
        matchings.append((edge_id, tail, pairs))
    return build_assignment(graph, field, lists, matchings)
