import enum
import logging
import random
from collections import OrderedDict, deque

from .auxiliary import build_d_sigma, build_d_sigma_phi
from .caps import CapExceededError, _resolve
from .correspondence import CorrespondenceAssignment, EdgeClass, classify_assignment
from .decomposition import CoverMode, lift
from .graph import (Orientation, enumerate_orientations, find_bounded_orientation,
                    is_bipartite, out_degrees)
from .nullstellensatz import (at_sufficient_monomial, count_eulerian, eulerian_difference,
                              expand_graph_polynomial, verify_identity)
from .solver import SearchBudgetExhausted, solve


__all__ = ["CertifyMode", "Strategy", "Outcome", "Reason", "Route", "Instance",
           "Certificate", "Verdict", "working_assignment", "certify", "replay",
           "CrossValidationReport", "cross_validate"]


logger = logging.getLogger(__name__)


def _parse(cls, value, what):
    if isinstance(value, cls):
        return value
    choices = [member.value for member in cls]
    if value not in choices:
        raise ValueError("Invalid {} {!r}; must be one of {}"
                         .format(what, value, ", ".join(choices)))
    return cls(value)


class CertifyMode(enum.Enum):
    """Class the assignment is lifted to before certification."""
    AUTO      = "auto"
    GOOD      = "good"
    SIGNABLE  = "signable"
    ZSIGNABLE = "zsignable"


class Strategy(enum.Enum):
    """How orientations are searched."""
    BOUNDED_FIRST   = "bounded-first"
    EXHAUSTIVE      = "exhaustive"
    NULLSTELLENSATZ = "nullstellensatz"


class Outcome(enum.Enum):
    CERTIFIED    = "certified"
    INCONCLUSIVE = "inconclusive"


class Reason(enum.Enum):
    NO_FEASIBLE_ORIENTATION = "no-feasible-orientation"
    ZERO_RESIDUE            = "zero-residue"
    CLASS_NOT_APPLICABLE    = "class-not-applicable"
    CAPS_EXCEEDED           = "caps-exceeded"
    EMPTY_LIST              = "empty-list"
    REPLAY_MISMATCH         = "replay-mismatch"


class Route(enum.Enum):
    """Digraph or polynomial whose coefficient certifies colorability."""
    ORIENTATION = "orientation"
    SIGMA       = "sigma"
    SIGMA_PHI   = "sigma-phi"
    POLYNOMIAL  = "polynomial"


class Instance:
    """Certification instance.

    Parameters
    ----------
    assignment : :class:`CorrespondenceAssignment`
        Assignment to certify. It is frozen.
    orientation : :class:`Orientation` or None
        If given, the only orientation certification may use. Lifted edges inherit the
        direction of their original edge.
    """
    def __init__(self, assignment, orientation=None):
        if not isinstance(assignment, CorrespondenceAssignment):
            raise TypeError("Assignment must be an instance of CorrespondenceAssignment, "
                            "not {!r}".format(assignment))
        assignment.freeze()
        if orientation is not None:
            if not isinstance(orientation, Orientation):
                raise TypeError("Orientation must be an instance of Orientation, not {!r}"
                                .format(orientation))
            if orientation.base != assignment.graph:
                raise ValueError("Orientation must orient the graph of the assignment")
        self._assignment  = assignment
        self._orientation = orientation

    @property
    def assignment(self):
        return self._assignment

    @property
    def graph(self):
        return self._assignment.graph

    @property
    def field(self):
        return self._assignment.field

    @property
    def orientation(self):
        return self._orientation

    def __repr__(self):
        return "Instance({!r})".format(self._assignment)


class Certificate:
    """Evidence that an assignment is colorable.

    Attributes
    ----------
    mode : :class:`CoverMode` or None
        Class the assignment was lifted to, or ``None`` if it was used as is.
    lifted : bool
        Whether the working assignment is a lift.
    provenance : dict(int : (int, int))
        Original edge and part index of every working edge.
    route : :class:`Route`
        Certifying construction.
    orientation : :class:`Orientation`
        Orientation of the working multigraph.
    degrees : dict(int : (int, int))
        Required and available list size of every vertex.
    sigma : dict(int : int) or None
        Signs used by the auxiliary digraph.
    phi_plus : dict(int : int) or None
        Positive parts used by the auxiliary digraph.
    even, odd : int or None
        Eulerian subdigraph counts, ``even`` is ``None`` if the bipartite shortcut skipped
        counting.
    residue : field element or None
        ``even - odd`` in the field, or the certifying polynomial coefficient.
    bipartite : bool
        Whether the auxiliary digraph is bipartite, which rules out odd Eulerian
        subdigraphs.
    monomial : tuple or None
        Certifying monomial of the polynomial route.
    """
    def __init__(self, *, mode, lifted, provenance, route, orientation, degrees,
                 sigma=None, phi_plus=None, even=None, odd=None, residue=None,
                 bipartite=False, monomial=None):
        self.mode        = mode
        self.lifted      = lifted
        self.provenance  = provenance
        self.route       = route
        self.orientation = orientation
        self.degrees     = degrees
        self.sigma       = sigma
        self.phi_plus    = phi_plus
        self.even        = even
        self.odd         = odd
        self.residue     = residue
        self.bipartite   = bipartite
        self.monomial    = monomial

    def _evidence(self):
        return (self.route, self.sigma, self.phi_plus, self.even, self.odd, self.residue,
                self.bipartite, self.monomial)

    def __repr__(self):
        return "Certificate({}, even={}, odd={}, bipartite={})".format(
            self.route.value, self.even, self.odd, self.bipartite)


class Verdict:
    """Outcome of certification.

    Attributes
    ----------
    outcome : :class:`Outcome`
        Whether the assignment was certified colorable.
    certificate : :class:`Certificate` or None
        Evidence, if certified.
    reason : :class:`Reason` or None
        Why certification failed, if inconclusive.
    detail : str or None
        Human-readable detail of the reason.
    """
    def __init__(self, outcome, certificate=None, reason=None, detail=None):
        self.outcome     = Outcome(outcome)
        self.certificate = certificate
        self.reason      = None if reason is None else Reason(reason)
        self.detail      = detail

    @classmethod
    def certified(cls, certificate):
        return cls(Outcome.CERTIFIED, certificate=certificate)

    @classmethod
    def inconclusive(cls, reason, detail=None):
        return cls(Outcome.INCONCLUSIVE, reason=reason, detail=detail)

    def __bool__(self):
        return self.outcome == Outcome.CERTIFIED

    def __repr__(self):
        if self:
            return "Verdict(certified, {!r})".format(self.certificate)
        return "Verdict(inconclusive, {})".format(self.reason.value)


def working_assignment(assignment, mode=None, caps=None):
    """Assignment certification works on.

    Arguments
    ---------
    assignment : :class:`CorrespondenceAssignment`
        Original assignment.
    mode : :class:`CoverMode` or None
        Lift class. The assignment itself is used if ``mode`` is ``None`` or if it already
        belongs to the class.
    caps : :class:`Caps` or None
        Caps forwarded to :func:`lift`.

    Return value
    ------------
    A tuple ``(working, provenance, lifted)``.
    """
    if mode is not None:
        mode = CoverMode.parse(mode)
    if mode is None or classify_assignment(assignment).tag.within(mode.edge_class):
        provenance = OrderedDict((edge_id, (edge_id, 0))
                                 for edge_id in assignment.graph.edge_ids)
        return assignment, provenance, False
    result = lift(assignment, mode, caps=caps)
    return result.assignment, result.provenance, True


def _choose_mode(assignment, caps):
    best, error = None, None
    for mode in (CoverMode.GOOD, CoverMode.SIGNABLE, CoverMode.ZSIGNABLE):
        try:
            working = working_assignment(assignment, mode, caps)
        except CapExceededError as exc:
            error = exc
            continue
        logger.debug("Mode %s needs %d edges", mode.value, working[0].graph.size)
        if best is None or working[0].graph.size < best[1][0].graph.size:
            best = mode, working
    if best is None:
        raise error
    return best


def _fixed_edges(working):
    # Over the rationals, reversing an edge with a multiplier other than 1 or -1 can move it
    # out of the subgroup generated by 1.
    if working.field.is_prime:
        return {}
    classification = classify_assignment(working)
    fixed = {}
    for matching in working.matchings():
        edge = classification.edges[matching.edge_id]
        if edge.tag == EdgeClass.IRREGULAR or edge.phi not in (1, -1):
            fixed[matching.edge_id] = matching.tail
    return fixed


def _bounds(working):
    return {v: len(colors) - 1 for v, colors in working.lists()}


def _degree_table(working, orientation):
    return OrderedDict((v, (degree + 1, len(working.list(v))))
                       for v, degree in out_degrees(orientation).items())


def _transport(orientation, working, provenance):
    return Orientation(working.graph, {lifted_id: orientation.tail(edge_id)
                                       for lifted_id, (edge_id, _) in provenance.items()})


def _directed_path(orientation, source, free, targets):
    graph  = orientation.base
    parent = {source: None}
    queue  = deque([source])
    while queue:
        v = queue.popleft()
        for edge_id in graph.incident(v):
            if edge_id not in free or orientation.tail(edge_id) != v:
                continue
            w = graph.other(edge_id, v)
            if w in parent:
                continue
            parent[w] = (v, edge_id)
            if w in targets:
                path = []
                while parent[w] is not None:
                    w, edge_id = parent[w]
                    path.append(edge_id)
                return path[::-1]
            queue.append(w)
    return None


def _neighbours(orientation, bounds, free):
    degrees = out_degrees(orientation)
    slack   = {v for v, degree in degrees.items() if degree < bounds[v]}
    for edge_id, tail, head in orientation.arcs():
        if edge_id not in free:
            continue
        if head in slack:
            yield orientation.reverse([edge_id])
        cycle = _directed_path(orientation, head, free, {tail})
        if cycle is not None:
            yield orientation.reverse([edge_id] + cycle)
    for v in orientation.base.vertices:
        path = _directed_path(orientation, v, free, slack - {v})
        if path is not None and len(path) > 1:
            yield orientation.reverse(path)


def _walk(start, bounds, free, budget):
    """Breadth-first walk over orientations respecting the bounds."""
    seen  = {start.key}
    queue = deque([start])
    yield start
    while queue:
        current = queue.popleft()
        for neighbour in _neighbours(current, bounds, free):
            if neighbour.key in seen:
                continue
            if len(seen) >= budget:
                return
            seen.add(neighbour.key)
            queue.append(neighbour)
            yield neighbour


def _feasible(orientation, bounds):
    return all(degree <= bounds[v] for v, degree in out_degrees(orientation).items())


def _evaluate(working, orientation, caps):
    """Certify one orientation. Returns ``(fields, None)`` or ``(None, reason)``."""
    field = working.field
    classification = classify_assignment(working, orientation)
    sign_data = classification.sign_data
    if classification.tag == EdgeClass.GOOD:
        route, digraph = Route.ORIENTATION, orientation.to_digraph()
    elif classification.tag == EdgeClass.SIGNABLE:
        route, digraph = Route.SIGMA, build_d_sigma(orientation, sign_data.sigma())
    elif classification.tag == EdgeClass.ZSIGNABLE and sign_data.integral:
        route, digraph = Route.SIGMA_PHI, build_d_sigma_phi(orientation, sign_data)
    else:
        return None, Reason.CLASS_NOT_APPLICABLE

    fields = {
        "route":    route,
        "sigma":    None if route == Route.ORIENTATION else sign_data.sigma(),
        "phi_plus": None if route != Route.SIGMA_PHI else
                    OrderedDict((edge_id, sign.phi_plus) for edge_id, sign in sign_data.items()),
    }

    # A bipartite digraph has no odd Eulerian subdigraph, so EE - EO = EE > 0 over the
    # rationals. Over a prime field EE itself may vanish and must be counted.
    if not field.is_prime and is_bipartite(digraph.underlying()):
        even = None
        if digraph.size <= caps["eulerian"]:
            even = count_eulerian(digraph, caps=caps).even
        fields.update(even=even, odd=0, bipartite=True,
                      residue=None if even is None else field.reduce(even))
        return fields, None

    count = count_eulerian(digraph, caps=caps)
    residue = field.reduce(count.difference)
    if residue == 0:
        return None, Reason.ZERO_RESIDUE
    fields.update(even=count.even, odd=count.odd, bipartite=False, residue=residue)
    return fields, None


def _certify_polynomial(instance, working, provenance, caps):
    field = working.field
    if instance.orientation is not None:
        orientation = _transport(instance.orientation, working, provenance)
    else:
        orientation = working.natural_orientation()
    classification = classify_assignment(working, orientation)
    if classification.sign_data is None:
        return None, Reason.CLASS_NOT_APPLICABLE
    polynomial = expand_graph_polynomial(orientation, classification.sign_data.phi(),
                                         caps=caps)
    monomial = at_sufficient_monomial(polynomial, working, field)
    if monomial is None:
        return None, Reason.ZERO_RESIDUE
    return {
        "route":       Route.POLYNOMIAL,
        "orientation": orientation,
        "degrees":     OrderedDict((v, (exponent + 1, len(working.list(v))))
                                   for v, exponent in enumerate(monomial, start=1)),
        "monomial":    monomial,
        "residue":     field.reduce(polynomial[monomial]),
    }, None


def certify(instance, mode="auto", strategy="bounded-first", *, caps=None):
    """Certify that an assignment is colorable.

    The assignment is lifted, unless it already belongs to the class of ``mode``. Then
    orientations of the working multigraph in which every out-degree is less than the list
    size are searched; for each, the auxiliary digraph matching the class of the working
    assignment is built and its Eulerian subdigraphs counted. The first orientation with a
    nonzero difference in the field certifies the assignment. Over the rationals a bipartite
    auxiliary digraph certifies without counting.

    With the ``nullstellensatz`` strategy, the graph polynomial of the tail orientation is
    expanded instead and searched for a monomial that fits the lists.

    Arguments
    ---------
    instance : :class:`Instance`
        Instance to certify.
    mode : :class:`CertifyMode` or str
        Lift class. ``auto`` picks the class whose working multigraph has the fewest edges,
        preferring good, then signable, then Z-signable. With the ``nullstellensatz``
        strategy, ``auto`` uses the assignment as is unless it is irregular.
    strategy : :class:`Strategy` or str
        ``bounded-first`` walks from one feasible orientation to its neighbours, within the
        ``visit_budget`` cap; ``exhaustive`` tries all feasible orientations, within the
        ``exhaustive`` cap.
    caps : :class:`Caps` or None
        Caps of every stage.

    Return value
    ------------
    A :class:`Verdict`. Exceeded caps make the verdict inconclusive.
    """
    mode     = _parse(CertifyMode, mode, "certify mode")
    strategy = _parse(Strategy, strategy, "strategy")
    caps     = _resolve(caps)
    if not isinstance(instance, Instance):
        raise TypeError("Instance must be an instance of Instance, not {!r}".format(instance))
    assignment = instance.assignment

    for v, colors in assignment.lists():
        if not colors:
            return Verdict.inconclusive(Reason.EMPTY_LIST, "vertex {} has an empty list"
                                        .format(v))

    try:
        if mode == CertifyMode.AUTO:
            if (strategy == Strategy.NULLSTELLENSATZ
                    and classify_assignment(assignment).tag != EdgeClass.IRREGULAR):
                cover_mode = None
                working, provenance, lifted = working_assignment(assignment, None, caps)
            else:
                cover_mode, (working, provenance, lifted) = _choose_mode(assignment, caps)
        else:
            cover_mode = CoverMode.parse(mode.value)
            working, provenance, lifted = working_assignment(assignment, cover_mode, caps)
    except CapExceededError as exc:
        logger.info("Lifting skipped: %s", exc)
        return Verdict.inconclusive(Reason.CAPS_EXCEEDED, str(exc))

    common = {"mode": cover_mode, "lifted": lifted, "provenance": provenance}

    if strategy == Strategy.NULLSTELLENSATZ:
        try:
            fields, reason = _certify_polynomial(instance, working, provenance, caps)
        except CapExceededError as exc:
            return Verdict.inconclusive(Reason.CAPS_EXCEEDED, str(exc))
        if fields is None:
            return Verdict.inconclusive(reason)
        return Verdict.certified(Certificate(**common, **fields))

    bounds = _bounds(working)
    fixed  = _fixed_edges(working)
    free   = set(working.graph.edge_ids) - set(fixed)

    if instance.orientation is not None:
        start = _transport(instance.orientation, working, provenance)
        candidates = [start] if _feasible(start, bounds) else []
    elif strategy == Strategy.EXHAUSTIVE:
        try:
            caps.check("exhaustive", len(free))
        except CapExceededError as exc:
            return Verdict.inconclusive(Reason.CAPS_EXCEEDED, str(exc))
        candidates = (orientation for orientation in
                      enumerate_orientations(working.graph, fixed=fixed,
                                             caps=caps.replace(orientations=len(free) or 1))
                      if _feasible(orientation, bounds))
    else:
        start = find_bounded_orientation(working.graph, bounds, fixed=fixed)
        candidates = [] if start is None else _walk(start, bounds, free, caps["visit_budget"])

    reasons, tried = [], 0
    for orientation in candidates:
        tried += 1
        try:
            fields, reason = _evaluate(working, orientation, caps)
        except CapExceededError as exc:
            logger.info("Orientation %r skipped: %s", orientation.key, exc)
            reasons.append(Reason.CAPS_EXCEEDED)
            continue
        if fields is not None:
            logger.debug("Certified after %d orientations", tried)
            return Verdict.certified(Certificate(
                orientation=orientation, degrees=_degree_table(working, orientation),
                **common, **fields))
        reasons.append(reason)

    if not tried:
        return Verdict.inconclusive(Reason.NO_FEASIBLE_ORIENTATION,
                                    "no orientation has out-degrees below the list sizes")
    for reason in (Reason.ZERO_RESIDUE, Reason.CLASS_NOT_APPLICABLE, Reason.CAPS_EXCEEDED):
        if reason in reasons:
            return Verdict.inconclusive(reason, "{} orientations tried".format(tried))
    assert False # :nocov:


def replay(instance, certificate, *, caps=None):
    """Re-verify a certificate against an instance.

    The working assignment is rebuilt from the mode recorded in the certificate; the
    degree bounds are checked and the certifying count or coefficient is recomputed.

    Return value
    ------------
    A certified :class:`Verdict` carrying the recomputed certificate, or an inconclusive one
    with reason ``replay-mismatch``.
    """
    caps = _resolve(caps)
    try:
        if certificate.lifted:
            working, provenance, lifted = working_assignment(instance.assignment,
                                                             certificate.mode, caps)
        else:
            working, provenance, lifted = working_assignment(instance.assignment, None, caps)
    except CapExceededError as exc:
        return Verdict.inconclusive(Reason.CAPS_EXCEEDED, str(exc))

    def mismatch(detail):
        return Verdict.inconclusive(Reason.REPLAY_MISMATCH, detail)

    if lifted != certificate.lifted or dict(provenance) != dict(certificate.provenance):
        return mismatch("working assignment differs")
    orientation = certificate.orientation
    if orientation.base != working.graph:
        return mismatch("orientation does not orient the working multigraph")

    common = {"mode": certificate.mode, "lifted": lifted, "provenance": provenance}
    try:
        if certificate.route == Route.POLYNOMIAL:
            fields, reason = _certify_polynomial(Instance(working, orientation), working,
                                                 OrderedDict((e, (e, 0))
                                                             for e in working.graph.edge_ids),
                                                 caps)
        else:
            if not _feasible(orientation, _bounds(working)):
                return mismatch("an out-degree reaches the list size")
            fields, reason = _evaluate(working, orientation, caps)
            if fields is not None:
                fields.update(orientation=orientation,
                              degrees=_degree_table(working, orientation))
    except CapExceededError as exc:
        return Verdict.inconclusive(Reason.CAPS_EXCEEDED, str(exc))
    if fields is None:
        return mismatch("recomputation gives {}".format(reason.value))

    recomputed = Certificate(**common, **fields)
    if recomputed._evidence() != certificate._evidence():
        return mismatch("recomputed evidence differs")
    return Verdict.certified(recomputed)


class CrossValidationReport:
    """Outcome of :func:`cross_validate`.

    Attributes
    ----------
    trials : int
        Number of random instances.
    certified : int
        Number of certified instances.
    checks : dict(str : int)
        Number of identity checks performed, by kind.
    skipped : int
        Number of checks skipped because a cap was exceeded.
    discrepancies : list of dict
        One entry ``{"trial", "kind", "detail"}`` per failed check.
    """
    def __init__(self):
        self.trials        = 0
        self.certified     = 0
        self.checks        = OrderedDict((kind, 0) for kind in
                                         ("soundness", "replay", "identity", "subdivision",
                                          "factorization"))
        self.skipped       = 0
        self.discrepancies = []

    def _fail(self, trial, kind, detail):
        logger.warning("Trial %d: %s discrepancy: %s", trial, kind, detail)
        self.discrepancies.append({"trial": trial, "kind": kind, "detail": detail})

    def __bool__(self):
        return not self.discrepancies

    def __repr__(self):
        return "CrossValidationReport(trials={}, certified={}, discrepancies={})".format(
            self.trials, self.certified, len(self.discrepancies))


def _random_orientation(rng, graph, fixed):
    return Orientation(graph, {edge_id: fixed.get(edge_id, rng.choice((u, v)))
                               for edge_id, (u, v) in graph.edges()})


def _check_identities(rng, trial, assignment, report, caps):
    field = assignment.field

    zlift = lift(assignment, CoverMode.ZSIGNABLE, caps=caps).assignment
    orientation = _random_orientation(rng, zlift.graph, _fixed_edges(zlift))
    sign_data = classify_assignment(zlift, orientation).sign_data
    if sign_data is not None and sign_data.integral:
        identity = verify_identity(orientation, sign_data, caps=caps)
        report.checks["identity"] += 1
        if not identity.holds:
            report._fail(trial, "identity", repr(identity))
        if field.is_prime and zlift.graph.size:
            edge_id = rng.choice(zlift.graph.edge_ids)
            flipped = classify_assignment(zlift, orientation,
                                          signs={edge_id: -sign_data[edge_id].sigma})
            first  = eulerian_difference(build_d_sigma_phi(orientation, sign_data), field,
                                         caps=caps)
            second = eulerian_difference(build_d_sigma_phi(orientation, flipped.sign_data),
                                         field, caps=caps)
            report.checks["factorization"] += 1
            if first.residue != second.residue:
                report._fail(trial, "factorization",
                             "residues {} and {} differ on edge {}"
                             .format(first.residue, second.residue, edge_id))

    slift = lift(assignment, CoverMode.SIGNABLE, caps=caps).assignment
    orientation = _random_orientation(rng, slift.graph, {})
    sign_data = classify_assignment(slift, orientation).sign_data
    sigma_count = eulerian_difference(build_d_sigma(orientation, sign_data.sigma()), field,
                                      caps=caps)
    gadget_count = eulerian_difference(build_d_sigma_phi(orientation, sign_data), field,
                                       caps=caps)
    report.checks["subdivision"] += 1
    if sigma_count.difference != gadget_count.difference:
        report._fail(trial, "subdivision", "differences {} and {}"
                     .format(sigma_count.difference, gadget_count.difference))


def cross_validate(seed=0, trials=100, *, field=None, n_max=5, list_max=3, caps=None):
    """Cross-validate certification against the coloring search on random instances.

    For every instance, a certified verdict must be matched by a coloring and survive a
    replay. The coefficient identity is checked on a random orientation of the Z-signable
    lift, the subdivided digraph is compared with the multiplier gadget digraph on the
    signable lift, and over prime fields the residue must not depend on the sign chosen for
    an edge.

    Arguments
    ---------
    seed : int
        Seed of the random instances.
    trials : int
        Number of instances.
    field : :class:`FieldSpec` or None
        Field of the instances. The rationals by default.
    n_max : int
        Maximum vertex count.
    list_max : int
        Maximum list size.
    caps : :class:`Caps` or None
        Caps of every stage.

    Return value
    ------------
    A :class:`CrossValidationReport`.
    """
    from .field import FieldSpec
    from .fixtures import random_assignment

    caps  = _resolve(caps)
    field = FieldSpec.rationals() if field is None else field
    rng   = random.Random(seed)
    report = CrossValidationReport()
    for trial in range(trials):
        assignment = random_assignment(rng, field, n_max=n_max, list_max=list_max)
        instance   = Instance(assignment)
        report.trials += 1

        verdict = certify(instance, caps=caps)
        if verdict:
            report.certified += 1
            report.checks["replay"] += 1
            if not replay(instance, verdict.certificate, caps=caps):
                report._fail(trial, "replay", "certificate does not replay")
            try:
                coloring = solve(assignment, caps=caps)
            except SearchBudgetExhausted:
                report.skipped += 1
            else:
                report.checks["soundness"] += 1
                if coloring is None:
                    report._fail(trial, "soundness",
                                 "certified assignment has no coloring")

        try:
            _check_identities(rng, trial, assignment, report, caps)
        except CapExceededError as exc:
            logger.info("Trial %d: identity checks skipped: %s", trial, exc)
            report.skipped += 1
    return report
