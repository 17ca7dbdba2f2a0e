import json
from collections import OrderedDict
from fractions import Fraction

from .certify import Certificate, Instance, Outcome, Route, working_assignment
from .correspondence import build_assignment
from .decomposition import CoverMode
from .field import FieldSpec
from .graph import Orientation, build_multigraph
from .nullstellensatz import SparsePolynomial
from .solver import Coloring


__all__ = ["dumps", "graph_to_json", "graph_from_json", "assignment_to_json",
           "assignment_from_json", "instance_to_json", "instance_from_json",
           "orientation_to_json", "orientation_from_json", "cover_to_json", "lift_to_json",
           "classification_to_json", "aux_to_json", "polynomial_to_json",
           "polynomial_from_json", "rational_to_json", "coloring_to_json", "coloring_from_json",
           "identity_report_to_json", "certificate_to_json", "certificate_from_json",
           "verdict_to_json", "cross_validation_to_json"]


def dumps(obj):
    return json.dumps(obj, indent=2) + "\n"


def _require(obj, *keys):
    if not isinstance(obj, dict):
        raise ValueError("Expected a JSON object, not {!r}".format(obj))
    for key in keys:
        if key not in obj:
            raise ValueError("JSON object is missing the {!r} key".format(key))


def graph_to_json(graph):
    return {"n": graph.n, "edges": [[u, v] for _, (u, v) in graph.edges()]}


def graph_from_json(obj):
    _require(obj, "n", "edges")
    return build_multigraph(obj["n"], [tuple(pair) for pair in obj["edges"]])


def _pairs(field, pairs):
    return [[field.encode(c1), field.encode(c2)] for c1, c2 in pairs]


def assignment_to_json(assignment):
    field = assignment.field
    obj = OrderedDict()
    obj["graph"] = graph_to_json(assignment.graph)
    obj["field"] = field.to_json()
    obj["lists"] = OrderedDict((str(v), [field.encode(c) for c in colors])
                               for v, colors in assignment.lists())
    obj["matchings"] = [{"edge": m.edge_id, "tail": m.tail, "pairs": _pairs(field, m.pairs)}
                        for m in assignment.matchings()]
    return obj


def assignment_from_json(obj):
    _require(obj, "graph", "field", "lists")
    graph = graph_from_json(obj["graph"])
    field = FieldSpec.from_json(obj["field"])
    lists = {int(v): colors for v, colors in obj["lists"].items()}
    for v in graph.vertices:
        if v not in lists:
            raise ValueError("List of vertex {} is missing".format(v))
    matchings = []
    for matching in obj.get("matchings", []):
        _require(matching, "edge", "tail", "pairs")
        matchings.append((matching["edge"], matching["tail"],
                          [tuple(pair) for pair in matching["pairs"]]))
    return build_assignment(graph, field, lists, matchings)


def orientation_to_json(orientation):
    """Tails of the edges, in edge id order."""
    return list(orientation.key)


def orientation_from_json(graph, obj):
    if not isinstance(obj, list) or len(obj) != graph.size:
        raise ValueError("Orientation must be a list of {} tails, not {!r}"
                         .format(graph.size, obj))
    return Orientation(graph, dict(zip(graph.edge_ids, obj)))


def instance_to_json(instance):
    obj = assignment_to_json(instance.assignment)
    if instance.orientation is not None:
        obj["orientation"] = orientation_to_json(instance.orientation)
    return obj


def instance_from_json(obj):
    assignment = assignment_from_json(obj)
    orientation = None
    if obj.get("orientation") is not None:
        orientation = orientation_from_json(assignment.graph, obj["orientation"])
    return Instance(assignment, orientation)


def _classification(field, classification):
    obj = OrderedDict([("class", classification.tag.value)])
    if classification.phi is not None:
        obj["phi"]   = field.encode(classification.phi)
        obj["shift"] = field.encode(classification.shift)
    return obj


def cover_to_json(cover, field):
    return {
        "mode":  cover.mode.value,
        "k":     cover.k,
        "parts": [dict(_classification(field, classification), pairs=_pairs(field, part))
                  for part, classification in cover.parts],
    }


def lift_to_json(result):
    obj = assignment_to_json(result.assignment)
    obj["mode"] = result.mode.value
    obj["provenance"] = [list(result.provenance[edge_id])
                         for edge_id in result.graph.edge_ids]
    return obj


def classification_to_json(classification, orientation, field):
    edges = []
    for edge_id, tail, head in orientation.arcs():
        entry = OrderedDict([("edge", edge_id), ("tail", tail), ("head", head)])
        entry.update(_classification(field, classification.edges[edge_id]))
        if classification.sign_data is not None:
            sign = classification.sign_data[edge_id]
            entry["sigma"]    = sign.sigma
            entry["phi_plus"] = sign.phi_plus
        edges.append(entry)
    return {"class": classification.tag.value, "edges": edges,
            "irregular": list(classification.irregular)}


def aux_to_json(digraph):
    return {
        "n":      digraph.n,
        "labels": [digraph.vertex_label(v) for v in digraph.vertices],
        "arcs":   [[arc_id, tail, head] for arc_id, tail, head in digraph.arcs()],
        "gamma":  OrderedDict((str(edge_id), [list(path.arcs)
                                              for path in digraph.gamma_paths(edge_id)])
                              for edge_id in digraph.orientation.base.edge_ids),
    }


def rational_to_json(value):
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return "{}/{}".format(value.numerator, value.denominator)


def polynomial_to_json(polynomial):
    return [{"exp": list(monomial), "coef": rational_to_json(polynomial[monomial])}
            for monomial in polynomial.graded()]


def polynomial_from_json(n, obj):
    terms = {}
    for term in obj:
        _require(term, "exp", "coef")
        terms[tuple(term["exp"])] = Fraction(str(term["coef"]))
    return SparsePolynomial(n, terms)


def coloring_to_json(coloring, field):
    return OrderedDict((str(v), field.encode(color)) for v, color in coloring.items())


def coloring_from_json(obj, field):
    if not isinstance(obj, dict):
        raise ValueError("Coloring must be a JSON object, not {!r}".format(obj))
    return Coloring({int(v): field.element(color) for v, color in obj.items()})


def identity_report_to_json(report):
    return {
        "monomial":    list(report.monomial),
        "coefficient": report.coefficient,
        "even":        report.count.even,
        "odd":         report.count.odd,
        "field":       report.field.to_json(),
        "holds":       report.holds,
    }


def _int_map(mapping):
    if mapping is None:
        return None
    return OrderedDict((str(key), value) for key, value in mapping.items())


def certificate_to_json(certificate, field):
    return {
        "mode":        None if certificate.mode is None else certificate.mode.value,
        "lifted":      certificate.lifted,
        "provenance":  [list(certificate.provenance[edge_id])
                        for edge_id in certificate.orientation.base.edge_ids],
        "route":       certificate.route.value,
        "orientation": orientation_to_json(certificate.orientation),
        "degrees":     OrderedDict((str(v), list(pair))
                                   for v, pair in certificate.degrees.items()),
        "sigma":       _int_map(certificate.sigma),
        "phi_plus":    _int_map(certificate.phi_plus),
        "even":        certificate.even,
        "odd":         certificate.odd,
        "residue":     None if certificate.residue is None else field.encode(certificate.residue),
        "bipartite":   certificate.bipartite,
        "monomial":    None if certificate.monomial is None else list(certificate.monomial),
    }


def certificate_from_json(obj, instance, *, caps=None):
    """Decode a certificate issued for ``instance``.

    The working multigraph the orientation refers to is rebuilt from the recorded mode.
    """
    _require(obj, "mode", "lifted", "provenance", "route", "orientation", "degrees")
    mode = None if obj["mode"] is None else CoverMode.parse(obj["mode"])
    working, _, _ = working_assignment(instance.assignment,
                                       mode if obj["lifted"] else None, caps)
    field = instance.field

    def int_map(value):
        if value is None:
            return None
        return OrderedDict((int(key), item) for key, item in value.items())

    return Certificate(
        mode        = mode,
        lifted      = obj["lifted"],
        provenance  = OrderedDict((edge_id, tuple(pair)) for edge_id, pair
                                  in zip(working.graph.edge_ids, obj["provenance"])),
        route       = Route(obj["route"]),
        orientation = orientation_from_json(working.graph, obj["orientation"]),
        degrees     = OrderedDict((int(v), tuple(pair)) for v, pair in obj["degrees"].items()),
        sigma       = int_map(obj.get("sigma")),
        phi_plus    = int_map(obj.get("phi_plus")),
        even        = obj.get("even"),
        odd         = obj.get("odd"),
        residue     = None if obj.get("residue") is None else field.element(obj["residue"]),
        bipartite   = obj.get("bipartite", False),
        monomial    = None if obj.get("monomial") is None else tuple(obj["monomial"]),
    )


def verdict_to_json(verdict, field):
    obj = OrderedDict([("outcome", verdict.outcome.value)])
    if verdict.outcome == Outcome.CERTIFIED:
        obj["certificate"] = certificate_to_json(verdict.certificate, field)
    else:
        obj["reason"] = verdict.reason.value
        obj["detail"] = verdict.detail
    return obj


def cross_validation_to_json(report):
    return {
        "trials":        report.trials,
        "certified":     report.certified,
        "checks":        dict(report.checks),
        "skipped":       report.skipped,
        "discrepancies": list(report.discrepancies),
    }
