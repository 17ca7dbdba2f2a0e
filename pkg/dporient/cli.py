import argparse
import json
import logging
import random
import sys
from collections import OrderedDict

from . import schema
from .auxiliary import build_d_sigma, build_d_sigma_phi
from .caps import CapExceededError, Caps
from .certify import CertifyMode, Strategy, certify, cross_validate, replay
from .correspondence import classify_assignment
from .decomposition import CoverMode, lift, omega
from .field import FieldSpec
from .fixtures import FIXTURES, gen_fixture, random_assignment
from .graph import Orientation
from .nullstellensatz import (count_eulerian, expand_graph_polynomial, target_monomial,
                              verify_identity)
from .solver import SearchBudgetExhausted, solve


__all__ = ["EXIT_OK", "EXIT_ERROR", "EXIT_INCONCLUSIVE", "parse_field", "main"]


logger = logging.getLogger(__name__)


EXIT_OK           = 0
EXIT_ERROR        = 1
EXIT_INCONCLUSIVE = 2


class _Inapplicable(Exception):
    """The instance does not admit the requested construction."""


def parse_field(text):
    """Parse a field given as ``Q``, ``GF<p>``, ``GF:<p>`` or a bare prime ``p``."""
    text = text.strip()
    if text.upper() == "Q":
        return FieldSpec.rationals()
    digits = text
    if text.upper().startswith("GF"):
        digits = text[2:].lstrip(":")
    try:
        p = int(digits)
    except ValueError:
        raise ValueError("Field must be Q, GF<p> or a prime, not {!r}".format(text)) from None
    return FieldSpec.prime(p)


def _parse_monomial(text):
    try:
        return tuple(int(exponent) for exponent in text.split(","))
    except ValueError:
        raise ValueError("Monomial must be a comma separated list of exponents, not {!r}"
                         .format(text)) from None


def _read_json(path):
    if path == "-":
        return json.load(sys.stdin)
    with open(path) as f:
        return json.load(f)


def _write(args, text):
    if args.output is None or args.output == "-":
        sys.stdout.write(text)
    else:
        with open(args.output, "w") as f:
            f.write(text)


def _caps(args):
    return Caps.from_env().replace(**Caps.parse_overrides(",".join(args.cap)))


def _instance(args):
    return schema.instance_from_json(_read_json(args.input))


def _orientation(instance):
    if instance.orientation is not None:
        return instance.orientation
    return instance.assignment.natural_orientation()


def _sign_data(instance, orientation):
    classification = classify_assignment(instance.assignment, orientation)
    if classification.sign_data is None:
        raise _Inapplicable("edges {} are irregular".format(classification.irregular))
    return classification.sign_data


def _aux_digraph(instance, kind):
    orientation = _orientation(instance)
    if kind == "orientation":
        return orientation.to_digraph()
    sign_data = _sign_data(instance, orientation)
    if kind == "sigma":
        if any(sign.phi_plus != 1 for _, sign in sign_data.items()):
            raise _Inapplicable("some multiplier is not 1 or -1")
        return build_d_sigma(orientation, sign_data.sigma())
    if not sign_data.integral:
        raise _Inapplicable("some multiplier is not 1 or -1 times an integer")
    return build_d_sigma_phi(orientation, sign_data)


def cmd_classify(args, caps):
    instance = _instance(args)
    orientation = _orientation(instance)
    classification = classify_assignment(instance.assignment, orientation)
    _write(args, schema.dumps(schema.classification_to_json(classification, orientation,
                                                            instance.field)))
    return EXIT_OK


def cmd_decompose(args, caps):
    instance = _instance(args)
    field = instance.field
    edges = []
    for matching in instance.assignment.matchings():
        cover = omega(matching, field, args.mode, caps=caps)
        edges.append(OrderedDict([("edge", matching.edge_id), ("tail", matching.tail),
                                  ("omega", cover.k),
                                  ("cover", schema.cover_to_json(cover, field))]))
    _write(args, schema.dumps({"mode": CoverMode.parse(args.mode).value, "edges": edges}))
    return EXIT_OK


def cmd_lift(args, caps):
    result = lift(_instance(args).assignment, args.mode, caps=caps)
    _write(args, schema.dumps(schema.lift_to_json(result)))
    return EXIT_OK


def cmd_aux(args, caps):
    digraph = _aux_digraph(_instance(args), args.kind)
    if args.dot:
        _write(args, digraph.to_dot())
    else:
        _write(args, schema.dumps(schema.aux_to_json(digraph)))
    return EXIT_OK


def cmd_euler(args, caps):
    instance = _instance(args)
    digraph  = _aux_digraph(instance, args.kind)
    count    = count_eulerian(digraph, caps=caps)
    residue  = instance.field.reduce(count.difference)
    _write(args, schema.dumps(OrderedDict([
        ("kind",       args.kind),
        ("arcs",       digraph.size),
        ("even",       count.even),
        ("odd",        count.odd),
        ("difference", count.difference),
        ("residue",    instance.field.encode(residue)),
    ])))
    return EXIT_OK if residue != 0 else EXIT_INCONCLUSIVE


def cmd_coeff(args, caps):
    instance    = _instance(args)
    field       = instance.field
    orientation = _orientation(instance)
    phi = None if args.plain else _sign_data(instance, orientation).phi()
    if args.monomial is None:
        monomial = target_monomial(orientation)
    else:
        monomial = _parse_monomial(args.monomial)
        if len(monomial) != orientation.n:
            raise ValueError("Monomial must have {} exponents, not {!r}"
                             .format(orientation.n, args.monomial))
    polynomial = expand_graph_polynomial(orientation, phi,
                                         degree_cap=None if args.full else monomial,
                                         caps=caps)
    residue = field.reduce(polynomial[monomial])
    obj = OrderedDict([
        ("monomial",    list(monomial)),
        ("coefficient", schema.rational_to_json(polynomial[monomial])),
        ("residue",     field.encode(residue)),
    ])
    if args.full:
        obj["polynomial"] = schema.polynomial_to_json(polynomial)
    _write(args, schema.dumps(obj))
    return EXIT_OK if residue != 0 else EXIT_INCONCLUSIVE


def cmd_verify_identity(args, caps):
    field   = parse_field(args.field)
    rng     = random.Random(args.seed)
    reports = []
    skipped = 0
    for _ in range(args.trials):
        assignment = random_assignment(rng, field, n_max=args.n_max, list_max=args.list_max)
        try:
            lifted = lift(assignment, CoverMode.ZSIGNABLE, caps=caps).assignment
        except CapExceededError as exc:
            logger.info("Trial skipped: %s", exc)
            skipped += 1
            continue
        orientation = Orientation(lifted.graph, {edge_id: rng.choice((u, v))
                                                 for edge_id, (u, v) in lifted.graph.edges()})
        sign_data = classify_assignment(lifted, orientation).sign_data
        if sign_data is None or not sign_data.integral:
            skipped += 1
            continue
        try:
            reports.append(verify_identity(orientation, sign_data, caps=caps))
        except CapExceededError as exc:
            logger.info("Trial skipped: %s", exc)
            skipped += 1

    failed = [report for report in reports if not report.holds]
    for report in failed:
        logger.warning("Identity fails: %r", report)
    _write(args, schema.dumps(OrderedDict([
        ("field",   field.to_json()),
        ("trials",  args.trials),
        ("checked", len(reports)),
        ("skipped", skipped),
        ("failed",  [schema.identity_report_to_json(report) for report in failed]),
    ])))
    return EXIT_OK if not failed else EXIT_INCONCLUSIVE


def cmd_certify(args, caps):
    instance = _instance(args)
    verdict  = certify(instance, args.mode, args.strategy, caps=caps)
    _write(args, schema.dumps(schema.verdict_to_json(verdict, instance.field)))
    return EXIT_OK if verdict else EXIT_INCONCLUSIVE


def cmd_solve(args, caps):
    instance = _instance(args)
    try:
        coloring = solve(instance.assignment, caps=caps)
    except SearchBudgetExhausted as exc:
        logger.warning("%s", exc)
        _write(args, schema.dumps({"outcome": "unknown", "coloring": None}))
        return EXIT_INCONCLUSIVE
    if coloring is None:
        _write(args, schema.dumps({"outcome": "absent", "coloring": None}))
        return EXIT_INCONCLUSIVE
    _write(args, schema.dumps({"outcome": "found",
                               "coloring": schema.coloring_to_json(coloring,
                                                                   instance.field)}))
    return EXIT_OK


def cmd_replay(args, caps):
    instance = _instance(args)
    obj = _read_json(args.certificate)
    if isinstance(obj, dict) and "outcome" in obj:
        if "certificate" not in obj:
            raise ValueError("Verdict {!r} carries no certificate".format(obj["outcome"]))
        obj = obj["certificate"]
    certificate = schema.certificate_from_json(obj, instance, caps=caps)
    verdict = replay(instance, certificate, caps=caps)
    _write(args, schema.dumps(schema.verdict_to_json(verdict, instance.field)))
    return EXIT_OK if verdict else EXIT_INCONCLUSIVE


def cmd_gen(args, caps):
    params = {}
    if args.k is not None:
        params["k"] = args.k
    if args.seed is not None:
        params["seed"] = args.seed
    if args.n is not None:
        params["n"] = args.n
    try:
        instance = gen_fixture(args.fixture, **params)
    except TypeError:
        raise ValueError("Fixture {!r} does not take parameters {}"
                         .format(args.fixture, ", ".join(sorted(params)))) from None
    _write(args, schema.dumps(schema.instance_to_json(instance)))
    return EXIT_OK


def cmd_cross_validate(args, caps):
    report = cross_validate(args.seed, args.trials, field=parse_field(args.field),
                            n_max=args.n_max, list_max=args.list_max, caps=caps)
    _write(args, schema.dumps(schema.cross_validation_to_json(report)))
    return EXIT_OK if report else EXIT_INCONCLUSIVE


def _parser():
    parser = argparse.ArgumentParser(
        prog="dporient",
        description="Certify DP-colorability of correspondence assignments through "
                    "orientations and Eulerian subdigraph counts.")
    parser.add_argument("-v", "--verbose", action="count", default=0,
                        help="log progress (repeat for debug output)")
    parser.add_argument("--cap", action="append", default=[], metavar="NAME=VALUE",
                        help="override an enumeration cap (names: {})"
                             .format(", ".join(Caps.DEFAULTS)))
    parser.add_argument("-o", "--output", default=None, metavar="FILE",
                        help="write the result to FILE instead of stdout")
    commands = parser.add_subparsers(dest="command", metavar="COMMAND")
    commands.required = True

    def command(name, func, help, input=True):
        sub = commands.add_parser(name, help=help)
        if input:
            sub.add_argument("input", help="instance JSON file, or - for stdin")
        sub.set_defaults(func=func)
        return sub

    modes = [mode.value for mode in CoverMode]

    command("classify", cmd_classify, "classify every edge relative to an orientation")

    sub = command("decompose", cmd_decompose, "cover every matching by class sub-matchings")
    sub.add_argument("--mode", choices=modes, default="good")

    sub = command("lift", cmd_lift, "lift an assignment so every matching is in one class")
    sub.add_argument("--mode", choices=modes, default="good")

    sub = command("aux", cmd_aux, "build an auxiliary digraph")
    sub.add_argument("--kind", choices=("sigma", "sigmaphi"), default="sigma")
    sub.add_argument("--dot", action="store_true", help="emit Graphviz DOT")

    sub = command("euler", cmd_euler, "count even and odd Eulerian subdigraphs")
    sub.add_argument("--kind", choices=("orientation", "sigma", "sigmaphi"),
                     default="orientation")

    sub = command("coeff", cmd_coeff, "coefficient of a monomial in the graph polynomial")
    sub.add_argument("--monomial", default=None, metavar="E1,E2,...",
                     help="exponents (default: the out-degrees)")
    sub.add_argument("--plain", action="store_true",
                     help="use multiplier 1 on every edge")
    sub.add_argument("--full", action="store_true", help="also emit the whole polynomial")

    sub = command("verify-identity", cmd_verify_identity,
                  "compare coefficients with Eulerian counts on random instances",
                  input=False)
    sub.add_argument("--trials", type=int, default=100)
    sub.add_argument("--seed", type=int, default=0)
    sub.add_argument("--field", default="Q")
    sub.add_argument("--n-max", type=int, default=5)
    sub.add_argument("--list-max", type=int, default=3)

    sub = command("certify", cmd_certify, "certify colorability")
    sub.add_argument("--mode", choices=[mode.value for mode in CertifyMode], default="auto")
    sub.add_argument("--strategy", choices=[strategy.value for strategy in Strategy],
                     default="bounded-first")

    command("solve", cmd_solve, "search for a coloring")

    sub = command("replay", cmd_replay, "re-verify a certificate")
    sub.add_argument("certificate", help="certificate or verdict JSON file")

    sub = command("gen", cmd_gen, "generate a fixture instance", input=False)
    sub.add_argument("--fixture", choices=list(FIXTURES), required=True)
    sub.add_argument("--k", type=int, default=None)
    sub.add_argument("--seed", type=int, default=None)
    sub.add_argument("--n", type=int, default=None)

    sub = command("cross-validate", cmd_cross_validate,
                  "cross-validate certification against the solver", input=False)
    sub.add_argument("--trials", type=int, default=100)
    sub.add_argument("--seed", type=int, default=0)
    sub.add_argument("--field", default="Q")
    sub.add_argument("--n-max", type=int, default=5)
    sub.add_argument("--list-max", type=int, default=3)

    return parser


def main(argv=None):
    """Run the command line interface.

    Return value
    ------------
    The exit code: ``0`` on success, ``2`` if the result is inconclusive or absent, ``1`` on
    error.
    """
    args = _parser().parse_args(argv)
    level = {0: logging.WARNING, 1: logging.INFO}.get(args.verbose, logging.DEBUG)
    logging.basicConfig(level=level, format="%(levelname)s:%(name)s: %(message)s")

    try:
        caps = _caps(args)
        return args.func(args, caps)
    except _Inapplicable as exc:
        sys.stderr.write("dporient: not applicable: {}\n".format(exc))
        return EXIT_INCONCLUSIVE
    except CapExceededError as exc:
        sys.stderr.write("dporient: {}\n".format(exc))
        return EXIT_INCONCLUSIVE
    except (OSError, ValueError, TypeError, KeyError) as exc:
        sys.stderr.write("dporient: error: {}\n".format(exc))
        return EXIT_ERROR
