"""Command-line client.

Each subcommand builds the same request models the HTTP service accepts
and calls the shared handlers in process, then renders text and exit
codes: 0 when the property holds or the command succeeds, 1 when a
property fails (with the witness printed as a loadable document), 2 on
input or usage errors.  Theorem violations abort with code 70, since
they mean a bug rather than a fact about the input.
"""

import argparse
import json
import sys

from . import docio, service
from .errors import InputError, TheoremViolationError

EXIT_OK = 0
EXIT_PROPERTY_FAILS = 1
EXIT_INPUT = 2
EXIT_BUG = 70


def _load_doc(path):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(
            f"parse error at line {exc.lineno} column {exc.colno}: {exc.msg}"
        ) from exc


def _load_algebra_request(path):
    return service.ValidateRequest(
        algebra=service.AlgebraDoc.model_validate(_load_doc(path)))


def _emit(text, output):
    if output:
        with open(output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _emit_algebra(response, output):
    A = response.algebra.to_algebra()
    _emit(docio.serialize_algebra(A), output)


def cmd_validate(args):
    report = service.validate_document(_load_doc(args.file))
    if report.ok:
        print("ok")
        return EXIT_OK
    if report.message:
        print(report.message)
    for v in report.violations:
        print(f"{v.axiom} violated at {tuple(v.witness)}")
    return EXIT_PROPERTY_FAILS


def cmd_classify(args):
    response = service.handle_classify(_load_algebra_request(args.file))
    for label in response.labels:
        print(label)
    return EXIT_OK


def cmd_kalman(args):
    request = service.KalmanRequest(
        algebra=service.AlgebraDoc.model_validate(_load_doc(args.file)),
        construction=args.construction)
    response = service.handle_kalman(request)
    _emit_algebra(response, args.output)
    return EXIT_OK


def cmd_center(args):
    response = service.handle_center(_load_algebra_request(args.file))
    _emit_algebra(response, args.output)
    return EXIT_OK


def cmd_ck(args):
    request = _load_algebra_request(args.file)
    response = service.handle_ck(request)
    if response.holds:
        print("ck holds")
        return EXIT_OK
    x, y = response.witness
    print(f"ck fails at pair ({x},{y})")
    _emit(docio.serialize_algebra(request.algebra.to_algebra()), args.output)
    return EXIT_PROPERTY_FAILS


def cmd_roundtrip(args):
    request = service.RoundtripRequest(
        algebra=service.AlgebraDoc.model_validate(_load_doc(args.file)),
        construction=args.construction)
    response = service.handle_roundtrip(request)
    for key, value in response.model_dump().items():
        print(f"{key}: {'yes' if value else 'no'}")
    ok = all(response.model_dump().values())
    return EXIT_OK if ok else EXIT_PROPERTY_FAILS


def _print_partitions(blocks_list):
    for blocks in blocks_list:
        print(" | ".join(",".join(str(x) for x in blk) for blk in blocks))


def cmd_congruences(args):
    response = service.handle_congruences(_load_algebra_request(args.file))
    _print_partitions(response.congruences)
    return EXIT_OK


def cmd_wb_congruences(args):
    response = service.handle_wb_congruences(_load_algebra_request(args.file))
    _print_partitions(response.congruences)
    return EXIT_OK


def cmd_filters(args):
    request = service.FiltersRequest(
        algebra=service.AlgebraDoc.model_validate(_load_doc(args.file)),
        congruent_only=args.congruent)
    response = service.handle_filters(request)
    for members in response.filters:
        print(",".join(str(x) for x in members))
    return EXIT_OK


def _parse_theta(spec, size):
    blocks = []
    for part in spec.split("|"):
        part = part.strip()
        if not part:
            raise InputError("empty block in partition spec")
        try:
            blocks.append([int(x) for x in part.split(",")])
        except ValueError as exc:
            raise InputError(f"bad partition spec {spec!r}") from exc
    return blocks


def cmd_quotient(args):
    doc = service.AlgebraDoc.model_validate(_load_doc(args.file))
    request = service.QuotientRequest(
        algebra=doc, theta=_parse_theta(args.theta, doc.size))
    response = service.handle_quotient(request)
    _emit_algebra(response, args.output)
    return EXIT_OK


def cmd_search(args):
    request = service.SearchRequest(
        class_label=args.class_label, max_size=args.max_size,
        predicate=args.predicate, modulo_iso=args.modulo_iso, jobs=args.jobs)
    response = service.handle_search(request)
    print(f"{response.status}: examined {response.examined}, "
          f"retained {response.retained}")
    if response.status == "CounterexampleFound":
        print(response.detail)
        if args.witness:
            _emit_algebra(service.AlgebraResponse(algebra=response.witness),
                          args.output)
        return EXIT_PROPERTY_FAILS
    return EXIT_OK


def cmd_serve(args):
    import uvicorn

    uvicorn.run(service.app, host=args.host, port=args.port)
    return EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(
        prog="finalg",
        description="Finite-algebra workbench: pair constructions, variety "
                    "checkers, congruence machinery, exhaustive search.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, **kwargs):
        p = sub.add_parser(name, **kwargs)
        p.set_defaults(fn=fn)
        return p

    p = add("validate", cmd_validate, help="check a document's order and tables")
    p.add_argument("file")

    p = add("classify", cmd_classify, help="print every variety label that holds")
    p.add_argument("file")

    p = add("kalman", cmd_kalman, help="build the pair algebra")
    p.add_argument("file")
    p.add_argument("--as", dest="construction", required=True,
                   choices=["poset", "ms", "his", "bdl", "ha"])
    p.add_argument("--output")

    p = add("center", cmd_center, help="build the subalgebra above the center")
    p.add_argument("file")
    p.add_argument("--output")

    p = add("ck", cmd_ck, help="test the interpolation condition")
    p.add_argument("file")
    p.add_argument("--output")

    p = add("roundtrip", cmd_roundtrip,
            help="verify the construction round trip and both natural maps")
    p.add_argument("file")
    p.add_argument("--as", dest="construction", required=True,
                   choices=["poset", "ms", "his", "bdl", "ha"])

    p = add("congruences", cmd_congruences, help="list all congruences")
    p.add_argument("file")

    p = add("wb-congruences", cmd_wb_congruences,
            help="list the well-behaved congruences")
    p.add_argument("file")

    p = add("filters", cmd_filters, help="list filters")
    p.add_argument("file")
    p.add_argument("--congruent", action="store_true",
                   help="only congruent filters")

    p = add("quotient", cmd_quotient, help="quotient by a well-behaved congruence")
    p.add_argument("file")
    p.add_argument("--theta", required=True,
                   help="partition, e.g. '0,1|2|3'")
    p.add_argument("--output")

    p = add("search", cmd_search, help="hunt for a counterexample")
    p.add_argument("--class", dest="class_label", required=True)
    p.add_argument("--max-size", type=int, required=True)
    p.add_argument("--predicate", default="ck")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--modulo-iso", action="store_true", default=True)
    p.add_argument("--all-labelings", dest="modulo_iso", action="store_false")
    p.add_argument("--witness", action="store_true", default=True,
                   help="print the counterexample document (default)")
    p.add_argument("--no-witness", dest="witness", action="store_false")
    p.add_argument("--output")

    p = add("serve", cmd_serve, help="run the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8763)

    return parser


def main(argv=None):
    import pydantic

    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except (InputError, pydantic.ValidationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except TheoremViolationError as exc:
        print(f"theorem violation: {exc}", file=sys.stderr)
        if exc.witness_text:
            print(exc.witness_text, file=sys.stderr)
        return EXIT_BUG


if __name__ == "__main__":
    sys.exit(main())
