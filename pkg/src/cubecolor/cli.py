"""Command line front end.

Exit codes: 0 success, 1 coloring violates the constraint, 2 invariant or
cocycle failure, 3 unreadable or inconsistent input, 4 instance too large.
"""
from __future__ import annotations

import argparse
import logging
import sys
from typing import Optional

from . import encoding
from .certificate import certify
from .coloring import CUBICAL, MODES, SIMPLICIAL, validate
from .cubical import GridSpec
from .errors import CocycleError, InvariantError, SizeGuardError, ValidationError
from .filling import fill
from .oracle import component_stats, exhaustive_report, random_report, random_valid
from .report import rows_to_csv, trace_report

log = logging.getLogger("cubecolor")

EXIT_OK, EXIT_VIOLATION, EXIT_INVARIANT, EXIT_PARSE, EXIT_SIZE = 0, 1, 2, 3, 4


class ConfigError(ValueError):
    pass


def _spec_from_args(args, header: Optional[GridSpec] = None) -> GridSpec:
    given = {k: getattr(args, k) for k in ("d", "n", "m") if getattr(args, k) is not None}
    if header is not None:
        for k, v in given.items():
            if getattr(header, k) != v:
                raise ConfigError(f"--{k}={v} disagrees with the input header ({k}={getattr(header, k)})")
        return header
    missing = [k for k in ("d", "n", "m") if k not in given]
    if missing:
        raise ConfigError("missing " + ", ".join("--" + k for k in missing))
    try:
        return GridSpec(given["d"], given["n"], given["m"])
    except ValueError as e:
        raise ConfigError(str(e)) from e


def _load_coloring(args):
    if not args.input:
        raise ConfigError("--input is required")
    spec, coloring = encoding.coloring_from_json(encoding.read(args.input))
    return _spec_from_args(args, spec), coloring


def _emit(args, obj):
    text = encoding.write(args.output, obj)
    if not args.output or args.output == "-":
        sys.stdout.write(text)


def _flags(args, **extra) -> dict:
    out = {"mode": args.mode}
    out.update(extra)
    return out


def cmd_check(args) -> int:
    spec, coloring = _load_coloring(args)
    bad = validate(spec, coloring, args.mode)
    body = {"valid": bad is None, "palette": len(coloring.palette), "max_usage": coloring.max_usage()}
    if bad is None:
        body["largest_component"] = component_stats(spec, coloring, args.adjacency or args.mode, args.mode)
    else:
        body["violation"] = encoding.cell_to_json(bad)
        body["violation_colors"] = sorted({coloring[v] for v in
                                           (bad.vertices() if args.mode == CUBICAL else bad.vertices)})
    _emit(args, encoding.envelope(spec, _flags(args, adjacency=args.adjacency or args.mode), body))
    return EXIT_OK if bad is None else EXIT_VIOLATION


def cmd_certify(args) -> int:
    spec, coloring = _load_coloring(args)
    flags = _flags(args, adjacency=args.adjacency or args.mode, split_components=args.split_components,
                   audit=args.audit)
    try:
        result = certify(spec, coloring, args.mode, split=args.split_components,
                         adjacency=args.adjacency, audit=args.audit)
    except ValidationError as e:
        log.error("%s", e)
        _emit(args, encoding.envelope(spec, flags, {"valid": False, "error": str(e),
                                                   "violation": encoding.cell_to_json(e.face)}))
        return EXIT_VIOLATION
    except InvariantError as e:
        log.error("invariant failure: %s", e)
        _emit(args, encoding.envelope(spec, flags, {"error": str(e)}))
        return EXIT_INVARIANT
    body = encoding.certificate_to_json(result.certificate)
    body["verified"] = result.verified
    _emit(args, encoding.envelope(spec, flags, body))
    if args.trace:
        encoding.write(args.trace, encoding.envelope(spec, flags, trace_report(result)))
    return EXIT_OK if result.verified else EXIT_INVARIANT


def cmd_fill(args) -> int:
    if not args.input:
        raise ConfigError("--input is required")
    alpha, box = encoding.fill_input_from_json(encoding.read(args.input))
    flags = {"axis_order": "ascending", "section_tiebreak": "smallest"}
    try:
        result = fill(alpha, box)
    except CocycleError as e:
        log.error("%s", e)
        _emit(args, encoding.envelope(None, flags, {"error": str(e)}))
        return EXIT_INVARIANT
    _emit(args, encoding.envelope(None, flags, encoding.fill_result_to_json(result, box)))
    return EXIT_OK


def cmd_oracle(args) -> int:
    spec = _spec_from_args(args)
    if args.search == "exhaustive":
        report = exhaustive_report(spec, args.mode)
    else:
        report = random_report(spec, args.seed, args.samples, args.mode)
    flags = _flags(args, search=args.search, seed=args.seed, samples=args.samples)
    _emit(args, encoding.envelope(spec, flags, report.to_dict()))
    if args.csv:
        row = {"d": spec.d, "n": spec.n, "m": spec.m, "mode": report.mode,
               "value": report.value, "samples": report.samples}
        with open(args.csv, "w", encoding="utf-8", newline="") as fh:
            fh.write(rows_to_csv([row], list(row)))
    return EXIT_OK


def cmd_gen(args) -> int:
    spec = _spec_from_args(args)
    coloring = random_valid(spec, args.seed, args.mode)
    _emit(args, encoding.coloring_to_json(spec, coloring))
    return EXIT_OK


COMMANDS = {"check": cmd_check, "certify": cmd_certify, "fill": cmd_fill,
            "oracle": cmd_oracle, "gen": cmd_gen}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--d", type=int)
    common.add_argument("--n", type=int)
    common.add_argument("--m", type=int)
    common.add_argument("--mode", choices=MODES, default=SIMPLICIAL,
                        help="constraint: Kuhn simplices or cubical faces of dimension m+1")
    common.add_argument("--adjacency", choices=MODES, default=None,
                        help="component adjacency (defaults to --mode)")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--input", "-i")
    common.add_argument("--output", "-o")
    common.add_argument("-v", "--verbose", action="count", default=0)

    parser = argparse.ArgumentParser(prog="cubecolor", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("check", parents=[common], help="validate a coloring and report component sizes")
    p = sub.add_parser("certify", parents=[common], help="run the descent and emit a certificate")
    p.add_argument("--split-components", action="store_true")
    p.add_argument("--trace", help="write the descent trace JSON here")
    p.add_argument("--audit", action="store_true", help="store every A(v) in the certificate")
    sub.add_parser("fill", parents=[common], help="fill a cubical cocycle read from --input")
    p = sub.add_parser("oracle", parents=[common], help="brute-force min-max color usage")
    p.add_argument("--search", choices=("exhaustive", "random"), default="exhaustive")
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--csv", help="write a one-row CSV table here")
    sub.add_parser("gen", parents=[common], help="emit a seeded random valid coloring")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.WARNING - 10 * args.verbose, format="%(levelname)s: %(message)s")
    try:
        return COMMANDS[args.command](args)
    except (encoding.ParseError, ConfigError) as e:
        log.error("%s", e)
        return EXIT_PARSE
    except SizeGuardError as e:
        log.error("%s", e)
        return EXIT_SIZE


if __name__ == "__main__":
    sys.exit(main())
