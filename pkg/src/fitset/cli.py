"""Command line entry point: ``fitset lattice|radical|injectors|verify``."""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from .errors import ArgumentError, ConfigError, FitsetError, HypothesesUnmet, ParseError, SizeError
from .fitting import slr
from .group import parse_group, sigma_primes
from .harness import SUITES, default_corpus, emit_report, load_corpus, run_suite
from .injectors import injectors_brute, injectors_theorem_b
from .lattice import all_subgroups
from .specs import parse_fitting_set

log = logging.getLogger("fitset")

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


def _load_json(path: str) -> dict:
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise ParseError(f"{path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}:{exc.lineno}: {exc.msg}") from None


def _group(path: str):
    doc = _load_json(path)
    # accept either a bare group spec or a corpus entry wrapping one
    return parse_group(doc.get("group", doc) if isinstance(doc, dict) else doc)


def _pi(text: str | None) -> list[int] | None:
    if text is None:
        return None
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise ArgumentError(f"--pi must be comma-separated integers, got {text!r}") from None


def _print(doc) -> None:
    sys.stdout.write(json.dumps(doc, indent=1, sort_keys=True) + "\n")


def cmd_lattice(args) -> int:
    lat = all_subgroups(_group(args.group))
    _print(lat.dump())
    return EXIT_OK


def cmd_radical(args) -> int:
    G = _group(args.group)
    lat = all_subgroups(G)
    F = parse_fitting_set(lat, _load_json(args.set))
    r = F.group_radical
    _print({
        "group": G.name,
        "set": F.provenance,
        "members": len(F),
        "sigma": sorted(F.sigma),
        "radical": {"index": r, "order": lat.orders[r], "generators": lat.gens[r],
                    "mask": hex(lat.masks[r])},
    })
    return EXIT_OK


def cmd_injectors(args) -> int:
    G = _group(args.group)
    lat = all_subgroups(G)
    F = parse_fitting_set(lat, _load_json(args.set))
    if args.method == "brute":
        res = injectors_brute(F)
    else:
        pi = _pi(args.pi) or sorted(sigma_primes(G.order))
        try:
            res = injectors_theorem_b(slr(pi, F))
        except HypothesesUnmet as exc:
            _print({"group": G.name, "status": "hypotheses_unmet", "failed": exc.failed})
            return EXIT_FAIL
    _print({"group": G.name, "set": F.provenance, **res.to_json()})
    return EXIT_OK


def cmd_verify(args) -> int:
    entries = load_corpus(args.corpus or default_corpus())
    suites = args.suite.split(",") if args.suite else None
    report = run_suite(entries, suites, jobs=args.jobs)
    text = emit_report(report, args.format)
    if args.report:
        Path(args.report).write_text(text)
        sys.stdout.write(emit_report(report, "text"))
    else:
        sys.stdout.write(text)
    return EXIT_OK if report.ok else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="fitset", description=__doc__)
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("lattice", help="dump the subgroup lattice of a group")
    s.add_argument("group")
    s.set_defaults(func=cmd_lattice)

    s = sub.add_parser("radical", help="radical G_F of a Fitting set")
    s.add_argument("group")
    s.add_argument("--set", required=True)
    s.set_defaults(func=cmd_radical)

    s = sub.add_parser("injectors", help="F-injectors of a group")
    s.add_argument("group")
    s.add_argument("--set", required=True)
    s.add_argument("--method", choices=("brute", "theorem-b"), default="brute")
    s.add_argument("--pi", help="comma-separated primes for --method theorem-b")
    s.set_defaults(func=cmd_injectors)

    s = sub.add_parser("verify", help="run verification suites over a corpus")
    s.add_argument("--corpus", help="corpus directory (default: bundled corpus)")
    s.add_argument("--suite", help=f"comma-separated suite names or globs: {', '.join(SUITES)}")
    s.add_argument("--report", help="write the report here instead of stdout")
    s.add_argument("--format", choices=("json", "text"), default="json")
    s.add_argument("--jobs", type=int, default=1)
    s.set_defaults(func=cmd_verify)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except (ParseError, ArgumentError, ConfigError, SizeError) as exc:
        sys.stderr.write(f"fitset: error: {exc}\n")
        return EXIT_USAGE
    except FitsetError as exc:
        sys.stderr.write(f"fitset: {type(exc).__name__}: {exc}\n")
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
