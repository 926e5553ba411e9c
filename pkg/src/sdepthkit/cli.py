"""Command line interface.

Exit codes: 0 success, 2 when a hypothesis does not hold (the question is
not applicable to the input), 1 on any other error or on a failed check in
``verify`` / ``experiment``.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys

from . import __version__, harness
from .errors import HypothesisError, SdepthError
from .monomials import RingContext

EXIT_OK, EXIT_ERROR, EXIT_INAPPLICABLE = 0, 1, 2

COMMANDS = ("sdepth", "depth", "dim", "decompose", "validate", "bounds", "verify", "experiment")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="sdepthkit",
        description="Stanley depth, depth and closed-form bounds for monomial ideals.",
    )
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    ap.add_argument("command", choices=COMMANDS)
    ap.add_argument("--ring", type=int, required=True, metavar="N",
                    help="number of variables x1..xN (upper bound on n for experiment)")
    ap.add_argument("--ideal", metavar="STR", help="J, or the ideal itself when --modulo is absent")
    ap.add_argument("--modulo", metavar="STR", help="I in S/I or J/I")
    ap.add_argument("--q1", metavar="STR")
    ap.add_argument("--q2", metavar="STR")
    ap.add_argument("--q3", metavar="STR")
    ap.add_argument("--json", action="store_true", help="print the result record as JSON")
    ap.add_argument("--char", type=int, default=0, metavar="P", help="field characteristic (0 or a prime)")
    ap.add_argument("--decomposition", metavar="PATH",
                    help="decomposition text for validate ('-' or absent reads stdin)")
    ap.add_argument("--time-limit", type=float, default=None, metavar="SEC")
    ap.add_argument("--max-points", type=int, default=None)
    exp = ap.add_argument_group("experiment")
    exp.add_argument("--seed", type=int, default=0, metavar="S")
    exp.add_argument("--max-exp", type=int, default=2, metavar="E")
    exp.add_argument("--count", type=int, default=200, metavar="C")
    exp.add_argument("--family", choices=harness.FAMILIES, default="irreducible-pair")
    exp.add_argument("--min-ring", type=int, default=1, metavar="N")
    exp.add_argument("--workers", type=int, default=1)
    exp.add_argument("--out", metavar="PATH", help="JSON Lines output")
    exp.add_argument("--summary", metavar="PATH", help="CSV summary output")
    ap.add_argument("-v", "--verbose", action="store_true")
    return ap


def _target(args) -> tuple:
    if args.ideal is not None and args.modulo is not None:
        return "module", {"J": args.ideal, "I": args.modulo}
    if args.ideal is not None:
        return "ideal", {"I": args.ideal}
    if args.modulo is not None:
        return "quotient", {"I": args.modulo}
    raise HypothesisError("give --ideal and/or --modulo")


def _spec(args) -> harness.ProblemSpec:
    ring = RingContext(args.ring)
    if args.command in ("bounds",) or (args.command == "verify" and args.q1):
        texts = {k.upper(): v for k, v in (("q1", args.q1), ("q2", args.q2), ("q3", args.q3)) if v}
        target = "pair"
    else:
        target, texts = _target(args)
    ideals = {name: harness.parse_ideal(text, ring) for name, text in texts.items()}
    decomposition = None
    if args.command == "validate":
        if args.decomposition in (None, "-"):
            decomposition = sys.stdin.read()
        else:
            with open(args.decomposition, encoding="utf-8") as fh:
                decomposition = fh.read()
    return harness.ProblemSpec(ring, ideals, args.command, target, args.char, decomposition)


def _engine(args) -> dict:
    opts = {}
    if args.time_limit is not None:
        opts["time_limit"] = args.time_limit
    if args.max_points is not None:
        opts["max_points"] = args.max_points
    return opts


def _print_record(rec, args) -> None:
    if args.json:
        print(rec.to_json())
        return
    if args.command == "decompose":
        print(f"# sdepth = {rec.values['sdepth']}")
        sys.stdout.write(rec.values["decomposition"])
        return
    for key, value in rec.values.items():
        print(f"{key} = {value}")
    for b in rec.bounds:
        if b["applicable"]:
            print(f"{b['name']:>15} ({b['kind']}, {b['target']}): {b['value']}")
        else:
            failed = "; ".join(text for text, ok in b["hypotheses"] if not ok)
            print(f"{b['name']:>15} ({b['kind']}, {b['target']}): n/a [{failed}]")
    for name, ok in rec.predicates.items():
        print(f"{name}: {'pass' if ok else 'FAIL'}")


def _experiment(args) -> int:
    cfg = harness.ExperimentConfig(
        seed=args.seed, family=args.family, count=args.count,
        n_min=args.min_ring, n_max=args.ring, max_exp=args.max_exp, char=args.char,
        workers=args.workers,
        **({"time_limit": args.time_limit} if args.time_limit is not None else {}),
        **({"max_points": args.max_points} if args.max_points is not None else {}),
    )
    records = list(harness.experiment(cfg))
    if args.out:
        harness.write_jsonl(records, args.out)
    summary = harness.summarize(records)
    summary["digest"] = harness.determinism_digest(records)
    if args.summary:
        harness.write_summary_csv(summary, args.summary)
    if args.json:
        print(json.dumps(summary, sort_keys=True))
    else:
        for key, value in summary.items():
            print(f"{key},{value}")
    ok = harness.all_predicates_pass(summary) and summary["errors"] == 0
    return EXIT_OK if ok else EXIT_ERROR


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        if args.command == "experiment":
            return _experiment(args)
        rec = harness.run(_spec(args), **_engine(args))
    except HypothesisError as exc:
        print(f"not applicable: {exc}", file=sys.stderr)
        return EXIT_INAPPLICABLE
    except (SdepthError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    _print_record(rec, args)
    if args.command == "validate" and not rec.values["valid"]:
        return EXIT_ERROR
    if rec.predicates and not all(rec.predicates.values()):
        return EXIT_ERROR
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
