"""Command line front end.  Every command prints canonical JSON."""

from __future__ import annotations

import argparse
import json
import logging
import sys

from . import exact, lab
from .counting import count_G
from .instances import InstanceError, canonical_json, load_instance, polytope_json
from .minima import successive_minima
from .polytope import NotFullDimensional, UnsupportedDimension, slice_body
from .verifiers import (BUDGET_EXHAUSTED, HOLDS, INCONCLUSIVE, VIOLATED, ConditionFailed,
                        PreconditionViolated, _jsonable, minimize_chain)

EXIT_OK, EXIT_VIOLATED, EXIT_INPUT, EXIT_BUDGET, EXIT_INCONCLUSIVE = 0, 1, 2, 3, 4
VERDICT_EXIT = {HOLDS: EXIT_OK, VIOLATED: EXIT_VIOLATED, BUDGET_EXHAUSTED: EXIT_BUDGET,
                INCONCLUSIVE: EXIT_INCONCLUSIVE}

VERIFY = ("lemma21", "lemma22", "minkowski2", "thm311", "thm312", "ineq3", "ineq4", "cor411",
          "thm411", "conjecture321", "lemma421", "thm421chain", "monotonicity", "brunn-minkowski")
CONSTRUCT = ("lemma23", "lemma24", "lemma321", "translation-problem")


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="succmin", description="Exact successive-minima toolkit.")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("minima", help="successive minima profile")
    s.add_argument("instance")

    s = sub.add_parser("count", help="number of lattice points in the first body")
    s.add_argument("instance")
    s.add_argument("--points", action="store_true", help="also list the points")

    s = sub.add_parser("verify", help="check one statement on an instance")
    s.add_argument("statement", choices=VERIFY)
    s.add_argument("instance")

    s = sub.add_parser("construct", help="run a construction")
    s.add_argument("construction", choices=CONSTRUCT)
    s.add_argument("instance")
    s.add_argument("--budget", type=int, default=10 ** 6)

    s = sub.add_parser("chain", help="minimal divisibility chain above q")
    s.add_argument("q", help="comma separated, e.g. 3,2")

    s = sub.add_parser("slice", help="section of the first body at a level")
    s.add_argument("instance")
    s.add_argument("--level", required=True)
    s.add_argument("--axis", type=int, required=True, help="1-based coordinate index")

    s = sub.add_parser("campaign", help="seeded random campaign")
    s.add_argument("statement", choices=lab.STATEMENTS)
    s.add_argument("--config", help="GenConfig as JSON")
    s.add_argument("--seed", type=int)
    s.add_argument("--trials", type=int)
    s.add_argument("--dim", type=int)
    s.add_argument("--budget", type=int)
    s.add_argument("--out")
    return p


def _emit(obj) -> None:
    sys.stdout.write(canonical_json(obj) + "\n")


def _fail(message: str) -> int:
    sys.stderr.write(f"error: {message}\n")
    return EXIT_INPUT


def _campaign_config(args) -> lab.GenConfig:
    data = {}
    if args.config:
        with open(args.config, encoding="utf-8") as fh:
            try:
                data = json.load(fh)
            except json.JSONDecodeError as exc:
                raise InstanceError(f"{args.config}: line {exc.lineno}, column {exc.colno}: {exc.msg}")
    for name in ("seed", "trials", "dim", "budget"):
        value = getattr(args, name)
        if value is not None:
            data[name] = value
    try:
        return lab.GenConfig.from_json(data)
    except (TypeError, ValueError) as exc:
        raise InstanceError(f"config: {exc}") from None


def run(args) -> int:
    cmd = args.command
    if cmd == "chain":
        try:
            q = [int(v) for v in args.q.split(",")]
            sol = minimize_chain(q)
        except ValueError as exc:
            return _fail(f"q: {exc}")
        _emit(sol.to_json())
        return EXIT_OK

    if cmd == "campaign":
        cfg = _campaign_config(args)
        out = args.out or f"campaign-{args.statement}-d{cfg.dim}-s{cfg.seed}.jsonl"
        summary = lab.run_campaign(args.statement, cfg, out)
        _emit(summary)
        if summary["theorem"] and summary["counts"][VIOLATED]:
            return EXIT_VIOLATED
        return EXIT_OK

    inst = load_instance(args.instance)
    if cmd == "minima":
        _emit(successive_minima(inst.body, inst.lattice).to_json())
        return EXIT_OK
    if cmd == "count":
        g, pts = count_G(inst.body, inst.lattice)
        out = {"G": g}
        if args.points:
            out["points"] = [list(z) for z in pts]
        _emit(out)
        return EXIT_OK
    if cmd == "slice":
        d = inst.dim
        if not 1 <= args.axis <= d:
            return _fail(f"--axis must lie in 1..{d}")
        order = [i for i in range(d) if i != args.axis - 1] + [args.axis - 1]
        basis = [exact.identity(d)[i] for i in order]
        section = slice_body(inst.body, exact.rat(args.level), basis)
        _emit({"level": exact.fmt(exact.rat(args.level)), "axis": args.axis,
               "slice": None if section is None else polytope_json(section)})
        return EXIT_OK
    if cmd == "verify":
        report = lab.run_statement(args.statement, inst)
        _emit(report.to_json())
        return VERDICT_EXIT[report.verdict]
    if cmd == "construct":
        report = lab.run_statement(args.construction, inst, args.budget)
        _emit(report.to_json())
        return VERDICT_EXIT[report.verdict]
    raise AssertionError(cmd)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return run(args)
    except (InstanceError, OSError) as exc:
        return _fail(str(exc))
    except (PreconditionViolated, ConditionFailed) as exc:
        sys.stderr.write(f"precondition: {exc}\n")
        if exc.witness is not None:
            sys.stderr.write(canonical_json(_jsonable(exc.witness)) + "\n")
        return EXIT_INPUT
    except (NotFullDimensional, UnsupportedDimension, ValueError, KeyError) as exc:
        return _fail(str(exc))


if __name__ == "__main__":
    sys.exit(main())
