"""Command line entry point.

    twistact validate   --input action.json
    twistact crossed    --input action.json [--mode spanning|exhaustive]
    twistact orbits     --input action.json
    twistact corestrict --input action.json
    twistact globalize  --input action.json [--output glob.json]
    twistact morita     --input action.json
    twistact compare    --input g1.json --input2 g2.json

Exit codes: 0 all checks pass, 1 a check fails, 2 the input is malformed,
3 a step that must succeed on a valid action failed (a bug).
"""

from __future__ import annotations

import argparse
import json
import sys

from .action import UnverifiedAction, certify, verify_axioms
from .report import Report
from .serialize import SchemaError, globalization_to_doc, load_document

OK, CHECK_FAILED, BAD_INPUT, BUG = 0, 1, 2, 3


class _Exit(Exception):
    def __init__(self, code, report):
        self.code = code
        self.report = report


def _action(path):
    from .action import TwistedPartialAction

    obj = load_document(path)
    if not isinstance(obj, TwistedPartialAction):
        raise SchemaError("kind", "expected an action document")
    return obj


def _certified(tpa):
    try:
        return certify(tpa)
    except UnverifiedAction as exc:
        exc.report.data["note"] = "the input is not a twisted partial action"
        raise _Exit(CHECK_FAILED, exc.report)


def _guaranteed(rep):
    """Checks that hold for every valid action: a failure is a bug."""
    return OK if rep.passed else BUG


def cmd_validate(args):
    rep = verify_axioms(_action(args.input))
    return (OK if rep.passed else CHECK_FAILED), rep


def cmd_crossed(args):
    from .crossed import verify_ring_laws

    tpa = _action(args.input)
    try:
        rep = verify_ring_laws(tpa, args.mode)
    except ValueError as exc:
        rep = Report("crossed")
        rep.record("mode", "requested sweep is feasible", False, str(exc))
        return BAD_INPUT, rep
    return (OK if rep.passed else CHECK_FAILED), rep


def cmd_orbits(args):
    from .orbits import orbit_report

    tpa = _certified(_action(args.input))
    rep = orbit_report(tpa)
    return _guaranteed(rep), rep


def cmd_corestrict(args):
    from .corestriction import corestrict

    tpa = _certified(_action(args.input))
    res = corestrict(tpa)
    return _guaranteed(res.report), res.report


def cmd_globalize(args):
    from .globalization import (build_extended_twist, globalize, roundtrip_report,
                                unital_structure, verify_extended_cocycle, verify_globalization,
                                verify_twolaws)

    tpa = _certified(_action(args.input))
    ext = build_extended_twist(tpa)
    rep = Report("globalize")
    rep.extend(verify_extended_cocycle(tpa, ext), prefix="extended/")
    rep.extend(verify_twolaws(tpa, ext, seed=args.seed), prefix="twolaws/")
    res = globalize(tpa, wt=ext)
    rep.extend(verify_globalization(tpa, res))
    rep.extend(unital_structure(res), prefix="unital/")
    rep.extend(roundtrip_report(tpa, res), prefix="roundtrip/")
    rep.data["wt"] = {f"{x},{y}": v for (x, y), v in sorted(ext.wt.items())}
    rep.data["|B|"] = res.size()
    rep.data["log2|B|"] = res.log2_size()
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            json.dump(globalization_to_doc(res), fh, indent=1)
        rep.data["output"] = args.output
    return _guaranteed(rep), rep


def cmd_morita(args):
    from .globalization import globalize
    from .morita import ClosureFailure, build_context, verify_surjectivity

    tpa = _certified(_action(args.input))
    res = globalize(tpa)
    try:
        ctx = build_context(tpa, res)
    except ClosureFailure as exc:
        return BUG, exc.report
    rep = verify_surjectivity(ctx)
    return _guaranteed(rep), rep


def _as_globalization(path):
    from .action import TwistedPartialAction
    from .globalization import globalize

    obj = load_document(path)
    if isinstance(obj, TwistedPartialAction):
        obj = globalize(_certified(obj))
    return obj


def cmd_compare(args):
    from .equivalence import NotSameAction, try_equivalent, try_isomorphic
    from .globalization import verify_globalization

    if not args.input2:
        raise SchemaError("--input2", "compare needs two globalizations")
    g1, g2 = _as_globalization(args.input), _as_globalization(args.input2)
    rep = Report("compare")
    for i, g in ((1, g1), (2, g2)):
        _certified(g.action)
        rep.extend(verify_globalization(g.action, g), prefix=f"input{i}/")
    if not rep.passed:
        rep.data["relation"] = "not-a-globalization"
        return CHECK_FAILED, rep
    try:
        iso = try_isomorphic(g1, g2)
    except NotSameAction as exc:
        rep.record("same-setting", "both globalize actions on one ring with equal domains", False, str(exc))
        rep.data["relation"] = "unrelated"
        return CHECK_FAILED, rep
    if iso:
        rep.extend(iso.report, prefix="iso/")
        rep.data["relation"] = "isomorphic"
        return OK, rep
    rep.data["sametildew"] = iso.witness
    eq = try_equivalent(g1, g2)
    rep.extend(eq.report, prefix="equivalence/")
    if eq:
        rep.data["relation"] = "equivalent"
        rep.data["epsilon"] = list(eq.epsilon)
        return OK, rep
    if eq.stage == "action-witness":
        rep.data["relation"] = "not-equivalent"
        return CHECK_FAILED, rep
    rep.data["relation"] = "bug-report"
    rep.data["stage"] = eq.stage
    return BUG, rep


COMMANDS = {
    "validate": cmd_validate,
    "crossed": cmd_crossed,
    "orbits": cmd_orbits,
    "corestrict": cmd_corestrict,
    "globalize": cmd_globalize,
    "morita": cmd_morita,
    "compare": cmd_compare,
}


def build_parser():
    ap = argparse.ArgumentParser(prog="twistact",
                                 description="Check twisted partial actions on finite block rings.")
    ap.add_argument("command", choices=sorted(COMMANDS))
    ap.add_argument("--input", required=True, help="action or globalization JSON")
    ap.add_argument("--input2", help="second globalization (compare)")
    ap.add_argument("--mode", choices=["spanning", "exhaustive"], default="spanning")
    ap.add_argument("--seed", type=int, default=0, help="seed for sampled sweeps")
    ap.add_argument("--output", help="where globalize writes its globalization document")
    fmt = ap.add_mutually_exclusive_group()
    fmt.add_argument("--json", dest="fmt", action="store_const", const="json")
    fmt.add_argument("--text", dest="fmt", action="store_const", const="text")
    ap.set_defaults(fmt="json")
    return ap


def run(argv=None, out=None):
    """Run one command; returns the exit code and writes the report to ``out``."""
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        code, rep = COMMANDS[args.command](args)
    except _Exit as exc:
        code, rep = exc.code, exc.report
    except SchemaError as exc:
        rep = Report(args.command)
        rep.record("schema", "input document is well formed", False,
                   {"path": exc.path, "reason": exc.reason})
        code = BAD_INPUT
    except OSError as exc:
        rep = Report(args.command)
        rep.record("input", "input file is readable", False, str(exc))
        code = BAD_INPUT
    rep.command = args.command
    print(rep.to_json_lines() if args.fmt == "json" else rep.to_text(), file=out)
    return code


def main(argv=None):
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
