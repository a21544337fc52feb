"""Command line front end.

Every command is pure given its flags, input files and seed: reports carry
no timestamps, JSON output is key-sorted, and sampling commands derive all
randomness from the seed (default 0, always printed), so identical
invocations produce byte-identical ``--json`` output.

Exit codes: 0 success or property holds; 1 refuted or counterexample
found; 2 usage or validation error.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from pathlib import Path

from . import __version__, algebra, catalog, fillins, frames, semantics, translate
from .errors import ClcError
from .order import mask_to_worlds
from .syntax import Language, parse, print_formula, proposition_letters

EXIT_OK = 0
EXIT_REFUTED = 1
EXIT_USAGE = 2


def _digest(path: str) -> dict:
    data = Path(path).read_bytes()
    return {"path": path, "sha256": hashlib.sha256(data).hexdigest()}


def _load_json(path: str):
    with open(path, "r", encoding="utf-8") as handle:
        return json.load(handle)


def _save_json(path: str, obj) -> None:
    with open(path, "w", encoding="utf-8") as handle:
        json.dump(obj, handle, sort_keys=True, indent=2)
        handle.write("\n")


def _envelope(command: str, seed, inputs: dict, result: dict) -> dict:
    return {
        "tool": "clc",
        "version": __version__,
        "command": command,
        "seed": seed,
        "inputs": inputs,
        "result": result,
    }


def _emit(args, envelope: dict, lines) -> None:
    if args.json:
        print(json.dumps(envelope, sort_keys=True, indent=2))
    else:
        for line in lines:
            print(line)


_LANGUAGES = {lang.value: lang for lang in Language}


def _cmd_parse(args) -> int:
    f = parse(args.formula, _LANGUAGES[args.language])
    printed = print_formula(f)
    result = {
        "formula": args.formula,
        "printed": printed,
        "language": args.language,
        "letters": sorted(proposition_letters(f)),
    }
    _emit(args, _envelope("parse", None, {"formula": args.formula}, result), [printed])
    return EXIT_OK


def _cmd_mc(args) -> int:
    frame = frames.frame_from_json(_load_json(args.frame))
    valuation = semantics.valuation_from_json(_load_json(args.val), frame)
    f = parse(args.formula, Language.COND)
    ts = semantics.truth_set(frame, valuation, f)
    holds_everywhere = ts == frame.order.full_mask
    if args.world is not None:
        holds = semantics.check(frame, valuation, f, args.world)
        code = EXIT_OK if holds else EXIT_REFUTED
    else:
        holds = holds_everywhere
        code = EXIT_OK if holds_everywhere else EXIT_REFUTED
    result = {
        "truth_set": mask_to_worlds(ts),
        "world": args.world,
        "holds": holds,
    }
    inputs = {
        "frame": _digest(args.frame),
        "val": _digest(args.val),
        "formula": args.formula,
    }
    where = f"at world {args.world}" if args.world is not None else "at every world"
    _emit(args, _envelope("mc", None, inputs, result),
          [f"truth set: {mask_to_worlds(ts)}",
           f"{'holds' if holds else 'fails'} {where}"])
    return code


def _cmd_valid(args) -> int:
    frame = frames.frame_from_json(_load_json(args.frame))
    f = parse(args.formula, Language.COND)
    verdict = semantics.valid(frame, f, budget=args.budget)
    inputs = {"frame": _digest(args.frame), "formula": args.formula}
    if verdict.valid:
        result = {"valid": True, "checked": verdict.checked}
        _emit(args, _envelope("valid", None, inputs, result), ["valid"])
        return EXIT_OK
    countermodel = {
        "valuation": semantics.valuation_to_json(verdict.valuation),
        "world": verdict.world,
    }
    if args.out:
        _save_json(args.out, countermodel["valuation"])
    result = {"valid": False, "countermodel": countermodel, "checked": verdict.checked}
    _emit(args, _envelope("valid", None, inputs, result),
          [f"refuted at world {verdict.world} under "
           f"{json.dumps(countermodel['valuation'], sort_keys=True)}"])
    return EXIT_REFUTED


def _cmd_correspond(args) -> int:
    frame = frames.frame_from_json(_load_json(args.frame))
    report = catalog.correspondent_holds(frame, args.axiom)
    inputs = {"frame": _digest(args.frame), "axiom": args.axiom}
    result = {"axiom": args.axiom, "holds": report.holds, "witness": report.witness_json()}
    lines = ["holds"] if report.holds else [f"violated at {report.witness_json()}"]
    _emit(args, _envelope("correspond", None, inputs, result), lines)
    return EXIT_OK if report.holds else EXIT_REFUTED


def _cmd_verify_correspondence(args) -> int:
    report = catalog.verify_correspondence(
        args.axiom, max_worlds=args.max_worlds, samples=args.samples,
        seed=args.seed, jobs=args.jobs,
    )
    result = dict(report)
    lines = [
        f"axiom {args.axiom}: {report['exhaustive_frames']} exhaustive + "
        f"{report['sampled_frames']} sampled frames, seed {args.seed}",
        "equivalence holds" if report["ok"]
        else f"{len(report['discrepancies'])} discrepancies",
    ]
    _emit(args, _envelope("verify-correspondence", args.seed,
                          {"axiom": args.axiom}, result), lines)
    return EXIT_OK if report["ok"] else EXIT_REFUTED


def _cmd_fillin(args) -> int:
    frame = frames.frame_from_json(_load_json(args.frame))
    kind = fillins.FillInKind.from_name(args.kind)
    filled = fillins.fill(frame, kind)
    _save_json(args.out, frames.frame_to_json(filled))
    inputs = {"frame": _digest(args.frame), "kind": args.kind}
    result = {"kind": args.kind, "out": args.out,
              "upsets": len(filled.admissible),
              "admissible_before": len(frame.admissible)}
    _emit(args, _envelope("fillin", None, inputs, result),
          [f"wrote {args.kind} fill-in to {args.out}"])
    return EXIT_OK


def _cmd_persist(args) -> int:
    kind = fillins.FillInKind.from_name(args.fillin)
    report = catalog.persistence_experiment(
        args.axiom, kind, samples=args.samples, seed=args.seed,
        strong=args.strong, expect=args.expect, jobs=args.jobs,
    )
    inputs = {"axiom": args.axiom, "fillin": args.fillin}
    lines = [
        f"axiom {args.axiom} under {args.fillin} fill-in: "
        f"{report['passes']}/{report['samples']} passed, seed {args.seed}",
    ]
    if report["counterexample"] is not None:
        lines.append("counterexample found (see --json for the frame)")
    lines.append("expectation met" if report["ok"] else "expectation NOT met")
    _emit(args, _envelope("persist", args.seed, inputs, report), lines)
    return EXIT_OK if report["ok"] else EXIT_REFUTED


def _cmd_dualize(args) -> int:
    alg = algebra.algebra_from_json(_load_json(args.algebra))
    frame = algebra.dual_frame(alg)
    _save_json(args.out, frames.frame_to_json(frame))
    inputs = {"algebra": _digest(args.algebra)}
    result = {"worlds": frame.n, "out": args.out}
    _emit(args, _envelope("dualize", None, inputs, result),
          [f"wrote dual frame with {frame.n} worlds to {args.out}"])
    return EXIT_OK


def _cmd_roundtrip(args) -> int:
    if (args.frame is None) == (args.algebra is None):
        raise ClcError("roundtrip takes exactly one of --frame or --algebra")
    if args.frame is not None:
        frame = frames.frame_from_json(_load_json(args.frame))
        if not isinstance(frame, frames.ConditionalFrame):
            raise ClcError("frame round-trips need a full conditional frame")
        report = algebra.frame_roundtrip(frame)
        inputs = {"frame": _digest(args.frame)}
    else:
        alg = algebra.algebra_from_json(_load_json(args.algebra))
        report = algebra.check_duality_roundtrip(alg)
        inputs = {"algebra": _digest(args.algebra)}
    result = {"ok": report.ok, "failures": report.failures}
    _emit(args, _envelope("roundtrip", None, inputs, result), [str(report)])
    return EXIT_OK if report.ok else EXIT_REFUTED


def _cmd_translate(args) -> int:
    f = parse(args.formula, Language.MODAL)
    if args.mode == "p":
        out = translate.p_translate(f, args.letter)
    else:
        out = translate.gmt_translate(f, normalize=args.normalize)
    printed = print_formula(out)
    result = {"mode": args.mode, "input": args.formula, "output": printed}
    if args.mode == "p":
        result["letter"] = args.letter
    _emit(args, _envelope("translate", None, {"formula": args.formula}, result),
          [printed])
    return EXIT_OK


def _cmd_search(args) -> int:
    target = parse(args.refute, Language.COND)
    result_obj = catalog.search_countermodel(
        args.logic, target, max_worlds=args.max_worlds,
        samples=args.samples, seed=args.seed,
    )
    inputs = {"logic": args.logic, "refute": args.refute}
    if result_obj.found:
        frame_json = frames.frame_to_json(result_obj.frame)
        valuation_json = semantics.valuation_to_json(result_obj.valuation)
        if args.out:
            outdir = Path(args.out)
            outdir.mkdir(parents=True, exist_ok=True)
            _save_json(str(outdir / "frame.json"), frame_json)
            _save_json(str(outdir / "valuation.json"), valuation_json)
        result = {
            "found": True,
            "frame": frame_json,
            "valuation": valuation_json,
            "world": result_obj.world,
            "frames_checked": result_obj.frames_checked,
        }
        lines = [
            f"countermodel found at world {result_obj.world} "
            f"after {result_obj.frames_checked} frames, seed {args.seed}",
        ]
        if args.out:
            lines.append(f"wrote frame.json and valuation.json to {args.out}")
        _emit(args, _envelope("search", args.seed, inputs, result), lines)
        return EXIT_REFUTED
    result = {
        "found": False,
        "frames_checked": result_obj.frames_checked,
        "frames_matching": result_obj.frames_matching,
    }
    _emit(args, _envelope("search", args.seed, inputs, result),
          [f"exhausted after {result_obj.frames_checked} frames "
           f"(inconclusive), seed {args.seed}"])
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="clc",
        description="workbench for intuitionistic conditional logic",
    )
    parser.add_argument("--json", action="store_true", help="machine-readable report")
    parser.add_argument("--jobs", type=int, default=1, help="worker pool size")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("parse", help="parse and reprint a formula")
    p.add_argument("formula")
    p.add_argument("--language", choices=sorted(_LANGUAGES), default="cond")
    p.set_defaults(fn=_cmd_parse)

    p = sub.add_parser("mc", help="model check a formula on a frame")
    p.add_argument("--frame", required=True)
    p.add_argument("--val", required=True)
    p.add_argument("--formula", required=True)
    p.add_argument("--world", type=int)
    p.set_defaults(fn=_cmd_mc)

    p = sub.add_parser("valid", help="exhaustive validity over valuations")
    p.add_argument("--frame", required=True)
    p.add_argument("--formula", required=True)
    p.add_argument("--admissible", action="store_true",
                   help="quantify valuations over the admissible family "
                        "(always the case; accepted for explicitness)")
    p.add_argument("--budget", type=int, default=semantics.DEFAULT_BUDGET)
    p.add_argument("--out", help="write the countermodel valuation here")
    p.set_defaults(fn=_cmd_valid)

    p = sub.add_parser("correspond", help="check an axiom's frame correspondent")
    p.add_argument("--frame", required=True)
    p.add_argument("--axiom", required=True, choices=sorted(catalog.AXIOMS))
    p.set_defaults(fn=_cmd_correspond)

    p = sub.add_parser("verify-correspondence",
                       help="validity iff correspondent, exhaustive plus sampled")
    p.add_argument("--axiom", required=True, choices=sorted(catalog.AXIOMS))
    p.add_argument("--max-worlds", type=int, default=2)
    p.add_argument("--samples", type=int, default=0)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(fn=_cmd_verify_correspondence)

    p = sub.add_parser("fillin", help="extend a general frame to a full frame")
    p.add_argument("--frame", required=True)
    p.add_argument("--kind", required=True,
                   choices=[k.value for k in fillins.FillInKind])
    p.add_argument("--out", required=True)
    p.set_defaults(fn=_cmd_fillin)

    p = sub.add_parser("persist", help="correspondent-level persistence experiment")
    p.add_argument("--axiom", required=True, choices=sorted(catalog.AXIOMS))
    p.add_argument("--fillin", required=True,
                   choices=[k.value for k in fillins.FillInKind])
    p.add_argument("--samples", type=int, default=200)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--strong", action="store_true",
                   help="generate strongly coherent frames only")
    p.add_argument("--expect", choices=["pass", "fail"], default="pass")
    p.set_defaults(fn=_cmd_persist)

    p = sub.add_parser("dualize", help="dual frame of a finite algebra")
    p.add_argument("--algebra", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(fn=_cmd_dualize)

    p = sub.add_parser("roundtrip", help="duality round-trip on a frame or algebra")
    p.add_argument("--frame")
    p.add_argument("--algebra")
    p.set_defaults(fn=_cmd_roundtrip)

    p = sub.add_parser("translate", help="box-language translations")
    p.add_argument("--mode", required=True, choices=["p", "gmt"])
    p.add_argument("--letter", default="p")
    p.add_argument("--normalize", action="store_true")
    p.add_argument("formula")
    p.set_defaults(fn=_cmd_translate)

    p = sub.add_parser("search", help="countermodel search under a named logic")
    p.add_argument("--logic", required=True, choices=sorted(catalog.PRESETS))
    p.add_argument("--refute", required=True)
    p.add_argument("--max-worlds", type=int, default=2)
    p.add_argument("--samples", type=int, default=500)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", help="directory for countermodel files")
    p.set_defaults(fn=_cmd_search)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    try:
        return args.fn(args)
    except ClcError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except json.JSONDecodeError as exc:
        print(f"error: bad JSON input: {exc}", file=sys.stderr)
        return EXIT_USAGE


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
