"""Command-line front end.

Exit codes: 0 success, 2 usage or input error, 3 unsupported rule or mode,
4 missing snapshot data.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys

import numpy as np

from . import complexity, funcbench, harness, predictors
from .eca import Configuration, evolve
from .errors import (BackgroundUnstable, InvalidSpec, MalformedTape, OverflowPolicyError, SnapshotsMissing,
                     Unsupported, UnsupportedRule)
from .render import grid, to_ascii, to_pbm
from .tm import compiler, eca_machine, palindrome
from .tm.encoding import encode_input
from .tm.machine import load_spec, run, save_spec, spec_to_json

EXIT_OK, EXIT_USAGE, EXIT_UNSUPPORTED, EXIT_MISSING = 0, 2, 3, 4
DEFAULT_SEED = 20240101


class UsageError(Exception):
    pass


def _rule(text) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"rule must be an integer, got {text!r}") from None
    if not 0 <= value <= 255:
        raise argparse.ArgumentTypeError(f"rule must be in 0..255, got {value}")
    return value


def _nonneg(text) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError("must be >= 0")
    return value


def _int_list(text) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _init(text: str) -> Configuration:
    return Configuration.parse(text) if ":" in text else Configuration.from_bits(text, 0)


def _dumps(doc) -> str:
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def _csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _emit(args, text: str) -> None:
    if args.output:
        with open(args.output, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# -- subcommands ---------------------------------------------------------------

def cmd_simulate(args) -> int:
    trace = evolve(args.rule, _init(args.init), args.steps)
    fmt = args.format
    if fmt == "ascii":
        text = to_ascii(grid(trace))
    elif fmt == "pbm":
        text = to_pbm(grid(trace))
    elif fmt == "csv":
        text = _csv(["step", "anchor", "width", "bits"],
                    [(i, r.anchor, r.width, r.bits) for i, r in enumerate(trace.rows)])
    else:
        text = _dumps({
            "rule": args.rule,
            "steps": args.steps,
            "rows": [r.to_text() for r in trace.rows],
            "applications": trace.applications,
            "applications_before_last": trace.applications_before_last,
        })
    _emit(args, text)
    return EXIT_OK


def cmd_predict(args) -> int:
    row, work = predictors.predict_with_work(args.rule, args.steps)
    kind = predictors.get_predictor(args.rule).kind
    if args.format == "json":
        text = _dumps({"rule": args.rule, "n": args.steps, "row": row.to_text(), "kind": kind, "work": work})
    else:
        text = row.to_text() + "\n"
    _emit(args, text)
    return EXIT_OK


def cmd_classify(args) -> int:
    rules = range(256) if args.rules is None else args.rules
    if args.horizon < 64:
        raise UsageError("horizon must be >= 64")
    results = harness.sweep(rules, args.horizon, check_stability=not args.no_stability)
    if args.format == "json":
        text = _dumps({"horizon": args.horizon, "results": [
            {
                "rule": r,
                "class": label,
                "work_exponent": None if ev.sim_work_fit is None else round(ev.sim_work_fit, 4),
                "diff_bound": None if ev.diff_bound is None else ("inf" if ev.diff_bound == math.inf else int(ev.diff_bound)),
                "predictor": ev.predictor_found,
                "collapse_step": ev.collapse_step,
                "note": ev.note,
            } for r, label, ev in results]})
    else:
        text = harness.sweep_csv(results)
    _emit(args, text)
    return EXIT_OK


def _builtin_machine(name: str, rule: int | None):
    if name == "eca":
        if rule is None:
            raise UsageError("--rule is required for the eca machine")
        return eca_machine.build_eca_machine_2tape(rule)
    if name == "rule158-direct":
        return eca_machine.build_rule158_direct_machine()
    if name == "palindrome2":
        return palindrome.palindrome_2tape()
    if name == "palindrome1":
        return palindrome.palindrome_1tape()
    raise UsageError(f"unknown machine {name!r}")


def _load(path):
    try:
        return load_spec(path)
    except OSError as exc:
        raise UsageError(f"cannot read machine file: {exc}") from None


def cmd_tm_build(args) -> int:
    spec = _builtin_machine(args.machine, args.rule)
    if args.output:
        save_spec(spec, args.output)
    else:
        sys.stdout.write(spec_to_json(spec))
    return EXIT_OK


def cmd_tm_run(args) -> int:
    spec = _load(args.machine)
    if args.input is not None:
        tape = args.input
    elif args.n is not None:
        tape = encode_input(args.n, _init(args.init).bits)
    else:
        raise UsageError("give --input or --n")
    mr = run(spec, [tape], budget=args.budget)
    doc = {
        "halted": mr.halted,
        "budget_exceeded": mr.budget_exceeded,
        "steps": mr.steps,
        "state": mr.state,
        "tapes": list(mr.tape_strings()),
    }
    if args.decode:
        anchor = _init(args.init).anchor if args.n is not None else 0
        doc["rows"] = [r.to_text() for r in eca_machine.decode_machine_output(mr, anchor)]
    if args.format == "dump":
        text = f"steps={mr.steps} halted={str(mr.halted).lower()}\n{mr.dump()}\n"
        if args.decode:
            text += "".join(r + "\n" for r in doc["rows"])
    else:
        text = _dumps(doc)
    _emit(args, text)
    return EXIT_OK


def cmd_tm_compile(args) -> int:
    spec = _load(args.machine)
    out = compiler.compile_to_single_tape(spec)
    if args.output:
        save_spec(out, args.output)
    else:
        sys.stdout.write(spec_to_json(out))
    return EXIT_OK


def cmd_complexity(args) -> int:
    comp = complexity.LZ78Compressor() if args.compressor == "lz78" else complexity.LZ77Compressor()
    if args.string is not None or args.random is not None:
        if args.string is not None:
            s = args.string
        else:
            rng = np.random.default_rng(args.seed)
            s = "".join(map(str, rng.integers(0, 2, args.random)))
        k = complexity.k_estimate(s, comp)
        d = complexity.depth_proxy(s, comp)
        doc = {"length": len(s), "compressed_bits": k.compressed_bits, "compressor": k.compressor_id,
               "regen_work": d.regen_work, "upper_bound_surrogate": True}
        text = _dumps(doc) if args.format == "json" else _csv(list(doc), [list(doc.values())])
        _emit(args, text)
        return EXIT_OK
    if args.rule is None:
        raise UsageError("give --rule, --string or --random")
    trace = evolve(args.rule, _init(args.init), args.steps)
    if args.indicator == "def1":
        rep = complexity.def1_indicator(trace, comp)
        if args.format == "json":
            text = _dumps({
                "rule": args.rule, "steps": args.steps, "compressor": rep.compressor_id,
                "indicator": "def1", "upper_bound_surrogate": True,
                "min_margin": rep.min_margin, "max_margin": rep.max_margin,
                "margin_slope": round(rep.margin_slope, 6), "positive_on_horizon": rep.positive_on_horizon,
                "rows": [list(r) for r in rep.rows],
            })
        else:
            text = rep.to_csv()
    else:
        rep = complexity.def2_def3_profile(trace, comp)
        if args.format == "json":
            text = _dumps({
                "rule": args.rule, "steps": args.steps, "compressor": rep.compressor_id,
                "indicator": "def23", "upper_bound_surrogate": True,
                "violations": rep.violations, "exponent": round(rep.exponent, 6),
                "excess_exponent": round(rep.excess_exponent, 6), "depths": rep.depths,
            })
        else:
            text = rep.to_csv()
    _emit(args, text)
    return EXIT_OK


def cmd_bench(args) -> int:
    f = funcbench.by_name(args.function, args.digits, args.x0)
    ns = args.ns or [2**k for k in range(6, 13)]
    rep = funcbench.speedup_report(f, sorted(ns))
    if args.format == "json":
        text = _dumps({
            "f": rep["f"],
            "gap_exponent": None if rep["gap_exponent"] is None else round(rep["gap_exponent"], 6),
            "rows": [{"n": r.n, "enum_work": r.enum_work, "direct_work": r.direct_work,
                      "speedup": None if r.speedup is None else round(r.speedup, 6)} for r in rep["rows"]],
        })
    else:
        text = funcbench.report_csv(rep["rows"])
    _emit(args, text)
    return EXIT_OK


def cmd_witness(args) -> int:
    if args.machine in ("eca", "rule158-direct"):
        machine = _builtin_machine(args.machine, args.rule)
    else:
        machine = _load(args.machine)
    extractor = harness.identity_extractor() if args.extractor == "identity" else _load(args.extractor)
    c = args.bound
    w = harness.ApproximationWitness(machine, extractor, lambda i: c, snapshot_every=args.snapshot_every or None)
    verdict = harness.verify_witness(w, args.rule, args.n, init=args.init)
    doc = verdict.to_dict()
    doc["rule"] = args.rule
    doc["machine"] = args.machine
    doc["bound"] = c
    _emit(args, _dumps(doc))
    return EXIT_OK


def cmd_report(args) -> int:
    label, ev = harness.classify(args.rule, args.horizon)
    trace = evolve(args.rule, None, args.horizon)
    try:
        pred = predictors.get_predictor(args.rule).kind
    except UnsupportedRule:
        pred = None
    d1 = complexity.def1_indicator(trace)
    doc = {
        "rule": args.rule,
        "horizon": args.horizon,
        "class": label,
        "work_exponent": None if ev.sim_work_fit is None else round(ev.sim_work_fit, 4),
        "diff_bound": None if ev.diff_bound is None else ("inf" if ev.diff_bound == math.inf else int(ev.diff_bound)),
        "predictor": pred,
        "applications": trace.applications,
        "applications_before_last": trace.applications_before_last,
        "final_width": trace.final.width,
        "def1_min_margin": d1.min_margin,
        "def1_margin_slope": round(d1.margin_slope, 6),
        "note": "finite-horizon measurements; compression values are upper-bound surrogates",
    }
    _emit(args, _dumps(doc))
    return EXIT_OK


# -- parser ----------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="cirlab", description="Cellular automaton and Turing machine work measurements.")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED, help="seed for generated test strings")
    sub = p.add_subparsers(dest="command", required=True)

    def out(sp):
        sp.add_argument("-o", "--output", help="write to this file instead of stdout")

    s = sub.add_parser("simulate", help="evolve a rule and render or tabulate the rows")
    s.add_argument("--rule", type=_rule, required=True)
    s.add_argument("--steps", type=_nonneg, required=True)
    s.add_argument("--init", default="1", help="initial row as bits or anchor:bits (default 1)")
    s.add_argument("--format", choices=["ascii", "pbm", "csv", "json"], default="ascii")
    out(s)
    s.set_defaults(func=cmd_simulate)

    s = sub.add_parser("predict", help="row n from a closed form")
    s.add_argument("--rule", type=_rule, required=True)
    s.add_argument("--steps", type=_nonneg, required=True)
    s.add_argument("--format", choices=["text", "json"], default="text")
    out(s)
    s.set_defaults(func=cmd_predict)

    s = sub.add_parser("classify", help="classify rules into reducibility classes")
    s.add_argument("--rules", type=_int_list, help="comma-separated rule indices (default all 256)")
    s.add_argument("--horizon", type=int, default=512)
    s.add_argument("--no-stability", action="store_true", help="skip the half-horizon stability check")
    s.add_argument("--format", choices=["csv", "json"], default="csv")
    out(s)
    s.set_defaults(func=cmd_classify)

    tm = sub.add_parser("tm", help="Turing machine tools")
    tsub = tm.add_subparsers(dest="tm_command", required=True)
    s = tsub.add_parser("build", help="write a built-in machine as JSON")
    s.add_argument("--machine", choices=["eca", "rule158-direct", "palindrome1", "palindrome2"], default="eca")
    s.add_argument("--rule", type=_rule)
    out(s)
    s.set_defaults(func=cmd_tm_build)
    s = tsub.add_parser("run", help="run a machine file")
    s.add_argument("--machine", required=True, help="machine JSON file")
    s.add_argument("--input", help="raw tape-0 contents")
    s.add_argument("--n", type=int, help="encode (n, --init) as the input tape")
    s.add_argument("--init", default="1")
    s.add_argument("--budget", type=_nonneg)
    s.add_argument("--decode", action="store_true", help="decode ECA rows from the final tapes")
    s.add_argument("--format", choices=["json", "dump"], default="json")
    out(s)
    s.set_defaults(func=cmd_tm_run)
    s = tsub.add_parser("compile", help="compile a k-tape machine file to one tape")
    s.add_argument("--machine", required=True)
    out(s)
    s.set_defaults(func=cmd_tm_compile)

    s = sub.add_parser("complexity", help="compression-based indicators")
    s.add_argument("--rule", type=_rule)
    s.add_argument("--steps", type=_nonneg, default=512)
    s.add_argument("--init", default="1")
    s.add_argument("--indicator", choices=["def1", "def23"], default="def1")
    s.add_argument("--string", help="estimate a single bit string instead")
    s.add_argument("--random", type=_nonneg, help="estimate a seeded random string of this many bits")
    s.add_argument("--compressor", choices=["lz77", "lz78"], default="lz77")
    s.add_argument("--format", choices=["csv", "json"], default="csv")
    out(s)
    s.set_defaults(func=cmd_complexity)

    s = sub.add_parser("bench", help="enumeration vs direct work for a candidate function")
    s.add_argument("--function", required=True,
                   choices=["Pow2Decimal", "Factorial", "NthPrime", "LogisticFixedPoint", "Rule30Row", "Rule110Row"])
    s.add_argument("--ns", type=_int_list)
    s.add_argument("--digits", type=int, default=16)
    s.add_argument("--x0", default="0.3")
    s.add_argument("--format", choices=["csv", "json"], default="csv")
    out(s)
    s.set_defaults(func=cmd_bench)

    s = sub.add_parser("witness", help="check approximation conditions at a finite horizon")
    s.add_argument("--rule", type=_rule, required=True)
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--init", default="1")
    s.add_argument("--machine", default="eca", help="eca, rule158-direct or a machine JSON file")
    s.add_argument("--extractor", default="identity", help="identity or a machine JSON file")
    s.add_argument("--bound", type=int, default=1, help="constant extractor step bound F(i)")
    s.add_argument("--snapshot-every", type=_nonneg, default=1, help="0 disables snapshots")
    out(s)
    s.set_defaults(func=cmd_witness)

    s = sub.add_parser("report", help="one-rule summary")
    s.add_argument("--rule", type=_rule, required=True)
    s.add_argument("--horizon", type=int, default=256)
    out(s)
    s.set_defaults(func=cmd_report)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (BackgroundUnstable, UnsupportedRule, Unsupported) as exc:
        print(f"cirlab: {exc}", file=sys.stderr)
        return EXIT_UNSUPPORTED
    except SnapshotsMissing as exc:
        print(f"cirlab: {exc}", file=sys.stderr)
        return EXIT_MISSING
    except (UsageError, InvalidSpec, MalformedTape, OverflowPolicyError, ValueError) as exc:
        print(f"cirlab: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
