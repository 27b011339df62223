"""Command-line driver: parse an input file, run a verification pipeline,
emit a report (human-readable lines plus optional JSON).

Exit codes: 0 when no check failed (undecided checks are counted but do not
fail the run), 1 when some check failed, 2 on input errors.
"""

from __future__ import annotations

import argparse
import sys

from .corpus import generate_s_probes
from .equivalence import ContextError, build_context
from .pipelines import check_tilting_pipeline, verify_bb_pipeline, \
    verify_derived_pipeline
from .reporting import (
    CheckRecord, VerificationReport, input_digest, load_report,
    serialize_canonical, validate_report_dict,
)
from .textio import TextFormatError, parse_document


def _read_input(path: str):
    with open(path, "rb") as fh:
        data = fh.read()
    doc = parse_document(data.decode())
    return doc, input_digest(data)


def _emit(report: VerificationReport, json_path: str | None) -> int:
    doc = report.as_dict()
    for rec in doc["records"]:
        line = f"[{rec['status']:>9}] {rec['check_id']}"
        if rec.get("detail"):
            line += f"  ({rec['detail']})"
        print(line)
    s = doc["summary"]
    print(f"summary: {s['pass']} pass, {s['fail']} fail, "
          f"{s['undecided']} undecided")
    if json_path:
        with open(json_path, "w") as fh:
            fh.write(serialize_canonical(doc))
    return report.exit_code


def _declared_tilting(doc, report: VerificationReport):
    if not doc.tilting:
        return None
    name = sorted(doc.tilting)[0]
    return name, doc.tilting[name][1]


def _probe_list(doc, spec: str):
    names = doc.probes if spec == "all" else [s.strip()
                                              for s in spec.split(",") if s.strip()]
    out = []
    for n in names:
        if n not in doc.modules:
            raise TextFormatError(0, f"unknown probe module {n!r}")
        out.append((n, doc.modules[n][1]))
    return out


def cmd_check_tilting(args) -> int:
    doc, digest = _read_input(args.input)
    report = VerificationReport("check-tilting", digest, args.seed)
    if not doc.tilting:
        print("no tilting candidates declared; nothing to check")
        return _emit(report, args.json)
    probes = _probe_list(doc, "all")
    for name in sorted(doc.tilting):
        T = doc.tilting[name][1]
        records, _ = check_tilting_pipeline(T, probes, bound=args.bound,
                                            seed=args.seed)
        for r in records:
            r.check_id = f"{name}.{r.check_id}"
            report.add(r)
    return _emit(report, args.json)


def cmd_verify_bb(args) -> int:
    doc, digest = _read_input(args.input)
    report = VerificationReport("verify-bb", digest, args.seed)
    picked = _declared_tilting(doc, report)
    if picked is None:
        print("error: verify-bb needs a declared tilting module", file=sys.stderr)
        return 2
    name, T = picked
    try:
        ctx = build_context(T, bound=args.bound, seed=args.seed)
    except ContextError as ex:
        report.add(CheckRecord("bb.context", "a tilting context can be built "
                               "from the declared candidate", "fail",
                               detail=str(ex)))
        return _emit(report, args.json)
    r_probes = _probe_list(doc, args.probes)
    s_probes = generate_s_probes(ctx, r_probes, dim_cap=args.ecap)
    records, _ = verify_bb_pipeline(ctx, r_probes, s_probes, seed=args.seed,
                                    ore_pairs=args.ore, ses_samples=args.ses)
    for r in records:
        report.add(r)
    return _emit(report, args.json)


def cmd_verify_derived(args) -> int:
    doc, digest = _read_input(args.input)
    report = VerificationReport("verify-derived", digest, args.seed)
    picked = _declared_tilting(doc, report)
    if picked is None:
        print("error: verify-derived needs a declared tilting module",
              file=sys.stderr)
        return 2
    _, T = picked
    try:
        ctx = build_context(T, seed=args.seed)
    except ContextError as ex:
        report.add(CheckRecord("derived.context", "a tilting context can be "
                               "built from the declared candidate", "fail",
                               detail=str(ex)))
        return _emit(report, args.json)
    try:
        a, b = args.window.split("..")
        window = range(int(a), int(b) + 1)
    except ValueError:
        print(f"error: bad window {args.window!r} (use e.g. -2..2)",
              file=sys.stderr)
        return 2
    r_probes = _probe_list(doc, "all")
    s_probes = generate_s_probes(ctx, r_probes)
    declared = [(n, cx) for n, (an, cx) in sorted(doc.complexes.items())]
    pool_r = [m for _, m in r_probes]
    pool_s = [m for _, m in s_probes]
    records = verify_derived_pipeline(ctx, declared, pool_r, pool_s, window,
                                      samples=args.samples, seed=args.seed)
    for r in records:
        report.add(r)
    return _emit(report, args.json)


def cmd_report(args) -> int:
    doc = load_report(getattr(args, "from"))
    validate_report_dict(doc)
    text = serialize_canonical(doc)
    if args.json:
        with open(args.json, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0 if doc["summary"]["fail"] == 0 else 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="tiltlab",
        description="exact tilting/torsion/derived-equivalence verification")
    sub = p.add_subparsers(dest="command", required=True)

    ct = sub.add_parser("check-tilting", help="tilting axioms plus the "
                        "generated-equals-perpendicular sweep")
    ct.add_argument("input")
    ct.add_argument("--bound", type=int, default=None,
                    help="coresolution search bound (extra dimension)")
    ct.add_argument("--seed", type=int, default=0)
    ct.add_argument("--json", default=None)
    ct.set_defaults(func=cmd_check_tilting)

    vb = sub.add_parser("verify-bb", help="module-level equivalence suite")
    vb.add_argument("input")
    vb.add_argument("--probes", default="all",
                    help="'all' or a comma-separated list of module names")
    vb.add_argument("--seed", type=int, default=0)
    vb.add_argument("--bound", type=int, default=None)
    vb.add_argument("--ore", type=int, default=100,
                    help="number of sampled left-fraction spans")
    vb.add_argument("--ses", type=int, default=200,
                    help="number of sampled short exact sequences")
    vb.add_argument("--ecap", type=int, default=12,
                    help="dimension cap for the kernel-class sweep")
    vb.add_argument("--json", default=None)
    vb.set_defaults(func=cmd_verify_bb)

    vd = sub.add_parser("verify-derived", help="bounded derived suite")
    vd.add_argument("input")
    vd.add_argument("--window", default="-2..2",
                    help="degree window, e.g. --window=-2..2")
    vd.add_argument("--samples", type=int, default=50)
    vd.add_argument("--seed", type=int, default=0)
    vd.add_argument("--json", default=None)
    vd.set_defaults(func=cmd_verify_derived)

    rp = sub.add_parser("report", help="re-emit and validate a saved report")
    rp.add_argument("--from", required=True, help="path of a saved JSON report")
    rp.add_argument("--json", default=None)
    rp.set_defaults(func=cmd_report)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except TextFormatError as ex:
        print(f"input error: {ex}", file=sys.stderr)
        return 2
    except FileNotFoundError as ex:
        print(f"error: {ex}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
