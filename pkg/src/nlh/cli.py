"""Command line interface wiring the engine into reproducible batch runs.

Exit codes: 0 for a passing verdict, 1 for mathematical failure, 2 for
usage or file errors.  All output is deterministic for identical inputs.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from pathlib import Path

from . import hnn, rewrite, words
from .algfile import load_algebra
from .errors import (AlgebraFileError, ExprSyntaxError, NlhError,
                     OrderingConflictError, PreconditionError,
                     SpecInvalidError, StepBudgetError)
from .exprs import parse_expr
from .freealg import format_poly, term_to_text
from .words import Alphabet, word_to_text

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_USAGE = 2


def _emit_json(payload) -> None:
    sys.stdout.write(json.dumps(payload, indent=2) + "\n")


def _emit(lines) -> None:
    for line in lines:
        sys.stdout.write(line + "\n")


def _validation_payload(reports):
    return {
        "verdict": "pass" if all(r.ok for r in reports) else "fail",
        "checks": [r.to_dict() for r in reports],
    }


def cmd_validate(args) -> int:
    spec, _ = load_algebra(args.file)
    reports = hnn.validate_all(spec)
    ok = all(r.ok for r in reports)
    if args.json:
        _emit_json(_validation_payload(reports))
    else:
        lines = []
        for r in reports:
            lines.append(f"{r.check}: {'pass' if r.ok else 'fail'}")
            for item in r.violations():
                detail = f" ({item.detail})" if item.detail else ""
                lines.append(f"  {item.context}{detail}")
        lines.append(f"verdict: {'pass' if ok else 'fail'}")
        _emit(lines)
    return EXIT_PASS if ok else EXIT_FAIL


def cmd_hnn_build(args) -> int:
    spec, options = load_algebra(args.file)
    include_nt = options.include_nt and not args.no_nt
    pres = hnn.build_relations(spec, include_nt=include_nt)
    if args.json:
        _emit_json(pres.to_dict())
    else:
        lines = [f"alphabet: {', '.join(pres.alphabet.letters)}"]
        for name, poly in pres.relations:
            lines.append(f"{name} = {format_poly(poly)}")
        _emit(lines)
    return EXIT_PASS


def cmd_gsb_check(args) -> int:
    spec, options = load_algebra(args.file)
    max_deg = args.max_deg or options.max_deg
    pres = hnn.build_relations(spec, include_nt=options.include_nt)
    report = hnn.hnn_gsb_check(pres, max_deg)
    if args.json:
        _emit_json(report.to_dict())
    else:
        lines = [f"relations: {len(pres.relations)}",
                 f"compositions checked (degree <= {max_deg}): {len(report.records)}"]
        for rec in report.records:
            outcome = "trivial" if rec.trivial else (
                f"residual {format_poly(rec.residual)}" if rec.status == "ok"
                else rec.status)
            lines.append(f"  {rec.kind} {rec.left} & {rec.right} @ "
                         f"{word_to_text(rec.word)}: {outcome}")
        lines.append(f"verdict: {'pass' if report.verdict else 'fail'}")
        _emit(lines)
    return EXIT_PASS if report.verdict else EXIT_FAIL


def cmd_nf(args) -> int:
    spec, options = load_algebra(args.file)
    pres = hnn.build_relations(spec, include_nt=options.include_nt)
    expr = parse_expr(args.expr, pres.alphabet)
    advisory = False
    if not args.assume_gsb:
        advisory = not hnn.hnn_gsb_check(pres, options.max_deg).verdict
    nf = hnn.normal_form(expr, pres, strategy=args.strategy)
    if args.json:
        _emit_json({
            "input": args.expr,
            "normal_form": format_poly(nf),
            "advisory": advisory,
        })
    else:
        lines = [format_poly(nf)]
        if advisory:
            lines.append("note: relation set failed its composition check; "
                         "the normal form depends on the reduction order")
        _emit(lines)
    return EXIT_PASS


def cmd_irr(args) -> int:
    spec, options = load_algebra(args.file)
    max_deg = args.max_deg or options.max_deg
    include_nt = options.include_nt and not args.strict_relations
    pres = hnn.build_relations(spec, include_nt=include_nt)
    relations = pres.strict_relations() if args.strict_relations else pres.relations
    basis = rewrite.irr_basis(relations, pres.alphabet, max_deg, allow_ops=True)
    if args.json:
        _emit_json({
            "max_deg": max_deg,
            "strict_relations": bool(args.strict_relations),
            "count": len(basis),
            "terms": [term_to_text(t) for t in basis],
            "words": [word_to_text(words.psi(t)) for t in basis],
        })
    else:
        _emit([term_to_text(t) for t in basis] + [f"count: {len(basis)}"])
    return EXIT_PASS


def cmd_embed(args) -> int:
    spec, options = load_algebra(args.file)
    pres = hnn.build_relations(spec, include_nt=options.include_nt)
    report = hnn.embedding_check(pres)
    if args.json:
        _emit_json(report.to_dict())
    else:
        lines = [f"{gen} -> {nf}" for gen, nf, _ in report.entries]
        lines.append(f"verdict: {'pass' if report.verdict else 'fail'}")
        _emit(lines)
    return EXIT_PASS if report.verdict else EXIT_FAIL


def cmd_free_sub(args) -> int:
    spec, options = load_algebra(args.file)
    pres = hnn.build_relations(spec, include_nt=options.include_nt)
    report = hnn.free_subalgebra_check(pres, args.gen, args.max_deg or options.max_deg)
    if args.json:
        _emit_json(report.to_dict())
    else:
        lines = [f"generator: {args.gen}",
                 f"words checked (degree <= {report.max_deg}): {report.checked}"]
        for word in report.reducible:
            lines.append(f"  reducible: {word}")
        lines.append(f"verdict: {'pass' if report.verdict else 'fail'}")
        _emit(lines)
    return EXIT_PASS if report.verdict else EXIT_FAIL


def cmd_ls_enumerate(args) -> int:
    names = tuple(s.strip() for s in args.alphabet.split(",") if s.strip())
    if not names:
        raise PreconditionError("--alphabet needs a comma-separated symbol list")
    alphabet = Alphabet(names)
    found = words.enumerate_ls_nwords(alphabet, args.max_deg, allow_ops=args.ops)
    if args.json:
        _emit_json({
            "alphabet": list(names),
            "max_deg": args.max_deg,
            "ops": bool(args.ops),
            "count": len(found),
            "words": [word_to_text(u) for u in found],
        })
    else:
        _emit([word_to_text(u) for u in found] + [f"count: {len(found)}"])
    return EXIT_PASS


def cmd_report(args) -> int:
    from . import figures

    spec, options = load_algebra(args.file)
    max_deg = args.max_deg or options.max_deg
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)

    reports = hnn.validate_all(spec)
    valid = all(r.ok for r in reports)
    payload = {"validate": _validation_payload(reports)}
    gsb_ok = False
    if valid:
        pres = hnn.build_relations(spec, include_nt=options.include_nt)
        gsb = hnn.hnn_gsb_check(pres, max_deg)
        gsb_ok = gsb.verdict
        basis = rewrite.irr_basis(pres.relations, pres.alphabet, max_deg,
                                  allow_ops=True)
        counts: dict[int, int] = {d: 0 for d in range(1, max_deg + 1)}
        for t in basis:
            counts[words.deg(words.psi(t))] += 1
        payload["presentation"] = pres.to_dict()
        payload["gsb"] = gsb.to_dict()
        payload["irr_counts"] = {str(d): counts[d] for d in sorted(counts)}

        with open(out_dir / "irr_counts.csv", "w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh)
            writer.writerow(["degree", "count"])
            for d in sorted(counts):
                writer.writerow([d, counts[d]])
        with open(out_dir / "compositions.csv", "w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh)
            writer.writerow(["kind", "left", "right", "word", "trivial", "steps"])
            for rec in gsb.records:
                writer.writerow([rec.kind, rec.left, rec.right,
                                 word_to_text(rec.word),
                                 "yes" if rec.trivial else "no", rec.steps])
        figures.render_irr_counts(counts, out_dir / "irr_counts.png")
        figures.render_composition_summary(gsb.records, out_dir / "compositions.png")

    with open(out_dir / "report.json", "w", encoding="utf-8") as fh:
        fh.write(json.dumps(payload, indent=2) + "\n")

    verdict = valid and gsb_ok
    _emit([
        f"validators: {'pass' if valid else 'fail'}",
        f"composition check: {'pass' if gsb_ok else 'fail' if valid else 'skipped'}",
        f"artifacts written to {out_dir}",
        f"verdict: {'pass' if verdict else 'fail'}",
    ])
    return EXIT_PASS if verdict else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nlh",
        description="Lyndon-Shirshov engine for operated Lie algebras: "
                    "validation, extension relations, composition checks, "
                    "normal forms, and basis enumeration.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, with_file=True):
        if with_file:
            p.add_argument("file", help="algebra description JSON")
        p.add_argument("--json", action="store_true", help="structured output")

    p = sub.add_parser("validate", help="check all structure-constant identities")
    add_common(p)
    p.set_defaults(func=cmd_validate)

    p_hnn = sub.add_parser("hnn", help="extension construction")
    hnn_sub = p_hnn.add_subparsers(dest="hnn_command", required=True)
    p = hnn_sub.add_parser("build", help="emit the extension relation families")
    add_common(p)
    p.add_argument("--no-nt", action="store_true",
                   help="omit the operator value on the extension letter")
    p.set_defaults(func=cmd_hnn_build)

    p_gsb = sub.add_parser("gsb", help="composition checking")
    gsb_sub = p_gsb.add_subparsers(dest="gsb_command", required=True)
    p = gsb_sub.add_parser("check", help="check all compositions up to a degree")
    add_common(p)
    p.add_argument("--max-deg", type=int, default=None,
                   help="ambiguity word degree bound (default from file, else 6)")
    p.set_defaults(func=cmd_gsb_check)

    p = sub.add_parser("nf", help="normal form of an expression")
    add_common(p)
    p.add_argument("--expr", required=True, help="expression, e.g. '[x,[x,y]]'")
    p.add_argument("--strategy", choices=rewrite.STRATEGIES,
                   default="greatest-first")
    p.add_argument("--assume-gsb", action="store_true",
                   help="skip the composition check preceding reduction")
    p.set_defaults(func=cmd_nf)

    p = sub.add_parser("irr", help="irreducible basis words up to a degree")
    add_common(p)
    p.add_argument("--max-deg", type=int, default=None)
    p.add_argument("--strict-relations", action="store_true",
                   help="use the five relation families only")
    p.set_defaults(func=cmd_irr)

    p = sub.add_parser("embed", help="base letters must be their own normal forms")
    add_common(p)
    p.set_defaults(func=cmd_embed)

    p = sub.add_parser("free-sub", help="freeness of the subalgebra on t, a "
                                        "generator, and its operator wrap")
    add_common(p)
    p.add_argument("--gen", required=True, help="generator outside the subalgebra")
    p.add_argument("--max-deg", type=int, default=None)
    p.set_defaults(func=cmd_free_sub)

    p_ls = sub.add_parser("ls", help="word enumeration")
    ls_sub = p_ls.add_subparsers(dest="ls_command", required=True)
    p = ls_sub.add_parser("enumerate", help="Lyndon-Shirshov words up to a degree")
    p.add_argument("--alphabet", required=True,
                   help="comma-separated symbols, greatest first")
    p.add_argument("--max-deg", type=int, default=6)
    p.add_argument("--ops", action="store_true", help="include operator words")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_ls_enumerate)

    p = sub.add_parser("report", help="run the full pipeline and write "
                                      "delimited output plus figures")
    p.add_argument("file", help="algebra description JSON")
    p.add_argument("--out-dir", default="nlh-report")
    p.add_argument("--max-deg", type=int, default=None)
    p.set_defaults(func=cmd_report)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (AlgebraFileError, ExprSyntaxError, PreconditionError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE
    except SpecInvalidError as exc:
        sys.stderr.write(f"invalid algebra: {exc}\n")
        for report in exc.reports:
            for item in report.violations():
                sys.stderr.write(f"  {report.check}: {item.context} {item.detail}\n")
        return EXIT_FAIL
    except (StepBudgetError, OrderingConflictError) as exc:
        sys.stderr.write(f"engine failure: {exc}\n")
        return EXIT_FAIL
    except NlhError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
