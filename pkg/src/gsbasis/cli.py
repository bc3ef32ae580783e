"""Command-line interface.

Exit codes: 0 success, 1 a negative mathematical answer (not closed, pattern
failures, census mismatch, closed-form discrepancy), 2 usage or input
errors, 3 completion stopped at a cap.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from dataclasses import dataclass
from importlib.resources import files
from pathlib import Path
from typing import Sequence

from gsbasis.completion import Caps, Status, complete, verify_closed
from gsbasis.coxeter import CoxeterMatrix, Preset, audit_closed_form, presentation_from_matrix
from gsbasis.enumerate import growth, stream_irreducible
from gsbasis.errors import InvalidInput, PreconditionError, ResourceLimit
from gsbasis.hypothesis import Verdict, audit_basis
from gsbasis.oracle import GroupModel, cayley_growth
from gsbasis.rewrite import RewriteSystem, Rule
from gsbasis.textio import (dump_basis, format_log, format_presentation, load_basis, looks_like_json,
                            parse_matrix, parse_presentation, read_text)
from gsbasis.words import Alphabet

EXIT_OK, EXIT_NEGATIVE, EXIT_USAGE, EXIT_CAPPED = 0, 1, 2, 3

FIXTURES = {"affine-a3": ("affine_a3_basis.txt", "affine-a:3")}


class UsageError(Exception):
    pass


@dataclass
class Source:
    alphabet: Alphabet
    rules: list[Rule]
    is_basis: bool
    matrix: CoxeterMatrix | None = None
    preset: Preset | None = None
    status: str | None = None


def _load(args: argparse.Namespace) -> Source:
    preset = Preset.parse(args.preset) if getattr(args, "preset", None) else None
    fixture = getattr(args, "fixture", None)
    path = getattr(args, "file", None)
    matrix_path = getattr(args, "matrix", None)
    if sum(x is not None for x in (fixture, path, matrix_path)) > 1:
        raise UsageError("give at most one of --file, --fixture and --matrix")
    src: Source | None = None
    if fixture is not None:
        if fixture not in FIXTURES:
            raise UsageError(f"unknown fixture {fixture!r}; known: {', '.join(sorted(FIXTURES))}")
        fname, fpreset = FIXTURES[fixture]
        text = (files("gsbasis") / "data" / fname).read_text(encoding="utf-8")
        pres = parse_presentation(text, source=fname)
        preset = preset or Preset.parse(fpreset)
        src = Source(pres.alphabet, pres.oriented_rules(), True)
    elif path is not None:
        text = read_text(path)
        if looks_like_json(text):
            bf = load_basis(text, source=str(path))
            src = Source(bf.system.alphabet, bf.system.canonical_rules(), True, bf.matrix, None, bf.status)
            if preset is None and bf.preset:
                preset = Preset.parse(bf.preset)
        else:
            pres = parse_presentation(text, source=str(path))
            src = Source(pres.alphabet, pres.oriented_rules(), False)
    elif matrix_path is not None:
        matrix = parse_matrix(read_text(matrix_path), source=str(matrix_path))
        names = tuple(f"s{i}" for i in range(matrix.n))
        order = getattr(args, "order", "asc") or "asc"
        alphabet = Alphabet.ascending(names) if order == "asc" else Alphabet.descending(names)
        pres = presentation_from_matrix(matrix, alphabet)
        src = Source(alphabet, list(pres.relations), False, matrix)
    if src is None:
        if preset is None:
            raise UsageError("no input: give --preset, --file, --fixture or --matrix")
        pres = preset.presentation()
        return Source(preset.alphabet, list(pres.relations), False, preset.matrix, preset)
    if preset is not None:
        if preset.alphabet.names != src.alphabet.names:
            raise UsageError(f"alphabet {' '.join(src.alphabet.names)} does not match preset {preset.name}")
        if src.matrix is not None and src.matrix != preset.matrix:
            raise UsageError(f"Coxeter matrix in the input does not match preset {preset.name}")
        src.preset = preset
        src.matrix = preset.matrix
    return src


def _caps(args: argparse.Namespace) -> Caps:
    return Caps(getattr(args, "max_len", None), getattr(args, "max_rules", None), getattr(args, "max_steps", None))


def _completed(src: Source, args: argparse.Namespace) -> tuple[RewriteSystem, Status | str]:
    if src.is_basis:
        sys_ = RewriteSystem.from_pairs(src.alphabet, [(r.lhs, r.rhs) for r in src.rules]).seal()
        return sys_, src.status or Status.CLOSED.value
    result = complete(src.rules, src.alphabet, _caps(args))
    return result.system, result.status


def _status_str(status: Status | str) -> str:
    return status.value if isinstance(status, Status) else status


def _emit(args: argparse.Namespace, payload: dict, text: str) -> None:
    if getattr(args, "json", False):
        print(json.dumps(payload, indent=2))
    else:
        sys.stdout.write(text)


# -- commands ------------------------------------------------------------------


def cmd_complete(args: argparse.Namespace) -> int:
    src = _load(args)
    if src.is_basis:
        raise UsageError("input is already a basis; use 'verify' to check it")
    result = complete(src.rules, src.alphabet, _caps(args))
    preset_name = src.preset.name if src.preset else None
    if args.out:
        Path(args.out).write_text(dump_basis(result.system, result.status, src.matrix, preset_name), encoding="utf-8")
    if args.log:
        Path(args.log).write_text(format_log(result.log, src.alphabet), encoding="utf-8")
    st = result.stats
    rules = result.system.canonical_rules()
    status = result.status.value + (f" (cap {result.cap})" if result.cap is not None else "")
    text = (f"status: {status}\nrules: {len(rules)}\n"
            f"compositions examined: {st.examined}, nontrivial: {st.nontrivial}, "
            f"rules added: {st.added}, removed: {st.removed}, discarded: {st.discarded}\n")
    if not args.out:
        text += format_presentation(src.alphabet, [(r.lhs, r.rhs) for r in rules])
    payload = {
        "status": result.status.value,
        "cap": result.cap,
        "rules": [[src.alphabet.format(r.lhs), src.alphabet.format(r.rhs)] for r in rules],
        "stats": vars(st),
    }
    _emit(args, payload, text)
    return EXIT_OK if result.status is Status.CLOSED else EXIT_CAPPED


def cmd_reduce(args: argparse.Namespace) -> int:
    src = _load(args)
    sys_, status = _completed(src, args)
    words = args.words or ([args.word] if args.word else [])
    if not words:
        raise UsageError("no word given")
    out = []
    for text in words:
        w = src.alphabet.parse(text)
        out.append(src.alphabet.format(sys_.normal_form(w)))
    _emit(args, {"normal_forms": out}, "".join(o + "\n" for o in out))
    return EXIT_OK if _status_str(status) == Status.CLOSED.value else EXIT_CAPPED


def cmd_verify(args: argparse.Namespace) -> int:
    src = _load(args)
    sys_ = RewriteSystem.from_pairs(src.alphabet, [(r.lhs, r.rhs) for r in src.rules]).seal()
    residues = verify_closed(sys_)
    A = src.alphabet
    if residues:
        lines = [f"not closed: {len(residues)} nontrivial compositions"]
        seen = set()
        for res in residues:
            r = res.residue
            key = (r.lhs, r.rhs)
            if key in seen:
                continue
            seen.add(key)
            lines.append(f"  {A.format(r.lhs)} = {A.format(r.rhs)}    [witness {A.format(res.ambiguity.witness)}]")
        text = "\n".join(lines) + "\n"
    else:
        text = "closed: 0 nontrivial compositions\n"
    payload = {
        "closed": not residues,
        "nontrivial": len(residues),
        "residues": [
            {"f": r.f_id, "g": r.g_id, "kind": r.ambiguity.kind.value, "witness": A.format(r.ambiguity.witness),
             "lhs": A.format(r.residue.lhs), "rhs": A.format(r.residue.rhs)}
            for r in residues
        ],
    }
    _emit(args, payload, text)
    return EXIT_OK if not residues else EXIT_NEGATIVE


def cmd_enumerate(args: argparse.Namespace) -> int:
    src = _load(args)
    sys_, status = _completed(src, args)
    L = args.max_len_enum
    if args.counts:
        g = growth(sys_, L)
        _emit(args, g.to_dict(), g.to_text())
    else:
        prefix = src.alphabet.parse(args.prefix) if args.prefix else ()
        words = [src.alphabet.format(w) for w in stream_irreducible(sys_, L, prefix)]
        _emit(args, {"words": words}, "".join(w + "\n" for w in words))
    return EXIT_OK if _status_str(status) == Status.CLOSED.value else EXIT_CAPPED


def cmd_hypothesis(args: argparse.Namespace) -> int:
    src = _load(args)
    if src.matrix is None:
        raise UsageError("the pattern audit needs a Coxeter matrix (--preset or --matrix)")
    sys_, status = _completed(src, args)
    reports = audit_basis(sys_, src.matrix, args.mode)
    A = src.alphabet
    lines = []
    records = []
    for rep in reports:
        rule = sys_[rep.rule_id]
        head = f"{A.format(rule.lhs)} = {A.format(rule.rhs)}"
        rec = {"lhs": A.format(rule.lhs), "rhs": A.format(rule.rhs), "verdict": rep.verdict.value}
        if rep.verdict is Verdict.MATCHED:
            rec["pattern"] = rep.instance.describe(A)
            lines.append(f"matched   {head}    {rec['pattern']}")
        elif rep.verdict is Verdict.INITIAL:
            lines.append(f"initial   {head}")
        else:
            rec["reason"] = rep.reason
            rec["relaxation"] = rep.relaxation
            extra = f"; matches when {rep.relaxation}: {rep.relaxed_instance.describe(A)}" if rep.relaxation else ""
            lines.append(f"NO MATCH  {head}    {rep.reason}{extra}")
        records.append(rec)
    fails = sum(1 for r in reports if r.verdict is Verdict.NO_MATCH)
    matched = sum(1 for r in reports if r.verdict is Verdict.MATCHED)
    initial = sum(1 for r in reports if r.verdict is Verdict.INITIAL)
    noun = "rule fails" if fails == 1 else "rules fail"
    lines.append(f"{fails} {noun} ({args.mode} mode); {matched} matched, {initial} initial relations")
    _emit(args, {"mode": args.mode, "fail": fails, "matched": matched, "initial": initial, "rules": records},
          "\n".join(lines) + "\n")
    if _status_str(status) != Status.CLOSED.value:
        return EXIT_CAPPED
    return EXIT_OK if fails == 0 else EXIT_NEGATIVE


def cmd_oracle_compare(args: argparse.Namespace) -> int:
    src = _load(args)
    if src.preset is None:
        raise UsageError("oracle-compare needs --preset (the group model comes from the preset)")
    sys_, status = _completed(src, args)
    if _status_str(status) != Status.CLOSED.value:
        print(f"basis is {_status_str(status)}; refusing to compare")
        return EXIT_CAPPED
    model = GroupModel.for_preset(src.preset)
    L = args.max_len_enum
    ours = growth(sys_, L)
    ref = cayley_growth(model, L)
    A = src.alphabet
    lines = [f"length\tirreducible\toracle"]
    lines += [f"{k}\t{a}\t{b}" for k, (a, b) in enumerate(zip(ours.counts, ref.counts))]
    diff = ours.first_difference(ref)
    ok = diff is None
    if model.finite:
        full = growth(sys_, 0).total
        expected = model.group_order()
        lines.append(f"total\t{full}\t{expected}")
        ok = ok and full == expected
    # word problem on seeded random pairs
    rng = random.Random(args.seed)
    mismatches = 0
    for _ in range(args.samples):
        u = tuple(rng.randrange(A.size) for _ in range(rng.randint(0, 10)))
        v = tuple(rng.randrange(A.size) for _ in range(rng.randint(0, 10)))
        same_nf = sys_.normal_form(u) == sys_.normal_form(v)
        same_el = model.element_of(u) == model.element_of(v)
        mismatches += same_nf != same_el
    ok = ok and mismatches == 0
    if diff is not None:
        lines.append(f"first differing length: {diff}")
    lines.append(f"word problem: {args.samples - mismatches}/{args.samples} pairs agree (seed {args.seed})")
    lines.append("census equal" if ok else "MISMATCH")
    payload = {"irreducible": list(ours.counts), "oracle": list(ref.counts), "first_difference": diff,
               "word_problem_mismatches": mismatches, "ok": ok}
    _emit(args, payload, "\n".join(lines) + "\n")
    return EXIT_OK if ok else EXIT_NEGATIVE


def cmd_audit_closed_form(args: argparse.Namespace) -> int:
    if not args.preset:
        raise UsageError("audit-closed-form needs --preset")
    preset = Preset.parse(args.preset)
    audit = audit_closed_form(preset, args.reading, _caps(args))
    A = preset.alphabet
    lines = [f"preset {preset.name}, reading {args.reading}",
             f"completed basis: {len(audit.completed)} rules; closed form: {len(audit.closed_form)} rules"]
    lines.append("family\tbasis\timplied\tfalse\tempty")
    for fam, c in audit.family_summary().items():
        lines.append(f"{fam}\t{c['basis']}\t{c['implied']}\t{c['false']}\t{c['empty']}")
    for v in audit.verdicts:
        if v.verdict == "false":
            lines.append(f"false instance {v.instance.family}{list(v.instance.params)}: "
                         f"{A.format(v.rule.lhs)} = {A.format(v.rule.rhs)}")
    for r in audit.missing:
        lines.append(f"missing: {A.format(r.lhs)} = {A.format(r.rhs)}")
    for r in audit.extra:
        lines.append(f"extra: {A.format(r.lhs)} = {A.format(r.rhs)}")
    for r in audit.missing_true_only:
        lines.append(f"missing even without false instances: {A.format(r.lhs)} = {A.format(r.rhs)}")
    lines.append("closed form equals completion" if audit.equal else
                 f"DISCREPANCY: {len(audit.missing)} missing, {len(audit.extra)} extra")
    payload = {
        "preset": preset.name,
        "reading": args.reading,
        "equal": audit.equal,
        "families": audit.family_summary(),
        "missing": [[A.format(r.lhs), A.format(r.rhs)] for r in audit.missing],
        "extra": [[A.format(r.lhs), A.format(r.rhs)] for r in audit.extra],
        "missing_true_only": [[A.format(r.lhs), A.format(r.rhs)] for r in audit.missing_true_only],
        "false_instances": [
            {"family": v.instance.family, "params": list(v.instance.params),
             "lhs": A.format(v.rule.lhs), "rhs": A.format(v.rule.rhs)}
            for v in audit.verdicts if v.verdict == "false"
        ],
    }
    _emit(args, payload, "\n".join(lines) + "\n")
    return EXIT_OK if audit.equal else EXIT_NEGATIVE


# -- parser ----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="gsbasis", description="Groebner-Shirshov bases of Coxeter groups.")
    sub = parser.add_subparsers(dest="command", required=True)

    source = argparse.ArgumentParser(add_help=False)
    source.add_argument("--preset", help="a:<l>, b:<l>, d:<l> or affine-a:<n>, optionally :asc or :desc")
    source.add_argument("--file", help="presentation text file or basis JSON file")
    source.add_argument("--fixture", help="bundled basis: " + ", ".join(sorted(FIXTURES)))
    source.add_argument("--matrix", help="Coxeter matrix file (square grid, 0 for infinity)")
    source.add_argument("--order", choices=("asc", "desc"), default="asc",
                        help="ranking for --matrix input (asc: last generator greatest)")
    source.add_argument("--json", action="store_true", help="machine-readable output")

    caps = argparse.ArgumentParser(add_help=False)
    caps.add_argument("--max-len", type=int, help="discard residues with a longer left side")
    caps.add_argument("--max-rules", type=int, default=20000, help="stop when the system has more rules")
    caps.add_argument("--max-steps", type=int, help="stop after this many compositions")

    # commands whose --max-len is a word length bound only expose the rule cap
    rule_cap = argparse.ArgumentParser(add_help=False)
    rule_cap.add_argument("--max-rules", type=int, default=20000, help="completion rule cap")

    p = sub.add_parser("complete", parents=[source, caps], help="run completion")
    p.add_argument("--out", help="write the canonical basis JSON here")
    p.add_argument("--log", help="write the derivation log (JSON lines) here")
    p.set_defaults(func=cmd_complete)

    p = sub.add_parser("reduce", parents=[source, caps], help="normal form of words")
    p.add_argument("--word", help="word to reduce, e.g. 's3 s0 s1 s0'")
    p.add_argument("words", nargs="*", help="more words (quote each one)")
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("verify", parents=[source], help="list nontrivial compositions of the given rules")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("enumerate", parents=[source, rule_cap], help="irreducible words or their census")
    p.add_argument("--max-len", "--length", dest="max_len_enum", type=int, default=6,
                   help="word length bound (default 6)")
    p.add_argument("--prefix", help="only words starting with this word")
    p.add_argument("--counts", action="store_true", help="print counts per length instead of words")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("hypothesis", parents=[source, caps], help="audit rules against the chain pattern")
    p.add_argument("--mode", choices=("strict", "relaxed"), default="strict")
    p.set_defaults(func=cmd_hypothesis)

    p = sub.add_parser("oracle-compare", parents=[source, rule_cap], help="compare the census with a group model")
    p.add_argument("--max-len", "--length", dest="max_len_enum", type=int, default=8,
                   help="word length bound (default 8)")
    p.add_argument("--samples", type=int, default=200, help="random word pairs for the word problem")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_oracle_compare)

    p = sub.add_parser("audit-closed-form", parents=[caps], help="compare closed-form families with completion")
    p.add_argument("--preset", required=True)
    p.add_argument("--reading", choices=("resolved", "printed"), default="resolved",
                   help="type D reading of the D6/D10 families")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_audit_closed_form)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except (UsageError, InvalidInput, PreconditionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ResourceLimit as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAPPED


if __name__ == "__main__":
    sys.exit(main())
