"""Command-line front end: ``satnorm <command> --input FILE ...``.

Every command writes one JSON report (stdout or ``--out``).  Exit status is
0 when nothing failed, 2 when a theorem-backed check failed, 1 on usage or
input errors.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

from . import diagram as dg
from .algebra import build_tensor_square
from .corpus import CorpusDocument, corpus_files, load_corpus
from .errors import SatnormError
from .groebner import collect_stats
from .ideals import kernel_of_morphism, subalgebra_membership
from .order import order_from_name
from .saturation import DEFAULT_DEPENDENCE_BOUND, lip_member, wn_member

EXIT_OK, EXIT_USAGE, EXIT_VIOLATION = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="satnorm", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def command(name, help, *flags):
        p = sub.add_parser(name, help=help)
        p.add_argument("--input", required=True, help="corpus JSON file (suite: file or directory)")
        p.add_argument("--out", help="write the report here instead of stdout")
        p.add_argument("--no-timing", action="store_true", help="omit the timing block")
        for flag in flags:
            flag(p)
        return p

    def seq(p):
        p.add_argument("--seq", help="sequence name (default: the only one)")

    def diagram(p):
        p.add_argument("--diagram", help="diagram name (default: all)")

    def elements(p):
        p.add_argument("--element", action="append", help="polynomial; repeatable")
        p.add_argument("--testset", help="named test set from the document")

    def bound(p):
        p.add_argument("--bound", type=int, default=DEFAULT_DEPENDENCE_BOUND)

    def order(p):
        p.add_argument("--order", choices=["lex", "grevlex"], default="grevlex")

    def ideal(p):
        p.add_argument("--ideal", help="ideal name")

    def mode(p):
        p.add_argument("--mode", choices=["wn", "lip"], default="wn")

    def morphism(p):
        p.add_argument("--morphism", help="morphism name (default: all)")
        p.add_argument("--element", help="polynomial in the source to map")
        p.add_argument("--bound", type=int, default=DEFAULT_DEPENDENCE_BOUND)

    def wn_gen(p):
        p.add_argument("--wn-gen", action="append", default=[], help="witness in B; repeatable")

    command("gb", "reduced Groebner basis of an ideal (or of ker phi)", ideal, seq, order,
            lambda p: p.add_argument("--element", help="also reduce this polynomial"))
    command("wn-member", "weak-normalization membership", seq, elements)
    command("lip-member", "Lipschitz-saturation membership (three-valued)", seq, elements, bound)
    command("classify", "Maranesi / Lipman classification of diagrams", diagram, bound)
    command("morph", "hypothesis flags of morphisms", morphism)
    command("contraction", "contraction check over a test set", diagram, mode, elements, bound)
    command("quotient-check", "membership transfer to B/IB", seq, ideal, elements)
    command("idempotency", "membership relative to A enlarged by witnesses", seq, wn_gen, elements)
    command("suite", "run every check on every document", bound)
    return parser


# -- helpers -------------------------------------------------------------------------


def _pick(table: dict, name, kind: str):
    if name is None:
        if len(table) == 1:
            return next(iter(table.items()))
        raise UsageError(f"--{kind} is required ({len(table)} {kind}s in the document)")
    if name not in table:
        raise UsageError(f"unknown {kind} {name!r}; available: {', '.join(table) or 'none'}")
    return name, table[name]


def _parse_elements(doc: CorpusDocument, algebra, args) -> list:
    if args.element:
        try:
            return [algebra(e) for e in args.element]
        except (SatnormError, ValueError, KeyError) as exc:
            raise UsageError(f"cannot parse element in {algebra.ring}: {exc}") from None
    if args.testset:
        if args.testset not in doc.testsets:
            raise UsageError(f"unknown testset {args.testset!r}")
        elems = doc.parse_testset(args.testset, algebra)
        if elems is None:
            raise UsageError(f"testset {args.testset!r} does not parse in {algebra.ring}")
        return elems
    return _all_elements(doc, algebra)


def _all_elements(doc: CorpusDocument, algebra) -> list:
    out, seen = [], set()
    for elems in doc.testsets_for(algebra).values():
        for x in elems:
            if x not in seen:
                seen.add(x)
                out.append(x)
    return out


def _wn_row(square, x):
    return {"element": str(x), **wn_member(square, x).to_json()}


def _lip_row(square, x, bound):
    return {"element": str(x), "verdict": lip_member(square, x, bound).to_json()}


# -- commands -----------------------------------------------------------------------


def cmd_gb(doc, args):
    order = order_from_name(args.order)
    if args.ideal:
        name, I = _pick(doc.ideals, args.ideal, "ideal")
        targets = [(name, I)]
    elif args.seq or (doc.sequences and not doc.ideals):
        name, s = _pick(doc.sequences, args.seq, "seq")
        targets = [(f"ker_phi({name})", build_tensor_square(s).phi_kernel)]
    elif doc.ideals:
        targets = list(doc.ideals.items())
    else:
        raise UsageError("nothing to compute: give --ideal or --seq")
    out = []
    for name, I in targets:
        gb = I.gb(order)
        entry = {
            "ideal": name,
            "ring": str(I.ring),
            "order": args.order,
            "generators": [str(g) for g in gb],
            "is_unit": gb.is_unit(),
        }
        if args.element:
            try:
                f = I.ring.parse(args.element)
            except (SatnormError, ValueError, KeyError) as exc:
                raise UsageError(str(exc)) from None
            entry["normal_form"] = str(gb.reduce(f))
        out.append(entry)
    return out, False


def cmd_wn(doc, args):
    name, s = _pick(doc.sequences, args.seq, "seq")
    square = build_tensor_square(s)
    rows = [_wn_row(square, x) for x in _parse_elements(doc, s.top, args)]
    return {"sequence": name, "rows": rows}, False


def cmd_lip(doc, args):
    if args.bound < 1:
        raise UsageError("--bound must be at least 1")
    name, s = _pick(doc.sequences, args.seq, "seq")
    square = build_tensor_square(s)
    rows = [_lip_row(square, x, args.bound) for x in _parse_elements(doc, s.top, args)]
    return {"sequence": name, "bound": args.bound, "rows": rows}, False


def _diagrams(doc, name):
    if name is None:
        if not doc.diagrams:
            raise UsageError("the document has no diagrams")
        return list(doc.diagrams.items())
    return [_pick(doc.diagrams, name, "diagram")]


def _classification_check(c) -> list:
    problems = []
    if c.strong_lipman and not c.lipman.is_yes:
        problems.append("strong Lipman without Lipman")
    if c.lipman.is_yes and not c.maranesi:
        problems.append("Lipman without Maranesi")
    return problems


def cmd_classify(doc, args):
    out, bad = {}, False
    for name, sq in _diagrams(doc, args.diagram):
        c = dg.classify(sq, args.bound)
        problems = _classification_check(c)
        bad |= bool(problems)
        out[name] = {**c.to_json(), "problems": problems}
    return out, bad


def _morph_entry(psi, bound):
    flags = dg.morphism_flags(psi, bound)
    entry = {"from": psi.source.name, "to": psi.target.name, "images": psi.image_map()}
    entry.update(flags.to_json())
    if flags.unramified:
        entry["unramified_witness"] = dg.unramified_witness(psi).to_json()
    entry["kernel"] = [str(g) for g in kernel_of_morphism(psi).gens]
    return entry


def cmd_morph(doc, args):
    if args.morphism is None:
        items = list(doc.morphisms.items())
        if args.element:
            raise UsageError("--element needs --morphism")
    else:
        items = [_pick(doc.morphisms, args.morphism, "morphism")]
    out = {}
    for name, psi in items:
        entry = _morph_entry(psi, args.bound)
        if args.element:
            try:
                x = psi.source(args.element)
            except (SatnormError, ValueError, KeyError) as exc:
                raise UsageError(str(exc)) from None
            entry["image"] = {"element": str(x), "value": str(psi(x))}
        out[name] = entry
    return out, False


def cmd_contraction(doc, args):
    out, bad = {}, False
    for name, sq in _diagrams(doc, args.diagram):
        elems = _parse_elements(doc, sq.top.top, args)
        report = dg.contraction_check(sq, args.mode, elems, args.bound)
        bad |= report.build_breaking
        out[name] = report.to_json()
    return out, bad


def cmd_quotient(doc, args):
    name, s = _pick(doc.sequences, args.seq, "seq")
    iname, I = _pick(doc.ideals, args.ideal, "ideal")
    if I.ring != s.mid.ring:
        raise UsageError(f"ideal {iname} does not live in {s.mid.name}")
    report = dg.quotient_check(s, I, _parse_elements(doc, s.top, args))
    return {"sequence": name, "ideal_name": iname, **report.to_json()}, report.build_breaking


def cmd_idempotency(doc, args):
    name, s = _pick(doc.sequences, args.seq, "seq")
    try:
        gens = [s.top(w) for w in args.wn_gen]
    except (SatnormError, ValueError, KeyError) as exc:
        raise UsageError(str(exc)) from None
    report = dg.idempotency_check(s, gens, _parse_elements(doc, s.top, args))
    return {"sequence": name, **report.to_json()}, report.build_breaking


# -- suite ------------------------------------------------------------------------------


def _witness_generators(s, members):
    """Members not already generated by g(A) and the witnesses chosen so far."""
    chosen = []
    for x in members:
        gens = list(s.g.images) + chosen
        if subalgebra_membership(x, gens, s.top.relations) is None:
            chosen.append(x)
    return chosen


def suite_document(doc: CorpusDocument, bound: int, summary: list):
    out = {"sequences": {}, "diagrams": {}, "quotients": {}, "idempotency": {}}
    bad = False

    def note(check, subject, ok, detail=""):
        summary.append((doc.name, check, subject, "ok" if ok else "FAIL", detail))

    for name, s in doc.sequences.items():
        square = build_tensor_square(s)
        elems = _all_elements(doc, s.top)
        images = [s.top.reduce(im) for im in s.g.images]
        rows, chain = [], []
        for x in elems:
            wn = wn_member(square, x)
            lip = lip_member(square, x, bound)
            rows.append({"element": str(x), "wn": wn.to_json(), "lip": lip.to_json()})
            if lip.is_yes and not wn:
                chain.append(str(x))
        for x in images:
            wn = wn_member(square, x)
            lip = lip_member(square, x, bound)
            if not (wn and lip.is_yes):
                chain.append(f"g-image {x}")
        members = [x for x, r in zip(elems, rows) if r["wn"]["member"]]
        out["sequences"][name] = {"rows": rows, "containment_violations": chain}
        note("membership", name, not chain, f"{len(members)}/{len(elems)} wn members")
        bad |= bool(chain)

        wn_gens = _witness_generators(s, members)
        rep = dg.idempotency_check(s, wn_gens, elems)
        out["idempotency"][name] = rep.to_json()
        note("idempotency", name, not rep.build_breaking, f"{len(wn_gens)} witnesses")
        bad |= rep.build_breaking

        for iname, I in doc.ideals.items():
            if I.ring != s.mid.ring or set(I.relations) != set(s.mid.relations):
                continue
            rep = dg.quotient_check(s, I, elems)
            out["quotients"][f"{name}/{iname}"] = rep.to_json()
            note("quotient", f"{name}/{iname}", not rep.build_breaking)
            bad |= rep.build_breaking

    for name, sq in doc.diagrams.items():
        c = dg.classify(sq, bound)
        problems = _classification_check(c)
        elems = _all_elements(doc, sq.top.top)
        entry = {"classification": {**c.to_json(), "problems": problems}}
        note("classify", name, not problems,
             f"maranesi={c.maranesi} strong={c.strong_lipman} lipman={c.lipman.answer.value}")
        bad |= bool(problems)
        for mode in dg.Mode:
            rep = dg.contraction_check(sq, mode, elems, bound, classification=c)
            entry[f"contraction_{mode.value}"] = rep.to_json()
            detail = ",".join(rep.theorems) or "no theorem"
            note(f"contraction-{mode.value}", name, not rep.build_breaking, detail)
            bad |= rep.build_breaking
        out["diagrams"][name] = entry
    return out, bad


def run_suite(path, bound: int):
    summary = []
    results, inputs, bad = {}, [], False
    for f in corpus_files(path):
        doc = load_corpus(f)
        inputs.append({"name": doc.name, "sha256": doc.sha256})
        res, b = suite_document(doc, bound, summary)
        results[doc.name] = res
        bad |= b
    return inputs, results, bad, summary


def format_summary(summary) -> str:
    header = ("document", "check", "subject", "status", "detail")
    rows = [header] + [tuple(map(str, r)) for r in summary]
    widths = [max(len(r[i]) for r in rows) for i in range(4)]
    lines = []
    for r in rows:
        cells = [r[i].ljust(widths[i]) for i in range(4)] + [r[4]]
        lines.append("  ".join(cells).rstrip())
    fails = sum(1 for r in summary if r[3] != "ok")
    lines.append(f"{len(summary)} checks, {fails} failed")
    return "\n".join(lines)


COMMANDS = {
    "gb": cmd_gb,
    "wn-member": cmd_wn,
    "lip-member": cmd_lip,
    "classify": cmd_classify,
    "morph": cmd_morph,
    "contraction": cmd_contraction,
    "quotient-check": cmd_quotient,
    "idempotency": cmd_idempotency,
}


def _parameters(args) -> dict:
    skip = {"command", "input", "out", "no_timing"}
    return {k: v for k, v in sorted(vars(args).items()) if k not in skip and v not in (None, [])}


def run(args) -> tuple[dict, int]:
    """Execute parsed arguments; returns ``(report, exit_code)``."""
    start = time.perf_counter()
    summary = None
    with collect_stats() as stats:
        if args.command == "suite":
            inputs, results, bad, summary = run_suite(args.input, args.bound)
        else:
            doc = load_corpus(args.input)
            inputs = [{"name": doc.name, "sha256": doc.sha256}]
            results, bad = COMMANDS[args.command](doc, args)
    report = {
        "command": args.command,
        "inputs": inputs,
        "parameters": _parameters(args),
        "status": "violation" if bad else "ok",
        "results": results,
        "gb_stats": stats.as_dict(),
    }
    if not args.no_timing:
        report["timing"] = {"wall_seconds": round(time.perf_counter() - start, 6)}
    if summary is not None:
        print(format_summary(summary), file=sys.stderr)
    return report, EXIT_VIOLATION if bad else EXIT_OK


def dump_report(report: dict) -> str:
    return json.dumps(report, indent=2, ensure_ascii=False) + "\n"


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if not Path(args.input).exists():
        print(f"satnorm: error: no such input {args.input}", file=sys.stderr)
        return EXIT_USAGE
    try:
        report, code = run(args)
    except UsageError as exc:
        print(f"satnorm: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SatnormError as exc:
        print(f"satnorm: error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    text = dump_report(report)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
