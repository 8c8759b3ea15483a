"""Command line interface.

    g2mcg verify <relator.mcg>     check words map to 1 (and print invariants)
    g2mcg replay <script.mcg>      replay derivation scripts step by step
    g2mcg decompose <n> <s>        enumerate fiber-sum splits of a signature
    g2mcg registry-check           validate the curve registry

Exit codes: 0 success, 1 verification failure, 2 parse or usage error.
"""

from __future__ import annotations

import argparse
import sys
from typing import Optional

from . import pi1
from . import homology as hom
from .decompose import admissible_splits
from .dsl import ParseError, parse_document, parse_word
from .fixtures import load_corpus
from .invariants import (
    FiberSignature,
    SignatureNotIntegral,
    fiber_signature,
    invariant_records,
    invariants,
)
from .moves import replay
from .registry import Registry, UnknownCurve, standard_registry
from .words import PositiveRelator, word_str


def _load_registry(path: Optional[str]) -> Registry:
    if path is None:
        return standard_registry()
    with open(path, encoding="utf-8") as fh:
        return Registry.parse(fh.read())


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def cmd_verify(args: argparse.Namespace) -> int:
    reg = _load_registry(args.registry)
    with open(args.file, encoding="utf-8") as fh:
        text = fh.read()
    if "relator" in text or "script" in text:
        doc = parse_document(text, reg)
        relators = dict(doc.relators)
    else:
        relators = {"input": PositiveRelator(parse_word(text, reg))}
    if not relators:
        print("no relators found", file=sys.stderr)
        return 2

    lines = []
    status = 0
    for name, rel in relators.items():
        identity = reg.image(rel.word) == hom.IDENTITY
        ab = reg.ab_class(rel)
        sig = fiber_signature(reg, rel)
        ok = identity and ab == 0
        if not ok:
            status = 1
        if args.format == "records":
            rec = f"relator={name} identity={identity} ab={ab} n={sig.n} s={sig.s}"
            try:
                inv = invariants(sig)
                rec += " " + invariant_records(sig, inv)
            except SignatureNotIntegral:
                rec += " invariants=non-integral"
            lines.append(rec)
        else:
            lines.append(f"{name}: image {'=' if identity else '!='} identity, "
                         f"ab class {ab}, (n,s) = ({sig.n},{sig.s})")
            try:
                inv = invariants(sig)
                lines.append(f"  e={inv.e} sigma={inv.sigma} c1^2={inv.c1sq} chi_h={inv.chi_h}")
            except SignatureNotIntegral as exc:
                lines.append(f"  invariants undefined: {exc}")
        if args.pi1:
            try:
                good = all(
                    pi1.conjugate_elements(pi1.apply_word(reg, rel.word, g), g)
                    for g in pi1.GENS
                )
                lines.append(f"  pi1: acts by conjugation on generators: {good}")
                if not good:
                    status = 1
            except pi1.MissingAutomorphism as exc:
                lines.append(f"  pi1: skipped (no action table for curve {exc})")
    _emit("\n".join(lines), args.out)
    return status


def cmd_replay(args: argparse.Namespace) -> int:
    reg = _load_registry(args.registry)
    if args.builtin:
        corpus = load_corpus(reg)
        if args.file not in corpus.scripts:
            print(f"no embedded script named {args.file!r}; "
                  f"available: {', '.join(sorted(corpus.scripts))}", file=sys.stderr)
            return 2
        scripts = {args.file: corpus.scripts[args.file]}
    else:
        with open(args.file, encoding="utf-8") as fh:
            doc = parse_document(fh.read(), reg)
        scripts = doc.scripts
    if not scripts:
        print("no scripts found", file=sys.stderr)
        return 2

    status = 0
    chunks = []
    for name, script in scripts.items():
        report = replay(reg, script)
        if args.pi1:
            chunks.append(_pi1_replay_note(reg, script, args.bound))
        chunks.append(report.render() if args.format == "text" else _report_records(report))
        if not report.ok:
            status = 1
    _emit("\n".join(chunks), args.out)
    return status


def _report_records(report) -> str:
    lines = [f"script={report.script} ok={report.ok}"]
    for s in report.steps:
        sig = f" n={s.signature[0]} s={s.signature[1]}" if s.signature else ""
        lines.append(f"step={s.index} ok={s.ok} move={s.text!r}{sig}")
    return "\n".join(lines)


def _pi1_replay_note(reg: Registry, script, bound: int) -> str:
    try:
        verdict = pi1.equal_up_to_inner(reg, script.start, script.start, bound)
        return f"# pi1 oracle enabled (bound {bound}); start action computed: {verdict.status}"
    except pi1.MissingAutomorphism as exc:
        return f"# pi1 oracle skipped: no action table for curve {exc}"


def cmd_decompose(args: argparse.Namespace) -> int:
    if args.n < 0 or args.s < 0:
        print("fiber counts must be nonnegative", file=sys.stderr)
        return 2
    report = admissible_splits(FiberSignature(args.n, args.s))
    _emit(report.render() if args.format == "text" else report.records(), args.out)
    return 0


def cmd_registry_check(args: argparse.Namespace) -> int:
    reg = _load_registry(args.registry)
    report = reg.validate()
    _emit(report.render(), args.out)
    return 0 if report.ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="g2mcg", description=__doc__,
                                     formatter_class=argparse.RawDescriptionHelpFormatter)
    parser.add_argument("--registry", help="registry file (default: built-in standard registry)")
    parser.add_argument("--format", choices=("text", "records"), default="text")
    parser.add_argument("--pi1", action="store_true", help="enable the surface-group oracle")
    parser.add_argument("--bound", type=int, default=12, help="conjugator search bound")
    parser.add_argument("--out", help="write output to this path instead of stdout")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="check relators map to the identity")
    p.add_argument("file")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("replay", help="replay derivation scripts")
    p.add_argument("file")
    p.add_argument("--builtin", action="store_true",
                   help="treat the argument as an embedded corpus script name")
    p.set_defaults(func=cmd_replay)

    p = sub.add_parser("decompose", help="enumerate fiber-sum splits")
    p.add_argument("n", type=int)
    p.add_argument("s", type=int)
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("registry-check", help="validate the curve registry")
    p.set_defaults(func=cmd_registry_check)
    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, UnknownCurve) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
