"""Command line: ``lg compute | verify | golden | links``.

Exit status is 0 on success, 1 when a verification or golden comparison
fails, and 2 on bad input.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import __version__
from .braid import BraidError, components, link_lookup, load_links, parse
from .invariant import compute, render_machine, render_paper_flagged
from .verify import CHECKS, all_passed, golden_entries, run_checks, run_golden

MS = (1, 2, 3, 4)


class InputError(Exception):
    pass


def _m_arg(text: str) -> int:
    try:
        m = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"--m expects an integer, got {text!r}") from None
    if m not in MS:
        raise argparse.ArgumentTypeError(f"no state model for m={m}; choose 1..4")
    return m


def _checks_arg(text: str) -> tuple:
    names = tuple(n.strip() for n in text.split(",") if n.strip())
    bad = [n for n in names if n not in CHECKS]
    if bad or not names:
        raise argparse.ArgumentTypeError(
            f"unknown check(s) {', '.join(bad) or '(none given)'}; choose from {','.join(CHECKS)}")
    return names


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="lg", description="Links-Gould invariants LG^m, m = 1..4.")
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    c = sub.add_parser("compute", help="evaluate LG^m of a braid closure")
    c.add_argument("--m", type=_m_arg, required=True)
    src = c.add_mutually_exclusive_group(required=True)
    src.add_argument("--braid", help='signed generator indices, e.g. "1 -2 1 -2"')
    src.add_argument("--link", help="name from the link table, e.g. 4_1")
    c.add_argument("--strands", type=int, help="strand count (default 1 + max |letter|)")
    c.add_argument("--open-strand", type=int, help="strand left open (default: rightmost)")
    c.add_argument("--format", choices=("paper", "json"), default="paper")
    c.add_argument("--table", help="link table JSON file")

    v = sub.add_parser("verify", help="check the state model axioms")
    v.add_argument("--m", type=_m_arg, action="append",
                   help="model to check; repeatable (default: all)")
    v.add_argument("--checks", type=_checks_arg, default=CHECKS,
                   help=f"comma-separated subset of {','.join(CHECKS)}")

    g = sub.add_parser("golden", help="compare against the stored polynomial values")
    g.add_argument("--m", type=_m_arg, action="append", help="repeatable (default: all)")
    g.add_argument("--link", action="append", help="restrict to these links; repeatable")
    g.add_argument("--table", help="link table JSON file")
    g.add_argument("--golden", help="golden corpus JSON file")

    ls = sub.add_parser("links", help="list the link table")
    ls.add_argument("--table", help="link table JSON file")
    ls.add_argument("--format", choices=("paper", "json"), default="paper")
    return ap


def _compute(args) -> int:
    if args.strands is not None and args.strands < 1:
        raise InputError("--strands must be positive")
    if args.link is not None:
        entry = link_lookup(args.link, args.table)
        word = entry.word
        if args.strands is not None and args.strands != word.strands:
            word = parse(" ".join(map(str, word.letters)), args.strands)
        name = entry.name
    else:
        if not args.braid.replace(",", " ").split() and args.strands is None:
            raise InputError("an empty (identity) braid needs --strands")
        word = parse(args.braid, args.strands)
        name = None
    if args.open_strand is not None and not 1 <= args.open_strand <= word.strands:
        raise InputError(f"--open-strand {args.open_strand} out of range 1..{word.strands}")
    r = compute(args.m, word, args.open_strand, link=name)
    if args.format == "json":
        print(render_machine(r))
    else:
        text, flat = render_paper_flagged(r)
        print(text)
        if flat:
            print("warning: neither symmetric nor antisymmetric under p -> 1/p; "
                  "terms listed flat", file=sys.stderr)
    return 0


def _verify(args) -> int:
    reports = []
    for m in args.m or MS:
        for rep in run_checks(m, args.checks):
            print(rep)
            reports.append(rep)
    return 0 if all_passed(reports) else 1


def _golden(args) -> int:
    reports = []
    ms = args.m or sorted({g["m"] for g in golden_entries(path=args.golden)})
    for m in ms:
        links = args.link
        if links is not None:
            have = {g["link"] for g in golden_entries(m, args.golden)}
            links = [name for name in links if name in have]
        for rep in run_golden(m, args.table, args.golden, links):
            print(rep)
            reports.append(rep)
    if not reports:
        raise InputError("no golden entries selected")
    return 0 if all_passed(reports) else 1


def _links(args) -> int:
    table = load_links(args.table)
    if args.format == "json":
        recs = [{"name": e.name, "strands": e.word.strands, "letters": list(e.word.letters),
                 "components": e.components} for e in table.values()]
        print(json.dumps(recs, indent=2))
    else:
        for e in table.values():
            letters = " ".join(map(str, e.word.letters))
            print(f"{e.name:8s} w={e.word.strands} c={components(e.word)}  {letters}")
    return 0


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    handlers = {"compute": _compute, "verify": _verify, "golden": _golden, "links": _links}
    try:
        return handlers[args.command](args)
    except (BraidError, InputError, OSError, json.JSONDecodeError) as exc:
        print(f"lg: error: {exc}", file=sys.stderr)
        return 2


run = main


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
