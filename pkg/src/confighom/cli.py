"""Command-line front end.

    confighom homology sp --preset s2 -n 3
    confighom homology tp --preset circle -n 4 --coeffs F2 --reduced
    confighom braid --preset closed-circle -k 3 --coeffs F2
    confighom bounds cohdim --d 2 --k 5 --r 0 --punctured
    confighom verify
    confighom table stored.json --format csv

Exit status: 0 success, 1 verification failure, 2 bad arguments,
3 rejected hypotheses.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys

from . import bounds, verify
from .braidduality import SpaceDescriptor, braid_cohomology, preset_descriptor
from .chaincore import Coefficients, GradedGroup
from .errors import HypothesisError, MalformedComplexError, UnsupportedSpaceError
from .spsym import TwoComplexPresentation, preset, sp_homology
from .tsp import ReducedTPTable, reduced_tp_circle, tp_circle_homology


class UsageError(Exception):
    pass


def _coeffs(text: str) -> Coefficients:
    try:
        return Coefficients.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def format_table(g: GradedGroup, fmt: str, symbol: str = "H_", extra: dict | None = None) -> str:
    if fmt == "json":
        d = g.to_dict()
        d.update(extra or {})
        return json.dumps(d, sort_keys=True)
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["degree", "rank", "torsion"])
        for q, (r, t) in g.entries.items():
            w.writerow([q, r, " ".join(map(str, t))])
        return buf.getvalue().rstrip("\n")
    lines = [f"coefficients: {g.coefficients.pretty()}{'  (reduced)' if g.reduced else ''}"]
    if g.is_zero:
        lines.append("  0")
    for q, (r, t) in g.entries.items():
        parts = []
        if r:
            parts.append(g.coefficients.pretty() + (f"^{r}" if r > 1 else ""))
        parts += [f"Z/{x}" for x in t]
        lines.append(f"  {symbol}{q} = " + " + ".join(parts))
    return "\n".join(lines)


def format_bound(b: bounds.BoundResult, fmt: str) -> str:
    if fmt == "json":
        return b.to_json()
    if fmt == "csv":
        return f"value,kind,source\n{b.to_dict()['value']},{b.kind},\"{b.source}\""
    hyps = f"  ({', '.join(b.hypotheses)})" if b.hypotheses else ""
    return f"{b.to_dict()['value']}  {b.kind}  [{b.source}]{hyps}"


def cmd_homology(args) -> str:
    if args.space == "sp":
        if args.presentation:
            p = TwoComplexPresentation.load(args.presentation)
        else:
            p = preset(args.preset or "s2")
        g = sp_homology(p, args.n, args.coeffs, reduced=args.reduced)
        return format_table(g, args.format)
    name = args.preset or "circle"
    if name != "circle":
        raise UsageError("only the circle has a built-in truncated-product model")
    if args.reduced:
        t = reduced_tp_circle(args.n, args.coeffs)
        return format_table(t.table, args.format, extra={"level": t.level})
    return format_table(tp_circle_homology(args.n, args.coeffs), args.format)


def _descriptor(args) -> SpaceDescriptor:
    if args.preset:
        return preset_descriptor(args.preset)
    if args.descriptor:
        text = args.descriptor
        if not text.lstrip().startswith("{"):
            with open(text) as fh:
                text = fh.read()
        return SpaceDescriptor.from_dict(json.loads(text))
    raise UsageError("braid needs --preset or --descriptor")


def cmd_braid(args) -> str:
    g = braid_cohomology(_descriptor(args), args.k, args.coeffs)
    return format_table(g, args.format, symbol="H^")


def _need(args, *names):
    missing = [n for n in names if getattr(args, n) is None]
    if missing:
        raise UsageError(f"bounds {args.name} needs --{' --'.join(missing)}")


def cmd_bounds(args) -> str:
    name = args.name
    results = []
    if name == "cohdim":
        _need(args, "d", "k", "r")
        results.append(bounds.cohdim_bound(args.d, args.k, args.r, args.punctured))
        if args.d == 2:
            # second route through the E^1 term for surfaces
            e1 = bounds.surface_e1_envelope(args.k, args.w if args.w is not None else 1,
                                            Coefficients.parse("F2"))
            results.append(bounds.e1_cohdim_bound(e1, args.k, 2, closed_surface=not args.punctured))
    elif name in ("nakaoka", "reduced_sp", "reduced_sp_2complex", "R_lower"):
        params = {"nakaoka": ("r", "k"), "reduced_sp": ("r", "n"),
                  "reduced_sp_2complex": ("w", "n"), "R_lower": ("k", "r")}[name]
        _need(args, *params)
        kw = {p: getattr(args, p) for p in params}
        if name == "R_lower":
            kw["punctured_or_boundary"] = args.punctured
        results.append(bounds.connectivity_formulas(name, **kw))
    elif name == "mod2_disc":
        _need(args, "d", "k")
        results.append(bounds.mod2_cohdim_disc(args.d, args.k))
    elif name == "surface":
        _need(args, "k")
        e1 = bounds.surface_e1_envelope(args.k, args.w if args.w is not None else 1,
                                        Coefficients.parse("F2"))
        results.append(bounds.e1_connectivity_bound(e1))
        results.append(bounds.e1_cohdim_bound(e1, args.k, 2, closed_surface=not args.punctured))
    elif name in ("arnold", "riemann_surface", "scanning"):
        _need(args, "k")
        results.append(bounds.stability_ranges(name, args.k, s=args.s))
    else:
        raise UsageError(f"unknown bound {name!r}")
    if args.format == "json":
        if len(results) == 1:
            return results[0].to_json()
        return json.dumps([b.to_dict() for b in results], sort_keys=True)
    return "\n".join(format_bound(b, args.format) for b in results)


def cmd_table(args) -> str:
    with open(args.file) as fh:
        data = json.load(fh)
    if "level" in data:
        t = ReducedTPTable.from_dict(data)
        return format_table(t.table, args.format, extra={"level": t.level})
    return format_table(GradedGroup.from_dict(data), args.format)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="confighom", description=__doc__.split("\n\n")[0])
    fmt = argparse.ArgumentParser(add_help=False)
    fmt.add_argument("--format", choices=("pretty", "json", "csv"), default="pretty")
    sub = parser.add_subparsers(dest="verb", required=True)

    h = sub.add_parser("homology", parents=[fmt], help="homology of SP^n or TP^n")
    h.add_argument("space", choices=("sp", "tp"))
    h.add_argument("--preset", help="s2, circle, point, wedge:<w>")
    h.add_argument("--presentation", help="presentation JSON file (sp only)")
    h.add_argument("-n", type=int, required=True)
    h.add_argument("--coeffs", type=_coeffs, default=Coefficients.parse("Z"))
    h.add_argument("--reduced", action="store_true")

    b = sub.add_parser("braid", parents=[fmt], help="cohomology of braid spaces")
    b.add_argument("--preset", help="closed-circle, punctured-circle, interval")
    b.add_argument("--descriptor", help="descriptor JSON (inline or file path)")
    b.add_argument("-k", type=int, required=True)
    b.add_argument("--coeffs", type=_coeffs, default=Coefficients.parse("F2"))

    bd = sub.add_parser("bounds", parents=[fmt], help="evaluate a named bound")
    bd.add_argument("name", help="cohdim, nakaoka, reduced_sp, reduced_sp_2complex, R_lower, "
                                 "mod2_disc, surface, arnold, riemann_surface, scanning")
    for opt in ("d", "k", "r", "n", "w"):
        bd.add_argument(f"--{opt}", type=int)
    bd.add_argument("--punctured", action="store_true",
                    help="U or the boundary is nonempty")
    bd.add_argument("--s", choices=("arnold", "riemann_surface"),
                    help="stability function for scanning")

    v = sub.add_parser("verify", help="run the invariant and known-values corpus")
    v.add_argument("--corpus-dir", help="registry directory (default: bundled or $CONFIGHOM_CORPUS_DIR)")

    t = sub.add_parser("table", parents=[fmt], help="reformat a stored JSON table")
    t.add_argument("file")
    return parser


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        if args.verb == "verify":
            results = verify.run_corpus(args.corpus_dir)
            print(verify.report(results), file=stdout)
            return 0 if all(r.passed for r in results) else 1
        handler = {"homology": cmd_homology, "braid": cmd_braid,
                   "bounds": cmd_bounds, "table": cmd_table}[args.verb]
        print(handler(args), file=stdout)
        return 0
    except HypothesisError as exc:
        print(f"rejected: {exc}", file=stderr)
        print(f"anchor: {exc.anchor}", file=stderr)
        return 3
    except (UsageError, UnsupportedSpaceError, MalformedComplexError, ValueError,
            OSError) as exc:
        print(f"error: {exc}", file=stderr)
        return 2


def main() -> None:
    sys.exit(run())
