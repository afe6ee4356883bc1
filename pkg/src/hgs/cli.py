"""Command line interface: ``hgs <subcommand> ...``.

Exit codes: 0 success, 1 internal invariant violation, 2 usage or input
error, 3 resource cap, and for ``verify-paper`` 3 + the number of failed
scenarios (at most 125).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import warnings
from dataclasses import replace

from . import __version__
from .config import get_caps, set_caps
from .errors import CapExceeded, HgsError, InvariantViolation
from .grouplab import (all_subgroups, complements_of_normal, construct_named, identify_type,
                       normal_subgroups, sylow_subgroups)
from .gpside import (classify_structure, enumerate_induced, enumerate_structures, recipe_pairs,
                     restrict_structure)
from .holoside import count_rows, rows_to_csv, rows_to_json
from .permcore import PermGroup, format_cycles, generate_closure, parse_cycles
from .structures import GaloisContext, structure_from_json

EXIT_OK, EXIT_INVARIANT, EXIT_USAGE, EXIT_CAP = 0, 1, 2, 3
MAX_EXIT = 125


class UsageError(HgsError):
    pass


# -- output -----------------------------------------------------------------------

def emit(rows: list[dict], columns: list[str], fmt: str, out=None, payload=None) -> None:
    """Print rows as an aligned table, CSV, or JSON (``payload`` overrides the JSON body)."""
    out = out or sys.stdout
    if fmt == "json":
        out.write(json.dumps(rows if payload is None else payload, indent=2, sort_keys=True) + "\n")
        return
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(columns)
        for r in rows:
            w.writerow([_cell(r.get(c)) for c in columns])
        out.write(buf.getvalue())
        return
    cells = [columns] + [[_cell(r.get(c)) for c in columns] for r in rows]
    widths = [max(len(row[i]) for row in cells) for i in range(len(columns))]
    for row in cells:
        out.write("  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip() + "\n")


def _cell(v) -> str:
    if v is None:
        return "-"
    if isinstance(v, bool):
        return "yes" if v else "no"
    if isinstance(v, (list, tuple)):
        return " ".join(_cell(x) for x in v)
    return str(v)


# -- subcommands -----------------------------------------------------------------

def _members(G, h):
    return [G.labels[x] for x in h.members]


def cmd_group(args) -> int:
    G = construct_named(args.spec)
    if args.cayley:
        emit([], [], "json", payload=G.to_json())
        return EXIT_OK
    primes = [p for p in range(2, G.order + 1) if G.order % p == 0 and all(p % d for d in range(2, p))]
    normals = []
    for h in normal_subgroups(G):
        comps = complements_of_normal(G, h)
        normals.append({"order": h.order, "type": identify_type(h.as_group()), "members": _members(G, h),
                        "complements": [_members(G, c) for c in comps]})
    info = {
        "spec": args.spec, "order": G.order, "type": identify_type(G), "abelian": G.is_abelian,
        "exponent": G.exponent, "center": _members(G, G.center()),
        "subgroups": len(all_subgroups(G)),
        "sylow": {str(p): [_members(G, s) for s in sylow_subgroups(G, p)] for p in primes},
        "normal_subgroups": normals,
    }
    if args.format == "json":
        emit([], [], "json", payload=info)
        return EXIT_OK
    rows = [{"field": k, "value": info[k]} for k in ("spec", "order", "type", "abelian", "exponent", "subgroups")]
    rows.append({"field": "center", "value": info["center"]})
    for p, syl in info["sylow"].items():
        rows.append({"field": f"sylow {p}", "value": f"{len(syl)} of order {len(syl[0])}"})
    for n in normals:
        rows.append({"field": f"normal {n['order']}", "value": f"{n['type']} {{{', '.join(n['members'])}}} "
                                                             f"complements: {len(n['complements'])}"})
    emit(rows, ["field", "value"], args.format)
    return EXIT_OK


def _structure_row(k, s) -> dict:
    f = s.flags
    return {"index": k, "type": s.type, "classical": f.classical, "canonical": f.canonical_nonclassical,
            "split": f.split_abstract, "split_stable": f.split_gstable, "induced": f.induced,
            "generators": [format_cycles(p) for p in s.N.generators]}


_STRUCT_COLS = ["index", "type", "classical", "canonical", "split", "split_stable", "induced", "generators"]


def cmd_enumerate(args) -> int:
    G = construct_named(args.spec)
    ss = enumerate_structures(GaloisContext(G), args.via)
    if not args.no_classify:
        ss = [classify_structure(s) for s in ss]
    emit([_structure_row(k, s) for k, s in enumerate(ss)], _STRUCT_COLS, args.format,
         payload=[s.to_json() for s in ss])
    return EXIT_OK


def cmd_count(args) -> int:
    G = construct_named(args.group)
    if args.type != "all":
        N = construct_named(args.type)
        if N.order != G.order:
            raise UsageError(f"|G| = {G.order} and |N| = {N.order} differ")
    rows = count_rows(args.group, args.type)
    if args.format == "csv":
        sys.stdout.write(rows_to_csv(rows))
    elif args.format == "json":
        sys.stdout.write(rows_to_json(rows) + "\n")
    else:
        emit(rows, ["G", "N", "e"], "table")
    return EXIT_OK


def cmd_induced(args) -> int:
    G = construct_named(args.spec)
    pairs = recipe_pairs(G)
    entries = enumerate_induced(G, jobs=args.jobs, pairs=pairs)
    rows = []
    for k, (s, recipes) in enumerate(entries):
        rows.append({"index": k, "type": s.type, "recipes": len(recipes),
                     "routes": [f"H{{{','.join(_members(G, r.H))}}}/G'{{{','.join(_members(G, r.Gp))}}}"
                                f":{r.N1.type}x{r.N2.type}" for r in recipes]})
    emit(rows, ["index", "type", "recipes", "routes"], args.format, payload=[s.to_json() for s, _ in entries])
    if not pairs and args.format == "table":
        print("no semidirect decomposition", file=sys.stderr)
    return EXIT_OK


def _load_structures(path):
    with open(path) as fh:
        data = json.load(fh)
    items = data if isinstance(data, list) else [data]
    if not items:
        raise UsageError(f"{path} holds no structures")
    return [structure_from_json(d) for d in items]


def cmd_classify(args) -> int:
    ss = [classify_structure(s) for s in _load_structures(args.structure)]
    emit([_structure_row(k, s) for k, s in enumerate(ss)], _STRUCT_COLS, args.format,
         payload=[s.to_json() for s in ss])
    return EXIT_OK


def cmd_restrict(args) -> int:
    ss = _load_structures(args.structure)
    if len(ss) != 1:
        raise UsageError("restrict takes a file with exactly one structure")
    s = ss[0]
    gens = [parse_cycles(c, s.N.degree) for c in args.subgroup.split(";") if c.strip()]
    if any(p not in s.N for p in gens):
        raise UsageError("subgroup generators must be elements of N")
    sub = generate_closure(s.N.degree, gens) if gens else PermGroup(s.N.degree, [s.N.elements[0]])
    from .grouplab import SubgroupHandle

    index = {p: k for k, p in enumerate(s.N.elements)}
    Gp, r = restrict_structure(s, SubgroupHandle(s.abstract, [index[p] for p in sub.elements]))
    G = s.context.G
    info = {"Gp": _members(G, Gp), "type": r.type, "structure": r.to_json()}
    if args.format == "json":
        emit([], [], "json", payload=info)
    else:
        emit([{"Gp": info["Gp"], "type": r.type, "generators": [format_cycles(p) for p in r.N.generators]}],
             ["Gp", "type", "generators"], args.format)
    return EXIT_OK


def cmd_verify_paper(args) -> int:
    from .paperlab import run_scenarios

    report = run_scenarios(args.filter)
    if args.format == "json":
        sys.stdout.write(report.to_json() + "\n")
    elif args.format == "csv":
        sys.stdout.write(report.to_csv())
    else:
        sys.stdout.write(report.to_table() + "\n")
    return EXIT_OK if report.failures == 0 else min(EXIT_CAP + report.failures, MAX_EXIT)


# -- parser ---------------------------------------------------------------------------

def _positive_int(text):
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return v


def build_parser() -> argparse.ArgumentParser:
    defaults = get_caps()
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("table", "json", "csv"), default="table")
    common.add_argument("--jobs", type=_positive_int, default=os.cpu_count() or 1,
                        help="worker processes (never changes output)")
    common.add_argument("--max-direct-degree", type=_positive_int, default=defaults.max_direct_degree)
    common.add_argument("--max-hol-order", type=_positive_int, default=defaults.max_hol_order)
    common.add_argument("--max-group-order", type=_positive_int, default=defaults.max_group_order)

    p = argparse.ArgumentParser(prog="hgs", description="Hopf Galois structures on finite extensions.")
    p.add_argument("--version", action="version", version=f"hgs {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("group", parents=[common], help="inspect a group")
    g.add_argument("spec")
    g.add_argument("--cayley", action="store_true", help="print the Cayley table as JSON")
    g.set_defaults(func=cmd_group)

    e = sub.add_parser("enumerate", parents=[common], help="all structures on a Galois extension")
    e.add_argument("spec")
    e.add_argument("--via", choices=("direct", "holomorph", "both"), default="holomorph")
    e.add_argument("--no-classify", action="store_true", help="skip the split/induced flags")
    e.set_defaults(func=cmd_enumerate)

    c = sub.add_parser("count", parents=[common], help="e(G, N) through the holomorph")
    c.add_argument("group")
    c.add_argument("type", help="group spec of N, or 'all'")
    c.set_defaults(func=cmd_count)

    i = sub.add_parser("induced", parents=[common], help="induced structures and their recipes")
    i.add_argument("spec")
    i.set_defaults(func=cmd_induced)

    k = sub.add_parser("classify", parents=[common], help="classify structures from a JSON file")
    k.add_argument("--structure", required=True)
    k.set_defaults(func=cmd_classify)

    r = sub.add_parser("restrict", parents=[common], help="restrict a structure to a stable subgroup")
    r.add_argument("--structure", required=True)
    r.add_argument("--subgroup", required=True, help="generators in cycle notation, separated by ';'")
    r.set_defaults(func=cmd_restrict)

    v = sub.add_parser("verify-paper", parents=[common], help="run the catalog of worked examples")
    v.add_argument("--filter", default=None, help="scenario id prefix")
    v.set_defaults(func=cmd_verify_paper)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    old = get_caps()
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            set_caps(replace(old, max_direct_degree=args.max_direct_degree, max_hol_order=args.max_hol_order,
                             max_group_order=args.max_group_order))
    except ValueError as e:
        print(f"hgs: {e}", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except CapExceeded as e:
        print(f"hgs: cap exceeded: {e}", file=sys.stderr)
        return EXIT_CAP
    except InvariantViolation as e:
        print(f"hgs: internal invariant violated: {e}", file=sys.stderr)
        return EXIT_INVARIANT
    except (HgsError, OSError, json.JSONDecodeError) as e:
        print(f"hgs: {e}", file=sys.stderr)
        return EXIT_USAGE
    finally:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            set_caps(old)


if __name__ == "__main__":
    sys.exit(main())
