"""
Command-line front end: ``petal <subcommand> ...``.

Results go to stdout (JSON with ``--json``), diagnostics to stderr.
Exit status: 0 success, 1 domain error (or a failed table row), 2 usage error.
"""

from __future__ import annotations

import argparse
import itertools
import json
import logging
import sys

from . import diagrams, invariants, search, sequence, sticks
from .errors import PetalError
from .identify import default_database, load_table
from .svg import render_svg

log = logging.getLogger("petal")


class UsageError(Exception):
    pass


def _seq(text):
    return sequence.parse_sequence(text)


def _fmt(levels) -> str:
    return " ".join(map(str, levels))


def _emit(args, obj, text):
    if args.json:
        print(json.dumps(obj, sort_keys=True))
    else:
        print(text)


def _diagram_from(args) -> diagrams.PlanarDiagram:
    if getattr(args, "pd", None):
        with open(args.pd) as fh:
            return diagrams.PlanarDiagram.from_json(json.load(fh))
    if args.sequence is None:
        raise UsageError("give a sequence or --pd FILE")
    s = _seq(args.sequence)
    if getattr(args, "path", "grid") == "geometric":
        return diagrams.petal_to_pd_geometric(s)
    return diagrams.grid_to_pd(diagrams.petal_to_grid(s))


def _db(args):
    return load_table(args.table) if getattr(args, "table", None) else default_database()


# ---------------------------------------------------------------------------
# subcommands

def cmd_validate(args):
    s = _seq(args.sequence)
    canon = sequence.is_canonical(s.levels)
    _emit(args, {"sequence": list(s.levels), "petals": s.p, "canonical": canon},
          f"valid: {s.p} petals" + (", canonical" if canon else ""))


def cmd_canon(args):
    c = sequence.canonicalize(_seq(args.sequence))
    _emit(args, {"sequence": list(c.levels)}, _fmt(c.levels))


def cmd_reduce(args):
    s = _seq(args.sequence)
    r = sequence.reduce(s)
    irreducible = r == s
    text = _fmt(r.levels) + ("\nirreducible" if irreducible else "")
    _emit(args, {"sequence": list(r.levels), "irreducible": irreducible}, text)


def cmd_compose(args):
    c = sequence.compose(_seq(args.first), _seq(args.second))
    _emit(args, {"sequence": list(c.levels)}, _fmt(c.levels))


def cmd_mirror(args):
    m = sequence.mirror(_seq(args.sequence))
    _emit(args, {"sequence": list(m.levels)}, _fmt(m.levels))


def cmd_torus(args):
    t = sequence.torus_sequence(args.r)
    _emit(args, {"sequence": list(t.levels)}, _fmt(t.levels))


def _grid_text(g: diagrams.GridDiagram) -> str:
    lines = []
    for row in range(g.size, 0, -1):
        cells = []
        for col in range(g.size):
            cells.append("O" if g.o_row[col] == row else "X" if g.x_row[col] == row else ".")
        lines.append(" ".join(cells))
    return "\n".join(lines)


def cmd_to_grid(args):
    g = diagrams.petal_to_grid(_seq(args.sequence))
    _emit(args, g.to_json(), _grid_text(g))


def cmd_to_pd(args):
    d = _diagram_from(args)
    text = "\n".join(f"X[{a},{b},{c},{e}]" for a, b, c, e in d.crossings) or "(no crossings)"
    _emit(args, d.to_json(), text)


def cmd_render(args):
    if args.grid:
        with open(args.grid) as fh:
            target = diagrams.GridDiagram.from_json(json.load(fh))
    elif args.sequence is not None:
        target = _seq(args.sequence)
        if args.as_grid:
            target = diagrams.petal_to_grid(target)
    else:
        raise UsageError("give a sequence or --grid FILE")
    svg = render_svg(target)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(svg)
        _emit(args, {"written": args.output}, f"wrote {args.output}")
    else:
        sys.stdout.write(svg)


def cmd_invariants(args):
    fp = invariants.fingerprint(_diagram_from(args))
    text = (f"jones: {fp.jones}\nalexander: {fp.alexander}\ndeterminant: {fp.determinant}")
    _emit(args, fp.to_json(), text)


def cmd_identify(args):
    db = _db(args)
    fp = invariants.fingerprint(_diagram_from(args))
    hits = db.identify(fp)
    obj = [{"name": n, "chirality": c} for n, c in hits]
    if hits:
        text = "\n".join(f"{n} [{c}]" for n, c in hits)
    else:
        text = "not in table"
        pairs = db.composite_hint(fp)
        if pairs:
            text += "\npossible connected sum: " + ", ".join(f"{a} # {b}" for a, b in pairs)
    _emit(args, obj, text)


def cmd_petal_number(args):
    db = _db(args)
    if args.knot not in db:
        raise PetalError(f"unknown knot {args.knot!r}")
    p, witnesses = search.petal_number(db[args.knot], args.max, db)
    _emit(args, {"name": args.knot, "petal_number": p, "witnesses": [list(w) for w in witnesses]},
          f"{args.knot}: {p} petals\n" + "\n".join(_fmt(w) for w in witnesses))


def cmd_classify(args):
    report = search.classify_all(args.petals, _db(args), jobs=args.jobs,
                                 allow_large=args.allow_large,
                                 include_reducible=not args.witnesses_only)
    lines = [f"{name}: {len(seqs)}" for name, seqs in report.identified.items()]
    lines.append(f"unidentified: {len(report.unidentified)}")
    _emit(args, report.to_json(), "\n".join(lines))


def cmd_verify_table(args):
    rows = search.verify_table(_db(args), p_max=args.max, search_max=args.search_max,
                               jobs=args.jobs, progress=True)
    text = "\n".join(f"{'PASS' if r.passed else 'FAIL'} {r.name} p={r.petals} {r.detail}" for r in rows)
    _emit(args, [r.to_json() for r in rows], text)
    return 0 if all(r.passed for r in rows) else 1


def cmd_sticks(args):
    s = _seq(args.sequence)
    conf = sticks.petal_to_sticks(s)
    embedded = sticks.certify_embedded(conf)
    db = _db(args)
    names = []
    for d in itertools.islice(sticks.generic_directions(), args.directions):
        try:
            fp = invariants.fingerprint(sticks.project_to_pd(conf, d))
        except PetalError as exc:
            log.warning("skipping direction %s: %s", d, exc)
            continue
        names.append(sorted(db.names_for(fp)))
    obj = {"segments": conf.n_segments, "embedded": embedded,
           "vertices": conf.to_json(), "identifications": names}
    text = (f"{conf.n_segments} segments, embedded: {embedded}\n"
            + "\n".join(" ".join(v) for v in conf.to_json())
            + "\nprojections identify as: " + "; ".join(",".join(n) or "?" for n in names))
    _emit(args, obj, text)


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--table", default=None, help="alternative reference table JSON")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(prog="petal", description="Petal projections of knots.")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND")
    sub.required = True

    def add(name, func, help_text):
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.set_defaults(func=func)
        return p

    def with_diagram_input(p):
        p.add_argument("sequence", nargs="?", default=None)
        p.add_argument("--pd", default=None, help="read a planar diagram JSON file instead")
        p.add_argument("--path", choices=["grid", "geometric"], default="grid")

    add("validate", cmd_validate, "check a petal sequence").add_argument("sequence")
    add("canon", cmd_canon, "canonical form under rotation and reversal").add_argument("sequence")
    add("reduce", cmd_reduce, "remove adjacent-level pairs").add_argument("sequence")
    p = add("compose", cmd_compose, "connected sum of two sequences")
    p.add_argument("first")
    p.add_argument("second")
    add("mirror", cmd_mirror, "mirror image").add_argument("sequence")
    add("torus", cmd_torus, "sequence for the (r, r+1) torus knot").add_argument("r", type=int)
    add("to-grid", cmd_to_grid, "grid diagram of a sequence").add_argument("sequence")
    with_diagram_input(add("to-pd", cmd_to_pd, "planar diagram of a sequence"))
    p = add("render", cmd_render, "SVG drawing")
    p.add_argument("sequence", nargs="?", default=None)
    p.add_argument("--grid", default=None, help="render a grid JSON file")
    p.add_argument("--as-grid", action="store_true", help="draw the sequence's grid diagram")
    p.add_argument("-o", "--output", default=None)
    with_diagram_input(add("invariants", cmd_invariants, "Jones, Alexander, determinant"))
    with_diagram_input(add("identify", cmd_identify, "look up the knot type"))
    p = add("petal-number", cmd_petal_number, "least petal count of a table knot")
    p.add_argument("knot")
    p.add_argument("--max", type=int, default=search.MAX_PETALS)
    p = add("classify", cmd_classify, "classify all sequences of one length")
    p.add_argument("--petals", type=int, required=True)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--allow-large", action="store_true", help="permit p = 11 (about an hour)")
    p.add_argument("--witnesses-only", action="store_true", help="skip sequences that reduce")
    p = add("verify-table", cmd_verify_table, "check every table row")
    p.add_argument("--max", type=int, default=13, help="largest table petal number to check")
    p.add_argument("--search-max", type=int, default=search.MAX_PETALS - 2,
                   help="largest exclusion search (11 certifies the 13-petal rows)")
    p.add_argument("--jobs", type=int, default=1)
    p = add("sticks", cmd_sticks, "stick conformation and its certification")
    p.add_argument("sequence")
    p.add_argument("--directions", type=int, default=5)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "jobs", 1) < 1:
        parser.error("argument --jobs: must be at least 1")
    if getattr(args, "petals", 1) < 1 or getattr(args, "max", 1) < 1:
        parser.error("petal counts must be positive")
    logging.basicConfig(level=logging.INFO if args.verbose or args.command == "verify-table" else logging.WARNING,
                        format="%(message)s", stream=sys.stderr)
    try:
        status = args.func(args)
    except UsageError as exc:
        parser.error(str(exc))
    except PetalError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    except (OSError, json.JSONDecodeError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    return status or 0


if __name__ == "__main__":
    sys.exit(main())
